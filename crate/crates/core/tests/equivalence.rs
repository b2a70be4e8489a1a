use std::collections::{BTreeSet, HashSet};

use dim_core::coloring::{uncolored_partition, Color, Coloring, Propagation};
use dim_core::domset::{find_dominating_set, solve_domset, stabilize_root, DomsetOptions};
use dim_core::generate::{gen_instance, Family, GenParams, WeightSpec};
use dim_core::graph::{preprocess, validate_dim, Graph};
use dim_core::mis::{count_dims, enumerate_mis, induced_coloring, solve_mis};
use dim_core::oracle::{brute_mis, brute_solve};
use dim_core::{count, solve, Algorithm, SolveOptions};

fn corpus(count: usize, n_max: usize) -> Vec<Graph> {
    let probs = [0.2, 0.4, 0.6, 0.8];
    (0..count)
        .map(|i| {
            let n = 2 + i % (n_max - 1);
            let mut params = GenParams::new(Family::Random, n, 1000 + i as u64);
            params.p = probs[i % probs.len()];
            params.weights = WeightSpec::Uniform { lo: 1, hi: 10 };
            gen_instance(&params).unwrap()
        })
        .collect()
}

#[test]
fn solvers_match_oracle() {
    for (i, g) in corpus(400, 9).iter().enumerate() {
        let oracle = brute_solve(g).unwrap();
        for algo in [Algorithm::Domset, Algorithm::Mis, Algorithm::Brute] {
            let sol = solve(g, SolveOptions { algorithm: Some(algo), ..Default::default() }).unwrap();
            assert_eq!(sol.dim.as_ref().map(|d| d.weight), oracle.min_weight, "instance {i} {algo}\n{g}");
            if let Some(d) = &sol.dim {
                assert!(validate_dim(g, &d.edges));
            }
        }
        assert_eq!(count(g), oracle.counts, "instance {i}\n{g}");
    }
}

#[test]
fn raw_solvers_match_oracle_on_residuals() {
    for g in corpus(300, 9) {
        let r = preprocess(&g).residual;
        let oracle = brute_solve(&r).unwrap();
        let d = find_dominating_set(&r);
        assert!(d.len() <= r.n() / 2);
        let dom = solve_domset(&r, &d, DomsetOptions::default()).unwrap();
        assert_eq!(dom.dim.map(|x| x.weight), oracle.min_weight);
        assert_eq!(solve_mis(&r, 1).dim.map(|x| x.weight), oracle.min_weight);
        assert_eq!(count_dims(&r), oracle.counts);
        for (root, &leaves) in dom.stats.branch_leaves_per_root.iter().enumerate() {
            let q = dom.stats.q_per_root[root];
            assert!(leaves <= 1 << q, "leaves {leaves} > 2^{q}");
            assert!(q <= d.len().min(r.n().div_ceil(3)));
        }
    }
}

#[test]
fn validate_dim_agrees_with_partition_definition() {
    for g in corpus(200, 8) {
        if g.m() > 14 {
            continue;
        }
        let oracle: BTreeSet<Vec<usize>> = brute_solve(&g).unwrap().all_dims.into_iter().collect();
        for mask in 0u32..(1 << g.m()) {
            let set: Vec<usize> = (0..g.m()).filter(|&e| mask >> e & 1 == 1).collect();
            // the partition definition ignores isolated vertices, as does edge domination
            assert_eq!(validate_dim(&g, &set), oracle.contains(&set), "{set:?}\n{g}");
        }
    }
}

#[test]
fn mis_enumeration_matches_brute_force() {
    for g in corpus(300, 10) {
        let mut seen = HashSet::new();
        let mut listed = BTreeSet::new();
        for set in enumerate_mis(&g) {
            assert!(seen.insert(set.clone()), "duplicate {set:?}");
            listed.insert(set);
        }
        let brute: BTreeSet<Vec<usize>> = brute_mis(&g).unwrap().into_iter().collect();
        assert_eq!(listed, brute);
        assert!(listed.len() as u128 <= 3u128.pow(g.n().div_ceil(3) as u32));
    }
}

/// Expands every completion of every induced coloring and checks that each
/// DIM appears exactly once.
#[test]
fn every_dim_comes_from_exactly_one_mis() {
    for g in corpus(300, 10) {
        let r = preprocess(&g).residual;
        let mut produced: Vec<Vec<usize>> = Vec::new();
        for mis in enumerate_mis(&r) {
            let Some(ic) = induced_coloring(&r, &mis) else { continue };
            let options: Vec<Vec<usize>> = ic
                .singles
                .iter()
                .map(|&s| {
                    r.neighbors(s)
                        .iter()
                        .filter(|&&(u, _)| ic.coloring.color(u) == Color::Uncolored)
                        .map(|&(_, e)| e)
                        .collect()
                })
                .collect();
            let paired: Vec<usize> = r
                .edges()
                .iter()
                .enumerate()
                .filter(|(_, e)| ic.coloring.pair(e.u) == Some(e.v))
                .map(|(id, _)| id)
                .collect();
            let mut stack = vec![(0usize, paired)];
            while let Some((k, chosen)) = stack.pop() {
                if k == options.len() {
                    let mut chosen = chosen;
                    chosen.sort_unstable();
                    assert!(validate_dim(&r, &chosen));
                    produced.push(chosen);
                    continue;
                }
                for &e in &options[k] {
                    let mut next = chosen.clone();
                    next.push(e);
                    stack.push((k + 1, next));
                }
            }
        }
        let unique: BTreeSet<Vec<usize>> = produced.iter().cloned().collect();
        assert_eq!(unique.len(), produced.len(), "a DIM was produced twice\n{r}");
        let oracle: BTreeSet<Vec<usize>> = brute_solve(&r).unwrap().all_dims.into_iter().collect();
        assert_eq!(unique, oracle);
    }
}

#[test]
fn induced_coloring_total_when_min_degree_two() {
    for g in corpus(300, 10) {
        if (0..g.n()).any(|v| g.degree(v) < 2) {
            continue;
        }
        for mis in enumerate_mis(&g) {
            if let Some(ic) = induced_coloring(&g, &mis) {
                assert!(ic.uncolored.is_empty());
            }
        }
    }
}

/// Every oracle DIM that agrees with a root coloring must be reached from it,
/// and must agree with the stable coloring wherever it is colored.
#[test]
fn stable_roots_are_sound_and_structured() {
    for g in corpus(300, 9) {
        let r = preprocess(&g).residual;
        let oracle = brute_solve(&r).unwrap();
        let d = find_dominating_set(&r);
        for mask in 0u64..(1 << d.len()) {
            let mut c = Coloring::new(&r);
            let outcome = stabilize_root(&r, &d, mask, &mut c);
            let root_black = |v: usize| d.iter().position(|&x| x == v).is_some_and(|k| mask >> k & 1 == 1);
            let extensions: Vec<u32> = oracle
                .black_masks
                .iter()
                .copied()
                .filter(|&b| d.iter().enumerate().all(|(k, &v)| (b >> v & 1 == 1) == (mask >> k & 1 == 1)))
                .collect();
            match outcome {
                Propagation::Invalid => assert!(extensions.is_empty(), "root {mask:#b} pruned a DIM\n{r}"),
                Propagation::Stable { singles, uncolored } => {
                    let parts = uncolored_partition(&r, &c, &uncolored).expect("dominating root");
                    assert_eq!(parts.values().map(Vec::len).sum::<usize>(), uncolored.len());
                    if singles.is_empty() {
                        assert!(uncolored.is_empty());
                    }
                    if !extensions.is_empty() {
                        assert!(singles.iter().all(|&s| root_black(s)));
                    }
                    for b in extensions {
                        for v in 0..r.n() {
                            let expect = if b >> v & 1 == 1 { Color::Black } else { Color::White };
                            assert!(c.color(v) == Color::Uncolored || c.color(v) == expect);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn domset_with_any_dominating_set() {
    // exactness should not depend on which dominating set is supplied
    for g in corpus(150, 8) {
        let r = preprocess(&g).residual;
        let oracle = brute_solve(&r).unwrap();
        let all: Vec<usize> = (0..r.n()).collect();
        let out = solve_domset(&r, &all, DomsetOptions::default()).unwrap();
        assert_eq!(out.dim.map(|x| x.weight), oracle.min_weight);
    }
}

#[test]
fn larger_planted_instances_match_oracle() {
    for i in 0..120u64 {
        let family = if i % 3 == 0 { Family::Random } else { Family::RandomDim };
        let mut params = GenParams::new(family, 10 + (i % 7) as usize, 77 + i);
        params.p = [0.15, 0.3, 0.5][i as usize % 3];
        params.weights = WeightSpec::Uniform { lo: 1, hi: 6 };
        let g = gen_instance(&params).unwrap();
        let oracle = brute_solve(&g).unwrap();
        let r = preprocess(&g).residual;
        let all: Vec<usize> = (0..r.n()).collect();
        for d in [find_dominating_set(&r), all.iter().copied().step_by(2).collect(), all] {
            if !r.is_dominating(&d) || d.len() > 12 {
                continue;
            }
            let out = solve_domset(&r, &d, DomsetOptions::default()).unwrap();
            let w = out.dim.map(|x| x.weight + preprocess(&g).forced_weight);
            assert_eq!(w, oracle.min_weight, "instance {i} D={d:?}\n{g}");
        }
        assert_eq!(count(&g), oracle.counts, "instance {i}\n{g}");
    }
}

/// Disjoint unions of cycles of length divisible by three, with every third
/// vertex in D, force the two-way branch once per cycle.
#[test]
fn cycle_unions_branch_and_match_oracle() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
    let mut deepest = 0;
    for lens in [vec![6], vec![9], vec![12], vec![6, 6], vec![6, 9], vec![6, 6, 6]] {
        for _ in 0..8 {
            let mut edges = Vec::new();
            let mut d = Vec::new();
            let mut base = 0;
            for &len in &lens {
                for k in 0..len {
                    edges.push((base + k, base + (k + 1) % len, f64::from(rng.random_range(1..6u32))));
                }
                d.extend((0..len).step_by(3).map(|k| base + k));
                base += len;
            }
            let g = Graph::new(base, edges).unwrap();
            let oracle = brute_solve(&g).unwrap();
            let out = solve_domset(&g, &d, DomsetOptions::default()).unwrap();
            assert_eq!(out.dim.map(|x| x.weight), oracle.min_weight, "{lens:?}\n{g}");
            for (root, &leaves) in out.stats.branch_leaves_per_root.iter().enumerate() {
                assert!(leaves <= 1 << out.stats.q_per_root[root]);
                deepest = deepest.max(leaves);
            }
        }
    }
    assert!(deepest >= 4, "max leaves per root {deepest}");
}
