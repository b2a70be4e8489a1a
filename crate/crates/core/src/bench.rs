//! Benchmark harness: runs both exact solvers over a corpus, times them, and
//! checks the branching and enumeration bounds on every instance.

use std::fmt::Write as _;
use std::time::Instant;

use crate::domset::{find_dominating_set, solve_domset, DomsetOptions, MAX_DOMSET};
use crate::graph::{preprocess, Graph};
use crate::mis::solve_mis;

/// Leaf bound per root: `2^min(|D|, ceil(n/3))`.
pub fn leaf_bound(n: usize, d: usize) -> u128 {
    1u128 << d.min(n.div_ceil(3)).min(127)
}

/// Bound on the number of maximal independent sets: `3^ceil(n/3)`.
pub fn mis_bound(n: usize) -> u128 {
    3u128.checked_pow(n.div_ceil(3) as u32).unwrap_or(u128::MAX)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub domset_size: usize,
    /// `None` when the dominating set was too large to enumerate.
    pub roots: Option<u64>,
    pub leaves: Option<u64>,
    pub max_leaves_per_root: Option<u64>,
    pub mis_count: u64,
    pub domset_secs: Option<f64>,
    pub mis_secs: f64,
    pub weight: Option<f64>,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn violations(&self) -> usize {
        self.rows.iter().map(|r| r.violations.len()).sum()
    }

    pub fn render(&self) -> String {
        let mut out = String::from("name\tn\tm\tD\troots\tleaves\tmax_leaves\tmis\tdomset_s\tmis_s\tweight\tstatus\n");
        let opt = |x: Option<u64>| x.map_or("-".to_string(), |v| v.to_string());
        for r in &self.rows {
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{:.6}\t{}\t{}",
                r.name,
                r.n,
                r.m,
                r.domset_size,
                opt(r.roots),
                opt(r.leaves),
                opt(r.max_leaves_per_root),
                r.mis_count,
                r.domset_secs.map_or("-".to_string(), |s| format!("{s:.6}")),
                r.mis_secs,
                r.weight.map_or("NODIM".to_string(), |w| w.to_string()),
                if r.violations.is_empty() { "ok".to_string() } else { r.violations.join("; ") },
            )
            .unwrap();
        }
        out
    }
}

/// Benchmarks one instance. Bounds are measured on the preprocessed graph.
pub fn bench_instance(name: &str, g: &Graph) -> BenchRow {
    let pre = preprocess(g);
    let r = &pre.residual;
    let d = find_dominating_set(r);
    let mut violations = Vec::new();

    let started = Instant::now();
    let mis = solve_mis(r, 1);
    let mis_secs = started.elapsed().as_secs_f64();
    if mis.mis_count as u128 > mis_bound(r.n()) {
        violations.push(format!("mis count {} > 3^ceil(n/3)", mis.mis_count));
    }

    let mut row = BenchRow {
        name: name.to_string(),
        n: r.n(),
        m: r.m(),
        domset_size: d.len(),
        roots: None,
        leaves: None,
        max_leaves_per_root: None,
        mis_count: mis.mis_count,
        domset_secs: None,
        mis_secs,
        weight: mis.dim.as_ref().map(|x| x.weight + pre.forced_weight),
        violations: Vec::new(),
    };

    if d.len() <= MAX_DOMSET.min(24) {
        let started = Instant::now();
        match solve_domset(r, &d, DomsetOptions::default()) {
            Ok(out) => {
                row.domset_secs = Some(started.elapsed().as_secs_f64());
                let bound = leaf_bound(r.n(), d.len());
                let max = out.stats.branch_leaves_per_root.iter().copied().max().unwrap_or(0);
                if max as u128 > bound {
                    violations.push(format!("root with {max} leaves > {bound}"));
                }
                if out.stats.roots_explored > 1u64 << d.len() {
                    violations.push(format!("{} roots > 2^|D|", out.stats.roots_explored));
                }
                if out.dim.as_ref().map(|x| x.weight) != mis.dim.as_ref().map(|x| x.weight) {
                    violations.push("domset and mis disagree".to_string());
                }
                row.roots = Some(out.stats.roots_explored);
                row.leaves = Some(out.stats.total_leaves());
                row.max_leaves_per_root = Some(max);
            }
            Err(e) => violations.push(format!("domset failed: {e}")),
        }
    }
    row.violations = violations;
    row
}

pub fn run_bench<'a>(corpus: impl IntoIterator<Item = (&'a str, &'a Graph)>) -> BenchReport {
    BenchReport { rows: corpus.into_iter().map(|(name, g)| bench_instance(name, g)).collect() }
}
