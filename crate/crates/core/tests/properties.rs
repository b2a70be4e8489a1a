use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dim_core::coloring::{Color, Coloring, Propagation};
use dim_core::graph::{preprocess, Graph};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let k = pairs.len();
        (Just(n), Just(pairs), prop::collection::vec((any::<bool>(), 0u32..1000), k)).prop_map(|(n, pairs, picks)| {
            let edges = pairs
                .into_iter()
                .zip(picks)
                .filter(|(_, (keep, _))| *keep)
                .map(|((u, v), (_, w))| (u, v, f64::from(w) / 8.0));
            Graph::new(n, edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn text_round_trip(g in arb_graph(12)) {
        let text = g.to_text();
        let parsed = Graph::parse(text.as_bytes()).unwrap();
        prop_assert_eq!(&parsed, &g);
        prop_assert_eq!(parsed.to_text(), text);
    }

    #[test]
    fn preprocess_is_idempotent(g in arb_graph(12)) {
        let once = preprocess(&g);
        let twice = preprocess(&once.residual);
        prop_assert_eq!(&twice.residual, &once.residual);
        prop_assert!(twice.forced_edges.is_empty());
        prop_assert!(twice.removed_isolated_vertices.is_empty());
        let r = &once.residual;
        for v in 0..r.n() {
            prop_assert!(r.degree(v) >= 1);
            if let [(u, _)] = r.neighbors(v) {
                prop_assert!(r.degree(*u) > 1);
            }
        }
    }

    #[test]
    fn propagation_is_confluent(g in arb_graph(10), picks in prop::collection::vec((0usize..10, any::<bool>()), 0..6), seed in any::<u64>()) {
        let mut start = Coloring::new(&g);
        for (v, black) in picks {
            let v = v % g.n();
            if start.color(v) == Color::Uncolored {
                let _ = start.set_color(&g, v, if black { Color::Black } else { Color::White });
            }
        }
        let mut fifo = start.clone();
        let expected = fifo.propagate(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..5 {
            let mut c = start.clone();
            let got = c.propagate_shuffled(&g, &mut rng);
            prop_assert_eq!(&got, &expected);
            if got != Propagation::Invalid {
                prop_assert_eq!(c.colors(), fifo.colors());
                for v in 0..g.n() {
                    prop_assert_eq!(c.pair(v), fifo.pair(v));
                }
            }
        }
    }

    #[test]
    fn undo_restores_any_state(g in arb_graph(10), picks in prop::collection::vec((0usize..10, any::<bool>()), 1..8)) {
        let mut c = Coloring::new(&g);
        let blank = c.clone();
        for (v, black) in picks {
            let v = v % g.n();
            if c.color(v) == Color::Uncolored {
                let _ = c.set_color(&g, v, if black { Color::Black } else { Color::White });
                let _ = c.propagate(&g);
            }
        }
        c.undo_to(&g, 0);
        prop_assert_eq!(c, blank);
    }
}
