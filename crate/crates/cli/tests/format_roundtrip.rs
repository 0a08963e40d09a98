use defcover::rational::ratio;
use defcover::{MetricGraph, Point};
use defcover_cli::format::{parse_graph, parse_tokens, serialize_graph, serialize_tokens};
use proptest::prelude::*;

fn graph() -> impl Strategy<Value = MetricGraph> {
    (1usize..=7)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (Just(n), proptest::collection::vec(any::<bool>(), pairs))
        })
        .prop_map(|(n, keep)| {
            let all = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            MetricGraph::new(n, all.zip(keep).filter(|p| p.1).map(|p| p.0)).unwrap()
        })
}

proptest! {
    #[test]
    fn graph_text_round_trips(g in graph()) {
        let text = serialize_graph(&g);
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(serialize_graph(&back), text);
    }

    #[test]
    fn token_text_round_trips(
        g in graph(),
        picks in proptest::collection::vec((0usize..64, 1i64..12, 2i64..13, 1u64..4, any::<bool>()), 0..8),
    ) {
        let mut text = String::new();
        for (pick, num, den, mult, flip) in picks {
            let slot = pick % (g.n() + g.edge_count());
            let p = if slot < g.n() {
                Point::vertex(slot)
            } else {
                let (u, v) = g.edges()[slot - g.n()];
                Point::on_edge(u, v, ratio(1 + num % (den - 1), den))
            };
            let line = match (p.as_vertex(), flip) {
                (Some(v), _) => format!("v {}", v + 1),
                (None, false) => format!("e {} {} {}", p.u() + 1, p.v() + 1, p.lambda()),
                (None, true) => format!("e {} {} {}", p.v() + 1, p.u() + 1, ratio(1, 1) - p.lambda()),
            };
            text.push_str(&format!("{line} {mult}\n"));
        }
        let parsed = parse_tokens(&text, &g).unwrap();
        let canonical = serialize_tokens(parsed.iter());
        let again = parse_tokens(&canonical, &g).unwrap();
        prop_assert_eq!(&again, &parsed);
        prop_assert_eq!(serialize_tokens(again.iter()), canonical);
    }
}
