use balanced_forge::{find_balancing_weights, Coalition, Game, Hypergraph, Rational};
use proptest::prelude::*;

fn hypergraph(max_nodes: usize, max_edges: usize) -> impl Strategy<Value = Hypergraph> {
    (1..=max_nodes).prop_flat_map(move |n| {
        prop::collection::vec(1u128..(1 << n), 1..=max_edges).prop_filter_map("not proper", move |bits| {
            let edges: Vec<Coalition> = bits.into_iter().map(Coalition::from_bits).collect();
            Hypergraph::new(n, edges).ok()
        })
    })
}

proptest! {
    #[test]
    fn text_form_round_trips(h in hypergraph(8, 6)) {
        let back: Hypergraph = h.to_string().parse().unwrap();
        prop_assert_eq!(back, h);
    }

    #[test]
    fn dual_swaps_degrees_and_sizes(h in hypergraph(8, 6)) {
        let d = h.dual().unwrap();
        prop_assert_eq!(d.nodes(), h.edges().len());
        let sizes: Vec<usize> = h.edges().iter().map(|e| e.len()).collect();
        prop_assert_eq!(d.degrees(), sizes);
        prop_assert_eq!(d.dual().unwrap(), h);
    }

    #[test]
    fn balancing_weights_balance(n in 2usize..=5, bits in prop::collection::vec(1u128..32, 1..8)) {
        let mut set: Vec<Coalition> = bits
            .into_iter()
            .map(|b| Coalition::from_bits(b & ((1 << n) - 1)))
            .filter(|c| !c.is_empty())
            .collect();
        set.sort();
        set.dedup();
        prop_assume!(!set.is_empty());
        if let Some(b) = find_balancing_weights(n, &set).unwrap() {
            for i in 1..=n {
                let total: Rational = b.iter().filter(|(c, _)| c.contains(i)).map(|(_, w)| w.clone()).sum();
                prop_assert_eq!(total, Rational::from_integer(1.into()));
            }
            prop_assert!(b.weights().iter().all(|w| *w > Rational::from_integer(0.into())));
        }
    }

    #[test]
    fn game_json_round_trips(n in 1usize..=5, seed in any::<u64>()) {
        let g = balanced_forge::random_game(n, seed, 50).unwrap();
        let back = Game::from_json(&g.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), g.to_json());
    }
}
