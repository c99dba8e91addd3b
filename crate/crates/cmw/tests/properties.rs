//! Property-based invariants over randomly generated instances.

use cmw::conditions::{classify_cm, is_pc_or_vertex_componentwise, Verdict};
use cmw::covers::{
    is_weighted_cover, minimal_weighted_covers, WeightedCover, DEFAULT_COVER_BUDGET,
};
use cmw::graph::{parse_graph, DeleteMode, WeightedGraph};
use cmw::ideal::{weighted_edge_ideal, Monomial, MonomialIdeal};
use cmw::structure::girth;
use cmw::testkit::brute_force_minimal_covers;
use cmw::Weight;

use proptest::prelude::*;

/// Random weighted graph on up to `max_n` vertices; a drawn weight of zero
/// means the edge is absent, which keeps the graphs sparse.
fn graph_strategy(max_n: usize, max_w: Weight) -> impl Strategy<Value = WeightedGraph> {
    (1..=max_n).prop_flat_map(move |n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let edge = prop_oneof![3 => Just(0), 1 => 1..=max_w];
        proptest::collection::vec(edge, pairs.len()).prop_map(move |ws| {
            let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let edges = pairs
                .iter()
                .zip(&ws)
                .filter(|(_, &w)| w > 0)
                .map(|(&(i, j), &w)| (labels[i].clone(), labels[j].clone(), w))
                .collect();
            WeightedGraph::from_parts(labels, edges).unwrap()
        })
    })
}

fn monomial_strategy(vars: usize, max_e: u32) -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0..=max_e, vars).prop_map(|es| {
        Monomial::from_pairs(
            es.into_iter()
                .enumerate()
                .map(|(i, e)| (format!("v{i}"), e)),
        )
    })
}

proptest! {
    #[test]
    fn document_roundtrip(g in graph_strategy(8, 5)) {
        let doc = g.to_document();
        let back = parse_graph(&doc).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(back.to_document(), doc);
    }

    #[test]
    fn induced_subgraphs_inherit_weights(g in graph_strategy(8, 5), keep in proptest::collection::vec(any::<bool>(), 8)) {
        let chosen: Vec<&String> = g
            .labels()
            .iter()
            .enumerate()
            .filter(|(i, _)| keep[*i % keep.len()])
            .map(|(_, l)| l)
            .collect();
        let h = g.induced_subgraph(&chosen).unwrap();
        for (i, j, w) in h.edges() {
            let gi = g.vertex_index(h.label(i)).unwrap();
            let gj = g.vertex_index(h.label(j)).unwrap();
            prop_assert_eq!(g.weight(gi, gj), Some(w));
        }
    }

    #[test]
    fn delete_counts(g in graph_strategy(8, 5)) {
        for v in g.labels() {
            let i = g.vertex_index(v).unwrap();
            let minus = g.delete(v, DeleteMode::Vertex).unwrap();
            prop_assert_eq!(minus.vertex_count(), g.vertex_count() - 1);
            let closed = g.delete(v, DeleteMode::ClosedNeighborhood).unwrap();
            prop_assert_eq!(closed.vertex_count(), g.vertex_count() - g.degree(i) - 1);
        }
    }

    #[test]
    fn radical_of_weighted_ideal_is_edge_ideal(g in graph_strategy(8, 6)) {
        prop_assert!(weighted_edge_ideal(&g).radical().equals(&cmw::ideal::edge_ideal(&g)));
    }

    #[test]
    fn classification_is_scaling_invariant(g in graph_strategy(8, 3), k in 1u32..=5) {
        let scaled = {
            let edges = g
                .edges()
                .map(|(i, j, w)| (g.label(i).to_owned(), g.label(j).to_owned(), w * k))
                .collect();
            WeightedGraph::from_parts(g.labels().to_vec(), edges).unwrap()
        };
        prop_assert_eq!(classify_cm(&g).verdict, classify_cm(&scaled).verdict);
    }

    #[test]
    fn uniform_weights_reduce_to_the_unweighted_classification(
        g in graph_strategy(8, 1).prop_filter("girth >= 5", |g| girth(g).is_at_least(5)),
        w in 1u32..=4,
    ) {
        let uniform = g.with_uniform_weight(w);
        let verdict = classify_cm(&uniform).verdict;
        let expected =
            if is_pc_or_vertex_componentwise(&uniform) { Verdict::CohenMacaulay } else { Verdict::NotCohenMacaulay };
        prop_assert_eq!(verdict, expected);
    }

    #[test]
    fn minimal_covers_match_brute_force(g in graph_strategy(5, 3)) {
        let fast = minimal_weighted_covers(&g, DEFAULT_COVER_BUDGET).unwrap();
        let brute = brute_force_minimal_covers(&g);
        prop_assert_eq!(fast, brute);
    }

    #[test]
    fn weighted_cover_condition_matches_ideal_containment(
        g in graph_strategy(6, 3),
        levels in proptest::collection::vec(0u32..=4, 6),
    ) {
        // level 0 means the vertex is outside the support
        let cover = WeightedCover::new(
            g.labels()
                .iter()
                .enumerate()
                .filter(|(i, _)| levels[*i % levels.len()] > 0)
                .map(|(i, l)| (l.clone(), levels[i % levels.len()])),
        )
        .unwrap();
        let covers = is_weighted_cover(&g, &cover).unwrap();
        let ideal = weighted_edge_ideal(&g);
        let component = cover.irreducible_ideal();
        let contains = ideal.generators().iter().all(|m| component.contains(m));
        prop_assert_eq!(covers, contains);
    }

    #[test]
    fn colon_distributes_over_products(
        g in graph_strategy(6, 4),
        f in monomial_strategy(6, 3),
        h in monomial_strategy(6, 3),
    ) {
        let ideal = weighted_edge_ideal(&g);
        prop_assert!(ideal.colon(&f).colon(&h).equals(&ideal.colon(&f.mul(&h))));
    }

    #[test]
    fn ideal_operations_preserve_minimal_generation(
        g in graph_strategy(6, 4),
        f in monomial_strategy(6, 3),
    ) {
        let ideal = weighted_edge_ideal(&g);
        let results: Vec<MonomialIdeal> = vec![
            ideal.colon(&f),
            ideal.add(f.clone()),
            ideal.intersect(&MonomialIdeal::new([f.clone()])),
            ideal.radical(),
        ];
        for r in results {
            let gens = r.generators();
            for a in gens {
                for b in gens {
                    prop_assert!(a == b || !a.divides(b), "{a} divides {b} in {r}");
                }
            }
        }
    }

    #[test]
    fn girth_matches_edge_removal_oracle(g in graph_strategy(8, 1)) {
        let fast = girth(&g);
        let slow = cmw::testkit::shortest_cycle_by_edge_removal(&g);
        match (fast, slow) {
            (cmw::structure::Girth::Finite(a), Some(b)) => prop_assert_eq!(a, b),
            (cmw::structure::Girth::Infinite, None) => {}
            other => prop_assert!(false, "girth mismatch: {:?}", other),
        }
    }
}
