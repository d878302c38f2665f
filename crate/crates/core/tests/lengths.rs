#[path = "oracles/mod.rs"]
mod oracles;

use proptest::prelude::*;
use raag_core::{Graph, Letter, Raag, VertexSet};

use oracles::{ball, prefixes_in, small_graphs, suffixes, PeelOracle};

#[test]
fn star_length_matches_peeling_over_small_balls() {
    for (name, g) in small_graphs() {
        let r = Raag::new(g.clone());
        let radius = if g.n() >= 5 { 4 } else { 5 };
        let mut oracle = PeelOracle::stars(&r);
        for e in ball(&r, radius) {
            assert_eq!(r.star_length(&e), oracle.length(&e), "{name}: {}", r.format(&e));
        }
    }
}

#[test]
fn syllable_length_matches_peeling_over_small_balls() {
    for (name, g) in small_graphs() {
        let r = Raag::new(g);
        let mut oracle = PeelOracle::syllables(&r);
        for e in ball(&r, 4) {
            assert_eq!(
                r.syllable_length(&e),
                oracle.length(&e),
                "{name}: {}",
                r.format(&e)
            );
            assert_eq!(r.syllable_via_star(&e).unwrap(), r.syllable_length(&e), "{name}");
        }
    }
}

#[test]
fn star_factorizations_are_valid_and_shortest() {
    let r = Raag::new(Graph::cycle(5));
    for e in ball(&r, 5) {
        let f = r.star_factorization(&e);
        f.validate(&r).unwrap();
        assert_eq!(f.len(), r.star_length(&e));
        let product = r.mul_all(f.factors.iter().map(|(_, h)| h));
        assert_eq!(product, e);
    }
}

#[test]
fn known_star_lengths() {
    let r = Raag::new(Graph::cycle(5));
    for (w, star) in [("1", 0), ("a b e", 1), ("a c", 1), ("a c e", 2), ("a c e b d", 3)] {
        assert_eq!(r.star_length(&r.parse(w).unwrap()), star, "{w}");
    }
}

fn set_of(n: usize, mask: u64) -> VertexSet {
    VertexSet(mask & ((1 << n) - 1))
}

fn case() -> impl Strategy<Value = (Raag, Vec<Letter>, Vec<Letter>, u64)> {
    prop_oneof![Just(Graph::cycle(5)), Just(Graph::path(4)), Just(Graph::cycle(6))].prop_flat_map(|g| {
        let n = g.n();
        let word = prop::collection::vec((0..n, any::<bool>()), 0..=8)
            .prop_map(|v| v.into_iter().map(|(x, p)| Letter::new(x, p)).collect::<Vec<_>>());
        (Just(Raag::new(g)), word.clone(), word, any::<u64>())
    })
}

proptest! {
    #[test]
    fn star_length_is_subadditive((r, a, b, _) in case()) {
        let (a, b) = (r.reduce(&a), r.reduce(&b));
        let ab = r.mul(&a, &b);
        prop_assert!(r.star_length(&ab) <= r.star_length(&a) + r.star_length(&b));
        prop_assert_eq!(r.star_length(&r.inv(&a)), r.star_length(&a));
        prop_assert!(r.star_length(&a) <= r.syllable_length(&a));
        prop_assert!(r.syllable_length(&a) <= a.len());
    }

    #[test]
    fn iota_is_the_largest_prefix_in_the_subgroup((r, a, _, mask) in case()) {
        let g = r.reduce(&a);
        let s = set_of(r.graph().n(), mask);
        let (head, rest) = r.split_iota(&g, s);
        prop_assert_eq!(r.mul(&head, &rest), g.clone());
        prop_assert_eq!(head.len() + rest.len(), g.len());
        let longest = prefixes_in(&r, &g, s).into_iter().max_by_key(|p| p.len()).unwrap();
        prop_assert_eq!(head, longest);
    }

    #[test]
    fn tau_is_the_largest_suffix_in_the_subgroup((r, a, _, mask) in case()) {
        let g = r.reduce(&a);
        let s = set_of(r.graph().n(), mask);
        let (rest, tail) = r.split_tau(&g, s);
        prop_assert_eq!(r.mul(&rest, &tail), g.clone());
        prop_assert_eq!(rest.len() + tail.len(), g.len());
        let longest = suffixes(&r, &g)
            .into_iter()
            .filter(|x| x.support().is_subset(s))
            .max_by_key(|x| x.len())
            .unwrap();
        prop_assert_eq!(tail, longest);
    }

    #[test]
    fn cyclic_reduction_conjugates_to_a_cyclically_reduced_core((r, a, _, _) in case()) {
        let g = r.reduce(&a);
        let (core, c) = r.cyclic_reduce(&g);
        prop_assert_eq!(r.conj(&g, &c), core.clone());
        prop_assert!(r.is_cyclically_reduced(&core));
        prop_assert_eq!(core.len(), oracles::cyclic_core(&r, &g).len());
    }
}
