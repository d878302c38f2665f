#[path = "oracles/mod.rs"]
mod oracles;

use proptest::prelude::*;
use raag_core::classify::{classify, Kind};
use raag_core::extension::{
    act, adjacent, adjacent_by_commutator, as_element, canonical_vertex, copy_intersection,
    copy_intersection_direct, covering_distance_exact, ExtSnapshot, ExtVertex,
};
use raag_core::{Element, Graph, Letter, Raag};

use oracles::{ball, is_elliptic, path_counts};

fn c5() -> Raag {
    Raag::new(Graph::cycle(5))
}

#[test]
fn snapshot_edges_are_exactly_commuting_pairs() {
    for g in [Graph::cycle(5), Graph::path(4), Graph::cycle(4)] {
        let r = Raag::new(g);
        let s = ExtSnapshot::build(&r, 2, 1).unwrap();
        let elems: Vec<Element> = s.vertices().iter().map(|x| as_element(&r, x)).collect();
        for i in 0..s.vertex_count() {
            for j in 0..s.vertex_count() {
                let commute = i != j && r.commutes(&elems[i], &elems[j]);
                assert_eq!(s.neighbors(i).binary_search(&j).is_ok(), commute, "{i} {j}");
                assert_eq!(adjacent(&r, s.vertex(i), s.vertex(j)), commute);
            }
        }
    }
}

#[test]
fn snapshot_vertices_are_distinct_elements() {
    let r = c5();
    let s = ExtSnapshot::build(&r, 3, 1).unwrap();
    let mut elems: Vec<Element> = s.vertices().iter().map(|x| as_element(&r, x)).collect();
    elems.sort();
    elems.dedup();
    assert_eq!(elems.len(), s.vertex_count());
}

#[test]
fn classification_matches_subjoin_search() {
    let graphs = [
        Graph::cycle(5),
        Graph::path(4),
        Graph::cycle(4),
        Graph::cycle(6),
        Graph::path(5),
        Graph::star_graph(4),
    ];
    for g in graphs {
        let r = Raag::new(g);
        for e in ball(&r, 4) {
            let t = classify(&r, &e);
            t.validate(r.graph()).unwrap();
            let expect = if e.is_identity() {
                Kind::Identity
            } else if is_elliptic(&r, &e) {
                Kind::Elliptic
            } else {
                Kind::Loxodromic
            };
            assert_eq!(t.kind, expect, "{}", r.format(&e));
        }
    }
}

#[test]
fn copy_intersection_closed_form_matches_definition() {
    let r = c5();
    for e in ball(&r, 5) {
        let expect = oracles::copy_intersection(&r, &e);
        assert_eq!(copy_intersection(&r, &e).unwrap(), expect, "{}", r.format(&e));
        assert_eq!(copy_intersection_direct(&r, &e), expect);
    }
}

#[test]
fn tree_snapshots_have_unique_geodesics() {
    for g in [Graph::path(3), Graph::path(4), Graph::star_graph(4)] {
        let r = Raag::new(g);
        let s = ExtSnapshot::build(&r, 3, 1).unwrap();
        assert!(s.is_forest());
        for src in 0..s.vertex_count() {
            for c in path_counts(s.adjacency(), src).into_iter().flatten() {
                assert_eq!(c.1, 1);
            }
        }
    }
}

#[test]
fn larger_budgets_only_add_vertices_and_shortcuts() {
    let r = c5();
    let small = ExtSnapshot::build(&r, 2, 1).unwrap();
    let big = ExtSnapshot::build(&r, 3, 2).unwrap();
    let map: Vec<usize> = small.vertices().iter().map(|x| big.id(x).unwrap()).collect();
    for i in 0..small.vertex_count() {
        for &j in small.neighbors(i) {
            assert!(big.neighbors(map[i]).contains(&map[j]));
        }
        let (ds, db) = (small.bfs(i), big.bfs(map[i]));
        for j in 0..small.vertex_count() {
            if let Some(d) = ds[j] {
                assert!(db[map[j]].unwrap() <= d);
            }
        }
    }
}

#[test]
fn covering_distance_matches_copy_chains_in_a_snapshot() {
    let r = c5();
    let s = ExtSnapshot::build(&r, 4, 1).unwrap();
    let mut checked = 0;
    for h in ball(&r, 2) {
        for v in 0..5 {
            let x = canonical_vertex(&r, v, &h);
            if !s.contains(&x) {
                continue;
            }
            for u in 0..5 {
                let y = ExtVertex::base_vertex(u);
                let d = s.covering_distance(&x, &y).unwrap().unwrap();
                assert_eq!(d.value, covering_distance_exact(&r, &x, &y), "{x:?} {y:?}");
                checked += 1;
            }
        }
    }
    assert!(checked > 500, "{checked}");
}

fn letter() -> impl Strategy<Value = Letter> {
    (0..5usize, any::<bool>()).prop_map(|(v, p)| Letter::new(v, p))
}

fn element(max: usize) -> impl Strategy<Value = Element> {
    prop::collection::vec(letter(), 0..=max).prop_map(|w| c5().reduce(&w))
}

proptest! {
    #[test]
    fn action_is_a_right_action(v in 0..5usize, a in element(6), b in element(6)) {
        let r = c5();
        let x = canonical_vertex(&r, v, &a);
        prop_assert_eq!(act(&r, &act(&r, &x, &b), &r.inv(&b)), x.clone());
        prop_assert_eq!(act(&r, &act(&r, &ExtVertex::base_vertex(v), &a), &b), act(&r, &ExtVertex::base_vertex(v), &r.mul(&a, &b)));
        prop_assert_eq!(as_element(&r, &act(&r, &x, &b)), r.conj(&as_element(&r, &x), &b));
    }

    #[test]
    fn action_preserves_adjacency(u in 0..5usize, v in 0..5usize, a in element(4), b in element(4), g in element(5)) {
        let r = c5();
        let x = canonical_vertex(&r, u, &a);
        let y = canonical_vertex(&r, v, &b);
        let before = adjacent(&r, &x, &y);
        prop_assert_eq!(before, adjacent_by_commutator(&r, &x, &y));
        prop_assert_eq!(adjacent(&r, &act(&r, &x, &g), &act(&r, &y, &g)), before);
        prop_assert_eq!(
            covering_distance_exact(&r, &act(&r, &x, &g), &act(&r, &y, &g)),
            covering_distance_exact(&r, &x, &y)
        );
    }

    #[test]
    fn covering_distance_sandwiches_star_length(v in 0..5usize, g in element(8)) {
        let r = c5();
        let d = covering_distance_exact(&r, &ExtVertex::base_vertex(v), &canonical_vertex(&r, v, &g));
        let star = r.star_length(&g);
        prop_assert!(d + 1 >= star && d <= star + 1, "d {} star {}", d, star);
    }

    #[test]
    fn covering_distance_is_symmetric(u in 0..5usize, v in 0..5usize, a in element(6), b in element(6)) {
        let r = c5();
        let x = canonical_vertex(&r, u, &a);
        let y = canonical_vertex(&r, v, &b);
        prop_assert_eq!(covering_distance_exact(&r, &x, &y), covering_distance_exact(&r, &y, &x));
    }
}
