use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::Graph;
use crate::word::{Element, Letter, Raag};

/// A uniformly random word of exactly `len` letters (not reduced).
pub fn random_word<R: Rng>(rng: &mut R, n: usize, len: usize) -> Vec<Letter> {
    (0..len)
        .map(|_| Letter::new(rng.gen_range(0..n), rng.gen_bool(0.5)))
        .collect()
}

/// Reduces a random word of length drawn from `0..=max_len`.
pub fn random_element<R: Rng>(rng: &mut R, raag: &Raag, max_len: usize) -> Element {
    let len = rng.gen_range(0..=max_len);
    raag.reduce(&random_word(rng, raag.graph().n(), len))
}

/// A product of `syllables` random vertex powers with exponents in
/// `1..=max_exp` and random sign, consecutive vertices distinct. Its syllable
/// length is at most `syllables`.
pub fn random_syllables<R: Rng>(rng: &mut R, raag: &Raag, syllables: usize, max_exp: usize) -> Element {
    let n = raag.graph().n();
    let mut w = vec![];
    let mut prev = usize::MAX;
    for _ in 0..syllables {
        let v = loop {
            let v = rng.gen_range(0..n);
            if v != prev || n == 1 {
                break v;
            }
        };
        prev = v;
        let positive = rng.gen_bool(0.5);
        for _ in 0..rng.gen_range(1..=max_exp) {
            w.push(Letter::new(v, positive));
        }
    }
    raag.reduce(&w)
}

/// A random connected graph on `n` vertices with no triangles and no induced
/// squares: a random spanning tree plus random chords that keep every cycle
/// of length at least five.
pub fn random_girth5_graph<R: Rng>(rng: &mut R, n: usize, extra_edges: usize) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = vec![];
    for i in 1..n {
        let j = rng.gen_range(0..i);
        edges.push((order[i], order[j]));
    }
    let labels = Graph::default_labels(n);
    let mut g = Graph::from_edges(labels.clone(), &edges).expect("tree");
    let mut pairs = vec![];
    for u in 0..n {
        for v in u + 1..n {
            if !g.adjacent(u, v) {
                pairs.push((u, v));
            }
        }
    }
    pairs.shuffle(rng);
    let mut added = 0;
    for (u, v) in pairs {
        if added == extra_edges {
            break;
        }
        // A new edge closes cycles of length d(u, v) + 1.
        if g.distance(u, v).is_some_and(|d| d >= 4) {
            edges.push((u, v));
            g = Graph::from_edges(labels.clone(), &edges).expect("graph");
            added += 1;
        }
    }
    g
}
