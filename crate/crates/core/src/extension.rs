use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{girth_of_lists, Graph, VertexSet};
use crate::word::{Element, Letter, Raag};

/// Default cap on snapshot vertices and enumerated conjugators.
pub const DEFAULT_VERTEX_CAP: usize = 100_000;

/// The vertex `base^conj = conj^-1 base conj` of the extension graph. The
/// conjugator never begins with a letter of `st(base)`, which makes the pair
/// a unique name for the vertex.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtVertex {
    pub base: usize,
    pub conj: Element,
}

impl fmt::Debug for ExtVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{:?}", self.base, self.conj)
    }
}

impl ExtVertex {
    pub fn base_vertex(v: usize) -> Self {
        ExtVertex {
            base: v,
            conj: Element::identity(),
        }
    }

    pub fn display(&self, raag: &Raag) -> String {
        let b = raag.graph().label(self.base);
        if self.conj.is_identity() {
            b.to_string()
        } else {
            format!("{b}^({})", raag.format(&self.conj))
        }
    }
}

pub fn canonical_vertex(raag: &Raag, v: usize, g: &Element) -> ExtVertex {
    ExtVertex {
        base: v,
        conj: raag.split_iota(g, raag.graph().star(v)).1,
    }
}

/// Right conjugation: `x^g`.
pub fn act(raag: &Raag, x: &ExtVertex, g: &Element) -> ExtVertex {
    canonical_vertex(raag, x.base, &raag.mul(&x.conj, g))
}

/// The group element named by the vertex.
pub fn as_element(raag: &Raag, x: &ExtVertex) -> Element {
    raag.conj(&raag.generator(x.base), &x.conj)
}

/// Commutation of `u^h` and `w^m`, decided without forming commutators:
/// translate to `u^r` against `w` with `r = h m^-1`, and `u^r` lies in the
/// centralizer `<st(w)>` exactly when `u` and the stripped `r` do.
pub fn adjacent(raag: &Raag, x: &ExtVertex, y: &ExtVertex) -> bool {
    let g = raag.graph();
    if x.base == y.base || !g.adjacent(x.base, y.base) {
        return false;
    }
    let r = raag.mul(&x.conj, &raag.inv(&y.conj));
    let r = raag.split_iota(&r, g.star(x.base)).1;
    r.support().is_subset(g.star(y.base))
}

/// Reference adjacency through the commutator normal form.
pub fn adjacent_by_commutator(raag: &Raag, x: &ExtVertex, y: &ExtVertex) -> bool {
    x != y && raag.commutes(&as_element(raag, x), &as_element(raag, y))
}

/// The element `m h^-1` for `x = a^h`, `y = b^m`, with its `st(b)`-prefix and
/// `st(a)`-suffix removed. Any element `s m h^-1 t` with `s` in `<st(b)>` and
/// `t` in `<st(a)>` factors through it.
pub fn double_coset_core(raag: &Raag, x: &ExtVertex, y: &ExtVertex) -> Element {
    let g = raag.graph();
    let mut z = raag.mul(&y.conj, &raag.inv(&x.conj));
    loop {
        let a = raag.split_iota(&z, g.star(y.base)).1;
        let b = raag.split_tau(&a, g.star(x.base)).0;
        if b == z {
            return z;
        }
        z = b;
    }
}

/// The least number of conjugate copies of the graph needed to join `x` to
/// `y` in a chain of pairwise-meeting copies; `0` when `x = y`. Copies
/// `Γ^p` and `Γ^q` meet exactly when `q p^-1` is a star word, so a chain of
/// `k` copies is a star factorization of length `k - 1` of an element in the
/// double coset of `double_coset_core`, and that core has the least star
/// length in its double coset.
pub fn covering_distance_exact(raag: &Raag, x: &ExtVertex, y: &ExtVertex) -> usize {
    if x == y {
        return 0;
    }
    1 + raag.star_length(&double_coset_core(raag, x, y))
}

/// Distance in the extension graph of a discrete graph, where each conjugate
/// copy is a clique (the free-group convention). Equal to the covering
/// distance with single-vertex stars. Bases and supports must lie in a set of
/// pairwise non-adjacent vertices.
pub fn free_distance(raag: &Raag, x: &ExtVertex, y: &ExtVertex) -> Result<usize> {
    let g = raag.graph();
    let s = x.conj.support().union(y.conj.support()).with(x.base).with(y.base);
    if s.iter().any(|v| !g.link(v).intersection(s).is_empty()) {
        return Err(Error::Precondition(
            "free distance needs an independent vertex set".into(),
        ));
    }
    let fx = free_canonical(raag, x.base, &x.conj);
    let fy = free_canonical(raag, y.base, &y.conj);
    if x.base == y.base && fx == fy {
        return Ok(0);
    }
    let z = raag.mul(&fy, &raag.inv(&fx));
    let z = raag.split_iota(&z, VertexSet::singleton(y.base)).1;
    let z = raag.split_tau(&z, VertexSet::singleton(x.base)).0;
    Ok(1 + z.syllable_length())
}

/// The conjugator with its leading power of `v` removed.
pub fn free_canonical(raag: &Raag, v: usize, g: &Element) -> Element {
    raag.split_iota(g, VertexSet::singleton(v)).1
}

/// All normal forms of length at most `max_len` whose syllable exponents are
/// at most `max_exp`, over the letters of `alphabet`, sorted by length and
/// then lexicographically. Every such element extends one of length one less
/// by a single letter, so the layered search is complete.
pub fn conjugator_ball(
    raag: &Raag,
    max_len: usize,
    max_exp: usize,
    alphabet: VertexSet,
    cap: usize,
) -> Result<Vec<Element>> {
    let letters: Vec<Element> = alphabet
        .iter()
        .flat_map(|v| [Letter::neg(v), Letter::pos(v)])
        .map(|l| raag.reduce(&[l]))
        .collect();
    let mut all = vec![Element::identity()];
    let mut layer = vec![Element::identity()];
    for k in 1..=max_len {
        let mut next: Vec<Element> = layer
            .par_iter()
            .flat_map_iter(|g| {
                letters
                    .iter()
                    .map(move |l| raag.mul(g, l))
                    .filter(move |h| h.len() == k && h.max_exponent() <= max_exp)
            })
            .collect();
        next.par_sort_unstable();
        next.dedup();
        if all.len() + next.len() > cap {
            return Err(Error::CapExceeded {
                what: "enumerated conjugators",
                cap,
            });
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    Ok(all)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    #[serde(rename = "L")]
    pub max_len: usize,
    #[serde(rename = "E")]
    pub max_exp: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SnapshotDistance {
    pub value: usize,
    /// True when the value is known to equal the distance in the full
    /// extension graph, not just bound it from above.
    pub exact: bool,
}

/// A finite piece of the extension graph: every `v^g` with `g` in the budget
/// ball, and all commuting pairs among them.
pub struct ExtSnapshot {
    raag: Raag,
    pub budget: Budget,
    pub alphabet: VertexSet,
    pub conjugators: Vec<Element>,
    vertices: Vec<ExtVertex>,
    index: HashMap<ExtVertex, usize>,
    adj: Vec<Vec<usize>>,
    copies_of: Vec<Vec<usize>>,
}

impl fmt::Debug for ExtSnapshot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ExtSnapshot({:?}, {} vertices, {} edges)",
            self.budget,
            self.vertex_count(),
            self.edge_count()
        )
    }
}

#[derive(Serialize)]
pub struct SnapshotVertexJson {
    pub id: usize,
    pub base: String,
    pub conjugator: String,
}

#[derive(Serialize)]
pub struct SnapshotJson {
    pub graph: Graph,
    pub budget: Budget,
    pub vertices: Vec<SnapshotVertexJson>,
    pub edges: Vec<[usize; 2]>,
}

impl ExtSnapshot {
    pub fn build(raag: &Raag, max_len: usize, max_exp: usize) -> Result<Self> {
        Self::build_with(
            raag,
            max_len,
            max_exp,
            raag.graph().vertices(),
            DEFAULT_VERTEX_CAP,
        )
    }

    /// Snapshot with conjugators restricted to the subgroup on `alphabet`.
    pub fn build_with(
        raag: &Raag,
        max_len: usize,
        max_exp: usize,
        alphabet: VertexSet,
        cap: usize,
    ) -> Result<Self> {
        if max_exp == 0 {
            return Err(Error::Invalid("exponent cap E must be at least 1".into()));
        }
        let g = raag.graph();
        let conjugators = conjugator_ball(raag, max_len, max_exp, alphabet, cap)?;
        let mut vertices: Vec<ExtVertex> = conjugators
            .par_iter()
            .flat_map_iter(|k| (0..g.n()).map(move |v| canonical_vertex(raag, v, k)))
            .collect();
        vertices.par_sort_unstable();
        vertices.dedup();
        if vertices.len() > cap {
            return Err(Error::CapExceeded {
                what: "snapshot vertices",
                cap,
            });
        }
        let index: HashMap<ExtVertex, usize> = vertices
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, x)| (x, i))
            .collect();

        // Neighbours of u^h are w^(t h) with w in lk(u) and t in <lk(u)>. The
        // part of t that survives canonicalization stays a subword of the
        // neighbour's conjugator, so conjugators from the ball suffice.
        let link_balls: Vec<Vec<&Element>> = (0..g.n())
            .map(|u| {
                let allowed = g.link(u).intersection(alphabet);
                conjugators
                    .iter()
                    .filter(|t| t.support().is_subset(allowed))
                    .collect()
            })
            .collect();
        let adj: Vec<Vec<usize>> = vertices
            .par_iter()
            .map(|x| {
                let mut out = HashSet::new();
                for w in g.link(x.base).iter() {
                    for t in &link_balls[x.base] {
                        let y = canonical_vertex(raag, w, &raag.mul(t, &x.conj));
                        if let Some(&j) = index.get(&y) {
                            out.insert(j);
                        }
                    }
                }
                let mut out: Vec<usize> = out.into_iter().collect();
                out.sort_unstable();
                out
            })
            .collect();

        let mut copies_of = vec![vec![]; vertices.len()];
        for (c, k) in conjugators.iter().enumerate() {
            for v in 0..g.n() {
                copies_of[index[&canonical_vertex(raag, v, k)]].push(c);
            }
        }
        Ok(ExtSnapshot {
            raag: raag.clone(),
            budget: Budget { max_len, max_exp },
            alphabet,
            conjugators,
            vertices,
            index,
            adj,
            copies_of,
        })
    }

    pub fn raag(&self) -> &Raag {
        &self.raag
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> &[ExtVertex] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &ExtVertex {
        &self.vertices[i]
    }

    pub fn id(&self, x: &ExtVertex) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn contains(&self, x: &ExtVertex) -> bool {
        self.index.contains_key(x)
    }

    /// The conjugator the vertex was generated from. The canonical conjugator
    /// is itself in the budget ball, so it serves.
    pub fn provenance(&self, i: usize) -> &Element {
        &self.vertices[i].conj
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = vec![];
        for (i, ns) in self.adj.iter().enumerate() {
            out.extend(ns.iter().filter(|&&j| j > i).map(|&j| (i, j)));
        }
        out
    }

    pub fn girth(&self) -> Option<usize> {
        girth_of_lists(&self.adj)
    }

    pub fn bfs(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertices.len()];
        dist[src] = Some(0);
        let mut q = VecDeque::from([src]);
        while let Some(u) = q.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    q.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.vertices.is_empty() || self.bfs(0).iter().all(Option::is_some)
    }

    pub fn is_forest(&self) -> bool {
        self.girth().is_none()
    }

    fn require(&self, x: &ExtVertex) -> Result<usize> {
        self.id(x)
            .ok_or_else(|| Error::Invalid(format!("{} is not in the snapshot", x.display(&self.raag))))
    }

    /// Snapshot distance, an upper bound for the extension graph. It is flagged
    /// exact when it is at most 2 (adjacency is decided exactly) or matches the
    /// covering distance, which bounds the true distance from below.
    pub fn graph_distance(&self, x: &ExtVertex, y: &ExtVertex) -> Result<Option<SnapshotDistance>> {
        let (i, j) = (self.require(x)?, self.require(y)?);
        Ok(self.bfs(i)[j].map(|value| SnapshotDistance {
            value,
            exact: value <= 2 || value == covering_distance_exact(&self.raag, x, y),
        }))
    }

    /// Fewest copies `Γ^k`, `k` in the ball, chained through shared vertices
    /// from one holding `x` to one holding `y`. An upper bound for the covering
    /// distance, flagged exact when it matches the closed form.
    pub fn covering_distance(&self, x: &ExtVertex, y: &ExtVertex) -> Result<Option<SnapshotDistance>> {
        let (i, j) = (self.require(x)?, self.require(y)?);
        let exact = covering_distance_exact(&self.raag, x, y);
        if i == j {
            return Ok(Some(SnapshotDistance {
                value: 0,
                exact: true,
            }));
        }
        let n = self.raag.graph().n();
        let copy_vertices = |c: usize| {
            let k = &self.conjugators[c];
            (0..n).map(move |v| self.index[&canonical_vertex(&self.raag, v, k)])
        };
        let mut dist: HashMap<usize, usize> = HashMap::new();
        let mut q = VecDeque::new();
        for &c in &self.copies_of[i] {
            dist.insert(c, 1);
            q.push_back(c);
        }
        while let Some(c) = q.pop_front() {
            let d = dist[&c];
            if self.copies_of[j].contains(&c) {
                return Ok(Some(SnapshotDistance {
                    value: d,
                    exact: d == exact,
                }));
            }
            for u in copy_vertices(c) {
                for &c2 in &self.copies_of[u] {
                    if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(c2) {
                        e.insert(d + 1);
                        q.push_back(c2);
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn to_json(&self) -> SnapshotJson {
        SnapshotJson {
            graph: self.raag.graph().clone(),
            budget: self.budget,
            vertices: self
                .vertices
                .iter()
                .enumerate()
                .map(|(id, x)| SnapshotVertexJson {
                    id,
                    base: self.raag.graph().label(x.base).to_string(),
                    conjugator: self.raag.format(&x.conj),
                })
                .collect(),
            edges: self.edges().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }

    /// DOT export; vertices of the base copy are filled.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph snapshot {\n");
        for (i, x) in self.vertices.iter().enumerate() {
            let style = if x.conj.is_identity() {
                ", style=filled"
            } else {
                ""
            };
            s.push_str(&format!("  {i} [label=\"{}\"{style}];\n", x.display(&self.raag)));
        }
        for (a, b) in self.edges() {
            s.push_str(&format!("  {a} -- {b};\n"));
        }
        s.push_str("}\n");
        s
    }
}

/// `Γ ∩ Γ^g` for a triangle- and square-free graph, by the shape of `g`:
/// the identity keeps everything, a nontrivial power of `y` keeps `st(y)`, a
/// star word through two adjacent vertices keeps that edge, a star word whose
/// support meets `lk(y)` twice keeps `y`, and anything else meets nothing.
pub fn copy_intersection(raag: &Raag, g: &Element) -> Result<VertexSet> {
    let gr = raag.graph();
    if !gr.is_triangle_free() || !gr.is_square_free() {
        return Err(Error::Precondition(
            "graph must be triangle- and square-free".into(),
        ));
    }
    let s = g.support();
    Ok(match s.len() {
        0 => gr.vertices(),
        1 => gr.star(s.first().unwrap()),
        2 => {
            let x = s.first().unwrap();
            let y = s.without(x).first().unwrap();
            if gr.adjacent(x, y) {
                s
            } else {
                gr.common_link(s)
            }
        }
        _ => gr
            .vertices()
            .iter()
            .filter(|&y| s.is_subset(gr.star(y)))
            .collect(),
    })
}

/// Base vertices fixed by conjugation with `g`, compared as canonical vertices.
pub fn copy_intersection_direct(raag: &Raag, g: &Element) -> VertexSet {
    (0..raag.graph().n())
        .filter(|&v| canonical_vertex(raag, v, g).conj.is_identity())
        .collect()
}
