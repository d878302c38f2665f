use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest vertex count a [`Graph`] can hold; vertex sets are single machine words.
pub const MAX_VERTICES: usize = 64;

/// Default cap on the vertex count for clique enumeration.
pub const CLIQUE_CAP: usize = 16;

/// A set of vertex indices of one graph, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    /// All of `0..n`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1 << v)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1 << v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: Self) -> Self {
        VertexSet(self.0 | o.0)
    }

    pub fn intersection(self, o: Self) -> Self {
        VertexSet(self.0 & o.0)
    }

    pub fn difference(self, o: Self) -> Self {
        VertexSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    /// Smallest member.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(v)
        })
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A finite simple graph with labelled vertices. Vertex indices follow input
/// order, and that order breaks every tie downstream.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<VertexSet>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    vertices: Vec<String>,
    edges: Vec<[String; 2]>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr {
            vertices: self.labels.clone(),
            edges: self
                .edges()
                .into_iter()
                .map(|(u, v)| [self.labels[u].clone(), self.labels[v].clone()])
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(d)?;
        let edges: Vec<(&str, &str)> = repr.edges.iter().map(|[a, b]| (a.as_str(), b.as_str())).collect();
        Graph::from_labels(&repr.vertices, &edges).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

fn valid_label(l: &str) -> bool {
    !l.is_empty()
        && !l
            .chars()
            .any(|c| c.is_whitespace() || c == ':' || c == '^' || c == '#')
}

impl Graph {
    /// Builds a graph from vertex indices `0..n` with the given edges.
    pub fn from_edges(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        if labels.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices(labels.len()));
        }
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if !valid_label(l) {
                return Err(Error::Invalid(format!("bad vertex label {l:?}")));
            }
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate vertex {l}")));
            }
        }
        let mut adj = vec![VertexSet::EMPTY; labels.len()];
        for &(u, v) in edges {
            if u >= labels.len() || v >= labels.len() {
                return Err(Error::Invalid(format!("edge ({u},{v}) out of range")));
            }
            if u == v {
                return Err(Error::Invalid(format!("loop at {}", labels[u])));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Graph { labels, index, adj })
    }

    pub fn from_labels<S: AsRef<str>>(vertices: &[S], edges: &[(&str, &str)]) -> Result<Self> {
        let labels: Vec<String> = vertices.iter().map(|s| s.as_ref().to_string()).collect();
        let pos: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let mut idx = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            let u = *pos.get(a).ok_or_else(|| Error::UnknownVertex(a.to_string()))?;
            let v = *pos.get(b).ok_or_else(|| Error::UnknownVertex(b.to_string()))?;
            idx.push((u, v));
        }
        Graph::from_edges(labels, &idx)
    }

    /// Vertices labelled `a, b, c, ...` (or `v0, v1, ...` beyond 26).
    pub fn default_labels(n: usize) -> Vec<String> {
        (0..n)
            .map(|i| {
                if n <= 26 {
                    ((b'a' + i as u8) as char).to_string()
                } else {
                    format!("v{i}")
                }
            })
            .collect()
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(Graph::default_labels(n), &edges).expect("cycle")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(Graph::default_labels(n), &edges).expect("path")
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = vec![];
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        Graph::from_edges(Graph::default_labels(n), &edges).expect("complete")
    }

    pub fn discrete(n: usize) -> Self {
        Graph::from_edges(Graph::default_labels(n), &[]).expect("discrete")
    }

    /// Star graph: vertex `a` joined to `n` leaves.
    pub fn star_graph(n: usize) -> Self {
        let edges: Vec<_> = (1..=n).map(|i| (0, i)).collect();
        Graph::from_edges(Graph::default_labels(n + 1), &edges).expect("star")
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn vertex(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn set_of(&self, labels: &[&str]) -> Result<VertexSet> {
        labels.iter().map(|l| self.vertex(l)).collect()
    }

    pub fn set_labels(&self, s: VertexSet) -> Vec<String> {
        s.iter().map(|v| self.labels[v].clone()).collect()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn link(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn star(&self, v: usize) -> VertexSet {
        self.adj[v].with(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = vec![];
        for u in 0..self.n() {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    /// Vertices adjacent to every member of `s`.
    pub fn common_link(&self, s: VertexSet) -> VertexSet {
        s.iter()
            .fold(self.vertices(), |acc, v| acc.intersection(self.adj[v]))
    }

    /// The complement graph on the same vertices.
    pub fn opposite(&self) -> Graph {
        let all = self.vertices();
        let adj = (0..self.n())
            .map(|v| all.difference(self.adj[v]).without(v))
            .collect();
        Graph {
            labels: self.labels.clone(),
            index: self.index.clone(),
            adj,
        }
    }

    /// Induced subgraph on `s`, with vertices kept in their original order.
    /// Returns the subgraph and the map from new to old indices.
    pub fn induced(&self, s: VertexSet) -> (Graph, Vec<usize>) {
        let old: Vec<usize> = s.iter().collect();
        let mut new_of = vec![usize::MAX; self.n()];
        for (i, &v) in old.iter().enumerate() {
            new_of[v] = i;
        }
        let mut edges = vec![];
        for (i, &u) in old.iter().enumerate() {
            for v in self.adj[u].intersection(s).iter() {
                if new_of[v] > i {
                    edges.push((i, new_of[v]));
                }
            }
        }
        let labels = old.iter().map(|&v| self.labels[v].clone()).collect();
        (Graph::from_edges(labels, &edges).expect("induced"), old)
    }

    fn check_subset(&self, s: VertexSet) -> Result<()> {
        if s.is_subset(self.vertices()) {
            Ok(())
        } else {
            Err(Error::Invalid("vertex set is not a subset of the graph".into()))
        }
    }

    /// Connected components of the subgraph induced on `s`, using `adj` as the
    /// neighbour relation. Components are listed by smallest member.
    fn components_with(adj: impl Fn(usize) -> VertexSet, s: VertexSet) -> Vec<VertexSet> {
        let mut rest = s;
        let mut out = vec![];
        while let Some(start) = rest.first() {
            let mut comp = VertexSet::singleton(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = VertexSet::EMPTY;
                for v in frontier.iter() {
                    next = next.union(adj(v));
                }
                next = next.intersection(s).difference(comp);
                comp = comp.union(next);
                frontier = next;
            }
            rest = rest.difference(comp);
            out.push(comp);
        }
        out
    }

    pub fn components_of(&self, s: VertexSet) -> Vec<VertexSet> {
        Self::components_with(|v| self.adj[v], s)
    }

    /// Components of the complement graph restricted to `s`.
    pub fn anti_components_of(&self, s: VertexSet) -> Vec<VertexSet> {
        let all = self.vertices();
        Self::components_with(|v| all.difference(self.adj[v]).without(v), s)
    }

    /// Splits `s` as a join `A * B` if possible: `A` is the complement-component
    /// of the smallest vertex, `B` the rest.
    pub fn split_join(&self, s: VertexSet) -> Result<Option<(VertexSet, VertexSet)>> {
        self.check_subset(s)?;
        let comps = self.anti_components_of(s);
        if comps.len() < 2 {
            return Ok(None);
        }
        Ok(Some((comps[0], s.difference(comps[0]))))
    }

    pub fn is_join(&self) -> bool {
        self.anti_components_of(self.vertices()).len() >= 2
    }

    pub fn is_connected(&self) -> bool {
        self.components_of(self.vertices()).len() <= 1
    }

    pub fn is_anti_connected(&self) -> bool {
        self.anti_components_of(self.vertices()).len() <= 1
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges()
            .iter()
            .all(|&(u, v)| self.adj[u].intersection(self.adj[v]).is_empty())
    }

    /// No induced 4-cycle.
    pub fn is_square_free(&self) -> bool {
        for u in 0..self.n() {
            for w in u + 1..self.n() {
                if self.adjacent(u, w) {
                    continue;
                }
                let common: Vec<usize> = self.adj[u].intersection(self.adj[w]).iter().collect();
                for (i, &x) in common.iter().enumerate() {
                    if common[i + 1..].iter().any(|&y| !self.adjacent(x, y)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_tree(&self) -> bool {
        self.n() > 0 && self.is_connected() && self.edge_count() + 1 == self.n()
    }

    /// Length of the shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let adj: Vec<Vec<usize>> = (0..self.n()).map(|v| self.adj[v].iter().collect()).collect();
        girth_of_lists(&adj)
    }

    /// BFS distances from `v`; unreachable vertices get `None`.
    pub fn distances_from(&self, v: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[v] = Some(0);
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for w in self.adj[u].iter() {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        self.distances_from(u)[v]
    }

    /// Diameter of a connected graph, `None` if disconnected or empty.
    pub fn diameter(&self) -> Option<usize> {
        if self.n() == 0 {
            return None;
        }
        let mut best = 0;
        for v in 0..self.n() {
            for d in self.distances_from(v) {
                best = best.max(d?);
            }
        }
        Some(best)
    }

    /// A shortest path from `u` to `v`, preferring the smallest next vertex at
    /// every step.
    pub fn shortest_path(&self, u: usize, v: usize) -> Option<Vec<usize>> {
        let to_v = self.distances_from(v);
        to_v[u]?;
        let mut path = vec![u];
        let mut cur = u;
        while cur != v {
            let d = to_v[cur].unwrap();
            cur = self.adj[cur].iter().find(|&w| to_v[w] == Some(d - 1)).unwrap();
            path.push(cur);
        }
        Some(path)
    }

    /// All nonempty cliques, ordered by size and then by bitmask.
    pub fn cliques(&self) -> Result<Vec<VertexSet>> {
        if self.n() > CLIQUE_CAP {
            return Err(Error::CapExceeded {
                what: "clique enumeration vertex count",
                cap: CLIQUE_CAP,
            });
        }
        let mut out = vec![];
        fn grow(g: &Graph, clique: VertexSet, cand: VertexSet, out: &mut Vec<VertexSet>) {
            for v in cand.iter() {
                let c = clique.with(v);
                out.push(c);
                let next = VertexSet(cand.intersection(g.adj[v]).0 & !((2u64 << v) - 1));
                grow(g, c, next, out);
            }
        }
        grow(self, VertexSet::EMPTY, self.vertices(), &mut out);
        out.sort_by_key(|c| (c.len(), c.0));
        Ok(out)
    }

    /// The graph whose vertices are the nonempty cliques; two cliques are
    /// adjacent when distinct and their union is a clique.
    pub fn clique_graph(&self) -> Result<(Graph, Vec<VertexSet>)> {
        let cliques = self.cliques()?;
        if cliques.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices(cliques.len()));
        }
        let is_clique = |s: VertexSet| s.iter().all(|v| s.without(v).is_subset(self.adj[v]));
        let mut edges = vec![];
        for i in 0..cliques.len() {
            for j in i + 1..cliques.len() {
                if is_clique(cliques[i].union(cliques[j])) {
                    edges.push((i, j));
                }
            }
        }
        let labels = cliques
            .iter()
            .map(|c| {
                c.iter()
                    .map(|v| self.labels[v].as_str())
                    .collect::<Vec<_>>()
                    .join("+")
            })
            .collect();
        Ok((Graph::from_edges(labels, &edges)?, cliques))
    }

    /// Parses the text format: one line per vertex, `v: u w x`. Vertices that
    /// only appear as neighbours are added after the listed ones, in order of
    /// first appearance. When both endpoints of an edge have their own line,
    /// each must list the other.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut heads: Vec<(String, usize, usize)> = vec![];
        let mut lists: Vec<Vec<(String, usize, usize)>> = vec![];
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap();
            if line.trim().is_empty() {
                continue;
            }
            let colon = line.find(':').ok_or_else(|| Error::Parse {
                line: ln + 1,
                column: 1,
                message: "expected `vertex: neighbours`".into(),
            })?;
            let head = line[..colon].trim();
            let head_col = line.find(|c: char| !c.is_whitespace()).unwrap() + 1;
            if !valid_label(head) {
                return Err(Error::Parse {
                    line: ln + 1,
                    column: head_col,
                    message: format!("bad vertex label {head:?}"),
                });
            }
            if heads.iter().any(|(h, _, _)| h == head) {
                return Err(Error::Parse {
                    line: ln + 1,
                    column: head_col,
                    message: format!("vertex {head} listed twice"),
                });
            }
            let mut nbrs = vec![];
            let rest = &line[colon + 1..];
            let mut offset = colon + 1;
            for tok in rest.split_whitespace() {
                let at = line[offset..].find(tok).unwrap() + offset;
                offset = at + tok.len();
                if !valid_label(tok) {
                    return Err(Error::Parse {
                        line: ln + 1,
                        column: at + 1,
                        message: format!("bad vertex label {tok:?}"),
                    });
                }
                if tok == head {
                    return Err(Error::Parse {
                        line: ln + 1,
                        column: at + 1,
                        message: format!("loop at {tok}"),
                    });
                }
                nbrs.push((tok.to_string(), ln + 1, at + 1));
            }
            heads.push((head.to_string(), ln + 1, head_col));
            lists.push(nbrs);
        }
        let mut labels: Vec<String> = heads.iter().map(|h| h.0.clone()).collect();
        let listed = labels.len();
        let mut pos: HashMap<String, usize> =
            labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        for nbrs in &lists {
            for (tok, _, _) in nbrs {
                if !pos.contains_key(tok) {
                    pos.insert(tok.clone(), labels.len());
                    labels.push(tok.clone());
                }
            }
        }
        if labels.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices(labels.len()));
        }
        let mut adj = vec![VertexSet::EMPTY; labels.len()];
        for (u, nbrs) in lists.iter().enumerate() {
            for (tok, _, _) in nbrs {
                adj[u].insert(pos[tok]);
            }
        }
        for (u, nbrs) in lists.iter().enumerate() {
            for (tok, line, column) in nbrs {
                let v = pos[tok];
                if v < listed && !adj[v].contains(u) {
                    return Err(Error::Parse {
                        line: *line,
                        column: *column,
                        message: format!(
                            "asymmetric adjacency: {} lists {} but not conversely",
                            labels[u], labels[v]
                        ),
                    });
                }
            }
        }
        let mut edges = vec![];
        for (u, a) in adj.iter().enumerate() {
            for v in a.iter() {
                edges.push((u, v));
            }
        }
        Graph::from_edges(labels, &edges)
    }

    /// Text format accepted by [`Graph::parse`].
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for v in 0..self.n() {
            s.push_str(&self.labels[v]);
            s.push(':');
            for w in self.adj[v].iter() {
                s.push(' ');
                s.push_str(&self.labels[w]);
            }
            s.push('\n');
        }
        s
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n");
        for l in &self.labels {
            s.push_str(&format!("  \"{l}\";\n"));
        }
        for (u, v) in self.edges() {
            s.push_str(&format!("  \"{}\" -- \"{}\";\n", self.labels[u], self.labels[v]));
        }
        s.push_str("}\n");
        s
    }
}

/// Shortest cycle length in a graph given by adjacency lists.
pub(crate) fn girth_of_lists(adj: &[Vec<usize>]) -> Option<usize> {
    let n = adj.len();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut touched = vec![];
    for root in 0..n {
        for &t in &touched {
            dist[t] = usize::MAX;
        }
        touched.clear();
        dist[root] = 0;
        touched.push(root);
        let mut queue = VecDeque::from([root]);
        'bfs: while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for &w in &adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    touched.push(w);
                    queue.push_back(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                    if best == 3 {
                        break 'bfs;
                    }
                }
            }
        }
        if best == 3 {
            break;
        }
    }
    (best != usize::MAX).then_some(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c5() -> Graph {
        Graph::cycle(5)
    }

    #[test]
    fn links_and_stars() {
        let g = c5();
        assert_eq!(g.set_labels(g.link(0)), ["b", "e"]);
        assert_eq!(g.set_labels(g.star(0)), ["a", "b", "e"]);
        let p4 = Graph::path(4);
        assert_eq!(p4.set_labels(p4.link(1)), ["a", "c"]);
        assert_eq!(p4.set_labels(p4.star(1)), ["a", "b", "c"]);
        assert!(Graph::discrete(1).link(0).is_empty());
        assert_eq!(Graph::discrete(3).star(2), VertexSet::singleton(2));
    }

    #[test]
    fn c5_is_self_complementary() {
        let g = c5();
        let opp = g.opposite();
        // a-c-e-b-d-a
        let perm = [0usize, 2, 4, 1, 3];
        let found = (0..5).any(|r| {
            [false, true].iter().any(|&refl| {
                let map = |i: usize| {
                    let j = if refl { (5 - i) % 5 } else { i };
                    perm[(j + r) % 5]
                };
                g.edges().iter().all(|&(u, v)| opp.adjacent(map(u), map(v)))
            })
        });
        assert!(found);
        assert_eq!(Graph::complete(3).opposite(), Graph::discrete(3));
        assert_eq!(Graph::discrete(2).opposite(), Graph::path(2));
    }

    #[test]
    fn join_splits() {
        let c4 = Graph::cycle(4);
        let (a, b) = c4.split_join(c4.vertices()).unwrap().unwrap();
        assert_eq!(c4.set_labels(a), ["a", "c"]);
        assert_eq!(c4.set_labels(b), ["b", "d"]);
        assert!(c5().split_join(c5().vertices()).unwrap().is_none());
        let p4 = Graph::path(4);
        let (a, b) = p4
            .split_join(p4.set_of(&["a", "b", "c"]).unwrap())
            .unwrap()
            .unwrap();
        let mut sides = [p4.set_labels(a), p4.set_labels(b)];
        sides.sort();
        assert_eq!(sides[0], ["a", "c"]);
        assert_eq!(sides[1], ["b"]);
        assert!(p4.split_join(VertexSet(1 << 9)).is_err());
    }

    #[test]
    fn girths() {
        assert_eq!(c5().girth(), Some(5));
        assert_eq!(Graph::path(4).girth(), None);
        let chord = Graph::from_labels(
            &["a", "b", "c", "d", "e"],
            &[
                ("a", "b"),
                ("b", "c"),
                ("c", "d"),
                ("d", "e"),
                ("e", "a"),
                ("a", "c"),
            ],
        )
        .unwrap();
        assert_eq!(chord.girth(), Some(3));
        assert_eq!(Graph::cycle(7).girth(), Some(7));
    }

    #[test]
    fn clique_graphs() {
        let (k, _) = Graph::path(2).clique_graph().unwrap();
        assert_eq!(k.n(), 3);
        assert_eq!(k.edge_count(), 3);
        let (k, _) = Graph::discrete(2).clique_graph().unwrap();
        assert_eq!((k.n(), k.edge_count()), (2, 0));
        let (k, _) = Graph::path(3).clique_graph().unwrap();
        assert_eq!(k.n(), 5);
        assert!(!k.adjacent(k.vertex("a+b").unwrap(), k.vertex("b+c").unwrap()));
        assert!(k.adjacent(k.vertex("a").unwrap(), k.vertex("a+b").unwrap()));
        assert_eq!(k.edge_count(), 6);
    }

    #[test]
    fn predicates() {
        let g = c5();
        assert!(g.is_triangle_free() && g.is_square_free() && g.is_connected() && g.is_anti_connected());
        assert!(!Graph::cycle(4).is_square_free());
        let k3 = Graph::complete(3);
        assert!(!k3.is_triangle_free());
        assert!(!k3.is_anti_connected());
    }

    #[test]
    fn parse_round_trip_and_errors() {
        let g = Graph::parse("a: b e\nb: a c\nc: b d\nd: c e\ne: d a\n").unwrap();
        assert_eq!(g, c5());
        assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
        // neighbour-only vertices get closure
        let p = Graph::parse("b: a c\n").unwrap();
        assert_eq!(p.labels(), ["b", "a", "c"]);
        assert_eq!(p.edge_count(), 2);
        match Graph::parse("a: b\nb: c\nc:\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 4)),
            other => panic!("{other:?}"),
        }
        match Graph::parse("a: b\nnocolon\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(Graph::parse("a: a\n").is_err());
    }

    #[test]
    fn paths_prefer_small_vertices() {
        let g = c5();
        assert_eq!(g.shortest_path(0, 2).unwrap(), vec![0, 1, 2]);
        assert_eq!(g.diameter(), Some(2));
        assert_eq!(Graph::path(4).diameter(), Some(3));
    }
}
