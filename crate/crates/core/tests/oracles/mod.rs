//! Slow, definition-level reimplementations used to cross-check the library.
//! They share no code with it beyond group multiplication where noted.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use raag_core::{Element, Graph, Letter, Raag, VertexSet};

/// Letter codes as in [`Letter::code`]: `2 v + positive`.
pub type Code = u8;

fn vertex(c: Code) -> usize {
    (c >> 1) as usize
}

fn inverse(c: Code) -> Code {
    c ^ 1
}

/// Up to 15 letters of 4 bits, first letter in the highest slot and the
/// length in the top nibble, so numeric order is (length, lexicographic).
fn pack(w: &[Code]) -> u64 {
    let mut p = (w.len() as u64) << 60;
    for (i, &c) in w.iter().enumerate() {
        p |= (c as u64) << slot(i);
    }
    p
}

fn slot(i: usize) -> usize {
    56 - 4 * i
}

fn at(p: u64, i: usize) -> Code {
    ((p >> slot(i)) & 15) as Code
}

fn unpack(p: u64) -> Vec<Code> {
    let n = (p >> 60) as usize;
    (0..n).map(|i| at(p, i)).collect()
}

pub fn codes(w: &[Letter]) -> Vec<Code> {
    w.iter().map(|l| l.code() as Code).collect()
}

/// Every word reachable from `w` by swapping adjacent commuting letters and
/// deleting adjacent inverse pairs; returns the shortest, lexicographically
/// least. Requires at most 8 vertices and 15 letters.
pub fn closure_min(g: &Graph, w: &[Code]) -> Vec<Code> {
    assert!(g.n() <= 8 && w.len() <= 15);
    let start = pack(w);
    let mut seen: HashSet<u64> = HashSet::from([start]);
    let mut queue = vec![start];
    let mut best = start;
    while let Some(p) = queue.pop() {
        best = best.min(p);
        let n = (p >> 60) as usize;
        for i in 0..n.saturating_sub(1) {
            let (a, b) = (at(p, i), at(p, i + 1));
            let next = if a == inverse(b) {
                let mut v = unpack(p);
                v.drain(i..i + 2);
                pack(&v)
            } else if vertex(a) != vertex(b) && g.adjacent(vertex(a), vertex(b)) {
                let clear = p & !(0xFFu64 << slot(i + 1));
                clear | ((b as u64) << slot(i)) | ((a as u64) << slot(i + 1))
            } else {
                continue;
            };
            if seen.insert(next) {
                queue.push(next);
            }
        }
    }
    unpack(best)
}

/// Letters of a reduced word that can be moved to its front.
fn movable_first(g: &Graph, w: &[Letter]) -> Vec<Letter> {
    let mut out = vec![];
    for (i, &l) in w.iter().enumerate() {
        let free = w[..i]
            .iter()
            .all(|m| m.vertex() != l.vertex() && g.adjacent(m.vertex(), l.vertex()));
        if free && !out.contains(&l) {
            out.push(l);
        }
    }
    out
}

/// All prefixes of `h` (lengths adding) whose support lies in `a`.
pub fn prefixes_in(raag: &Raag, h: &Element, a: VertexSet) -> Vec<Element> {
    let mut seen: HashSet<Element> = HashSet::from([Element::identity()]);
    let mut stack = vec![Element::identity()];
    while let Some(p) = stack.pop() {
        let rest = raag.mul(&raag.inv(&p), h);
        for l in movable_first(raag.graph(), rest.letters()) {
            if a.contains(l.vertex()) {
                let q = raag.mul(&p, &raag.reduce(&[l]));
                if seen.insert(q.clone()) {
                    stack.push(q);
                }
            }
        }
    }
    let mut v: Vec<Element> = seen.into_iter().collect();
    v.sort();
    v
}

/// All prefixes of `h`.
pub fn prefixes(raag: &Raag, h: &Element) -> Vec<Element> {
    prefixes_in(raag, h, raag.graph().vertices())
}

/// All suffixes of `h`.
pub fn suffixes(raag: &Raag, h: &Element) -> Vec<Element> {
    let mut v: Vec<Element> = prefixes(raag, &raag.inv(h)).iter().map(|p| raag.inv(p)).collect();
    v.sort();
    v
}

/// Fewest pieces when each step strips any nonempty prefix supported in one
/// of `pieces`: star length for stars, syllable length for single vertices.
pub struct PeelOracle<'a> {
    raag: &'a Raag,
    pieces: Vec<VertexSet>,
    memo: HashMap<Element, usize>,
}

impl<'a> PeelOracle<'a> {
    pub fn stars(raag: &'a Raag) -> Self {
        let g = raag.graph();
        PeelOracle {
            raag,
            pieces: (0..g.n()).map(|v| g.star(v)).collect(),
            memo: HashMap::new(),
        }
    }

    pub fn syllables(raag: &'a Raag) -> Self {
        PeelOracle {
            raag,
            pieces: (0..raag.graph().n()).map(VertexSet::singleton).collect(),
            memo: HashMap::new(),
        }
    }

    pub fn length(&mut self, h: &Element) -> usize {
        if h.is_identity() {
            return 0;
        }
        if let Some(&v) = self.memo.get(h) {
            return v;
        }
        let mut best = usize::MAX;
        for a in self.pieces.clone() {
            for p in prefixes_in(self.raag, h, a) {
                if !p.is_identity() {
                    let rest = self.raag.mul(&self.raag.inv(&p), h);
                    best = best.min(1 + self.length(&rest));
                }
            }
        }
        self.memo.insert(h.clone(), best);
        best
    }
}

/// Conjugates by single letters while that shortens the element.
pub fn cyclic_core(raag: &Raag, h: &Element) -> Element {
    let mut cur = h.clone();
    'outer: loop {
        for c in 0..2 * raag.graph().n() {
            let l = raag.reduce(&[Letter::from_code(c)]);
            let next = raag.conj(&cur, &l);
            if next.len() < cur.len() {
                cur = next;
                continue 'outer;
            }
        }
        return cur;
    }
}

/// Some superset of `s` induces a join.
pub fn in_subjoin(g: &Graph, s: VertexSet) -> bool {
    let n = g.n();
    for t in 0u64..1 << n {
        let t = VertexSet(t);
        if !s.is_subset(t) || t.len() < 2 {
            continue;
        }
        let first = t.first().unwrap();
        // Bipartitions with `first` on the left.
        let rest: Vec<usize> = t.iter().filter(|&v| v != first).collect();
        for mask in 0u64..(1 << rest.len()) - 1 {
            let mut left = VertexSet::singleton(first);
            for (i, &v) in rest.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    left.insert(v);
                }
            }
            let right = t.difference(left);
            if left.iter().all(|a| right.iter().all(|b| g.adjacent(a, b))) {
                return true;
            }
        }
    }
    false
}

/// Elliptic by brute-force subjoin search on the cyclic core.
pub fn is_elliptic(raag: &Raag, h: &Element) -> bool {
    let core = cyclic_core(raag, h);
    let s = core.support();
    !core.is_identity() && (s.len() == 1 || in_subjoin(raag.graph(), s))
}

/// Vertices `v` of `Γ` with `v^g` again a vertex of `Γ`.
pub fn copy_intersection(raag: &Raag, g: &Element) -> VertexSet {
    let n = raag.graph().n();
    (0..n)
        .filter(|&v| {
            let c = raag.conj(&raag.generator(v), g);
            (0..n).any(|u| c == raag.generator(u))
        })
        .collect()
}

/// Number of shortest paths from `src` to every vertex, with distances.
pub fn path_counts(adj: &[Vec<usize>], src: usize) -> Vec<Option<(usize, u64)>> {
    let mut out: Vec<Option<(usize, u64)>> = vec![None; adj.len()];
    out[src] = Some((0, 1));
    let mut q = VecDeque::from([src]);
    while let Some(u) = q.pop_front() {
        let (d, c) = out[u].unwrap();
        for &w in &adj[u] {
            match out[w] {
                None => {
                    out[w] = Some((d + 1, c));
                    q.push_back(w);
                }
                Some((dw, cw)) if dw == d + 1 => out[w] = Some((dw, cw + c)),
                _ => {}
            }
        }
    }
    out
}

/// Every element of word length at most `r`.
pub fn ball(raag: &Raag, r: usize) -> Vec<Element> {
    let mut seen: HashSet<Element> = HashSet::from([Element::identity()]);
    let mut layer = vec![Element::identity()];
    for _ in 0..r {
        let mut next = vec![];
        for e in &layer {
            for c in 0..2 * raag.graph().n() {
                let m = raag.mul(e, &raag.reduce(&[Letter::from_code(c)]));
                if seen.insert(m.clone()) {
                    next.push(m);
                }
            }
        }
        layer = next;
    }
    let mut v: Vec<Element> = seen.into_iter().collect();
    v.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    v
}

/// The graphs used throughout the exhaustive checks.
pub fn small_graphs() -> Vec<(&'static str, Graph)> {
    vec![
        ("C5", Graph::cycle(5)),
        ("P4", Graph::path(4)),
        ("P3", Graph::path(3)),
        ("C4", Graph::cycle(4)),
        ("discrete-3", Graph::discrete(3)),
    ]
}

/// Checks the library normal form against [`closure_min`] for every word of
/// length at most `max_len`, visiting each `(normal form, letter)` pair once.
/// Every word `w l` has the normal form of `nf(w) l`, so this covers all
/// words. Returns (pairs checked, mismatches).
pub fn normal_forms_agree(raag: &Raag, max_len: usize) -> (usize, usize) {
    let g = raag.graph();
    let letters = 2 * g.n();
    let mut seen: HashSet<u64> = HashSet::from([pack(&[])]);
    let mut layer: Vec<Vec<Code>> = vec![vec![]];
    let (mut checked, mut bad) = (0, 0);
    for _ in 0..max_len {
        let mut next = vec![];
        for nf in &layer {
            for c in 0..letters as Code {
                let mut w = nf.clone();
                w.push(c);
                let oracle = closure_min(g, &w);
                let lib: Vec<Letter> = w.iter().map(|&c| Letter::from_code(c as usize)).collect();
                let lib = codes(raag.reduce(&lib).letters());
                checked += 1;
                if lib != oracle {
                    bad += 1;
                }
                if seen.insert(pack(&oracle)) {
                    next.push(oracle);
                }
            }
        }
        layer = next;
    }
    (checked, bad)
}
