use std::collections::HashMap;
use std::fmt;
use std::num::NonZeroUsize;
use std::sync::{Arc, Mutex};

use lru::LruCache;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Default capacity of the star-length memo.
pub const DEFAULT_CACHE_ENTRIES: usize = 1 << 20;

/// Cap on memo entries for the exhaustive minimum-syllable search.
pub const EXHAUSTIVE_STATE_CAP: usize = 1 << 21;

/// A generator or its inverse. Letters order by vertex first, and the inverse
/// comes before the generator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u16);

impl Letter {
    pub fn new(vertex: usize, positive: bool) -> Self {
        Letter(((vertex as u16) << 1) | positive as u16)
    }

    pub fn pos(vertex: usize) -> Self {
        Letter::new(vertex, true)
    }

    pub fn neg(vertex: usize) -> Self {
        Letter::new(vertex, false)
    }

    pub fn vertex(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }

    /// Dense code in `0..2n`, handy for packing.
    pub fn code(self) -> usize {
        self.0 as usize
    }

    pub fn from_code(code: usize) -> Self {
        Letter(code as u16)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_positive() {
            write!(f, "{}", self.vertex())
        } else {
            write!(f, "{}'", self.vertex())
        }
    }
}

/// An element of the group, held as its canonical normal form: the
/// lexicographically least reduced word.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(Vec<Letter>);

impl Element {
    pub fn identity() -> Self {
        Element(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn support(&self) -> VertexSet {
        self.0.iter().map(|l| l.vertex()).collect()
    }

    /// Maximal runs of one vertex in the normal form, as (vertex, exponent).
    pub fn syllables(&self) -> Vec<(usize, i64)> {
        let mut out: Vec<(usize, i64)> = vec![];
        for l in &self.0 {
            let e = if l.is_positive() { 1 } else { -1 };
            match out.last_mut() {
                Some((v, k)) if *v == l.vertex() => *k += e,
                _ => out.push((l.vertex(), e)),
            }
        }
        out
    }

    pub fn syllable_length(&self) -> usize {
        let mut count = 0;
        let mut prev = usize::MAX;
        for l in &self.0 {
            if l.vertex() != prev {
                count += 1;
                prev = l.vertex();
            }
        }
        count
    }

    /// Largest absolute syllable exponent.
    pub fn max_exponent(&self) -> usize {
        self.syllables()
            .iter()
            .map(|s| s.1.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

fn dependent(g: &Graph, a: Letter, b: Letter) -> bool {
    a.vertex() == b.vertex() || !g.adjacent(a.vertex(), b.vertex())
}

/// Appends `l` to a reduced word, cancelling it against an inverse letter that
/// can be shuffled to the end.
pub(crate) fn push_reduced(g: &Graph, stack: &mut Vec<Letter>, l: Letter) {
    let lk = g.link(l.vertex());
    let mut i = stack.len();
    while i > 0 {
        i -= 1;
        let m = stack[i];
        if m.vertex() == l.vertex() {
            if m == l.inverse() {
                stack.remove(i);
                return;
            }
            break;
        }
        if !lk.contains(m.vertex()) {
            break;
        }
    }
    stack.push(l);
}

/// Lexicographically least rearrangement of a reduced word within its
/// commutation class.
pub(crate) fn canonical(g: &Graph, w: &[Letter]) -> Vec<Letter> {
    let n = w.len();
    if n <= 1 {
        return w.to_vec();
    }
    let mut indeg = vec![0u32; n];
    for j in 1..n {
        for i in 0..j {
            if dependent(g, w[i], w[j]) {
                indeg[j] += 1;
            }
        }
    }
    let mut done = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best = usize::MAX;
        for j in 0..n {
            if !done[j] && indeg[j] == 0 && (best == usize::MAX || w[j] < w[best]) {
                best = j;
            }
        }
        done[best] = true;
        out.push(w[best]);
        for j in best + 1..n {
            if !done[j] && dependent(g, w[best], w[j]) {
                indeg[j] -= 1;
            }
        }
    }
    out
}

/// Splits a reduced word into the maximal prefix supported in `a` and the
/// remaining letters, both as subsequences in their original order.
pub(crate) fn split_prefix(g: &Graph, w: &[Letter], a: VertexSet) -> (Vec<Letter>, Vec<Letter>) {
    let mut blockers = VertexSet::EMPTY;
    let (mut pre, mut rest) = (vec![], vec![]);
    for &l in w {
        let x = l.vertex();
        if a.contains(x) && blockers.is_subset(g.link(x)) {
            pre.push(l);
        } else {
            blockers.insert(x);
            rest.push(l);
        }
    }
    (pre, rest)
}

/// Mirror of [`split_prefix`]: (remaining letters, maximal suffix in `a`).
pub(crate) fn split_suffix(g: &Graph, w: &[Letter], a: VertexSet) -> (Vec<Letter>, Vec<Letter>) {
    let mut blockers = VertexSet::EMPTY;
    let (mut suf, mut rest) = (vec![], vec![]);
    for &l in w.iter().rev() {
        let x = l.vertex();
        if a.contains(x) && blockers.is_subset(g.link(x)) {
            suf.push(l);
        } else {
            blockers.insert(x);
            rest.push(l);
        }
    }
    suf.reverse();
    rest.reverse();
    (rest, suf)
}

/// Bitset over letter positions of a fixed word.
type Bits = Box<[u64]>;

fn bits_new(n: usize) -> Bits {
    vec![0u64; n.div_ceil(64).max(1)].into_boxed_slice()
}

fn bit(b: &[u64], i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn set_bit(b: &mut [u64], i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn bits_count(b: &[u64]) -> usize {
    b.iter().map(|x| x.count_ones() as usize).sum()
}

fn bits_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn bits_union(a: &[u64], b: &[u64]) -> Bits {
    a.iter().zip(b).map(|(x, y)| x | y).collect()
}

/// Maximal prefix, among the letters of `w` not yet removed, supported in `a`.
fn max_prefix_bits(g: &Graph, w: &[Letter], removed: &[u64], a: VertexSet) -> Bits {
    let mut out = bits_new(w.len());
    let mut blockers = VertexSet::EMPTY;
    for (i, l) in w.iter().enumerate() {
        if bit(removed, i) {
            continue;
        }
        let x = l.vertex();
        if a.contains(x) && blockers.is_subset(g.link(x)) {
            set_bit(&mut out, i);
        } else {
            blockers.insert(x);
        }
    }
    out
}

fn letters_of(w: &[Letter], b: &[u64]) -> Vec<Letter> {
    w.iter()
        .enumerate()
        .filter(|(i, _)| bit(b, *i))
        .map(|(_, &l)| l)
        .collect()
}

/// A star factorization `target = factors[0] * factors[1] * ...`, each factor
/// supported in the star of its vertex. Factors are kept in left-to-right
/// product order, so the last entry is the factor applied first to the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<(usize, Element)>,
    pub target: Element,
}

impl Factorization {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Checks supports and that the product is the target.
    pub fn validate(&self, raag: &Raag) -> Result<()> {
        let mut prod = Element::identity();
        for (v, h) in &self.factors {
            if !h.support().is_subset(raag.graph().star(*v)) {
                return Err(Error::Invalid(format!(
                    "factor {} not supported in the star of {}",
                    raag.format(h),
                    raag.graph().label(*v)
                )));
            }
            prod = raag.mul(&prod, h);
        }
        if prod != self.target {
            return Err(Error::Invalid("factor product differs from target".into()));
        }
        Ok(())
    }

    /// Total syllable count of the factors.
    pub fn syllable_sum(&self) -> usize {
        self.factors.iter().map(|(_, h)| h.syllable_length()).sum()
    }
}

#[derive(Serialize)]
pub struct FactorizationReport {
    pub target: String,
    pub factors: Vec<(String, String)>,
}

/// The right-angled Artin group of a graph: every element operation goes
/// through here.
pub struct Raag {
    graph: Arc<Graph>,
    star_cache: Mutex<LruCache<Element, u32>>,
}

impl Clone for Raag {
    fn clone(&self) -> Self {
        Raag::from_arc(self.graph.clone())
    }
}

impl fmt::Debug for Raag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Raag({:?})", self.graph)
    }
}

impl Raag {
    pub fn new(graph: Graph) -> Self {
        Raag::from_arc(Arc::new(graph))
    }

    pub fn from_arc(graph: Arc<Graph>) -> Self {
        Raag::with_cache(graph, DEFAULT_CACHE_ENTRIES)
    }

    pub fn with_cache(graph: Arc<Graph>, entries: usize) -> Self {
        let cap = NonZeroUsize::new(entries.max(1)).unwrap();
        Raag {
            graph,
            star_cache: Mutex::new(LruCache::new(cap)),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn graph_arc(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn generator(&self, v: usize) -> Element {
        Element(vec![Letter::pos(v)])
    }

    /// Validates letters against the graph, then reduces.
    pub fn element(&self, w: &[Letter]) -> Result<Element> {
        if let Some(l) = w.iter().find(|l| l.vertex() >= self.graph.n()) {
            return Err(Error::UnknownVertex(format!("#{}", l.vertex())));
        }
        Ok(self.reduce(w))
    }

    /// Canonical normal form of an arbitrary word over the graph's vertices.
    pub fn reduce(&self, w: &[Letter]) -> Element {
        let mut stack = Vec::with_capacity(w.len());
        for &l in w {
            push_reduced(&self.graph, &mut stack, l);
        }
        Element(canonical(&self.graph, &stack))
    }

    /// Wraps letters already known to be reduced.
    pub(crate) fn from_reduced(&self, w: &[Letter]) -> Element {
        Element(canonical(&self.graph, w))
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        if a.is_identity() {
            return b.clone();
        }
        if b.is_identity() {
            return a.clone();
        }
        let mut stack = Vec::with_capacity(a.len() + b.len());
        stack.extend_from_slice(&a.0);
        for &l in &b.0 {
            push_reduced(&self.graph, &mut stack, l);
        }
        Element(canonical(&self.graph, &stack))
    }

    pub fn mul_all<'a>(&self, items: impl IntoIterator<Item = &'a Element>) -> Element {
        items
            .into_iter()
            .fold(Element::identity(), |acc, x| self.mul(&acc, x))
    }

    pub fn inv(&self, a: &Element) -> Element {
        let w: Vec<Letter> = a.0.iter().rev().map(|l| l.inverse()).collect();
        Element(canonical(&self.graph, &w))
    }

    pub fn pow(&self, a: &Element, n: i64) -> Element {
        let mut base = if n < 0 { self.inv(a) } else { a.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = Element::identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `h^-1 g h`, the right conjugation action.
    pub fn conj(&self, g: &Element, h: &Element) -> Element {
        self.mul(&self.mul(&self.inv(h), g), h)
    }

    pub fn commutator(&self, g: &Element, h: &Element) -> Element {
        let gh = self.mul(g, h);
        let hg = self.mul(h, g);
        self.mul(&gh, &self.inv(&hg))
    }

    pub fn commutes(&self, g: &Element, h: &Element) -> bool {
        self.commutator(g, h).is_identity()
    }

    pub fn word_length(&self, g: &Element) -> usize {
        g.len()
    }

    pub fn support(&self, g: &Element) -> VertexSet {
        g.support()
    }

    /// Maximal prefix supported in `a`.
    pub fn iota(&self, g: &Element, a: VertexSet) -> Element {
        self.from_reduced(&split_prefix(&self.graph, &g.0, a).0)
    }

    /// Maximal suffix supported in `a`.
    pub fn tau(&self, g: &Element, a: VertexSet) -> Element {
        self.from_reduced(&split_suffix(&self.graph, &g.0, a).1)
    }

    /// `(iota(g, a), iota(g, a)^-1 g)`.
    pub fn split_iota(&self, g: &Element, a: VertexSet) -> (Element, Element) {
        let (p, r) = split_prefix(&self.graph, &g.0, a);
        (self.from_reduced(&p), self.from_reduced(&r))
    }

    /// `(g tau(g, a)^-1, tau(g, a))`.
    pub fn split_tau(&self, g: &Element, a: VertexSet) -> (Element, Element) {
        let (r, s) = split_suffix(&self.graph, &g.0, a);
        (self.from_reduced(&r), self.from_reduced(&s))
    }

    /// Conjugates away letter pairs `x ... x^-1` that sit simultaneously at the
    /// front and back, smallest vertex first. Returns `(core, c)` with
    /// `g = c core c^-1`.
    pub fn cyclic_reduce(&self, g: &Element) -> (Element, Element) {
        let gr = &*self.graph;
        let mut core = g.0.clone();
        let mut conj: Vec<Letter> = vec![];
        'outer: loop {
            for x in core.iter().map(|l| l.vertex()).collect::<VertexSet>().iter() {
                let only = VertexSet::singleton(x);
                let front = front_position(gr, &core, only);
                let back = back_position(gr, &core, only);
                if let (Some(i), Some(j)) = (front, back) {
                    if core[i] == core[j].inverse() {
                        let l = core[i];
                        core = core
                            .iter()
                            .enumerate()
                            .filter(|&(k, _)| k != i && k != j)
                            .map(|(_, &m)| m)
                            .collect();
                        conj.push(l);
                        continue 'outer;
                    }
                }
            }
            break;
        }
        let mut c = vec![];
        for l in conj {
            push_reduced(gr, &mut c, l);
        }
        (Element(canonical(gr, &core)), Element(canonical(gr, &c)))
    }

    pub fn is_cyclically_reduced(&self, g: &Element) -> bool {
        self.cyclic_reduce(g).1.is_identity()
    }

    pub fn syllable_length(&self, g: &Element) -> usize {
        g.syllable_length()
    }

    /// Exact star length by breadth-first search over the letters already
    /// peeled off. Each step removes, for some vertex `v`, the maximal prefix
    /// supported in `st(v)`; prefixes contained in another candidate of the
    /// same state are skipped.
    pub fn star_length(&self, g: &Element) -> usize {
        if g.is_identity() {
            return 0;
        }
        if let Some(&v) = self.star_cache.lock().unwrap().get(g) {
            return v as usize;
        }
        let f = self.star_factorization(g);
        f.len()
    }

    /// A shortest star factorization. Its factors never split a syllable of
    /// `g`, so their syllable lengths add up to that of `g`.
    pub fn star_factorization(&self, g: &Element) -> Factorization {
        let gr = &*self.graph;
        let w = &g.0;
        let n = w.len();
        if n == 0 {
            return Factorization {
                factors: vec![],
                target: g.clone(),
            };
        }
        let mut full = bits_new(n);
        for i in 0..n {
            set_bit(&mut full, i);
        }
        let stars: Vec<VertexSet> = (0..gr.n()).map(|v| gr.star(v)).collect();
        // state -> (parent state, vertex, prefix bits)
        let mut parent: HashMap<Bits, (Bits, usize, Bits)> = HashMap::new();
        let start = bits_new(n);
        let mut frontier = vec![start.clone()];
        let mut finish: Option<(Bits, usize, Bits)> = None;
        'search: while finish.is_none() {
            let mut next = vec![];
            for s in &frontier {
                let mut cands: Vec<(usize, Bits, usize)> = vec![];
                for (v, &st) in stars.iter().enumerate() {
                    let p = max_prefix_bits(gr, w, s, st);
                    let c = bits_count(&p);
                    if c > 0 {
                        cands.push((v, p, c));
                    }
                }
                cands.sort_by(|a, b| b.2.cmp(&a.2).then(a.0.cmp(&b.0)));
                let mut kept: Vec<&Bits> = vec![];
                for (v, p, _) in &cands {
                    if kept.iter().any(|k| bits_subset(p, k)) {
                        continue;
                    }
                    kept.push(p);
                    let ns = bits_union(s, p);
                    if ns == full {
                        finish = Some((s.clone(), *v, p.clone()));
                        break 'search;
                    }
                    if ns != start && !parent.contains_key(&ns) {
                        parent.insert(ns.clone(), (s.clone(), *v, p.clone()));
                        next.push(ns);
                    }
                }
            }
            frontier = next;
        }
        let (mut state, v, p) = finish.unwrap();
        let mut factors = vec![(v, self.from_reduced(&letters_of(w, &p)))];
        while state != start {
            let (prev, v, p) = parent[&state].clone();
            factors.push((v, self.from_reduced(&letters_of(w, &p))));
            state = prev;
        }
        factors.reverse();
        let len = factors.len() as u32;
        self.star_cache.lock().unwrap().put(g.clone(), len);
        Factorization {
            factors,
            target: g.clone(),
        }
    }

    /// Minimum total syllable length over reduced star factorizations with
    /// exactly `star_length(g)` factors, by exhaustive search over every
    /// star-supported prefix (not only maximal ones).
    pub fn syllable_via_star(&self, g: &Element) -> Result<usize> {
        let r = self.star_length(g);
        if r == 0 {
            return Ok(0);
        }
        let gr = &*self.graph;
        let w = &g.0;
        let n = w.len();
        let mut full = bits_new(n);
        for i in 0..n {
            set_bit(&mut full, i);
        }
        let mut memo: HashMap<(Bits, usize), Option<usize>> = HashMap::new();
        let best = min_syllables(self, gr, w, &full, bits_new(n), r, &mut memo)?;
        best.ok_or_else(|| Error::Invalid("no factorization of star length".into()))
    }

    /// Parses whitespace-separated tokens `a`, `a^-1`, `a^3`; `1` denotes the
    /// identity unless it names a vertex.
    pub fn parse_word(&self, s: &str) -> Result<Vec<Letter>> {
        parse_word(&self.graph, s)
    }

    pub fn parse(&self, s: &str) -> Result<Element> {
        Ok(self.reduce(&self.parse_word(s)?))
    }

    /// Prints in the syntax accepted by [`Raag::parse`].
    pub fn format(&self, g: &Element) -> String {
        format_letters(&self.graph, &g.0)
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        format_letters(&self.graph, w)
    }

    pub fn factorization_report(&self, f: &Factorization) -> FactorizationReport {
        FactorizationReport {
            target: self.format(&f.target),
            factors: f
                .factors
                .iter()
                .map(|(v, h)| (self.graph.label(*v).to_string(), self.format(h)))
                .collect(),
        }
    }
}

fn front_position(g: &Graph, w: &[Letter], a: VertexSet) -> Option<usize> {
    let mut blockers = VertexSet::EMPTY;
    for (i, l) in w.iter().enumerate() {
        let x = l.vertex();
        if a.contains(x) && blockers.is_subset(g.link(x)) {
            return Some(i);
        }
        blockers.insert(x);
    }
    None
}

fn back_position(g: &Graph, w: &[Letter], a: VertexSet) -> Option<usize> {
    let mut blockers = VertexSet::EMPTY;
    for (i, l) in w.iter().enumerate().rev() {
        let x = l.vertex();
        if a.contains(x) && blockers.is_subset(g.link(x)) {
            return Some(i);
        }
        blockers.insert(x);
    }
    None
}

fn min_syllables(
    raag: &Raag,
    g: &Graph,
    w: &[Letter],
    full: &[u64],
    state: Bits,
    k: usize,
    memo: &mut HashMap<(Bits, usize), Option<usize>>,
) -> Result<Option<usize>> {
    if &*state == full {
        return Ok((k == 0).then_some(0));
    }
    if k == 0 {
        return Ok(None);
    }
    let key = (state, k);
    if let Some(&v) = memo.get(&key) {
        return Ok(v);
    }
    if memo.len() >= EXHAUSTIVE_STATE_CAP {
        return Err(Error::CapExceeded {
            what: "exhaustive syllable search states",
            cap: EXHAUSTIVE_STATE_CAP,
        });
    }
    let state = &key.0;
    let mut seen: std::collections::HashSet<Bits> = Default::default();
    let mut best: Option<usize> = None;
    for v in 0..g.n() {
        let m = max_prefix_bits(g, w, state, g.star(v));
        let idx: Vec<usize> = (0..w.len()).filter(|&i| bit(&m, i)).collect();
        let mut subsets = vec![];
        down_sets(
            g,
            w,
            &idx,
            0,
            VertexSet::EMPTY,
            &mut bits_new(w.len()),
            &mut subsets,
        );
        for d in subsets {
            if bits_count(&d) == 0 || !seen.insert(d.clone()) {
                continue;
            }
            let cost = raag.from_reduced(&letters_of(w, &d)).syllable_length();
            if let Some(rest) = min_syllables(raag, g, w, full, bits_union(state, &d), k - 1, memo)? {
                best = Some(best.map_or(cost + rest, |b: usize| b.min(cost + rest)));
            }
        }
    }
    memo.insert(key, best);
    Ok(best)
}

/// All subsets of the positions `idx` closed under earlier dependent letters.
fn down_sets(
    g: &Graph,
    w: &[Letter],
    idx: &[usize],
    at: usize,
    excluded: VertexSet,
    cur: &mut Bits,
    out: &mut Vec<Bits>,
) {
    if at == idx.len() {
        out.push(cur.clone());
        return;
    }
    let i = idx[at];
    let x = w[i].vertex();
    if excluded.is_subset(g.link(x)) {
        set_bit(cur, i);
        down_sets(g, w, idx, at + 1, excluded, cur, out);
        cur[i / 64] &= !(1 << (i % 64));
    }
    down_sets(g, w, idx, at + 1, excluded.with(x), cur, out);
}

pub(crate) fn parse_word(g: &Graph, s: &str) -> Result<Vec<Letter>> {
    let mut out = vec![];
    let mut offset = 0;
    for tok in s.split_whitespace() {
        let at = s[offset..].find(tok).unwrap() + offset;
        offset = at + tok.len();
        let err = |column: usize, message: String| Error::Parse {
            line: 1,
            column,
            message,
        };
        let (name, exp) = match tok.split_once('^') {
            Some((n, e)) => {
                let k: i64 = e
                    .parse()
                    .map_err(|_| err(at + n.len() + 2, format!("bad exponent {e:?}")))?;
                (n, k)
            }
            None => (tok, 1),
        };
        let v = match g.vertex(name) {
            Ok(v) => v,
            Err(_) if name == "1" => continue,
            Err(_) => return Err(err(at + 1, format!("unknown vertex {name:?}"))),
        };
        let l = Letter::new(v, exp > 0);
        for _ in 0..exp.unsigned_abs() {
            out.push(l);
        }
    }
    Ok(out)
}

pub(crate) fn format_letters(g: &Graph, w: &[Letter]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let mut parts = vec![];
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        let k = (j - i) as i64 * if w[i].is_positive() { 1 } else { -1 };
        let name = g.label(w[i].vertex());
        parts.push(if k == 1 {
            name.to_string()
        } else {
            format!("{name}^{k}")
        });
        i = j;
    }
    parts.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(r: &Raag, s: &str) -> Element {
        r.parse(s).unwrap()
    }

    #[test]
    fn reduction_examples() {
        let c5 = Raag::new(Graph::cycle(5));
        assert!(p(&c5, "a a^-1").is_identity());
        assert_eq!(p(&c5, "b a b^-1"), p(&c5, "a"));
        let p4 = Raag::new(Graph::path(4));
        assert_eq!(c5.format(&p(&c5, "b a")), "a b");
        assert_eq!(p4.format(&p(&p4, "c a")), "c a");
        // a b a = a^2 b
        assert_eq!(p(&p4, "a b a").len(), 3);
        assert_eq!(p4.format(&p(&p4, "b a b")), "a b^2");
    }

    #[test]
    fn word_syntax_round_trips() {
        let c5 = Raag::new(Graph::cycle(5));
        for s in ["1", "a^3 c^-2 b", "c a^-1 c", "e^2 d"] {
            let g = p(&c5, s);
            assert_eq!(p(&c5, &c5.format(&g)), g);
        }
        assert!(matches!(c5.parse("a q"), Err(Error::Parse { column: 3, .. })));
        assert!(c5.parse("a^x").is_err());
    }

    #[test]
    fn supports_and_lengths() {
        let p4 = Raag::new(Graph::path(4));
        assert_eq!(
            p(&p4, "a^2 b^-1").support(),
            p4.graph().set_of(&["a", "b"]).unwrap()
        );
        let g = p(&p4, "a c a^-1");
        assert_eq!(g.syllable_length(), 3);
        // a and c both lie in the star of b
        assert_eq!(p4.star_length(&g), 1);
        assert_eq!(p4.star_length(&p(&p4, "a d")), 2);
        assert_eq!(p(&p4, "a^5").syllable_length(), 1);
    }

    #[test]
    fn iota_tau_examples() {
        let c5 = Raag::new(Graph::cycle(5));
        let g = p(&c5, "c a b");
        let ab = c5.graph().set_of(&["a", "b"]).unwrap();
        assert_eq!(c5.iota(&g, ab), p(&c5, "b"));
        assert_eq!(c5.iota(&g, g.support()), g);
        assert!(c5.iota(&g, VertexSet::EMPTY).is_identity());
        assert_eq!(c5.tau(&g, ab), p(&c5, "a b"));
    }

    #[test]
    fn cyclic_reduction_examples() {
        let p4 = Raag::new(Graph::path(4));
        let (core, c) = p4.cyclic_reduce(&p(&p4, "a b a^-1"));
        assert_eq!((core, c), (p(&p4, "b"), Element::identity()));
        let (core, c) = p4.cyclic_reduce(&p(&p4, "a c a^-1"));
        assert_eq!((core, c), (p(&p4, "c"), p(&p4, "a")));
    }

    #[test]
    fn star_lengths() {
        let c5 = Raag::new(Graph::cycle(5));
        assert_eq!(c5.star_length(&p(&c5, "a b^3 e")), 1);
        assert_eq!(c5.star_length(&Element::identity()), 0);
        let g = p(&c5, "a c e b d");
        let f = c5.star_factorization(&g);
        f.validate(&c5).unwrap();
        assert!(f.len() >= 2);
        assert_eq!(f.syllable_sum(), g.syllable_length());
        assert_eq!(c5.syllable_via_star(&g).unwrap(), g.syllable_length());
    }

    #[test]
    fn commuting_pairs() {
        let p4 = Raag::new(Graph::path(4));
        let g = p(&p4, "a c d");
        assert!(p4.commutes(&g, &p4.inv(&g)));
        assert!(p4.commutes(&p(&p4, "a"), &p(&p4, "b")));
        assert!(!p4.commutes(&p(&p4, "a"), &p(&p4, "c")));
    }

    #[test]
    fn powers() {
        let c5 = Raag::new(Graph::cycle(5));
        let g = p(&c5, "a c");
        assert_eq!(c5.pow(&g, 3), p(&c5, "a c a c a c"));
        assert_eq!(c5.pow(&g, -2), p(&c5, "c^-1 a^-1 c^-1 a^-1"));
        assert!(c5.pow(&g, 0).is_identity());
    }
}
