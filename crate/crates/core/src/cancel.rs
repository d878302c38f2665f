//! How a short element `g` gets absorbed by long `x` and `y` in `x g y`, and
//! the resulting cardinality bound for `B_s ∩ x^-1 B_t y^-1`.

use std::collections::HashSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::word::{Element, Letter, Raag};

/// `g = g_1 ⋯ g_s h_1 ⋯ h_s` where `x = x' w g_s^-1 ⋯ g_1^-1` and
/// `y = h_s^-1 ⋯ h_1^-1 w^-1 y'`, both with additive word lengths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CancellationSequence {
    pub x: Element,
    pub y: Element,
    pub vertices: Vec<usize>,
    pub g_parts: Vec<Element>,
    pub h_parts: Vec<Element>,
    pub x_rest: Element,
    pub w: Element,
    pub y_rest: Element,
}

/// For each position of `word`, the position of the letter it cancels
/// against when the word is reduced left to right.
fn cancellation_partners(gr: &Graph, word: &[Letter]) -> Vec<Option<usize>> {
    let mut stack: Vec<usize> = vec![];
    let mut partner = vec![None; word.len()];
    for (j, &l) in word.iter().enumerate() {
        let lk = gr.link(l.vertex());
        let mut hit = None;
        for (pos, &i) in stack.iter().enumerate().rev() {
            let m = word[i];
            if m.vertex() == l.vertex() {
                if m == l.inverse() {
                    hit = Some(pos);
                }
                break;
            }
            if !lk.contains(m.vertex()) {
                break;
            }
        }
        match hit {
            Some(pos) => {
                let i = stack.remove(pos);
                partner[i] = Some(j);
                partner[j] = Some(i);
            }
            None => stack.push(j),
        }
    }
    partner
}

fn lengths(parts: &[Element]) -> usize {
    parts.iter().map(Element::len).sum()
}

impl CancellationSequence {
    pub fn s(&self) -> usize {
        self.vertices.len()
    }

    /// Fills in `x'`, `w`, `y'` for the given parts, with `w` the largest
    /// overlap cancelling between what remains of `x` and of `y`. `None` if
    /// the parts do not peel off `x` and `y` with additive lengths.
    pub fn assemble(
        raag: &Raag,
        x: &Element,
        y: &Element,
        vertices: Vec<usize>,
        g_parts: Vec<Element>,
        h_parts: Vec<Element>,
    ) -> Option<Self> {
        let gs = raag.mul_all(&g_parts);
        let hs = raag.mul_all(&h_parts);
        let xr = raag.mul(x, &gs);
        let yr = raag.mul(&hs, y);
        if xr.len() + lengths(&g_parts) != x.len() || yr.len() + lengths(&h_parts) != y.len() {
            return None;
        }
        let word: Vec<Letter> = xr.letters().iter().chain(yr.letters()).copied().collect();
        let partners = cancellation_partners(raag.graph(), &word);
        let w_letters: Vec<Letter> = (0..xr.len())
            .filter(|&i| partners[i].is_some())
            .map(|i| word[i])
            .collect();
        let w = raag.reduce(&w_letters);
        let x_rest = raag.mul(&xr, &raag.inv(&w));
        let y_rest = raag.mul(&w, &yr);
        Some(CancellationSequence {
            x: x.clone(),
            y: y.clone(),
            vertices,
            g_parts,
            h_parts,
            x_rest,
            w,
            y_rest,
        })
    }

    pub fn product(&self, raag: &Raag) -> Element {
        raag.mul(&raag.mul_all(&self.g_parts), &raag.mul_all(&self.h_parts))
    }

    /// `(|g_1|, …, |g_s|, |h_s|, …, |h_1|)`, compared lexicographically.
    pub fn key(&self) -> Vec<usize> {
        self.g_parts
            .iter()
            .map(Element::len)
            .chain(self.h_parts.iter().rev().map(Element::len))
            .collect()
    }

    pub fn supports(&self) -> (Vec<VertexSet>, Vec<VertexSet>) {
        (
            self.g_parts.iter().map(Element::support).collect(),
            self.h_parts.iter().map(Element::support).collect(),
        )
    }

    /// Checks the four defining conditions against the target `g`.
    pub fn check(&self, raag: &Raag, g: &Element) -> Result<()> {
        let gr = raag.graph();
        let s = self.s();
        let fail = |m: &str| Err(Error::Invalid(m.into()));
        if self.g_parts.len() != s || self.h_parts.len() != s {
            return fail("part counts differ from the number of vertices");
        }
        if self.product(raag) != *g {
            return fail("parts do not multiply to the target");
        }
        for i in 0..s {
            let st = gr.star(self.vertices[i]);
            if !self.g_parts[i].support().is_subset(st) || !self.h_parts[i].support().is_subset(st) {
                return fail("a part leaves the star of its vertex");
            }
        }
        for i in 0..s {
            for j in i + 1..s {
                let hi = self.h_parts[i].support();
                let gj = self.g_parts[j].support();
                if hi.iter().any(|a| !gj.is_subset(gr.link(a))) {
                    return fail("an earlier h-part is not adjacent to a later g-part");
                }
            }
        }
        let mut x_seq = vec![self.x_rest.clone(), self.w.clone()];
        x_seq.extend(self.g_parts.iter().rev().map(|p| raag.inv(p)));
        let mut y_seq: Vec<Element> = self.h_parts.iter().rev().map(|p| raag.inv(p)).collect();
        y_seq.push(raag.inv(&self.w));
        y_seq.push(self.y_rest.clone());
        if raag.mul_all(&x_seq) != self.x || lengths(&x_seq) != self.x.len() {
            return fail("x does not split with additive lengths");
        }
        if raag.mul_all(&y_seq) != self.y || lengths(&y_seq) != self.y.len() {
            return fail("y does not split with additive lengths");
        }
        Ok(())
    }

    fn with_parts(&self, raag: &Raag, g_parts: Vec<Element>, h_parts: Vec<Element>) -> Option<Self> {
        Self::assemble(raag, &self.x, &self.y, self.vertices.clone(), g_parts, h_parts)
    }

    /// The first single-letter transfer that keeps the sequence valid and
    /// raises its key, in tie-break order: g-chain shifts, h-chain shifts,
    /// then transfers between `g_i` and `h_i`; pairs `(a, b)` increasing,
    /// smallest letter first.
    fn improving_move(&self, raag: &Raag, g: &Element) -> Option<Self> {
        let s = self.s();
        let n = raag.graph().n();
        let key = self.key();
        for kind in 0..3u8 {
            for a in 0..s {
                for b in a..s {
                    if (kind == 2) != (a == b) {
                        continue;
                    }
                    for c in 0..2 * n {
                        let l = raag.reduce(&[Letter::from_code(c)]);
                        let li = raag.inv(&l);
                        let (mut gp, mut hp) = (self.g_parts.clone(), self.h_parts.clone());
                        match kind {
                            0 => {
                                gp[a] = raag.mul(&gp[a], &l);
                                gp[b] = raag.mul(&li, &gp[b]);
                            }
                            1 => {
                                hp[a] = raag.mul(&hp[a], &li);
                                hp[b] = raag.mul(&l, &hp[b]);
                            }
                            _ => {
                                gp[a] = raag.mul(&gp[a], &l);
                                hp[a] = raag.mul(&li, &hp[a]);
                            }
                        }
                        if let Some(next) = self.with_parts(raag, gp, hp) {
                            if next.key() > key && next.check(raag, g).is_ok() {
                                return Some(next);
                            }
                        }
                    }
                }
            }
        }
        None
    }

    /// True when no single-letter transfer improves the sequence.
    pub fn is_maximal(&self, raag: &Raag, g: &Element) -> bool {
        self.improving_move(raag, g).is_none()
    }
}

/// `‖x‖_* ≥ s+t+2` or `‖y‖_* ≥ s+t+2`.
pub fn hypothesis_holds(raag: &Raag, x: &Element, y: &Element, s: usize, t: usize) -> bool {
    raag.star_length(x) >= s + t + 2 || raag.star_length(y) >= s + t + 2
}

/// Splits a shortest star factorization of `g` (padded to `s` factors)
/// according to which side absorbs each letter while reducing `x g y`.
/// `None` when some letter of `g` survives, or the split is not a valid
/// sequence.
pub fn find_cancellation(
    raag: &Raag,
    g: &Element,
    x: &Element,
    y: &Element,
    s: usize,
) -> Result<Option<CancellationSequence>> {
    let f = raag.star_factorization(g);
    if f.len() > s {
        return Err(Error::Precondition(format!(
            "element has star length {} > {s}",
            f.len()
        )));
    }
    let mut factors = f.factors;
    let pad = factors.last().map_or(0, |(v, _)| *v);
    factors.resize(s, (pad, Element::identity()));
    let mut word: Vec<Letter> = x.letters().to_vec();
    let mut owner = vec![];
    for (i, (_, h)) in factors.iter().enumerate() {
        word.extend_from_slice(h.letters());
        owner.extend(std::iter::repeat(i).take(h.len()));
    }
    if owner.len() != g.len() {
        return Err(Error::Invalid("star factors overlap".into()));
    }
    let y_start = word.len();
    word.extend_from_slice(y.letters());
    let partners = cancellation_partners(raag.graph(), &word);
    let mut gl = vec![vec![]; s];
    let mut hl = vec![vec![]; s];
    for (k, &i) in owner.iter().enumerate() {
        let pos = x.len() + k;
        match partners[pos] {
            Some(p) if p < x.len() => gl[i].push(word[pos]),
            Some(p) if p >= y_start => hl[i].push(word[pos]),
            _ => return Ok(None),
        }
    }
    let vertices = factors.iter().map(|(v, _)| *v).collect();
    let gp = gl.iter().map(|w| raag.reduce(w)).collect();
    let hp = hl.iter().map(|w| raag.reduce(w)).collect();
    Ok(CancellationSequence::assemble(raag, x, y, vertices, gp, hp).filter(|c| c.check(raag, g).is_ok()))
}

/// Applies improving transfers until none is left. Idempotent.
pub fn maximalize(raag: &Raag, g: &Element, seq: &CancellationSequence) -> Result<CancellationSequence> {
    seq.check(raag, g)?;
    let mut cur = seq.clone();
    while let Some(next) = cur.improving_move(raag, g) {
        cur = next;
    }
    Ok(cur)
}

#[derive(Clone, Debug, Serialize)]
pub struct Reconstruction {
    pub candidate: String,
    #[serde(skip)]
    pub element: Element,
    pub star_length: usize,
    pub product_star_length: usize,
    pub member: bool,
    pub hypothesis: bool,
}

/// Rebuilds the only element that can have a maximal sequence with the
/// given supports: peel `τ(x; P_1)`, `τ(x_1; P_2)`, … off the end of `x`, and
/// `ι(y; Q_s)`, `ι(y_1; Q_{s-1})`, … off the front of `y`.
pub fn support_determines(
    raag: &Raag,
    x: &Element,
    y: &Element,
    vertices: &[usize],
    p: &[VertexSet],
    q: &[VertexSet],
    t: usize,
) -> Result<Reconstruction> {
    let gr = raag.graph();
    let s = vertices.len();
    if p.len() != s || q.len() != s {
        return Err(Error::Invalid(
            "support counts differ from the number of vertices".into(),
        ));
    }
    for i in 0..s {
        let st = gr.star(vertices[i]);
        if !p[i].is_subset(st) || !q[i].is_subset(st) {
            return Err(Error::Invalid(format!(
                "support {} leaves the star of {}",
                i + 1,
                gr.label(vertices[i])
            )));
        }
        for j in i + 1..s {
            if q[i].iter().any(|a| !p[j].is_subset(gr.link(a))) {
                return Err(Error::Invalid(format!(
                    "support Q{} is not adjacent to P{}",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let mut xi = x.clone();
    let mut ps = vec![];
    for &pi in p {
        let (rest, part) = raag.split_tau(&xi, pi);
        ps.push(raag.inv(&part));
        xi = rest;
    }
    let mut yi = y.clone();
    let mut qs = vec![Element::identity(); s];
    for i in (0..s).rev() {
        let (part, rest) = raag.split_iota(&yi, q[i]);
        qs[i] = raag.inv(&part);
        yi = rest;
    }
    let element = raag.mul(&raag.mul_all(&ps), &raag.mul_all(&qs));
    let star_length = raag.star_length(&element);
    let product_star_length = raag.star_length(&raag.mul_all([x, &element, y]));
    Ok(Reconstruction {
        candidate: raag.format(&element),
        element,
        star_length,
        product_star_length,
        member: star_length <= s && product_star_length <= t,
        hypothesis: hypothesis_holds(raag, x, y, s, t),
    })
}

/// `|V|^s (2^|V|)^(2s)`, saturating.
pub fn cardinality_bound(n: usize, s: usize) -> u128 {
    let base = (n as u128).checked_pow(s as u32);
    let pow = 2u128.checked_pow((n * 2 * s) as u32);
    base.zip(pow)
        .and_then(|(a, b)| a.checked_mul(b))
        .unwrap_or(u128::MAX)
}

/// Elements of star length at most `s` with word length at most `max_len`
/// and every syllable exponent at most `max_exp`, sorted.
pub fn truncated_ball(
    raag: &Raag,
    s: usize,
    max_len: usize,
    max_exp: usize,
    cap: usize,
) -> Result<Vec<Element>> {
    let gr = raag.graph();
    let mut stars: HashSet<Element> = HashSet::new();
    for v in 0..gr.n() {
        let letters: Vec<Letter> = gr
            .star(v)
            .iter()
            .flat_map(|u| [Letter::pos(u), Letter::neg(u)])
            .collect();
        let mut layer = vec![Element::identity()];
        stars.insert(Element::identity());
        for _ in 0..max_len {
            let mut next = vec![];
            for e in &layer {
                for &l in &letters {
                    let m = raag.mul(e, &raag.reduce(&[l]));
                    if m.len() == e.len() + 1 && m.max_exponent() <= max_exp && stars.insert(m.clone()) {
                        next.push(m);
                    }
                }
            }
            if stars.len() > cap {
                return Err(Error::CapExceeded {
                    what: "truncated ball",
                    cap,
                });
            }
            layer = next;
        }
    }
    let stars: Vec<Element> = stars.into_iter().collect();
    let mut ball: HashSet<Element> = HashSet::from([Element::identity()]);
    for _ in 0..s {
        let mut next = ball.clone();
        for a in &ball {
            for b in &stars {
                let m = raag.mul(a, b);
                if m.len() <= max_len && m.max_exponent() <= max_exp {
                    next.insert(m);
                }
            }
            if next.len() > cap {
                return Err(Error::CapExceeded {
                    what: "truncated ball",
                    cap,
                });
            }
        }
        ball = next;
    }
    let mut out: Vec<Element> = ball.into_iter().filter(|g| raag.star_length(g) <= s).collect();
    out.sort();
    Ok(out)
}

/// All `p` with `|p| + |p^-1 g| = |g|`.
pub fn prefixes(raag: &Raag, g: &Element, cap: usize) -> Result<Vec<Element>> {
    let mut seen: HashSet<Element> = HashSet::from([Element::identity()]);
    let mut layer = vec![Element::identity()];
    while !layer.is_empty() {
        let mut next = vec![];
        for p in &layer {
            let rest = raag.mul(&raag.inv(p), g);
            for l in first_letters(raag.graph(), rest.letters()) {
                let q = raag.mul(p, &raag.reduce(&[l]));
                if seen.insert(q.clone()) {
                    next.push(q);
                }
            }
        }
        if seen.len() > cap {
            return Err(Error::CapExceeded {
                what: "prefix set",
                cap,
            });
        }
        layer = next;
    }
    let mut out: Vec<Element> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// All `p` with `|g p^-1| + |p| = |g|`.
pub fn suffixes(raag: &Raag, g: &Element, cap: usize) -> Result<Vec<Element>> {
    let mut out: Vec<Element> = prefixes(raag, &raag.inv(g), cap)?
        .iter()
        .map(|p| raag.inv(p))
        .collect();
    out.sort();
    Ok(out)
}

/// Letters that can be moved to the front of a reduced word.
fn first_letters(gr: &Graph, w: &[Letter]) -> Vec<Letter> {
    let mut blockers = VertexSet::EMPTY;
    let mut out = vec![];
    for &l in w {
        let v = l.vertex();
        if !blockers.contains(v) && blockers.is_subset(gr.link(v)) {
            out.push(l);
        }
        blockers.insert(v);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct AcylTrial {
    pub x: String,
    pub y: String,
    pub x_star_length: usize,
    pub y_star_length: usize,
    /// Members found among the truncated ball.
    pub truncated_count: usize,
    /// Members of the form `S^-1 T^-1` with `S` a suffix of `x` and `T` a
    /// prefix of `y`; every member has this form when absorption is complete.
    pub absorbed_count: usize,
    /// Every truncated member is also found by absorption.
    pub truncated_within_absorbed: bool,
    /// `(|p'| + |q'|) s` where `p'`, `q'` are the last and first `s+2` star
    /// factors of `x` and `y`: the log of the instance-dependent bound.
    pub instance_bound_log2: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AcylReport {
    pub s: usize,
    pub t: usize,
    pub max_exp: usize,
    pub max_len: usize,
    pub ball_size: usize,
    pub bound: u128,
    pub max_count: usize,
    pub witnesses: Vec<String>,
    pub trials: Vec<AcylTrial>,
    pub violations: usize,
}

const ENUM_CAP: usize = 200_000;

/// Members of `B_s ∩ x^-1 B_t y^-1` among `candidates`.
fn members(raag: &Raag, x: &Element, y: &Element, t: usize, candidates: &[Element]) -> Vec<Element> {
    candidates
        .par_iter()
        .filter(|g| raag.star_length(&raag.mul_all([x, *g, y])) <= t)
        .cloned()
        .collect()
}

fn absorbed_members(raag: &Raag, x: &Element, y: &Element, s: usize, t: usize) -> Result<Vec<Element>> {
    let sx = suffixes(raag, x, ENUM_CAP)?;
    let py = prefixes(raag, y, ENUM_CAP)?;
    let cands: Vec<Element> = sx
        .par_iter()
        .flat_map_iter(|a| {
            py.iter()
                .map(|b| raag.mul(&raag.inv(a), &raag.inv(b)))
                .filter(|g| raag.star_length(g) <= s)
                .collect::<Vec<_>>()
        })
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    let mut out = members(raag, x, y, t, &cands);
    out.sort();
    Ok(out)
}

fn instance_bound_log2(raag: &Raag, x: &Element, y: &Element, s: usize) -> usize {
    let fx = raag.star_factorization(x).factors;
    let fy = raag.star_factorization(y).factors;
    let p: usize = fx.iter().rev().take(s + 2).map(|(_, h)| h.len()).sum();
    let q: usize = fy.iter().take(s + 2).map(|(_, h)| h.len()).sum();
    (p + q) * s
}

/// Samples `trials` pairs `(x, y)` meeting the hypothesis, each planted so
/// that some ball element `c` satisfies `x c y = z` with `‖z‖_* ≤ t`, and
/// counts `B_s ∩ x^-1 B_t y^-1` two ways against the bound.
pub fn acyl_sample(
    raag: &Raag,
    s: usize,
    t: usize,
    max_exp: usize,
    max_len: usize,
    trials: usize,
    seed: u64,
) -> Result<AcylReport> {
    let n = raag.graph().n();
    let ball = truncated_ball(raag, s, max_len, max_exp, ENUM_CAP)?;
    let small = truncated_ball(raag, t.min(1), 3, max_exp, ENUM_CAP)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = cardinality_bound(n, s);
    let mut out = vec![];
    let mut best: (usize, Vec<String>) = (0, vec![]);
    for _ in 0..trials {
        let mut attempts = 0;
        let x = loop {
            let x = crate::sample::random_syllables(&mut rng, raag, 3 * (s + t + 2), max_exp.max(1));
            if raag.star_length(&x) >= s + t + 2 {
                break x;
            }
            attempts += 1;
            if attempts > 1000 {
                return Err(Error::Precondition(
                    "could not sample an element of star length s+t+2; the extension graph may have finite diameter".into(),
                ));
            }
        };
        let c = &ball[rng.gen_range(0..ball.len())];
        let z = &small[rng.gen_range(0..small.len())];
        let y = raag.mul_all([&raag.inv(c), &raag.inv(&x), z]);
        let found = members(raag, &x, &y, t, &ball);
        let absorbed = absorbed_members(raag, &x, &y, s, t)?;
        let within = found.iter().all(|g| absorbed.binary_search(g).is_ok());
        let pass = within && (found.len() as u128) <= bound && (absorbed.len() as u128) <= bound;
        let count = found.len().max(absorbed.len());
        if count > best.0 || best.1.is_empty() {
            best = (count, absorbed.iter().map(|g| raag.format(g)).collect());
        }
        out.push(AcylTrial {
            x: raag.format(&x),
            y: raag.format(&y),
            x_star_length: raag.star_length(&x),
            y_star_length: raag.star_length(&y),
            truncated_count: found.len(),
            absorbed_count: absorbed.len(),
            truncated_within_absorbed: within,
            instance_bound_log2: instance_bound_log2(raag, &x, &y, s),
            pass,
        });
    }
    Ok(AcylReport {
        s,
        t,
        max_exp,
        max_len,
        ball_size: ball.len(),
        bound,
        max_count: best.0,
        witnesses: best.1,
        violations: out.iter().filter(|r| !r.pass).count(),
        trials: out,
    })
}

/// Counts `B_s ∩ x^-1 B_t y^-1` for one pair, refusing pairs outside the
/// hypothesis.
pub fn count_absorbed(raag: &Raag, x: &Element, y: &Element, s: usize, t: usize) -> Result<usize> {
    if !hypothesis_holds(raag, x, y, s, t) {
        return Err(Error::Precondition(format!(
            "neither x nor y has star length at least {}",
            s + t + 2
        )));
    }
    Ok(absorbed_members(raag, x, y, s, t)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c5() -> Raag {
        Raag::new(Graph::cycle(5))
    }

    #[test]
    fn identity_with_empty_sequence() {
        let r = c5();
        let x = r.parse("a c a c").unwrap();
        let y = r.inv(&x);
        let seq = find_cancellation(&r, &Element::identity(), &x, &y, 0)
            .unwrap()
            .unwrap();
        assert_eq!(seq.s(), 0);
        assert_eq!(seq.w, x);
        seq.check(&r, &Element::identity()).unwrap();
    }

    #[test]
    fn fully_absorbed_by_x() {
        let r = c5();
        let g = r.parse("a b").unwrap();
        let x0 = r.parse("c e c e c e").unwrap();
        let x = r.mul(&x0, &r.inv(&g));
        let y = r.parse("d a d a d a").unwrap();
        let seq = find_cancellation(&r, &g, &x, &y, 1).unwrap().unwrap();
        seq.check(&r, &g).unwrap();
        assert_eq!(seq.g_parts[0], g);
        assert!(seq.h_parts[0].is_identity());
    }

    #[test]
    fn star_length_precondition() {
        let r = c5();
        let g = r.parse("a c e").unwrap();
        assert!(matches!(
            find_cancellation(&r, &g, &g, &g, 1),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn survivors_mean_no_sequence() {
        let r = c5();
        let g = r.parse("a").unwrap();
        let x = r.parse("c e c e").unwrap();
        assert!(find_cancellation(&r, &g, &x, &x, 1).unwrap().is_none());
    }

    #[test]
    fn maximalize_is_idempotent_and_round_trips() {
        let r = c5();
        // g = b c: c can be absorbed by x, b by y.
        let g = r.parse("b c").unwrap();
        let x = r.mul(&r.parse("e a e a e a").unwrap(), &r.parse("c^-1").unwrap());
        let y = r.mul(&r.parse("b^-1").unwrap(), &r.parse("d a d a d a").unwrap());
        let seq = find_cancellation(&r, &g, &x, &y, 1).unwrap().unwrap();
        let m = maximalize(&r, &g, &seq).unwrap();
        assert_eq!(maximalize(&r, &g, &m).unwrap(), m);
        assert!(m.is_maximal(&r, &g));
        let (p, q) = m.supports();
        let t = r.star_length(&r.mul_all([&x, &g, &y]));
        let rec = support_determines(&r, &x, &y, &m.vertices, &p, &q, t).unwrap();
        assert_eq!(rec.element, g);
        assert!(rec.member);
    }

    #[test]
    fn empty_supports_give_identity() {
        let r = c5();
        let x = r.parse("a c a c a c").unwrap();
        let e = VertexSet::EMPTY;
        let rec = support_determines(&r, &x, &x, &[0, 1], &[e, e], &[e, e], 5).unwrap();
        assert!(rec.element.is_identity());
    }

    #[test]
    fn inconsistent_supports_rejected() {
        let r = c5();
        let x = r.parse("a c").unwrap();
        let bad = r.graph().set_of(&["c"]).unwrap();
        let e = VertexSet::EMPTY;
        assert!(support_determines(&r, &x, &x, &[0], &[bad], &[e], 1).is_err());
    }

    #[test]
    fn bound_instantiated() {
        assert_eq!(cardinality_bound(5, 1), 5120);
        assert_eq!(cardinality_bound(5, 0), 1);
    }

    #[test]
    fn zero_ball_is_identity() {
        let r = c5();
        assert_eq!(
            truncated_ball(&r, 0, 4, 2, 1000).unwrap(),
            vec![Element::identity()]
        );
    }

    #[test]
    fn hypothesis_gate() {
        let r = c5();
        let e = Element::identity();
        assert!(count_absorbed(&r, &e, &e, 1, 1).is_err());
    }

    #[test]
    fn prefixes_of_commuting_pair() {
        let r = c5();
        let g = r.parse("a b").unwrap();
        assert_eq!(prefixes(&r, &g, 100).unwrap().len(), 4);
        let h = r.parse("a c").unwrap();
        assert_eq!(prefixes(&r, &h, 100).unwrap().len(), 3);
        assert_eq!(suffixes(&r, &h, 100).unwrap().len(), 3);
    }

    #[test]
    fn small_sample_meets_the_bound() {
        let r = c5();
        let rep = acyl_sample(&r, 1, 1, 2, 4, 3, 1).unwrap();
        assert_eq!(rep.violations, 0);
        assert!(rep.max_count >= 1);
    }
}
