use serde::Serialize;

use crate::error::{Error, Result};
use crate::extension::{canonical_vertex, covering_distance_exact, free_canonical, ExtVertex};
use crate::graph::Graph;
use crate::link::link_coordinates;
use crate::word::{Element, Factorization, Raag};

/// A star factor `h_i` with its chosen centre `y_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarFactor {
    pub center: usize,
    pub element: Element,
}

/// `g = h_k ... h_1` with `sum syl(h_i) = syl(g)`, listed as `h_1, ..., h_k`
/// (rightmost first). A one-syllable factor is centred at its own vertex; a
/// longer factor is centred at a vertex of degree at least two when possible.
pub fn star_factorize_min_syllable(raag: &Raag, g: &Element) -> Vec<StarFactor> {
    let gr = raag.graph();
    let f = raag.star_factorization(g);
    f.factors
        .into_iter()
        .rev()
        .map(|(y, h)| {
            let s = h.support();
            let center = if h.syllable_length() == 1 {
                s.first().unwrap()
            } else if gr.degree(y) <= 1 && s.len() == 2 {
                s.without(y).first().unwrap()
            } else {
                y
            };
            StarFactor { center, element: h }
        })
        .collect()
}

/// Rebuilds the left-to-right factorization from factors listed rightmost first.
pub fn as_factorization(raag: &Raag, factors: &[StarFactor]) -> Factorization {
    let fs: Vec<(usize, Element)> = factors
        .iter()
        .rev()
        .map(|f| (f.center, f.element.clone()))
        .collect();
    let target = raag.mul_all(fs.iter().map(|(_, h)| h));
    Factorization { factors: fs, target }
}

/// A link distance, exact, together with the interval that syllable peeling
/// alone certifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LinkTerm {
    pub value: usize,
    pub lo: usize,
    pub hi: usize,
}

/// `d_{lk(x)}(p, q)` for neighbours `p`, `q` of `x`.
pub fn link_term(raag: &Raag, x: &ExtVertex, p: &ExtVertex, q: &ExtVertex) -> Result<LinkTerm> {
    let a = link_coordinates(raag, x, p)?;
    let b = link_coordinates(raag, x, q)?;
    if a == b {
        return Ok(LinkTerm {
            value: 0,
            lo: 0,
            hi: 0,
        });
    }
    // Move a to its base vertex; b becomes base(b)^t.
    let t = free_canonical(raag, b.base, &raag.mul(&b.conj, &raag.inv(&a.conj)));
    let s = t.syllable_length();
    let value = crate::extension::free_distance(raag, &a, &b)?;
    Ok(LinkTerm {
        value,
        lo: 1.max(s.saturating_sub(1)),
        hi: s + 1,
    })
}

/// `(1/K) s - C <= x <= K s + C`, in exact rational form.
pub fn within(x: usize, s: usize, k: usize, c: usize) -> bool {
    let (x, s, k, c) = (x as i64, s as i64, k as i64, c as i64);
    s - c * k <= x * k && x <= k * s + c
}

#[derive(Clone, Debug, Serialize)]
pub struct MarkerTerm {
    pub factor: usize,
    pub position: usize,
    pub syl: usize,
    pub term: LinkTerm,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TreeReport {
    pub syl: usize,
    pub star_length: usize,
    pub diameter: usize,
    pub base: String,
    /// True when no base vertex avoids `st(y_1) ∪ st(y_k)`, so the weaker
    /// lower bound `(syl - 4)/3` applies.
    pub relaxed: bool,
    pub geodesic: Vec<String>,
    pub sum: usize,
    pub sum_lo: usize,
    pub sum_hi: usize,
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(rename = "C")]
    pub c: usize,
    /// The `(4D, 4D)` comparison holds for every sum in `[sum_lo, sum_hi]`.
    pub coarse_pass: bool,
    /// `syl/3 <= sum <= (D+1)(syl+1)`, or the relaxed lower bound.
    pub proof_bound_pass: bool,
    pub markers: Vec<MarkerTerm>,
    pub others: usize,
    pub others_bound: usize,
    pub pass: bool,
}

/// The distance formula on a tree: walks through the copies named by a
/// minimal star factorization, cancels backtracking to get the unique
/// geodesic from `v` to `v^g`, and sums link distances at interior vertices.
pub fn tree_distance_formula_check(raag: &Raag, g: &Element) -> Result<TreeReport> {
    let gr = raag.graph();
    if !gr.is_tree() {
        return Err(Error::Precondition("graph must be a tree".into()));
    }
    let d = gr.diameter().unwrap();
    if d < 2 {
        return Err(Error::Precondition("tree must have diameter at least 2".into()));
    }
    let syl = g.syllable_length();
    let (kk, cc) = (4 * d, 4 * d);
    if g.is_identity() {
        return Ok(TreeReport {
            syl: 0,
            star_length: 0,
            diameter: d,
            base: gr.label(0).to_string(),
            relaxed: false,
            geodesic: vec![gr.label(0).to_string()],
            sum: 0,
            sum_lo: 0,
            sum_hi: 0,
            k: kk,
            c: cc,
            coarse_pass: true,
            proof_bound_pass: true,
            markers: vec![],
            others: 0,
            others_bound: d + 1,
            pass: true,
        });
    }
    let hs = star_factorize_min_syllable(raag, g);
    let k = hs.len();
    let (y1, yk) = (hs[0].center, hs[k - 1].center);
    let avoid = gr.star(y1).union(gr.star(yk));
    let (v, relaxed) = match gr.vertices().difference(avoid).first() {
        Some(v) => (v, false),
        None => (
            gr.vertices()
                .without(y1)
                .without(yk)
                .first()
                .ok_or_else(|| Error::Precondition("tree too small".into()))?,
            true,
        ),
    };

    // g_i = h_i ... h_1.
    let mut gs = vec![Element::identity()];
    for h in &hs {
        gs.push(raag.mul(&h.element, gs.last().unwrap()));
    }
    // Segments c_0 .. c_k, each labelled by its index.
    let path = |a: usize, b: usize| gr.shortest_path(a, b).unwrap();
    let mut walk: Vec<(ExtVertex, usize)> = vec![];
    let mut push_segment = |verts: Vec<usize>, conj: &Element, label: usize| {
        for u in verts {
            let x = canonical_vertex(raag, u, conj);
            if walk.last().map(|w| &w.0) == Some(&x) {
                continue;
            }
            if walk.len() >= 2 && walk[walk.len() - 2].0 == x {
                walk.pop();
                continue;
            }
            walk.push((x, label));
        }
    };
    push_segment(path(v, y1), &gs[0], 0);
    for i in 1..k {
        push_segment(path(hs[i - 1].center, hs[i].center), &gs[i], i);
    }
    push_segment(path(yk, v), &gs[k], k);
    let geo = walk;
    let ell = geo.len() - 1;
    let target = canonical_vertex(raag, v, g);
    if geo[ell].0 != target {
        return Err(Error::Invalid("walk does not end at v^g".into()));
    }

    let mut terms = vec![None; geo.len()];
    for i in 1..ell {
        terms[i] = Some(link_term(raag, &geo[i].0, &geo[i - 1].0, &geo[i + 1].0)?);
    }
    // Marker i sits where the surviving parts of c_{i-1} and c_i meet: the
    // last geodesic vertex carrying a label below i.
    let mut markers = vec![];
    for i in 1..=k {
        if let Some(pos) = geo.iter().rposition(|w| w.1 < i) {
            if pos > 0 && pos < ell {
                let s = hs[i - 1].element.syllable_length();
                let term = terms[pos].unwrap();
                let pass = relaxed || (3 * term.value >= s && term.value <= s + 1);
                markers.push(MarkerTerm {
                    factor: i,
                    position: pos,
                    syl: s,
                    term,
                    pass,
                });
            }
        }
    }
    let sum: usize = terms.iter().flatten().map(|t| t.value).sum();
    let sum_lo: usize = terms.iter().flatten().map(|t| t.lo).sum();
    let sum_hi: usize = terms.iter().flatten().map(|t| t.hi).sum();
    let mut marker_pos: Vec<usize> = markers.iter().map(|m| m.position).collect();
    marker_pos.sort_unstable();
    marker_pos.dedup();
    // A geodesic of length 0 happens when g fixes v.
    let others = ell.saturating_sub(1) - marker_pos.len();
    let others_bound = (d - 1) * k + d + 1;
    let coarse_pass = within(sum_lo, syl, kk, cc) && within(sum_hi, syl, kk, cc);
    let lower_ok = if relaxed {
        3 * sum as i64 >= syl as i64 - 4
    } else {
        3 * sum >= syl
    };
    let proof_bound_pass = lower_ok && sum <= (d + 1) * (syl + 1);
    let marker_pass = markers.iter().all(|m| m.pass) && (relaxed || markers.len() == k);
    let pass = coarse_pass && proof_bound_pass && marker_pass && (relaxed || others <= others_bound);
    Ok(TreeReport {
        syl,
        star_length: k,
        diameter: d,
        base: gr.label(v).to_string(),
        relaxed,
        geodesic: geo.iter().map(|w| w.0.display(raag)).collect(),
        sum,
        sum_lo,
        sum_hi,
        k: kk,
        c: cc,
        coarse_pass,
        proof_bound_pass,
        markers,
        others,
        others_bound,
        pass,
    })
}

/// Choices made for one star factor when building the quasi-geodesic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorChoice {
    pub h: Element,
    pub y: usize,
    pub z: usize,
    pub v: usize,
}

#[derive(Clone, Debug)]
pub struct QuasiGeodesicCertificate {
    pub path: Vec<ExtVertex>,
    /// Path positions of the `z_i^(g_(i-1))`, one per factor.
    pub markers: Vec<usize>,
    pub choices: Vec<FactorChoice>,
    pub syl: usize,
    pub diameter: usize,
    pub k: usize,
    pub c: usize,
}

/// Picks `(z, v)` for a star factor `h` centred at `y`: for one syllable a
/// length-two path `(y, z, v)`, otherwise `z = y` and a neighbour `v` moved by `h`.
fn choose_zv(g: &Graph, h: &Element, y: usize) -> Result<(usize, usize)> {
    if h.syllable_length() == 1 {
        for z in g.link(y).iter() {
            if let Some(v) = g.link(z).without(y).first() {
                return Ok((z, v));
            }
        }
        Err(Error::Precondition(
            "no path of length two from the factor vertex; graph is a star".into(),
        ))
    } else {
        let s = h.support();
        g.link(y)
            .iter()
            .find(|&v| !s.is_subset(g.star(v).intersection(g.star(y))))
            .map(|v| (y, v))
            .ok_or_else(|| Error::Invalid("no link vertex moved by the factor".into()))
    }
}

/// The explicit quasi-geodesic from `v` to `v^g` through conjugate copies.
pub fn build_quasi_geodesic(raag: &Raag, g: &Element) -> Result<QuasiGeodesicCertificate> {
    let gr = raag.graph();
    if !gr.is_connected() || !gr.is_triangle_free() || !gr.is_square_free() {
        return Err(Error::Precondition(
            "graph must be connected, triangle- and square-free".into(),
        ));
    }
    let d = gr.diameter().unwrap_or(0);
    if d < 2 {
        return Err(Error::Precondition("graph must have diameter at least 2".into()));
    }
    if g.is_identity() {
        return Err(Error::Precondition("element must be nontrivial".into()));
    }
    let hs = star_factorize_min_syllable(raag, g);
    let k = hs.len();
    let mut choices = vec![];
    for f in &hs {
        let (z, v) = choose_zv(gr, &f.element, f.center)?;
        choices.push(FactorChoice {
            h: f.element.clone(),
            y: f.center,
            z,
            v,
        });
    }
    let mut gs = vec![Element::identity()];
    for h in &hs {
        gs.push(raag.mul(&h.element, gs.last().unwrap()));
    }
    let mut path: Vec<ExtVertex> = vec![];
    let mut markers = vec![];
    let push = |path: &mut Vec<ExtVertex>, x: ExtVertex| {
        if path.last() != Some(&x) {
            path.push(x);
        }
    };
    for i in 0..k {
        let ch = &choices[i];
        push(&mut path, canonical_vertex(raag, ch.v, &gs[i]));
        markers.push(path.len());
        path.push(canonical_vertex(raag, ch.z, &gs[i]));
        push(&mut path, canonical_vertex(raag, ch.v, &gs[i + 1]));
        let next = if i + 1 < k { choices[i + 1].v } else { choices[0].v };
        for u in gr.shortest_path(ch.v, next).unwrap().into_iter().skip(1) {
            push(&mut path, canonical_vertex(raag, u, &gs[i + 1]));
        }
    }
    Ok(QuasiGeodesicCertificate {
        path,
        markers,
        choices,
        syl: g.syllable_length(),
        diameter: d,
        k: 10 * d,
        c: 10 * d,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateJson {
    pub path: Vec<String>,
    pub markers: Vec<usize>,
    pub factors: Vec<FactorChoiceJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorChoiceJson {
    pub h: String,
    pub y: String,
    pub z: String,
    pub v: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneralReport {
    pub syl: usize,
    pub star_length: usize,
    pub diameter: usize,
    pub length: usize,
    pub sum: usize,
    pub sum_lo: usize,
    pub sum_hi: usize,
    pub marker_sum: usize,
    pub other_sum: usize,
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(rename = "C")]
    pub c: usize,
    pub path_adjacent: bool,
    pub coarse_pass: bool,
    pub sharp_pass: bool,
    /// Per-marker and marker-sum bounds, corrected for one-syllable factors.
    pub marker_pass: bool,
    /// The same bounds with the constants exactly as first stated (`d = 1`
    /// for one syllable, `d <= syl` otherwise, marker sum at most `syl`).
    /// Informational: one-syllable factors always break it.
    pub marker_as_stated: bool,
    pub quasi_geodesic_pass: bool,
    pub pairs_checked: usize,
    pub pass: bool,
    pub certificate: CertificateJson,
}

impl QuasiGeodesicCertificate {
    pub fn to_json(&self, raag: &Raag) -> CertificateJson {
        let gr = raag.graph();
        CertificateJson {
            path: self.path.iter().map(|x| x.display(raag)).collect(),
            markers: self.markers.clone(),
            factors: self
                .choices
                .iter()
                .map(|c| FactorChoiceJson {
                    h: raag.format(&c.h),
                    y: gr.label(c.y).to_string(),
                    z: gr.label(c.z).to_string(),
                    v: gr.label(c.v).to_string(),
                })
                .collect(),
        }
    }
}

/// Checks a certificate. The window sum runs over every interior position,
/// including the first marker at position 1. The quasi-geodesic inequality is
/// tested at every pair of positions against the whole range `[d', D d']`
/// that the exact covering distance `d'` allows for the true distance.
pub fn general_distance_formula_check(raag: &Raag, cert: &QuasiGeodesicCertificate) -> Result<GeneralReport> {
    let path = &cert.path;
    let ell = path.len() - 1;
    let d = cert.diameter;
    let path_adjacent = path
        .windows(2)
        .all(|w| crate::extension::adjacent(raag, &w[0], &w[1]));
    if !path_adjacent {
        return Err(Error::Invalid("certificate path has a non-adjacent step".into()));
    }
    let mut terms = vec![None; path.len()];
    for i in 1..ell {
        terms[i] = Some(link_term(raag, &path[i], &path[i - 1], &path[i + 1])?);
    }
    let sum: usize = terms.iter().flatten().map(|t| t.value).sum();
    let sum_lo: usize = terms.iter().flatten().map(|t| t.lo).sum();
    let sum_hi: usize = terms.iter().flatten().map(|t| t.hi).sum();
    let mut marker_sum = 0;
    let mut marker_pass = true;
    let mut marker_as_stated = true;
    for (j, &m) in cert.markers.iter().enumerate() {
        let t = terms[m].ok_or_else(|| Error::Invalid("marker at an endpoint".into()))?;
        marker_sum += t.value;
        let s = cert.choices[j].h.syllable_length();
        // A one-syllable factor y^m moves v to a different vertex over the same
        // base, never adjacent to v in the link, so its term is 2. For longer
        // factors the term is 1 + syl of h with its y-letters and the v-powers
        // at both ends removed: between max(2, syl - 2) and syl + 1.
        marker_pass &= if s == 1 {
            t.value == 2
        } else {
            t.value >= 2 && t.value + 2 >= s && t.value <= s + 1
        };
        marker_as_stated &= if s == 1 {
            t.value == 1
        } else {
            2 * t.value >= s && t.value <= s
        };
    }
    let other_sum = sum - marker_sum;
    let syl = cert.syl;
    let kf = cert.choices.len();
    marker_pass &= 2 * marker_sum >= syl && marker_sum <= syl + kf && other_sum + 1 <= (d + 1) * kf;
    marker_as_stated &= 2 * marker_sum >= syl && marker_sum <= syl && other_sum <= (d + 2) * kf;
    let coarse_pass = within(sum, syl, cert.k, cert.c);
    let sharp_pass = within(sum, syl, d + 3, 0);

    let mut qg = true;
    let mut pairs = 0;
    let (kq, cq) = (cert.k as i64, cert.c as i64);
    for p in 0..=ell {
        for q in p + 1..=ell {
            let dp = covering_distance_exact(raag, &path[p], &path[q]) as i64;
            let gap = (q - p) as i64;
            // d/K - C <= gap for d up to D d', and gap <= K d + C for d >= d'.
            qg &= (d as i64) * dp <= kq * (gap + cq) && gap <= kq * dp + cq;
            pairs += 1;
        }
    }
    Ok(GeneralReport {
        syl,
        star_length: kf,
        diameter: d,
        length: ell,
        sum,
        sum_lo,
        sum_hi,
        marker_sum,
        other_sum,
        k: cert.k,
        c: cert.c,
        path_adjacent,
        coarse_pass,
        sharp_pass,
        marker_pass,
        marker_as_stated,
        quasi_geodesic_pass: qg,
        pairs_checked: pairs,
        pass: coarse_pass && sharp_pass && marker_pass && qg,
        certificate: cert.to_json(raag),
    })
}
