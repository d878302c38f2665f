use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::word::{Element, Raag};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Identity,
    Elliptic,
    Loxodromic,
}

/// Evidence for a classification, phrased on the cyclically reduced core.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    None,
    /// The core's support sits inside the join `left * right`.
    Join {
        left: VertexSet,
        right: VertexSet,
    },
    /// The core is a power of one vertex.
    Star {
        center: usize,
    },
    /// A closed walk in the opposite graph visiting every support vertex.
    Loop {
        walk: Vec<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementType {
    pub kind: Kind,
    pub witness: Witness,
    pub core: Element,
    pub conjugator: Element,
}

impl ElementType {
    /// Re-checks the witness against the graph.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let s = self.core.support();
        let bad = |m: &str| Err(Error::Invalid(m.to_string()));
        match (&self.kind, &self.witness) {
            (Kind::Identity, Witness::None) => Ok(()),
            (Kind::Elliptic, Witness::Star { center }) => {
                if s == VertexSet::singleton(*center) {
                    Ok(())
                } else {
                    bad("star witness does not match support")
                }
            }
            (Kind::Elliptic, Witness::Join { left, right }) => {
                let ok = !left.is_empty()
                    && !right.is_empty()
                    && left.intersection(*right).is_empty()
                    && s.is_subset(left.union(*right))
                    && left.iter().all(|a| right.is_subset(g.link(a)));
                if ok {
                    Ok(())
                } else {
                    bad("join witness fails")
                }
            }
            (Kind::Loxodromic, Witness::Loop { walk }) => {
                let closed = walk.len() >= 3 && walk.first() == walk.last();
                let steps = walk.windows(2).all(|p| p[0] != p[1] && !g.adjacent(p[0], p[1]));
                let covers = walk.iter().copied().collect::<VertexSet>() == s;
                if closed && steps && covers {
                    Ok(())
                } else {
                    bad("loop witness fails")
                }
            }
            _ => bad("witness does not match kind"),
        }
    }
}

/// Elliptic iff the support of the cyclic core lies in a join: it is a single
/// vertex, splits as a join itself, or lies in the link of an outside vertex.
pub fn classify(raag: &Raag, g: &Element) -> ElementType {
    let gr = raag.graph();
    let (core, conjugator) = raag.cyclic_reduce(g);
    let s = core.support();
    let (kind, witness) = if core.is_identity() {
        (Kind::Identity, Witness::None)
    } else if s.len() == 1 {
        (
            Kind::Elliptic,
            Witness::Star {
                center: s.first().unwrap(),
            },
        )
    } else if let Some((left, right)) = gr.split_join(s).expect("support within graph") {
        (Kind::Elliptic, Witness::Join { left, right })
    } else if let Some(u) = gr
        .vertices()
        .difference(s)
        .iter()
        .find(|&u| s.is_subset(gr.link(u)))
    {
        (
            Kind::Elliptic,
            Witness::Join {
                left: VertexSet::singleton(u),
                right: s,
            },
        )
    } else {
        (
            Kind::Loxodromic,
            Witness::Loop {
                walk: opposite_tour(gr, s),
            },
        )
    };
    ElementType {
        kind,
        witness,
        core,
        conjugator,
    }
}

/// Depth-first tour of the opposite graph on `s`, returning to the start.
fn opposite_tour(g: &Graph, s: VertexSet) -> Vec<usize> {
    fn visit(g: &Graph, s: VertexSet, v: usize, seen: &mut VertexSet, walk: &mut Vec<usize>) {
        seen.insert(v);
        walk.push(v);
        for w in s.difference(g.link(v)).without(v).iter() {
            if !seen.contains(w) {
                visit(g, s, w, seen, walk);
                walk.push(v);
            }
        }
    }
    let mut walk = vec![];
    let mut seen = VertexSet::EMPTY;
    visit(g, s, s.first().unwrap(), &mut seen, &mut walk);
    walk
}

/// True iff `g` is nontrivial and its cyclic core's support does not induce a
/// join.
pub fn is_pure(raag: &Raag, g: &Element) -> bool {
    let (core, _) = raag.cyclic_reduce(g);
    !core.is_identity() && raag.graph().anti_components_of(core.support()).len() == 1
}

/// `(n, star_length(g^n))` for `n = 1..=n_max`.
pub fn power_star_growth(raag: &Raag, g: &Element, n_max: u32) -> Vec<(u32, usize)> {
    let mut out = vec![];
    let mut p = Element::identity();
    for n in 1..=n_max {
        p = raag.mul(&p, g);
        out.push((n, raag.star_length(&p)));
    }
    out
}

/// Star lengths of the selected powers.
pub fn power_star_lengths(raag: &Raag, g: &Element, ns: &[u32]) -> Vec<(u32, usize)> {
    ns.iter()
        .map(|&n| (n, raag.star_length(&raag.pow(g, n as i64))))
        .collect()
}

/// An interval certified to contain `d(v, v^(g^n)) / n`.
pub fn translation_length_estimate(raag: &Raag, g: &Element, n: u32) -> Result<(Ratio<i64>, Ratio<i64>)> {
    if n == 0 {
        return Err(Error::Invalid("n must be positive".into()));
    }
    let d = raag
        .graph()
        .diameter()
        .ok_or_else(|| Error::Precondition("graph must be connected".into()))? as i64;
    let s = raag.star_length(&raag.pow(g, n as i64)) as i64;
    let n = n as i64;
    Ok((Ratio::new(s - 1, n), Ratio::new(d * (s + 1), n)))
}

/// Star lengths of `lambda^n g lambda^-n` for `n = 1..=n_max`.
pub fn conjugate_divergence(raag: &Raag, lambda: &Element, g: &Element, n_max: u32) -> Result<Vec<usize>> {
    if classify(raag, lambda).kind != Kind::Loxodromic {
        return Err(Error::Precondition("lambda must be loxodromic".into()));
    }
    if !g.is_identity() && raag.commutes(g, lambda) {
        return Err(Error::Precondition("g commutes with lambda".into()));
    }
    let linv = raag.inv(lambda);
    let mut cur = g.clone();
    let mut out = vec![];
    for _ in 0..n_max {
        cur = raag.mul(&raag.mul(lambda, &cur), &linv);
        out.push(raag.star_length(&cur));
    }
    Ok(out)
}

/// Words in the generators `lambda_i^N`, as `(index, exponent sign)` pairs.
pub type FreeWord = Vec<(usize, i8)>;

/// Freely reduced words of length `1..=max_len` in `lambda_i^(+-N)` whose value
/// is the identity.
pub fn sample_free_relations(
    raag: &Raag,
    lambdas: &[Element],
    n: u32,
    max_len: usize,
) -> Result<Vec<FreeWord>> {
    if n == 0 {
        return Err(Error::Invalid("N must be positive".into()));
    }
    for (i, l) in lambdas.iter().enumerate() {
        if classify(raag, l).kind != Kind::Loxodromic {
            return Err(Error::Precondition(format!("generator {i} is not loxodromic")));
        }
        for (j, m) in lambdas.iter().enumerate().take(i) {
            if raag.commutes(l, m) {
                return Err(Error::Precondition(format!("generators {j} and {i} commute")));
            }
        }
    }
    let gens: Vec<[Element; 2]> = lambdas
        .iter()
        .map(|l| {
            let p = raag.pow(l, n as i64);
            let q = raag.inv(&p);
            [p, q]
        })
        .collect();
    let mut out = vec![];
    let mut word = vec![];
    extend_free(raag, &gens, max_len, &Element::identity(), &mut word, &mut out);
    Ok(out)
}

fn extend_free(
    raag: &Raag,
    gens: &[[Element; 2]],
    max_len: usize,
    value: &Element,
    word: &mut FreeWord,
    out: &mut Vec<FreeWord>,
) {
    if word.len() == max_len {
        return;
    }
    for (i, pair) in gens.iter().enumerate() {
        for (k, sign) in [(0usize, 1i8), (1, -1)] {
            if word.last() == Some(&(i, -sign)) {
                continue;
            }
            let next = raag.mul(value, &pair[k]);
            word.push((i, sign));
            if next.is_identity() {
                out.push(word.clone());
            }
            extend_free(raag, gens, max_len, &next, word, out);
            word.pop();
        }
    }
}

/// One vertex per element, labelled `x0, x1, ...`; edges join commuting pairs.
pub fn commutation_graph(raag: &Raag, elements: &[Element]) -> Graph {
    let labels = (0..elements.len()).map(|i| format!("x{i}")).collect();
    let mut edges = vec![];
    for i in 0..elements.len() {
        for j in i + 1..elements.len() {
            if raag.commutes(&elements[i], &elements[j]) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(labels, &edges).expect("commutation graph")
}

/// `Some((v, k))` when `g` is conjugate to `v^k`.
pub fn vertex_power(raag: &Raag, g: &Element) -> Option<(usize, i64)> {
    let (core, _) = raag.cyclic_reduce(g);
    match core.syllables().as_slice() {
        [(v, k)] => Some((*v, *k)),
        _ => None,
    }
}

/// Two non-commuting elements that both commute with `g`, when the common
/// link of the core's support contains a non-adjacent pair. That common link
/// generates the non-cyclic part of the centralizer.
pub fn nonabelian_centralizer_witness(raag: &Raag, g: &Element) -> Option<(Element, Element)> {
    let gr = raag.graph();
    let (core, c) = raag.cyclic_reduce(g);
    if core.is_identity() {
        return None;
    }
    let lk = gr.common_link(core.support());
    for x in lk.iter() {
        if let Some(y) = lk.iter().find(|&y| y > x && !gr.adjacent(x, y)) {
            let ci = raag.inv(&c);
            let back = |v: usize| raag.conj(&raag.generator(v), &ci);
            return Some((back(x), back(y)));
        }
    }
    None
}
