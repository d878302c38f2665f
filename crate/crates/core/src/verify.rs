//! One seeded pass over every property the library can check, reported as
//! a flat list of named results.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cancel;
use crate::classify::{classify, power_star_lengths, sample_free_relations, Kind};
use crate::distance;
use crate::error::Result;
use crate::extension::{self, ExtSnapshot, ExtVertex};
use crate::graph::Graph;
use crate::link;
use crate::sample::{random_element, random_girth5_graph, random_syllables, random_word};
use crate::word::{Element, Letter, Raag};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub tag: &'static str,
    pub pass: bool,
    pub cases: usize,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub samples: usize,
    pub pass: bool,
    pub checks: Vec<Check>,
}

type CheckFn = fn(&mut ChaCha8Rng, usize) -> Result<(bool, usize, String)>;

const CHECKS: &[(&str, CheckFn)] = &[
    ("bounded-geodesic-image", bounded_geodesic_image),
    ("cancellation-cardinality", cancellation_cardinality),
    ("cancellation-round-trip", cancellation_round_trip),
    ("classification-examples", classification_examples),
    ("copy-intersection", copy_intersection),
    ("covering-distance-sandwich", covering_distance_sandwich),
    ("distance-formula-general", distance_formula_general),
    ("distance-formula-tree", distance_formula_tree),
    ("loxodromic-free", loxodromic_free),
    ("normal-form", normal_form),
    ("power-growth", power_growth),
    ("snapshot-girth", snapshot_girth),
    ("square-complete-bipartite", square_complete_bipartite),
    ("syllable-via-star", syllable_via_star),
];

pub fn check_tags() -> Vec<&'static str> {
    CHECKS.iter().map(|(t, _)| *t).collect()
}

/// Runs every check with `samples` random cases each (where sampling
/// applies). Each check draws from its own stream derived from `seed`, so
/// the report does not depend on scheduling.
pub fn verify_all(seed: u64, samples: usize) -> VerifyReport {
    let checks: Vec<Check> = CHECKS
        .par_iter()
        .enumerate()
        .map(|(i, (tag, f))| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64 + 1);
            match f(&mut rng, samples) {
                Ok((pass, cases, detail)) => Check {
                    tag,
                    pass,
                    cases,
                    detail,
                },
                Err(e) => Check {
                    tag,
                    pass: false,
                    cases: 0,
                    detail: format!("error: {e}"),
                },
            }
        })
        .collect();
    VerifyReport {
        seed,
        samples,
        pass: checks.iter().all(|c| c.pass),
        checks,
    }
}

fn outcome(failures: usize, cases: usize, extra: String) -> Result<(bool, usize, String)> {
    Ok((failures == 0, cases, format!("{failures} failures; {extra}")))
}

fn c5() -> Raag {
    Raag::new(Graph::cycle(5))
}

/// A random rearrangement of `w` by swaps of adjacent commuting letters,
/// with a cancelling pair inserted.
fn scramble(rng: &mut ChaCha8Rng, raag: &Raag, w: &[Letter]) -> Vec<Letter> {
    let g = raag.graph();
    let mut w = w.to_vec();
    for _ in 0..3 * w.len() {
        if w.len() < 2 {
            break;
        }
        let i = rng.gen_range(0..w.len() - 1);
        if g.adjacent(w[i].vertex(), w[i + 1].vertex()) {
            w.swap(i, i + 1);
        }
    }
    let l = Letter::new(rng.gen_range(0..g.n()), rng.gen_bool(0.5));
    let at = rng.gen_range(0..=w.len());
    w.splice(at..at, [l, l.inverse()]);
    w
}

fn normal_form(rng: &mut ChaCha8Rng, samples: usize) -> Result<(bool, usize, String)> {
    let mut fails = 0;
    let mut cases = 0;
    for g in [Graph::cycle(5), Graph::path(4), Graph::cycle(4)] {
        let r = Raag::new(g);
        for _ in 0..samples {
            let len = rng.gen_range(0..=10);
            let w = random_word(rng, r.graph().n(), len);
            let e = r.reduce(&w);
            let again = r.reduce(e.letters());
            let other = r.reduce(&scramble(rng, &r, &w));
            fails += usize::from(again != e || other != e);
            cases += 1;
        }
    }
    outcome(
        fails,
        cases,
        "reduction is idempotent and ignores commutations".into(),
    )
}

fn syllable_via_star(rng: &mut ChaCha8Rng, samples: usize) -> Result<(bool, usize, String)> {
    let mut fails = 0;
    let mut cases = 0;
    for g in [Graph::cycle(5), Graph::path(4), Graph::path(3)] {
        let r = Raag::new(g);
        for _ in 0..samples {
            let e = random_element(rng, &r, 10);
            fails += usize::from(r.syllable_via_star(&e)? != e.syllable_length());
            cases += 1;
        }
    }
    outcome(
        fails,
        cases,
        "minimal syllable sum over shortest star factorizations".into(),
    )
}

fn covering_distance_sandwich(rng: &mut ChaCha8Rng, samples: usize) -> Result<(bool, usize, String)> {
    let mut fails = 0;
    let mut cases = 0;
    for g in [Graph::cycle(5), Graph::path(4)] {
        let r = Raag::new(g);
        for _ in 0..samples {
            let v = rng.gen_range(0..r.graph().n());
            let g = random_element(rng, &r, 5);
            let x = ExtVertex::base_vertex(v);
            let d = extension::covering_distance_exact(&r, &x, &extension::act(&r, &x, &g));
            let s = r.star_length(&g);
            fails += usize::from(d + 1 < s || d > s + 1);
            cases += 1;
        }
    }
    outcome(
        fails,
        cases,
        "star length minus one to star length plus one".into(),
    )
}

fn snapshot_girth(_: &mut ChaCha8Rng, _: usize) -> Result<(bool, usize, String)> {
    let mut found = vec![];
    for n in [5, 6] {
        let s = ExtSnapshot::build(&Raag::new(Graph::cycle(n)), 3, 1)?;
        found.push((n, s.girth()));
    }
    let fails = found.iter().filter(|(n, g)| *g != Some(*n)).count();
    outcome(fails, found.len(), format!("(n, girth) = {found:?}"))
}

fn square_complete_bipartite(_: &mut ChaCha8Rng, _: usize) -> Result<(bool, usize, String)> {
    let s = ExtSnapshot::build(&Raag::new(Graph::cycle(4)), 2, 1)?;
    let side = |i: usize| s.vertex(i).base % 2;
    let n = s.vertex_count();
    let mut fails = 0;
    for i in 0..n {
        for j in i + 1..n {
            let edge = s.neighbors(i).binary_search(&j).is_ok();
            fails += usize::from(edge != (side(i) != side(j)));
        }
    }
    outcome(fails, n, format!("{n} vertices, {} edges", s.edge_count()))
}

fn classification_examples(rng: &mut ChaCha8Rng, samples: usize) -> Result<(bool, usize, String)> {
    let p4 = Raag::new(Graph::path(4));
    let ad = p4.parse("a d")?;
    let lox = classify(&p4, &ad).kind == Kind::Loxodromic;
    let c4 = Raag::new(Graph::cycle(4));
    let abcd = c4.parse("a b c d")?;
    let ell = classify(&c4, &abcd).kind == Kind::Elliptic;
    let mut fixed = 0;
    for _ in 0..samples {
        let x = extension::canonical_vertex(&c4, rng.gen_range(0..4), &random_element(rng, &c4, 6));
        for n in [1, 2] {
            fixed += usize::from(extension::act(&c4, &x, &c4.pow(&abcd, n)) == x);
        }
    }
    let fails = usize::from(!lox) + usize::from(!ell) + fixed;
    outcome(fails, 2 + 2 * samples, format!("{fixed} fixed vertices"))
}

fn power_growth(rng: &mut ChaCha8Rng, samples: usize) -> Result<(bool, usize, String)> {
    let r = c5();
    let n_v = r.graph().n();
    let (mut lox, mut ell, mut fails) = (0, 0, 0);
    let ns: Vec<u32> = (1..=12).chain([25, 50, 100]).collect();
    let mut tries = 0;
    while (lox < samples || ell < samples) && tries < 100 * samples {
        tries += 1;
        let g = random_element(rng, &r, 4);
        match classify(&r, &g).kind {
            Kind::Loxodromic if lox < samples => {
                lox += 1;
                let bad = power_star_lengths(&r, &g, &ns)
                    .iter()
                    .any(|&(n, s)| 2 * n_v * n_v * s <= n as usize);
                fails += usize::from(bad);
            }
            Kind::Elliptic if ell < samples => {
                ell += 1;
                let bad = power_star_lengths(&r, &g, &[1, 2, 3, 4, 5, 6])
                    .iter()
                    .any(|&(_, s)| s > 2);
                fails += usize::from(bad);
            }
            _ => {}
        }
    }
    outcome(fails, lox + ell, format!("{lox} loxodromic, {ell} elliptic"))
}

fn bounded_geodesic_image(rng: &mut ChaCha8Rng, samples: usize) -> Result<(bool, usize, String)> {
    let seed = rng.gen();
    let c = link::bgit_scan(&c5(), 3, 1, samples, seed)?;
    let t = link::bgit_scan(&Raag::new(Graph::path(4)), 3, 1, samples, seed)?;
    let g = random_girth5_graph(rng, 6, 1);
    let o = link::bgit_scan(&Raag::new(g), 3, 1, samples, seed)?;
    let fails = c.violations + o.violations + t.violations + usize::from(t.max_link_diameter != 0);
    outcome(
        fails,
        c.samples.len() + t.samples.len() + o.samples.len(),
        format!(
            "max link diameter {} / {} / tree {}",
            c.max_link_diameter, o.max_link_diameter, t.max_link_diameter
        ),
    )
}

fn distance_formula_tree(rng: &mut ChaCha8Rng, samples: usize) -> Result<(bool, usize, String)> {
    let mut fails = 0;
    let mut cases = 0;
    for g in [Graph::path(3), Graph::path(4)] {
        let r = Raag::new(g);
        for _ in 0..samples {
            let k = rng.gen_range(0..=20);
            let e = random_syllables(rng, &r, k, 3);
            fails += usize::from(!distance::tree_distance_formula_check(&r, &e)?.pass);
            cases += 1;
        }
    }
    outcome(fails, cases, "two-sided comparison with syllable length".into())
}

fn distance_formula_general(rng: &mut ChaCha8Rng, samples: usize) -> Result<(bool, usize, String)> {
    let r = c5();
    let mut fails = 0;
    for _ in 0..samples {
        let k = rng.gen_range(1..=15);
        let e = random_syllables(rng, &r, k, 3);
        if e.is_identity() {
            continue;
        }
        let cert = distance::build_quasi_geodesic(&r, &e)?;
        fails += usize::from(!distance::general_distance_formula_check(&r, &cert)?.pass);
    }
    outcome(fails, samples, "window sum and quasi-geodesic certificate".into())
}

fn cancellation_cardinality(rng: &mut ChaCha8Rng, samples: usize) -> Result<(bool, usize, String)> {
    let rep = cancel::acyl_sample(&c5(), 1, 1, 2, 4, samples.div_ceil(5), rng.gen())?;
    outcome(
        rep.violations,
        rep.trials.len(),
        format!("max count {} against bound {}", rep.max_count, rep.bound),
    )
}

fn cancellation_round_trip(rng: &mut ChaCha8Rng, samples: usize) -> Result<(bool, usize, String)> {
    let r = c5();
    let ball = cancel::truncated_ball(&r, 1, 4, 2, 100_000)?;
    let (mut fails, mut cases) = (0, 0);
    for _ in 0..samples {
        let x = random_syllables(rng, &r, 12, 2);
        let c = ball.choose(rng).expect("ball is nonempty");
        let y = r.mul(&r.inv(c), &r.inv(&x));
        if !cancel::hypothesis_holds(&r, &x, &y, 1, 1) {
            continue;
        }
        cases += 1;
        let ok = (|| -> Result<bool> {
            let Some(seq) = cancel::find_cancellation(&r, c, &x, &y, 1)? else {
                return Ok(false);
            };
            let m = cancel::maximalize(&r, c, &seq)?;
            let (p, q) = m.supports();
            let rec = cancel::support_determines(&r, &x, &y, &m.vertices, &p, &q, 1)?;
            Ok(rec.element == *c && m.is_maximal(&r, c))
        })()?;
        fails += usize::from(!ok);
    }
    outcome(
        fails,
        cases,
        "sequence found, maximalized, rebuilt from supports".into(),
    )
}

fn loxodromic_free(rng: &mut ChaCha8Rng, _: usize) -> Result<(bool, usize, String)> {
    let r = c5();
    let mut lambdas: Vec<Element> = vec![];
    while lambdas.len() < 2 {
        let g = random_element(rng, &r, 4);
        if classify(&r, &g).kind == Kind::Loxodromic && lambdas.iter().all(|l| !r.commutes(l, &g)) {
            lambdas.push(g);
        }
    }
    let rel = sample_free_relations(&r, &lambdas, 2, 4)?;
    let names: Vec<String> = lambdas.iter().map(|l| r.format(l)).collect();
    outcome(rel.len(), 1, format!("generators {names:?}"))
}

fn copy_intersection(rng: &mut ChaCha8Rng, samples: usize) -> Result<(bool, usize, String)> {
    let r = c5();
    let mut fails = 0;
    for _ in 0..samples {
        let g = random_element(rng, &r, 5);
        fails +=
            usize::from(extension::copy_intersection(&r, &g)? != extension::copy_intersection_direct(&r, &g));
    }
    outcome(
        fails,
        samples,
        "case analysis agrees with direct intersection".into(),
    )
}
