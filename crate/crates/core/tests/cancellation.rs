#[path = "oracles/mod.rs"]
mod oracles;

use raag_core::cancel::{
    acyl_sample, cardinality_bound, find_cancellation, hypothesis_holds, maximalize, support_determines,
    truncated_ball, CancellationSequence,
};
use raag_core::sample::{random_element, random_syllables};
use raag_core::{Element, Graph, Raag};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use oracles::{prefixes, suffixes};

fn c5() -> Raag {
    Raag::new(Graph::cycle(5))
}

/// The defining conditions, checked from scratch. Any `w` works for the
/// middle condition once the outer parts peel off additively, so only that
/// is tested.
fn valid(
    r: &Raag,
    g: &Element,
    x: &Element,
    y: &Element,
    vs: &[usize],
    gp: &[Element],
    hp: &[Element],
) -> bool {
    let gr = r.graph();
    let s = vs.len();
    let prod = r.mul(&r.mul_all(gp), &r.mul_all(hp));
    let in_stars = (0..s).all(|i| {
        let st = gr.star(vs[i]);
        gp[i].support().is_subset(st) && hp[i].support().is_subset(st)
    });
    let crossing = (0..s).all(|i| {
        (i + 1..s).all(|j| {
            hp[i]
                .support()
                .iter()
                .all(|a| gp[j].support().iter().all(|b| gr.adjacent(a, b)))
        })
    });
    let glen: usize = gp.iter().map(Element::len).sum();
    let hlen: usize = hp.iter().map(Element::len).sum();
    let x_peels = r.mul(x, &r.mul_all(gp)).len() + glen == x.len();
    let y_peels = r.mul(&r.mul_all(hp), y).len() + hlen == y.len();
    prod == *g && in_stars && crossing && x_peels && y_peels
}

/// Splits of `e` into `s` pieces with additive lengths.
fn splits(r: &Raag, e: &Element, s: usize) -> Vec<Vec<Element>> {
    match s {
        1 => vec![vec![e.clone()]],
        2 => prefixes(r, e)
            .into_iter()
            .map(|p| vec![p.clone(), r.mul(&r.inv(&p), e)])
            .collect(),
        _ => unreachable!(),
    }
}

/// Every valid sequence for `g` against `x`, `y` over the given vertices.
fn all_sequences(
    r: &Raag,
    g: &Element,
    x: &Element,
    y: &Element,
    vs: &[usize],
) -> Vec<(Vec<Element>, Vec<Element>)> {
    let s = vs.len();
    let mut out = vec![];
    for tail in suffixes(r, x) {
        let gg = r.inv(&tail);
        let hh = r.mul(&r.inv(&gg), g);
        if r.mul(&hh, y).len() + hh.len() != y.len() {
            continue;
        }
        for gp in splits(r, &gg, s) {
            for hp in splits(r, &hh, s) {
                if valid(r, g, x, y, vs, &gp, &hp) {
                    out.push((gp.clone(), hp));
                }
            }
        }
    }
    out
}

fn key(gp: &[Element], hp: &[Element]) -> Vec<usize> {
    gp.iter()
        .map(Element::len)
        .chain(hp.iter().rev().map(Element::len))
        .collect()
}

#[test]
fn maximal_sequences_are_undominated_among_all_sequences() {
    let r = c5();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut instances, mut moved) = (0, 0);
    while instances < 300 {
        let x = random_element(&mut rng, &r, 6);
        let y = random_element(&mut rng, &r, 6);
        let tail = suffixes(&r, &x).choose(&mut rng).unwrap().clone();
        let head = prefixes(&r, &y).choose(&mut rng).unwrap().clone();
        let g = r.mul(&r.inv(&tail), &r.inv(&head));
        let s = rng.gen_range(1..=2);
        if g.is_identity() || r.star_length(&g) > s {
            continue;
        }
        let Some(seq) = find_cancellation(&r, &g, &x, &y, s).unwrap() else {
            continue;
        };
        instances += 1;
        let m = maximalize(&r, &g, &seq).unwrap();
        assert!(valid(&r, &g, &x, &y, &m.vertices, &m.g_parts, &m.h_parts));
        assert_eq!(maximalize(&r, &g, &m).unwrap(), m);
        moved += usize::from(m.key() != seq.key());
        let all = all_sequences(&r, &g, &x, &y, &m.vertices);
        assert!(all.contains(&(m.g_parts.clone(), m.h_parts.clone())));
        let mk = m.key();
        for (gp, hp) in &all {
            let k = key(gp, hp);
            let dominates = k.iter().zip(&mk).all(|(a, b)| a >= b);
            if dominates {
                assert_eq!(
                    (gp, hp),
                    (&m.g_parts, &m.h_parts),
                    "{} / {} / {}",
                    r.format(&x),
                    r.format(&g),
                    r.format(&y)
                );
            }
            // The library agrees on validity.
            let built =
                CancellationSequence::assemble(&r, &x, &y, m.vertices.clone(), gp.clone(), hp.clone())
                    .unwrap();
            built.check(&r, &g).unwrap();
        }
    }
    // Some instances must actually exercise the moves.
    assert!(moved > 0);
}

#[test]
fn a_commuting_letter_migrates_left_in_the_g_chain() {
    let r = c5();
    // b commutes with both a and c and lies in both stars.
    let x = r.parse("d d b^-1 c^-1 a^-1").unwrap();
    let g = r.parse("a c b").unwrap();
    let y = r.parse("e e").unwrap();
    let seq = CancellationSequence::assemble(
        &r,
        &x,
        &y,
        vec![0, 2],
        vec![r.parse("a").unwrap(), r.parse("c b").unwrap()],
        vec![Element::identity(), Element::identity()],
    )
    .unwrap();
    seq.check(&r, &g).unwrap();
    let m = maximalize(&r, &g, &seq).unwrap();
    assert_eq!(m.g_parts[0], r.parse("a b").unwrap());
    assert_eq!(m.g_parts[1], r.parse("c").unwrap());
    assert!(m.is_maximal(&r, &g));
}

#[test]
fn supports_of_maximal_sequences_rebuild_the_element() {
    let r = c5();
    let ball = truncated_ball(&r, 1, 4, 2, 100_000).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut cases, mut bounded) = (0, 0);
    for _ in 0..150 {
        let x = random_syllables(&mut rng, &r, 12, 2);
        let c = ball.choose(&mut rng).unwrap();
        let z = random_element(&mut rng, &r, 3);
        let y = r.mul(&r.mul(&r.inv(c), &r.inv(&x)), &z);
        if !hypothesis_holds(&r, &x, &y, 1, 1) {
            continue;
        }
        let Some(seq) = find_cancellation(&r, c, &x, &y, 1).unwrap() else {
            continue;
        };
        cases += 1;
        let m = maximalize(&r, c, &seq).unwrap();
        let (p, q) = m.supports();
        let rec = support_determines(&r, &x, &y, &m.vertices, &p, &q, 1).unwrap();
        assert_eq!(rec.element, *c);
        let short = r.star_length(&r.mul_all([&x, c, &y])) <= 1;
        assert_eq!(rec.member, short);
        // Absorbed with a short product: the overlap stays long.
        if short {
            let floor = r.star_length(&x).max(r.star_length(&y)) - 2;
            for e in [&m.w, &x, &y] {
                assert!(r.star_length(e) >= floor, "{}", r.format(e));
            }
            bounded += 1;
        }
    }
    assert!(cases > 50 && bounded > 20, "{cases} {bounded}");
}

#[test]
fn empty_supports_rebuild_the_identity() {
    let r = c5();
    let x = r.parse("a c e b d").unwrap();
    let rec = support_determines(&r, &x, &x, &[0], &[Default::default()], &[Default::default()], 1).unwrap();
    assert!(rec.element.is_identity());
}

#[test]
fn supports_outside_the_star_are_rejected() {
    let r = c5();
    let x = r.parse("a c e b d").unwrap();
    let bad = r.graph().set_of(&["c"]).unwrap();
    assert!(support_determines(&r, &x, &x, &[0], &[bad], &[Default::default()], 1).is_err());
}

#[test]
fn pentagon_cardinality_bound() {
    assert_eq!(cardinality_bound(5, 1), 5120);
    assert_eq!(cardinality_bound(5, 0), 1);
    let rep = acyl_sample(&c5(), 1, 1, 2, 4, 6, 3).unwrap();
    assert_eq!(rep.bound, 5120);
    assert!(rep.trials.iter().all(|t| t.truncated_within_absorbed));
    assert!(rep.max_count <= 5120);
    assert_eq!(rep.violations, 0);
}
