use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extension::{
    act, adjacent, canonical_vertex, covering_distance_exact, free_canonical, free_distance, Budget,
    ExtSnapshot, ExtVertex, DEFAULT_VERTEX_CAP,
};
use crate::graph::{Graph, VertexSet};
use crate::word::{Element, Letter, Raag};

fn require_standing(g: &Graph) -> Result<()> {
    if g.n() < 2 || !g.is_connected() {
        return Err(Error::Precondition(
            "graph must be connected with at least two vertices".into(),
        ));
    }
    if !g.is_triangle_free() || !g.is_square_free() {
        return Err(Error::Precondition(
            "graph must be triangle- and square-free".into(),
        ));
    }
    Ok(())
}

/// Position of `p`, a neighbour of `center`, inside the link of `center`,
/// written as a vertex of the extension graph of the discrete graph
/// `lk(center.base)`: translate `center` back to its base vertex, then drop the
/// letters of that vertex, which commute with the whole star.
pub fn link_coordinates(raag: &Raag, center: &ExtVertex, p: &ExtVertex) -> Result<ExtVertex> {
    if !adjacent(raag, center, p) {
        return Err(Error::Invalid("point is not in the link".into()));
    }
    let q = act(raag, p, &raag.inv(&center.conj));
    let v = center.base;
    let kept: Vec<Letter> = q
        .conj
        .letters()
        .iter()
        .copied()
        .filter(|l| l.vertex() != v)
        .collect();
    let t = raag.reduce(&kept);
    Ok(ExtVertex {
        base: q.base,
        conj: free_canonical(raag, q.base, &t),
    })
}

/// Inverse of `link_coordinates` for the base vertex `v`.
pub fn from_link_coordinates(raag: &Raag, v: usize, x: &ExtVertex) -> Result<ExtVertex> {
    let lk = raag.graph().link(v);
    if !lk.contains(x.base) || !x.conj.support().is_subset(lk) {
        return Err(Error::Invalid("not a link vertex".into()));
    }
    Ok(canonical_vertex(raag, x.base, &x.conj))
}

/// Distance between two neighbours of `center` in the link metric.
pub fn link_distance(raag: &Raag, center: &ExtVertex, p: &ExtVertex, q: &ExtVertex) -> Result<usize> {
    free_distance(
        raag,
        &link_coordinates(raag, center, p)?,
        &link_coordinates(raag, center, q)?,
    )
}

/// The connected models around a vertex `v`: `Z_v` built from `Γ - v` with
/// boundary joins, and the collapsed `c_v`.
#[derive(Clone, Debug)]
pub struct LinkModel {
    pub v: usize,
    pub z: Graph,
    /// Index in `z` of each vertex of the graph other than `v`.
    pub z_index: Vec<Option<usize>>,
    /// Link vertices of `v`, as indices in `z`.
    pub link: VertexSet,
    /// `(x, B_x)` per link vertex `x` of the graph, `B_x` given in `z`.
    pub boundary: Vec<(usize, VertexSet)>,
    /// Pendant vertices added for link vertices of degree one.
    pub patches: VertexSet,
    pub diam_z: usize,
    pub c: Graph,
    /// Link vertices of `v` as indices in `c`.
    pub c_link: VertexSet,
}

#[derive(Serialize)]
pub struct LinkModelJson {
    pub vertex: String,
    pub z: Graph,
    pub boundary: Vec<(String, Vec<String>)>,
    pub patches: Vec<String>,
    pub diam_z: usize,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "M_prime")]
    pub m_prime: usize,
    pub c: Graph,
}

fn fresh_label(taken: &[String], base: String) -> String {
    let mut l = base;
    while taken.contains(&l) {
        l.push('\'');
    }
    l
}

impl LinkModel {
    pub fn build(g: &Graph, v: usize) -> Result<Self> {
        require_standing(g)?;
        let n = g.n();
        let mut labels = vec![];
        let mut z_index = vec![None; n];
        for u in (0..n).filter(|&u| u != v) {
            z_index[u] = Some(labels.len());
            labels.push(g.label(u).to_string());
        }
        let mut edges = vec![];
        for (a, b) in g.edges() {
            if let (Some(a), Some(b)) = (z_index[a], z_index[b]) {
                edges.push((a, b));
            }
        }
        let mut patches = VertexSet::EMPTY;
        let mut boundary = vec![];
        for x in g.link(v).iter() {
            let zx = z_index[x].unwrap();
            let mut bx: VertexSet = g.link(x).without(v).iter().map(|u| z_index[u].unwrap()).collect();
            if g.degree(x) == 1 {
                let p = labels.len();
                labels.push(fresh_label(&labels, format!("{}'", g.label(x))));
                edges.push((zx, p));
                patches.insert(p);
                bx.insert(p);
            }
            boundary.push((x, bx));
        }
        for (i, (_, bx)) in boundary.iter().enumerate() {
            for (_, by) in &boundary[i + 1..] {
                for z in bx.iter() {
                    for w in by.iter() {
                        edges.push((z, w));
                    }
                }
            }
        }
        if labels.len() > crate::graph::MAX_VERTICES {
            return Err(Error::TooManyVertices(labels.len()));
        }
        let z = Graph::from_edges(labels, &edges)?;
        let diam_z = z
            .diameter()
            .ok_or_else(|| Error::Invalid("link model is disconnected".into()))?;
        let link: VertexSet = g.link(v).iter().map(|x| z_index[x].unwrap()).collect();

        // c_v: link vertices, one collapsed vertex b_x per boundary set.
        let k = boundary.len();
        let mut c_labels: Vec<String> = g.link(v).iter().map(|x| g.label(x).to_string()).collect();
        for &(x, _) in &boundary {
            let l = fresh_label(&c_labels, format!("B_{}", g.label(x)));
            c_labels.push(l);
        }
        let mut c_edges = vec![];
        for i in 0..k {
            c_edges.push((i, k + i));
            for j in i + 1..k {
                c_edges.push((k + i, k + j));
            }
        }
        let c = Graph::from_edges(c_labels, &c_edges)?;
        Ok(LinkModel {
            v,
            z,
            z_index,
            link,
            boundary,
            patches,
            diam_z,
            c,
            c_link: VertexSet::full(k),
        })
    }

    /// `3 diam(Z_v)`, the projection bound for a single far vertex.
    pub fn m(&self) -> usize {
        3 * self.diam_z
    }

    /// `18 diam(Z_v)`, the bound for connected sets outside the 2-ball.
    pub fn m_prime(&self) -> usize {
        18 * self.diam_z
    }

    /// `Y_v`: conjugates of `Z_v` by the subgroup on the link of `v`.
    pub fn y_snapshot(&self, max_len: usize, max_exp: usize) -> Result<ExtSnapshot> {
        ExtSnapshot::build_with(
            &Raag::new(self.z.clone()),
            max_len,
            max_exp,
            self.link,
            DEFAULT_VERTEX_CAP,
        )
    }

    /// `C_v`: conjugates of `c_v` by the subgroup on the link of `v`.
    pub fn c_snapshot(&self, max_len: usize, max_exp: usize) -> Result<ExtSnapshot> {
        ExtSnapshot::build_with(
            &Raag::new(self.c.clone()),
            max_len,
            max_exp,
            self.c_link,
            DEFAULT_VERTEX_CAP,
        )
    }

    /// Carries link coordinates (a vertex over the link of `v` in the original
    /// graph) into `Z_v` or `c_v`, whose link copies are indexed by `map`.
    fn carry(&self, target: &Raag, map: impl Fn(usize) -> usize, x: &ExtVertex) -> ExtVertex {
        let letters: Vec<Letter> = x
            .conj
            .letters()
            .iter()
            .map(|l| Letter::new(map(l.vertex()), l.is_positive()))
            .collect();
        canonical_vertex(target, map(x.base), &target.reduce(&letters))
    }

    pub fn to_y(&self, y: &Raag, x: &ExtVertex) -> ExtVertex {
        self.carry(y, |u| self.z_index[u].unwrap(), x)
    }

    pub fn to_c(&self, c: &Raag, x: &ExtVertex) -> ExtVertex {
        let pos = |u: usize| self.boundary.iter().position(|&(x, _)| x == u).unwrap();
        self.carry(c, pos, x)
    }

    pub fn to_json(&self, g: &Graph) -> LinkModelJson {
        LinkModelJson {
            vertex: g.label(self.v).to_string(),
            z: self.z.clone(),
            boundary: self
                .boundary
                .iter()
                .map(|&(x, b)| (g.label(x).to_string(), self.z.set_labels(b)))
                .collect(),
            patches: self.z.set_labels(self.patches),
            diam_z: self.diam_z,
            m: self.m(),
            m_prime: self.m_prime(),
            c: self.c.clone(),
        }
    }
}

/// Points of `lk(center)` met by snapshot geodesics from `center` to any of
/// `targets`, given BFS distances from `center`. Sorted snapshot ids.
pub fn projection_points(s: &ExtSnapshot, dist: &[Option<usize>], targets: &[usize]) -> Vec<usize> {
    let mut on = vec![false; s.vertex_count()];
    let mut frontier: Vec<usize> = targets.iter().copied().filter(|&t| dist[t].is_some()).collect();
    for &t in &frontier {
        on[t] = true;
    }
    let mut out = vec![];
    while !frontier.is_empty() {
        let mut next = vec![];
        for u in frontier {
            let d = dist[u].unwrap();
            if d == 1 {
                out.push(u);
                continue;
            }
            for &w in s.neighbors(u) {
                if dist[w] == Some(d - 1) && !on[w] {
                    on[w] = true;
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Largest pairwise link distance among snapshot vertices around `center`.
pub fn link_diameter(s: &ExtSnapshot, center: &ExtVertex, points: &[usize]) -> Result<usize> {
    let raag = s.raag();
    let coords: Vec<ExtVertex> = points
        .iter()
        .map(|&p| link_coordinates(raag, center, s.vertex(p)))
        .collect::<Result<_>>()?;
    let mut best = 0;
    for i in 0..coords.len() {
        for j in i + 1..coords.len() {
            best = best.max(free_distance(raag, &coords[i], &coords[j])?);
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, Serialize)]
pub struct Projection {
    pub center: String,
    pub target: String,
    pub distance: usize,
    pub distance_exact: bool,
    pub points: Vec<String>,
    pub link_diameter: usize,
}

/// `π_center(target)` inside a snapshot.
pub fn project(s: &ExtSnapshot, center: &ExtVertex, target: &ExtVertex) -> Result<Projection> {
    if center == target {
        return Err(Error::Invalid("target equals the centre".into()));
    }
    let raag = s.raag();
    let ci = s
        .id(center)
        .ok_or_else(|| Error::Invalid("centre is not in the snapshot".into()))?;
    let ti = s
        .id(target)
        .ok_or_else(|| Error::Invalid("target is not in the snapshot".into()))?;
    let dist = s.bfs(ci);
    let d = dist[ti].ok_or_else(|| Error::Invalid("target not reachable in the snapshot".into()))?;
    let pts = projection_points(s, &dist, &[ti]);
    Ok(Projection {
        center: center.display(raag),
        target: target.display(raag),
        distance: d,
        distance_exact: d <= 2 || d == covering_distance_exact(raag, center, target),
        points: pts.iter().map(|&p| s.vertex(p).display(raag)).collect(),
        link_diameter: link_diameter(s, center, &pts)?,
    })
}

/// Does removing `st(z)` from the snapshot separate `x` from `y`?
pub fn star_separates(s: &ExtSnapshot, z: usize, x: usize, y: usize) -> bool {
    let mut blocked = vec![false; s.vertex_count()];
    blocked[z] = true;
    for &w in s.neighbors(z) {
        blocked[w] = true;
    }
    if blocked[x] || blocked[y] {
        return false;
    }
    let mut seen = blocked;
    seen[x] = true;
    let mut q = VecDeque::from([x]);
    while let Some(u) = q.pop_front() {
        if u == y {
            return false;
        }
        for &w in s.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                q.push_back(w);
            }
        }
    }
    true
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexBound {
    pub vertex: String,
    pub diam_z: usize,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "M_prime")]
    pub m_prime: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectionSample {
    pub center: String,
    pub target: String,
    pub distance: usize,
    pub points: usize,
    pub link_diameter: usize,
    /// Diameter of the same points in the `Y_v` snapshot, an upper bound.
    pub y_diameter: Option<usize>,
    pub bound: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SegmentSample {
    pub center: String,
    pub from: String,
    pub to: String,
    pub length: usize,
    pub points: usize,
    pub link_diameter: usize,
    pub bound: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BgitReport {
    pub budget: Budget,
    pub snapshot_vertices: usize,
    pub is_tree: bool,
    pub bounds: Vec<VertexBound>,
    pub samples: Vec<ProjectionSample>,
    pub segments: Vec<SegmentSample>,
    pub max_link_diameter: usize,
    pub max_segment_diameter: usize,
    pub violations: usize,
    pub note: String,
}

struct Center {
    id: usize,
    model: LinkModel,
    dist: Vec<Option<usize>>,
    far: Vec<usize>,
    y: Option<(Raag, ExtSnapshot)>,
}

/// Samples far pairs `(v, v')` with `v` a base vertex and `d(v, v') >= 3`, and
/// checks `diam π_v(v') <= 3 diam(Z_v)` in the link metric. Then samples
/// snapshot geodesic segments that stay outside the closed 2-ball of `v` and
/// checks the projection of the whole segment against `18 diam(Z_v)`.
pub fn bgit_scan(
    raag: &Raag,
    max_len: usize,
    max_exp: usize,
    samples: usize,
    seed: u64,
) -> Result<BgitReport> {
    let g = raag.graph();
    require_standing(g)?;
    let s = ExtSnapshot::build(raag, max_len, max_exp)?;
    let centers: Vec<Center> = (0..g.n())
        .map(|v| -> Result<Center> {
            let id = s.id(&ExtVertex::base_vertex(v)).unwrap();
            let dist = s.bfs(id);
            let far = (0..s.vertex_count())
                .filter(|&u| dist[u].is_some_and(|d| d >= 3))
                .collect();
            let model = LinkModel::build(g, v)?;
            let y = if g.link(v).len() >= 2 {
                let y = model.y_snapshot(max_len, max_exp)?;
                Some((y.raag().clone(), y))
            } else {
                None
            };
            Ok(Center {
                id,
                model,
                dist,
                far,
                y,
            })
        })
        .collect::<Result<_>>()?;
    let bounds = centers
        .iter()
        .map(|c| VertexBound {
            vertex: g.label(c.model.v).to_string(),
            diam_z: c.model.diam_z,
            m: c.model.m(),
            m_prime: c.model.m_prime(),
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let usable: Vec<usize> = (0..centers.len())
        .filter(|&i| !centers[i].far.is_empty())
        .collect();
    let mut pairs = vec![];
    let mut segs = vec![];
    if !usable.is_empty() {
        for _ in 0..samples {
            let c = *usable.choose(&mut rng).unwrap();
            pairs.push((c, *centers[c].far.choose(&mut rng).unwrap()));
        }
        // Segments: a snapshot geodesic between two far vertices, kept when it
        // avoids the closed 2-ball. Bounded retries keep the scan finite.
        let mut tries = 0;
        while segs.len() < samples && tries < 20 * samples {
            tries += 1;
            let c = *usable.choose(&mut rng).unwrap();
            let far = &centers[c].far;
            let a = far[rng.gen_range(0..far.len())];
            let b = far[rng.gen_range(0..far.len())];
            if let Some(path) = snapshot_geodesic(&s, a, b) {
                if path.iter().all(|&u| centers[c].dist[u].is_some_and(|d| d >= 3)) {
                    segs.push((c, path));
                }
            }
        }
    }

    let sample_out: Vec<ProjectionSample> = pairs
        .par_iter()
        .map(|&(c, t)| -> Result<ProjectionSample> {
            let ctr = &centers[c];
            let center = s.vertex(ctr.id);
            let pts = projection_points(&s, &ctr.dist, &[t]);
            let link_diameter = link_diameter(&s, center, &pts)?;
            let y_diameter = ctr
                .y
                .as_ref()
                .and_then(|(yr, ys)| y_diameter(&ctr.model, yr, ys, raag, center, &s, &pts));
            let bound = ctr.model.m();
            Ok(ProjectionSample {
                center: center.display(raag),
                target: s.vertex(t).display(raag),
                distance: ctr.dist[t].unwrap(),
                points: pts.len(),
                link_diameter,
                y_diameter,
                bound,
                pass: link_diameter <= bound,
            })
        })
        .collect::<Result<_>>()?;
    let seg_out: Vec<SegmentSample> = segs
        .par_iter()
        .map(|(c, path)| -> Result<SegmentSample> {
            let ctr = &centers[*c];
            let center = s.vertex(ctr.id);
            let pts = projection_points(&s, &ctr.dist, path);
            let d = link_diameter(&s, center, &pts)?;
            let bound = ctr.model.m_prime();
            Ok(SegmentSample {
                center: center.display(raag),
                from: s.vertex(path[0]).display(raag),
                to: s.vertex(*path.last().unwrap()).display(raag),
                length: path.len() - 1,
                points: pts.len(),
                link_diameter: d,
                bound,
                pass: d <= bound,
            })
        })
        .collect::<Result<_>>()?;
    let violations =
        sample_out.iter().filter(|x| !x.pass).count() + seg_out.iter().filter(|x| !x.pass).count();
    Ok(BgitReport {
        budget: s.budget,
        snapshot_vertices: s.vertex_count(),
        is_tree: g.is_tree(),
        bounds,
        max_link_diameter: sample_out.iter().map(|x| x.link_diameter).max().unwrap_or(0),
        max_segment_diameter: seg_out.iter().map(|x| x.link_diameter).max().unwrap_or(0),
        samples: sample_out,
        segments: seg_out,
        violations,
        note: "geodesics are those of the finite snapshot; segment samples cover only geodesic segments, \
               not all connected sets outside the 2-ball"
            .into(),
    })
}

/// Diameter of projection points inside the `Y_v` snapshot, when all of them
/// land in it and are mutually reachable.
fn y_diameter(
    model: &LinkModel,
    yr: &Raag,
    ys: &ExtSnapshot,
    raag: &Raag,
    center: &ExtVertex,
    s: &ExtSnapshot,
    pts: &[usize],
) -> Option<usize> {
    let ids: Vec<usize> = pts
        .iter()
        .map(|&p| {
            let x = link_coordinates(raag, center, s.vertex(p)).ok()?;
            ys.id(&model.to_y(yr, &x))
        })
        .collect::<Option<_>>()?;
    let mut best = 0;
    for (k, &i) in ids.iter().enumerate() {
        let d = ys.bfs(i);
        for &j in &ids[k + 1..] {
            best = best.max(d[j]?);
        }
    }
    Some(best)
}

/// A shortest path in the snapshot, preferring smaller ids.
pub fn snapshot_geodesic(s: &ExtSnapshot, a: usize, b: usize) -> Option<Vec<usize>> {
    let dist = s.bfs(b);
    dist[a]?;
    let mut path = vec![a];
    let mut u = a;
    while u != b {
        let d = dist[u].unwrap();
        u = *s.neighbors(u).iter().find(|&&w| dist[w] == Some(d - 1)).unwrap();
        path.push(u);
    }
    Some(path)
}

#[derive(Clone, Debug, Serialize)]
pub struct SquareDemo {
    pub budget: Budget,
    pub link_size_in_snapshot: usize,
    pub projection_size: usize,
    pub link_diameter: usize,
    pub projection_is_whole_link: bool,
}

/// The square graph violates the hypotheses: there `π_a(c)` is the whole
/// link of `a`, so its diameter grows with the budget.
pub fn square_demonstration(max_len: usize, max_exp: usize) -> Result<SquareDemo> {
    let raag = Raag::new(Graph::cycle(4));
    let s = ExtSnapshot::build(&raag, max_len, max_exp)?;
    let a = ExtVertex::base_vertex(0);
    let ai = s.id(&a).unwrap();
    let ci = s.id(&ExtVertex::base_vertex(2)).unwrap();
    let dist = s.bfs(ai);
    let pts = projection_points(&s, &dist, &[ci]);
    let link = s.neighbors(ai).len();
    // The link of a in C4^e is the free product on b, d; measure it there.
    let coords: Vec<ExtVertex> = pts
        .iter()
        .map(|&p| link_coordinates(&raag, &a, s.vertex(p)))
        .collect::<Result<_>>()?;
    let mut diam = 0;
    for i in 0..coords.len() {
        for j in i + 1..coords.len() {
            diam = diam.max(free_distance(&raag, &coords[i], &coords[j])?);
        }
    }
    Ok(SquareDemo {
        budget: s.budget,
        link_size_in_snapshot: link,
        projection_size: pts.len(),
        link_diameter: diam,
        projection_is_whole_link: pts.len() == link,
    })
}

/// Checks `syl(g) - 1 <= d_{C_v}(x, x^g) <= diam(c_v) (syl(g) + 1)` for link
/// vertices `x` and conjugators `g` over the link, inside a `C_v` snapshot.
/// Returns the number of checked pairs, or the first failure.
pub fn collapsed_model_sandwich(raag: &Raag, model: &LinkModel, max_len: usize) -> Result<usize> {
    let cs = model.c_snapshot(max_len, 1)?;
    let cr = cs.raag().clone();
    let d = model.c.diameter().unwrap_or(0);
    let lk = raag.graph().link(model.v);
    let mut checked = 0;
    for k in &cs.conjugators {
        let g = k.letters().iter().map(|l| {
            let x = model.boundary[l.vertex()].0;
            Letter::new(x, l.is_positive())
        });
        let g: Element = raag.reduce(&g.collect::<Vec<_>>());
        let syl = g.syllable_length();
        for x in lk.iter() {
            let base = ExtVertex::base_vertex(x);
            let moved = ExtVertex {
                base: x,
                conj: free_canonical(raag, x, &g),
            };
            let (i, j) = (
                cs.id(&model.to_c(&cr, &base)).unwrap(),
                cs.id(&model.to_c(&cr, &moved)).unwrap(),
            );
            let dist = cs.bfs(i)[j].ok_or_else(|| Error::Invalid("C_v snapshot disconnected".into()))?;
            // Snapshot distances only bound from above: a lower-bound failure is
            // real, an upper-bound failure could be a budget artifact.
            if dist + 1 < syl || dist > d * (syl + 1) {
                return Err(Error::Invalid(format!(
                    "collapsed model sandwich fails at x={}, g={}: distance {dist}, syl {syl}",
                    raag.graph().label(x),
                    raag.format(&g)
                )));
            }
            checked += 1;
        }
    }
    Ok(checked)
}
