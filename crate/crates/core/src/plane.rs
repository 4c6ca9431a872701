//! Plane graphs given by rotation systems: face tracing, the Euler charge
//! identity, discharging, and separating short cycles.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::HalfInt;

/// Connected simple graph with a cyclic (counterclockwise) neighbor order at
/// every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneGraph {
    num_vertices: usize,
    rotation: Vec<Vec<usize>>,
}

/// A face as its closed boundary walk; consecutive entries are joined by an
/// edge and the last joins the first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Face {
    pub walk: Vec<usize>,
}

impl Face {
    pub fn degree(&self) -> usize {
        self.walk.len()
    }

    /// Distinct vertices on the boundary.
    pub fn vertices(&self) -> BTreeSet<usize> {
        self.walk.iter().copied().collect()
    }
}

impl PlaneGraph {
    pub fn new(rotation: Vec<Vec<usize>>) -> Result<Self> {
        let g = Self { num_vertices: rotation.len(), rotation };
        g.validate()?;
        Ok(g)
    }

    /// Rotation system of a straight-line drawing: neighbors sorted
    /// counterclockwise by angle.
    pub fn from_drawing(coords: &[(f64, f64)], edges: &[(usize, usize)]) -> Result<Self> {
        let n = coords.len();
        let mut rotation = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge [{u}, {v}] out of range")));
            }
            rotation[u].push(v);
            rotation[v].push(u);
        }
        for (v, nbrs) in rotation.iter_mut().enumerate() {
            let (x0, y0) = coords[v];
            nbrs.sort_by(|&a, &b| {
                let ta = (coords[a].1 - y0).atan2(coords[a].0 - x0);
                let tb = (coords[b].1 - y0).atan2(coords[b].0 - x0);
                ta.total_cmp(&tb)
            });
        }
        Self::new(rotation)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            num_vertices: usize,
            rotation: Vec<Vec<usize>>,
        }
        let raw: Raw = serde_json::from_str(text)
            .map_err(|e| Error::InvalidGraph(format!("malformed JSON: {e}")))?;
        if raw.rotation.len() != raw.num_vertices {
            return Err(Error::InvalidGraph(format!(
                "rotation has {} entries for {} vertices",
                raw.rotation.len(),
                raw.num_vertices
            )));
        }
        Self::new(raw.rotation)
    }

    fn validate(&self) -> Result<()> {
        let n = self.num_vertices;
        for (v, nbrs) in self.rotation.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for &w in nbrs {
                if w >= n {
                    return Err(Error::InvalidGraph(format!("vertex {v} lists neighbor {w}")));
                }
                if w == v {
                    return Err(Error::InvalidGraph(format!("loop at vertex {v}")));
                }
                if !seen.insert(w) {
                    return Err(Error::InvalidGraph(format!("vertex {v} lists {w} twice")));
                }
                if !self.rotation[w].contains(&v) {
                    return Err(Error::InvalidGraph(format!(
                        "{w} is a neighbor of {v} but not the reverse"
                    )));
                }
            }
        }
        if n > 0 {
            let mut seen = vec![false; n];
            let mut queue = VecDeque::from([0]);
            seen[0] = true;
            while let Some(v) = queue.pop_front() {
                for &w in &self.rotation[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            if seen.iter().any(|s| !s) {
                return Err(Error::InvalidGraph("graph is not connected".into()));
            }
        }
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.rotation.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn rotation(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rotation[u].contains(&v)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.num_edges());
        for (u, nbrs) in self.rotation.iter().enumerate() {
            out.extend(nbrs.iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        out
    }

    fn position(&self, v: usize, w: usize) -> usize {
        self.rotation[v].iter().position(|&x| x == w).expect("symmetric rotation")
    }
}

/// Traces the boundary walks of the rotation system without checking that
/// it is planar. After the dart `u -> v` the walk continues along the
/// neighbor preceding `u` in the rotation at `v`.
pub fn trace_faces(pg: &PlaneGraph) -> Vec<Face> {
    if pg.num_edges() == 0 {
        return vec![Face { walk: Vec::new() }];
    }
    let offsets: Vec<usize> = pg
        .rotation
        .iter()
        .scan(0, |acc, nbrs| {
            let o = *acc;
            *acc += nbrs.len();
            Some(o)
        })
        .collect();
    let dart = |u: usize, i: usize| offsets[u] + i;
    let total = pg.num_edges() * 2;
    let mut used = vec![false; total];
    let mut faces = Vec::new();
    for u in 0..pg.num_vertices {
        for i in 0..pg.rotation[u].len() {
            if used[dart(u, i)] {
                continue;
            }
            let mut walk = Vec::new();
            let (mut a, mut ai) = (u, i);
            while !used[dart(a, ai)] {
                used[dart(a, ai)] = true;
                walk.push(a);
                let b = pg.rotation[a][ai];
                let deg = pg.rotation[b].len();
                let back = pg.position(b, a);
                (a, ai) = (b, (back + deg - 1) % deg);
            }
            faces.push(Face { walk });
        }
    }
    faces
}

/// `V - E + F` of the surface the rotation system embeds in.
pub fn euler_characteristic(pg: &PlaneGraph) -> i64 {
    pg.num_vertices as i64 - pg.num_edges() as i64 + trace_faces(pg).len() as i64
}

/// Faces of a plane embedding. Fails unless `V - E + F = 2`.
pub fn faces(pg: &PlaneGraph) -> Result<Vec<Face>> {
    let f = trace_faces(pg);
    let chi = pg.num_vertices as i64 - pg.num_edges() as i64 + f.len() as i64;
    if chi != 2 {
        return Err(Error::Embedding(format!(
            "V - E + F = {} - {} + {} = {chi}, the rotation system is not planar",
            pg.num_vertices,
            pg.num_edges(),
            f.len()
        )));
    }
    Ok(f)
}

/// `sum_v (2 d(v) - 6) + sum_f (d(f) - 6)`; always -12 for a plane graph.
pub fn euler_charge_audit(pg: &PlaneGraph) -> Result<i64> {
    let f = faces(pg)?;
    let vertex: i64 = (0..pg.num_vertices).map(|v| 2 * pg.degree(v) as i64 - 6).sum();
    let face: i64 = f.iter().map(|f| f.degree() as i64 - 6).sum();
    Ok(vertex + face)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Element {
    Vertex(usize),
    Face(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Rule {
    /// A 2-vertex takes 1 from each adjacent 4-vertex.
    R1,
    /// A 4-face takes 1 from each 4-vertex on it.
    R2,
    /// A 5-face takes 1/2 from each 4-vertex on it.
    R3,
}

impl Rule {
    pub fn amount(self) -> HalfInt {
        match self {
            Rule::R1 | Rule::R2 => HalfInt::ONE,
            Rule::R3 => HalfInt::HALF,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Transfer {
    pub source: Element,
    pub target: Element,
    pub amount: HalfInt,
    pub rule: Rule,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChargeLedger {
    pub faces: Vec<Face>,
    pub initial_vertex_charges: Vec<HalfInt>,
    pub initial_face_charges: Vec<HalfInt>,
    pub vertex_charges: Vec<HalfInt>,
    pub face_charges: Vec<HalfInt>,
    pub transfers: Vec<Transfer>,
    pub initial_total: HalfInt,
    pub final_total: HalfInt,
    /// Elements whose final charge is negative.
    pub negative: Vec<Element>,
}

impl ChargeLedger {
    pub fn conserved(&self) -> bool {
        self.initial_total == self.final_total
    }
}

/// Assigns `2 d(v) - 6` to vertices and `d(f) - 6` to faces, then moves
/// charge by the three rules. A vertex counts once per face even when a
/// boundary walk revisits it.
pub fn discharge(pg: &PlaneGraph) -> Result<ChargeLedger> {
    let faces = faces(pg)?;
    let initial_vertex: Vec<HalfInt> =
        (0..pg.num_vertices).map(|v| HalfInt::from_int(2 * pg.degree(v) as i64 - 6)).collect();
    let initial_face: Vec<HalfInt> =
        faces.iter().map(|f| HalfInt::from_int(f.degree() as i64 - 6)).collect();
    let mut transfers = Vec::new();
    for v in 0..pg.num_vertices {
        if pg.degree(v) != 2 {
            continue;
        }
        for &w in &pg.rotation[v] {
            if pg.degree(w) == 4 {
                transfers.push(Transfer {
                    source: Element::Vertex(w),
                    target: Element::Vertex(v),
                    amount: Rule::R1.amount(),
                    rule: Rule::R1,
                });
            }
        }
    }
    for (i, f) in faces.iter().enumerate() {
        let rule = match f.degree() {
            4 => Rule::R2,
            5 => Rule::R3,
            _ => continue,
        };
        for v in f.vertices() {
            if pg.degree(v) == 4 {
                transfers.push(Transfer {
                    source: Element::Vertex(v),
                    target: Element::Face(i),
                    amount: rule.amount(),
                    rule,
                });
            }
        }
    }
    let mut vertex_charges = initial_vertex.clone();
    let mut face_charges = initial_face.clone();
    for t in &transfers {
        for (el, sign) in [(t.source, -1), (t.target, 1)] {
            let slot = match el {
                Element::Vertex(v) => &mut vertex_charges[v],
                Element::Face(f) => &mut face_charges[f],
            };
            if sign < 0 {
                *slot -= t.amount;
            } else {
                *slot += t.amount;
            }
        }
    }
    let initial_total =
        initial_vertex.iter().copied().sum::<HalfInt>() + initial_face.iter().copied().sum();
    let final_total =
        vertex_charges.iter().copied().sum::<HalfInt>() + face_charges.iter().copied().sum();
    let negative = vertex_charges
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_negative())
        .map(|(v, _)| Element::Vertex(v))
        .chain(
            face_charges
                .iter()
                .enumerate()
                .filter(|(_, c)| c.is_negative())
                .map(|(f, _)| Element::Face(f)),
        )
        .collect();
    Ok(ChargeLedger {
        faces,
        initial_vertex_charges: initial_vertex,
        initial_face_charges: initial_face,
        vertex_charges,
        face_charges,
        transfers,
        initial_total,
        final_total,
        negative,
    })
}

/// A cycle with vertices strictly on both sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparatingCycle {
    pub cycle: Vec<usize>,
    /// Vertices on the side away from the outer face.
    pub interior: Vec<usize>,
    /// Vertices on the outer face's side.
    pub exterior: Vec<usize>,
}

/// Separating `k`-cycles, `3 <= k <= 6`, with the outer face taken to be the
/// first face of maximum degree.
pub fn separating_cycles(pg: &PlaneGraph, k: usize) -> Result<Vec<SeparatingCycle>> {
    separating_cycles_with_outer(pg, k, None)
}

/// As [`separating_cycles`], with the outer face given as an index into
/// [`faces`].
pub fn separating_cycles_with_outer(
    pg: &PlaneGraph,
    k: usize,
    outer: Option<usize>,
) -> Result<Vec<SeparatingCycle>> {
    if !(3..=6).contains(&k) {
        return Err(Error::InvalidGraph(format!("cycle length {k} outside 3..=6")));
    }
    let fs = faces(pg)?;
    let outer = match outer {
        Some(i) if i < fs.len() => i,
        Some(i) => return Err(Error::Embedding(format!("no face {i}"))),
        None => (0..fs.len())
            .max_by_key(|&i| (fs[i].degree(), std::cmp::Reverse(i)))
            .expect("at least one face"),
    };
    let mut out = Vec::new();
    for cycle in simple_cycles(pg, k) {
        let sides = split_by_cycle(pg, &cycle)?;
        if sides.left.is_empty() || sides.right.is_empty() {
            continue;
        }
        let outer_left = outer_side(&fs[outer], &cycle, &sides);
        let (interior, exterior) = match outer_left {
            Some(true) => (sides.right, sides.left),
            _ => (sides.left, sides.right),
        };
        out.push(SeparatingCycle {
            cycle,
            interior: interior.into_iter().collect(),
            exterior: exterior.into_iter().collect(),
        });
    }
    Ok(out)
}

/// Each simple `k`-cycle once, starting at its smallest vertex.
fn simple_cycles(pg: &PlaneGraph, k: usize) -> Vec<Vec<usize>> {
    fn extend(pg: &PlaneGraph, k: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let start = path[0];
        let last = *path.last().expect("non-empty");
        if path.len() == k {
            if pg.has_edge(last, start) && path[1] < last {
                out.push(path.clone());
            }
            return;
        }
        for &w in &pg.rotation[last] {
            if w > start && !path.contains(&w) {
                path.push(w);
                extend(pg, k, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..pg.num_vertices {
        extend(pg, k, &mut vec![s], &mut out);
    }
    out
}

struct Sides {
    left: BTreeSet<usize>,
    right: BTreeSet<usize>,
    /// Chords `(u, v)` with `u` on the cycle, tagged true when on the left.
    chords: Vec<((usize, usize), bool)>,
}

/// Splits the vertices off `cycle` by which side of the oriented cycle they
/// attach to. Neighbors swept counterclockwise from the next cycle vertex to
/// the previous one lie on the left.
fn split_by_cycle(pg: &PlaneGraph, cycle: &[usize]) -> Result<Sides> {
    let k = cycle.len();
    let on_cycle: BTreeSet<usize> = cycle.iter().copied().collect();
    let mut side: Vec<Option<bool>> = vec![None; pg.num_vertices];
    let mut queue = VecDeque::new();
    let mut chords = Vec::new();
    for i in 0..k {
        let c = cycle[i];
        let prev = cycle[(i + k - 1) % k];
        let next = cycle[(i + 1) % k];
        let rot = &pg.rotation[c];
        let deg = rot.len();
        let start = pg.position(c, next);
        let mut left = true;
        for step in 1..deg {
            let w = rot[(start + step) % deg];
            if w == prev {
                left = false;
                continue;
            }
            if on_cycle.contains(&w) {
                chords.push(((c, w), left));
                continue;
            }
            match side[w] {
                None => {
                    side[w] = Some(left);
                    queue.push_back(w);
                }
                Some(s) if s != left => {
                    return Err(Error::Embedding(format!(
                        "vertex {w} attaches to both sides of cycle {cycle:?}"
                    )))
                }
                _ => {}
            }
        }
    }
    while let Some(v) = queue.pop_front() {
        let s = side[v];
        for &w in &pg.rotation[v] {
            if on_cycle.contains(&w) {
                continue;
            }
            match side[w] {
                None => {
                    side[w] = s;
                    queue.push_back(w);
                }
                t if t != s => {
                    return Err(Error::Embedding(format!(
                        "component of {w} lies on both sides of cycle {cycle:?}"
                    )))
                }
                _ => {}
            }
        }
    }
    let mut left = BTreeSet::new();
    let mut right = BTreeSet::new();
    for (v, s) in side.iter().enumerate() {
        match s {
            Some(true) => {
                left.insert(v);
            }
            Some(false) => {
                right.insert(v);
            }
            None => {}
        }
    }
    Ok(Sides { left, right, chords })
}

/// Whether `face` lies on the left of `cycle`, when that can be read off a
/// vertex or chord of its boundary.
fn outer_side(face: &Face, cycle: &[usize], sides: &Sides) -> Option<bool> {
    for &v in &face.walk {
        if sides.left.contains(&v) {
            return Some(true);
        }
        if sides.right.contains(&v) {
            return Some(false);
        }
    }
    let on_cycle: BTreeSet<usize> = cycle.iter().copied().collect();
    let n = face.walk.len();
    for i in 0..n {
        let (u, v) = (face.walk[i], face.walk[(i + 1) % n]);
        if on_cycle.contains(&u) && on_cycle.contains(&v) {
            if let Some(&(_, l)) = sides.chords.iter().find(|&&(e, _)| e == (u, v) || e == (v, u))
            {
                return Some(l);
            }
        }
    }
    None
}
