//! Brute-force ground truth: list coloring, systems of distinct
//! representatives, exact strong chromatic index and Ore-degree.
//!
//! Everything here is exhaustive search; verdicts are exact, and only the
//! verdicts are contractual. The search heuristics can change freely.

use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::configmodel::{normalize, resolve_conflicts, Configuration, EdgePair};
use crate::error::{Error, Result};

/// Palette size for soundness probes.
pub const PROBE_COLORS: u32 = 13;

/// Simple graph with an optional edge coloring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredGraph {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    colors: Option<Vec<u32>>,
}

impl ColoredGraph {
    pub fn new(num_vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let g = Self { num_vertices, edges, colors: None };
        g.validate()?;
        Ok(g)
    }

    pub fn with_colors(mut self, colors: Vec<u32>) -> Result<Self> {
        if colors.len() != self.edges.len() {
            return Err(Error::LengthMismatch {
                what: "edge colors",
                expected: self.edges.len(),
                found: colors.len(),
            });
        }
        self.colors = Some(colors);
        Ok(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let g: ColoredGraph = serde_json::from_str(text)
            .map_err(|e| Error::InvalidGraph(format!("malformed JSON: {e}")))?;
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            if u >= self.num_vertices || v >= self.num_vertices {
                return Err(Error::InvalidGraph(format!("edge {id} has an endpoint out of range")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("edge {id} is a loop")));
            }
            if !seen.insert(normalize((u, v))) {
                return Err(Error::InvalidGraph(format!("edge {id} is a duplicate")));
            }
        }
        if let Some(c) = &self.colors {
            if c.len() != self.edges.len() {
                return Err(Error::InvalidGraph("one color per edge expected".into()));
            }
        }
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn colors(&self) -> Option<&[u32]> {
        self.colors.as_deref()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.num_vertices];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    /// Copy without edge `id`.
    pub fn without_edge(&self, id: usize) -> Self {
        let mut edges = self.edges.clone();
        edges.remove(id);
        Self { num_vertices: self.num_vertices, edges, colors: None }
    }

    /// Whether the attached coloring is a strong edge-coloring.
    pub fn is_strong_coloring(&self) -> bool {
        match &self.colors {
            None => false,
            Some(c) => strong_conflicts(self).iter().all(|&(i, j)| c[i] != c[j]),
        }
    }
}

/// Color lists, one per variable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListAssignment {
    pub lists: Vec<Vec<u32>>,
}

impl ListAssignment {
    pub fn new(lists: Vec<Vec<u32>>) -> Self {
        Self { lists }
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }
}

fn adjacency(n: usize, pairs: &[EdgePair]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(i, j) in pairs {
        if i != j && !adj[i].contains(&j) {
            adj[i].push(j);
            adj[j].push(i);
        }
    }
    adj
}

/// Finds `assignment[i] ∈ lists[i]` with conflicting variables colored
/// differently, or `None` when no such assignment exists.
pub fn list_colorable(conflicts: &[EdgePair], lists: &ListAssignment) -> Option<Vec<u32>> {
    let n = lists.len();
    if conflicts.iter().any(|&(i, j)| i >= n || j >= n) {
        return None;
    }
    let adj = adjacency(n, conflicts);
    let domains: Vec<Vec<u32>> = lists
        .lists
        .iter()
        .map(|l| l.iter().copied().collect::<BTreeSet<_>>().into_iter().collect())
        .collect();
    let mut search = ListSearch {
        adj: &adj,
        domains: &domains,
        assignment: vec![None; n],
    };
    if search.solve(n) {
        Some(search.assignment.into_iter().map(|c| c.expect("all assigned")).collect())
    } else {
        None
    }
}

struct ListSearch<'a> {
    adj: &'a [Vec<usize>],
    domains: &'a [Vec<u32>],
    assignment: Vec<Option<u32>>,
}

impl ListSearch<'_> {
    fn options(&self, v: usize) -> Vec<u32> {
        self.domains[v]
            .iter()
            .copied()
            .filter(|&c| self.adj[v].iter().all(|&w| self.assignment[w] != Some(c)))
            .collect()
    }

    fn solve(&mut self, remaining: usize) -> bool {
        if remaining == 0 {
            return true;
        }
        // Most constrained variable first; ties by higher degree, then index.
        let mut best: Option<(usize, Vec<u32>)> = None;
        for v in 0..self.assignment.len() {
            if self.assignment[v].is_some() {
                continue;
            }
            let opts = self.options(v);
            if opts.is_empty() {
                return false;
            }
            let better = match &best {
                None => true,
                Some((b, bo)) => {
                    (opts.len(), std::cmp::Reverse(self.adj[v].len()))
                        < (bo.len(), std::cmp::Reverse(self.adj[*b].len()))
                }
            };
            if better {
                best = Some((v, opts));
            }
        }
        let (v, opts) = best.expect("an unassigned variable exists");
        for c in opts {
            self.assignment[v] = Some(c);
            if self.solve(remaining - 1) {
                return true;
            }
        }
        self.assignment[v] = None;
        false
    }
}

/// System of distinct representatives via augmenting paths, or `None` when
/// Hall's condition fails.
pub fn sdr(sets: &[Vec<u32>]) -> Option<Vec<u32>> {
    let mut universe: Vec<u32> = sets.iter().flatten().copied().collect();
    universe.sort_unstable();
    universe.dedup();
    let sets_idx: Vec<Vec<usize>> = sets
        .iter()
        .map(|s| {
            let mut idx: Vec<usize> =
                s.iter().map(|c| universe.binary_search(c).expect("in universe")).collect();
            idx.sort_unstable();
            idx.dedup();
            idx
        })
        .collect();
    let mut owner: Vec<Option<usize>> = vec![None; universe.len()];

    fn augment(
        i: usize,
        sets: &[Vec<usize>],
        owner: &mut [Option<usize>],
        visited: &mut [bool],
    ) -> bool {
        for &c in &sets[i] {
            if visited[c] {
                continue;
            }
            visited[c] = true;
            if owner[c].is_none_or(|j| augment(j, sets, owner, visited)) {
                owner[c] = Some(i);
                return true;
            }
        }
        false
    }

    let mut visited = vec![false; universe.len()];
    for i in 0..sets.len() {
        visited.fill(false);
        if !augment(i, &sets_idx, &mut owner, &mut visited) {
            return None;
        }
    }
    let mut reps = vec![0u32; sets.len()];
    for (c, o) in owner.iter().enumerate() {
        if let Some(i) = o {
            reps[*i] = universe[c];
        }
    }
    Some(reps)
}

/// Pairs of distinct edges at distance at most two in the line graph.
pub fn strong_conflicts(g: &ColoredGraph) -> Vec<EdgePair> {
    let n = g.num_vertices;
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in &g.edges {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    let m = g.edges.len();
    let mut out = Vec::new();
    for i in 0..m {
        let (a, b) = g.edges[i];
        for j in i + 1..m {
            let (c, d) = g.edges[j];
            let share = a == c || a == d || b == c || b == d;
            if share || adj[a][c] || adj[a][d] || adj[b][c] || adj[b][d] {
                out.push((i, j));
            }
        }
    }
    out
}

/// Least `k <= max_colors` admitting a strong edge-coloring, or `None`.
pub fn strong_chromatic_index(g: &ColoredGraph, max_colors: usize) -> Option<usize> {
    if g.edges.is_empty() {
        return Some(0);
    }
    let adj = adjacency(g.edges.len(), &strong_conflicts(g));
    (1..=max_colors).find(|&k| color_graph(&adj, k).is_some())
}

/// A strong edge-coloring with at most `k` colors, if one exists.
pub fn strong_coloring(g: &ColoredGraph, k: usize) -> Option<Vec<u32>> {
    let adj = adjacency(g.edges.len(), &strong_conflicts(g));
    color_graph(&adj, k).map(|c| c.into_iter().map(|x| x as u32).collect())
}

/// Exact vertex `k`-coloring by DSATUR-ordered backtracking. Colors are
/// introduced in increasing order, which removes palette symmetry.
fn color_graph(adj: &[Vec<usize>], k: usize) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut colors: Vec<Option<usize>> = vec![None; n];
    fn go(adj: &[Vec<usize>], k: usize, colors: &mut [Option<usize>], used: usize) -> bool {
        let pick = (0..adj.len())
            .filter(|&v| colors[v].is_none())
            .map(|v| {
                let sat: BTreeSet<usize> = adj[v].iter().filter_map(|&w| colors[w]).collect();
                (v, sat.len(), adj[v].len())
            })
            .max_by_key(|&(v, sat, deg)| (sat, deg, std::cmp::Reverse(v)));
        let Some((v, _, _)) = pick else { return true };
        let limit = (used + 1).min(k);
        for c in 0..limit {
            if adj[v].iter().any(|&w| colors[w] == Some(c)) {
                continue;
            }
            colors[v] = Some(c);
            if go(adj, k, colors, used.max(c + 1)) {
                return true;
            }
        }
        colors[v] = None;
        false
    }
    if go(adj, k, &mut colors, 0) {
        Some(colors.into_iter().map(|c| c.expect("colored")).collect())
    } else {
        None
    }
}

/// `max { d(u) + d(v) : uv ∈ E }`.
pub fn ore_degree(g: &ColoredGraph) -> Result<usize> {
    let d = g.degrees();
    g.edges
        .iter()
        .map(|&(u, v)| d[u] + d[v])
        .max()
        .ok_or_else(|| Error::InvalidGraph("Ore-degree of a graph without edges".into()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub trials: usize,
    pub successes: usize,
    pub seed: u64,
    /// Lists of the first trial that could not be colored.
    pub counterexample: Option<Vec<Vec<u32>>>,
    #[serde(skip)]
    failed_trial: Option<usize>,
}

impl ProbeReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none() && self.successes == self.trials
    }

    /// Turns a recorded counterexample into an error.
    pub fn check(self) -> Result<Self> {
        match &self.counterexample {
            None => Ok(self),
            Some(lists) => Err(Error::ProbeCounterexample {
                trial: self.failed_trial.unwrap_or(0),
                lists: lists.clone(),
            }),
        }
    }
}

/// Draws `trials` random list assignments with `|lists[i]| = a_i` from a
/// 13-color palette and checks each is list-colorable on the configuration's
/// conflict pairs. Meant for configurations that have a verified witness, in
/// which case every trial must succeed.
pub fn cn_soundness_probe(c: &Configuration, trials: usize, seed: u64) -> Result<ProbeReport> {
    let conflicts = resolve_conflicts(c)?.pairs;
    let avail = &c.graph.availability;
    if let Some((edge, &a)) = avail.iter().enumerate().find(|(_, &a)| a > PROBE_COLORS) {
        return Err(Error::InvalidConfiguration(format!(
            "edge {edge} has availability {a}, more than the {PROBE_COLORS}-color palette"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report =
        ProbeReport { trials, successes: 0, seed, counterexample: None, failed_trial: None };
    for trial in 0..trials {
        let lists: Vec<Vec<u32>> = avail
            .iter()
            .map(|&a| {
                let mut l: Vec<u32> = sample(&mut rng, PROBE_COLORS as usize, a as usize)
                    .into_iter()
                    .map(|x| x as u32)
                    .collect();
                l.sort_unstable();
                l
            })
            .collect();
        let la = ListAssignment::new(lists);
        if list_colorable(&conflicts, &la).is_some() {
            report.successes += 1;
        } else if report.counterexample.is_none() {
            report.counterexample = Some(la.lists);
            report.failed_trial = Some(trial);
        }
    }
    Ok(report)
}
