//! Coloring configurations: the uncolored subgraph, its "sees" relation, and
//! the exponent caps implied by per-edge color availability.
//!
//! Edge ids double as polynomial variable indices. Two edges see each other
//! when they lie on a common path or cycle of at most three edges, i.e. they
//! share an endpoint or some edge of the configuration joins their endpoints.
//! Colored edges outside the configuration only enter through availability.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polycore::{BinomialTerm, CapVector, ExponentVector, MAX_EXPONENT};

/// Unordered edge pair, stored with the smaller id first.
pub type EdgePair = (usize, usize);

pub fn normalize(p: EdgePair) -> EdgePair {
    if p.0 <= p.1 {
        p
    } else {
        (p.1, p.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigGraph {
    pub num_vertices: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<String>>,
    /// `edges[i]` is edge id `i`. May be empty for explicit-mode configurations
    /// that carry no geometry.
    #[serde(default)]
    pub edges: Vec<(usize, usize)>,
    /// Number of colors available to each edge.
    pub availability: Vec<u32>,
}

impl ConfigGraph {
    pub fn num_edges(&self) -> usize {
        self.availability.len()
    }

    pub fn has_geometry(&self) -> bool {
        !self.edges.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(labels) = &self.vertices {
            if labels.len() != self.num_vertices {
                return Err(Error::InvalidConfiguration(format!(
                    "{} vertex labels for {} vertices",
                    labels.len(),
                    self.num_vertices
                )));
            }
        }
        if self.has_geometry() && self.edges.len() != self.availability.len() {
            return Err(Error::InvalidConfiguration(format!(
                "availability has length {}, but there are {} edges",
                self.availability.len(),
                self.edges.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            if u >= self.num_vertices || v >= self.num_vertices {
                return Err(Error::InvalidGraph(format!(
                    "edge {id} = [{u}, {v}] has an endpoint outside 0..{}",
                    self.num_vertices
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("edge {id} is a loop at vertex {u}")));
            }
            if !seen.insert(normalize((u, v))) {
                return Err(Error::InvalidGraph(format!("edge {id} = [{u}, {v}] is a duplicate")));
            }
        }
        Ok(())
    }

    fn check_id(&self, e: usize) -> Result<()> {
        if e >= self.edges.len() {
            return Err(Error::InvalidConfiguration(format!(
                "edge id {e} out of range for {} edges",
                self.edges.len()
            )));
        }
        Ok(())
    }

    fn label(&self, v: usize) -> String {
        match &self.vertices {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    /// Human-readable edge name, e.g. `v1v2`.
    pub fn edge_name(&self, e: usize) -> String {
        let (u, v) = self.edges[e];
        format!("{}{}", self.label(u), self.label(v))
    }
}

/// Whether edges `e` and `f` lie on a common path or cycle of length at most
/// three in `g`.
pub fn sees(g: &ConfigGraph, e: usize, f: usize) -> Result<bool> {
    g.check_id(e)?;
    g.check_id(f)?;
    if e == f {
        return Err(Error::InvalidConfiguration(format!("edge {e} compared with itself")));
    }
    Ok(sees_unchecked(&g.edges, e, f))
}

fn sees_unchecked(edges: &[(usize, usize)], e: usize, f: usize) -> bool {
    let (a, b) = edges[e];
    let (c, d) = edges[f];
    if a == c || a == d || b == c || b == d {
        return true;
    }
    let joins = |x: usize, y: usize| (x == a || x == b) && (y == c || y == d);
    edges.iter().any(|&(x, y)| joins(x, y) || joins(y, x))
}

/// How the conflict pairs of a configuration are obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum ConflictSpec {
    /// From the geometry via [`sees`].
    Derived,
    /// The listed pairs are exactly the conflicts.
    ExplicitConflicts { pairs: Vec<EdgePair> },
    /// Every pair except the listed ones conflicts.
    ExplicitExceptions { pairs: Vec<EdgePair> },
}

impl ConflictSpec {
    pub fn source(&self) -> &'static str {
        match self {
            ConflictSpec::Derived => "derived",
            ConflictSpec::ExplicitConflicts { .. } => "explicit_conflicts",
            ConflictSpec::ExplicitExceptions { .. } => "explicit_exceptions",
        }
    }
}

/// A monomial claimed to have a given coefficient, e.g. one printed alongside
/// a hand proof.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimedWitness {
    pub exponents: Vec<u8>,
    pub coefficient: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Configuration {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    #[serde(flatten)]
    pub graph: ConfigGraph,
    pub conflicts: ConflictSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claimed_witness: Option<ClaimedWitness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claimed_exceptions: Option<Vec<EdgePair>>,
}

impl Configuration {
    pub fn new(graph: ConfigGraph, conflicts: ConflictSpec) -> Self {
        Self { id: None, graph, conflicts, claimed_witness: None, claimed_exceptions: None }
    }

    pub fn num_edges(&self) -> usize {
        self.graph.num_edges()
    }

    pub fn validate(&self) -> Result<()> {
        self.graph.validate()?;
        let n = self.num_edges();
        match &self.conflicts {
            ConflictSpec::Derived => {
                if !self.graph.has_geometry() && n > 0 {
                    return Err(Error::InvalidConfiguration(
                        "derived conflicts need an edge list".into(),
                    ));
                }
            }
            ConflictSpec::ExplicitConflicts { pairs } | ConflictSpec::ExplicitExceptions { pairs } => {
                let mut seen = BTreeSet::new();
                for &(i, j) in pairs {
                    check_pair(i, j, n)?;
                    if !seen.insert(normalize((i, j))) {
                        return Err(Error::InvalidConfiguration(format!(
                            "pair [{i}, {j}] is listed twice"
                        )));
                    }
                }
            }
        }
        if let Some(claims) = &self.claimed_exceptions {
            for &(i, j) in claims {
                check_pair(i, j, n)?;
            }
        }
        if let Some(w) = &self.claimed_witness {
            if w.exponents.len() != n {
                return Err(Error::LengthMismatch {
                    what: "claimed witness exponents",
                    expected: n,
                    found: w.exponents.len(),
                });
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let c: Configuration = serde_json::from_str(text)
            .map_err(|e| Error::InvalidConfiguration(format!("malformed JSON: {e}")))?;
        c.validate()?;
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("configuration serializes")
    }
}

fn check_pair(i: usize, j: usize, n: usize) -> Result<()> {
    if i >= n || j >= n {
        return Err(Error::InvalidConfiguration(format!(
            "pair [{i}, {j}] refers to an edge outside 0..{n}"
        )));
    }
    if i == j {
        return Err(Error::InvalidConfiguration(format!("pair [{i}, {j}] repeats an edge")));
    }
    Ok(())
}

fn all_pairs(n: usize) -> impl Iterator<Item = EdgePair> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

/// Pairs that see each other, in lexicographic order.
pub fn derived_conflicts(g: &ConfigGraph) -> Vec<EdgePair> {
    all_pairs(g.edges.len()).filter(|&(i, j)| sees_unchecked(&g.edges, i, j)).collect()
}

/// Pairs that do not see each other, in lexicographic order.
pub fn derived_exceptions(g: &ConfigGraph) -> Vec<EdgePair> {
    all_pairs(g.edges.len()).filter(|&(i, j)| !sees_unchecked(&g.edges, i, j)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolvedConflicts {
    pub source: &'static str,
    pub pairs: Vec<EdgePair>,
    pub warnings: Vec<String>,
}

impl ResolvedConflicts {
    pub fn terms(&self) -> Vec<BinomialTerm> {
        self.pairs.iter().map(|&(a, b)| BinomialTerm { a, b }).collect()
    }
}

/// Resolves the conflict pairs of `c`, sorted, each as `(i, j)` with `i < j`.
/// Explicit exceptions that contradict available geometry produce warnings.
pub fn resolve_conflicts(c: &Configuration) -> Result<ResolvedConflicts> {
    c.validate()?;
    let n = c.num_edges();
    let mut warnings = Vec::new();
    let pairs = match &c.conflicts {
        ConflictSpec::Derived => derived_conflicts(&c.graph),
        ConflictSpec::ExplicitConflicts { pairs } => {
            let set: BTreeSet<EdgePair> = pairs.iter().map(|&p| normalize(p)).collect();
            set.into_iter().collect()
        }
        ConflictSpec::ExplicitExceptions { pairs } => {
            let excluded: BTreeSet<EdgePair> = pairs.iter().map(|&p| normalize(p)).collect();
            if c.graph.has_geometry() {
                for &(i, j) in &excluded {
                    if sees_unchecked(&c.graph.edges, i, j) {
                        warnings.push(format!(
                            "exception [{i}, {j}] excludes two edges that see each other"
                        ));
                    }
                }
            }
            all_pairs(n).filter(|p| !excluded.contains(p)).collect()
        }
    };
    Ok(ResolvedConflicts { source: c.conflicts.source(), pairs, warnings })
}

/// Factor list `(x_i - x_j)`, `i < j`, of the configuration's polynomial.
pub fn conflict_terms(c: &Configuration) -> Result<Vec<BinomialTerm>> {
    resolve_conflicts(c).map(|r| r.terms())
}

/// Reconciliation of a transcribed exception list against the geometry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    /// Claimed exceptions whose edges actually see each other.
    pub claimed_but_conflicting: Vec<EdgePair>,
    /// Non-seeing pairs the claim list leaves out.
    pub missing_from_claims: Vec<EdgePair>,
    /// Pairs listed more than once, with each extra occurrence reported.
    pub duplicates: Vec<EdgePair>,
    pub claimed_factor_count: usize,
    pub claimed_unique_count: usize,
    pub derived_exception_count: usize,
    /// Number of factors if the claim list were taken literally.
    pub claimed_term_count: usize,
    pub derived_term_count: usize,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.claimed_but_conflicting.is_empty()
            && self.missing_from_claims.is_empty()
            && self.duplicates.is_empty()
    }
}

/// Compares `claimed_exceptions` with the exceptions derived from geometry.
pub fn audit_against_exceptions(
    c: &Configuration,
    claimed_exceptions: &[EdgePair],
) -> Result<AuditReport> {
    c.graph.validate()?;
    if !c.graph.has_geometry() {
        return Err(Error::InvalidConfiguration("audit needs an edge list".into()));
    }
    let n = c.num_edges();
    let derived: BTreeSet<EdgePair> = derived_exceptions(&c.graph).into_iter().collect();
    let mut unique = BTreeSet::new();
    let mut duplicates = Vec::new();
    for &p in claimed_exceptions {
        check_pair(p.0, p.1, n)?;
        let p = normalize(p);
        if !unique.insert(p) {
            duplicates.push(p);
        }
    }
    duplicates.sort_unstable();
    let total = n * n.saturating_sub(1) / 2;
    Ok(AuditReport {
        claimed_but_conflicting: unique.difference(&derived).copied().collect(),
        missing_from_claims: derived.difference(&unique).copied().collect(),
        duplicates,
        claimed_factor_count: claimed_exceptions.len(),
        claimed_unique_count: unique.len(),
        derived_exception_count: derived.len(),
        claimed_term_count: total - unique.len(),
        derived_term_count: total - derived.len(),
    })
}

/// Caps `a_i - 1`: the largest exponent a list of `a_i` colors can support.
pub fn caps_from_availability(c: &Configuration) -> Result<CapVector> {
    caps_for(&c.graph.availability)
}

pub(crate) fn caps_for(availability: &[u32]) -> Result<CapVector> {
    let mut caps = Vec::with_capacity(availability.len());
    for (edge, &a) in availability.iter().enumerate() {
        if a == 0 {
            return Err(Error::Infeasible { edge });
        }
        if a - 1 > MAX_EXPONENT as u32 {
            return Err(Error::ExponentTooLarge(a - 1));
        }
        caps.push((a - 1) as u8);
    }
    CapVector::new(caps)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Infeasible,
    Unknown,
}

/// Cheap necessary condition: the polynomial is homogeneous of degree equal
/// to the number of factors, so a surviving monomial needs cap sum at least
/// that large.
pub fn prescreen(c: &Configuration) -> Result<Verdict> {
    if c.graph.availability.contains(&0) {
        return Ok(Verdict::Infeasible);
    }
    let cap_sum: u64 = c.graph.availability.iter().map(|&a| a as u64 - 1).sum();
    let terms = resolve_conflicts(c)?.pairs.len() as u64;
    Ok(if cap_sum < terms { Verdict::Infeasible } else { Verdict::Unknown })
}

/// Validates a claimed exponent vector against the configuration's width.
pub fn exponent_vector(c: &Configuration, exps: &[u8]) -> Result<ExponentVector> {
    if exps.len() != c.num_edges() {
        return Err(Error::LengthMismatch {
            what: "exponent vector",
            expected: c.num_edges(),
            found: exps.len(),
        });
    }
    ExponentVector::new(exps.to_vec())
}
