//! End-to-end reducibility checks: factor list, caps, reduction, witness.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::configmodel::{
    audit_against_exceptions, caps_from_availability, exponent_vector, prescreen,
    resolve_conflicts, AuditReport, Configuration, ConflictSpec, EdgePair, Verdict,
};
use crate::error::Result;
use crate::fixtures::{self, AvailabilityOverride, Fixture};
use crate::polycore::{CapVector, CappedPolynomial, ExponentVector};
use crate::schedule::{reduce_product_with, ReductionStats, TermOrder};

pub const SCHEMA_VERSION: u32 = 1;

/// A surviving monomial of the capped product.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub exponents: ExponentVector,
    pub coefficient: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimedWitnessCheck {
    pub exponents: Vec<u8>,
    pub claimed: i64,
    pub computed: i64,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReducibilityReport {
    pub schema: u32,
    pub config_id: Option<String>,
    pub conflict_source: &'static str,
    pub term_count: usize,
    pub cap_sum: u32,
    pub prescreen: Verdict,
    pub witness: Option<Witness>,
    pub all_witness_count: usize,
    pub claimed_witness_check: Option<ClaimedWitnessCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub audit: Option<AuditReport>,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<StatsReport>,
}

impl ReducibilityReport {
    /// A witness exists and any claimed coefficient was reproduced.
    pub fn holds(&self) -> bool {
        self.witness.is_some() && self.claimed_witness_check.as_ref().is_none_or(|c| c.matches)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatsReport {
    #[serde(flatten)]
    pub reduction: ReductionStats,
    pub wall_time_seconds: f64,
}

impl From<ReductionStats> for StatsReport {
    fn from(reduction: ReductionStats) -> Self {
        let wall_time_seconds = reduction.elapsed.as_secs_f64();
        Self { reduction, wall_time_seconds }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AnalyzeOptions {
    pub order: TermOrder,
    pub stats: bool,
    /// Reduce even when the prescreen already rules a witness out.
    pub ignore_prescreen: bool,
}

struct Prepared {
    caps: CapVector,
    terms: Vec<crate::polycore::BinomialTerm>,
    source: &'static str,
    warnings: Vec<String>,
    verdict: Verdict,
}

fn prepare(c: &Configuration) -> Result<Prepared> {
    let resolved = resolve_conflicts(c)?;
    let verdict = prescreen(c)?;
    let caps = caps_from_availability(c)?;
    Ok(Prepared {
        caps,
        terms: resolved.terms(),
        source: resolved.source,
        warnings: resolved.warnings,
        verdict,
    })
}

fn reduce(p: &Prepared, order: TermOrder) -> Result<(CappedPolynomial, ReductionStats)> {
    reduce_product_with(&p.terms, &p.caps, order)
}

/// The lexicographically smallest surviving monomial of the configuration's
/// capped product, if any.
pub fn find_witness(c: &Configuration) -> Result<Option<Witness>> {
    let p = prepare(c)?;
    if p.verdict == Verdict::Infeasible {
        return Ok(None);
    }
    let (poly, _) = reduce(&p, TermOrder::Greedy)?;
    Ok(poly.first_monomial().map(|(exponents, coefficient)| Witness { exponents, coefficient }))
}

/// Coefficient of `exps` in the capped product. Caps are first lowered to
/// the target, which cannot change the coefficient of a monomial below them.
pub fn check_monomial(c: &Configuration, exps: &[u8]) -> Result<i64> {
    check_monomial_with(c, exps, true)
}

/// As [`check_monomial`], optionally without lowering caps to the target.
pub fn check_monomial_with(c: &Configuration, exps: &[u8], tighten: bool) -> Result<i64> {
    let target = exponent_vector(c, exps)?;
    let p = prepare(c)?;
    if !target.within(&p.caps) || target.total_degree() as usize != p.terms.len() {
        return Ok(0);
    }
    let caps = if tighten { p.caps.tightened(&target) } else { p.caps.clone() };
    let (poly, _) = reduce_product_with(&p.terms, &caps, TermOrder::Greedy)?;
    poly.coefficient(&target)
}

/// Full reduction with witness search, claimed-witness check and, when the
/// configuration carries a transcribed exception list, an audit.
pub fn analyze(c: &Configuration, opts: AnalyzeOptions) -> Result<ReducibilityReport> {
    let p = prepare(c)?;
    let mut warnings = p.warnings.clone();
    let (poly, stats) = if p.verdict == Verdict::Infeasible && !opts.ignore_prescreen {
        warnings.push("prescreen: cap sum is below the number of factors".into());
        (CappedPolynomial::zero(p.caps.len(), p.caps.clone())?, None)
    } else {
        let (poly, stats) = reduce(&p, opts.order)?;
        (poly, Some(stats))
    };
    let witness = poly.first_monomial().map(|(exponents, coefficient)| Witness { exponents, coefficient });
    let claimed_witness_check = match &c.claimed_witness {
        Some(w) => {
            let e = exponent_vector(c, &w.exponents)?;
            let computed = poly.coefficient(&e)?;
            Some(ClaimedWitnessCheck {
                exponents: w.exponents.clone(),
                claimed: w.coefficient,
                computed,
                matches: computed == w.coefficient,
            })
        }
        None => None,
    };
    let audit = match &c.claimed_exceptions {
        Some(claims) if c.graph.has_geometry() => Some(audit_against_exceptions(c, claims)?),
        _ => None,
    };
    Ok(ReducibilityReport {
        schema: SCHEMA_VERSION,
        config_id: c.id.clone(),
        conflict_source: p.source,
        term_count: p.terms.len(),
        cap_sum: p.caps.sum(),
        prescreen: p.verdict,
        witness,
        all_witness_count: poly.len(),
        claimed_witness_check,
        audit,
        warnings,
        stats: if opts.stats { stats.map(StatsReport::from) } else { None },
    })
}

/// Outcome of taking a printed exception list literally.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrintedCheck {
    /// Distinct printed exception pairs.
    pub exceptions: Vec<EdgePair>,
    pub term_count: usize,
    pub coefficient: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixtureReport {
    pub schema: u32,
    pub fixture: &'static str,
    pub description: &'static str,
    pub printed_availability: Vec<u32>,
    pub availability: Vec<u32>,
    pub overrides: Vec<AvailabilityOverride>,
    pub report: ReducibilityReport,
    /// Coefficient at the claimed exponents when the printed exception
    /// product is used instead of the derived one.
    pub printed_exceptions_check: PrintedCheck,
    pub notes: Vec<&'static str>,
}

impl FixtureReport {
    pub fn matches(&self) -> bool {
        self.report.claimed_witness_check.as_ref().is_some_and(|c| c.matches)
    }
}

/// Runs a built-in fixture by name.
pub fn run_fixture(name: &str) -> Result<FixtureReport> {
    run_fixture_with(&fixtures::fixture(name)?, AnalyzeOptions::default())
}

pub fn run_fixture_with(f: &Fixture, opts: AnalyzeOptions) -> Result<FixtureReport> {
    let report = analyze(&f.config, opts)?;
    let exceptions: Vec<EdgePair> = f
        .printed_exceptions
        .iter()
        .map(|&p| crate::configmodel::normalize(p))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut literal = f.config.clone();
    literal.conflicts = ConflictSpec::ExplicitExceptions { pairs: exceptions.clone() };
    let term_count = resolve_conflicts(&literal)?.pairs.len();
    let coefficient = check_monomial(&literal, &f.claimed_exponents)?;
    Ok(FixtureReport {
        schema: SCHEMA_VERSION,
        fixture: f.name,
        description: f.description,
        printed_availability: f.printed_availability.clone(),
        availability: f.config.graph.availability.clone(),
        overrides: f.overrides.clone(),
        report,
        printed_exceptions_check: PrintedCheck { exceptions, term_count, coefficient },
        notes: f.notes.clone(),
    })
}
