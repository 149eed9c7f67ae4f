//! Registry of the series identities, the general-k generator, and the
//! verification driver.

mod entries;
mod report;
mod theorem;

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::closed_form::{cf_equal, cf_eval, ClosedForm};
use crate::error::{Error, Result};
use crate::summation::{sum_1d_with, sum_2d_with, SumConfig, SumResult, Summand1D, Summand2D};

pub use report::{format_reports, ReportFormat, VerificationReport};
pub use theorem::theorem1_closed_form;

/// Left-hand side of an identity.
#[derive(Debug, Clone)]
pub enum Lhs {
    One(Summand1D),
    Two(Summand2D),
}

/// One catalog entry: a series, its exact value and the tolerance used to
/// check them against each other.
#[derive(Debug, Clone)]
pub struct Identity {
    pub id: String,
    pub description: String,
    /// Which family of identities the entry belongs to.
    pub anchor: String,
    pub lhs: Lhs,
    pub rhs: ClosedForm,
    pub tolerance: f64,
}

impl Identity {
    pub fn dimensionality(&self) -> u8 {
        match self.lhs {
            Lhs::One(_) => 1,
            Lhs::Two(_) => 2,
        }
    }

    pub fn is_reduced(&self) -> bool {
        matches!(&self.lhs, Lhs::Two(s) if s.reduction().is_some())
    }
}

/// Documentation export of an entry.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityExport {
    pub id: String,
    pub description: String,
    pub rhs: String,
    pub anchor: String,
    pub tolerance: f64,
    pub dimensionality: u8,
}

/// All 31 identities, in their fixed order.
pub fn build_catalog() -> Vec<Identity> {
    entries::build()
}

/// Looks up an identity by id.
pub fn get(id: &str) -> Result<Identity> {
    build_catalog()
        .into_iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownId(id.to_string()))
}

/// Catalog description for documentation, one record per identity.
pub fn export_catalog() -> Vec<IdentityExport> {
    build_catalog()
        .iter()
        .map(|e| IdentityExport {
            id: e.id.clone(),
            description: e.description.clone(),
            rhs: e.rhs.to_string(),
            anchor: e.anchor.clone(),
            tolerance: e.tolerance,
            dimensionality: e.dimensionality(),
        })
        .collect()
}

pub const THEOREM_MAX_K: u32 = 8;
const THEOREM_TOL: f64 = 1e-8;

/// Id of a general-k consistency row.
pub fn theorem_row_id(k: u32, alternating: bool) -> String {
    if alternating {
        format!("theorem1.alt.k{k}")
    } else {
        format!("theorem1.k{k}")
    }
}

fn parse_theorem_id(id: &str) -> Option<(u32, bool)> {
    let rest = id.strip_prefix("theorem1.")?;
    let (alt, rest) = match rest.strip_prefix("alt.") {
        Some(r) => (true, r),
        None => (false, rest),
    };
    let k: u32 = rest.strip_prefix('k')?.parse().ok()?;
    (k >= 1).then_some((k, alt))
}

/// The catalog entry whose right-hand side the general-k formula should reproduce, if
/// the `(k, parity)` pair is in the catalog.
pub fn theorem_catalog_id(k: u32, alternating: bool) -> Option<&'static str> {
    match (k, alternating) {
        (1, false) => Some("T1.k1"),
        (2, false) => Some("T1.k2"),
        (3, false) => Some("T1.k3"),
        (4, false) => Some("T1.k4"),
        (6, false) => Some("T1.k6"),
        (1, true) => Some("A1.k1"),
        (2, true) => Some("A1.k2"),
        (3, true) => Some("A1.k3"),
        _ => None,
    }
}

/// The general-k consistency rows for `k = 1..=8`, plain then alternating.
pub fn theorem_rows() -> Vec<Identity> {
    let mut out = Vec::new();
    for alternating in [false, true] {
        for k in 1..=THEOREM_MAX_K {
            out.push(theorem_identity(k, alternating));
        }
    }
    out
}

fn theorem_identity(k: u32, alternating: bool) -> Identity {
    let sign = if alternating { "(-1)^n " } else { "" };
    Identity {
        id: theorem_row_id(k, alternating),
        description: format!("sum_{{n>=1}} {sign}[gamma + psi(1+{k}n)] / n^2 against the general-k formula"),
        anchor: "general-k formula".to_string(),
        lhs: Lhs::One(entries::theorem_summand(k, alternating)),
        rhs: theorem1_closed_form(k, alternating).expect("k <= 8 cannot overflow"),
        tolerance: THEOREM_TOL,
    }
}

/// Tolerances and engine settings for a verification run.
#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    pub config: SumConfig,
    /// Replaces every identity's tolerance.
    pub tolerance: Option<f64>,
    /// Per-id tolerances, applied after `tolerance`.
    pub tolerances: BTreeMap<String, f64>,
    /// Worker threads for [`verify_all_with`]; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl VerifyOptions {
    fn tolerance_for(&self, e: &Identity) -> f64 {
        self.tolerances
            .get(&e.id)
            .copied()
            .or(self.tolerance)
            .unwrap_or(e.tolerance)
    }
}

/// Verifies one identity (or general-k row) by id.
pub fn verify(id: &str, tolerance_override: Option<f64>) -> Result<VerificationReport> {
    let opts = VerifyOptions {
        tolerance: tolerance_override,
        ..VerifyOptions::default()
    };
    verify_with(id, &opts)
}

/// [`verify`] with explicit options.
pub fn verify_with(id: &str, opts: &VerifyOptions) -> Result<VerificationReport> {
    if let Some((k, alt)) = parse_theorem_id(id) {
        return Ok(verify_theorem_row(&theorem_identity(k, alt), k, alt, opts));
    }
    let e = get(id)?;
    Ok(verify_identity(&e, opts))
}

fn run_lhs(lhs: &Lhs, tolerance: f64, cfg: &SumConfig) -> Result<SumResult> {
    let target = (tolerance / 10.0).max(1e-12);
    match lhs {
        Lhs::One(s) => sum_1d_with(s, target, cfg),
        Lhs::Two(s) => sum_2d_with(s, target, cfg),
    }
}

/// Runs the summation engine on the left-hand side and compares.
pub fn verify_identity(e: &Identity, opts: &VerifyOptions) -> VerificationReport {
    let tol = opts.tolerance_for(e);
    let start = Instant::now();
    let lhs = run_lhs(&e.lhs, tol, &opts.config);
    let rhs_value = cf_eval(&e.rhs);
    let seconds = start.elapsed().as_secs_f64();
    VerificationReport::new(&e.id, lhs, &e.rhs, rhs_value, tol, seconds)
}

fn verify_theorem_row(e: &Identity, k: u32, alternating: bool, opts: &VerifyOptions) -> VerificationReport {
    let mut r = verify_identity(e, opts);
    if let Some(cat_id) = theorem_catalog_id(k, alternating) {
        let cat = get(cat_id).expect("catalog ids are fixed");
        let same = cf_equal(&e.rhs, &cat.rhs);
        let note = if same {
            format!("closed form identical to {cat_id}")
        } else {
            format!("closed form differs from {cat_id}: {}", cat.rhs)
        };
        r.structural_match = Some(same);
        r.note = Some(match r.note.take() {
            Some(prev) => format!("{prev}; {note}"),
            None => note,
        });
    }
    r
}

/// Every catalog identity followed by the sixteen general-k rows, in fixed
/// order. With `parallel` the rows are verified on the global thread pool.
pub fn verify_all(parallel: bool) -> Vec<VerificationReport> {
    let opts = VerifyOptions {
        jobs: if parallel { None } else { Some(1) },
        ..VerifyOptions::default()
    };
    verify_all_with(&opts)
}

/// [`verify_all`] with explicit options. Report order never depends on
/// scheduling.
pub fn verify_all_with(opts: &VerifyOptions) -> Vec<VerificationReport> {
    use rayon::prelude::*;

    enum Job {
        Identity(Identity),
        Theorem(Identity, u32, bool),
    }
    let mut jobs: Vec<Job> = build_catalog().into_iter().map(Job::Identity).collect();
    for alternating in [false, true] {
        for k in 1..=THEOREM_MAX_K {
            jobs.push(Job::Theorem(theorem_identity(k, alternating), k, alternating));
        }
    }
    let run = |j: &Job| match j {
        Job::Identity(e) => verify_identity(e, opts),
        Job::Theorem(e, k, alt) => verify_theorem_row(e, *k, *alt, opts),
    };
    match opts.jobs {
        Some(1) => jobs.iter().map(run).collect(),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .expect("thread pool");
            pool.install(|| jobs.par_iter().map(run).collect())
        }
        None => jobs.par_iter().map(run).collect(),
    }
}
