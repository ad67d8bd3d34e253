//! Check suites. Each suite returns named [`CheckReport`]s; a failing or
//! inconclusive report always carries a witness.
//!
//! Claims about generic points are checked exactly at random integer points.
//! A point that looks degenerate is redrawn up to [`sampling::MAX_RESAMPLES`]
//! times before the check is reported inconclusive.

mod highest;
mod index;
mod invariance;
mod nullcone;
mod regularity;
mod structure;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::contraction::Contraction;
use crate::invariants::{self, InvariantError, InvariantSet};
use crate::liecore::{Algebra, AlgebraSpec, Family, GVector, LieError};
use crate::polyring::SparsePoly;
use crate::rational::{self, Rational};

pub use highest::check_highest_components;
pub use index::check_index_and_degrees;
pub use invariance::{check_coadjoint_invariance, check_invariance_suite};
pub use nullcone::{check_nullcone_for, check_nullcone_inequality};
pub use regularity::check_regularity_suite;
pub use structure::check_structure_suite;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error("suite `{suite}` is not available for type {family}")]
    UnsupportedFamily { suite: &'static str, family: Family },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Symbolic,
    Sampled,
}

impl Mode {
    /// Symbolic for rank ≤ 3 and for type A up to rank 4, sampled otherwise.
    pub fn default_for(spec: AlgebraSpec) -> Mode {
        if spec.rank() <= 3 || (spec.family() == Family::A && spec.rank() <= 4) {
            Mode::Symbolic
        } else {
            Mode::Sampled
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Symbolic => "symbolic",
            Mode::Sampled => "sampled",
        })
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "symbolic" => Ok(Mode::Symbolic),
            "sampled" => Ok(Mode::Sampled),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub details: String,
    pub seed: u64,
    pub mode: Mode,
}

impl CheckReport {
    pub fn pass(name: impl Into<String>, mode: Mode, seed: u64, details: impl Into<String>) -> Self {
        CheckReport { name: name.into(), status: Status::Pass, witness: None, details: details.into(), seed, mode }
    }

    pub fn fail(name: impl Into<String>, mode: Mode, seed: u64, details: impl Into<String>, witness: Value) -> Self {
        CheckReport {
            name: name.into(),
            status: Status::Fail,
            witness: Some(witness),
            details: details.into(),
            seed,
            mode,
        }
    }

    pub fn inconclusive(
        name: impl Into<String>,
        mode: Mode,
        seed: u64,
        details: impl Into<String>,
        witness: Value,
    ) -> Self {
        CheckReport {
            name: name.into(),
            status: Status::Inconclusive,
            witness: Some(witness),
            details: details.into(),
            seed,
            mode,
        }
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Structure,
    Invariance,
    Index,
    Regularity,
    Nullcone,
    Highest,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Structure, Suite::Invariance, Suite::Index, Suite::Regularity, Suite::Nullcone, Suite::Highest];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Structure => "structure",
            Suite::Invariance => "invariance",
            Suite::Index => "index",
            Suite::Regularity => "regularity",
            Suite::Nullcone => "nullcone",
            Suite::Highest => "highest",
        }
    }

    /// Whether the suite can run for `family` without a user-supplied input.
    pub fn available_for(self, family: Family) -> bool {
        self != Suite::Nullcone || family == Family::A
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

/// Everything a suite needs, built once per algebra. The invariant set is
/// computed on first use.
pub struct Workspace {
    pub contraction: Contraction,
    invariants: OnceLock<Result<InvariantSet, InvariantError>>,
}

impl Workspace {
    pub fn new(spec: AlgebraSpec) -> Result<Self, VerifyError> {
        Ok(Workspace { contraction: Contraction::build(spec)?, invariants: OnceLock::new() })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.contraction.algebra
    }

    pub fn spec(&self) -> AlgebraSpec {
        self.algebra().spec
    }

    pub fn invariants(&self) -> Result<&InvariantSet, VerifyError> {
        self.invariants
            .get_or_init(|| invariants::invariant_set(self.algebra()))
            .as_ref()
            .map_err(|e| VerifyError::Invariant(e.clone()))
    }
}

/// Runtime options shared by the suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub mode: Mode,
    pub seed: u64,
    pub samples: usize,
}

impl Options {
    pub const DEFAULT_SAMPLES: usize = 25;

    pub fn new(spec: AlgebraSpec) -> Self {
        Options { mode: Mode::default_for(spec), seed: 0, samples: Self::DEFAULT_SAMPLES }
    }
}

pub fn run_suite(ws: &Workspace, suite: Suite, opts: &Options) -> Result<Vec<CheckReport>, VerifyError> {
    let s = opts.samples.max(1);
    match suite {
        Suite::Structure => check_structure_suite(ws, opts.seed),
        Suite::Invariance => check_invariance_suite(ws, opts.mode, opts.seed, s),
        Suite::Index => check_index_and_degrees(ws, opts.seed, s),
        Suite::Regularity => check_regularity_suite(ws, opts.seed, s),
        Suite::Nullcone => check_nullcone_inequality(ws, opts.seed),
        Suite::Highest => check_highest_components(ws, opts.seed),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SpecInfo {
    pub family: Family,
    pub rank: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub spec: SpecInfo,
    pub mode: Mode,
    pub seed: u64,
    pub checks: Vec<CheckReport>,
}

impl Report {
    pub fn new(spec: AlgebraSpec, opts: &Options, mut checks: Vec<CheckReport>) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        Report { spec: SpecInfo { family: spec.family(), rank: spec.rank() }, mode: opts.mode, seed: opts.seed, checks }
    }

    /// Fail beats inconclusive beats pass.
    pub fn status(&self) -> Status {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if self.checks.iter().any(|c| c.status == Status::Inconclusive) {
            Status::Inconclusive
        } else {
            Status::Pass
        }
    }
}

/// Runs the given suites in order on one workspace.
pub fn run_suites(spec: AlgebraSpec, suites: &[Suite], opts: &Options) -> Result<Report, VerifyError> {
    let ws = Workspace::new(spec)?;
    let mut checks = Vec::new();
    for &suite in suites {
        checks.extend(run_suite(&ws, suite, opts)?);
    }
    Ok(Report::new(spec, opts, checks))
}

// ---- witness helpers ----

pub(crate) fn point_json(algebra: &Algebra, coords: &[Rational]) -> Value {
    let map: BTreeMap<String, String> = coords
        .iter()
        .enumerate()
        .filter(|(_, v)| !num_traits::Zero::is_zero(*v))
        .map(|(i, v)| (algebra.label(i).to_string(), rational::to_string(v)))
        .collect();
    json!(map)
}

pub(crate) fn vector_json(algebra: &Algebra, v: &GVector) -> Value {
    point_json(algebra, v.coords())
}

pub(crate) fn poly_json(p: &SparsePoly) -> Value {
    serde_json::to_value(p.to_dump()).expect("dump terms serialize")
}

/// Stream identifiers keep the random points of different checks independent.
pub(crate) fn stream(tag: u64, i: u64) -> u64 {
    (tag << 40) | i
}
