//! Uniform solver dispatch: pick an algorithm by name, run it, time it,
//! and report the verdict alongside the matching.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::approx::{self, ApproxStats, TraceEvent};
use crate::classical;
use crate::error::SolverError;
use crate::fpt::{self, FptConfig};
use crate::model::{HrssInstance, Matching};
use crate::oracle;
use crate::two_list;
use crate::verify;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    /// Resident-proposing deferred acceptance; ignores acquaintance.
    Stable,
    /// Two-tier proposal algorithm, within 3/2 of the maximum.
    Approx,
    /// Exact solver for resident lists of length at most 2.
    TwoInf,
    /// Exact solver parameterized by the unacquainted pairs.
    FptUnacquainted,
    /// Exact solver parameterized by the acquainted pairs.
    FptAcquainted,
    /// Exhaustive search.
    Brute,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Stable,
        Algorithm::Approx,
        Algorithm::TwoInf,
        Algorithm::FptUnacquainted,
        Algorithm::FptAcquainted,
        Algorithm::Brute,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Stable => "stable",
            Algorithm::Approx => "approx",
            Algorithm::TwoInf => "two-inf",
            Algorithm::FptUnacquainted => "fpt-u",
            Algorithm::FptAcquainted => "fpt-a",
            Algorithm::Brute => "brute",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Algorithm::ALL.iter().map(|a| a.name()).collect();
                format!("unknown algorithm {s}; expected one of {}", names.join(", "))
            })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    /// Search-space cap for the exhaustive algorithm.
    pub brute_limit: u64,
    pub fpt: FptConfig,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            brute_limit: oracle::DEFAULT_LIMIT,
            fpt: FptConfig::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub algorithm: Algorithm,
    pub matching: Matching,
    pub socially_stable: bool,
    pub elapsed: Duration,
    /// Present only for the proposal-based approximation.
    pub stats: Option<ApproxStats>,
}

pub fn solve(
    inst: &HrssInstance,
    algorithm: Algorithm,
    options: &SolveOptions,
) -> Result<SolveReport, SolverError> {
    solve_traced(inst, algorithm, options, &mut |_, _| {})
}

/// Like [`solve`], streaming proposal events when the algorithm is
/// [`Algorithm::Approx`]. The instance handed to the callback is the
/// unit-capacity image the events refer to.
pub fn solve_traced(
    inst: &HrssInstance,
    algorithm: Algorithm,
    options: &SolveOptions,
    trace: &mut dyn FnMut(&HrssInstance, &TraceEvent),
) -> Result<SolveReport, SolverError> {
    let start = Instant::now();
    let (matching, stats) = match algorithm {
        Algorithm::Stable => (classical::stable_matching(inst), None),
        Algorithm::Approx => {
            let (m, stats) = approx::solve_hrss_traced(inst, trace)?;
            (m, Some(stats))
        }
        Algorithm::TwoInf => (two_list::solve(inst)?, None),
        Algorithm::FptUnacquainted => (fpt::solve_fpt_unacquainted(inst, &options.fpt)?, None),
        Algorithm::FptAcquainted => (fpt::solve_fpt_acquainted(inst, &options.fpt)?, None),
        Algorithm::Brute => (oracle::max_socially_stable(inst, options.brute_limit)?, None),
    };
    let elapsed = start.elapsed();
    let socially_stable = verify::is_socially_stable(inst, &matching)
        .expect("solvers produce valid matchings");
    Ok(SolveReport {
        algorithm,
        matching,
        socially_stable,
        elapsed,
        stats,
    })
}
