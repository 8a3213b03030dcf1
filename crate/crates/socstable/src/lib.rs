//! Matching under social stability.
//!
//! In the Hospitals/Residents problem a blocking pair is any mutually
//! acceptable pair that would rather be matched together than stay with
//! their current assignment. Here each instance additionally carries an
//! acquaintance relation between residents and hospitals, and only
//! *acquainted* pairs can block: unacquainted pairs may appear in a
//! matching but never undermine one. Matchings without acquainted blocking
//! pairs are called socially stable, and unlike the classical case the
//! largest one can be up to twice the size of a classically stable
//! matching, while finding it is NP-hard in general.
//!
//! The crate provides:
//!
//! * [`model`]: instance and matching types, validation, two named
//!   fixture instances used throughout the tests.
//! * [`verify`]: blocking-pair reports and the stability predicates.
//! * [`classical`]: resident-proposing deferred acceptance, giving the
//!   classically stable baseline.
//! * [`approx`]: a 3/2-approximation to the maximum socially stable
//!   matching in one-to-one instances, extended to arbitrary capacities
//!   via hospital cloning.
//! * [`two_list`]: an exact polynomial solver for one-to-one instances
//!   whose residents rank at most two hospitals.
//! * [`fpt`]: exact solvers that are exponential only in the number of
//!   unacquainted pairs, or only in the number of acquainted pairs.
//! * [`reductions`]: capacity cloning, the translation to stability under
//!   a resident-side social network, the translation from stable marriage
//!   with tail ties, and the independent-set gadget behind the hardness
//!   of the problem.
//! * [`oracle`]: exhaustive ground-truth solvers for small instances.
//! * [`bipartite`]: the weighted bipartite matching primitives the exact
//!   solvers are built on.
//! * [`format`], [`gen`], [`report`]: the text formats, the seeded
//!   instance generator and the algorithm-dispatch layer used by the CLI.

pub mod approx;
pub mod bipartite;
pub mod classical;
pub mod error;
pub mod format;
pub mod fpt;
pub mod gen;
pub mod model;
pub mod oracle;
pub mod reductions;
pub mod report;
pub mod two_list;
pub mod verify;

pub use error::{BuildError, GenError, MatchingError, ParseError, SolverError};
pub use model::{fixture_fig1, fixture_tight, Hospital, HrssInstance, Matching, Pair, Rank, Resident, Violation};
