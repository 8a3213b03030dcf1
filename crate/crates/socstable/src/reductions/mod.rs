//! Instance transformations.
//!
//! * [`clone_to_unit_capacity`]: replace each hospital by one unit
//!   hospital per post; sizes and social stability transfer both ways.
//! * [`hrss_to_hrsn`]: re-express acquaintance as a resident-side social
//!   network by giving each hospital a dummy resident that befriends the
//!   hospital's acquainted residents; socially stable matchings correspond
//!   to locally stable ones.
//! * [`smti_to_smiss`]: stable marriage with one tie at the tail of each
//!   man's list; breaking the ties and marking the strict prefix as
//!   acquainted puts complete weakly stable matchings in one-to-one
//!   correspondence with complete socially stable ones.
//! * [`indset_to_smiss`]: per-vertex gadget mapping independent sets of
//!   size r to socially stable matchings of size n + r; this is the
//!   hardness source for the maximization problem.

mod clone;
mod hrsn;
mod indset;
mod smti;

pub use clone::{clone_to_unit_capacity, CloneMap};
pub use hrsn::{hrss_to_hrsn, HrsnInstance, HrsnMap};
pub use indset::{indset_to_smiss, SimpleGraph};
pub use smti::{smti_to_smiss, SmtiBuilder, SmtiInstance};
