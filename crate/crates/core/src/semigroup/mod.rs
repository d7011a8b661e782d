//! Branches (Galois orbits of roots) and windows of value semigroups.

mod branches;
mod window;

pub use branches::{orbit, partition_branches, Branch, BranchPartition, DEFAULT_ORBIT_CAP};
pub use window::{
    check_invariance, semigroup_window, InvarianceReport, PairVerdict, SubringSpec, ValueWindow,
};
