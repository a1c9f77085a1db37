//! Finite groups, their flows, and product decompositions of minimal flows.
//!
//! Everything here is exact, finite-scale mathematics: groups are validated
//! Cayley tables, flows are validated action tables, and the structural
//! theorems about cross sections, cocycles, and twisted product flows are
//! checked exhaustively rather than assumed. For a finite discrete group the
//! greatest ambit and the universal minimal flow both coincide with the group
//! acting on itself by left translation, which makes every construction in
//! this crate computable and every claimed isomorphism checkable by search.
//!
//! Conventions, fixed project-wide:
//!
//! * element `0` is the identity of every [`group::Group`];
//! * cosets are left cosets `gK`, indexed by their minimal member, with the
//!   minimal member as canonical representative;
//! * cross sections are normalized so the identity coset maps to the
//!   identity;
//! * product phase spaces `A × B` are encoded as `a * |B| + b`.
//!
//! The crate is `no_std` (with `alloc`); serialization and the command-line
//! driver live in the companion `umf-cli` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod caps;
pub mod extension;
pub mod flow;
pub mod group;
pub mod report;
pub mod tower;

pub use caps::Caps;
pub use report::{Check, VerificationReport};
