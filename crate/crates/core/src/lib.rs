//! Exact combinatorial engine for compact flat manifolds of diagonal type
//! with holonomy `Z_2^k`.
//!
//! The crate is `no_std` (it needs `alloc`). It covers:
//!
//! * [`chargroup`]: characters of `Z_2^k` as bitmasks, circuits, and the
//!   automorphism group `GL(k, 2)` acting on them.
//! * [`diagrep`]: diagonal representations as multiplicity vectors, their
//!   patterns, structural predicates and equivalence.
//! * [`flip`]: the flip construction of almost-conjugate partners.
//! * [`cohomology`]: Betti numbers, primitive invariant forms and monomial
//!   bases of the invariant exterior algebra.
//! * [`bieberbach`]: Bieberbach groups of diagonal type, torsion-freeness,
//!   Sunada numbers and explicit constructions.
//! * [`search`]: exhaustive enumeration of almost-conjugate families.
//!
//! IO, the command line and multi-threaded enumeration live in the
//! companion `isoflat` crate.

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bieberbach;
pub mod chargroup;
pub mod cohomology;
pub mod diagrep;
mod error;
pub mod fixtures;
pub mod flip;
pub mod search;

pub use bieberbach::{BieberbachGroup, HalfVector, SunadaTable};
pub use chargroup::{Automorphism, CharMask, Circuit, Sign};
pub use cohomology::{BettiTable, GradedSpan, Monomial};
pub use diagrep::{BlockOrder, DiagonalRep, KahlerClass, Layout, Pattern};
pub use error::{Error, Result};
pub use flip::{FlipSpec, Inapplicable, Shift};
pub use search::{Family, Member, SearchConfig};

/// Largest supported rank `k` of the holonomy group `Z_2^k`.
pub const MAX_RANK: u32 = 16;

/// Largest supported dimension `n`; coordinates are packed into `u64` masks.
pub const MAX_DIM: u32 = 64;

/// Largest rank for which exhaustive `GL(k, 2)` iteration is offered.
pub const MAX_ORBIT_RANK: u32 = 5;
