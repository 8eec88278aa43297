//! Quantum invariants of virtual link diagrams.
//!
//! A virtual link diagram is stored as a signed Gauss code: each component is
//! a cyclic word of over/under passes through classical crossings. Virtual
//! crossings carry no combinatorial data and are never stored; this quotients
//! by the virtual Reidemeister moves and the detour move by construction.
//!
//! On top of that data model the crate computes
//!
//! * the generalized bracket polynomial (exact Laurent coefficients or
//!   complex values at a root of unity), the writhe-normalized polynomial
//!   `f_K`, and the Jones polynomial ([`bracket`]),
//! * Jones-Wenzl projectors in the Temperley-Lieb/Brauer diagram algebra and
//!   colored Jones polynomials via cabling ([`tangle`]),
//! * closed-form recoupling evaluations at roots of unity: theta nets,
//!   tetrahedral nets, twist and fusion coefficients ([`recoupling`]),
//! * the unnormalized and normalized Witten-Reshetikhin-Turaev invariant
//!   ([`wrt`]),
//! * Reidemeister and Kirby move engines for invariance testing ([`moves`]),
//! * Wirtinger presentations, longitudes, and 3-manifold groups with Smith
//!   normal form abelianization ([`groups`]).
//!
//! Everything is pure and allocation-only; the crate is `no_std` (with
//! `alloc`). IO, file formats, and the CLI live in the companion crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bracket;
pub mod codec;
pub mod groups;
pub mod moves;
pub mod nets;
pub mod poly;
pub mod recoupling;
pub mod tangle;
pub mod verify;
pub mod wrt;

pub use codec::VirtualLinkDiagram;
pub use poly::{Laurent, RootParams};
pub use wrt::WrtResult;
