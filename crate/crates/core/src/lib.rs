//! Finite polyadic (n-ary) groups.
//!
//! Every n-ary group on a finite carrier is `der_{θ,b}(G, ·)`: the operation
//! `x₁θ(x₂)θ²(x₃)⋯θ^{n-1}(xₙ)b` for a binary group `(G, ·)`, an automorphism `θ`
//! with `θ(b) = b` and `θ^{n-1}` equal to conjugation by `b`. This crate builds
//! such groups from either that presentation or a raw table and decides their
//! structure two ways: through the base group and automorphism, and by brute
//! force on the n-ary operation itself.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod catalog;
pub mod congruence;
pub mod error;
pub mod group;
pub mod limits;
pub mod morphisms;
pub mod polyadic;
pub mod simplicity;
pub mod substructures;

pub use error::{Error, Result};
pub use group::{Automorphism, FiniteGroup, QuotientGroup, Subgroup, SubgroupFilter};
pub use limits::Limits;
pub use polyadic::{AxiomReport, Form, NaryOp, PolyadicGroup, Presentation, RawTable};
