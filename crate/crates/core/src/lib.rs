//! Exact symbolic calculus for Seiberg-Witten invariants of finite cyclic
//! group actions on 4-manifolds.
//!
//! The crate is layered bottom-up: [`algebra`] supplies arbitrary-precision
//! rationals, cyclotomic fields and elementary number theory; [`grouptheory`]
//! enumerates subgroup lattices; [`cohring`] models the graded cohomology of
//! a cyclic group at a point together with the Laurent-coefficient extractor
//! used by localisation; [`reptheory`] and [`charclass`] provide character
//! and characteristic-class calculus; [`swcalc`], [`kahler`] and [`gluing`]
//! evaluate the invariant formulas themselves; [`obstruct`] turns them into
//! yes/no obstruction verdicts on user-supplied action data.

pub mod algebra;
pub mod charclass;
pub mod cohring;
pub mod error;
pub mod gluing;
pub mod grouptheory;
pub mod kahler;
pub mod obstruct;
pub mod reptheory;
pub mod swcalc;

pub use error::{Error, Result};
