//! Exact computations on the G-Hilbert scheme of a finite abelian subgroup
//! `G ⊂ SL(3, C)`.
//!
//! The pipeline runs from a group specification to
//!
//! * the character group and the tensor-decomposition (McKay) matrices,
//! * the torus-fixed points, i.e. G-graphs of type A or B,
//! * the toric fan of the resolution, with smoothness and crepancy checks,
//! * `dim Hom_A(I1, A/I2)^G` for pairs of fixed points,
//! * the quiver data `(B1, B2, B3, i)` at fixed and chart points, and the
//!   homology of the associated Koszul complexes.
//!
//! All arithmetic is exact.

pub mod error;
pub mod ggraph;
pub mod group;
pub mod homcalc;
pub mod koszul;
pub mod linalg;
pub mod mckay;
pub mod monomial;
pub mod toric;
pub mod verify;

pub use error::{Error, Result};
pub use ggraph::{GGraph, Kind, Params};
pub use group::{build_group, AbelianGroup, GroupSpec};
pub use monomial::{Monomial, MonomialIdeal};
