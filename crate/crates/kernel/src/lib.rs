//! Exact graded commutative algebra over prime fields.
//!
//! The kernel provides polynomial arithmetic, Gröbner bases for ideals and
//! graded submodules of free modules, syzygies, minimal free resolutions,
//! Hilbert series, and the ideal operations (quotient, saturation,
//! intersection) needed to study curves in projective 3-space.

pub mod error;
pub mod field;
pub mod graded;
pub mod groebner;
pub mod hilbert;
pub mod ideal;
pub mod koszul;
pub mod linalg;
pub mod module;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod resolution;
pub mod ring;
pub mod rng;
pub mod syzygy;

pub use error::{KernelError, Result};
pub use field::PrimeField;
pub use graded::{graded_piece_rank, GradedMap};
pub use ideal::{groebner_basis, normal_form, DimDeg, Ideal, LinearChange};
pub use koszul::koszul_betti;
pub use linalg::DenseMatrix;
pub use monomial::{Monomial, MonomialOrder, MAX_VARS};
pub use parse::{format_ideal_file, parse_ideal_file, parse_poly};
pub use poly::Poly;
pub use resolution::{minimal_free_resolution, BettiTable, Resolution};
pub use ring::{Ring, RingRef};
pub use rng::{random_form, random_form_in, SeededRng};
pub use syzygy::{syzygies_of_forms, syzygy_basis};
