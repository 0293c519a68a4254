//! Exact computer algebra for Soergel bimodules over small Weyl groups:
//! Rouquier complexes of braid words, support filtrations with standard
//! subquotients, and homotopy-category Hom spaces, all over exact
//! rational arithmetic.

pub mod bimodule;
pub mod cohomology;
pub mod complex;
pub mod coxeter;
pub mod frac;
pub mod gcd;
pub mod groebner;
pub mod homk;
pub mod hilbert;
pub mod linalg;
pub mod matrix;
pub mod minimize;
pub mod poly;
pub mod rouquier;
pub mod serialize;
pub mod support;

pub use bimodule::Bimodule;
pub use complex::{ChainMap, Complex};
pub use coxeter::{BraidWord, CoxeterSystem, Elem};
pub use frac::FracElem;
pub use hilbert::HilbertSeries;
pub use matrix::PolyMatrix;
pub use poly::{GradedPoly, Monomial, Rational};
