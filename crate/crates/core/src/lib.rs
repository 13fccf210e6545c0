//! Finite-dimensional Kac algebras by exact structure constants.
//!
//! Algebras live in matrix-unit coordinates of a [`multimatrix::BlockShape`];
//! the coalgebra maps are sparse matrices over a [`scalar::Scalar`]. On top of
//! that sit Haar states and axiom checks ([`hopf`]), duality and convolution
//! ([`duality`]), fusion rings and towers ([`ktheory`]) and the map
//! classifiers ([`analysis`]). [`io`] reads and writes JSON spec files.

pub mod analysis;
pub mod duality;
pub mod error;
pub mod hopf;
pub mod io;
pub mod ktheory;
pub mod linalg;
pub mod multimatrix;
pub mod scalar;

pub use error::{Error, Result};

/// Default exact field, ℚ(i, √3).
pub type Exact = scalar::Cyclo12;
/// ℚ(i).
pub type Gaussian = scalar::GaussRat;
pub type Float = scalar::CF64;

pub type ExactHopf = hopf::HopfAlgebra<Exact>;
pub type GaussianHopf = hopf::HopfAlgebra<Gaussian>;
pub type FloatHopf = hopf::HopfAlgebra<Float>;
pub type ExactMap = linalg::LinearMap<Exact>;
pub type FloatMap = linalg::LinearMap<Float>;
