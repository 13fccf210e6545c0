//! Multimatrix algebras `⊕ M_{n_i}(ℂ)`, abstract *-algebras given by
//! structure constants, and the Wedderburn decomposition between them.

mod element;
mod morphism;
mod shape;
mod structure;
mod wedderburn;

pub use element::{evaluate, AlgebraElement};
pub use morphism::{block_permutation, morphism_flags, MorphismFlags};
pub use shape::{BlockShape, TensorShape, Unit};
pub use structure::StructureConstants;
pub use wedderburn::{wedderburn, Wedderburn};
