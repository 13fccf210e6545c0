//! Hopf *-algebra structure on multimatrix algebras: axiom verification,
//! Haar state, co-centre, the κ-symmetric real part, standard builders and
//! tensor products.

mod algebra;
mod build;
mod group;
mod invariants;
mod tensor;
mod verify;

pub use algebra::{sparse_eq, sparse_residual, HopfAlgebra};
pub use build::{
    build_standard, function_algebra, group_algebra, group_algebra_abstract, kac_palyutkin,
    kac_palyutkin_abstract, AbstractHopf, FaultTarget, Preset,
};
pub use group::FiniteGroup;
pub use invariants::{
    cocentre_basis, haar_state, haar_values, is_positive, is_tracial, kappa_star, kappa_symmetric_basis,
    KappaSymmetric,
};
pub use tensor::{tensor_functional, tensor_hopf, tensor_power};
pub use verify::{verify_hopf, AxiomReport, AxiomResult, AXIOMS};
