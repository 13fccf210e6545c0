//! Decision procedures on maps between Kac algebras: Jordan and Størmer
//! checks, antipode intertwining, orthogonality, isospectrality, the
//! isomorphism classifier and bi-inner automorphisms.

mod biinner;
mod checks;
mod classify;

pub use biinner::{
    ad, biinner_check, block_rotation, diagonal_commutant, is_unitary, unit_phase, BiInnerReport, DiagonalCommutant,
};
pub use checks::{
    canonical_projections, intertwines_antipodes, is_positive_element, jordan_check, orthogonality_preserving_check,
    power_trace_isospectral, stormer_decompose, AntipodeReport, Isospectral, OrthogonalityReport, Stormer,
    StormerLabel,
};
pub use classify::{
    classify_iso, coproduct_intertwining, fusion_isomorphisms, lift_k_iso, map_flags, Dichotomy, MapFlags, MapReport,
    Verdict,
};
