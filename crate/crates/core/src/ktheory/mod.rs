//! K₀ as an ordered ring: the box product on minimal-projection generators,
//! K-theory states, the box/convolution identity, K-co-multiplicativity and
//! truncated towers of tensor powers.

mod boxconv;
mod fusion;
mod tower;

pub use boxconv::{check_k_comultiplicative, verify_box_convolve, BoxConvolveEntry, BoxConvolveReport, KComultReport};
pub use fusion::{box_fusion, fusion_ring, k0_states, FusionRing, K0States};
pub use tower::{build_tower, check_connecting_map, BratteliTower, TowerLevel, DEFAULT_CAP};

#[cfg(test)]
mod tests;
