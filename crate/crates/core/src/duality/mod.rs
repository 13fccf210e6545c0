//! The dual Hopf algebra, the pairing between `A` and `Â`, the Fourier
//! transform and convolution, and convolution of linear maps.

mod convolution;
mod dual;

pub use convolution::{map_convolve, MapConvolutionElement};
pub use dual::{dual_abstract, dualize, DualAlgebra};

#[cfg(test)]
mod tests;
