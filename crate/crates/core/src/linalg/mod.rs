//! Dense/sparse matrices, linear maps and the elimination and
//! characteristic-polynomial kernels.

mod map;
mod matrix;
mod poly;
mod solve;

pub use map::{kron, LinearMap};
pub use matrix::{
    accumulate, dense_from_sparse, is_negligible_vec, sparse_from_dense, Matrix, SparseVec,
};
pub use poly::{char_poly, eval_poly};
pub use solve::{
    determinant, express_in_span, independent_subset, inverse, kernel, rank, rank_of_vectors,
    solve_linear_system, RowReducer, Solution,
};
