//! Exact linear algebra over ℚ: matrices, canonical subspaces, characteristic
//! polynomials and rational polynomial factorization.

mod factor;
mod matrix;
mod poly;
mod subspace;

pub use factor::{factor_rational, factor_squarefree_integer, squarefree_decomposition};
pub use matrix::{Matrix, Rref};
pub use poly::{char_poly, companion, RatPoly};
pub use subspace::{contains, coordinates, image, kernel, subspace_intersect, subspace_sum, Subspace};
