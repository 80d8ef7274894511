//! Exact GF(2) kernels: packed bit vectors with elimination, polynomials as
//! monomial sets, and elements of tensor squares.

mod bits;
mod poly;
mod tensor;

pub use bits::{
    apply_columns, invert_columns, rank_gf2, row_reduce, solve, EchelonBasis, GF2Vector,
};
pub use poly::{default_names, monomials_of_degree, GF2Poly, Monomial};
pub use tensor::TensorElement;

use crate::error::{Error, Result};

/// Parity of the binomial coefficient `C(k, i)` by Lucas' theorem:
/// odd exactly when the binary digits of `i` are a subset of those of `k`.
pub fn binom_odd(k: u64, i: u64) -> Result<bool> {
    if i > k {
        return Err(Error::InvalidInput(format!(
            "binomial index {i} out of range 0..={k}"
        )));
    }
    Ok(i & k == i)
}
