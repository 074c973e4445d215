use num_bigint::BigInt;

use crate::geometry::VParallelogram;
use crate::scalar::dyadic;
use crate::tree::Vertex;
use crate::{Rational, Result};

/// Vertex `a₀a₁…a_k` with `a₀ = 0` and `Σ a_i 2^{-i} = j·2^{-k}`.
pub fn encode_code(k: usize, j: u64) -> Result<Vertex> {
    Vertex::from_code(k, &BigInt::from(j))
}

/// Canonical parallelogram of a code: vertical sides at `x = 0` and `x = 1`,
/// bottom-left corner at the origin, slope equal to the code's value and side
/// length `2^{-h}`.
pub fn decode_code(v: &Vertex) -> VParallelogram<Rational> {
    VParallelogram::new(dyadic(0, 0), dyadic(1, 0), dyadic(0, 0), v.value(), dyadic(1, v.height() as u32))
        .expect("canonical parallelogram is nondegenerate")
}
