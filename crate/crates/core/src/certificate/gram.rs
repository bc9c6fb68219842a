//! Gram determinants of type-1 path blocks and of stacked blocks.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::matrix::{gram_det, IntMatrix};

use super::snf::{ser_bigint, ser_bigints};

/// `det(B·Bᵀ)` for the `v` rows `3x_i ± x_{i+1}` of a directed path with
/// `v` edges: `(9^{v+1} - 1) / 8`.
pub fn path_gram_det(v: usize) -> BigInt {
    assert!(v >= 1, "a path has at least one edge");
    (BigInt::from(9u32).pow(v as u32 + 1) - 1) / 8
}

/// The `v × (v+1)` coefficient matrix of a path, row `i` being `3` at column
/// `i` and `signs[i]` at column `i + 1`.
pub fn path_matrix(signs: &[i8]) -> IntMatrix {
    let v = signs.len();
    let mut m = IntMatrix::zeros(v, v + 1);
    for (i, &s) in signs.iter().enumerate() {
        m[(i, i)] = BigInt::from(3);
        m[(i, i + 1)] = BigInt::from(s);
    }
    m
}

/// Both sides of `det(CCᵀ) ≤ ∏ det(A_i A_iᵀ)` for `C` the stack of the blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockGramReport {
    #[serde(serialize_with = "ser_bigint")]
    pub stacked: BigInt,
    #[serde(serialize_with = "ser_bigints")]
    pub block_dets: Vec<BigInt>,
    #[serde(serialize_with = "ser_bigint")]
    pub product: BigInt,
    pub holds: bool,
}

pub fn block_gram_inequality_check(blocks: &[IntMatrix]) -> BlockGramReport {
    let stacked = gram_det(&IntMatrix::stack(blocks));
    let block_dets: Vec<BigInt> = blocks.iter().map(gram_det).collect();
    let product = block_dets.iter().fold(BigInt::one(), |acc, d| acc * d);
    let holds = stacked <= product;
    BlockGramReport {
        stacked,
        block_dets,
        product,
        holds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn path_values() {
        assert_eq!(path_gram_det(1), 10.into());
        assert_eq!(path_gram_det(2), 91.into());
        assert_eq!(path_gram_det(3), 820.into());
    }

    #[test]
    fn path_matrix_shape() {
        let b = path_matrix(&[1, -1]);
        assert_eq!(b, m(&[&[3, 1, 0], &[0, 3, -1]]));
        assert_eq!(gram_det(&b), 91.into());
    }

    #[test]
    fn block_examples() {
        let r = block_gram_inequality_check(&[m(&[&[1, 0]]), m(&[&[0, 1]])]);
        assert_eq!((r.stacked.clone(), r.product.clone()), (1.into(), 1.into()));
        assert!(r.holds);
        let r = block_gram_inequality_check(&[m(&[&[1, 0]]), m(&[&[1, 0]])]);
        assert_eq!((r.stacked.clone(), r.product.clone()), (0.into(), 1.into()));
        assert!(r.holds);
    }
}
