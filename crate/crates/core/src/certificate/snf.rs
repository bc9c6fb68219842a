//! Smith Normal Form over ℤ with unimodular transforms, and the
//! `p`-divisibility certificate for the `r × r` minors.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::fp::Prime;
use crate::matrix::IntMatrix;

/// `M = B·D·C` with `D = diag(d_1, …, d_r, 0, …)`, `d_i | d_{i+1}`, `d_i > 0`
/// and `|det B| = |det C| = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmithNormalForm {
    #[serde(serialize_with = "ser_bigints")]
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithNormalForm {
    /// The full `rows × cols` diagonal matrix `D`.
    pub fn d_matrix(&self, rows: usize, cols: usize) -> IntMatrix {
        let mut d = IntMatrix::zeros(rows, cols);
        for (k, v) in self.diagonal.iter().enumerate() {
            d[(k, k)] = v.clone();
        }
        d
    }

    /// Recomputes `B·D·C`.
    pub fn reconstruct(&self) -> IntMatrix {
        let d = self.d_matrix(self.left.cols(), self.right.rows());
        self.left.mul(&d).mul(&self.right)
    }
}

pub(crate) fn ser_bigints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(BigInt::to_string))
}

pub(crate) fn ser_bigint<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Working state maintaining `left · work · right = original`.
struct Reducer {
    work: IntMatrix,
    left: IntMatrix,
    right: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.work.swap_rows(i, j);
        self.left.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.work.swap_cols(i, j);
        self.right.swap_rows(i, j);
    }

    /// `row[dst] += k·row[src]`.
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.work.add_row_multiple(dst, src, k);
        self.left.add_col_multiple(src, dst, &-k);
    }

    /// `col[dst] += k·col[src]`.
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.work.add_col_multiple(dst, src, k);
        self.right.add_row_multiple(src, dst, &-k);
    }

    fn negate_row(&mut self, i: usize) {
        self.work.negate_row(i);
        self.left.negate_col(i);
    }

    /// Smallest nonzero `|entry|` in the trailing block starting at `t`.
    fn smallest(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.work.rows() {
            for j in t..self.work.cols() {
                let v = &self.work[(i, j)];
                if v.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| v.abs() < self.work[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn reduce(&mut self) -> usize {
        let (rows, cols) = (self.work.rows(), self.work.cols());
        let mut t = 0;
        while t < rows.min(cols) {
            let Some((pi, pj)) = self.smallest(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let pivot = self.work[(t, t)].clone();
                let mut dirty = false;
                for i in t + 1..rows {
                    if self.work[(i, t)].is_zero() {
                        continue;
                    }
                    let q = self.work[(i, t)].div_floor(&pivot);
                    self.add_row(i, t, &-q);
                    dirty |= !self.work[(i, t)].is_zero();
                }
                for j in t + 1..cols {
                    if self.work[(t, j)].is_zero() {
                        continue;
                    }
                    let q = self.work[(t, j)].div_floor(&pivot);
                    self.add_col(j, t, &-q);
                    dirty |= !self.work[(t, j)].is_zero();
                }
                if dirty {
                    // a remainder smaller than the pivot appeared; move it up
                    let (bi, bj) = self.smallest_in_cross(t);
                    self.swap_rows(t, bi);
                    self.swap_cols(t, bj);
                    continue;
                }
                // row and column cleared; enforce divisibility of the rest
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !self.work[(i, j)].is_multiple_of(&pivot));
                match bad {
                    Some((i, _)) => {
                        self.add_row(t, i, &BigInt::from(1));
                    }
                    None => break,
                }
            }
            if self.work[(t, t)].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        t
    }

    /// Smallest nonzero entry of row `t` and column `t`.
    fn smallest_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        let mut cells: Vec<(usize, usize)> = (t..self.work.rows()).map(|i| (i, t)).collect();
        cells.extend((t + 1..self.work.cols()).map(|j| (t, j)));
        for (i, j) in cells {
            let v = &self.work[(i, j)];
            if !v.is_zero() && v.abs() < self.work[best].abs() {
                best = (i, j);
            }
        }
        best
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithNormalForm {
    let mut r = Reducer {
        work: m.clone(),
        left: IntMatrix::identity(m.rows()),
        right: IntMatrix::identity(m.cols()),
    };
    let rank = r.reduce();
    let diagonal = (0..rank).map(|k| r.work[(k, k)].clone()).collect();
    SmithNormalForm {
        diagonal,
        rank,
        left: r.left,
        right: r.right,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinorSampling {
    /// Enumerate every minor when `C(rows, r)·C(cols, r)` is at most this.
    pub exhaustive_limit: u64,
    /// Otherwise draw this many random (row set, column set) pairs.
    pub samples: usize,
    pub seed: u64,
}

impl Default for MinorSampling {
    fn default() -> Self {
        MinorSampling {
            exhaustive_limit: 10_000,
            samples: 1_000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinorSample {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    #[serde(serialize_with = "ser_bigint")]
    pub value: BigInt,
    pub divisible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SnfCertificate {
    pub p: Prime,
    pub matrix: IntMatrix,
    pub rank: usize,
    #[serde(serialize_with = "ser_bigints")]
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
    /// `p | d_r`.
    pub divisibility_verdict: bool,
    pub minors_exhaustive: bool,
    pub sampled_minors: Vec<MinorSample>,
}

impl SnfCertificate {
    pub fn new(m: &IntMatrix, p: Prime, sampling: &MinorSampling) -> Self {
        let snf = smith_normal_form(m);
        let prime = BigInt::from(p.get());
        let divisibility_verdict = snf
            .diagonal
            .last()
            .is_some_and(|d| d.is_multiple_of(&prime));
        let (minors_exhaustive, sampled_minors) = sample_minors(m, snf.rank, &prime, sampling);
        SnfCertificate {
            p,
            matrix: m.clone(),
            rank: snf.rank,
            diagonal: snf.diagonal,
            left: snf.left,
            right: snf.right,
            divisibility_verdict,
            minors_exhaustive,
            sampled_minors,
        }
    }

    pub fn all_minors_divisible(&self) -> bool {
        self.sampled_minors.iter().all(|s| s.divisible)
    }

    /// Product `d_1 ⋯ d_r`, the gcd of the `r × r` minors.
    pub fn determinantal_divisor(&self) -> BigInt {
        self.diagonal.iter().product()
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

fn sample_minors(
    m: &IntMatrix,
    r: usize,
    prime: &BigInt,
    cfg: &MinorSampling,
) -> (bool, Vec<MinorSample>) {
    if r == 0 {
        return (true, Vec::new());
    }
    let minor = |rows: Vec<usize>, cols: Vec<usize>| {
        let value = m.submatrix(&rows, &cols).det();
        let divisible = value.is_multiple_of(prime);
        MinorSample {
            rows,
            cols,
            value,
            divisible,
        }
    };
    let total = binomial(m.rows(), r).saturating_mul(binomial(m.cols(), r));
    if total <= cfg.exhaustive_limit {
        let out = (0..m.rows())
            .combinations(r)
            .cartesian_product((0..m.cols()).combinations(r).collect::<Vec<_>>())
            .map(|(rows, cols)| minor(rows, cols))
            .collect();
        return (true, out);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let out = (0..cfg.samples)
        .map(|_| {
            let mut rows = sample(&mut rng, m.rows(), r).into_vec();
            let mut cols = sample(&mut rng, m.cols(), r).into_vec();
            rows.sort_unstable();
            cols.sort_unstable();
            minor(rows, cols)
        })
        .collect();
    (false, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    fn check(mat: &IntMatrix) -> SmithNormalForm {
        let s = smith_normal_form(mat);
        assert_eq!(&s.reconstruct(), mat);
        assert_eq!(s.left.det().abs(), BigInt::from(1));
        assert_eq!(s.right.det().abs(), BigInt::from(1));
        for w in s.diagonal.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        assert!(s.diagonal.iter().all(|d| d.is_positive()));
        assert_eq!(s.rank, mat.rank());
        s
    }

    #[test]
    fn diagonal_input() {
        let s = check(&m(&[&[2, 0], &[0, 6]]));
        assert_eq!(s.diagonal, vec![BigInt::from(2), BigInt::from(6)]);
    }

    #[test]
    fn two_by_two() {
        // gcd of entries is 1 and |det| = 8
        let s = check(&m(&[&[3, 1], &[1, 3]]));
        assert_eq!(s.diagonal, vec![BigInt::from(1), BigInt::from(8)]);
    }

    #[test]
    fn divisibility_repair() {
        // diag(2, 3) is diagonal but not in normal form
        let s = check(&m(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.diagonal, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn rectangular_and_singular() {
        let s = check(&m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(
            s.diagonal,
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
        let s = check(&m(&[&[1, 2, 3], &[2, 4, 6]]));
        assert_eq!(s.rank, 1);
        check(&m(&[&[0, 0], &[0, 0]]));
        check(&m(&[&[0, 3, 1, -1], &[3, 0, 2, 1], &[-1, 2, 2, 0]]));
    }

    #[test]
    fn certificate_for_f5_matrix() {
        // det [[3,1],[-1,3]] = 10, divisible by 5
        let cert = SnfCertificate::new(
            &m(&[&[3, 1], &[-1, 3]]),
            Prime::new(5).unwrap(),
            &MinorSampling::default(),
        );
        assert_eq!(cert.diagonal, vec![BigInt::from(1), BigInt::from(10)]);
        assert!(cert.divisibility_verdict);
        assert!(cert.minors_exhaustive);
        assert_eq!(cert.sampled_minors.len(), 1);
        assert!(cert.all_minors_divisible());
    }

    #[test]
    fn sampled_minors_are_seeded() {
        let rows: Vec<Vec<i64>> = (0..4)
            .map(|i| {
                (0..12)
                    .map(|j| (i * j % 5) as i64 + i64::from(i == j))
                    .collect()
            })
            .collect();
        let mat = IntMatrix::from_rows(&rows);
        let cfg = MinorSampling {
            exhaustive_limit: 10,
            samples: 20,
            seed: 7,
        };
        let a = SnfCertificate::new(&mat, Prime::new(5).unwrap(), &cfg);
        let b = SnfCertificate::new(&mat, Prime::new(5).unwrap(), &cfg);
        assert!(!a.minors_exhaustive);
        assert_eq!(a.sampled_minors, b.sampled_minors);
        assert_eq!(a.sampled_minors.len(), 20);
    }
}
