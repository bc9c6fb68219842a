//! Independent reference implementations used as test oracles.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use unidiff::cyclotomic::CycInt;
use unidiff::IntMatrix;

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n)
        .filter(|&k| (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0))
        .collect()
}

/// Whether some `x` has exactly one ordered pair `(a, b)` in `set²` with
/// `a - b ≡ x (mod p)`.
pub fn naive_has_unique_difference(set: &[u64], p: u64) -> bool {
    let mut counts = vec![0usize; p as usize];
    for &a in set {
        for &b in set {
            counts[((a + p - b) % p) as usize] += 1;
        }
    }
    counts.contains(&1)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Cofactor expansion along the first row.
pub fn laplace_det(a: &[Vec<i128>]) -> i128 {
    let n = a.len();
    match n {
        0 => 1,
        1 => a[0][0],
        2 => a[0][0] * a[1][1] - a[0][1] * a[1][0],
        _ => {
            let mut total = 0i128;
            for j in 0..n {
                if a[0][j] == 0 {
                    continue;
                }
                let minor: Vec<Vec<i128>> = a[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                total += sign * a[0][j] * laplace_det(&minor);
            }
            total
        }
    }
}

/// `det(A·Aᵀ)` by explicit product and cofactor expansion.
pub fn gram_det_laplace(rows: &[Vec<i64>]) -> i128 {
    let g: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| {
            rows.iter()
                .map(|s| r.iter().zip(s).map(|(&x, &y)| (x * y) as i128).sum())
                .collect()
        })
        .collect();
    laplace_det(&g)
}

/// `det(A·Aᵀ)` as the product of squared lengths of the rational
/// Gram–Schmidt vectors.
pub fn gram_det_gram_schmidt(rows: &[Vec<i64>]) -> BigRational {
    let to_q = |v: i64| BigRational::from_integer(BigInt::from(v));
    let mut basis: Vec<Vec<BigRational>> = Vec::new();
    let mut product = BigRational::one();
    for r in rows {
        let mut v: Vec<BigRational> = r.iter().map(|&x| to_q(x)).collect();
        for b in &basis {
            let bb: BigRational = b.iter().map(|x| x * x).sum();
            if bb.is_zero() {
                continue;
            }
            let vb: BigRational = v.iter().zip(b).map(|(x, y)| x * y).sum();
            let c = vb / bb;
            for (x, y) in v.iter_mut().zip(b) {
                *x -= &c * y;
            }
        }
        let norm: BigRational = v.iter().map(|x| x * x).sum();
        product *= &norm;
        basis.push(v);
    }
    product
}

/// Determinant by exact rational elimination.
pub fn rational_det(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            m.row(i)
                .iter()
                .map(|v| BigRational::from_integer(v.clone()))
                .collect()
        })
        .collect();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if piv != k {
            a.swap(piv, k);
            det = -det;
        }
        det *= &a[k][k];
        for i in k + 1..n {
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    assert!(det.is_integer());
    det.to_integer()
}

pub fn rational_rank(m: &IntMatrix) -> usize {
    let mut a: Vec<Vec<BigRational>> = (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|v| BigRational::from_integer(v.clone()))
                .collect()
        })
        .collect();
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(piv) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(piv, rank);
        for i in 0..a.len() {
            if i != rank && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[rank][c];
                for j in 0..m.cols() {
                    let t = &f * &a[rank][j];
                    a[i][j] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn abs_big(x: &BigInt) -> BigInt {
    x.abs()
}

fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut res = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            res = -res;
        }
        d += 1;
    }
    if n > 1 {
        -res
    } else {
        res
    }
}

fn totient(n: u64) -> i64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as i64
}

/// Ramanujan sum `c_m(j) = Σ_{gcd(k,m)=1} ζ_m^{jk} = μ(m/g) φ(m) / φ(m/g)`.
pub fn ramanujan(m: u64, j: u64) -> i64 {
    let g = j.gcd(&m);
    mobius(m / g) * totient(m) / totient(m / g)
}

/// `ℳ(Y)` as `(numerator, φ(m))`: the trace of `YȲ` computed from the raw
/// cyclic convolution with Ramanujan sums, no reduction modulo Φ_m.
pub fn m_invariant_oracle(coeffs: &[i64], m: u64) -> (i64, i64) {
    let n = m as usize;
    let mut y = vec![0i64; n];
    for (j, &c) in coeffs.iter().enumerate() {
        y[j % n] += c;
    }
    let mut z = vec![0i64; n];
    for i in 0..n {
        for j in 0..n {
            // Y · conj(Y): ζ^i · ζ^{-j}
            z[(i + n - j) % n] += y[i] * y[j];
        }
    }
    let trace: i64 = z
        .iter()
        .enumerate()
        .map(|(j, &c)| c * ramanujan(m, j as u64))
        .sum();
    (trace, totient(m))
}

/// `Σ c_j e^{2πi jk/m}`.
pub fn eval_at(coeffs: &[i64], m: u64, k: u64) -> (f64, f64) {
    coeffs
        .iter()
        .enumerate()
        .fold((0.0, 0.0), |(re, im), (j, &c)| {
            let t = 2.0 * std::f64::consts::PI * ((j as u64 * k) % m) as f64 / m as f64;
            (re + c as f64 * t.cos(), im + c as f64 * t.sin())
        })
}

pub fn random_coeffs<R: Rng>(rng: &mut R, len: usize, bound: i64) -> Vec<i64> {
    (0..len).map(|_| rng.gen_range(-bound..=bound)).collect()
}

pub fn random_cycint<R: Rng>(rng: &mut R, m: u64, bound: i64) -> CycInt {
    CycInt::new(m, &random_coeffs(rng, m as usize, bound))
}
