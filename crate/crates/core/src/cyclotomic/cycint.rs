//! Exact arithmetic in ℤ[ζ_m].
//!
//! Elements are stored on the power basis `1, ζ, …, ζ^(m-1)` and kept reduced
//! modulo the cyclotomic polynomial Φ_m, so only the first φ(m) coefficients
//! can be nonzero and equal elements have equal coefficient vectors.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_rational::Rational64;

use super::CyclotomicError;

/// Per-conductor data: φ(m), Φ_m and the units mod m.
#[derive(Debug, PartialEq, Eq)]
pub struct CycRing {
    m: u64,
    phi: usize,
    /// Coefficients of Φ_m, constant term first; monic of degree φ(m).
    poly: Vec<i64>,
    units: Vec<u64>,
}

impl CycRing {
    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn cyclotomic_polynomial(&self) -> &[i64] {
        &self.poly
    }

    /// The `k` in `[0, m)` with `gcd(k, m) = 1`, indexing Gal(ℚ(ζ_m)/ℚ).
    pub fn galois_exponents(&self) -> &[u64] {
        &self.units
    }

    fn reduce(&self, coeffs: &mut [i64]) {
        let phi = self.phi;
        for k in (phi..coeffs.len()).rev() {
            let c = coeffs[k];
            if c == 0 {
                continue;
            }
            for (j, &pj) in self.poly[..phi].iter().enumerate() {
                let idx = k - phi + j;
                coeffs[idx] = checked_sub(coeffs[idx], checked_mul(c, pj));
            }
            coeffs[k] = 0;
        }
    }
}

fn checked_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("cyclotomic coefficient overflow")
}

fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("cyclotomic coefficient overflow")
}

fn checked_sub(a: i64, b: i64) -> i64 {
    a.checked_sub(b).expect("cyclotomic coefficient overflow")
}

pub fn euler_phi(m: u64) -> u64 {
    (1..=m).filter(|&k| k.gcd(&m) == 1).count() as u64
}

pub fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = checked_add(out[i + j], checked_mul(x, y));
        }
    }
    out
}

/// Exact division by a monic polynomial.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[k + j] = checked_sub(rem[k + j], checked_mul(c, dj));
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "inexact polynomial division");
    quot
}

/// Φ_m = ∏_{d | m} (x^d - 1)^μ(m/d).
fn cyclotomic_poly(m: u64) -> Vec<i64> {
    let mut num = vec![1i64];
    let mut den = vec![1i64];
    for d in (1..=m).filter(|d| m % d == 0) {
        let mut factor = vec![0i64; d as usize + 1];
        factor[0] = -1;
        factor[d as usize] = 1;
        match mobius(m / d) {
            1 => num = poly_mul(&num, &factor),
            -1 => den = poly_mul(&den, &factor),
            _ => {}
        }
    }
    // (x^d - 1) factors are monic, so is den
    poly_div_exact(&num, &den)
}

pub fn ring(m: u64) -> Arc<CycRing> {
    assert!(m >= 1, "conductor must be positive");
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CycRing>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("ring cache poisoned");
    guard
        .entry(m)
        .or_insert_with(|| {
            let poly = cyclotomic_poly(m);
            let units = (0..m).filter(|&k| k.gcd(&m) == 1).collect();
            Arc::new(CycRing {
                m,
                phi: poly.len() - 1,
                poly,
                units,
            })
        })
        .clone()
}

/// An element of ℤ[ζ_m].
#[derive(Clone)]
pub struct CycInt {
    ring: Arc<CycRing>,
    coeffs: Vec<i64>,
}

impl CycInt {
    /// `Σ c_j ζ_m^j`; exponents are taken mod `m`, so any length is accepted.
    pub fn new(m: u64, coeffs: &[i64]) -> Self {
        let ring = ring(m);
        let mut folded = vec![0i64; m as usize];
        for (j, &c) in coeffs.iter().enumerate() {
            let k = j % m as usize;
            folded[k] = checked_add(folded[k], c);
        }
        ring.reduce(&mut folded);
        CycInt {
            ring,
            coeffs: folded,
        }
    }

    fn from_raw(ring: Arc<CycRing>, mut coeffs: Vec<i64>) -> Self {
        ring.reduce(&mut coeffs);
        CycInt { ring, coeffs }
    }

    pub fn zero(m: u64) -> Self {
        CycInt::new(m, &[])
    }

    pub fn from_integer(m: u64, n: i64) -> Self {
        CycInt::new(m, &[n])
    }

    pub fn one(m: u64) -> Self {
        CycInt::from_integer(m, 1)
    }

    /// ζ_m^k.
    pub fn zeta_pow(m: u64, k: i64) -> Self {
        let mut c = vec![0i64; m as usize];
        c[k.rem_euclid(m as i64) as usize] = 1;
        CycInt::new(m, &c)
    }

    pub fn conductor(&self) -> u64 {
        self.ring.m
    }

    pub fn ring(&self) -> &CycRing {
        &self.ring
    }

    /// Canonical coefficients, length `m`.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The value as a rational integer, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        self.coeffs[1..]
            .iter()
            .all(|&c| c == 0)
            .then_some(self.coeffs[0])
    }

    fn same_ring(&self, other: &CycInt) {
        assert_eq!(self.ring.m, other.ring.m, "conductors differ");
    }

    pub fn scale(&self, k: i64) -> CycInt {
        CycInt {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|&c| checked_mul(c, k)).collect(),
        }
    }

    /// σ_k : ζ ↦ ζ^k, for `gcd(k, m) = 1`.
    pub fn galois(&self, k: i64) -> Result<CycInt, CyclotomicError> {
        let m = self.ring.m;
        let k = k.rem_euclid(m as i64) as u64;
        if k.gcd(&m) != 1 {
            return Err(CyclotomicError::NotAUnit { k, m });
        }
        Ok(CycInt::from_raw(self.ring.clone(), self.permuted(k)))
    }

    fn permuted(&self, k: u64) -> Vec<i64> {
        let m = self.ring.m;
        let mut out = vec![0i64; m as usize];
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                out[((j as u64 * k) % m) as usize] = c;
            }
        }
        out
    }

    /// Complex conjugate, σ_{-1}.
    pub fn conj(&self) -> CycInt {
        self.galois(-1).expect("-1 is always a unit")
    }

    /// `Y·Ȳ = |Y|²`.
    pub fn norm_sq(&self) -> CycInt {
        self * &self.conj()
    }

    /// `Σ_σ Z^σ` over Gal(ℚ(ζ_m)/ℚ), a rational integer.
    pub fn trace(&self) -> i64 {
        let m = self.ring.m as usize;
        let mut acc = vec![0i64; m];
        for &k in &self.ring.units {
            for (j, &c) in self.coeffs.iter().enumerate() {
                if c != 0 {
                    let idx = (j * k as usize) % m;
                    acc[idx] = checked_add(acc[idx], c);
                }
            }
        }
        let total = CycInt::from_raw(self.ring.clone(), acc);
        total
            .as_integer()
            .expect("Galois-invariant element is rational")
    }

    /// `ℳ(Y) = (1/φ(m)) Σ_σ (YȲ)^σ`.
    pub fn m_invariant(&self) -> Rational64 {
        Rational64::new(self.norm_sq().trace(), self.ring.phi as i64)
    }

    /// Value at ζ_m = e^{2πi/m} as `(re, im)`.
    pub fn eval_complex(&self) -> (f64, f64) {
        let m = self.ring.m as f64;
        self.coeffs
            .iter()
            .enumerate()
            .fold((0.0, 0.0), |(re, im), (j, &c)| {
                let angle = 2.0 * PI * j as f64 / m;
                (re + c as f64 * angle.cos(), im + c as f64 * angle.sin())
            })
    }

    /// Image under ℤ[ζ_m] → ℤ[ζ_{mk}], ζ_m ↦ ζ_{mk}^k.
    pub fn lift(&self, k: u64) -> CycInt {
        let big = self.ring.m * k;
        let mut c = vec![0i64; big as usize];
        for (j, &v) in self.coeffs.iter().enumerate() {
            c[j * k as usize] = v;
        }
        CycInt::new(big, &c)
    }
}

/// `Y = 0` gives `ℳ = 0`; otherwise `ℳ(Y) ≥ 1`.
pub fn m_invariant(y: &CycInt) -> Rational64 {
    y.m_invariant()
}

pub fn cyc_norm_sq(y: &CycInt) -> CycInt {
    y.norm_sq()
}

impl PartialEq for CycInt {
    fn eq(&self, other: &CycInt) -> bool {
        self.ring.m == other.ring.m && self.coeffs == other.coeffs
    }
}

impl Eq for CycInt {}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Literal form `m=12; [c0,c1,…,c11]`.
impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.coeffs.iter().map(i64::to_string).collect();
        write!(f, "m={}; [{}]", self.ring.m, body.join(","))
    }
}

impl<'a> Add<&'a CycInt> for &'a CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        self.same_ring(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| checked_add(a, b))
            .collect();
        CycInt {
            ring: self.ring.clone(),
            coeffs,
        }
    }
}

impl<'a> Sub<&'a CycInt> for &'a CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        self.same_ring(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| checked_sub(a, b))
            .collect();
        CycInt {
            ring: self.ring.clone(),
            coeffs,
        }
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        self.scale(-1)
    }
}

impl<'a> Mul<&'a CycInt> for &'a CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        self.same_ring(rhs);
        let m = self.ring.m as usize;
        let mut out = vec![0i64; m];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                if b != 0 {
                    let k = (i + j) % m;
                    out[k] = checked_add(out[k], checked_mul(a, b));
                }
            }
        }
        CycInt::from_raw(self.ring.clone(), out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<CycInt> for CycInt {
            type Output = CycInt;
            fn $f(self, rhs: CycInt) -> CycInt {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
