//! The group ring ℤ[ζ_r][C_p], its involution and the evaluation g ↦ ζ_p.

use std::fmt;
use std::ops::{Add, Mul};

use num_integer::Integer;
use serde::Serialize;

use crate::fp::{diff_table, unique_difference, GenSet, Prime, ResidueSet, Witness};

use super::{CycInt, CyclotomicError};

/// `Σ b_i g^i` with `b_i ∈ ℤ[ζ_r]` and `g` a generator of `C_p`.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupRingElem {
    p: Prime,
    r: u64,
    coeffs: Vec<CycInt>,
}

impl GroupRingElem {
    pub fn new(p: Prime, r: u64, coeffs: Vec<CycInt>) -> Result<Self, CyclotomicError> {
        if coeffs.len() as u64 != p.get() {
            return Err(CyclotomicError::BadParameters(format!(
                "expected {} coefficients, got {}",
                p.get(),
                coeffs.len()
            )));
        }
        if let Some(c) = coeffs.iter().find(|c| c.conductor() != r) {
            return Err(CyclotomicError::BadParameters(format!(
                "coefficient over conductor {} in a ring over conductor {r}",
                c.conductor()
            )));
        }
        Ok(GroupRingElem { p, r, coeffs })
    }

    pub fn zero(p: Prime, r: u64) -> Self {
        GroupRingElem {
            p,
            r,
            coeffs: vec![CycInt::zero(r); p.get() as usize],
        }
    }

    /// `b · g^i`.
    pub fn monomial(p: Prime, r: u64, i: u64, b: CycInt) -> Self {
        let mut x = GroupRingElem::zero(p, r);
        x.coeffs[(i % p.get()) as usize] = b;
        x
    }

    /// `C_p = Σ_i g^i`.
    pub fn c_p(p: Prime, r: u64) -> Self {
        GroupRingElem {
            p,
            r,
            coeffs: vec![CycInt::one(r); p.get() as usize],
        }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn conductor(&self) -> u64 {
        self.r
    }

    pub fn coeffs(&self) -> &[CycInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: u64) -> &CycInt {
        &self.coeffs[(i % self.p.get()) as usize]
    }

    /// Indices `i` with `b_i ≠ 0`.
    pub fn support(&self) -> Vec<u64> {
        (0..self.p.get())
            .filter(|&i| !self.coeff(i).is_zero())
            .collect()
    }

    /// `X^(-1) = Σ conj(b_i) g^{-i}`.
    pub fn involution(&self) -> Self {
        let p = self.p.get();
        let coeffs = (0..p).map(|i| self.coeff((p - i) % p).conj()).collect();
        GroupRingElem {
            p: self.p,
            r: self.r,
            coeffs,
        }
    }

    /// Applies `σ_k` to every coefficient and sends `g ↦ g^e`.
    pub fn twist(&self, k: i64, e: u64) -> Result<Self, CyclotomicError> {
        let p = self.p.get();
        let mut out = GroupRingElem::zero(self.p, self.r);
        for i in 0..p {
            out.coeffs[((i * e) % p) as usize] = self.coeff(i).galois(k)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CycInt) -> Self {
        let coeffs = self.coeffs.iter().map(|b| b * c).collect();
        GroupRingElem {
            p: self.p,
            r: self.r,
            coeffs,
        }
    }

    /// Whether the element is `n · g⁰`.
    pub fn is_scalar(&self, n: i64) -> bool {
        self.coeffs[0].as_integer() == Some(n) && self.coeffs[1..].iter().all(CycInt::is_zero)
    }

    /// `ρ : g ↦ ζ_p`, into ℤ[ζ_{pr}] with `ζ_r = ζ_{pr}^p`, `ζ_p = ζ_{pr}^r`.
    pub fn evaluate(&self) -> Result<CycInt, CyclotomicError> {
        let p = self.p.get();
        let r = self.r;
        if p.gcd(&r) != 1 {
            return Err(CyclotomicError::BadParameters(format!(
                "gcd(p, r) = gcd({p}, {r}) must be 1"
            )));
        }
        let m = p * r;
        let mut c = vec![0i64; m as usize];
        for (i, b) in self.coeffs.iter().enumerate() {
            for (w, &v) in b.coeffs().iter().enumerate() {
                if v != 0 {
                    let idx = ((p * w as u64 + r * i as u64) % m) as usize;
                    c[idx] = c[idx]
                        .checked_add(v)
                        .expect("cyclotomic coefficient overflow");
                }
            }
        }
        Ok(CycInt::new(m, &c))
    }

    fn same_ring(&self, other: &Self) {
        assert!(self.p == other.p && self.r == other.r, "group rings differ");
    }
}

impl<'a> Add<&'a GroupRingElem> for &'a GroupRingElem {
    type Output = GroupRingElem;
    fn add(self, rhs: &GroupRingElem) -> GroupRingElem {
        self.same_ring(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        GroupRingElem {
            p: self.p,
            r: self.r,
            coeffs,
        }
    }
}

impl<'a> Mul<&'a GroupRingElem> for &'a GroupRingElem {
    type Output = GroupRingElem;
    fn mul(self, rhs: &GroupRingElem) -> GroupRingElem {
        self.same_ring(rhs);
        let p = self.p.get() as usize;
        let mut out = GroupRingElem::zero(self.p, self.r);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    let k = (i + j) % p;
                    out.coeffs[k] = &out.coeffs[k] + &(a * b);
                }
            }
        }
        out
    }
}

impl fmt::Debug for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Literal form `p=5; r=3; [c0,c1,c2|…]`.
impl fmt::Display for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .coeffs
            .iter()
            .map(|b| {
                b.coeffs()
                    .iter()
                    .map(i64::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(
            f,
            "p={}; r={}; [{}]",
            self.p.get(),
            self.r,
            blocks.join("|")
        )
    }
}

/// `X · X^(-1)`, whose `g^k` coefficient is `Σ_{i - j ≡ k} b_i conj(b_j)`.
pub fn group_ring_square(x: &GroupRingElem) -> GroupRingElem {
    x * &x.involution()
}

/// For each unique difference `k = i - j` of the support, the `g^k`
/// coefficient of `X·X^(-1)` is the single product `b_i conj(b_j) ≠ 0`.
pub fn coefficient_killing_holds(x: &GroupRingElem) -> bool {
    let support = x.support();
    if support.is_empty() {
        return true;
    }
    let set = GenSet::from_residues(x.p, &support).expect("support indices are residues");
    let table = diff_table(&set);
    let square = group_ring_square(x);
    table.unique_positions().into_iter().all(|k| {
        let (i, j) = unique_pair(&set, k);
        let product = x.coeff(i) * &x.coeff(j).conj();
        !product.is_zero() && *square.coeff(k) == product
    })
}

fn unique_pair(set: &GenSet, k: u64) -> (u64, u64) {
    let p = set.prime();
    let res = set.residues();
    res.iter()
        .flat_map(|&a| res.iter().map(move |&b| (a, b)))
        .find(|&(a, b)| p.sub(a, b) == k)
        .expect("unique position has a representing pair")
}

/// What the scalar-square hypothesis forces on the support of `X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BridgeReport {
    pub p: u64,
    pub r: u64,
    pub n: i64,
    pub support: Vec<u64>,
    pub support_size: usize,
    pub symmetric: bool,
    /// Some `σ` with `ζ_p ↦ ζ_p^{-1}` satisfies `X^σ = ±ζ_r^d X`.
    pub twist_holds: bool,
    pub unique_difference: Option<Witness>,
    pub coefficient_killing: bool,
    /// `|S| = 1`: X is a single monomial.
    pub descent_case: bool,
    /// Every implication checked: twist ⇒ symmetric, `|S| ≥ 2` ⇒ no unique
    /// difference, and the coefficient-killing identity.
    pub consistent: bool,
}

pub fn support_symmetry_and_difference_bridge(
    x: &GroupRingElem,
    n: i64,
) -> Result<BridgeReport, CyclotomicError> {
    let square = group_ring_square(x);
    if !square.is_scalar(n) {
        return Err(CyclotomicError::SquareNotScalar {
            n,
            square: square.to_string(),
        });
    }
    let p = x.p;
    let support = x.support();
    let set = GenSet::from_residues(p, &support).ok();
    let symmetric = set.as_ref().is_some_and(GenSet::is_symmetric);
    let unique = set.as_ref().and_then(unique_difference);
    let twist_holds = find_twist(x).is_some();
    let coefficient_killing = coefficient_killing_holds(x);
    let descent_case = support.len() == 1;
    let consistent = (!twist_holds || symmetric)
        && (support.len() < 2 || unique.is_none())
        && coefficient_killing;
    Ok(BridgeReport {
        p: p.get(),
        r: x.r,
        n,
        support_size: support.len(),
        support,
        symmetric,
        twist_holds,
        unique_difference: unique,
        coefficient_killing,
        descent_case,
        consistent,
    })
}

/// Searches `k` with `k ≡ -1 (mod p)` a unit mod `pr`, a sign and `d` with
/// `σ_k(b_i) = ±ζ_r^d b_{-i}` for all `i`.
pub(crate) fn find_twist(x: &GroupRingElem) -> Option<(i64, i64, u64)> {
    let p = x.p.get();
    let r = x.r;
    let m = p * r;
    if p.gcd(&r) != 1 || x.support().is_empty() {
        return None;
    }
    for k in (0..m).filter(|&k| k % p == p - 1 && k.gcd(&m) == 1) {
        // σ_k acts on ℤ[ζ_r] as σ_{k mod r}
        let twisted = x.twist((k % r) as i64, p - 1).ok()?;
        for d in 0..r {
            let unit = CycInt::zeta_pow(r, d as i64);
            for sign in [1i64, -1] {
                let target = x.scale(&unit.scale(sign));
                if twisted == target {
                    return Some((k as i64, sign, d));
                }
            }
        }
    }
    None
}
