//! The homogeneous linear system read off a symmetric set without a unique
//! difference.
//!
//! For each half-orbit representative `a_i`, the difference `2a_i = a_i - (-a_i)`
//! has a second representation, which gives a relation
//! `2a_i + s·a_σ + t·a_τ = 0`. After normalization every row is one of
//!
//! * `3x_i ± x_σ = 0` (type 1),
//! * `2x_i ± x_σ = 0` (type 2, the partner is the zero element),
//! * `2x_i ± x_σ ± x_τ = 0` (type 2, `i, σ, τ` pairwise distinct).
//!
//! Indices are 1-based; when `0 ∈ A` it carries index `n = m + 1` and its
//! variable is identically zero, so it never gets a matrix column.

use serde::Serialize;

use crate::fp::{unique_difference, Prime, SymSet};
use crate::matrix::IntMatrix;

use super::CertificateError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum EquationKind {
    Type1,
    Type2Short,
    Type2Long,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Equation {
    /// `i`, 1-based.
    pub row: usize,
    pub kind: EquationKind,
    pub sigma: usize,
    pub tau: Option<usize>,
    pub sign_sigma: i8,
    pub sign_tau: Option<i8>,
}

impl Equation {
    /// Coefficient vector over the `m` nonzero orbits.
    pub fn coefficients(&self, m: usize) -> Vec<i64> {
        let mut row = vec![0i64; m];
        row[self.row - 1] = match self.kind {
            EquationKind::Type1 => 3,
            _ => 2,
        };
        row[self.sigma - 1] += i64::from(self.sign_sigma);
        if let (Some(t), Some(s)) = (self.tau, self.sign_tau) {
            row[t - 1] += i64::from(s);
        }
        row
    }

    /// Checks that `row` has exactly the shape prescribed by `kind`.
    pub fn matches_shape(&self, row: &[i64]) -> bool {
        let nonzero: Vec<(usize, i64)> = row
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(j, &v)| (j + 1, v))
            .collect();
        let diag = match self.kind {
            EquationKind::Type1 => 3,
            _ => 2,
        };
        let mut expected = vec![(self.row, diag), (self.sigma, i64::from(self.sign_sigma))];
        match (self.kind, self.tau, self.sign_tau) {
            (EquationKind::Type2Long, Some(t), Some(s)) => expected.push((t, i64::from(s))),
            (EquationKind::Type2Long, _, _) => return false,
            (_, None, None) => {}
            _ => return false,
        }
        expected.sort_unstable();
        let mut idx: Vec<usize> = expected.iter().map(|e| e.0).collect();
        idx.dedup();
        idx.len() == expected.len() && nonzero == expected
    }

    /// `Σ coeff·a_j mod p` for the representatives `a`.
    pub fn residual(&self, a: &[u64], p: Prime) -> u64 {
        self.coefficients(a.len())
            .iter()
            .zip(a)
            .fold(0, |acc, (&c, &v)| p.add(acc, p.mul(p.reduce(c), v)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquationSystem {
    pub p: Prime,
    /// `a_1, …, a_m`.
    pub half: Vec<u64>,
    pub contains_zero: bool,
    pub equations: Vec<Equation>,
    pub matrix: IntMatrix,
}

impl EquationSystem {
    pub fn m(&self) -> usize {
        self.half.len()
    }

    pub fn base(&self) -> SymSet {
        let half: Vec<i64> = self.half.iter().map(|&a| a as i64).collect();
        SymSet::new(self.p, &half, self.contains_zero).expect("system built from a valid set")
    }

    /// `M·(a_1, …, a_m)ᵀ mod p`, row by row.
    pub fn residuals(&self) -> Vec<u64> {
        self.equations
            .iter()
            .map(|e| e.residual(&self.half, self.p))
            .collect()
    }

    fn from_equations(set: &SymSet, equations: Vec<Equation>) -> Self {
        let m = set.orbit_count();
        let rows: Vec<Vec<i64>> = equations.iter().map(|e| e.coefficients(m)).collect();
        EquationSystem {
            p: set.modulus(),
            half: set.half().to_vec(),
            contains_zero: set.contains_zero(),
            equations,
            matrix: IntMatrix::from_rows(&rows),
        }
    }
}

/// A raw relation `2a_i + s_σ·a_σ + s_τ·a_τ ≡ 0`, before normalization.
#[derive(Debug, Clone, Copy)]
struct Relation {
    sigma: usize,
    tau: usize,
    sign_sigma: i8,
    sign_tau: i8,
}

struct Indexing {
    p: Prime,
    half: Vec<u64>,
    zero_index: Option<usize>,
}

impl Indexing {
    fn new(set: &SymSet) -> Self {
        let m = set.orbit_count();
        Indexing {
            p: set.modulus(),
            half: set.half().to_vec(),
            zero_index: set.contains_zero().then_some(m + 1),
        }
    }

    fn n(&self) -> usize {
        self.half.len() + usize::from(self.zero_index.is_some())
    }

    fn value(&self, j: usize) -> u64 {
        if Some(j) == self.zero_index {
            0
        } else {
            self.half[j - 1]
        }
    }

    fn signed(&self, j: usize, sign: i8) -> u64 {
        let v = self.value(j);
        if sign < 0 {
            self.p.neg(v)
        } else {
            v
        }
    }

    fn signs(&self, j: usize) -> &'static [i8] {
        if Some(j) == self.zero_index {
            &[1]
        } else {
            &[1, -1]
        }
    }

    /// All relations for row `i` in lexicographic order of
    /// `(σ, τ, sign code of σ, sign code of τ)` with `+` before `-`.
    fn relations(&self, i: usize) -> Vec<Relation> {
        let p = self.p;
        let two_ai = p.mul(2, self.value(i));
        let n = self.n();
        let mut out = Vec::new();
        for sigma in 1..=n {
            for tau in 1..=n {
                if sigma == i && tau == i {
                    continue;
                }
                for &ss in self.signs(sigma) {
                    for &st in self.signs(tau) {
                        let lhs =
                            p.add(two_ai, p.add(self.signed(sigma, ss), self.signed(tau, st)));
                        if lhs == 0 {
                            out.push(Relation {
                                sigma,
                                tau,
                                sign_sigma: ss,
                                sign_tau: st,
                            });
                        }
                    }
                }
            }
        }
        out
    }

    /// Case analysis turning a relation into a typed equation.
    fn classify(&self, i: usize, rel: Relation) -> Option<Equation> {
        let Relation {
            mut sigma,
            mut tau,
            mut sign_sigma,
            mut sign_tau,
        } = rel;
        if sigma == i || tau == i {
            if sigma == i {
                std::mem::swap(&mut sigma, &mut tau);
                std::mem::swap(&mut sign_sigma, &mut sign_tau);
            }
            // 2a_i - a_i ± a_σ = 0 would force a_i = ∓a_σ
            if sign_tau != 1 || Some(sigma) == self.zero_index {
                return None;
            }
            return Some(Equation {
                row: i,
                kind: EquationKind::Type1,
                sigma,
                tau: None,
                sign_sigma,
                sign_tau: None,
            });
        }
        if sigma == tau {
            return None;
        }
        if Some(sigma) == self.zero_index {
            std::mem::swap(&mut sigma, &mut tau);
            std::mem::swap(&mut sign_sigma, &mut sign_tau);
        }
        if Some(tau) == self.zero_index {
            Some(Equation {
                row: i,
                kind: EquationKind::Type2Short,
                sigma,
                tau: None,
                sign_sigma,
                sign_tau: None,
            })
        } else {
            Some(Equation {
                row: i,
                kind: EquationKind::Type2Long,
                sigma,
                tau: Some(tau),
                sign_sigma,
                sign_tau: Some(sign_tau),
            })
        }
    }

    /// Every distinct typed equation available for row `i`, type 1 first,
    /// each group in enumeration order.
    fn equations_for(&self, i: usize) -> Vec<Equation> {
        let m = self.half.len();
        let mut type1 = Vec::new();
        let mut type2 = Vec::new();
        let mut seen: Vec<Vec<i64>> = Vec::new();
        for rel in self.relations(i) {
            let Some(eq) = self.classify(i, rel) else {
                continue;
            };
            let coeffs = eq.coefficients(m);
            if seen.contains(&coeffs) {
                continue;
            }
            seen.push(coeffs);
            if eq.kind == EquationKind::Type1 {
                type1.push(eq);
            } else {
                type2.push(eq);
            }
        }
        type1.extend(type2);
        type1
    }
}

fn check_preconditions(set: &SymSet) -> Result<(), CertificateError> {
    let p = set.modulus().get();
    if p < 5 {
        return Err(CertificateError::BadPrime(p));
    }
    if set.size() < 4 {
        return Err(CertificateError::TooSmall(set.size()));
    }
    if let Some(w) = unique_difference(set) {
        return Err(CertificateError::HasUniqueDifference(w));
    }
    Ok(())
}

/// Builds the system for `S`, taking for each row the first type-1 relation
/// if one exists and otherwise the first relation overall.
pub fn build_system(set: &SymSet) -> Result<EquationSystem, CertificateError> {
    check_preconditions(set)?;
    let idx = Indexing::new(set);
    let equations = (1..=set.orbit_count())
        .map(|i| {
            idx.equations_for(i)
                .into_iter()
                .next()
                .expect("2a_i has a second representation when no difference is unique")
        })
        .collect();
    Ok(EquationSystem::from_equations(set, equations))
}

/// Every valid choice of equations, up to `limit` systems, in
/// lexicographic order of the per-row choices. The flag reports truncation.
pub fn all_systems(
    set: &SymSet,
    limit: usize,
) -> Result<(Vec<EquationSystem>, bool), CertificateError> {
    check_preconditions(set)?;
    let idx = Indexing::new(set);
    let choices: Vec<Vec<Equation>> = (1..=set.orbit_count())
        .map(|i| idx.equations_for(i))
        .collect();
    let mut out = Vec::new();
    let mut cursor = vec![0usize; choices.len()];
    loop {
        if out.len() == limit {
            return Ok((out, true));
        }
        let eqs = cursor
            .iter()
            .zip(&choices)
            .map(|(&c, opts)| opts[c])
            .collect();
        out.push(EquationSystem::from_equations(set, eqs));
        // odometer increment, last row fastest
        let mut k = choices.len();
        loop {
            if k == 0 {
                return Ok((out, false));
            }
            k -= 1;
            cursor[k] += 1;
            if cursor[k] < choices[k].len() {
                break;
            }
            cursor[k] = 0;
        }
    }
}
