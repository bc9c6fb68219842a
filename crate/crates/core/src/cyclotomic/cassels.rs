//! Splitting ℤ[ζ_{pm'}] over ℤ[ζ_{m'}] along powers of ζ_p.

use num_integer::Integer;
use num_rational::Rational64;
use serde::Serialize;

use crate::fp::Prime;

use super::{CycInt, CyclotomicError};

fn check_factorization(m: u64, p: u64) -> Result<u64, CyclotomicError> {
    let bad = || CyclotomicError::BadFactorization { m, p };
    let p = Prime::new(p).map_err(|_| bad())?.get();
    if m % p != 0 || (m / p) % p == 0 {
        return Err(bad());
    }
    Ok(m / p)
}

fn inverse_mod(a: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let e = (a as i64).extended_gcd(&(n as i64));
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(n as i64) as u64
}

/// Components `X_0, …, X_{p-1}` over ℤ[ζ_{m'}] with `X = Σ X_i ζ_p^i`,
/// normalized so that `X_{p-1} = 0`.
pub fn cassels_decompose(x: &CycInt, p: u64) -> Result<Vec<CycInt>, CyclotomicError> {
    let m = x.conductor();
    let mp = check_factorization(m, p)?;
    // ζ_m^j = ζ_p^u ζ_{m'}^w with j ≡ u m' + w p (mod m)
    let inv_mp = inverse_mod(mp % p, p);
    let inv_p = inverse_mod(p % mp, mp);
    let mut blocks = vec![vec![0i64; mp as usize]; p as usize];
    for (j, &c) in x.coeffs().iter().enumerate() {
        if c == 0 {
            continue;
        }
        let j = j as u64;
        let u = (j % p) * inv_mp % p;
        let w = if mp == 1 { 0 } else { (j % mp) * inv_p % mp };
        blocks[u as usize][w as usize] += c;
    }
    let mut parts: Vec<CycInt> = blocks.iter().map(|b| CycInt::new(mp, b)).collect();
    // Σ_i ζ_p^i = 0, so a common shift leaves the sum unchanged
    let last = parts[p as usize - 1].clone();
    if !last.is_zero() {
        for part in &mut parts {
            *part = &*part - &last;
        }
    }
    Ok(parts)
}

/// `Σ X_i ζ_p^i` in ℤ[ζ_{pm'}].
pub fn cassels_recompose(parts: &[CycInt], p: u64) -> Result<CycInt, CyclotomicError> {
    let mp = parts.first().map_or(1, CycInt::conductor);
    let m = p * mp;
    check_factorization(m, p)?;
    if parts.len() as u64 != p || parts.iter().any(|x| x.conductor() != mp) {
        return Err(CyclotomicError::BadParameters(format!(
            "need {p} components over conductor {mp}"
        )));
    }
    let mut c = vec![0i64; m as usize];
    for (i, part) in parts.iter().enumerate() {
        for (w, &v) in part.coeffs().iter().enumerate() {
            let idx = ((p * w as u64 + mp * i as u64) % m) as usize;
            c[idx] += v;
        }
    }
    Ok(CycInt::new(m, &c))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CasselsReport {
    pub p: u64,
    pub m_prime: u64,
    pub components: Vec<String>,
    /// `(p - 1)·ℳ(X)`.
    pub lhs: String,
    /// `Σ_{i<j} ℳ(X_i - X_j)`.
    pub rhs: String,
    pub holds: bool,
}

pub fn cassels_identity_check(x: &CycInt, p: u64) -> Result<CasselsReport, CyclotomicError> {
    let parts = cassels_decompose(x, p)?;
    let lhs = x.m_invariant() * Rational64::from_integer(p as i64 - 1);
    let mut rhs = Rational64::from_integer(0);
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            rhs += (&parts[i] - &parts[j]).m_invariant();
        }
    }
    Ok(CasselsReport {
        p,
        m_prime: x.conductor() / p,
        components: parts.iter().map(|c| c.to_string()).collect(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        holds: lhs == rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_p_and_one() {
        let parts = cassels_decompose(&CycInt::zeta_pow(15, 3), 5).unwrap();
        assert_eq!(parts[1], CycInt::one(3));
        assert!(parts.iter().enumerate().all(|(i, x)| i == 1 || x.is_zero()));
        let parts = cassels_decompose(&CycInt::one(15), 5).unwrap();
        assert_eq!(parts[0], CycInt::one(3));
        assert!(parts[1..].iter().all(CycInt::is_zero));
    }

    #[test]
    fn round_trip() {
        let x = CycInt::new(15, &[3, -1, 0, 4, 2, 0, 0, 7, -5, 1, 0, 0, 2, 0, -3]);
        let parts = cassels_decompose(&x, 5).unwrap();
        assert_eq!(cassels_recompose(&parts, 5).unwrap(), x);
        assert!(parts[4].is_zero());
    }

    #[test]
    fn identity_small() {
        let r = cassels_identity_check(&CycInt::zeta_pow(3, 1), 3).unwrap();
        assert_eq!((r.lhs.as_str(), r.rhs.as_str()), ("2", "2"));
        assert!(r.holds);
        let r = cassels_identity_check(&CycInt::zero(12), 3).unwrap();
        assert_eq!((r.lhs.as_str(), r.rhs.as_str()), ("0", "0"));
    }

    #[test]
    fn bad_factorizations() {
        assert!(cassels_decompose(&CycInt::one(12), 2).is_err());
        assert!(cassels_decompose(&CycInt::one(12), 5).is_err());
        assert!(cassels_decompose(&CycInt::one(12), 4).is_err());
        assert!(cassels_decompose(&CycInt::one(12), 3).is_ok());
    }
}
