//! Hypotheses under which an `n`-Weil number with `n = q^b` cannot exist in
//! ℤ[ζ_{pr}] unless it descends.

use num_bigint::BigUint;
use num_integer::Integer;
use serde::Serialize;

use crate::fp::{is_prime, Prime};

use super::CyclotomicError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeilCheckReport {
    pub p: u64,
    pub q: u64,
    pub r: u64,
    pub b: u32,
    /// `q^b`, as a decimal string.
    pub n: String,
    pub ord_p_q: u64,
    /// `ord_p(q) / 2` when the order is even.
    pub f: Option<u64>,
    pub ord_even: bool,
    /// `p > 3^{n/2}`, tested as `p² > 3^n`.
    pub exceeds_three_pow_half_n: bool,
    /// `p > n² + n + 1`.
    pub exceeds_n_squared_bound: bool,
    /// `q^f ≡ -1 (mod p)`: the Frobenius power fixing the primes above `q`
    /// acts as complex conjugation on ζ_p.
    pub frobenius_inverts_zeta_p: bool,
    pub hypotheses_hold: bool,
    pub conclusion: String,
}

fn multiplicative_order(q: u64, p: Prime) -> u64 {
    let q = q % p.get();
    let mut x = q;
    let mut k = 1;
    while x != 1 {
        x = p.mul(x, q);
        k += 1;
    }
    k
}

pub fn weil_hypothesis_check(
    p: u64,
    q: u64,
    b: u32,
    r: u64,
) -> Result<WeilCheckReport, CyclotomicError> {
    let bad = |msg: String| Err(CyclotomicError::BadParameters(msg));
    if !is_prime(p) || !is_prime(q) || p == q {
        return bad(format!("p = {p} and q = {q} must be distinct primes"));
    }
    if r == 0 || r.gcd(&(p * q)) != 1 {
        return bad(format!("r = {r} must be positive and coprime to p·q"));
    }
    if b == 0 {
        return bad("b must be positive".into());
    }
    let prime = Prime::new(p).expect("checked above");
    let n = BigUint::from(q).pow(b);
    let ord = multiplicative_order(q, prime);
    let ord_even = ord % 2 == 0;
    let f = ord_even.then_some(ord / 2);
    let frobenius_inverts_zeta_p = f.is_some_and(|f| prime.pow(q % p, f) == p - 1);
    let pb = BigUint::from(p);
    // 3^n with n = q^b is only formed when p² could exceed it
    let exceeds_three_pow_half_n = match u32::try_from(&n) {
        Ok(e) if e <= 2 * 64 => &pb * &pb > BigUint::from(3u32).pow(e),
        _ => false,
    };
    let exceeds_n_squared_bound = pb > &n * &n + &n + 1u32;
    let hypotheses_hold = ord_even && exceeds_three_pow_half_n && exceeds_n_squared_bound;
    let conclusion = if hypotheses_hold {
        format!("every {n}-Weil number in Z[zeta_{}] is a root of unity times an element of Z[zeta_{r}]", p * r)
    } else {
        let mut failed = Vec::new();
        if !ord_even {
            failed.push(format!("ord_{p}({q}) = {ord} is odd"));
        }
        if !exceeds_three_pow_half_n {
            failed.push(format!("p <= 3^(n/2) for n = {n}"));
        }
        if !exceeds_n_squared_bound {
            failed.push(format!("p <= n^2 + n + 1 for n = {n}"));
        }
        format!("not applicable: {}", failed.join("; "))
    };
    Ok(WeilCheckReport {
        p,
        q,
        r,
        b,
        n: n.to_string(),
        ord_p_q: ord,
        f,
        ord_even,
        exceeds_three_pow_half_n,
        exceeds_n_squared_bound,
        frobenius_inverts_zeta_p,
        hypotheses_hold,
        conclusion,
    })
}
