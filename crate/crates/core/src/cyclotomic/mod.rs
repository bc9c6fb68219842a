//! Cyclotomic integers, the group ring ℤ[ζ_r][C_p], Cassels' identity and the
//! Weil-number hypotheses.

pub mod cassels;
pub mod cycint;
pub mod group_ring;
pub mod weil;

use thiserror::Error;

use crate::fp::Prime;

pub use cassels::{cassels_decompose, cassels_identity_check, cassels_recompose, CasselsReport};
pub use cycint::{cyc_norm_sq, euler_phi, m_invariant, CycInt};
pub use group_ring::{
    coefficient_killing_holds, group_ring_square, support_symmetry_and_difference_bridge,
    BridgeReport, GroupRingElem,
};
pub use weil::{weil_hypothesis_check, WeilCheckReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyclotomicError {
    #[error("{m} is not p·m' with p = {p} prime and p not dividing m'")]
    BadFactorization { m: u64, p: u64 },
    #[error("X·X^(-1) = {square} is not {n}·g^0")]
    SquareNotScalar { n: i64, square: String },
    #[error("{k} is not a unit mod {m}")]
    NotAUnit { k: u64, m: u64 },
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("cannot parse literal: {0}")]
    Parse(String),
}

fn parse_int<T: std::str::FromStr>(key: &str, text: &str) -> Result<T, CyclotomicError> {
    let (k, v) = text
        .split_once('=')
        .ok_or_else(|| CyclotomicError::Parse(format!("expected `{key}=...`, got `{text}`")))?;
    if k.trim() != key {
        return Err(CyclotomicError::Parse(format!(
            "expected `{key}=...`, got `{text}`"
        )));
    }
    v.trim()
        .parse()
        .map_err(|_| CyclotomicError::Parse(format!("bad value for {key}: `{}`", v.trim())))
}

fn parse_coeffs(text: &str) -> Result<Vec<i64>, CyclotomicError> {
    let body = text
        .trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .trim();
    if body.is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| CyclotomicError::Parse(format!("bad coefficient `{}`", t.trim())))
        })
        .collect()
}

fn bracketed(text: &str) -> Result<&str, CyclotomicError> {
    let t = text.trim();
    t.strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| CyclotomicError::Parse(format!("expected `[...]`, got `{t}`")))
}

/// Parses `m=12; [c0,c1,…]`; at most `m` coefficients.
pub fn parse_cycint(text: &str) -> Result<CycInt, CyclotomicError> {
    let parts: Vec<&str> = text.split(';').collect();
    let [head, body] = parts[..] else {
        return Err(CyclotomicError::Parse(format!(
            "expected `m=..; [..]`, got `{text}`"
        )));
    };
    let m: u64 = parse_int("m", head)?;
    if m == 0 {
        return Err(CyclotomicError::Parse("m must be positive".into()));
    }
    let coeffs = parse_coeffs(bracketed(body)?)?;
    if coeffs.len() as u64 > m {
        return Err(CyclotomicError::Parse(format!(
            "{} coefficients for m = {m}",
            coeffs.len()
        )));
    }
    Ok(CycInt::new(m, &coeffs))
}

/// Parses `p=5; r=3; [e0|e1|…|e4]`, each `e_i` a comma list, optionally bracketed.
pub fn parse_group_ring(text: &str) -> Result<GroupRingElem, CyclotomicError> {
    let parts: Vec<&str> = text.split(';').collect();
    let [ph, rh, body] = parts[..] else {
        return Err(CyclotomicError::Parse(format!(
            "expected `p=..; r=..; [..]`, got `{text}`"
        )));
    };
    let p: u64 = parse_int("p", ph)?;
    let r: u64 = parse_int("r", rh)?;
    let p = Prime::new(p).map_err(|e| CyclotomicError::Parse(e.to_string()))?;
    if r == 0 {
        return Err(CyclotomicError::Parse("r must be positive".into()));
    }
    let mut coeffs = Vec::new();
    for block in bracketed(body)?.split('|') {
        let c = parse_coeffs(block)?;
        if c.len() as u64 > r {
            return Err(CyclotomicError::Parse(format!(
                "{} coefficients for r = {r}",
                c.len()
            )));
        }
        coeffs.push(CycInt::new(r, &c));
    }
    GroupRingElem::new(p, r, coeffs)
}
