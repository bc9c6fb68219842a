//! Prime-field elements, subsets of 𝔽_p and their difference/sum tables.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FpError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("set is empty")]
    Empty,
    #[error("half-orbit representative must be nonzero")]
    ZeroInHalf,
    #[error("{0} and {1} lie in the same orbit {{±a}}")]
    DuplicateOrbit(u64, u64),
    #[error("element {0} occurs twice")]
    DuplicateElement(u64),
    #[error("{0} equals its own negative, so {{±{0}}} is not a pair")]
    SelfNegating(u64),
    #[error("set is not symmetric: {0} is present but {1} is not")]
    NotSymmetric(u64, u64),
    #[error("cannot parse set literal: {0}")]
    Parse(String),
}

/// A prime modulus, checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self, FpError> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(FpError::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// Reduces a signed integer into `[0, p)`.
    pub fn reduce(self, x: i64) -> u64 {
        x.rem_euclid(self.0 as i64) as u64
    }

    pub fn neg(self, x: u64) -> u64 {
        if x == 0 {
            0
        } else {
            self.0 - x
        }
    }

    pub fn add(self, x: u64, y: u64) -> u64 {
        ((x as u128 + y as u128) % self.0 as u128) as u64
    }

    pub fn sub(self, x: u64, y: u64) -> u64 {
        self.add(x, self.neg(y % self.0))
    }

    pub fn mul(self, x: u64, y: u64) -> u64 {
        ((x as u128 * y as u128) % self.0 as u128) as u64
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero residue.
    pub fn inv(self, x: u64) -> Option<u64> {
        if x % self.0 == 0 {
            None
        } else {
            Some(self.pow(x, self.0 - 2))
        }
    }
}

impl TryFrom<u64> for Prime {
    type Error = FpError;
    fn try_from(p: u64) -> Result<Self, FpError> {
        Prime::new(p)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Deterministic trial division; inputs are desk-scale.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// An element of 𝔽_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpElem {
    value: u64,
    modulus: Prime,
}

impl FpElem {
    pub fn new(value: i64, modulus: Prime) -> Self {
        FpElem {
            value: modulus.reduce(value),
            modulus,
        }
    }

    pub fn from_residue(value: u64, modulus: Prime) -> Self {
        FpElem {
            value: value % modulus.get(),
            modulus,
        }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> Prime {
        self.modulus
    }

    pub fn scale(self, c: u64) -> Self {
        FpElem {
            value: self.modulus.mul(self.value, c),
            modulus: self.modulus,
        }
    }

    pub fn inv(self) -> Option<Self> {
        self.modulus.inv(self.value).map(|value| FpElem {
            value,
            modulus: self.modulus,
        })
    }
}

impl Add for FpElem {
    type Output = FpElem;
    fn add(self, rhs: FpElem) -> FpElem {
        debug_assert_eq!(self.modulus, rhs.modulus);
        FpElem {
            value: self.modulus.add(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Sub for FpElem {
    type Output = FpElem;
    fn sub(self, rhs: FpElem) -> FpElem {
        debug_assert_eq!(self.modulus, rhs.modulus);
        FpElem {
            value: self.modulus.sub(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Neg for FpElem {
    type Output = FpElem;
    fn neg(self) -> FpElem {
        FpElem {
            value: self.modulus.neg(self.value),
            modulus: self.modulus,
        }
    }
}

impl Mul for FpElem {
    type Output = FpElem;
    fn mul(self, rhs: FpElem) -> FpElem {
        debug_assert_eq!(self.modulus, rhs.modulus);
        FpElem {
            value: self.modulus.mul(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Anything that denotes a finite subset of 𝔽_p.
pub trait ResidueSet {
    fn prime(&self) -> Prime;
    /// The elements as residues in `[0, p)`, sorted ascending, no repeats.
    fn residues(&self) -> Vec<u64>;

    fn len(&self) -> usize {
        self.residues().len()
    }

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn elements(&self) -> Vec<FpElem> {
        let p = self.prime();
        self.residues()
            .into_iter()
            .map(|v| FpElem::from_residue(v, p))
            .collect()
    }
}

/// An arbitrary nonempty subset of 𝔽_p.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GenSet {
    modulus: Prime,
    elements: Vec<u64>,
}

impl GenSet {
    /// Builds a set from signed literals; values are reduced mod p and must be distinct.
    pub fn new(modulus: Prime, values: &[i64]) -> Result<Self, FpError> {
        let mut seen = BTreeSet::new();
        for &v in values {
            let r = modulus.reduce(v);
            if !seen.insert(r) {
                return Err(FpError::DuplicateElement(r));
            }
        }
        if seen.is_empty() {
            return Err(FpError::Empty);
        }
        Ok(GenSet {
            modulus,
            elements: seen.into_iter().collect(),
        })
    }

    pub fn from_residues(modulus: Prime, residues: &[u64]) -> Result<Self, FpError> {
        let signed: Vec<i64> = residues
            .iter()
            .map(|&r| (r % modulus.get()) as i64)
            .collect();
        GenSet::new(modulus, &signed)
    }

    /// The image `c·A`; `c` must be nonzero mod p.
    pub fn dilate(&self, c: u64) -> GenSet {
        assert!(c % self.modulus.get() != 0, "dilation by zero");
        let mut elements: Vec<u64> = self
            .elements
            .iter()
            .map(|&a| self.modulus.mul(a, c))
            .collect();
        elements.sort_unstable();
        GenSet {
            modulus: self.modulus,
            elements,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        let set: BTreeSet<u64> = self.elements.iter().copied().collect();
        self.elements
            .iter()
            .all(|&a| set.contains(&self.modulus.neg(a)))
    }
}

impl ResidueSet for GenSet {
    fn prime(&self) -> Prime {
        self.modulus
    }
    fn residues(&self) -> Vec<u64> {
        self.elements.clone()
    }
    fn len(&self) -> usize {
        self.elements.len()
    }
}

/// A symmetric subset `A = -A` of 𝔽_p, stored as one representative per
/// orbit `{a, -a}` plus a flag for `0 ∈ A`.
///
/// Representatives are normalized to `min(a, p - a)` and sorted, so equal
/// sets compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymSet {
    modulus: Prime,
    half: Vec<u64>,
    contains_zero: bool,
}

impl SymSet {
    pub fn new(modulus: Prime, half: &[i64], contains_zero: bool) -> Result<Self, FpError> {
        let p = modulus.get();
        let mut reps: Vec<(u64, u64)> = Vec::with_capacity(half.len());
        for &a in half {
            let r = modulus.reduce(a);
            if r == 0 {
                return Err(FpError::ZeroInHalf);
            }
            let neg = p - r;
            if neg == r {
                return Err(FpError::SelfNegating(r));
            }
            let canon = r.min(neg);
            if let Some(&(orig, _)) = reps.iter().find(|&&(_, c)| c == canon) {
                return Err(FpError::DuplicateOrbit(orig, r));
            }
            reps.push((r, canon));
        }
        let mut half: Vec<u64> = reps.into_iter().map(|(_, c)| c).collect();
        half.sort_unstable();
        if half.is_empty() && !contains_zero {
            return Err(FpError::Empty);
        }
        Ok(SymSet {
            modulus,
            half,
            contains_zero,
        })
    }

    /// Recovers the half-orbit form of a symmetric set.
    pub fn from_set<S: ResidueSet + ?Sized>(set: &S) -> Result<Self, FpError> {
        let p = set.prime();
        let residues = set.residues();
        let members: BTreeSet<u64> = residues.iter().copied().collect();
        let mut half = Vec::new();
        for &a in &residues {
            let neg = p.neg(a);
            if !members.contains(&neg) {
                return Err(FpError::NotSymmetric(a, neg));
            }
            if a != 0 && a <= neg {
                if a == neg {
                    return Err(FpError::SelfNegating(a));
                }
                half.push(a as i64);
            }
        }
        SymSet::new(p, &half, members.contains(&0))
    }

    pub fn modulus(&self) -> Prime {
        self.modulus
    }

    /// `a_1 < a_2 < ... < a_m`, each the smaller member of its orbit.
    pub fn half(&self) -> &[u64] {
        &self.half
    }

    pub fn contains_zero(&self) -> bool {
        self.contains_zero
    }

    /// `m = ⌊|A|/2⌋`.
    pub fn orbit_count(&self) -> usize {
        self.half.len()
    }

    pub fn size(&self) -> usize {
        2 * self.half.len() + usize::from(self.contains_zero)
    }

    pub fn expand(&self) -> GenSet {
        GenSet {
            modulus: self.modulus,
            elements: self.residues(),
        }
    }

    pub fn dilate(&self, c: u64) -> SymSet {
        assert!(c % self.modulus.get() != 0, "dilation by zero");
        let half: Vec<i64> = self
            .half
            .iter()
            .map(|&a| self.modulus.mul(a, c) as i64)
            .collect();
        SymSet::new(self.modulus, &half, self.contains_zero)
            .expect("dilation preserves orbit structure")
    }
}

impl ResidueSet for SymSet {
    fn prime(&self) -> Prime {
        self.modulus
    }
    fn residues(&self) -> Vec<u64> {
        let p = self.modulus.get();
        let mut out: Vec<u64> = Vec::with_capacity(self.size());
        if self.contains_zero {
            out.push(0);
        }
        for &a in &self.half {
            out.push(a);
            out.push(p - a);
        }
        out.sort_unstable();
        out
    }
    fn len(&self) -> usize {
        self.size()
    }
}

/// `expand(S)`: the full symmetric set `{±a_1, …, ±a_m} ∪ ({0} if flagged)`.
pub fn expand(set: &SymSet) -> Vec<FpElem> {
    set.elements()
}

/// Representation counts: `counts[x]` is the number of ordered pairs of set
/// elements whose difference (or sum) is `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiffTable {
    #[serde(rename = "p")]
    modulus: Prime,
    counts: Vec<u64>,
}

impl DiffTable {
    pub fn modulus(&self) -> Prime {
        self.modulus
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, x: u64) -> u64 {
        self.counts[(x % self.modulus.get()) as usize]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Every `x` represented exactly once, ascending.
    pub fn unique_positions(&self) -> Vec<u64> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == 1)
            .map(|(x, _)| x as u64)
            .collect()
    }

    /// The table of `c·A`, obtained by permuting indices `x ↦ c·x`.
    pub fn dilate(&self, c: u64) -> DiffTable {
        let p = self.modulus;
        let mut counts = vec![0; self.counts.len()];
        for (x, &n) in self.counts.iter().enumerate() {
            counts[p.mul(x as u64, c) as usize] = n;
        }
        DiffTable { modulus: p, counts }
    }
}

fn pair_table<S: ResidueSet + ?Sized>(
    set: &S,
    combine: impl Fn(Prime, u64, u64) -> u64,
) -> DiffTable {
    let p = set.prime();
    let residues = set.residues();
    let mut counts = vec![0u64; p.get() as usize];
    for &a in &residues {
        for &b in &residues {
            counts[combine(p, a, b) as usize] += 1;
        }
    }
    DiffTable { modulus: p, counts }
}

pub fn diff_table<S: ResidueSet + ?Sized>(set: &S) -> DiffTable {
    pair_table(set, |p, a, b| p.sub(a, b))
}

pub fn sum_table<S: ResidueSet + ?Sized>(set: &S) -> DiffTable {
    pair_table(set, |p, a, b| p.add(a, b))
}

/// An element `x` with exactly one representation `x = a - b` (or `a + b`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub x: u64,
    pub a: u64,
    pub b: u64,
}

fn first_unique<S: ResidueSet + ?Sized>(
    set: &S,
    table: &DiffTable,
    partner: impl Fn(Prime, u64, u64) -> u64,
) -> Option<Witness> {
    let p = set.prime();
    let x = table.counts.iter().position(|&c| c == 1)? as u64;
    let residues = set.residues();
    let mut member = vec![false; p.get() as usize];
    for &r in &residues {
        member[r as usize] = true;
    }
    residues.iter().find_map(|&a| {
        let b = partner(p, x, a);
        member[b as usize].then_some(Witness { x, a, b })
    })
}

/// Smallest `x` with a single ordered pair `(a, b)`, `a - b = x`.
pub fn unique_difference<S: ResidueSet + ?Sized>(set: &S) -> Option<Witness> {
    let table = diff_table(set);
    first_unique(set, &table, |p, x, a| p.sub(a, x))
}

/// Smallest `x` with a single ordered pair `(a, b)`, `a + b = x`.
pub fn unique_sum<S: ResidueSet + ?Sized>(set: &S) -> Option<Witness> {
    let table = sum_table(set);
    first_unique(set, &table, |p, x, a| p.sub(x, a))
}

/// Parsed form of the set literal syntax
/// `p=13; A={1,3,4,-1,-3,-4}` or `p=13; half={1,3,4}; zero=false`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetLiteral {
    General(GenSet),
    Symmetric(SymSet),
}

impl SetLiteral {
    pub fn parse(text: &str) -> Result<Self, FpError> {
        let mut p = None;
        let mut general = None;
        let mut half = None;
        let mut zero = None;
        for field in text.split(';').map(str::trim).filter(|f| !f.is_empty()) {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| FpError::Parse(format!("expected key=value, got `{field}`")))?;
            match key.trim() {
                "p" => p = Some(parse_u64(value)?),
                "A" => general = Some(parse_brace_list(value)?),
                "half" => half = Some(parse_brace_list(value)?),
                "zero" => {
                    zero = Some(match value.trim() {
                        "true" | "1" => true,
                        "false" | "0" => false,
                        other => return Err(FpError::Parse(format!("bad zero flag `{other}`"))),
                    })
                }
                other => return Err(FpError::Parse(format!("unknown key `{other}`"))),
            }
        }
        let p = Prime::new(p.ok_or_else(|| FpError::Parse("missing p".into()))?)?;
        match (general, half) {
            (Some(values), None) => {
                if zero.is_some() {
                    return Err(FpError::Parse("zero= only applies to half={...}".into()));
                }
                Ok(SetLiteral::General(GenSet::new(p, &values)?))
            }
            (None, Some(values)) => Ok(SetLiteral::Symmetric(SymSet::new(
                p,
                &values,
                zero.unwrap_or(false),
            )?)),
            (Some(_), Some(_)) => Err(FpError::Parse("give either A={...} or half={...}".into())),
            (None, None) => Err(FpError::Parse("missing A={...} or half={...}".into())),
        }
    }

    /// The symmetric form, when the literal denotes a symmetric set.
    pub fn to_symmetric(&self) -> Result<SymSet, FpError> {
        match self {
            SetLiteral::Symmetric(s) => Ok(s.clone()),
            SetLiteral::General(g) => SymSet::from_set(g),
        }
    }
}

impl ResidueSet for SetLiteral {
    fn prime(&self) -> Prime {
        match self {
            SetLiteral::General(g) => g.prime(),
            SetLiteral::Symmetric(s) => s.prime(),
        }
    }
    fn residues(&self) -> Vec<u64> {
        match self {
            SetLiteral::General(g) => g.residues(),
            SetLiteral::Symmetric(s) => s.residues(),
        }
    }
}

impl fmt::Display for SetLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetLiteral::General(g) => {
                write!(f, "p={}; A={{{}}}", g.modulus, join(&g.elements))
            }
            SetLiteral::Symmetric(s) => write!(
                f,
                "p={}; half={{{}}}; zero={}",
                s.modulus,
                join(&s.half),
                s.contains_zero
            ),
        }
    }
}

fn join(values: &[u64]) -> String {
    values
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_u64(text: &str) -> Result<u64, FpError> {
    text.trim()
        .parse()
        .map_err(|_| FpError::Parse(format!("not an integer: `{}`", text.trim())))
}

/// Parses `{1,-3,4}` (braces optional) into signed integers.
pub fn parse_brace_list(text: &str) -> Result<Vec<i64>, FpError> {
    let t = text.trim();
    let inner = t
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .unwrap_or(t);
    inner
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<i64>()
                .map_err(|_| FpError::Parse(format!("not an integer: `{s}`")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn brute_counts(elems: &[u64], p: u64) -> Vec<u64> {
        let mut c = vec![0; p as usize];
        for &a in elems {
            for &b in elems {
                c[((a + p - b) % p) as usize] += 1;
            }
        }
        c
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(1_000_003));
        assert!(Prime::new(1).is_err());
        assert!(Prime::new(91).is_err());
    }

    #[test]
    fn field_arithmetic() {
        let q = p(7);
        let a = FpElem::new(-1, q);
        assert_eq!(a.value(), 6);
        assert_eq!((a + FpElem::new(3, q)).value(), 2);
        assert_eq!((FpElem::new(2, q) - FpElem::new(5, q)).value(), 4);
        assert_eq!((-FpElem::new(0, q)).value(), 0);
        assert_eq!(FpElem::new(3, q).scale(5).value(), 1);
        assert_eq!(FpElem::new(3, q).inv().unwrap().value(), 5);
        assert!(FpElem::new(7, q).inv().is_none());
    }

    #[test]
    fn expand_examples() {
        let s = SymSet::new(p(5), &[1], false).unwrap();
        assert_eq!(s.residues(), [1, 4]);
        let s = SymSet::new(p(7), &[1, 2], true).unwrap();
        assert_eq!(s.residues(), [0, 1, 2, 5, 6]);
        let s = SymSet::new(p(13), &[1, 3, 4], false).unwrap();
        let e: Vec<u64> = expand(&s).into_iter().map(FpElem::value).collect();
        assert_eq!(e, [1, 3, 4, 9, 10, 12]);
    }

    #[test]
    fn symset_normal_form_and_errors() {
        let a = SymSet::new(p(13), &[12, 3, -4], false).unwrap();
        let b = SymSet::new(p(13), &[1, 3, 4], false).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.half(), [1, 3, 4]);
        assert_eq!(SymSet::new(p(13), &[0], false), Err(FpError::ZeroInHalf));
        assert_eq!(
            SymSet::new(p(13), &[2, 11], false),
            Err(FpError::DuplicateOrbit(2, 11))
        );
        assert_eq!(
            SymSet::new(p(2), &[1], false),
            Err(FpError::SelfNegating(1))
        );
        assert_eq!(SymSet::new(p(13), &[], false), Err(FpError::Empty));
        assert_eq!(SymSet::new(p(13), &[], true).unwrap().residues(), [0]);
    }

    #[test]
    fn symset_from_set() {
        let g = GenSet::new(p(13), &[1, 3, 4, -1, -3, -4]).unwrap();
        let s = SymSet::from_set(&g).unwrap();
        assert_eq!(s.half(), [1, 3, 4]);
        assert!(!s.contains_zero());
        let g = GenSet::new(p(13), &[0, 1, 2]).unwrap();
        assert_eq!(SymSet::from_set(&g), Err(FpError::NotSymmetric(1, 12)));
    }

    #[test]
    fn genset_errors() {
        assert_eq!(GenSet::new(p(5), &[]), Err(FpError::Empty));
        assert_eq!(
            GenSet::new(p(5), &[1, 6]),
            Err(FpError::DuplicateElement(1))
        );
    }

    #[test]
    fn diff_table_examples() {
        let a = GenSet::new(p(5), &[1, 4]).unwrap();
        assert_eq!(diff_table(&a).counts(), [2, 0, 1, 1, 0]);
        let z = GenSet::new(p(5), &[0]).unwrap();
        assert_eq!(diff_table(&z).counts(), [1, 0, 0, 0, 0]);

        let s = SymSet::new(p(7), &[1, 2], true).unwrap();
        let t = diff_table(&s);
        assert_eq!(t.counts(), brute_counts(&[0, 1, 2, 5, 6], 7).as_slice());
        assert_eq!(t.total(), 25);
        for x in 1..7 {
            assert_eq!(t.count(x), t.count(7 - x));
        }
    }

    #[test]
    fn unique_difference_examples() {
        let a = GenSet::new(p(5), &[1, 4]).unwrap();
        assert_eq!(unique_difference(&a), Some(Witness { x: 2, a: 1, b: 4 }));
        // counts for {0,1,4}: x=2 has the single pair (1,4)
        let a = GenSet::new(p(5), &[0, 1, 4]).unwrap();
        assert_eq!(brute_counts(&[0, 1, 4], 5)[2], 1);
        assert_eq!(unique_difference(&a), Some(Witness { x: 2, a: 1, b: 4 }));
        let full = GenSet::new(p(5), &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(unique_difference(&full), None);
    }

    #[test]
    fn unique_sum_examples() {
        let a = GenSet::new(p(5), &[1, 4]).unwrap();
        assert!(unique_sum(&a).is_some());
        assert_eq!(unique_sum(&a).is_some(), unique_difference(&a).is_some());
        let z = GenSet::new(p(5), &[0]).unwrap();
        assert_eq!(unique_sum(&z), Some(Witness { x: 0, a: 0, b: 0 }));
        // pairs of {1,2} in F_7: 1+1=2, 1+2=3, 2+1=3, 2+2=4
        let a = GenSet::new(p(7), &[1, 2]).unwrap();
        assert_eq!(unique_sum(&a), Some(Witness { x: 2, a: 1, b: 1 }));
    }

    #[test]
    fn small_symmetric_sets_have_difference_2a() {
        for q in [5u64, 7, 11, 13] {
            for a in 1..q {
                if a > q - a {
                    continue;
                }
                for zero in [false, true] {
                    let s = SymSet::new(p(q), &[a as i64], zero).unwrap();
                    let w = unique_difference(&s).unwrap();
                    let two_a = (2 * a) % q;
                    assert_eq!(w.x, two_a.min(q - two_a));
                }
            }
        }
    }

    #[test]
    fn literal_parsing() {
        let l = SetLiteral::parse("p=13; A={1,3,4,-1,-3,-4}").unwrap();
        assert_eq!(l.residues(), [1, 3, 4, 9, 10, 12]);
        assert_eq!(l.to_symmetric().unwrap().half(), [1, 3, 4]);
        let l = SetLiteral::parse("p=13; half={1,3,4}; zero=false").unwrap();
        assert_eq!(l.residues(), [1, 3, 4, 9, 10, 12]);
        assert_eq!(l.to_string(), "p=13; half={1,3,4}; zero=false");
        let l = SetLiteral::parse("p=7;half={2};zero=true").unwrap();
        assert_eq!(l.residues(), [0, 2, 5]);
        assert!(SetLiteral::parse("p=12; A={1}").is_err());
        assert!(SetLiteral::parse("A={1}").is_err());
        assert!(SetLiteral::parse("p=13; A={1,x}").is_err());
        assert!(SetLiteral::parse("p=13; q=2; A={1}").is_err());
    }

    #[test]
    fn dilated_table_is_permuted() {
        let a = GenSet::new(p(11), &[0, 1, 3, 7]).unwrap();
        for c in 1..11 {
            assert_eq!(diff_table(&a.dilate(c)), diff_table(&a).dilate(c));
        }
    }
}
