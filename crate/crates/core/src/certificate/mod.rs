//! Certificates for symmetric sets without a unique difference: the linear
//! system, its type-1 graph, Smith Normal Form divisibility of the maximal
//! minors and the determinant bound audit.

pub mod audit;
pub mod gram;
pub mod graph;
pub mod snf;
pub mod system;

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::fp::{SymSet, Witness};

pub use audit::{audit_system, block_chain_checks, bound_audit, BoundAudit, InequalityCheck};
pub use gram::{block_gram_inequality_check, path_gram_det, path_matrix, BlockGramReport};
pub use graph::{type1_graph, Decomposition, GraphViolation, Type1Graph, ViolationKind};
pub use snf::{smith_normal_form, MinorSample, MinorSampling, SmithNormalForm, SnfCertificate};
pub use system::{all_systems, build_system, Equation, EquationKind, EquationSystem};

pub use crate::matrix::gram_det;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("set has the unique difference {} = {} - {}", .0.x, .0.a, .0.b)]
    HasUniqueDifference(Witness),
    #[error("set has {0} elements; at least 4 are needed")]
    TooSmall(usize),
    #[error("p = {0} is too small; p >= 5 is required")]
    BadPrime(u64),
    #[error("type-1 graph violates the path decomposition although 3^m <= p: {0:?}")]
    LemmaViolation(Vec<GraphViolation>),
    #[error("p does not divide every maximal minor (d_r divisible: {})", .0.divisibility_verdict)]
    TheoremViolation(Box<SnfCertificate>),
}

/// Builds the system for `S` and certifies that `p` divides `d_r` and every
/// sampled `r × r` minor.
pub fn verify_snf_theorem(
    set: &SymSet,
    sampling: &MinorSampling,
) -> Result<SnfCertificate, CertificateError> {
    let sys = build_system(set)?;
    let cert = SnfCertificate::new(&sys.matrix, sys.p, sampling);
    if cert.divisibility_verdict && cert.all_minors_divisible() {
        Ok(cert)
    } else {
        Err(CertificateError::TheoremViolation(Box::new(cert)))
    }
}

/// Outcome of certifying every admissible equation choice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AllSystemsReport {
    pub systems: usize,
    pub truncated: bool,
    /// Distinct ranks observed over ℚ.
    pub ranks: BTreeSet<usize>,
    pub all_divisible: bool,
}

pub fn certify_all_systems(
    set: &SymSet,
    limit: usize,
    sampling: &MinorSampling,
) -> Result<AllSystemsReport, CertificateError> {
    let (systems, truncated) = all_systems(set, limit)?;
    let mut ranks = BTreeSet::new();
    let mut all_divisible = true;
    for sys in &systems {
        let cert = SnfCertificate::new(&sys.matrix, sys.p, sampling);
        ranks.insert(cert.rank);
        all_divisible &= cert.divisibility_verdict && cert.all_minors_divisible();
    }
    Ok(AllSystemsReport {
        systems: systems.len(),
        truncated,
        ranks,
        all_divisible,
    })
}
