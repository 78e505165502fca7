//! Positivity certificates from the characteristic function.
//!
//! Two `|G| x |G|` matrices are built from `phi`:
//!
//! * `M^C[g][g'] = phi(g' g^{-1})`, PSD iff the quasi-probabilities are
//!   nonnegative;
//! * `M^Q[g][g'] = phi(g' g^{-1}) alpha(g^{-1}, g')`, PSD iff the operator is a
//!   density operator. Its entries are `Tr(rho P_g^dagger P_g')`, a Gram
//!   matrix.
//!
//! Certification also evaluates the direct oracles (smallest eigenvalue of
//! `rho`, smallest quasi-probability) and records whether they agree.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{FiniteAbelianGroup, GroupFunction};
use crate::numerics::{check_hermitian, herm_eigenvalues, is_psd, ComplexMatrix, PsdCheck, Tolerance};
use crate::projective::CocycleTable;
use crate::quasiprob::{CharacteristicFunction, QuasiProbDistribution, QuasiProbRepresentation};

/// Width of the marginal-rejection zone, in units of the PSD band.
pub const BOUNDARY_FACTOR: f64 = 10.0;

fn check_conjugate_symmetric(phi: &GroupFunction, tol: Tolerance) -> Result<()> {
    let scale = phi.values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let (defect, at) = phi.conjugate_symmetry_defect();
    if defect > tol.band(scale) {
        return Err(Error::NotConjugateSymmetric(format!(
            "{} (|phi(g^-1) - conj phi(g)| = {defect:.3e})",
            phi.group.element(at)
        )));
    }
    Ok(())
}

pub fn build_mc(phi: &CharacteristicFunction, tol: Tolerance) -> Result<ComplexMatrix> {
    check_conjugate_symmetric(phi, tol)?;
    Ok(crate::group::translate_matrix(phi))
}

pub fn build_mq(phi: &CharacteristicFunction, alpha: &CocycleTable, tol: Tolerance) -> Result<ComplexMatrix> {
    if alpha.group() != &phi.group {
        return Err(Error::CocycleMismatch(format!(
            "cocycle on {:?}, characteristic function on {:?}",
            alpha.group().orders(),
            phi.group.orders()
        )));
    }
    check_conjugate_symmetric(phi, tol)?;
    let g = &phi.group;
    let n = g.size();
    let m = ComplexMatrix::from_fn(n, n, |a, b| phi.values[g.quotient_idx(b, a)] * alpha.get(g.inverse_idx(a), b));
    let allowed = tol.band(m.frobenius_norm());
    for a in 0..n {
        for b in a..n {
            let dev = (m[(a, b)] - m[(b, a)].conj()).norm();
            if dev > allowed {
                return Err(Error::CocycleMismatch(format!(
                    "M^Q not Hermitian at ({}, {}), deviation {dev:.3e}",
                    g.element(a),
                    g.element(b)
                )));
            }
        }
    }
    Ok(m)
}

/// Whether the direct oracles agree with the matrix verdicts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleAgreement {
    pub quantum: bool,
    pub positive: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Density operator with nonnegative quasi-probabilities.
    PositivelyRepresentable,
    NotQuantumState,
    /// Density operator with some negative quasi-probability.
    NegativelyRepresented,
    /// A deciding eigenvalue fell just below the PSD band.
    Boundary,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::PositivelyRepresentable => 0,
            Verdict::NotQuantumState => 3,
            Verdict::NegativelyRepresented => 4,
            Verdict::Boundary => 5,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Verdict::PositivelyRepresentable => "positively representable quantum state",
            Verdict::NotQuantumState => "not a quantum state",
            Verdict::NegativelyRepresented => "quantum state with negative quasi-probabilities",
            Verdict::Boundary => "indeterminate (boundary)",
        }
    }
}

#[derive(Debug, Clone)]
pub struct BochnerCertificate {
    pub group: FiniteAbelianGroup,
    pub phi: CharacteristicFunction,
    pub mu: QuasiProbDistribution,
    pub mc: PsdCheck,
    pub mq: PsdCheck,
    pub is_quantum_state: bool,
    pub is_positively_representable: bool,
    pub boundary: bool,
    pub tol: Tolerance,
    /// Smallest eigenvalue of the operator itself.
    pub state_min_eig: f64,
    /// Smallest quasi-probability.
    pub min_mu: f64,
    pub oracle_agreement: OracleAgreement,
}

impl BochnerCertificate {
    pub fn mc_min_eig(&self) -> f64 {
        self.mc.min_eigenvalue
    }

    pub fn mq_min_eig(&self) -> f64 {
        self.mq.min_eigenvalue
    }

    pub fn verdict(&self) -> Verdict {
        if self.boundary {
            Verdict::Boundary
        } else if !self.is_quantum_state {
            Verdict::NotQuantumState
        } else if !self.is_positively_representable {
            Verdict::NegativelyRepresented
        } else {
            Verdict::PositivelyRepresentable
        }
    }
}

fn marginal(chk: &PsdCheck) -> bool {
    !chk.is_psd && chk.min_eigenvalue >= -BOUNDARY_FACTOR * chk.band
}

/// Assembles verdicts from the certificate matrices plus the oracle values.
fn assemble(
    phi: CharacteristicFunction,
    mu: QuasiProbDistribution,
    alpha: &CocycleTable,
    state_eigs: &[f64],
    tol: Tolerance,
) -> Result<BochnerCertificate> {
    let mc = is_psd(&build_mc(&phi, tol)?, tol)?;
    let mq = is_psd(&build_mq(&phi, alpha, tol)?, tol)?;
    let is_quantum_state = mq.is_psd;
    let is_positively_representable = is_quantum_state && mc.is_psd;
    let boundary = marginal(&mq) || (is_quantum_state && marginal(&mc));

    let state_min_eig = state_eigs[0];
    let state_scale = state_eigs.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let (_, min_mu) = mu.min();
    let mu_scale = mu.values.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let oracle_quantum = state_min_eig >= -tol.band(state_scale);
    let oracle_positive = min_mu >= -tol.band(mu_scale);

    Ok(BochnerCertificate {
        group: phi.group.clone(),
        phi,
        mu,
        mc,
        mq,
        is_quantum_state,
        is_positively_representable,
        boundary,
        tol,
        state_min_eig,
        min_mu,
        oracle_agreement: OracleAgreement {
            quantum: oracle_quantum == is_quantum_state,
            positive: oracle_positive == mc.is_psd,
        },
    })
}

/// Certifies a Hermitian unit-trace operator.
pub fn certify_state(rep: &QuasiProbRepresentation, rho: &ComplexMatrix, tol: Tolerance) -> Result<BochnerCertificate> {
    if rho.rows() != rep.dim() || rho.cols() != rep.dim() {
        return Err(Error::DimensionMismatch(format!(
            "state is {}x{}, representation acts on dimension {}",
            rho.rows(),
            rho.cols(),
            rep.dim()
        )));
    }
    check_hermitian(rho, tol)?;
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > tol.band(1.0) || tr.im.abs() > tol.band(1.0) {
        return Err(Error::NotNormalized(format!("trace {tr}")));
    }
    let phi = rep.characteristic(rho, tol)?;
    let mu = rep.represent(rho, tol)?;
    let eigs = herm_eigenvalues(rho, tol)?;
    assemble(phi, mu, rep.frame().cocycle(), &eigs, tol)
}

/// Certificate for a distribution, plus checks on the distribution itself.
#[derive(Debug, Clone)]
pub struct DistributionCertificate {
    pub certificate: BochnerCertificate,
    /// The reconstructed operator.
    pub state: ComplexMatrix,
    /// Every given value is `>= -tol`.
    pub input_entrywise_nonnegative: bool,
    /// Representing the reconstruction gives back the input.
    pub reproduces_input: bool,
}

/// Reconstructs the operator behind `mu` and certifies it.
pub fn certify_distribution(
    rep: &QuasiProbRepresentation,
    mu: &QuasiProbDistribution,
    tol: Tolerance,
) -> Result<DistributionCertificate> {
    if mu.values.len() != rep.group().size() {
        return Err(Error::ShapeMismatch { expected: rep.group().size(), got: mu.values.len() });
    }
    let total = mu.total();
    if (total - 1.0).abs() > tol.band(1.0) {
        return Err(Error::NotNormalized(format!("distribution sums to {total}")));
    }
    let state = rep.reconstruct(mu)?;
    let certificate = certify_state(rep, &state, tol)?;
    let scale = mu.values.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let input_entrywise_nonnegative = mu.values.iter().all(|&v| v >= -tol.band(scale));
    let reproduces_input =
        certificate.mu.values.iter().zip(&mu.values).all(|(a, b)| (a - b).abs() <= tol.band(scale) * 10.0);
    Ok(DistributionCertificate { certificate, state, input_entrywise_nonnegative, reproduces_input })
}

#[derive(Debug, Clone)]
pub struct ScanRow {
    pub index: usize,
    pub result: std::result::Result<BochnerCertificate, String>,
}

#[derive(Debug, Clone, Default)]
pub struct ScanReport {
    pub rows: Vec<ScanRow>,
    pub valid: usize,
    pub positive: usize,
    pub failed: usize,
}

/// Certifies every state, in parallel, reporting rows in input order.
/// Per-state errors become failed rows.
pub fn scan(rep: &QuasiProbRepresentation, states: &[ComplexMatrix], tol: Tolerance) -> ScanReport {
    let rows: Vec<ScanRow> = states
        .par_iter()
        .enumerate()
        .map(|(index, rho)| ScanRow { index, result: certify_state(rep, rho, tol).map_err(|e| e.to_string()) })
        .collect();
    let mut report = ScanReport { rows, ..ScanReport::default() };
    for row in &report.rows {
        match &row.result {
            Ok(c) => {
                report.valid += c.is_quantum_state as usize;
                report.positive += c.is_positively_representable as usize;
            }
            Err(_) => report.failed += 1,
        }
    }
    report
}
