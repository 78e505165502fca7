//! Quasi-probability representations induced by projective frames.
//!
//! The Fourier frame `F_j = (1/|G|) sum_g chi_j(g) P_g` is Hermitian whenever
//! `P_g^dagger = P_{g^{-1}}`, and a state maps to `mu_j = Tr(rho F_j)`.
//! Reconstruction goes through the canonical dual frame `S^+ F_j`, where `S`
//! is the frame operator on the real space of Hermitian matrices; the
//! pseudo-inverse handles the redundant frames of unfaithful projective
//! frames the same way as the orthogonal ones.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{root_of_unity, DualIndex, FiniteAbelianGroup, Fourier, GroupFunction};
use crate::numerics::{
    check_hermitian, from_hermitian_coordinates, herm_eigen, hermitian_coordinates, trace_inner, ComplexMatrix,
    Tolerance, ZERO,
};
use crate::projective::{frame_operator, ProjectiveFrame};

/// Relative anti-Hermitian residue above which a Fourier frame is rejected.
const HERMITICITY_SLACK: f64 = 1e-8;

/// A Fourier frame together with its canonical dual.
#[derive(Debug, Clone)]
pub struct QuasiProbRepresentation {
    frame: ProjectiveFrame,
    fourier_ops: Vec<ComplexMatrix>,
    dual_ops: Vec<ComplexMatrix>,
    frame_bounds: (f64, f64),
    fourier: Fourier,
}

/// Real quasi-probabilities, one per dual index in lexicographic order.
#[derive(Debug, Clone, PartialEq)]
pub struct QuasiProbDistribution {
    pub group: FiniteAbelianGroup,
    pub values: Vec<f64>,
    /// Largest imaginary part dropped when the values were computed.
    pub max_imag_residue: f64,
}

impl QuasiProbDistribution {
    pub fn new(group: FiniteAbelianGroup, values: Vec<f64>) -> Result<Self> {
        if values.len() != group.size() {
            return Err(Error::ShapeMismatch { expected: group.size(), got: values.len() });
        }
        Ok(Self { group, values, max_imag_residue: 0.0 })
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Smallest value and the dual index where it occurs.
    pub fn min(&self) -> (DualIndex, f64) {
        let (k, v) =
            self.values
                .iter()
                .copied()
                .enumerate()
                .fold((0, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });
        (self.group.dual_index(k), v)
    }
}

/// `phi(g) = Tr(rho P_g)`.
pub type CharacteristicFunction = GroupFunction;

impl QuasiProbRepresentation {
    /// Builds the Fourier frame and its dual, verifying Hermiticity,
    /// `sum_j F_j = I`, spanning and the reconstruction identity.
    pub fn build(frame: &ProjectiveFrame, tol: Tolerance) -> Result<Self> {
        let group = frame.group();
        let d = frame.dim();
        let n = group.size();
        let fourier = Fourier::new(group);
        let table = fourier.table();
        let scale = 1.0 / n as f64;

        let mut fourier_ops = Vec::with_capacity(n);
        for j in 0..n {
            let mut f = ComplexMatrix::zeros(d, d);
            for (g, op) in frame.operators().iter().enumerate() {
                let chi = table[(j, g)] * scale;
                for r in 0..d {
                    for c in 0..d {
                        f[(r, c)] += chi * op[(r, c)];
                    }
                }
            }
            let anti = (&f - &f.dagger()).frobenius_norm();
            if anti > HERMITICITY_SLACK * f.frobenius_norm() + tol.atol {
                return Err(Error::InvalidFrame(format!(
                    "Fourier component {} is not Hermitian (anti-Hermitian norm {anti:.3e})",
                    group.dual_index(j)
                )));
            }
            fourier_ops.push(f.hermitian_part());
        }

        let total = fourier_ops.iter().skip(1).fold(fourier_ops[0].clone(), |acc, f| &acc + f);
        if total.max_abs_diff(&ComplexMatrix::identity(d)) > tol.band(1.0) {
            return Err(Error::InternalInconsistency("Fourier frame does not sum to the identity".into()));
        }

        let s = frame_operator(&fourier_ops, tol)?;
        let eig = herm_eigen(&s, tol)?;
        let lower = eig.values[0];
        let upper = *eig.values.last().expect("nonempty spectrum");
        if lower <= tol.band(upper) {
            return Err(Error::NotAFrame { lower_bound: lower });
        }
        // S is invertible here, so S^+ = S^{-1} = V diag(1/l) V^T
        let dd = d * d;
        let v = &eig.vectors;
        let dual_ops = fourier_ops
            .iter()
            .map(|f| {
                let x = hermitian_coordinates(f);
                let mut y = vec![0.0; dd];
                for k in 0..dd {
                    let proj: f64 = (0..dd).map(|r| v[(r, k)].re * x[r]).sum::<f64>() / eig.values[k];
                    for r in 0..dd {
                        y[r] += v[(r, k)].re * proj;
                    }
                }
                from_hermitian_coordinates(d, &y)
            })
            .collect();

        let rep = Self { frame: frame.clone(), fourier_ops, dual_ops, frame_bounds: (lower, upper), fourier };
        rep.verify_reconstruction(tol)?;
        Ok(rep)
    }

    fn verify_reconstruction(&self, tol: Tolerance) -> Result<()> {
        let d = self.frame.dim();
        for a in crate::numerics::hermitian_basis(d) {
            let mut back = ComplexMatrix::zeros(d, d);
            for (f, dual) in self.fourier_ops.iter().zip(&self.dual_ops) {
                let c = trace_inner(&a, f)?.re;
                back = &back + &dual.scale_real(c);
            }
            let err = back.max_abs_diff(&a);
            if err > tol.band(1.0) * 10.0 {
                return Err(Error::InternalInconsistency(format!("dual frame reconstruction error {err:.3e}")));
            }
        }
        Ok(())
    }

    pub fn frame(&self) -> &ProjectiveFrame {
        &self.frame
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        self.frame.group()
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    pub fn fourier_ops(&self) -> &[ComplexMatrix] {
        &self.fourier_ops
    }

    pub fn dual_ops(&self) -> &[ComplexMatrix] {
        &self.dual_ops
    }

    /// Extreme eigenvalues of the Fourier frame's frame operator.
    pub fn frame_bounds(&self) -> (f64, f64) {
        self.frame_bounds
    }

    pub fn fourier(&self) -> &Fourier {
        &self.fourier
    }

    fn check_state(&self, rho: &ComplexMatrix, tol: Tolerance) -> Result<()> {
        if rho.rows() != self.dim() || rho.cols() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "state is {}x{}, representation acts on dimension {}",
                rho.rows(),
                rho.cols(),
                self.dim()
            )));
        }
        check_hermitian(rho, tol)
    }

    /// `mu_j = Tr(rho F_j)`.
    pub fn represent(&self, rho: &ComplexMatrix, tol: Tolerance) -> Result<QuasiProbDistribution> {
        self.check_state(rho, tol)?;
        let mut max_imag: f64 = 0.0;
        let mut values = Vec::with_capacity(self.fourier_ops.len());
        for f in &self.fourier_ops {
            let z = trace_inner(rho, f)?;
            max_imag = max_imag.max(z.im.abs());
            values.push(z.re);
        }
        let allowed = tol.band(rho.frobenius_norm());
        if max_imag > allowed {
            return Err(Error::InternalInconsistency(format!(
                "quasi-probabilities have imaginary part {max_imag:.3e}"
            )));
        }
        Ok(QuasiProbDistribution { group: self.group().clone(), values, max_imag_residue: max_imag })
    }

    /// `phi(g) = Tr(rho P_g)`.
    pub fn characteristic(&self, rho: &ComplexMatrix, tol: Tolerance) -> Result<CharacteristicFunction> {
        self.check_state(rho, tol)?;
        let values = self.frame.operators().iter().map(|p| trace_inner(rho, p)).collect::<Result<Vec<Complex64>>>()?;
        GroupFunction::new(self.group().clone(), values)
    }

    /// `rho = sum_j mu_j D_j` with `D_j` the canonical dual frame.
    pub fn reconstruct(&self, mu: &QuasiProbDistribution) -> Result<ComplexMatrix> {
        if mu.values.len() != self.dual_ops.len() {
            return Err(Error::ShapeMismatch { expected: self.dual_ops.len(), got: mu.values.len() });
        }
        if &mu.group != self.group() {
            return Err(Error::GroupMismatch(format!(
                "distribution on {:?}, representation on {:?}",
                mu.group.orders(),
                self.group().orders()
            )));
        }
        let d = self.dim();
        let mut out = ComplexMatrix::zeros(d, d);
        for (&m, dual) in mu.values.iter().zip(&self.dual_ops) {
            if m != 0.0 {
                out = &out + &dual.scale_real(m);
            }
        }
        Ok(out)
    }
}

pub fn build_representation(frame: &ProjectiveFrame) -> Result<QuasiProbRepresentation> {
    QuasiProbRepresentation::build(frame, Tolerance::default())
}

/// Gross's discrete Wigner function of a pure state in odd dimension `d`,
/// `W(q, p) = (1/d) sum_s w^{-p s} a_{q - s/2} conj(a_{q + s/2})`, returned as
/// `table[q][p]`. `s/2` means `s (d+1)/2 mod d`.
pub fn gross_wigner_pure(amplitudes: &[Complex64], d: usize, tol: Tolerance) -> Result<Vec<Vec<f64>>> {
    if d % 2 == 0 {
        return Err(Error::EvenDimension(d));
    }
    if d < 3 {
        return Err(Error::InvalidDimension(d));
    }
    if amplitudes.len() != d {
        return Err(Error::DimensionMismatch(format!("{} amplitudes for dimension {d}", amplitudes.len())));
    }
    let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
    if (norm - 1.0).abs() > tol.band(1.0) {
        return Err(Error::NotNormalized(format!("squared norm {norm}")));
    }
    let half = (d + 1) / 2;
    let mut table = vec![vec![0.0; d]; d];
    for (q, row) in table.iter_mut().enumerate() {
        for (p, cell) in row.iter_mut().enumerate() {
            let mut acc = ZERO;
            for s in 0..d {
                let h = (s * half) % d;
                let lo = (q + d - h) % d;
                let hi = (q + h) % d;
                // w^{-p s} = root_of_unity(-p s)
                acc += root_of_unity((d - (p * s) % d) % d, d) * amplitudes[lo] * amplitudes[hi].conj();
            }
            let w = acc / d as f64;
            if w.im.abs() > tol.band(1.0) {
                return Err(Error::InternalInconsistency(format!(
                    "Wigner value at ({q},{p}) has imaginary part {}",
                    w.im
                )));
            }
            *cell = w.re;
        }
    }
    Ok(table)
}

/// Dual index of the Weyl representation that carries Gross's phase-space
/// point `(q, p)`: `j = (-p mod d, -q mod d)`.
pub fn gross_point_to_dual(q: usize, p: usize, d: usize) -> DualIndex {
    DualIndex(vec![(d - p % d) % d, (d - q % d) % d])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupElement;
    use crate::numerics::herm_eigenvalues;
    use crate::projective::{frame_bounds, qubit_frame, weyl_frame, z2cubed_frame, Pauli, Sign};
    use crate::states;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn weyl_fourier_frame_is_orthogonal() {
        let rep = build_representation(&weyl_frame(3).unwrap()).unwrap();
        let ops = rep.fourier_ops();
        assert_eq!(ops.len(), 9);
        let cst = trace_inner(&ops[0], &ops[0]).unwrap().re;
        assert!(cst > 0.0);
        assert!((cst - 1.0 / 3.0).abs() < 1e-12);
        for (a, fa) in ops.iter().enumerate() {
            for (b, fb) in ops.iter().enumerate() {
                let expected = if a == b { cst } else { 0.0 };
                assert!((trace_inner(fa, fb).unwrap() - c(expected, 0.0)).norm() < 1e-12);
            }
            let dual = &rep.dual_ops()[a];
            assert!(dual.max_abs_diff(&fa.scale_real(1.0 / cst)) < 1e-12);
        }
        let (lo, hi) = frame_bounds(ops, Tolerance::default()).unwrap();
        assert!((lo - hi).abs() < 1e-12 && lo > 0.0);
        assert_eq!(rep.frame_bounds().0.to_bits(), lo.to_bits());
    }

    #[test]
    fn qubit_fourier_frame_examples() {
        let rep = build_representation(&qubit_frame([Sign::Plus; 3]).unwrap()).unwrap();
        let g = rep.group();
        let (x, y, z) = (Pauli::X.matrix(), Pauli::Y.matrix(), Pauli::Z.matrix());
        let r3 = 3f64.sqrt();
        for (j, f) in rep.fourier_ops().iter().enumerate() {
            let chi = |e: &[usize]| g.character_value(&g.dual_index(j), &GroupElement(e.to_vec())).unwrap().re;
            let expected = &(&(&ComplexMatrix::identity(2) + &x.scale_real(chi(&[1, 0])))
                + &z.scale_real(chi(&[0, 1])))
                + &y.scale_real(chi(&[1, 1]));
            assert!(f.max_abs_diff(&expected.scale_real(0.25)) < 1e-15);
            let ev = herm_eigenvalues(f, Tolerance::default()).unwrap();
            assert!((ev[0] - (1.0 - r3) / 4.0).abs() < 1e-14);
            assert!((ev[1] - (1.0 + r3) / 4.0).abs() < 1e-14);
        }
    }

    #[test]
    fn z2cubed_zero_components() {
        let rep = build_representation(&z2cubed_frame().unwrap()).unwrap();
        let zeros: Vec<_> =
            rep.fourier_ops().iter().enumerate().filter(|(_, f)| f.frobenius_norm() < 1e-12).map(|(k, _)| k).collect();
        // every character that is -1 on the kernel element (1,0,0) cancels over the kernel cosets
        let expected: Vec<_> = (0..8).filter(|&k| rep.group().dual_index(k).0[0] == 1).collect();
        assert_eq!(zeros, expected);
        assert!(zeros.contains(&rep.group().dual_position(&DualIndex(vec![1, 0, 0])).unwrap()));
        let rest: Vec<_> =
            rep.fourier_ops().iter().enumerate().filter(|(k, _)| !zeros.contains(k)).map(|(_, f)| f.clone()).collect();
        assert_eq!(rest.len(), 4);
        assert!(frame_bounds(&rest, Tolerance::default()).unwrap().0 > 1e-6);
    }

    #[test]
    fn represent_examples() {
        let tol = Tolerance::default();
        let rep = build_representation(&weyl_frame(3).unwrap()).unwrap();
        let mu = rep.represent(&states::maximally_mixed(3).unwrap(), tol).unwrap();
        assert!(mu.values.iter().all(|v| (v - 1.0 / 9.0).abs() < 1e-14));

        let mu = rep.represent(&states::basis_state(3, 0).unwrap(), tol).unwrap();
        for (k, v) in mu.values.iter().enumerate() {
            let j = rep.group().dual_index(k);
            let expected = if j.0[1] == 0 { 1.0 / 3.0 } else { 0.0 };
            assert!((v - expected).abs() < 1e-14, "{j}: {v}");
        }

        let q = build_representation(&qubit_frame([Sign::Plus; 3]).unwrap()).unwrap();
        let rho = (&ComplexMatrix::identity(2) + &Pauli::X.matrix()).scale_real(0.5);
        let mu = q.represent(&rho, tol).unwrap();
        let mut sorted = mu.values.clone();
        sorted.sort_by(f64::total_cmp);
        for (a, b) in sorted.iter().zip([0.0, 0.0, 0.5, 0.5]) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!((mu.total() - 1.0).abs() < 1e-15);

        assert!(matches!(rep.represent(&rho, tol), Err(Error::DimensionMismatch(_))));
        let skew =
            ComplexMatrix::from_rows(vec![vec![c(1.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]]).unwrap();
        assert!(matches!(q.represent(&skew, tol), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn characteristic_examples() {
        let tol = Tolerance::default();
        let rep = build_representation(&weyl_frame(3).unwrap()).unwrap();
        let phi = rep.characteristic(&states::maximally_mixed(3).unwrap(), tol).unwrap();
        for (k, v) in phi.values.iter().enumerate() {
            let expected = if k == 0 { 1.0 } else { 0.0 };
            assert!((v - c(expected, 0.0)).norm() < 1e-14);
        }

        let phi = rep.characteristic(&states::basis_state(3, 0).unwrap(), tol).unwrap();
        for (k, v) in phi.values.iter().enumerate() {
            let g = rep.group().element(k);
            let expected = if g.0[0] == 0 { 1.0 } else { 0.0 };
            assert!((v - c(expected, 0.0)).norm() < 1e-14);
        }

        let rho = states::random_density(3, 9).unwrap();
        let phi = rep.characteristic(&rho, tol).unwrap();
        let (defect, _) = phi.conjugate_symmetry_defect();
        assert!(defect < 1e-14);
        let via_ft = rep.fourier().forward(&phi).unwrap();
        let mu = rep.represent(&rho, tol).unwrap();
        for (a, b) in via_ft.values.iter().zip(&mu.values) {
            assert!((a - c(*b, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn reconstruct_examples() {
        let tol = Tolerance::default();
        let rep = build_representation(&weyl_frame(3).unwrap()).unwrap();
        let mut worst: f64 = 0.0;
        for seed in 0..20 {
            let rho = states::random_density(3, seed).unwrap();
            let back = rep.reconstruct(&rep.represent(&rho, tol).unwrap()).unwrap();
            worst = worst.max(back.max_abs_diff(&rho));
        }
        assert!(worst < 1e-10);

        let uniform = QuasiProbDistribution::new(rep.group().clone(), vec![1.0 / 9.0; 9]).unwrap();
        let back = rep.reconstruct(&uniform).unwrap();
        assert!(back.max_abs_diff(&states::maximally_mixed(3).unwrap()) < 1e-14);

        let z = build_representation(&z2cubed_frame().unwrap()).unwrap();
        for seed in 0..5 {
            let rho = states::random_density(2, seed).unwrap();
            let back = z.reconstruct(&z.represent(&rho, tol).unwrap()).unwrap();
            assert!(back.max_abs_diff(&rho) < 1e-12);
        }

        let short = QuasiProbDistribution { group: rep.group().clone(), values: vec![0.5; 3], max_imag_residue: 0.0 };
        assert!(matches!(rep.reconstruct(&short), Err(Error::ShapeMismatch { expected: 9, got: 3 })));
    }

    #[test]
    fn gross_wigner_examples() {
        let tol = Tolerance::default();
        let one = c(1.0, 0.0);
        let w = gross_wigner_pure(&[one, c(0.0, 0.0), c(0.0, 0.0)], 3, tol).unwrap();
        for (q, row) in w.iter().enumerate() {
            for &v in row {
                let expected = if q == 0 { 1.0 / 3.0 } else { 0.0 };
                assert!((v - expected).abs() < 1e-15);
            }
        }

        // Fourier-basis state |phi_0>: one constant-p row
        let s = 1.0 / 3f64.sqrt();
        let w = gross_wigner_pure(&[c(s, 0.0); 3], 3, tol).unwrap();
        let rows_with_mass: Vec<usize> = (0..3).filter(|&p| (0..3).any(|q| w[q][p].abs() > 1e-12)).collect();
        assert_eq!(rows_with_mass.len(), 1);
        for q in 0..3 {
            assert!((w[q][rows_with_mass[0]] - 1.0 / 3.0).abs() < 1e-15);
        }

        let psi = states::random_pure_vector(3, 4).unwrap();
        let total: f64 = gross_wigner_pure(&psi, 3, tol).unwrap().iter().flatten().sum();
        assert!((total - 1.0).abs() < 1e-12);

        assert!(matches!(gross_wigner_pure(&[one, one], 2, tol), Err(Error::EvenDimension(2))));
        assert!(matches!(gross_wigner_pure(&[one, one, one], 3, tol), Err(Error::NotNormalized(_))));
    }

    /// Searches all maps `j = (a q + b p + c, a' q + b' p + c')` for the one
    /// matching Gross's function on `|0>` and a quadratic-phase state.
    fn find_gross_bijection(d: usize) -> Vec<(usize, usize, usize, usize, usize, usize)> {
        let tol = Tolerance::default();
        let rep = build_representation(&weyl_frame(d).unwrap()).unwrap();
        let probes: Vec<Vec<Complex64>> = vec![
            states::basis_vector(d, 0).unwrap(),
            states::quadratic_vector(d, 1, 1).unwrap(),
            states::random_pure_vector(d, 3).unwrap(),
        ];
        let tables: Vec<_> = probes.iter().map(|v| gross_wigner_pure(v, d, tol).unwrap()).collect();
        let mus: Vec<_> = probes.iter().map(|v| rep.represent(&ComplexMatrix::outer(v), tol).unwrap().values).collect();
        let mut found = vec![];
        for a in 0..d {
            for b in 0..d {
                for a2 in 0..d {
                    for b2 in 0..d {
                        if (a * b2 + d * d - (b * a2) % d) % d == 0 {
                            continue;
                        }
                        for c0 in 0..d {
                            for c1 in 0..d {
                                let ok = tables.iter().zip(&mus).all(|(t, mu)| {
                                    (0..d).all(|q| {
                                        (0..d).all(|p| {
                                            let j0 = (a * q + b * p + c0) % d;
                                            let j1 = (a2 * q + b2 * p + c1) % d;
                                            (t[q][p] - mu[j0 * d + j1]).abs() < 1e-10
                                        })
                                    })
                                });
                                if ok {
                                    found.push((a, b, c0, a2, b2, c1));
                                }
                            }
                        }
                    }
                }
            }
        }
        found
    }

    #[test]
    fn gross_bijection_is_the_frozen_one() {
        // j = (-p, -q) is (a, b, c0, a2, b2, c1) = (0, d-1, 0, d-1, 0, 0)
        for d in [3usize, 5] {
            let found = find_gross_bijection(d);
            assert_eq!(found, vec![(0, d - 1, 0, d - 1, 0, 0)]);
            for q in 0..d {
                for p in 0..d {
                    let j = gross_point_to_dual(q, p, d);
                    assert_eq!(j.0, vec![((d - 1) * p) % d, ((d - 1) * q) % d]);
                }
            }
        }
    }
}
