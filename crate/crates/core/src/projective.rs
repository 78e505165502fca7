//! Projective frames: unitary-valued functions `g -> P_g` on a finite abelian
//! group that multiply up to a unit scalar, `P_g P_h = alpha(g, h) P_{gh}`,
//! and satisfy `P_g^{-1} = P_{g^{-1}}`.
//!
//! Every constructor funnels through [`ProjectiveFrame::new`], which
//! re-verifies the whole invariant suite (unitarity, identity at `e`,
//! inverse convention, projectivity with unit-modulus cocycle, spanning) and
//! stores the extracted [`CocycleTable`].

use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{root_of_unity, FiniteAbelianGroup, GroupElement};
use crate::numerics::{
    check_hermitian, herm_eigenvalues, hermitian_coordinates, tensor, trace_inner, ComplexMatrix, Tolerance, ONE, ZERO,
};

/// Generalized Pauli matrices `(X, Z)` in dimension `d`:
/// `X|k> = |k+1 mod d>`, `Z|k> = w^k |k>` with `w = exp(-2 pi i / d)`.
pub fn gen_pauli(d: usize) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    Ok((displacement(d, 1, 0, 0, 1), displacement(d, 0, 1, 0, 1)))
}

/// `exp(-2 pi i k / n) X^j Z^l` built entrywise, exponents of `X` and `Z` taken mod `d`.
fn displacement(d: usize, j: usize, l: usize, k: usize, n: usize) -> ComplexMatrix {
    let phase = root_of_unity(k, n);
    let mut m = ComplexMatrix::zeros(d, d);
    for col in 0..d {
        // X^j Z^l |col> = w^{l col} |col + j>, with w^{l col} = exp(-2 pi i (l col n / d) / n) in units of 1/(d n)
        let z = root_of_unity((l * col) % d, d);
        m[((col + j) % d, col)] = phase * z;
    }
    m
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Single-qubit Pauli label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn matrix(self) -> ComplexMatrix {
        let i = Complex64::new(0.0, 1.0);
        let rows = match self {
            Pauli::X => vec![vec![ZERO, ONE], vec![ONE, ZERO]],
            Pauli::Y => vec![vec![ZERO, -i], vec![i, ZERO]],
            Pauli::Z => vec![vec![ONE, ZERO], vec![ZERO, -ONE]],
        };
        ComplexMatrix::from_rows(rows).expect("2x2")
    }
}

/// How a frame was produced; serialized into frame files as `{kind, parameters}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "parameters", rename_all = "snake_case")]
pub enum FrameKind {
    Weyl {
        d: usize,
    },
    Qubit {
        labels: [Pauli; 3],
        signs: [Sign; 3],
        parity: i8,
    },
    Tensor {
        left: Box<FrameKind>,
        right: Box<FrameKind>,
    },
    Leonhardt {
        d: usize,
    },
    #[serde(rename = "z2cubed")]
    Z2Cubed,
    PhaseFixed,
    Trivial,
    Custom,
}

/// Scalar multiplier table `alpha(g, h)` with `P_g P_h = alpha(g, h) P_{gh}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CocycleTable {
    group: FiniteAbelianGroup,
    values: Vec<Complex64>,
}

/// Worst-case deviations found by [`CocycleTable::report`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CocycleReport {
    pub max_modulus_defect: f64,
    pub max_normalization_defect: f64,
    pub max_inverse_pair_defect: f64,
    pub max_cocycle_identity_defect: f64,
    /// Number of `(g, h, k)` triples tested for the cocycle identity.
    pub triples_checked: usize,
}

impl CocycleReport {
    pub fn max_defect(&self) -> f64 {
        self.max_modulus_defect
            .max(self.max_normalization_defect)
            .max(self.max_inverse_pair_defect)
            .max(self.max_cocycle_identity_defect)
    }
}

impl CocycleTable {
    pub fn new(group: FiniteAbelianGroup, values: Vec<Complex64>) -> Result<Self> {
        let n = group.size();
        if values.len() != n * n {
            return Err(Error::ShapeMismatch { expected: n * n, got: values.len() });
        }
        Ok(Self { group, values })
    }

    /// The trivial cocycle `alpha = 1`.
    pub fn trivial(group: &FiniteAbelianGroup) -> Self {
        let n = group.size();
        Self { group: group.clone(), values: vec![ONE; n * n] }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    /// `alpha` at lexicographic positions `(a, b)`.
    pub fn get(&self, a: usize, b: usize) -> Complex64 {
        self.values[a * self.group.size() + b]
    }

    pub fn at(&self, g: &GroupElement, h: &GroupElement) -> Result<Complex64> {
        Ok(self.get(self.group.index_of(g)?, self.group.index_of(h)?))
    }

    /// Checks `|alpha| = 1`, `alpha(e, g) = alpha(g, e) = 1`,
    /// `alpha(g, g^{-1}) = 1` and the 2-cocycle identity. All triples are
    /// tested when `|G|^3 <= 2^18`, otherwise 1000 seeded random ones.
    pub fn report(&self) -> CocycleReport {
        let g = &self.group;
        let n = g.size();
        let one = ONE;
        let mut rep = CocycleReport {
            max_modulus_defect: 0.0,
            max_normalization_defect: 0.0,
            max_inverse_pair_defect: 0.0,
            max_cocycle_identity_defect: 0.0,
            triples_checked: 0,
        };
        for a in 0..n {
            rep.max_normalization_defect =
                rep.max_normalization_defect.max((self.get(0, a) - one).norm()).max((self.get(a, 0) - one).norm());
            let inv = g.inverse_idx(a);
            rep.max_inverse_pair_defect =
                rep.max_inverse_pair_defect.max((self.get(a, inv) - one).norm()).max((self.get(inv, a) - one).norm());
            for b in 0..n {
                rep.max_modulus_defect = rep.max_modulus_defect.max((self.get(a, b).norm() - 1.0).abs());
            }
        }
        let mut identity_defect = |a: usize, b: usize, c: usize| {
            let lhs = self.get(a, b) * self.get(g.compose_idx(a, b), c);
            let rhs = self.get(b, c) * self.get(a, g.compose_idx(b, c));
            rep.max_cocycle_identity_defect = rep.max_cocycle_identity_defect.max((lhs - rhs).norm());
            rep.triples_checked += 1;
        };
        if n * n * n <= 1 << 18 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        identity_defect(a, b, c);
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x0c0c_7c1e);
            for _ in 0..1000 {
                identity_defect(rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n));
            }
        }
        rep
    }
}

/// Operators indexed by a group that are only assumed unitary and projective.
/// [`phase_fix`] turns one into a [`ProjectiveFrame`].
#[derive(Debug, Clone)]
pub struct RawRepresentation {
    pub group: FiniteAbelianGroup,
    pub operators: Vec<ComplexMatrix>,
}

/// Bare products `X^j Z^l` over `Z_d x Z_d`, without any phase convention.
pub fn bare_displacements(d: usize) -> Result<RawRepresentation> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let group = FiniteAbelianGroup::new(vec![d, d])?;
    let operators = group.elements().map(|e| displacement(d, e.0[0], e.0[1], 0, 1)).collect();
    Ok(RawRepresentation { group, operators })
}

/// A validated projective frame.
#[derive(Debug, Clone)]
pub struct ProjectiveFrame {
    group: FiniteAbelianGroup,
    dim: usize,
    operators: Vec<ComplexMatrix>,
    cocycle: CocycleTable,
    kind: FrameKind,
}

fn check_shapes(group: &FiniteAbelianGroup, operators: &[ComplexMatrix]) -> Result<usize> {
    if operators.len() != group.size() {
        return Err(Error::InvalidFrame(format!(
            "group has {} elements but {} operators were given",
            group.size(),
            operators.len()
        )));
    }
    let dim = operators[0].rows();
    for (k, op) in operators.iter().enumerate() {
        if !op.is_square() || op.rows() != dim {
            return Err(Error::InvalidFrame(format!(
                "operator at {} is {}x{}, expected {dim}x{dim}",
                group.element(k),
                op.rows(),
                op.cols()
            )));
        }
    }
    Ok(dim)
}

fn check_unitary_and_identity(group: &FiniteAbelianGroup, operators: &[ComplexMatrix], tol: Tolerance) -> Result<()> {
    let dim = operators[0].rows();
    if operators[0].max_abs_diff(&ComplexMatrix::identity(dim)) > tol.band(1.0) {
        return Err(Error::InvalidFrame("operator at the identity element is not the identity matrix".into()));
    }
    for (k, op) in operators.iter().enumerate() {
        if !op.is_unitary(tol) {
            return Err(Error::InvalidFrame(format!("operator at {} is not unitary", group.element(k))));
        }
    }
    Ok(())
}

/// `alpha(g, h) = Tr(P_g P_h P_{gh}^dagger) / d`, verifying that every product
/// really is that scalar times `P_{gh}` and that the scalar is a phase.
fn extract_cocycle(group: &FiniteAbelianGroup, operators: &[ComplexMatrix], tol: Tolerance) -> Result<CocycleTable> {
    let n = group.size();
    let d = operators[0].rows();
    let daggers: Vec<_> = operators.iter().map(ComplexMatrix::dagger).collect();
    let mut values = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let ab = group.compose_idx(a, b);
            let prod = &operators[a] * &operators[b];
            let alpha = trace_inner(&prod, &daggers[ab])? / d as f64;
            let residual = prod.max_abs_diff(&operators[ab].scale(alpha));
            if residual > tol.band(1.0) || (alpha.norm() - 1.0).abs() > tol.band(1.0) {
                return Err(Error::NotProjective(format!(
                    "P{} P{} is not a phase times P{} (residual {residual:.3e}, |alpha| = {:.6})",
                    group.element(a),
                    group.element(b),
                    group.element(ab),
                    alpha.norm()
                )));
            }
            values.push(alpha);
        }
    }
    CocycleTable::new(group.clone(), values)
}

/// Smallest and largest eigenvalue of the complex frame operator
/// `sum_g |vec P_g><vec P_g|` on the `d^2`-dimensional operator space.
fn operator_span_bounds(operators: &[ComplexMatrix], tol: Tolerance) -> Result<(f64, f64)> {
    let d = operators[0].rows();
    let dd = d * d;
    let mut s = ComplexMatrix::zeros(dd, dd);
    for op in operators {
        let v = op.as_slice();
        for r in 0..dd {
            if v[r] == ZERO {
                continue;
            }
            for c in 0..dd {
                s[(r, c)] += v[r] * v[c].conj();
            }
        }
    }
    let ev = herm_eigenvalues(&s, tol)?;
    Ok((ev[0], ev[dd - 1]))
}

impl ProjectiveFrame {
    /// Validates the full invariant suite and extracts the cocycle.
    pub fn new(
        group: FiniteAbelianGroup,
        operators: Vec<ComplexMatrix>,
        kind: FrameKind,
        tol: Tolerance,
    ) -> Result<Self> {
        let dim = check_shapes(&group, &operators)?;
        check_unitary_and_identity(&group, &operators, tol)?;
        for a in 0..group.size() {
            let inv = group.inverse_idx(a);
            if operators[inv].max_abs_diff(&operators[a].dagger()) > tol.band(1.0) {
                return Err(Error::InvalidFrame(format!(
                    "inverse convention violated: P{} is not the inverse of P{}",
                    group.element(inv),
                    group.element(a)
                )));
            }
        }
        let cocycle = extract_cocycle(&group, &operators, tol)?;
        let (lower, _) = operator_span_bounds(&operators, tol)?;
        if lower <= tol.band(1.0) {
            return Err(Error::InvalidFrame(format!(
                "operators do not span the {dim}x{dim} matrices (lower frame bound {lower:.3e})"
            )));
        }
        let frame = Self { group, dim, operators, cocycle, kind };
        if frame.is_faithful_with(tol) && frame.group.size() != dim * dim {
            return Err(Error::InvalidFrame(format!(
                "faithful frame needs |G| = d^2 = {}, got {}",
                dim * dim,
                frame.group.size()
            )));
        }
        Ok(frame)
    }

    /// One-element frame `e -> [1]` in dimension 1; unit of [`tensor_frame`].
    pub fn trivial() -> Self {
        let group = FiniteAbelianGroup::trivial();
        Self {
            cocycle: CocycleTable::trivial(&group),
            group,
            dim: 1,
            operators: vec![ComplexMatrix::identity(1)],
            kind: FrameKind::Trivial,
        }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn operator(&self, g: &GroupElement) -> Result<&ComplexMatrix> {
        Ok(&self.operators[self.group.index_of(g)?])
    }

    pub fn cocycle(&self) -> &CocycleTable {
        &self.cocycle
    }

    pub fn kind(&self) -> &FrameKind {
        &self.kind
    }

    /// Positions of the group elements mapped to a multiple of the identity.
    pub fn kernel_indices_with(&self, tol: Tolerance) -> Vec<usize> {
        let d = self.dim as f64;
        let id = ComplexMatrix::identity(self.dim);
        (0..self.operators.len())
            .filter(|&k| {
                let op = &self.operators[k];
                let c = op.trace() / d;
                op.max_abs_diff(&id.scale(c)) <= tol.band(1.0)
            })
            .collect()
    }

    pub fn kernel(&self) -> Vec<GroupElement> {
        self.kernel_indices_with(Tolerance::default()).into_iter().map(|k| self.group.element(k)).collect()
    }

    fn is_faithful_with(&self, tol: Tolerance) -> bool {
        self.kernel_indices_with(tol).len() == 1
    }

    pub fn is_faithful(&self) -> bool {
        self.is_faithful_with(Tolerance::default())
    }
}

/// Recomputes the cocycle of a frame from its operators.
pub fn cocycle_table(frame: &ProjectiveFrame, tol: Tolerance) -> Result<CocycleTable> {
    extract_cocycle(frame.group(), frame.operators(), tol)
}

pub fn kernel(frame: &ProjectiveFrame) -> Vec<GroupElement> {
    frame.kernel()
}

pub fn is_faithful(frame: &ProjectiveFrame) -> bool {
    frame.is_faithful()
}

/// `P_(j,l) = w^{s j l} X^j Z^l` over `Z_d x Z_d`, `s = (d+1)/2`, for odd `d`.
pub fn weyl_frame(d: usize) -> Result<ProjectiveFrame> {
    if d % 2 == 0 {
        return Err(Error::EvenDimension(d));
    }
    if d < 3 {
        return Err(Error::InvalidDimension(d));
    }
    let s = (d + 1) / 2;
    let group = FiniteAbelianGroup::new(vec![d, d])?;
    let ops = group.elements().map(|e| displacement(d, e.0[0], e.0[1], (s * e.0[0] * e.0[1]) % d, d)).collect();
    ProjectiveFrame::new(group, ops, FrameKind::Weyl { d }, Tolerance::default())
}

/// Qubit frame over `Z_2 x Z_2` with `(1,0) -> s_X X`, `(0,1) -> s_Z Z`,
/// `(1,1) -> s_Y Y`. Signs are given in the order `(X, Z, Y)`.
pub fn qubit_frame(signs: [Sign; 3]) -> Result<ProjectiveFrame> {
    qubit_frame_with_labels([Pauli::X, Pauli::Z, Pauli::Y], signs)
}

/// Qubit frame with an arbitrary assignment of Paulis to the three
/// non-identity elements `(1,0)`, `(0,1)`, `(1,1)`.
pub fn qubit_frame_with_labels(labels: [Pauli; 3], signs: [Sign; 3]) -> Result<ProjectiveFrame> {
    let mut sorted = labels;
    sorted.sort_by_key(|p| *p as u8);
    if sorted != [Pauli::X, Pauli::Y, Pauli::Z] {
        return Err(Error::InvalidFrame(format!("labels {labels:?} must be a permutation of X, Y, Z")));
    }
    let group = FiniteAbelianGroup::new(vec![2, 2])?;
    let mut ops = vec![ComplexMatrix::identity(2)];
    for (p, s) in labels.iter().zip(&signs) {
        ops.push(p.matrix().scale_real(s.value()));
    }
    // lexicographic order of Z_2^2 is (0,0), (0,1), (1,0), (1,1)
    ops.swap(1, 2);
    let parity = signs.iter().map(|s| s.value()).product::<f64>() as i8;
    ProjectiveFrame::new(group, ops, FrameKind::Qubit { labels, signs, parity }, Tolerance::default())
}

/// Product `s_X s_Z s_Y` of a qubit frame's signs, the class label of its
/// quasi-probability representation.
pub fn qubit_parity(signs: [Sign; 3]) -> i8 {
    signs.iter().map(|s| s.value()).product::<f64>() as i8
}

/// `Tr(P_(1,0) P_(0,1) P_(1,1))` for a frame over `Z_2 x Z_2`.
pub fn triple_product_invariant(frame: &ProjectiveFrame) -> Result<Complex64> {
    if frame.group().orders() != [2, 2] {
        return Err(Error::GroupMismatch(format!("triple product needs Z_2 x Z_2, got {:?}", frame.group().orders())));
    }
    let ops = frame.operators();
    Ok((&(&ops[2] * &ops[1]) * &ops[3]).trace())
}

/// `P_(g,h) = P^a_g (x) P^b_h` over `G_a x G_b`.
pub fn tensor_frame(a: &ProjectiveFrame, b: &ProjectiveFrame) -> Result<ProjectiveFrame> {
    let group = a.group().product(b.group());
    let mut ops = Vec::with_capacity(group.size());
    for pa in a.operators() {
        for pb in b.operators() {
            ops.push(tensor(pa, pb));
        }
    }
    let kind = FrameKind::Tensor { left: Box::new(a.kind().clone()), right: Box::new(b.kind().clone()) };
    if group.rank() == 0 {
        return Ok(ProjectiveFrame::trivial());
    }
    ProjectiveFrame::new(group, ops, kind, Tolerance::default())
}

/// Phase multipliers `mu(g)` that bring a raw projective representation to
/// the convention `P_g^{-1} = P_{g^{-1}}`.
///
/// For each pair `{g, g^{-1}}` with `g != g^{-1}` the lexicographically smaller
/// element keeps its phase and the other absorbs the correction; a
/// self-inverse `g` gets the principal square root of its correction.
pub fn phase_multipliers(raw: &RawRepresentation, tol: Tolerance) -> Result<Vec<Complex64>> {
    let group = &raw.group;
    check_shapes(group, &raw.operators)?;
    check_unitary_and_identity(group, &raw.operators, tol).map_err(|e| Error::NotProjective(e.to_string()))?;
    extract_cocycle(group, &raw.operators, tol)?;
    let d = raw.operators[0].rows() as f64;
    let n = group.size();
    let mut mu = vec![ONE; n];
    for a in 1..n {
        let inv = group.inverse_idx(a);
        if inv < a {
            continue;
        }
        // P_a P_{a^{-1}} = c I
        let c = trace_inner(&raw.operators[a], &raw.operators[inv])? / d;
        let correction = if (c - ONE).norm() <= tol.atol { ONE } else { c.inv() };
        if inv == a {
            mu[a] = if correction == ONE { ONE } else { correction.sqrt() };
        } else {
            mu[inv] = correction;
        }
    }
    Ok(mu)
}

pub fn phase_fix(raw: &RawRepresentation, tol: Tolerance) -> Result<ProjectiveFrame> {
    let mu = phase_multipliers(raw, tol)?;
    let ops = raw.operators.iter().zip(&mu).map(|(op, &m)| if m == ONE { op.clone() } else { op.scale(m) }).collect();
    ProjectiveFrame::new(raw.group.clone(), ops, FrameKind::PhaseFixed, tol)
}

/// Doubled phase space for dimension `d`: `P_(j,l) = t^{j l} X^j Z^l` over
/// `Z_2d x Z_2d` with `t = exp(-i pi / d)`.
pub fn leonhardt_frame(d: usize) -> Result<ProjectiveFrame> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let n = 2 * d;
    let group = FiniteAbelianGroup::new(vec![n, n])?;
    let ops: Vec<_> = group.elements().map(|e| displacement(d, e.0[0], e.0[1], (e.0[0] * e.0[1]) % n, n)).collect();
    let tol = Tolerance::default();
    match ProjectiveFrame::new(group.clone(), ops.clone(), FrameKind::Leonhardt { d }, tol) {
        Ok(frame) => Ok(frame),
        Err(Error::InvalidFrame(_)) => {
            let fixed = phase_fix(&RawRepresentation { group, operators: ops }, tol)?;
            ProjectiveFrame::new(fixed.group, fixed.operators, FrameKind::Leonhardt { d }, tol)
        }
        Err(e) => Err(e),
    }
}

/// The qubit frame over `Z_2^3` whose kernel is `{(0,0,0), (1,0,0)}`:
/// the last two coordinates `(b, c)` select `I`, `X` (c), `Z` (b) or `Y` (both).
pub fn z2cubed_frame() -> Result<ProjectiveFrame> {
    let group = FiniteAbelianGroup::new(vec![2, 2, 2])?;
    let ops = group
        .elements()
        .map(|e| match (e.0[1], e.0[2]) {
            (0, 0) => ComplexMatrix::identity(2),
            (0, 1) => Pauli::X.matrix(),
            (1, 0) => Pauli::Z.matrix(),
            _ => Pauli::Y.matrix(),
        })
        .collect();
    ProjectiveFrame::new(group, ops, FrameKind::Z2Cubed, Tolerance::default())
}

/// Frame bounds `(a, b)` of a set of Hermitian operators: the extreme
/// eigenvalues of `S = sum |F><F|` on the real space of Hermitian matrices.
/// The set is a frame iff `a` exceeds the tolerance.
pub fn frame_bounds(ops: &[ComplexMatrix], tol: Tolerance) -> Result<(f64, f64)> {
    let s = frame_operator(ops, tol)?;
    let ev = herm_eigenvalues(&s, tol)?;
    Ok((ev[0], ev[ev.len() - 1]))
}

/// Real symmetric frame operator in the orthonormal Hermitian basis of
/// [`crate::numerics::hermitian_basis`], as a complex matrix with zero imaginary part.
pub fn frame_operator(ops: &[ComplexMatrix], tol: Tolerance) -> Result<ComplexMatrix> {
    let first = ops.first().ok_or_else(|| Error::DimensionMismatch("empty operator set".into()))?;
    let d = first.rows();
    for op in ops {
        if op.rows() != d || op.cols() != d {
            return Err(Error::DimensionMismatch(format!(
                "operator {}x{} in a set of {d}x{d} operators",
                op.rows(),
                op.cols()
            )));
        }
        check_hermitian(op, tol)?;
    }
    let dd = d * d;
    let mut s = vec![0.0; dd * dd];
    for op in ops {
        let c = hermitian_coordinates(op);
        for r in 0..dd {
            for k in 0..dd {
                s[r * dd + k] += c[r] * c[k];
            }
        }
    }
    ComplexMatrix::new(dd, dd, s.into_iter().map(|x| Complex64::new(x, 0.0)).collect())
}
