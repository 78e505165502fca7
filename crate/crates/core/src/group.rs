//! Finite abelian groups `Z_{n1} x ... x Z_{nk}` and their Fourier analysis.
//!
//! Elements and dual indices are residue tuples enumerated in lexicographic
//! order (last coordinate fastest). Every matrix indexed by the group uses this
//! order. Characters follow the convention
//! `chi_j(g) = prod_i exp(-2 pi i j_i g_i / n_i)`.
//!
//! The forward transform carries the `1/|G|` factor,
//! `f~_j = (1/|G|) sum_g chi_j(g) f_g`, and the inverse is
//! `f_g = sum_j conj(chi_j(g)) f~_j`. A characteristic function is the
//! inverse-direction object, so `phi(e) = sum_j mu_j`.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{herm_eigenvalues, psd_from_eigenvalues, ComplexMatrix, Tolerance};

/// `Z_{n1} x ... x Z_{nk}` with each `n_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    orders: Vec<usize>,
}

/// Residue tuple naming an element of a [`FiniteAbelianGroup`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement(pub Vec<usize>);

/// Residue tuple labelling an irreducible character (an element of the dual group).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DualIndex(pub Vec<usize>);

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

impl fmt::Display for DualIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, r: &[usize]) -> fmt::Result {
    write!(f, "(")?;
    for (k, x) in r.iter().enumerate() {
        if k > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

/// `exp(-2 pi i k / n)`, exact at multiples of a quarter turn.
pub fn root_of_unity(k: usize, n: usize) -> Complex64 {
    let k = k % n;
    match (4 * k).checked_rem(n) {
        Some(0) => match 4 * k / n {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, -1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, 1.0),
        },
        _ => Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * k as f64 / n as f64),
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<usize>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::InvalidOrder(0));
        }
        if let Some(&bad) = orders.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidOrder(bad as i64));
        }
        Ok(Self { orders })
    }

    /// The one-element group (no cyclic factors). Only useful as the unit
    /// of direct products.
    pub fn trivial() -> Self {
        Self { orders: Vec::new() }
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn size(&self) -> usize {
        self.orders.iter().product()
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// Direct product `self x other`; coordinates of `self` come first.
    pub fn product(&self, other: &Self) -> Self {
        Self { orders: self.orders.iter().chain(&other.orders).copied().collect() }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    /// Element at lexicographic position `index`.
    pub fn element(&self, index: usize) -> GroupElement {
        GroupElement(self.residues(index))
    }

    pub fn dual_index(&self, index: usize) -> DualIndex {
        DualIndex(self.residues(index))
    }

    fn residues(&self, mut index: usize) -> Vec<usize> {
        assert!(index < self.size(), "index {index} outside group of size {}", self.size());
        let mut r = vec![0; self.rank()];
        for (slot, &n) in r.iter_mut().zip(&self.orders).rev() {
            *slot = index % n;
            index /= n;
        }
        r
    }

    fn position(&self, r: &[usize]) -> usize {
        r.iter().zip(&self.orders).fold(0, |acc, (&x, &n)| acc * n + x)
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.size()).map(|k| self.element(k))
    }

    pub fn dual_indices(&self) -> impl Iterator<Item = DualIndex> + '_ {
        (0..self.size()).map(|k| self.dual_index(k))
    }

    fn check_shape(&self, r: &[usize], what: &str) -> Result<()> {
        if r.len() != self.rank() || r.iter().zip(&self.orders).any(|(&x, &n)| x >= n) {
            return Err(Error::GroupMismatch(format!(
                "{what} {r:?} does not belong to group with orders {:?}",
                self.orders
            )));
        }
        Ok(())
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.check_shape(&g.0, "element").is_ok()
    }

    pub fn index_of(&self, g: &GroupElement) -> Result<usize> {
        self.check_shape(&g.0, "element")?;
        Ok(self.position(&g.0))
    }

    pub fn dual_position(&self, j: &DualIndex) -> Result<usize> {
        self.check_shape(&j.0, "dual index")?;
        Ok(self.position(&j.0))
    }

    pub fn compose(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check_shape(&g.0, "element")?;
        self.check_shape(&h.0, "element")?;
        Ok(GroupElement(g.0.iter().zip(&h.0).zip(&self.orders).map(|((&a, &b), &n)| (a + b) % n).collect()))
    }

    pub fn inverse(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check_shape(&g.0, "element")?;
        Ok(GroupElement(g.0.iter().zip(&self.orders).map(|(&a, &n)| (n - a) % n).collect()))
    }

    /// Index of the product of the elements at positions `a` and `b`.
    pub fn compose_idx(&self, a: usize, b: usize) -> usize {
        let (ra, rb) = (self.residues(a), self.residues(b));
        let r: Vec<_> = ra.iter().zip(&rb).zip(&self.orders).map(|((&x, &y), &n)| (x + y) % n).collect();
        self.position(&r)
    }

    pub fn inverse_idx(&self, a: usize) -> usize {
        let r: Vec<_> = self.residues(a).iter().zip(&self.orders).map(|(&x, &n)| (n - x) % n).collect();
        self.position(&r)
    }

    /// Index of `b * a^{-1}`, the translate used by the Bochner matrices.
    pub fn quotient_idx(&self, b: usize, a: usize) -> usize {
        self.compose_idx(b, self.inverse_idx(a))
    }

    /// Multiplication table by lexicographic index.
    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        (0..n).map(|a| (0..n).map(|b| self.compose_idx(a, b)).collect()).collect()
    }

    fn character_at(&self, j: &[usize], g: &[usize]) -> Complex64 {
        // common denominator keeps the phase an exact rational of a full turn
        let l = self.orders.iter().fold(1, |acc, &n| acc / gcd(acc, n) * n);
        let k = j.iter().zip(g).zip(&self.orders).fold(0, |acc, ((&a, &b), &n)| (acc + (a * b % n) * (l / n)) % l);
        root_of_unity(k, l)
    }

    pub fn character_value(&self, j: &DualIndex, g: &GroupElement) -> Result<Complex64> {
        self.check_shape(&j.0, "dual index")?;
        self.check_shape(&g.0, "element")?;
        Ok(self.character_at(&j.0, &g.0))
    }

    /// `|G| x |G|` matrix with entry `(j, g) = chi_j(g)`.
    pub fn character_table(&self) -> ComplexMatrix {
        let n = self.size();
        let res: Vec<_> = (0..n).map(|k| self.residues(k)).collect();
        ComplexMatrix::from_fn(n, n, |j, g| self.character_at(&res[j], &res[g]))
    }
}

/// Convenience wrapper around [`FiniteAbelianGroup::new`].
pub fn make_group(orders: &[usize]) -> Result<FiniteAbelianGroup> {
    FiniteAbelianGroup::new(orders.to_vec())
}

/// Complex-valued function on a group (or on its dual), one value per
/// lexicographic position.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupFunction {
    pub group: FiniteAbelianGroup,
    pub values: Vec<Complex64>,
}

impl GroupFunction {
    pub fn new(group: FiniteAbelianGroup, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != group.size() {
            return Err(Error::GroupMismatch(format!(
                "function has {} values but the group has {} elements",
                values.len(),
                group.size()
            )));
        }
        Ok(Self { group, values })
    }

    pub fn from_real(group: FiniteAbelianGroup, values: &[f64]) -> Result<Self> {
        Self::new(group, values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn at(&self, g: &GroupElement) -> Result<Complex64> {
        Ok(self.values[self.group.index_of(g)?])
    }

    /// Largest `|phi(g^{-1}) - conj(phi(g))|` over the group.
    pub fn conjugate_symmetry_defect(&self) -> (f64, usize) {
        (0..self.values.len())
            .map(|a| ((self.values[self.group.inverse_idx(a)] - self.values[a].conj()).norm(), a))
            .fold((0.0, 0), |best, cur| if cur.0 > best.0 { cur } else { best })
    }
}

/// Character table bundled with its group, for repeated transforms.
#[derive(Debug, Clone)]
pub struct Fourier {
    group: FiniteAbelianGroup,
    table: ComplexMatrix,
}

impl Fourier {
    pub fn new(group: &FiniteAbelianGroup) -> Self {
        Self { group: group.clone(), table: group.character_table() }
    }

    pub fn table(&self) -> &ComplexMatrix {
        &self.table
    }

    fn check(&self, f: &GroupFunction) -> Result<()> {
        if f.group != self.group {
            return Err(Error::GroupMismatch(format!(
                "function on {:?}, transform on {:?}",
                f.group.orders(),
                self.group.orders()
            )));
        }
        Ok(())
    }

    /// `f~_j = (1/|G|) sum_g chi_j(g) f_g`.
    pub fn forward(&self, f: &GroupFunction) -> Result<GroupFunction> {
        self.check(f)?;
        let n = self.group.size();
        let scale = 1.0 / n as f64;
        let values =
            (0..n).map(|j| (0..n).map(|g| self.table[(j, g)] * f.values[g]).sum::<Complex64>() * scale).collect();
        GroupFunction::new(self.group.clone(), values)
    }

    /// `f_g = sum_j conj(chi_j(g)) f~_j`.
    pub fn inverse(&self, f: &GroupFunction) -> Result<GroupFunction> {
        self.check(f)?;
        let n = self.group.size();
        let values = (0..n).map(|g| (0..n).map(|j| self.table[(j, g)].conj() * f.values[j]).sum()).collect();
        GroupFunction::new(self.group.clone(), values)
    }
}

pub fn fourier_forward(f: &GroupFunction) -> Result<GroupFunction> {
    Fourier::new(&f.group).forward(f)
}

pub fn fourier_inverse(f: &GroupFunction) -> Result<GroupFunction> {
    Fourier::new(&f.group).inverse(f)
}

/// `|G| x |G|` translate matrix `T[g][g'] = phi(g' g^{-1})`.
pub fn translate_matrix(phi: &GroupFunction) -> ComplexMatrix {
    let g = &phi.group;
    let n = g.size();
    ComplexMatrix::from_fn(n, n, |a, b| phi.values[g.quotient_idx(b, a)])
}

/// Result of [`classical_bochner_check`].
#[derive(Debug, Clone)]
pub struct ClassicalBochner {
    /// `phi(e) = 1` and `phi` positive definite.
    pub verdict: bool,
    pub normalized: bool,
    pub conjugate_symmetric: bool,
    pub positive_definite: bool,
    /// Smallest eigenvalue of the translate matrix (`NaN` if it was not Hermitian).
    pub min_eigenvalue: f64,
    /// The probability mass function `mu = fourier_forward(phi)`.
    pub mu: GroupFunction,
    /// Dual index carrying the smallest real part of `mu`, with that value.
    pub witness: (DualIndex, f64),
}

/// Decides whether `phi` is the characteristic function of a probability
/// mass function on the dual group.
pub fn classical_bochner_check(phi: &GroupFunction, tol: Tolerance) -> Result<ClassicalBochner> {
    let group = &phi.group;
    let n = group.size() as f64;
    let normalized = (phi.values[0] - Complex64::new(1.0, 0.0)).norm() <= tol.band(1.0);
    let mu = fourier_forward(phi)?;

    let scale = phi.values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let (defect, _) = phi.conjugate_symmetry_defect();
    let conjugate_symmetric = defect <= tol.band(scale);

    let (positive_definite, min_eigenvalue, band) = if conjugate_symmetric {
        let t = translate_matrix(phi).hermitian_part();
        let values = herm_eigenvalues(&t, tol)?;
        let chk = psd_from_eigenvalues(&values, tol);
        (chk.is_psd, chk.min_eigenvalue, chk.band)
    } else {
        (false, f64::NAN, tol.band(scale))
    };

    let (w_idx, w_val) = mu.values.iter().enumerate().map(|(k, z)| (k, z.re)).fold((0, f64::INFINITY), |best, cur| {
        if cur.1 < best.1 {
            cur
        } else {
            best
        }
    });
    let witness = (group.dual_index(w_idx), w_val);

    // the eigenvalues of T are exactly |G| * mu_j, so both routes must agree
    if conjugate_symmetric {
        let max_imag = mu.values.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        if max_imag > tol.band(scale) {
            return Err(Error::InternalInconsistency(format!(
                "conjugate-symmetric phi produced complex mu (|Im| = {max_imag:.3e})"
            )));
        }
        let mu_verdict = n * w_val >= -band;
        let margin = (n * w_val).abs();
        if mu_verdict != positive_definite && margin > 10.0 * band {
            return Err(Error::InternalInconsistency(format!(
                "translate matrix min eigenvalue {min_eigenvalue:.3e} vs |G| * min mu {:.3e}",
                n * w_val
            )));
        }
        if normalized && positive_definite {
            let total: Complex64 = mu.values.iter().sum();
            if (total - Complex64::new(1.0, 0.0)).norm() > tol.band(1.0) * n {
                return Err(Error::InternalInconsistency(format!("accepted mu sums to {total}")));
            }
        }
    }

    Ok(ClassicalBochner {
        verdict: normalized && positive_definite,
        normalized,
        conjugate_symmetric,
        positive_definite,
        min_eigenvalue,
        mu,
        witness,
    })
}
