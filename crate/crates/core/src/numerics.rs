//! Dense complex matrices and Hermitian spectral routines.
//!
//! Everything in the crate is built on [`ComplexMatrix`], a small row-major
//! matrix of `Complex64`. Dimensions stay tiny (at most a few dozen rows), so
//! the routines favour clarity over speed. Hermitian eigenproblems are handed
//! to `nalgebra`'s symmetric eigensolver after an explicit Hermiticity check.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Absolute plus relative numerical tolerance.
///
/// A quantity `x` compared against a reference magnitude `s` is treated as
/// zero when `|x| <= atol + rtol * s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub atol: f64,
    pub rtol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { atol: 1e-9, rtol: 1e-9 }
    }
}

impl Tolerance {
    pub fn new(atol: f64, rtol: f64) -> Result<Self> {
        for (name, v) in [("atol", atol), ("rtol", rtol)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidTolerance(format!("{name} = {v}")));
            }
        }
        Ok(Self { atol, rtol })
    }

    /// The allowed deviation at reference magnitude `scale`.
    pub fn band(&self, scale: f64) -> f64 {
        self.atol + self.rtol * scale.abs()
    }

    /// Same tolerance with both components multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self { atol: self.atol * factor, rtol: self.rtol * factor }
    }
}

/// Dense row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self[(r, c)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!("empty matrix {rows}x{cols}")));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diag(&vec![ONE; n])
    }

    pub fn from_diag(diag: &[Complex64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (k, &v) in diag.iter().enumerate() {
            m[(k, k)] = v;
        }
        m
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let d: Vec<_> = diag.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_diag(&d)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(nrows, ncols, rows.into_iter().flatten().collect())
    }

    /// Rank-one projector `|v><v|`.
    pub fn outer(v: &[Complex64]) -> Self {
        let n = v.len();
        Self::from_fn(n, n, |r, c| v[r] * v[c].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| z * s).collect() }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|k| self[(k, k)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise deviation from Hermiticity.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for r in 0..self.rows {
            for c in r..self.cols {
                dev = dev.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        dev
    }

    /// `(m + m^dagger) / 2`.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| (self[(r, c)] + self[(c, r)].conj()) * 0.5)
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == ZERO {
                    continue;
                }
                for c in 0..other.cols {
                    out.data[r * other.cols + c] += a * other.data[k * other.cols + c];
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|r| (0..self.cols).map(|c| self[(r, c)] * v[c]).sum()).collect()
    }

    /// Non-negative integer power of a square matrix.
    pub fn pow(&self, n: u64) -> Self {
        assert!(self.is_square());
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        result
    }

    pub fn is_unitary(&self, tol: Tolerance) -> bool {
        if !self.is_square() {
            return false;
        }
        let prod = self * &self.dagger();
        prod.max_abs_diff(&Self::identity(self.rows)) <= tol.band(1.0)
    }

    pub fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }

    pub fn from_nalgebra(m: &DMatrix<Complex64>) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |r, c| m[(r, c)])
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix product dimensions")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Conjugate transpose.
pub fn dagger(m: &ComplexMatrix) -> ComplexMatrix {
    m.dagger()
}

/// Fails unless `m` is square and Hermitian within `tol`, measured against its
/// Frobenius norm.
pub fn check_hermitian(m: &ComplexMatrix, tol: Tolerance) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    let deviation = m.hermitian_deviation();
    let allowed = tol.band(m.frobenius_norm());
    if deviation > allowed {
        return Err(Error::NotHermitian { deviation, allowed });
    }
    Ok(())
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct HermEigen {
    pub values: Vec<f64>,
    /// Unit eigenvectors stored as columns, in the order of `values`.
    pub vectors: ComplexMatrix,
}

pub fn herm_eigen(m: &ComplexMatrix, tol: Tolerance) -> Result<HermEigen> {
    check_hermitian(m, tol)?;
    let n = m.rows();
    let eig = SymmetricEigen::new(m.hermitian_part().to_nalgebra());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]).then(a.cmp(&b)));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(HermEigen { values, vectors })
}

/// All eigenvalues of a Hermitian matrix, sorted ascending.
pub fn herm_eigenvalues(m: &ComplexMatrix, tol: Tolerance) -> Result<Vec<f64>> {
    check_hermitian(m, tol)?;
    let mut values: Vec<f64> =
        SymmetricEigen::new(m.hermitian_part().to_nalgebra()).eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Outcome of a positive-semidefiniteness test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsdCheck {
    pub is_psd: bool,
    pub min_eigenvalue: f64,
    pub max_abs_eigenvalue: f64,
    /// Slack allowed below zero: `atol + rtol * max|eigenvalue|`.
    pub band: f64,
}

pub fn is_psd(m: &ComplexMatrix, tol: Tolerance) -> Result<PsdCheck> {
    let values = herm_eigenvalues(m, tol)?;
    Ok(psd_from_eigenvalues(&values, tol))
}

pub(crate) fn psd_from_eigenvalues(values: &[f64], tol: Tolerance) -> PsdCheck {
    let min_eigenvalue = values.first().copied().unwrap_or(0.0);
    let max_abs_eigenvalue = values.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let band = tol.band(max_abs_eigenvalue);
    PsdCheck { is_psd: min_eigenvalue >= -band, min_eigenvalue, max_abs_eigenvalue, band }
}

/// `Tr(a b)`.
pub fn trace_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Complex64> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "trace inner product of {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let n = a.rows();
    let mut acc = ZERO;
    for r in 0..n {
        for k in 0..n {
            acc += a[(r, k)] * b[(k, r)];
        }
    }
    Ok(acc)
}

/// Kronecker product; the row/column index of `a` varies slowest.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (br, bc) = (b.rows(), b.cols());
    ComplexMatrix::from_fn(a.rows() * br, a.cols() * bc, |r, c| a[(r / br, c / bc)] * b[(r % br, c % bc)])
}

/// Orthonormal basis of the real space of Hermitian `d x d` matrices under
/// `<A, B> = Tr(AB)`: diagonal units first, then for each `k < l` the
/// symmetric and antisymmetric off-diagonal pair.
pub fn hermitian_basis(d: usize) -> Vec<ComplexMatrix> {
    let mut basis = Vec::with_capacity(d * d);
    for k in 0..d {
        let mut e = ComplexMatrix::zeros(d, d);
        e[(k, k)] = ONE;
        basis.push(e);
    }
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for k in 0..d {
        for l in (k + 1)..d {
            let mut sym = ComplexMatrix::zeros(d, d);
            sym[(k, l)] = Complex64::new(h, 0.0);
            sym[(l, k)] = Complex64::new(h, 0.0);
            basis.push(sym);
            let mut anti = ComplexMatrix::zeros(d, d);
            anti[(k, l)] = Complex64::new(0.0, h);
            anti[(l, k)] = Complex64::new(0.0, -h);
            basis.push(anti);
        }
    }
    basis
}

/// Real coordinates of a Hermitian matrix in [`hermitian_basis`].
pub fn hermitian_coordinates(m: &ComplexMatrix) -> Vec<f64> {
    let d = m.rows();
    let s = std::f64::consts::SQRT_2;
    let mut coords = Vec::with_capacity(d * d);
    for k in 0..d {
        coords.push(m[(k, k)].re);
    }
    for k in 0..d {
        for l in (k + 1)..d {
            // Tr(m B) for the symmetric and antisymmetric pair
            let z = m[(l, k)];
            coords.push(s * z.re);
            coords.push(-s * z.im);
        }
    }
    coords
}

/// Inverse of [`hermitian_coordinates`].
pub fn from_hermitian_coordinates(d: usize, coords: &[f64]) -> ComplexMatrix {
    assert_eq!(coords.len(), d * d);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut m = ComplexMatrix::zeros(d, d);
    for k in 0..d {
        m[(k, k)] = Complex64::new(coords[k], 0.0);
    }
    let mut idx = d;
    for k in 0..d {
        for l in (k + 1)..d {
            let (a, b) = (coords[idx], coords[idx + 1]);
            idx += 2;
            m[(k, l)] = Complex64::new(h * a, h * b);
            m[(l, k)] = Complex64::new(h * a, -h * b);
        }
    }
    m
}
