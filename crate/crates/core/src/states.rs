//! Deterministic state constructors.
//!
//! Random states draw from `ChaCha20Rng::seed_from_u64(seed)` (crate
//! `rand_chacha` 0.9) and `rand_distr::StandardNormal`; complex Gaussian
//! entries are sampled real part first, then imaginary part, in row-major
//! order. Identical seeds give bitwise-identical matrices.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::group::root_of_unity;
use crate::numerics::{ComplexMatrix, Tolerance, ZERO};
use crate::quasiprob::gross_wigner_pure;

/// Redraw threshold for [`random_hermitian_trace1`]: the raw trace must be at
/// least this large in magnitude before rescaling.
pub const MIN_RAW_TRACE: f64 = 0.25;

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    Ok(())
}

fn check_index(d: usize, k: usize) -> Result<()> {
    check_dim(d)?;
    if k >= d {
        return Err(Error::IndexOutOfRange { index: k, dim: d });
    }
    Ok(())
}

/// `|k>`.
pub fn basis_vector(d: usize, k: usize) -> Result<Vec<Complex64>> {
    check_index(d, k)?;
    let mut v = vec![ZERO; d];
    v[k] = Complex64::new(1.0, 0.0);
    Ok(v)
}

pub fn basis_state(d: usize, k: usize) -> Result<ComplexMatrix> {
    Ok(ComplexMatrix::outer(&basis_vector(d, k)?))
}

/// `|phi_m> = d^{-1/2} sum_k exp(-2 pi i k m / d) |k>`.
pub fn conjugate_basis_vector(d: usize, m: usize) -> Result<Vec<Complex64>> {
    check_index(d, m)?;
    let s = 1.0 / (d as f64).sqrt();
    Ok((0..d).map(|k| root_of_unity((k * m) % d, d) * s).collect())
}

pub fn conjugate_basis_state(d: usize, m: usize) -> Result<ComplexMatrix> {
    Ok(ComplexMatrix::outer(&conjugate_basis_vector(d, m)?))
}

/// Quadratic-phase state with amplitudes `w^{a k^2 + b k} / sqrt(d)`.
pub fn quadratic_vector(d: usize, a: usize, b: usize) -> Result<Vec<Complex64>> {
    check_dim(d)?;
    let s = 1.0 / (d as f64).sqrt();
    Ok((0..d).map(|k| root_of_unity((a * k * k + b * k) % d, d) * s).collect())
}

pub fn quadratic_state(d: usize, a: usize, b: usize) -> Result<ComplexMatrix> {
    Ok(ComplexMatrix::outer(&quadratic_vector(d, a, b)?))
}

pub fn is_odd_prime(d: usize) -> bool {
    d >= 3 && d % 2 == 1 && (3..).step_by(2).take_while(|k| k * k <= d).all(|k| d % k != 0)
}

/// The `d(d+1)` stabilizer states of an odd prime dimension: the
/// computational basis followed by the quadratic-phase states in `(a, b)`
/// lexicographic order. Each is checked to have a nonnegative Wigner function.
pub fn stabilizer_vectors(d: usize) -> Result<Vec<Vec<Complex64>>> {
    if !is_odd_prime(d) {
        return Err(Error::NotOddPrime(d));
    }
    let mut out: Vec<Vec<Complex64>> = Vec::with_capacity(d * (d + 1));
    let mut projectors: Vec<ComplexMatrix> = Vec::with_capacity(d * (d + 1));
    let candidates =
        (0..d).map(|k| basis_vector(d, k)).chain((0..d).flat_map(|a| (0..d).map(move |b| quadratic_vector(d, a, b))));
    for v in candidates {
        let v = v?;
        let p = ComplexMatrix::outer(&v);
        if projectors.iter().any(|q| q.max_abs_diff(&p) < 1e-9) {
            continue;
        }
        let w = gross_wigner_pure(&v, d, Tolerance::default())?;
        let min = w.iter().flatten().copied().fold(f64::INFINITY, f64::min);
        if min < -1e-10 {
            return Err(Error::InternalInconsistency(format!("stabilizer candidate has Wigner value {min}")));
        }
        projectors.push(p);
        out.push(v);
    }
    if out.len() != d * (d + 1) {
        return Err(Error::InternalInconsistency(format!(
            "expected {} stabilizer states, got {}",
            d * (d + 1),
            out.len()
        )));
    }
    Ok(out)
}

pub fn stabilizer_states(d: usize) -> Result<Vec<ComplexMatrix>> {
    Ok(stabilizer_vectors(d)?.iter().map(|v| ComplexMatrix::outer(v)).collect())
}

fn gaussian(rng: &mut ChaCha20Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

fn gaussian_matrix(rng: &mut ChaCha20Rng, d: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, d, |_, _| gaussian(rng))
}

/// Normalized complex Gaussian vector (Haar-random pure state).
pub fn random_pure_vector(d: usize, seed: u64) -> Result<Vec<Complex64>> {
    check_dim(d)?;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let v: Vec<_> = (0..d).map(|_| gaussian(&mut rng)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    Ok(v.into_iter().map(|z| z / norm).collect())
}

pub fn random_pure(d: usize, seed: u64) -> Result<ComplexMatrix> {
    Ok(ComplexMatrix::outer(&random_pure_vector(d, seed)?))
}

/// `G G^dagger / Tr(G G^dagger)` for a complex Gaussian `G`.
pub fn random_density(d: usize, seed: u64) -> Result<ComplexMatrix> {
    check_dim(d)?;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let g = gaussian_matrix(&mut rng, d);
    let w = &g * &g.dagger();
    let t = w.trace().re;
    Ok(w.scale_real(1.0 / t).hermitian_part())
}

/// Hermitian part of a complex Gaussian matrix rescaled to unit trace; usually
/// not positive. Draws whose raw trace is below [`MIN_RAW_TRACE`] in magnitude
/// are discarded and redrawn from the same stream.
pub fn random_hermitian_trace1(d: usize, seed: u64) -> Result<ComplexMatrix> {
    check_dim(d)?;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    loop {
        let h = gaussian_matrix(&mut rng, d).hermitian_part();
        let t = h.trace().re;
        if t.abs() >= MIN_RAW_TRACE {
            return Ok(h.scale_real(1.0 / t).hermitian_part());
        }
    }
}

pub fn maximally_mixed(d: usize) -> Result<ComplexMatrix> {
    check_dim(d)?;
    Ok(ComplexMatrix::identity(d).scale_real(1.0 / d as f64))
}

/// Textual state description, e.g. `basis:0`, `conjugate:1`, `quadratic:1,2`,
/// `mixed`, `random-pure:42`, `random-density:7`, `random-hermitian:3`,
/// `diag:1.5,-0.5`. The dimension comes from context.
#[derive(Debug, Clone, PartialEq)]
pub enum StateSpec {
    Basis(usize),
    Conjugate(usize),
    Quadratic(usize, usize),
    MaximallyMixed,
    RandomPure(u64),
    RandomDensity(u64),
    RandomHermitian(u64),
    /// Real diagonal literal.
    Diagonal(Vec<f64>),
}

impl StateSpec {
    pub fn build(&self, d: usize) -> Result<ComplexMatrix> {
        match self {
            StateSpec::Basis(k) => basis_state(d, *k),
            StateSpec::Conjugate(m) => conjugate_basis_state(d, *m),
            StateSpec::Quadratic(a, b) => quadratic_state(d, *a, *b),
            StateSpec::MaximallyMixed => maximally_mixed(d),
            StateSpec::RandomPure(s) => random_pure(d, *s),
            StateSpec::RandomDensity(s) => random_density(d, *s),
            StateSpec::RandomHermitian(s) => random_hermitian_trace1(d, *s),
            StateSpec::Diagonal(v) => {
                if v.len() != d {
                    return Err(Error::DimensionMismatch(format!("diagonal of length {} for dimension {d}", v.len())));
                }
                Ok(ComplexMatrix::from_real_diag(v))
            }
        }
    }
}

impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateSpec::Basis(k) => write!(f, "basis:{k}"),
            StateSpec::Conjugate(m) => write!(f, "conjugate:{m}"),
            StateSpec::Quadratic(a, b) => write!(f, "quadratic:{a},{b}"),
            StateSpec::MaximallyMixed => write!(f, "mixed"),
            StateSpec::RandomPure(s) => write!(f, "random-pure:{s}"),
            StateSpec::RandomDensity(s) => write!(f, "random-density:{s}"),
            StateSpec::RandomHermitian(s) => write!(f, "random-hermitian:{s}"),
            StateSpec::Diagonal(v) => {
                let parts: Vec<_> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "diag:{}", parts.join(","))
            }
        }
    }
}

impl FromStr for StateSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, arg) = s.split_once(':').unwrap_or((s, ""));
        let bad = || Error::Parse(format!("invalid state spec {s:?}"));
        let int = |x: &str| x.trim().parse::<usize>().map_err(|_| bad());
        let seed = |x: &str| x.trim().parse::<u64>().map_err(|_| bad());
        Ok(match kind {
            "basis" => StateSpec::Basis(int(arg)?),
            "conjugate" => StateSpec::Conjugate(int(arg)?),
            "quadratic" => {
                let (a, b) = arg.split_once(',').ok_or_else(bad)?;
                StateSpec::Quadratic(int(a)?, int(b)?)
            }
            "mixed" | "maximally-mixed" => StateSpec::MaximallyMixed,
            "random-pure" => StateSpec::RandomPure(seed(arg)?),
            "random-density" => StateSpec::RandomDensity(seed(arg)?),
            "random-hermitian" => StateSpec::RandomHermitian(seed(arg)?),
            "diag" => StateSpec::Diagonal(
                arg.split(',').map(|x| x.trim().parse::<f64>().map_err(|_| bad())).collect::<Result<_>>()?,
            ),
            _ => return Err(bad()),
        })
    }
}
