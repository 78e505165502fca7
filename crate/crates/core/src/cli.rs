//! Command-line front end and file formats.
//!
//! Exit codes: 0 success (or a positively representable state), 1 bad input,
//! 2 frame verification failure, 3 not a quantum state, 4 negatively
//! represented state, 5 boundary case.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bochner::{certify_distribution, certify_state, scan, BochnerCertificate, DistributionCertificate};
use crate::error::{Error, Result};
use crate::group::{make_group, DualIndex, FiniteAbelianGroup, GroupElement};
use crate::numerics::{ComplexMatrix, Tolerance};
use crate::projective::{
    leonhardt_frame, qubit_frame, tensor_frame, weyl_frame, z2cubed_frame, FrameKind, ProjectiveFrame, Sign,
};
use crate::quasiprob::{QuasiProbDistribution, QuasiProbRepresentation};
use crate::states::{self, StateSpec};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "fourier-frames", version, about = "Quasi-probability representations from projective frames")]
struct Cli {
    /// Absolute tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    atol: f64,
    /// Relative tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    rtol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a group and its character table.
    Group {
        /// Cyclic factor orders, e.g. `2 2` for Z_2 x Z_2.
        #[arg(required = true, allow_negative_numbers = true)]
        orders: Vec<i64>,
        /// Check that the character table is a complex Hadamard matrix.
        #[arg(long)]
        check_hadamard: bool,
        /// Digits after the decimal point.
        #[arg(long, default_value_t = 6)]
        precision: usize,
    },
    /// Frame files.
    Frame {
        #[command(subcommand)]
        command: FrameCommand,
    },
    /// Write the quasi-probability distribution of a state as CSV.
    Represent {
        #[arg(long)]
        frame: String,
        #[arg(long)]
        state: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the characteristic function.
        #[arg(long)]
        phi: Option<PathBuf>,
        /// Report the largest discarded imaginary part on standard error.
        #[arg(long)]
        verbose: bool,
    },
    /// Certify a state or a distribution and write a certificate.
    Certify {
        #[arg(long)]
        frame: String,
        #[arg(long, conflicts_with = "distribution", required_unless_present = "distribution")]
        state: Option<String>,
        /// Distribution CSV with header `index_tuple,mu`.
        #[arg(long)]
        distribution: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify a family of states.
    Scan {
        #[arg(long)]
        frame: String,
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum FrameCommand {
    /// Build a standard frame and write it as JSON.
    Build {
        #[arg(value_enum)]
        kind: BuildKind,
        #[arg(long)]
        d: Option<usize>,
        /// Signs for X, Z, Y, e.g. `+,+,-`.
        #[arg(long, allow_hyphen_values = true)]
        signs: Option<String>,
        #[arg(long)]
        left: Option<String>,
        #[arg(long)]
        right: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run the invariant suite and print a report.
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BuildKind {
    Weyl,
    Qubit,
    Tensor,
    Leonhardt,
    Z2cubed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Stabilizers,
    RandomPure,
    RandomDensity,
    RandomHermitian,
}

/// A failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(e: impl std::fmt::Display) -> Self {
        Failure { code: 1, message: e.to_string() }
    }

    fn verification(e: impl std::fmt::Display) -> Self {
        Failure { code: 2, message: e.to_string() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::input(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::input(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let tol = match Tolerance::new(cli.atol, cli.rtol) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 1;
        }
    };
    let result = match cli.command {
        Command::Group { orders, check_hadamard, precision } => cmd_group(&orders, check_hadamard, precision, out),
        Command::Frame { command: FrameCommand::Build { kind, d, signs, left, right, out: path, verify } } => {
            cmd_frame_build(
                kind,
                d,
                signs.as_deref(),
                left.as_deref(),
                right.as_deref(),
                path.as_deref(),
                verify,
                tol,
                out,
                err,
            )
        }
        Command::Represent { frame, state, out: path, phi, verbose } => {
            cmd_represent(&frame, &state, path.as_deref(), phi.as_deref(), verbose, tol, out, err)
        }
        Command::Certify { frame, state, distribution, out: path } => {
            cmd_certify(&frame, state.as_deref(), distribution.as_deref(), path.as_deref(), tol, out)
        }
        Command::Scan { frame, family, count, seed, out: path } => {
            cmd_scan(&frame, family, count, seed, path.as_deref(), tol, out)
        }
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

// ---------------------------------------------------------------- formats

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub orders: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameElement {
    pub g: Vec<usize>,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

/// JSON form of a projective frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameFile {
    pub schema_version: u32,
    pub group: GroupSpec,
    pub dim: usize,
    pub elements: Vec<FrameElement>,
    pub metadata: FrameKind,
}

fn matrix_to_json(m: &ComplexMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.rows()).map(|r| (0..m.cols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect()).collect()
}

fn matrix_from_json(rows: &[Vec<[f64; 2]>]) -> Result<ComplexMatrix> {
    let rows: Vec<Vec<Complex64>> =
        rows.iter().map(|r| r.iter().map(|&[re, im]| Complex64::new(re, im)).collect()).collect();
    ComplexMatrix::from_rows(rows)
}

impl FrameFile {
    pub fn from_frame(frame: &ProjectiveFrame) -> Self {
        let group = frame.group();
        FrameFile {
            schema_version: SCHEMA_VERSION,
            group: GroupSpec { orders: group.orders().to_vec() },
            dim: frame.dim(),
            elements: group
                .elements()
                .zip(frame.operators())
                .map(|(g, op)| FrameElement { g: g.0, matrix: matrix_to_json(op) })
                .collect(),
            metadata: frame.kind().clone(),
        }
    }

    /// Rebuilds the frame, re-running every frame invariant.
    pub fn to_frame(&self, tol: Tolerance) -> Result<ProjectiveFrame> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!("unsupported schema_version {}", self.schema_version)));
        }
        let group = FiniteAbelianGroup::new(self.group.orders.clone())?;
        let mut ops: Vec<Option<ComplexMatrix>> = vec![None; group.size()];
        for el in &self.elements {
            let idx = group.index_of(&GroupElement(el.g.clone()))?;
            let m = matrix_from_json(&el.matrix)?;
            if m.rows() != self.dim || m.cols() != self.dim {
                return Err(Error::InvalidFrame(format!(
                    "operator at {} is {}x{}, dim is {}",
                    group.element(idx),
                    m.rows(),
                    m.cols(),
                    self.dim
                )));
            }
            if ops[idx].replace(m).is_some() {
                return Err(Error::InvalidFrame(format!("element {} listed twice", group.element(idx))));
            }
        }
        let ops = ops
            .into_iter()
            .enumerate()
            .map(|(k, m)| m.ok_or_else(|| Error::InvalidFrame(format!("no operator for {}", group.element(k)))))
            .collect::<Result<Vec<_>>>()?;
        ProjectiveFrame::new(group, ops, self.metadata.clone(), tol)
    }

    pub fn to_json(&self) -> Vec<u8> {
        let mut bytes = serde_json::to_vec_pretty(self).expect("frame file serializes");
        bytes.push(b'\n');
        bytes
    }
}

pub fn write_frame_file(frame: &ProjectiveFrame, path: &Path) -> Result<()> {
    std::fs::write(path, FrameFile::from_frame(frame).to_json())?;
    Ok(())
}

/// Reads and verifies a frame file.
pub fn read_frame_file(path: &Path, tol: Tolerance) -> Result<ProjectiveFrame> {
    let file: FrameFile = serde_json::from_slice(&std::fs::read(path)?)?;
    file.to_frame(tol)
}

/// JSON form of an operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub schema_version: u32,
    pub dim: usize,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

impl StateFile {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        StateFile { schema_version: SCHEMA_VERSION, dim: m.rows(), matrix: matrix_to_json(m) }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        let m = matrix_from_json(&self.matrix)?;
        if m.rows() != self.dim || m.cols() != self.dim {
            return Err(Error::Parse(format!("matrix is {}x{}, dim is {}", m.rows(), m.cols(), self.dim)));
        }
        Ok(m)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameRef {
    /// File path, or `None` for a built-in frame.
    pub path: Option<String>,
    pub name: String,
    /// SHA-256 of the frame file bytes (of the canonical JSON for built-ins).
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdicts {
    pub is_quantum_state: bool,
    pub is_positively_representable: bool,
    pub verdict: String,
    pub exit_code: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleValues {
    pub state_min_eig: f64,
    pub min_mu: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleAgreementJson {
    pub quantum: bool,
    pub positive: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionChecks {
    pub input_entrywise_nonnegative: bool,
    pub reproduces_input: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToleranceJson {
    pub atol: f64,
    pub rtol: f64,
}

/// JSON certificate written by `certify`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub schema_version: u32,
    pub frame: FrameRef,
    pub state: String,
    pub phi: Vec<[f64; 2]>,
    pub mc_min_eig: f64,
    pub mq_min_eig: f64,
    pub verdicts: Verdicts,
    pub boundary: bool,
    pub tol: ToleranceJson,
    pub oracle: OracleValues,
    pub oracle_agreement: OracleAgreementJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distribution: Option<DistributionChecks>,
}

impl CertificateFile {
    pub fn new(frame: FrameRef, state: String, cert: &BochnerCertificate) -> Self {
        let verdict = cert.verdict();
        CertificateFile {
            schema_version: SCHEMA_VERSION,
            frame,
            state,
            phi: cert.phi.values.iter().map(|z| [z.re, z.im]).collect(),
            mc_min_eig: cert.mc.min_eigenvalue,
            mq_min_eig: cert.mq.min_eigenvalue,
            verdicts: Verdicts {
                is_quantum_state: cert.is_quantum_state,
                is_positively_representable: cert.is_positively_representable,
                verdict: verdict.label().to_string(),
                exit_code: verdict.exit_code(),
            },
            boundary: cert.boundary,
            tol: ToleranceJson { atol: cert.tol.atol, rtol: cert.tol.rtol },
            oracle: OracleValues { state_min_eig: cert.state_min_eig, min_mu: cert.min_mu },
            oracle_agreement: OracleAgreementJson {
                quantum: cert.oracle_agreement.quantum,
                positive: cert.oracle_agreement.positive,
            },
            distribution: None,
        }
    }
}

// ---------------------------------------------------------------- inputs

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn parse_signs(s: &str) -> Result<[Sign; 3]> {
    let signs: Vec<Sign> = s
        .chars()
        .filter(|c| *c != ',' && !c.is_whitespace())
        .map(|c| Sign::from_char(c).ok_or_else(|| Error::Parse(format!("invalid sign {c:?} in {s:?}"))))
        .collect::<Result<_>>()?;
    signs.try_into().map_err(|_| Error::Parse(format!("expected three signs, got {s:?}")))
}

/// Built-in frame by name: `weyl3`, `weyl:5`, `qubit+++`, `qubit:+,+,-`,
/// `qubit2` (two qubits), `leonhardt2`, `z2cubed`.
pub fn builtin_frame(name: &str) -> Result<ProjectiveFrame> {
    let unknown = || Error::Parse(format!("unknown frame {name:?}"));
    let arg = |prefix: &str| name.strip_prefix(prefix).map(|r| r.strip_prefix(':').unwrap_or(r));
    let number = |r: &str| r.parse::<usize>().map_err(|_| unknown());
    if name == "z2cubed" {
        z2cubed_frame()
    } else if name == "qubit2" {
        let q = qubit_frame([Sign::Plus; 3])?;
        tensor_frame(&q, &q)
    } else if let Some(r) = arg("weyl") {
        weyl_frame(number(r)?)
    } else if let Some(r) = arg("leonhardt") {
        leonhardt_frame(number(r)?)
    } else if let Some(r) = arg("qubit") {
        qubit_frame(if r.is_empty() { [Sign::Plus; 3] } else { parse_signs(r)? })
    } else {
        Err(unknown())
    }
}

/// Loads a frame from a file path or a built-in name.
fn load_frame(spec: &str, tol: Tolerance) -> CliResult<(ProjectiveFrame, FrameRef)> {
    let path = Path::new(spec);
    if path.is_file() {
        let bytes = std::fs::read(path)?;
        let file: FrameFile = serde_json::from_slice(&bytes).map_err(Failure::input)?;
        let frame = file.to_frame(tol).map_err(|e| Failure::verification(format!("frame {spec}: {e}")))?;
        let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        Ok((frame, FrameRef { path: Some(spec.to_string()), name, sha256: sha256_hex(&bytes) }))
    } else {
        let frame = builtin_frame(spec)?;
        let hash = sha256_hex(&FrameFile::from_frame(&frame).to_json());
        Ok((frame, FrameRef { path: None, name: spec.to_string(), sha256: hash }))
    }
}

fn load_representation(spec: &str, tol: Tolerance) -> CliResult<(QuasiProbRepresentation, FrameRef)> {
    let (frame, r) = load_frame(spec, tol)?;
    let rep = QuasiProbRepresentation::build(&frame, tol).map_err(Failure::verification)?;
    Ok((rep, r))
}

/// A state spec string, or a path to a state JSON file.
fn load_state(spec: &str, d: usize) -> CliResult<ComplexMatrix> {
    let path = Path::new(spec);
    let m = if path.is_file() {
        let file: StateFile = serde_json::from_slice(&std::fs::read(path)?).map_err(Failure::input)?;
        file.to_matrix()?
    } else {
        spec.parse::<StateSpec>()?.build(d)?
    };
    if m.rows() != d {
        return Err(Failure::input(format!("state has dimension {}, frame has dimension {d}", m.rows())));
    }
    Ok(m)
}

fn parse_tuple(s: &str) -> Result<Vec<usize>> {
    let inner = s.trim().strip_prefix('(').and_then(|r| r.strip_suffix(')'));
    let inner = inner.ok_or_else(|| Error::Parse(format!("expected a tuple like (0,1), got {s:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad tuple entry in {s:?}"))))
        .collect()
}

fn format_tuple(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Reads a distribution CSV (`index_tuple,mu`); every dual index must appear once.
pub fn read_distribution(path: &Path, group: &FiniteAbelianGroup) -> Result<QuasiProbDistribution> {
    let mut reader = csv::Reader::from_path(path)?;
    let headers = reader.headers()?.clone();
    if headers.len() != 2 || &headers[0] != "index_tuple" || &headers[1] != "mu" {
        return Err(Error::Parse(format!("expected header index_tuple,mu, got {:?}", headers)));
    }
    let mut values: Vec<Option<f64>> = vec![None; group.size()];
    for record in reader.records() {
        let record = record?;
        let j = DualIndex(parse_tuple(&record[0])?);
        let pos = group.dual_position(&j)?;
        let v: f64 = record[1].trim().parse().map_err(|_| Error::Parse(format!("bad value {:?}", &record[1])))?;
        if values[pos].replace(v).is_some() {
            return Err(Error::Parse(format!("index {j} listed twice")));
        }
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(k, v)| v.ok_or_else(|| Error::Parse(format!("missing index {}", group.dual_index(k)))))
        .collect::<Result<Vec<_>>>()?;
    QuasiProbDistribution::new(group.clone(), values)
}

/// Writes a distribution CSV in lexicographic dual order with 17 significant digits.
pub fn write_distribution(mu: &QuasiProbDistribution, w: impl Write) -> Result<()> {
    let mut writer = csv::Writer::from_writer(w);
    writer.write_record(["index_tuple", "mu"])?;
    for (j, v) in mu.group.dual_indices().zip(&mu.values) {
        writer.write_record([format_tuple(&j.0), format!("{v:.16e}")])?;
    }
    writer.flush()?;
    Ok(())
}

fn emit(path: Option<&Path>, bytes: &[u8], out: &mut dyn Write) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, bytes)?,
        None => out.write_all(bytes)?,
    }
    Ok(())
}

// ---------------------------------------------------------------- commands

fn format_complex(z: Complex64, precision: usize) -> String {
    let snap = |x: f64| if x.abs() < 0.5 * 10f64.powi(-(precision as i32)) { 0.0 } else { x };
    let (re, im) = (snap(z.re), snap(z.im));
    let sign = if im < 0.0 { '-' } else { '+' };
    format!("{re:.p$}{sign}{:.p$}i", im.abs(), p = precision)
}

fn element_order(group: &FiniteAbelianGroup, g: &GroupElement) -> usize {
    g.0.iter().zip(group.orders()).fold(1, |acc, (&x, &n)| {
        let o = n / gcd(x, n);
        acc / gcd(acc, o) * o
    })
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn cmd_group(orders: &[i64], check_hadamard: bool, precision: usize, out: &mut dyn Write) -> CliResult<i32> {
    let orders =
        orders.iter().map(|&n| usize::try_from(n).map_err(|_| Error::InvalidOrder(n))).collect::<Result<Vec<_>>>()?;
    let group = make_group(&orders)?;
    let mut text = String::new();
    let names: Vec<String> = orders.iter().map(|n| format!("Z_{n}")).collect();
    writeln!(text, "group: {}", names.join(" x ")).unwrap();
    writeln!(text, "order: {}", group.size()).unwrap();
    let elements: Vec<GroupElement> = group.elements().collect();
    let exponent = elements.iter().map(|g| element_order(&group, g)).max().unwrap_or(1);
    writeln!(text, "exponent: {exponent}").unwrap();
    writeln!(text, "elements (order):").unwrap();
    for g in &elements {
        writeln!(text, "  {g} {}", element_order(&group, g)).unwrap();
    }
    let table = group.character_table();
    writeln!(text, "character table (row j, column g):").unwrap();
    for (r, j) in group.dual_indices().enumerate() {
        let cells: Vec<String> = (0..group.size()).map(|c| format_complex(table[(r, c)], precision)).collect();
        writeln!(text, "  {j}: {}", cells.join(" ")).unwrap();
    }
    let mut code = 0;
    if check_hadamard {
        let n = group.size();
        let modulus = table.as_slice().iter().map(|z| (z.norm() - 1.0).abs()).fold(0.0, f64::max);
        let gram = &table * &table.dagger();
        let unitarity = gram.max_abs_diff(&ComplexMatrix::identity(n).scale_real(n as f64)) / n as f64;
        let pass = modulus < 1e-10 && unitarity < 1e-10;
        writeln!(
            text,
            "hadamard check: {} (unit-modulus defect {modulus:.3e}, unitarity residual {unitarity:.3e})",
            if pass { "pass" } else { "FAIL" }
        )
        .unwrap();
        if !pass {
            code = 2;
        }
    }
    out.write_all(text.as_bytes())?;
    Ok(code)
}

/// One line of a frame verification report.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

/// Runs the frame invariant suite beyond what construction already enforces.
pub fn verify_frame(frame: &ProjectiveFrame, tol: Tolerance) -> Vec<Check> {
    let group = frame.group();
    let n = group.size();
    let d = frame.dim() as f64;
    let ops = frame.operators();
    let kernel = frame.kernel_indices_with(tol);
    let in_kernel = |k: usize| kernel.contains(&k);
    let limit = 1e-10_f64.max(tol.atol);
    let mut checks = Vec::new();

    let trace_defect = (0..n).filter(|&k| !in_kernel(k)).map(|k| ops[k].trace().norm() / d).fold(0.0, f64::max);
    checks.push(Check {
        name: "tracelessness",
        pass: trace_defect < limit,
        detail: format!("max |Tr P_g|/d off the kernel = {trace_defect:.3e}"),
    });

    let mut ortho = 0.0_f64;
    for a in 0..n {
        for b in 0..n {
            let ip = (&ops[a].dagger() * &ops[b]).trace().norm() / d;
            let expected = if in_kernel(group.quotient_idx(b, a)) { 1.0 } else { 0.0 };
            ortho = ortho.max((ip - expected).abs());
        }
    }
    checks.push(Check {
        name: "orthogonality",
        pass: ortho < limit,
        detail: format!("max ||Tr(P_g^dagger P_h)|/d - [h g^-1 in kernel]| = {ortho:.3e}"),
    });

    let report = frame.cocycle().report();
    checks.push(Check {
        name: "cocycle",
        pass: report.max_defect() < limit,
        detail: format!(
            "modulus {:.1e}, normalization {:.1e}, inverse pairs {:.1e}, identity {:.1e} over {} triples",
            report.max_modulus_defect,
            report.max_normalization_defect,
            report.max_inverse_pair_defect,
            report.max_cocycle_identity_defect,
            report.triples_checked
        ),
    });

    let kernel_elems: Vec<String> = kernel.iter().map(|&k| group.element(k).to_string()).collect();
    checks.push(Check {
        name: "kernel",
        pass: true,
        detail: format!("{} ({})", kernel_elems.join(" "), if kernel.len() == 1 { "faithful" } else { "unfaithful" }),
    });

    match QuasiProbRepresentation::build(frame, tol) {
        Ok(rep) => {
            let (a, b) = rep.frame_bounds();
            checks.push(Check { name: "frame bounds", pass: a > tol.atol, detail: format!("[{a:.6e}, {b:.6e}]") });
        }
        Err(e) => checks.push(Check { name: "frame bounds", pass: false, detail: e.to_string() }),
    }
    checks
}

#[allow(clippy::too_many_arguments)]
fn cmd_frame_build(
    kind: BuildKind,
    d: Option<usize>,
    signs: Option<&str>,
    left: Option<&str>,
    right: Option<&str>,
    path: Option<&Path>,
    verify: bool,
    tol: Tolerance,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<i32> {
    let need_d = || d.ok_or_else(|| Failure::input("--d is required for this frame kind"));
    let frame = match kind {
        BuildKind::Weyl => weyl_frame(need_d()?)?,
        BuildKind::Leonhardt => leonhardt_frame(need_d()?)?,
        BuildKind::Qubit => qubit_frame(parse_signs(signs.ok_or_else(|| Failure::input("--signs is required"))?)?)?,
        BuildKind::Z2cubed => z2cubed_frame()?,
        BuildKind::Tensor => {
            let l = left.ok_or_else(|| Failure::input("--left is required"))?;
            let r = right.ok_or_else(|| Failure::input("--right is required"))?;
            let (a, _) = load_frame(l, tol)?;
            let (b, _) = load_frame(r, tol)?;
            tensor_frame(&a, &b)?
        }
    };
    emit(path, &FrameFile::from_frame(&frame).to_json(), out)?;
    if !verify {
        return Ok(0);
    }
    let checks = verify_frame(&frame, tol);
    let mut text = String::new();
    for c in &checks {
        writeln!(text, "{:<14} {}  {}", c.name, if c.pass { "pass" } else { "FAIL" }, c.detail).unwrap();
    }
    // keep stdout clean when it carries the frame JSON
    if path.is_some() {
        out.write_all(text.as_bytes())?;
    } else {
        err.write_all(text.as_bytes())?;
    }
    Ok(if checks.iter().all(|c| c.pass) { 0 } else { 2 })
}

#[allow(clippy::too_many_arguments)]
fn cmd_represent(
    frame: &str,
    state: &str,
    path: Option<&Path>,
    phi_path: Option<&Path>,
    verbose: bool,
    tol: Tolerance,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<i32> {
    let (rep, _) = load_representation(frame, tol)?;
    let rho = load_state(state, rep.dim())?;
    let mu = rep.represent(&rho, tol)?;
    if verbose {
        writeln!(err, "max imaginary residue {:.3e}", mu.max_imag_residue)?;
    }
    let mut bytes = Vec::new();
    write_distribution(&mu, &mut bytes)?;
    emit(path, &bytes, out)?;
    if let Some(p) = phi_path {
        let phi = rep.characteristic(&rho, tol)?;
        let mut writer = csv::Writer::from_path(p).map_err(Failure::input)?;
        writer.write_record(["element", "re", "im"]).map_err(Failure::input)?;
        for (g, z) in phi.group.elements().zip(&phi.values) {
            writer
                .write_record([format_tuple(&g.0), format!("{:.16e}", z.re), format!("{:.16e}", z.im)])
                .map_err(Failure::input)?;
        }
        writer.flush()?;
    }
    Ok(0)
}

fn cmd_certify(
    frame: &str,
    state: Option<&str>,
    distribution: Option<&Path>,
    path: Option<&Path>,
    tol: Tolerance,
    out: &mut dyn Write,
) -> CliResult<i32> {
    let (rep, frame_ref) = load_representation(frame, tol)?;
    let (file, cert) = match (state, distribution) {
        (Some(s), _) => {
            let rho = load_state(s, rep.dim())?;
            let cert = certify_state(&rep, &rho, tol)?;
            (CertificateFile::new(frame_ref, s.to_string(), &cert), cert)
        }
        (None, Some(p)) => {
            let mu = read_distribution(p, rep.group())?;
            let DistributionCertificate { certificate, input_entrywise_nonnegative, reproduces_input, .. } =
                certify_distribution(&rep, &mu, tol)?;
            let mut file = CertificateFile::new(frame_ref, p.display().to_string(), &certificate);
            file.distribution = Some(DistributionChecks { input_entrywise_nonnegative, reproduces_input });
            (file, certificate)
        }
        (None, None) => return Err(Failure::input("one of --state or --distribution is required")),
    };
    let mut json = serde_json::to_vec_pretty(&file).map_err(Failure::input)?;
    json.push(b'\n');
    let verdict = cert.verdict();
    let summary = format!(
        "{}\n  M^C min eigenvalue {:.6e}\n  M^Q min eigenvalue {:.6e}\n  oracles: min eig rho {:.6e}, min mu {:.6e} (agree: {})\n",
        verdict.label(),
        cert.mc.min_eigenvalue,
        cert.mq.min_eigenvalue,
        cert.state_min_eig,
        cert.min_mu,
        cert.oracle_agreement.quantum && cert.oracle_agreement.positive
    );
    match path {
        Some(p) => {
            std::fs::write(p, &json)?;
            out.write_all(summary.as_bytes())?;
        }
        None => out.write_all(&json)?,
    }
    Ok(verdict.exit_code())
}

/// The states a scan family produces for dimension `d`.
pub fn family_states(family: Family, d: usize, count: usize, seed: u64) -> Result<Vec<ComplexMatrix>> {
    let seeds = (0..count as u64).map(|k| seed.wrapping_add(k));
    match family {
        Family::Stabilizers => states::stabilizer_states(d),
        Family::RandomPure => seeds.map(|s| states::random_pure(d, s)).collect(),
        Family::RandomDensity => seeds.map(|s| states::random_density(d, s)).collect(),
        Family::RandomHermitian => seeds.map(|s| states::random_hermitian_trace1(d, s)).collect(),
    }
}

fn cmd_scan(
    frame: &str,
    family: Family,
    count: usize,
    seed: u64,
    path: Option<&Path>,
    tol: Tolerance,
    out: &mut dyn Write,
) -> CliResult<i32> {
    let (rep, _) = load_representation(frame, tol)?;
    let states = family_states(family, rep.dim(), count, seed)?;
    let report = scan(&rep, &states, tol);
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record([
            "state_id",
            "min_mu",
            "min_eig_rho",
            "mc_min_eig",
            "mq_min_eig",
            "is_quantum_state",
            "is_positively_representable",
            "boundary",
            "error",
        ])
        .map_err(Failure::input)?;
    for row in &report.rows {
        let record = match &row.result {
            Ok(c) => vec![
                row.index.to_string(),
                format!("{:.16e}", c.min_mu),
                format!("{:.16e}", c.state_min_eig),
                format!("{:.16e}", c.mc.min_eigenvalue),
                format!("{:.16e}", c.mq.min_eigenvalue),
                c.is_quantum_state.to_string(),
                c.is_positively_representable.to_string(),
                c.boundary.to_string(),
                String::new(),
            ],
            Err(e) => {
                let mut r = vec![row.index.to_string()];
                r.extend(std::iter::repeat_n(String::new(), 7));
                r.push(e.clone());
                r
            }
        };
        writer.write_record(&record).map_err(Failure::input)?;
    }
    let csv_bytes = writer.into_inner().map_err(|e| Failure::input(e.to_string()))?;
    let summary = format!("{} valid / {} positive\n", report.valid, report.positive);
    let failed = if report.failed > 0 { format!("{} failed\n", report.failed) } else { String::new() };
    match path {
        Some(p) => {
            std::fs::write(p, &csv_bytes)?;
            write!(out, "{summary}{failed}")?;
        }
        None => {
            out.write_all(&csv_bytes)?;
            write!(out, "{summary}{failed}")?;
        }
    }
    Ok(0)
}
