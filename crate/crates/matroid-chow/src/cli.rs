//! Command implementations behind the thin binary: matroid ingestion,
//! computation commands, and the aggregated verification run. Everything is
//! deterministic for a fixed configuration, including the seed.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::asl::{check_asl, MAX_DEGREE};
use crate::decomposition::{
    verify_flat_grading, verify_hilbert_recursion, verify_mobius_embedding,
};
use crate::io::{matroid_from_json, poset_from_json, IoError};
use crate::matroid::{MatroidError, MatroidLattice};
use crate::oracle::DEFAULT_MAX_MONOMIALS;
use crate::pairing::{degree_of, pairing_matrix, verify_theorems, PairingReport, VerifyOptions};
use crate::report::Report;
use crate::ring::{hilbert_series, straighten, Monomial, RingContext, RingError, RingMode};
use crate::text::{parse_polynomial, ParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingChoice {
    Augmented,
    Reduced,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone)]
pub enum InputSource {
    File(std::path::PathBuf),
    Builtin(Vec<String>),
}

#[derive(Debug, Clone)]
pub enum Command {
    Describe,
    Hilbert,
    Straighten { expr: String },
    Degree { expr: String },
    Pairing { degree: usize },
    Verify,
    AslCheck { degree_max: usize },
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub ring: RingChoice,
    pub output: OutputFormat,
    pub seed: u64,
    pub input: InputSource,
}

/// Successful command outcomes; verification failures carry their report so
/// the caller can exit with the dedicated code.
#[derive(Debug)]
pub enum Outcome {
    Ok(String),
    VerificationFailed(String),
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Input(IoError),
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Ring(#[from] RingError),
    #[error("{0}")]
    Usage(String),
    /// Input failed mathematical validation: reported like a failed check.
    #[error("{0}")]
    InvalidInput(MatroidError),
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> CliError {
        match e {
            IoError::Matroid(m) => match m {
                MatroidError::SizeLimit { .. } | MatroidError::InvalidParams(_) => {
                    CliError::Input(IoError::Matroid(m))
                }
                other => CliError::InvalidInput(other),
            },
            other => CliError::Input(other),
        }
    }
}

impl CliError {
    /// 1 for usage and parse problems, 2 for mathematical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::InvalidInput(_) => 2,
            _ => 1,
        }
    }
}

fn load_matroid(input: &InputSource) -> Result<Arc<MatroidLattice>, CliError> {
    match input {
        InputSource::File(path) => {
            let src = std::fs::read_to_string(path)?;
            Ok(matroid_from_json(&src)?)
        }
        InputSource::Builtin(args) => builtin_matroid(args),
    }
}

fn builtin_matroid(args: &[String]) -> Result<Arc<MatroidLattice>, CliError> {
    let usage = "expected: boolean N | uniform R N | graph K<N>";
    let wrap =
        |r: Result<Arc<MatroidLattice>, MatroidError>| -> Result<Arc<MatroidLattice>, CliError> {
            r.map_err(|e| match e {
                MatroidError::SizeLimit { .. } | MatroidError::InvalidParams(_) => {
                    CliError::Usage(e.to_string())
                }
                other => CliError::InvalidInput(other),
            })
        };
    match args {
        [name, n] if name == "boolean" => {
            let n = parse_num(n)?;
            wrap(MatroidLattice::boolean(n))
        }
        [name, r, n] if name == "uniform" => {
            let (r, n) = (parse_num(r)?, parse_num(n)?);
            wrap(MatroidLattice::uniform(r, n))
        }
        [name, k] if name == "graph" => {
            let spec = k.to_ascii_lowercase();
            let n: usize = spec
                .strip_prefix('k')
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| CliError::Usage(format!("unknown graph \"{k}\"; {usage}")))?;
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
                .collect();
            wrap(MatroidLattice::graphic(n, &edges))
        }
        _ => Err(CliError::Usage(format!("bad builtin spec; {usage}"))),
    }
}

fn parse_num(s: &str) -> Result<usize, CliError> {
    s.parse()
        .map_err(|_| CliError::Usage(format!("expected a number, got \"{s}\"")))
}

fn context(cfg: &RunConfig) -> Result<RingContext, CliError> {
    let m = load_matroid(&cfg.input)?;
    Ok(match cfg.ring {
        RingChoice::Augmented => RingContext::augmented(m),
        RingChoice::Reduced => RingContext::reduced(m),
    })
}

pub fn execute(cfg: &RunConfig) -> Result<Outcome, CliError> {
    match &cfg.command {
        Command::Describe => cmd_describe(cfg),
        Command::Hilbert => cmd_hilbert(cfg),
        Command::Straighten { expr } => cmd_straighten(cfg, expr),
        Command::Degree { expr } => cmd_degree(cfg, expr),
        Command::Pairing { degree } => cmd_pairing(cfg, *degree),
        Command::Verify => cmd_verify(cfg),
        Command::AslCheck { degree_max } => cmd_asl_check(cfg, *degree_max),
    }
}

#[derive(Serialize)]
struct FlatRow {
    index: u32,
    rank: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    ground: Option<Vec<u16>>,
}

#[derive(Serialize)]
struct DescribeDoc {
    rank: u32,
    flats: usize,
    atoms: usize,
    ground_set: usize,
    table: Vec<FlatRow>,
}

fn cmd_describe(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let m = load_matroid(&cfg.input)?;
    let doc = DescribeDoc {
        rank: m.rank_top(),
        flats: m.size(),
        atoms: m.atoms().len(),
        ground_set: m.ground_size(),
        table: m
            .flats()
            .map(|f| FlatRow {
                index: f.0,
                rank: m.rank(f),
                ground: m.label(f).map(|l| l.to_vec()),
            })
            .collect(),
    };
    Ok(Outcome::Ok(match cfg.output {
        OutputFormat::Json => serde_json::to_string(&doc).expect("serializable"),
        OutputFormat::Text => {
            let mut out = format!(
                "matroid: rank {}, {} flats, {} atoms, ground set {}\n",
                doc.rank, doc.flats, doc.atoms, doc.ground_set
            );
            out.push_str("index  rank  ground\n");
            for row in &doc.table {
                let ground = row
                    .ground
                    .as_ref()
                    .map(|g| format!("{g:?}"))
                    .unwrap_or_else(|| "-".to_string());
                out.push_str(&format!("{:<6} {:<5} {}\n", row.index, row.rank, ground));
            }
            out
        }
    }))
}

#[derive(Serialize)]
struct HilbertDoc {
    coefficients: Vec<usize>,
}

fn cmd_hilbert(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let ctx = context(cfg)?;
    let coefficients = hilbert_series(&ctx)?;
    Ok(Outcome::Ok(match cfg.output {
        OutputFormat::Json => {
            serde_json::to_string(&HilbertDoc { coefficients }).expect("serializable")
        }
        OutputFormat::Text => format!("{coefficients:?}\n"),
    }))
}

#[derive(Serialize)]
struct StraightenDoc {
    normal_form: String,
}

fn cmd_straighten(cfg: &RunConfig, expr: &str) -> Result<Outcome, CliError> {
    let ctx = context(cfg)?;
    let p = parse_polynomial(expr)?;
    ctx.check_generators(&p)?;
    let normal = straighten(&ctx, &p);
    Ok(Outcome::Ok(match cfg.output {
        OutputFormat::Json => serde_json::to_string(&StraightenDoc {
            normal_form: normal.to_string(),
        })
        .expect("serializable"),
        OutputFormat::Text => format!("{normal}\n"),
    }))
}

#[derive(Serialize)]
struct DegreeDoc {
    value: String,
}

fn cmd_degree(cfg: &RunConfig, expr: &str) -> Result<Outcome, CliError> {
    let ctx = context(cfg)?;
    let p = parse_polynomial(expr)?;
    ctx.check_generators(&p)?;
    let value = degree_of(&ctx, &p)?;
    Ok(Outcome::Ok(match cfg.output {
        OutputFormat::Json => serde_json::to_string(&DegreeDoc {
            value: value.to_string(),
        })
        .expect("serializable"),
        OutputFormat::Text => format!("{value}\n"),
    }))
}

#[derive(Serialize)]
struct PairingDoc {
    degree: usize,
    rows: Vec<String>,
    matrix: Vec<Vec<i64>>,
    lower_triangular_unit: bool,
    full_pairing_det: Option<i64>,
}

impl PairingDoc {
    fn from_report(rep: &PairingReport) -> Result<PairingDoc, CliError> {
        let to_i64 = |v: &num_bigint::BigInt| -> Result<i64, CliError> {
            i64::try_from(v)
                .map_err(|_| CliError::Usage("pairing entry exceeds the JSON integer range".into()))
        };
        Ok(PairingDoc {
            degree: rep.degree,
            rows: rep.rows.iter().map(Monomial::to_string).collect(),
            matrix: rep
                .matrix
                .iter()
                .map(|row| row.iter().map(to_i64).collect::<Result<_, _>>())
                .collect::<Result<_, _>>()?,
            lower_triangular_unit: rep.lower_triangular_unit,
            full_pairing_det: rep.full_pairing_det.as_ref().map(to_i64).transpose()?,
        })
    }
}

fn cmd_pairing(cfg: &RunConfig, degree: usize) -> Result<Outcome, CliError> {
    let ctx = context(cfg)?;
    let rep = pairing_matrix(&ctx, degree, true)?;
    let doc = PairingDoc::from_report(&rep)?;
    Ok(Outcome::Ok(match cfg.output {
        OutputFormat::Json => serde_json::to_string(&doc).expect("serializable"),
        OutputFormat::Text => {
            let mut out = format!(
                "pairing at degree {} ({} standard monomials)\n",
                doc.degree,
                doc.rows.len()
            );
            for (row, label) in doc.matrix.iter().zip(&doc.rows) {
                out.push_str(&format!("{row:?}  {label}\n"));
            }
            out.push_str(&format!(
                "lower triangular with unit diagonal: {}\n",
                doc.lower_triangular_unit
            ));
            if let Some(det) = doc.full_pairing_det {
                out.push_str(&format!("full complementary pairing determinant: {det}\n"));
            }
            out
        }
    }))
}

#[derive(Serialize)]
struct ReportDoc {
    all_passed: bool,
    checks: Vec<crate::report::Check>,
}

fn render_report(cfg: &RunConfig, report: Report) -> Outcome {
    let passed = report.all_passed();
    let text = match cfg.output {
        OutputFormat::Json => serde_json::to_string(&ReportDoc {
            all_passed: passed,
            checks: report.checks.clone(),
        })
        .expect("serializable"),
        OutputFormat::Text => report.render_text(),
    };
    if passed {
        Outcome::Ok(text)
    } else {
        Outcome::VerificationFailed(text)
    }
}

/// Largest semilattice-check degree whose free-monomial count stays inside
/// the oracle guard.
fn asl_degree_cap(elements: usize, want: usize) -> usize {
    let mut d = want.min(MAX_DEGREE);
    while d > 1 && Monomial::count_free(elements, d) > DEFAULT_MAX_MONOMIALS {
        d -= 1;
    }
    d
}

fn cmd_verify(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let m = load_matroid(&cfg.input)?;
    let opts = VerifyOptions {
        seed: cfg.seed,
        ..VerifyOptions::default()
    };
    let mut report = Report::new();
    for mode in [RingMode::Augmented, RingMode::Reduced] {
        let ctx = RingContext::for_mode(m.clone(), mode);
        report.merge(verify_theorems(&ctx, &opts));
    }
    let aug = RingContext::augmented(m.clone());
    report.merge(verify_flat_grading(&aug)?);
    report.merge(verify_mobius_embedding(&aug)?);
    report.merge(verify_hilbert_recursion(&m)?);

    // the inverted poset of nonempty flats is empty for rank-0 matroids
    if m.size() > 1 {
        let op = RingContext::semilattice_op(&m);
        let d_max = asl_degree_cap(m.size() - 1, 4);
        match check_asl(&op, d_max) {
            Ok(rep) => {
                report.push(
                    "asl-axioms[inverted-flat-poset]",
                    rep.axiom1_ok && rep.axiom2_ok,
                    format!("through degree {d_max}; {}", rep.details.join("; ")),
                );
                report.push(
                    "asl-nonzerodivisor[inverted-flat-poset]",
                    rep.nzd_ok,
                    format!("through degree {}", d_max.saturating_sub(1)),
                );
            }
            Err(e) => report.push("asl-axioms[inverted-flat-poset]", false, e.to_string()),
        }
    }
    Ok(render_report(cfg, report))
}

fn cmd_asl_check(cfg: &RunConfig, degree_max: usize) -> Result<Outcome, CliError> {
    let ctx = match &cfg.input {
        InputSource::File(path) => {
            let src = std::fs::read_to_string(path)?;
            let poset = poset_from_json(&src)?;
            let sl = poset
                .as_meet_semilattice()
                .map_err(|e| CliError::Input(IoError::Poset(e)))?;
            RingContext::semilattice(Arc::new(sl))
        }
        InputSource::Builtin(args) => {
            let m = builtin_matroid(args)?;
            RingContext::semilattice_op(&m)
        }
    };
    let rep = check_asl(&ctx, degree_max)?;
    let mut report = Report::new();
    report.push(
        "asl-axiom-1",
        rep.axiom1_ok,
        format!("basis counts match order-complex counts through degree {degree_max}"),
    );
    report.push(
        "asl-axiom-2",
        rep.axiom2_ok,
        "incomparable products factor through a lower bound",
    );
    report.push(
        "asl-nonzerodivisor",
        rep.nzd_ok,
        format!(
            "bottom multiplication injective through degree {}",
            degree_max.saturating_sub(1)
        ),
    );
    for d in &rep.details {
        report.push("asl-detail", false, d.clone());
    }
    Ok(render_report(cfg, report))
}
