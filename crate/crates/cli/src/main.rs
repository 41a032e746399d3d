//! `krw`: evaluate Krawtchouk polynomials, print model matrices and Padé
//! approximants, and run the identity checks.
//!
//! Exit codes: 0 on success, 1 when an identity fails, 2 on usage errors.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use krw_core::diffop::Leak;
use krw_core::krawtchouk::{krawtchouk_eval, krawtchouk_table};
use krw_core::model_bargmann::{
    bargmann_adjoint_operators, bargmann_operators, ModelOperators, TruncationProfile,
};
use krw_core::model_bg::{bg_adjoint_operators, bg_operators};
use krw_core::model_fd::{fd_adjoint_operators, fd_operators};
use krw_core::pade_kummer::{pade_exp, pade_order_first_defect};
use krw_core::su2_rep::{x_adjoint_eigenvector, x_eigenvector, IrrepBasisKind, RepMatrices};
use krw_core::verify::{verify, verify_all, Identity, VerifyOptions, VerifyReport};
use krw_core::{ExactScalar, KrwError, RationalMatrix};
use serde::Serialize;

const DEFAULT_NMAX: usize = 12;

#[derive(Parser)]
#[command(
    name = "krw",
    version,
    about = "Exact symmetric Krawtchouk polynomials and su(2) models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// K_n(k) for one lattice point (needs --n, --k, --N).
    Eval(Params),
    /// The full table K_n(k), n, k = 0..N (needs --N).
    Table(Params),
    /// Eigenvector of X = (J+ + J-)/2, or of its transpose with --adjoint (needs --k, --N).
    Eigvec(Params),
    /// Generator matrices of a model (needs --N; --adjoint for the transposes).
    Model {
        #[arg(value_enum)]
        name: ModelName,
        #[command(flatten)]
        params: Params,
    },
    /// Padé approximant R_nm of e^z (needs --n, --m).
    Pade(Params),
    /// Check one identity at --N (kummer also takes --a).
    Verify {
        identity: String,
        #[command(flatten)]
        params: Params,
    },
    /// Check every identity for N = 1..=Nmax (--N, else KRW_NMAX, else 12).
    VerifyAll(Params),
}

#[derive(Args, Clone, Debug)]
struct Params {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long = "N")]
    big_n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    a: Option<i64>,
    #[arg(long)]
    adjoint: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum ModelName {
    Fd,
    Bargmann,
    Bg,
}

/// Why a command did not succeed.
enum Failure {
    Usage(String),
    IdentityFailed(String),
}

impl From<KrwError> for Failure {
    fn from(e: KrwError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn require<T>(value: Option<T>, flag: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("missing required flag --{flag}")))
}

fn json_only(p: &Params) -> Result<(), Failure> {
    match p.format {
        Format::Json => Ok(()),
        Format::Csv => Err(Failure::Usage(
            "--format csv is only available for `table`".into(),
        )),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("report types serialize")
}

fn string_rows(m: &RationalMatrix) -> Vec<Vec<String>> {
    m.to_rows()
        .into_iter()
        .map(|row| row.iter().map(ExactScalar::to_string).collect())
        .collect()
}

fn eval(p: &Params) -> Outcome {
    json_only(p)?;
    let value = krawtchouk_eval(require(p.n, "n")?, require(p.k, "k")?, require(p.big_n, "N")?)?;
    Ok(to_json(&value))
}

fn table(p: &Params) -> Outcome {
    let big_n = require(p.big_n, "N")?;
    let t = krawtchouk_table(big_n)?;
    Ok(match p.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Table {
                #[serde(rename = "N")]
                big_n: usize,
                rows: Vec<Vec<String>>,
            }
            to_json(&Table {
                big_n,
                rows: string_rows(t.values()),
            })
        }
        Format::Csv => {
            let header = std::iter::once("n".to_string()).chain((0..=big_n).map(|k| format!("k={k}")));
            let mut lines = vec![header.collect::<Vec<_>>().join(",")];
            for (n, row) in string_rows(t.values()).into_iter().enumerate() {
                lines.push(
                    std::iter::once(n.to_string())
                        .chain(row)
                        .collect::<Vec<_>>()
                        .join(","),
                );
            }
            lines.join("\n")
        }
    })
}

fn eigvec(p: &Params) -> Outcome {
    json_only(p)?;
    let (k, big_n) = (require(p.k, "k")?, require(p.big_n, "N")?);
    let (pair, basis) = if p.adjoint {
        (x_adjoint_eigenvector(k, big_n)?, IrrepBasisKind::Tilde)
    } else {
        (x_eigenvector(k, big_n)?, IrrepBasisKind::Plain)
    };
    #[derive(Serialize)]
    struct Eigvec {
        k: usize,
        #[serde(rename = "N")]
        big_n: usize,
        adjoint: bool,
        basis: IrrepBasisKind,
        eigenvalue: ExactScalar,
        coefficients: Vec<ExactScalar>,
    }
    Ok(to_json(&Eigvec {
        k,
        big_n,
        adjoint: p.adjoint,
        basis,
        eigenvalue: pair.value,
        coefficients: pair.vector,
    }))
}

#[derive(Serialize)]
struct Leaks {
    j0: Vec<Leak>,
    jp: Vec<Leak>,
    jm: Vec<Leak>,
}

#[derive(Serialize)]
struct ModelReport {
    model: ModelName,
    #[serde(rename = "N")]
    big_n: usize,
    adjoint: bool,
    basis: IrrepBasisKind,
    j0: Vec<Vec<String>>,
    jp: Vec<Vec<String>>,
    jm: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    truncations: Option<TruncationProfile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    leaks: Option<Leaks>,
}

fn model(name: ModelName, p: &Params) -> Outcome {
    json_only(p)?;
    let big_n = require(p.big_n, "N")?;
    let differential = |ops: ModelOperators| {
        let profile = ops.truncation_profile();
        let leaks = Leaks {
            j0: ops.j0.leaks.clone(),
            jp: ops.jp.leaks.clone(),
            jm: ops.jm.leaks.clone(),
        };
        (ops.to_rep(), Some(profile), Some(leaks))
    };
    let (rep, truncations, leaks): (RepMatrices, _, _) = match (name, p.adjoint) {
        (ModelName::Fd, false) => (fd_operators(big_n)?, None, None),
        (ModelName::Fd, true) => (fd_adjoint_operators(big_n)?, None, None),
        (ModelName::Bargmann, false) => differential(bargmann_operators(big_n)?),
        (ModelName::Bargmann, true) => differential(bargmann_adjoint_operators(big_n)?),
        (ModelName::Bg, false) => differential(bg_operators(big_n)?),
        (ModelName::Bg, true) => differential(bg_adjoint_operators(big_n)?),
    };
    Ok(to_json(&ModelReport {
        model: name,
        big_n,
        adjoint: p.adjoint,
        basis: rep.basis,
        j0: string_rows(&rep.j0),
        jp: string_rows(&rep.jp),
        jm: string_rows(&rep.jm),
        truncations,
        leaks,
    }))
}

fn pade(p: &Params) -> Outcome {
    json_only(p)?;
    let (n, m) = (require(p.n, "n")?, require(p.m, "m")?);
    let pair = pade_exp(n, m)?;
    let (index, value) = pade_order_first_defect(n, m)?;
    #[derive(Serialize)]
    struct Pade {
        n: usize,
        m: usize,
        numerator: Vec<ExactScalar>,
        denominator: Vec<ExactScalar>,
        contact_order: usize,
        first_defect: (usize, ExactScalar),
    }
    Ok(to_json(&Pade {
        n,
        m,
        numerator: pair.numerator.coeffs().to_vec(),
        denominator: pair.denominator.coeffs().to_vec(),
        contact_order: index - 1,
        first_defect: (index, value),
    }))
}

fn finish_reports(reports: &[VerifyReport], out: String) -> Outcome {
    if reports.iter().all(VerifyReport::passed) {
        Ok(out)
    } else {
        Err(Failure::IdentityFailed(out))
    }
}

fn verify_one(identity: &str, p: &Params) -> Outcome {
    json_only(p)?;
    let identity: Identity = identity.parse()?;
    let report = verify(identity, require(p.big_n, "N")?, VerifyOptions { a: p.a })?;
    let out = to_json(&report);
    finish_reports(std::slice::from_ref(&report), out)
}

fn nmax_from_env() -> Result<usize, Failure> {
    match std::env::var("KRW_NMAX") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("KRW_NMAX must be a positive integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_NMAX),
    }
}

fn verify_everything(p: &Params) -> Outcome {
    json_only(p)?;
    let nmax = match p.big_n {
        Some(n) => n,
        None => nmax_from_env()?,
    };
    let reports = verify_all(nmax)?;
    let out = to_json(&reports);
    finish_reports(&reports, out)
}

fn run(cli: Cli) -> Outcome {
    match &cli.command {
        Command::Eval(p) => eval(p),
        Command::Table(p) => table(p),
        Command::Eigvec(p) => eigvec(p),
        Command::Model { name, params } => model(*name, params),
        Command::Pade(p) => pade(p),
        Command::Verify { identity, params } => verify_one(identity, params),
        Command::VerifyAll(p) => verify_everything(p),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::IdentityFailed(out)) => {
            println!("{out}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
