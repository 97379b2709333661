// SPDX-License-Identifier: MIT OR Apache-2.0

//! `kfano <command> <file> [flags]`.
//!
//! Exit codes: 0 on success, 1 when the input fails validation or a
//! computation reports an error, 2 when the file (or an argument) cannot be
//! parsed.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use kfano_core::arith::{fmt_vec, Covector, Rat};
use kfano_core::invariants::Analysis;
use kfano_core::testconfig::{
    anticanonical_sk, oracle_h0, oracle_wk, validate_tc, TestConfig, DEFAULT_MAX_LATTICE,
};
use kfano_core::variety::{validate, CurvePointId, HVector, VarietyData};

use crate::input::{parse_rat_list, read_variety, ParseError};
use crate::report::{decimal, to_json_string, to_markdown, ReportData};

pub const MAX_LATTICE_VAR: &str = "KFANO_MAX_LATTICE";

#[derive(Debug, Parser)]
#[command(name = "kfano", version, about = "K-stability combinatorics of complexity-one Fano G-varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OracleKind {
    H0,
    Wk,
    Sk,
}

#[derive(Debug, clap::Args)]
struct VectorArgs {
    /// Point class of v0 (a marked point name or "generic").
    #[arg(long, default_value = "generic")]
    point: String,
    /// Central part of v0, comma separated (e.g. "0,-1" or "1/2,0").
    #[arg(long, allow_hyphen_values = true)]
    ell: Option<String>,
    /// Jump h of v0.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    h: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the input and list every violated invariant.
    Validate { file: PathBuf },
    /// Full report: Delta_Z, A_x, volume, barycenters, verdict.
    Report {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Futaki invariant of the test configuration attached to v0.
    Futaki {
        file: PathBuf,
        #[command(flatten)]
        v0: VectorArgs,
    },
    /// Non-Archimedean J-functional of v0.
    Jna {
        file: PathBuf,
        #[command(flatten)]
        v0: VectorArgs,
        /// Also minimize over twists by the central lineality.
        #[arg(long)]
        twist_min: bool,
    },
    /// Brute-force lattice sums: h0, w_k or the anticanonical S_k.
    Oracle {
        file: PathBuf,
        #[arg(value_enum)]
        kind: OracleKind,
        #[arg(long)]
        k: u64,
        #[command(flatten)]
        v0: VectorArgs,
        /// Offset m0 for w_k; defaults to the least admissible value.
        #[arg(long, allow_hyphen_values = true)]
        m0: Option<i64>,
    },
}

enum Failure {
    Parse(String),
    Diagnostics(Vec<String>),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e.to_string())
    }
}

impl From<kfano_core::Error> for Failure {
    fn from(e: kfano_core::Error) -> Self {
        Failure::Diagnostics(vec![e.to_string()])
    }
}

fn load(file: &Path) -> Result<VarietyData, Failure> {
    let data = read_variety(file)?;
    let diags = validate(&data);
    if !diags.is_empty() {
        return Err(Failure::Diagnostics(diags.iter().map(|d| d.to_string()).collect()));
    }
    Ok(data)
}

fn analyse(file: &Path) -> Result<Analysis, Failure> {
    let data = load(file)?;
    Ok(Analysis::new(&data)?)
}

fn vector(args: &VectorArgs, rank: usize) -> Result<HVector, Failure> {
    let ell = match &args.ell {
        Some(s) => parse_rat_list(s)?,
        None => vec![Rat::from_integer(0.into()); rank],
    };
    if ell.len() != rank {
        return Err(Failure::Parse(format!("--ell needs {rank} entries, found {}", ell.len())));
    }
    let h = kfano_core::arith::parse_rat(&args.h).ok_or_else(|| Failure::Parse(format!("--h: not a rational: {:?}", args.h)))?;
    Ok(HVector::new(CurvePointId::parse(&args.point), Covector(ell), h))
}

/// Reads the lattice enumeration bound from the environment.
pub fn max_lattice() -> Result<u128, String> {
    match std::env::var(MAX_LATTICE_VAR) {
        Ok(s) => s.trim().parse::<u128>().map_err(|_| format!("{MAX_LATTICE_VAR}: not a nonnegative integer: {s:?}")),
        Err(_) => Ok(DEFAULT_MAX_LATTICE),
    }
}

fn exact_with_decimal(q: &Rat) -> String {
    format!("{q} (~{})", decimal(q))
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<(), Failure> {
    let w = |out: &mut dyn Write, s: String| {
        let _ = out.write_all(s.as_bytes());
    };
    match cmd {
        Command::Validate { file } => {
            load(&file)?;
            w(out, "ok\n".into());
        }
        Command::Report { file, format } => {
            let rd = ReportData::new(analyse(&file)?)?;
            let s = match format {
                Format::Json => to_json_string(&rd),
                Format::Markdown => to_markdown(&rd),
            };
            w(out, s);
        }
        Command::Futaki { file, v0 } => {
            let an = analyse(&file)?;
            let v = vector(&v0, an.rank())?;
            let f = an.futaki(&v)?;
            w(out, format!("{}\n", exact_with_decimal(&f.value)));
        }
        Command::Jna { file, v0, twist_min } => {
            let an = analyse(&file)?;
            let v = vector(&v0, an.rank())?;
            let j = an.jna(&v)?;
            w(out, format!("jna {}\n", exact_with_decimal(&j)));
            if twist_min {
                let (m, ell) = an.min_twisted_jna(&v)?;
                w(out, format!("twisted_min {} at ell' = {}\n", exact_with_decimal(&m), fmt_vec(&ell)));
            }
        }
        Command::Oracle { file, kind, k, v0, m0 } => {
            let bound = max_lattice().map_err(Failure::Parse)?;
            let an = analyse(&file)?;
            let kb = k.into();
            match kind {
                OracleKind::H0 => w(out, format!("{}\n", oracle_h0(&an, &kb, bound)?)),
                OracleKind::Sk => w(out, format!("{}\n", anticanonical_sk(&an, &kb, bound)?)),
                OracleKind::Wk => {
                    let v = vector(&v0, an.rank())?;
                    let probe = validate_tc(&an, &TestConfig::new(v.clone(), 0))?;
                    let m0 = m0.map(Into::into).unwrap_or(probe.minimal_m0);
                    let tc = TestConfig::new(v, m0);
                    let val = validate_tc(&an, &tc)?;
                    if !val.ok {
                        return Err(Failure::Diagnostics(vec![format!(
                            "m0 = {} is not admissible: min tau0 = {} (least admissible m0 is {})",
                            tc.m0, val.min_tau0, val.minimal_m0
                        )]));
                    }
                    w(out, format!("{}\n", oracle_wk(&an, &tc, &kb, bound)?));
                }
            }
        }
    }
    Ok(())
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            if code == 0 {
                let _ = write!(out, "{e}");
            } else {
                let _ = write!(err, "{e}");
            }
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Parse(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::Diagnostics(ds)) => {
            for d in ds {
                let _ = writeln!(err, "{d}");
            }
            1
        }
    }
}
