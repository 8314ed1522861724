//! Command-line driver behind the `zmr` binary.
//!
//! Exit codes: 0 success, 1 verification found oracle-level anomalies (or a
//! closed-form integrality failure), 2 invalid input, 3 I/O failure.

use std::collections::HashSet;
use std::ffi::OsString;
use std::fs::{File, OpenOptions};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::harness::{
    self, SweepConfig, SweepRecord, SweepSummary, DEFAULT_BRUTE_CAP, DEFAULT_EXHAUSTIVE_CAP,
};
use crate::morphisms::{self, Mode, MorphismTriple};
use crate::reidemeister::{self, ReidemeisterReport, SpectrumResult};
use crate::zmgroup::{Element, ZmParams, DEFAULT_MAX_ORDER};
use crate::Nat;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ANOMALY: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Environment variable overriding the global group-order bound.
pub const SIZE_BOUND_ENV: &str = "ZM_MAX_ORDER";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum ModeArg {
    Paper,
    #[default]
    Strict,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Paper => Mode::Paper,
            ModeArg::Strict => Mode::Strict,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "zmr",
    version,
    about = "Reidemeister numbers and spectra of ZM-groups"
)]
struct Cli {
    /// Largest group order m*n accepted anywhere.
    #[arg(long, global = true, env = SIZE_BOUND_ENV, default_value_t = DEFAULT_MAX_ORDER)]
    size_bound: Nat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, clap::Args)]
struct GroupArgs {
    m: Nat,
    n: Nat,
    r: Nat,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form Reidemeister spectrum, one value per admissible y.
    Spectrum {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value_t)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Reidemeister number of one morphism triple, three ways.
    Reidemeister {
        #[command(flatten)]
        group: GroupArgs,
        x1: Nat,
        x2: Nat,
        y: Nat,
        /// Skip the brute-force oracles above this group order.
        #[arg(long, default_value_t = DEFAULT_BRUTE_CAP)]
        brute_cap: Nat,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Ordinary conjugacy classes.
    Classes {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Morphism triples and their counts in both modes.
    Autos {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value_t)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Sweep every admissible triple up to a group order and cross-check.
    Verify {
        #[arg(long)]
        max_order: Nat,
        #[arg(long, default_value_t = DEFAULT_BRUTE_CAP)]
        brute_cap: Nat,
        /// Below this order the oracles cover every (x1, x2).
        #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_CAP)]
        exhaustive_cap: Nat,
        /// Write JSON lines here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Append to --out, skipping (m, n, r) keys already present.
        #[arg(long, requires = "out")]
        resume: bool,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Validation(_) | Error::SizeBound { .. } | Error::Domain(_) => EXIT_INVALID,
            Error::Io(_) => EXIT_IO,
            Error::Overflow(_) | Error::Integrality { .. } | Error::Internal(_) => EXIT_ANOMALY,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(e: io::Error) -> Failure {
    Failure {
        code: EXIT_IO,
        message: format!("i/o error: {e}"),
    }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn params(g: &GroupArgs, bound: Nat) -> std::result::Result<ZmParams, Failure> {
    Ok(ZmParams::with_bound(g.m, g.n, g.r, bound)?)
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match &cli.command {
        Command::Spectrum {
            group,
            mode,
            format,
        } => {
            let p = params(group, cli.size_bound)?;
            let result = reidemeister::spectrum(&p, (*mode).into())?;
            emit_spectrum(&result, *format, out).map_err(io_failure)?;
            Ok(EXIT_OK)
        }
        Command::Reidemeister {
            group,
            x1,
            x2,
            y,
            brute_cap,
            format,
        } => {
            let p = params(group, cli.size_bound)?;
            let f = MorphismTriple::new(&p, *x1, *x2, *y)?;
            let rep = reidemeister::report(&p, &f, *brute_cap)?;
            emit_report(&rep, &p, *format, out).map_err(io_failure)?;
            Ok(EXIT_OK)
        }
        Command::Classes { group, format } => {
            let p = params(group, cli.size_bound)?;
            let classes = p.conjugacy_classes()?;
            emit_classes(&p, &classes, *format, out).map_err(io_failure)?;
            Ok(EXIT_OK)
        }
        Command::Autos {
            group,
            mode,
            format,
        } => {
            let p = params(group, cli.size_bound)?;
            emit_autos(&p, (*mode).into(), *format, out)?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            max_order,
            brute_cap,
            exhaustive_cap,
            out: path,
            resume,
        } => {
            let cfg = SweepConfig {
                max_order: *max_order,
                brute_cap: *brute_cap,
                exhaustive_cap: *exhaustive_cap,
                size_bound: cli.size_bound,
            };
            let summary = verify(&cfg, path.as_ref(), *resume, out)?;
            writeln!(
                err,
                "records={} skipped={} mode-divergence={} non-bijective={} oracle-mismatch={} (strict {}) integrality-failure={}",
                summary.written,
                summary.skipped,
                summary.mode_divergences,
                summary.non_bijective,
                summary.oracle_mismatches,
                summary.strict_oracle_mismatches,
                summary.integrality_failures,
            )
            .map_err(io_failure)?;
            Ok(if summary.clean() {
                EXIT_OK
            } else {
                EXIT_ANOMALY
            })
        }
    }
}

fn verify(
    cfg: &SweepConfig,
    path: Option<&PathBuf>,
    resume: bool,
    stdout: &mut dyn Write,
) -> std::result::Result<SweepSummary, Failure> {
    let Some(path) = path else {
        return Ok(harness::sweep_to_writer(cfg, &HashSet::new(), stdout)?);
    };
    let mut prior = SweepSummary::default();
    let mut skip = HashSet::new();
    if resume && path.exists() {
        let file = File::open(path).map_err(io_failure)?;
        let existing: Vec<SweepRecord> =
            harness::read_records(BufReader::new(file)).map_err(io_failure)?;
        for rec in &existing {
            prior.absorb(rec);
            skip.insert(rec.key());
        }
    }
    let file = if resume {
        OpenOptions::new().create(true).append(true).open(path)
    } else {
        File::create(path)
    }
    .map_err(io_failure)?;
    let mut writer = BufWriter::new(file);
    let mut summary = harness::sweep_to_writer(cfg, &skip, &mut writer)?;
    writer.flush().map_err(io_failure)?;
    summary.mode_divergences += prior.mode_divergences;
    summary.non_bijective += prior.non_bijective;
    summary.oracle_mismatches += prior.oracle_mismatches;
    summary.strict_oracle_mismatches += prior.strict_oracle_mismatches;
    summary.integrality_failures += prior.integrality_failures;
    Ok(summary)
}

fn json_line<T: Serialize>(value: &T, out: &mut dyn Write) -> io::Result<()> {
    let text = serde_json::to_string(value).map_err(io::Error::other)?;
    writeln!(out, "{text}")
}

fn set_string(values: &[Nat]) -> String {
    let items: Vec<String> = values.iter().map(Nat::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn header(p: &ZmParams) -> String {
    format!("{p}  order={}  d={}", p.order(), p.d())
}

fn emit_spectrum(s: &SpectrumResult, format: OutputFormat, out: &mut dyn Write) -> io::Result<()> {
    let p = &s.params;
    match format {
        OutputFormat::Plain => {
            writeln!(out, "{}  mode={}", header(p), s.mode)?;
            for (y, r) in &s.per_y {
                writeln!(out, "y={y}  R={r}")?;
            }
            writeln!(out, "spectrum: {}", set_string(&s.spectrum))
        }
        OutputFormat::Json => json_line(s, out),
        OutputFormat::Csv => {
            writeln!(out, "m,n,r,d,y,R")?;
            for (y, r) in &s.per_y {
                writeln!(out, "{},{},{},{},{y},{r}", p.m(), p.n(), p.r(), p.d())?;
            }
            Ok(())
        }
    }
}

fn opt(v: Option<Nat>) -> String {
    v.map_or_else(|| "skipped".to_string(), |x| x.to_string())
}

fn emit_report(
    rep: &ReidemeisterReport,
    p: &ZmParams,
    format: OutputFormat,
    out: &mut dyn Write,
) -> io::Result<()> {
    let f = rep.triple;
    match format {
        OutputFormat::Plain => {
            writeln!(out, "{}  triple={f}", header(p))?;
            if !f.is_strict(p) {
                writeln!(out, "note: gcd(y,n) != 1, the triple is not bijective")?;
            }
            writeln!(out, "r_formula={}", rep.r_formula)?;
            writeln!(out, "r_orbit={}", opt(rep.r_orbit))?;
            writeln!(out, "r_burnside={}", opt(rep.r_burnside))?;
            match rep.agree {
                Some(true) => writeln!(out, "agree"),
                Some(false) => writeln!(out, "DISAGREE"),
                None => writeln!(out, "oracles skipped (order {} above cap)", p.order()),
            }
        }
        OutputFormat::Json => json_line(rep, out),
        OutputFormat::Csv => {
            writeln!(out, "m,n,r,x1,x2,y,r_formula,r_orbit,r_burnside,agree")?;
            let cell = |v: Option<Nat>| v.map(|x| x.to_string()).unwrap_or_default();
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                p.m(),
                p.n(),
                p.r(),
                f.x1,
                f.x2,
                f.y,
                rep.r_formula,
                cell(rep.r_orbit),
                cell(rep.r_burnside),
                rep.agree.map(|a| a.to_string()).unwrap_or_default(),
            )
        }
    }
}

#[derive(Serialize)]
struct ClassesOutput<'a> {
    params: &'a ZmParams,
    count: usize,
    classes: &'a [Vec<Element>],
}

fn emit_classes(
    p: &ZmParams,
    classes: &[Vec<Element>],
    format: OutputFormat,
    out: &mut dyn Write,
) -> io::Result<()> {
    match format {
        OutputFormat::Plain => {
            writeln!(out, "{}  classes={}", header(p), classes.len())?;
            for class in classes {
                let items: Vec<String> = class.iter().map(Element::to_string).collect();
                writeln!(out, "[{}] {{{}}}", class.len(), items.join(", "))?;
            }
            Ok(())
        }
        OutputFormat::Json => json_line(
            &ClassesOutput {
                params: p,
                count: classes.len(),
                classes,
            },
            out,
        ),
        OutputFormat::Csv => {
            writeln!(out, "class,u,v")?;
            for (i, class) in classes.iter().enumerate() {
                for g in class {
                    writeln!(out, "{i},{},{}", g.u, g.v)?;
                }
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct AutosOutput<'a> {
    params: &'a ZmParams,
    mode: Mode,
    count_paper: Nat,
    count_strict: Nat,
    count_formula: Nat,
    triples: &'a [MorphismTriple],
}

fn emit_autos(
    p: &ZmParams,
    mode: Mode,
    format: OutputFormat,
    out: &mut dyn Write,
) -> std::result::Result<(), Failure> {
    let triples = morphisms::enumerate(p, mode);
    let count_paper = morphisms::count(p, Mode::Paper)?;
    let count_strict = morphisms::count(p, Mode::Strict)?;
    let count_formula = morphisms::paper_count_formula(p)?;
    let res = match format {
        OutputFormat::Plain => (|| {
            writeln!(out, "{}  mode={mode}", header(p))?;
            writeln!(
                out,
                "paper={count_paper}  strict={count_strict}  m*phi(m)*n/d={count_formula}"
            )?;
            for f in &triples {
                writeln!(out, "{f}")?;
            }
            Ok(())
        })(),
        OutputFormat::Json => json_line(
            &AutosOutput {
                params: p,
                mode,
                count_paper,
                count_strict,
                count_formula,
                triples: &triples,
            },
            out,
        ),
        OutputFormat::Csv => (|| {
            writeln!(out, "x1,x2,y,strict")?;
            for f in &triples {
                writeln!(out, "{},{},{},{}", f.x1, f.x2, f.y, f.is_strict(p))?;
            }
            Ok(())
        })(),
    };
    res.map_err(io_failure)
}
