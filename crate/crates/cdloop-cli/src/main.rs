//! `cdloop`: build signed Cayley-Dickson basis loops and report their
//! subloop structure, isomorphy classes, identities, zero divisors, and
//! lattice.
//!
//! Exit codes: 0 all checks pass, 1 a computed value disagrees with the
//! reference table, 2 usage or I/O error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cdloop::report::{default_expectations, run_report, Expectations, MAX_REPORT_LEVEL};
use cdloop::{
    build_cd_loop, classify, enumerate_subloops, find_zero_divisor, identity_report,
    maximal_subloops, subloop_records, IsoClass, LoopTable, SubloopLattice, ZeroDivisorRecord,
};

/// Largest level the CLI builds; larger tables are unvalidated.
const MAX_BUILD_LEVEL: u32 = 7;
/// Largest level for the set-based analyses (element masks hold 128 bits).
const MAX_ANALYSIS_LEVEL: u32 = 6;

#[derive(Parser)]
#[command(
    name = "cdloop",
    version,
    about = "Cayley-Dickson basis loops: tables, subloops, classes, identities, zero divisors, lattices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the loop and export its Cayley table
    Build(CommonOpts),
    /// Full structure analysis checked against reference values
    Report(ReportOpts),
    /// Enumerate all subloops with normality flags
    Subloops(CommonOpts),
    /// Partition the non-trivial proper subloops into isomorphy classes
    Classify(CommonOpts),
    /// Exhaustive loop-identity battery on the full loop
    Identities(CommonOpts),
    /// Zero-divisor search over the maximal subalgebra supports
    Zerodiv(CommonOpts),
    /// Subloop lattice: DOT/JSON exports and modularity
    Lattice(LatticeOpts),
}

#[derive(Args)]
struct CommonOpts {
    /// Doubling level n; the loop has order 2^(n+1)
    #[arg(long = "dim-log", value_name = "N", default_value_t = 5)]
    dim_log: u32,
    /// Output format (each command has a default)
    #[arg(long, value_enum, value_name = "FMT")]
    format: Option<Format>,
    /// Write the output to a file instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReportOpts {
    #[command(flatten)]
    common: CommonOpts,
    /// Alternative reference-value table (JSON keyed by dim-log)
    #[arg(long, value_name = "PATH")]
    expected: Option<PathBuf>,
}

#[derive(Args)]
struct LatticeOpts {
    #[command(flatten)]
    common: CommonOpts,
    /// One node per isomorphy class instead of one per subloop
    #[arg(long = "by-class")]
    by_class: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Dot => "dot",
            Format::Text => "text",
        }
    }
}

/// Message plus exit code 1 (mismatch) or 2 (usage).
struct Failure {
    message: String,
    code: u8,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        message: message.into(),
        code: 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.exit_code() == 0 { 0 } else { 2 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Build(opts) => cmd_build(opts),
        Command::Report(opts) => cmd_report(opts),
        Command::Subloops(opts) => cmd_subloops(opts),
        Command::Classify(opts) => cmd_classify(opts),
        Command::Identities(opts) => cmd_identities(opts),
        Command::Zerodiv(opts) => cmd_zerodiv(opts),
        Command::Lattice(opts) => cmd_lattice(opts),
    }
}

fn check_level(dim_log: u32, max: u32, what: &str) -> Result<(), Failure> {
    if dim_log > max {
        return Err(usage(format!(
            "--dim-log {dim_log} exceeds the {what} bound of {max}"
        )));
    }
    Ok(())
}

fn pick_format(opts: &CommonOpts, default: Format, allowed: &[Format]) -> Result<Format, Failure> {
    let format = opts.format.unwrap_or(default);
    if allowed.contains(&format) {
        Ok(format)
    } else {
        Err(usage(format!(
            "format '{}' is not available here (expected one of: {})",
            format.name(),
            allowed
                .iter()
                .map(|f| f.name())
                .collect::<Vec<_>>()
                .join(", ")
        )))
    }
}

/// Writes `output` to `--out` or stdout. Returns true when stdout was used.
fn emit(output: &str, out: &Option<PathBuf>) -> Result<bool, Failure> {
    match out {
        Some(path) => {
            std::fs::write(path, output)
                .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
            Ok(false)
        }
        None => {
            print!("{output}");
            Ok(true)
        }
    }
}

fn build_loop(dim_log: u32) -> Result<LoopTable, Failure> {
    build_cd_loop(dim_log).map_err(|e| usage(e.to_string()))
}

fn cmd_build(opts: CommonOpts) -> Result<(), Failure> {
    check_level(opts.dim_log, MAX_BUILD_LEVEL, "build")?;
    let format = pick_format(&opts, Format::Json, &[Format::Json, Format::Text])?;
    let l = build_loop(opts.dim_log)?;
    let summary = format!(
        "order {}, {} basis elements\n",
        l.order(),
        l.half_order()
    );
    match format {
        Format::Json => {
            let mut json = l.to_json();
            json.push('\n');
            let to_stdout = emit(&json, &opts.out)?;
            if to_stdout {
                eprint!("{summary}");
            } else {
                print!("{summary}");
            }
        }
        _ => {
            emit(&summary, &opts.out)?;
        }
    }
    Ok(())
}

fn cmd_report(opts: ReportOpts) -> Result<(), Failure> {
    check_level(opts.common.dim_log, MAX_REPORT_LEVEL, "report")?;
    let format = pick_format(&opts.common, Format::Text, &[Format::Text, Format::Json])?;
    let table;
    let expectations: &Expectations = match &opts.expected {
        Some(path) => {
            let json = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            table = Expectations::from_json(&json)
                .map_err(|e| usage(format!("bad reference table {}: {e}", path.display())))?;
            &table
        }
        None => default_expectations(),
    };
    let report = run_report(opts.common.dim_log, expectations).map_err(|e| usage(e.to_string()))?;
    let output = match format {
        Format::Json => {
            let mut s = report.to_json();
            s.push('\n');
            s
        }
        _ => report.to_text(),
    };
    emit(&output, &opts.common.out)?;
    if report.all_pass() {
        Ok(())
    } else {
        Err(Failure {
            message: "structure report disagrees with the reference values".into(),
            code: 1,
        })
    }
}

fn cmd_subloops(opts: CommonOpts) -> Result<(), Failure> {
    check_level(opts.dim_log, MAX_ANALYSIS_LEVEL, "analysis")?;
    let format = pick_format(&opts, Format::Json, &[Format::Json, Format::Csv, Format::Text])?;
    let l = build_loop(opts.dim_log)?;
    let records = subloop_records(&l, &enumerate_subloops(&l));
    let output = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&records).expect("records serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::new();
            for r in &records {
                let _ = writeln!(s, "{},{},{}", r.order, join(&r.support), r.normal);
            }
            s
        }
        _ => {
            let mut s = format!("{} subloops\n", records.len());
            for r in &records {
                let _ = writeln!(
                    s,
                    "order {:>3}  normal {:5}  support {}",
                    r.order,
                    r.normal,
                    join(&r.support)
                );
            }
            s
        }
    };
    emit(&output, &opts.out)?;
    Ok(())
}

fn proper_subloops(l: &LoopTable) -> Vec<cdloop::Subloop> {
    enumerate_subloops(l)
        .into_iter()
        .filter(|s| !s.is_trivial() && s.order() < l.order())
        .collect()
}

fn class_rows(classes: &[IsoClass]) -> (String, String) {
    let mut member_rows: Vec<(usize, u128, String, String)> = Vec::new();
    for c in classes {
        for m in &c.members {
            member_rows.push((
                m.order(),
                m.support_mask(),
                join(&m.support_indices()),
                c.label.to_string(),
            ));
        }
    }
    member_rows.sort_by(|a, b| (b.0, a.1).cmp(&(a.0, b.1)));
    let mut members = String::new();
    for (order, _, support, label) in &member_rows {
        let _ = writeln!(members, "{order},{support},{label}");
    }
    let mut summary = String::new();
    for c in classes {
        let _ = writeln!(
            summary,
            "{},{},{}",
            c.label,
            c.size(),
            join(&c.representative.support_indices())
        );
    }
    (members, summary)
}

fn cmd_classify(opts: CommonOpts) -> Result<(), Failure> {
    check_level(opts.dim_log, MAX_ANALYSIS_LEVEL, "analysis")?;
    let format = pick_format(&opts, Format::Csv, &[Format::Json, Format::Csv, Format::Text])?;
    let l = build_loop(opts.dim_log)?;
    let classes = classify(&l, &proper_subloops(&l));
    let output = match format {
        Format::Csv => {
            let (members, summary) = class_rows(&classes);
            format!("{members}{summary}")
        }
        Format::Json => {
            let value = serde_json::json!({
                "classes": classes
                    .iter()
                    .map(|c| {
                        serde_json::json!({
                            "label": c.label.to_string(),
                            "order": c.order(),
                            "size": c.size(),
                            "representative_support": c.representative.support_indices(),
                            "member_supports": c
                                .members
                                .iter()
                                .map(|m| m.support_indices())
                                .collect::<Vec<_>>(),
                        })
                    })
                    .collect::<Vec<_>>(),
            });
            let mut s = serde_json::to_string_pretty(&value).expect("classes serialize");
            s.push('\n');
            s
        }
        _ => {
            let mut s = String::new();
            for c in &classes {
                let _ = writeln!(
                    s,
                    "{:<6} order {:>3}  x{:<4} representative {}",
                    c.label.to_string(),
                    c.order(),
                    c.size(),
                    join(&c.representative.support_indices())
                );
            }
            s
        }
    };
    emit(&output, &opts.out)?;
    Ok(())
}

fn cmd_identities(opts: CommonOpts) -> Result<(), Failure> {
    check_level(opts.dim_log, MAX_ANALYSIS_LEVEL, "analysis")?;
    let format = pick_format(&opts, Format::Json, &[Format::Json, Format::Text])?;
    let l = build_loop(opts.dim_log)?;
    let report = identity_report(&l);
    let output = match format {
        Format::Json => {
            let mut s = report.to_json();
            s.push('\n');
            s
        }
        _ => {
            let mut s = String::new();
            for e in &report.entries {
                match &e.witness {
                    Some(w) => {
                        let _ = writeln!(s, "{:<9} fails  witness {:?}", e.name, w);
                    }
                    None => {
                        let _ = writeln!(s, "{:<9} holds", e.name);
                    }
                }
            }
            s
        }
    };
    emit(&output, &opts.out)?;
    Ok(())
}

fn cmd_zerodiv(opts: CommonOpts) -> Result<(), Failure> {
    check_level(opts.dim_log, MAX_ANALYSIS_LEVEL, "analysis")?;
    let format = pick_format(&opts, Format::Json, &[Format::Json, Format::Text])?;
    let l = build_loop(opts.dim_log)?;
    let all = enumerate_subloops(&l);
    let full = all.last().expect("enumeration includes the full loop");
    let records: Vec<ZeroDivisorRecord> = maximal_subloops(full, &all)
        .into_iter()
        .map(|s| {
            let pair = find_zero_divisor(&l, s.support_mask());
            ZeroDivisorRecord {
                support: s.support_indices(),
                u: pair.as_ref().map(|p| p.u.coeffs().to_vec()),
                v: pair.as_ref().map(|p| p.v.coeffs().to_vec()),
            }
        })
        .collect();
    let output = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&records).expect("records serialize");
            s.push('\n');
            s
        }
        _ => {
            let mut s = String::new();
            for r in &records {
                match (&r.u, &r.v) {
                    (Some(u), Some(v)) => {
                        let _ = writeln!(
                            s,
                            "support {:<24} u = {}, v = {}",
                            join(&r.support),
                            cdloop::AlgebraElement::from_coeffs(u.clone()),
                            cdloop::AlgebraElement::from_coeffs(v.clone())
                        );
                    }
                    _ => {
                        let _ = writeln!(s, "support {:<24} no zero divisors", join(&r.support));
                    }
                }
            }
            s
        }
    };
    emit(&output, &opts.out)?;
    Ok(())
}

fn cmd_lattice(opts: LatticeOpts) -> Result<(), Failure> {
    check_level(opts.common.dim_log, MAX_ANALYSIS_LEVEL, "analysis")?;
    let format = pick_format(
        &opts.common,
        Format::Dot,
        &[Format::Dot, Format::Json, Format::Text],
    )?;
    let l = build_loop(opts.common.dim_log)?;
    let all = enumerate_subloops(&l);
    let lattice = SubloopLattice::build(&l, &all).map_err(|e| usage(e.to_string()))?;
    let output = match format {
        Format::Dot => {
            if opts.by_class {
                let classes = classify(&l, &proper_subloops(&l));
                lattice
                    .to_dot_by_class(&classes)
                    .map_err(|e| usage(e.to_string()))?
            } else {
                lattice.to_dot()
            }
        }
        Format::Json => {
            let mut s = lattice.to_json();
            s.push('\n');
            s
        }
        _ => {
            let modular = match lattice.is_modular() {
                Ok(()) => "modular".to_string(),
                Err(w) => format!("not modular (witness {:?})", w),
            };
            format!(
                "{} nodes, {} cover edges, height {}, {}\n",
                lattice.nodes().len(),
                lattice.covers().len(),
                lattice.height(),
                modular
            )
        }
    };
    emit(&output, &opts.common.out)?;
    Ok(())
}

fn join(indices: &[usize]) -> String {
    indices
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
