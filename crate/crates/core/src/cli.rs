//! Command-line front end. The binary is a thin wrapper around [`run`].

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cliquegeom::{t_range, TRange};
use crate::graphlab::SmallGraph;
use crate::replay::{self, Fault, Verdict};
use crate::srgcore::{FeasibilityReport, Spectrum, SrgParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_REACHED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "srgcheck",
    version,
    about = "Exact feasibility checks for strongly regular graph parameters"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Include rule provenance notes.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    /// Line-delimited JSON records.
    #[value(alias = "record-stream")]
    Records,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Spectrum, Delsarte bound, clique cap and quadrangle rule for one parameter set.
    Analyze {
        n: i64,
        k: i64,
        lambda: i64,
        mu: i64,
    },
    /// Analyze every row of a CSV file with columns n,k,lambda,mu.
    Scan { path: PathBuf },
    /// Neighbour-count ranges t_min/t_max for cliques of order c_min..=c_max at smallest eigenvalue -3.
    Trange { c_min: i64, c_max: i64 },
    /// Replay the nonexistence argument for (1911,270,105,27).
    Replay {
        /// Override a recorded value, as STEP:LABEL=VALUE (negative control).
        #[arg(long, hide = true)]
        inject_fault: Vec<String>,
    },
    /// Exact spectrum and SRG check of a graph in edge-list format.
    Oracle { path: PathBuf },
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok((text, code)) => match emit(cli.output.as_deref(), &text) {
            Ok(()) => code,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_USAGE
            }
        },
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    }
}

fn emit(path: Option<&Path>, text: &str) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn execute(cli: &Cli) -> Result<(String, i32), String> {
    let verbose = cli.verbose > 0;
    match &cli.command {
        Command::Analyze { n, k, lambda, mu } => {
            let p = SrgParams::new(*n, *k, *lambda, *mu).map_err(|e| e.to_string())?;
            let report = replay::rule_out_pipeline(&p);
            let out = match cli.format {
                OutputFormat::Text => render_report(&report, verbose),
                OutputFormat::Records => json_line(&AnalysisRecord::from_report(&report, verbose)),
            };
            Ok((out, EXIT_OK))
        }
        Command::Scan { path } => cmd_scan(path, cli.format, verbose).map(|s| (s, EXIT_OK)),
        Command::Trange { c_min, c_max } => {
            cmd_trange(*c_min, *c_max, cli.format).map(|s| (s, EXIT_OK))
        }
        Command::Replay { inject_fault } => {
            let faults = inject_fault
                .iter()
                .map(|f| f.parse::<Fault>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| e.to_string())?;
            let t = replay::replay_1911_with(&crate::srgcore::flagship(), &faults)
                .map_err(|e| e.to_string())?;
            let out = match cli.format {
                OutputFormat::Text => t.render_text(),
                OutputFormat::Records => t.render_records(),
            };
            let code = if t.verdict == Verdict::Contradiction {
                EXIT_OK
            } else {
                EXIT_NOT_REACHED
            };
            Ok((out, code))
        }
        Command::Oracle { path } => cmd_oracle(path, cli.format).map(|s| (s, EXIT_OK)),
    }
}

fn json_line<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("records serialize") + "\n"
}

/// Record-stream form of a [`FeasibilityReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "record", rename = "analysis")]
pub struct AnalysisRecord {
    pub params: String,
    pub spectrum: Option<Spectrum>,
    pub spectrum_error: Option<String>,
    pub smallest_eigenvalue: Option<i64>,
    pub delsarte_bound: Option<i64>,
    pub quadrangle_forced: bool,
    pub coclique_max: i64,
    pub clique_cap: Option<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl AnalysisRecord {
    pub fn from_report(r: &FeasibilityReport, with_notes: bool) -> Self {
        Self {
            params: r.params.to_string(),
            spectrum: r.spectrum.as_ref().ok().copied(),
            spectrum_error: r.spectrum.as_ref().err().map(|e| e.to_string()),
            smallest_eigenvalue: r.spectrum.as_ref().ok().map(|s| s.s),
            delsarte_bound: r.delsarte_bound,
            quadrangle_forced: r.terwilliger_forces_quadrangle,
            coclique_max: r.coclique_max,
            clique_cap: r.clique_cap,
            notes: if with_notes {
                r.notes.clone()
            } else {
                Vec::new()
            },
        }
    }
}

pub fn render_report(r: &FeasibilityReport, verbose: bool) -> String {
    let p = &r.params;
    let mut out = format!("parameters {p}\n");
    match &r.spectrum {
        Ok(s) => {
            out.push_str(&format!("spectrum {s}\n"));
            out.push_str(&format!("smallest eigenvalue {}\n", s.s));
        }
        Err(e) => out.push_str(&format!("spectrum rejected: {e}\n")),
    }
    if let Some(d) = r.delsarte_bound {
        out.push_str(&format!("Delsarte {d}\n"));
    }
    if let Some(c) = r.clique_cap {
        out.push_str(&format!("clique cap {c}\n"));
    }
    let quad = if r.terwilliger_forces_quadrangle {
        "forced"
    } else {
        "not forced"
    };
    out.push_str(&format!(
        "quadrangle {quad} (k = {}, 50(mu-1) = {})\n",
        p.k(),
        50 * (p.mu() - 1)
    ));
    out.push_str(&format!("coclique cap {}\n", r.coclique_max));
    if verbose || r.spectrum.is_err() {
        for n in &r.notes {
            out.push_str(&format!("note: {n}\n"));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "snake_case")]
pub enum ScanRecord {
    Row {
        row: usize,
        analysis: AnalysisRecord,
    },
    RowError {
        row: usize,
        error: String,
    },
    ScanSummary {
        rows: usize,
        spectrum_ok: usize,
        rejected: usize,
        row_errors: usize,
    },
}

fn parse_row(fields: &csv::StringRecord) -> Result<SrgParams, String> {
    if fields.len() != 4 {
        return Err(format!(
            "expected 4 fields n,k,lambda,mu, got {}",
            fields.len()
        ));
    }
    let mut v = [0i64; 4];
    for (slot, f) in v.iter_mut().zip(fields.iter()) {
        *slot = f
            .parse()
            .map_err(|_| format!("not a decimal integer: {f:?}"))?;
    }
    SrgParams::new(v[0], v[1], v[2], v[3]).map_err(|e| e.to_string())
}

fn is_header(fields: &csv::StringRecord) -> bool {
    fields.get(0).is_some_and(|f| f.eq_ignore_ascii_case("n"))
}

pub fn cmd_scan(path: &Path, format: OutputFormat, verbose: bool) -> Result<String, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        match rec {
            Ok(r) if i == 0 && is_header(&r) => {}
            Ok(r) if r.iter().all(|f| f.is_empty()) => {}
            other => rows.push(other.map_err(|e| e.to_string())),
        }
    }
    let records: Vec<ScanRecord> = rows
        .par_iter()
        .enumerate()
        .map(|(i, row)| {
            let row_no = i + 1;
            match row.as_ref().map_err(Clone::clone).and_then(parse_row) {
                Ok(p) => ScanRecord::Row {
                    row: row_no,
                    analysis: AnalysisRecord::from_report(&replay::rule_out_pipeline(&p), verbose),
                },
                Err(error) => ScanRecord::RowError { row: row_no, error },
            }
        })
        .collect();
    let ok = records
        .iter()
        .filter(|r| matches!(r, ScanRecord::Row { analysis, .. } if analysis.spectrum.is_some()))
        .count();
    let errors = records
        .iter()
        .filter(|r| matches!(r, ScanRecord::RowError { .. }))
        .count();
    let summary = ScanRecord::ScanSummary {
        rows: records.len(),
        spectrum_ok: ok,
        rejected: records.len() - ok - errors,
        row_errors: errors,
    };
    let mut out = String::new();
    for r in records.iter().chain(std::iter::once(&summary)) {
        match format {
            OutputFormat::Records => out.push_str(&json_line(r)),
            OutputFormat::Text => out.push_str(&render_scan_line(r)),
        }
    }
    Ok(out)
}

fn render_scan_line(r: &ScanRecord) -> String {
    match r {
        ScanRecord::Row { row, analysis: a } => {
            let mut line = format!("row {row} {}: ", a.params);
            match (&a.spectrum, &a.spectrum_error) {
                (Some(s), _) => {
                    line.push_str(&format!("spectrum {s}"));
                    if let Some(d) = a.delsarte_bound {
                        line.push_str(&format!("; Delsarte {d}"));
                    }
                    if let Some(c) = a.clique_cap {
                        line.push_str(&format!("; clique cap {c}"));
                    }
                    if a.quadrangle_forced {
                        line.push_str("; quadrangle forced");
                    }
                }
                (None, e) => line.push_str(&format!(
                    "rejected: {}",
                    e.as_deref().unwrap_or("no spectrum")
                )),
            }
            line.push('\n');
            for n in &a.notes {
                line.push_str(&format!("  note: {n}\n"));
            }
            line
        }
        ScanRecord::RowError { row, error } => format!("row {row}: error: {error}\n"),
        ScanRecord::ScanSummary {
            rows,
            spectrum_ok,
            rejected,
            row_errors,
        } => {
            format!("{rows} rows: {spectrum_ok} spectrum-ok, {rejected} rejected, {row_errors} row errors\n")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "record", rename = "trange")]
pub struct TRangeRecord {
    pub c: i64,
    pub t_min: Option<i64>,
    pub t_max: Option<i64>,
    pub unrestricted: bool,
}

pub fn cmd_trange(c_min: i64, c_max: i64, format: OutputFormat) -> Result<String, String> {
    if c_min < 2 || c_min > c_max {
        return Err(format!(
            "bad range {c_min}..={c_max}: need 2 <= c_min <= c_max"
        ));
    }
    let mut out = match format {
        OutputFormat::Text => "c\tt_min\tt_max\n".to_string(),
        OutputFormat::Records => String::new(),
    };
    for c in c_min..=c_max {
        let r = t_range(c, -3).map_err(|e| e.to_string())?;
        match format {
            OutputFormat::Text => out.push_str(&format!("{r}\n")),
            OutputFormat::Records => {
                let bounds = r.bounds();
                out.push_str(&json_line(&TRangeRecord {
                    c,
                    t_min: bounds.map(|b| b.0),
                    t_max: bounds.map(|b| b.1),
                    unrestricted: matches!(r, TRange::Unrestricted { .. }),
                }));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub value: String,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "record", rename = "oracle")]
pub struct OracleRecord {
    pub order: usize,
    pub edges: usize,
    pub regular_degree: Option<usize>,
    pub characteristic_polynomial: String,
    pub spectrum: Vec<Eigenvalue>,
    pub lambda_min: String,
    pub srg: Option<String>,
}

pub fn cmd_oracle(path: &Path, format: OutputFormat) -> Result<String, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let g: SmallGraph = text
        .parse()
        .map_err(|e| format!("{}: {e}", path.display()))?;
    let spectrum = g.spectrum();
    let rec = OracleRecord {
        order: g.order(),
        edges: g.edge_count(),
        regular_degree: g.regular_degree(),
        characteristic_polynomial: g.char_poly().to_string(),
        spectrum: spectrum
            .iter()
            .map(|(r, m)| Eigenvalue {
                value: r.to_string(),
                multiplicity: *m,
            })
            .collect(),
        lambda_min: spectrum[0].0.to_string(),
        srg: g.srg_params().map(|p| p.to_string()),
    };
    Ok(match format {
        OutputFormat::Records => json_line(&rec),
        OutputFormat::Text => {
            let mut out = format!("order {}\nedges {}\n", rec.order, rec.edges);
            match rec.regular_degree {
                Some(d) => out.push_str(&format!("regular of degree {d}\n")),
                None => out.push_str("not regular\n"),
            }
            out.push_str(&format!(
                "characteristic polynomial {}\n",
                rec.characteristic_polynomial
            ));
            for e in &rec.spectrum {
                out.push_str(&format!(
                    "eigenvalue {} multiplicity {}\n",
                    e.value, e.multiplicity
                ));
            }
            out.push_str(&format!("smallest eigenvalue {}\n", rec.lambda_min));
            match &rec.srg {
                Some(p) => out.push_str(&format!("strongly regular {p}\n")),
                None => out.push_str("not strongly regular\n"),
            }
            out
        }
    })
}
