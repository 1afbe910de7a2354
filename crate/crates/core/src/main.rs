//! `threshold-spectra` — spectra, quotients, bounds, classification, and
//! exhaustive catalog sweeps for connected threshold graphs given by binary
//! creation strings.
//!
//! Exit codes: 0 success; 1 usage error; 2 validation error (a string or
//! order that breaks the input rules); 3 anomaly found by `verify` or
//! `cospectral`. Data goes to stdout, diagnostics to stderr.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use std::process::ExitCode;
use threshold_spectra::analysis::classify;
use threshold_spectra::catalog::{cospectral_search, enumerate_strings, verify_theorems};
use threshold_spectra::exact::full_char_poly;
use threshold_spectra::output::{
    analyze_report, quotient_document, render_analyze, render_char_poly, render_classify,
    render_enumerate, render_quotient, render_search_reports, render_spectrum,
    render_verify_report, ClassifySummary, OutputFormat, RenderOptions,
};
use threshold_spectra::quotient::build_quotient;
use threshold_spectra::spectral::full_spectrum;
use threshold_spectra::threshold::{block_form, build_graph, parse_string, to_dot, ThresholdString};

#[derive(Parser)]
#[command(
    name = "threshold-spectra",
    version,
    about = "Spectral toolkit for connected threshold graphs given by creation strings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format (also via THRESHOLD_SPECTRA_FORMAT).
    #[arg(
        long,
        global = true,
        value_enum,
        env = "THRESHOLD_SPECTRA_FORMAT",
        default_value_t = FormatArg::Json
    )]
    format: FormatArg,

    /// Decimal digits for approximate values.
    #[arg(
        long,
        global = true,
        default_value_t = 4,
        value_parser = clap::value_parser!(u32).range(1..=17)
    )]
    precision: u32,

    /// Prefer exact output: rational values print only as p/q fractions.
    #[arg(long, global = true)]
    exact: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Text => OutputFormat::Text,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues of the degree-normalized adjacency matrix, one row per
    /// eigenvalue, with exact values where the string determines them.
    Spectrum { string: String },
    /// Full report: spectrum, inertia, determinant, energy and eigenvalue
    /// bounds, Randic index, and family classification.
    Analyze { string: String },
    /// Family and number of distinct eigenvalues.
    Classify { string: String },
    /// The equitable-partition quotient: cells, connection counts, cell
    /// degrees, and size/degree ratios.
    Quotient { string: String },
    /// Exact characteristic polynomial of the normalized adjacency matrix.
    Charpoly { string: String },
    /// All connected creation strings of order N, lexicographically.
    Enumerate {
        #[arg(long)]
        n: usize,
    },
    /// Group all strings of each order up to N by exact spectral
    /// fingerprint and report cospectral pairs. Exit 3 if any pair exists.
    Cospectral {
        #[arg(long)]
        n_max: usize,
    },
    /// Check every formula in the crate against exact ground truth over all
    /// strings up to order N. Exit 3 if any violation is found.
    Verify {
        #[arg(long)]
        n_max: usize,
    },
    /// Graphviz DOT description of the graph.
    ExportDot { string: String },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    let opts = RenderOptions {
        format: cli.format.into(),
        precision: cli.precision as usize,
        exact: cli.exact,
    };
    match execute(cli.command, &opts) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn parse_input(text: &str) -> Result<ThresholdString, String> {
    parse_string(text).map_err(|e| format!("invalid creation string: {e}"))
}

fn emit(payload: String) {
    if payload.ends_with('\n') {
        print!("{payload}");
    } else {
        println!("{payload}");
    }
}

fn execute(command: Command, opts: &RenderOptions) -> Result<ExitCode, String> {
    match command {
        Command::Spectrum { string } => {
            let ts = parse_input(&string)?;
            let spectrum = full_spectrum(&ts).map_err(|e| e.to_string())?;
            emit(render_spectrum(&spectrum, opts));
            Ok(ExitCode::SUCCESS)
        }
        Command::Analyze { string } => {
            let ts = parse_input(&string)?;
            let report = analyze_report(&ts, opts).map_err(|e| e.to_string())?;
            emit(render_analyze(&report, opts));
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { string } => {
            let ts = parse_input(&string)?;
            let result = classify(&ts);
            let summary = ClassifySummary {
                distinct_count: result.distinct_count,
                family: result.family,
            };
            emit(render_classify(&summary, opts));
            Ok(ExitCode::SUCCESS)
        }
        Command::Quotient { string } => {
            let ts = parse_input(&string)?;
            let qs = build_quotient(&block_form(&ts));
            emit(render_quotient(&quotient_document(&qs), opts));
            Ok(ExitCode::SUCCESS)
        }
        Command::Charpoly { string } => {
            let ts = parse_input(&string)?;
            emit(render_char_poly(&full_char_poly(&ts), opts));
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate { n } => {
            let strings = enumerate_strings(n).map_err(|e| e.to_string())?;
            emit(render_enumerate(&strings, opts));
            Ok(ExitCode::SUCCESS)
        }
        Command::Cospectral { n_max } => {
            let reports = cospectral_search(n_max).map_err(|e| e.to_string())?;
            let pairs: usize = reports.iter().map(|r| r.cospectral_pairs.len()).sum();
            emit(render_search_reports(&reports, opts));
            eprintln!("{pairs} cospectral pair(s)");
            Ok(if pairs == 0 { ExitCode::SUCCESS } else { ExitCode::from(3) })
        }
        Command::Verify { n_max } => {
            let report = verify_theorems(n_max).map_err(|e| e.to_string())?;
            let violations = report.theorem_violations.len();
            emit(render_verify_report(&report, opts));
            eprintln!("{violations} violations");
            Ok(if violations == 0 { ExitCode::SUCCESS } else { ExitCode::from(3) })
        }
        Command::ExportDot { string } => {
            let ts = parse_input(&string)?;
            emit(to_dot(&build_graph(&ts)));
            Ok(ExitCode::SUCCESS)
        }
    }
}
