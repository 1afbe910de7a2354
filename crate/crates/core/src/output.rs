//! Rendering of every CLI document in three formats: compact JSON for
//! machines, CSV for spreadsheets, and plain text for people.
//!
//! Conventions shared by all documents:
//! - decimals are printed to the requested precision with trailing zeros
//!   trimmed (so an exact 1.0 renders as "1");
//! - rational quantities always carry their exact "p/q" form; under
//!   `--exact` the decimal twin is suppressed entirely, so no floating
//!   representation of a rational value appears anywhere in the output.

use crate::analysis::{
    classify_with_char_poly, energy, energy_bounds, lambda1_bounds, randic_index, Family,
};
use crate::catalog::SearchReport;
use crate::exact::{
    det_a_formula, full_char_poly, inertia_formula, rational_string, CharPoly, Inertia, Rational,
};
use crate::quotient::QuotientSystem;
use crate::spectral::{full_spectrum, Provenance, SpectralError, SpectralValue, Spectrum};
use crate::threshold::{block_form, BlockForm, ThresholdString};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy)]
pub struct RenderOptions {
    pub format: OutputFormat,
    /// Decimal digits for approximate values; at least 1.
    pub precision: usize,
    /// Suppress decimal twins of exact rational values.
    pub exact: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { format: OutputFormat::Json, precision: 4, exact: false }
    }
}

/// Fixed-point rendering with trailing zeros (and a bare trailing dot)
/// trimmed; "-0" collapses to "0".
pub fn format_decimal(x: f64, precision: usize) -> String {
    let raw = format!("{:.*}", precision.max(1), x);
    let trimmed = if raw.contains('.') {
        raw.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        raw
    };
    if trimmed == "-0" {
        "0".to_string()
    } else {
        trimmed
    }
}

fn provenance_label(p: Provenance) -> &'static str {
    match p {
        Provenance::DirectString => "direct-string",
        Provenance::Quotient => "quotient",
        Provenance::Oracle => "oracle",
    }
}

/// One spectrum row. `value` is the decimal rendering, `exact` the "p/q"
/// form when the eigenvalue is rational; under `--exact` rational rows drop
/// `value` and keep only `exact`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact: Option<String>,
    pub multiplicity: usize,
    pub provenance: String,
}

fn row_for(value: &SpectralValue, multiplicity: usize, p: Provenance, opts: &RenderOptions) -> SpectrumRow {
    let (decimal, exact) = match value {
        SpectralValue::Exact(r) => {
            let dec = if opts.exact { None } else { Some(format_decimal(value.approx(), opts.precision)) };
            (dec, Some(rational_string(r)))
        }
        SpectralValue::Approx(x) => (Some(format_decimal(*x, opts.precision)), None),
    };
    SpectrumRow {
        value: decimal,
        exact,
        multiplicity,
        provenance: provenance_label(p).to_string(),
    }
}

/// Grouped rows: one per distinct (value, provenance) entry, ascending.
pub fn spectrum_rows(spectrum: &Spectrum, opts: &RenderOptions) -> Vec<SpectrumRow> {
    spectrum
        .entries()
        .iter()
        .map(|e| row_for(&e.value, e.multiplicity, e.provenance, opts))
        .collect()
}

/// Expanded rows: one per eigenvalue instance (n rows in total), each with
/// multiplicity 1. This is the shape the `spectrum` subcommand emits.
pub fn expanded_spectrum_rows(spectrum: &Spectrum, opts: &RenderOptions) -> Vec<SpectrumRow> {
    let mut rows = Vec::with_capacity(spectrum.total_multiplicity());
    for e in spectrum.entries() {
        for _ in 0..e.multiplicity {
            rows.push(row_for(&e.value, 1, e.provenance, opts));
        }
    }
    rows
}

fn spectrum_table(rows: &[SpectrumRow]) -> String {
    let mut out = String::new();
    out.push_str("  value        exact    mult  provenance\n");
    for r in rows {
        out.push_str(&format!(
            "  {:<12} {:<8} {:<5} {}\n",
            r.value.as_deref().unwrap_or("-"),
            r.exact.as_deref().unwrap_or("-"),
            r.multiplicity,
            r.provenance
        ));
    }
    out
}

pub fn render_spectrum(spectrum: &Spectrum, opts: &RenderOptions) -> String {
    match opts.format {
        OutputFormat::Json => {
            serde_json::to_string(&expanded_spectrum_rows(spectrum, opts)).expect("serializable")
        }
        OutputFormat::Csv => {
            let mut out = String::from("value,multiplicity\n");
            for r in spectrum_rows(spectrum, opts) {
                let shown = r.value.or(r.exact).unwrap_or_default();
                out.push_str(&format!("{},{}\n", shown, r.multiplicity));
            }
            out
        }
        OutputFormat::Text => {
            let rows = spectrum_rows(spectrum, opts);
            format!("spectrum ({} eigenvalues):\n{}", spectrum.total_multiplicity(), spectrum_table(&rows))
        }
    }
}

/// Full analysis document for one string.
#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    pub string: String,
    pub block_form: BlockForm,
    pub spectrum: Vec<SpectrumRow>,
    pub inertia: Inertia,
    pub det: String,
    pub energy: String,
    pub energy_bounds: [String; 2],
    pub lambda1_bounds: [String; 2],
    pub randic_index: String,
    pub distinct_count: usize,
    pub family: Family,
}

pub fn analyze_report(ts: &ThresholdString, opts: &RenderOptions) -> Result<AnalyzeReport, SpectralError> {
    let bf = block_form(ts);
    let spectrum = full_spectrum(ts)?;
    let cp = full_char_poly(ts);
    let classification = classify_with_char_poly(&bf, &cp);
    let (e_lo, e_hi) = energy_bounds(&bf);
    let l_bounds = lambda1_bounds(&bf);
    Ok(AnalyzeReport {
        string: ts.to_string(),
        block_form: bf.clone(),
        spectrum: spectrum_rows(&spectrum, opts),
        inertia: inertia_formula(&bf),
        det: rational_string(&det_a_formula(&bf)),
        energy: format_decimal(energy(&spectrum), opts.precision),
        energy_bounds: [rational_string(&e_lo), rational_string(&e_hi)],
        lambda1_bounds: [rational_string(&l_bounds.lower), rational_string(&l_bounds.upper)],
        randic_index: rational_string(&randic_index(&bf)),
        distinct_count: classification.distinct_count,
        family: classification.family,
    })
}

fn family_label(family: Family) -> String {
    match serde_json::to_value(family).expect("serializable") {
        serde_json::Value::String(s) => s,
        _ => unreachable!("family serializes to a string"),
    }
}

fn rational_with_decimal(text: &str, opts: &RenderOptions) -> String {
    if opts.exact {
        return text.to_string();
    }
    let r: Option<f64> = text
        .split_once('/')
        .and_then(|(p, q)| Some(p.parse::<f64>().ok()? / q.parse::<f64>().ok()?))
        .or_else(|| text.parse::<f64>().ok());
    match r {
        Some(x) => {
            let decimal = format_decimal(x, opts.precision);
            if decimal == text {
                text.to_string()
            } else {
                format!("{text} ({decimal})")
            }
        }
        None => text.to_string(),
    }
}

pub fn render_analyze(report: &AnalyzeReport, opts: &RenderOptions) -> String {
    match opts.format {
        OutputFormat::Json => serde_json::to_string(report).expect("serializable"),
        OutputFormat::Csv => {
            let mut out = String::from("key,value\n");
            out.push_str(&format!("string,{}\n", report.string));
            out.push_str(&format!("n,{}\n", report.block_form.n()));
            out.push_str(&format!("k,{}\n", report.block_form.k()));
            out.push_str(&format!(
                "inertia,({};{};{})\n",
                report.inertia.n_minus, report.inertia.n_zero, report.inertia.n_plus
            ));
            out.push_str(&format!("det,{}\n", report.det));
            out.push_str(&format!("energy,{}\n", report.energy));
            out.push_str(&format!("energy_lower,{}\n", report.energy_bounds[0]));
            out.push_str(&format!("energy_upper,{}\n", report.energy_bounds[1]));
            out.push_str(&format!("lambda1_lower,{}\n", report.lambda1_bounds[0]));
            out.push_str(&format!("lambda1_upper,{}\n", report.lambda1_bounds[1]));
            out.push_str(&format!("randic_index,{}\n", report.randic_index));
            out.push_str(&format!("distinct_count,{}\n", report.distinct_count));
            out.push_str(&format!("family,{}\n", family_label(report.family)));
            out
        }
        OutputFormat::Text => {
            let bf = &report.block_form;
            let mut out = String::new();
            out.push_str(&format!("string: {}\n", report.string));
            out.push_str(&format!(
                "block form: s = {:?}, t = {:?}  (n = {}, k = {})\n",
                bf.s_blocks,
                bf.t_blocks,
                bf.n(),
                bf.k()
            ));
            out.push_str(&format!(
                "spectrum ({} eigenvalues, {} distinct):\n{}",
                bf.n(),
                report.distinct_count,
                spectrum_table(&report.spectrum)
            ));
            out.push_str(&format!(
                "inertia: {} negative, {} zero, {} positive\n",
                report.inertia.n_minus, report.inertia.n_zero, report.inertia.n_plus
            ));
            out.push_str(&format!("det: {}\n", rational_with_decimal(&report.det, opts)));
            out.push_str(&format!("energy: {}\n", report.energy));
            out.push_str(&format!(
                "energy bounds: [{}, {}]\n",
                rational_with_decimal(&report.energy_bounds[0], opts),
                rational_with_decimal(&report.energy_bounds[1], opts)
            ));
            out.push_str(&format!(
                "smallest-eigenvalue bounds: [{}, {}]\n",
                rational_with_decimal(&report.lambda1_bounds[0], opts),
                rational_with_decimal(&report.lambda1_bounds[1], opts)
            ));
            out.push_str(&format!(
                "randic index: {}\n",
                rational_with_decimal(&report.randic_index, opts)
            ));
            out.push_str(&format!("family: {}\n", family_label(report.family)));
            out
        }
    }
}

/// The two-field classification summary.
#[derive(Debug, Clone, Serialize)]
pub struct ClassifySummary {
    pub distinct_count: usize,
    pub family: Family,
}

pub fn render_classify(summary: &ClassifySummary, opts: &RenderOptions) -> String {
    match opts.format {
        OutputFormat::Json => serde_json::to_string(summary).expect("serializable"),
        OutputFormat::Csv => format!(
            "distinct_count,family\n{},{}\n",
            summary.distinct_count,
            family_label(summary.family)
        ),
        OutputFormat::Text => format!(
            "family: {}\ndistinct eigenvalues: {}\n",
            family_label(summary.family),
            summary.distinct_count
        ),
    }
}

/// Quotient system document: 1-based vertex ranges per cell, the integer
/// connection-count matrix, cell degrees, and the exact size/degree ratios.
#[derive(Debug, Clone, Serialize)]
pub struct QuotientDocument {
    pub cells: Vec<[usize; 2]>,
    pub b_pi: Vec<Vec<usize>>,
    pub d_pi: Vec<usize>,
    pub r: Vec<String>,
}

pub fn quotient_document(qs: &QuotientSystem) -> QuotientDocument {
    QuotientDocument {
        cells: qs.cells.iter().map(|&(lo, hi)| [lo, hi]).collect(),
        b_pi: qs.b_pi.clone(),
        d_pi: qs.d_pi.clone(),
        r: qs.x_diag.iter().map(rational_string).collect(),
    }
}

fn cell_label(index: usize) -> String {
    if index % 2 == 0 {
        format!("V_s{}", index / 2 + 1)
    } else {
        format!("V_t{}", index / 2 + 1)
    }
}

pub fn render_quotient(doc: &QuotientDocument, opts: &RenderOptions) -> String {
    match opts.format {
        OutputFormat::Json => serde_json::to_string(doc).expect("serializable"),
        OutputFormat::Csv => {
            let mut out = String::from("cell,start,end,degree,r\n");
            for (i, range) in doc.cells.iter().enumerate() {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    cell_label(i),
                    range[0],
                    range[1],
                    doc.d_pi[i],
                    doc.r[i]
                ));
            }
            out
        }
        OutputFormat::Text => {
            let mut out = String::from("cells:\n");
            for (i, range) in doc.cells.iter().enumerate() {
                out.push_str(&format!(
                    "  {}: vertices {}..{}, degree {}, r = {}\n",
                    cell_label(i),
                    range[0],
                    range[1],
                    doc.d_pi[i],
                    rational_with_decimal(&doc.r[i], opts)
                ));
            }
            out.push_str("connection counts (rows = cells):\n");
            for row in &doc.b_pi {
                out.push_str("  ");
                out.push_str(&row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
                out.push('\n');
            }
            out
        }
    }
}

/// Characteristic polynomial document: exact coefficients, descending.
#[derive(Debug, Clone, Serialize)]
pub struct CharPolyDocument {
    pub degree: usize,
    pub coefficients: Vec<String>,
    pub canonical: String,
}

pub fn char_poly_document(cp: &CharPoly) -> CharPolyDocument {
    CharPolyDocument {
        degree: cp.degree(),
        coefficients: cp.coefficients_descending().iter().map(rational_string).collect(),
        canonical: cp.to_canonical_string(),
    }
}

/// Human form, e.g. "x^4 + 2/3 x^2 - 1/27".
pub fn char_poly_text(cp: &CharPoly) -> String {
    use num::Zero;
    let coeffs = cp.coefficients_descending();
    let degree = cp.degree();
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let power = degree - i;
        let negative = c < &Rational::zero();
        let magnitude = if negative { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else if negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mag = rational_string(&magnitude);
        let is_one = mag == "1";
        match power {
            0 => out.push_str(&mag),
            _ => {
                if !is_one {
                    out.push_str(&mag);
                    out.push(' ');
                }
                if power == 1 {
                    out.push('x');
                } else {
                    out.push_str(&format!("x^{power}"));
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn render_char_poly(cp: &CharPoly, opts: &RenderOptions) -> String {
    match opts.format {
        OutputFormat::Json => {
            serde_json::to_string(&char_poly_document(cp)).expect("serializable")
        }
        OutputFormat::Csv => {
            let mut out = String::from("power,coefficient\n");
            let degree = cp.degree();
            for (i, c) in cp.coefficients_descending().iter().enumerate() {
                out.push_str(&format!("{},{}\n", degree - i, rational_string(c)));
            }
            out
        }
        OutputFormat::Text => format!("{}\n", char_poly_text(cp)),
    }
}

pub fn render_enumerate(strings: &[ThresholdString], opts: &RenderOptions) -> String {
    let texts: Vec<String> = strings.iter().map(ToString::to_string).collect();
    match opts.format {
        OutputFormat::Json => serde_json::to_string(&texts).expect("serializable"),
        OutputFormat::Csv => {
            let mut out = String::from("string\n");
            for t in &texts {
                out.push_str(t);
                out.push('\n');
            }
            out
        }
        OutputFormat::Text => {
            let mut out = texts.join("\n");
            out.push('\n');
            out
        }
    }
}

fn fingerprint_hash(canonical: &str) -> String {
    let digest = Sha256::digest(canonical.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Per-order cospectral search reports. CSV flattens to one row per string
/// with a short fingerprint hash plus its classification.
pub fn render_search_reports(reports: &[SearchReport], opts: &RenderOptions) -> String {
    match opts.format {
        OutputFormat::Json => serde_json::to_string(reports).expect("serializable"),
        OutputFormat::Csv => {
            let mut out = String::from("n,string,fingerprint_sha256,distinct_count,family\n");
            for report in reports {
                for (canonical, members) in &report.fingerprint_groups {
                    let hash = fingerprint_hash(canonical);
                    for member in members {
                        let ts: ThresholdString =
                            member.parse().expect("report strings are valid");
                        let bf = block_form(&ts);
                        let cp = full_char_poly(&ts);
                        let classification = classify_with_char_poly(&bf, &cp);
                        out.push_str(&format!(
                            "{},{},{},{},{}\n",
                            report.n,
                            member,
                            hash,
                            classification.distinct_count,
                            family_label(classification.family)
                        ));
                    }
                }
            }
            out
        }
        OutputFormat::Text => {
            let mut out = String::new();
            let mut total_pairs = 0usize;
            for report in reports {
                out.push_str(&format!(
                    "n = {}: {} strings, {} fingerprint groups, {} cospectral pair(s)\n",
                    report.n,
                    report.strings_examined,
                    report.fingerprint_groups.len(),
                    report.cospectral_pairs.len()
                ));
                for (a, b) in &report.cospectral_pairs {
                    out.push_str(&format!("  cospectral: {a} ~ {b}\n"));
                    total_pairs += 1;
                }
            }
            out.push_str(&format!("{total_pairs} cospectral pair(s) in total\n"));
            out
        }
    }
}

/// The verification report. Text output always carries an explicit
/// "<N> violations" line.
pub fn render_verify_report(report: &SearchReport, opts: &RenderOptions) -> String {
    match opts.format {
        OutputFormat::Json => serde_json::to_string(report).expect("serializable"),
        OutputFormat::Csv => {
            let mut out = String::from("theorem,string,detail\n");
            for v in &report.theorem_violations {
                out.push_str(&format!("{},{},{}\n", v.theorem, v.string, v.detail.replace(',', ";")));
            }
            out
        }
        OutputFormat::Text => {
            let mut out = format!(
                "checked {} strings up to n = {}\n{} violations\n",
                report.strings_examined,
                report.n,
                report.theorem_violations.len()
            );
            for v in &report.theorem_violations {
                out.push_str(&format!("  [{}] {}: {}\n", v.theorem, v.string, v.detail));
            }
            if !report.notes.is_empty() {
                out.push_str("notes:\n");
                for note in &report.notes {
                    out.push_str(&format!("  - {note}\n"));
                }
            }
            out
        }
    }
}
