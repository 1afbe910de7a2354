//! Exhaustive catalog: enumerate every connected threshold string of a given
//! order, group by exact spectral fingerprint to hunt for cospectral
//! non-isomorphic pairs, and batch-verify every formula in the crate.
//!
//! The search is embarrassingly parallel over strings; per-string work is
//! pure, and the merge step orders everything (lexicographic strings, sorted
//! map keys), so reports are byte-identical across runs and thread counts.

use crate::analysis::{
    classify_with_char_poly, energy, energy_bounds, family_distinct_count, k2_multiplicity_check,
    lambda1_bounds, randic_index, randic_index_direct, Family, Lambda1Bounds,
};
use crate::exact::{
    char_poly, char_poly_inertia, det_a_formula, det_b_pi_formula, det_cal_b_pi_formula,
    distinct_positive_count, full_char_poly, full_matrix_char_poly, inertia_formula,
    is_squarefree, rat_int, rational_string, spectra_equal, CharPoly, Inertia, Rational,
    RationalMatrix,
};
use crate::quotient::{build_quotient, characteristic_matrix, quotient_row_sums};
use crate::spectral::full_spectrum;
use crate::threshold::{block_form, build_graph, BlockForm, Graph, ThresholdString};
use num::bigint::BigInt;
use num::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("order {n} is too small: connected strings need n >= 2")]
    OrderTooSmall { n: usize },
}

/// One failed check: which rule, on which string, and what was seen.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub theorem: String,
    pub string: String,
    pub detail: String,
}

/// Result of a catalog sweep (one order for the cospectral search, or the
/// aggregate over all orders for the verifier).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    pub n: usize,
    pub strings_examined: usize,
    /// Canonical characteristic polynomial -> lexicographically ordered
    /// strings sharing it. Two strings share a key iff they are exactly
    /// cospectral.
    pub fingerprint_groups: BTreeMap<String, Vec<String>>,
    pub cospectral_pairs: Vec<(String, String)>,
    pub theorem_violations: Vec<Violation>,
    /// Informational records (adjudicated constants, search outcomes).
    pub notes: Vec<String>,
}

/// All `2^(n-2)` connected threshold strings of order `n`, lexicographic.
pub fn enumerate_strings(n: usize) -> Result<Vec<ThresholdString>, CatalogError> {
    if n < 2 {
        return Err(CatalogError::OrderTooSmall { n });
    }
    let mid = n - 2;
    let mut out = Vec::with_capacity(1usize << mid);
    for code in 0..(1u64 << mid) {
        let mut bits = Vec::with_capacity(n);
        bits.push(0u8);
        for i in (0..mid).rev() {
            bits.push(((code >> i) & 1) as u8);
        }
        bits.push(1u8);
        out.push(ThresholdString::from_bits(bits).expect("enumerated strings are valid"));
    }
    Ok(out)
}

/// Groups every string of each order `2..=n_max` by its exact spectral
/// fingerprint. Any group holding two distinct strings is a cospectral
/// non-isomorphic pair (the creation string determines the graph uniquely),
/// so the pair list answers the search question for that order.
pub fn cospectral_search(n_max: usize) -> Result<Vec<SearchReport>, CatalogError> {
    if n_max < 2 {
        return Err(CatalogError::OrderTooSmall { n: n_max });
    }
    let mut reports = Vec::with_capacity(n_max - 1);
    for n in 2..=n_max {
        let strings = enumerate_strings(n)?;
        // Parallel fingerprinting; the ordered collect keeps the result
        // independent of scheduling.
        let keyed: Vec<(String, String)> = strings
            .par_iter()
            .map(|ts| (full_char_poly(ts).to_canonical_string(), ts.to_string()))
            .collect();
        let mut fingerprint_groups: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for (key, text) in keyed {
            fingerprint_groups.entry(key).or_default().push(text);
        }
        let mut cospectral_pairs = Vec::new();
        for members in fingerprint_groups.values() {
            for i in 0..members.len() {
                for j in (i + 1)..members.len() {
                    let a: ThresholdString = members[i].parse().expect("stored strings are valid");
                    let b: ThresholdString = members[j].parse().expect("stored strings are valid");
                    if spectra_equal(&a, &b) == Ok(true) {
                        cospectral_pairs.push((members[i].clone(), members[j].clone()));
                    }
                }
            }
        }
        let notes = vec![if cospectral_pairs.is_empty() {
            format!("order {n}: all {} fingerprints are distinct", fingerprint_groups.len())
        } else {
            format!("order {n}: {} exactly cospectral pair(s) found", cospectral_pairs.len())
        }];
        reports.push(SearchReport {
            n,
            strings_examined: strings.len(),
            fingerprint_groups,
            cospectral_pairs,
            theorem_violations: Vec::new(),
            notes,
        });
    }
    Ok(reports)
}

/// Runs every closed-form claim in the crate against exact ground truth for
/// all strings of order `2..=n_max`, reporting (never throwing) violations.
pub fn verify_theorems(n_max: usize) -> Result<SearchReport, CatalogError> {
    if n_max < 2 {
        return Err(CatalogError::OrderTooSmall { n: n_max });
    }
    let mut theorem_violations = Vec::new();
    let mut strings_examined = 0usize;
    for n in 2..=n_max {
        let strings = enumerate_strings(n)?;
        strings_examined += strings.len();
        let per_string: Vec<Vec<Violation>> =
            strings.par_iter().map(string_checks).collect();
        theorem_violations.extend(per_string.into_iter().flatten());
    }
    Ok(SearchReport {
        n: n_max,
        strings_examined,
        fingerprint_groups: BTreeMap::new(),
        cospectral_pairs: Vec::new(),
        theorem_violations,
        notes: adjudication_notes(),
    })
}

/// Constants that were settled by exact computation where printed sources
/// disagree with themselves; carried on every verification report.
fn adjudication_notes() -> Vec<String> {
    vec![
        "string 0011100011: the repeated clique value is -1/6 (multiplicity 2, exact); \
         -1/5 is not an eigenvalue of this graph (multiplicity 0)"
            .to_string(),
        "string 0111: the exact determinant of the normalized adjacency is -1/27 \
         (= 1 * (-1/3)^3; the degree product over all four vertices is 81)"
            .to_string(),
        "two-block multiplicity law: the multiplicity of -1/t equals \
         (t1 - 1)[s1 = 1] + [s1 = 1 or s1 = s2(t*t1 - 1) + 1]; at n <= 12 exactly one \
         string (0000001101) meets the side condition with s1 > 1, and its -1/t \
         multiplicity is 1, not t1 = 2"
            .to_string(),
        "two-block strings with t1 >= 2 and s1 = s2(t^2 - t - 1) + 1 carry six distinct \
         eigenvalues (the value -1/(t + s1 - 1) never merges into the quotient when \
         s1 > 1), so they classify as 'other'"
            .to_string(),
        "the general Randic index closed form includes the leading-cell cross term \
         r1 * sum_j r_{2j}; with it the formula equals the edge sum exactly"
            .to_string(),
    ]
}

/// The full per-string check suite. Each entry delegates to a small
/// verifier that takes the claimed value, so the suite's sensitivity can be
/// tested by feeding corrupted claims.
fn string_checks(ts: &ThresholdString) -> Vec<Violation> {
    let text = ts.to_string();
    let bf = block_form(ts);
    let g = build_graph(ts);
    let qs = build_quotient(&bf);
    let cp = full_char_poly(ts);
    let mut violations = Vec::new();
    let mut push = |theorem: &str, detail: Option<String>| {
        if let Some(detail) = detail {
            violations.push(Violation {
                theorem: theorem.to_string(),
                string: text.clone(),
                detail,
            });
        }
    };

    // Structural route equals the dense exact route.
    push("spectrum-union", {
        let brute = full_matrix_char_poly(&g);
        (cp != brute).then(|| "structural and dense characteristic polynomials differ".into())
    });
    push("inertia", check_inertia(&inertia_formula(&bf), &cp));
    push("determinant", check_determinant(&det_a_formula(&bf), &cp));
    push("determinant-alternating", check_alternating_determinant(&bf));
    push("quotient-simple", {
        let qcp = char_poly(&qs.cal_b_pi).expect("quotient is square");
        (!is_squarefree(&qcp)).then(|| "quotient characteristic polynomial has a repeated root".into())
    });
    push("quotient-determinant", {
        let b_int = RationalMatrix::from_rows(
            qs.b_pi
                .iter()
                .map(|row| row.iter().map(|&x| rat_int(x as i64)).collect())
                .collect(),
        )
        .expect("rectangular by construction");
        let det_b = b_int.determinant().expect("square");
        let det_cal = qs.cal_b_pi.determinant().expect("square");
        let claim_b = Rational::from_integer(det_b_pi_formula(&bf));
        let claim_cal = det_cal_b_pi_formula(&bf);
        (det_b != claim_b || det_cal != claim_cal).then(|| {
            format!(
                "integer quotient det {} vs claim {}; normalized det {} vs claim {}",
                rational_string(&det_b),
                rational_string(&claim_b),
                rational_string(&det_cal),
                rational_string(&claim_cal)
            )
        })
    });
    push("quotient-rows", {
        (quotient_row_sums(&qs) != qs.d_pi).then(|| "quotient row sums differ from cell degrees".into())
    });
    push("intertwining", {
        let p = characteristic_matrix(&qs, bf.n());
        let na = crate::exact::normalized_adjacency(&g);
        (na.mul(&p) != p.mul(&qs.cal_b_pi)).then(|| "A P != P B over the rationals".into())
    });

    let spectrum = match full_spectrum(ts) {
        Ok(sp) => sp,
        Err(e) => {
            push("solver", Some(format!("eigensolver failed: {e}")));
            return violations;
        }
    };
    let values = spectrum.expanded_sorted();
    push(
        "lambda1-bounds",
        check_lambda1(&lambda1_bounds(&bf), values[0]),
    );
    push(
        "energy-bounds",
        check_energy(&energy_bounds(&bf), energy(&spectrum)),
    );
    push(
        "randic-identity",
        check_randic(&randic_index(&bf), &g),
    );
    push("classification", {
        let result = classify_with_char_poly(&bf, &cp);
        check_classification(result.family, result.distinct_count)
    });
    push("positive-distinct", {
        let got = distinct_positive_count(&cp);
        (got != bf.k()).then(|| format!("{got} distinct positive eigenvalues, expected k = {}", bf.k()))
    });
    if bf.k() == 2 {
        push("k2-multiplicity", {
            let report = k2_multiplicity_check(&bf).expect("k = 2 here");
            (!report.corrected_rule_holds).then(|| {
                format!(
                    "observed mult(-1/t) = {}, corrected law predicts {}; observed mult(-1/(n-1)) = {}, expected {}",
                    report.observed_inv_t,
                    report.corrected_multiplicity,
                    report.observed_inv_n1,
                    report.expected_inv_n1
                )
            })
        });
    }
    violations
}

/// Claimed inertia vs exact multiplicity-weighted sign counts.
pub(crate) fn check_inertia(claimed: &Inertia, cp: &CharPoly) -> Option<String> {
    let exact = char_poly_inertia(cp);
    (*claimed != exact).then(|| {
        format!(
            "claimed ({}, {}, {}), exact ({}, {}, {})",
            claimed.n_minus, claimed.n_zero, claimed.n_plus, exact.n_minus, exact.n_zero, exact.n_plus
        )
    })
}

/// Claimed determinant vs the signed constant coefficient of the
/// characteristic polynomial: `det M = (-1)^n p(0)`.
pub(crate) fn check_determinant(claimed: &Rational, cp: &CharPoly) -> Option<String> {
    let mut exact = cp.eval(&Rational::from_integer(0.into()));
    if cp.degree() % 2 == 1 {
        exact = -exact;
    }
    (*claimed != exact).then(|| {
        format!(
            "claimed {}, exact {}",
            rational_string(claimed),
            rational_string(&exact)
        )
    })
}

/// For fully alternating strings the determinant collapses to
/// `(-1)^{n/2} * 2 / n!`.
pub(crate) fn check_alternating_determinant(bf: &BlockForm) -> Option<String> {
    let alternating =
        bf.s_blocks.iter().all(|&x| x == 1) && bf.t_blocks.iter().all(|&x| x == 1);
    if !alternating {
        return None;
    }
    let n = bf.n();
    let mut factorial = BigInt::one();
    for i in 1..=n {
        factorial *= BigInt::from(i);
    }
    let mut expected = Rational::new(BigInt::from(2), factorial);
    if (n / 2) % 2 == 1 {
        expected = -expected;
    }
    let got = det_a_formula(bf);
    (got != expected).then(|| {
        format!(
            "formula gives {}, alternating form gives {}",
            rational_string(&got),
            rational_string(&expected)
        )
    })
}

/// Claimed bracket vs the observed smallest eigenvalue.
pub(crate) fn check_lambda1(bounds: &Lambda1Bounds, lambda1: f64) -> Option<String> {
    let lo = bounds.lower.to_f64().unwrap();
    let hi = bounds.upper.to_f64().unwrap();
    (lambda1 < lo - 1e-9 || lambda1 > hi + 1e-9)
        .then(|| format!("smallest eigenvalue {lambda1} outside [{lo}, {hi}]"))
}

/// Claimed energy bounds vs the observed energy.
pub(crate) fn check_energy(bounds: &(Rational, Rational), energy: f64) -> Option<String> {
    let lo = bounds.0.to_f64().unwrap();
    let hi = bounds.1.to_f64().unwrap();
    (energy < lo - 1e-9 || energy > hi + 1e-9)
        .then(|| format!("energy {energy} outside [{lo}, {hi}]"))
}

/// Claimed index value vs the direct edge sum.
pub(crate) fn check_randic(claimed: &Rational, g: &Graph) -> Option<String> {
    let exact = randic_index_direct(g);
    (*claimed != exact).then(|| {
        format!(
            "claimed {}, edge sum {}",
            rational_string(claimed),
            rational_string(&exact)
        )
    })
}

/// Family membership and exact distinct count must agree in both
/// directions: a named family pins its count, and a count of 2..5 pins the
/// family bucket.
pub(crate) fn check_classification(family: Family, distinct: usize) -> Option<String> {
    if let Some(expected) = family_distinct_count(family) {
        if distinct != expected {
            return Some(format!(
                "family predicts {expected} distinct eigenvalues, exact count is {distinct}"
            ));
        }
    } else if distinct < 6 {
        return Some(format!(
            "unnamed string has only {distinct} distinct eigenvalues"
        ));
    }
    None
}
