//! Spectral analysis: energy with exact two-sided bounds, extreme-eigenvalue
//! bounds, the general Randić index `R_{-1}`, closed-form spectra for the
//! one- and two-block families, and the distinct-eigenvalue classification.

use crate::exact::{
    char_poly, distinct_count, full_char_poly, rat, rat_int, root_multiplicity, CharPoly,
    Rational,
};
use crate::quotient::build_quotient;
use crate::spectral::{full_spectrum, SpectralError, Spectrum};
use crate::threshold::{block_form, BlockForm, Graph, ThresholdString};
use num::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("check needs a two-block string, got k = {k}")]
    NotTwoBlocks { k: usize },
}

/// Spectral energy `sum |lambda_i|` with its exact two-sided bounds.
#[derive(Debug, Clone)]
pub struct EnergyReport {
    pub energy: f64,
    pub lower_bound: Rational,
    pub upper_bound: Rational,
}

/// Energy of a spectrum: the sum of absolute eigenvalues.
pub fn energy(spectrum: &Spectrum) -> f64 {
    spectrum.expanded_sorted().iter().map(|x| x.abs()).sum()
}

/// Exact energy bounds from the block data. Both sides share the clique
/// term `2 sum (t_i - 1)/(t + S_i - 1)`; the k simple positive eigenvalues
/// are bracketed below by `1/t` each and above by `(n - t_k)/(n - 1)` each,
/// and the negatives mirror the positives because the trace is zero.
/// Tight at both ends for the complete graph and the star.
pub fn energy_bounds(bf: &BlockForm) -> (Rational, Rational) {
    let k = bf.k();
    let t = bf.t();
    let n = bf.n();
    let t_k = *bf.t_blocks.last().unwrap();
    let clique_term: Rational = (1..=k)
        .map(|i| rat((bf.t_blocks[i - 1] - 1) as i64, (t + bf.s_prefix(i) - 1) as i64))
        .sum();
    let lower = (rat(k as i64, t as i64) + &clique_term) * rat_int(2);
    let upper = (rat((k * (n - t_k)) as i64, (n - 1) as i64) + clique_term) * rat_int(2);
    (lower, upper)
}

/// Energy together with its bounds, via the structural spectrum.
pub fn energy_report(ts: &ThresholdString) -> Result<EnergyReport, SpectralError> {
    let spectrum = full_spectrum(ts)?;
    let (lower_bound, upper_bound) = energy_bounds(&block_form(ts));
    Ok(EnergyReport {
        energy: energy(&spectrum),
        lower_bound,
        upper_bound,
    })
}

/// Exact bracket for the smallest eigenvalue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lambda1Bounds {
    pub lower: Rational,
    pub upper: Rational,
}

/// The smallest eigenvalue lies in
/// `[-(n - t_k)/(n - 1), -1/(t + s_1 - 1)]`: it cannot undercut the
/// bound forced by the largest degree, and it is at most the first clique
/// value. Tight above for the complete graph and below for the star.
pub fn lambda1_bounds(bf: &BlockForm) -> Lambda1Bounds {
    let n = bf.n();
    let t_k = *bf.t_blocks.last().unwrap();
    Lambda1Bounds {
        lower: rat(-((n - t_k) as i64), (n - 1) as i64),
        upper: rat(-1, (bf.t() + bf.s_blocks[0] - 1) as i64),
    }
}

/// General Randić index `R_{-1} = sum over edges of 1/(d_u d_v)`, closed
/// form. With `r_i = |C_i| / d(C_i)`, a complete join between two cells
/// contributes exactly `r_i r_j`, and cell `C_j` is joined to everything
/// before a dominating run; the clique interiors add
/// `C(t_i, 2) / (t + S_i - 1)^2`.
pub fn randic_index(bf: &BlockForm) -> Rational {
    let k = bf.k();
    let sizes = bf.cell_sizes();
    let degrees = bf.cell_degrees();
    let r: Vec<Rational> = (0..2 * k)
        .map(|i| rat(sizes[i] as i64, degrees[i] as i64))
        .collect();

    // Sum of r_a r_b over cell pairs a < b with b a dominating run.
    let mut joins = Rational::zero();
    for j in 1..=k {
        let tail: Rational = (0..2 * j - 1).map(|a| &r[a]).sum();
        joins += &r[2 * j - 1] * tail;
    }

    let mut cliques = Rational::zero();
    for i in 1..=k {
        let ti = bf.t_blocks[i - 1] as i64;
        let d = (bf.t() + bf.s_prefix(i) - 1) as i64;
        cliques += rat(ti * (ti - 1) / 2, d * d);
    }
    joins + cliques
}

/// Reference route for the Randić index: the literal edge sum.
pub fn randic_index_direct(g: &Graph) -> Rational {
    let degs = g.degrees();
    g.edges()
        .iter()
        .map(|&(u, v)| rat(1, (degs[u] * degs[v]) as i64))
        .sum()
}

/// An eigenvalue in closed form: either rational or a quadratic surd
/// `(offset + sign * sqrt(radicand)) / scale`.
#[derive(Debug, Clone, PartialEq)]
pub enum ClosedFormValue {
    Exact(Rational),
    Surd {
        offset: Rational,
        radicand: Rational,
        scale: Rational,
        sign: i8,
    },
}

impl ClosedFormValue {
    pub fn approx(&self) -> f64 {
        match self {
            ClosedFormValue::Exact(r) => r.to_f64().unwrap(),
            ClosedFormValue::Surd {
                offset,
                radicand,
                scale,
                sign,
            } => {
                (offset.to_f64().unwrap() + f64::from(*sign) * radicand.to_f64().unwrap().sqrt())
                    / scale.to_f64().unwrap()
            }
        }
    }
}

/// A complete closed-form spectrum: `(value, multiplicity)` pairs ascending,
/// multiplicities summing to n.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormSpectrum {
    pub entries: Vec<(ClosedFormValue, usize)>,
}

impl ClosedFormSpectrum {
    fn assemble(mut raw: Vec<(ClosedFormValue, usize)>) -> Self {
        // Merge coinciding rational values (the one-block family collapses
        // two of its expressions when s = 1), then sort ascending.
        let mut entries: Vec<(ClosedFormValue, usize)> = Vec::new();
        raw.retain(|&(_, m)| m > 0);
        for (value, mult) in raw {
            if let ClosedFormValue::Exact(ref x) = value {
                if let Some(slot) = entries.iter_mut().find(
                    |(v, _)| matches!(v, ClosedFormValue::Exact(y) if y == x),
                ) {
                    slot.1 += mult;
                    continue;
                }
            }
            entries.push((value, mult));
        }
        entries.sort_by(|a, b| a.0.approx().total_cmp(&b.0.approx()));
        ClosedFormSpectrum { entries }
    }

    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|&(_, m)| m).sum()
    }

    /// All values as floats, repeated by multiplicity, ascending.
    pub fn expanded_sorted(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.total_multiplicity());
        for (v, m) in &self.entries {
            out.extend(std::iter::repeat(v.approx()).take(*m));
        }
        out.sort_by(f64::total_cmp);
        out
    }
}

/// Fully explicit spectra for the families that admit them.
///
/// One block (`0^s 1^t`): `{1, 0^{s-1}, (-1/(n-1))^{t-1}, -(n-t)/(n-1)}`,
/// zero-multiplicity entries dropped and coinciding values merged — this one
/// expression covers the complete graph, the star, and the complete split
/// graph.
///
/// Two blocks with `s_1 = 1` (the pineapple is the `t_2 = 1` special case):
/// `{1, 0^{s-2}, (-1/t)^{t_1}, (-1/(n-1))^{t_2-1}}` plus the conjugate pair
/// `(-(s_2 t_2 + t) +- sqrt((s_2 t_2 + t)^2 + 4 t_1 s_2 t (n-1))) / (2 t (n-1))`.
/// Everything else (k >= 3, or k = 2 with a long leading run) has no closed
/// form here and yields `None`.
pub fn closed_form_spectrum(ts: &ThresholdString) -> Option<ClosedFormSpectrum> {
    let bf = block_form(ts);
    let k = bf.k();
    let n = bf.n() as i64;
    let s = bf.s() as i64;
    let t = bf.t() as i64;
    if k == 1 {
        let raw = vec![
            (ClosedFormValue::Exact(rat_int(1)), 1),
            (ClosedFormValue::Exact(Rational::zero()), (s - 1) as usize),
            (ClosedFormValue::Exact(rat(-1, n - 1)), (t - 1) as usize),
            (ClosedFormValue::Exact(rat(-(n - t), n - 1)), 1),
        ];
        return Some(ClosedFormSpectrum::assemble(raw));
    }
    if k == 2 && bf.s_blocks[0] == 1 {
        let t1 = bf.t_blocks[0] as i64;
        let t2 = bf.t_blocks[1] as i64;
        let s2 = bf.s_blocks[1] as i64;
        let b = s2 * t2 + t;
        let offset = rat_int(-b);
        let radicand = rat_int(b * b + 4 * t1 * s2 * t * (n - 1));
        let scale = rat_int(2 * t * (n - 1));
        let raw = vec![
            (ClosedFormValue::Exact(rat_int(1)), 1),
            (ClosedFormValue::Exact(Rational::zero()), (s - 2) as usize),
            (ClosedFormValue::Exact(rat(-1, t)), t1 as usize),
            (ClosedFormValue::Exact(rat(-1, n - 1)), (t2 - 1) as usize),
            (
                ClosedFormValue::Surd {
                    offset: offset.clone(),
                    radicand: radicand.clone(),
                    scale: scale.clone(),
                    sign: -1,
                },
                1,
            ),
            (
                ClosedFormValue::Surd {
                    offset,
                    radicand,
                    scale,
                    sign: 1,
                },
                1,
            ),
        ];
        return Some(ClosedFormSpectrum::assemble(raw));
    }
    None
}

/// Structural families named by their distinct-eigenvalue count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    /// `0 1^{n-1}`: two distinct eigenvalues.
    #[serde(rename = "complete")]
    Complete,
    /// `0^{n-1} 1` with `n >= 3`: three distinct eigenvalues.
    #[serde(rename = "star")]
    Star,
    /// `0^s 1^t` with `s, t >= 2`: four distinct eigenvalues.
    #[serde(rename = "split-0^s1^t")]
    Split,
    /// `0 1^{n-3} 0 1` (a clique with one pendant vertex): four distinct.
    #[serde(rename = "01^{n-3}01")]
    CliquePendant,
    /// `0 1^{t-1} 0^{n-t-1} 1` with `n - t - 1 >= 2` (a clique with at
    /// least two pendants on one vertex): five distinct.
    #[serde(rename = "pineapple")]
    Pineapple,
    /// `0 1^{n-t-2} 0 1^t` with `t >= 2`: five distinct.
    #[serde(rename = "01^{n-t-2}01^t")]
    NestedCliques,
    /// `0^s 1 0^{n-s-2} 1`: five distinct.
    #[serde(rename = "0^s10^{n-s-2}1")]
    NestedStars,
    /// Two-block strings with `t_1 >= 2` and `s_1 = s_2 (t^2 - t - 1) + 1`.
    /// Listed for reference only: members carry six distinct eigenvalues
    /// (the first clique value stays separate whenever `s_1 > 1`), so
    /// classification reports them as [`Family::Other`].
    #[serde(rename = "balanced-k2")]
    BalancedK2,
    /// Everything else: at least six distinct eigenvalues.
    #[serde(rename = "other")]
    Other,
}

/// The distinct-eigenvalue count a family pins down, if it pins one down.
pub fn family_distinct_count(family: Family) -> Option<usize> {
    match family {
        Family::Complete => Some(2),
        Family::Star => Some(3),
        Family::Split | Family::CliquePendant => Some(4),
        Family::Pineapple | Family::NestedCliques | Family::NestedStars => Some(5),
        Family::BalancedK2 => Some(6),
        Family::Other => None,
    }
}

/// Membership test for the reference-only balanced two-block family.
pub fn is_balanced_k2(bf: &BlockForm) -> bool {
    if bf.k() != 2 || bf.t_blocks[0] < 2 {
        return false;
    }
    let t = bf.t();
    bf.s_blocks[0] == bf.s_blocks[1] * (t * t - t - 1) + 1
}

fn family_of(bf: &BlockForm) -> Family {
    let k = bf.k();
    if k == 1 {
        return if bf.s() == 1 {
            Family::Complete
        } else if bf.t() == 1 {
            Family::Star
        } else {
            Family::Split
        };
    }
    if k == 2 {
        let (s1, s2) = (bf.s_blocks[0], bf.s_blocks[1]);
        let (t1, t2) = (bf.t_blocks[0], bf.t_blocks[1]);
        if s1 == 1 && s2 == 1 && t2 == 1 {
            return Family::CliquePendant;
        }
        if s1 == 1 && t2 == 1 && s2 >= 2 {
            return Family::Pineapple;
        }
        if s1 == 1 && s2 == 1 && t2 >= 2 {
            return Family::NestedCliques;
        }
        if t1 == 1 && t2 == 1 {
            return Family::NestedStars;
        }
    }
    Family::Other
}

/// Outcome of classification: the family and the exact distinct count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationResult {
    pub family: Family,
    pub distinct_count: usize,
    /// The matched block parameters, for the human-readable reports.
    pub witness: String,
}

/// Classifies a string by the distinct-eigenvalue families. The family is
/// read off the block parameters; the distinct count is computed exactly
/// from the characteristic polynomial, so the two can be cross-checked.
pub fn classify(ts: &ThresholdString) -> ClassificationResult {
    let bf = block_form(ts);
    let cp = full_char_poly(ts);
    classify_with_char_poly(&bf, &cp)
}

/// Classification when the characteristic polynomial is already at hand
/// (the catalog sweeps reuse it).
pub fn classify_with_char_poly(bf: &BlockForm, cp: &CharPoly) -> ClassificationResult {
    ClassificationResult {
        family: family_of(bf),
        distinct_count: distinct_count(cp),
        witness: format!("k={}, s={:?}, t={:?}", bf.k(), bf.s_blocks, bf.t_blocks),
    }
}

/// Multiplicity audit for two-block strings: compares the observed exact
/// multiplicities of `-1/(n-1)` and `-1/t` against two competing laws.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K2MultiplicityReport {
    /// Whether `s_1 = 1` or `s_1 = s_2 (t t_1 - 1) + 1` holds.
    pub condition: bool,
    /// Observed multiplicity of `-1/(n-1)`; always `t_2 - 1`.
    pub observed_inv_n1: usize,
    pub expected_inv_n1: usize,
    /// Observed multiplicity of `-1/t`.
    pub observed_inv_t: usize,
    /// The multiplicity the simple rule predicts under the condition: `t_1`.
    pub stated_multiplicity: usize,
    /// `(t_1 - 1) [s_1 = 1] + [condition]`: direct copies require the
    /// leading run to be a single 0, the quotient copy exactly the
    /// condition.
    pub corrected_multiplicity: usize,
    /// Whether the quotient itself owns `-1/t` as an eigenvalue.
    pub quotient_has_inv_t: bool,
    /// The simple rule as an iff: `mult = t_1` exactly under the condition.
    pub stated_rule_holds: bool,
    /// The corrected law together with the `-1/(n-1)` count.
    pub corrected_rule_holds: bool,
}

/// Runs the two-block multiplicity audit.
pub fn k2_multiplicity_check(bf: &BlockForm) -> Result<K2MultiplicityReport, AnalysisError> {
    if bf.k() != 2 {
        return Err(AnalysisError::NotTwoBlocks { k: bf.k() });
    }
    let ts = bf.to_threshold_string();
    let (s1, s2) = (bf.s_blocks[0], bf.s_blocks[1]);
    let (t1, t2) = (bf.t_blocks[0], bf.t_blocks[1]);
    let t = bf.t();
    let n = bf.n();

    let condition = s1 == 1 || s1 == s2 * (t * t1 - 1) + 1;
    let cp = full_char_poly(&ts);
    let inv_n1 = rat(-1, (n - 1) as i64);
    let inv_t = rat(-1, t as i64);
    let observed_inv_n1 = root_multiplicity(&cp, &inv_n1);
    let observed_inv_t = root_multiplicity(&cp, &inv_t);

    let qs = build_quotient(bf);
    let qcp = char_poly(&qs.cal_b_pi).expect("quotient matrix is square");
    let quotient_has_inv_t = qcp.eval(&inv_t).is_zero();

    let corrected_multiplicity =
        if s1 == 1 { t1 - 1 } else { 0 } + usize::from(condition);
    let stated_rule_holds = (observed_inv_t == t1) == condition;
    let corrected_rule_holds =
        observed_inv_t == corrected_multiplicity && observed_inv_n1 == t2 - 1;

    Ok(K2MultiplicityReport {
        condition,
        observed_inv_n1,
        expected_inv_n1: t2 - 1,
        observed_inv_t,
        stated_multiplicity: t1,
        corrected_multiplicity,
        quotient_has_inv_t,
        stated_rule_holds,
        corrected_rule_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::threshold::{build_graph, parse_string};
    use proptest::prelude::*;

    fn bf_of(text: &str) -> BlockForm {
        block_form(&parse_string(text).unwrap())
    }

    #[test]
    fn energy_and_bounds_of_two_block_example() {
        let ts = parse_string("0011100011").unwrap();
        let report = energy_report(&ts).unwrap();
        assert_eq!(report.lower_bound, rat(76, 45));
        assert_eq!(report.upper_bound, rat(40, 9));
        assert!((report.energy - 2.71590).abs() < 1e-4);
        let lo = report.lower_bound.to_f64().unwrap();
        let hi = report.upper_bound.to_f64().unwrap();
        assert!(lo <= report.energy && report.energy <= hi);
    }

    #[test]
    fn energy_bounds_are_tight_for_complete_and_star() {
        for text in ["0111", "011111"] {
            let (lo, hi) = energy_bounds(&bf_of(text));
            assert_eq!(lo, rat_int(2), "{text}");
            assert_eq!(hi, rat_int(2), "{text}");
        }
        for text in ["0001", "000001"] {
            let (lo, hi) = energy_bounds(&bf_of(text));
            assert_eq!(lo, rat_int(2), "{text}");
            assert_eq!(hi, rat_int(2), "{text}");
        }
    }

    #[test]
    fn lambda1_bracket_holds_and_is_tight_at_the_ends() {
        // Star: smallest eigenvalue is exactly the lower bound -1.
        let star = lambda1_bounds(&bf_of("00001"));
        assert_eq!(star.lower, rat_int(-1));
        // Complete: smallest eigenvalue is exactly the upper bound -1/(n-1).
        let complete = lambda1_bounds(&bf_of("01111"));
        assert_eq!(complete.upper, rat(-1, 4));
        assert_eq!(complete.lower, rat(-1, 4));

        let bounds = lambda1_bounds(&bf_of("0011100011"));
        assert_eq!(bounds.lower, rat(-8, 9));
        assert_eq!(bounds.upper, rat(-1, 6));
        let spectrum = full_spectrum(&parse_string("0011100011").unwrap()).unwrap();
        let lambda1 = spectrum.expanded_sorted()[0];
        assert!(bounds.lower.to_f64().unwrap() <= lambda1 + 1e-12);
        assert!(lambda1 <= bounds.upper.to_f64().unwrap() + 1e-12);
    }

    #[test]
    fn randic_index_closed_form_values() {
        assert_eq!(randic_index(&bf_of("0011100011")), rat(1343, 1620));
        assert_eq!(randic_index(&bf_of("0001")), rat_int(1));
        // Complete graph: C(n,2) edges of weight 1/(n-1)^2 gives n/(2(n-1)).
        assert_eq!(randic_index(&bf_of("0111")), rat(2, 3));
        assert_eq!(randic_index(&bf_of("01111")), rat(5, 8));
    }

    fn cf_of(text: &str) -> ClosedFormSpectrum {
        closed_form_spectrum(&parse_string(text).unwrap()).unwrap()
    }

    #[test]
    fn closed_form_one_block() {
        // Complete K4.
        let cf = cf_of("0111");
        assert_eq!(
            cf.entries,
            vec![
                (ClosedFormValue::Exact(rat(-1, 3)), 3),
                (ClosedFormValue::Exact(rat_int(1)), 1),
            ]
        );
        // Star on 4 vertices.
        let cf = cf_of("0001");
        assert_eq!(
            cf.entries,
            vec![
                (ClosedFormValue::Exact(rat_int(-1)), 1),
                (ClosedFormValue::Exact(rat_int(0)), 2),
                (ClosedFormValue::Exact(rat_int(1)), 1),
            ]
        );
        // Complete split 0^3 1^3.
        let cf = cf_of("000111");
        assert_eq!(cf.total_multiplicity(), 6);
        assert_eq!(
            cf.entries,
            vec![
                (ClosedFormValue::Exact(rat(-3, 5)), 1),
                (ClosedFormValue::Exact(rat(-1, 5)), 2),
                (ClosedFormValue::Exact(rat_int(0)), 2),
                (ClosedFormValue::Exact(rat_int(1)), 1),
            ]
        );
    }

    #[test]
    fn closed_form_matches_solver_for_covered_families() {
        for text in ["0111", "00001", "000111", "011001", "010011", "0110001", "011011"] {
            let ts = parse_string(text).unwrap();
            let cf = closed_form_spectrum(&ts).unwrap_or_else(|| panic!("{text} is covered"));
            assert_eq!(cf.total_multiplicity(), ts.n(), "size for {text}");
            let got = cf.expanded_sorted();
            let want = full_spectrum(&ts).unwrap().expanded_sorted();
            for (x, y) in got.iter().zip(&want) {
                assert!((x - y).abs() < 1e-10, "{text}: {x} vs {y}");
            }
        }
    }

    #[test]
    fn pineapple_closed_form_has_the_expected_surd() {
        // 011001: clique size 3, two pendants. The conjugate pair is
        // (-5 +- sqrt(265)) / 30, i.e. (1/6)(-1 +- sqrt(53/5)).
        let cf = cf_of("011001");
        let surds: Vec<_> = cf
            .entries
            .iter()
            .filter(|(v, _)| matches!(v, ClosedFormValue::Surd { .. }))
            .collect();
        assert_eq!(surds.len(), 2);
        for (value, mult) in surds {
            assert_eq!(*mult, 1);
            if let ClosedFormValue::Surd {
                offset,
                radicand,
                scale,
                ..
            } = value
            {
                assert_eq!(offset, &rat_int(-5));
                assert_eq!(radicand, &rat_int(265));
                assert_eq!(scale, &rat_int(30));
            }
        }
    }

    #[test]
    fn closed_form_absent_for_uncovered_shapes() {
        for text in ["001011", "0101011", "0011100011"] {
            assert!(closed_form_spectrum(&parse_string(text).unwrap()).is_none(), "{text}");
        }
    }

    #[test]
    fn classification_of_known_families() {
        let cases = [
            ("01", Family::Complete, 2),
            ("0111", Family::Complete, 2),
            ("0001", Family::Star, 3),
            ("000111", Family::Split, 4),
            ("01101", Family::CliquePendant, 4),
            ("0101", Family::CliquePendant, 4),
            ("011001", Family::Pineapple, 5),
            ("01011", Family::NestedCliques, 5),
            ("00101", Family::NestedStars, 5),
            ("0011100011", Family::Other, 7),
            ("0000001101", Family::Other, 6),
        ];
        for (text, family, distinct) in cases {
            let result = classify(&parse_string(text).unwrap());
            assert_eq!(result.family, family, "family of {text}");
            assert_eq!(result.distinct_count, distinct, "distinct of {text}");
        }
    }

    #[test]
    fn balanced_two_block_strings_are_reported_other() {
        let bf = bf_of("0000001101");
        assert!(is_balanced_k2(&bf));
        assert!(!is_balanced_k2(&bf_of("0011100011")));
        let result = classify(&parse_string("0000001101").unwrap());
        assert_eq!(result.family, Family::Other);
        assert_eq!(result.distinct_count, 6);
        assert_eq!(family_distinct_count(Family::BalancedK2), Some(6));
    }

    #[test]
    fn multiplicity_audit_on_a_generic_two_block_string() {
        let report = k2_multiplicity_check(&bf_of("0011100011")).unwrap();
        assert!(!report.condition);
        assert_eq!(report.observed_inv_n1, 1);
        assert_eq!(report.expected_inv_n1, 1);
        assert_eq!(report.observed_inv_t, 0);
        assert_eq!(report.corrected_multiplicity, 0);
        assert!(!report.quotient_has_inv_t);
        assert!(report.stated_rule_holds);
        assert!(report.corrected_rule_holds);
    }

    #[test]
    fn multiplicity_audit_separates_the_two_laws() {
        // s = (6, 1), t = (2, 1): the condition s_1 = s_2 (t t_1 - 1) + 1
        // holds, yet -1/t has multiplicity 1, not t_1 = 2. The corrected law
        // predicts exactly 1 (quotient copy only, no direct copies).
        let report = k2_multiplicity_check(&bf_of("0000001101")).unwrap();
        assert!(report.condition);
        assert_eq!(report.observed_inv_t, 1);
        assert_eq!(report.stated_multiplicity, 2);
        assert_eq!(report.corrected_multiplicity, 1);
        assert!(report.quotient_has_inv_t);
        assert!(!report.stated_rule_holds);
        assert!(report.corrected_rule_holds);
        assert_eq!(report.observed_inv_n1, 0);
        assert_eq!(report.expected_inv_n1, 0);
    }

    #[test]
    fn multiplicity_audit_needs_two_blocks() {
        assert_eq!(
            k2_multiplicity_check(&bf_of("0111")),
            Err(AnalysisError::NotTwoBlocks { k: 1 })
        );
    }

    #[test]
    fn multiplicity_audit_with_leading_single_zero() {
        // 0110011: s_1 = 1, so -1/t = -1/4 carries multiplicity t_1 = 2.
        let report = k2_multiplicity_check(&bf_of("0110011")).unwrap();
        assert!(report.condition);
        assert_eq!(report.observed_inv_t, 2);
        assert_eq!(report.stated_multiplicity, 2);
        assert_eq!(report.corrected_multiplicity, 2);
        assert!(report.quotient_has_inv_t);
        assert!(report.stated_rule_holds);
        assert!(report.corrected_rule_holds);
    }

    prop_compose! {
        fn arb_string()(mid in prop::collection::vec(any::<bool>(), 0..8)) -> ThresholdString {
            let mut bits = vec![0u8];
            bits.extend(mid.iter().map(|&b| b as u8));
            bits.push(1);
            ThresholdString::from_bits(bits).unwrap()
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn randic_closed_form_equals_edge_sum(ts in arb_string()) {
            let bf = block_form(&ts);
            let g = build_graph(&ts);
            prop_assert_eq!(randic_index(&bf), randic_index_direct(&g));
        }

        #[test]
        fn energy_sits_inside_its_bounds(ts in arb_string()) {
            let report = energy_report(&ts).unwrap();
            let lo = report.lower_bound.to_f64().unwrap();
            let hi = report.upper_bound.to_f64().unwrap();
            prop_assert!(lo <= report.energy + 1e-9);
            prop_assert!(report.energy <= hi + 1e-9);
        }

        #[test]
        fn lambda1_sits_inside_its_bracket(ts in arb_string()) {
            let bf = block_form(&ts);
            let bounds = lambda1_bounds(&bf);
            let lambda1 = full_spectrum(&ts).unwrap().expanded_sorted()[0];
            prop_assert!(bounds.lower.to_f64().unwrap() <= lambda1 + 1e-9);
            prop_assert!(lambda1 <= bounds.upper.to_f64().unwrap() + 1e-9);
        }

        #[test]
        fn family_claims_match_exact_distinct_counts(ts in arb_string()) {
            let result = classify(&ts);
            if let Some(expect) = family_distinct_count(result.family) {
                prop_assert_eq!(result.distinct_count, expect);
            } else {
                prop_assert!(result.distinct_count >= 6);
            }
        }

        #[test]
        fn distinct_positive_values_count_the_blocks(ts in arb_string()) {
            let bf = block_form(&ts);
            let cp = full_char_poly(&ts);
            prop_assert_eq!(crate::exact::distinct_positive_count(&cp), bf.k());
        }

        #[test]
        fn corrected_multiplicity_law_holds(ts in arb_string()) {
            let bf = block_form(&ts);
            if bf.k() == 2 {
                let report = k2_multiplicity_check(&bf).unwrap();
                prop_assert!(report.corrected_rule_holds);
            }
        }
    }
}
