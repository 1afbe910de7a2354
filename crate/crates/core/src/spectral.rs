//! Spectra of the normalized adjacency: closed-form eigenpairs from repeated
//! rows, a symmetric Jacobi eigensolver for the quotient, and assembly of
//! the full eigenvalue list.
//!
//! The matrix `D^{-1} A` of a threshold graph decomposes: vertices inside one
//! run have identical rows up to the run's internal pattern, which yields
//! `n - 2k` eigenvalues (and eigenvectors) in closed form, and the remaining
//! `2k` eigenvalues are those of the run quotient. The quotient is handed to
//! the eigensolver in its symmetric similar form, so plain rotations apply.

use crate::exact::{rat, Rational};
use crate::quotient::{build_quotient, symmetrized_quotient, QuotientSystem};
use crate::threshold::{block_form, BlockForm, Graph, ThresholdString};
use num::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

/// Default convergence tolerance for the off-diagonal Frobenius norm.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Hard cap on Jacobi sweeps; cyclic Jacobi converges quadratically, so
/// hitting this indicates a malformed input rather than a hard problem.
pub const MAX_SWEEPS: usize = 100;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("matrix is not symmetric: |a[i][j] - a[j][i]| up to {defect:e}")]
    NotSymmetric { defect: f64 },
    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("no repeated-row eigenvectors: every run has length 1")]
    NoDirectEigenvectors,
}

/// Where an eigenvalue in an assembled spectrum came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Closed form read off the creation string (repeated rows).
    DirectString,
    /// Root of the 2k-by-2k quotient.
    Quotient,
    /// Dense eigensolve of the full n-by-n matrix (reference route).
    Oracle,
}

/// An eigenvalue, exact when a closed form is available.
#[derive(Debug, Clone, PartialEq)]
pub enum SpectralValue {
    Exact(Rational),
    Approx(f64),
}

impl SpectralValue {
    pub fn approx(&self) -> f64 {
        match self {
            SpectralValue::Exact(r) => r.to_f64().unwrap(),
            SpectralValue::Approx(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            SpectralValue::Exact(r) => Some(r),
            SpectralValue::Approx(_) => None,
        }
    }
}

/// One eigenvalue with its multiplicity and origin.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumEntry {
    pub value: SpectralValue,
    pub multiplicity: usize,
    pub provenance: Provenance,
}

/// A multiset of eigenvalues, entries ascending by value. Entries are kept
/// as produced (an exact closed-form value and a nearby solver value are not
/// merged), so multiplicities always sum to the matrix dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    entries: Vec<SpectrumEntry>,
}

impl Spectrum {
    pub fn new(mut entries: Vec<SpectrumEntry>) -> Self {
        entries.sort_by(|a, b| a.value.approx().total_cmp(&b.value.approx()));
        Spectrum { entries }
    }

    pub fn entries(&self) -> &[SpectrumEntry] {
        &self.entries
    }

    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// All eigenvalues as floats, repeated by multiplicity, ascending.
    pub fn expanded_sorted(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.total_multiplicity());
        for e in &self.entries {
            out.extend(std::iter::repeat(e.value.approx()).take(e.multiplicity));
        }
        out.sort_by(f64::total_cmp);
        out
    }

    /// Largest eigenvalue (the stochastic value 1 for a full spectrum).
    pub fn max_value(&self) -> Option<f64> {
        self.entries.last().map(|e| e.value.approx())
    }
}

/// The closed-form eigenvalues read directly off the block form, with exact
/// multiplicities. `n - 2k` values in total:
/// zero with multiplicity `s - k` (one short of each isolated run), and
/// `-1/(t + S_i - 1)` with multiplicity `t_i - 1` for each dominating run.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectEigenSet {
    values: Vec<(Rational, usize)>,
}

impl DirectEigenSet {
    /// The `(eigenvalue, multiplicity)` pairs, zero first.
    pub fn pairs(&self) -> Vec<(Rational, usize)> {
        self.values.clone()
    }

    /// Total multiplicity, always `n - 2k`.
    pub fn total(&self) -> usize {
        self.values.iter().map(|&(_, m)| m).sum()
    }
}

/// Reads the repeated-row eigenvalues off the block form.
pub fn direct_eigenvalues(bf: &BlockForm) -> DirectEigenSet {
    let mut values = Vec::new();
    let zero_mult = bf.s() - bf.k();
    if zero_mult > 0 {
        values.push((Rational::zero(), zero_mult));
    }
    let t = bf.t();
    for i in 1..=bf.k() {
        let ti = bf.t_blocks[i - 1];
        if ti > 1 {
            values.push((rat(-1, (t + bf.s_prefix(i) - 1) as i64), ti - 1));
        }
    }
    DirectEigenSet { values }
}

/// Exact eigenvectors for the repeated-row eigenvalues. Within a run of
/// length `m`, the `j`-th difference vector (`j = 2..m`) has ones on the
/// run's first `j - 1` vertices, `-(j - 1)` on its `j`-th vertex, and zeros
/// elsewhere; isolated runs carry eigenvalue 0 and dominating runs carry
/// `-1/d` for the run's common degree `d`. Distinct vectors are orthogonal
/// under the degree inner product `<u, v> = sum d_i u_i v_i`.
pub fn direct_eigenvectors(
    bf: &BlockForm,
) -> Result<Vec<(Rational, Vec<Rational>)>, SpectralError> {
    let n = bf.n();
    let sizes = bf.cell_sizes();
    let degrees = bf.cell_degrees();
    let mut out = Vec::new();
    let mut start = 0usize; // 0-based first vertex of the current cell
    for (idx, &size) in sizes.iter().enumerate() {
        let eigenvalue = if idx % 2 == 0 {
            Rational::zero()
        } else {
            rat(-1, degrees[idx] as i64)
        };
        for j in 2..=size {
            let mut v = vec![Rational::zero(); n];
            for slot in v.iter_mut().skip(start).take(j - 1) {
                *slot = Rational::from_integer(1.into());
            }
            v[start + j - 1] = Rational::from_integer((-((j as i64) - 1)).into());
            out.push((eigenvalue.clone(), v));
        }
        start += size;
    }
    if out.is_empty() {
        return Err(SpectralError::NoDirectEigenvectors);
    }
    Ok(out)
}

fn off_diagonal_frobenius(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += m[i][j] * m[i][j];
            }
        }
    }
    sum.sqrt()
}

/// Full symmetric eigensolve by cyclic Jacobi rotations. Returns the
/// eigenvalues ascending and the matching orthonormal eigenvectors
/// (`vectors[j]` pairs with `values[j]`). Fails on asymmetric input or if
/// the off-diagonal mass is not below `tol` within [`MAX_SWEEPS`] sweeps.
pub fn jacobi_eigen(
    matrix: &[Vec<f64>],
    tol: f64,
) -> Result<(Vec<f64>, Vec<Vec<f64>>), SpectralError> {
    let n = matrix.len();
    let mut defect = 0.0f64;
    for i in 0..n {
        assert_eq!(matrix[i].len(), n, "matrix must be square");
        for j in 0..n {
            defect = defect.max((matrix[i][j] - matrix[j][i]).abs());
        }
    }
    if defect > 1e-12 {
        return Err(SpectralError::NotSymmetric { defect });
    }

    let mut m: Vec<Vec<f64>> = matrix.to_vec();
    let mut v = vec![vec![0.0f64; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }

    for _sweep in 0..MAX_SWEEPS {
        if off_diagonal_frobenius(&m) <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p][q];
                if apq == 0.0 {
                    continue;
                }
                // Classic symmetric Schur rotation: pick the angle that
                // annihilates the (p, q) entry, through the stable
                // half-angle form.
                let tau = (m[q][q] - m[p][p]) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (tau - (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for i in 0..n {
                    let aip = m[i][p];
                    let aiq = m[i][q];
                    m[i][p] = c * aip - s * aiq;
                    m[i][q] = s * aip + c * aiq;
                }
                for j in 0..n {
                    let apj = m[p][j];
                    let aqj = m[q][j];
                    m[p][j] = c * apj - s * aqj;
                    m[q][j] = s * apj + c * aqj;
                }
                for row in v.iter_mut() {
                    let vip = row[p];
                    let viq = row[q];
                    row[p] = c * vip - s * viq;
                    row[q] = s * vip + c * viq;
                }
            }
        }
    }
    if off_diagonal_frobenius(&m) > tol {
        return Err(SpectralError::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| m[a][a].total_cmp(&m[b][b]));
    let values = order.iter().map(|&i| m[i][i]).collect();
    let vectors = order
        .iter()
        .map(|&col| (0..n).map(|row| v[row][col]).collect())
        .collect();
    Ok((values, vectors))
}

/// Eigenvalues only, ascending, at the given tolerance.
pub fn jacobi_eigenvalues(matrix: &[Vec<f64>], tol: f64) -> Result<Vec<f64>, SpectralError> {
    jacobi_eigen(matrix, tol).map(|(values, _)| values)
}

/// The 2k quotient eigenvalues, ascending. All simple; the largest is the
/// stochastic eigenvalue 1 (up to solver precision).
pub fn quotient_spectrum(qs: &QuotientSystem) -> Result<Vec<f64>, SpectralError> {
    jacobi_eigenvalues(&symmetrized_quotient(qs), DEFAULT_TOL)
}

/// Assembles the full n-eigenvalue spectrum from the structural route:
/// quotient roots (the largest pinned to the exact stochastic value 1) plus
/// the closed-form repeated-row values.
pub fn full_spectrum(ts: &ThresholdString) -> Result<Spectrum, SpectralError> {
    let bf = block_form(ts);
    let q = build_quotient(&bf);
    let roots = quotient_spectrum(&q)?;
    let mut entries = Vec::new();
    let last = roots.len() - 1;
    for (i, x) in roots.iter().enumerate() {
        let value = if i == last {
            SpectralValue::Exact(Rational::from_integer(1.into()))
        } else {
            SpectralValue::Approx(*x)
        };
        entries.push(SpectrumEntry {
            value,
            multiplicity: 1,
            provenance: Provenance::Quotient,
        });
    }
    for (root, mult) in direct_eigenvalues(&bf).pairs() {
        entries.push(SpectrumEntry {
            value: SpectralValue::Exact(root),
            multiplicity: mult,
            provenance: Provenance::DirectString,
        });
    }
    Ok(Spectrum::new(entries))
}

/// The symmetric degree-scaled adjacency `D^{-1/2} A D^{-1/2}`, similar to
/// the row-normalized adjacency and therefore cospectral with it.
pub fn randic_matrix(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.n();
    let inv_sqrt: Vec<f64> = g.degrees().iter().map(|&d| 1.0 / (d as f64).sqrt()).collect();
    let mut m = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in 0..n {
            if g.has_edge(i, j) {
                m[i][j] = inv_sqrt[i] * inv_sqrt[j];
            }
        }
    }
    m
}

/// Reference route: dense eigensolve of the full n-by-n symmetric form.
/// Every entry is a solver value with multiplicity 1.
pub fn oracle_spectrum(g: &Graph) -> Result<Spectrum, SpectralError> {
    let values = jacobi_eigenvalues(&randic_matrix(g), DEFAULT_TOL)?;
    Ok(Spectrum::new(
        values
            .into_iter()
            .map(|x| SpectrumEntry {
                value: SpectralValue::Approx(x),
                multiplicity: 1,
                provenance: Provenance::Oracle,
            })
            .collect(),
    ))
}

/// Maps a spectrum of the normalized adjacency to the spectrum of the
/// normalized Laplacian `I - D^{-1} A`: every eigenvalue goes to `1 - x`,
/// exactness and provenance preserved.
pub fn to_normalized_laplacian(spectrum: &Spectrum) -> Spectrum {
    Spectrum::new(
        spectrum
            .entries()
            .iter()
            .map(|e| SpectrumEntry {
                value: match &e.value {
                    SpectralValue::Exact(r) => {
                        SpectralValue::Exact(Rational::from_integer(1.into()) - r)
                    }
                    SpectralValue::Approx(x) => SpectralValue::Approx(1.0 - x),
                },
                multiplicity: e.multiplicity,
                provenance: e.provenance,
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{normalized_adjacency, rat_int};
    use crate::threshold::{build_graph, parse_string, vertex_degrees};
    use proptest::prelude::*;

    fn bf_of(text: &str) -> BlockForm {
        block_form(&parse_string(text).unwrap())
    }

    #[test]
    fn direct_values_of_two_block_example() {
        // 0011100011: zero with multiplicity 3 and the two clique values
        // -1/6 (x2), -1/9 (x1); six values in all (n - 2k = 10 - 4).
        let set = direct_eigenvalues(&bf_of("0011100011"));
        assert_eq!(
            set.pairs(),
            vec![
                (rat_int(0), 3),
                (rat(-1, 6), 2),
                (rat(-1, 9), 1),
            ]
        );
        assert_eq!(set.total(), 6);
    }

    #[test]
    fn alternating_string_has_no_direct_values() {
        let set = direct_eigenvalues(&bf_of("010101"));
        assert_eq!(set.total(), 0);
        assert_eq!(
            direct_eigenvectors(&bf_of("010101")),
            Err(SpectralError::NoDirectEigenvectors)
        );
    }

    #[test]
    fn direct_eigenvectors_are_exact_eigenvectors() {
        for text in ["0011100011", "0001", "011011", "0000001101"] {
            let ts = parse_string(text).unwrap();
            let bf = block_form(&ts);
            let na = normalized_adjacency(&build_graph(&ts));
            let pairs = direct_eigenvectors(&bf).unwrap();
            assert_eq!(pairs.len(), bf.n() - 2 * bf.k(), "count for {text}");
            for (lambda, v) in &pairs {
                let image = na.mul_vec(v);
                let scaled: Vec<Rational> = v.iter().map(|x| lambda * x).collect();
                assert_eq!(image, scaled, "eigenpair of {text}");
            }
            // Degree inner product orthogonality across all pairs.
            let degs = vertex_degrees(&bf);
            for a in 0..pairs.len() {
                for b in (a + 1)..pairs.len() {
                    let dot: Rational = (0..bf.n())
                        .map(|i| rat_int(degs[i] as i64) * &pairs[a].1[i] * &pairs[b].1[i])
                        .sum();
                    assert_eq!(dot, rat_int(0), "pair ({a},{b}) of {text}");
                }
            }
        }
    }

    #[test]
    fn jacobi_solves_a_known_matrix() {
        // [[2,1],[1,2]] has eigenvalues 1 and 3 with vectors (1,-1), (1,1).
        let m = vec![vec![2.0, 1.0], vec![1.0, 2.0]];
        let (values, vectors) = jacobi_eigen(&m, DEFAULT_TOL).unwrap();
        assert!((values[0] - 1.0).abs() < 1e-12);
        assert!((values[1] - 3.0).abs() < 1e-12);
        for (x, v) in values.iter().zip(&vectors) {
            let image = [
                m[0][0] * v[0] + m[0][1] * v[1],
                m[1][0] * v[0] + m[1][1] * v[1],
            ];
            assert!((image[0] - x * v[0]).abs() < 1e-12);
            assert!((image[1] - x * v[1]).abs() < 1e-12);
        }
    }

    #[test]
    fn jacobi_leaves_diagonal_matrices_alone() {
        let m = vec![
            vec![3.0, 0.0, 0.0],
            vec![0.0, -1.0, 0.0],
            vec![0.0, 0.0, 2.0],
        ];
        let values = jacobi_eigenvalues(&m, DEFAULT_TOL).unwrap();
        assert_eq!(values, vec![-1.0, 2.0, 3.0]);
    }

    #[test]
    fn star_oracle_spectrum_is_plus_minus_one_and_zeros() {
        let g = build_graph(&parse_string("0001").unwrap());
        let values = oracle_spectrum(&g).unwrap().expanded_sorted();
        let expect = [-1.0, 0.0, 0.0, 1.0];
        for (got, want) in values.iter().zip(expect) {
            assert!((got - want).abs() < 1e-12, "got {got}, want {want}");
        }
    }

    #[test]
    fn jacobi_rejects_asymmetric_input() {
        let m = vec![vec![0.0, 1.0], vec![0.5, 0.0]];
        match jacobi_eigen(&m, DEFAULT_TOL) {
            Err(SpectralError::NotSymmetric { defect }) => {
                assert!((defect - 0.5).abs() < 1e-15)
            }
            other => panic!("expected symmetry failure, got {other:?}"),
        }
    }

    #[test]
    fn quotient_spectrum_of_two_block_example() {
        let q = build_quotient(&bf_of("0011100011"));
        let roots = quotient_spectrum(&q).unwrap();
        let expect = [-0.606337, -0.307167, 0.357948, 1.0];
        assert_eq!(roots.len(), 4);
        for (got, want) in roots.iter().zip(expect) {
            assert!((got - want).abs() < 5e-6, "got {got}, want {want}");
        }
    }

    #[test]
    fn full_spectrum_matches_dense_reference() {
        for text in ["01", "0101", "0011100011", "0001011", "0000001101"] {
            let ts = parse_string(text).unwrap();
            let structural = full_spectrum(&ts).unwrap();
            assert_eq!(structural.total_multiplicity(), ts.n(), "size for {text}");
            assert_eq!(structural.max_value(), Some(1.0), "stochastic value for {text}");
            let dense = oracle_spectrum(&build_graph(&ts)).unwrap();
            let a = structural.expanded_sorted();
            let b = dense.expanded_sorted();
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() < 1e-9, "{text}: {x} vs {y}");
            }
        }
    }

    #[test]
    fn laplacian_map_flips_and_shifts() {
        let ts = parse_string("0111").unwrap();
        let spec = full_spectrum(&ts).unwrap();
        let lap = to_normalized_laplacian(&spec);
        assert_eq!(lap.total_multiplicity(), 4);
        let values = lap.expanded_sorted();
        // K4 normalized adjacency spectrum {1, -1/3^3} maps to {0, 4/3^3}.
        assert!((values[0] - 0.0).abs() < 1e-12);
        for v in &values[1..] {
            assert!((v - 4.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn jacobi_backward_error_is_small() {
        let g = build_graph(&parse_string("0011100011").unwrap());
        let m = randic_matrix(&g);
        let n = m.len();
        let (values, vectors) = jacobi_eigen(&m, DEFAULT_TOL).unwrap();
        let mut frob_m = 0.0f64;
        let mut frob_resid = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                frob_m += m[i][j] * m[i][j];
            }
        }
        for (x, v) in values.iter().zip(&vectors) {
            for i in 0..n {
                let image: f64 = (0..n).map(|j| m[i][j] * v[j]).sum();
                let r = image - x * v[i];
                frob_resid += r * r;
            }
        }
        assert!(frob_resid.sqrt() <= 1e-10 * frob_m.sqrt().max(1.0));
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
        fn structural_spectrum_matches_dense(ts in arb_string()) {
            let structural = full_spectrum(&ts).unwrap().expanded_sorted();
            let dense = oracle_spectrum(&build_graph(&ts)).unwrap().expanded_sorted();
            prop_assert_eq!(structural.len(), ts.n());
            for (x, y) in structural.iter().zip(&dense) {
                prop_assert!((x - y).abs() < 1e-8);
            }
        }

        #[test]
        fn spectrum_sums_to_trace_zero(ts in arb_string()) {
            // The normalized adjacency has zero diagonal, so the eigenvalues
            // sum to zero.
            let total: f64 = full_spectrum(&ts).unwrap().expanded_sorted().iter().sum();
            prop_assert!(total.abs() < 1e-9);
        }

        #[test]
        fn direct_total_is_n_minus_2k(ts in arb_string()) {
            let bf = block_form(&ts);
            prop_assert_eq!(direct_eigenvalues(&bf).total(), bf.n() - 2 * bf.k());
        }

        #[test]
        fn values_live_in_minus_one_one(ts in arb_string()) {
            let spectrum = full_spectrum(&ts).unwrap();
            let values = spectrum.expanded_sorted();
            prop_assert!(values[0] >= -1.0 - 1e-12);
            prop_assert_eq!(*values.last().unwrap(), 1.0);
            // The stochastic eigenvalue is simple on a connected graph.
            let near_one = values.iter().filter(|x| (*x - 1.0).abs() < 1e-9).count();
            prop_assert_eq!(near_one, 1);
        }

        #[test]
        fn minus_one_appears_only_for_the_star(ts in arb_string()) {
            // -1 in the spectrum forces bipartiteness, and the star is the
            // only connected bipartite threshold graph.
            let bf = block_form(&ts);
            let is_star = bf.k() == 1 && bf.t() == 1 && bf.n() >= 2;
            let lambda1 = full_spectrum(&ts).unwrap().expanded_sorted()[0];
            prop_assert_eq!((lambda1 + 1.0).abs() < 1e-9, is_star);
        }
    }
}
