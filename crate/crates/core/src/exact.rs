//! Exact big-rational linear algebra: matrices, characteristic polynomials,
//! determinants, and root counting.
//!
//! Everything in this module is exact. Floating point enters the crate only
//! through the iterative eigensolver and the reporting layer; all identity
//! checks (characteristic polynomials, determinants, inertia, multiplicities)
//! run over `BigRational` so equality means equality.

use crate::threshold::{BlockForm, Graph, ThresholdString};
use num::bigint::BigInt;
use num::{BigRational, One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

/// The scalar type used throughout: arbitrary-precision rationals.
pub type Rational = BigRational;

/// Shorthand for small rational constants.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Shorthand for integer constants.
pub fn rat_int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Canonical text form `numer/denom` with the reduced, positive denominator;
/// integers drop the `/1`. Reduced fractions are unique, so equal rationals
/// always produce equal strings (the property fingerprints rely on).
pub fn rational_string(r: &Rational) -> String {
    if r.denom() == &BigInt::one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("matrix must be square, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },
    #[error("length mismatch: got {found}, expected {expected}")]
    LengthMismatch { found: usize, expected: usize },
}

/// Dense matrix over the rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, ExactError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        for row in &rows {
            if row.len() != ncols {
                return Err(ExactError::LengthMismatch {
                    found: row.len(),
                    expected: ncols,
                });
            }
        }
        Ok(RationalMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = RationalMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        *out.get_mut(i, j) += a * b;
                    }
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    /// Lossy conversion for the floating-point solver and display layers.
    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_f64().unwrap()).collect())
            .collect()
    }

    /// Exact determinant by fraction-free-ish Gaussian elimination with
    /// partial pivoting (any nonzero pivot works over a field).
    pub fn determinant(&self) -> Result<Rational, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let pivot_row = match (col..n).find(|&r| !m.get(r, col).is_zero()) {
                Some(r) => r,
                None => return Ok(Rational::zero()),
            };
            if pivot_row != col {
                for j in 0..n {
                    let a = m.get(col, j).clone();
                    let b = m.get(pivot_row, j).clone();
                    *m.get_mut(col, j) = b;
                    *m.get_mut(pivot_row, j) = a;
                }
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det *= &pivot;
            for r in (col + 1)..n {
                let factor = m.get(r, col) / &pivot;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let sub = &factor * m.get(col, j);
                    *m.get_mut(r, j) -= sub;
                }
            }
        }
        Ok(det)
    }
}

/// Polynomial over the rationals, coefficients ascending by power. The zero
/// polynomial is the empty coefficient list; all constructors trim trailing
/// zeros so representations are unique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero polynomial; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat_int(i as i64))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Euclidean division: returns `(quotient, remainder)` with
    /// `self = q * div + r` and `deg r < deg div`. Panics on a zero divisor.
    pub fn divrem(&self, div: &Poly) -> (Poly, Poly) {
        assert!(!div.is_zero(), "division by the zero polynomial");
        if self.degree() < div.degree() || self.is_zero() {
            return (Poly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dd = div.degree();
        let lead = div.leading();
        let mut quot = vec![Rational::zero(); self.degree() - dd + 1];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] / &lead;
            quot[i - dd] = q.clone();
            for (j, c) in div.coeffs.iter().enumerate() {
                let sub = &q * c;
                rem[i - dd + j] -= sub;
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor via the Euclidean algorithm.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.leading();
        Poly::new(a.coeffs.iter().map(|c| c / &lead).collect())
    }

    /// Largest power of x dividing the polynomial (the multiplicity of the
    /// root 0); also returns the cofactor with that power stripped.
    fn strip_zero_roots(&self) -> (usize, Poly) {
        if self.is_zero() {
            return (0, Poly::zero());
        }
        let m = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (m, Poly::new(self.coeffs[m..].to_vec()))
    }
}

/// A monic characteristic polynomial. Wrapping keeps "monic of degree n"
/// invariant at the type level: products and constructors renormalize.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPoly {
    poly: Poly,
}

impl CharPoly {
    fn from_monic(poly: Poly) -> Self {
        debug_assert!(poly.leading().is_one(), "characteristic polynomials are monic");
        CharPoly { poly }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    /// Coefficients from x^n down to the constant term.
    pub fn coefficients_descending(&self) -> Vec<Rational> {
        self.poly.coeffs().iter().rev().cloned().collect()
    }

    /// Deterministic text key: degree-descending coefficients as `p/q`,
    /// comma-joined. Equal spectra give equal keys and vice versa.
    pub fn to_canonical_string(&self) -> String {
        self.coefficients_descending()
            .iter()
            .map(rational_string)
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.poly.eval(x)
    }

    /// Product of two characteristic polynomials (spectrum concatenation).
    pub fn mul(&self, other: &CharPoly) -> CharPoly {
        CharPoly::from_monic(self.poly.mul(&other.poly))
    }
}

/// Characteristic polynomial `det(xI - M)` by the Faddeev–LeVerrier
/// recurrence: division-free except for the scalar `c_k = -tr(M_k)/k`, so it
/// stays exact over the rationals and needs about n^4 multiplications.
pub fn char_poly(m: &RationalMatrix) -> Result<CharPoly, ExactError> {
    if m.rows() != m.cols() {
        return Err(ExactError::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk = m.clone();
    for k in 1..=n {
        let ck = -mk.trace() / rat_int(k as i64);
        coeffs[n - k] = ck.clone();
        if k < n {
            let mut shifted = mk;
            for i in 0..n {
                *shifted.get_mut(i, i) += &ck;
            }
            mk = m.mul(&shifted);
        }
    }
    Ok(CharPoly::from_monic(Poly::new(coeffs)))
}

/// `(x - root)^multiplicity` as a characteristic-polynomial factor.
pub fn linear_power(root: &Rational, multiplicity: usize) -> CharPoly {
    let base = Poly::new(vec![-root.clone(), Rational::one()]);
    let mut acc = Poly::new(vec![Rational::one()]);
    for _ in 0..multiplicity {
        acc = acc.mul(&base);
    }
    CharPoly::from_monic(acc)
}

/// Row-normalized adjacency matrix `D^{-1} A`: entry `(i, j)` is `1/deg(i)`
/// when `ij` is an edge, else 0. Defined whenever the graph has no isolated
/// vertex, which holds for every valid creation string.
pub fn normalized_adjacency(g: &Graph) -> RationalMatrix {
    let n = g.n();
    let mut m = RationalMatrix::zeros(n, n);
    for i in 0..n {
        let inv_deg = rat(1, g.degrees()[i] as i64);
        for j in 0..n {
            if g.has_edge(i, j) {
                *m.get_mut(i, j) = inv_deg.clone();
            }
        }
    }
    m
}

/// Characteristic polynomial of the full n-by-n normalized adjacency matrix,
/// computed directly from the graph. This is the brute-force reference the
/// structural route is checked against.
pub fn full_matrix_char_poly(g: &Graph) -> CharPoly {
    char_poly(&normalized_adjacency(g)).expect("normalized adjacency is square")
}

/// Characteristic polynomial of the normalized adjacency via the structural
/// route: the 2k-by-2k quotient supplies 2k eigenvalues, and the remaining
/// n - 2k come in closed form from repeated rows (see
/// [`crate::spectral::direct_eigenvalues`]).
pub fn full_char_poly(ts: &ThresholdString) -> CharPoly {
    let bf = crate::threshold::block_form(ts);
    let q = crate::quotient::build_quotient(&bf);
    let mut acc = char_poly(&q.cal_b_pi).expect("quotient matrix is square");
    for (root, mult) in crate::spectral::direct_eigenvalues(&bf).pairs() {
        acc = acc.mul(&linear_power(&root, mult));
    }
    acc
}

/// Signature of a spectrum: counts of negative, zero, and positive
/// eigenvalues (with multiplicity).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Inertia {
    pub n_minus: usize,
    pub n_zero: usize,
    pub n_plus: usize,
}

/// Closed-form inertia of the normalized adjacency of a threshold graph with
/// block form `0^{s1}1^{t1}..0^{sk}1^{tk}`: exactly `t` negative, `s - k`
/// zero, and `k` positive eigenvalues.
pub fn inertia_formula(bf: &BlockForm) -> Inertia {
    Inertia {
        n_minus: bf.t(),
        n_zero: bf.s() - bf.k(),
        n_plus: bf.k(),
    }
}

/// Multiplicity-weighted root signs of a characteristic polynomial, found
/// without solving for any root: strip the power of x, then peel squarefree
/// layers (each layer is counted once per remaining multiplicity) and count
/// sign changes of Sturm chains over (-inf, 0) and (0, +inf).
pub fn char_poly_inertia(cp: &CharPoly) -> Inertia {
    let (n_zero, mut p) = cp.poly().strip_zero_roots();
    let mut n_minus = 0usize;
    let mut n_plus = 0usize;
    while p.degree() >= 1 {
        let g = p.gcd(&p.derivative());
        let (squarefree, rem) = p.divrem(&g);
        debug_assert!(rem.is_zero());
        let (neg, pos) = sturm_sign_counts(&squarefree);
        n_minus += neg;
        n_plus += pos;
        p = g;
    }
    Inertia {
        n_minus,
        n_zero,
        n_plus,
    }
}

/// Counts the real roots of a squarefree polynomial with `p(0) != 0` in
/// (-inf, 0) and (0, +inf) via Sturm's theorem.
fn sturm_sign_counts(p: &Poly) -> (usize, usize) {
    debug_assert!(!p.eval(&Rational::zero()).is_zero());
    // Sturm chain: p, p', then negated remainders.
    let mut chain = vec![p.clone(), p.derivative()];
    while !chain.last().unwrap().is_zero() {
        let len = chain.len();
        let (_, r) = chain[len - 2].divrem(&chain[len - 1]);
        chain.push(Poly::new(r.coeffs().iter().map(|c| -c).collect()));
    }
    chain.pop();
    let sign_at_zero: Vec<i8> = chain.iter().map(|q| rational_sign(&q.eval(&Rational::zero()))).collect();
    // At +inf the sign is the leading coefficient's; at -inf it flips with
    // odd degree.
    let sign_at_pinf: Vec<i8> = chain.iter().map(|q| rational_sign(&q.leading())).collect();
    let sign_at_minf: Vec<i8> = chain
        .iter()
        .map(|q| {
            let s = rational_sign(&q.leading());
            if q.degree() % 2 == 1 {
                -s
            } else {
                s
            }
        })
        .collect();
    let v_minf = sign_changes(&sign_at_minf);
    let v_zero = sign_changes(&sign_at_zero);
    let v_pinf = sign_changes(&sign_at_pinf);
    (v_minf - v_zero, v_zero - v_pinf)
}

fn rational_sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

fn sign_changes(signs: &[i8]) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for &s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

/// Closed-form determinant of the normalized adjacency. Zero as soon as some
/// isolated run has length > 1 (repeated rows); otherwise every `s_i = 1` and
/// `det = (-1)^t (t1 .. tk) / (d1 .. dn)` over the product of all vertex
/// degrees.
pub fn det_a_formula(bf: &BlockForm) -> Rational {
    if bf.s_blocks.iter().any(|&s| s > 1) {
        return Rational::zero();
    }
    let mut numer = BigInt::one();
    for &t in &bf.t_blocks {
        numer *= BigInt::from(t);
    }
    if bf.t() % 2 == 1 {
        numer = -numer;
    }
    let mut denom = BigInt::one();
    for d in crate::threshold::vertex_degrees(bf) {
        denom *= BigInt::from(d);
    }
    Rational::new(numer, denom)
}

/// Closed-form determinant of the integer quotient matrix:
/// `(-1)^k s1 t1 s2 t2 .. sk tk`. Never zero, since every run is nonempty.
pub fn det_b_pi_formula(bf: &BlockForm) -> BigInt {
    let mut det = BigInt::one();
    for i in 0..bf.k() {
        det *= BigInt::from(bf.s_blocks[i]);
        det *= BigInt::from(bf.t_blocks[i]);
    }
    if bf.k() % 2 == 1 {
        det = -det;
    }
    det
}

/// Closed-form determinant of the row-normalized quotient:
/// `(-1)^k r1 r2 .. r_{2k}` where `r_i = |C_i| / d(C_i)` is the cell size
/// over the cell degree. Never zero, so the quotient never contributes a
/// zero eigenvalue.
pub fn det_cal_b_pi_formula(bf: &BlockForm) -> Rational {
    let sizes = bf.cell_sizes();
    let degs = bf.cell_degrees();
    let mut det = Rational::one();
    for i in 0..2 * bf.k() {
        det *= rat(sizes[i] as i64, degs[i] as i64);
    }
    if bf.k() % 2 == 1 {
        det = -det;
    }
    det
}

/// Number of distinct complex roots: `deg p - deg gcd(p, p')`.
pub fn distinct_count(cp: &CharPoly) -> usize {
    let p = cp.poly();
    let g = p.gcd(&p.derivative());
    p.degree() - g.degree()
}

/// Number of distinct roots in (0, +inf), via Sturm counts on the
/// squarefree part.
pub fn distinct_positive_count(cp: &CharPoly) -> usize {
    let (_, p) = cp.poly().strip_zero_roots();
    if p.degree() == 0 {
        return 0;
    }
    let g = p.gcd(&p.derivative());
    let (squarefree, _) = p.divrem(&g);
    sturm_sign_counts(&squarefree).1
}

/// Multiplicity of `root` as a root of the polynomial, by repeated synthetic
/// division; 0 when it is not a root.
pub fn root_multiplicity(cp: &CharPoly, root: &Rational) -> usize {
    let divisor = Poly::new(vec![-root.clone(), Rational::one()]);
    let mut p = cp.poly().clone();
    let mut mult = 0;
    while !p.is_zero() && p.eval(root).is_zero() {
        let (q, r) = p.divrem(&divisor);
        debug_assert!(r.is_zero());
        p = q;
        mult += 1;
    }
    mult
}

/// True when the polynomial has no repeated roots.
pub fn is_squarefree(cp: &CharPoly) -> bool {
    distinct_count(cp) == cp.degree()
}

/// Exact cospectrality of two strings: their graphs are cospectral iff the
/// full characteristic polynomials agree coefficient by coefficient.
/// Comparing different orders is refused rather than answered.
pub fn spectra_equal(a: &ThresholdString, b: &ThresholdString) -> Result<bool, ExactError> {
    if a.n() != b.n() {
        return Err(ExactError::LengthMismatch {
            found: b.n(),
            expected: a.n(),
        });
    }
    Ok(full_char_poly(a) == full_char_poly(b))
}
