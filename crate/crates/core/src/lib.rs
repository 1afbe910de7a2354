//! Spectral toolkit for connected threshold graphs.
//!
//! A threshold graph is built one vertex at a time, each new vertex arriving
//! either isolated or dominating everything before it. Recording those
//! choices as a binary creation string determines the graph completely, and
//! the string's block structure `0^{s_1} 1^{t_1} ... 0^{s_k} 1^{t_k}` drives
//! every computation here:
//!
//! - [`threshold`]: creation strings, block forms, degree formulas, and the
//!   graphs themselves;
//! - [`quotient`]: the 2k-cell equitable partition and its degree-normalized
//!   quotient matrix, which carries all eigenvalues the string does not give
//!   directly;
//! - [`spectral`]: a dense Jacobi eigensolver plus the structural route that
//!   splits the spectrum of the random-walk (degree-normalized adjacency)
//!   matrix into exact string-derived values and a small quotient;
//! - [`exact`]: big-rational matrices, characteristic polynomials, Sturm
//!   sign counts, determinant and inertia formulas — the ground truth the
//!   floating-point routes are checked against;
//! - [`analysis`]: energy and extreme-eigenvalue bounds, the general Randic
//!   index, closed-form spectra for one- and two-block families, and the
//!   classification of strings by their number of distinct eigenvalues;
//! - [`catalog`]: exhaustive enumeration, cospectral-pair search by exact
//!   fingerprint, and a batch verifier for every formula in the crate;
//! - [`output`]: JSON/CSV/text rendering for the `threshold-spectra` CLI.

pub mod analysis;
pub mod catalog;
pub mod exact;
pub mod output;
pub mod quotient;
pub mod spectral;
pub mod threshold;
