//! Exact arithmetic kernel: rationals, univariate and bivariate polynomials.
//!
//! [`UniPoly`] is a dense list of rational coefficients indexed by exponent
//! (the variable is `x` or `t` depending on context). [`BiPoly`] is a dense
//! list of [`UniPoly`] coefficients indexed by the exponent of `y`. Both
//! keep a normalized representation (no trailing zero coefficients), so
//! structural equality is mathematical equality and golden tests can compare
//! exactly. The degree of the zero polynomial is `None`, never a sentinel
//! integer.

mod bipoly;
mod resultant;
mod unipoly;

pub use bipoly::BiPoly;
pub use resultant::resultant_y;
pub use unipoly::UniPoly;

use thiserror::Error;

/// Scalar coefficients: arbitrary-precision rationals, always reduced,
/// denominator positive, zero stored as 0/1.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer as a [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for the fraction `p/q` as a [`Rational`]. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("divisor must be monic in y")]
    NonMonicDivisor,
    #[error("divisor must have positive degree in y")]
    ConstantDivisor,
}

/// Minimal ring interface for the dense determinant helper.
pub(crate) trait RingElem: Clone {
    fn ring_zero() -> Self;
    fn ring_add(&self, other: &Self) -> Self;
    fn ring_mul(&self, other: &Self) -> Self;
    fn ring_neg(&self) -> Self;
    fn ring_is_zero(&self) -> bool;
}

/// Determinant by Laplace expansion with memoization on column subsets.
///
/// Exponential in the dimension, but exact over any ring and entirely
/// division-free; fine for the Sylvester matrices of desk-scale inputs
/// (dimension at most a dozen or so).
pub(crate) fn det_laplace<T: RingElem>(mat: &[Vec<T>]) -> T {
    let n = mat.len();
    if n == 0 {
        panic!("determinant of empty matrix");
    }
    debug_assert!(mat.iter().all(|row| row.len() == n));
    // minors[s] = determinant of the last popcount(s) rows on the columns in s
    let mut minors: Vec<Option<T>> = vec![None; 1 << n];
    for s in 1u32..1 << n {
        let size = s.count_ones() as usize;
        let row = n - size;
        let mut acc = T::ring_zero();
        let mut sign_pos = 0usize;
        for (j, entry) in mat[row].iter().enumerate() {
            if s & (1 << j) == 0 {
                continue;
            }
            if !entry.ring_is_zero() {
                let sub = s & !(1 << j);
                let minor = if sub == 0 {
                    None
                } else {
                    minors[sub as usize].clone()
                };
                let term = match minor {
                    Some(m) => entry.ring_mul(&m),
                    None => entry.clone(),
                };
                acc = if sign_pos.is_multiple_of(2) {
                    acc.ring_add(&term)
                } else {
                    acc.ring_add(&term.ring_neg())
                };
            }
            sign_pos += 1;
        }
        minors[s as usize] = Some(acc);
    }
    minors[(1usize << n) - 1]
        .clone()
        .expect("full minor computed")
}
