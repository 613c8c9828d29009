use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::unipoly::{monomial_str, push_term};
use super::{Rational, RingElem, RingError, UniPoly};

/// Dense bivariate polynomial over the rationals, recursive in `y`.
///
/// `ycoeffs[j]` is the coefficient of `y^j`, a polynomial in `x`. The
/// highest entry is nonzero unless the polynomial is zero, so equality is
/// structural and exact.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiPoly {
    ycoeffs: Vec<UniPoly>,
}

impl BiPoly {
    pub fn new(mut ycoeffs: Vec<UniPoly>) -> Self {
        while ycoeffs.last().is_some_and(UniPoly::is_zero) {
            ycoeffs.pop();
        }
        BiPoly { ycoeffs }
    }

    pub fn zero() -> Self {
        BiPoly {
            ycoeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        BiPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        BiPoly::new(vec![UniPoly::constant(c)])
    }

    pub fn x() -> Self {
        BiPoly::new(vec![UniPoly::var()])
    }

    pub fn y() -> Self {
        BiPoly::new(vec![UniPoly::zero(), UniPoly::one()])
    }

    /// `c * x^i * y^j`.
    pub fn monomial(c: Rational, i: usize, j: usize) -> Self {
        if c.is_zero() {
            return BiPoly::zero();
        }
        let mut ycoeffs = vec![UniPoly::zero(); j + 1];
        ycoeffs[j] = UniPoly::monomial(c, i);
        BiPoly { ycoeffs }
    }

    pub fn from_unipoly_x(p: &UniPoly) -> Self {
        BiPoly::new(vec![p.clone()])
    }

    /// Interpret a univariate polynomial as a polynomial in `y`.
    pub fn from_unipoly_y(p: &UniPoly) -> Self {
        BiPoly::new(
            p.coeffs()
                .iter()
                .map(|c| UniPoly::constant(c.clone()))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.ycoeffs.is_empty()
    }

    pub fn deg_y(&self) -> Option<usize> {
        self.ycoeffs.len().checked_sub(1)
    }

    pub fn deg_x(&self) -> Option<usize> {
        self.ycoeffs.iter().filter_map(UniPoly::degree).max()
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.ycoeffs
            .iter()
            .enumerate()
            .filter_map(|(j, c)| c.degree().map(|d| d + j))
            .max()
    }

    pub fn ycoeff(&self, j: usize) -> UniPoly {
        self.ycoeffs.get(j).cloned().unwrap_or_else(UniPoly::zero)
    }

    pub fn ycoeffs(&self) -> &[UniPoly] {
        &self.ycoeffs
    }

    /// Coefficient of `x^i`, read off as a polynomial in `y`.
    pub fn xcoeff(&self, i: usize) -> UniPoly {
        UniPoly::new(self.ycoeffs.iter().map(|c| c.coeff(i)).collect())
    }

    pub fn leading_ycoeff(&self) -> Option<&UniPoly> {
        self.ycoeffs.last()
    }

    /// Monic as a polynomial in `y`: leading coefficient is the constant 1.
    pub fn is_monic_y(&self) -> bool {
        self.leading_ycoeff() == Some(&UniPoly::one())
    }

    /// True when the polynomial is a rational constant (possibly zero).
    pub fn is_constant(&self) -> bool {
        self.total_degree().unwrap_or(0) == 0
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            Some(self.ycoeffs[0].coeff(0))
        } else {
            None
        }
    }

    /// The polynomial with `x` and `y` interchanged.
    pub fn swap_xy(&self) -> Self {
        let dx = match self.deg_x() {
            None => return BiPoly::zero(),
            Some(d) => d,
        };
        BiPoly::new((0..=dx).map(|i| self.xcoeff(i)).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            ycoeffs: self.ycoeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = BiPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Division in `y` by a monic divisor of positive `y`-degree.
    ///
    /// Returns `(quotient, remainder)` with `f = quotient*g + remainder`
    /// and `deg_y remainder < deg_y g`, exactly.
    pub fn divrem_y(&self, g: &BiPoly) -> Result<(BiPoly, BiPoly), RingError> {
        if !g.is_monic_y() {
            return Err(RingError::NonMonicDivisor);
        }
        let dg = g.deg_y().unwrap();
        if dg == 0 {
            return Err(RingError::ConstantDivisor);
        }
        let mut rem = self.clone();
        let mut quot = vec![UniPoly::zero(); self.deg_y().map_or(0, |d| d.saturating_sub(dg) + 1)];
        while let Some(dr) = rem.deg_y() {
            if dr < dg {
                break;
            }
            let factor = rem.ycoeffs[dr].clone();
            let shift = dr - dg;
            for (j, c) in g.ycoeffs.iter().enumerate() {
                let delta = &factor * c;
                let slot = &mut rem.ycoeffs[shift + j];
                *slot = &*slot - &delta;
            }
            while rem.ycoeffs.last().is_some_and(UniPoly::is_zero) {
                rem.ycoeffs.pop();
            }
            quot[shift] = factor;
        }
        Ok((BiPoly::new(quot), rem))
    }

    /// Evaluate at polynomial images of `x` and `y`, expanded and normalized.
    pub fn substitute(&self, image_x: &BiPoly, image_y: &BiPoly) -> BiPoly {
        // Horner in y; each x-coefficient is composed with image_x.
        let mut acc = BiPoly::zero();
        for c in self.ycoeffs.iter().rev() {
            acc = &(&acc * image_y) + &eval_unipoly_at(c, image_x);
        }
        acc
    }

    /// Evaluate at a pair of univariate polynomials (e.g. `x(t), y(t)`).
    pub fn eval_unipoly(&self, xv: &UniPoly, yv: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.ycoeffs.iter().rev() {
            acc = &(&acc * yv) + &eval_unipoly_at_unipoly(c, xv);
        }
        acc
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, xv: &Rational, yv: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.ycoeffs.iter().rev() {
            acc = acc * yv + c.eval(xv);
        }
        acc
    }

    /// Substitute a rational for `x`, leaving a polynomial in `y`.
    pub fn eval_x(&self, xv: &Rational) -> UniPoly {
        UniPoly::new(self.ycoeffs.iter().map(|c| c.eval(xv)).collect())
    }

    /// Terms as `(x_exp, y_exp, coeff)`, in the printing order: descending
    /// total degree, ties broken by descending `y`-degree.
    pub fn terms(&self) -> Vec<(usize, usize, Rational)> {
        let mut terms = Vec::new();
        for (j, c) in self.ycoeffs.iter().enumerate() {
            for (i, a) in c.coeffs().iter().enumerate() {
                if !a.is_zero() {
                    terms.push((i, j, a.clone()));
                }
            }
        }
        terms.sort_by_key(|&(i, j, _)| (std::cmp::Reverse(i + j), std::cmp::Reverse(j)));
        terms
    }
}

fn eval_unipoly_at(p: &UniPoly, image: &BiPoly) -> BiPoly {
    let mut acc = BiPoly::zero();
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * image) + &BiPoly::constant(c.clone());
    }
    acc
}

fn eval_unipoly_at_unipoly(p: &UniPoly, image: &UniPoly) -> UniPoly {
    let mut acc = UniPoly::zero();
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * image) + &UniPoly::constant(c.clone());
    }
    acc
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, j, c) in self.terms() {
            let xm = monomial_str("x", i);
            let ym = monomial_str("y", j);
            let mono = match (xm.is_empty(), ym.is_empty()) {
                (true, true) => String::new(),
                (false, true) => xm,
                (true, false) => ym,
                (false, false) => format!("{xm}*{ym}"),
            };
            push_term(&mut out, &c, &mono);
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let n = self.ycoeffs.len().max(rhs.ycoeffs.len());
        let mut ycoeffs = Vec::with_capacity(n);
        for j in 0..n {
            ycoeffs.push(&self.ycoeff(j) + &rhs.ycoeff(j));
        }
        BiPoly::new(ycoeffs)
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let n = self.ycoeffs.len().max(rhs.ycoeffs.len());
        let mut ycoeffs = Vec::with_capacity(n);
        for j in 0..n {
            ycoeffs.push(&self.ycoeff(j) - &rhs.ycoeff(j));
        }
        BiPoly::new(ycoeffs)
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let mut ycoeffs = vec![UniPoly::zero(); self.ycoeffs.len() + rhs.ycoeffs.len() - 1];
        for (i, a) in self.ycoeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.ycoeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let slot = &mut ycoeffs[i + j];
                *slot = &*slot + &(a * b);
            }
        }
        BiPoly::new(ycoeffs)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            ycoeffs: self.ycoeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl RingElem for BiPoly {
    fn ring_zero() -> Self {
        BiPoly::zero()
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::super::rat;
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn ypoly(pairs: &[(i64, usize, usize)]) -> BiPoly {
        let mut acc = BiPoly::zero();
        for &(c, i, j) in pairs {
            acc = &acc + &BiPoly::monomial(rat(c), i, j);
        }
        acc
    }

    #[test]
    fn divrem_trivial_examples() {
        // (y^2 + x, y) -> (y, x)
        let f = ypoly(&[(1, 0, 2), (1, 1, 0)]);
        let (q, r) = f.divrem_y(&BiPoly::y()).unwrap();
        assert_eq!(q, BiPoly::y());
        assert_eq!(r, BiPoly::x());

        // ((y^3 - x^2)^2 - x, y^3 - x^2) -> (y^3 - x^2, -x)
        let g = ypoly(&[(1, 0, 3), (-1, 2, 0)]);
        let f2 = &(&g * &g) - &BiPoly::x();
        let (q2, r2) = f2.divrem_y(&g).unwrap();
        assert_eq!(q2, g);
        assert_eq!(r2, -&BiPoly::x());
    }

    #[test]
    fn divrem_rejects_non_monic() {
        let g = ypoly(&[(2, 0, 1)]);
        assert_eq!(BiPoly::y().divrem_y(&g), Err(RingError::NonMonicDivisor));
        assert_eq!(
            BiPoly::y().divrem_y(&BiPoly::one()),
            Err(RingError::ConstantDivisor)
        );
    }

    #[test]
    fn substitute_identity_and_expansion() {
        let f = ypoly(&[(1, 0, 3), (-1, 2, 0)]);
        assert_eq!(f.substitute(&BiPoly::x(), &BiPoly::y()), f);

        // (xy, x+1, y-1) -> xy - x + y - 1
        let xy = ypoly(&[(1, 1, 1)]);
        let got = xy.substitute(
            &(&BiPoly::x() + &BiPoly::one()),
            &(&BiPoly::y() - &BiPoly::one()),
        );
        let want = ypoly(&[(1, 1, 1), (-1, 1, 0), (1, 0, 1), (-1, 0, 0)]);
        assert_eq!(got, want);
    }

    #[test]
    fn display_uses_session_term_order() {
        // descending total degree, then descending y-degree
        let f = ypoly(&[(1, 0, 6), (-2, 2, 3), (1, 4, 0), (-1, 1, 2)]);
        assert_eq!(f.to_string(), "y^6-2*x^2*y^3+x^4-x*y^2");
        let g = ypoly(&[(1, 0, 4), (1, 0, 3), (-1, 3, 0)]);
        assert_eq!(g.to_string(), "y^4+y^3-x^3");
    }

    #[test]
    fn swap_is_an_involution() {
        let f = ypoly(&[(1, 0, 3), (-1, 2, 0), (5, 1, 2)]);
        assert_eq!(f.swap_xy().swap_xy(), f);
        assert_eq!(
            ypoly(&[(1, 3, 0), (-1, 0, 2)]).swap_xy(),
            ypoly(&[(1, 0, 3), (-1, 2, 0)])
        );
    }

    fn small() -> impl Strategy<Value = BiPoly> {
        prop::collection::vec((-5i64..=5, 0usize..=5, 0usize..=5), 0..=6)
            .prop_map(|terms| ypoly(&terms))
    }

    fn tiny() -> impl Strategy<Value = BiPoly> {
        prop::collection::vec((-3i64..=3, 0usize..=1, 0usize..=1), 0..=3)
            .prop_map(|terms| ypoly(&terms))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn distributivity(f in small(), g in small(), h in small()) {
            prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
            prop_assert_eq!(&f * &g, &g * &f);
        }

        #[test]
        fn divrem_recomposes(f in small(), g in small()) {
            // force a monic divisor of positive y-degree
            let g = &BiPoly::y().pow(1 + g.deg_y().unwrap_or(0)) + &g;
            let (q, r) = f.divrem_y(&g).unwrap();
            prop_assert!(r.deg_y() < g.deg_y());
            prop_assert_eq!(&(&q * &g) + &r, f);
        }

        #[test]
        fn substitute_composes(
            f in small(), a in tiny(), b in tiny(), c in tiny(), d in tiny(),
        ) {
            let lhs = f.substitute(&a, &b).substitute(&c, &d);
            let rhs = f.substitute(&a.substitute(&c, &d), &b.substitute(&c, &d));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
