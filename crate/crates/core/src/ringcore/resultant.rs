use num_traits::{One, Zero};

use super::{BiPoly, Rational, UniPoly};

/// Sylvester resultant of `f` and `g` with respect to `y`.
///
/// Zero exactly when `f` and `g` share a factor of positive `y`-degree.
/// Conventions for degenerate `y`-degrees: if `deg_y f = 0` the result is
/// `f(x)^{deg_y g}` (and symmetrically), and the resultant of two
/// `y`-constants is 1 (empty Sylvester matrix).
///
/// Computed by evaluation at sample points where neither leading
/// `y`-coefficient vanishes (the Sylvester determinant specializes there),
/// followed by exact interpolation. The scalar resultants use a monic
/// remainder sequence, which keeps coefficient growth tame compared to
/// eliminating the polynomial-entry matrix directly.
pub fn resultant_y(f: &BiPoly, g: &BiPoly) -> UniPoly {
    let (df, dg) = match (f.deg_y(), g.deg_y()) {
        (None, _) | (_, None) => return UniPoly::zero(),
        (Some(a), Some(b)) => (a, b),
    };
    if df == 0 {
        return f.ycoeff(0).pow(dg);
    }
    if dg == 0 {
        return g.ycoeff(0).pow(df);
    }
    let dxf = f.deg_x().unwrap_or(0);
    let dxg = g.deg_x().unwrap_or(0);
    // deg_x of the resultant is at most this mixed bound
    let bound = dxf * dg + dxg * df;
    let lf = f.leading_ycoeff().unwrap();
    let lg = g.leading_ycoeff().unwrap();

    let mut points: Vec<(Rational, Rational)> = Vec::with_capacity(bound + 1);
    let mut k: i64 = 0;
    while points.len() < bound + 1 {
        let x0 = Rational::from_integer(k.into());
        // alternate 0, 1, -1, 2, -2, ... to keep magnitudes small
        k = if k > 0 { -k } else { -k + 1 };
        if lf.eval(&x0).is_zero() || lg.eval(&x0).is_zero() {
            continue;
        }
        let v = scalar_resultant(&f.eval_x(&x0), &g.eval_x(&x0));
        points.push((x0, v));
    }
    interpolate(&points)
}

/// Resultant of two univariate polynomials over the rationals.
///
/// Recursive Euclidean scheme with monic reduction:
/// `Res(A, cB) = c^{deg A} Res(A, B)` and for monic `B`,
/// `Res(A, B) = (-1)^{deg A deg B} Res(B, A mod B)`.
fn scalar_resultant(a: &UniPoly, b: &UniPoly) -> Rational {
    let da = match a.degree() {
        None => return Rational::zero(),
        Some(d) => d,
    };
    let db = match b.degree() {
        None => return Rational::zero(),
        Some(d) => d,
    };
    if db == 0 {
        return b.coeff(0).pow(da as i32);
    }
    if da == 0 {
        return a.coeff(0).pow(db as i32);
    }
    let lc = b.leading_coeff().unwrap().clone();
    let bm = b.scale(&(Rational::one() / &lc));
    let mut acc = lc.pow(da as i32);
    if (da * db) % 2 == 1 {
        acc = -acc;
    }
    let (_, r) = a.divrem(&bm);
    if r.is_zero() {
        return Rational::zero();
    }
    let dr = r.degree().unwrap();
    // Res(A, Bm) = (-1)^{da*db} lc(Bm)^{da-dr} Res(Bm, R); lc(Bm) = 1
    let _ = dr;
    acc * scalar_resultant(&bm, &r)
}

/// Newton-form interpolation through exact rational points.
fn interpolate(points: &[(Rational, Rational)]) -> UniPoly {
    // divided differences
    let n = points.len();
    let mut coef: Vec<Rational> = points.iter().map(|(_, v)| v.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &coef[i] - &coef[i - 1];
            let den = &points[i].0 - &points[i - level].0;
            coef[i] = num / den;
        }
    }
    // expand the Newton form
    let mut poly = UniPoly::zero();
    let mut basis = UniPoly::one();
    for (i, c) in coef.iter().enumerate() {
        poly = &poly + &basis.scale(c);
        if i + 1 < n {
            let lin = UniPoly::new(vec![-&points[i].0, Rational::one()]);
            basis = &basis * &lin;
        }
    }
    poly
}

#[cfg(test)]
mod tests {
    use super::super::{det_laplace, rat, RingElem};
    use super::*;
    use proptest::prelude::*;

    fn ypoly(pairs: &[(i64, usize, usize)]) -> BiPoly {
        let mut acc = BiPoly::zero();
        for &(c, i, j) in pairs {
            acc = &acc + &BiPoly::monomial(rat(c), i, j);
        }
        acc
    }

    /// Independent oracle: the Sylvester matrix over Q[x], expanded by
    /// Laplace cofactors. Exponential, test-sized inputs only.
    fn sylvester_direct(f: &BiPoly, g: &BiPoly) -> UniPoly {
        let df = f.deg_y().unwrap();
        let dg = g.deg_y().unwrap();
        if df == 0 {
            return f.ycoeff(0).pow(dg);
        }
        if dg == 0 {
            return g.ycoeff(0).pow(df);
        }
        let n = df + dg;
        let mut mat = vec![vec![UniPoly::ring_zero(); n]; n];
        for row in 0..dg {
            for (k, c) in (0..=df).map(|k| (k, f.ycoeff(df - k))) {
                mat[row][row + k] = c;
            }
        }
        for row in 0..df {
            for (k, c) in (0..=dg).map(|k| (k, g.ycoeff(dg - k))) {
                mat[dg + row][row + k] = c;
            }
        }
        det_laplace(&mat)
    }

    #[test]
    fn shared_factor_gives_zero() {
        let f = ypoly(&[(1, 0, 2), (-1, 2, 0)]); // y^2 - x^2
        let g = ypoly(&[(1, 0, 1), (-1, 1, 0)]); // y - x
        assert!(resultant_y(&f, &g).is_zero());
    }

    #[test]
    fn two_lines() {
        let f = ypoly(&[(1, 0, 1), (-1, 1, 0)]); // y - x
        let g = ypoly(&[(1, 0, 1), (1, 1, 0)]); // y + x
        let r = resultant_y(&f, &g);
        assert_eq!(r.degree(), Some(1));
        assert_eq!(r, UniPoly::monomial(rat(2), 1));
    }

    #[test]
    fn monic_constant_term_degree() {
        // deg_x Res(f, y) = deg_x of the y-constant term for monic f
        let g = ypoly(&[(1, 0, 3), (-1, 2, 0)]);
        let f = &(&g * &g) - &BiPoly::x(); // (y^3-x^2)^2 - x
        let r = resultant_y(&f, &BiPoly::y());
        assert_eq!(r.degree(), Some(4));
    }

    #[test]
    fn matches_direct_sylvester_on_goldens() {
        let g2 = ypoly(&[(1, 0, 3), (-1, 2, 0)]);
        let f = &(&g2 * &g2) - &ypoly(&[(1, 1, 2)]);
        for other in [
            BiPoly::y(),
            g2.clone(),
            ypoly(&[(1, 0, 1), (3, 2, 0), (-1, 0, 0)]),
            ypoly(&[(2, 1, 2), (1, 0, 0)]),
        ] {
            assert_eq!(resultant_y(&f, &other), sylvester_direct(&f, &other));
        }
    }

    fn small_bipoly() -> impl Strategy<Value = BiPoly> {
        prop::collection::vec((-4i64..=4, 0usize..=2, 0usize..=2), 1..=5)
            .prop_map(|terms| ypoly(&terms))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn interpolated_matches_direct(f in small_bipoly(), g in small_bipoly()) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            prop_assert_eq!(resultant_y(&f, &g), sylvester_direct(&f, &g));
        }

        #[test]
        fn multiplicative_in_monic_factors(g in small_bipoly(), h in small_bipoly()) {
            prop_assume!(!g.is_zero() && !h.is_zero());
            // make the left argument monic in y so degrees behave
            let f = &BiPoly::y().pow(3) + &ypoly(&[(1, 1, 1), (-2, 2, 0)]);
            let lhs = resultant_y(&f, &(&g * &h));
            let rhs = &resultant_y(&f, &g) * &resultant_y(&f, &h);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
