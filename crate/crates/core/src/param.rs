//! Polynomial parametrizations: implicitization by resultants,
//! intersection degrees through the parametrization, and semigroup
//! cross-checks.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::criterion::{one_place_semigroup, Rejection, ValueData};
use crate::ringcore::{det_laplace, resultant_y, BiPoly, Rational, UniPoly};
use crate::semigroup::NumSgp;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("coordinate polynomials must be nonconstant")]
    ConstantCoordinate,
    #[error("coordinate polynomials must have distinct t-degrees")]
    EqualDegrees,
    #[error("parametrization is not faithful: it factors through a proper reparametrization")]
    NotFaithful,
    #[error("resultant did not normalize to a y-monic generator")]
    Degenerate,
    #[error("polynomial vanishes on the curve")]
    OnCurve,
    #[error(transparent)]
    Rejected(#[from] Rejection),
}

/// A polynomial parametrization `t -> (x(t), y(t))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parametrization {
    xt: UniPoly,
    yt: UniPoly,
}

impl Parametrization {
    pub fn new(xt: UniPoly, yt: UniPoly) -> Result<Self, ParamError> {
        if xt.degree().unwrap_or(0) == 0 || yt.degree().unwrap_or(0) == 0 {
            return Err(ParamError::ConstantCoordinate);
        }
        if xt.degree() == yt.degree() {
            return Err(ParamError::EqualDegrees);
        }
        Ok(Parametrization { xt, yt })
    }

    pub fn xt(&self) -> &UniPoly {
        &self.xt
    }

    pub fn yt(&self) -> &UniPoly {
        &self.yt
    }

    /// Faithful when the only generic coincidences `x(t) = x(s), y(t) = y(s)`
    /// lie on the diagonal: the divided differences have no common component,
    /// which the resultant in `t` detects.
    pub fn is_faithful(&self) -> bool {
        let dx = divided_difference(&self.xt);
        let dy = divided_difference(&self.yt);
        !resultant_y(&dx, &dy).is_zero()
    }
}

/// `(p(t) - p(s)) / (t - s)` as a polynomial in `(s, t)`, encoded with `s`
/// in the `x` slot and `t` in the `y` slot.
fn divided_difference(p: &UniPoly) -> BiPoly {
    let mut acc = BiPoly::zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() || k == 0 {
            continue;
        }
        // t^k - s^k = (t - s) * Σ_{a+b=k-1} t^a s^b
        for a in 0..k {
            acc = &acc + &BiPoly::monomial(c.clone(), k - 1 - a, a);
        }
    }
    acc
}

/// The implicit equation of the parametrized curve: the resultant in `t` of
/// `(x - x(t), y - y(t))`, normalized monic in `y`.
///
/// The result vanishes identically on the parametrization. Non-faithful
/// parametrizations would produce a proper power of the generator and are
/// refused instead.
pub fn implicitize(p: &Parametrization) -> Result<BiPoly, ParamError> {
    if !p.is_faithful() {
        return Err(ParamError::NotFaithful);
    }
    let n = p.xt.degree().unwrap();
    let m = p.yt.degree().unwrap();
    // Sylvester matrix in t of A = x(t) - x and B = y(t) - y over Q[x, y]
    let dim = n + m;
    let coeff_a = |k: usize| -> BiPoly {
        let c = BiPoly::constant(p.xt.coeff(k));
        if k == 0 {
            &c - &BiPoly::x()
        } else {
            c
        }
    };
    let coeff_b = |k: usize| -> BiPoly {
        let c = BiPoly::constant(p.yt.coeff(k));
        if k == 0 {
            &c - &BiPoly::y()
        } else {
            c
        }
    };
    let mut mat = vec![vec![BiPoly::zero(); dim]; dim];
    for row in 0..m {
        for k in 0..=n {
            mat[row][row + k] = coeff_a(n - k);
        }
    }
    for row in 0..n {
        for k in 0..=m {
            mat[m + row][row + k] = coeff_b(m - k);
        }
    }
    let res = det_laplace(&mat);
    let lead = match res.leading_ycoeff().map(|l| (l.degree(), l.coeff(0))) {
        Some((Some(0), c)) => c,
        _ => return Err(ParamError::Degenerate),
    };
    let f = res.scale(&(Rational::one() / lead));
    if f.deg_y() != Some(n) || f.deg_x() != Some(m) {
        return Err(ParamError::Degenerate);
    }
    // kernel property: the generator vanishes on the parametrization
    assert!(
        f.eval_unipoly(&p.xt, &p.yt).is_zero(),
        "implicit equation does not vanish on the parametrization"
    );
    Ok(f)
}

/// Intersection degree of `h` with the parametrized curve: the `t`-degree
/// of `h(x(t), y(t))`.
pub fn int_param(p: &Parametrization, h: &BiPoly) -> Result<u64, ParamError> {
    let pulled = h.eval_unipoly(&p.xt, &p.yt);
    match pulled.degree() {
        None => Err(ParamError::OnCurve),
        Some(d) => Ok(d as u64),
    }
}

/// Value data of the implicit curve, with the coordinate degrees checked
/// against the returned semigroup.
pub fn semigroup_from_param(p: &Parametrization) -> Result<ValueData, ParamError> {
    let f = implicitize(p)?;
    let vd = one_place_semigroup(&f)?;
    let sgp = NumSgp::new(vd.chain.r()).expect("value sequence generates a numerical semigroup");
    for deg in [p.xt.degree().unwrap(), p.yt.degree().unwrap()] {
        assert!(
            sgp.contains(deg as i64),
            "coordinate degree {deg} missing from the value semigroup"
        );
    }
    Ok(vd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ringcore::rat;

    fn tpoly(coeffs: &[i64]) -> UniPoly {
        UniPoly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    fn ypoly(pairs: &[(i64, usize, usize)]) -> BiPoly {
        let mut acc = BiPoly::zero();
        for &(c, i, j) in pairs {
            acc = &acc + &BiPoly::monomial(rat(c), i, j);
        }
        acc
    }

    #[test]
    fn graph_case() {
        // (t, t^3 + t) -> y - x^3 - x
        let p = Parametrization::new(tpoly(&[0, 1]), tpoly(&[0, 1, 0, 1])).unwrap();
        let f = implicitize(&p).unwrap();
        assert_eq!(f, ypoly(&[(1, 0, 1), (-1, 3, 0), (-1, 1, 0)]));
    }

    #[test]
    fn cusp() {
        let p = Parametrization::new(tpoly(&[0, 0, 1]), tpoly(&[0, 0, 0, 1])).unwrap();
        let f = implicitize(&p).unwrap();
        assert_eq!(f, ypoly(&[(1, 0, 2), (-1, 3, 0)]));
    }

    #[test]
    fn golden_quartic() {
        // (t^4 - t, t^3 - 1) -> y^4 + y^3 - x^3
        let p = Parametrization::new(tpoly(&[0, -1, 0, 0, 1]), tpoly(&[-1, 0, 0, 1])).unwrap();
        let f = implicitize(&p).unwrap();
        assert_eq!(f.to_string(), "y^4+y^3-x^3");
    }

    #[test]
    fn unfaithful_refused() {
        let p = Parametrization::new(tpoly(&[0, 0, 1]), tpoly(&[0, 0, 0, 0, 1])).unwrap();
        assert!(!p.is_faithful());
        assert_eq!(implicitize(&p).unwrap_err(), ParamError::NotFaithful);
    }

    #[test]
    fn invariants_on_construction() {
        assert_eq!(
            Parametrization::new(tpoly(&[3]), tpoly(&[0, 1])).unwrap_err(),
            ParamError::ConstantCoordinate
        );
        assert_eq!(
            Parametrization::new(tpoly(&[0, 0, 1]), tpoly(&[1, 0, 2])).unwrap_err(),
            ParamError::EqualDegrees
        );
    }

    #[test]
    fn int_param_examples() {
        let cusp = Parametrization::new(tpoly(&[0, 0, 1]), tpoly(&[0, 0, 0, 1])).unwrap();
        assert_eq!(int_param(&cusp, &BiPoly::y()).unwrap(), 3);
        // y^2 - x^3 cancels, leaving x of t-degree 2
        let h = ypoly(&[(1, 0, 2), (-1, 3, 0), (1, 1, 0)]);
        assert_eq!(int_param(&cusp, &h).unwrap(), 2);
        let oncurve = ypoly(&[(1, 0, 2), (-1, 3, 0)]);
        assert_eq!(int_param(&cusp, &oncurve).unwrap_err(), ParamError::OnCurve);

        let p = Parametrization::new(tpoly(&[0, -1, 0, 0, 1]), tpoly(&[-1, 0, 0, 1])).unwrap();
        assert_eq!(int_param(&p, &BiPoly::x()).unwrap(), 4);
    }

    #[test]
    fn int_param_additive_on_products() {
        let p = Parametrization::new(tpoly(&[0, -1, 0, 0, 1]), tpoly(&[-1, 0, 0, 1])).unwrap();
        let h1 = ypoly(&[(1, 0, 1), (2, 1, 0), (1, 0, 0)]);
        let h2 = ypoly(&[(1, 2, 0), (-1, 0, 1)]);
        let prod = &h1 * &h2;
        assert_eq!(
            int_param(&p, &prod).unwrap(),
            int_param(&p, &h1).unwrap() + int_param(&p, &h2).unwrap()
        );
    }

    #[test]
    fn semigroups_from_parametrizations() {
        let cusp = Parametrization::new(tpoly(&[0, 0, 1]), tpoly(&[0, 0, 0, 1])).unwrap();
        let vd = semigroup_from_param(&cusp).unwrap();
        assert_eq!(vd.value_sequence(), &[3, 2]);

        let p = Parametrization::new(tpoly(&[0, -1, 0, 0, 1]), tpoly(&[-1, 0, 0, 1])).unwrap();
        let vd = semigroup_from_param(&p).unwrap();
        assert_eq!(vd.value_sequence(), &[4, 3]);
    }

    #[test]
    fn delta_sequence_stable_across_the_family() {
        // x(t) = t z(t), y(t) = z(t)^2 + (a/2) z(t) with z = t^3 - a:
        // the same delta-sequence for every nonzero a
        for a in [1i64, 2, -3] {
            let z = UniPoly::new(vec![rat(-a), rat(0), rat(0), rat(1)]);
            let xt = &UniPoly::var() * &z;
            let half_a = crate::ringcore::ratio(a, 2);
            let yt = &(&z * &z) + &z.scale(&half_a);
            let p = Parametrization::new(xt, yt).unwrap();
            let vd = semigroup_from_param(&p).unwrap();
            assert_eq!(vd.value_sequence(), &[6, 4, 3], "a = {a}");
        }
    }

    #[test]
    fn kernel_property_random_parametrizations() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(0x1eaf);
        let mut done = 0;
        while done < 12 {
            let n = rng.random_range(2..=4);
            let m = rng.random_range(2..=4);
            if n == m {
                continue;
            }
            let mut xc: Vec<i64> = (0..n).map(|_| rng.random_range(-3..=3)).collect();
            xc.push(1);
            let mut yc: Vec<i64> = (0..m).map(|_| rng.random_range(-3..=3)).collect();
            yc.push(1);
            let p = match Parametrization::new(tpoly(&xc), tpoly(&yc)) {
                Ok(p) => p,
                Err(_) => continue,
            };
            if !p.is_faithful() {
                continue;
            }
            let f = implicitize(&p).unwrap();
            assert!(f.eval_unipoly(p.xt(), p.yt()).is_zero());
            assert_eq!(f.deg_y(), Some(n));
            assert_eq!(f.deg_x(), Some(m));
            done += 1;
        }
    }
}
