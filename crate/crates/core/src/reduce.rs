//! Reduced degree, the automorphism chain, reduced forms and reduced
//! equations.
//!
//! When a prefix of the value sequence satisfies `r_i = d_{i+1}`, the
//! corresponding approximate roots have conductor zero and each one is a
//! polynomial in the next two: the chain relations can be solved for `x`
//! and `y`, giving an explicit plane automorphism that shrinks the
//! `y`-degree of the curve to `d_k`. The reduced form then normalizes by a
//! swap and two shift substitutions; the composite is the reduced equation.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::adic::expand_in_powers;
use crate::criterion::{one_place_semigroup, Rejection, ValueData};
use crate::ringcore::{BiPoly, Rational, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("not reducible: {0}")]
    NotReducible(String),
    #[error(transparent)]
    Rejected(#[from] Rejection),
}

/// A polynomial automorphism of the plane with its recorded inverse.
///
/// Applying the automorphism to `p` means substituting the images,
/// `p(image_x, image_y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneAutomorphism {
    pub image_x: BiPoly,
    pub image_y: BiPoly,
    pub inverse_x: BiPoly,
    pub inverse_y: BiPoly,
}

impl PlaneAutomorphism {
    pub fn identity() -> Self {
        PlaneAutomorphism {
            image_x: BiPoly::x(),
            image_y: BiPoly::y(),
            inverse_x: BiPoly::x(),
            inverse_y: BiPoly::y(),
        }
    }

    pub fn swap() -> Self {
        PlaneAutomorphism {
            image_x: BiPoly::y(),
            image_y: BiPoly::x(),
            inverse_x: BiPoly::y(),
            inverse_y: BiPoly::x(),
        }
    }

    /// `x -> x - s(y)`, `y` fixed.
    pub fn shift_x_by_y(s: &UniPoly) -> Self {
        let sy = BiPoly::from_unipoly_y(s);
        PlaneAutomorphism {
            image_x: &BiPoly::x() - &sy,
            image_y: BiPoly::y(),
            inverse_x: &BiPoly::x() + &sy,
            inverse_y: BiPoly::y(),
        }
    }

    /// `y -> y - s(x)`, `x` fixed.
    pub fn shift_y_by_x(s: &UniPoly) -> Self {
        let sx = BiPoly::from_unipoly_x(s);
        PlaneAutomorphism {
            image_x: BiPoly::x(),
            image_y: &BiPoly::y() - &sx,
            inverse_x: BiPoly::x(),
            inverse_y: &BiPoly::y() + &sx,
        }
    }

    pub fn apply(&self, p: &BiPoly) -> BiPoly {
        p.substitute(&self.image_x, &self.image_y)
    }

    /// Composition: first `self`, then `next`.
    pub fn then(&self, next: &PlaneAutomorphism) -> PlaneAutomorphism {
        PlaneAutomorphism {
            image_x: self.image_x.substitute(&next.image_x, &next.image_y),
            image_y: self.image_y.substitute(&next.image_x, &next.image_y),
            inverse_x: next.inverse_x.substitute(&self.inverse_x, &self.inverse_y),
            inverse_y: next.inverse_y.substitute(&self.inverse_x, &self.inverse_y),
        }
    }

    /// Check the recorded inverse by composing to the identity both ways.
    pub fn verify(&self) -> bool {
        self.image_x.substitute(&self.inverse_x, &self.inverse_y) == BiPoly::x()
            && self.image_y.substitute(&self.inverse_x, &self.inverse_y) == BiPoly::y()
            && self.inverse_x.substitute(&self.image_x, &self.image_y) == BiPoly::x()
            && self.inverse_y.substitute(&self.image_x, &self.image_y) == BiPoly::y()
    }
}

/// One level of the chain: `g_{k+1} = ψ_k(g_k) + tail_coeff·g_{k-1}` with
/// `ψ_k(T) = T^{e_k} + mids[0] T^{e_k-2} + ... + mids[e_k-3] T + constant`
/// and `g_0 = x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainRelation {
    pub level: usize,
    pub mids: Vec<Rational>,
    pub tail_coeff: Rational,
    pub constant: Rational,
}

impl ChainRelation {
    /// `ψ(t)` for this level.
    pub fn psi(&self, t: &BiPoly, e: usize) -> BiPoly {
        let mut acc = t.pow(e);
        for (idx, c) in self.mids.iter().enumerate() {
            let power = e - 2 - idx;
            acc = &acc + &t.pow(power).scale(c);
        }
        &acc + &BiPoly::constant(self.constant.clone())
    }
}

/// Everything recorded along a reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    /// Greatest index with conductor zero among the approximate roots.
    pub k: usize,
    pub relations: Vec<ChainRelation>,
    pub swap_applied: bool,
    /// The `b_1(y)/(r_1 c)` shift applied to `x`.
    pub xshift: UniPoly,
    /// The `ā_1/N` shift applied to `y`.
    pub yshift: Rational,
    /// Constant the polynomial was multiplied by along the way; the output
    /// equals `scale · f(image_x, image_y)`.
    pub scale: Rational,
}

impl ReductionTrace {
    fn identity(k: usize) -> Self {
        ReductionTrace {
            k,
            relations: Vec::new(),
            swap_applied: false,
            xshift: UniPoly::zero(),
            yshift: Rational::zero(),
            scale: Rational::one(),
        }
    }
}

/// Greatest `k` in `1..=h+1` such that the `k`-th approximate root has
/// conductor zero, read off the chain as the longest prefix with
/// `r_i = d_{i+1}`.
fn mu_zero_index(vd: &ValueData) -> usize {
    let r = vd.chain.r();
    let d = vd.chain.d();
    let mut k = 1;
    while k <= vd.chain.h() && r[k] == d[k] {
        k += 1;
    }
    k
}

/// The reduced degree `d_k`: the smallest `y`-degree reachable by plane
/// automorphisms.
pub fn rdeg(vd: &ValueData) -> u64 {
    vd.chain.d()[mu_zero_index(vd) - 1]
}

/// Shrink the curve through the automorphism chain.
///
/// Extracts the chain relations for levels `1..k-1` (their coefficients are
/// rational constants exactly when the corresponding roots have conductor
/// zero), then solves them backwards for the images of `x` and `y`, seeded
/// with `g_{k-1} -> x`, `g_k -> y`. The result has `y`-degree `d_k` and
/// value semigroup generated by `(d_k, r_k, ..., r_h)`. For `k < 2` the
/// identity is returned.
pub fn reduction_chain(
    vd: &ValueData,
) -> Result<(BiPoly, PlaneAutomorphism, ReductionTrace), ReduceError> {
    let h = vd.chain.h();
    let k = mu_zero_index(vd);
    if k < 2 {
        return Ok((
            vd.curve.clone(),
            PlaneAutomorphism::identity(),
            ReductionTrace::identity(k),
        ));
    }
    let root = |m: usize| -> &BiPoly {
        if m <= h {
            &vd.roots[m - 1]
        } else {
            &vd.curve
        }
    };
    let e = vd.chain.e();
    let mut relations = Vec::with_capacity(k - 1);
    for j in 1..k {
        let ej = e[j - 1] as usize;
        let coeffs = expand_in_powers(root(j + 1), root(j));
        assert_eq!(coeffs.len(), ej + 1, "chain level {j} has wrong degree");
        assert!(coeffs[ej].is_constant() && coeffs[ej - 1].is_zero());
        let mut mids = Vec::new();
        for i in 2..ej {
            let c = coeffs[ej - i]
                .as_constant()
                .expect("conductor-zero root forces constant coefficients");
            mids.push(c);
        }
        let tail = &coeffs[0];
        let (a, b) = if j == 1 {
            // tail = a*x + b
            let u = tail.ycoeff(0);
            assert!(tail.deg_y().unwrap_or(0) == 0 && u.degree() == Some(1));
            (u.coeff(1), u.coeff(0))
        } else {
            let prev = root(j - 1);
            let top = tail.ycoeff(prev.deg_y().unwrap());
            assert!(
                top.is_constant(),
                "conductor-zero root forces a constant tail coefficient"
            );
            let a = top.coeff(0);
            let b = (tail - &prev.scale(&a))
                .as_constant()
                .expect("tail must be an affine image of the previous root");
            (a, b)
        };
        assert!(!a.is_zero(), "tail coefficient vanishes at level {j}");
        relations.push(ChainRelation {
            level: j,
            mids,
            tail_coeff: a,
            constant: b,
        });
    }
    // descending recurrence for the images of the g_j
    let mut vals: Vec<BiPoly> = vec![BiPoly::zero(); k + 1];
    vals[k] = BiPoly::y();
    vals[k - 1] = BiPoly::x();
    for j in (1..k).rev() {
        let rel = &relations[j - 1];
        let psi = rel.psi(&vals[j], e[j - 1] as usize);
        let inv = Rational::one() / &rel.tail_coeff;
        vals[j - 1] = (&vals[j + 1] - &psi).scale(&inv);
    }
    let auto = PlaneAutomorphism {
        image_x: vals[0].clone(),
        image_y: vals[1].clone(),
        inverse_x: root(k - 1).clone(),
        inverse_y: root(k).clone(),
    };
    let out = auto.apply(&vd.curve);
    let mut trace = ReductionTrace::identity(k);
    trace.relations = relations;
    Ok((out, auto, trace))
}

/// Reduced form `R(F)`: swap if the `x`-degree dominates (restoring
/// monicity by a constant), shift `x` to kill the `x^{r_1 - 1}` coefficient
/// and `y` to kill the `y^{N-1}` coefficient.
pub fn reduced_form(f: &BiPoly) -> Result<(BiPoly, ReductionTrace), ReduceError> {
    let (out, _, trace) = reduced_form_with_auto(f)?;
    Ok((out, trace))
}

pub(crate) fn reduced_form_with_auto(
    f: &BiPoly,
) -> Result<(BiPoly, PlaneAutomorphism, ReductionTrace), ReduceError> {
    if f.is_zero() || f.is_constant() {
        return Err(ReduceError::NotReducible("constant polynomial".into()));
    }
    let mut g = f.clone();
    let mut auto = PlaneAutomorphism::identity();
    let mut trace = ReductionTrace::identity(1);
    let dy = g.deg_y().unwrap_or(0);
    let dx = g.deg_x().unwrap_or(0);
    if dy < dx {
        g = g.swap_xy();
        auto = auto.then(&PlaneAutomorphism::swap());
        trace.swap_applied = true;
    } else if dy == dx {
        return Err(ReduceError::NotReducible(
            "degrees in x and y coincide".into(),
        ));
    }
    let lead = g.leading_ycoeff().unwrap().clone();
    if !lead.is_constant() {
        return Err(ReduceError::NotReducible(
            "leading y-coefficient is not constant".into(),
        ));
    }
    let scale = Rational::one() / lead.coeff(0);
    if !scale.is_one() {
        g = g.scale(&scale);
    }
    trace.scale = scale;
    let n = g.deg_y().unwrap();
    let r1 = match g.deg_x() {
        Some(r) if r >= 1 => r,
        _ => {
            return Err(ReduceError::NotReducible(
                "polynomial does not involve x".into(),
            ))
        }
    };
    if n.is_multiple_of(r1) {
        return Err(ReduceError::NotReducible(format!(
            "x-degree {r1} divides y-degree {n}"
        )));
    }
    let cx = g.xcoeff(r1);
    let c2 = match (cx.degree(), cx.coeff(0)) {
        (Some(0), c) => c,
        _ => {
            return Err(ReduceError::NotReducible(
                "leading x-coefficient is not constant".into(),
            ))
        }
    };
    let b1 = g.xcoeff(r1 - 1);
    let denom = Rational::from_integer((r1 as i64).into()) * &c2;
    let xshift = b1.scale(&(Rational::one() / denom));
    if !xshift.is_zero() {
        let step = PlaneAutomorphism::shift_x_by_y(&xshift);
        g = step.apply(&g);
        auto = auto.then(&step);
        // the shift cannot raise the y-degree when the input has one place;
        // anything else is not in this normal form's domain
        if g.deg_y() != Some(n) || !g.is_monic_y() {
            return Err(ReduceError::NotReducible(
                "x-shift disturbed monicity in y".into(),
            ));
        }
    }
    trace.xshift = xshift;
    let a1 = g.ycoeff(n - 1);
    if !a1.is_constant() {
        return Err(ReduceError::NotReducible(
            "subleading y-coefficient did not become constant".into(),
        ));
    }
    let ybar = a1.coeff(0) / Rational::from_integer((n as i64).into());
    if !ybar.is_zero() {
        let step = PlaneAutomorphism::shift_y_by_x(&UniPoly::constant(ybar.clone()));
        g = step.apply(&g);
        auto = auto.then(&step);
    }
    trace.yshift = ybar;
    debug_assert!(g.ycoeff(n - 1).is_zero());
    debug_assert!(g.xcoeff(r1 - 1).is_zero());
    Ok((g, auto, trace))
}

/// The reduced equation `r(f)`: the automorphism chain followed by the
/// reduced form. The returned automorphism maps the original input to the
/// output up to the recorded scale, and its value sequence is a δ-sequence
/// generating the same semigroup as `(d_k, r_k, ..., r_h)`.
pub fn reduced_equation(
    f: &BiPoly,
) -> Result<(BiPoly, PlaneAutomorphism, ReductionTrace), ReduceError> {
    let vd = one_place_semigroup(f)?;
    reduced_equation_of(&vd)
}

/// As [`reduced_equation`], starting from an already-computed [`ValueData`].
pub fn reduced_equation_of(
    vd: &ValueData,
) -> Result<(BiPoly, PlaneAutomorphism, ReductionTrace), ReduceError> {
    let mut auto = PlaneAutomorphism::identity();
    let mut scale = Rational::one();
    if vd.preprocessing.swapped {
        auto = auto.then(&PlaneAutomorphism::swap());
    }
    scale *= &vd.preprocessing.scale;
    if !vd.preprocessing.yshift.is_zero() {
        auto = auto.then(&PlaneAutomorphism::shift_y_by_x(&vd.preprocessing.yshift));
    }
    let (after_chain, chain_auto, mut trace) = reduction_chain(vd)?;
    auto = auto.then(&chain_auto);
    if trace.k == vd.chain.h() + 1 {
        // the curve is equivalent to the coordinate y; nothing to normalize
        debug_assert_eq!(after_chain, BiPoly::y());
        trace.scale = scale;
        return Ok((after_chain, auto, trace));
    }
    let (reduced, r_auto, r_trace) = reduced_form_with_auto(&after_chain)?;
    auto = auto.then(&r_auto);
    trace.swap_applied = r_trace.swap_applied;
    trace.xshift = r_trace.xshift;
    trace.yshift = r_trace.yshift;
    trace.scale = scale * r_trace.scale;
    Ok((reduced, auto, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ringcore::{rat, ratio};
    use crate::semigroup::same_semigroup;

    fn ypoly(pairs: &[(i64, usize, usize)]) -> BiPoly {
        let mut acc = BiPoly::zero();
        for &(c, i, j) in pairs {
            acc = &acc + &BiPoly::monomial(rat(c), i, j);
        }
        acc
    }

    /// (y^2 - x)^2 - x y
    fn quartic() -> BiPoly {
        let g = ypoly(&[(1, 0, 2), (-1, 1, 0)]);
        &(&g * &g) - &ypoly(&[(1, 1, 1)])
    }

    #[test]
    fn rdeg_values() {
        let vd = one_place_semigroup(&quartic()).unwrap();
        assert_eq!(vd.value_sequence(), &[4, 2, 3]);
        assert_eq!(rdeg(&vd), 2);

        let vd =
            one_place_semigroup(&crate::construct::curve_from_delta(&[6, 4, 3]).unwrap()).unwrap();
        assert_eq!(rdeg(&vd), 6);

        let vd = one_place_semigroup(&ypoly(&[(1, 0, 2), (-1, 1, 0)])).unwrap();
        assert_eq!(vd.value_sequence(), &[2, 1]);
        assert_eq!(rdeg(&vd), 1);
    }

    #[test]
    fn chain_on_the_quartic() {
        let vd = one_place_semigroup(&quartic()).unwrap();
        let (out, auto, trace) = reduction_chain(&vd).unwrap();
        assert_eq!(out, ypoly(&[(1, 0, 2), (1, 1, 1), (-1, 3, 0)])); // y^2 + xy - x^3
        assert_eq!(auto.image_x, ypoly(&[(1, 2, 0), (-1, 0, 1)])); // x^2 - y
        assert_eq!(auto.image_y, BiPoly::x());
        assert!(auto.verify());
        assert_eq!(trace.k, 2);
        assert_eq!(trace.relations.len(), 1);
        assert_eq!(trace.relations[0].tail_coeff, rat(-1));
    }

    #[test]
    fn chain_on_a_parabola() {
        let f = ypoly(&[(1, 0, 2), (-1, 1, 0)]); // y^2 - x
        let vd = one_place_semigroup(&f).unwrap();
        let (out, auto, _) = reduction_chain(&vd).unwrap();
        assert_eq!(out, BiPoly::y());
        assert_eq!(auto.image_x, ypoly(&[(1, 2, 0), (-1, 0, 1)]));
        assert_eq!(auto.image_y, BiPoly::x());
        assert!(auto.verify());
    }

    #[test]
    fn chain_relations_reconstruct() {
        let vd = one_place_semigroup(&quartic()).unwrap();
        let (_, _, trace) = reduction_chain(&vd).unwrap();
        for rel in &trace.relations {
            let j = rel.level;
            let gj = &vd.roots[j - 1];
            let gj1 = if j == vd.chain.h() {
                &vd.curve
            } else {
                &vd.roots[j]
            };
            let prev = if j == 1 {
                BiPoly::x()
            } else {
                vd.roots[j - 2].clone()
            };
            let e = vd.chain.e()[j - 1] as usize;
            let rebuilt = &rel.psi(gj, e) + &prev.scale(&rel.tail_coeff);
            assert_eq!(&rebuilt, gj1);
        }
    }

    #[test]
    fn identity_chain_when_not_reducible() {
        let f = crate::construct::curve_from_delta(&[6, 4, 3]).unwrap();
        let vd = one_place_semigroup(&f).unwrap();
        let (out, auto, trace) = reduction_chain(&vd).unwrap();
        assert_eq!(out, f);
        assert_eq!(auto, PlaneAutomorphism::identity());
        assert_eq!(trace.k, 1);
    }

    #[test]
    fn reduced_form_examples() {
        let g2 = ypoly(&[(1, 0, 3), (-1, 2, 0)]);
        let (out, trace) = reduced_form(&g2).unwrap();
        assert_eq!(out, g2);
        assert!(trace.xshift.is_zero() && trace.yshift.is_zero());

        // (y+1)^3 + x^2 -> y^3 + x^2
        let f = ypoly(&[(1, 0, 3), (3, 0, 2), (3, 0, 1), (1, 0, 0), (1, 2, 0)]);
        let (out, trace) = reduced_form(&f).unwrap();
        assert_eq!(out, ypoly(&[(1, 0, 3), (1, 2, 0)]));
        assert_eq!(trace.yshift, rat(1));

        // y^3 - x^2 - xy -> y^3 - x^2 - y/48 + 1/864
        let f = ypoly(&[(1, 0, 3), (-1, 2, 0), (-1, 1, 1)]);
        let (out, trace) = reduced_form(&f).unwrap();
        let expected = &(&ypoly(&[(1, 0, 3), (-1, 2, 0)]) - &BiPoly::y().scale(&ratio(1, 48)))
            + &BiPoly::constant(ratio(2, 1728));
        assert_eq!(out, expected);
        assert_eq!(trace.xshift, UniPoly::monomial(ratio(1, 2), 1));
        assert_eq!(trace.yshift, ratio(1, 12));
    }

    #[test]
    fn reduced_form_preconditions() {
        // y^2 - x: x-degree divides y-degree
        assert!(matches!(
            reduced_form(&ypoly(&[(1, 0, 2), (-1, 1, 0)])),
            Err(ReduceError::NotReducible(_))
        ));
        assert!(matches!(
            reduced_form(&ypoly(&[(1, 2, 2)])),
            Err(ReduceError::NotReducible(_))
        ));
    }

    #[test]
    fn reduced_equation_golden() {
        let (out, auto, trace) = reduced_equation(&quartic()).unwrap();
        let expected = &(&ypoly(&[(1, 0, 3), (-1, 2, 0)]) - &BiPoly::y().scale(&ratio(1, 48)))
            + &BiPoly::constant(ratio(2, 1728));
        assert_eq!(out, expected);
        assert!(auto.verify());
        // the automorphism maps the input onto the output, up to the scale
        let image = quartic().substitute(&auto.image_x, &auto.image_y);
        assert_eq!(image.scale(&trace.scale), out);
        assert_eq!(trace.scale, rat(-1));

        let vd_out = one_place_semigroup(&out).unwrap();
        assert_eq!(vd_out.value_sequence(), &[3, 2]);
    }

    #[test]
    fn reduced_equation_identity_cases() {
        let g2 = ypoly(&[(1, 0, 3), (-1, 2, 0)]);
        let (out, auto, _) = reduced_equation(&g2).unwrap();
        assert_eq!(out, g2);
        assert_eq!(auto, PlaneAutomorphism::identity());

        let f = crate::construct::curve_from_delta(&[6, 4, 3]).unwrap();
        let (out, _, _) = reduced_equation(&f).unwrap();
        assert_eq!(out, f);
    }

    #[test]
    fn reduced_equation_coordinate_case() {
        let f = ypoly(&[(1, 0, 2), (-1, 1, 0)]); // y^2 - x
        let (out, auto, trace) = reduced_equation(&f).unwrap();
        assert_eq!(out, BiPoly::y());
        assert!(auto.verify());
        assert_eq!(
            f.substitute(&auto.image_x, &auto.image_y)
                .scale(&trace.scale),
            out
        );
    }

    #[test]
    fn reduced_semigroup_matches_chain_suffix() {
        for f in [
            quartic(),
            crate::construct::curve_from_delta(&[12, 8, 10, 5]).unwrap(),
        ] {
            let vd = one_place_semigroup(&f).unwrap();
            let (out, _, trace) = reduced_equation(&vd.curve).unwrap();
            let d = vd.chain.d();
            let r = vd.chain.r();
            let mut expected = vec![d[trace.k - 1]];
            expected.extend(&r[trace.k..]);
            let vd_out = one_place_semigroup(&out).unwrap();
            assert!(same_semigroup(vd_out.value_sequence(), &expected));
            // rdeg is the y-degree before the final swap normalization
            let (chain_out, _, _) = reduction_chain(&vd).unwrap();
            assert_eq!(rdeg(&vd), chain_out.deg_y().unwrap() as u64);
            let expected_dy = if trace.swap_applied {
                r[trace.k]
            } else {
                d[trace.k - 1]
            };
            assert_eq!(out.deg_y().unwrap() as u64, expected_dy);
        }
    }

    #[test]
    fn equivalence_under_affine_translations() {
        let f = quartic();
        let base = one_place_semigroup(&reduced_equation(&f).unwrap().0)
            .unwrap()
            .value_sequence()
            .to_vec();
        for (c, cp) in [(1i64, 0i64), (0, 2), (-1, 1)] {
            let moved = f.substitute(
                &(&BiPoly::x() + &BiPoly::constant(rat(c))),
                &(&BiPoly::y() + &BiPoly::constant(rat(cp))),
            );
            let seq = one_place_semigroup(&reduced_equation(&moved).unwrap().0)
                .unwrap()
                .value_sequence()
                .to_vec();
            assert_eq!(seq, base);
        }
    }
}
