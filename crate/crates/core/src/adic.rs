//! G-adic expansions, approximate roots, and the generalized Newton
//! polygon edge test.
//!
//! An [`Expansion`] rewrites a polynomial as a sum of products of basis
//! polynomials with bounded exponents and `x`-polynomial coefficients. The
//! basis in practice is a chain of approximate roots `g_1, ..., g_k` with
//! strictly increasing `y`-degrees; exponent tuples are sparse, so only
//! nonzero terms are stored.

use std::collections::BTreeMap;

use num_integer::Integer;
use thiserror::Error;

use crate::ringcore::{rat, BiPoly, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdicError {
    #[error("basis polynomials must be monic in y")]
    NonMonicBasis,
    #[error("basis degrees must satisfy deg_y basis[i+1] = deg_y basis[i] * bounds[i]")]
    BadBasisDegrees,
    #[error("polynomial degree exceeds the bound of the expansion basis")]
    DegreeBound,
    #[error("fint of the zero polynomial is undefined")]
    EmptyExpansion,
    #[error("weights length must be one more than the basis length")]
    WeightMismatch,
    #[error("weights are not consistent with the degree of the pivot polynomial")]
    BadWeights,
    #[error("polynomial is not monic in y")]
    NotMonic,
    #[error("degree is not divisible by the requested root index")]
    IndivisibleDegree,
    #[error("the coefficient of the next-to-top power is nonzero")]
    NotApproximateRoot,
    #[error("the tail coefficient of the expansion is zero")]
    DegenerateTail,
}

/// A G-adic expansion: `Σ_θ c_θ(x) · Π basis[i]^{θ_i}` with `θ_i < bounds[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    basis: Vec<BiPoly>,
    bounds: Vec<usize>,
    terms: BTreeMap<Vec<usize>, UniPoly>,
}

impl Expansion {
    pub fn basis(&self) -> &[BiPoly] {
        &self.basis
    }

    pub fn bounds(&self) -> &[usize] {
        &self.bounds
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, UniPoly> {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiply everything back out; the result equals the expanded input.
    pub fn reconstruct(&self) -> BiPoly {
        let mut acc = BiPoly::zero();
        for (theta, c) in &self.terms {
            let mut term = BiPoly::from_unipoly_x(c);
            for (g, &e) in self.basis.iter().zip(theta.iter()) {
                if e > 0 {
                    term = &term * &g.pow(e);
                }
            }
            acc = &acc + &term;
        }
        acc
    }
}

/// Expand `alpha` in the basis `g_1, ..., g_k` with exponent bounds
/// `e_1, ..., e_k`.
///
/// Preconditions: each basis element is monic in `y`, degrees satisfy
/// `deg_y g_{i+1} = deg_y g_i * e_i`, and `deg_y alpha < deg_y g_k * e_k`.
/// The expansion is computed by repeated division against the top basis
/// element, recursing on the coefficients; uniqueness comes from the degree
/// bounds at every level.
pub fn gadic_expand(
    alpha: &BiPoly,
    basis: &[BiPoly],
    bounds: &[usize],
) -> Result<Expansion, AdicError> {
    if basis.len() != bounds.len() {
        return Err(AdicError::BadBasisDegrees);
    }
    let mut top_deg = 1usize;
    for (i, g) in basis.iter().enumerate() {
        if !g.is_monic_y() {
            return Err(AdicError::NonMonicBasis);
        }
        let dg = g.deg_y().unwrap();
        if dg != top_deg || bounds[i] == 0 {
            return Err(AdicError::BadBasisDegrees);
        }
        top_deg = dg * bounds[i];
    }
    if alpha.deg_y().is_some_and(|d| d >= top_deg) {
        return Err(AdicError::DegreeBound);
    }
    let mut terms = BTreeMap::new();
    let mut theta = vec![0usize; basis.len()];
    expand_level(alpha, basis, &mut theta, basis.len(), &mut terms);
    Ok(Expansion {
        basis: basis.to_vec(),
        bounds: bounds.to_vec(),
        terms,
    })
}

fn expand_level(
    alpha: &BiPoly,
    basis: &[BiPoly],
    theta: &mut Vec<usize>,
    level: usize,
    terms: &mut BTreeMap<Vec<usize>, UniPoly>,
) {
    if alpha.is_zero() {
        return;
    }
    if level == 0 {
        debug_assert_eq!(alpha.deg_y(), Some(0));
        terms.insert(theta.clone(), alpha.ycoeff(0));
        return;
    }
    let g = &basis[level - 1];
    let mut rest = alpha.clone();
    let mut power = 0usize;
    loop {
        if rest.is_zero() {
            break;
        }
        if rest.deg_y() < g.deg_y() {
            theta[level - 1] = power;
            expand_level(&rest, basis, theta, level - 1, terms);
            theta[level - 1] = 0;
            break;
        }
        let (q, r) = rest.divrem_y(g).expect("basis validated monic");
        theta[level - 1] = power;
        expand_level(&r, basis, theta, level - 1, terms);
        theta[level - 1] = 0;
        rest = q;
        power += 1;
    }
}

/// Coefficients of `f` in powers of a monic `g`: returns `[c_0, ..., c_m]`
/// with `f = Σ c_j g^j` and `deg_y c_j < deg_y g`.
pub(crate) fn expand_in_powers(f: &BiPoly, g: &BiPoly) -> Vec<BiPoly> {
    let mut coeffs = Vec::new();
    let mut rest = f.clone();
    while !rest.is_zero() && rest.deg_y() >= g.deg_y() {
        let (q, r) = rest.divrem_y(g).expect("divisor monic");
        coeffs.push(r);
        rest = q;
    }
    coeffs.push(rest);
    coeffs
}

/// The unique monic `G` with `deg_y G = deg_y f / d` whose `G`-adic
/// expansion of `f` has no `G^{d-1}` term.
///
/// Tschirnhausen iteration: start from `y^{n/d}` and repeatedly absorb the
/// offending coefficient, `G <- G + α_1/d`. Termination within `n/d + 1`
/// rounds is guaranteed in characteristic zero; the bound is asserted.
pub fn approximate_root(f: &BiPoly, d: usize) -> Result<BiPoly, AdicError> {
    if !f.is_monic_y() {
        return Err(AdicError::NotMonic);
    }
    let n = f.deg_y().unwrap();
    if d == 0 || !n.is_multiple_of(d) {
        return Err(AdicError::IndivisibleDegree);
    }
    if d == 1 {
        // f = 1*G + α_1 with deg_y α_1 < n forces G = f outright
        return Ok(f.clone());
    }
    let m = n / d;
    let mut g = BiPoly::monomial(rat(1), 0, m);
    let inv_d = rat(1) / rat(d as i64);
    for _ in 0..=m {
        let coeffs = expand_in_powers(f, &g);
        debug_assert_eq!(coeffs.len(), d + 1);
        let alpha1 = &coeffs[d - 1];
        if alpha1.is_zero() {
            return Ok(g);
        }
        g = &g + &alpha1.scale(&inv_d);
    }
    unreachable!("Tschirnhausen iteration exceeded its n/d + 1 bound");
}

/// Value and uniqueness flag of the `fint` maximum over an expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FintResult {
    pub value: u64,
    pub unique: bool,
}

/// `max over terms of deg_x(c_θ)·weights[0] + Σ θ_i·weights[i+1]`.
///
/// `weights[0]` applies to the `x`-degree of the coefficient; the remaining
/// weights line up with the basis. Errors on the empty expansion: a zero
/// tail signals reducibility upstream and must not be absorbed as 0.
pub fn fint(expansion: &Expansion, weights: &[u64]) -> Result<FintResult, AdicError> {
    if weights.len() != expansion.basis.len() + 1 {
        return Err(AdicError::WeightMismatch);
    }
    let mut best: Option<(u64, bool)> = None;
    for (theta, c) in &expansion.terms {
        let mut v = c.degree().expect("stored terms are nonzero") as u64 * weights[0];
        for (t, w) in theta.iter().zip(&weights[1..]) {
            v += *t as u64 * w;
        }
        best = Some(match best {
            None => (v, true),
            Some((b, _)) if v > b => (v, true),
            Some((b, u)) => (b, u && v != b),
        });
    }
    match best {
        Some((value, unique)) => Ok(FintResult { value, unique }),
        None => Err(AdicError::EmptyExpansion),
    }
}

/// Outcome of the generalized Newton polygon edge test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StraightnessReport {
    pub straight: bool,
    /// `fint` of the tail coefficient.
    pub edge_value: u64,
    /// Middle indices `j` whose point does not lie strictly below the edge,
    /// together with their `fint` values.
    pub violations: Vec<(usize, u64)>,
}

/// Edge test for `p = g^e + α_2 g^{e-2} + ... + α_e`.
///
/// With `v = fint(α_e, weights)`, the expansion is straight when every
/// nonzero middle coefficient satisfies `fint(α_j)·e < j·v` — its point lies
/// strictly below the segment joining `(0, e)` and `(v, 0)`. The comparison
/// is cross-multiplied in integers; scaling all weights by a positive
/// constant never changes the verdict.
///
/// The α's are expanded in the chain of approximate roots of `g` derived
/// from the gcd chain of the weights.
pub fn straightness(
    p: &BiPoly,
    g: &BiPoly,
    weights: &[u64],
    e: usize,
) -> Result<StraightnessReport, AdicError> {
    let (basis, bounds) = basis_from_weights(g, weights)?;
    straightness_with_basis(p, g, &basis, &bounds, weights, e)
}

/// Straightness against an explicitly supplied expansion basis (the caller
/// already holds the approximate-root chain).
pub(crate) fn straightness_with_basis(
    p: &BiPoly,
    g: &BiPoly,
    basis: &[BiPoly],
    bounds: &[usize],
    weights: &[u64],
    e: usize,
) -> Result<StraightnessReport, AdicError> {
    if !g.is_monic_y() {
        return Err(AdicError::NonMonicBasis);
    }
    let coeffs = expand_in_powers(p, g);
    if coeffs.len() != e + 1 || coeffs[e] != BiPoly::one() {
        return Err(AdicError::NotMonic);
    }
    if e >= 2 && !coeffs[e - 1].is_zero() {
        return Err(AdicError::NotApproximateRoot);
    }
    if coeffs[0].is_zero() {
        return Err(AdicError::DegenerateTail);
    }
    let fint_of = |alpha: &BiPoly| -> Result<u64, AdicError> {
        let exp = gadic_expand(alpha, basis, bounds)?;
        Ok(fint(&exp, weights)?.value)
    };
    let edge_value = fint_of(&coeffs[0])?;
    let mut violations = Vec::new();
    for j in 2..e {
        let alpha_j = &coeffs[e - j];
        if alpha_j.is_zero() {
            continue;
        }
        let v_j = fint_of(alpha_j)?;
        // point strictly below the edge: fint(α_j)/v < j/e
        if v_j as u128 * e as u128 >= j as u128 * edge_value as u128 {
            violations.push((j, v_j));
        }
    }
    Ok(StraightnessReport {
        straight: violations.is_empty(),
        edge_value,
        violations,
    })
}

/// Derive the expansion basis for the middle coefficients of an expansion
/// against `g` from the gcd chain of the weights.
///
/// For weights `(w_0, ..., w_m)` and `D_j = gcd(w_0, ..., w_{j-1})`, the
/// `j`-th basis element is the approximate root of `g` of index
/// `D_j / gcd(all weights)`; the construction is invariant under scaling
/// the weights.
fn basis_from_weights(g: &BiPoly, weights: &[u64]) -> Result<(Vec<BiPoly>, Vec<usize>), AdicError> {
    if weights.is_empty() || weights[0] == 0 {
        return Err(AdicError::BadWeights);
    }
    if !g.is_monic_y() {
        return Err(AdicError::NonMonicBasis);
    }
    let n = g.deg_y().unwrap();
    let overall = weights.iter().fold(0u64, |a, &b| a.gcd(&b));
    let mut chain = Vec::with_capacity(weights.len().saturating_sub(1));
    let mut d = 0u64;
    for &w in &weights[..weights.len() - 1] {
        d = d.gcd(&w);
        chain.push(d);
    }
    let mut basis = Vec::new();
    let mut degrees = Vec::new();
    for dj in &chain {
        let index = dj / overall;
        if index == 0 || !(n as u64).is_multiple_of(index) {
            return Err(AdicError::BadWeights);
        }
        let root = approximate_root(g, index as usize)?;
        degrees.push(n / index as usize);
        basis.push(root);
    }
    let mut bounds = Vec::with_capacity(basis.len());
    for i in 0..basis.len() {
        let next = if i + 1 < basis.len() {
            degrees[i + 1]
        } else {
            n
        };
        if next % degrees[i] != 0 {
            return Err(AdicError::BadWeights);
        }
        bounds.push(next / degrees[i]);
    }
    Ok((basis, bounds))
}
