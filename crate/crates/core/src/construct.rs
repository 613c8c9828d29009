//! Canonical curves from δ-sequences, enumeration of δ-sequences with a
//! given Frobenius number, and the same-semigroup embedding filter.

use std::collections::{BTreeSet, HashMap};

use num_integer::Integer;
use thiserror::Error;

use crate::ringcore::BiPoly;
use crate::semigroup::{
    canonical_generators, same_semigroup, DeltaReason, DeltaSeq, NumSgp, SemigroupError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("not a delta sequence: {0}")]
    NotDeltaSequence(DeltaReason),
    #[error("generators have Frobenius number {actual}, expected {expected}")]
    FrobeniusMismatch { expected: i64, actual: i64 },
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

/// The unique bounded representation `r_h d_h = θ_0 r_0 + Σ θ_i r_i`
/// with `θ_i < e_i` for `i ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaSolution {
    pub theta: Vec<u64>,
}

/// Solve for the bounded representation by descending modular elimination:
/// working down from `θ_{h-1}`, each exponent is pinned by a congruence
/// modulo `e_i`, and freeness guarantees the leftover is a multiple of `r_0`.
pub fn solve_theta(seq: &DeltaSeq) -> ThetaSolution {
    let r = seq.chain().r();
    let d = seq.chain().d();
    let e = seq.chain().e();
    let h = seq.chain().h();
    assert!(h >= 1, "delta sequences have at least two entries");
    let target = r[h] * d[h - 1];
    let mut rem = target;
    let mut theta = vec![0u64; h];
    for i in (1..h).rev() {
        // θ_i r_i ≡ rem (mod d_i), solved modulo e_i = d_i / d_{i+1}
        let di1 = d[i];
        let ei = e[i - 1];
        debug_assert_eq!(rem % di1, 0);
        let a = (rem / di1) % ei;
        let b = (r[i] / di1) % ei;
        let ti = (a * mod_inverse(b, ei)) % ei;
        theta[i] = ti;
        rem = rem
            .checked_sub(ti * r[i])
            .expect("free arrangement keeps the remainder nonnegative");
    }
    debug_assert_eq!(rem % r[0], 0);
    theta[0] = rem / r[0];
    ThetaSolution { theta }
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut old_r, mut r) = (a as i64 % m as i64, m as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r.abs(), 1);
    let inv = old_s * old_r.signum();
    inv.rem_euclid(m as i64) as u64
}

/// The canonical curve with the given δ-sequence: all free coefficients
/// zero and the distinguished constants set to -1, built recursively as
/// `G_{k+1} = G_k^{e_k} - x^{θ_0} G_1^{θ_1} ... G_{k-1}^{θ_{k-1}}`.
///
/// The full family of curves with this δ-sequence is obtained from the
/// canonical member by rescaling the distinguished constants and adding,
/// at each level `k`, terms `c_θ(x) G_1^{θ_1} ... G_{k-1}^{θ_{k-1}}`
/// multiplying `G_k^{e_k - i}` whose weighted degree stays strictly below
/// `i` times the edge value — every point strictly below the generalized
/// Newton polygon is a free coefficient. Only the canonical member is
/// emitted.
pub fn curve_from_delta(seq: &[u64]) -> Result<BiPoly, ConstructError> {
    Ok(curve_with_roots(seq)?.pop().unwrap())
}

/// The canonical curve together with its chain `G_1 = y, ..., G_{h+1} = f`.
pub fn curve_with_roots(seq: &[u64]) -> Result<Vec<BiPoly>, ConstructError> {
    let ds = DeltaSeq::new(seq).map_err(ConstructError::NotDeltaSequence)?;
    let chain = ds.chain();
    let (r, d, e) = (chain.r(), chain.d(), chain.e());
    let h = chain.h();
    let mut gs: Vec<BiPoly> = vec![BiPoly::y()];
    for k in 1..=h {
        let dk1 = d[k]; // d_{k+1}
        let scaled: Vec<u64> = r[..=k].iter().map(|ri| ri / dk1).collect();
        let sub = DeltaSeq::new(&scaled).expect("scaled prefix of a delta sequence");
        let theta = solve_theta(&sub).theta;
        let mut monomial = BiPoly::x().pow(theta[0] as usize);
        for (i, &t) in theta.iter().enumerate().skip(1) {
            if t > 0 {
                monomial = &monomial * &gs[i - 1].pow(t as usize);
            }
        }
        let next = &gs[k - 1].pow(e[k - 1] as usize) - &monomial;
        gs.push(next);
    }
    Ok(gs)
}

/// All δ-sequences with the given Frobenius number, sorted lexicographically.
pub fn delta_sequences_with_frobenius(frobenius: i64) -> Vec<DeltaSeq> {
    delta_sequences_with_frobenius_threads(frobenius, 1)
}

/// As [`delta_sequences_with_frobenius`], validating top-level candidates on
/// up to `threads` worker threads. Results are identical for any thread
/// count; the memoized recursion below the top level stays sequential.
pub fn delta_sequences_with_frobenius_threads(frobenius: i64, threads: usize) -> Vec<DeltaSeq> {
    if frobenius < 1 {
        return Vec::new();
    }
    let mu = (frobenius + 1) as u64;
    let mut memo: HashMap<u64, Vec<Vec<u64>>> = HashMap::new();
    let seqs = if threads <= 1 {
        by_conductor(mu, &mut memo)
    } else {
        let candidates = candidates_for(mu, &mut memo);
        let chunk = candidates.len().div_ceil(threads.max(1));
        let mut accepted: BTreeSet<Vec<u64>> = BTreeSet::new();
        if chunk > 0 {
            std::thread::scope(|scope| {
                let handles: Vec<_> = candidates
                    .chunks(chunk)
                    .map(|work| {
                        scope.spawn(move || {
                            work.iter()
                                .filter(|c| DeltaSeq::new(c).is_ok())
                                .cloned()
                                .collect::<Vec<_>>()
                        })
                    })
                    .collect();
                for h in handles {
                    accepted.extend(h.join().expect("enumeration worker"));
                }
            });
        }
        accepted.into_iter().collect()
    };
    seqs.into_iter()
        .map(|s| DeltaSeq::new(&s).expect("validated candidate"))
        .collect()
}

/// Raw candidate sequences for conductor `mu` (length two already filtered,
/// longer ones still to be validated).
fn candidates_for(mu: u64, memo: &mut HashMap<u64, Vec<Vec<u64>>>) -> Vec<Vec<u64>> {
    let mut out = pairs_with_conductor(mu);
    for (rh, dh, mu_h) in branch_choices(mu) {
        for prefix in by_conductor(mu_h, memo) {
            let mut cand: Vec<u64> = prefix.iter().map(|p| p * dh).collect();
            cand.push(rh);
            out.push(cand);
        }
    }
    out
}

/// All δ-sequences with conductor `mu`, memoized.
fn by_conductor(mu: u64, memo: &mut HashMap<u64, Vec<Vec<u64>>>) -> Vec<Vec<u64>> {
    if let Some(hit) = memo.get(&mu) {
        return hit.clone();
    }
    let mut found: BTreeSet<Vec<u64>> = pairs_with_conductor(mu).into_iter().collect();
    for (rh, dh, mu_h) in branch_choices(mu) {
        for prefix in by_conductor(mu_h, memo) {
            let mut cand: Vec<u64> = prefix.iter().map(|p| p * dh).collect();
            cand.push(rh);
            // the full predicate subsumes membership of r_h in the prefix
            // semigroup, the product inequality at the seam, and minimality
            if DeltaSeq::new(&cand).is_ok() {
                found.insert(cand);
            }
        }
    }
    let result: Vec<Vec<u64>> = found.into_iter().collect();
    memo.insert(mu, result.clone());
    result
}

/// Length-two δ-sequences with conductor `mu`: coprime pairs with
/// `(r_0 - 1)(r_1 - 1) = mu` and `r_0 > r_1 ≥ 2`.
fn pairs_with_conductor(mu: u64) -> Vec<Vec<u64>> {
    if mu == 0 || !mu.is_multiple_of(2) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut b = 1u64;
    while b * b < mu {
        if mu.is_multiple_of(b) {
            let a = mu / b;
            let (r0, r1) = (a + 1, b + 1);
            if r0.gcd(&r1) == 1 {
                out.push(vec![r0, r1]);
            }
        }
        b += 1;
    }
    out
}

/// Branches `(r_h, d_h, mu_h)` of the conductor recursion
/// `mu = d_h mu_h + (r_h - 1)(d_h - 1)` with `gcd(r_h, d_h) = 1` and
/// `mu_h` a positive even integer.
fn branch_choices(mu: u64) -> Vec<(u64, u64, u64)> {
    if mu == 0 || !mu.is_multiple_of(2) || mu < 2 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for rh in 2..=mu.saturating_sub(2) {
        let dmax = mu / (rh - 1) + 1;
        for dh in 2..=dmax {
            if rh.gcd(&dh) != 1 {
                continue;
            }
            let used = (dh - 1) * (rh - 1);
            if used >= mu {
                continue;
            }
            let rest = mu - used;
            if !rest.is_multiple_of(dh) {
                continue;
            }
            let mu_h = rest / dh;
            if mu_h < 2 || !mu_h.is_multiple_of(2) {
                continue;
            }
            out.push((rh, dh, mu_h));
        }
    }
    out
}

/// Rows `(F, number of δ-sequences, number of distinct semigroups)` for
/// `F = 1, ..., f_max`.
pub fn count_table(f_max: i64) -> Vec<(i64, usize, usize)> {
    (1..=f_max.max(0))
        .map(|f| {
            let seqs = delta_sequences_with_frobenius(f);
            let distinct: BTreeSet<_> = seqs
                .iter()
                .map(|s| canonical_generators(s.seq()).expect("delta sequences are numerical"))
                .collect();
            (f, seqs.len(), distinct.len())
        })
        .collect()
}

/// δ-sequences with Frobenius number `frobenius` generating the same
/// semigroup as `generators`.
pub fn embeddings_filter(
    generators: &[u64],
    frobenius: i64,
) -> Result<Vec<DeltaSeq>, ConstructError> {
    let s = NumSgp::new(generators)?;
    if s.frobenius() != frobenius {
        return Err(ConstructError::FrobeniusMismatch {
            expected: frobenius,
            actual: s.frobenius(),
        });
    }
    Ok(delta_sequences_with_frobenius(frobenius)
        .into_iter()
        .filter(|ds| same_semigroup(generators, ds.seq()))
        .collect())
}
