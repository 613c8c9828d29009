//! Numerical-semigroup arithmetic: gcd chains, membership, Frobenius
//! numbers of free semigroups, and δ-sequence validation.

use std::collections::BTreeSet;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("generator list must be nonempty with positive entries")]
    BadGenerators,
    #[error("generators must have gcd 1")]
    NotNumerical,
    #[error("gcd chain does not terminate at 1")]
    IncompleteChain,
    #[error("sequence is not free for this arrangement")]
    NotFree,
}

/// First failing δ-sequence condition, in checking order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum DeltaReason {
    #[error("entries are not coprime (gcd chain does not reach 1)")]
    NotCoprime,
    #[error("not free with respect to the arrangement")]
    NotFree,
    #[error("products a_k d_k do not strictly decrease at index {index}")]
    ProductInequality { index: usize },
    #[error("chain a_0 > a_1 > D_2 > ... > 1 fails at position {position}")]
    ChainCondition { position: usize },
}

/// The characteristic sequences of an arrangement `(r_0, ..., r_h)`:
/// `d_1 = r_0`, `d_{k+1} = gcd(d_k, r_k)`, `e_k = d_k / d_{k+1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GcdChain {
    r: Vec<u64>,
    d: Vec<u64>,
    e: Vec<u64>,
}

impl GcdChain {
    pub fn new(seq: &[u64]) -> Result<Self, SemigroupError> {
        if seq.is_empty() || seq.contains(&0) {
            return Err(SemigroupError::BadGenerators);
        }
        let mut d = vec![seq[0]];
        let mut e = Vec::with_capacity(seq.len() - 1);
        for k in 1..seq.len() {
            let next = d[k - 1].gcd(&seq[k]);
            e.push(d[k - 1] / next);
            d.push(next);
        }
        Ok(GcdChain {
            r: seq.to_vec(),
            d,
            e,
        })
    }

    /// Generators `r_0, ..., r_h`.
    pub fn r(&self) -> &[u64] {
        &self.r
    }

    /// Divisors `d_1, ..., d_{h+1}` (so `d()[k]` is `d_{k+1}`).
    pub fn d(&self) -> &[u64] {
        &self.d
    }

    /// Quotients `e_1, ..., e_h`.
    pub fn e(&self) -> &[u64] {
        &self.e
    }

    pub fn h(&self) -> usize {
        self.r.len() - 1
    }

    /// Complete when `d_{h+1} = 1`.
    pub fn is_complete(&self) -> bool {
        *self.d.last().unwrap() == 1
    }
}

/// A numerical semigroup with its membership table built out to the
/// conductor plus the largest generator, so queries never recompute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumSgp {
    generators: Vec<u64>,
    table: Vec<bool>,
    frobenius: i64,
    conductor: u64,
    genus: u64,
}

impl NumSgp {
    pub fn new(generators: &[u64]) -> Result<Self, SemigroupError> {
        if generators.is_empty() || generators.contains(&0) {
            return Err(SemigroupError::BadGenerators);
        }
        let mut gens: Vec<u64> = generators.to_vec();
        gens.sort_unstable();
        gens.dedup();
        let g = gens.iter().fold(0u64, |a, &b| a.gcd(&b));
        if g != 1 {
            return Err(SemigroupError::NotNumerical);
        }
        let min = gens[0];
        let max = *gens.last().unwrap();
        // grow the table until a run of `min` consecutive members appears
        let mut bound = ((min.saturating_sub(1)) * (max.saturating_sub(1))).max(min) + max;
        loop {
            let table = reachable(&gens, bound as usize);
            if let Some(conductor) = conductor_from(&table, min as usize) {
                let frobenius = conductor as i64 - 1;
                let genus = table[..conductor].iter().filter(|m| !**m).count() as u64;
                let table = table[..(conductor + max as usize).min(table.len())].to_vec();
                return Ok(NumSgp {
                    generators: gens,
                    table,
                    frobenius,
                    conductor: conductor as u64,
                    genus,
                });
            }
            bound *= 2;
        }
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Number of gaps.
    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn contains(&self, n: i64) -> bool {
        if n < 0 {
            return false;
        }
        let n = n as usize;
        if n >= self.conductor as usize {
            return true;
        }
        self.table[n]
    }

    pub fn gaps(&self) -> Vec<u64> {
        (0..self.conductor)
            .filter(|&n| !self.table[n as usize])
            .collect()
    }

    /// The unique minimal generating set, obtained by dropping every
    /// generator that the others already produce.
    pub fn minimal_generators(&self) -> Vec<u64> {
        self.generators
            .iter()
            .copied()
            .filter(|&g| {
                let others: Vec<u64> = self
                    .generators
                    .iter()
                    .copied()
                    .filter(|&o| o != g)
                    .collect();
                others.is_empty() || !membership(g as i64, &others)
            })
            .collect()
    }
}

fn reachable(gens: &[u64], bound: usize) -> Vec<bool> {
    let mut table = vec![false; bound + 1];
    table[0] = true;
    for n in 1..=bound {
        for &g in gens {
            let g = g as usize;
            if g <= n && table[n - g] {
                table[n] = true;
                break;
            }
        }
    }
    table
}

fn conductor_from(table: &[bool], min: usize) -> Option<usize> {
    let mut run = 0usize;
    let mut candidate = 0usize;
    for (n, &m) in table.iter().enumerate() {
        if m {
            if run == 0 {
                candidate = n;
            }
            run += 1;
            if run >= min {
                return Some(candidate);
            }
        } else {
            run = 0;
        }
    }
    None
}

/// Is `n` a nonnegative integer combination of the generators?
///
/// Plain bounded dynamic programming; the generators need not have gcd 1.
/// Negative `n` is false by convention.
pub fn membership(n: i64, generators: &[u64]) -> bool {
    if n < 0 {
        return false;
    }
    let n = n as usize;
    let mut table = vec![false; n + 1];
    table[0] = true;
    for m in 1..=n {
        for &g in generators {
            let g = g as usize;
            if g != 0 && g <= m && table[m - g] {
                table[m] = true;
                break;
            }
        }
    }
    table[n]
}

/// Freeness of the arrangement: for every `k ≥ 1`, `e_k·r_k` lies in the
/// semigroup of the earlier generators and no smaller positive multiple
/// does. False when the gcd chain does not reach 1.
pub fn is_free(seq: &[u64]) -> bool {
    let chain = match GcdChain::new(seq) {
        Ok(c) => c,
        Err(_) => return false,
    };
    if !chain.is_complete() {
        return false;
    }
    for k in 1..seq.len() {
        let prefix = &seq[..k];
        let ek = chain.e[k - 1];
        if !membership((ek * seq[k]) as i64, prefix) {
            return false;
        }
        for j in 1..ek {
            if membership((j * seq[k]) as i64, prefix) {
                return false;
            }
        }
    }
    true
}

/// Frobenius number of a free arrangement: `Σ (e_k − 1) r_k − r_0`.
///
/// Validates freeness first — the closed form is only meaningful for free
/// arrangements.
pub fn frobenius_free(seq: &[u64]) -> Result<i64, SemigroupError> {
    let chain = GcdChain::new(seq)?;
    if !chain.is_complete() {
        return Err(SemigroupError::IncompleteChain);
    }
    if !is_free(seq) {
        return Err(SemigroupError::NotFree);
    }
    let sum: i64 = chain
        .e
        .iter()
        .zip(&seq[1..])
        .map(|(&e, &r)| (e as i64 - 1) * r as i64)
        .sum();
    Ok(sum - seq[0] as i64)
}

/// A validated δ-sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DeltaSeq {
    seq: Vec<u64>,
    chain: GcdChain,
}

impl DeltaSeq {
    /// Check the three δ-sequence conditions in order; the first failure
    /// is reported.
    pub fn new(seq: &[u64]) -> Result<Self, DeltaReason> {
        let chain = GcdChain::new(seq).map_err(|_| DeltaReason::NotCoprime)?;
        if !chain.is_complete() {
            return Err(DeltaReason::NotCoprime);
        }
        if !is_free(seq) {
            return Err(DeltaReason::NotFree);
        }
        // a_k D_k > a_{k+1} D_{k+1} for 1 <= k <= s-1
        for k in 1..seq.len() - 1 {
            if seq[k] * chain.d[k - 1] <= seq[k + 1] * chain.d[k] {
                return Err(DeltaReason::ProductInequality { index: k });
            }
        }
        // a_0 > a_1 > D_2 > D_3 > ... > D_{s+1} = 1
        if seq.len() < 2 {
            return Err(DeltaReason::ChainCondition { position: 0 });
        }
        let mut strict = vec![seq[0], seq[1]];
        strict.extend(&chain.d[1..]);
        for (pos, w) in strict.windows(2).enumerate() {
            if w[0] <= w[1] {
                return Err(DeltaReason::ChainCondition { position: pos });
            }
        }
        Ok(DeltaSeq {
            seq: seq.to_vec(),
            chain,
        })
    }

    pub fn seq(&self) -> &[u64] {
        &self.seq
    }

    pub fn chain(&self) -> &GcdChain {
        &self.chain
    }

    pub fn frobenius(&self) -> i64 {
        frobenius_free(&self.seq).expect("validated delta sequence is free")
    }
}

/// Verdict plus the first failing condition, if any.
pub fn is_delta_sequence(seq: &[u64]) -> (bool, Option<DeltaReason>) {
    match DeltaSeq::new(seq) {
        Ok(_) => (true, None),
        Err(r) => (false, Some(r)),
    }
}

/// Mutual membership of all generators.
pub fn same_semigroup(a: &[u64], b: &[u64]) -> bool {
    a.iter().all(|&g| membership(g as i64, b)) && b.iter().all(|&g| membership(g as i64, a))
}

/// True when `r_i = d_{i+1}` for all `i ≥ 1`: the curve has conductor 0
/// and admits a polynomial parametrization with coordinate ring `K[t]`.
pub fn is_polynomial_curve(chain: &GcdChain) -> bool {
    chain.is_complete() && (1..chain.r.len()).all(|i| chain.r[i] == chain.d[i])
}

/// Canonical key for deduplicating semigroups given by generator lists.
pub(crate) fn canonical_generators(gens: &[u64]) -> Result<BTreeSet<u64>, SemigroupError> {
    Ok(NumSgp::new(gens)?
        .minimal_generators()
        .into_iter()
        .collect())
}
