//! `Tr_{w_1,…,w_ℓ}(n) = E[tr w_1(A) ⋯ tr w_ℓ(A)]` over Haar-random unitaries,
//! as an exact rational function and as a Laurent series, plus the surface
//! invariants read off from it.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratfunc::{rat, LaurentSeries, RationalFunction};
use crate::surface::{Counter, MatchingSpace};
use crate::symgrp::{all_permutations, factorial, Partition, Permutation};
use crate::weingarten::wg;
use crate::words::{FreeWord, WordTuple};

/// A trace moment; the rational function equals the integral for every
/// `n ≥ threshold`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceValue {
    pub value: RationalFunction,
    pub threshold: usize,
}

fn threshold(sp: &MatchingSpace) -> usize {
    sp.sizes().iter().copied().max().unwrap_or(1).max(1)
}

/// `Tr` by the finite Weingarten sum over `MATCH^{κ≡1}`.
pub fn trace_rational(t: &WordTuple) -> TraceValue {
    trace_rational_budgeted(t, u64::MAX).expect("unbounded budget")
}

/// As [`trace_rational`], failing once more than `budget` pairs of matchings
/// would be visited.
pub fn trace_rational_budgeted(t: &WordTuple, budget: u64) -> Result<TraceValue> {
    let sp = match MatchingSpace::new(t) {
        Ok(sp) => sp,
        Err(Error::Unbalanced { .. }) => return Ok(TraceValue { value: RationalFunction::zero(), threshold: 1 }),
        Err(e) => return Err(e),
    };
    let total = sp.extreme_count();
    if total > budget {
        return Err(Error::Budget { what: format!("matching pairs of ({t})"), budget });
    }
    let perms: Vec<Vec<Permutation>> = sp.sizes().iter().map(|&l| all_permutations(l)).collect();
    let types: Vec<Vec<Partition>> = sp.sizes().iter().map(|&l| crate::symgrp::partitions(l)).collect();
    // per generator: class index of σ_{x,0}⁻¹ σ_{x,1}, by (first, last) ranks
    let class_of: Vec<Vec<u16>> = perms
        .iter()
        .zip(&types)
        .map(|(ps, ty)| {
            let inv: Vec<Permutation> = ps.iter().map(Permutation::inverse).collect();
            let mut table = Vec::with_capacity(ps.len() * ps.len());
            for a in &inv {
                for b in ps {
                    let mu = a.compose(b).cycle_type();
                    table.push(ty.iter().position(|p| *p == mu).unwrap() as u16);
                }
            }
            table
        })
        .collect();

    let counts: HashMap<(Vec<u16>, usize), u64> = (0..total)
        .into_par_iter()
        .fold(HashMap::new, |mut acc, idx| {
            let ext = sp.extremes(idx);
            let first: Vec<&Permutation> = ext.iter().zip(&perms).map(|(&(s, _), p)| &p[s]).collect();
            let last: Vec<&Permutation> = ext.iter().zip(&perms).map(|(&(_, e), p)| &p[e]).collect();
            let o = sp.o_discs(&first, &last);
            let key: Vec<u16> =
                ext.iter().zip(&perms).zip(&class_of).map(|((&(s, e), p), c)| c[s * p.len() + e]).collect();
            *acc.entry((key, o)).or_insert(0) += 1;
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });

    let mut keys: Vec<_> = counts.into_iter().collect();
    keys.sort();
    let mut value = RationalFunction::zero();
    for ((classes, o), c) in keys {
        let mut term = RationalFunction::n_pow(o as i64).scale(&BigRational::from_integer(BigInt::from(c)));
        for ((&k, ty), &l) in classes.iter().zip(&types).zip(sp.sizes()) {
            term = &term * &wg(l, &ty[k as usize])?;
        }
        value = &value + &term;
    }
    let value = &value * &RationalFunction::n_pow(t.trivial() as i64);
    Ok(TraceValue { value, threshold: threshold(&sp) })
}

/// Direct evaluation of the Laurent formula: `Σ (−1)^{|κ(σ)|} n^{χ(σ)}` over
/// restricted `σ` with `χ(σ) ≥ chi_max − 2(depth − 1)`.
///
/// The result is exact down to its floor; levels below it are never
/// extrapolated. Unbalanced tuples give the exact zero series.
pub fn trace_laurent(t: &WordTuple, depth: usize, budget: u64) -> Result<LaurentSeries> {
    if depth == 0 {
        return Err(Error::Invalid("depth must be at least 1".into()));
    }
    let sp = match MatchingSpace::new(t) {
        Ok(sp) => sp,
        Err(Error::Unbalanced { .. }) => return Ok(LaurentSeries::exact()),
        Err(e) => return Err(e),
    };
    let top = chi_max_space(&sp, budget)?;
    let floor = top - 2 * (depth as i64 - 1);
    let counts = sp.restricted_signed_counts(floor, budget)?;
    let shift = t.trivial() as i64;
    let mut out = LaurentSeries::new(floor + shift);
    for (chi, c) in counts {
        out.add_term(chi + shift, rat(c));
    }
    Ok(out)
}

fn chi_max_space(sp: &MatchingSpace, budget: u64) -> Result<i64> {
    let perms: Vec<Vec<Permutation>> = sp.sizes().iter().map(|&l| all_permutations(l)).collect();
    let total = sp.count_matchings(&vec![0; sp.sizes().len()]);
    let counter = Counter::new(budget, "single matchings");
    counter.tick(total)?;
    let best = (0..total)
        .into_par_iter()
        .map(|mut idx| {
            let mut digits = vec![0; perms.len()];
            for (g, &l) in sp.sizes().iter().enumerate().rev() {
                let f = factorial(l);
                digits[g] = (idx % f) as usize;
                idx /= f;
            }
            let pick: Vec<&Permutation> = digits.iter().zip(&perms).map(|(&d, p)| &p[d]).collect();
            sp.o_discs(&pick, &pick)
        })
        .max()
        .unwrap_or(0);
    Ok(best as i64 - sp.total_size() as i64)
}

/// Maximal Euler characteristic of an admissible surface, `None` when the
/// tuple is unbalanced (no such surface exists). Each identity word adds a
/// disc.
pub fn chi_max(t: &WordTuple) -> Option<i64> {
    chi_max_budgeted(t, u64::MAX).expect("unbounded budget")
}

pub fn chi_max_budgeted(t: &WordTuple, budget: u64) -> Result<Option<i64>> {
    match MatchingSpace::new(t) {
        Ok(sp) => Ok(Some(chi_max_space(&sp, budget)? + t.trivial() as i64)),
        Err(Error::Unbalanced { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// `cl(w) = (1 − chi_max(w)) / 2`.
pub fn commutator_length(w: &FreeWord, budget: u64) -> Result<usize> {
    let w = w.reduce();
    if w.is_identity() {
        return Err(Error::TrivialWord);
    }
    let sp = MatchingSpace::new(&WordTuple::single(w))?;
    let chi = chi_max_space(&sp, budget)?;
    Ok(((1 - chi) / 2) as usize)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SclBound {
    /// `min −chi_max(w^{j_1}, …) / (2 Σ j_i)` over the searched tuples.
    #[serde(serialize_with = "crate::ratfunc::serialize_ratio")]
    pub value: BigRational,
    /// The power tuple attaining it.
    pub powers: Vec<usize>,
}

/// Upper bound on `scl(w)` from power tuples `1 ≤ j_1 ≤ … ≤ j_ℓ' ≤ max_j`,
/// `ℓ' ≤ max_l`.
pub fn scl_upper(w: &FreeWord, max_l: usize, max_j: usize, budget: u64) -> Result<SclBound> {
    let w = w.reduce();
    if w.is_identity() {
        return Err(Error::TrivialWord);
    }
    MatchingSpace::new(&WordTuple::single(w.clone()))?;
    if max_l == 0 || max_j == 0 {
        return Err(Error::Invalid("max-l and max-j must be positive".into()));
    }
    let mut best: Option<SclBound> = None;
    let mut powers = Vec::new();
    scl_search(&w, max_l, 1, max_j, budget, &mut powers, &mut best)?;
    Ok(best.expect("at least one power tuple"))
}

fn scl_search(
    w: &FreeWord,
    max_l: usize,
    min_j: usize,
    max_j: usize,
    budget: u64,
    powers: &mut Vec<usize>,
    best: &mut Option<SclBound>,
) -> Result<()> {
    if !powers.is_empty() {
        let t = WordTuple::new(powers.iter().map(|&j| w.power(j as i64)));
        let chi = match chi_max_budgeted(&t, budget) {
            Ok(c) => c.expect("powers of a balanced word are balanced"),
            Err(Error::Budget { budget, .. }) => {
                return Err(Error::Budget { what: format!("chi_max of power tuple {powers:?}"), budget });
            }
            Err(e) => return Err(e),
        };
        let total: usize = powers.iter().sum();
        let v = BigRational::new(BigInt::from(-chi), BigInt::from(2 * total));
        if best.as_ref().is_none_or(|b| v < b.value) {
            *best = Some(SclBound { value: v, powers: powers.clone() });
        }
    }
    if powers.len() == max_l {
        return Ok(());
    }
    for j in min_j..=max_j {
        powers.push(j);
        scl_search(w, max_l, j, max_j, budget, powers, best)?;
        powers.pop();
    }
    Ok(())
}
