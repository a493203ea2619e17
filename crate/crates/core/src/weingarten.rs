//! The unitary Weingarten function and monomial integrals over `U(n)`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ratfunc::{rat, GroupRingElement, LaurentSeries, Polynomial, RationalFunction};
use crate::symgrp::{
    all_permutations, character, factorial, moebius, partitions, ssyt_poly, syt_count, CycleType, Partition,
    Permutation,
};

/// Largest `L` for which the group-ring oracles run by default.
pub const DEFAULT_ORACLE_CAP: usize = 4;

fn wg_memo() -> &'static Mutex<HashMap<Partition, RationalFunction>> {
    static MEMO: OnceLock<Mutex<HashMap<Partition, RationalFunction>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `Wg_L(μ) = (1/L!²) Σ_λ χ_λ(e)² χ_λ(μ) / d_λ(n)`.
pub fn wg(size: usize, mu: &CycleType) -> Result<RationalFunction> {
    if mu.size() != size {
        return Err(Error::SizeMismatch(format!("cycle type {mu} is not a partition of {size}")));
    }
    if let Some(v) = wg_memo().lock().unwrap().get(mu) {
        return Ok(v.clone());
    }
    let fact = factorial(size) as i64;
    let mut total = RationalFunction::zero();
    for lambda in partitions(size) {
        let chi = character(&lambda, mu)?;
        if chi == 0 {
            continue;
        }
        let e = syt_count(&lambda) as i64;
        let term = RationalFunction::new(Polynomial::constant(rat(e * e * chi)), ssyt_poly(&lambda))?;
        total = &total + &term;
    }
    let total = total.scale(&BigRational::new((1).into(), (fact * fact).into()));
    wg_memo().lock().unwrap().insert(mu.clone(), total.clone());
    Ok(total)
}

/// `Wg_L(p)` for a permutation `p ∈ S_L`.
pub fn wg_perm(p: &Permutation) -> RationalFunction {
    wg(p.size(), &p.cycle_type()).expect("cycle type has the permutation's size")
}

/// The inverse of `σ ↦ n^{#cycles(σ)}` in `Q(n)[S_L]`, by direct group-ring
/// inversion. Independent of the character formula.
pub fn wg_table(size: usize, cap: usize) -> Result<GroupRingElement> {
    if size > cap {
        return Err(Error::CapExceeded { size, cap });
    }
    GroupRingElement::from_fn(size, |p| RationalFunction::n_pow(p.num_cycles() as i64)).invert()
}

/// Leading term of `Wg_L(p)` at `n → ∞` as `(Möb(p), −(L + ‖p‖))`.
pub fn wg_leading(p: &Permutation) -> (i64, i64) {
    (moebius(p), -((p.size() + p.norm()) as i64))
}

/// Truncation of `n^{-L} Σ_k Σ_{ρ_1⋯ρ_k = p, ρ_i ≠ id} (−1)^k n^{−Σ‖ρ_i‖}`.
///
/// `g[m][q]` sums `(−1)^k` over factorizations of `q` into non-identity
/// factors of total norm `m`; peeling off the first factor gives the
/// recursion `g[m][q] = −Σ_ρ g[m − ‖ρ‖][ρ⁻¹q]`.
pub fn wg_asymptotic(size: usize, p: &Permutation, floor: i64, cap: usize) -> Result<LaurentSeries> {
    if size > cap {
        return Err(Error::CapExceeded { size, cap });
    }
    if p.size() != size {
        return Err(Error::SizeMismatch(format!("permutation of {} points in S_{size}", p.size())));
    }
    let mut out = LaurentSeries::new(floor);
    let budget = -floor - size as i64;
    if budget < 0 {
        return Ok(out);
    }
    let budget = budget as usize;
    let perms = all_permutations(size);
    let order = perms.len();
    let factors: Vec<(usize, &Permutation)> =
        perms.iter().filter(|r| !r.is_identity()).map(|r| (r.norm(), r)).collect();
    let inv_mul: Vec<Vec<usize>> =
        perms.iter().map(|r| perms.iter().map(|q| r.inverse().compose(q).rank()).collect()).collect();
    let mut g = vec![vec![BigRational::zero(); order]; budget + 1];
    g[0][0] = rat(1);
    for m in 1..=budget {
        for q in 0..order {
            let mut acc = BigRational::zero();
            for &(norm, r) in &factors {
                if norm <= m {
                    acc -= &g[m - norm][inv_mul[r.rank()][q]];
                }
            }
            g[m][q] = acc;
        }
    }
    let target = p.rank();
    for (m, row) in g.iter().enumerate() {
        out.add_term(-(size as i64) - m as i64, row[target].clone());
    }
    Ok(out)
}

/// `∫ U_{i_1 j_1}⋯U_{i_L j_L} conj(U_{i'_1 j'_1}⋯U_{i'_L j'_L}) dU`
/// as a rational function of `n`.
pub fn monomial_integral(i: &[usize], j: &[usize], ip: &[usize], jp: &[usize]) -> Result<RationalFunction> {
    let size = i.len();
    if j.len() != size || ip.len() != size || jp.len() != size {
        return Err(Error::SizeMismatch("index tuples must have equal length".into()));
    }
    let perms = all_permutations(size);
    let aligns = |a: &[usize], b: &[usize], s: &Permutation| (0..size).all(|k| a[k] == b[s.apply(k)]);
    let rows: Vec<&Permutation> = perms.iter().filter(|s| aligns(i, ip, s)).collect();
    let cols: Vec<&Permutation> = perms.iter().filter(|t| aligns(j, jp, t)).collect();
    let mut counts: HashMap<Partition, i64> = HashMap::new();
    for s in &rows {
        let s_inv = s.inverse();
        for t in &cols {
            *counts.entry(s_inv.compose(t).cycle_type()).or_default() += 1;
        }
    }
    let mut keys: Vec<_> = counts.into_iter().collect();
    keys.sort();
    let mut total = RationalFunction::zero();
    for (mu, c) in keys {
        total = &total + &wg(size, &mu)?.scale(&rat(c));
    }
    Ok(total)
}
