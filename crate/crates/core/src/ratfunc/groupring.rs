use std::fmt;

use super::rational::RationalFunction;
use crate::error::{Error, Result};
use crate::symgrp::{all_permutations, Permutation};

/// Element of `Q(n)[S_L]`, stored densely by lexicographic rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingElement {
    size: usize,
    coeffs: Vec<RationalFunction>,
}

impl GroupRingElement {
    pub fn zero(size: usize) -> Self {
        let order = all_permutations(size).len();
        GroupRingElement { size, coeffs: vec![RationalFunction::zero(); order] }
    }

    /// `c · δ_p`.
    pub fn delta(p: &Permutation, c: RationalFunction) -> Self {
        let mut out = GroupRingElement::zero(p.size());
        out.coeffs[p.rank()] = c;
        out
    }

    pub fn identity(size: usize) -> Self {
        GroupRingElement::delta(&Permutation::identity(size), RationalFunction::one())
    }

    pub fn from_fn(size: usize, f: impl Fn(&Permutation) -> RationalFunction) -> Self {
        GroupRingElement { size, coeffs: all_permutations(size).iter().map(f).collect() }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, p: &Permutation) -> &RationalFunction {
        &self.coeffs[p.rank()]
    }

    pub fn set(&mut self, p: &Permutation, c: RationalFunction) {
        self.coeffs[p.rank()] = c;
    }

    /// Non-zero entries in lexicographic order.
    pub fn support(&self) -> Vec<(Permutation, RationalFunction)> {
        all_permutations(self.size)
            .into_iter()
            .zip(self.coeffs.iter())
            .filter(|(_, c)| !c.is_zero())
            .map(|(p, c)| (p, c.clone()))
            .collect()
    }

    pub fn add(&self, other: &GroupRingElement) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(GroupRingElement { size: self.size, coeffs })
    }

    /// Convolution `(a*b)(π) = Σ_{στ=π} a(σ) b(τ)`.
    pub fn mul(&self, other: &GroupRingElement) -> Result<Self> {
        self.check(other)?;
        let perms = all_permutations(self.size);
        let mut out = vec![RationalFunction::zero(); perms.len()];
        for (s, a) in perms.iter().zip(&self.coeffs) {
            if a.is_zero() {
                continue;
            }
            for (t, b) in perms.iter().zip(&other.coeffs) {
                if b.is_zero() {
                    continue;
                }
                let k = s.compose(t).rank();
                out[k] = &out[k] + &(a * b);
            }
        }
        Ok(GroupRingElement { size: self.size, coeffs: out })
    }

    /// Two-sided inverse by Gaussian elimination on the left regular
    /// representation over `Q(n)`.
    pub fn invert(&self) -> Result<Self> {
        let perms = all_permutations(self.size);
        let m = perms.len();
        // (a*x)(π) = Σ_τ a(π τ⁻¹) x(τ)
        let mut rows: Vec<Vec<RationalFunction>> = perms
            .iter()
            .map(|pi| {
                let mut row: Vec<RationalFunction> =
                    perms.iter().map(|tau| self.coeffs[pi.compose(&tau.inverse()).rank()].clone()).collect();
                row.push(if pi.is_identity() { RationalFunction::one() } else { RationalFunction::zero() });
                row
            })
            .collect();
        let singular = || Error::Singular { size: self.size, element: self.to_string() };
        for col in 0..m {
            let pivot = (col..m).find(|&r| !rows[r][col].is_zero()).ok_or_else(singular)?;
            rows.swap(col, pivot);
            let inv = rows[col][col].invert()?;
            let pivot_row: Vec<RationalFunction> = rows[col].iter().map(|c| c * &inv).collect();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == col || row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for (c, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                    if !p.is_zero() {
                        *c = &*c - &(&f * p);
                    }
                }
            }
            rows[col] = pivot_row;
        }
        let coeffs = rows.into_iter().map(|mut r| r.pop().unwrap()).collect();
        Ok(GroupRingElement { size: self.size, coeffs })
    }

    fn check(&self, other: &GroupRingElement) -> Result<()> {
        if self.size != other.size {
            return Err(Error::SizeMismatch(format!("S_{} vs S_{}", self.size, other.size)));
        }
        Ok(())
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.support();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = terms.iter().map(|(p, c)| format!("[{c}]{p}")).collect();
        write!(f, "{}", s.join(" + "))
    }
}
