//! Permutations, partitions and characters of the symmetric groups.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratfunc::{rat, ratio, Polynomial};

/// A permutation of `{0, …, L−1}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(size: usize) -> Self {
        Permutation { images: (0..size).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::Invalid(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of `size` points from disjoint cycles.
    pub fn from_cycles(size: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..size).collect();
        let mut touched = vec![false; size];
        for cyc in cycles {
            for (k, &a) in cyc.iter().enumerate() {
                if a >= size || touched[a] {
                    return Err(Error::Invalid(format!("bad cycle {cyc:?}")));
                }
                touched[a] = true;
                images[a] = cyc[(k + 1) % cyc.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// A fixed permutation with the given cycle type: consecutive blocks.
    pub fn of_type(mu: &Partition) -> Self {
        let mut images = Vec::with_capacity(mu.size());
        let mut start = 0;
        for &part in mu.parts() {
            for k in 0..part {
                images.push(start + (k + 1) % part);
            }
            start += part;
        }
        Permutation { images }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.size(), other.size());
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &p) in self.images.iter().enumerate() {
            inv[p] = i;
        }
        Permutation { images: inv }
    }

    /// Cycles in order of their smallest element, each starting at it.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size()];
        let mut out = Vec::new();
        for start in 0..self.size() {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i);
                i = self.images[i];
            }
            out.push(cyc);
        }
        out
    }

    pub fn num_cycles(&self) -> usize {
        let mut seen = vec![false; self.size()];
        let mut count = 0;
        for start in 0..self.size() {
            if !seen[start] {
                count += 1;
                let mut i = start;
                while !seen[i] {
                    seen[i] = true;
                    i = self.images[i];
                }
            }
        }
        count
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::from_parts(self.cycles().iter().map(Vec::len).collect())
    }

    /// Minimal number of transpositions: `L − #cycles`.
    pub fn norm(&self) -> usize {
        self.size() - self.num_cycles()
    }

    pub fn sign(&self) -> i64 {
        if self.norm().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Position in the lexicographic order of `all_permutations`.
    pub fn rank(&self) -> usize {
        let n = self.size();
        let mut rank = 0;
        let mut used = vec![false; n];
        for (k, &p) in self.images.iter().enumerate() {
            let smaller = (0..p).filter(|&q| !used[q]).count();
            rank = rank * (n - k) + smaller;
            used[p] = true;
        }
        rank
    }
}

/// Cycle notation, e.g. `(0 1 2)(3 4)`; fixed points omitted, identity is `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let s: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", s.join(" "))?;
        }
        Ok(())
    }
}

/// All of `S_L` in lexicographic order of the one-line notation.
pub fn all_permutations(size: usize) -> Vec<Permutation> {
    let mut cur: Vec<usize> = (0..size).collect();
    let mut out = vec![Permutation { images: cur.clone() }];
    while next_permutation(&mut cur) {
        out.push(Permutation { images: cur.clone() });
    }
    out
}

pub(crate) fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// A weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

/// Cycle types are partitions of the permutation size.
pub type CycleType = Partition;

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("{parts:?} is not a partition")));
        }
        Ok(Partition { parts })
    }

    /// Sorts the given positive parts.
    pub fn from_parts(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Order of the centralizer of a permutation of this cycle type.
    pub fn centralizer_size(&self) -> u64 {
        let mut mult: HashMap<usize, u64> = HashMap::new();
        for &p in &self.parts {
            *mult.entry(p).or_default() += 1;
        }
        mult.iter().map(|(&k, &m)| (k as u64).pow(m as u32) * factorial(m as usize)).product()
    }

    pub fn class_size(&self) -> u64 {
        factorial(self.size()) / self.centralizer_size()
    }

    /// Hook lengths of the Young diagram, row by row.
    pub fn hooks(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.size());
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                let below = self.parts[i + 1..].iter().take_while(|&&r| r > j).count();
                out.push(row - j + below);
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Parses `2,1` or `(2,1)`.
impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = inner
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Invalid(format!("bad partition {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `n` in reverse lexicographic order, `(n)` first.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

type CharKey = (Vec<usize>, Vec<usize>);

fn char_memo() -> &'static Mutex<HashMap<CharKey, i64>> {
    static MEMO: OnceLock<Mutex<HashMap<CharKey, i64>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `χ_λ(μ)` by the Murnaghan–Nakayama rule on beta-sets.
pub fn character(lambda: &Partition, mu: &CycleType) -> Result<i64> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch(format!("|{lambda}| = {} but |{mu}| = {}", lambda.size(), mu.size())));
    }
    Ok(mn(&lambda.parts, &mu.parts))
}

fn mn(lambda: &[usize], mu: &[usize]) -> i64 {
    if mu.is_empty() {
        return 1;
    }
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(&v) = char_memo().lock().unwrap().get(&key) {
        return v;
    }
    let k = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &l)| l + (k - 1 - i)).collect();
    let r = mu[0];
    let mut total = 0;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let between = beta.iter().filter(|&&c| c > b - r && c < b).count();
        let mut next = beta.clone();
        next[idx] = b - r;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let shape: Vec<usize> = next.iter().enumerate().map(|(i, &c)| c - (k - 1 - i)).filter(|&p| p > 0).collect();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * mn(&shape, &mu[1..]);
    }
    char_memo().lock().unwrap().insert(key, total);
    total
}

/// Number of standard Young tableaux, by the hook-length formula.
pub fn syt_count(lambda: &Partition) -> u64 {
    let hooks: u64 = lambda.hooks().iter().map(|&h| h as u64).product();
    factorial(lambda.size()) / hooks
}

/// `d_λ(n) = (χ_λ(e)/L!) Π_{(i,j)∈λ} (n + j − i)`, the dimension of the
/// `U(n)` irreducible indexed by `λ`.
pub fn ssyt_poly(lambda: &Partition) -> Polynomial {
    let mut p = Polynomial::constant(ratio(syt_count(lambda) as i64, factorial(lambda.size()) as i64));
    for (i, &row) in lambda.parts.iter().enumerate() {
        for j in 0..row {
            p = &p * &Polynomial::linear(rat(j as i64 - i as i64));
        }
    }
    p
}

pub fn catalan(m: usize) -> i64 {
    let mut c: BigRational = BigRational::one();
    for k in 0..m {
        c *= ratio(2 * (2 * k as i64 + 1), k as i64 + 2);
    }
    i64::try_from(c.to_integer()).expect("catalan number fits i64")
}

/// `Möb(p) = sgn(p) Π_C c_{|C|−1}` over the cycles of `p`.
pub fn moebius(p: &Permutation) -> i64 {
    p.sign() * p.cycles().iter().map(|c| catalan(c.len() - 1)).product::<i64>()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn cycle_data() {
        let id = Permutation::identity(3);
        assert_eq!(id.cycle_type(), part(&[1, 1, 1]));
        assert_eq!(id.norm(), 0);
        let t = Permutation::from_cycles(2, &[&[0, 1]]).unwrap();
        assert_eq!(t.cycle_type(), part(&[2]));
        assert_eq!(t.norm(), 1);
        let c = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        assert_eq!(c.cycle_type(), part(&[3]));
        assert_eq!(c.norm(), 2);
        assert_eq!(c.inverse(), Permutation::from_cycles(3, &[&[0, 2, 1]]).unwrap());
        assert!(c.compose(&c.inverse()).is_identity());
        assert_eq!(c.to_string(), "(0 1 2)");
        assert!(Permutation::from_images(vec![0, 0]).is_err());
    }

    #[test]
    fn enumeration_order_and_rank() {
        let all = all_permutations(3);
        assert_eq!(all.len(), 6);
        assert_eq!(all[1].images(), &[0, 2, 1]);
        for (i, p) in all_permutations(4).iter().enumerate() {
            assert_eq!(p.rank(), i);
        }
        assert_eq!(all_permutations(0).len(), 1);
    }

    #[test]
    fn partition_lists() {
        assert_eq!(partitions(2), vec![part(&[2]), part(&[1, 1])]);
        assert_eq!(partitions(3), vec![part(&[3]), part(&[2, 1]), part(&[1, 1, 1])]);
        assert_eq!(partitions(5).len(), 7);
        assert_eq!(partitions(0), vec![part(&[])]);
        assert_eq!("2,1".parse::<Partition>().unwrap(), part(&[2, 1]));
        assert!("1,2".parse::<Partition>().is_err());
    }

    #[test]
    fn characters() {
        for l in 1..=6 {
            for mu in partitions(l) {
                let p = Permutation::of_type(&mu);
                assert_eq!(p.cycle_type(), mu);
                assert_eq!(character(&part(&[l]), &mu).unwrap(), 1);
                assert_eq!(character(&part(&vec![1; l]), &mu).unwrap(), p.sign());
            }
            for lambda in partitions(l) {
                let e = part(&vec![1; l]);
                assert_eq!(character(&lambda, &e).unwrap(), syt_count(&lambda) as i64);
            }
        }
        assert_eq!(character(&part(&[2, 1]), &part(&[1, 1, 1])).unwrap(), 2);
        assert_eq!(character(&part(&[2, 1]), &part(&[3])).unwrap(), -1);
        assert_eq!(character(&part(&[2, 1]), &part(&[2, 1])).unwrap(), 0);
        assert!(character(&part(&[2]), &part(&[1])).is_err());
    }

    #[test]
    fn column_orthogonality() {
        for l in 1..=5 {
            for mu in partitions(l) {
                let s: i64 = partitions(l).iter().map(|la| character(la, &mu).unwrap().pow(2)).sum();
                assert_eq!(s as u64, mu.centralizer_size());
            }
        }
    }

    #[test]
    fn hook_lengths() {
        assert_eq!(syt_count(&part(&[3])), 1);
        assert_eq!(syt_count(&part(&[2, 1])), 2);
        assert_eq!(syt_count(&part(&[2, 2])), 2);
        assert_eq!(part(&[2, 2]).hooks(), vec![3, 2, 2, 1]);
    }

    #[test]
    fn dimension_polynomials() {
        assert_eq!(ssyt_poly(&part(&[1])), Polynomial::from_ints(&[0, 1]));
        assert_eq!(ssyt_poly(&part(&[2])), Polynomial::new(vec![rat(0), ratio(1, 2), ratio(1, 2)]));
        assert_eq!(ssyt_poly(&part(&[1, 1])), Polynomial::new(vec![rat(0), ratio(-1, 2), ratio(1, 2)]));
        for l in 1..=5 {
            for lambda in partitions(l) {
                let d = ssyt_poly(&lambda);
                for n in 0..lambda.len() {
                    assert_eq!(d.evaluate(&rat(n as i64)), rat(0));
                }
                let v = d.evaluate(&rat(l as i64));
                assert!(v.is_integer() && v > rat(0));
            }
        }
    }

    #[test]
    fn moebius_values() {
        assert_eq!(moebius(&Permutation::identity(4)), 1);
        assert_eq!(moebius(&Permutation::from_cycles(4, &[&[1, 3]]).unwrap()), -1);
        assert_eq!(moebius(&Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap()), 2);
        assert_eq!((0..6).map(catalan).collect::<Vec<_>>(), vec![1, 1, 2, 5, 14, 42]);
        for p in all_permutations(4) {
            assert_eq!(moebius(&p), moebius(&Permutation::of_type(&p.cycle_type())));
        }
    }
}
