//! Matchings of letters and the surfaces `Σ_σ` glued from them.
//!
//! For every generator `x` a matching is a bijection from the positive
//! occurrences of `x` to its negative occurrences, stored as a permutation
//! of `{0, …, L_x − 1}` (positive index ↦ negative index, both in
//! word-then-letter order).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::symgrp::{all_permutations, factorial, Permutation};
use crate::words::{check_balanced, letter_stats, Generator, GeneratorStats, WordTuple};

/// Default cap on visited matchings for the restricted enumerations.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// A tuple `σ = (σ_{x,0}, …, σ_{x,κ_x})_x`, generators in the order of
/// [`MatchingSpace::generators`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MatchingTuple {
    levels: Vec<Vec<Permutation>>,
}

impl MatchingTuple {
    pub fn new(levels: Vec<Vec<Permutation>>) -> Self {
        MatchingTuple { levels }
    }

    /// The `κ ≡ 0` tuple with one matching per generator.
    pub fn single(matchings: Vec<Permutation>) -> Self {
        MatchingTuple { levels: matchings.into_iter().map(|p| vec![p]).collect() }
    }

    pub fn levels(&self) -> &[Vec<Permutation>] {
        &self.levels
    }

    pub fn kappa(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.len() - 1).collect()
    }

    pub fn total_kappa(&self) -> usize {
        self.kappa().iter().sum()
    }

    /// `(−1)^{|κ|}`.
    pub fn sign(&self) -> i64 {
        if self.total_kappa().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// No two adjacent matchings of a generator coincide.
    pub fn is_restricted(&self) -> bool {
        self.levels.iter().all(|l| l.windows(2).all(|w| w[0] != w[1]))
    }

    /// `Σ_x Σ_j ‖σ_{x,j}⁻¹ σ_{x,j+1}‖`.
    pub fn path_norm(&self) -> usize {
        self.levels.iter().flat_map(|l| l.windows(2).map(|w| w[0].inverse().compose(&w[1]).norm())).sum()
    }

    pub fn first(&self) -> Vec<&Permutation> {
        self.levels.iter().map(|l| &l[0]).collect()
    }

    pub fn last(&self) -> Vec<&Permutation> {
        self.levels.iter().map(|l| l.last().unwrap()).collect()
    }
}

impl fmt::Display for MatchingTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.levels.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let s: Vec<String> = l.iter().map(|p| format!("{:?}", p.images())).collect();
            write!(f, "{}", s.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum FaceKind {
    /// Boundary passes through `o`-points.
    O,
    /// An `(x, j)`-disc, bounded by `(x,j)`- and `(x,j+1)`-points only.
    Z { generator: char, level: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    #[serde(flatten)]
    pub kind: FaceKind,
    /// Number of 1-cells along the face boundary.
    pub boundary_length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub chi: i64,
    pub genus: usize,
    pub boundaries: usize,
    /// Indices of the words whose circles bound this component.
    pub words: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CombinatorialSurface {
    pub vertices: usize,
    pub edges: usize,
    pub faces: Vec<Face>,
    pub chi: i64,
    pub components: Vec<Component>,
    pub o_discs: usize,
}

impl CombinatorialSurface {
    /// Number of `(x, j)`-discs.
    pub fn z_discs(&self, generator: char, level: usize) -> usize {
        let k = FaceKind::Z { generator, level };
        self.faces.iter().filter(|f| f.kind == k).count()
    }

    /// `(genus, boundary count)` per component, sorted.
    pub fn profile(&self) -> Vec<(usize, usize)> {
        let mut p: Vec<_> = self.components.iter().map(|c| (c.genus, c.boundaries)).collect();
        p.sort();
        p
    }
}

/// Letter bookkeeping for a balanced tuple; every matching computation goes
/// through this.
#[derive(Clone, Debug)]
pub struct MatchingSpace {
    stats: Vec<GeneratorStats>,
    sizes: Vec<usize>,
    /// Per global letter (words concatenated): generator slot, sign,
    /// occurrence index, word, and the following letter on the same circle.
    slot: Vec<usize>,
    negative: Vec<bool>,
    occurrence: Vec<usize>,
    word: Vec<usize>,
    next: Vec<usize>,
    pos_letter: Vec<Vec<usize>>,
    neg_letter: Vec<Vec<usize>>,
    num_words: usize,
}

impl MatchingSpace {
    /// Fails for unbalanced tuples. Identity words are ignored.
    pub fn new(t: &WordTuple) -> Result<Self> {
        let stats = letter_stats(t);
        check_balanced(&stats)?;
        let slot_of: BTreeMap<Generator, usize> = stats.iter().enumerate().map(|(i, s)| (s.generator, i)).collect();
        let mut sp = MatchingSpace {
            sizes: stats.iter().map(GeneratorStats::count).collect(),
            pos_letter: vec![Vec::new(); stats.len()],
            neg_letter: vec![Vec::new(); stats.len()],
            stats,
            slot: Vec::new(),
            negative: Vec::new(),
            occurrence: Vec::new(),
            word: Vec::new(),
            next: Vec::new(),
            num_words: t.words().len(),
        };
        for (wi, w) in t.words().iter().enumerate() {
            let base = sp.slot.len();
            for (li, l) in w.letters().iter().enumerate() {
                let g = slot_of[&l.generator];
                let id = sp.slot.len();
                sp.slot.push(g);
                sp.negative.push(l.inverse);
                sp.word.push(wi);
                sp.next.push(base + (li + 1) % w.len());
                let list = if l.inverse { &mut sp.neg_letter[g] } else { &mut sp.pos_letter[g] };
                sp.occurrence.push(list.len());
                list.push(id);
            }
        }
        Ok(sp)
    }

    pub fn generators(&self) -> Vec<Generator> {
        self.stats.iter().map(|s| s.generator).collect()
    }

    pub fn stats(&self) -> &[GeneratorStats] {
        &self.stats
    }

    /// `L_x` per generator.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn total_size(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn num_words(&self) -> usize {
        self.num_words
    }

    pub fn num_letters(&self) -> usize {
        self.slot.len()
    }

    /// `|MATCH^κ| = Π_x (L_x!)^{κ_x+1}`, saturating.
    pub fn count_matchings(&self, kappa: &[usize]) -> u64 {
        self.sizes
            .iter()
            .zip(kappa)
            .fold(1u64, |acc, (&l, &k)| acc.saturating_mul(factorial(l).saturating_pow(k as u32 + 1)))
    }

    pub fn validate(&self, s: &MatchingTuple) -> Result<()> {
        if s.levels.len() != self.sizes.len() {
            return Err(Error::SizeMismatch(format!(
                "{} matching sequences for {} generators",
                s.levels.len(),
                self.sizes.len()
            )));
        }
        for (l, &size) in s.levels.iter().zip(&self.sizes) {
            if l.is_empty() || l.iter().any(|p| p.size() != size) {
                return Err(Error::SizeMismatch(format!("matchings must be permutations of {size} points")));
            }
        }
        Ok(())
    }

    /// Number of `o`-discs; it only depends on the first and last matching of
    /// every generator.
    ///
    /// Each `o`-disc boundary runs from the end of a letter interval across an
    /// `o`-point into the next letter and jumps along the matching edge of
    /// that letter's first marked point, which lands at the end of another
    /// letter interval. The discs are the cycles of this map on letters.
    pub fn o_discs(&self, first: &[&Permutation], last: &[&Permutation]) -> usize {
        let last_inv: Vec<Permutation> = last.iter().map(|p| p.inverse()).collect();
        let n = self.num_letters();
        let jump = |l: usize| {
            let m = self.next[l];
            let g = self.slot[m];
            let k = self.occurrence[m];
            if self.negative[m] {
                self.pos_letter[g][last_inv[g].apply(k)]
            } else {
                self.neg_letter[g][first[g].apply(k)]
            }
        };
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut l = start;
            while !seen[l] {
                seen[l] = true;
                l = jump(l);
            }
        }
        cycles
    }

    /// `χ(σ) = #o-discs − Σ_x [L_x + Σ_j ‖σ_{x,j}⁻¹σ_{x,j+1}‖]`.
    pub fn chi_closed_form(&self, s: &MatchingTuple) -> i64 {
        let o = self.o_discs(&s.first(), &s.last());
        o as i64 - self.total_size() as i64 - s.path_norm() as i64
    }

    /// Builds the CW structure of `Σ_σ` and traces its 2-cells.
    pub fn build_surface(&self, s: &MatchingTuple) -> Result<CombinatorialSurface> {
        self.validate(s)?;
        let kappa = s.kappa();
        let n = self.num_letters();
        // marked points of letter l occupy base[l] .. base[l] + κ + 1, in the
        // order of the circle's orientation
        let mut base = Vec::with_capacity(n + 1);
        let mut total = 0;
        for l in 0..n {
            base.push(total);
            total += kappa[self.slot[l]] + 1;
        }
        let mut owner = vec![0; total];
        for l in 0..n {
            owner[base[l]..base[l] + kappa[self.slot[l]] + 1].fill(l);
        }
        let label = |p: usize| {
            let l = owner[p];
            let m = p - base[l];
            if self.negative[l] {
                kappa[self.slot[l]] - m
            } else {
                m
            }
        };
        let inverses: Vec<Vec<Permutation>> =
            s.levels.iter().map(|lv| lv.iter().map(Permutation::inverse).collect()).collect();
        let partner = |p: usize| {
            let l = owner[p];
            let g = self.slot[l];
            let j = label(p);
            let k = self.occurrence[l];
            if self.negative[l] {
                let other = self.pos_letter[g][inverses[g][j].apply(k)];
                base[other] + j
            } else {
                let other = self.neg_letter[g][s.levels[g][j].apply(k)];
                base[other] + kappa[g] - j
            }
        };
        // the segment after p crosses an o-point iff p is last on its interval
        let crosses = |p: usize| p + 1 == base[owner[p]] + kappa[self.slot[owner[p]]] + 1;
        let step = |p: usize| if crosses(p) { base[self.next[owner[p]]] } else { p + 1 };

        let mut uf = UnionFind::new(self.num_words);
        for p in 0..total {
            uf.union(self.word[owner[p]], self.word[owner[partner(p)]]);
        }

        let mut faces = Vec::new();
        let mut face_word = Vec::new();
        let mut seen = vec![false; total];
        for start in 0..total {
            if seen[start] {
                continue;
            }
            let mut p = start;
            let mut length = 0;
            let mut o_face = false;
            let mut min_label = usize::MAX;
            while !seen[p] {
                seen[p] = true;
                let c = crosses(p);
                o_face |= c;
                length += if c { 3 } else { 2 };
                min_label = min_label.min(label(p));
                p = partner(step(p));
            }
            let kind = if o_face {
                FaceKind::O
            } else {
                FaceKind::Z { generator: self.stats[self.slot[owner[start]]].generator.name(), level: min_label }
            };
            faces.push(Face { kind, boundary_length: length });
            face_word.push(self.word[owner[start]]);
        }

        let vertices = total + n;
        let matching_edges: usize = self.sizes.iter().zip(&kappa).map(|(l, k)| l * (k + 1)).sum();
        let edges = vertices + matching_edges;
        let chi = vertices as i64 - edges as i64 + faces.len() as i64;

        let mut comp_index: BTreeMap<usize, usize> = BTreeMap::new();
        let mut comps: Vec<(i64, Vec<usize>)> = Vec::new();
        for w in 0..self.num_words {
            let r = uf.find(w);
            let id = *comp_index.entry(r).or_insert_with(|| {
                comps.push((0, Vec::new()));
                comps.len() - 1
            });
            comps[id].1.push(w);
        }
        // V − E per component: circle points and circle edges cancel, and
        // each matching edge has one endpoint counted as negative
        for l in 0..n {
            if !self.negative[l] {
                let g = self.slot[l];
                comps[comp_index[&uf.find(self.word[l])]].0 -= (kappa[g] + 1) as i64;
            }
        }
        for &w in &face_word {
            comps[comp_index[&uf.find(w)]].0 += 1;
        }
        let components = comps
            .into_iter()
            .map(|(chi, words)| {
                let boundaries = words.len();
                let twice_genus = 2 - chi - boundaries as i64;
                debug_assert!(twice_genus >= 0 && twice_genus % 2 == 0);
                Component { chi, genus: (twice_genus / 2) as usize, boundaries, words }
            })
            .collect();
        let o_discs = faces.iter().filter(|f| f.kind == FaceKind::O).count();
        Ok(CombinatorialSurface { vertices, edges, faces, chi, components, o_discs })
    }

    /// Every element of `MATCH^κ`, last generator's last level varying fastest.
    pub fn matchings(&self, kappa: &[usize]) -> Result<MatchingIter> {
        if kappa.len() != self.sizes.len() {
            return Err(Error::SizeMismatch(format!(
                "κ has {} entries for {} generators",
                kappa.len(),
                self.sizes.len()
            )));
        }
        let perms: Vec<Vec<Permutation>> = self.sizes.iter().map(|&l| all_permutations(l)).collect();
        let slots: Vec<usize> = kappa.iter().enumerate().flat_map(|(g, &k)| std::iter::repeat_n(g, k + 1)).collect();
        Ok(MatchingIter { digits: vec![0; slots.len()], slots, perms, kappa: kappa.to_vec(), done: false })
    }

    /// Restricted matchings with `χ ≥ chi_floor` (and `|κ| ≤ max_kappa` if
    /// given), passed to `visit` with their Euler characteristic.
    ///
    /// The extremes `(σ_{x,0}, σ_{x,κ_x})` fix the `o`-disc count `o`, so
    /// `χ ≥ chi_floor` bounds the total path norm by
    /// `o − Σ L_x − chi_floor`; paths are generated per generator under that
    /// bound with geodesic-distance pruning, then combined.
    pub fn visit_restricted(
        &self,
        chi_floor: i64,
        max_kappa: Option<usize>,
        budget: u64,
        mut visit: impl FnMut(&MatchingTuple, i64),
    ) -> Result<u64> {
        let counter = Counter::new(budget, "restricted matchings");
        let tables = self.tables();
        for idx in 0..self.extreme_count() {
            counter.tick(1)?;
            let Some((o_budget, paths)) = self.paths_for(idx, chi_floor, &tables, &counter)? else {
                continue;
            };
            let base_chi = o_budget.0;
            let mut chosen = Vec::with_capacity(paths.len());
            combine(&paths, o_budget.1, max_kappa, &mut chosen, &mut |sel| {
                counter.tick(1)?;
                let mut norm = 0;
                let levels = sel
                    .iter()
                    .enumerate()
                    .map(|(g, &i)| {
                        let p = &paths[g][i];
                        norm += p.norm;
                        p.ranks.iter().map(|&r| tables[g].perms[r].clone()).collect()
                    })
                    .collect();
                visit(&MatchingTuple { levels }, base_chi - norm as i64);
                Ok(())
            })?;
        }
        Ok(counter.visited())
    }

    /// All restricted matchings with `χ ≥ chi_floor`, in enumeration order.
    pub fn restricted(&self, chi_floor: i64, budget: u64) -> Result<Vec<(MatchingTuple, i64)>> {
        let mut out = Vec::new();
        self.visit_restricted(chi_floor, None, budget, |s, chi| out.push((s.clone(), chi)))?;
        Ok(out)
    }

    /// `Σ (−1)^{|κ(σ)|}` over restricted `σ` with `χ(σ) ≥ chi_floor`, grouped
    /// by `χ`. Paths are enumerated per generator and their counts convolved
    /// instead of materializing the product.
    pub fn restricted_signed_counts(&self, chi_floor: i64, budget: u64) -> Result<BTreeMap<i64, i64>> {
        let counter = Counter::new(budget, "restricted matchings");
        let tables = self.tables();
        let partial: Result<Vec<BTreeMap<i64, i64>>> = (0..self.extreme_count())
            .into_par_iter()
            .map(|idx| {
                counter.tick(1)?;
                let mut out = BTreeMap::new();
                let Some(((base_chi, max_norm), paths)) = self.paths_for(idx, chi_floor, &tables, &counter)? else {
                    return Ok(out);
                };
                // norm -> signed count, convolved across generators
                let mut acc: BTreeMap<usize, i64> = BTreeMap::from([(0, 1)]);
                for gp in &paths {
                    let mut h: BTreeMap<usize, i64> = BTreeMap::new();
                    for p in gp {
                        *h.entry(p.norm).or_default() += if p.ranks.len() % 2 == 1 { 1 } else { -1 };
                    }
                    let mut next: BTreeMap<usize, i64> = BTreeMap::new();
                    for (a, ca) in &acc {
                        for (b, cb) in &h {
                            if a + b <= max_norm {
                                *next.entry(a + b).or_default() += ca * cb;
                            }
                        }
                    }
                    acc = next;
                }
                for (norm, c) in acc {
                    if c != 0 {
                        *out.entry(base_chi - norm as i64).or_default() += c;
                    }
                }
                Ok(out)
            })
            .collect();
        let mut total = BTreeMap::new();
        for m in partial? {
            for (chi, c) in m {
                *total.entry(chi).or_insert(0) += c;
            }
        }
        total.retain(|_, c| *c != 0);
        Ok(total)
    }

    fn tables(&self) -> Vec<PermTable> {
        self.sizes.iter().map(|&l| PermTable::new(l)).collect()
    }

    /// Number of extreme pairs `(σ_{x,0}, σ_{x,κ_x})_x`, i.e. `|MATCH^{κ≡1}|`.
    pub fn extreme_count(&self) -> u64 {
        self.count_matchings(&vec![1; self.sizes.len()])
    }

    /// Decodes the `idx`-th element of `MATCH^{κ≡1}` as per-generator
    /// `(first, last)` ranks.
    pub(crate) fn extremes(&self, mut idx: u64) -> Vec<(usize, usize)> {
        let mut out = vec![(0, 0); self.sizes.len()];
        for (g, &l) in self.sizes.iter().enumerate().rev() {
            let f = factorial(l);
            let e = idx % f;
            idx /= f;
            let s = idx % f;
            idx /= f;
            out[g] = (s as usize, e as usize);
        }
        out
    }

    /// For one extreme choice: `((o − ΣL, max path norm), paths per generator)`
    /// or `None` when no path fits.
    fn paths_for(
        &self,
        idx: u64,
        chi_floor: i64,
        tables: &[PermTable],
        counter: &Counter,
    ) -> Result<Option<ExtremePaths>> {
        let ext = self.extremes(idx);
        let first: Vec<&Permutation> = ext.iter().zip(tables).map(|(&(s, _), t)| &t.perms[s]).collect();
        let last: Vec<&Permutation> = ext.iter().zip(tables).map(|(&(_, e), t)| &t.perms[e]).collect();
        let base_chi = self.o_discs(&first, &last) as i64 - self.total_size() as i64;
        let slack = base_chi - chi_floor;
        if slack < 0 {
            return Ok(None);
        }
        let slack = slack as usize;
        let geodesic: Vec<usize> = ext.iter().zip(tables).map(|(&(s, e), t)| t.dist(s, e)).collect();
        let min_total: usize = geodesic.iter().sum();
        if min_total > slack {
            return Ok(None);
        }
        let mut paths = Vec::with_capacity(ext.len());
        for (g, (&(s, e), t)) in ext.iter().zip(tables).enumerate() {
            let room = slack - (min_total - geodesic[g]);
            let ps = t.paths(s, e, room, counter)?;
            if ps.is_empty() {
                return Ok(None);
            }
            paths.push(ps);
        }
        Ok(Some(((base_chi, slack), paths)))
    }
}

/// Iterator over `MATCH^κ`.
pub struct MatchingIter {
    slots: Vec<usize>,
    perms: Vec<Vec<Permutation>>,
    kappa: Vec<usize>,
    digits: Vec<usize>,
    done: bool,
}

impl Iterator for MatchingIter {
    type Item = MatchingTuple;

    fn next(&mut self) -> Option<MatchingTuple> {
        if self.done {
            return None;
        }
        let mut levels: Vec<Vec<Permutation>> = self.kappa.iter().map(|&k| Vec::with_capacity(k + 1)).collect();
        for (&g, &d) in self.slots.iter().zip(&self.digits) {
            levels[g].push(self.perms[g][d].clone());
        }
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < self.perms[self.slots[i]].len() {
                break;
            }
            self.digits[i] = 0;
        }
        Some(MatchingTuple { levels })
    }
}

/// Convenience wrapper: `MATCH^κ` of a tuple.
pub fn matchings_iter(t: &WordTuple, kappa: &[usize]) -> Result<MatchingIter> {
    MatchingSpace::new(t)?.matchings(kappa)
}

pub fn restricted_matchings(t: &WordTuple, chi_floor: i64, budget: u64) -> Result<Vec<(MatchingTuple, i64)>> {
    MatchingSpace::new(t)?.restricted(chi_floor, budget)
}

pub fn build_surface(t: &WordTuple, s: &MatchingTuple) -> Result<CombinatorialSurface> {
    MatchingSpace::new(t)?.build_surface(s)
}

pub fn chi_closed_form(t: &WordTuple, s: &MatchingTuple) -> Result<i64> {
    let sp = MatchingSpace::new(t)?;
    sp.validate(s)?;
    Ok(sp.chi_closed_form(s))
}

struct Path {
    ranks: Vec<usize>,
    norm: usize,
}

/// `((o − ΣL, max path norm), paths per generator)` for one extreme choice.
type ExtremePaths = ((i64, usize), Vec<Vec<Path>>);

/// All permutations of one size with a pairwise distance table.
struct PermTable {
    perms: Vec<Permutation>,
    dist: Vec<u8>,
}

impl PermTable {
    fn new(size: usize) -> Self {
        let perms = all_permutations(size);
        let m = perms.len();
        let inv: Vec<Permutation> = perms.iter().map(Permutation::inverse).collect();
        let mut dist = vec![0u8; m * m];
        for a in 0..m {
            for b in 0..m {
                dist[a * m + b] = inv[a].compose(&perms[b]).norm() as u8;
            }
        }
        PermTable { perms, dist }
    }

    fn dist(&self, a: usize, b: usize) -> usize {
        self.dist[a * self.perms.len() + b] as usize
    }

    /// Sequences `s = σ_0 ≠ σ_1 ≠ … ≠ σ_k = e` with total step norm ≤ `room`.
    fn paths(&self, s: usize, e: usize, room: usize, counter: &Counter) -> Result<Vec<Path>> {
        let mut out = Vec::new();
        let mut cur = vec![s];
        self.extend(e, room, 0, &mut cur, &mut out, counter)?;
        Ok(out)
    }

    fn extend(
        &self,
        e: usize,
        room: usize,
        norm: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Path>,
        counter: &Counter,
    ) -> Result<()> {
        let at = *cur.last().unwrap();
        if at == e {
            out.push(Path { ranks: cur.clone(), norm });
        }
        for next in 0..self.perms.len() {
            if next == at {
                continue;
            }
            let n2 = norm + self.dist(at, next);
            if n2 + self.dist(next, e) > room {
                continue;
            }
            counter.tick(1)?;
            cur.push(next);
            self.extend(e, room, n2, cur, out, counter)?;
            cur.pop();
        }
        Ok(())
    }
}

/// Cartesian product of per-generator paths with total norm ≤ `max_norm`.
fn combine(
    paths: &[Vec<Path>],
    max_norm: usize,
    max_kappa: Option<usize>,
    chosen: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    fn go(
        paths: &[Vec<Path>],
        room: usize,
        kappa_room: usize,
        chosen: &mut Vec<usize>,
        emit: &mut dyn FnMut(&[usize]) -> Result<()>,
    ) -> Result<()> {
        let g = chosen.len();
        if g == paths.len() {
            return emit(chosen);
        }
        for (i, p) in paths[g].iter().enumerate() {
            let k = p.ranks.len() - 1;
            if p.norm > room || k > kappa_room {
                continue;
            }
            chosen.push(i);
            go(paths, room - p.norm, kappa_room - k, chosen, emit)?;
            chosen.pop();
        }
        Ok(())
    }
    go(paths, max_norm, max_kappa.unwrap_or(usize::MAX), chosen, emit)
}

/// Shared visit counter enforcing the enumeration budget.
pub(crate) struct Counter {
    visited: AtomicU64,
    budget: u64,
    what: &'static str,
}

impl Counter {
    pub(crate) fn new(budget: u64, what: &'static str) -> Self {
        Counter { visited: AtomicU64::new(0), budget, what }
    }

    pub(crate) fn tick(&self, k: u64) -> Result<()> {
        let v = self.visited.fetch_add(k, Ordering::Relaxed) + k;
        if v > self.budget {
            return Err(Error::Budget { what: self.what.to_string(), budget: self.budget });
        }
        Ok(())
    }

    pub(crate) fn visited(&self) -> u64 {
        self.visited.load(Ordering::Relaxed)
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
