//! Incompressible admissible surfaces via the graph on matchings with at most
//! one extra matching, and the alternating sums giving the L²-Euler
//! characteristic of their stabilizers.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::surface::{MatchingSpace, MatchingTuple, UnionFind};
use crate::symgrp::{all_permutations, Permutation};
use crate::words::WordTuple;

/// A vertex with `|κ| = 1`: generator `generator` carries the pair
/// `(first, second)`, every other generator its matching in `below_first`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpperVertex {
    pub generator: usize,
    pub first: usize,
    pub second: usize,
    /// Index of the lower vertex obtained by keeping `first`.
    pub below_first: usize,
    /// Index of the lower vertex obtained by keeping `second`.
    pub below_second: usize,
    pub chi: i64,
}

/// Vertices are all `κ ≡ 0` matchings (the lower layer, indexed in mixed
/// radix over generators) and all restricted `|κ| = 1` matchings; an upper
/// vertex is joined to each of its two faces that has the same `χ`.
#[derive(Clone, Debug)]
pub struct ClassificationGraph {
    space: MatchingSpace,
    perms: Vec<Vec<Permutation>>,
    lower_chi: Vec<i64>,
    upper: Vec<UpperVertex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncompressibleClass {
    pub id: usize,
    pub chi: i64,
    /// `κ ≡ 0` matchings in the component, as lower-layer indices.
    #[serde(skip)]
    pub vertices: Vec<usize>,
    pub vertex_count: usize,
    /// `(genus, boundary count)` per component of the representative surface.
    pub profile: Vec<(usize, usize)>,
    pub downward_closed: bool,
}

impl ClassificationGraph {
    pub fn new(t: &WordTuple, budget: u64) -> Result<Self> {
        let space = MatchingSpace::new(t)?;
        let perms: Vec<Vec<Permutation>> = space.sizes().iter().map(|&l| all_permutations(l)).collect();
        let radix: Vec<usize> = perms.iter().map(Vec::len).collect();
        let lower_count: u64 = radix.iter().fold(1u64, |a, &r| a.saturating_mul(r as u64));
        let upper_count: u64 = (0..radix.len())
            .map(|g| (lower_count / radix[g] as u64).saturating_mul((radix[g] * (radix[g] - 1)) as u64))
            .fold(0u64, |a, b| a.saturating_add(b));
        if lower_count.saturating_add(upper_count) > budget {
            return Err(Error::Budget { what: format!("classification graph of ({t})"), budget });
        }
        let total = space.total_size() as i64;
        let lower_chi: Vec<i64> = (0..lower_count as usize)
            .map(|idx| {
                let digits = decode(idx, &radix);
                let pick: Vec<&Permutation> = digits.iter().zip(&perms).map(|(&d, p)| &p[d]).collect();
                space.o_discs(&pick, &pick) as i64 - total
            })
            .collect();
        let mut upper = Vec::new();
        for idx in 0..lower_count as usize {
            let digits = decode(idx, &radix);
            for g in 0..radix.len() {
                // each upper vertex once: enumerate from the lower vertex
                // carrying its first matching
                let a = digits[g];
                for b in 0..radix[g] {
                    if b == a {
                        continue;
                    }
                    let mut other = digits.clone();
                    other[g] = b;
                    let first: Vec<&Permutation> = digits.iter().zip(&perms).map(|(&d, p)| &p[d]).collect();
                    let last: Vec<&Permutation> = other.iter().zip(&perms).map(|(&d, p)| &p[d]).collect();
                    let norm = perms[g][a].inverse().compose(&perms[g][b]).norm() as i64;
                    let chi = space.o_discs(&first, &last) as i64 - total - norm;
                    upper.push(UpperVertex {
                        generator: g,
                        first: a,
                        second: b,
                        below_first: idx,
                        below_second: encode(&other, &radix),
                        chi,
                    });
                }
            }
        }
        Ok(ClassificationGraph { space, perms, lower_chi, upper })
    }

    pub fn space(&self) -> &MatchingSpace {
        &self.space
    }

    pub fn lower_count(&self) -> usize {
        self.lower_chi.len()
    }

    pub fn upper(&self) -> &[UpperVertex] {
        &self.upper
    }

    pub fn lower_chi(&self, idx: usize) -> i64 {
        self.lower_chi[idx]
    }

    pub fn edge_count(&self) -> usize {
        self.upper
            .iter()
            .map(|u| {
                (self.lower_chi[u.below_first] == u.chi) as usize + (self.lower_chi[u.below_second] == u.chi) as usize
            })
            .sum()
    }

    /// The `κ ≡ 0` matching with lower-layer index `idx`.
    pub fn lower_matching(&self, idx: usize) -> MatchingTuple {
        let radix: Vec<usize> = self.perms.iter().map(Vec::len).collect();
        let digits = decode(idx, &radix);
        MatchingTuple::single(digits.iter().zip(&self.perms).map(|(&d, p)| p[d].clone()).collect())
    }

    /// Lower-layer index of a `κ ≡ 0` choice of matchings.
    pub fn lower_index(&self, pick: &[&Permutation]) -> usize {
        let radix: Vec<usize> = self.perms.iter().map(Vec::len).collect();
        let digits: Vec<usize> = pick.iter().map(|p| p.rank()).collect();
        encode(&digits, &radix)
    }

    /// Every component that contains a `κ ≡ 0` vertex, ordered by decreasing
    /// `χ` then by smallest vertex; ids follow this order.
    pub fn components(&self) -> Result<Vec<IncompressibleClass>> {
        let n0 = self.lower_count();
        let mut uf = UnionFind::new(n0 + self.upper.len());
        for (k, u) in self.upper.iter().enumerate() {
            if self.lower_chi[u.below_first] == u.chi {
                uf.union(n0 + k, u.below_first);
            }
            if self.lower_chi[u.below_second] == u.chi {
                uf.union(n0 + k, u.below_second);
            }
        }
        let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..n0 {
            members.entry(uf.find(v)).or_default().push(v);
        }
        let mut open: HashSet<usize> = HashSet::new();
        for (k, u) in self.upper.iter().enumerate() {
            let both = self.lower_chi[u.below_first] == u.chi && self.lower_chi[u.below_second] == u.chi;
            if !both {
                open.insert(uf.find(n0 + k));
            }
        }
        let mut comps: Vec<(i64, Vec<usize>, bool)> =
            members.into_iter().map(|(root, vs)| (self.lower_chi[vs[0]], vs, !open.contains(&root))).collect();
        comps.sort_by(|a, b| b.0.cmp(&a.0).then(a.1[0].cmp(&b.1[0])));
        comps
            .into_iter()
            .enumerate()
            .map(|(id, (chi, vertices, closed))| {
                let surf = self.space.build_surface(&self.lower_matching(vertices[0]))?;
                Ok(IncompressibleClass {
                    id,
                    chi,
                    vertex_count: vertices.len(),
                    vertices,
                    profile: surf.profile(),
                    downward_closed: closed,
                })
            })
            .collect()
    }
}

fn decode(mut idx: usize, radix: &[usize]) -> Vec<usize> {
    let mut digits = vec![0; radix.len()];
    for g in (0..radix.len()).rev() {
        digits[g] = idx % radix[g];
        idx /= radix[g];
    }
    digits
}

fn encode(digits: &[usize], radix: &[usize]) -> usize {
    digits.iter().zip(radix).fold(0, |acc, (&d, &r)| acc * r + d)
}

/// Downward-closed components, i.e. the incompressible classes.
pub fn incompressible_classes(t: &WordTuple, budget: u64) -> Result<Vec<IncompressibleClass>> {
    let graph = ClassificationGraph::new(&t.nontrivial_part(), budget)?;
    let shift = t.trivial() as i64;
    let mut out: Vec<IncompressibleClass> = graph.components()?.into_iter().filter(|c| c.downward_closed).collect();
    for (id, c) in out.iter_mut().enumerate() {
        c.id = id;
        c.chi += shift;
    }
    Ok(out)
}

/// `Σ (−1)^{|κ(σ)|}` over restricted `σ` realizing the class.
///
/// For an incompressible class every transverse map fills the surface, so a
/// matching tuple realizes the class exactly when one of its `κ ≡ 0` faces
/// (one matching kept per generator) has the same Euler characteristic and
/// lies in the class component. The enumeration stops at
/// `|κ| ≤ −χ` for cyclically reduced words and `|κ| ≤ ⌊ℓ/2 − χ⌋` otherwise,
/// where the chain complex of the class vanishes.
pub fn class_l2_euler(t: &WordTuple, class: &IncompressibleClass, budget: u64) -> Result<i64> {
    if !class.downward_closed {
        return Err(Error::Invalid(format!("class {} is not incompressible", class.id)));
    }
    let core = t.nontrivial_part();
    let graph = ClassificationGraph::new(&core, budget)?;
    let chi = class.chi - t.trivial() as i64;
    let ell = core.words().len() as i64;
    let max_kappa = if core.all_cyclically_reduced() { -chi } else { (ell - 2 * chi).div_euclid(2) };
    if max_kappa < 0 {
        return Ok(0);
    }
    let members: HashSet<usize> = class.vertices.iter().copied().collect();
    let sp = graph.space();
    let total = sp.total_size() as i64;
    let mut sum = 0;
    sp.visit_restricted(chi, Some(max_kappa as usize), budget, |s, c| {
        if c != chi {
            return;
        }
        let levels = s.levels();
        let mut choice = vec![0; levels.len()];
        let qualifies = loop {
            let pick: Vec<&Permutation> = choice.iter().zip(levels).map(|(&j, l)| &l[j]).collect();
            if sp.o_discs(&pick, &pick) as i64 - total == chi && members.contains(&graph.lower_index(&pick)) {
                break true;
            }
            let mut g = levels.len();
            loop {
                if g == 0 {
                    break;
                }
                g -= 1;
                choice[g] += 1;
                if choice[g] < levels[g].len() {
                    break;
                }
                choice[g] = 0;
            }
            if choice.iter().all(|&j| j == 0) {
                break false;
            }
        };
        if qualifies {
            sum += s.sign();
        }
    })?;
    Ok(sum)
}
