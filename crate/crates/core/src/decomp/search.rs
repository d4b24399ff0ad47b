//! Searches over the subgroup lattice for pairs and families of subgroups
//! whose `ρ` differences isolate a given rational irreducible.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::Decomposer;

/// `ρ_H = W ⊕ ρ_N`, so `P(W_H/W_N) ~ B_W`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrymPair {
    /// Subgroup class indices.
    pub h: usize,
    pub n: usize,
    /// Least `g` with `g⁻¹ H g ⊆ N`.
    pub conjugator: usize,
}

/// `ρ_H − ρ_{N_k} = W ⊕ W_k` for every `k`, with no constituent shared by all
/// the `W_k`, so `(∩_k P(W_H/W_{N_k}))^0 ~ B_W`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionFamily {
    pub h: usize,
    /// Ascending subgroup class indices.
    pub ns: Vec<usize>,
    /// `W_k` as `(irrep, multiplicity)` lists.
    pub residues: Vec<Vec<(usize, u32)>>,
}

/// A containment `H ⊆ N` whose Prym contains `B_W`, with every other factor
/// of that Prym, so that `B_W` is the complement of the rest inside it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplementWitness {
    pub h: usize,
    pub n: usize,
    pub conjugator: usize,
    /// `ρ_H − ρ_N` as `(irrep, multiplicity)`.
    pub difference: Vec<(usize, u32)>,
}

/// `ρ_S − ρ_R = ρ_X − ρ_Y`, hence `P(W_S/W_R) ~ P(W_X/W_Y)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrymIsogeny {
    pub s: usize,
    pub r: usize,
    pub x: usize,
    pub y: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    PrymPair(PrymPair),
    Intersection(IntersectionFamily),
    Complement(ComplementWitness),
    Unresolved,
}

impl Verdict {
    /// Re-checks the witness against its defining multiplicity equation.
    pub fn validate(&self, d: &Decomposer, w: usize) -> bool {
        match self {
            Verdict::PrymPair(p) => d.conjugator(p.h, p.n).is_some() && d.difference(p.h, p.n) == Some(indicator(d, w)),
            Verdict::Intersection(f) => d.intersection_residues(f.h, &f.ns, w).is_some_and(|r| r == f.residues),
            Verdict::Complement(c) => d
                .difference(c.h, c.n)
                .is_some_and(|diff| diff[w] > 0 && sparse(&diff) == c.difference),
            Verdict::Unresolved => true,
        }
    }
}

fn indicator(d: &Decomposer, w: usize) -> Vec<u32> {
    (0..d.irreps().len()).map(|j| u32::from(j == w)).collect()
}

fn sparse(v: &[u32]) -> Vec<(usize, u32)> {
    v.iter().enumerate().filter(|(_, &c)| c > 0).map(|(j, &c)| (j, c)).collect()
}

impl Decomposer {
    /// `ρ_{H_i} − ρ_{H_k}` when class `i` is conjugate into class `k`.
    pub fn difference(&self, i: usize, k: usize) -> Option<Vec<u32>> {
        self.conjugator(i, k)?;
        self.rho(i).iter().zip(self.rho(k)).map(|(&a, &b)| a.checked_sub(b)).collect()
    }

    /// The residues `W_k` when `(H, [N_k])` realizes `W`.
    fn intersection_residues(&self, h: usize, ns: &[usize], w: usize) -> Option<Vec<Vec<(usize, u32)>>> {
        if ns.len() < 2 || ns.windows(2).any(|p| p[0] >= p[1]) {
            return None;
        }
        let mut residues = Vec::new();
        let mut common: Vec<bool> = vec![true; self.irreps().len()];
        for &n in ns {
            let mut diff = self.difference(h, n)?;
            if diff[w] != 1 {
                return None;
            }
            diff[w] = 0;
            for (c, &x) in common.iter_mut().zip(&diff) {
                *c &= x > 0;
            }
            residues.push(sparse(&diff));
        }
        (!common.iter().any(|&c| c)).then_some(residues)
    }

    /// All `(H, N)` up to conjugacy with `ρ_H = W ⊕ ρ_N`.
    pub fn find_prym_realizations(&self, w: usize) -> Vec<PrymPair> {
        let target = indicator(self, w);
        let l = self.lattice().len();
        (0..l)
            .flat_map(|i| (0..l).map(move |k| (i, k)))
            .filter(|&(i, k)| self.difference(i, k).as_ref() == Some(&target))
            .map(|(h, n)| PrymPair { h, n, conjugator: self.conjugator(h, n).expect("contained") })
            .collect()
    }

    /// Minimal families `(H, [N_1..N_k])`, `2 ≤ k ≤ max_arity`, in which each
    /// `ρ_H − ρ_{N_k}` contains `W` exactly once plus a nonzero residue and
    /// no irreducible occurs in every residue. For `k = 2` this says the two
    /// residues are disjoint.
    pub fn find_intersection_realizations(&self, w: usize, max_arity: usize) -> Vec<IntersectionFamily> {
        let r = self.irreps().len();
        let per_h: Vec<Vec<IntersectionFamily>> = (0..self.lattice().len())
            .into_par_iter()
            .map(|h| {
                let candidates: Vec<(usize, Vec<bool>)> = (0..self.lattice().len())
                    .filter_map(|n| {
                        let diff = self.difference(h, n)?;
                        let support: Vec<bool> = diff.iter().enumerate().map(|(j, &c)| j != w && c > 0).collect();
                        (diff[w] == 1 && support.iter().any(|&b| b)).then_some((n, support))
                    })
                    .collect();
                let mut found = Vec::new();
                let mut chosen = Vec::new();
                extend_family(&candidates, 0, &vec![true; r], max_arity, &mut chosen, &mut found);
                found
                    .into_iter()
                    .map(|idx: Vec<usize>| {
                        let ns: Vec<usize> = idx.iter().map(|&c| candidates[c].0).collect();
                        let residues = self.intersection_residues(h, &ns, w).expect("qualifying family");
                        IntersectionFamily { h, ns, residues }
                    })
                    .collect()
            })
            .collect();
        per_h.into_iter().flatten().collect()
    }

    /// `(H, N, multiplicity)` with `⟨ρ_H, W⟩ ≠ 0 = ⟨ρ_N, W⟩` and `H` conjugate
    /// into `N`; the multiplicity of `B_W` in `P(W_H/W_N)` is `dim V^H / m`.
    pub fn find_containments(&self, w: usize) -> Vec<(usize, usize, u32)> {
        let l = self.lattice().len();
        let mut out = Vec::new();
        for h in 0..l {
            if self.rho(h)[w] == 0 {
                continue;
            }
            for n in 0..l {
                if self.rho(n)[w] == 0 && self.conjugator(h, n).is_some() {
                    out.push((h, n, self.rho(h)[w]));
                }
            }
        }
        out
    }

    /// Nontrivial coincidences `ρ_S − ρ_R = ρ_X − ρ_Y` between containments,
    /// each unordered pair listed once with `(S, R) < (X, Y)`.
    pub fn find_prym_isogenies(&self) -> Vec<PrymIsogeny> {
        let l = self.lattice().len();
        let mut by_diff: BTreeMap<Vec<u32>, Vec<(usize, usize)>> = BTreeMap::new();
        for i in 0..l {
            for k in 0..l {
                if i == k {
                    continue;
                }
                if let Some(diff) = self.difference(i, k) {
                    if diff.iter().any(|&c| c > 0) {
                        by_diff.entry(diff).or_default().push((i, k));
                    }
                }
            }
        }
        let mut out: Vec<PrymIsogeny> = by_diff
            .values()
            .flat_map(|pairs| {
                pairs.iter().enumerate().flat_map(move |(a, &(s, r))| {
                    pairs[a + 1..].iter().map(move |&(x, y)| PrymIsogeny { s, r, x, y })
                })
            })
            .collect();
        out.sort_by_key(|p| (p.s, p.r, p.x, p.y));
        out
    }

    /// Minimal-size complement witness: the containment `H ⊆ N` with
    /// `⟨ρ_H − ρ_N, W⟩ > 0` and least `[G:H] − [G:N]`.
    pub fn complement_witness(&self, w: usize) -> Option<ComplementWitness> {
        let l = self.lattice().len();
        let order = self.group().order();
        (0..l)
            .flat_map(|i| (0..l).map(move |k| (i, k)))
            .filter_map(|(h, n)| {
                let diff = self.difference(h, n)?;
                (diff[w] > 0).then_some((h, n, diff))
            })
            .min_by_key(|(h, n, _)| {
                let size = order / self.lattice().get(*h).order() - order / self.lattice().get(*n).order();
                (size, *h, std::cmp::Reverse(*n))
            })
            .map(|(h, n, diff)| ComplementWitness {
                h,
                n,
                conjugator: self.conjugator(h, n).expect("contained"),
                difference: sparse(&diff),
            })
    }

    /// First non-empty of Prym pairs, intersections and complements, each
    /// picked by a fixed preference among the candidates.
    pub fn classify_factor(&self, w: usize, max_arity: usize) -> Verdict {
        let pairs = self.find_prym_realizations(w);
        if let Some(p) = pairs.into_iter().min_by_key(|p| self.pair_preference(p.h, p.n)) {
            return Verdict::PrymPair(p);
        }
        let families = self.find_intersection_realizations(w, max_arity);
        if let Some(f) = families.into_iter().min_by_key(|f| self.family_preference(f)) {
            return Verdict::Intersection(f);
        }
        match self.complement_witness(w) {
            Some(c) => Verdict::Complement(c),
            None => Verdict::Unresolved,
        }
    }

    /// Larger quotients first: prefer the largest `N`, then the largest `H`.
    fn pair_preference(&self, h: usize, n: usize) -> (std::cmp::Reverse<usize>, std::cmp::Reverse<usize>, usize, usize) {
        let o = |i: usize| self.lattice().get(i).order();
        (std::cmp::Reverse(o(n)), std::cmp::Reverse(o(h)), h, n)
    }

    /// Fewest subgroups, then the largest `H`, then the largest `N_k`, then
    /// the alphabetically first generator names.
    fn family_preference(&self, f: &IntersectionFamily) -> (usize, std::cmp::Reverse<usize>, Vec<std::cmp::Reverse<usize>>, Vec<String>) {
        let o = |i: usize| self.lattice().get(i).order();
        let mut ns: Vec<std::cmp::Reverse<usize>> = f.ns.iter().map(|&n| std::cmp::Reverse(o(n))).collect();
        ns.sort();
        let names = std::iter::once(f.h).chain(f.ns.iter().copied()).map(|i| self.name(i).to_string()).collect();
        (f.ns.len(), std::cmp::Reverse(o(f.h)), ns, names)
    }
}

/// Depth-first enumeration of minimal families. `common` marks irreducibles
/// shared by every chosen residue; each added subgroup must shrink it, and a
/// family stops growing once `common` is empty.
fn extend_family(
    candidates: &[(usize, Vec<bool>)],
    start: usize,
    common: &[bool],
    max_arity: usize,
    chosen: &mut Vec<usize>,
    found: &mut Vec<Vec<usize>>,
) {
    if chosen.len() == max_arity {
        return;
    }
    for c in start..candidates.len() {
        let next: Vec<bool> = common.iter().zip(&candidates[c].1).map(|(&a, &b)| a && b).collect();
        if !chosen.is_empty() && next == common {
            continue;
        }
        chosen.push(c);
        if !next.iter().any(|&b| b) {
            if chosen.len() >= 2 && is_minimal(candidates, chosen) {
                found.push(chosen.clone());
            }
        } else {
            extend_family(candidates, c + 1, &next, max_arity, chosen, found);
        }
        chosen.pop();
    }
}

/// No proper sub-family of size at least two already has empty common support.
fn is_minimal(candidates: &[(usize, Vec<bool>)], chosen: &[usize]) -> bool {
    let k = chosen.len();
    if k == 2 {
        return true;
    }
    let width = candidates[chosen[0]].1.len();
    // every proper subset of size >= 2, as a bitmask over `chosen`
    (1u32..(1 << k) - 1).filter(|m| m.count_ones() >= 2).all(|m| {
        (0..width).any(|j| (0..k).filter(|&i| m & (1 << i) != 0).all(|i| candidates[chosen[i]].1[j]))
    })
}
