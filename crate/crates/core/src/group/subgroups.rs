//! Subgroups, conjugation and the lattice of subgroup classes.

use std::collections::HashMap;

use crate::config::Bounds;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// A subgroup as a sorted list of element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<usize>,
    canonical: bool,
}

impl Subgroup {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    /// Whether this is the lexicographically least member of its conjugacy class.
    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&a| other.contains(a))
    }
}

impl FiniteGroup {
    fn closure(&self, seeds: &[usize]) -> Vec<usize> {
        let mut gens: Vec<usize> = seeds.iter().copied().filter(|&a| a != 0).collect();
        gens.sort_unstable();
        gens.dedup();
        let mut inside = vec![false; self.order()];
        inside[0] = true;
        let mut members = vec![0];
        let mut i = 0;
        while i < members.len() {
            let a = members[i];
            for &s in &gens {
                let b = self.mul(a, s);
                if !inside[b] {
                    inside[b] = true;
                    members.push(b);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        members
    }

    fn make_subgroup(&self, members: Vec<usize>) -> Subgroup {
        let canonical = self.canonical_members(&members) == members;
        Subgroup { members, canonical }
    }

    /// Smallest subgroup containing `elems`.
    pub fn subgroup_generated(&self, elems: &[usize]) -> Result<Subgroup> {
        if let Some(&bad) = elems.iter().find(|&&a| a >= self.order()) {
            return Err(Error::invalid(format!("element index {bad} out of range for group of order {}", self.order())));
        }
        Ok(self.make_subgroup(self.closure(elems)))
    }

    /// Subgroup generated by elements given as words.
    pub fn subgroup_from_words<S: AsRef<str>>(&self, words: &[S]) -> Result<Subgroup> {
        let elems = words.iter().map(|w| self.parse_element(w.as_ref())).collect::<Result<Vec<_>>>()?;
        self.subgroup_generated(&elems)
    }

    /// Parses `"1"`, `"G"`, or comma-separated generator words, optionally
    /// wrapped in angle brackets: `"<x*y^2, x^10>"`.
    pub fn parse_subgroup(&self, spec: &str) -> Result<Subgroup> {
        let inner = spec.trim().trim_start_matches('<').trim_end_matches('>').trim();
        match inner {
            "" | "1" => return Ok(self.trivial_subgroup()),
            "G" => return Ok(self.whole_group()),
            _ => {}
        }
        let words: Vec<&str> = inner.split(',').map(str::trim).collect();
        self.subgroup_from_words(&words)
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut seeds = a.members.clone();
        seeds.extend_from_slice(&b.members);
        self.make_subgroup(self.closure(&seeds))
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.make_subgroup(vec![0])
    }

    pub fn whole_group(&self) -> Subgroup {
        self.make_subgroup((0..self.order()).collect())
    }

    fn conjugate_members(&self, members: &[usize], g: usize) -> Vec<usize> {
        let mut out: Vec<usize> = members.iter().map(|&a| self.conjugate(a, g)).collect();
        out.sort_unstable();
        out
    }

    /// `g⁻¹ H g`.
    pub fn conjugate_subgroup(&self, h: &Subgroup, g: usize) -> Subgroup {
        self.make_subgroup(self.conjugate_members(&h.members, g))
    }

    fn canonical_members(&self, members: &[usize]) -> Vec<usize> {
        let mut best = members.to_vec();
        for g in 1..self.order() {
            let c = self.conjugate_members(members, g);
            if c < best {
                best = c;
            }
        }
        best
    }

    /// The lexicographically least conjugate of `h`.
    pub fn canonicalize(&self, h: &Subgroup) -> Subgroup {
        Subgroup { members: self.canonical_members(&h.members), canonical: true }
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.generators().iter().all(|&g| h.members.iter().all(|&a| h.contains(self.conjugate(a, g))))
    }

    /// Least `g` with `g⁻¹ H g ⊆ N`, if any.
    pub fn conjugate_into(&self, h: &Subgroup, n: &Subgroup) -> Option<usize> {
        if n.order() % h.order() != 0 {
            return None;
        }
        let mut mask = vec![false; self.order()];
        for &a in &n.members {
            mask[a] = true;
        }
        (0..self.order()).find(|&g| h.members.iter().all(|&a| mask[self.conjugate(a, g)]))
    }

    pub fn subgroups_up_to_conjugacy(&self, bounds: &Bounds) -> Result<SubgroupLattice> {
        SubgroupLattice::compute(self, bounds)
    }
}

/// One canonical representative per conjugacy class of subgroups, sorted by
/// `(order, members)`, so the trivial subgroup comes first and `G` last.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    classes: Vec<Subgroup>,
    class_sizes: Vec<usize>,
    lookup: HashMap<Vec<usize>, usize>,
}

impl SubgroupLattice {
    /// Cyclic extension method: every subgroup is reached from the trivial
    /// one by repeatedly adjoining elements of prime-power order, and it
    /// suffices to extend one representative per conjugacy class.
    fn compute(g: &FiniteGroup, bounds: &Bounds) -> Result<Self> {
        let n = g.order();
        if n > bounds.max_lattice_order {
            return Err(Error::bound(format!(
                "subgroup lattice enumeration limited to groups of order <= {} (got {n})",
                bounds.max_lattice_order
            )));
        }
        let prime_power: Vec<usize> = (1..n).filter(|&a| is_prime_power(g.elem_order(a))).collect();
        let mut reps: Vec<(Vec<usize>, Vec<usize>)> = vec![(vec![0], Vec::new())];
        let mut sizes = vec![1usize];
        let mut all: HashMap<Vec<usize>, usize> = HashMap::from([(vec![0], 0)]);
        let mut i = 0;
        while i < reps.len() {
            let (members, gens) = reps[i].clone();
            let mut inside = vec![false; n];
            for &a in &members {
                inside[a] = true;
            }
            for &a in &prime_power {
                if inside[a] {
                    continue;
                }
                let mut ext_gens = gens.clone();
                ext_gens.push(a);
                let ext = g.closure(&ext_gens);
                if all.contains_key(&ext) {
                    continue;
                }
                let id = reps.len();
                let mut conjugates: Vec<Vec<usize>> = (0..n).map(|c| g.conjugate_members(&ext, c)).collect();
                conjugates.sort();
                conjugates.dedup();
                let count = conjugates.len();
                for c in conjugates {
                    all.insert(c, id);
                }
                reps.push((ext, ext_gens));
                sizes.push(count);
            }
            i += 1;
        }
        // canonical representatives: least conjugate
        let mut classes: Vec<(Vec<usize>, usize)> = reps
            .into_iter()
            .zip(sizes)
            .map(|((m, _), s)| (g.canonical_members(&m), s))
            .collect();
        classes.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        let mut relabel: HashMap<usize, usize> = HashMap::new();
        for (new, (m, _)) in classes.iter().enumerate() {
            relabel.insert(all[m], new);
        }
        let lookup = all.into_iter().map(|(k, v)| (k, relabel[&v])).collect();
        Ok(SubgroupLattice {
            class_sizes: classes.iter().map(|c| c.1).collect(),
            classes: classes.into_iter().map(|(members, _)| Subgroup { members, canonical: true }).collect(),
            lookup,
        })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Subgroup] {
        &self.classes
    }

    pub fn get(&self, i: usize) -> &Subgroup {
        &self.classes[i]
    }

    /// Number of conjugates of the `i`-th class representative.
    pub fn class_size(&self, i: usize) -> usize {
        self.class_sizes[i]
    }

    /// Index of the conjugacy class containing `h`.
    pub fn index_of(&self, h: &Subgroup) -> Option<usize> {
        self.lookup.get(h.members()).copied()
    }
}

fn is_prime_power(k: u32) -> bool {
    if k < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= k && k % p != 0 {
        p += 1;
    }
    let p = if p * p > k { k } else { p };
    let mut m = k;
    while m % p == 0 {
        m /= p;
    }
    m == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Presentation;

    fn q8() -> FiniteGroup {
        // <i, j : i^4, i^2 j^-2, j^-1 i j i>
        let p = Presentation::new(2, vec![vec![1; 4], vec![1, 1, -2, -2], vec![-2, 1, 2, 1]]);
        FiniteGroup::from_presentation(&p, &Bounds::default()).unwrap()
    }

    /// All subgroups by closure over every subset of size <= 3 (enough for
    /// the small groups used here, whose subgroups are 3-generated).
    fn brute_classes(g: &FiniteGroup) -> usize {
        let n = g.order();
        let mut subs: Vec<Vec<usize>> = Vec::new();
        for a in 0..n {
            for b in a..n {
                for c in b..n {
                    subs.push(g.closure(&[a, b, c]));
                }
            }
        }
        let mut canon: Vec<Vec<usize>> = subs.iter().map(|m| g.canonical_members(m)).collect();
        canon.sort();
        canon.dedup();
        canon.len()
    }

    #[test]
    fn subgroup_specs() {
        let g = q8();
        assert_eq!(g.parse_subgroup("1").unwrap().order(), 1);
        assert_eq!(g.parse_subgroup(" G ").unwrap().order(), 8);
        assert_eq!(g.parse_subgroup("<x^2>").unwrap().order(), 2);
        assert_eq!(g.parse_subgroup("x, y").unwrap().order(), 8);
        assert!(g.parse_subgroup("x, q").is_err());
    }

    #[test]
    fn prime_powers() {
        let pp: Vec<u32> = (1..30).filter(|&k| is_prime_power(k)).collect();
        assert_eq!(pp, vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29]);
    }

    #[test]
    fn q8_has_six_classes() {
        let g = q8();
        assert_eq!(g.order(), 8);
        let lat = g.subgroups_up_to_conjugacy(&Bounds::default()).unwrap();
        let orders: Vec<usize> = lat.classes().iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 2, 4, 4, 4, 8]);
        assert_eq!(brute_classes(&g), 6);
    }

    #[test]
    fn trivial_group_lattice() {
        let g = FiniteGroup::from_permutations(&[], None, &Bounds::default()).unwrap();
        let lat = g.subgroups_up_to_conjugacy(&Bounds::default()).unwrap();
        assert_eq!(lat.len(), 1);
    }

    #[test]
    fn s4_lattice_matches_brute_force_and_is_closed() {
        let g = FiniteGroup::from_permutations(&[vec![1, 0, 2, 3], vec![1, 2, 3, 0]], None, &Bounds::default()).unwrap();
        let lat = g.subgroups_up_to_conjugacy(&Bounds::default()).unwrap();
        assert_eq!(lat.len(), 11);
        assert_eq!(brute_classes(&g), 11);
        let total: usize = (0..lat.len()).map(|i| lat.class_size(i)).sum();
        assert_eq!(total, 30);
        for h in lat.classes() {
            assert!(h.is_canonical());
            for c in 0..g.order() {
                let k = g.canonicalize(&g.conjugate_subgroup(h, c));
                assert_eq!(&k.members, &h.members);
                assert!(lat.index_of(&g.conjugate_subgroup(h, c)).is_some());
            }
        }
    }

    #[test]
    fn joins_and_containment() {
        let g = q8();
        let x = g.subgroup_from_words(&["x"]).unwrap();
        let y = g.subgroup_from_words(&["y"]).unwrap();
        assert_eq!(g.join(&x, &x), x);
        assert_eq!(g.join(&x, &y).order(), 8);
        let z = g.subgroup_from_words(&["x^2"]).unwrap();
        assert_eq!(z.order(), 2);
        assert!(g.is_normal(&z));
        assert_eq!(g.conjugate_into(&z, &y), Some(0));
        assert_eq!(g.conjugate_into(&x, &y), None);
        assert!(g.subgroup_generated(&[99]).is_err());
    }

    #[test]
    fn lattice_bound() {
        let g = q8();
        let b = Bounds { max_lattice_order: 4, ..Bounds::default() };
        assert!(matches!(g.subgroups_up_to_conjugacy(&b), Err(Error::Bound(_))));
    }
}
