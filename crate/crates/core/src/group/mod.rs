//! Finite groups given by a complete multiplication table, with conjugacy
//! structure and display words.

mod subgroups;
mod todd_coxeter;
mod words;

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_integer::Integer;

use crate::config::Bounds;
use crate::error::{Error, Result};

pub use subgroups::{Subgroup, SubgroupLattice};
pub use todd_coxeter::Presentation;

/// A conjugacy class; `representative` is its least member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub members: Vec<usize>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// A finite group with identity `0`.
///
/// Every element also records how it was first reached from the identity by
/// right multiplication with a generator; element words, matrix
/// representations and labels are derived from that spanning tree.
#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    elem_orders: Vec<u32>,
    exponent: u32,
    generators: Vec<usize>,
    gen_names: Vec<String>,
    tree: Vec<Option<(usize, usize)>>,
    labels: Vec<String>,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
}

/// Default names for the generators: `x, y, z, w`, then `g5, g6, …`.
pub fn default_generator_names(k: usize) -> Vec<String> {
    (0..k)
        .map(|i| match i {
            0 => "x".to_string(),
            1 => "y".to_string(),
            2 => "z".to_string(),
            3 => "w".to_string(),
            _ => format!("g{}", i + 1),
        })
        .collect()
}

fn compose(a: &[u32], b: &[u32]) -> Vec<u32> {
    // apply a first, then b
    a.iter().map(|&i| b[i as usize]).collect()
}

impl FiniteGroup {
    /// Closure of a set of permutations of `{0..n-1}`. Elements are numbered
    /// in breadth-first order over right multiplication by the generators
    /// (taken in input order). Products apply the left factor first.
    pub fn from_permutations(perms: &[Vec<usize>], names: Option<Vec<String>>, bounds: &Bounds) -> Result<Self> {
        let degree = perms.first().map_or(0, Vec::len);
        for (i, p) in perms.iter().enumerate() {
            if p.len() != degree {
                return Err(Error::invalid(format!("permutation #{i} has length {} instead of {degree}", p.len())));
            }
            let mut seen = vec![false; degree];
            for &x in p {
                if x >= degree || seen[x] {
                    return Err(Error::invalid(format!("permutation #{i} is not a bijection on 0..{degree}")));
                }
                seen[x] = true;
            }
        }
        let gens: Vec<Vec<u32>> = perms.iter().map(|p| p.iter().map(|&x| x as u32).collect()).collect();
        let names = names.unwrap_or_else(|| default_generator_names(gens.len()));
        if names.len() != gens.len() {
            return Err(Error::invalid("number of generator names does not match generators"));
        }
        let identity: Vec<u32> = (0..degree as u32).collect();
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<Vec<u32>, usize> = HashMap::from([(identity, 0)]);
        let mut tree = vec![None];
        let mut right: Vec<Vec<usize>> = Vec::new();
        let mut i = 0;
        while i < elems.len() {
            let mut row = Vec::with_capacity(gens.len());
            for (gi, g) in gens.iter().enumerate() {
                let prod = compose(&elems[i], g);
                let idx = match index.get(&prod) {
                    Some(&j) => j,
                    None => {
                        let j = elems.len();
                        if j >= bounds.max_group_order {
                            return Err(Error::bound(format!(
                                "group too large or infinite: closure exceeds {} elements",
                                bounds.max_group_order
                            )));
                        }
                        index.insert(prod.clone(), j);
                        elems.push(prod);
                        tree.push(Some((i, gi)));
                        j
                    }
                };
                row.push(idx);
            }
            right.push(row);
            i += 1;
        }
        let n = elems.len();
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            mul[a * n] = a as u32;
            for b in 1..n {
                let (p, g) = tree[b].unwrap();
                mul[a * n + b] = right[mul[a * n + p] as usize][g] as u32;
            }
        }
        let generators = right[0].clone();
        Ok(Self::assemble(n, mul, generators, names, tree))
    }

    /// Coset enumeration of a finitely presented group over the trivial
    /// subgroup, followed by the regular permutation action.
    pub fn from_presentation(pres: &Presentation, bounds: &Bounds) -> Result<Self> {
        let perms = todd_coxeter::regular_permutations(pres, bounds)?;
        let names = pres.names.clone().unwrap_or_else(|| default_generator_names(pres.generators));
        Self::from_permutations(&perms, Some(names), bounds)
    }

    /// Validates a Cayley table whose element `0` is the identity. The
    /// numbering of the table is kept.
    pub fn from_cayley_table(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        let not_group = |msg: String| Error::invalid(format!("not a group table: {msg}"));
        if n == 0 {
            return Err(not_group("empty table".into()));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(not_group(format!("row {a} has length {} instead of {n}", row.len())));
            }
            let mut seen = vec![false; n];
            for (b, &c) in row.iter().enumerate() {
                if c >= n {
                    return Err(not_group(format!("entry ({a}, {b}) = {c} out of range")));
                }
                if seen[c] {
                    return Err(not_group(format!("row {a} repeats {c}")));
                }
                seen[c] = true;
            }
        }
        for b in 0..n {
            let mut seen = vec![false; n];
            for a in 0..n {
                let c = table[a][b];
                if seen[c] {
                    return Err(not_group(format!("column {b} repeats {c}")));
                }
                seen[c] = true;
            }
        }
        for a in 0..n {
            if table[0][a] != a || table[a][0] != a {
                return Err(not_group(format!("element 0 is not the identity: witness 0*{a} or {a}*0")));
            }
        }
        // greedy generating set: least element outside the span reached so far
        let mut generators: Vec<usize> = Vec::new();
        let mut tree: Vec<Option<(usize, usize)>>;
        loop {
            tree = vec![None; n];
            let mut reached = vec![false; n];
            reached[0] = true;
            let mut queue = VecDeque::from([0usize]);
            while let Some(a) = queue.pop_front() {
                for (gi, &g) in generators.iter().enumerate() {
                    let c = table[a][g];
                    if !reached[c] {
                        reached[c] = true;
                        tree[c] = Some((a, gi));
                        queue.push_back(c);
                    }
                }
            }
            match reached.iter().position(|r| !r) {
                Some(next) => generators.push(next),
                None => break,
            }
        }
        // Light's test: the elements g with (ab)g = a(bg) for all a, b form
        // a closed set, so checking the generators proves associativity.
        for &g in &generators {
            for a in 0..n {
                for b in 0..n {
                    if table[table[a][b]][g] != table[a][table[b][g]] {
                        return Err(not_group(format!("associativity fails for ({a}, {b}, {g})")));
                    }
                }
            }
        }
        let mul = table.iter().flatten().map(|&c| c as u32).collect();
        let names = (1..=generators.len()).map(|i| format!("g{i}")).collect();
        Ok(Self::assemble(n, mul, generators, names, tree))
    }

    fn assemble(
        order: usize,
        mul: Vec<u32>,
        generators: Vec<usize>,
        gen_names: Vec<String>,
        tree: Vec<Option<(usize, usize)>>,
    ) -> Self {
        let n = order;
        let mut inv = vec![0u32; n];
        for a in 0..n {
            for b in 0..n {
                if mul[a * n + b] == 0 {
                    inv[a] = b as u32;
                    break;
                }
            }
        }
        let elem_orders: Vec<u32> = (0..n)
            .map(|a| {
                let (mut x, mut k) = (a, 1u32);
                while x != 0 {
                    x = mul[x * n + a] as usize;
                    k += 1;
                }
                k
            })
            .collect();
        let exponent = elem_orders.iter().fold(1u32, |acc, &o| acc.lcm(&o));
        let mut g = FiniteGroup {
            order,
            mul,
            inv,
            elem_orders,
            exponent,
            generators,
            gen_names,
            tree,
            labels: Vec::new(),
            classes: Vec::new(),
            class_of: Vec::new(),
        };
        g.labels = g.compute_labels();
        g.compute_classes();
        g
    }

    /// Labels elements by the collected form `x^a y^b ...` (exponents below
    /// the generator orders, smallest exponent of the last generator first)
    /// when every element has one and the search is small; otherwise by the
    /// spanning-tree word.
    fn compute_labels(&self) -> Vec<String> {
        let n = self.order;
        let tree = || (0..n).map(|a| self.render_word(&self.tree_word(a))).collect();
        let orders: Vec<usize> = self.generators.iter().map(|&s| self.elem_orders[s] as usize).collect();
        let total = orders.iter().try_fold(1usize, |acc, &o| acc.checked_mul(o).filter(|&p| p <= 16 * n));
        if total.is_none() || orders.is_empty() {
            return tree();
        }
        let mut found: Vec<Option<Vec<usize>>> = vec![None; n];
        let mut missing = n;
        let mut exps = vec![0usize; orders.len()];
        'search: loop {
            let mut a = 0;
            for (&s, &e) in self.generators.iter().zip(&exps) {
                a = self.mul(a, self.pow(s, e as i64));
            }
            if found[a].is_none() {
                found[a] = Some(exps.clone());
                missing -= 1;
                if missing == 0 {
                    break;
                }
            }
            for i in 0..exps.len() {
                exps[i] += 1;
                if exps[i] < orders[i] {
                    continue 'search;
                }
                exps[i] = 0;
            }
            break;
        }
        if missing > 0 {
            return tree();
        }
        found
            .into_iter()
            .map(|e| {
                let word: Vec<usize> = e.expect("all found").iter().enumerate().flat_map(|(i, &k)| std::iter::repeat(i).take(k)).collect();
                self.render_word(&word)
            })
            .collect()
    }

    fn compute_classes(&mut self) {
        let n = self.order;
        let mut class_id = vec![usize::MAX; n];
        let mut raw: Vec<Vec<usize>> = Vec::new();
        for a in 0..n {
            if class_id[a] != usize::MAX {
                continue;
            }
            let id = raw.len();
            let mut members = vec![a];
            class_id[a] = id;
            let mut i = 0;
            while i < members.len() {
                let c = members[i];
                for &s in &self.generators {
                    let d = self.mul(self.mul(self.inv(s), c), s);
                    if class_id[d] == usize::MAX {
                        class_id[d] = id;
                        members.push(d);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            raw.push(members);
        }
        raw.sort_by_key(|m| (self.elem_orders[m[0]], m[0]));
        self.class_of = vec![0; n];
        for (i, m) in raw.iter().enumerate() {
            for &a in m {
                self.class_of[a] = i;
            }
        }
        self.classes = raw
            .into_iter()
            .map(|members| ConjugacyClass { representative: members[0], members })
            .collect();
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let o = self.elem_orders[a] as i64;
        let k = k.rem_euclid(o);
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn conjugate(&self, a: usize, by: usize) -> usize {
        self.mul(self.mul(self.inv(by), a), by)
    }

    pub fn elem_order(&self, a: usize) -> u32 {
        self.elem_orders[a]
    }

    pub fn elem_orders(&self) -> &[u32] {
        &self.elem_orders
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator_names(&self) -> &[String] {
        &self.gen_names
    }

    /// `(parent, generator position)` with `a = parent * generator`, or
    /// `None` for the identity.
    pub fn tree_step(&self, a: usize) -> Option<(usize, usize)> {
        self.tree[a]
    }

    /// Word of generator positions reaching `a` from the identity.
    pub fn tree_word(&self, a: usize) -> Vec<usize> {
        let mut w = Vec::new();
        let mut cur = a;
        while let Some((p, g)) = self.tree[cur] {
            w.push(g);
            cur = p;
        }
        w.reverse();
        w
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn conjugacy_classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    pub fn is_abelian(&self) -> bool {
        self.classes.len() == self.order
    }

    /// Full Cayley table.
    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }

    /// Exhaustive check of the group axioms on the stored table.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.order;
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(Error::invariant(format!("0 is not an identity for {a}")));
            }
            if self.mul(a, self.inv(a)) != 0 || self.mul(self.inv(a), a) != 0 {
                return Err(Error::invariant(format!("bad inverse for {a}")));
            }
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::invariant(format!("associativity fails for ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Classes of elements fused by `g ↦ g^k` with `gcd(k, ord g) = 1`, as
    /// lists of conjugacy-class indices.
    pub fn rational_fusion_classes(&self) -> Vec<Vec<usize>> {
        let r = self.classes.len();
        let mut parent: Vec<usize> = (0..r).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (i, c) in self.classes.iter().enumerate() {
            let g = c.representative;
            let o = self.elem_orders[g];
            let mut power = g;
            for k in 1..=o {
                if k.gcd(&o) == 1 {
                    let j = self.class_of[power];
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
                power = self.mul(power, g);
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot: HashMap<usize, usize> = HashMap::new();
        for i in 0..r {
            let root = find(&mut parent, i);
            let s = *slot.entry(root).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[s].push(i);
        }
        groups
    }

    /// Class index of `g^k` for the representative `g` of class `c`.
    pub fn power_class(&self, c: usize, k: i64) -> usize {
        self.class_of[self.pow(self.classes[c].representative, k)]
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {}, {} classes)", self.order, self.classes.len())
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mul == other.mul
    }
}

impl Eq for FiniteGroup {}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn s3() -> FiniteGroup {
        FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]], None, &Bounds::default()).unwrap()
    }

    pub(crate) fn s4() -> FiniteGroup {
        FiniteGroup::from_permutations(&[vec![1, 0, 2, 3], vec![1, 2, 3, 0]], None, &Bounds::default()).unwrap()
    }

    #[test]
    fn s3_and_cyclic() {
        let g = s3();
        assert_eq!(g.order(), 6);
        g.check_axioms().unwrap();
        assert_eq!(g.conjugacy_classes().len(), 3);
        let c4 = FiniteGroup::from_permutations(&[vec![1, 2, 3, 0]], None, &Bounds::default()).unwrap();
        assert_eq!(c4.order(), 4);
        assert!(c4.is_abelian());
        assert!(c4.conjugacy_classes().iter().all(|c| c.size() == 1));
        assert_eq!(c4.exponent(), 4);
    }

    #[test]
    fn s4_class_sizes_match_brute_force() {
        let g = s4();
        assert_eq!(g.order(), 24);
        let mut sizes: Vec<usize> = g.conjugacy_classes().iter().map(ConjugacyClass::size).collect();
        // brute force: orbit of each element under all conjugations
        let mut brute: Vec<usize> = Vec::new();
        let mut seen = vec![false; 24];
        for a in 0..24 {
            if seen[a] {
                continue;
            }
            let mut orbit: Vec<usize> = (0..24).map(|x| g.conjugate(a, x)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &b in &orbit {
                seen[b] = true;
            }
            brute.push(orbit.len());
        }
        sizes.sort_unstable();
        brute.sort_unstable();
        assert_eq!(sizes, brute);
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
        assert_eq!(g.rational_fusion_classes().len(), 5);
    }

    #[test]
    fn classes_partition_and_divide_order() {
        let g = s4();
        let total: usize = g.conjugacy_classes().iter().map(|c| c.size()).sum();
        assert_eq!(total, g.order());
        for c in g.conjugacy_classes() {
            assert_eq!(g.order() % c.size(), 0);
            assert_eq!(c.representative, c.members[0]);
        }
        assert_eq!(g.conjugacy_classes()[0].members, vec![0]);
    }

    #[test]
    fn z5_fusion() {
        let g = FiniteGroup::from_permutations(&[vec![1, 2, 3, 4, 0]], None, &Bounds::default()).unwrap();
        let fusion = g.rational_fusion_classes();
        assert_eq!(fusion.len(), 2);
        assert_eq!(fusion[0], vec![0]);
        let trivial = FiniteGroup::from_permutations(&[], None, &Bounds::default()).unwrap();
        assert_eq!(trivial.order(), 1);
        assert_eq!(trivial.rational_fusion_classes().len(), 1);
    }

    #[test]
    fn cayley_round_trip_and_rejections() {
        let g = s4();
        let h = FiniteGroup::from_cayley_table(&g.cayley_table()).unwrap();
        assert_eq!(g, h);
        assert_eq!(h.conjugacy_classes().len(), 5);
        let z2 = FiniteGroup::from_cayley_table(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(z2.order(), 2);
        // a latin square with identity that is not associative (order 5 loop)
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_cayley_table(&loop5).unwrap_err();
        assert!(err.to_string().contains("associativity fails"), "{err}");
        let err = FiniteGroup::from_cayley_table(&[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert!(err.to_string().contains("not a group table"));
    }

    #[test]
    fn closure_bound() {
        let bounds = Bounds { max_group_order: 10, ..Bounds::default() };
        let err = FiniteGroup::from_permutations(&[vec![1, 0, 2, 3], vec![1, 2, 3, 0]], None, &bounds).unwrap_err();
        assert!(matches!(err, Error::Bound(_)));
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(FiniteGroup::from_permutations(&[vec![0, 0, 1]], None, &Bounds::default()).is_err());
    }
}
