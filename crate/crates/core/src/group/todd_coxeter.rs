//! HLT coset enumeration over the trivial subgroup.

use serde::{Deserialize, Serialize};

use crate::config::Bounds;
use crate::error::{Error, Result};

/// A finite presentation. Relators are words of signed 1-based generator
/// indices: `2` is the second generator, `-2` its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Vec<i32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl Presentation {
    pub fn new(generators: usize, relators: Vec<Vec<i32>>) -> Self {
        Presentation { generators, relators, names: None }
    }

    pub fn with_names(mut self, names: &[&str]) -> Self {
        self.names = Some(names.iter().map(|s| s.to_string()).collect());
        self
    }

    fn validate(&self) -> Result<()> {
        if let Some(names) = &self.names {
            if names.len() != self.generators {
                return Err(Error::invalid("number of generator names does not match generator count"));
            }
        }
        for (i, r) in self.relators.iter().enumerate() {
            for &l in r {
                if l == 0 || l.unsigned_abs() as usize > self.generators {
                    return Err(Error::invalid(format!("relator #{} uses unknown generator {l}", i + 1)));
                }
            }
        }
        Ok(())
    }
}

const NONE: usize = usize::MAX;

struct CosetTable {
    cols: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    queue: Vec<usize>,
    ceiling: usize,
}

#[inline]
fn inv_col(c: usize) -> usize {
    c ^ 1
}

fn too_large(bound: usize) -> Error {
    Error::bound(format!("group too large or infinite (order bound {bound})"))
}

impl CosetTable {
    fn new(cols: usize, ceiling: usize) -> Self {
        CosetTable { cols, table: vec![vec![NONE; cols]], parent: vec![0], queue: Vec::new(), ceiling }
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> bool {
        let n = self.table.len();
        if n >= self.ceiling {
            return false;
        }
        self.table.push(vec![NONE; self.cols]);
        self.parent.push(n);
        self.table[c][x] = n;
        self.table[n][inv_col(x)] = c;
        true
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut cur = c;
        while self.parent[cur] != r {
            let next = self.parent[cur];
            self.parent[cur] = r;
            cur = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi] = lo;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.table[e][x];
                if f == NONE {
                    continue;
                }
                if self.table[f][inv_col(x)] == e {
                    self.table[f][inv_col(x)] = NONE;
                }
                let (e1, f1) = (self.rep(e), self.rep(f));
                let ex = self.table[e1][x];
                if ex != NONE {
                    self.merge(f1, ex);
                } else {
                    let fx = self.table[f1][inv_col(x)];
                    if fx != NONE {
                        self.merge(e1, fx);
                    } else {
                        self.table[e1][x] = f1;
                        self.table[f1][inv_col(x)] = e1;
                    }
                }
            }
        }
    }

    /// Scans the relator `w` from coset `c`, filling gaps by definitions.
    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> bool {
        if w.is_empty() {
            return true;
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.table[f][w[i]] != NONE {
                f = self.table[f][w[i]];
                i += 1;
            }
            if (i as isize) > j {
                if f != c {
                    self.coincidence(f, c);
                }
                return true;
            }
            while j >= i as isize && self.table[b][inv_col(w[j as usize])] != NONE {
                b = self.table[b][inv_col(w[j as usize])];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return true;
            } else if j == i as isize {
                self.table[f][w[i]] = b;
                self.table[b][inv_col(w[i])] = f;
                return true;
            } else if !self.define(f, w[i]) {
                return false;
            }
        }
    }
}

/// Permutations of the regular action of the presented group on itself,
/// one per generator, on points `0..|G|` with `0` the identity coset.
pub(crate) fn regular_permutations(pres: &Presentation, bounds: &Bounds) -> Result<Vec<Vec<usize>>> {
    pres.validate()?;
    let bound = bounds.max_group_order;
    if pres.generators == 0 {
        return Ok(Vec::new());
    }
    if pres.relators.iter().all(Vec::is_empty) {
        return Err(too_large(bound));
    }
    let words: Vec<Vec<usize>> = pres
        .relators
        .iter()
        .map(|r| {
            r.iter()
                .map(|&l| {
                    let g = l.unsigned_abs() as usize - 1;
                    if l > 0 { 2 * g } else { 2 * g + 1 }
                })
                .collect()
        })
        .collect();
    let cols = 2 * pres.generators;
    let mut ct = CosetTable::new(cols, bound.saturating_mul(10).max(2));
    let mut c = 0;
    while c < ct.table.len() {
        for w in &words {
            if !ct.live(c) {
                break;
            }
            if !ct.scan_and_fill(c, w) {
                return Err(too_large(bound));
            }
        }
        if ct.live(c) {
            for x in 0..cols {
                if ct.table[c][x] == NONE && !ct.define(c, x) {
                    return Err(too_large(bound));
                }
            }
        }
        c += 1;
    }
    let live: Vec<usize> = (0..ct.table.len()).filter(|&c| ct.live(c)).collect();
    if live.len() > bound {
        return Err(too_large(bound));
    }
    let mut renumber = vec![NONE; ct.table.len()];
    for (i, &c) in live.iter().enumerate() {
        renumber[c] = i;
    }
    let mut perms = vec![vec![0usize; live.len()]; pres.generators];
    for (g, perm) in perms.iter_mut().enumerate() {
        for (i, &c) in live.iter().enumerate() {
            let target = ct.table[c][2 * g];
            let t = if target == NONE { NONE } else { renumber[ct.rep(target)] };
            if t == NONE {
                return Err(Error::invariant("coset enumeration finished with an incomplete table"));
            }
            perm[i] = t;
        }
    }
    Ok(perms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn g80() -> Presentation {
        // x^20, y^8, x^10 y^4, y^-1 x y x^-3
        Presentation::new(
            2,
            vec![vec![1; 20], vec![2; 8], [vec![1; 10], vec![2; 4]].concat(), vec![-2, 1, 2, -1, -1, -1]],
        )
    }

    #[test]
    fn order_80_group() {
        let g = FiniteGroup::from_presentation(&g80(), &Bounds::default()).unwrap();
        assert_eq!(g.order(), 80);
        assert_eq!(g.conjugacy_classes().len(), 14);
        assert_eq!(g.elem_order(g.generators()[0]), 20);
        assert_eq!(g.elem_order(g.generators()[1]), 8);
        g.check_axioms().unwrap();
    }

    #[test]
    fn sl23() {
        // x^4, y^4, z^3, y^-1 x y x, z^-1 x z y^-1, z^-1 y z (xy)^-1
        let p = Presentation::new(
            3,
            vec![vec![1; 4], vec![2; 4], vec![3; 3], vec![-2, 1, 2, 1], vec![-3, 1, 3, -2], vec![-3, 2, 3, -2, -1]],
        );
        let g = FiniteGroup::from_presentation(&p, &Bounds::default()).unwrap();
        assert_eq!(g.order(), 24);
        let (x, y) = (g.generators()[0], g.generators()[1]);
        assert_eq!(g.mul(x, x), g.mul(y, y));
        assert_eq!(g.conjugacy_classes().len(), 7);
    }

    #[test]
    fn trivial_and_cyclic() {
        let g = FiniteGroup::from_presentation(&Presentation::new(1, vec![vec![1]]), &Bounds::default()).unwrap();
        assert_eq!(g.order(), 1);
        let g = FiniteGroup::from_presentation(&Presentation::new(1, vec![vec![1; 7]]), &Bounds::default()).unwrap();
        assert_eq!(g.order(), 7);
        let g = FiniteGroup::from_presentation(&Presentation::new(0, vec![]), &Bounds::default()).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn infinite_or_too_large() {
        let err = FiniteGroup::from_presentation(&Presentation::new(1, vec![]), &Bounds::default()).unwrap_err();
        assert!(err.to_string().contains("group too large or infinite"));
        let small = Bounds { max_group_order: 50, ..Bounds::default() };
        let err = FiniteGroup::from_presentation(&g80(), &small).unwrap_err();
        assert!(matches!(err, Error::Bound(_)));
        // Z x Z
        let err = FiniteGroup::from_presentation(&Presentation::new(2, vec![vec![-1, -2, 1, 2]]), &small).unwrap_err();
        assert!(matches!(err, Error::Bound(_)));
        assert!(FiniteGroup::from_presentation(&Presentation::new(1, vec![vec![3]]), &small).is_err());
    }

    #[test]
    fn dihedral_orders() {
        for n in 3..12 {
            let p = Presentation::new(2, vec![vec![1; n], vec![2, 2], vec![2, 1, 2, 1]]);
            let g = FiniteGroup::from_presentation(&p, &Bounds::default()).unwrap();
            assert_eq!(g.order(), 2 * n);
        }
    }
}
