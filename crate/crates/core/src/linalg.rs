//! Exact row reduction over any [`Field`]: incremental rank, membership and
//! unique solves. Pivots are the first nonzero entry; no other heuristics.

use crate::numfield::Field;

/// Incrementally built row-echelon basis of a subspace of `F^width`.
///
/// Rows are stored with a unit pivot and are reduced against every earlier
/// row, so reducing a vector by the rows in insertion order leaves zeros in
/// all pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    width: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
    /// When tracking, `combos[i]` writes row `i` in terms of inserted vectors.
    combos: Option<Vec<Vec<F::Elem>>>,
    inserted: usize,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, width: usize) -> Self {
        Echelon { field, width, rows: Vec::new(), pivots: Vec::new(), combos: None, inserted: 0 }
    }

    /// Like [`Echelon::new`], but remembers how each row combines the
    /// inserted vectors so that [`Echelon::express`] can solve systems.
    pub fn tracking(field: F, width: usize) -> Self {
        Echelon { combos: Some(Vec::new()), ..Self::new(field, width) }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    fn reduce_with(&self, v: &mut [F::Elem], mut combo: Option<&mut Vec<F::Elem>>) {
        let f = &self.field;
        for (i, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if f.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row).skip(p) {
                if !f.is_zero(r) {
                    *x = f.sub(x, &f.mul(&c, r));
                }
            }
            if let (Some(combo), Some(combos)) = (combo.as_deref_mut(), &self.combos) {
                for (x, r) in combo.iter_mut().zip(&combos[i]) {
                    if !f.is_zero(r) {
                        *x = f.sub(x, &f.mul(&c, r));
                    }
                }
            }
        }
    }

    /// Residual of `v` after reduction; zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let mut w = v.to_vec();
        self.reduce_with(&mut w, None);
        w
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Inserts `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.width, "vector width mismatch");
        let f = self.field.clone();
        let mut w = v.to_vec();
        let mut combo = self.combos.as_ref().map(|_| {
            let mut c = vec![f.zero(); self.inserted + 1];
            c[self.inserted] = f.one();
            c
        });
        if let Some(combos) = self.combos.as_mut() {
            for c in combos.iter_mut() {
                c.push(f.zero());
            }
        }
        self.inserted += 1;
        self.reduce_with(&mut w, combo.as_mut());
        let Some(p) = w.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&w[p]).expect("nonzero pivot");
        for x in w.iter_mut().skip(p) {
            if !f.is_zero(x) {
                *x = f.mul(x, &inv);
            }
        }
        if let (Some(mut combo), Some(combos)) = (combo, self.combos.as_mut()) {
            for x in combo.iter_mut() {
                if !f.is_zero(x) {
                    *x = f.mul(x, &inv);
                }
            }
            combos.push(combo);
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }

    /// Coefficients writing `target` as a combination of the inserted
    /// vectors (in insertion order), or `None` when it is outside the span.
    /// Requires a tracking echelon.
    pub fn express(&self, target: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let combos = self.combos.as_ref().expect("express needs a tracking echelon");
        let f = &self.field;
        let mut w = target.to_vec();
        let mut coeffs = vec![f.zero(); self.inserted];
        for (i, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if f.is_zero(&w[p]) {
                continue;
            }
            let c = w[p].clone();
            for (x, r) in w.iter_mut().zip(row).skip(p) {
                if !f.is_zero(r) {
                    *x = f.sub(x, &f.mul(&c, r));
                }
            }
            for (x, r) in coeffs.iter_mut().zip(&combos[i]) {
                if !f.is_zero(r) {
                    f.mul_add_assign(x, &c, r);
                }
            }
        }
        w.iter().all(|x| f.is_zero(x)).then_some(coeffs)
    }
}

/// Rank of the span of `vectors`.
pub fn rank<F: Field>(field: &F, width: usize, vectors: impl IntoIterator<Item = Vec<F::Elem>>) -> usize {
    let mut e = Echelon::new(field.clone(), width);
    for v in vectors {
        e.insert(&v);
        if e.rank() == width {
            break;
        }
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::{int, rat, Rational, Rationals};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn rank_and_membership() {
        let mut e = Echelon::new(Rationals, 3);
        assert!(e.insert(&v(&[1, 2, 3])));
        assert!(e.insert(&v(&[2, 4, 7])));
        assert!(!e.insert(&v(&[3, 6, 10])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&v(&[0, 0, 5])));
        assert!(!e.contains(&v(&[0, 1, 0])));
    }

    #[test]
    fn express_recovers_coefficients() {
        let cols = [v(&[1, 0, 1, 2]), v(&[0, 1, 1, 0]), v(&[1, 1, 0, 1])];
        let mut e = Echelon::tracking(Rationals, 4);
        for c in &cols {
            assert!(e.insert(c));
        }
        let target: Vec<Rational> = (0..4)
            .map(|i| &cols[0][i] * rat(1, 2) + &cols[1][i] * int(-3) + &cols[2][i] * rat(2, 3))
            .collect();
        assert_eq!(e.express(&target).unwrap(), vec![rat(1, 2), int(-3), rat(2, 3)]);
        assert!(e.express(&v(&[1, 0, 0, 0])).is_none());
    }

    #[test]
    fn express_with_dependent_inserts() {
        let mut e = Echelon::tracking(Rationals, 2);
        e.insert(&v(&[1, 1]));
        e.insert(&v(&[2, 2]));
        e.insert(&v(&[0, 1]));
        let c = e.express(&v(&[3, 5])).unwrap();
        let rebuilt: Vec<Rational> = (0..2).map(|i| [v(&[1, 1]), v(&[2, 2]), v(&[0, 1])].iter().zip(&c).map(|(col, k)| &col[i] * k).sum()).collect();
        assert_eq!(rebuilt, v(&[3, 5]));
    }
}
