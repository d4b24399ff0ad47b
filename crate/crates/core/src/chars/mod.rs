//! Character tables over `Q(ζ_e)`, rational irreducibles and permutation
//! characters `ρ_H`.

mod dixon;
mod rational;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::numfield::{int, CycValue, Cyclotomic, Rational};

pub use rational::{
    galois_orbits, rational_character, RationalIrrep, RationalIrreps, RhoDecomposition, SchurStatus,
};

/// Values of a class function, one per conjugacy class.
pub type ClassFunction = Vec<CycValue>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    values: ClassFunction,
}

impl Character {
    pub fn values(&self) -> &[CycValue] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &CycValue {
        &self.values[class]
    }

    /// `χ(1)`.
    pub fn degree(&self) -> u32 {
        self.values[0].to_rational().and_then(|q| q.to_integer().to_u32()).unwrap_or(0)
    }

    pub fn is_rational(&self) -> bool {
        self.values.iter().all(CycValue::is_rational)
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| v.to_rational() == Some(Rational::one()))
    }

    fn lex_cmp(&self, other: &Character) -> Ordering {
        for (a, b) in self.values.iter().zip(&other.values) {
            match a.lex_cmp(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

/// Irreducible characters of a group, validated by both orthogonality
/// relations. Columns follow the group's class order.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    level: u32,
    order: usize,
    class_sizes: Vec<usize>,
    class_reps: Vec<usize>,
    class_of: Vec<usize>,
    square_class: Vec<usize>,
    chars: Vec<Character>,
    declared_schur: BTreeMap<usize, u32>,
}

impl CharacterTable {
    fn skeleton(g: &FiniteGroup) -> Self {
        let classes = g.conjugacy_classes();
        CharacterTable {
            level: g.exponent(),
            order: g.order(),
            class_sizes: classes.iter().map(|c| c.size()).collect(),
            class_reps: classes.iter().map(|c| c.representative).collect(),
            class_of: (0..g.order()).map(|a| g.class_of(a)).collect(),
            square_class: classes.iter().map(|c| g.class_of(g.mul(c.representative, c.representative))).collect(),
            chars: Vec::new(),
            declared_schur: BTreeMap::new(),
        }
    }

    /// Computes the table. Rows are sorted by degree, the trivial character
    /// first, then by descending lexicographic order of the value vectors.
    pub fn compute(g: &FiniteGroup) -> Result<Self> {
        let mut t = Self::skeleton(g);
        let mut chars: Vec<Character> = dixon::dixon(g)?.into_iter().map(|values| Character { values }).collect();
        chars.sort_by(|a, b| {
            a.degree()
                .cmp(&b.degree())
                .then_with(|| b.is_trivial().cmp(&a.is_trivial()))
                .then_with(|| b.lex_cmp(a))
        });
        t.chars = chars;
        t.validate()?;
        Ok(t)
    }

    /// Builds a table from explicit rows (columns in the group's class
    /// order), keeping the row order, and validates it.
    pub fn from_rows(g: &FiniteGroup, rows: Vec<Vec<CycValue>>, declared_schur: BTreeMap<usize, u32>) -> Result<Self> {
        let mut t = Self::skeleton(g);
        let e = t.level;
        let r = t.class_sizes.len();
        let mut chars = Vec::with_capacity(rows.len());
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != r {
                return Err(Error::invalid(format!("character {} has {} values, expected {r}", i + 1, row.len())));
            }
            let values = row
                .into_iter()
                .map(|v| {
                    v.to_level(e).map_err(|_| {
                            Error::invalid(format!(
                                "character {}: value at level {} does not lie in Q(zeta_{e})",
                                i + 1,
                                v.level()
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            chars.push(Character { values });
        }
        for (&i, &m) in &declared_schur {
            if i >= chars.len() || m == 0 {
                return Err(Error::invalid(format!("Schur annotation for character {} is invalid", i + 1)));
            }
        }
        t.chars = chars;
        t.declared_schur = declared_schur;
        t.validate()?;
        Ok(t)
    }

    /// Both orthogonality relations, integrality and the degree sum.
    pub fn validate(&self) -> Result<()> {
        let r = self.class_sizes.len();
        let n = int(self.order as i64);
        if self.chars.len() != r {
            return Err(Error::invalid(format!(
                "table has {} characters but the group has {r} conjugacy classes",
                self.chars.len()
            )));
        }
        let mut deg_sq = 0u64;
        for (i, c) in self.chars.iter().enumerate() {
            let d = c.values[0].to_rational();
            let ok = d.as_ref().is_some_and(|d| d.is_integer() && d.is_positive());
            if !ok {
                return Err(Error::invalid(format!("character {} has degree {} (not a positive integer)", i + 1, c.values[0])));
            }
            let d = c.degree() as u64;
            if self.order as u64 % d != 0 {
                return Err(Error::invalid(format!("degree {d} of character {} does not divide |G|", i + 1)));
            }
            deg_sq += d * d;
        }
        if deg_sq != self.order as u64 {
            return Err(Error::invalid(format!("sum of squared degrees is {deg_sq}, not |G| = {}", self.order)));
        }
        for i in 0..r {
            for j in i..r {
                let ip = self.inner_product(&self.chars[i].values, &self.chars[j].values);
                let expect = if i == j { 1 } else { 0 };
                if ip.to_rational() != Some(int(expect)) {
                    return Err(Error::invalid(format!(
                        "row orthogonality fails for characters {} and {}: inner product {ip}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let field = Cyclotomic::new(self.level);
        for k in 0..r {
            for l in k..r {
                let mut s = field.rational(int(0));
                for c in &self.chars {
                    s = &s + &(&c.values[k] * &c.values[l].conj());
                }
                let expect = if k == l { &n / int(self.class_sizes[k] as i64) } else { Rational::zero() };
                if s.to_rational() != Some(expect) {
                    return Err(Error::invalid(format!(
                        "column orthogonality fails for classes {} and {}: sum {s}",
                        k + 1,
                        l + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// Cyclotomic level `e` of all values (the group exponent).
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn group_order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn characters(&self) -> &[Character] {
        &self.chars
    }

    pub fn character(&self, i: usize) -> &Character {
        &self.chars[i]
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    pub fn class_representatives(&self) -> &[usize] {
        &self.class_reps
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    /// Schur indices stated alongside a loaded table, by character index.
    pub fn declared_schur(&self) -> &BTreeMap<usize, u32> {
        &self.declared_schur
    }

    /// Value of character `i` at element `a`.
    pub fn value_at(&self, i: usize, a: usize) -> &CycValue {
        &self.chars[i].values[self.class_of[a]]
    }

    /// `(1/|G|) Σ_g a(g) · conj(b(g))`.
    pub fn inner_product(&self, a: &[CycValue], b: &[CycValue]) -> CycValue {
        let field = Cyclotomic::new(self.level);
        let mut s = field.rational(int(0));
        for (l, &h) in self.class_sizes.iter().enumerate() {
            let term = &a[l] * &b[l].conj();
            s = &s + &term.scale(&int(h as i64));
        }
        s.scale(&Rational::new(1.into(), (self.order as i64).into()))
    }

    /// `dim V^H = (1/|H|) Σ_{h∈H} χ_V(h) = ⟨ρ_H, V⟩`.
    pub fn fixed_dim(&self, i: usize, h: &Subgroup) -> Result<u32> {
        let field = Cyclotomic::new(self.level);
        let mut s = field.rational(int(0));
        for &a in h.members() {
            if a >= self.order {
                return Err(Error::invalid("invalid character/subgroup data: element out of range"));
            }
            s = &s + self.value_at(i, a);
        }
        let q = s.to_rational().map(|q| q / int(h.order() as i64));
        match q {
            Some(q) if q.is_integer() && !q.is_negative() => Ok(q.to_integer().to_u32().unwrap()),
            _ => Err(Error::invalid(format!(
                "invalid character/subgroup data: average of character {} over the subgroup is {s}/{}",
                i + 1,
                h.order()
            ))),
        }
    }

    /// Frobenius–Schur indicator `(1/|G|) Σ_g χ(g²)`, one of `1, 0, -1`.
    pub fn frobenius_schur(&self, i: usize) -> i32 {
        let field = Cyclotomic::new(self.level);
        let mut s = field.rational(int(0));
        for (l, &h) in self.class_sizes.iter().enumerate() {
            s = &s + &self.chars[i].values[self.square_class[l]].scale(&int(h as i64));
        }
        let q = s.to_rational().unwrap_or_default() / int(self.order as i64);
        q.to_integer().to_i32().unwrap_or(0)
    }

    /// Permutation character of `G` on the cosets of `H`, as rational values
    /// per class: `ρ_H(g) = |C_G(g)| · |g^G ∩ H| / |H|`.
    pub fn permutation_character(&self, h: &Subgroup) -> Vec<Rational> {
        let mut counts = vec![0usize; self.class_sizes.len()];
        for &a in h.members() {
            counts[self.class_of[a]] += 1;
        }
        counts
            .iter()
            .zip(&self.class_sizes)
            .map(|(&c, &s)| Rational::new(((self.order / s) * c).into(), (h.order() as i64).into()))
            .collect()
    }

    /// Index of the character equal to `values`, if present.
    pub fn find(&self, values: &[CycValue]) -> Option<usize> {
        self.chars.iter().position(|c| c.values == values)
    }
}

#[cfg(test)]
mod tests;
