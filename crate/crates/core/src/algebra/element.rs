use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::linalg::Echelon;
use crate::numfield::{CycValue, Cyclotomic, Field, NfElem, NumField, Rational, Rationals};

/// `Σ_g c_g g` with one coefficient per group element.
#[derive(Clone)]
pub struct AlgebraElement<F: Field> {
    group: Arc<FiniteGroup>,
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> AlgebraElement<F> {
    pub fn zero(group: &Arc<FiniteGroup>, field: &F) -> Self {
        AlgebraElement { group: group.clone(), field: field.clone(), coeffs: vec![field.zero(); group.order()] }
    }

    pub fn identity(group: &Arc<FiniteGroup>, field: &F) -> Self {
        Self::basis(group, field, 0)
    }

    /// The group element `g` itself.
    pub fn basis(group: &Arc<FiniteGroup>, field: &F, g: usize) -> Self {
        let mut a = Self::zero(group, field);
        a.coeffs[g] = field.one();
        a
    }

    pub fn from_coeffs(group: &Arc<FiniteGroup>, field: &F, coeffs: Vec<F::Elem>) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(Error::invalid(format!(
                "algebra element has {} coefficients for a group of order {}",
                coeffs.len(),
                group.order()
            )));
        }
        Ok(AlgebraElement { group: group.clone(), field: field.clone(), coeffs })
    }

    pub fn from_sparse(group: &Arc<FiniteGroup>, field: &F, terms: impl IntoIterator<Item = (usize, F::Elem)>) -> Result<Self> {
        let mut a = Self::zero(group, field);
        for (g, c) in terms {
            if g >= group.order() {
                return Err(Error::invalid(format!("element index {g} out of range")));
            }
            a.coeffs[g] = field.add(&a.coeffs[g], &c);
        }
        Ok(a)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, g: usize) -> &F::Elem {
        &self.coeffs[g]
    }

    /// Nonzero terms in element order.
    pub fn support(&self) -> impl Iterator<Item = (usize, &F::Elem)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !self.field.is_zero(c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    fn same_group(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group,
            "algebra elements over different groups"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_group(other);
        let f = &self.field;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f.add(a, b)).collect();
        AlgebraElement { coeffs, ..self.clone_empty() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_group(other);
        let f = &self.field;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f.sub(a, b)).collect();
        AlgebraElement { coeffs, ..self.clone_empty() }
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.field.neg(a)).collect();
        AlgebraElement { coeffs, ..self.clone_empty() }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        let coeffs = self.coeffs.iter().map(|a| if f.is_zero(a) { f.zero() } else { f.mul(a, c) }).collect();
        AlgebraElement { coeffs, ..self.clone_empty() }
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.field.scale(a, q)).collect();
        AlgebraElement { coeffs, ..self.clone_empty() }
    }

    fn clone_empty(&self) -> Self {
        AlgebraElement { group: self.group.clone(), field: self.field.clone(), coeffs: Vec::new() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_group(other);
        let g = &self.group;
        let f = &self.field;
        let mut out = vec![f.zero(); g.order()];
        let right: Vec<(usize, &F::Elem)> = other.support().collect();
        for (a, x) in self.support() {
            for &(b, y) in &right {
                f.mul_add_assign(&mut out[g.mul(a, b)], x, y);
            }
        }
        AlgebraElement { coeffs: out, ..self.clone_empty() }
    }

    /// `h · a`.
    pub fn left_translate(&self, h: usize) -> Self {
        let g = &self.group;
        let mut out = vec![self.field.zero(); g.order()];
        for (b, c) in self.coeffs.iter().enumerate() {
            out[g.mul(h, b)] = c.clone();
        }
        AlgebraElement { coeffs: out, ..self.clone_empty() }
    }

    /// `a · h`.
    pub fn right_translate(&self, h: usize) -> Self {
        let g = &self.group;
        let mut out = vec![self.field.zero(); g.order()];
        for (b, c) in self.coeffs.iter().enumerate() {
            out[g.mul(b, h)] = c.clone();
        }
        AlgebraElement { coeffs: out, ..self.clone_empty() }
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self) == *self
    }

    /// `a·b = 0` and `b·a = 0`.
    pub fn is_orthogonal_to(&self, other: &Self) -> bool {
        self.mul(other).is_zero() && other.mul(self).is_zero()
    }

    /// Commutes with every generator, hence with all of `G`.
    pub fn is_central(&self) -> bool {
        self.group.generators().iter().all(|&s| self.left_translate(s) == self.right_translate(s))
    }

    /// `h·a = a = a·h` for every `h ∈ H`.
    pub fn is_bi_invariant(&self, h: &Subgroup) -> bool {
        h.members().iter().all(|&x| self.left_translate(x) == *self && self.right_translate(x) == *self)
    }

    /// Whether every coefficient is rational.
    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(|c| self.field.to_rational(c).is_some())
    }

    /// Coefficients as rationals, if all are.
    pub fn to_rational(&self) -> Option<AlgebraElement<Rationals>> {
        let coeffs = self.coeffs.iter().map(|c| self.field.to_rational(c)).collect::<Option<Vec<_>>>()?;
        Some(AlgebraElement { group: self.group.clone(), field: Rationals, coeffs })
    }

    /// Coefficientwise image under a field map.
    pub fn map_field<G: Field>(&self, target: &G, f: impl Fn(&F::Elem) -> G::Elem) -> AlgebraElement<G> {
        AlgebraElement { group: self.group.clone(), field: target.clone(), coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// Dimension over `F` of the left ideal `F[G]·a`.
    pub fn ideal_dim(&self) -> usize {
        let n = self.group.order();
        let mut e = Echelon::new(self.field.clone(), n);
        for h in 0..n {
            e.insert(&self.left_translate(h).coeffs);
        }
        e.rank()
    }

    /// Whether `x` lies in `F[G]·a` for an idempotent `a` (`x·a = x`).
    pub fn ideal_contains(&self, x: &Self) -> bool {
        x.mul(self) == *x
    }

    /// Terms as `(coefficient, element label)` strings.
    pub fn render_terms(&self) -> Vec<(String, String)> {
        self.support().map(|(g, c)| (self.field.render(c), self.group.label(g).to_string())).collect()
    }
}

impl<F: Field> PartialEq for AlgebraElement<F> {
    fn eq(&self, other: &Self) -> bool {
        self.group.order() == other.group.order() && self.coeffs == other.coeffs
    }
}

impl<F: Field> fmt::Display for AlgebraElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.render_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = terms.into_iter().map(|(c, g)| format!("({c})*{g}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<F: Field> fmt::Debug for AlgebraElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement({self})")
    }
}

impl AlgebraElement<Rationals> {
    pub fn rational(group: &Arc<FiniteGroup>, terms: impl IntoIterator<Item = (usize, Rational)>) -> Result<Self> {
        Self::from_sparse(group, &Rationals, terms)
    }

    pub fn to_cyclotomic(&self, field: &Cyclotomic) -> AlgebraElement<Cyclotomic> {
        self.map_field(field, |q| field.rational(q.clone()))
    }

    pub fn to_numfield(&self, field: &NumField) -> AlgebraElement<NumField> {
        self.map_field(field, |q| field.from_rational(q))
    }
}

impl AlgebraElement<Cyclotomic> {
    /// Image under `ζ ↦ ζ^k` applied to every coefficient.
    pub fn galois(&self, k: i64) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|c| c.galois(k)).collect::<Result<Vec<CycValue>>>()?;
        Ok(AlgebraElement { coeffs, ..self.clone_empty() })
    }
}

impl AlgebraElement<NumField> {
    /// Image under the `index`-th declared automorphism of `L`.
    pub fn apply_automorphism(&self, index: usize) -> Self {
        let coeffs: Vec<NfElem> = self.coeffs.iter().map(|c| self.field.apply_automorphism(index, c)).collect();
        AlgebraElement { coeffs, ..self.clone_empty() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::rat;
    use crate::testing::*;
    use proptest::prelude::*;

    fn random_element(g: &Arc<FiniteGroup>, seed: &[i64]) -> AlgebraElement<Rationals> {
        let terms = seed.iter().enumerate().map(|(i, &v)| (i % g.order(), rat(v, 1 + (i as i64 % 3))));
        AlgebraElement::rational(g, terms).unwrap()
    }

    #[test]
    fn central_involution_halves() {
        let g = Arc::new(q8());
        let z = g.parse_element("x^2").unwrap();
        let one = AlgebraElement::identity(&g, &Rationals);
        let zz = AlgebraElement::basis(&g, &Rationals, z);
        let a = one.sub(&zz).scale_rational(&rat(1, 2));
        let b = one.add(&zz).scale_rational(&rat(1, 2));
        assert!(a.is_idempotent() && b.is_idempotent());
        assert!(a.is_orthogonal_to(&b));
        assert!(a.is_central());
        assert_eq!(a.add(&b), one);
        assert_eq!(one.ideal_dim(), 8);
        assert_eq!(a.ideal_dim(), 4);
    }

    #[test]
    fn translations() {
        let g = Arc::new(s3());
        let x = AlgebraElement::basis(&g, &Rationals, 1);
        let a = random_element(&g, &[1, -2, 3, 0, 5, 7]);
        assert_eq!(x.mul(&a), a.left_translate(1));
        assert_eq!(a.mul(&x), a.right_translate(1));
        assert!(AlgebraElement::basis(&g, &Rationals, 1).to_rational().is_some());
        assert_eq!(format!("{}", AlgebraElement::zero(&g, &Rationals)), "0");
    }

    proptest! {
        #[test]
        fn ring_axioms(a in proptest::collection::vec(-5i64..5, 6), b in proptest::collection::vec(-5i64..5, 6), c in proptest::collection::vec(-5i64..5, 6)) {
            let g = Arc::new(s3());
            let (a, b, c) = (random_element(&g, &a), random_element(&g, &b), random_element(&g, &c));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
            let one = AlgebraElement::identity(&g, &Rationals);
            prop_assert_eq!(one.mul(&a), a.clone());
        }
    }
}
