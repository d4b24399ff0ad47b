//! User-declared Galois number fields `L = Q[t]/(p)` together with the
//! full list of automorphisms (images of `t`) and the subgroup `Gal(L/K)`.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::irreducible::is_irreducible;
use super::poly::{render_poly, QPoly};
use super::{Field, Rational};
use crate::error::{Error, Result};

/// Element of a [`NumField`]: power-basis coordinates of length `deg p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NfElem(pub(crate) Vec<Rational>);

impl NfElem {
    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn to_poly(&self) -> QPoly {
        QPoly::new(self.0.clone())
    }
}

impl fmt::Debug for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NfElem({})", render_poly(&self.0, "t"))
    }
}

struct NfData {
    minpoly: QPoly,
    degree: usize,
    automorphisms: Vec<QPoly>,
    /// `aut_columns[s][i]` = `σ_s(t)^i` in the power basis.
    aut_columns: Vec<Vec<Vec<Rational>>>,
    /// Indices of the automorphisms fixing the distinguished subfield `K`.
    fixers: Vec<usize>,
    /// `t^k mod p` for `k` in `degree .. 2*degree - 1`.
    high_powers: Vec<Vec<Rational>>,
    /// Composition table: `compose[a][b]` is the index of `σ_a ∘ σ_b`.
    compose: Vec<Vec<usize>>,
}

/// A Galois number field with its automorphism group spelled out.
#[derive(Clone)]
pub struct NumField(Arc<NfData>);

impl NumField {
    /// Validates and builds the field. `automorphisms` lists the images of
    /// `t`; `fixers` selects the automorphisms that fix the subfield `K`.
    pub fn new(minpoly: QPoly, automorphisms: Vec<QPoly>, fixers: Vec<usize>) -> Result<Self> {
        let degree = minpoly
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::invalid("minimal polynomial must have positive degree"))?;
        if !minpoly.is_monic() {
            return Err(Error::invalid("minimal polynomial must be monic"));
        }
        if !is_irreducible(&minpoly)? {
            return Err(Error::invalid(format!("not a field: {minpoly} is reducible over Q")));
        }
        let not_galois = |why: String| Error::invalid(format!("L/Q not Galois as declared: {why}"));
        let automorphisms: Vec<QPoly> = automorphisms.iter().map(|a| a.rem(&minpoly)).collect();
        if automorphisms.len() != degree {
            return Err(not_galois(format!(
                "{} automorphisms declared for a field of degree {degree}",
                automorphisms.len()
            )));
        }
        for (i, a) in automorphisms.iter().enumerate() {
            if !minpoly.compose_mod(a, &minpoly).is_zero() {
                return Err(not_galois(format!("image #{i} ({a}) is not a root of the minimal polynomial")));
            }
            if automorphisms[..i].contains(a) {
                return Err(not_galois(format!("image #{i} ({a}) is repeated")));
            }
        }
        let compose = automorphisms
            .iter()
            .map(|outer| {
                automorphisms
                    .iter()
                    .map(|inner| {
                        // (σ_a ∘ σ_b)(t) = σ_a(σ_b(t)) = σ_b(t) evaluated at σ_a(t)
                        let img = inner.compose_mod(outer, &minpoly);
                        automorphisms
                            .iter()
                            .position(|x| *x == img)
                            .ok_or_else(|| not_galois(format!("composition {img} is not in the list")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let id = automorphisms
            .iter()
            .position(|a| *a == QPoly::t().rem(&minpoly))
            .ok_or_else(|| not_galois("identity missing".into()))?;
        let mut fixers = fixers;
        fixers.sort_unstable();
        fixers.dedup();
        if fixers.is_empty() {
            fixers.push(id);
        }
        if fixers.iter().any(|&i| i >= degree) {
            return Err(Error::invalid("subfield fixer index out of range"));
        }
        if !fixers.contains(&id) || fixers.iter().any(|&a| fixers.iter().any(|&b| !fixers.contains(&compose[a][b]))) {
            return Err(Error::invalid("subfield fixers do not form a subgroup"));
        }
        let aut_columns = automorphisms
            .iter()
            .map(|a| {
                let mut cols = Vec::with_capacity(degree);
                let mut cur = QPoly::one();
                for _ in 0..degree {
                    cols.push(pad(cur.coeffs(), degree));
                    cur = (&cur * a).rem(&minpoly);
                }
                cols
            })
            .collect();
        let mut high_powers = Vec::new();
        let mut cur = QPoly::monomial(Rational::one(), degree).rem(&minpoly);
        for _ in degree..(2 * degree).saturating_sub(1) {
            high_powers.push(pad(cur.coeffs(), degree));
            cur = (&cur * &QPoly::t()).rem(&minpoly);
        }
        Ok(NumField(Arc::new(NfData { minpoly, degree, automorphisms, aut_columns, fixers, high_powers, compose })))
    }

    /// `Q` presented as `Q[t]/(t)`.
    pub fn rationals() -> Self {
        NumField::new(QPoly::t(), vec![QPoly::t()], vec![0]).expect("Q is a field")
    }

    pub fn minpoly(&self) -> &QPoly {
        &self.0.minpoly
    }

    pub fn automorphisms(&self) -> &[QPoly] {
        &self.0.automorphisms
    }

    /// Indices of `Gal(L/K)` inside the automorphism list.
    pub fn subfield_fixers(&self) -> &[usize] {
        &self.0.fixers
    }

    pub fn identity_index(&self) -> usize {
        let t = QPoly::t().rem(&self.0.minpoly);
        self.0.automorphisms.iter().position(|a| *a == t).unwrap()
    }

    /// Index of `σ_a ∘ σ_b`.
    pub fn compose(&self, a: usize, b: usize) -> usize {
        self.0.compose[a][b]
    }

    /// One automorphism per left coset of `Gal(L/K)`; restricted to `K` they
    /// enumerate `Gal(K/Q)`. The identity comes first.
    pub fn coset_reps_over_fixers(&self) -> Vec<usize> {
        let mut covered = vec![false; self.degree()];
        let mut reps = Vec::new();
        let mut order: Vec<usize> = (0..self.degree()).collect();
        let id = self.identity_index();
        order.retain(|&i| i != id);
        order.insert(0, id);
        for s in order {
            if covered[s] {
                continue;
            }
            reps.push(s);
            for &h in self.subfield_fixers() {
                covered[self.compose(s, h)] = true;
            }
        }
        reps
    }

    /// `[L:K]`.
    pub fn relative_degree(&self) -> usize {
        self.0.fixers.len()
    }

    pub fn elem(&self, poly: &QPoly) -> NfElem {
        NfElem(pad(poly.rem(&self.0.minpoly).coeffs(), self.0.degree))
    }

    pub fn elem_from_coeffs(&self, coeffs: &[Rational]) -> NfElem {
        self.elem(&QPoly::new(coeffs.to_vec()))
    }

    pub fn generator(&self) -> NfElem {
        self.elem(&QPoly::t())
    }

    pub fn apply_automorphism(&self, index: usize, a: &NfElem) -> NfElem {
        let cols = &self.0.aut_columns[index];
        let mut out = vec![Rational::zero(); self.0.degree];
        for (i, c) in a.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(&cols[i]) {
                if !v.is_zero() {
                    *o += c * v;
                }
            }
        }
        NfElem(out)
    }

    pub fn pow(&self, a: &NfElem, k: usize) -> NfElem {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn same(&self, other: &NumField) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.minpoly == other.0.minpoly
                && self.0.automorphisms == other.0.automorphisms
                && self.0.fixers == other.0.fixers)
    }
}

fn pad(c: &[Rational], n: usize) -> Vec<Rational> {
    let mut v = c.to_vec();
    v.resize(n, Rational::zero());
    v
}

impl PartialEq for NumField {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl fmt::Debug for NumField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[t]/({})", self.0.minpoly)
    }
}

impl Field for NumField {
    type Elem = NfElem;

    fn zero(&self) -> NfElem {
        NfElem(vec![Rational::zero(); self.0.degree])
    }
    fn from_rational(&self, q: &Rational) -> NfElem {
        let mut v = vec![Rational::zero(); self.0.degree];
        v[0] = q.clone();
        NfElem(v)
    }
    fn is_zero(&self, a: &NfElem) -> bool {
        a.0.iter().all(Zero::is_zero)
    }
    fn add(&self, a: &NfElem, b: &NfElem) -> NfElem {
        NfElem(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }
    fn sub(&self, a: &NfElem, b: &NfElem) -> NfElem {
        NfElem(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }
    fn mul(&self, a: &NfElem, b: &NfElem) -> NfElem {
        let d = self.0.degree;
        let mut buf = vec![Rational::zero(); 2 * d - 1];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                if !y.is_zero() {
                    buf[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<Rational> = buf.drain(..d).collect();
        for (k, c) in buf.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(&self.0.high_powers[k]) {
                if !p.is_zero() {
                    *o += &c * p;
                }
            }
        }
        NfElem(out)
    }
    fn neg(&self, a: &NfElem) -> NfElem {
        NfElem(a.0.iter().map(|x| -x).collect())
    }
    fn inv(&self, a: &NfElem) -> Option<NfElem> {
        if self.is_zero(a) {
            return None;
        }
        let (g, s, _) = QPoly::ext_gcd(&a.to_poly(), &self.0.minpoly);
        debug_assert_eq!(g.degree(), Some(0));
        Some(self.elem(&s))
    }
    fn scale(&self, a: &NfElem, q: &Rational) -> NfElem {
        NfElem(a.0.iter().map(|x| x * q).collect())
    }
    fn to_rational(&self, a: &NfElem) -> Option<Rational> {
        a.0[1..].iter().all(Zero::is_zero).then(|| a.0[0].clone())
    }
    fn degree(&self) -> usize {
        self.0.degree
    }
    fn render(&self, a: &NfElem) -> String {
        render_poly(&a.0, "t")
    }
    fn add_assign(&self, a: &mut NfElem, b: &NfElem) {
        for (x, y) in a.0.iter_mut().zip(&b.0) {
            if !y.is_zero() {
                *x += y;
            }
        }
    }
}
