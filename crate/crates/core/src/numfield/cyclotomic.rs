//! Cyclotomic fields `Q(ζ_e)` in the power basis `1, ζ, …, ζ^{φ(e)-1}`,
//! reduced modulo the e-th cyclotomic polynomial.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::poly::{render_poly, QPoly};
use super::{Field, Rational};
use crate::error::{Error, Result};

/// The e-th cyclotomic polynomial, computed by exact division of
/// `t^e - 1` by `Φ_d` for every proper divisor `d` of `e`.
pub fn cyclotomic_polynomial(e: u32) -> QPoly {
    assert!(e > 0);
    let mut p = QPoly::monomial(Rational::one(), e as usize);
    p = &p - &QPoly::one();
    for d in 1..e {
        if e % d == 0 {
            let (q, r) = p.div_rem(&cyclotomic_polynomial(d));
            debug_assert!(r.is_zero());
            p = q;
        }
    }
    p
}

struct CycData {
    level: u32,
    phi: usize,
    modulus: QPoly,
    /// `ζ^k` in the power basis for every `k < level`, as sparse pairs.
    powers: Vec<Vec<(usize, Rational)>>,
}

/// Context for `Q(ζ_e)`; cheap to clone and shared between all values of
/// the same level.
#[derive(Clone)]
pub struct Cyclotomic(Arc<CycData>);

impl Cyclotomic {
    pub fn new(level: u32) -> Self {
        static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycData>>>> = OnceLock::new();
        assert!(level > 0, "cyclotomic level must be positive");
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("cyclotomic cache poisoned");
        let data = guard
            .entry(level)
            .or_insert_with(|| Arc::new(CycData::build(level)))
            .clone();
        Cyclotomic(data)
    }

    pub fn level(&self) -> u32 {
        self.0.level
    }

    /// `φ(e)`, the dimension over `Q`.
    pub fn phi(&self) -> usize {
        self.0.phi
    }

    pub fn modulus(&self) -> &QPoly {
        &self.0.modulus
    }

    /// `ζ_e^k` for any integer `k`.
    pub fn root_power(&self, k: i64) -> CycValue {
        let e = self.level() as i64;
        let k = k.rem_euclid(e) as usize;
        let mut coeffs = vec![Rational::zero(); self.phi()];
        for (i, c) in &self.0.powers[k] {
            coeffs[*i] = c.clone();
        }
        CycValue { ctx: self.clone(), coeffs }
    }

    pub fn rational(&self, q: Rational) -> CycValue {
        let mut coeffs = vec![Rational::zero(); self.phi()];
        coeffs[0] = q;
        CycValue { ctx: self.clone(), coeffs }
    }

    /// Builds a value from power-basis coefficients; longer inputs are
    /// reduced, so any polynomial in `ζ` is accepted.
    pub fn from_coeffs(&self, coeffs: &[Rational]) -> CycValue {
        let e = self.level() as usize;
        let mut buf = vec![Rational::zero(); e];
        for (i, c) in coeffs.iter().enumerate() {
            buf[i % e] += c;
        }
        self.reduce(buf)
    }

    /// Reduces a vector indexed by exponents mod e.
    fn reduce(&self, buf: Vec<Rational>) -> CycValue {
        let phi = self.phi();
        let mut coeffs = vec![Rational::zero(); phi];
        for (k, c) in buf.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < phi {
                coeffs[k] += c;
            } else {
                for (i, p) in &self.0.powers[k] {
                    coeffs[*i] += &c * p;
                }
            }
        }
        CycValue { ctx: self.clone(), coeffs }
    }

    /// The units of `Z/e`, ascending.
    pub fn units(&self) -> Vec<u32> {
        let e = self.level();
        (0..e).filter(|&k| k.gcd(&e) == 1).collect()
    }
}

impl CycData {
    fn build(level: u32) -> Self {
        let modulus = cyclotomic_polynomial(level);
        let phi = modulus.degree().unwrap();
        let mut powers = Vec::with_capacity(level as usize);
        let mut cur = QPoly::one();
        for _ in 0..level {
            let sparse = cur
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect();
            powers.push(sparse);
            cur = (&cur * &QPoly::t()).rem(&modulus);
        }
        CycData { level, phi, modulus, powers }
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.level() == other.level()
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.level())
    }
}

/// An element of `Q(ζ_e)` in canonical reduced form.
#[derive(Clone)]
pub struct CycValue {
    ctx: Cyclotomic,
    coeffs: Vec<Rational>,
}

impl CycValue {
    pub fn level(&self) -> u32 {
        self.ctx.level()
    }

    pub fn field(&self) -> &Cyclotomic {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Re-expresses the value at a multiple of its level.
    pub fn to_level(&self, level: u32) -> Result<CycValue> {
        let e = self.level();
        if level % e != 0 {
            return Err(Error::invalid(format!("level {level} is not a multiple of {e}")));
        }
        if level == e {
            return Ok(self.clone());
        }
        let target = Cyclotomic::new(level);
        let step = (level / e) as usize;
        let mut buf = vec![Rational::zero(); level as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            buf[(i * step) % level as usize] += c;
        }
        Ok(target.reduce(buf))
    }

    fn promote_pair(a: &CycValue, b: &CycValue) -> (CycValue, CycValue) {
        if a.level() == b.level() {
            return (a.clone(), b.clone());
        }
        let l = a.level().lcm(&b.level());
        (a.to_level(l).unwrap(), b.to_level(l).unwrap())
    }

    /// Image under `σ_k : ζ ↦ ζ^k`. Fails unless `gcd(k, e) = 1`.
    pub fn galois(&self, k: i64) -> Result<CycValue> {
        let e = self.level() as i64;
        let kk = k.rem_euclid(e.max(1));
        if (kk.gcd(&e)) != 1 && e != 1 {
            return Err(Error::invalid(format!("{k} is not a unit modulo {e}")));
        }
        Ok(self.galois_unchecked(kk as usize))
    }

    pub(crate) fn galois_unchecked(&self, k: usize) -> CycValue {
        let e = self.level() as usize;
        let mut buf = vec![Rational::zero(); e];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                buf[(i * k) % e] += c;
            }
        }
        self.ctx.reduce(buf)
    }

    /// Complex conjugate, i.e. `σ_{-1}`.
    pub fn conj(&self) -> CycValue {
        let e = self.level() as usize;
        self.galois_unchecked((e - 1) % e)
    }

    pub fn inv(&self) -> Result<CycValue> {
        if self.is_zero() {
            return Err(Error::invalid("division by zero in cyclotomic field"));
        }
        let a = QPoly::new(self.coeffs.clone());
        let (g, s, _) = QPoly::ext_gcd(&a, self.ctx.modulus());
        debug_assert!(g.degree() == Some(0));
        Ok(self.ctx.from_coeffs(s.coeffs()))
    }

    pub fn checked_div(&self, other: &CycValue) -> Result<CycValue> {
        let (a, b) = Self::promote_pair(self, other);
        Ok(&a * &b.inv()?)
    }

    pub fn scale(&self, q: &Rational) -> CycValue {
        CycValue { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Floating-point value at `ζ = exp(2πi/e)`, for diagnostics only.
    pub fn to_complex(&self) -> (f64, f64) {
        let e = self.level() as f64;
        let (mut re, mut im) = (0.0, 0.0);
        for (k, c) in self.coeffs.iter().enumerate() {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let ang = 2.0 * std::f64::consts::PI * k as f64 / e;
            re += c * ang.cos();
            im += c * ang.sin();
        }
        (re, im)
    }

    /// Lexicographic order on the coefficient vectors at a common level.
    pub fn lex_cmp(&self, other: &CycValue) -> Ordering {
        let (a, b) = Self::promote_pair(self, other);
        a.coeffs.cmp(&b.coeffs)
    }
}

impl PartialEq for CycValue {
    fn eq(&self, other: &Self) -> bool {
        if self.level() == other.level() {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::promote_pair(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycValue {}

impl Hash for CycValue {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.level().hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Display for CycValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = format!("z{}", self.level());
        write!(f, "{}", render_poly(&self.coeffs, &var))
    }
}

impl fmt::Debug for CycValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycValue({self})")
    }
}

impl Add for &CycValue {
    type Output = CycValue;
    fn add(self, rhs: &CycValue) -> CycValue {
        let (a, b) = CycValue::promote_pair(self, rhs);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        CycValue { ctx: a.ctx, coeffs }
    }
}

impl Sub for &CycValue {
    type Output = CycValue;
    fn sub(self, rhs: &CycValue) -> CycValue {
        let (a, b) = CycValue::promote_pair(self, rhs);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect();
        CycValue { ctx: a.ctx, coeffs }
    }
}

impl Mul for &CycValue {
    type Output = CycValue;
    fn mul(self, rhs: &CycValue) -> CycValue {
        let (a, b) = CycValue::promote_pair(self, rhs);
        let e = a.level() as usize;
        let mut buf = vec![Rational::zero(); e];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    buf[(i + j) % e] += x * y;
                }
            }
        }
        a.ctx.reduce(buf)
    }
}

impl Neg for &CycValue {
    type Output = CycValue;
    fn neg(self) -> CycValue {
        CycValue { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Field for Cyclotomic {
    type Elem = CycValue;

    fn zero(&self) -> CycValue {
        self.rational(Rational::zero())
    }
    fn from_rational(&self, q: &Rational) -> CycValue {
        self.rational(q.clone())
    }
    fn is_zero(&self, a: &CycValue) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &CycValue, b: &CycValue) -> CycValue {
        a + b
    }
    fn sub(&self, a: &CycValue, b: &CycValue) -> CycValue {
        a - b
    }
    fn mul(&self, a: &CycValue, b: &CycValue) -> CycValue {
        a * b
    }
    fn neg(&self, a: &CycValue) -> CycValue {
        -a
    }
    fn inv(&self, a: &CycValue) -> Option<CycValue> {
        a.inv().ok()
    }
    fn scale(&self, a: &CycValue, q: &Rational) -> CycValue {
        a.scale(q)
    }
    fn to_rational(&self, a: &CycValue) -> Option<Rational> {
        a.to_rational()
    }
    fn degree(&self) -> usize {
        self.phi()
    }
    fn render(&self, a: &CycValue) -> String {
        a.to_string()
    }
    fn add_assign(&self, a: &mut CycValue, b: &CycValue) {
        if a.level() == b.level() {
            for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
                *x += y;
            }
        } else {
            *a = &*a + b;
        }
    }
}

/// A subgroup of `(Z/e)^×`, stored as its sorted residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnitSubgroup {
    modulus: u32,
    elems: Vec<u32>,
}

impl UnitSubgroup {
    pub fn full(modulus: u32) -> Self {
        UnitSubgroup { modulus, elems: Cyclotomic::new(modulus).units() }
    }

    /// Closure of the given residues under multiplication mod `modulus`.
    pub fn generated(modulus: u32, gens: &[u32]) -> Self {
        let mut elems = vec![1 % modulus.max(1)];
        let mut i = 0;
        while i < elems.len() {
            for &g in gens {
                let p = ((elems[i] as u64 * g as u64) % modulus as u64) as u32;
                if !elems.contains(&p) {
                    elems.push(p);
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        UnitSubgroup { modulus, elems }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn elements(&self) -> &[u32] {
        &self.elems
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn contains(&self, k: u32) -> bool {
        self.elems.binary_search(&(k % self.modulus.max(1))).is_ok()
    }

    /// Index in the full unit group, i.e. `[K:Q]` for the fixed field `K`.
    pub fn index(&self) -> usize {
        Cyclotomic::new(self.modulus).units().len() / self.elems.len()
    }

    /// Least representative of each coset of this subgroup in `over`,
    /// ascending. `over` must contain `self`.
    pub fn coset_reps_in(&self, over: &UnitSubgroup) -> Vec<u32> {
        let m = self.modulus as u64;
        let mut seen = std::collections::BTreeSet::new();
        let mut reps = Vec::new();
        for &k in over.elements() {
            if seen.contains(&k) {
                continue;
            }
            reps.push(k);
            for &s in &self.elems {
                seen.insert(((k as u64 * s as u64) % m) as u32);
            }
        }
        reps
    }

    /// Coset representatives of `self` in the full unit group. These index
    /// `Gal(K/Q)` when `self` is the stabilizer of `K`.
    pub fn coset_reps(&self) -> Vec<u32> {
        self.coset_reps_in(&UnitSubgroup::full(self.modulus))
    }

    /// Whether `a` is fixed by every element of the subgroup.
    pub fn fixes(&self, a: &CycValue) -> bool {
        let a = self.at_level(a);
        self.elems.iter().all(|&k| a.galois_unchecked(k as usize) == a)
    }

    fn at_level(&self, a: &CycValue) -> CycValue {
        if a.level() == self.modulus {
            a.clone()
        } else {
            a.to_level(self.modulus.lcm(&a.level())).unwrap()
        }
    }

    /// Trace from the fixed field of `self` down to `Q`. Fails when `a` is
    /// not fixed by the subgroup.
    pub fn trace_to_q(&self, a: &CycValue) -> Result<Rational> {
        let t = self.relative_trace(a, &UnitSubgroup::full(self.modulus))?;
        t.to_rational()
            .ok_or_else(|| Error::invariant("trace to Q is not rational"))
    }

    /// Trace from the fixed field of `self` to the fixed field of `over`.
    pub fn relative_trace(&self, a: &CycValue, over: &UnitSubgroup) -> Result<CycValue> {
        if a.level() > self.modulus || self.modulus % a.level() != 0 {
            return Err(Error::invalid("value level does not divide the stabilizer modulus"));
        }
        let a = a.to_level(self.modulus)?;
        if !self.fixes(&a) {
            return Err(Error::invalid("value not in declared subfield"));
        }
        let mut acc = a.field().zero();
        for k in self.coset_reps_in(over) {
            acc = &acc + &a.galois_unchecked(k as usize);
        }
        Ok(acc)
    }
}

/// The subgroup of `(Z/e)^×` fixing every value; its fixed field is the
/// field generated by the values.
pub fn char_field_stabilizer(level: u32, values: &[CycValue]) -> Result<UnitSubgroup> {
    let vals = values
        .iter()
        .map(|v| v.to_level(level))
        .collect::<Result<Vec<_>>>()?;
    let elems = Cyclotomic::new(level)
        .units()
        .into_iter()
        .filter(|&k| vals.iter().all(|v| v.galois_unchecked(k as usize) == *v))
        .collect();
    Ok(UnitSubgroup { modulus: level, elems })
}
