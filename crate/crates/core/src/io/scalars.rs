//! Evaluation domains for the expression language and the JSON encodings of
//! scalars: rationals as `"p/q"`, cyclotomic values as
//! `{"level": e, "coeffs": [...]}` and number-field values as coefficient
//! lists in the field generator `t` (constant term first).

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use super::expr::{evaluate, Domain};
use crate::error::{Error, Result};
use crate::numfield::{fmt_rational, parse_rational, CycValue, Cyclotomic, Field, NfElem, NumField, QPoly, Rational};

pub(crate) fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => n
            .as_i64()
            .map(|k| Rational::from_integer(k.into()))
            .ok_or_else(|| Error::invalid(format!("expected an integer or \"p/q\", got {n}"))),
        other => Err(Error::invalid(format!("expected a rational, got {other}"))),
    }
}

pub(crate) fn rational_to_json(q: &Rational) -> Value {
    Value::String(fmt_rational(q))
}

pub(crate) fn rationals_from_json(v: &Value) -> Result<Vec<Rational>> {
    v.as_array().ok_or_else(|| Error::invalid(format!("expected a list of rationals, got {v}")))?.iter().map(rational_from_json).collect()
}

/// Polynomials in `t` over `Q`, used for field descriptors.
pub(crate) struct PolyDomain;

impl Domain for PolyDomain {
    type V = QPoly;
    fn number(&self, n: &BigInt) -> QPoly {
        QPoly::constant(Rational::from_integer(n.clone()))
    }
    fn name(&self, name: &str) -> Option<QPoly> {
        (name == "t").then(QPoly::t)
    }
    fn add(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a + b
    }
    fn sub(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a - b
    }
    fn mul(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a * b
    }
    fn neg(&self, a: &QPoly) -> QPoly {
        -a
    }
    fn inverse(&self, a: &QPoly) -> Result<QPoly> {
        match a.degree() {
            Some(0) => Ok(QPoly::constant(a.coeff(0).recip())),
            _ => Err(Error::invalid("only nonzero constants can be inverted in a polynomial")),
        }
    }
}

/// A polynomial given as a coefficient list or as an expression in `t`.
pub(crate) fn poly_from_json(v: &Value) -> Result<QPoly> {
    match v {
        Value::String(s) => evaluate(&PolyDomain, s),
        _ => Ok(QPoly::new(rationals_from_json(v)?)),
    }
}

/// `Q(ζ_e)` with roots of unity written `w<n>` (also `z<n>`, `zeta<n>`,
/// `E<n>`) for `n | e`, `i` when `4 | e`, plus named constants.
pub(crate) struct CycDomain<'a> {
    pub field: Cyclotomic,
    pub symbols: &'a HashMap<String, CycValue>,
}

impl CycDomain<'_> {
    fn root(&self, name: &str) -> Option<CycValue> {
        let e = self.field.level();
        if name == "i" {
            return (e % 4 == 0).then(|| self.field.root_power((e / 4) as i64));
        }
        let digits = ["zeta", "w", "z", "E"].iter().find_map(|p| name.strip_prefix(p))?;
        let n: u32 = digits.parse().ok()?;
        (n > 0 && e % n == 0).then(|| self.field.root_power((e / n) as i64))
    }
}

impl Domain for CycDomain<'_> {
    type V = CycValue;
    fn number(&self, n: &BigInt) -> CycValue {
        self.field.rational(Rational::from_integer(n.clone()))
    }
    fn name(&self, name: &str) -> Option<CycValue> {
        self.symbols.get(name).cloned().or_else(|| self.root(name))
    }
    fn is_function(&self, name: &str) -> bool {
        name == "conj"
    }
    fn call(&self, func: &str, arg: CycValue) -> Option<Result<CycValue>> {
        (func == "conj").then(|| Ok(arg.conj()))
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
    fn inverse(&self, a: &CycValue) -> Result<CycValue> {
        a.inv()
    }
}

/// Reads a cyclotomic value as an object, a number or an expression, and
/// brings it to level `field.level()`.
pub(crate) fn cyc_from_json(v: &Value, field: &Cyclotomic, symbols: &HashMap<String, CycValue>) -> Result<CycValue> {
    match v {
        Value::Object(o) => {
            let level = o
                .get("level")
                .and_then(Value::as_u64)
                .filter(|&l| l > 0 && l <= u32::MAX as u64)
                .ok_or_else(|| Error::invalid(format!("cyclotomic value needs a positive \"level\": {v}")))?;
            let coeffs = rationals_from_json(o.get("coeffs").unwrap_or(&Value::Null))?;
            let own = Cyclotomic::new(level as u32);
            if coeffs.len() > own.phi() {
                return Err(Error::invalid(format!("cyclotomic value has more than phi({level}) coefficients")));
            }
            own.from_coeffs(&coeffs).to_level(field.level())
        }
        Value::String(s) => evaluate(&CycDomain { field: field.clone(), symbols }, s),
        _ => Ok(field.rational(rational_from_json(v)?)),
    }
}

pub(crate) fn cyc_to_json(v: &CycValue) -> Value {
    json!({"level": v.level(), "coeffs": v.coeffs().iter().map(rational_to_json).collect::<Vec<_>>()})
}

/// A number field `L = Q(t)` with named constants.
pub(crate) struct NfDomain<'a> {
    pub field: NumField,
    pub symbols: &'a HashMap<String, NfElem>,
}

impl Domain for NfDomain<'_> {
    type V = NfElem;
    fn number(&self, n: &BigInt) -> NfElem {
        self.field.from_rational(&Rational::from_integer(n.clone()))
    }
    fn name(&self, name: &str) -> Option<NfElem> {
        if name == "t" && self.field.degree() > 1 {
            return Some(self.field.generator());
        }
        self.symbols.get(name).cloned()
    }
    fn add(&self, a: &NfElem, b: &NfElem) -> NfElem {
        self.field.add(a, b)
    }
    fn sub(&self, a: &NfElem, b: &NfElem) -> NfElem {
        self.field.sub(a, b)
    }
    fn mul(&self, a: &NfElem, b: &NfElem) -> NfElem {
        self.field.mul(a, b)
    }
    fn neg(&self, a: &NfElem) -> NfElem {
        self.field.neg(a)
    }
    fn inverse(&self, a: &NfElem) -> Result<NfElem> {
        self.field.inv(a).ok_or_else(|| Error::invalid("division by zero"))
    }
}

pub(crate) fn nf_from_json(v: &Value, field: &NumField, symbols: &HashMap<String, NfElem>) -> Result<NfElem> {
    match v {
        Value::String(s) => evaluate(&NfDomain { field: field.clone(), symbols }, s),
        Value::Array(_) => Ok(field.elem(&QPoly::new(rationals_from_json(v)?))),
        _ => Ok(field.from_rational(&rational_from_json(v)?)),
    }
}

pub(crate) fn nf_to_json(field: &NumField, a: &NfElem) -> Value {
    let d = field.degree();
    let mut c: Vec<Rational> = a.coeffs().to_vec();
    c.resize(d.max(1), Rational::zero());
    if d <= 1 {
        return rational_to_json(&c[0]);
    }
    Value::Array(c.iter().map(rational_to_json).collect())
}

/// Reads a `name -> scalar` map in declaration order, so later symbols may
/// refer to earlier ones.
pub(crate) fn nf_symbols(v: Option<&Value>, field: &NumField) -> Result<HashMap<String, NfElem>> {
    let mut out = HashMap::new();
    let Some(v) = v else { return Ok(out) };
    let obj = v.as_object().ok_or_else(|| Error::invalid("\"symbols\" must be an object"))?;
    for (name, val) in obj {
        check_symbol_name(name)?;
        let x = nf_from_json(val, field, &out)?;
        out.insert(name.clone(), x);
    }
    Ok(out)
}

pub(crate) fn cyc_symbols(v: Option<&Value>, field: &Cyclotomic) -> Result<HashMap<String, CycValue>> {
    let mut out = HashMap::new();
    let Some(v) = v else { return Ok(out) };
    let obj = v.as_object().ok_or_else(|| Error::invalid("\"symbols\" must be an object"))?;
    for (name, val) in obj {
        check_symbol_name(name)?;
        let x = cyc_from_json(val, field, &out)?;
        out.insert(name.clone(), x);
    }
    Ok(out)
}

fn check_symbol_name(name: &str) -> Result<()> {
    let mut cs = name.chars();
    let ok = cs.next().is_some_and(|c| c.is_alphabetic() || c == '_') && cs.all(|c| c.is_alphanumeric() || c == '_');
    if ok && name != "t" {
        Ok(())
    } else {
        Err(Error::invalid(format!("invalid symbol name {name:?}")))
    }
}
