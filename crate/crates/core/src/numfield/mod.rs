//! Exact scalar arithmetic: rationals, cyclotomic fields `Q(ζ_e)` and
//! explicitly declared Galois number fields `Q[t]/(p)`.

mod cyclotomic;
mod irreducible;
mod numfield;
mod poly;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use cyclotomic::{char_field_stabilizer, cyclotomic_polynomial, CycValue, Cyclotomic, UnitSubgroup};
pub use irreducible::is_irreducible;
pub use numfield::{NfElem, NumField};
pub use poly::QPoly;

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::invalid(format!("not a rational number: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// `"p/q"`, or `"p"` for integers.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|&k| k.gcd(&n) == 1).count() as u32
}

/// Scalar field used as coefficient domain of group-algebra elements and
/// matrices. Elements carry no context; the field value supplies it.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn from_rational(&self, q: &Rational) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` exactly for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn scale(&self, a: &Self::Elem, q: &Rational) -> Self::Elem;
    /// The value as a rational, if it lies in `Q`.
    fn to_rational(&self, a: &Self::Elem) -> Option<Rational>;
    /// `[F:Q]`.
    fn degree(&self) -> usize;
    fn render(&self, a: &Self::Elem) -> String;

    fn one(&self) -> Self::Elem {
        self.from_rational(&Rational::one())
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    /// `a += b * c`
    fn mul_add_assign(&self, a: &mut Self::Elem, b: &Self::Elem, c: &Self::Elem) {
        let p = self.mul(b, c);
        self.add_assign(a, &p);
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn from_rational(&self, q: &Rational) -> Rational {
        q.clone()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn scale(&self, a: &Rational, q: &Rational) -> Rational {
        a * q
    }
    fn to_rational(&self, a: &Rational) -> Option<Rational> {
        Some(a.clone())
    }
    fn degree(&self) -> usize {
        1
    }
    fn render(&self, a: &Rational) -> String {
        fmt_rational(a)
    }
    fn add_assign(&self, a: &mut Rational, b: &Rational) {
        *a += b;
    }
    fn mul_add_assign(&self, a: &mut Rational, b: &Rational, c: &Rational) {
        *a += b * c;
    }
}
