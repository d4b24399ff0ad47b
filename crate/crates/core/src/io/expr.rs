//! A small arithmetic expression language used by fixture files, so that
//! values can be transcribed as written, e.g.
//! `(1/20)(identity - x^10)(4 + (-k) x + x^2)` or `(k + k l)(x^11 y^3)`.
//!
//! Grammar (juxtaposition is multiplication, `^` takes a signed integer,
//! optionally braced):
//!
//! ```text
//! expr   := [+|-] term { (+|-) term }
//! term   := factor { [*|/] factor }
//! factor := - factor | atom [ ^ int ]
//! atom   := integer | name | name ( expr ) | ( expr )
//! ```
//!
//! Names that the evaluation domain does not know are split into a product
//! of known names, so `xyz^2` reads as `x y z^2`.

use std::collections::VecDeque;

use num_bigint::BigInt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(BigInt),
    Name(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<VecDeque<Token>> {
    let mut out = VecDeque::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push_back(Token::Num(s.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push_back(Token::Name(chars[start..i].iter().collect()));
        } else if "+-*/^(){}.·".contains(c) {
            let op = match c {
                '{' => '(',
                '}' => ')',
                '.' | '·' => '*',
                c => c,
            };
            out.push_back(Token::Op(op));
            i += 1;
        } else {
            return Err(Error::invalid(format!("unexpected character '{c}' in expression \"{src}\"")));
        }
    }
    Ok(out)
}

/// Values an expression can evaluate to.
pub(crate) trait Domain {
    type V: Clone;

    fn number(&self, n: &BigInt) -> Self::V;
    /// Value of a complete name, if known.
    fn name(&self, name: &str) -> Option<Self::V>;
    /// Applies a named unary function; `None` when `func` is not a function.
    fn call(&self, _func: &str, _arg: Self::V) -> Option<Result<Self::V>> {
        None
    }
    fn is_function(&self, _name: &str) -> bool {
        false
    }
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn sub(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn neg(&self, a: &Self::V) -> Self::V;
    fn inverse(&self, a: &Self::V) -> Result<Self::V>;
}

struct Parser<'a, D: Domain> {
    d: &'a D,
    toks: VecDeque<Token>,
    src: &'a str,
}

impl<D: Domain> Parser<'_, D> {
    fn err(&self, msg: impl AsRef<str>) -> Error {
        Error::invalid(format!("{} in expression \"{}\"", msg.as_ref(), self.src))
    }

    fn peek_op(&self) -> Option<char> {
        match self.toks.front() {
            Some(Token::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek_op() == Some(op) {
            self.toks.pop_front();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<D::V> {
        let mut v = if self.eat('-') {
            let t = self.term()?;
            self.d.neg(&t)
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                let t = self.term()?;
                v = self.d.add(&v, &t);
            } else if self.eat('-') {
                let t = self.term()?;
                v = self.d.sub(&v, &t);
            } else {
                return Ok(v);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.toks.front(), Some(Token::Num(_)) | Some(Token::Name(_)) | Some(Token::Op('(')))
    }

    fn term(&mut self) -> Result<D::V> {
        let mut v = self.factor()?;
        loop {
            if self.eat('*') {
                let f = self.factor()?;
                v = self.d.mul(&v, &f);
            } else if self.eat('/') {
                let f = self.factor()?;
                let inv = self.d.inverse(&f).map_err(|e| self.err(e.to_string()))?;
                v = self.d.mul(&v, &inv);
            } else if self.starts_atom() {
                let f = self.factor()?;
                v = self.d.mul(&v, &f);
            } else {
                return Ok(v);
            }
        }
    }

    fn factor(&mut self) -> Result<D::V> {
        if self.eat('-') {
            let f = self.factor()?;
            return Ok(self.d.neg(&f));
        }
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let k = self.exponent()?;
        self.power(base, k)
    }

    fn exponent(&mut self) -> Result<i64> {
        let braced = self.eat('(');
        let neg = self.eat('-');
        if !neg {
            self.eat('+');
        }
        let k = match self.toks.pop_front() {
            Some(Token::Num(n)) => i64::try_from(n).map_err(|_| self.err("exponent too large"))?,
            _ => return Err(self.err("expected an integer exponent")),
        };
        if braced && !self.eat(')') {
            return Err(self.err("unclosed exponent"));
        }
        Ok(if neg { -k } else { k })
    }

    fn power(&self, base: D::V, k: i64) -> Result<D::V> {
        let mut b = if k < 0 { self.d.inverse(&base).map_err(|e| self.err(e.to_string()))? } else { base.clone() };
        let mut e = k.unsigned_abs();
        let mut acc: Option<D::V> = None;
        if e == 0 {
            return Ok(self.d.number(&BigInt::from(1)));
        }
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    Some(a) => self.d.mul(&a, &b),
                    None => b.clone(),
                });
            }
            e >>= 1;
            if e > 0 {
                b = self.d.mul(&b, &b);
            }
        }
        Ok(acc.expect("positive exponent"))
    }

    fn atom(&mut self) -> Result<D::V> {
        match self.toks.pop_front() {
            Some(Token::Num(n)) => Ok(self.d.number(&n)),
            Some(Token::Op('(')) => {
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("missing ')'"));
                }
                Ok(v)
            }
            Some(Token::Name(name)) => {
                if self.d.is_function(&name) && self.peek_op() == Some('(') {
                    self.toks.pop_front();
                    let arg = self.expr()?;
                    if !self.eat(')') {
                        return Err(self.err("missing ')'"));
                    }
                    return self.d.call(&name, arg).expect("declared function");
                }
                if let Some(v) = self.d.name(&name) {
                    return Ok(v);
                }
                let parts = split_name(self.d, &name).ok_or_else(|| self.err(format!("unknown name '{name}'")))?;
                for p in parts.into_iter().rev() {
                    self.toks.push_front(Token::Name(p));
                }
                self.atom()
            }
            Some(Token::Op(c)) => Err(self.err(format!("unexpected '{c}'"))),
            None => Err(self.err("unexpected end")),
        }
    }
}

/// Splits `name` into a sequence of names known to `d`, preferring long
/// pieces first.
fn split_name<D: Domain>(d: &D, name: &str) -> Option<Vec<String>> {
    if name.is_empty() {
        return Some(Vec::new());
    }
    let idx: Vec<usize> = name.char_indices().map(|(i, _)| i).skip(1).chain([name.len()]).collect();
    for &end in idx.iter().rev() {
        let head = &name[..end];
        if d.name(head).is_none() {
            continue;
        }
        if let Some(mut rest) = split_name(d, &name[end..]) {
            rest.insert(0, head.to_string());
            return Some(rest);
        }
    }
    None
}

/// Evaluates `src` in domain `d`.
pub(crate) fn evaluate<D: Domain>(d: &D, src: &str) -> Result<D::V> {
    let toks = tokenize(src)?;
    let mut p = Parser { d, toks, src };
    if p.toks.is_empty() {
        return Err(p.err("empty expression"));
    }
    let v = p.expr()?;
    if let Some(t) = p.toks.front() {
        return Err(p.err(format!("unexpected trailing {t:?}")));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::{int, parse_rational, Rational};
    use num_traits::{One, Zero};

    /// Rationals with a couple of named constants.
    struct Q;

    impl Domain for Q {
        type V = Rational;
        fn number(&self, n: &BigInt) -> Rational {
            Rational::from_integer(n.clone())
        }
        fn name(&self, name: &str) -> Option<Rational> {
            match name {
                "a" => Some(int(2)),
                "b" => Some(int(3)),
                "ab" => Some(int(100)),
                _ => None,
            }
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
        fn inverse(&self, a: &Rational) -> Result<Rational> {
            if a.is_zero() {
                Err(Error::invalid("division by zero"))
            } else {
                Ok(a.recip())
            }
        }
    }

    fn ev(s: &str) -> Rational {
        evaluate(&Q, s).unwrap()
    }

    #[test]
    fn precedence_and_juxtaposition() {
        assert_eq!(ev("1 + 2 3"), int(7));
        assert_eq!(ev("(1/20)(4 - 2)"), parse_rational("1/10").unwrap());
        assert_eq!(ev("-a^2"), int(-4));
        assert_eq!(ev("a^{-1}"), parse_rational("1/2").unwrap());
        assert_eq!(ev("2a b"), int(12));
        assert_eq!(ev("a^0"), Rational::one());
    }

    #[test]
    fn unknown_names_split_into_known_ones() {
        assert_eq!(ev("ab"), int(100));
        assert_eq!(ev("aab"), int(200));
        assert_eq!(ev("ba^2"), int(12));
        assert!(evaluate(&Q, "abc").is_err());
    }

    #[test]
    fn malformed_input_is_rejected() {
        for bad in ["", "(1 + 2", "1 +", "2 ^ a", "1/0", "3 $"] {
            assert!(evaluate(&Q, bad).is_err(), "{bad}");
        }
    }
}
