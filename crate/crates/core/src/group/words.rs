//! Parsing and rendering of words in the generators.
//!
//! Accepted syntax: generator names (a letter optionally followed by digits),
//! juxtaposition or `*` for products, `^k` with signed integer `k` (braces
//! allowed: `x^{10}`), parentheses, and `1` / `id` / `identity`.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

struct WordParser<'a> {
    g: &'a FiniteGroup,
    s: &'a [u8],
    pos: usize,
}

impl<'a> WordParser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::invalid(format!(
            "cannot parse group word {:?} at offset {}: {msg}",
            String::from_utf8_lossy(self.s),
            self.pos
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn product(&mut self) -> Result<usize> {
        let mut acc = 0;
        loop {
            match self.peek() {
                None | Some(b')') => return Ok(acc),
                Some(b'*') | Some(b'.') => {
                    self.pos += 1;
                }
                _ => {
                    let f = self.factor()?;
                    acc = self.g.mul(acc, f);
                }
            }
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let braced = self.s.get(self.pos) == Some(&b'{');
        if braced {
            self.pos += 1;
            self.skip_ws();
        }
        let start = self.pos;
        if matches!(self.s.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        let k = text.parse::<i64>().map_err(|_| self.err("expected an integer exponent"))?;
        if braced {
            if self.peek() != Some(b'}') {
                return Err(self.err("expected '}'"));
            }
            self.pos += 1;
        }
        Ok(k)
    }

    fn atom(&mut self) -> Result<usize> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.product()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(0)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let rest = &self.s[self.pos..];
                for kw in [&b"identity"[..], b"id"] {
                    if rest.starts_with(kw) && !rest.get(kw.len()).is_some_and(|c| c.is_ascii_alphanumeric()) {
                        self.pos += kw.len();
                        return Ok(0);
                    }
                }
                let start = self.pos;
                self.pos += 1;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_digit() || self.s[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                match self.g.generator_names().iter().position(|n| n == name) {
                    Some(i) => Ok(self.g.generators()[i]),
                    None => {
                        self.pos = start;
                        Err(self.err(&format!("unknown generator {name:?}")))
                    }
                }
            }
            _ => Err(self.err("unexpected character")),
        }
    }

    fn factor(&mut self) -> Result<usize> {
        let mut v = self.atom()?;
        while self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.integer()?;
            v = self.g.pow(v, k);
        }
        Ok(v)
    }
}

impl FiniteGroup {
    /// Evaluates a word such as `x^14 y^3`, `x*y^2` or `(xy)^-1`.
    pub fn parse_element(&self, word: &str) -> Result<usize> {
        let mut p = WordParser { g: self, s: word.trim().as_bytes(), pos: 0 };
        if p.s.is_empty() {
            return Err(p.err("empty word"));
        }
        let v = p.product()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(v)
    }

    /// Evaluates a word given as a sequence of generator positions.
    pub fn eval_word(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |acc, &g| self.mul(acc, self.generators()[g]))
    }

    /// Renders a word of generator positions with run-length exponents.
    pub fn render_word(&self, word: &[usize]) -> String {
        if word.is_empty() {
            return "1".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < word.len() {
            let mut j = i;
            while j < word.len() && word[j] == word[i] {
                j += 1;
            }
            let name = &self.generator_names()[word[i]];
            parts.push(if j - i == 1 { name.clone() } else { format!("{name}^{}", j - i) });
            i = j;
        }
        parts.join("*")
    }
}

#[cfg(test)]
mod tests {
    use crate::config::Bounds;
    use crate::group::{FiniteGroup, Presentation};

    #[test]
    fn words_in_order_80_group() {
        let p = Presentation::new(
            2,
            vec![vec![1; 20], vec![2; 8], [vec![1; 10], vec![2; 4]].concat(), vec![-2, 1, 2, -1, -1, -1]],
        );
        let g = FiniteGroup::from_presentation(&p, &Bounds::default()).unwrap();
        let x = g.parse_element("x").unwrap();
        let y = g.parse_element("y").unwrap();
        assert_eq!(g.parse_element("x^10").unwrap(), g.parse_element("y^4").unwrap());
        assert_eq!(g.parse_element("x^{10}").unwrap(), g.pow(x, 10));
        assert_eq!(g.parse_element("y^-1 x y").unwrap(), g.pow(x, 3));
        assert_eq!(g.parse_element("(xy)^-1").unwrap(), g.inv(g.mul(x, y)));
        assert_eq!(g.parse_element("x*y^2").unwrap(), g.parse_element("xy^2").unwrap());
        assert_eq!(g.parse_element("identity").unwrap(), 0);
        assert_eq!(g.parse_element("1").unwrap(), 0);
        for a in 0..g.order() {
            assert_eq!(g.parse_element(g.label(a)).unwrap(), a);
            assert_eq!(g.eval_word(&g.tree_word(a)), a);
        }
        assert!(g.parse_element("q").is_err());
        assert!(g.parse_element("x^").is_err());
        assert!(g.parse_element("(x").is_err());
        assert!(g.parse_element("").is_err());
    }
}
