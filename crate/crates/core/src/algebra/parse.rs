//! Text grammar for polynomials: signed terms, each an optional rational
//! coefficient followed by `*`-separated powers, e.g. `2*x1^2*x2 - 1/3*x2^3`.

use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::polynomial::{Polynomial, Ring};
use super::rational::{parse_rational, Rational};
use crate::error::{Error, Result};

struct Cursor<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        let chars = src
            .chars()
            .map(|c| if c == '\u{2212}' { '-' } else { c })
            .filter(|c| !c.is_whitespace())
            .collect();
        Cursor { src, chars, pos: 0 }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(|&c| f(c)) {
            s.push(c);
            self.pos += 1;
        }
        s
    }

    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at position {} in `{}`", self.pos, self.src))
    }
}

impl Polynomial {
    pub fn parse(src: &str, ring: Ring) -> Result<Polynomial> {
        let mut cur = Cursor::new(src);
        if cur.peek().is_none() {
            return Err(cur.error("empty polynomial"));
        }
        let mut out = Polynomial::zero(ring);
        let mut first = true;
        while cur.peek().is_some() {
            let mut sign = Rational::one();
            let mut saw_sign = false;
            loop {
                if cur.eat('+') {
                    saw_sign = true;
                } else if cur.eat('-') {
                    sign = -sign;
                    saw_sign = true;
                } else {
                    break;
                }
            }
            if !first && !saw_sign {
                return Err(cur.error("expected `+` or `-`"));
            }
            first = false;
            let (m, c) = parse_term(&mut cur, ring)?;
            out.add_term(m, c * sign);
        }
        Ok(out)
    }
}

fn parse_term(cur: &mut Cursor, ring: Ring) -> Result<(Monomial, Rational)> {
    let mut coeff = Rational::one();
    let mut exps = vec![0u32; ring.nvars()];
    loop {
        match cur.peek() {
            Some(c) if c.is_ascii_digit() => {
                let mut lit = cur.take_while(|c| c.is_ascii_digit());
                if cur.eat('/') {
                    let den = cur.take_while(|c| c.is_ascii_digit());
                    if den.is_empty() {
                        return Err(cur.error("expected denominator"));
                    }
                    lit = format!("{lit}/{den}");
                }
                let r = parse_rational(&lit)?;
                if r.is_zero() {
                    coeff = Rational::zero();
                } else {
                    coeff *= r;
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = cur.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
                let idx = ring
                    .var_index(&name)
                    .ok_or_else(|| cur.error(&format!("unknown variable `{name}` for {ring}")))?;
                let mut e = 1u32;
                if cur.eat('^') {
                    let digits = cur.take_while(|c| c.is_ascii_digit());
                    e = digits.parse().map_err(|_| cur.error("expected exponent"))?;
                }
                exps[idx] += e;
            }
            _ => return Err(cur.error("expected coefficient or variable")),
        }
        if !cur.eat('*') {
            break;
        }
    }
    match cur.peek() {
        None | Some('+') | Some('-') => Ok((Monomial::new(exps), coeff)),
        Some(_) => {
            cur.bump();
            Err(cur.error("unexpected character"))
        }
    }
}
