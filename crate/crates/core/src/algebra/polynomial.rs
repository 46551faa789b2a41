use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::rational::{format_rational, rat, Rational};
use crate::error::{Error, Result};

/// Variable alphabet of a polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Alphabet {
    /// Source coordinates `x1..xn`.
    X,
    /// Orbit-space coordinates `y1..yl`.
    Y,
    /// `x1..xk` followed by `y1..`; used for elimination.
    #[doc(hidden)]
    Combined { x: usize },
    /// Position tags `e1..ek` followed by `y1..`; used for module encodings.
    #[doc(hidden)]
    Tagged { tags: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    alphabet: Alphabet,
    nvars: usize,
}

impl Ring {
    pub fn x(n: usize) -> Ring {
        Ring { alphabet: Alphabet::X, nvars: n }
    }

    pub fn y(l: usize) -> Ring {
        Ring { alphabet: Alphabet::Y, nvars: l }
    }

    pub fn combined(n: usize, l: usize) -> Ring {
        Ring { alphabet: Alphabet::Combined { x: n }, nvars: n + l }
    }

    pub(crate) fn tagged(tags: usize, base: usize) -> Ring {
        Ring { alphabet: Alphabet::Tagged { tags }, nvars: tags + base }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn var_name(&self, i: usize) -> String {
        match self.alphabet {
            Alphabet::X => format!("x{}", i + 1),
            Alphabet::Y => format!("y{}", i + 1),
            Alphabet::Combined { x } if i < x => format!("x{}", i + 1),
            Alphabet::Combined { x } => format!("y{}", i - x + 1),
            Alphabet::Tagged { tags } if i < tags => format!("e{}", i + 1),
            Alphabet::Tagged { tags } => format!("y{}", i - tags + 1),
        }
    }

    /// Resolves a variable name such as `x2` to its index.
    pub fn var_index(&self, name: &str) -> Option<usize> {
        let (prefix, digits) = name.split_at(name.find(|c: char| c.is_ascii_digit())?);
        let k: usize = digits.parse().ok()?;
        if k == 0 {
            return None;
        }
        let idx = match (self.alphabet, prefix) {
            (Alphabet::X, "x") | (Alphabet::Y, "y") => k - 1,
            (Alphabet::Combined { x }, "x") if k <= x => k - 1,
            (Alphabet::Combined { x }, "y") => x + k - 1,
            (Alphabet::Tagged { tags }, "e") if k <= tags => k - 1,
            (Alphabet::Tagged { tags }, "y") => tags + k - 1,
            _ => return None,
        };
        (idx < self.nvars).then_some(idx)
    }

    fn check(&self, other: &Ring) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::IncompatibleRings(self.to_string(), other.to_string()))
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| self.var_name(i)).collect();
        write!(f, "Q[{}]", names.join(","))
    }
}

/// Exact multivariate polynomial with rational coefficients. Terms are kept
/// in a map keyed by monomial (grevlex order), zero coefficients never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ring: Ring) -> Self {
        Polynomial { ring, terms: BTreeMap::new() }
    }

    pub fn constant(ring: Ring, c: Rational) -> Self {
        Self::term(ring, Monomial::one(ring.nvars), c)
    }

    pub fn one(ring: Ring) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn var(ring: Ring, i: usize) -> Self {
        Self::term(ring, Monomial::var(ring.nvars, i), Rational::one())
    }

    pub fn term(ring: Ring, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.nvars(), ring.nvars, "monomial length must match the ring");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { ring, terms }
    }

    pub fn from_terms(ring: Ring, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Polynomial::zero(ring);
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars, "monomial length must match the ring");
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.ring.nvars))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Leading term under grevlex.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.leading_term().map(|(_, c)| c)
    }

    /// Indices of variables that occur in some term.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ring.nvars)
            .filter(|&i| self.terms.keys().any(|m| m.exponents()[i] > 0))
            .collect()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ring);
        }
        Polynomial {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ring);
        }
        Polynomial {
            ring: self.ring,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.check(&other.ring)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.check(&other.ring)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.check(&other.ring)?;
        let mut out = Polynomial::zero(self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one(self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn partial_derivative(&self, i: usize) -> Result<Polynomial> {
        if i >= self.ring.nvars {
            return Err(Error::IndexOutOfRange { index: i, nvars: self.ring.nvars });
        }
        let mut out = Polynomial::zero(self.ring);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[i] -= 1;
            out.add_term(Monomial::new(exps), c * rat(e as i64));
        }
        Ok(out)
    }

    /// Composition `p(values_1, ..., values_l)`.
    pub fn substitute(&self, values: &[Polynomial]) -> Result<Polynomial> {
        match values.first() {
            Some(v) => self.substitute_in(v.ring, values),
            None if self.ring.nvars == 0 => Err(Error::Parse(
                "cannot infer the target ring of a substitution without values".into(),
            )),
            None => Err(Error::ArityMismatch { expected: self.ring.nvars, got: 0 }),
        }
    }

    /// Composition with an explicit target ring, which also covers rings
    /// with no variables.
    pub fn substitute_in(&self, target: Ring, values: &[Polynomial]) -> Result<Polynomial> {
        if values.len() != self.ring.nvars {
            return Err(Error::ArityMismatch { expected: self.ring.nvars, got: values.len() });
        }
        for v in values {
            target.check(&v.ring)?;
        }
        let mut powers: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one(target)]; values.len()];
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut prod = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &values[i];
                    powers[i].push(next);
                }
                prod = &prod * &powers[i][e as usize];
            }
            for (k, v) in prod.terms {
                out.add_term(k, v);
            }
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.ring.nvars {
            return Err(Error::ArityMismatch { expected: self.ring.nvars, got: point.len() });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Reinterprets the polynomial in `ring`, sending variable `i` to
    /// variable `map(i)`. Returns `None` if `map` rejects a used variable.
    pub fn remap(&self, ring: Ring, map: impl Fn(usize) -> Option<usize>) -> Option<Polynomial> {
        let mut out = Polynomial::zero(ring);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; ring.nvars];
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    let j = map(i).filter(|&j| j < ring.nvars)?;
                    exps[j] += e;
                }
            }
            out.add_term(Monomial::new(exps), c.clone());
        }
        Some(out)
    }

    /// Makes the coefficients coprime integers with a positive leading
    /// coefficient.
    pub fn primitive(&self) -> Polynomial {
        let Some(lc) = self.leading_coefficient() else {
            return self.clone();
        };
        let mut c = super::rational::content(self.terms.values().cloned());
        if lc.is_negative() {
            c = -c;
        }
        self.scale(&(Rational::one() / c))
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            Some(lc) => self.scale(&(Rational::one() / lc)),
            None => self.clone(),
        }
    }
}

pub fn poly_mul(p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    p.checked_mul(q)
}

pub fn substitute(p: &Polynomial, values: &[Polynomial]) -> Result<Polynomial> {
    p.substitute(values)
}

pub fn partial_derivative(p: &Polynomial, i: usize) -> Result<Polynomial> {
    p.partial_derivative(i)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(format_rational(&abs));
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.var_name(i)),
                    _ => factors.push(format!("{}^{}", self.ring.var_name(i), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("incompatible rings")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("incompatible rings")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("incompatible rings")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::ratio;

    fn x(i: usize) -> Polynomial {
        Polynomial::var(Ring::x(2), i)
    }

    fn y(i: usize) -> Polynomial {
        Polynomial::var(Ring::y(3), i)
    }

    #[test]
    fn monomial_products() {
        let p = &x(0).pow(2) * &x(1).pow(2);
        assert_eq!(p.to_string(), "x1^2*x2^2");
        let s3 = &x(0) * &x(1);
        assert_eq!(&s3 * &s3, &x(0).pow(2) * &x(1).pow(2));
        assert!((&p * &Polynomial::zero(Ring::x(2))).is_zero());
    }

    #[test]
    fn mixing_rings_is_an_error() {
        let err = poly_mul(&x(0), &y(0)).unwrap_err();
        assert!(err.to_string().starts_with("incompatible rings"));
    }

    #[test]
    fn substitute_hilbert_map() {
        let sigma = vec![x(0).pow(2), x(1).pow(2), &x(0) * &x(1)];
        let rel = &y(2).pow(2) - &(&y(0) * &y(1));
        assert!(rel.substitute(&sigma).unwrap().is_zero());
        assert_eq!(y(0).substitute(&sigma).unwrap(), x(0).pow(2));
        let five = Polynomial::constant(Ring::y(3), rat(5));
        assert_eq!(five.substitute(&sigma).unwrap(), Polynomial::constant(Ring::x(2), rat(5)));
        assert!(matches!(
            y(0).substitute(&sigma[..2]),
            Err(Error::ArityMismatch { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn partials() {
        assert_eq!(x(0).pow(2).partial_derivative(0).unwrap(), x(0).scale(&rat(2)));
        assert_eq!((&x(0) * &x(1)).partial_derivative(1).unwrap(), x(0));
        assert!(Polynomial::constant(Ring::x(2), rat(3)).partial_derivative(0).unwrap().is_zero());
        assert!(x(0).partial_derivative(2).is_err());
    }

    #[test]
    fn display_is_descending_grevlex() {
        let p = &(&x(0).pow(2) * &x(1)).scale(&rat(2)) - &x(1).pow(3).scale(&ratio(1, 3));
        assert_eq!(p.to_string(), "2*x1^2*x2 - 1/3*x2^3");
        assert_eq!((-&x(0)).to_string(), "-x1");
        assert_eq!(Polynomial::zero(Ring::x(2)).to_string(), "0");
    }

    #[test]
    fn primitive_content() {
        let p = &x(0).scale(&ratio(-1, 2)) + &x(1).scale(&ratio(1, 4));
        assert_eq!(p.primitive().to_string(), "2*x1 - x2");
    }
}
