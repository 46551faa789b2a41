use std::fmt;

use crate::algebra::{Polynomial, Rational, Ring};
use crate::error::{Error, Result};

/// Polynomial vector field `Σ f_i ∂/∂x_i` on `R^n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyVectorField {
    ring: Ring,
    components: Vec<Polynomial>,
}

impl PolyVectorField {
    /// Panics unless every component lives in `Ring::x(components.len())`.
    pub fn new(components: Vec<Polynomial>) -> Self {
        Self::from_components(components).expect("components must live in x1..xn")
    }

    pub fn from_components(components: Vec<Polynomial>) -> Result<Self> {
        let ring = Ring::x(components.len());
        for c in &components {
            if c.ring() != ring {
                return Err(Error::IncompatibleRings(c.ring().to_string(), ring.to_string()));
            }
        }
        Ok(PolyVectorField { ring, components })
    }

    pub fn zero(n: usize) -> Self {
        PolyVectorField { ring: Ring::x(n), components: vec![Polynomial::zero(Ring::x(n)); n] }
    }

    /// The constant field `∂/∂x_i`.
    pub fn coordinate(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.components[i] = Polynomial::one(v.ring);
        v
    }

    /// `Σ x_i ∂/∂x_i`.
    pub fn euler(n: usize) -> Self {
        let ring = Ring::x(n);
        PolyVectorField { ring, components: (0..n).map(|i| Polynomial::var(ring, i)).collect() }
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.components[i]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    /// Largest component degree, `None` for the zero field.
    pub fn degree(&self) -> Option<u32> {
        self.components.iter().filter_map(Polynomial::degree).max()
    }

    fn check(&self, other: &PolyVectorField) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), got: other.n() });
        }
        Ok(())
    }

    /// Directional derivative `X(f) = Σ f_i ∂f/∂x_i`.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.ring() != self.ring {
            return Err(Error::IncompatibleRings(f.ring().to_string(), self.ring.to_string()));
        }
        let mut out = Polynomial::zero(self.ring);
        for (i, c) in self.components.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &(c * &f.partial_derivative(i)?);
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &PolyVectorField) -> Result<PolyVectorField> {
        self.check(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &PolyVectorField) -> Result<PolyVectorField> {
        self.check(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &PolyVectorField, f: impl Fn(&Polynomial, &Polynomial) -> Polynomial) -> PolyVectorField {
        PolyVectorField {
            ring: self.ring,
            components: self.components.iter().zip(&other.components).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> PolyVectorField {
        PolyVectorField { ring: self.ring, components: self.components.iter().map(|p| p.scale(c)).collect() }
    }

    /// `f · X`.
    pub fn times(&self, f: &Polynomial) -> Result<PolyVectorField> {
        if f.ring() != self.ring {
            return Err(Error::IncompatibleRings(f.ring().to_string(), self.ring.to_string()));
        }
        Ok(PolyVectorField { ring: self.ring, components: self.components.iter().map(|p| f * p).collect() })
    }

    /// The usual commutator `XY − YX`, i.e. `[X,Y]_i = X(Y_i) − Y(X_i)`.
    pub fn commutator(&self, other: &PolyVectorField) -> Result<PolyVectorField> {
        self.check(other)?;
        let mut components = Vec::with_capacity(self.n());
        for i in 0..self.n() {
            components.push(&self.apply(&other.components[i])? - &other.apply(&self.components[i])?);
        }
        Ok(PolyVectorField { ring: self.ring, components })
    }

    /// Bracket in the orbit-space convention `[X,X'](f) = X'(X(f)) − X(X'(f))`,
    /// the negative of [`commutator`](Self::commutator).
    pub fn bracket(&self, other: &PolyVectorField) -> Result<PolyVectorField> {
        other.commutator(self)
    }
}

impl fmt::Display for PolyVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *c == Polynomial::one(c.ring()) {
                write!(f, "d/dx{}", i + 1)?;
            } else if c.len() > 1 {
                write!(f, "({c})*d/dx{}", i + 1)?;
            } else {
                write!(f, "{c}*d/dx{}", i + 1)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PolyVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vf(c: &[&str]) -> PolyVectorField {
        let r = Ring::x(c.len());
        PolyVectorField::new(c.iter().map(|s| Polynomial::parse(s, r).unwrap()).collect())
    }

    #[test]
    fn commutator_of_scalings() {
        assert_eq!(vf(&["x1", "0"]).commutator(&vf(&["x2", "0"])).unwrap(), vf(&["-x2", "0"]));
        assert_eq!(vf(&["x1", "0"]).bracket(&vf(&["x2", "0"])).unwrap(), vf(&["x2", "0"]));
        assert!(vf(&["x1", "0"]).commutator(&vf(&["0", "x2"])).unwrap().is_zero());
    }

    #[test]
    fn display() {
        assert_eq!(vf(&["x1", "x1 + x2"]).to_string(), "x1*d/dx1 + (x1 + x2)*d/dx2");
        assert_eq!(PolyVectorField::zero(2).to_string(), "0");
    }
}
