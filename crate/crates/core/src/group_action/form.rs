use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{Polynomial, Rational, Ring};
use crate::error::{Error, Result};

/// Polynomial differential k-form `Σ_I f_I dx_I` on `R^n`. Index tuples are
/// 0-based and strictly increasing; reordering signs are folded into the
/// coefficients on insertion.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyDiffForm {
    ring: Ring,
    degree: usize,
    terms: BTreeMap<Vec<usize>, Polynomial>,
}

/// Sorts `idx` in place; returns the permutation sign, or `None` if an index
/// repeats.
pub(crate) fn sort_with_sign(idx: &mut [usize]) -> Option<bool> {
    let mut negative = false;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(negative)
    }
}

impl PolyDiffForm {
    pub fn zero(ring: Ring, degree: usize) -> Self {
        PolyDiffForm { ring, degree, terms: BTreeMap::new() }
    }

    /// A function viewed as a 0-form.
    pub fn function(p: Polynomial) -> Self {
        let mut f = Self::zero(p.ring(), 0);
        f.add_term(vec![], p);
        f
    }

    /// `dx_{i1} ∧ … ∧ dx_{ik}` in the given (not necessarily sorted) order.
    pub fn basis(n: usize, indices: &[usize]) -> Self {
        Self::basis_in(Ring::x(n), indices)
    }

    pub fn basis_in(ring: Ring, indices: &[usize]) -> Self {
        let mut f = Self::zero(ring, indices.len());
        f.add_term(indices.to_vec(), Polynomial::one(ring));
        f
    }

    /// Validated constructor from `(indices, coefficient)` pairs.
    pub fn from_terms(n: usize, degree: usize, terms: impl IntoIterator<Item = (Vec<usize>, Polynomial)>) -> Result<Self> {
        let ring = Ring::x(n);
        if degree > n {
            return Err(Error::DimensionMismatch { expected: n, got: degree });
        }
        let mut f = Self::zero(ring, degree);
        for (idx, c) in terms {
            if idx.len() != degree {
                return Err(Error::ArityMismatch { expected: degree, got: idx.len() });
            }
            if let Some(&bad) = idx.iter().find(|&&i| i >= n) {
                return Err(Error::IndexOutOfRange { index: bad, nvars: n });
            }
            if c.ring() != ring {
                return Err(Error::IncompatibleRings(c.ring().to_string(), ring.to_string()));
            }
            f.add_term(idx, c);
        }
        Ok(f)
    }

    /// Adds `coeff · dx_idx`, normalizing the index order. Repeated indices
    /// contribute nothing.
    pub fn add_term(&mut self, mut idx: Vec<usize>, coeff: Polynomial) {
        assert_eq!(idx.len(), self.degree, "index tuple length must equal the form degree");
        assert_eq!(coeff.ring(), self.ring, "coefficient ring must match the form");
        let Some(negative) = sort_with_sign(&mut idx) else {
            return;
        };
        let coeff = if negative { -coeff } else { coeff };
        let entry = self.terms.entry(idx).or_insert_with(|| Polynomial::zero(self.ring));
        *entry = &*entry + &coeff;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn n(&self) -> usize {
        self.ring.nvars()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Polynomial)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, idx: &[usize]) -> Polynomial {
        let mut sorted = idx.to_vec();
        match sort_with_sign(&mut sorted) {
            None => Polynomial::zero(self.ring),
            Some(neg) => {
                let c = self.terms.get(&sorted).cloned().unwrap_or_else(|| Polynomial::zero(self.ring));
                if neg {
                    -c
                } else {
                    c
                }
            }
        }
    }

    /// The underlying function of a 0-form.
    pub fn as_function(&self) -> Option<Polynomial> {
        (self.degree == 0).then(|| self.coefficient(&[]))
    }

    /// Largest coefficient degree, `None` for the zero form.
    pub fn coefficient_degree(&self) -> Option<u32> {
        self.terms.values().filter_map(Polynomial::degree).max()
    }

    fn check(&self, other: &PolyDiffForm) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::IncompatibleRings(self.ring.to_string(), other.ring.to_string()));
        }
        if self.degree != other.degree {
            return Err(Error::DimensionMismatch { expected: self.degree, got: other.degree });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &PolyDiffForm) -> Result<PolyDiffForm> {
        self.check(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &PolyDiffForm) -> Result<PolyDiffForm> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> PolyDiffForm {
        self.map_coefficients(|c| -c)
    }

    pub fn scale(&self, c: &Rational) -> PolyDiffForm {
        self.map_coefficients(|p| p.scale(c))
    }

    /// `f · ω`.
    pub fn times(&self, f: &Polynomial) -> Result<PolyDiffForm> {
        if f.ring() != self.ring {
            return Err(Error::IncompatibleRings(f.ring().to_string(), self.ring.to_string()));
        }
        Ok(self.map_coefficients(|c| f * c))
    }

    pub fn map_coefficients(&self, f: impl Fn(&Polynomial) -> Polynomial) -> PolyDiffForm {
        let mut out = Self::zero(self.ring, self.degree);
        for (k, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                out.terms.insert(k.clone(), v);
            }
        }
        out
    }
}

impl fmt::Display for PolyDiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (idx, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let basis: Vec<String> = idx.iter().map(|&i| format!("d{}", self.ring.var_name(i))).collect();
            if idx.is_empty() {
                write!(f, "{c}")?;
            } else if c.len() > 1 {
                write!(f, "({c})*{}", basis.join("^"))?;
            } else {
                write!(f, "{c}*{}", basis.join("^"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyDiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}-form] {self}", self.degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_ordering_absorbs_sign() {
        let a = PolyDiffForm::basis(2, &[1, 0]);
        assert_eq!(a.coefficient(&[0, 1]), Polynomial::parse("-1", Ring::x(2)).unwrap());
        assert_eq!(a.coefficient(&[1, 0]), Polynomial::one(Ring::x(2)));
        assert!(PolyDiffForm::basis(2, &[1, 1]).is_zero());
        assert_eq!(a.to_string(), "-1*dx1^dx2");
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut a = PolyDiffForm::basis(3, &[0, 2]);
        a.add_term(vec![2, 0], Polynomial::one(Ring::x(3)));
        assert!(a.is_zero());
    }

    #[test]
    fn validated_construction() {
        let r = Ring::x(2);
        assert!(PolyDiffForm::from_terms(2, 1, [(vec![2], Polynomial::one(r))]).is_err());
        assert!(PolyDiffForm::from_terms(2, 3, []).is_err());
        assert!(PolyDiffForm::from_terms(2, 1, [(vec![0, 1], Polynomial::one(r))]).is_err());
    }
}
