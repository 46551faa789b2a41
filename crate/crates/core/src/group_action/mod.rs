//! Finite rational matrix groups acting linearly on `R^n`, and the objects
//! they act on.

mod field;
mod form;

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_traits::{One, Zero};

pub use field::PolyVectorField;
pub use form::PolyDiffForm;
pub(crate) use form::sort_with_sign;

use crate::algebra::{format_rational, rat, Polynomial, Rational, Ring};
use crate::error::{Error, Result};

pub const DEFAULT_CAP: usize = 100_000;

/// Square rational matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![Rational::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Rational::one();
        }
        Matrix { n, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: row.len() });
            }
            entries.extend(row);
        }
        Ok(Matrix { n, entries })
    }

    /// Convenience for integer matrices.
    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.entries.chunks(self.n.max(1)).map(<[Rational]>::to_vec).take(self.n).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.n)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "matrix sizes must agree");
        let n = self.n;
        let mut entries = vec![Rational::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * other.get(k, j);
                }
            }
        }
        Matrix { n, entries }
    }

    /// Gauss-Jordan inverse; `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        let n = self.n;
        let mut a = self.rows();
        let mut inv = Matrix::identity(n).rows();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = Rational::one() / &a[col][col];
            for j in 0..n {
                a[col][j] *= &p;
                inv[col][j] *= &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    let (t, u) = (&a[col][j] * &f, &inv[col][j] * &f);
                    a[r][j] -= t;
                    inv[r][j] -= u;
                }
            }
        }
        Some(Matrix::from_rows(inv).expect("square by construction"))
    }

    /// The linear polynomials `(M x)_i`.
    pub fn linear_forms(&self) -> Vec<Polynomial> {
        let ring = Ring::x(self.n);
        (0..self.n)
            .map(|i| {
                let mut p = Polynomial::zero(ring);
                for j in 0..self.n {
                    p = &p + &Polynomial::var(ring, j).scale(self.get(i, j));
                }
                p
            })
            .collect()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(format_rational).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Finite subgroup of `GL(n, Q)` with its full element list.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteMatrixGroup {
    n: usize,
    generators: Vec<Matrix>,
    elements: Vec<Matrix>,
}

impl FiniteMatrixGroup {
    /// Breadth-first closure from the identity, multiplying by generators in
    /// input order.
    pub fn closure(n: usize, generators: &[Matrix], cap: usize) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.n() != n {
                return Err(Error::DimensionMismatch { expected: n, got: g.n() });
            }
            if g.inverse().is_none() {
                return Err(Error::SingularGenerator(i));
            }
        }
        let id = Matrix::identity(n);
        let mut seen: HashSet<Matrix> = HashSet::from([id.clone()]);
        let mut elements = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(h) = queue.pop_front() {
            for g in generators {
                let p = g.mul(&h);
                if seen.insert(p.clone()) {
                    if elements.len() >= cap {
                        return Err(Error::GroupNotFinite(cap));
                    }
                    elements.push(p.clone());
                    queue.push_back(p);
                }
            }
        }
        Ok(FiniteMatrixGroup { n, generators: generators.to_vec(), elements })
    }

    pub fn trivial(n: usize) -> Self {
        FiniteMatrixGroup { n, generators: vec![], elements: vec![Matrix::identity(n)] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    /// Whether every generator (hence every element) fixes `obj`.
    pub fn fixes<T: Actable>(&self, obj: &T) -> Result<bool> {
        for g in &self.generators {
            if obj.act(g)? != *obj {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn reynolds<T: Actable>(&self, obj: &T) -> Result<T> {
        reynolds(obj, self)
    }
}

/// Linear Lie algebra action by matrices `ξ`, with fields `X_ξ(x) = ξx`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct LieAlgebraAction {
    n: usize,
    xi: Vec<Matrix>,
}

impl LieAlgebraAction {
    pub fn new(n: usize, xi: Vec<Matrix>) -> Result<Self> {
        if let Some(m) = xi.iter().find(|m| m.n() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: m.n() });
        }
        Ok(LieAlgebraAction { n, xi })
    }

    /// The trivial Lie algebra of a finite group.
    pub fn empty(n: usize) -> Self {
        LieAlgebraAction { n, xi: vec![] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.xi
    }

    pub fn is_empty(&self) -> bool {
        self.xi.is_empty()
    }

    pub fn infinitesimal_fields(&self) -> Vec<PolyVectorField> {
        self.xi.iter().map(|m| PolyVectorField::new(m.linear_forms())).collect()
    }
}

pub fn infinitesimal_fields(action: &LieAlgebraAction) -> Vec<PolyVectorField> {
    action.infinitesimal_fields()
}

fn check_dim(g: &Matrix, n: usize) -> Result<Matrix> {
    if g.n() != n {
        return Err(Error::DimensionMismatch { expected: n, got: g.n() });
    }
    g.inverse().ok_or(Error::SingularGenerator(0))
}

/// `(g·p)(x) = p(g⁻¹x)`.
pub fn act_poly(g: &Matrix, p: &Polynomial) -> Result<Polynomial> {
    let ring = p.ring();
    if ring != Ring::x(ring.nvars()) {
        return Err(Error::IncompatibleRings(ring.to_string(), Ring::x(g.n()).to_string()));
    }
    let inv = check_dim(g, ring.nvars())?;
    p.substitute_in(ring, &inv.linear_forms())
}

/// `(g·X)(x) = g X(g⁻¹x)`.
pub fn act_vf(g: &Matrix, x: &PolyVectorField) -> Result<PolyVectorField> {
    let n = x.n();
    let inv = check_dim(g, n)?;
    let sub = inv.linear_forms();
    let moved: Vec<Polynomial> =
        x.components().iter().map(|c| c.substitute_in(x.ring(), &sub)).collect::<Result<_>>()?;
    let components = (0..n)
        .map(|i| {
            (0..n).fold(Polynomial::zero(x.ring()), |acc, j| &acc + &moved[j].scale(g.get(i, j)))
        })
        .collect();
    Ok(PolyVectorField::new(components))
}

/// Pullback by `g⁻¹`, so that degree 0 agrees with [`act_poly`].
pub fn act_form(g: &Matrix, w: &PolyDiffForm) -> Result<PolyDiffForm> {
    let inv = check_dim(g, w.n())?;
    crate::exterior::pullback(&inv.linear_forms(), w)
}

/// Objects carrying the linear action, closed under addition and scaling.
pub trait Actable: Clone + PartialEq + Sized {
    fn act(&self, g: &Matrix) -> Result<Self>;
    fn add(&self, other: &Self) -> Result<Self>;
    fn scale(&self, c: &Rational) -> Self;
    fn dimension(&self) -> usize;
}

impl Actable for Polynomial {
    fn act(&self, g: &Matrix) -> Result<Self> {
        act_poly(g, self)
    }
    fn add(&self, other: &Self) -> Result<Self> {
        self.checked_add(other)
    }
    fn scale(&self, c: &Rational) -> Self {
        Polynomial::scale(self, c)
    }
    fn dimension(&self) -> usize {
        self.ring().nvars()
    }
}

impl Actable for PolyVectorField {
    fn act(&self, g: &Matrix) -> Result<Self> {
        act_vf(g, self)
    }
    fn add(&self, other: &Self) -> Result<Self> {
        self.checked_add(other)
    }
    fn scale(&self, c: &Rational) -> Self {
        PolyVectorField::scale(self, c)
    }
    fn dimension(&self) -> usize {
        self.n()
    }
}

impl Actable for PolyDiffForm {
    fn act(&self, g: &Matrix) -> Result<Self> {
        act_form(g, self)
    }
    fn add(&self, other: &Self) -> Result<Self> {
        self.checked_add(other)
    }
    fn scale(&self, c: &Rational) -> Self {
        PolyDiffForm::scale(self, c)
    }
    fn dimension(&self) -> usize {
        self.n()
    }
}

/// Group average `(1/|G|) Σ g·obj`, summed in element order.
pub fn reynolds<T: Actable>(obj: &T, group: &FiniteMatrixGroup) -> Result<T> {
    if obj.dimension() != group.n() {
        return Err(Error::DimensionMismatch { expected: group.n(), got: obj.dimension() });
    }
    let mut elements = group.elements().iter();
    let first = elements.next().expect("groups contain the identity");
    let mut acc = obj.act(first)?;
    for g in elements {
        acc = acc.add(&obj.act(g)?)?;
    }
    Ok(acc.scale(&(Rational::one() / rat(group.order() as i64))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FiniteMatrixGroup {
        FiniteMatrixGroup::closure(2, &[Matrix::from_ints(&[&[-1, 0], &[0, -1]]).unwrap()], DEFAULT_CAP).unwrap()
    }

    fn swap() -> Matrix {
        Matrix::from_ints(&[&[0, 1], &[1, 0]]).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, Ring::x(2)).unwrap()
    }

    fn vf(c: [&str; 2]) -> PolyVectorField {
        PolyVectorField::new(c.iter().map(|s| p(s)).collect())
    }

    #[test]
    fn closures() {
        assert_eq!(z2().order(), 2);
        assert_eq!(FiniteMatrixGroup::closure(3, &[Matrix::identity(3)], 10).unwrap().order(), 1);
        assert_eq!(FiniteMatrixGroup::closure(2, &[swap()], 10).unwrap().order(), 2);
        let rot4 = Matrix::from_ints(&[&[0, -1], &[1, 0]]).unwrap();
        assert_eq!(FiniteMatrixGroup::closure(2, &[rot4, swap()], 100).unwrap().order(), 8);
        let shear = Matrix::from_ints(&[&[1, 1], &[0, 1]]).unwrap();
        assert!(matches!(FiniteMatrixGroup::closure(2, &[shear], 50), Err(Error::GroupNotFinite(50))));
        let singular = Matrix::from_ints(&[&[1, 0], &[0, 0]]).unwrap();
        assert!(matches!(FiniteMatrixGroup::closure(2, &[singular], 50), Err(Error::SingularGenerator(0))));
    }

    #[test]
    fn inverse_of_rational_matrix() {
        let m = Matrix::from_rows(vec![vec![rat(2), rat(1)], vec![rat(1), rat(1)]]).unwrap();
        assert!(m.mul(&m.inverse().unwrap()).is_identity());
    }

    #[test]
    fn polynomial_action() {
        let group = z2();
        let minus = &group.elements()[1];
        assert_eq!(act_poly(minus, &p("x1^2")).unwrap(), p("x1^2"));
        assert_eq!(act_poly(minus, &p("x1")).unwrap(), p("-x1"));
        assert_eq!(act_poly(&swap(), &p("x1^2*x2")).unwrap(), p("x2^2*x1"));
    }

    #[test]
    fn field_action() {
        let group = z2();
        let minus = &group.elements()[1];
        assert_eq!(act_vf(minus, &vf(["x1", "0"])).unwrap(), vf(["x1", "0"]));
        assert_eq!(act_vf(minus, &vf(["1", "0"])).unwrap(), vf(["-1", "0"]));
        assert_eq!(act_vf(&swap(), &vf(["0", "x1"])).unwrap(), vf(["x2", "0"]));
    }

    #[test]
    fn averaging() {
        assert_eq!(reynolds(&p("x1^2"), &z2()).unwrap(), p("x1^2"));
        assert!(reynolds(&p("x1"), &z2()).unwrap().is_zero());
        let s2 = FiniteMatrixGroup::closure(2, &[swap()], 10).unwrap();
        assert_eq!(reynolds(&vf(["x1", "0"]), &s2).unwrap(), vf(["1/2*x1", "1/2*x2"]));
        assert!(matches!(reynolds(&Polynomial::zero(Ring::x(3)), &s2), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn infinitesimal_generators() {
        let rot = LieAlgebraAction::new(2, vec![Matrix::from_ints(&[&[0, -1], &[1, 0]]).unwrap()]).unwrap();
        assert_eq!(rot.infinitesimal_fields(), vec![vf(["-x2", "x1"])]);
        let zero = LieAlgebraAction::new(2, vec![Matrix::from_ints(&[&[0, 0], &[0, 0]]).unwrap()]).unwrap();
        assert!(zero.infinitesimal_fields()[0].is_zero());
        let id = LieAlgebraAction::new(2, vec![Matrix::identity(2)]).unwrap();
        assert_eq!(id.infinitesimal_fields(), vec![PolyVectorField::euler(2)]);
    }
}
