//! Invariant rings, relation ideals, subduction and equivariant vector
//! fields of finite matrix groups.

use std::cmp::Ordering;

use crate::algebra::rational::content;
use crate::algebra::{rat, Monomial, MonomialOrder, Polynomial, Ring};
use crate::error::{Error, Result};
use crate::groebner::{buchberger_in, elimination_basis, restrict_to_y, CancelToken, GroebnerBasis};
use crate::group_action::{reynolds, FiniteMatrixGroup, PolyVectorField};
use crate::linalg::{flatten, monomials_of_degree, Echelon};

/// The orbit map `σ = (σ_1, …, σ_l)` with its tagged elimination basis.
#[derive(Clone, Debug)]
pub struct HilbertMap {
    group: FiniteMatrixGroup,
    sigma: Vec<Polynomial>,
    tag_basis: GroebnerBasis,
}

impl PartialEq for HilbertMap {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.sigma == other.sigma
    }
}

fn tag_basis(n: usize, sigma: &[Polynomial]) -> Result<GroebnerBasis> {
    let ring = Ring::combined(n, sigma.len());
    let gens: Vec<Polynomial> = sigma
        .iter()
        .enumerate()
        .map(|(j, s)| {
            let lifted = s.remap(ring, Some).expect("x variables come first");
            &Polynomial::var(ring, n + j) - &lifted
        })
        .collect();
    if gens.is_empty() {
        return Ok(GroebnerBasis::zero_ideal(ring, MonomialOrder::BlockElimination { first_block: n }));
    }
    elimination_basis(&gens, ring)
}

impl HilbertMap {
    /// Wraps user-supplied invariants. Each must be invariant; generation
    /// and minimality are not checked here.
    pub fn new(group: FiniteMatrixGroup, sigma: Vec<Polynomial>) -> Result<Self> {
        let ring = Ring::x(group.n());
        for s in &sigma {
            if s.ring() != ring {
                return Err(Error::IncompatibleRings(s.ring().to_string(), ring.to_string()));
            }
            if !group.fixes(s)? {
                return Err(Error::NotInvariant(s.to_string()));
            }
        }
        let tag_basis = tag_basis(group.n(), &sigma)?;
        Ok(HilbertMap { group, sigma, tag_basis })
    }

    pub fn group(&self) -> &FiniteMatrixGroup {
        &self.group
    }

    pub fn n(&self) -> usize {
        self.group.n()
    }

    pub fn sigma(&self) -> &[Polynomial] {
        &self.sigma
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    pub fn x_ring(&self) -> Ring {
        Ring::x(self.n())
    }

    pub fn y_ring(&self) -> Ring {
        Ring::y(self.sigma.len())
    }

    pub fn tag_basis(&self) -> &GroebnerBasis {
        &self.tag_basis
    }

    /// `q(σ(x))`.
    pub fn compose(&self, q: &Polynomial) -> Result<Polynomial> {
        q.substitute_in(self.x_ring(), &self.sigma)
    }

    pub fn subduct(&self, p: &Polynomial) -> Result<Polynomial> {
        if p.ring() != self.x_ring() {
            return Err(Error::IncompatibleRings(p.ring().to_string(), self.x_ring().to_string()));
        }
        if !self.group.fixes(p)? {
            return Err(Error::NotInvariant(p.to_string()));
        }
        self.subduct_unchecked(p)
    }

    fn subduct_unchecked(&self, p: &Polynomial) -> Result<Polynomial> {
        let ring = self.tag_basis.ring();
        let lifted = p.remap(ring, Some).expect("x variables come first");
        let nf = self.tag_basis.normal_form(&lifted)?;
        let n = self.n();
        nf.remap(self.y_ring(), |i| i.checked_sub(n)).ok_or_else(|| Error::NotInSubalgebra(nf.to_string()))
    }

    /// Whether no `σ_j` is a polynomial in the others.
    pub fn is_minimal(&self) -> Result<bool> {
        for j in 0..self.sigma.len() {
            let mut rest = self.sigma.clone();
            let removed = rest.remove(j);
            let others = HilbertMap { group: self.group.clone(), tag_basis: tag_basis(self.n(), &rest)?, sigma: rest };
            if others.subduct_unchecked(&removed).is_ok() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn relations(&self) -> RelationIdeal {
        let basis = if self.sigma.is_empty() {
            GroebnerBasis::zero_ideal(self.y_ring(), MonomialOrder::GradedReverseLex)
        } else {
            restrict_to_y(&self.tag_basis)
        };
        RelationIdeal { basis }
    }
}

/// The ideal of relations among the `σ_j`, in grevlex over `y`.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationIdeal {
    basis: GroebnerBasis,
}

impl RelationIdeal {
    /// Wraps an ideal given by generators over `y`.
    pub fn from_generators(ring: Ring, gens: &[Polynomial]) -> Result<Self> {
        let basis = buchberger_in(ring, gens, MonomialOrder::GradedReverseLex, &CancelToken::new())?;
        Ok(RelationIdeal { basis })
    }

    pub fn basis(&self) -> &GroebnerBasis {
        &self.basis
    }

    pub fn ring(&self) -> Ring {
        self.basis.ring()
    }

    pub fn generators(&self) -> &[Polynomial] {
        self.basis.generators()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.basis.is_zero_ideal()
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        self.basis.normal_form(p)
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        self.basis.contains(p)
    }
}

pub fn relations(h: &HilbertMap) -> RelationIdeal {
    h.relations()
}

pub fn subduct(p: &Polynomial, h: &HilbertMap) -> Result<Polynomial> {
    h.subduct(p)
}

/// Orders generators by degree, then fewer variables in the leading
/// monomial, then larger leading monomial.
fn generator_order(a: &Polynomial, b: &Polynomial) -> Ordering {
    let (la, lb) = (a.leading_term().unwrap().0, b.leading_term().unwrap().0);
    a.degree()
        .cmp(&b.degree())
        .then_with(|| la.support_size().cmp(&lb.support_size()))
        .then_with(|| lb.cmp(la))
}

/// A basis of the degree-`d` invariants, as Reynolds images of monomials.
fn invariant_basis(group: &FiniteMatrixGroup, d: u32) -> Result<Vec<Polynomial>> {
    let ring = Ring::x(group.n());
    let mut ech = Echelon::new();
    let mut out = Vec::new();
    for m in monomials_of_degree(group.n(), d) {
        let r = reynolds(&Polynomial::term(ring, m, rat(1)), group)?;
        if !r.is_zero() && ech.insert(flatten(std::slice::from_ref(&r))) {
            out.push(r.primitive());
        }
    }
    Ok(out)
}

/// All products of generators (with multiplicity) of total degree `d`.
fn products_of_degree(gens: &[Polynomial], d: u32) -> Vec<Polynomial> {
    fn rec(gens: &[Polynomial], start: usize, left: u32, cur: Polynomial, out: &mut Vec<Polynomial>) {
        if left == 0 {
            out.push(cur);
            return;
        }
        for (j, g) in gens.iter().enumerate().skip(start) {
            let dg = g.degree().unwrap_or(0);
            if dg > 0 && dg <= left {
                rec(gens, j, left - dg, &cur * g, out);
            }
        }
    }
    let mut out = Vec::new();
    if let Some(first) = gens.first() {
        rec(gens, 0, d, Polynomial::one(first.ring()), &mut out);
    }
    out
}

/// Generators of the invariant ring up to `degree_bound` (default `|G|`),
/// by degreewise averaging: a Reynolds image is kept when it lies outside
/// the span of products of earlier generators.
pub fn invariant_generators(group: &FiniteMatrixGroup, degree_bound: Option<u32>) -> Result<HilbertMap> {
    let bound = degree_bound.unwrap_or(group.order() as u32);
    let ring = Ring::x(group.n());
    let mut gens: Vec<Polynomial> = Vec::new();
    for d in 1..=bound {
        let mut ech = Echelon::new();
        for prod in products_of_degree(&gens, d) {
            ech.insert(flatten(&[prod]));
        }
        let mut found = Vec::new();
        for m in monomials_of_degree(group.n(), d) {
            let r = reynolds(&Polynomial::term(ring, m, rat(1)), group)?;
            if !r.is_zero() && ech.insert(flatten(std::slice::from_ref(&r))) {
                found.push(r.primitive());
            }
        }
        gens.extend(found);
    }
    gens.sort_by(generator_order);
    HilbertMap::new(group.clone(), gens)
}

/// Generating set of the module of invariant vector fields over the
/// invariant ring.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivariantModule {
    group: FiniteMatrixGroup,
    generators: Vec<PolyVectorField>,
}

fn field_degree(x: &PolyVectorField) -> u32 {
    x.degree().unwrap_or(0)
}

fn leading_component(x: &PolyVectorField) -> Option<(usize, &Monomial)> {
    x.components().iter().enumerate().find_map(|(i, c)| c.leading_term().map(|(m, _)| (i, m)))
}

/// Scales to coprime integer coefficients with a positive leading
/// coefficient in the first nonzero component.
fn primitive_field(x: &PolyVectorField) -> PolyVectorField {
    let Some((i, _)) = leading_component(x) else {
        return x.clone();
    };
    let mut c = content(x.components().iter().flat_map(|p| p.terms().map(|(_, c)| c.clone())));
    if x.component(i).leading_coefficient().is_some_and(|lc| *lc < rat(0)) {
        c = -c;
    }
    x.scale(&(rat(1) / c))
}

impl EquivariantModule {
    /// Wraps user-supplied generators after checking invariance.
    pub fn new(group: FiniteMatrixGroup, generators: Vec<PolyVectorField>) -> Result<Self> {
        for g in &generators {
            if g.n() != group.n() {
                return Err(Error::DimensionMismatch { expected: group.n(), got: g.n() });
            }
            if !group.fixes(g)? {
                return Err(Error::NotInvariant(g.to_string()));
            }
        }
        Ok(EquivariantModule { group, generators })
    }

    pub fn generators(&self) -> &[PolyVectorField] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn group(&self) -> &FiniteMatrixGroup {
        &self.group
    }

    /// Column products `b · X_j` spanning the degree-`d` part of the module,
    /// tagged with the generator index.
    fn graded_products(&self, d: u32, skip: Option<usize>) -> Result<Vec<(usize, Polynomial, PolyVectorField)>> {
        let mut out = Vec::new();
        for (j, g) in self.generators.iter().enumerate() {
            if Some(j) == skip {
                continue;
            }
            let e = field_degree(g);
            if e > d {
                continue;
            }
            for b in invariant_basis(&self.group, d - e)? {
                out.push((j, b.clone(), g.times(&b)?));
            }
        }
        Ok(out)
    }

    /// Invariant coefficients `h_j` with `X = Σ h_j X_j`, solved degree by
    /// degree; `None` if `X` is not in the module.
    pub fn coefficients(&self, x: &PolyVectorField) -> Result<Option<Vec<Polynomial>>> {
        self.coefficients_excluding(x, None)
    }

    fn coefficients_excluding(&self, x: &PolyVectorField, skip: Option<usize>) -> Result<Option<Vec<Polynomial>>> {
        let n = self.group.n();
        if x.n() != n {
            return Err(Error::DimensionMismatch { expected: n, got: x.n() });
        }
        let ring = Ring::x(n);
        let mut coeffs = vec![Polynomial::zero(ring); self.generators.len()];
        let Some(top) = x.degree() else {
            return Ok(Some(coeffs));
        };
        for d in 0..=top {
            let part: Vec<Polynomial> = x
                .components()
                .iter()
                .map(|c| Polynomial::from_terms(ring, c.terms().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone()))))
                .collect();
            if part.iter().all(Polynomial::is_zero) {
                continue;
            }
            let products = self.graded_products(d, skip)?;
            let columns: Vec<Vec<Polynomial>> = products.iter().map(|(_, _, f)| f.components().to_vec()).collect();
            let Some(sol) = crate::linalg::solve_combination(&columns, &part) else {
                return Ok(None);
            };
            for ((j, b, _), s) in products.iter().zip(sol) {
                coeffs[*j] = &coeffs[*j] + &b.scale(&s);
            }
        }
        Ok(Some(coeffs))
    }

    pub fn contains(&self, x: &PolyVectorField) -> Result<bool> {
        Ok(self.coefficients(x)?.is_some())
    }

    /// No generator is an invariant combination of the others.
    pub fn is_minimal(&self) -> Result<bool> {
        for (j, g) in self.generators.iter().enumerate() {
            if self.coefficients_excluding(g, Some(j))?.is_some() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Averages `x^α ∂/∂x_i` for `|α| ≤ degree_bound` (default `|G|`), keeping
/// those outside the span of invariant multiples of earlier generators.
pub fn equivariant_generators(group: &FiniteMatrixGroup, degree_bound: Option<u32>) -> Result<EquivariantModule> {
    let bound = degree_bound.unwrap_or(group.order() as u32);
    let n = group.n();
    let ring = Ring::x(n);
    let mut module = EquivariantModule { group: group.clone(), generators: vec![] };
    for d in 0..=bound {
        let mut ech = Echelon::new();
        for (_, _, f) in module.graded_products(d, None)? {
            ech.insert(flatten(f.components()));
        }
        let mut found = Vec::new();
        for i in 0..n {
            for m in monomials_of_degree(n, d) {
                let mut comps = vec![Polynomial::zero(ring); n];
                comps[i] = Polynomial::term(ring, m, rat(1));
                let r = reynolds(&PolyVectorField::new(comps), group)?;
                if !r.is_zero() && ech.insert(flatten(r.components())) {
                    found.push(primitive_field(&r));
                }
            }
        }
        module.generators.extend(found);
    }
    module.generators.sort_by(|a, b| {
        let (ia, ma) = leading_component(a).unwrap();
        let (ib, mb) = leading_component(b).unwrap();
        field_degree(a).cmp(&field_degree(b)).then(ia.cmp(&ib)).then_with(|| mb.cmp(ma))
    });
    Ok(module)
}
