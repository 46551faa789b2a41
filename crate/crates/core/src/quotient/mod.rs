//! Calculus on the orbit space `Σ = σ(R^n)`: vector fields as derivations
//! of `Q[y]/I`, forms as values on the pushed generators, and the maps
//! between these and the invariant objects upstairs.

mod form;

use std::fmt;
use std::sync::OnceLock;

use crate::algebra::{Polynomial, Ring};
use crate::error::{Error, Result};
use crate::groebner::{ModuleMembership, SubmoduleProblem};
use crate::group_action::{FiniteMatrixGroup, LieAlgebraAction, PolyVectorField};
use crate::invariants::{equivariant_generators, invariant_generators, EquivariantModule, HilbertMap, RelationIdeal};
use crate::linalg::{monomials_up_to, solve_combination};

pub use form::{ExtendResult, OrbitForm};

/// A class in `Q[y]/I`, stored as its normal form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrbitFunction {
    rep: Polynomial,
}

impl OrbitFunction {
    pub fn rep(&self) -> &Polynomial {
        &self.rep
    }

    pub fn into_rep(self) -> Polynomial {
        self.rep
    }
}

impl fmt::Display for OrbitFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

impl fmt::Debug for OrbitFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

/// Derivation `Σ p_j ∂/∂y_j` of `Q[y]/I`, components in normal form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrbitVectorField {
    components: Vec<Polynomial>,
}

impl OrbitVectorField {
    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.components.iter().filter_map(Polynomial::degree).max()
    }
}

impl fmt::Display for OrbitVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *c == Polynomial::one(c.ring()) {
                write!(f, "d/dy{}", j + 1)?;
            } else if c.len() > 1 {
                write!(f, "({c})*d/dy{}", j + 1)?;
            } else {
                write!(f, "{c}*d/dy{}", j + 1)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for OrbitVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Everything needed to compute on `Σ`: the Hilbert map, the relation
/// ideal, the Lie algebra (for semi-basic checks), the equivariant
/// generators `X_i` and their pushforwards `Y_i`.
#[derive(Debug)]
pub struct OrbitSpace {
    hilbert: HilbertMap,
    ideal: RelationIdeal,
    lie: LieAlgebraAction,
    module: EquivariantModule,
    pushed: Vec<OrbitVectorField>,
    span: OnceLock<SubmoduleProblem>,
}

impl OrbitSpace {
    /// Generates invariants and equivariant fields with the default degree
    /// bounds unless overridden.
    pub fn new(
        group: FiniteMatrixGroup,
        lie: LieAlgebraAction,
        invariant_bound: Option<u32>,
        module_bound: Option<u32>,
    ) -> Result<Self> {
        let hilbert = invariant_generators(&group, invariant_bound)?;
        let module = equivariant_generators(&group, module_bound)?;
        Self::from_parts(hilbert, lie, module)
    }

    pub fn from_parts(hilbert: HilbertMap, lie: LieAlgebraAction, module: EquivariantModule) -> Result<Self> {
        if lie.n() != hilbert.n() {
            return Err(Error::DimensionMismatch { expected: hilbert.n(), got: lie.n() });
        }
        let ideal = hilbert.relations();
        let mut space = OrbitSpace { hilbert, ideal, lie, module, pushed: vec![], span: OnceLock::new() };
        space.pushed = space.module.generators().iter().map(|x| space.push_vf(x)).collect::<Result<_>>()?;
        Ok(space)
    }

    pub fn hilbert(&self) -> &HilbertMap {
        &self.hilbert
    }

    pub fn ideal(&self) -> &RelationIdeal {
        &self.ideal
    }

    pub fn lie(&self) -> &LieAlgebraAction {
        &self.lie
    }

    pub fn group(&self) -> &FiniteMatrixGroup {
        self.hilbert.group()
    }

    pub fn module(&self) -> &EquivariantModule {
        &self.module
    }

    /// The pushforwards `Y_i` of the module generators.
    pub fn pushed_generators(&self) -> &[OrbitVectorField] {
        &self.pushed
    }

    pub fn n(&self) -> usize {
        self.hilbert.n()
    }

    pub fn y_ring(&self) -> Ring {
        self.hilbert.y_ring()
    }

    pub fn x_ring(&self) -> Ring {
        self.hilbert.x_ring()
    }

    pub fn function(&self, q: &Polynomial) -> Result<OrbitFunction> {
        Ok(OrbitFunction { rep: self.normal_form(q)? })
    }

    fn normal_form(&self, q: &Polynomial) -> Result<Polynomial> {
        if q.ring() != self.y_ring() {
            return Err(Error::IncompatibleRings(q.ring().to_string(), self.y_ring().to_string()));
        }
        self.ideal.normal_form(q)
    }

    /// Builds an orbit vector field, normalizing and checking tangency.
    pub fn vector_field(&self, components: Vec<Polynomial>) -> Result<OrbitVectorField> {
        if components.len() != self.hilbert.len() {
            return Err(Error::ArityMismatch { expected: self.hilbert.len(), got: components.len() });
        }
        let components = components.iter().map(|c| self.normal_form(c)).collect::<Result<_>>()?;
        let y = OrbitVectorField { components };
        if !self.is_tangent(&y)? {
            return Err(Error::NotTangent(y.to_string()));
        }
        Ok(y)
    }

    pub fn zero_vf(&self) -> OrbitVectorField {
        OrbitVectorField { components: vec![Polynomial::zero(self.y_ring()); self.hilbert.len()] }
    }

    /// `Y(f)` as a normal form.
    pub fn apply(&self, y: &OrbitVectorField, f: &Polynomial) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.y_ring());
        for (j, c) in y.components.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &(c * &f.partial_derivative(j)?);
            }
        }
        self.normal_form(&out)
    }

    /// Whether `Y` maps the relation ideal into itself.
    pub fn is_tangent(&self, y: &OrbitVectorField) -> Result<bool> {
        for g in self.ideal.generators() {
            if !self.apply(y, g)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn vf_add(&self, a: &OrbitVectorField, b: &OrbitVectorField) -> Result<OrbitVectorField> {
        let components = a.components.iter().zip(&b.components).map(|(p, q)| self.normal_form(&(p + q))).collect::<Result<_>>()?;
        Ok(OrbitVectorField { components })
    }

    /// `f · Y`.
    pub fn vf_times(&self, f: &Polynomial, y: &OrbitVectorField) -> Result<OrbitVectorField> {
        let components = y.components.iter().map(|c| self.normal_form(&(f * c))).collect::<Result<_>>()?;
        Ok(OrbitVectorField { components })
    }

    /// `Σ c_i Y_i` over the pushed generators.
    pub fn combine_generators(&self, coefficients: &[Polynomial]) -> Result<OrbitVectorField> {
        if coefficients.len() != self.pushed.len() {
            return Err(Error::ArityMismatch { expected: self.pushed.len(), got: coefficients.len() });
        }
        let mut acc = self.zero_vf();
        for (c, y) in coefficients.iter().zip(&self.pushed) {
            acc = self.vf_add(&acc, &self.vf_times(c, y)?)?;
        }
        Ok(acc)
    }

    /// Components `Y_j = subduct(L_X σ_j)` of an invariant field.
    pub fn push_vf(&self, x: &PolyVectorField) -> Result<OrbitVectorField> {
        if x.n() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), got: x.n() });
        }
        if !self.group().fixes(x)? {
            return Err(Error::NotInvariant(x.to_string()));
        }
        let components = self
            .hilbert
            .sigma()
            .iter()
            .map(|s| self.normal_form(&self.hilbert.subduct(&x.apply(s)?)?))
            .collect::<Result<_>>()?;
        let y = OrbitVectorField { components };
        if !self.is_tangent(&y)? {
            return Err(Error::Consistency(format!("pushforward {y} of {x} is not tangent")));
        }
        Ok(y)
    }

    /// An invariant field `Σ H_i(σ) X_i` pushing to `Y`, with `deg H_i`
    /// at most `degree_bound` (default: the degree of `Y` plus one, raised
    /// once to twice that before giving up).
    pub fn lift_vf(&self, y: &OrbitVectorField, degree_bound: Option<usize>) -> Result<PolyVectorField> {
        if y.len() != self.hilbert.len() {
            return Err(Error::ArityMismatch { expected: self.hilbert.len(), got: y.len() });
        }
        if !self.is_tangent(y)? {
            return Err(Error::NotTangent(y.to_string()));
        }
        let bounds = match degree_bound {
            Some(b) => vec![b],
            None => {
                let b = y.degree().unwrap_or(0) as usize + 1;
                vec![b, 2 * b]
            }
        };
        for &b in &bounds {
            if let Some(x) = self.lift_at(y, b)? {
                return Ok(x);
            }
        }
        Err(Error::LiftNotFound(*bounds.last().unwrap()))
    }

    fn lift_at(&self, y: &OrbitVectorField, bound: usize) -> Result<Option<PolyVectorField>> {
        let ry = self.y_ring();
        let monomials = monomials_up_to(ry.nvars(), bound as u32);
        let mut unknowns = Vec::new();
        let mut columns = Vec::new();
        for (i, yi) in self.pushed.iter().enumerate() {
            for m in &monomials {
                let h = Polynomial::term(ry, m.clone(), crate::algebra::rat(1));
                columns.push(self.vf_times(&h, yi)?.components);
                unknowns.push((i, h));
            }
        }
        let Some(sol) = solve_combination(&columns, &y.components) else {
            return Ok(None);
        };
        let mut coeffs = vec![Polynomial::zero(ry); self.pushed.len()];
        for ((i, h), c) in unknowns.iter().zip(sol) {
            coeffs[*i] = &coeffs[*i] + &h.scale(&c);
        }
        let mut x = PolyVectorField::zero(self.n());
        for (c, g) in coeffs.iter().zip(self.module.generators()) {
            x = x.checked_add(&g.times(&self.hilbert.compose(c)?)?)?;
        }
        if self.push_vf(&x)? != *y {
            return Err(Error::Consistency(format!("lift {x} does not push back to {y}")));
        }
        Ok(Some(x))
    }

    /// `[Y, Y']` with `[Y, Y'](f) = Y'(Y(f)) − Y(Y'(f))`.
    pub fn orbit_bracket(&self, a: &OrbitVectorField, b: &OrbitVectorField) -> Result<OrbitVectorField> {
        let components = a
            .components
            .iter()
            .zip(&b.components)
            .map(|(aj, bj)| Ok(&self.apply(b, aj)? - &self.apply(a, bj)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(OrbitVectorField { components: components.iter().map(|c| self.normal_form(c)).collect::<Result<_>>()? })
    }

    /// The submodule of `(Q[y]/I)^l` spanned by the `Y_i`.
    pub(crate) fn span(&self) -> &SubmoduleProblem {
        self.span.get_or_init(|| {
            let columns = self.pushed.iter().map(|y| y.components.clone()).collect();
            SubmoduleProblem::new(self.hilbert.len(), columns, self.ideal.basis().clone())
                .expect("pushed generators share the rank")
        })
    }

    /// Coefficients `c` with `Y = Σ c_i Y_i`, if `Y` lies in their span.
    pub fn express(&self, y: &OrbitVectorField) -> Result<Option<Vec<Polynomial>>> {
        match self.span().solve(&y.components)? {
            ModuleMembership::Member { witness } => Ok(Some(witness)),
            ModuleMembership::NotMember { .. } => Ok(None),
        }
    }

    /// Generators of the relations `Σ c_i Y_i ≡ 0` among the pushed fields.
    pub fn generator_syzygies(&self) -> Result<Vec<Vec<Polynomial>>> {
        self.span().syzygies()
    }
}

pub fn push_vf(x: &PolyVectorField, space: &OrbitSpace) -> Result<OrbitVectorField> {
    space.push_vf(x)
}

pub fn lift_vf(y: &OrbitVectorField, space: &OrbitSpace, degree_bound: Option<usize>) -> Result<PolyVectorField> {
    space.lift_vf(y, degree_bound)
}

pub fn orbit_bracket(a: &OrbitVectorField, b: &OrbitVectorField, space: &OrbitSpace) -> Result<OrbitVectorField> {
    space.orbit_bracket(a, b)
}

#[cfg(test)]
mod tests;
