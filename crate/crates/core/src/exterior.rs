//! Exterior calculus on polynomial forms: wedge, d, contraction, Lie
//! derivative, pullback, the semi-basic test and the Euler homotopy operator.

use crate::algebra::{rat, Polynomial, Ring};
use crate::error::{Error, Result};
use crate::group_action::{LieAlgebraAction, PolyDiffForm, PolyVectorField};

fn same_ring(a: Ring, b: Ring) -> Result<()> {
    if a != b {
        return Err(Error::IncompatibleRings(a.to_string(), b.to_string()));
    }
    Ok(())
}

pub fn wedge(a: &PolyDiffForm, b: &PolyDiffForm) -> Result<PolyDiffForm> {
    same_ring(a.ring(), b.ring())?;
    let mut out = PolyDiffForm::zero(a.ring(), a.degree() + b.degree());
    for (i, f) in a.terms() {
        for (j, g) in b.terms() {
            let mut idx = i.clone();
            idx.extend_from_slice(j);
            out.add_term(idx, f * g);
        }
    }
    Ok(out)
}

/// Exterior derivative.
pub fn d(w: &PolyDiffForm) -> PolyDiffForm {
    let mut out = PolyDiffForm::zero(w.ring(), w.degree() + 1);
    for (idx, c) in w.terms() {
        for j in 0..w.n() {
            let dc = c.partial_derivative(j).expect("index within ring");
            if dc.is_zero() {
                continue;
            }
            let mut k = Vec::with_capacity(idx.len() + 1);
            k.push(j);
            k.extend_from_slice(idx);
            out.add_term(k, dc);
        }
    }
    out
}

/// Contraction `X ⨼ ω` in the first slot.
pub fn interior(x: &PolyVectorField, w: &PolyDiffForm) -> Result<PolyDiffForm> {
    if w.degree() == 0 {
        return Err(Error::CannotContractFunction);
    }
    same_ring(x.ring(), w.ring())?;
    let mut out = PolyDiffForm::zero(w.ring(), w.degree() - 1);
    for (idx, c) in w.terms() {
        for (s, &i) in idx.iter().enumerate() {
            let xi = x.component(i);
            if xi.is_zero() {
                continue;
            }
            let mut rest = idx.clone();
            rest.remove(s);
            let term = xi * c;
            out.add_term(rest, if s % 2 == 1 { -term } else { term });
        }
    }
    Ok(out)
}

/// `ω(X_1, …, X_k)`, contracting `X_1` first.
pub fn evaluate(w: &PolyDiffForm, fields: &[PolyVectorField]) -> Result<Polynomial> {
    if fields.len() != w.degree() {
        return Err(Error::ArityMismatch { expected: w.degree(), got: fields.len() });
    }
    let mut cur = w.clone();
    for x in fields {
        cur = interior(x, &cur)?;
    }
    Ok(cur.as_function().expect("fully contracted"))
}

/// `L_X ω` by the Cartan formula `d ι_X + ι_X d`.
pub fn lie_derivative(x: &PolyVectorField, w: &PolyDiffForm) -> Result<PolyDiffForm> {
    same_ring(x.ring(), w.ring())?;
    let from_d = interior(x, &d(w))?;
    if w.degree() == 0 {
        return Ok(from_d);
    }
    d(&interior(x, w)?).checked_add(&from_d)
}

/// `L_X ω` computed termwise: `X(f) dx_I + f Σ_s dx_{i_1} ∧ … ∧ dX_{i_s} ∧ …`.
pub fn lie_derivative_direct(x: &PolyVectorField, w: &PolyDiffForm) -> Result<PolyDiffForm> {
    same_ring(x.ring(), w.ring())?;
    let mut out = PolyDiffForm::zero(w.ring(), w.degree());
    for (idx, c) in w.terms() {
        out.add_term(idx.clone(), x.apply(c)?);
        for s in 0..idx.len() {
            for j in 0..w.n() {
                let dxj = x.component(idx[s]).partial_derivative(j)?;
                if dxj.is_zero() {
                    continue;
                }
                let mut k = idx.clone();
                k[s] = j;
                out.add_term(k, c * &dxj);
            }
        }
    }
    Ok(out)
}

/// Pullback of a form on the target along `φ = (φ_1, …, φ_m)`. The source
/// ring is read off the components.
pub fn pullback(phi: &[Polynomial], w: &PolyDiffForm) -> Result<PolyDiffForm> {
    if phi.len() != w.n() {
        return Err(Error::ArityMismatch { expected: w.n(), got: phi.len() });
    }
    let Some(first) = phi.first() else {
        return Ok(w.clone());
    };
    let source = first.ring();
    let dphi: Vec<PolyDiffForm> = phi
        .iter()
        .map(|p| {
            same_ring(p.ring(), source)?;
            Ok(d(&PolyDiffForm::function(p.clone())))
        })
        .collect::<Result<_>>()?;
    let mut out = PolyDiffForm::zero(source, w.degree());
    for (idx, c) in w.terms() {
        let mut term = PolyDiffForm::function(c.substitute_in(source, phi)?);
        for &i in idx {
            term = wedge(&term, &dphi[i])?;
        }
        out = out.checked_add(&term)?;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub enum SemiBasicCheck {
    SemiBasic,
    /// Contraction with the `index`-th infinitesimal generator is nonzero.
    Fails { index: usize, contraction: PolyDiffForm },
}

impl SemiBasicCheck {
    pub fn holds(&self) -> bool {
        matches!(self, SemiBasicCheck::SemiBasic)
    }
}

pub fn semibasic_check(w: &PolyDiffForm, action: &LieAlgebraAction) -> Result<SemiBasicCheck> {
    if action.n() != w.n() {
        return Err(Error::DimensionMismatch { expected: w.n(), got: action.n() });
    }
    if w.degree() == 0 {
        return Ok(SemiBasicCheck::SemiBasic);
    }
    for (index, x) in action.infinitesimal_fields().iter().enumerate() {
        let contraction = interior(x, w)?;
        if !contraction.is_zero() {
            return Ok(SemiBasicCheck::Fails { index, contraction });
        }
    }
    Ok(SemiBasicCheck::SemiBasic)
}

/// The homotopy operator `h`: a term `m dx_I` with `deg m = d`, `|I| = k`
/// goes to `ι_E(m dx_I) / (d + k)`, `E` the Euler field. No closedness
/// check; `h(dω) + d(hω) = ω` for `k ≥ 1`.
pub fn homotopy(w: &PolyDiffForm) -> Result<PolyDiffForm> {
    let k = w.degree();
    if k == 0 {
        return Err(Error::CannotContractFunction);
    }
    let euler = PolyVectorField::euler(w.n());
    let mut out = PolyDiffForm::zero(w.ring(), k - 1);
    for (idx, c) in w.terms() {
        for (m, coeff) in c.terms() {
            let weight = rat((m.degree() as usize + k) as i64);
            let mono = Polynomial::term(w.ring(), m.clone(), coeff / weight);
            let mut piece = PolyDiffForm::zero(w.ring(), k);
            piece.add_term(idx.clone(), mono);
            out = out.checked_add(&interior(&euler, &piece)?)?;
        }
    }
    Ok(out)
}

/// A primitive `α` with `dα = β` for closed `β` of degree at least one.
pub fn poincare_primitive(beta: &PolyDiffForm) -> Result<PolyDiffForm> {
    let db = d(beta);
    if !db.is_zero() {
        return Err(Error::NotClosed(Box::new(db)));
    }
    let alpha = homotopy(beta)?;
    debug_assert_eq!(d(&alpha), *beta);
    Ok(alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_action::Matrix;

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, Ring::x(2)).unwrap()
    }

    fn one_form(a: &str, b: &str) -> PolyDiffForm {
        PolyDiffForm::from_terms(2, 1, [(vec![0], p(a)), (vec![1], p(b))]).unwrap()
    }

    fn two_form(c: &str) -> PolyDiffForm {
        PolyDiffForm::from_terms(2, 2, [(vec![0, 1], p(c))]).unwrap()
    }

    fn vf(a: &str, b: &str) -> PolyVectorField {
        PolyVectorField::new(vec![p(a), p(b)])
    }

    fn theta4() -> PolyDiffForm {
        one_form("-x2", "x1")
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(wedge(&one_form("1", "0"), &one_form("0", "1")).unwrap(), two_form("1"));
        assert_eq!(wedge(&theta4(), &one_form("1", "0")).unwrap(), two_form("-x1"));
        let w = one_form("x1*x2", "x1^3 - 2");
        assert!(wedge(&w, &w).unwrap().is_zero());
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(d(&theta4()), two_form("2"));
        assert_eq!(d(&PolyDiffForm::function(p("x1^2"))), one_form("2*x1", "0"));
        assert!(d(&d(&PolyDiffForm::function(p("x1^3*x2 - x2^5")))).is_zero());
    }

    #[test]
    fn contraction_examples() {
        assert_eq!(interior(&vf("x1", "0"), &theta4()).unwrap().as_function().unwrap(), p("-x1*x2"));
        assert_eq!(interior(&vf("1", "0"), &two_form("1")).unwrap(), one_form("0", "1"));
        assert!(interior(&PolyVectorField::zero(2), &theta4()).unwrap().is_zero());
        assert!(matches!(
            interior(&vf("1", "0"), &PolyDiffForm::function(p("x1"))),
            Err(Error::CannotContractFunction)
        ));
    }

    #[test]
    fn lie_derivative_of_functions() {
        let f = |s: &str| PolyDiffForm::function(p(s));
        assert_eq!(lie_derivative(&vf("x2", "0"), &f("x1*x2")).unwrap(), f("x2^2"));
        assert!(lie_derivative(&vf("0", "x1"), &f("x1^2")).unwrap().is_zero());
        assert!(lie_derivative(&vf("x1", "x2"), &f("7")).unwrap().is_zero());
    }

    #[test]
    fn pullback_along_hilbert_map() {
        let sigma = [p("x1^2"), p("x2^2"), p("x1*x2")];
        let dy = |i| PolyDiffForm::basis_in(Ring::y(3), &[i]);
        assert_eq!(pullback(&sigma, &dy(0)).unwrap(), one_form("2*x1", "0"));
        assert_eq!(pullback(&sigma, &dy(2)).unwrap(), one_form("x2", "x1"));
        assert_eq!(pullback(&[p("x1"), p("x2")], &theta4()).unwrap(), theta4());
    }

    #[test]
    fn semibasic_examples() {
        let rot = LieAlgebraAction::new(2, vec![Matrix::from_ints(&[&[0, -1], &[1, 0]]).unwrap()]).unwrap();
        assert!(semibasic_check(&theta4(), &LieAlgebraAction::empty(2)).unwrap().holds());
        let w = theta4().times(&p("x1^2 + x2^2")).unwrap();
        match semibasic_check(&w, &rot).unwrap() {
            SemiBasicCheck::Fails { index: 0, contraction } => {
                assert_eq!(contraction.as_function().unwrap(), p("x1^4 + 2*x1^2*x2^2 + x2^4"))
            }
            other => panic!("expected failure, got {other:?}"),
        }
        assert!(semibasic_check(&one_form("x1", "x2"), &rot).unwrap().holds());
    }

    #[test]
    fn primitives() {
        assert_eq!(poincare_primitive(&two_form("2")).unwrap(), theta4());
        assert_eq!(poincare_primitive(&one_form("1", "0")).unwrap(), PolyDiffForm::function(p("x1")));
        assert_eq!(poincare_primitive(&one_form("2*x1", "0")).unwrap(), PolyDiffForm::function(p("x1^2")));
        match poincare_primitive(&theta4()) {
            Err(Error::NotClosed(db)) => assert_eq!(*db, two_form("2")),
            other => panic!("expected NotClosed, got {other:?}"),
        }
    }
}
