//! JSON formats for problems, forms, vector fields and orbit forms. All
//! numbers and polynomials are strings; index tuples are 1-based.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{format_rational, parse_rational, Polynomial, Ring};
use crate::error::{Error, Result};
use crate::group_action::{FiniteMatrixGroup, LieAlgebraAction, Matrix, PolyDiffForm, PolyVectorField};
use crate::quotient::{OrbitForm, OrbitSpace, OrbitVectorField};

/// Row-major matrix of rational strings.
pub type MatrixJson = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormTermJson {
    pub indices: Vec<usize>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormJson {
    pub degree: usize,
    pub terms: Vec<FormTermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorFieldJson {
    pub components: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitValueJson {
    pub tuple: Vec<usize>,
    pub class: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitFormJson {
    pub degree: usize,
    pub generators: usize,
    pub values: Vec<OrbitValueJson>,
}

/// A named object in a problem file; the shape decides the kind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NamedObject {
    Form(FormJson),
    VectorField(VectorFieldJson),
    OrbitForm(OrbitFormJson),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeBounds {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariants: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equivariants: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lift: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pull: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub n: usize,
    pub group_generators: Vec<MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lie_algebra: Option<Vec<MatrixJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_bounds: Option<DegreeBounds>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub named_objects: Option<BTreeMap<String, NamedObject>>,
}

pub fn matrix_from_json(m: &MatrixJson) -> Result<Matrix> {
    let rows = m.iter().map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

pub fn matrix_to_json(m: &Matrix) -> MatrixJson {
    m.rows().iter().map(|r| r.iter().map(format_rational).collect()).collect()
}

impl ProblemFile {
    pub fn parse(src: &str) -> Result<Self> {
        let p: ProblemFile = serde_json::from_str(src)?;
        p.validate()?;
        Ok(p)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let src = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&src)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem files serialize")
    }

    fn validate(&self) -> Result<()> {
        for m in self.group_generators.iter().chain(self.lie_algebra.iter().flatten()) {
            let m = matrix_from_json(m)?;
            if m.n() != self.n {
                return Err(Error::DimensionMismatch { expected: self.n, got: m.n() });
            }
        }
        Ok(())
    }

    pub fn group(&self, cap: usize) -> Result<FiniteMatrixGroup> {
        let gens = self.group_generators.iter().map(matrix_from_json).collect::<Result<Vec<_>>>()?;
        FiniteMatrixGroup::closure(self.n, &gens, cap)
    }

    pub fn lie(&self) -> Result<LieAlgebraAction> {
        let xi = self.lie_algebra.iter().flatten().map(matrix_from_json).collect::<Result<Vec<_>>>()?;
        LieAlgebraAction::new(self.n, xi)
    }

    pub fn bounds(&self) -> DegreeBounds {
        self.degree_bounds.clone().unwrap_or_default()
    }

    pub fn space(&self, cap: usize) -> Result<OrbitSpace> {
        let b = self.bounds();
        OrbitSpace::new(self.group(cap)?, self.lie()?, b.invariants, b.equivariants)
    }

    pub fn object(&self, name: &str) -> Option<&NamedObject> {
        self.named_objects.as_ref()?.get(name)
    }
}

pub fn form_to_json(w: &PolyDiffForm) -> FormJson {
    FormJson {
        degree: w.degree(),
        terms: w
            .terms()
            .map(|(idx, c)| FormTermJson { indices: idx.iter().map(|i| i + 1).collect(), coeff: c.to_string() })
            .collect(),
    }
}

fn one_based(idx: &[usize], bound: usize) -> Result<Vec<usize>> {
    idx.iter()
        .map(|&i| {
            if i == 0 || i > bound {
                Err(Error::IndexOutOfRange { index: i, nvars: bound })
            } else {
                Ok(i - 1)
            }
        })
        .collect()
}

pub fn form_from_json(n: usize, f: &FormJson) -> Result<PolyDiffForm> {
    let ring = Ring::x(n);
    let terms = f
        .terms
        .iter()
        .map(|t| Ok((one_based(&t.indices, n)?, Polynomial::parse(&t.coeff, ring)?)))
        .collect::<Result<Vec<_>>>()?;
    PolyDiffForm::from_terms(n, f.degree, terms)
}

pub fn vf_to_json(x: &PolyVectorField) -> VectorFieldJson {
    VectorFieldJson { components: x.components().iter().map(ToString::to_string).collect() }
}

pub fn vf_from_json(n: usize, v: &VectorFieldJson) -> Result<PolyVectorField> {
    if v.components.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: v.components.len() });
    }
    let ring = Ring::x(n);
    PolyVectorField::from_components(v.components.iter().map(|s| Polynomial::parse(s, ring)).collect::<Result<_>>()?)
}

pub fn orbit_vf_to_json(y: &OrbitVectorField) -> VectorFieldJson {
    VectorFieldJson { components: y.components().iter().map(ToString::to_string).collect() }
}

pub fn orbit_vf_from_json(space: &OrbitSpace, v: &VectorFieldJson) -> Result<OrbitVectorField> {
    let ring = space.y_ring();
    space.vector_field(v.components.iter().map(|s| Polynomial::parse(s, ring)).collect::<Result<_>>()?)
}

pub fn orbit_form_to_json(f: &OrbitForm) -> OrbitFormJson {
    OrbitFormJson {
        degree: f.degree(),
        generators: f.generators(),
        values: f
            .values()
            .map(|(t, v)| OrbitValueJson { tuple: t.iter().map(|i| i + 1).collect(), class: v.to_string() })
            .collect(),
    }
}

pub fn orbit_form_from_json(space: &OrbitSpace, f: &OrbitFormJson) -> Result<OrbitForm> {
    let count = space.pushed_generators().len();
    if f.generators != count {
        return Err(Error::DimensionMismatch { expected: count, got: f.generators });
    }
    let ring = space.y_ring();
    let values = f
        .values
        .iter()
        .map(|v| Ok((one_based(&v.tuple, count)?, Polynomial::parse(&v.class, ring)?)))
        .collect::<Result<Vec<_>>>()?;
    space.orbit_form(f.degree, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z2: &str = r#"{
        "n": 2,
        "group_generators": [[["-1", "0"], ["0", "-1"]]],
        "named_objects": {
            "theta4": {"degree": 1, "terms": [{"indices": [1], "coeff": "-x2"}, {"indices": [2], "coeff": "x1"}]},
            "X1": {"components": ["x1", "0"]}
        }
    }"#;

    #[test]
    fn problem_round_trip() {
        let p = ProblemFile::parse(Z2).unwrap();
        assert_eq!(ProblemFile::parse(&p.to_json()).unwrap(), p);
        assert_eq!(p.group(100).unwrap().order(), 2);
        assert!(matches!(p.object("theta4"), Some(NamedObject::Form(_))));
        assert!(matches!(p.object("X1"), Some(NamedObject::VectorField(_))));
    }

    #[test]
    fn form_round_trip() {
        let p = ProblemFile::parse(Z2).unwrap();
        let Some(NamedObject::Form(f)) = p.object("theta4") else { panic!() };
        let w = form_from_json(2, f).unwrap();
        assert_eq!(form_from_json(2, &form_to_json(&w)).unwrap(), w);
        let bad = FormJson { degree: 1, terms: vec![FormTermJson { indices: vec![0], coeff: "1".into() }] };
        assert!(form_from_json(2, &bad).is_err());
    }

    #[test]
    fn rejects_bad_matrices() {
        assert!(ProblemFile::parse(r#"{"n": 2, "group_generators": [[["1"]]]}"#).is_err());
        assert!(ProblemFile::parse(r#"{"n": 2, "group_generators": [[["1", "x"], ["0", "1"]]]}"#).is_err());
    }
}
