use std::collections::BTreeMap;
use std::fmt;

use super::{OrbitSpace, OrbitVectorField};
use crate::algebra::{rat, Polynomial};
use crate::error::{Error, Result};
use crate::exterior::{d, evaluate, interior, semibasic_check, wedge, SemiBasicCheck};
use crate::groebner::{ModuleMembership, SubmoduleProblem};
use crate::group_action::{reynolds, sort_with_sign, PolyDiffForm};
use crate::linalg::{flatten, monomials_up_to, solve_combination, Echelon};

/// Alternating functional on the pushed generators `Y_1..Y_N`, stored by
/// its values on strictly increasing index tuples (0-based). Zero values
/// are omitted; the rest are normal forms mod `I`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrbitForm {
    degree: usize,
    generators: usize,
    values: BTreeMap<Vec<usize>, Polynomial>,
}

impl OrbitForm {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Nonzero values on increasing tuples.
    pub fn values(&self) -> impl Iterator<Item = (&Vec<usize>, &Polynomial)> {
        self.values.iter()
    }

    /// `θ(Y_{t_1}, …, Y_{t_k})` for any tuple, by alternation. `None` for
    /// an unseen zero value is folded into the zero polynomial of `ring`.
    pub fn value(&self, tuple: &[usize], zero: &Polynomial) -> Polynomial {
        let mut t = tuple.to_vec();
        match sort_with_sign(&mut t) {
            None => zero.clone(),
            Some(neg) => {
                let v = self.values.get(&t).cloned().unwrap_or_else(|| zero.clone());
                if neg {
                    -v
                } else {
                    v
                }
            }
        }
    }
}

impl fmt::Display for OrbitForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.values.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .values
            .iter()
            .map(|(t, v)| {
                let names: Vec<String> = t.iter().map(|i| format!("Y{}", i + 1)).collect();
                format!("({}) -> {v}", names.join(", "))
            })
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

impl fmt::Debug for OrbitForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}-form] {self}", self.degree)
    }
}

/// Outcome of the extendability test for an orbit 1-form.
#[derive(Clone, Debug, PartialEq)]
pub enum ExtendResult {
    /// `θ = Σ A_j dy_j` restricted to `Σ`.
    Extendable { witness: Vec<Polynomial> },
    /// No such `A_j`; the nonzero module normal form certifies it.
    NotExtendable { normal_form: Vec<Polynomial> },
}

impl ExtendResult {
    pub fn is_extendable(&self) -> bool {
        matches!(self, ExtendResult::Extendable { .. })
    }
}

/// Strictly increasing `k`-subsets of `0..n`, in lexicographic order.
pub(crate) fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 0, &mut Vec::new(), &mut out);
    out
}

impl OrbitSpace {
    fn zero_class(&self) -> Polynomial {
        Polynomial::zero(self.y_ring())
    }

    /// Builds an orbit form from values on tuples of generator indices
    /// (any order; alternation is applied), checking syzygy compatibility.
    pub fn orbit_form(&self, degree: usize, values: impl IntoIterator<Item = (Vec<usize>, Polynomial)>) -> Result<OrbitForm> {
        let n = self.pushed.len();
        let mut out = OrbitForm { degree, generators: n, values: BTreeMap::new() };
        for (mut t, v) in values {
            if t.len() != degree {
                return Err(Error::ArityMismatch { expected: degree, got: t.len() });
            }
            if let Some(&bad) = t.iter().find(|&&i| i >= n) {
                return Err(Error::IndexOutOfRange { index: bad, nvars: n });
            }
            let Some(neg) = sort_with_sign(&mut t) else {
                continue;
            };
            let v = if neg { -v } else { v };
            let entry = out.values.entry(t).or_insert_with(|| Polynomial::zero(self.y_ring()));
            *entry = self.normal_form(&(&*entry + &v))?;
        }
        out.values.retain(|_, v| !v.is_zero());
        self.check_syzygies(&out)?;
        Ok(out)
    }

    /// The 0-form given by a class in `Q[y]/I`.
    pub fn function_form(&self, q: &Polynomial) -> Result<OrbitForm> {
        self.orbit_form(0, [(vec![], q.clone())])
    }

    pub fn zero_form(&self, degree: usize) -> OrbitForm {
        OrbitForm { degree, generators: self.pushed.len(), values: BTreeMap::new() }
    }

    fn check_syzygies(&self, form: &OrbitForm) -> Result<()> {
        if form.degree == 0 || form.values.is_empty() {
            return Ok(());
        }
        let zero = self.zero_class();
        let n = self.pushed.len();
        for c in self.generator_syzygies()? {
            for rest in increasing_tuples(n, form.degree - 1) {
                let mut acc = zero.clone();
                for (i, ci) in c.iter().enumerate() {
                    if ci.is_zero() {
                        continue;
                    }
                    let mut t = vec![i];
                    t.extend_from_slice(&rest);
                    acc = &acc + &(ci * &form.value(&t, &zero));
                }
                let nf = self.normal_form(&acc)?;
                if !nf.is_zero() {
                    return Err(Error::SyzygyViolation(format!(
                        "relation {c:?} gives {nf} on the tuple {:?}",
                        rest.iter().map(|i| i + 1).collect::<Vec<_>>()
                    )));
                }
            }
        }
        Ok(())
    }

    /// `θ(Z_1, …, Z_k)` for arbitrary fields in the span of the `Y_i`.
    pub fn evaluate_form(&self, form: &OrbitForm, fields: &[OrbitVectorField]) -> Result<Polynomial> {
        if fields.len() != form.degree {
            return Err(Error::ArityMismatch { expected: form.degree, got: fields.len() });
        }
        let zero = self.zero_class();
        let mut coeffs = Vec::with_capacity(fields.len());
        for z in fields {
            match self.express(z)? {
                Some(c) => coeffs.push(c),
                None => return Err(Error::Consistency(format!("{z} is not in the span of the pushed generators"))),
            }
        }
        // multilinear expansion over all index tuples
        let n = self.pushed.len();
        let mut acc = zero.clone();
        let mut idx = vec![0usize; form.degree];
        loop {
            let mut term = form.value(&idx, &zero);
            if !term.is_zero() {
                for (slot, &i) in idx.iter().enumerate() {
                    term = &term * &coeffs[slot][i];
                }
                acc = &acc + &term;
            }
            let mut s = 0;
            while s < idx.len() {
                idx[s] += 1;
                if idx[s] < n {
                    break;
                }
                idx[s] = 0;
                s += 1;
            }
            if s == idx.len() {
                break;
            }
        }
        self.normal_form(&acc)
    }

    /// Values `subduct(ϑ(X_{i_1}, …, X_{i_k}))` of an invariant semi-basic
    /// form.
    pub fn push_form(&self, w: &PolyDiffForm) -> Result<OrbitForm> {
        if w.ring() != self.x_ring() {
            return Err(Error::IncompatibleRings(w.ring().to_string(), self.x_ring().to_string()));
        }
        if !self.group().fixes(w)? {
            return Err(Error::NotInvariant(w.to_string()));
        }
        if let SemiBasicCheck::Fails { index, contraction } = semibasic_check(w, &self.lie)? {
            return Err(Error::NotSemiBasic { index, contraction: contraction.to_string() });
        }
        self.push_form_unchecked(w)
    }

    fn push_form_unchecked(&self, w: &PolyDiffForm) -> Result<OrbitForm> {
        let gens = self.module.generators();
        let mut values = Vec::new();
        for t in increasing_tuples(gens.len(), w.degree()) {
            let fields: Vec<_> = t.iter().map(|&i| gens[i].clone()).collect();
            let v = self.hilbert.subduct(&evaluate(w, &fields)?)?;
            values.push((t, v));
        }
        self.orbit_form(w.degree(), values)
    }

    /// An invariant semi-basic form pushing to `θ`, of least coefficient
    /// degree. The default bound is the largest degree of the pulled-back
    /// values plus the largest generator degree; it is raised once.
    pub fn pull_form(&self, form: &OrbitForm, degree_bound: Option<usize>) -> Result<PolyDiffForm> {
        if form.generators != self.pushed.len() {
            return Err(Error::DimensionMismatch { expected: self.pushed.len(), got: form.generators });
        }
        self.check_syzygies(form)?;
        let rx = self.x_ring();
        if form.degree == 0 {
            let q = form.value(&[], &self.zero_class());
            return Ok(PolyDiffForm::function(self.hilbert.compose(&q)?));
        }
        if form.is_zero() || form.degree > self.n() {
            return Ok(PolyDiffForm::zero(rx, form.degree));
        }
        let tuples = increasing_tuples(self.pushed.len(), form.degree);
        let mut targets = Vec::with_capacity(tuples.len());
        for t in &tuples {
            targets.push(self.hilbert.compose(&form.value(t, &self.zero_class()))?);
        }
        let top = targets.iter().filter_map(Polynomial::degree).max().unwrap_or(0) as usize;
        let gen_deg = self.module.generators().iter().filter_map(|g| g.degree()).max().unwrap_or(0) as usize;
        let (bound, raised) = match degree_bound {
            Some(b) => (b, b),
            None => (top + gen_deg, 2 * (top + gen_deg) + 1),
        };
        for b in (0..=bound).chain(raised.max(bound) + 1..=raised) {
            if let Some(w) = self.pull_at(form, &tuples, &targets, b)? {
                return Ok(w);
            }
        }
        Err(Error::PullNotFound(raised))
    }

    fn pull_at(&self, form: &OrbitForm, tuples: &[Vec<usize>], targets: &[Polynomial], bound: usize) -> Result<Option<PolyDiffForm>> {
        let n = self.n();
        let rx = self.x_ring();
        let k = form.degree;
        let gens = self.module.generators();
        let xi = self.lie.infinitesimal_fields();
        // invariant ansatz: Reynolds images of m dx_J, linearly independent
        let mut basis = Vec::new();
        let mut ech = Echelon::new();
        for m in monomials_up_to(n, bound as u32) {
            for j in increasing_tuples(n, k) {
                let mut w = PolyDiffForm::zero(rx, k);
                w.add_term(j, Polynomial::term(rx, m.clone(), rat(1)));
                let r = reynolds(&w, self.group())?;
                if r.is_zero() {
                    continue;
                }
                let coords: Vec<Polynomial> = increasing_tuples(n, k).iter().map(|t| r.coefficient(t)).collect();
                if ech.insert(flatten(&coords)) {
                    basis.push(r);
                }
            }
        }
        // each column: values on generator tuples, then contractions with X_ξ
        let sub_tuples = increasing_tuples(n, k - 1);
        let mut columns = Vec::with_capacity(basis.len());
        for b in &basis {
            let mut col = Vec::new();
            for t in tuples {
                let fields: Vec<_> = t.iter().map(|&i| gens[i].clone()).collect();
                col.push(evaluate(b, &fields)?);
            }
            for x in &xi {
                let c = interior(x, b)?;
                col.extend(sub_tuples.iter().map(|t| c.coefficient(t)));
            }
            columns.push(col);
        }
        let mut target = targets.to_vec();
        target.extend(std::iter::repeat(Polynomial::zero(rx)).take(xi.len() * sub_tuples.len()));
        let Some(sol) = solve_combination(&columns, &target) else {
            return Ok(None);
        };
        let mut w = PolyDiffForm::zero(rx, k);
        for (b, c) in basis.iter().zip(sol) {
            w = w.checked_add(&b.scale(&c))?;
        }
        if self.push_form(&w)? != *form {
            return Err(Error::Consistency(format!("pulled form {w} does not push back")));
        }
        Ok(Some(w))
    }

    /// `dθ = push(d(pull θ))`.
    pub fn orbit_d(&self, form: &OrbitForm) -> Result<OrbitForm> {
        let up = self.pull_form(form, None)?;
        self.push_form_unchecked(&d(&up))
    }

    /// `θ ∧ φ = push(pull θ ∧ pull φ)`.
    pub fn orbit_wedge(&self, a: &OrbitForm, b: &OrbitForm) -> Result<OrbitForm> {
        let w = wedge(&self.pull_form(a, None)?, &self.pull_form(b, None)?)?;
        self.push_form_unchecked(&w)
    }

    /// Decides whether a 1-form is `Σ A_j dy_j` restricted to `Σ`, i.e.
    /// whether `Σ_j A_j Y_i(y_j) ≡ θ(Y_i)` is solvable for all `i`.
    pub fn extend_check(&self, form: &OrbitForm) -> Result<ExtendResult> {
        if form.degree != 1 {
            return Err(Error::DimensionMismatch { expected: 1, got: form.degree });
        }
        let l = self.hilbert.len();
        let zero = self.zero_class();
        let columns: Vec<Vec<Polynomial>> =
            (0..l).map(|j| self.pushed.iter().map(|y| y.components[j].clone()).collect()).collect();
        let target: Vec<Polynomial> = (0..self.pushed.len()).map(|i| form.value(&[i], &zero)).collect();
        let problem = SubmoduleProblem::new(self.pushed.len(), columns, self.ideal.basis().clone())?;
        Ok(match problem.solve(&target)? {
            ModuleMembership::Member { witness } => {
                for (i, y) in self.pushed.iter().enumerate() {
                    let mut acc = zero.clone();
                    for (a, c) in witness.iter().zip(&y.components) {
                        acc = &acc + &(a * c);
                    }
                    if self.normal_form(&(&acc - &target[i]))? != zero {
                        return Err(Error::Consistency(format!("extension witness fails on Y{}", i + 1)));
                    }
                }
                ExtendResult::Extendable { witness }
            }
            ModuleMembership::NotMember { normal_form } => ExtendResult::NotExtendable { normal_form },
        })
    }
}
