//! Submodules of `R^r` modulo an ideal, encoded in the scalar engine: a
//! vector `(v_1..v_r)` becomes `Σ e_i v_i` in a ring with position tags
//! `e_i`, the products `e_a e_b` are added to the ideal, and tags are
//! compared first (position over term).
//!
//! Every column also carries its own tracking tag, placed after the `r`
//! ambient positions. Reducing a target by the augmented basis leaves the
//! negated witness in the tracking positions, and basis elements with no
//! ambient part generate the syzygies.

use std::sync::OnceLock;

use super::{buchberger_in, CancelToken, GroebnerBasis};
use crate::algebra::{Monomial, MonomialOrder, Polynomial, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum ModuleMembership {
    /// Coefficients, one per column, with `Σ witness_k · column_k ≡ target`.
    Member { witness: Vec<Polynomial> },
    /// The nonzero module normal form of the target.
    NotMember { normal_form: Vec<Polynomial> },
}

impl ModuleMembership {
    pub fn is_member(&self) -> bool {
        matches!(self, ModuleMembership::Member { .. })
    }
}

#[derive(Debug)]
pub struct SubmoduleProblem {
    ring: Ring,
    rank: usize,
    columns: Vec<Vec<Polynomial>>,
    ideal: GroebnerBasis,
    augmented: OnceLock<Result<GroebnerBasis>>,
}

impl SubmoduleProblem {
    pub fn new(rank: usize, columns: Vec<Vec<Polynomial>>, ideal: GroebnerBasis) -> Result<Self> {
        let ring = ideal.ring();
        for col in &columns {
            if col.len() != rank {
                return Err(Error::RankMismatch { expected: rank, got: col.len() });
            }
            for p in col {
                if p.ring() != ring {
                    return Err(Error::IncompatibleRings(p.ring().to_string(), ring.to_string()));
                }
            }
        }
        Ok(SubmoduleProblem { ring, rank, columns, ideal, augmented: OnceLock::new() })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn columns(&self) -> &[Vec<Polynomial>] {
        &self.columns
    }

    pub fn ideal(&self) -> &GroebnerBasis {
        &self.ideal
    }

    fn tags(&self) -> usize {
        self.rank + self.columns.len()
    }

    fn tagged_ring(&self) -> Ring {
        Ring::tagged(self.tags(), self.ring.nvars())
    }

    fn encode(&self, v: &[Polynomial], offset: usize) -> Polynomial {
        let tr = self.tagged_ring();
        let tags = self.tags();
        let mut out = Polynomial::zero(tr);
        for (i, p) in v.iter().enumerate() {
            let lifted = p.remap(tr, |j| Some(tags + j)).expect("base variables fit");
            out = &out + &(&lifted * &Polynomial::var(tr, offset + i));
        }
        out
    }

    /// Splits a linear-in-tags polynomial into (ambient part, tracking part).
    fn decode(&self, p: &Polynomial) -> (Vec<Polynomial>, Vec<Polynomial>) {
        let tags = self.tags();
        let mut ambient = vec![Polynomial::zero(self.ring); self.rank];
        let mut tracking = vec![Polynomial::zero(self.ring); self.columns.len()];
        for (m, c) in p.terms() {
            let e = m.exponents();
            let pos = (0..tags).find(|&t| e[t] > 0).expect("module elements are tagged");
            debug_assert_eq!(e[..tags].iter().sum::<u32>(), 1);
            let base = Monomial::new(e[tags..].to_vec());
            let term = Polynomial::term(self.ring, base, c.clone());
            if pos < self.rank {
                ambient[pos] = &ambient[pos] + &term;
            } else {
                tracking[pos - self.rank] = &tracking[pos - self.rank] + &term;
            }
        }
        (ambient, tracking)
    }

    fn augmented_basis(&self) -> Result<&GroebnerBasis> {
        self.augmented
            .get_or_init(|| {
                let tr = self.tagged_ring();
                let tags = self.tags();
                let mut gens = Vec::new();
                for a in 0..tags {
                    for b in a..tags {
                        gens.push(&Polynomial::var(tr, a) * &Polynomial::var(tr, b));
                    }
                }
                for (k, col) in self.columns.iter().enumerate() {
                    let mut unit = vec![Polynomial::zero(self.ring); self.columns.len()];
                    unit[k] = Polynomial::one(self.ring);
                    gens.push(&self.encode(col, 0) + &self.encode(&unit, self.rank));
                }
                for g in self.ideal.generators() {
                    for i in 0..self.rank {
                        let mut v = vec![Polynomial::zero(self.ring); self.rank];
                        v[i] = g.clone();
                        gens.push(self.encode(&v, 0));
                    }
                }
                buchberger_in(tr, &gens, MonomialOrder::PositionOverTerm { tags }, &CancelToken::new())
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    fn is_tag_product(&self, p: &Polynomial) -> bool {
        let tags = self.tags();
        p.terms().all(|(m, _)| m.exponents()[..tags].iter().sum::<u32>() >= 2)
    }

    /// Reduces each component modulo the ideal.
    pub fn reduce_mod_ideal(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>> {
        v.iter().map(|p| self.ideal.normal_form(p)).collect()
    }

    pub fn combine(&self, coefficients: &[Polynomial]) -> Vec<Polynomial> {
        let mut out = vec![Polynomial::zero(self.ring); self.rank];
        for (c, col) in coefficients.iter().zip(&self.columns) {
            for (o, p) in out.iter_mut().zip(col) {
                *o = &*o + &(c * p);
            }
        }
        out
    }

    pub fn solve(&self, target: &[Polynomial]) -> Result<ModuleMembership> {
        if target.len() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, got: target.len() });
        }
        let gb = self.augmented_basis()?;
        let rem = gb.normal_form(&self.encode(target, 0))?;
        let (ambient, tracking) = self.decode(&rem);
        if ambient.iter().any(|p| !p.is_zero()) {
            return Ok(ModuleMembership::NotMember { normal_form: ambient });
        }
        let witness: Vec<Polynomial> = tracking.iter().map(|p| -p).collect();
        let recon = self.combine(&witness);
        for (r, t) in recon.iter().zip(target) {
            if !self.ideal.normal_form(&(r - t))?.is_zero() {
                return Err(Error::Consistency(format!("module witness fails to reconstruct {t}")));
            }
        }
        Ok(ModuleMembership::Member { witness })
    }

    /// Generators of `{c : Σ c_k column_k ≡ 0 mod ideal}`, each verified.
    pub fn syzygies(&self) -> Result<Vec<Vec<Polynomial>>> {
        let gb = self.augmented_basis()?;
        let mut out = Vec::new();
        for g in gb.generators() {
            if self.is_tag_product(g) {
                continue;
            }
            let (ambient, tracking) = self.decode(g);
            if ambient.iter().all(Polynomial::is_zero) {
                let recon = self.combine(&tracking);
                for r in &recon {
                    if !self.ideal.normal_form(r)?.is_zero() {
                        return Err(Error::Consistency(format!("syzygy {tracking:?} does not annihilate")));
                    }
                }
                out.push(tracking);
            }
        }
        Ok(out)
    }

    /// Canonical representative of a coefficient vector modulo syzygies.
    pub fn reduce_coefficients(&self, coefficients: &[Polynomial]) -> Result<Vec<Polynomial>> {
        if coefficients.len() != self.columns.len() {
            return Err(Error::RankMismatch { expected: self.columns.len(), got: coefficients.len() });
        }
        let gb = self.augmented_basis()?;
        // encode the tracking part alone; elements with an ambient part lead
        // with ambient tags and cannot reduce it
        let rem = gb.normal_form(&self.encode(coefficients, self.rank))?;
        Ok(self.decode(&rem).1)
    }
}

pub fn module_solve(target: &[Polynomial], problem: &SubmoduleProblem) -> Result<ModuleMembership> {
    problem.solve(target)
}

pub fn syzygies(columns: Vec<Vec<Polynomial>>, ideal: &GroebnerBasis) -> Result<Vec<Vec<Polynomial>>> {
    let rank = columns.first().map_or(0, Vec::len);
    SubmoduleProblem::new(rank, columns, ideal.clone())?.syzygies()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::buchberger;

    fn y(s: &str) -> Polynomial {
        Polynomial::parse(s, Ring::y(3)).unwrap()
    }

    fn relation() -> GroebnerBasis {
        buchberger(&[y("y3^2 - y1*y2")], MonomialOrder::GradedReverseLex).unwrap()
    }

    fn zero_ideal() -> GroebnerBasis {
        GroebnerBasis::zero_ideal(Ring::y(3), MonomialOrder::GradedReverseLex)
    }

    #[test]
    fn column_membership() {
        let cols = vec![vec![y("y1"), y("y2")], vec![y("y3"), y("0")]];
        let prob = SubmoduleProblem::new(2, cols.clone(), zero_ideal()).unwrap();
        match prob.solve(&cols[0]).unwrap() {
            ModuleMembership::Member { witness } => assert_eq!(witness, vec![y("1"), y("0")]),
            other => panic!("expected member, got {other:?}"),
        }
        assert!(!prob.solve(&[y("1"), y("0")]).unwrap().is_member());
        assert!(matches!(prob.solve(&[y("1")]), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn ideal_padding_absorbs_relation_multiples() {
        let cols = vec![vec![y("y1"), y("y2")]];
        let prob = SubmoduleProblem::new(2, cols, relation()).unwrap();
        match prob.solve(&[y("y3^2 - y1*y2"), y("0")]).unwrap() {
            ModuleMembership::Member { witness } => assert!(witness[0].is_zero()),
            other => panic!("expected member, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_columns_give_one_syzygy() {
        let syz = syzygies(vec![vec![y("1")], vec![y("1")]], &zero_ideal()).unwrap();
        assert_eq!(syz, vec![vec![y("1"), y("-1")]]);
        assert!(syzygies(vec![vec![y("1")]], &zero_ideal()).unwrap().is_empty());
    }

    #[test]
    fn syzygies_modulo_the_relation() {
        // y3*(y1, y3) - y1*(y3, y2) = (0, y3^2 - y1*y2) vanishes mod I only
        let cols = vec![vec![y("y1"), y("y3")], vec![y("y3"), y("y2")]];
        assert!(syzygies(cols.clone(), &zero_ideal()).unwrap().is_empty());
        let syz = syzygies(cols.clone(), &relation()).unwrap();
        assert!(!syz.is_empty());
        let prob = SubmoduleProblem::new(2, cols, relation()).unwrap();
        let witness = prob.reduce_coefficients(&[y("y3"), y("-y1")]).unwrap();
        assert!(witness.iter().all(Polynomial::is_zero));
    }
}
