//! Buchberger's algorithm with the sugar selection strategy, normal forms,
//! elimination, and module computations encoded through position tags.

mod module;

use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{Alphabet, Monomial, MonomialOrder, Polynomial, Rational, Ring};
use crate::error::{Error, Result};

pub use module::{module_solve, syzygies, ModuleMembership, SubmoduleProblem};

type Term = (Monomial, Rational);

/// Cooperative cancellation flag polled once per S-pair.
#[derive(Clone, Debug, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, AtomicOrdering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(AtomicOrdering::Relaxed)
    }
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    generators: Vec<Polynomial>,
    reduced: bool,
    // generators as term lists sorted ascending under `order`
    sorted: Vec<Vec<Term>>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.order == other.order && self.generators == other.generators
    }
}

impl GroebnerBasis {
    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn leading_monomial(&self, i: usize) -> &Monomial {
        &self.sorted[i].last().expect("basis elements are nonzero").0
    }

    /// Remainder of full multivariate division by the basis.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        if p.ring() != self.ring {
            return Err(Error::IncompatibleRings(p.ring().to_string(), self.ring.to_string()));
        }
        let rem = reduce_full(sort_terms(p, &self.order), &self.sorted, &self.order, &mut |c| c[0]);
        Ok(Polynomial::from_terms(self.ring, rem))
    }

    /// Normal form with a caller-chosen divisor at every step. Used to check
    /// that the remainder does not depend on the reduction path.
    #[cfg(test)]
    pub(crate) fn normal_form_with(&self, p: &Polynomial, pick: &mut dyn FnMut(&[usize]) -> usize) -> Polynomial {
        let rem = reduce_full(sort_terms(p, &self.order), &self.sorted, &self.order, pick);
        Polynomial::from_terms(self.ring, rem)
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// The zero ideal of `ring`.
    pub fn zero_ideal(ring: Ring, order: MonomialOrder) -> GroebnerBasis {
        GroebnerBasis { ring, order, generators: Vec::new(), reduced: true, sorted: Vec::new() }
    }
}

pub(crate) fn sort_terms(p: &Polynomial, order: &MonomialOrder) -> Vec<Term> {
    let mut t: Vec<Term> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    if *order != MonomialOrder::GradedReverseLex {
        t.sort_by(|a, b| order.compare(&a.0, &b.0));
    }
    t
}

/// `a - c*m*b` for ascending term lists.
fn sub_scaled(a: &[Term], c: &Rational, m: &Monomial, b: &[Term], order: &MonomialOrder) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    let scaled = |t: &Term| (t.0.mul(m), &t.1 * c);
    let mut pending_b = b.first().map(scaled);
    while i < a.len() || pending_b.is_some() {
        match (a.get(i), pending_b.as_ref()) {
            (Some(x), Some(y)) => match order.compare(&x.0, &y.0) {
                std::cmp::Ordering::Less => {
                    out.push(x.clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((y.0.clone(), -y.1.clone()));
                    j += 1;
                    pending_b = b.get(j).map(scaled);
                }
                std::cmp::Ordering::Equal => {
                    let v = &x.1 - &y.1;
                    if !v.is_zero() {
                        out.push((x.0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                    pending_b = b.get(j).map(scaled);
                }
            },
            (Some(x), None) => {
                out.push(x.clone());
                i += 1;
            }
            (None, Some(y)) => {
                out.push((y.0.clone(), -y.1.clone()));
                j += 1;
                pending_b = b.get(j).map(scaled);
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

fn reduce_full(
    mut p: Vec<Term>,
    basis: &[Vec<Term>],
    order: &MonomialOrder,
    pick: &mut dyn FnMut(&[usize]) -> usize,
) -> Vec<Term> {
    let mut rem = Vec::new();
    let mut candidates = Vec::new();
    while let Some((m, c)) = p.last() {
        candidates.clear();
        candidates.extend(
            basis
                .iter()
                .enumerate()
                .filter(|(_, g)| g.last().map_or(false, |(lm, _)| lm.divides(m)))
                .map(|(k, _)| k),
        );
        if candidates.is_empty() {
            rem.push(p.pop().unwrap());
            continue;
        }
        let g = &basis[pick(&candidates)];
        let (lm, lc) = g.last().unwrap();
        let q = m.div(lm).unwrap();
        let coef = c / lc;
        p = sub_scaled(&p, &coef, &q, g, order);
    }
    rem.reverse();
    rem
}

fn monic(mut t: Vec<Term>) -> Vec<Term> {
    if let Some((_, lc)) = t.last() {
        if !lc.is_one() {
            let inv = Rational::one() / lc;
            for term in &mut t {
                term.1 *= &inv;
            }
        }
    }
    t
}

fn total_degree(t: &[Term]) -> u32 {
    t.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[Polynomial], order: MonomialOrder) -> Result<GroebnerBasis> {
    buchberger_cancellable(gens, order, &CancelToken::new())
}

pub fn buchberger_cancellable(gens: &[Polynomial], order: MonomialOrder, cancel: &CancelToken) -> Result<GroebnerBasis> {
    let Some(first) = gens.first() else {
        return Err(Error::Parse("cannot infer the ring of an empty generator list".into()));
    };
    buchberger_in(first.ring(), gens, order, cancel)
}

/// Like [`buchberger`] with an explicit ring, so that an empty generator
/// list yields the zero ideal.
pub fn buchberger_in(ring: Ring, gens: &[Polynomial], order: MonomialOrder, cancel: &CancelToken) -> Result<GroebnerBasis> {
    for g in gens {
        if g.ring() != ring {
            return Err(Error::IncompatibleRings(g.ring().to_string(), ring.to_string()));
        }
    }
    let mut basis: Vec<Vec<Term>> = Vec::new();
    let mut sugar: Vec<u32> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let add = |h: Vec<Term>, s: u32, basis: &mut Vec<Vec<Term>>, sugar: &mut Vec<u32>, pairs: &mut Vec<Pair>, pending: &mut HashSet<(usize, usize)>| {
        let idx = basis.len();
        let lm_h = h.last().unwrap().0.clone();
        for (i, g) in basis.iter().enumerate() {
            let lm_g = &g.last().unwrap().0;
            let lcm = lm_g.lcm(&lm_h);
            let s_pair = (sugar[i] + lcm.degree() - lm_g.degree()).max(s + lcm.degree() - lm_h.degree());
            pairs.push(Pair { i, j: idx, lcm, sugar: s_pair });
            pending.insert((i, idx));
        }
        basis.push(h);
        sugar.push(s);
    };

    for g in gens {
        if g.is_zero() {
            continue;
        }
        let t = sort_terms(g, &order);
        let d = total_degree(&t);
        let h = reduce_full(t, &basis, &order, &mut |c| c[0]);
        if !h.is_empty() {
            add(monic(h), d, &mut basis, &mut sugar, &mut pairs, &mut pending);
        }
    }

    while !pairs.is_empty() {
        if cancel.is_cancelled() {
            return Err(Error::Cancelled);
        }
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let (p, q) = (&pairs[a], &pairs[b]);
                p.sugar
                    .cmp(&q.sugar)
                    .then_with(|| order.compare(&p.lcm, &q.lcm))
                    .then_with(|| (p.i, p.j).cmp(&(q.i, q.j)))
            })
            .unwrap();
        let pair = pairs.swap_remove(best);
        pending.remove(&(pair.i, pair.j));

        let lm_i = &basis[pair.i].last().unwrap().0;
        let lm_j = &basis[pair.j].last().unwrap().0;
        if lm_i.is_coprime(lm_j) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != pair.i
                && k != pair.j
                && basis[k].last().unwrap().0.divides(&pair.lcm)
                && !pending.contains(&(pair.i.min(k), pair.i.max(k)))
                && !pending.contains(&(pair.j.min(k), pair.j.max(k)))
        });
        if chain {
            continue;
        }

        let qi = pair.lcm.div(lm_i).unwrap();
        let qj = pair.lcm.div(lm_j).unwrap();
        let left: Vec<Term> = basis[pair.i].iter().map(|(m, c)| (m.mul(&qi), c.clone())).collect();
        let s = sub_scaled(&left, &Rational::one(), &qj, &basis[pair.j], &order);
        let h = reduce_full(s, &basis, &order, &mut |c| c[0]);
        if !h.is_empty() {
            add(monic(h), pair.sugar, &mut basis, &mut sugar, &mut pairs, &mut pending);
        }
    }

    Ok(reduce_basis(ring, order, basis))
}

fn reduce_basis(ring: Ring, order: MonomialOrder, basis: Vec<Vec<Term>>) -> GroebnerBasis {
    let mut minimal: Vec<Vec<Term>> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let lm = &g.last().unwrap().0;
        let redundant = basis.iter().enumerate().any(|(l, h)| {
            let lm_h = &h.last().unwrap().0;
            l != k && lm_h.divides(lm) && (lm_h != lm || l < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced: Vec<Vec<Term>> = (0..minimal.len())
        .map(|k| {
            let others: Vec<Vec<Term>> =
                minimal.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, g)| g.clone()).collect();
            monic(reduce_full(minimal[k].clone(), &others, &order, &mut |c| c[0]))
        })
        .collect();
    reduced.sort_by(|a, b| order.compare(&a.last().unwrap().0, &b.last().unwrap().0));
    let generators = reduced.iter().map(|t| Polynomial::from_terms(ring, t.iter().cloned())).collect();
    GroebnerBasis { ring, order, generators, reduced: true, sorted: reduced }
}

pub fn normal_form(p: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    gb.normal_form(p)
}

/// Gröbner basis of `⟨gens⟩ ∩ Q[y]` for generators in a combined `x, y`
/// ring, returned over the plain `y` ring in grevlex.
pub fn eliminate(gens: &[Polynomial], ring: Ring) -> Result<GroebnerBasis> {
    let full = elimination_basis(gens, ring)?;
    Ok(restrict_to_y(&full))
}

/// Full Gröbner basis in the block order with the `x` block first.
pub(crate) fn elimination_basis(gens: &[Polynomial], ring: Ring) -> Result<GroebnerBasis> {
    let Alphabet::Combined { x } = ring.alphabet() else {
        return Err(Error::IncompatibleRings(ring.to_string(), "a combined x,y ring".into()));
    };
    buchberger_in(ring, gens, MonomialOrder::BlockElimination { first_block: x }, &CancelToken::new())
}

pub(crate) fn restrict_to_y(full: &GroebnerBasis) -> GroebnerBasis {
    let ring = full.ring();
    let Alphabet::Combined { x } = ring.alphabet() else {
        unreachable!("elimination bases live in a combined ring")
    };
    let yring = Ring::y(ring.nvars() - x);
    let kept: Vec<Polynomial> = full
        .generators()
        .iter()
        .filter_map(|g| g.remap(yring, |i| i.checked_sub(x)))
        .collect();
    // the y-part of a reduced block-order basis is already reduced for grevlex
    let sorted: Vec<Vec<Term>> = kept.iter().map(|g| sort_terms(g, &MonomialOrder::GradedReverseLex)).collect();
    GroebnerBasis { ring: yring, order: MonomialOrder::GradedReverseLex, generators: kept, reduced: true, sorted }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::random::random_polynomial;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str, r: Ring) -> Polynomial {
        Polynomial::parse(s, r).unwrap()
    }

    fn gb(gens: &[&str], r: Ring) -> GroebnerBasis {
        let g: Vec<Polynomial> = gens.iter().map(|s| p(s, r)).collect();
        buchberger_in(r, &g, MonomialOrder::GradedReverseLex, &CancelToken::new()).unwrap()
    }

    /// Degree-bounded ideal membership by linear algebra: is `f` in the span
    /// of `m * g` over monomials `m` and generators `g` with deg(m*g) <= bound?
    fn in_ideal_bruteforce(f: &Polynomial, gens: &[Polynomial], bound: u32) -> bool {
        let r = f.ring();
        let mut cols = Vec::new();
        for g in gens {
            let dg = g.degree().unwrap();
            for m in crate::linalg::monomials_up_to(r.nvars(), bound.saturating_sub(dg)) {
                cols.push(vec![g.mul_monomial(&m, &rat(1))]);
            }
        }
        crate::linalg::solve_combination(&cols, &[f.clone()]).is_some()
    }

    #[test]
    fn relation_is_its_own_basis() {
        let r = Ring::y(3);
        let g = gb(&["y3^2 - y1*y2"], r);
        assert_eq!(g.generators().len(), 1);
        // monic under grevlex: leading monomial y1*y2
        assert_eq!(g.generators()[0], p("y1*y2 - y3^2", r));
        let again = buchberger(g.generators(), MonomialOrder::GradedReverseLex).unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn empty_and_zero_generators() {
        let r = Ring::x(2);
        assert!(gb(&[], r).is_zero_ideal());
        assert!(gb(&["0"], r).is_zero_ideal());
        assert!(buchberger(&[], MonomialOrder::Lex).is_err());
    }

    #[test]
    fn small_reduction() {
        let r = Ring::x(2);
        let g = gb(&["x1", "x1^2 + x2"], r);
        assert_eq!(g.generators(), &[p("x2", r), p("x1", r)]);
        let gens = [p("x1", r), p("x1^2 + x2", r)];
        assert!(in_ideal_bruteforce(&p("x2", r), &gens, 2));
        assert!(in_ideal_bruteforce(&p("x1", r), &gens, 2));
    }

    #[test]
    fn normal_forms_modulo_the_relation() {
        let r = Ring::y(3);
        let g = gb(&["y3^2 - y1*y2"], r);
        assert!(g.normal_form(&p("y3^2 - y1*y2", r)).unwrap().is_zero());
        assert_eq!(g.normal_form(&p("y1", r)).unwrap(), p("y1", r));
        // grevlex makes y1*y2 the leading monomial, so y3^2 is the canonical
        // representative of the class of y1*y2
        assert_eq!(g.normal_form(&p("y1*y2", r)).unwrap(), p("y3^2", r));
        assert_eq!(g.normal_form(&p("y3^2", r)).unwrap(), p("y3^2", r));
        let sigma = [p("x1^2", Ring::x(2)), p("x2^2", Ring::x(2)), p("x1*x2", Ring::x(2))];
        for s in ["y1*y2", "y3^2"] {
            let f = p(s, r);
            assert_eq!(
                g.normal_form(&f).unwrap().substitute(&sigma).unwrap(),
                f.substitute(&sigma).unwrap()
            );
        }
    }

    #[test]
    fn elimination_of_the_hilbert_graph() {
        let r = Ring::combined(2, 3);
        let gens = [p("y1 - x1^2", r), p("y2 - x2^2", r), p("y3 - x1*x2", r)];
        let e = eliminate(&gens, r).unwrap();
        assert_eq!(e.generators(), &[p("y1*y2 - y3^2", Ring::y(3))]);

        let r = Ring::combined(2, 2);
        let id = eliminate(&[p("y1 - x1", r), p("y2 - x2", r)], r).unwrap();
        assert!(id.is_zero_ideal());
        let sym = eliminate(&[p("y1 - x1 - x2", r), p("y2 - x1*x2", r)], r).unwrap();
        assert!(sym.is_zero_ideal());
    }

    #[test]
    fn elementary_symmetric_polynomials_are_independent_up_to_degree_6() {
        // brute force: no nonzero y-polynomial of degree <= 6 vanishes on (e1, e2)
        let rx = Ring::x(2);
        let vals = [p("x1 + x2", rx), p("x1*x2", rx)];
        let monos = crate::linalg::monomials_up_to(2, 6);
        let cols: Vec<Vec<Polynomial>> = monos
            .iter()
            .map(|m| vec![Polynomial::term(Ring::y(2), m.clone(), rat(1)).substitute(&vals).unwrap()])
            .collect();
        assert_eq!(crate::linalg::rank(&cols), monos.len());
    }

    #[test]
    fn elimination_agrees_with_substitution_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..15 {
            let n = rng.gen_range(1..=2);
            let l = rng.gen_range(1..=3);
            let rx = Ring::x(n);
            let sigma: Vec<Polynomial> = (0..l).map(|_| random_polynomial(&mut rng, rx, 2, 2)).collect();
            let rc = Ring::combined(n, l);
            let gens: Vec<Polynomial> = sigma
                .iter()
                .enumerate()
                .map(|(j, s)| &Polynomial::var(rc, n + j) - &s.remap(rc, Some).unwrap())
                .collect();
            let full = elimination_basis(&gens, rc).unwrap();
            let e = restrict_to_y(&full);
            for g in e.generators() {
                assert!(g.substitute(&sigma).unwrap().is_zero());
            }
            for _ in 0..10 {
                let f = random_polynomial(&mut rng, Ring::y(l), 3, 3);
                let vanishes = f.substitute(&sigma).unwrap().is_zero();
                assert_eq!(vanishes, e.contains(&f).unwrap());
            }
        }
    }

    #[test]
    fn reduction_path_does_not_matter() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let r = Ring::x(3);
        let gens: Vec<Polynomial> = (0..3).map(|_| random_polynomial(&mut rng, r, 3, 3)).collect();
        let g = buchberger(&gens, MonomialOrder::GradedReverseLex).unwrap();
        for _ in 0..500 {
            let f = random_polynomial(&mut rng, r, 4, 4);
            let first = g.normal_form(&f).unwrap();
            let mut last = |c: &[usize]| *c.last().unwrap();
            assert_eq!(first, g.normal_form_with(&f, &mut last));
            let mut state = rng.gen::<u64>();
            let mut random = |c: &[usize]| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                c[(state >> 33) as usize % c.len()]
            };
            assert_eq!(first, g.normal_form_with(&f, &mut random));
        }
    }

    #[test]
    fn normal_form_is_a_ring_map_modulo_the_ideal() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let r = Ring::y(3);
        let g = gb(&["y3^2 - y1*y2"], r);
        for _ in 0..200 {
            let a = random_polynomial(&mut rng, r, 3, 4);
            let b = random_polynomial(&mut rng, r, 3, 4);
            let lhs = g.normal_form(&(&a * &b)).unwrap();
            let rhs = g.normal_form(&(&g.normal_form(&a).unwrap() * &g.normal_form(&b).unwrap())).unwrap();
            assert_eq!(lhs, rhs);
            let nf = g.normal_form(&a).unwrap();
            assert_eq!(g.normal_form(&nf).unwrap(), nf);
        }
    }

    #[test]
    fn s_polynomials_reduce_to_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for order in [MonomialOrder::GradedReverseLex, MonomialOrder::Lex] {
            let r = Ring::x(3);
            let gens: Vec<Polynomial> = (0..3).map(|_| random_polynomial(&mut rng, r, 2, 3)).collect();
            let g = buchberger_in(r, &gens, order, &CancelToken::new()).unwrap();
            for f in &gens {
                assert!(g.contains(f).unwrap());
            }
            let gs = g.generators();
            for i in 0..gs.len() {
                for j in i + 1..gs.len() {
                    let (a, b) = (&g.sorted[i], &g.sorted[j]);
                    let lcm = a.last().unwrap().0.lcm(&b.last().unwrap().0);
                    let qa = lcm.div(&a.last().unwrap().0).unwrap();
                    let qb = lcm.div(&b.last().unwrap().0).unwrap();
                    let s = &gs[i].mul_monomial(&qa, &rat(1)) - &gs[j].mul_monomial(&qb, &rat(1));
                    assert!(g.normal_form(&s).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn cancellation_is_honoured() {
        let r = Ring::x(3);
        let token = CancelToken::new();
        token.cancel();
        let gens = [p("x1^2 - x2", r), p("x1*x2 - x3", r)];
        let res = buchberger_in(r, &gens, MonomialOrder::GradedReverseLex, &token);
        assert!(matches!(res, Err(Error::Cancelled)));
    }
}
