//! Exact sparse linear algebra over Q for the degree-bounded ansatz solves.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::{Monomial, Polynomial, Rational};

/// Vector of polynomials flattened to (component, monomial) coordinates.
pub(crate) type SparseVec = BTreeMap<(usize, Monomial), Rational>;

pub(crate) fn flatten(v: &[Polynomial]) -> SparseVec {
    let mut out = SparseVec::new();
    for (i, p) in v.iter().enumerate() {
        for (m, c) in p.terms() {
            out.insert((i, m.clone()), c.clone());
        }
    }
    out
}

fn axpy_comb(v: &mut BTreeMap<usize, Rational>, c: &Rational, row: &BTreeMap<usize, Rational>) {
    for (k, a) in row {
        let entry = v.entry(*k).or_insert_with(Rational::zero);
        *entry -= c * a;
        if entry.is_zero() {
            v.remove(k);
        }
    }
}

/// Incremental row echelon form that remembers how each row was built from
/// the inserted vectors.
#[derive(Default)]
pub(crate) struct Echelon {
    rows: BTreeMap<(usize, Monomial), (SparseVec, BTreeMap<usize, Rational>)>,
    inserted: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns `(remainder, comb)` with `v = remainder - Σ comb[u]·input_u`.
    pub fn reduce(&self, v: SparseVec) -> (SparseVec, BTreeMap<usize, Rational>) {
        let mut v = v;
        let mut comb = BTreeMap::new();
        let mut rem = SparseVec::new();
        while let Some((k, c)) = v.pop_last() {
            match self.rows.get(&k) {
                Some((row, rcomb)) => {
                    // row has unit pivot at k, which was just popped
                    for (k2, a) in row.range(..k.clone()) {
                        let entry = v.entry(k2.clone()).or_insert_with(Rational::zero);
                        *entry -= &c * a;
                        if entry.is_zero() {
                            v.remove(k2);
                        }
                    }
                    axpy_comb(&mut comb, &c, rcomb);
                }
                None => {
                    rem.insert(k, c);
                }
            }
        }
        (rem, comb)
    }

    /// Inserts the next input vector; returns whether it was independent.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let u = self.inserted;
        self.inserted += 1;
        let (rem, mut comb) = self.reduce(v);
        if rem.is_empty() {
            return false;
        }
        *comb.entry(u).or_insert_with(Rational::zero) += Rational::one();
        let (pivot, lead) = rem.last_key_value().map(|(k, c)| (k.clone(), c.clone())).unwrap();
        let inv = Rational::one() / lead;
        let row: SparseVec = rem.into_iter().map(|(k, c)| (k, c * &inv)).collect();
        let rcomb = comb.into_iter().map(|(k, c)| (k, c * &inv)).collect();
        self.rows.insert(pivot, (row, rcomb));
        true
    }

    #[cfg(test)]
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Finds rational `c` with `Σ c_u · columns[u] = target`, if any. Dependent
/// columns get coefficient zero.
pub(crate) fn solve_combination(columns: &[Vec<Polynomial>], target: &[Polynomial]) -> Option<Vec<Rational>> {
    let mut ech = Echelon::new();
    for col in columns {
        ech.insert(flatten(col));
    }
    let (rem, comb) = ech.reduce(flatten(target));
    if !rem.is_empty() {
        return None;
    }
    let mut sol = vec![Rational::zero(); columns.len()];
    for (u, c) in comb {
        sol[u] = -c;
    }
    Some(sol)
}

#[cfg(test)]
pub(crate) fn rank(columns: &[Vec<Polynomial>]) -> usize {
    let mut ech = Echelon::new();
    for col in columns {
        ech.insert(flatten(col));
    }
    ech.rank()
}

/// All monomials of exactly degree `d`, in descending grevlex order.
pub(crate) fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == nvars {
            cur[i] = left;
            out.push(Monomial::new(cur.clone()));
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(nvars, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if nvars == 0 {
        return if d == 0 { vec![Monomial::new(vec![])] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(nvars, 0, d, &mut vec![0; nvars], &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

pub(crate) fn monomials_up_to(nvars: usize, d: u32) -> Vec<Monomial> {
    (0..=d).flat_map(|k| monomials_of_degree(nvars, k)).collect()
}
