//! Seeded generators for property suites.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{ratio, Monomial, Polynomial, Ring};
use crate::group_action::{PolyDiffForm, PolyVectorField};

fn random_monomial<R: Rng + ?Sized>(rng: &mut R, nvars: usize, max_degree: u32) -> Monomial {
    let d = rng.gen_range(0..=max_degree);
    let mut e = vec![0u32; nvars];
    if nvars > 0 {
        for _ in 0..d {
            e[rng.gen_range(0..nvars)] += 1;
        }
    }
    Monomial::new(e)
}

/// Polynomial with at most `max_terms` terms of degree at most `max_degree`
/// and small rational coefficients.
pub fn random_polynomial<R: Rng + ?Sized>(
    rng: &mut R,
    ring: Ring,
    max_degree: u32,
    max_terms: usize,
) -> Polynomial {
    let k = rng.gen_range(0..=max_terms);
    Polynomial::from_terms(
        ring,
        (0..k).map(|_| {
            let m = random_monomial(rng, ring.nvars(), max_degree);
            let num = rng.gen_range(-5i64..=5);
            let den = *[1i64, 1, 1, 2, 3].choose(rng).unwrap();
            (m, ratio(num, den))
        }),
    )
}

/// Homogeneous polynomial of the given degree.
pub fn random_homogeneous<R: Rng + ?Sized>(rng: &mut R, ring: Ring, degree: u32, max_terms: usize) -> Polynomial {
    let k = rng.gen_range(1..=max_terms.max(1));
    Polynomial::from_terms(
        ring,
        (0..k).map(|_| {
            let mut e = vec![0u32; ring.nvars()];
            for _ in 0..degree {
                e[rng.gen_range(0..ring.nvars())] += 1;
            }
            (Monomial::new(e), ratio(rng.gen_range(-4i64..=4), 1))
        }),
    )
}

pub fn random_vector_field<R: Rng + ?Sized>(rng: &mut R, n: usize, max_degree: u32, max_terms: usize) -> PolyVectorField {
    let ring = Ring::x(n);
    PolyVectorField::new((0..n).map(|_| random_polynomial(rng, ring, max_degree, max_terms)).collect())
}

pub fn random_form<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    degree: usize,
    max_coeff_degree: u32,
    max_terms: usize,
) -> PolyDiffForm {
    let ring = Ring::x(n);
    let mut form = PolyDiffForm::zero(ring, degree);
    let count = rng.gen_range(0..=max_terms);
    let all: Vec<usize> = (0..n).collect();
    for _ in 0..count {
        let mut idx: Vec<usize> = all.choose_multiple(rng, degree).copied().collect();
        idx.sort_unstable();
        let coeff = random_polynomial(rng, ring, max_coeff_degree, 3);
        form.add_term(idx, coeff);
    }
    form
}
