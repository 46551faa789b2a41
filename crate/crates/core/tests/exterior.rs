use orbitcalc_core::algebra::{Polynomial, Ring};
use orbitcalc_core::exterior::{
    d, homotopy, interior, lie_derivative, lie_derivative_direct, poincare_primitive, pullback, wedge,
};
use orbitcalc_core::golden::{s2_group, z2_group};
use orbitcalc_core::group_action::{act_form, PolyDiffForm};
use orbitcalc_core::random::{random_form, random_vector_field};
use orbitcalc_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn x(s: &str) -> Polynomial {
    Polynomial::parse(s, Ring::x(2)).unwrap()
}

fn form(terms: &[(&[usize], &str)]) -> PolyDiffForm {
    let deg = terms.first().map_or(0, |t| t.0.len());
    PolyDiffForm::from_terms(2, deg, terms.iter().map(|(i, c)| (i.to_vec(), x(c)))).unwrap()
}

#[test]
fn pullback_along_hilbert_map() {
    let sigma = [x("x1^2"), x("x2^2"), x("x1*x2")];
    let dy1 = PolyDiffForm::basis_in(Ring::y(3), &[0]);
    let dy3 = PolyDiffForm::basis_in(Ring::y(3), &[2]);
    assert_eq!(pullback(&sigma, &dy1).unwrap(), form(&[(&[0], "2*x1")]));
    assert_eq!(pullback(&sigma, &dy3).unwrap(), form(&[(&[0], "x2"), (&[1], "x1")]));
}

#[test]
fn primitives() {
    let area = form(&[(&[0, 1], "2")]);
    assert_eq!(poincare_primitive(&area).unwrap(), form(&[(&[0], "-x2"), (&[1], "x1")]));
    assert_eq!(poincare_primitive(&form(&[(&[0], "1")])).unwrap().as_function().unwrap(), x("x1"));
    assert_eq!(poincare_primitive(&form(&[(&[0], "2*x1")])).unwrap().as_function().unwrap(), x("x1^2"));
    let rot = form(&[(&[0], "-x2"), (&[1], "x1")]);
    assert!(matches!(poincare_primitive(&rot), Err(Error::NotClosed(_))));
}

#[test]
fn randomized_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let groups = [z2_group(), s2_group()];
    for t in 0..200 {
        let n = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=n);
        let w = random_form(&mut rng, n, k, 3, 3);
        let a = random_vector_field(&mut rng, n, 2, 3);
        let b = random_vector_field(&mut rng, n, 2, 3);
        assert_eq!(lie_derivative(&a, &w).unwrap(), lie_derivative_direct(&a, &w).unwrap());
        // interior is an anti-derivation and squares to zero
        if k >= 2 {
            assert!(interior(&a, &interior(&a, &w).unwrap()).unwrap().is_zero());
        }
        let l = rng.gen_range(0..=n - k);
        let v = random_form(&mut rng, n, l, 2, 2);
        let lhs = interior(&b, &wedge(&w, &v).unwrap()).unwrap();
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let tail = if v.degree() == 0 {
            PolyDiffForm::zero(w.ring(), k + v.degree() - 1)
        } else {
            wedge(&w, &interior(&b, &v).unwrap()).unwrap().scale(&orbitcalc_core::algebra::rat(sign))
        };
        let rhs = wedge(&interior(&b, &w).unwrap(), &v).unwrap().checked_add(&tail).unwrap();
        assert_eq!(lhs, rhs);

        let g = &groups[t % 2];
        let k2 = rng.gen_range(1..=2);
        let w2 = random_form(&mut rng, 2, k2, 3, 3);
        let e = &g.elements()[1];
        assert_eq!(act_form(e, &homotopy(&w2).unwrap()).unwrap(), homotopy(&act_form(e, &w2).unwrap()).unwrap());
        // pullback commutes with d
        let phi = [x("x1 + x2^2"), x("x1*x2")];
        let k3 = rng.gen_range(0..=2);
        let on_target = random_form(&mut rng, 2, k3, 2, 2);
        assert_eq!(pullback(&phi, &d(&on_target)).unwrap(), d(&pullback(&phi, &on_target).unwrap()));
    }
}
