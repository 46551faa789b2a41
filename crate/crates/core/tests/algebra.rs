use orbitcalc_core::algebra::{format_rational, parse_rational, ratio, Monomial, MonomialOrder, Polynomial, Ring};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use orbitcalc_core::random::random_polynomial;

fn x(s: &str) -> Polynomial {
    Polynomial::parse(s, Ring::x(3)).unwrap()
}

#[test]
fn parse_and_print() {
    assert_eq!(x("x1*x2 - x3^2 + 1/2").to_string(), "x1*x2 - x3^2 + 1/2");
    assert_eq!(x("x2*x1 + x1*x2 - 1/3*x2^3").to_string(), "-1/3*x2^3 + 2*x1*x2");
    assert!(Polynomial::parse("(x1 + x2)^2", Ring::x(3)).is_err());
    assert!(Polynomial::parse("y1", Ring::x(3)).is_err());
    assert!(Polynomial::parse("x4", Ring::x(3)).is_err());
    assert!(Polynomial::parse("x1 +", Ring::x(3)).is_err());
    assert_eq!(format_rational(&parse_rational("-6/4").unwrap()), "-3/2");
}

#[test]
fn grevlex_orders_by_degree_then_reverse_lex() {
    let a = Monomial::new(vec![1, 0, 1]);
    let b = Monomial::new(vec![0, 2, 0]);
    // x1*x3 < x2^2 in grevlex: last variable decides
    assert!(a < b);
    assert!(Monomial::new(vec![0, 0, 3]) > b);
    assert_ne!(MonomialOrder::GradedReverseLex, MonomialOrder::Lex);
}

#[test]
fn substitution_composes() {
    let p = Polynomial::parse("y1*y2 - y3^2", Ring::y(3)).unwrap();
    let sigma = [x("x1^2"), x("x2^2"), x("x1*x2")];
    assert!(p.substitute(&sigma).unwrap().is_zero());
    let q = x("x1^3 - x2");
    assert_eq!(q.partial_derivative(0).unwrap(), x("3*x1^2"));
    assert_eq!(q.evaluate(&[ratio(2, 1), ratio(1, 1), ratio(0, 1)]).unwrap(), ratio(7, 1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_laws(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = Ring::x(3);
        let a = random_polynomial(&mut rng, r, 3, 4);
        let b = random_polynomial(&mut rng, r, 3, 4);
        let c = random_polynomial(&mut rng, r, 3, 4);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(Polynomial::parse(&a.to_string(), r).unwrap(), a.clone());
        // product rule
        let lhs = (&a * &b).partial_derivative(1).unwrap();
        let rhs = &(&a.partial_derivative(1).unwrap() * &b) + &(&a * &b.partial_derivative(1).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}
