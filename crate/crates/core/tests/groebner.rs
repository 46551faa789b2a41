use orbitcalc_core::algebra::{MonomialOrder, Polynomial, Ring};
use orbitcalc_core::groebner::{ModuleMembership, SubmoduleProblem};
use orbitcalc_core::groebner::{buchberger, eliminate, GroebnerBasis};

fn p(s: &str, r: Ring) -> Polynomial {
    Polynomial::parse(s, r).unwrap()
}

#[test]
fn reduced_bases() {
    let x = Ring::x(2);
    let gb = buchberger(&[p("x1", x), p("x1^2 + x2", x)], MonomialOrder::GradedReverseLex).unwrap();
    assert_eq!(gb.generators(), &[p("x2", x), p("x1", x)]);
    let y = Ring::y(3);
    let rel = buchberger(&[p("y3^2 - y1*y2", y)], MonomialOrder::GradedReverseLex).unwrap();
    assert_eq!(rel.len(), 1);
    assert!(rel.contains(&p("y3^2 - y1*y2", y)).unwrap());
    assert_eq!(rel.normal_form(&p("y1", y)).unwrap(), p("y1", y));
    assert!(GroebnerBasis::zero_ideal(y, MonomialOrder::GradedReverseLex).is_zero_ideal());
}

#[test]
fn elimination_recovers_relations() {
    let r = Ring::combined(2, 3);
    let gens = [p("y1 - x1^2", r), p("y2 - x2^2", r), p("y3 - x1*x2", r)];
    let e = eliminate(&gens, r).unwrap();
    assert_eq!(e.generators(), &[p("y1*y2 - y3^2", Ring::y(3))]);
    let r2 = Ring::combined(2, 2);
    let sym = eliminate(&[p("y1 - x1 - x2", r2), p("y2 - x1*x2", r2)], r2).unwrap();
    assert!(sym.is_zero_ideal());
}

#[test]
fn module_membership_and_syzygies() {
    let y = Ring::y(3);
    let ideal = buchberger(&[p("y1*y2 - y3^2", y)], MonomialOrder::GradedReverseLex).unwrap();
    let cols = vec![vec![p("y1", y), p("y3", y)], vec![p("y3", y), p("y2", y)]];
    let prob = SubmoduleProblem::new(2, cols.clone(), ideal.clone()).unwrap();
    match prob.solve(&cols[0]).unwrap() {
        ModuleMembership::Member { witness } => assert_eq!(witness[0], p("1", y)),
        other => panic!("{other:?}"),
    }
    assert!(!prob.solve(&[p("1", y), p("0", y)]).unwrap().is_member());
    let syz = prob.syzygies().unwrap();
    assert!(!syz.is_empty());
    for s in &syz {
        let v = prob.combine(s);
        for c in prob.reduce_mod_ideal(&v).unwrap() {
            assert!(c.is_zero());
        }
    }
}
