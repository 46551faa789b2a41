use orbitcalc_core::algebra::{Polynomial, Ring};
use orbitcalc_core::golden::{z2_group, z2_upstairs_forms};
use orbitcalc_core::group_action::LieAlgebraAction;
use orbitcalc_core::io::{orbit_form_from_json, orbit_form_to_json};
use orbitcalc_core::quotient::{ExtendResult, OrbitSpace};
use orbitcalc_core::Error;

fn y(s: &str) -> Polynomial {
    Polynomial::parse(s, Ring::y(3)).unwrap()
}

fn space() -> OrbitSpace {
    OrbitSpace::new(z2_group(), LieAlgebraAction::empty(2), None, None).unwrap()
}

#[test]
fn theta4_is_a_genuine_orbit_form() {
    let s = space();
    let t4 = s.push_form(&z2_upstairs_forms()[3]).unwrap();
    match s.extend_check(&t4).unwrap() {
        ExtendResult::NotExtendable { normal_form } => assert!(normal_form.iter().any(|p| !p.is_zero())),
        other => panic!("{other:?}"),
    }
    // wedge of two extendable forms pulls back to the wedge upstairs
    let t1 = s.push_form(&z2_upstairs_forms()[0]).unwrap();
    let t2 = s.push_form(&z2_upstairs_forms()[1]).unwrap();
    let w = s.orbit_wedge(&t1, &t2).unwrap();
    assert_eq!(s.evaluate_form(&w, &[s.pushed_generators()[0].clone(), s.pushed_generators()[2].clone()]).unwrap(), s.ideal().normal_form(&y("4*y1*y3")).unwrap());
}

#[test]
fn json_round_trip_of_orbit_forms() {
    let s = space();
    for t in z2_upstairs_forms() {
        let f = s.push_form(&t).unwrap();
        assert_eq!(orbit_form_from_json(&s, &orbit_form_to_json(&f)).unwrap(), f);
    }
}

#[test]
fn lifting_requires_tangency() {
    let s = space();
    let bad = s.vector_field(vec![y("1"), y("0"), y("0")]);
    assert!(matches!(bad, Err(Error::NotTangent(_))));
    let g = s.generator_syzygies().unwrap();
    assert!(!g.is_empty());
}
