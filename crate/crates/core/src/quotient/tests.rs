use super::*;
use crate::exterior::d;
use crate::group_action::{Matrix, PolyDiffForm, DEFAULT_CAP};

fn z2() -> OrbitSpace {
    let g = Matrix::from_ints(&[&[-1, 0], &[0, -1]]).unwrap();
    let group = FiniteMatrixGroup::closure(2, &[g], DEFAULT_CAP).unwrap();
    OrbitSpace::new(group, LieAlgebraAction::empty(2), None, None).unwrap()
}

fn x(s: &str) -> Polynomial {
    Polynomial::parse(s, Ring::x(2)).unwrap()
}

fn y(s: &str) -> Polynomial {
    Polynomial::parse(s, Ring::y(3)).unwrap()
}

fn one_form(a: &str, b: &str) -> PolyDiffForm {
    PolyDiffForm::from_terms(2, 1, [(vec![0], x(a)), (vec![1], x(b))]).unwrap()
}

#[test]
fn pushed_generators() {
    let s = z2();
    let ys: Vec<Vec<Polynomial>> = s.pushed_generators().iter().map(|v| v.components().to_vec()).collect();
    assert_eq!(
        ys,
        vec![
            vec![y("2*y1"), y("0"), y("y3")],
            vec![y("2*y3"), y("0"), y("y2")],
            vec![y("0"), y("2*y3"), y("y1")],
            vec![y("0"), y("2*y2"), y("y3")],
        ]
    );
    assert!(s.push_vf(&PolyVectorField::zero(2)).unwrap().is_zero());
    let odd = PolyVectorField::new(vec![x("1"), x("0")]);
    assert!(matches!(s.push_vf(&odd), Err(Error::NotInvariant(_))));
}

#[test]
fn lifts_round_trip() {
    let s = z2();
    for yv in s.pushed_generators() {
        let up = s.lift_vf(yv, None).unwrap();
        assert_eq!(&s.push_vf(&up).unwrap(), yv);
    }
    assert!(s.lift_vf(&s.zero_vf(), None).unwrap().is_zero());
    let not_tangent = OrbitVectorField { components: vec![y("1"), y("0"), y("0")] };
    assert!(matches!(s.lift_vf(&not_tangent, None), Err(Error::NotTangent(_))));
}

#[test]
fn bracket_matches_upstairs() {
    let s = z2();
    let ys = s.pushed_generators();
    let xs = s.module().generators();
    for a in 0..4 {
        for b in 0..4 {
            let intrinsic = s.orbit_bracket(&ys[a], &ys[b]).unwrap();
            let upstairs = s.push_vf(&xs[a].bracket(&xs[b]).unwrap()).unwrap();
            assert_eq!(intrinsic, upstairs, "[Y{}, Y{}]", a + 1, b + 1);
        }
    }
    assert!(s.orbit_bracket(&ys[0], &ys[3]).unwrap().is_zero());
}

#[test]
fn forms_and_extension() {
    let s = z2();
    let theta1 = s.push_form(&one_form("2*x1", "0")).unwrap();
    assert_eq!(
        theta1.values().map(|(t, v)| (t.clone(), v.clone())).collect::<Vec<_>>(),
        vec![(vec![0], y("2*y1")), (vec![1], y("2*y3"))]
    );
    assert_eq!(
        s.extend_check(&theta1).unwrap(),
        ExtendResult::Extendable { witness: vec![y("1"), y("0"), y("0")] }
    );
    let theta4 = s.push_form(&one_form("-x2", "x1")).unwrap();
    let zero = y("0");
    let vals: Vec<Polynomial> = (0..4).map(|i| theta4.value(&[i], &zero)).collect();
    assert_eq!(vals, vec![y("-y3"), y("-y2"), y("y1"), y("y3")]);
    assert!(!s.extend_check(&theta4).unwrap().is_extendable());
    assert_eq!(s.pull_form(&theta4, None).unwrap(), one_form("-x2", "x1"));
    let d4 = s.orbit_d(&theta4).unwrap();
    assert!(!d4.is_zero());
    assert_eq!(d4, s.push_form(&d(&one_form("-x2", "x1"))).unwrap());
    assert!(s.orbit_d(&d4).unwrap().is_zero());
    assert!(s.orbit_d(&theta1).unwrap().is_zero());
    assert_eq!(s.orbit_d(&s.function_form(&y("y1")).unwrap()).unwrap(), theta1);
}

#[test]
fn syzygy_violations_are_rejected() {
    let s = z2();
    // y3*Y1 - y1*Y2 = 0 mod I, so a value on Y1 alone is inconsistent
    assert!(matches!(s.orbit_form(1, [(vec![0], y("1"))]), Err(Error::SyzygyViolation(_))));
}
