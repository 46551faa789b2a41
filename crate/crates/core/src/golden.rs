//! The worked `Z2 = {±I}` example on `R^2`, run end to end as a list of
//! named checks. Output is deterministic for a given seed.

use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Polynomial, Ring};
use crate::error::{Error, Result};
use crate::exterior::{d, interior, poincare_primitive, semibasic_check};
use crate::group_action::{FiniteMatrixGroup, LieAlgebraAction, Matrix, PolyDiffForm, PolyVectorField, DEFAULT_CAP};
use crate::invariants::{EquivariantModule, HilbertMap};
use crate::quotient::{ExtendResult, OrbitForm, OrbitSpace, OrbitVectorField};
use crate::random::random_polynomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenReport {
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl GoldenReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self) -> String {
        let mut out = format!("golden suite (seed {})\n", self.seed);
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "[{mark}] {}: {}", c.name, c.detail);
        }
        let ok = self.checks.iter().filter(|c| c.passed).count();
        let _ = writeln!(out, "{ok}/{} checks passed", self.checks.len());
        out
    }
}

fn x(s: &str) -> Polynomial {
    Polynomial::parse(s, Ring::x(2)).expect("static polynomial")
}

fn y(s: &str) -> Polynomial {
    Polynomial::parse(s, Ring::y(3)).expect("static polynomial")
}

fn one_form(a: &str, b: &str) -> PolyDiffForm {
    PolyDiffForm::from_terms(2, 1, [(vec![0], x(a)), (vec![1], x(b))]).expect("static form")
}

pub fn z2_group() -> FiniteMatrixGroup {
    let minus = Matrix::from_ints(&[&[-1, 0], &[0, -1]]).expect("static matrix");
    FiniteMatrixGroup::closure(2, &[minus], DEFAULT_CAP).expect("order two")
}

pub fn s2_group() -> FiniteMatrixGroup {
    let swap = Matrix::from_ints(&[&[0, 1], &[1, 0]]).expect("static matrix");
    FiniteMatrixGroup::closure(2, &[swap], DEFAULT_CAP).expect("order two")
}

pub fn rotation_algebra() -> LieAlgebraAction {
    let xi = Matrix::from_ints(&[&[0, -1], &[1, 0]]).expect("static matrix");
    LieAlgebraAction::new(2, vec![xi]).expect("2x2")
}

/// `ϑ1..ϑ4`: `d(x1^2)`, `d(x2^2)`, `d(x1 x2)` and `x1 dx2 - x2 dx1`.
pub fn z2_upstairs_forms() -> Vec<PolyDiffForm> {
    vec![one_form("2*x1", "0"), one_form("0", "2*x2"), one_form("x2", "x1"), one_form("-x2", "x1")]
}

fn show(ps: &[Polynomial]) -> String {
    let parts: Vec<String> = ps.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn same_subalgebra(a: &HilbertMap, b: &HilbertMap) -> Result<bool> {
    for s in a.sigma() {
        if b.subduct(s).is_err() {
            return Ok(false);
        }
    }
    for s in b.sigma() {
        if a.subduct(s).is_err() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn same_module(a: &EquivariantModule, b: &EquivariantModule) -> Result<bool> {
    for g in a.generators() {
        if !b.contains(g)? {
            return Ok(false);
        }
    }
    for g in b.generators() {
        if !a.contains(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn values(form: &OrbitForm, count: usize) -> Vec<Polynomial> {
    let zero = Polynomial::zero(Ring::y(3));
    (0..count).map(|i| form.value(&[i], &zero)).collect()
}

fn random_tangent(space: &OrbitSpace, rng: &mut ChaCha8Rng) -> Result<OrbitVectorField> {
    let coeffs: Vec<Polynomial> =
        (0..space.pushed_generators().len()).map(|_| random_polynomial(rng, space.y_ring(), 1, 2)).collect();
    space.combine_generators(&coeffs)
}

struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    fn run(&mut self, name: &str, f: impl FnOnce() -> Result<(bool, String)>) {
        let (passed, detail) = match f() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        self.checks.push(Check { name: name.to_string(), passed, detail });
    }
}

pub fn verify_golden(seed: u64) -> Result<GoldenReport> {
    let group = z2_group();
    let space = OrbitSpace::new(group.clone(), LieAlgebraAction::empty(2), None, None)?;
    let ys = space.pushed_generators().to_vec();
    let xs = space.module().generators().to_vec();
    let thetas = z2_upstairs_forms();
    let mut suite = Suite { checks: Vec::new() };

    suite.run("hilbert map", || {
        let expected = HilbertMap::new(group.clone(), vec![x("x1^2"), x("x2^2"), x("x1*x2")])?;
        let got = space.hilbert();
        Ok((same_subalgebra(got, &expected)?, format!("sigma = {}", show(got.sigma()))))
    });

    suite.run("relation ideal", || {
        let gb = space.ideal().basis().generators().to_vec();
        let expected = y("y1*y2 - y3^2");
        let ok = gb.len() == 1 && (gb[0] == expected || gb[0] == -&expected);
        Ok((ok, format!("basis = {}", show(&gb))))
    });

    suite.run("equivariant module", || {
        let listed = ["x1", "0", "x2", "0", "0", "x1", "0", "x2"];
        let fields = listed.chunks(2).map(|c| PolyVectorField::new(vec![x(c[0]), x(c[1])])).collect();
        let expected = EquivariantModule::new(group.clone(), fields)?;
        let names: Vec<String> = xs.iter().map(ToString::to_string).collect();
        Ok((same_module(space.module(), &expected)?, names.join("; ")))
    });

    suite.run("lie derivative table", || {
        let table = [
            ["2*y1", "0", "y3"],
            ["2*y3", "0", "y2"],
            ["0", "2*y3", "y1"],
            ["0", "2*y2", "y3"],
        ];
        let mut bad = Vec::new();
        for (i, row) in table.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                let got = space.hilbert().subduct(&xs[i].apply(&space.hilbert().sigma()[j])?)?;
                if got != y(entry) {
                    bad.push(format!("L_X{} sigma{} = {got}", i + 1, j + 1));
                }
            }
        }
        Ok((bad.is_empty(), if bad.is_empty() { "12 entries match".into() } else { bad.join("; ") }))
    });

    suite.run("pushed generators", || {
        let expected = [["2*y1", "0", "y3"], ["2*y3", "0", "y2"], ["0", "2*y3", "y1"], ["0", "2*y2", "y3"]];
        let ok = ys.len() == 4
            && ys.iter().zip(&expected).all(|(v, e)| v.components().iter().zip(e).all(|(c, s)| *c == y(s)));
        let shown: Vec<String> = ys.iter().map(|v| show(v.components())).collect();
        Ok((ok, shown.join(" ")))
    });

    let pushed: Vec<Result<OrbitForm>> = thetas.iter().map(|t| space.push_form(t)).collect();

    suite.run("theta1..theta3 are dy1..dy3", || {
        let mut ok = true;
        for (i, p) in pushed.iter().take(3).enumerate() {
            let p = p.as_ref().map_err(Clone::clone)?;
            let expected: Vec<Polynomial> = ys.iter().map(|v| v.components()[i].clone()).collect();
            ok &= values(p, 4) == expected;
        }
        Ok((ok, "values are the components of Y1..Y4".into()))
    });

    suite.run("theta4 values", || {
        let p = pushed[3].as_ref().map_err(Clone::clone)?;
        let oracle = xs
            .iter()
            .map(|xi| {
                let c = interior(xi, &thetas[3])?.as_function().ok_or(Error::CannotContractFunction)?;
                space.hilbert().subduct(&c)
            })
            .collect::<Result<Vec<_>>>()?;
        let got = values(p, 4);
        Ok((
            got == oracle,
            format!("{} on (Y1..Y4); Y2, Y3 carry -y2, y1 and Y4 carries +y3, as forced by y3*Y4 - y2*Y3 = 0", show(&got)),
        ))
    });

    suite.run("extendability", || {
        let mut ok = true;
        let mut notes = Vec::new();
        for (i, p) in pushed.iter().enumerate() {
            let p = p.as_ref().map_err(Clone::clone)?;
            match space.extend_check(p)? {
                ExtendResult::Extendable { witness } => {
                    let unit: Vec<Polynomial> =
                        (0..3).map(|j| if j == i { y("1") } else { y("0") }).collect();
                    ok &= i < 3 && witness == unit;
                    notes.push(format!("theta{} = {}", i + 1, show(&witness)));
                }
                ExtendResult::NotExtendable { .. } => {
                    ok &= i == 3;
                    notes.push(format!("theta{} not extendable", i + 1));
                }
            }
        }
        Ok((ok, notes.join("; ")))
    });

    suite.run("d theta4", || {
        let dt = d(&thetas[3]);
        let two = PolyDiffForm::from_terms(2, 2, [(vec![0, 1], x("2"))])?;
        let p = pushed[3].as_ref().map_err(Clone::clone)?;
        let od = space.orbit_d(p)?;
        let alpha = poincare_primitive(&two)?;
        let ok = dt == two && !od.is_zero() && d(&alpha) == two && alpha == thetas[3];
        Ok((ok, format!("d = {dt}; orbit d nonzero: {}; primitive = {alpha}", !od.is_zero())))
    });

    suite.run("orbit d squares to zero", || {
        let mut ok = true;
        for p in &pushed {
            let p = p.as_ref().map_err(Clone::clone)?;
            ok &= space.orbit_d(&space.orbit_d(p)?)?.is_zero();
        }
        for s in ["y1", "y2", "y3", "y1*y3 + y2^2"] {
            let f = space.function_form(&y(s))?;
            ok &= space.orbit_d(&space.orbit_d(&f)?)?.is_zero();
        }
        Ok((ok, "theta1..theta4 and sample functions".into()))
    });

    suite.run("vector field round trips", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut fields = ys.clone();
        for _ in 0..20 {
            fields.push(random_tangent(&space, &mut rng)?);
        }
        let mut ok = true;
        for v in &fields {
            ok &= space.push_vf(&space.lift_vf(v, None)?)? == *v;
        }
        Ok((ok, format!("{} fields", fields.len())))
    });

    suite.run("form round trips", || {
        let mut ok = true;
        for p in &pushed {
            let p = p.as_ref().map_err(Clone::clone)?;
            ok &= space.push_form(&space.pull_form(p, None)?)? == *p;
        }
        Ok((ok, "theta1..theta4".into()))
    });

    suite.run("exterior derivative commutation", || {
        // dθ(Ya, Yb) = Ya θ(Yb) - Yb θ(Ya) + θ([Ya, Yb])
        let mut count = 0;
        let mut ok = true;
        for p in &pushed {
            let p = p.as_ref().map_err(Clone::clone)?;
            let dp = space.orbit_d(p)?;
            for a in 0..ys.len() {
                for b in 0..ys.len() {
                    let lhs = space.evaluate_form(&dp, &[ys[a].clone(), ys[b].clone()])?;
                    let ta = space.evaluate_form(p, &[ys[a].clone()])?;
                    let tb = space.evaluate_form(p, &[ys[b].clone()])?;
                    let br = space.orbit_bracket(&ys[a], &ys[b])?;
                    let rhs = &(&space.apply(&ys[a], &tb)? - &space.apply(&ys[b], &ta)?)
                        + &space.evaluate_form(p, &[br])?;
                    ok &= space.ideal().normal_form(&(&lhs - &rhs))?.is_zero();
                    count += 1;
                }
            }
        }
        Ok((ok, format!("{count} evaluations")))
    });

    suite.run("jacobi", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
        let mut triples = Vec::new();
        for a in 0..4 {
            for b in a + 1..4 {
                for c in b + 1..4 {
                    triples.push([ys[a].clone(), ys[b].clone(), ys[c].clone()]);
                }
            }
        }
        for _ in 0..5 {
            triples.push([random_tangent(&space, &mut rng)?, random_tangent(&space, &mut rng)?, random_tangent(&space, &mut rng)?]);
        }
        let mut ok = true;
        for [a, b, c] in &triples {
            let t1 = space.orbit_bracket(a, &space.orbit_bracket(b, c)?)?;
            let t2 = space.orbit_bracket(b, &space.orbit_bracket(c, a)?)?;
            let t3 = space.orbit_bracket(c, &space.orbit_bracket(a, b)?)?;
            ok &= space.vf_add(&space.vf_add(&t1, &t2)?, &t3)?.is_zero();
        }
        Ok((ok, format!("{} triples", triples.len())))
    });

    suite.run("swap group", || {
        let s2 = OrbitSpace::new(s2_group(), LieAlgebraAction::empty(2), None, None)?;
        let sym = HilbertMap::new(s2_group(), vec![x("x1 + x2"), x("x1*x2")])?;
        let listed = [["1", "1"], ["x1", "x2"], ["x2", "x1"]];
        let mut contains = true;
        for l in &listed {
            contains &= s2.module().contains(&PolyVectorField::new(vec![x(l[0]), x(l[1])]))?;
        }
        let mut trips = true;
        for v in s2.pushed_generators() {
            trips &= s2.push_vf(&s2.lift_vf(v, None)?)? == *v;
        }
        let ok = same_subalgebra(s2.hilbert(), &sym)? && s2.ideal().is_zero_ideal() && contains && trips;
        Ok((ok, format!("sigma = {}; zero ideal: {}", show(s2.hilbert().sigma()), s2.ideal().is_zero_ideal())))
    });

    suite.run("semi-basic pair", || {
        let rot = rotation_algebra();
        let r2 = x("x1^2 + x2^2");
        let bad = thetas[3].times(&r2)?;
        let good = one_form("x1", "x2");
        let neg = semibasic_check(&bad, &rot)?;
        let pos = semibasic_check(&good, &rot)?;
        Ok((!neg.holds() && pos.holds(), "r^2 theta4 rejected, x1 dx1 + x2 dx2 accepted".into()))
    });

    Ok(GoldenReport { seed, checks: suite.checks })
}
