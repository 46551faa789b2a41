use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use orbitcalc_core::algebra::{Polynomial, Ring};
use orbitcalc_core::exterior::{d, poincare_primitive, semibasic_check, SemiBasicCheck};
use orbitcalc_core::golden::verify_golden;
use orbitcalc_core::group_action::{PolyDiffForm, PolyVectorField, DEFAULT_CAP};
use orbitcalc_core::invariants::{equivariant_generators, invariant_generators};
use orbitcalc_core::io::{
    form_from_json, form_to_json, orbit_form_from_json, orbit_form_to_json, orbit_vf_to_json, vf_from_json,
    vf_to_json, NamedObject, ProblemFile, VectorFieldJson,
};
use orbitcalc_core::quotient::{ExtendResult, OrbitForm, OrbitSpace, OrbitVectorField};
use orbitcalc_core::Error;

#[derive(Parser, Debug)]
#[command(name = "orbitcalc", version, about = "Exact calculus on orbit spaces of finite linear group actions")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Problem file (JSON).
    #[arg(short = 'i', long = "input", global = true)]
    input: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Generation bound for invariants/equivariants, search bound for lifts and pulls.
    #[arg(long, global = true)]
    degree_bound: Option<u32>,

    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,

    /// Largest group order tolerated during closure.
    #[arg(long, default_value_t = DEFAULT_CAP, global = true)]
    cap: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generators of the invariant ring.
    Invariants,
    /// Reduced Groebner basis of the relation ideal.
    Relations,
    /// Generators of the module of equivariant vector fields.
    Equivariants,
    /// Push an invariant vector field (name, file or comma-separated components).
    PushVf { field: String },
    /// Lift a tangent orbit vector field.
    LiftVf { field: String },
    /// Bracket of two vector fields, upstairs or on the orbit space.
    Bracket { a: String, b: String },
    /// Push an invariant semi-basic form to an orbit form.
    PushForm { form: String },
    /// Pull an orbit form back to an invariant form.
    PullForm { form: String },
    /// Exterior derivative of an upstairs form.
    D { form: String },
    /// Exterior derivative of an orbit form.
    OrbitD { form: String },
    /// Check that a form is annihilated by the Lie algebra generators.
    Semibasic { form: String },
    /// Check group invariance of a polynomial, vector field or form.
    InvariantCheck { object: String },
    /// Primitive of a closed form.
    Poincare { form: String },
    /// Decide whether an orbit 1-form extends to the ambient space.
    ExtendCheck { form: String },
    /// Run the built-in worked example.
    VerifyGolden,
}

/// A finished command: what to print and whether the answer was negative.
struct Outcome {
    text: String,
    json: serde_json::Value,
    negative: bool,
}

impl Outcome {
    fn ok(text: String, json: impl Serialize) -> Self {
        Outcome { text, json: serde_json::to_value(json).expect("serializable"), negative: false }
    }
}

struct Ctx {
    problem: ProblemFile,
    cli_bound: Option<u32>,
    cap: usize,
}

impl Ctx {
    fn n(&self) -> usize {
        self.problem.n
    }

    fn space(&self) -> Result<OrbitSpace> {
        self.problem.space(self.cap).context("building the orbit space")
    }

    fn search_bound(&self, fallback: Option<usize>) -> Option<usize> {
        self.cli_bound.map(|b| b as usize).or(fallback)
    }

    /// A named object from the problem file, else a JSON file on disk.
    fn object(&self, arg: &str) -> Result<Option<NamedObject>> {
        if let Some(obj) = self.problem.object(arg) {
            return Ok(Some(obj.clone()));
        }
        let path = Path::new(arg);
        if path.is_file() {
            let src = std::fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
            let obj: NamedObject = serde_json::from_str(&src).with_context(|| format!("parsing {arg}"))?;
            return Ok(Some(obj));
        }
        Ok(None)
    }

    fn form(&self, arg: &str) -> Result<PolyDiffForm> {
        match self.object(arg)? {
            Some(NamedObject::Form(f)) => Ok(form_from_json(self.n(), &f)?),
            Some(_) => bail!("{arg} is not a differential form"),
            None => bail!("no form named {arg}"),
        }
    }

    fn components(&self, arg: &str) -> Result<Vec<String>> {
        match self.object(arg)? {
            Some(NamedObject::VectorField(v)) => Ok(v.components),
            Some(_) => bail!("{arg} is not a vector field"),
            None => Ok(split_components(arg)),
        }
    }

    fn field(&self, arg: &str) -> Result<PolyVectorField> {
        Ok(vf_from_json(self.n(), &VectorFieldJson { components: self.components(arg)? })?)
    }

    fn orbit_field(&self, space: &OrbitSpace, arg: &str) -> Result<OrbitVectorField> {
        let ring = space.y_ring();
        let comps = self.components(arg)?;
        let comps = comps.iter().map(|s| Polynomial::parse(s, ring)).collect::<Result<Vec<_>, _>>()?;
        Ok(space.vector_field(comps)?)
    }

    /// An orbit form given directly, or an upstairs form that gets pushed.
    fn orbit_form(&self, space: &OrbitSpace, arg: &str) -> Result<OrbitForm> {
        match self.object(arg)? {
            Some(NamedObject::OrbitForm(f)) => Ok(orbit_form_from_json(space, &f)?),
            Some(NamedObject::Form(f)) => Ok(space.push_form(&form_from_json(self.n(), &f)?)?),
            Some(_) => bail!("{arg} is not a form"),
            None => bail!("no orbit form named {arg}"),
        }
    }
}

fn split_components(expr: &str) -> Vec<String> {
    let inner = expr.trim().trim_start_matches('[').trim_end_matches(']');
    inner.split(',').map(|s| s.trim().to_string()).collect()
}

fn lines<T: ToString>(prefix: &str, items: &[T]) -> String {
    let mut out = String::new();
    for (i, item) in items.iter().enumerate() {
        let _ = writeln!(out, "{prefix}{} = {}", i + 1, item.to_string());
    }
    out
}

fn polys_json(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

fn run(cli: &Cli) -> Result<Outcome> {
    if let Command::VerifyGolden = cli.command {
        let report = verify_golden(cli.seed)?;
        let checks: Vec<_> = report
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
            .collect();
        return Ok(Outcome {
            text: report.render(),
            json: json!({"seed": report.seed, "passed": report.passed(), "checks": checks}),
            negative: !report.passed(),
        });
    }

    let path = cli.input.as_ref().ok_or_else(|| anyhow!("missing problem file (-i <file>)"))?;
    let problem = ProblemFile::load(path)?;
    let bounds = problem.bounds();
    let ctx = Ctx { problem, cli_bound: cli.degree_bound, cap: cli.cap };

    Ok(match &cli.command {
        Command::VerifyGolden => unreachable!(),
        Command::Invariants => {
            let group = ctx.problem.group(ctx.cap)?;
            let h = invariant_generators(&group, cli.degree_bound.or(bounds.invariants))?;
            Outcome::ok(lines("y", h.sigma()), json!({"generators": polys_json(h.sigma())}))
        }
        Command::Relations => {
            let group = ctx.problem.group(ctx.cap)?;
            let h = invariant_generators(&group, cli.degree_bound.or(bounds.invariants))?;
            let ideal = h.relations();
            let gens = ideal.basis().generators().to_vec();
            let text = if gens.is_empty() {
                "(zero ideal)\n".to_string()
            } else {
                gens.iter().map(|g| format!("{g}\n")).collect()
            };
            Outcome::ok(text, json!({"relations": polys_json(&gens)}))
        }
        Command::Equivariants => {
            let group = ctx.problem.group(ctx.cap)?;
            let m = equivariant_generators(&group, cli.degree_bound.or(bounds.equivariants))?;
            let fields: Vec<_> = m.generators().iter().map(vf_to_json).collect();
            Outcome::ok(lines("X", m.generators()), json!({"generators": fields}))
        }
        Command::PushVf { field } => {
            let space = ctx.space()?;
            let y = space.push_vf(&ctx.field(field)?)?;
            Outcome::ok(format!("{y}\n"), orbit_vf_to_json(&y))
        }
        Command::LiftVf { field } => {
            let space = ctx.space()?;
            let y = ctx.orbit_field(&space, field)?;
            let x = space.lift_vf(&y, ctx.search_bound(bounds.lift))?;
            Outcome::ok(format!("{x}\n"), vf_to_json(&x))
        }
        Command::Bracket { a, b } => {
            // fields written in x1..xn are brackets upstairs, otherwise on the orbit space
            match (ctx.field(a), ctx.field(b)) {
                (Ok(xa), Ok(xb)) => {
                    let br = xa.bracket(&xb)?;
                    Outcome::ok(format!("{br}\n"), vf_to_json(&br))
                }
                _ => {
                    let space = ctx.space()?;
                    let br = space.orbit_bracket(&ctx.orbit_field(&space, a)?, &ctx.orbit_field(&space, b)?)?;
                    Outcome::ok(format!("{br}\n"), orbit_vf_to_json(&br))
                }
            }
        }
        Command::PushForm { form } => {
            let space = ctx.space()?;
            let f = space.push_form(&ctx.form(form)?)?;
            Outcome::ok(format!("{f}\n"), orbit_form_to_json(&f))
        }
        Command::PullForm { form } => {
            let space = ctx.space()?;
            let f = ctx.orbit_form(&space, form)?;
            let w = space.pull_form(&f, ctx.search_bound(bounds.pull))?;
            Outcome::ok(format!("{w}\n"), form_to_json(&w))
        }
        Command::D { form } => {
            let w = d(&ctx.form(form)?);
            Outcome::ok(format!("{w}\n"), form_to_json(&w))
        }
        Command::OrbitD { form } => {
            let space = ctx.space()?;
            let f = space.orbit_d(&ctx.orbit_form(&space, form)?)?;
            Outcome::ok(format!("{f}\n"), orbit_form_to_json(&f))
        }
        Command::Semibasic { form } => {
            let lie = ctx.problem.lie()?;
            match semibasic_check(&ctx.form(form)?, &lie)? {
                SemiBasicCheck::SemiBasic => Outcome::ok("SEMI-BASIC\n".into(), json!({"semibasic": true})),
                SemiBasicCheck::Fails { index, contraction } => Outcome {
                    text: format!("NOT SEMI-BASIC: contraction with generator {} is {contraction}\n", index + 1),
                    json: json!({"semibasic": false, "index": index + 1, "contraction": form_to_json(&contraction)}),
                    negative: true,
                },
            }
        }
        Command::InvariantCheck { object } => {
            let group = ctx.problem.group(ctx.cap)?;
            let fixed = match ctx.object(object)? {
                Some(NamedObject::Form(f)) => group.fixes(&form_from_json(ctx.n(), &f)?)?,
                Some(NamedObject::VectorField(v)) => group.fixes(&vf_from_json(ctx.n(), &v)?)?,
                Some(NamedObject::OrbitForm(_)) => bail!("{object} is an orbit form"),
                None => {
                    let comps = split_components(object);
                    if comps.len() == 1 {
                        group.fixes(&Polynomial::parse(&comps[0], Ring::x(ctx.n()))?)?
                    } else {
                        group.fixes(&ctx.field(object)?)?
                    }
                }
            };
            Outcome {
                text: if fixed { "INVARIANT\n".into() } else { "NOT INVARIANT\n".into() },
                json: json!({"invariant": fixed}),
                negative: !fixed,
            }
        }
        Command::Poincare { form } => match poincare_primitive(&ctx.form(form)?) {
            Ok(a) => Outcome::ok(format!("{a}\n"), form_to_json(&a)),
            Err(Error::NotClosed(db)) => Outcome {
                text: format!("NOT CLOSED: d = {db}\n"),
                json: json!({"closed": false, "d": form_to_json(&db)}),
                negative: true,
            },
            Err(e) => return Err(e.into()),
        },
        Command::ExtendCheck { form } => {
            let space = ctx.space()?;
            match space.extend_check(&ctx.orbit_form(&space, form)?)? {
                ExtendResult::Extendable { witness } => {
                    let terms: Vec<String> =
                        witness.iter().enumerate().map(|(j, a)| format!("({a})*dy{}", j + 1)).collect();
                    Outcome::ok(
                        format!("EXTENDABLE: {}\n", terms.join(" + ")),
                        json!({"extendable": true, "witness": polys_json(&witness)}),
                    )
                }
                ExtendResult::NotExtendable { normal_form } => Outcome {
                    text: format!(
                        "NOT EXTENDABLE: module normal form ({})\n",
                        polys_json(&normal_form).join(", ")
                    ),
                    json: json!({"extendable": false, "normal_form": polys_json(&normal_form)}),
                    negative: true,
                },
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json")),
            }
            ExitCode::from(if out.negative { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
