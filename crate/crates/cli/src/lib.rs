//! The `coxring` command line: one JSON job in, one JSON document out.
//!
//! Exit status is 0 on success, 2 for any input problem (unreadable file,
//! malformed JSON, invalid model data, unsupported field), and 3 when two
//! oracles computing the same quantity disagree.

mod schema;

use std::ffi::OsString;
use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use coxring_core::abgroup::{PresentedAbelianGroup, WeilDivisor};
use coxring_core::blowup::BlowupModel;
use coxring_core::collinear::{self, CollinearConfig};
use coxring_core::exact::parse_rational;
use coxring_core::groebner::{
    self, buchberger, curve_var_names, monomial_curve_ideal, Ideal, TermOrder,
};
use coxring_core::poly::z_names;
use coxring_core::toric::ClassGroupReport;
use coxring_core::{Field, MultiDegree, MultiPoly};
use num_rational::BigRational;
use num_traits::Zero;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use schema::*;

#[derive(Debug, Parser)]
#[command(
    name = "coxring",
    version,
    about = "Graded pieces, class groups and Gröbner computations for Cox rings"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON job file (standard input when omitted)
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Write the JSON result here instead of standard output
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Coefficient field: q, fp:<p>, or fp (p = 2)
    #[arg(long, global = true, default_value = "q")]
    field: String,
    /// Seed for `general` point configurations
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dimension of one graded piece of a blow-up of P^r
    BlowupDim,
    /// Basis of one graded piece of a blow-up of P^r
    BlowupBasis,
    /// Dimensions of the pieces nD, n = 0..n_max
    SectionRing,
    /// Closed-form dimension for collinear points
    CollinearDim,
    /// Check that the generator set spans every piece of a box
    VerifyGenerators {
        /// Box bounds: 0 <= a <= A_MAX and |b_i| <= B_MAX
        #[arg(long = "box", num_args = 2, value_names = ["A_MAX", "B_MAX"], default_values_t = [3, 2])]
        bounds: Vec<i64>,
        /// Drop Z0 and Z1 from the generators (needs m >= 2)
        #[arg(long)]
        reduced: bool,
    },
    /// Class group of a toric variety
    ToricCl,
    /// Graded-piece dimensions of toric divisors, counted two ways
    ToricDim,
    /// A finitely presented abelian group and its quotient by given classes
    ClassgroupQuotient,
    /// Reduced Gröbner basis
    Gb,
    /// Intersection of ideals
    Intersect,
    /// Symbolic power of a monomial-curve prime
    SymbolicPower,
    /// Degrees needing new generators in the symbolic Rees algebra
    ReesDegrees,
    /// Run every applicable oracle on one graded piece and compare
    CrossCheck,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Disagreement(String),
}

impl From<coxring_core::Error> for Failure {
    fn from(e: coxring_core::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

/// What a run produced; `main` turns this into process output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let (code, value, message) = match execute(&cli) {
        Ok(v) => (0, Some(v), None),
        Err((Failure::Input(m), _)) => (2, None, Some(format!("error: {m}\n"))),
        Err((Failure::Disagreement(m), v)) => (3, v, Some(format!("oracle disagreement: {m}\n"))),
    };
    let mut out = Outcome {
        code,
        stdout: String::new(),
        stderr: message.unwrap_or_default(),
    };
    if let Some(v) = value {
        let mut text = serde_json::to_string_pretty(&v).expect("JSON values serialize");
        text.push('\n');
        match &cli.output {
            Some(path) => {
                if let Err(e) = fs::write(path, text) {
                    out.code = 2;
                    out.stderr
                        .push_str(&format!("error: cannot write {}: {e}\n", path.display()));
                }
            }
            None => out.stdout = text,
        }
    }
    out
}

type Fallible<T> = std::result::Result<T, (Failure, Option<Value>)>;
type Job = Fallible<Value>;

fn input_err(m: impl Into<String>) -> (Failure, Option<Value>) {
    (Failure::Input(m.into()), None)
}

fn core_err(e: coxring_core::Error) -> (Failure, Option<Value>) {
    (e.into(), None)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn read_job<T: DeserializeOwned>(cli: &Cli) -> Fallible<T> {
    let text = match &cli.input {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| input_err(format!("cannot read {}: {e}", path.display())))?,
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| input_err(format!("cannot read stdin: {e}")))?;
            s
        }
    };
    serde_json::from_str(&text).map_err(|e| input_err(format!("malformed job: {e}")))
}

fn execute(cli: &Cli) -> Job {
    let field: Field = cli.field.parse().map_err(core_err)?;
    match &cli.command {
        Command::BlowupDim => {
            let job: PointsInput = read_job(cli)?;
            let d = need(job.multidegree.clone(), "multidegree")?;
            let model = blowup_model(&job, field, cli.seed)?;
            let dim = model.piece_dim(&d).map_err(core_err)?;
            Ok(json!({ "multidegree": d, "dim": dim }))
        }
        Command::BlowupBasis => {
            let job: PointsInput = read_job(cli)?;
            let d = need(job.multidegree.clone(), "multidegree")?;
            let model = blowup_model(&job, field, cli.seed)?;
            let piece = model.piece_basis(&d).map_err(core_err)?;
            let names = z_names(job.r + 1);
            let basis: Vec<String> = piece
                .basis
                .iter()
                .map(|f| f.display_with(&names).to_string())
                .collect();
            Ok(json!({ "multidegree": d, "dim": piece.dim, "basis": basis }))
        }
        Command::SectionRing => {
            let job: PointsInput = read_job(cli)?;
            let d = need(job.divisor.clone(), "divisor")?;
            let n_max = need(job.n_max, "n_max")?;
            let model = blowup_model(&job, field, cli.seed)?;
            let dims = model.section_ring_dims(&d, n_max).map_err(core_err)?;
            Ok(json!({ "divisor": d, "dims": dims }))
        }
        Command::CollinearDim => {
            let job: PointsInput = read_job(cli)?;
            let d = need(job.multidegree.clone(), "multidegree")?;
            let cfg = collinear_config(&job, field)?;
            Ok(
                json!({ "multidegree": d, "dim": collinear::collinear_dim(&cfg, &d).map_err(core_err)? }),
            )
        }
        Command::VerifyGenerators { bounds, reduced } => {
            let job: PointsInput = read_job(cli)?;
            let cfg = collinear_config(&job, field)?;
            let (a_max, b_max) = (bounds[0], bounds[1]);
            if a_max < 0 || b_max < 0 {
                return Err(input_err("box bounds must be nonnegative"));
            }
            let degrees = collinear::degree_box(cfg.m(), a_max, b_max);
            let report =
                collinear::verify_generators(&cfg, &degrees, *reduced).map_err(core_err)?;
            Ok(to_value(&report))
        }
        Command::ToricCl => {
            let fan = read_job::<FanInput>(cli)?.resolve().map_err(core_err)?;
            let cl = fan.class_group().map_err(core_err)?;
            Ok(to_value(&ClassGroupReport::of(&cl.group)))
        }
        Command::ToricDim => toric_dim(read_job(cli)?),
        Command::ClassgroupQuotient => {
            let job: QuotientInput = read_job(cli)?;
            let group = PresentedAbelianGroup::new(job.generators.clone(), job.relations)
                .map_err(core_err)?;
            let classes = job
                .quotient_by
                .iter()
                .map(|s| WeilDivisor::parse(s)?.class_of(&job.generators))
                .collect::<coxring_core::Result<Vec<_>>>()
                .map_err(core_err)?;
            let quotient = group.quotient(&classes).map_err(core_err)?;
            Ok(json!({
                "group": ClassGroupReport::of(&group),
                "quotient": ClassGroupReport::of(&quotient),
                "quotient_display": quotient.to_string(),
            }))
        }
        Command::Gb => {
            let job: GbInput = read_job(cli)?;
            let names = var_names(job.vars, job.nvars)?;
            let gens = parse_all(&job.generators, &names, field)?;
            let order = match job.order.unwrap_or(OrderInput::Grevlex) {
                OrderInput::Grevlex => TermOrder::GrevLex,
                OrderInput::Lex => TermOrder::Lex,
                OrderInput::Weighted(w) if w.len() == names.len() && w.iter().all(|&x| x > 0) => {
                    TermOrder::WeightedGrevLex(w)
                }
                OrderInput::Weighted(_) => {
                    return Err(input_err("weights must be positive, one per variable"))
                }
            };
            if gens.is_empty() {
                return Err(input_err("at least one generator is needed"));
            }
            let gb = buchberger(&gens, &order).map_err(core_err)?;
            Ok(json!({
                "field": field.to_string(),
                "basis": show_all(&gb.generators(), &names),
                "certified": gb.certify(),
            }))
        }
        Command::Intersect => {
            let job: IntersectInput = read_job(cli)?;
            let names = var_names(job.vars, job.nvars)?;
            if job.ideals.is_empty() {
                return Err(input_err("at least one ideal is needed"));
            }
            let mut acc: Option<Ideal> = None;
            for gens in &job.ideals {
                let ideal = Ideal::new(field, names.len(), parse_all(gens, &names, field)?)
                    .map_err(core_err)?;
                acc = Some(match acc {
                    None => ideal,
                    Some(prev) => prev.intersect(&ideal).map_err(core_err)?,
                });
            }
            let gb = acc.unwrap().groebner().clone();
            Ok(json!({ "basis": show_all(&gb.generators(), &names), "certified": gb.certify() }))
        }
        Command::SymbolicPower => {
            let job: CurveInput = read_job(cli)?;
            let n = need(job.n, "n")?;
            let [a, b, c] = job.weights;
            let curve = monomial_curve_ideal(a, b, c, field).map_err(core_err)?;
            let sym = curve.symbolic_power(n).map_err(core_err)?;
            let names = curve_var_names();
            Ok(json!({
                "weights": job.weights,
                "prime": show_all(&curve.ideal.groebner().generators(), &names),
                "n": n,
                "basis": show_all(&sym.groebner().generators(), &names),
                "equals_ordinary_power": sym.is_subset_of(&curve.ideal.power(n)),
                "certified": sym.groebner().certify(),
            }))
        }
        Command::ReesDegrees => {
            let job: CurveInput = read_job(cli)?;
            let n_max = need(job.n_max, "n_max")?;
            let [a, b, c] = job.weights;
            let curve = monomial_curve_ideal(a, b, c, field).map_err(core_err)?;
            let levels = curve.rees_generation_degrees(n_max).map_err(core_err)?;
            Ok(json!({ "weights": job.weights, "levels": levels }))
        }
        Command::CrossCheck => cross_check(read_job(cli)?, field, cli.seed),
    }
}

fn need<T>(v: Option<T>, name: &str) -> Fallible<T> {
    v.ok_or_else(|| input_err(format!("missing field `{name}`")))
}

fn var_names(vars: Option<Vec<String>>, nvars: Option<usize>) -> Fallible<Vec<String>> {
    match (vars, nvars) {
        (Some(v), None) if !v.is_empty() => Ok(v),
        (None, Some(n)) if n > 0 => Ok(z_names(n)),
        _ => Err(input_err(
            "give exactly one of `vars` (nonempty) or `nvars` (positive)",
        )),
    }
}

fn parse_all(gens: &[String], names: &[String], field: Field) -> Fallible<Vec<MultiPoly>> {
    gens.iter()
        .map(|g| MultiPoly::parse(g, names, field))
        .collect::<coxring_core::Result<_>>()
        .map_err(core_err)
}

fn show_all(polys: &[MultiPoly], names: &[String]) -> Vec<String> {
    polys
        .iter()
        .map(|p| p.display_with(names).to_string())
        .collect()
}

fn explicit_points(job: &PointsInput) -> Fallible<Option<Vec<Vec<BigRational>>>> {
    let Some(points) = &job.points else {
        return Ok(None);
    };
    let parsed = points
        .iter()
        .map(|p| {
            p.iter()
                .map(|c| parse_rational(&c.as_text()))
                .collect::<coxring_core::Result<Vec<_>>>()
        })
        .collect::<coxring_core::Result<Vec<_>>>()
        .map_err(core_err)?;
    Ok(Some(parsed))
}

fn blowup_model(job: &PointsInput, field: Field, seed: u64) -> Fallible<BlowupModel> {
    coxring_core::blowup::require_char_zero(field).map_err(core_err)?;
    match (explicit_points(job)?, job.general, &job.forms) {
        (Some(p), None, None) => BlowupModel::new(job.r, p).map_err(core_err),
        (None, Some(m), None) => Ok(BlowupModel::general(job.r, m, seed)),
        (None, None, Some(_)) => collinear_config(job, field)?
            .to_blowup_model()
            .map_err(core_err),
        (None, None, None) => BlowupModel::new(job.r, vec![]).map_err(core_err),
        _ => Err(input_err(
            "give at most one of `points`, `general`, `forms`",
        )),
    }
}

fn collinear_config(job: &PointsInput, field: Field) -> Fallible<CollinearConfig> {
    let forms = need(job.forms.clone(), "forms")?;
    if job.points.is_some() || job.general.is_some() {
        return Err(input_err(
            "collinear jobs take `forms`, not `points` or `general`",
        ));
    }
    CollinearConfig::parse(job.r, &forms, field).map_err(core_err)
}

/// Explicit rational points carried into `F_p`, which must keep them
/// defined and distinct.
fn points_in_field(points: &[Vec<BigRational>], field: Field) -> Fallible<Vec<Vec<BigRational>>> {
    let p = field.characteristic();
    let mut out: Vec<Vec<BigRational>> = Vec::new();
    for (i, pt) in points.iter().enumerate() {
        if p > 0 && pt.iter().any(|c| (c.denom() % p).is_zero()) {
            return Err(input_err(format!(
                "point {i} has a denominator divisible by {p}"
            )));
        }
        let reduced: Vec<BigRational> = pt.iter().map(|c| field.normalize(c.clone())).collect();
        let Some(lead) = reduced.iter().find(|c| !c.is_zero()).cloned() else {
            return Err(input_err(format!("point {i} vanishes in {field}")));
        };
        let inv = field.inv(&lead).expect("nonzero element");
        let scaled: Vec<BigRational> = reduced.iter().map(|c| field.mul(c, &inv)).collect();
        if out.contains(&scaled) {
            return Err(input_err(format!(
                "point {i} coincides with an earlier point in {field}"
            )));
        }
        out.push(scaled);
    }
    Ok(out)
}

fn toric_dim(job: ToricDimInput) -> Job {
    let fan = job.fan.resolve().map_err(core_err)?;
    let cl = fan.class_group().map_err(core_err)?;
    let mut rows = Vec::new();
    let mut disagreements = Vec::new();
    for a in &job.divisors {
        let polytope = fan.piece_dim_polytope(a).map_err(core_err)?;
        let class = cl.class_of(a);
        let monomial = fan.piece_dim_monomial(&cl, &class).map_err(core_err)?;
        let (free, torsion) = cl.degree(a);
        if monomial != polytope {
            disagreements.push(format!(
                "divisor {a:?}: monomial={monomial} polytope={polytope}"
            ));
        }
        rows.push(json!({
            "divisor": a,
            "class": { "free": free, "torsion": torsion },
            "monomial": monomial,
            "polytope": polytope,
        }));
    }
    let value = Value::Array(rows);
    if disagreements.is_empty() {
        Ok(value)
    } else {
        Err((Failure::Disagreement(disagreements.join("; ")), Some(value)))
    }
}

#[derive(Serialize)]
struct OracleValues {
    interpolation: Option<u64>,
    collinear: Option<u64>,
    groebner: u64,
}

fn cross_check(job: PointsInput, field: Field, seed: u64) -> Job {
    let d: MultiDegree = need(job.multidegree.clone(), "multidegree")?;
    let cfg = match job.forms {
        Some(_) => Some(collinear_config(&job, field)?),
        None => None,
    };
    let points = match (&cfg, explicit_points(&job)?, job.general) {
        (Some(c), None, None) => c.points(),
        (None, Some(p), None) => points_in_field(&p, field)?,
        (None, None, Some(m)) => {
            points_in_field(&coxring_core::blowup::general_points(job.r, m, seed), field)?
        }
        (None, None, None) => vec![],
        _ => {
            return Err(input_err(
                "give exactly one of `points`, `general`, `forms`",
            ))
        }
    };
    if points.iter().any(|p| p.len() != job.r + 1) || d.m() != points.len() {
        return Err(input_err(format!(
            "multidegree {d} does not match the points of P^{}",
            job.r
        )));
    }
    let r = job.r;
    let (interp, coll, gb) = std::thread::scope(|s| {
        let interp = s.spawn(|| -> coxring_core::Result<Option<u64>> {
            if field != Field::Rational {
                return Ok(None);
            }
            Ok(Some(
                BlowupModel::new(r, points.clone())?.piece_dim(&d)? as u64
            ))
        });
        let coll = s.spawn(|| -> coxring_core::Result<Option<u64>> {
            cfg.as_ref()
                .map(|c| collinear::collinear_dim(c, &d))
                .transpose()
        });
        let gb = s.spawn(|| {
            groebner::hilbert_of_intersection(field, r, &points, &d.b, d.a).map(|x| x as u64)
        });
        (
            interp.join().unwrap(),
            coll.join().unwrap(),
            gb.join().unwrap(),
        )
    });
    let values = OracleValues {
        interpolation: interp.map_err(core_err)?,
        collinear: coll.map_err(core_err)?,
        groebner: gb.map_err(core_err)?,
    };
    judge(&d, field, values)
}

/// Exit 3, with every reported value, unless all oracles agree.
fn judge(d: &MultiDegree, field: Field, values: OracleValues) -> Job {
    let reported: Vec<(&str, u64)> = [
        ("interpolation", values.interpolation),
        ("collinear", values.collinear),
        ("groebner", Some(values.groebner)),
    ]
    .into_iter()
    .filter_map(|(n, v)| v.map(|v| (n, v)))
    .collect();
    let agree = reported.windows(2).all(|w| w[0].1 == w[1].1);
    let value = json!({
        "multidegree": d,
        "field": field.to_string(),
        "oracles": values,
        "agree": agree,
    });
    if agree {
        Ok(value)
    } else {
        let shown: Vec<String> = reported.iter().map(|(n, v)| format!("{n}={v}")).collect();
        Err((Failure::Disagreement(shown.join(", ")), Some(value)))
    }
}
