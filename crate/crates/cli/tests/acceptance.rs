//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use coxring_core::abgroup::PresentedAbelianGroup;
use coxring_core::blowup::{BlowupModel, ProductChecker};
use coxring_core::collinear::{self, CollinearConfig};
use coxring_core::exact::binomial;
use coxring_core::groebner::{fat_point_ideal, monomial_curve_ideal, Ideal};
use coxring_core::poly::rat_point;
use coxring_core::toric::{f1_divisor, Fan};
use coxring_core::{Field, MultiDegree};
use rayon::prelude::*;
use serde_json::Value;

// Time budgets. All comparisons are exact; these are the only tolerances.
const C1_BUDGET: Duration = Duration::from_secs(1);
const C2_BUDGET: Duration = Duration::from_secs(5 * 60);
const C3_BUDGET: Duration = Duration::from_secs(10 * 60);
const C8_BUDGET: Duration = Duration::from_secs(2 * 60);
const C2_MIN_INSTANCES: usize = 500;
const C5_MIN_DIVISORS: usize = 50;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn say(line: &str) {
    // written past the test-output capture so the lines always show
    let mut err = std::io::stderr();
    let _ = writeln!(err, "{line}");
}

fn run_criterion(id: u32, title: &str, f: impl FnOnce() -> Verdict) -> bool {
    let start = Instant::now();
    let v = f();
    let tag = if v.pass { "PASS" } else { "FAIL" };
    say(&format!(
        "[{tag}] criterion {id:>2}: {title} ({:.2}s) {}",
        start.elapsed().as_secs_f64(),
        v.detail
    ));
    v.pass
}

fn within(budget: Duration, start: Instant) -> (bool, String) {
    let t = start.elapsed();
    (
        t <= budget,
        format!("{:.1}s of {}s budget", t.as_secs_f64(), budget.as_secs()),
    )
}

fn forms(m: usize) -> Vec<String> {
    ["Z0", "Z1", "Z0 + Z1"][..m]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

fn cli(args: &[&str], input: &Value) -> coxring_cli::Outcome {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("job.json");
    // a string input is written raw, which lets fixtures carry broken JSON
    let text = match input {
        Value::String(raw) => raw.clone(),
        other => serde_json::to_string(other).unwrap(),
    };
    fs::write(&path, text).unwrap();
    let mut argv = vec!["coxring".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    argv.push("--input".into());
    argv.push(path.display().to_string());
    coxring_cli::run(argv)
}

/// Gröbner bases produced along the way, for criterion 9.
#[derive(Default)]
struct Certificates {
    checked: usize,
    failed: Vec<String>,
}

impl Certificates {
    fn add(&mut self, label: String, ideal: &Ideal) {
        self.checked += 1;
        if !ideal.groebner().certify() {
            self.failed.push(label);
        }
    }
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let mut bad = Vec::new();
    for n in 0..=10i64 {
        let job = serde_json::json!({ "r": 2, "points": [[1, 0, 0]], "multidegree": [n, 0] });
        let out = cli(&["blowup-dim"], &job);
        let got: Value = serde_json::from_str(&out.stdout).unwrap_or(Value::Null);
        let want = binomial(n + 2, 2);
        if out.code != 0 || got["dim"] != serde_json::json!(want) {
            bad.push(format!("n={n}: got {} want {want}", got["dim"]));
        }
    }
    let (fast, timing) = within(C1_BUDGET, start);
    verdict(
        bad.is_empty() && fast,
        format!("n = 0..10, {timing} {}", bad.join("; ")),
    )
}

fn criterion_2(certs: &mut Certificates) -> Verdict {
    let start = Instant::now();
    let mut instances = 0;
    let mut mismatches = Vec::new();
    for m in 1..=3 {
        let cfg = CollinearConfig::parse(2, &forms(m), Field::Rational).unwrap();
        let model = cfg.to_blowup_model().unwrap();
        let points = cfg.points();
        let mut degrees = Vec::new();
        let b_values: Vec<Vec<i64>> = {
            let mut out = vec![vec![]];
            for _ in 0..m {
                out = out
                    .into_iter()
                    .flat_map(|p| (-3..=5).map(move |x| [p.clone(), vec![x]].concat()))
                    .collect();
            }
            out
        };
        for a in 0..=5 {
            for b in &b_values {
                degrees.push(MultiDegree::new(a, b.clone()));
            }
        }
        // one intersection ideal per clamped b, shared by all a
        let mut ideals: BTreeMap<Vec<i64>, Ideal> = BTreeMap::new();
        for d in &degrees {
            let key: Vec<i64> = d.b.iter().map(|&x| x.max(0)).collect();
            ideals
                .entry(key.clone())
                .or_insert_with(|| fat_point_ideal(Field::Rational, &points, &key).unwrap());
        }
        let ideals: BTreeMap<Vec<i64>, Ideal> = ideals
            .into_par_iter()
            .map(|(k, i)| {
                i.groebner();
                (k, i)
            })
            .collect();
        let results: Vec<(MultiDegree, usize, u64, usize)> = degrees
            .par_iter()
            .map(|d| {
                let key: Vec<i64> = d.b.iter().map(|&x| x.max(0)).collect();
                let interp = model.piece_dim(d).unwrap();
                let closed = collinear::collinear_dim(&cfg, d).unwrap();
                let gb = ideals[&key].degree_part_dim(d.a);
                (d.clone(), interp, closed, gb)
            })
            .collect();
        for (d, interp, closed, gb) in results {
            instances += 1;
            if interp as u64 != closed || interp != gb {
                mismatches.push(format!(
                    "m={m} {d}: interpolation={interp} closed={closed} groebner={gb}"
                ));
            }
        }
        for (k, ideal) in &ideals {
            certs.add(format!("criterion 2 m={m} b={k:?}"), ideal);
        }
    }
    let (fast, timing) = within(C2_BUDGET, start);
    let enough = instances >= C2_MIN_INSTANCES;
    verdict(
        mismatches.is_empty() && fast && enough,
        format!(
            "{instances} instances, {} mismatches, {timing} {}",
            mismatches.len(),
            mismatches
                .iter()
                .take(5)
                .cloned()
                .collect::<Vec<_>>()
                .join("; ")
        ),
    )
}

const C3_CONFIGS: [(usize, usize); 3] = [(2, 2), (2, 3), (3, 2)];

fn criterion_3(certs: &mut Certificates) -> Verdict {
    let start = Instant::now();
    let mut pieces = 0;
    let mut failures = Vec::new();
    for (r, m) in C3_CONFIGS {
        let cfg = CollinearConfig::parse(r, &forms(m), Field::Rational).unwrap();
        let degrees = collinear::degree_box(m, 4, 3);
        for reduced in [false, true] {
            let reports = collinear::verify_generators(&cfg, &degrees, reduced).unwrap();
            pieces += reports.len();
            for rep in reports.iter().filter(|r| !r.spanned) {
                failures.push(format!(
                    "(r={r}, m={m}, reduced={reduced}) {}: span {} of {}",
                    rep.multidegree, rep.span_dim, rep.piece_dim
                ));
            }
        }
        // the piece dimensions used above, re-derived from Gröbner bases
        let mut keys: Vec<Vec<i64>> = degrees
            .iter()
            .map(|d| d.b.iter().map(|&x| x.max(0)).collect())
            .collect();
        keys.sort();
        keys.dedup();
        let ideals: Vec<(Vec<i64>, Ideal)> = keys
            .into_par_iter()
            .map(|k| {
                let ideal = fat_point_ideal(Field::Rational, &cfg.points(), &k).unwrap();
                ideal.groebner();
                (k, ideal)
            })
            .collect();
        let by_key: BTreeMap<Vec<i64>, &Ideal> =
            ideals.iter().map(|(k, i)| (k.clone(), i)).collect();
        for d in &degrees {
            let key: Vec<i64> = d.b.iter().map(|&x| x.max(0)).collect();
            let gb = by_key[&key].degree_part_dim(d.a) as u64;
            let closed = collinear::collinear_dim(&cfg, d).unwrap();
            if gb != closed {
                failures.push(format!(
                    "(r={r}, m={m}) {d}: closed form {closed} but Gröbner {gb}"
                ));
            }
        }
        for (k, ideal) in &ideals {
            certs.add(format!("criterion 3 r={r} m={m} b={k:?}"), ideal);
        }
    }
    let (fast, timing) = within(C3_BUDGET, start);
    verdict(
        failures.is_empty() && fast,
        format!(
            "{pieces} pieces checked, {} failures, {timing} {}",
            failures.len(),
            failures
                .iter()
                .take(5)
                .cloned()
                .collect::<Vec<_>>()
                .join("; ")
        ),
    )
}

/// Every ordered pair of multidegrees in the criterion-3 box. Sums reach
/// multiplicity 6, so the derivative tables go up to order 6.
fn criterion_4() -> Verdict {
    let mut products = 0;
    let mut violations = 0;
    let mut pairs = 0;
    for (r, m) in C3_CONFIGS {
        let cfg = CollinearConfig::parse(r, &forms(m), Field::Rational).unwrap();
        let model: BlowupModel = cfg.to_blowup_model().unwrap();
        let degrees = collinear::degree_box(m, 4, 3);
        let checker = ProductChecker::new(&model, &degrees, 6).unwrap();
        let checks: Vec<_> = degrees
            .par_iter()
            .map(|d| {
                degrees
                    .iter()
                    .map(|e| checker.check_pair(d, e).unwrap())
                    .collect::<Vec<_>>()
            })
            .collect();
        for c in checks.iter().flatten() {
            pairs += 1;
            products += c.products;
            violations += c.violations;
        }
    }
    verdict(
        violations == 0,
        format!("{pairs} degree pairs, {products} products, {violations} violations"),
    )
}

fn criterion_5() -> Verdict {
    let mut details = Vec::new();
    let mut pass = true;
    for (name, fan, want) in [
        ("P2", Fan::projective_plane(), "Z"),
        ("P1xP1", Fan::p1_x_p1(), "Z^2"),
        ("F1", Fan::hirzebruch(1), "Z^2"),
    ] {
        let cl = fan.class_group().unwrap();
        let got = cl.group.to_string();
        let n = fan.rays().len();
        let mut divisors: Vec<Vec<i64>> = vec![vec![]];
        for _ in 0..n {
            let range = if n == 3 { -2..=3 } else { -1..=2 };
            divisors = divisors
                .into_iter()
                .flat_map(|p| range.clone().map(move |x| [p.clone(), vec![x]].concat()))
                .collect();
        }
        let mismatches = divisors
            .iter()
            .filter(|a| {
                fan.piece_dim_monomial(&cl, &cl.class_of(a)).unwrap()
                    != fan.piece_dim_polytope(a).unwrap()
            })
            .count();
        pass &= got == want && mismatches == 0 && divisors.len() >= C5_MIN_DIVISORS;
        details.push(format!(
            "{name}: Cl = {got}, {} divisors, {mismatches} mismatches",
            divisors.len()
        ));
    }
    verdict(pass, details.join("; "))
}

fn criterion_6() -> Verdict {
    let fan = Fan::hirzebruch(1);
    let model = BlowupModel::new(2, vec![rat_point(&[1, 0, 0])]).unwrap();
    let mut compared = 0;
    let mut bad = Vec::new();
    for a in -5..=5 {
        for b in -5..=5 {
            let d = MultiDegree::new(a, vec![b]);
            let toric = fan.piece_dim_polytope(&f1_divisor(&d).unwrap()).unwrap();
            let interp = model.piece_dim(&d).unwrap() as u64;
            compared += 1;
            if toric != interp {
                bad.push(format!("{d}: toric {toric} interpolation {interp}"));
            }
        }
    }
    verdict(
        bad.is_empty(),
        format!(
            "{compared} multidegrees, {} mismatches {}",
            bad.len(),
            bad.join("; ")
        ),
    )
}

fn criterion_7() -> Verdict {
    // Cl(Bl_pt P^2) from the F1 fan, with A = D3 and E = D1
    let cl = Fan::hirzebruch(1).class_group().unwrap().group;
    let a = vec![0, 0, 0, 1];
    let e = vec![0, 1, 0, 0];
    let mod_a = cl.quotient(std::slice::from_ref(&a)).unwrap();
    let mod_ae = cl.quotient(&[a, e]).unwrap();
    let z2 = PresentedAbelianGroup::free(vec!["x".into(), "y".into()]);
    let mod_2 = z2.quotient(&[vec![2, 0]]).unwrap();
    // the same through the CLI, on the free presentation by A and E
    let out = cli(
        &["classgroup-quotient"],
        &serde_json::json!({ "generators": ["A", "E"], "quotient_by": ["A", "E"] }),
    );
    let via_cli: Value = serde_json::from_str(&out.stdout).unwrap_or(Value::Null);
    let pass = mod_a.to_string() == "Z"
        && mod_ae.is_trivial()
        && mod_2.to_string() == "Z + Z/2"
        && via_cli["quotient"] == serde_json::json!({ "rank": 0, "torsion": [] });
    verdict(
        pass,
        format!(
            "Cl/<A> = {mod_a}, Cl/<A, E> = {mod_ae}, Z^2/<(2,0)> = {mod_2}, CLI quotient = {}",
            via_cli["quotient"]
        ),
    )
}

fn criterion_8(certs: &mut Certificates) -> Verdict {
    let start = Instant::now();
    let curve = monomial_curve_ideal(3, 4, 5, Field::Rational).unwrap();
    let p = &curve.ideal;
    let sym: Vec<Ideal> = (1..=4).map(|n| curve.symbolic_power(n).unwrap()).collect();
    let p2 = p.power(2);
    let mut notes = Vec::new();
    let first = sym[0].same_as(p);
    let contains_square = p2.is_subset_of(&sym[1]);
    // first weighted degree where the two ideals differ
    let witness = (0..=40).find(|&d| sym[1].degree_part_dim(d) != p2.degree_part_dim(d));
    if let Some(d) = witness {
        notes.push(format!(
            "degree {d}: dim p^(2) = {}, dim p^2 = {}",
            sym[1].degree_part_dim(d),
            p2.degree_part_dim(d)
        ));
    }
    let mut products_ok = true;
    for i in 1..=3usize {
        for j in 1..=(4 - i) {
            if i > j {
                continue;
            }
            let prod = sym[i - 1].product(&sym[j - 1]).unwrap();
            let ok = prod.is_subset_of(&sym[i + j - 1]);
            products_ok &= ok;
            if !ok {
                notes.push(format!("p^({i}) p^({j}) not inside p^({})", i + j));
            }
            certs.add(format!("criterion 8 p^({i}) p^({j})"), &prod);
        }
    }
    certs.add("criterion 8 p".into(), p);
    certs.add("criterion 8 p^2".into(), &p2);
    for (n, s) in sym.iter().enumerate() {
        certs.add(format!("criterion 8 p^({})", n + 1), s);
    }
    let (fast, timing) = within(C8_BUDGET, start);
    verdict(
        first && contains_square && witness.is_some() && products_ok && fast,
        format!(
            "p^(1) = p: {first}, p^2 in p^(2): {contains_square}, products: {products_ok}, {timing} {}",
            notes.join("; ")
        ),
    )
}

fn criterion_9(certs: &Certificates) -> Verdict {
    verdict(
        certs.checked > 0 && certs.failed.is_empty(),
        format!(
            "{} bases certified, {} failed {}",
            certs.checked,
            certs.failed.len(),
            certs.failed.join("; ")
        ),
    )
}

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("fixtures")
}

/// Each fixture `<name>.job.json` holds `{"args": [...], "input": {...}}`;
/// `<name>.expected` is the exit code followed by the exact standard output
/// and standard error.
fn criterion_10() -> Verdict {
    let mut names: Vec<String> = fs::read_dir(fixtures_dir())
        .unwrap()
        .filter_map(|e| {
            e.ok()?
                .file_name()
                .to_str()?
                .strip_suffix(".job.json")
                .map(String::from)
        })
        .collect();
    names.sort();
    let update = std::env::var_os("UPDATE_FIXTURES").is_some();
    let mut bad = Vec::new();
    for name in &names {
        let job: Value = serde_json::from_str(
            &fs::read_to_string(fixtures_dir().join(format!("{name}.job.json"))).unwrap(),
        )
        .unwrap();
        let args: Vec<String> = job["args"]
            .as_array()
            .unwrap()
            .iter()
            .map(|a| a.as_str().unwrap().to_string())
            .collect();
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = cli(&args, &job["input"]);
        let second = cli(&args, &job["input"]);
        let expected_path = fixtures_dir().join(format!("{name}.expected"));
        let recorded = format!("exit {}\n{}{}", first.code, first.stdout, first.stderr);
        if update {
            fs::write(&expected_path, &recorded).unwrap();
        }
        let expected = fs::read_to_string(&expected_path).unwrap_or_default();
        if first != second {
            bad.push(format!("{name}: reruns differ"));
        } else if recorded != expected {
            bad.push(format!("{name}: output differs from the recorded fixture"));
        }
    }
    verdict(
        !names.is_empty() && bad.is_empty(),
        format!(
            "{} fixtures, {}",
            names.len(),
            if bad.is_empty() {
                "all byte-identical".into()
            } else {
                bad.join("; ")
            }
        ),
    )
}

fn main() {
    let mut certs = Certificates::default();
    let mut all = true;
    all &= run_criterion(1, "projection-formula dimensions", criterion_1);
    all &= run_criterion(2, "three-oracle agreement", || criterion_2(&mut certs));
    all &= run_criterion(3, "generator set spans every piece", || {
        criterion_3(&mut certs)
    });
    all &= run_criterion(4, "ring multiplicativity", criterion_4);
    all &= run_criterion(5, "toric class groups and two piece counts", criterion_5);
    all &= run_criterion(6, "F1 against the blown-up plane", criterion_6);
    all &= run_criterion(7, "class group quotients", criterion_7);
    all &= run_criterion(8, "symbolic powers of p(3,4,5)", || criterion_8(&mut certs));
    all &= run_criterion(9, "Gröbner certificates", || criterion_9(&certs));
    all &= run_criterion(10, "CLI determinism", criterion_10);
    if !all {
        say("acceptance: FAILED");
        std::process::exit(1);
    }
    say("acceptance: all criteria passed");
}
