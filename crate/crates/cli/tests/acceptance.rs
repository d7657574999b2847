//! Acceptance criteria, one line each.
//!
//! Every criterion is evaluated strictly and printed as PASS or FAIL. The
//! process exits nonzero when a verdict differs from the one recorded in
//! `RECORDED` (a regression, or a red criterion that turned green and needs
//! its record updated). With `LAXLAB_ACCEPTANCE_STRICT=1` any FAIL is fatal.

#[path = "../../core/tests/support/kernel_props.rs"]
mod kernel_props;

use laxlab_core::catalog;
use laxlab_core::ncexpr::{lit, rules, Coeff, NCExpr};
use laxlab_core::verify::CASES;
use laxlab_numeric::{
    classify, integrate, p34_map_check, p34_residual, Equation, MapCheck, NumericError, OdeProblem, Pairing,
    PiiConvention, Winner,
};
use num_complex::Complex64 as C;
use serde_json::Value;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

struct Verdict {
    name: &'static str,
    pass: bool,
    detail: String,
}

/// Verdicts as of the current engine, with the reason for every red one.
const RECORDED: [(&str, bool); 9] = [
    // The pair yields u'' = 2u^3 + zu + alpha; the printed target has -zu.
    ("flaschka-newell compatibility", false),
    // The [z,u]_+ term comes out with coefficient -1/2, printed +1/2.
    ("quantum pair proposition", false),
    // Printed lambda-part, printed case-i line and printed case-ii claims all differ.
    ("case reductions", false),
    // Printed gauge pair, both printed P34 forms and their classical limit differ.
    ("gauge and quantum P34", false),
    ("comparison P34 difference", true),
    ("numeric PII oracle", true),
    ("solution map", true),
    ("kernel property suite", true),
    ("negative controls", true),
];

fn laxlab(args: &[&str]) -> (Output, Duration) {
    let t = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_laxlab"))
        .args(args)
        .output()
        .expect("spawn laxlab");
    (out, t.elapsed())
}

fn report(case: &str) -> (Value, Duration, Option<i32>) {
    let (out, dt) = laxlab(&["verify", "--case", case, "--format", "json"]);
    let v = serde_json::from_slice(&out.stdout).expect("json report");
    (v, dt, out.status.code())
}

fn target<'a>(r: &'a Value, name: &str) -> &'a Value {
    r["targets"]
        .as_array()
        .expect("targets")
        .iter()
        .find(|t| t["target"] == name)
        .unwrap_or_else(|| panic!("no target `{name}` in {}", r["case"]))
}

/// `(matched, description)` for a target record.
fn check(r: &Value, name: &str) -> (bool, String) {
    let t = target(r, name);
    let ok = t["matched"].as_bool().expect("matched");
    let text = if ok {
        format!("{name} reproduced")
    } else {
        format!("{name} differs by {}", t["difference"].as_str().unwrap_or("?"))
    };
    (ok, text)
}

fn status_ok(r: &Value) -> bool {
    matches!(r["status"].as_str(), Some("verified" | "verified-with-notes"))
}

fn has_note(r: &Value, needle: &str) -> bool {
    r["notes"]
        .as_array()
        .expect("notes")
        .iter()
        .any(|n| n.as_str().is_some_and(|s| s.contains(needle)))
}

fn all(parts: Vec<(bool, String)>) -> (bool, String) {
    let pass = parts.iter().all(|p| p.0);
    let detail = parts.into_iter().map(|p| p.1).collect::<Vec<_>>().join("; ");
    (pass, detail)
}

fn flaschka_newell() -> Verdict {
    let (r, dt, _) = report("fn-classical");
    let (printed, text) = check(&r, "classical-pii-target#1");
    let derived = check(&r, "classical-pii-target-derived#1").0;
    let mut detail = format!(
        "{text}; hand-derived form {}",
        if derived { "matches" } else { "does not match" }
    );
    if has_note(&r, "after z -> -z") {
        detail.push_str("; printed form is the extracted one after z -> -z");
    }
    detail.push_str(&format!("; {dt:.2?}"));
    Verdict {
        name: "flaschka-newell compatibility",
        pass: printed && status_ok(&r) && dt < Duration::from_secs(1),
        detail,
    }
}

fn quantum_pair() -> Verdict {
    let (r, dt, _) = report("prop31");
    let (pass, detail) = all(vec![
        check(&r, "commutation-zv-target#1"),
        check(&r, "qmpii-target-asprinted#1"),
        check(&r, "qmpii-target-asprinted#2"),
        (
            has_note(&r, "they cancel when the two are added"),
            "lambda-linear hbar pair cancels on addition".into(),
        ),
        (status_ok(&r), format!("status {}", r["status"])),
        (dt < Duration::from_secs(5), format!("{dt:.2?}")),
    ]);
    let coeffs = r["notes"]
        .as_array()
        .unwrap()
        .iter()
        .filter_map(|n| n.as_str())
        .find(|n| n.starts_with("extracted quantum PII"))
        .unwrap_or("no coefficient note")
        .to_string();
    Verdict {
        name: "quantum pair proposition",
        pass,
        detail: format!("{detail}; {coeffs}"),
    }
}

fn case_reductions() -> Verdict {
    let (v0, ..) = report("case-iii-v0");
    let (c1, ..) = report("case-i");
    let (c2, ..) = report("case-ii");
    let (pass, detail) = all(vec![
        check(&v0, "qpii-pair lambda-part at v = 0, hbar = 0 vs fn-pair"),
        check(&c1, "qpii-target#1"),
        check(&c1, "qpii-target#2"),
        check(&c2, "case-ii-target#1"),
        check(&c2, "case-ii-target#1 = dmpii-os-target#1 - (2 nu^2 nu' + 2 nu' nu^2)"),
    ]);
    Verdict {
        name: "case reductions",
        pass,
        detail,
    }
}

fn gauge_p34() -> Verdict {
    let (g, ..) = report("prop41");
    let (p, ..) = report("p34");
    let (pass, detail) = all(vec![
        check(&g, "gauge-pair z-part (v = u)"),
        check(&g, "gauge-pair lambda-part (p, q by their definitions)"),
        check(&p, "qp34-target#1"),
        check(&p, "qp34-q-target#1"),
        check(&p, "classical-p34-q-target#1 vs scalar limit of qp34-target#1"),
    ]);
    Verdict {
        name: "gauge and quantum P34",
        pass,
        detail,
    }
}

fn comparison_p34() -> Verdict {
    let ours = catalog::target("qp34-target").lines[0].clone();
    let theirs = catalog::target("ng-comparison-target").lines[1].clone();
    let inv = rules::inverses();
    let diff = inv.normalize(&(&theirs - &ours)).expect("normalizes");
    let shift = &(&NCExpr::scalar(Coeff::beta()) - &lit("hbar*hbar")) * &lit("p");
    let exact = diff == shift;
    let (r, ..) = report("p34");
    let noted = has_note(&r, "a multiple of (beta - hbar^2) p");
    Verdict {
        name: "comparison P34 difference",
        pass: exact && noted,
        detail: format!("comparison - ours = {diff}; equals (beta - hbar^2) p: {exact}; reported: {noted}"),
    }
}

fn numeric_oracle() -> Verdict {
    let (out, dt) = laxlab(&[
        "integrate",
        "pii",
        "--alpha",
        "1",
        "--z0",
        "1",
        "--z1",
        "5",
        "--u0",
        "1",
        "--du0",
        "-1",
    ]);
    let mut rd = csv::Reader::from_reader(out.stdout.as_slice());
    let mut err = 0.0f64;
    for row in rd.records() {
        let row = row.expect("csv row");
        let z: f64 = row[0].parse().unwrap();
        let u = C::new(row[1].parse().unwrap(), row[2].parse().unwrap());
        err = err.max((u - 1.0 / z).norm());
    }
    let t = Instant::now();
    let zero = integrate(&OdeProblem::scalar(
        Equation::Pii {
            alpha: C::new(0.0, 0.0),
            convention: PiiConvention::Printed,
        },
        1.0,
        5.0,
        C::new(0.0, 0.0),
        C::new(0.0, 0.0),
    ))
    .expect("zero solution");
    let dz = t.elapsed();
    let zmax = zero.states.iter().map(|s| s[0].norm()).fold(0.0, f64::max);
    Verdict {
        name: "numeric PII oracle",
        pass: err < 1e-8 && zmax < 1e-12 && dt < Duration::from_secs(1) && dz < Duration::from_secs(1),
        detail: format!("max |u - 1/z| = {err:.2e} ({dt:.2?}); zero solution max |u| = {zmax:.1e} ({dz:.2?})"),
    }
}

fn solution_map() -> Verdict {
    let t = Instant::now();
    let c = |re: f64| C::new(re, 0.0);
    let generic = p34_map_check(&MapCheck::new(
        c(0.7),
        c(0.3),
        c(-0.2),
        1.0,
        1.5,
        PiiConvention::LaxPair,
    ));
    let printed = p34_map_check(&MapCheck::new(
        c(0.7),
        c(0.3),
        c(-0.2),
        1.0,
        1.5,
        PiiConvention::Printed,
    ));
    let mut parts = Vec::new();
    match &generic {
        Ok(m) => {
            for v in [&m.p, &m.q] {
                let win = v.winning_residual();
                let lose = v.losing_residual().unwrap_or(0.0);
                parts.push((
                    win < 1e-6 && lose > 1e-2,
                    format!(
                        "{}: {} wins ({win:.1e}, other {lose:.1e})",
                        v.variable,
                        v.winner.label()
                    ),
                ));
            }
        }
        Err(e) => parts.push((false, format!("generic data: {e}"))),
    }
    let zero = p34_map_check(&MapCheck::new(c(0.0), c(0.0), c(0.0), 1.0, 5.0, PiiConvention::LaxPair));
    parts.push((
        matches!(&zero, Ok(m) if m.p.winner == Winner::Both),
        "alpha = 0, u = 0: p = z/2 fits both constants".into(),
    ));
    let half = |alpha: f64, pairing| p34_residual(c(0.5), c(0.5), c(0.0), 1.0, c(alpha), pairing).norm();
    parts.push((
        half(1.0, Pairing::AlphaMinusHalf) == 0.0 && half(1.0, Pairing::AlphaPlusHalf) > 1.0,
        "alpha = 1: p = z/2 satisfies the (alpha - 1/2)^2 form exactly".into(),
    ));
    let recip = integrate(&OdeProblem::scalar(
        Equation::Pii {
            alpha: c(1.0),
            convention: PiiConvention::Printed,
        },
        1.0,
        5.0,
        c(1.0),
        c(-1.0),
    ))
    .expect("reciprocal solution");
    let p: Vec<C> = recip
        .states
        .iter()
        .zip(&recip.z)
        .map(|(s, z)| s[0] * s[0] + s[1] + z / 2.0)
        .collect();
    let got = classify("p", &p, &recip.z, c(1.0));
    parts.push((
        matches!(&got, Ok(r) if r.winner == Winner::Only(Pairing::AlphaMinusHalf)),
        "u = 1/z trajectory maps to p = z/2 with (alpha - 1/2)^2".into(),
    ));
    let dt = t.elapsed();
    parts.push((dt < Duration::from_secs(5), format!("{dt:.2?}")));
    let (pass, mut detail) = all(parts);
    if let Err(NumericError::BothPairingsFail {
        minus_half, plus_half, ..
    }) = printed
    {
        detail.push_str(&format!(
            "; with the printed -zu sign neither constant fits p ({minus_half:.2}, {plus_half:.2}), so the map is run on +zu"
        ));
    }
    Verdict {
        name: "solution map",
        pass,
        detail,
    }
}

fn kernel_suite() -> Verdict {
    let t = Instant::now();
    let mut parts = Vec::new();
    for (name, f) in kernel_props::SUITE {
        match f() {
            Ok(()) => parts.push((true, format!("{name} ok"))),
            Err(e) => parts.push((false, format!("{name}: {e}"))),
        }
    }
    let dt = t.elapsed();
    parts.push((
        dt < Duration::from_secs(30),
        format!("{} cases each, {dt:.2?}", kernel_props::CASES),
    ));
    let (pass, detail) = all(parts);
    Verdict {
        name: "kernel property suite",
        pass,
        detail,
    }
}

fn negative_controls() -> Verdict {
    let mut bad = Vec::new();
    for case in CASES {
        let (out, _) = laxlab(&["verify", "--case", case, "--negative-control"]);
        if out.status.code() != Some(1) {
            bad.push(format!("{case} exited {:?}", out.status.code()));
        }
        let (_, _, code) = report(case);
        if code != Some(0) {
            bad.push(format!("{case} unmutated exited {code:?}"));
        }
    }
    Verdict {
        name: "negative controls",
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("all {} mutated twins exit 1, originals exit 0", CASES.len())
        } else {
            bad.join("; ")
        },
    }
}

fn main() {
    let verdicts = [
        flaschka_newell(),
        quantum_pair(),
        case_reductions(),
        gauge_p34(),
        comparison_p34(),
        numeric_oracle(),
        solution_map(),
        kernel_suite(),
        negative_controls(),
    ];
    let strict = std::env::var("LAXLAB_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let mut unexpected = Vec::new();
    for (v, (name, recorded)) in verdicts.iter().zip(RECORDED) {
        assert_eq!(v.name, name);
        println!("{} {}: {}", if v.pass { "PASS" } else { "FAIL" }, v.name, v.detail);
        if v.pass != recorded || (strict && !v.pass) {
            unexpected.push(v.name);
        }
    }
    let green = verdicts.iter().filter(|v| v.pass).count();
    println!("{green}/{} criteria pass", verdicts.len());
    if !unexpected.is_empty() {
        eprintln!("verdicts differ from the record: {}", unexpected.join(", "));
        std::process::exit(1);
    }
}
