use crate::{print_json, put, say, Format, Outcome};
use clap::{ArgGroup, Args};
use laxlab_core::catalog::{self, CatalogItem, Kind, Params};
use laxlab_core::laxmat::{extract_equations, pauli_decompose, zero_curvature_residual, Mat2, ResidualSign};
use laxlab_core::ncexpr::{lit, rules, GaussRat, Gen, NCExpr, RuleSet};
use num_complex::Complex64;
use serde_json::{json, Value};
use std::collections::BTreeMap;

fn kind_label(k: Kind) -> &'static str {
    match k {
        Kind::Pair => "pair",
        Kind::Target => "target",
        Kind::Matrices => "matrices",
    }
}

pub fn list(format: Format) -> Outcome {
    let rows: Vec<_> = catalog::entries()
        .iter()
        .map(|e| {
            (
                e.key,
                kind_label(e.kind),
                e.transcription.label(),
                e.citation,
                e.slots(),
            )
        })
        .collect();
    match format {
        Format::Json => print_json(&Value::Array(
            rows.iter()
                .map(
                    |(k, kind, t, c, s)| json!({"key": k, "kind": kind, "transcription": t, "citation": c, "slots": s}),
                )
                .collect(),
        )),
        Format::Text => {
            for (k, kind, t, c, s) in rows {
                say!("{k}\t{kind}\t{t}\t{c}\t[{}]", s.join(", "));
            }
        }
    }
    Outcome::Ok
}

fn matrix_json(m: &Mat2) -> Value {
    let parts = pauli_decompose(m);
    let pauli: serde_json::Map<String, Value> = parts
        .labelled()
        .iter()
        .map(|(n, e)| (n.to_string(), Value::String(e.to_string())))
        .collect();
    json!({"entries": m.to_strings(), "pauli": pauli})
}

fn matrix_text(name: &str, m: &Mat2) -> String {
    let s = m.to_strings();
    let parts = pauli_decompose(m);
    let pauli: Vec<String> = parts
        .labelled()
        .iter()
        .filter(|(_, e)| !e.is_zero())
        .map(|(n, e)| format!("({e}) {n}"))
        .collect();
    format!(
        "{name} =\n  [{}, {}]\n  [{}, {}]\n  = {}\n",
        s[0][0],
        s[0][1],
        s[1][0],
        s[1][1],
        if pauli.is_empty() {
            "0".into()
        } else {
            pauli.join(" + ")
        }
    )
}

/// `name=value` with a real rational or complex-rational value such as `1/2` or `1+2i`.
fn parse_param(s: &str) -> Result<(String, GaussRat), String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("parameter `{s}` is not name=value"))?;
    let e = laxlab_core::ncexpr::parse(value, &laxlab_core::ncexpr::Context::standard())
        .map_err(|e| format!("parameter `{name}`: {e}"))?;
    let g = match e.terms().collect::<Vec<_>>().as_slice() {
        [] => Some(GaussRat::zero()),
        [(w, c)] if w.is_one() => c.as_number(),
        _ => None,
    };
    let g = g.ok_or_else(|| format!("parameter `{name}` must be a number"))?;
    Ok((name.to_string(), g))
}

#[derive(Args)]
pub struct ShowArgs {
    key: String,
    /// Numeric parameter, e.g. `alpha1=1/2`; repeatable.
    #[arg(long = "param")]
    params: Vec<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

fn build_params(raw: &[String]) -> Result<Params, String> {
    raw.iter().try_fold(Params::none(), |p, s| {
        let (n, v) = parse_param(s)?;
        Ok(p.value(&n, v))
    })
}

pub fn show(a: &ShowArgs) -> Outcome {
    let entry = match catalog::entry(&a.key) {
        Ok(e) => e,
        Err(e) => return Outcome::Usage(e.to_string()),
    };
    let item = match build_params(&a.params).and_then(|p| catalog::build(&a.key, &p).map_err(|e| e.to_string())) {
        Ok(i) => i,
        Err(e) => return Outcome::Usage(e),
    };
    let head = json!({
        "key": entry.key,
        "kind": kind_label(entry.kind),
        "transcription": entry.transcription.label(),
        "citation": entry.citation,
        "slots": entry.slots(),
    });
    match a.format {
        Format::Json => {
            let mut v = head;
            let body = match &item {
                CatalogItem::Pair(p) => json!({"p": matrix_json(&p.p), "q": matrix_json(&p.q), "rules": p.rules}),
                CatalogItem::Target(t) => json!({"lines": t.lines.iter().map(|l| l.to_string()).collect::<Vec<_>>()}),
                CatalogItem::Matrices(ms) => {
                    Value::Object(ms.iter().map(|(n, m)| (n.clone(), matrix_json(m))).collect())
                }
            };
            v["value"] = body;
            print_json(&v);
        }
        Format::Text => {
            say!(
                "{} ({}, {})",
                entry.key,
                kind_label(entry.kind),
                entry.transcription.label()
            );
            say!("  {}", entry.citation);
            match &item {
                CatalogItem::Pair(p) => {
                    put(&matrix_text("P", &p.p));
                    put(&matrix_text("Q", &p.q));
                }
                CatalogItem::Target(t) => {
                    for l in &t.lines {
                        say!("{l} = 0");
                    }
                }
                CatalogItem::Matrices(ms) => {
                    for (n, m) in ms {
                        put(&matrix_text(n, m));
                    }
                }
            }
        }
    }
    Outcome::Ok
}

#[derive(Args)]
pub struct DeriveArgs {
    /// Catalog key of a Lax pair.
    pub key: String,
    /// Extra named relation sets, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub rules: Vec<String>,
    /// Use `P_λ − Q_z − [Q,P]` instead of `Q_z − P_λ − [P,Q]`.
    #[arg(long)]
    pub reversed: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args)]
#[command(group(ArgGroup::new("v").args(["v_prime", "v_u", "v_zero"])))]
pub struct ReduceArgs {
    #[command(flatten)]
    pub derive: DeriveArgs,
    /// Bind v = u'.
    #[arg(long)]
    pub v_prime: bool,
    /// Bind v = u.
    #[arg(long)]
    pub v_u: bool,
    /// Bind v = 0.
    #[arg(long)]
    pub v_zero: bool,
    /// Set hbar = 0 before forming the residual.
    #[arg(long)]
    pub hbar0: bool,
    /// Let all generators commute before extracting equations.
    #[arg(long)]
    pub scalarize: bool,
}

pub fn derive(a: &DeriveArgs) -> Outcome {
    run_pair(a, None, false, false)
}

pub fn reduce(a: &ReduceArgs) -> Outcome {
    let v = if a.v_prime {
        Some(lit("u'"))
    } else if a.v_u {
        Some(lit("u"))
    } else if a.v_zero {
        Some(NCExpr::zero())
    } else {
        None
    };
    run_pair(&a.derive, v, a.hbar0, a.scalarize)
}

fn run_pair(a: &DeriveArgs, v: Option<NCExpr>, hbar0: bool, scalarize: bool) -> Outcome {
    let entry = match catalog::entry(&a.key) {
        Ok(e) => e,
        Err(e) => return Outcome::Usage(e.to_string()),
    };
    if entry.kind != Kind::Pair {
        return Outcome::Usage(format!("`{}` is a {}, not a Lax pair", a.key, kind_label(entry.kind)));
    }
    let extra = match a.rules.iter().map(|n| rules::named(n)).collect::<Result<Vec<_>, _>>() {
        Ok(s) => s,
        Err(e) => return Outcome::Usage(e.to_string()),
    };
    let pair = catalog::pair(&a.key);
    let mut sets = extra;
    for n in &pair.rules {
        sets.push(rules::named(n).expect("catalog rule names are valid"));
    }
    let rs: RuleSet = rules::combine(&sets);

    let bind = |m: &Mat2| -> Mat2 {
        let mut out = match &v {
            Some(e) => {
                let map: BTreeMap<Gen, NCExpr> = [(Gen::V, e.clone())].into();
                m.try_map(|x| x.substitute(&map)).expect("v is never inverted")
            }
            None => m.clone(),
        };
        if hbar0 {
            out = out.classical_limit();
        }
        out
    };
    let (p, q) = (bind(&pair.p), bind(&pair.q));
    let sign = if a.reversed {
        ResidualSign::Reversed
    } else {
        ResidualSign::Standard
    };
    let r = match zero_curvature_residual(&p, &q, &rs, sign) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return Outcome::Failed;
        }
    };
    let r = if scalarize { r.scalarize() } else { r };
    let eqs = extract_equations(&r, "residual");

    match a.format {
        Format::Json => print_json(&json!({
            "key": a.key,
            "p": matrix_json(&p),
            "q": matrix_json(&q),
            "residual": matrix_json(&r),
            "equations": eqs.iter().map(|e| json!({
                "expression": e.lhs.to_string(),
                "provenance": e.provenance.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })),
        Format::Text => {
            put(&matrix_text("P", &p));
            put(&matrix_text("Q", &q));
            put(&matrix_text("R", &r));
            say!("equations:");
            for e in &eqs {
                let prov: Vec<String> = e.provenance.iter().map(|p| p.to_string()).collect();
                say!("  {} = 0   [{}]", e.lhs, prov.join("; "));
            }
        }
    }
    Outcome::Ok
}

pub fn complex(s: &str) -> Result<Complex64, String> {
    s.trim()
        .parse::<Complex64>()
        .map_err(|_| format!("`{s}` is not a complex number"))
}
