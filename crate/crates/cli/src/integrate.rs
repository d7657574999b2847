use crate::{print_json, put, say, Outcome};
use clap::{Args, ValueEnum};
use laxlab_numeric::{
    dpii_first_integral_check, integrate, p34_map_check, Equation, MapCheck, NumericError, OdeProblem, Pairing,
    PiiConvention, TolSpec, Trajectory, DEFAULT_GRID,
};
use num_complex::Complex64 as C;
use serde::Deserialize;
use serde_json::json;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Problem {
    Pii,
    P34,
    MatrixPii,
    Dpii3,
    /// Integrate PII and test which P34 constant p and q satisfy.
    MapCheck,
    /// Integrate scalar derivative PII and track its first integral.
    FirstIntegral,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Csv,
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    Printed,
    LaxPair,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PairingArg {
    AlphaMinusHalf,
    AlphaPlusHalf,
}

/// Problem description; the same fields may come from a TOML file.
#[derive(Args, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fields {
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    z0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    z1: Option<f64>,
    /// Row-major entries, comma separated; complex values as `a+bi`.
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    #[serde(default)]
    u0: Vec<String>,
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    #[serde(default)]
    du0: Vec<String>,
    /// u'' at z0 (dpii3 and first-integral only).
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    #[serde(default)]
    ddu0: Vec<String>,
    /// Matrix size.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    rtol: Option<f64>,
    #[arg(long)]
    atol: Option<f64>,
    /// Report-grid spacing.
    #[arg(long)]
    grid: Option<f64>,
    /// Sign of the zu term in PII.
    #[arg(long, value_enum)]
    #[serde(skip)]
    convention: Option<ConventionArg>,
    #[arg(skip)]
    #[serde(rename = "convention")]
    convention_name: Option<String>,
    #[arg(long, value_enum)]
    #[serde(skip)]
    pairing: Option<PairingArg>,
    #[arg(skip)]
    #[serde(rename = "pairing")]
    pairing_name: Option<String>,
    /// Declared singular points the span must avoid.
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    #[serde(default)]
    poles: Vec<f64>,
}

#[derive(Args)]
pub struct IntegrateArgs {
    /// Equation or check; may be omitted when `--problem` names one.
    #[arg(value_enum)]
    problem: Option<Problem>,
    /// TOML file with the problem fields plus `problem = "..."`.
    #[arg(long = "problem", value_name = "FILE")]
    file: Option<std::path::PathBuf>,
    #[command(flatten)]
    fields: Fields,
    /// Defaults to csv for trajectories and text for checks.
    #[arg(long, value_enum)]
    format: Option<OutFormat>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemFile {
    problem: Option<Problem>,
    #[serde(flatten)]
    fields: Fields,
}

fn convention(name: &str) -> Result<ConventionArg, String> {
    ConventionArg::from_str(name, true).map_err(|_| format!("unknown convention `{name}`"))
}

fn pairing(name: &str) -> Result<PairingArg, String> {
    PairingArg::from_str(name, true).map_err(|_| format!("unknown pairing `{name}`"))
}

fn merge(file: Fields, cli: &Fields) -> Result<Fields, String> {
    fn pick<T: Clone>(a: &Option<T>, b: Option<T>) -> Option<T> {
        a.clone().or(b)
    }
    fn list<T: Clone>(a: &[T], b: Vec<T>) -> Vec<T> {
        if a.is_empty() {
            b
        } else {
            a.to_vec()
        }
    }
    let file_convention = file.convention_name.as_deref().map(convention).transpose()?;
    let file_pairing = file.pairing_name.as_deref().map(pairing).transpose()?;
    Ok(Fields {
        alpha: pick(&cli.alpha, file.alpha),
        z0: pick(&cli.z0, file.z0),
        z1: pick(&cli.z1, file.z1),
        u0: list(&cli.u0, file.u0),
        du0: list(&cli.du0, file.du0),
        ddu0: list(&cli.ddu0, file.ddu0),
        n: pick(&cli.n, file.n),
        rtol: pick(&cli.rtol, file.rtol),
        atol: pick(&cli.atol, file.atol),
        grid: pick(&cli.grid, file.grid),
        convention: pick(&cli.convention, file_convention),
        convention_name: None,
        pairing: pick(&cli.pairing, file_pairing),
        pairing_name: None,
        poles: list(&cli.poles, file.poles),
    })
}

fn complex(s: &str) -> Result<C, String> {
    crate::symbolic::complex(s)
}

fn complexes(name: &str, v: &[String]) -> Result<Vec<C>, String> {
    if v.is_empty() {
        return Err(format!("--{name} is required"));
    }
    v.iter().map(|s| complex(s)).collect()
}

struct Resolved {
    alpha: C,
    z0: f64,
    z1: f64,
    u0: Vec<C>,
    du0: Vec<C>,
    ddu0: Option<Vec<C>>,
    n: usize,
    tol: TolSpec,
    grid: f64,
    convention: PiiConvention,
    pairing: Option<Pairing>,
    poles: Vec<f64>,
}

fn resolve(f: &Fields, needs_ddu: bool) -> Result<Resolved, String> {
    let default = TolSpec::default();
    let rtol = f.rtol.unwrap_or(default.rtol);
    Ok(Resolved {
        alpha: f.alpha.as_deref().map(complex).transpose()?.unwrap_or_default(),
        z0: f.z0.ok_or("--z0 is required")?,
        z1: f.z1.ok_or("--z1 is required")?,
        u0: complexes("u0", &f.u0)?,
        du0: complexes("du0", &f.du0)?,
        ddu0: if needs_ddu {
            Some(complexes("ddu0", &f.ddu0)?)
        } else if f.ddu0.is_empty() {
            None
        } else {
            return Err("--ddu0 only applies to dpii3 and first-integral".into());
        },
        n: f.n.unwrap_or(1),
        tol: TolSpec {
            rtol,
            atol: f.atol.unwrap_or(default.atol * rtol / default.rtol),
        },
        grid: f.grid.unwrap_or(DEFAULT_GRID),
        convention: match f.convention.unwrap_or(ConventionArg::Printed) {
            ConventionArg::Printed => PiiConvention::Printed,
            ConventionArg::LaxPair => PiiConvention::LaxPair,
        },
        pairing: f.pairing.map(|p| match p {
            PairingArg::AlphaMinusHalf => Pairing::AlphaMinusHalf,
            PairingArg::AlphaPlusHalf => Pairing::AlphaPlusHalf,
        }),
        poles: f.poles.clone(),
    })
}

fn numeric_failure(e: NumericError) -> Outcome {
    match e {
        NumericError::InvalidProblem(m) => Outcome::Usage(m),
        other => {
            eprintln!("error: {other}");
            Outcome::Failed
        }
    }
}

pub fn run(a: &IntegrateArgs) -> Outcome {
    let (file_problem, file_fields) = match &a.file {
        None => (None, Fields::default()),
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return Outcome::Usage(format!("{}: {e}", path.display())),
            };
            match toml::from_str::<ProblemFile>(&text) {
                Ok(p) => (p.problem, p.fields),
                Err(e) => return Outcome::Usage(format!("{}: {e}", path.display())),
            }
        }
    };
    let Some(problem) = a.problem.or(file_problem) else {
        return Outcome::Usage("no problem given".into());
    };
    let fields = match merge(file_fields, &a.fields) {
        Ok(f) => f,
        Err(e) => return Outcome::Usage(e),
    };
    let needs_ddu = matches!(problem, Problem::Dpii3 | Problem::FirstIntegral);
    let r = match resolve(&fields, needs_ddu) {
        Ok(r) => r,
        Err(e) => return Outcome::Usage(e),
    };
    match problem {
        Problem::MapCheck => map_check(&r, a.format.unwrap_or(OutFormat::Text)),
        Problem::FirstIntegral => first_integral(&r, a.format.unwrap_or(OutFormat::Text)),
        _ => trajectory(problem, r, a.format.unwrap_or(OutFormat::Csv)),
    }
}

fn scalar_only(r: &Resolved, what: &str) -> Result<(), Outcome> {
    if r.n != 1 || r.u0.len() != 1 || r.du0.len() != 1 || r.ddu0.as_ref().is_some_and(|d| d.len() != 1) {
        return Err(Outcome::Usage(format!("{what} takes scalar initial data")));
    }
    Ok(())
}

fn trajectory(problem: Problem, r: Resolved, format: OutFormat) -> Outcome {
    let equation = match problem {
        Problem::Pii | Problem::MatrixPii => Equation::Pii {
            alpha: r.alpha,
            convention: r.convention,
        },
        Problem::P34 => match r.pairing {
            Some(pairing) => Equation::P34 {
                alpha: r.alpha,
                pairing,
            },
            None => return Outcome::Usage("p34 needs --pairing".into()),
        },
        _ => Equation::Dpii3,
    };
    if problem == Problem::Pii {
        if let Err(o) = scalar_only(&r, "pii") {
            return o;
        }
    }
    let prob = OdeProblem {
        equation,
        n: r.n,
        z0: r.z0,
        z1: r.z1,
        u0: r.u0,
        du0: r.du0,
        ddu0: r.ddu0,
        grid: r.grid,
        tol: r.tol,
        poles: r.poles,
    };
    let t = match integrate(&prob) {
        Ok(t) => t,
        Err(e) => return numeric_failure(e),
    };
    match format {
        OutFormat::Csv => put(&csv_text(&t).expect("in-memory csv")),
        OutFormat::Json => print_json(&json!({
            "problem": prob,
            "max_residual": t.max_residual(),
            "trajectory": t,
        })),
        OutFormat::Text => {
            say!(
                "{} on [{}, {}], {} samples",
                t.equation.name(),
                prob.z0,
                prob.z1,
                t.z.len()
            );
            say!("accepted steps {}, rejected {}", t.accepted_steps, t.rejected_steps);
            say!("max finite-difference residual {:e}", t.max_residual());
            let last: Vec<String> = t.u(t.z.len() - 1).iter().map(|v| v.to_string()).collect();
            say!("u({}) = [{}]", t.z.last().expect("nonempty"), last.join(", "));
        }
    }
    Outcome::Ok
}

fn csv_text(t: &Trajectory) -> Result<String, Box<dyn std::error::Error>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["z".to_string()];
    for k in 0..t.n * t.n {
        let name = if t.n == 1 {
            "u".to_string()
        } else {
            format!("u{}{}", k / t.n + 1, k % t.n + 1)
        };
        header.push(format!("{name}_re"));
        header.push(format!("{name}_im"));
    }
    header.push("residual".into());
    w.write_record(&header)?;
    for (k, z) in t.z.iter().enumerate() {
        let mut row = vec![format!("{z}")];
        for v in t.u(k) {
            row.push(format!("{:e}", v.re));
            row.push(format!("{:e}", v.im));
        }
        row.push(t.residual[k].map(|r| format!("{r:e}")).unwrap_or_default());
        w.write_record(&row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn map_check(r: &Resolved, format: OutFormat) -> Outcome {
    if let Err(o) = scalar_only(r, "map-check") {
        return o;
    }
    let mut c = MapCheck::new(r.alpha, r.u0[0], r.du0[0], r.z0, r.z1, r.convention);
    c.grid = r.grid;
    c.tol = r.tol;
    let report = p34_map_check(&c);
    match (&report, format) {
        (_, OutFormat::Csv) => return Outcome::Usage("map-check prints text or json".into()),
        (Ok(m), OutFormat::Json) => print_json(&json!({"check": c, "report": m})),
        (Err(e), OutFormat::Json) => print_json(&json!({"check": c, "error": e.to_string()})),
        (Ok(m), OutFormat::Text) => {
            say!("base PII residual {:e}", m.base_residual);
            for v in [&m.p, &m.q] {
                say!(
                    "{}: (alpha - 1/2)^2 residual {:e}, (alpha + 1/2)^2 residual {:e}, winner {}",
                    v.variable,
                    v.minus_half,
                    v.plus_half,
                    v.winner.label()
                );
            }
        }
        (Err(e), OutFormat::Text) => eprintln!("error: {e}"),
    }
    match report {
        Ok(_) => Outcome::Ok,
        Err(NumericError::InvalidProblem(m)) => Outcome::Usage(m),
        Err(_) => Outcome::Failed,
    }
}

fn first_integral(r: &Resolved, format: OutFormat) -> Outcome {
    if let Err(o) = scalar_only(r, "first-integral") {
        return o;
    }
    let ddu0 = r.ddu0.as_ref().expect("resolved")[0];
    let report = match dpii_first_integral_check(r.u0[0], r.du0[0], ddu0, r.z0, r.z1, r.tol) {
        Ok(d) => d,
        Err(e) => return numeric_failure(e),
    };
    match format {
        OutFormat::Csv => return Outcome::Usage("first-integral prints text or json".into()),
        OutFormat::Json => print_json(&json!(report)),
        OutFormat::Text => {
            say!("first integral at z0: {}", report.initial);
            say!("max drift {:e} up to z = {}", report.max_drift, report.final_z);
            say!("max finite-difference residual {:e}", report.residual);
        }
    }
    Outcome::Ok
}
