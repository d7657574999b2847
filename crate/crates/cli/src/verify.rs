use crate::{print_json, say, Format, Outcome};
use clap::Args;
use laxlab_core::ncexpr::rules;
use laxlab_core::verify::{self, RunOptions, Status, VerificationReport, CASES};
use serde_json::json;

#[derive(Args)]
pub struct VerifyArgs {
    /// Case id, or `all`.
    #[arg(long)]
    case: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Run the mutated twin instead; it must come out as a discrepancy.
    #[arg(long)]
    negative_control: bool,
    /// Extra named relation sets, comma separated.
    #[arg(long, value_delimiter = ',')]
    rules: Vec<String>,
    /// Include wall times in JSON output.
    #[arg(long)]
    timings: bool,
}

fn selected(case: &str) -> Result<Vec<&'static str>, String> {
    if case == "all" {
        return Ok(CASES.to_vec());
    }
    CASES
        .iter()
        .find(|c| **c == case)
        .map(|c| vec![*c])
        .ok_or_else(|| format!("unknown case `{case}` (known: all, {})", CASES.join(", ")))
}

pub fn run(a: &VerifyArgs) -> Outcome {
    let cases = match selected(&a.case) {
        Ok(c) => c,
        Err(e) => return Outcome::Usage(e),
    };
    let mut opts = RunOptions {
        mutated: a.negative_control,
        extra_rules: None,
    };
    if !a.rules.is_empty() {
        match a.rules.iter().map(|n| rules::named(n)).collect::<Result<Vec<_>, _>>() {
            Ok(sets) => opts.extra_rules = Some(rules::combine(&sets)),
            Err(e) => return Outcome::Usage(e.to_string()),
        }
    }

    let reports: Vec<VerificationReport> = std::thread::scope(|s| {
        let handles: Vec<_> = cases
            .iter()
            .map(|c| {
                let opts = &opts;
                s.spawn(move || verify::run(c, opts).expect("case validated"))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("pipeline thread"))
            .collect()
    });

    let single = reports.len() == 1;
    match a.format {
        Format::Json if single => print_json(&reports[0].to_json_value(a.timings)),
        Format::Json => {
            let summary: Vec<_> = reports
                .iter()
                .map(|r| json!({"case": r.case, "status": r.status.label()}))
                .collect();
            let all: Vec<_> = reports.iter().map(|r| r.to_json_value(a.timings)).collect();
            print_json(&json!({"reports": all, "summary": summary}));
        }
        Format::Text => {
            for r in &reports {
                say!("{}", r.to_text());
            }
            if !single {
                say!("{:<16} status", "case");
                for r in &reports {
                    say!("{:<16} {}", r.case, r.status.label());
                }
            }
        }
    }
    if reports.iter().any(|r| r.status == Status::Discrepancy) {
        Outcome::Failed
    } else {
        Outcome::Ok
    }
}
