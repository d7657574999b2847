//! `laxlab`: verification pipelines, derivations, catalog browsing and
//! numeric checks from the command line.
//!
//! Exit codes: 0 success, 1 discrepancy or failed check, 2 usage error.

mod integrate;
mod symbolic;
mod verify;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::cell::RefCell;
use std::io::Write;
use std::process::ExitCode;

thread_local! {
    static OUT: RefCell<String> = const { RefCell::new(String::new()) };
}

/// Appends a line to the buffered standard output.
macro_rules! say {
    ($($t:tt)*) => {
        $crate::OUT.with(|o| {
            use std::fmt::Write as _;
            let _ = writeln!(o.borrow_mut(), $($t)*);
        })
    };
}
pub(crate) use say;

pub fn put(s: &str) {
    OUT.with(|o| o.borrow_mut().push_str(s));
}

fn flush() {
    let text = OUT.with(|o| std::mem::take(&mut *o.borrow_mut()));
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush());
}

#[derive(Parser)]
#[command(
    name = "laxlab",
    version,
    about = "Audit Lax-pair computations for quantum Painleve II"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification pipelines.
    Verify(verify::VerifyArgs),
    /// Zero-curvature equations of a catalog pair.
    Derive(symbolic::DeriveArgs),
    /// Substitute, take limits, then derive.
    Reduce(symbolic::ReduceArgs),
    /// Integrate an ODE or run a numeric check.
    Integrate(Box<integrate::IntegrateArgs>),
    /// Browse the catalog.
    Catalog(CatalogArgs),
}

#[derive(Args)]
struct CatalogArgs {
    #[command(subcommand)]
    action: CatalogAction,
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Key, citation and parameter slots of every entry.
    List {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build one entry and print it.
    Show(symbolic::ShowArgs),
}

/// Failure modes mapped onto exit codes.
pub enum Outcome {
    Ok,
    Failed,
    Usage(String),
}

impl Outcome {
    fn exit(self) -> ExitCode {
        match self {
            Outcome::Ok => ExitCode::SUCCESS,
            Outcome::Failed => ExitCode::from(1),
            Outcome::Usage(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(a) => verify::run(&a),
        Command::Derive(a) => symbolic::derive(&a),
        Command::Reduce(a) => symbolic::reduce(&a),
        Command::Integrate(a) => integrate::run(&a),
        Command::Catalog(CatalogArgs { action }) => match action {
            CatalogAction::List { format } => symbolic::list(format),
            CatalogAction::Show(a) => symbolic::show(&a),
        },
    };
    flush();
    outcome.exit()
}

pub fn print_json(v: &serde_json::Value) {
    say!("{}", serde_json::to_string_pretty(v).expect("json value"));
}
