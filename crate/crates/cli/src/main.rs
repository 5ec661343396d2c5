use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mqh_cli::config::{ContextSpec, Format};
use mqh_cli::table::{self, Function, TableDoc};
use mqh_cli::{cmd_verify, CliError, ConfigFile, Overrides, RunConfig};

#[derive(Parser)]
#[command(name = "mqh", version, about = "Exact verification of meta q-Hahn identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites over explicit and/or sampled contexts
    Verify(VerifyArgs),
    /// Print q-Hahn, dual q-Hahn, U or V values on the (m, n) grid
    Table(TableArgs),
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Suite to run (repeatable); `all` selects every suite
    #[arg(long = "suite", value_name = "NAME")]
    suites: Vec<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Number of randomly sampled contexts
    #[arg(long)]
    contexts: Option<usize>,
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    fail_fast: bool,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, value_enum)]
    function: Function,
    /// Use the first explicit context of this config file
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value = "2")]
    q: String,
    #[arg(long, default_value = "8")]
    t_alpha: String,
    #[arg(long, default_value = "4")]
    t_beta: String,
    #[arg(long, default_value = "2")]
    t_mu: String,
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Gauge constants a_0,…,a_{N-1}, comma separated
    #[arg(long, value_delimiter = ',')]
    a: Option<Vec<String>>,
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
    /// Also render values as decimals with this many digits
    #[arg(long)]
    decimals: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn verify(args: VerifyArgs) -> Result<i32, CliError> {
    let file = match &args.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let ov = Overrides {
        suites: args.suites,
        seed: args.seed,
        contexts: args.contexts,
        max_n: args.max_n,
        format: args.format,
        out: args.out,
        fail_fast: args.fail_fast,
    };
    let cfg = RunConfig::resolve(file, ov)?;
    let outcome = cmd_verify(&cfg);
    emit(&outcome.rendered, cfg.out.as_ref())?;
    Ok(outcome.exit_code)
}

fn table_cmd(args: TableArgs) -> Result<i32, CliError> {
    let spec = match &args.config {
        Some(p) => ConfigFile::load(p)?
            .contexts
            .into_iter()
            .next()
            .ok_or_else(|| CliError::Config("config has no [[context]] entry".into()))?,
        None => {
            ContextSpec { q: args.q, t_alpha: args.t_alpha, t_beta: args.t_beta, t_mu: args.t_mu, n: args.n, a: args.a }
        }
    };
    let ctx = spec.to_context()?;
    let values = table::compute_table(&ctx, args.function)?;
    let doc = TableDoc::new(&ctx, args.function, &values);
    let text = match args.format {
        Format::Human => table::render_human(&doc, &values, args.decimals),
        Format::Structured => table::render_structured(&doc),
    };
    emit(&text, args.out.as_ref())?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Table(a) => table_cmd(a),
    };
    match r {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
