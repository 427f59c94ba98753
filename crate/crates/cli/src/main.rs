use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use flagbethe_verify::config::LambdaField;
use flagbethe_verify::{all_passed, list_checks, run, write_report, PartialConfig, Status};

#[derive(Parser)]
#[command(name = "verify", about = "Exact verification of Bethe-algebra and flag-cohomology identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one check (by id or alias) or `all`.
    Run(RunArgs),
    /// List every check with its anchor.
    List,
}

#[derive(Args)]
struct RunArgs {
    /// Flat key-value config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    check: Option<String>,
    #[arg(long = "N")]
    n_big: Option<usize>,
    #[arg(long = "n")]
    n: Option<usize>,
    /// Comma-separated weight, e.g. 2,1
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long)]
    jmax: Option<usize>,
    /// symbolic | values=v1,v2,... | zone=c1,c2,...
    #[arg(long)]
    k_mode: Option<String>,
    /// symbolic | seed=s
    #[arg(long)]
    z_mode: Option<String>,
    #[arg(long)]
    degree_bound: Option<usize>,
    /// Output path (`-` for stdout).
    #[arg(long)]
    report: Option<PathBuf>,
    /// Leave timing fields empty so reports are byte-identical across runs.
    #[arg(long)]
    no_timing: bool,
}

impl RunArgs {
    fn partial(&self) -> PartialConfig {
        PartialConfig {
            check: self.check.clone(),
            n_big: self.n_big,
            n: self.n,
            lambda: self.lambda.clone().map(LambdaField::Text),
            jmax: self.jmax,
            k_mode: self.k_mode.clone(),
            z_mode: self.z_mode.clone(),
            degree_bound: self.degree_bound,
            report: self.report.clone(),
            timing: self.no_timing.then_some(false),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::List => {
            for c in list_checks() {
                println!("{:<38} {:<24} {:<40} {}", c.id, c.alias, c.anchor, c.description);
            }
            ExitCode::SUCCESS
        }
        Command::Run(args) => match run_command(&args) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(1),
            Err(e) => {
                eprintln!("{e:#}");
                ExitCode::from(2)
            }
        },
    }
}

fn run_command(args: &RunArgs) -> anyhow::Result<bool> {
    let base = match &args.config {
        Some(p) => PartialConfig::from_file(p)?,
        None => PartialConfig::default(),
    };
    let cfg = base.overridden_by(args.partial()).resolve()?;
    let path = cfg
        .report
        .clone()
        .ok_or_else(|| flagbethe_verify::UsageError("missing required setting report".into()))?;
    let reports = run(&cfg)?;
    write_report(&path, &reports)?;
    let count = |s| reports.iter().filter(|r| r.status == s).count();
    eprintln!(
        "{} cells: {} pass, {} fail, {} skipped",
        reports.len(),
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Skipped)
    );
    Ok(all_passed(&reports))
}
