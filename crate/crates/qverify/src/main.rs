use clap::{Args, Parser, Subcommand};
use qverify::config::{parse_q_seq, parse_tol_override};
use qverify::{
    cmd_limits, cmd_list, cmd_run, format_limits, limits_exit_code, run_exit_code, CliError, RunConfig, EXIT_USAGE,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qverify", version, about = "Numerical verification of q-series identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every identity with its constraints
    List,
    /// Sample and verify identities
    Run(RunArgs),
    /// Check classical limits as q -> 1
    Limits {
        /// Increasing q values in (0, 1)
        #[arg(long, default_value = "0.9,0.99,0.999")]
        q_seq: String,
        /// Write the limit reports as JSON
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// JSON configuration file; flags override its values
    #[arg(long)]
    config: Option<PathBuf>,
    /// Identity id or "all"; repeat or separate with commas
    #[arg(long, value_delimiter = ',')]
    identity: Vec<String>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    q_lo: Option<f64>,
    #[arg(long)]
    q_hi: Option<f64>,
    /// Per-identity tolerance, id=eps
    #[arg(long, value_parser = parse_tol_override)]
    tol_override: Vec<(String, f64)>,
    /// Periodic weight for records with a matching slot: one, cosine, sine
    #[arg(long)]
    weight: Option<String>,
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    workers: Option<usize>,
}

impl RunArgs {
    fn into_config(self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(p) => RunConfig::from_file(p)?,
            None => RunConfig::default(),
        };
        cfg.apply_env();
        if !self.identity.is_empty() {
            cfg.identities = self.identity;
        }
        if let Some(v) = self.samples {
            cfg.samples = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.q_lo {
            cfg.q_range[0] = v;
        }
        if let Some(v) = self.q_hi {
            cfg.q_range[1] = v;
        }
        cfg.tol_overrides.extend(self.tol_override);
        if self.weight.is_some() {
            cfg.weight = self.weight;
        }
        if self.report.is_some() {
            cfg.report = self.report;
        }
        if self.csv.is_some() {
            cfg.csv = self.csv;
        }
        if self.workers.is_some() {
            cfg.workers = self.workers;
        }
        Ok(cfg)
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::List => {
            print!("{}", cmd_list());
            Ok(0)
        }
        Command::Run(args) => {
            let report = cmd_run(&args.into_config()?)?;
            print!("{}", report.summary());
            Ok(run_exit_code(&report))
        }
        Command::Limits { q_seq, report } => {
            let reports = cmd_limits(&parse_q_seq(&q_seq)?)?;
            print!("{}", format_limits(&reports));
            if let Some(p) = report {
                let text = serde_json::to_string_pretty(&reports).map_err(|e| CliError::Report(e.to_string()))?;
                std::fs::write(p, text)?;
            }
            Ok(limits_exit_code(&reports))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("qverify: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code.clamp(0, EXIT_USAGE) as u8)
}
