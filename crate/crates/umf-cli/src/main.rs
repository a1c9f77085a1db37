use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use umf_cli::{
    apply_cap_overrides, parse_format, parse_normal_ref, parse_policy_ref, run, CliError,
    CommandConfig, RunConfig,
};
use umf_core::caps::Caps;

#[derive(Parser)]
#[command(name = "umf")]
#[command(about = "Finite-scale laboratory for universal minimal flows of group extensions")]
#[command(version)]
struct Cli {
    /// Report format: json or text
    #[arg(long, global = true, default_value = "json")]
    format: String,

    /// Write the report to this file instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Override a size cap, as key=value (repeatable); keys: table_order,
    /// subgroup_order, automorphism_order, iso_points, symmetric_n,
    /// sweep_order
    #[arg(long = "caps", global = true)]
    caps: Vec<String>,

    /// Seed for seeded-random section policies
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// List the built-in group catalog
    Catalog,
    /// Run both product-decomposition pipelines for one group
    VerifyExtension {
        /// Group reference: builtin:NAME, a catalog name, or a JSON file
        #[arg(long)]
        group: String,
        /// auto (all normal subgroups) or an element list like 0,3,4
        #[arg(long, default_value = "auto")]
        normal: String,
        /// Section policy: min-index or seeded-random
        #[arg(long, default_value = "min-index")]
        section: String,
    },
    /// Verify the split-extension flow for H acting on K
    VerifySemidirect {
        /// The acting group H
        #[arg(long)]
        h: String,
        /// The compact normal factor K
        #[arg(long)]
        k: String,
        /// Action of H on K: inversion or trivial
        #[arg(long, default_value = "inversion")]
        theta: String,
    },
    /// Check the orbit-space identification for one group
    VerifyLemmaOrbits {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "auto")]
        normal: String,
    },
    /// Run the full catalog sweep (both policies, both pipelines)
    Sweep {
        /// Largest group order included (overrides the sweep_order cap)
        #[arg(long)]
        max_order: Option<usize>,
    },
    /// Build a tree-automorphism tower and verify its decompositions
    Tower {
        /// Branching degree (>= 2)
        #[arg(long)]
        n: usize,
        /// Depth (>= 1)
        #[arg(long)]
        d: usize,
    },
    /// Decide flow isomorphism between two flow files
    Iso {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
}

fn build_config(cli: Cli) -> Result<RunConfig, CliError> {
    let mut caps = Caps::default();
    apply_cap_overrides(&mut caps, &cli.caps)?;
    let format = parse_format(&cli.format)?;
    let command = match cli.command {
        Commands::Catalog => CommandConfig::Catalog,
        Commands::VerifyExtension {
            group,
            normal,
            section,
        } => CommandConfig::VerifyExtension {
            group,
            normal: parse_normal_ref(&normal)?,
            policy: parse_policy_ref(&section)?,
        },
        Commands::VerifySemidirect { h, k, theta } => {
            CommandConfig::VerifySemidirect { h, k, theta }
        }
        Commands::VerifyLemmaOrbits { group, normal } => CommandConfig::VerifyLemmaOrbits {
            group,
            normal: parse_normal_ref(&normal)?,
        },
        Commands::Sweep { max_order } => {
            if let Some(m) = max_order {
                caps.sweep_order = m;
            }
            CommandConfig::Sweep
        }
        Commands::Tower { n, d } => CommandConfig::Tower { n, d },
        Commands::Iso { a, b } => CommandConfig::Iso { a, b },
    };
    Ok(RunConfig {
        command,
        format,
        output: cli.output,
        caps,
        seed: cli.seed,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match build_config(cli) {
        Ok(c) => c,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };

    let started = Instant::now();
    match run(&config) {
        Ok(outcome) => {
            for w in &outcome.warnings {
                eprintln!("warning: {w}");
            }
            if let Some(path) = &config.output {
                if let Err(e) = std::fs::write(path, &outcome.body) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{}", outcome.body);
            }
            eprintln!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
