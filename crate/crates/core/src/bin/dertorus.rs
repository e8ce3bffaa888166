use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dertorus::verify::{cmd_rep, cmd_scan, cmd_verify, RunConfig};

#[derive(Parser)]
#[command(version, about = "Exact checks for vector fields on the torus and their tensor-field modules")]
struct Cli {
    /// Flat `key = value` file; flags given on the command line win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every identity suite and print a JSON report.
    Verify {
        #[arg(long)]
        d: Option<String>,
        #[arg(long)]
        seed: Option<String>,
        #[arg(long)]
        trials: Option<String>,
        #[arg(long)]
        k_max: Option<String>,
        #[arg(long)]
        radius: Option<String>,
        #[command(flatten)]
        module: ModuleArgs,
        /// Perturb one sl_2 structure constant and one gl_d matrix entry.
        #[arg(long)]
        fault_inject: bool,
    },
    /// Build V(psi, b) and print its matrices.
    Rep {
        #[command(flatten)]
        module: ModuleArgs,
    },
    /// Close a vector of F^alpha(psi, b) under generators and report weight dimensions.
    Scan {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long)]
        seed: Option<String>,
        /// `der` or `ader`.
        #[arg(long)]
        mode: Option<String>,
        #[arg(long)]
        word_length: Option<String>,
        /// Radius of the L1 window around weight 0.
        #[arg(long)]
        window: Option<String>,
    },
}

#[derive(Args)]
struct ModuleArgs {
    /// Fundamental-weight coefficients `a1,a2,...`.
    #[arg(long)]
    weights: Option<String>,
    /// Scalar action of the identity matrix, `p/q`.
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    /// Comma-separated `p/q` entries.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
}

impl ModuleArgs {
    fn pairs(&self) -> Vec<(&'static str, Option<String>)> {
        vec![("weights", self.weights.clone()), ("b", self.b.clone()), ("alpha", self.alpha.clone())]
    }
}

type Handler = fn(&RunConfig) -> dertorus::Result<(String, bool)>;

fn run(cli: Cli) -> dertorus::Result<bool> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| dertorus::Error::Config(format!("cannot read {}: {e}", path.display())))?;
        cfg.apply_text(&text)?;
    }
    let (pairs, cmd): (Vec<(&str, Option<String>)>, Handler) = match cli.command {
        Command::Verify { d, seed, trials, k_max, radius, module, fault_inject } => {
            let mut p = vec![("d", d), ("seed", seed), ("trials", trials), ("k_max", k_max), ("radius", radius)];
            p.extend(module.pairs());
            if fault_inject {
                p.push(("fault_inject", Some("true".into())));
            }
            (p, cmd_verify)
        }
        Command::Rep { module } => (module.pairs(), cmd_rep),
        Command::Scan { module, seed, mode, word_length, window } => {
            let mut p = module.pairs();
            p.extend([("seed", seed), ("mode", mode), ("word_length", word_length), ("window", window)]);
            (p, cmd_scan)
        }
    };
    for (key, value) in pairs {
        if let Some(v) = value {
            cfg.set(key, &v)?;
        }
    }
    let (json, ok) = cmd(&cfg)?;
    let _ = writeln!(std::io::stdout().lock(), "{json}");
    Ok(ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("one or more checks failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
