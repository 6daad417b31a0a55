use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dsketch::commands::{self, CheckArgs, Outcome, RepairArgs};

/// Check, repair and transform sketches written in the sketch language.
#[derive(Parser)]
#[command(name = "dsketch", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check constraints; exit 1 if any fails.
    Check {
        files: Vec<PathBuf>,
        #[arg(long = "constraint", value_name = "NAME")]
        constraints: Vec<String>,
        #[arg(long, conflicts_with = "constraints")]
        all: bool,
        /// Sketch to check on; defaults to the constraint's `on` clause.
        #[arg(long)]
        sketch: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Apply rules until none matches; exit 3 if --max-steps is reached.
    Repair {
        files: Vec<PathBuf>,
        #[arg(long)]
        sketch: Option<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        rules: Vec<String>,
        #[arg(long, default_value_t = 100)]
        max_steps: usize,
        /// Write the repaired sketch here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Name of the repaired sketch.
        #[arg(long)]
        name: Option<String>,
    },
    /// Translate a condition along a morphism.
    Translate {
        files: Vec<PathBuf>,
        #[arg(long)]
        condition: String,
        #[arg(long)]
        along: String,
        #[arg(long)]
        name: Option<String>,
    },
    /// Run a deduction script and print the constraint store.
    Deduce {
        files: Vec<PathBuf>,
        #[arg(long)]
        script: PathBuf,
    },
    /// Pushout of two rules sharing their left-hand side.
    Pushout {
        files: Vec<PathBuf>,
        #[arg(long, value_delimiter = ',', required = true)]
        span: Vec<String>,
        #[arg(long, default_value = "P")]
        name: String,
    },
    /// Pullback of two rules sharing their right-hand side.
    Pullback {
        files: Vec<PathBuf>,
        #[arg(long, value_delimiter = ',', required = true)]
        cospan: Vec<String>,
        #[arg(long, default_value = "P")]
        name: String,
    },
    /// Print files in canonical form.
    Fmt { files: Vec<PathBuf> },
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Check { files, constraints, all, sketch, json } => commands::check(&CheckArgs {
            files: &files,
            constraints: &constraints,
            all,
            sketch: sketch.as_deref(),
            json,
        }),
        Command::Repair { files, sketch, rules, max_steps, out, name } => commands::repair(&RepairArgs {
            files: &files,
            sketch: sketch.as_deref(),
            rules: &rules,
            max_steps,
            out: out.as_deref(),
            name: name.as_deref(),
        }),
        Command::Translate { files, condition, along, name } => {
            commands::translate(&files, &condition, &along, name.as_deref())
        }
        Command::Deduce { files, script } => commands::deduce(&files, &script),
        Command::Pushout { files, span, name } => commands::pushout(&files, &span, &name),
        Command::Pullback { files, cospan, name } => commands::pullback(&files, &cospan, &name),
        Command::Fmt { files } => commands::fmt(&files),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let out = run(cli);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}
