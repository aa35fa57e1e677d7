use clap::{Args, Parser, Subcommand, ValueEnum};
use std::process::ExitCode;

mod commands;

#[derive(Parser)]
#[command(name = "markedbracket", version, about = "Kauffman bracket and Jones polynomial via marked interlacement graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print [G], the reduced bracket <G> and the Jones polynomial V.
    Bracket {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = MethodArg::Nullity)]
        method: MethodArg,
        #[command(flatten)]
        output: Output,
    },
    /// Compare the graph bracket with the Kauffman state sum and check the
    /// circuit-nullity formula.
    Verify {
        #[command(flatten)]
        input: OptionalInput,
        /// Verify random diagrams instead of a given one.
        #[arg(long, conflicts_with_all = ["gauss", "graph"])]
        random: bool,
        #[arg(long, default_value_t = 6)]
        crossings: usize,
        #[arg(long, default_value_t = 1)]
        components: usize,
        /// Number of random diagrams, or of random circuit partitions per
        /// given diagram.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest crossing count the state sum will enumerate.
        #[arg(long, default_value_t = markedbracket::oracle::DEFAULT_GUARD)]
        guard: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Show the Euler system, its circuits and the looped interlacement graph.
    Euler {
        /// Signed Gauss code.
        #[arg(long)]
        gauss: String,
        #[command(flatten)]
        output: Output,
    },
    /// List, apply or exhaust Reidemeister-type moves on a marked graph.
    Moves {
        #[command(flatten)]
        input: Input,
        /// Apply the candidate with this index.
        #[arg(long, conflicts_with = "simplify")]
        apply: Option<usize>,
        /// Apply removals and Omega.2 moves until none remain.
        #[arg(long)]
        simplify: bool,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Signed Gauss code, e.g. "1+,2+,3+,1+,2+,3+".
    #[arg(long)]
    gauss: Option<String>,
    /// Marked-graph file.
    #[arg(long)]
    graph: Option<std::path::PathBuf>,
}

#[derive(Args)]
#[group(multiple = false)]
struct OptionalInput {
    /// Signed Gauss code.
    #[arg(long)]
    gauss: Option<String>,
    /// Marked-graph file (checks the marked graph's engines only).
    #[arg(long)]
    graph: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Nullity,
    Recursion,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Records,
}

fn run(command: Command) -> Result<u8, commands::CliError> {
    match command {
        Command::Bracket { input, method, output } => {
            let method = match method {
                MethodArg::Nullity => markedbracket::Method::Nullity,
                MethodArg::Recursion => markedbracket::Method::Recursion,
                MethodArg::Both => markedbracket::Method::Both,
            };
            commands::bracket(&commands::load(input.gauss, input.graph)?, method, output.format)
        }
        Command::Verify {
            input,
            random,
            crossings,
            components,
            trials,
            seed,
            guard,
            output,
        } => {
            let source = if random {
                commands::VerifySource::Random { crossings, components }
            } else if input.gauss.is_none() && input.graph.is_none() {
                return Err(commands::CliError::Usage("verify needs --gauss, --graph or --random".into()));
            } else {
                commands::VerifySource::Given(commands::load(input.gauss, input.graph)?)
            };
            commands::verify(source, trials, seed, guard, output.format)
        }
        Command::Euler { gauss, output } => commands::euler(&gauss, output.format),
        Command::Moves {
            input,
            apply,
            simplify,
            output,
        } => commands::moves(&commands::load(input.gauss, input.graph)?, apply, simplify, output.format),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(status) => ExitCode::from(status),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
