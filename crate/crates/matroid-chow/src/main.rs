use clap::{Parser, Subcommand};
use matroid_chow::cli::{
    execute, Command, InputSource, Outcome, OutputFormat, RingChoice, RunConfig,
};

/// Chow rings of matroids: straightening, degree maps, pairings, and
/// theorem verification.
#[derive(Parser)]
#[command(name = "matroid-chow", version, disable_help_subcommand = true)]
struct Args {
    #[command(subcommand)]
    command: Cmd,

    /// Ring mode: aug | red
    #[arg(long, global = true, default_value = "aug")]
    ring: String,

    /// Output format: text | json
    #[arg(long, global = true, default_value = "text")]
    output: String,

    /// Seed for randomized verification suites
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Matroid or poset document to read
    #[arg(long, global = true, conflicts_with = "builtin")]
    input: Option<std::path::PathBuf>,

    /// Builtin input, e.g. --builtin boolean 3 | uniform 2 4 | graph K4
    #[arg(long, global = true, num_args = 1..=3)]
    builtin: Option<Vec<String>>,

    /// Degree parameter for the pairing and asl-check subcommands
    #[arg(long, global = true)]
    degree: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the flat index table
    Describe,
    /// Hilbert series coefficients of the chosen ring
    Hilbert,
    /// Rewrite an expression into the standard monomial basis
    Straighten { expr: String },
    /// Evaluate the degree map on an expression
    Degree { expr: String },
    /// Pairing matrix against dual elements at a degree
    Pairing,
    /// Run the full verification suite
    Verify,
    /// Check the straightening-law axioms over a poset or inverted flat poset
    AslCheck,
}

fn main() {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            // clap reserves exit code 2; usage problems here are code 1
            let _ = e.print();
            std::process::exit(if e.use_stderr() { 1 } else { 0 });
        }
    };

    let ring = match args.ring.as_str() {
        "aug" | "augmented" => RingChoice::Augmented,
        "red" | "reduced" => RingChoice::Reduced,
        other => {
            eprintln!("unknown ring mode \"{other}\" (expected aug or red)");
            std::process::exit(1);
        }
    };
    let output = match args.output.as_str() {
        "text" => OutputFormat::Text,
        "json" => OutputFormat::Json,
        other => {
            eprintln!("unknown output format \"{other}\" (expected text or json)");
            std::process::exit(1);
        }
    };
    let input = match (args.input, args.builtin) {
        (Some(path), None) => InputSource::File(path),
        (None, Some(spec)) => InputSource::Builtin(spec),
        (None, None) => {
            eprintln!("an input is required: --input PATH or --builtin NAME ARGS");
            std::process::exit(1);
        }
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };
    let command = match args.command {
        Cmd::Describe => Command::Describe,
        Cmd::Hilbert => Command::Hilbert,
        Cmd::Straighten { expr } => Command::Straighten { expr },
        Cmd::Degree { expr } => Command::Degree { expr },
        Cmd::Pairing => Command::Pairing {
            degree: args.degree.unwrap_or(0),
        },
        Cmd::Verify => Command::Verify,
        Cmd::AslCheck => Command::AslCheck {
            degree_max: args.degree.unwrap_or(4),
        },
    };

    let cfg = RunConfig {
        command,
        ring,
        output,
        seed: args.seed,
        input,
    };
    match execute(&cfg) {
        Ok(Outcome::Ok(text)) => {
            print!("{text}");
        }
        Ok(Outcome::VerificationFailed(text)) => {
            print!("{text}");
            std::process::exit(2);
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
