//! Command-line front end: parses arguments into a [`RunConfig`] and
//! prints whatever [`execute`] renders. All behaviour lives in the
//! library so it stays testable; this file only maps flags to fields.

use clap::{Args, Parser, Subcommand};
use wzsum::runner::{execute, Command as RunCommand, RunConfig};

#[derive(Parser)]
#[command(
    name = "wzsum",
    about = "Series acceleration for Dougall-type hypergeometric sums via certified pair recurrences",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Common {
    /// Decimal digits to report (default 30).
    #[arg(long, default_value_t = 30)]
    digits: u32,
    /// Hard cap on series terms per evaluation.
    #[arg(long, default_value_t = 10_000)]
    max_terms: u64,
    /// Highest recurrence order to search for.
    #[arg(long, default_value_t = 3)]
    max_order: u32,
    /// Emit one JSON object instead of prose.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Extras {
    /// Also evaluate the pair shifted down by m rows.
    #[arg(long)]
    shift: Option<u64>,
    /// Also compare column sums at these comma-separated column indices.
    #[arg(long, value_delimiter = ',')]
    constancy: Option<Vec<u64>>,
}

#[derive(Args)]
struct KernelInputs {
    /// Kernel base parameters, comma-separated rationals (e.g. 3/2,1/2,1,1,1).
    #[arg(long)]
    base: String,
    /// Slope pattern, comma-separated non-negative integers (e.g. 3,0,1,2,2).
    #[arg(long)]
    pattern: String,
    /// Kernel kind: omega (five parameters) or phi (four).
    #[arg(long)]
    kind: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the full pipeline for a built-in example id (42, 45, 50, 53).
    Example {
        /// Which built-in example to run.
        id: u32,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        extras: Extras,
    },
    /// Run the full pipeline for user-supplied kernel parameters.
    Accelerate {
        #[command(flatten)]
        kernel: KernelInputs,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        extras: Extras,
    },
    /// Derive the recurrence and verify the pair relation only.
    Certify {
        /// Built-in example id; omit when passing --base/--pattern/--kind.
        #[arg(long)]
        example: Option<u32>,
        /// Kernel base parameters (alternative to --example).
        #[arg(long)]
        base: Option<String>,
        /// Slope pattern (alternative to --example).
        #[arg(long)]
        pattern: Option<String>,
        /// Kernel kind (alternative to --example).
        #[arg(long)]
        kind: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Run every built-in example and report all checks in fixed order.
    VerifyAll {
        #[command(flatten)]
        common: Common,
    },
}

fn apply_common(config: &mut RunConfig, common: &Common) {
    config.digits = common.digits;
    config.max_terms = common.max_terms;
    config.max_order = common.max_order;
    config.json = common.json;
}

fn apply_extras(config: &mut RunConfig, extras: &Extras) {
    config.shift = extras.shift;
    config.constancy = extras.constancy.clone();
}

fn main() {
    let cli = Cli::parse();
    let config = match cli.command {
        Cmd::Example { id, common, extras } => {
            let mut c = RunConfig::new(RunCommand::Example);
            c.example_id = Some(id);
            apply_common(&mut c, &common);
            apply_extras(&mut c, &extras);
            c
        }
        Cmd::Accelerate {
            kernel,
            common,
            extras,
        } => {
            let mut c = RunConfig::new(RunCommand::Accelerate);
            c.base = Some(kernel.base);
            c.pattern = Some(kernel.pattern);
            c.kind = Some(kernel.kind);
            apply_common(&mut c, &common);
            apply_extras(&mut c, &extras);
            c
        }
        Cmd::Certify {
            example,
            base,
            pattern,
            kind,
            common,
        } => {
            let mut c = RunConfig::new(RunCommand::Certify);
            c.example_id = example;
            c.base = base;
            c.pattern = pattern;
            c.kind = kind;
            apply_common(&mut c, &common);
            c
        }
        Cmd::VerifyAll { common } => {
            let mut c = RunConfig::new(RunCommand::VerifyAll);
            apply_common(&mut c, &common);
            c
        }
    };
    let outcome = execute(&config);
    print!("{}", outcome.text);
    std::process::exit(outcome.exit);
}
