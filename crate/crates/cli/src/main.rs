//! Command-line front end: transduce words through the lamplighter machine,
//! do truncated series arithmetic, compose group elements, and run the
//! seeded verification suites.
//!
//! Exit codes: 0 on success, 1 when a verification suite fails, 2 on user or
//! input errors.

use clap::{Args, Parser, Subcommand};
use lamplighter_core::affine::{build_lamplighter_machine, GeneratorWord, NormalForm};
use lamplighter_core::lamplighter::nf_to_lamp;
use lamplighter_core::mealy::InitialMachine;
use lamplighter_core::series::{ModInt, TruncatedSeries};
use lamplighter_core::verify::{run_suite, Suite, VerifyConfig};
use lamplighter_core::words::DigitWord;
use lamplighter_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "lamplighter",
    version,
    about = "Lamplighter group toolkit: Mealy machine, series maps, normal forms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Show, invert, or run the lamplighter Mealy machine
    Machine {
        #[command(subcommand)]
        action: MachineAction,
    },
    /// Truncated power series arithmetic over Z/nZ
    Series {
        #[command(subcommand)]
        action: SeriesAction,
    },
    /// Compose group elements, take normal forms, act on words
    Group {
        #[command(subcommand)]
        action: GroupAction,
    },
    /// Run a verification suite with a reproducible seed
    Verify {
        /// Which suite: axioms, iso, faithful, or all
        suite: String,
        #[command(flatten)]
        config: ConfigArgs,
    },
}

#[derive(Args)]
struct ConfigArgs {
    /// Digit alphabet and coefficient modulus
    #[arg(long = "mod", default_value_t = 2)]
    modulus: u32,
    /// Series truncation length
    #[arg(long = "len", default_value_t = 64)]
    series_len: usize,
    /// Seed for the deterministic generators
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Exploration depth for remainder closure
    #[arg(long, default_value_t = 20)]
    depth: usize,
}

#[derive(Subcommand)]
enum MachineAction {
    /// Print the machine in its text format
    Show {
        #[arg(long = "mod", default_value_t = 2)]
        modulus: u32,
        /// Mark a start state in the header
        #[arg(long)]
        start: Option<u32>,
    },
    /// Print the inverse machine
    Invert {
        #[arg(long = "mod", default_value_t = 2)]
        modulus: u32,
    },
    /// Transduce a word from a chosen state
    Run {
        #[arg(long = "mod", default_value_t = 2)]
        modulus: u32,
        #[arg(long)]
        state: u32,
        #[arg(long)]
        word: String,
    },
}

#[derive(Subcommand)]
enum SeriesAction {
    /// Coefficientwise sum of two series
    Add {
        #[command(flatten)]
        shape: SeriesShape,
        left: String,
        right: String,
    },
    /// Truncated Cauchy product of two series
    Mul {
        #[command(flatten)]
        shape: SeriesShape,
        left: String,
        right: String,
    },
    /// Multiplicative inverse (constant term must be a unit)
    Inv {
        #[command(flatten)]
        shape: SeriesShape,
        operand: String,
    },
    /// Drop the constant term and reindex
    Shift {
        #[command(flatten)]
        shape: SeriesShape,
        operand: String,
    },
    /// Geometric series of 1/(1 - aX)
    Geom {
        #[command(flatten)]
        shape: SeriesShape,
        #[arg(long)]
        a: u32,
    },
    /// Integer power (negative exponents need a unit)
    Pow {
        #[command(flatten)]
        shape: SeriesShape,
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        operand: String,
    },
}

#[derive(Args)]
struct SeriesShape {
    #[arg(long = "mod", default_value_t = 2)]
    modulus: u32,
    #[arg(long = "len", default_value_t = 64)]
    len: usize,
}

#[derive(Subcommand)]
enum GroupAction {
    /// Canonical normal form of a generator word
    Normalform {
        #[arg(long = "mod", default_value_t = 2)]
        modulus: u32,
        /// Generator tokens, e.g. q p g0^-1
        tokens: Vec<String>,
    },
    /// Product of two normal forms (left applied first)
    Compose {
        #[arg(long = "mod", default_value_t = 2)]
        modulus: u32,
        left: String,
        right: String,
    },
    /// Inverse of a normal form
    Inv {
        #[arg(long = "mod", default_value_t = 2)]
        modulus: u32,
        elem: String,
    },
    /// Apply an element to a digit word
    Act {
        #[arg(long = "mod", default_value_t = 2)]
        modulus: u32,
        #[arg(long)]
        elem: String,
        #[arg(long)]
        word: String,
    },
    /// Convert a modulus-2 normal form to a lamplighter pair
    Tolamp {
        #[arg(long = "mod", default_value_t = 2)]
        modulus: u32,
        #[arg(long)]
        elem: String,
    },
}

#[derive(Debug)]
struct CmdOutput {
    text: String,
    verify_failed: bool,
}

impl CmdOutput {
    fn ok(text: String) -> Self {
        Self {
            text,
            verify_failed: false,
        }
    }
}

fn series_text(s: &TruncatedSeries) -> String {
    // binary output stays a compact digit string; wider moduli get commas
    if s.modulus() == 2 {
        s.to_string()
    } else {
        s.coeffs()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn parse_series(text: &str, shape: &SeriesShape) -> Result<TruncatedSeries> {
    TruncatedSeries::parse(text, shape.modulus)?.resized(shape.len)
}

fn execute(cli: Cli) -> Result<CmdOutput> {
    match cli.command {
        Command::Machine { action } => machine_cmd(action),
        Command::Series { action } => series_cmd(action),
        Command::Group { action } => group_cmd(action),
        Command::Verify { suite, config } => verify_cmd(&suite, &config),
    }
}

fn machine_cmd(action: MachineAction) -> Result<CmdOutput> {
    match action {
        MachineAction::Show { modulus, start } => {
            let machine = build_lamplighter_machine(modulus)?;
            let text = match start {
                Some(q0) => InitialMachine::new(machine, q0)?.to_string(),
                None => machine.to_string(),
            };
            Ok(CmdOutput::ok(text))
        }
        MachineAction::Invert { modulus } => {
            let machine = build_lamplighter_machine(modulus)?.invert()?;
            Ok(CmdOutput::ok(machine.to_string()))
        }
        MachineAction::Run {
            modulus,
            state,
            word,
        } => {
            let machine = build_lamplighter_machine(modulus)?;
            let word = DigitWord::parse(&word, modulus)?;
            let (final_state, output) = machine.transduce(state, &word)?;
            Ok(CmdOutput::ok(format!("output={output} state={final_state}\n")))
        }
    }
}

fn series_cmd(action: SeriesAction) -> Result<CmdOutput> {
    let result = match action {
        SeriesAction::Add { shape, left, right } => {
            parse_series(&left, &shape)?.add(&parse_series(&right, &shape)?)?
        }
        SeriesAction::Mul { shape, left, right } => {
            parse_series(&left, &shape)?.mul(&parse_series(&right, &shape)?)?
        }
        SeriesAction::Inv { shape, operand } => parse_series(&operand, &shape)?.inverse()?,
        SeriesAction::Shift { shape, operand } => parse_series(&operand, &shape)?.shift(),
        SeriesAction::Geom { shape, a } => {
            TruncatedSeries::geometric(ModInt::new(shape.modulus, i64::from(a))?, shape.len)?
        }
        SeriesAction::Pow { shape, m, operand } => parse_series(&operand, &shape)?.power(m)?,
    };
    Ok(CmdOutput::ok(format!("{}\n", series_text(&result))))
}

fn group_cmd(action: GroupAction) -> Result<CmdOutput> {
    match action {
        GroupAction::Normalform { modulus, tokens } => {
            let word = GeneratorWord::parse(&tokens.join(" "), modulus)?;
            Ok(CmdOutput::ok(format!("{}\n", word.to_normal_form())))
        }
        GroupAction::Compose {
            modulus,
            left,
            right,
        } => {
            let left = NormalForm::parse(&left, modulus)?;
            let right = NormalForm::parse(&right, modulus)?;
            Ok(CmdOutput::ok(format!("{}\n", left.mul(&right)?)))
        }
        GroupAction::Inv { modulus, elem } => {
            let elem = NormalForm::parse(&elem, modulus)?;
            Ok(CmdOutput::ok(format!("{}\n", elem.inverse())))
        }
        GroupAction::Act {
            modulus,
            elem,
            word,
        } => {
            let elem = NormalForm::parse(&elem, modulus)?;
            let word = DigitWord::parse(&word, modulus)?;
            Ok(CmdOutput::ok(format!("{}\n", elem.apply_to_word(&word)?)))
        }
        GroupAction::Tolamp { modulus, elem } => {
            let elem = NormalForm::parse(&elem, modulus)?;
            Ok(CmdOutput::ok(format!("{}\n", nf_to_lamp(&elem)?)))
        }
    }
}

fn verify_cmd(suite: &str, config: &ConfigArgs) -> Result<CmdOutput> {
    let suite = Suite::from_name(suite)
        .ok_or_else(|| Error::Parse(format!("unknown suite {suite:?} (axioms|iso|faithful|all)")))?;
    if config.series_len == 0 {
        return Err(Error::EmptySeries);
    }
    let cfg = VerifyConfig {
        modulus: config.modulus,
        series_len: config.series_len,
        seed: config.seed,
        depth: config.depth,
    };
    let report = run_suite(suite, &cfg);
    Ok(CmdOutput {
        text: report.render(),
        verify_failed: !report.all_passed(),
    })
}

fn main() {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.verify_failed {
                std::process::exit(1);
            }
        }
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    }
}
