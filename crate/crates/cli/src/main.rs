//! Command-line front end: derive, reduce and solve order conditions,
//! verify tableaux and run convergence experiments.

mod commands;

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "rkderive", version, about = "Exact order conditions for explicit Runge-Kutta methods")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Latex,
    Machine,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scenario {
    Order3,
    Order4,
    #[value(name = "order4-equal-c")]
    Order4EqualC,
    Order4Autonomous,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderKind {
    Lex,
    Grlex,
}

/// A tableau given as a file or by catalogue name.
#[derive(Args)]
pub struct TableauSource {
    /// Tableau document (use `-` for standard input).
    pub file: Option<PathBuf>,
    /// Use a catalogue entry instead of a file.
    #[arg(long, conflicts_with = "file")]
    pub name: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Order conditions read off the Taylor expansion.
    Conditions {
        #[arg(long)]
        stages: usize,
        #[arg(long)]
        order: u32,
        /// Assume f does not depend on x.
        #[arg(long)]
        autonomous: bool,
        /// Eliminate a_i1 through c_i = sum_j a_ij.
        #[arg(long)]
        row_sum: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Rooted trees up to an order with their densities and conditions.
    Trees {
        #[arg(long)]
        order: u32,
        /// Stage count used to write the conditions (defaults to the order).
        #[arg(long)]
        stages: Option<usize>,
    },
    /// Interreduce a list of polynomial equations.
    Reduce {
        /// Equation file, one polynomial or `lhs = rhs` per line (`-` for stdin).
        file: PathBuf,
        /// Comma-separated variable order (greatest first).
        #[arg(long, value_delimiter = ',')]
        var_order: Option<Vec<String>>,
        /// Substitution NAME=EXPR applied before reducing; repeatable.
        #[arg(long = "subst", value_name = "NAME=EXPR")]
        subst: Vec<String>,
        /// Print the normal form of this polynomial modulo the ideal; repeatable.
        #[arg(long = "normal-form", value_name = "POLY")]
        normal_form: Vec<String>,
        #[arg(long, value_enum, default_value = "lex")]
        ordering: OrderKind,
    },
    /// Closed-form coefficient families.
    SolveFamily {
        #[arg(long, value_enum)]
        scenario: Scenario,
        #[arg(long)]
        c2: Option<String>,
        #[arg(long)]
        c3: Option<String>,
        #[arg(long)]
        r1: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check a tableau against the order conditions exactly.
    Verify {
        #[arg(long)]
        order: u32,
        #[command(flatten)]
        source: TableauSource,
        /// Verify the second weight row instead of the first.
        #[arg(long)]
        bhat: bool,
    },
    /// Family of embedded lower-order weights for a tableau.
    Embed {
        #[command(flatten)]
        source: TableauSource,
        #[arg(long)]
        r1: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Measure the convergence order on a test problem.
    OrderTest {
        #[command(flatten)]
        source: TableauSource,
        /// exp, linear or riccati.
        #[arg(long)]
        problem: String,
        #[arg(long)]
        h0: String,
        #[arg(long)]
        levels: usize,
        /// Integrate with the second weight row.
        #[arg(long)]
        bhat: bool,
    },
    /// Built-in methods.
    Catalogue {
        #[arg(long)]
        name: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// Bad input: exit status 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

pub fn input_error(e: impl fmt::Display) -> anyhow::Error {
    InputError(e.to_string()).into()
}

/// Whether the command's check passed.
pub enum Outcome {
    Pass,
    Fail,
}

fn run(cli: Cli, out: &mut String) -> anyhow::Result<Outcome> {
    use commands::*;
    match cli.command {
        Command::Conditions {
            stages,
            order,
            autonomous,
            row_sum,
            format,
        } => conditions(out, stages, order, autonomous, row_sum, format),
        Command::Trees { order, stages } => trees(out, order, stages),
        Command::Reduce {
            file,
            var_order,
            subst,
            normal_form,
            ordering,
        } => reduce(out, &file, var_order, &subst, &normal_form, ordering),
        Command::SolveFamily {
            scenario,
            c2,
            c3,
            r1,
            format,
        } => solve_family(out, scenario, c2, c3, r1, format),
        Command::Verify { order, source, bhat } => verify(out, order, &source, bhat),
        Command::Embed { source, r1, format } => embed(out, &source, r1, format),
        Command::OrderTest {
            source,
            problem,
            h0,
            levels,
            bhat,
        } => order_test(out, &source, &problem, &h0, levels, bhat),
        Command::Catalogue { name, format } => catalogue(out, name, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(cli, &mut out);
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = stdout.write_all(out.as_bytes()).and_then(|()| stdout.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<InputError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
