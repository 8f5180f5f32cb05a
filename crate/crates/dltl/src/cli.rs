//! Command-line front end. Exit codes: 0 holds, satisfiable or success;
//! 1 violated or unsatisfiable; 2 usage or input error; 3 internal
//! consistency failure.

use std::io::Write;

use clap::{Parser, Subcommand};
use dltl_core::rational::parse_rational;
use dltl_core::{
    approximate_value, build_awa, check_at_least, eval_lasso, parse_formula, satisfiable_above, Alphabet, BuildOptions,
    CheckVerdict, Cmp, Formula, Nba, Rational,
};

use crate::dump::{awa_dot, awa_text, nba_dot, nba_text};
use crate::format::{load_kripke, parse_lasso};
use crate::InputError;

#[derive(Debug, Parser)]
#[command(name = "dltl", version, about = "Threshold model checking for LTL with discounting")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether every computation of MODEL has value at least THRESHOLD.
    Check {
        model: String,
        /// Formula text, or `@path` to read it from a file.
        formula: String,
        threshold: String,
    },
    /// Find a computation with value above THRESHOLD.
    Sat {
        formula: String,
        threshold: String,
        /// Comma-separated atoms of the Boolean alphabet; defaults to the
        /// atoms of the formula.
        #[arg(long, value_delimiter = ',')]
        atoms: Option<Vec<String>>,
    },
    /// Print the exact value of FORMULA on a lasso `u-letters ; v-letters`.
    Eval { lasso: String, formula: String },
    /// Print the alternating automaton for `FORMULA > THRESHOLD`.
    Translate {
        formula: String,
        threshold: String,
        /// Build the automaton for `FORMULA < THRESHOLD` instead.
        #[arg(long)]
        below: bool,
        /// Also print the Büchi automaton.
        #[arg(long)]
        nba: bool,
        /// Append DOT graphs of the printed automata.
        #[arg(long)]
        graph: bool,
        #[arg(long, value_delimiter = ',')]
        atoms: Option<Vec<String>>,
    },
    /// Print an interval of width at most EPSILON containing the value of MODEL.
    Value { model: String, formula: String, epsilon: String },
}

/// Decision reported through the exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Positive,
    Negative,
}

impl Outcome {
    pub fn code(self) -> i32 {
        match self {
            Outcome::Positive => 0,
            Outcome::Negative => 1,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) | CliError::Output(_) => 3,
        }
    }
}

impl From<dltl_core::Error> for CliError {
    fn from(e: dltl_core::Error) -> Self {
        match e {
            dltl_core::Error::Internal(msg) => CliError::Internal(msg),
            other => CliError::Input(InputError::Core(other)),
        }
    }
}

fn read_formula(arg: &str) -> Result<Formula, InputError> {
    let text = match arg.strip_prefix('@') {
        Some(path) => {
            std::fs::read_to_string(path).map_err(|source| InputError::Io { path: path.to_string(), source })?
        }
        None => arg.to_string(),
    };
    Ok(parse_formula(text.trim()).map_err(dltl_core::Error::from)?)
}

fn read_unit(arg: &str, what: &'static str) -> Result<Rational, InputError> {
    parse_rational(arg.trim())
        .filter(dltl_core::rational::in_unit_interval)
        .ok_or_else(|| InputError::Argument(format!("{what} `{arg}` is not a rational in [0,1]")))
}

fn alphabet(f: &Formula, atoms: Option<Vec<String>>) -> Alphabet {
    let atoms = atoms.unwrap_or_else(|| f.atoms().into_iter().collect());
    Alphabet::boolean(atoms.into_iter().filter(|a| !a.is_empty()).collect())
}

/// Runs one command, writing its report to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Check { model, formula, threshold } => {
            let k = load_kripke(&model)?;
            let f = read_formula(&formula)?;
            let v = read_unit(&threshold, "threshold")?;
            match check_at_least(&k, &f, &v)? {
                CheckVerdict::Holds => {
                    writeln!(out, "HOLDS")?;
                    Ok(Outcome::Positive)
                }
                CheckVerdict::Violated { counterexample, value } => {
                    writeln!(out, "VIOLATED")?;
                    writeln!(out, "counterexample: {counterexample}")?;
                    writeln!(out, "value: {value}")?;
                    Ok(Outcome::Negative)
                }
            }
        }
        Command::Sat { formula, threshold, atoms } => {
            let f = read_formula(&formula)?;
            let v = read_unit(&threshold, "threshold")?;
            match satisfiable_above(&f, &v, &alphabet(&f, atoms))? {
                Some((witness, value)) => {
                    writeln!(out, "SAT")?;
                    writeln!(out, "witness: {witness}")?;
                    writeln!(out, "value: {value}")?;
                    Ok(Outcome::Positive)
                }
                None => {
                    writeln!(out, "UNSAT")?;
                    Ok(Outcome::Negative)
                }
            }
        }
        Command::Eval { lasso, formula } => {
            let lasso = parse_lasso(&lasso)?;
            let f = read_formula(&formula)?;
            writeln!(out, "{}", eval_lasso(&f, &lasso)?)?;
            Ok(Outcome::Positive)
        }
        Command::Translate { formula, threshold, below, nba, graph, atoms } => {
            let f = read_formula(&formula)?;
            let v = read_unit(&threshold, "threshold")?;
            let cmp = if below { Cmp::Lt } else { Cmp::Gt };
            let awa = build_awa(&f, cmp, &v, &alphabet(&f, atoms), BuildOptions::default())?;
            write!(out, "{}", awa_text(&awa))?;
            let mut automaton = if nba { Some(Nba::new(awa.clone(), true)?) } else { None };
            if let Some(n) = automaton.as_mut() {
                write!(out, "{}", nba_text(n))?;
            }
            if graph {
                write!(out, "{}", awa_dot(&awa))?;
                if let Some(n) = automaton.as_mut() {
                    write!(out, "{}", nba_dot(n))?;
                }
            }
            Ok(Outcome::Positive)
        }
        Command::Value { model, formula, epsilon } => {
            let k = load_kripke(&model)?;
            let f = read_formula(&formula)?;
            let eps = parse_rational(epsilon.trim())
                .filter(|e| *e > Rational::from_integer(0.into()) && dltl_core::rational::in_unit_interval(e))
                .ok_or_else(|| InputError::Argument(format!("epsilon `{epsilon}` is not a rational in (0,1]")))?;
            let (lo, hi) = approximate_value(&k, &f, &eps)?;
            writeln!(out, "[{lo}, {hi}]")?;
            Ok(Outcome::Positive)
        }
    }
}
