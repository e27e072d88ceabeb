//! Argument parsing and command execution for the `padic-cubic` binary.

mod literal;
mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use padic_cubic::{CubicInstance, Error as CoreError, FpCubic, Limits, PadicRational, Prime};
use thiserror::Error;

pub use literal::parse_rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verb {
    Classify(CubicInstance),
    Count(CubicInstance),
    Solve {
        instance: CubicInstance,
        digits: usize,
    },
    Residue {
        a: PadicRational,
        q: Option<u64>,
    },
    FpCount(FpCubic),
    Verify {
        r1: PadicRational,
        r2: PadicRational,
        digits: usize,
    },
    Sweep {
        prime: Prime,
        count: usize,
        seed: u64,
        digits: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Command {
    pub verb: Verb,
    pub format: Format,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Clap(#[from] clap::Error),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("prime error: {0}")]
    Prime(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Clap(e) if !e.use_stderr() => 0,
            CliError::Clap(_) | CliError::Usage(_) | CliError::Prime(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InternalInconsistency(m) => CliError::Internal(m),
            CoreError::ScanBoundExceeded { .. } => CliError::Usage(format!(
                "{e} (raise {})",
                padic_cubic::limits::SCAN_BOUND_ENV
            )),
            other => CliError::Usage(other.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "padic-cubic",
    version,
    about = "Classify and solve x^3 + ax = b over the p-adic numbers"
)]
struct Cli {
    #[command(subcommand)]
    verb: VerbArgs,
}

#[derive(Args, Debug)]
struct Common {
    /// Prime p > 3
    #[arg(long)]
    p: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct CubicArgs {
    #[command(flatten)]
    common: Common,
    /// Coefficient a: n, n/d, n/d*p^k or p^k
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    /// Coefficient b: n, n/d, n/d*p^k or p^k
    #[arg(long, allow_hyphen_values = true)]
    b: String,
}

#[derive(Subcommand, Debug)]
enum VerbArgs {
    /// Region, root-location signature and per-domain counts
    Classify(CubicArgs),
    /// Root counts in Z_p^*, Z_p \ Z_p^*, Q_p \ Z_p and Q_p
    Count(CubicArgs),
    /// All roots to a number of p-adic digits
    Solve {
        #[command(flatten)]
        cubic: CubicArgs,
        #[arg(long, default_value_t = padic_cubic::DEFAULT_DIGITS)]
        digits: usize,
    },
    /// Existence of square and cube roots (or q-th roots) of a
    Residue {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        q: Option<u64>,
    },
    /// Root count of x^3 + a0 x = b0 over F_p
    FpCount {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
    },
    /// Check classifier and solver on the cubic with roots r1, r2, -(r1 + r2)
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        r1: String,
        #[arg(long, allow_hyphen_values = true)]
        r2: String,
        #[arg(long, default_value_t = padic_cubic::DEFAULT_DIGITS)]
        digits: usize,
    },
    /// Verify many randomly constructed cubics
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = padic_cubic::DEFAULT_DIGITS)]
        digits: usize,
    },
}

fn prime(p: u64) -> Result<Prime, CliError> {
    Prime::new(p).map_err(|e| CliError::Prime(format!("--p {p}: {e}")))
}

fn rational(flag: &str, text: &str, p: Prime) -> Result<PadicRational, CliError> {
    parse_rational(text, p).map_err(|e| CliError::Usage(format!("--{flag}: {e}")))
}

fn nonzero(flag: &str, x: PadicRational) -> Result<PadicRational, CliError> {
    if x.is_zero() {
        Err(CliError::Usage(format!("--{flag} must be nonzero")))
    } else {
        Ok(x)
    }
}

fn digits(n: usize) -> Result<usize, CliError> {
    if n == 0 {
        Err(CliError::Usage("--digits must be positive".into()))
    } else {
        Ok(n)
    }
}

fn cubic(args: CubicArgs) -> Result<(CubicInstance, Format), CliError> {
    let p = prime(args.common.p)?;
    let a = nonzero("a", rational("a", &args.a, p)?)?;
    let b = nonzero("b", rational("b", &args.b, p)?)?;
    Ok((CubicInstance::new(a, b)?, args.common.format))
}

/// Parses and validates a full argument vector (including the program name).
pub fn parse_args<I, T>(argv: I) -> Result<Command, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    let (verb, format) = match cli.verb {
        VerbArgs::Classify(c) => {
            let (inst, f) = cubic(c)?;
            (Verb::Classify(inst), f)
        }
        VerbArgs::Count(c) => {
            let (inst, f) = cubic(c)?;
            (Verb::Count(inst), f)
        }
        VerbArgs::Solve {
            cubic: c,
            digits: n,
        } => {
            let (instance, f) = cubic(c)?;
            (
                Verb::Solve {
                    instance,
                    digits: digits(n)?,
                },
                f,
            )
        }
        VerbArgs::Residue { common, a, q } => {
            let p = prime(common.p)?;
            let a = nonzero("a", rational("a", &a, p)?)?;
            if q == Some(0) {
                return Err(CliError::Usage("--q must be positive".into()));
            }
            (Verb::Residue { a, q }, common.format)
        }
        VerbArgs::FpCount { common, a, b } => {
            let p = prime(common.p)?;
            let fp = FpCubic::new(p.reduce(a), p.reduce(b), p)
                .map_err(|_| CliError::Usage("--a and --b must be nonzero mod p".into()))?;
            (Verb::FpCount(fp), common.format)
        }
        VerbArgs::Verify {
            common,
            r1,
            r2,
            digits: n,
        } => {
            let p = prime(common.p)?;
            let r1 = rational("r1", &r1, p)?;
            let r2 = rational("r2", &r2, p)?;
            (
                Verb::Verify {
                    r1,
                    r2,
                    digits: digits(n)?,
                },
                common.format,
            )
        }
        VerbArgs::Sweep {
            common,
            count,
            seed,
            digits: n,
        } => {
            let p = prime(common.p)?;
            (
                Verb::Sweep {
                    prime: p,
                    count,
                    seed,
                    digits: digits(n)?,
                },
                common.format,
            )
        }
    };
    Ok(Command { verb, format })
}

/// Executes a command and returns the text for standard output.
pub fn run(cmd: &Command, limits: &Limits) -> Result<String, CliError> {
    let doc = report::build(&cmd.verb, limits)?;
    let out = match cmd.format {
        Format::Json => serde_json::to_string_pretty(&doc.json).expect("JSON values serialize"),
        Format::Text => doc.text,
    };
    if let Some(reason) = doc.failure {
        return Err(CliError::Internal(format!("{reason}\n{out}")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Result<Command, CliError> {
        parse_args(std::iter::once("padic-cubic").chain(s.split_whitespace()))
    }

    #[test]
    fn parse_examples() {
        let c = parse("classify --p 11 --a 4 --b 5").unwrap();
        let p = Prime::new(11).unwrap();
        assert_eq!(
            c.verb,
            Verb::Classify(CubicInstance::from_integers(4, 5, p).unwrap())
        );
        assert_eq!(c.format, Format::Text);

        let c = parse("solve --p 5 --a 5 --b 25 --digits 8 --format json").unwrap();
        assert!(matches!(c.verb, Verb::Solve { digits: 8, .. }));
        assert_eq!(c.format, Format::Json);

        assert!(matches!(
            parse("classify --p 4 --a 1 --b 1"),
            Err(CliError::Prime(_))
        ));
        assert!(matches!(
            parse("classify --p 3 --a 1 --b 1"),
            Err(CliError::Prime(_))
        ));
    }

    #[test]
    fn usage_errors_name_the_flag() {
        match parse("classify --p 7 --a 0 --b 1") {
            Err(CliError::Usage(m)) => assert!(m.contains("--a")),
            other => panic!("{other:?}"),
        }
        match parse("classify --p 7 --a 1 --b 1/0") {
            Err(CliError::Usage(m)) => assert!(m.contains("--b")),
            other => panic!("{other:?}"),
        }
        assert_eq!(parse("classify --p 7 --a 1").unwrap_err().exit_code(), 1);
        assert_eq!(
            parse("solve --p 7 --a 1 --b 1 --digits 0")
                .unwrap_err()
                .exit_code(),
            1
        );
    }

    #[test]
    fn exit_code_mapping() {
        assert_eq!(CliError::Internal("x".into()).exit_code(), 2);
        assert_eq!(
            CliError::from(CoreError::InternalInconsistency("x".into())).exit_code(),
            2
        );
        assert_eq!(
            CliError::from(CoreError::ScanBoundExceeded { size: 11, bound: 5 }).exit_code(),
            1
        );
        assert_eq!(CliError::Usage("x".into()).exit_code(), 1);
    }

    #[test]
    fn negative_and_shorthand_literals() {
        let c = parse("count --p 7 --a -3*p^2 --b -2/5*p^3").unwrap();
        let Verb::Count(inst) = c.verb else { panic!() };
        assert_eq!(inst.a().to_string(), "-147");
        assert_eq!(inst.b().to_string(), "-686/5");
    }
}
