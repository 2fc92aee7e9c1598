//! Command-line front end. JSON on stdout by default (one document per
//! invocation), `--plain` for human-readable text.
//!
//! Exit codes: 0 on success, 2 on a domain or parse error (the error name
//! and a one-line reason go to stderr), 1 on internal failure, including a
//! failed `selfcheck`.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::congruence::{gamma_index, gamma_level, gamma_member};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::modular::{enumerate_sl_with_cap, mod_reduce, Modulus, DEFAULT_ENUMERATION_CAP};
use crate::residual::{phi_k, witness_p, witness_rf, CongruenceWitness};
use crate::selfcheck::run_selfcheck;
use crate::torsion::{matrix_order, mod_spectrum_with_cap, OrderResult};
use crate::words::{decompose_int, lift_to_int};

pub const CAP_ENV: &str = "CONGRUENCE_LAB_CAP";

#[derive(Parser, Debug)]
#[command(name = "congruence-lab", version, about = "Exact computations in SL_n(Z) and its congruence quotients")]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    plain: bool,

    /// Enumeration cap on N^(n²); overrides CONGRUENCE_LAB_CAP.
    #[arg(long, global = true)]
    cap: Option<u64>,

    /// Seed for sampling-based commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Elementary word over Z for a determinant-1 matrix.
    Decompose {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
    },
    /// Integer determinant-1 lift of a matrix over Z/N.
    Lift {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
        #[arg(long = "mod")]
        modulus: u64,
    },
    /// Largest N with the matrix in Γ(N).
    Level {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
    },
    /// Membership in Γ(N).
    Member {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
        #[arg(long = "mod")]
        modulus: u64,
    },
    /// Index of Γ(N) in SL_n(Z).
    Index {
        #[arg(long)]
        n: usize,
        #[arg(long = "mod")]
        modulus: u64,
    },
    /// All of SL_n(Z/N).
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long)]
        count_only: bool,
    },
    /// Exact order in SL_n(Z).
    Order {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
    },
    /// Element orders of SL_n(Z/N).
    Spectrum {
        #[arg(long)]
        n: usize,
        #[arg(long = "mod")]
        modulus: u64,
    },
    /// Image of a Γ(p^k) element in sl_n(Z/p).
    Phi {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        k: u32,
    },
    /// Finite quotient separating the matrix from the identity.
    WitnessRf {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
    },
    /// p-group quotient separating a Γ(p) element from the identity.
    WitnessP {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
        #[arg(long)]
        prime: u64,
    },
    /// Run the invariant suite.
    Selfcheck {
        #[arg(long)]
        quick: bool,
    },
}

/// Output of one invocation: a JSON document and its plain-text rendering.
struct Rendered {
    json: Value,
    plain: String,
    ok: bool,
}

impl Rendered {
    fn new(json: Value, plain: impl Into<String>) -> Self {
        Rendered {
            json,
            plain: plain.into(),
            ok: true,
        }
    }
}

/// Runs the CLI against the process's stdout and stderr; returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) => {
            let reason = e.to_string();
            let line = reason.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(err, "ParseError: {}", line.trim_start_matches("error: "));
            return 2;
        }
    };
    let plain = cli.plain;
    match std::panic::catch_unwind(|| dispatch(cli)) {
        Ok(Ok(rendered)) => {
            let _ = if plain {
                writeln!(out, "{}", rendered.plain)
            } else {
                writeln!(out, "{}", rendered.json)
            };
            if rendered.ok {
                0
            } else {
                1
            }
        }
        Ok(Err(e)) => {
            let _ = writeln!(err, "{}: {}", e.name(), e);
            2
        }
        Err(_) => {
            let _ = writeln!(err, "InternalError: unexpected panic");
            1
        }
    }
}

fn resolve_cap(flag: Option<u64>) -> Result<u64> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var(CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::parse("CONGRUENCE_LAB_CAP", &v)),
        Err(_) => Ok(DEFAULT_ENUMERATION_CAP),
    }
}

fn matrix(text: &str) -> Result<IntMatrix> {
    text.parse()
}

fn big_number(v: &num_bigint::BigUint) -> Value {
    match v.to_u64() {
        Some(small) => json!(small),
        None => json!(v.to_string()),
    }
}

fn witness_plain(w: &CongruenceWitness) -> String {
    format!(
        "kind: {}\nprime: {}\nlevel: {}\nquotient order: {}\nimage: {}",
        w.kind.as_str(),
        w.prime,
        w.level,
        w.quotient_order,
        w.image
    )
}

fn dispatch(cli: Cli) -> Result<Rendered> {
    let rendered = match cli.command {
        Command::Decompose { matrix: text } => {
            let word = decompose_int(&matrix(&text)?)?;
            Rendered::new(
                json!({"word": word.to_string(), "length": word.len()}),
                word.to_string(),
            )
        }
        Command::Lift { matrix: text, modulus } => {
            let y = mod_reduce(&matrix(&text)?, &Modulus::new(modulus)?);
            let x = lift_to_int(&y)?;
            Rendered::new(json!({"matrix": x.to_string()}), x.to_string())
        }
        Command::Level { matrix: text } => {
            let level = gamma_level(&matrix(&text)?)?;
            let value = if level.is_infinite() {
                json!("infinite")
            } else {
                big_number(level.value())
            };
            Rendered::new(json!({ "level": value }), level.to_string())
        }
        Command::Member { matrix: text, modulus } => {
            let member = gamma_member(&matrix(&text)?, modulus)?;
            Rendered::new(json!({ "member": member }), member.to_string())
        }
        Command::Index { n, modulus } => {
            check_dimension(n)?;
            let index = gamma_index(n, modulus)?;
            Rendered::new(json!(index.to_string()), index.to_string())
        }
        Command::Enumerate {
            n,
            modulus,
            count_only,
        } => {
            let all = enumerate_sl_with_cap(n, modulus, resolve_cap(cli.cap)?)?;
            let texts: Vec<String> = all.iter().map(|y| y.to_string()).collect();
            if count_only {
                Rendered::new(json!({"count": all.len()}), all.len().to_string())
            } else {
                let plain = std::iter::once(all.len().to_string())
                    .chain(texts.iter().cloned())
                    .collect::<Vec<_>>()
                    .join("\n");
                Rendered::new(json!({"count": all.len(), "matrices": texts}), plain)
            }
        }
        Command::Order { matrix: text } => {
            let order = matrix_order(&matrix(&text)?)?;
            let plain = match order {
                OrderResult::Finite { value } => value.to_string(),
                OrderResult::Infinite => "infinite".into(),
            };
            Rendered::new(serde_json::to_value(order).expect("serializable"), plain)
        }
        Command::Spectrum { n, modulus } => {
            let spectrum = mod_spectrum_with_cap(n, modulus, resolve_cap(cli.cap)?)?;
            let plain = spectrum
                .to_vec()
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(" ");
            Rendered::new(json!({"orders": spectrum}), plain)
        }
        Command::Phi {
            matrix: text,
            prime,
            k,
        } => {
            let image = phi_k(&matrix(&text)?, prime, k)?;
            Rendered::new(json!({"image": image.to_string()}), image.to_string())
        }
        Command::WitnessRf { matrix: text } => {
            let w = witness_rf(&matrix(&text)?)?;
            Rendered::new(w.to_json(), witness_plain(&w))
        }
        Command::WitnessP {
            matrix: text,
            prime,
        } => {
            let w = witness_p(&matrix(&text)?, prime)?;
            Rendered::new(w.to_json(), witness_plain(&w))
        }
        Command::Selfcheck { quick } => {
            let outcomes = run_selfcheck(quick, cli.seed, resolve_cap(cli.cap)?);
            let passed = outcomes.iter().all(|o| o.passed);
            let mut plain = format!("{:<32} {:<6} {:>8}  detail\n", "check", "result", "ms");
            for o in &outcomes {
                plain.push_str(&format!(
                    "{:<32} {:<6} {:>8}  {}\n",
                    o.name,
                    if o.passed { "PASS" } else { "FAIL" },
                    o.millis,
                    o.detail
                ));
            }
            plain.push_str(if passed { "all checks passed" } else { "some checks FAILED" });
            Rendered {
                json: json!({"passed": passed, "checks": outcomes}),
                plain,
                ok: passed,
            }
        }
    };
    Ok(rendered)
}

fn check_dimension(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidArgument("dimension must be at least 1".into()))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("congruence-lab").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn hyphenated_matrices_are_positional() {
        let (code, out, _) = call(&["order", "-1,0;0,-1"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), r#"{"kind":"finite","value":2}"#);
    }

    #[test]
    fn parse_errors_exit_two() {
        let (code, _, err) = call(&["order", "1,2;3"]);
        assert_eq!(code, 2);
        assert!(err.starts_with("ParseError:"), "{err}");
        let (code, _, err) = call(&["frobnicate"]);
        assert_eq!(code, 2);
        assert!(err.starts_with("ParseError:"));
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("witness-rf"));
    }

    #[test]
    fn zero_dimension_rejected() {
        let (code, _, err) = call(&["index", "--n", "0", "--mod", "2"]);
        assert_eq!(code, 2);
        assert!(err.starts_with("InvalidArgument"));
    }
}
