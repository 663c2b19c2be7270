//! Command-line front end: exact evaluation (both engines, gated on
//! agreement), central values, the numeric oracle, verification suites,
//! character tables and sequence lookups.

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use multizeta::report::SuiteReport;
use multizeta::{eval_gated, render_digits};
use multizeta_core::central::{central_value, CentralRequest};
use multizeta_core::characters::{parse_label, Character, CharacterJson};
use multizeta_core::cyclotomic::CyclotomicJson;
use multizeta_core::oracle::{
    numeric_multiple_l_equal, Grouping, OracleConfig,
};
use multizeta_core::pi_multiple::PiMultipleJson;
use multizeta_core::rational::format_rational;
use multizeta_core::sequences;
use multizeta_core::{EvalRequest, Omega};

#[derive(Parser)]
#[command(
    name = "multizeta",
    about = "Exact multiple Dirichlet L-values at equal arguments, verified two ways",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ValueArgs {
    /// bullet (strictly increasing indices) or star (weakly increasing)
    #[arg(long)]
    omega: String,
    /// depth d >= 1
    #[arg(long)]
    d: u64,
    /// argument parameter: the argument is kappa = 2k + e(chi)
    #[arg(long)]
    k: i64,
    /// character label: principal:N, kronecker:D, or mod:N:index:i
    #[arg(long = "char")]
    character: String,
    /// machine-readable output
    #[arg(long)]
    json: bool,
    /// append a decimal rendering with this many digits
    #[arg(long)]
    digits: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the depth-d value at equal arguments by both closed-form
    /// engines; refuses to print on disagreement.
    Eval(ValueArgs),
    /// Central limit value at equal non-positive arguments -kappa.
    Central(ValueArgs),
    /// Truncated-series numeric value with a tail bound.
    Oracle {
        #[command(flatten)]
        args: ValueArgs,
        /// summation cutoff
        #[arg(long, default_value_t = 10_000)]
        cutoff: u64,
    },
    /// Run a verification suite: identities, tables, cross, or all.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 6)]
        kmax: u64,
        #[arg(long, default_value_t = 8)]
        dmax: u64,
        #[arg(long, default_value_t = 7)]
        nmax: u64,
        #[arg(long)]
        json: bool,
    },
    /// List the character group of a modulus.
    Chars {
        #[arg(long)]
        modulus: u64,
        #[arg(long)]
        json: bool,
    },
    /// Look up special sequences: bernoulli, euler, lucas, genbernoulli.
    Seq {
        #[arg(long)]
        name: String,
        #[arg(long)]
        n: u64,
        /// character label for genbernoulli
        #[arg(long = "char")]
        character: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

/// Usage errors exit with 2, verification failures and computation errors
/// with 1.
enum CmdError {
    Usage(String),
    Failure(String),
}

impl CmdError {
    fn usage(e: impl std::fmt::Display) -> Self {
        CmdError::Usage(e.to_string())
    }

    fn failure(e: impl std::fmt::Display) -> Self {
        CmdError::Failure(e.to_string())
    }
}

type CmdResult<T> = Result<T, CmdError>;

fn parse_value_args(args: &ValueArgs) -> CmdResult<(Omega, Character)> {
    let omega = Omega::parse(&args.omega).map_err(CmdError::usage)?;
    let chi = parse_label(&args.character).map_err(CmdError::usage)?;
    Ok((omega, chi))
}

fn run_eval(args: &ValueArgs) -> CmdResult<()> {
    let (omega, chi) = parse_value_args(args)?;
    let req = EvalRequest::new(omega, args.d, args.k, chi).map_err(CmdError::usage)?;
    let value = eval_gated(&req).map_err(CmdError::Failure)?;
    if args.json {
        let out = serde_json::to_string_pretty(&PiMultipleJson::from(&value))
            .map_err(CmdError::failure)?;
        println!("{out}");
    } else {
        println!("{value}");
        if let Some(digits) = args.digits {
            let (re, im) = value.to_f64_pair();
            println!("= {}", render_digits(re, im, digits));
        }
    }
    Ok(())
}

fn run_central(args: &ValueArgs) -> CmdResult<()> {
    let (omega, chi) = parse_value_args(args)?;
    let req = CentralRequest::new(omega, args.d, args.k, chi).map_err(CmdError::usage)?;
    let value = central_value(&req).map_err(CmdError::failure)?;
    if args.json {
        let out = serde_json::to_string_pretty(&CyclotomicJson::from(&value))
            .map_err(CmdError::failure)?;
        println!("{out}");
    } else {
        match value.as_rational() {
            Some(r) => println!("{}", format_rational(&r)),
            None => println!("{value}"),
        }
        if let Some(digits) = args.digits {
            let (re, im, _) = value.to_f64_pair();
            println!("= {}", render_digits(re, im, digits));
        }
    }
    Ok(())
}

fn run_oracle(args: &ValueArgs, cutoff: u64) -> CmdResult<()> {
    let (omega, chi) = parse_value_args(args)?;
    let kappa = 2 * args.k + chi.parity() as i64;
    if kappa < 1 {
        return Err(CmdError::Usage(format!("oracle needs kappa = {kappa} >= 1")));
    }
    let grouping = if kappa == 1 {
        Grouping::FullPeriod
    } else {
        Grouping::None
    };
    let cfg = OracleConfig { cutoff, grouping };
    let eval = numeric_multiple_l_equal(omega, kappa as f64, &chi, args.d, &cfg)
        .map_err(CmdError::usage)?;
    let (re, im) = eval.value_f64();
    if args.json {
        let out = json!({
            "value": {"re": format!("{re:.17e}"), "im": format!("{im:.17e}")},
            "tail_bound": format!("{:.3e}", eval.tail_bound),
            "cutoff": eval.cutoff,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&out).map_err(CmdError::failure)?
        );
    } else {
        println!(
            "{} (tail bound {:.3e}, cutoff {})",
            render_digits(re, im, args.digits.unwrap_or(15)),
            eval.tail_bound,
            eval.cutoff
        );
    }
    Ok(())
}

fn run_verify(suite: &str, kmax: u64, dmax: u64, nmax: u64, as_json: bool) -> CmdResult<bool> {
    let reports: Vec<SuiteReport> = multizeta::suites::run_suite(suite, kmax, dmax, nmax)
        .ok_or_else(|| {
            CmdError::Usage(format!(
                "unknown suite {suite:?}; use identities, tables, cross, or all"
            ))
        })?;
    let all_pass = reports.iter().all(|r| r.pass());
    if as_json {
        println!(
            "{}",
            serde_json::to_string_pretty(&reports).map_err(CmdError::failure)?
        );
    } else {
        for report in &reports {
            report.print_lines();
        }
    }
    Ok(all_pass)
}

fn run_chars(modulus: u64, as_json: bool) -> CmdResult<()> {
    if modulus == 0 {
        return Err(CmdError::Usage("modulus must be >= 1".into()));
    }
    let chars = Character::characters_mod(modulus);
    if as_json {
        let table: Vec<CharacterJson> = chars.iter().map(CharacterJson::from).collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&table).map_err(CmdError::failure)?
        );
    } else {
        for chi in &chars {
            println!(
                "{}  order={} parity={} conductor={}",
                chi.label(),
                chi.order(),
                chi.parity(),
                chi.conductor()
            );
        }
    }
    Ok(())
}

fn run_seq(name: &str, n: u64, character: Option<&str>, as_json: bool) -> CmdResult<()> {
    let (text, value_json) = match name {
        "bernoulli" => {
            let b = sequences::bernoulli(n);
            (format_rational(&b), json!(format_rational(&b)))
        }
        "euler" => {
            let e = sequences::euler_number(n);
            (e.to_string(), json!(e.to_string()))
        }
        "lucas" => {
            if n == 0 {
                return Err(CmdError::Usage("lucas numbers start at n = 1".into()));
            }
            let l = sequences::lucas(n);
            (l.to_string(), json!(l.to_string()))
        }
        "genbernoulli" => {
            let label = character
                .ok_or_else(|| CmdError::Usage("genbernoulli needs --char".into()))?;
            let chi = parse_label(label).map_err(CmdError::usage)?;
            let b = sequences::gen_bernoulli(n, &chi);
            (
                b.to_string(),
                serde_json::to_value(CyclotomicJson::from(&b)).map_err(CmdError::failure)?,
            )
        }
        other => {
            return Err(CmdError::Usage(format!(
                "unknown sequence {other:?}; use bernoulli, euler, lucas, genbernoulli"
            )))
        }
    };
    if as_json {
        let out = json!({"name": name, "n": n, "value": value_json});
        println!(
            "{}",
            serde_json::to_string_pretty(&out).map_err(CmdError::failure)?
        );
    } else {
        println!("{text}");
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Eval(args) => run_eval(args).map(|()| true),
        Command::Central(args) => run_central(args).map(|()| true),
        Command::Oracle { args, cutoff } => run_oracle(args, *cutoff).map(|()| true),
        Command::Verify {
            suite,
            kmax,
            dmax,
            nmax,
            json,
        } => run_verify(suite, *kmax, *dmax, *nmax, *json),
        Command::Chars { modulus, json } => run_chars(*modulus, *json).map(|()| true),
        Command::Seq {
            name,
            n,
            character,
            json,
        } => run_seq(name, *n, character.as_deref(), *json).map(|()| true),
    };
    match outcome {
        Ok(true) => std::process::exit(0),
        Ok(false) => std::process::exit(1),
        Err(CmdError::Failure(message)) => {
            eprintln!("error: {message}");
            std::process::exit(1);
        }
        Err(CmdError::Usage(message)) => {
            eprintln!("usage error: {message}");
            std::process::exit(2);
        }
    }
}
