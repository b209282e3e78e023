use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::Value;

use cyclodet::groupdet::{self, TermCount};
use cyclodet::msp::{self, EvalInstance};
use cyclodet::partitions::{self, format_parts};
use cyclodet::verify::{self, ConjectureReport, Suite, VerificationReport, VerifyConfig};
use cyclodet::Error;

#[derive(Parser, Debug)]
#[command(
    name = "cyclodet",
    version,
    about = "Exact values of monomial symmetric polynomials at roots of unity and powers of the cyclic group determinant"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate m_λ at ζ(n, k)
    Eval(EvalArgs),
    /// Print every term of Θ(Z/nZ)^k
    Expand(SizeArgs),
    /// Count surviving terms of Θ(Z/nZ)^k against |Λ̃(n, k)|
    Count(SizeArgs),
    /// Run a verification suite
    Verify(VerifyArgs),
    /// Report zero coefficients over Λ̃(n, k)
    Conjecture(SweepArgs),
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 1)]
    k: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Cap on DP states and expansion monomials
    #[arg(long, env = "CYCLODET_BUDGET")]
    budget: Option<u128>,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[command(flatten)]
    common: Common,
    /// Comma-separated parts, any order
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    method: Method,
}

#[derive(Args, Debug)]
struct SizeArgs {
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Include elapsed_ms in the output
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// thm11 | thm12 | thm32 | lemma24 | prop21 | branching | all
    #[arg(long)]
    suite: String,
    #[command(flatten)]
    sweep: SweepArgs,
    /// Second power for the branching suite
    #[arg(long, default_value_t = 1)]
    l: u32,
    /// Explicit input for lemma24
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Dp,
    Naive,
    Closed,
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Plain,
}

/// A failed run: the exit code and the message for standard error.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::IntegralityViolation { .. } | Error::ProvenClaimViolated(_) => 1,
            Error::Parse(_) | Error::Precondition(_) | Error::OrderMismatch { .. } => 2,
            Error::BudgetExceeded { .. } => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

#[derive(Serialize)]
struct EvalOutput {
    n: u32,
    k: u32,
    lambda: String,
    #[serde(serialize_with = "cyclodet::json::big_number")]
    value: BigInt,
    method_used: &'static str,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// Returns standard output and the exit code.
fn run(command: Command) -> Result<(String, u8), Failure> {
    match command {
        Command::Eval(a) => eval(&a).map(|s| (s, 0)),
        Command::Expand(a) => expand(&a.common).map(|s| (s, 0)),
        Command::Count(a) => count(&a.common).map(|s| (s, 0)),
        Command::Verify(a) => verify_cmd(&a),
        Command::Conjecture(a) => conjecture(&a).map(|s| (s, 0)),
    }
}

fn check_size(c: &Common) -> Result<(), Failure> {
    if c.n == 0 || c.k == 0 {
        return Err(usage("--n and --k must be positive"));
    }
    Ok(())
}

fn dp_budget(c: &Common) -> u128 {
    c.budget.unwrap_or(msp::DEFAULT_DP_BUDGET)
}

fn expansion_budget(c: &Common) -> u128 {
    c.budget.unwrap_or(groupdet::DEFAULT_EXPANSION_BUDGET)
}

fn verify_config(a: &SweepArgs) -> Result<VerifyConfig, Failure> {
    if a.jobs == 0 {
        return Err(usage("--jobs must be at least 1"));
    }
    Ok(VerifyConfig {
        jobs: a.jobs,
        dp_budget: dp_budget(&a.common),
        expansion_budget: expansion_budget(&a.common),
    })
}

fn json_line<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("output serializes") + "\n"
}

fn eval(a: &EvalArgs) -> Result<String, Failure> {
    let c = &a.common;
    check_size(c)?;
    let raw = partitions::parse_parts(&a.lambda)?;
    let (n, k) = (c.n, c.k);
    let inst = EvalInstance::new(raw.clone(), n, k)?;
    let canonical = inst.canonical();
    if raw.iter().any(|&p| p < 1 || p > n as i64) {
        let factor = msp::residue_collision_factor(&raw, n);
        let mut note = format!(
            "notice: parts of ({}) reduced mod {n} to ({canonical})",
            format_parts(&raw)
        );
        if factor != 1u32.into() {
            let _ = write!(
                note,
                "; congruent distinct parts merged, m of the original parts is {factor} times the printed value"
            );
        }
        eprintln!("{note}");
    }
    let inst = EvalInstance::from_partition(&canonical, k)?;
    let budget = dp_budget(c);
    let (value, method_used) = match a.method {
        Method::Dp => (msp::msp_value_dp_with_budget(&inst, budget)?, "dp"),
        Method::Naive => (msp::msp_value_naive(&inst)?, "naive"),
        Method::Closed => match msp::closed_form(&inst) {
            Some(r) => (r?.0, "closed"),
            None => return Err(usage(format!("no closed form applies to {inst}"))),
        },
        Method::Auto => match msp::closed_form(&inst) {
            Some(r) => (r?.0, "closed"),
            None => (msp::msp_value_dp_with_budget(&inst, budget)?, "dp"),
        },
    };
    let out = EvalOutput {
        n,
        k,
        lambda: canonical.to_string(),
        value,
        method_used,
    };
    Ok(match c.format {
        Format::Json => json_line(&out),
        Format::Tsv => format!(
            "n\tk\tlambda\tvalue\tmethod_used\n{}\t{}\t{}\t{}\t{}\n",
            out.n, out.k, out.lambda, out.value, out.method_used
        ),
        Format::Plain => format!("m_({})(ζ({n}, {k})) = {}\n", out.lambda, out.value),
    })
}

fn expand(c: &Common) -> Result<String, Failure> {
    check_size(c)?;
    let map = groupdet::dedekind_expand_with_budget(c.n, c.k, expansion_budget(c))?;
    let records = map.records();
    Ok(match c.format {
        Format::Json => json_line(&records),
        Format::Tsv => {
            let mut s = String::from("lambda\tcoefficient\n");
            for r in &records {
                let _ = writeln!(s, "{}\t{}", r.lambda, r.coefficient);
            }
            s
        }
        Format::Plain => format!("{map}\n"),
    })
}

fn count(c: &Common) -> Result<String, Failure> {
    check_size(c)?;
    let t: TermCount = groupdet::count_terms_with_budget(c.n, c.k, expansion_budget(c))?;
    Ok(match c.format {
        Format::Json => json_line(&t),
        Format::Tsv => format!(
            "n\tk\tnu\tlambda_tilde\tequal\n{}\t{}\t{}\t{}\t{}\n",
            t.n, t.k, t.nu, t.lambda_tilde, t.equal
        ),
        Format::Plain => format!(
            "Θ(Z/{}Z)^{}: {} terms, |Λ̃| = {}, equal = {}\n",
            t.n, t.k, t.nu, t.lambda_tilde, t.equal
        ),
    })
}

/// Serializes `v`, dropping `elapsed_ms` unless timing was requested so that
/// repeated runs print identical bytes.
fn report_value<T: Serialize>(v: &T, timing: bool) -> Value {
    let mut value = serde_json::to_value(v).expect("report serializes");
    if !timing {
        if let Some(obj) = value.as_object_mut() {
            obj.remove("elapsed_ms");
        }
    }
    value
}

fn verify_cmd(a: &VerifyArgs) -> Result<(String, u8), Failure> {
    let s = &a.sweep;
    check_size(&s.common)?;
    let suite: Suite = a.suite.parse()?;
    let cfg = verify_config(s)?;
    let lambda = a
        .lambda
        .as_deref()
        .map(partitions::parse_parts)
        .transpose()?;
    let (n, k) = (s.common.n, s.common.k);
    let reports = verify::run_suite(suite, n, k, a.l, lambda.as_deref(), &cfg)?;
    for r in &reports {
        eprintln!(
            "{}: {} instances, {} failures, {} ms",
            r.suite,
            r.instances_checked,
            r.failures.len(),
            r.elapsed_ms
        );
    }
    let code = if reports.iter().all(VerificationReport::passed) {
        0
    } else {
        1
    };
    let out = match s.common.format {
        Format::Json => {
            let values: Vec<Value> = reports.iter().map(|r| report_value(r, s.timing)).collect();
            match (suite, values.as_slice()) {
                (Suite::All, _) => json_line(&values),
                (_, [single]) => json_line(single),
                _ => json_line(&values),
            }
        }
        Format::Tsv => {
            let mut out = String::from("suite\tcheck\tinstances_checked\tfailures\n");
            for r in &reports {
                for c in &r.checks {
                    let _ = writeln!(
                        out,
                        "{}\t{}\t{}\t{}",
                        r.suite, c.name, c.instances_checked, c.failures
                    );
                }
            }
            out
        }
        Format::Plain => {
            let mut out = String::new();
            for r in &reports {
                let status = if r.passed() { "PASS" } else { "FAIL" };
                let _ = writeln!(
                    out,
                    "{status} {} (n={}, k={}): {} instances",
                    r.suite, r.n, r.k, r.instances_checked
                );
                for f in &r.failures {
                    let _ = writeln!(
                        out,
                        "  {} ({}): expected {}, got {}",
                        f.check, f.lambda, f.expected, f.actual
                    );
                }
            }
            out
        }
    };
    Ok((out, code))
}

fn conjecture(a: &SweepArgs) -> Result<String, Failure> {
    check_size(&a.common)?;
    let cfg = verify_config(a)?;
    let r: ConjectureReport = verify::explore_conjecture(a.common.n, a.common.k, &cfg)?;
    eprintln!(
        "conjecture: {} partitions examined in {} ms",
        r.total, r.elapsed_ms
    );
    Ok(match a.common.format {
        Format::Json => json_line(&report_value(&r, a.timing)),
        Format::Tsv => {
            let mut out = String::from(
                "n\tk\ttotal\tnonzero\tzeros\tis_prime_power\tconsistent_with_conjecture\n",
            );
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                r.n,
                r.k,
                r.total,
                r.nonzero,
                r.zero_coefficients.join(";"),
                r.is_prime_power,
                r.consistent_with_conjecture
            );
            out
        }
        Format::Plain => {
            let mut out = format!(
                "n={} k={}: {} of {} coefficients nonzero; prime power: {}; consistent: {}\n",
                r.n, r.k, r.nonzero, r.total, r.is_prime_power, r.consistent_with_conjecture
            );
            for z in &r.zero_coefficients {
                let _ = writeln!(out, "  zero at ({z})");
            }
            out
        }
    })
}
