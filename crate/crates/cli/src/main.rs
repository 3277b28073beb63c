//! `rigor` — checks numerical propositions over exact rational interval
//! arithmetic and evaluates constant expressions to guaranteed enclosures.

mod script;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context as AnyhowContext, Result};
use clap::{Parser, Subcommand};

use rigor_core::expr::{eval_interval, parse, rewrite_exact, simplify};
use rigor_core::{decide, Certificate, Context, Interval, Rational, Verdict};
use script::{Assertion, Overrides};

#[derive(Parser)]
#[command(
    name = "rigor",
    version,
    about = "Prove or refute numerical propositions with exact rational interval arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every assertion in a script file.
    Check {
        file: PathBuf,
        /// Approximation depth for elementary functions.
        #[arg(long)]
        approx: Option<u32>,
        /// Default tile count for every variable.
        #[arg(long)]
        split: Option<usize>,
        /// Taylor expansion degree (univariate assertions only).
        #[arg(long)]
        taylor: Option<u32>,
        /// Outward dyadic rounding with this many fractional bits.
        #[arg(long)]
        round_bits: Option<u32>,
        /// Maximum number of concurrently evaluated tiles.
        #[arg(long)]
        parallel: Option<usize>,
        /// Emit certificates as a JSON array on stdout.
        #[arg(long)]
        json: bool,
        /// On an unknown verdict, retry with the depth doubled up to this cap.
        #[arg(long)]
        escalate: Option<u32>,
    },
    /// Evaluate a constant expression to a guaranteed enclosure.
    Eval {
        expr: String,
        /// Approximation depth for elementary functions.
        #[arg(long, default_value_t = 3)]
        approx: u32,
        /// Fractional digits in the decimal rendering.
        #[arg(long, default_value_t = 12)]
        digits: u32,
    },
    /// Re-check a certificate file produced by `check --json`.
    Verify { cert: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check {
            file,
            approx,
            split,
            taylor,
            round_bits,
            parallel,
            json,
            escalate,
        } => {
            let overrides = Overrides {
                approx,
                split,
                taylor,
                round_bits,
                parallel,
            };
            check(&file, &overrides, json, escalate)
        }
        Command::Eval {
            expr,
            approx,
            digits,
        } => eval(&expr, approx, digits),
        Command::Verify { cert } => verify(&cert),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(3)
        }
    }
}

fn check(
    path: &std::path::Path,
    overrides: &Overrides,
    json: bool,
    escalate: Option<u32>,
) -> Result<ExitCode> {
    let script = script::load(path, overrides)?;
    if script.assertions.is_empty() {
        bail!("{}: no assertions", path.display());
    }
    let total = script.assertions.len();
    let mut certificates = Vec::with_capacity(total);
    let mut any_refuted = false;
    let mut any_unknown = false;
    for (i, assertion) in script.assertions.iter().enumerate() {
        let (outcome, used_approx) = run_assertion(assertion, escalate)?;
        let cert = Certificate::new(&assertion.proposition, &assertion.context, &outcome);
        if !json {
            print_report(i + 1, total, assertion, &cert, used_approx);
        }
        match outcome.verdict {
            Verdict::Refuted => any_refuted = true,
            Verdict::Unknown => any_unknown = true,
            Verdict::Proved => {}
        }
        certificates.push(cert);
    }
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&certificates).expect("certificates serialize")
        );
    }
    Ok(if any_refuted {
        ExitCode::from(2)
    } else if any_unknown {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

/// Runs one assertion, escalating the approximation depth on `Unknown`
/// when requested.
fn run_assertion(
    assertion: &Assertion,
    escalate: Option<u32>,
) -> Result<(rigor_core::ProofOutcome, u32)> {
    let mut cfg = assertion.config.clone();
    loop {
        let outcome = decide(&assertion.proposition, &assertion.context, &cfg)
            .with_context(|| format!("line {}", assertion.line))?;
        if outcome.verdict != Verdict::Unknown {
            return Ok((outcome, cfg.approx));
        }
        let next = (cfg.approx * 2).max(1);
        match escalate {
            Some(cap) if next <= cap && next > cfg.approx => cfg.approx = next,
            _ => return Ok((outcome, cfg.approx)),
        }
    }
}

fn print_report(idx: usize, total: usize, assertion: &Assertion, cert: &Certificate, approx: u32) {
    println!("[{idx}/{total}] assert {}", assertion.text);
    let verdict = cert.verdict.to_string().to_uppercase();
    let enclosure = render_enclosure(&cert.enclosure, 9);
    println!(
        "        {verdict}  enclosure {enclosure}  (n={approx}, tiles={}, {} ms)",
        cert.tiles.len(),
        cert.timing_ms
    );
}

fn eval(text: &str, approx: u32, digits: u32) -> Result<ExitCode> {
    let expr = parse(text).map_err(|e| anyhow!("{e}"))?;
    let free = expr.free_vars();
    if !free.is_empty() {
        bail!(
            "expression has free variables: {}",
            free.into_iter().collect::<Vec<_>>().join(", ")
        );
    }
    let expr = simplify(&rewrite_exact(&expr));
    let enclosure = eval_interval(&expr, &Context::new(), approx, None)?;
    if enclosure.is_empty() {
        println!("empty (side condition violated)");
        return Ok(ExitCode::SUCCESS);
    }
    println!("enclosure: {enclosure}");
    println!("decimal:   {}", render_enclosure(&enclosure, digits));
    if let Some(width) = enclosure.width() {
        println!("width:     {}", decimal_string(&width, digits, Round::Up));
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(path: &std::path::Path) -> Result<ExitCode> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let certs: Vec<Certificate> = match Certificate::from_json(&text) {
        Ok(single) => vec![single],
        Err(_) => serde_json::from_str(&text)
            .map_err(|e| anyhow!("{}: not a certificate or certificate array: {e}", path.display()))?,
    };
    let mut all_ok = true;
    for (i, cert) in certs.iter().enumerate() {
        let report = cert.replay().map_err(|e| anyhow!("certificate {}: {e}", i + 1))?;
        if report.matches {
            println!(
                "certificate {}/{}: OK ({} reproduced)",
                i + 1,
                certs.len(),
                report.verdict
            );
        } else {
            all_ok = false;
            println!("certificate {}/{}: MISMATCH", i + 1, certs.len());
            for m in &report.mismatches {
                println!("    {m}");
            }
        }
    }
    Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::from(3) })
}

enum Round {
    Down,
    Up,
}

/// Decimal string with `digits` fractional places, rounded toward the
/// requested direction so that renderings never tighten an enclosure.
fn decimal_string(q: &Rational, digits: u32, dir: Round) -> String {
    let scale = Rational::from_int(10i64).pow_nat(digits);
    let scaled = q * &scale;
    let int = match dir {
        Round::Down => scaled.floor_int(),
        Round::Up => -(-&scaled).floor_int(),
    };
    let text = int.to_string();
    let (negative, mut body) = match text.strip_prefix('-') {
        Some(magnitude) => (true, magnitude.to_string()),
        None => (false, text),
    };
    let digits = digits as usize;
    if body.len() <= digits {
        body = format!("{}{}", "0".repeat(digits - body.len() + 1), body);
    }
    let point = body.len() - digits;
    let rendered = if digits == 0 {
        body
    } else {
        format!("{}.{}", &body[..point], &body[point..])
    };
    if negative {
        format!("-{rendered}")
    } else {
        rendered
    }
}

fn render_enclosure(iv: &Interval, digits: u32) -> String {
    if iv.is_empty() {
        return "empty".to_string();
    }
    format!(
        "[{}, {}]",
        decimal_string(iv.lb(), digits, Round::Down),
        decimal_string(iv.ub(), digits, Round::Up)
    )
}
