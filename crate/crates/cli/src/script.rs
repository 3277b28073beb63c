//! Line-oriented proposition scripts.
//!
//! ```text
//! # comment
//! const NAME = <constant expression>
//! var NAME in [<constant expr>, <constant expr>]
//! option approx = N | splits = N | round_bits = N | rewrites = on|off
//! assert <expr> (< | <= | > | >=) <expr> [with ...]
//! assert <expr> in [<a>, <b>] [with taylor(VAR, D[, CENTER]), split(VAR, K), approx(N)]
//! ```
//!
//! Constants must be declared before use and fold to exact rationals;
//! they are substituted into every later line. Options apply to the
//! asserts that follow them.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context as AnyhowContext, Result};

use rigor_core::expr::{fold_constant, parse, parse_proposition};
use rigor_core::{Context, Interval, Proposition, ProverConfig, Rational};

const RESERVED: &[&str] = &[
    "pi", "sqrt", "sin", "cos", "tan", "exp", "ln", "atan", "abs", "in", "with", "const", "var",
    "option", "assert", "on", "off", "split", "taylor", "approx",
];

/// One `assert` line, ready to run.
#[derive(Debug, Clone)]
pub struct Assertion {
    pub line: usize,
    pub text: String,
    pub proposition: Proposition,
    pub context: Context,
    pub config: ProverConfig,
}

/// Parsed script: the assertions with their effective contexts/configs.
#[derive(Debug, Default)]
pub struct Script {
    pub assertions: Vec<Assertion>,
}

/// Flag-level overrides applied on top of file options.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub approx: Option<u32>,
    pub split: Option<usize>,
    pub taylor: Option<u32>,
    pub round_bits: Option<u32>,
    pub parallel: Option<usize>,
}

pub fn parse_script(source: &str, overrides: &Overrides) -> Result<Script> {
    let mut consts: BTreeMap<String, Rational> = BTreeMap::new();
    let mut vars = Context::new();
    let mut options = ProverConfig::default();
    let mut script = Script::default();

    for (idx, raw) in source.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(raw).trim().to_string();
        if line.is_empty() {
            continue;
        }
        let at = |msg: String| anyhow!("line {line_no}: {msg}");
        if let Some(rest) = line.strip_prefix("const ") {
            let (name, expr_text) = rest
                .split_once('=')
                .ok_or_else(|| at("expected `const NAME = <expr>`".into()))?;
            let name = declare_name(name.trim(), &consts, &vars).map_err(|e| at(e))?;
            let text = substitute(expr_text.trim(), &consts);
            let value = parse(&text)
                .map_err(|e| at(e.to_string()))
                .and_then(|e| fold_constant(&e).map_err(|_| at("constant expression required".into())))?;
            consts.insert(name, value);
        } else if let Some(rest) = line.strip_prefix("var ") {
            let (name, interval_text) = rest
                .split_once(" in ")
                .ok_or_else(|| at("expected `var NAME in [a, b]`".into()))?;
            let name = declare_name(name.trim(), &consts, &vars).map_err(|e| at(e))?;
            let interval = parse_interval_text(interval_text.trim(), &consts)
                .map_err(|e| at(e.to_string()))?;
            vars.bind(name, interval);
        } else if let Some(rest) = line.strip_prefix("option ") {
            apply_option(rest.trim(), &mut options).map_err(|e| at(e))?;
        } else if let Some(rest) = line.strip_prefix("assert ") {
            let (prop_text, with_text) = split_with(rest);
            let substituted = substitute(prop_text.trim(), &consts);
            let proposition =
                parse_proposition(&substituted).map_err(|e| at(e.to_string()))?;
            let mut config = effective_config(&options, overrides);
            if let Some(with_text) = with_text {
                apply_with_clause(with_text.trim(), &mut config, &consts).map_err(|e| at(e))?;
            }
            script.assertions.push(Assertion {
                line: line_no,
                text: rest.trim().to_string(),
                proposition,
                context: vars.clone(),
                config,
            });
        } else {
            bail!("line {line_no}: unrecognized statement `{line}`");
        }
    }
    Ok(script)
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn declare_name(
    name: &str,
    consts: &BTreeMap<String, Rational>,
    vars: &Context,
) -> std::result::Result<String, String> {
    if name.is_empty()
        || !name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
    {
        return Err(format!("invalid name `{name}`"));
    }
    if RESERVED.contains(&name) {
        return Err(format!("`{name}` is reserved"));
    }
    if consts.contains_key(name) || vars.get(name).is_some() {
        return Err(format!("`{name}` is already declared"));
    }
    Ok(name.to_string())
}

/// Replaces declared constant names by their parenthesized exact values,
/// at identifier granularity.
fn substitute(text: &str, consts: &BTreeMap<String, Rational>) -> String {
    let bytes = text.as_bytes();
    let mut out = String::with_capacity(text.len());
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
            {
                i += 1;
            }
            let ident = &text[start..i];
            match consts.get(ident) {
                Some(value) => out.push_str(&format!("({value})")),
                None => out.push_str(ident),
            }
        } else {
            out.push(c);
            i += 1;
        }
    }
    out
}

fn parse_interval_text(
    text: &str,
    consts: &BTreeMap<String, Rational>,
) -> Result<Interval> {
    let inner = text
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| anyhow!("expected `[a, b]`"))?;
    // the expression grammar has no commas, so splitting here is unambiguous
    let (a, b) = inner
        .split_once(',')
        .ok_or_else(|| anyhow!("expected two endpoints"))?;
    let fold = |t: &str| -> Result<Rational> {
        let e = parse(&substitute(t.trim(), consts)).map_err(|e| anyhow!("{e}"))?;
        fold_constant(&e).map_err(|_| anyhow!("endpoint must be a constant expression"))
    };
    let (lb, ub) = (fold(a)?, fold(b)?);
    if lb > ub {
        bail!("interval endpoints out of order");
    }
    Ok(Interval::new(lb, ub))
}

fn apply_option(text: &str, options: &mut ProverConfig) -> std::result::Result<(), String> {
    let (key, value) = text
        .split_once('=')
        .ok_or_else(|| "expected `option KEY = VALUE`".to_string())?;
    let value = value.trim();
    match key.trim() {
        "approx" => {
            options.approx = value.parse().map_err(|_| "approx must be a natural number")?
        }
        "splits" => {
            let k: usize = value.parse().map_err(|_| "splits must be a positive integer")?;
            if k == 0 {
                return Err("splits must be at least 1".into());
            }
            options.default_split = k;
        }
        "round_bits" => {
            options.round_bits =
                Some(value.parse().map_err(|_| "round_bits must be a natural number")?)
        }
        "rewrites" => match value {
            "on" => options.rewrite_exact_enabled = true,
            "off" => options.rewrite_exact_enabled = false,
            _ => return Err("rewrites must be `on` or `off`".into()),
        },
        other => return Err(format!("unknown option `{other}`")),
    }
    Ok(())
}

fn effective_config(file_options: &ProverConfig, overrides: &Overrides) -> ProverConfig {
    let mut cfg = file_options.clone();
    if let Some(n) = overrides.approx {
        cfg.approx = n;
    }
    if let Some(k) = overrides.split {
        cfg.default_split = k.max(1);
    }
    if let Some(bits) = overrides.round_bits {
        cfg.round_bits = Some(bits);
    }
    if let Some(p) = overrides.parallel {
        cfg.parallel_tiles = p;
    }
    if let Some(d) = overrides.taylor {
        cfg.taylor_degree = d; // variable resolved per assert, see below
    }
    cfg
}

/// Splits an assert body at its top-level ` with ` keyword, if any.
fn split_with(text: &str) -> (&str, Option<&str>) {
    let bytes = text.as_bytes();
    let mut depth = 0i32;
    let needle = b" with ";
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' | b'[' => depth += 1,
            b')' | b']' => depth -= 1,
            _ => {
                if depth == 0 && bytes[i..].starts_with(needle) {
                    return (&text[..i], Some(&text[i + needle.len()..]));
                }
            }
        }
        i += 1;
    }
    (text, None)
}

/// Splits `a, b, c` at commas outside parentheses.
fn split_top_commas(text: &str) -> Vec<&str> {
    let bytes = text.as_bytes();
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' | b'[' => depth += 1,
            b')' | b']' => depth -= 1,
            b',' if depth == 0 => {
                parts.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(text[start..].trim());
    parts
}

fn apply_with_clause(
    text: &str,
    cfg: &mut ProverConfig,
    consts: &BTreeMap<String, Rational>,
) -> std::result::Result<(), String> {
    for item in split_top_commas(text) {
        let (head, args) = item
            .split_once('(')
            .and_then(|(h, rest)| rest.strip_suffix(')').map(|a| (h.trim(), a)))
            .ok_or_else(|| format!("malformed with-clause `{item}`"))?;
        let args = split_top_commas(args);
        match head {
            "split" => {
                if args.len() != 2 {
                    return Err("split takes (VAR, K)".into());
                }
                let k: usize = args[1]
                    .parse()
                    .map_err(|_| "split count must be a positive integer")?;
                if k == 0 {
                    return Err("split count must be at least 1".into());
                }
                cfg.splits.insert(args[0].to_string(), k);
            }
            "taylor" => {
                if args.len() != 2 && args.len() != 3 {
                    return Err("taylor takes (VAR, DEGREE[, CENTER])".into());
                }
                cfg.taylor_var = Some(args[0].to_string());
                cfg.taylor_degree = args[1]
                    .parse()
                    .map_err(|_| "taylor degree must be a natural number")?;
                if let Some(center_text) = args.get(2) {
                    let e = parse(&substitute(center_text, consts))
                        .map_err(|e| e.to_string())?;
                    let center =
                        fold_constant(&e).map_err(|_| "taylor center must be constant")?;
                    cfg.taylor_center = Some(center);
                }
            }
            "approx" => {
                if args.len() != 1 {
                    return Err("approx takes (N)".into());
                }
                cfg.approx = args[0]
                    .parse()
                    .map_err(|_| "approx must be a natural number")?;
            }
            other => return Err(format!("unknown with-clause `{other}`")),
        }
    }
    Ok(())
}

/// Resolves a `--taylor D` flag for an assertion: the expression must be
/// univariate, and that variable becomes the expansion variable.
pub fn resolve_flag_taylor(assertion: &mut Assertion) -> Result<()> {
    if assertion.config.taylor_degree >= 1 && assertion.config.taylor_var.is_none() {
        let fv = assertion.proposition.free_vars();
        if fv.len() != 1 {
            bail!(
                "line {}: --taylor needs a univariate assertion",
                assertion.line
            );
        }
        assertion.config.taylor_var = fv.into_iter().next();
    }
    Ok(())
}

pub fn load(path: &std::path::Path, overrides: &Overrides) -> Result<Script> {
    let source = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let mut script = parse_script(&source, overrides)?;
    for assertion in &mut script.assertions {
        resolve_flag_taylor(assertion)?;
    }
    Ok(script)
}
