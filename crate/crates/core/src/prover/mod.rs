//! The proposition prover.
//!
//! Given a ground context and a numerical proposition — a comparison
//! `e1 REL e2` or a membership `e in [a, b]` — the prover rewrites and
//! simplifies the expression, splits the variable domains into tiles,
//! encloses the expression on every tile (directly or through an interval
//! Taylor form) and aggregates per-tile checks into a verdict:
//!
//! * `Proved`: the check holds on every tile.
//! * `Refuted`: some tile's enclosure satisfies the negated comparison (or
//!   is disjoint from the membership target), so the proposition fails at
//!   every point of that tile.
//! * `Unknown`: everything else, including tiles whose enclosure came back
//!   empty from a violated side condition.
//!
//! The run is single-shot: the prover never escalates the approximation
//! parameter on its own. Every outcome carries a certificate of per-tile
//! enclosures sufficient to replay the verdict bit-for-bit.

mod certificate;
mod taylor;

pub use certificate::{Certificate, ReplayReport};
pub use taylor::{build_taylor_form, eval_taylor_form, TaylorForm};

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::bounds::ApproxParam;
use crate::error::Error;
use crate::expr::{eval_interval, rewrite_exact, simplify, Context, Expr};
use crate::interval::{Interval, Rel};
use crate::rational::Rational;

/// A numerical proposition to prove or refute.
#[derive(Debug, Clone, PartialEq)]
pub enum Proposition {
    Relational { lhs: Expr, rel: Rel, rhs: Expr },
    Membership { expr: Expr, target: Interval },
}

impl Proposition {
    pub fn free_vars(&self) -> std::collections::BTreeSet<String> {
        match self {
            Proposition::Relational { lhs, rhs, .. } => {
                let mut fv = lhs.free_vars();
                fv.extend(rhs.free_vars());
                fv
            }
            Proposition::Membership { expr, .. } => expr.free_vars(),
        }
    }
}

impl fmt::Display for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Proposition::Relational { lhs, rel, rhs } => {
                write!(f, "{lhs} {} {rhs}", rel.symbol())
            }
            Proposition::Membership { expr, target } => {
                write!(f, "{expr} in {target}")
            }
        }
    }
}

/// Prover parameters. `Default` gives the documented defaults: depth 3,
/// no splitting, no Taylor form, exact arithmetic, rewrites and
/// simplification on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProverConfig {
    /// Approximation depth passed to every elementary-function enclosure.
    pub approx: ApproxParam,
    /// Per-variable tile counts; variables not listed use `default_split`.
    pub splits: BTreeMap<String, usize>,
    /// Tile count for variables absent from `splits`.
    pub default_split: usize,
    /// Taylor expansion degree; 0 disables the Taylor path.
    pub taylor_degree: u32,
    /// Variable to expand in; required when `taylor_degree >= 1`.
    pub taylor_var: Option<String>,
    /// Expansion center; only valid when the Taylor variable is unsplit.
    /// Defaults to the midpoint of each tile.
    pub taylor_center: Option<Rational>,
    /// Outward dyadic rounding applied after every interval operation;
    /// `None` computes exactly.
    pub round_bits: Option<u32>,
    /// Rewrite trigonometric functions of notable angles to exact values.
    pub rewrite_exact_enabled: bool,
    /// Apply the simplifier before evaluation.
    pub simplify_enabled: bool,
    /// Upper bound on concurrently evaluated tiles; 0 uses the global
    /// thread pool as-is.
    pub parallel_tiles: usize,
}

impl Default for ProverConfig {
    fn default() -> Self {
        ProverConfig {
            approx: 3,
            splits: BTreeMap::new(),
            default_split: 1,
            taylor_degree: 0,
            taylor_var: None,
            taylor_center: None,
            round_bits: None,
            rewrite_exact_enabled: true,
            simplify_enabled: true,
            parallel_tiles: 0,
        }
    }
}

impl ProverConfig {
    pub fn with_approx(mut self, n: ApproxParam) -> Self {
        self.approx = n;
        self
    }

    pub fn with_split(mut self, var: &str, tiles: usize) -> Self {
        self.splits.insert(var.to_string(), tiles);
        self
    }

    pub fn with_taylor(mut self, var: &str, degree: u32) -> Self {
        self.taylor_var = Some(var.to_string());
        self.taylor_degree = degree;
        self
    }

    fn split_for(&self, var: &str) -> usize {
        self.splits.get(var).copied().unwrap_or(self.default_split)
    }
}

/// Verdict of a prover run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Proved,
    Refuted,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Proved => "proved",
            Verdict::Refuted => "refuted",
            Verdict::Unknown => "unknown",
        };
        write!(f, "{s}")
    }
}

/// Result of checking one tile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TileStatus {
    /// The check holds on the tile's enclosure.
    Pass,
    /// The enclosure satisfies the negated check, refuting the
    /// proposition on the whole tile.
    Refutes,
    /// The enclosure overlaps both outcomes.
    Indeterminate,
    /// A side condition failed somewhere; the enclosure is empty and
    /// proves nothing.
    SideCondition,
}

/// How a tile's enclosure was obtained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TileMethod {
    Direct,
    Taylor {
        degree: u32,
        center: Rational,
        coeffs: Vec<Interval>,
    },
}

/// One certificate entry: a tile box, its enclosure, and how it was
/// checked.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TileRecord {
    #[serde(rename = "box")]
    pub tile: Context,
    pub enclosure: Interval,
    pub method: TileMethod,
    pub status: TileStatus,
}

/// Verdict plus the evidence that produced it.
#[derive(Debug, Clone)]
pub struct ProofOutcome {
    pub verdict: Verdict,
    /// Union of the nonempty per-tile enclosures.
    pub enclosure: Interval,
    pub tiles: Vec<TileRecord>,
    /// Index of the first tile that blocked `Proved` (or drove `Refuted`).
    pub offending_tile: Option<usize>,
    pub config: ProverConfig,
    pub elapsed: Duration,
}

impl ProofOutcome {
    pub fn is_proved(&self) -> bool {
        self.verdict == Verdict::Proved
    }
}

/// Splits each context variable into its configured number of even tiles
/// and returns the Cartesian product of the pieces, in lexicographic
/// order of the variable names with the last variable varying fastest.
pub fn split_plan_apply(ctx: &Context, cfg: &ProverConfig) -> Vec<Context> {
    let mut plans = vec![Context::new()];
    for (name, interval) in ctx.iter() {
        let tiles = interval.split_even(cfg.split_for(name));
        let mut next = Vec::with_capacity(plans.len() * tiles.len());
        for plan in &plans {
            for tile in &tiles {
                next.push(plan.clone().with(name.clone(), tile.clone()));
            }
        }
        plans = next;
    }
    plans
}

enum Check {
    Rel(Rel),
    In(Interval),
}

impl Check {
    fn status(&self, enclosure: &Interval) -> TileStatus {
        if enclosure.is_empty() {
            return TileStatus::SideCondition;
        }
        match self {
            Check::Rel(rel) => {
                let zero = Rational::zero();
                if enclosure.rel(*rel, &zero) {
                    TileStatus::Pass
                } else if enclosure.rel(rel.negated(), &zero) {
                    TileStatus::Refutes
                } else {
                    TileStatus::Indeterminate
                }
            }
            Check::In(target) => {
                if enclosure.subset_of(target) {
                    TileStatus::Pass
                } else if !enclosure.intersects(target) {
                    TileStatus::Refutes
                } else {
                    TileStatus::Indeterminate
                }
            }
        }
    }
}

struct TaylorPlan {
    var: String,
    derivs: Vec<Expr>,
    center: Option<Rational>,
}

fn validate(p: &Proposition, ctx: &Context, cfg: &ProverConfig) -> Result<(), Error> {
    for (name, interval) in ctx.iter() {
        if interval.is_empty() {
            return Err(Error::EmptyContextInterval(name.clone()));
        }
    }
    for v in p.free_vars() {
        if ctx.get(&v).is_none() {
            return Err(Error::UnboundVariable(v));
        }
    }
    if let Proposition::Membership { target, .. } = p {
        if target.is_empty() {
            return Err(Error::Config("membership target is empty".into()));
        }
    }
    if cfg.default_split == 0 || cfg.splits.values().any(|&k| k == 0) {
        return Err(Error::Config("tile counts must be at least 1".into()));
    }
    Ok(())
}

/// Decides a proposition: rewrite, simplify, split, enclose per tile
/// (directly or via a Taylor form), aggregate. Single-shot — when the
/// enclosures are inconclusive the verdict is `Unknown`, and choosing a
/// larger `approx`, more tiles or a Taylor degree is up to the caller.
pub fn decide(p: &Proposition, ctx: &Context, cfg: &ProverConfig) -> Result<ProofOutcome, Error> {
    let started = Instant::now();
    validate(p, ctx, cfg)?;

    let (expr, check) = match p {
        Proposition::Relational { lhs, rel, rhs } => (
            Expr::Sub(Box::new(lhs.clone()), Box::new(rhs.clone())),
            Check::Rel(*rel),
        ),
        Proposition::Membership { expr, target } => (expr.clone(), Check::In(target.clone())),
    };
    let expr = if cfg.rewrite_exact_enabled {
        rewrite_exact(&expr)
    } else {
        expr
    };
    let expr = if cfg.simplify_enabled {
        simplify(&expr)
    } else {
        expr
    };

    let taylor = if cfg.taylor_degree >= 1 {
        let var = cfg
            .taylor_var
            .clone()
            .ok_or_else(|| Error::Config("taylor_degree set but taylor_var missing".into()))?;
        let fv = expr.free_vars();
        if fv.len() != 1 || !fv.contains(&var) {
            return Err(Error::Config(format!(
                "the Taylor path needs an expression univariate in `{var}`"
            )));
        }
        if cfg.taylor_center.is_some() && cfg.split_for(&var) > 1 {
            return Err(Error::Config(
                "an explicit Taylor center cannot be combined with splitting the same variable"
                    .into(),
            ));
        }
        // one symbolic expansion, reused by every tile
        let derivs = taylor::derivative_chain(&expr, &var, cfg.taylor_degree)?;
        Some(TaylorPlan {
            var,
            derivs,
            center: cfg.taylor_center.clone(),
        })
    } else {
        None
    };

    let tiles = split_plan_apply(ctx, cfg);
    let evaluate = |tile_ctx: &Context| -> Result<TileRecord, Error> {
        let (enclosure, method) = match &taylor {
            None => (
                eval_interval(&expr, tile_ctx, cfg.approx, cfg.round_bits)?,
                TileMethod::Direct,
            ),
            Some(plan) => {
                let domain = tile_ctx.get(&plan.var).expect("validated").clone();
                let form = taylor::build_with_derivatives(
                    &expr,
                    &plan.derivs,
                    &plan.var,
                    &domain,
                    cfg.approx,
                    plan.center.as_ref(),
                    cfg.round_bits,
                )?;
                let enclosure = eval_taylor_form(&form, &domain, cfg.round_bits)?;
                (
                    enclosure,
                    TileMethod::Taylor {
                        degree: form.degree(),
                        center: form.center,
                        coeffs: form.coeffs,
                    },
                )
            }
        };
        let status = check.status(&enclosure);
        Ok(TileRecord {
            tile: tile_ctx.clone(),
            enclosure,
            method,
            status,
        })
    };

    let records: Vec<TileRecord> = if cfg.parallel_tiles == 1 || tiles.len() == 1 {
        tiles
            .iter()
            .map(evaluate)
            .collect::<Result<Vec<_>, Error>>()?
    } else {
        run_parallel(&tiles, cfg.parallel_tiles, &evaluate)?
    };

    let mut enclosure = Interval::empty();
    for rec in &records {
        enclosure = enclosure.union(&rec.enclosure);
    }
    let refuting = records.iter().position(|r| r.status == TileStatus::Refutes);
    let blocking = records.iter().position(|r| r.status != TileStatus::Pass);
    let (verdict, offending_tile) = match (refuting, blocking) {
        (Some(i), _) => (Verdict::Refuted, Some(i)),
        (None, None) => (Verdict::Proved, None),
        (None, Some(i)) => (Verdict::Unknown, Some(i)),
    };

    Ok(ProofOutcome {
        verdict,
        enclosure,
        tiles: records,
        offending_tile,
        config: cfg.clone(),
        elapsed: started.elapsed(),
    })
}

fn run_parallel<F>(tiles: &[Context], width: usize, evaluate: &F) -> Result<Vec<TileRecord>, Error>
where
    F: Fn(&Context) -> Result<TileRecord, Error> + Sync,
{
    use rayon::prelude::*;
    let work = || {
        tiles
            .par_iter()
            .map(evaluate)
            .collect::<Result<Vec<_>, Error>>()
    };
    if width == 0 {
        work()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(width)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
        pool.install(work)
    }
}

/// Checks `lhs REL rhs` under the context. See [`decide`].
pub fn check_relational(
    lhs: &Expr,
    rel: Rel,
    rhs: &Expr,
    ctx: &Context,
    cfg: &ProverConfig,
) -> Result<ProofOutcome, Error> {
    decide(
        &Proposition::Relational {
            lhs: lhs.clone(),
            rel,
            rhs: rhs.clone(),
        },
        ctx,
        cfg,
    )
}

/// Checks `expr in target` under the context. See [`decide`].
pub fn check_membership(
    expr: &Expr,
    target: &Interval,
    ctx: &Context,
    cfg: &ProverConfig,
) -> Result<ProofOutcome, Error> {
    decide(
        &Proposition::Membership {
            expr: expr.clone(),
            target: target.clone(),
        },
        ctx,
        cfg,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, parse_proposition};

    fn unit_ctx() -> Context {
        Context::new().with("x", Interval::from_ints(0, 1))
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn simplification_rescues_the_doubling_example() {
        let p = parse_proposition("2*x >= x").unwrap();
        let cfg = ProverConfig::default();
        let outcome = decide(&p, &unit_ctx(), &cfg).unwrap();
        assert_eq!(outcome.verdict, Verdict::Proved);
        assert_eq!(outcome.enclosure, Interval::from_ints(0, 1));

        let naive = ProverConfig {
            simplify_enabled: false,
            ..ProverConfig::default()
        };
        let outcome = decide(&p, &unit_ctx(), &naive).unwrap();
        assert_eq!(outcome.verdict, Verdict::Unknown);
        assert_eq!(outcome.enclosure, Interval::from_ints(-1, 2));
    }

    #[test]
    fn split_plan_cartesian_product() {
        let ctx = Context::new()
            .with("x", Interval::from_ints(0, 1))
            .with("y", Interval::from_ints(0, 1));
        let cfg = ProverConfig::default()
            .with_split("x", 2)
            .with_split("y", 3);
        let plans = split_plan_apply(&ctx, &cfg);
        assert_eq!(plans.len(), 6);
        // x varies slowest, y fastest, both ascending
        assert_eq!(
            plans[0].get("x").unwrap(),
            &Interval::new(rat(0, 1), rat(1, 2))
        );
        assert_eq!(
            plans[0].get("y").unwrap(),
            &Interval::new(rat(0, 1), rat(1, 3))
        );
        assert_eq!(
            plans[1].get("y").unwrap(),
            &Interval::new(rat(1, 3), rat(2, 3))
        );
        assert_eq!(
            plans[5].get("x").unwrap(),
            &Interval::new(rat(1, 2), rat(1, 1))
        );

        let id = split_plan_apply(&ctx, &ProverConfig::default());
        assert_eq!(id.len(), 1);
        assert_eq!(&id[0], &ctx);
    }

    #[test]
    fn membership_with_splitting() {
        let p = parse_proposition("x*(1-x) in [0, 9/32]").unwrap();
        let cfg = ProverConfig::default().with_split("x", 16);
        let outcome = decide(&p, &unit_ctx(), &cfg).unwrap();
        assert_eq!(outcome.verdict, Verdict::Proved);
        assert_eq!(outcome.tiles.len(), 16);

        // without splitting the enclosure overlaps the complement
        let outcome = decide(&p, &unit_ctx(), &ProverConfig::default()).unwrap();
        assert_eq!(outcome.verdict, Verdict::Unknown);
    }

    #[test]
    fn refutation_requires_a_disjoint_tile() {
        let p = parse_proposition("x*(1-x) in [1/2, 1]").unwrap();
        // with one tile the enclosure [0,1] overlaps the target: unknown
        let outcome = decide(&p, &unit_ctx(), &ProverConfig::default()).unwrap();
        assert_eq!(outcome.verdict, Verdict::Unknown);
        // three tiles expose a disjoint one
        let cfg = ProverConfig::default().with_split("x", 3);
        let outcome = decide(&p, &unit_ctx(), &cfg).unwrap();
        assert_eq!(outcome.verdict, Verdict::Refuted);
        assert_eq!(outcome.offending_tile, Some(0));
    }

    #[test]
    fn relational_refutation() {
        let p = parse_proposition("x*(1-x) >= 1/2").unwrap();
        let cfg = ProverConfig::default().with_split("x", 3);
        let outcome = decide(&p, &unit_ctx(), &cfg).unwrap();
        assert_eq!(outcome.verdict, Verdict::Refuted);
    }

    #[test]
    fn side_condition_tiles_yield_unknown() {
        // ln over a domain reaching 0 fails its side condition
        let p = parse_proposition("ln(x) <= 0").unwrap();
        let outcome = decide(&p, &unit_ctx(), &ProverConfig::default()).unwrap();
        assert_eq!(outcome.verdict, Verdict::Unknown);
        assert_eq!(outcome.tiles[0].status, TileStatus::SideCondition);
        assert!(outcome.tiles[0].enclosure.is_empty());
    }

    #[test]
    fn taylor_proves_the_sharp_parabola_bound() {
        let p = parse_proposition("x*(1-x) in [0, 1/4]").unwrap();
        let cfg = ProverConfig::default().with_taylor("x", 2);
        let outcome = decide(&p, &unit_ctx(), &cfg).unwrap();
        assert_eq!(outcome.verdict, Verdict::Proved);
        assert_eq!(outcome.enclosure, Interval::new(rat(0, 1), rat(1, 4)));
        match &outcome.tiles[0].method {
            TileMethod::Taylor { degree, center, .. } => {
                assert_eq!(*degree, 2);
                assert_eq!(center, &rat(1, 2));
            }
            other => panic!("expected taylor method, got {other:?}"),
        }
    }

    #[test]
    fn taylor_rejects_multivariate_expressions() {
        let p = parse_proposition("x*(1-y) in [0, 1]").unwrap();
        let ctx = unit_ctx().with("y", Interval::from_ints(0, 1));
        let cfg = ProverConfig::default().with_taylor("x", 2);
        assert!(matches!(decide(&p, &ctx, &cfg), Err(Error::Config(_))));
    }

    #[test]
    fn explicit_center_conflicts_with_splitting() {
        let p = parse_proposition("x*(1-x) in [0, 1/4]").unwrap();
        let mut cfg = ProverConfig::default().with_taylor("x", 2).with_split("x", 2);
        cfg.taylor_center = Some(rat(1, 2));
        assert!(matches!(decide(&p, &unit_ctx(), &cfg), Err(Error::Config(_))));
    }

    #[test]
    fn unbound_and_empty_context_errors() {
        let p = parse_proposition("x + y >= 0").unwrap();
        assert!(matches!(
            decide(&p, &unit_ctx(), &ProverConfig::default()),
            Err(Error::UnboundVariable(_))
        ));
        let p = parse_proposition("x >= 0").unwrap();
        let ctx = Context::new().with("x", Interval::empty());
        assert!(matches!(
            decide(&p, &ctx, &ProverConfig::default()),
            Err(Error::EmptyContextInterval(_))
        ));
    }

    #[test]
    fn parallel_evaluation_is_deterministic() {
        let p = parse_proposition("x*(1-x) in [0, 9/32]").unwrap();
        let sequential = ProverConfig::default().with_split("x", 16);
        let parallel = ProverConfig {
            parallel_tiles: 4,
            ..sequential.clone()
        };
        let a = decide(&p, &unit_ctx(), &sequential).unwrap();
        let b = decide(&p, &unit_ctx(), &parallel).unwrap();
        assert_eq!(a.verdict, b.verdict);
        assert_eq!(a.enclosure, b.enclosure);
        assert_eq!(a.tiles, b.tiles);
    }

    #[test]
    fn rounding_mode_contains_exact_enclosure() {
        let p = parse_proposition("atan(x) - x*(1-x) in [-2, 2]").unwrap();
        let exact = decide(&p, &unit_ctx(), &ProverConfig::default()).unwrap();
        for bits in [8, 32, 128] {
            let cfg = ProverConfig {
                round_bits: Some(bits),
                ..ProverConfig::default()
            };
            let rounded = decide(&p, &unit_ctx(), &cfg).unwrap();
            assert!(
                exact.enclosure.subset_of(&rounded.enclosure),
                "bits={bits}"
            );
        }
    }
}
