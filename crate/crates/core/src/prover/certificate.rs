//! Machine-checkable certificates.
//!
//! A certificate records the proposition, the context, the full prover
//! configuration and every per-tile enclosure. Replaying one re-runs the
//! prover from those inputs and compares the recorded evidence with the
//! recomputation; in exact mode (no outward rounding) the comparison is
//! bit-for-bit.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bounds::ApproxParam;
use crate::error::Error;
use crate::expr::{parse_proposition, Context};
use crate::interval::Interval;
use crate::prover::{decide, ProofOutcome, Proposition, ProverConfig, TileRecord, Verdict};
use crate::rational::Rational;

/// Echo of the Taylor configuration used for a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaylorInfo {
    pub degree: u32,
    pub var: String,
    /// Explicit center, when one was supplied; tiles otherwise center at
    /// their own midpoint and record it in their entry.
    pub center: Option<Rational>,
}

/// A replayable record of one prover run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub proposition: String,
    pub context: Context,
    pub verdict: Verdict,
    pub enclosure: Interval,
    pub approx: ApproxParam,
    pub splits: BTreeMap<String, usize>,
    pub default_split: usize,
    pub taylor: Option<TaylorInfo>,
    pub round_bits: Option<u32>,
    pub rewrites: bool,
    pub simplify: bool,
    pub tiles: Vec<TileRecord>,
    pub timing_ms: u64,
}

impl Certificate {
    pub fn new(p: &Proposition, ctx: &Context, outcome: &ProofOutcome) -> Certificate {
        let cfg = &outcome.config;
        let taylor = if cfg.taylor_degree >= 1 {
            cfg.taylor_var.as_ref().map(|var| TaylorInfo {
                degree: cfg.taylor_degree,
                var: var.clone(),
                center: cfg.taylor_center.clone(),
            })
        } else {
            None
        };
        Certificate {
            proposition: p.to_string(),
            context: ctx.clone(),
            verdict: outcome.verdict,
            enclosure: outcome.enclosure.clone(),
            approx: cfg.approx,
            splits: cfg.splits.clone(),
            default_split: cfg.default_split,
            taylor,
            round_bits: cfg.round_bits,
            rewrites: cfg.rewrite_exact_enabled,
            simplify: cfg.simplify_enabled,
            tiles: outcome.tiles.clone(),
            timing_ms: outcome.elapsed.as_millis() as u64,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Certificate, Error> {
        serde_json::from_str(text).map_err(|e| Error::Certificate(e.to_string()))
    }

    fn config(&self) -> ProverConfig {
        ProverConfig {
            approx: self.approx,
            splits: self.splits.clone(),
            default_split: self.default_split,
            taylor_degree: self.taylor.as_ref().map_or(0, |t| t.degree),
            taylor_var: self.taylor.as_ref().map(|t| t.var.clone()),
            taylor_center: self.taylor.as_ref().and_then(|t| t.center.clone()),
            round_bits: self.round_bits,
            rewrite_exact_enabled: self.rewrites,
            simplify_enabled: self.simplify,
            parallel_tiles: 0,
        }
    }

    /// Re-runs the prover on the recorded inputs and diffs the evidence.
    pub fn replay(&self) -> Result<ReplayReport, Error> {
        let prop = parse_proposition(&self.proposition)?;
        let outcome = decide(&prop, &self.context, &self.config())?;
        let mut mismatches = Vec::new();
        if outcome.verdict != self.verdict {
            mismatches.push(format!(
                "verdict: recorded {}, replayed {}",
                self.verdict, outcome.verdict
            ));
        }
        if outcome.enclosure != self.enclosure {
            mismatches.push(format!(
                "enclosure: recorded {}, replayed {}",
                self.enclosure, outcome.enclosure
            ));
        }
        if outcome.tiles.len() != self.tiles.len() {
            mismatches.push(format!(
                "tile count: recorded {}, replayed {}",
                self.tiles.len(),
                outcome.tiles.len()
            ));
        } else {
            for (i, (rec, new)) in self.tiles.iter().zip(&outcome.tiles).enumerate() {
                if rec != new {
                    mismatches.push(format!("tile {i}: recorded {rec:?}, replayed {new:?}"));
                }
            }
        }
        Ok(ReplayReport {
            verdict: outcome.verdict,
            matches: mismatches.is_empty(),
            mismatches,
        })
    }
}

/// Outcome of replaying a certificate.
#[derive(Debug, Clone)]
pub struct ReplayReport {
    pub verdict: Verdict,
    pub matches: bool,
    pub mismatches: Vec<String>,
}
