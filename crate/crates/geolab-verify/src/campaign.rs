//! Campaign specs as read from JSON, and the runner behind `geolab verify`.

use geolab_core::qbf::{evaluate, normalize_for, random_instance, NormalizeTarget, QbfInstance};
use geolab_core::Player;
use geolab_reductions::{tqbf_to_dif, tqbf_to_dpf, tqbf_to_upf, tqbf_to_upr, ReductionArtifact, ReductionError, ReductionKind};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::fault::random_edge_campaign;
use crate::fixtures::golden_fixtures;
use crate::oracle::{verify_oracle, CorpusSpec, ORACLE_KINDS};
use crate::playout::{proof_policy, proof_strategies, scripted_playout, LAST_LINKER, PHASE_ONE_END, PHASE_THREE};
use crate::report::VerifyReport;
use crate::strategy::Strategy;
use crate::structure::verify_structure;

pub const DEFAULT_BUDGET: u64 = 100_000_000;

fn default_budget() -> u64 {
    DEFAULT_BUDGET
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CampaignSpec {
    #[serde(default)]
    pub campaigns: Vec<Campaign>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Campaign {
    /// Source oracle against the brute-force winner of each artifact.
    Oracle {
        kind: ReductionKind,
        corpus: CorpusSpec,
        #[serde(default = "default_budget")]
        budget: u64,
    },
    /// Structural checks on `count` seeded formula artifacts.
    Structure {
        kind: ReductionKind,
        count: usize,
        seed: u64,
        #[serde(default)]
        n: Option<usize>,
    },
    /// The golden fixtures.
    Fixtures,
    /// Scripted play on seeded formula artifacts: script against script with
    /// the ledger arithmetic, then the robust winner against random opponents.
    Playout {
        kind: ReductionKind,
        instances: usize,
        seed: u64,
        #[serde(default)]
        n: Option<usize>,
        #[serde(default)]
        random_games: u64,
    },
    /// Deletes one random edge per DIF artifact of the n=2, m=1 corpus. The
    /// report fails when some verdict flips, which is what a sound harness shows.
    Fault {
        seed: u64,
        #[serde(default = "default_budget")]
        budget: u64,
    },
}

impl CampaignSpec {
    /// The bundled campaign: every golden fixture and reduced-size versions of
    /// the acceptance campaigns.
    pub fn goldens() -> CampaignSpec {
        serde_json::from_str(GOLDENS).expect("bundled spec parses")
    }
}

pub const GOLDENS: &str = include_str!("../campaigns/goldens.json");

/// Builds the artifact for a formula after normalizing it for `kind`.
pub fn formula_artifact(kind: ReductionKind, q: &QbfInstance) -> Result<ReductionArtifact, ReductionError> {
    match kind {
        ReductionKind::Dif => tqbf_to_dif(&normalize_for(q, NormalizeTarget::Dif)),
        ReductionKind::Dpf => tqbf_to_dpf(&normalize_for(q, NormalizeTarget::Dpf)),
        ReductionKind::Upr => tqbf_to_upr(&normalize_for(q, NormalizeTarget::Upr)),
        ReductionKind::Upf => tqbf_to_upf(&normalize_for(q, NormalizeTarget::Upf)),
        _ => Err(ReductionError::Precondition { kind, rule: "a formula reduction".into() }),
    }
}

/// Seeded formula `i` of a campaign: n variables (even), 2 to 4 clauses.
pub fn campaign_formula(seed: u64, i: usize, n: usize) -> QbfInstance {
    let s = seed.wrapping_mul(1_000_003).wrapping_add(i as u64);
    random_instance(n, 2 + i % 3, s).expect("campaign variable counts are checked to be even")
}

fn check_n(kind: ReductionKind, n: Option<usize>) -> Result<usize, VerifyReport> {
    let n = n.unwrap_or(4);
    if n >= 2 && n % 2 == 0 && kind.from_formula() {
        return Ok(n);
    }
    let mut r = VerifyReport::new(kind.to_string());
    r.fail(format!("{kind} campaign needs a formula reduction and an even n >= 2, got n={n}"));
    Err(r)
}

pub fn run_campaign(c: &Campaign) -> VerifyReport {
    match c {
        Campaign::Oracle { kind, corpus, budget } if ORACLE_KINDS.contains(kind) => verify_oracle(*kind, *corpus, *budget),
        Campaign::Oracle { kind, .. } => {
            let mut r = VerifyReport::new(kind.to_string());
            r.fail(format!("{kind} has no oracle campaign; use structure and playout campaigns"));
            r
        }
        Campaign::Structure { kind, count, seed, n } => match check_n(*kind, *n) {
            Ok(n) => structure_campaign(*kind, *count, *seed, n),
            Err(r) => r,
        },
        Campaign::Fixtures => golden_fixtures(),
        Campaign::Playout { kind, instances, seed, n, random_games } => match check_n(*kind, *n) {
            Ok(n) => playout_campaign(*kind, *instances, *seed, n, *random_games),
            Err(r) => r,
        },
        Campaign::Fault { seed, budget } => random_edge_campaign(*seed, *budget),
    }
}

pub fn run_campaigns(spec: &CampaignSpec) -> Vec<VerifyReport> {
    spec.campaigns.iter().map(run_campaign).collect()
}

pub fn structure_campaign(kind: ReductionKind, count: usize, seed: u64, n: usize) -> VerifyReport {
    let mut total = VerifyReport::new(format!("{kind} structure"));
    let parts: Vec<VerifyReport> = (0..count)
        .into_par_iter()
        .map(|i| {
            let q = campaign_formula(seed, i, n);
            match formula_artifact(kind, &q) {
                Ok(a) => verify_structure(&a),
                Err(e) => {
                    let mut r = VerifyReport::new(kind.to_string());
                    r.instances_run = 1;
                    r.fail(format!("{q}: {e}"));
                    r
                }
            }
        })
        .collect();
    for p in parts {
        total.absorb(p);
    }
    total
}

/// Move counts the proofs fix, checked on the script-against-script ledger.
fn check_ledger(kind: ReductionKind, q: &QbfInstance, pl: &crate::Playout, r: &mut VerifyReport) {
    let (n, m) = (q.n(), q.m());
    match kind {
        ReductionKind::Upr => {
            let got = pl.ledger.moves_between(Player::Right, PHASE_ONE_END, None);
            r.check(got == Some(2 * m + 3 * n + 23), || {
                format!("{q}: Right moves after phase I {got:?}, expected {}", 2 * m + 3 * n + 23)
            });
        }
        ReductionKind::Upf => {
            let got = pl.ledger.moves_between(Player::Left, PHASE_THREE, Some(LAST_LINKER));
            r.check(got == Some(7 * m + 1), || format!("{q}: Left moves before the last linker {got:?}, expected {}", 7 * m + 1));
        }
        _ => {}
    }
}

fn playout_instance(kind: ReductionKind, q: &QbfInstance, random_games: u64) -> VerifyReport {
    let mut r = VerifyReport::new(kind.to_string());
    r.instances_run = 1;
    let a = match formula_artifact(kind, q) {
        Ok(a) => a,
        Err(e) => {
            r.fail(format!("{q}: {e}"));
            return r;
        }
    };
    let source = match &a.source {
        geolab_reductions::Source::Qbf(s) => s.clone(),
        _ => unreachable!("formula artifacts keep their formula"),
    };
    let truth = evaluate(&source).expect("campaign formulas are small");
    let want = if truth { Player::Left } else { Player::Right };
    let (mut left, mut right) = match proof_strategies(&a) {
        Ok(s) => s,
        Err(e) => {
            r.fail(format!("{q}: {e}"));
            return r;
        }
    };
    match scripted_playout(&a, &mut left, &mut right) {
        Ok(pl) => {
            if pl.winner != want {
                r.mismatch(format!("{source} scripted"), want, pl.winner);
            }
            check_ledger(kind, &source, &pl, &mut r);
        }
        Err(e) => r.fail(format!("{source} scripted: {e}")),
    }
    let (winner, policy) = proof_policy(&a).expect("formula artifact");
    for g in 0..random_games {
        let mut s = Strategy::scripted(&a, winner, Some(policy.clone())).expect("script fits its artifact").robust();
        let mut o = Strategy::uniform_random(g);
        let res = if winner == Player::Left { scripted_playout(&a, &mut s, &mut o) } else { scripted_playout(&a, &mut o, &mut s) };
        match res {
            Ok(pl) if pl.winner == winner => {}
            Ok(pl) => r.mismatch(format!("{source} against random seed {g}"), winner, pl.winner),
            Err(e) => r.fail(format!("{source} against random seed {g}: {e}")),
        }
    }
    r
}

pub fn playout_campaign(kind: ReductionKind, instances: usize, seed: u64, n: usize, random_games: u64) -> VerifyReport {
    let mut total = VerifyReport::new(format!("{kind} playouts"));
    let parts: Vec<VerifyReport> = (0..instances)
        .into_par_iter()
        .map(|i| playout_instance(kind, &campaign_formula(seed, i, n), random_games))
        .collect();
    for p in parts {
        total.absorb(p);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_spec_parses() {
        let spec = CampaignSpec::goldens();
        assert!(spec.campaigns.contains(&Campaign::Fixtures));
        let back: CampaignSpec = serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn empty_spec_runs_nothing() {
        let spec: CampaignSpec = serde_json::from_str("{}").unwrap();
        assert!(run_campaigns(&spec).is_empty());
    }
}
