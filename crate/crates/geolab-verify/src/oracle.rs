//! Oracle-equivalence campaigns: source winner (or formula truth) against the
//! brute-force winner of the built artifact.

use geolab_core::qbf::{evaluate, normalize_for, random_instance, NormalizeTarget, QbfInstance};
use geolab_core::{solve_brute, GameResult, Orientation, Partisanship, Position, SearchMode, SolveError, Variant};
use geolab_reductions::{
    geography_to_uir4, stack2_to_stack1, tqbf_to_dif, tqbf_to_dpf, undirect_to_direct, ReductionArtifact, ReductionError,
    ReductionKind,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus;
use crate::report::VerifyReport;
use crate::structure::verify_structure;

/// Which inputs a campaign runs on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum CorpusSpec {
    /// Every input up to `max_size` vertices (graph kinds) or the n=2, m=1
    /// formulas (formula kinds, `max_size` ignored).
    Exhaustive { max_size: usize },
    /// `count` seeded inputs (per variant for U2D and S2TO1). `max_size` caps
    /// graph sizes, or sets n for formula kinds.
    Seeded { count: usize, seed: u64, max_size: Option<usize> },
}

pub const ORACLE_KINDS: [ReductionKind; 5] =
    [ReductionKind::U2d, ReductionKind::S2to1, ReductionKind::Uir4, ReductionKind::Dif, ReductionKind::Dpf];

/// One corpus input with its oracle answer source.
#[derive(Clone, Debug)]
pub enum Input {
    Formula(QbfInstance),
    Game(Position),
}

impl Input {
    pub fn describe(&self) -> String {
        match self {
            Input::Formula(q) => q.to_string(),
            Input::Game(p) => serde_json::to_string(p).expect("positions serialize"),
        }
    }
}

/// Inputs for `kind` under `spec`.
pub fn corpus_for(kind: ReductionKind, spec: CorpusSpec) -> Vec<Input> {
    match (kind, spec) {
        (ReductionKind::Dif | ReductionKind::Dpf, CorpusSpec::Exhaustive { .. }) => {
            corpus::qbf_n2_m1().into_iter().map(Input::Formula).collect()
        }
        (ReductionKind::Dif | ReductionKind::Dpf, CorpusSpec::Seeded { count, seed, max_size }) => {
            let n = max_size.unwrap_or(if kind == ReductionKind::Dif { 4 } else { 2 });
            let max_m = if kind == ReductionKind::Dif { 3 } else { 4 };
            (0..count as u64)
                .map(|s| {
                    let m = 1 + (s as usize % max_m);
                    Input::Formula(random_instance(n, m, seed.wrapping_add(s)).expect("even n at least 2"))
                })
                .collect()
        }
        (ReductionKind::Uir4, CorpusSpec::Exhaustive { max_size }) => (1..=max_size)
            .flat_map(corpus::all_digraphs)
            .flat_map(|g| corpus::placements(&g, "DIR".parse().unwrap()))
            .map(Input::Game)
            .collect(),
        (ReductionKind::Uir4, CorpusSpec::Seeded { count, seed, max_size }) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let dir: Variant = "DIR".parse().unwrap();
            (0..count).map(|_| Input::Game(corpus::random_position(&mut rng, max_size.unwrap_or(4), dir))).collect()
        }
        (ReductionKind::U2d | ReductionKind::S2to1, _) => position_corpus(kind, spec),
        (kind, _) => panic!("{kind} has no oracle campaign; use verify_structure and scripted playouts"),
    }
}

fn source_variants(kind: ReductionKind, k: u8) -> Vec<Variant> {
    Variant::all(k)
        .into_iter()
        .filter(|v| kind != ReductionKind::U2d || v.orientation == Orientation::Undirected)
        .collect()
}

fn position_corpus(kind: ReductionKind, spec: CorpusSpec) -> Vec<Input> {
    match spec {
        CorpusSpec::Exhaustive { max_size } => {
            let mut out = Vec::new();
            for v in source_variants(kind, 2) {
                for n in 1..=max_size {
                    let graphs = match v.orientation {
                        Orientation::Directed => corpus::all_digraphs(n),
                        Orientation::Undirected => corpus::connected_graphs(n),
                    };
                    for g in graphs {
                        for hs in 0..1u32 << n {
                            let heights = (0..n).map(|i| 1 + (hs >> i & 1) as u8).collect();
                            out.extend(corpus::placements(&g.with_heights(heights), v).into_iter().map(Input::Game));
                        }
                    }
                }
            }
            out
        }
        CorpusSpec::Seeded { count, seed, max_size } => {
            let mut out = Vec::new();
            for (vi, v) in source_variants(kind, 2).into_iter().enumerate() {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (vi as u64) << 32);
                for _ in 0..count {
                    let mut p = corpus::random_position(&mut rng, max_size.unwrap_or(6), v);
                    if v.partisanship == Partisanship::Impartial && rng.gen_bool(0.5) {
                        p = p.with_to_move(p.to_move().opponent());
                    }
                    out.push(Input::Game(p));
                }
            }
            out
        }
    }
}

fn build(kind: ReductionKind, input: &Input) -> Result<ReductionArtifact, ReductionError> {
    match (kind, input) {
        (ReductionKind::Dif, Input::Formula(q)) => tqbf_to_dif(q),
        (ReductionKind::Dpf, Input::Formula(q)) => tqbf_to_dpf(&normalize_for(q, NormalizeTarget::Dpf)),
        (ReductionKind::Uir4, Input::Game(p)) => geography_to_uir4(p),
        (ReductionKind::U2d, Input::Game(p)) => undirect_to_direct(p),
        (ReductionKind::S2to1, Input::Game(p)) => stack2_to_stack1(p),
        (kind, _) => Err(ReductionError::Precondition { kind, rule: "an input of the matching type".into() }),
    }
}

fn winner(p: &Position, budget: u64) -> Result<GameResult, SolveError> {
    solve_brute(p, SearchMode::Normal, budget).map(|r| r.result())
}

/// Result of the source-side oracle for one input.
fn expected(input: &Input, budget: u64) -> Result<GameResult, SolveError> {
    match input {
        Input::Formula(q) => {
            Ok(if evaluate(q).expect("corpus formulas are small") { GameResult::LeftWins } else { GameResult::RightWins })
        }
        Input::Game(p) => winner(p, budget),
    }
}

/// Runs one input through the build and both oracles.
pub fn check_input(kind: ReductionKind, input: &Input, budget: u64) -> VerifyReport {
    let mut r = VerifyReport::new(kind.to_string());
    r.instances_run = 1;
    let a = match build(kind, input) {
        Ok(a) => a,
        Err(e) => {
            r.fail(format!("{}: {e}", input.describe()));
            return r;
        }
    };
    let s = verify_structure(&a);
    r.structural_failures.extend(s.structural_failures.into_iter().map(|f| format!("{}: {f}", input.describe())));
    compare(&mut r, input, expected(input, budget), winner(&a.position, budget));
    r
}

fn compare(r: &mut VerifyReport, input: &Input, want: Result<GameResult, SolveError>, got: Result<GameResult, SolveError>) {
    match (want, got) {
        (Ok(w), Ok(g)) if w != g => r.mismatch(input.describe(), w, g),
        (Ok(_), Ok(_)) => {}
        (Err(e), _) | (_, Err(e)) => r.budget_exhaustions.push(format!("{}: {e}", input.describe())),
    }
}

/// Oracle campaign for one reduction kind; inputs run in parallel.
pub fn verify_oracle(kind: ReductionKind, spec: CorpusSpec, budget: u64) -> VerifyReport {
    let inputs = corpus_for(kind, spec);
    verify_inputs(kind, &inputs, budget)
}

pub fn verify_inputs(kind: ReductionKind, inputs: &[Input], budget: u64) -> VerifyReport {
    let mut total = VerifyReport::new(kind.to_string());
    let parts: Vec<VerifyReport> = inputs.par_iter().map(|i| check_input(kind, i, budget)).collect();
    for p in parts {
        total.absorb(p);
    }
    total
}

/// Replays a formula campaign against artifacts altered by `alter`, with the
/// formula truth as reference. Used for fault injection.
pub fn verify_altered(
    kind: ReductionKind,
    inputs: &[Input],
    budget: u64,
    alter: &(dyn Fn(&ReductionArtifact) -> Option<Position> + Sync),
) -> VerifyReport {
    let mut total = VerifyReport::new(format!("{kind} altered"));
    let parts: Vec<VerifyReport> = inputs
        .par_iter()
        .map(|input| {
            let mut r = VerifyReport::new(kind.to_string());
            r.instances_run = 1;
            match build(kind, input).ok().and_then(|a| alter(&a)) {
                Some(p) => compare(&mut r, input, expected(input, budget), winner(&p, budget)),
                None => r.fail(format!("{}: could not alter the artifact", input.describe())),
            }
            r
        })
        .collect();
    for p in parts {
        total.absorb(p);
    }
    total
}
