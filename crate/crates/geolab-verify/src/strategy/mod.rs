//! Strategies for playouts: proper play scripted from the reduction proofs,
//! exhaustive search, and uniform random play.
//!
//! A scripted strategy follows the proof's proper-play lines. When the
//! opponent leaves them it raises [`StrategyError::ScriptDiverged`], unless it
//! was made [`Strategy::robust`]: then it keeps playing, taking the script's
//! move unless a bounded search proves another move wins or the script's move
//! loses (exact search on the small DIF/DPF boards).

mod dif;
mod dpf;
pub mod tactics;
mod upf;
mod upr;

use geolab_core::qbf::{Literal, Policy, QbfInstance, Side};
use geolab_core::{best_move, Move, Player, Position, VertexId};
use geolab_reductions::{Layout, ReductionArtifact, ReductionKind, Source};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use tactics::Engine;

/// Node budget of the exact search used after a DIF/DPF deviation.
pub const EXACT_BUDGET: u64 = 20_000_000;

#[derive(Clone, Debug)]
pub enum StrategyKind {
    ScriptedProperPlay { kind: ReductionKind, role: Player, policy: Option<Policy> },
    SearchBased { budget: u64 },
    UniformRandom { seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("opponent left the scripted line at ply {ply} with move {mv}")]
    ScriptDiverged { ply: usize, mv: Move },
    #[error("strategy does not fit: {0}")]
    Incompatible(String),
    #[error("no legal move")]
    NoMove,
}

/// Proper play for one construction, for whichever player is to move.
pub(crate) trait Script: Send {
    /// Moves of the player to move that stay on the proper-play lines.
    fn proper(&self, p: &Position) -> Vec<Move>;
    /// The line this script takes; `policy` decides the mover's own variables.
    fn choose(&self, p: &Position, policy: Option<&Policy>) -> Option<Move>;
}

struct Scripted {
    script: Box<dyn Script>,
    role: Player,
    policy: Option<Policy>,
    exact: bool,
    start_height: u64,
    after: Option<Position>,
    diverged: bool,
    engine: Engine,
}

enum State {
    Scripted(Box<Scripted>),
    Search { budget: u64, engine: Engine },
    Random(ChaCha8Rng),
}

pub struct Strategy {
    kind: StrategyKind,
    robust: bool,
    state: State,
}

impl Strategy {
    /// Proper play for `role` on `artifact`. `policy` fixes the role's own
    /// variables; without one every own variable is set true.
    pub fn scripted(artifact: &ReductionArtifact, role: Player, policy: Option<Policy>) -> Result<Strategy, StrategyError> {
        let rebuilt;
        let a = if artifact.layout.is_some() {
            artifact
        } else {
            rebuilt = artifact.rebuild().map_err(|e| StrategyError::Incompatible(e.to_string()))?;
            &rebuilt
        };
        let q = match &a.source {
            Source::Qbf(q) => q.clone(),
            Source::Position(_) => {
                return Err(StrategyError::Incompatible(format!("{} has no proper-play script", a.kind)));
            }
        };
        if let Some(pl) = &policy {
            let own = if role == Player::Left { Side::Existential } else { Side::Universal };
            if pl.side != own {
                return Err(StrategyError::Incompatible(format!("{role} cannot follow a {:?} policy", pl.side)));
            }
        }
        let script: Box<dyn Script> = match a.layout.clone() {
            Some(Layout::Dif(l)) => Box::new(dif::DifScript::new(l)),
            Some(Layout::Dpf(l)) => Box::new(dpf::DpfScript::new(l)),
            Some(Layout::Upr(l)) => Box::new(upr::UprScript::new(l, q)),
            Some(Layout::Upf(l)) => Box::new(upf::UpfScript::new(l)),
            _ => return Err(StrategyError::Incompatible(format!("{} has no proper-play script", a.kind))),
        };
        let exact = matches!(a.kind, ReductionKind::Dif | ReductionKind::Dpf);
        Ok(Strategy {
            kind: StrategyKind::ScriptedProperPlay { kind: a.kind, role, policy: policy.clone() },
            robust: false,
            state: State::Scripted(Box::new(Scripted {
                script,
                role,
                policy,
                exact,
                start_height: a.position.graph().total_height(),
                after: None,
                diverged: false,
                engine: Engine::default(),
            })),
        })
    }

    pub fn search_based(budget: u64) -> Strategy {
        Strategy { kind: StrategyKind::SearchBased { budget }, robust: false, state: State::Search { budget, engine: Engine::default() } }
    }

    pub fn uniform_random(seed: u64) -> Strategy {
        Strategy {
            kind: StrategyKind::UniformRandom { seed },
            robust: false,
            state: State::Random(ChaCha8Rng::seed_from_u64(seed)),
        }
    }

    /// Keep playing after the opponent leaves the script instead of failing.
    pub fn robust(mut self) -> Strategy {
        self.robust = true;
        self
    }

    pub fn kind(&self) -> &StrategyKind {
        &self.kind
    }

    /// Whether the opponent has left the scripted lines (robust mode only).
    pub fn diverged(&self) -> bool {
        matches!(&self.state, State::Scripted(s) if s.diverged)
    }

    pub fn next_move(&mut self, p: &Position) -> Result<Move, StrategyError> {
        let legal = p.legal_moves();
        if legal.is_empty() {
            return Err(StrategyError::NoMove);
        }
        match &mut self.state {
            State::Random(rng) => Ok(*legal.choose(rng).expect("nonempty")),
            State::Search { budget, engine } => match best_move(p, *budget) {
                Ok(Some(m)) => Ok(m),
                _ => Ok(engine.guarded(p, None)),
            },
            State::Scripted(s) => s.next_move(p, &legal, self.robust),
        }
    }
}

impl Scripted {
    fn next_move(&mut self, p: &Position, legal: &[Move], robust: bool) -> Result<Move, StrategyError> {
        if p.to_move() != self.role && p.variant().is_partizan() {
            return Err(StrategyError::Incompatible(format!("script plays {} but {} is to move", self.role, p.to_move())));
        }
        if let Some(prev) = self.after.take() {
            if let Some(mv) = inferred_move(&prev, p) {
                if !self.diverged && !self.script.proper(&prev).contains(&mv) {
                    if !robust {
                        let ply = (self.start_height - prev.graph().total_height()) as usize;
                        return Err(StrategyError::ScriptDiverged { ply, mv });
                    }
                    self.diverged = true;
                }
            }
        }
        let pref = self.script.choose(p, self.policy.as_ref()).filter(|m| legal.contains(m));
        let trapped = if self.diverged && !self.exact { tactics::trap(p, self.engine.path_budget) } else { None };
        let mv = match pref {
            _ if trapped.is_some() => trapped.unwrap(),
            Some(m) if !self.diverged => m,
            _ if self.exact => match best_move(p, EXACT_BUDGET) {
                Ok(Some(m)) => m,
                _ => self.engine.guarded(p, pref),
            },
            _ => self.engine.guarded(p, pref),
        };
        let mut next = p.clone();
        next.play(mv);
        self.after = Some(next);
        Ok(mv)
    }
}

/// The single move leading from `before` to `after`, read off the board.
fn inferred_move(before: &Position, after: &Position) -> Option<Move> {
    let mover = before.to_move();
    let from = before.active_token();
    let to = after.tokens().of(mover);
    let (hb, ha) = (before.heights(), after.heights());
    let delete = (0..hb.len()).find(|&i| hb[i] != ha[i]).map(VertexId::from)?;
    Some(Move { from, to, delete })
}

pub(crate) fn live(p: &Position, v: VertexId) -> bool {
    p.height(v) > 0
}

/// The mover's value for variable `i` under `policy`, true when unspecified.
pub(crate) fn value_for(policy: Option<&Policy>, i: usize, assignment: u64) -> bool {
    policy.filter(|pl| Side::of_var(i) == pl.side).and_then(|pl| pl.choose(i, assignment)).unwrap_or(true)
}

/// Assignment read from the board: variable k+1 is true when `marks[k]` is deleted.
pub(crate) fn assignment(p: &Position, marks: impl Iterator<Item = VertexId>) -> u64 {
    marks.enumerate().filter(|&(_, v)| !live(p, v)).fold(0, |a, (k, _)| a | 1 << k)
}

pub(crate) fn clause_holds(q: &QbfInstance, j: usize, assignment: u64) -> bool {
    q.clauses()[j].literals().iter().any(|l: &Literal| l.holds(assignment))
}
