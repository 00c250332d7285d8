//! Playouts between two strategies on a reduction artifact, with a ledger of
//! phase boundaries to compare against the proofs' move counts.

use geolab_core::qbf::{evaluate, optimal_policy, Policy, Side};
use geolab_core::{IllegalMove, Move, Player, Position, Tokens, VertexId};
use geolab_reductions::{Layout, ReductionArtifact, ReductionKind, Source};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::strategy::{Strategy, StrategyError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseMark {
    pub label: String,
    pub ply: usize,
    pub left_moves: usize,
    pub right_moves: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ledger {
    pub marks: Vec<PhaseMark>,
    pub left_moves: usize,
    pub right_moves: usize,
}

impl Ledger {
    pub fn mark(&self, label: &str) -> Option<&PhaseMark> {
        self.marks.iter().find(|m| m.label == label)
    }

    /// Moves `player` made between two marks; `to = None` means the end of the game.
    pub fn moves_between(&self, player: Player, from: &str, to: Option<&str>) -> Option<usize> {
        let count = |m: &PhaseMark| if player == Player::Left { m.left_moves } else { m.right_moves };
        let start = count(self.mark(from)?);
        let end = match to {
            Some(label) => count(self.mark(label)?),
            None if player == Player::Left => self.left_moves,
            None => self.right_moves,
        };
        Some(end - start)
    }

    fn record(&mut self, label: &str, ply: usize) {
        if self.mark(label).is_none() {
            let (left_moves, right_moves) = (self.left_moves, self.right_moves);
            self.marks.push(PhaseMark { label: label.into(), ply, left_moves, right_moves });
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Playout {
    pub winner: Player,
    pub transcript: Vec<Move>,
    pub ledger: Ledger,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PlayoutError {
    #[error("{player} strategy at ply {ply}: {source}")]
    Strategy { player: Player, ply: usize, source: StrategyError },
    #[error("{player} played {mv} at ply {ply}: {reason}")]
    Illegal { player: Player, ply: usize, mv: Move, reason: IllegalMove },
    #[error("bipartite move invariant broken at ply {ply}")]
    Invariant { ply: usize },
}

pub const PHASE_ONE_END: &str = "phase I end";
pub const PHASE_THREE: &str = "phase III start";
pub const LAST_LINKER: &str = "last linker entry";

/// Tokens placed as at a phase boundary, with Left to move.
struct Boundary {
    label: &'static str,
    left: VertexId,
    right: VertexId,
}

struct Watch {
    boundaries: Vec<Boundary>,
    /// Clause vertices and the first vertices of their linkers (UPF only).
    linker_entries: Option<(Vec<VertexId>, Vec<VertexId>)>,
}

impl Watch {
    fn of(a: &ReductionArtifact) -> Watch {
        let mut w = Watch { boundaries: Vec::new(), linker_entries: None };
        match &a.layout {
            Some(Layout::Dpf(l)) => {
                let n = l.vars.len();
                w.boundaries.push(Boundary { label: PHASE_ONE_END, left: l.vars[n - 2].bottom, right: l.vars[n - 1].bottom });
            }
            Some(Layout::Upr(l)) => {
                let n = l.vars.len();
                w.boundaries.push(Boundary { label: PHASE_ONE_END, left: l.vars[n - 2].bottom, right: l.vars[n - 1].bottom });
            }
            Some(Layout::Upf(l)) => {
                let (n, m) = (l.vars.len(), l.clauses.len());
                w.boundaries.push(Boundary { label: PHASE_ONE_END, left: l.vars[n - 1].path[3], right: l.vars[n - 1].bottom });
                w.boundaries.push(Boundary { label: PHASE_THREE, left: l.delay[m + 6], right: l.escape[2] });
                let firsts = l.linkers.iter().flatten().map(|k| k.path[0]).collect();
                w.linker_entries = Some((l.clauses.clone(), firsts));
            }
            _ => {}
        }
        w
    }

    fn observe(&self, ledger: &mut Ledger, p: &Position, ply: usize) {
        let Tokens::Pair { left, right } = p.tokens() else { return };
        if p.to_move() != Player::Left {
            return;
        }
        for b in &self.boundaries {
            if b.left == left && b.right == right {
                ledger.record(b.label, ply);
            }
        }
    }

    fn observe_move(&self, ledger: &mut Ledger, p: &Position, mv: Move, ply: usize) {
        if let Some((clauses, firsts)) = &self.linker_entries {
            if p.to_move() == Player::Left && mv.is_regular() && clauses.contains(&mv.from) && firsts.contains(&mv.to) {
                ledger.record(LAST_LINKER, ply);
            }
        }
    }
}

/// Plays `left` against `right` from the artifact's start to the end of the game.
/// Every move is checked for legality, and UPR games for the bipartite move invariant.
pub fn scripted_playout(a: &ReductionArtifact, left: &mut Strategy, right: &mut Strategy) -> Result<Playout, PlayoutError> {
    let rebuilt;
    let a = if a.layout.is_some() || !a.kind.from_formula() {
        a
    } else {
        rebuilt = a.rebuild().ok();
        rebuilt.as_ref().unwrap_or(a)
    };
    let watch = Watch::of(a);
    let parts = if a.kind == ReductionKind::Upr { a.claimed_bipartition.as_ref() } else { None };
    let mut p = a.position.clone();
    let mut ledger = Ledger::default();
    let mut transcript = Vec::new();
    loop {
        let ply = transcript.len();
        if let (Some(parts), Tokens::Pair { left, right }) = (parts, p.tokens()) {
            let opposite = parts.part_of(left) != parts.part_of(right);
            if opposite != (p.to_move() == Player::Left) {
                return Err(PlayoutError::Invariant { ply });
            }
        }
        watch.observe(&mut ledger, &p, ply);
        if !p.has_move() {
            return Ok(Playout { winner: p.to_move().opponent(), transcript, ledger });
        }
        let player = p.to_move();
        let strategy = if player == Player::Left { &mut *left } else { &mut *right };
        let mv = strategy.next_move(&p).map_err(|source| PlayoutError::Strategy { player, ply, source })?;
        p.check_move(mv).map_err(|reason| PlayoutError::Illegal { player, ply, mv, reason })?;
        watch.observe_move(&mut ledger, &p, mv, ply);
        p.play(mv);
        transcript.push(mv);
        if player == Player::Left {
            ledger.left_moves += 1;
        } else {
            ledger.right_moves += 1;
        }
    }
}

/// The player the formula favours and a winning policy for them.
pub fn proof_policy(a: &ReductionArtifact) -> Option<(Player, Policy)> {
    let Source::Qbf(q) = &a.source else { return None };
    let (player, side) = if evaluate(q).ok()? { (Player::Left, Side::Existential) } else { (Player::Right, Side::Universal) };
    Some((player, optimal_policy(q, side).ok()?))
}

/// Proof strategies for both players: the favoured one with its winning
/// policy, the other one scripted without a policy.
pub fn proof_strategies(a: &ReductionArtifact) -> Result<(Strategy, Strategy), StrategyError> {
    let (winner, policy) =
        proof_policy(a).ok_or_else(|| StrategyError::Incompatible(format!("{} artifact without a formula source", a.kind)))?;
    let w = Strategy::scripted(a, winner, Some(policy))?;
    let l = Strategy::scripted(a, winner.opponent(), None)?;
    Ok(if winner == Player::Left { (w, l) } else { (l, w) })
}
