//! Proper play on the directed impartial construction.

use geolab_core::qbf::Policy;
use geolab_core::{Move, Position, VertexId};
use geolab_reductions::layout::{DifLayout, DifOccurrence, DifVariable};

use super::{assignment, live, value_for, Script};

pub(super) struct DifScript {
    l: DifLayout,
}

impl DifScript {
    pub(super) fn new(l: DifLayout) -> Self {
        DifScript { l }
    }

    /// An occurrence wins for the player who steps off the clause into it:
    /// odd literals when the opponent's target is gone, even literals when
    /// the mover's own target is still there.
    fn good(&self, p: &Position, o: &DifOccurrence) -> bool {
        match o.extra {
            None => !live(p, o.target),
            Some(_) => live(p, o.target),
        }
    }

    fn entry(o: &DifOccurrence) -> VertexId {
        o.extra.unwrap_or(o.pair[0])
    }
}

impl Script for DifScript {
    fn proper(&self, p: &Position) -> Vec<Move> {
        let joins: Vec<VertexId> = self.l.vars.iter().map(DifVariable::join).collect();
        p.legal_moves().into_iter().filter(|m| m.is_regular() || joins.contains(&m.to)).collect()
    }

    fn choose(&self, p: &Position, policy: Option<&Policy>) -> Option<Move> {
        let v = p.active_token();
        let a = assignment(p, self.l.vars.iter().map(DifVariable::true_mark));
        let n = self.l.vars.len();
        for (k, var) in self.l.vars.iter().enumerate() {
            let t = value_for(policy, k + 1, a);
            match *var {
                DifVariable::Odd { top, l1, l2, r1, r2, bottom } => {
                    if v == top {
                        return Some(Move::regular(top, l1));
                    }
                    if v == l1 {
                        return Some(Move::regular(l1, l2));
                    }
                    if v == r1 {
                        return Some(Move::regular(r1, r2));
                    }
                    if v == l2 || v == r2 {
                        return Some(Move::new(v, bottom, if t { l2 } else { r2 }));
                    }
                }
                DifVariable::Even { top, left, right, join, bottom } => {
                    if v == top {
                        return Some(Move::regular(top, left));
                    }
                    if v == left || v == right {
                        return Some(Move::new(v, join, if t { left } else { right }));
                    }
                    if v == join {
                        return Some(Move::regular(join, bottom));
                    }
                }
            }
            if v == var.bottom() {
                if k + 1 < n {
                    return Some(Move::regular(v, self.l.vars[k + 1].top()));
                }
                // Send the opponent to a clause with no good occurrence.
                let alive = |j: &usize| live(p, self.l.clauses[*j]);
                let j = (0..self.l.clauses.len())
                    .filter(alive)
                    .find(|&j| !self.l.occurrences[j].iter().any(|o| self.good(p, o)))
                    .or_else(|| (0..self.l.clauses.len()).find(alive))?;
                return Some(Move::regular(v, self.l.clauses[j]));
            }
        }
        if let Some(j) = self.l.clauses.iter().position(|&c| c == v) {
            let occ = &self.l.occurrences[j];
            let o = occ.iter().find(|o| self.good(p, o)).unwrap_or(&occ[0]);
            return Some(Move::regular(v, Self::entry(o)));
        }
        for o in self.l.occurrences.iter().flatten() {
            if o.extra == Some(v) {
                let next = if live(p, o.pair[0]) { o.pair[0] } else { o.pair[1] };
                return Some(Move::regular(v, next));
            }
            if o.pair.contains(&v) {
                return Some(Move::regular(v, o.target));
            }
        }
        None
    }
}
