//! Proper play on the directed partizan construction.

use geolab_core::qbf::Policy;
use geolab_core::{Move, Position, VertexId};
use geolab_reductions::layout::{DpfLayout, DpfLinker};

use super::{assignment, live, value_for, Script};

pub(super) struct DpfScript {
    l: DpfLayout,
}

impl DpfScript {
    pub(super) fn new(l: DpfLayout) -> Self {
        DpfScript { l }
    }

    /// A linker Left can still run to a live variable vertex.
    fn open(&self, p: &Position, k: &DpfLinker) -> bool {
        live(p, k.path[0]) && live(p, k.target)
    }

    fn satisfiable(&self, p: &Position, j: usize) -> bool {
        self.l.linkers[j].iter().any(|k| self.open(p, k))
    }

    /// The clause Right leaves standing: the first live one Left cannot use.
    fn keep(&self, p: &Position) -> Option<usize> {
        let alive: Vec<usize> = (0..self.l.clauses.len()).filter(|&j| live(p, self.l.clauses[j])).collect();
        alive.iter().copied().find(|&j| !self.satisfiable(p, j)).or_else(|| alive.first().copied())
    }

    fn is_setting(&self, m: &Move) -> bool {
        self.l.vars.iter().any(|d| m.to == d.bottom && (m.from == d.left || m.from == d.right))
    }
}

impl Script for DpfScript {
    fn proper(&self, p: &Position) -> Vec<Move> {
        p.legal_moves()
            .into_iter()
            .filter(|m| {
                m.is_regular() || self.is_setting(m) || (self.l.deletion.contains(&m.to) && self.l.clauses.contains(&m.delete))
            })
            .collect()
    }

    fn choose(&self, p: &Position, policy: Option<&Policy>) -> Option<Move> {
        let v = p.active_token();
        let l = &self.l;
        let n = l.vars.len();
        let a = assignment(p, l.vars.iter().map(|d| d.left));
        if v == l.vars[n - 2].bottom {
            return Some(Move::regular(v, l.delay[0]));
        }
        if let Some(d) = l.vars.iter().find(|d| d.top == v) {
            return Some(Move::regular(v, d.left));
        }
        if let Some((k, d)) = l.vars.iter().enumerate().find(|(_, d)| d.left == v || d.right == v) {
            // A linker arrival walks on into the bottom; a gadget pass sets the variable.
            let t = value_for(policy, k + 1, a);
            return Some(Move::new(v, d.bottom, if live(p, d.left) && live(p, d.right) { if t { d.left } else { d.right } } else { v }));
        }
        let deletion_step = |to: VertexId, idx: usize| {
            let keep = self.keep(p);
            let victim = (idx % 2 == 0)
                .then(|| (0..l.clauses.len()).find(|&j| Some(j) != keep && live(p, l.clauses[j])))
                .flatten();
            Move::new(v, to, victim.map_or(v, |j| l.clauses[j]))
        };
        if v == l.vars[n - 1].bottom {
            return Some(deletion_step(l.deletion[0], 0));
        }
        if let Some(t) = l.delay.iter().position(|&x| x == v) {
            if t + 1 < l.delay.len() {
                return Some(Move::regular(v, l.delay[t + 1]));
            }
            let alive: Vec<usize> = (0..l.clauses.len()).filter(|&j| live(p, l.clauses[j])).collect();
            let j = alive.iter().copied().find(|&j| self.satisfiable(p, j)).or_else(|| alive.first().copied())?;
            return Some(Move::regular(v, l.clauses[j]));
        }
        if let Some(t) = l.deletion.iter().position(|&x| x == v) {
            if t + 1 < l.deletion.len() {
                return Some(deletion_step(l.deletion[t + 1], t + 1));
            }
            return Some(Move::regular(v, l.escape[0]));
        }
        if let Some(t) = l.escape.iter().position(|&x| x == v) {
            return l.escape.get(t + 1).map(|&w| Move::regular(v, w));
        }
        if let Some(j) = l.clauses.iter().position(|&c| c == v) {
            let ks = &l.linkers[j];
            let k = ks.iter().find(|k| self.open(p, k)).or_else(|| ks.iter().find(|k| live(p, k.path[0])))?;
            return Some(Move::regular(v, k.path[0]));
        }
        for k in l.linkers.iter().flatten() {
            if let Some(t) = k.path.iter().position(|&x| x == v) {
                let next = match k.path.get(t + 1) {
                    Some(&w) => w,
                    None if live(p, k.ends[0]) => k.ends[0],
                    None => k.ends[1],
                };
                return Some(Move::regular(v, next));
            }
            if k.ends.contains(&v) {
                return Some(Move::regular(v, k.target));
            }
        }
        None
    }
}
