//! Proper play on the undirected partizan construction with free deletion,
//! in the three phases of the proof: variable rounds, the race through the
//! delay and clause deletion paths, and Left's stalling stages.

use geolab_core::qbf::Policy;
use geolab_core::{Move, Player, Position, VertexId};
use geolab_reductions::layout::{PathLinker, UpfLayout};

use super::{assignment, live, value_for, Script};

pub(super) struct UpfScript {
    l: UpfLayout,
}

impl UpfScript {
    pub(super) fn new(l: UpfLayout) -> Self {
        UpfScript { l }
    }

    fn open(&self, p: &Position, k: &PathLinker) -> bool {
        k.path.iter().all(|&x| live(p, x)) && live(p, k.target)
    }

    /// The clause Right leaves standing: the first live one with no open linker.
    fn keep(&self, p: &Position) -> Option<usize> {
        let alive: Vec<usize> = (0..self.l.clauses.len()).filter(|&j| live(p, self.l.clauses[j])).collect();
        alive
            .iter()
            .copied()
            .find(|&j| !self.l.linkers[j].iter().any(|k| self.open(p, k)))
            .or_else(|| alive.first().copied())
    }

    /// Proper moves for the player to move, with their deletions spelled out.
    /// `None` means any legal move counts as proper here.
    fn lines(&self, p: &Position) -> Option<Vec<Move>> {
        let l = &self.l;
        let v = p.active_token();
        let mv = |to: VertexId, del: VertexId| Move::new(v, to, del);
        let reg = |to: VertexId| Move::regular(v, to);
        for (k, d) in l.vars.iter().enumerate() {
            if v == d.top {
                return Some(vec![mv(d.top_left, v), mv(d.top_right, v)]);
            }
            for (corner, side) in [(d.top_left, d.left), (d.top_right, d.right)] {
                if v == corner {
                    let mut out = vec![reg(side)];
                    out.extend(l.linkers.iter().flatten().filter(|x| x.target == side).map(|x| mv(side, *x.path.last().unwrap())));
                    return Some(out);
                }
            }
            if v == d.left || v == d.right {
                return None;
            }
            if v == d.bottom_left || v == d.bottom_right {
                let p5 = d.path[4];
                return Some(if live(p, p5) {
                    vec![mv(d.bottom, p5)]
                } else {
                    vec![mv(d.bottom, d.bottom_left), mv(d.bottom, d.bottom_right)]
                });
            }
            if v == d.bottom {
                return Some(match l.vars.get(k + 1) {
                    Some(next) => vec![reg(next.path[0])],
                    None => l.deletion_paths.iter().map(|path| reg(path[0])).collect(),
                });
            }
            if let Some(t) = d.path.iter().position(|&x| x == v) {
                return Some(match t {
                    0 | 1 => vec![reg(d.path[t + 1])],
                    2 => vec![reg(d.path[3]), mv(d.path[3], d.path[4])],
                    3 => vec![reg(l.vars.get(k + 1).map_or(l.delay[0], |next| next.top))],
                    _ => Vec::new(),
                });
            }
        }
        for (k, path) in l.deletion_paths.iter().enumerate() {
            let Some(t) = path.iter().position(|&x| x == v) else { continue };
            let slot_clause = |idx: usize| l.slots[k].iter().find(|&&(s, _)| s == idx).map(|&(_, c)| l.clauses[c]);
            if p.to_move() == Player::Right {
                return Some(match path.get(t + 1) {
                    Some(&next) => match slot_clause(t + 1).filter(|&c| live(p, c)) {
                        Some(c) => vec![mv(next, c)],
                        None => vec![reg(next)],
                    },
                    None => return Some(p.legal_moves().into_iter().filter(|m| m.to == l.selection_bottom).collect()),
                });
            }
            // Left stalling inside a deletion path next to her clause.
            if let Some(c) = slot_clause(t).filter(|&c| live(p, c)) {
                if live(p, path[t - 1]) && !path.get(t + 1).is_some_and(|&x| live(p, x)) {
                    return Some(p.legal_moves().into_iter().filter(|m| m.to == path[t - 1] && m.delete != v).collect());
                }
                if !live(p, path[t - 1]) {
                    return Some(vec![reg(c)]);
                }
            }
            if let Some(&next) = path.get(t + 1) {
                if slot_clause(t + 1).is_some() && live(p, next) {
                    return Some(vec![reg(next)]);
                }
            }
            return Some(Vec::new());
        }
        if v == l.selection_bottom {
            return Some(vec![reg(l.escape[0])]);
        }
        if let Some(t) = l.escape.iter().position(|&x| x == v) {
            return Some(match l.escape.get(t + 1) {
                Some(&next) if t == 1 && live(p, l.prize) => vec![mv(next, l.prize)],
                Some(&next) => vec![reg(next)],
                None => Vec::new(),
            });
        }
        if let Some(t) = l.delay.iter().position(|&x| x == v) {
            if let Some(&next) = l.delay.get(t + 1) {
                return Some(vec![reg(next)]);
            }
            let stalls: Vec<Move> = (0..l.clauses.len())
                .filter(|&j| !live(p, l.clauses[j]))
                .map(|j| &l.connectors[j])
                .filter(|c| live(p, c[0]) && live(p, c[1]))
                .map(|c| mv(c[0], c[1]))
                .collect();
            if !stalls.is_empty() {
                return Some(stalls);
            }
            return Some(
                (0..l.clauses.len()).filter(|&j| live(p, l.clauses[j])).map(|j| reg(l.connectors[j][0])).collect(),
            );
        }
        for (j, c) in l.connectors.iter().enumerate() {
            if let Some(t) = c.iter().position(|&x| x == v) {
                if t == 0 && !live(p, c[1]) {
                    return Some(vec![reg(*l.delay.last().unwrap())]);
                }
                return Some(vec![reg(c.get(t + 1).copied().unwrap_or(l.clauses[j]))]);
            }
        }
        if let Some(j) = l.clauses.iter().position(|&c| c == v) {
            if p.to_move() == Player::Right {
                return Some(Vec::new());
            }
            let mut stalls = Vec::new();
            for (k, path) in l.deletion_paths.iter().enumerate() {
                for &(s, c) in &l.slots[k] {
                    if c == j && live(p, path[s]) && live(p, path[s + 1]) && live(p, path[s - 1]) {
                        stalls.push(mv(path[s], path[s + 1]));
                    }
                }
            }
            if !stalls.is_empty() {
                return Some(stalls);
            }
            let unstalled: Vec<&PathLinker> = l.linkers[j].iter().filter(|k| live(p, k.path[0]) && live(p, k.path[1])).collect();
            return Some(match unstalled.len() {
                0 => Vec::new(),
                1 => vec![reg(unstalled[0].path[0])],
                _ => unstalled.iter().map(|k| mv(k.path[0], k.path[1])).collect(),
            });
        }
        for (j, ks) in l.linkers.iter().enumerate() {
            for k in ks {
                if let Some(t) = k.path.iter().position(|&x| x == v) {
                    if t == 0 && !live(p, k.path[1]) {
                        return Some(vec![reg(l.clauses[j])]);
                    }
                    return Some(vec![reg(k.path.get(t + 1).copied().unwrap_or(k.target))]);
                }
            }
        }
        None
    }
}

impl Script for UpfScript {
    fn proper(&self, p: &Position) -> Vec<Move> {
        let legal = p.legal_moves();
        match self.lines(p) {
            Some(lines) => legal.into_iter().filter(|m| lines.contains(m)).collect(),
            None => legal,
        }
    }

    fn choose(&self, p: &Position, policy: Option<&Policy>) -> Option<Move> {
        let l = &self.l;
        let v = p.active_token();
        let n = l.vars.len();
        if let Some((k, d)) = l.vars.iter().enumerate().find(|(_, d)| d.top == v) {
            let a = assignment(p, l.vars.iter().map(|d| d.left));
            let corner = if value_for(policy, k + 1, a) { d.top_left } else { d.top_right };
            return Some(Move::regular(v, corner));
        }
        if let Some(d) = l.vars.iter().find(|d| d.top_left == v || d.top_right == v) {
            return Some(Move::regular(v, if v == d.top_left { d.left } else { d.right }));
        }
        if let Some(d) = l.vars.iter().find(|d| d.left == v || d.right == v) {
            let corner = if v == d.left { d.bottom_left } else { d.bottom_right };
            return live(p, corner).then(|| Move::regular(v, corner));
        }
        if v == l.vars[n - 1].bottom {
            return Some(Move::regular(v, l.deletion_paths[self.keep(p)?][0]));
        }
        if let Some(j) = l.clauses.iter().position(|&c| c == v).filter(|_| p.to_move() == Player::Left) {
            let lines = self.lines(p)?;
            let stalling_linkers = lines.iter().any(|m| l.linkers[j].iter().any(|k| m.to == k.path[0] && m.delete == k.path[1]));
            if stalling_linkers {
                // Stall on a closed linker first, keeping an open one for last.
                let keep = l.linkers[j].iter().filter(|k| lines.iter().any(|m| m.to == k.path[0])).find(|k| self.open(p, k));
                return lines.into_iter().find(|m| keep.map_or(true, |k| m.to != k.path[0]));
            }
            return lines.into_iter().next();
        }
        if v == *l.delay.last().unwrap() {
            let lines = self.lines(p)?;
            let useful = |m: &Move| {
                l.connectors.iter().position(|c| c[0] == m.to).is_some_and(|j| l.linkers[j].iter().any(|k| self.open(p, k)))
            };
            return lines.iter().find(|m| !m.is_regular() || useful(m)).or(lines.first()).copied();
        }
        self.lines(p)?.into_iter().next()
    }
}
