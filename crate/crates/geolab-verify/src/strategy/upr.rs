//! Proper play on the undirected partizan construction with restricted
//! deletion. Every move is regular, so a move is its target.

use geolab_core::qbf::{Policy, QbfInstance};
use geolab_core::{Move, Player, Position, VertexId};
use geolab_reductions::layout::{PathLinker, UprLayout};

use super::{assignment, clause_holds, live, value_for, Script};

pub(super) struct UprScript {
    l: UprLayout,
    q: QbfInstance,
}

impl UprScript {
    pub(super) fn new(l: UprLayout, q: QbfInstance) -> Self {
        UprScript { l, q }
    }

    fn alive_clauses(&self, p: &Position) -> Vec<usize> {
        (0..self.l.clauses.len()).filter(|&j| live(p, self.l.clauses[j])).collect()
    }

    /// The clause Right never visits: a false one if the assignment has one.
    fn keep(&self, p: &Position) -> Option<usize> {
        let a = assignment(p, self.l.vars.iter().map(|d| d.left));
        let alive = self.alive_clauses(p);
        alive.iter().copied().find(|&j| !clause_holds(&self.q, j, a)).or_else(|| alive.first().copied())
    }

    /// Moves left along a linker if Left takes it now: through the variable
    /// vertex when it is still there and back out along another linker.
    fn reach(&self, p: &Position, k: &PathLinker) -> usize {
        let walk = k.path.iter().take_while(|&&v| live(p, v)).count();
        if walk < k.path.len() || !live(p, k.target) {
            return walk;
        }
        let onward = self.l.linkers.iter().flatten().filter(|o| o.target == k.target && o.path != k.path);
        walk + 1 + onward.map(|o| o.path.iter().rev().take_while(|&&v| live(p, v)).count()).max().unwrap_or(0)
    }

    /// Right's moves until he is inside the linker that returns him to the
    /// clauses, when he is heading out along a linker toward a live variable vertex.
    fn commit_time(&self, p: &Position) -> Option<usize> {
        let r = p.tokens().of(Player::Right);
        let sides = |v: VertexId| self.l.vars.iter().any(|d| d.left == v || d.right == v);
        let onward = |t: VertexId| self.l.linkers.iter().flatten().any(|k| k.target == t && live(p, *k.path.last().unwrap()));
        if sides(r) {
            return onward(r).then_some(1);
        }
        for (j, k) in self.l.linkers.iter().enumerate().flat_map(|(j, ks)| ks.iter().map(move |k| (j, k))) {
            let Some(t) = k.path.iter().position(|&x| x == r) else { continue };
            let behind = if t > 0 { k.path[t - 1] } else { self.l.clauses[j] };
            let clear = k.path[t + 1..].iter().all(|&x| live(p, x)) && live(p, k.target);
            return (!live(p, behind) && clear).then(|| k.path.len() - t + 1);
        }
        None
    }

    /// Left's moves to the nearest live clause vertex.
    fn clause_distance(&self, p: &Position) -> usize {
        let g = p.graph();
        let (from, blocked) = (p.tokens().of(Player::Left), p.tokens().of(Player::Right));
        let mut dist = vec![usize::MAX; g.num_vertices()];
        dist[from.index()] = 0;
        let mut queue = std::collections::VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v != from && self.l.clauses.contains(&v) {
                return dist[v.index()];
            }
            for &w in g.out_adj(v) {
                if w != blocked && dist[w.index()] == usize::MAX && live(p, w) {
                    dist[w.index()] = dist[v.index()] + 1;
                    queue.push_back(w);
                }
            }
        }
        usize::MAX
    }

    /// Proper targets for the player to move.
    fn targets(&self, p: &Position) -> Vec<VertexId> {
        let l = &self.l;
        let v = p.active_token();
        let n = l.vars.len();
        if v == l.vars[n - 2].bottom {
            return l.part1.clone();
        }
        if v == l.vars[n - 1].bottom {
            return l.clauses.clone();
        }
        if let Some(d) = l.vars.iter().find(|d| d.top == v) {
            return vec![d.left, d.right];
        }
        if let Some(d) = l.vars.iter().find(|d| d.left == v || d.right == v) {
            let mut out = vec![d.bottom];
            // Going on into another linker only belongs to the end game.
            if !live(p, l.exit) {
                out.extend(l.linkers.iter().flatten().filter(|k| k.target == v).map(|k| *k.path.last().unwrap()));
            }
            return out;
        }
        if l.part1.contains(&v) {
            return l.part2.clone();
        }
        if l.part2.contains(&v) {
            return if l.part1.iter().any(|&x| live(p, x)) { l.part1.clone() } else { vec![l.exit] };
        }
        if v == l.exit {
            return l.connectors.iter().map(|c| c[0]).collect();
        }
        for (j, c) in l.connectors.iter().enumerate() {
            if let Some(t) = c.iter().position(|&x| x == v) {
                return vec![c.get(t + 1).copied().unwrap_or(l.clauses[j])];
            }
        }
        if let Some(j) = l.clauses.iter().position(|&c| c == v) {
            return match p.to_move() {
                Player::Right => l.selectors.clone(),
                Player::Left => l.linkers[j].iter().map(|k| k.path[0]).collect(),
            };
        }
        if l.selectors.contains(&v) {
            return if self.alive_clauses(p).len() >= 2 { l.clauses.clone() } else { vec![l.escape[0]] };
        }
        if let Some(t) = l.escape.iter().position(|&x| x == v) {
            return l.escape.get(t + 1).copied().into_iter().collect();
        }
        for (j, ks) in l.linkers.iter().enumerate() {
            for k in ks {
                if let Some(t) = k.path.iter().position(|&x| x == v) {
                    let back = if t > 0 { k.path[t - 1] } else { l.clauses[j] };
                    return vec![k.path.get(t + 1).copied().unwrap_or(k.target), back];
                }
            }
        }
        Vec::new()
    }
}

impl Script for UprScript {
    fn proper(&self, p: &Position) -> Vec<Move> {
        let t = self.targets(p);
        p.legal_moves().into_iter().filter(|m| t.contains(&m.to)).collect()
    }

    fn choose(&self, p: &Position, policy: Option<&Policy>) -> Option<Move> {
        let l = &self.l;
        let v = p.active_token();
        let n = l.vars.len();
        let first_live = |xs: &[VertexId]| xs.iter().copied().find(|&x| live(p, x));
        let go = |w: VertexId| Some(Move::regular(v, w));
        if v == l.vars[n - 2].bottom {
            return go(first_live(&l.part1)?);
        }
        if v == l.vars[n - 1].bottom || l.selectors.contains(&v) {
            let keep = self.keep(p);
            let other = self.alive_clauses(p).into_iter().find(|&j| Some(j) != keep);
            return match other {
                Some(j) => go(l.clauses[j]),
                None if l.selectors.contains(&v) => go(l.escape[0]),
                None => go(l.clauses[keep?]),
            };
        }
        if let Some((k, d)) = l.vars.iter().enumerate().find(|(_, d)| d.top == v) {
            let a = assignment(p, l.vars.iter().map(|d| d.left));
            return go(if value_for(policy, k + 1, a) { d.left } else { d.right });
        }
        if let Some(d) = l.vars.iter().find(|d| d.left == v || d.right == v) {
            if live(p, d.bottom) {
                return go(d.bottom);
            }
            // Reached through a linker: continue into the longest other one.
            let next = l
                .linkers
                .iter()
                .flatten()
                .filter(|k| k.target == v && live(p, *k.path.last().unwrap()))
                .max_by_key(|k| k.path.iter().rev().take_while(|&&x| live(p, x)).count())?;
            return go(*next.path.last().unwrap());
        }
        if l.part1.contains(&v) {
            return go(first_live(&l.part2)?);
        }
        if l.part2.contains(&v) {
            // With Right loose in the linkers, leave for the clauses in time to
            // meet him there; otherwise keep stalling.
            let leave = self.commit_time(p).is_some_and(|c| self.clause_distance(p) >= c);
            return go(first_live(&l.part1).filter(|_| !leave).unwrap_or(l.exit));
        }
        if v == l.exit {
            let best = self
                .alive_clauses(p)
                .into_iter()
                .filter(|&j| l.connectors[j].iter().all(|&x| live(p, x)))
                .max_by_key(|&j| l.linkers[j].iter().map(|k| self.reach(p, k)).max().unwrap_or(0))?;
            return go(l.connectors[best][0]);
        }
        for (j, c) in l.connectors.iter().enumerate() {
            if let Some(t) = c.iter().position(|&x| x == v) {
                return go(c.get(t + 1).copied().unwrap_or(l.clauses[j]));
            }
        }
        if let Some(j) = l.clauses.iter().position(|&c| c == v) {
            if p.to_move() == Player::Right {
                return go(first_live(&l.selectors)?);
            }
            let k = l.linkers[j].iter().filter(|k| live(p, k.path[0])).max_by_key(|k| self.reach(p, k))?;
            return go(k.path[0]);
        }
        if let Some(t) = l.escape.iter().position(|&x| x == v) {
            return go(*l.escape.get(t + 1)?);
        }
        for (j, ks) in l.linkers.iter().enumerate() {
            for k in ks {
                if let Some(t) = k.path.iter().position(|&x| x == v) {
                    let ahead = k.path.get(t + 1).copied().unwrap_or(k.target);
                    let back = if t > 0 { k.path[t - 1] } else { l.clauses[j] };
                    return go(if live(p, ahead) { ahead } else { back });
                }
            }
        }
        None
    }
}
