//! Bounded search used by scripted strategies once play leaves the script:
//! alpha-beta over a territory count, cut off with solo longest-path bounds
//! once the two tokens can no longer interfere.

use geolab_core::{Deletion, Move, Position, Tokens, VertexId};
use rustc_hash::FxHashMap;

/// Score of a won position, less the plies needed to get there.
pub const WIN: i32 = 1 << 24;
/// Scores at least this large are proofs, not estimates.
pub const PROVEN: i32 = WIN - (1 << 16);
const DECIDED: i32 = WIN - (1 << 12);
const CACHE_LIMIT: usize = 1 << 18;

#[derive(Clone, Debug)]
pub struct Engine {
    pub max_depth: u32,
    /// Nodes per decision before iterative deepening stops.
    pub node_budget: u64,
    /// DFS steps per longest-path computation.
    pub path_budget: u64,
    /// Leave the script's move when the best estimate beats it by more than
    /// this much; `None` leaves it only on proofs.
    pub margin: Option<i32>,
    nodes: u64,
    aborted: bool,
    cache: FxHashMap<Vec<u8>, (i32, bool)>,
    key: Vec<u8>,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(8, 40_000, 20_000)
    }
}

impl Engine {
    pub fn new(max_depth: u32, node_budget: u64, path_budget: u64) -> Engine {
        Engine { max_depth, node_budget, path_budget, margin: None, nodes: 0, aborted: false, cache: FxHashMap::default(), key: Vec::new() }
    }

    /// `pref` unless the search proves a win with another move, proves that
    /// `pref` loses, or (with a margin) estimates it clearly worse.
    pub fn guarded(&mut self, p: &Position, pref: Option<Move>) -> Move {
        let mut order = p.legal_moves();
        assert!(!order.is_empty(), "guarded search needs a legal move");
        let pref = pref.filter(|m| order.contains(m));
        if let Some(m) = pref {
            order.retain(|x| *x != m);
            order.insert(0, m);
        }
        if order.len() == 1 {
            return order[0];
        }
        if self.cache.len() > CACHE_LIMIT {
            self.cache.clear();
        }
        self.nodes = 0;
        let mut scores: Option<Vec<(Move, i32)>> = None;
        for depth in 1..=self.max_depth {
            self.aborted = false;
            let s = self.root(p, &order, depth);
            if self.aborted {
                break;
            }
            let best = s.iter().map(|x| x.1).max().unwrap_or(-WIN);
            let settled = best >= PROVEN || s.iter().all(|x| x.1 <= -PROVEN);
            // Search the most promising moves first next time, the script's move leading.
            let mut rest: Vec<(Move, i32)> = s.iter().copied().filter(|x| Some(x.0) != pref).collect();
            rest.sort_by_key(|x| -x.1);
            order = pref.into_iter().chain(rest.iter().map(|x| x.0)).collect();
            scores = Some(s);
            if settled || self.nodes > self.node_budget {
                break;
            }
        }
        let Some(scores) = scores else { return pref.unwrap_or(order[0]) };
        let (best_move, best) = scores.iter().copied().fold((order[0], i32::MIN), |acc, x| if x.1 > acc.1 { x } else { acc });
        let pref_score = pref.and_then(|m| scores.iter().find(|x| x.0 == m)).map(|x| x.1);
        match pref_score {
            _ if best >= PROVEN => best_move,
            Some(s) if s > -PROVEN && self.margin.map_or(true, |mg| best - s <= mg) => pref.unwrap(),
            _ => best_move,
        }
    }

    fn root(&mut self, p: &Position, order: &[Move], depth: u32) -> Vec<(Move, i32)> {
        let mut q = p.clone();
        let mut alpha = -WIN - 1;
        let mut out = Vec::with_capacity(order.len());
        for (i, &m) in order.iter().enumerate() {
            let u = q.play(m);
            let upper = if i == 0 { WIN + 1 } else { -alpha };
            let s = -self.negamax(&mut q, depth - 1, -WIN - 1, upper, 1);
            q.unplay(u);
            if self.aborted {
                return out;
            }
            out.push((m, s));
            alpha = alpha.max(s);
        }
        out
    }

    fn negamax(&mut self, p: &mut Position, depth: u32, mut alpha: i32, beta: i32, ply: i32) -> i32 {
        self.nodes += 1;
        if self.nodes > 4 * self.node_budget {
            self.aborted = true;
            return 0;
        }
        let moves = p.legal_moves();
        if moves.is_empty() {
            return -(WIN - ply);
        }
        let (s, exact) = self.static_eval(p);
        if exact || depth == 0 {
            return s;
        }
        let mut best = -WIN - 1;
        for m in moves {
            let u = p.play(m);
            let s = -self.negamax(p, depth - 1, -beta, -alpha, ply + 1);
            p.unplay(u);
            if self.aborted {
                return 0;
            }
            best = best.max(s);
            alpha = alpha.max(s);
            if alpha >= beta {
                break;
            }
        }
        best
    }

    /// Evaluation for the player to move; the flag marks values that need no
    /// further search (tokens separated).
    pub fn static_eval(&mut self, p: &Position) -> (i32, bool) {
        let Tokens::Pair { .. } = p.tokens() else { return (0, false) };
        p.encode_into(&mut self.key);
        if let Some(&v) = self.cache.get(&self.key) {
            return v;
        }
        let me = p.to_move();
        let (a, b) = (p.tokens().of(me), p.tokens().of(me.opponent()));
        let ra = region(p, a, b);
        let rb = region(p, b, a);
        let v = if separated(p, &ra, &rb) {
            let (lo_a, hi_a) = self.solo_bounds(p, a, &ra);
            let (lo_b, hi_b) = self.solo_bounds(p, b, &rb);
            // The mover wins a pure race exactly when she has more moves.
            if lo_a > hi_b {
                (DECIDED, true)
            } else if hi_a <= lo_b {
                (-DECIDED, true)
            } else {
                ((lo_a + hi_a) as i32 - (lo_b + hi_b) as i32, true)
            }
        } else {
            (voronoi(p, a, b), false)
        };
        self.cache.insert(self.key.clone(), v);
        v
    }

    /// Lower and upper bounds on how many moves a lone token can make in its region.
    fn solo_bounds(&self, p: &Position, start: VertexId, region: &[bool]) -> (u32, u32) {
        let size = region.iter().filter(|&&x| x).count() as u32;
        let mut hi = size.saturating_sub(1);
        let restricted = p.variant().deletion == Deletion::Restricted;
        if restricted {
            if let Some(b) = bipartite_path_bound(p, start, region) {
                hi = hi.min(b);
            }
        }
        let (lo, complete) = longest_path(p, start, region, hi, self.path_budget);
        if complete && restricted {
            (lo, lo)
        } else {
            (lo, hi)
        }
    }
}

/// Where a token whose every move is forced runs to: the first vertex with a
/// choice and the moves needed to stand on it, or `None` for a dead end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corridor {
    pub cells: Vec<VertexId>,
    pub exit: Option<VertexId>,
}

/// The corridor ahead of the token on `from`, when it has exactly one move.
pub fn corridor(p: &Position, from: VertexId, blocked: VertexId) -> Option<Corridor> {
    let g = p.graph();
    let mut cells = vec![from];
    let mut cur = from;
    loop {
        let next: Vec<VertexId> =
            g.out_adj(cur).iter().copied().filter(|&w| w != blocked && p.height(w) > 0 && !cells.contains(&w)).collect();
        match next.len() {
            1 => {
                cur = next[0];
                cells.push(cur);
            }
            0 if cur == from => return None,
            0 => return Some(Corridor { cells, exit: None }),
            _ if cur == from => return None,
            _ => {
                cells.pop();
                return Some(Corridor { cells, exit: Some(cur) });
            }
        }
    }
}

/// Under restricted deletion: if the opponent is shut in a corridor and the
/// mover can stand on its exit first with moves to spare afterwards, the
/// first step of such a route.
pub fn trap(p: &Position, path_budget: u64) -> Option<Move> {
    if p.variant().deletion != Deletion::Restricted {
        return None;
    }
    let Tokens::Pair { .. } = p.tokens() else { return None };
    let me = p.to_move();
    let (a, b) = (p.tokens().of(me), p.tokens().of(me.opponent()));
    let c = corridor(p, b, a)?;
    let x = c.exit?;
    let steps = c.cells.len() as u32;
    let g = p.graph();
    let mut prev: Vec<Option<VertexId>> = vec![None; g.num_vertices()];
    let mut dist = vec![u32::MAX; g.num_vertices()];
    dist[a.index()] = 0;
    let mut queue = std::collections::VecDeque::from([a]);
    while let Some(v) = queue.pop_front() {
        if v == x {
            break;
        }
        for &w in g.out_adj(v) {
            if dist[w.index()] == u32::MAX && p.height(w) > 0 && !c.cells.contains(&w) {
                dist[w.index()] = dist[v.index()] + 1;
                prev[w.index()] = Some(v);
                queue.push_back(w);
            }
        }
    }
    let d = dist[x.index()];
    if d == 0 || d > steps {
        return None;
    }
    let mut route = vec![x];
    while let Some(v) = prev[route.last().unwrap().index()] {
        route.push(v);
    }
    // The opponent makes steps - 1 more moves; the mover must outlast them.
    let region: Vec<bool> = (0..g.num_vertices())
        .map(|i| p.height(VertexId::from(i)) > 0 && !c.cells.contains(&VertexId::from(i)) && !route[1..].contains(&VertexId::from(i)))
        .collect();
    let need = steps - d;
    let (after, _) = longest_path(p, x, &region, need, path_budget);
    if after < need {
        return None;
    }
    let first = route[route.len() - 2];
    p.legal_moves().into_iter().find(|m| m.to == first)
}

/// Live vertices reachable from `from` without entering `blocked`.
fn region(p: &Position, from: VertexId, blocked: VertexId) -> Vec<bool> {
    let g = p.graph();
    let mut seen = vec![false; g.num_vertices()];
    seen[from.index()] = true;
    let mut stack = vec![from];
    while let Some(v) = stack.pop() {
        for &w in g.out_adj(v) {
            if w != blocked && !seen[w.index()] && p.height(w) > 0 {
                seen[w.index()] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// No shared vertex, and under free deletion no edge either (a deletion may
/// reach one step past the target).
fn separated(p: &Position, ra: &[bool], rb: &[bool]) -> bool {
    if ra.iter().zip(rb).any(|(&x, &y)| x && y) {
        return false;
    }
    if p.variant().deletion == Deletion::Restricted {
        return true;
    }
    let g = p.graph();
    !(0..ra.len()).filter(|&i| ra[i]).any(|i| g.out_adj(VertexId::from(i)).iter().any(|w| rb[w.index()]))
}

/// Path moves from `start` in a bipartite region are capped by the smaller side.
fn bipartite_path_bound(p: &Position, start: VertexId, region: &[bool]) -> Option<u32> {
    let g = p.graph();
    let mut color = vec![u8::MAX; region.len()];
    color[start.index()] = 0;
    let mut stack = vec![start];
    let mut count = [0u32; 2];
    count[0] = 1;
    while let Some(v) = stack.pop() {
        let c = color[v.index()];
        for &w in g.out_adj(v) {
            if !region[w.index()] {
                continue;
            }
            match color[w.index()] {
                u8::MAX => {
                    color[w.index()] = 1 - c;
                    count[(1 - c) as usize] += 1;
                    stack.push(w);
                }
                x if x == c => return None,
                _ => {}
            }
        }
    }
    let vertices = (2 * count[0]).min(2 * count[1] + 1);
    Some(vertices.saturating_sub(1))
}

/// Longest simple path (in moves) from `start` inside `region`, stopping at
/// `cap` or after `budget` steps; the flag says the search finished.
fn longest_path(p: &Position, start: VertexId, region: &[bool], cap: u32, budget: u64) -> (u32, bool) {
    let g = p.graph();
    let mut on = vec![false; region.len()];
    on[start.index()] = true;
    let mut stack: Vec<(VertexId, usize)> = vec![(start, 0)];
    let mut best = 0u32;
    let mut steps = 0u64;
    while let Some(top) = stack.last_mut() {
        let (v, i) = *top;
        let adj = g.out_adj(v);
        if i < adj.len() {
            top.1 += 1;
            let w = adj[i];
            if region[w.index()] && !on[w.index()] {
                on[w.index()] = true;
                stack.push((w, 0));
                best = best.max(stack.len() as u32 - 1);
                steps += 1;
                if best >= cap {
                    return (best, true);
                }
                if steps > budget {
                    return (best, false);
                }
            }
        } else {
            on[v.index()] = false;
            stack.pop();
        }
    }
    (best, true)
}

/// Vertices the mover reaches no later than the opponent, minus the rest.
fn voronoi(p: &Position, a: VertexId, b: VertexId) -> i32 {
    let da = distances(p, a, b);
    let db = distances(p, b, a);
    let mut score = 0;
    for (x, y) in da.iter().zip(&db) {
        match (x, y) {
            (Some(x), Some(y)) if x <= y => score += 1,
            (Some(_), None) => score += 1,
            (_, Some(_)) => score -= 1,
            _ => {}
        }
    }
    score
}

fn distances(p: &Position, from: VertexId, blocked: VertexId) -> Vec<Option<u32>> {
    let g = p.graph();
    let mut d = vec![None; g.num_vertices()];
    d[from.index()] = Some(0);
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        let dv = d[v.index()].unwrap();
        for &w in g.out_adj(v) {
            if w != blocked && d[w.index()].is_none() && p.height(w) > 0 {
                d[w.index()] = Some(dv + 1);
                queue.push_back(w);
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use geolab_core::{GameGraph, Orientation, Player};

    /// Right on b0 walks b0-b1-b2 into the hub x; Left on a next to x.
    /// Past x: x-y-w, plus the spur x-z.
    fn race(extra_tail: bool) -> Position {
        let (a, b0, b1, b2, x, y, w, z) = (0u32, 1, 2, 3, 4, 5, 6, 7);
        let mut edges = vec![(a, x), (b0, b1), (b1, b2), (b2, x), (x, y), (x, z)];
        if extra_tail {
            edges.push((y, w));
        }
        let edges: Vec<(VertexId, VertexId)> = edges.into_iter().map(|(u, v)| (VertexId(u), VertexId(v))).collect();
        let g = GameGraph::from_parts(Orientation::Undirected, vec![1; 8], &edges, vec![]).unwrap();
        let tokens = Tokens::Pair { left: VertexId(a), right: VertexId(b0) };
        Position::new(g, "UPR".parse().unwrap(), tokens, Player::Left).unwrap()
    }

    #[test]
    fn corridor_runs_to_the_hub() {
        let p = race(true);
        let c = corridor(&p, VertexId(1), VertexId(0)).unwrap();
        assert_eq!(c.cells, vec![VertexId(1), VertexId(2), VertexId(3)]);
        assert_eq!(c.exit, Some(VertexId(4)));
        assert_eq!(corridor(&p, VertexId(0), VertexId(1)).unwrap().cells, vec![VertexId(0)]);
        assert_eq!(corridor(&p, VertexId(4), VertexId(0)), None);
    }

    #[test]
    fn trap_needs_moves_to_spare() {
        assert_eq!(trap(&race(true), 1000).map(|m| m.to), Some(VertexId(4)));
        assert_eq!(trap(&race(false), 1000), None);
    }
}
