//! Exact solving: memoized full-depth search for every variant, and the
//! matching characterization for undirected impartial height-1 games.

use std::collections::BTreeSet;

use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{Deletion, Move, Partisanship, Player, Position};
use crate::graph::{check_bipartite, Orientation, VertexId};
use crate::matching::{is_essential, matching_number_without, MatchingError};

/// Value of a position for the player to move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Value {
    Win,
    Draw,
    Loss,
}

impl Value {
    pub fn negate(self) -> Value {
        match self {
            Value::Win => Value::Loss,
            Value::Loss => Value::Win,
            Value::Draw => Value::Draw,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GameResult {
    LeftWins,
    RightWins,
    Draw,
}

impl GameResult {
    pub fn from_value(v: Value, to_move: Player) -> GameResult {
        match (v, to_move) {
            (Value::Draw, _) => GameResult::Draw,
            (Value::Win, Player::Left) | (Value::Loss, Player::Right) => GameResult::LeftWins,
            _ => GameResult::RightWins,
        }
    }

    pub fn winner(self) -> Option<Player> {
        match self {
            GameResult::LeftWins => Some(Player::Left),
            GameResult::RightWins => Some(Player::Right),
            GameResult::Draw => None,
        }
    }

    pub fn won_by(p: Player) -> GameResult {
        match p {
            Player::Left => GameResult::LeftWins,
            Player::Right => GameResult::RightWins,
        }
    }
}

impl std::fmt::Display for GameResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GameResult::LeftWins => "LeftWins",
            GameResult::RightWins => "RightWins",
            GameResult::Draw => "Draw",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub result: GameResult,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub principal_variation: Option<Vec<Move>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub outcome: Outcome,
    pub nodes_expanded: u64,
    pub table_hits: u64,
    pub optimal_move: Option<Move>,
}

impl SolveReport {
    pub fn result(&self) -> GameResult {
        self.outcome.result
    }
}

/// Normal play, or the evaluation mode where the active token reaching `vertex`
/// with `mover` to move ends the game in a draw.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchMode {
    Normal,
    DrawOnReach { vertex: VertexId, mover: Player },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("node budget of {budget} exhausted")]
    BudgetExhausted { budget: u64 },
    #[error("matching solver precondition failed: {0}")]
    MatchingPrecondition(String),
    #[error("free-deletion undirected impartial game on a non-bipartite graph: matching characterization does not apply")]
    NonBipartiteFree,
    #[error(transparent)]
    Matching(#[from] MatchingError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub mode: SearchMode,
    pub budget: u64,
    pub table_cap: usize,
    pub want_pv: bool,
}

pub const DEFAULT_TABLE_CAP: usize = 1 << 24;

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { mode: SearchMode::Normal, budget: 10_000_000, table_cap: DEFAULT_TABLE_CAP, want_pv: false }
    }
}

struct Searcher {
    pos: Position,
    mode: SearchMode,
    budget: u64,
    cap: usize,
    table: FxHashMap<Box<[u8]>, Value>,
    nodes: u64,
    hits: u64,
}

impl Searcher {
    fn new(p: &Position, o: &SolveOptions) -> Self {
        Searcher {
            pos: p.clone(),
            mode: o.mode,
            budget: o.budget,
            cap: o.table_cap,
            table: FxHashMap::default(),
            nodes: 0,
            hits: 0,
        }
    }

    fn draw_here(&self) -> bool {
        match self.mode {
            SearchMode::Normal => false,
            SearchMode::DrawOnReach { vertex, mover } => {
                self.pos.to_move() == mover && self.pos.tokens().of(mover) == vertex
            }
        }
    }

    /// Value of the current position plus the first move achieving it
    /// (`None` on table hits and terminals).
    fn search(&mut self) -> Result<(Value, Option<Move>), SolveError> {
        if self.draw_here() {
            return Ok((Value::Draw, None));
        }
        let key = self.pos.encode().into_boxed_slice();
        if let Some(&v) = self.table.get(&key) {
            self.hits += 1;
            return Ok((v, None));
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(SolveError::BudgetExhausted { budget: self.budget });
        }
        let moves = self.pos.legal_moves();
        let mut best = (Value::Loss, None);
        for m in moves {
            let undo = self.pos.play(m);
            let child = self.search();
            self.pos.unplay(undo);
            match child?.0.negate() {
                Value::Win => {
                    best = (Value::Win, Some(m));
                    break;
                }
                Value::Draw if best.0 == Value::Loss => best = (Value::Draw, Some(m)),
                _ => {}
            }
        }
        if self.table.len() < self.cap {
            self.table.insert(key, best.0);
        }
        Ok(best)
    }

    /// Child values at the current position, in move order.
    fn child_values(&mut self) -> Result<Vec<(Move, Value)>, SolveError> {
        let mut out = Vec::new();
        for m in self.pos.legal_moves() {
            let undo = self.pos.play(m);
            let child = self.search();
            self.pos.unplay(undo);
            out.push((m, child?.0.negate()));
        }
        Ok(out)
    }

    /// Follows value-preserving moves from the current position to a terminal.
    fn principal_variation(&mut self, root_value: Value) -> Result<Vec<Move>, SolveError> {
        let start = self.pos.clone();
        let mut pv = Vec::new();
        let mut value = root_value;
        loop {
            if self.draw_here() {
                break;
            }
            let children = self.child_values()?;
            let Some(&(m, _)) = children.iter().find(|(_, v)| *v == value).or(children.first()) else { break };
            self.pos.play(m);
            pv.push(m);
            value = value.negate();
        }
        self.pos = start;
        Ok(pv)
    }
}

pub fn solve_brute(p: &Position, mode: SearchMode, budget: u64) -> Result<SolveReport, SolveError> {
    solve_with(p, &SolveOptions { mode, budget, ..SolveOptions::default() })
}

/// Memoized negamax with win cutoff. Values order Win > Draw > Loss.
pub fn solve_with(p: &Position, o: &SolveOptions) -> Result<SolveReport, SolveError> {
    let mut s = Searcher::new(p, o);
    let (value, best) = s.search()?;
    let pv = if o.want_pv { Some(s.principal_variation(value)?) } else { None };
    Ok(SolveReport {
        outcome: Outcome { result: GameResult::from_value(value, p.to_move()), principal_variation: pv },
        nodes_expanded: s.nodes,
        table_hits: s.hits,
        optimal_move: best.filter(|_| value != Value::Loss),
    })
}

/// Value for the player to move under `mode`.
pub fn value_of(p: &Position, mode: SearchMode, budget: u64) -> Result<Value, SolveError> {
    let mut s = Searcher::new(p, &SolveOptions { mode, budget, ..SolveOptions::default() });
    Ok(s.search()?.0)
}

/// Height profiles at the end of every line in which both sides only play
/// value-preserving moves (any move counts in a lost position).
pub fn optimal_terminal_profiles(p: &Position, mode: SearchMode, budget: u64) -> Result<BTreeSet<Vec<u8>>, SolveError> {
    let mut s = Searcher::new(p, &SolveOptions { mode, budget, ..SolveOptions::default() });
    let (value, _) = s.search()?;
    let mut out = BTreeSet::new();
    let mut visited = FxHashSet::default();
    walk_optimal(&mut s, value, &mut visited, &mut out)?;
    Ok(out)
}

fn walk_optimal(
    s: &mut Searcher,
    value: Value,
    visited: &mut FxHashSet<Vec<u8>>,
    out: &mut BTreeSet<Vec<u8>>,
) -> Result<(), SolveError> {
    if !visited.insert(s.pos.encode()) {
        return Ok(());
    }
    if s.draw_here() {
        out.insert(s.pos.heights().to_vec());
        return Ok(());
    }
    let children = s.child_values()?;
    if children.is_empty() {
        out.insert(s.pos.heights().to_vec());
        return Ok(());
    }
    for (m, v) in children {
        if value == Value::Loss || v == value {
            let undo = s.pos.play(m);
            let r = walk_optimal(s, v.negate(), visited, out);
            s.pos.unplay(undo);
            r?;
        }
    }
    Ok(())
}

/// Whether [`solve_by_matching`] applies: undirected, impartial, every live
/// height 1, and for free deletion a bipartite graph.
pub fn matching_applicable(p: &Position) -> Result<(), SolveError> {
    let v = p.variant();
    if v.orientation != Orientation::Undirected {
        return Err(SolveError::MatchingPrecondition("graph must be undirected".into()));
    }
    if v.partisanship != Partisanship::Impartial {
        return Err(SolveError::MatchingPrecondition("game must be impartial".into()));
    }
    if p.heights().iter().any(|&h| h > 1) {
        return Err(SolveError::MatchingPrecondition("all heights must be at most 1".into()));
    }
    if v.deletion == Deletion::Free && check_bipartite(p.graph()).is_err() {
        return Err(SolveError::NonBipartiteFree);
    }
    Ok(())
}

/// N-position iff the token's vertex lies in every maximum matching. The
/// winning move goes regularly to the first neighbor w with
/// ν(G − v − w) = ν(G) − 1, i.e. along an edge of some maximum matching.
pub fn solve_by_matching(p: &Position) -> Result<SolveReport, SolveError> {
    matching_applicable(p)?;
    let g = p.graph();
    let v = p.active_token();
    let mut optimal = None;
    if is_essential(g, v)? {
        let nu = matching_number_without(g, &[])?;
        for &w in g.out_adj(v) {
            if g.is_live(w) && matching_number_without(g, &[v, w])? + 1 == nu {
                optimal = Some(Move::regular(v, w));
                break;
            }
        }
        debug_assert!(optimal.is_some());
    }
    let value = if optimal.is_some() { Value::Win } else { Value::Loss };
    Ok(SolveReport {
        outcome: Outcome { result: GameResult::from_value(value, p.to_move()), principal_variation: None },
        nodes_expanded: 0,
        table_hits: 0,
        optimal_move: optimal,
    })
}

/// Matching solver when it applies, brute force otherwise. Ties follow move order.
pub fn best_move(p: &Position, budget: u64) -> Result<Option<Move>, SolveError> {
    Ok(solve(p, budget)?.optimal_move.or_else(|| p.legal_moves().first().copied()))
}

/// Dispatching solve: matching characterization when applicable, else search.
pub fn solve(p: &Position, budget: u64) -> Result<SolveReport, SolveError> {
    if matching_applicable(p).is_ok() {
        solve_by_matching(p)
    } else {
        solve_brute(p, SearchMode::Normal, budget)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{Tokens, Variant};
    use crate::graph::{GameGraph, GraphBuilder};

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    fn undirected_pos(var: &str, heights: &[u8], edges: &[(u32, u32)], token: u32) -> Position {
        let var: Variant = var.parse().unwrap();
        let e: Vec<_> = edges.iter().map(|&(a, b)| (v(a), v(b))).collect();
        let g = GameGraph::from_parts(Orientation::Undirected, heights.to_vec(), &e, vec![]).unwrap();
        Position::new(g, var, Tokens::Single { token: v(token) }, Player::Left).unwrap()
    }

    fn fig8(var: &str) -> Position {
        undirected_pos(var, &[1; 5], &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)], 0)
    }

    fn draw_forced() -> Position {
        let mut p = undirected_pos("UIR4", &[2, 4, 3, 1, 1], &[(0, 1), (1, 2), (2, 3), (3, 4)], 0);
        for m in [(0, 1, 0), (1, 2, 1), (2, 1, 2), (1, 2, 1)] {
            p = p.apply_move(Move::new(m.0 as u32, m.1 as u32, m.2 as u32)).unwrap();
        }
        p
    }

    #[test]
    fn single_vertex_left_loses() {
        let mut b = GraphBuilder::new(Orientation::Directed);
        b.add_vertex(1);
        let p = Position::new(b.build(), "DIR".parse().unwrap(), Tokens::Single { token: v(0) }, Player::Left).unwrap();
        let r = solve_brute(&p, SearchMode::Normal, 10).unwrap();
        assert_eq!(r.result(), GameResult::RightWins);
        assert_eq!(r.optimal_move, None);
    }

    #[test]
    fn draw_path_value_and_profiles() {
        let mode = SearchMode::DrawOnReach { vertex: v(4), mover: Player::Left };
        for p in [draw_forced(), undirected_pos("UIR4", &[2, 4, 3, 1, 1], &[(0, 1), (1, 2), (2, 3), (3, 4)], 0)] {
            assert_eq!(solve_brute(&p, mode, 10_000).unwrap().result(), GameResult::Draw);
            let profiles = optimal_terminal_profiles(&p, mode, 10_000).unwrap();
            let want: BTreeSet<Vec<u8>> = [vec![1, 2, 1, 0, 1], vec![1, 1, 0, 0, 1], vec![0, 0, 0, 0, 1]].into();
            assert_eq!(profiles, want);
        }
    }

    #[test]
    fn draw_path_without_draw_mode_is_loss() {
        let p = undirected_pos("UIR4", &[2, 4, 3, 1, 1], &[(0, 1), (1, 2), (2, 3), (3, 4)], 0);
        assert_eq!(solve_brute(&p, SearchMode::Normal, 10_000).unwrap().result(), GameResult::RightWins);
    }

    #[test]
    fn fig8_values() {
        let uir = solve_brute(&fig8("UIR"), SearchMode::Normal, 10_000).unwrap();
        assert_eq!(uir.result(), GameResult::RightWins);
        let uif = solve_brute(&fig8("UIF"), SearchMode::Normal, 10_000).unwrap();
        assert_eq!(uif.result(), GameResult::LeftWins);
        assert_eq!(uif.optimal_move, Some(Move::new(0u32, 2u32, 3u32)));
        let m = solve_by_matching(&fig8("UIR")).unwrap();
        assert_eq!(m.result(), GameResult::RightWins);
        assert_eq!(solve_by_matching(&fig8("UIF")), Err(SolveError::NonBipartiteFree));
    }

    #[test]
    fn fig8_uif_unique_winning_move() {
        let p = fig8("UIF");
        let winners: Vec<Move> = p
            .legal_moves()
            .into_iter()
            .filter(|&m| value_of(&p.apply_move(m).unwrap(), SearchMode::Normal, 10_000).unwrap() == Value::Loss)
            .collect();
        assert_eq!(winners, vec![Move::new(0u32, 2u32, 3u32)]);
    }

    #[test]
    fn single_edge_matching_no_search() {
        for t in [0, 1] {
            let p = undirected_pos("UIR", &[1, 1], &[(0, 1)], t);
            let r = solve(&p, 10).unwrap();
            assert_eq!(r.result(), GameResult::LeftWins);
            assert_eq!(r.nodes_expanded, 0);
            assert_eq!(best_move(&p, 10).unwrap(), Some(Move::regular(v(t), v(1 - t))));
        }
    }

    #[test]
    fn path3_middle_is_n() {
        let p = undirected_pos("UIR", &[1, 1, 1], &[(0, 1), (1, 2)], 1);
        assert_eq!(solve_by_matching(&p).unwrap().result(), GameResult::LeftWins);
        assert_eq!(solve_brute(&p, SearchMode::Normal, 100).unwrap().result(), GameResult::LeftWins);
    }

    #[test]
    fn budget_is_explicit() {
        let p = fig8("UIF");
        assert_eq!(solve_brute(&p, SearchMode::Normal, 1), Err(SolveError::BudgetExhausted { budget: 1 }));
    }

    #[test]
    fn draw_path_best_move_forced() {
        let p = undirected_pos("UIR4", &[2, 4, 3, 1, 1], &[(0, 1), (1, 2), (2, 3), (3, 4)], 0);
        assert_eq!(best_move(&p, 1000).unwrap(), Some(Move::new(0u32, 1u32, 0u32)));
        let mut b = GraphBuilder::new(Orientation::Undirected);
        b.add_vertex(1);
        let stuck = Position::new(b.build(), "UIR".parse().unwrap(), Tokens::Single { token: v(0) }, Player::Left).unwrap();
        assert_eq!(best_move(&stuck, 10).unwrap(), None);
    }

    #[test]
    fn pv_ends_with_loser_stuck() {
        let p = fig8("UIF");
        let r = solve_with(&p, &SolveOptions { want_pv: true, ..SolveOptions::default() }).unwrap();
        let mut q = p.clone();
        for m in r.outcome.principal_variation.unwrap() {
            q = q.apply_move(m).unwrap();
        }
        assert_eq!(q.loser_if_stuck(), Some(Player::Right));
    }

    #[test]
    fn deterministic_reports() {
        let p = fig8("UIF");
        assert_eq!(solve_brute(&p, SearchMode::Normal, 1000), solve_brute(&p, SearchMode::Normal, 1000));
    }

    #[test]
    fn table_cap_does_not_change_answer() {
        let p = fig8("UIF");
        let small = solve_with(&p, &SolveOptions { table_cap: 0, ..SolveOptions::default() }).unwrap();
        let big = solve_with(&p, &SolveOptions::default()).unwrap();
        assert_eq!(small.outcome, big.outcome);
        assert_eq!(small.optimal_move, big.optimal_move);
        assert!(small.nodes_expanded >= big.nodes_expanded);
    }
}
