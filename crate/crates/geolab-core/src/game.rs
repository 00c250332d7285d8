//! Rules for every variant: move generation, application, terminal detection.
//!
//! Stacked vertices follow the copy model: a vertex of height h behaves like h
//! interchangeable copies. Two partizan tokens may therefore share a vertex of
//! height at least 2, and a deletion may lower an occupied vertex as long as
//! its height stays at least the number of tokens on it. With k = 1 this is
//! the usual "tokens never meet, occupied vertices are never deleted" rule.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{GameGraph, Orientation, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Partisanship {
    Impartial,
    Partizan,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Deletion {
    Restricted,
    Free,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Variant {
    pub orientation: Orientation,
    pub partisanship: Partisanship,
    pub deletion: Deletion,
    pub max_height: u8,
}

impl Variant {
    pub const fn new(orientation: Orientation, partisanship: Partisanship, deletion: Deletion, max_height: u8) -> Self {
        Variant { orientation, partisanship, deletion, max_height }
    }

    pub fn with_max_height(self, k: u8) -> Self {
        Variant { max_height: k, ..self }
    }

    pub fn is_partizan(&self) -> bool {
        self.partisanship == Partisanship::Partizan
    }

    /// All eight orientation/partisanship/deletion combinations at height `k`.
    pub fn all(k: u8) -> Vec<Variant> {
        let mut out = Vec::with_capacity(8);
        for o in [Orientation::Directed, Orientation::Undirected] {
            for p in [Partisanship::Impartial, Partisanship::Partizan] {
                for d in [Deletion::Restricted, Deletion::Free] {
                    out.push(Variant::new(o, p, d, k));
                }
            }
        }
        out
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let o = match self.orientation {
            Orientation::Directed => 'D',
            Orientation::Undirected => 'U',
        };
        let p = match self.partisanship {
            Partisanship::Impartial => 'I',
            Partisanship::Partizan => 'P',
        };
        let d = match self.deletion {
            Deletion::Restricted => 'R',
            Deletion::Free => 'F',
        };
        write!(f, "{o}{p}{d}")?;
        if self.max_height != 1 {
            write!(f, "{}", self.max_height)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad variant code {0:?}: expected e.g. DIR, UPF, UIR4")]
pub struct VariantParseError(pub String);

impl FromStr for Variant {
    type Err = VariantParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || VariantParseError(s.to_owned());
        let b = s.trim().as_bytes();
        if b.len() < 3 {
            return Err(err());
        }
        let o = match b[0].to_ascii_uppercase() {
            b'D' => Orientation::Directed,
            b'U' => Orientation::Undirected,
            _ => return Err(err()),
        };
        let p = match b[1].to_ascii_uppercase() {
            b'I' => Partisanship::Impartial,
            b'P' => Partisanship::Partizan,
            _ => return Err(err()),
        };
        let d = match b[2].to_ascii_uppercase() {
            b'R' => Deletion::Restricted,
            b'F' => Deletion::Free,
            _ => return Err(err()),
        };
        let rest = s.trim()[3..].trim_start_matches('_');
        let k = if rest.is_empty() { 1 } else { rest.parse::<u8>().map_err(|_| err())? };
        if k == 0 {
            return Err(err());
        }
        Ok(Variant::new(o, p, d, k))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    #[serde(rename = "L")]
    Left,
    #[serde(rename = "R")]
    Right,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Left => Player::Right,
            Player::Right => Player::Left,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Left => "Left",
            Player::Right => "Right",
        })
    }
}

impl FromStr for Player {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "L" | "l" | "Left" | "left" => Ok(Player::Left),
            "R" | "r" | "Right" | "right" => Ok(Player::Right),
            other => Err(format!("bad player {other:?}: expected L or R")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Tokens {
    Single { token: VertexId },
    Pair { left: VertexId, right: VertexId },
}

impl Tokens {
    /// Vertex of the token `player` moves.
    pub fn of(&self, player: Player) -> VertexId {
        match (*self, player) {
            (Tokens::Single { token }, _) => token,
            (Tokens::Pair { left, .. }, Player::Left) => left,
            (Tokens::Pair { right, .. }, Player::Right) => right,
        }
    }

    /// The token `player` does not move, if any.
    pub fn other(&self, player: Player) -> Option<VertexId> {
        match *self {
            Tokens::Single { .. } => None,
            Tokens::Pair { .. } => Some(self.of(player.opponent())),
        }
    }

    fn moved(&self, player: Player, to: VertexId) -> Tokens {
        match (*self, player) {
            (Tokens::Single { .. }, _) => Tokens::Single { token: to },
            (Tokens::Pair { right, .. }, Player::Left) => Tokens::Pair { left: to, right },
            (Tokens::Pair { left, .. }, Player::Right) => Tokens::Pair { left, right: to },
        }
    }

    pub fn count_on(&self, v: VertexId) -> u8 {
        match *self {
            Tokens::Single { token } => (token == v) as u8,
            Tokens::Pair { left, right } => (left == v) as u8 + (right == v) as u8,
        }
    }
}

/// ⟨from, to, delete⟩; regular when `delete == from`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Move {
    pub from: VertexId,
    pub to: VertexId,
    pub delete: VertexId,
}

impl Move {
    pub fn new(from: impl Into<VertexId>, to: impl Into<VertexId>, delete: impl Into<VertexId>) -> Move {
        Move { from: from.into(), to: to.into(), delete: delete.into() }
    }

    pub fn regular(from: VertexId, to: VertexId) -> Move {
        Move { from, to, delete: from }
    }

    pub fn is_regular(&self) -> bool {
        self.delete == self.from
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.from, self.to, self.delete)
    }
}

impl FromStr for Move {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(format!("expected \"from to delete\", got {s:?}"));
        }
        let mut ids = [VertexId(0); 3];
        for (slot, p) in ids.iter_mut().zip(&parts) {
            *slot = VertexId(p.parse().map_err(|_| format!("bad vertex id {p:?}"))?);
        }
        Ok(Move { from: ids[0], to: ids[1], delete: ids[2] })
    }
}

/// One move per line, "from to delete".
pub fn format_transcript(moves: &[Move]) -> String {
    moves.iter().map(|m| format!("{m}\n")).collect()
}

pub fn parse_transcript(text: &str) -> Result<Vec<Move>, String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::parse)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum IllegalMove {
    #[error("bad source: the mover's token is not on the from vertex")]
    BadSource,
    #[error("bad target: not adjacent to the token or deleted")]
    BadTarget,
    #[error("height rule: target must have height at least (source height - 1)")]
    HeightClimb,
    #[error("occupied target: the other token fills it")]
    OccupiedTarget,
    #[error("bad deletion vertex")]
    BadDeletion,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PositionError {
    #[error("graph is {graph:?} but variant is {variant:?}")]
    OrientationMismatch { graph: Orientation, variant: Orientation },
    #[error("token layout does not match the variant's partisanship")]
    TokenKind,
    #[error("token on missing or deleted vertex {0}")]
    TokenOnDeleted(VertexId),
    #[error("vertex {0} holds more tokens than its height")]
    Crowded(VertexId),
    #[error("vertex {vertex} has height {height} above the variant's {max}")]
    TooHigh { vertex: VertexId, height: u8, max: u8 },
    #[error("max height must be at least 1")]
    ZeroMaxHeight,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PositionJson", into = "PositionJson")]
pub struct Position {
    graph: GameGraph,
    variant: Variant,
    tokens: Tokens,
    to_move: Player,
}

/// Undo record for [`Position::play`].
#[derive(Clone, Copy, Debug)]
pub struct Undo {
    mv: Move,
    tokens: Tokens,
}

impl Position {
    pub fn new(graph: GameGraph, variant: Variant, tokens: Tokens, to_move: Player) -> Result<Position, PositionError> {
        if variant.max_height == 0 {
            return Err(PositionError::ZeroMaxHeight);
        }
        if graph.orientation() != variant.orientation {
            return Err(PositionError::OrientationMismatch { graph: graph.orientation(), variant: variant.orientation });
        }
        match (variant.partisanship, tokens) {
            (Partisanship::Impartial, Tokens::Single { .. }) | (Partisanship::Partizan, Tokens::Pair { .. }) => {}
            _ => return Err(PositionError::TokenKind),
        }
        for v in graph.vertices() {
            let h = graph.height(v);
            if h > variant.max_height {
                return Err(PositionError::TooHigh { vertex: v, height: h, max: variant.max_height });
            }
        }
        for p in [Player::Left, Player::Right] {
            let t = tokens.of(p);
            if !graph.is_live(t) {
                return Err(PositionError::TokenOnDeleted(t));
            }
            if tokens.count_on(t) > graph.height(t) {
                return Err(PositionError::Crowded(t));
            }
        }
        Ok(Position { graph, variant, tokens, to_move })
    }

    pub fn graph(&self) -> &GameGraph {
        &self.graph
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn tokens(&self) -> Tokens {
        self.tokens
    }

    pub fn to_move(&self) -> Player {
        self.to_move
    }

    pub fn height(&self, v: VertexId) -> u8 {
        self.graph.height(v)
    }

    pub fn heights(&self) -> &[u8] {
        self.graph.heights()
    }

    /// Vertex of the token the player to move controls.
    pub fn active_token(&self) -> VertexId {
        self.tokens.of(self.to_move)
    }

    pub fn with_to_move(&self, p: Player) -> Position {
        Position { to_move: p, ..self.clone() }
    }

    /// Same position read under a different variant (validated).
    pub fn with_variant(&self, variant: Variant) -> Result<Position, PositionError> {
        Position::new(self.graph.clone(), variant, self.tokens, self.to_move)
    }

    pub fn legal_moves(&self) -> Vec<Move> {
        let mut out = Vec::new();
        self.moves_into(&mut out);
        out
    }

    /// Appends legal moves sorted by (to, delete).
    pub fn moves_into(&self, out: &mut Vec<Move>) {
        let g = &self.graph;
        let h = g.heights();
        let v = self.active_token();
        let other = self.tokens.other(self.to_move);
        let hv = h[v.index()];
        for &w in g.out_adj(v) {
            let hw = h[w.index()];
            if hw == 0 || hw + 1 < hv {
                continue;
            }
            if other == Some(w) && hw < 2 {
                continue;
            }
            match self.variant.deletion {
                Deletion::Restricted => out.push(Move { from: v, to: w, delete: v }),
                Deletion::Free => {
                    for &u in g.in_adj(w) {
                        let hu = h[u.index()];
                        if hu > (other == Some(u)) as u8 {
                            out.push(Move { from: v, to: w, delete: u });
                        }
                    }
                }
            }
        }
    }

    pub fn has_move(&self) -> bool {
        // The origin is always a legal deletion, so any reachable target gives a move.
        let g = &self.graph;
        let h = g.heights();
        let v = self.active_token();
        let other = self.tokens.other(self.to_move);
        let hv = h[v.index()];
        g.out_adj(v).iter().any(|&w| {
            let hw = h[w.index()];
            hw > 0 && hw + 1 >= hv && !(other == Some(w) && hw < 2)
        })
    }

    /// The player to move if they have no legal move.
    pub fn loser_if_stuck(&self) -> Option<Player> {
        (!self.has_move()).then_some(self.to_move)
    }

    pub fn check_move(&self, m: Move) -> Result<(), IllegalMove> {
        let g = &self.graph;
        let v = self.active_token();
        if m.from != v {
            return Err(IllegalMove::BadSource);
        }
        if m.to.index() >= g.num_vertices() || !g.is_live(m.to) || !g.has_edge(v, m.to) {
            return Err(IllegalMove::BadTarget);
        }
        let (hv, hw) = (g.height(v), g.height(m.to));
        if hw + 1 < hv {
            return Err(IllegalMove::HeightClimb);
        }
        let other = self.tokens.other(self.to_move);
        if other == Some(m.to) && hw < 2 {
            return Err(IllegalMove::OccupiedTarget);
        }
        let u = m.delete;
        let ok = match self.variant.deletion {
            Deletion::Restricted => u == v,
            Deletion::Free => {
                u.index() < g.num_vertices()
                    && g.in_adj(m.to).binary_search(&u).is_ok()
                    && g.height(u) > (other == Some(u)) as u8
            }
        };
        if !ok {
            return Err(IllegalMove::BadDeletion);
        }
        Ok(())
    }

    pub fn apply_move(&self, m: Move) -> Result<Position, IllegalMove> {
        self.check_move(m)?;
        let mut next = self.clone();
        next.play(m);
        Ok(next)
    }

    /// Applies a move already known to be legal, returning an undo record.
    pub fn play(&mut self, m: Move) -> Undo {
        let undo = Undo { mv: m, tokens: self.tokens };
        self.graph.heights_mut()[m.delete.index()] -= 1;
        self.tokens = self.tokens.moved(self.to_move, m.to);
        self.to_move = self.to_move.opponent();
        undo
    }

    pub fn unplay(&mut self, u: Undo) {
        self.graph.heights_mut()[u.mv.delete.index()] += 1;
        self.tokens = u.tokens;
        self.to_move = self.to_move.opponent();
    }

    /// Canonical key: packed heights, token vertices, player to move.
    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.encode_into(&mut out);
        out
    }

    pub fn encode_into(&self, out: &mut Vec<u8>) {
        out.clear();
        let bits = 8 - self.variant.max_height.leading_zeros();
        let mut acc: u32 = 0;
        let mut used = 0;
        for &h in self.graph.heights() {
            acc |= (h as u32) << used;
            used += bits;
            while used >= 8 {
                out.push(acc as u8);
                acc >>= 8;
                used -= 8;
            }
        }
        if used > 0 {
            out.push(acc as u8);
        }
        match self.tokens {
            Tokens::Single { token } => out.extend_from_slice(&token.0.to_le_bytes()),
            Tokens::Pair { left, right } => {
                out.extend_from_slice(&left.0.to_le_bytes());
                out.extend_from_slice(&right.0.to_le_bytes());
            }
        }
        out.push(self.to_move as u8);
    }
}

/// See [`Position::encode`].
pub fn encode_position(p: &Position) -> Vec<u8> {
    p.encode()
}

#[derive(Serialize, Deserialize)]
struct PositionJson {
    #[serde(flatten)]
    graph: GameGraph,
    variant: Variant,
    tokens: Tokens,
    to_move: Player,
}

impl From<Position> for PositionJson {
    fn from(p: Position) -> Self {
        PositionJson { graph: p.graph, variant: p.variant, tokens: p.tokens, to_move: p.to_move }
    }
}

impl TryFrom<PositionJson> for Position {
    type Error = PositionError;

    fn try_from(j: PositionJson) -> Result<Self, PositionError> {
        Position::new(j.graph, j.variant, j.tokens, j.to_move)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Direction, GraphBuilder};

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    fn draw_path() -> Position {
        let mut b = GraphBuilder::new(Orientation::Undirected);
        let ids: Vec<_> = [2, 4, 3, 1, 1].iter().map(|&h| b.add_vertex(h)).collect();
        for w in ids.windows(2) {
            b.add_edge(w[0], w[1]).unwrap();
        }
        let var: Variant = "UIR4".parse().unwrap();
        Position::new(b.build(), var, Tokens::Single { token: v(0) }, Player::Left).unwrap()
    }

    fn triangle(var: &str) -> Position {
        let var: Variant = var.parse().unwrap();
        let mut b = GraphBuilder::new(var.orientation);
        for _ in 0..3 {
            b.add_vertex(1);
        }
        b.add_edge(v(0), v(1)).unwrap();
        b.add_edge(v(1), v(2)).unwrap();
        b.add_edge(v(0), v(2)).unwrap();
        let tokens = if var.is_partizan() { Tokens::Pair { left: v(0), right: v(1) } } else { Tokens::Single { token: v(0) } };
        Position::new(b.build(), var, tokens, Player::Left).unwrap()
    }

    #[test]
    fn variant_codes() {
        for s in ["DIR", "UPF", "UIR4", "DPR2"] {
            assert_eq!(s.parse::<Variant>().unwrap().to_string(), s);
        }
        assert!("XIR".parse::<Variant>().is_err());
        assert!("UIR0".parse::<Variant>().is_err());
        assert_eq!(Variant::all(1).len(), 8);
    }

    #[test]
    fn isolated_vertex_has_no_moves() {
        let mut b = GraphBuilder::new(Orientation::Undirected);
        b.add_vertex(1);
        let p = Position::new(b.build(), "UIR".parse().unwrap(), Tokens::Single { token: v(0) }, Player::Left).unwrap();
        assert!(p.legal_moves().is_empty());
        assert_eq!(p.loser_if_stuck(), Some(Player::Left));
    }

    #[test]
    fn draw_path_forced_line() {
        let mut p = draw_path();
        assert_eq!(p.legal_moves(), vec![Move::new(0u32, 1u32, 0u32)]);
        assert_eq!(p.loser_if_stuck(), None);
        for m in [Move::new(0u32, 1u32, 0u32), Move::new(1u32, 2u32, 1u32), Move::new(2u32, 1u32, 2u32), Move::new(1u32, 2u32, 1u32)] {
            assert_eq!(p.legal_moves(), vec![m]);
            p = p.apply_move(m).unwrap();
        }
        assert_eq!(p.heights(), &[1, 2, 2, 1, 1]);
        assert_eq!(p.active_token(), v(2));
        assert_eq!(p.to_move(), Player::Left);
    }

    #[test]
    fn triangle_free_deletion() {
        let p = triangle("UIF");
        let got: Vec<_> = p.legal_moves().iter().map(|m| (m.from.0, m.to.0, m.delete.0)).collect();
        assert_eq!(got, vec![(0, 1, 0), (0, 1, 2), (0, 2, 0), (0, 2, 1)]);
    }

    #[test]
    fn classic_geography_one_move_per_arc() {
        let p = triangle("DIR");
        assert_eq!(p.legal_moves(), vec![Move::new(0u32, 1u32, 0u32), Move::new(0u32, 2u32, 0u32)]);
    }

    #[test]
    fn regular_deletion_of_height_one() {
        let p = triangle("UIR");
        let q = p.apply_move(Move::new(0u32, 1u32, 0u32)).unwrap();
        assert_eq!(q.height(v(0)), 0);
        assert_eq!(q.graph().neighbors(v(1), Direction::Undirected).unwrap(), vec![v(2)]);
    }

    #[test]
    fn partizan_left_move_keeps_right_token() {
        let p = triangle("UPF");
        assert!(p.legal_moves().iter().all(|m| m.to != v(1)));
        assert!(p.legal_moves().iter().all(|m| m.delete != v(1)));
        let q = p.apply_move(Move::new(0u32, 2u32, 0u32)).unwrap();
        assert_eq!(q.tokens(), Tokens::Pair { left: v(2), right: v(1) });
        assert_eq!(q.to_move(), Player::Right);
    }

    #[test]
    fn reason_codes() {
        let p = draw_path();
        assert_eq!(p.check_move(Move::new(1u32, 2u32, 1u32)), Err(IllegalMove::BadSource));
        assert_eq!(p.check_move(Move::new(0u32, 3u32, 0u32)), Err(IllegalMove::BadTarget));
        assert_eq!(p.check_move(Move::new(0u32, 1u32, 1u32)), Err(IllegalMove::BadDeletion));
        let mut q = p.clone();
        for m in [Move::new(0u32, 1u32, 0u32), Move::new(1u32, 2u32, 1u32)] {
            q = q.apply_move(m).unwrap();
        }
        // token on v3 (height 3): v4 has height 1 < 3 - 1
        assert_eq!(q.check_move(Move::new(2u32, 3u32, 2u32)), Err(IllegalMove::HeightClimb));
        let t = triangle("UPR");
        assert_eq!(t.check_move(Move::new(0u32, 1u32, 0u32)), Err(IllegalMove::OccupiedTarget));
    }

    #[test]
    fn shared_stacked_vertex() {
        let mut b = GraphBuilder::new(Orientation::Directed);
        let a = b.add_vertex(1);
        let c = b.add_vertex(2);
        b.add_edge(a, c).unwrap();
        let var: Variant = "DPF2".parse().unwrap();
        let p = Position::new(b.build(), var, Tokens::Pair { left: a, right: c }, Player::Left).unwrap();
        assert_eq!(p.legal_moves(), vec![Move::new(0u32, 1u32, 0u32)]);
        let q = p.apply_move(Move::new(0u32, 1u32, 0u32)).unwrap();
        assert_eq!(q.tokens(), Tokens::Pair { left: c, right: c });
        assert_eq!(q.loser_if_stuck(), Some(Player::Right));
    }

    #[test]
    fn keys_distinguish() {
        let p = draw_path();
        assert_eq!(encode_position(&p), encode_position(&p.clone()));
        let q = p.apply_move(Move::new(0u32, 1u32, 0u32)).unwrap();
        assert_ne!(encode_position(&p), encode_position(&q));
        assert_ne!(encode_position(&p), encode_position(&p.with_to_move(Player::Right)));
    }

    #[test]
    fn play_unplay_restores() {
        let mut p = triangle("UIF");
        let before = p.clone();
        for m in before.legal_moves() {
            let u = p.play(m);
            p.unplay(u);
            assert_eq!(p, before);
        }
    }

    #[test]
    fn position_json_round_trip() {
        let p = triangle("UPF");
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains("\"to_move\":\"L\""));
        let back: Position = serde_json::from_str(&s).unwrap();
        assert_eq!(p, back);
        let q = draw_path();
        let back: Position = serde_json::from_str(&serde_json::to_string(&q).unwrap()).unwrap();
        assert_eq!(q, back);
    }

    #[test]
    fn invalid_positions() {
        let mut b = GraphBuilder::new(Orientation::Undirected);
        b.add_vertex(1);
        b.add_vertex(0);
        let g = b.build();
        let uir: Variant = "UIR".parse().unwrap();
        assert_eq!(
            Position::new(g.clone(), uir, Tokens::Single { token: v(1) }, Player::Left),
            Err(PositionError::TokenOnDeleted(v(1)))
        );
        assert_eq!(
            Position::new(g.clone(), "UPR".parse().unwrap(), Tokens::Pair { left: v(0), right: v(0) }, Player::Left),
            Err(PositionError::Crowded(v(0)))
        );
        assert_eq!(Position::new(g, "DIR".parse().unwrap(), Tokens::Single { token: v(0) }, Player::Left).unwrap_err(),
            PositionError::OrientationMismatch { graph: Orientation::Undirected, variant: Orientation::Directed });
    }

    #[test]
    fn transcript_round_trip() {
        let ms = vec![Move::new(0u32, 1u32, 0u32), Move::new(1u32, 2u32, 3u32)];
        assert_eq!(parse_transcript(&format_transcript(&ms)).unwrap(), ms);
    }
}
