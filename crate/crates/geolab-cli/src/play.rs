use std::io::{BufRead, Write};

use geolab_core::solver::matching_applicable;
use geolab_core::{best_move, solve_by_matching, GameGraph, Move, Player, Position, SolveError, Tokens};
use geolab_verify::Strategy;

use crate::config::Config;
use crate::input::{describe, parse_move};
use crate::Ai;

fn marker(t: Tokens, v: geolab_core::VertexId) -> &'static str {
    match t {
        Tokens::Single { token } if token == v => "[T]",
        Tokens::Pair { left, right } if left == v && right == v => "[LR]",
        Tokens::Pair { left, .. } if left == v => "[L]",
        Tokens::Pair { right, .. } if right == v => "[R]",
        _ => "",
    }
}

/// Live vertices as name:height with token markers, then the mover's options.
pub fn render(p: &Position) -> String {
    let g: &GameGraph = p.graph();
    let cells: Vec<String> = g
        .vertices()
        .filter(|&v| p.height(v) > 0)
        .map(|v| format!("{}:{}{}", g.name(v), p.height(v), marker(p.tokens(), v)))
        .collect();
    let mut targets: Vec<String> = p.legal_moves().iter().map(|m| g.name(m.to)).collect();
    targets.dedup();
    format!(
        "board: {}\n{} to move from {}; targets: {}\n",
        cells.join(" "),
        p.to_move(),
        g.name(p.active_token()),
        if targets.is_empty() { "none".into() } else { targets.join(" ") }
    )
}

struct Opponent {
    ai: Ai,
    budget: u64,
    random: Strategy,
}

impl Opponent {
    fn choose(&mut self, p: &Position) -> (Move, Option<String>) {
        let first = || p.legal_moves()[0];
        match self.ai {
            Ai::Random => (self.random.next_move(p).expect("random play always has a move"), None),
            Ai::Matching => match solve_by_matching(p) {
                Ok(r) => (r.optimal_move.unwrap_or_else(first), None),
                Err(e) => (first(), Some(format!("matching solver unavailable ({e}); playing the first legal move"))),
            },
            Ai::Search => match best_move(p, self.budget) {
                Ok(m) => (m.unwrap_or_else(first), None),
                Err(SolveError::BudgetExhausted { budget }) => {
                    (first(), Some(format!("search budget of {budget} nodes exhausted; playing the first legal move")))
                }
                Err(e) => (first(), Some(e.to_string())),
            },
        }
    }
}

/// Terminal game loop. Returns the exit code; EOF or "quit" ends the game early.
pub fn run(mut p: Position, human: Player, ai: Ai, cfg: &Config, input: impl BufRead, mut out: impl Write) -> Result<u8, String> {
    if ai == Ai::Matching {
        matching_applicable(&p).map_err(|e| format!("--ai matching refused: {e}"))?;
    }
    let mut opp = Opponent { ai, budget: cfg.node_budget, random: Strategy::uniform_random(cfg.seed) };
    let mut lines = input.lines();
    let io = |e: std::io::Error| e.to_string();
    writeln!(out, "You are {human} on {}. Enter moves as \"from to delete\" (ids or names); \"quit\" ends the game.", p.variant())
        .map_err(io)?;
    loop {
        write!(out, "{}", render(&p)).map_err(io)?;
        if !p.has_move() {
            let msg = if p.to_move() == human { "You lose: no legal move." } else { "You win: the computer has no legal move." };
            writeln!(out, "{msg}").map_err(io)?;
            return Ok(0);
        }
        if p.to_move() != human {
            let (m, note) = opp.choose(&p);
            if let Some(n) = note {
                writeln!(out, "note: {n}").map_err(io)?;
            }
            writeln!(out, "computer plays {}", describe(p.graph(), m)).map_err(io)?;
            p = p.apply_move(m).map_err(|e| format!("computer move rejected: {e}"))?;
            continue;
        }
        loop {
            write!(out, "{human}> ").map_err(io)?;
            out.flush().map_err(io)?;
            let Some(line) = lines.next() else {
                writeln!(out, "\ninput closed").map_err(io)?;
                return Ok(0);
            };
            let line = line.map_err(io)?;
            match line.trim() {
                "" => continue,
                "quit" | "q" => return Ok(0),
                "moves" => {
                    for m in p.legal_moves() {
                        writeln!(out, "  {}", describe(p.graph(), m)).map_err(io)?;
                    }
                    continue;
                }
                _ => {}
            }
            let m = match parse_move(p.graph(), &line) {
                Ok(m) => m,
                Err(e) => {
                    writeln!(out, "cannot read move: {e}. Try again (\"moves\" lists them).").map_err(io)?;
                    continue;
                }
            };
            if let Err(e) = p.check_move(m) {
                writeln!(out, "illegal move: {e}. Try again.").map_err(io)?;
                continue;
            }
            debug_assert!(p.legal_moves().contains(&m));
            p = p.apply_move(m).map_err(|e| e.to_string())?;
            break;
        }
    }
}
