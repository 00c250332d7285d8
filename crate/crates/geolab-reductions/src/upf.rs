//! Undirected partizan Geography with free deletion from a QBF formula.
//!
//! Vertex order: per variable the 8-cycle (top, top-left, left, bottom-left,
//! bottom, bottom-right, right, top-right) then its 5-vertex path; the
//! selection gadget's bottom, clause vertices, clause deletion paths 1..m;
//! delay path; clause connectors; linkers; escape path; PRIZE; win path.

use geolab_core::qbf::QbfInstance;
use geolab_core::{Deletion, OddCycle, Orientation, Partisanship, Player, Position, Tokens, Variant, VertexId};

use crate::build::Build;
use crate::layout::{PathLinker, UpfLayout, UpfVariable};
use crate::{Gadget, Layout, ReductionArtifact, ReductionError, ReductionKind, Source};

pub const UPF_VARIANT: Variant = Variant::new(Orientation::Undirected, Partisanship::Partizan, Deletion::Free, 1);

pub fn deletion_path_len(m: usize) -> usize {
    m + 3
}

pub fn delay_len(m: usize) -> usize {
    m + 9
}

pub fn connector_len(m: usize) -> usize {
    m
}

pub fn linker_len(m: usize) -> usize {
    m + 3
}

pub fn escape_len(m: usize) -> usize {
    8 * m + 7
}

/// Vertices outside the win path, counted from the construction rules.
pub fn non_win_vertices(n: usize, m: usize) -> usize {
    13 * n + 1 + m + m * deletion_path_len(m) + delay_len(m) + m * connector_len(m) + 3 * m * linker_len(m) + escape_len(m) + 1
}

pub fn win_path_len(n: usize, m: usize) -> usize {
    non_win_vertices(n, m) + 2
}

/// Clause attachments of deletion path `k` (1-based): (0-based index in the
/// path, 0-based clause), skipping the first two and last two vertices.
pub fn deletion_slots(m: usize, k: usize) -> Vec<(usize, usize)> {
    (0..m).filter(|&c| c + 1 != k).enumerate().map(|(s, c)| (s + 2, c)).collect()
}

pub fn tqbf_to_upf(q: &QbfInstance) -> Result<ReductionArtifact, ReductionError> {
    tqbf_to_upf_with_win(q, None)
}

/// As [`tqbf_to_upf`], with the win path length overridden (fault injection).
pub fn tqbf_to_upf_with_win(q: &QbfInstance, win_len: Option<usize>) -> Result<ReductionArtifact, ReductionError> {
    let kind = ReductionKind::Upf;
    let (n, m) = (q.n(), q.m());
    if m < 3 {
        return Err(ReductionError::Precondition { kind, rule: format!("at least 3 clauses, got m={m}") });
    }
    let slots_per_path = deletion_path_len(m) - 4;
    if slots_per_path < m - 1 {
        return Err(ReductionError::Infeasible {
            kind,
            detail: format!("{slots_per_path} interior slots cannot host {} clause attachments", m - 1),
        });
    }
    let mut b = Build::new(kind, Orientation::Undirected);
    let mut vars: Vec<UpfVariable> = Vec::with_capacity(n);
    for i in 1..=n {
        let g = Gadget::Variable { i };
        let names = ["top", "top-left", "left", "bottom-left", "bottom", "bottom-right", "right", "top-right"];
        let cyc = names.map(|s| b.vertex(g.clone(), s, format!("x{i}.{s}"), None));
        for t in 0..8 {
            b.edge(cyc[t], cyc[(t + 1) % 8]);
        }
        let p = b.path(5, g, &format!("x{i}.p"), None);
        let var = UpfVariable {
            top: cyc[0],
            top_left: cyc[1],
            left: cyc[2],
            bottom_left: cyc[3],
            bottom: cyc[4],
            bottom_right: cyc[5],
            right: cyc[6],
            top_right: cyc[7],
            path: [p[0], p[1], p[2], p[3], p[4]],
        };
        b.edge(var.bottom, var.path[4]);
        if let Some(prev) = vars.last() {
            b.edge(prev.bottom, var.path[0]);
            b.edge(prev.path[3], var.top);
        }
        vars.push(var);
    }
    let sel_top = vars[n - 1].bottom;
    let selection_bottom = b.vertex(Gadget::Selection, "bottom", "sel.bottom", None);
    let clauses: Vec<VertexId> = (1..=m).map(|j| b.vertex(Gadget::Clause { j }, "clause", format!("c{j}"), None)).collect();
    let mut deletion_paths = Vec::with_capacity(m);
    let mut slots = Vec::with_capacity(m);
    for k in 1..=m {
        let path = b.path(deletion_path_len(m), Gadget::ClauseDeletion { path: k }, &format!("cdp{k}."), None);
        b.edge(sel_top, path[0]);
        b.edge(*path.last().unwrap(), selection_bottom);
        let s = deletion_slots(m, k);
        for &(idx, c) in &s {
            b.edge(path[idx], clauses[c]);
        }
        deletion_paths.push(path);
        slots.push(s);
    }
    let delay = b.path(delay_len(m), Gadget::Delay, "dly", None);
    b.edge(vars[n - 1].path[3], delay[0]);
    let mut connectors = Vec::with_capacity(m);
    for (j0, &c) in clauses.iter().enumerate() {
        let path = b.path(connector_len(m), Gadget::ClauseConnector { j: j0 + 1 }, &format!("c{}.conn", j0 + 1), None);
        b.edge(*delay.last().unwrap(), path[0]);
        b.edge(*path.last().unwrap(), c);
        connectors.push(path);
    }
    let mut linkers = Vec::with_capacity(m);
    for (j0, clause) in q.clauses().iter().enumerate() {
        let j = j0 + 1;
        let mut ls = Vec::with_capacity(3);
        for (t, &lit) in clause.literals().iter().enumerate() {
            let d = vars[lit.var() - 1];
            let target = if lit.is_positive() { d.right } else { d.left };
            let g = Gadget::Linker { j, occurrence: t + 1, literal: lit.dimacs(), copy: 0 };
            let path = b.path(linker_len(m), g, &format!("c{j}.{}{lit}.", t + 1), None);
            b.edge(clauses[j0], path[0]);
            b.edge(*path.last().unwrap(), target);
            ls.push(PathLinker { literal: lit, copy: 0, path, target });
        }
        linkers.push(ls);
    }
    let escape = b.path(escape_len(m), Gadget::Escape, "esc", None);
    b.edge(selection_bottom, escape[0]);
    let prize = b.vertex(Gadget::Prize, "prize", "PRIZE", None);
    b.edge(prize, escape[2]);
    b.edge(prize, delay[m + 6]);
    let others = b.num_vertices();
    let win = b.path(win_len.unwrap_or(others + 2), Gadget::WinPath, "win", None);
    b.edge(win[0], prize);
    for v in &vars {
        b.edge(win[0], v.path[4]);
    }
    b.claim_family("variable", 13 * n);
    for (k, p) in deletion_paths.iter().enumerate() {
        b.claim(format!("clause deletion path {}", k + 1), deletion_path_len(m), p.len());
    }
    b.claim("delay path", delay_len(m), delay.len());
    b.claim_family("clause_connector", m * connector_len(m));
    b.claim_family("linker", 3 * m * linker_len(m));
    b.claim("escape path", escape_len(m), escape.len());
    b.claim("vertices outside the win path", non_win_vertices(n, m), others);
    if win_len.is_none() {
        b.claim("win path", win_path_len(n, m), win.len());
    }
    let odd_cycle = if n >= 2 {
        let (x, y) = (vars[0], vars[1]);
        Some(OddCycle(vec![
            x.bottom,
            y.path[0],
            y.path[1],
            y.path[2],
            y.path[3],
            y.path[4],
            y.bottom,
            y.bottom_left,
            y.left,
            y.top_left,
            y.top,
            x.path[3],
            x.path[4],
        ]))
    } else {
        None
    };
    let (graph, roles, _, sizes) = b.finish();
    if let Some(c) = &odd_cycle {
        assert!(c.0.len() == 13 && c.is_valid_in(&graph), "UPF construction must contain the 13-cycle through x1 and x2");
    }
    let tokens = Tokens::Pair { left: vars[0].top, right: vars[0].path[0] };
    let position = Position::new(graph, UPF_VARIANT, tokens, Player::Left).expect("fresh graph, distinct token vertices");
    Ok(ReductionArtifact {
        kind,
        position,
        roles,
        claimed_bipartition: None,
        odd_cycle,
        source: Source::Qbf(q.clone()),
        sizes,
        layout: Some(Layout::Upf(UpfLayout {
            vars,
            selection_bottom,
            clauses,
            deletion_paths,
            slots,
            delay,
            connectors,
            linkers,
            escape,
            prize,
            win,
        })),
    })
}
