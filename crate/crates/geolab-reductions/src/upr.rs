//! Undirected partizan Geography with restricted deletion from a QBF formula.
//!
//! Vertex order: diamonds x1..xn, clause vertices, the other side of the
//! clause selection gadget, delay Part I, delay Part II, EXIT, clause
//! connectors, linkers (two copies per literal occurrence), escape path.

use geolab_core::qbf::{Literal, QbfInstance};
use geolab_core::{Deletion, Orientation, Partisanship, Player, Position, Tokens, Variant, VertexId};

use crate::build::{Build, Part};
use crate::dpf::diamonds;
use crate::layout::{PathLinker, UprLayout};
use crate::{Gadget, Layout, ReductionArtifact, ReductionError, ReductionKind, Source};

pub const UPR_VARIANT: Variant = Variant::new(Orientation::Undirected, Partisanship::Partizan, Deletion::Restricted, 1);

/// Component sizes as functions of (n, m).
pub fn delay_side(n: usize, m: usize) -> usize {
    m + n / 2 + 5
}

pub fn connector_len(n: usize) -> usize {
    n + 4
}

/// Linker length for a literal on variable `i`.
pub fn linker_len(n: usize, i: usize) -> usize {
    if i % 2 == 1 {
        n + 2
    } else {
        n + 7
    }
}

pub fn escape_len(n: usize) -> usize {
    3 * n + 25
}

pub fn tqbf_to_upr(q: &QbfInstance) -> Result<ReductionArtifact, ReductionError> {
    let kind = ReductionKind::Upr;
    let (n, m) = (q.n(), q.m());
    if n < 4 {
        return Err(ReductionError::Precondition { kind, rule: format!("at least 4 variables, got n={n}") });
    }
    if m < 2 {
        return Err(ReductionError::Precondition { kind, rule: format!("at least 2 clauses, got m={m}") });
    }
    for i in 1..=n {
        for lit in [Literal::new(i, true), Literal::new(i, false)] {
            if !q.mentions(lit) {
                return Err(ReductionError::Precondition { kind, rule: format!("every literal to appear in some clause, {lit} does not") });
            }
        }
    }
    let mut b = Build::new(kind, Orientation::Undirected);
    let vars = diamonds(&mut b, n, |i| if i % 2 == 1 { (Part::A, Part::B) } else { (Part::B, Part::A) });
    let clauses: Vec<VertexId> =
        (1..=m).map(|j| b.vertex(Gadget::Clause { j }, "clause", format!("c{j}"), Some(Part::A))).collect();
    let selectors: Vec<VertexId> =
        (1..m).map(|s| b.vertex(Gadget::Selection, s.to_string(), format!("sel{s}"), Some(Part::B))).collect();
    for &c in &clauses {
        b.edge(vars[n - 1].bottom, c);
        for &s in &selectors {
            b.edge(c, s);
        }
    }
    let a = delay_side(n, m);
    let part1: Vec<VertexId> =
        (1..=a).map(|s| b.vertex(Gadget::Delay, format!("I{s}"), format!("dly.I{s}"), Some(Part::B))).collect();
    let part2: Vec<VertexId> =
        (1..=a).map(|s| b.vertex(Gadget::Delay, format!("II{s}"), format!("dly.II{s}"), Some(Part::A))).collect();
    for &x in &part1 {
        b.edge(vars[n - 2].bottom, x);
        for &y in &part2 {
            b.edge(x, y);
        }
    }
    let exit = b.vertex(Gadget::Exit, "exit", "EXIT", Some(Part::B));
    b.edge(vars[n - 2].bottom, exit);
    for &y in &part2 {
        b.edge(exit, y);
    }
    let mut connectors = Vec::with_capacity(m);
    for (j0, &c) in clauses.iter().enumerate() {
        let path = b.path(connector_len(n), Gadget::ClauseConnector { j: j0 + 1 }, &format!("c{}.conn", j0 + 1), Some(Part::A));
        b.edge(exit, path[0]);
        b.edge(*path.last().unwrap(), c);
        connectors.push(path);
    }
    let mut linkers = Vec::with_capacity(m);
    for (j0, clause) in q.clauses().iter().enumerate() {
        let j = j0 + 1;
        let mut ls = Vec::with_capacity(6);
        for (t, &lit) in clause.literals().iter().enumerate() {
            let d = vars[lit.var() - 1];
            let target = if lit.is_positive() { d.right } else { d.left };
            for copy in 1..=2 {
                let g = Gadget::Linker { j, occurrence: t + 1, literal: lit.dimacs(), copy };
                let path = b.path(linker_len(n, lit.var()), g, &format!("c{j}.{}{lit}.{copy}.", t + 1), Some(Part::B));
                b.edge(clauses[j0], path[0]);
                b.edge(*path.last().unwrap(), target);
                ls.push(PathLinker { literal: lit, copy, path, target });
            }
        }
        linkers.push(ls);
    }
    let escape = b.path(escape_len(n), Gadget::Escape, "esc", Some(Part::A));
    for &s in &selectors {
        b.edge(s, escape[0]);
    }
    b.claim_family("variable", 3 * n + 2);
    b.claim("delay Part I", a, part1.len());
    b.claim("delay Part II", a, part2.len());
    for (j0, c) in connectors.iter().enumerate() {
        b.claim(format!("clause connector c{}", j0 + 1), connector_len(n), c.len());
    }
    let linker_total = q.clauses().iter().flat_map(|c| c.literals()).map(|l| 2 * linker_len(n, l.var())).sum();
    b.claim_family("linker", linker_total);
    b.claim("escape path", escape_len(n), escape.len());
    let (graph, roles, parts, sizes) = b.finish();
    let tokens = Tokens::Pair { left: vars[0].top, right: vars[1].top };
    let position = Position::new(graph, UPR_VARIANT, tokens, Player::Left).expect("fresh graph, distinct token vertices");
    Ok(ReductionArtifact {
        kind,
        position,
        roles,
        claimed_bipartition: Some(parts),
        odd_cycle: None,
        source: Source::Qbf(q.clone()),
        sizes,
        layout: Some(Layout::Upr(UprLayout { vars, clauses, selectors, part1, part2, exit, connectors, linkers, escape })),
    })
}
