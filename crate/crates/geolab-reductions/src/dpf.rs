//! Partizan free-deletion Geography on digraphs from a QBF formula.
//!
//! Vertex order: diamonds x1..xn (a shared top is created once, by the lower
//! gadget), clause vertices, delay path, clause deletion path, escape path,
//! then the linkers clause by clause.

use geolab_core::qbf::QbfInstance;
use geolab_core::{Deletion, Orientation, Partisanship, Player, Position, Tokens, Variant, VertexId};

use crate::build::{Build, Part};
use crate::layout::{Diamond, DpfLayout, DpfLinker};
use crate::{Gadget, Layout, ReductionArtifact, ReductionError, ReductionKind, Source};

pub const DPF_VARIANT: Variant = Variant::new(Orientation::Directed, Partisanship::Partizan, Deletion::Free, 1);

/// Diamonds chained per player: the bottom of x_i is the top of x_{i+2}.
pub(crate) fn diamonds(b: &mut Build, n: usize, parts: impl Fn(usize) -> (Part, Part)) -> Vec<Diamond> {
    let mut out: Vec<Diamond> = Vec::with_capacity(n);
    for i in 1..=n {
        let g = Gadget::Variable { i };
        let (outer, inner) = parts(i);
        let top = if i > 2 {
            out[i - 3].bottom
        } else {
            b.vertex(g.clone(), "top", format!("x{i}.top"), Some(outer))
        };
        let left = b.vertex(g.clone(), "left", format!("x{i}.left"), Some(inner));
        let right = b.vertex(g.clone(), "right", format!("x{i}.right"), Some(inner));
        let bottom = b.vertex(g, "bottom", format!("x{i}.bottom"), Some(outer));
        for (x, y) in [(top, left), (top, right), (left, bottom), (right, bottom)] {
            b.edge(x, y);
        }
        out.push(Diamond { top, left, right, bottom });
    }
    out
}

pub fn tqbf_to_dpf(q: &QbfInstance) -> Result<ReductionArtifact, ReductionError> {
    let kind = ReductionKind::Dpf;
    let (n, m) = (q.n(), q.m());
    if m < 4 || m % 2 == 1 {
        return Err(ReductionError::Precondition { kind, rule: format!("an even clause count of at least 4, got m={m}") });
    }
    let mut b = Build::new(kind, Orientation::Directed);
    let vars = diamonds(&mut b, n, |_| (Part::A, Part::B));
    let clauses: Vec<VertexId> =
        (1..=m).map(|j| b.vertex(Gadget::Clause { j }, "clause", format!("c{j}"), Some(Part::A))).collect();
    let delay = b.path(2 * m - 3, Gadget::Delay, "dly", Some(Part::B));
    b.edge(vars[n - 2].bottom, delay[0]);
    for &c in &clauses {
        b.edge(delay[2 * m - 4], c);
    }
    let deletion = b.path(2 * m - 3, Gadget::ClauseDeletion { path: 1 }, "dlt", Some(Part::B));
    b.edge(vars[n - 1].bottom, deletion[0]);
    for &c in &clauses {
        for &k in deletion.iter().step_by(2) {
            b.edge(c, k);
        }
    }
    let escape = b.path(m - 1, Gadget::Escape, "esc", Some(Part::A));
    b.edge(deletion[2 * m - 4], escape[0]);
    let mut linkers = Vec::with_capacity(m);
    for (j0, clause) in q.clauses().iter().enumerate() {
        let j = j0 + 1;
        let mut ls = Vec::with_capacity(3);
        for (t, &lit) in clause.literals().iter().enumerate() {
            let g = Gadget::Linker { j, occurrence: t + 1, literal: lit.dimacs(), copy: 0 };
            let d = vars[lit.var() - 1];
            let target = if lit.is_positive() { d.right } else { d.left };
            let path = b.path(m - 3, g.clone(), &format!("c{j}.{}{lit}.", t + 1), Some(Part::B));
            b.edge(clauses[j0], path[0]);
            let ends = ["a", "b"].map(|s| {
                let v = b.vertex(g.clone(), format!("end-{s}"), format!("c{j}.{}{lit}.{s}", t + 1), Some(Part::A));
                b.edge(path[m - 4], v);
                b.edge(v, target);
                v
            });
            ls.push(DpfLinker { literal: lit, path, ends, target });
        }
        linkers.push(ls);
    }
    b.claim_family("variable", 3 * n + 2);
    b.claim("delay path", 2 * m - 3, delay.len());
    b.claim("clause deletion path", 2 * m - 3, deletion.len());
    b.claim("escape path", m - 1, escape.len());
    b.claim("linker path", m - 3, linkers[0][0].path.len());
    b.claim_family("linker", 3 * m * (m - 1));
    let (graph, roles, parts, sizes) = b.finish();
    let tokens = Tokens::Pair { left: vars[0].top, right: vars[1].top };
    let position = Position::new(graph, DPF_VARIANT, tokens, Player::Left).expect("fresh graph, distinct token vertices");
    Ok(ReductionArtifact {
        kind,
        position,
        roles,
        claimed_bipartition: Some(parts),
        odd_cycle: None,
        source: Source::Qbf(q.clone()),
        sizes,
        layout: Some(Layout::Dpf(DpfLayout { vars, clauses, delay, deletion, escape, linkers })),
    })
}
