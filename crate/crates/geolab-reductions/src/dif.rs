//! Impartial free-deletion Geography on digraphs from a QBF formula.
//!
//! Vertex order: variable gadgets x1..xn (odd: top, l1, l2, r1, r2, bottom;
//! even: top, left, right, join, bottom), then per clause the clause vertex
//! followed by each occurrence's vertices (extra first for even variables).

use geolab_core::qbf::QbfInstance;
use geolab_core::{Deletion, Orientation, Partisanship, Player, Position, Tokens, Variant};

use crate::build::{Build, Part};
use crate::layout::{DifLayout, DifOccurrence, DifVariable};
use crate::{Gadget, Layout, ReductionArtifact, ReductionError, ReductionKind, Source};

pub const DIF_VARIANT: Variant = Variant::new(Orientation::Directed, Partisanship::Impartial, Deletion::Free, 1);

pub fn tqbf_to_dif(q: &QbfInstance) -> Result<ReductionArtifact, ReductionError> {
    let kind = ReductionKind::Dif;
    let n = q.n();
    let mut b = Build::new(kind, Orientation::Directed);
    let mut vars = Vec::with_capacity(n);
    for i in 1..=n {
        let g = Gadget::Variable { i };
        let mut v = |slot: &str, part| b.vertex(g.clone(), slot, format!("x{i}.{slot}"), Some(part));
        let gadget = if i % 2 == 1 {
            DifVariable::Odd {
                top: v("top", Part::A),
                l1: v("l1", Part::B),
                l2: v("l2", Part::A),
                r1: v("r1", Part::B),
                r2: v("r2", Part::A),
                bottom: v("bottom", Part::B),
            }
        } else {
            DifVariable::Even {
                top: v("top", Part::A),
                left: v("left", Part::B),
                right: v("right", Part::B),
                join: v("join", Part::A),
                bottom: v("bottom", Part::B),
            }
        };
        match gadget {
            DifVariable::Odd { top, l1, l2, r1, r2, bottom } => {
                for (x, y) in [(top, l1), (l1, l2), (l2, bottom), (top, r1), (r1, r2), (r2, bottom)] {
                    b.edge(x, y);
                }
            }
            DifVariable::Even { top, left, right, join, bottom } => {
                for (x, y) in [(top, left), (top, right), (left, join), (right, join), (join, bottom)] {
                    b.edge(x, y);
                }
            }
        }
        if let Some(prev) = vars.last().map(DifVariable::bottom) {
            b.edge(prev, gadget.top());
        }
        vars.push(gadget);
    }
    let last_bottom = vars[n - 1].bottom();
    let mut clauses = Vec::with_capacity(q.m());
    let mut occurrences = Vec::with_capacity(q.m());
    for (j0, clause) in q.clauses().iter().enumerate() {
        let j = j0 + 1;
        let c = b.vertex(Gadget::Clause { j }, "clause", format!("c{j}"), Some(Part::A));
        b.edge(last_bottom, c);
        let mut occ = Vec::with_capacity(3);
        for (t, &lit) in clause.literals().iter().enumerate() {
            let i = lit.var();
            let role = |copy| Gadget::Linker { j, occurrence: t + 1, literal: lit.dimacs(), copy };
            let gadget = vars[i - 1];
            let target = match gadget {
                DifVariable::Odd { l2, r2, .. } => {
                    if lit.is_positive() {
                        l2
                    } else {
                        r2
                    }
                }
                DifVariable::Even { left, right, .. } => {
                    if lit.is_positive() {
                        right
                    } else {
                        left
                    }
                }
            };
            let (extra, pair_part) = if i % 2 == 0 {
                let e = b.vertex(role(0), "extra", format!("c{j}.{}{lit}.e", t + 1), Some(Part::B));
                b.edge(c, e);
                (Some(e), Part::A)
            } else {
                (None, Part::B)
            };
            let from = extra.unwrap_or(c);
            let pair = [1, 2].map(|copy| {
                let v = b.vertex(role(copy), "literal", format!("c{j}.{}{lit}.{copy}", t + 1), Some(pair_part));
                b.edge(from, v);
                b.edge(v, target);
                v
            });
            occ.push(DifOccurrence { literal: lit, extra, pair, target });
        }
        clauses.push(c);
        occurrences.push(occ);
    }
    let odd = n.div_ceil(2);
    b.claim_family("variable", 6 * odd + 5 * (n - odd));
    let even_occ = q.clauses().iter().flat_map(|c| c.literals()).filter(|l| l.var() % 2 == 0).count();
    b.claim("clause gadgets", 7 * q.m() + even_occ, b.num_vertices() - 6 * odd - 5 * (n - odd));
    let (graph, roles, parts, sizes) = b.finish();
    let position = Position::new(graph, DIF_VARIANT, Tokens::Single { token: vars[0].top() }, Player::Left)
        .expect("fresh graph with one token");
    Ok(ReductionArtifact {
        kind,
        position,
        roles,
        claimed_bipartition: Some(parts),
        odd_cycle: None,
        source: Source::Qbf(q.clone()),
        sizes,
        layout: Some(Layout::Dif(DifLayout { vars, clauses, occurrences })),
    })
}
