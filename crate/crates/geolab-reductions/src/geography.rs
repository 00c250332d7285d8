//! Reductions between Geography variants: undirected to directed, height 2
//! to height 1, and classic Geography to undirected height-4 Geography.

use geolab_core::{
    check_bipartite, Bipartition, Deletion, GameGraph, Orientation, Partisanship, Player, Position, Tokens, Variant,
    VertexId,
};

use crate::build::{Build, Part};
use crate::{Gadget, Layout, ReductionArtifact, ReductionError, ReductionKind, Source, VertexRole};

/// Heights of the five pieces standing in for one Geography vertex.
pub const UIR4_HEIGHTS: [u8; 5] = [2, 4, 3, 1, 1];

fn meta_roles(g: &GameGraph) -> Vec<VertexRole> {
    g.vertices().map(|v| VertexRole::new(Gadget::Meta { v: v.0, piece: 1 }, "1")).collect()
}

/// Each edge becomes a pair of opposite arcs; everything else is kept.
pub fn undirect_to_direct(p: &Position) -> Result<ReductionArtifact, ReductionError> {
    let kind = ReductionKind::U2d;
    if p.variant().orientation != Orientation::Undirected {
        return Err(ReductionError::Precondition { kind, rule: "an undirected position".into() });
    }
    let g = p.graph();
    let mut arcs = Vec::with_capacity(2 * g.edges().len());
    for &(a, b) in g.edges() {
        arcs.push((a, b));
        arcs.push((b, a));
    }
    let labels = g.vertices().map(|v| g.label(v).map(str::to_owned)).collect();
    let dg = GameGraph::from_parts(Orientation::Directed, g.heights().to_vec(), &arcs, labels)
        .expect("opposite arcs of distinct edges are distinct");
    let var = Variant { orientation: Orientation::Directed, ..p.variant() };
    let position = Position::new(dg, var, p.tokens(), p.to_move()).expect("same heights and tokens");
    Ok(ReductionArtifact {
        kind,
        roles: meta_roles(g),
        position,
        claimed_bipartition: None,
        odd_cycle: None,
        source: Source::Position(p.clone()),
        sizes: Vec::new(),
        layout: Some(Layout::U2d),
    })
}

/// Splits every height-2 vertex into two height-1 copies joined to all copies
/// of its neighbours. A token moves to the highest copy; when two tokens
/// share a vertex, Left takes copy 1 and Right copy 2.
pub fn stack2_to_stack1(p: &Position) -> Result<ReductionArtifact, ReductionError> {
    let kind = ReductionKind::S2to1;
    if p.variant().max_height > 2 {
        return Err(ReductionError::Precondition { kind, rule: format!("max height at most 2, got {}", p.variant().max_height) });
    }
    let g = p.graph();
    let mut b = Build::new(kind, g.orientation());
    let source_parts = check_bipartite(g).ok();
    let mut copies: Vec<Vec<VertexId>> = Vec::with_capacity(g.num_vertices());
    for v in g.vertices() {
        let side = source_parts.as_ref().and_then(|bp| bp.part_of(v)).map(Part::by);
        let cs = (1..=g.height(v))
            .map(|c| b.vertex(Gadget::Meta { v: v.0, piece: c }, c.to_string(), format!("{}_{c}", g.name(v)), side))
            .collect();
        copies.push(cs);
    }
    for &(x, y) in g.edges() {
        for &cx in &copies[x.index()] {
            for &cy in &copies[y.index()] {
                b.edge(cx, cy);
            }
        }
    }
    let expected: usize = g.heights().iter().map(|&h| h as usize).sum();
    b.claim("copies", expected, b.num_vertices());
    let (graph, roles, parts, sizes) = b.finish();
    let place = |player: Player| -> VertexId {
        let v = p.tokens().of(player);
        let cs = &copies[v.index()];
        if p.tokens().count_on(v) == 2 && player == Player::Left {
            cs[0]
        } else {
            *cs.last().expect("tokens sit on live vertices")
        }
    };
    let tokens = match p.tokens() {
        Tokens::Single { .. } => Tokens::Single { token: place(Player::Left) },
        Tokens::Pair { .. } => Tokens::Pair { left: place(Player::Left), right: place(Player::Right) },
    };
    let position = Position::new(graph, p.variant().with_max_height(1), tokens, p.to_move()).expect("copies have height 1");
    Ok(ReductionArtifact {
        kind,
        position,
        roles,
        claimed_bipartition: source_parts.map(|_| parts),
        odd_cycle: None,
        source: Source::Position(p.clone()),
        sizes,
        layout: Some(Layout::S2to1(copies)),
    })
}

/// Each vertex v becomes a path v1..v5 with heights 2,4,3,1,1 and each arc
/// v→w becomes the edge v5–w1. The token moves to t1.
pub fn geography_to_uir4(p: &Position) -> Result<ReductionArtifact, ReductionError> {
    let kind = ReductionKind::Uir4;
    let v0 = p.variant();
    if v0 != Variant::new(Orientation::Directed, Partisanship::Impartial, Deletion::Restricted, 1) {
        return Err(ReductionError::Precondition { kind, rule: format!("a classic Geography (DIR) position, got {v0}") });
    }
    let g = p.graph();
    let source_parts: Option<Bipartition> = check_bipartite(g).ok();
    let mut b = Build::new(kind, Orientation::Undirected);
    let mut meta: Vec<[VertexId; 5]> = Vec::with_capacity(g.num_vertices());
    for v in g.vertices() {
        let live = g.is_live(v);
        let first = source_parts.as_ref().and_then(|bp| bp.part_of(v)).map(Part::by);
        let mut part = first;
        let mut pieces = [VertexId(0); 5];
        for (s, &h) in UIR4_HEIGHTS.iter().enumerate() {
            let h = if live { h } else { 0 };
            pieces[s] = b.vertex_h(h, Gadget::Meta { v: v.0, piece: s as u8 + 1 }, (s + 1).to_string(), format!("{}.{}", g.name(v), s + 1), part);
            if s > 0 {
                b.edge(pieces[s - 1], pieces[s]);
            }
            part = part.map(Part::flip);
        }
        meta.push(pieces);
    }
    for &(x, y) in g.edges() {
        b.edge(meta[x.index()][4], meta[y.index()][0]);
    }
    b.claim("pieces", 5 * g.num_vertices(), b.num_vertices());
    let (graph, roles, parts, sizes) = b.finish();
    let t = p.tokens().of(Player::Left);
    let position = Position::new(
        graph,
        Variant::new(Orientation::Undirected, Partisanship::Impartial, Deletion::Restricted, 4),
        Tokens::Single { token: meta[t.index()][0] },
        p.to_move(),
    )
    .expect("token starts on a live first piece");
    Ok(ReductionArtifact {
        kind,
        position,
        roles,
        claimed_bipartition: source_parts.map(|_| parts),
        odd_cycle: None,
        source: Source::Position(p.clone()),
        sizes,
        layout: Some(Layout::Uir4(meta)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use geolab_core::GraphBuilder;

    fn fig1() -> Position {
        let mut b = GraphBuilder::new(Orientation::Directed);
        let vs: Vec<VertexId> = [2, 2, 1, 1, 2].iter().map(|&h| b.add_vertex(h)).collect();
        for w in vs.windows(2) {
            b.add_edge(w[0], w[1]).unwrap();
        }
        Position::new(b.build(), "DPR2".parse().unwrap(), Tokens::Pair { left: vs[1], right: vs[3] }, Player::Left).unwrap()
    }

    #[test]
    fn height_two_path_splits_into_eight() {
        let a = stack2_to_stack1(&fig1()).unwrap();
        let g = a.position.graph();
        assert_eq!(g.num_vertices(), 8);
        let e: Vec<(u32, u32)> = g.edges().iter().map(|&(x, y)| (x.0, y.0)).collect();
        assert_eq!(e, vec![(0, 2), (0, 3), (1, 2), (1, 3), (2, 4), (3, 4), (4, 5), (5, 6), (5, 7)]);
        assert_eq!(a.position.tokens(), Tokens::Pair { left: VertexId(3), right: VertexId(5) });
        assert_eq!(a.position.variant().to_string(), "DPR");
        assert!(a.claimed_bipartition.unwrap().validate(g).is_ok());
    }

    #[test]
    fn rejects_wrong_inputs() {
        let p = fig1();
        assert!(undirect_to_direct(&p).is_err());
        assert!(geography_to_uir4(&p).is_err());
        let tall = p.with_variant("DPR3".parse().unwrap()).unwrap();
        assert!(stack2_to_stack1(&tall).is_err());
    }
}
