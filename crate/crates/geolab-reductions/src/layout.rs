//! Typed handles into built artifacts, used by scripted strategies.

use geolab_core::qbf::Literal;
use geolab_core::VertexId;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Layout {
    Dif(DifLayout),
    Dpf(DpfLayout),
    Upr(UprLayout),
    Upf(UpfLayout),
    /// Pieces 1..5 of the stand-in for each source vertex.
    Uir4(Vec<[VertexId; 5]>),
    /// Copies of each source vertex (empty for deleted ones).
    S2to1(Vec<Vec<VertexId>>),
    U2d,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DifVariable {
    /// Hexagon: two 2-vertex paths from `top` to `bottom`.
    Odd { top: VertexId, l1: VertexId, l2: VertexId, r1: VertexId, r2: VertexId, bottom: VertexId },
    /// Diamond with a pendant bottom under the joining vertex.
    Even { top: VertexId, left: VertexId, right: VertexId, join: VertexId, bottom: VertexId },
}

impl DifVariable {
    pub fn top(&self) -> VertexId {
        match *self {
            DifVariable::Odd { top, .. } | DifVariable::Even { top, .. } => top,
        }
    }

    pub fn bottom(&self) -> VertexId {
        match *self {
            DifVariable::Odd { bottom, .. } | DifVariable::Even { bottom, .. } => bottom,
        }
    }

    /// Vertex whose deletion sets the variable to true.
    pub fn true_mark(&self) -> VertexId {
        match *self {
            DifVariable::Odd { l2, .. } => l2,
            DifVariable::Even { left, .. } => left,
        }
    }

    pub fn false_mark(&self) -> VertexId {
        match *self {
            DifVariable::Odd { r2, .. } => r2,
            DifVariable::Even { right, .. } => right,
        }
    }

    /// The vertex a joining move enters, where the setting is chosen.
    pub fn join(&self) -> VertexId {
        match *self {
            DifVariable::Odd { bottom, .. } => bottom,
            DifVariable::Even { join, .. } => join,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DifOccurrence {
    pub literal: Literal,
    pub extra: Option<VertexId>,
    pub pair: [VertexId; 2],
    pub target: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifLayout {
    pub vars: Vec<DifVariable>,
    pub clauses: Vec<VertexId>,
    pub occurrences: Vec<Vec<DifOccurrence>>,
}

/// Four-vertex diamond; neighbouring gadgets of one player share top and bottom.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Diamond {
    pub top: VertexId,
    pub left: VertexId,
    pub right: VertexId,
    pub bottom: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpfLinker {
    pub literal: Literal,
    pub path: Vec<VertexId>,
    pub ends: [VertexId; 2],
    pub target: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpfLayout {
    pub vars: Vec<Diamond>,
    pub clauses: Vec<VertexId>,
    pub delay: Vec<VertexId>,
    pub deletion: Vec<VertexId>,
    pub escape: Vec<VertexId>,
    pub linkers: Vec<Vec<DpfLinker>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathLinker {
    pub literal: Literal,
    pub copy: usize,
    /// Listed from the clause end.
    pub path: Vec<VertexId>,
    pub target: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UprLayout {
    pub vars: Vec<Diamond>,
    pub clauses: Vec<VertexId>,
    pub selectors: Vec<VertexId>,
    pub part1: Vec<VertexId>,
    pub part2: Vec<VertexId>,
    pub exit: VertexId,
    /// Listed from the EXIT end.
    pub connectors: Vec<Vec<VertexId>>,
    pub linkers: Vec<Vec<PathLinker>>,
    pub escape: Vec<VertexId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UpfVariable {
    pub top: VertexId,
    pub top_left: VertexId,
    pub left: VertexId,
    pub bottom_left: VertexId,
    pub bottom: VertexId,
    pub bottom_right: VertexId,
    pub right: VertexId,
    pub top_right: VertexId,
    pub path: [VertexId; 5],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpfLayout {
    pub vars: Vec<UpfVariable>,
    /// The selection gadget's top is the last diamond's bottom.
    pub selection_bottom: VertexId,
    pub clauses: Vec<VertexId>,
    pub deletion_paths: Vec<Vec<VertexId>>,
    /// Per path: (index in path, clause index) for each clause attachment.
    pub slots: Vec<Vec<(usize, usize)>>,
    pub delay: Vec<VertexId>,
    /// Listed from the delay end.
    pub connectors: Vec<Vec<VertexId>>,
    pub linkers: Vec<Vec<PathLinker>>,
    pub escape: Vec<VertexId>,
    pub prize: VertexId,
    pub win: Vec<VertexId>,
}
