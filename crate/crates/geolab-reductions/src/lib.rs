//! Gadget constructions that turn QBF formulas and Geography positions into
//! positions of other Geography variants.
//!
//! Every generator returns a [`ReductionArtifact`]: the built position, one
//! [`VertexRole`] per vertex, the bipartition the construction promises (when
//! it promises one) and a list of component sizes checked against their
//! closed-form counts. Vertex ids are handed out gadget by gadget in a fixed
//! order, so equal inputs give identical artifacts.

mod build;
pub mod dif;
pub mod dpf;
pub mod geography;
pub mod layout;
pub mod upf;
pub mod upr;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use geolab_core::dot::position_to_dot;
use geolab_core::qbf::QbfInstance;
use geolab_core::{Bipartition, OddCycle, Position, VertexId};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use dif::tqbf_to_dif;
pub use dpf::tqbf_to_dpf;
pub use geography::{geography_to_uir4, stack2_to_stack1, undirect_to_direct};
pub use layout::Layout;
pub use upf::tqbf_to_upf;
pub use upr::tqbf_to_upr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum ReductionKind {
    Dif,
    Dpf,
    Upr,
    Upf,
    Uir4,
    U2d,
    S2to1,
}

impl ReductionKind {
    pub const ALL: [ReductionKind; 7] = [
        ReductionKind::Dif,
        ReductionKind::Dpf,
        ReductionKind::Upr,
        ReductionKind::Upf,
        ReductionKind::Uir4,
        ReductionKind::U2d,
        ReductionKind::S2to1,
    ];

    /// Whether the source is a QBF formula (otherwise a Geography position).
    pub fn from_formula(self) -> bool {
        matches!(self, ReductionKind::Dif | ReductionKind::Dpf | ReductionKind::Upr | ReductionKind::Upf)
    }
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ReductionKind::Dif => "DIF",
            ReductionKind::Dpf => "DPF",
            ReductionKind::Upr => "UPR",
            ReductionKind::Upf => "UPF",
            ReductionKind::Uir4 => "UIR4",
            ReductionKind::U2d => "U2D",
            ReductionKind::S2to1 => "S2TO1",
        };
        f.write_str(s)
    }
}

impl FromStr for ReductionKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ReductionKind::ALL
            .into_iter()
            .find(|k| k.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown reduction kind {s:?} (expected one of dif, dpf, upr, upf, uir4, u2d, s2to1)"))
    }
}

/// Which structure a vertex belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "gadget")]
pub enum Gadget {
    Variable { i: usize },
    Clause { j: usize },
    /// Non-clause side of a complete bipartite clause selection gadget, or
    /// the bottom vertex of a path-based one.
    Selection,
    Delay,
    ClauseDeletion { path: usize },
    Escape,
    /// Per literal occurrence: `occurrence` is the position inside clause `j`.
    Linker { j: usize, occurrence: usize, literal: i32, copy: usize },
    ClauseConnector { j: usize },
    Exit,
    Prize,
    WinPath,
    /// Piece `piece` (1-based) of the stand-in for source vertex `v`.
    Meta { v: u32, piece: u8 },
    Other { tag: String },
}

impl Gadget {
    /// Short family name used for colors and size tallies.
    pub fn family(&self) -> &'static str {
        match self {
            Gadget::Variable { .. } => "variable",
            Gadget::Clause { .. } => "clause",
            Gadget::Selection => "selection",
            Gadget::Delay => "delay",
            Gadget::ClauseDeletion { .. } => "clause_deletion",
            Gadget::Escape => "escape",
            Gadget::Linker { .. } => "linker",
            Gadget::ClauseConnector { .. } => "clause_connector",
            Gadget::Exit => "exit",
            Gadget::Prize => "prize",
            Gadget::WinPath => "win_path",
            Gadget::Meta { .. } => "meta",
            Gadget::Other { .. } => "other",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexRole {
    #[serde(flatten)]
    pub gadget: Gadget,
    pub slot: String,
}

impl VertexRole {
    pub fn new(gadget: Gadget, slot: impl Into<String>) -> Self {
        VertexRole { gadget, slot: slot.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Qbf(QbfInstance),
    Position(Position),
}

/// A component whose vertex count the construction fixes in advance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeClaim {
    pub component: String,
    pub expected: usize,
    pub actual: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("{kind} needs {rule}")]
    Precondition { kind: ReductionKind, rule: String },
    #[error("{kind}: {detail}")]
    Infeasible { kind: ReductionKind, detail: String },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReductionArtifact {
    pub kind: ReductionKind,
    #[serde(flatten)]
    pub position: Position,
    #[serde(with = "roles_json")]
    pub roles: Vec<VertexRole>,
    #[serde(rename = "bipartition", default, skip_serializing_if = "Option::is_none")]
    pub claimed_bipartition: Option<Bipartition>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub odd_cycle: Option<OddCycle>,
    pub source: Source,
    #[serde(default)]
    pub sizes: Vec<SizeClaim>,
    /// Typed vertex handles for strategies; not serialized, see [`ReductionArtifact::rebuild`].
    #[serde(skip)]
    pub layout: Option<Layout>,
}

impl PartialEq for ReductionArtifact {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.position == other.position
            && self.roles == other.roles
            && self.claimed_bipartition == other.claimed_bipartition
            && self.odd_cycle == other.odd_cycle
            && self.source == other.source
            && self.sizes == other.sizes
    }
}

impl ReductionArtifact {
    pub fn role(&self, v: VertexId) -> &VertexRole {
        &self.roles[v.index()]
    }

    /// Vertices whose role satisfies `pred`, in id order.
    pub fn vertices_where(&self, pred: impl Fn(&VertexRole) -> bool) -> Vec<VertexId> {
        (0..self.roles.len()).filter(|&i| pred(&self.roles[i])).map(VertexId::from).collect()
    }

    /// Regenerates the artifact from its recorded source, restoring the layout.
    pub fn rebuild(&self) -> Result<ReductionArtifact, ReductionError> {
        match (&self.source, self.kind) {
            (Source::Qbf(q), ReductionKind::Dif) => tqbf_to_dif(q),
            (Source::Qbf(q), ReductionKind::Dpf) => tqbf_to_dpf(q),
            (Source::Qbf(q), ReductionKind::Upr) => tqbf_to_upr(q),
            (Source::Qbf(q), ReductionKind::Upf) => tqbf_to_upf(q),
            (Source::Position(p), ReductionKind::Uir4) => geography_to_uir4(p),
            (Source::Position(p), ReductionKind::U2d) => undirect_to_direct(p),
            (Source::Position(p), ReductionKind::S2to1) => stack2_to_stack1(p),
            (_, kind) => Err(ReductionError::Precondition { kind, rule: "a source matching the reduction kind".into() }),
        }
    }

    pub fn to_dot(&self) -> String {
        position_to_dot(&self.position, &|v| Some(role_color(&self.roles[v.index()].gadget).to_string()))
    }
}

pub fn role_color(g: &Gadget) -> &'static str {
    match g {
        Gadget::Variable { .. } => "lightblue",
        Gadget::Clause { .. } => "gold",
        Gadget::Selection => "khaki",
        Gadget::Delay => "palegreen",
        Gadget::ClauseDeletion { .. } => "lightsalmon",
        Gadget::Escape => "plum",
        Gadget::Linker { .. } => "lightgray",
        Gadget::ClauseConnector { .. } => "wheat",
        Gadget::Exit => "orange",
        Gadget::Prize => "red",
        Gadget::WinPath => "pink",
        Gadget::Meta { .. } => "lightcyan",
        Gadget::Other { .. } => "white",
    }
}

/// Roles go out as an object keyed by vertex id, like graph labels.
mod roles_json {
    use std::collections::BTreeMap;

    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::VertexRole;

    pub fn serialize<S: Serializer>(roles: &[VertexRole], s: S) -> Result<S::Ok, S::Error> {
        let m: super::BTreeMap<String, &VertexRole> = roles.iter().enumerate().map(|(i, r)| (i.to_string(), r)).collect();
        m.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<VertexRole>, D::Error> {
        let m = BTreeMap::<String, VertexRole>::deserialize(d)?;
        let mut out: Vec<Option<VertexRole>> = vec![None; m.len()];
        for (k, r) in m {
            let i: usize = k.parse().map_err(|_| D::Error::custom(format!("bad role key {k:?}")))?;
            let slot = out.get_mut(i).ok_or_else(|| D::Error::custom(format!("role key {i} out of range")))?;
            *slot = Some(r);
        }
        Ok(out.into_iter().map(Option::unwrap).collect())
    }
}

/// Number of vertices per gadget family.
pub fn family_counts(roles: &[VertexRole]) -> BTreeMap<&'static str, usize> {
    let mut m = BTreeMap::new();
    for r in roles {
        *m.entry(r.gadget.family()).or_insert(0) += 1;
    }
    m
}
