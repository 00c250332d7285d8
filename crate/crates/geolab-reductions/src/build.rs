use std::collections::BTreeSet;

use geolab_core::{Bipartition, GameGraph, GraphBuilder, Orientation, VertexId};

use crate::{family_counts, Gadget, ReductionKind, SizeClaim, VertexRole};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Part {
    A,
    B,
}

impl Part {
    pub(crate) fn by(even: bool) -> Part {
        if even {
            Part::A
        } else {
            Part::B
        }
    }

    pub(crate) fn flip(self) -> Part {
        match self {
            Part::A => Part::B,
            Part::B => Part::A,
        }
    }
}

/// Graph builder that records a role and, optionally, a side for each vertex.
pub(crate) struct Build {
    kind: ReductionKind,
    g: GraphBuilder,
    roles: Vec<VertexRole>,
    a: BTreeSet<VertexId>,
    b: BTreeSet<VertexId>,
    sizes: Vec<SizeClaim>,
}

impl Build {
    pub(crate) fn new(kind: ReductionKind, orientation: Orientation) -> Self {
        Build { kind, g: GraphBuilder::new(orientation), roles: Vec::new(), a: BTreeSet::new(), b: BTreeSet::new(), sizes: Vec::new() }
    }

    pub(crate) fn vertex(&mut self, gadget: Gadget, slot: impl Into<String>, label: impl Into<String>, part: Option<Part>) -> VertexId {
        self.vertex_h(1, gadget, slot, label, part)
    }

    pub(crate) fn vertex_h(
        &mut self,
        height: u8,
        gadget: Gadget,
        slot: impl Into<String>,
        label: impl Into<String>,
        part: Option<Part>,
    ) -> VertexId {
        let v = self.g.add_labeled(height, label);
        self.roles.push(VertexRole::new(gadget, slot));
        match part {
            Some(Part::A) => self.a.insert(v),
            Some(Part::B) => self.b.insert(v),
            None => false,
        };
        v
    }

    /// A path of `len` vertices named `{prefix}{1..}`; sides alternate from `first`.
    pub(crate) fn path(&mut self, len: usize, gadget: Gadget, prefix: &str, first: Option<Part>) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(len);
        let mut part = first;
        for t in 1..=len {
            let v = self.vertex(gadget.clone(), t.to_string(), format!("{prefix}{t}"), part);
            if let Some(&prev) = out.last() {
                self.edge(prev, v);
            }
            out.push(v);
            part = part.map(Part::flip);
        }
        out
    }

    pub(crate) fn edge(&mut self, a: VertexId, b: VertexId) {
        self.g.add_edge(a, b).unwrap_or_else(|e| panic!("{} construction added a bad edge: {e}", self.kind));
    }

    pub(crate) fn claim(&mut self, component: impl Into<String>, expected: usize, actual: usize) {
        let component = component.into();
        assert_eq!(expected, actual, "{} construction: size of {component}", self.kind);
        self.sizes.push(SizeClaim { component, expected, actual });
    }

    /// Claim for a whole gadget family, counted from the recorded roles.
    pub(crate) fn claim_family(&mut self, family: &str, expected: usize) {
        let actual = family_counts(&self.roles).get(family).copied().unwrap_or(0);
        self.claim(format!("{family} vertices"), expected, actual);
    }

    pub(crate) fn num_vertices(&self) -> usize {
        self.roles.len()
    }

    pub(crate) fn finish(self) -> (GameGraph, Vec<VertexRole>, Bipartition, Vec<SizeClaim>) {
        (self.g.build(), self.roles, Bipartition { part_a: self.a, part_b: self.b }, self.sizes)
    }
}
