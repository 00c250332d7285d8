//! Boards: vertices carrying stack heights, joined by arcs or edges.
//!
//! A deleted vertex keeps its id with height 0 so that move transcripts stay
//! valid across the whole game.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for VertexId {
    fn from(i: usize) -> Self {
        VertexId(u32::try_from(i).expect("vertex index fits in u32"))
    }
}

impl From<u32> for VertexId {
    fn from(i: u32) -> Self {
        VertexId(i)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Directed,
    Undirected,
}

/// Neighbor selector for [`GameGraph::neighbors`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Successors,
    Predecessors,
    Undirected,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} does not exist")]
    NoSuchVertex(VertexId),
    #[error("vertex {0} is deleted (height 0)")]
    DeletedVertex(VertexId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("edge {0}-{1} not present")]
    MissingEdge(VertexId, VertexId),
    #[error("bad label key {0:?}")]
    BadLabelKey(String),
}

#[derive(Debug, PartialEq, Eq)]
struct Topology {
    orientation: Orientation,
    /// Successors (directed) or neighbors (undirected), sorted.
    out: Vec<Vec<VertexId>>,
    /// Predecessors, sorted; empty for undirected graphs.
    inc: Vec<Vec<VertexId>>,
    /// Arcs as given, or edges normalized to (min, max); sorted.
    edges: Vec<(VertexId, VertexId)>,
    labels: Vec<Option<String>>,
}

/// Immutable adjacency shared between copies, plus per-copy heights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct GameGraph {
    topo: Arc<Topology>,
    heights: Vec<u8>,
}

impl GameGraph {
    pub fn from_parts(
        orientation: Orientation,
        heights: Vec<u8>,
        edges: &[(VertexId, VertexId)],
        labels: Vec<Option<String>>,
    ) -> Result<GameGraph, GraphError> {
        let mut b = GraphBuilder::new(orientation);
        for (i, h) in heights.iter().enumerate() {
            let v = b.add_vertex(*h);
            if let Some(Some(l)) = labels.get(i) {
                b.set_label(v, l.clone());
            }
        }
        for &(a, c) in edges {
            b.add_edge(a, c)?;
        }
        Ok(b.build())
    }

    pub fn orientation(&self) -> Orientation {
        self.topo.orientation
    }

    pub fn is_directed(&self) -> bool {
        self.topo.orientation == Orientation::Directed
    }

    pub fn num_vertices(&self) -> usize {
        self.heights.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.heights.len()).map(VertexId::from)
    }

    pub fn live_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices().filter(|v| self.heights[v.index()] > 0)
    }

    #[inline]
    pub fn height(&self, v: VertexId) -> u8 {
        self.heights[v.index()]
    }

    #[inline]
    pub fn is_live(&self, v: VertexId) -> bool {
        self.heights.get(v.index()).is_some_and(|&h| h > 0)
    }

    pub fn heights(&self) -> &[u8] {
        &self.heights
    }

    pub(crate) fn heights_mut(&mut self) -> &mut [u8] {
        &mut self.heights
    }

    /// Same adjacency with a new height vector.
    pub fn with_heights(&self, heights: Vec<u8>) -> GameGraph {
        assert_eq!(heights.len(), self.heights.len());
        GameGraph { topo: Arc::clone(&self.topo), heights }
    }

    pub fn max_height(&self) -> u8 {
        self.heights.iter().copied().max().unwrap_or(0)
    }

    pub fn total_height(&self) -> u64 {
        self.heights.iter().map(|&h| h as u64).sum()
    }

    /// Raw successor (or neighbor) list, deleted vertices included.
    #[inline]
    pub fn out_adj(&self, v: VertexId) -> &[VertexId] {
        &self.topo.out[v.index()]
    }

    /// Raw predecessor (or neighbor) list, deleted vertices included.
    #[inline]
    pub fn in_adj(&self, v: VertexId) -> &[VertexId] {
        match self.topo.orientation {
            Orientation::Directed => &self.topo.inc[v.index()],
            Orientation::Undirected => &self.topo.out[v.index()],
        }
    }

    /// Live neighbors of a live vertex in the requested sense.
    pub fn neighbors(&self, v: VertexId, dir: Direction) -> Result<Vec<VertexId>, GraphError> {
        self.check_live(v)?;
        let raw = match (self.topo.orientation, dir) {
            (Orientation::Undirected, _) => self.out_adj(v),
            (Orientation::Directed, Direction::Successors) => self.out_adj(v),
            (Orientation::Directed, Direction::Predecessors) => self.in_adj(v),
            (Orientation::Directed, Direction::Undirected) => {
                let mut all: Vec<VertexId> = self
                    .out_adj(v)
                    .iter()
                    .chain(self.in_adj(v))
                    .copied()
                    .filter(|&w| self.is_live(w))
                    .collect();
                all.sort_unstable();
                all.dedup();
                return Ok(all);
            }
        };
        Ok(raw.iter().copied().filter(|&w| self.is_live(w)).collect())
    }

    pub fn check_live(&self, v: VertexId) -> Result<(), GraphError> {
        match self.heights.get(v.index()) {
            None => Err(GraphError::NoSuchVertex(v)),
            Some(0) => Err(GraphError::DeletedVertex(v)),
            Some(_) => Ok(()),
        }
    }

    /// Arcs, or edges as (min, max) pairs, sorted.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.topo.edges
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.topo.out.get(a.index()).is_some_and(|l| l.binary_search(&b).is_ok())
    }

    pub fn label(&self, v: VertexId) -> Option<&str> {
        self.topo.labels.get(v.index()).and_then(|l| l.as_deref())
    }

    /// Label if present, else the numeric id.
    pub fn name(&self, v: VertexId) -> String {
        self.label(v).map(str::to_owned).unwrap_or_else(|| v.to_string())
    }

    /// Live neighbors of `v` ignoring direction, sorted and deduplicated.
    pub fn underlying_neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let mut all: Vec<VertexId> = match self.topo.orientation {
            Orientation::Undirected => self.out_adj(v).to_vec(),
            Orientation::Directed => self.out_adj(v).iter().chain(self.in_adj(v)).copied().collect(),
        };
        all.retain(|&w| self.is_live(w));
        all.sort_unstable();
        all.dedup();
        all
    }

    /// Copy with one arc/edge removed (fault injection, tests).
    pub fn without_edge(&self, a: VertexId, b: VertexId) -> Result<GameGraph, GraphError> {
        let key = match self.topo.orientation {
            Orientation::Directed => (a, b),
            Orientation::Undirected => (a.min(b), a.max(b)),
        };
        if self.topo.edges.binary_search(&key).is_err() {
            return Err(GraphError::MissingEdge(a, b));
        }
        let edges: Vec<_> = self.topo.edges.iter().copied().filter(|&e| e != key).collect();
        GameGraph::from_parts(self.topo.orientation, self.heights.clone(), &edges, self.topo.labels.clone())
    }

    /// Copy with every vertex of `removed` set to height 0.
    pub fn with_deleted(&self, removed: &[VertexId]) -> GameGraph {
        let mut h = self.heights.clone();
        for v in removed {
            h[v.index()] = 0;
        }
        self.with_heights(h)
    }

    /// Whether the live part is connected, ignoring direction. Empty counts as connected.
    pub fn is_connected(&self) -> bool {
        let live: Vec<VertexId> = self.live_vertices().collect();
        let Some(&start) = live.first() else { return true };
        let mut seen = vec![false; self.num_vertices()];
        let mut queue = VecDeque::from([start]);
        seen[start.index()] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for w in self.underlying_neighbors(v) {
                if !seen[w.index()] {
                    seen[w.index()] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == live.len()
    }
}

/// Incremental construction. Vertex ids are handed out in insertion order.
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    orientation: Orientation,
    heights: Vec<u8>,
    labels: Vec<Option<String>>,
    edges: BTreeSet<(VertexId, VertexId)>,
}

impl GraphBuilder {
    pub fn new(orientation: Orientation) -> Self {
        GraphBuilder { orientation, heights: Vec::new(), labels: Vec::new(), edges: BTreeSet::new() }
    }

    pub fn add_vertex(&mut self, height: u8) -> VertexId {
        self.heights.push(height);
        self.labels.push(None);
        VertexId::from(self.heights.len() - 1)
    }

    pub fn add_labeled(&mut self, height: u8, label: impl Into<String>) -> VertexId {
        let v = self.add_vertex(height);
        self.labels[v.index()] = Some(label.into());
        v
    }

    pub fn set_label(&mut self, v: VertexId, label: impl Into<String>) {
        self.labels[v.index()] = Some(label.into());
    }

    pub fn num_vertices(&self) -> usize {
        self.heights.len()
    }

    pub fn add_edge(&mut self, a: VertexId, b: VertexId) -> Result<(), GraphError> {
        let n = self.heights.len();
        for v in [a, b] {
            if v.index() >= n {
                return Err(GraphError::NoSuchVertex(v));
            }
        }
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        let key = match self.orientation {
            Orientation::Directed => (a, b),
            Orientation::Undirected => (a.min(b), a.max(b)),
        };
        if !self.edges.insert(key) {
            return Err(GraphError::DuplicateEdge(a, b));
        }
        Ok(())
    }

    pub fn build(self) -> GameGraph {
        let n = self.heights.len();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            out[a.index()].push(b);
            match self.orientation {
                Orientation::Directed => inc[b.index()].push(a),
                Orientation::Undirected => out[b.index()].push(a),
            }
        }
        for l in out.iter_mut().chain(inc.iter_mut()) {
            l.sort_unstable();
        }
        if self.orientation == Orientation::Undirected {
            inc.clear();
        }
        GameGraph {
            topo: Arc::new(Topology {
                orientation: self.orientation,
                out,
                inc,
                edges: self.edges.into_iter().collect(),
                labels: self.labels,
            }),
            heights: self.heights,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    pub part_a: BTreeSet<VertexId>,
    pub part_b: BTreeSet<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BipartitionError {
    #[error("vertex {0} is in both parts")]
    Overlap(VertexId),
    #[error("live vertex {0} is in neither part")]
    Uncovered(VertexId),
    #[error("edge {0}-{1} lies inside one part")]
    MonochromeEdge(VertexId, VertexId),
}

impl Bipartition {
    pub fn part_of(&self, v: VertexId) -> Option<bool> {
        if self.part_a.contains(&v) {
            Some(true)
        } else if self.part_b.contains(&v) {
            Some(false)
        } else {
            None
        }
    }

    /// Checks disjointness, coverage of live vertices and that every live edge crosses.
    pub fn validate(&self, g: &GameGraph) -> Result<(), BipartitionError> {
        if let Some(&v) = self.part_a.intersection(&self.part_b).next() {
            return Err(BipartitionError::Overlap(v));
        }
        for v in g.live_vertices() {
            if self.part_of(v).is_none() {
                return Err(BipartitionError::Uncovered(v));
            }
        }
        for &(a, b) in g.edges() {
            if g.is_live(a) && g.is_live(b) && self.part_of(a) == self.part_of(b) {
                return Err(BipartitionError::MonochromeEdge(a, b));
            }
        }
        Ok(())
    }
}

/// Vertex sequence of an odd cycle; consecutive entries and last-first are adjacent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddCycle(pub Vec<VertexId>);

impl OddCycle {
    pub fn is_valid_in(&self, g: &GameGraph) -> bool {
        let c = &self.0;
        if c.len() % 2 == 0 {
            return false;
        }
        (0..c.len()).all(|i| {
            let (a, b) = (c[i], c[(i + 1) % c.len()]);
            g.is_live(a) && g.is_live(b) && (g.has_edge(a, b) || g.has_edge(b, a))
        })
    }
}

/// Two-colors the live part ignoring direction, or returns an odd cycle.
pub fn check_bipartite(g: &GameGraph) -> Result<Bipartition, OddCycle> {
    let n = g.num_vertices();
    let mut color: Vec<Option<bool>> = vec![None; n];
    let mut parent: Vec<Option<VertexId>> = vec![None; n];
    let mut depth = vec![0usize; n];
    for root in g.live_vertices() {
        if color[root.index()].is_some() {
            continue;
        }
        color[root.index()] = Some(true);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let cv = color[v.index()].unwrap();
            for w in g.underlying_neighbors(v) {
                match color[w.index()] {
                    None => {
                        color[w.index()] = Some(!cv);
                        parent[w.index()] = Some(v);
                        depth[w.index()] = depth[v.index()] + 1;
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cv => return Err(odd_cycle(v, w, &parent, &depth)),
                    Some(_) => {}
                }
            }
        }
    }
    let mut bp = Bipartition::default();
    for v in g.live_vertices() {
        if color[v.index()] == Some(true) {
            bp.part_a.insert(v);
        } else {
            bp.part_b.insert(v);
        }
    }
    Ok(bp)
}

fn odd_cycle(x: VertexId, y: VertexId, parent: &[Option<VertexId>], depth: &[usize]) -> OddCycle {
    let (mut a, mut b) = (x, y);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a.index()] > depth[b.index()] {
        a = parent[a.index()].unwrap();
        left.push(a);
    }
    while depth[b.index()] > depth[a.index()] {
        b = parent[b.index()].unwrap();
        right.push(b);
    }
    while a != b {
        a = parent[a.index()].unwrap();
        b = parent[b.index()].unwrap();
        left.push(a);
        right.push(b);
    }
    right.pop();
    left.extend(right.into_iter().rev());
    OddCycle(left)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeStats {
    pub max_in: usize,
    pub max_out: usize,
    pub max_total: usize,
}

/// Degrees over the live part.
pub fn max_degree(g: &GameGraph) -> DegreeStats {
    let mut s = DegreeStats::default();
    for v in g.live_vertices() {
        let out = g.out_adj(v).iter().filter(|&&w| g.is_live(w)).count();
        let (inn, total) = match g.orientation() {
            Orientation::Undirected => (out, out),
            Orientation::Directed => {
                let inn = g.in_adj(v).iter().filter(|&&w| g.is_live(w)).count();
                (inn, inn + out)
            }
        };
        s.max_in = s.max_in.max(inn);
        s.max_out = s.max_out.max(out);
        s.max_total = s.max_total.max(total);
    }
    s
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    orientation: Orientation,
    heights: Vec<u8>,
    edges: Vec<[u32; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    labels: BTreeMap<String, String>,
}

impl From<GameGraph> for GraphJson {
    fn from(g: GameGraph) -> Self {
        let labels = g
            .vertices()
            .filter_map(|v| g.label(v).map(|l| (v.to_string(), l.to_owned())))
            .collect();
        GraphJson {
            orientation: g.orientation(),
            edges: g.edges().iter().map(|&(a, b)| [a.0, b.0]).collect(),
            heights: g.heights,
            labels,
        }
    }
}

impl TryFrom<GraphJson> for GameGraph {
    type Error = GraphError;

    fn try_from(j: GraphJson) -> Result<Self, GraphError> {
        let mut labels = vec![None; j.heights.len()];
        for (k, l) in j.labels {
            let i: usize = k.parse().map_err(|_| GraphError::BadLabelKey(k.clone()))?;
            if i >= labels.len() {
                return Err(GraphError::BadLabelKey(k));
            }
            labels[i] = Some(l);
        }
        let edges: Vec<_> = j.edges.iter().map(|e| (VertexId(e[0]), VertexId(e[1]))).collect();
        GameGraph::from_parts(j.orientation, j.heights, &edges, labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    fn undirected(heights: &[u8], edges: &[(u32, u32)]) -> GameGraph {
        let e: Vec<_> = edges.iter().map(|&(a, b)| (v(a), v(b))).collect();
        GameGraph::from_parts(Orientation::Undirected, heights.to_vec(), &e, vec![]).unwrap()
    }

    #[test]
    fn path_neighbors() {
        let g = undirected(&[1, 1, 1], &[(0, 1), (1, 2)]);
        for d in [Direction::Successors, Direction::Predecessors, Direction::Undirected] {
            assert_eq!(g.neighbors(v(1), d).unwrap(), vec![v(0), v(2)]);
        }
    }

    #[test]
    fn arc_neighbors() {
        let g = GameGraph::from_parts(Orientation::Directed, vec![1, 1], &[(v(0), v(1))], vec![]).unwrap();
        assert_eq!(g.neighbors(v(0), Direction::Successors).unwrap(), vec![v(1)]);
        assert!(g.neighbors(v(0), Direction::Predecessors).unwrap().is_empty());
        assert_eq!(g.neighbors(v(1), Direction::Predecessors).unwrap(), vec![v(0)]);
    }

    #[test]
    fn deleted_vertices_hidden_and_rejected() {
        let g = undirected(&[2, 4, 3, 0, 1], &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        assert_eq!(g.neighbors(v(2), Direction::Undirected).unwrap(), vec![v(1)]);
        assert_eq!(g.neighbors(v(3), Direction::Undirected), Err(GraphError::DeletedVertex(v(3))));
        assert_eq!(g.neighbors(v(9), Direction::Undirected), Err(GraphError::NoSuchVertex(v(9))));
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        let mut b = GraphBuilder::new(Orientation::Undirected);
        let a = b.add_vertex(1);
        let c = b.add_vertex(1);
        assert_eq!(b.add_edge(a, a), Err(GraphError::SelfLoop(a)));
        b.add_edge(a, c).unwrap();
        assert!(matches!(b.add_edge(c, a), Err(GraphError::DuplicateEdge(..))));
        let mut d = GraphBuilder::new(Orientation::Directed);
        let a = d.add_vertex(1);
        let c = d.add_vertex(1);
        d.add_edge(a, c).unwrap();
        d.add_edge(c, a).unwrap();
        assert!(d.add_edge(a, c).is_err());
    }

    #[test]
    fn c4_bipartition() {
        let g = undirected(&[1; 4], &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let bp = check_bipartite(&g).unwrap();
        assert_eq!(bp.part_a, [v(0), v(2)].into());
        assert_eq!(bp.part_b, [v(1), v(3)].into());
        bp.validate(&g).unwrap();
    }

    #[test]
    fn triangle_with_tail_has_odd_cycle() {
        let g = undirected(&[1; 5], &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)]);
        let c = check_bipartite(&g).unwrap_err();
        assert!(c.is_valid_in(&g));
        let set: BTreeSet<_> = c.0.iter().copied().collect();
        assert_eq!(set, [v(0), v(1), v(2)].into());
    }

    #[test]
    fn empty_graph_is_bipartite() {
        let g = undirected(&[], &[]);
        assert_eq!(check_bipartite(&g).unwrap(), Bipartition::default());
    }

    #[test]
    fn long_odd_cycle_certificate() {
        let edges: Vec<_> = (0..9).map(|i| (i, (i + 1) % 9)).collect();
        let g = undirected(&[1; 9], &edges);
        let c = check_bipartite(&g).unwrap_err();
        assert_eq!(c.0.len(), 9);
        assert!(c.is_valid_in(&g));
    }

    #[test]
    fn degrees() {
        let g = GameGraph::from_parts(Orientation::Directed, vec![1, 1], &[(v(0), v(1))], vec![]).unwrap();
        assert_eq!(max_degree(&g), DegreeStats { max_in: 1, max_out: 1, max_total: 1 });
        let p = undirected(&[2, 4, 3, 1, 1], &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        assert_eq!(max_degree(&p).max_total, 2);
    }

    #[test]
    fn json_round_trip() {
        let mut b = GraphBuilder::new(Orientation::Directed);
        let a = b.add_labeled(2, "a");
        let c = b.add_vertex(1);
        b.add_edge(c, a).unwrap();
        let g = b.build();
        let s = serde_json::to_string(&g).unwrap();
        let back: GameGraph = serde_json::from_str(&s).unwrap();
        assert_eq!(g, back);
        assert_eq!(back.name(VertexId(0)), "a");
        assert_eq!(back.name(VertexId(1)), "1");
    }

    #[test]
    fn connectivity() {
        assert!(undirected(&[1, 1, 1], &[(0, 1), (1, 2)]).is_connected());
        assert!(!undirected(&[1, 1, 1], &[(0, 1)]).is_connected());
        assert!(undirected(&[1, 1, 0], &[(0, 1)]).is_connected());
    }
}
