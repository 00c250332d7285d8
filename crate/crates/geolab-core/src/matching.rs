//! Maximum matching on general graphs (Edmonds' blossom shrinking) and the
//! helpers built on it: essential vertices and union-component structure.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{GameGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("matching needs an undirected graph")]
    Directed,
    #[error("vertex {0} is missing or deleted")]
    NotLive(VertexId),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    edges: BTreeSet<(VertexId, VertexId)>,
}

impl Matching {
    /// Builds from pairs, normalizing each to (min, max). Panics on a shared endpoint.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (VertexId, VertexId)>) -> Matching {
        let mut m = Matching::default();
        let mut used = BTreeSet::new();
        for (a, b) in pairs {
            assert!(used.insert(a) && used.insert(b), "matching edges share an endpoint");
            m.edges.insert((a.min(b), a.max(b)));
        }
        m
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.edges.iter().copied()
    }

    pub fn contains(&self, a: VertexId, b: VertexId) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn saturates(&self, v: VertexId) -> bool {
        self.mate(v).is_some()
    }

    pub fn mate(&self, v: VertexId) -> Option<VertexId> {
        self.edges.iter().find_map(|&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }

    /// Every edge joins two live adjacent vertices and no vertex repeats.
    pub fn is_valid_in(&self, g: &GameGraph) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|&(a, b)| {
            g.is_live(a) && g.is_live(b) && g.has_edge(a, b) && seen.insert(a) && seen.insert(b)
        })
    }
}

const NONE: usize = usize::MAX;

/// Blossom search state over a fixed adjacency.
struct Blossom<'a> {
    adj: &'a [Vec<usize>],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn new(adj: &'a [Vec<usize>]) -> Self {
        let n = adj.len();
        Blossom {
            adj,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_path(&mut self, root: usize) -> usize {
        let n = self.adj.len();
        self.used.fill(false);
        self.parent.fill(NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for i in 0..self.adj[v].len() {
                let to = self.adj[v][i];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.fill(false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for j in 0..n {
                        if self.in_blossom[self.base[j]] {
                            self.base[j] = cur;
                            if !self.used[j] {
                                self.used[j] = true;
                                self.queue.push_back(j);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return to;
                    }
                    self.used[self.mate[to]] = true;
                    self.queue.push_back(self.mate[to]);
                }
            }
        }
        NONE
    }

    fn run(mut self, order: &[usize]) -> Vec<usize> {
        for &v in order {
            if self.mate[v] != NONE {
                continue;
            }
            if let Some(&w) = self.adj[v].iter().find(|&&w| self.mate[w] == NONE) {
                self.mate[v] = w;
                self.mate[w] = v;
            }
        }
        for &v in order {
            if self.mate[v] != NONE {
                continue;
            }
            let mut u = self.find_path(v);
            while u != NONE {
                let pv = self.parent[u];
                let ppv = self.mate[pv];
                self.mate[u] = pv;
                self.mate[pv] = u;
                u = ppv;
            }
        }
        self.mate
    }
}

/// Mate vector of a maximum matching of the graph given by `adj`.
/// Seed 0 keeps the natural order; other seeds shuffle the search order.
pub fn max_matching_adj(adj: &[Vec<usize>], seed: u64) -> Vec<Option<usize>> {
    let n = adj.len();
    let mut order: Vec<usize> = (0..n).collect();
    let shuffled;
    let adj = if seed == 0 {
        adj
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        order.shuffle(&mut rng);
        let mut a = adj.to_vec();
        for l in &mut a {
            l.shuffle(&mut rng);
        }
        shuffled = a;
        &shuffled
    };
    Blossom::new(adj).run(&order).into_iter().map(|m| (m != NONE).then_some(m)).collect()
}

fn live_adjacency(g: &GameGraph, removed: &[VertexId]) -> Result<Vec<Vec<usize>>, MatchingError> {
    if g.is_directed() {
        return Err(MatchingError::Directed);
    }
    let mut live: Vec<bool> = g.heights().iter().map(|&h| h > 0).collect();
    for r in removed {
        if let Some(x) = live.get_mut(r.index()) {
            *x = false;
        }
    }
    Ok(g.vertices()
        .map(|v| {
            if !live[v.index()] {
                return Vec::new();
            }
            g.out_adj(v).iter().filter(|w| live[w.index()]).map(|w| w.index()).collect()
        })
        .collect())
}

fn to_matching(mate: &[Option<usize>]) -> Matching {
    Matching::from_pairs(
        mate.iter()
            .enumerate()
            .filter_map(|(a, m)| m.filter(|&b| a < b).map(|b| (VertexId::from(a), VertexId::from(b)))),
    )
}

/// A maximum matching of the live part of an undirected graph. Heights above 1
/// count as live; stacking is ignored here.
pub fn maximum_matching(g: &GameGraph) -> Result<Matching, MatchingError> {
    maximum_matching_seeded(g, 0)
}

pub fn maximum_matching_seeded(g: &GameGraph, seed: u64) -> Result<Matching, MatchingError> {
    let adj = live_adjacency(g, &[])?;
    Ok(to_matching(&max_matching_adj(&adj, seed)))
}

/// Size of a maximum matching after removing `removed`.
pub fn matching_number_without(g: &GameGraph, removed: &[VertexId]) -> Result<usize, MatchingError> {
    let adj = live_adjacency(g, removed)?;
    Ok(max_matching_adj(&adj, 0).iter().filter(|m| m.is_some()).count() / 2)
}

/// Whether `v` is saturated by every maximum matching, i.e. removing it lowers
/// the matching number.
pub fn is_essential(g: &GameGraph, v: VertexId) -> Result<bool, MatchingError> {
    if !g.is_live(v) {
        return Err(MatchingError::NotLive(v));
    }
    Ok(matching_number_without(g, &[v])? < matching_number_without(g, &[])?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    Path,
    Cycle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnionComponent {
    pub kind: ComponentKind,
    /// Distinct edges (shared edges counted once).
    pub edges: usize,
    /// Edges lying in exactly one of the two matchings.
    pub sym_diff_edges: usize,
    pub vertices: Vec<VertexId>,
}

/// Components of the union of two matchings with duplicate edges collapsed.
/// Every vertex has degree at most 2 there, so each component is a path or a cycle.
pub fn union_components(m1: &Matching, m2: &Matching) -> Vec<UnionComponent> {
    let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    let all: BTreeSet<(VertexId, VertexId)> = m1.edges().chain(m2.edges()).collect();
    for &(a, b) in &all {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &start in adj.keys() {
        if seen.contains(&start) {
            continue;
        }
        let mut verts = Vec::new();
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(v) = stack.pop() {
            verts.push(v);
            for &w in &adj[&v] {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        verts.sort_unstable();
        let in_comp = |(a, _): &&(VertexId, VertexId)| verts.binary_search(a).is_ok();
        let edges: Vec<_> = all.iter().filter(in_comp).collect();
        let sym = edges.iter().filter(|&&&(a, b)| m1.contains(a, b) != m2.contains(a, b)).count();
        let kind = if edges.len() == verts.len() { ComponentKind::Cycle } else { ComponentKind::Path };
        out.push(UnionComponent { kind, edges: edges.len(), sym_diff_edges: sym, vertices: verts });
    }
    out
}
