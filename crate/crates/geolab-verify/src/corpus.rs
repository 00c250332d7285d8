//! Input generators for campaigns: exhaustive small families and seeded samples.

use std::collections::BTreeSet;

use geolab_core::qbf::{Clause, Literal, QbfInstance};
use geolab_core::{GameGraph, Orientation, Player, Position, Tokens, Variant, VertexId};
use rand::seq::SliceRandom;
use rand::Rng;

/// Undirected simple graph on at most 8 vertices as an adjacency bitmask per vertex.
type Adj = Vec<u8>;

fn canonical(adj: &Adj) -> Vec<u8> {
    let n = adj.len();
    // Vertices sorted by (degree, neighbor degrees); permute only inside classes.
    let deg: Vec<u32> = adj.iter().map(|a| a.count_ones()).collect();
    let key = |v: usize| {
        let mut nd: Vec<u32> = (0..n).filter(|&w| adj[v] >> w & 1 == 1).map(|w| deg[w]).collect();
        nd.sort_unstable();
        (deg[v], nd)
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| key(v));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match classes.last_mut() {
            Some(c) if key(c[0]) == key(v) => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let mut best: Option<Vec<u8>> = None;
    let mut perm: Vec<usize> = Vec::with_capacity(n);
    permute_classes(&classes, 0, &mut perm, adj, &mut best);
    best.unwrap_or_default()
}

fn permute_classes(classes: &[Vec<usize>], c: usize, perm: &mut Vec<usize>, adj: &Adj, best: &mut Option<Vec<u8>>) {
    if c == classes.len() {
        // perm[new] = old
        let n = perm.len();
        let mut pos = vec![0usize; n];
        for (new, &old) in perm.iter().enumerate() {
            pos[old] = new;
        }
        let code: Vec<u8> = perm
            .iter()
            .map(|&old| (0..n).filter(|&w| adj[old] >> w & 1 == 1).fold(0u8, |acc, w| acc | 1 << pos[w]))
            .collect();
        if best.as_ref().map_or(true, |b| code < *b) {
            *best = Some(code);
        }
        return;
    }
    let mut class = classes[c].clone();
    heap_permutations(&mut class, &mut |p| {
        let base = perm.len();
        perm.extend_from_slice(p);
        permute_classes(classes, c + 1, perm, adj, best);
        perm.truncate(base);
    });
}

fn heap_permutations(items: &mut [usize], f: &mut dyn FnMut(&[usize])) {
    let n = items.len();
    let mut c = vec![0usize; n];
    f(items);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            f(items);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

fn is_connected(adj: &Adj) -> bool {
    let n = adj.len();
    if n == 0 {
        return true;
    }
    let mut seen = 1u8;
    let mut stack = vec![0usize];
    while let Some(v) = stack.pop() {
        for w in 0..n {
            if adj[v] >> w & 1 == 1 && seen >> w & 1 == 0 {
                seen |= 1 << w;
                stack.push(w);
            }
        }
    }
    seen.count_ones() as usize == n
}

/// All graphs on exactly `n` vertices up to isomorphism (n ≤ 8), by vertex augmentation.
pub fn graphs_up_to_iso(n: usize) -> Vec<Vec<u8>> {
    assert!(n <= 8, "bitmask adjacency holds at most 8 vertices");
    let mut level: BTreeSet<Vec<u8>> = [Vec::new()].into();
    for k in 0..n {
        let mut next = BTreeSet::new();
        for g in &level {
            for mask in 0u16..(1 << k) {
                let mut adj: Adj = g.clone();
                for (w, a) in adj.iter_mut().enumerate() {
                    if mask >> w & 1 == 1 {
                        *a |= 1 << k;
                    }
                }
                adj.push(mask as u8);
                next.insert(canonical(&adj));
            }
        }
        level = next;
    }
    level.into_iter().collect()
}

pub fn adjacency_to_graph(adj: &[u8], heights: Vec<u8>) -> GameGraph {
    let n = adj.len();
    let edges: Vec<(VertexId, VertexId)> = (0..n)
        .flat_map(|a| (a + 1..n).filter(move |&b| adj[a] >> b & 1 == 1).map(move |b| (VertexId::from(a), VertexId::from(b))))
        .collect();
    GameGraph::from_parts(Orientation::Undirected, heights, &edges, vec![]).expect("simple graph")
}

/// Connected simple graphs on exactly `n` vertices up to isomorphism, height 1.
pub fn connected_graphs(n: usize) -> Vec<GameGraph> {
    graphs_up_to_iso(n).into_iter().filter(|a| is_connected(a)).map(|a| adjacency_to_graph(&a, vec![1; n])).collect()
}

/// Every labeled loop-free digraph on `n` vertices, height 1.
pub fn all_digraphs(n: usize) -> Vec<GameGraph> {
    let pairs: Vec<(VertexId, VertexId)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (VertexId::from(a), VertexId::from(b))))
        .collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let arcs: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            GameGraph::from_parts(Orientation::Directed, vec![1; n], &arcs, vec![]).expect("loop-free")
        })
        .collect()
}

/// Random simple graph with edge probability `p` and heights in 1..=max_h.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64, orientation: Orientation, max_h: u8) -> GameGraph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let keep = match orientation {
                Orientation::Directed => a != b,
                Orientation::Undirected => a < b,
            };
            if keep && rng.gen_bool(p) {
                edges.push((VertexId::from(a), VertexId::from(b)));
            }
        }
    }
    let heights = (0..n).map(|_| rng.gen_range(1..=max_h)).collect();
    GameGraph::from_parts(orientation, heights, &edges, vec![]).expect("simple graph")
}

/// Random bipartite graph on `n` vertices split at a random point.
pub fn random_bipartite(rng: &mut impl Rng, n: usize, p: f64) -> GameGraph {
    let split = rng.gen_range(1..n.max(2));
    let mut edges = Vec::new();
    for a in 0..split {
        for b in split..n {
            if rng.gen_bool(p) {
                edges.push((VertexId::from(a), VertexId::from(b)));
            }
        }
    }
    GameGraph::from_parts(Orientation::Undirected, vec![1; n], &edges, vec![]).expect("simple graph")
}

/// Every token placement on a graph: one per live vertex, or every ordered
/// pair the capacity rule allows, each with both players to move.
pub fn placements(g: &GameGraph, variant: Variant) -> Vec<Position> {
    let live: Vec<VertexId> = g.live_vertices().collect();
    let mut out = Vec::new();
    if variant.is_partizan() {
        for &l in &live {
            for &r in &live {
                for to_move in [Player::Left, Player::Right] {
                    if let Ok(p) = Position::new(g.clone(), variant, Tokens::Pair { left: l, right: r }, to_move) {
                        out.push(p);
                    }
                }
            }
        }
    } else {
        for &t in &live {
            out.extend(Position::new(g.clone(), variant, Tokens::Single { token: t }, Player::Left));
        }
    }
    out
}

/// Random position of `variant` on at most `max_n` vertices.
pub fn random_position(rng: &mut impl Rng, max_n: usize, variant: Variant) -> Position {
    loop {
        let n = rng.gen_range(1..=max_n);
        let p = rng.gen_range(0.2..0.7);
        let g = random_graph(rng, n, p, variant.orientation, variant.max_height);
        let ps = placements(&g, variant);
        if let Some(pos) = ps.choose(rng) {
            return pos.clone();
        }
    }
}

/// ∃x₁∀x₂ with one clause: every multiset of three literals over x₁, x₂.
pub fn qbf_n2_m1() -> Vec<QbfInstance> {
    let lits = [Literal::new(1, true), Literal::new(1, false), Literal::new(2, true), Literal::new(2, false)];
    let mut out = Vec::new();
    for a in 0..4 {
        for b in a..4 {
            for c in b..4 {
                let clause = Clause([lits[a], lits[b], lits[c]]);
                out.push(QbfInstance::new(2, vec![clause]).expect("valid formula"));
            }
        }
    }
    out
}
