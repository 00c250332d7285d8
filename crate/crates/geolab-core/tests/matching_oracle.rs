use geolab_core::matching::{is_essential, maximum_matching, maximum_matching_seeded, union_components, ComponentKind};
use geolab_core::{GameGraph, Orientation, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn graph_from_mask(n: usize, mask: u64) -> GameGraph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for a in 0..n {
        for b in a + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((VertexId::from(a), VertexId::from(b)));
            }
            bit += 1;
        }
    }
    GameGraph::from_parts(Orientation::Undirected, vec![1; n], &edges, vec![]).unwrap()
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> GameGraph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((VertexId::from(a), VertexId::from(b)));
            }
        }
    }
    GameGraph::from_parts(Orientation::Undirected, vec![1; n], &edges, vec![]).unwrap()
}

/// Every matching, by branching on the lowest vertex not yet decided.
fn all_matchings(g: &GameGraph) -> Vec<Vec<(usize, usize)>> {
    fn go(g: &GameGraph, v: usize, used: &mut Vec<bool>, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let n = g.num_vertices();
        let mut v = v;
        while v < n && used[v] {
            v += 1;
        }
        if v == n {
            out.push(cur.clone());
            return;
        }
        used[v] = true;
        go(g, v + 1, used, cur, out);
        for w in g.out_adj(VertexId::from(v)).iter().map(|w| w.index()) {
            if !used[w] && g.is_live(VertexId::from(w)) {
                used[w] = true;
                cur.push((v, w));
                go(g, v + 1, used, cur, out);
                cur.pop();
                used[w] = false;
            }
        }
        used[v] = false;
    }
    let mut out = Vec::new();
    let mut used: Vec<bool> = g.heights().iter().map(|&h| h == 0).collect();
    go(g, 0, &mut used, &mut Vec::new(), &mut out);
    out
}

fn brute_nu(g: &GameGraph) -> usize {
    all_matchings(g).iter().map(Vec::len).max().unwrap_or(0)
}

fn brute_essential(g: &GameGraph, v: usize) -> bool {
    let all = all_matchings(g);
    let nu = all.iter().map(Vec::len).max().unwrap_or(0);
    all.iter().filter(|m| m.len() == nu).all(|m| m.iter().any(|&(a, b)| a == v || b == v))
}

#[test]
fn matching_size_exhaustive_up_to_six() {
    for n in 1..=6 {
        let pairs = n * (n - 1) / 2;
        for mask in 0..(1u64 << pairs) {
            let g = graph_from_mask(n, mask);
            let m = maximum_matching(&g).unwrap();
            assert!(m.is_valid_in(&g));
            assert_eq!(m.len(), brute_nu(&g), "n={n} mask={mask:b}");
        }
    }
}

#[test]
fn matching_size_random_up_to_ten() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d61);
    for _ in 0..600 {
        let n = rng.gen_range(2..=10);
        let p = rng.gen_range(0.1..0.8);
        let g = random_graph(&mut rng, n, p);
        let want = brute_nu(&g);
        for seed in [0, 1, 2] {
            let m = maximum_matching_seeded(&g, seed).unwrap();
            assert!(m.is_valid_in(&g));
            assert_eq!(m.len(), want);
        }
    }
}

#[test]
fn essential_exhaustive_up_to_six() {
    for n in 1..=6 {
        let pairs = n * (n - 1) / 2;
        for mask in 0..(1u64 << pairs) {
            let g = graph_from_mask(n, mask);
            for v in 0..n {
                assert_eq!(is_essential(&g, VertexId::from(v)).unwrap(), brute_essential(&g, v), "n={n} mask={mask:b} v={v}");
            }
        }
    }
}

#[test]
fn essential_random_seven_and_eight() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xe55e);
    for _ in 0..300 {
        let n = rng.gen_range(7..=8);
        let p = rng.gen_range(0.15..0.6);
        let g = random_graph(&mut rng, n, p);
        for v in 0..n {
            assert_eq!(is_essential(&g, VertexId::from(v)).unwrap(), brute_essential(&g, v));
        }
    }
}

#[test]
fn union_of_maximum_matchings_alternates_evenly() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x10a2);
    let mut distinct_pairs = 0;
    for i in 0..500u64 {
        let n = rng.gen_range(2..=12);
        let p = rng.gen_range(0.15..0.6);
        let g = random_graph(&mut rng, n, p);
        let m1 = maximum_matching_seeded(&g, 2 * i + 1).unwrap();
        let m2 = maximum_matching_seeded(&g, 2 * i + 2).unwrap();
        if m1 != m2 {
            distinct_pairs += 1;
        }
        for c in union_components(&m1, &m2) {
            if c.sym_diff_edges > 0 {
                assert_eq!(c.sym_diff_edges, c.edges);
                assert_eq!(c.edges % 2, 0, "odd component {c:?}");
                assert!(matches!(c.kind, ComponentKind::Path | ComponentKind::Cycle));
            }
        }
    }
    assert!(distinct_pairs > 50, "seeds should vary the matching: {distinct_pairs}");
}
