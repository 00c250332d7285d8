//! Golden fixtures: the [2,4,3,1,1] draw path, matching unions, and the
//! five-vertex UIR/UIF counterexample.

use std::collections::BTreeSet;

use geolab_core::matching::maximum_matching_seeded;
use geolab_core::solver::optimal_terminal_profiles;
use geolab_core::{
    check_bipartite, solve_brute, GameGraph, GameResult, Move, Orientation, Player, Position, SearchMode, Tokens, VertexId,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::random_graph;
use crate::report::VerifyReport;

fn path_position(variant: &str, heights: &[u8], edges: &[(u32, u32)], labels: &[&str]) -> Position {
    let edges: Vec<(VertexId, VertexId)> = edges.iter().map(|&(a, b)| (VertexId(a), VertexId(b))).collect();
    let labels = labels.iter().map(|l| Some(l.to_string())).collect();
    let g = GameGraph::from_parts(Orientation::Undirected, heights.to_vec(), &edges, labels).expect("fixture graph");
    Position::new(g, variant.parse().expect("fixture variant"), Tokens::Single { token: VertexId(0) }, Player::Left)
        .expect("fixture position")
}

/// Path v1..v5 with heights 2,4,3,1,1 under UIR4, token on v1.
pub fn draw_path() -> Position {
    path_position("UIR4", &[2, 4, 3, 1, 1], &[(0, 1), (1, 2), (2, 3), (3, 4)], &["v1", "v2", "v3", "v4", "v5"])
}

pub fn draw_mode() -> SearchMode {
    SearchMode::DrawOnReach { vertex: VertexId(4), mover: Player::Left }
}

pub fn draw_profiles() -> BTreeSet<Vec<u8>> {
    [vec![1, 2, 1, 0, 1], vec![1, 1, 0, 0, 1], vec![0, 0, 0, 0, 1]].into()
}

/// Triangle v-x-w with the tail w-u-t; token on v. `variant` is "UIR" or "UIF".
pub fn triangle_tail(variant: &str) -> Position {
    path_position(variant, &[1; 5], &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)], &["v", "x", "w", "u", "t"])
}

/// ⟨v, w, u⟩ in [`triangle_tail`].
pub fn triangle_tail_move() -> Move {
    Move::new(0u32, 2u32, 3u32)
}

pub fn check_draw_path(r: &mut VerifyReport) {
    let p = draw_path();
    match solve_brute(&p, draw_mode(), 100_000) {
        Ok(s) => r.check(s.result() == GameResult::Draw, || format!("draw path evaluates to {}", s.result())),
        Err(e) => r.fail(format!("draw path: {e}")),
    }
    match optimal_terminal_profiles(&p, draw_mode(), 100_000) {
        Ok(got) => r.check(got == draw_profiles(), || format!("draw path terminal profiles {got:?}")),
        Err(e) => r.fail(format!("draw path profiles: {e}")),
    }
    r.instances_run += 1;
}

pub fn check_triangle_tail(r: &mut VerifyReport) {
    let uir = triangle_tail("UIR");
    let g = uir.graph();
    r.check(g.num_vertices() == 5 && g.edges().len() == 5, || "counterexample is not five vertices and five edges".into());
    r.check(check_bipartite(g).is_err(), || "counterexample is bipartite".into());
    match solve_brute(&uir, SearchMode::Normal, 100_000) {
        Ok(s) => r.check(s.result() == GameResult::RightWins, || format!("UIR value {} (want P)", s.result())),
        Err(e) => r.fail(format!("UIR: {e}")),
    }
    match solve_brute(&triangle_tail("UIF"), SearchMode::Normal, 100_000) {
        Ok(s) => {
            r.check(s.result() == GameResult::LeftWins, || format!("UIF value {} (want N)", s.result()));
            r.check(s.optimal_move == Some(triangle_tail_move()), || format!("UIF winning move {:?}", s.optimal_move));
        }
        Err(e) => r.fail(format!("UIF: {e}")),
    }
    r.instances_run += 1;
}

/// Symmetric difference of two maximum matchings splits into even paths and
/// even alternating cycles, over `samples` seeded graphs on at most 12 vertices.
pub fn check_matching_unions(r: &mut VerifyReport, samples: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for s in 0..samples {
        let n = rng.gen_range(2..=12);
        let p = rng.gen_range(0.15..0.6);
        let g = random_graph(&mut rng, n, p, Orientation::Undirected, 1);
        let (m1, m2) = match (maximum_matching_seeded(&g, rng.gen()), maximum_matching_seeded(&g, rng.gen())) {
            (Ok(a), Ok(b)) => (a, b),
            _ => {
                r.fail(format!("sample {s}: matching failed"));
                continue;
            }
        };
        r.instances_run += 1;
        if m1.len() != m2.len() {
            r.fail(format!("sample {s}: maximum matchings of sizes {} and {}", m1.len(), m2.len()));
            continue;
        }
        if let Some(bad) = symmetric_difference_violation(n, &m1, &m2) {
            r.fail(format!("sample {s}: {bad}"));
        }
    }
}

fn symmetric_difference_violation(
    n: usize,
    m1: &geolab_core::matching::Matching,
    m2: &geolab_core::matching::Matching,
) -> Option<String> {
    let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    for (a, b) in m1.edges().filter(|&(a, b)| !m2.contains(a, b)) {
        adj[a.index()].push((b.index(), true));
        adj[b.index()].push((a.index(), true));
    }
    for (a, b) in m2.edges().filter(|&(a, b)| !m1.contains(a, b)) {
        adj[a.index()].push((b.index(), false));
        adj[b.index()].push((a.index(), false));
    }
    if let Some(v) = (0..n).find(|&v| adj[v].len() > 2) {
        return Some(format!("vertex {v} has degree {} in the symmetric difference", adj[v].len()));
    }
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] || adj[start].is_empty() {
            continue;
        }
        let mut stack = vec![start];
        seen[start] = true;
        let (mut verts, mut degree_sum, mut first, mut second) = (0usize, 0usize, 0usize, 0usize);
        while let Some(v) = stack.pop() {
            verts += 1;
            degree_sum += adj[v].len();
            for &(w, from_first) in &adj[v] {
                if from_first {
                    first += 1;
                } else {
                    second += 1;
                }
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        let edges = degree_sum / 2;
        let cycle = edges == verts;
        // Each side's edge count was tallied twice.
        let (first, second) = (first / 2, second / 2);
        if edges % 2 == 1 || first != second {
            return Some(format!(
                "{} component with {edges} edges ({first} from one matching, {second} from the other)",
                if cycle { "cycle" } else { "path" }
            ));
        }
    }
    None
}

/// All three golden fixtures.
pub fn golden_fixtures() -> VerifyReport {
    let mut r = VerifyReport::new("fixtures");
    check_draw_path(&mut r);
    check_matching_unions(&mut r, 500, 62);
    check_triangle_tail(&mut r);
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_pass() {
        let r = golden_fixtures();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.instances_run, 502);
    }
}
