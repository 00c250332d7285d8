use geolab_core::qbf::{evaluate, normalize_for, random_instance, Clause, NormalizeTarget, QbfInstance};
use geolab_core::{
    check_bipartite, max_degree, solve_brute, GameGraph, GameResult, Orientation, Player, Position, SearchMode, Tokens,
    VertexId,
};
use geolab_reductions::layout::{DifVariable, Layout};
use geolab_reductions::upf::{deletion_slots, tqbf_to_upf_with_win, win_path_len};
use geolab_reductions::{
    family_counts, geography_to_uir4, stack2_to_stack1, tqbf_to_dif, tqbf_to_dpf, tqbf_to_upf, tqbf_to_upr,
    undirect_to_direct, Gadget, ReductionArtifact, ReductionError,
};

const BUDGET: u64 = 50_000_000;

fn v(i: u32) -> VertexId {
    VertexId(i)
}

fn digraph(n: usize, arcs: &[(u32, u32)]) -> GameGraph {
    let e: Vec<_> = arcs.iter().map(|&(a, b)| (v(a), v(b))).collect();
    GameGraph::from_parts(Orientation::Directed, vec![1; n], &e, vec![]).unwrap()
}

fn geography(n: usize, arcs: &[(u32, u32)], token: u32) -> Position {
    Position::new(digraph(n, arcs), "DIR".parse().unwrap(), Tokens::Single { token: v(token) }, Player::Left).unwrap()
}

fn fig4() -> QbfInstance {
    QbfInstance::new(4, vec![Clause::new(-1, 2, 3), Clause::new(1, 3, -4)]).unwrap()
}

fn assert_claims(a: &ReductionArtifact) {
    assert_eq!(a.roles.len(), a.position.graph().num_vertices());
    for s in &a.sizes {
        assert_eq!(s.expected, s.actual, "{}", s.component);
    }
    if let Some(bp) = &a.claimed_bipartition {
        bp.validate(a.position.graph()).unwrap();
    }
}

#[test]
fn undirected_edges_become_arc_pairs() {
    let g = GameGraph::from_parts(Orientation::Undirected, vec![1, 1], &[(v(0), v(1))], vec![]).unwrap();
    let p = Position::new(g, "UIR".parse().unwrap(), Tokens::Single { token: v(0) }, Player::Left).unwrap();
    let a = undirect_to_direct(&p).unwrap();
    assert_eq!(a.position.graph().edges(), &[(v(0), v(1)), (v(1), v(0))]);
    assert_eq!(a.position.variant().to_string(), "DIR");

    let empty = GameGraph::from_parts(Orientation::Undirected, vec![1, 2, 1], &[], vec![]).unwrap();
    let p = Position::new(empty, "UPF2".parse().unwrap(), Tokens::Pair { left: v(0), right: v(1) }, Player::Right).unwrap();
    let a = undirect_to_direct(&p).unwrap();
    assert_eq!(a.position.graph().heights(), &[1, 2, 1]);
    assert!(a.position.graph().edges().is_empty());
    assert_eq!(a.position.tokens(), p.tokens());
    assert_eq!(a.position.to_move(), Player::Right);
}

#[test]
fn height_one_input_is_copied_verbatim() {
    let p = geography(4, &[(0, 1), (1, 2), (2, 0), (2, 3)], 1);
    let a = stack2_to_stack1(&p).unwrap();
    assert_eq!(a.position.graph().edges(), p.graph().edges());
    assert_eq!(a.position.tokens(), p.tokens());
    assert_eq!(a.position.graph().heights(), p.graph().heights());
}

#[test]
fn splitting_keeps_bipartiteness_both_ways() {
    let tri = GameGraph::from_parts(Orientation::Undirected, vec![2, 1, 2], &[(v(0), v(1)), (v(1), v(2)), (v(0), v(2))], vec![])
        .unwrap();
    let p = Position::new(tri, "UIR2".parse().unwrap(), Tokens::Single { token: v(0) }, Player::Left).unwrap();
    let a = stack2_to_stack1(&p).unwrap();
    assert!(a.claimed_bipartition.is_none());
    let cycle = check_bipartite(a.position.graph()).unwrap_err();
    assert!(cycle.is_valid_in(a.position.graph()));

    let sq = GameGraph::from_parts(
        Orientation::Undirected,
        vec![2, 2, 1, 2],
        &[(v(0), v(1)), (v(1), v(2)), (v(2), v(3)), (v(3), v(0))],
        vec![],
    )
    .unwrap();
    let p = Position::new(sq, "UPF2".parse().unwrap(), Tokens::Pair { left: v(0), right: v(0) }, Player::Left).unwrap();
    let a = stack2_to_stack1(&p).unwrap();
    assert_claims(&a);
    assert!(a.claimed_bipartition.is_some());
    assert_eq!(a.position.tokens(), Tokens::Pair { left: v(0), right: v(1) });
}

#[test]
fn dif_worked_example_has_38_vertices() {
    let a = tqbf_to_dif(&fig4()).unwrap();
    assert_claims(&a);
    let counts = family_counts(&a.roles);
    assert_eq!(a.position.graph().num_vertices(), 38);
    assert_eq!(counts["variable"], 22);
    for j in 1..=2 {
        let clause_gadget = a.vertices_where(|r| match r.gadget {
            Gadget::Clause { j: c } | Gadget::Linker { j: c, .. } => c == j,
            _ => false,
        });
        assert_eq!(clause_gadget.len(), 8);
    }
    let Some(Layout::Dif(l)) = &a.layout else { panic!("layout") };
    assert_eq!(a.position.tokens(), Tokens::Single { token: l.vars[0].top() });
    assert!(matches!(l.vars[1], DifVariable::Even { .. }));
    let g = a.position.graph();
    for w in l.vars.windows(2) {
        assert!(g.has_edge(w[0].bottom(), w[1].top()));
    }
    for &c in &l.clauses {
        assert!(g.has_edge(l.vars[3].bottom(), c));
    }
    // x̄1 (odd) points at the right path, x2 (even) at the right vertex.
    let occ = &l.occurrences[0];
    assert!(matches!(l.vars[0], DifVariable::Odd { r2, .. } if occ[0].target == r2));
    assert!(matches!(l.vars[1], DifVariable::Even { right, .. } if occ[1].target == right));
    assert!(occ[1].extra.is_some() && occ[0].extra.is_none());
    assert_eq!(a.position.variant().to_string(), "DIF");
}

#[test]
fn dif_bipartition_holds_on_random_formulas() {
    for seed in 0..60 {
        let q = random_instance(2 + 2 * (seed as usize % 3), 1 + seed as usize % 5, seed).unwrap();
        assert_claims(&tqbf_to_dif(&q).unwrap());
    }
}

#[test]
fn dif_small_instance_agrees_with_formula() {
    let q = QbfInstance::new(2, vec![Clause::new(1, 1, -2)]).unwrap();
    let a = tqbf_to_dif(&q).unwrap();
    let r = solve_brute(&a.position, SearchMode::Normal, BUDGET).unwrap();
    assert_eq!(r.result() == GameResult::LeftWins, evaluate(&q).unwrap());
}

#[test]
fn dpf_sizes_for_four_clauses() {
    let q = normalize_for(&QbfInstance::new(2, vec![Clause::new(1, -2, 2)]).unwrap(), NormalizeTarget::Dpf);
    assert_eq!(q.m(), 4);
    let a = tqbf_to_dpf(&q).unwrap();
    assert_claims(&a);
    let Some(Layout::Dpf(l)) = &a.layout else { panic!("layout") };
    assert_eq!((l.delay.len(), l.deletion.len(), l.escape.len()), (5, 5, 3));
    for lk in l.linkers.iter().flatten() {
        assert_eq!(lk.path.len(), 1);
    }
    let bp = a.claimed_bipartition.as_ref().unwrap();
    assert_eq!(bp.part_of(*l.delay.last().unwrap()), Some(false));
    for lk in l.linkers.iter().flatten() {
        assert_eq!(bp.part_of(*lk.path.last().unwrap()), Some(false));
    }
    assert_eq!(a.position.tokens(), Tokens::Pair { left: l.vars[0].top, right: l.vars[1].top });
    assert_eq!(a.position.variant().to_string(), "DPF");
}

#[test]
fn dpf_rejects_odd_or_small_clause_counts() {
    let q = random_instance(2, 3, 1).unwrap();
    assert!(matches!(tqbf_to_dpf(&q), Err(ReductionError::Precondition { .. })));
    for seed in 0..30 {
        let q = normalize_for(&random_instance(4, 1 + seed as usize % 7, seed).unwrap(), NormalizeTarget::Dpf);
        assert_claims(&tqbf_to_dpf(&q).unwrap());
    }
}

#[test]
fn upr_sizes_and_parity() {
    let base = QbfInstance::new(4, vec![Clause::new(1, -1, 2), Clause::new(-2, 3, -3)]).unwrap();
    assert!(tqbf_to_upr(&base).is_err());
    let q = QbfInstance::new(4, vec![Clause::new(1, -2, 3), Clause::new(-1, 2, -3), Clause::new(4, -4, 4)]).unwrap();
    let a = tqbf_to_upr(&q).unwrap();
    assert_claims(&a);
    let Some(Layout::Upr(l)) = &a.layout else { panic!("layout") };
    let (n, m) = (4, 3);
    assert_eq!(l.part1.len(), m + n / 2 + 5);
    assert_eq!(l.escape.len(), 37);
    assert!(l.connectors.iter().all(|c| c.len() == 8));
    for lk in l.linkers.iter().flatten() {
        assert_eq!(lk.path.len(), if lk.literal.var() % 2 == 1 { 6 } else { 11 });
    }
    let bp = a.claimed_bipartition.as_ref().unwrap();
    // connector end next to the clause, linker ends next to the gadget
    for c in &l.connectors {
        assert_eq!(bp.part_of(*c.last().unwrap()), Some(false));
    }
    for lk in l.linkers.iter().flatten() {
        let end = bp.part_of(*lk.path.last().unwrap());
        assert_eq!(end, Some(lk.literal.var() % 2 == 1));
        assert_ne!(end, bp.part_of(lk.target));
    }
    assert_eq!(bp.part_of(a.position.tokens().of(Player::Left)), Some(true));
    assert_eq!(bp.part_of(a.position.tokens().of(Player::Right)), Some(false));
    assert_eq!(a.position.variant().to_string(), "UPR");
}

#[test]
fn upr_smallest_normalized_instance() {
    let q = normalize_for(&random_instance(2, 1, 7).unwrap(), NormalizeTarget::Upr);
    let a = tqbf_to_upr(&q).unwrap();
    assert_claims(&a);
    let Some(Layout::Upr(l)) = &a.layout else { panic!("layout") };
    assert_eq!(l.part1.len(), q.m() + 2 + 5);
    assert_eq!(l.selectors.len(), q.m() - 1);
}

#[test]
fn upf_win_path_exceeds_the_rest_by_two() {
    for seed in 0..20 {
        let q = normalize_for(&random_instance(2 + 2 * (seed as usize % 2), 1 + seed as usize % 5, seed).unwrap(), NormalizeTarget::Upf);
        let a = tqbf_to_upf(&q).unwrap();
        assert_claims(&a);
        let counts = family_counts(&a.roles);
        let win = counts["win_path"];
        assert_eq!(win, a.roles.len() - win + 2);
        assert_eq!(win, win_path_len(q.n(), q.m()));
        assert!(check_bipartite(a.position.graph()).is_err());
        let c = a.odd_cycle.as_ref().unwrap();
        assert_eq!(c.0.len(), 13);
        assert!(c.is_valid_in(a.position.graph()));
    }
}

#[test]
fn upf_three_clauses_use_two_interior_slots() {
    let q = normalize_for(&QbfInstance::new(2, vec![Clause::new(1, 2, -2)]).unwrap(), NormalizeTarget::Upf);
    assert_eq!(q.m(), 3);
    let a = tqbf_to_upf(&q).unwrap();
    let Some(Layout::Upf(l)) = &a.layout else { panic!("layout") };
    let g = a.position.graph();
    for (k, path) in l.deletion_paths.iter().enumerate() {
        assert_eq!(path.len(), 6);
        assert_eq!(deletion_slots(3, k + 1).iter().map(|s| s.0).collect::<Vec<_>>(), vec![2, 3]);
        let attached: Vec<usize> =
            path.iter().map(|&p| l.clauses.iter().filter(|&&c| g.has_edge(p, c)).count()).collect();
        assert_eq!(attached, vec![0, 0, 1, 1, 0, 0]);
        let order: Vec<usize> = l.slots[k].iter().map(|s| s.1).collect();
        assert!(order.windows(2).all(|w| w[0] < w[1]) && !order.contains(&k));
    }
    assert!(g.has_edge(l.prize, l.escape[2]) && g.has_edge(l.prize, l.delay[3 + 6]));
    assert_eq!(a.position.tokens(), Tokens::Pair { left: l.vars[0].top, right: l.vars[0].path[0] });
    assert!(tqbf_to_upf(&random_instance(2, 2, 0).unwrap()).is_err());
}

#[test]
fn upf_short_win_path_breaks_the_claim() {
    let q = normalize_for(&random_instance(2, 3, 5).unwrap(), NormalizeTarget::Upf);
    let good = tqbf_to_upf(&q).unwrap();
    let w = family_counts(&good.roles)["win_path"];
    let bad = tqbf_to_upf_with_win(&q, Some(w - 1)).unwrap();
    let bw = family_counts(&bad.roles)["win_path"];
    assert_ne!(bw, bad.roles.len() - bw + 2);
}

fn fig9() -> Position {
    geography(5, &[(0, 1), (0, 3), (1, 2), (2, 4), (3, 1), (3, 4), (4, 1), (4, 0)], 0)
}

#[test]
fn uir4_worked_example_counts() {
    let a = geography_to_uir4(&fig9()).unwrap();
    assert_claims(&a);
    let g = a.position.graph();
    assert_eq!(g.num_vertices(), 25);
    assert_eq!(g.edges().len(), 28);
    assert_eq!(&g.heights()[..5], &[2, 4, 3, 1, 1]);
    assert_eq!(a.position.variant().to_string(), "UIR4");
    assert_eq!(a.position.tokens(), Tokens::Single { token: v(0) });
    // v→w→x→z→v is a 4-cycle, v→y→w→x→z→v a 5-cycle: no bipartition
    assert!(a.claimed_bipartition.is_none());
    assert!(check_bipartite(g).is_err());
}

#[test]
fn uir4_lone_vertex_loses_for_the_mover() {
    let a = geography_to_uir4(&geography(1, &[], 0)).unwrap();
    let r = solve_brute(&a.position, SearchMode::Normal, BUDGET).unwrap();
    assert_eq!(r.result(), GameResult::RightWins);
}

#[test]
fn uir4_two_vertices_match_geography() {
    for arcs in [vec![(0, 1)], vec![(0, 1), (1, 0)], vec![]] {
        for t in 0..2 {
            let p = geography(2, &arcs, t);
            let a = geography_to_uir4(&p).unwrap();
            assert_eq!(
                solve_brute(&a.position, SearchMode::Normal, BUDGET).unwrap().result(),
                solve_brute(&p, SearchMode::Normal, BUDGET).unwrap().result(),
                "{arcs:?} token {t}"
            );
        }
    }
}

#[test]
fn uir4_bipartite_low_degree_input() {
    // 6-cycle with alternating directions: in/out ≤ 2, total degree 2
    let p = geography(6, &[(0, 1), (2, 1), (2, 3), (4, 3), (4, 5), (0, 5)], 0);
    let a = geography_to_uir4(&p).unwrap();
    assert_claims(&a);
    assert!(a.claimed_bipartition.is_some());
    assert!(max_degree(a.position.graph()).max_total <= 3);
}

#[test]
fn artifacts_are_deterministic_and_round_trip() {
    let q = fig4();
    let upr_q = normalize_for(&q, NormalizeTarget::Upr);
    let arts = [
        tqbf_to_dif(&q).unwrap(),
        tqbf_to_dpf(&normalize_for(&q, NormalizeTarget::Dpf)).unwrap(),
        tqbf_to_upr(&upr_q).unwrap(),
        tqbf_to_upf(&normalize_for(&q, NormalizeTarget::Upf)).unwrap(),
        geography_to_uir4(&fig9()).unwrap(),
        stack2_to_stack1(&fig9()).unwrap(),
    ];
    for a in &arts {
        let again = a.rebuild().unwrap();
        assert_eq!(&again, a);
        assert_eq!(again.layout, a.layout);
        let s = serde_json::to_string(a).unwrap();
        let back: ReductionArtifact = serde_json::from_str(&s).unwrap();
        assert_eq!(&back, a, "{}", a.kind);
        assert!(back.layout.is_none());
        let as_position: Position = serde_json::from_str(&s).unwrap();
        assert_eq!(as_position, a.position);
        let dot = a.to_dot();
        assert!(dot.contains("fillcolor"));
    }
}
