//! Structural validation of reduction artifacts against the construction rules.

use geolab_core::qbf::QbfInstance;
use geolab_core::{check_bipartite, max_degree, Orientation, Position, VertexId};
use geolab_reductions::{dif, dpf, family_counts, upf, upr, Gadget, ReductionArtifact, ReductionKind, Source};

use crate::report::VerifyReport;

/// Checks the claimed bipartition (recomputed from the vertex roles where the
/// construction lists the parts), size formulas, degree claims, the UPF win
/// path and odd cycle, and the parity facts of DIF, DPF and UPR.
pub fn verify_structure(a: &ReductionArtifact) -> VerifyReport {
    let mut r = VerifyReport::new(format!("{} structure", a.kind));
    r.instances_run = 1;
    let g = a.position.graph();
    r.check(a.roles.len() == g.num_vertices(), || format!("{} roles for {} vertices", a.roles.len(), g.num_vertices()));
    if r.structural_failures.len() > 0 {
        return r;
    }
    for s in &a.sizes {
        r.check(s.expected == s.actual, || format!("recorded size of {}: expected {}, built {}", s.component, s.expected, s.actual));
    }
    if let Some(bp) = &a.claimed_bipartition {
        if let Err(e) = bp.validate(g) {
            r.fail(format!("claimed bipartition does not validate: {e}"));
        }
    }
    if let Some(c) = &a.odd_cycle {
        r.check(c.0.len() % 2 == 1 && c.is_valid_in(g), || format!("odd cycle witness of length {} is not an odd cycle", c.0.len()));
    }
    let expected_variant = match a.kind {
        ReductionKind::Dif => Some(dif::DIF_VARIANT),
        ReductionKind::Dpf => Some(dpf::DPF_VARIANT),
        ReductionKind::Upr => Some(upr::UPR_VARIANT),
        ReductionKind::Upf => Some(upf::UPF_VARIANT),
        _ => None,
    };
    if let Some(v) = expected_variant {
        r.check(a.position.variant() == v, || format!("variant {} instead of {v}", a.position.variant()));
    }
    match (&a.source, a.kind) {
        (Source::Qbf(q), ReductionKind::Dif) => check_dif(a, q, &mut r),
        (Source::Qbf(q), ReductionKind::Dpf) => check_dpf(a, q, &mut r),
        (Source::Qbf(q), ReductionKind::Upr) => check_upr(a, q, &mut r),
        (Source::Qbf(q), ReductionKind::Upf) => check_upf(a, q, &mut r),
        (Source::Position(p), ReductionKind::Uir4) => check_uir4(a, p, &mut r),
        (Source::Position(p), ReductionKind::S2to1) => check_s2to1(a, p, &mut r),
        (Source::Position(p), ReductionKind::U2d) => check_u2d(a, p, &mut r),
        (_, kind) => r.fail(format!("{kind} artifact with a mismatched source")),
    }
    r
}

fn family(a: &ReductionArtifact, f: &str) -> usize {
    family_counts(&a.roles).get(f).copied().unwrap_or(0)
}

fn sizes(a: &ReductionArtifact, r: &mut VerifyReport, expected: &[(&str, usize)]) {
    for &(f, want) in expected {
        let got = family(a, f);
        r.check(got == want, || format!("{f} vertices: formula gives {want}, artifact has {got}"));
    }
    let total: usize = expected.iter().map(|e| e.1).sum();
    r.check(total == a.roles.len(), || format!("formula total {total}, artifact has {} vertices", a.roles.len()));
}

fn index(slot: &str) -> Option<usize> {
    slot.parse().ok()
}

/// Compares the claimed parts with the listing derived from roles.
fn listed_parts(a: &ReductionArtifact, r: &mut VerifyReport, listed: impl Fn(&Gadget, &str) -> Option<bool>) {
    let Some(bp) = &a.claimed_bipartition else {
        r.fail("no bipartition claimed");
        return;
    };
    let mut wrong = Vec::new();
    for (i, role) in a.roles.iter().enumerate() {
        let v = VertexId::from(i);
        let want = listed(&role.gadget, &role.slot);
        if want.is_none() || want != bp.part_of(v) {
            wrong.push(a.position.graph().name(v));
        }
    }
    r.check(wrong.is_empty(), || format!("{} vertices outside their listed part, e.g. {}", wrong.len(), wrong[0]));
}

fn check_dif(a: &ReductionArtifact, q: &QbfInstance, r: &mut VerifyReport) {
    let n = q.n();
    let odd = n.div_ceil(2);
    let occ = q.clauses().iter().flat_map(|c| c.literals()).map(|l| if l.var() % 2 == 0 { 3 } else { 2 }).sum::<usize>();
    sizes(a, r, &[("variable", 6 * odd + 5 * (n - odd)), ("clause", q.m()), ("linker", occ)]);
    listed_parts(a, r, |gd, slot| match gd {
        Gadget::Variable { .. } => match slot {
            "top" | "l2" | "r2" | "join" => Some(true),
            "l1" | "r1" | "left" | "right" | "bottom" => Some(false),
            _ => None,
        },
        Gadget::Clause { .. } => Some(true),
        Gadget::Linker { copy: 0, .. } => Some(false),
        Gadget::Linker { literal, .. } => Some(literal.unsigned_abs() % 2 == 0),
        _ => None,
    });
}

fn check_dpf(a: &ReductionArtifact, q: &QbfInstance, r: &mut VerifyReport) {
    let (n, m) = (q.n(), q.m());
    sizes(
        a,
        r,
        &[
            ("variable", 3 * n + 2),
            ("clause", m),
            ("delay", 2 * m - 3),
            ("clause_deletion", 2 * m - 3),
            ("escape", m - 1),
            ("linker", 3 * m * (m - 1)),
        ],
    );
    listed_parts(a, r, |gd, slot| match gd {
        Gadget::Variable { .. } => Some(matches!(slot, "top" | "bottom")),
        Gadget::Delay | Gadget::ClauseDeletion { .. } => index(slot).map(|t| t % 2 == 0),
        Gadget::Clause { .. } => Some(true),
        Gadget::Linker { .. } if slot.starts_with("end-") => Some(true),
        Gadget::Linker { .. } => index(slot).map(|t| t % 2 == 0),
        Gadget::Escape => index(slot).map(|t| t % 2 == 1),
        _ => None,
    });
    let Some(bp) = &a.claimed_bipartition else { return };
    let last = |f: &dyn Fn(&Gadget) -> bool| a.vertices_where(|ro| f(&ro.gadget)).last().copied();
    if let Some(d) = last(&|gd| matches!(gd, Gadget::Delay)) {
        r.check(bp.part_of(d) == Some(false), || "parity: the last delay vertex is not in B".into());
    }
    let before_ends = a.vertices_where(|ro| matches!(ro.gadget, Gadget::Linker { .. }) && index(&ro.slot) == Some(m - 3));
    r.check(before_ends.iter().all(|&v| bp.part_of(v) == Some(false)), || {
        "parity: a linker vertex preceding the two end vertices is not in B".into()
    });
}

fn check_upr(a: &ReductionArtifact, q: &QbfInstance, r: &mut VerifyReport) {
    let (n, m) = (q.n(), q.m());
    let linkers: usize = q.clauses().iter().flat_map(|c| c.literals()).map(|l| 2 * upr::linker_len(n, l.var())).sum();
    let side = upr::delay_side(n, m);
    sizes(
        a,
        r,
        &[
            ("variable", 3 * n + 2),
            ("clause", m),
            ("selection", m - 1),
            ("delay", 2 * side),
            ("exit", 1),
            ("clause_connector", m * (n + 4)),
            ("linker", linkers),
            ("escape", 3 * n + 25),
        ],
    );
    listed_parts(a, r, |gd, slot| match gd {
        Gadget::Variable { i } => Some(matches!(slot, "top" | "bottom") == (i % 2 == 1)),
        Gadget::Delay => Some(slot.starts_with("II")),
        Gadget::Exit | Gadget::Selection => Some(false),
        Gadget::ClauseConnector { .. } | Gadget::Escape => index(slot).map(|t| t % 2 == 1),
        Gadget::Clause { .. } => Some(true),
        Gadget::Linker { .. } => index(slot).map(|t| t % 2 == 0),
        _ => None,
    });
    let Some(bp) = &a.claimed_bipartition else { return };
    let g = a.position.graph();
    let ends = |pred: &dyn Fn(&Gadget, usize) -> bool| a.vertices_where(|ro| index(&ro.slot).is_some_and(|t| pred(&ro.gadget, t)));
    // connector end at the clause is in B
    let conn = ends(&|gd, t| matches!(gd, Gadget::ClauseConnector { .. }) && t == n + 4);
    r.check(conn.len() == m && conn.iter().all(|&v| bp.part_of(v) == Some(false)), || {
        "parity: a clause connector vertex next to its clause is not in B".into()
    });
    // linker ends next to variable vertices: left-linkers in A, right-linkers in B
    for (odd, len, want) in [(true, n + 2, Some(true)), (false, n + 7, Some(false))] {
        let vs = ends(&|gd, t| matches!(gd, Gadget::Linker { literal, .. } if (literal.unsigned_abs() % 2 == 1) == odd) && t == len);
        let ok = vs.iter().all(|&v| {
            let var = g.out_adj(v).iter().copied().find(|&w| matches!(a.role(w).gadget, Gadget::Variable { .. }));
            bp.part_of(v) == want && var.is_some_and(|w| bp.part_of(w) == want.map(|b| !b))
        });
        r.check(ok, || format!("parity: a {}-linker end or its variable vertex is in the wrong part", if odd { "left" } else { "right" }));
    }
    let tokens = a.position.tokens();
    r.check(
        bp.part_of(tokens.of(geolab_core::Player::Left)) == Some(true) && bp.part_of(tokens.of(geolab_core::Player::Right)) == Some(false),
        || "tokens do not start Left in A and Right in B".into(),
    );
}

fn check_upf(a: &ReductionArtifact, q: &QbfInstance, r: &mut VerifyReport) {
    let (n, m) = (q.n(), q.m());
    let others = 13 * n + 5 * m * m + 22 * m + 18;
    sizes(
        a,
        r,
        &[
            ("variable", 13 * n),
            ("selection", 1),
            ("clause", m),
            ("clause_deletion", m * upf::deletion_path_len(m)),
            ("delay", upf::delay_len(m)),
            ("clause_connector", m * upf::connector_len(m)),
            ("linker", 3 * m * upf::linker_len(m)),
            ("escape", upf::escape_len(m)),
            ("prize", 1),
            ("win_path", others + 2),
        ],
    );
    let win = family(a, "win_path");
    let rest = a.roles.len() - win;
    r.check(win == rest + 2, || format!("win path has {win} vertices, {rest} lie outside it (want +2)"));
    r.check(a.claimed_bipartition.is_none(), || "UPF artifact claims a bipartition".into());
    match &a.odd_cycle {
        Some(c) if c.0.len() == 13 && c.is_valid_in(a.position.graph()) => {}
        _ if n < 2 => {}
        _ => r.fail("no valid 13-cycle witness through the first two variable gadgets"),
    }
    r.check(check_bipartite(a.position.graph()).is_err(), || "UPF artifact is bipartite".into());
}

fn check_uir4(a: &ReductionArtifact, p: &Position, r: &mut VerifyReport) {
    let src = p.graph();
    r.check(a.roles.len() == 5 * src.num_vertices(), || format!("{} pieces for {} source vertices", a.roles.len(), src.num_vertices()));
    let g = a.position.graph();
    let intra = 4 * src.num_vertices();
    r.check(g.edges().len() == intra + src.edges().len(), || {
        format!("{} edges, expected {intra} on the stand-in paths plus {} arcs", g.edges().len(), src.edges().len())
    });
    let source_bip = check_bipartite(src).is_ok();
    let out_bip = check_bipartite(g).is_ok();
    r.check(source_bip == out_bip, || format!("source bipartite {source_bip} but output bipartite {out_bip}"));
    r.check(a.claimed_bipartition.is_some() == source_bip, || "bipartition claimed for a non-bipartite source or missing".into());
    let d = max_degree(src);
    if d.max_in <= 2 && d.max_out <= 2 && d.max_total <= 3 {
        let got = max_degree(g).max_total;
        r.check(got <= 3, || format!("degree-bounded source gives output degree {got}"));
    }
    r.check(a.position.variant().to_string() == "UIR4", || format!("variant {}", a.position.variant()));
}

fn check_s2to1(a: &ReductionArtifact, p: &Position, r: &mut VerifyReport) {
    let src = p.graph();
    let copies: usize = src.heights().iter().map(|&h| h as usize).sum();
    r.check(a.roles.len() == copies, || format!("{} copies for total height {copies}", a.roles.len()));
    let source_bip = check_bipartite(src).is_ok();
    r.check(check_bipartite(a.position.graph()).is_ok() == source_bip, || "bipartiteness not preserved".into());
    r.check(a.claimed_bipartition.is_some() == source_bip, || "bipartition claim does not follow the source".into());
    r.check(a.position.graph().max_height() <= 1, || "output keeps a stacked vertex".into());
}

fn check_u2d(a: &ReductionArtifact, p: &Position, r: &mut VerifyReport) {
    let src = p.graph();
    let g = a.position.graph();
    r.check(g.orientation() == Orientation::Directed, || "output is not directed".into());
    r.check(g.heights() == src.heights(), || "heights changed".into());
    r.check(g.edges().len() == 2 * src.edges().len(), || format!("{} arcs for {} edges", g.edges().len(), src.edges().len()));
    r.check(src.edges().iter().all(|&(x, y)| g.has_edge(x, y) && g.has_edge(y, x)), || "an edge lacks one of its arcs".into());
}

#[cfg(test)]
mod tests {
    use super::*;
    use geolab_core::qbf::{normalize_for, random_instance, NormalizeTarget};
    use geolab_reductions::{tqbf_to_dif, tqbf_to_dpf, tqbf_to_upf, tqbf_to_upr};

    #[test]
    fn fresh_artifacts_pass() {
        for seed in 0..6 {
            let q = random_instance(4, 3, seed).unwrap();
            for a in [
                tqbf_to_dif(&q).unwrap(),
                tqbf_to_dpf(&normalize_for(&q, NormalizeTarget::Dpf)).unwrap(),
                tqbf_to_upr(&normalize_for(&q, NormalizeTarget::Upr)).unwrap(),
                tqbf_to_upf(&normalize_for(&q, NormalizeTarget::Upf)).unwrap(),
            ] {
                let rep = verify_structure(&a);
                assert!(rep.passed(), "{rep:?}");
            }
        }
    }

    #[test]
    fn short_win_path_fails() {
        let q = normalize_for(&random_instance(2, 3, 1).unwrap(), NormalizeTarget::Upf);
        let w = upf::win_path_len(q.n(), q.m());
        let a = upf::tqbf_to_upf_with_win(&q, Some(w - 1)).unwrap();
        assert!(!verify_structure(&a).passed());
    }
}
