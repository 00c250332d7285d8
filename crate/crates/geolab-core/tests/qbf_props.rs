use geolab_core::qbf::{
    evaluate, normalize_for, optimal_policy, random_instance, Clause, NormalizeTarget, QbfInstance, Side,
};

/// Every n=2, m=1 clause over {±x1, ±x2} up to literal order.
fn all_n2_m1() -> Vec<QbfInstance> {
    let lits = [-2, -1, 1, 2];
    let mut out = Vec::new();
    for (i, &a) in lits.iter().enumerate() {
        for (j, &b) in lits.iter().enumerate().skip(i) {
            for &c in lits.iter().skip(j) {
                out.push(QbfInstance::new(2, vec![Clause::new(a, b, c)]).unwrap());
            }
        }
    }
    out
}

/// Evaluation by plain recursion over full assignments, no early exits.
fn naive(q: &QbfInstance, k: usize, a: u64) -> bool {
    if k == q.n() {
        return q.satisfied_by(a);
    }
    let t = naive(q, k + 1, a | 1 << k);
    let f = naive(q, k + 1, a);
    if k % 2 == 0 {
        t || f
    } else {
        t && f
    }
}

#[test]
fn evaluator_matches_naive_recursion() {
    for seed in 0..300 {
        let n = [2, 4, 6, 8][seed as usize % 4];
        let q = random_instance(n, 1 + seed as usize % 9, seed).unwrap();
        assert_eq!(evaluate(&q).unwrap(), naive(&q, 0, 0), "{q}");
    }
}

#[test]
fn normalization_preserves_truth_exhaustive_n2() {
    let all = all_n2_m1();
    assert_eq!(all.len(), 20);
    for q in &all {
        for t in [NormalizeTarget::Dif, NormalizeTarget::Dpf, NormalizeTarget::Upr, NormalizeTarget::Upf] {
            assert_eq!(evaluate(&normalize_for(q, t)).unwrap(), evaluate(q).unwrap(), "{q} {t:?}");
        }
    }
}

#[test]
fn normalization_preserves_truth_sampled() {
    for seed in 0..200 {
        let n = if seed % 2 == 0 { 4 } else { 6 };
        let q = random_instance(n, 1 + seed as usize % 7, seed).unwrap();
        for t in [NormalizeTarget::Dpf, NormalizeTarget::Upr, NormalizeTarget::Upf] {
            let r = normalize_for(&q, t);
            assert_eq!(evaluate(&r).unwrap(), evaluate(&q).unwrap());
            match t {
                NormalizeTarget::Dpf => assert!(r.m() >= 4 && r.m() % 2 == 0),
                NormalizeTarget::Upf => assert!(r.m() >= 3),
                _ => assert!(r.n() >= 4 && r.m() >= 2),
            }
        }
    }
}

#[test]
fn winning_policies_verified_up_to_twelve() {
    for seed in 0..60 {
        let n = 2 + 2 * (seed as usize % 6);
        let q = random_instance(n, 2 + seed as usize % 12, seed).unwrap();
        let truth = evaluate(&q).unwrap();
        let (win, lose) = if truth { (Side::Existential, Side::Universal) } else { (Side::Universal, Side::Existential) };
        let p = optimal_policy(&q, win).unwrap();
        assert!(p.verify(&q));
        assert!(optimal_policy(&q, lose).is_err());
    }
}

#[test]
fn adding_clauses_never_helps() {
    for seed in 0..200 {
        let q = random_instance(4, 3, seed).unwrap();
        let extra = random_instance(4, 1, seed + 10_000).unwrap();
        let mut clauses = q.clauses().to_vec();
        clauses.push(extra.clauses()[0]);
        let bigger = QbfInstance::new(4, clauses).unwrap();
        assert!(!evaluate(&bigger).unwrap() || evaluate(&q).unwrap());
    }
}

#[test]
fn random_truth_rate_is_mixed() {
    let trues = (0..200).filter(|&s| evaluate(&random_instance(4, 20, s).unwrap()).unwrap()).count();
    assert!(trues > 0 && trues < 200, "{trues}");
}
