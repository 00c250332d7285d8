//! Prefix-alternating quantified 3-CNF: ∃x₁∀x₂…∀xₙ with n even.
//!
//! Assignments are bit masks: bit i-1 holds the value of xᵢ.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_VAR_CAP: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Literal(i32);

impl Literal {
    pub fn new(var: usize, positive: bool) -> Literal {
        assert!(var >= 1, "variables are numbered from 1");
        let v = var as i32;
        Literal(if positive { v } else { -v })
    }

    pub fn from_dimacs(x: i32) -> Option<Literal> {
        (x != 0).then_some(Literal(x))
    }

    pub fn var(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn negated(self) -> Literal {
        Literal(-self.0)
    }

    pub fn dimacs(self) -> i32 {
        self.0
    }

    pub fn holds(self, assignment: u64) -> bool {
        ((assignment >> (self.var() - 1)) & 1 == 1) == self.is_positive()
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_positive() {
            write!(f, "x{}", self.var())
        } else {
            write!(f, "~x{}", self.var())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Clause(pub [Literal; 3]);

impl Clause {
    pub fn new(a: i32, b: i32, c: i32) -> Clause {
        Clause([a, b, c].map(|x| Literal::from_dimacs(x).expect("nonzero literal")))
    }

    pub fn literals(&self) -> &[Literal; 3] {
        &self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Existential,
    Universal,
}

impl Side {
    /// x₁ is existential, x₂ universal, and so on.
    pub fn of_var(i: usize) -> Side {
        if i % 2 == 1 {
            Side::Existential
        } else {
            Side::Universal
        }
    }

    pub fn opponent(self) -> Side {
        match self {
            Side::Existential => Side::Universal,
            Side::Universal => Side::Existential,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QbfError {
    #[error("variable count {0} must be even and at least 2")]
    BadVariableCount(usize),
    #[error("formula needs at least one clause")]
    NoClauses,
    #[error("literal {lit} in clause {clause} refers to a variable outside 1..={n}")]
    VariableOutOfRange { clause: usize, lit: i32, n: usize },
    #[error("{n} variables exceed the evaluator cap of {cap}")]
    TooManyVariables { n: usize, cap: usize },
    #[error("the {0:?} side has no winning policy: the formula favors the other side")]
    NoWinningPolicy(Side),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "QbfJson", into = "QbfJson")]
pub struct QbfInstance {
    n: usize,
    clauses: Vec<Clause>,
}

#[derive(Serialize, Deserialize)]
struct QbfJson {
    n: usize,
    clauses: Vec<[i32; 3]>,
}

impl From<QbfInstance> for QbfJson {
    fn from(q: QbfInstance) -> Self {
        QbfJson { n: q.n, clauses: q.clauses.iter().map(|c| c.0.map(Literal::dimacs)).collect() }
    }
}

impl TryFrom<QbfJson> for QbfInstance {
    type Error = QbfError;

    fn try_from(j: QbfJson) -> Result<Self, QbfError> {
        let mut clauses = Vec::with_capacity(j.clauses.len());
        for (ci, c) in j.clauses.iter().enumerate() {
            let mut lits = [Literal(1); 3];
            for (slot, &x) in lits.iter_mut().zip(c) {
                *slot = Literal::from_dimacs(x).ok_or(QbfError::VariableOutOfRange { clause: ci, lit: 0, n: j.n })?;
            }
            clauses.push(Clause(lits));
        }
        QbfInstance::new(j.n, clauses)
    }
}

impl QbfInstance {
    pub fn new(n: usize, clauses: Vec<Clause>) -> Result<QbfInstance, QbfError> {
        if n < 2 || n % 2 == 1 {
            return Err(QbfError::BadVariableCount(n));
        }
        if clauses.is_empty() {
            return Err(QbfError::NoClauses);
        }
        for (ci, c) in clauses.iter().enumerate() {
            for l in c.0 {
                if l.var() > n {
                    return Err(QbfError::VariableOutOfRange { clause: ci, lit: l.dimacs(), n });
                }
            }
        }
        Ok(QbfInstance { n, clauses })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn satisfied_by(&self, assignment: u64) -> bool {
        self.clauses.iter().all(|c| c.0.iter().any(|l| l.holds(assignment)))
    }

    /// Whether some clause contains the literal.
    pub fn mentions(&self, lit: Literal) -> bool {
        self.clauses.iter().any(|c| c.0.contains(&lit))
    }

    pub fn to_qdimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.n, self.m());
        for i in 1..=self.n {
            let q = if Side::of_var(i) == Side::Existential { 'e' } else { 'a' };
            s.push_str(&format!("{q} {i} 0\n"));
        }
        for c in &self.clauses {
            s.push_str(&format!("{} {} {} 0\n", c.0[0].dimacs(), c.0[1].dimacs(), c.0[2].dimacs()));
        }
        s
    }
}

impl fmt::Display for QbfInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.n {
            let q = if Side::of_var(i) == Side::Existential { "E" } else { "A" };
            write!(f, "{q}x{i} ")?;
        }
        let parts: Vec<String> = self
            .clauses
            .iter()
            .map(|c| format!("({} | {} | {})", c.0[0], c.0[1], c.0[2]))
            .collect();
        write!(f, "{}", parts.join(" & "))
    }
}

/// Status of the formula once x₁..x_k are fixed: Some(v) when already decided.
fn partial_status(q: &QbfInstance, k: usize, assignment: u64) -> Option<bool> {
    let mut all_sat = true;
    for c in &q.clauses {
        let mut sat = false;
        let mut open = false;
        for l in c.0 {
            if l.var() <= k {
                sat |= l.holds(assignment);
            } else {
                open = true;
            }
        }
        if !sat && !open {
            return Some(false);
        }
        all_sat &= sat;
    }
    all_sat.then_some(true)
}

fn minimax(q: &QbfInstance, k: usize, assignment: u64) -> bool {
    if let Some(v) = partial_status(q, k, assignment) {
        return v;
    }
    let i = k + 1;
    let with = |b: bool| minimax(q, i, assignment | ((b as u64) << k));
    match Side::of_var(i) {
        Side::Existential => with(true) || with(false),
        Side::Universal => with(true) && with(false),
    }
}

pub fn evaluate(q: &QbfInstance) -> Result<bool, QbfError> {
    evaluate_capped(q, DEFAULT_VAR_CAP)
}

/// Exhaustive alternating minimax over the assignment tree.
pub fn evaluate_capped(q: &QbfInstance, cap: usize) -> Result<bool, QbfError> {
    if q.n > cap {
        return Err(QbfError::TooManyVariables { n: q.n, cap });
    }
    Ok(minimax(q, 0, 0))
}

/// Truth value once x₁..x_k are fixed by `assignment`.
pub fn evaluate_from(q: &QbfInstance, k: usize, assignment: u64) -> bool {
    minimax(q, k, assignment)
}

/// Choices of one side as an explicit decision tree keyed by
/// (variable, assignment of the lower-indexed variables).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Policy {
    pub side: Side,
    pub n: usize,
    choices: BTreeMap<(usize, u64), bool>,
}

impl Policy {
    /// Value for variable `var` given earlier variables in `prefix`
    /// (bits above var-1 are ignored).
    pub fn choose(&self, var: usize, prefix: u64) -> Option<bool> {
        let mask = if var > 1 { (1u64 << (var - 1)) - 1 } else { 0 };
        self.choices.get(&(var, prefix & mask)).copied()
    }

    pub fn len(&self) -> usize {
        self.choices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choices.is_empty()
    }

    /// Every opposing sequence, answered by this policy, ends in a win for its side.
    pub fn verify(&self, q: &QbfInstance) -> bool {
        self.verify_from(q, 0, 0)
    }

    fn verify_from(&self, q: &QbfInstance, k: usize, assignment: u64) -> bool {
        if k == q.n {
            return q.satisfied_by(assignment) == (self.side == Side::Existential);
        }
        let i = k + 1;
        if Side::of_var(i) == self.side {
            match self.choose(i, assignment) {
                Some(b) => self.verify_from(q, i, assignment | ((b as u64) << k)),
                None => false,
            }
        } else {
            [false, true].iter().all(|&b| self.verify_from(q, i, assignment | ((b as u64) << k)))
        }
    }
}

/// A winning policy for `side`, checked exhaustively before it is returned.
pub fn optimal_policy(q: &QbfInstance, side: Side) -> Result<Policy, QbfError> {
    let truth = evaluate(q)?;
    if truth != (side == Side::Existential) {
        return Err(QbfError::NoWinningPolicy(side));
    }
    let mut p = Policy { side, n: q.n, choices: BTreeMap::new() };
    build_policy(q, side, 0, 0, &mut p.choices);
    assert!(p.verify(q), "policy construction must be winning");
    Ok(p)
}

fn build_policy(q: &QbfInstance, side: Side, k: usize, assignment: u64, out: &mut BTreeMap<(usize, u64), bool>) {
    if k == q.n {
        return;
    }
    let i = k + 1;
    let want = side == Side::Existential;
    let set = |b: bool| assignment | ((b as u64) << k);
    if Side::of_var(i) == side {
        let b = minimax(q, i, set(true)) == want;
        out.insert((i, assignment), b);
        build_policy(q, side, i, set(b), out);
    } else {
        for b in [false, true] {
            build_policy(q, side, i, set(b), out);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NormalizeTarget {
    Dif,
    Dpf,
    Upr,
    Upf,
}

/// Equi-true instance meeting a reduction's preconditions.
pub fn normalize_for(q: &QbfInstance, target: NormalizeTarget) -> QbfInstance {
    let mut out = q.clone();
    match target {
        NormalizeTarget::Dif => {}
        NormalizeTarget::Dpf => pad_by_copies(&mut out, |m| m >= 4 && m % 2 == 0),
        NormalizeTarget::Upf => pad_by_copies(&mut out, |m| m >= 3),
        NormalizeTarget::Upr => {
            while out.n < 4 {
                out.n += 2;
            }
            for i in 1..=out.n {
                let pos = Literal::new(i, true);
                if !out.mentions(pos) || !out.mentions(pos.negated()) {
                    out.clauses.push(Clause([pos, pos, pos.negated()]));
                }
            }
            pad_by_copies(&mut out, |m| m >= 2);
        }
    }
    out
}

fn pad_by_copies(q: &mut QbfInstance, done: impl Fn(usize) -> bool) {
    let base = q.clauses.len();
    let mut i = 0;
    while !done(q.clauses.len()) {
        q.clauses.push(q.clauses[i % base]);
        i += 1;
    }
}

/// Uniform random 3-literal clauses over x₁..xₙ, deterministic per seed.
pub fn random_instance(n: usize, m: usize, seed: u64) -> Result<QbfInstance, QbfError> {
    if n < 2 || n % 2 == 1 {
        return Err(QbfError::BadVariableCount(n));
    }
    if m == 0 {
        return Err(QbfError::NoClauses);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let clauses = (0..m)
        .map(|_| Clause([(); 3].map(|_| Literal::new(rng.gen_range(1..=n), rng.gen_bool(0.5)))))
        .collect();
    QbfInstance::new(n, clauses)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QdimacsErrorKind {
    MissingHeader,
    BadHeader,
    BadNumber,
    Non3Cnf,
    BadAlternation,
    OddVariableCount,
    UnquantifiedVariable,
    DuplicateQuantifier,
    UnterminatedClause,
    NoClauses,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind:?}: {detail}")]
pub struct QdimacsError {
    pub line: usize,
    pub kind: QdimacsErrorKind,
    pub detail: String,
}

fn qerr(line: usize, kind: QdimacsErrorKind, detail: impl Into<String>) -> QdimacsError {
    QdimacsError { line, kind, detail: detail.into() }
}

/// Parses QDIMACS whose quantifier lines name one variable each, alternating
/// from ∃. Variables are renumbered in prefix order. Trailing `0` on
/// quantifier lines is optional.
pub fn parse_qdimacs(text: &str) -> Result<QbfInstance, QdimacsError> {
    use QdimacsErrorKind as K;
    let mut header_seen = false;
    let mut order: Vec<(i64, usize)> = Vec::new();
    let mut clauses: Vec<(usize, Vec<i64>)> = Vec::new();
    let mut current: Vec<i64> = Vec::new();
    let mut current_line = 0;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('p') {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 || parts[1] != "cnf" || parts[2].parse::<usize>().is_err() || parts[3].parse::<usize>().is_err() {
                return Err(qerr(line_no, K::BadHeader, line));
            }
            header_seen = true;
            continue;
        }
        if !header_seen {
            return Err(qerr(line_no, K::MissingHeader, "expected \"p cnf <vars> <clauses>\" first"));
        }
        let mut toks = line.split_whitespace();
        let first = toks.clone().next().unwrap_or("");
        if first == "e" || first == "a" {
            if !clauses.is_empty() || !current.is_empty() {
                return Err(qerr(line_no, K::BadAlternation, "quantifier after clauses"));
            }
            toks.next();
            let mut vars = Vec::new();
            for t in toks {
                let x: i64 = t.parse().map_err(|_| qerr(line_no, K::BadNumber, t))?;
                if x == 0 {
                    break;
                }
                if x < 0 {
                    return Err(qerr(line_no, K::BadNumber, t));
                }
                vars.push(x);
            }
            if vars.len() != 1 {
                return Err(qerr(line_no, K::BadAlternation, "each quantifier block must hold exactly one variable"));
            }
            let i = order.len() + 1;
            let want = if Side::of_var(i) == Side::Existential { "e" } else { "a" };
            if first != want {
                return Err(qerr(line_no, K::BadAlternation, format!("variable #{i} must be quantified '{want}'")));
            }
            if order.iter().any(|&(v, _)| v == vars[0]) {
                return Err(qerr(line_no, K::DuplicateQuantifier, vars[0].to_string()));
            }
            order.push((vars[0], i));
            continue;
        }
        for t in toks {
            let x: i64 = t.parse().map_err(|_| qerr(line_no, K::BadNumber, t))?;
            if current.is_empty() {
                current_line = line_no;
            }
            if x == 0 {
                if current.len() != 3 {
                    return Err(qerr(current_line, K::Non3Cnf, format!("clause has {} literals", current.len())));
                }
                clauses.push((current_line, std::mem::take(&mut current)));
            } else {
                current.push(x);
            }
        }
    }
    if !header_seen {
        return Err(qerr(last_line.max(1), K::MissingHeader, "no header"));
    }
    if !current.is_empty() {
        return Err(qerr(current_line, K::UnterminatedClause, "missing 0"));
    }
    if order.len() % 2 == 1 {
        return Err(qerr(last_line, K::OddVariableCount, format!("{} quantified variables", order.len())));
    }
    if clauses.is_empty() {
        return Err(qerr(last_line, K::NoClauses, "no clauses"));
    }
    let index: BTreeMap<i64, usize> = order.iter().copied().collect();
    let mut out = Vec::with_capacity(clauses.len());
    for (line, c) in clauses {
        let mut lits = [Literal(1); 3];
        for (slot, x) in lits.iter_mut().zip(c) {
            let i = *index
                .get(&x.abs())
                .ok_or_else(|| qerr(line, K::UnquantifiedVariable, x.abs().to_string()))?;
            *slot = Literal::new(i, x > 0);
        }
        out.push(Clause(lits));
    }
    QbfInstance::new(order.len(), out).map_err(|e| qerr(last_line, K::OddVariableCount, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: usize, cs: &[(i32, i32, i32)]) -> QbfInstance {
        QbfInstance::new(n, cs.iter().map(|&(a, b, c)| Clause::new(a, b, c)).collect()).unwrap()
    }

    pub(crate) fn fig4() -> QbfInstance {
        q(4, &[(-1, 2, 3), (1, 3, -4)])
    }

    #[test]
    fn trivial_truths() {
        assert!(evaluate(&q(2, &[(1, 1, 1)])).unwrap());
        assert!(!evaluate(&q(2, &[(2, 2, 2)])).unwrap());
    }

    #[test]
    fn fig4_golden() {
        // x1 := F satisfies clause one outright (x̄1); clause two then needs x3 ∨ x̄4,
        // and the existential x3 := T settles it.
        assert!(evaluate(&fig4()).unwrap());
    }

    #[test]
    fn policies() {
        let t = q(2, &[(1, 1, 1)]);
        let p = optimal_policy(&t, Side::Existential).unwrap();
        assert_eq!(p.choose(1, 0), Some(true));
        assert_eq!(optimal_policy(&t, Side::Universal), Err(QbfError::NoWinningPolicy(Side::Universal)));
        let f = q(2, &[(2, 2, 2)]);
        let p = optimal_policy(&f, Side::Universal).unwrap();
        assert_eq!(p.choose(2, 0), Some(false));
        assert_eq!(p.choose(2, 1), Some(false));
        assert!(optimal_policy(&fig4(), Side::Existential).unwrap().verify(&fig4()));
    }

    #[test]
    fn cap_enforced() {
        let big = random_instance(26, 3, 1).unwrap();
        assert_eq!(evaluate(&big), Err(QbfError::TooManyVariables { n: 26, cap: 24 }));
    }

    #[test]
    fn normalization_shapes() {
        let base = q(2, &[(1, 1, -2)]);
        assert_eq!(normalize_for(&base, NormalizeTarget::Dif), base);
        let d = normalize_for(&base, NormalizeTarget::Dpf);
        assert_eq!(d.m(), 4);
        assert!(d.clauses().iter().all(|c| *c == base.clauses()[0]));
        let d5 = normalize_for(&q(2, &[(1, 1, 1), (2, 2, 2), (1, 2, 2), (1, 1, 2), (-1, -2, 1)]), NormalizeTarget::Dpf);
        assert_eq!(d5.m(), 6);
        assert_eq!(normalize_for(&base, NormalizeTarget::Upf).m(), 3);
        let u = normalize_for(&base, NormalizeTarget::Upr);
        assert_eq!(u.n(), 4);
        for i in 1..=4 {
            assert!(u.mentions(Literal::new(i, true)) && u.mentions(Literal::new(i, false)));
        }
        assert_eq!(evaluate(&base).unwrap(), evaluate(&u).unwrap());
    }

    #[test]
    fn random_is_deterministic() {
        assert_eq!(random_instance(4, 5, 9).unwrap(), random_instance(4, 5, 9).unwrap());
        let one = random_instance(2, 1, 3).unwrap();
        assert_eq!(one.m(), 1);
        assert!(one.clauses()[0].0.iter().all(|l| l.var() <= 2));
    }

    #[test]
    fn qdimacs_basic() {
        let p = parse_qdimacs("p cnf 2 1\ne 1\na 2\n1 1 -2 0\n").unwrap();
        assert_eq!(p, q(2, &[(1, 1, -2)]));
        let back = parse_qdimacs(&p.to_qdimacs()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn qdimacs_errors() {
        let e = parse_qdimacs("p cnf 2 1\ne 1 0\na 2 0\n1 -2 0\n").unwrap_err();
        assert_eq!((e.kind, e.line), (QdimacsErrorKind::Non3Cnf, 4));
        let e = parse_qdimacs("p cnf 2 1\na 1 0\ne 2 0\n1 1 -2 0\n").unwrap_err();
        assert_eq!((e.kind, e.line), (QdimacsErrorKind::BadAlternation, 2));
        let e = parse_qdimacs("p cnf 3 1\ne 1 0\na 2 0\ne 3 0\n1 2 3 0\n").unwrap_err();
        assert_eq!(e.kind, QdimacsErrorKind::OddVariableCount);
        let e = parse_qdimacs("e 1 0\n").unwrap_err();
        assert_eq!(e.kind, QdimacsErrorKind::MissingHeader);
        let e = parse_qdimacs("p cnf 2 1\ne 1 0\na 2 0\n1 5 2 0\n").unwrap_err();
        assert_eq!(e.kind, QdimacsErrorKind::UnquantifiedVariable);
    }

    #[test]
    fn qdimacs_renumbers_prefix_order() {
        let p = parse_qdimacs("c comment\np cnf 9 1\ne 7 0\na 3 0\n7 -3 3 0\n").unwrap();
        assert_eq!(p, q(2, &[(1, -2, 2)]));
    }

    #[test]
    fn json_shape() {
        let s = serde_json::to_string(&fig4()).unwrap();
        assert_eq!(s, r#"{"n":4,"clauses":[[-1,2,3],[1,3,-4]]}"#);
        assert_eq!(serde_json::from_str::<QbfInstance>(&s).unwrap(), fig4());
        assert!(serde_json::from_str::<QbfInstance>(r#"{"n":3,"clauses":[[1,2,3]]}"#).is_err());
    }
}
