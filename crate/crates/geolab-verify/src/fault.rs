//! Fault injection: remove one gadget edge from every DIF artifact of a corpus
//! and rerun the oracle, which should now disagree somewhere.

use std::fmt;

use geolab_core::{Position, VertexId};
use geolab_reductions::{tqbf_to_dif, Gadget, ReductionArtifact, ReductionKind, VertexRole};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::qbf_n2_m1;
use crate::oracle::{verify_altered, Input};
use crate::report::VerifyReport;

/// A vertex located by its place in the construction, independent of the
/// literal a linker vertex carries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Locator {
    pub gadget: Gadget,
    pub slot: String,
}

impl Locator {
    fn of(role: &VertexRole) -> Locator {
        let gadget = match &role.gadget {
            Gadget::Linker { j, occurrence, copy, .. } => Gadget::Linker { j: *j, occurrence: *occurrence, literal: 0, copy: *copy },
            g => g.clone(),
        };
        Locator { gadget, slot: role.slot.clone() }
    }
}

impl fmt::Display for Locator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.gadget {
            Gadget::Variable { i } => write!(f, "x{i}.{}", self.slot),
            Gadget::Clause { j } => write!(f, "c{j}"),
            Gadget::Linker { j, occurrence, copy: 0, .. } => write!(f, "c{j}.lit{occurrence}.extra"),
            Gadget::Linker { j, occurrence, copy, .. } => write!(f, "c{j}.lit{occurrence}.{copy}"),
            g => write!(f, "{}.{}", g.family(), self.slot),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeFault {
    pub from: Locator,
    pub to: Locator,
}

impl fmt::Display for EdgeFault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.from, self.to)
    }
}

impl EdgeFault {
    /// The artifact's position without this edge, if the artifact has it.
    pub fn apply(&self, a: &ReductionArtifact) -> Option<Position> {
        let g = a.position.graph();
        let find = |l: &Locator| -> Vec<VertexId> { a.vertices_where(|r| Locator::of(r) == *l) };
        let (xs, ys) = (find(&self.from), find(&self.to));
        let &(x, y) = g.edges().iter().find(|(u, v)| xs.contains(u) && ys.contains(v))?;
        let g = g.without_edge(x, y).ok()?;
        Position::new(g, a.position.variant(), a.position.tokens(), a.position.to_move()).ok()
    }
}

/// Every edge of an artifact, located by construction roles.
pub fn gadget_edges(a: &ReductionArtifact) -> Vec<EdgeFault> {
    a.position
        .graph()
        .edges()
        .iter()
        .map(|&(x, y)| EdgeFault { from: Locator::of(a.role(x)), to: Locator::of(a.role(y)) })
        .collect()
}

/// The n=2, m=1 formulas as oracle inputs.
pub fn fault_corpus() -> Vec<Input> {
    qbf_n2_m1().into_iter().map(Input::Formula).collect()
}

/// Runs the corpus with `fault` applied; mismatches are the flipped verdicts.
pub fn run_fault(fault: &EdgeFault, budget: u64) -> VerifyReport {
    let alter = |a: &ReductionArtifact| fault.apply(a);
    let mut r = verify_altered(ReductionKind::Dif, &fault_corpus(), budget, &alter);
    r.kind = format!("DIF without {fault}");
    r
}

/// Edges present in every corpus artifact (variable gadgets, their chaining
/// and the arc into the clause), located by role.
pub fn shared_edges() -> Vec<EdgeFault> {
    let corpus: Vec<ReductionArtifact> = qbf_n2_m1().iter().map(|q| tqbf_to_dif(q).expect("corpus formulas are valid")).collect();
    let mut out = gadget_edges(&corpus[0]);
    out.retain(|f| corpus.iter().all(|a| gadget_edges(a).contains(f)));
    out
}

/// How many corpus verdicts each shared single-edge deletion flips.
pub fn discrimination_table(budget: u64) -> Vec<(EdgeFault, usize)> {
    shared_edges()
        .into_iter()
        .map(|f| {
            let flips = run_fault(&f, budget).mismatches.len();
            (f, flips)
        })
        .collect()
}

fn formula_seed(seed: u64, a: &ReductionArtifact) -> u64 {
    let text = serde_json::to_string(&a.source).expect("sources serialize");
    text.bytes().fold(seed ^ 0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// Deletes one seeded random edge from each corpus artifact (chosen per
/// formula) and reruns the oracle; mismatches are the flipped verdicts.
pub fn random_edge_campaign(seed: u64, budget: u64) -> VerifyReport {
    let alter = |a: &ReductionArtifact| {
        let mut rng = ChaCha8Rng::seed_from_u64(formula_seed(seed, a));
        let &(x, y) = a.position.graph().edges().choose(&mut rng)?;
        let g = a.position.graph().without_edge(x, y).ok()?;
        Position::new(g, a.position.variant(), a.position.tokens(), a.position.to_move()).ok()
    };
    let mut r = verify_altered(ReductionKind::Dif, &fault_corpus(), budget, &alter);
    r.kind = format!("DIF random edge deleted (seed {seed})");
    r
}
