use std::path::{Path, PathBuf};

use geolab_core::qbf::{parse_qdimacs, NormalizeTarget};
use geolab_reductions::{family_counts, geography_to_uir4, stack2_to_stack1, undirect_to_direct, ReductionArtifact, ReductionKind};
use geolab_verify::campaign::formula_artifact;
use geolab_verify::verify_structure;

use crate::input::{json_error, read_text};

fn target(kind: ReductionKind) -> Option<NormalizeTarget> {
    match kind {
        ReductionKind::Dif => Some(NormalizeTarget::Dif),
        ReductionKind::Dpf => Some(NormalizeTarget::Dpf),
        ReductionKind::Upr => Some(NormalizeTarget::Upr),
        ReductionKind::Upf => Some(NormalizeTarget::Upf),
        _ => None,
    }
}

fn build(kind: ReductionKind, input: &Path) -> Result<ReductionArtifact, String> {
    let text = read_text(input)?;
    if let Some(t) = target(kind) {
        let q = parse_qdimacs(&text).map_err(|e| format!("{}: {e}", input.display()))?;
        let nq = geolab_core::qbf::normalize_for(&q, t);
        if (nq.n(), nq.m()) != (q.n(), q.m()) {
            println!(
                "notice: normalized the formula for {kind}: n {} -> {}, m {} -> {} (added clauses keep its truth value)",
                q.n(),
                nq.n(),
                q.m(),
                nq.m()
            );
        }
        return formula_artifact(kind, &nq).map_err(|e| e.to_string());
    }
    let p = serde_json::from_str(&text).map_err(|e| json_error(input, &e))?;
    match kind {
        ReductionKind::Uir4 => geography_to_uir4(&p),
        ReductionKind::U2d => undirect_to_direct(&p),
        _ => stack2_to_stack1(&p),
    }
    .map_err(|e| e.to_string())
}

fn default_out(kind: ReductionKind, input: &Path) -> PathBuf {
    input.with_extension(format!("{}.json", kind.to_string().to_lowercase()))
}

pub fn run(kind: ReductionKind, input: &Path, out: Option<PathBuf>, dot: Option<&Path>) -> Result<u8, String> {
    let a = build(kind, input)?;
    let out = out.unwrap_or_else(|| default_out(kind, input));
    let json = serde_json::to_string_pretty(&a).expect("artifact serializes");
    std::fs::write(&out, json + "\n").map_err(|e| format!("{}: {e}", out.display()))?;
    if let Some(d) = dot {
        std::fs::write(d, a.to_dot()).map_err(|e| format!("{}: {e}", d.display()))?;
    }

    let g = a.position.graph();
    println!("kind        {kind}");
    println!("variant     {}", a.position.variant());
    println!("vertices    {}", g.num_vertices());
    println!("edges       {}", g.edges().len());
    let families: Vec<String> = family_counts(&a.roles).iter().map(|(f, n)| format!("{f} {n}")).collect();
    println!("gadgets     {}", families.join(", "));
    match (&a.claimed_bipartition, &a.odd_cycle) {
        (Some(_), _) => println!("bipartite   yes"),
        (None, Some(c)) => println!("bipartite   no (odd cycle of length {})", c.0.len()),
        (None, None) => println!("bipartite   not claimed"),
    }
    let held = a.sizes.iter().filter(|s| s.expected == s.actual).count();
    println!("sizes       {held} of {} component sizes as constructed", a.sizes.len());
    let r = verify_structure(&a);
    println!("structure   {}", if r.passed() { "PASS" } else { "FAIL" });
    for f in &r.structural_failures {
        println!("  {f}");
    }
    println!("wrote       {}", out.display());
    if let Some(d) = dot {
        println!("wrote       {}", d.display());
    }
    Ok(if r.passed() { 0 } else { 1 })
}
