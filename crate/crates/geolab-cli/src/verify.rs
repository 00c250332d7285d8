use std::path::Path;

use geolab_verify::{run_campaigns, CampaignSpec, VerifyReport};
use serde::Serialize;

use crate::config::Config;
use crate::input::{json_error, read_text};

#[derive(Serialize)]
struct ReportFile<'a> {
    passed: bool,
    campaigns: &'a [VerifyReport],
}

const SHOWN: usize = 3;

pub fn run(spec: Option<&Path>, report: Option<&Path>, cfg: &Config) -> Result<u8, String> {
    let spec = match spec {
        Some(path) => serde_json::from_str::<CampaignSpec>(&read_text(path)?).map_err(|e| json_error(path, &e))?,
        None => CampaignSpec::goldens(),
    };
    if spec.campaigns.is_empty() {
        eprintln!("warning: the spec lists no campaigns");
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.workers).build().map_err(|e| e.to_string())?;
    let reports = pool.install(|| run_campaigns(&spec));

    for r in &reports {
        println!("{r}");
        let details = r
            .mismatches
            .iter()
            .map(|m| format!("{}: expected {}, got {}", m.input, m.expected, m.got))
            .chain(r.structural_failures.iter().cloned());
        for d in details.take(SHOWN) {
            println!("    {d}");
        }
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    println!("{} campaigns, {failed} failed", reports.len());

    if let Some(path) = report {
        let file = ReportFile { passed: failed == 0, campaigns: &reports };
        let json = serde_json::to_string_pretty(&file).expect("reports serialize");
        std::fs::write(path, json + "\n").map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(if failed == 0 { 0 } else { 1 })
}
