use std::path::PathBuf;

use geolab_core::solver::{matching_applicable, solve_with, SolveOptions};
use geolab_core::{solve_by_matching, SearchMode, SolveError, Variant};

use crate::config::Config;
use crate::input::{describe, parse_draw_on, read_position};

pub struct SolveArgs {
    pub position: PathBuf,
    pub variant: Option<Variant>,
    pub pv: bool,
    pub draw_on: Option<String>,
    pub json: bool,
}

pub fn run(args: &SolveArgs, cfg: &Config) -> Result<u8, String> {
    let mut p = read_position(&args.position)?;
    if let Some(v) = args.variant {
        p = p.with_variant(v).map_err(|e| format!("--variant {v}: {e}"))?;
    }
    let mode = match &args.draw_on {
        Some(s) => {
            let (vertex, mover) = parse_draw_on(p.graph(), s)?;
            SearchMode::DrawOnReach { vertex, mover }
        }
        None => SearchMode::Normal,
    };
    let by_matching = mode == SearchMode::Normal && !args.pv && matching_applicable(&p).is_ok();
    let res = if by_matching {
        solve_by_matching(&p)
    } else {
        solve_with(&p, &SolveOptions { mode, budget: cfg.node_budget, table_cap: cfg.table_cap, want_pv: args.pv })
    };
    let r = match res {
        Ok(r) => r,
        Err(SolveError::BudgetExhausted { budget }) => {
            eprintln!("unsolved: node budget of {budget} exhausted (raise --budget)");
            return Ok(2);
        }
        Err(e) => return Err(e.to_string()),
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&r).expect("report serializes"));
        return Ok(0);
    }
    let g = p.graph();
    println!("variant     {}", p.variant());
    println!("to move     {}", p.to_move());
    println!("result      {}", r.result());
    println!("method      {}", if by_matching { "maximum matching" } else { "search" });
    match r.optimal_move {
        Some(m) => println!("best move   {}", describe(g, m)),
        None => println!("best move   none"),
    }
    println!("nodes       {}", r.nodes_expanded);
    println!("table hits  {}", r.table_hits);
    if let Some(pv) = &r.outcome.principal_variation {
        println!("pv          {} moves", pv.len());
        for m in pv {
            println!("  {}", describe(g, *m));
        }
    }
    Ok(0)
}
