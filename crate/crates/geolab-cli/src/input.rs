use std::path::Path;

use geolab_core::{GameGraph, Move, Player, Position, VertexId};

pub fn read_text(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn json_error(path: &Path, e: &serde_json::Error) -> String {
    format!("{}:{}:{}: {e}", path.display(), e.line(), e.column())
}

/// Reads a position, or the position inside a reduction artifact.
pub fn read_position(path: &Path) -> Result<Position, String> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| json_error(path, &e))
}

/// A vertex by numeric id or by label.
pub fn vertex(g: &GameGraph, s: &str) -> Result<VertexId, String> {
    let s = s.trim();
    if let Ok(i) = s.parse::<u32>() {
        if (i as usize) < g.num_vertices() {
            return Ok(VertexId(i));
        }
    }
    g.vertices()
        .find(|&v| g.label(v) == Some(s))
        .ok_or_else(|| format!("no vertex {s:?}"))
}

/// "from to delete", each an id or a label.
pub fn parse_move(g: &GameGraph, line: &str) -> Result<Move, String> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    if parts.len() != 3 {
        return Err(format!("expected \"from to delete\", got {:?}", line.trim()));
    }
    Ok(Move { from: vertex(g, parts[0])?, to: vertex(g, parts[1])?, delete: vertex(g, parts[2])? })
}

/// "v5:L" for `--draw-on`.
pub fn parse_draw_on(g: &GameGraph, s: &str) -> Result<(VertexId, Player), String> {
    let (v, p) = s.rsplit_once(':').ok_or_else(|| format!("--draw-on {s:?}: expected VERTEX:PLAYER"))?;
    Ok((vertex(g, v)?, p.parse()?))
}

pub fn describe(g: &GameGraph, m: Move) -> String {
    let base = format!("{m}  ({} -> {}", g.name(m.from), g.name(m.to));
    if m.is_regular() {
        base + ")"
    } else {
        format!("{base}, delete {})", g.name(m.delete))
    }
}
