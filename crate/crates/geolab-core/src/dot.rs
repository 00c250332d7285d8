//! Graphviz export. Vertices are labeled "name:height"; deleted vertices are
//! drawn dashed; tokens get a bold outline and an L/R/T marker.

use std::fmt::Write;

use crate::game::{Position, Tokens};
use crate::graph::{GameGraph, VertexId};

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT text for a bare graph; `fill` picks an optional fill color per vertex.
pub fn graph_to_dot(g: &GameGraph, fill: &dyn Fn(VertexId) -> Option<String>) -> String {
    render(g, None, fill)
}

pub fn position_to_dot(p: &Position, fill: &dyn Fn(VertexId) -> Option<String>) -> String {
    render(p.graph(), Some(p.tokens()), fill)
}

fn render(g: &GameGraph, tokens: Option<Tokens>, fill: &dyn Fn(VertexId) -> Option<String>) -> String {
    let (kw, arrow) = if g.is_directed() { ("digraph", "->") } else { ("graph", "--") };
    let mut s = String::new();
    writeln!(s, "{kw} geography {{").unwrap();
    writeln!(s, "  node [shape=circle, fontsize=10];").unwrap();
    for v in g.vertices() {
        let mut attrs = vec![format!("label=\"{}:{}\"", escape(&g.name(v)), g.height(v))];
        if let Some(c) = fill(v) {
            attrs.push(format!("style=filled, fillcolor=\"{}\"", escape(&c)));
        }
        if g.height(v) == 0 {
            attrs.push("style=dashed, color=gray".into());
        }
        let marker = match tokens {
            Some(Tokens::Single { token }) if token == v => Some("T"),
            Some(Tokens::Pair { left, right }) if left == v && right == v => Some("LR"),
            Some(Tokens::Pair { left, .. }) if left == v => Some("L"),
            Some(Tokens::Pair { right, .. }) if right == v => Some("R"),
            _ => None,
        };
        if let Some(m) = marker {
            attrs.push(format!("xlabel=\"{m}\", penwidth=3"));
        }
        writeln!(s, "  {} [{}];", v, attrs.join(", ")).unwrap();
    }
    for &(a, b) in g.edges() {
        writeln!(s, "  {a} {arrow} {b};").unwrap();
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{Player, Variant};
    use crate::graph::{GraphBuilder, Orientation};

    #[test]
    fn labels_and_markers() {
        let mut b = GraphBuilder::new(Orientation::Directed);
        let a = b.add_labeled(2, "top");
        let c = b.add_vertex(1);
        b.add_edge(a, c).unwrap();
        let var: Variant = "DPR2".parse().unwrap();
        let p = Position::new(b.build(), var, Tokens::Pair { left: a, right: c }, Player::Left).unwrap();
        let d = position_to_dot(&p, &|v| (v == a).then(|| "lightblue".to_string()));
        assert!(d.starts_with("digraph"));
        assert!(d.contains("label=\"top:2\""));
        assert!(d.contains("xlabel=\"L\""));
        assert!(d.contains("xlabel=\"R\""));
        assert!(d.contains("0 -> 1;"));
        assert!(d.contains("fillcolor=\"lightblue\""));
    }
}
