use std::fmt::Write as _;

use super::{UnoGraph, Vertex};

fn node_name(v: &Vertex) -> String {
    format!("p{}_c{}n{}_{}", v.player, v.card.color, v.card.number, v.occurrence)
}

/// Graphviz text: one node statement per vertex in vertex order, then each edge
/// once, sorted by its endpoint names.
pub fn export_dot(g: &UnoGraph) -> String {
    let directed = g.graph().is_directed();
    let (keyword, arrow) = if directed { ("digraph", "->") } else { ("graph", "--") };
    let names: Vec<String> = g.vertices().iter().map(node_name).collect();
    let mut edges: Vec<(&str, &str)> = g
        .graph()
        .edges()
        .into_iter()
        .map(|(u, v)| {
            let (a, b) = (names[u].as_str(), names[v].as_str());
            if !directed && b < a {
                (b, a)
            } else {
                (a, b)
            }
        })
        .collect();
    edges.sort_unstable();

    let mut out = String::new();
    let _ = writeln!(out, "{keyword} uno {{");
    for name in &names {
        let _ = writeln!(out, "  {name};");
    }
    for (a, b) in edges {
        let _ = writeln!(out, "  {a} {arrow} {b};");
    }
    out.push_str("}\n");
    out
}
