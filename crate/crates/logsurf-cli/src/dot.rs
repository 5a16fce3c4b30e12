//! Graphviz rendering of a model: each vertex is labelled by its
//! self-intersection `-w`, boundary curves get double circles and contracted
//! curves are greyed out.

use logsurf::LogSurfaceModel;
use std::fmt::Write;

fn quoted(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn to_dot(model: &LogSurfaceModel, name: &str) -> String {
    let g = model.graph();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "graph {} {{",
        quoted(if name.is_empty() { "model" } else { name })
    );
    for (v, vx) in g.vertices().iter().enumerate() {
        let mut label = format!("{}\\n{}", vx.id, -vx.weight);
        if vx.genus > 0 {
            let _ = write!(label, " g{}", vx.genus);
        }
        let mut attrs = vec![format!("label=\"{}\"", label.replace('"', "\\\""))];
        attrs.push(format!(
            "shape={}",
            if model.in_boundary(v) {
                "doublecircle"
            } else {
                "circle"
            }
        ));
        if model.is_contracted(v) {
            attrs.push("style=filled".to_string());
            attrs.push("fillcolor=grey".to_string());
            attrs.push("color=grey40".to_string());
        }
        let _ = writeln!(out, "  {} [{}];", quoted(&vx.id.0), attrs.join(", "));
    }
    for e in g.edges() {
        let label = if e.multiplicity > 1 {
            format!(" [label=\"{}\"]", e.multiplicity)
        } else {
            String::new()
        };
        let _ = writeln!(out, "  {} -- {}{};", quoted(&e.a.0), quoted(&e.b.0), label);
    }
    out.push_str("}\n");
    out
}
