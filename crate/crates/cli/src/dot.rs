use std::fmt::Write as _;

use gmlw_core::kripke::FiniteModel;

/// Graphviz rendering of a finite model; nodes list the nonzero variables.
pub fn to_dot(m: &FiniteModel) -> String {
    let mut out = String::from("digraph model {\n");
    for (i, w) in m.worlds().iter().enumerate() {
        let vals: Vec<String> = m.valuation(i).iter().map(|(v, x)| format!("{v}={x}")).collect();
        let label = if vals.is_empty() {
            w.clone()
        } else {
            format!("{w}\\n{}", vals.join(", "))
        };
        let _ = writeln!(out, "  \"{w}\" [label=\"{label}\"];");
    }
    for (&(a, b), weight) in m.edges() {
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\" [label=\"{weight}\"];",
            m.world_name(a),
            m.world_name(b)
        );
    }
    out.push_str("}\n");
    out
}
