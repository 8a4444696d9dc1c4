//! Deterministic DOT rendering: units become nodes, non-unit arrows
//! become labelled edges. Germ groupoids carry their witness normalizer
//! on each edge.

use weylkit_core::groupoid::FiniteGroupoid;
use weylkit_core::pair::WeylGroupoidResult;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\\\""))
}

pub fn render_groupoid(g: &FiniteGroupoid, name: &str) -> String {
    let mut out = String::new();
    out.push_str(&format!("digraph {} {{\n", quote(name)));
    for u in g.units() {
        out.push_str(&format!("  {};\n", quote(u)));
    }
    for (i, a) in g.arrows().iter().enumerate() {
        if g.is_unit_arrow(i) {
            continue;
        }
        out.push_str(&format!(
            "  {} -> {} [label={}];\n",
            quote(g.unit_id(a.source)),
            quote(g.unit_id(a.target)),
            quote(&a.id),
        ));
    }
    out.push_str("}\n");
    out
}

/// Germ groupoid rendering: every edge is annotated with the monomial
/// witness normalizer representing the germ.
pub fn render_weyl(weyl: &WeylGroupoidResult, name: &str) -> String {
    let g = &weyl.groupoid;
    let mut out = String::new();
    out.push_str(&format!("digraph {} {{\n", quote(name)));
    for u in g.units() {
        out.push_str(&format!("  {};\n", quote(u)));
    }
    for (i, a) in g.arrows().iter().enumerate() {
        if g.is_unit_arrow(i) {
            continue;
        }
        let witness = format!("{:?}", weyl.witnesses[i]);
        out.push_str(&format!(
            "  {} -> {} [label={}, witness={}];\n",
            quote(g.unit_id(a.source)),
            quote(g.unit_id(a.target)),
            quote(&a.id),
            quote(&witness),
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use weylkit_core::pair::make_pair;

    #[test]
    fn dot_is_deterministic() {
        let g = FiniteGroupoid::full_relation(2);
        let a = render_groupoid(&g, "r2");
        let b = render_groupoid(&g, "r2");
        assert_eq!(a, b);
        assert!(a.contains("\"0\" -> \"1\""));
        let weyl = make_pair(g.shared()).unwrap().weyl_groupoid().unwrap();
        let w = render_weyl(&weyl, "weyl");
        assert!(w.contains("witness="));
    }
}
