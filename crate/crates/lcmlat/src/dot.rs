//! DOT rendering of Hasse diagrams: one node per element, one edge per cover
//! pair, drawn bottom-to-top.

use crate::gcdset::GcdSet;
use crate::poset::Structure;

/// DOT digraph of the cover relation with the given node labels.
pub fn structure_to_dot(s: &Structure, labels: &[String]) -> String {
    assert_eq!(labels.len(), s.len());
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for (i, label) in labels.iter().enumerate() {
        out.push_str(&format!("  n{i} [label=\"{}\"];\n", escape(label)));
    }
    for &(a, b) in s.covers() {
        out.push_str(&format!("  n{a} -> n{b};\n"));
    }
    out.push_str("}\n");
    out
}

/// DOT export of a set's divisibility order, nodes labeled by value.
pub fn set_to_dot(set: &GcdSet) -> String {
    let labels: Vec<String> = set.elements().iter().map(|x| x.to_string()).collect();
    structure_to_dot(set.structure(), &labels)
}

/// DOT export of a bare structure, nodes labeled by index.
pub fn bare_structure_to_dot(s: &Structure) -> String {
    let labels: Vec<String> = (0..s.len()).map(|i| i.to_string()).collect();
    structure_to_dot(s, &labels)
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_chain_renders_two_nodes_one_edge() {
        let s = Structure::new(2, &[(0, 1)]).unwrap();
        let dot = bare_structure_to_dot(&s);
        assert_eq!(dot.matches("label=").count(), 2);
        assert_eq!(dot.matches("->").count(), 1);
    }

    #[test]
    fn cube_set_renders_eight_nodes_twelve_edges() {
        let dot = set_to_dot(&crate::catalog::singular_cube_8());
        assert_eq!(dot.matches("label=").count(), 8);
        assert_eq!(dot.matches("->").count(), 12);
        assert!(dot.contains("39270"));
    }

    #[test]
    fn output_is_deterministic() {
        let set = crate::catalog::singular_13();
        assert_eq!(set_to_dot(&set), set_to_dot(&set));
    }
}
