use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::report::Report;

/// `HasseEdge(a, b)`: orbit `a` lies in the closure of orbit `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HasseEdge(pub u32, pub u32);

impl fmt::Display for HasseEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

fn reachable_without(edges: &[HasseEdge], skip: HasseEdge) -> bool {
    let mut adj: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for &e in edges.iter().filter(|&&e| e != skip) {
        adj.entry(e.0).or_default().push(e.1);
    }
    let mut seen = BTreeSet::from([skip.0]);
    let mut stack = vec![skip.0];
    while let Some(v) = stack.pop() {
        for &w in adj.get(&v).into_iter().flatten() {
            if w == skip.1 {
                return true;
            }
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    false
}

/// Checks that dimensions strictly increase along every edge and that no edge
/// is implied by a longer path.
pub fn verify_edges(edges: &[HasseEdge], dims: &BTreeMap<u32, u32>) -> Report {
    let mut report = Report::new("closure edges");
    let mut seen = BTreeSet::new();
    for &e in edges {
        let label = format!("edge {e}");
        let (Some(&da), Some(&db)) = (dims.get(&e.0), dims.get(&e.1)) else {
            report.check(label, "unknown orbit", false);
            continue;
        };
        if !seen.insert(e) {
            report.check(label, "duplicate edge", false);
            continue;
        }
        if da >= db {
            report.check(label, format!("dim {da} >= {db}"), false);
        } else if reachable_without(edges, e) {
            report.check(
                label,
                format!("dim {da} < {db}, transitively redundant"),
                false,
            );
        } else {
            report.check(label, format!("dim {da} < {db}"), true);
        }
    }
    report
}

/// Graphviz digraph with one rank per orbit dimension, larger orbits on top.
pub fn hasse_dot(edges: &[HasseEdge], dims: &BTreeMap<u32, u32>) -> String {
    let mut by_dim: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for (&n, &d) in dims {
        by_dim.entry(d).or_default().push(n);
    }
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=circle];\n");
    for (d, nodes) in &by_dim {
        let names: Vec<String> = nodes.iter().map(|n| format!("o{n}")).collect();
        writeln!(
            out,
            "  {{ rank=same; /* dim {d} */ {}; }}",
            names.join("; ")
        )
        .unwrap();
    }
    for n in dims.keys() {
        writeln!(out, "  o{n} [label=\"{n}\"];").unwrap();
    }
    for e in edges {
        writeln!(out, "  o{} -> o{};", e.0, e.1).unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::Atlas;

    fn dims() -> BTreeMap<u32, u32> {
        Atlas::embedded()
            .orbits
            .iter()
            .map(|o| (o.number, o.dim))
            .collect()
    }

    #[test]
    fn embedded_edges() {
        let a = Atlas::embedded();
        let edges = a.hasse_edges();
        assert!(edges.contains(&HasseEdge(1, 2)));
        assert!(edges.contains(&HasseEdge(86, 83)));
        assert!(!edges.contains(&HasseEdge(2, 1)));
        let report = a.verify_hasse();
        assert!(report.passed(), "{report}");
        assert!(report
            .lines
            .iter()
            .any(|l| l.to_string() == "edge (1, 2): dim 17 < 26, OK"));
        assert!(report
            .lines
            .iter()
            .any(|l| l.to_string() == "edge (83, 89): dim 62 < 63, OK"));
    }

    #[test]
    fn negative_controls() {
        let mut edges = Atlas::embedded().hasse_edges().to_vec();
        edges.push(HasseEdge(1, 88));
        let report = verify_edges(&edges, &dims());
        let failed: Vec<String> = report.failures().map(|l| l.label.clone()).collect();
        assert_eq!(failed, ["edge (1, 88)"]);
        let report = verify_edges(&[HasseEdge(2, 1)], &dims());
        assert!(!report.passed());
        let report = verify_edges(&[HasseEdge(1, 99)], &dims());
        assert!(!report.passed());
    }

    #[test]
    fn dot_layout() {
        let a = Atlas::embedded();
        let dot = hasse_dot(a.hasse_edges(), &dims());
        let mut distinct: Vec<u32> = dims().values().copied().collect();
        distinct.sort();
        distinct.dedup();
        assert_eq!(dot.matches("rank=same").count(), distinct.len());
        assert_eq!(dot.matches(" -> ").count(), a.hasse_edges().len());
    }
}
