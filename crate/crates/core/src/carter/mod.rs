//! Carter diagrams on the roots supporting a normal form.

use std::fmt::Write as _;

use serde::Serialize;

use crate::atlas::Atlas;
use crate::error::{usage, Result};
use crate::liealg::{FourVector, Index4};
use crate::report::{Report, Status};
use crate::roots::{DiagramType, Family, Root};

/// Edge style between two nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    /// Inner product −1.
    Solid,
    /// Inner product +1.
    Dashed,
}

/// Node naming in DOT output.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum NodeLabels {
    #[default]
    Indices,
    Letters,
}

/// Weighted graph on integer vectors in ℤ⁸ with the root inner product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CarterDiagram {
    pub nodes: Vec<[i64; 8]>,
    pub labels: Vec<String>,
    pub gram: Vec<Vec<i64>>,
    pub edges: Vec<(usize, usize, EdgeKind)>,
}

/// `u·v − (Σu)(Σv)/8`.
fn inner(u: &[i64; 8], v: &[i64; 8]) -> i64 {
    let dot: i64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
    let num = 8 * dot - u.iter().sum::<i64>() * v.iter().sum::<i64>();
    num / 8
}

/// Quad roots of the monomials of `e` in lexicographic order.
pub fn support_roots(e: &FourVector) -> Vec<Index4> {
    e.support().collect()
}

impl CarterDiagram {
    fn from_nodes(nodes: Vec<[i64; 8]>, labels: Vec<String>) -> Self {
        let gram: Vec<Vec<i64>> = nodes
            .iter()
            .map(|u| nodes.iter().map(|v| inner(u, v)).collect())
            .collect();
        let edges = gram
            .iter()
            .enumerate()
            .flat_map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .skip(i + 1)
                    .filter_map(move |(j, &g)| match g {
                        -1 => Some((i, j, EdgeKind::Solid)),
                        1 => Some((i, j, EdgeKind::Dashed)),
                        _ => None,
                    })
            })
            .collect();
        CarterDiagram {
            nodes,
            labels,
            gram,
            edges,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Replaces the dashed pair `(i, j)` by the single node `vᵢ + vⱼ`, placed at position `min(i, j)`.
    pub fn contract(&self, i: usize, j: usize) -> Result<CarterDiagram> {
        let n = self.len();
        if i >= n || j >= n || i == j {
            return usage(format!(
                "cannot contract nodes {i} and {j} of a {n}-node diagram"
            ));
        }
        if self.gram[i][j] != 1 {
            return usage(format!(
                "nodes {} and {} have inner product {}, only dashed pairs contract",
                self.labels[i], self.labels[j], self.gram[i][j]
            ));
        }
        let (a, b) = (i.min(j), i.max(j));
        let mut merged = self.nodes[a];
        for (m, x) in merged.iter_mut().zip(&self.nodes[b]) {
            *m += x;
        }
        let label = merged_label(
            &self.nodes[a],
            &self.nodes[b],
            &self.labels[a],
            &self.labels[b],
        );
        let mut nodes = self.nodes.clone();
        let mut labels = self.labels.clone();
        nodes[a] = merged;
        labels[a] = label;
        nodes.remove(b);
        labels.remove(b);
        Ok(CarterDiagram::from_nodes(nodes, labels))
    }

    /// Contracts dashed pairs, first pair in node order each time, until none remain.
    pub fn contract_all(&self) -> CarterDiagram {
        let mut d = self.clone();
        while let Some(&(i, j, _)) = d.edges.iter().find(|e| e.2 == EdgeKind::Dashed) {
            d = d.contract(i, j).expect("dashed pair");
        }
        d
    }

    /// Graphviz graph, solid and dashed edges styled accordingly.
    pub fn to_dot(&self, labels: NodeLabels) -> String {
        let mut out = String::from("graph carter {\n  node [shape=circle];\n");
        for (k, l) in self.labels.iter().enumerate() {
            let shown = match labels {
                NodeLabels::Indices => l.clone(),
                NodeLabels::Letters => letter_name(k),
            };
            writeln!(out, "  n{k} [label=\"{shown}\"];").unwrap();
        }
        for &(i, j, kind) in &self.edges {
            let style = match kind {
                EdgeKind::Solid => "solid",
                EdgeKind::Dashed => "dashed",
            };
            writeln!(out, "  n{i} -- n{j} [style={style}];").unwrap();
        }
        out.push_str("}\n");
        out
    }

    /// Whether the solid edges form the Dynkin diagram of `t` and there are no dashed edges.
    pub fn is_dynkin(&self, t: &DiagramType) -> bool {
        if self.len() != t.rank() || self.edges.iter().any(|e| e.2 == EdgeKind::Dashed) {
            return false;
        }
        if self.gram.iter().enumerate().any(|(i, row)| row[i] != 2) {
            return false;
        }
        let ours: Vec<(usize, usize)> = self.edges.iter().map(|&(i, j, _)| (i, j)).collect();
        isomorphic(self.len(), &ours, &dynkin_edges(t))
    }
}

fn letter_name(k: usize) -> String {
    let mut n = k;
    let mut s = String::new();
    loop {
        s.insert(0, (b'a' + (n % 26) as u8) as char);
        if n < 26 {
            return s;
        }
        n = n / 26 - 1;
    }
}

fn merged_label(u: &[i64; 8], v: &[i64; 8], lu: &str, lv: &str) -> String {
    let unit = |w: &[i64; 8]| w.iter().all(|&c| c == 0 || c == 1) && w.iter().sum::<i64>() == 4;
    if !(unit(u) && unit(v)) {
        return format!("{lu}+{lv}");
    }
    let only_u = (0..8)
        .find(|&k| u[k] == 1 && v[k] == 0)
        .expect("distinct roots");
    let only_v = (0..8)
        .find(|&k| v[k] == 1 && u[k] == 0)
        .expect("distinct roots");
    let (lo, hi) = (only_u.min(only_v), only_u.max(only_v));
    let mut s = String::new();
    for k in 0..8 {
        if k == lo {
            write!(s, "({}+{})", lo + 1, hi + 1).unwrap();
        } else if u[k] == 1 && v[k] == 1 {
            write!(s, "{}", k + 1).unwrap();
        }
    }
    s
}

/// Diagram on the support roots of `e`, nodes in monomial order.
pub fn build_diagram(e: &FourVector) -> CarterDiagram {
    let roots = support_roots(e);
    CarterDiagram::from_nodes(
        roots.iter().map(|&s| Root::Quad(s).vector()).collect(),
        roots.iter().map(ToString::to_string).collect(),
    )
}

/// Gram matrix of the support roots of `e` under the root inner product.
pub fn gram_matrix(e: &FourVector) -> Vec<Vec<i64>> {
    build_diagram(e).gram
}

/// Edges of the Dynkin diagram of `t`, components placed consecutively.
pub fn dynkin_edges(t: &DiagramType) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    let mut base = 0;
    for &(family, n) in t.components() {
        let chain_end = match family {
            Family::A => n,
            Family::D => n - 1,
            Family::E => n,
        };
        let chain_start = usize::from(family == Family::E);
        for k in chain_start..chain_end - 1 {
            edges.push((base + k, base + k + 1));
        }
        match family {
            Family::A => {}
            Family::D => edges.push((base + n - 3, base + n - 1)),
            Family::E => edges.push((base, base + 3)),
        }
        base += n;
    }
    edges
}

/// Graph isomorphism by backtracking over degree-compatible assignments.
pub fn isomorphic(n: usize, a: &[(usize, usize)], b: &[(usize, usize)]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let adjacency = |edges: &[(usize, usize)]| {
        let mut m = vec![vec![false; n]; n];
        for &(i, j) in edges {
            if i >= n || j >= n {
                return None;
            }
            m[i][j] = true;
            m[j][i] = true;
        }
        Some(m)
    };
    let (Some(ma), Some(mb)) = (adjacency(a), adjacency(b)) else {
        return false;
    };
    let deg = |m: &Vec<Vec<bool>>, i: usize| m[i].iter().filter(|&&x| x).count();
    let mut sa: Vec<usize> = (0..n).map(|i| deg(&ma, i)).collect();
    let mut sb: Vec<usize> = (0..n).map(|i| deg(&mb, i)).collect();
    let (da, db) = (sa.clone(), sb.clone());
    sa.sort();
    sb.sort();
    if sa != sb {
        return false;
    }
    fn extend(
        k: usize,
        map: &mut Vec<usize>,
        used: &mut [bool],
        ma: &[Vec<bool>],
        mb: &[Vec<bool>],
        da: &[usize],
        db: &[usize],
    ) -> bool {
        if k == map.len() {
            return true;
        }
        for c in 0..used.len() {
            if used[c] || da[k] != db[c] || (0..k).any(|p| ma[k][p] != mb[c][map[p]]) {
                continue;
            }
            used[c] = true;
            map[k] = c;
            if extend(k + 1, map, used, ma, mb, da, db) {
                return true;
            }
            used[c] = false;
        }
        false
    }
    let mut map = vec![0; n];
    let mut used = vec![false; n];
    extend(0, &mut map, &mut used, &ma, &mb, &da, &db)
}

/// Whether `b = P a Pᵀ` for some permutation matrix `P`.
pub fn same_up_to_permutation(a: &[Vec<i64>], b: &[Vec<i64>]) -> bool {
    let n = a.len();
    if b.len() != n || a.iter().chain(b).any(|r| r.len() != n) {
        return false;
    }
    fn extend(
        k: usize,
        map: &mut Vec<usize>,
        used: &mut [bool],
        a: &[Vec<i64>],
        b: &[Vec<i64>],
    ) -> bool {
        if k == map.len() {
            return true;
        }
        for c in 0..used.len() {
            if used[c] || a[k][k] != b[c][c] || (0..k).any(|p| a[k][p] != b[c][map[p]]) {
                continue;
            }
            used[c] = true;
            map[k] = c;
            if extend(k + 1, map, used, a, b) {
                return true;
            }
            used[c] = false;
        }
        false
    }
    let mut map = vec![0; n];
    let mut used = vec![false; n];
    extend(0, &mut map, &mut used, a, b)
}

/// Printed partial Cartan matrix of orbit 42.
pub const GRAM_42: [[i64; 6]; 6] = [
    [2, -1, 0, 0, -1, 0],
    [-1, 2, 0, -1, 0, -1],
    [0, 0, 2, -1, -1, 1],
    [0, -1, -1, 2, 1, 0],
    [-1, 0, -1, 1, 2, 0],
    [0, -1, 1, 0, 0, 2],
];

/// Printed contracted matrix of orbit 42.
pub const CONTRACTED_42: [[i64; 4]; 4] = [
    [2, -1, 0, -1],
    [-1, 2, -1, -1],
    [0, -1, 6, -2],
    [-1, -1, -2, 6],
];

fn to_rows<const N: usize>(m: &[[i64; N]; N]) -> Vec<Vec<i64>> {
    m.iter().map(|r| r.to_vec()).collect()
}

/// The printed diagram examples: orbits 20, 22 and 88 against A3, A5 and E7, and the orbit 42 matrices.
pub fn verify_printed_examples(atlas: &Atlas) -> Report {
    let mut report = Report::new("Carter diagrams");
    for (n, label) in [(20, "A3"), (22, "A5"), (88, "E7")] {
        let t: DiagramType = label.parse().expect("valid label");
        match atlas.orbit_record(n) {
            Ok(rec) => report.check(
                format!("orbit {n} diagram"),
                format!("isomorphic to {label}"),
                build_diagram(&rec.normal_form).is_dynkin(&t),
            ),
            Err(e) => report.check(format!("orbit {n} diagram"), e.to_string(), false),
        }
    }
    match atlas.orbit_record(42) {
        Ok(rec) => {
            let d = build_diagram(&rec.normal_form);
            report.check(
                "orbit 42 gram",
                "printed 6x6 matrix up to permutation",
                same_up_to_permutation(&d.gram, &to_rows(&GRAM_42)),
            );
            let c = d.contract_all();
            report.check(
                "orbit 42 contracted",
                format!(
                    "printed 4x4 matrix up to permutation, nodes {}",
                    c.labels.join(" ")
                ),
                same_up_to_permutation(&c.gram, &to_rows(&CONTRACTED_42)),
            );
        }
        Err(e) => report.check("orbit 42", e.to_string(), false),
    }
    report
}

/// Diagram of every stored normal form against its type label when the label is a plain Dynkin type.
pub fn dynkin_sweep(atlas: &Atlas) -> Report {
    let mut report = Report::new("Carter sweep");
    for rec in atlas.orbit_records() {
        let Some(label) = rec.type_label.as_deref() else {
            continue;
        };
        let Ok(t) = label.parse::<DiagramType>() else {
            continue;
        };
        let d = build_diagram(&rec.normal_form);
        let unit = rec.normal_form.terms().all(|(_, c)| c.is_one());
        let ok = unit && d.is_dynkin(&t);
        report.push(
            format!("orbit {}", rec.number),
            format!("{} nodes, type {label}", d.len()),
            if ok { Status::Ok } else { Status::Flagged },
        );
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fv(s: &str) -> FourVector {
        FourVector::parse_expr(s).unwrap()
    }

    #[test]
    fn printed_examples() {
        let r = verify_printed_examples(Atlas::embedded());
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn a3_path() {
        let d = build_diagram(&fv("e1256 + e1347 + e2348"));
        assert_eq!(d.labels, ["1256", "1347", "2348"]);
        assert_eq!(d.edges.len(), 2);
        assert!(d.edges.iter().all(|e| e.2 == EdgeKind::Solid));
        assert!(d.is_dynkin(&"A3".parse().unwrap()));
        assert!(!d.is_dynkin(&"3A1".parse().unwrap()));
        let dot = d.to_dot(NodeLabels::Indices);
        assert_eq!(dot.matches("style=solid").count(), 2);
        assert!(d.to_dot(NodeLabels::Letters).contains("label=\"c\""));
        assert_eq!(support_roots(&FourVector::zero()), []);
        assert!(
            build_diagram(&FourVector::zero())
                .to_dot(NodeLabels::Indices)
                .lines()
                .count()
                == 3
        );
        assert_eq!(gram_matrix(&fv("e1234")), [[2]]);
    }

    #[test]
    fn orbit_44() {
        let d = build_diagram(&fv("e1246 + e1357 + e2348 + e2358"));
        assert_eq!(d.gram[2][3], 1);
        assert_eq!(
            d.to_dot(NodeLabels::Indices)
                .matches("style=dashed")
                .count(),
            1
        );
        let c = d.contract(2, 3).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.labels[2], "23(4+5)8");
        assert_eq!(c.gram[2][2], 6);
        assert!(d.contract(0, 1).is_err());
        assert!(d.contract(0, 9).is_err());
    }

    #[test]
    fn contraction_preserves_form() {
        let d = build_diagram(&Atlas::embedded().orbit_record(42).unwrap().normal_form);
        let (i, j, _) = *d.edges.iter().find(|e| e.2 == EdgeKind::Dashed).unwrap();
        let c = d.contract(i, j).unwrap();
        let n = d.len();
        let p: Vec<Vec<i64>> = (0..n - 1)
            .map(|r| {
                let src = if r < j { r } else { r + 1 };
                (0..n)
                    .map(|k| i64::from(k == src || (r == i.min(j) && k == j)))
                    .collect()
            })
            .collect();
        let pg: Vec<Vec<i64>> = p
            .iter()
            .map(|row| {
                (0..n)
                    .map(|k| (0..n).map(|m| row[m] * d.gram[m][k]).sum())
                    .collect()
            })
            .collect();
        let pgpt: Vec<Vec<i64>> = pg
            .iter()
            .map(|row| {
                p.iter()
                    .map(|q| (0..n).map(|m| row[m] * q[m]).sum())
                    .collect()
            })
            .collect();
        assert_eq!(pgpt, c.gram);
    }

    #[test]
    fn dynkin_graphs() {
        let e7: DiagramType = "E7".parse().unwrap();
        assert_eq!(dynkin_edges(&e7).len(), 6);
        assert!(!isomorphic(
            7,
            &dynkin_edges(&e7),
            &dynkin_edges(&"A7".parse().unwrap())
        ));
        assert!(!isomorphic(
            7,
            &dynkin_edges(&e7),
            &dynkin_edges(&"D7".parse().unwrap())
        ));
        assert!(isomorphic(
            4,
            &[(0, 1), (1, 2), (1, 3)],
            &dynkin_edges(&"D4".parse().unwrap())
        ));
        assert_eq!(dynkin_edges(&"A2+A1".parse().unwrap()), [(0, 1)]);
        assert_eq!(letter_name(27), "ab");
    }

    #[test]
    fn unit_entries() {
        for rec in Atlas::embedded().orbit_records() {
            if rec.normal_form.terms().all(|(_, c)| c.is_one()) {
                let g = gram_matrix(&rec.normal_form);
                for (i, row) in g.iter().enumerate() {
                    assert_eq!(row[i], 2);
                    assert!(row
                        .iter()
                        .enumerate()
                        .all(|(j, &x)| i == j || (-1..=1).contains(&x)));
                }
            }
        }
    }
}
