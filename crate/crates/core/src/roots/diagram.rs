use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{usage, Error, Result};
use crate::exactmath::Rational;

/// Simply-laced Dynkin family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    E,
    D,
    A,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        }
    }

    /// Number of roots of the irreducible system of this family and rank.
    pub fn root_count(self, rank: usize) -> usize {
        match (self, rank) {
            (Family::A, n) => n * (n + 1),
            (Family::D, n) => 2 * n * (n - 1),
            (Family::E, 6) => 72,
            (Family::E, 7) => 126,
            (Family::E, 8) => 240,
            _ => unreachable!("no such Dynkin type"),
        }
    }
}

/// Multiset of irreducible simply-laced components, e.g. `D5+A1` or `3A1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DiagramType {
    components: Vec<(Family, usize)>,
}

impl DiagramType {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(mut components: Vec<(Family, usize)>) -> Result<Self> {
        for &(f, n) in &components {
            let ok = match f {
                Family::A => n >= 1,
                Family::D => n >= 4,
                Family::E => (6..=8).contains(&n),
            };
            if !ok {
                return usage(format!("no Dynkin type {}{n}", f.letter()));
            }
        }
        components.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        Ok(DiagramType { components })
    }

    pub fn components(&self) -> &[(Family, usize)] {
        &self.components
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.1).sum()
    }

    pub fn root_count(&self) -> usize {
        self.components.iter().map(|&(f, n)| f.root_count(n)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

impl fmt::Display for DiagramType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.components.len() {
            let c = self.components[i];
            let k = self.components[i..].iter().take_while(|&&x| x == c).count();
            let mult = if k > 1 { k.to_string() } else { String::new() };
            parts.push(format!("{mult}{}{}", c.0.letter(), c.1));
            i += k;
        }
        f.write_str(&parts.join("+"))
    }
}

impl FromStr for DiagramType {
    type Err = Error;

    /// Parses labels such as `E7`, `D5+A1`, `A2+3A1`; empty or `0` is the empty type.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() || t == "0" {
            return Ok(DiagramType::empty());
        }
        let mut comps = Vec::new();
        for term in t.split('+') {
            let bad = || Error::Usage(format!("invalid diagram type {s:?}"));
            let pos = term
                .find(|c: char| c.is_ascii_alphabetic())
                .ok_or_else(bad)?;
            let mult: usize = if pos == 0 {
                1
            } else {
                term[..pos].parse().map_err(|_| bad())?
            };
            let fam = match &term[pos..pos + 1] {
                "A" => Family::A,
                "D" => Family::D,
                "E" => Family::E,
                _ => return Err(bad()),
            };
            let rank: usize = term[pos + 1..].parse().map_err(|_| bad())?;
            comps.extend(std::iter::repeat_n((fam, rank), mult));
        }
        DiagramType::new(comps)
    }
}

impl Serialize for DiagramType {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for DiagramType {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn lex_positive(v: &[Rational]) -> Option<bool> {
    v.iter().find(|x| !x.is_zero()).map(Rational::is_positive)
}

/// Simple roots of a root system given by coordinate vectors, for lexicographic positivity.
pub fn simple_system(roots: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let set: HashSet<&Vec<Rational>> = roots.iter().collect();
    let mut positives = Vec::new();
    for r in roots {
        let neg: Vec<Rational> = r.iter().map(|x| -x).collect();
        if !set.contains(&neg) {
            return usage("root set is not closed under negation");
        }
        match lex_positive(r) {
            None => return usage("zero vector in root set"),
            Some(true) => positives.push(r.clone()),
            Some(false) => {}
        }
    }
    positives.sort();
    positives.dedup();
    let pos_set: HashSet<&Vec<Rational>> = positives.iter().collect();
    let mut decomposable = HashSet::new();
    for (i, a) in positives.iter().enumerate() {
        for b in &positives[i + 1..] {
            let s: Vec<Rational> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if pos_set.contains(&s) {
                decomposable.insert(s);
            }
        }
    }
    Ok(positives
        .into_iter()
        .filter(|r| !decomposable.contains(r))
        .collect())
}

/// Identifies the Dynkin type of a simply-laced root system.
///
/// `inner` is the scalar product on the coordinate space. Inputs that are not
/// a root system closed under negation, or not simply laced, are rejected.
pub fn classify_with<F>(roots: &[Vec<Rational>], inner: F) -> Result<DiagramType>
where
    F: Fn(&[Rational], &[Rational]) -> Rational,
{
    if roots.is_empty() {
        return Ok(DiagramType::empty());
    }
    let simple = simple_system(roots)?;
    let n = simple.len();
    let norms: Vec<Rational> = simple.iter().map(|a| inner(a, a)).collect();
    if norms.iter().any(|x| *x != norms[0]) {
        return usage("root system is not simply laced");
    }
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            let c = Rational::from(2) * inner(&simple[i], &simple[j]) / &norms[j];
            if c.is_zero() {
                continue;
            }
            if c != Rational::from(-1) {
                return usage(format!("Cartan entry {c} between simple roots"));
            }
            adj[i].push(j);
            adj[j].push(i);
        }
    }
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut nodes = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < nodes.len() {
            for &m in &adj[nodes[k]] {
                if !seen[m] {
                    seen[m] = true;
                    nodes.push(m);
                }
            }
            k += 1;
        }
        comps.push(classify_tree(&nodes, &adj)?);
    }
    let t = DiagramType::new(comps)?;
    if t.root_count() != roots.len() {
        return usage(format!(
            "{} roots cannot form a system of type {t} ({} roots)",
            roots.len(),
            t.root_count()
        ));
    }
    Ok(t)
}

fn classify_tree(nodes: &[usize], adj: &[Vec<usize>]) -> Result<(Family, usize)> {
    let n = nodes.len();
    let edges: usize = nodes.iter().map(|&v| adj[v].len()).sum::<usize>() / 2;
    if edges != n - 1 {
        return usage("Dynkin graph contains a cycle");
    }
    let branch: Vec<usize> = nodes
        .iter()
        .copied()
        .filter(|&v| adj[v].len() > 2)
        .collect();
    match branch.as_slice() {
        [] => Ok((Family::A, n)),
        [b] if adj[*b].len() == 3 => {
            let mut arms: Vec<usize> = adj[*b].iter().map(|&s| arm_length(*b, s, adj)).collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => Ok((Family::D, n)),
                [1, 2, 2] => Ok((Family::E, 6)),
                [1, 2, 3] => Ok((Family::E, 7)),
                [1, 2, 4] => Ok((Family::E, 8)),
                _ => usage(format!("no Dynkin diagram with arms {arms:?}")),
            }
        }
        _ => usage("Dynkin graph has too many branch points"),
    }
}

fn arm_length(from: usize, start: usize, adj: &[Vec<usize>]) -> usize {
    let (mut prev, mut cur, mut len) = (from, start, 1);
    loop {
        let next: Vec<usize> = adj[cur].iter().copied().filter(|&m| m != prev).collect();
        match next.as_slice() {
            [m] => {
                prev = cur;
                cur = *m;
                len += 1;
            }
            _ => return len,
        }
    }
}

/// Standard dot product.
pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    /// Roots of A_n as eᵢ − eⱼ in ℤ^{n+1}.
    fn a_roots(n: usize) -> Vec<Vec<Rational>> {
        let mut out = Vec::new();
        for i in 0..=n {
            for j in 0..=n {
                if i != j {
                    let mut v = vec![0; n + 1];
                    v[i] = 1;
                    v[j] = -1;
                    out.push(ints(&v));
                }
            }
        }
        out
    }

    /// Roots of D_n as ±eᵢ ± eⱼ.
    fn d_roots(n: usize) -> Vec<Vec<Rational>> {
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                    let mut v = vec![0; n];
                    v[i] = si;
                    v[j] = sj;
                    out.push(ints(&v));
                }
            }
        }
        out
    }

    #[test]
    fn parse_and_display() {
        for s in [
            "E7", "D5+A1", "3A1", "A3+2A1", "2A2+A1", "A3+A2+A1", "A2+3A1",
        ] {
            assert_eq!(s.parse::<DiagramType>().unwrap().to_string(), s);
        }
        assert_eq!("A1+D5".parse::<DiagramType>().unwrap().to_string(), "D5+A1");
        assert!("".parse::<DiagramType>().unwrap().is_empty());
        assert_eq!("4A1".parse::<DiagramType>().unwrap().rank(), 4);
        assert!("D3".parse::<DiagramType>().is_err());
        assert!("F4".parse::<DiagramType>().is_err());
    }

    #[test]
    fn classical_systems() {
        for n in 1..6 {
            assert_eq!(
                classify_with(&a_roots(n), dot).unwrap().to_string(),
                format!("A{n}")
            );
        }
        for n in 4..7 {
            assert_eq!(
                classify_with(&d_roots(n), dot).unwrap().to_string(),
                format!("D{n}")
            );
        }
        assert!(classify_with(&[], dot).unwrap().is_empty());
    }

    #[test]
    fn sums_of_components() {
        let mut roots = a_roots(2);
        for r in roots.iter_mut() {
            r.extend(ints(&[0, 0]));
        }
        roots.push(ints(&[0, 0, 0, 1, -1]));
        roots.push(ints(&[0, 0, 0, -1, 1]));
        assert_eq!(classify_with(&roots, dot).unwrap().to_string(), "A2+A1");
    }

    #[test]
    fn rejects_non_systems() {
        assert!(classify_with(&[ints(&[1, 0])], dot).is_err());
        // B2 is not simply laced.
        let b2: Vec<Vec<Rational>> = [
            [1, 0],
            [-1, 0],
            [0, 1],
            [0, -1],
            [1, 1],
            [-1, -1],
            [1, -1],
            [-1, 1],
        ]
        .iter()
        .map(|v| ints(v))
        .collect();
        assert!(classify_with(&b2, dot).is_err());
        // Two orthogonal roots plus their sum: not closed under reflection.
        let bad: Vec<Vec<Rational>> = [[1, -1, 0], [-1, 1, 0], [0, 1, -1], [0, -1, 1]]
            .iter()
            .map(|v| ints(v))
            .collect();
        assert!(classify_with(&bad, dot).is_err());
    }
}
