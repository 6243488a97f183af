//! Named verification suites over the whole library.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::atlas::Atlas;
use crate::carter::{dynkin_edges, dynkin_sweep, same_up_to_permutation, verify_printed_examples};
use crate::error::{Error, Result};
use crate::exactmath::minimal_polynomial;
use crate::families::verify_families;
use crate::liealg::{
    ad_matrix, bracket, bracket11, is_nilpotent, jordan_decompose, killing_gram, FourVector,
    GradedElement, DIM,
};
use crate::nilpotent::{verify_classification, verify_nilpotent_tables, verify_orbit_dims};
use crate::report::Report;
use crate::roots::{
    cartan_matrix, cartan_subspace, parse_basis, roots_of_g, simple_roots, verify_table1,
};

/// Number of random triples in the Jacobi check.
pub const JACOBI_TRIPLES: usize = 200;

/// A named group of reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Structure,
    Table1,
    Table2,
    NnForms,
    Families,
    Hasse,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 7] = [
        "structure",
        "table1",
        "table2",
        "nnforms",
        "families",
        "hasse",
        "all",
    ];
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "structure" => Suite::Structure,
            "table1" => Suite::Table1,
            "table2" => Suite::Table2,
            "nnforms" => Suite::NnForms,
            "families" => Suite::Families,
            "hasse" => Suite::Hasse,
            "all" => Suite::All,
            _ => {
                return Err(Error::Usage(format!(
                    "unknown suite {s:?}; expected one of {:?}",
                    Suite::NAMES
                )))
            }
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = [
            Suite::Structure,
            Suite::Table1,
            Suite::Table2,
            Suite::NnForms,
            Suite::Families,
            Suite::Hasse,
            Suite::All,
        ]
        .iter()
        .position(|s| s == self)
        .expect("listed");
        f.write_str(Suite::NAMES[i])
    }
}

/// Runs the reports of `suite` in a fixed order.
pub fn run_suite(suite: Suite, atlas: &Atlas, seed: u64) -> Vec<Report> {
    match suite {
        Suite::Structure => vec![structure_report(seed), cartan_report(), jordan_report()],
        Suite::Table1 => vec![verify_table1(atlas, seed)],
        Suite::Table2 => vec![verify_orbit_dims(atlas), verify_classification(atlas)],
        Suite::NnForms => vec![
            verify_nilpotent_tables(atlas),
            verify_printed_examples(atlas),
            dynkin_sweep(atlas),
        ],
        Suite::Families => vec![verify_families(atlas, seed)],
        Suite::Hasse => vec![hasse_report(atlas)],
        Suite::All => [
            Suite::Structure,
            Suite::Table1,
            Suite::Table2,
            Suite::NnForms,
            Suite::Families,
            Suite::Hasse,
        ]
        .into_iter()
        .flat_map(|s| run_suite(s, atlas, seed))
        .collect(),
    }
}

fn e7_cartan() -> Vec<Vec<i64>> {
    let edges = dynkin_edges(&"E7".parse().expect("valid type"));
    (0..7)
        .map(|i| {
            (0..7)
                .map(|j| match (i == j, edges.contains(&(i.min(j), i.max(j)))) {
                    (true, _) => 2,
                    (false, true) => -1,
                    (false, false) => 0,
                })
                .collect()
        })
        .collect()
}

/// Dimension, Killing form, roots, simple system and the Jacobi identity.
pub fn structure_report(seed: u64) -> Report {
    let mut report = Report::new("structure");
    report.check("dimension", format!("dim g = {DIM}"), DIM == 133);
    let rank = killing_gram().rank();
    report.check("Killing form", format!("Gram rank {rank}"), rank == DIM);
    let roots = roots_of_g().len();
    report.check("roots", format!("{roots} roots"), roots == 126);
    let simple = simple_roots();
    let cm = cartan_matrix(&simple);
    let cm: Vec<Vec<i64>> = cm
        .to_rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_i64().unwrap_or(i64::MAX)).collect())
        .collect();
    report.check(
        "simple system",
        format!(
            "{} simple roots, E7 Cartan matrix up to relabeling",
            simple.len()
        ),
        same_up_to_permutation(&cm, &e7_cartan()),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let failures = (0..JACOBI_TRIPLES)
        .filter(|_| {
            let x = GradedElement::random(&mut rng, 0.3);
            let y = GradedElement::random(&mut rng, 0.3);
            let z = GradedElement::random(&mut rng, 0.3);
            let sum = bracket(&x, &bracket(&y, &z))
                .add(&bracket(&y, &bracket(&z, &x)))
                .add(&bracket(&z, &bracket(&x, &y)));
            !sum.is_zero()
        })
        .count();
    report.check(
        "Jacobi identity",
        format!("{failures} failures in {JACOBI_TRIPLES} random triples, seed {seed}"),
        failures == 0,
    );
    report
}

/// The seven spanning vectors of the Cartan subspace commute and are not nilpotent.
pub fn cartan_report() -> Report {
    let mut report = Report::new("Cartan subspace");
    let c = cartan_subspace();
    for i in 0..7 {
        for j in i + 1..7 {
            report.check(
                format!("p{} p{}", i + 1, j + 1),
                "commute",
                bracket11(&c[i], &c[j]).is_zero(),
            );
        }
    }
    for (i, p) in c.iter().enumerate() {
        report.check(
            format!("p{}", i + 1),
            "not nilpotent",
            !is_nilpotent(&GradedElement::from_fourvector(p.clone())),
        );
    }
    report
}

/// Jordan decomposition of a semisimple, a nilpotent and a mixed element.
pub fn jordan_report() -> Report {
    let mut report = Report::new("Jordan decomposition");
    let p1 = GradedElement::from_fourvector(cartan_subspace()[0].clone());
    let e = GradedElement::from_fourvector(FourVector::e("1234"));
    let p = parse_basis("2P(1)+2P(3)-2P(7)")
        .map(|b| GradedElement::from_fourvector(b[0].to_fourvector()));
    let mixed_e = GradedElement::from_fourvector(FourVector::e("1357"));
    match jordan_decompose(&p1) {
        Ok((s, n)) => report.check(
            "p1",
            "semisimple part p1, nilpotent part 0",
            s == p1 && n.is_zero(),
        ),
        Err(err) => report.check("p1", err.to_string(), false),
    }
    match jordan_decompose(&e) {
        Ok((s, n)) => report.check(
            "e1234",
            "semisimple part 0, nilpotent part e1234",
            s.is_zero() && n == e,
        ),
        Err(err) => report.check("e1234", err.to_string(), false),
    }
    let mixed = p.and_then(|p| {
        let (s, n) = jordan_decompose(&p.add(&mixed_e))?;
        let squarefree = minimal_polynomial(&ad_matrix(&s))?.is_squarefree();
        Ok((
            s == p && n == mixed_e,
            bracket(&s, &n).is_zero(),
            is_nilpotent(&n),
            squarefree,
        ))
    });
    match mixed {
        Ok((parts, commute, nil, semi)) => report.check(
            "2(p1+p3-p7) + e1357",
            format!("expected parts {parts}, commuting {commute}, nilpotent part {nil}, squarefree ad minimal polynomial {semi}"),
            parts && commute && nil && semi,
        ),
        Err(err) => report.check("2(p1+p3-p7) + e1357", err.to_string(), false),
    }
    report
}

/// Closure edges, palindromic characteristics and the reversal partner of orbit 93.
pub fn hasse_report(atlas: &Atlas) -> Report {
    let mut report = atlas.verify_hasse();
    report.extend(atlas.palindromic_report());
    match atlas.reversal_partner(93) {
        Ok(p) => report.check("orbit 93 reversal", format!("partner {p:?}"), p == Some(94)),
        Err(e) => report.check("orbit 93 reversal", e.to_string(), false),
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for n in Suite::NAMES {
            assert_eq!(n.parse::<Suite>().unwrap().to_string(), n);
        }
        assert!("tables".parse::<Suite>().is_err());
    }

    #[test]
    fn e7_matrix_shape() {
        let m = e7_cartan();
        assert_eq!(m.iter().flatten().filter(|&&x| x == -1).count(), 12);
    }

    #[test]
    fn quick_suites() {
        let atlas = Atlas::embedded();
        assert!(cartan_report().passed());
        assert!(hasse_report(atlas).passed());
        let r = jordan_report();
        assert!(r.passed(), "{r}");
    }
}
