//! Embedded tables: semisimple families, nilpotent orbits with normal forms,
//! nilpotent parts of mixed families, and closure edges between orbits.

mod hasse;

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::liealg::FourVector;
use crate::nilpotent::Characteristic;
use crate::report::{Report, Status};

pub use hasse::{hasse_dot, verify_edges, HasseEdge};

const EMBEDDED: &str = include_str!("../../data/atlas.json");

/// Number of nilpotent orbits.
pub const ORBIT_COUNT: u32 = 94;

/// Row of the table of semisimple families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub number: u32,
    /// Basis of `c_p` in P-notation, stored verbatim.
    pub basis: String,
    #[serde(rename = "type")]
    pub type_label: String,
    pub weyl_order: u64,
    pub gamma_order: u64,
}

/// Row of the table of nilpotent classes with stabilizer dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRow {
    pub number: u32,
    pub marks: Characteristic,
    #[serde(rename = "type")]
    pub type_label: String,
    /// Corrected stabilizer dimension.
    pub d: u32,
    /// Stabilizer dimension as originally printed.
    pub d_original: u32,
    pub s0: String,
}

impl ClassRow {
    pub fn corrected(&self) -> bool {
        self.d != self.d_original
    }
}

/// Row of the table of normal forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalFormRow {
    pub number: u32,
    pub marks: Characteristic,
    pub normal_form: String,
    pub dim: u32,
    /// Orbit dimension implied by the original stabilizer column, where it differs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_claimed: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixedRow {
    pub number: u32,
    pub marks: Vec<u32>,
    #[serde(rename = "type")]
    pub type_label: String,
}

/// Nilpotent parts of four-vectors of one mixed family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixedTable {
    pub family: u32,
    pub rows: Vec<MixedRow>,
}

/// Merged view of one nilpotent orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitRecord {
    pub number: u32,
    pub characteristic: Characteristic,
    pub type_label: Option<String>,
    pub d: Option<u32>,
    pub s0: Option<String>,
    pub normal_form: FourVector,
    pub dim: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Atlas {
    pub families: Vec<FamilyRecord>,
    pub table2: Vec<ClassRow>,
    pub orbits: Vec<NormalFormRow>,
    pub mixed: Vec<MixedTable>,
    pub hasse_edges: Vec<HasseEdge>,
    /// Additional printed vectors keyed by name, e.g. `f22`.
    pub examples: BTreeMap<String, String>,
}

impl Atlas {
    pub fn from_json(text: &str) -> Result<Atlas> {
        let atlas: Atlas = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            msg: e.to_string(),
        })?;
        atlas.validate()?;
        Ok(atlas)
    }

    pub fn load(path: &Path) -> Result<Atlas> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
        Atlas::from_json(&text)
    }

    /// The compiled-in atlas.
    pub fn embedded() -> &'static Atlas {
        static ATLAS: OnceLock<Atlas> = OnceLock::new();
        ATLAS.get_or_init(|| Atlas::from_json(EMBEDDED).expect("embedded atlas is valid"))
    }

    fn validate(&self) -> Result<()> {
        let numbers: Vec<u32> = self.orbits.iter().map(|o| o.number).collect();
        if numbers != (1..=ORBIT_COUNT).collect::<Vec<_>>() {
            return usage("normal form rows must be numbered 1..94 in order");
        }
        for o in &self.orbits {
            let e = FourVector::parse_expr(&o.normal_form)?;
            if e.is_zero() {
                return usage(format!("orbit {} has a zero normal form", o.number));
            }
        }
        for r in &self.table2 {
            if !(1..=ORBIT_COUNT).contains(&r.number) {
                return usage(format!("class row {} out of range", r.number));
            }
        }
        for e in &self.hasse_edges {
            if e.0 == e.1 || !(1..=ORBIT_COUNT).contains(&e.0) || !(1..=ORBIT_COUNT).contains(&e.1)
            {
                return usage(format!("invalid closure edge {e}"));
            }
        }
        for (k, f) in self.families.iter().enumerate() {
            if f.number as usize != k + 1 {
                return usage("family rows must be numbered consecutively from 1");
            }
        }
        for name in self.examples.values() {
            FourVector::parse_expr(name)?;
        }
        Ok(())
    }

    pub fn normal_form_row(&self, n: u32) -> Result<&NormalFormRow> {
        self.orbits
            .iter()
            .find(|o| o.number == n)
            .ok_or_else(|| Error::Usage(format!("orbit {n} out of range 1..{ORBIT_COUNT}")))
    }

    pub fn class_row(&self, n: u32) -> Option<&ClassRow> {
        self.table2.iter().find(|r| r.number == n)
    }

    pub fn orbit_record(&self, n: u32) -> Result<OrbitRecord> {
        let row = self.normal_form_row(n)?;
        let class = self.class_row(n);
        Ok(OrbitRecord {
            number: n,
            characteristic: row.marks,
            type_label: class.map(|c| c.type_label.clone()),
            d: class.map(|c| c.d),
            s0: class.map(|c| c.s0.clone()),
            normal_form: FourVector::parse_expr(&row.normal_form)?,
            dim: row.dim,
        })
    }

    pub fn orbit_records(&self) -> Vec<OrbitRecord> {
        (1..=ORBIT_COUNT)
            .map(|n| self.orbit_record(n).expect("validated"))
            .collect()
    }

    pub fn family_record(&self, k: u32) -> Result<&FamilyRecord> {
        self.families.iter().find(|f| f.number == k).ok_or_else(|| {
            Error::Usage(format!(
                "family {k} out of range 1..{}",
                self.families.len()
            ))
        })
    }

    pub fn mixed_table(&self, k: u32) -> Result<&MixedTable> {
        self.mixed
            .iter()
            .find(|t| t.family == k)
            .ok_or_else(|| Error::Usage(format!("no nilpotent table for family {k}")))
    }

    /// A printed vector from the additional examples.
    pub fn example(&self, name: &str) -> Result<FourVector> {
        let text = self
            .examples
            .get(name)
            .ok_or_else(|| Error::Usage(format!("no example named {name}")))?;
        FourVector::parse_expr(text)
    }

    /// Orbit number for the given dominant marks.
    pub fn lookup(&self, c: &Characteristic) -> Option<u32> {
        self.orbits.iter().find(|o| o.marks == *c).map(|o| o.number)
    }

    /// Orbit whose marks are the reverse of those of `n`.
    pub fn reversal_partner(&self, n: u32) -> Result<Option<u32>> {
        let row = self.normal_form_row(n)?;
        Ok(self.lookup(&row.marks.reversed()))
    }

    pub fn hasse_edges(&self) -> &[HasseEdge] {
        &self.hasse_edges
    }

    /// Closure edges checked against orbit dimensions and for transitive reduction.
    pub fn verify_hasse(&self) -> Report {
        let dims: BTreeMap<u32, u32> = self.orbits.iter().map(|o| (o.number, o.dim)).collect();
        verify_edges(&self.hasse_edges, &dims)
    }

    /// Graphviz rendering of the closure edges, one rank per orbit dimension.
    pub fn hasse_dot(&self) -> String {
        let dims: BTreeMap<u32, u32> = self.orbits.iter().map(|o| (o.number, o.dim)).collect();
        hasse_dot(&self.hasse_edges, &dims)
    }

    /// Orbits with a non-palindromic characteristic must come in reversal
    /// pairs where the table of classes keeps the first and omits the second.
    pub fn palindromic_report(&self) -> Report {
        let mut report = Report::new("palindromic characteristics");
        let kept = |n: u32| self.class_row(n).is_some();
        for o in &self.orbits {
            let n = o.number;
            let label = format!("orbit {n}");
            if o.marks.is_palindromic() {
                report.push(label, format!("{} palindromic", o.marks), Status::Ok);
                continue;
            }
            let partner = self.lookup(&o.marks.reversed());
            let partner_text = partner.map_or("none".to_string(), |p| p.to_string());
            let paired = if kept(n) {
                partner == Some(n + 1) && !kept(n + 1)
            } else {
                n > 1 && partner == Some(n - 1) && kept(n - 1)
            };
            let detail = format!(
                "{} {}, reversal partner {partner_text}",
                o.marks,
                if kept(n) { "kept" } else { "omitted" }
            );
            if paired {
                report.push(label, detail, Status::Ok);
            } else if partner.is_some_and(|p| kept(n) == kept(p)) {
                report.push(
                    label,
                    format!("{detail}, both members of the pair kept"),
                    Status::Flagged,
                );
            } else {
                report.push(
                    label,
                    format!("{detail}, pair not adjacent"),
                    Status::Flagged,
                );
            }
        }
        report
    }

    /// Table-of-classes rows checked against normal form dimensions via `d = 63 − dim`.
    /// Rows whose printed `d` was corrected must disagree in the original value.
    pub fn dimension_report(&self) -> Report {
        let mut report = Report::new("stabilizer dimensions");
        for r in &self.table2 {
            let dim = self.normal_form_row(r.number).expect("validated").dim;
            report.check(
                format!("class {}", r.number),
                format!("d {}, 63 - dim {}", r.d, 63 - dim as i64),
                r.d as i64 == 63 - dim as i64,
            );
            if r.corrected() {
                report.check(
                    format!("class {} original", r.number),
                    format!("printed d {} rejected", r.d_original),
                    r.d_original as i64 != 63 - dim as i64,
                );
            }
        }
        report
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}
