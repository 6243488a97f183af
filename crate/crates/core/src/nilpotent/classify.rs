use rayon::prelude::*;

use super::sl2::{orbit_dim, sl2_through, solve_f, Sl2Triple};
use crate::atlas::{Atlas, OrbitRecord};
use crate::error::{usage, Error, Result};
use crate::exactmath::Rational;
use crate::liealg::{bracket01, is_nilpotent, FourVector, GradedElement};
use crate::report::Report;

/// Orbit number whose stored characteristic matches that of `e`, with the triple used.
pub fn classify_nilpotent(atlas: &Atlas, e: &FourVector) -> Result<(u32, Sl2Triple)> {
    if e.is_zero() {
        return usage("the zero vector has no characteristic");
    }
    if !is_nilpotent(&GradedElement::from_fourvector(e.clone())) {
        return usage("input is not nilpotent");
    }
    let triple = sl2_through(e)?
        .ok_or_else(|| Error::Internal("nilpotent element without an sl2 triple".into()))?;
    let marks = triple.characteristic()?;
    let n = atlas
        .lookup(&marks)
        .ok_or_else(|| Error::UnrecognizedCharacteristic(marks.to_string()))?;
    Ok((n, triple))
}

/// One line per stored orbit, computed in parallel and reported in orbit order.
fn per_orbit<F>(atlas: &Atlas, title: &str, check: F) -> Report
where
    F: Fn(&OrbitRecord) -> (String, bool) + Sync,
{
    let lines: Vec<(u32, String, bool)> = atlas
        .orbit_records()
        .par_iter()
        .map(|rec| {
            let (detail, ok) = check(rec);
            (rec.number, detail, ok)
        })
        .collect();
    let mut report = Report::new(title);
    for (n, detail, ok) in lines {
        report.check(format!("orbit {n}"), detail, ok);
    }
    report
}

/// Per orbit: `[h, e] = 2e` for the stored normal form and characteristic, and `[e, f] = h` is solvable.
pub fn verify_nilpotent_tables(atlas: &Atlas) -> Report {
    let mut report = per_orbit(atlas, "nilpotent normal forms", |rec| {
        let marks = &rec.characteristic;
        let h = marks.to_h();
        let e = &rec.normal_form;
        if bracket01(&h, e) != e.scale(&Rational::from(2)) {
            return (format!("marks {marks}, [h,e] != 2e"), false);
        }
        match solve_f(&h, e) {
            Ok(Some(f)) => (
                format!("marks {marks}, triple"),
                Sl2Triple { h, e: e.clone(), f }.is_valid(),
            ),
            Ok(None) => (format!("marks {marks}, no f with [e,f] = h"), false),
            Err(err) => (format!("marks {marks}, {err}"), false),
        }
    });
    match atlas.example("f22").and_then(|f| {
        let rec = atlas.orbit_record(22)?;
        Ok(Sl2Triple {
            h: rec.characteristic.to_h(),
            e: rec.normal_form,
            f,
        }
        .is_valid())
    }) {
        Ok(ok) => report.check("orbit 22 printed f", "triple", ok),
        Err(err) => report.check("orbit 22 printed f", err.to_string(), false),
    }
    report
}

/// Computed orbit dimensions against the stored ones, plus the stabilizer column checks.
pub fn verify_orbit_dims(atlas: &Atlas) -> Report {
    let mut report = per_orbit(atlas, "orbit dimensions", |rec| {
        let got = orbit_dim(&rec.normal_form);
        (
            format!("expected dim {}, got {got}", rec.dim),
            got == rec.dim as usize,
        )
    });
    report.extend(atlas.dimension_report());
    report
}

/// Classification of every stored normal form.
pub fn verify_classification(atlas: &Atlas) -> Report {
    per_orbit(atlas, "classification", |rec| {
        match classify_nilpotent(atlas, &rec.normal_form) {
            Ok((n, t)) => {
                let marks = t
                    .characteristic()
                    .map(|c| c.to_string())
                    .unwrap_or_default();
                (
                    format!("characteristic {marks} matches orbit {n}"),
                    n == rec.number,
                )
            }
            Err(err) => (err.to_string(), false),
        }
    })
}
