use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::cartan::{classify_subsystem, vanishing_subsystem, CRoot, CartanVector};
use super::diagram::DiagramType;
use crate::atlas::{Atlas, FamilyRecord};
use crate::error::{usage, Result};
use crate::exactmath::Rational;
use crate::report::{Report, Status};

/// Order of the Weyl group of E₇.
const WEYL_ORDER: u64 = 2_903_040;

/// Number of candidate points drawn per family.
const DRAWS: usize = 5;

fn parse_term(text: &str) -> Result<CartanVector> {
    let t = text.trim();
    let open = t
        .find("P(")
        .ok_or_else(|| crate::Error::Usage(format!("missing P(...) in {t:?}")))?;
    let close = t[open..]
        .find(')')
        .map(|c| open + c)
        .ok_or_else(|| crate::Error::Usage(format!("unclosed P(...) in {t:?}")))?;
    let coeff = match t[..open].trim() {
        "" => Rational::one(),
        c => c.parse::<Rational>()?,
    };
    if !t[close + 1..].trim().is_empty() {
        return usage(format!("trailing text in {t:?}"));
    }
    let mut v = CartanVector::zero();
    for ch in t[open + 2..close].chars().filter(|c| !c.is_whitespace()) {
        match ch.to_digit(10) {
            Some(k @ 1..=7) => v.0[k as usize - 1] = &v.0[k as usize - 1] + &coeff,
            _ => return usage(format!("bad index {ch:?} in {t:?}")),
        }
    }
    Ok(v)
}

fn parse_sum(text: &str) -> Result<CartanVector> {
    let mut total = CartanVector::zero();
    let mut sign = Rational::one();
    let mut start = 0;
    let bytes: Vec<char> = text.chars().collect();
    let mut depth = 0;
    let mut pieces = Vec::new();
    for (i, &c) in bytes.iter().enumerate() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 => {
                pieces.push((sign.clone(), bytes[start..i].iter().collect::<String>()));
                sign = if c == '-' {
                    -Rational::one()
                } else {
                    Rational::one()
                };
                start = i + 1;
            }
            _ => {}
        }
    }
    pieces.push((sign, bytes[start..].iter().collect::<String>()));
    for (k, (s, piece)) in pieces.into_iter().enumerate() {
        if piece.trim().is_empty() {
            if k == 0 {
                continue;
            }
            return usage(format!("empty term in {text:?}"));
        }
        total = &total + &parse_term(&piece)?.scale(&s);
    }
    Ok(total)
}

/// Parses a comma-separated basis in P-notation, where `P(k₁…kₙ)` is
/// `p_{k₁} + … + p_{kₙ}`. Spaces inside the parentheses are ignored.
pub fn parse_basis(text: &str) -> Result<Vec<CartanVector>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(parse_sum).collect()
}

/// A point of the span of `basis` drawn with coefficients in `1..=97`. Of
/// several draws, the one with the fewest vanishing roots is kept.
pub fn generic_point(basis: &[CartanVector], seed: u64) -> (CartanVector, Vec<CRoot>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(CartanVector, Vec<CRoot>)> = None;
    for _ in 0..DRAWS {
        let p = basis.iter().fold(CartanVector::zero(), |acc, b| {
            &acc + &b.scale(&Rational::from(rng.gen_range(1..=97i64)))
        });
        let v = vanishing_subsystem(&p);
        if best.as_ref().is_none_or(|(_, bv)| v.len() < bv.len()) {
            best = Some((p, v));
        }
    }
    best.unwrap_or_else(|| {
        (
            CartanVector::zero(),
            vanishing_subsystem(&CartanVector::zero()),
        )
    })
}

/// Removes repeated basis entries, reporting whether any were present.
fn dedup_basis(basis: Vec<CartanVector>) -> (Vec<CartanVector>, bool) {
    let n = basis.len();
    let mut out: Vec<CartanVector> = Vec::with_capacity(n);
    for b in basis {
        if !out.contains(&b) {
            out.push(b);
        }
    }
    let repeated = out.len() != n;
    (out, repeated)
}

/// Type of the vanishing subsystem at a generic point of the row's subspace.
pub fn family_type(row: &FamilyRecord, seed: u64) -> Result<(DiagramType, bool)> {
    let (basis, repeated) = dedup_basis(parse_basis(&row.basis)?);
    let (_, vanishing) = generic_point(&basis, seed);
    Ok((classify_subsystem(&vanishing)?, repeated))
}

/// Per-row check of the given family records.
pub fn verify_table1_rows(rows: &[FamilyRecord], seed: u64) -> Report {
    let mut report = Report::new("semisimple families");
    for row in rows {
        let label = format!("row {}", row.number);
        let expected = if row.type_label.is_empty() {
            "0"
        } else {
            row.type_label.as_str()
        };
        let want = match expected.parse::<DiagramType>() {
            Ok(t) => t,
            Err(e) => {
                report.check(label, format!("unreadable type {expected:?}: {e}"), false);
                continue;
            }
        };
        let show = |t: &DiagramType| {
            if t.is_empty() {
                "empty".to_string()
            } else {
                t.to_string()
            }
        };
        match family_type(row, seed) {
            Ok((got, repeated)) => {
                let detail = format!("expected {}, got {}", show(&want), show(&got));
                if repeated {
                    let status = if got == want {
                        Status::Ok
                    } else {
                        Status::Flagged
                    };
                    report.push(
                        label,
                        format!("{detail}, repeated basis entry removed"),
                        status,
                    );
                    if status == Status::Ok {
                        report.push(
                            format!("row {} basis", row.number),
                            "repeated basis entry",
                            Status::Flagged,
                        );
                    }
                } else {
                    report.check(label, detail, got == want);
                }
            }
            Err(e) => report.check(
                label,
                format!("expected {}, got error: {e}", show(&want)),
                false,
            ),
        }
        let normalizer = row.weyl_order * row.gamma_order;
        if normalizer == 0 || !WEYL_ORDER.is_multiple_of(normalizer) {
            report.push(
                format!("row {} group orders", row.number),
                format!(
                    "|W_p| {} times |Gamma_p| {} does not divide |W|, stored verbatim",
                    row.weyl_order, row.gamma_order
                ),
                Status::Flagged,
            );
        }
    }
    report
}

/// [`verify_table1_rows`] over the atlas table of semisimple families.
pub fn verify_table1(atlas: &Atlas, seed: u64) -> Report {
    verify_table1_rows(&atlas.families, seed)
}
