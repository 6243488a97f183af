use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::index4::Index4;
use crate::error::{Error, Result};
use crate::exactmath::Rational;

/// Element of ∧⁴ℚ⁸ stored sparsely; absent coefficients are zero.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FourVector {
    coeffs: BTreeMap<Index4, Rational>,
}

impl FourVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(idx: Index4) -> Self {
        let mut v = Self::zero();
        v.coeffs.insert(idx, Rational::one());
        v
    }

    /// `e_S` for a string such as `"1357"`. Panics on malformed input.
    pub fn e(s: &str) -> Self {
        Self::basis(s.parse().expect("valid index quadruple"))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Index4, Rational)>) -> Self {
        let mut v = Self::zero();
        for (i, c) in terms {
            v.add_term(i, &c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, idx: Index4) -> Rational {
        self.coeffs
            .get(&idx)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Index4, &Rational)> {
        self.coeffs.iter().map(|(i, c)| (*i, c))
    }

    pub fn support(&self) -> impl Iterator<Item = Index4> + '_ {
        self.coeffs.keys().copied()
    }

    /// Adds `c·e_idx`, dropping the entry if it cancels.
    pub fn add_term(&mut self, idx: Index4, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(idx).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&idx);
        }
    }

    pub fn add(&self, other: &FourVector) -> FourVector {
        let mut out = self.clone();
        for (i, c) in other.terms() {
            out.add_term(i, c);
        }
        out
    }

    pub fn sub(&self, other: &FourVector) -> FourVector {
        let mut out = self.clone();
        for (i, c) in other.terms() {
            out.add_term(i, &-c);
        }
        out
    }

    pub fn scale(&self, k: &Rational) -> FourVector {
        if k.is_zero() {
            return FourVector::zero();
        }
        FourVector {
            coeffs: self.coeffs.iter().map(|(i, c)| (*i, c * k)).collect(),
        }
    }

    pub fn neg(&self) -> FourVector {
        self.scale(&-Rational::one())
    }

    /// Dense coordinates in the lexicographic basis of 70 quadruples.
    pub fn to_coords(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); Index4::COUNT];
        for (i, c) in self.terms() {
            v[i.position()] = c.clone();
        }
        v
    }

    pub fn from_coords(v: &[Rational]) -> Result<Self> {
        if v.len() != Index4::COUNT {
            return Err(Error::Usage(format!(
                "expected 70 coordinates, got {}",
                v.len()
            )));
        }
        Ok(Self::from_terms(
            v.iter()
                .enumerate()
                .map(|(n, c)| (Index4::from_position(n), c.clone())),
        ))
    }

    /// Hodge star: `e_S ↦ sign(S, Sᶜ)·e_{Sᶜ}`.
    pub fn hodge_dual(&self) -> FourVector {
        FourVector::from_terms(self.terms().map(|(i, c)| {
            let c = if i.complement_sign() > 0 {
                c.clone()
            } else {
                -c
            };
            (i.complement(), c)
        }))
    }

    /// Parses the line format `coeff i j k l`; `#` comments and blank lines are skipped.
    /// Indices may be unsorted, in which case the sorting sign is applied.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut v = FourVector::zero();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line: n + 1, msg };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 5 {
                return Err(err(format!("expected `coeff i j k l`, got {line:?}")));
            }
            let c: Rational = fields[0].parse().map_err(|e: Error| err(e.to_string()))?;
            let mut idx = [0u8; 4];
            for (slot, f) in idx.iter_mut().zip(&fields[1..]) {
                *slot = f
                    .parse()
                    .ok()
                    .filter(|i| (1..=8).contains(i))
                    .ok_or_else(|| err(format!("index {f:?} not in 1..8")))?;
            }
            let (sign, sorted) =
                Index4::sorted(idx).ok_or_else(|| err(format!("repeated index in {line:?}")))?;
            v.add_term(sorted, &if sign > 0 { c } else { -c });
        }
        Ok(v)
    }

    pub fn to_text(&self) -> String {
        self.terms()
            .map(|(i, c)| {
                let [a, b, cc, d] = i.indices();
                format!("{c} {a} {b} {cc} {d}\n")
            })
            .collect()
    }

    /// Parses compact sums such as `e1234 + e5678 - 2e1357 + 1/2 e2468`.
    pub fn parse_expr(s: &str) -> Result<Self> {
        let mut v = FourVector::zero();
        let compact: String = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '*')
            .collect();
        if compact.is_empty() || compact == "0" {
            return Ok(v);
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > start {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        for t in terms {
            let bad = || Error::Usage(format!("invalid four-vector term {t:?}"));
            let epos = t.find('e').ok_or_else(bad)?;
            let (coef, idx) = t.split_at(epos);
            let c = match coef {
                "" | "+" => Rational::one(),
                "-" => -Rational::one(),
                other => other.trim_start_matches('+').parse().map_err(|_| bad())?,
            };
            let idx: Index4 = idx.parse().map_err(|_| bad())?;
            v.add_term(idx, &c);
        }
        Ok(v)
    }
}

impl fmt::Display for FourVector {
    /// Compact form, e.g. `e1234 + e5678 - 2*e1357`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.terms() {
            let (sign, mag) = if c.is_negative() {
                ("-", c.abs())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mag.is_one() {
                write!(f, "e{i}")?;
            } else {
                write!(f, "{mag}*e{i}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for FourVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::q;

    #[test]
    fn hodge_examples() {
        assert_eq!(FourVector::e("1234").hodge_dual(), FourVector::e("5678"));
        assert_eq!(FourVector::e("1256").hodge_dual(), FourVector::e("3478"));
        assert_eq!(
            FourVector::e("1235").hodge_dual(),
            FourVector::e("4678").neg()
        );
        for idx in Index4::all() {
            let v = FourVector::basis(*idx);
            assert_eq!(v.hodge_dual().hodge_dual(), v);
        }
    }

    #[test]
    fn text_format_round_trip() {
        let text = "# test\n1 1 2 3 4\n\n-1/2 2 4 6 8\n3 2 1 3 4\n";
        let v = FourVector::parse_text(text).unwrap();
        // 3·e2134 = −3·e1234, so e1234 carries 1 − 3.
        assert_eq!(v.get("1234".parse().unwrap()), Rational::from(-2));
        assert_eq!(v.get("2468".parse().unwrap()), q(-1, 2));
        assert_eq!(FourVector::parse_text(&v.to_text()).unwrap(), v);
    }

    #[test]
    fn text_format_errors() {
        assert!(matches!(
            FourVector::parse_text("1 1 2 3"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            FourVector::parse_text("\n1 1 1 3 4"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(FourVector::parse_text("1 1 2 3 9").is_err());
        assert!(FourVector::parse_text("x 1 2 3 4").is_err());
    }

    #[test]
    fn expressions() {
        let v = FourVector::parse_expr("-8e3457+5e2567 + 9*e2468 - 1/2 e1378").unwrap();
        assert_eq!(v.len(), 4);
        assert_eq!(v.get("3457".parse().unwrap()), Rational::from(-8));
        assert_eq!(v.get("1378".parse().unwrap()), q(-1, 2));
        assert_eq!(FourVector::parse_expr(&v.to_string()).unwrap(), v);
        assert!(FourVector::parse_expr("e12345").is_err());
        assert!(FourVector::parse_expr("0").unwrap().is_zero());
    }

    #[test]
    fn arithmetic_drops_zeros() {
        let a = FourVector::e("1234");
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.scale(&Rational::zero()), FourVector::zero());
        let coords = a.add(&FourVector::e("5678")).to_coords();
        assert_eq!(FourVector::from_coords(&coords).unwrap().len(), 2);
    }
}
