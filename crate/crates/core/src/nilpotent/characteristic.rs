use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::exactmath::Rational;
use crate::liealg::{Index4, Operator};

/// Numerical marks of a dominant characteristic on the simple roots `εᵢ − εᵢ₊₁`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Characteristic(pub [u32; 7]);

impl Characteristic {
    pub fn marks(&self) -> &[u32; 7] {
        &self.0
    }

    pub fn reversed(&self) -> Characteristic {
        let mut m = self.0;
        m.reverse();
        Characteristic(m)
    }

    pub fn is_palindromic(&self) -> bool {
        *self == self.reversed()
    }

    pub fn to_h(&self) -> Operator {
        characteristic_to_h(self)
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        if self.0.iter().all(|&m| m <= 9) {
            f.write_str(&parts.concat())
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

impl FromStr for Characteristic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let marks: Vec<u32> = if s.contains(|c: char| c.is_whitespace() || c == ',') {
            s.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| Error::Usage(format!("bad mark {t:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::Usage(format!("bad mark {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        let marks: [u32; 7] = marks
            .try_into()
            .map_err(|v: Vec<u32>| Error::Usage(format!("expected 7 marks, got {}", v.len())))?;
        Ok(Characteristic(marks))
    }
}

/// The traceless diagonal `h` whose consecutive diagonal differences are the marks.
pub fn characteristic_to_h(c: &Characteristic) -> Operator {
    let m = c.marks();
    let first: i64 = m
        .iter()
        .enumerate()
        .map(|(i, &x)| (7 - i as i64) * x as i64)
        .sum();
    let mut x = Rational::new(first, 8);
    let mut diag = Vec::with_capacity(8);
    diag.push(x.clone());
    for &mi in m {
        x = &x - Rational::from(mi as i64);
        diag.push(x.clone());
    }
    Operator::diagonal(&diag).expect("traceless by construction")
}

/// Marks of the diagonal of `h` sorted into non-increasing order.
pub fn h_to_characteristic(h: &Operator) -> Result<Characteristic> {
    if !h.is_diagonal() {
        return usage("characteristic requires a diagonal operator");
    }
    let mut d = h.diagonal_entries();
    d.sort_by(|a, b| b.cmp(a));
    let mut marks = [0u32; 7];
    for i in 0..7 {
        let diff = &d[i] - &d[i + 1];
        match diff.to_i64().filter(|_| diff.is_integer()) {
            Some(v) => marks[i] = u32::try_from(v).expect("sorted"),
            None => return usage(format!("non-integral mark {diff}")),
        }
    }
    Ok(Characteristic(marks))
}

/// Wedge basis vectors on which the diagonal `h` acts by `λ`.
pub fn eigenspace(h: &Operator, lambda: &Rational) -> Result<Vec<Index4>> {
    if !h.is_diagonal() {
        return usage("eigenspaces are computed for diagonal operators only");
    }
    let d = h.diagonal_entries();
    Ok(Index4::all()
        .iter()
        .copied()
        .filter(|s| {
            s.indices()
                .iter()
                .map(|&i| &d[i as usize - 1])
                .sum::<Rational>()
                == *lambda
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::q;

    fn ch(s: &str) -> Characteristic {
        s.parse().unwrap()
    }

    fn diag(h: &Operator) -> Vec<Rational> {
        h.diagonal_entries()
    }

    #[test]
    fn to_h_examples() {
        assert_eq!(
            diag(&ch("0001000").to_h()),
            [
                q(1, 2),
                q(1, 2),
                q(1, 2),
                q(1, 2),
                q(-1, 2),
                q(-1, 2),
                q(-1, 2),
                q(-1, 2)
            ]
        );
        let h20: Vec<Rational> = [2, 2, 1, 1, -1, -1, -2, -2]
            .iter()
            .map(|&x| Rational::from(x))
            .collect();
        assert_eq!(diag(&ch("0102010").to_h()), h20);
        assert_eq!(
            diag(&ch("1211121").to_h()),
            [
                q(9, 2),
                q(7, 2),
                q(3, 2),
                q(1, 2),
                q(-1, 2),
                q(-3, 2),
                q(-7, 2),
                q(-9, 2)
            ]
        );
        assert!(ch("0000000").to_h().is_zero());
    }

    #[test]
    fn round_trip_and_sorting() {
        for s in ["0001000", "4444448", "1313143", "0000000"] {
            assert_eq!(h_to_characteristic(&ch(s).to_h()).unwrap(), ch(s));
        }
        let d = [
            q(-1, 2),
            q(1, 2),
            q(-1, 2),
            q(1, 2),
            q(1, 2),
            q(-1, 2),
            q(1, 2),
            q(-1, 2),
        ];
        let h = Operator::diagonal(&d).unwrap();
        assert_eq!(h_to_characteristic(&h).unwrap(), ch("0001000"));
        assert!(h_to_characteristic(&Operator::unit(1, 2)).is_err());
        let odd = Operator::diagonal(&[
            q(1, 3),
            q(-1, 3),
            q(0, 1),
            q(0, 1),
            q(0, 1),
            q(0, 1),
            q(0, 1),
            q(0, 1),
        ])
        .unwrap();
        assert!(h_to_characteristic(&odd).is_err());
    }

    #[test]
    fn text_forms() {
        assert_eq!(ch("4 4 4 4 4 4 8"), ch("4444448"));
        assert_eq!(ch("0102010").to_string(), "0102010");
        assert_eq!(
            Characteristic([10, 0, 0, 0, 0, 0, 1]).to_string(),
            "10 0 0 0 0 0 1"
        );
        assert_eq!(ch("10 0 0 0 0 0 1"), Characteristic([10, 0, 0, 0, 0, 0, 1]));
        assert!("010201".parse::<Characteristic>().is_err());
        assert!("01020x0".parse::<Characteristic>().is_err());
        assert!(ch("0202040").reversed() == ch("0402020"));
        assert!(ch("0001000").is_palindromic());
    }

    #[test]
    fn eigenspace_examples() {
        let h = ch("0102010").to_h();
        let e2: Vec<String> = eigenspace(&h, &Rational::from(2))
            .unwrap()
            .iter()
            .map(|s| s.to_string())
            .collect();
        let mut want = vec!["1256", "1347", "2347", "1348", "2348"];
        want.sort();
        assert_eq!(e2, want);
        let em2: Vec<String> = eigenspace(&h, &Rational::from(-2))
            .unwrap()
            .iter()
            .map(|s| s.to_string())
            .collect();
        let mut want = vec!["1567", "2567", "1568", "2568", "3478"];
        want.sort();
        assert_eq!(em2, want);
        assert_eq!(
            eigenspace(&Operator::zero(), &Rational::zero())
                .unwrap()
                .len(),
            70
        );
        for s in ["1211121", "4444448", "0020200"] {
            let h = ch(s).to_h();
            let mut values: Vec<Rational> = Index4::all()
                .iter()
                .map(|i| {
                    i.indices()
                        .iter()
                        .map(|&k| h.entry(k as usize, k as usize).clone())
                        .sum()
                })
                .collect();
            values.sort();
            values.dedup();
            let total: usize = values
                .iter()
                .map(|v| eigenspace(&h, v).unwrap().len())
                .sum();
            assert_eq!(total, 70);
        }
    }
}
