use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Sorted quadruple `i < j < k < l` of indices in `1..=8`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Index4([u8; 4]);

/// Sign of the permutation sorting `seq`, or 0 when `seq` has a repeat.
pub fn permutation_sign(seq: &[u8]) -> i8 {
    let mut sign = 1i8;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] == seq[j] {
                return 0;
            }
            if seq[i] > seq[j] {
                sign = -sign;
            }
        }
    }
    sign
}

impl Index4 {
    pub const COUNT: usize = 70;

    /// Strictly increasing indices in `1..=8`.
    pub fn new(idx: [u8; 4]) -> Result<Self> {
        let ok = idx.iter().all(|&i| (1..=8).contains(&i)) && idx.windows(2).all(|w| w[0] < w[1]);
        if ok {
            Ok(Index4(idx))
        } else {
            Err(Error::Usage(format!("invalid index quadruple {idx:?}")))
        }
    }

    /// Sorts arbitrary indices, returning the sign of the sorting permutation.
    /// `None` for repeated indices.
    pub fn sorted(idx: [u8; 4]) -> Option<(i8, Index4)> {
        let sign = permutation_sign(&idx);
        if sign == 0 || idx.iter().any(|&i| !(1..=8).contains(&i)) {
            return None;
        }
        let mut s = idx;
        s.sort_unstable();
        Some((sign, Index4(s)))
    }

    pub fn from_mask(mask: u8) -> Option<Self> {
        if mask.count_ones() != 4 {
            return None;
        }
        let mut out = [0u8; 4];
        let mut n = 0;
        for i in 0..8 {
            if mask & (1 << i) != 0 {
                out[n] = i + 1;
                n += 1;
            }
        }
        Some(Index4(out))
    }

    /// All 70 quadruples in lexicographic order.
    pub fn all() -> &'static [Index4] {
        &tables().all
    }

    pub fn from_position(pos: usize) -> Index4 {
        tables().all[pos]
    }

    /// Position in the lexicographic enumeration.
    pub fn position(self) -> usize {
        tables().pos[self.mask() as usize] as usize
    }

    pub fn indices(self) -> [u8; 4] {
        self.0
    }

    pub fn mask(self) -> u8 {
        self.0.iter().fold(0u8, |m, &i| m | (1 << (i - 1)))
    }

    pub fn contains(self, i: u8) -> bool {
        self.0.contains(&i)
    }

    pub fn complement(self) -> Index4 {
        Index4::from_mask(!self.mask()).expect("complement of a 4-set has 4 elements")
    }

    /// Sign of the permutation `(self, complement)` of `1..8`.
    pub fn complement_sign(self) -> i8 {
        let c = self.complement();
        let seq = [
            self.0[0], self.0[1], self.0[2], self.0[3], c.0[0], c.0[1], c.0[2], c.0[3],
        ];
        permutation_sign(&seq)
    }

    pub fn common(self, other: Index4) -> usize {
        (self.mask() & other.mask()).count_ones() as usize
    }
}

struct Tables {
    all: Vec<Index4>,
    pos: [u8; 256],
}

fn tables() -> &'static Tables {
    static T: OnceLock<Tables> = OnceLock::new();
    T.get_or_init(|| {
        let mut all = Vec::with_capacity(70);
        for i in 1..=8u8 {
            for j in i + 1..=8 {
                for k in j + 1..=8 {
                    for l in k + 1..=8 {
                        all.push(Index4([i, j, k, l]));
                    }
                }
            }
        }
        let mut pos = [u8::MAX; 256];
        for (n, idx) in all.iter().enumerate() {
            pos[idx.mask() as usize] = n as u8;
        }
        Tables { all, pos }
    })
}

impl fmt::Display for Index4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

impl fmt::Debug for Index4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{self}")
    }
}

impl FromStr for Index4 {
    type Err = Error;

    /// Four digits such as `1357`, optionally prefixed by `e`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('e');
        let digits: Vec<u8> = t.bytes().map(|b| b.wrapping_sub(b'0')).collect();
        if digits.len() != 4 {
            return Err(Error::Usage(format!("invalid index quadruple {s:?}")));
        }
        Index4::new([digits[0], digits[1], digits[2], digits[3]])
    }
}

impl Serialize for Index4 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Index4 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration() {
        let all = Index4::all();
        assert_eq!(all.len(), 70);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all[0].to_string(), "1234");
        assert_eq!(all[69].to_string(), "5678");
        for (n, idx) in all.iter().enumerate() {
            assert_eq!(idx.position(), n);
        }
    }

    #[test]
    fn sorting_sign() {
        assert_eq!(
            Index4::sorted([2, 1, 3, 4]),
            Some((-1, Index4([1, 2, 3, 4])))
        );
        assert_eq!(
            Index4::sorted([4, 3, 2, 1]),
            Some((1, Index4([1, 2, 3, 4])))
        );
        assert_eq!(Index4::sorted([1, 1, 3, 4]), None);
        assert!(Index4::new([1, 3, 2, 4]).is_err());
        assert!(Index4::new([0, 1, 2, 3]).is_err());
    }

    #[test]
    fn complements() {
        let a: Index4 = "1234".parse().unwrap();
        assert_eq!(a.complement().to_string(), "5678");
        assert_eq!(a.complement_sign(), 1);
        // (1,2,5,6,3,4,7,8): two transpositions across the middle.
        let b: Index4 = "e1256".parse().unwrap();
        assert_eq!(b.complement().to_string(), "3478");
        assert_eq!(b.complement_sign(), 1);
        let c: Index4 = "1235".parse().unwrap();
        assert_eq!(c.complement_sign(), -1);
    }
}
