use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

use crate::error::{contract, Error, Result};

/// Nonincreasing integer tuple; the empty tuple is the unique signature of
/// length zero.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Signature(Vec<i64>);

impl Signature {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(contract(format!("{parts:?} is not nonincreasing")));
        }
        Ok(Signature(parts))
    }

    pub fn empty() -> Self {
        Signature(vec![])
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// |ν| = sum of parts.
    pub fn size(&self) -> i64 {
        self.0.iter().sum()
    }

    /// 1-based part.
    pub fn part(&self, i: usize) -> i64 {
        self.0[i - 1]
    }

    pub fn shifted(&self, c: i64) -> Signature {
        Signature(self.0.iter().map(|x| x + c).collect())
    }

    pub fn first(&self) -> Option<i64> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<i64> {
        self.0.last().copied()
    }

    /// Particle positions ν_j - j, strictly decreasing.
    pub fn positions(&self) -> Vec<i64> {
        self.0.iter().enumerate().map(|(j, x)| x - j as i64 - 1).collect()
    }
}

impl FromStr for Signature {
    type Err = Error;

    /// Comma-separated parts; the empty string is the empty signature.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        if t.trim().is_empty() || t.trim() == "∅" {
            return Ok(Signature::empty());
        }
        let mut parts = vec![];
        let mut offset = s.len() - s.trim_start_matches(|c: char| c.is_whitespace() || c == '(').len();
        for p in t.split(',') {
            let v = p.trim().parse::<i64>().map_err(|_| {
                Error::Parse(format!("signature {s:?}: bad part {:?} at column {}", p.trim(), offset + 1))
            })?;
            parts.push(v);
            offset += p.len() + 1;
        }
        Signature::new(parts)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl Serialize for Signature {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_string().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Signature {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// μ ≺ ν: ν_1 ≥ μ_1 ≥ ν_2 ≥ ... ≥ μ_{N-1} ≥ ν_N.
pub fn interlaces(mu: &Signature, nu: &Signature) -> bool {
    if mu.len() + 1 != nu.len() {
        return false;
    }
    let (m, n) = (&mu.0, &nu.0);
    (0..m.len()).all(|j| n[j] >= m[j] && m[j] >= n[j + 1])
}

/// All signatures of length `n` with parts in [lo, hi], lexicographically
/// increasing.
pub fn signatures_in_box(n: usize, lo: i64, hi: i64) -> Vec<Signature> {
    bounded_signatures(&vec![lo; n], &vec![hi; n])
}

/// Signatures κ of length k that can sit at level k below ν, i.e.
/// ν_j ≥ κ_j ≥ ν_{j+N-k}.
pub fn fitting_signatures(k: usize, nu: &Signature) -> Vec<Signature> {
    let n = nu.len();
    if k > n {
        return vec![];
    }
    let lo: Vec<i64> = (0..k).map(|j| nu.0[j + n - k]).collect();
    let hi: Vec<i64> = (0..k).map(|j| nu.0[j]).collect();
    bounded_signatures(&lo, &hi)
}

// nonincreasing tuples with lo_j <= x_j <= hi_j, in lex order
fn bounded_signatures(lo: &[i64], hi: &[i64]) -> Vec<Signature> {
    fn go(j: usize, cap: i64, lo: &[i64], hi: &[i64], cur: &mut Vec<i64>, out: &mut Vec<Signature>) {
        if j == lo.len() {
            out.push(Signature(cur.clone()));
            return;
        }
        for x in lo[j]..=hi[j].min(cap) {
            cur.push(x);
            go(j + 1, x, lo, hi, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, i64::MAX, lo, hi, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(s: &str) -> Signature {
        s.parse().unwrap()
    }

    #[test]
    fn parse_roundtrip() {
        let s = sig("4,2,0,0,-1,-1,-3");
        assert_eq!(s.to_string(), "4,2,0,0,-1,-1,-3");
        assert_eq!(s.size(), 1);
        assert_eq!(sig(""), Signature::empty());
        assert!("1,2".parse::<Signature>().is_err());
        let e = "3, 1,x".parse::<Signature>().unwrap_err().to_string();
        assert!(e.contains("column 6"), "{e}");
    }

    #[test]
    fn interlacing() {
        assert!(interlaces(&sig("3,1"), &sig("3,2,0")));
        assert!(!interlaces(&sig("3,3"), &sig("3,2,0")));
        assert!(interlaces(&Signature::empty(), &sig("5")));
        assert!(!interlaces(&sig("1"), &sig("1")));
    }

    #[test]
    fn boxes() {
        let all = signatures_in_box(2, -1, 1);
        assert_eq!(all.len(), 6);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(signatures_in_box(0, 0, 3), vec![Signature::empty()]);
        let fit = fitting_signatures(1, &sig("2,0"));
        assert_eq!(fit, vec![sig("0"), sig("1"), sig("2")]);
    }
}
