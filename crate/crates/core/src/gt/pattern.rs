use super::signature::{interlaces, Signature};
use crate::error::{contract, Error, Result};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Cap on the number of patterns an enumeration may visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(DEFAULT_BUDGET)
    }
}

impl Budget {
    /// Honors the `GTKIT_BUDGET` environment variable when it parses.
    pub fn from_env() -> Self {
        std::env::var("GTKIT_BUDGET").ok().and_then(|v| v.trim().parse().ok()).map(Budget).unwrap_or_default()
    }

    pub(crate) fn check(&self, seen: u64) -> Result<()> {
        if seen > self.0 {
            Err(Error::Budget(self.0))
        } else {
            Ok(())
        }
    }
}

/// An interlacing chain κ = ν^{(K)} ≺ ... ≺ ν^{(N)} = ν; triangular when
/// K = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GTPattern {
    pub rows: Vec<Signature>,
}

impl GTPattern {
    pub fn bottom_level(&self) -> usize {
        self.rows[0].len()
    }

    pub fn top(&self) -> &Signature {
        self.rows.last().expect("nonempty pattern")
    }

    pub fn is_valid(&self) -> bool {
        self.rows.windows(2).all(|w| interlaces(&w[0], &w[1]))
    }
}

/// Walks every chain from κ up to ν, lexicographically in the concatenated
/// middle rows (lowest level first). Used as a lending cursor by the
/// oracles and as an iterator of owned patterns.
pub struct Trapezoids {
    nu: Vec<i64>,
    rows: Vec<Vec<i64>>,
    started: bool,
    done: bool,
}

pub fn enumerate_trapezoids(kappa: &Signature, nu: &Signature) -> Result<Trapezoids> {
    if kappa.len() > nu.len() {
        return Err(contract(format!("level {} above {}", kappa.len(), nu.len())));
    }
    let n = nu.len();
    let k = kappa.len();
    let nuv = nu.parts().to_vec();
    let reachable = (0..k).all(|j| nuv[j] >= kappa.parts()[j] && kappa.parts()[j] >= nuv[j + n - k]);
    let mut rows = vec![kappa.parts().to_vec()];
    rows.extend((k + 1..n).map(|m| vec![0; m]));
    if n > k {
        rows.push(nuv.clone());
    }
    Ok(Trapezoids { nu: nuv, rows, started: false, done: !reachable })
}

impl Trapezoids {
    fn bounds(&self, t: usize, j: usize) -> (i64, i64) {
        let m = self.rows[t].len();
        let n = self.nu.len();
        let p = &self.rows[t - 1];
        let mut lo = self.nu[j + n - m];
        let mut hi = self.nu[j];
        if j + 1 < m {
            lo = lo.max(p[j]);
        }
        if j >= 1 {
            hi = hi.min(p[j - 1]);
        }
        (lo, hi)
    }

    fn reset(&mut self, t: usize) {
        for j in 0..self.rows[t].len() {
            self.rows[t][j] = self.bounds(t, j).0;
        }
    }

    fn bump(&mut self, t: usize) -> bool {
        let m = self.rows[t].len();
        for j in (0..m).rev() {
            let (_, hi) = self.bounds(t, j);
            if self.rows[t][j] < hi {
                self.rows[t][j] += 1;
                for jj in j + 1..m {
                    self.rows[t][jj] = self.bounds(t, jj).0;
                }
                return true;
            }
        }
        false
    }

    fn middle(&self) -> std::ops::Range<usize> {
        1..self.rows.len().saturating_sub(1)
    }

    /// Moves to the next chain; false once exhausted.
    pub fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        if !self.started {
            self.started = true;
            for t in self.middle() {
                self.reset(t);
            }
            return true;
        }
        for t in self.middle().rev() {
            if self.bump(t) {
                for tt in t + 1..self.rows.len() - 1 {
                    self.reset(tt);
                }
                return true;
            }
        }
        self.done = true;
        false
    }

    /// Rows of the current chain, bottom level first.
    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }
}

impl Iterator for Trapezoids {
    type Item = GTPattern;

    fn next(&mut self) -> Option<GTPattern> {
        if !self.advance() {
            return None;
        }
        let rows = self.rows.iter().map(|r| Signature::new(r.clone()).expect("interlacing rows")).collect();
        Some(GTPattern { rows })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(s: &str) -> Signature {
        s.parse().unwrap()
    }

    // Independent reference: rows built top-down by filtering every
    // candidate tuple through `interlaces`.
    fn brute(kappa: &Signature, nu: &Signature) -> Vec<GTPattern> {
        fn below(nu: &Signature) -> Vec<Signature> {
            let lo = *nu.parts().iter().min().unwrap();
            let hi = *nu.parts().iter().max().unwrap();
            super::super::signatures_in_box(nu.len() - 1, lo, hi).into_iter().filter(|m| interlaces(m, nu)).collect()
        }
        let k = kappa.len();
        let mut chains = vec![vec![nu.clone()]];
        for _ in k..nu.len() {
            let mut next = vec![];
            for c in &chains {
                let top = c.last().unwrap();
                if top.len() == k {
                    continue;
                }
                for m in below(top) {
                    if m.len() == k && &m != kappa {
                        continue;
                    }
                    let mut c2 = c.clone();
                    c2.push(m);
                    next.push(c2);
                }
            }
            chains = next;
        }
        let mut out: Vec<GTPattern> = chains
            .into_iter()
            .map(|mut c| {
                c.reverse();
                GTPattern { rows: c }
            })
            .collect();
        out.sort_by(|a, b| a.rows.cmp(&b.rows));
        out
    }

    #[test]
    fn matches_brute_force_and_is_sorted() {
        let cases = [
            ("", "2,1,0"),
            ("1", "2,1,0"),
            ("0", "1,1,-1,-2"),
            ("1,-1", "2,1,-1,-1"),
            ("", "1,0,0,-1"),
            ("3", "2,1,0"),
        ];
        for (k, n) in cases {
            let (kappa, nu) = (sig(k), sig(n));
            let got: Vec<GTPattern> = enumerate_trapezoids(&kappa, &nu).unwrap().collect();
            assert!(got.iter().all(|p| p.is_valid()));
            assert!(got.windows(2).all(|w| w[0].rows < w[1].rows), "{k} / {n}");
            assert_eq!(got, brute(&kappa, &nu), "{k} / {n}");
        }
    }

    #[test]
    fn degenerate_levels() {
        let nu = sig("2,0");
        assert_eq!(enumerate_trapezoids(&nu, &nu).unwrap().count(), 1);
        assert_eq!(enumerate_trapezoids(&sig("2,1"), &nu).unwrap().count(), 0);
        assert_eq!(enumerate_trapezoids(&sig("1"), &nu).unwrap().count(), 1);
        assert_eq!(enumerate_trapezoids(&Signature::empty(), &Signature::empty()).unwrap().count(), 1);
        assert!(enumerate_trapezoids(&sig("1,1,1"), &nu).is_err());
    }
}
