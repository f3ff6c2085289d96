use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{contract, Error, Result};
use crate::gt::Signature;
use crate::rat::{int, serde_rat, serde_rat_vec, Rat};

/// A point (α^±, β^±, δ^±) of the boundary, stored with γ^± = δ^± - Σ(α^± + β^±)
/// in place of δ^±.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaPoint {
    #[serde(with = "serde_rat_vec")]
    pub alpha_plus: Vec<Rat>,
    #[serde(with = "serde_rat_vec")]
    pub beta_plus: Vec<Rat>,
    #[serde(with = "serde_rat_vec")]
    pub alpha_minus: Vec<Rat>,
    #[serde(with = "serde_rat_vec")]
    pub beta_minus: Vec<Rat>,
    #[serde(with = "serde_rat")]
    pub gamma_plus: Rat,
    #[serde(with = "serde_rat")]
    pub gamma_minus: Rat,
}

impl OmegaPoint {
    /// Checks nonnegativity, monotonicity and β^+_1 + β^-_1 ≤ 1.
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("alpha_plus", &self.alpha_plus),
            ("beta_plus", &self.beta_plus),
            ("alpha_minus", &self.alpha_minus),
            ("beta_minus", &self.beta_minus),
        ] {
            if v.iter().any(|x| x.is_negative()) || v.windows(2).any(|w| w[0] < w[1]) {
                return Err(contract(format!("{name} must be nonnegative and nonincreasing")));
            }
        }
        let b = self.beta_plus.first().cloned().unwrap_or_else(Rat::zero)
            + self.beta_minus.first().cloned().unwrap_or_else(Rat::zero);
        if b > int(1) {
            return Err(contract("beta_plus_1 + beta_minus_1 exceeds 1"));
        }
        if self.gamma_plus.is_negative() || self.gamma_minus.is_negative() {
            return Err(contract("gamma must be nonnegative"));
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let w: OmegaPoint = serde_json::from_str(s).map_err(|e| Error::Parse(format!("omega point: {e}")))?;
        w.validate()?;
        Ok(w)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }

    pub fn has_gamma(&self) -> bool {
        !self.gamma_plus.is_zero() || !self.gamma_minus.is_zero()
    }
}

fn transpose(parts: &[i64]) -> Vec<i64> {
    let m = parts.first().copied().unwrap_or(0).max(0);
    (1..=m).map(|c| parts.iter().filter(|&&p| p >= c).count() as i64).collect()
}

// (λ_i - i + 1/2)/N, zero once λ_i - i < 0
fn modified_frobenius(parts: &[i64], n: i64) -> Vec<Rat> {
    parts
        .iter()
        .enumerate()
        .map(|(i, &p)| p - i as i64 - 1)
        .take_while(|&d| d >= 0)
        .map(|d| (int(2 * d + 1)) / int(2 * n))
        .collect()
}

/// ω(ν): α^±_i = (ν^±_i - i + 1/2)/N and β^±_i = ((ν^±)'_i - i + 1/2)/N, with
/// ν^+ the positive parts of ν and ν^- the negated negative parts in reverse.
/// γ^± comes out zero by the Frobenius identity, so only that is stored.
pub fn embed(nu: &Signature) -> OmegaPoint {
    let n = nu.len() as i64;
    let plus: Vec<i64> = nu.parts().iter().copied().filter(|&x| x > 0).collect();
    let minus: Vec<i64> = nu.parts().iter().rev().filter(|&&x| x < 0).map(|&x| -x).collect();
    let w = OmegaPoint {
        alpha_plus: modified_frobenius(&plus, n),
        beta_plus: modified_frobenius(&transpose(&plus), n),
        alpha_minus: modified_frobenius(&minus, n),
        beta_minus: modified_frobenius(&transpose(&minus), n),
        gamma_plus: Rat::zero(),
        gamma_minus: Rat::zero(),
    };
    debug_assert!({
        let dp: Rat = w.alpha_plus.iter().chain(&w.beta_plus).sum();
        dp == int(plus.iter().sum()) / int(n)
    });
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gt::signatures_in_box;
    use crate::rat::rat;

    #[test]
    fn worked_embedding() {
        let w = embed(&"4,2,0,0,-1,-1,-3".parse().unwrap());
        assert_eq!(w.alpha_plus, vec![rat(1, 2), rat(1, 14)]);
        assert_eq!(w.beta_plus, vec![rat(3, 14), rat(1, 14)]);
        assert_eq!(w.alpha_minus, vec![rat(5, 14)]);
        assert_eq!(w.beta_minus, vec![rat(5, 14)]);
        assert!(w.validate().is_ok());
    }

    #[test]
    fn frobenius_identity() {
        for nu in signatures_in_box(4, -3, 3) {
            let w = embed(&nu);
            let n = int(4);
            let dp: Rat = w.alpha_plus.iter().chain(&w.beta_plus).sum();
            let dm: Rat = w.alpha_minus.iter().chain(&w.beta_minus).sum();
            let plus: i64 = nu.parts().iter().filter(|&&x| x > 0).sum();
            let minus: i64 = -nu.parts().iter().filter(|&&x| x < 0).sum::<i64>();
            assert_eq!(dp, int(plus) / &n);
            assert_eq!(dm, int(minus) / &n);
            assert!(w.validate().is_ok(), "{nu}");
        }
    }

    #[test]
    fn json_roundtrip() {
        let w = embed(&"3,1,-2".parse().unwrap());
        let s = w.to_json();
        assert!(s.contains("\"alpha_plus\":[\"5/6\"]"));
        assert_eq!(OmegaPoint::from_json(&s).unwrap(), w);
        assert!(OmegaPoint::from_json("{\"alpha_plus\":[\"-1\"]}").is_err());
    }
}
