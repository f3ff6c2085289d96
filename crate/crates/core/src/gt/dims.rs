use num::{BigInt, One, Zero};
use std::collections::BTreeMap;

use super::pattern::{enumerate_trapezoids, Budget, GTPattern};
use super::signature::Signature;
use crate::error::Result;
use crate::rat::{int, QParam, Rat};

/// Dim_N ν = prod_{i<j} (ν_i - ν_j + j - i)/(j - i).
pub fn dim_product(nu: &Signature) -> BigInt {
    let p = nu.parts();
    let mut acc = Rat::one();
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            acc *= Rat::new(BigInt::from(p[i] - p[j] + (j - i) as i64), BigInt::from((j - i) as i64));
        }
    }
    acc.to_integer()
}

/// Number of triangular patterns with top row ν, by enumeration.
pub fn dim_oracle(nu: &Signature, budget: Budget) -> Result<u64> {
    rel_dim_oracle(&Signature::empty(), nu, budget)
}

/// Number of chains from κ up to ν, by enumeration.
pub fn rel_dim_oracle(kappa: &Signature, nu: &Signature, budget: Budget) -> Result<u64> {
    let mut it = enumerate_trapezoids(kappa, nu)?;
    let mut count = 0u64;
    while it.advance() {
        count += 1;
        budget.check(count)?;
    }
    Ok(count)
}

/// Sum of |ν^{(n)}| over 1 ≤ n ≤ N-1.
pub fn volume(p: &GTPattern) -> i64 {
    let n = p.top().len();
    p.rows.iter().filter(|r| !r.is_empty() && r.len() < n).map(|r| r.size()).sum()
}

/// qDim_N ν = prod_{i<j} (q^{ν_i - i} - q^{ν_j - j}) / (q^{-i} - q^{-j}).
pub fn q_dim(nu: &Signature, q: &QParam) -> Rat {
    let x = nu.positions();
    let mut acc = Rat::one();
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            acc *= (q.pow(x[i]) - q.pow(x[j])) / (q.pow(-(i as i64) - 1) - q.pow(-(j as i64) - 1));
        }
    }
    acc
}

/// Sum over triangular patterns of q^{vol}.
pub fn q_dim_oracle(nu: &Signature, q: &QParam, budget: Budget) -> Result<Rat> {
    q_rel_dim_oracle(&Signature::empty(), nu, q, budget)
}

/// q^{|κ|} times the sum over chains κ ≺ ... ≺ ν of
/// q^{|ν^{(K+1)}| + ... + |ν^{(N-1)}|}.
pub fn q_rel_dim_oracle(kappa: &Signature, nu: &Signature, q: &QParam, budget: Budget) -> Result<Rat> {
    let mut it = enumerate_trapezoids(kappa, nu)?;
    let mut hist: BTreeMap<i64, u64> = BTreeMap::new();
    let mut count = 0u64;
    while it.advance() {
        count += 1;
        budget.check(count)?;
        let rows = it.rows();
        let mid: i64 = rows[1..rows.len().saturating_sub(1)].iter().flatten().sum();
        *hist.entry(mid).or_default() += 1;
    }
    let mut s = Rat::zero();
    for (e, c) in hist {
        s += q.pow(e) * int(c as i64);
    }
    Ok(s * q.pow(kappa.size()))
}
