//! Laurent Schur polynomials and their skew versions, computed several
//! independent ways: bialternant, pattern sums, Jacobi–Trudi, and the
//! one-variable determinant with a virtual particle.

use num::{One, Zero};
use std::collections::BTreeMap;

use crate::error::{contract, Error, Result};
use crate::gt::{enumerate_trapezoids, interlaces, Budget, Signature};
use crate::linalg::{complete_sym, RatMatrix};
use crate::rat::{pow, Rat};

fn checked_pow(u: &Rat, e: i64) -> Result<Rat> {
    if u.is_zero() && e < 0 {
        return Err(Error::Pole(format!("0^{e}")));
    }
    Ok(pow(u, e))
}

/// det[u_i^{ν_j + N - j}] / det[u_i^{N - j}]; values must be distinct.
pub fn schur_bialternant(nu: &Signature, vals: &[Rat]) -> Result<Rat> {
    let n = nu.len();
    if vals.len() != n {
        return Err(Error::Dimension(format!("{} values for length {n}", vals.len())));
    }
    let mut num = RatMatrix::zeros(n, n);
    let mut den = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let e = (n - 1 - j) as i64;
            num.set(i, j, checked_pow(&vals[i], nu.parts()[j] + e)?);
            den.set(i, j, pow(&vals[i], e));
        }
    }
    let d = den.det()?;
    if d.is_zero() {
        return Err(Error::Pole("repeated values in the bialternant".into()));
    }
    Ok(num.det()? / d)
}

/// s_ν by summing monomials over triangular patterns.
pub fn schur_combinatorial(nu: &Signature, vals: &[Rat], budget: Budget) -> Result<Rat> {
    skew_schur_combinatorial(nu, &Signature::empty(), vals, budget)
}

/// s_{ν/κ}(u_{K+1}, ..., u_N) as a sum over chains κ ≺ ... ≺ ν, the value
/// u_{K+m} carrying exponent |ν^{(K+m)}| - |ν^{(K+m-1)}|.
pub fn skew_schur_combinatorial(nu: &Signature, kappa: &Signature, vals: &[Rat], budget: Budget) -> Result<Rat> {
    if vals.len() + kappa.len() != nu.len() {
        return Err(Error::Dimension(format!("{} values for levels {}..{}", vals.len(), kappa.len(), nu.len())));
    }
    let mut it = enumerate_trapezoids(kappa, nu)?;
    let mut hist: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    let mut count = 0u64;
    while it.advance() {
        count += 1;
        budget.check(count)?;
        let sums: Vec<i64> = it.rows().iter().map(|r| r.iter().sum()).collect();
        let expo: Vec<i64> = sums.windows(2).map(|w| w[1] - w[0]).collect();
        *hist.entry(expo).or_default() += 1;
    }
    let mut s = Rat::zero();
    for (expo, c) in hist {
        let mut term = Rat::from_integer(c.into());
        for (u, e) in vals.iter().zip(&expo) {
            term *= checked_pow(u, *e)?;
        }
        s += term;
    }
    Ok(s)
}

/// u^{|ν| - |κ|} when κ ≺ ν, else 0.
pub fn skew_schur_one_variable(nu: &Signature, kappa: &Signature, u: &Rat) -> Result<Rat> {
    if kappa.len() + 1 != nu.len() {
        return Err(Error::Dimension("one-variable skew needs adjacent levels".into()));
    }
    if interlaces(kappa, nu) {
        checked_pow(u, nu.size() - kappa.size())
    } else {
        Ok(Rat::zero())
    }
}

/// Dual Jacobi–Trudi: both signatures are shifted to be nonnegative, κ is
/// padded with zeros and det[h_{ν_i - κ_j + j - i}] (size N) is taken; the
/// shift is then undone by (u_1 ... u_{N-K})^{-c}.
pub fn skew_schur_jacobi_trudi(nu: &Signature, kappa: &Signature, vals: &[Rat]) -> Result<Rat> {
    let n = nu.len();
    let k = kappa.len();
    if vals.len() + k != n {
        return Err(Error::Dimension(format!("{} values for levels {k}..{n}", vals.len())));
    }
    if k > n {
        return Err(contract("κ longer than ν"));
    }
    let low = nu.last().into_iter().chain(kappa.last()).min().unwrap_or(0);
    let c = (-low).max(0);
    let lam = nu.shifted(c);
    let mut mu = kappa.shifted(c).parts().to_vec();
    mu.resize(n, 0);
    let m = RatMatrix::from_fn(n, n, |i, j| complete_sym(lam.parts()[i] - mu[j] + j as i64 - i as i64, vals));
    let mut v = m.det()?;
    if c > 0 {
        let prod: Rat = vals.iter().fold(Rat::one(), |a, u| a * u);
        v *= checked_pow(&prod, -c)?;
    }
    Ok(v)
}

/// A particle position, or the virtual particle sitting to the left of
/// everything.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Particle {
    At(i64),
    Virtual,
}

/// ξ_u(x, y) = u^{y-x} 1_{x ≤ y} + u^y 1_{x virtual}.
pub fn xi_kernel(u: &Rat, x: Particle, y: i64) -> Result<Rat> {
    match x {
        Particle::Virtual => checked_pow(u, y),
        Particle::At(x) if x <= y => checked_pow(u, y - x),
        Particle::At(_) => Ok(Rat::zero()),
    }
}

/// u^N det[ξ_u(x^{N-1}_i, x^N_j)], with x^m_j = ν^{(m)}_j - j and the
/// virtual particle filling slot N of the lower row.
pub fn skew_schur_one_variable_det(nu: &Signature, mu: &Signature, u: &Rat) -> Result<Rat> {
    let n = nu.len();
    if mu.len() + 1 != n {
        return Err(Error::Dimension("one-variable skew needs adjacent levels".into()));
    }
    let xs: Vec<Particle> = mu.positions().into_iter().map(Particle::At).chain([Particle::Virtual]).collect();
    let ys = nu.positions();
    let mut m = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, xi_kernel(u, xs[i], ys[j])?);
        }
    }
    Ok(checked_pow(u, n as i64)? * m.det()?)
}
