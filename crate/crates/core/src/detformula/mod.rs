//! Determinantal formulas for Dim_{K,N}(κ,ν)/Dim_N ν: the residue-sum
//! coefficients A_i, the ψ-basis variant built on an inverse Vandermonde
//! matrix, and the expansion of H* in the biorthogonal basis f_{L,m}. Link
//! rows are assembled from the first.

mod bo;
mod link;

pub use bo::{bo_coefficient, bo_expansion, bo_transform, rel_dim_ratio_bo};
pub use link::{link_compose, link_row, link_row_ctx, LinkRow};

use num::{One, Zero};
use std::sync::OnceLock;

use crate::error::{contract, Error, Result};
use crate::gt::Signature;
use crate::linalg::{residue_denominator, vandermonde_inverse, Nodes, RatMatrix};
use crate::rat::{factorial, int, rising, Rat};

/// Level pair K < N and the top signature ν, with lazily cached data shared
/// by the formulas.
#[derive(Debug)]
pub struct DetContext {
    k: usize,
    nu: Signature,
    positions: Vec<i64>,
    vinv: OnceLock<RatMatrix>,
    bo: OnceLock<Vec<bo::Expansion>>,
}

impl DetContext {
    pub fn new(k: usize, nu: &Signature) -> Result<Self> {
        if k >= nu.len() {
            return Err(contract(format!("need K < N, got K = {k}, N = {}", nu.len())));
        }
        Ok(DetContext { k, nu: nu.clone(), positions: nu.positions(), vinv: OnceLock::new(), bo: OnceLock::new() })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.nu.len()
    }

    pub fn nu(&self) -> &Signature {
        &self.nu
    }

    /// ν_j - j, strictly decreasing.
    pub fn positions(&self) -> &[i64] {
        &self.positions
    }

    fn check_row(&self, i: usize, max: usize) -> Result<()> {
        if i == 0 || i > max {
            return Err(contract(format!("row index {i} outside 1..={max}")));
        }
        Ok(())
    }

    fn check_kappa(&self, kappa: &Signature) -> Result<()> {
        if kappa.len() != self.k {
            return Err(Error::Dimension(format!("κ has length {}, expected {}", kappa.len(), self.k)));
        }
        Ok(())
    }

    fn vinv(&self) -> &RatMatrix {
        self.vinv.get_or_init(|| {
            let nodes = Nodes::new(self.positions.iter().map(|&x| int(x)).collect()).expect("positions decrease");
            vandermonde_inverse(&nodes)
        })
    }
}

/// H*(z;ν) = prod_r (z + r)/(z + r - ν_r).
pub fn h_star(z: &Rat, nu: &Signature) -> Result<Rat> {
    let mut acc = Rat::one();
    for (r, &v) in nu.parts().iter().enumerate() {
        let zr = z + int(r as i64 + 1);
        let den = &zr - int(v);
        if den.is_zero() {
            return Err(Error::Pole(format!("H* at z = {z}")));
        }
        acc *= zr / den;
    }
    Ok(acc)
}

/// A_i(x): (N-K) times the sum over positions a_j = ν_j - j ≥ x of
/// (a_j - x + 1)_{N-K-1} P_i(a_j) / prod_{r≠j} (a_j - a_r), where
/// P_i(z) = prod_{r<i} (z+r) prod_{r=N-K+i+1}^{N} (z+r).
pub fn a_coeff(ctx: &DetContext, i: usize, x: i64) -> Result<Rat> {
    ctx.check_row(i, ctx.k)?;
    let (n, k) = (ctx.n() as i64, ctx.k as i64);
    let i = i as i64;
    let poles: Vec<Rat> = ctx.positions.iter().map(|&a| int(a)).collect();
    let mut s = Rat::zero();
    for (j, &a) in ctx.positions.iter().enumerate() {
        if a < x {
            break;
        }
        let mut num = rising(&int(a - x + 1), (n - k - 1) as usize);
        for r in (1..i).chain(n - k + i + 1..=n) {
            num *= int(a + r);
        }
        if !num.is_zero() {
            s += num / residue_denominator(&poles, j);
        }
    }
    Ok(s * int(n - k))
}

/// det[A_i(κ_j - j)], equal to Dim_{K,N}(κ,ν)/Dim_N ν.
pub fn rel_dim_ratio(ctx: &DetContext, kappa: &Signature) -> Result<Rat> {
    ctx.check_kappa(kappa)?;
    let y = kappa.positions();
    let k = ctx.k;
    let mut m = RatMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            m.set(i, j, a_coeff(ctx, i + 1, y[j])?);
        }
    }
    m.det()
}

/// ψ_i(x) = sum_j 1_{a_j ≥ x} (a_j - x + 1)_{N-K-1}/(N-K-1)! [V^{-1}]_{ij}
/// with V the Vandermonde matrix of the positions a_j = ν_j - j; i ranges
/// over 1..=N.
pub fn psi_coeff(ctx: &DetContext, i: usize, x: i64) -> Result<Rat> {
    ctx.check_row(i, ctx.n())?;
    let m = ctx.n() - ctx.k - 1;
    let vinv = ctx.vinv();
    let mut s = Rat::zero();
    for (j, &a) in ctx.positions.iter().enumerate() {
        if a < x {
            break;
        }
        s += rising(&int(a - x + 1), m) * vinv.get(i - 1, j);
    }
    Ok(s / factorial(m as u64))
}

/// (N-1)! ... (N-K)! det[ψ_i(κ_j - j)].
pub fn rel_dim_ratio_first(ctx: &DetContext, kappa: &Signature) -> Result<Rat> {
    ctx.check_kappa(kappa)?;
    let y = kappa.positions();
    let k = ctx.k;
    let mut m = RatMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            m.set(i, j, psi_coeff(ctx, i + 1, y[j])?);
        }
    }
    let n = ctx.n() as u64;
    let pre: Rat = (n - k as u64..n).map(factorial).fold(Rat::one(), |a, b| a * b);
    Ok(pre * m.det()?)
}
