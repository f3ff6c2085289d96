//! Expansion of H*(z;ν) in the basis f_{L,m}(z) = prod_{y∈L} (z-y)/(z-y-m),
//! L = L(N,i) = {-N+K-i, ..., -i}. The coefficients are found by solving an
//! interpolation system at non-integer points, which does not go through
//! any residue calculus; they serve as an independent check of A_i.

use num::Zero;
use std::collections::BTreeMap;

use super::{h_star, DetContext};
use crate::error::{contract, Result};
use crate::gt::Signature;
use crate::linalg::{residue_denominator, RatMatrix};
use crate::rat::{int, rat, rising, Rat};

pub(super) type Expansion = BTreeMap<i64, Rat>;

fn f_basis(l: &[i64], m: i64, z: &Rat) -> Rat {
    l.iter().map(|&y| (z - int(y)) / (z - int(y + m))).product()
}

fn expand(ctx: &DetContext, i: usize) -> Result<Expansion> {
    let (n, k) = (ctx.n() as i64, ctx.k() as i64);
    let lo = -n + k - i as i64;
    let hi = -(i as i64);
    let l: Vec<i64> = (lo..=hi).collect();
    // poles of H* after cancelling against its zeros at -1..-N
    let poles: Vec<i64> = ctx.positions().iter().copied().filter(|&a| !(-n..=-1).contains(&a)).collect();
    let m_min = poles.iter().map(|&p| p - lo).min().unwrap_or(0).min(0);
    let m_max = poles.iter().map(|&p| p - hi).max().unwrap_or(0).max(0);
    let ms: Vec<i64> = (m_min..=m_max).collect();
    let pts: Vec<Rat> = (0..ms.len() as i64 + 3).map(|s| int(s) + rat(1, 3)).collect();
    let a = RatMatrix::from_fn(pts.len(), ms.len(), |r, c| f_basis(&l, ms[c], &pts[r]));
    let rhs = pts.iter().map(|z| h_star(z, ctx.nu())).collect::<Result<Vec<_>>>()?;
    let sol = a.solve(&rhs)?;
    Ok(ms.into_iter().zip(sol).filter(|(_, c)| !c.is_zero()).collect())
}

/// Nonzero coefficients (H* : f_{L(N,i),m}), keyed by m.
pub fn bo_expansion(ctx: &DetContext, i: usize) -> Result<&BTreeMap<i64, Rat>> {
    ctx.check_row(i, ctx.k())?;
    if ctx.bo.get().is_none() {
        let all = (1..=ctx.k()).map(|i| expand(ctx, i)).collect::<Result<Vec<_>>>()?;
        let _ = ctx.bo.set(all);
    }
    Ok(&ctx.bo.get().expect("initialized")[i - 1])
}

/// (H* : f_{L(N,i), x+i}), which should coincide with A_i(x).
pub fn bo_coefficient(ctx: &DetContext, i: usize, x: i64) -> Result<Rat> {
    Ok(bo_expansion(ctx, i)?.get(&(x + i as i64)).cloned().unwrap_or_else(Rat::zero))
}

/// det[(H* : f_{L(N,j), κ_i - i + j})].
pub fn rel_dim_ratio_bo(ctx: &DetContext, kappa: &Signature) -> Result<Rat> {
    ctx.check_kappa(kappa)?;
    let y = kappa.positions();
    let k = ctx.k();
    let mut m = RatMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            m.set(i, j, bo_coefficient(ctx, j + 1, y[i])?);
        }
    }
    m.det()
}

/// The functional g ↦ (N-K) sum of residues at z ≥ x of
/// (z-x+1)_{N-K-1}/(z+i)_{N-K+1} g(z), applied to g = f_{L(N,i),x+p}.
/// Biorthogonality says this is 1 when p = i and 0 otherwise.
pub fn bo_transform(n: usize, k: usize, i: usize, x: i64, p: usize) -> Result<Rat> {
    if k >= n || i == 0 || p == 0 {
        return Err(contract("need K < N and 1-based indices"));
    }
    let (nk, i, p) = ((n - k) as i64, i as i64, p as i64);
    // after cancellation the integrand is (z-x+1)_{N-K-1} / (z+i-x-p)_{N-K+1}
    let poles: Vec<Rat> = (0..=nk).map(|t| int(x + p - i - t)).collect();
    let mut s = Rat::zero();
    for (j, z) in poles.iter().enumerate() {
        if *z < int(x) {
            continue;
        }
        let num = rising(&(z - int(x) + int(1)), (nk - 1) as usize);
        s += num / residue_denominator(&poles, j);
    }
    Ok(s * int(nk))
}

#[cfg(test)]
mod tests {
    use super::super::a_coeff;
    use super::*;
    use crate::gt::signatures_in_box;

    #[test]
    fn expansion_reproduces_h_star() {
        let nu: Signature = "3,1,0,-2".parse().unwrap();
        let ctx = DetContext::new(2, &nu).unwrap();
        for i in 1..=2 {
            let l: Vec<i64> = (-4 + 2 - i as i64..=-(i as i64)).collect();
            let e = bo_expansion(&ctx, i).unwrap();
            for z in [rat(7, 5), rat(-11, 3), rat(100, 7)] {
                let v: Rat = e.iter().map(|(m, c)| c * f_basis(&l, *m, &z)).sum();
                assert_eq!(v, h_star(&z, &nu).unwrap());
            }
        }
    }

    #[test]
    fn agrees_with_residue_form() {
        for n in 2..=4 {
            for nu in signatures_in_box(n, -2, 2) {
                for k in 1..n {
                    let ctx = DetContext::new(k, &nu).unwrap();
                    for i in 1..=k {
                        for x in nu.last().unwrap() - n as i64 - 2..=nu.first().unwrap() + 1 {
                            assert_eq!(bo_coefficient(&ctx, i, x).unwrap(), a_coeff(&ctx, i, x).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn biorthogonality() {
        for n in 2..=7 {
            for k in 1..n.min(5) {
                for i in 1..=k {
                    for p in 1..=k {
                        for x in -4..=4 {
                            let want = if i == p { int(1) } else { int(0) };
                            assert_eq!(bo_transform(n, k, i, x, p).unwrap(), want, "n={n} k={k} i={i} p={p}");
                        }
                    }
                }
            }
        }
    }
}
