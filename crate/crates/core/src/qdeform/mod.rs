//! The q-deformation: coefficients qA_i for the q^{vol} measure, the
//! general formula for s_{ν/κ} at an arbitrary subset of 1, q, ..., q^{N-1},
//! the N → ∞ limit qA_∞ and the q-Toeplitz calculus around it.

mod general;
mod toeplitz;

pub use general::{general_q_projection, general_q_ratio, h_at_q_powers, psi_t, QSubset};
pub use toeplitz::{
    b_entry, b_generating_check, b_recurrence_check, coeff_extract, q_a_infinity, qtoeplitz_recurrence,
    qtoeplitz_solve, three_term_check, BoundarySeq, GeneratingWitness,
};

use num::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use crate::detformula::{a_coeff, DetContext, LinkRow};
use crate::error::{contract, Error, Result};
use crate::gt::{fitting_signatures, q_dim, Signature};
use crate::linalg::{residue_denominator, vandermonde_inverse, Nodes, RatMatrix};
use crate::rat::{q_pochhammer, QParam, Rat};

/// K < N, ν and q, with the q-nodes q^{ν_j - j} and their inverse
/// Vandermonde matrix cached.
#[derive(Debug)]
pub struct QContext {
    k: usize,
    nu: Signature,
    q: QParam,
    positions: Vec<i64>,
    qpos: Vec<Rat>,
    vinv: OnceLock<RatMatrix>,
}

impl QContext {
    pub fn new(k: usize, nu: &Signature, q: &QParam) -> Result<Self> {
        if k >= nu.len() {
            return Err(contract(format!("need K < N, got K = {k}, N = {}", nu.len())));
        }
        let positions = nu.positions();
        let qpos = positions.iter().map(|&a| q.pow(a)).collect();
        Ok(QContext { k, nu: nu.clone(), q: q.clone(), positions, qpos, vinv: OnceLock::new() })
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

    pub fn q(&self) -> &QParam {
        &self.q
    }

    /// Inverse Vandermonde matrix on the nodes q^{ν_N - N} > ... > q^{ν_1 - 1};
    /// column N+1-j belongs to the node q^{ν_j - j}.
    fn vinv(&self) -> &RatMatrix {
        self.vinv.get_or_init(|| {
            let nodes = Nodes::new(self.qpos.iter().rev().cloned().collect()).expect("q-nodes decrease");
            vandermonde_inverse(&nodes)
        })
    }

    fn check_kappa(&self, kappa: &Signature) -> Result<()> {
        if kappa.len() != self.k {
            return Err(Error::Dimension(format!("κ has length {}, expected {}", kappa.len(), self.k)));
        }
        Ok(())
    }
}

/// qA_i(x): sum over a_j = ν_j - j ≥ x of
/// (1 - q^{N-K}) (q^{a_j+1-x}; q)_{N-K-1} prod_{r ∈ [1,i-1] ∪ [N-K+i+1,N]} (Z - q^{-r})
/// / prod_{r≠j} (Z - q^{a_r}), with Z = q^{a_j}.
pub fn q_a_coeff(ctx: &QContext, i: usize, x: i64) -> Result<Rat> {
    if i == 0 || i > ctx.k {
        return Err(contract(format!("row index {i} outside 1..={}", ctx.k)));
    }
    let (n, k) = (ctx.n() as i64, ctx.k as i64);
    let q = &ctx.q;
    let i = i as i64;
    let mut s = Rat::zero();
    for (j, &a) in ctx.positions.iter().enumerate() {
        if a < x {
            break;
        }
        let z = &ctx.qpos[j];
        let mut num = q_pochhammer(&q.pow(a + 1 - x), q.value(), (n - k - 1) as usize);
        for r in (1..i).chain(n - k + i + 1..=n) {
            num *= z - q.pow(-r);
        }
        s += num / residue_denominator(&ctx.qpos, j);
    }
    Ok(s * (Rat::one() - q.pow(n - k)))
}

/// qDim_{K,N}(κ,ν)/qDim_N ν as
/// (-1)^{K(N-K)} q^{(N-K)|κ|} q^{-K(N-K)(N+2)/2} det[qA_i(κ_j - j)].
pub fn q_rel_dim_ratio(ctx: &QContext, kappa: &Signature) -> Result<Rat> {
    ctx.check_kappa(kappa)?;
    let y = kappa.positions();
    let k = ctx.k;
    let mut m = RatMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            m.set(i, j, q_a_coeff(ctx, i + 1, y[j])?);
        }
    }
    Ok(q_prefactor(ctx, kappa) * m.det()?)
}

fn q_prefactor(ctx: &QContext, kappa: &Signature) -> Rat {
    let (n, k) = (ctx.n() as i64, ctx.k as i64);
    let e = (n - k) * kappa.size() - k * (n - k) * (n + 2) / 2;
    let p = ctx.q.pow(e);
    if (k * (n - k)) % 2 == 1 {
        -p
    } else {
        p
    }
}

/// The q-link: κ ↦ qDim_K κ · qDim_{K,N}(κ,ν)/qDim_N ν.
pub fn q_link_row(nu: &Signature, k: usize, q: &QParam) -> Result<LinkRow> {
    let ctx = QContext::new(k, nu, q)?;
    let mut cache: HashMap<(usize, i64), Rat> = HashMap::new();
    let mut entries = BTreeMap::new();
    for kappa in fitting_signatures(k, nu) {
        let y = kappa.positions();
        let mut m = RatMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                if let Some(v) = cache.get(&(i, y[j])) {
                    m.set(i, j, v.clone());
                } else {
                    let v = q_a_coeff(&ctx, i + 1, y[j])?;
                    cache.insert((i, y[j]), v.clone());
                    m.set(i, j, v);
                }
            }
        }
        let d = m.det()?;
        if !d.is_zero() {
            let v = q_dim(&kappa, q) * q_prefactor(&ctx, &kappa) * d;
            entries.insert(kappa, v);
        }
    }
    Ok(LinkRow { level: k, entries })
}

/// (qA_i(x), (-1)^{N-K} A_i(x)): the pair whose difference should vanish
/// linearly as q → 1.
pub fn q_to_1_check(ctx: &QContext, i: usize, x: i64) -> Result<(Rat, Rat)> {
    let qa = q_a_coeff(ctx, i, x)?;
    let a = a_coeff(&DetContext::new(ctx.k, &ctx.nu)?, i, x)?;
    let sign_flip = (ctx.n() - ctx.k) % 2 == 1;
    Ok((qa, if sign_flip { -a } else { a }))
}
