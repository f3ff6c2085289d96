use num::{One, Zero};
use std::collections::{BTreeMap, HashMap};

use super::{a_coeff, DetContext};
use crate::error::Result;
use crate::gt::{dim_product, fitting_signatures, Signature};
use crate::linalg::RatMatrix;
use crate::rat::Rat;

/// One row of a stochastic link: a distribution over level-K signatures.
/// Zero entries are omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkRow {
    pub level: usize,
    pub entries: BTreeMap<Signature, Rat>,
}

impl LinkRow {
    pub fn get(&self, kappa: &Signature) -> Rat {
        self.entries.get(kappa).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn sum(&self) -> Rat {
        self.entries.values().sum()
    }

    pub fn is_stochastic(&self) -> bool {
        self.sum().is_one() && self.entries.values().all(|v| *v >= Rat::zero())
    }
}

/// Λ^N_K(ν, ·) = Dim_K κ · det[A_i(κ_j - j)] over the κ that fit under ν.
pub fn link_row(nu: &Signature, k: usize) -> Result<LinkRow> {
    link_row_ctx(&DetContext::new(k, nu)?)
}

pub fn link_row_ctx(ctx: &DetContext) -> Result<LinkRow> {
    let k = ctx.k();
    let mut cache: HashMap<(usize, i64), Rat> = HashMap::new();
    let mut entries = BTreeMap::new();
    for kappa in fitting_signatures(k, ctx.nu()) {
        let y = kappa.positions();
        let mut m = RatMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                let v = match cache.get(&(i, y[j])) {
                    Some(v) => v.clone(),
                    None => {
                        let v = a_coeff(ctx, i + 1, y[j])?;
                        cache.insert((i, y[j]), v.clone());
                        v
                    }
                };
                m.set(i, j, v);
            }
        }
        let d = m.det()?;
        if !d.is_zero() {
            entries.insert(kappa.clone(), d * Rat::from_integer(dim_product(&kappa)));
        }
    }
    if k == 0 {
        entries.insert(Signature::empty(), Rat::one());
    }
    Ok(LinkRow { level: k, entries })
}

/// Λ^N_M Λ^M_K (ν, ·), for checking coherence against Λ^N_K.
pub fn link_compose(nu: &Signature, m: usize, k: usize) -> Result<LinkRow> {
    let upper = link_row(nu, m)?;
    let mut acc: BTreeMap<Signature, Rat> = BTreeMap::new();
    for (mu, w) in &upper.entries {
        let lower =
            if k == m { LinkRow { level: k, entries: [(mu.clone(), Rat::one())].into() } } else { link_row(mu, k)? };
        for (kappa, v) in lower.entries {
            *acc.entry(kappa).or_insert_with(Rat::zero) += w * v;
        }
    }
    acc.retain(|_, v| !v.is_zero());
    Ok(LinkRow { level: k, entries: acc })
}
