//! s_{ν/κ}(q^{t_1}, ..., q^{t_{N-K}}) / s_ν(1, q, ..., q^{N-1}) for an
//! arbitrary subset T of {0, ..., N-1}.

use num::{One, Zero};
use std::collections::BTreeMap;

use super::QContext;
use crate::detformula::LinkRow;
use crate::error::{contract, Result};
use crate::gt::{fitting_signatures, Signature};
use crate::linalg::RatMatrix;
use crate::rat::{QParam, Rat};
use crate::schur::schur_bialternant;

/// A subset of {0, ..., N-1}, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSubset {
    n: usize,
    elems: Vec<usize>,
}

impl QSubset {
    pub fn new(n: usize, mut elems: Vec<usize>) -> Result<Self> {
        elems.sort_unstable();
        if elems.windows(2).any(|w| w[0] == w[1]) || elems.iter().any(|&t| t >= n) {
            return Err(contract(format!("{elems:?} is not a subset of 0..{n}")));
        }
        Ok(QSubset { n, elems })
    }

    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn complement(&self) -> QSubset {
        QSubset { n: self.n, elems: (0..self.n).filter(|t| !self.elems.contains(t)).collect() }
    }

    /// All subsets of {0, ..., n-1} of the given size, lexicographically.
    pub fn all(n: usize, size: usize) -> Vec<QSubset> {
        fn go(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<QSubset>) {
            if left == 0 {
                out.push(QSubset { n, elems: cur.clone() });
                return;
            }
            for t in start..n {
                cur.push(t);
                go(t + 1, n, left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = vec![];
        go(0, n, size, &mut vec![], &mut out);
        out
    }

    fn powers(&self, q: &QParam) -> Vec<Rat> {
        self.elems.iter().map(|&t| q.pow(t as i64)).collect()
    }
}

/// h_m(q^{j_1}, ..., q^{j_ℓ}) = sum_k q^{j_k m} prod_{r≠k} (1 - q^{j_r - j_k})^{-1}
/// for m ≥ 0, and 0 for m < 0.
pub fn h_at_q_powers(m: i64, j: &[usize], q: &QParam) -> Rat {
    if m < 0 {
        return Rat::zero();
    }
    let mut s = Rat::zero();
    for (k, &jk) in j.iter().enumerate() {
        let mut term = q.pow(jk as i64 * m);
        for (r, &jr) in j.iter().enumerate() {
            if r != k {
                term /= Rat::one() - q.pow(jr as i64 - jk as i64);
            }
        }
        s += term;
    }
    s
}

/// qψ^T_i(x) = sum_j h_{ν_j - j - x}(q^T) [V^{-1}]_{i, col(j)}, the column
/// being the one whose node is q^{ν_j - j}; i ranges over 1..=N.
pub fn psi_t(ctx: &QContext, t: &QSubset, i: usize, x: i64) -> Result<Rat> {
    let n = ctx.n();
    if i == 0 || i > n {
        return Err(contract(format!("row index {i} outside 1..={n}")));
    }
    let vinv = ctx.vinv();
    let mut s = Rat::zero();
    for (j, &a) in ctx.positions.iter().enumerate() {
        let h = h_at_q_powers(a - x, t.elems(), &ctx.q);
        if !h.is_zero() {
            s += h * vinv.get(i - 1, n - 1 - j);
        }
    }
    Ok(s)
}

fn vandermonde_of(vals: &[Rat]) -> Rat {
    let mut acc = Rat::one();
    for i in 0..vals.len() {
        for j in i + 1..vals.len() {
            acc *= &vals[i] - &vals[j];
        }
    }
    acc
}

/// s_{ν/κ}(q^T) / s_ν(1, ..., q^{N-1}) =
/// (-q^N)^{Σt} V(q^{-1}, ..., q^{-N}) / V(q^{t_1}, ...) det[qψ^T_{s'_i}(κ_j - j)],
/// with s' the sorted set N - (F \ T).
pub fn general_q_ratio(ctx: &QContext, t: &QSubset, kappa: &Signature) -> Result<Rat> {
    let (n, k) = (ctx.n(), ctx.k());
    if t.n != n || t.elems.len() != n - k {
        return Err(contract(format!("T must have {} elements of 0..{n}", n - k)));
    }
    ctx.check_kappa(kappa)?;
    let q = &ctx.q;
    let mut sp: Vec<usize> = t.complement().elems.iter().map(|s| n - s).collect();
    sp.sort_unstable();
    let y = kappa.positions();
    let mut m = RatMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            m.set(i, j, psi_t(ctx, t, sp[i], y[j])?);
        }
    }
    let tsum: i64 = t.elems.iter().map(|&x| x as i64).sum();
    let mut pre = q.pow(n as i64 * tsum);
    if tsum % 2 == 1 {
        pre = -pre;
    }
    let inv_powers: Vec<Rat> = (1..=n as i64).map(|r| q.pow(-r)).collect();
    pre = pre * vandermonde_of(&inv_powers) / vandermonde_of(&t.powers(q));
    Ok(pre * m.det()?)
}

/// κ ↦ s_κ(q^S) s_{ν/κ}(q^T) / s_ν(1, ..., q^{N-1}), S the complement of T.
pub fn general_q_projection(ctx: &QContext, t: &QSubset) -> Result<LinkRow> {
    let s = t.complement().powers(&ctx.q);
    let mut entries = BTreeMap::new();
    for kappa in fitting_signatures(ctx.k(), ctx.nu()) {
        let r = general_q_ratio(ctx, t, &kappa)?;
        if !r.is_zero() {
            let w = schur_bialternant(&kappa, &s)? * r;
            entries.insert(kappa, w);
        }
    }
    Ok(LinkRow { level: ctx.k(), entries })
}
