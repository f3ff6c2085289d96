//! Exhaustive and sampled sweeps behind `gtkit verify`. Each suite counts
//! its cases and keeps the first counterexample.

use clap::ValueEnum;
use num::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use gtkit::boundary::{a_coeff_unit_circle, link_infinity, phi_coeffs, phi_eval, phi_signature, OmegaPoint, PhiMode};
use gtkit::detformula::{
    a_coeff, bo_coefficient, bo_transform, link_compose, link_row, rel_dim_ratio, DetContext, LinkRow,
};
use gtkit::gt::{
    dim_product, fitting_signatures, q_dim_oracle, q_rel_dim_oracle, rel_dim_oracle, signatures_in_box, Budget,
    Signature,
};
use gtkit::qdeform::{
    b_generating_check, b_recurrence_check, coeff_extract, general_q_ratio, q_link_row, q_rel_dim_ratio, q_to_1_check,
    qtoeplitz_recurrence, qtoeplitz_solve, three_term_check, BoundarySeq, QContext, QSubset,
};
use gtkit::rat::{int, rat, to_f64};
use gtkit::schur::{schur_combinatorial, skew_schur_combinatorial};
use gtkit::{QParam, Rat, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    #[value(name = "q1-oracle")]
    Q1Oracle,
    #[value(name = "q-oracle")]
    QOracle,
    #[value(name = "general-T", alias = "general-t")]
    GeneralT,
    #[value(name = "bo-equivalence")]
    BoEquivalence,
    #[value(name = "q-to-1")]
    QToOne,
    Coherence,
    Qtoeplitz,
    Boundary,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Q1Oracle => "q1-oracle",
            Suite::QOracle => "q-oracle",
            Suite::GeneralT => "general-T",
            Suite::BoEquivalence => "bo-equivalence",
            Suite::QToOne => "q-to-1",
            Suite::Coherence => "coherence",
            Suite::Qtoeplitz => "qtoeplitz",
            Suite::Boundary => "boundary",
        }
    }

    /// Largest N swept when --max-n is not given.
    pub fn default_max_n(self) -> usize {
        match self {
            Suite::Q1Oracle | Suite::BoEquivalence | Suite::Coherence => 5,
            _ => 4,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Bounds {
    pub max_n: usize,
    pub part_bound: i64,
    pub qs: Vec<QParam>,
    pub tolerance: f64,
    pub seed: u64,
    pub budget: Budget,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Outcome {
    pub cases: u64,
    pub failures: u64,
    pub counterexample: Option<String>,
}

impl Outcome {
    fn case(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(what());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

pub fn run(suite: Suite, b: &Bounds) -> Result<Outcome> {
    match suite {
        Suite::Q1Oracle => q1_oracle(b),
        Suite::QOracle => q_oracle(b),
        Suite::GeneralT => general_t(b),
        Suite::BoEquivalence => bo_equivalence(b),
        Suite::QToOne => q_to_one(),
        Suite::Coherence => coherence(b),
        Suite::Qtoeplitz => qtoeplitz(b),
        Suite::Boundary => boundary(b),
    }
}

fn tops(b: &Bounds) -> impl Iterator<Item = (usize, Signature)> + '_ {
    (1..=b.max_n).flat_map(move |n| signatures_in_box(n, -b.part_bound, b.part_bound).into_iter().map(move |s| (n, s)))
}

fn q1_oracle(b: &Bounds) -> Result<Outcome> {
    let mut out = Outcome::default();
    for (n, nu) in tops(b) {
        let dn = Rat::from_integer(dim_product(&nu));
        for k in 1..n {
            let ctx = DetContext::new(k, &nu)?;
            for kappa in fitting_signatures(k, &nu) {
                let got = rel_dim_ratio(&ctx, &kappa)? * &dn;
                let want = int(rel_dim_oracle(&kappa, &nu, b.budget)? as i64);
                out.case(got == want, || format!("κ={kappa} ν={nu}: determinant {got}, enumeration {want}"));
            }
        }
    }
    Ok(out)
}

fn q_oracle(b: &Bounds) -> Result<Outcome> {
    let mut out = Outcome::default();
    for q in &b.qs {
        for (n, nu) in tops(b) {
            let den = q_dim_oracle(&nu, q, b.budget)?;
            for k in 1..n {
                let ctx = QContext::new(k, &nu, q)?;
                for kappa in fitting_signatures(k, &nu) {
                    let got = q_rel_dim_ratio(&ctx, &kappa)?;
                    let want = q_rel_dim_oracle(&kappa, &nu, q, b.budget)? / &den;
                    out.case(got == want, || format!("κ={kappa} ν={nu} q={q}: {got} vs {want}"));
                }
            }
        }
    }
    Ok(out)
}

fn general_t(b: &Bounds) -> Result<Outcome> {
    let mut out = Outcome::default();
    for q in &b.qs {
        for (n, nu) in tops(b) {
            let all: Vec<Rat> = (0..n as i64).map(|t| q.pow(t)).collect();
            let den = schur_combinatorial(&nu, &all, b.budget)?;
            for k in 1..n {
                let ctx = QContext::new(k, &nu, q)?;
                for t in QSubset::all(n, n - k) {
                    let vals: Vec<Rat> = t.elems().iter().map(|&e| q.pow(e as i64)).collect();
                    for kappa in fitting_signatures(k, &nu) {
                        let got = general_q_ratio(&ctx, &t, &kappa)?;
                        let want = skew_schur_combinatorial(&nu, &kappa, &vals, b.budget)? / &den;
                        out.case(got == want, || format!("κ={kappa} ν={nu} T={:?} q={q}: {got} vs {want}", t.elems()));
                    }
                }
            }
        }
    }
    Ok(out)
}

fn bo_equivalence(b: &Bounds) -> Result<Outcome> {
    let mut out = Outcome::default();
    for (n, nu) in tops(b) {
        for k in 1..n {
            let ctx = DetContext::new(k, &nu)?;
            let lo = nu.last().unwrap_or(0) - n as i64 - 1;
            let hi = nu.first().unwrap_or(0) + 1;
            for i in 1..=k {
                for x in lo..=hi {
                    let a = a_coeff(&ctx, i, x)?;
                    let c = bo_coefficient(&ctx, i, x)?;
                    out.case(a == c, || format!("ν={nu} K={k} i={i} x={x}: {a} vs {c}"));
                }
            }
        }
    }
    for n in 2..=b.max_n.max(1) {
        for k in 1..n.min(5) {
            for i in 1..=k {
                for p in 1..=k {
                    for x in -4..=4 {
                        let v = bo_transform(n, k, i, x, p)?;
                        let want = if i == p { Rat::one() } else { Rat::zero() };
                        out.case(v == want, || format!("biorthogonality N={n} K={k} i={i} p={p} x={x}: {v}"));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Gaps at q = 1 - 10^-k, k = 1, 2, 3, must shrink by a factor in [5, 20]
/// per step wherever they are not identically zero.
fn q_to_one() -> Result<Outcome> {
    let mut out = Outcome::default();
    for (k, nu) in [(1, "2,1,0"), (2, "2,1,1,0")] {
        let nu: Signature = nu.parse()?;
        let n = nu.len() as i64;
        for i in 1..=k {
            for x in nu.last().unwrap_or(0) - n - 1..=nu.first().unwrap_or(0) + 1 {
                let mut gaps = vec![];
                for e in 1..=3u32 {
                    let q = QParam::new(int(1) - rat(1, 10i64.pow(e)))?;
                    let (a, c) = q_to_1_check(&QContext::new(k, &nu, &q)?, i, x)?;
                    gaps.push(to_f64(&(a - c)).abs());
                }
                if gaps.iter().all(|g| *g == 0.0) {
                    continue;
                }
                let ok = gaps.windows(2).all(|w| (5.0..=20.0).contains(&(w[0] / w[1])));
                out.case(ok, || format!("ν={nu} K={k} i={i} x={x}: gaps {gaps:?}"));
            }
        }
    }
    Ok(out)
}

fn q_compose(nu: &Signature, m: usize, k: usize, q: &QParam) -> Result<LinkRow> {
    let mut out = LinkRow { level: k, entries: Default::default() };
    for (mu, w) in q_link_row(nu, m, q)?.entries {
        for (kappa, v) in q_link_row(&mu, k, q)?.entries {
            *out.entries.entry(kappa).or_insert_with(Rat::zero) += &w * v;
        }
    }
    out.entries.retain(|_, v| !v.is_zero());
    Ok(out)
}

fn coherence(b: &Bounds) -> Result<Outcome> {
    let mut out = Outcome::default();
    for (n, nu) in tops(b) {
        for k in 1..n {
            let row = link_row(&nu, k)?;
            out.case(row.is_stochastic(), || format!("ν={nu} K={k}: row sum {}", row.sum()));
            for m in k + 1..n {
                let c = link_compose(&nu, m, k)?;
                out.case(c == row, || format!("ν={nu} M={m} K={k}: composition differs"));
            }
        }
    }
    for q in &b.qs {
        for (n, nu) in tops(b).filter(|(n, _)| *n <= 4) {
            for k in 1..n {
                let row = q_link_row(&nu, k, q)?;
                out.case(row.is_stochastic(), || format!("q={q} ν={nu} K={k}: row sum {}", row.sum()));
                for m in k + 1..n {
                    let c = q_compose(&nu, m, k, q)?;
                    out.case(c == row, || format!("q={q} ν={nu} M={m} K={k}: composition differs"));
                }
            }
        }
    }
    Ok(out)
}

fn small_rat(rng: &mut StdRng, max: Rat) -> Rat {
    let d: i64 = rng.gen_range(2..=12);
    let p: i64 = rng.gen_range(1..=d);
    rat(p, d) * max
}

fn qtoeplitz(b: &Bounds) -> Result<Outcome> {
    let mut out = Outcome::default();
    let mut rng = StdRng::seed_from_u64(b.seed);
    let seqs: Vec<BoundarySeq> = [";0", ";1", "0;2"].iter().map(|s| s.parse()).collect::<Result<_>>()?;
    for q in &b.qs {
        for n in &seqs {
            for x in -3..=6 {
                for k in 1..=4 {
                    for i in 1..=k {
                        let (l, r) = three_term_check(x, k, i, n, q)?;
                        out.case(l == r, || format!("three-term n={n} x={x} K={k} i={i} q={q}: {l} vs {r}"));
                    }
                }
            }
            for x in 1..=6 {
                for i in 1..=6 {
                    let (l, r) = b_recurrence_check(x, i, n, q)?;
                    out.case(l == r, || format!("recurrence n={n} x={x} i={i} q={q}: {l} vs {r}"));
                }
            }
            let w = b_generating_check(n, q)?;
            out.case(w.holds, || format!("generating identity n={n} q={q}: {}", w.first_failure.unwrap_or_default()));
        }
        let c: Vec<Rat> = (0..6).map(|_| small_rat(&mut rng, int(4)) - int(2)).collect();
        for l in 0..c.len() {
            let got = coeff_extract(&c, l, q);
            out.case(got == c[l], || format!("extraction ℓ={l} q={q}: {got} vs {}", c[l]));
        }
        let table = qtoeplitz_recurrence(&c, 6, 6, q);
        for (x, row) in table.iter().enumerate().skip(1) {
            for (i, want) in row.iter().enumerate().skip(1) {
                let v = qtoeplitz_solve(&c, x as i64, i, q)?;
                out.case(&v == want, || format!("solver x={x} i={i} q={q}: {v} vs {want}"));
            }
        }
    }
    Ok(out)
}

fn sorted_desc(mut v: Vec<Rat>) -> Vec<Rat> {
    v.sort_by(|a, b| b.cmp(a));
    v
}

fn random_beta_point(rng: &mut StdRng) -> OmegaPoint {
    let half = rat(1, 2);
    let np = rng.gen_range(0..=3);
    let nm = rng.gen_range(0..=2);
    OmegaPoint {
        alpha_plus: vec![],
        beta_plus: sorted_desc((0..np).map(|_| small_rat(rng, half.clone())).collect()),
        alpha_minus: vec![],
        beta_minus: sorted_desc((0..nm).map(|_| small_rat(rng, half.clone())).collect()),
        gamma_plus: Rat::zero(),
        gamma_minus: Rat::zero(),
    }
}

fn random_alpha_point(rng: &mut StdRng) -> OmegaPoint {
    let half = rat(1, 2);
    let mut distinct = |count: usize| {
        let mut v: Vec<Rat> = vec![];
        while v.len() < count {
            let a = small_rat(rng, half.clone());
            if !v.contains(&a) {
                v.push(a);
            }
        }
        sorted_desc(v)
    };
    let alpha_plus = distinct(2);
    let alpha_minus = distinct(1);
    let mut w = random_beta_point(rng);
    w.alpha_plus = alpha_plus;
    w.alpha_minus = alpha_minus;
    w
}

fn boundary(b: &Bounds) -> Result<Outcome> {
    let mut out = Outcome::default();
    let mut rng = StdRng::seed_from_u64(b.seed);
    for _ in 0..4 {
        let w = random_beta_point(&mut rng);
        let (lo, hi) = (-(w.beta_minus.len() as i64), w.beta_plus.len() as i64);
        let win = phi_coeffs(&w, lo - 1, hi + 1, PhiMode::Exact)?;
        let total: Rat = win.values.iter().filter_map(|s| s.exact().cloned()).sum();
        out.case(total.is_one(), || format!("normalization at {}: {total}", w.to_json()));
        for k in 1..=3usize {
            let mut s = Rat::zero();
            for kappa in signatures_in_box(k, lo, hi) {
                let v = link_infinity(&w, &kappa, PhiMode::Exact)?;
                let v = v.exact().cloned().unwrap_or_default();
                out.case(!v.is_negative(), || format!("negative minor κ={kappa} at {}", w.to_json()));
                s += v;
            }
            out.case(s.is_one(), || format!("link at K={k} sums to {s} at {}", w.to_json()));
        }
        // Φ(u1)Φ(u2) = Σ φ_ν s_ν(u1, u2), a finite sum here
        let u = [small_rat(&mut rng, int(3)), small_rat(&mut rng, int(3))];
        let lhs = phi_eval(&w, &u[0])? * phi_eval(&w, &u[1])?;
        let mut rhs = Rat::zero();
        for nu in signatures_in_box(2, lo, hi) {
            let p = phi_signature(&w, &nu, PhiMode::Exact)?.exact().cloned().unwrap_or_default();
            if !p.is_zero() {
                rhs += p * schur_combinatorial(&nu, &u, b.budget)?;
            }
        }
        out.case(lhs == rhs, || format!("product expansion at u={:?}: {lhs} vs {rhs}", u));
        // Λ^∞_N Λ^N_K = Λ^∞_K
        for n in 2..=b.max_n.min(4) {
            let mut tops = vec![];
            for nu in signatures_in_box(n, lo, hi) {
                let v = link_infinity(&w, &nu, PhiMode::Exact)?.exact().cloned().unwrap_or_default();
                if !v.is_zero() {
                    tops.push((link_row(&nu, 1)?, nu, v));
                }
            }
            for k in 1..n {
                let rows: Vec<(LinkRow, &Rat)> =
                    tops.iter().map(|(_, nu, v)| Ok((link_row(nu, k)?, v))).collect::<Result<_>>()?;
                for kappa in signatures_in_box(k, lo, hi) {
                    let composed: Rat = rows.iter().map(|(r, v)| r.get(&kappa) * *v).sum();
                    let direct = link_infinity(&w, &kappa, PhiMode::Exact)?.exact().cloned().unwrap_or_default();
                    out.case(composed == direct, || format!("compatibility N={n} κ={kappa}: {composed} vs {direct}"));
                }
            }
        }
    }
    for _ in 0..3 {
        let w = random_alpha_point(&mut rng);
        let ex = phi_coeffs(&w, -6, 6, PhiMode::Exact)?;
        let nu = phi_coeffs(&w, -6, 6, PhiMode::Numeric { tolerance: b.tolerance })?;
        for n in -6..=6 {
            let d = (ex.get(n).to_f64() - nu.get(n).to_f64()).abs();
            out.case(d <= 10.0 * b.tolerance, || format!("φ_{n} quadrature off by {d:e} at {}", w.to_json()));
        }
        let far = phi_coeffs(&w, -60, 60, PhiMode::Exact)?;
        let s: f64 = far.values.iter().map(|v| v.to_f64()).sum();
        out.case((s - 1.0).abs() < 1e-9, || format!("truncated normalization {s} at {}", w.to_json()));
        for n in 1..=3 {
            for kappa in signatures_in_box(n, -b.part_bound, b.part_bound) {
                let v = phi_signature(&w, &kappa, PhiMode::Exact)?.exact().cloned().unwrap_or_default();
                out.case(!v.is_negative(), || format!("negative minor κ={kappa} at {}", w.to_json()));
            }
        }
    }
    // the unit-circle integral against the residue sum, N = 12
    let nu: Signature = "4,2,2,1,0,0,0,0,-1,-1,-2,-3".parse()?;
    let k = 2;
    let ctx = DetContext::new(k, &nu)?;
    for i in 1..=k {
        for x in -6..=3 {
            let got = a_coeff_unit_circle(&nu, k, i, x, b.tolerance.min(1e-10))?;
            let want = to_f64(&a_coeff(&ctx, i, x)?);
            let d = (got.to_f64() - want).abs();
            out.case(d < 1e-8, || format!("unit circle i={i} x={x}: {} vs {want}", got.to_f64()));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bounds(max_n: usize) -> Bounds {
        Bounds {
            max_n,
            part_bound: 1,
            qs: vec![QParam::from_ratio(1, 2).unwrap()],
            tolerance: 1e-10,
            seed: 7,
            budget: Budget::default(),
        }
    }

    #[test]
    fn every_suite_passes_small() {
        for s in Suite::value_variants() {
            let o = run(*s, &bounds(3)).unwrap();
            assert!(o.passed(), "{}: {:?}", s.name(), o.counterexample);
            assert!(o.cases > 0, "{}", s.name());
        }
    }

    #[test]
    fn empty_sweep_is_vacuous() {
        let o = run(Suite::Q1Oracle, &bounds(0)).unwrap();
        assert_eq!(o, Outcome::default());
        assert!(o.passed());
    }

    #[test]
    fn names_parse_back() {
        for s in Suite::value_variants() {
            assert_eq!(Suite::from_str(s.name(), false).unwrap(), *s);
        }
    }
}
