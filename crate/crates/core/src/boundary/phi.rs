use num::complex::Complex64;
use num::{One, Signed, Zero};
use std::f64::consts::PI;

use super::omega::{embed, OmegaPoint};
use crate::detformula::link_row;
use crate::error::{contract, Error, Result};
use crate::gt::{dim_product, Signature};
use crate::linalg::{Poly, RatMatrix};
use crate::rat::{pow, to_f64, Rat};

/// A value that is either exact or a float with an error bound.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(Rat),
    Approx { value: f64, tolerance: f64 },
}

impl Scalar {
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => to_f64(r),
            Scalar::Approx { value, .. } => *value,
        }
    }

    pub fn tolerance(&self) -> f64 {
        match self {
            Scalar::Exact(_) => 0.0,
            Scalar::Approx { tolerance, .. } => *tolerance,
        }
    }

    pub fn exact(&self) -> Option<&Rat> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Approx { .. } => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PhiMode {
    /// Partial fractions; fails when γ^± ≠ 0.
    Exact,
    /// Quadrature on the unit circle, sample count doubled until successive
    /// estimates agree to the tolerance.
    Numeric { tolerance: f64 },
}

/// Coefficients φ_lo, ..., φ_hi.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentWindow {
    pub lo: i64,
    pub hi: i64,
    pub values: Vec<Scalar>,
}

impl LaurentWindow {
    pub fn get(&self, n: i64) -> Scalar {
        if n < self.lo || n > self.hi {
            panic!("φ_{n} outside window {}..={}", self.lo, self.hi);
        }
        self.values[(n - self.lo) as usize].clone()
    }
}

/// Φ(u;ω) at a rational point; exact only when γ^± = 0.
pub fn phi_eval(omega: &OmegaPoint, u: &Rat) -> Result<Rat> {
    if omega.has_gamma() {
        return Err(Error::NumericRequired("γ ≠ 0 makes Φ transcendental".into()));
    }
    if u.is_zero() {
        return Err(Error::Pole("Φ at u = 0".into()));
    }
    let one = Rat::one();
    let (up, um) = (u - &one, u.recip() - &one);
    let mut acc = Rat::one();
    for b in &omega.beta_plus {
        acc *= &one + b * &up;
    }
    for b in &omega.beta_minus {
        acc *= &one + b * &um;
    }
    for a in &omega.alpha_plus {
        let d = &one - a * &up;
        if d.is_zero() {
            return Err(Error::Pole(format!("Φ at u = {u}")));
        }
        acc /= d;
    }
    for a in &omega.alpha_minus {
        let d = &one - a * &um;
        if d.is_zero() {
            return Err(Error::Pole(format!("Φ at u = {u}")));
        }
        acc /= d;
    }
    Ok(acc)
}

pub fn phi_eval_complex(omega: &OmegaPoint, u: Complex64) -> Complex64 {
    let f = |r: &Rat| to_f64(r);
    let (up, um) = (u - 1.0, u.inv() - 1.0);
    let mut acc = (up * f(&omega.gamma_plus) + um * f(&omega.gamma_minus)).exp();
    for b in &omega.beta_plus {
        acc *= up * f(b) + 1.0;
    }
    for b in &omega.beta_minus {
        acc *= um * f(b) + 1.0;
    }
    for a in &omega.alpha_plus {
        acc /= -up * f(a) + 1.0;
    }
    for a in &omega.alpha_minus {
        acc /= -um * f(a) + 1.0;
    }
    acc
}

/// Φ = u^shift · num/den with den = lead · prod (u - p_k), every p_k off the
/// unit circle.
struct Rational {
    shift: i64,
    num: Poly,
    lead: Rat,
    poles: Vec<Rat>,
}

fn as_rational(omega: &OmegaPoint) -> Result<Rational> {
    let one = Rat::one();
    let mut num = Poly::one();
    let mut lead = Rat::one();
    let mut poles = vec![];
    let mut shift = 0i64;
    for b in omega.beta_plus.iter().filter(|b| !b.is_zero()) {
        num = &num * &Poly::linear(&one - b, b.clone());
    }
    for b in omega.beta_minus.iter().filter(|b| !b.is_zero()) {
        // 1 + b(1/u - 1) = ((1-b)u + b)/u
        num = &num * &Poly::linear(b.clone(), &one - b);
        shift -= 1;
    }
    for a in omega.alpha_plus.iter().filter(|a| !a.is_zero()) {
        // 1 - a(u - 1) = -a (u - (1+a)/a)
        lead *= -a.clone();
        poles.push((&one + a) / a);
    }
    for a in omega.alpha_minus.iter().filter(|a| !a.is_zero()) {
        // 1 - a(1/u - 1) = (1+a)(u - a/(1+a))/u
        lead *= &one + a;
        poles.push(a / (&one + a));
        shift += 1;
    }
    let mut sorted = poles.clone();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Pole("repeated α parameters give a double pole".into()));
    }
    Ok(Rational { shift, num, lead, poles })
}

fn exact_coeffs(omega: &OmegaPoint, lo: i64, hi: i64) -> Result<Vec<Rat>> {
    let r = as_rational(omega)?;
    let den = Poly::from_roots(&r.poles).scale(&r.lead);
    let (quot, _) = r.num.divrem(&den);
    let residues: Vec<Rat> = (0..r.poles.len())
        .map(|k| r.num.eval(&r.poles[k]) / (&r.lead * crate::linalg::residue_denominator(&r.poles, k)))
        .collect();
    let one = Rat::one();
    Ok((lo..=hi)
        .map(|n| {
            let m = n - r.shift;
            let mut c = if m >= 0 { quot.coeff(m as usize) } else { Rat::zero() };
            for (p, res) in r.poles.iter().zip(&residues) {
                let outside = p.abs() > one;
                if outside && m >= 0 {
                    c -= res * pow(p, -m - 1);
                } else if !outside && m < 0 {
                    c += res * pow(p, -m - 1);
                }
            }
            c
        })
        .collect())
}

const MAX_SAMPLES: usize = 1 << 20;

// (1/M) sum_k f(u_k) over u_k = exp(2πi(k+1/2)/M), doubling M until two
// successive estimates of every quantity agree to tol; tol is then reported
// as the error bound (the trapezoid rule converges geometrically here)
fn circle_average<F>(count: usize, tol: f64, mut f: F) -> Result<(Vec<f64>, f64)>
where
    F: FnMut(Complex64, &mut [Complex64]),
{
    let mut m = 64usize;
    let mut prev: Option<Vec<f64>> = None;
    let mut buf = vec![Complex64::zero(); count];
    while m <= MAX_SAMPLES {
        let mut acc = vec![Complex64::zero(); count];
        for k in 0..m {
            let u = Complex64::from_polar(1.0, 2.0 * PI * (k as f64 + 0.5) / m as f64);
            f(u, &mut buf);
            for (a, b) in acc.iter_mut().zip(&buf) {
                *a += b;
            }
        }
        let est: Vec<f64> = acc.iter().map(|a| a.re / m as f64).collect();
        if let Some(p) = &prev {
            let diff = p.iter().zip(&est).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            if diff < tol {
                return Ok((est, tol));
            }
        }
        prev = Some(est);
        m *= 2;
    }
    Err(Error::Convergence(format!("quadrature did not reach {tol} with {MAX_SAMPLES} samples")))
}

/// φ_n(ω) for lo ≤ n ≤ hi.
pub fn phi_coeffs(omega: &OmegaPoint, lo: i64, hi: i64, mode: PhiMode) -> Result<LaurentWindow> {
    omega.validate()?;
    if lo > hi {
        return Err(contract("empty window"));
    }
    let values = match mode {
        PhiMode::Exact => {
            if omega.has_gamma() {
                return Err(Error::NumericRequired("γ ≠ 0".into()));
            }
            exact_coeffs(omega, lo, hi)?.into_iter().map(Scalar::Exact).collect()
        }
        PhiMode::Numeric { tolerance } => {
            let count = (hi - lo + 1) as usize;
            let (est, err) = circle_average(count, tolerance, |u, out| {
                let v = phi_eval_complex(omega, u);
                for (t, o) in out.iter_mut().enumerate() {
                    *o = v * u.powi(-(lo + t as i64) as i32);
                }
            })?;
            est.into_iter().map(|value| Scalar::Approx { value, tolerance: err }).collect()
        }
    };
    Ok(LaurentWindow { lo, hi, values })
}

fn det_f64(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = 1.0;
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs())).expect("nonempty");
        if a[p][k] == 0.0 {
            return 0.0;
        }
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= a[k][k];
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            for j in k..n {
                a[i][j] -= f * a[k][j];
            }
        }
    }
    det
}

/// φ_κ(ω) = det[φ_{κ_i - i + j}].
pub fn phi_signature(omega: &OmegaPoint, kappa: &Signature, mode: PhiMode) -> Result<Scalar> {
    let k = kappa.len();
    if k == 0 {
        return Ok(Scalar::Exact(Rat::one()));
    }
    let y = kappa.positions();
    let lo = y[k - 1] + 1;
    let hi = y[0] + k as i64;
    let w = phi_coeffs(omega, lo, hi, mode)?;
    let at = |i: usize, j: usize| w.get(y[i] + j as i64 + 1);
    match mode {
        PhiMode::Exact => {
            let m = RatMatrix::from_fn(k, k, |i, j| at(i, j).exact().expect("exact window").clone());
            Ok(Scalar::Exact(m.det()?))
        }
        PhiMode::Numeric { .. } => {
            let m: Vec<Vec<f64>> = (0..k).map(|i| (0..k).map(|j| at(i, j).to_f64()).collect()).collect();
            let tol = w.values.iter().map(Scalar::tolerance).fold(0.0, f64::max);
            // first-order bound: tol times the sum of |cofactors|
            let mut cof = 0.0;
            for i in 0..k {
                for j in 0..k {
                    let minor: Vec<Vec<f64>> = (0..k)
                        .filter(|&r| r != i)
                        .map(|r| (0..k).filter(|&c| c != j).map(|c| m[r][c]).collect())
                        .collect();
                    cof += det_f64(&minor).abs();
                }
            }
            Ok(Scalar::Approx { value: det_f64(&m), tolerance: tol * cof.max(1.0) })
        }
    }
}

/// Λ^∞_K(ω, κ) = Dim_K κ · φ_κ(ω).
pub fn link_infinity(omega: &OmegaPoint, kappa: &Signature, mode: PhiMode) -> Result<Scalar> {
    let d = Rat::from_integer(dim_product(kappa));
    Ok(match phi_signature(omega, kappa, mode)? {
        Scalar::Exact(v) => Scalar::Exact(v * d),
        Scalar::Approx { value, tolerance } => {
            let df = to_f64(&d);
            Scalar::Approx { value: value * df, tolerance: tolerance * df }
        }
    })
}

/// R(u) = (N/(u-1) - x + 1/2)_{N-K-1} / (N/(u-1) + i - 1/2)_{N-K+1} · N(N-K)u/(u-1)².
pub fn r_kernel(n: usize, k: usize, x: i64, i: usize, u: Complex64) -> Complex64 {
    let w = (u - 1.0).inv() * n as f64;
    let mut acc = u * (n * (n - k)) as f64 / ((u - 1.0) * (u - 1.0));
    let top = w - x as f64 + 0.5;
    for t in 0..n - k - 1 {
        acc *= top + t as f64;
    }
    let bot = w + i as f64 - 0.5;
    for t in 0..=n - k {
        acc /= bot + t as f64;
    }
    acc
}

/// A_i(x) from the unit-circle integral of Φ(u;ω(ν)) R(u) du/(2πi u).
///
/// Uncancelled poles of the kernel's Pochhammer denominator sit at
/// u = 1 + N/(z + 1/2) for integer z, so the unit circle only separates them
/// correctly when -N < 2x + 1 and N ≥ 2(K + x + 1). Outside that range the
/// integral differs from A_i(x) and we refuse.
pub fn a_coeff_unit_circle(nu: &Signature, k: usize, i: usize, x: i64, tolerance: f64) -> Result<Scalar> {
    let n = nu.len();
    if k >= n || i == 0 || i > k {
        return Err(contract("need 1 ≤ i ≤ K < N"));
    }
    let (nn, kk) = (n as i64, k as i64);
    if 2 * x < -nn || nn < 2 * (kk + x + 1) {
        return Err(contract(format!("unit-circle form needs -N < 2x+1 and N >= 2(K+x+1), got N={n}, K={k}, x={x}")));
    }
    let omega = embed(nu);
    let (est, err) = circle_average(1, tolerance, |u, out| {
        out[0] = phi_eval_complex(&omega, u) * r_kernel(n, k, x, i, u);
    })?;
    Ok(Scalar::Approx { value: est[0], tolerance: err })
}

/// |Λ^N_K(ν, κ) - Λ^∞_K(ω(ν), κ)|.
pub fn uat_gap(nu: &Signature, kappa: &Signature, mode: PhiMode) -> Result<Scalar> {
    let finite = link_row(nu, kappa.len())?.get(kappa);
    Ok(match link_infinity(&embed(nu), kappa, mode)? {
        Scalar::Exact(v) => Scalar::Exact((finite - v).abs()),
        Scalar::Approx { value, tolerance } => Scalar::Approx { value: (to_f64(&finite) - value).abs(), tolerance },
    })
}
