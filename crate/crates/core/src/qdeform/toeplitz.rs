//! Boundary points n_1 ≤ n_2 ≤ ... of the q-deformed graph (restricted to
//! eventually constant sequences), the limit coefficients qA_∞, the
//! q-Toeplitz matrix B^n and the coefficient inversion behind it.
//!
//! Every integrand here has the shape P(z) (z q^a; q)_∞ / (z; q | n)_∞. With
//! n_j = c for j > r0 the infinite products cancel down to finitely many
//! factors 1 - z q^e, so each contour integral is a finite residue sum.
//!
//! These contours are taken clockwise: the integrals are minus the residue
//! sums. With that orientation n ≡ 0 gives B(1,1) = 1, coefficient extraction
//! returns c_ℓ rather than -c_ℓ, and the finite-N coefficients converge to
//! qA_∞ (see the tests below).

use num::{One, Zero};
use std::fmt;
use std::str::FromStr;

use crate::error::{contract, Error, Result};
use crate::gt::Signature;
use crate::linalg::Poly;
use crate::rat::{QParam, Rat};

/// Nondecreasing integer sequence n_1 ≤ n_2 ≤ ..., equal to `tail` from
/// index head.len()+1 on. Text form: "n1,n2,...;c".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundarySeq {
    head: Vec<i64>,
    tail: i64,
}

impl BoundarySeq {
    pub fn new(head: Vec<i64>, tail: i64) -> Result<Self> {
        let ok = head.windows(2).all(|w| w[0] <= w[1]) && head.last().is_none_or(|&l| l <= tail);
        if !ok {
            return Err(contract(format!("{head:?};{tail} is not nondecreasing")));
        }
        Ok(BoundarySeq { head, tail })
    }

    pub fn constant(c: i64) -> Self {
        BoundarySeq { head: vec![], tail: c }
    }

    /// 1-based n_j.
    pub fn get(&self, j: usize) -> i64 {
        self.head.get(j - 1).copied().unwrap_or(self.tail)
    }

    pub fn head(&self) -> &[i64] {
        &self.head
    }

    pub fn tail(&self) -> i64 {
        self.tail
    }

    /// ν(N) = (n_N, ..., n_1), a sequence whose last coordinates stabilize
    /// to n.
    pub fn truncate(&self, n: usize) -> Signature {
        Signature::new((1..=n).rev().map(|j| self.get(j)).collect()).expect("nondecreasing")
    }
}

impl FromStr for BoundarySeq {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("boundary sequence {s:?}"));
        let (h, c) = s.split_once(';').ok_or_else(bad)?;
        let head = if h.trim().is_empty() {
            vec![]
        } else {
            h.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect::<Result<Vec<i64>>>()?
        };
        BoundarySeq::new(head, c.trim().parse().map_err(|_| bad())?)
    }
}

impl fmt::Display for BoundarySeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h: Vec<String> = self.head.iter().map(|x| x.to_string()).collect();
        write!(f, "{};{}", h.join(","), self.tail)
    }
}

/// (z; q)_m as a polynomial in z.
fn q_poch_poly(start: i64, m: usize, q: &QParam) -> Poly {
    (0..m as i64).fold(Poly::one(), |p, s| &p * &Poly::linear(Rat::one(), -q.pow(start + s)))
}

/// Minus the sum of residues of P(z) (z q^a; q)_∞ / (z; q | n)_∞ at the
/// poles z = q^{-e} with e ≤ cut.
fn boundary_contour(p: &Poly, a: i64, n: &BoundarySeq, q: &QParam, cut: i64) -> Rat {
    let r0 = n.head.len() as i64;
    let b = r0 + n.tail;
    // (z q^a; q)_∞ / (z q^b; q)_∞ is a finite product one way or the other
    let mut numer = p.clone();
    let mut exps: Vec<i64> = n.head.iter().enumerate().map(|(r, &nr)| r as i64 + nr).collect();
    if a < b {
        numer = &numer * &q_poch_poly(a, (b - a) as usize, q);
    } else {
        exps.extend(b..a);
    }
    let poles: Vec<Rat> = exps.iter().map(|&e| q.pow(-e)).collect();
    let mut s = Rat::zero();
    for (j, &e) in exps.iter().enumerate() {
        if e > cut {
            continue;
        }
        let z = &poles[j];
        let v = numer.eval(z);
        if v.is_zero() {
            continue;
        }
        // 1 - z q^e = -q^e (z - q^{-e})
        let mut den = -q.pow(e);
        for (k, &f) in exps.iter().enumerate() {
            if k != j {
                den *= Rat::one() - z * q.pow(f);
            }
        }
        s += v / den;
    }
    -s
}

fn q_a_inf_raw(x: i64, k: usize, i: usize, n: &BoundarySeq, q: &QParam) -> Rat {
    let k = k as i64;
    let p = q_poch_poly(0, (k - i as i64) as usize, q);
    q.pow(x + k) * boundary_contour(&p, x + k + 1, n, q, x + k)
}

/// qA_i(x | K, ∞, n): q^{x+K} times the residues of
/// (z q^{x+K+1}; q)_∞ (z; q)_{K-i} / (z; q | n)_∞ at poles q^{-m}, m ≤ x+K.
pub fn q_a_infinity(x: i64, k: usize, i: usize, n: &BoundarySeq, q: &QParam) -> Result<Rat> {
    if i == 0 || i > k {
        return Err(contract(format!("row index {i} outside 1..={k}")));
    }
    Ok(q_a_inf_raw(x, k, i, n, q))
}

/// B^n(x,i) = q^{(x-i+1)(x+i-2)/2} times the residues of
/// (z q^x; q)_∞ (z; q)_{i-1} / (z; q | n)_∞ at poles q^{-m}, m ≤ x-1.
pub fn b_entry(x: i64, i: usize, n: &BoundarySeq, q: &QParam) -> Result<Rat> {
    if i == 0 {
        return Err(contract("column index starts at 1"));
    }
    let ii = i as i64;
    let p = q_poch_poly(0, i - 1, q);
    Ok(q.pow((x - ii + 1) * (x + ii - 2) / 2) * boundary_contour(&p, x, n, q, x - 1))
}

/// Both sides of qA_{i-1}(x) q^i = qA_i(x-1) q^{1-x} + qA_i(x) (q^i - q^{-x});
/// i = 1 uses the same integral with (z;q)_K.
pub fn three_term_check(x: i64, k: usize, i: usize, n: &BoundarySeq, q: &QParam) -> Result<(Rat, Rat)> {
    if i == 0 || i > k {
        return Err(contract(format!("row index {i} outside 1..={k}")));
    }
    let ii = i as i64;
    let lhs = q_a_inf_raw(x, k, i - 1, n, q) * q.pow(ii);
    let rhs = q_a_inf_raw(x - 1, k, i, n, q) * q.pow(1 - x) + q_a_inf_raw(x, k, i, n, q) * (q.pow(ii) - q.pow(-x));
    Ok((lhs, rhs))
}

/// Both sides of B(x,i+1) = B(x-1,i) + (q^{1-i} - q^{1-x}) B(x,i).
pub fn b_recurrence_check(x: i64, i: usize, n: &BoundarySeq, q: &QParam) -> Result<(Rat, Rat)> {
    let ii = i as i64;
    let lhs = b_entry(x, i + 1, n, q)?;
    let rhs = b_entry(x - 1, i, n, q)? + (q.pow(1 - ii) - q.pow(1 - x)) * b_entry(x, i, n, q)?;
    Ok((lhs, rhs))
}

/// φ(z) = sum_ℓ c_ℓ prod_{i<ℓ} (q^{-i} - z) as a polynomial.
fn newton_poly(c: &[Rat], q: &QParam) -> Poly {
    let mut acc = Poly::zero();
    let mut basis = Poly::one();
    for (l, cl) in c.iter().enumerate() {
        acc = acc.add(&basis.scale(cl));
        basis = &basis * &Poly::linear(q.pow(-(l as i64)), -Rat::one());
    }
    acc
}

// minus the residues of phi (z;q)_{lo} / (z;q)_{hi} at z = q^{-m}, m = lo..hi-1
fn q_divided_contour(phi: &Poly, lo: i64, hi: i64, q: &QParam) -> Rat {
    let exps: Vec<i64> = (lo.max(0)..hi).collect();
    let mut s = Rat::zero();
    for (j, &e) in exps.iter().enumerate() {
        let z = q.pow(-e);
        let mut den = -q.pow(e);
        for (k, &f) in exps.iter().enumerate() {
            if k != j {
                den *= Rat::one() - &z * q.pow(f);
            }
        }
        s += phi.eval(&z) / den;
    }
    -s
}

/// Recovers c_ℓ from φ = sum c_ℓ prod_{i<ℓ} (q^{-i} - z) as
/// q^{ℓ(ℓ+1)/2} times the residues of φ/(z;q)_{ℓ+1} at q^0, ..., q^{-ℓ}.
pub fn coeff_extract(c: &[Rat], ell: usize, q: &QParam) -> Rat {
    let phi = newton_poly(c, q);
    let l = ell as i64;
    q.pow(l * (l + 1) / 2) * q_divided_contour(&phi, 0, l + 1, q)
}

/// Outcome of the generating-function identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingWitness {
    pub holds: bool,
    /// First coefficient of z where the two sides differ, or the first
    /// ℓ > c with B(ℓ+1,1) ≠ 0.
    pub first_failure: Option<String>,
}

/// sum_ℓ B(ℓ+1,1) prod_{i<ℓ} (q^{-i} - z) = (z;q)_∞ / (z;q|n)_∞, both sides
/// as polynomials of degree c; also B(ℓ+1,1) = 0 for c < ℓ ≤ c+3.
pub fn b_generating_check(n: &BoundarySeq, q: &QParam) -> Result<GeneratingWitness> {
    if n.get(1) < 0 {
        return Err(contract("needs n_1 ≥ 0"));
    }
    let c = n.tail;
    let coeffs = (0..=c).map(|l| b_entry(l + 1, 1, n, q)).collect::<Result<Vec<_>>>()?;
    let lhs = newton_poly(&coeffs, q);
    // the right side keeps the factors 1 - z q^e for e not of the form r + n_{r+1}
    let denom: Vec<i64> = n.head.iter().enumerate().map(|(r, &v)| r as i64 + v).collect();
    let r0 = n.head.len() as i64;
    let rhs =
        (0..r0 + c).filter(|e| !denom.contains(e)).fold(Poly::one(), |p, e| &p * &Poly::linear(Rat::one(), -q.pow(e)));
    let deg = lhs.degree().unwrap_or(0).max(rhs.degree().unwrap_or(0));
    if let Some(k) = (0..=deg).find(|&k| lhs.coeff(k) != rhs.coeff(k)) {
        return Ok(GeneratingWitness {
            holds: false,
            first_failure: Some(format!("coefficient of z^{k}: {} vs {}", lhs.coeff(k), rhs.coeff(k))),
        });
    }
    for l in c + 1..=c + 3 {
        let b = b_entry(l + 1, 1, n, q)?;
        if !b.is_zero() {
            return Ok(GeneratingWitness { holds: false, first_failure: Some(format!("B({},1) = {b}", l + 1)) });
        }
    }
    Ok(GeneratingWitness { holds: true, first_failure: None })
}

/// d(x,i) = q^{(x-i+1)(x+i-2)/2} times the residues of φ(z)(z;q)_{i-1}/(z;q)_x
/// at q^{-m}, m = i-1..x-1, for φ given by its coefficients c.
pub fn qtoeplitz_solve(c: &[Rat], x: i64, i: usize, q: &QParam) -> Result<Rat> {
    if x < 1 || i < 1 {
        return Err(contract("x, i ≥ 1"));
    }
    let ii = i as i64;
    let phi = newton_poly(c, q);
    Ok(q.pow((x - ii + 1) * (x + ii - 2) / 2) * q_divided_contour(&phi, ii - 1, x, q))
}

/// Table d[x][i] for 0 ≤ x ≤ xmax, 0 ≤ i ≤ imax from d(x,1) = c_{x-1},
/// d(x,i+1) = d(x-1,i) + (q^{1-i} - q^{1-x}) d(x,i), zero when x or i is 0.
pub fn qtoeplitz_recurrence(c: &[Rat], xmax: usize, imax: usize, q: &QParam) -> Vec<Vec<Rat>> {
    let mut d = vec![vec![Rat::zero(); imax + 1]; xmax + 1];
    for x in 1..=xmax {
        d[x][1] = c.get(x - 1).cloned().unwrap_or_else(Rat::zero);
    }
    for i in 1..imax {
        for x in 1..=xmax {
            let (xi, ii) = (x as i64, i as i64);
            d[x][i + 1] = &d[x - 1][i] + (q.pow(1 - ii) - q.pow(1 - xi)) * &d[x][i];
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::RatMatrix;
    use crate::qdeform::{q_rel_dim_ratio, QContext};
    use crate::rat::{rat, to_f64};

    fn qs() -> [QParam; 2] {
        [QParam::from_ratio(1, 2).unwrap(), QParam::from_ratio(2, 3).unwrap()]
    }

    fn seqs() -> Vec<BoundarySeq> {
        ["; 0", ";1", "0;2", "-1,0;0", "-2,1,1;3"].iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn parse_and_truncate() {
        let n: BoundarySeq = "0,2;5".parse().unwrap();
        assert_eq!(n.get(1), 0);
        assert_eq!(n.get(7), 5);
        assert_eq!(n.truncate(4).to_string(), "5,5,2,0");
        assert_eq!(n.to_string(), "0,2;5");
        assert!("3,1;4".parse::<BoundarySeq>().is_err());
        assert!("1,2".parse::<BoundarySeq>().is_err());
    }

    #[test]
    fn k_independence() {
        for q in qs() {
            for n in seqs() {
                for x in -2..=5 {
                    for k in 1..=4usize {
                        for i in 1..=k {
                            // B(x', i') with x = x' - K - 1, i = K + 1 - i'
                            let ip = k + 1 - i;
                            let xp = x + k as i64 + 1;
                            let ipp = ip as i64;
                            let via_a = q_a_infinity(x, k, i, &n, &q).unwrap() * q.pow((xp - ipp) * (xp + ipp - 3) / 2);
                            assert_eq!(via_a, b_entry(xp, ip, &n, &q).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn toeplitz_relations() {
        for q in qs() {
            for n in seqs() {
                for x in -3..=6 {
                    for k in 1..=4 {
                        for i in 1..=k {
                            let (l, r) = three_term_check(x, k, i, &n, &q).unwrap();
                            assert_eq!(l, r, "n={n} x={x} K={k} i={i}");
                        }
                    }
                }
                for x in 1..=6 {
                    for i in 1..=6 {
                        let (l, r) = b_recurrence_check(x, i, &n, &q).unwrap();
                        assert_eq!(l, r, "n={n} x={x} i={i}");
                    }
                }
            }
        }
    }

    #[test]
    fn generating_identity() {
        for q in qs() {
            for s in [";0", ";1", "0;2", "0,1;1", "1,1,4;6"] {
                let n: BoundarySeq = s.parse().unwrap();
                let w = b_generating_check(&n, &q).unwrap();
                assert!(w.holds, "{s}: {:?}", w.first_failure);
            }
        }
        let q = QParam::from_ratio(1, 2).unwrap();
        let zero = BoundarySeq::constant(0);
        assert_eq!(b_entry(1, 1, &zero, &q).unwrap(), Rat::one());
        assert!(b_entry(2, 1, &zero, &q).unwrap().is_zero());
        // right side 1 - z is exactly the ℓ = 1 basis polynomial
        let ones = BoundarySeq::constant(1);
        let b: Vec<Rat> = (0..5).map(|l| b_entry(l + 1, 1, &ones, &q).unwrap()).collect();
        assert_eq!(b, vec![Rat::zero(), Rat::one(), Rat::zero(), Rat::zero(), Rat::zero()]);
    }

    #[test]
    fn extraction_roundtrip() {
        let q = QParam::from_ratio(1, 2).unwrap();
        let c = vec![rat(3, 7), rat(-1, 2), Rat::zero(), rat(5, 1), rat(2, 9)];
        for l in 0..5 {
            assert_eq!(coeff_extract(&c, l, &q), c[l]);
        }
        assert!(coeff_extract(&c, 7, &q).is_zero());
        assert_eq!(coeff_extract(&[Rat::one()], 0, &q), Rat::one());
    }

    #[test]
    fn solver_matches_recurrence() {
        for q in qs() {
            let c = vec![rat(1, 3), rat(-2, 1), rat(5, 4), Rat::zero(), rat(7, 2)];
            let table = qtoeplitz_recurrence(&c, 6, 6, &q);
            for x in 1..=6usize {
                for i in 1..=6usize {
                    assert_eq!(qtoeplitz_solve(&c, x as i64, i, &q).unwrap(), table[x][i], "x={x} i={i}");
                }
            }
            assert!(qtoeplitz_solve(&c, 2, 4, &q).unwrap().is_zero());
        }
    }

    #[test]
    fn finite_n_converges_to_boundary() {
        let q = QParam::from_ratio(1, 2).unwrap();
        for s in [";0", "0;1", "-1,0,2;2"] {
            let n: BoundarySeq = s.parse().unwrap();
            for kappa in ["0", "1", "-1", "1,0", "2,-1"] {
                let kappa: Signature = kappa.parse().unwrap();
                let k = kappa.len();
                let y = kappa.positions();
                let lim = RatMatrix::from_fn(k, k, |i, j| q_a_infinity(y[j], k, i + 1, &n, &q).unwrap()).det().unwrap();
                let mut prev = f64::INFINITY;
                for big in [6, 10, 14] {
                    let ctx = QContext::new(k, &n.truncate(big), &q).unwrap();
                    let gap = to_f64(&(q_rel_dim_ratio(&ctx, &kappa).unwrap() - &lim)).abs();
                    assert!(gap < prev || gap == 0.0, "{s} κ={kappa} N={big} gap={gap}");
                    prev = gap;
                }
                assert!(prev < 1e-3, "{s} κ={kappa}: {prev}");
            }
        }
    }
}
