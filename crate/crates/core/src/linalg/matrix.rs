use num::{BigInt, Integer, One, Signed, Zero};
use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::rat::Rat;

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn try_mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            let mut s = Rat::zero();
            for k in 0..self.cols {
                s += self.get(i, k) * other.get(k, j);
            }
            s
        }))
    }

    /// Determinant. Each row is scaled to integers, then Bareiss
    /// elimination keeps every intermediate an exact integer minor.
    pub fn det(&self) -> Result<Rat> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!("det of {}x{}", self.rows, self.cols)));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rat::one());
        }
        let mut scale = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let row = &self.data[i * n..(i + 1) * n];
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            m.push(row.iter().map(|x| x.numer() * (&l / x.denom())).collect());
            scale *= l;
        }
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(p) => {
                        m.swap(k, p);
                        negate = !negate;
                    }
                    None => return Ok(Rat::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                    m[i][j] = v;
                }
            }
            prev = m[k][k].clone();
        }
        let d = Rat::new(m[n - 1][n - 1].clone(), scale);
        Ok(if negate { -d } else { d })
    }

    /// Reduced row echelon form in place; returns pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            for j in 0..self.cols {
                self.data.swap(r * self.cols + j, p * self.cols + j);
            }
            let inv = self.get(r, c).recip();
            for j in 0..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && !self.get(i, c).is_zero() {
                    let f = self.get(i, c).clone();
                    for j in 0..self.cols {
                        let v = self.get(i, j) - &f * self.get(r, j);
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    pub fn inverse(&self) -> Result<RatMatrix> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!("inverse of {}x{}", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                Rat::one()
            } else {
                Rat::zero()
            }
        });
        let piv = aug.rref();
        if piv.len() < n || piv[n - 1] >= n {
            return Err(Error::Pole("singular matrix".into()));
        }
        Ok(Self::from_fn(n, n, |i, j| aug.get(i, n + j).clone()))
    }

    /// Solves `self * x = rhs`, allowing more equations than unknowns as long
    /// as the system is consistent with a unique solution.
    pub fn solve(&self, rhs: &[Rat]) -> Result<Vec<Rat>> {
        if rhs.len() != self.rows {
            return Err(Error::Dimension("right-hand side length".into()));
        }
        let n = self.cols;
        let mut aug =
            Self::from_fn(self.rows, n + 1, |i, j| if j < n { self.get(i, j).clone() } else { rhs[i].clone() });
        let piv = aug.rref();
        if piv.last() == Some(&n) {
            return Err(Error::Contract("inconsistent linear system".into()));
        }
        if piv.len() < n {
            return Err(Error::Pole("linear system has no unique solution".into()));
        }
        Ok((0..n).map(|i| aug.get(i, n).clone()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn max_abs(&self) -> Rat {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_else(Rat::zero)
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        self.try_mul(rhs).expect("matrix shapes")
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    }

    // Leibniz expansion, the independent reference for det.
    fn leibniz(a: &RatMatrix) -> Rat {
        fn go(a: &RatMatrix, row: usize, used: &mut Vec<bool>, sign: i64) -> Rat {
            let n = a.rows();
            if row == n {
                return int(sign);
            }
            let mut s = Rat::zero();
            let mut sgn = sign;
            for c in 0..n {
                if used[c] {
                    continue;
                }
                used[c] = true;
                if !a.get(row, c).is_zero() {
                    s += a.get(row, c) * go(a, row + 1, used, sgn);
                }
                used[c] = false;
                sgn = -sgn;
            }
            s
        }
        // sgn flips once per free column passed over: that count is the
        // number of inversions contributed by this row
        go(a, 0, &mut vec![false; a.rows()], 1)
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-9i64..=9, 1i64..=5).prop_map(|(p, q)| rat(p, q))
    }

    fn square(n: usize) -> impl Strategy<Value = RatMatrix> {
        proptest::collection::vec(small_rat(), n * n)
            .prop_map(move |v| RatMatrix::from_fn(n, n, |i, j| v[i * n + j].clone()))
    }

    #[test]
    fn det_examples() {
        assert_eq!(m(&[&[2, 1], &[1, 3]]).det().unwrap(), int(5));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det().unwrap(), int(-1));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).det().unwrap(), int(0));
        assert_eq!(RatMatrix::zeros(0, 0).det().unwrap(), int(1));
        let h = RatMatrix::from_fn(3, 3, |i, j| rat(1, (i + j + 1) as i64));
        assert_eq!(h.det().unwrap(), rat(1, 2160));
        assert!(RatMatrix::zeros(2, 3).det().is_err());
    }

    #[test]
    fn solve_overdetermined() {
        let a = m(&[&[1, 1], &[1, -1], &[2, 0]]);
        let x = a.solve(&[int(3), int(1), int(4)]).unwrap();
        assert_eq!(x, vec![int(2), int(1)]);
        assert!(a.solve(&[int(3), int(1), int(5)]).is_err());
    }

    proptest! {
        #[test]
        fn det_matches_leibniz(a in (1usize..=4).prop_flat_map(square)) {
            prop_assert_eq!(a.det().unwrap(), leibniz(&a));
        }

        #[test]
        fn det_multiplicative(a in square(3), b in square(3)) {
            prop_assert_eq!((&a * &b).det().unwrap(), a.det().unwrap() * b.det().unwrap());
        }

        #[test]
        fn inverse_roundtrip(a in square(3)) {
            if !a.det().unwrap().is_zero() {
                let inv = a.inverse().unwrap();
                prop_assert_eq!(&a * &inv, RatMatrix::identity(3));
            } else {
                prop_assert!(a.inverse().is_err());
            }
        }

        #[test]
        fn cauchy_binet(a in proptest::collection::vec(small_rat(), 15),
                        b in proptest::collection::vec(small_rat(), 15)) {
            let a = RatMatrix::from_fn(3, 5, |i, j| a[i * 5 + j].clone());
            let b = RatMatrix::from_fn(5, 3, |i, j| b[i * 3 + j].clone());
            let mut s = Rat::zero();
            for y1 in 0..5 {
                for y2 in y1 + 1..5 {
                    for y3 in y2 + 1..5 {
                        let y = [y1, y2, y3];
                        s += a.submatrix(&[0, 1, 2], &y).det().unwrap()
                            * b.submatrix(&y, &[0, 1, 2]).det().unwrap();
                    }
                }
            }
            prop_assert_eq!((&a * &b).det().unwrap(), s);
        }
    }
}
