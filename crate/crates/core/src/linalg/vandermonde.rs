use num::{One, Zero};

use super::{elementary_all, residue_denominator, Poly, RatMatrix};
use crate::error::{contract, Result};
use crate::rat::{pow, Rat};

/// Strictly decreasing interpolation nodes a_1 > ... > a_N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nodes(Vec<Rat>);

impl Nodes {
    pub fn new(values: Vec<Rat>) -> Result<Self> {
        if values.windows(2).any(|w| w[0] <= w[1]) {
            return Err(contract("nodes must be strictly decreasing"));
        }
        Ok(Nodes(values))
    }

    pub fn values(&self) -> &[Rat] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// [a_i^{N-j}]
pub fn vandermonde_matrix(nodes: &Nodes) -> RatMatrix {
    let n = nodes.len();
    RatMatrix::from_fn(n, n, |i, j| pow(&nodes.0[i], (n - 1 - j) as i64))
}

/// prod_{i<j} (a_i - a_j)
pub fn vandermonde_det(nodes: &Nodes) -> Rat {
    let a = &nodes.0;
    let mut acc = Rat::one();
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            acc *= &a[i] - &a[j];
        }
    }
    acc
}

/// Closed-form inverse: entry (i,j) is (-1)^{i-1} e_{i-1}(a without a_j)
/// over prod_{r != j} (a_j - a_r).
pub fn vandermonde_inverse(nodes: &Nodes) -> RatMatrix {
    let a = &nodes.0;
    let n = a.len();
    let mut inv = RatMatrix::zeros(n, n);
    for j in 0..n {
        let rest: Vec<Rat> = a.iter().enumerate().filter(|&(r, _)| r != j).map(|(_, x)| x.clone()).collect();
        let e = elementary_all(&rest);
        let den = residue_denominator(a, j);
        for (i, ei) in e.iter().enumerate().take(n) {
            let v = ei / &den;
            inv.set(i, j, if i % 2 == 0 { v } else { -v });
        }
    }
    inv
}

/// sum_j [V^{-1}]_{ij} f(a_j) for 1-based row `i`; equals the coefficient of
/// w^{N-i} in f when deg f < N.
pub fn vandermonde_sum(nodes: &Nodes, f: &Poly, i: usize) -> Result<Rat> {
    let n = nodes.len();
    if i == 0 || i > n {
        return Err(contract(format!("row {i} outside 1..={n}")));
    }
    if f.degree().is_some_and(|d| d >= n) {
        return Err(contract("polynomial degree must be below the node count"));
    }
    let inv = vandermonde_inverse(nodes);
    let mut s = Rat::zero();
    for (j, a) in nodes.0.iter().enumerate() {
        s += inv.get(i - 1, j) * f.eval(a);
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};
    use proptest::prelude::*;

    fn nodes() -> impl Strategy<Value = Nodes> {
        proptest::collection::btree_set((-20i64..=20, 1i64..=3).prop_map(|(p, q)| rat(p, q)), 1..6)
            .prop_map(|s| Nodes::new(s.into_iter().rev().collect()).unwrap())
    }

    #[test]
    fn rejects_unsorted() {
        assert!(Nodes::new(vec![int(1), int(2)]).is_err());
        assert!(Nodes::new(vec![int(1), int(1)]).is_err());
    }

    #[test]
    fn small_case() {
        let a = Nodes::new(vec![int(2), int(1), int(-1)]).unwrap();
        assert_eq!(vandermonde_det(&a), int(6));
        // f(w) = w^2: coefficient of w^{N-1} picked out by row 1
        let f = Poly::new(vec![int(0), int(0), int(1)]);
        assert_eq!(vandermonde_sum(&a, &f, 1).unwrap(), int(1));
        assert_eq!(vandermonde_sum(&a, &f, 3).unwrap(), int(0));
        assert!(vandermonde_sum(&a, &Poly::new(vec![int(0); 3].into_iter().chain([int(1)]).collect()), 1).is_err());
    }

    proptest! {
        #[test]
        fn inverse_is_inverse(a in nodes()) {
            let v = vandermonde_matrix(&a);
            prop_assert_eq!(&v * &vandermonde_inverse(&a), RatMatrix::identity(a.len()));
            prop_assert_eq!(v.det().unwrap(), vandermonde_det(&a));
        }

        #[test]
        fn summation_reads_coefficients(a in nodes(), c in proptest::collection::vec(-5i64..=5, 6)) {
            let n = a.len();
            let f = Poly::new(c.iter().take(n).map(|&x| int(x)).collect());
            for i in 1..=n {
                prop_assert_eq!(vandermonde_sum(&a, &f, i).unwrap(), f.coeff(n - i));
            }
        }
    }
}
