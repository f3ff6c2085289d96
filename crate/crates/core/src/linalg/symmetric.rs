use num::{One, Zero};

use crate::rat::Rat;

/// e_0..e_n of the given values.
pub fn elementary_all(values: &[Rat]) -> Vec<Rat> {
    let mut e = vec![Rat::zero(); values.len() + 1];
    e[0] = Rat::one();
    for (k, v) in values.iter().enumerate() {
        for m in (1..=k + 1).rev() {
            let t = &e[m - 1] * v;
            e[m] += t;
        }
    }
    e
}

/// e_m; zero for m < 0 or m > n.
pub fn elementary_sym(m: i64, values: &[Rat]) -> Rat {
    if m < 0 || m as usize > values.len() {
        return Rat::zero();
    }
    elementary_all(values).swap_remove(m as usize)
}

/// h_m; zero for m < 0.
pub fn complete_sym(m: i64, values: &[Rat]) -> Rat {
    if m < 0 {
        return Rat::zero();
    }
    let m = m as usize;
    // h[d] over a growing prefix of the alphabet
    let mut h = vec![Rat::zero(); m + 1];
    h[0] = Rat::one();
    for v in values {
        for d in 1..=m {
            let t = &h[d - 1] * v;
            h[d] += t;
        }
    }
    h.swap_remove(m)
}
