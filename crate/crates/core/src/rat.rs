//! Rational scalars and the handful of products (factorials, Pochhammer
//! symbols, q-Pochhammer symbols) used throughout.

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

use crate::error::{contract, Error, Result};

pub type Rat = BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p/q` or `p`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    if t.ends_with("/0") {
        return Err(Error::Parse(format!("{s:?}: zero denominator")));
    }
    Rat::from_str(t).map_err(|_| Error::Parse(format!("{s:?} as a rational")))
}

pub fn to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Integer power, negative exponents allowed for nonzero bases.
pub fn pow(base: &Rat, e: i64) -> Rat {
    assert!(!(base.is_zero() && e < 0), "zero to a negative power");
    let mag = num::pow::pow(base.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        mag.recip()
    } else {
        mag
    }
}

pub fn factorial(n: u64) -> Rat {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    Rat::from_integer(acc)
}

/// Rising factorial (a)_n = a(a+1)...(a+n-1).
pub fn rising(a: &Rat, n: usize) -> Rat {
    let mut acc = Rat::one();
    let mut t = a.clone();
    for _ in 0..n {
        acc *= &t;
        t += Rat::one();
    }
    acc
}

/// (a;q)_n = (1-a)(1-aq)...(1-aq^{n-1}).
pub fn q_pochhammer(a: &Rat, q: &Rat, n: usize) -> Rat {
    let mut acc = Rat::one();
    let mut t = a.clone();
    for _ in 0..n {
        acc *= Rat::one() - &t;
        t *= q;
    }
    acc
}

/// The deformation parameter, a rational in (0,1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QParam(Rat);

impl QParam {
    pub fn new(q: Rat) -> Result<Self> {
        if !q.is_positive() || q >= Rat::one() {
            return Err(contract(format!("q = {q} is not in (0,1)")));
        }
        Ok(QParam(q))
    }

    pub fn from_ratio(p: i64, r: i64) -> Result<Self> {
        if r == 0 {
            return Err(Error::Parse(format!("{p}/{r}")));
        }
        Self::new(rat(p, r))
    }

    pub fn value(&self) -> &Rat {
        &self.0
    }

    pub fn pow(&self, e: i64) -> Rat {
        pow(&self.0, e)
    }
}

impl FromStr for QParam {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        QParam::new(parse_rat(s)?)
    }
}

impl fmt::Display for QParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Serde adapters writing rationals as `"p/q"` strings.
pub mod serde_rat {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        x.to_string().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

pub mod serde_rat_vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rat>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter().map(|s| parse_rat(s).map_err(serde::de::Error::custom)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rat("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rat("-7").unwrap(), int(-7));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert_eq!(rat(3, 2).to_string(), "3/2");
    }

    #[test]
    fn pochhammers() {
        assert_eq!(rising(&int(3), 0), int(1));
        assert_eq!(rising(&int(3), 3), int(60));
        assert_eq!(rising(&int(-2), 3), int(0));
        // (1/2;1/2)_2 = (1/2)(3/4)
        assert_eq!(q_pochhammer(&rat(1, 2), &rat(1, 2), 2), rat(3, 8));
        assert_eq!(factorial(5), int(120));
        assert_eq!(pow(&rat(1, 2), -3), int(8));
    }

    #[test]
    fn qparam_range() {
        assert!(QParam::from_ratio(1, 2).is_ok());
        assert!(QParam::from_ratio(1, 1).is_err());
        assert!(QParam::from_ratio(0, 3).is_err());
        assert!("3/2".parse::<QParam>().is_err());
    }
}
