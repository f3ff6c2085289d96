use std::str::FromStr;

use num::{Signed, ToPrimitive, Zero};

use gtkit::boundary::{embed, link_infinity, PhiMode, Scalar};
use gtkit::detformula::{link_row, rel_dim_ratio, DetContext, LinkRow};
use gtkit::gt::{dim_product, fitting_signatures, rel_dim_oracle, Budget, Signature};
use gtkit::qdeform::q_link_row;
use gtkit::rat::{parse_rat, to_f64};
use gtkit::{Error, QParam, Rat, Result};

use crate::report::{RunReport, Value};
use crate::suites::{self, Bounds, Suite};

pub fn dim(nu: &Signature) -> RunReport {
    let mut r = RunReport::new("dim");
    r.input("nu", nu);
    let d = r.timed("product", || dim_product(nu));
    r.push("dim", Value::exact(&Rat::from_integer(d)));
    r
}

pub fn rdim(kappa: &Signature, nu: &Signature) -> Result<RunReport> {
    let mut r = RunReport::new("rdim");
    r.input("kappa", kappa).input("nu", nu);
    let ratio = r.timed("determinant", || -> Result<Rat> {
        let ctx = DetContext::new(kappa.len(), nu)?;
        rel_dim_ratio(&ctx, kappa)
    })?;
    let count = &ratio * Rat::from_integer(dim_product(nu));
    r.push("rel_dim", Value::exact(&count));
    r.push("ratio", Value::exact(&ratio));
    Ok(r)
}

fn push_row(r: &mut RunReport, row: &LinkRow) {
    for (kappa, v) in &row.entries {
        r.push(format!("({kappa})"), Value::exact(v));
    }
    r.push("sum", Value::exact(&row.sum()));
}

pub fn link(nu: &Signature, k: usize) -> Result<RunReport> {
    let mut r = RunReport::new("link");
    r.input("nu", nu).input("level", k);
    let row = r.timed("determinants", || link_row(nu, k))?;
    push_row(&mut r, &row);
    Ok(r)
}

pub fn qlink(nu: &Signature, k: usize, q: &QParam) -> Result<RunReport> {
    let mut r = RunReport::new("qlink");
    r.input("nu", nu).input("level", k).input("q", q);
    let row = r.timed("determinants", || q_link_row(nu, k, q))?;
    push_row(&mut r, &row);
    Ok(r)
}

pub fn verify(suite: Suite, b: &Bounds) -> Result<RunReport> {
    let mut r = RunReport::new("verify");
    r.input("suite", suite.name())
        .input("max_n", b.max_n)
        .input("part_bound", b.part_bound)
        .input("q", b.qs.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(","))
        .input("tolerance", b.tolerance)
        .input("seed", b.seed)
        .input("budget", b.budget.0);
    let out = r.timed("sweep", || suites::run(suite, b))?;
    r.push("cases", Value::count(out.cases));
    r.push("failures", Value::count(out.failures));
    if let Some(c) = &out.counterexample {
        r.push("counterexample", Value::text(c.clone()));
    }
    r.check(out.passed());
    Ok(r)
}

/// ν(N) families for the boundary experiment.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// (⌊aN⌋, 0, ..., 0)
    LinearRow(Rat),
    Zero,
}

impl Family {
    pub fn at(&self, n: usize) -> Signature {
        let mut parts = vec![0i64; n];
        if let (Family::LinearRow(a), Some(first)) = (self, parts.first_mut()) {
            *first = (a * Rat::from_integer((n as i64).into())).floor().to_integer().to_i64().unwrap_or(0);
        }
        Signature::new(parts).expect("one nonnegative row")
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().split_once(':') {
            None if s.trim() == "zero" => Ok(Family::Zero),
            Some(("linear-row", a)) => {
                let a = parse_rat(a)?;
                if a.is_negative() {
                    return Err(Error::Parse(format!("family {s:?}: slope must be nonnegative")));
                }
                Ok(Family::LinearRow(a))
            }
            _ => Err(Error::Parse(format!("family {s:?}: expected linear-row:a or zero"))),
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Family::LinearRow(a) => write!(f, "linear-row:{a}"),
            Family::Zero => write!(f, "zero"),
        }
    }
}

/// Gap |Λ^N_K(ν(N),κ) - Λ^∞_K(ω(ν(N)),κ)| per N. Passes when the gaps
/// strictly decrease, or stay exactly zero.
pub fn uat(kappa: &Signature, family: &Family, ns: &[usize], mode: PhiMode) -> Result<RunReport> {
    let mut r = RunReport::new("uat");
    r.input("kappa", kappa).input("family", family).input("n", join(ns));
    match mode {
        PhiMode::Exact => r.input("mode", "exact"),
        PhiMode::Numeric { tolerance } => r.input("mode", "numeric").input("tolerance", tolerance),
    };
    let mut prev: Option<f64> = None;
    let mut ok = true;
    for &n in ns {
        if n <= kappa.len() {
            return Err(Error::Dimension(format!("N={n} must exceed the level {}", kappa.len())));
        }
        let nu = family.at(n);
        let (finite, limit) = r.timed(&format!("N={n}"), || -> Result<(Rat, Scalar)> {
            let finite = link_row(&nu, kappa.len())?.get(kappa);
            Ok((finite, link_infinity(&embed(&nu), kappa, mode)?))
        })?;
        let gap = match &limit {
            Scalar::Exact(v) => Scalar::Exact((&finite - v).abs()),
            Scalar::Approx { value, tolerance } => {
                Scalar::Approx { value: (to_f64(&finite) - value).abs(), tolerance: *tolerance }
            }
        };
        let g = gap.to_f64();
        if let Some(p) = prev {
            ok &= g < p || (g == 0.0 && p == 0.0);
        }
        prev = Some(g);
        r.push(format!("N={n} finite"), Value::exact(&finite));
        r.push(format!("N={n} limit"), Value::from(&limit));
        r.push(format!("N={n} gap"), Value::from(&gap));
    }
    r.check(ok);
    Ok(r)
}

/// ν(N) = (5,4,3,2,1) truncated to N - 2 entries, zeros, then (-1,-2).
pub fn bench_signature(n: usize) -> Result<Signature> {
    if n < 3 {
        return Err(Error::Dimension(format!("bench needs N ≥ 3, got {n}")));
    }
    let head = (n - 2).min(5);
    let mut parts: Vec<i64> = (1..=5).rev().take(head).collect();
    parts.resize(n - 2, 0);
    parts.extend([-1, -2]);
    Signature::new(parts)
}

/// Determinant rows against enumeration. Enumeration shares one budget
/// across the row and is reported as skipped once it runs out.
pub fn bench(ns: &[usize], k: usize, budget: Budget) -> Result<RunReport> {
    let mut r = RunReport::new("bench");
    r.input("n", join(ns)).input("level", k).input("budget", budget.0);
    let mut ok = true;
    for &n in ns {
        let nu = bench_signature(n)?;
        let row = r.timed(&format!("N={n} determinant"), || link_row(&nu, k))?;
        let sum = row.sum();
        ok &= sum == Rat::from_integer(1.into());
        r.push(format!("N={n} entries"), Value::count(row.entries.len() as u64));
        r.push(format!("N={n} row sum"), Value::exact(&sum));
        let enumerated = r.timed(&format!("N={n} enumeration"), || enumerate_row(&nu, k, budget))?;
        match enumerated {
            Some(e) => {
                let agree = e == row;
                ok &= agree;
                r.push(format!("N={n} enumeration"), Value::text(if agree { "agrees" } else { "DIFFERS" }));
            }
            None => r.push(format!("N={n} enumeration"), Value::text("skipped: budget exceeded")),
        }
    }
    r.check(ok);
    Ok(r)
}

fn enumerate_row(nu: &Signature, k: usize, budget: Budget) -> Result<Option<LinkRow>> {
    let dn = Rat::from_integer(dim_product(nu));
    let mut left = budget.0;
    let mut row = LinkRow { level: k, entries: Default::default() };
    for kappa in fitting_signatures(k, nu) {
        let c = match rel_dim_oracle(&kappa, nu, Budget(left)) {
            Ok(c) => c,
            Err(Error::Budget(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        left -= c.min(left);
        let v = Rat::from_integer(dim_product(&kappa) * c) / &dn;
        if !v.is_zero() {
            row.entries.insert(kappa, v);
        }
    }
    Ok(Some(row))
}

fn join(ns: &[usize]) -> String {
    ns.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use gtkit::rat::rat;

    fn sig(s: &str) -> Signature {
        s.parse().unwrap()
    }

    #[test]
    fn families() {
        assert_eq!("linear-row:1/2".parse::<Family>().unwrap().at(9), sig("4,0,0,0,0,0,0,0,0"));
        assert_eq!("zero".parse::<Family>().unwrap().at(3), sig("0,0,0"));
        assert!("linear-row:-1".parse::<Family>().is_err());
        assert!("row".parse::<Family>().is_err());
    }

    #[test]
    fn bench_family() {
        assert_eq!(bench_signature(6).unwrap(), sig("5,4,3,2,-1,-2"));
        assert_eq!(bench_signature(9).unwrap(), sig("5,4,3,2,1,0,0,-1,-2"));
        assert!(bench_signature(2).is_err());
    }

    #[test]
    fn zero_family_gaps_vanish() {
        let r = uat(&sig("0"), &Family::Zero, &[4, 8], PhiMode::Exact).unwrap();
        assert!(r.passed());
        let gaps: Vec<_> = r.results.iter().filter(|e| e.label.ends_with("gap")).collect();
        assert!(gaps.iter().all(|e| e.value == Value::exact(&Rat::zero())));
    }

    #[test]
    fn small_bench_agrees() {
        let r = bench(&[5, 6], 2, Budget::default()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.results.iter().any(|e| e.value == Value::text("agrees")));
    }

    #[test]
    fn worked_links() {
        let r = link(&sig("1,0"), 1).unwrap();
        assert_eq!(r.results[0].value, Value::exact(&rat(1, 2)));
        let r = qlink(&sig("1,0"), 1, &QParam::from_ratio(1, 2).unwrap()).unwrap();
        assert_eq!(r.results[0].value, Value::exact(&rat(2, 3)));
        assert_eq!(r.results[1].value, Value::exact(&rat(1, 3)));
    }
}
