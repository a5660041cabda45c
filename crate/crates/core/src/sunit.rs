//! Solutions of `x + y = 1` with `x, y` in the group generated by `−1` and a
//! finite set of primes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::par::{self, Exec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SUnitGroupSpec {
    primes: Vec<u64>,
    pub exponent_bound: u32,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl SUnitGroupSpec {
    /// Primes are sorted; duplicates and non-primes are rejected.
    pub fn new(mut primes: Vec<u64>, exponent_bound: u32) -> Result<Self> {
        primes.sort_unstable();
        if primes.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parse("repeated prime".into()));
        }
        if let Some(p) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::Parse(format!("{p} is not prime")));
        }
        Ok(SUnitGroupSpec { primes, exponent_bound })
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Generator count `n = |primes| + 1`, counting `−1`.
    pub fn rank(&self) -> usize {
        self.primes.len() + 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SUnitSolution {
    pub x: BigRational,
    pub y: BigRational,
    pub ex: BTreeMap<u64, i64>,
    pub ey: BTreeMap<u64, i64>,
}

fn ratio_string(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl SUnitSolution {
    pub fn to_json(&self) -> Value {
        let exps = |m: &BTreeMap<u64, i64>| {
            m.iter()
                .map(|(p, e)| (p.to_string(), json!(e)))
                .collect::<serde_json::Map<_, _>>()
        };
        json!({
            "x": ratio_string(&self.x),
            "y": ratio_string(&self.y),
            "ex": exps(&self.ex),
            "ey": exps(&self.ey),
        })
    }
}

/// Strip the given primes from `|n|`; the exponents if the cofactor is 1.
fn smooth_part(n: &BigInt, primes: &[u64]) -> Option<Vec<i64>> {
    let mut n = n.abs();
    let mut out = Vec::with_capacity(primes.len());
    for &p in primes {
        let pb = BigInt::from(p);
        let mut e = 0;
        while (&n % &pb).is_zero() {
            n /= &pb;
            e += 1;
        }
        out.push(e);
    }
    n.is_one().then_some(out)
}

/// Exponent vector of a supported rational, if it is one.
pub fn support_exponents(x: &BigRational, primes: &[u64]) -> Option<BTreeMap<u64, i64>> {
    if x.is_zero() {
        return None;
    }
    let num = smooth_part(x.numer(), primes)?;
    let den = smooth_part(x.denom(), primes)?;
    Some(
        primes
            .iter()
            .zip(num.iter().zip(&den))
            .filter(|(_, (a, b))| a != b)
            .map(|(&p, (a, b))| (p, a - b))
            .collect(),
    )
}

fn power(p: u64, e: i64) -> BigRational {
    let b = BigInt::from(p).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(b)
    } else {
        BigRational::new(BigInt::one(), b)
    }
}

pub fn sunit_solutions(group: &SUnitGroupSpec) -> Vec<SUnitSolution> {
    sunit_solutions_with(group, Exec::default())
}

/// Every `x = ±∏p^{a_p}` with `|a_p| ≤ E` whose complement `1 − x` is also supported.
pub fn sunit_solutions_with(group: &SUnitGroupSpec, exec: Exec) -> Vec<SUnitSolution> {
    let k = group.primes.len();
    let side = 2 * group.exponent_bound as usize + 1;
    let count = 2 * side.pow(k as u32);
    let e = group.exponent_bound as i64;
    let mut sols = par::map_range(exec, count, |mut idx| {
        let negative = idx % 2 == 1;
        idx /= 2;
        let mut x = BigRational::one();
        let mut ex = BTreeMap::new();
        for &p in &group.primes {
            let a = (idx % side) as i64 - e;
            idx /= side;
            if a != 0 {
                x *= power(p, a);
                ex.insert(p, a);
            }
        }
        if negative {
            x = -x;
        }
        let y = BigRational::one() - &x;
        let ey = support_exponents(&y, &group.primes)?;
        Some(SUnitSolution { x, y, ex, ey })
    })
    .into_iter()
    .flatten()
    .collect::<Vec<_>>();
    sols.sort();
    sols
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub count: usize,
    pub rank: usize,
    /// `2^{8(n+1)}`.
    pub bound: BigInt,
    pub holds: bool,
    /// `count / bound`.
    pub ratio: f64,
}

pub fn verify_bs_bound(group: &SUnitGroupSpec, solutions: &[SUnitSolution]) -> BoundReport {
    let n = group.rank();
    let bound = BigInt::one() << (8 * (n + 1));
    let count = solutions.len();
    BoundReport {
        count,
        rank: n,
        holds: BigInt::from(count) <= bound,
        ratio: count as f64 / 2f64.powi(8 * (n as i32 + 1)),
        bound,
    }
}
