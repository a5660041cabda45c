//! 2×2 integer and rational transformation matrices.
//!
//! A matrix `(a b; c d)` acts on forms by `F ↦ F(aX+bY, cX+dY)` and on points
//! of the projective line by `z ↦ (az+b)/(cz+d)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl IntMatrix2 {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        IntMatrix2 { a, b, c, d }
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        Self::from_i64(1, 0, 0, 1)
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    pub fn mul(&self, o: &IntMatrix2) -> IntMatrix2 {
        IntMatrix2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn neg(&self) -> IntMatrix2 {
        IntMatrix2::new(-&self.a, -&self.b, -&self.c, -&self.d)
    }

    /// Adjugate `(d −b; −c a)`; equals `det · M⁻¹`.
    pub fn adjugate(&self) -> IntMatrix2 {
        IntMatrix2::new(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn to_rational(&self) -> RatMatrix2 {
        RatMatrix2::new(self.entries().map(|e| BigRational::from_integer(e.clone())))
            .expect("caller checked the determinant")
    }
}

impl fmt::Display for IntMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{};{},{}", self.a, self.b, self.c, self.d)
    }
}

fn split_matrix(s: &str) -> Result<[&str; 4]> {
    let rows: Vec<&str> = s.trim().split(';').collect();
    if rows.len() != 2 {
        return Err(Error::Parse(format!("matrix `{s}` must have the shape a,b;c,d")));
    }
    let mut out = Vec::with_capacity(4);
    for row in rows {
        let cols: Vec<&str> = row.split(',').map(str::trim).collect();
        if cols.len() != 2 {
            return Err(Error::Parse(format!("matrix `{s}` must have the shape a,b;c,d")));
        }
        out.extend(cols);
    }
    Ok([out[0], out[1], out[2], out[3]])
}

impl FromStr for IntMatrix2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = split_matrix(s)?;
        let mut vals = Vec::with_capacity(4);
        for p in parts {
            vals.push(
                p.parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad matrix entry `{p}`")))?,
            );
        }
        let mut it = vals.into_iter();
        Ok(IntMatrix2::new(
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
        ))
    }
}

/// A nonsingular rational matrix, scaled so that its first nonzero entry is 1.
///
/// Matrices that differ by a nonzero scalar induce the same projective map and
/// normalize to the same value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix2 {
    e: [BigRational; 4],
}

impl RatMatrix2 {
    pub fn new(entries: [BigRational; 4]) -> Result<Self> {
        let [a, b, c, d] = &entries;
        if (a * d - b * c).is_zero() {
            return Err(Error::SingularMatrix);
        }
        let lead = entries.iter().find(|x| !x.is_zero()).unwrap().clone();
        Ok(RatMatrix2 {
            e: entries.map(|x| x / &lead),
        })
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new([a, b, c, d].map(|x| BigRational::from_integer(x.into())))
    }

    pub fn entries(&self) -> &[BigRational; 4] {
        &self.e
    }

    pub fn det(&self) -> BigRational {
        let [a, b, c, d] = &self.e;
        a * d - b * c
    }

    /// Inverse projective map (normalized adjugate).
    pub fn inverse(&self) -> RatMatrix2 {
        let [a, b, c, d] = &self.e;
        RatMatrix2::new([d.clone(), -b.clone(), -c.clone(), a.clone()]).unwrap()
    }

    /// Entries of the true inverse `adj(T)/det(T)`, without normalization.
    pub fn inverse_entries(&self) -> [BigRational; 4] {
        let [a, b, c, d] = &self.e;
        let det = self.det();
        [d / &det, -b / &det, -c / &det, a / &det]
    }

    pub fn mul(&self, o: &RatMatrix2) -> RatMatrix2 {
        let [a, b, c, d] = &self.e;
        let [p, q, r, s] = &o.e;
        RatMatrix2::new([a * p + b * r, a * q + b * s, c * p + d * r, c * q + d * s]).unwrap()
    }

    /// The primitive integer matrix in this projective class (positive first
    /// nonzero entry).
    pub fn primitive_integer(&self) -> IntMatrix2 {
        let den = self
            .e
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = self
            .e
            .iter()
            .map(|x| (x * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let mut it = ints.into_iter().map(|x| x / &g);
        IntMatrix2::new(
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
        )
    }
}

impl fmt::Display for RatMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.e;
        write!(f, "{a},{b};{c},{d}")
    }
}

impl FromStr for RatMatrix2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = split_matrix(s)?;
        let mut vals = Vec::with_capacity(4);
        for p in parts {
            vals.push(parse_rational(p)?);
        }
        let mut it = vals.into_iter();
        RatMatrix2::new([
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
        ])
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}
