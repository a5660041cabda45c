//! Integer binary forms `F(X,Y) = a₀Xʳ + a₁Xʳ⁻¹Y + … + a_rYʳ`.

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::{IntMatrix2, RatMatrix2};

/// A binary form of declared degree `coeffs.len() - 1`.
///
/// The degree is kept even when `a₀ = 0`, in which case the form is divisible
/// by `Y` and has a root at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryForm {
    coeffs: Vec<BigInt>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Empty);
        }
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::AllZero);
        }
        Ok(BinaryForm { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> &BigInt {
        &self.coeffs[0]
    }

    /// Gcd of the coefficients (always positive).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        // Homogeneous Horner: ((a0 x + a1 y) x + a2 y²) ...
        let mut acc = BigInt::zero();
        let mut ypow = BigInt::one();
        for c in &self.coeffs {
            acc = acc * x + c * &ypow;
            ypow *= y;
        }
        acc
    }

    pub fn neg(&self) -> BinaryForm {
        BinaryForm {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Result<BinaryForm> {
        BinaryForm::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Product of two forms; degrees add.
    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        BinaryForm {
            coeffs: convolve(&self.coeffs, &other.coeffs),
        }
    }

    /// `F_U(X,Y) = F(aX+bY, cX+dY)`.
    pub fn transform(&self, u: &IntMatrix2) -> Result<BinaryForm> {
        if u.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(BinaryForm {
            coeffs: substitute(&self.coeffs, &u.a, &u.b, &u.c, &u.d),
        })
    }

    /// Rational substitution; the result generally has rational coefficients.
    pub fn transform_rat(&self, t: &RatMatrix2) -> RatForm {
        RatForm::from(self).transform(t)
    }

    /// Canonical text encoding `r:a0,a1,...,ar`.
    pub fn encode(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.degree())?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for BinaryForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (deg, rest) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("form `{s}` must look like r:a0,...,ar")))?;
        let deg: usize = deg
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad degree in `{s}`")))?;
        let coeffs = rest
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad coefficient `{c}` in `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() != deg + 1 {
            return Err(Error::Parse(format!(
                "form `{s}` declares degree {deg} but has {} coefficients",
                coeffs.len()
            )));
        }
        BinaryForm::new(coeffs)
    }
}

impl Serialize for BinaryForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.encode())
    }
}

impl<'de> Deserialize<'de> for BinaryForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A binary form with rational coefficients, produced by rational substitutions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatForm {
    pub coeffs: Vec<BigRational>,
}

impl RatForm {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn transform(&self, t: &RatMatrix2) -> RatForm {
        self.transform_entries(t.entries())
    }

    /// Substitution by an arbitrary (not necessarily normalized) matrix.
    pub fn transform_entries(&self, m: &[BigRational; 4]) -> RatForm {
        let [a, b, c, d] = m;
        RatForm {
            coeffs: substitute(&self.coeffs, a, b, c, d),
        }
    }

    pub fn scale(&self, k: &BigRational) -> RatForm {
        RatForm {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// The integer form, if every coefficient is integral.
    pub fn to_integer(&self) -> Option<BinaryForm> {
        if self.coeffs.iter().all(|c| c.is_integer()) {
            BinaryForm::new(self.coeffs.iter().map(|c| c.to_integer()).collect()).ok()
        } else {
            None
        }
    }

    /// The unique `μ > 0` and integer primitive form `P` with `self = μ·P`, up to
    /// the sign convention that `P`'s first nonzero coefficient matches `self`.
    pub fn primitive_integer(&self) -> BinaryForm {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|x| (x * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        BinaryForm::new(ints.into_iter().map(|x| x / &g).collect())
            .expect("nonzero rational form")
    }
}

impl From<&BinaryForm> for RatForm {
    fn from(f: &BinaryForm) -> Self {
        RatForm {
            coeffs: f
                .coeffs()
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for RatForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.degree())?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

pub(crate) fn convolve<T>(p: &[T], q: &[T]) -> Vec<T>
where
    T: Clone + Zero,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    let mut out = vec![T::zero(); p.len() + q.len() - 1];
    for (i, x) in p.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in q.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x * y;
        }
    }
    out
}

/// Expand `Σ cᵢ (aX+bY)^{r-i} (cX+dY)^i` as a coefficient vector.
fn substitute<T>(coeffs: &[T], a: &T, b: &T, c: &T, d: &T) -> Vec<T>
where
    T: Clone + Zero + One + Add<Output = T>,
    for<'x> &'x T: Mul<&'x T, Output = T>,
{
    let r = coeffs.len() - 1;
    let left = [a.clone(), b.clone()];
    let right = [c.clone(), d.clone()];
    let mut lpow = vec![vec![T::one()]];
    let mut rpow = vec![vec![T::one()]];
    for k in 0..r {
        lpow.push(convolve(&lpow[k], &left));
        rpow.push(convolve(&rpow[k], &right));
    }
    let mut out = vec![T::zero(); r + 1];
    for (i, ci) in coeffs.iter().enumerate() {
        if ci.is_zero() {
            continue;
        }
        let term = convolve(&lpow[r - i], &rpow[i]);
        for (k, t) in term.iter().enumerate() {
            out[k] = out[k].clone() + ci * t;
        }
    }
    out
}
