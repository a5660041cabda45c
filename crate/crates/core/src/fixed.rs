//! Binary fixed-point reals and complex numbers on top of `BigInt`.
//!
//! A value is `mant / 2^bits`. All operands of one computation share `bits`;
//! products and quotients are truncated back to that scale.

use std::cmp::Ordering;
use std::ops::{Add, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixed {
    mant: BigInt,
    bits: u32,
}

impl Fixed {
    pub fn zero(bits: u32) -> Self {
        Fixed { mant: BigInt::zero(), bits }
    }

    pub fn from_mant(mant: BigInt, bits: u32) -> Self {
        Fixed { mant, bits }
    }

    pub fn from_int(x: &BigInt, bits: u32) -> Self {
        Fixed { mant: x << bits, bits }
    }

    pub fn from_ratio(num: &BigInt, den: &BigInt, bits: u32) -> Self {
        Fixed { mant: (num << bits).div_floor(den), bits }
    }

    pub fn from_rational(x: &BigRational, bits: u32) -> Self {
        Self::from_ratio(x.numer(), x.denom(), bits)
    }

    pub fn from_f64(x: f64, bits: u32) -> Self {
        let r = BigRational::from_float(x).unwrap_or_else(BigRational::zero);
        Self::from_rational(&r, bits)
    }

    /// `2^-k` at scale `bits`.
    pub fn pow2_neg(k: u32, bits: u32) -> Self {
        if k > bits {
            Fixed::from_mant(BigInt::one(), bits)
        } else {
            Fixed::from_mant(BigInt::one() << (bits - k), bits)
        }
    }

    pub fn ulp(bits: u32) -> Self {
        Fixed::from_mant(BigInt::one(), bits)
    }

    pub fn mant(&self) -> &BigInt {
        &self.mant
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn abs(&self) -> Fixed {
        Fixed { mant: self.mant.abs(), bits: self.bits }
    }

    pub fn mul(&self, o: &Fixed) -> Fixed {
        debug_assert_eq!(self.bits, o.bits);
        Fixed { mant: (&self.mant * &o.mant) >> self.bits, bits: self.bits }
    }

    pub fn mul_int(&self, k: &BigInt) -> Fixed {
        Fixed { mant: &self.mant * k, bits: self.bits }
    }

    /// Truncated quotient; `None` on division by zero.
    pub fn div(&self, o: &Fixed) -> Option<Fixed> {
        if o.mant.is_zero() {
            return None;
        }
        Some(Fixed {
            mant: (&self.mant << self.bits).div_floor(&o.mant),
            bits: self.bits,
        })
    }

    pub fn with_bits(&self, bits: u32) -> Fixed {
        let mant = match bits.cmp(&self.bits) {
            Ordering::Greater => &self.mant << (bits - self.bits),
            Ordering::Less => &self.mant >> (self.bits - bits),
            Ordering::Equal => self.mant.clone(),
        };
        Fixed { mant, bits }
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mant.clone(), BigInt::one() << self.bits)
    }

    pub fn to_f64(&self) -> f64 {
        // keep at most 900 fractional bits so both factors stay finite
        let drop = self.bits.saturating_sub(900);
        let m = &self.mant >> drop;
        m.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-((self.bits - drop) as i32))
    }

    /// Nearest integer, ties rounded up.
    pub fn round(&self) -> BigInt {
        let one = BigInt::one() << self.bits;
        (&self.mant + (&one >> 1u32)).div_floor(&one)
    }

    /// Nearest integer to `self · 10^digits` (ties away from zero).
    pub fn quantize(&self, digits: u32) -> BigInt {
        let scaled = &self.mant * BigInt::from(10u32).pow(digits);
        let half = BigInt::one() << (self.bits.max(1) - 1);
        let (sign, mag) = (scaled.sign(), scaled.abs());
        let q = (mag + half) >> self.bits;
        if sign == Sign::Minus {
            -q
        } else {
            q
        }
    }
}

impl PartialOrd for Fixed {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Fixed {
    fn cmp(&self, o: &Self) -> Ordering {
        debug_assert_eq!(self.bits, o.bits);
        self.mant.cmp(&o.mant)
    }
}

impl Add for &Fixed {
    type Output = Fixed;
    fn add(self, o: &Fixed) -> Fixed {
        debug_assert_eq!(self.bits, o.bits);
        Fixed { mant: &self.mant + &o.mant, bits: self.bits }
    }
}

impl Sub for &Fixed {
    type Output = Fixed;
    fn sub(self, o: &Fixed) -> Fixed {
        debug_assert_eq!(self.bits, o.bits);
        Fixed { mant: &self.mant - &o.mant, bits: self.bits }
    }
}

impl Neg for &Fixed {
    type Output = Fixed;
    fn neg(self) -> Fixed {
        Fixed { mant: -&self.mant, bits: self.bits }
    }
}

/// Complex fixed-point number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cx {
    pub re: Fixed,
    pub im: Fixed,
}

impl Cx {
    pub fn new(re: Fixed, im: Fixed) -> Self {
        debug_assert_eq!(re.bits, im.bits);
        Cx { re, im }
    }

    pub fn zero(bits: u32) -> Self {
        Cx::new(Fixed::zero(bits), Fixed::zero(bits))
    }

    pub fn one(bits: u32) -> Self {
        Cx::new(Fixed::from_int(&BigInt::one(), bits), Fixed::zero(bits))
    }

    pub fn from_int(x: &BigInt, bits: u32) -> Self {
        Cx::new(Fixed::from_int(x, bits), Fixed::zero(bits))
    }

    pub fn from_f64(re: f64, im: f64, bits: u32) -> Self {
        Cx::new(Fixed::from_f64(re, bits), Fixed::from_f64(im, bits))
    }

    pub fn bits(&self) -> u32 {
        self.re.bits
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn with_bits(&self, bits: u32) -> Cx {
        Cx::new(self.re.with_bits(bits), self.im.with_bits(bits))
    }

    pub fn conj(&self) -> Cx {
        Cx::new(self.re.clone(), -&self.im)
    }

    pub fn mul(&self, o: &Cx) -> Cx {
        let b = self.bits();
        let re = &self.re.mant * &o.re.mant - &self.im.mant * &o.im.mant;
        let im = &self.re.mant * &o.im.mant + &self.im.mant * &o.re.mant;
        Cx::new(Fixed::from_mant(re >> b, b), Fixed::from_mant(im >> b, b))
    }

    pub fn scale_int(&self, k: &BigInt) -> Cx {
        Cx::new(self.re.mul_int(k), self.im.mul_int(k))
    }

    /// Quotient computed from exact mantissa products; `None` if `o = 0`.
    pub fn div(&self, o: &Cx) -> Option<Cx> {
        let b = self.bits();
        let den = &o.re.mant * &o.re.mant + &o.im.mant * &o.im.mant;
        if den.is_zero() {
            return None;
        }
        let re = &self.re.mant * &o.re.mant + &self.im.mant * &o.im.mant;
        let im = &self.im.mant * &o.re.mant - &self.re.mant * &o.im.mant;
        Some(Cx::new(
            Fixed::from_mant((re << b).div_floor(&den), b),
            Fixed::from_mant((im << b).div_floor(&den), b),
        ))
    }

    /// `|z|²` as an exact integer at scale `2^(2·bits)`.
    pub fn norm_sq_mant(&self) -> BigInt {
        &self.re.mant * &self.re.mant + &self.im.mant * &self.im.mant
    }

    /// Upper bound on `|z|`.
    pub fn abs_upper(&self) -> Fixed {
        let n = self.norm_sq_mant();
        let s = n.sqrt();
        let s = if &s * &s == n { s } else { s + 1 };
        Fixed::from_mant(s, self.bits())
    }

    /// Lower bound on `|z|`.
    pub fn abs_lower(&self) -> Fixed {
        Fixed::from_mant(self.norm_sq_mant().sqrt(), self.bits())
    }

    /// `|re| + |im|`, a cheap upper bound on `|z|`.
    pub fn norm1(&self) -> Fixed {
        &self.re.abs() + &self.im.abs()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl Add for &Cx {
    type Output = Cx;
    fn add(self, o: &Cx) -> Cx {
        Cx::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &Cx {
    type Output = Cx;
    fn sub(self, o: &Cx) -> Cx {
        Cx::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Neg for &Cx {
    type Output = Cx;
    fn neg(self) -> Cx {
        Cx::new(-&self.re, -&self.im)
    }
}
