//! Univariate polynomials over ℚ and over ℤ/pℤ, coefficients in ascending order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Polynomial over ℚ; `p[i]` is the coefficient of `x^i`. Trailing zeros are trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly(pub Vec<BigRational>);

impl QPoly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        QPoly(c)
    }

    pub fn from_ints(c: &[BigInt]) -> Self {
        QPoly::new(c.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn zero() -> Self {
        QPoly(Vec::new())
    }

    pub fn constant(c: BigRational) -> Self {
        QPoly::new(vec![c])
    }

    /// `a·x + b`.
    pub fn linear(a: BigRational, b: BigRational) -> Self {
        QPoly::new(vec![b, a])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.0.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, o: &QPoly) -> QPoly {
        let n = self.0.len().max(o.0.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &QPoly) -> QPoly {
        let n = self.0.len().max(o.0.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn scale(&self, k: &BigRational) -> QPoly {
        QPoly::new(self.0.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        QPoly::new(crate::form::convolve(&self.0, &o.0))
    }

    /// Quotient and remainder; panics if `d` is zero.
    pub fn divrem(&self, d: &QPoly) -> (QPoly, QPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.0[dd].clone();
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (QPoly::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = &r[i] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.0.iter().enumerate() {
                r[i - dd + j] -= &c * dj;
            }
            q[i - dd] = c;
        }
        (QPoly::new(q), QPoly::new(r))
    }

    pub fn rem(&self, d: &QPoly) -> QPoly {
        self.divrem(d).1
    }

    pub fn monic(&self) -> QPoly {
        match self.0.last() {
            Some(l) => self.scale(&l.recip()),
            None => QPoly::zero(),
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// `p(q(x)) mod m`, evaluated by Horner's rule.
    pub fn compose_mod(&self, q: &QPoly, m: &QPoly) -> QPoly {
        self.0.iter().rev().fold(QPoly::zero(), |acc, c| {
            acc.mul(q).add(&QPoly::constant(c.clone())).rem(m)
        })
    }

    /// Inverse of `self` modulo `m`, if they are coprime.
    pub fn inverse_mod(&self, m: &QPoly) -> Option<QPoly> {
        // invariant: s·self ≡ r (mod m)
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut s0, mut s1) = (QPoly::zero(), QPoly::constant(BigRational::one()));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
        }
        if r0.degree() != Some(0) {
            return None;
        }
        Some(s0.scale(&r0.0[0].recip()).rem(m))
    }
}

/// `lcm` of the denominators of a slice of rationals.
pub fn common_denominator<'a, I: IntoIterator<Item = &'a BigRational>>(xs: I) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Polynomial over ℤ/pℤ with `p < 2^32`, ascending, trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPoly {
    pub p: u64,
    pub c: Vec<u64>,
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

impl ModPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        ModPoly { p, c }
    }

    pub fn from_ints(p: u64, c: &[BigInt]) -> Self {
        let pb = BigInt::from(p);
        ModPoly::new(
            p,
            c.iter()
                .map(|x| x.mod_floor(&pb).to_u64().expect("reduced"))
                .collect(),
        )
    }

    fn x(p: u64) -> Self {
        ModPoly::new(p, vec![0, 1])
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn sub(&self, o: &ModPoly) -> ModPoly {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        let g = |v: &Vec<u64>, i: usize| v.get(i).copied().unwrap_or(0);
        ModPoly::new(p, (0..n).map(|i| (g(&self.c, i) + p - g(&o.c, i)) % p).collect())
    }

    fn mul(&self, o: &ModPoly) -> ModPoly {
        if self.is_zero() || o.is_zero() {
            return ModPoly::new(self.p, vec![]);
        }
        let p = self.p;
        let mut out = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % p;
            }
        }
        ModPoly::new(p, out)
    }

    fn divrem(&self, d: &ModPoly) -> (ModPoly, ModPoly) {
        let p = self.p;
        let dd = d.degree().expect("division by zero polynomial");
        let li = inv_mod(d.c[dd], p);
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (ModPoly::new(p, vec![]), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = r[i] * li % p;
            if c == 0 {
                continue;
            }
            for (j, dj) in d.c.iter().enumerate() {
                r[i - dd + j] = (r[i - dd + j] + p - c * dj % p) % p;
            }
            q[i - dd] = c;
        }
        (ModPoly::new(p, q), ModPoly::new(p, r))
    }

    fn rem(&self, d: &ModPoly) -> ModPoly {
        self.divrem(d).1
    }

    fn monic(&self) -> ModPoly {
        match self.c.last() {
            Some(&l) => {
                let li = inv_mod(l, self.p);
                ModPoly::new(self.p, self.c.iter().map(|x| x * li % self.p).collect())
            }
            None => self.clone(),
        }
    }

    pub fn gcd(&self, o: &ModPoly) -> ModPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            (a, b) = (b, r);
        }
        a.monic()
    }

    pub fn derivative(&self) -> ModPoly {
        let p = self.p;
        ModPoly::new(
            p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| (i as u64 % p) * a % p)
                .collect(),
        )
    }

    fn pow_rem(&self, mut e: u64, m: &ModPoly) -> ModPoly {
        let mut base = self.rem(m);
        let mut acc = ModPoly::new(self.p, vec![1]).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Degrees of the irreducible factors of a squarefree polynomial, sorted.
    pub fn factor_degrees(&self) -> Vec<usize> {
        let p = self.p;
        let mut f = self.monic();
        let mut h = ModPoly::x(p);
        let mut out = Vec::new();
        let mut d = 1;
        while f.degree().is_some_and(|n| n >= 2 * d) {
            h = h.pow_rem(p, &f);
            let g = f.gcd(&h.sub(&ModPoly::x(p)));
            let gd = g.degree().unwrap_or(0);
            if gd > 0 {
                out.extend(std::iter::repeat_n(d, gd / d));
                f = f.divrem(&g).0;
                h = h.rem(&f);
            }
            d += 1;
        }
        if let Some(n) = f.degree().filter(|&n| n > 0) {
            out.push(n);
        }
        out
    }
}

/// All sums of sub-multisets of `degrees`, as a membership table up to their total.
pub fn subset_sums(degrees: &[usize]) -> Vec<bool> {
    let total: usize = degrees.iter().sum();
    let mut can = vec![false; total + 1];
    can[0] = true;
    for &d in degrees {
        for s in (d..=total).rev() {
            if can[s - d] {
                can[s] = true;
            }
        }
    }
    can
}

/// Small primes by trial division.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n)
        .filter(|&k| (2..).take_while(|d| d * d <= k).all(|d| k % d != 0))
        .collect()
}

/// Positive divisors of `|n|` for `n ≠ 0`, sorted.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
