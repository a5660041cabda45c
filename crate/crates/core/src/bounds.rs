//! Arithmetic functions and explicit upper bounds on class counts.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

/// Prime factorization of `c ≥ 1` by trial division, primes ascending.
pub fn factorize(mut c: u64) -> Vec<(u64, u32)> {
    assert!(c >= 1, "factorize needs c ≥ 1");
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= c {
        if c.is_multiple_of(p) {
            let mut e = 0;
            while c.is_multiple_of(p) {
                c /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if c > 1 {
        out.push((c, 1));
    }
    out
}

/// Number of distinct primes dividing `c`.
pub fn omega(c: u64) -> u32 {
    factorize(c).len() as u32
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    let k = k.min(n - k.min(n));
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// `τ_α(c) = #{(d₁,…,d_α) ∈ ℕ^α : d₁⋯d_α | c} = ∏ C(e + α, α)` over `p^e ∥ c`.
pub fn tau_alpha(c: u64, alpha: u64) -> BigInt {
    factorize(c)
        .into_iter()
        .map(|(_, e)| binomial(e as u64 + alpha, alpha))
        .product()
}

/// Same as [`tau_alpha`] for `c` given by its factorization.
fn tau_from_factors(f: &[(u64, u32)], alpha: u64) -> BigInt {
    f.iter()
        .map(|&(_, e)| binomial(e as u64 + alpha, alpha))
        .product()
}

/// `Σ d` over positive `d` with `d^k | c`.
pub fn divisor_power_sum(c: u64, k: u32) -> BigInt {
    let mut sum = BigInt::zero();
    let mut d: u64 = 1;
    loop {
        let Some(p) = d.checked_pow(k) else { break };
        if p > c {
            break;
        }
        if c.is_multiple_of(p) {
            sum += d;
        }
        d += 1;
    }
    sum
}

/// Inputs of the class-count bound for degree `r` and index `c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundInputs {
    pub r: u64,
    pub c: u64,
    pub omega: u32,
    /// `α = r(r−1)/2`.
    pub alpha: u64,
    /// `τ_α(c²)`.
    #[serde(with = "crate::serde_big")]
    pub tau: BigInt,
    /// `Σ_{d^α | c} d`.
    #[serde(with = "crate::serde_big")]
    pub divisor_sum: BigInt,
}

impl BoundInputs {
    pub fn new(r: u64, c: u64) -> Self {
        let alpha = r * (r - 1) / 2;
        let sq: Vec<(u64, u32)> = factorize(c).into_iter().map(|(p, e)| (p, 2 * e)).collect();
        BoundInputs {
            r,
            c,
            omega: omega(c),
            alpha,
            tau: tau_from_factors(&sq, alpha),
            divisor_sum: divisor_power_sum(c, alpha as u32),
        }
    }
}

/// `2^{24r³}`, the bound on orders with given index one.
pub fn order_bound(r: u64) -> BigInt {
    BigInt::one() << (24 * r * r * r)
}

/// `2^{24r³(1+ω(c))}·τ_{r(r−1)/2}(c²)·Σ_{d^{r(r−1)/2} | c} d`.
pub fn class_bound(r: u64, c: u64) -> BigInt {
    let inp = BoundInputs::new(r, c);
    (BigInt::one() << (24 * r * r * r * (1 + inp.omega as u64))) * inp.tau * inp.divisor_sum
}
