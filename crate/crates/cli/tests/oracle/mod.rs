//! Reference computations written from the definitions, sharing no code with
//! the library beyond its plain data types.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Poly = Vec<BigRational>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn pow(a: &[BigInt], e: usize) -> Vec<BigInt> {
    (0..e).fold(vec![BigInt::one()], |acc, _| mul(&acc, a))
}

/// Coefficients of `F(aX+bY, cX+dY)` by direct expansion, `X`-degree descending.
pub fn expand_transform(f: &[BigInt], m: [&BigInt; 4]) -> Vec<BigInt> {
    let r = f.len() - 1;
    // linear forms as [X coeff, Y coeff] in descending X order
    let l1 = [m[0].clone(), m[1].clone()];
    let l2 = [m[2].clone(), m[3].clone()];
    let mut out = vec![BigInt::zero(); r + 1];
    for (i, ai) in f.iter().enumerate() {
        let term = mul(&pow(&l1, r - i), &pow(&l2, i));
        for (k, t) in term.iter().enumerate() {
            out[k] += ai * t;
        }
    }
    out
}

pub fn expand_transform_rat(f: &[BigRational], m: &[BigRational; 4]) -> Vec<BigRational> {
    let r = f.len() - 1;
    let mulr = |a: &[BigRational], b: &[BigRational]| {
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    };
    let powr = |a: &[BigRational], e: usize| (0..e).fold(vec![BigRational::one()], |acc, _| mulr(&acc, a));
    let l1 = [m[0].clone(), m[1].clone()];
    let l2 = [m[2].clone(), m[3].clone()];
    let mut out = vec![BigRational::zero(); r + 1];
    for (i, ai) in f.iter().enumerate() {
        let term = mulr(&powr(&l1, r - i), &powr(&l2, i));
        for (k, t) in term.iter().enumerate() {
            out[k] += ai * t;
        }
    }
    out
}

pub fn product(forms: &[Vec<BigInt>]) -> Vec<BigInt> {
    forms.iter().fold(vec![BigInt::one()], |acc, f| mul(&acc, f))
}

/// Ascending-degree rational polynomial of `F(x, 1)` from descending coefficients.
fn dehomogenize(f: &[BigInt]) -> Poly {
    f.iter().rev().map(|c| BigRational::from_integer(c.clone())).collect()
}

fn rem(a: &Poly, b: &Poly) -> Poly {
    let mut a = trim(a.clone());
    let db = b.len() - 1;
    let lb = b[db].clone();
    while a.len() > db {
        let da = a.len() - 1;
        let q = &a[da] / &lb;
        for (k, bk) in b.iter().enumerate() {
            let t = &q * bk;
            a[da - db + k] -= t;
        }
        a = trim(a);
    }
    a
}

/// Classical resultant of univariate polynomials by the Euclidean recursion
/// `Res(f, g) = (−1)^{mn} lc(g)^{m−k} Res(g, f mod g)`.
fn res_univariate(f: &Poly, g: &Poly) -> BigRational {
    let (m, n) = (f.len() - 1, g.len() - 1);
    if n == 0 {
        return g[0].pow(m as i32);
    }
    let r = rem(f, g);
    if r.is_empty() {
        return BigRational::zero();
    }
    let k = r.len() - 1;
    let sign = if (m * n) % 2 == 1 { -BigRational::one() } else { BigRational::one() };
    sign * g[n].pow((m - k) as i32) * res_univariate(g, &r)
}

/// `Res(F, G)` for forms with nonzero leading coefficients.
pub fn resultant(f: &[BigInt], g: &[BigInt]) -> Option<BigInt> {
    if f[0].is_zero() || g[0].is_zero() {
        return None;
    }
    let r = res_univariate(&dehomogenize(f), &dehomogenize(g));
    assert!(r.is_integer());
    Some(r.to_integer())
}

/// `D(F) = (−1)^{r(r−1)/2} Res(F, ∂F/∂X) / a₀` for forms with `a₀ ≠ 0`.
pub fn discriminant(f: &[BigInt]) -> Option<BigInt> {
    if f[0].is_zero() {
        return None;
    }
    let r = f.len() - 1;
    let p = dehomogenize(f);
    let dp: Poly = (1..p.len()).map(|k| &p[k] * BigRational::from_integer(k.into())).collect();
    let res = res_univariate(&p, &dp) / BigRational::from_integer(f[0].clone());
    let sign = if (r * (r - 1) / 2) % 2 == 1 { -BigRational::one() } else { BigRational::one() };
    let d = sign * res;
    assert!(d.is_integer());
    Some(d.to_integer())
}

/// `U` with entries in `[−bound, bound]` and `det U = ±1` such that `G = F_U`.
pub fn brute_force_equivalence(f: &[i64], g: &[i64], bound: i64) -> Option<[i64; 4]> {
    let r = f.len() - 1;
    let apply = |u: [i64; 4]| -> Vec<i128> {
        let l1 = [u[0] as i128, u[1] as i128];
        let l2 = [u[2] as i128, u[3] as i128];
        let mulp = |a: &[i128], b: &[i128]| {
            let mut o = vec![0i128; a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    o[i + j] += x * y;
                }
            }
            o
        };
        let powp = |a: &[i128], e: usize| (0..e).fold(vec![1i128], |acc, _| mulp(&acc, a));
        let mut out = vec![0i128; r + 1];
        for (i, &ai) in f.iter().enumerate() {
            for (k, t) in mulp(&powp(&l1, r - i), &powp(&l2, i)).iter().enumerate() {
                out[k] += ai as i128 * t;
            }
        }
        out
    };
    let target: Vec<i128> = g.iter().map(|&x| x as i128).collect();
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                let ds: Vec<i64> = if a == 0 {
                    // det = −bc must be ±1
                    if (b * c).abs() == 1 {
                        (-bound..=bound).collect()
                    } else {
                        Vec::new()
                    }
                } else {
                    [1i64, -1]
                        .iter()
                        .filter(|&&s| (b * c + s) % a == 0)
                        .map(|&s| (b * c + s) / a)
                        .filter(|d| d.abs() <= bound)
                        .collect()
                };
                for d in ds {
                    if (a * d - b * c).abs() == 1 && apply([a, b, c, d]) == target {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

/// Multiset of `F(x, y) mod m` over `(ℤ/m)²`; invariant under `GL₂(ℤ)`.
pub fn value_distribution(f: &[i64], m: i64) -> Vec<usize> {
    let r = f.len() - 1;
    let mut hist = vec![0usize; m as usize];
    for x in 0..m {
        for y in 0..m {
            let mut v = 0i64;
            for (i, &a) in f.iter().enumerate() {
                let mut t = a.rem_euclid(m);
                for _ in 0..r - i {
                    t = t * x % m;
                }
                for _ in 0..i {
                    t = t * y % m;
                }
                v = (v + t) % m;
            }
            hist[v as usize] += 1;
        }
    }
    hist
}

/// Number of `α`-tuples of positive integers whose product divides `c`.
pub fn tau_brute(c: u64, alpha: u32) -> u64 {
    if alpha == 0 {
        return 1;
    }
    (1..=c).filter(|d| c.is_multiple_of(*d)).map(|d| tau_brute(c / d, alpha - 1)).sum()
}

/// `(x, y)` with `x = ±∏ p^{a_p}`, `|a_p| ≤ e`, `x + y = 1`, `y` supported on the primes.
pub fn sunit_brute(primes: &[u64], e: i32) -> Vec<(i128, i128, i128)> {
    let smooth = |mut n: i128| {
        n = n.abs();
        if n == 0 {
            return false;
        }
        for &p in primes {
            while n % p as i128 == 0 {
                n /= p as i128;
            }
        }
        n == 1
    };
    let gcd = |mut a: i128, mut b: i128| {
        a = a.abs();
        b = b.abs();
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    let mut out = Vec::new();
    let k = primes.len();
    let side = (2 * e + 1) as usize;
    for idx in 0..side.pow(k as u32) {
        let (mut num, mut den) = (1i128, 1i128);
        let mut j = idx;
        for &p in primes {
            let a = (j % side) as i32 - e;
            j /= side;
            if a > 0 {
                num *= (p as i128).pow(a as u32);
            } else {
                den *= (p as i128).pow((-a) as u32);
            }
        }
        for s in [1i128, -1] {
            // y = (den − s·num)/den
            let yn = den - s * num;
            let g = gcd(yn, den);
            if yn != 0 && smooth(yn / g) && smooth(den / g) {
                out.push((s * num, den, yn / g));
            }
        }
    }
    out
}

pub fn is_smooth_unit(v: &BigInt) -> bool {
    v.abs().is_one()
}
