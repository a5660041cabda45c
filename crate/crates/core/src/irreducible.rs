//! Exact irreducibility of binary forms over ℚ.
//!
//! A rational root test and a factor-degree sieve modulo several primes settle
//! most inputs. Whatever survives is decided by reconstructing every candidate
//! factor from subsets of certified complex roots and testing exact division.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fixed::{Cx, Fixed};
use crate::form::BinaryForm;
use crate::poly::{divisors, primes_up_to, subset_sums, ModPoly, QPoly};
use crate::resultant::discriminant;
use crate::roots::{roots, ProjectivePoint, PRECISION_LADDER};

const SIEVE_PRIMES: usize = 5;
const RATIONAL_ROOT_LIMIT: u64 = 1_000_000_000_000;

/// `F(x, 1)` with ascending coefficients.
fn dehomogenize(f: &BinaryForm) -> Vec<BigInt> {
    f.coeffs().iter().rev().cloned().collect()
}

fn has_rational_root(p: &[BigInt]) -> bool {
    let lead = p.last().expect("nonempty");
    let constant = &p[0];
    let qp = QPoly::from_ints(p);
    for num in divisors(constant) {
        for den in divisors(lead) {
            for s in [BigInt::one(), -BigInt::one()] {
                let x = BigRational::new(&s * &num, den.clone());
                if qp.eval(&x).is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

/// Degrees in `1..=r/2` that a rational factor could have, by intersecting
/// the factorization patterns modulo good primes.
fn possible_factor_degrees(p: &[BigInt]) -> Vec<usize> {
    let r = p.len() - 1;
    let mut allowed = vec![true; r + 1];
    let mut used = 0;
    for prime in primes_up_to(400) {
        if used == SIEVE_PRIMES {
            break;
        }
        let fp = ModPoly::from_ints(prime, p);
        if fp.degree() != Some(r) || !fp.is_squarefree() {
            continue;
        }
        used += 1;
        let sums = subset_sums(&fp.factor_degrees());
        for (k, a) in allowed.iter_mut().enumerate() {
            *a &= sums.get(k).copied().unwrap_or(false);
        }
    }
    (1..=r / 2).filter(|&k| allowed[k]).collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

enum Search {
    Found,
    None,
    NeedPrecision,
}

/// Look for a factor of degree in `degrees` built from roots at `bits`.
fn subset_factor(p: &[BigInt], degrees: &[usize], bits: u32) -> Result<Search> {
    let f = BinaryForm::new(p.iter().rev().cloned().collect())?;
    let rs = roots(&f, bits)?;
    let a0 = p.last().expect("nonempty").clone();
    let a0f = a0.abs().to_string().parse::<f64>().unwrap_or(f64::INFINITY);
    let target = QPoly::from_ints(p);
    let pts: Vec<&Cx> = rs
        .points
        .iter()
        .map(|q| match q {
            ProjectivePoint::Finite(z) => z,
            ProjectivePoint::Infinity => unreachable!("leading coefficient is nonzero"),
        })
        .collect();
    let mut short = false;
    for &k in degrees {
        for idx in subsets(pts.len(), k) {
            let mut prod = vec![Cx::one(bits)];
            let mut mag = 1.0f64;
            let mut err = 0.0f64;
            for &i in &idx {
                let z = pts[i];
                let mut next = vec![Cx::zero(bits); prod.len() + 1];
                for (j, c) in prod.iter().enumerate() {
                    next[j + 1] = &next[j + 1] + c;
                    next[j] = &next[j] - &c.mul(z);
                }
                prod = next;
                let ri = rs.errors[i].to_f64().max(1e-300);
                let (re, im) = z.to_f64();
                mag *= 1.0 + re.hypot(im) + ri;
                err += ri;
            }
            // coefficient error of a0·∏(x − z) from root radii and rounding
            let bound = 2.0 * a0f * mag * (err + k as f64 * 2f64.powi(8 - bits as i32).max(1e-300));
            // NaN counts as too large
            #[allow(clippy::neg_cmp_op_on_partial_ord)]
            if !(bound < 0.125) {
                short = true;
                continue;
            }
            let mut cand = Vec::with_capacity(prod.len());
            let mut near = true;
            for c in &prod {
                let v = c.scale_int(&a0);
                let n = v.re.round();
                let quarter = Fixed::pow2_neg(2, bits);
                if (&v.re - &Fixed::from_int(&n, bits)).abs() > quarter || v.im.abs() > quarter {
                    near = false;
                    break;
                }
                cand.push(n);
            }
            if !near {
                continue;
            }
            let g = QPoly::from_ints(&cand);
            if g.degree() == Some(k) && target.rem(&g).is_zero() {
                return Ok(Search::Found);
            }
        }
    }
    Ok(if short { Search::NeedPrecision } else { Search::None })
}

/// Whether `F` is irreducible over ℚ. Linear forms are irreducible; forms with
/// a repeated factor or divisible by `Y` are not (for degree ≥ 2).
pub fn is_irreducible(f: &BinaryForm) -> Result<bool> {
    let r = f.degree();
    if r == 0 {
        return Ok(false);
    }
    if r == 1 {
        return Ok(true);
    }
    if f.leading().is_zero() || discriminant(f).is_zero() {
        return Ok(false);
    }
    let p = dehomogenize(f);
    let limit = BigInt::from(RATIONAL_ROOT_LIMIT);
    let small = p[0].abs() < limit && p[r].abs() < limit;
    if p[0].is_zero() || (small && has_rational_root(&p)) {
        return Ok(false);
    }
    let mut degrees = possible_factor_degrees(&p);
    if small {
        degrees.retain(|&k| k > 1);
    }
    if degrees.is_empty() {
        return Ok(true);
    }
    for bits in PRECISION_LADDER {
        match subset_factor(&p, &degrees, bits)? {
            Search::Found => return Ok(false),
            Search::None => return Ok(true),
            Search::NeedPrecision => {}
        }
    }
    Err(Error::PrecisionExhausted {
        bits: *PRECISION_LADDER.last().expect("nonempty ladder"),
    })
}
