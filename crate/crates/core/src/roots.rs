//! Projective roots of binary forms with certified error radii.
//!
//! Finite roots are found by Aberth–Ehrlich iteration on `F(X,1)` and then
//! certified with the Weierstrass inclusion disks `D(zᵢ, n·|Wᵢ|)`, where
//! `Wᵢ = f(zᵢ) / (a₀ ∏_{j≠i}(zᵢ − zⱼ))`. When these disks are pairwise
//! disjoint each contains exactly one root. `f(zᵢ)` and the separations are
//! evaluated exactly on the fixed-point mantissas, so the radii are rigorous.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fixed::{Cx, Fixed};
use crate::form::BinaryForm;
use crate::resultant::discriminant;

pub const DEFAULT_PRECISION: u32 = 256;
/// Escalation ladder used when a computation runs out of precision.
pub const PRECISION_LADDER: [u32; 3] = [256, 1024, 4096];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProjectivePoint {
    Finite(Cx),
    Infinity,
}

impl ProjectivePoint {
    /// Homogeneous coordinates: `(z, 1)` or `(1, 0)`.
    pub fn homogeneous(&self, bits: u32) -> (Cx, Cx) {
        match self {
            ProjectivePoint::Finite(z) => (z.clone(), Cx::one(bits)),
            ProjectivePoint::Infinity => (Cx::one(bits), Cx::zero(bits)),
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ProjectivePoint::Infinity)
    }
}

/// All projective roots of a squarefree form.
#[derive(Clone, Debug)]
pub struct RootSet {
    pub points: Vec<ProjectivePoint>,
    pub precision_bits: u32,
    /// Certified radius around each point (zero for the exact point at ∞).
    pub errors: Vec<Fixed>,
    /// Leading coefficient of the finite part `F(X,1)` after removing `Y`.
    pub leading: BigInt,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn max_error(&self) -> Fixed {
        self.errors
            .iter()
            .max()
            .cloned()
            .unwrap_or_else(|| Fixed::zero(self.precision_bits))
    }
}

/// Roots of a squarefree form at `bits` of fixed-point precision.
pub fn roots(f: &BinaryForm, bits: u32) -> Result<RootSet> {
    if discriminant(f).is_zero() {
        return Err(Error::NotSquarefree);
    }
    let leading_zeros = f.coeffs().iter().take_while(|c| c.is_zero()).count();
    let finite = &f.coeffs()[leading_zeros..];
    let mut found: Vec<(Cx, Fixed)> = Vec::new();
    if finite.len() > 1 {
        let approx = aberth(finite, bits);
        let radii = certify(finite, &approx).ok_or(Error::PrecisionExhausted { bits })?;
        found = approx.into_iter().zip(radii).collect();
        found.sort_by(|(a, _), (b, _)| {
            a.re.mant()
                .cmp(b.re.mant())
                .then_with(|| a.im.mant().cmp(b.im.mant()))
        });
    }
    let (mut points, mut errors): (Vec<_>, Vec<_>) = found
        .into_iter()
        .map(|(z, r)| (ProjectivePoint::Finite(z), r))
        .unzip();
    // squarefree forms are divisible by Y at most once
    if leading_zeros == 1 {
        points.push(ProjectivePoint::Infinity);
        errors.push(Fixed::zero(bits));
    }
    Ok(RootSet {
        points,
        precision_bits: bits,
        errors,
        leading: finite[0].clone(),
    })
}

/// Retry [`roots`] along a precision ladder.
pub fn roots_escalating(f: &BinaryForm, ladder: &[u32]) -> Result<RootSet> {
    let mut last = Error::PrecisionExhausted { bits: 0 };
    for &bits in ladder {
        match roots(f, bits) {
            Err(e @ Error::PrecisionExhausted { .. }) => last = e,
            other => return other,
        }
    }
    Err(last)
}

fn horner(p: &[BigInt], z: &Cx) -> (Cx, Cx) {
    let b = z.bits();
    let mut v = Cx::from_int(&p[0], b);
    let mut d = Cx::zero(b);
    for c in &p[1..] {
        d = &d.mul(z) + &v;
        v = &v.mul(z) + &Cx::from_int(c, b);
    }
    (v, d)
}

fn initial_guesses(p: &[BigInt], bits: u32) -> Vec<Cx> {
    let n = p.len() - 1;
    let lead = p[0].to_f64().unwrap_or(f64::MAX).abs();
    // Fujiwara-style bound max |a_k/a_0|^(1/k)
    let mut radius: f64 = 0.0;
    for (k, c) in p.iter().enumerate().skip(1) {
        let c = c.to_f64().unwrap_or(f64::MAX).abs();
        if c > 0.0 {
            radius = radius.max((c / lead).powf(1.0 / k as f64));
        }
    }
    let radius = if radius.is_finite() && radius > 0.0 { radius } else { 1.0 };
    (0..n)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            Cx::from_f64(radius * t.cos(), radius * t.sin(), bits)
        })
        .collect()
}

/// One Jacobi sweep; returns the largest correction (1-norm).
fn aberth_step(p: &[BigInt], z: &mut [Cx]) -> Fixed {
    let b = z[0].bits();
    let one = Cx::one(b);
    let mut corrections = Vec::with_capacity(z.len());
    for i in 0..z.len() {
        let (v, d) = horner(p, &z[i]);
        let Some(ratio) = v.div(&d) else {
            corrections.push(Cx::zero(b));
            continue;
        };
        let mut s = Cx::zero(b);
        for j in 0..z.len() {
            if i != j {
                if let Some(inv) = one.div(&(&z[i] - &z[j])) {
                    s = &s + &inv;
                }
            }
        }
        let denom = &one - &ratio.mul(&s);
        corrections.push(ratio.div(&denom).unwrap_or(ratio));
    }
    let mut worst = Fixed::zero(b);
    for (zi, w) in z.iter_mut().zip(&corrections) {
        *zi = &*zi - w;
        worst = worst.max(w.norm1());
    }
    worst
}

fn aberth(p: &[BigInt], bits: u32) -> Vec<Cx> {
    let n = p.len() - 1;
    if n == 1 {
        let b = bits;
        let z = Cx::new(Fixed::from_ratio(&-&p[1], &p[0], b), Fixed::zero(b));
        return vec![z];
    }
    let coarse = bits.min(96);
    let mut z = initial_guesses(p, coarse);
    let tol = Fixed::pow2_neg(coarse - 16, coarse);
    for _ in 0..2000 {
        if aberth_step(p, &mut z) <= tol {
            break;
        }
    }
    if bits > coarse {
        let mut z2: Vec<Cx> = z.iter().map(|x| x.with_bits(bits)).collect();
        let tol = Fixed::pow2_neg(bits - 16, bits);
        for _ in 0..200 {
            if aberth_step(p, &mut z2) <= tol {
                break;
            }
        }
        z = z2;
    }
    // a final sweep tightens the last few bits
    aberth_step(p, &mut z);
    z
}

/// Certified inclusion radii, or `None` if the disks are not pairwise disjoint.
fn certify(p: &[BigInt], z: &[Cx]) -> Option<Vec<Fixed>> {
    let n = z.len();
    let b = z[0].bits();
    let lead = p[0].abs();
    // |z_i - z_j| lower bounds at scale 2^b
    let mut sep = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let d = (&z[i] - &z[j]).norm_sq_mant().sqrt();
            if d.is_zero() {
                return None;
            }
            sep[i][j] = d.clone();
            sep[j][i] = d;
        }
    }
    let mut radii = Vec::with_capacity(n);
    for i in 0..n {
        // exact f(z_i)·2^(b·n) on Gaussian integers
        let (mr, mi) = (z[i].re.mant(), z[i].im.mant());
        let mut ar = p[0].clone();
        let mut ai = BigInt::zero();
        for (k, c) in p.iter().enumerate().skip(1) {
            let nr = &ar * mr - &ai * mi + (c << (b as usize * k));
            let ni = &ar * mi + &ai * mr;
            ar = nr;
            ai = ni;
        }
        let sq = &ar * &ar + &ai * &ai;
        let mut val = sq.sqrt();
        if &val * &val != sq {
            val += 1;
        }
        let mut den = lead.clone();
        for j in 0..n {
            if j != i {
                den *= &sep[i][j];
            }
        }
        let num = val * BigInt::from(n);
        let r = (&num + &den - 1) / &den + 1;
        radii.push(Fixed::from_mant(r, b));
    }
    for i in 0..n {
        for j in i + 1..n {
            let need = (radii[i].mant() + radii[j].mant()) * 2;
            if sep[i][j] <= need {
                return None;
            }
        }
    }
    Some(radii)
}
