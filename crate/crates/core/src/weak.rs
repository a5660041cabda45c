//! Reconstruction of the projective map relating the roots of two forms.
//!
//! Three distinct points determine a Möbius transformation. For a fixed triple
//! of roots of `F` and each ordered triple of roots of `G` we build the map,
//! check numerically that it carries every root of `F` onto a root of `G`, and
//! then recover an exact rational matrix `T` with `G = λ·F_{T⁻¹}`. Floating
//! results only propose candidates; exact expansion decides.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fixed::{Cx, Fixed};
use crate::form::{BinaryForm, RatForm};
use crate::matrix::RatMatrix2;
use crate::par::{self, Exec};
use crate::roots::{roots, RootSet};

pub const DEFAULT_DENOMINATOR_BOUND: u64 = 1_000_000;

/// Numeric 2×2 complex matrix `(a b; c d)`.
#[derive(Clone, Debug)]
pub(crate) struct CxMat(pub [Cx; 4]);

type Hom = (Cx, Cx);

fn det2(u: &Hom, v: &Hom) -> Cx {
    &u.0.mul(&v.1) - &v.0.mul(&u.1)
}

impl CxMat {
    fn apply(&self, v: &Hom) -> Hom {
        let [a, b, c, d] = &self.0;
        (&a.mul(&v.0) + &b.mul(&v.1), &c.mul(&v.0) + &d.mul(&v.1))
    }

    fn mul(&self, o: &CxMat) -> CxMat {
        let [a, b, c, d] = &self.0;
        let [p, q, r, s] = &o.0;
        CxMat([
            &a.mul(p) + &b.mul(r),
            &a.mul(q) + &b.mul(s),
            &c.mul(p) + &d.mul(r),
            &c.mul(q) + &d.mul(s),
        ])
    }

    pub(crate) fn adjugate(&self) -> CxMat {
        let [a, b, c, d] = &self.0;
        CxMat([d.clone(), -b, -c, a.clone()])
    }

    pub(crate) fn det(&self) -> Cx {
        let [a, b, c, d] = &self.0;
        &a.mul(d) - &b.mul(c)
    }

    /// Divide by the entry of largest modulus, which becomes exactly 1.
    pub(crate) fn normalized(&self) -> Option<CxMat> {
        let pivot = self
            .0
            .iter()
            .max_by(|x, y| x.norm_sq_mant().cmp(&y.norm_sq_mant()))?
            .clone();
        if pivot.is_zero() {
            return None;
        }
        let bits = pivot.bits();
        let mut out = Vec::with_capacity(4);
        for e in &self.0 {
            if *e == pivot {
                out.push(Cx::one(bits));
            } else {
                out.push(e.div(&pivot)?);
            }
        }
        Some(CxMat([out[0].clone(), out[1].clone(), out[2].clone(), out[3].clone()]))
    }
}

/// Matrix sending `(1,0) ↦ v1`, `(0,1) ↦ v2`, `(1,1) ↦ v3` projectively.
fn frame(v1: &Hom, v2: &Hom, v3: &Hom) -> Option<CxMat> {
    let d = det2(v1, v2);
    let k1 = det2(v3, v2).div(&d)?;
    let k2 = det2(v1, v3).div(&d)?;
    Some(CxMat([
        k1.mul(&v1.0),
        k2.mul(&v2.0),
        k1.mul(&v1.1),
        k2.mul(&v2.1),
    ]))
}

/// `|det(u, v)| ≤ 2^-k · |u|·|v|` (chordal closeness, ∞ included).
fn close(u: &Hom, v: &Hom, k: u32) -> bool {
    let b = u.0.bits();
    let d = det2(u, v).norm_sq_mant();
    let nu = u.0.norm_sq_mant() + u.1.norm_sq_mant();
    let nv = v.0.norm_sq_mant() + v.1.norm_sq_mant();
    (d << (2 * b + 2 * k)) <= nu * nv
}

/// Exponent `k` of the matching tolerance `2^-k` used at `bits` of precision.
pub(crate) fn tolerance_exponent(bits: u32) -> u32 {
    bits / 4
}

#[derive(Clone, Debug)]
pub(crate) enum MatchOutcome {
    /// The map does not carry the roots of `F` onto those of `G`.
    NoCorrespondence,
    /// The map, normalized so its largest entry is 1.
    Map(CxMat),
}

/// For each ordered triple of roots of `G`, the map sending roots 0, 1, 2 of
/// `F` onto it. Triples are in lexicographic order.
pub(crate) fn matching_candidates(
    rf: &RootSet,
    rg: &RootSet,
    exec: Exec,
) -> Vec<([usize; 3], MatchOutcome)> {
    let r = rg.len();
    let bits = rf.precision_bits;
    let k = tolerance_exponent(bits);
    let src: Vec<Hom> = rf.points.iter().map(|p| p.homogeneous(bits)).collect();
    let dst: Vec<Hom> = rg.points.iter().map(|p| p.homogeneous(bits)).collect();
    let mut triples = Vec::new();
    for i in 0..r {
        for j in 0..r {
            for l in 0..r {
                if i != j && i != l && j != l {
                    triples.push([i, j, l]);
                }
            }
        }
    }
    let out = par::map(exec, &triples, |&[i, j, l]| {
        let Some(ps) = frame(&src[0], &src[1], &src[2]) else {
            return MatchOutcome::NoCorrespondence;
        };
        let Some(pd) = frame(&dst[i], &dst[j], &dst[l]) else {
            return MatchOutcome::NoCorrespondence;
        };
        let m = pd.mul(&ps.adjugate());
        let mut used = vec![false; r];
        for s in &src {
            let img = m.apply(s);
            match (0..r).find(|&t| !used[t] && close(&img, &dst[t], k)) {
                Some(t) => used[t] = true,
                None => return MatchOutcome::NoCorrespondence,
            }
        }
        match m.normalized() {
            Some(n) => MatchOutcome::Map(n),
            None => MatchOutcome::NoCorrespondence,
        }
    });
    triples.into_iter().zip(out).collect()
}

/// Best rational approximation with denominator at most `bound`, accepted only
/// if it lies within `2^-k` of `x`.
pub fn rationalize(x: &Fixed, bound: &BigInt, k: u32) -> Option<BigRational> {
    let target = x.to_rational();
    let tol = BigRational::new(BigInt::one(), BigInt::one() << k);
    let mut rest = target.clone();
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut best = BigRational::zero();
    loop {
        let a = rest.floor().to_integer();
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        if &k2 > bound {
            break;
        }
        best = BigRational::new(h2.clone(), k2.clone());
        let frac = &rest - BigRational::from_integer(a);
        if frac.is_zero() {
            break;
        }
        rest = frac.recip();
        (h0, h1) = (h1, h2);
        (k0, k1) = (k1, k2);
    }
    ((&best - &target).abs() <= tol).then_some(best)
}

fn is_real(z: &Cx, k: u32) -> bool {
    z.im.abs() <= Fixed::pow2_neg(k, z.bits())
}

/// `G = λ·F_{T⁻¹}` where `T⁻¹` is the true inverse of `t`.
pub fn weak_scalar(f: &BinaryForm, g: &BinaryForm, t: &RatMatrix2) -> Option<BigRational> {
    if f.degree() != g.degree() {
        return None;
    }
    let h: RatForm = RatForm::from(f).transform_entries(&t.inverse_entries());
    let k = h.coeffs.iter().position(|c| !c.is_zero())?;
    let lambda = BigRational::from_integer(g.coeffs()[k].clone()) / &h.coeffs[k];
    let ok = g
        .coeffs()
        .iter()
        .zip(&h.coeffs)
        .all(|(gi, hi)| BigRational::from_integer(gi.clone()) == &lambda * hi);
    (ok && !lambda.is_zero()).then_some(lambda)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeakEquivalence {
    /// Normalized so that its first nonzero entry is 1.
    #[serde(serialize_with = "ser_display")]
    pub t: RatMatrix2,
    #[serde(serialize_with = "ser_display")]
    pub lambda: BigRational,
    /// Indices of the roots of `G` matched with roots 0, 1, 2 of `F`.
    pub matching: [usize; 3],
}

fn ser_display<T: std::fmt::Display, S: serde::Serializer>(
    x: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

#[derive(Clone, Debug)]
pub struct WeakOptions {
    pub precision_bits: u32,
    pub denominator_bound: BigInt,
    pub exec: Exec,
}

impl Default for WeakOptions {
    fn default() -> Self {
        WeakOptions {
            precision_bits: crate::roots::DEFAULT_PRECISION,
            denominator_bound: BigInt::from(DEFAULT_DENOMINATOR_BOUND),
            exec: Exec::default(),
        }
    }
}

pub fn check_pair(f: &BinaryForm, g: &BinaryForm) -> Result<()> {
    if f.degree() != g.degree() {
        return Err(Error::DegreeMismatch(f.degree(), g.degree()));
    }
    if f.degree() < 3 {
        return Err(Error::DegreeTooSmall { min: 3, got: f.degree() });
    }
    Ok(())
}

/// Find rational `T` and `λ` with `G = λ·F_{T⁻¹}`, i.e. `⟨T⟩` maps the roots of
/// `F` onto the roots of `G`.
///
/// `Ok(None)` means every root matching was refuted, up to the denominator
/// bound on the normalized entries of `T`.
pub fn weak_equivalence_transform(
    f: &BinaryForm,
    g: &BinaryForm,
    bits: u32,
) -> Result<Option<WeakEquivalence>> {
    weak_equivalence_with(
        f,
        g,
        &WeakOptions {
            precision_bits: bits,
            ..WeakOptions::default()
        },
    )
}

pub fn weak_equivalence_with(
    f: &BinaryForm,
    g: &BinaryForm,
    opts: &WeakOptions,
) -> Result<Option<WeakEquivalence>> {
    check_pair(f, g)?;
    let bits = opts.precision_bits;
    let k = tolerance_exponent(bits);
    // continued fractions identify p/q uniquely only if the tolerance is below 1/(2q²)
    if BigInt::one() << k <= &opts.denominator_bound * &opts.denominator_bound * 2 {
        return Err(Error::PrecisionExhausted { bits });
    }
    let rf = roots(f, bits)?;
    let rg = roots(g, bits)?;
    weak_from_roots(f, g, &rf, &rg, opts)
}

pub(crate) fn weak_from_roots(
    f: &BinaryForm,
    g: &BinaryForm,
    rf: &RootSet,
    rg: &RootSet,
    opts: &WeakOptions,
) -> Result<Option<WeakEquivalence>> {
    let k = tolerance_exponent(rf.precision_bits);
    for (matching, outcome) in matching_candidates(rf, rg, opts.exec) {
        let MatchOutcome::Map(n) = outcome else {
            continue;
        };
        if !n.0.iter().all(|z| is_real(z, k)) {
            continue;
        }
        let entries: Option<Vec<BigRational>> = n
            .0
            .iter()
            .map(|z| rationalize(&z.re, &opts.denominator_bound, k))
            .collect();
        let Some(e) = entries else {
            continue;
        };
        let Ok(t) = RatMatrix2::new([e[0].clone(), e[1].clone(), e[2].clone(), e[3].clone()])
        else {
            continue;
        };
        if let Some(lambda) = weak_scalar(f, g, &t) {
            return Ok(Some(WeakEquivalence { t, lambda, matching }));
        }
    }
    Ok(None)
}

/// Integer matrix proposed by a normalized numeric map `N ∝ U`, using
/// `det U = ±1` to fix the scale: `U ≈ N / sqrt|det N|`.
pub(crate) enum IntegerCandidate {
    Refuted,
    Inconclusive,
    Matrix([BigInt; 4]),
}

pub(crate) fn unimodular_candidate(n: &CxMat) -> IntegerCandidate {
    let bits = n.0[0].bits();
    let k = tolerance_exponent(bits);
    if !n.0.iter().all(|z| is_real(z, k)) {
        return IntegerCandidate::Refuted;
    }
    let det = n.det();
    if !is_real(&det, k) {
        return IntegerCandidate::Refuted;
    }
    let d = det.re.abs();
    if d <= Fixed::pow2_neg(k, bits) {
        return IntegerCandidate::Inconclusive;
    }
    // s = 1/sqrt|det|; need s·2^-k < 1/8 for rounding to be meaningful
    let inv = Fixed::from_int(&BigInt::one(), bits).div(&d).expect("nonzero");
    let s = Fixed::from_mant(
        num_integer::Roots::sqrt(&(inv.mant() << bits)),
        bits,
    );
    if s.mant() >> (bits + k - 3) > BigInt::zero() {
        return IntegerCandidate::Inconclusive;
    }
    let quarter = Fixed::pow2_neg(2, bits);
    let mut out = Vec::with_capacity(4);
    for z in &n.0 {
        let v = z.re.mul(&s);
        let half = BigInt::one() << (bits - 1);
        let rounded = (v.mant() + &half).div_floor(&(BigInt::one() << bits));
        let diff = &v - &Fixed::from_int(&rounded, bits);
        if diff.abs() > quarter {
            return IntegerCandidate::Refuted;
        }
        out.push(rounded);
    }
    IntegerCandidate::Matrix([out[0].clone(), out[1].clone(), out[2].clone(), out[3].clone()])
}
