//! Cross ratios of projective roots and the cross-ratio profile of a form.

use num_bigint::BigInt;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::fixed::{Cx, Fixed};
use crate::form::BinaryForm;
use crate::par::{self, Exec};
use crate::roots::{roots, ProjectivePoint, RootSet};

/// Default number of decimal digits kept when hashing a profile.
pub const DEFAULT_HASH_DIGITS: u32 = 12;

/// `[p, q] = x_p·y_q − x_q·y_p` on homogeneous coordinates.
///
/// With `∞ = (1, 0)` this gives `[z, ∞] = −1` and `[∞, z] = 1`, which are the
/// limiting forms of `z − w` after cancelling the unbounded factor.
fn bracket(p: &ProjectivePoint, q: &ProjectivePoint, bits: u32) -> Cx {
    match (p, q) {
        (ProjectivePoint::Finite(a), ProjectivePoint::Finite(b)) => a - b,
        (ProjectivePoint::Finite(_), ProjectivePoint::Infinity) => -&Cx::one(bits),
        (ProjectivePoint::Infinity, ProjectivePoint::Finite(_)) => Cx::one(bits),
        (ProjectivePoint::Infinity, ProjectivePoint::Infinity) => Cx::zero(bits),
    }
}

fn point_bits(pts: &[&ProjectivePoint]) -> Option<u32> {
    pts.iter().find_map(|p| match p {
        ProjectivePoint::Finite(z) => Some(z.bits()),
        ProjectivePoint::Infinity => None,
    })
}

/// `{α₁,α₂;α₃,α₄} = (α₁−α₂)(α₃−α₄) / ((α₁−α₃)(α₂−α₄))`.
pub fn cross_ratio(
    p1: &ProjectivePoint,
    p2: &ProjectivePoint,
    p3: &ProjectivePoint,
    p4: &ProjectivePoint,
) -> Result<Cx> {
    let bits = point_bits(&[p1, p2, p3, p4]).ok_or(Error::Degenerate)?;
    let n1 = bracket(p1, p2, bits);
    let n2 = bracket(p3, p4, bits);
    let d1 = bracket(p1, p3, bits);
    let d2 = bracket(p2, p4, bits);
    // all six pairs must be distinct
    let others = [bracket(p1, p4, bits), bracket(p2, p3, bits)];
    if [&n1, &n2, &d1, &d2].iter().any(|b| b.is_zero()) || others.iter().any(Cx::is_zero) {
        return Err(Error::Degenerate);
    }
    n1.mul(&n2).div(&d1.mul(&d2)).ok_or(Error::Degenerate)
}

/// Error radius of `[p, q]` given the certified radii of the two points.
fn bracket_error(i: usize, j: usize, rs: &RootSet) -> Fixed {
    let zero = Fixed::zero(rs.precision_bits);
    let e = |k: usize| {
        if rs.points[k].is_infinite() {
            zero.clone()
        } else {
            rs.errors[k].clone()
        }
    };
    match (rs.points[i].is_infinite(), rs.points[j].is_infinite()) {
        (false, false) => &e(i) + &e(j),
        _ => zero,
    }
}

#[derive(Clone, Debug)]
pub struct ProfileEntry {
    pub tuple: [usize; 4],
    pub value: Cx,
    /// Upper bound on the distance from `value` to the true cross ratio.
    pub error: Fixed,
}

/// All cross ratios over ordered 4-tuples of distinct roots.
#[derive(Clone, Debug)]
pub struct CrossRatioProfile {
    pub degree: usize,
    pub precision_bits: u32,
    /// In lexicographic order of the index tuple.
    pub entries: Vec<ProfileEntry>,
    pub hash_digits: u32,
    pub hash: String,
}

#[derive(Serialize)]
struct ProfileJson {
    values: Vec<[f64; 2]>,
    hash: String,
    hash_digits: u32,
}

impl CrossRatioProfile {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, t: [usize; 4]) -> Option<&ProfileEntry> {
        self.entries
            .binary_search_by(|e| e.tuple.cmp(&t))
            .ok()
            .map(|i| &self.entries[i])
    }

    /// Values rounded to `digits` decimals, sorted as a multiset.
    pub fn quantized(&self, digits: u32) -> Vec<(BigInt, BigInt)> {
        let mut q: Vec<_> = self
            .entries
            .iter()
            .map(|e| (e.value.re.quantize(digits), e.value.im.quantize(digits)))
            .collect();
        q.sort();
        q
    }

    pub fn to_json(&self) -> serde_json::Value {
        let j = ProfileJson {
            values: self
                .entries
                .iter()
                .map(|e| {
                    let (re, im) = e.value.to_f64();
                    [re, im]
                })
                .collect(),
            hash: self.hash.clone(),
            hash_digits: self.hash_digits,
        };
        serde_json::to_value(j).expect("plain data")
    }
}

/// Whether two profiles certainly differ as multisets: some value of one has
/// no value of the other within their combined error radii.
pub fn profiles_separated(p: &CrossRatioProfile, q: &CrossRatioProfile) -> bool {
    if p.len() != q.len() {
        return true;
    }
    if p.hash == q.hash && p.hash_digits == q.hash_digits {
        return false;
    }
    let lonely = |a: &CrossRatioProfile, b: &CrossRatioProfile| {
        a.entries.iter().any(|x| {
            !b.entries.iter().any(|y| {
                let bits = x.value.bits();
                let d = (&x.value - &y.value.with_bits(bits)).abs_lower();
                d <= &(&x.error + &y.error.with_bits(bits)) + &Fixed::ulp(bits)
            })
        })
    };
    lonely(p, q) || lonely(q, p)
}

fn entry_for(rs: &RootSet, t: [usize; 4]) -> Result<ProfileEntry> {
    let bits = rs.precision_bits;
    let [i, j, k, l] = t;
    let p = &rs.points;
    let value = cross_ratio(&p[i], &p[j], &p[k], &p[l])?;
    // |Π(1+e_num)/Π(1−e_den) − 1|·|value| with relative bracket errors e
    let rel = |a: usize, b: usize| -> Result<Fixed> {
        let err = bracket_error(a, b, rs);
        let mag = bracket(&p[a], &p[b], bits).abs_lower();
        err.div(&mag).ok_or(Error::Degenerate)
    };
    let one = Fixed::from_int(&BigInt::from(1), bits);
    let (e1, e2, e3, e4) = (rel(i, j)?, rel(k, l)?, rel(i, k)?, rel(j, l)?);
    let num = (&one + &e1).mul(&(&one + &e2));
    let den = (&one - &e3).mul(&(&one - &e4));
    let factor = match num.div(&den) {
        Some(q) if den > Fixed::zero(bits) => &q - &one,
        _ => return Err(Error::PrecisionExhausted { bits }),
    };
    // truncation in the final products and quotient: a few ulps per unit of magnitude
    let mag = value.abs_upper();
    let ulps = ((mag.mant() >> bits) + 1u32) * 16u32;
    let error = &factor.mul(&mag) + &Fixed::from_mant(ulps, bits);
    Ok(ProfileEntry { tuple: t, value, error })
}

pub fn profile_from_roots(rs: &RootSet, digits: u32, exec: Exec) -> Result<CrossRatioProfile> {
    let r = rs.len();
    let mut tuples = Vec::new();
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                for l in 0..r {
                    if i != j && i != k && i != l && j != k && j != l && k != l {
                        tuples.push([i, j, k, l]);
                    }
                }
            }
        }
    }
    let entries = par::map(exec, &tuples, |&t| entry_for(rs, t))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let mut prof = CrossRatioProfile {
        degree: r,
        precision_bits: rs.precision_bits,
        entries,
        hash_digits: digits,
        hash: String::new(),
    };
    let mut h = Sha256::new();
    for (re, im) in prof.quantized(digits) {
        h.update(format!("{re},{im};").as_bytes());
    }
    prof.hash = h
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect();
    Ok(prof)
}

/// Cross-ratio profile of a squarefree form of degree at least 4.
pub fn cross_ratio_profile(f: &BinaryForm, bits: u32) -> Result<CrossRatioProfile> {
    cross_ratio_profile_with(f, bits, DEFAULT_HASH_DIGITS, Exec::default())
}

pub fn cross_ratio_profile_with(
    f: &BinaryForm,
    bits: u32,
    digits: u32,
    exec: Exec,
) -> Result<CrossRatioProfile> {
    if f.degree() < 4 {
        return Err(Error::DegreeTooSmall { min: 4, got: f.degree() });
    }
    let rs = roots(f, bits)?;
    profile_from_roots(&rs, digits, exec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::IntMatrix2;

    const B: u32 = 160;

    fn pt(re: f64, im: f64) -> ProjectivePoint {
        ProjectivePoint::Finite(Cx::from_f64(re, im, B))
    }

    fn close(z: &Cx, re: f64, im: f64) -> bool {
        let (a, b) = z.to_f64();
        (a - re).abs() < 1e-30 && (b - im).abs() < 1e-30
    }

    #[test]
    fn infinity_limit() {
        // large finite surrogate for ∞ approaches the limit value 1 − 2 = −1
        let far = cross_ratio(&pt(0.0, 0.0), &pt(1e12, 0.0), &pt(1.0, 0.0), &pt(2.0, 0.0)).unwrap();
        assert!((far.to_f64().0 + 1.0).abs() < 1e-10);
        let exact = cross_ratio(&pt(0.0, 0.0), &ProjectivePoint::Infinity, &pt(1.0, 0.0), &pt(2.0, 0.0))
            .unwrap();
        assert!(close(&exact, -1.0, 0.0));
    }

    #[test]
    fn square_configuration_gives_two() {
        for t in [1.0, 0.5, 3.0, -2.0] {
            let v = cross_ratio(&pt(t, 0.0), &pt(-t, 0.0), &pt(0.0, t), &pt(0.0, -t)).unwrap();
            assert!(close(&v, 2.0, 0.0), "t = {t}");
        }
    }

    #[test]
    fn inversion_invariance() {
        let zs = [(0.5, 0.25), (-1.0, 2.0), (3.0, -1.0), (0.1, 0.7)];
        let pts: Vec<_> = zs.iter().map(|&(a, b)| pt(a, b)).collect();
        let inv: Vec<_> = pts
            .iter()
            .map(|p| match p {
                ProjectivePoint::Finite(z) => {
                    ProjectivePoint::Finite(Cx::one(B).div(z).unwrap())
                }
                ProjectivePoint::Infinity => unreachable!(),
            })
            .collect();
        let a = cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3]).unwrap();
        let b = cross_ratio(&inv[0], &inv[1], &inv[2], &inv[3]).unwrap();
        let d = (&a - &b).to_f64();
        assert!(d.0.abs() < 1e-35 && d.1.abs() < 1e-35, "{d:?} {:?} {:?}", a.to_f64(), b.to_f64());
    }

    #[test]
    fn degenerate_points() {
        let p = pt(1.0, 0.0);
        assert_eq!(
            cross_ratio(&p, &p, &pt(2.0, 0.0), &pt(3.0, 0.0)),
            Err(Error::Degenerate)
        );
        assert_eq!(
            cross_ratio(&p, &ProjectivePoint::Infinity, &pt(2.0, 0.0), &ProjectivePoint::Infinity),
            Err(Error::Degenerate)
        );
    }

    #[test]
    fn profile_of_quartic() {
        let f = BinaryForm::from_i64(&[1, 0, 0, 0, -2]).unwrap();
        let prof = cross_ratio_profile(&f, 256).unwrap();
        assert_eq!(prof.len(), 24);
        assert!(prof.entries.iter().any(|e| {
            let (re, im) = e.value.to_f64();
            (re - 2.0).abs() < 1e-20 && im.abs() < 1e-20
        }));
        for e in &prof.entries {
            let [i, j, k, l] = e.tuple;
            let y = prof.entry([i, l, k, j]).unwrap();
            let s = &(&e.value + &y.value) - &Cx::one(256);
            let bound = &(&e.error + &y.error) + &(&e.error + &y.error);
            assert!(s.abs_upper() <= bound, "tuple {:?}", e.tuple);
        }
        let g = f.transform(&IntMatrix2::from_i64(1, 1, 0, 1)).unwrap();
        let prof_g = cross_ratio_profile(&g, 256).unwrap();
        assert_eq!(prof.hash, prof_g.hash);
    }

    #[test]
    fn profile_needs_degree_four() {
        let f = BinaryForm::from_i64(&[1, 0, 0, -2]).unwrap();
        assert!(matches!(
            cross_ratio_profile(&f, 256),
            Err(Error::DegreeTooSmall { .. })
        ));
    }
}
