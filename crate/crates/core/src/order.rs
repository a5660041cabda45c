//! The invariant order of an irreducible binary form.
//!
//! For `F = a₀Xʳ + … + a_rYʳ` with root `θ` of `F(x, 1)`, the order has ℤ-basis
//! `ω₁ = 1` and `ω_k = a₀θ^{k−1} + a₁θ^{k−2} + … + a_{k−2}θ` for `2 ≤ k ≤ r`.
//! Everything here is exact: basis vectors live in the power basis of
//! `ℚ(θ)`, and traces come from integer structure constants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::form::BinaryForm;
use crate::irreducible::is_irreducible;
use crate::linalg::{det_bareiss, hermite_normal_form, inverse_rat, vec_mat};
use crate::par::{self, Exec};
use crate::poly::{common_denominator, QPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderPresentation {
    pub degree: usize,
    /// Monic minimal polynomial of `θ`, ascending, length `degree + 1`.
    pub min_poly: Vec<BigRational>,
    /// Row `k` holds the power-basis coordinates of `ω_{k+1}`.
    pub basis: Vec<Vec<BigRational>>,
    /// `ω_i·ω_j = Σ_k structure[i][j][k]·ω_k`.
    pub structure: Vec<Vec<Vec<BigInt>>>,
}

fn ratio_string(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl OrderPresentation {
    /// Build the presentation of the ℤ-span of `basis` inside `ℚ[x]/(min_poly)`.
    ///
    /// Fails with `ClosureViolation` unless the span is closed under multiplication.
    pub fn from_basis(min_poly: Vec<BigRational>, basis: Vec<Vec<BigRational>>) -> Result<Self> {
        let r = min_poly.len() - 1;
        let m = QPoly::new(min_poly.clone());
        let inv = inverse_rat(&basis).ok_or(Error::SingularMatrix)?;
        let elems: Vec<QPoly> = basis.iter().map(|b| QPoly::new(b.clone())).collect();
        let mut structure = vec![vec![Vec::new(); r]; r];
        for i in 0..r {
            for j in i..r {
                let prod = elems[i].mul(&elems[j]).rem(&m);
                let coords: Vec<BigRational> = (0..r).map(|k| prod.coeff(k)).collect();
                let c = vec_mat(&coords, &inv);
                if let Some(bad) = c.iter().find(|x| !x.is_integer()) {
                    return Err(Error::ClosureViolation(format!(
                        "ω{}·ω{} has coordinate {}",
                        i + 1,
                        j + 1,
                        ratio_string(bad)
                    )));
                }
                let ints: Vec<BigInt> = c.into_iter().map(|x| x.to_integer()).collect();
                structure[j][i] = ints.clone();
                structure[i][j] = ints;
            }
        }
        Ok(OrderPresentation {
            degree: r,
            min_poly,
            basis,
            structure,
        })
    }

    /// Trace of `ω_k`, the trace of its multiplication matrix.
    pub fn trace(&self, k: usize) -> BigInt {
        (0..self.degree).map(|j| &self.structure[k][j][j]).sum()
    }

    /// Multiplication matrix of `Σ xᵢωᵢ` acting on coordinates.
    pub fn multiplication_matrix(&self, x: &[BigInt]) -> Vec<Vec<BigInt>> {
        let r = self.degree;
        (0..r)
            .map(|j| {
                (0..r)
                    .map(|k| (0..r).map(|i| &x[i] * &self.structure[i][j][k]).sum())
                    .collect()
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let rats = |v: &[BigRational]| v.iter().map(ratio_string).collect::<Vec<_>>();
        json!({
            "degree": self.degree,
            "min_poly": rats(&self.min_poly),
            "basis": self.basis.iter().map(|b| rats(b)).collect::<Vec<_>>(),
            "structure_constants": self.structure.iter().map(|plane| {
                plane.iter().map(|row| row.iter().map(ToString::to_string).collect::<Vec<_>>())
                    .collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        })
    }

    /// The same ring elements written in a field generated by another root.
    ///
    /// `theta_image` expresses this order's `θ` as a polynomial in the target
    /// generator; it must be a root of this order's minimal polynomial.
    pub fn reexpress_in(
        &self,
        theta_image: &[BigRational],
        target_min_poly: &[BigRational],
    ) -> Result<OrderPresentation> {
        let target = QPoly::new(target_min_poly.to_vec());
        let phi = QPoly::new(theta_image.to_vec());
        if target.degree() != Some(self.degree)
            || !QPoly::new(self.min_poly.clone())
                .compose_mod(&phi, &target)
                .is_zero()
        {
            return Err(Error::FieldMismatch);
        }
        let basis = self
            .basis
            .iter()
            .map(|b| {
                let e = QPoly::new(b.clone()).compose_mod(&phi, &target);
                (0..self.degree).map(|k| e.coeff(k)).collect()
            })
            .collect();
        Ok(OrderPresentation {
            degree: self.degree,
            min_poly: target_min_poly.to_vec(),
            basis,
            structure: self.structure.clone(),
        })
    }
}

/// Monic `F(x, 1)/a₀`, ascending.
pub fn min_poly_of(f: &BinaryForm) -> Vec<BigRational> {
    let a0 = f.leading().clone();
    f.coeffs()
        .iter()
        .rev()
        .map(|c| BigRational::new(c.clone(), a0.clone()))
        .collect()
}

pub fn invariant_order(f: &BinaryForm) -> Result<OrderPresentation> {
    let r = f.degree();
    if r < 2 {
        return Err(Error::DegreeTooSmall { min: 2, got: r });
    }
    if !is_irreducible(f)? {
        return Err(Error::Reducible);
    }
    let a = f.coeffs();
    let mut basis = vec![vec![BigRational::zero(); r]; r];
    basis[0][0] = BigRational::one();
    for (k, row) in basis.iter_mut().enumerate().skip(1) {
        for (i, ai) in a.iter().enumerate().take(k) {
            row[k - i] = BigRational::from_integer(ai.clone());
        }
    }
    OrderPresentation::from_basis(min_poly_of(f), basis)
}

/// `det(Tr(ωᵢωⱼ))`.
pub fn order_discriminant(o: &OrderPresentation) -> BigInt {
    let r = o.degree;
    let traces: Vec<BigInt> = (0..r).map(|k| o.trace(k)).collect();
    let gram: Vec<Vec<BigInt>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    o.structure[i][j]
                        .iter()
                        .zip(&traces)
                        .map(|(c, t)| c * t)
                        .sum()
                })
                .collect()
        })
        .collect();
    det_bareiss(&gram)
}

fn scaled_hnf(basis: &[Vec<BigRational>], den: &BigInt) -> Vec<Vec<BigInt>> {
    let rows: Vec<Vec<BigInt>> = basis
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| (x * BigRational::from_integer(den.clone())).to_integer())
                .collect()
        })
        .collect();
    hermite_normal_form(&rows)
}

/// Equality of the ℤ-lattices spanned by the two bases inside one field.
pub fn order_equal(o1: &OrderPresentation, o2: &OrderPresentation) -> Result<bool> {
    if o1.min_poly != o2.min_poly {
        return Err(Error::FieldMismatch);
    }
    let den = common_denominator(o1.basis.iter().chain(&o2.basis).flatten());
    Ok(scaled_hnf(&o1.basis, &den) == scaled_hnf(&o2.basis, &den))
}

/// `(m₀θ + m₁)/(m₂θ + m₃)` as a polynomial in `θ` modulo the minimal polynomial.
pub fn mobius_image(m: &[BigRational; 4], min_poly: &[BigRational]) -> Result<Vec<BigRational>> {
    let mp = QPoly::new(min_poly.to_vec());
    let num = QPoly::linear(m[0].clone(), m[1].clone());
    let den = QPoly::linear(m[2].clone(), m[3].clone());
    let inv = den.inverse_mod(&mp).ok_or(Error::Degenerate)?;
    let img = num.mul(&inv).rem(&mp);
    let r = min_poly.len() - 1;
    Ok((0..r).map(|k| img.coeff(k)).collect())
}

/// Characteristic polynomial of a square integer matrix, ascending and monic,
/// by the Faddeev–LeVerrier recurrence (all divisions are exact).
pub fn charpoly(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = a.len();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1}·I
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                next[i][j] = (0..n).map(|l| &a[i][l] * &m[l][j]).sum();
            }
            next[i][i] += &c[n - k + 1];
        }
        m = next;
        let tr: BigInt = (0..n)
            .map(|i| (0..n).map(|l| &a[i][l] * &m[l][i]).sum::<BigInt>())
            .sum();
        c[n - k] = -(tr / BigInt::from(k));
    }
    c
}

/// Basis-independent invariant of the ring: for each modulus `m` in
/// `2..=2h+1`, the sorted multiset of characteristic polynomials modulo `m` of
/// multiplication by every element of `O/mO`. Isomorphic orders agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderFingerprint {
    pub degree: usize,
    pub layers: Vec<(u64, Vec<Vec<u64>>)>,
}

pub fn order_fingerprint(o: &OrderPresentation, height_bound: u32) -> OrderFingerprint {
    order_fingerprint_with(o, height_bound, Exec::default())
}

pub fn order_fingerprint_with(o: &OrderPresentation, height_bound: u32, exec: Exec) -> OrderFingerprint {
    let r = o.degree;
    let mut layers = Vec::new();
    for m in 2..=(2 * height_bound as u64 + 1) {
        let count = (m as usize).pow(r as u32);
        let mb = BigInt::from(m);
        let mut polys = par::map_range(exec, count, |mut idx| {
            let x: Vec<BigInt> = (0..r)
                .map(|_| {
                    let d = idx % m as usize;
                    idx /= m as usize;
                    BigInt::from(d)
                })
                .collect();
            charpoly(&o.multiplication_matrix(&x))
                .iter()
                .map(|c| c.mod_floor(&mb).to_u64().expect("reduced"))
                .collect::<Vec<u64>>()
        });
        polys.sort();
        layers.push((m, polys));
    }
    OrderFingerprint { degree: r, layers }
}
