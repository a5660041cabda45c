//! Resultants and discriminants of binary forms.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::form::BinaryForm;
use crate::linalg::det_bareiss;
use crate::matrix::IntMatrix2;

/// Sylvester determinant of two coefficient vectors of declared degrees
/// `f.len()-1` and `g.len()-1`. Vanishing leading coefficients are kept, so
/// this is the resultant of the homogeneous forms.
pub(crate) fn sylvester(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let r = f.len() - 1;
    let s = g.len() - 1;
    let n = r + s;
    if n == 0 {
        return BigInt::one();
    }
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for i in 0..s {
        for (j, c) in f.iter().enumerate() {
            m[i][i + j] = c.clone();
        }
    }
    for i in 0..r {
        for (j, c) in g.iter().enumerate() {
            m[s + i][i + j] = c.clone();
        }
    }
    det_bareiss(&m)
}

/// `R(F, G)`, equal to `a^s b^r ∏(αᵢ − βⱼ)` over the roots.
pub fn resultant(f: &BinaryForm, g: &BinaryForm) -> BigInt {
    sylvester(f.coeffs(), g.coeffs())
}

/// `D(F)`, normalized so that `D(F) = disc(F(X,1))` for monic `F`.
///
/// Linear forms have discriminant 1; constants are given discriminant 1 too.
pub fn discriminant(f: &BinaryForm) -> BigInt {
    let r = f.degree();
    if r <= 1 {
        return BigInt::one();
    }
    if f.leading().is_zero() {
        // F(X, kX + Y) has determinant 1 and leading coefficient F(1, k).
        let k = (1i64..)
            .find(|&k| !f.eval(&BigInt::one(), &BigInt::from(k)).is_zero())
            .unwrap();
        let shifted = f
            .transform(&IntMatrix2::from_i64(1, 0, k, 1))
            .expect("unimodular");
        return discriminant(&shifted);
    }
    let a = f.coeffs();
    let deriv: Vec<BigInt> = a[..r]
        .iter()
        .enumerate()
        .map(|(i, c)| c * BigInt::from(r - i))
        .collect();
    let res = sylvester(a, &deriv);
    let d = res / &a[0];
    if (r * (r - 1) / 2) % 2 == 1 {
        -d
    } else {
        d
    }
}

/// Both sides of `D(∏Fᵢ) = ∏D(Fᵢ) · ∏_{i<j} R(Fᵢ,Fⱼ)²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscriminantProduct {
    #[serde(with = "crate::serde_big")]
    pub product_discriminant: BigInt,
    #[serde(with = "crate::serde_big")]
    pub discriminant_product: BigInt,
    #[serde(with = "crate::serde_big")]
    pub resultant_square_product: BigInt,
}

impl DiscriminantProduct {
    pub fn holds(&self) -> bool {
        self.product_discriminant == &self.discriminant_product * &self.resultant_square_product
    }
}

pub fn discriminant_product(forms: &[BinaryForm]) -> DiscriminantProduct {
    assert!(!forms.is_empty(), "need at least one factor");
    let product = forms[1..]
        .iter()
        .fold(forms[0].clone(), |acc, g| acc.mul(g));
    let discs = forms
        .iter()
        .fold(BigInt::one(), |acc, g| acc * discriminant(g));
    let mut res = BigInt::one();
    for i in 0..forms.len() {
        for j in i + 1..forms.len() {
            let r = resultant(&forms[i], &forms[j]);
            res *= &r * &r;
        }
    }
    DiscriminantProduct {
        product_discriminant: discriminant(&product),
        discriminant_product: discs,
        resultant_square_product: res,
    }
}
