//! A family of forms sharing one discriminant whose members separate by
//! residue class, and the check of that separation.
//!
//! `F_β = F(X, βX + aY)`, i.e. `F` transformed by `(1 0; β a)`. Since
//! `(1 0; β₁ a)⁻¹(1 0; β₂ a) = (1 0; (β₂−β₁)/a 1)`, the augmented forms of
//! `F_β₁` and `F_β₂` are equivalent only when `a | β₂ − β₁`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::equivalence::{
    classify, find_equivalence_with, Classification, EquivalenceOptions, EquivalenceVerdict, Status,
};
use crate::error::{Error, Result};
use crate::form::BinaryForm;
use crate::matrix::IntMatrix2;
use crate::resultant::discriminant;

pub fn family_matrix(a: i64, beta: i64) -> IntMatrix2 {
    IntMatrix2::from_i64(1, 0, beta, a)
}

pub fn residue_family(f: &BinaryForm, a: i64, betas: std::ops::Range<i64>) -> Result<Vec<BinaryForm>> {
    if discriminant(f).is_zero() {
        return Err(Error::NotSquarefree);
    }
    if a == 0 {
        return Err(Error::SingularMatrix);
    }
    betas.map(|b| f.transform(&family_matrix(a, b))).collect()
}

#[derive(Clone, Debug)]
pub struct PairVerdict {
    pub beta1: i64,
    pub beta2: i64,
    pub verdict: EquivalenceVerdict,
}

#[derive(Clone, Debug)]
pub struct FamilyReport {
    pub a: i64,
    pub betas: Vec<i64>,
    pub forms: Vec<BinaryForm>,
    /// `a^{r(r−1)}·D(F)`.
    pub expected_discriminant: BigInt,
    pub shared_discriminant: bool,
    pub pairs: Vec<PairVerdict>,
    pub classes: Classification,
    /// Pairs with `β₁ ≢ β₂ (mod a)` found equivalent as plain forms.
    pub collapsed_pairs: Vec<(i64, i64)>,
    /// `⌈N(a)/r⌉` with `N(a) = |a|`.
    pub class_floor: usize,
}

impl FamilyReport {
    pub fn to_json(&self) -> Value {
        json!({
            "a": self.a,
            "betas": self.betas,
            "forms": self.forms.iter().map(BinaryForm::encode).collect::<Vec<_>>(),
            "discriminant": self.expected_discriminant.to_string(),
            "shared_discriminant": self.shared_discriminant,
            "class_count": self.classes.class_count(),
            "class_floor": self.class_floor,
            "classes": self.classes.classes.iter()
                .map(|c| c.iter().map(|&i| self.betas[i]).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "collapsed_pairs": self.collapsed_pairs,
            "pairs": self.pairs.iter().map(|p| {
                let mut v = p.verdict.to_json();
                v["beta1"] = json!(p.beta1);
                v["beta2"] = json!(p.beta2);
                v
            }).collect::<Vec<_>>(),
        })
    }
}

pub fn family_inequivalence_check(
    f: &BinaryForm,
    a: i64,
    betas: std::ops::Range<i64>,
    opts: &EquivalenceOptions,
) -> Result<FamilyReport> {
    let bs: Vec<i64> = betas.clone().collect();
    let forms = residue_family(f, a, betas)?;
    let r = f.degree() as u32;
    let expected = BigInt::from(a).pow(r * (r - 1)) * discriminant(f);
    let shared = forms.iter().all(|g| discriminant(g) == expected);
    let mut pairs = Vec::new();
    let mut collapsed = Vec::new();
    for i in 0..forms.len() {
        for j in i + 1..forms.len() {
            let v = find_equivalence_with(&forms[i], &forms[j], opts)?;
            if v.status == Status::Unknown {
                return Err(Error::UnknownPair(forms[i].encode(), forms[j].encode()));
            }
            if v.is_equivalent() && (bs[j] - bs[i]) % a != 0 {
                collapsed.push((bs[i], bs[j]));
            }
            pairs.push(PairVerdict {
                beta1: bs[i],
                beta2: bs[j],
                verdict: v,
            });
        }
    }
    let classes = classify(&forms, opts)?;
    let n = a.unsigned_abs() as usize;
    let rr = r as usize;
    Ok(FamilyReport {
        a,
        betas: bs,
        forms,
        expected_discriminant: expected,
        shared_discriminant: shared,
        pairs,
        classes,
        collapsed_pairs: collapsed,
        class_floor: n.div_ceil(rr),
    })
}
