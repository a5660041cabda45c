//! Forms whose resultant with a fixed form is a unit of ℤ.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::form::BinaryForm;
use crate::par::{self, Exec};
use crate::resultant::{discriminant, resultant};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitCompanion {
    /// First nonzero coefficient positive; `−form` is the other class member.
    pub form: BinaryForm,
    pub resultant: BigInt,
}

impl UnitCompanion {
    pub fn to_json(&self) -> Value {
        json!({ "form": self.form.encode(), "resultant": self.resultant.to_string() })
    }
}

pub fn resultant_unit_search(f0: &BinaryForm, s: usize, height: u32) -> Result<Vec<UnitCompanion>> {
    resultant_unit_search_with(f0, s, height, Exec::default())
}

/// Degree-`s` forms in the height box with `R(F₀, F₁) = ±1`, one per sign class,
/// in lexicographic coefficient order.
pub fn resultant_unit_search_with(
    f0: &BinaryForm,
    s: usize,
    height: u32,
    exec: Exec,
) -> Result<Vec<UnitCompanion>> {
    if f0.degree() < 3 {
        return Err(Error::DegreeTooSmall { min: 3, got: f0.degree() });
    }
    if s == 0 {
        return Err(Error::DegreeTooSmall { min: 1, got: 0 });
    }
    if discriminant(f0).is_zero() {
        return Err(Error::NotSquarefree);
    }
    let side = 2 * height as usize + 1;
    let count = side.pow(s as u32 + 1);
    let h = height as i64;
    let found = par::map_range(exec, count, |mut idx| {
        let mut c = vec![0i64; s + 1];
        for slot in c.iter_mut().rev() {
            *slot = (idx % side) as i64 - h;
            idx /= side;
        }
        let first = c.iter().find(|&&x| x != 0)?;
        if *first < 0 {
            return None;
        }
        let g = BinaryForm::from_i64(&c).ok()?;
        let r = resultant(f0, &g);
        r.abs().is_one().then_some(UnitCompanion { form: g, resultant: r })
    });
    Ok(found.into_iter().flatten().collect())
}

/// `−F₀(−d, c)`, equal to `R(F₀, cX + dY)` for cubic `F₀`.
pub fn linear_resultant_identity(f0: &BinaryForm, c: &BigInt, d: &BigInt) -> BigInt {
    -f0.eval(&-d, c)
}
