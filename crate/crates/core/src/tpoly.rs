//! Polynomial families of forms in an auxiliary interpolation parameter.
//!
//! A [`TForm`] is a finite polynomial `sum_k t^k x_k` whose coefficients `x_k`
//! are algebra-valued forms of a common slot, dimension, variable count and
//! form degree.  The parameter `t` is the straight-line interpolation variable
//! of the transgression constructions; it is not a coordinate, so the exterior
//! derivative acts coefficientwise and the definite integral over `t in [0,1]`
//! is the exact rational rule `sum_k x_k / (k+1)`.
//!
//! [`TScalar`] is the scalar-form analogue produced by pairing two `TForm`s.

use crate::avform::{av_add, av_scale, av_d, pair_forms, AVForm, PairKind};
use crate::error::{Error, Result};
use crate::pairing::PairingData;
use crate::rat::{rat, Rat};
use crate::sform::ScalarForm;

/// Polynomial in the interpolation parameter with algebra-valued form
/// coefficients.  Never empty; `coeffs[k]` multiplies `t^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct TForm {
    coeffs: Vec<AVForm>,
}

impl TForm {
    /// A family that does not depend on the parameter.
    pub fn constant(x: AVForm) -> Self {
        TForm { coeffs: vec![x] }
    }

    /// The straight line `x0 + t (x1 - x0)` between two forms of equal shape.
    pub fn interp(x0: &AVForm, x1: &AVForm) -> Result<Self> {
        let slope = crate::avform::av_sub(x1, x0)?;
        Ok(TForm { coeffs: vec![x0.clone(), slope] })
    }

    pub fn from_coeffs(coeffs: Vec<AVForm>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("parameter polynomial needs at least one coefficient".into()));
        }
        // Validate shape compatibility by folding through addition.
        let mut acc = coeffs[0].clone();
        for c in &coeffs[1..] {
            acc = av_add(&acc, c)?;
        }
        Ok(TForm { coeffs })
    }

    pub fn coeffs(&self) -> &[AVForm] {
        &self.coeffs
    }

    /// Value of the family at a rational parameter value.
    pub fn eval(&self, t: &Rat) -> Result<AVForm> {
        let mut acc = self.coeffs.last().expect("nonempty").clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = av_add(&av_scale(&acc, t), c)?;
        }
        Ok(acc)
    }

    /// Coefficientwise exterior derivative (the parameter is not a coordinate).
    pub fn d(&self) -> TForm {
        TForm { coeffs: self.coeffs.iter().map(av_d).collect() }
    }

    pub fn add(&self, other: &TForm) -> Result<TForm> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            match (self.coeffs.get(k), other.coeffs.get(k)) {
                (Some(a), Some(b)) => coeffs.push(av_add(a, b)?),
                (Some(a), None) => coeffs.push(a.clone()),
                (None, Some(b)) => coeffs.push(b.clone()),
                (None, None) => unreachable!(),
            }
        }
        Ok(TForm { coeffs })
    }

    pub fn sub(&self, other: &TForm) -> Result<TForm> {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, s: &Rat) -> TForm {
        TForm { coeffs: self.coeffs.iter().map(|c| av_scale(c, s)).collect() }
    }

    /// Apply a linear form operation to every coefficient.
    pub fn map(&self, f: impl Fn(&AVForm) -> Result<AVForm>) -> Result<TForm> {
        let coeffs = self.coeffs.iter().map(&f).collect::<Result<Vec<_>>>()?;
        Ok(TForm { coeffs })
    }

    /// Exact integral over the parameter interval [0, 1]:
    /// `integral of t^k` contributes `1/(k+1)`.
    pub fn integrate01(&self) -> Result<AVForm> {
        let mut acc = av_scale(&self.coeffs[0], &Rat::new(1.into(), 1.into()));
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            let w = Rat::new(1.into(), (k as i64 + 1).into());
            acc = av_add(&acc, &av_scale(c, &w))?;
        }
        Ok(acc)
    }
}

/// Cauchy-product combination of two families under a bilinear form operation:
/// the `t^k` coefficient of the result is `sum_{i+j=k} op(a_i, b_j)`.
pub fn t_combine(
    a: &TForm,
    b: &TForm,
    op: impl Fn(&AVForm, &AVForm) -> Result<AVForm>,
) -> Result<TForm> {
    let n = a.coeffs.len() + b.coeffs.len() - 1;
    let mut coeffs: Vec<Option<AVForm>> = vec![None; n];
    for (i, ai) in a.coeffs.iter().enumerate() {
        for (j, bj) in b.coeffs.iter().enumerate() {
            let term = op(ai, bj)?;
            coeffs[i + j] = Some(match coeffs[i + j].take() {
                Some(prev) => av_add(&prev, &term)?,
                None => term,
            });
        }
    }
    Ok(TForm { coeffs: coeffs.into_iter().map(|c| c.expect("dense convolution")).collect() })
}

/// Pair two families slotwise into a scalar family.
pub fn t_pair(kind: PairKind, pairing: &PairingData, a: &TForm, b: &TForm) -> Result<TScalar> {
    let n = a.coeffs.len() + b.coeffs.len() - 1;
    let mut coeffs: Vec<Option<ScalarForm>> = vec![None; n];
    for (i, ai) in a.coeffs.iter().enumerate() {
        for (j, bj) in b.coeffs.iter().enumerate() {
            let term = pair_forms(kind, pairing, ai, bj)?;
            coeffs[i + j] = Some(match coeffs[i + j].take() {
                Some(prev) => prev.add(&term)?,
                None => term,
            });
        }
    }
    Ok(TScalar { coeffs: coeffs.into_iter().map(|c| c.expect("dense convolution")).collect() })
}

/// Polynomial in the interpolation parameter with scalar-form coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct TScalar {
    coeffs: Vec<ScalarForm>,
}

impl TScalar {
    pub fn from_coeffs(coeffs: Vec<ScalarForm>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("parameter polynomial needs at least one coefficient".into()));
        }
        Ok(TScalar { coeffs })
    }

    pub fn coeffs(&self) -> &[ScalarForm] {
        &self.coeffs
    }

    pub fn add(&self, other: &TScalar) -> Result<TScalar> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            match (self.coeffs.get(k), other.coeffs.get(k)) {
                (Some(a), Some(b)) => coeffs.push(a.add(b)?),
                (Some(a), None) => coeffs.push(a.clone()),
                (None, Some(b)) => coeffs.push(b.clone()),
                (None, None) => unreachable!(),
            }
        }
        Ok(TScalar { coeffs })
    }

    pub fn scale(&self, s: &Rat) -> TScalar {
        TScalar { coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect() }
    }

    pub fn eval(&self, t: &Rat) -> Result<ScalarForm> {
        let mut acc = self.coeffs.last().expect("nonempty").clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc.scale(t).add(c)?;
        }
        Ok(acc)
    }

    /// Exact integral over the parameter interval [0, 1].
    pub fn integrate01(&self) -> Result<ScalarForm> {
        let mut acc = self.coeffs[0].clone();
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            let w = Rat::new(1.into(), (k as i64 + 1).into());
            acc = acc.add(&c.scale(&w))?;
        }
        Ok(acc)
    }
}
