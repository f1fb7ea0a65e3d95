//! Generalized connection-type forms: module-valued forms graded by one or
//! two odd symbols of degree -1, with layer maps inserted when a derivative
//! lowers the symbol degree. The products keep only the normalized terms
//! (left factor in the base layer against every layer of the right factor,
//! plus one lifting term in the two-symbol case); the free-calculus terms
//! they drop are documented by the oracle comparison tests.

use num_traits::Zero;

use crate::algebra::{Bilinear, D2CModule, LieAlgebra};
use crate::avform::{
    av_add, av_alpha, av_beta, av_d, av_neg, av_random, av_scale, av_sub, av_wedge_action,
    av_wedge_bracket, av_wedge_lift, av_wedge_with, pair_forms, AVForm, PairKind, Slot,
};
use crate::error::{Error, Result};
use crate::pairing::PairingData;
use crate::rat::{rat, Rat};
use crate::rng::{Density, EngineRng};
use crate::sform::ScalarForm;
use crate::xi::XiExpr;

fn sign(n: i64) -> Rat {
    if n.rem_euclid(2) == 0 {
        rat(1)
    } else {
        rat(-1)
    }
}

/// Half the bracket of a layer as a standalone bilinear product, the
/// conventional base-layer product for the normalized wedges.
pub fn half_bracket(la: &LieAlgebra) -> Bilinear {
    let table = la
        .bracket
        .iter()
        .map(|row| row.iter().map(|v| v.iter().map(|c| c / rat(2)).collect()).collect())
        .collect();
    Bilinear::new(la.dim, la.dim, table)
}

/// Default derivative constant of a one-symbol form.
pub fn default_k() -> Rat {
    rat(-1)
}

/// Default derivative constants of a two-symbol form.
pub fn default_ks() -> (Rat, Rat) {
    (rat(0), rat(-1))
}

fn expect_part(part: &AVForm, slot: Slot, n_vars: usize, degree: i64) -> Result<()> {
    if part.slot != slot {
        return Err(Error::SlotMismatch { expected: slot.to_string(), found: part.slot.to_string() });
    }
    if part.n_vars != n_vars {
        return Err(Error::VarMismatch(n_vars, part.n_vars));
    }
    if !part.is_zero() && part.degree != degree {
        return Err(Error::DegreeMismatch(degree, part.degree));
    }
    Ok(())
}

/// A form of base degree p with a g-valued p-form body and an h-valued
/// (p+1)-form riding the single odd symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct GenForm1 {
    pub degree: i64,
    pub part0: AVForm,
    pub part1: AVForm,
    pub k: Rat,
}

impl GenForm1 {
    pub fn new(degree: i64, part0: AVForm, part1: AVForm, k: Rat) -> Result<Self> {
        expect_part(&part0, Slot::G, part0.n_vars, degree)?;
        expect_part(&part1, Slot::H, part0.n_vars, degree + 1)?;
        Ok(GenForm1 { degree, part0, part1, k })
    }

    pub fn zero(m: &D2CModule, n_vars: usize, degree: i64, k: Rat) -> Self {
        GenForm1 {
            degree,
            part0: AVForm::zero(Slot::G, m.g.dim, n_vars, degree),
            part1: AVForm::zero(Slot::H, m.h.dim, n_vars, degree + 1),
            k,
        }
    }

    pub fn n_vars(&self) -> usize {
        self.part0.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.part0.is_zero() && self.part1.is_zero()
    }
}

/// A form of base degree p over both odd symbols: a g-valued p-form body,
/// two h-valued (p+1)-forms on the single symbols, and an l-valued
/// (p+2)-form on their product.
#[derive(Debug, Clone, PartialEq)]
pub struct GenForm2 {
    pub degree: i64,
    pub part0: AVForm,
    pub part1: AVForm,
    pub part2: AVForm,
    pub part12: AVForm,
    pub k1: Rat,
    pub k2: Rat,
}

impl GenForm2 {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        degree: i64,
        part0: AVForm,
        part1: AVForm,
        part2: AVForm,
        part12: AVForm,
        k1: Rat,
        k2: Rat,
    ) -> Result<Self> {
        let n_vars = part0.n_vars;
        expect_part(&part0, Slot::G, n_vars, degree)?;
        expect_part(&part1, Slot::H, n_vars, degree + 1)?;
        expect_part(&part2, Slot::H, n_vars, degree + 1)?;
        expect_part(&part12, Slot::L, n_vars, degree + 2)?;
        Ok(GenForm2 { degree, part0, part1, part2, part12, k1, k2 })
    }

    pub fn zero(m: &D2CModule, n_vars: usize, degree: i64, k1: Rat, k2: Rat) -> Self {
        GenForm2 {
            degree,
            part0: AVForm::zero(Slot::G, m.g.dim, n_vars, degree),
            part1: AVForm::zero(Slot::H, m.h.dim, n_vars, degree + 1),
            part2: AVForm::zero(Slot::H, m.h.dim, n_vars, degree + 1),
            part12: AVForm::zero(Slot::L, m.l.dim, n_vars, degree + 2),
            k1,
            k2,
        }
    }

    pub fn n_vars(&self) -> usize {
        self.part0.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.part0.is_zero() && self.part1.is_zero() && self.part2.is_zero() && self.part12.is_zero()
    }
}

fn check_k1(a: &GenForm1, b: &GenForm1) -> Result<()> {
    if a.k != b.k {
        return Err(Error::ConstantMismatch);
    }
    Ok(())
}

fn check_k2(a: &GenForm2, b: &GenForm2) -> Result<()> {
    if a.k1 != b.k1 || a.k2 != b.k2 {
        return Err(Error::ConstantMismatch);
    }
    Ok(())
}

pub fn g1_add(a: &GenForm1, b: &GenForm1) -> Result<GenForm1> {
    check_k1(a, b)?;
    let degree = if a.is_zero() { b.degree } else { a.degree };
    GenForm1::new(degree, av_add(&a.part0, &b.part0)?, av_add(&a.part1, &b.part1)?, a.k.clone())
}

pub fn g1_neg(a: &GenForm1) -> GenForm1 {
    GenForm1 { degree: a.degree, part0: av_neg(&a.part0), part1: av_neg(&a.part1), k: a.k.clone() }
}

pub fn g1_sub(a: &GenForm1, b: &GenForm1) -> Result<GenForm1> {
    g1_add(a, &g1_neg(b))
}

pub fn g1_scale(a: &GenForm1, s: &Rat) -> GenForm1 {
    GenForm1 {
        degree: a.degree,
        part0: av_scale(&a.part0, s),
        part1: av_scale(&a.part1, s),
        k: a.k.clone(),
    }
}

/// Derivative of a one-symbol form: the body picks up the derivative of the
/// symbol through the layer map,
/// d(a0 + a1 xi) = (d a0 + (-1)^{p+1} k alpha(a1)) + d a1 xi.
pub fn g1_d(m: &D2CModule, a: &GenForm1) -> Result<GenForm1> {
    let pull = av_scale(&av_alpha(m, &a.part1)?, &(&sign(a.degree + 1) * &a.k));
    GenForm1::new(a.degree + 1, av_add(&av_d(&a.part0), &pull)?, av_d(&a.part1), a.k.clone())
}

/// Normalized product of one-symbol forms over a caller-supplied base-layer
/// product: A ^ B = a0 ^ b0 + (a0 ^|> b1) xi. The free-calculus term
/// a1 ^ b0 on the symbol has no layer to land in and is dropped.
pub fn g1_wedge(m: &D2CModule, product: &Bilinear, a: &GenForm1, b: &GenForm1) -> Result<GenForm1> {
    check_k1(a, b)?;
    GenForm1::new(
        a.degree + b.degree,
        av_wedge_with(product, Slot::G, &a.part0, &b.part0)?,
        av_wedge_action(m, &a.part0, &b.part1)?,
        a.k.clone(),
    )
}

/// Graded bracket of one-symbol forms:
/// [A, B] = a0 ^[,] b0 + (a0 ^|> b1 - (-1)^{pq} b0 ^|> a1) xi.
pub fn g1_bracket(m: &D2CModule, a: &GenForm1, b: &GenForm1) -> Result<GenForm1> {
    check_k1(a, b)?;
    let cross = av_scale(&av_wedge_action(m, &b.part0, &a.part1)?, &sign(a.degree * b.degree));
    GenForm1::new(
        a.degree + b.degree,
        av_wedge_bracket(m, &a.part0, &b.part0)?,
        av_sub(&av_wedge_action(m, &a.part0, &b.part1)?, &cross)?,
        a.k.clone(),
    )
}

/// Symbol-crossing pairing of one-symbol forms:
/// <<A, B>> = <a0, b1> + <b0, a1>, a scalar (p+q+1)-form.
pub fn g1_pair(pairing: &PairingData, a: &GenForm1, b: &GenForm1) -> Result<ScalarForm> {
    check_k1(a, b)?;
    let t1 = pair_forms(PairKind::GH, pairing, &a.part0, &b.part1)?;
    let t2 = pair_forms(PairKind::GH, pairing, &b.part0, &a.part1)?;
    t1.add(&t2)
}

pub fn g1_random(
    rng: &mut EngineRng,
    m: &D2CModule,
    n_vars: usize,
    degree: i64,
    k: Rat,
    density: &Density,
) -> GenForm1 {
    GenForm1 {
        degree,
        part0: av_random(rng, Slot::G, m.g.dim, n_vars, degree, density),
        part1: av_random(rng, Slot::H, m.h.dim, n_vars, degree + 1, density),
        k,
    }
}

pub fn g2_add(a: &GenForm2, b: &GenForm2) -> Result<GenForm2> {
    check_k2(a, b)?;
    let degree = if a.is_zero() { b.degree } else { a.degree };
    GenForm2::new(
        degree,
        av_add(&a.part0, &b.part0)?,
        av_add(&a.part1, &b.part1)?,
        av_add(&a.part2, &b.part2)?,
        av_add(&a.part12, &b.part12)?,
        a.k1.clone(),
        a.k2.clone(),
    )
}

pub fn g2_neg(a: &GenForm2) -> GenForm2 {
    GenForm2 {
        degree: a.degree,
        part0: av_neg(&a.part0),
        part1: av_neg(&a.part1),
        part2: av_neg(&a.part2),
        part12: av_neg(&a.part12),
        k1: a.k1.clone(),
        k2: a.k2.clone(),
    }
}

pub fn g2_sub(a: &GenForm2, b: &GenForm2) -> Result<GenForm2> {
    g2_add(a, &g2_neg(b))
}

pub fn g2_scale(a: &GenForm2, s: &Rat) -> GenForm2 {
    GenForm2 {
        degree: a.degree,
        part0: av_scale(&a.part0, s),
        part1: av_scale(&a.part1, s),
        part2: av_scale(&a.part2, s),
        part12: av_scale(&a.part12, s),
        k1: a.k1.clone(),
        k2: a.k2.clone(),
    }
}

/// Derivative of a two-symbol form. Dropping a single symbol routes the
/// component through alpha; dropping one symbol of the pair routes the top
/// component through beta with the sign of the symbol's position:
/// d A = (d a0 + (-1)^{p+1}(k1 alpha(a1) + k2 alpha(a2)))
///     + (d a1 + (-1)^{p+1} k2 beta(a12)) xi^1
///     + (d a2 + (-1)^p     k1 beta(a12)) xi^2
///     + d a12 xi^1 xi^2.
pub fn g2_d(m: &D2CModule, a: &GenForm2) -> Result<GenForm2> {
    let s = sign(a.degree + 1);
    let alpha1 = av_scale(&av_alpha(m, &a.part1)?, &(&s * &a.k1));
    let alpha2 = av_scale(&av_alpha(m, &a.part2)?, &(&s * &a.k2));
    let beta = av_beta(m, &a.part12)?;
    GenForm2::new(
        a.degree + 1,
        av_add(&av_add(&av_d(&a.part0), &alpha1)?, &alpha2)?,
        av_add(&av_d(&a.part1), &av_scale(&beta, &(&s * &a.k2)))?,
        av_sub(&av_d(&a.part2), &av_scale(&beta, &(&s * &a.k1)))?,
        av_d(&a.part12),
        a.k1.clone(),
        a.k2.clone(),
    )
}

/// Normalized product of two-symbol forms over a caller-supplied base-layer
/// product:
/// A ^ B = a0 ^ b0 + (a0 ^|> b_i) xi^i
///       + (a0 ^|> b12 + (-1)^{q+1} a1 ^{,} b2) xi^1 xi^2.
/// The free-calculus channels a_i ^ b0, a12 ^ b0 and a2 ^ b1 are dropped.
pub fn g2_wedge(m: &D2CModule, product: &Bilinear, a: &GenForm2, b: &GenForm2) -> Result<GenForm2> {
    check_k2(a, b)?;
    let lift = av_scale(&av_wedge_lift(m, &a.part1, &b.part2)?, &sign(b.degree + 1));
    GenForm2::new(
        a.degree + b.degree,
        av_wedge_with(product, Slot::G, &a.part0, &b.part0)?,
        av_wedge_action(m, &a.part0, &b.part1)?,
        av_wedge_action(m, &a.part0, &b.part2)?,
        av_add(&av_wedge_action(m, &a.part0, &b.part12)?, &lift)?,
        a.k1.clone(),
        a.k2.clone(),
    )
}

/// Graded bracket of two-symbol forms:
/// [A, B] = a0 ^[,] b0 + (a0 ^|> b_i - (-1)^{pq} b0 ^|> a_i) xi^i
///        + (a0 ^|> b12 - (-1)^{pq} b0 ^|> a12
///           + (-1)^{q+1} a1 ^{,} b2 - (-1)^{pq+p+1} b1 ^{,} a2) xi^1 xi^2.
pub fn g2_bracket(m: &D2CModule, a: &GenForm2, b: &GenForm2) -> Result<GenForm2> {
    check_k2(a, b)?;
    let swap = sign(a.degree * b.degree);
    let cross = |x: &AVForm, y: &AVForm| -> Result<AVForm> {
        av_sub(&av_wedge_action(m, &a.part0, y)?, &av_scale(&av_wedge_action(m, &b.part0, x)?, &swap))
    };
    let lift_ab = av_scale(&av_wedge_lift(m, &a.part1, &b.part2)?, &sign(b.degree + 1));
    let lift_ba = av_scale(
        &av_wedge_lift(m, &b.part1, &a.part2)?,
        &sign(a.degree * b.degree + a.degree + 1),
    );
    GenForm2::new(
        a.degree + b.degree,
        av_wedge_bracket(m, &a.part0, &b.part0)?,
        cross(&a.part1, &b.part1)?,
        cross(&a.part2, &b.part2)?,
        av_add(&cross(&a.part12, &b.part12)?, &av_sub(&lift_ab, &lift_ba)?)?,
        a.k1.clone(),
        a.k2.clone(),
    )
}

/// Symbol-saturating pairing of two-symbol forms, a scalar (p+q+2)-form:
/// <<A, B>> = <a0, b12>_gl + <b0, a12>_gl - k1 <a1, b2>_h - k2 <a2, b1>_h.
pub fn g2_pair(pairing: &PairingData, a: &GenForm2, b: &GenForm2) -> Result<ScalarForm> {
    check_k2(a, b)?;
    let mut out = pair_forms(PairKind::GL, pairing, &a.part0, &b.part12)?;
    out = out.add(&pair_forms(PairKind::GL, pairing, &b.part0, &a.part12)?)?;
    if !a.k1.is_zero() {
        out = out.sub(&pair_forms(PairKind::H, pairing, &a.part1, &b.part2)?.scale(&a.k1))?;
    }
    if !a.k2.is_zero() {
        out = out.sub(&pair_forms(PairKind::H, pairing, &a.part2, &b.part1)?.scale(&a.k2))?;
    }
    Ok(out)
}

pub fn g2_random(
    rng: &mut EngineRng,
    m: &D2CModule,
    n_vars: usize,
    degree: i64,
    k1: Rat,
    k2: Rat,
    density: &Density,
) -> GenForm2 {
    GenForm2 {
        degree,
        part0: av_random(rng, Slot::G, m.g.dim, n_vars, degree, density),
        part1: av_random(rng, Slot::H, m.h.dim, n_vars, degree + 1, density),
        part2: av_random(rng, Slot::H, m.h.dim, n_vars, degree + 1, density),
        part12: av_random(rng, Slot::L, m.l.dim, n_vars, degree + 2, density),
        k1,
        k2,
    }
}

/// One free-calculus expression per basis element of each layer: the body
/// coefficients ride no symbol, the middle layer rides the symbols, the top
/// layer rides their product. Tests contract these against the structure
/// tensors to cross-check the engine's signs.
pub fn g1_to_xi(a: &GenForm1) -> (Vec<XiExpr>, Vec<XiExpr>) {
    let ks = vec![a.k.clone()];
    let g = a
        .part0
        .comps
        .iter()
        .map(|c| {
            let mut e = XiExpr::zero(a.n_vars(), ks.clone());
            e.add_term(&[], c.clone());
            e
        })
        .collect();
    let h = a
        .part1
        .comps
        .iter()
        .map(|c| {
            let mut e = XiExpr::zero(a.n_vars(), ks.clone());
            e.add_term(&[1], c.clone());
            e
        })
        .collect();
    (g, h)
}

/// Two-symbol analogue of [`g1_to_xi`]: the middle-layer expression of a
/// basis element carries both of its symbol components.
pub fn g2_to_xi(a: &GenForm2) -> (Vec<XiExpr>, Vec<XiExpr>, Vec<XiExpr>) {
    let ks = vec![a.k1.clone(), a.k2.clone()];
    let g = a
        .part0
        .comps
        .iter()
        .map(|c| {
            let mut e = XiExpr::zero(a.n_vars(), ks.clone());
            e.add_term(&[], c.clone());
            e
        })
        .collect();
    let h = a
        .part1
        .comps
        .iter()
        .zip(&a.part2.comps)
        .map(|(c1, c2)| {
            let mut e = XiExpr::zero(a.n_vars(), ks.clone());
            e.add_term(&[1], c1.clone());
            e.add_term(&[2], c2.clone());
            e
        })
        .collect();
    let l = a
        .part12
        .comps
        .iter()
        .map(|c| {
            let mut e = XiExpr::zero(a.n_vars(), ks.clone());
            e.add_term(&[1, 2], c.clone());
            e
        })
        .collect();
    (g, h, l)
}
