//! Chern-Simons-type lagrangians, invariant polynomials, and transgression.
//!
//! Three tiers share one architecture:
//!
//! * ordinary gauge theory: connection `A`, curvature `F = dA + A^A`,
//!   invariant polynomial `<F,F>_g`, Chern-Simons form, Chern-Weil
//!   transgression between two connections;
//! * the two-term theory: connection `(A, B)`, curvatures `(Omega1, Omega2)`,
//!   invariant polynomial `2<Omega1,Omega2>_gh`;
//! * the three-term theory: connection `(A, B, C)`, curvatures
//!   `(Omega1, Omega2, Omega3)`, invariant polynomial
//!   `2<Omega1,Omega3>_gl + <Omega2,Omega2>_h`.
//!
//! Each lagrangian is built twice: once through the generalized-form calculus
//! (`raw`) and once through the displayed component formula (`reduced`).  The
//! two builds differ pointwise by an exact term, recorded as `boundary`, and
//! [`Lagrangian::residual`] certifies `raw - reduced + d(boundary) == 0`
//! exactly.  Transgression forms are likewise built twice: by symbolic
//! integration of the interpolating curvature in the parameter `t`, and from
//! hardcoded coefficient displays; both routes must agree form by form.
//!
//! All identities here are exact statements about polynomial differential
//! forms with rational coefficients: every check returns a residual form that
//! must be literally zero.

use crate::algebra::D2CModule;
use crate::avform::{
    av_add, av_alpha, av_beta, av_d, av_scale, av_square, av_sub, av_wedge_action,
    av_wedge_bracket, av_wedge_lift, pair_forms, AVForm, PairKind, Slot,
};
use crate::error::{Error, Result};
use crate::gauge::{
    curvature2, curvature3, gauge2, gauge3, gconn1, gconn2, Conn2, Conn3, Curv2, Curv3,
    GaugeParams, GroupElem,
};
use crate::genform::{g1_add, g1_bracket, g1_d, g1_pair, g1_scale, g2_add, g2_bracket, g2_d, g2_pair, g2_scale};
use crate::pairing::PairingData;
use crate::rat::{rat, ratq, Rat};
use crate::sform::ScalarForm;
use crate::tpoly::{t_combine, t_pair, TForm, TScalar};

fn expect_conn_form(f: &AVForm, slot: Slot, dim: usize, degree: i64) -> Result<()> {
    if f.slot != slot {
        return Err(Error::SlotMismatch { expected: slot.to_string(), found: f.slot.to_string() });
    }
    if f.comps.len() != dim {
        return Err(Error::DimensionMismatch(format!(
            "{} components for a dimension-{dim} layer",
            f.comps.len()
        )));
    }
    if f.degree != degree && !f.is_zero() {
        return Err(Error::DegreeMismatch(degree, f.degree));
    }
    Ok(())
}

/// A transgression form together with the exactness residual it certifies:
/// `residual = P(end) - P(start) - d(q)`, which must vanish identically.
#[derive(Debug, Clone)]
pub struct Transgression {
    pub q: ScalarForm,
    pub residual: ScalarForm,
}

/// One lagrangian built two independent ways.  `raw` comes from the
/// generalized-form calculus, `reduced` from the displayed component formula;
/// they differ by the exact term `d(boundary)`.
#[derive(Debug, Clone)]
pub struct Lagrangian {
    pub raw: ScalarForm,
    pub reduced: ScalarForm,
    pub boundary: ScalarForm,
}

impl Lagrangian {
    /// `raw - reduced + d(boundary)`; zero certifies that the two builds
    /// agree up to the recorded exact term.
    pub fn residual(&self) -> Result<ScalarForm> {
        self.raw.sub(&self.reduced)?.add(&self.boundary.d())
    }
}

// ---------------------------------------------------------------------------
// Ordinary gauge theory.
// ---------------------------------------------------------------------------

/// Curvature `F = dA + A ^ A` of a g-valued connection 1-form.
pub fn cs_curvature(m: &D2CModule, a: &AVForm) -> Result<AVForm> {
    expect_conn_form(a, Slot::G, m.g.dim, 1)?;
    av_add(&av_d(a), &av_square(m, a)?)
}

/// Ordinary gauge transformation `A -> g^{-1} A g + g^{-1} dg`.
pub fn cs_gauge(g: &GroupElem, a: &AVForm) -> Result<AVForm> {
    av_add(&g.adjoint_inv(a)?, g.maurer())
}

/// Chern-Simons 3-form `<A, dA + (1/3) A ^[,] A>_g`; its exterior derivative
/// is the curvature pairing `<F, F>_g`.
pub fn cs_form(m: &D2CModule, pairing: &PairingData, a: &AVForm) -> Result<ScalarForm> {
    expect_conn_form(a, Slot::G, m.g.dim, 1)?;
    let inner = av_add(&av_d(a), &av_scale(&av_wedge_bracket(m, a, a)?, &ratq(1, 3)))?;
    pair_forms(PairKind::G, pairing, a, &inner)
}

/// Invariant polynomial `<F, F>_g` of a curvature 2-form.
pub fn second_chern(pairing: &PairingData, f: &AVForm) -> Result<ScalarForm> {
    pair_forms(PairKind::G, pairing, f, f)
}

/// `d<F,F>_g` computed from the connection; zero by the Bianchi identity and
/// the invariance of the pairing.
pub fn chern1_closure_residual(m: &D2CModule, pairing: &PairingData, a: &AVForm) -> Result<ScalarForm> {
    let f = cs_curvature(m, a)?;
    Ok(second_chern(pairing, &f)?.d())
}

/// `<F',F'> - <F,F>` across an ordinary gauge transformation; zero because
/// the pairing is invariant under the adjoint action.
pub fn chern1_invariance_residual(
    m: &D2CModule,
    pairing: &PairingData,
    g: &GroupElem,
    a: &AVForm,
) -> Result<ScalarForm> {
    let f = cs_curvature(m, a)?;
    let f2 = cs_curvature(m, &cs_gauge(g, a)?)?;
    second_chern(pairing, &f2)?.sub(&second_chern(pairing, &f)?)
}

/// Straight-line family `x0 + t (x1 - x0)` and its curvature family.
fn curv1_family(m: &D2CModule, a0: &AVForm, a1: &AVForm) -> Result<(TForm, TForm)> {
    let at = TForm::interp(a0, a1)?;
    let sq = t_combine(&at, &at, |x, y| av_wedge_bracket(m, x, y))?.scale(&ratq(1, 2));
    let ft = at.d().add(&sq)?;
    Ok((at, ft))
}

fn chern_weil1_scaled(
    m: &D2CModule,
    pairing: &PairingData,
    a0: &AVForm,
    a1: &AVForm,
    factor: &Rat,
) -> Result<Transgression> {
    expect_conn_form(a0, Slot::G, m.g.dim, 1)?;
    expect_conn_form(a1, Slot::G, m.g.dim, 1)?;
    let (_, ft) = curv1_family(m, a0, a1)?;
    let eta = TForm::constant(av_sub(a1, a0)?);
    let q = t_pair(PairKind::G, pairing, &eta, &ft)?.integrate01()?.scale(factor);
    let p0 = second_chern(pairing, &cs_curvature(m, a0)?)?;
    let p1 = second_chern(pairing, &cs_curvature(m, a1)?)?;
    let residual = p1.sub(&p0)?.sub(&q.d())?;
    Ok(Transgression { q, residual })
}

/// Chern-Weil transgression between two connections:
/// `q = 2 * integral of <A1 - A0, F^t> dt` satisfies
/// `<F1,F1> - <F0,F0> = d(q)` exactly.
pub fn chern_weil1(m: &D2CModule, pairing: &PairingData, a0: &AVForm, a1: &AVForm) -> Result<Transgression> {
    chern_weil1_scaled(m, pairing, a0, a1, &rat(2))
}

// ---------------------------------------------------------------------------
// Two-term theory.
// ---------------------------------------------------------------------------

/// Lagrangian of the two-term theory.
///
/// * `raw`: `<< Conn, d Conn + (1/3) [Conn, Conn] >>` in the generalized-form
///   calculus on one odd generator;
/// * `reduced`: `<2F - alpha(B), B>_gh` with `F = dA + A ^ A`;
/// * `boundary`: `<A, B>_gh`.
pub fn lagr_2cs(m: &D2CModule, pairing: &PairingData, c: &Conn2) -> Result<Lagrangian> {
    let gf = gconn1(c)?;
    let inner = g1_add(&g1_d(m, &gf)?, &g1_scale(&g1_bracket(m, &gf, &gf)?, &ratq(1, 3)))?;
    let raw = g1_pair(pairing, &gf, &inner)?;
    let f = cs_curvature(m, &c.a)?;
    let lead = av_sub(&av_scale(&f, &rat(2)), &av_alpha(m, &c.b)?)?;
    let reduced = pair_forms(PairKind::GH, pairing, &lead, &c.b)?;
    let boundary = pair_forms(PairKind::GH, pairing, &c.a, &c.b)?;
    Ok(Lagrangian { raw, reduced, boundary })
}

/// Equations of motion of the two-term theory: criticality with respect to
/// each field is vanishing of the complementary curvature component.
#[derive(Debug, Clone)]
pub struct Eom2 {
    /// Variation with respect to A: `Omega2`.
    pub wrt_a: AVForm,
    /// Variation with respect to B: `Omega1`.
    pub wrt_b: AVForm,
}

impl Eom2 {
    pub fn is_critical(&self) -> bool {
        self.wrt_a.is_zero() && self.wrt_b.is_zero()
    }
}

pub fn eom_2cs(m: &D2CModule, c: &Conn2) -> Result<Eom2> {
    let cv = curvature2(m, c)?;
    Ok(Eom2 { wrt_a: cv.omega2, wrt_b: cv.omega1 })
}

/// First variation of the reduced lagrangian along `v` minus the
/// equations-of-motion pairing minus the exact term `d(2<v_A, B>)`;
/// identically zero, certifying the equations of motion.
pub fn action_variation_residual2(
    m: &D2CModule,
    pairing: &PairingData,
    c: &Conn2,
    v: &Conn2,
) -> Result<ScalarForm> {
    let at = TForm::from_coeffs(vec![c.a.clone(), v.a.clone()])?;
    let bt = TForm::from_coeffs(vec![c.b.clone(), v.b.clone()])?;
    let sq = t_combine(&at, &at, |x, y| av_wedge_bracket(m, x, y))?.scale(&ratq(1, 2));
    let ft = at.d().add(&sq)?;
    let lead = ft.scale(&rat(2)).sub(&bt.map(|x| av_alpha(m, x))?)?;
    let lt = t_pair(PairKind::GH, pairing, &lead, &bt)?;
    let delta = lt.coeffs()[1].clone();
    let cv = curvature2(m, c)?;
    let el = pair_forms(PairKind::GH, pairing, &v.a, &cv.omega2)?
        .add(&pair_forms(PairKind::GH, pairing, &cv.omega1, &v.b)?)?
        .scale(&rat(2));
    let bd = pair_forms(PairKind::GH, pairing, &v.a, &c.b)?.scale(&rat(2));
    delta.sub(&el)?.sub(&bd.d())
}

/// Invariant polynomial `2 <Omega1, Omega2>_gh`.
pub fn second_chern2(pairing: &PairingData, cv: &Curv2) -> Result<ScalarForm> {
    Ok(pair_forms(PairKind::GH, pairing, &cv.omega1, &cv.omega2)?.scale(&rat(2)))
}

/// `d(2<Omega1,Omega2>)` computed from the connection; zero on modules whose
/// upper layer satisfies the full compatibility laws.
pub fn chern2_closure_residual(m: &D2CModule, pairing: &PairingData, c: &Conn2) -> Result<ScalarForm> {
    Ok(second_chern2(pairing, &curvature2(m, c)?)?.d())
}

/// Invariant-polynomial difference across a 2-gauge transformation.
pub fn chern2_invariance_residual(
    m: &D2CModule,
    pairing: &PairingData,
    p: &GaugeParams,
    c: &Conn2,
) -> Result<ScalarForm> {
    let c2 = gauge2(m, p, c)?;
    second_chern2(pairing, &curvature2(m, &c2)?)?.sub(&second_chern2(pairing, &curvature2(m, c)?)?)
}

fn line2(c0: &Conn2, c1: &Conn2) -> Result<(TForm, TForm)> {
    Ok((TForm::interp(&c0.a, &c1.a)?, TForm::interp(&c0.b, &c1.b)?))
}

fn curv2_family(m: &D2CModule, at: &TForm, bt: &TForm) -> Result<(TForm, TForm)> {
    let sq = t_combine(at, at, |x, y| av_wedge_bracket(m, x, y))?.scale(&ratq(1, 2));
    let o1 = at.d().add(&sq)?.sub(&bt.map(|x| av_alpha(m, x))?)?;
    let o2 = bt.d().add(&t_combine(at, bt, |x, y| av_wedge_action(m, x, y))?)?;
    Ok((o1, o2))
}

pub fn chern_weil2_scaled(
    m: &D2CModule,
    pairing: &PairingData,
    c0: &Conn2,
    c1: &Conn2,
    factor: &Rat,
) -> Result<Transgression> {
    let (at, bt) = line2(c0, c1)?;
    let (o1t, o2t) = curv2_family(m, &at, &bt)?;
    let eta = TForm::constant(av_sub(&c1.a, &c0.a)?);
    let etab = TForm::constant(av_sub(&c1.b, &c0.b)?);
    let integrand = t_pair(PairKind::GH, pairing, &eta, &o2t)?
        .add(&t_pair(PairKind::GH, pairing, &o1t, &etab)?)?;
    let q = integrand.integrate01()?.scale(factor);
    let p0 = second_chern2(pairing, &curvature2(m, c0)?)?;
    let p1 = second_chern2(pairing, &curvature2(m, c1)?)?;
    let residual = p1.sub(&p0)?.sub(&q.d())?;
    Ok(Transgression { q, residual })
}

/// Transgression of the two-term invariant polynomial along the straight
/// line between two connections:
/// `q = 2 * integral of <eta, Omega2^t> + <Omega1^t, eta-bar> dt`.
pub fn chern_weil2(m: &D2CModule, pairing: &PairingData, c0: &Conn2, c1: &Conn2) -> Result<Transgression> {
    chern_weil2_scaled(m, pairing, c0, c1, &rat(2))
}

/// Variation of the two-term invariant polynomial along a direction, minus
/// the exact term `d(2<v_A, Omega2> + 2<Omega1, v_B>)`.
pub fn variation_residual2(
    m: &D2CModule,
    pairing: &PairingData,
    c: &Conn2,
    v: &Conn2,
) -> Result<ScalarForm> {
    let at = TForm::from_coeffs(vec![c.a.clone(), v.a.clone()])?;
    let bt = TForm::from_coeffs(vec![c.b.clone(), v.b.clone()])?;
    let (o1t, o2t) = curv2_family(m, &at, &bt)?;
    let pt = t_pair(PairKind::GH, pairing, &o1t, &o2t)?.scale(&rat(2));
    let delta = pt.coeffs()[1].clone();
    let cv = curvature2(m, c)?;
    let bd = pair_forms(PairKind::GH, pairing, &v.a, &cv.omega2)?
        .add(&pair_forms(PairKind::GH, pairing, &cv.omega1, &v.b)?)?
        .scale(&rat(2));
    delta.sub(&bd.d())
}

// ---------------------------------------------------------------------------
// Three-term theory.
// ---------------------------------------------------------------------------

/// Lagrangian of the three-term theory.
///
/// * `raw`: `<< Conn, d Conn + (1/3) [Conn, Conn] >>` in the generalized-form
///   calculus on two odd generators;
/// * `reduced`: `<2F - alpha(B), C>_gl + <B, Omega2>_h`;
/// * `boundary`: `<A, C>_gl`.
pub fn lagr_3cs(m: &D2CModule, pairing: &PairingData, c: &Conn3) -> Result<Lagrangian> {
    let gf = gconn2(c)?;
    let inner = g2_add(&g2_d(m, &gf)?, &g2_scale(&g2_bracket(m, &gf, &gf)?, &ratq(1, 3)))?;
    let raw = g2_pair(pairing, &gf, &inner)?;
    let f = cs_curvature(m, &c.a)?;
    let lead = av_sub(&av_scale(&f, &rat(2)), &av_alpha(m, &c.b)?)?;
    let omega2 = av_sub(
        &av_add(&av_d(&c.b), &av_wedge_action(m, &c.a, &c.b)?)?,
        &av_beta(m, &c.c)?,
    )?;
    let reduced = pair_forms(PairKind::GL, pairing, &lead, &c.c)?
        .add(&pair_forms(PairKind::H, pairing, &c.b, &omega2)?)?;
    let boundary = pair_forms(PairKind::GL, pairing, &c.a, &c.c)?;
    Ok(Lagrangian { raw, reduced, boundary })
}

/// Equations of motion of the three-term theory.
#[derive(Debug, Clone)]
pub struct Eom3 {
    /// Variation with respect to A: `Omega3`.
    pub wrt_a: AVForm,
    /// Variation with respect to B: `Omega2`.
    pub wrt_b: AVForm,
    /// Variation with respect to C: `Omega1`.
    pub wrt_c: AVForm,
}

impl Eom3 {
    pub fn is_critical(&self) -> bool {
        self.wrt_a.is_zero() && self.wrt_b.is_zero() && self.wrt_c.is_zero()
    }
}

pub fn eom_3cs(m: &D2CModule, c: &Conn3) -> Result<Eom3> {
    let cv = curvature3(m, c)?;
    Ok(Eom3 { wrt_a: cv.omega3, wrt_b: cv.omega2, wrt_c: cv.omega1 })
}

/// First variation of the reduced three-term lagrangian along `v` minus the
/// equations-of-motion pairing minus `d(2<v_A, C>_gl + <B, v_B>_h)`;
/// identically zero on every valid module with a valid pairing.
pub fn action_variation_residual3(
    m: &D2CModule,
    pairing: &PairingData,
    c: &Conn3,
    v: &Conn3,
) -> Result<ScalarForm> {
    let at = TForm::from_coeffs(vec![c.a.clone(), v.a.clone()])?;
    let bt = TForm::from_coeffs(vec![c.b.clone(), v.b.clone()])?;
    let ct = TForm::from_coeffs(vec![c.c.clone(), v.c.clone()])?;
    let sq = t_combine(&at, &at, |x, y| av_wedge_bracket(m, x, y))?.scale(&ratq(1, 2));
    let ft = at.d().add(&sq)?;
    let lead = ft.scale(&rat(2)).sub(&bt.map(|x| av_alpha(m, x))?)?;
    let o2t = bt
        .d()
        .add(&t_combine(&at, &bt, |x, y| av_wedge_action(m, x, y))?)?
        .sub(&ct.map(|x| av_beta(m, x))?)?;
    let lt = t_pair(PairKind::GL, pairing, &lead, &ct)?
        .add(&t_pair(PairKind::H, pairing, &bt, &o2t)?)?;
    let delta = lt.coeffs()[1].clone();
    let cv = curvature3(m, c)?;
    let el = pair_forms(PairKind::GL, pairing, &v.a, &cv.omega3)?
        .add(&pair_forms(PairKind::GL, pairing, &cv.omega1, &v.c)?)?
        .add(&pair_forms(PairKind::H, pairing, &v.b, &cv.omega2)?)?
        .scale(&rat(2));
    let bd = pair_forms(PairKind::GL, pairing, &v.a, &c.c)?
        .scale(&rat(2))
        .add(&pair_forms(PairKind::H, pairing, &c.b, &v.b)?)?;
    delta.sub(&el)?.sub(&bd.d())
}

/// Invariant polynomial `2 <Omega1, Omega3>_gl + <Omega2, Omega2>_h`.
pub fn second_chern3(pairing: &PairingData, cv: &Curv3) -> Result<ScalarForm> {
    pair_forms(PairKind::GL, pairing, &cv.omega1, &cv.omega3)?
        .scale(&rat(2))
        .add(&pair_forms(PairKind::H, pairing, &cv.omega2, &cv.omega2)?)
}

/// `d(P)` for the three-term invariant polynomial; zero on every valid
/// module with a valid pairing.
pub fn chern3_closure_residual(m: &D2CModule, pairing: &PairingData, c: &Conn3) -> Result<ScalarForm> {
    Ok(second_chern3(pairing, &curvature3(m, c)?)?.d())
}

/// Invariant-polynomial difference across a 3-gauge transformation.
pub fn chern3_invariance_residual(
    m: &D2CModule,
    pairing: &PairingData,
    p: &GaugeParams,
    c: &Conn3,
) -> Result<ScalarForm> {
    let c2 = gauge3(m, p, c)?;
    second_chern3(pairing, &curvature3(m, &c2)?)?.sub(&second_chern3(pairing, &curvature3(m, c)?)?)
}

fn line3(c0: &Conn3, c1: &Conn3) -> Result<(TForm, TForm, TForm)> {
    Ok((
        TForm::interp(&c0.a, &c1.a)?,
        TForm::interp(&c0.b, &c1.b)?,
        TForm::interp(&c0.c, &c1.c)?,
    ))
}

fn curv3_family(m: &D2CModule, at: &TForm, bt: &TForm, ct: &TForm) -> Result<(TForm, TForm, TForm)> {
    let (o1, o2_no_beta) = curv2_family(m, at, bt)?;
    let o2 = o2_no_beta.sub(&ct.map(|x| av_beta(m, x))?)?;
    let o3 = ct
        .d()
        .add(&t_combine(at, ct, |x, y| av_wedge_action(m, x, y))?)?
        .add(&t_combine(bt, bt, |x, y| av_wedge_lift(m, x, y))?)?;
    Ok((o1, o2, o3))
}

pub fn chern_weil3_scaled(
    m: &D2CModule,
    pairing: &PairingData,
    c0: &Conn3,
    c1: &Conn3,
    factor: &Rat,
) -> Result<Transgression> {
    let (at, bt, ct) = line3(c0, c1)?;
    let (o1t, o2t, o3t) = curv3_family(m, &at, &bt, &ct)?;
    let eta = TForm::constant(av_sub(&c1.a, &c0.a)?);
    let etab = TForm::constant(av_sub(&c1.b, &c0.b)?);
    let etac = TForm::constant(av_sub(&c1.c, &c0.c)?);
    let integrand = t_pair(PairKind::GL, pairing, &eta, &o3t)?
        .add(&t_pair(PairKind::GL, pairing, &o1t, &etac)?)?
        .add(&t_pair(PairKind::H, pairing, &etab, &o2t)?)?;
    let q = integrand.integrate01()?.scale(factor);
    let p0 = second_chern3(pairing, &curvature3(m, c0)?)?;
    let p1 = second_chern3(pairing, &curvature3(m, c1)?)?;
    let residual = p1.sub(&p0)?.sub(&q.d())?;
    Ok(Transgression { q, residual })
}

/// Transgression of the three-term invariant polynomial:
/// `q = 2 * integral of <eta, Omega3^t> + <Omega1^t, eta-tilde>
///      + <eta-bar, Omega2^t> dt`.
pub fn chern_weil3(m: &D2CModule, pairing: &PairingData, c0: &Conn3, c1: &Conn3) -> Result<Transgression> {
    chern_weil3_scaled(m, pairing, c0, c1, &rat(2))
}

/// Variation of the three-term invariant polynomial along a direction, minus
/// `d(2<v_A, Omega3>_gl + 2<Omega1, v_C>_gl + 2<v_B, Omega2>_h)`.
pub fn variation_residual3(
    m: &D2CModule,
    pairing: &PairingData,
    c: &Conn3,
    v: &Conn3,
) -> Result<ScalarForm> {
    let at = TForm::from_coeffs(vec![c.a.clone(), v.a.clone()])?;
    let bt = TForm::from_coeffs(vec![c.b.clone(), v.b.clone()])?;
    let ct = TForm::from_coeffs(vec![c.c.clone(), v.c.clone()])?;
    let (o1t, o2t, o3t) = curv3_family(m, &at, &bt, &ct)?;
    let pt = t_pair(PairKind::GL, pairing, &o1t, &o3t)?
        .scale(&rat(2))
        .add(&t_pair(PairKind::H, pairing, &o2t, &o2t)?)?;
    let delta = pt.coeffs()[1].clone();
    let cv = curvature3(m, c)?;
    let bd = pair_forms(PairKind::GL, pairing, &v.a, &cv.omega3)?
        .add(&pair_forms(PairKind::GL, pairing, &cv.omega1, &v.c)?)?
        .add(&pair_forms(PairKind::H, pairing, &v.b, &cv.omega2)?)?
        .scale(&rat(2));
    delta.sub(&bd.d())
}

// ---------------------------------------------------------------------------
// Hardcoded transgression displays.
// ---------------------------------------------------------------------------

/// `(2/3) f(x0,y0) + (1/3) f(x0,y1) + (1/3) f(x1,y0) + (2/3) f(x1,y1)`:
/// the exact value of `2 * integral of f(x^t, y^t) dt` for any bilinear `f`
/// and straight-line families.
fn polarize2(
    f: impl Fn(&AVForm, &AVForm) -> Result<AVForm>,
    x0: &AVForm,
    x1: &AVForm,
    y0: &AVForm,
    y1: &AVForm,
) -> Result<AVForm> {
    let t23 = ratq(2, 3);
    let t13 = ratq(1, 3);
    let mut acc = av_scale(&f(x0, y0)?, &t23);
    acc = av_add(&acc, &av_scale(&f(x0, y1)?, &t13))?;
    acc = av_add(&acc, &av_scale(&f(x1, y0)?, &t13))?;
    av_add(&acc, &av_scale(&f(x1, y1)?, &t23))
}

struct Displays2 {
    i1: AVForm,
    i2: AVForm,
    j1: AVForm,
    j2: AVForm,
}

/// Twice the t-integrals of the interpolating curvatures and their exterior
/// derivatives for the two-term theory, written out termwise with the fixed
/// 2/3 and 1/3 coefficients rather than integrated symbolically.
fn displays2(m: &D2CModule, c0: &Conn2, c1: &Conn2) -> Result<Displays2> {
    let wb = |x: &AVForm, y: &AVForm| av_wedge_bracket(m, x, y);
    let act = |x: &AVForm, y: &AVForm| av_wedge_action(m, x, y);
    let (a0, b0) = (&c0.a, &c0.b);
    let (a1, b1) = (&c1.a, &c1.b);
    let (da0, da1) = (av_d(a0), av_d(a1));
    let (db0, db1) = (av_d(b0), av_d(b1));

    let mut i1 = av_add(&da0, &da1)?;
    i1 = av_add(&i1, &av_scale(&polarize2(wb, a0, a1, a0, a1)?, &ratq(1, 2)))?;
    i1 = av_sub(&i1, &av_alpha(m, b0)?)?;
    i1 = av_sub(&i1, &av_alpha(m, b1)?)?;

    let mut i2 = av_add(&db0, &db1)?;
    i2 = av_add(&i2, &polarize2(act, a0, a1, b0, b1)?)?;

    let mut j1 = polarize2(wb, &da0, &da1, a0, a1)?;
    j1 = av_sub(&j1, &av_alpha(m, &db0)?)?;
    j1 = av_sub(&j1, &av_alpha(m, &db1)?)?;

    let mut j2 = polarize2(act, &da0, &da1, b0, b1)?;
    j2 = av_sub(&j2, &polarize2(act, a0, a1, &db0, &db1)?)?;

    Ok(Displays2 { i1, i2, j1, j2 })
}

/// Transgression of the two-term theory assembled from the hardcoded
/// termwise displays instead of symbolic parameter integration.  Returns the
/// transgression form and the residual of the derivative identity
/// `<d eta, I2> - <eta, J2> + <J1, eta-bar> + <I1, d eta-bar> = P1 - P0`.
pub fn chern_weil2_expansion(
    m: &D2CModule,
    pairing: &PairingData,
    c0: &Conn2,
    c1: &Conn2,
) -> Result<Transgression> {
    let d = displays2(m, c0, c1)?;
    let eta = av_sub(&c1.a, &c0.a)?;
    let etab = av_sub(&c1.b, &c0.b)?;
    let q = pair_forms(PairKind::GH, pairing, &eta, &d.i2)?
        .add(&pair_forms(PairKind::GH, pairing, &d.i1, &etab)?)?;
    let dq = pair_forms(PairKind::GH, pairing, &av_d(&eta), &d.i2)?
        .sub(&pair_forms(PairKind::GH, pairing, &eta, &d.j2)?)?
        .add(&pair_forms(PairKind::GH, pairing, &d.j1, &etab)?)?
        .add(&pair_forms(PairKind::GH, pairing, &d.i1, &av_d(&etab))?)?;
    let p0 = second_chern2(pairing, &curvature2(m, c0)?)?;
    let p1 = second_chern2(pairing, &curvature2(m, c1)?)?;
    let residual = p1.sub(&p0)?.sub(&dq)?;
    Ok(Transgression { q, residual })
}

struct Displays3 {
    i1: AVForm,
    i2: AVForm,
    i3: AVForm,
    j1: AVForm,
    j2: AVForm,
    j3: AVForm,
}

fn displays3(m: &D2CModule, c0: &Conn3, c1: &Conn3) -> Result<Displays3> {
    let act = |x: &AVForm, y: &AVForm| av_wedge_action(m, x, y);
    let lift = |x: &AVForm, y: &AVForm| av_wedge_lift(m, x, y);
    let two = displays2(m, &c0.truncate(), &c1.truncate())?;
    let (a0, b0, cc0) = (&c0.a, &c0.b, &c0.c);
    let (a1, b1, cc1) = (&c1.a, &c1.b, &c1.c);
    let (dc0, dc1) = (av_d(cc0), av_d(cc1));
    let (db0, db1) = (av_d(b0), av_d(b1));

    let i1 = two.i1;
    let mut i2 = two.i2;
    i2 = av_sub(&i2, &av_beta(m, cc0)?)?;
    i2 = av_sub(&i2, &av_beta(m, cc1)?)?;

    let mut i3 = av_add(&dc0, &dc1)?;
    i3 = av_add(&i3, &polarize2(act, a0, a1, cc0, cc1)?)?;
    i3 = av_add(&i3, &polarize2(lift, b0, b1, b0, b1)?)?;

    let j1 = two.j1;
    let mut j2 = two.j2;
    j2 = av_sub(&j2, &av_beta(m, &dc0)?)?;
    j2 = av_sub(&j2, &av_beta(m, &dc1)?)?;

    let (da0, da1) = (av_d(a0), av_d(a1));
    let mut j3 = polarize2(act, &da0, &da1, cc0, cc1)?;
    j3 = av_sub(&j3, &polarize2(act, a0, a1, &dc0, &dc1)?)?;
    j3 = av_add(&j3, &polarize2(lift, &db0, &db1, b0, b1)?)?;
    j3 = av_add(&j3, &polarize2(lift, b0, b1, &db0, &db1)?)?;

    Ok(Displays3 { i1, i2, i3, j1, j2, j3 })
}

/// Transgression of the three-term theory assembled from the hardcoded
/// termwise displays.  Returns the transgression form and the residual of
/// `<d eta, I3> - <eta, J3> + <d eta-bar, I2> + <eta-bar, J2>
///  + <J1, eta-tilde> + <I1, d eta-tilde> = P1 - P0`.
pub fn chern_weil3_expansion(
    m: &D2CModule,
    pairing: &PairingData,
    c0: &Conn3,
    c1: &Conn3,
) -> Result<Transgression> {
    let d = displays3(m, c0, c1)?;
    let eta = av_sub(&c1.a, &c0.a)?;
    let etab = av_sub(&c1.b, &c0.b)?;
    let etac = av_sub(&c1.c, &c0.c)?;
    let q = pair_forms(PairKind::GL, pairing, &eta, &d.i3)?
        .add(&pair_forms(PairKind::GL, pairing, &d.i1, &etac)?)?
        .add(&pair_forms(PairKind::H, pairing, &etab, &d.i2)?)?;
    let dq = pair_forms(PairKind::GL, pairing, &av_d(&eta), &d.i3)?
        .sub(&pair_forms(PairKind::GL, pairing, &eta, &d.j3)?)?
        .add(&pair_forms(PairKind::H, pairing, &av_d(&etab), &d.i2)?)?
        .add(&pair_forms(PairKind::H, pairing, &etab, &d.j2)?)?
        .add(&pair_forms(PairKind::GL, pairing, &d.j1, &etac)?)?
        .add(&pair_forms(PairKind::GL, pairing, &d.i1, &av_d(&etac))?)?;
    let p0 = second_chern3(pairing, &curvature3(m, c0)?)?;
    let p1 = second_chern3(pairing, &curvature3(m, c1)?)?;
    let residual = p1.sub(&p0)?.sub(&dq)?;
    Ok(Transgression { q, residual })
}

// ---------------------------------------------------------------------------
// Action values.
// ---------------------------------------------------------------------------

/// Configuration for evaluating an action over the unit cube: the coupling
/// constant must be a nonzero rational.
#[derive(Debug, Clone)]
pub struct ActionConfig {
    kappa: Rat,
}

impl ActionConfig {
    pub fn new(kappa: Rat) -> Result<Self> {
        use num_traits::Zero;
        if kappa.is_zero() {
            return Err(Error::InvalidInput("coupling constant must be nonzero".into()));
        }
        Ok(ActionConfig { kappa })
    }

    pub fn kappa(&self) -> &Rat {
        &self.kappa
    }
}

impl Default for ActionConfig {
    fn default() -> Self {
        ActionConfig { kappa: rat(1) }
    }
}

/// An exact action value `kappa * integral / (4 pi)`.  The transcendental
/// factor is kept symbolic: `coefficient()` returns the exact rational
/// multiplier of `1 / (4 pi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ActionValue {
    pub kappa: Rat,
    pub integral: Rat,
}

impl ActionValue {
    pub fn coefficient(&self) -> Rat {
        self.kappa.clone() * self.integral.clone()
    }
}

impl std::fmt::Display for ActionValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}) / (4*pi)", self.coefficient())
    }
}

fn integrate_lagrangian(l: &ScalarForm, cfg: &ActionConfig) -> Result<ActionValue> {
    let n = l.n_vars() as i64;
    if l.degree() != n && !l.is_zero() {
        return Err(Error::DegreeMismatch(n, l.degree()));
    }
    Ok(ActionValue { kappa: cfg.kappa.clone(), integral: l.integrate_cube()? })
}

/// Ordinary Chern-Simons action over the unit cube; requires the lagrangian
/// to be a top-degree form.
pub fn action_cs(m: &D2CModule, pairing: &PairingData, a: &AVForm, cfg: &ActionConfig) -> Result<ActionValue> {
    integrate_lagrangian(&cs_form(m, pairing, a)?, cfg)
}

/// Two-term action over the unit cube, using the reduced lagrangian.
pub fn action_2cs(m: &D2CModule, pairing: &PairingData, c: &Conn2, cfg: &ActionConfig) -> Result<ActionValue> {
    integrate_lagrangian(&lagr_2cs(m, pairing, c)?.reduced, cfg)
}

/// Three-term action over the unit cube, using the reduced lagrangian.
pub fn action_3cs(m: &D2CModule, pairing: &PairingData, c: &Conn3, cfg: &ActionConfig) -> Result<ActionValue> {
    integrate_lagrangian(&lagr_3cs(m, pairing, c)?.reduced, cfg)
}

/// Scalar family of the two-term invariant polynomial along the straight
/// line between two connections; used by transgression diagnostics.
pub fn invariant_family2(m: &D2CModule, pairing: &PairingData, c0: &Conn2, c1: &Conn2) -> Result<TScalar> {
    let (at, bt) = line2(c0, c1)?;
    let (o1t, o2t) = curv2_family(m, &at, &bt)?;
    Ok(t_pair(PairKind::GH, pairing, &o1t, &o2t)?.scale(&rat(2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{embed_dcm, Action, DCModule, LieAlgebra, LinMap};
    use crate::avform::av_random;
    use crate::catalog;
    use crate::gauge::group_exp;
    use crate::linalg::RatMatrix;
    use crate::pairing::check_pairing;
    use crate::poly::RatPoly;
    use crate::rng::{seeded_rng, Density};
    use num_traits::Zero;

    fn density() -> Density {
        Density { max_poly_degree: 2, coeff_bound: 3, monomials_per_component: 1 }
    }

    fn module(name: &str) -> D2CModule {
        catalog::get(name).unwrap().kind.as_two_crossed()
    }

    fn pairing(name: &str) -> PairingData {
        catalog::get(name).unwrap().pairing.clone()
    }

    fn mat(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect(),
        )
    }

    /// Nilpotent nonabelian base layer with zero upper layers, so ordinary
    /// gauge transformations have exact polynomial group elements.  The
    /// invariant symmetric form is forced to be singular here.
    fn nilpotent_base_module() -> (D2CModule, PairingData) {
        let mut bracket = vec![vec![vec![rat(0); 3]; 3]; 3];
        bracket[0][1][2] = rat(1);
        bracket[1][0][2] = rat(-1);
        let g = LieAlgebra::new(3, bracket);
        let dcm = DCModule {
            g,
            h: LieAlgebra::abelian(0),
            alpha: LinMap::zero(0, 3),
            act: Action::trivial(3, 0),
        };
        let p = PairingData {
            pair_g: Some(mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]])),
            pair_gh: Some(RatMatrix::zeros(3, 0)),
            ..Default::default()
        };
        (embed_dcm(&dcm), p)
    }

    /// Fully abelian base layer with zero upper layers.
    fn abelian_base_module() -> (D2CModule, PairingData) {
        let dcm = DCModule {
            g: LieAlgebra::abelian(2),
            h: LieAlgebra::abelian(0),
            alpha: LinMap::zero(0, 2),
            act: Action::trivial(2, 0),
        };
        let p = PairingData { pair_g: Some(RatMatrix::identity(2)), ..Default::default() };
        (embed_dcm(&dcm), p)
    }

    /// Two abelian layers with zero structure maps and an empty top layer,
    /// carrying an antisymmetric middle pairing.
    fn two_layer_module() -> (D2CModule, PairingData) {
        let dcm = DCModule {
            g: LieAlgebra::abelian(2),
            h: LieAlgebra::abelian(2),
            alpha: LinMap::zero(2, 2),
            act: Action::trivial(2, 2),
        };
        let p = PairingData {
            pair_h: Some(mat(&[&[0, 1], &[-1, 0]])),
            pair_gl: Some(RatMatrix::zeros(2, 0)),
            ..Default::default()
        };
        (embed_dcm(&dcm), p)
    }

    fn sf(p: RatPoly) -> ScalarForm {
        ScalarForm::from_poly(p)
    }

    fn x(n: usize, i: usize) -> RatPoly {
        RatPoly::var(n, i)
    }

    fn dx(n: usize, i: usize) -> ScalarForm {
        ScalarForm::dx(n, i)
    }

    // ----- ordinary theory -----

    #[test]
    fn inline_test_pairings_satisfy_the_laws() {
        for (m, p) in [nilpotent_base_module(), abelian_base_module(), two_layer_module()] {
            let report = check_pairing(&m, &p).unwrap();
            assert!(report.is_valid(), "{:?}", report);
        }
    }

    #[test]
    fn cs_form_transgresses_to_the_curvature_pairing() {
        let m = module("adjoint");
        let p = pairing("adjoint");
        for seed in [3, 17] {
            let mut rng = seeded_rng(seed);
            let a = av_random(&mut rng, Slot::G, m.g.dim, 5, 1, &density());
            let q = cs_form(&m, &p, &a).unwrap();
            let f = cs_curvature(&m, &a).unwrap();
            let res = q.d().sub(&second_chern(&p, &f).unwrap()).unwrap();
            assert!(res.is_zero());
        }
    }

    #[test]
    fn cs_form_on_an_abelian_layer_is_a_wedge_da() {
        let (m, p) = abelian_base_module();
        let mut rng = seeded_rng(5);
        let a = av_random(&mut rng, Slot::G, 2, 4, 1, &density());
        let q = cs_form(&m, &p, &a).unwrap();
        let want = pair_forms(PairKind::G, &p, &a, &av_d(&a)).unwrap();
        assert!(q.sub(&want).unwrap().is_zero());
    }

    #[test]
    fn curvature_pairing_is_closed() {
        let m = module("adjoint");
        let p = pairing("adjoint");
        for seed in [11, 29] {
            let mut rng = seeded_rng(seed);
            let a = av_random(&mut rng, Slot::G, m.g.dim, 5, 1, &density());
            assert!(chern1_closure_residual(&m, &p, &a).unwrap().is_zero());
        }
    }

    #[test]
    fn curvature_pairing_is_gauge_invariant() {
        let (m, p) = nilpotent_base_module();
        let mut rng = seeded_rng(23);
        let a = av_random(&mut rng, Slot::G, 3, 5, 1, &density());
        let gen = av_random(&mut rng, Slot::G, 3, 5, 0, &density());
        let g = group_exp(&m, &gen).unwrap();
        let f = cs_curvature(&m, &a).unwrap();
        assert!(!second_chern(&p, &f).unwrap().is_zero());
        assert!(chern1_invariance_residual(&m, &p, &g, &a).unwrap().is_zero());
    }

    #[test]
    fn transgression_between_connections_is_exact() {
        let m = module("adjoint");
        let p = pairing("adjoint");
        for seed in [7, 41] {
            let mut rng = seeded_rng(seed);
            let a0 = av_random(&mut rng, Slot::G, m.g.dim, 5, 1, &density());
            let a1 = av_random(&mut rng, Slot::G, m.g.dim, 5, 1, &density());
            let tg = chern_weil1(&m, &p, &a0, &a1).unwrap();
            assert!(tg.residual.is_zero());
            assert!(!tg.q.is_zero());
        }
    }

    #[test]
    fn transgression_from_zero_recovers_the_cs_form() {
        let m = module("adjoint");
        let p = pairing("adjoint");
        let mut rng = seeded_rng(13);
        let a = av_random(&mut rng, Slot::G, m.g.dim, 5, 1, &density());
        let zero = AVForm::zero(Slot::G, m.g.dim, 5, 1);
        let tg = chern_weil1(&m, &p, &zero, &a).unwrap();
        assert!(tg.q.sub(&cs_form(&m, &p, &a).unwrap()).unwrap().is_zero());
    }

    // ----- two-term theory -----

    const PAIRED2: [&str; 4] = ["adjoint", "heis_coadjoint", "l0", "dim1"];

    #[test]
    fn two_term_lagrangian_builds_agree_up_to_the_boundary_term() {
        for name in PAIRED2 {
            let m = module(name);
            let p = pairing(name);
            for seed in [2, 19] {
                let mut rng = seeded_rng(seed);
                let c = Conn2::random(&mut rng, &m, 6, &density());
                let l = lagr_2cs(&m, &p, &c).unwrap();
                assert!(l.residual().unwrap().is_zero(), "{name}");
            }
        }
    }

    #[test]
    fn two_term_raw_build_matches_the_component_display() {
        let m = module("heis_coadjoint");
        let p = pairing("heis_coadjoint");
        let mut rng = seeded_rng(37);
        let c = Conn2::random(&mut rng, &m, 6, &density());
        let l = lagr_2cs(&m, &p, &c).unwrap();
        // <A, dB + (2/3) A |> B> + <dA + (2/3) A^A - alpha(B), B>.
        let t23 = ratq(2, 3);
        let first = pair_forms(
            PairKind::GH,
            &p,
            &c.a,
            &av_add(&av_d(&c.b), &av_scale(&av_wedge_action(&m, &c.a, &c.b).unwrap(), &t23)).unwrap(),
        )
        .unwrap();
        let lead = av_sub(
            &av_add(&av_d(&c.a), &av_scale(&av_square(&m, &c.a).unwrap(), &t23)).unwrap(),
            &av_alpha(&m, &c.b).unwrap(),
        )
        .unwrap();
        let second = pair_forms(PairKind::GH, &p, &lead, &c.b).unwrap();
        let want = first.add(&second).unwrap();
        assert!(l.raw.sub(&want).unwrap().is_zero());
        assert!(!l.raw.is_zero());
    }

    #[test]
    fn two_term_lagrangian_vanishes_without_the_middle_field() {
        let m = module("heis_coadjoint");
        let p = pairing("heis_coadjoint");
        let mut rng = seeded_rng(3);
        let a = av_random(&mut rng, Slot::G, m.g.dim, 6, 1, &density());
        let b = AVForm::zero(Slot::H, m.h.dim, 6, 2);
        let c = Conn2::new(&m, a, b).unwrap();
        let l = lagr_2cs(&m, &p, &c).unwrap();
        assert!(l.raw.is_zero());
        assert!(l.reduced.is_zero());
    }

    #[test]
    fn two_term_equations_of_motion_are_the_crossed_curvature_components() {
        let m = module("nil3");
        let mut rng = seeded_rng(8);
        let c = Conn2::random(&mut rng, &m, 5, &density());
        let eom = eom_2cs(&m, &c).unwrap();
        let cv = curvature2(&m, &c).unwrap();
        assert_eq!(eom.wrt_a, cv.omega2);
        assert_eq!(eom.wrt_b, cv.omega1);
        let flat = Conn2::zero(&m, 5);
        assert!(eom_2cs(&m, &flat).unwrap().is_critical());
    }

    #[test]
    fn two_term_action_variation_is_the_eom_pairing_plus_an_exact_term() {
        for name in ["heis_coadjoint", "l0", "dim1"] {
            let m = module(name);
            let p = pairing(name);
            let mut rng = seeded_rng(21);
            let c = Conn2::random(&mut rng, &m, 5, &density());
            let v = Conn2::random(&mut rng, &m, 5, &density());
            assert!(action_variation_residual2(&m, &p, &c, &v).unwrap().is_zero(), "{name}");
        }
    }

    #[test]
    fn two_term_invariant_polynomial_is_closed() {
        for name in PAIRED2 {
            let m = module(name);
            let p = pairing(name);
            let mut rng = seeded_rng(44);
            let c = Conn2::random(&mut rng, &m, 6, &density());
            assert!(chern2_closure_residual(&m, &p, &c).unwrap().is_zero(), "{name}");
        }
    }

    #[test]
    fn two_term_invariant_polynomial_is_gauge_invariant() {
        for name in ["heis_coadjoint", "l0", "dim1"] {
            let m = module(name);
            let p = pairing(name);
            let mut rng = seeded_rng(50);
            let c = Conn2::random(&mut rng, &m, 6, &density());
            let mut params = GaugeParams::random(&mut rng, &m, 6, &density()).unwrap();
            params = GaugeParams::new(&m, params.g.clone(), params.phi.clone(), AVForm::zero(Slot::L, m.l.dim, 6, 2)).unwrap();
            assert!(chern2_invariance_residual(&m, &p, &params, &c).unwrap().is_zero(), "{name}");
        }
    }

    #[test]
    fn two_term_transgression_is_exact() {
        for name in ["adjoint", "heis_coadjoint", "dim1"] {
            let m = module(name);
            let p = pairing(name);
            for seed in [4, 28] {
                let mut rng = seeded_rng(seed);
                let c0 = Conn2::random(&mut rng, &m, 6, &density());
                let c1 = Conn2::random(&mut rng, &m, 6, &density());
                let tg = chern_weil2(&m, &p, &c0, &c1).unwrap();
                assert!(tg.residual.is_zero(), "{name}");
            }
        }
    }

    #[test]
    fn two_term_transgression_from_zero_is_the_raw_lagrangian() {
        let m = module("heis_coadjoint");
        let p = pairing("heis_coadjoint");
        let mut rng = seeded_rng(61);
        let c = Conn2::random(&mut rng, &m, 6, &density());
        let tg = chern_weil2(&m, &p, &Conn2::zero(&m, 6), &c).unwrap();
        let l = lagr_2cs(&m, &p, &c).unwrap();
        assert!(tg.q.sub(&l.raw).unwrap().is_zero());
    }

    #[test]
    fn two_term_expansion_route_matches_the_symbolic_route() {
        for name in ["heis_coadjoint", "adjoint"] {
            let m = module(name);
            let p = pairing(name);
            let mut rng = seeded_rng(72);
            let c0 = Conn2::random(&mut rng, &m, 6, &density());
            let c1 = Conn2::random(&mut rng, &m, 6, &density());
            let route1 = chern_weil2(&m, &p, &c0, &c1).unwrap();
            let route2 = chern_weil2_expansion(&m, &p, &c0, &c1).unwrap();
            assert!(route2.q.sub(&route1.q).unwrap().is_zero(), "{name}");
            assert!(route2.residual.is_zero(), "{name}");
        }
    }

    #[test]
    fn exactly_one_transgression_normalization_closes_the_formula() {
        let m = module("heis_coadjoint");
        let p = pairing("heis_coadjoint");
        let mut rng = seeded_rng(90);
        let c0 = Conn2::random(&mut rng, &m, 6, &density());
        let c1 = Conn2::random(&mut rng, &m, 6, &density());
        let closes: Vec<i64> = [1i64, 2]
            .into_iter()
            .filter(|&f| {
                chern_weil2_scaled(&m, &p, &c0, &c1, &rat(f)).unwrap().residual.is_zero()
            })
            .collect();
        assert_eq!(closes, vec![2]);
        // Same discrimination for the three-term theory.
        let m3 = module("nil3");
        let p3 = pairing("nil3");
        let d0 = Conn3::random(&mut rng, &m3, 6, &density());
        let d1 = Conn3::random(&mut rng, &m3, 6, &density());
        let closes3: Vec<i64> = [1i64, 2]
            .into_iter()
            .filter(|&f| {
                chern_weil3_scaled(&m3, &p3, &d0, &d1, &rat(f)).unwrap().residual.is_zero()
            })
            .collect();
        assert_eq!(closes3, vec![2]);
    }

    #[test]
    fn two_term_invariant_polynomial_varies_by_an_exact_term() {
        for name in PAIRED2 {
            let m = module(name);
            let p = pairing(name);
            let mut rng = seeded_rng(53);
            let c = Conn2::random(&mut rng, &m, 6, &density());
            let v = Conn2::random(&mut rng, &m, 6, &density());
            assert!(variation_residual2(&m, &p, &c, &v).unwrap().is_zero(), "{name}");
            let zero_dir = Conn2::zero(&m, 6);
            assert!(variation_residual2(&m, &p, &c, &zero_dir).unwrap().is_zero());
        }
    }

    #[test]
    fn empty_middle_layer_degenerates_to_the_ordinary_theory() {
        let (m, p) = nilpotent_base_module();
        let mut rng = seeded_rng(35);
        let a = av_random(&mut rng, Slot::G, 3, 5, 1, &density());
        let b = AVForm::zero(Slot::H, 0, 5, 2);
        let c = Conn2::new(&m, a.clone(), b).unwrap();
        // Curvature collapses to the ordinary field strength.
        let cv = curvature2(&m, &c).unwrap();
        assert_eq!(cv.omega1, cs_curvature(&m, &a).unwrap());
        // The 2-gauge transformation with trivial parameters collapses to the
        // ordinary transformation law.
        let gen = av_random(&mut rng, Slot::G, 3, 5, 0, &density());
        let g = group_exp(&m, &gen).unwrap();
        let params = GaugeParams::new(
            &m,
            g.clone(),
            AVForm::zero(Slot::H, 0, 5, 1),
            AVForm::zero(Slot::L, 0, 5, 2),
        )
        .unwrap();
        let c2 = gauge2(&m, &params, &c).unwrap();
        assert_eq!(c2.a, cs_gauge(&g, &a).unwrap());
        // Every two-term scalar quantity vanishes identically.
        let l = lagr_2cs(&m, &p, &c).unwrap();
        assert!(l.raw.is_zero() && l.reduced.is_zero());
        assert!(second_chern2(&p, &cv).unwrap().is_zero());
        // The ordinary machinery on the same module is unaffected.
        assert!(chern_weil1(&m, &p, &a, &cs_gauge(&g, &a).unwrap()).unwrap().residual.is_zero());
    }

    // ----- three-term theory -----

    const PAIRED3: [&str; 4] = ["nil3", "heis_sp", "abelian", "fine_nil"];

    #[test]
    fn three_term_lagrangian_builds_agree_up_to_the_boundary_term() {
        for name in PAIRED3 {
            let m = module(name);
            let p = pairing(name);
            let n_vars = if name == "nil3" { 7 } else { 6 };
            let mut rng = seeded_rng(6);
            let c = Conn3::random(&mut rng, &m, n_vars, &density());
            let l = lagr_3cs(&m, &p, &c).unwrap();
            assert!(l.residual().unwrap().is_zero(), "{name}");
            assert!(!l.reduced.is_zero(), "{name}");
        }
    }

    #[test]
    fn three_term_equations_of_motion_are_the_reversed_curvature_components() {
        let m = module("heis_sp");
        let mut rng = seeded_rng(14);
        let c = Conn3::random(&mut rng, &m, 5, &density());
        let eom = eom_3cs(&m, &c).unwrap();
        let cv = curvature3(&m, &c).unwrap();
        assert_eq!(eom.wrt_a, cv.omega3);
        assert_eq!(eom.wrt_b, cv.omega2);
        assert_eq!(eom.wrt_c, cv.omega1);
        assert!(eom_3cs(&m, &Conn3::zero(&m, 5)).unwrap().is_critical());
    }

    #[test]
    fn three_term_action_variation_is_the_eom_pairing_plus_an_exact_term() {
        for name in PAIRED3 {
            let m = module(name);
            let p = pairing(name);
            let mut rng = seeded_rng(26);
            let c = Conn3::random(&mut rng, &m, 6, &density());
            let v = Conn3::random(&mut rng, &m, 6, &density());
            assert!(action_variation_residual3(&m, &p, &c, &v).unwrap().is_zero(), "{name}");
        }
    }

    #[test]
    fn three_term_invariant_polynomial_is_closed_on_every_paired_module() {
        for name in PAIRED3 {
            let m = module(name);
            let p = pairing(name);
            let mut rng = seeded_rng(47);
            let c = Conn3::random(&mut rng, &m, 7, &density());
            assert!(chern3_closure_residual(&m, &p, &c).unwrap().is_zero(), "{name}");
        }
    }

    #[test]
    fn three_term_invariant_polynomial_is_gauge_invariant() {
        for name in PAIRED3 {
            let m = module(name);
            let p = pairing(name);
            let n_vars = if name == "nil3" { 7 } else { 6 };
            let mut rng = seeded_rng(58);
            let c = Conn3::random(&mut rng, &m, n_vars, &density());
            let params = GaugeParams::random(&mut rng, &m, n_vars, &density()).unwrap();
            assert!(chern3_invariance_residual(&m, &p, &params, &c).unwrap().is_zero(), "{name}");
        }
    }

    #[test]
    fn three_term_transgression_is_exact() {
        for name in PAIRED3 {
            let m = module(name);
            let p = pairing(name);
            let mut rng = seeded_rng(62);
            let c0 = Conn3::random(&mut rng, &m, 6, &density());
            let c1 = Conn3::random(&mut rng, &m, 6, &density());
            let tg = chern_weil3(&m, &p, &c0, &c1).unwrap();
            assert!(tg.residual.is_zero(), "{name}");
        }
    }

    #[test]
    fn three_term_transgression_from_zero_is_the_raw_lagrangian() {
        let m = module("nil3");
        let p = pairing("nil3");
        let mut rng = seeded_rng(69);
        let c = Conn3::random(&mut rng, &m, 6, &density());
        let tg = chern_weil3(&m, &p, &Conn3::zero(&m, 6), &c).unwrap();
        let l = lagr_3cs(&m, &p, &c).unwrap();
        assert!(tg.q.sub(&l.raw).unwrap().is_zero());
        // Termwise display of the same transgression:
        // <A, dC + (2/3) A |> C + (2/3) B {,} B>_gl
        // + <dA + (2/3) A^A - alpha(B), C>_gl
        // + <B, dB + (2/3) A |> B - beta(C)>_h.
        let t23 = ratq(2, 3);
        let first_inner = av_add(
            &av_add(&av_d(&c.c), &av_scale(&av_wedge_action(&m, &c.a, &c.c).unwrap(), &t23)).unwrap(),
            &av_scale(&av_wedge_lift(&m, &c.b, &c.b).unwrap(), &t23),
        )
        .unwrap();
        let second_lead = av_sub(
            &av_add(&av_d(&c.a), &av_scale(&av_square(&m, &c.a).unwrap(), &t23)).unwrap(),
            &av_alpha(&m, &c.b).unwrap(),
        )
        .unwrap();
        let third_inner = av_sub(
            &av_add(&av_d(&c.b), &av_scale(&av_wedge_action(&m, &c.a, &c.b).unwrap(), &t23)).unwrap(),
            &av_beta(&m, &c.c).unwrap(),
        )
        .unwrap();
        let want = pair_forms(PairKind::GL, &p, &c.a, &first_inner)
            .unwrap()
            .add(&pair_forms(PairKind::GL, &p, &second_lead, &c.c).unwrap())
            .unwrap()
            .add(&pair_forms(PairKind::H, &p, &c.b, &third_inner).unwrap())
            .unwrap();
        assert!(tg.q.sub(&want).unwrap().is_zero());
    }

    #[test]
    fn three_term_expansion_route_matches_the_symbolic_route() {
        for name in ["nil3", "heis_sp"] {
            let m = module(name);
            let p = pairing(name);
            let mut rng = seeded_rng(83);
            let c0 = Conn3::random(&mut rng, &m, 6, &density());
            let c1 = Conn3::random(&mut rng, &m, 6, &density());
            let route1 = chern_weil3(&m, &p, &c0, &c1).unwrap();
            let route2 = chern_weil3_expansion(&m, &p, &c0, &c1).unwrap();
            assert!(route2.q.sub(&route1.q).unwrap().is_zero(), "{name}");
            assert!(route2.residual.is_zero(), "{name}");
        }
    }

    #[test]
    fn three_term_invariant_polynomial_varies_by_an_exact_term() {
        for name in PAIRED3 {
            let m = module(name);
            let p = pairing(name);
            let mut rng = seeded_rng(95);
            let c = Conn3::random(&mut rng, &m, 6, &density());
            let v = Conn3::random(&mut rng, &m, 6, &density());
            assert!(variation_residual3(&m, &p, &c, &v).unwrap().is_zero(), "{name}");
        }
    }

    #[test]
    fn empty_top_layer_reduces_the_three_term_theory_to_the_middle_pairing() {
        let (m, p) = two_layer_module();
        let mut rng = seeded_rng(31);
        let a = av_random(&mut rng, Slot::G, 2, 6, 1, &density());
        let b = av_random(&mut rng, Slot::H, 2, 6, 2, &density());
        let c = Conn3::new(&m, a, b.clone(), AVForm::zero(Slot::L, 0, 6, 3)).unwrap();
        let l = lagr_3cs(&m, &p, &c).unwrap();
        // With an empty top layer the lagrangian is the middle-layer pairing
        // <B, Omega2>_h alone; here Omega2 = dB.
        let want = pair_forms(PairKind::H, &p, &b, &av_d(&b)).unwrap();
        assert!(l.reduced.sub(&want).unwrap().is_zero());
        assert!(l.residual().unwrap().is_zero());
        let cv = curvature3(&m, &c).unwrap();
        let p3 = second_chern3(&p, &cv).unwrap();
        let want_p = pair_forms(PairKind::H, &p, &cv.omega2, &cv.omega2).unwrap();
        assert!(p3.sub(&want_p).unwrap().is_zero());
        assert!(!p3.is_zero());
        let tg = chern_weil3(&m, &p, &Conn3::zero(&m, 6), &c).unwrap();
        assert!(tg.residual.is_zero());
    }

    #[test]
    fn middle_pairing_contributes_to_the_invariant_polynomial() {
        // The middle term <Omega2, Omega2>_h survives precisely because the
        // middle pairing is antisymmetric; a symmetric pairing of an odd form
        // with itself would cancel identically.
        let m = module("heis_sp");
        let p = pairing("heis_sp");
        let mut rng = seeded_rng(99);
        let c = Conn3::random(&mut rng, &m, 6, &density());
        let cv = curvature3(&m, &c).unwrap();
        let middle = pair_forms(PairKind::H, &p, &cv.omega2, &cv.omega2).unwrap();
        assert!(!middle.is_zero());
    }

    // ----- action values -----

    #[test]
    fn ordinary_action_matches_a_hand_computed_value() {
        // A = x1 dx2 e1 + dx3 e2 + x2 dx1 e3 on the rotation algebra with the
        // identity pairing: <A,dA> cancels and the cubic term integrates to
        // 2 * x1 x2 over the unit cube, i.e. 1/2.
        let m = module("adjoint");
        let p = pairing("adjoint");
        let n = 3;
        let comps = vec![
            sf(x(n, 0)).wedge(&dx(n, 1)).unwrap(),
            dx(n, 2),
            sf(x(n, 1)).wedge(&dx(n, 0)).unwrap(),
        ];
        let a = AVForm::new(Slot::G, n, 1, comps).unwrap();
        let cfg = ActionConfig::new(ratq(5, 3)).unwrap();
        let v = action_cs(&m, &p, &a, &cfg).unwrap();
        assert_eq!(v.integral, ratq(1, 2));
        assert_eq!(v.coefficient(), ratq(5, 6));
        assert_eq!(v.to_string(), "(5/6) / (4*pi)");
    }

    #[test]
    fn two_term_action_matches_a_hand_computed_value() {
        // On the one-dimensional identity module over four variables with
        // A = x4 dx1 X and B = x1 x2 dx2^dx3 Y:
        // <2F - alpha(B), B> = -2 x1 x2 vol, which integrates to -1/2.
        let m = module("dim1");
        let p = pairing("dim1");
        let n = 4;
        let a = AVForm::single(Slot::G, 1, 0, sf(x(n, 3)).wedge(&dx(n, 0)).unwrap());
        let b = AVForm::single(
            Slot::H,
            1,
            0,
            sf(RatPoly::mul(&x(n, 0), &x(n, 1)).unwrap())
                .wedge(&dx(n, 1))
                .unwrap()
                .wedge(&dx(n, 2))
                .unwrap(),
        );
        let c = Conn2::new(&m, a, b).unwrap();
        let v = action_2cs(&m, &p, &c, &ActionConfig::default()).unwrap();
        assert_eq!(v.integral, ratq(-1, 2));
        let scaled = action_2cs(&m, &p, &c, &ActionConfig::new(rat(3)).unwrap()).unwrap();
        assert_eq!(scaled.coefficient(), ratq(-3, 2));
    }

    #[test]
    fn three_term_action_matches_a_hand_computed_value() {
        // On the fully abelian module over five variables with
        // A = x5 dx1 e1, C = x2 dx2^dx3^dx4 z1,
        // B = x4 dx1^dx2 u1 + x3 dx4^dx5 u2:
        // <2dA, C>_gl integrates to 1 and <B, dB>_h to 1/2.
        let m = module("abelian");
        let p = pairing("abelian");
        let n = 5;
        let a = AVForm::single(Slot::G, 2, 0, sf(x(n, 4)).wedge(&dx(n, 0)).unwrap());
        let b = AVForm::new(
            Slot::H,
            n,
            2,
            vec![
                sf(x(n, 3)).wedge(&dx(n, 0)).unwrap().wedge(&dx(n, 1)).unwrap(),
                sf(x(n, 2)).wedge(&dx(n, 3)).unwrap().wedge(&dx(n, 4)).unwrap(),
            ],
        )
        .unwrap();
        let cc = AVForm::single(
            Slot::L,
            2,
            0,
            sf(x(n, 1)).wedge(&dx(n, 1)).unwrap().wedge(&dx(n, 2)).unwrap().wedge(&dx(n, 3)).unwrap(),
        );
        let c = Conn3::new(&m, a, b, cc).unwrap();
        let v = action_3cs(&m, &p, &c, &ActionConfig::default()).unwrap();
        assert_eq!(v.integral, ratq(3, 2));
    }

    #[test]
    fn action_requires_a_top_degree_lagrangian() {
        let m = module("dim1");
        let p = pairing("dim1");
        let n = 5;
        let a = AVForm::single(Slot::G, 1, 0, sf(x(n, 3)).wedge(&dx(n, 0)).unwrap());
        let b = AVForm::single(
            Slot::H,
            1,
            0,
            sf(x(n, 0)).wedge(&dx(n, 1)).unwrap().wedge(&dx(n, 2)).unwrap(),
        );
        let c = Conn2::new(&m, a, b).unwrap();
        let err = action_2cs(&m, &p, &c, &ActionConfig::default()).unwrap_err();
        assert_eq!(err, Error::DegreeMismatch(5, 4));
    }

    #[test]
    fn action_config_rejects_a_zero_coupling() {
        assert!(matches!(ActionConfig::new(rat(0)), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn action_scales_linearly_in_the_coupling() {
        let m = module("dim1");
        let p = pairing("dim1");
        let mut rng = seeded_rng(12);
        let c = Conn2::random(&mut rng, &m, 4, &density());
        let base = action_2cs(&m, &p, &c, &ActionConfig::default()).unwrap();
        let scaled = action_2cs(&m, &p, &c, &ActionConfig::new(ratq(-7, 2)).unwrap()).unwrap();
        assert_eq!(scaled.coefficient(), base.integral.clone() * ratq(-7, 2));
        assert_eq!(base.kappa, rat(1));
    }

    #[test]
    fn invariant_family_endpoints_are_the_invariant_polynomials() {
        let m = module("heis_coadjoint");
        let p = pairing("heis_coadjoint");
        let mut rng = seeded_rng(17);
        let c0 = Conn2::random(&mut rng, &m, 6, &density());
        let c1 = Conn2::random(&mut rng, &m, 6, &density());
        let fam = invariant_family2(&m, &p, &c0, &c1).unwrap();
        let p0 = second_chern2(&p, &curvature2(&m, &c0).unwrap()).unwrap();
        let p1 = second_chern2(&p, &curvature2(&m, &c1).unwrap()).unwrap();
        assert!(fam.eval(&rat(0)).unwrap().sub(&p0).unwrap().is_zero());
        assert!(fam.eval(&rat(1)).unwrap().sub(&p1).unwrap().is_zero());
    }
}
