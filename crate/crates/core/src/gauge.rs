//! Higher connections and curvatures: 2- and 3-connections, curvature and
//! Bianchi residuals, gauge transformations driven by nilpotent group
//! exponentials, and the bridge expressing both connection levels as
//! generalized connections over one or two odd symbols.

use num_traits::Zero;

use crate::algebra::D2CModule;
use crate::avform::{
    av_add, av_alpha, av_beta, av_d, av_random, av_square, av_sub, av_wedge_action,
    av_wedge_action_prime, av_wedge_bracket, av_wedge_lift, AVForm, Slot,
};
use crate::error::{Error, Result};
use crate::genform::{
    default_k, default_ks, g1_add, g1_bracket, g1_d, g1_scale, g1_sub, g2_add, g2_bracket, g2_d,
    g2_scale, g2_sub, GenForm1, GenForm2,
};
use crate::linalg::PolyMatrix;
use crate::poly::RatPoly;
use crate::rat::{inv_factorial, rat, ratq, Rat};
use crate::rng::{Density, EngineRng};
use crate::sform::ScalarForm;

fn expect_form(f: &AVForm, slot: Slot, dim: usize, degree: i64) -> Result<()> {
    if f.slot != slot {
        return Err(Error::SlotMismatch { expected: slot.to_string(), found: f.slot.to_string() });
    }
    if f.dim() != dim {
        return Err(Error::DimensionMismatch(format!(
            "{}-valued form has {} components, layer has dimension {dim}",
            slot,
            f.dim()
        )));
    }
    if !f.is_zero() && f.degree != degree {
        return Err(Error::DegreeMismatch(degree, f.degree));
    }
    Ok(())
}

/// A 2-connection: a g-valued 1-form together with an h-valued 2-form.
#[derive(Debug, Clone, PartialEq)]
pub struct Conn2 {
    pub a: AVForm,
    pub b: AVForm,
}

impl Conn2 {
    pub fn new(m: &D2CModule, a: AVForm, b: AVForm) -> Result<Self> {
        expect_form(&a, Slot::G, m.g.dim, 1)?;
        expect_form(&b, Slot::H, m.h.dim, 2)?;
        if a.n_vars != b.n_vars {
            return Err(Error::VarMismatch(a.n_vars, b.n_vars));
        }
        Ok(Conn2 { a, b })
    }

    pub fn zero(m: &D2CModule, n_vars: usize) -> Self {
        Conn2 {
            a: AVForm::zero(Slot::G, m.g.dim, n_vars, 1),
            b: AVForm::zero(Slot::H, m.h.dim, n_vars, 2),
        }
    }

    pub fn random(rng: &mut EngineRng, m: &D2CModule, n_vars: usize, density: &Density) -> Self {
        Conn2 {
            a: av_random(rng, Slot::G, m.g.dim, n_vars, 1, density),
            b: av_random(rng, Slot::H, m.h.dim, n_vars, 2, density),
        }
    }

    pub fn n_vars(&self) -> usize {
        self.a.n_vars
    }
}

/// A 3-connection: a 2-connection together with an l-valued 3-form.
#[derive(Debug, Clone, PartialEq)]
pub struct Conn3 {
    pub a: AVForm,
    pub b: AVForm,
    pub c: AVForm,
}

impl Conn3 {
    pub fn new(m: &D2CModule, a: AVForm, b: AVForm, c: AVForm) -> Result<Self> {
        expect_form(&a, Slot::G, m.g.dim, 1)?;
        expect_form(&b, Slot::H, m.h.dim, 2)?;
        expect_form(&c, Slot::L, m.l.dim, 3)?;
        if a.n_vars != b.n_vars || a.n_vars != c.n_vars {
            return Err(Error::VarMismatch(a.n_vars, b.n_vars.max(c.n_vars)));
        }
        Ok(Conn3 { a, b, c })
    }

    pub fn zero(m: &D2CModule, n_vars: usize) -> Self {
        Conn3 {
            a: AVForm::zero(Slot::G, m.g.dim, n_vars, 1),
            b: AVForm::zero(Slot::H, m.h.dim, n_vars, 2),
            c: AVForm::zero(Slot::L, m.l.dim, n_vars, 3),
        }
    }

    pub fn random(rng: &mut EngineRng, m: &D2CModule, n_vars: usize, density: &Density) -> Self {
        Conn3 {
            a: av_random(rng, Slot::G, m.g.dim, n_vars, 1, density),
            b: av_random(rng, Slot::H, m.h.dim, n_vars, 2, density),
            c: av_random(rng, Slot::L, m.l.dim, n_vars, 3, density),
        }
    }

    pub fn n_vars(&self) -> usize {
        self.a.n_vars
    }

    /// The underlying 2-connection (drops the top-layer form).
    pub fn truncate(&self) -> Conn2 {
        Conn2 { a: self.a.clone(), b: self.b.clone() }
    }
}

/// Curvature of a 2-connection: a g-valued fake curvature 2-form and an
/// h-valued 3-form.
#[derive(Debug, Clone, PartialEq)]
pub struct Curv2 {
    pub omega1: AVForm,
    pub omega2: AVForm,
}

impl Curv2 {
    pub fn is_fake_flat(&self) -> bool {
        self.omega1.is_zero()
    }

    pub fn is_flat(&self) -> bool {
        self.omega1.is_zero() && self.omega2.is_zero()
    }
}

/// Curvature of a 3-connection: adds the l-valued 4-form to the pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Curv3 {
    pub omega1: AVForm,
    pub omega2: AVForm,
    pub omega3: AVForm,
}

impl Curv3 {
    pub fn is_fake_1_flat(&self) -> bool {
        self.omega1.is_zero()
    }

    pub fn is_fake_flat(&self) -> bool {
        self.omega1.is_zero() && self.omega2.is_zero()
    }

    pub fn is_flat(&self) -> bool {
        self.omega1.is_zero() && self.omega2.is_zero() && self.omega3.is_zero()
    }
}

/// Curvature of a 2-connection:
/// Omega1 = dA + (1/2) A wedge^[,] A - alpha(B), Omega2 = dB + A wedge^|> B.
pub fn curvature2(m: &D2CModule, c: &Conn2) -> Result<Curv2> {
    let omega1 = av_sub(
        &av_add(&av_d(&c.a), &av_square(m, &c.a)?)?,
        &av_alpha(m, &c.b)?,
    )?;
    let omega2 = av_add(&av_d(&c.b), &av_wedge_action(m, &c.a, &c.b)?)?;
    Ok(Curv2 { omega1, omega2 })
}

/// Curvature of a 3-connection: the 2-curvature with Omega2 corrected by
/// -beta(C), plus Omega3 = dC + A wedge^|> C + B wedge^{,} B.
pub fn curvature3(m: &D2CModule, c: &Conn3) -> Result<Curv3> {
    let base = curvature2(m, &c.truncate())?;
    let omega2 = av_sub(&base.omega2, &av_beta(m, &c.c)?)?;
    let omega3 = av_add(
        &av_add(&av_d(&c.c), &av_wedge_action(m, &c.a, &c.c)?)?,
        &av_wedge_lift(m, &c.b, &c.b)?,
    )?;
    Ok(Curv3 { omega1: base.omega1, omega2, omega3 })
}

/// Left-hand sides of the two 2-curvature structure identities. Both vanish
/// exactly whenever the upper layer is an honest crossed module; over a
/// merely pre-crossed layer the h-valued residual equals the symmetrized
/// action term alpha(B) wedge^|> B.
pub fn bianchi2_residual(m: &D2CModule, c: &Conn2) -> Result<(AVForm, AVForm)> {
    let f = curvature2(m, c)?;
    let r1 = av_add(
        &av_add(&av_d(&f.omega1), &av_wedge_bracket(m, &c.a, &f.omega1)?)?,
        &av_alpha(m, &f.omega2)?,
    )?;
    let r2 = av_sub(
        &av_add(&av_d(&f.omega2), &av_wedge_action(m, &c.a, &f.omega2)?)?,
        &av_wedge_action(m, &f.omega1, &c.b)?,
    )?;
    Ok((r1, r2))
}

/// Left-hand sides of the three 3-curvature structure identities; all three
/// vanish exactly on every valid module.
pub fn bianchi3_residual(m: &D2CModule, c: &Conn3) -> Result<(AVForm, AVForm, AVForm)> {
    let f = curvature3(m, c)?;
    let r1 = av_add(
        &av_add(&av_d(&f.omega1), &av_wedge_bracket(m, &c.a, &f.omega1)?)?,
        &av_alpha(m, &f.omega2)?,
    )?;
    let r2 = av_add(
        &av_sub(
            &av_add(&av_d(&f.omega2), &av_wedge_action(m, &c.a, &f.omega2)?)?,
            &av_wedge_action(m, &f.omega1, &c.b)?,
        )?,
        &av_beta(m, &f.omega3)?,
    )?;
    let r3 = av_sub(
        &av_sub(
            &av_sub(
                &av_add(&av_d(&f.omega3), &av_wedge_action(m, &c.a, &f.omega3)?)?,
                &av_wedge_action(m, &f.omega1, &c.c)?,
            )?,
            &av_wedge_lift(m, &c.b, &f.omega2)?,
        )?,
        &av_wedge_lift(m, &f.omega2, &c.b)?,
    )?;
    Ok((r1, r2, r3))
}

/// Matrix of a linear operator attached to a polynomial-valued algebra
/// element: column `a` of the result holds sum_i x^i op(e_i, f_a).
fn operator_matrix(ops: &[Vec<Vec<Rat>>], x: &AVForm, v_dim: usize) -> PolyMatrix {
    let mut out = PolyMatrix::zeros(v_dim, x.n_vars);
    for (i, xi) in x.comps.iter().enumerate() {
        let Some(p) = xi.component(&[]) else { continue };
        for a in 0..v_dim {
            for (j, coeff) in ops[i][a].iter().enumerate() {
                if !coeff.is_zero() {
                    out.data[j][a] = out.data[j][a].add(&p.scale(coeff)).expect("shared n_vars");
                }
            }
        }
    }
    out
}

/// exp of a nilpotent polynomial matrix whose power `idx` vanishes.
fn exp_poly(m: &PolyMatrix, n_vars: usize, idx: usize) -> PolyMatrix {
    let mut out = PolyMatrix::identity(m.n, n_vars);
    let mut pow = PolyMatrix::identity(m.n, n_vars);
    for k in 1..idx {
        pow = pow.mul(m);
        out = out.add(&pow.scale(&inv_factorial(k as u32)));
    }
    out
}

fn apply_poly_matrix(op: &PolyMatrix, slot: Slot, a: &AVForm) -> Result<AVForm> {
    if a.dim() != op.n {
        return Err(Error::DimensionMismatch(format!(
            "operator of size {} applied to a form with {} components",
            op.n,
            a.dim()
        )));
    }
    let mut comps = vec![ScalarForm::zero(a.n_vars, a.degree); op.n];
    for (j, c) in a.comps.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (r, row) in comps.iter_mut().enumerate() {
            let p = &op.data[r][j];
            if p.is_zero() {
                continue;
            }
            *row = row.add(&ScalarForm::from_poly(p.clone()).wedge(c)?)?;
        }
    }
    AVForm::new(slot, a.n_vars, a.degree, comps)
}

fn poly_matrix_is_identity(m: &PolyMatrix, n_vars: usize) -> bool {
    m.data.iter().enumerate().all(|(i, row)| {
        row.iter().enumerate().all(|(j, p)| {
            let want = if i == j { RatPoly::one(n_vars) } else { RatPoly::zero(n_vars) };
            p.sub(&want).map(|d| d.is_zero()).unwrap_or(false)
        })
    })
}

/// A gauge group element g = exp(X) for a polynomial-valued generator X with
/// nilpotent adjoint and action operators. All derived operators are finite
/// exponential sums with exact polynomial entries, cached at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElem {
    n_vars: usize,
    generator: AVForm,
    ad_pos: PolyMatrix,
    ad_neg: PolyMatrix,
    act_h_pos: PolyMatrix,
    act_h_neg: PolyMatrix,
    act_l_pos: PolyMatrix,
    act_l_neg: PolyMatrix,
    maurer: AVForm,
}

/// Exponentiates a g-valued degree-0 generator into a group element. The
/// adjoint and both action operators must be nilpotent over the polynomial
/// ring; the inverse-operator, intertwining, and lifting-equivariance
/// invariants are all verified exactly before the element is returned.
pub fn group_exp(m: &D2CModule, x: &AVForm) -> Result<GroupElem> {
    expect_form(x, Slot::G, m.g.dim, 0)?;
    let n_vars = x.n_vars;
    let ad = operator_matrix(&m.g.bracket, x, m.g.dim);
    let th = operator_matrix(&m.act_h.ops, x, m.h.dim);
    let tl = operator_matrix(&m.act_l.ops, x, m.l.dim);
    let ad_idx = ad.nilpotency_index(m.g.dim + 1).ok_or(Error::NotNilpotent)?;
    let th_idx = th.nilpotency_index(m.h.dim + 1).ok_or(Error::NotNilpotent)?;
    let tl_idx = tl.nilpotency_index(m.l.dim + 1).ok_or(Error::NotNilpotent)?;

    // g^{-1} dg = sum_{n>=0} (-ad_X)^n / (n+1)! applied to dX.
    let neg_ad = ad.scale(&rat(-1));
    let mut op = PolyMatrix::identity(m.g.dim, n_vars);
    let mut pow = PolyMatrix::identity(m.g.dim, n_vars);
    for k in 1..ad_idx {
        pow = pow.mul(&neg_ad);
        op = op.add(&pow.scale(&inv_factorial(k as u32 + 1)));
    }
    let maurer = apply_poly_matrix(&op, Slot::G, &av_d(x))?;

    let elem = GroupElem {
        n_vars,
        generator: x.clone(),
        ad_pos: exp_poly(&ad, n_vars, ad_idx),
        ad_neg: exp_poly(&neg_ad, n_vars, ad_idx),
        act_h_pos: exp_poly(&th, n_vars, th_idx),
        act_h_neg: exp_poly(&th.scale(&rat(-1)), n_vars, th_idx),
        act_l_pos: exp_poly(&tl, n_vars, tl_idx),
        act_l_neg: exp_poly(&tl.scale(&rat(-1)), n_vars, tl_idx),
        maurer,
    };
    elem.verify_invariants(m)?;
    Ok(elem)
}

impl GroupElem {
    pub fn identity(m: &D2CModule, n_vars: usize) -> Self {
        group_exp(m, &AVForm::zero(Slot::G, m.g.dim, n_vars, 0))
            .expect("the zero generator always exponentiates")
    }

    pub fn generator(&self) -> &AVForm {
        &self.generator
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// The g-valued 1-form g^{-1} dg.
    pub fn maurer(&self) -> &AVForm {
        &self.maurer
    }

    /// g A g^{-1} on g-valued forms.
    pub fn adjoint(&self, a: &AVForm) -> Result<AVForm> {
        self.expect_g(a)?;
        apply_poly_matrix(&self.ad_pos, Slot::G, a)
    }

    /// g^{-1} A g on g-valued forms.
    pub fn adjoint_inv(&self, a: &AVForm) -> Result<AVForm> {
        self.expect_g(a)?;
        apply_poly_matrix(&self.ad_neg, Slot::G, a)
    }

    /// g |> P on h- or l-valued forms.
    pub fn act(&self, p: &AVForm) -> Result<AVForm> {
        match p.slot {
            Slot::H => apply_poly_matrix(&self.act_h_pos, Slot::H, p),
            Slot::L => apply_poly_matrix(&self.act_l_pos, Slot::L, p),
            Slot::G => {
                Err(Error::SlotMismatch { expected: "h or l".into(), found: "g".into() })
            }
        }
    }

    /// g^{-1} |> P on h- or l-valued forms.
    pub fn act_inv(&self, p: &AVForm) -> Result<AVForm> {
        match p.slot {
            Slot::H => apply_poly_matrix(&self.act_h_neg, Slot::H, p),
            Slot::L => apply_poly_matrix(&self.act_l_neg, Slot::L, p),
            Slot::G => {
                Err(Error::SlotMismatch { expected: "h or l".into(), found: "g".into() })
            }
        }
    }

    fn expect_g(&self, a: &AVForm) -> Result<()> {
        if a.slot != Slot::G {
            return Err(Error::SlotMismatch { expected: "g".into(), found: a.slot.to_string() });
        }
        Ok(())
    }

    fn verify_invariants(&self, m: &D2CModule) -> Result<()> {
        let fail =
            |law: &str| Error::InvalidInput(format!("group element invariant failed: {law}"));
        let nv = self.n_vars;
        if !poly_matrix_is_identity(&self.ad_pos.mul(&self.ad_neg), nv) {
            return Err(fail("adjoint operators invert each other"));
        }
        if !poly_matrix_is_identity(&self.act_h_pos.mul(&self.act_h_neg), nv) {
            return Err(fail("h-action operators invert each other"));
        }
        if !poly_matrix_is_identity(&self.act_l_pos.mul(&self.act_l_neg), nv) {
            return Err(fail("l-action operators invert each other"));
        }

        // alpha intertwines the exponentiated action with the adjoint:
        // alpha(g |> Y) = Ad_g alpha(Y).
        for a in 0..m.h.dim {
            for r in 0..m.g.dim {
                let mut lhs = RatPoly::zero(nv);
                for b in 0..m.h.dim {
                    if !m.alpha.cols[b][r].is_zero() {
                        lhs = lhs
                            .add(&self.act_h_pos.data[b][a].scale(&m.alpha.cols[b][r]))
                            .expect("shared n_vars");
                    }
                }
                let mut rhs = RatPoly::zero(nv);
                for j in 0..m.g.dim {
                    if !m.alpha.cols[a][j].is_zero() {
                        rhs = rhs
                            .add(&self.ad_pos.data[r][j].scale(&m.alpha.cols[a][j]))
                            .expect("shared n_vars");
                    }
                }
                if !lhs.sub(&rhs).expect("shared n_vars").is_zero() {
                    return Err(fail("alpha intertwines the action with the adjoint"));
                }
            }
        }

        // The lifting is equivariant under the exponentiated action:
        // g |> {Y1, Y2} = {g |> Y1, g |> Y2}.
        for a in 0..m.h.dim {
            for b in 0..m.h.dim {
                for z in 0..m.l.dim {
                    let mut lhs = RatPoly::zero(nv);
                    for (w, coeff) in m.lift.table[a][b].iter().enumerate() {
                        if !coeff.is_zero() {
                            lhs = lhs
                                .add(&self.act_l_pos.data[z][w].scale(coeff))
                                .expect("shared n_vars");
                        }
                    }
                    let mut rhs = RatPoly::zero(nv);
                    for c in 0..m.h.dim {
                        for d in 0..m.h.dim {
                            let coeff = &m.lift.table[c][d][z];
                            if coeff.is_zero() {
                                continue;
                            }
                            let prod = self.act_h_pos.data[c][a]
                                .mul(&self.act_h_pos.data[d][b])
                                .expect("shared n_vars");
                            rhs = rhs.add(&prod.scale(coeff)).expect("shared n_vars");
                        }
                    }
                    if !lhs.sub(&rhs).expect("shared n_vars").is_zero() {
                        return Err(fail("the lifting is equivariant under the action"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Parameters of a general gauge transformation: a group element, an
/// h-valued 1-form, and (for the 3-gauge case) an l-valued 2-form.
#[derive(Debug, Clone)]
pub struct GaugeParams {
    pub g: GroupElem,
    pub phi: AVForm,
    pub psi: AVForm,
}

impl GaugeParams {
    pub fn identity(m: &D2CModule, n_vars: usize) -> Self {
        GaugeParams {
            g: GroupElem::identity(m, n_vars),
            phi: AVForm::zero(Slot::H, m.h.dim, n_vars, 1),
            psi: AVForm::zero(Slot::L, m.l.dim, n_vars, 2),
        }
    }

    pub fn new(m: &D2CModule, g: GroupElem, phi: AVForm, psi: AVForm) -> Result<Self> {
        expect_form(&phi, Slot::H, m.h.dim, 1)?;
        expect_form(&psi, Slot::L, m.l.dim, 2)?;
        if phi.n_vars != g.n_vars() || psi.n_vars != g.n_vars() {
            return Err(Error::VarMismatch(g.n_vars(), phi.n_vars));
        }
        Ok(GaugeParams { g, phi, psi })
    }

    /// Seeded random parameters; fails when the sampled generator is not
    /// nilpotent for this module.
    pub fn random(
        rng: &mut EngineRng,
        m: &D2CModule,
        n_vars: usize,
        density: &Density,
    ) -> Result<Self> {
        let x = av_random(rng, Slot::G, m.g.dim, n_vars, 0, density);
        let g = group_exp(m, &x)?;
        Ok(GaugeParams {
            g,
            phi: av_random(rng, Slot::H, m.h.dim, n_vars, 1, density),
            psi: av_random(rng, Slot::L, m.l.dim, n_vars, 2, density),
        })
    }
}

/// General 2-gauge transformation:
/// A'' = g^{-1} A g + g^{-1} dg + alpha(phi),
/// B'' = g^{-1} |> B + d phi + A'' wedge^|> phi - (1/2) phi wedge^[,] phi.
pub fn gauge2(m: &D2CModule, p: &GaugeParams, c: &Conn2) -> Result<Conn2> {
    if !p.psi.is_zero() {
        return Err(Error::InvalidInput(
            "a 2-gauge transformation carries no degree-2 parameter".into(),
        ));
    }
    let a2 = av_add(
        &av_add(&p.g.adjoint_inv(&c.a)?, p.g.maurer())?,
        &av_alpha(m, &p.phi)?,
    )?;
    let b2 = av_sub(
        &av_add(
            &av_add(&p.g.act_inv(&c.b)?, &av_d(&p.phi))?,
            &av_wedge_action(m, &a2, &p.phi)?,
        )?,
        &av_square(m, &p.phi)?,
    )?;
    Ok(Conn2 { a: a2, b: b2 })
}

/// General 3-gauge transformation: the 2-gauge update on (A, B) with B
/// shifted by -beta(psi), and
/// C-bar = g^{-1} |> C - B-bar wedge^{,} phi + phi wedge^|>' psi
///         - phi wedge^{,} (g^{-1} |> B) - d psi - A-bar wedge^|> psi.
pub fn gauge3(m: &D2CModule, p: &GaugeParams, c: &Conn3) -> Result<Conn3> {
    let abar = av_add(
        &av_add(&p.g.adjoint_inv(&c.a)?, p.g.maurer())?,
        &av_alpha(m, &p.phi)?,
    )?;
    let gb = p.g.act_inv(&c.b)?;
    let bbar = av_sub(
        &av_sub(
            &av_add(
                &av_add(&gb, &av_d(&p.phi))?,
                &av_wedge_action(m, &abar, &p.phi)?,
            )?,
            &av_square(m, &p.phi)?,
        )?,
        &av_beta(m, &p.psi)?,
    )?;
    let cbar = av_sub(
        &av_sub(
            &av_sub(
                &av_add(
                    &av_sub(&p.g.act_inv(&c.c)?, &av_wedge_lift(m, &bbar, &p.phi)?)?,
                    &av_wedge_action_prime(m, &p.phi, &p.psi)?,
                )?,
                &av_wedge_lift(m, &p.phi, &gb)?,
            )?,
            &av_d(&p.psi),
        )?,
        &av_wedge_action(m, &abar, &p.psi)?,
    )?;
    Ok(Conn3 { a: abar, b: bbar, c: cbar })
}

/// Residuals of the 2-curvature transformation law: the transformed
/// curvature minus (g^{-1} Omega1 g, g^{-1} |> Omega2 + Omega1'' wedge^|> phi).
pub fn curvature_transform_check2(
    m: &D2CModule,
    p: &GaugeParams,
    c: &Conn2,
) -> Result<(AVForm, AVForm)> {
    let f = curvature2(m, c)?;
    let ft = curvature2(m, &gauge2(m, p, c)?)?;
    let r1 = av_sub(&ft.omega1, &p.g.adjoint_inv(&f.omega1)?)?;
    let want2 = av_add(
        &p.g.act_inv(&f.omega2)?,
        &av_wedge_action(m, &ft.omega1, &p.phi)?,
    )?;
    let r2 = av_sub(&ft.omega2, &want2)?;
    Ok((r1, r2))
}

/// Residuals of the 3-curvature transformation law: the transformed
/// curvature minus the predicted
/// (g^{-1} Omega1 g,
///  g^{-1} |> Omega2 + Omega1-bar wedge^|> phi,
///  g^{-1} |> Omega3 - Omega2-bar wedge^{,} phi
///    + phi wedge^{,} (g^{-1} |> Omega2) - Omega1-bar wedge^|> psi).
pub fn curvature_transform_check3(
    m: &D2CModule,
    p: &GaugeParams,
    c: &Conn3,
) -> Result<(AVForm, AVForm, AVForm)> {
    let f = curvature3(m, c)?;
    let ft = curvature3(m, &gauge3(m, p, c)?)?;
    let r1 = av_sub(&ft.omega1, &p.g.adjoint_inv(&f.omega1)?)?;
    let gf2 = p.g.act_inv(&f.omega2)?;
    let want2 = av_add(&gf2, &av_wedge_action(m, &ft.omega1, &p.phi)?)?;
    let r2 = av_sub(&ft.omega2, &want2)?;
    let want3 = av_sub(
        &av_add(
            &av_sub(&p.g.act_inv(&f.omega3)?, &av_wedge_lift(m, &ft.omega2, &p.phi)?)?,
            &av_wedge_lift(m, &p.phi, &gf2)?,
        )?,
        &av_wedge_action(m, &ft.omega1, &p.psi)?,
    )?;
    let r3 = av_sub(&ft.omega3, &want3)?;
    Ok((r1, r2, r3))
}

/// A 2-connection as a generalized connection over one odd symbol.
pub fn gconn1(c: &Conn2) -> Result<GenForm1> {
    GenForm1::new(1, c.a.clone(), c.b.clone(), default_k())
}

/// Generalized curvature of the one-symbol connection:
/// F = d A + (1/2) [A, A].
pub fn gcurv1(m: &D2CModule, c: &Conn2) -> Result<GenForm1> {
    let ga = gconn1(c)?;
    g1_add(&g1_d(m, &ga)?, &g1_scale(&g1_bracket(m, &ga, &ga)?, &ratq(1, 2)))
}

/// The one-symbol generalized curvature minus (Omega1 + Omega2 xi);
/// exactly zero for every 2-connection.
pub fn gcurv_check1(m: &D2CModule, c: &Conn2) -> Result<GenForm1> {
    let f = gcurv1(m, c)?;
    let w = curvature2(m, c)?;
    g1_sub(&f, &GenForm1::new(2, w.omega1, w.omega2, default_k())?)
}

/// A 3-connection as a generalized connection over two odd symbols: the
/// h-valued form rides both single symbols and the l-valued form their
/// product.
pub fn gconn2(c: &Conn3) -> Result<GenForm2> {
    let (k1, k2) = default_ks();
    GenForm2::new(1, c.a.clone(), c.b.clone(), c.b.clone(), c.c.clone(), k1, k2)
}

/// Generalized curvature of the two-symbol connection.
pub fn gcurv2(m: &D2CModule, c: &Conn3) -> Result<GenForm2> {
    let ga = gconn2(c)?;
    g2_add(&g2_d(m, &ga)?, &g2_scale(&g2_bracket(m, &ga, &ga)?, &ratq(1, 2)))
}

/// The two-symbol generalized curvature minus its four predicted
/// coefficients (Omega1, Omega2, Omega2 + beta(C), Omega3); exactly zero
/// for every 3-connection.
pub fn gcurv_check2(m: &D2CModule, c: &Conn3) -> Result<GenForm2> {
    let f = gcurv2(m, c)?;
    let w = curvature3(m, c)?;
    let second = av_add(&w.omega2, &av_beta(m, &c.c)?)?;
    let (k1, k2) = default_ks();
    g2_sub(&f, &GenForm2::new(2, w.omega1, w.omega2, second, w.omega3, k1, k2)?)
}

/// Generalized structure residual d F + [A, F] for the one-symbol bridge;
/// its coefficients are the two 2-curvature identities, so it vanishes
/// exactly over a crossed upper layer.
pub fn gbianchi1_residual(m: &D2CModule, c: &Conn2) -> Result<GenForm1> {
    let ga = gconn1(c)?;
    let f = gcurv1(m, c)?;
    g1_add(&g1_d(m, &f)?, &g1_bracket(m, &ga, &f)?)
}

/// Generalized structure residual d F + [A, F] for the two-symbol bridge.
/// The body and first-symbol coefficients vanish on every valid module; the
/// second-symbol coefficient equals -beta(B wedge^{,} B) and the top
/// coefficient equals -B wedge^{,} beta(C), both of which vanish exactly on
/// fine modules.
pub fn gbianchi2_residual(m: &D2CModule, c: &Conn3) -> Result<GenForm2> {
    let ga = gconn2(c)?;
    let f = gcurv2(m, c)?;
    g2_add(&g2_d(m, &f)?, &g2_bracket(m, &ga, &f)?)
}
