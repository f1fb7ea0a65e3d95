//! Algebra-valued differential forms. An AVForm is a form with coefficients
//! in one layer of a 2-crossed module, stored as one scalar form per basis
//! element of that layer. All the composite wedge operations are bilinear
//! expansions of the structure tensors through the scalar wedge.

use std::fmt;

use num_traits::Zero;

use crate::algebra::{Bilinear, D2CModule};
use crate::error::{Error, Result};
use crate::pairing::PairingData;
use crate::rat::{ratq, Rat};
use crate::rng::{random_form, Density, EngineRng};
use crate::sform::ScalarForm;

/// The layer of the module a form takes values in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    G,
    H,
    L,
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Slot::G => "g",
            Slot::H => "h",
            Slot::L => "l",
        })
    }
}

impl Slot {
    pub fn dim(&self, m: &D2CModule) -> usize {
        match self {
            Slot::G => m.g.dim,
            Slot::H => m.h.dim,
            Slot::L => m.l.dim,
        }
    }
}

/// A differential form with values in one layer of the module:
/// A = sum_a A^a e_a with each A^a a scalar form.
#[derive(Debug, Clone)]
pub struct AVForm {
    pub slot: Slot,
    pub n_vars: usize,
    pub degree: i64,
    pub comps: Vec<ScalarForm>,
}

impl AVForm {
    pub fn zero(slot: Slot, dim: usize, n_vars: usize, degree: i64) -> Self {
        AVForm { slot, n_vars, degree, comps: vec![ScalarForm::zero(n_vars, degree); dim] }
    }

    /// Builds a form from components, enforcing the shared n_vars and degree
    /// invariant (zero components of any recorded degree are accepted).
    pub fn new(slot: Slot, n_vars: usize, degree: i64, comps: Vec<ScalarForm>) -> Result<Self> {
        for c in &comps {
            if c.n_vars() != n_vars {
                return Err(Error::VarMismatch(n_vars, c.n_vars()));
            }
            if !c.is_zero() && c.degree() != degree {
                return Err(Error::DegreeMismatch(degree, c.degree()));
            }
        }
        Ok(AVForm { slot, n_vars, degree, comps })
    }

    /// The form `sf * e_index`.
    pub fn single(slot: Slot, dim: usize, index: usize, sf: ScalarForm) -> Self {
        let mut out = AVForm::zero(slot, dim, sf.n_vars(), sf.degree());
        out.comps[index] = sf;
        out
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(ScalarForm::is_zero)
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }
}

impl PartialEq for AVForm {
    fn eq(&self, other: &Self) -> bool {
        self.slot == other.slot
            && self.n_vars == other.n_vars
            && self.comps.len() == other.comps.len()
            && self.comps.iter().zip(&other.comps).all(|(a, b)| a == b)
    }
}

impl fmt::Display for AVForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.comps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*{}_{k}", self.slot)?;
            first = false;
        }
        Ok(())
    }
}

fn expect_slot(a: &AVForm, want: Slot) -> Result<()> {
    if a.slot == want {
        Ok(())
    } else {
        Err(Error::SlotMismatch { expected: want.to_string(), found: a.slot.to_string() })
    }
}

fn expect_dim(a: &AVForm, dim: usize) -> Result<()> {
    if a.comps.len() == dim {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!(
            "{}-valued form has {} components, module layer has dimension {}",
            a.slot,
            a.comps.len(),
            dim
        )))
    }
}

fn expect_same_shape(a: &AVForm, b: &AVForm) -> Result<()> {
    expect_slot(b, a.slot)?;
    if a.comps.len() != b.comps.len() {
        return Err(Error::DimensionMismatch(format!(
            "component counts differ: {} vs {}",
            a.comps.len(),
            b.comps.len()
        )));
    }
    if a.n_vars != b.n_vars {
        return Err(Error::VarMismatch(a.n_vars, b.n_vars));
    }
    Ok(())
}

/// Componentwise exterior derivative.
pub fn av_d(a: &AVForm) -> AVForm {
    AVForm {
        slot: a.slot,
        n_vars: a.n_vars,
        degree: a.degree + 1,
        comps: a.comps.iter().map(ScalarForm::d).collect(),
    }
}

pub fn av_add(a: &AVForm, b: &AVForm) -> Result<AVForm> {
    expect_same_shape(a, b)?;
    let comps = a.comps.iter().zip(&b.comps).map(|(x, y)| x.add(y)).collect::<Result<_>>()?;
    let degree = if a.is_zero() { b.degree } else { a.degree };
    AVForm::new(a.slot, a.n_vars, degree, comps)
}

pub fn av_sub(a: &AVForm, b: &AVForm) -> Result<AVForm> {
    av_add(a, &av_neg(b))
}

pub fn av_neg(a: &AVForm) -> AVForm {
    AVForm {
        slot: a.slot,
        n_vars: a.n_vars,
        degree: a.degree,
        comps: a.comps.iter().map(ScalarForm::neg).collect(),
    }
}

pub fn av_scale(a: &AVForm, s: &Rat) -> AVForm {
    AVForm {
        slot: a.slot,
        n_vars: a.n_vars,
        degree: a.degree,
        comps: a.comps.iter().map(|c| c.scale(s)).collect(),
    }
}

/// Core bilinear expansion: (A wedge^phi B)^k = sum_{i,j} phi^k_{ij} A^i ^ B^j
/// where `table[i][j]` holds the coefficient vector of phi(e_i, f_j).
fn wedge_bilinear(
    table: &[Vec<Vec<Rat>>],
    out_slot: Slot,
    out_dim: usize,
    a: &AVForm,
    b: &AVForm,
) -> Result<AVForm> {
    if a.n_vars != b.n_vars {
        return Err(Error::VarMismatch(a.n_vars, b.n_vars));
    }
    let degree = a.degree + b.degree;
    let mut comps = vec![ScalarForm::zero(a.n_vars, degree); out_dim];
    for (i, ai) in a.comps.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.comps.iter().enumerate() {
            if bj.is_zero() || table[i][j].iter().all(Zero::is_zero) {
                continue;
            }
            let w = ai.wedge(bj)?;
            for (k, coeff) in table[i][j].iter().enumerate() {
                if !coeff.is_zero() {
                    comps[k] = comps[k].add(&w.scale(coeff))?;
                }
            }
        }
    }
    AVForm::new(out_slot, a.n_vars, degree, comps)
}

/// A1 wedge^[,] A2, defined slotwise with the bracket of the layer both
/// forms live in.
pub fn av_wedge_bracket(m: &D2CModule, a: &AVForm, b: &AVForm) -> Result<AVForm> {
    expect_slot(b, a.slot)?;
    let la = match a.slot {
        Slot::G => &m.g,
        Slot::H => &m.h,
        Slot::L => &m.l,
    };
    expect_dim(a, la.dim)?;
    expect_dim(b, la.dim)?;
    wedge_bilinear(&la.bracket, a.slot, la.dim, a, b)
}

/// A wedge^phi B for a caller-supplied bilinear product on the input layer.
pub fn av_wedge_with(phi: &Bilinear, out_slot: Slot, a: &AVForm, b: &AVForm) -> Result<AVForm> {
    expect_dim(a, phi.in_dim)?;
    expect_dim(b, phi.in_dim)?;
    wedge_bilinear(&phi.table, out_slot, phi.out_dim, a, b)
}

/// A wedge^|> P for a g-valued A and an h- or l-valued P.
pub fn av_wedge_action(m: &D2CModule, a: &AVForm, p: &AVForm) -> Result<AVForm> {
    expect_slot(a, Slot::G)?;
    expect_dim(a, m.g.dim)?;
    match p.slot {
        Slot::H => {
            expect_dim(p, m.h.dim)?;
            wedge_bilinear(&m.act_h.ops, Slot::H, m.h.dim, a, p)
        }
        Slot::L => {
            expect_dim(p, m.l.dim)?;
            wedge_bilinear(&m.act_l.ops, Slot::L, m.l.dim, a, p)
        }
        Slot::G => Err(Error::SlotMismatch { expected: "h or l".into(), found: "g".into() }),
    }
}

/// B wedge^{,} B' through the lifting tensor of the module.
pub fn av_wedge_lift(m: &D2CModule, b1: &AVForm, b2: &AVForm) -> Result<AVForm> {
    expect_slot(b1, Slot::H)?;
    expect_slot(b2, Slot::H)?;
    expect_dim(b1, m.h.dim)?;
    expect_dim(b2, m.h.dim)?;
    wedge_bilinear(&m.lift.table, Slot::L, m.l.dim, b1, b2)
}

/// B wedge^<<,>> B' through the Peiffer commutator
/// <<Y1,Y2>> = [Y1,Y2] - alpha(Y1) |> Y2.
pub fn av_wedge_peiffer(m: &D2CModule, b1: &AVForm, b2: &AVForm) -> Result<AVForm> {
    expect_slot(b1, Slot::H)?;
    expect_slot(b2, Slot::H)?;
    expect_dim(b1, m.h.dim)?;
    expect_dim(b2, m.h.dim)?;
    let nh = m.h.dim;
    let table: Vec<Vec<Vec<Rat>>> = (0..nh)
        .map(|a| (0..nh).map(|b| m.peiffer_commutator(&m.h.basis(a), &m.h.basis(b))).collect())
        .collect();
    wedge_bilinear(&table, Slot::H, nh, b1, b2)
}

/// B wedge^|>' C through the induced action Y |>' Z = -{beta(Z), Y}.
pub fn av_wedge_action_prime(m: &D2CModule, b: &AVForm, c: &AVForm) -> Result<AVForm> {
    expect_slot(b, Slot::H)?;
    expect_slot(c, Slot::L)?;
    expect_dim(b, m.h.dim)?;
    expect_dim(c, m.l.dim)?;
    let table: Vec<Vec<Vec<Rat>>> = (0..m.h.dim)
        .map(|a| (0..m.l.dim).map(|z| m.action_prime(&m.h.basis(a), &m.l.basis(z))).collect())
        .collect();
    wedge_bilinear(&table, Slot::L, m.l.dim, b, c)
}

fn push_linear(map_cols: &[Vec<Rat>], out_slot: Slot, out_dim: usize, a: &AVForm) -> Result<AVForm> {
    let mut comps = vec![ScalarForm::zero(a.n_vars, a.degree); out_dim];
    for (src, c) in a.comps.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (dst, coeff) in map_cols[src].iter().enumerate() {
            if !coeff.is_zero() {
                comps[dst] = comps[dst].add(&c.scale(coeff))?;
            }
        }
    }
    AVForm::new(out_slot, a.n_vars, a.degree, comps)
}

/// alpha pushed to forms: alpha(B) = sum_a B^a alpha(Y_a).
pub fn av_alpha(m: &D2CModule, b: &AVForm) -> Result<AVForm> {
    expect_slot(b, Slot::H)?;
    expect_dim(b, m.h.dim)?;
    push_linear(&m.alpha.cols, Slot::G, m.g.dim, b)
}

/// beta pushed to forms: beta(C) = sum_a C^a beta(Z_a).
pub fn av_beta(m: &D2CModule, c: &AVForm) -> Result<AVForm> {
    expect_slot(c, Slot::L)?;
    expect_dim(c, m.l.dim)?;
    push_linear(&m.beta.cols, Slot::H, m.h.dim, c)
}

/// The square A ^ A = 1/2 A wedge^[,] A, defined only for odd-degree forms
/// (for even degree every term cancels and the notation is never needed).
pub fn av_square(m: &D2CModule, a: &AVForm) -> Result<AVForm> {
    if a.degree % 2 == 0 {
        return Err(Error::BadDegree(a.degree));
    }
    Ok(av_scale(&av_wedge_bracket(m, a, a)?, &ratq(1, 2)))
}

/// Which invariant form a scalar pairing of forms goes through.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    G,
    GH,
    H,
    GL,
}

impl PairKind {
    fn slots(&self) -> (Slot, Slot) {
        match self {
            PairKind::G => (Slot::G, Slot::G),
            PairKind::GH => (Slot::G, Slot::H),
            PairKind::H => (Slot::H, Slot::H),
            PairKind::GL => (Slot::G, Slot::L),
        }
    }

    fn label(&self) -> &'static str {
        match self {
            PairKind::G => "pair_g",
            PairKind::GH => "pair_gh",
            PairKind::H => "pair_h",
            PairKind::GL => "pair_gl",
        }
    }
}

/// <P, Q> = sum_{a,b} P^a ^ Q^b <e_a, e_b>: the scalar form obtained by
/// pairing coefficients and wedging components, with no extra sign.
pub fn pair_forms(kind: PairKind, pairing: &PairingData, p: &AVForm, q: &AVForm) -> Result<ScalarForm> {
    let (sp, sq) = kind.slots();
    expect_slot(p, sp)?;
    expect_slot(q, sq)?;
    let matrix = match kind {
        PairKind::G => &pairing.pair_g,
        PairKind::GH => &pairing.pair_gh,
        PairKind::H => &pairing.pair_h,
        PairKind::GL => &pairing.pair_gl,
    };
    let matrix = matrix.as_ref().ok_or_else(|| Error::MissingPairing(kind.label().to_string()))?;
    if matrix.rows != p.comps.len() || matrix.cols != q.comps.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} is {}x{}, forms have {} and {} components",
            kind.label(),
            matrix.rows,
            matrix.cols,
            p.comps.len(),
            q.comps.len()
        )));
    }
    if p.n_vars != q.n_vars {
        return Err(Error::VarMismatch(p.n_vars, q.n_vars));
    }
    let mut out = ScalarForm::zero(p.n_vars, p.degree + q.degree);
    for (a, pa) in p.comps.iter().enumerate() {
        if pa.is_zero() {
            continue;
        }
        for (b, qb) in q.comps.iter().enumerate() {
            if qb.is_zero() || matrix.data[a][b].is_zero() {
                continue;
            }
            out = out.add(&pa.wedge(qb)?.scale(&matrix.data[a][b]))?;
        }
    }
    Ok(out)
}

/// Seeded random form with values in the chosen layer.
pub fn av_random(
    rng: &mut EngineRng,
    slot: Slot,
    dim: usize,
    n_vars: usize,
    degree: i64,
    density: &Density,
) -> AVForm {
    let comps = (0..dim).map(|_| random_form(rng, n_vars, degree, density)).collect();
    AVForm { slot, n_vars, degree, comps }
}
