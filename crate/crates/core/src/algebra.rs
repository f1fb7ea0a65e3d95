//! Structure-constant models of differential crossed modules and differential
//! 2-crossed modules, together with exact axiom validation and the minimal
//! balancing extensions.
//!
//! All maps are stored over a fixed ordered basis:
//! * a Lie algebra is its bracket table `bracket[i][j] = [e_i, e_j]`,
//! * a linear map stores the image of each source basis vector,
//! * an action stores, per acting basis vector, the images of the target
//!   basis, and
//! * the Peiffer lifting stores `lift[a][b] = {f_a, f_b}`.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rat::{rat_to_string, Rat};

fn vec_zero(dim: usize) -> Vec<Rat> {
    vec![Rat::zero(); dim]
}

fn vec_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn vec_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn vec_neg(a: &[Rat]) -> Vec<Rat> {
    a.iter().map(|x| -x).collect()
}

fn vec_is_zero(a: &[Rat]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// A finite-dimensional Lie algebra as a bracket table over a fixed basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    pub dim: usize,
    /// `bracket[i][j]` is the coefficient vector of `[e_i, e_j]`.
    pub bracket: Vec<Vec<Vec<Rat>>>,
}

impl LieAlgebra {
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra { dim, bracket: vec![vec![vec_zero(dim); dim]; dim] }
    }

    pub fn new(dim: usize, bracket: Vec<Vec<Vec<Rat>>>) -> Self {
        debug_assert_eq!(bracket.len(), dim);
        LieAlgebra { dim, bracket }
    }

    /// Bilinear extension of the bracket table.
    pub fn bracket_vec(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let mut out = vec_zero(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, b) in self.bracket[i][j].iter().enumerate() {
                    if !b.is_zero() {
                        out[k] += &c * b;
                    }
                }
            }
        }
        out
    }

    pub fn basis(&self, i: usize) -> Vec<Rat> {
        let mut v = vec_zero(self.dim);
        v[i] = Rat::from_integer(1.into());
        v
    }
}

/// A linear map between two based vector spaces; `cols[j]` is the image of
/// the j-th source basis vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinMap {
    pub src_dim: usize,
    pub dst_dim: usize,
    pub cols: Vec<Vec<Rat>>,
}

impl LinMap {
    pub fn zero(src_dim: usize, dst_dim: usize) -> Self {
        LinMap { src_dim, dst_dim, cols: vec![vec_zero(dst_dim); src_dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim, dim);
        for j in 0..dim {
            m.cols[j][j] = Rat::from_integer(1.into());
        }
        m
    }

    pub fn new(src_dim: usize, dst_dim: usize, cols: Vec<Vec<Rat>>) -> Self {
        debug_assert_eq!(cols.len(), src_dim);
        debug_assert!(cols.iter().all(|c| c.len() == dst_dim));
        LinMap { src_dim, dst_dim, cols }
    }

    pub fn apply(&self, x: &[Rat]) -> Vec<Rat> {
        debug_assert_eq!(x.len(), self.src_dim);
        let mut out = vec_zero(self.dst_dim);
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for (k, c) in self.cols[j].iter().enumerate() {
                if !c.is_zero() {
                    out[k] += xj * c;
                }
            }
        }
        out
    }
}

/// A bilinear action of one based space on another; `ops[i][a]` is the image
/// of the a-th target basis vector under the i-th acting basis vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Action {
    pub g_dim: usize,
    pub v_dim: usize,
    pub ops: Vec<Vec<Vec<Rat>>>,
}

impl Action {
    pub fn trivial(g_dim: usize, v_dim: usize) -> Self {
        Action { g_dim, v_dim, ops: vec![vec![vec_zero(v_dim); v_dim]; g_dim] }
    }

    pub fn new(g_dim: usize, v_dim: usize, ops: Vec<Vec<Vec<Rat>>>) -> Self {
        debug_assert_eq!(ops.len(), g_dim);
        Action { g_dim, v_dim, ops }
    }

    /// Adjoint action of a Lie algebra on itself.
    pub fn adjoint(la: &LieAlgebra) -> Self {
        let ops = (0..la.dim)
            .map(|i| (0..la.dim).map(|a| la.bracket[i][a].clone()).collect())
            .collect();
        Action { g_dim: la.dim, v_dim: la.dim, ops }
    }

    pub fn apply(&self, x: &[Rat], v: &[Rat]) -> Vec<Rat> {
        debug_assert_eq!(x.len(), self.g_dim);
        debug_assert_eq!(v.len(), self.v_dim);
        let mut out = vec_zero(self.v_dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (a, va) in v.iter().enumerate() {
                if va.is_zero() {
                    continue;
                }
                let c = xi * va;
                for (k, o) in self.ops[i][a].iter().enumerate() {
                    if !o.is_zero() {
                        out[k] += &c * o;
                    }
                }
            }
        }
        out
    }
}

/// A bilinear map V x V -> W over fixed bases; `table[a][b]` is the image of
/// the basis pair (f_a, f_b).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bilinear {
    pub in_dim: usize,
    pub out_dim: usize,
    pub table: Vec<Vec<Vec<Rat>>>,
}

impl Bilinear {
    pub fn zero(in_dim: usize, out_dim: usize) -> Self {
        Bilinear { in_dim, out_dim, table: vec![vec![vec_zero(out_dim); in_dim]; in_dim] }
    }

    pub fn new(in_dim: usize, out_dim: usize, table: Vec<Vec<Vec<Rat>>>) -> Self {
        debug_assert_eq!(table.len(), in_dim);
        Bilinear { in_dim, out_dim, table }
    }

    pub fn apply(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        debug_assert_eq!(x.len(), self.in_dim);
        debug_assert_eq!(y.len(), self.in_dim);
        let mut out = vec_zero(self.out_dim);
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let c = xa * yb;
                for (k, t) in self.table[a][b].iter().enumerate() {
                    if !t.is_zero() {
                        out[k] += &c * t;
                    }
                }
            }
        }
        out
    }
}

/// A differential crossed module `h -> g` with action of g on h.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DCModule {
    pub g: LieAlgebra,
    pub h: LieAlgebra,
    /// alpha: h -> g
    pub alpha: LinMap,
    /// action of g on h
    pub act: Action,
}

/// A differential 2-crossed module `l -> h -> g` with actions of g on h and
/// on l, and the Peiffer lifting `{-,-}: h x h -> l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct D2CModule {
    pub g: LieAlgebra,
    pub h: LieAlgebra,
    pub l: LieAlgebra,
    /// alpha: h -> g
    pub alpha: LinMap,
    /// beta: l -> h
    pub beta: LinMap,
    /// action of g on h
    pub act_h: Action,
    /// action of g on l
    pub act_l: Action,
    /// Peiffer lifting h x h -> l
    pub lift: Bilinear,
}

impl DCModule {
    pub fn is_balanced(&self) -> bool {
        self.g.dim == self.h.dim
    }
}

impl D2CModule {
    pub fn is_balanced(&self) -> bool {
        self.g.dim == self.l.dim
    }

    /// Peiffer commutator `[[Y1, Y2]] = [Y1, Y2] - alpha(Y1) |> Y2`.
    pub fn peiffer_commutator(&self, y1: &[Rat], y2: &[Rat]) -> Vec<Rat> {
        let br = self.h.bracket_vec(y1, y2);
        let acted = self.act_h.apply(&self.alpha.apply(y1), y2);
        vec_sub(&br, &acted)
    }

    /// Induced action of h on l: `Y |>' Z = -{beta(Z), Y}`.
    pub fn action_prime(&self, y: &[Rat], z: &[Rat]) -> Vec<Rat> {
        vec_neg(&self.lift.apply(&self.beta.apply(z), y))
    }

    /// The underlying crossed module `(l, h; beta, |>')` determined by the
    /// lifting; valid whenever the 2-crossed module axioms hold.
    pub fn lower_crossed_module(&self) -> DCModule {
        let ops = (0..self.h.dim)
            .map(|a| {
                (0..self.l.dim)
                    .map(|c| self.action_prime(&self.h.basis(a), &self.l.basis(c)))
                    .collect()
            })
            .collect();
        DCModule {
            g: self.h.clone(),
            h: self.l.clone(),
            alpha: self.beta.clone(),
            act: Action::new(self.h.dim, self.l.dim, ops),
        }
    }

    /// The `(h, g)` layer as a crossed-module candidate. Its Peiffer law is
    /// exactly the fine-ness condition on that layer.
    pub fn upper_layer(&self) -> DCModule {
        DCModule {
            g: self.g.clone(),
            h: self.h.clone(),
            alpha: self.alpha.clone(),
            act: self.act_h.clone(),
        }
    }
}

fn lie_shape(la: &LieAlgebra, label: &str) -> Result<()> {
    let ok = la.bracket.len() == la.dim
        && la.bracket.iter().all(|row| row.len() == la.dim && row.iter().all(|v| v.len() == la.dim));
    if ok {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!("bracket table of {label} is not {0}x{0}x{0}", la.dim)))
    }
}

fn linmap_shape(m: &LinMap, label: &str) -> Result<()> {
    if m.cols.len() == m.src_dim && m.cols.iter().all(|c| c.len() == m.dst_dim) {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!("map {label} is not {}x{}", m.dst_dim, m.src_dim)))
    }
}

fn action_shape(a: &Action, label: &str) -> Result<()> {
    let ok = a.ops.len() == a.g_dim
        && a.ops.iter().all(|per| per.len() == a.v_dim && per.iter().all(|v| v.len() == a.v_dim));
    if ok {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!(
            "action {label} is not {}x{}x{}",
            a.g_dim, a.v_dim, a.v_dim
        )))
    }
}

fn bilinear_shape(b: &Bilinear, label: &str) -> Result<()> {
    let ok = b.table.len() == b.in_dim
        && b.table.iter().all(|r| r.len() == b.in_dim && r.iter().all(|v| v.len() == b.out_dim));
    if ok {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!(
            "bilinear map {label} is not {0}x{0}x{1}",
            b.in_dim, b.out_dim
        )))
    }
}

impl DCModule {
    pub fn check_shapes(&self) -> Result<()> {
        lie_shape(&self.g, "g")?;
        lie_shape(&self.h, "h")?;
        linmap_shape(&self.alpha, "alpha")?;
        action_shape(&self.act, "act_gh")?;
        if self.alpha.src_dim != self.h.dim || self.alpha.dst_dim != self.g.dim {
            return Err(Error::DimensionMismatch("alpha must map h to g".into()));
        }
        if self.act.g_dim != self.g.dim || self.act.v_dim != self.h.dim {
            return Err(Error::DimensionMismatch("act_gh must act g on h".into()));
        }
        Ok(())
    }
}

impl D2CModule {
    pub fn check_shapes(&self) -> Result<()> {
        lie_shape(&self.g, "g")?;
        lie_shape(&self.h, "h")?;
        lie_shape(&self.l, "l")?;
        linmap_shape(&self.alpha, "alpha")?;
        linmap_shape(&self.beta, "beta")?;
        action_shape(&self.act_h, "act_gh")?;
        action_shape(&self.act_l, "act_gl")?;
        bilinear_shape(&self.lift, "peiffer")?;
        if self.alpha.src_dim != self.h.dim || self.alpha.dst_dim != self.g.dim {
            return Err(Error::DimensionMismatch("alpha must map h to g".into()));
        }
        if self.beta.src_dim != self.l.dim || self.beta.dst_dim != self.h.dim {
            return Err(Error::DimensionMismatch("beta must map l to h".into()));
        }
        if self.act_h.g_dim != self.g.dim || self.act_h.v_dim != self.h.dim {
            return Err(Error::DimensionMismatch("act_gh must act g on h".into()));
        }
        if self.act_l.g_dim != self.g.dim || self.act_l.v_dim != self.l.dim {
            return Err(Error::DimensionMismatch("act_gl must act g on l".into()));
        }
        if self.lift.in_dim != self.h.dim || self.lift.out_dim != self.l.dim {
            return Err(Error::DimensionMismatch("peiffer lifting must map h x h to l".into()));
        }
        Ok(())
    }
}

/// View a differential crossed module as the 2-crossed module with l = 0;
/// every lifting axiom is then vacuous or reduces to the Peiffer law.
pub fn embed_dcm(m: &DCModule) -> D2CModule {
    D2CModule {
        g: m.g.clone(),
        h: m.h.clone(),
        l: LieAlgebra::abelian(0),
        alpha: m.alpha.clone(),
        beta: LinMap::zero(0, m.h.dim),
        act_h: m.act.clone(),
        act_l: Action::trivial(m.g.dim, 0),
        lift: Bilinear::zero(m.h.dim, 0),
    }
}

/// One violated law instance, recorded with the basis indices that were
/// substituted and the exact residual vector.
#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub law: String,
    pub indices: Vec<usize>,
    pub residual: Vec<String>,
}

/// Outcome of a structural validation: the list of laws that were checked and
/// every violated instance.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ValidationReport {
    pub checked: Vec<String>,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn law<F>(&mut self, name: &str, mut body: F)
    where
        F: FnMut(&mut dyn FnMut(Vec<usize>, Vec<Rat>)),
    {
        self.checked.push(name.to_string());
        let mut record = |indices: Vec<usize>, residual: Vec<Rat>| {
            if !vec_is_zero(&residual) {
                self.violations.push(Violation {
                    law: name.to_string(),
                    indices,
                    residual: residual.iter().map(rat_to_string).collect(),
                });
            }
        };
        body(&mut record);
    }
}

fn check_lie(report: &mut ValidationReport, la: &LieAlgebra, label: &str) {
    let n = la.dim;
    report.law(&format!("antisymmetry({label})"), |rec| {
        for i in 0..n {
            for j in i..n {
                rec(vec![i, j], vec_add(&la.bracket[i][j], &la.bracket[j][i]));
            }
        }
    });
    report.law(&format!("jacobi({label})"), |rec| {
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let t1 = la.bracket_vec(&la.bracket[i][j], &la.basis(k));
                    let t2 = la.bracket_vec(&la.bracket[j][k], &la.basis(i));
                    let t3 = la.bracket_vec(&la.bracket[k][i], &la.basis(j));
                    rec(vec![i, j, k], vec_add(&vec_add(&t1, &t2), &t3));
                }
            }
        }
    });
}

fn check_homomorphism(
    report: &mut ValidationReport,
    name: &str,
    map: &LinMap,
    src: &LieAlgebra,
    dst: &LieAlgebra,
) {
    report.law(name, |rec| {
        for a in 0..src.dim {
            for b in a + 1..src.dim {
                let lhs = map.apply(&src.bracket[a][b]);
                let rhs = dst.bracket_vec(&map.cols[a], &map.cols[b]);
                rec(vec![a, b], vec_sub(&lhs, &rhs));
            }
        }
    });
}

fn check_action_laws(
    report: &mut ValidationReport,
    label: &str,
    act: &Action,
    g: &LieAlgebra,
    v: &LieAlgebra,
) {
    report.law(&format!("action_bracket({label})"), |rec| {
        for i in 0..g.dim {
            for j in i + 1..g.dim {
                for a in 0..v.dim {
                    let lhs = act.apply(&g.bracket[i][j], &v.basis(a));
                    let t1 = act.apply(&g.basis(i), &act.ops[j][a]);
                    let t2 = act.apply(&g.basis(j), &act.ops[i][a]);
                    rec(vec![i, j, a], vec_sub(&lhs, &vec_sub(&t1, &t2)));
                }
            }
        }
    });
    report.law(&format!("action_derivation({label})"), |rec| {
        for i in 0..g.dim {
            for a in 0..v.dim {
                for b in a + 1..v.dim {
                    let lhs = act.apply(&g.basis(i), &v.bracket[a][b]);
                    let t1 = v.bracket_vec(&act.ops[i][a], &v.basis(b));
                    let t2 = v.bracket_vec(&v.basis(a), &act.ops[i][b]);
                    rec(vec![i, a, b], vec_sub(&lhs, &vec_add(&t1, &t2)));
                }
            }
        }
    });
}

/// Validate all differential crossed module laws exactly, instance by
/// instance over the basis.
pub fn validate_dcm(m: &DCModule) -> Result<ValidationReport> {
    m.check_shapes()?;
    let mut report = ValidationReport::default();
    check_lie(&mut report, &m.g, "g");
    check_lie(&mut report, &m.h, "h");
    check_homomorphism(&mut report, "homomorphism(alpha)", &m.alpha, &m.h, &m.g);
    check_action_laws(&mut report, "g,h", &m.act, &m.g, &m.h);
    report.law("equivariance(alpha)", |rec| {
        for i in 0..m.g.dim {
            for a in 0..m.h.dim {
                let lhs = m.alpha.apply(&m.act.ops[i][a]);
                let rhs = m.g.bracket_vec(&m.g.basis(i), &m.alpha.cols[a]);
                rec(vec![i, a], vec_sub(&lhs, &rhs));
            }
        }
    });
    report.law("peiffer", |rec| {
        for a in 0..m.h.dim {
            for b in 0..m.h.dim {
                let lhs = m.act.apply(&m.alpha.cols[a], &m.h.basis(b));
                rec(vec![a, b], vec_sub(&lhs, &m.h.bracket[a][b]));
            }
        }
    });
    Ok(report)
}

/// Validate all differential 2-crossed module laws exactly. The `(h, g)`
/// layer is only required to be pre-crossed here; its Peiffer law belongs to
/// the fine-ness check.
pub fn validate_d2cm(m: &D2CModule) -> Result<ValidationReport> {
    m.check_shapes()?;
    let mut report = ValidationReport::default();
    check_lie(&mut report, &m.g, "g");
    check_lie(&mut report, &m.h, "h");
    check_lie(&mut report, &m.l, "l");
    check_homomorphism(&mut report, "homomorphism(alpha)", &m.alpha, &m.h, &m.g);
    check_homomorphism(&mut report, "homomorphism(beta)", &m.beta, &m.l, &m.h);
    report.law("complex(alpha.beta)", |rec| {
        for c in 0..m.l.dim {
            rec(vec![c], m.alpha.apply(&m.beta.cols[c]));
        }
    });
    check_action_laws(&mut report, "g,h", &m.act_h, &m.g, &m.h);
    check_action_laws(&mut report, "g,l", &m.act_l, &m.g, &m.l);
    report.law("equivariance(alpha)", |rec| {
        for i in 0..m.g.dim {
            for a in 0..m.h.dim {
                let lhs = m.alpha.apply(&m.act_h.ops[i][a]);
                let rhs = m.g.bracket_vec(&m.g.basis(i), &m.alpha.cols[a]);
                rec(vec![i, a], vec_sub(&lhs, &rhs));
            }
        }
    });
    report.law("equivariance(beta)", |rec| {
        for i in 0..m.g.dim {
            for c in 0..m.l.dim {
                let lhs = m.beta.apply(&m.act_l.ops[i][c]);
                let rhs = m.act_h.apply(&m.g.basis(i), &m.beta.cols[c]);
                rec(vec![i, c], vec_sub(&lhs, &rhs));
            }
        }
    });
    report.law("lifting_equivariance", |rec| {
        for i in 0..m.g.dim {
            for a in 0..m.h.dim {
                for b in 0..m.h.dim {
                    let lhs = m.act_l.apply(&m.g.basis(i), &m.lift.table[a][b]);
                    let t1 = m.lift.apply(&m.act_h.ops[i][a], &m.h.basis(b));
                    let t2 = m.lift.apply(&m.h.basis(a), &m.act_h.ops[i][b]);
                    rec(vec![i, a, b], vec_sub(&lhs, &vec_add(&t1, &t2)));
                }
            }
        }
    });
    report.law("lifting_target", |rec| {
        for a in 0..m.h.dim {
            for b in 0..m.h.dim {
                let lhs = m.beta.apply(&m.lift.table[a][b]);
                let rhs = m.peiffer_commutator(&m.h.basis(a), &m.h.basis(b));
                rec(vec![a, b], vec_sub(&lhs, &rhs));
            }
        }
    });
    report.law("lifting_of_beta_pairs", |rec| {
        for c in 0..m.l.dim {
            for d in 0..m.l.dim {
                let lhs = m.lift.apply(&m.beta.cols[c], &m.beta.cols[d]);
                rec(vec![c, d], vec_sub(&lhs, &m.l.bracket[c][d]));
            }
        }
    });
    report.law("lifting_bracket_left", |rec| {
        for a in 0..m.h.dim {
            for b in 0..m.h.dim {
                for c in 0..m.h.dim {
                    let lhs = m.lift.apply(&m.h.bracket[a][b], &m.h.basis(c));
                    let t1 = m.act_l.apply(&m.alpha.cols[a], &m.lift.table[b][c]);
                    let t2 = m.lift.apply(&m.h.basis(a), &m.h.bracket[b][c]);
                    let t3 = m.act_l.apply(&m.alpha.cols[b], &m.lift.table[a][c]);
                    let t4 = m.lift.apply(&m.h.basis(b), &m.h.bracket[a][c]);
                    let rhs = vec_sub(&vec_add(&t1, &t2), &vec_add(&t3, &t4));
                    rec(vec![a, b, c], vec_sub(&lhs, &rhs));
                }
            }
        }
    });
    report.law("lifting_bracket_right", |rec| {
        for a in 0..m.h.dim {
            for b in 0..m.h.dim {
                for c in 0..m.h.dim {
                    let lhs = m.lift.apply(&m.h.basis(a), &m.h.bracket[b][c]);
                    let t1 = m.lift.apply(&m.beta.apply(&m.lift.table[a][b]), &m.h.basis(c));
                    let t2 = m.lift.apply(&m.beta.apply(&m.lift.table[a][c]), &m.h.basis(b));
                    rec(vec![a, b, c], vec_sub(&lhs, &vec_sub(&t1, &t2)));
                }
            }
        }
    });
    report.law("lifting_beta_mixed", |rec| {
        for c in 0..m.l.dim {
            for a in 0..m.h.dim {
                let t1 = m.lift.apply(&m.beta.cols[c], &m.h.basis(a));
                let t2 = m.lift.apply(&m.h.basis(a), &m.beta.cols[c]);
                let rhs = vec_neg(&m.act_l.apply(&m.alpha.cols[a], &m.l.basis(c)));
                rec(vec![c, a], vec_sub(&vec_add(&t1, &t2), &rhs));
            }
        }
    });
    Ok(report)
}

/// Fine-ness violations: the `(h, g)` layer must satisfy the crossed-module
/// Peiffer law and the two actions of h on l must agree,
/// `alpha(Y) |> Z = -{beta(Z), Y}`.
pub fn fine_violations(m: &D2CModule) -> Vec<Violation> {
    let mut report = ValidationReport::default();
    report.law("fine_peiffer(h,g)", |rec| {
        for a in 0..m.h.dim {
            for b in 0..m.h.dim {
                let lhs = m.act_h.apply(&m.alpha.cols[a], &m.h.basis(b));
                rec(vec![a, b], vec_sub(&lhs, &m.h.bracket[a][b]));
            }
        }
    });
    report.law("fine_action_match", |rec| {
        for a in 0..m.h.dim {
            for c in 0..m.l.dim {
                let lhs = m.act_l.apply(&m.alpha.cols[a], &m.l.basis(c));
                let rhs = m.action_prime(&m.h.basis(a), &m.l.basis(c));
                rec(vec![a, c], vec_sub(&lhs, &rhs));
            }
        }
    });
    report.violations
}

impl D2CModule {
    pub fn is_fine(&self) -> bool {
        fine_violations(self).is_empty()
    }
}

fn extend_bracket_central(la: &LieAlgebra, extra: usize) -> LieAlgebra {
    let dim = la.dim + extra;
    let mut bracket = vec![vec![vec_zero(dim); dim]; dim];
    for i in 0..la.dim {
        for j in 0..la.dim {
            for (k, c) in la.bracket[i][j].iter().enumerate() {
                bracket[i][j][k] = c.clone();
            }
        }
    }
    LieAlgebra { dim, bracket }
}

fn pad_vec(v: &[Rat], dim: usize) -> Vec<Rat> {
    let mut out = vec_zero(dim);
    out[..v.len()].clone_from_slice(v);
    out
}

/// Minimal balancing extension of a differential crossed module: pad the
/// smaller of g and h with central generators that act (and are acted on)
/// trivially. Idempotent on balanced input; rejects invalid input.
pub fn balance_dcm(m: &DCModule) -> Result<DCModule> {
    use std::cmp::Ordering;
    let report = validate_dcm(m)?;
    if !report.is_valid() {
        return Err(Error::InvalidInput(format!(
            "cannot balance an invalid crossed module: first violation in {}",
            report.violations[0].law
        )));
    }
    Ok(match m.g.dim.cmp(&m.h.dim) {
        Ordering::Equal => m.clone(),
        Ordering::Less => {
            // enlarge g by central generators acting trivially on h
            let extra = m.h.dim - m.g.dim;
            let g = extend_bracket_central(&m.g, extra);
            let alpha = LinMap::new(
                m.h.dim,
                g.dim,
                m.alpha.cols.iter().map(|c| pad_vec(c, g.dim)).collect(),
            );
            let mut ops = m.act.ops.clone();
            ops.extend((0..extra).map(|_| vec![vec_zero(m.h.dim); m.h.dim]));
            let act = Action::new(g.dim, m.h.dim, ops);
            DCModule { g, h: m.h.clone(), alpha, act }
        }
        Ordering::Greater => {
            // enlarge h by central generators mapped to zero and acted on trivially
            let extra = m.g.dim - m.h.dim;
            let h = extend_bracket_central(&m.h, extra);
            let mut cols = m.alpha.cols.clone();
            cols.extend((0..extra).map(|_| vec_zero(m.g.dim)));
            let alpha = LinMap::new(h.dim, m.g.dim, cols);
            let ops = m
                .act
                .ops
                .iter()
                .map(|per_i| {
                    let mut row: Vec<Vec<Rat>> =
                        per_i.iter().map(|img| pad_vec(img, h.dim)).collect();
                    row.extend((0..extra).map(|_| vec_zero(h.dim)));
                    row
                })
                .collect();
            let act = Action::new(m.g.dim, h.dim, ops);
            DCModule { g: m.g.clone(), h, alpha, act }
        }
    })
}

/// Minimal balancing extension of a differential 2-crossed module: pad the
/// smaller of g and l, leaving h and the lifting untouched. Idempotent on
/// balanced input; rejects invalid input.
pub fn balance_d2cm(m: &D2CModule) -> Result<D2CModule> {
    use std::cmp::Ordering;
    let report = validate_d2cm(m)?;
    if !report.is_valid() {
        return Err(Error::InvalidInput(format!(
            "cannot balance an invalid 2-crossed module: first violation in {}",
            report.violations[0].law
        )));
    }
    Ok(match m.g.dim.cmp(&m.l.dim) {
        Ordering::Equal => m.clone(),
        Ordering::Less => {
            let extra = m.l.dim - m.g.dim;
            let g = extend_bracket_central(&m.g, extra);
            let alpha = LinMap::new(
                m.h.dim,
                g.dim,
                m.alpha.cols.iter().map(|c| pad_vec(c, g.dim)).collect(),
            );
            let mut ops_h = m.act_h.ops.clone();
            ops_h.extend((0..extra).map(|_| vec![vec_zero(m.h.dim); m.h.dim]));
            let mut ops_l = m.act_l.ops.clone();
            ops_l.extend((0..extra).map(|_| vec![vec_zero(m.l.dim); m.l.dim]));
            D2CModule {
                g: g.clone(),
                h: m.h.clone(),
                l: m.l.clone(),
                alpha,
                beta: m.beta.clone(),
                act_h: Action::new(g.dim, m.h.dim, ops_h),
                act_l: Action::new(g.dim, m.l.dim, ops_l),
                lift: m.lift.clone(),
            }
        }
        Ordering::Greater => {
            let extra = m.g.dim - m.l.dim;
            let l = extend_bracket_central(&m.l, extra);
            let mut beta_cols = m.beta.cols.clone();
            beta_cols.extend((0..extra).map(|_| vec_zero(m.h.dim)));
            let beta = LinMap::new(l.dim, m.h.dim, beta_cols);
            let ops_l = m
                .act_l
                .ops
                .iter()
                .map(|per_i| {
                    let mut row: Vec<Vec<Rat>> =
                        per_i.iter().map(|img| pad_vec(img, l.dim)).collect();
                    row.extend((0..extra).map(|_| vec_zero(l.dim)));
                    row
                })
                .collect();
            let table = m
                .lift
                .table
                .iter()
                .map(|row| row.iter().map(|img| pad_vec(img, l.dim)).collect())
                .collect();
            D2CModule {
                g: m.g.clone(),
                h: m.h.clone(),
                l: l.clone(),
                alpha: m.alpha.clone(),
                beta,
                act_h: m.act_h.clone(),
                act_l: Action::new(m.g.dim, l.dim, ops_l),
                lift: Bilinear::new(m.h.dim, l.dim, table),
            }
        }
    })
}

/// Guard used by solvers that require balanced input.
pub fn require_balanced_dcm(m: &DCModule) -> Result<()> {
    if m.is_balanced() {
        Ok(())
    } else {
        Err(Error::NotBalanced(format!("dim g = {}, dim h = {}", m.g.dim, m.h.dim)))
    }
}

pub fn require_balanced_d2cm(m: &D2CModule) -> Result<()> {
    if m.is_balanced() {
        Ok(())
    } else {
        Err(Error::NotBalanced(format!("dim g = {}, dim l = {}", m.g.dim, m.l.dim)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn rv(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    /// so(3) with [e_i, e_j] = eps_ijk e_k.
    pub fn so3() -> LieAlgebra {
        let mut bracket = vec![vec![vec_zero(3); 3]; 3];
        let eps = [(0, 1, 2, 1i64), (1, 2, 0, 1), (2, 0, 1, 1)];
        for &(i, j, k, s) in &eps {
            bracket[i][j][k] = rat(s);
            bracket[j][i][k] = rat(-s);
        }
        LieAlgebra::new(3, bracket)
    }

    #[test]
    fn so3_is_a_lie_algebra() {
        let mut report = ValidationReport::default();
        check_lie(&mut report, &so3(), "g");
        assert!(report.is_valid(), "{:?}", report.violations);
    }

    #[test]
    fn broken_jacobi_is_reported_with_indices() {
        let mut la = so3();
        la.bracket[0][1] = rv(&[0, 1, 0]); // [e1,e2] = e2 breaks both laws
        la.bracket[1][0] = rv(&[0, -1, 0]);
        let mut report = ValidationReport::default();
        check_lie(&mut report, &la, "g");
        assert!(!report.is_valid());
        assert!(report.violations.iter().any(|v| v.law == "jacobi(g)" && v.indices == [0, 1, 2]));
    }

    #[test]
    fn adjoint_module_is_a_crossed_module() {
        let g = so3();
        let m = DCModule {
            h: g.clone(),
            alpha: LinMap::identity(3),
            act: Action::adjoint(&g),
            g,
        };
        let report = validate_dcm(&m).unwrap();
        assert!(report.is_valid(), "{:?}", report.violations);
        assert!(m.is_balanced());
    }

    #[test]
    fn peiffer_violation_detected() {
        // Take the adjoint module and scale alpha by 2: equivariance survives
        // scaling only on one side, so peiffer must fail.
        let g = so3();
        let mut alpha = LinMap::identity(3);
        for c in alpha.cols.iter_mut() {
            for x in c.iter_mut() {
                *x = &*x * &rat(2);
            }
        }
        let m = DCModule { h: g.clone(), alpha, act: Action::adjoint(&g), g };
        let report = validate_dcm(&m).unwrap();
        assert!(report.violations.iter().any(|v| v.law == "peiffer"));
    }

    #[test]
    fn ill_shaped_module_is_rejected() {
        let mut m = DCModule {
            g: so3(),
            h: LieAlgebra::abelian(1),
            alpha: LinMap::zero(1, 3),
            act: Action::trivial(3, 1),
        };
        m.alpha.cols[0].push(rat(0));
        assert!(matches!(validate_dcm(&m), Err(crate::error::Error::DimensionMismatch(_))));
    }

    #[test]
    fn balancing_pads_the_smaller_side_and_is_idempotent() {
        // abelian h of dim 1 over so(3): balance pads h to dim 3
        let m = DCModule {
            g: so3(),
            h: LieAlgebra::abelian(1),
            alpha: LinMap::zero(1, 3),
            act: Action::trivial(3, 1),
        };
        let b = balance_dcm(&m).unwrap();
        assert!(b.is_balanced());
        assert!(validate_dcm(&b).unwrap().is_valid());
        assert_eq!(balance_dcm(&b).unwrap(), b);

        // opposite direction: g smaller than h
        let m2 = DCModule {
            g: LieAlgebra::abelian(1),
            h: LieAlgebra::abelian(2),
            alpha: LinMap::zero(2, 1),
            act: Action::trivial(1, 2),
        };
        let b2 = balance_dcm(&m2).unwrap();
        assert!(b2.is_balanced());
        assert!(validate_dcm(&b2).unwrap().is_valid());
    }

    #[test]
    fn embedded_dcm_is_a_valid_fine_2_crossed_module() {
        let g = so3();
        let m = DCModule {
            h: g.clone(),
            alpha: LinMap::identity(3),
            act: Action::adjoint(&g),
            g,
        };
        let w = embed_dcm(&m);
        let report = validate_d2cm(&w).unwrap();
        assert!(report.is_valid(), "{:?}", report.violations);
        assert!(w.is_fine());
    }
}
