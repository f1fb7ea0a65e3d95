//! Invariant bilinear forms on differential (2-)crossed modules: law
//! checking, exponential-level invariance, and exact solvers that compute a
//! basis of the full solution space of the invariance constraints.

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{D2CModule, DCModule, ValidationReport, Violation};
use crate::error::{Error, Result};
use crate::linalg::{exp_nilpotent, nullspace, RatMatrix};
use crate::rat::{rat_to_string, ratq, Rat};

/// The invariant forms a module may carry. Any subset may be present,
/// depending on the theory level the module is used at.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PairingData {
    /// symmetric form on g
    pub pair_g: Option<RatMatrix>,
    /// form pairing g with h
    pub pair_gh: Option<RatMatrix>,
    /// antisymmetric form on h
    pub pair_h: Option<RatMatrix>,
    /// form pairing g with l
    pub pair_gl: Option<RatMatrix>,
}

/// Singularity report for whichever pairing matrices are present.
#[derive(Debug, Clone, Serialize)]
pub struct SingularityFlags {
    pub pair_g: Option<bool>,
    pub pair_gh: Option<bool>,
    pub pair_h: Option<bool>,
    pub pair_gl: Option<bool>,
}

impl PairingData {
    pub fn singularity_flags(&self) -> SingularityFlags {
        let flag = |m: &Option<RatMatrix>| m.as_ref().map(|m| !m.is_nonsingular_square());
        SingularityFlags {
            pair_g: flag(&self.pair_g),
            pair_gh: flag(&self.pair_gh),
            pair_h: flag(&self.pair_h),
            pair_gl: flag(&self.pair_gl),
        }
    }
}

fn entry(m: &RatMatrix, i: usize, j: usize) -> &Rat {
    &m.data[i][j]
}

/// `<x, M y>` for coefficient vectors.
fn pair_vec(m: &RatMatrix, x: &[Rat], y: &[Rat]) -> Rat {
    let mut out = Rat::zero();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if !yj.is_zero() {
                out += xi * yj * entry(m, i, j);
            }
        }
    }
    out
}

fn check_shape(m: &Option<RatMatrix>, rows: usize, cols: usize, label: &str) -> Result<()> {
    if let Some(m) = m {
        if m.rows != rows || m.cols != cols {
            return Err(Error::DimensionMismatch(format!(
                "{label} must be {rows}x{cols}, found {}x{}",
                m.rows, m.cols
            )));
        }
    }
    Ok(())
}

fn record(report: &mut ValidationReport, law: &str, indices: Vec<usize>, residual: Rat) {
    if !residual.is_zero() {
        report.violations.push(Violation {
            law: law.to_string(),
            indices,
            residual: vec![rat_to_string(&residual)],
        });
    }
}

fn record_matrix(report: &mut ValidationReport, law: &str, index: usize, residual: &RatMatrix) {
    if !residual.is_zero() {
        report.violations.push(Violation {
            law: law.to_string(),
            indices: vec![index],
            residual: residual.data.iter().flatten().map(rat_to_string).collect(),
        });
    }
}

/// Exhaustively verify every invariance law applicable to the supplied
/// pairing matrices, including exponential-level invariance for every module
/// generator whose operators are nilpotent.
pub fn check_pairing(m: &D2CModule, p: &PairingData) -> Result<ValidationReport> {
    m.check_shapes()?;
    let (ng, nh, nl) = (m.g.dim, m.h.dim, m.l.dim);
    check_shape(&p.pair_g, ng, ng, "pair_g")?;
    check_shape(&p.pair_gh, ng, nh, "pair_gh")?;
    check_shape(&p.pair_h, nh, nh, "pair_h")?;
    check_shape(&p.pair_gl, ng, nl, "pair_gl")?;

    let mut report = ValidationReport::default();

    if let Some(pg) = &p.pair_g {
        report.checked.push("symmetry(pair_g)".into());
        report.checked.push("ad_invariance(pair_g)".into());
        for i in 0..ng {
            for j in i..ng {
                record(
                    &mut report,
                    "symmetry(pair_g)",
                    vec![i, j],
                    entry(pg, i, j) - entry(pg, j, i),
                );
            }
        }
        for i in 0..ng {
            for j in 0..ng {
                for k in 0..ng {
                    // <[e_i,e_j], e_k> + <e_j, [e_i,e_k]> = 0
                    let r = pair_vec(pg, &m.g.bracket[i][j], &m.g.basis(k))
                        + pair_vec(pg, &m.g.basis(j), &m.g.bracket[i][k]);
                    record(&mut report, "ad_invariance(pair_g)", vec![i, j, k], r);
                }
            }
        }
    }

    if let Some(pgh) = &p.pair_gh {
        report.checked.push("bracket_action(pair_gh)".into());
        report.checked.push("alpha_symmetry(pair_gh)".into());
        for i in 0..ng {
            for j in 0..ng {
                for a in 0..nh {
                    // <[e_i,e_j], f_a> + <e_j, e_i |> f_a> = 0
                    let r = pair_vec(pgh, &m.g.bracket[i][j], &m.h.basis(a))
                        + pair_vec(pgh, &m.g.basis(j), &m.act_h.ops[i][a]);
                    record(&mut report, "bracket_action(pair_gh)", vec![i, j, a], r);
                }
            }
        }
        for a in 0..nh {
            for b in a + 1..nh {
                // <alpha(f_a), f_b> = <alpha(f_b), f_a>
                let r = pair_vec(pgh, &m.alpha.cols[a], &m.h.basis(b))
                    - pair_vec(pgh, &m.alpha.cols[b], &m.h.basis(a));
                record(&mut report, "alpha_symmetry(pair_gh)", vec![a, b], r);
            }
        }
    }

    if let Some(ph) = &p.pair_h {
        report.checked.push("antisymmetry(pair_h)".into());
        report.checked.push("bracket_invariance(pair_h)".into());
        report.checked.push("action_symmetry(pair_h)".into());
        for a in 0..nh {
            for b in a..nh {
                record(
                    &mut report,
                    "antisymmetry(pair_h)",
                    vec![a, b],
                    entry(ph, a, b) + entry(ph, b, a),
                );
            }
        }
        for a in 0..nh {
            for b in 0..nh {
                for c in 0..nh {
                    // <[f_a,f_b], f_c> + <f_b, [f_a,f_c]> = 0
                    let r = pair_vec(ph, &m.h.bracket[a][b], &m.h.basis(c))
                        + pair_vec(ph, &m.h.basis(b), &m.h.bracket[a][c]);
                    record(&mut report, "bracket_invariance(pair_h)", vec![a, b, c], r);
                }
            }
        }
        for i in 0..ng {
            for a in 0..nh {
                for b in a + 1..nh {
                    // <f_a, e_i |> f_b> = <f_b, e_i |> f_a>
                    let r = pair_vec(ph, &m.h.basis(a), &m.act_h.ops[i][b])
                        - pair_vec(ph, &m.h.basis(b), &m.act_h.ops[i][a]);
                    record(&mut report, "action_symmetry(pair_h)", vec![i, a, b], r);
                }
            }
        }
    }

    if let Some(pgl) = &p.pair_gl {
        report.checked.push("bracket_action(pair_gl)".into());
        for i in 0..ng {
            for j in 0..ng {
                for c in 0..nl {
                    // <[e_i,e_j], z_c> + <e_j, e_i |> z_c> = 0
                    let r = pair_vec(pgl, &m.g.bracket[i][j], &m.l.basis(c))
                        + pair_vec(pgl, &m.g.basis(j), &m.act_l.ops[i][c]);
                    record(&mut report, "bracket_action(pair_gl)", vec![i, j, c], r);
                }
            }
        }
        if let Some(ph) = &p.pair_h {
            report.checked.push("alpha_beta_compat".into());
            report.checked.push("lifting_compat".into());
            for a in 0..nh {
                for c in 0..nl {
                    // <alpha(f_a), z_c>_gl + <beta(z_c), f_a>_h = 0
                    let r = pair_vec(pgl, &m.alpha.cols[a], &m.l.basis(c))
                        + pair_vec(ph, &m.beta.cols[c], &m.h.basis(a));
                    record(&mut report, "alpha_beta_compat", vec![a, c], r);
                }
            }
            let half = ratq(1, 2);
            for i in 0..ng {
                for a in 0..nh {
                    for b in 0..nh {
                        // <e_i, {f_a,f_b}>_gl = 1/2 <f_b, e_i |> f_a>_h
                        let lhs = pair_vec(pgl, &m.g.basis(i), &m.lift.table[a][b]);
                        let rhs = pair_vec(ph, &m.h.basis(b), &m.act_h.ops[i][a]);
                        record(&mut report, "lifting_compat", vec![i, a, b], lhs - &half * rhs);
                    }
                }
            }
        }
    }

    exp_invariance(m, p, &mut report);
    Ok(report)
}

/// Exponential-level invariance: for every generator whose relevant
/// operators are nilpotent, the terminating exponentials must preserve each
/// pairing exactly.
fn exp_invariance(m: &D2CModule, p: &PairingData, report: &mut ValidationReport) {
    report.checked.push("exp_invariance".into());
    let ad = |i: usize| {
        let mut mat = RatMatrix::zeros(m.g.dim, m.g.dim);
        for a in 0..m.g.dim {
            for k in 0..m.g.dim {
                mat.data[k][a] = m.g.bracket[i][a][k].clone();
            }
        }
        mat
    };
    let op_of = |ops: &Vec<Vec<Vec<Rat>>>, i: usize, dim: usize| {
        let mut mat = RatMatrix::zeros(dim, dim);
        for a in 0..dim {
            for k in 0..dim {
                mat.data[k][a] = ops[i][a][k].clone();
            }
        }
        mat
    };
    for i in 0..m.g.dim {
        let e_ad = exp_nilpotent(&ad(i));
        let e_h = exp_nilpotent(&op_of(&m.act_h.ops, i, m.h.dim));
        let e_l = exp_nilpotent(&op_of(&m.act_l.ops, i, m.l.dim));
        if let (Some(pg), Some(e)) = (&p.pair_g, &e_ad) {
            record_matrix(report, "exp_invariance(pair_g)", i, &e.transpose().mul(pg).mul(e).sub(pg));
        }
        if let (Some(pgh), Some(ea), Some(eh)) = (&p.pair_gh, &e_ad, &e_h) {
            record_matrix(
                report,
                "exp_invariance(pair_gh)",
                i,
                &ea.transpose().mul(pgh).mul(eh).sub(pgh),
            );
        }
        if let (Some(ph), Some(eh)) = (&p.pair_h, &e_h) {
            record_matrix(report, "exp_invariance(pair_h)", i, &eh.transpose().mul(ph).mul(eh).sub(ph));
        }
        if let (Some(pgl), Some(ea), Some(el)) = (&p.pair_gl, &e_ad, &e_l) {
            record_matrix(
                report,
                "exp_invariance(pair_gl)",
                i,
                &ea.transpose().mul(pgl).mul(el).sub(pgl),
            );
        }
    }
}

/// One basis element of the joint invariant-form space of a 2-crossed
/// module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct D2CMPairingBasis {
    pub pair_h: RatMatrix,
    pub pair_gl: RatMatrix,
}

/// Solve the invariance constraints for a g-h pairing on a balanced crossed
/// module. Returns a primitive integer basis of the solution space.
pub fn solve_invariant_forms_dcm(m: &DCModule) -> Result<Vec<RatMatrix>> {
    m.check_shapes()?;
    crate::algebra::require_balanced_dcm(m)?;
    let (ng, nh) = (m.g.dim, m.h.dim);
    let unknowns = ng * nh;
    let idx = |i: usize, a: usize| i * nh + a;
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    // <[e_i,e_j], f_a> + <e_j, e_i |> f_a> = 0
    for i in 0..ng {
        for j in 0..ng {
            for a in 0..nh {
                let mut row = vec![Rat::zero(); unknowns];
                for (k, c) in m.g.bracket[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        row[idx(k, a)] += c;
                    }
                }
                for (b, t) in m.act.ops[i][a].iter().enumerate() {
                    if !t.is_zero() {
                        row[idx(j, b)] += t;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    // <alpha(f_a), f_b> - <alpha(f_b), f_a> = 0
    for a in 0..nh {
        for b in a + 1..nh {
            let mut row = vec![Rat::zero(); unknowns];
            for (i, c) in m.alpha.cols[a].iter().enumerate() {
                if !c.is_zero() {
                    row[idx(i, b)] += c;
                }
            }
            for (i, c) in m.alpha.cols[b].iter().enumerate() {
                if !c.is_zero() {
                    row[idx(i, a)] -= c;
                }
            }
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    let system = if rows.is_empty() {
        RatMatrix::zeros(1, unknowns)
    } else {
        RatMatrix::from_rows(rows)
    };
    let basis = nullspace(&system);
    Ok(basis
        .into_iter()
        .map(|v| {
            let mut mat = RatMatrix::zeros(ng, nh);
            for i in 0..ng {
                for a in 0..nh {
                    mat.data[i][a] = v[idx(i, a)].clone();
                }
            }
            mat
        })
        .collect())
}

/// Solve the joint invariance constraints for (pair_h, pair_gl) on a
/// balanced 2-crossed module. pair_h is constrained antisymmetric; the
/// unknown vector is its strict upper triangle followed by all of pair_gl.
pub fn solve_invariant_forms_d2cm(m: &D2CModule) -> Result<Vec<D2CMPairingBasis>> {
    m.check_shapes()?;
    crate::algebra::require_balanced_d2cm(m)?;
    let (ng, nh, nl) = (m.g.dim, m.h.dim, m.l.dim);
    let n_upper = nh * (nh - 1) / 2;
    let unknowns = n_upper + ng * nl;
    let upper_idx = |a: usize, b: usize| {
        debug_assert!(a < b);
        // position of (a,b) in the lex-ordered strict upper triangle
        a * nh - a * (a + 1) / 2 + (b - a - 1)
    };
    let gl_idx = |i: usize, c: usize| n_upper + i * nl + c;
    // contribution of H(a,b) to a row, honoring antisymmetry
    let add_h = |row: &mut Vec<Rat>, a: usize, b: usize, coeff: &Rat| {
        use std::cmp::Ordering;
        match a.cmp(&b) {
            Ordering::Less => row[upper_idx(a, b)] += coeff,
            Ordering::Greater => row[upper_idx(b, a)] -= coeff,
            Ordering::Equal => {}
        }
    };
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut push = |row: Vec<Rat>| {
        if row.iter().any(|x| !x.is_zero()) {
            rows.push(row);
        }
    };
    // <[f_a,f_b], f_c> + <f_b, [f_a,f_c]> = 0
    for a in 0..nh {
        for b in 0..nh {
            for c in 0..nh {
                let mut row = vec![Rat::zero(); unknowns];
                for (d, s) in m.h.bracket[a][b].iter().enumerate() {
                    if !s.is_zero() {
                        add_h(&mut row, d, c, s);
                    }
                }
                for (d, s) in m.h.bracket[a][c].iter().enumerate() {
                    if !s.is_zero() {
                        add_h(&mut row, b, d, s);
                    }
                }
                push(row);
            }
        }
    }
    // <f_a, e_i |> f_b> - <f_b, e_i |> f_a> = 0
    for i in 0..ng {
        for a in 0..nh {
            for b in a + 1..nh {
                let mut row = vec![Rat::zero(); unknowns];
                for (d, s) in m.act_h.ops[i][b].iter().enumerate() {
                    if !s.is_zero() {
                        add_h(&mut row, a, d, s);
                    }
                }
                for (d, s) in m.act_h.ops[i][a].iter().enumerate() {
                    if !s.is_zero() {
                        add_h(&mut row, b, d, &-s);
                    }
                }
                push(row);
            }
        }
    }
    // <[e_i,e_j], z_c> + <e_j, e_i |> z_c> = 0
    for i in 0..ng {
        for j in 0..ng {
            for c in 0..nl {
                let mut row = vec![Rat::zero(); unknowns];
                for (k, s) in m.g.bracket[i][j].iter().enumerate() {
                    if !s.is_zero() {
                        row[gl_idx(k, c)] += s;
                    }
                }
                for (d, s) in m.act_l.ops[i][c].iter().enumerate() {
                    if !s.is_zero() {
                        row[gl_idx(j, d)] += s;
                    }
                }
                push(row);
            }
        }
    }
    // <alpha(f_a), z_c>_gl + <beta(z_c), f_a>_h = 0
    for a in 0..nh {
        for c in 0..nl {
            let mut row = vec![Rat::zero(); unknowns];
            for (i, s) in m.alpha.cols[a].iter().enumerate() {
                if !s.is_zero() {
                    row[gl_idx(i, c)] += s;
                }
            }
            for (b, s) in m.beta.cols[c].iter().enumerate() {
                if !s.is_zero() {
                    add_h(&mut row, b, a, s);
                }
            }
            push(row);
        }
    }
    // <e_i, {f_a,f_b}>_gl - 1/2 <f_b, e_i |> f_a>_h = 0
    let half = ratq(1, 2);
    for i in 0..ng {
        for a in 0..nh {
            for b in 0..nh {
                let mut row = vec![Rat::zero(); unknowns];
                for (c, s) in m.lift.table[a][b].iter().enumerate() {
                    if !s.is_zero() {
                        row[gl_idx(i, c)] += s;
                    }
                }
                for (d, s) in m.act_h.ops[i][a].iter().enumerate() {
                    if !s.is_zero() {
                        add_h(&mut row, b, d, &-(&half * s));
                    }
                }
                push(row);
            }
        }
    }
    let system = if rows.is_empty() {
        RatMatrix::zeros(1, unknowns)
    } else {
        RatMatrix::from_rows(rows)
    };
    let basis = nullspace(&system);
    Ok(basis
        .into_iter()
        .map(|v| {
            let mut ph = RatMatrix::zeros(nh, nh);
            for a in 0..nh {
                for b in a + 1..nh {
                    ph.data[a][b] = v[upper_idx(a, b)].clone();
                    ph.data[b][a] = -v[upper_idx(a, b)].clone();
                }
            }
            let mut pgl = RatMatrix::zeros(ng, nl);
            for i in 0..ng {
                for c in 0..nl {
                    pgl.data[i][c] = v[gl_idx(i, c)].clone();
                }
            }
            D2CMPairingBasis { pair_h: ph, pair_gl: pgl }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::embed_dcm;
    use crate::catalog;
    use crate::rat::rat;
    use num_traits::One;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Independent oracle: plain rational reduced-row-echelon nullspace,
    /// sharing no code with the fraction-free production routine.
    fn rref_nullspace(m: &RatMatrix) -> Vec<Vec<Rat>> {
        let (rows, cols) = (m.rows, m.cols);
        let mut a = m.data.clone();
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut r = 0usize;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            let inv = a[r][c].clone();
            for x in a[r].iter_mut() {
                *x = &*x / &inv;
            }
            for i in 0..rows {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in 0..cols {
                        let s = &f * &a[r][j];
                        a[i][j] = &a[i][j] - &s;
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
            if r == rows {
                break;
            }
        }
        let mut basis = Vec::new();
        for free in (0..cols).filter(|c| !pivot_cols.contains(c)) {
            let mut v = vec![Rat::zero(); cols];
            v[free] = Rat::one();
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -a[row][free].clone();
            }
            basis.push(v);
        }
        basis
    }

    fn span_rank(vectors: &[Vec<Rat>], dim: usize) -> usize {
        if vectors.is_empty() {
            return 0;
        }
        let _ = dim;
        RatMatrix::from_rows(vectors.to_vec()).rank()
    }

    fn same_span(a: &[Vec<Rat>], b: &[Vec<Rat>], dim: usize) -> bool {
        let ra = span_rank(a, dim);
        let rb = span_rank(b, dim);
        let mut joint = a.to_vec();
        joint.extend(b.to_vec());
        ra == rb && span_rank(&joint, dim) == ra
    }

    fn in_span(basis: &[Vec<Rat>], v: &[Rat]) -> bool {
        let r = span_rank(basis, v.len());
        let mut joint = basis.to_vec();
        joint.push(v.to_vec());
        span_rank(&joint, v.len()) == r
    }

    fn flatten(m: &RatMatrix) -> Vec<Rat> {
        m.data.iter().flatten().cloned().collect()
    }

    fn flatten_basis(b: &D2CMPairingBasis) -> Vec<Rat> {
        let mut v = flatten(&b.pair_h);
        v.extend(flatten(&b.pair_gl));
        v
    }

    #[test]
    fn nullspace_agrees_with_rref_oracle_on_random_systems() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for trial in 0..60 {
            let rows = rng.gen_range(1..=6);
            let cols = rng.gen_range(1..=6);
            let mut m = RatMatrix::zeros(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    let num = rng.gen_range(-3i64..=3);
                    let den = if rng.gen_bool(0.3) { 2 } else { 1 };
                    m.data[i][j] = crate::rat::ratq(num, den);
                }
            }
            let fast = nullspace(&m);
            let oracle = rref_nullspace(&m);
            assert_eq!(fast.len(), oracle.len(), "trial {trial}");
            assert!(same_span(&fast, &oracle, cols), "trial {trial}");
            for v in &fast {
                let img = m.mul_vec(v);
                assert!(img.iter().all(|x| x.is_zero()), "trial {trial}: not in kernel");
            }
        }
    }

    #[test]
    fn nullspace_vectors_are_primitive_with_positive_leading_entry() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..20 {
            let rows = rng.gen_range(1..=4);
            let cols = rng.gen_range(2..=6);
            let mut m = RatMatrix::zeros(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    m.data[i][j] = rat(rng.gen_range(-2i64..=2));
                }
            }
            for v in nullspace(&m) {
                let first = v.iter().find(|x| !x.is_zero()).expect("zero basis vector");
                assert!(first > &Rat::zero());
                assert!(v.iter().all(|x| x.denom().is_one()));
            }
        }
    }

    #[test]
    fn adjoint_invariant_space_is_the_killing_line() {
        let entry = catalog::get("adjoint").unwrap();
        let m = entry.kind.as_crossed().unwrap();
        let basis = solve_invariant_forms_dcm(m).unwrap();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0], RatMatrix::identity(3));
    }

    #[test]
    fn coadjoint_invariant_space_contains_the_duality_pairing() {
        let entry = catalog::get("heis_coadjoint").unwrap();
        let m = entry.kind.as_crossed().unwrap();
        let basis = solve_invariant_forms_dcm(m).unwrap();
        assert_eq!(basis.len(), 3);
        let flat: Vec<Vec<Rat>> = basis.iter().map(flatten).collect();
        assert!(in_span(&flat, &flatten(&RatMatrix::identity(3))));
    }

    #[test]
    fn one_dimensional_module_has_a_one_dimensional_space() {
        let entry = catalog::get("dim1").unwrap();
        let basis = solve_invariant_forms_dcm(entry.kind.as_crossed().unwrap()).unwrap();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0], RatMatrix::identity(1));
    }

    #[test]
    fn unconstrained_module_gets_the_full_space() {
        let entry = catalog::get("abelian").unwrap();
        let basis = solve_invariant_forms_d2cm(&entry.kind.as_two_crossed()).unwrap();
        // one antisymmetric degree of freedom on h plus all of pair_gl
        assert_eq!(basis.len(), 1 + 4);
    }

    #[test]
    fn solver_span_contains_each_canonical_pairing() {
        for name in ["nil3", "heis_sp", "fine_nil"] {
            let entry = catalog::get(name).unwrap();
            let m = entry.kind.as_two_crossed();
            let basis = solve_invariant_forms_d2cm(&m).unwrap();
            let flat: Vec<Vec<Rat>> = basis.iter().map(flatten_basis).collect();
            let canonical = D2CMPairingBasis {
                pair_h: entry.pairing.pair_h.clone().unwrap(),
                pair_gl: entry.pairing.pair_gl.clone().unwrap(),
            };
            assert!(in_span(&flat, &flatten_basis(&canonical)), "{name}");
        }
        let nil3 = solve_invariant_forms_d2cm(&catalog::get("nil3").unwrap().kind.as_two_crossed());
        assert_eq!(nil3.unwrap().len(), 2);
        let sp = solve_invariant_forms_d2cm(&catalog::get("heis_sp").unwrap().kind.as_two_crossed());
        assert_eq!(sp.unwrap().len(), 3);
        let fine = solve_invariant_forms_d2cm(&catalog::get("fine_nil").unwrap().kind.as_two_crossed());
        assert_eq!(fine.unwrap().len(), 2);
    }

    #[test]
    fn every_solved_form_satisfies_the_full_law_checker() {
        for name in ["adjoint", "heis_coadjoint", "dim1"] {
            let entry = catalog::get(name).unwrap();
            let m = entry.kind.as_crossed().unwrap();
            let w = embed_dcm(m);
            for p in solve_invariant_forms_dcm(m).unwrap() {
                let data = PairingData { pair_gh: Some(p), ..Default::default() };
                let report = check_pairing(&w, &data).unwrap();
                assert!(report.is_valid(), "{name}: {:?}", report.violations);
            }
        }
        for name in ["abelian", "nil3", "heis_sp", "heis_l", "fine_nil"] {
            let entry = catalog::get(name).unwrap();
            let m = entry.kind.as_two_crossed();
            for b in solve_invariant_forms_d2cm(&m).unwrap() {
                let data = PairingData {
                    pair_h: Some(b.pair_h),
                    pair_gl: Some(b.pair_gl),
                    ..Default::default()
                };
                let report = check_pairing(&m, &data).unwrap();
                assert!(report.is_valid(), "{name}: {:?}", report.violations);
            }
        }
    }

    #[test]
    fn unbalanced_module_is_rejected_by_the_solver() {
        let entry = catalog::get("heis3").unwrap();
        let err = solve_invariant_forms_d2cm(&entry.kind.as_two_crossed()).unwrap_err();
        assert!(matches!(err, Error::NotBalanced(_)));
    }

    #[test]
    fn violated_law_is_reported_with_indices_and_residual() {
        let entry = catalog::get("nil3").unwrap();
        let m = entry.kind.as_two_crossed();
        let mut p = entry.pairing.clone();
        // spoil one entry of pair_gl; lifting_compat and alpha_beta_compat
        // must both flag it
        p.pair_gl.as_mut().unwrap().data[0][0] = rat(7);
        let report = check_pairing(&m, &p).unwrap();
        assert!(!report.is_valid());
        assert!(report.violations.iter().any(|v| v.law == "lifting_compat"));
    }

    #[test]
    fn singular_pairing_is_flagged_but_not_rejected() {
        // invariant symmetric forms on the Heisenberg algebra have zero
        // third row and column, so diag(1,1,0) is invariant but singular
        let entry = catalog::get("heis_coadjoint").unwrap();
        let m = embed_dcm(entry.kind.as_crossed().unwrap());
        let mut pg = RatMatrix::identity(3);
        pg.data[2][2] = Rat::zero();
        let p = PairingData { pair_g: Some(pg), ..Default::default() };
        let report = check_pairing(&m, &p).unwrap();
        assert!(report.is_valid(), "{:?}", report.violations);
        assert_eq!(p.singularity_flags().pair_g, Some(true));
    }
}
