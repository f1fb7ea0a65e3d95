//! Free exterior calculus over the odd symbols xi^1..xi^N with scalar-form
//! coefficients. The symbols square to zero, anticommute, pass scalar
//! p-forms with the sign (-1)^p, and differentiate to the constants k^i.
//! This module is the independent oracle for the closed-form generalized
//! product and derivative formulas; the engine itself never materializes xi.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::rng::{random_form, Density, EngineRng};
use crate::sform::ScalarForm;

/// A sum of terms (scalar form) * xi^{i_1}...xi^{i_m} with strictly
/// increasing symbol indices, over fixed derivative constants k^i.
#[derive(Debug, Clone)]
pub struct XiExpr {
    pub n_vars: usize,
    pub ks: Vec<Rat>,
    terms: BTreeMap<Vec<u8>, ScalarForm>,
}

/// Sign of moving the concatenation lhs ++ rhs into sorted order, or None
/// when an index repeats (the term dies).
fn merge_xi(lhs: &[u8], rhs: &[u8]) -> Option<(Vec<u8>, i32)> {
    let mut inversions = 0usize;
    for &i in lhs {
        for &j in rhs {
            if i == j {
                return None;
            }
            if i > j {
                inversions += 1;
            }
        }
    }
    let mut idx: Vec<u8> = lhs.iter().chain(rhs.iter()).copied().collect();
    idx.sort_unstable();
    Some((idx, if inversions % 2 == 0 { 1 } else { -1 }))
}

impl XiExpr {
    pub fn zero(n_vars: usize, ks: Vec<Rat>) -> Self {
        XiExpr { n_vars, ks, terms: BTreeMap::new() }
    }

    /// The number of xi symbols.
    pub fn order(&self) -> usize {
        self.ks.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(ScalarForm::is_zero)
    }

    /// Adds `coeff * xi^{indices}`; indices must be strictly increasing.
    pub fn add_term(&mut self, indices: &[u8], coeff: ScalarForm) {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(indices.iter().all(|&i| (i as usize) < self.order() + 1 && i >= 1));
        debug_assert_eq!(coeff.n_vars(), self.n_vars);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(indices.to_vec()) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&coeff).expect("xi terms share shape");
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn coeff(&self, indices: &[u8]) -> ScalarForm {
        self.terms.get(indices).cloned().unwrap_or_else(|| ScalarForm::zero(self.n_vars, 0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &ScalarForm)> {
        self.terms.iter().filter(|(_, c)| !c.is_zero())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n_vars != other.n_vars {
            return Err(Error::VarMismatch(self.n_vars, other.n_vars));
        }
        if self.ks != other.ks {
            return Err(Error::ConstantMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (idx, c) in other.terms() {
            out.add_term(idx, c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = XiExpr::zero(self.n_vars, self.ks.clone());
        for (idx, c) in self.terms() {
            out.add_term(idx, c.neg());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Rat) -> Self {
        let mut out = XiExpr::zero(self.n_vars, self.ks.clone());
        for (idx, c) in self.terms() {
            out.add_term(idx, c.scale(s));
        }
        out
    }

    /// Free product: (a xi^I)(b xi^J) = (-1)^{deg(b) |I|} (a ^ b) xi^I xi^J.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = XiExpr::zero(self.n_vars, self.ks.clone());
        for (li, lc) in self.terms() {
            for (ri, rc) in other.terms() {
                let Some((idx, xi_sign)) = merge_xi(li, ri) else { continue };
                let mut c = lc.wedge(rc)?;
                let pass = (rc.degree() * li.len() as i64).rem_euclid(2);
                if (xi_sign < 0) ^ (pass == 1) {
                    c = c.neg();
                }
                out.add_term(&idx, c);
            }
        }
        Ok(out)
    }

    /// Exterior derivative: d(a xi^I) = da xi^I + (-1)^{deg a} a d(xi^I)
    /// with d(xi^{i_0}..xi^{i_m}) = sum_r (-1)^r k^{i_r} xi^{I without i_r}.
    pub fn d(&self) -> Self {
        let mut out = XiExpr::zero(self.n_vars, self.ks.clone());
        for (idx, c) in self.terms() {
            out.add_term(idx, c.d());
            for (r, &i) in idx.iter().enumerate() {
                let k = &self.ks[(i - 1) as usize];
                if k.is_zero() {
                    continue;
                }
                let rest: Vec<u8> = idx.iter().enumerate().filter(|&(s, _)| s != r).map(|(_, &x)| x).collect();
                let sign_neg = ((c.degree() + r as i64) % 2).rem_euclid(2) == 1;
                let scaled = c.scale(k);
                out.add_term(&rest, if sign_neg { scaled.neg() } else { scaled });
            }
        }
        out
    }
}

impl PartialEq for XiExpr {
    fn eq(&self, other: &Self) -> bool {
        if self.n_vars != other.n_vars || self.ks != other.ks {
            return false;
        }
        let keys: std::collections::BTreeSet<&Vec<u8>> =
            self.terms().map(|(i, _)| i).chain(other.terms().map(|(i, _)| i)).collect();
        keys.into_iter().all(|k| self.coeff(k) == other.coeff(k))
    }
}

/// Random homogeneous generalized form of the given base degree: a term for
/// every subset of the xi symbols, with coefficient degree raised to match.
pub fn xi_random(
    rng: &mut EngineRng,
    n_vars: usize,
    ks: &[Rat],
    base_degree: i64,
    density: &Density,
) -> XiExpr {
    let n = ks.len();
    let mut out = XiExpr::zero(n_vars, ks.to_vec());
    for mask in 0..(1u32 << n) {
        let idx: Vec<u8> = (0..n as u8).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect();
        let deg = base_degree + idx.len() as i64;
        if deg < 0 || deg > n_vars as i64 {
            continue;
        }
        out.add_term(&idx, random_form(rng, n_vars, deg, density));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratq};
    use crate::rng::seeded_rng;

    fn density() -> Density {
        Density { max_poly_degree: 2, coeff_bound: 3, monomials_per_component: 1 }
    }

    fn ks2() -> Vec<Rat> {
        vec![ratq(1, 2), rat(-1)]
    }

    #[test]
    fn derivative_of_a_symbol_is_its_constant() {
        for i in 1..=2u8 {
            let mut e = XiExpr::zero(3, ks2());
            e.add_term(&[i], ScalarForm::constant(3, rat(1)));
            let d = e.d();
            assert_eq!(d.coeff(&[]), ScalarForm::constant(3, ks2()[(i - 1) as usize].clone()));
            assert!(d.coeff(&[1]).is_zero() && d.coeff(&[2]).is_zero());
        }
    }

    #[test]
    fn symbols_square_to_zero_and_anticommute() {
        let mut x1 = XiExpr::zero(2, ks2());
        x1.add_term(&[1], ScalarForm::constant(2, rat(1)));
        let mut x2 = XiExpr::zero(2, ks2());
        x2.add_term(&[2], ScalarForm::constant(2, rat(1)));
        assert!(x1.mul(&x1).unwrap().is_zero());
        let anti = x1.mul(&x2).unwrap().add(&x2.mul(&x1).unwrap()).unwrap();
        assert!(anti.is_zero());
    }

    #[test]
    fn forms_pass_symbols_with_degree_sign() {
        // a xi = (-1)^p xi a for a p-form a
        for p in 0..=3i64 {
            let mut rng = seeded_rng(100 + p as u64);
            let a = random_form(&mut rng, 3, p, &density());
            let mut xa = XiExpr::zero(3, ks2());
            xa.add_term(&[], a.clone());
            let mut xi = XiExpr::zero(3, ks2());
            xi.add_term(&[1], ScalarForm::constant(3, rat(1)));
            let lhs = xa.mul(&xi).unwrap();
            let rhs = xi.mul(&xa).unwrap();
            let sign = if p % 2 == 0 { rat(1) } else { rat(-1) };
            assert_eq!(lhs, rhs.scale(&sign), "degree {p}");
        }
    }

    #[test]
    fn graded_commutativity_of_homogeneous_forms() {
        let mut rng = seeded_rng(5);
        for p in 0..=2i64 {
            for q in 0..=2i64 {
                let u = xi_random(&mut rng, 3, &ks2(), p, &density());
                let v = xi_random(&mut rng, 3, &ks2(), q, &density());
                let uv = u.mul(&v).unwrap();
                let vu = v.mul(&u).unwrap();
                let sign = if (p * q) % 2 == 0 { rat(1) } else { rat(-1) };
                assert_eq!(uv, vu.scale(&sign), "degrees ({p},{q})");
            }
        }
    }

    #[test]
    fn d_squares_to_zero_for_orders_one_to_three() {
        let mut rng = seeded_rng(9);
        for order in 1..=3usize {
            let ks: Vec<Rat> = (0..order).map(|i| rat(i as i64 + 1) / rat(2)).collect();
            for p in -1..=2i64 {
                let u = xi_random(&mut rng, 3, &ks, p, &density());
                assert!(u.d().d().is_zero(), "order {order}, degree {p}");
            }
        }
    }

    #[test]
    fn derivative_is_a_graded_leibniz_rule() {
        let mut rng = seeded_rng(13);
        for p in 0..=2i64 {
            for q in 0..=2i64 {
                let u = xi_random(&mut rng, 3, &ks2(), p, &density());
                let v = xi_random(&mut rng, 3, &ks2(), q, &density());
                let lhs = u.mul(&v).unwrap().d();
                let sign = if p % 2 == 0 { rat(1) } else { rat(-1) };
                let rhs = u.d().mul(&v).unwrap().add(&u.mul(&v.d()).unwrap().scale(&sign)).unwrap();
                assert_eq!(lhs, rhs, "degrees ({p},{q})");
            }
        }
    }

    #[test]
    fn order_one_product_and_derivative_match_the_closed_forms() {
        // product: (a0 + a1 xi)(b0 + b1 xi)
        //        = a0^b0 + (a0^b1 + (-1)^q a1^b0) xi
        // derivative: d(a0 + a1 xi) = da0 + (-1)^{p+1} k a1 + da1 xi
        let k = vec![ratq(-3, 2)];
        let mut rng = seeded_rng(17);
        for p in 0..=2i64 {
            for q in 0..=2i64 {
                let a0 = random_form(&mut rng, 4, p, &density());
                let a1 = random_form(&mut rng, 4, p + 1, &density());
                let b0 = random_form(&mut rng, 4, q, &density());
                let b1 = random_form(&mut rng, 4, q + 1, &density());
                let mut u = XiExpr::zero(4, k.clone());
                u.add_term(&[], a0.clone());
                u.add_term(&[1], a1.clone());
                let mut v = XiExpr::zero(4, k.clone());
                v.add_term(&[], b0.clone());
                v.add_term(&[1], b1.clone());

                let prod = u.mul(&v).unwrap();
                let sign = if q % 2 == 0 { rat(1) } else { rat(-1) };
                let xi_part = a0.wedge(&b1).unwrap().add(&a1.wedge(&b0).unwrap().scale(&sign)).unwrap();
                assert_eq!(prod.coeff(&[]), a0.wedge(&b0).unwrap(), "({p},{q})");
                assert_eq!(prod.coeff(&[1]), xi_part, "({p},{q})");

                let der = u.d();
                let ksign = if (p + 1) % 2 == 0 { rat(1) } else { rat(-1) };
                let scalar = a0.d().add(&a1.scale(&(&ksign * &k[0]))).unwrap();
                assert_eq!(der.coeff(&[]), scalar, "({p})");
                assert_eq!(der.coeff(&[1]), a1.d(), "({p})");
            }
        }
    }

    #[test]
    fn order_two_product_and_derivative_match_the_closed_forms() {
        // product xi12 coefficient:
        //   a0^b12 + (-1)^{q+1}(a1^b2 - a2^b1) + a12^b0
        // derivative:
        //   da0 + (-1)^{p+1} k^i a_i
        //   + (da1 + (-1)^{p+1} k^2 a12) xi^1 + (da2 + (-1)^p k^1 a12) xi^2
        //   + da12 xi^12
        let ks = ks2();
        let mut rng = seeded_rng(19);
        for p in 0..=2i64 {
            for q in 0..=1i64 {
                let a0 = random_form(&mut rng, 4, p, &density());
                let a1 = random_form(&mut rng, 4, p + 1, &density());
                let a2 = random_form(&mut rng, 4, p + 1, &density());
                let a12 = random_form(&mut rng, 4, p + 2, &density());
                let b0 = random_form(&mut rng, 4, q, &density());
                let b1 = random_form(&mut rng, 4, q + 1, &density());
                let b2 = random_form(&mut rng, 4, q + 1, &density());
                let b12 = random_form(&mut rng, 4, q + 2, &density());
                let mut u = XiExpr::zero(4, ks.clone());
                u.add_term(&[], a0.clone());
                u.add_term(&[1], a1.clone());
                u.add_term(&[2], a2.clone());
                u.add_term(&[1, 2], a12.clone());
                let mut v = XiExpr::zero(4, ks.clone());
                v.add_term(&[], b0.clone());
                v.add_term(&[1], b1.clone());
                v.add_term(&[2], b2.clone());
                v.add_term(&[1, 2], b12.clone());

                let prod = u.mul(&v).unwrap();
                let sq = if q % 2 == 0 { rat(1) } else { rat(-1) };
                assert_eq!(prod.coeff(&[]), a0.wedge(&b0).unwrap());
                for (i, (ai, bi)) in [(&a1, &b1), (&a2, &b2)].into_iter().enumerate() {
                    let expect = a0.wedge(bi).unwrap().add(&ai.wedge(&b0).unwrap().scale(&sq)).unwrap();
                    assert_eq!(prod.coeff(&[i as u8 + 1]), expect, "({p},{q}) xi^{}", i + 1);
                }
                let mid = a1
                    .wedge(&b2)
                    .unwrap()
                    .sub(&a2.wedge(&b1).unwrap())
                    .unwrap()
                    .scale(&sq)
                    .neg();
                let expect12 = a0
                    .wedge(&b12)
                    .unwrap()
                    .add(&mid)
                    .unwrap()
                    .add(&a12.wedge(&b0).unwrap())
                    .unwrap();
                assert_eq!(prod.coeff(&[1, 2]), expect12, "({p},{q}) xi^12");

                let der = u.d();
                let sp1 = if (p + 1) % 2 == 0 { rat(1) } else { rat(-1) };
                let sp = -sp1.clone();
                let scalar = a0
                    .d()
                    .add(&a1.scale(&(&sp1 * &ks[0])))
                    .unwrap()
                    .add(&a2.scale(&(&sp1 * &ks[1])))
                    .unwrap();
                assert_eq!(der.coeff(&[]), scalar, "degree {p}");
                assert_eq!(der.coeff(&[1]), a1.d().add(&a12.scale(&(&sp1 * &ks[1]))).unwrap());
                assert_eq!(der.coeff(&[2]), a2.d().add(&a12.scale(&(&sp * &ks[0]))).unwrap());
                assert_eq!(der.coeff(&[1, 2]), a12.d());
            }
        }
    }
}
