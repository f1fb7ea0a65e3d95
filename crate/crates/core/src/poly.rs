//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A polynomial on `n_vars` coordinates is a map from exponent vectors to
//! nonzero rational coefficients. All arithmetic is exact.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rat::{rat, Rat};

/// Exponent vector, one entry per coordinate.
pub type Expts = Vec<u16>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    n_vars: usize,
    terms: BTreeMap<Expts, Rat>,
}

impl RatPoly {
    pub fn zero(n_vars: usize) -> Self {
        RatPoly { n_vars, terms: BTreeMap::new() }
    }

    pub fn constant(n_vars: usize, c: Rat) -> Self {
        let mut p = Self::zero(n_vars);
        p.add_term(vec![0; n_vars], c);
        p
    }

    pub fn one(n_vars: usize) -> Self {
        Self::constant(n_vars, rat(1))
    }

    /// The coordinate x_i (zero based).
    pub fn var(n_vars: usize, i: usize) -> Self {
        assert!(i < n_vars, "variable index out of range");
        let mut e = vec![0u16; n_vars];
        e[i] = 1;
        let mut p = Self::zero(n_vars);
        p.add_term(e, rat(1));
        p
    }

    pub fn monomial(n_vars: usize, exps: Expts, coeff: Rat) -> Self {
        assert_eq!(exps.len(), n_vars, "exponent vector length mismatch");
        let mut p = Self::zero(n_vars);
        p.add_term(exps, coeff);
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Expts, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().map(|&x| x as u32).sum()).max().unwrap_or(0)
    }

    /// Adds `coeff * x^exps`, pruning the term if the sum cancels.
    pub fn add_term(&mut self, exps: Expts, coeff: Rat) {
        debug_assert_eq!(exps.len(), self.n_vars);
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.n_vars != other.n_vars {
            return Err(Error::VarMismatch(self.n_vars, other.n_vars));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.n_vars);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return Self::zero(self.n_vars);
        }
        let mut out = Self::zero(self.n_vars);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = Self::zero(self.n_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Expts = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(exps, ca * cb);
            }
        }
        Ok(out)
    }

    /// Partial derivative with respect to x_i.
    pub fn partial(&self, i: usize) -> Self {
        assert!(i < self.n_vars);
        let mut out = Self::zero(self.n_vars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut exps = e.clone();
            exps[i] -= 1;
            out.add_term(exps, c * rat(e[i] as i64));
        }
        out
    }

    /// Exact integral over the unit cube [0,1]^n via the monomial rule
    /// that each x^k contributes 1/(k+1).
    pub fn integrate_unit_cube(&self) -> Rat {
        let mut total = Rat::zero();
        for (e, c) in &self.terms {
            let mut w = c.clone();
            for &k in e {
                w /= rat(k as i64 + 1);
            }
            total += w;
        }
        total
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", c)?;
            for (i, &k) in e.iter().enumerate() {
                if k == 1 {
                    write!(f, "*x{}", i + 1)?;
                } else if k > 1 {
                    write!(f, "*x{}^{}", i + 1, k)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratq;

    fn x(i: usize) -> RatPoly {
        RatPoly::var(3, i)
    }

    #[test]
    fn arithmetic_and_cancellation() {
        let p = x(0).mul(&x(1)).unwrap();
        let q = p.neg();
        assert!(p.add(&q).unwrap().is_zero());
        let r = p.add(&RatPoly::one(3)).unwrap();
        assert_eq!(r.num_terms(), 2);
    }

    #[test]
    fn var_mismatch_rejected() {
        let p = RatPoly::one(2);
        let q = RatPoly::one(3);
        assert_eq!(p.mul(&q), Err(Error::VarMismatch(2, 3)));
    }

    #[test]
    fn derivative() {
        // d/dx (x^2 y) = 2 x y
        let p = x(0).mul(&x(0)).unwrap().mul(&x(1)).unwrap();
        let d = p.partial(0);
        let expected = x(0).mul(&x(1)).unwrap().scale(&rat(2));
        assert_eq!(d, expected);
        assert!(p.partial(2).is_zero());
    }

    #[test]
    fn cube_integral() {
        // int xy over the cube = 1/4, independent of the extra variable
        let p = x(0).mul(&x(1)).unwrap();
        assert_eq!(p.integrate_unit_cube(), ratq(1, 4));
        // int x^2 = 1/3
        let q = x(0).mul(&x(0)).unwrap();
        assert_eq!(q.integrate_unit_cube(), ratq(1, 3));
    }
}
