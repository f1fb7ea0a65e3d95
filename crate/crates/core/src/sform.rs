//! Scalar-valued polynomial differential forms on a coordinate patch of R^n.
//!
//! A degree-p form stores one polynomial per strictly increasing p-tuple of
//! coordinate indices. Degrees outside [0, n_vars] have no components, so any
//! construction request there collapses to the canonical zero form. Zero
//! forms compare equal regardless of their recorded degree.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::RatPoly;
use crate::rat::Rat;

/// Strictly increasing tuple of zero-based coordinate indices.
pub type IndexTuple = Vec<u8>;

#[derive(Debug, Clone)]
pub struct ScalarForm {
    n_vars: usize,
    degree: i64,
    comps: BTreeMap<IndexTuple, RatPoly>,
}

/// Sign of the permutation that merges two disjoint sorted tuples into one
/// sorted tuple, or None when they intersect.
fn merge_sign(a: &[u8], b: &[u8]) -> Option<(IndexTuple, i32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut transpositions = 0usize;
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            // b[j] jumps over the remaining entries of a
            transpositions += a.len() - i;
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    let sign = if transpositions % 2 == 0 { 1 } else { -1 };
    Some((out, sign))
}

impl ScalarForm {
    /// Canonical zero form of the requested degree. Degrees outside
    /// [0, n_vars] are legal here and simply have no components.
    pub fn zero(n_vars: usize, degree: i64) -> Self {
        ScalarForm { n_vars, degree, comps: BTreeMap::new() }
    }

    /// A 0-form holding a single polynomial.
    pub fn from_poly(p: RatPoly) -> Self {
        let n_vars = p.n_vars();
        let mut f = ScalarForm::zero(n_vars, 0);
        f.add_component(vec![], p);
        f
    }

    pub fn constant(n_vars: usize, c: Rat) -> Self {
        Self::from_poly(RatPoly::constant(n_vars, c))
    }

    /// The coordinate differential dx_i (zero based).
    pub fn dx(n_vars: usize, i: usize) -> Self {
        assert!(i < n_vars, "coordinate index out of range");
        let mut f = ScalarForm::zero(n_vars, 1);
        f.add_component(vec![i as u8], RatPoly::one(n_vars));
        f
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&IndexTuple, &RatPoly)> {
        self.comps.iter()
    }

    pub fn component(&self, idx: &[u8]) -> Option<&RatPoly> {
        self.comps.get(idx)
    }

    /// Adds `p dx_I`, pruning zero polynomials. Requests with an index tuple
    /// that cannot exist at this degree on this patch are dropped.
    pub fn add_component(&mut self, idx: IndexTuple, p: RatPoly) {
        debug_assert_eq!(p.n_vars(), self.n_vars);
        debug_assert!(idx.windows(2).all(|w| w[0] < w[1]), "index tuple must be strictly increasing");
        if p.is_zero() || self.degree < 0 || self.degree > self.n_vars as i64 {
            return;
        }
        debug_assert_eq!(idx.len() as i64, self.degree);
        debug_assert!(idx.iter().all(|&i| (i as usize) < self.n_vars));
        match self.comps.entry(idx) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&p).expect("components share n_vars");
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

    /// Sum of two forms. Both must share the degree unless one is zero.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        let mut out = self.clone();
        for (idx, p) in &other.comps {
            out.add_component(idx.clone(), p.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = ScalarForm::zero(self.n_vars, self.degree);
        for (idx, p) in &self.comps {
            out.comps.insert(idx.clone(), p.neg());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return ScalarForm::zero(self.n_vars, self.degree);
        }
        let mut out = ScalarForm::zero(self.n_vars, self.degree);
        for (idx, p) in &self.comps {
            out.comps.insert(idx.clone(), p.scale(s));
        }
        out
    }

    /// Exterior product. The result degree is the sum of the degrees; when
    /// that exceeds n_vars every term dies and the canonical zero remains.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = ScalarForm::zero(self.n_vars, self.degree + other.degree);
        for (ia, pa) in &self.comps {
            for (ib, pb) in &other.comps {
                if let Some((idx, sign)) = merge_sign(ia, ib) {
                    let mut p = pa.mul(pb).expect("components share n_vars");
                    if sign < 0 {
                        p = p.neg();
                    }
                    out.add_component(idx, p);
                }
            }
        }
        Ok(out)
    }

    /// Exterior derivative.
    pub fn d(&self) -> Self {
        let mut out = ScalarForm::zero(self.n_vars, self.degree + 1);
        for (idx, p) in &self.comps {
            for v in 0..self.n_vars {
                let dp = p.partial(v);
                if dp.is_zero() || idx.contains(&(v as u8)) {
                    continue;
                }
                let pos = idx.iter().filter(|&&i| (i as usize) < v).count();
                let mut new_idx = idx.clone();
                new_idx.insert(pos, v as u8);
                out.add_component(new_idx, if pos % 2 == 0 { dp } else { dp.neg() });
            }
        }
        out
    }

    /// Exact integral over the unit cube. Only defined for top-degree forms.
    pub fn integrate_cube(&self) -> Result<Rat> {
        if self.degree != self.n_vars as i64 {
            return Err(Error::NotTopDegree { degree: self.degree, n_vars: self.n_vars });
        }
        let mut total = Rat::zero();
        for p in self.comps.values() {
            total += p.integrate_unit_cube();
        }
        Ok(total)
    }
}

impl PartialEq for ScalarForm {
    fn eq(&self, other: &Self) -> bool {
        if self.n_vars != other.n_vars {
            return false;
        }
        if self.is_zero() && other.is_zero() {
            return true;
        }
        self.degree == other.degree && self.comps == other.comps
    }
}

impl Eq for ScalarForm {}

impl fmt::Display for ScalarForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, p) in &self.comps {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", p)?;
            for i in idx {
                write!(f, " dx{}", i + 1)?;
            }
        }
        Ok(())
    }
}
