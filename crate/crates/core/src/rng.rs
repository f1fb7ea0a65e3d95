//! Deterministic random generation of forms.
//!
//! All sampling goes through a counter-based stream cipher generator, so a
//! fixed seed yields the same objects on every platform and run. Components
//! are visited in a fixed lexicographic order for the same reason.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::RatPoly;
use crate::rat::rat;
use crate::sform::{IndexTuple, ScalarForm};

pub type EngineRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> EngineRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape of randomly sampled component polynomials.
#[derive(Debug, Clone, Copy)]
pub struct Density {
    /// Maximum total degree of any sampled monomial.
    pub max_poly_degree: u32,
    /// Coefficients are integers drawn from [-coeff_bound, coeff_bound].
    pub coeff_bound: i64,
    /// Monomials drawn per component (repeated exponent draws are dropped,
    /// so the coefficient bound is respected verbatim).
    pub monomials_per_component: u32,
}

impl Default for Density {
    fn default() -> Self {
        Density { max_poly_degree: 2, coeff_bound: 3, monomials_per_component: 1 }
    }
}

/// All strictly increasing k-tuples over 0..n in lexicographic order.
pub fn index_tuples(n: usize, k: usize) -> Vec<IndexTuple> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: IndexTuple = (0..k as u8).collect();
    loop {
        out.push(cur.clone());
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < (n - k + i) as u8 {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn random_monomial(rng: &mut EngineRng, n_vars: usize, max_degree: u32) -> Vec<u16> {
    let total = rng.gen_range(0..=max_degree);
    let mut exps = vec![0u16; n_vars];
    for _ in 0..total {
        let i = rng.gen_range(0..n_vars);
        exps[i] += 1;
    }
    exps
}

fn random_poly(rng: &mut EngineRng, n_vars: usize, density: &Density) -> RatPoly {
    let mut p = RatPoly::zero(n_vars);
    let mut seen: Vec<Vec<u16>> = Vec::new();
    for _ in 0..density.monomials_per_component {
        let exps = random_monomial(rng, n_vars, density.max_poly_degree);
        if seen.contains(&exps) {
            continue;
        }
        let c = rng.gen_range(-density.coeff_bound..=density.coeff_bound);
        seen.push(exps.clone());
        p.add_term(exps, rat(c));
    }
    p
}

/// Random degree-p form drawn component by component from `rng`.
pub fn random_form(rng: &mut EngineRng, n_vars: usize, degree: i64, density: &Density) -> ScalarForm {
    let mut f = ScalarForm::zero(n_vars, degree);
    if degree < 0 || degree > n_vars as i64 {
        return f;
    }
    for idx in index_tuples(n_vars, degree as usize) {
        f.add_component(idx, random_poly(rng, n_vars, density));
    }
    f
}

/// Seeded random form. Identical arguments produce the identical form on
/// every run and platform.
pub fn sf_random(seed: u64, n_vars: usize, degree: i64, max_poly_degree: u32, coeff_bound: i64) -> Result<ScalarForm> {
    if degree < 0 || degree > n_vars as i64 {
        return Err(Error::BadDegree(degree));
    }
    if coeff_bound < 0 {
        return Err(Error::InvalidInput(format!("negative coefficient bound {coeff_bound}")));
    }
    let mut rng = seeded_rng(seed);
    let density = Density { max_poly_degree, coeff_bound, ..Density::default() };
    Ok(random_form(&mut rng, n_vars, degree, &density))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_enumeration() {
        assert_eq!(index_tuples(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(index_tuples(2, 0), vec![Vec::<u8>::new()]);
        assert!(index_tuples(2, 3).is_empty());
    }

    #[test]
    fn seeded_reproducibility() {
        let a = sf_random(42, 4, 2, 2, 3).unwrap();
        let b = sf_random(42, 4, 2, 2, 3).unwrap();
        assert_eq!(a, b);
        let c = sf_random(43, 4, 2, 2, 3).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn zero_bound_gives_zero_form() {
        let f = sf_random(7, 4, 2, 2, 0).unwrap();
        assert!(f.is_zero());
    }

    #[test]
    fn bad_degree_rejected() {
        assert_eq!(sf_random(1, 3, 4, 2, 3), Err(Error::BadDegree(4)));
        assert_eq!(sf_random(1, 3, -1, 2, 3), Err(Error::BadDegree(-1)));
    }
}
