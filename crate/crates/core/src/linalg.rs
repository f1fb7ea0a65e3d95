//! Exact linear algebra helpers: rational matrices, a fraction-free nullspace
//! solver, and matrices of polynomials used by nilpotent exponentials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::poly::RatPoly;
use crate::rat::{primitive_integer_vector, Rat};

/// Dense rational matrix, rows by columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Rat>>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![vec![Rat::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Rat::one();
        }
        m
    }

    pub fn from_rows(data: Vec<Vec<Rat>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        debug_assert!(data.iter().all(|r| r.len() == cols));
        RatMatrix { rows, cols, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(|x| x.is_zero()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if other.data[k][j].is_zero() {
                        continue;
                    }
                    let prod = &self.data[i][k] * &other.data[k][j];
                    out.data[i][j] += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        self.data
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).fold(Rat::zero(), |s, x| s + x))
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j][i] = self.data[i][j].clone();
            }
        }
        out
    }

    /// Rank by plain rational elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let mut rank = 0usize;
        for col in 0..self.cols {
            let pivot = (rank..self.rows).find(|&r| !m[r][col].is_zero());
            let Some(p) = pivot else { continue };
            m.swap(rank, p);
            let inv = m[rank][col].recip();
            for x in m[rank].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..self.rows {
                if r != rank && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in 0..self.cols {
                        let t = &m[rank][c] * &f;
                        m[r][c] -= t;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_singular(&self) -> bool {
        assert_eq!(self.rows, self.cols);
        self.rank() < self.rows
    }

    /// Square, full-rank test that also accepts rectangular input (always
    /// singular in that case).
    pub fn is_nonsingular_square(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i][j] += &other.data[i][j];
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i][j] -= &other.data[i][j];
            }
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> Self {
        let mut out = self.clone();
        for row in &mut out.data {
            for x in row.iter_mut() {
                *x = &*x * s;
            }
        }
        out
    }
}

/// Exact exponential of a nilpotent square matrix: the series terminates,
/// and None is returned when the matrix is not nilpotent (some power up to
/// the dimension stays nonzero).
pub fn exp_nilpotent(m: &RatMatrix) -> Option<RatMatrix> {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut sum = RatMatrix::identity(n);
    let mut pow = RatMatrix::identity(n);
    for k in 1..=n {
        pow = pow.mul(m);
        if pow.is_zero() {
            return Some(sum);
        }
        sum = sum.add(&pow.scale(&crate::rat::inv_factorial(k as u32)));
    }
    None
}

/// Nullspace basis of a rational matrix by fraction-free (integer) Gaussian
/// elimination. Rows are first cleared of denominators; pivots are chosen on
/// the first nonzero column at the smallest available row index. Each basis
/// vector is scaled to primitive integer form with positive leading entry.
pub fn nullspace(m: &RatMatrix) -> Vec<Vec<Rat>> {
    let rows = m.rows;
    let cols = m.cols;
    // integer rows: clear denominators per row
    let mut a: Vec<Vec<BigInt>> = m
        .data
        .iter()
        .map(|row| {
            let mut lcm = BigInt::one();
            for x in row {
                if !x.is_zero() {
                    lcm = lcm.lcm(x.denom());
                }
            }
            row.iter().map(|x| (x * Rat::from_integer(lcm.clone())).to_integer()).collect()
        })
        .collect();

    // fraction-free forward elimination (Bareiss)
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut prev_pivot = BigInt::one();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(rank, p);
        let pivot = a[rank][col].clone();
        for r in rank + 1..rows {
            // row_r := (pivot * row_r - a[r][col] * row_rank) / prev_pivot
            let factor = a[r][col].clone();
            for c in 0..cols {
                let num = &pivot * &a[r][c] - &factor * &a[rank][c];
                debug_assert!((&num % &prev_pivot).is_zero());
                a[r][c] = num / &prev_pivot;
            }
        }
        prev_pivot = pivot;
        pivot_cols.push(col);
        rank += 1;
        if rank == rows {
            break;
        }
    }

    // back substitution over rationals for each free column
    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Vec::with_capacity(free_cols.len());
    for &fc in &free_cols {
        let mut v = vec![Rat::zero(); cols];
        v[fc] = Rat::one();
        for (i, &pc) in pivot_cols.iter().enumerate().rev() {
            // row i: a[i][pc] * v[pc] + sum_{c>pc} a[i][c] * v[c] = 0
            let mut s = Rat::zero();
            for c in pc + 1..cols {
                if !a[i][c].is_zero() && !v[c].is_zero() {
                    s += Rat::from_integer(a[i][c].clone()) * &v[c];
                }
            }
            v[pc] = -s / Rat::from_integer(a[i][pc].clone());
        }
        basis.push(primitive_integer_vector(&v));
    }
    basis
}

/// Square matrix with polynomial entries, used for adjoint and action
/// operators attached to polynomial-valued algebra elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    pub n: usize,
    pub data: Vec<Vec<RatPoly>>,
}

impl PolyMatrix {
    pub fn zeros(n: usize, n_vars: usize) -> Self {
        PolyMatrix { n, data: vec![vec![RatPoly::zero(n_vars); n]; n] }
    }

    pub fn identity(n: usize, n_vars: usize) -> Self {
        let mut m = Self::zeros(n, n_vars);
        for i in 0..n {
            m.data[i][i] = RatPoly::one(n_vars);
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(|p| p.is_zero()))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                out.data[i][j] = out.data[i][j].add(&other.data[i][j]).expect("shared n_vars");
            }
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> Self {
        let mut out = self.clone();
        for row in &mut out.data {
            for p in row.iter_mut() {
                *p = p.scale(s);
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n_vars = self
            .data
            .first()
            .and_then(|r| r.first())
            .map(|p| p.n_vars())
            .unwrap_or(0);
        let mut out = Self::zeros(self.n, n_vars);
        for i in 0..self.n {
            for k in 0..self.n {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..self.n {
                    if other.data[k][j].is_zero() {
                        continue;
                    }
                    let prod = self.data[i][k].mul(&other.data[k][j]).expect("shared n_vars");
                    out.data[i][j] = out.data[i][j].add(&prod).expect("shared n_vars");
                }
            }
        }
        out
    }

    /// True when some power up to `bound` vanishes; returns that nilpotency
    /// index, or None.
    pub fn nilpotency_index(&self, bound: usize) -> Option<usize> {
        if self.is_zero() {
            return Some(1);
        }
        let mut pow = self.clone();
        for k in 2..=bound {
            pow = pow.mul(self);
            if pow.is_zero() {
                return Some(k);
            }
        }
        None
    }
}
