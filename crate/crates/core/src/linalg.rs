//! Exact dense linear algebra over the coefficient domains.
//!
//! Two layers:
//!
//! - [`bareiss_det`]: fraction-free determinant (Bareiss elimination) over
//!   an integral domain, used for Gram determinants so that polynomial
//!   entries stay polynomial throughout;
//! - [`Echelon`]: incremental reduced row echelon form over [`Scalar`]
//!   (a field in both modes), used for ranks, kernels and intertwiner
//!   systems. Rows are fed one at a time, so large sparse constraint
//!   systems never materialize in full.

use crate::scalar::{Mode, Rational, Scalar};

/// Integral domain operations needed by fraction-free elimination.
pub trait Domain: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    /// Division known to be exact; panics otherwise.
    fn exact_div(&self, rhs: &Self) -> Self;
}

impl Domain for crate::scalar::DeltaPoly {
    fn zero() -> Self {
        crate::scalar::DeltaPoly::zero()
    }
    fn one() -> Self {
        crate::scalar::DeltaPoly::one()
    }
    fn is_zero(&self) -> bool {
        self.is_zero()
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn exact_div(&self, rhs: &Self) -> Self {
        crate::scalar::DeltaPoly::exact_div(self, rhs)
    }
}

impl Domain for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        self.is_zero()
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn exact_div(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

/// Fraction-free determinant by Bareiss elimination with row pivoting.
/// Intermediate entries are minors of the input, so they stay in the
/// domain; every division is exact.
pub fn bareiss_det<T: Domain>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    if n == 0 {
        return T::one();
    }
    debug_assert!(m.iter().all(|row| row.len() == n), "square matrix");
    let mut prev = T::one();
    let mut negate = false;
    for k in 0..n {
        let pivot = match (k..n).find(|&i| !m[i][k].is_zero()) {
            Some(p) => p,
            None => return T::zero(),
        };
        if pivot != k {
            m.swap(pivot, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.exact_div(&prev);
            }
            m[i][k] = T::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        T::zero().sub(&det)
    } else {
        det
    }
}

/// Incremental reduced row echelon form over the Scalar field.
#[derive(Clone)]
pub struct Echelon {
    mode: Mode,
    cols: usize,
    /// Rows kept fully reduced; `pivots[i]` is the pivot column of `rows[i]`,
    /// strictly increasing is not required but pivot columns are distinct.
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(mode: Mode, cols: usize) -> Self {
        Echelon {
            mode,
            cols,
            rows: vec![],
            pivots: vec![],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Reduces `row` against the current basis and inserts the remainder
    /// if nonzero. Returns true when the rank grew.
    pub fn insert(&mut self, mut row: Vec<Scalar>) -> bool {
        debug_assert_eq!(row.len(), self.cols);
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for j in 0..self.cols {
                if !r[j].is_zero() {
                    row[j] = &row[j] - &(&c * &r[j]);
                }
            }
        }
        let pivot = match row.iter().position(|x| !x.is_zero()) {
            Some(p) => p,
            None => return false,
        };
        let inv = row[pivot].recip().expect("nonzero pivot");
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        // Keep the basis fully reduced: clear the new pivot column above.
        for r in self.rows.iter_mut() {
            if !r[pivot].is_zero() {
                let c = r[pivot].clone();
                for j in 0..self.cols {
                    if !row[j].is_zero() {
                        r[j] = &r[j] - &(&c * &row[j]);
                    }
                }
            }
        }
        self.rows.push(row);
        self.pivots.push(pivot);
        true
    }

    /// Basis of the solution space of the homogeneous system whose
    /// equations are the inserted rows. Deterministic: one vector per
    /// free column, ascending.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let mut pivot_of_col = vec![None; self.cols];
        for (i, &p) in self.pivots.iter().enumerate() {
            pivot_of_col[p] = Some(i);
        }
        let mut basis = vec![];
        for j in 0..self.cols {
            if pivot_of_col[j].is_some() {
                continue;
            }
            let mut v = vec![Scalar::zero(&self.mode); self.cols];
            v[j] = Scalar::one(&self.mode);
            for (i, &p) in self.pivots.iter().enumerate() {
                let c = &self.rows[i][j];
                if !c.is_zero() {
                    v[p] = -c;
                }
            }
            basis.push(v);
        }
        basis
    }

    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }
}

/// Rank of a dense matrix given as rows.
pub fn rank(mode: &Mode, rows: &[Vec<Scalar>]) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut ech = Echelon::new(mode.clone(), cols);
    for row in rows {
        ech.insert(row.clone());
    }
    ech.rank()
}
