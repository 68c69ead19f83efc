//! Hermite normal forms, integer kernels and lattice bases.
//!
//! The workhorse is a column-style echelon form with a tracked unimodular
//! transform `A * P = H`. Pivots are the topmost nonzero entries of the
//! leading columns, pivot rows strictly increase, pivots are positive, and
//! entries to the left of a pivot in its row are reduced into `[0, pivot)`.
//! Trailing columns of `H` are zero, so the matching columns of `P` form a
//! basis of the integer kernel of `A`.

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::IntMatrix;

/// Column echelon form `H = A * P` with `P` unimodular.
pub struct ColEchelon {
    pub h: IntMatrix,
    pub p: IntMatrix,
    /// `(row, col)` of each pivot, in increasing row order.
    pub pivots: Vec<(usize, usize)>,
}

pub fn col_echelon(a: &IntMatrix) -> ColEchelon {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut p = IntMatrix::identity(n);
    let mut pivots = Vec::new();
    let mut next = 0usize; // next pivot column slot

    for row in 0..m {
        if next == n {
            break;
        }
        // Reduce columns next..n to a single nonzero entry in this row.
        loop {
            let mut best: Option<usize> = None;
            for c in next..n {
                if h.at(row, c).is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(c),
                    Some(b) => {
                        if h.at(row, c).magnitude() < h.at(row, b).magnitude() {
                            best = Some(c);
                        }
                    }
                }
            }
            let Some(b) = best else { break };
            h.swap_cols(next, b);
            p.swap_cols(next, b);
            let mut clean = true;
            for c in next + 1..n {
                if h.at(row, c).is_zero() {
                    continue;
                }
                let q = -(h.at(row, c) / h.at(row, next));
                h.add_col_multiple(c, next, &q);
                p.add_col_multiple(c, next, &q);
                if !h.at(row, c).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h.at(row, next).is_zero() {
            continue;
        }
        if h.at(row, next).is_negative() {
            h.negate_col(next);
            p.negate_col(next);
        }
        // Canonical reduction of earlier columns at the pivot row.
        let pivot = h.at(row, next).clone();
        for c in 0..next {
            let q = -h.at(row, c).div_floor(&pivot);
            h.add_col_multiple(c, next, &q);
            p.add_col_multiple(c, next, &q);
        }
        pivots.push((row, next));
        next += 1;
    }

    ColEchelon { h, p, pivots }
}

impl ColEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Columns of `P` spanning the integer kernel of `A`.
    pub fn kernel(&self) -> IntMatrix {
        let keep: Vec<usize> = (self.rank()..self.p.cols()).collect();
        self.p.select_cols(&keep)
    }

    /// One integer solution of `A x = b`, if any. The solution is the unique
    /// one with zero coefficients on the kernel columns, so it is
    /// deterministic for fixed input.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let m = self.h.rows();
        if b.len() != m {
            return None;
        }
        let mut residual: Vec<BigInt> = b.to_vec();
        let mut y = alloc::vec![BigInt::zero(); self.h.cols()];
        for &(row, col) in &self.pivots {
            let pivot = self.h.at(row, col);
            let (q, r) = residual[row].div_rem(pivot);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for i in row..m {
                    let hv = self.h.at(i, col);
                    if !hv.is_zero() {
                        residual[i] -= &q * hv;
                    }
                }
            }
            y[col] = q;
        }
        if residual.iter().any(|x| !x.is_zero()) {
            return None;
        }
        self.p.mul_vec(&y).ok()
    }
}

/// Basis of the integer kernel of `a`, as columns.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    col_echelon(a).kernel()
}

/// Canonical basis of the lattice spanned by the columns of `a`, as the
/// nonzero columns of the column Hermite form. Two column sets span the same
/// lattice iff their bases are equal.
pub fn col_lattice_basis(a: &IntMatrix) -> IntMatrix {
    let ech = col_echelon(a);
    let keep: Vec<usize> = (0..ech.rank()).collect();
    ech.h.select_cols(&keep)
}

/// Canonical basis of the lattice spanned by the rows of `a` (row Hermite
/// form with zero rows dropped).
pub fn row_lattice_basis(a: &IntMatrix) -> IntMatrix {
    col_lattice_basis(&a.transpose()).transpose()
}

/// `{x : a x ∈ span_col(lattice)}`, as a column basis. `lattice` may have
/// zero columns, in which case this is the plain integer kernel.
pub fn kernel_mod_cols(a: &IntMatrix, lattice: &IntMatrix) -> IntMatrix {
    if lattice.cols() == 0 {
        return kernel_basis(a);
    }
    let aug = a.hstack(&lattice.neg()).expect("row counts agree");
    let ker = kernel_basis(&aug);
    col_lattice_basis(&ker.truncate_rows(a.cols()))
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det_bareiss(a: &IntMatrix) -> BigInt {
    assert_eq!(a.rows(), a.cols(), "determinant of a non-square matrix");
    let n = a.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m.at(k, k).is_zero() {
            let swap = (k + 1..n).find(|&i| !m.at(i, k).is_zero());
            match swap {
                Some(i) => {
                    m.swap_rows(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / &prev;
                m.set(i, j, v);
            }
            m.set(i, k, BigInt::zero());
        }
        prev = m.at(k, k).clone();
    }
    sign * m.at(n - 1, n - 1).clone()
}
