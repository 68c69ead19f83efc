//! Integer linear solving, with and without congruence constraints.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::hnf::{col_echelon, col_lattice_basis, ColEchelon};
use crate::matrix::IntMatrix;
use crate::{Error, Result};

/// Solves `a * x = b` over the integers. Returns `Ok(None)` when no integer
/// solution exists. Deterministic: the returned solution has no component
/// along the kernel of `a`.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(String::from(
            "right-hand side length does not match row count",
        )));
    }
    Ok(col_echelon(a).solve(b))
}

/// Precomputed echelon form for solving many systems against one matrix.
pub struct LinearSolver {
    ech: ColEchelon,
    cols: usize,
}

impl LinearSolver {
    pub fn new(a: &IntMatrix) -> Self {
        LinearSolver {
            ech: col_echelon(a),
            cols: a.cols(),
        }
    }

    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        self.ech.solve(b)
    }

    pub fn cols(&self) -> usize {
        self.cols
    }
}

/// Solver for `a * x ≡ b (mod span_col(lattice))`; augments the matrix with
/// the lattice generators and truncates solutions back to `x`.
pub struct ModSolver {
    solver: LinearSolver,
    vars: usize,
}

impl ModSolver {
    pub fn new(a: &IntMatrix, lattice: &IntMatrix) -> Result<Self> {
        let aug = a.hstack(lattice)?;
        Ok(ModSolver {
            solver: LinearSolver::new(&aug),
            vars: a.cols(),
        })
    }

    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        self.solver.solve(b).map(|mut x| {
            x.truncate(self.vars);
            x
        })
    }
}

/// Extended gcd of a list: returns `(g, coeffs)` with `sum coeffs[i]*vals[i]
/// = g >= 0`.
pub fn egcd_list(vals: &[BigInt]) -> (BigInt, Vec<BigInt>) {
    let mut g = BigInt::zero();
    let mut coeffs: Vec<BigInt> = Vec::with_capacity(vals.len());
    for v in vals {
        if g.is_zero() && v.is_zero() {
            coeffs.push(BigInt::zero());
            continue;
        }
        let e = g.extended_gcd(v);
        for c in coeffs.iter_mut() {
            *c *= &e.x;
        }
        coeffs.push(e.y);
        g = e.gcd;
    }
    (g, coeffs)
}

/// An affine sublattice `origin + span_col(basis)` of `Z^n`, refined one
/// congruence at a time. Used to solve systems mixed from exact equations
/// and congruences without stacking the moduli into one huge matrix.
pub struct AffineSublattice {
    pub origin: Vec<BigInt>,
    pub basis: IntMatrix,
    dirty: usize,
}

impl AffineSublattice {
    pub fn new(origin: Vec<BigInt>, basis: IntMatrix) -> Self {
        assert_eq!(origin.len(), basis.rows());
        AffineSublattice { origin, basis, dirty: 0 }
    }

    pub fn full(n: usize) -> Self {
        AffineSublattice {
            origin: vec![BigInt::zero(); n],
            basis: IntMatrix::identity(n),
            dirty: 0,
        }
    }

    /// Intersects with `{x : c·x ≡ rhs (mod m)}`, `m > 0`. Returns false
    /// when the intersection is empty.
    pub fn refine_congruence(&mut self, c: &[BigInt], rhs: &BigInt, m: &BigInt) -> bool {
        debug_assert!(!m.is_zero());
        // Rewrite on lattice coordinates u: c' u ≡ r' (mod m).
        let cb = match self.basis.vec_mul(c) {
            Ok(v) => v,
            Err(_) => return false,
        };
        let mut r = rhs.clone();
        for (ci, oi) in c.iter().zip(&self.origin) {
            if !ci.is_zero() && !oi.is_zero() {
                r -= ci * oi;
            }
        }
        if cb.iter().all(Zero::is_zero) {
            return r.mod_floor(m).is_zero();
        }
        let k = self.basis.cols();
        // Particular solution of c' u + m t = r.
        let mut all = cb.clone();
        all.push(m.clone());
        let (g, coeffs) = egcd_list(&all);
        let (q, rem) = r.div_rem(&g);
        if !rem.is_zero() {
            return false;
        }
        let u0: Vec<BigInt> = coeffs[..k].iter().map(|c| c * &q).collect();
        let shift = self.basis.mul_vec(&u0).expect("shape");
        for (o, s) in self.origin.iter_mut().zip(shift) {
            *o += s;
        }
        // Kernel of the single congruence: first k coordinates of
        // ker [c' | -m].
        let mut row = cb;
        row.push(-m.clone());
        let row_mat = IntMatrix::from_bigint_rows(vec![row], k + 1).expect("shape");
        let ker = col_echelon(&row_mat).kernel().truncate_rows(k);
        self.basis = self.basis.mul(&ker).expect("shape");
        self.dirty += 1;
        if self.dirty >= 16 {
            self.compact();
        }
        true
    }

    /// Re-reduces the basis to keep entries small after many refinements.
    pub fn compact(&mut self) {
        self.basis = col_lattice_basis(&self.basis);
        self.dirty = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int;

    #[test]
    fn diagonal_system() {
        let a = IntMatrix::from_rows(&[&[2, 0], &[0, 3]]);
        let x = solve_integer(&a, &[int(4), int(9)]).unwrap().unwrap();
        assert_eq!(x, vec![int(2), int(3)]);
    }

    #[test]
    fn parity_obstruction() {
        let a = IntMatrix::from_rows(&[&[2]]);
        assert!(solve_integer(&a, &[int(1)]).unwrap().is_none());
    }

    #[test]
    fn substitute_back() {
        let a = IntMatrix::from_rows(&[&[2, 4], &[6, 8]]);
        let b = [int(2), int(6)];
        let x = solve_integer(&a, &b).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), b.to_vec());
    }

    #[test]
    fn dimension_error() {
        let a = IntMatrix::from_rows(&[&[1, 2]]);
        assert!(solve_integer(&a, &[int(1), int(2)]).is_err());
    }

    #[test]
    fn egcd_combination() {
        let vals = [int(6), int(10), int(15)];
        let (g, coeffs) = egcd_list(&vals);
        assert_eq!(g, int(1));
        let combo: BigInt = coeffs.iter().zip(&vals).map(|(c, v)| c * v).sum();
        assert_eq!(combo, int(1));
    }

    #[test]
    fn congruence_refinement() {
        // x + y ≡ 1 (mod 2) and x ≡ 0 (mod 3) inside Z^2.
        let mut aff = AffineSublattice::full(2);
        assert!(aff.refine_congruence(&[int(1), int(1)], &int(1), &int(2)));
        assert!(aff.refine_congruence(&[int(1), int(0)], &int(0), &int(3)));
        aff.compact();
        // Spot-check a few points of the affine set.
        for u in [-2i64, 0, 1, 3] {
            for v in [-1i64, 0, 2] {
                let x = &aff.origin[0]
                    + aff.basis.at(0, 0) * int(u)
                    + aff.basis.at(0, 1) * int(v);
                let y = &aff.origin[1]
                    + aff.basis.at(1, 0) * int(u)
                    + aff.basis.at(1, 1) * int(v);
                assert!((&x + &y - int(1)).mod_floor(&int(2)).is_zero());
                assert!(x.mod_floor(&int(3)).is_zero());
            }
        }
        // An unsatisfiable congruence empties the set.
        let mut bad = AffineSublattice::full(1);
        assert!(!bad.refine_congruence(&[int(2)], &int(1), &int(4)));
    }
}
