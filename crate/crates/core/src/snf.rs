//! Smith normal form with unimodular transforms.

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::matrix::IntMatrix;

/// `u * a * v = s` with `s` diagonal, nonnegative, and each diagonal entry
/// dividing the next; `u` and `v` are unimodular.
pub struct SnfResult {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

/// Smith decomposition that also tracks the inverse transforms, so group
/// elements can be carried back and forth between presentations.
pub struct SnfDecomp {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl SnfDecomp {
    /// Diagonal entries padded with zeros up to `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|i| self.s.at(i, i).clone()).collect()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let d = smith(a);
    SnfResult { u: d.u, s: d.s, v: d.v }
}

pub fn smith(a: &IntMatrix) -> SnfDecomp {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut u_inv = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut v_inv = IntMatrix::identity(n);

    // Row op on s mirrors on u; the inverse op lands on u_inv columns.
    macro_rules! row_swap {
        ($i:expr, $j:expr) => {{
            s.swap_rows($i, $j);
            u.swap_rows($i, $j);
            u_inv.swap_cols($i, $j);
        }};
    }
    macro_rules! row_add {
        ($i:expr, $j:expr, $q:expr) => {{
            let q = $q;
            s.add_row_multiple($i, $j, &q);
            u.add_row_multiple($i, $j, &q);
            u_inv.add_col_multiple($j, $i, &(-&q));
        }};
    }
    macro_rules! col_swap {
        ($i:expr, $j:expr) => {{
            s.swap_cols($i, $j);
            v.swap_cols($i, $j);
            v_inv.swap_rows($i, $j);
        }};
    }
    macro_rules! col_add {
        ($i:expr, $j:expr, $q:expr) => {{
            let q = $q;
            s.add_col_multiple($i, $j, &q);
            v.add_col_multiple($i, $j, &q);
            v_inv.add_row_multiple($j, $i, &(-&q));
        }};
    }

    let dim = m.min(n);
    let mut rank = 0usize;

    'outer: loop {
        // Diagonalize from the current pivot position.
        while rank < dim {
            let t = rank;
            // Find the entry of smallest magnitude in the remaining block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if s.at(i, j).is_zero() {
                        continue;
                    }
                    match best {
                        None => best = Some((i, j)),
                        Some((bi, bj)) => {
                            if s.at(i, j).magnitude() < s.at(bi, bj).magnitude() {
                                best = Some((i, j));
                            }
                        }
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            row_swap!(t, bi);
            col_swap!(t, bj);

            loop {
                let mut dirty = false;
                for i in t + 1..m {
                    if s.at(i, t).is_zero() {
                        continue;
                    }
                    let q = -(s.at(i, t) / s.at(t, t));
                    row_add!(i, t, q);
                    if !s.at(i, t).is_zero() {
                        // Remainder is smaller than the pivot; promote it.
                        row_swap!(t, i);
                        dirty = true;
                    }
                }
                for j in t + 1..n {
                    if s.at(t, j).is_zero() {
                        continue;
                    }
                    let q = -(s.at(t, j) / s.at(t, t));
                    col_add!(j, t, q);
                    if !s.at(t, j).is_zero() {
                        col_swap!(t, j);
                        dirty = true;
                    }
                }
                if !dirty {
                    break;
                }
            }
            if s.at(t, t).is_negative() {
                s.negate_row(t);
                u.negate_row(t);
                u_inv.negate_col(t);
            }
            rank += 1;
        }

        // Enforce the divisibility chain d_i | d_{i+1}; a violation pulls the
        // offending entry back into the pivot row and restarts elimination.
        for i in 0..rank {
            for j in i + 1..rank {
                if !(s.at(j, j) % s.at(i, i)).is_zero() {
                    row_add!(i, j, BigInt::from(1));
                    rank = i;
                    continue 'outer;
                }
            }
        }
        break;
    }

    SnfDecomp { u, u_inv, s, v, v_inv, rank }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hnf::det_bareiss;
    use crate::matrix::int;

    fn check(a: &IntMatrix) -> SnfDecomp {
        let d = smith(a);
        let uav = d.u.mul(a).unwrap().mul(&d.v).unwrap();
        assert_eq!(uav, d.s, "u*a*v != s");
        assert_eq!(
            d.u.mul(&d.u_inv).unwrap(),
            IntMatrix::identity(a.rows()),
            "u_inv is not the inverse of u"
        );
        assert_eq!(
            d.v.mul(&d.v_inv).unwrap(),
            IntMatrix::identity(a.cols()),
            "v_inv is not the inverse of v"
        );
        assert_eq!(det_bareiss(&d.u).abs(), int(1));
        assert_eq!(det_bareiss(&d.v).abs(), int(1));
        let diag = d.diagonal();
        for w in diag.windows(2) {
            if !w[0].is_zero() {
                assert!(w[1].is_zero() || (&w[1] % &w[0]).is_zero(), "divisibility");
            } else {
                assert!(w[1].is_zero(), "zero factors must trail");
            }
        }
        d
    }

    #[test]
    fn identity_is_fixed() {
        let a = IntMatrix::identity(2);
        let d = check(&a);
        assert_eq!(d.s, a);
    }

    #[test]
    fn already_diagonal() {
        let a = IntMatrix::from_rows(&[&[1, 0], &[0, 0]]);
        let d = check(&a);
        assert_eq!(d.s, a);
    }

    #[test]
    fn classic_two_by_two() {
        // d1 = gcd of entries = 2, d1*d2 = |det| = 8.
        let a = IntMatrix::from_rows(&[&[2, 4], &[6, 8]]);
        let d = check(&a);
        assert_eq!(d.s, IntMatrix::from_rows(&[&[2, 0], &[0, 4]]));
    }

    #[test]
    fn divisibility_needs_fixup() {
        let a = IntMatrix::from_rows(&[&[2, 0], &[0, 3]]);
        let d = check(&a);
        assert_eq!(d.s, IntMatrix::from_rows(&[&[1, 0], &[0, 6]]));
    }

    #[test]
    fn empty_shapes() {
        let a = IntMatrix::zeros(0, 3);
        let d = smith(&a);
        assert_eq!(d.rank, 0);
        let a = IntMatrix::zeros(0, 0);
        let d = smith(&a);
        assert_eq!(d.rank, 0);
    }
}
