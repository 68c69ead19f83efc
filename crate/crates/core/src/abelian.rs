//! Finitely presented abelian groups and their subquotients.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::hnf::row_lattice_basis;
use crate::matrix::IntMatrix;
use crate::snf::smith;
use crate::solve::LinearSolver;
use crate::{Error, Result};

/// A finitely presented abelian group: `n_gen` free generators modulo the
/// lattice spanned by the rows of `relations`.
///
/// The relation matrix is stored in row Hermite form, so two groups compare
/// equal exactly when they have the same generators and the same relation
/// lattice.
#[derive(Clone, PartialEq, Eq)]
pub struct FinAbGroup {
    n_gen: usize,
    relations: IntMatrix,
}

impl FinAbGroup {
    pub fn new(n_gen: usize, relations: IntMatrix) -> Result<Self> {
        if relations.cols() != n_gen && relations.rows() != 0 {
            return Err(Error::DimensionMismatch(String::from(
                "relation length does not match generator count",
            )));
        }
        let canon = if relations.rows() == 0 {
            IntMatrix::zeros(0, n_gen)
        } else {
            row_lattice_basis(&relations)
        };
        Ok(FinAbGroup { n_gen, relations: canon })
    }

    /// Free abelian group of the given rank.
    pub fn free(n: usize) -> Self {
        FinAbGroup {
            n_gen: n,
            relations: IntMatrix::zeros(0, n),
        }
    }

    /// The trivial group, presented on no generators.
    pub fn trivial() -> Self {
        Self::free(0)
    }

    /// Direct sum of cyclic groups `Z/d` for the torsion orders given,
    /// followed by `free` copies of `Z`. Torsion orders must be >= 1.
    pub fn smith_group(torsion: &[u64], free: usize) -> Self {
        let n = torsion.len() + free;
        let mut rows = Vec::new();
        for (i, &d) in torsion.iter().enumerate() {
            assert!(d >= 1, "torsion order must be positive");
            let mut row = vec![BigInt::zero(); n];
            row[i] = BigInt::from(d);
            rows.push(row);
        }
        let relations = IntMatrix::from_bigint_rows(rows, n).expect("shape");
        Self::new(n, relations).expect("valid presentation")
    }

    pub fn n_gen(&self) -> usize {
        self.n_gen
    }

    /// Canonical relation basis, one relation per row.
    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    /// Relation lattice generators as columns (for augmented solves).
    pub fn relation_cols(&self) -> IntMatrix {
        self.relations.transpose()
    }

    /// Canonical representative of `v` modulo the relation lattice. Two
    /// vectors are congruent iff their normal forms are identical.
    pub fn normal_form(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.n_gen {
            return Err(Error::LengthMismatch {
                expected: self.n_gen,
                found: v.len(),
            });
        }
        let mut out = v.to_vec();
        for i in 0..self.relations.rows() {
            let row = self.relations.row(i);
            let pivot_col = row.iter().position(|x| !x.is_zero()).expect("no zero rows");
            let q = out[pivot_col].div_floor(&row[pivot_col]);
            if q.is_zero() {
                continue;
            }
            for j in pivot_col..self.n_gen {
                if !row[j].is_zero() {
                    out[j] -= &q * &row[j];
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero_elem(&self, v: &[BigInt]) -> Result<bool> {
        Ok(self.normal_form(v)?.iter().all(Zero::is_zero))
    }

    pub fn is_trivial(&self) -> bool {
        let (torsion, free) = self.invariant_factors();
        torsion.is_empty() && free == 0
    }

    /// Invariant factors `(torsion orders > 1 in divisibility order, free
    /// rank)`.
    pub fn invariant_factors(&self) -> (Vec<BigInt>, usize) {
        let d = smith(&self.relation_cols());
        let mut torsion = Vec::new();
        let mut free = self.n_gen;
        for s in d.diagonal() {
            if s.is_zero() {
                continue;
            }
            free -= 1;
            if !s.is_one() {
                torsion.push(s);
            }
        }
        torsion.sort();
        (torsion, free)
    }
}

impl fmt::Display for FinAbGroup {
    /// `0`, `Z`, `Z/2`, `Z^2 + Z/2 + Z/4`, ...
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (torsion, free) = self.invariant_factors();
        let mut parts: Vec<String> = Vec::new();
        match free {
            0 => {}
            1 => parts.push(String::from("Z")),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinAbGroup({} gens, {})", self.n_gen, self)
    }
}

/// A subquotient `W/L` of an ambient finitely presented group, where `W` is
/// generated by the columns of a kernel map and `L` by the columns of an
/// image map (both taken together with the ambient relations).
///
/// The quotient itself is presented in Smith form. `projection` expresses the
/// class of each kernel generator in those coordinates; classes of arbitrary
/// ambient vectors lying in `W` go through [`Subquotient::class_of`].
pub struct Subquotient {
    pub group: FinAbGroup,
    pub projection: IntMatrix,
    basis: IntMatrix,
    solver: LinearSolver,
    u: IntMatrix,
    u_inv: IntMatrix,
    /// For each kept Smith coordinate: `(row in u-coordinates, modulus)`,
    /// modulus zero meaning a free coordinate.
    kept: Vec<(usize, BigInt)>,
}

impl Subquotient {
    /// Class coordinates of an ambient vector known to lie in the kernel
    /// subgroup. Errors with `ContainmentViolation` otherwise.
    pub fn class_of(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        let x = self.solver.solve(v).ok_or(Error::ContainmentViolation)?;
        let coords = self.u.mul_vec(&x)?;
        Ok(self.reduce(&coords))
    }

    /// An ambient representative of the `i`-th generator of the quotient.
    pub fn generator_rep(&self, i: usize) -> Vec<BigInt> {
        let (row, _) = self.kept[i];
        let x = self.u_inv.col(row);
        self.basis.mul_vec(&x).expect("shape")
    }

    fn reduce(&self, coords: &[BigInt]) -> Vec<BigInt> {
        self.kept
            .iter()
            .map(|(row, m)| {
                if m.is_zero() {
                    coords[*row].clone()
                } else {
                    coords[*row].mod_floor(m)
                }
            })
            .collect()
    }
}

/// Computes `W/L` where `W` is generated by the columns of `kernel_map`
/// (plus ambient relations) and `L` by the columns of `image_map` (plus
/// ambient relations). `L ⊆ W` is checked.
pub fn subquotient_full(
    ambient: &FinAbGroup,
    kernel_map: &IntMatrix,
    image_map: &IntMatrix,
) -> Result<Subquotient> {
    let n = ambient.n_gen();
    if kernel_map.rows() != n || image_map.rows() != n {
        return Err(Error::DimensionMismatch(String::from(
            "map rows must match ambient generators",
        )));
    }
    let rel_cols = ambient.relation_cols();
    let w_gens = kernel_map.hstack(&rel_cols)?;
    let basis = crate::hnf::col_lattice_basis(&w_gens);
    let solver = LinearSolver::new(&basis);
    let k = basis.cols();

    // Relations of the quotient: coordinates of L's generators on the basis.
    let l_gens = image_map.hstack(&rel_cols)?;
    let mut rel_coords: Vec<Vec<BigInt>> = Vec::with_capacity(l_gens.cols());
    for j in 0..l_gens.cols() {
        let col = l_gens.col(j);
        let x = solver.solve(&col).ok_or(Error::ContainmentViolation)?;
        rel_coords.push(x);
    }
    let rel_matrix = IntMatrix::from_cols(&rel_coords, k)?;
    let d = smith(&rel_matrix);
    let mut diag = d.diagonal();
    diag.resize(k, BigInt::zero());

    let mut kept = Vec::new();
    let mut torsion = Vec::new();
    let mut free = 0usize;
    for (i, s) in diag.iter().enumerate() {
        if s.is_one() {
            continue;
        }
        kept.push((i, s.clone()));
        if s.is_zero() {
            free += 1;
        } else {
            torsion.push(u64::try_from(s).expect("small torsion order"));
        }
    }
    let group = FinAbGroup::smith_group(&torsion, free);

    let sub = Subquotient {
        group,
        projection: IntMatrix::zeros(kept.len(), kernel_map.cols()),
        basis,
        solver,
        u: d.u,
        u_inv: d.u_inv,
        kept,
    };

    // Projection on the kernel generators, in quotient coordinates.
    let mut proj_cols = Vec::with_capacity(kernel_map.cols());
    for j in 0..kernel_map.cols() {
        proj_cols.push(sub.class_of(&kernel_map.col(j))?);
    }
    let projection = IntMatrix::from_cols(&proj_cols, sub.kept.len())?;
    Ok(Subquotient { projection, ..sub })
}

/// The subquotient as `(group in canonical form, projection)`; the projection
/// takes coefficient vectors over the kernel generators to quotient
/// coordinates, and kills every image generator.
pub fn subquotient(
    ambient: &FinAbGroup,
    kernel_map: &IntMatrix,
    image_map: &IntMatrix,
) -> Result<(FinAbGroup, IntMatrix)> {
    let sub = subquotient_full(ambient, kernel_map, image_map)?;
    Ok((sub.group, sub.projection))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int;

    #[test]
    fn normal_form_mixed() {
        // Z + Z/2, free generator first.
        let g = FinAbGroup::new(2, IntMatrix::from_rows(&[&[0, 2]])).unwrap();
        let nf = g.normal_form(&[int(3), int(5)]).unwrap();
        assert_eq!(nf, vec![int(3), int(1)]);
        // a relation row reduces to zero
        let nf = g.normal_form(&[int(0), int(2)]).unwrap();
        assert_eq!(nf, vec![int(0), int(0)]);
        // idempotent
        let again = g.normal_form(&nf).unwrap();
        assert_eq!(again, nf);
    }

    #[test]
    fn display_forms() {
        assert_eq!(format!("{}", FinAbGroup::trivial()), "0");
        assert_eq!(format!("{}", FinAbGroup::free(1)), "Z");
        assert_eq!(format!("{}", FinAbGroup::smith_group(&[2], 0)), "Z/2");
        assert_eq!(
            format!("{}", FinAbGroup::smith_group(&[2, 4], 2)),
            "Z^2 + Z/2 + Z/4"
        );
    }

    #[test]
    fn quotient_of_plane_by_doubles() {
        let ambient = FinAbGroup::free(2);
        let (q, _) = subquotient(
            &ambient,
            &IntMatrix::identity(2),
            &IntMatrix::from_rows(&[&[2, 0], &[0, 2]]),
        )
        .unwrap();
        assert_eq!(q.invariant_factors(), (vec![int(2), int(2)], 0));
    }

    #[test]
    fn kernel_equals_image_is_trivial() {
        let ambient = FinAbGroup::free(3);
        let m = IntMatrix::from_rows(&[&[1, 0], &[0, 2], &[3, 1]]);
        let (q, _) = subquotient(&ambient, &m, &m).unwrap();
        assert!(q.is_trivial());
    }

    #[test]
    fn reduction_mod_two() {
        // Z generated by a divisor class, kernel all of Z, image 2Z.
        let ambient = FinAbGroup::free(1);
        let (q, proj) = subquotient(
            &ambient,
            &IntMatrix::identity(1),
            &IntMatrix::from_rows(&[&[2]]),
        )
        .unwrap();
        assert_eq!(q.invariant_factors(), (vec![int(2)], 0));
        assert_eq!(proj, IntMatrix::from_rows(&[&[1]]));
    }

    #[test]
    fn containment_is_checked() {
        let ambient = FinAbGroup::free(2);
        let kernel = IntMatrix::from_rows(&[&[1], &[0]]);
        let image = IntMatrix::from_rows(&[&[0], &[1]]);
        assert_eq!(
            subquotient(&ambient, &kernel, &image).unwrap_err(),
            Error::ContainmentViolation
        );
    }

    #[test]
    fn classes_and_generators_round_trip() {
        // Z^2 / <(2,0),(0,3)> with kernel the whole plane.
        let ambient = FinAbGroup::free(2);
        let sub = subquotient_full(
            &ambient,
            &IntMatrix::identity(2),
            &IntMatrix::from_rows(&[&[2, 0], &[0, 3]]),
        )
        .unwrap();
        assert_eq!(sub.group.invariant_factors(), (vec![int(6)], 0));
        for i in 0..sub.group.n_gen() {
            let rep = sub.generator_rep(i);
            let class = sub.class_of(&rep).unwrap();
            let mut unit = vec![int(0); sub.group.n_gen()];
            unit[i] = int(1);
            assert_eq!(class, unit);
        }
    }
}
