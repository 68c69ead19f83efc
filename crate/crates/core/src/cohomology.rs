//! Cohomology of the dense bar complex, computed as exact subquotients.
//!
//! The cochain space `C^n = M^(G^n)` is a finitely presented group whose
//! relation lattice is block diagonal, one copy of `M`'s relations per tuple.
//! Kernels and solves against the differential exploit that structure: the
//! carrier is put in Smith coordinates once, free coordinates give exact
//! integer equations, and torsion coordinates give congruences handled by
//! affine lattice refinement. That keeps the per-tuple moduli out of the
//! echelon transforms, which would otherwise dominate.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::abelian::{subquotient_full, FinAbGroup, Subquotient};
use crate::cochain::{coboundary, require_cocycle, unrank_tuple, Cochain};
use crate::hnf::kernel_basis;
use crate::matrix::IntMatrix;
use crate::module::GModule;
use crate::snf::smith;
use crate::solve::{AffineSublattice, LinearSolver};
use crate::{check_table_size, Error, Result};

/// Carrier in Smith coordinates: `w` is unimodular and `w·Λ` is the diagonal
/// lattice with the given moduli (`0` marks a free coordinate, i.e. the
/// constraint `= 0`; `1` marks no constraint).
pub(crate) struct BlockSmith {
    w: IntMatrix,
    moduli: Vec<BigInt>,
}

pub(crate) fn block_smith(carrier: &FinAbGroup) -> BlockSmith {
    let d = smith(&carrier.relation_cols());
    let n = carrier.n_gen();
    let mut moduli = vec![BigInt::zero(); n];
    for (i, s) in d.diagonal().into_iter().enumerate() {
        if !s.is_zero() {
            moduli[i] = s;
        }
    }
    BlockSmith { w: d.u, moduli }
}

/// The matrix of the bar differential `C^n -> C^{n+1}` on free covers,
/// tuple-major coordinates.
pub(crate) fn differential_matrix(module: &GModule, n: usize) -> Result<IntMatrix> {
    let group = module.group();
    let order = group.order();
    let src_tuples = check_table_size(order, n)?;
    let dst_tuples = check_table_size(order, n + 1)?;
    let n_gen = module.carrier().n_gen();
    let mut d = IntMatrix::zeros(dst_tuples * n_gen, src_tuples * n_gen);

    let mut tuple = vec![0usize; n + 1];
    let mut inner = vec![0usize; n];
    for dst in 0..dst_tuples {
        unrank_tuple(dst, order, &mut tuple);

        // g_1 · c(tail)
        inner.copy_from_slice(&tuple[1..]);
        let src = crate::cochain::rank_tuple(&inner, order);
        let act = module.action(tuple[0]);
        for i in 0..n_gen {
            for j in 0..n_gen {
                let v = act.at(i, j);
                if !v.is_zero() {
                    let cur = d.at(dst * n_gen + i, src * n_gen + j) + v;
                    d.set(dst * n_gen + i, src * n_gen + j, cur);
                }
            }
        }

        // merged terms and the final face, all by ±identity blocks
        let mut face = |src_tuple: &[usize], sign_positive: bool| {
            let src = crate::cochain::rank_tuple(src_tuple, order);
            for i in 0..n_gen {
                let delta = if sign_positive { BigInt::one() } else { -BigInt::one() };
                let cur = d.at(dst * n_gen + i, src * n_gen + i) + delta;
                d.set(dst * n_gen + i, src * n_gen + i, cur);
            }
        };
        for i in 1..=n {
            for (k, slot) in inner.iter_mut().enumerate() {
                *slot = match k.cmp(&(i - 1)) {
                    core::cmp::Ordering::Less => tuple[k],
                    core::cmp::Ordering::Equal => group.mul(tuple[i - 1], tuple[i]),
                    core::cmp::Ordering::Greater => tuple[k + 1],
                };
            }
            face(&inner, i % 2 == 0);
        }
        inner.copy_from_slice(&tuple[..n]);
        face(&inner, (n + 1) % 2 == 0);
    }
    Ok(d)
}

/// Relation rows rewritten by the Smith transform: exact equations for free
/// coordinates and congruences for torsion ones.
struct BlockRows {
    equations: IntMatrix,
    eq_coords: Vec<(usize, usize)>,
    congruences: Vec<(Vec<BigInt>, BigInt, (usize, usize))>,
}

fn block_rows(d: &IntMatrix, bs: &BlockSmith, dst_tuples: usize) -> BlockRows {
    let n_gen = bs.w.rows();
    let cols = d.cols();
    let mut eq_rows: Vec<Vec<BigInt>> = Vec::new();
    let mut eq_coords = Vec::new();
    let mut congruences = Vec::new();
    for t in 0..dst_tuples {
        for i in 0..n_gen {
            let m = &bs.moduli[i];
            if m.is_one() {
                continue;
            }
            let mut row = vec![BigInt::zero(); cols];
            for j in 0..n_gen {
                let w = bs.w.at(i, j);
                if w.is_zero() {
                    continue;
                }
                let drow = d.row(t * n_gen + j);
                for (ri, dv) in row.iter_mut().zip(drow) {
                    if !dv.is_zero() {
                        *ri += w * dv;
                    }
                }
            }
            if m.is_zero() {
                eq_rows.push(row);
                eq_coords.push((t, i));
            } else {
                congruences.push((row, m.clone(), (t, i)));
            }
        }
    }
    let equations = IntMatrix::from_bigint_rows(eq_rows, cols).expect("uniform rows");
    BlockRows { equations, eq_coords, congruences }
}

/// Smith-coordinate value of a target coordinate `(tuple, i)` for a flat
/// right-hand side.
fn transformed_rhs(bs: &BlockSmith, b: &[BigInt], t: usize, i: usize) -> BigInt {
    let n_gen = bs.w.rows();
    let mut acc = BigInt::zero();
    for j in 0..n_gen {
        let w = bs.w.at(i, j);
        if !w.is_zero() && !b[t * n_gen + j].is_zero() {
            acc += w * &b[t * n_gen + j];
        }
    }
    acc
}

/// Column basis of `{x : d·x ∈ Λ_target^(dst_tuples)}`.
pub(crate) fn kernel_mod_block(d: &IntMatrix, bs: &BlockSmith, dst_tuples: usize) -> IntMatrix {
    let rows = block_rows(d, bs, dst_tuples);
    let k1 = kernel_basis(&rows.equations);
    let mut aff = AffineSublattice::new(vec![BigInt::zero(); d.cols()], k1);
    let zero = BigInt::zero();
    for (c, m, _) in &rows.congruences {
        let ok = aff.refine_congruence(c, &zero, m);
        debug_assert!(ok, "homogeneous congruence is always solvable");
    }
    aff.compact();
    aff.basis
}

/// One solution of `d·x ≡ b (mod Λ_target^(dst_tuples))`, if any.
pub(crate) fn solve_mod_block(
    d: &IntMatrix,
    b: &[BigInt],
    bs: &BlockSmith,
    dst_tuples: usize,
) -> Option<Vec<BigInt>> {
    let rows = block_rows(d, bs, dst_tuples);
    let rhs: Vec<BigInt> = rows
        .eq_coords
        .iter()
        .map(|&(t, i)| transformed_rhs(bs, b, t, i))
        .collect();
    let x0 = LinearSolver::new(&rows.equations).solve(&rhs)?;
    let k1 = kernel_basis(&rows.equations);
    let mut aff = AffineSublattice::new(x0, k1);
    for (c, m, (t, i)) in &rows.congruences {
        let r = transformed_rhs(bs, b, *t, *i);
        if !aff.refine_congruence(c, &r, m) {
            return None;
        }
    }
    Some(aff.origin)
}

/// The free cover of the cochain space `M^(tuples)` as a presented group.
pub(crate) fn cochain_space(carrier: &FinAbGroup, tuples: usize) -> FinAbGroup {
    let n_gen = carrier.n_gen();
    let rel = carrier.relations();
    let mut rows = Vec::with_capacity(tuples * rel.rows());
    for t in 0..tuples {
        for r in 0..rel.rows() {
            let mut row = vec![BigInt::zero(); tuples * n_gen];
            for j in 0..n_gen {
                row[t * n_gen + j] = rel.at(r, j).clone();
            }
            rows.push(row);
        }
    }
    let relations = IntMatrix::from_bigint_rows(rows, tuples * n_gen).expect("uniform rows");
    FinAbGroup::new(tuples * n_gen, relations).expect("valid presentation")
}

/// `H^n(G, M)` together with explicit generator cocycles and a procedure to
/// locate the class of any cocycle in coordinates.
pub struct CohomologyResult {
    module: Arc<GModule>,
    degree: usize,
    invariants: FinAbGroup,
    generators: Vec<Cochain>,
    sub: Subquotient,
}

impl CohomologyResult {
    pub fn invariants(&self) -> &FinAbGroup {
        &self.invariants
    }

    pub fn generators(&self) -> &[Cochain] {
        &self.generators
    }

    /// Coordinates of the class of `z` in the invariants. `z` must be a
    /// cocycle over the same module and degree.
    pub fn decide(&self, z: &Cochain) -> Result<Vec<BigInt>> {
        if !z.module().same_as(&self.module) || z.degree() != self.degree {
            return Err(Error::ModuleMismatch);
        }
        require_cocycle(z)?;
        self.sub.class_of(&z.flatten())
    }
}

/// Computes `H^n(G, M)` as `ker d_n / im d_{n-1}` on the full (non-normalized)
/// bar complex; degree 0 gives the invariants `M^G`.
pub fn cohomology(module: &Arc<GModule>, degree: usize) -> Result<CohomologyResult> {
    let order = module.group().order();
    let src_tuples = check_table_size(order, degree)?;
    let dst_tuples = check_table_size(order, degree + 1)?;
    let bs = block_smith(module.carrier());

    let d_n = differential_matrix(module, degree)?;
    let kernel = kernel_mod_block(&d_n, &bs, dst_tuples);
    let image = if degree == 0 {
        IntMatrix::zeros(src_tuples * module.carrier().n_gen(), 0)
    } else {
        differential_matrix(module, degree - 1)?
    };
    let ambient = cochain_space(module.carrier(), src_tuples);
    let sub = subquotient_full(&ambient, &kernel, &image)?;

    let mut generators = Vec::with_capacity(sub.group.n_gen());
    for i in 0..sub.group.n_gen() {
        let rep = sub.generator_rep(i);
        generators.push(Cochain::from_flat(module.clone(), degree, &rep)?);
    }
    Ok(CohomologyResult {
        module: module.clone(),
        degree,
        invariants: sub.group.clone(),
        generators,
        sub,
    })
}

/// If the class of the cocycle `z` vanishes, returns a witness `w` with
/// `d w = z`; `None` otherwise. Deterministic for fixed input.
pub fn is_coboundary(z: &Cochain) -> Result<Option<Cochain>> {
    require_cocycle(z)?;
    if z.degree() == 0 {
        return Err(Error::Precondition(String::from(
            "no witnesses below degree 0",
        )));
    }
    let module = z.module();
    let d = differential_matrix(module, z.degree() - 1)?;
    let bs = block_smith(module.carrier());
    let flat = z.flatten();
    match solve_mod_block(&d, &flat, &bs, z.entries()) {
        None => Ok(None),
        Some(w) => {
            let witness = Cochain::from_flat(module.clone(), z.degree() - 1, &w)?;
            debug_assert!(coboundary(&witness)?.table_eq(z));
            Ok(Some(witness))
        }
    }
}

/// True when the cocycles `z1` and `z2` differ by a coboundary.
pub fn classes_equal(z1: &Cochain, z2: &Cochain) -> Result<bool> {
    if !z1.same_shape(z2) {
        return Err(Error::ModuleMismatch);
    }
    require_cocycle(z1)?;
    require_cocycle(z2)?;
    Ok(is_coboundary(&z1.sub(z2)?)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupTable;
    use crate::matrix::int;

    fn sign_module() -> Arc<GModule> {
        let g = GroupTable::abelian(&[("s", 2)]).unwrap();
        GModule::from_generator_actions(g, FinAbGroup::free(1), &[IntMatrix::from_rows(&[&[-1]])])
            .unwrap()
    }

    #[test]
    fn trivial_group_has_no_higher_cohomology() {
        let g = GroupTable::trivial();
        let m = GModule::trivial_action(g, FinAbGroup::free(2));
        for n in 1..=3 {
            let h = cohomology(&m, n).unwrap();
            assert!(h.invariants().is_trivial(), "H^{n} should vanish");
        }
    }

    #[test]
    fn sign_action_h1_is_z2() {
        let m = sign_module();
        let h = cohomology(&m, 1).unwrap();
        assert_eq!(h.invariants().invariant_factors(), (vec![int(2)], 0));
        let gen = &h.generators()[0];
        assert_eq!(h.decide(gen).unwrap(), vec![int(1)]);
    }

    #[test]
    fn case_i_module_h1_is_z2() {
        let g = GroupTable::abelian(&[("s", 2), ("t", 2)]).unwrap();
        let m = GModule::from_generator_actions(
            g,
            FinAbGroup::free(1),
            &[
                IntMatrix::from_rows(&[&[-1]]),
                IntMatrix::from_rows(&[&[1]]),
            ],
        )
        .unwrap();
        let h = cohomology(&m, 1).unwrap();
        assert_eq!(h.invariants().invariant_factors(), (vec![int(2)], 0));
    }

    #[test]
    fn invariants_at_degree_zero() {
        let m = sign_module();
        let h = cohomology(&m, 0).unwrap();
        assert!(h.invariants().is_trivial());
    }

    #[test]
    fn coboundaries_are_recognized() {
        let m = sign_module();
        let c = Cochain::from_fn(m.clone(), 1, |t| vec![int(5 * t[0] as i64)]).unwrap();
        let z = coboundary(&c).unwrap();
        let w = is_coboundary(&z).unwrap().expect("constructed coboundary");
        assert!(coboundary(&w).unwrap().table_eq(&z));
        // decide() sends it to zero
        let h = cohomology(&m, 2).unwrap();
        assert!(h.decide(&z).unwrap().iter().all(|x| x == &int(0)));
    }

    #[test]
    fn phi_class_generates() {
        let g = GroupTable::abelian(&[("s", 2), ("t", 2)]).unwrap();
        let m = GModule::from_generator_actions(
            g.clone(),
            FinAbGroup::free(1),
            &[
                IntMatrix::from_rows(&[&[-1]]),
                IntMatrix::from_rows(&[&[1]]),
            ],
        )
        .unwrap();
        let s = g.find_word("s").unwrap();
        let st = g.find_word("s*t").unwrap();
        let phi = Cochain::from_fn(m.clone(), 1, |t| {
            vec![if t[0] == s || t[0] == st { int(1) } else { int(0) }]
        })
        .unwrap();
        assert!(is_coboundary(&phi).unwrap().is_none());
        let h = cohomology(&m, 1).unwrap();
        assert_eq!(h.decide(&phi).unwrap(), vec![int(1)]);
        let zero = Cochain::zero(m, 1).unwrap();
        assert!(!classes_equal(&phi, &zero).unwrap());
    }

    #[test]
    fn mismatched_modules_error() {
        let a = sign_module();
        let g = GroupTable::abelian(&[("s", 2)]).unwrap();
        let b = GModule::trivial_action(g, FinAbGroup::free(1));
        let ca = Cochain::zero(a, 1).unwrap();
        let cb = Cochain::zero(b, 1).unwrap();
        assert_eq!(classes_equal(&ca, &cb).unwrap_err(), Error::ModuleMismatch);
    }
}
