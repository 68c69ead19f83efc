//! Connecting homomorphisms and cochain-level descent through short exact
//! sequences.

use alloc::format;
use alloc::string::String;
use num_bigint::BigInt;

use crate::cochain::{coboundary, push_cochain, require_cocycle, Cochain};
use crate::module::ShortExactSeq;
use crate::solve::ModSolver;
use crate::{Error, Result};

/// Connecting homomorphism of `0 → A → B → C → 0`: lifts a `C`-valued
/// cocycle through the surjection (using the section hint when provided,
/// otherwise the deterministic first solution), applies the differential,
/// and pulls the result back through the injection. The class of the output
/// does not depend on the lift.
pub fn connecting(ses: &ShortExactSeq, z: &Cochain) -> Result<Cochain> {
    if !z.module().same_as(ses.surj.target()) {
        return Err(Error::ModuleMismatch);
    }
    require_cocycle(z)?;

    let b_module = ses.surj.source().clone();
    let lifted = match &ses.section_hint {
        Some(hint) => Cochain::from_fn(b_module.clone(), z.degree(), |tuple| {
            hint.mul_vec(z.get(tuple)).expect("shape checked")
        })?,
        None => {
            let c_rel = ses.surj.target().carrier().relation_cols();
            let solver = ModSolver::new(ses.surj.matrix(), &c_rel)?;
            let mut failed = false;
            let lifted = Cochain::from_fn(b_module.clone(), z.degree(), |tuple| {
                match solver.solve(z.get(tuple)) {
                    Some(x) => x,
                    None => {
                        failed = true;
                        alloc::vec![BigInt::from(0); b_module.carrier().n_gen()]
                    }
                }
            })?;
            if failed {
                return Err(Error::Internal(String::from(
                    "surjection admitted no lift; exactness check should have caught this",
                )));
            }
            lifted
        }
    };

    let db = coboundary(&lifted)?;
    let out = pull_back(ses, &db)?;
    require_cocycle(&out)?;
    Ok(out)
}

/// Rewrites an `A`-landing `B`-valued cochain in `A`-coordinates.
fn pull_back(ses: &ShortExactSeq, c: &Cochain) -> Result<Cochain> {
    let a_module = ses.inj.source().clone();
    let b_rel = ses.inj.target().carrier().relation_cols();
    let solver = ModSolver::new(ses.inj.matrix(), &b_rel)?;
    let mut missing: Option<usize> = None;
    let out = Cochain::from_fn(a_module.clone(), c.degree(), |tuple| {
        match solver.solve(c.get(tuple)) {
            Some(x) => x,
            None => {
                missing = Some(crate::cochain::rank_tuple(tuple, a_module.group().order()));
                alloc::vec![BigInt::from(0); a_module.carrier().n_gen()]
            }
        }
    })?;
    if let Some(rank) = missing {
        return Err(Error::Precondition(format!(
            "value at tuple rank {rank} does not lie in the injected submodule"
        )));
    }
    Ok(out)
}

/// Descent: given a cocycle `z` in `B` and a lift `psi_tilde` in `B` whose
/// push-forward has differential equal to the push-forward of `z`
/// (checked exactly, entrywise), returns `z - d(psi_tilde)` rewritten in
/// `A`-coordinates. The result is a cocycle.
pub fn descend(ses: &ShortExactSeq, z: &Cochain, psi_tilde: &Cochain) -> Result<Cochain> {
    if !z.module().same_as(ses.surj.source()) || !psi_tilde.module().same_as(ses.surj.source()) {
        return Err(Error::ModuleMismatch);
    }
    if z.degree() != psi_tilde.degree() + 1 {
        return Err(Error::Precondition(String::from(
            "lift must live one degree below the cocycle",
        )));
    }
    require_cocycle(z)?;

    let pushed_z = push_cochain(&ses.surj, z)?;
    let pushed_lift = push_cochain(&ses.surj, psi_tilde)?;
    let d_pushed = coboundary(&pushed_lift)?;
    if !pushed_z.table_eq(&d_pushed) {
        let diff = pushed_z.sub(&d_pushed)?;
        let order = z.module().group().order();
        let bad = (0..diff.entries())
            .find(|&r| !diff.value_at_rank(r).iter().all(num_traits::Zero::is_zero))
            .expect("tables differ");
        let mut tuple = alloc::vec![0usize; z.degree()];
        crate::cochain::unrank_tuple(bad, order, &mut tuple);
        return Err(Error::Precondition(format!(
            "d(push(lift)) differs from push(z) at tuple {tuple:?}"
        )));
    }

    let reduced = z.sub(&coboundary(psi_tilde)?)?;
    let out = pull_back(ses, &reduced)?;
    require_cocycle(&out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use crate::abelian::FinAbGroup;
    use crate::cohomology::{cohomology, is_coboundary};
    use crate::group::GroupTable;
    use crate::matrix::{int, IntMatrix};
    use crate::module::{GModule, ModuleMap};

    /// 0 -> Z --2--> Z -> Z/2 -> 0 with trivial Z/2-action everywhere.
    fn doubling_ses() -> (ShortExactSeq, alloc::sync::Arc<GModule>) {
        let g = GroupTable::abelian(&[("s", 2)]).unwrap();
        let z = GModule::trivial_action(g.clone(), FinAbGroup::free(1));
        let z2 = GModule::trivial_action(g, FinAbGroup::smith_group(&[2], 0));
        let inj = ModuleMap::new(z.clone(), z.clone(), IntMatrix::from_rows(&[&[2]])).unwrap();
        let surj = ModuleMap::new(z.clone(), z2.clone(), IntMatrix::from_rows(&[&[1]])).unwrap();
        let ses = ShortExactSeq::new(inj, surj, Some(IntMatrix::identity(1))).unwrap();
        (ses, z2)
    }

    #[test]
    fn bockstein_of_the_nontrivial_hom() {
        let (ses, z2) = doubling_ses();
        let hom = Cochain::from_fn(z2, 1, |t| alloc::vec![int(t[0] as i64)]).unwrap();
        let out = connecting(&ses, &hom).unwrap();
        assert_eq!(out.degree(), 2);
        // The image is the nontrivial class of H^2(Z/2, Z): the cocycle takes
        // the value 1 at (s, s) and no integer 1-cochain bounds it, by the
        // parity obstruction 2w(s) - w(1) = 1.
        assert_eq!(out.get(&[1, 1]), &[int(1)]);
        assert!(is_coboundary(&out).unwrap().is_none());
        let h2 = cohomology(ses.inj.source(), 2).unwrap();
        assert_eq!(h2.invariants().invariant_factors(), (vec![int(2)], 0));
        assert_eq!(h2.decide(&out).unwrap(), alloc::vec![int(1)]);
    }

    #[test]
    fn image_of_a_lifted_cocycle_dies() {
        let (ses, z2) = doubling_ses();
        // The zero cochain trivially lifts a cocycle over B.
        let zero = Cochain::zero(z2, 1).unwrap();
        let out = connecting(&ses, &zero).unwrap();
        assert!(out.is_zero());
    }

    #[test]
    fn descend_with_zero_lift_is_pullback() {
        let (ses, _) = doubling_ses();
        let b = ses.surj.source().clone();
        // A cocycle already valued in the injected copy 2Z.
        let z = Cochain::from_fn(b.clone(), 1, |_| alloc::vec![int(0)]).unwrap();
        let lift = Cochain::zero(b, 0).unwrap();
        let out = descend(&ses, &z, &lift).unwrap();
        assert!(out.is_zero());
    }

    #[test]
    fn descend_rejects_wrong_lift() {
        let (ses, _) = doubling_ses();
        let b = ses.surj.source().clone();
        let lift = Cochain::from_fn(b.clone(), 0, |_| alloc::vec![int(1)]).unwrap();
        let z = Cochain::zero(b.clone(), 1).unwrap();
        assert!(descend(&ses, &z, &lift).is_ok());
        // A lift whose pushed differential misses push(z) is rejected: this
        // one pushes to the cochain supported at the identity, whose
        // differential is nonzero at (1,1).
        let bad_lift =
            Cochain::from_fn(b.clone(), 1, |t| alloc::vec![int(if t[0] == 0 { 1 } else { 0 })])
                .unwrap();
        let z2 = Cochain::zero(b, 2).unwrap();
        let err = descend(&ses, &z2, &bad_lift).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }
}
