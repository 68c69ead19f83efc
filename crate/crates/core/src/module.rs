//! Modules over a finite group and maps between them.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::Zero;

use crate::abelian::FinAbGroup;
use crate::group::GroupTable;
use crate::hnf::{col_lattice_basis, kernel_mod_cols};
use crate::matrix::IntMatrix;
use crate::solve::ModSolver;
use crate::{Error, Result};

/// A finitely presented abelian group with an action of a finite group by
/// automorphisms, one integer matrix per group element.
///
/// Construction checks that every action matrix preserves the relation
/// lattice, that the identity acts as the identity, and that
/// `action(g)·action(h) ≡ action(gh)` modulo relations, exhaustively.
#[derive(Clone)]
pub struct GModule {
    group: Arc<GroupTable>,
    carrier: FinAbGroup,
    action: Vec<IntMatrix>,
}

impl GModule {
    pub fn new(
        group: Arc<GroupTable>,
        carrier: FinAbGroup,
        action: Vec<IntMatrix>,
    ) -> Result<Arc<Self>> {
        let n = carrier.n_gen();
        if action.len() != group.order() {
            return Err(Error::InvalidAction(String::from(
                "one action matrix per group element required",
            )));
        }
        for (g, m) in action.iter().enumerate() {
            if m.rows() != n || m.cols() != n {
                return Err(Error::InvalidAction(format!(
                    "action matrix for element {g} has wrong shape"
                )));
            }
            for r in 0..carrier.relations().rows() {
                let rel: Vec<BigInt> = carrier.relations().row(r).to_vec();
                let img = m.mul_vec(&rel)?;
                if !carrier.is_zero_elem(&img)? {
                    return Err(Error::InvalidAction(format!(
                        "element {g} does not preserve relation {r}"
                    )));
                }
            }
        }
        let module = GModule { group, carrier, action };
        let idm = IntMatrix::identity(n);
        if !module.matrices_congruent(&module.action[0], &idm)? {
            return Err(Error::InvalidAction(String::from(
                "identity element must act trivially",
            )));
        }
        for g in 0..module.group.order() {
            for h in 0..module.group.order() {
                let gh = module.group.mul(g, h);
                let prod = module.action[g].mul(&module.action[h])?;
                if !module.matrices_congruent(&prod, &module.action[gh])? {
                    return Err(Error::InvalidAction(format!(
                        "action({g})·action({h}) differs from action of their product"
                    )));
                }
            }
        }
        Ok(Arc::new(module))
    }

    /// Builds the action from matrices for the generators of an
    /// abelian-declared group, extending multiplicatively.
    pub fn from_generator_actions(
        group: Arc<GroupTable>,
        carrier: FinAbGroup,
        generator_actions: &[IntMatrix],
    ) -> Result<Arc<Self>> {
        let exps = group.exponents().ok_or_else(|| {
            Error::InvalidAction(String::from(
                "generator actions need an abelian-declared group",
            ))
        })?;
        if generator_actions.len() != group.generator_names().len() {
            return Err(Error::InvalidAction(String::from(
                "one matrix per declared generator required",
            )));
        }
        let n = carrier.n_gen();
        let mut action = Vec::with_capacity(group.order());
        for e in exps {
            let mut m = IntMatrix::identity(n);
            for (gen, &count) in generator_actions.iter().zip(e.iter()) {
                for _ in 0..count {
                    m = gen.mul(&m)?;
                }
            }
            action.push(m);
        }
        Self::new(group, carrier, action)
    }

    pub fn trivial_action(group: Arc<GroupTable>, carrier: FinAbGroup) -> Arc<Self> {
        let idm = IntMatrix::identity(carrier.n_gen());
        let action = alloc::vec![idm; group.order()];
        Self::new(group, carrier, action).expect("trivial action is valid")
    }

    fn matrices_congruent(&self, a: &IntMatrix, b: &IntMatrix) -> Result<bool> {
        for j in 0..a.cols() {
            let mut diff: Vec<BigInt> = Vec::with_capacity(a.rows());
            for i in 0..a.rows() {
                diff.push(a.at(i, j) - b.at(i, j));
            }
            if !self.carrier.is_zero_elem(&diff)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn carrier(&self) -> &FinAbGroup {
        &self.carrier
    }

    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    /// Applies the action of `g` and normalizes.
    pub fn apply(&self, g: usize, v: &[BigInt]) -> Result<Vec<BigInt>> {
        self.carrier.normal_form(&self.action[g].mul_vec(v)?)
    }

    /// Structural equality of the underlying data.
    pub fn same_as(&self, other: &GModule) -> bool {
        (Arc::ptr_eq(&self.group, &other.group) || self.group == other.group)
            && self.carrier == other.carrier
            && self.action == other.action
    }

    /// Restricts the action to a subgroup (indices validated by
    /// [`GroupTable::subgroup`]).
    pub fn restrict(&self, indices: &[usize]) -> Result<(Arc<GModule>, Vec<usize>)> {
        let (sub, embed) = self.group.subgroup(indices)?;
        let action: Vec<IntMatrix> = embed.iter().map(|&g| self.action[g].clone()).collect();
        let module = GModule::new(sub, self.carrier.clone(), action)?;
        Ok((module, embed))
    }
}

impl core::fmt::Debug for GModule {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "GModule(|G|={}, carrier {:?})",
            self.group.order(),
            self.carrier
        )
    }
}

/// An equivariant homomorphism between modules over the same group, given by
/// a matrix on generators. Relation preservation and equivariance are checked
/// at construction.
#[derive(Clone)]
pub struct ModuleMap {
    source: Arc<GModule>,
    target: Arc<GModule>,
    matrix: IntMatrix,
}

impl ModuleMap {
    pub fn new(source: Arc<GModule>, target: Arc<GModule>, matrix: IntMatrix) -> Result<Self> {
        if !Arc::ptr_eq(source.group(), target.group()) && source.group() != target.group() {
            return Err(Error::InvalidMap(String::from(
                "source and target live over different groups",
            )));
        }
        if matrix.rows() != target.carrier().n_gen() || matrix.cols() != source.carrier().n_gen() {
            return Err(Error::InvalidMap(String::from("matrix shape mismatch")));
        }
        for r in 0..source.carrier().relations().rows() {
            let rel: Vec<BigInt> = source.carrier().relations().row(r).to_vec();
            let img = matrix.mul_vec(&rel)?;
            if !target.carrier().is_zero_elem(&img)? {
                return Err(Error::InvalidMap(format!(
                    "source relation {r} is not killed"
                )));
            }
        }
        for g in 0..source.group().order() {
            let lhs = matrix.mul(source.action(g))?;
            let rhs = target.action(g).mul(&matrix)?;
            for j in 0..lhs.cols() {
                let mut diff: Vec<BigInt> = Vec::with_capacity(lhs.rows());
                for i in 0..lhs.rows() {
                    diff.push(lhs.at(i, j) - rhs.at(i, j));
                }
                if !target.carrier().is_zero_elem(&diff)? {
                    return Err(Error::InvalidMap(format!(
                        "not equivariant for group element {g}"
                    )));
                }
            }
        }
        Ok(ModuleMap { source, target, matrix })
    }

    pub fn source(&self) -> &Arc<GModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GModule> {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        self.target.carrier().normal_form(&self.matrix.mul_vec(v)?)
    }
}

/// A short exact sequence `0 → A → B → C → 0` of modules over one group.
/// Injectivity, surjectivity and exactness at `B` are established by lattice
/// computations at construction.
pub struct ShortExactSeq {
    pub inj: ModuleMap,
    pub surj: ModuleMap,
    pub section_hint: Option<IntMatrix>,
}

impl ShortExactSeq {
    pub fn new(inj: ModuleMap, surj: ModuleMap, section_hint: Option<IntMatrix>) -> Result<Self> {
        if !inj.target().same_as(surj.source()) {
            return Err(Error::NotExact(String::from(
                "middle modules do not match",
            )));
        }
        let a = inj.source().carrier();
        let b = inj.target().carrier();
        let c = surj.target().carrier();

        // Injectivity: anything killed by inj modulo B-relations must be an
        // A-relation.
        let ker = kernel_mod_cols(inj.matrix(), &b.relation_cols());
        for j in 0..ker.cols() {
            if !a.is_zero_elem(&ker.col(j))? {
                return Err(Error::NotExact(String::from("first map is not injective")));
            }
        }

        // Surjectivity: every generator of C lifts.
        let surj_solver = ModSolver::new(surj.matrix(), &c.relation_cols())?;
        for i in 0..c.n_gen() {
            let mut unit = alloc::vec![BigInt::zero(); c.n_gen()];
            unit[i] = BigInt::from(1);
            if surj_solver.solve(&unit).is_none() {
                return Err(Error::NotExact(format!(
                    "second map misses generator {i}"
                )));
            }
        }

        // Exactness at B: image lattice of inj equals kernel lattice of surj,
        // both taken together with the relation lattice of B.
        let image = col_lattice_basis(&inj.matrix().hstack(&b.relation_cols())?);
        let kernel = kernel_mod_cols(surj.matrix(), &c.relation_cols());
        let kernel = col_lattice_basis(&kernel.hstack(&b.relation_cols())?);
        if image != kernel {
            return Err(Error::NotExact(String::from(
                "image of the first map differs from the kernel of the second",
            )));
        }

        if let Some(hint) = &section_hint {
            if hint.rows() != b.n_gen() || hint.cols() != c.n_gen() {
                return Err(Error::InvalidMap(String::from("section hint shape")));
            }
            let composed = surj.matrix().mul(hint)?;
            let idm = IntMatrix::identity(c.n_gen());
            for j in 0..c.n_gen() {
                let mut diff: Vec<BigInt> = Vec::with_capacity(c.n_gen());
                for i in 0..c.n_gen() {
                    diff.push(composed.at(i, j) - idm.at(i, j));
                }
                if !c.is_zero_elem(&diff)? {
                    return Err(Error::InvalidMap(String::from(
                        "section hint is not a section",
                    )));
                }
            }
        }

        Ok(ShortExactSeq { inj, surj, section_hint })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int;

    fn sign_module() -> Arc<GModule> {
        let g = GroupTable::abelian(&[("s", 2)]).unwrap();
        GModule::from_generator_actions(g, FinAbGroup::free(1), &[IntMatrix::from_rows(&[&[-1]])])
            .unwrap()
    }

    #[test]
    fn sign_action_is_valid() {
        let m = sign_module();
        assert_eq!(m.apply(1, &[int(3)]).unwrap(), alloc::vec![int(-3)]);
    }

    #[test]
    fn non_involution_rejected() {
        let g = GroupTable::abelian(&[("s", 2)]).unwrap();
        let r = GModule::from_generator_actions(
            g,
            FinAbGroup::free(1),
            &[IntMatrix::from_rows(&[&[2]])],
        );
        assert!(r.is_err());
    }

    #[test]
    fn action_must_preserve_relations() {
        let g = GroupTable::abelian(&[("s", 2)]).unwrap();
        // Z + Z/2 where s maps the torsion generator outside the lattice.
        let carrier = FinAbGroup::new(2, IntMatrix::from_rows(&[&[0, 2]])).unwrap();
        let bad = IntMatrix::from_rows(&[&[1, 1], &[0, 1]]);
        assert!(GModule::from_generator_actions(g, carrier, &[bad]).is_err());
    }

    #[test]
    fn doubling_sequence_is_exact() {
        // 0 -> Z --2--> Z -> Z/2 -> 0 with trivial action of Z/2.
        let g = GroupTable::abelian(&[("s", 2)]).unwrap();
        let z = GModule::trivial_action(g.clone(), FinAbGroup::free(1));
        let z2 = GModule::trivial_action(g.clone(), FinAbGroup::smith_group(&[2], 0));
        let inj = ModuleMap::new(z.clone(), z.clone(), IntMatrix::from_rows(&[&[2]])).unwrap();
        let surj = ModuleMap::new(z.clone(), z2, IntMatrix::from_rows(&[&[1]])).unwrap();
        let ses = ShortExactSeq::new(inj, surj, Some(IntMatrix::identity(1))).unwrap();
        assert!(ses.section_hint.is_some());
    }

    #[test]
    fn broken_sequence_rejected() {
        // 0 -> Z --4--> Z -> Z/2 -> 0 is not exact at the middle.
        let g = GroupTable::abelian(&[("s", 2)]).unwrap();
        let z = GModule::trivial_action(g.clone(), FinAbGroup::free(1));
        let z2 = GModule::trivial_action(g.clone(), FinAbGroup::smith_group(&[2], 0));
        let inj = ModuleMap::new(z.clone(), z.clone(), IntMatrix::from_rows(&[&[4]])).unwrap();
        let surj = ModuleMap::new(z.clone(), z2, IntMatrix::from_rows(&[&[1]])).unwrap();
        assert!(ShortExactSeq::new(inj, surj, None).is_err());
    }
}
