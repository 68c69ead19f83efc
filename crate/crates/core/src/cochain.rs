//! Inhomogeneous cochains `G^n -> M` and the bar-resolution differential.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::Zero;

use crate::group::GroupTable;
use crate::matrix::IntMatrix;
use crate::module::{GModule, ModuleMap};
use crate::{check_table_size, Error, Result};

/// A dense table of module values indexed by `degree`-tuples of group
/// elements. Degree 0 is a single value. Every stored value is kept in
/// element normal form, so table equality is semantic equality.
#[derive(Clone)]
pub struct Cochain {
    module: Arc<GModule>,
    degree: usize,
    table: Vec<Vec<BigInt>>,
}

impl Cochain {
    pub fn zero(module: Arc<GModule>, degree: usize) -> Result<Self> {
        let entries = check_table_size(module.group().order(), degree)?;
        let n = module.carrier().n_gen();
        Ok(Cochain {
            module,
            degree,
            table: vec![vec![BigInt::zero(); n]; entries],
        })
    }

    /// Builds a cochain by evaluating `f` on every tuple; values are
    /// normalized.
    pub fn from_fn<F>(module: Arc<GModule>, degree: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(&[usize]) -> Vec<BigInt>,
    {
        let entries = check_table_size(module.group().order(), degree)?;
        let order = module.group().order();
        let mut table = Vec::with_capacity(entries);
        let mut tuple = vec![0usize; degree];
        for rank in 0..entries {
            unrank_tuple(rank, order, &mut tuple);
            table.push(module.carrier().normal_form(&f(&tuple))?);
        }
        Ok(Cochain { module, degree, table })
    }

    pub fn from_flat(module: Arc<GModule>, degree: usize, flat: &[BigInt]) -> Result<Self> {
        let entries = check_table_size(module.group().order(), degree)?;
        let n = module.carrier().n_gen();
        if flat.len() != entries * n {
            return Err(Error::LengthMismatch {
                expected: entries * n,
                found: flat.len(),
            });
        }
        let mut table = Vec::with_capacity(entries);
        for chunk in flat.chunks(n) {
            table.push(module.carrier().normal_form(chunk)?);
        }
        Ok(Cochain { module, degree, table })
    }

    pub fn module(&self) -> &Arc<GModule> {
        &self.module
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn entries(&self) -> usize {
        self.table.len()
    }

    pub fn get(&self, tuple: &[usize]) -> &[BigInt] {
        assert_eq!(tuple.len(), self.degree);
        &self.table[rank_tuple(tuple, self.module.group().order())]
    }

    pub fn set(&mut self, tuple: &[usize], value: &[BigInt]) -> Result<()> {
        assert_eq!(tuple.len(), self.degree);
        let rank = rank_tuple(tuple, self.module.group().order());
        self.table[rank] = self.module.carrier().normal_form(value)?;
        Ok(())
    }

    pub fn value_at_rank(&self, rank: usize) -> &[BigInt] {
        &self.table[rank]
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|v| v.iter().all(Zero::is_zero))
    }

    pub fn same_shape(&self, other: &Cochain) -> bool {
        self.degree == other.degree && self.module.same_as(&other.module)
    }

    /// Entrywise equality (well-defined because values are normalized).
    pub fn table_eq(&self, other: &Cochain) -> bool {
        self.same_shape(other) && self.table == other.table
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.combine(other, true)
    }

    fn combine(&self, other: &Cochain, negate: bool) -> Result<Cochain> {
        if !self.same_shape(other) {
            return Err(Error::ModuleMismatch);
        }
        let mut table = Vec::with_capacity(self.table.len());
        for (a, b) in self.table.iter().zip(&other.table) {
            let v: Vec<BigInt> = a
                .iter()
                .zip(b)
                .map(|(x, y)| if negate { x - y } else { x + y })
                .collect();
            table.push(self.module.carrier().normal_form(&v)?);
        }
        Ok(Cochain {
            module: self.module.clone(),
            degree: self.degree,
            table,
        })
    }

    /// Concatenation of all values, tuple-major; the coordinate vector of the
    /// cochain in the free cover of the cochain space.
    pub fn flatten(&self) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(self.table.len() * self.module.carrier().n_gen());
        for v in &self.table {
            out.extend(v.iter().cloned());
        }
        out
    }

    /// True when the value at every tuple containing the identity vanishes.
    pub fn is_normalized(&self) -> bool {
        let order = self.module.group().order();
        let mut tuple = vec![0usize; self.degree];
        for rank in 0..self.table.len() {
            unrank_tuple(rank, order, &mut tuple);
            if tuple.contains(&0) && !self.table[rank].iter().all(Zero::is_zero) {
                return false;
            }
        }
        true
    }
}

impl core::fmt::Debug for Cochain {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "Cochain(degree {}, {} entries over {:?})",
            self.degree,
            self.table.len(),
            self.module
        )
    }
}

pub(crate) fn rank_tuple(tuple: &[usize], order: usize) -> usize {
    let mut rank = 0usize;
    for &g in tuple {
        debug_assert!(g < order);
        rank = rank * order + g;
    }
    rank
}

pub(crate) fn unrank_tuple(mut rank: usize, order: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = rank % order;
        rank /= order;
    }
}

/// The bar-resolution differential. For degree 0, `(dc)(g) = g·c - c`; in
/// general
/// `(dc)(g_1,...,g_{n+1}) = g_1·c(g_2,...,g_{n+1})
///  + Σ_{i=1..n} (-1)^i c(g_1,...,g_i g_{i+1},...,g_{n+1})
///  + (-1)^{n+1} c(g_1,...,g_n)`.
pub fn coboundary(c: &Cochain) -> Result<Cochain> {
    let module = c.module().clone();
    let group = module.group().clone();
    let order = group.order();
    let n = c.degree();
    let entries = check_table_size(order, n + 1)?;
    let n_gen = module.carrier().n_gen();

    let mut table = Vec::with_capacity(entries);
    let mut tuple = vec![0usize; n + 1];
    let mut inner = vec![0usize; n];
    for rank in 0..entries {
        unrank_tuple(rank, order, &mut tuple);
        let mut acc = vec![BigInt::zero(); n_gen];

        // g_1 · c(g_2, ..., g_{n+1})
        inner.copy_from_slice(&tuple[1..]);
        let headed = module.action(tuple[0]).mul_vec(c.get(&inner))?;
        for (a, h) in acc.iter_mut().zip(headed) {
            *a += h;
        }

        // alternating merged terms
        for i in 1..=n {
            for (k, slot) in inner.iter_mut().enumerate() {
                *slot = match k.cmp(&(i - 1)) {
                    core::cmp::Ordering::Less => tuple[k],
                    core::cmp::Ordering::Equal => group.mul(tuple[i - 1], tuple[i]),
                    core::cmp::Ordering::Greater => tuple[k + 1],
                };
            }
            let term = c.get(&inner);
            if i % 2 == 1 {
                for (a, t) in acc.iter_mut().zip(term) {
                    *a -= t;
                }
            } else {
                for (a, t) in acc.iter_mut().zip(term) {
                    *a += t;
                }
            }
        }

        // (-1)^{n+1} c(g_1, ..., g_n)
        inner.copy_from_slice(&tuple[..n]);
        let tail = c.get(&inner);
        if (n + 1) % 2 == 1 {
            for (a, t) in acc.iter_mut().zip(tail) {
                *a -= t;
            }
        } else {
            for (a, t) in acc.iter_mut().zip(tail) {
                *a += t;
            }
        }

        table.push(module.carrier().normal_form(&acc)?);
    }
    Ok(Cochain {
        module,
        degree: n + 1,
        table,
    })
}

/// First tuple (if any) where `d c` fails to vanish; `None` means `c` is a
/// cocycle.
pub fn cocycle_defect(c: &Cochain) -> Result<Option<Vec<usize>>> {
    let d = coboundary(c)?;
    let order = c.module().group().order();
    for (rank, v) in d.table.iter().enumerate() {
        if !v.iter().all(Zero::is_zero) {
            let mut tuple = vec![0usize; d.degree];
            unrank_tuple(rank, order, &mut tuple);
            return Ok(Some(tuple));
        }
    }
    Ok(None)
}

pub(crate) fn require_cocycle(c: &Cochain) -> Result<()> {
    match cocycle_defect(c)? {
        None => Ok(()),
        Some(position) => Err(Error::NotACocycle {
            position: Some(position),
        }),
    }
}

/// Restriction of a cochain to a subgroup given by element indices.
pub fn restriction(c: &Cochain, indices: &[usize]) -> Result<Cochain> {
    let (module, embed) = c.module().restrict(indices)?;
    Cochain::from_fn(module, c.degree(), |tuple| {
        let parent: Vec<usize> = tuple.iter().map(|&i| embed[i]).collect();
        c.get(&parent).to_vec()
    })
}

/// Inflation of a cochain along a surjective homomorphism `proj: G -> Q`
/// (`c` lives over `Q`). With `push = None`, the target module carries the
/// same coefficients with the action pulled back through `proj`. With
/// `push = Some((target, matrix))`, values are additionally mapped by
/// `matrix` into `target`, which must be equivariant along `proj` and kill
/// nothing required: `matrix·act_Q(proj g) ≡ act_target(g)·matrix` for all
/// `g`.
pub fn inflation(
    c: &Cochain,
    group: &Arc<GroupTable>,
    proj: &[usize],
    push: Option<(&Arc<GModule>, &IntMatrix)>,
) -> Result<Cochain> {
    group.check_projection(c.module().group(), proj)?;
    match push {
        None => {
            let action: Vec<IntMatrix> = (0..group.order())
                .map(|g| c.module().action(proj[g]).clone())
                .collect();
            let module = GModule::new(group.clone(), c.module().carrier().clone(), action)?;
            Cochain::from_fn(module, c.degree(), |tuple| {
                let down: Vec<usize> = tuple.iter().map(|&g| proj[g]).collect();
                c.get(&down).to_vec()
            })
        }
        Some((target, matrix)) => {
            if !Arc::ptr_eq(target.group(), group) && target.group() != group {
                return Err(Error::InvalidMap(String::from(
                    "pushed module lives over the wrong group",
                )));
            }
            if matrix.rows() != target.carrier().n_gen()
                || matrix.cols() != c.module().carrier().n_gen()
            {
                return Err(Error::InvalidMap(String::from("push matrix shape")));
            }
            for r in 0..c.module().carrier().relations().rows() {
                let rel: Vec<BigInt> = c.module().carrier().relations().row(r).to_vec();
                if !target.carrier().is_zero_elem(&matrix.mul_vec(&rel)?)? {
                    return Err(Error::InvalidMap(String::from(
                        "push matrix does not respect relations",
                    )));
                }
            }
            for g in 0..group.order() {
                let lhs = matrix.mul(c.module().action(proj[g]))?;
                let rhs = target.action(g).mul(matrix)?;
                for j in 0..lhs.cols() {
                    let mut diff: Vec<BigInt> = Vec::with_capacity(lhs.rows());
                    for i in 0..lhs.rows() {
                        diff.push(lhs.at(i, j) - rhs.at(i, j));
                    }
                    if !target.carrier().is_zero_elem(&diff)? {
                        return Err(Error::InvalidMap(String::from(
                            "push matrix is not equivariant along the projection",
                        )));
                    }
                }
            }
            Cochain::from_fn(target.clone(), c.degree(), |tuple| {
                let down: Vec<usize> = tuple.iter().map(|&g| proj[g]).collect();
                matrix.mul_vec(c.get(&down)).expect("shape checked")
            })
        }
    }
}

/// Pushes every value of a cochain through an equivariant map.
pub fn push_cochain(map: &ModuleMap, c: &Cochain) -> Result<Cochain> {
    if !map.source().same_as(c.module()) {
        return Err(Error::ModuleMismatch);
    }
    Cochain::from_fn(map.target().clone(), c.degree(), |tuple| {
        map.matrix().mul_vec(c.get(tuple)).expect("shape checked")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FinAbGroup;
    use crate::matrix::int;

    fn pic_case_i() -> Arc<GModule> {
        // Z with s acting by -1 and t trivially over (Z/2)^2.
        let g = GroupTable::abelian(&[("s", 2), ("t", 2)]).unwrap();
        GModule::from_generator_actions(
            g,
            FinAbGroup::free(1),
            &[
                IntMatrix::from_rows(&[&[-1]]),
                IntMatrix::from_rows(&[&[1]]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn degree_zero_coboundary() {
        let module = pic_case_i();
        let c = Cochain::from_fn(module.clone(), 0, |_| vec![int(1)]).unwrap();
        let d = coboundary(&c).unwrap();
        let g = module.group();
        let s = g.find_word("s").unwrap();
        let t = g.find_word("t").unwrap();
        assert_eq!(d.get(&[s]), &[int(-2)]);
        assert_eq!(d.get(&[t]), &[int(0)]);
    }

    #[test]
    fn d_squared_vanishes() {
        let module = pic_case_i();
        // an arbitrary non-cocycle 1-cochain
        let c = Cochain::from_fn(module, 1, |t| vec![int(3 * t[0] as i64 - 1)]).unwrap();
        let dd = coboundary(&coboundary(&c).unwrap()).unwrap();
        assert!(dd.is_zero());
    }

    #[test]
    fn phi_is_a_cocycle() {
        let module = pic_case_i();
        let g = module.group().clone();
        let s = g.find_word("s").unwrap();
        let st = g.find_word("s*t").unwrap();
        let phi = Cochain::from_fn(module, 1, |t| {
            if t[0] == s || t[0] == st {
                vec![int(1)]
            } else {
                vec![int(0)]
            }
        })
        .unwrap();
        assert!(cocycle_defect(&phi).unwrap().is_none());
        // restriction to <t> is the zero cochain
        let t = g.find_word("t").unwrap();
        let r = restriction(&phi, &[0, t]).unwrap();
        assert!(r.is_zero());
        // restriction to <s> is not
        let r = restriction(&phi, &[0, s]).unwrap();
        assert!(!r.is_zero());
    }

    #[test]
    fn inflation_identity_and_zero() {
        let module = pic_case_i();
        let g = module.group().clone();
        let idproj: Vec<usize> = (0..g.order()).collect();
        let c = Cochain::from_fn(module.clone(), 1, |t| vec![int(t[0] as i64)]).unwrap();
        let infl = inflation(&c, &g, &idproj, None).unwrap();
        assert!(infl.table_eq(&c));

        let z = Cochain::zero(module, 2).unwrap();
        let infl = inflation(&z, &g, &idproj, None).unwrap();
        assert!(infl.is_zero());
    }

    #[test]
    fn normalization_detection() {
        let module = pic_case_i();
        let mut c = Cochain::zero(module.clone(), 1).unwrap();
        assert!(c.is_normalized());
        c.set(&[0], &[int(1)]).unwrap();
        assert!(!c.is_normalized());
    }
}
