//! Hom-modules over an inertia subgroup and the residue operator.
//!
//! For a complete discretely valued field whose inertia `I` is central in
//! `G = Ḡ × I` and acts trivially on the coefficients, a normalized cocycle
//! `z` of degree `n` whose value depends on arguments 2..n only modulo `I`
//! has a residue: the degree `n-1` cochain over `Ḡ` valued in `Hom(I, M)`
//! given by evaluating the first argument on inertia,
//! `(r z)(ḡ_1,...,ḡ_{n-1})(h) = z(h, g_1,...,g_{n-1})`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::Zero;

use crate::abelian::{subquotient_full, FinAbGroup, Subquotient};
use crate::cochain::{require_cocycle, unrank_tuple, Cochain};
use crate::group::GroupTable;
use crate::hnf::kernel_mod_cols;
use crate::matrix::IntMatrix;
use crate::module::GModule;
use crate::{Error, Result};

/// `Hom(I, M)` as a module over a complement group, with encode/evaluate
/// helpers between functions on `I` and coordinate vectors.
pub struct HomModule {
    module: Arc<GModule>,
    i_gens: Vec<usize>,
    i_orders: Vec<u64>,
    i_exponents: Vec<Vec<u32>>,
    parts: Vec<Part>,
    part_offsets: Vec<usize>,
    m_carrier: FinAbGroup,
}

struct Part {
    sub: Subquotient,
}

/// Cyclic or elementary abelian decomposition of a group table: generators
/// and their orders, such that every element is a unique product of
/// generator powers.
fn abelian_decomposition(t: &GroupTable) -> Result<(Vec<usize>, Vec<u64>)> {
    if t.order() == 1 {
        return Ok((Vec::new(), Vec::new()));
    }
    if !t.is_abelian() {
        return Err(Error::UnsupportedInertia(String::from("not abelian")));
    }
    if let Some(g) = t.cyclic_generator() {
        return Ok((vec![g], vec![t.order() as u64]));
    }
    // Elementary abelian: every non-identity element has the same prime
    // order, and independent elements generate freely.
    let p = t.element_order(1);
    for a in 1..t.order() {
        if t.element_order(a) != p {
            return Err(Error::UnsupportedInertia(String::from(
                "neither cyclic nor elementary abelian",
            )));
        }
    }
    let mut gens = Vec::new();
    let mut span = vec![false; t.order()];
    span[0] = true;
    for g in 1..t.order() {
        if span[g] {
            continue;
        }
        gens.push(g);
        let current: Vec<usize> = (0..t.order()).filter(|&i| span[i]).collect();
        for x in current {
            let mut y = x;
            loop {
                y = t.mul(y, g);
                if y == x {
                    break;
                }
                span[y] = true;
            }
        }
    }
    if span.iter().any(|s| !s) {
        return Err(Error::UnsupportedInertia(String::from(
            "generators do not span",
        )));
    }
    let orders = gens.iter().map(|&g| t.element_order(g) as u64).collect();
    Ok((gens, orders))
}

impl HomModule {
    /// Builds `Hom(I, M)` over `gbar`, where `gbar_action_on_m` gives the
    /// action of each `gbar` element on `M`; the induced action on a
    /// homomorphism is value-wise. Trivial coefficient actions give the
    /// trivial action.
    pub fn new(
        i_table: &Arc<GroupTable>,
        m_carrier: &FinAbGroup,
        gbar: Arc<GroupTable>,
        gbar_action_on_m: &[IntMatrix],
    ) -> Result<Self> {
        if gbar_action_on_m.len() != gbar.order() {
            return Err(Error::InvalidAction(String::from(
                "one coefficient matrix per complement element required",
            )));
        }
        let (i_gens, i_orders) = abelian_decomposition(i_table)?;
        let n_m = m_carrier.n_gen();

        // Exponent decomposition of every inertia element over the chosen
        // generators (unique by construction, found by enumeration).
        let mut i_exponents = vec![Vec::new(); i_table.order()];
        let mut seen = vec![false; i_table.order()];
        let mut exps = vec![0u32; i_gens.len()];
        loop {
            let mut elt = i_table.identity();
            for (&g, &e) in i_gens.iter().zip(&exps) {
                for _ in 0..e {
                    elt = i_table.mul(elt, g);
                }
            }
            if seen[elt] {
                return Err(Error::UnsupportedInertia(String::from(
                    "generator powers collide",
                )));
            }
            seen[elt] = true;
            i_exponents[elt] = exps.clone();
            let mut pos = i_gens.len();
            loop {
                if pos == 0 {
                    pos = usize::MAX;
                    break;
                }
                pos -= 1;
                exps[pos] += 1;
                if u64::from(exps[pos]) < i_orders[pos] {
                    break;
                }
                exps[pos] = 0;
            }
            if pos == usize::MAX {
                break;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::UnsupportedInertia(String::from(
                "generator powers do not cover",
            )));
        }

        // Each generator of order q contributes the q-torsion subgroup M[q].
        let mut parts = Vec::with_capacity(i_gens.len());
        let mut part_offsets = vec![0usize];
        let mut torsion_blocks: Vec<FinAbGroup> = Vec::new();
        for &q in &i_orders {
            let mut q_mat = IntMatrix::zeros(n_m, n_m);
            for i in 0..n_m {
                q_mat.set(i, i, BigInt::from(q));
            }
            let t_basis = kernel_mod_cols(&q_mat, &m_carrier.relation_cols());
            let sub = subquotient_full(m_carrier, &t_basis, &IntMatrix::zeros(n_m, 0))?;
            part_offsets.push(part_offsets.last().unwrap() + sub.group.n_gen());
            torsion_blocks.push(sub.group.clone());
            parts.push(Part { sub });
        }
        let total: usize = *part_offsets.last().unwrap();
        let mut rel_rows = Vec::new();
        for (bi, block) in torsion_blocks.iter().enumerate() {
            for r in 0..block.relations().rows() {
                let mut row = vec![BigInt::zero(); total];
                for j in 0..block.n_gen() {
                    row[part_offsets[bi] + j] = block.relations().at(r, j).clone();
                }
                rel_rows.push(row);
            }
        }
        let carrier = FinAbGroup::new(total, IntMatrix::from_bigint_rows(rel_rows, total)?)?;

        // Value-wise action of the complement on homomorphisms.
        let mut action = Vec::with_capacity(gbar.order());
        for mat in gbar_action_on_m {
            let mut block = IntMatrix::zeros(total, total);
            for (bi, part) in parts.iter().enumerate() {
                for j in 0..torsion_blocks[bi].n_gen() {
                    let rep = part.sub.generator_rep(j);
                    let img = mat.mul_vec(&rep)?;
                    let class = part.sub.class_of(&img).map_err(|_| {
                        Error::InvalidAction(String::from(
                            "coefficient action does not preserve torsion",
                        ))
                    })?;
                    for (i, v) in class.into_iter().enumerate() {
                        block.set(part_offsets[bi] + i, part_offsets[bi] + j, v);
                    }
                }
            }
            action.push(block);
        }
        let module = GModule::new(gbar, carrier, action)?;
        Ok(HomModule {
            module,
            i_gens,
            i_orders,
            i_exponents,
            parts,
            part_offsets: part_offsets[..part_offsets.len() - 1].to_vec(),
            m_carrier: m_carrier.clone(),
        })
    }

    pub fn module(&self) -> &Arc<GModule> {
        &self.module
    }

    /// Encodes a function on all of `I` (indexed by the inertia table) as a
    /// coordinate vector, verifying it is a homomorphism into `M`.
    pub fn encode(&self, values: &[Vec<BigInt>]) -> Result<Vec<BigInt>> {
        let order = self.i_exponents.len();
        if values.len() != order {
            return Err(Error::LengthMismatch {
                expected: order,
                found: values.len(),
            });
        }
        // Additivity (which also forces the identity to map to zero).
        for a in 0..order {
            for b in 0..order {
                let ab = self.mul_inertia(a, b);
                let mut diff: Vec<BigInt> = values[a]
                    .iter()
                    .zip(&values[b])
                    .map(|(x, y)| x + y)
                    .collect();
                for (d, v) in diff.iter_mut().zip(&values[ab]) {
                    *d -= v;
                }
                if !self.m_carrier.is_zero_elem(&diff)? {
                    return Err(Error::Precondition(format!(
                        "values are not a homomorphism on inertia (at pair ({a},{b}))"
                    )));
                }
            }
        }
        let mut coords = Vec::new();
        for (part, &g) in self.parts.iter().zip(&self.i_gens) {
            coords.extend(part.sub.class_of(&values[g])?);
        }
        Ok(coords)
    }

    /// Value of the encoded homomorphism at inertia element `h`, in `M`.
    pub fn evaluate(&self, coords: &[BigInt], h: usize) -> Result<Vec<BigInt>> {
        let mut acc = vec![BigInt::zero(); self.m_carrier.n_gen()];
        for (pi, part) in self.parts.iter().enumerate() {
            let e = self.i_exponents[h][pi];
            if e == 0 {
                continue;
            }
            let width = part.sub.group.n_gen();
            let local = &coords[self.part_offsets[pi]..self.part_offsets[pi] + width];
            for (j, c) in local.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let rep = part.sub.generator_rep(j);
                for (a, r) in acc.iter_mut().zip(rep) {
                    *a += c * &r * BigInt::from(e);
                }
            }
        }
        self.m_carrier.normal_form(&acc)
    }

    fn mul_inertia(&self, a: usize, b: usize) -> usize {
        let target: Vec<u32> = self.i_exponents[a]
            .iter()
            .zip(&self.i_exponents[b])
            .zip(&self.i_orders)
            .map(|((x, y), q)| ((u64::from(*x) + u64::from(*y)) % q) as u32)
            .collect();
        self.i_exponents
            .iter()
            .position(|x| *x == target)
            .expect("exponent table covers the group")
    }
}

impl core::fmt::Debug for HomModule {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "HomModule({} inertia generators, carrier {:?})",
            self.i_gens.len(),
            self.module.carrier()
        )
    }
}

/// `Hom(I, M)` with the trivial complement action, as in the unramified
/// residue computations: the spec-level operation.
pub fn hom_module(
    i_module: &Arc<GModule>,
    gbar: &Arc<GroupTable>,
) -> Result<HomModule> {
    // The coefficients must carry the trivial inertia action.
    let m = i_module.carrier();
    let idm = IntMatrix::identity(m.n_gen());
    for g in 0..i_module.group().order() {
        for j in 0..m.n_gen() {
            let mut diff: Vec<BigInt> = Vec::with_capacity(m.n_gen());
            for i in 0..m.n_gen() {
                diff.push(i_module.action(g).at(i, j) - idm.at(i, j));
            }
            if !m.is_zero_elem(&diff)? {
                return Err(Error::Precondition(String::from(
                    "inertia must act trivially on the coefficients",
                )));
            }
        }
    }
    let trivial = vec![idm; gbar.order()];
    HomModule::new(i_module.group(), m, gbar.clone(), &trivial)
}

/// The residue of a normalized cocycle along a central inertia subgroup with
/// complement, both given as element-index lists of `z`'s group. The output
/// is verified to be a cocycle.
pub fn residue(
    z: &Cochain,
    inertia: &[usize],
    complement: &[usize],
) -> Result<(Cochain, HomModule)> {
    let (out, hom) = residue_raw(z, inertia, complement)?;
    require_cocycle(&out)?;
    Ok((out, hom))
}

/// [`residue`] without the final cocycle check on the output; lets callers
/// inspect the raw table when diagnosing corrupted inputs.
pub fn residue_raw(
    z: &Cochain,
    inertia: &[usize],
    complement: &[usize],
) -> Result<(Cochain, HomModule)> {
    let n = z.degree();
    if n == 0 {
        return Err(Error::Precondition(String::from(
            "residue needs degree at least 1",
        )));
    }
    let module = z.module().clone();
    let group = module.group().clone();
    let (i_table, i_embed) = group.subgroup(inertia)?;
    let (gbar, c_embed) = group.subgroup(complement)?;

    for &h in &i_embed {
        for g in 0..group.order() {
            if group.mul(h, g) != group.mul(g, h) {
                return Err(Error::NoComplement(String::from("inertia is not central")));
            }
        }
    }
    if i_table.order() * gbar.order() != group.order() {
        return Err(Error::NoComplement(String::from(
            "complement size does not match",
        )));
    }
    let mut covered = vec![false; group.order()];
    for &c in &c_embed {
        for &h in &i_embed {
            let g = group.mul(c, h);
            if covered[g] {
                return Err(Error::NoComplement(String::from(
                    "products of complement and inertia collide",
                )));
            }
            covered[g] = true;
        }
    }
    if covered.iter().any(|c| !c) {
        return Err(Error::NoComplement(String::from(
            "complement and inertia do not span the group",
        )));
    }

    // Trivial inertia action on the coefficients.
    let carrier = module.carrier();
    for &h in &i_embed {
        for j in 0..carrier.n_gen() {
            let mut diff: Vec<BigInt> = Vec::with_capacity(carrier.n_gen());
            for i in 0..carrier.n_gen() {
                let mut v = module.action(h).at(i, j).clone();
                if i == j {
                    v -= 1;
                }
                diff.push(v);
            }
            if !carrier.is_zero_elem(&diff)? {
                return Err(Error::Precondition(String::from(
                    "inertia must act trivially on the coefficients",
                )));
            }
        }
    }

    // Normalization.
    let order = group.order();
    let mut tuple = vec![0usize; n];
    for rank in 0..z.entries() {
        unrank_tuple(rank, order, &mut tuple);
        if tuple.contains(&0) && !z.value_at_rank(rank).iter().all(Zero::is_zero) {
            return Err(Error::NotNormalized { position: tuple });
        }
    }

    // Invariance: arguments 2..n matter only modulo inertia.
    for rank in 0..z.entries() {
        unrank_tuple(rank, order, &mut tuple);
        for slot in 1..n {
            for &h in &i_embed[1..] {
                let mut moved = tuple.clone();
                moved[slot] = group.mul(moved[slot], h);
                if z.get(&moved) != z.get(&tuple) {
                    return Err(Error::InvarianceFailure {
                        position: tuple,
                        slot: slot + 1,
                    });
                }
            }
        }
    }

    let gbar_action: Vec<IntMatrix> = c_embed
        .iter()
        .map(|&c| module.action(c).clone())
        .collect();
    let hom = HomModule::new(&i_table, carrier, gbar.clone(), &gbar_action)?;

    let mut failure: Option<Error> = None;
    let out = Cochain::from_fn(hom.module().clone(), n - 1, |bar_tuple| {
        let mut full = Vec::with_capacity(n);
        full.push(0usize);
        for &b in bar_tuple {
            full.push(c_embed[b]);
        }
        let values: Vec<Vec<BigInt>> = (0..i_table.order())
            .map(|h| {
                full[0] = i_embed[h];
                z.get(&full).to_vec()
            })
            .collect();
        match hom.encode(&values) {
            Ok(coords) => coords,
            Err(e) => {
                if failure.is_none() {
                    failure = Some(e);
                }
                vec![BigInt::zero(); hom.module().carrier().n_gen()]
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok((out, hom))
}
