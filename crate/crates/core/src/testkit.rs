//! Deterministic instance generators for property and acceptance suites.
//!
//! Everything is seeded and self-contained so test runs are reproducible
//! bit-for-bit; no external randomness is involved.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;

use crate::abelian::FinAbGroup;
use crate::cochain::Cochain;
use crate::group::GroupTable;
use crate::matrix::IntMatrix;
use crate::module::GModule;

/// xorshift64* generator; enough randomness for test instances.
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        TestRng(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform in `[0, bound)`.
    pub fn below(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }

    /// Uniform in `[lo, hi]`.
    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next_u64() % ((hi - lo + 1) as u64)) as i64
    }
}

pub fn random_matrix(rng: &mut TestRng, rows: usize, cols: usize, lo: i64, hi: i64) -> IntMatrix {
    let mut m = IntMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, BigInt::from(rng.int(lo, hi)));
        }
    }
    m
}

/// Building blocks for guaranteed-valid modules over an abelian group.
#[derive(Clone, Copy, Debug)]
pub enum Block {
    /// `Z` with the trivial action.
    TrivialZ,
    /// `Z/d` with the trivial action.
    TrivialTorsion(u64),
    /// `Z` where each generator of even order acts by `-1`.
    Sign,
    /// The regular representation `Z[G]`.
    Regular,
    /// `Z[G]/d`.
    RegularMod(u64),
    /// `Z^2` with a generator of order 4 acting by a quarter rotation
    /// (valid only when some generator has order divisible by 4).
    Rotation,
}

fn block_data(group: &Arc<GroupTable>, block: Block) -> (FinAbGroup, Vec<IntMatrix>) {
    let orders = group.generator_orders().expect("abelian group");
    match block {
        Block::TrivialZ => (
            FinAbGroup::free(1),
            orders.iter().map(|_| IntMatrix::identity(1)).collect(),
        ),
        Block::TrivialTorsion(d) => (
            FinAbGroup::smith_group(&[d], 0),
            orders.iter().map(|_| IntMatrix::identity(1)).collect(),
        ),
        Block::Sign => (
            FinAbGroup::free(1),
            orders
                .iter()
                .map(|&o| {
                    if o % 2 == 0 {
                        IntMatrix::from_rows(&[&[-1]])
                    } else {
                        IntMatrix::identity(1)
                    }
                })
                .collect(),
        ),
        Block::Regular | Block::RegularMod(_) => {
            let n = group.order();
            let carrier = match block {
                Block::RegularMod(d) => {
                    FinAbGroup::smith_group(&vec![d; n], 0)
                }
                _ => FinAbGroup::free(n),
            };
            let mats = (0..orders.len())
                .map(|gi| {
                    let mut exps = vec![0u32; orders.len()];
                    exps[gi] = 1;
                    let g = group.element_by_exponents(&exps).expect("generator");
                    let mut m = IntMatrix::zeros(n, n);
                    for h in 0..n {
                        m.set(group.mul(g, h), h, BigInt::from(1));
                    }
                    m
                })
                .collect();
            (carrier, mats)
        }
        Block::Rotation => (
            FinAbGroup::free(2),
            orders
                .iter()
                .map(|&o| {
                    if o % 4 == 0 {
                        IntMatrix::from_rows(&[&[0, -1], &[1, 0]])
                    } else {
                        IntMatrix::identity(2)
                    }
                })
                .collect(),
        ),
    }
}

/// A module assembled from the listed blocks (direct sum).
pub fn module_from_blocks(group: &Arc<GroupTable>, blocks: &[Block]) -> Arc<GModule> {
    let parts: Vec<(FinAbGroup, Vec<IntMatrix>)> =
        blocks.iter().map(|&b| block_data(group, b)).collect();
    let total: usize = parts.iter().map(|(c, _)| c.n_gen()).sum();
    let mut rel_rows: Vec<Vec<BigInt>> = Vec::new();
    let mut offset = 0usize;
    for (carrier, _) in &parts {
        for r in 0..carrier.relations().rows() {
            let mut row = vec![BigInt::from(0); total];
            for j in 0..carrier.n_gen() {
                row[offset + j] = carrier.relations().at(r, j).clone();
            }
            rel_rows.push(row);
        }
        offset += carrier.n_gen();
    }
    let relations = IntMatrix::from_bigint_rows(rel_rows, total).expect("uniform rows");
    let carrier = FinAbGroup::new(total, relations).expect("valid presentation");

    let n_gens = group.generator_orders().expect("abelian").len();
    let mut gen_mats = Vec::with_capacity(n_gens);
    for gi in 0..n_gens {
        let mut m = IntMatrix::zeros(total, total);
        let mut offset = 0usize;
        for (c, mats) in &parts {
            let b = &mats[gi];
            for i in 0..c.n_gen() {
                for j in 0..c.n_gen() {
                    if !num_traits::Zero::is_zero(b.at(i, j)) {
                        m.set(offset + i, offset + j, b.at(i, j).clone());
                    }
                }
            }
            offset += c.n_gen();
        }
        gen_mats.push(m);
    }
    GModule::from_generator_actions(group.clone(), carrier, &gen_mats)
        .expect("blocks are valid modules")
}

/// A random module of bounded rank built from valid blocks.
pub fn random_module(rng: &mut TestRng, group: &Arc<GroupTable>, max_gens: usize) -> Arc<GModule> {
    let has4 = group
        .generator_orders()
        .expect("abelian")
        .iter()
        .any(|&o| o % 4 == 0);
    let mut blocks = Vec::new();
    let mut used = 0usize;
    let count = 1 + rng.below(3);
    for _ in 0..count {
        let candidates: &[Block] = if has4 {
            &[
                Block::TrivialZ,
                Block::TrivialTorsion(2),
                Block::TrivialTorsion(3),
                Block::TrivialTorsion(4),
                Block::Sign,
                Block::Rotation,
            ]
        } else {
            &[
                Block::TrivialZ,
                Block::TrivialTorsion(2),
                Block::TrivialTorsion(3),
                Block::TrivialTorsion(6),
                Block::Sign,
                Block::Regular,
            ]
        };
        let b = candidates[rng.below(candidates.len())];
        let width = match b {
            Block::Regular | Block::RegularMod(_) => group.order(),
            Block::Rotation => 2,
            _ => 1,
        };
        if used + width > max_gens {
            continue;
        }
        used += width;
        blocks.push(b);
    }
    if blocks.is_empty() {
        blocks.push(Block::TrivialZ);
    }
    module_from_blocks(group, &blocks)
}

/// A cochain with uniformly random small entries.
pub fn random_cochain(
    rng: &mut TestRng,
    module: &Arc<GModule>,
    degree: usize,
) -> Cochain {
    let n = module.carrier().n_gen();
    Cochain::from_fn(module.clone(), degree, |_| {
        (0..n).map(|_| BigInt::from(rng.int(-9, 9))).collect()
    })
    .expect("table within bounds")
}
