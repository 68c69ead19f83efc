//! Finite groups as validated multiplication tables.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// A finite group with a fixed element enumeration. Element 0 is always the
/// identity; all tables are keyed by indices.
///
/// Groups declared through [`GroupTable::abelian`] are enumerated
/// lexicographically in generator exponents, first generator most
/// significant, and remember the exponent of every element.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupTable {
    generator_names: Vec<String>,
    element_words: Vec<String>,
    mult: Vec<usize>,
    inverse: Vec<usize>,
    exponents: Option<Vec<Vec<u32>>>,
    orders: Option<Vec<u64>>,
}

impl GroupTable {
    /// The trivial group.
    pub fn trivial() -> Arc<Self> {
        Self::abelian(&[]).expect("trivial group is valid")
    }

    /// Direct product of cyclic groups with named generators.
    pub fn abelian(gens: &[(&str, u64)]) -> Result<Arc<Self>> {
        let mut names = Vec::with_capacity(gens.len());
        let mut orders = Vec::with_capacity(gens.len());
        for (name, order) in gens {
            if *order == 0 {
                return Err(Error::InvalidGroup(String::from(
                    "generator order must be positive",
                )));
            }
            if names.contains(&name.to_string()) {
                return Err(Error::InvalidGroup(format!("duplicate generator {name}")));
            }
            names.push(name.to_string());
            orders.push(*order);
        }
        let size: u64 = orders.iter().product();
        let size = usize::try_from(size)
            .map_err(|_| Error::InvalidGroup(String::from("group too large")))?;

        // Exponent vectors in lexicographic order, first generator most
        // significant.
        let mut exponents: Vec<Vec<u32>> = Vec::with_capacity(size);
        let mut current = vec![0u32; orders.len()];
        'enumerate: loop {
            exponents.push(current.clone());
            let mut pos = orders.len();
            loop {
                if pos == 0 {
                    break 'enumerate;
                }
                pos -= 1;
                current[pos] += 1;
                if u64::from(current[pos]) < orders[pos] {
                    break;
                }
                current[pos] = 0;
            }
        }
        debug_assert_eq!(exponents.len(), size.max(1));

        let index_of = |exps: &[u32]| -> usize {
            let mut idx = 0usize;
            for (e, o) in exps.iter().zip(&orders) {
                idx = idx * (*o as usize) + *e as usize;
            }
            idx
        };

        let n = exponents.len();
        let mut mult = vec![0usize; n * n];
        let mut inverse = vec![0usize; n];
        for a in 0..n {
            for b in 0..n {
                let sum: Vec<u32> = exponents[a]
                    .iter()
                    .zip(&exponents[b])
                    .zip(&orders)
                    .map(|((x, y), o)| ((u64::from(*x) + u64::from(*y)) % *o) as u32)
                    .collect();
                mult[a * n + b] = index_of(&sum);
            }
            let inv: Vec<u32> = exponents[a]
                .iter()
                .zip(&orders)
                .map(|(x, o)| ((*o - u64::from(*x)) % *o) as u32)
                .collect();
            inverse[a] = index_of(&inv);
        }

        let element_words = exponents
            .iter()
            .map(|exps| word_for(&names, exps))
            .collect();

        let table = GroupTable {
            generator_names: names,
            element_words,
            mult,
            inverse,
            exponents: Some(exponents),
            orders: Some(orders),
        };
        table.validate()?;
        Ok(Arc::new(table))
    }

    /// General constructor from an explicit multiplication table
    /// (`mult[a][b] = a*b`). Element 0 must be the identity; the group laws
    /// are checked.
    pub fn from_table(
        generator_names: Vec<String>,
        element_words: Vec<String>,
        mult_rows: Vec<Vec<usize>>,
    ) -> Result<Arc<Self>> {
        let n = element_words.len();
        if n == 0 {
            return Err(Error::InvalidGroup(String::from("no elements")));
        }
        if mult_rows.len() != n || mult_rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidGroup(String::from(
                "multiplication table must be square of the element count",
            )));
        }
        let mut mult = Vec::with_capacity(n * n);
        for row in &mult_rows {
            for &v in row {
                if v >= n {
                    return Err(Error::InvalidGroup(String::from(
                        "table entry out of range",
                    )));
                }
                mult.push(v);
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if mult[a * n + b] == 0 && mult[b * n + a] == 0 {
                    inverse[a] = b;
                    break;
                }
            }
            if inverse[a] == usize::MAX {
                return Err(Error::InvalidGroup(format!("element {a} has no inverse")));
            }
        }
        let table = GroupTable {
            generator_names,
            element_words,
            mult,
            inverse,
            exponents: None,
            orders: None,
        };
        table.validate()?;
        Ok(Arc::new(table))
    }

    fn validate(&self) -> Result<()> {
        let n = self.order();
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(Error::InvalidGroup(String::from(
                    "element 0 is not an identity",
                )));
            }
            let i = self.inverse[a];
            if self.mul(a, i) != 0 || self.mul(i, a) != 0 {
                return Err(Error::InvalidGroup(format!("bad inverse for element {a}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.element_words.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn word(&self, i: usize) -> &str {
        &self.element_words[i]
    }

    pub fn element_words(&self) -> &[String] {
        &self.element_words
    }

    /// Index of the element with the given word, if any.
    pub fn find_word(&self, w: &str) -> Option<usize> {
        self.element_words.iter().position(|x| x == w)
    }

    /// Exponent vectors for groups built by [`GroupTable::abelian`].
    pub fn exponents(&self) -> Option<&[Vec<u32>]> {
        self.exponents.as_deref()
    }

    /// Generator orders for groups built by [`GroupTable::abelian`].
    pub fn generator_orders(&self) -> Option<&[u64]> {
        self.orders.as_deref()
    }

    /// Index of the abelian-constructed element with the given exponents.
    pub fn element_by_exponents(&self, exps: &[u32]) -> Option<usize> {
        let table = self.exponents.as_ref()?;
        table.iter().position(|e| e == exps)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// A generator if the group is cyclic.
    pub fn cyclic_generator(&self) -> Option<usize> {
        (0..self.order()).find(|&a| self.element_order(a) == self.order())
    }

    /// Builds the subgroup on the given element indices. Returns the new
    /// table together with the embedding (new index -> parent index).
    /// Elements keep their parent order, identity first; words are inherited.
    pub fn subgroup(&self, indices: &[usize]) -> Result<(Arc<GroupTable>, Vec<usize>)> {
        let mut embed: Vec<usize> = indices.to_vec();
        embed.sort_unstable();
        embed.dedup();
        if embed.first() != Some(&0) {
            return Err(Error::NotASubgroup);
        }
        if embed.iter().any(|&i| i >= self.order()) {
            return Err(Error::NotASubgroup);
        }
        let pos_of = |g: usize| embed.binary_search(&g).ok();
        let n = embed.len();
        let mut mult_rows = vec![vec![0usize; n]; n];
        for (ia, &a) in embed.iter().enumerate() {
            for (ib, &b) in embed.iter().enumerate() {
                match pos_of(self.mul(a, b)) {
                    Some(ic) => mult_rows[ia][ib] = ic,
                    None => return Err(Error::NotASubgroup),
                }
            }
        }
        let words: Vec<String> = embed.iter().map(|&i| self.word(i).to_string()).collect();
        // Greedy generating set, used for naming only.
        let mut names: Vec<String> = Vec::new();
        let mut span = vec![false; n];
        span[0] = true;
        let mut covered = 1usize;
        for g in 1..n {
            if span[g] {
                continue;
            }
            names.push(words[g].clone());
            let mut frontier: Vec<usize> = (0..n).filter(|&i| span[i]).collect();
            while let Some(x) = frontier.pop() {
                let y = mult_rows[x][g];
                if !span[y] {
                    span[y] = true;
                    covered += 1;
                    frontier.push(y);
                }
            }
            if covered == n {
                break;
            }
        }
        let sub = GroupTable::from_table(names, words, mult_rows)?;
        Ok((sub, embed))
    }

    /// Validates that `map` (indexed by this group's elements, valued in
    /// `target` indices) is a surjective homomorphism.
    pub fn check_projection(&self, target: &GroupTable, map: &[usize]) -> Result<()> {
        if map.len() != self.order() {
            return Err(Error::NotAHomomorphism(String::from(
                "index map length does not match group order",
            )));
        }
        if map.iter().any(|&q| q >= target.order()) {
            return Err(Error::NotAHomomorphism(String::from(
                "index map value out of range",
            )));
        }
        if map[0] != 0 {
            return Err(Error::NotAHomomorphism(String::from(
                "identity does not map to identity",
            )));
        }
        for a in 0..self.order() {
            for b in 0..self.order() {
                if map[self.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::NotAHomomorphism(format!("fails at ({a},{b})")));
                }
            }
        }
        let mut hit = vec![false; target.order()];
        for &q in map {
            hit[q] = true;
        }
        if hit.iter().any(|h| !h) {
            return Err(Error::NotAHomomorphism(String::from("not surjective")));
        }
        Ok(())
    }
}

impl core::fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "GroupTable(order {}, [", self.order())?;
        for (i, w) in self.element_words.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "])")
    }
}

fn word_for(names: &[String], exps: &[u32]) -> String {
    let mut parts = Vec::new();
    for (name, &e) in names.iter().zip(exps) {
        for _ in 0..e {
            parts.push(name.clone());
        }
    }
    if parts.is_empty() {
        String::from("1")
    } else {
        parts.join("*")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn klein_four_enumeration() {
        let g = GroupTable::abelian(&[("s", 2), ("t", 2)]).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.element_words(), &["1", "t", "s", "s*t"]);
        let s = g.find_word("s").unwrap();
        let t = g.find_word("t").unwrap();
        assert_eq!(g.mul(s, t), g.find_word("s*t").unwrap());
        assert_eq!(g.mul(s, s), 0);
        assert!(g.is_abelian());
        assert!(g.cyclic_generator().is_none());
    }

    #[test]
    fn cyclic_four() {
        let g = GroupTable::abelian(&[("t", 4)]).unwrap();
        assert_eq!(g.element_words(), &["1", "t", "t*t", "t*t*t"]);
        assert_eq!(g.element_order(1), 4);
        assert_eq!(g.cyclic_generator(), Some(1));
        assert_eq!(g.inv(1), 3);
    }

    #[test]
    fn trivial_group() {
        let g = GroupTable::trivial();
        assert_eq!(g.order(), 1);
        assert_eq!(g.word(0), "1");
    }

    #[test]
    fn subgroup_of_eight() {
        let g = GroupTable::abelian(&[("s", 2), ("t", 2), ("w", 2)]).unwrap();
        // w has index 1 in the lexicographic enumeration (s, t, w).
        assert_eq!(g.word(1), "w");
        let (i, embed) = g.subgroup(&[0, 1]).unwrap();
        assert_eq!(i.order(), 2);
        assert_eq!(embed, vec![0, 1]);
        // complement {1, t, s, st}
        let (c, embed) = g.subgroup(&[0, 2, 4, 6]).unwrap();
        assert_eq!(c.order(), 4);
        assert_eq!(embed, vec![0, 2, 4, 6]);
        assert_eq!(c.element_words(), &["1", "t", "s", "s*t"]);
        // not closed
        assert!(g.subgroup(&[0, 2, 4]).is_err());
    }

    #[test]
    fn projection_validates() {
        let g3 = GroupTable::abelian(&[("s", 2), ("t", 2), ("w", 2)]).unwrap();
        let g2 = GroupTable::abelian(&[("s", 2), ("t", 2)]).unwrap();
        let map: Vec<usize> = (0..8)
            .map(|i| {
                let e = &g3.exponents().unwrap()[i];
                g2.element_by_exponents(&[e[0], e[1]]).unwrap()
            })
            .collect();
        g3.check_projection(&g2, &map).unwrap();
        let mut bad = map.clone();
        bad[1] = 1; // w no longer goes to the identity
        assert!(g3.check_projection(&g2, &bad).is_err());
    }

    #[test]
    fn bad_table_rejected() {
        let r = GroupTable::from_table(
            vec!["g".into()],
            vec!["1".into(), "g".into(), "h".into()],
            vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 1, 0]],
        );
        assert!(r.is_err());
    }
}
