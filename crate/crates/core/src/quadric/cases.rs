//! The five splitting-field cases for `H^1(k, Pic)` of a diagonal quadric.
//!
//! `k' = k(alpha, gamma)` can have degree 4, 2 or 1 over `k`; the Picard
//! group is `Z·[L1]` throughout and only the Galois action differs.

use alloc::string::String;
use alloc::sync::Arc;

use crate::abelian::FinAbGroup;
use crate::cohomology::cohomology;
use crate::group::GroupTable;
use crate::matrix::IntMatrix;
use crate::module::GModule;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseId {
    /// `[k':k] = 4`, generators `s` (fixing `alpha`) and `t` (fixing
    /// `gamma`); `s` negates the class of `L1`, `t` fixes it.
    I,
    /// `k' = k(gamma)`, `alpha` rational: one generator `s` acting by `-1`.
    II,
    /// `k' = k(alpha) = k(gamma)`: one generator (named `s` here as well)
    /// acting by `-1`.
    III,
    /// `k' = k(alpha)`, `gamma` rational: one generator `t` acting
    /// trivially.
    IV,
    /// `k' = k`: the trivial group.
    V,
}

impl CaseId {
    pub const ALL: [CaseId; 5] = [CaseId::I, CaseId::II, CaseId::III, CaseId::IV, CaseId::V];

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "i" | "I" => Ok(CaseId::I),
            "ii" | "II" => Ok(CaseId::II),
            "iii" | "III" => Ok(CaseId::III),
            "iv" | "IV" => Ok(CaseId::IV),
            "v" | "V" => Ok(CaseId::V),
            other => Err(Error::UnknownCase(String::from(other))),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            CaseId::I => "i",
            CaseId::II => "ii",
            CaseId::III => "iii",
            CaseId::IV => "iv",
            CaseId::V => "v",
        }
    }
}

/// The Galois group and the Picard module `Z·[L1]` of each case.
pub fn build_case(case: CaseId) -> Result<(Arc<GroupTable>, Arc<GModule>)> {
    let minus = IntMatrix::from_rows(&[&[-1]]);
    let plus = IntMatrix::from_rows(&[&[1]]);
    let (group, actions): (Arc<GroupTable>, alloc::vec::Vec<IntMatrix>) = match case {
        CaseId::I => (
            GroupTable::abelian(&[("s", 2), ("t", 2)])?,
            alloc::vec![minus, plus],
        ),
        CaseId::II | CaseId::III => (GroupTable::abelian(&[("s", 2)])?, alloc::vec![minus]),
        CaseId::IV => (GroupTable::abelian(&[("t", 2)])?, alloc::vec![plus]),
        CaseId::V => (GroupTable::trivial(), alloc::vec![]),
    };
    let module = GModule::from_generator_actions(group.clone(), FinAbGroup::free(1), &actions)?;
    Ok((group, module))
}

/// `H^1` of the case module; `Z/2` for cases i-iii and trivial for iv-v.
pub fn picard_h1(case: CaseId) -> Result<FinAbGroup> {
    let (_, module) = build_case(case)?;
    Ok(cohomology(&module, 1)?.invariants().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int;
    use alloc::vec;

    #[test]
    fn actions_per_case() {
        let (g, m) = build_case(CaseId::I).unwrap();
        assert_eq!(g.order(), 4);
        let s = g.find_word("s").unwrap();
        let t = g.find_word("t").unwrap();
        assert_eq!(m.action(s).at(0, 0), &int(-1));
        assert_eq!(m.action(t).at(0, 0), &int(1));

        let (g, m) = build_case(CaseId::III).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(m.action(1).at(0, 0), &int(-1));

        let (g, _) = build_case(CaseId::V).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn h1_of_all_cases() {
        let expected = [
            (CaseId::I, (vec![int(2)], 0)),
            (CaseId::II, (vec![int(2)], 0)),
            (CaseId::III, (vec![int(2)], 0)),
            (CaseId::IV, (vec![], 0)),
            (CaseId::V, (vec![], 0)),
        ];
        for (case, exp) in expected {
            assert_eq!(picard_h1(case).unwrap().invariant_factors(), exp, "{case:?}");
        }
    }
}
