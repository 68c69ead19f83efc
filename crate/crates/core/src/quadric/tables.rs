//! The explicit cocycle tables of the verification pipeline, their symbolic
//! rendering, and table mutations for sensitivity testing.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::cochain::Cochain;
use crate::quadric::model::{QuadricModel, SQUARES_GENS, SYM_F1_GENS, SYM_F2_GENS};
use crate::{Error, Result};

/// The transcribed tables: `phi` generates `H^1(F'/F, Pic)`; `cap_phi` is
/// the 3-cocycle representing its image in `H^3(F'/F, F'^*)`; `psi` and
/// `psi_tilde` trivialize the squared inflation; `cap_psi` is the residue
/// class over the `mu = 0` divisor.
pub struct PaperTables {
    pub phi: Cochain,
    pub cap_phi: Cochain,
    pub psi: Cochain,
    pub psi_tilde: Cochain,
    pub cap_psi: Cochain,
}

fn exps_of(group: &crate::group::GroupTable, g: usize) -> (u32, u32) {
    let e = &group.exponents().expect("abelian model group")[g];
    (e[0], e[1])
}

pub fn paper_tables(model: &QuadricModel) -> Result<PaperTables> {
    let l1 = model.l1_class()?;
    let g2 = model.g2.clone();

    // phi(t^i) = 0, phi(s t^i) = [L1].
    let phi = Cochain::from_fn(model.pic.clone(), 1, |t| {
        let (i, _) = exps_of(&g2, t[0]);
        if i == 1 {
            l1.clone()
        } else {
            vec![BigInt::zero(); l1.len()]
        }
    })?;

    // cap_phi(g1, g2, g3) depends on g3 only through its s-part; for third
    // argument s it is mu when the second argument is t, mu^-1 when it is
    // s t, and 1 otherwise, except that a first argument of s t gives 1.
    let g2c = g2.clone();
    let cap_phi = Cochain::from_fn(model.sym_f1.clone(), 3, |t| {
        let mut v = vec![BigInt::zero(); 4];
        if t[0] == 0 || t[1] == 0 {
            return v;
        }
        let (i3, _) = exps_of(&g2c, t[2]);
        if i3 == 0 {
            return v;
        }
        let (i1, j1) = exps_of(&g2c, t[0]);
        let (i2, j2) = exps_of(&g2c, t[1]);
        if i1 == 1 && j1 == 1 {
            return v;
        }
        if i2 == 0 && j2 == 1 {
            v[2] = BigInt::from(1); // mu
        } else if i2 == 1 && j2 == 1 {
            v[2] = BigInt::from(-1); // mu^-1
        }
        v
    })?;

    // psi(first, second) = mu exactly when the second argument has s-part 1
    // and the first argument is t or s modulo <w>.
    let g3 = model.g3.clone();
    let psi_support = move |t: &[usize]| -> bool {
        let e1 = &g3.exponents().expect("abelian")[t[0]];
        let e2 = &g3.exponents().expect("abelian")[t[1]];
        e2[0] == 1 && e1[0] + e1[1] == 1
    };
    let support = psi_support.clone();
    let psi = Cochain::from_fn(model.squares.clone(), 2, move |t| {
        let mut v = vec![BigInt::zero(); 3];
        if support(t) {
            v[2] = BigInt::from(1); // mu
        }
        v
    })?;
    let support = psi_support.clone();
    let psi_tilde = Cochain::from_fn(model.sym_f2.clone(), 2, move |t| {
        let mut v = vec![BigInt::zero(); 4];
        if support(t) {
            v[2] = BigInt::from(1); // alpha'
        }
        v
    })?;

    // cap_psi over <s, t> with the same support shape, valued in mu_2.
    let g2c = g2.clone();
    let cap_psi = Cochain::from_fn(model.mu2_g2.clone(), 2, move |t| {
        let (i1, j1) = exps_of(&g2c, t[0]);
        let (i2, _) = exps_of(&g2c, t[1]);
        vec![if i2 == 1 && i1 + j1 == 1 {
            BigInt::from(1)
        } else {
            BigInt::zero()
        }]
    })?;

    Ok(PaperTables {
        phi,
        cap_phi,
        psi,
        psi_tilde,
        cap_psi,
    })
}

/// Which transcribed (or computed) table a mutation targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MutableTable {
    CapPhi,
    Psi,
    PsiTilde,
    CapPsi,
    PhiPrime,
}

impl MutableTable {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "Phi" => Ok(MutableTable::CapPhi),
            "psi" => Ok(MutableTable::Psi),
            "psitilde" => Ok(MutableTable::PsiTilde),
            "Psi" => Ok(MutableTable::CapPsi),
            "Phiprime" => Ok(MutableTable::PhiPrime),
            other => Err(Error::UnknownCase(format!(
                "unknown table {other}; expected Phi, psi, psitilde, Psi or Phiprime"
            ))),
        }
    }
}

/// A single-entry override `table(tuple) = value`, with the tuple written in
/// element words and the value in symbolic notation.
#[derive(Clone, Debug)]
pub struct Mutation {
    pub table: MutableTable,
    pub tuple: Vec<String>,
    pub value: String,
}

impl Mutation {
    /// Parses `Phi(t,t,s)=1` style directives.
    pub fn parse(s: &str) -> Result<Self> {
        let (head, value) = s
            .split_once('=')
            .ok_or_else(|| Error::UnknownCase(String::from("mutation needs '='")))?;
        let head = head.trim();
        let open = head
            .find('(')
            .ok_or_else(|| Error::UnknownCase(String::from("mutation needs '(tuple)'")))?;
        if !head.ends_with(')') {
            return Err(Error::UnknownCase(String::from("mutation needs ')'")));
        }
        let table = MutableTable::parse(&head[..open])?;
        let tuple = head[open + 1..head.len() - 1]
            .split(',')
            .map(|w| w.trim().to_string())
            .collect();
        Ok(Mutation {
            table,
            tuple,
            value: value.trim().to_string(),
        })
    }
}

/// Symbolic value description of a module: generator names with the index of
/// the sign coordinate, if one exists.
pub struct ValueSyntax {
    pub names: Vec<String>,
    pub eps: Option<usize>,
}

impl ValueSyntax {
    pub fn sym_f1() -> Self {
        ValueSyntax {
            names: SYM_F1_GENS[..3].iter().map(|s| s.to_string()).collect(),
            eps: Some(3),
        }
    }

    pub fn sym_f2() -> Self {
        ValueSyntax {
            names: SYM_F2_GENS[..3].iter().map(|s| s.to_string()).collect(),
            eps: Some(3),
        }
    }

    pub fn squares() -> Self {
        ValueSyntax {
            names: SQUARES_GENS.iter().map(|s| s.to_string()).collect(),
            eps: None,
        }
    }

    pub fn mu2() -> Self {
        ValueSyntax {
            names: Vec::new(),
            eps: Some(0),
        }
    }

    pub fn for_table(table: MutableTable) -> Self {
        match table {
            MutableTable::CapPhi => Self::sym_f1(),
            MutableTable::Psi => Self::squares(),
            MutableTable::PsiTilde => Self::sym_f2(),
            MutableTable::CapPsi | MutableTable::PhiPrime => Self::mu2(),
        }
    }

    fn n_gen(&self) -> usize {
        self.names.len() + usize::from(self.eps.is_some())
    }

    /// Renders an exponent vector multiplicatively: `1`, `mu`, `mu^-1`,
    /// `-alpha'*gamma^2`, ...
    pub fn format(&self, v: &[BigInt]) -> String {
        let mut out = String::new();
        let negative = match self.eps {
            Some(i) => v[i].mod_floor(&BigInt::from(2)) == BigInt::from(1),
            None => false,
        };
        if negative {
            out.push('-');
        }
        let mut factors: Vec<String> = Vec::new();
        for (i, name) in self.names.iter().enumerate() {
            let e = &v[i];
            if e.is_zero() {
                continue;
            }
            if *e == BigInt::from(1) {
                factors.push(name.clone());
            } else {
                factors.push(format!("{name}^{e}"));
            }
        }
        if factors.is_empty() {
            out.push('1');
        } else {
            out.push_str(&factors.join("*"));
        }
        out
    }

    /// Parses the rendering back into an exponent vector. Also accepts a
    /// plain comma-separated integer vector.
    pub fn parse(&self, s: &str) -> Result<Vec<BigInt>> {
        let s = s.trim();
        if s.contains(',') || s.parse::<i64>().map_or(false, |v| v != 1 && v != -1) {
            let parts: Vec<&str> = s.split(',').collect();
            if parts.len() != self.n_gen() {
                return Err(Error::LengthMismatch {
                    expected: self.n_gen(),
                    found: parts.len(),
                });
            }
            let mut out = Vec::with_capacity(parts.len());
            for p in parts {
                out.push(p.trim().parse::<i64>().map(BigInt::from).map_err(|_| {
                    Error::UnknownCase(format!("bad integer in value: {p}"))
                })?);
            }
            return Ok(out);
        }
        let mut v = vec![BigInt::zero(); self.n_gen()];
        let mut rest = s;
        if let Some(stripped) = rest.strip_prefix('-') {
            let eps = self.eps.ok_or_else(|| {
                Error::UnknownCase(String::from("module has no sign coordinate"))
            })?;
            v[eps] += 1;
            rest = stripped;
        }
        if rest == "1" || rest.is_empty() {
            return Ok(v);
        }
        for factor in rest.split('*') {
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e.parse().map_err(|_| {
                        Error::UnknownCase(format!("bad exponent in {factor}"))
                    })?;
                    (n, e)
                }
                None => (factor, 1),
            };
            let idx = self
                .names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::UnknownCase(format!("unknown symbol {name}")))?;
            v[idx] += exp;
        }
        Ok(v)
    }
}

/// Applies a mutation to a cochain whose module matches the table syntax.
pub fn apply_mutation(cochain: &mut Cochain, m: &Mutation) -> Result<()> {
    let syntax = ValueSyntax::for_table(m.table);
    let value = syntax.parse(&m.value)?;
    let group = cochain.module().group().clone();
    let mut tuple = Vec::with_capacity(m.tuple.len());
    for w in &m.tuple {
        let idx = group
            .find_word(w)
            .ok_or_else(|| Error::UnknownCase(format!("unknown group element {w}")))?;
        tuple.push(idx);
    }
    if tuple.len() != cochain.degree() {
        return Err(Error::LengthMismatch {
            expected: cochain.degree(),
            found: tuple.len(),
        });
    }
    cochain.set(&tuple, &value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::cocycle_defect;
    use crate::matrix::int;
    use crate::quadric::model::QuadricModel;

    #[test]
    fn tables_have_their_stated_values() {
        let model = QuadricModel::new().unwrap();
        let tables = paper_tables(&model).unwrap();
        let g2 = &model.g2;
        let g3 = &model.g3;
        let s2 = g2.find_word("s").unwrap();
        let t2 = g2.find_word("t").unwrap();
        let st2 = g2.find_word("s*t").unwrap();

        // phi
        assert!(tables.phi.get(&[t2]).iter().all(|x| x.is_zero()));
        assert!(!tables.phi.get(&[s2]).iter().all(|x| x.is_zero()));

        // cap_phi values in the displayed block
        let syntax = ValueSyntax::sym_f1();
        assert_eq!(syntax.format(tables.cap_phi.get(&[t2, t2, s2])), "mu");
        assert_eq!(syntax.format(tables.cap_phi.get(&[t2, st2, s2])), "mu^-1");
        assert_eq!(syntax.format(tables.cap_phi.get(&[t2, s2, s2])), "1");
        assert_eq!(syntax.format(tables.cap_phi.get(&[st2, t2, s2])), "1");
        // last-argument rule: the t-part of the third argument is ignored
        assert_eq!(syntax.format(tables.cap_phi.get(&[t2, t2, st2])), "mu");
        assert_eq!(syntax.format(tables.cap_phi.get(&[t2, t2, t2])), "1");

        // cap_phi is a cocycle (Lemma-level check that the rest of the
        // pipeline depends on).
        assert!(cocycle_defect(&tables.cap_phi).unwrap().is_none());

        // psi and its lift
        let s3 = g3.find_word("s").unwrap();
        let t3 = g3.find_word("t").unwrap();
        let w3 = g3.find_word("w").unwrap();
        let tw3 = g3.mul(t3, w3);
        let stw3 = g3.mul(s3, tw3);
        let sq = ValueSyntax::squares();
        assert_eq!(sq.format(tables.psi.get(&[tw3, stw3])), "mu");
        assert_eq!(sq.format(tables.psi.get(&[w3, stw3])), "1");
        let sf2 = ValueSyntax::sym_f2();
        assert_eq!(sf2.format(tables.psi_tilde.get(&[tw3, stw3])), "alpha'");

        // cap_psi
        let m2 = ValueSyntax::mu2();
        assert_eq!(m2.format(tables.cap_psi.get(&[t2, s2])), "-1");
        assert_eq!(m2.format(tables.cap_psi.get(&[t2, st2])), "-1");
        assert_eq!(m2.format(tables.cap_psi.get(&[st2, s2])), "1");
        assert_eq!(m2.format(tables.cap_psi.get(&[t2, t2])), "1");
        assert!(cocycle_defect(&tables.cap_psi).unwrap().is_none());
    }

    #[test]
    fn symbolic_round_trip() {
        let syntax = ValueSyntax::sym_f1();
        for s in ["1", "-1", "mu", "mu^-1", "-mu", "alpha*gamma^2"] {
            let v = syntax.parse(s).unwrap();
            assert_eq!(syntax.format(&v), s, "round trip of {s}");
        }
        assert_eq!(syntax.parse("0,0,1,0").unwrap(), vec![int(0), int(0), int(1), int(0)]);
        assert!(syntax.parse("bogus").is_err());
    }

    #[test]
    fn mutation_parsing_and_application() {
        let model = QuadricModel::new().unwrap();
        let tables = paper_tables(&model).unwrap();
        let m = Mutation::parse("Phi(t,t,s)=1").unwrap();
        assert_eq!(m.table, MutableTable::CapPhi);
        assert_eq!(m.tuple, vec!["t", "t", "s"]);
        let mut cap_phi = tables.cap_phi.clone();
        apply_mutation(&mut cap_phi, &m).unwrap();
        let g2 = &model.g2;
        let t2 = g2.find_word("t").unwrap();
        let s2 = g2.find_word("s").unwrap();
        assert!(cap_phi.get(&[t2, t2, s2]).iter().all(|x| x.is_zero()));
        // the mutated table is no longer a cocycle
        assert!(cocycle_defect(&cap_phi).unwrap().is_some());
    }
}
