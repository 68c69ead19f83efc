//! Coefficient normalization for the affine diagonal quadric
//! `a x^2 + b y^2 + c z^2 + d = 0`, in exact arithmetic over rationals and
//! formal unit symbols.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// One quadric coefficient: an exact rational or a formal unit symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coefficient {
    Rational(BigRational),
    Symbol(String),
}

impl Coefficient {
    pub fn rational(n: i64, d: i64) -> Self {
        Coefficient::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn symbol(name: &str) -> Self {
        Coefficient::Symbol(name.to_string())
    }
}

/// The four coefficients, all nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coefficients {
    pub a: Coefficient,
    pub b: Coefficient,
    pub c: Coefficient,
    pub d: Coefficient,
}

/// A monomial `coef · Π symbol^exp` with nonzero rational coefficient; the
/// value group of coefficient arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitValue {
    coef: BigRational,
    symbols: BTreeMap<String, i64>,
}

impl UnitValue {
    pub fn one() -> Self {
        UnitValue {
            coef: BigRational::one(),
            symbols: BTreeMap::new(),
        }
    }

    fn from_coefficient(c: &Coefficient) -> Result<Self> {
        match c {
            Coefficient::Rational(r) => {
                if r.is_zero() {
                    return Err(Error::Precondition(String::from(
                        "quadric coefficients must be nonzero",
                    )));
                }
                Ok(UnitValue {
                    coef: r.clone(),
                    symbols: BTreeMap::new(),
                })
            }
            Coefficient::Symbol(name) => {
                let mut symbols = BTreeMap::new();
                symbols.insert(name.clone(), 1);
                Ok(UnitValue {
                    coef: BigRational::one(),
                    symbols,
                })
            }
        }
    }

    pub fn mul(&self, other: &UnitValue) -> UnitValue {
        let mut symbols = self.symbols.clone();
        for (k, v) in &other.symbols {
            let e = symbols.entry(k.clone()).or_insert(0);
            *e += v;
            if *e == 0 {
                symbols.remove(k);
            }
        }
        UnitValue {
            coef: &self.coef * &other.coef,
            symbols,
        }
    }

    pub fn inv(&self) -> UnitValue {
        UnitValue {
            coef: self.coef.recip(),
            symbols: self.symbols.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    pub fn div(&self, other: &UnitValue) -> UnitValue {
        self.mul(&other.inv())
    }

    pub fn neg(&self) -> UnitValue {
        UnitValue {
            coef: -&self.coef,
            symbols: self.symbols.clone(),
        }
    }
}

impl fmt::Display for UnitValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut num: Vec<String> = Vec::new();
        let mut den: Vec<String> = Vec::new();
        for (name, &e) in &self.symbols {
            let (target, e) = if e > 0 {
                (&mut num, e)
            } else {
                (&mut den, -e)
            };
            if e == 1 {
                target.push(name.clone());
            } else {
                target.push(format!("{name}^{e}"));
            }
        }
        let coef_abs = self.coef.abs();
        if self.coef.is_negative() {
            write!(f, "-")?;
        }
        if !coef_abs.is_one() || num.is_empty() {
            write!(f, "{coef_abs}")?;
            if !num.is_empty() {
                write!(f, "*")?;
            }
        }
        write!(f, "{}", num.join("*"))?;
        match den.len() {
            0 => Ok(()),
            1 => write!(f, "/{}", den[0]),
            _ => write!(f, "/({})", den.join("*")),
        }
    }
}

/// `lambda = -b/a`, `mu = -c/a`, `nu = a d/(b c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedParams {
    pub lambda: UnitValue,
    pub mu: UnitValue,
    pub nu: UnitValue,
}

pub fn normalize_coefficients(c: &Coefficients) -> Result<NormalizedParams> {
    let a = UnitValue::from_coefficient(&c.a)?;
    let b = UnitValue::from_coefficient(&c.b)?;
    let cc = UnitValue::from_coefficient(&c.c)?;
    let d = UnitValue::from_coefficient(&c.d)?;
    Ok(NormalizedParams {
        lambda: b.div(&a).neg(),
        mu: cc.div(&a).neg(),
        nu: a.mul(&d).div(&b.mul(&cc)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn symbolic_normalization() {
        let c = Coefficients {
            a: Coefficient::rational(1, 1),
            b: Coefficient::symbol("b"),
            c: Coefficient::symbol("c"),
            d: Coefficient::symbol("d"),
        };
        let p = normalize_coefficients(&c).unwrap();
        assert_eq!(p.lambda.to_string(), "-b");
        assert_eq!(p.mu.to_string(), "-c");
        assert_eq!(p.nu.to_string(), "d/(b*c)");
    }

    #[test]
    fn unit_coefficients() {
        let c = Coefficients {
            a: Coefficient::rational(1, 1),
            b: Coefficient::rational(-1, 1),
            c: Coefficient::rational(-1, 1),
            d: Coefficient::rational(1, 1),
        };
        let p = normalize_coefficients(&c).unwrap();
        assert_eq!(p.lambda.to_string(), "1");
        assert_eq!(p.mu.to_string(), "1");
        // a d/(b c) = 1/((-1)(-1)) = 1; the transformed equation is
        // x^2 - y^2 - z^2 + 1 = 0, so lambda*mu*nu = d/a forces nu = 1.
        assert_eq!(p.nu.to_string(), "1");
    }

    #[test]
    fn rational_normalization() {
        let c = Coefficients {
            a: Coefficient::rational(2, 1),
            b: Coefficient::rational(4, 1),
            c: Coefficient::rational(6, 1),
            d: Coefficient::rational(8, 1),
        };
        let p = normalize_coefficients(&c).unwrap();
        assert_eq!(p.lambda.to_string(), "-2");
        assert_eq!(p.mu.to_string(), "-3");
        assert_eq!(p.nu.to_string(), "2/3");
    }

    #[test]
    fn zero_coefficient_rejected() {
        let c = Coefficients {
            a: Coefficient::rational(0, 1),
            b: Coefficient::rational(1, 1),
            c: Coefficient::rational(1, 1),
            d: Coefficient::rational(1, 1),
        };
        assert!(normalize_coefficients(&c).is_err());
    }
}
