use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Guard on the number of variables for brute-force model counting.
pub const MAX_ORACLE_VARS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Disjunction of conjunctions of at most two positive literals.
    Monotone2Dnf,
    /// Conjunction of disjunctions of at most three literals.
    Cnf3,
    /// Conjunction of disjunctions of at most two positive literals.
    Monotone2Cnf,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Monotone2Dnf => "monotone-2dnf",
            Variant::Cnf3 => "3cnf",
            Variant::Monotone2Cnf => "monotone-2cnf",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "monotone-2dnf" => Ok(Variant::Monotone2Dnf),
            "3cnf" => Ok(Variant::Cnf3),
            "monotone-2cnf" => Ok(Variant::Monotone2Cnf),
            other => Err(Error::InvalidFormula {
                detail: format!("unknown variant {other:?}"),
            }),
        }
    }

    fn arity(self) -> usize {
        match self {
            Variant::Cnf3 => 3,
            _ => 2,
        }
    }

    fn monotone(self) -> bool {
        self != Variant::Cnf3
    }
}

/// Variable `var` (0-based), possibly negated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Self {
            var,
            negated: false,
        }
    }

    pub fn neg(var: usize) -> Self {
        Self { var, negated: true }
    }

    /// From the signed 1-based form `±(var + 1)`.
    pub fn from_signed(lit: i64) -> Result<Self> {
        if lit == 0 {
            return Err(Error::InvalidFormula {
                detail: "literal 0".into(),
            });
        }
        Ok(Self {
            var: (lit.unsigned_abs() - 1) as usize,
            negated: lit < 0,
        })
    }

    pub fn to_signed(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.negated {
            -v
        } else {
            v
        }
    }

    fn holds(self, assignment: u64) -> bool {
        (assignment >> self.var & 1 == 1) != self.negated
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}x{}",
            if self.negated { "¬" } else { "" },
            self.var + 1
        )
    }
}

/// Validated Boolean formula over `x1..xn`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Formula {
    variant: Variant,
    n: usize,
    clauses: Vec<Vec<Literal>>,
}

impl Formula {
    pub fn new(variant: Variant, n: usize, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        let bad = |detail: alloc::string::String| Err(Error::InvalidFormula { detail });
        if n == 0 {
            return bad("no variables".into());
        }
        for (c, clause) in clauses.iter().enumerate() {
            if clause.is_empty() || clause.len() > variant.arity() {
                return bad(format!("clause {} has {} literals", c + 1, clause.len()));
            }
            for lit in clause {
                if lit.var >= n {
                    return bad(format!(
                        "clause {} uses x{} but n = {n}",
                        c + 1,
                        lit.var + 1
                    ));
                }
                if lit.negated && variant.monotone() {
                    return bad(format!(
                        "clause {} negates x{} in a monotone formula",
                        c + 1,
                        lit.var + 1
                    ));
                }
            }
        }
        let f = Self {
            variant,
            n,
            clauses,
        };
        if variant == Variant::Monotone2Dnf {
            f.check_all_variables_used()?;
        }
        Ok(f)
    }

    /// From clauses in signed 1-based form.
    pub fn from_signed(variant: Variant, n: usize, clauses: &[Vec<i64>]) -> Result<Self> {
        let clauses = clauses
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&l| Literal::from_signed(l))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(variant, n, clauses)
    }

    pub(crate) fn check_all_variables_used(&self) -> Result<()> {
        let mut used = alloc::vec![false; self.n];
        for lit in self.clauses.iter().flatten() {
            used[lit.var] = true;
        }
        match used.iter().position(|u| !u) {
            Some(p) => Err(Error::VariableMissing { var: p + 1 }),
            None => Ok(()),
        }
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    pub fn signed_clauses(&self) -> Vec<Vec<i64>> {
        self.clauses
            .iter()
            .map(|c| c.iter().map(|l| l.to_signed()).collect())
            .collect()
    }

    /// Bit `p` of `assignment` is the value of `x_{p+1}`.
    pub fn evaluate(&self, assignment: u64) -> bool {
        let clause = |c: &Vec<Literal>| -> bool {
            match self.variant {
                Variant::Monotone2Dnf => c.iter().all(|l| l.holds(assignment)),
                _ => c.iter().any(|l| l.holds(assignment)),
            }
        };
        match self.variant {
            Variant::Monotone2Dnf => self.clauses.iter().any(clause),
            _ => self.clauses.iter().all(clause),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (inner, outer) = match self.variant {
            Variant::Monotone2Dnf => (" ∧ ", " ∨ "),
            _ => (" ∨ ", " ∧ "),
        };
        for (c, clause) in self.clauses.iter().enumerate() {
            if c > 0 {
                f.write_str(outer)?;
            }
            f.write_str("(")?;
            for (i, lit) in clause.iter().enumerate() {
                if i > 0 {
                    f.write_str(inner)?;
                }
                write!(f, "{lit}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Number of satisfying assignments, by scanning all `2^n`.
pub fn count_sat(f: &Formula) -> Result<u64> {
    if f.n > MAX_ORACLE_VARS {
        return Err(Error::GuardExceeded {
            what: "variables for model counting",
            limit: MAX_ORACLE_VARS as u64,
        });
    }
    Ok((0..1u64 << f.n).filter(|&x| f.evaluate(x)).count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn oracle_examples() {
        let and = Formula::from_signed(Variant::Monotone2Dnf, 2, &[vec![1, 2]]).unwrap();
        assert_eq!(count_sat(&and).unwrap(), 1);
        let or = Formula::from_signed(Variant::Monotone2Cnf, 2, &[vec![1, 2]]).unwrap();
        assert_eq!(count_sat(&or).unwrap(), 3);
        let c3 = Formula::from_signed(Variant::Cnf3, 3, &[vec![1, 2, -3]]).unwrap();
        assert_eq!(count_sat(&c3).unwrap(), 7);
        assert_eq!(c3.to_string(), "(x1 ∨ x2 ∨ ¬x3)");
    }

    #[test]
    fn validation() {
        assert!(Formula::from_signed(Variant::Monotone2Cnf, 2, &[vec![1, -2]]).is_err());
        assert!(Formula::from_signed(Variant::Monotone2Cnf, 2, &[vec![1, 2, 2]]).is_err());
        assert!(Formula::from_signed(Variant::Cnf3, 2, &[vec![3]]).is_err());
        assert!(Formula::from_signed(Variant::Cnf3, 2, &[vec![]]).is_err());
        assert_eq!(
            Formula::from_signed(Variant::Monotone2Dnf, 3, &[vec![1, 2]]),
            Err(Error::VariableMissing { var: 3 })
        );
    }
}
