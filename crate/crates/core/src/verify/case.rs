use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::simplicial::ComplexSpec;

/// One verification run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VerificationCase {
    /// `Milnor(a,b,c) × A_n` acting on `S^{n+2}`.
    Theorem { a: u64, b: u64, c: u64, n: usize },
    /// `Milnor(a,b,c) × H` on `S^d` for `d` in 6, 7, 8.
    Lowdim { d: u64, a: u64, b: u64, c: u64 },
    /// `Milnor(a,b,c) × Z_k` on `S^5`.
    Family { a: u64, b: u64, c: u64, k: u64 },
    /// Join of two complexes against sphere arithmetic.
    JoinCheck { left: ComplexSpec, right: ComplexSpec },
    /// Double-cone fixed set of a scaled-down joined action, plus freeness checks.
    FixedSet { a: u64, b: u64, c: u64 },
}

impl VerificationCase {
    pub fn milnor(&self) -> Option<GroupSpec> {
        match *self {
            VerificationCase::Theorem { a, b, c, .. }
            | VerificationCase::Lowdim { a, b, c, .. }
            | VerificationCase::Family { a, b, c, .. }
            | VerificationCase::FixedSet { a, b, c } => Some(GroupSpec::milnor(a, b, c)),
            VerificationCase::JoinCheck { .. } => None,
        }
    }

    /// The group acting on the sphere.
    pub fn group(&self) -> Result<Option<GroupSpec>> {
        let Some(q) = self.milnor() else {
            return Ok(None);
        };
        Ok(Some(match *self {
            VerificationCase::Theorem { n, .. } => GroupSpec::product(q, GroupSpec::Alternating(n)),
            VerificationCase::Lowdim { d, .. } => GroupSpec::product(q, lowdim_companion(d)?),
            VerificationCase::Family { k, .. } => GroupSpec::product(q, GroupSpec::Cyclic(k)),
            VerificationCase::FixedSet { .. } => GroupSpec::product(q, GroupSpec::Alternating(4)),
            VerificationCase::JoinCheck { .. } => unreachable!("join checks have no group"),
        }))
    }

    /// Dimension `d` of the target sphere.
    pub fn dimension(&self) -> Option<u64> {
        match *self {
            VerificationCase::Theorem { n, .. } => Some(n as u64 + 2),
            VerificationCase::Lowdim { d, .. } => Some(d),
            VerificationCase::Family { .. } => Some(5),
            VerificationCase::FixedSet { .. } => Some(6),
            VerificationCase::JoinCheck { .. } => None,
        }
    }

    /// The embedding bound `m = d + 1`.
    pub fn embedding_bound(&self) -> Option<u64> {
        self.dimension().map(|d| d + 1)
    }

    /// Checks the case constraints and the group parameters.
    pub fn validate(&self, allow_nonstandard: bool) -> Result<()> {
        match *self {
            VerificationCase::Theorem { n, .. } if n < 7 => {
                return Err(Error::Case(format!(
                    "the dimension-gap argument needs n >= 7, got n = {n}"
                )))
            }
            VerificationCase::Lowdim { d, .. } => {
                lowdim_companion(d)?;
            }
            VerificationCase::Family { k: 0, .. } => {
                return Err(Error::Case("family needs k >= 1".into()))
            }
            _ => {}
        }
        if let Some(g) = self.group()? {
            g.validate(allow_nonstandard)?;
        }
        Ok(())
    }
}

/// Companion group for the low-dimensional cases.
pub fn lowdim_companion(d: u64) -> Result<GroupSpec> {
    match d {
        6 => Ok(GroupSpec::Alternating(5)),
        7 => Ok(GroupSpec::Symmetric(5)),
        8 => Ok(GroupSpec::Alternating(6)),
        _ => Err(Error::Case(format!("low-dimensional cases are d = 6, 7, 8, got {d}"))),
    }
}

impl fmt::Display for VerificationCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerificationCase::Theorem { a, b, c, n } => write!(f, "theorem a={a} b={b} c={c} n={n}"),
            VerificationCase::Lowdim { d, a, b, c } => write!(f, "lowdim d={d} a={a} b={b} c={c}"),
            VerificationCase::Family { a, b, c, k } => write!(f, "family a={a} b={b} c={c} k={k}"),
            VerificationCase::JoinCheck { left, right } => write!(f, "join {left} * {right}"),
            VerificationCase::FixedSet { a, b, c } => write!(f, "fixed set a={a} b={b} c={c}"),
        }
    }
}
