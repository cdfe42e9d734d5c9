//! Line-bundle cohomology: the exact algorithm on Hirzebruch surfaces, sufficient vanishing
//! rules on blowups, and brute-force oracles.

mod engine;
mod hirzebruch;
mod oracle;
mod rules;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

pub use engine::LineBundleCohomology;
pub use hirzebruch::{hirzebruch_cohomology, hirzebruch_pushforward_oracle};
pub use oracle::{blowup_cohomology_oracle, interpolation_h0, OracleConfig};
pub use rules::{vanishing_by_rules, VanishingRules};

/// Dimensions `(h^0, h^1, h^2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CohomologyVector {
    pub h0: BigInt,
    pub h1: BigInt,
    pub h2: BigInt,
}

impl CohomologyVector {
    pub fn zero() -> Self {
        Self {
            h0: BigInt::zero(),
            h1: BigInt::zero(),
            h2: BigInt::zero(),
        }
    }

    /// Fills in `h^1` from the Euler characteristic.
    pub fn from_h0_h2(h0: BigInt, h2: BigInt, chi: &BigInt) -> Self {
        let h1 = &h0 + &h2 - chi;
        Self { h0, h1, h2 }
    }

    pub fn euler_characteristic(&self) -> BigInt {
        &self.h0 - &self.h1 + &self.h2
    }

    /// `(h^2, h^1, h^0)`: the cohomology of the Serre dual bundle.
    pub fn serre_flip(self) -> Self {
        Self {
            h0: self.h2,
            h1: self.h1,
            h2: self.h0,
        }
    }

    pub fn higher_vanishes(&self) -> bool {
        self.h1.is_zero() && self.h2.is_zero()
    }

    pub fn all_vanish(&self) -> bool {
        self.h0.is_zero() && self.higher_vanishes()
    }

    /// Panics if an entry does not fit in `i64`; meant for tests and small inputs.
    pub fn as_i64_triple(&self) -> (i64, i64, i64) {
        let f = |x: &BigInt| x.to_i64().expect("cohomology dimension fits i64");
        (f(&self.h0), f(&self.h1), f(&self.h2))
    }
}

impl fmt::Display for CohomologyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h0={} h1={} h2={}", self.h0, self.h1, self.h2)
    }
}

/// Three-valued answer to "does this cohomology vanish?".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Vanishing {
    Zero,
    Nonzero,
    Unknown,
}

impl fmt::Display for Vanishing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Vanishing::Zero => "zero",
            Vanishing::Nonzero => "nonzero",
            Vanishing::Unknown => "unknown",
        })
    }
}

/// Result of the rule-based vanishing search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingVerdict {
    /// `h^1 = h^2 = 0`?
    pub higher_cohomology: Vanishing,
    /// `h^0 = h^1 = h^2 = 0`?
    pub all_cohomology: Vanishing,
    /// Human-readable steps that justify the verdict.
    pub derivation: Vec<String>,
}
