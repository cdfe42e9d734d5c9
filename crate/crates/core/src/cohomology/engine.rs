use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{hirzebruch_cohomology, CohomologyVector, Vanishing, VanishingRules};
use crate::error::{Error, Result};
use crate::lattice::{chi_line_bundle, DivisorClass, Surface, SurfaceKind};

/// Deterministic line-bundle cohomology on one surface: exact on `F_e`, rule-based elsewhere.
/// Answers are per cohomology group and never guess.
pub struct LineBundleCohomology {
    surface: Surface,
    rules: Option<VanishingRules>,
}

impl LineBundleCohomology {
    pub fn new(surface: &Surface) -> Result<Self> {
        let rules = match surface.kind() {
            SurfaceKind::Hirzebruch { .. } => None,
            _ => Some(VanishingRules::new(surface)?),
        };
        Ok(Self {
            surface: surface.clone(),
            rules,
        })
    }

    pub fn surface(&self) -> &Surface {
        &self.surface
    }

    fn check(&self, d: &DivisorClass) -> Result<()> {
        if d.surface() != &self.surface {
            return Err(Error::SurfaceMismatch {
                left: d.surface().to_string(),
                right: self.surface.to_string(),
            });
        }
        Ok(())
    }

    /// The full vector, available on Hirzebruch surfaces only.
    pub fn exact(&self, d: &DivisorClass) -> Option<CohomologyVector> {
        match self.rules {
            None => hirzebruch_cohomology(d).ok(),
            Some(_) => None,
        }
    }

    /// Is `h^1 = h^2 = 0`?
    pub fn higher(&mut self, d: &DivisorClass) -> Result<Vanishing> {
        self.check(d)?;
        if let Some(v) = self.exact(d) {
            return Ok(zero_if(v.higher_vanishes()));
        }
        let rules = self
            .rules
            .as_mut()
            .expect("rules on non-Hirzebruch surfaces");
        if let Ok(c) = d.to_i64_vec() {
            if rules.higher_vanishes_i64(&c) {
                return Ok(Vanishing::Zero);
            }
        }
        Ok(rules.verdict(d)?.higher_cohomology)
    }

    /// Is `h^0 = h^1 = h^2 = 0`?
    pub fn all(&mut self, d: &DivisorClass) -> Result<Vanishing> {
        let chi = chi_line_bundle(d);
        Ok(match self.higher(d)? {
            Vanishing::Zero => zero_if(chi.is_zero()),
            _ if !chi.is_zero() => Vanishing::Nonzero,
            other => other,
        })
    }

    /// `h^0`, when it can be determined exactly.
    pub fn h0(&mut self, d: &DivisorClass) -> Result<Option<BigInt>> {
        if let Some(v) = self.exact(d) {
            return Ok(Some(v.h0));
        }
        if self.h0_obviously_zero(d) {
            return Ok(Some(BigInt::zero()));
        }
        Ok((self.higher(d)? == Vanishing::Zero).then(|| chi_line_bundle(d)))
    }

    pub fn h1(&mut self, d: &DivisorClass) -> Result<Vanishing> {
        if let Some(v) = self.exact(d) {
            return Ok(zero_if(v.h1.is_zero()));
        }
        Ok(match self.higher(d)? {
            Vanishing::Zero => Vanishing::Zero,
            _ if chi_line_bundle(d).is_negative() => Vanishing::Nonzero,
            _ => Vanishing::Unknown,
        })
    }

    /// `h^2(D) = h^0(K - D)`.
    pub fn h2(&mut self, d: &DivisorClass) -> Result<Vanishing> {
        if let Some(v) = self.exact(d) {
            return Ok(zero_if(v.h2.is_zero()));
        }
        let dual = DivisorClass::canonical(&self.surface) - d.clone();
        if self.h0_obviously_zero(&dual) || self.higher(d)? == Vanishing::Zero {
            return Ok(Vanishing::Zero);
        }
        Ok(match self.h0(&dual)? {
            Some(h) => zero_if(h.is_zero()),
            None => Vanishing::Unknown,
        })
    }

    /// Negative degree against a nef class kills all sections.
    fn h0_obviously_zero(&self, d: &DivisorClass) -> bool {
        let c = d.coords();
        match self.surface.kind() {
            SurfaceKind::Hirzebruch { .. } => false,
            // F and E + eF are nef; D·F = a and D·(E + eF) = b
            SurfaceKind::BlowupHirzebruch { .. } => c[0].is_negative() || c[1].is_negative(),
            _ => c[0].is_negative(),
        }
    }
}

fn zero_if(b: bool) -> Vanishing {
    if b {
        Vanishing::Zero
    } else {
        Vanishing::Nonzero
    }
}
