//! Chern characters `(r, c1, ch2)` of positive rank and the invariants built from them.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{chi_line_bundle, DivisorClass, QDivisor, Surface, SurfaceKind};

fn q(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

fn half(n: BigInt) -> BigRational {
    BigRational::new(n, BigInt::from(2))
}

/// Numerical class of a torsion-free sheaf: rank, first Chern class and `ch2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChernCharacter {
    r: BigInt,
    c1: DivisorClass,
    ch2: BigRational,
}

impl ChernCharacter {
    /// Rejects rank `<= 0` and characters with `ch2 - c1^2/2` not integral.
    pub fn new(r: BigInt, c1: DivisorClass, ch2: BigRational) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::ZeroRank);
        }
        let c2 = half(c1.square()) - &ch2;
        if !c2.is_integer() {
            return Err(Error::MalformedCharacter(format!(
                "c2 = c1^2/2 - ch2 = {c2} is not an integer"
            )));
        }
        Ok(Self { r, c1, ch2 })
    }

    /// The character with the given rank, first Chern class and Euler characteristic:
    /// `ch2 = chi - r + c1·K/2`.
    pub fn from_chi(r: BigInt, c1: DivisorClass, chi: BigInt) -> Result<Self> {
        let ch2 = q(chi) - q(r.clone()) + half(c1.dot_canonical());
        Self::new(r, c1, ch2)
    }

    pub fn line_bundle(d: &DivisorClass) -> Self {
        Self {
            r: BigInt::one(),
            c1: d.clone(),
            ch2: half(d.square()),
        }
    }

    pub fn surface(&self) -> &Surface {
        self.c1.surface()
    }

    pub fn rank(&self) -> &BigInt {
        &self.r
    }

    pub fn c1(&self) -> &DivisorClass {
        &self.c1
    }

    pub fn ch2(&self) -> &BigRational {
        &self.ch2
    }

    /// Total slope `c1 / r`.
    pub fn slope(&self) -> QDivisor {
        self.c1
            .to_rational()
            .scale(&BigRational::new(BigInt::one(), self.r.clone()))
    }

    /// `Δ = ν^2/2 - ch2/r`.
    pub fn discriminant(&self) -> BigRational {
        let nu = self.slope();
        nu.square() / BigRational::from_integer(BigInt::from(2)) - &self.ch2 / q(self.r.clone())
    }

    /// `χ = r - c1·K/2 + ch2`.
    pub fn chi(&self) -> BigRational {
        q(self.r.clone()) - half(self.c1.dot_canonical()) + &self.ch2
    }

    /// `χ` as an integer; it always is one for a well-formed character.
    pub fn chi_integer(&self) -> BigInt {
        let chi = self.chi();
        assert!(chi.is_integer(), "fractional Euler characteristic {chi}");
        chi.to_integer()
    }

    /// Character of `E ⊗ O(M)`.
    pub fn tensor(&self, m: &DivisorClass) -> Self {
        let r = q(self.r.clone());
        let ch2 = &self.ch2 + q(self.c1.dot(m).expect("same surface")) + r * half(m.square());
        Self {
            r: self.r.clone(),
            c1: &self.c1 + &m.scale(&self.r),
            ch2,
        }
    }

    /// Character of `E^∨ ⊗ K`.
    pub fn serre_dual(&self) -> Self {
        let k = DivisorClass::canonical(self.surface());
        let ch2 = &self.ch2 - q(self.c1.dot_canonical()) + q(self.r.clone()) * half(k.square());
        Self {
            r: self.r.clone(),
            c1: &(-&self.c1) + &k.scale(&self.r),
            ch2,
        }
    }

    /// Direct sum.
    pub fn add(&self, other: &Self) -> Self {
        Self {
            r: &self.r + &other.r,
            c1: &self.c1 + &other.c1,
            ch2: &self.ch2 + &other.ch2,
        }
    }

    /// `ch2` lowered by `n`: the character after `n` elementary modifications at points.
    pub fn modify(&self, n: &BigInt) -> Self {
        Self {
            r: self.r.clone(),
            c1: self.c1.clone(),
            ch2: &self.ch2 - q(n.clone()),
        }
    }

    /// Parses `r=<int>;c1=<divisor>;chi=<int>` or `r=<int>;c1=<divisor>;ch2=<rational>`.
    pub fn parse(surface: &Surface, input: &str) -> Result<Self> {
        let err = |expected: &str| Error::Parse {
            input: input.to_string(),
            expected: expected.to_string(),
        };
        let grammar = "r=<int>;c1=<divisor>;chi=<int> or r=<int>;c1=<divisor>;ch2=<rational>";
        let mut r = None;
        let mut c1 = None;
        let mut chi = None;
        let mut ch2 = None;
        for part in input.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part.split_once('=').ok_or_else(|| err(grammar))?;
            let value = value.trim();
            match key.trim() {
                "r" => r = Some(value.parse::<BigInt>().map_err(|_| err("r=<int>"))?),
                "c1" => c1 = Some(DivisorClass::parse(surface, value)?),
                "chi" => chi = Some(value.parse::<BigInt>().map_err(|_| err("chi=<int>"))?),
                "ch2" => {
                    ch2 = Some(
                        value
                            .parse::<BigRational>()
                            .map_err(|_| err("ch2=<rational> such as -3/2"))?,
                    )
                }
                _ => return Err(err(grammar)),
            }
        }
        let r = r.ok_or_else(|| err("r=<int>"))?;
        let c1 = c1.ok_or_else(|| err("c1=<divisor>"))?;
        match (chi, ch2) {
            (Some(chi), None) => Self::from_chi(r, c1, chi),
            (None, Some(ch2)) => Self::new(r, c1, ch2),
            _ => Err(err("exactly one of chi=<int> or ch2=<rational>")),
        }
    }
}

impl fmt::Display for ChernCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r={};c1={};ch2={}", self.r, self.c1, self.ch2)
    }
}

/// Euler characteristic `χ(v)` by Riemann-Roch.
pub fn riemann_roch_chi(v: &ChernCharacter) -> BigRational {
    v.chi()
}

/// `χ(v, w) = Σ (-1)^i ext^i(v, w)`.
pub fn euler_pairing(v: &ChernCharacter, w: &ChernCharacter) -> Result<BigRational> {
    if v.surface() != w.surface() {
        return Err(Error::SurfaceMismatch {
            left: v.surface().to_string(),
            right: w.surface().to_string(),
        });
    }
    let (rv, rw) = (q(v.r.clone()), q(w.r.clone()));
    let mixed = &w.c1.scale(&v.r) - &v.c1.scale(&w.r);
    Ok(
        &rv * &rw - half(mixed.dot_canonical()) + &rv * &w.ch2 + &rw * &v.ch2
            - q(v.c1.dot(&w.c1)?),
    )
}

/// `χ(v ⊗ M) = c1(v)·M + r(χ(M) - 1)` for a character with `χ(v) = 0`.
pub fn twisted_chi(v: &ChernCharacter, m: &DivisorClass) -> Result<BigInt> {
    let chi = v.chi();
    if !chi.is_zero() {
        return Err(Error::NonzeroChi(chi));
    }
    Ok(v.c1.dot(m)? + &v.r * (chi_line_bundle(m) - 1))
}

pub fn serre_dual_character(v: &ChernCharacter) -> ChernCharacter {
    v.serre_dual()
}

pub fn character_from_chi(r: BigInt, c1: DivisorClass, chi: BigInt) -> Result<ChernCharacter> {
    ChernCharacter::from_chi(r, c1, chi)
}

/// Replaces `v` by its Serre dual when needed so that `k/r >= -1`, and when `k/r = -1` also
/// `l/r >= -1 - e/2`, where `c1 = kE + lF`. Returns the chosen character and whether it was
/// dualized.
pub fn hirzebruch_normalize(v: &ChernCharacter) -> Result<(ChernCharacter, bool)> {
    let SurfaceKind::Hirzebruch { e } = v.surface().kind() else {
        return Err(Error::Unsupported {
            op: "hirzebruch_normalize",
            surface: v.surface().to_string(),
        });
    };
    let normalized = |w: &ChernCharacter| {
        let nu = w.slope();
        let (k, l) = (&nu.coords()[0], &nu.coords()[1]);
        let minus_one = -BigRational::one();
        *k > minus_one || (*k == minus_one && *l >= minus_one - half(BigInt::from(*e)))
    };
    if normalized(v) {
        return Ok((v.clone(), false));
    }
    let dual = v.serre_dual();
    assert!(normalized(&dual), "neither {v} nor its dual is normalized");
    Ok((dual, true))
}

/// Bogomolov's necessary condition `Δ >= 0` for nonempty moduli.
pub fn bogomolov_nonempty(v: &ChernCharacter) -> bool {
    !v.discriminant().is_negative()
}
