use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::expr;
use super::surface::{Surface, SurfaceKind};
use crate::error::{Error, Result};

/// Intersection pairing on raw coordinate vectors of `surface`.
pub(crate) fn pairing<T>(surface: &Surface, a: &[T], b: &[T]) -> T
where
    T: Clone + Zero + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + From<i64>,
{
    let off = surface.exceptional_offset();
    let mut acc = match surface.kind() {
        SurfaceKind::Hirzebruch { e } | SurfaceKind::BlowupHirzebruch { e, .. } => {
            let e = T::from(*e as i64);
            T::zero() - e * a[0].clone() * b[0].clone()
                + a[0].clone() * b[1].clone()
                + a[1].clone() * b[0].clone()
        }
        _ => a[0].clone() * b[0].clone(),
    };
    for i in off..a.len() {
        acc = acc - a[i].clone() * b[i].clone();
    }
    acc
}

pub(crate) fn canonical_coords(surface: &Surface) -> Vec<i64> {
    let k = surface.num_points();
    let mut out = match surface.kind() {
        SurfaceKind::Hirzebruch { e } | SurfaceKind::BlowupHirzebruch { e, .. } => {
            vec![-2, -(*e as i64) - 2]
        }
        _ => vec![-3],
    };
    out.extend(std::iter::repeat_n(1, k));
    out
}

/// A divisor class, as integer coordinates in the surface's Picard basis.
///
/// The basis is `(E, F)` on `F_e`, `(L, E_1, ..., E_k)` on blowups of the plane and
/// `(E, F, E_1, ..., E_k)` on blowups of `F_e`. Arithmetic between classes on different
/// surfaces panics; use [`DivisorClass::dot`] for a checked pairing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    surface: Surface,
    coords: Vec<BigInt>,
}

impl DivisorClass {
    pub fn new(surface: &Surface, coords: Vec<BigInt>) -> Result<Self> {
        if coords.len() != surface.picard_rank() {
            return Err(Error::WrongLength {
                surface: surface.to_string(),
                expected: surface.picard_rank(),
                got: coords.len(),
            });
        }
        Ok(Self {
            surface: surface.clone(),
            coords,
        })
    }

    pub fn from_ints(surface: &Surface, coords: &[i64]) -> Result<Self> {
        Self::new(surface, coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(surface: &Surface) -> Self {
        Self {
            surface: surface.clone(),
            coords: vec![BigInt::zero(); surface.picard_rank()],
        }
    }

    /// The `idx`-th basis vector.
    pub fn basis(surface: &Surface, idx: usize) -> Self {
        let mut d = Self::zero(surface);
        d.coords[idx] = BigInt::one();
        d
    }

    /// Parses a divisor expression such as `3L-2E1-E2` or `2E+3F`.
    pub fn parse(surface: &Surface, input: &str) -> Result<Self> {
        let coords = expr::parse(surface, input)?;
        Ok(Self {
            surface: surface.clone(),
            coords,
        })
    }

    pub fn canonical(surface: &Surface) -> Self {
        Self::from_ints(surface, &canonical_coords(surface)).expect("canonical class length")
    }

    pub fn surface(&self) -> &Surface {
        &self.surface
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.surface != other.surface {
            return Err(Error::SurfaceMismatch {
                left: self.surface.to_string(),
                right: other.surface.to_string(),
            });
        }
        Ok(())
    }

    /// Intersection number `self · other`.
    pub fn dot(&self, other: &Self) -> Result<BigInt> {
        self.check_same(other)?;
        Ok(pairing(&self.surface, &self.coords, &other.coords))
    }

    pub fn square(&self) -> BigInt {
        pairing(&self.surface, &self.coords, &self.coords)
    }

    pub fn dot_canonical(&self) -> BigInt {
        self.dot(&Self::canonical(&self.surface))
            .expect("same surface")
    }

    /// `D · E_i` for the `i`-th exceptional curve, 1-based.
    pub fn exceptional_degree(&self, i: usize) -> BigInt {
        -&self.coords[self.surface.exceptional_offset() + i - 1]
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        Self {
            surface: self.surface.clone(),
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }

    /// Coordinates as machine integers, for the combinatorial searches.
    pub fn to_i64_vec(&self) -> Result<Vec<i64>> {
        self.coords
            .iter()
            .map(|c| c.to_i64().ok_or_else(|| Error::Overflow(c.clone())))
            .collect()
    }

    pub fn to_rational(&self) -> QDivisor {
        QDivisor {
            surface: self.surface.clone(),
            coords: self
                .coords
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&expr::format(&self.surface, &self.coords))
    }
}

fn zip_with(
    a: &DivisorClass,
    b: &DivisorClass,
    op: impl Fn(&BigInt, &BigInt) -> BigInt,
) -> DivisorClass {
    assert_eq!(
        a.surface, b.surface,
        "divisor arithmetic across different surfaces"
    );
    DivisorClass {
        surface: a.surface.clone(),
        coords: a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(x, y)| op(x, y))
            .collect(),
    }
}

impl Add<&DivisorClass> for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl Sub<&DivisorClass> for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: DivisorClass) -> DivisorClass {
        &self + &rhs
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: DivisorClass) -> DivisorClass {
        &self - &rhs
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass {
            surface: self.surface.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        -&self
    }
}

impl Mul<i64> for &DivisorClass {
    type Output = DivisorClass;
    fn mul(self, rhs: i64) -> DivisorClass {
        self.scale(&BigInt::from(rhs))
    }
}

impl Mul<i64> for DivisorClass {
    type Output = DivisorClass;
    fn mul(self, rhs: i64) -> DivisorClass {
        self.scale(&BigInt::from(rhs))
    }
}

/// A divisor class with rational coefficients, e.g. a total slope `c1 / r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QDivisor {
    surface: Surface,
    coords: Vec<BigRational>,
}

impl QDivisor {
    pub fn new(surface: &Surface, coords: Vec<BigRational>) -> Result<Self> {
        if coords.len() != surface.picard_rank() {
            return Err(Error::WrongLength {
                surface: surface.to_string(),
                expected: surface.picard_rank(),
                got: coords.len(),
            });
        }
        Ok(Self {
            surface: surface.clone(),
            coords,
        })
    }

    pub fn surface(&self) -> &Surface {
        &self.surface
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn dot(&self, other: &Self) -> Result<BigRational> {
        if self.surface != other.surface {
            return Err(Error::SurfaceMismatch {
                left: self.surface.to_string(),
                right: other.surface.to_string(),
            });
        }
        Ok(rational_pairing(&self.surface, &self.coords, &other.coords))
    }

    pub fn dot_divisor(&self, other: &DivisorClass) -> Result<BigRational> {
        self.dot(&other.to_rational())
    }

    pub fn square(&self) -> BigRational {
        rational_pairing(&self.surface, &self.coords, &self.coords)
    }

    /// `self · E_i` for the `i`-th exceptional curve, 1-based.
    pub fn exceptional_degree(&self, i: usize) -> BigRational {
        -&self.coords[self.surface.exceptional_offset() + i - 1]
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Self {
            surface: self.surface.clone(),
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }

    /// Least common denominator of the coordinates.
    pub fn denominator(&self) -> BigInt {
        self.coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// `(m, m * self)` with `m` the common denominator, so the second entry is integral.
    pub fn clear_denominators(&self) -> (BigInt, DivisorClass) {
        let m = self.denominator();
        let coords = self
            .coords
            .iter()
            .map(|c| (c * BigRational::from_integer(m.clone())).to_integer())
            .collect();
        let d = DivisorClass {
            surface: self.surface.clone(),
            coords,
        };
        (m, d)
    }

    /// Componentwise floor.
    pub fn floor(&self) -> DivisorClass {
        DivisorClass {
            surface: self.surface.clone(),
            coords: self.coords.iter().map(|c| c.floor().to_integer()).collect(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    pub fn is_nonnegative_at(&self, idx: usize) -> bool {
        !self.coords[idx].is_negative()
    }
}

fn rational_pairing(surface: &Surface, a: &[BigRational], b: &[BigRational]) -> BigRational {
    let off = surface.exceptional_offset();
    let mut acc = match surface.kind() {
        SurfaceKind::Hirzebruch { e } | SurfaceKind::BlowupHirzebruch { e, .. } => {
            let e = BigRational::from_integer(BigInt::from(*e));
            -(e * &a[0] * &b[0]) + &a[0] * &b[1] + &a[1] * &b[0]
        }
        _ => &a[0] * &b[0],
    };
    for i in off..a.len() {
        acc -= &a[i] * &b[i];
    }
    acc
}

impl fmt::Display for QDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&expr::format_rational(&self.surface, &self.coords))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &Surface, e: &str) -> DivisorClass {
        DivisorClass::parse(s, e).unwrap()
    }

    #[test]
    fn intersection_examples() {
        let f2 = Surface::hirzebruch(2);
        assert_eq!(d(&f2, "E").dot(&d(&f2, "E+2F")).unwrap(), BigInt::zero());
        let bl2: Surface = "blp2:k=2".parse().unwrap();
        assert_eq!(
            d(&bl2, "2L-E1").dot(&d(&bl2, "L-E1-E2")).unwrap(),
            BigInt::one()
        );
        let f0 = Surface::hirzebruch(0);
        assert_eq!(d(&f0, "E").square(), BigInt::zero());
    }

    #[test]
    fn canonical_classes() {
        let f1 = Surface::hirzebruch(1);
        assert_eq!(DivisorClass::canonical(&f1).to_string(), "-2E-3F");
        let bl2: Surface = "blp2:k=2".parse().unwrap();
        assert_eq!(DivisorClass::canonical(&bl2).to_string(), "-3L+E1+E2");
        let dp7: Surface = "dp7".parse().unwrap();
        assert_eq!(DivisorClass::canonical(&dp7).square(), BigInt::from(7));
        let blf: Surface = "blF2:k=2".parse().unwrap();
        assert_eq!(DivisorClass::canonical(&blf).to_string(), "-2E-4F+E1+E2");
        assert_eq!(DivisorClass::canonical(&blf).square(), BigInt::from(6));
    }

    #[test]
    fn mismatched_surfaces_error() {
        let a = DivisorClass::zero(&Surface::hirzebruch(0));
        let b = DivisorClass::zero(&Surface::hirzebruch(1));
        assert!(matches!(a.dot(&b), Err(Error::SurfaceMismatch { .. })));
    }

    #[test]
    fn clearing_denominators() {
        let f0 = Surface::hirzebruch(0);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let third = BigRational::new(BigInt::from(-2), BigInt::from(3));
        let q = QDivisor::new(&f0, vec![half, third]).unwrap();
        let (m, c) = q.clear_denominators();
        assert_eq!(m, BigInt::from(6));
        assert_eq!(c.to_string(), "3E-4F");
        assert_eq!(q.floor().to_string(), "-F");
    }
}
