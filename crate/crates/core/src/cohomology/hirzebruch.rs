use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::CohomologyVector;
use crate::error::{Error, Result};
use crate::lattice::{chi_line_bundle, DivisorClass, SurfaceKind};

fn hirzebruch_coords(d: &DivisorClass, op: &'static str) -> Result<(u32, BigInt, BigInt)> {
    match d.surface().kind() {
        SurfaceKind::Hirzebruch { e } => Ok((*e, d.coords()[0].clone(), d.coords()[1].clone())),
        _ => Err(Error::Unsupported {
            op,
            surface: d.surface().to_string(),
        }),
    }
}

fn chi_ab(e: &BigInt, a: &BigInt, b: &BigInt) -> BigInt {
    (a + 1) * (b + 1) - e * a * (a + 1) / 2
}

/// `(e, a, b)` with `a <= -2` goes to its Serre dual `K - D = (-2-a)E + (-e-2-b)F`.
fn serre_dual(e: &BigInt, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    (-a - 2, -e - b - 2)
}

fn cohomology_ab(e: &BigInt, a: &BigInt, b: &BigInt) -> CohomologyVector {
    let minus_one = BigInt::from(-1);
    if *a == minus_one {
        return CohomologyVector::zero();
    }
    if *a < minus_one {
        let (a2, b2) = serre_dual(e, a, b);
        return cohomology_ab(e, &a2, &b2).serre_flip();
    }
    let chi = chi_ab(e, a, b);
    if b.is_negative() {
        // every section vanishes on each fiber
        return CohomologyVector::from_h0_h2(BigInt::zero(), BigInt::zero(), &chi);
    }
    // While b < ae the curve E is a fixed component: D·E = b - ae < 0. Stripping copies of
    // E stops at a' = min(a, floor(b/e)), where b >= a'e and all higher cohomology vanishes.
    let a_reduced = if e.is_zero() {
        a.clone()
    } else {
        a.min(&b.div_floor(e)).clone()
    };
    let h0 = chi_ab(e, &a_reduced, b);
    CohomologyVector::from_h0_h2(h0, BigInt::zero(), &chi)
}

/// Exact cohomology of `O(aE + bF)` on `F_e`.
pub fn hirzebruch_cohomology(d: &DivisorClass) -> Result<CohomologyVector> {
    let (e, a, b) = hirzebruch_coords(d, "hirzebruch_cohomology")?;
    let v = cohomology_ab(&BigInt::from(e), &a, &b);
    debug_assert_eq!(v.euler_characteristic(), chi_line_bundle(d));
    Ok(v)
}

/// Independent oracle: pushing `O(aE + bF)` forward to `P^1` gives
/// `O(b) ⊕ O(b-e) ⊕ ... ⊕ O(b-ae)` for `a >= 0`.
pub fn hirzebruch_pushforward_oracle(d: &DivisorClass) -> Result<CohomologyVector> {
    let (e, a, b) = hirzebruch_coords(d, "hirzebruch_pushforward_oracle")?;
    let e = BigInt::from(e);
    if a == BigInt::from(-1) {
        return Ok(CohomologyVector::zero());
    }
    let (a, b, flip) = if a < BigInt::from(-1) {
        let (a2, b2) = serre_dual(&e, &a, &b);
        (a2, b2, true)
    } else {
        (a, b, false)
    };
    let mut h0 = BigInt::zero();
    let mut h1 = BigInt::zero();
    let mut j = BigInt::zero();
    while j <= a {
        let deg = &b - &j * &e;
        if !deg.is_negative() {
            h0 += &deg + 1;
        } else if deg < BigInt::from(-1) {
            h1 += -&deg - 1;
        }
        j += 1;
    }
    let v = CohomologyVector {
        h0,
        h1,
        h2: BigInt::zero(),
    };
    Ok(if flip { v.serre_flip() } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Surface;

    fn coh(e: u32, expr: &str) -> (i64, i64, i64) {
        let d = DivisorClass::parse(&Surface::hirzebruch(e), expr).unwrap();
        hirzebruch_cohomology(&d).unwrap().as_i64_triple()
    }

    #[test]
    fn examples() {
        for e in 0..4 {
            assert_eq!(coh(e, "-E+7F"), (0, 0, 0));
            assert_eq!(coh(e, "3F"), (4, 0, 0));
            assert_eq!(coh(e, "-2E-F"), (0, e as i64, 0));
        }
        assert_eq!(coh(1, "E+F"), (3, 0, 0));
        assert_eq!(coh(2, "2E+F"), (2, 2, 0));
        assert_eq!(coh(3, "-2E-5F"), (0, 0, 1));
    }

    #[test]
    fn oracle_examples() {
        let f2 = Surface::hirzebruch(2);
        let d = DivisorClass::parse(&f2, "2E+F").unwrap();
        assert_eq!(
            hirzebruch_pushforward_oracle(&d).unwrap().as_i64_triple(),
            (2, 2, 0)
        );
        let k = DivisorClass::canonical(&f2);
        assert_eq!(
            hirzebruch_pushforward_oracle(&k).unwrap().as_i64_triple(),
            (0, 0, 1)
        );
    }

    #[test]
    fn rejects_other_surfaces() {
        let bl: Surface = "blp2:k=1".parse().unwrap();
        assert!(hirzebruch_cohomology(&DivisorClass::zero(&bl)).is_err());
    }
}
