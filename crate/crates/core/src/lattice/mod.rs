//! Surface models, Picard lattices and their intersection theory.

mod divisor;
mod expr;
mod surface;
mod weyl;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub(crate) use divisor::pairing;
pub use divisor::{DivisorClass, QDivisor};
pub use surface::{PointConfig, Surface, SurfaceKind};
pub(crate) use weyl::move_curve_to_last_i64;
pub use weyl::{weyl_move_curve_to_last, weyl_reflect, Root, WeylWord};

use crate::error::{Error, Result};

pub fn canonical(surface: &Surface) -> DivisorClass {
    DivisorClass::canonical(surface)
}

pub fn intersect(a: &DivisorClass, b: &DivisorClass) -> Result<BigInt> {
    a.dot(b)
}

fn triangular(n: &BigInt) -> BigInt {
    n * (n + 1) / 2
}

/// Euler characteristic of `O(D)`, by the closed Riemann-Roch forms.
pub fn chi_line_bundle(d: &DivisorClass) -> BigInt {
    let c = d.coords();
    let surface = d.surface();
    let off = surface.exceptional_offset();
    let base = match surface.kind() {
        SurfaceKind::Hirzebruch { e } | SurfaceKind::BlowupHirzebruch { e, .. } => {
            let (a, b) = (&c[0], &c[1]);
            (a + 1) * (b + 1) - BigInt::from(*e) * triangular(a)
        }
        _ => triangular(&(&c[0] + 1)),
    };
    // an exceptional coefficient c contributes -alpha(alpha+1)/2 with alpha = -c
    c[off..].iter().fold(base, |acc, ci| acc - triangular(&-ci))
}

/// Coordinates of all (-1)-curves on `Bl_k P^2` at general points, `2 <= k <= 5`.
pub(crate) fn neg_one_curve_coords(k: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 1..=k {
        let mut c = vec![0; k + 1];
        c[i] = 1;
        out.push(c);
    }
    for i in 1..=k {
        for j in i + 1..=k {
            let mut c = vec![0; k + 1];
            c[0] = 1;
            c[i] = -1;
            c[j] = -1;
            out.push(c);
        }
    }
    if k == 5 {
        let mut c = vec![-1; k + 1];
        c[0] = 2;
        out.push(c);
    }
    out
}

/// The (-1)-curves of a del Pezzo surface.
pub fn neg_one_curves(surface: &Surface) -> Result<Vec<DivisorClass>> {
    if !surface.is_del_pezzo() {
        return Err(Error::Unsupported {
            op: "neg_one_curves",
            surface: surface.to_string(),
        });
    }
    Ok(neg_one_curve_coords(surface.num_points())
        .iter()
        .map(|c| DivisorClass::from_ints(surface, c).expect("curve length"))
        .collect())
}

/// Nefness against the dual cone generators: `E` and `F` on `F_e`, the (-1)-curves on a
/// del Pezzo surface.
pub fn is_nef(d: &DivisorClass) -> Result<bool> {
    let surface = d.surface();
    match surface.kind() {
        SurfaceKind::Hirzebruch { e } => {
            let (a, b) = (&d.coords()[0], &d.coords()[1]);
            Ok(!a.is_negative() && b >= &(a * BigInt::from(*e)))
        }
        SurfaceKind::DelPezzo { .. } => Ok(neg_one_curves(surface)?
            .iter()
            .all(|c| !d.dot(c).expect("same surface").is_negative())),
        _ => Err(Error::Unsupported {
            op: "is_nef",
            surface: surface.to_string(),
        }),
    }
}

pub(crate) fn is_nef_dp_i64(c: &[i64]) -> bool {
    let k = c.len() - 1;
    // D·E_i = -c_i, D·(L-E_i-E_j) = d + c_i + c_j, D·(2L-ΣE) = 2d + Σc
    if c[1..].iter().any(|&x| x > 0) {
        return false;
    }
    let mut sorted: Vec<i64> = c[1..].to_vec();
    sorted.sort_unstable();
    if k >= 2 && c[0] + sorted[0] + sorted[1] < 0 {
        return false;
    }
    !(k == 5 && 2 * c[0] + sorted.iter().sum::<i64>() < 0)
}

/// `aE + bF` is effective on `F_e` iff `a, b >= 0`.
pub fn is_effective_hirzebruch(d: &DivisorClass) -> Result<bool> {
    match d.surface().kind() {
        SurfaceKind::Hirzebruch { .. } => {
            Ok(!d.coords()[0].is_negative() && !d.coords()[1].is_negative())
        }
        _ => Err(Error::Unsupported {
            op: "is_effective_hirzebruch",
            surface: d.surface().to_string(),
        }),
    }
}

/// Riemann-Roch in its general form `1 + (D^2 - D·K)/2`, kept as an independent check
/// on [`chi_line_bundle`].
pub fn riemann_roch_line_bundle(d: &DivisorClass) -> BigInt {
    let twice = d.square() - d.dot_canonical();
    debug_assert!((&twice % BigInt::from(2)).is_zero());
    BigInt::from(1) + twice / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &Surface, e: &str) -> DivisorClass {
        DivisorClass::parse(s, e).unwrap()
    }

    #[test]
    fn chi_examples() {
        let f2 = Surface::hirzebruch(2);
        assert_eq!(chi_line_bundle(&d(&f2, "2E+F")), BigInt::zero());
        let bl2: Surface = "blp2:k=2".parse().unwrap();
        assert_eq!(chi_line_bundle(&d(&bl2, "2L-E1-E2")), BigInt::from(4));
        for s in ["F3", "blp2:k=4", "blF2:k=2", "dp5"] {
            let s: Surface = s.parse().unwrap();
            assert_eq!(chi_line_bundle(&DivisorClass::zero(&s)), BigInt::from(1));
        }
    }

    #[test]
    fn curve_counts_and_degrees() {
        for (deg, n) in [(7, 3), (6, 6), (5, 10), (4, 16)] {
            let s = Surface::del_pezzo(deg).unwrap();
            let curves = neg_one_curves(&s).unwrap();
            assert_eq!(curves.len(), n);
            for c in &curves {
                assert_eq!(c.square(), BigInt::from(-1));
                assert_eq!(c.dot_canonical(), BigInt::from(-1));
            }
        }
        assert!(neg_one_curves(&Surface::hirzebruch(1)).is_err());
    }

    #[test]
    fn nef_examples() {
        let f2 = Surface::hirzebruch(2);
        assert!(is_nef(&d(&f2, "E+2F")).unwrap());
        assert!(!is_nef(&d(&Surface::hirzebruch(1), "E")).unwrap());
        let dp5 = Surface::del_pezzo(5).unwrap();
        // no conic (-1)-class on four points, so this is nef
        assert!(is_nef(&d(&dp5, "2L-E1-E2-E3-E4")).unwrap());
        assert!(!is_nef(&d(&dp5, "2L-2E1-E2")).unwrap());
        let bl: Surface = "blp2:k=2".parse().unwrap();
        assert!(is_nef(&d(&bl, "L")).is_err());
    }

    #[test]
    fn nef_fast_path_matches() {
        for deg in 4..=7 {
            let s = Surface::del_pezzo(deg).unwrap();
            let k = s.num_points();
            for seed in 0..400i64 {
                let mut c = vec![seed % 5];
                for i in 0..k {
                    c.push((seed / 5_i64.pow(i as u32 + 1)) % 3 - 2);
                }
                let dc = DivisorClass::from_ints(&s, &c).unwrap();
                assert_eq!(is_nef(&dc).unwrap(), is_nef_dp_i64(&c), "{dc}");
            }
        }
    }

    #[test]
    fn effectivity() {
        let f3 = Surface::hirzebruch(3);
        assert!(is_effective_hirzebruch(&d(&f3, "2E+F")).unwrap());
        assert!(!is_effective_hirzebruch(&d(&Surface::hirzebruch(0), "-E+5F")).unwrap());
        assert!(is_effective_hirzebruch(&DivisorClass::zero(&f3)).unwrap());
    }
}
