use std::fmt;

use num_bigint::BigInt;

use super::divisor::DivisorClass;
use super::neg_one_curve_coords;
use super::surface::Surface;
use crate::error::{Error, Result};

/// A simple reflection of the plane-blowup lattice. Indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Root {
    /// `E_i - E_j`: swaps the two exceptional coefficients.
    Transposition(usize, usize),
    /// `L - E_i - E_j - E_m`: the quadratic Cremona reflection.
    Cremona(usize, usize, usize),
}

impl Root {
    pub fn class(&self, surface: &Surface) -> DivisorClass {
        let mut c = vec![0i64; surface.picard_rank()];
        match *self {
            Root::Transposition(i, j) => {
                c[i] = 1;
                c[j] = -1;
            }
            Root::Cremona(i, j, m) => {
                c[0] = 1;
                c[i] = -1;
                c[j] = -1;
                c[m] = -1;
            }
        }
        DivisorClass::from_ints(surface, &c).expect("root length")
    }

    /// Recognizes `±(E_i - E_j)` and `±(L - E_i - E_j - E_m)`.
    pub fn from_class(root: &DivisorClass) -> Result<Self> {
        let not_root = || Error::NotARoot(root.to_string());
        if !root.surface().is_plane_blowup() {
            return Err(not_root());
        }
        let c = root.to_i64_vec().map_err(|_| not_root())?;
        let sign = if c[0] < 0 { -1 } else { 1 };
        let c: Vec<i64> = c.iter().map(|x| x * sign).collect();
        let support: Vec<usize> = (1..c.len()).filter(|&i| c[i] != 0).collect();
        match c[0] {
            0 => {
                if let [i, j] = support[..] {
                    if c[i] == -c[j] && c[i].abs() == 1 {
                        return Ok(Root::Transposition(i, j));
                    }
                }
                Err(not_root())
            }
            1 => {
                if let [i, j, m] = support[..] {
                    if [i, j, m].iter().all(|&x| c[x] == -1) {
                        return Ok(Root::Cremona(i, j, m));
                    }
                }
                Err(not_root())
            }
            _ => Err(not_root()),
        }
    }

    /// Applies the reflection `D -> D + (D·r) r` in place to coordinates `(d, c_1, ..., c_k)`.
    pub(crate) fn apply_i64(&self, c: &mut [i64]) {
        match *self {
            Root::Transposition(i, j) => c.swap(i, j),
            Root::Cremona(i, j, m) => {
                let t = c[0] + c[i] + c[j] + c[m];
                c[0] += t;
                c[i] -= t;
                c[j] -= t;
                c[m] -= t;
            }
        }
    }

    fn apply_big(&self, c: &mut [BigInt]) {
        match *self {
            Root::Transposition(i, j) => c.swap(i, j),
            Root::Cremona(i, j, m) => {
                let t = &c[0] + &c[i] + &c[j] + &c[m];
                c[0] += &t;
                c[i] -= &t;
                c[j] -= &t;
                c[m] -= &t;
            }
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Root::Transposition(i, j) => write!(f, "E{i}-E{j}"),
            Root::Cremona(i, j, m) => write!(f, "L-E{i}-E{j}-E{m}"),
        }
    }
}

/// `s(D) = D + (D·root) root` for a root `E_i - E_j` or `L - E_i - E_j - E_m`.
pub fn weyl_reflect(d: &DivisorClass, root: &DivisorClass) -> Result<DivisorClass> {
    if d.surface() != root.surface() {
        return Err(Error::SurfaceMismatch {
            left: d.surface().to_string(),
            right: root.surface().to_string(),
        });
    }
    let r = Root::from_class(root)?;
    let mut c = d.coords().to_vec();
    r.apply_big(&mut c);
    DivisorClass::new(d.surface(), c)
}

/// A product of simple reflections, applied left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WeylWord {
    pub roots: Vec<Root>,
}

impl WeylWord {
    pub fn apply(&self, d: &DivisorClass) -> DivisorClass {
        let mut c = d.coords().to_vec();
        for r in &self.roots {
            r.apply_big(&mut c);
        }
        DivisorClass::new(d.surface(), c).expect("length preserved")
    }

    /// Applies the inverse word; every reflection is an involution.
    pub fn apply_inverse(&self, d: &DivisorClass) -> DivisorClass {
        let mut c = d.coords().to_vec();
        for r in self.roots.iter().rev() {
            r.apply_big(&mut c);
        }
        DivisorClass::new(d.surface(), c).expect("length preserved")
    }

    pub(crate) fn apply_i64(&self, c: &mut [i64]) {
        for r in &self.roots {
            r.apply_i64(c);
        }
    }

    pub(crate) fn apply_inverse_i64(&self, c: &mut [i64]) {
        for r in self.roots.iter().rev() {
            r.apply_i64(c);
        }
    }
}

/// Reflection word carrying a (-1)-curve `(d, c_1, ..., c_k)` to `E_k`.
///
/// Cremona steps on the three largest multiplicities (ties go to the highest index)
/// until the curve is some `E_m`, then one transposition. The conic class needs two
/// Cremona steps.
pub(crate) fn move_curve_to_last_i64(curve: &[i64]) -> WeylWord {
    let k = curve.len() - 1;
    let mut cur = curve.to_vec();
    let mut roots = Vec::new();
    while cur[0] > 0 {
        let mut idx: Vec<usize> = (1..=k).collect();
        // multiplicity is -c_i; largest first, then highest index
        idx.sort_by(|&a, &b| cur[a].cmp(&cur[b]).then(b.cmp(&a)));
        let mut top = [idx[0], idx[1], idx[2]];
        top.sort_unstable();
        let r = Root::Cremona(top[0], top[1], top[2]);
        r.apply_i64(&mut cur);
        roots.push(r);
        assert!(roots.len() <= 4, "Cremona reduction did not terminate");
    }
    let m = (1..=k)
        .find(|&i| cur[i] == 1)
        .expect("a (-1)-curve of L-degree 0 is some E_m");
    if m != k {
        let r = Root::Transposition(m, k);
        r.apply_i64(&mut cur);
        roots.push(r);
    }
    let mut target = vec![0; k + 1];
    target[k] = 1;
    assert_eq!(cur, target, "Weyl word does not reach E_k");
    WeylWord { roots }
}

/// Returns a word `w` with `w(C) = E_k` for a (-1)-curve `C` on a del Pezzo surface with
/// `k >= 3` points.
pub fn weyl_move_curve_to_last(c: &DivisorClass) -> Result<WeylWord> {
    let surface = c.surface();
    if !surface.is_del_pezzo() || surface.num_points() < 3 {
        return Err(Error::Unsupported {
            op: "weyl_move_curve_to_last",
            surface: surface.to_string(),
        });
    }
    let coords = c
        .to_i64_vec()
        .map_err(|_| Error::NotNegOneCurve(c.to_string()))?;
    if !neg_one_curve_coords(surface.num_points()).contains(&coords) {
        return Err(Error::NotNegOneCurve(c.to_string()));
    }
    Ok(move_curve_to_last_i64(&coords))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &Surface, e: &str) -> DivisorClass {
        DivisorClass::parse(s, e).unwrap()
    }

    #[test]
    fn reflection_examples() {
        let bl2: Surface = "blp2:k=2".parse().unwrap();
        let img = weyl_reflect(&d(&bl2, "2L-E1"), &d(&bl2, "E1-E2")).unwrap();
        assert_eq!(img.to_string(), "2L-E2");
        let bl3: Surface = "blp2:k=3".parse().unwrap();
        let root = d(&bl3, "L-E1-E2-E3");
        let img = weyl_reflect(&d(&bl3, "L"), &root).unwrap();
        assert_eq!(img.to_string(), "2L-E1-E2-E3");
        assert_eq!(weyl_reflect(&img, &root).unwrap(), d(&bl3, "L"));
        let k = DivisorClass::canonical(&bl3);
        assert_eq!(weyl_reflect(&k, &root).unwrap(), k);
    }

    #[test]
    fn rejects_non_roots() {
        let bl3: Surface = "blp2:k=3".parse().unwrap();
        for e in ["L", "E1", "2E1-2E2", "L-E1-E2", "2L-E1-E2-E3", "0"] {
            assert!(weyl_reflect(&d(&bl3, "L"), &d(&bl3, e)).is_err(), "{e}");
        }
        assert!(weyl_reflect(&d(&bl3, "L"), &d(&bl3, "E2-E1")).is_ok());
    }

    #[test]
    fn moves_curves_to_last() {
        let dp6: Surface = "dp6".parse().unwrap();
        let w = weyl_move_curve_to_last(&d(&dp6, "E1")).unwrap();
        assert_eq!(w.roots, vec![Root::Transposition(1, 3)]);
        let c = d(&dp6, "L-E1-E2");
        let w = weyl_move_curve_to_last(&c).unwrap();
        assert_eq!(w.roots, vec![Root::Cremona(1, 2, 3)]);
        assert_eq!(w.apply(&c), d(&dp6, "E3"));
        assert_eq!(w.apply_inverse(&d(&dp6, "E3")), c);

        let dp4: Surface = "dp4".parse().unwrap();
        let conic = d(&dp4, "2L-E1-E2-E3-E4-E5");
        let w = weyl_move_curve_to_last(&conic).unwrap();
        assert_eq!(w.apply(&conic), d(&dp4, "E5"));
        assert!(weyl_move_curve_to_last(&d(&dp4, "L-E1")).is_err());
    }
}
