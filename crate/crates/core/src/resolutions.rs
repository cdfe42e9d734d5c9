//! Strong exceptional collections of line bundles and the two-term resolutions
//! `0 → ⊕_{i<=j} A_i^{a_i} → ⊕_{i>j} A_i^{a_i} → E → 0` they produce.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{json, Map, Value};

use crate::chern::{euler_pairing, hirzebruch_normalize, twisted_chi, ChernCharacter};
use crate::cohomology::{LineBundleCohomology, Vanishing};
use crate::error::{Error, Result};
use crate::json;
use crate::lattice::{DivisorClass, Surface, SurfaceKind};

/// Line bundles `A_1, ..., A_m, O_X`. The first `split` of the `A_i` are the source of the
/// resolution map, the remaining ones its target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalCollection {
    surface: Surface,
    bundles: Vec<DivisorClass>,
    split: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl ExceptionalCollection {
    /// `bundles` must end with the trivial class and `split` may not exceed the number of
    /// remaining bundles.
    pub fn new(surface: &Surface, bundles: Vec<DivisorClass>, split: usize) -> Result<Self> {
        if let Some(b) = bundles.iter().find(|b| b.surface() != surface) {
            return Err(Error::SurfaceMismatch {
                left: b.surface().to_string(),
                right: surface.to_string(),
            });
        }
        match bundles.last() {
            Some(last) if last.is_zero() => {}
            _ => {
                return Err(Error::Hypothesis(
                    "an exceptional collection must end with O_X".to_string(),
                ))
            }
        }
        if split > bundles.len() - 1 {
            return Err(Error::Hypothesis(format!(
                "split index {split} exceeds the {} resolution terms",
                bundles.len() - 1
            )));
        }
        Ok(Self {
            surface: surface.clone(),
            bundles,
            split,
        })
    }

    pub fn with_split(&self, split: usize) -> Result<Self> {
        Self::new(&self.surface, self.bundles.clone(), split)
    }

    pub fn surface(&self) -> &Surface {
        &self.surface
    }

    /// All bundles including the final `O_X`.
    pub fn bundles(&self) -> &[DivisorClass] {
        &self.bundles
    }

    /// The resolution terms `A_1, ..., A_m`.
    pub fn terms(&self) -> &[DivisorClass] {
        &self.bundles[..self.bundles.len() - 1]
    }

    pub fn split(&self) -> usize {
        self.split
    }

    /// Side of the 0-based term `idx`.
    pub fn side(&self, idx: usize) -> Side {
        if idx < self.split {
            Side::Left
        } else {
            Side::Right
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "surface": self.surface.to_string(),
            "bundles": self.bundles.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
            "split": self.split,
        })
    }
}

impl fmt::Display for ExceptionalCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.bundles.iter().map(|b| format!("O({b})")).collect();
        write!(f, "({}) split after {}", names.join(", "), self.split)
    }
}

/// The collections used by the resolution theorems.
pub fn builtin_collection(surface: &Surface) -> Result<ExceptionalCollection> {
    let d = |c: &[i64]| DivisorClass::from_ints(surface, c).expect("length matches");
    let n = surface.picard_rank();
    let unit = |idx: usize, v: i64| {
        let mut c = vec![0; n];
        c[idx] = v;
        c
    };
    let mut bundles = Vec::new();
    match surface.kind() {
        SurfaceKind::Hirzebruch { e } | SurfaceKind::BlowupHirzebruch { e, .. } => {
            let e = *e as i64;
            let mut a1 = unit(0, -1);
            a1[1] = -e - 1;
            let mut a2 = unit(0, -1);
            a2[1] = -e;
            bundles.push(d(&a1));
            bundles.push(d(&a2));
            bundles.push(d(&unit(1, -1)));
        }
        SurfaceKind::BlowupP2 { .. } | SurfaceKind::DelPezzo { .. } => {
            bundles.push(d(&unit(0, -2)));
            bundles.push(d(&unit(0, -1)));
        }
    }
    for i in surface.exceptional_offset()..n {
        bundles.push(d(&unit(i, -1)));
    }
    bundles.push(DivisorClass::zero(surface));
    ExceptionalCollection::new(surface, bundles, 1)
}

/// Outcome of [`verify_strong_exceptional`]. Positions index into `bundles()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exceptionality {
    Strong,
    Violated {
        earlier: usize,
        later: usize,
        reason: String,
    },
}

impl Exceptionality {
    pub fn is_strong(&self) -> bool {
        matches!(self, Exceptionality::Strong)
    }
}

/// Checks `Ext^*(A_t, A_s) = 0` and `Ext^{>0}(A_s, A_t) = 0` for every `s < t`, using
/// `ext^i(O(A), O(B)) = h^i(B - A)`. A group the rules cannot decide counts as a violation.
pub fn verify_strong_exceptional(coll: &ExceptionalCollection) -> Exceptionality {
    let mut eng = match LineBundleCohomology::new(coll.surface()) {
        Ok(eng) => eng,
        Err(err) => {
            return Exceptionality::Violated {
                earlier: 0,
                later: 0,
                reason: err.to_string(),
            }
        }
    };
    let b = coll.bundles();
    for s in 0..b.len() {
        for t in s + 1..b.len() {
            let backward = &b[s] - &b[t];
            let forward = &b[t] - &b[s];
            let checks = [
                (
                    eng.all(&backward),
                    format!("H^*({backward})"),
                    "Ext^*(later, earlier)",
                ),
                (
                    eng.higher(&forward),
                    format!("H^1, H^2 of {forward}"),
                    "Ext^>0(earlier, later)",
                ),
            ];
            for (answer, group, what) in checks {
                let status = answer.unwrap_or(Vanishing::Unknown);
                if status != Vanishing::Zero {
                    let verb = if status == Vanishing::Nonzero {
                        "is nonzero"
                    } else {
                        "could not be shown to vanish"
                    };
                    return Exceptionality::Violated {
                        earlier: s,
                        later: t,
                        reason: format!("{what}: {group} {verb}"),
                    };
                }
            }
        }
    }
    Exceptionality::Strong
}

/// `hom(O(A), O(B)) = h^0(B - A)`, exact or an error.
fn hom(eng: &mut LineBundleCohomology, a: &DivisorClass, b: &DivisorClass) -> Result<BigInt> {
    let diff = b - a;
    eng.h0(&diff)?
        .ok_or_else(|| Error::Undecidable(format!("h0({diff}) is not determined by the rules")))
}

fn integral(x: BigRational, what: &str) -> Result<BigInt> {
    if !x.is_integer() {
        return Err(Error::Hypothesis(format!("{what} = {x} is not an integer")));
    }
    Ok(x.to_integer())
}

/// Exponents of a two-term resolution together with the character they produce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionReport {
    pub collection: ExceptionalCollection,
    /// One exponent per term `A_1, ..., A_m`.
    pub exponents: Vec<BigInt>,
    pub target: ChernCharacter,
    /// `Σ_right a_i ch(A_i) - Σ_left a_i ch(A_i)`.
    pub cokernel: ChernCharacter,
    pub notes: Vec<String>,
}

const GLOBALLY_GENERATED: &str =
    "the Hom sheaves from the source terms to the target terms are globally generated, so the \
     cokernel of a general map is locally free";

impl ResolutionReport {
    fn build(
        collection: ExceptionalCollection,
        exponents: Vec<BigInt>,
        target: &ChernCharacter,
        notes: Vec<String>,
    ) -> Result<Self> {
        let surface = collection.surface().clone();
        let mut r = BigInt::zero();
        let mut c1 = DivisorClass::zero(&surface);
        let mut ch2 = BigRational::zero();
        for (idx, (a, x)) in collection.terms().iter().zip(&exponents).enumerate() {
            let sign = match collection.side(idx) {
                Side::Left => -x,
                Side::Right => x.clone(),
            };
            r += &sign;
            c1 = c1 + a.scale(&sign);
            ch2 += BigRational::new(&sign * a.square(), BigInt::from(2));
        }
        let cokernel = ChernCharacter::new(r, c1, ch2).map_err(|err| {
            Error::Hypothesis(format!("the virtual cokernel is not a character: {err}"))
        })?;
        Ok(Self {
            collection,
            exponents,
            target: target.clone(),
            cokernel,
            notes,
        })
    }

    /// Every exponent is nonnegative.
    pub fn is_feasible(&self) -> bool {
        self.exponents.iter().all(|a| !a.is_negative())
    }

    /// The cokernel has exactly the target's character.
    pub fn bookkeeping_exact(&self) -> bool {
        self.cokernel == self.target
    }

    fn side_terms(&self, side: Side) -> Vec<(DivisorClass, BigInt)> {
        self.collection
            .terms()
            .iter()
            .zip(&self.exponents)
            .enumerate()
            .filter(|(idx, _)| self.collection.side(*idx) == side)
            .map(|(_, (a, x))| (a.clone(), x.clone()))
            .collect()
    }

    pub fn left(&self) -> Vec<(DivisorClass, BigInt)> {
        self.side_terms(Side::Left)
    }

    pub fn right(&self) -> Vec<(DivisorClass, BigInt)> {
        self.side_terms(Side::Right)
    }

    pub fn to_json(&self) -> Value {
        let side = |terms: Vec<(DivisorClass, BigInt)>| {
            let mut m = Map::new();
            for (a, x) in terms {
                m.insert(a.to_string(), json::int(&x));
            }
            Value::Object(m)
        };
        json!({
            "surface": self.collection.surface().to_string(),
            "collection": self.collection.bundles().iter().map(|b| b.to_string()).collect::<Vec<_>>(),
            "split": self.collection.split(),
            "left": side(self.left()),
            "right": side(self.right()),
            "cokernel": json::character(&self.cokernel),
            "feasible": self.is_feasible(),
            "notes": self.notes,
        })
    }
}

impl fmt::Display for ResolutionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |terms: Vec<(DivisorClass, BigInt)>| {
            if terms.is_empty() {
                return "0".to_string();
            }
            terms
                .iter()
                .map(|(a, x)| format!("O({a})^{x}"))
                .collect::<Vec<_>>()
                .join(" + ")
        };
        write!(
            f,
            "0 -> {} -> {} -> E -> 0",
            side(self.left()),
            side(self.right())
        )?;
        if !self.is_feasible() {
            f.write_str(" (infeasible: negative exponent)")?;
        }
        Ok(())
    }
}

fn require_chi_zero(v: &ChernCharacter) -> Result<()> {
    let chi = v.chi();
    if !chi.is_zero() {
        return Err(Error::NonzeroChi(chi));
    }
    Ok(())
}

/// Solves for the exponents by pairing `v` against the collection:
/// `a_s = -χ(v, A_s) - Σ_{i<s} a_i hom(A_i, A_s)` on the source side and
/// `a_t = χ(A_t, v) - Σ_{i>t} a_i hom(A_t, A_i)` on the target side.
/// Negative exponents are reported, not clamped.
pub fn solve_exponents(
    v: &ChernCharacter,
    coll: &ExceptionalCollection,
) -> Result<ResolutionReport> {
    require_chi_zero(v)?;
    if v.surface() != coll.surface() {
        return Err(Error::SurfaceMismatch {
            left: v.surface().to_string(),
            right: coll.surface().to_string(),
        });
    }
    if let Exceptionality::Violated { reason, .. } = verify_strong_exceptional(coll) {
        return Err(Error::Hypothesis(format!(
            "not a strong exceptional collection: {reason}"
        )));
    }
    let mut eng = LineBundleCohomology::new(coll.surface())?;
    let terms = coll.terms();
    let m = terms.len();
    let j = coll.split();
    let mut a = vec![BigInt::zero(); m];
    for s in 0..j {
        let line = ChernCharacter::line_bundle(&terms[s]);
        let mut x = -integral(euler_pairing(v, &line)?, "chi(v, A_s)")?;
        for i in 0..s {
            x -= &a[i] * hom(&mut eng, &terms[i], &terms[s])?;
        }
        a[s] = x;
    }
    for t in (j..m).rev() {
        let line = ChernCharacter::line_bundle(&terms[t]);
        let mut x = integral(euler_pairing(&line, v)?, "chi(A_t, v)")?;
        for i in t + 1..m {
            x -= &a[i] * hom(&mut eng, &terms[t], &terms[i])?;
        }
        a[t] = x;
    }
    ResolutionReport::build(coll.clone(), a, v, Vec::new())
}

fn hypothesis(holds: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if holds {
        Ok(())
    } else {
        Err(Error::Hypothesis(msg()))
    }
}

/// Closed-form resolution on `F_e` for a normalized character with `χ(v) = 0` and
/// `χ(v(-E)) <= 0`: exponents `a = l - ke + k + r`, `b = -χ(v(-E))`, `c = k + r` where
/// `c1 = kE + lF`. On `F_0` the character `O(-1,-1)^r` is returned as the split-free
/// resolution `0 → 0 → O(-E-F)^r`.
pub fn hirzebruch_resolution(v: &ChernCharacter) -> Result<ResolutionReport> {
    let SurfaceKind::Hirzebruch { e } = v.surface().kind() else {
        return Err(Error::Unsupported {
            op: "hirzebruch_resolution",
            surface: v.surface().to_string(),
        });
    };
    require_chi_zero(v)?;
    let (_, dualized) = hirzebruch_normalize(v)?;
    hypothesis(!dualized, || {
        format!("{v} is not normalized; resolve its Serre dual instead")
    })?;
    let surface = v.surface();
    let coll = builtin_collection(surface)?;
    let r = v.rank().clone();
    let (k, l) = (v.c1().coords()[0].clone(), v.c1().coords()[1].clone());
    let e = BigInt::from(*e);
    if e.is_zero() && k == -&r && l == -&r {
        let exps = vec![r.clone(), BigInt::zero(), BigInt::zero()];
        let notes = vec!["the character of O(-1,-1)^r: a direct sum of acyclic bundles".into()];
        return ResolutionReport::build(coll.with_split(0)?, exps, v, notes);
    }
    let minus_e = DivisorClass::from_ints(surface, &[-1, 0])?;
    let b = -twisted_chi(v, &minus_e)?;
    hypothesis(!b.is_negative(), || {
        format!("chi(E(-E)) = {} > 0, so b = {b} < 0", -&b)
    })?;
    let a = &l - &k * &e + &k + &r;
    hypothesis(!a.is_negative(), || {
        format!("a = l - ke + k + r = {a} < 0; only possible for e <= 1 and k < 0")
    })?;
    let c = &k + &r;
    ResolutionReport::build(coll, vec![a, b, c], v, vec![GLOBALLY_GENERATED.into()])
}

fn rational(x: &BigInt, r: &BigInt) -> BigRational {
    BigRational::new(x.clone(), r.clone())
}

/// Closed-form resolution on a blowup of `P^2` for `ν = δL - Σα_i E_i` with `δ, α_i >= 0`
/// and `δ - Σα_i >= -1`: `a = r(δ - Σα_i + 1)`, `c_i = rα_i`, `b = |r + a - Σc_i|`. When
/// `δ - 2Σα_i + 2 < 0` the `O(-L)` term moves to the source side.
pub fn blowup_resolution(v: &ChernCharacter) -> Result<ResolutionReport> {
    let surface = v.surface();
    if !surface.is_plane_blowup() {
        return Err(Error::Unsupported {
            op: "blowup_resolution",
            surface: surface.to_string(),
        });
    }
    require_chi_zero(v)?;
    let r = v.rank().clone();
    let coords = v.c1().coords();
    let d = coords[0].clone();
    let mult: Vec<BigInt> = coords[1..].iter().map(|c| -c).collect();
    hypothesis(!d.is_negative(), || {
        format!("delta = {} < 0", rational(&d, &r))
    })?;
    for (i, m) in mult.iter().enumerate() {
        hypothesis(!m.is_negative(), || {
            format!("alpha_{} = {} < 0", i + 1, rational(m, &r))
        })?;
    }
    let total: BigInt = mult.iter().sum();
    hypothesis(&d - &total >= -&r, || {
        format!(
            "delta - sum alpha_i = {} < -1",
            rational(&(&d - &total), &r)
        )
    })?;
    let a = &d - &total + &r;
    let gap = &r + &a - &total;
    let coll = builtin_collection(surface)?;
    let (coll, b, form) = if gap.is_negative() {
        (
            coll.with_split(2)?,
            -gap,
            "O(-2L) and O(-L) on the source side",
        )
    } else {
        (coll, gap, "O(-L) on the target side")
    };
    let mut exps = vec![a, b];
    exps.extend(mult);
    let notes = vec![form.to_string(), GLOBALLY_GENERATED.to_string()];
    ResolutionReport::build(coll, exps, v, notes)
}

/// Closed-form resolution on a blowup of `F_e` for `ν = αE + βF - Σα_i E_i` with
/// `α_i >= 0`, `α - Σα_i >= -1` and `β - Σα_i + 1 >= max((e-1)α, eα)`.
pub fn blowup_hirzebruch_resolution(v: &ChernCharacter) -> Result<ResolutionReport> {
    let surface = v.surface();
    let SurfaceKind::BlowupHirzebruch { e, .. } = surface.kind() else {
        return Err(Error::Unsupported {
            op: "blowup_hirzebruch_resolution",
            surface: surface.to_string(),
        });
    };
    require_chi_zero(v)?;
    let e = BigInt::from(*e);
    let r = v.rank().clone();
    let coords = v.c1().coords();
    let (x, y) = (coords[0].clone(), coords[1].clone());
    let mult: Vec<BigInt> = coords[2..].iter().map(|c| -c).collect();
    for (i, m) in mult.iter().enumerate() {
        hypothesis(!m.is_negative(), || {
            format!("alpha_{} = {} < 0", i + 1, rational(m, &r))
        })?;
    }
    let total: BigInt = mult.iter().sum();
    hypothesis(&x - &total >= -&r, || {
        format!(
            "alpha - sum alpha_i = {} < -1",
            rational(&(&x - &total), &r)
        )
    })?;
    let lhs = &y - &total + &r;
    let bound: BigInt = (&e - 1) * &x;
    let bound = bound.max(&e * &x);
    hypothesis(lhs >= bound, || {
        format!(
            "beta - sum alpha_i + 1 = {} < max((e-1)alpha, e alpha) = {}",
            rational(&lhs, &r),
            rational(&bound, &r)
        )
    })?;
    let a = &lhs - (&e - 1) * &x;
    let b = &lhs - &e * &x;
    let c = &x - &total + &r;
    let mut exps = vec![a, b, c];
    exps.extend(mult);
    let coll = builtin_collection(surface)?;
    ResolutionReport::build(coll, exps, v, vec![GLOBALLY_GENERATED.to_string()])
}

/// Sufficient conditions for every cokernel of the resolution to be `F`-prioritary:
/// `h^1(A_s - A_i - F) = 0` for source `i` and target `s`, and `h^2(A_s - A_i - F) = 0` for
/// target `i, s`. Undecided groups count as failures.
pub fn prioritary_hypotheses_check(coll: &ExceptionalCollection, f: &DivisorClass) -> bool {
    prioritary_failure(coll, f).is_none()
}

/// The first group that is not shown to vanish, if any.
pub fn prioritary_failure(coll: &ExceptionalCollection, f: &DivisorClass) -> Option<String> {
    if f.surface() != coll.surface() {
        return Some("F lives on another surface".to_string());
    }
    let mut eng = match LineBundleCohomology::new(coll.surface()) {
        Ok(eng) => eng,
        Err(err) => return Some(err.to_string()),
    };
    let terms = coll.terms();
    let j = coll.split();
    for s in j..terms.len() {
        for i in 0..j {
            let d = &(&terms[s] - &terms[i]) - f;
            if eng.h1(&d).ok() != Some(Vanishing::Zero) {
                return Some(format!("h1({d}) is not shown to vanish"));
            }
        }
        for i in j..terms.len() {
            let d = &(&terms[s] - &terms[i]) - f;
            if eng.h2(&d).ok() != Some(Vanishing::Zero) {
                return Some(format!("h2({d}) is not shown to vanish"));
            }
        }
    }
    None
}

/// The fiber class `F` on `F_e`, and the pencil `L - E_1` on blowups of the plane.
pub fn default_prioritary_direction(surface: &Surface) -> DivisorClass {
    let n = surface.picard_rank();
    let mut c = vec![0; n];
    match surface.kind() {
        SurfaceKind::Hirzebruch { .. } | SurfaceKind::BlowupHirzebruch { .. } => c[1] = 1,
        _ => {
            c[0] = 1;
            c[1] = -1;
        }
    }
    DivisorClass::from_ints(surface, &c).expect("length matches")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surface(s: &str) -> Surface {
        s.parse().unwrap()
    }

    fn ch(s: &Surface, text: &str) -> ChernCharacter {
        ChernCharacter::parse(s, text).unwrap()
    }

    fn ints(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn builtin_sizes_and_strength() {
        for (s, n) in [("F2", 4), ("blp2:k=3", 6), ("blF2:k=1", 5), ("dp5", 7)] {
            let coll = builtin_collection(&surface(s)).unwrap();
            assert_eq!(coll.bundles().len(), n, "{s}");
            assert!(verify_strong_exceptional(&coll).is_strong(), "{s}");
        }
    }

    #[test]
    fn reversed_collection_fails() {
        let s = surface("F1");
        let coll = builtin_collection(&s).unwrap();
        let mut b: Vec<_> = coll.terms().to_vec();
        b.reverse();
        b.push(DivisorClass::zero(&s));
        let rev = ExceptionalCollection::new(&s, b, 1).unwrap();
        match verify_strong_exceptional(&rev) {
            Exceptionality::Violated { earlier, later, .. } => assert!(earlier < later),
            Exceptionality::Strong => panic!("reversed collection accepted"),
        }
    }

    #[test]
    fn worked_blowup_example() {
        let s = surface("blp2:k=2");
        let v = ch(&s, "r=2;c1=2L-E1-E2;chi=0");
        let coll = builtin_collection(&s).unwrap();
        let solved = solve_exponents(&v, &coll).unwrap();
        assert_eq!(ints(&solved.exponents), vec![2, 2, 1, 1]);
        let closed = blowup_resolution(&v).unwrap();
        assert_eq!(closed.exponents, solved.exponents);
        assert_eq!(closed.collection.split(), 1);
        assert!(closed.bookkeeping_exact());
    }

    #[test]
    fn second_form() {
        let s = surface("blp2:k=2");
        let v = ch(&s, "r=2;c1=2L-2E1-2E2;chi=0");
        let rep = blowup_resolution(&v).unwrap();
        assert_eq!(rep.collection.split(), 2);
        assert!(rep.is_feasible() && rep.bookkeeping_exact());
        let coll = builtin_collection(&s).unwrap().with_split(2).unwrap();
        assert_eq!(solve_exponents(&v, &coll).unwrap().exponents, rep.exponents);
    }

    #[test]
    fn hirzebruch_examples() {
        let f1 = surface("F1");
        let rep = hirzebruch_resolution(&ch(&f1, "r=2;c1=0;chi=0")).unwrap();
        assert_eq!(ints(&rep.exponents), vec![2, 2, 2]);
        assert!(rep.bookkeeping_exact());
        let f2 = surface("F2");
        let rep = hirzebruch_resolution(&ch(&f2, "r=2;c1=2E+5F;chi=0")).unwrap();
        assert_eq!(ints(&rep.exponents), vec![5, 3, 4]);
        assert!(rep.is_feasible() && rep.bookkeeping_exact());
        let f0 = surface("F0");
        let rep = hirzebruch_resolution(&ch(&f0, "r=2;c1=-2E-2F;chi=0")).unwrap();
        assert_eq!(rep.collection.split(), 0);
        assert_eq!(
            rep.right(),
            vec![
                (DivisorClass::parse(&f0, "-E-F").unwrap(), BigInt::from(2)),
                (DivisorClass::parse(&f0, "-E").unwrap(), BigInt::zero()),
                (DivisorClass::parse(&f0, "-F").unwrap(), BigInt::zero()),
            ]
        );
        assert!(rep.bookkeeping_exact());
        assert!(hirzebruch_resolution(&ch(&f0, "r=2;c1=-E-2F;chi=0")).is_err());
    }

    #[test]
    fn solver_on_hirzebruch() {
        let f1 = surface("F1");
        let coll = builtin_collection(&f1).unwrap();
        let rep = solve_exponents(&ch(&f1, "r=2;c1=0;chi=0"), &coll).unwrap();
        assert_eq!(ints(&rep.exponents), vec![2, 2, 2]);
        for e in 0..4 {
            let s = Surface::hirzebruch(e);
            let coll = builtin_collection(&s).unwrap();
            let rep = solve_exponents(&ch(&s, "r=1;c1=-F;chi=0"), &coll).unwrap();
            assert_eq!(ints(&rep.exponents), vec![0, 0, 1]);
        }
    }

    #[test]
    fn blowup_hirzebruch_example() {
        let s = surface("blF2:k=1");
        let v = ch(&s, "r=2;c1=2F;chi=0");
        let rep = blowup_hirzebruch_resolution(&v).unwrap();
        assert_eq!(ints(&rep.exponents), vec![4, 4, 2, 0]);
        assert!(rep.bookkeeping_exact());
        let solved = solve_exponents(&v, &builtin_collection(&s).unwrap()).unwrap();
        assert_eq!(solved.exponents, rep.exponents);
    }

    #[test]
    fn hypothesis_errors_name_the_inequality() {
        let s = surface("blp2:k=2");
        let err = blowup_resolution(&ch(&s, "r=2;c1=2L+2E1;chi=0")).unwrap_err();
        assert!(err.to_string().contains("alpha_1"), "{err}");
        let nonzero = ch(&s, "r=2;c1=2L;chi=1");
        assert!(matches!(
            blowup_resolution(&nonzero),
            Err(Error::NonzeroChi(_))
        ));
    }

    #[test]
    fn prioritary_checks() {
        let f2 = surface("F2");
        let coll = builtin_collection(&f2).unwrap();
        assert!(prioritary_hypotheses_check(
            &coll,
            &default_prioritary_direction(&f2)
        ));
        let s = surface("blp2:k=2");
        let coll = builtin_collection(&s).unwrap();
        let f = default_prioritary_direction(&s);
        assert!(prioritary_hypotheses_check(&coll, &f));
        assert!(prioritary_hypotheses_check(
            &coll.with_split(2).unwrap(),
            &f
        ));
        assert!(!prioritary_hypotheses_check(
            &coll.with_split(0).unwrap(),
            &f
        ));
    }

    #[test]
    fn report_json_shape() {
        let s = surface("blp2:k=2");
        let rep = blowup_resolution(&ch(&s, "r=2;c1=2L-E1-E2;chi=0")).unwrap();
        let j = rep.to_json();
        assert_eq!(j["left"]["-2L"], 2);
        assert_eq!(j["right"]["-E1"], 1);
        assert_eq!(j["cokernel"]["r"], 2);
        assert_eq!(j["cokernel"]["chi"], 0);
    }
}
