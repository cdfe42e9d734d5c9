//! Weak Brill-Noether verdicts: either a checked witness that the general prioritary sheaf
//! of character `v` has no cohomology, a certificate that every semistable sheaf has
//! sections, emptiness by Bogomolov, or an honest `Unknown`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::chern::{
    bogomolov_nonempty, euler_pairing, hirzebruch_normalize, twisted_chi, ChernCharacter,
};
use crate::cohomology::{
    blowup_cohomology_oracle, hirzebruch_cohomology, CohomologyVector, LineBundleCohomology,
    OracleConfig, Vanishing,
};
use crate::error::{Error, Result};
use crate::goodsums::{
    is_good_sum, prioritary_sum_check, rounding_sum, wbn_witness, GoodSum, WbnWitness,
};
use crate::json;
use crate::lattice::{chi_line_bundle, is_nef, DivisorClass, PointConfig, Surface, SurfaceKind};
use crate::resolutions::{
    blowup_hirzebruch_resolution, blowup_resolution, default_prioritary_direction,
    hirzebruch_resolution, prioritary_failure, verify_strong_exceptional, ResolutionReport,
};

/// Proviso attached to every verdict.
pub const POLARIZATION_PROVISO: &str =
    "verdicts describe the general sheaf of the irreducible stack of F-prioritary sheaves; \
     they apply to H-semistable sheaves for polarizations H with H·(K+F) < 0";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Holds,
    Fails,
    EmptyModuli,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::EmptyModuli => "empty",
            Status::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Resolution(ResolutionReport),
    GoodSum(WbnWitness),
    /// `O(class)` twisted by the ideal of `points` general points.
    LineBundle {
        class: DivisorClass,
        points: BigInt,
    },
}

impl Witness {
    pub fn to_json(&self) -> Value {
        let mut v = match self {
            Witness::Resolution(r) => r.to_json(),
            Witness::GoodSum(w) => w.to_json(),
            Witness::LineBundle { class, points } => json!({
                "class": class.to_string(),
                "points": json::int(points),
            }),
        };
        let kind = match self {
            Witness::Resolution(_) => "resolution",
            Witness::GoodSum(_) => "good_sum",
            Witness::LineBundle { .. } => "line_bundle",
        };
        let obj = v.as_object_mut().expect("object");
        obj.insert("kind".into(), Value::from(kind));
        v
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Resolution(r) => write!(f, "{r}"),
            Witness::GoodSum(w) => write!(f, "{w}"),
            Witness::LineBundle { class, points } => {
                write!(
                    f,
                    "O({class}) twisted by the ideal of {points} general points"
                )
            }
        }
    }
}

/// Lower bounds valid for every semistable sheaf of the character. `curve` is the class `C`
/// with `χ(O(C), v) > 0` when the bound comes from such a pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub curve: Option<DivisorClass>,
    pub chi_pairing: Option<BigInt>,
    pub h0_lower_bound: BigInt,
    pub h1_lower_bound: BigInt,
}

impl Obstruction {
    pub fn to_json(&self) -> Value {
        json!({
            "curve": self.curve.as_ref().map(|c| c.to_string()),
            "chi_pairing": self.chi_pairing.as_ref().map(json::int),
            "h0_lower_bound": json::int(&self.h0_lower_bound),
            "h1_lower_bound": json::int(&self.h1_lower_bound),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WbnVerdict {
    pub status: Status,
    pub witness: Option<Witness>,
    pub obstruction: Option<Obstruction>,
    /// The negative discriminant behind an `EmptyModuli` verdict.
    pub discriminant: Option<BigRational>,
    pub notes: Vec<String>,
}

impl WbnVerdict {
    fn new(status: Status) -> Self {
        Self {
            status,
            witness: None,
            obstruction: None,
            discriminant: None,
            notes: vec![POLARIZATION_PROVISO.to_string()],
        }
    }

    fn unknown(note: impl Into<String>) -> Self {
        let mut v = Self::new(Status::Unknown);
        v.notes.push(note.into());
        v
    }

    fn holds(witness: Witness, note: impl Into<String>) -> Self {
        let mut v = Self::new(Status::Holds);
        v.witness = Some(witness);
        v.notes.push(note.into());
        v
    }

    fn fails(obstruction: Obstruction, note: impl Into<String>) -> Self {
        let mut v = Self::new(Status::Fails);
        v.obstruction = Some(obstruction);
        v.notes.push(note.into());
        v
    }

    pub fn to_json(&self) -> Value {
        let mut m = serde_json::Map::new();
        m.insert("status".into(), Value::from(self.status.to_string()));
        if let Some(w) = &self.witness {
            m.insert("witness".into(), w.to_json());
        }
        if let Some(o) = &self.obstruction {
            m.insert("obstruction".into(), o.to_json());
        }
        if let Some(d) = &self.discriminant {
            m.insert("discriminant".into(), json::rational(d));
        }
        m.insert("notes".into(), json!(self.notes));
        Value::Object(m)
    }
}

impl fmt::Display for WbnVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "status: {}", self.status)?;
        if let Some(w) = &self.witness {
            write!(f, "\nwitness: {w}")?;
        }
        if let Some(o) = &self.obstruction {
            if let Some(c) = &o.curve {
                write!(f, "\ncurve: {c}")?;
            }
            if let Some(x) = &o.chi_pairing {
                write!(f, "\nchi pairing: {x}")?;
            }
            write!(
                f,
                "\nh0 >= {}\nh1 >= {}",
                o.h0_lower_bound, o.h1_lower_bound
            )?;
        }
        if let Some(d) = &self.discriminant {
            write!(f, "\ndiscriminant: {d}")?;
        }
        for n in &self.notes {
            write!(f, "\nnote: {n}")?;
        }
        Ok(())
    }
}

fn require(v: &ChernCharacter, min_rank: u32) -> Result<()> {
    let chi = v.chi();
    if !chi.is_zero() {
        return Err(Error::NonzeroChi(chi));
    }
    if *v.rank() < BigInt::from(min_rank) {
        return Err(Error::Hypothesis(format!("rank {} < {min_rank}", v.rank())));
    }
    Ok(())
}

fn require_kind(v: &ChernCharacter, op: &'static str, ok: bool) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Unsupported {
            op,
            surface: v.surface().to_string(),
        })
    }
}

/// A resolution witness is only used after its bookkeeping, exponents, collection and
/// prioritary hypotheses check out.
fn checked_resolution(report: ResolutionReport, what: &str) -> WbnVerdict {
    let f = default_prioritary_direction(report.collection.surface());
    let problem = if !report.is_feasible() {
        Some("negative exponent".to_string())
    } else if !report.bookkeeping_exact() {
        Some("character bookkeeping mismatch".to_string())
    } else if !verify_strong_exceptional(&report.collection).is_strong() {
        Some("collection is not strong exceptional".to_string())
    } else {
        prioritary_failure(&report.collection, &f)
    };
    match problem {
        None => WbnVerdict::holds(
            Witness::Resolution(report),
            format!("{what}; the cokernel is {f}-prioritary and has no cohomology"),
        ),
        Some(p) => WbnVerdict::unknown(format!("{what} failed its check: {p}")),
    }
}

fn checked_sum(witness: WbnWitness, what: &str) -> Result<WbnVerdict> {
    let f = default_prioritary_direction(witness.good_sum.surface());
    let report = is_good_sum(&witness.good_sum)?;
    if !report.passes() {
        return Ok(WbnVerdict::unknown(format!(
            "{what} is not good: {report:?}"
        )));
    }
    if !witness.bookkeeping_exact() || !prioritary_sum_check(&witness.good_sum, &f) {
        return Ok(WbnVerdict::unknown(format!(
            "{what} failed its bookkeeping check"
        )));
    }
    let mut v = WbnVerdict::holds(
        Witness::GoodSum(witness.clone()),
        format!(
            "{what}; after {} elementary modifications at general points the sheaf is \
             {f}-prioritary with no cohomology",
            witness.modifications
        ),
    );
    v.notes.extend(report.notes);
    Ok(v)
}

/// Rank one: `O(c1) ⊗ I_Z` with `|Z| = χ(O(c1))` has no cohomology iff `O(c1)` has no higher
/// cohomology. Exact on `F_e`; on plane blowups rules first, then the oracle.
pub fn rank_one_wbn(surface: &Surface, c1: &DivisorClass) -> Result<WbnVerdict> {
    if c1.surface() != surface {
        return Err(Error::SurfaceMismatch {
            left: c1.surface().to_string(),
            right: surface.to_string(),
        });
    }
    let chi = chi_line_bundle(c1);
    let mut notes = Vec::new();
    let coh: Option<CohomologyVector> = match surface.kind() {
        SurfaceKind::Hirzebruch { .. } => Some(hirzebruch_cohomology(c1)?),
        _ => {
            let mut eng = LineBundleCohomology::new(surface)?;
            if eng.higher(c1)? == Vanishing::Zero {
                notes.push("h1 = h2 = 0 by the vanishing rules".to_string());
                Some(CohomologyVector::from_h0_h2(
                    chi.clone(),
                    BigInt::zero(),
                    &chi,
                ))
            } else if surface.is_plane_blowup() {
                let cfg = OracleConfig::default();
                let v = blowup_cohomology_oracle(c1, &cfg)?;
                notes.push(format!(
                    "cohomology {v} from the interpolation oracle over F_{} (seed {}, {} trials)",
                    cfg.prime, cfg.seed, cfg.trials
                ));
                Some(v)
            } else {
                None
            }
        }
    };
    let Some(coh) = coh else {
        return Ok(WbnVerdict::unknown(format!(
            "higher cohomology of {c1} is not decided by the rules"
        )));
    };
    let mut verdict = if coh.higher_vanishes() {
        WbnVerdict::holds(
            Witness::LineBundle {
                class: c1.clone(),
                points: chi,
            },
            format!("O({c1}) has {coh}"),
        )
    } else {
        // h^2 is unchanged by the points; h^0 drops by at most the number of points
        let h0 = (&coh.h1 - &coh.h2).max(BigInt::zero());
        let h1 = &h0 + &coh.h2;
        WbnVerdict::fails(
            Obstruction {
                curve: None,
                chi_pairing: None,
                h0_lower_bound: h0,
                h1_lower_bound: h1,
            },
            format!("O({c1}) has {coh}"),
        )
    };
    verdict.notes.extend(notes);
    Ok(verdict)
}

/// Balanced acyclic sum for the normalized characters on `F_0`, `F_1` where the resolution
/// exponent `a` is negative: `-k` copies of `-E + b_i F` and `r + k` copies of `-F`.
fn acyclic_sum(w: &ChernCharacter) -> Result<GoodSum> {
    let surface = w.surface();
    let r = w.rank();
    let (k, l) = (&w.c1().coords()[0], &w.c1().coords()[1]);
    let copies = -k;
    if copies.is_negative() || (r + k).is_negative() || copies.is_zero() {
        return Err(Error::Hypothesis(format!("no acyclic sum for {w}")));
    }
    let total = l + r + k;
    let (q, rem) = num_integer::Integer::div_mod_floor(&total, &copies);
    let count =
        |x: &BigInt| -> Result<usize> { x.try_into().map_err(|_| Error::Overflow(x.clone())) };
    let mut summands = Vec::new();
    for idx in 0..count(&copies)? {
        let b = if BigInt::from(idx) < rem {
            &q + 1
        } else {
            q.clone()
        };
        summands.push(DivisorClass::new(surface, vec![BigInt::from(-1), b])?);
    }
    for _ in 0..count(&(r + k))? {
        summands.push(DivisorClass::from_ints(surface, &[0, -1])?);
    }
    GoodSum::new(GoodSum::default_reference(surface), summands)
}

/// On `F_e` with `r >= 2` and `χ = 0`: after normalizing, empty when `Δ < 0`; otherwise weak
/// Brill-Noether holds iff `ν·E >= -1`.
pub fn hirzebruch_wbn(v: &ChernCharacter) -> Result<WbnVerdict> {
    require_kind(
        v,
        "hirzebruch_wbn",
        matches!(v.surface().kind(), SurfaceKind::Hirzebruch { .. }),
    )?;
    require(v, 2)?;
    let (w, dualized) = hirzebruch_normalize(v)?;
    let mut verdict = hirzebruch_normalized(&w)?;
    if dualized {
        verdict.notes.push(format!(
            "{v} was replaced by its Serre dual {w}; E ↦ E^* ⊗ K identifies the moduli and \
             swaps h0 with h2, so the witness and bounds refer to the dual character"
        ));
    }
    Ok(verdict)
}

fn hirzebruch_normalized(w: &ChernCharacter) -> Result<WbnVerdict> {
    if !bogomolov_nonempty(w) {
        let mut verdict = WbnVerdict::new(Status::EmptyModuli);
        verdict.discriminant = Some(w.discriminant());
        verdict.notes.push(format!(
            "discriminant {} < 0: no semistable sheaves",
            w.discriminant()
        ));
        return Ok(verdict);
    }
    let surface = w.surface();
    let e_curve = DivisorClass::from_ints(surface, &[1, 0])?;
    let minus_e = -e_curve.clone();
    let chi_twist = twisted_chi(w, &minus_e)?;
    if chi_twist.is_positive() {
        let obstruction = Obstruction {
            curve: Some(e_curve),
            chi_pairing: Some(chi_twist.clone()),
            h0_lower_bound: chi_twist.clone(),
            h1_lower_bound: chi_twist.clone(),
        };
        return Ok(WbnVerdict::fails(
            obstruction,
            format!("ν·E < -1: χ(E(-E)) = {chi_twist} > 0 forces sections"),
        ));
    }
    match hirzebruch_resolution(w) {
        Ok(report) if report.collection.split() > 0 => Ok(checked_resolution(
            report,
            "three-term resolution by the fiber collection",
        )),
        _ => {
            let sum = acyclic_sum(w)?;
            checked_sum(
                WbnWitness::from_sum(sum),
                "direct sum of acyclic line bundles -E+bF and -F",
            )
        }
    }
}

/// On plane blowups with `r >= 2` and `χ = 0`: the resolution theorem, then the rounding
/// construction, then the collinear obstruction.
pub fn blowup_p2_wbn(v: &ChernCharacter) -> Result<WbnVerdict> {
    require_kind(
        v,
        "blowup_p2_wbn",
        matches!(v.surface().kind(), SurfaceKind::BlowupP2 { .. }),
    )?;
    require(v, 2)?;
    blowup_common(v)
}

fn blowup_common(v: &ChernCharacter) -> Result<WbnVerdict> {
    let mut skipped = Vec::new();
    match blowup_resolution(v) {
        Ok(report) => {
            let verdict = checked_resolution(report, "resolution by O(-2L), O(-L), O(-E_i)");
            if verdict.status == Status::Holds {
                return Ok(verdict);
            }
            skipped.extend(verdict.notes.into_iter().skip(1));
        }
        Err(Error::Hypothesis(h)) => skipped.push(format!("resolution theorem: {h}")),
        Err(err) => return Err(err),
    }
    match rounding_sum(v) {
        Ok(sum) => {
            let verdict = checked_sum(WbnWitness::from_sum(sum), "rounded L-good sum")?;
            if verdict.status == Status::Holds {
                return Ok(verdict);
            }
            skipped.extend(verdict.notes.into_iter().skip(1));
        }
        Err(Error::Hypothesis(h)) => skipped.push(format!("rounding: {h}")),
        Err(err) => return Err(err),
    }
    if let Some(PointConfig::Collinear(line)) = v.surface().point_config() {
        let surface = v.surface();
        let mut c = vec![0i64; surface.picard_rank()];
        c[0] = 1;
        for &i in line {
            c[i] = -1;
        }
        let curve = DivisorClass::from_ints(surface, &c)?;
        // δ - Σ_S α_i < -1 is c1·(L - Σ_S E_i) < -r
        if v.c1().dot(&curve)? < -v.rank().clone() {
            let obstruction = collinear_obstruction(v, &curve)?;
            let mut verdict = WbnVerdict::fails(
                obstruction,
                format!(
                    "the points on the line {curve} give Hom(O({curve}), E) ≠ 0, and O → O({curve}) \
                     turns it into sections"
                ),
            );
            verdict.notes.push(format!(
                "conditional on the polarization: ν·H > (K + {curve})·H"
            ));
            return Ok(verdict);
        }
    }
    let mut verdict = WbnVerdict::unknown("no theorem applies");
    verdict.notes.extend(skipped);
    Ok(verdict)
}

fn collinear_obstruction(v: &ChernCharacter, curve: &DivisorClass) -> Result<Obstruction> {
    let pairing = integral_pairing(&ChernCharacter::line_bundle(curve), v)?;
    Ok(Obstruction {
        curve: Some(curve.clone()),
        chi_pairing: Some(pairing.clone()),
        h0_lower_bound: pairing.clone(),
        h1_lower_bound: pairing,
    })
}

fn integral_pairing(a: &ChernCharacter, b: &ChernCharacter) -> Result<BigInt> {
    let x = euler_pairing(a, b)?;
    if !x.is_integer() {
        return Err(Error::MalformedCharacter(format!(
            "χ pairing {x} is not integral"
        )));
    }
    Ok(x.to_integer())
}

/// On blowups of `F_e`: the resolution theorem, otherwise `Unknown`.
pub fn blowup_hirzebruch_wbn(v: &ChernCharacter) -> Result<WbnVerdict> {
    require_kind(
        v,
        "blowup_hirzebruch_wbn",
        matches!(v.surface().kind(), SurfaceKind::BlowupHirzebruch { .. }),
    )?;
    require(v, 2)?;
    match blowup_hirzebruch_resolution(v) {
        Ok(report) => Ok(checked_resolution(
            report,
            "resolution by O(-E-(e+1)F), O(-E-eF), O(-F), O(-E_i)",
        )),
        Err(Error::Hypothesis(h)) => Ok(WbnVerdict::unknown(format!("resolution theorem: {h}"))),
        Err(err) => Err(err),
    }
}

/// On del Pezzo surfaces of degree 4 to 7: nef `c1` gives a `(-K)`-good sum; other classes
/// fall back to the plane-blowup theorems.
pub fn delpezzo_wbn(v: &ChernCharacter) -> Result<WbnVerdict> {
    require_kind(v, "delpezzo_wbn", v.surface().is_del_pezzo())?;
    require(v, 1)?;
    if is_nef(v.c1())? {
        return checked_sum(wbn_witness(v)?, "(-K)-good sum for a nef class");
    }
    if *v.rank() < BigInt::from(2) {
        return Ok(WbnVerdict::unknown(format!("{} is not nef", v.c1())));
    }
    let mut verdict = blowup_common(v)?;
    verdict.notes.push(format!("{} is not nef", v.c1()));
    Ok(verdict)
}

/// `χ(O(C), v) > 0` with `ν·H > (K + C)·H` forces `h^0(E) >= χ(O(C), v)` for every
/// `H`-semistable `E` of character `v`, where `C` is effective.
pub fn obstruction_certificate(
    v: &ChernCharacter,
    c: &DivisorClass,
    h: &DivisorClass,
) -> Option<Obstruction> {
    let pairing = integral_pairing(&ChernCharacter::line_bundle(c), v).ok()?;
    if !pairing.is_positive() {
        return None;
    }
    let kc = &DivisorClass::canonical(c.surface()) + c;
    let lhs = v.slope().dot_divisor(h).ok()?;
    let rhs = BigRational::from_integer(kc.dot(h).ok()?);
    if lhs <= rhs {
        return None;
    }
    Some(Obstruction {
        curve: Some(c.clone()),
        chi_pairing: Some(pairing.clone()),
        h0_lower_bound: pairing.clone(),
        h1_lower_bound: pairing,
    })
}

/// Dispatches on the surface; rank one goes to [`rank_one_wbn`].
pub fn decide_wbn(v: &ChernCharacter) -> Result<WbnVerdict> {
    require(v, 1)?;
    if v.rank() == &BigInt::from(1) {
        return rank_one_wbn(v.surface(), v.c1());
    }
    match v.surface().kind() {
        SurfaceKind::Hirzebruch { .. } => hirzebruch_wbn(v),
        SurfaceKind::BlowupP2 { .. } => blowup_p2_wbn(v),
        SurfaceKind::BlowupHirzebruch { .. } => blowup_hirzebruch_wbn(v),
        SurfaceKind::DelPezzo { .. } => delpezzo_wbn(v),
    }
}
