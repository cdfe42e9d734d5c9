//! Direct sums of line bundles with no higher cohomology whose degrees against a nef class
//! `N` differ by at most one, and the constructions that produce them: rounding a slope on a
//! blowup of the plane, and the decomposition of nef classes on del Pezzo surfaces.
//!
//! An `N`-good sum of rank `r` and first Chern class `c1` followed by `χ` elementary
//! modifications at general points gives a prioritary sheaf with `χ = 0` and no cohomology.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::chern::ChernCharacter;
use crate::cohomology::{blowup_cohomology_oracle, LineBundleCohomology, OracleConfig, Vanishing};
use crate::error::{Error, Result};
use crate::json;
use crate::lattice::{
    chi_line_bundle, is_nef, is_nef_dp_i64, move_curve_to_last_i64, neg_one_curve_coords,
    DivisorClass, Surface, SurfaceKind,
};
use crate::resolutions::default_prioritary_direction;

/// `L_1 ⊕ ... ⊕ L_r` together with the reference class `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodSum {
    n: DivisorClass,
    summands: Vec<DivisorClass>,
}

impl GoodSum {
    pub fn new(n: DivisorClass, summands: Vec<DivisorClass>) -> Result<Self> {
        if summands.is_empty() {
            return Err(Error::ZeroRank);
        }
        if let Some(s) = summands.iter().find(|s| s.surface() != n.surface()) {
            return Err(Error::SurfaceMismatch {
                left: s.surface().to_string(),
                right: n.surface().to_string(),
            });
        }
        Ok(Self { n, summands })
    }

    /// `-K` on del Pezzo surfaces, `L` on other plane blowups, `F` on (blowups of) `F_e`.
    pub fn default_reference(surface: &Surface) -> DivisorClass {
        let n = surface.picard_rank();
        let mut c = vec![0; n];
        match surface.kind() {
            SurfaceKind::DelPezzo { .. } => return -DivisorClass::canonical(surface),
            SurfaceKind::BlowupP2 { .. } => c[0] = 1,
            _ => c[1] = 1,
        }
        DivisorClass::from_ints(surface, &c).expect("length matches")
    }

    pub fn surface(&self) -> &Surface {
        self.n.surface()
    }

    pub fn reference(&self) -> &DivisorClass {
        &self.n
    }

    pub fn summands(&self) -> &[DivisorClass] {
        &self.summands
    }

    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    pub fn c1(&self) -> DivisorClass {
        self.summands
            .iter()
            .fold(DivisorClass::zero(self.surface()), |acc, s| acc + s.clone())
    }

    pub fn character(&self) -> ChernCharacter {
        let mut it = self.summands.iter().map(ChernCharacter::line_bundle);
        let first = it.next().expect("nonempty");
        it.fold(first, |acc, c| acc.add(&c))
    }

    /// `Σ χ(L_i)`.
    pub fn chi(&self) -> BigInt {
        self.summands.iter().map(chi_line_bundle).sum()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "surface": self.surface().to_string(),
            "N": self.n.to_string(),
            "summands": self.summands.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let text = |key: &str| -> Result<String> {
            json::field(v, key)?
                .as_str()
                .map(str::to_string)
                .ok_or_else(|| Error::Parse {
                    input: v.to_string(),
                    expected: format!("\"{key}\" as a string"),
                })
        };
        let surface: Surface = text("surface")?.parse()?;
        let n = DivisorClass::parse(&surface, &text("N")?)?;
        let list = json::field(v, "summands")?
            .as_array()
            .ok_or_else(|| Error::Parse {
                input: v.to_string(),
                expected: "\"summands\" as an array of divisor expressions".to_string(),
            })?;
        let summands = list
            .iter()
            .map(|s| {
                let expr = s.as_str().ok_or_else(|| Error::Parse {
                    input: s.to_string(),
                    expected: "a divisor expression".to_string(),
                })?;
                DivisorClass::parse(&surface, expr)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, summands)
    }
}

impl fmt::Display for GoodSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.summands.iter().map(|s| format!("O({s})")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Per-condition result of [`is_good_sum`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodSumReport {
    /// Every summand has `h^1 = h^2 = 0`.
    pub no_higher_cohomology: bool,
    /// `N·(L_i - L_j) <= 1` for all pairs.
    pub degrees_balanced: bool,
    pub offending_summand: Option<DivisorClass>,
    pub offending_pair: Option<(DivisorClass, DivisorClass)>,
    pub notes: Vec<String>,
}

impl GoodSumReport {
    pub fn passes(&self) -> bool {
        self.no_higher_cohomology && self.degrees_balanced
    }
}

/// Checks sums on one surface, caching the per-summand vanishing answers.
pub struct GoodSumChecker {
    eng: LineBundleCohomology,
    oracle: OracleConfig,
    cache: HashMap<DivisorClass, (bool, Option<String>)>,
}

impl GoodSumChecker {
    pub fn new(surface: &Surface) -> Result<Self> {
        Ok(Self {
            eng: LineBundleCohomology::new(surface)?,
            oracle: OracleConfig::default(),
            cache: HashMap::new(),
        })
    }

    pub fn with_oracle(mut self, oracle: OracleConfig) -> Self {
        self.oracle = oracle;
        self
    }

    /// Whether `h^1 = h^2 = 0` is established, with a note when the oracle was needed.
    pub fn summand_vanishes(&mut self, d: &DivisorClass) -> Result<(bool, Option<String>)> {
        if let Some(hit) = self.cache.get(d) {
            return Ok(hit.clone());
        }
        let answer = match self.eng.higher(d)? {
            Vanishing::Zero => (true, None),
            Vanishing::Nonzero => (false, Some(format!("{d} has higher cohomology"))),
            Vanishing::Unknown if d.surface().is_plane_blowup() => {
                let v = blowup_cohomology_oracle(d, &self.oracle)?;
                if v.higher_vanishes() {
                    (
                        true,
                        Some(format!(
                            "{d}: no rule derivation; the interpolation oracle over F_{} (seed {}, {} trials) gives {v}",
                            self.oracle.prime, self.oracle.seed, self.oracle.trials
                        )),
                    )
                } else {
                    (
                        false,
                        Some(format!("{d}: not shown to vanish; oracle gives {v}")),
                    )
                }
            }
            Vanishing::Unknown => (false, Some(format!("{d}: vanishing undecided"))),
        };
        self.cache.insert(d.clone(), answer.clone());
        Ok(answer)
    }

    pub fn check(&mut self, sum: &GoodSum) -> Result<GoodSumReport> {
        check_reference(sum.reference())?;
        let mut notes = Vec::new();
        let mut offending_summand = None;
        for s in sum.summands() {
            let (ok, note) = self.summand_vanishes(s)?;
            notes.extend(note);
            if !ok && offending_summand.is_none() {
                offending_summand = Some(s.clone());
            }
        }
        let offending_pair = widest_pair(sum).filter(|(gap, _, _)| *gap > BigInt::from(1));
        Ok(GoodSumReport {
            no_higher_cohomology: offending_summand.is_none(),
            degrees_balanced: offending_pair.is_none(),
            offending_summand,
            offending_pair: offending_pair.map(|(_, a, b)| (a, b)),
            notes,
        })
    }
}

/// The pair with the largest `N·(L_i - L_j)`.
fn widest_pair(sum: &GoodSum) -> Option<(BigInt, DivisorClass, DivisorClass)> {
    let degs: Vec<BigInt> = sum
        .summands()
        .iter()
        .map(|s| s.dot(sum.reference()).expect("same surface"))
        .collect();
    let hi = (0..degs.len()).max_by_key(|&i| &degs[i])?;
    let lo = (0..degs.len()).min_by_key(|&i| &degs[i])?;
    Some((
        &degs[hi] - &degs[lo],
        sum.summands()[hi].clone(),
        sum.summands()[lo].clone(),
    ))
}

/// `N` must be nef with `-N·(F + K) >= 2`.
fn check_reference(n: &DivisorClass) -> Result<()> {
    let surface = n.surface();
    let c = n.coords();
    let nef = match surface.kind() {
        SurfaceKind::Hirzebruch { .. } | SurfaceKind::DelPezzo { .. } => is_nef(n)?,
        // nonnegative combinations of L and the pencils L - E_i
        SurfaceKind::BlowupP2 { .. } => {
            c[1..].iter().all(|x| !x.is_positive())
                && c[1..].iter().sum::<BigInt>() + &c[0] >= BigInt::zero()
        }
        // nonnegative combinations of F and E + eF
        SurfaceKind::BlowupHirzebruch { e, .. } => {
            !c[0].is_negative()
                && c[1] >= &c[0] * BigInt::from(*e)
                && c[2..].iter().all(Zero::is_zero)
        }
    };
    if !nef {
        return Err(Error::NotNef(format!(
            "reference class {n} is not certified nef"
        )));
    }
    let f = default_prioritary_direction(surface);
    let bound = -n.dot(&(&f + &DivisorClass::canonical(surface)))?;
    if bound < BigInt::from(2) {
        return Err(Error::Hypothesis(format!(
            "-N·(F+K) = {bound} < 2 for N = {n}, F = {f}"
        )));
    }
    Ok(())
}

/// Checks both goodness conditions; higher cohomology is decided by the rules, falling back
/// to the interpolation oracle on plane blowups (recorded in the notes).
pub fn is_good_sum(sum: &GoodSum) -> Result<GoodSumReport> {
    GoodSumChecker::new(sum.surface())?.check(sum)
}

/// `N·(L_i - L_j) < -N·(F + K)` for all pairs, which makes the sum `F`-prioritary.
pub fn prioritary_sum_check(sum: &GoodSum, f: &DivisorClass) -> bool {
    let surface = sum.surface();
    let Ok(bound) = sum
        .reference()
        .dot(&(f + &DivisorClass::canonical(surface)))
    else {
        return false;
    };
    match widest_pair(sum) {
        Some((gap, _, _)) => gap < -bound,
        None => true,
    }
}

/// Rounds `ν(v) = δL - Σα_i E_i` to an `L`-good sum: `p` summands get `L`-coefficient
/// `⌊δ⌋ + 1`, the rest `⌊δ⌋`, and likewise for each multiplicity. Extra multiplicities are
/// dealt cyclically starting from the last summand, so the summands with the larger
/// `L`-coefficient receive them last.
pub fn rounding_sum(v: &ChernCharacter) -> Result<GoodSum> {
    let surface = v.surface();
    if !surface.is_plane_blowup() {
        return Err(Error::Unsupported {
            op: "rounding_sum",
            surface: surface.to_string(),
        });
    }
    let r = v.rank().clone();
    let rank: usize = (&r).try_into().map_err(|_| Error::Overflow(r.clone()))?;
    let coords = v.c1().coords();
    if coords[0].is_negative() {
        return Err(Error::Hypothesis(format!("delta = {}/{r} < 0", coords[0])));
    }
    if let Some(i) = coords[1..].iter().position(|c| c.is_positive()) {
        return Err(Error::Hypothesis(format!("alpha_{} < 0", i + 1)));
    }
    let (d, p) = coords[0].div_mod_floor(&r);
    let p: usize = (&p).try_into().expect("remainder below rank");
    let mut summands: Vec<Vec<BigInt>> = (0..rank)
        .map(|idx| {
            let mut c = vec![BigInt::zero(); coords.len()];
            c[0] = if idx < p { &d + 1 } else { d.clone() };
            c
        })
        .collect();
    let mut ceil = vec![d.clone()];
    let mut cursor = rank;
    for (i, c) in coords.iter().enumerate().skip(1) {
        let (a, pi): (BigInt, BigInt) = (-c).div_mod_floor(&r);
        let pi: usize = (&pi).try_into().expect("remainder below rank");
        ceil.push(if pi > 0 { -&a - 1 } else { -&a });
        for s in summands.iter_mut() {
            s[i] = -&a;
        }
        for _ in 0..pi {
            cursor = if cursor == 0 { rank - 1 } else { cursor - 1 };
            summands[cursor][i] -= 1;
        }
    }
    let floor_ceil = DivisorClass::new(surface, ceil)?;
    let mut checker = GoodSumChecker::new(surface)?;
    let (ok, note) = checker.summand_vanishes(&floor_ceil)?;
    if !ok {
        return Err(Error::Hypothesis(format!(
            "the rounded bundle {floor_ceil} is not shown to have vanishing higher cohomology{}",
            note.map(|n| format!(" ({n})")).unwrap_or_default()
        )));
    }
    let summands = summands
        .into_iter()
        .map(|c| DivisorClass::new(surface, c))
        .collect::<Result<Vec<_>>>()?;
    let sum = GoodSum::new(GoodSum::default_reference(surface), summands)?;
    debug_assert_eq!(&sum.c1(), v.c1());
    Ok(sum)
}

fn check_del_pezzo(surface: &Surface, op: &'static str) -> Result<usize> {
    match surface.kind() {
        SurfaceKind::DelPezzo { .. } => Ok(surface.num_points()),
        _ => Err(Error::Unsupported {
            op,
            surface: surface.to_string(),
        }),
    }
}

/// Lifts a sum for `D'` to one for `D = D' + E_i - E_j` (1-based indices): the summand with
/// the smallest positive `L'·E_i - L'·E_j` is replaced by `L' + E_i - E_j`, which has the
/// same `(-K)`-degree.
pub fn upshift_lift(sum: &GoodSum, i: usize, j: usize) -> Result<GoodSum> {
    let surface = sum.surface();
    let k = check_del_pezzo(surface, "upshift_lift")?;
    if i == j || !(1..=k).contains(&i) || !(1..=k).contains(&j) {
        return Err(Error::Hypothesis(format!(
            "indices ({i}, {j}) are not two distinct points"
        )));
    }
    let mut c: Vec<Vec<i64>> = sum
        .summands()
        .iter()
        .map(DivisorClass::to_i64_vec)
        .collect::<Result<_>>()?;
    lift_i64(&mut c, i, j).ok_or_else(|| {
        Error::Hypothesis(format!("no summand of {sum} meets E{i} more than E{j}"))
    })?;
    let summands = c
        .iter()
        .map(|x| DivisorClass::from_ints(surface, x))
        .collect::<Result<Vec<_>>>()?;
    GoodSum::new(sum.reference().clone(), summands)
}

/// `D·E_i` for coordinates `(d, c_1, ..., c_k)`.
fn e_deg(c: &[i64], i: usize) -> i64 {
    -c[i]
}

fn lift_i64(summands: &mut [Vec<i64>], i: usize, j: usize) -> Option<()> {
    let pick = summands
        .iter()
        .enumerate()
        .map(|(n, s)| (e_deg(s, i) - e_deg(s, j), n))
        .filter(|(gap, _)| *gap > 0)
        .min()?;
    let s = &mut summands[pick.1];
    // L' + E_i - E_j
    s[i] += 1;
    s[j] -= 1;
    Some(())
}

fn dot_plane(a: &[i64], b: &[i64]) -> i64 {
    a[0] * b[0] - a[1..].iter().zip(&b[1..]).map(|(x, y)| x * y).sum::<i64>()
}

fn anticanonical_degree(c: &[i64]) -> i64 {
    3 * c[0] + c[1..].iter().sum::<i64>()
}

/// The summand split off `D = dL - aE_1` (on the first two points) when decomposing into
/// `r` pieces: a class `M` with `M·(-K) = ⌊(3d - a)/r⌋`, no higher cohomology and `D - M`
/// nef.
fn two_point_i64(d: i64, a: i64, r: i64) -> [i64; 3] {
    let m = (3 * d - a).div_euclid(r);
    if m == 0 {
        return [0, 0, 0];
    }
    let (s, t) = (m / 3, m % 3);
    // M_0 = 0, M_1 = E_1, M_2 = E_1 + E_2
    let mut b = [s, (t >= 1) as i64, (t == 2) as i64];
    if t == 2 && a == 0 {
        return b;
    }
    if t == 2 {
        // add L - 2E_1 - E_2
        b = [b[0] + 1, b[1] - 2, b[2] - 1];
    }
    let line = [1, -1, -1];
    let target = dot_plane(&[d, -a, 0], &line);
    loop {
        assert!(
            -b[1] <= a && -b[2] <= 0,
            "two-point summand {b:?} for D = {d}L-{a}E1, r = {r} overshoots"
        );
        if dot_plane(&b, &line) <= target {
            return b;
        }
        // add L - 3E_1
        b = [b[0] + 1, b[1] - 3, b[2]];
    }
}

/// Splits one summand off `D = dL - aE_1` for a rank `r` decomposition. `D` may only involve
/// `L` and `E_1`, with `0 <= a <= d`; the pair `(L - E_1, r = 2)` is handled by the caller.
pub fn two_point_summand(d: &DivisorClass, r: usize) -> Result<DivisorClass> {
    let surface = d.surface();
    let k = check_del_pezzo(surface, "two_point_summand")?;
    let c = d.to_i64_vec()?;
    if c[2..].iter().any(|&x| x != 0) {
        return Err(Error::Hypothesis(format!("{d} involves points beyond E1")));
    }
    let (deg, a) = (c[0], -c[1]);
    if a < 0 || a > deg {
        return Err(Error::Hypothesis(format!("need 0 <= a <= d for {d}")));
    }
    if r == 0 {
        return Err(Error::ZeroRank);
    }
    if r == 2 && deg == 1 && a == 1 {
        return Err(Error::Hypothesis(
            "L - E1 in rank 2 splits as (L - 2E1) + E1".to_string(),
        ));
    }
    let m = two_point_i64(deg, a, r as i64);
    let mut coords = vec![0; k + 1];
    coords[..3].copy_from_slice(&m);
    DivisorClass::from_ints(surface, &coords)
}

/// One run of the upshift loop: its length and the bound `k·(D·L)^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UpshiftRun {
    pub points: usize,
    pub iterations: usize,
    pub bound: usize,
}

fn decompose_i64(d: &[i64], r: usize, trace: &mut Vec<UpshiftRun>) -> Vec<Vec<i64>> {
    let k = d.len() - 1;
    assert!(is_nef_dp_i64(d), "{d:?} is not nef");
    let mut cur = d.to_vec();
    let mut moves = Vec::new();
    let potential = |c: &[i64]| (1..=k).map(|i| e_deg(c, i).pow(2)).sum::<i64>();
    'search: loop {
        for i in 1..=k {
            for j in 1..=k {
                if i == j || e_deg(&cur, i) < e_deg(&cur, j) {
                    continue;
                }
                // D' = D - E_i + E_j
                let mut next = cur.clone();
                next[i] -= 1;
                next[j] += 1;
                if is_nef_dp_i64(&next) {
                    assert!(potential(&next) >= potential(&cur) + 2, "upshift potential");
                    moves.push((i, j));
                    cur = next;
                    continue 'search;
                }
            }
        }
        break;
    }
    let bound = k * (cur[0] * cur[0]) as usize;
    assert!(moves.len() <= bound, "upshift loop exceeded its bound");
    trace.push(UpshiftRun {
        points: k,
        iterations: moves.len(),
        bound,
    });
    let mut sum = if k >= 3 {
        let curve = neg_one_curve_coords(k)
            .into_iter()
            .find(|c| dot_plane(&cur, c) == 0)
            .expect("a nef class at an upshift fixed point is orthogonal to a (-1)-curve");
        let word = move_curve_to_last_i64(&curve);
        let mut moved = cur.clone();
        word.apply_i64(&mut moved);
        assert_eq!(moved[k], 0, "Weyl word did not make D orthogonal to E_k");
        let mut sum = decompose_i64(&moved[..k], r, trace);
        for s in sum.iter_mut() {
            s.push(0);
            word.apply_inverse_i64(s);
        }
        sum
    } else {
        assert_eq!(
            e_deg(&cur, 1).min(e_deg(&cur, 2)),
            0,
            "two-point fixed point {cur:?}"
        );
        let swap = e_deg(&cur, 2) != 0;
        if swap {
            cur.swap(1, 2);
        }
        let mut sum = two_point_split(&cur, r, trace);
        if swap {
            for s in sum.iter_mut() {
                s.swap(1, 2);
            }
        }
        sum
    };
    for &(i, j) in moves.iter().rev() {
        lift_i64(&mut sum, i, j).expect("a summand meets E_i more than E_j");
    }
    sum
}

fn two_point_split(d: &[i64], r: usize, trace: &mut Vec<UpshiftRun>) -> Vec<Vec<i64>> {
    if r == 1 {
        return vec![d.to_vec()];
    }
    if r == 2 && d == [1, -1, 0] {
        return vec![vec![1, -2, 0], vec![0, 1, 0]];
    }
    let m = two_point_i64(d[0], -d[1], r as i64);
    let rest: Vec<i64> = d.iter().zip(&m).map(|(x, y)| x - y).collect();
    let mut out = vec![m.to_vec()];
    out.extend(decompose_i64(&rest, r - 1, trace));
    out
}

/// Writes a nef class on a del Pezzo surface of degree 4 to 7 as a `(-K)`-good sum of `r`
/// line bundles.
pub fn delpezzo_decompose(d: &DivisorClass, r: usize) -> Result<GoodSum> {
    delpezzo_decompose_traced(d, r).map(|(sum, _)| sum)
}

/// Same as [`delpezzo_decompose`], also returning every upshift run.
pub fn delpezzo_decompose_traced(d: &DivisorClass, r: usize) -> Result<(GoodSum, Vec<UpshiftRun>)> {
    let surface = d.surface();
    check_del_pezzo(surface, "delpezzo_decompose")?;
    if r == 0 {
        return Err(Error::ZeroRank);
    }
    if !is_nef(d)? {
        return Err(Error::NotNef(d.to_string()));
    }
    let c = d.to_i64_vec()?;
    let mut trace = Vec::new();
    let parts = decompose_i64(&c, r, &mut trace);
    let degs: Vec<i64> = parts.iter().map(|p| anticanonical_degree(p)).collect();
    assert!(
        degs.iter().max().unwrap() - degs.iter().min().unwrap() <= 1,
        "unbalanced decomposition of {d}: {parts:?}"
    );
    let summands = parts
        .iter()
        .map(|p| DivisorClass::from_ints(surface, p))
        .collect::<Result<Vec<_>>>()?;
    let sum = GoodSum::new(GoodSum::default_reference(surface), summands)?;
    assert_eq!(&sum.c1(), d, "decomposition does not add up");
    Ok((sum, trace))
}

/// A good sum and the number of elementary modifications that bring it to `χ = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WbnWitness {
    pub good_sum: GoodSum,
    pub modifications: BigInt,
    pub target: ChernCharacter,
}

impl WbnWitness {
    pub fn from_sum(good_sum: GoodSum) -> Self {
        let modifications = good_sum.chi();
        let target = good_sum.character().modify(&modifications);
        Self {
            good_sum,
            modifications,
            target,
        }
    }

    /// `n = χ(sum) >= 0`, the target is the sum with `ch2` lowered by `n`, and `χ(target) = 0`.
    pub fn bookkeeping_exact(&self) -> bool {
        let sum = self.good_sum.character();
        let n = &self.modifications;
        !n.is_negative()
            && *n == self.good_sum.chi()
            && sum.rank() == self.target.rank()
            && sum.c1() == self.target.c1()
            && sum.ch2() - num_rational::BigRational::from_integer(n.clone()) == *self.target.ch2()
            && self.target.chi().is_zero()
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.good_sum.to_json();
        let obj = v.as_object_mut().expect("object");
        obj.insert("modifications".into(), json::int(&self.modifications));
        obj.insert("target".into(), json::character(&self.target));
        v
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let good_sum = GoodSum::from_json(v)?;
        let modifications = json::parse_int(json::field(v, "modifications")?)?;
        let t = json::field(v, "target")?;
        let r = json::parse_int(json::field(t, "r")?)?;
        let c1_text = json::field(t, "c1")?.as_str().ok_or_else(|| Error::Parse {
            input: t.to_string(),
            expected: "\"c1\" as a divisor expression".to_string(),
        })?;
        let c1 = DivisorClass::parse(good_sum.surface(), c1_text)?;
        let ch2 = json::parse_rational(json::field(t, "ch2")?)?;
        let target = ChernCharacter::new(r, c1, ch2)?;
        Ok(Self {
            good_sum,
            modifications,
            target,
        })
    }
}

impl fmt::Display for WbnWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} followed by {} elementary modifications",
            self.good_sum, self.modifications
        )
    }
}

/// Builds the good sum for `v` (decomposition of a nef class on del Pezzo surfaces,
/// rounding on other plane blowups) and the modification count `χ(sum)`.
pub fn wbn_witness(v: &ChernCharacter) -> Result<WbnWitness> {
    let chi = v.chi();
    if !chi.is_zero() {
        return Err(Error::NonzeroChi(chi));
    }
    let surface = v.surface();
    let sum = match surface.kind() {
        SurfaceKind::DelPezzo { .. } => {
            let r: usize = v
                .rank()
                .try_into()
                .map_err(|_| Error::Overflow(v.rank().clone()))?;
            delpezzo_decompose(v.c1(), r)?
        }
        SurfaceKind::BlowupP2 { .. } => rounding_sum(v)?,
        _ => {
            return Err(Error::Unsupported {
                op: "wbn_witness",
                surface: surface.to_string(),
            })
        }
    };
    let witness = WbnWitness::from_sum(sum);
    assert!(witness.bookkeeping_exact(), "witness bookkeeping for {v}");
    debug_assert_eq!(&witness.target, v);
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surface(s: &str) -> Surface {
        s.parse().unwrap()
    }

    fn sum(s: &Surface, parts: &[&str]) -> GoodSum {
        GoodSum::new(
            GoodSum::default_reference(s),
            parts
                .iter()
                .map(|p| DivisorClass::parse(s, p).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn checker_examples() {
        let dp7 = surface("dp7");
        let known = sum(&dp7, &["L-E1", "L-E2", "E1+E2"]);
        assert!(is_good_sum(&known).unwrap().passes());
        let lopsided = sum(&dp7, &["2L", "0"]);
        let rep = is_good_sum(&lopsided).unwrap();
        assert!(rep.no_higher_cohomology && !rep.degrees_balanced);
        let f = default_prioritary_direction(&dp7);
        assert!(!prioritary_sum_check(&lopsided, &f));
        assert!(prioritary_sum_check(&known, &f));
        assert!(is_good_sum(&sum(&dp7, &["0", "0", "0"])).unwrap().passes());
    }

    #[test]
    fn reference_hypothesis() {
        let s = surface("blp2:k=2");
        let bad = GoodSum::new(
            DivisorClass::parse(&s, "E1").unwrap(),
            vec![DivisorClass::zero(&s)],
        )
        .unwrap();
        assert!(is_good_sum(&bad).is_err());
    }

    #[test]
    fn rounding_examples() {
        let s = surface("blp2:k=2");
        let v = ChernCharacter::parse(&s, "r=2;c1=3L-E1;chi=0").unwrap();
        let rs = rounding_sum(&v).unwrap();
        assert_eq!(rs, sum(&s, &["2L", "L-E1"]));
        assert!(is_good_sum(&rs).unwrap().passes());
        let s5 = surface("blp2:k=5");
        let v = ChernCharacter::parse(&s5, "r=3;c1=4L-2E1-E2;chi=0").unwrap();
        let rs = rounding_sum(&v).unwrap();
        let mut lc: Vec<i64> = rs
            .summands()
            .iter()
            .map(|x| i64::try_from(&x.coords()[0]).unwrap())
            .collect();
        lc.sort_unstable();
        assert_eq!(lc, vec![1, 1, 2]);
        assert_eq!(&rs.c1(), v.c1());
        assert!(is_good_sum(&rs).unwrap().passes());
    }

    #[test]
    fn lift_example() {
        let dp7 = surface("dp7");
        let lifted = upshift_lift(&sum(&dp7, &["L-E1", "L-E1"]), 1, 2).unwrap();
        assert_eq!(lifted, sum(&dp7, &["L-E2", "L-E1"]));
        let symmetric = sum(&dp7, &["L-E1-E2", "L-E1"]);
        assert_eq!(
            upshift_lift(&symmetric, 1, 2).unwrap(),
            sum(&dp7, &["L-E1-E2", "L-E2"])
        );
        assert!(upshift_lift(&sum(&dp7, &["L-E1-E2"]), 1, 2).is_err());
    }

    #[test]
    fn two_point_examples() {
        let dp7 = surface("dp7");
        let d = DivisorClass::parse(&dp7, "3L-E1").unwrap();
        assert_eq!(two_point_summand(&d, 2).unwrap().to_string(), "L+E1");
        let small = DivisorClass::parse(&dp7, "L").unwrap();
        assert!(two_point_summand(&small, 4).unwrap().is_zero());
        let dec = delpezzo_decompose(&d, 2).unwrap();
        assert_eq!(dec, sum(&dp7, &["L+E1", "2L-2E1"]));
    }

    #[test]
    fn decomposition_small() {
        for s in ["dp7", "dp6", "dp5", "dp4"] {
            let x = surface(s);
            let zero = delpezzo_decompose(&DivisorClass::zero(&x), 4).unwrap();
            assert!(zero.summands().iter().all(DivisorClass::is_zero));
            let ak = -DivisorClass::canonical(&x);
            for r in 1..=4 {
                let dec = delpezzo_decompose(&ak, r).unwrap();
                assert_eq!(dec.c1(), ak);
                assert!(is_good_sum(&dec).unwrap().passes(), "{s} r={r}: {dec}");
            }
        }
        let dp6 = surface("dp6");
        assert!(delpezzo_decompose(&DivisorClass::parse(&dp6, "E1").unwrap(), 2).is_err());
    }

    #[test]
    fn witness_for_2l() {
        let dp7 = surface("dp7");
        let v = ChernCharacter::parse(&dp7, "r=3;c1=2L;chi=0").unwrap();
        let w = wbn_witness(&v).unwrap();
        assert!(w.bookkeeping_exact());
        assert_eq!(w.target, v);
        let known = WbnWitness::from_sum(sum(&dp7, &["L-E1", "L-E2", "E1+E2"]));
        assert_eq!(known.modifications, BigInt::from(5));
        assert_eq!(known.target, v);
        let back = WbnWitness::from_json(&w.to_json()).unwrap();
        assert_eq!(back, w);
    }
}
