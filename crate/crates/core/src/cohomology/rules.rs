//! Sufficient conditions for the vanishing of higher cohomology on blowups.
//!
//! A class has `h^1 = h^2 = 0` whenever it can be written as `B + C_1 + ... + C_n` where
//! `B` is `O_X` or one of the acyclic classes below, each `C_t` is a smooth rational curve,
//! and every partial sum `P` satisfies `P·C_t >= -C_t^2 - 1` before `C_t` is added (the
//! restriction of the new bundle to `C_t` then has degree at least `-1`). Acyclic bases:
//!
//! * plane blowups: `-2L + ΣE_i`, `-L + ΣE_i`, `-E_j + ΣE_i` over any index set;
//! * blowups of `F_e`: `-E + mF + ΣE_i`, `-F + ΣE_i`, `-E_j + ΣE_i`.
//!
//! The search runs backwards from the target: removing `C` from `D` is allowed iff
//! `D·C >= -1`. Nothing here ever claims a false `Zero`; failure to find a decomposition
//! is reported as `Unknown`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{hirzebruch_cohomology, Vanishing, VanishingVerdict};
use crate::error::{Error, Result};
use crate::lattice::{
    chi_line_bundle, pairing, DivisorClass, PointConfig, Root, Surface, SurfaceKind, WeylWord,
};

const DEFAULT_BUDGET: usize = 200_000;
const MAX_COORD: i64 = 1 << 20;

#[derive(Clone, Debug)]
enum Family {
    /// `A` bounds the multiplicity gained per unit of degree by any curve in the set.
    Plane {
        slope: i64,
    },
    Hirzebruch,
}

#[derive(Clone, Debug)]
struct Curve {
    coords: Vec<i64>,
    self_int: i64,
}

struct Aborted;

/// Reusable search state for one surface; the memo is shared across queries.
pub struct VanishingRules {
    surface: Surface,
    family: Family,
    curves: Vec<Curve>,
    blocks: Vec<Vec<usize>>,
    weyl: bool,
    memo: HashMap<Vec<i64>, bool>,
    budget: usize,
}

fn unit(n: usize, idx: &[(usize, i64)]) -> Vec<i64> {
    let mut c = vec![0; n];
    for &(i, v) in idx {
        c[i] += v;
    }
    c
}

fn subsets(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![vec![]];
    }
    if items.len() < size {
        return vec![];
    }
    let mut out = Vec::new();
    for (pos, &first) in items.iter().enumerate() {
        for mut rest in subsets(&items[pos + 1..], size - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl VanishingRules {
    pub fn new(surface: &Surface) -> Result<Self> {
        let n = surface.picard_rank();
        let k = surface.num_points();
        let off = surface.exceptional_offset();
        let points: Vec<usize> = (off..off + k).collect();
        let mut raw: Vec<Vec<i64>> = Vec::new();
        let family;
        let mut blocks = vec![points.clone()];
        let mut weyl = false;
        match surface.kind() {
            SurfaceKind::Hirzebruch { .. } => {
                return Err(Error::Unsupported {
                    op: "vanishing_by_rules",
                    surface: surface.to_string(),
                })
            }
            SurfaceKind::BlowupHirzebruch { e, .. } => {
                family = Family::Hirzebruch;
                let e = *e as i64;
                raw.push(unit(n, &[(0, 1)]));
                raw.push(unit(n, &[(1, 1)]));
                raw.push(unit(n, &[(0, 1), (1, e)]));
                for &i in &points {
                    raw.push(unit(n, &[(i, 1)]));
                    raw.push(unit(n, &[(1, 1), (i, -1)]));
                }
            }
            SurfaceKind::BlowupP2 { .. } | SurfaceKind::DelPezzo { .. } => {
                let config = surface.point_config().expect("plane blowup");
                raw.push(unit(n, &[(0, 1)]));
                for &i in &points {
                    raw.push(unit(n, &[(i, 1)]));
                    raw.push(unit(n, &[(0, 1), (i, -1)]));
                }
                let collinear: Vec<usize> = match config {
                    PointConfig::Collinear(idx) => idx.iter().map(|i| i + off - 1).collect(),
                    _ => vec![],
                };
                let mut slope = 5;
                match config {
                    PointConfig::Explicit(_) => {
                        slope = 2;
                        blocks.clear();
                    }
                    PointConfig::General | PointConfig::Collinear(_) => {
                        let on_line =
                            |s: &[usize]| s.iter().filter(|i| collinear.contains(i)).count();
                        for pair in subsets(&points, 2) {
                            if on_line(&pair) < 2 {
                                raw.push(unit(n, &[(0, 1), (pair[0], -1), (pair[1], -1)]));
                            }
                        }
                        for size in 2..=5.min(k) {
                            for s in subsets(&points, size) {
                                if on_line(&s) <= 2 {
                                    let mut c = unit(n, &[(0, 2)]);
                                    for &i in &s {
                                        c[i] = -1;
                                    }
                                    raw.push(c);
                                }
                            }
                        }
                        if !collinear.is_empty() {
                            let mut c = unit(n, &[(0, 1)]);
                            for &i in &collinear {
                                c[i] = -1;
                            }
                            raw.push(c);
                            slope = slope.max(2 * collinear.len() as i64);
                            let rest: Vec<usize> = points
                                .iter()
                                .copied()
                                .filter(|i| !collinear.contains(i))
                                .collect();
                            blocks = vec![collinear.clone(), rest];
                        } else {
                            weyl = k >= 3;
                        }
                    }
                }
                family = Family::Plane { slope };
            }
        }
        let curves = raw
            .into_iter()
            .map(|coords| {
                let self_int = pairing(surface, &coords, &coords);
                Curve { coords, self_int }
            })
            .collect();
        Ok(Self {
            surface: surface.clone(),
            family,
            curves,
            blocks,
            weyl,
            memo: HashMap::new(),
            budget: DEFAULT_BUDGET,
        })
    }

    /// Caps the number of states expanded per query; exhausting it yields `Unknown`.
    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn surface(&self) -> &Surface {
        &self.surface
    }

    fn off(&self) -> usize {
        self.surface.exceptional_offset()
    }

    fn is_base(&self, c: &[i64]) -> bool {
        let ex = &c[self.off()..];
        let small = ex.iter().all(|&x| x == 0 || x == 1);
        let one_negative = ex.iter().filter(|&&x| x == -1).count() == 1
            && ex.iter().all(|&x| (-1..=1).contains(&x));
        match self.family {
            Family::Plane { .. } => match c[0] {
                -2 | -1 => small,
                0 => small || one_negative,
                _ => false,
            },
            Family::Hirzebruch => match (c[0], c[1]) {
                (-1, _) => small,
                (0, -1) => small,
                (0, 0) => small || one_negative,
                _ => false,
            },
        }
    }

    /// States from which no base class is reachable (see the module notes for why each
    /// quantity is monotone along removals).
    fn is_dead(&self, c: &[i64]) -> bool {
        let ex = &c[self.off()..];
        if ex.iter().any(|&x| x >= 2) {
            return true;
        }
        match self.family {
            Family::Plane { slope } => {
                let d = c[0];
                d < -2
                    || ex.iter().any(|&x| d + x < -2)
                    || slope * (d + 2) + 2 * ex.iter().sum::<i64>() < 0
            }
            Family::Hirzebruch => {
                let (a, b) = (c[0], c[1]);
                a <= -1 || (b < -1) || ex.iter().any(|&x| x < -1 - a)
            }
        }
    }

    fn canonical(&self, c: &[i64]) -> Vec<i64> {
        let mut out = c.to_vec();
        for block in &self.blocks {
            let mut vals: Vec<i64> = block.iter().map(|&i| c[i]).collect();
            vals.sort_unstable();
            for (&i, v) in block.iter().zip(vals) {
                out[i] = v;
            }
        }
        out
    }

    fn dot(&self, a: &[i64], b: &[i64]) -> i64 {
        pairing(&self.surface, a, b)
    }

    /// Candidate curves to remove from `c`, most promising first.
    fn ordered_moves(&self, c: &[i64]) -> Vec<usize> {
        let off = self.off();
        let mut keyed: Vec<((i64, i64), usize)> = Vec::new();
        for (idx, curve) in self.curves.iter().enumerate() {
            if self.dot(c, &curve.coords) < -1 {
                continue;
            }
            let cc = &curve.coords;
            let positive_part = match self.family {
                Family::Plane { .. } => cc[0],
                Family::Hirzebruch => cc[0] + cc[1],
            };
            let key = if positive_part == 0 {
                // an exceptional curve E_i
                let i = (off..cc.len())
                    .find(|&i| cc[i] == 1)
                    .expect("exceptional curve");
                if c[i] >= 1 {
                    (0, 0)
                } else {
                    (2, c[i])
                }
            } else {
                let gain: i64 = (off..cc.len()).filter(|&i| cc[i] < 0).map(|i| -c[i]).sum();
                let lead = match self.family {
                    Family::Plane { .. } => 0,
                    // removing E lowers the E-coefficient, which every base needs
                    Family::Hirzebruch => -(cc[0] * 1000),
                };
                (1, lead - 12 * gain / positive_part)
            };
            keyed.push((key, idx));
        }
        keyed.sort();
        keyed.into_iter().map(|(_, i)| i).collect()
    }

    fn reach(&mut self, c: &[i64], budget: &mut usize) -> std::result::Result<bool, Aborted> {
        if self.is_base(c) {
            return Ok(true);
        }
        if self.is_dead(c) {
            return Ok(false);
        }
        let key = self.canonical(c);
        if let Some(&r) = self.memo.get(&key) {
            return Ok(r);
        }
        if *budget == 0 {
            return Err(Aborted);
        }
        *budget -= 1;
        for idx in self.ordered_moves(&key) {
            let child: Vec<i64> = key
                .iter()
                .zip(&self.curves[idx].coords)
                .map(|(x, y)| x - y)
                .collect();
            if self.reach(&child, budget)? {
                self.memo.insert(key, true);
                return Ok(true);
            }
        }
        self.memo.insert(key, false);
        Ok(false)
    }

    fn reachable(&mut self, c: &[i64]) -> Option<bool> {
        let mut budget = self.budget;
        self.reach(c, &mut budget).ok()
    }

    /// Curves removed from `c` on the way down to a base class, in removal order.
    fn path(&mut self, c: &[i64]) -> Option<(Vec<i64>, Vec<usize>)> {
        if !self.reachable(c)? {
            return None;
        }
        let mut cur = c.to_vec();
        let mut removed = Vec::new();
        while !self.is_base(&cur) {
            let next = self.ordered_moves(&cur).into_iter().find_map(|idx| {
                let child: Vec<i64> = cur
                    .iter()
                    .zip(&self.curves[idx].coords)
                    .map(|(x, y)| x - y)
                    .collect();
                (self.reachable(&child) == Some(true)).then_some((idx, child))
            });
            let (idx, child) = next?;
            removed.push(idx);
            cur = child;
        }
        Some((cur, removed))
    }

    /// Repeated Cremona steps on the three largest multiplicities while they lower the
    /// degree; cohomology is invariant under the Weyl group at general points.
    fn cremona_reduce(&self, c: &[i64]) -> Option<(Vec<i64>, WeylWord)> {
        let k = c.len() - 1;
        let mut cur = c.to_vec();
        let mut word = WeylWord::default();
        for _ in 0..32 {
            let mut idx: Vec<usize> = (1..=k).collect();
            idx.sort_by_key(|&i| (cur[i], std::cmp::Reverse(i)));
            let (i, j, m) = (idx[0], idx[1], idx[2]);
            let t = cur[0] + cur[i] + cur[j] + cur[m];
            if t >= 0 || cur[0] + t < -2 {
                break;
            }
            let mut tri = [i, j, m];
            tri.sort_unstable();
            let root = Root::Cremona(tri[0], tri[1], tri[2]);
            root.apply_i64(&mut cur);
            word.roots.push(root);
        }
        (!word.roots.is_empty()).then_some((cur, word))
    }

    /// Fast check used by other modules: `Some(true)` when a derivation exists.
    pub(crate) fn higher_vanishes_i64(&mut self, c: &[i64]) -> bool {
        if c.iter().any(|x| x.abs() > MAX_COORD) {
            return false;
        }
        if self.reachable(c) == Some(true) {
            return true;
        }
        if self.weyl {
            if let Some((reduced, _)) = self.cremona_reduce(c) {
                return self.reachable(&reduced) == Some(true);
            }
        }
        false
    }

    fn describe(&self, c: &[i64]) -> String {
        DivisorClass::from_ints(&self.surface, c)
            .expect("length")
            .to_string()
    }

    fn derivation(&mut self, c: &[i64]) -> Option<Vec<String>> {
        let mut notes = Vec::new();
        let mut target = c.to_vec();
        let mut found = self.path(&target);
        if found.is_none() && self.weyl {
            if let Some((reduced, word)) = self.cremona_reduce(c) {
                found = self.path(&reduced);
                if found.is_some() {
                    let roots: Vec<String> = word.roots.iter().map(|r| r.to_string()).collect();
                    notes.push(format!(
                        "reflect in {} to reach {}; the Weyl group preserves cohomology at general points",
                        roots.join(", "),
                        self.describe(&reduced)
                    ));
                    target = reduced;
                }
            }
        }
        let (base, removed) = found?;
        let base_kind = if base.iter().all(|&x| x == 0) {
            "O_X has no higher cohomology"
        } else if base[..self.off()].iter().all(|&x| x == 0)
            && base[self.off()..].iter().all(|&x| x >= 0)
        {
            "a sum of exceptional curves has no higher cohomology"
        } else {
            "this class has no cohomology at all"
        };
        notes.push(format!("start from {}: {base_kind}", self.describe(&base)));
        let mut cur = base;
        for &idx in removed.iter().rev() {
            let curve = &self.curves[idx];
            let dc = self.dot(&cur, &curve.coords);
            notes.push(format!(
                "add {} (C^2 = {}): D·C = {} >= {}",
                self.describe(&curve.coords),
                curve.self_int,
                dc,
                -curve.self_int - 1
            ));
            for (x, y) in cur.iter_mut().zip(&curve.coords) {
                *x += y;
            }
        }
        debug_assert_eq!(cur, target);
        Some(notes)
    }

    /// Sound reasons for some higher cohomology to be nonzero.
    fn nonvanishing_reason(&self, d: &DivisorClass, chi: &BigInt) -> Option<String> {
        if chi.is_negative() {
            return Some(format!("chi = {chi} < 0 forces h1 > 0"));
        }
        let off = self.off();
        // a plane curve of degree n imposes at most m(m+1)/2 conditions per point of multiplicity m
        let conditions = |coords: &[BigInt]| -> BigInt {
            coords[off..]
                .iter()
                .filter(|x| x.is_negative())
                .map(|x| {
                    let m = -x;
                    &m * (&m + 1) / 2
                })
                .sum()
        };
        let sections_before_points = |coords: &[BigInt]| -> Option<BigInt> {
            match self.surface.kind() {
                SurfaceKind::BlowupHirzebruch { e, .. } => {
                    let base = DivisorClass::new(&Surface::hirzebruch(*e), coords[..2].to_vec())
                        .expect("two coordinates");
                    Some(hirzebruch_cohomology(&base).expect("Hirzebruch").h0)
                }
                _ => {
                    let n = &coords[0];
                    (!n.is_negative()).then(|| (n + 1) * (n + 2) / 2)
                }
            }
        };
        let lower_bound = |coords: &[BigInt]| -> BigInt {
            match sections_before_points(coords) {
                Some(h) => {
                    let v = h - conditions(coords);
                    if v.is_positive() {
                        v
                    } else {
                        BigInt::zero()
                    }
                }
                None => BigInt::zero(),
            }
        };
        let k_minus_d = DivisorClass::canonical(&self.surface) - d.clone();
        let h2 = lower_bound(k_minus_d.coords());
        if h2.is_positive() {
            return Some(format!(
                "K-D = {k_minus_d} is effective (h0 >= {h2} by counting conditions), so h2 > 0"
            ));
        }
        let h0 = lower_bound(d.coords());
        if &h0 > chi {
            return Some(format!(
                "h0 >= {h0} by counting conditions exceeds chi = {chi}, so h1 > 0"
            ));
        }
        None
    }

    pub fn verdict(&mut self, d: &DivisorClass) -> Result<VanishingVerdict> {
        if d.surface() != &self.surface {
            return Err(Error::SurfaceMismatch {
                left: d.surface().to_string(),
                right: self.surface.to_string(),
            });
        }
        let chi = chi_line_bundle(d);
        let mut derivation = Vec::new();
        let mut higher = Vanishing::Unknown;
        match d.to_i64_vec() {
            Ok(c) if c.iter().all(|x| x.abs() <= MAX_COORD) => {
                if let Some(steps) = self.derivation(&c) {
                    derivation = steps;
                    higher = Vanishing::Zero;
                }
            }
            _ => derivation.push("coefficients too large for the rule search".to_string()),
        }
        if higher == Vanishing::Unknown {
            if let Some(reason) = self.nonvanishing_reason(d, &chi) {
                derivation.push(reason);
                higher = Vanishing::Nonzero;
            } else {
                derivation.push("no derivation found".to_string());
            }
        }
        let all = match higher {
            Vanishing::Zero if chi.is_zero() => {
                derivation.push("chi = 0, so h0 = 0 as well".to_string());
                Vanishing::Zero
            }
            Vanishing::Zero => {
                derivation.push(format!("h0 = chi = {chi}"));
                Vanishing::Nonzero
            }
            _ if !chi.is_zero() => Vanishing::Nonzero,
            Vanishing::Nonzero => Vanishing::Nonzero,
            _ => Vanishing::Unknown,
        };
        Ok(VanishingVerdict {
            higher_cohomology: higher,
            all_cohomology: all,
            derivation,
        })
    }
}

/// Rule-based vanishing verdict on a blowup of `P^2` or of `F_e`.
pub fn vanishing_by_rules(d: &DivisorClass) -> Result<VanishingVerdict> {
    VanishingRules::new(d.surface())?.verdict(d)
}
