//! Brute-force `h^0` on blowups of the plane: the nullity of the fat-point interpolation
//! matrix over a prime field, at sampled points.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::CohomologyVector;
use crate::error::{Error, Result};
use crate::lattice::{chi_line_bundle, DivisorClass, PointConfig, SurfaceKind};

/// Field size and sampling parameters of the interpolation oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub prime: u64,
    pub seed: u64,
    pub trials: u32,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            prime: 1_000_003,
            seed: 0,
            trials: 3,
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

impl OracleConfig {
    fn validate(&self, degree: i64) -> Result<()> {
        let reject = |reason: &str| {
            Err(Error::Modulus {
                modulus: self.prime,
                reason: reason.to_string(),
            })
        };
        if self.prime >= 1 << 32 {
            return reject("must be below 2^32");
        }
        if (self.prime as i64) <= degree.max(1000) {
            return reject("must exceed max(degree, 1000)");
        }
        if !is_prime(self.prime) {
            return reject("not prime");
        }
        if self.trials == 0 {
            return Err(Error::Hypothesis("oracle needs at least one trial".into()));
        }
        Ok(())
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Rank of a dense matrix over `F_p` by Gaussian elimination.
fn rank_mod(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = pow_mod(rows[rank][col], p - 2, p);
        for x in rows[rank][col..].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let f = row[col];
            for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = (*x + p - f * y % p) % p;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn binomials(n: usize, p: u64) -> Vec<Vec<u64>> {
    let mut t = vec![vec![0u64; n + 1]; n + 1];
    for i in 0..=n {
        t[i][0] = 1;
        for j in 1..=i {
            t[i][j] = (t[i - 1][j - 1] + if j < i { t[i - 1][j] } else { 0 }) % p;
        }
    }
    t
}

/// Rows of the conditions "all partial derivatives of order < m vanish at `point`" on the
/// degree-`d` monomials, computed as Taylor coefficients in an affine chart at the point.
fn point_conditions(
    point: [u64; 3],
    m: usize,
    monomials: &[[usize; 3]],
    binom: &[Vec<u64>],
    p: u64,
) -> Vec<Vec<u64>> {
    let chart = (0..3).find(|&i| point[i] != 0).expect("nonzero point");
    let scale = pow_mod(point[chart], p - 2, p);
    let pt: Vec<u64> = point.iter().map(|&x| x * scale % p).collect();
    let others: Vec<usize> = (0..3).filter(|&i| i != chart).collect();
    let (u, v) = (others[0], others[1]);
    let mut rows = Vec::new();
    for s in 0..m {
        for t in 0..m - s {
            let row = monomials
                .iter()
                .map(|mono| {
                    let (eu, ev) = (mono[u], mono[v]);
                    if eu < s || ev < t {
                        return 0;
                    }
                    binom[eu][s] * pow_mod(pt[u], (eu - s) as u64, p) % p * binom[ev][t] % p
                        * pow_mod(pt[v], (ev - t) as u64, p)
                        % p
                })
                .collect();
            rows.push(row);
        }
    }
    rows
}

fn sample_points(config: &PointConfig, k: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<[u64; 3]> {
    let random_affine = |taken: &[[u64; 3]], rng: &mut ChaCha8Rng| loop {
        let q = [rng.gen_range(0..p), rng.gen_range(0..p), 1];
        if !taken.contains(&q) {
            return q;
        }
    };
    let mut points: Vec<[u64; 3]> = Vec::with_capacity(k);
    match config {
        PointConfig::General | PointConfig::Explicit(_) => {
            for _ in 0..k {
                let q = random_affine(&points, rng);
                points.push(q);
            }
        }
        PointConfig::Collinear(idx) => {
            let a = random_affine(&[], rng);
            let b = random_affine(&[a], rng);
            let mut slots = vec![None; k];
            let mut used_t: Vec<u64> = Vec::new();
            for &i in idx {
                let t = loop {
                    let t = rng.gen_range(0..p);
                    if !used_t.contains(&t) {
                        break t;
                    }
                };
                used_t.push(t);
                // a + t (b - a), still affine since both have z = 1
                let x = (a[0] + t * ((b[0] + p - a[0]) % p)) % p;
                let y = (a[1] + t * ((b[1] + p - a[1]) % p)) % p;
                slots[i - 1] = Some([x, y, 1]);
            }
            for slot in slots.iter_mut() {
                if slot.is_none() {
                    let taken: Vec<[u64; 3]> = points.to_vec();
                    let q = random_affine(&taken, rng);
                    *slot = Some(q);
                }
                points.push(slot.expect("filled"));
            }
        }
    }
    points
}

fn explicit_points(points: &[[u64; 3]], p: u64) -> Result<Vec<[u64; 3]>> {
    let reduced: Vec<[u64; 3]> = points.iter().map(|q| q.map(|x| x % p)).collect();
    for (i, q) in reduced.iter().enumerate() {
        if q.iter().all(|&x| x == 0) {
            return Err(Error::InvalidSurface(format!(
                "explicit point {} vanishes modulo {p}",
                i + 1
            )));
        }
        for r in &reduced[..i] {
            // proportional iff all 2x2 minors vanish
            let minor = |a: usize, b: usize| (q[a] * r[b] % p + p - q[b] * r[a] % p) % p;
            if minor(0, 1) == 0 && minor(0, 2) == 0 && minor(1, 2) == 0 {
                return Err(Error::InvalidSurface(format!(
                    "explicit points coincide modulo {p}"
                )));
            }
        }
    }
    Ok(reduced)
}

fn plane_blowup_data(d: &DivisorClass) -> Result<(PointConfig, usize)> {
    match d.surface().kind() {
        SurfaceKind::BlowupP2 { k, config } => Ok((config.clone(), *k)),
        SurfaceKind::DelPezzo { .. } => Ok((PointConfig::General, d.surface().num_points())),
        _ => Err(Error::Unsupported {
            op: "interpolation oracle",
            surface: d.surface().to_string(),
        }),
    }
}

/// Minimum over `trials` point samples of the dimension of degree-`d` plane curves with the
/// prescribed multiplicities `max(0, D·E_i)`.
pub fn interpolation_h0(d: &DivisorClass, cfg: &OracleConfig) -> Result<BigInt> {
    let (config, k) = plane_blowup_data(d)?;
    let degree = d.coords()[0]
        .to_i64()
        .ok_or_else(|| Error::Overflow(d.coords()[0].clone()))?;
    cfg.validate(degree)?;
    if degree < 0 {
        return Ok(BigInt::from(0));
    }
    let degree = degree as usize;
    let mults: Vec<usize> = (1..=k)
        .map(|i| {
            let m = d.exceptional_degree(i);
            m.to_usize().unwrap_or(0).min(degree + 1)
        })
        .collect();
    let p = cfg.prime;
    let mut monomials = Vec::new();
    for i in (0..=degree).rev() {
        for j in (0..=degree - i).rev() {
            monomials.push([i, j, degree - i - j]);
        }
    }
    let binom = binomials(degree, p);
    let trials = if matches!(config, PointConfig::Explicit(_)) {
        1
    } else {
        cfg.trials
    };
    let mut best = usize::MAX;
    for trial in 0..trials {
        let points = match &config {
            PointConfig::Explicit(pts) => explicit_points(pts, p)?,
            other => {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(trial as u64));
                sample_points(other, k, p, &mut rng)
            }
        };
        let mut rows = Vec::new();
        for (q, &m) in points.iter().zip(&mults) {
            rows.extend(point_conditions(*q, m, &monomials, &binom, p));
        }
        let rank = if rows.is_empty() {
            0
        } else {
            rank_mod(rows, p)
        };
        best = best.min(monomials.len() - rank);
    }
    Ok(BigInt::from(best))
}

/// `h^0` by interpolation, `h^2 = h^0(K - D)` by a second interpolation, `h^1` from `chi`.
pub fn blowup_cohomology_oracle(d: &DivisorClass, cfg: &OracleConfig) -> Result<CohomologyVector> {
    let h0 = interpolation_h0(d, cfg)?;
    let dual = DivisorClass::canonical(d.surface()) - d.clone();
    let h2 = interpolation_h0(&dual, cfg)?;
    let v = CohomologyVector::from_h0_h2(h0, h2, &chi_line_bundle(d));
    assert!(
        v.h1 >= BigInt::from(0),
        "oracle produced negative h1 for {d}"
    );
    Ok(v)
}
