use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Position of the blown-up points of a blowup of the plane.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PointConfig {
    /// Points in general position.
    General,
    /// The listed points (1-based, sorted, at least three) lie on a common line;
    /// the remaining points are general.
    Collinear(Vec<usize>),
    /// Explicit projective points, coordinates read modulo the oracle prime.
    Explicit(Vec<[u64; 3]>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SurfaceKind {
    /// `F_e` with basis `(E, F)`.
    Hirzebruch { e: u32 },
    /// `Bl_k P^2` with basis `(L, E_1, ..., E_k)`.
    BlowupP2 { k: usize, config: PointConfig },
    /// `F_e` blown up at `k` general points off `E`, basis `(E, F, E_1, ..., E_k)`.
    BlowupHirzebruch { e: u32, k: usize },
    /// Del Pezzo surface of degree `9 - k`, i.e. `Bl_k P^2` at general points.
    DelPezzo { degree: u32 },
}

/// A rational surface together with its fixed, ordered Picard basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surface {
    kind: Arc<SurfaceKind>,
}

impl Surface {
    pub fn hirzebruch(e: u32) -> Self {
        Self::from_kind(SurfaceKind::Hirzebruch { e })
    }

    pub fn blowup_p2(k: usize, config: PointConfig) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidSurface("blowup of P^2 needs k >= 1".into()));
        }
        if k > 9 {
            return Err(Error::InvalidSurface(
                "at most 9 blown-up points are supported (E1..E9)".into(),
            ));
        }
        let config = match config {
            PointConfig::Collinear(mut idx) => {
                idx.sort_unstable();
                idx.dedup();
                if idx.iter().any(|&i| i == 0 || i > k) {
                    return Err(Error::InvalidSurface(format!(
                        "collinear indices must lie in 1..={k}"
                    )));
                }
                // Two points always span a line, so only three or more is a real condition.
                if idx.len() < 3 {
                    PointConfig::General
                } else {
                    PointConfig::Collinear(idx)
                }
            }
            PointConfig::Explicit(points) => {
                if points.len() != k {
                    return Err(Error::InvalidSurface(format!(
                        "expected {k} explicit points, got {}",
                        points.len()
                    )));
                }
                if points.iter().any(|p| p.iter().all(|&c| c == 0)) {
                    return Err(Error::InvalidSurface("explicit point (0,0,0)".into()));
                }
                PointConfig::Explicit(points)
            }
            PointConfig::General => PointConfig::General,
        };
        Ok(Self::from_kind(SurfaceKind::BlowupP2 { k, config }))
    }

    pub fn blowup_hirzebruch(e: u32, k: usize) -> Result<Self> {
        if e < 2 {
            return Err(Error::InvalidSurface(
                "blowups of F_0 and F_1 are blowups of P^2; use e >= 2".into(),
            ));
        }
        if k == 0 || k > 9 {
            return Err(Error::InvalidSurface(
                "blowup of F_e needs 1 <= k <= 9".into(),
            ));
        }
        Ok(Self::from_kind(SurfaceKind::BlowupHirzebruch { e, k }))
    }

    pub fn del_pezzo(degree: u32) -> Result<Self> {
        if !(4..=7).contains(&degree) {
            return Err(Error::InvalidSurface(format!(
                "del Pezzo degree must be in 4..=7, got {degree}"
            )));
        }
        Ok(Self::from_kind(SurfaceKind::DelPezzo { degree }))
    }

    fn from_kind(kind: SurfaceKind) -> Self {
        Self {
            kind: Arc::new(kind),
        }
    }

    pub fn kind(&self) -> &SurfaceKind {
        &self.kind
    }

    /// Number of blown-up points (0 for Hirzebruch surfaces).
    pub fn num_points(&self) -> usize {
        match &*self.kind {
            SurfaceKind::Hirzebruch { .. } => 0,
            SurfaceKind::BlowupP2 { k, .. } | SurfaceKind::BlowupHirzebruch { k, .. } => *k,
            SurfaceKind::DelPezzo { degree } => 9 - *degree as usize,
        }
    }

    pub fn picard_rank(&self) -> usize {
        match &*self.kind {
            SurfaceKind::Hirzebruch { .. } => 2,
            SurfaceKind::BlowupP2 { .. } | SurfaceKind::DelPezzo { .. } => self.num_points() + 1,
            SurfaceKind::BlowupHirzebruch { k, .. } => k + 2,
        }
    }

    /// `e` for `F_e` and its blowups.
    pub fn hirzebruch_e(&self) -> Option<u32> {
        match &*self.kind {
            SurfaceKind::Hirzebruch { e } | SurfaceKind::BlowupHirzebruch { e, .. } => Some(*e),
            _ => None,
        }
    }

    /// True for blowups of the plane, including del Pezzo surfaces.
    pub fn is_plane_blowup(&self) -> bool {
        matches!(
            *self.kind,
            SurfaceKind::BlowupP2 { .. } | SurfaceKind::DelPezzo { .. }
        )
    }

    pub fn is_del_pezzo(&self) -> bool {
        matches!(*self.kind, SurfaceKind::DelPezzo { .. })
    }

    /// Point configuration of a plane blowup; del Pezzo surfaces are general.
    pub fn point_config(&self) -> Option<&PointConfig> {
        const GENERAL: PointConfig = PointConfig::General;
        match &*self.kind {
            SurfaceKind::BlowupP2 { config, .. } => Some(config),
            SurfaceKind::DelPezzo { .. } => Some(&GENERAL),
            _ => None,
        }
    }

    /// Index of `E_1` in the coordinate vector.
    pub fn exceptional_offset(&self) -> usize {
        match &*self.kind {
            SurfaceKind::Hirzebruch { .. } => 2,
            SurfaceKind::BlowupP2 { .. } | SurfaceKind::DelPezzo { .. } => 1,
            SurfaceKind::BlowupHirzebruch { .. } => 2,
        }
    }

    /// Basis symbols in coordinate order.
    pub fn basis_symbols(&self) -> Vec<String> {
        let k = self.num_points();
        let mut out = match &*self.kind {
            SurfaceKind::Hirzebruch { .. } | SurfaceKind::BlowupHirzebruch { .. } => {
                vec!["E".to_string(), "F".to_string()]
            }
            _ => vec!["L".to_string()],
        };
        out.extend((1..=k).map(|i| format!("E{i}")));
        out
    }

    /// Entry `(i, j)` of the Gram matrix of the intersection form.
    pub fn form_entry(&self, i: usize, j: usize) -> i64 {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        match &*self.kind {
            SurfaceKind::Hirzebruch { e } | SurfaceKind::BlowupHirzebruch { e, .. } => {
                match (i, j) {
                    (0, 0) => -(*e as i64),
                    (0, 1) => 1,
                    (1, 1) => 0,
                    (a, b) if a == b => -1,
                    _ => 0,
                }
            }
            SurfaceKind::BlowupP2 { .. } | SurfaceKind::DelPezzo { .. } => match (i, j) {
                (0, 0) => 1,
                (a, b) if a == b => -1,
                _ => 0,
            },
        }
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.kind {
            SurfaceKind::Hirzebruch { e } => write!(f, "F{e}"),
            SurfaceKind::BlowupP2 { k, config } => {
                write!(f, "blp2:k={k}")?;
                match config {
                    PointConfig::General => Ok(()),
                    PointConfig::Collinear(idx) => {
                        let list: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
                        write!(f, ":collinear={}", list.join(","))
                    }
                    PointConfig::Explicit(points) => {
                        let list: Vec<String> = points
                            .iter()
                            .map(|p| format!("{},{},{}", p[0], p[1], p[2]))
                            .collect();
                        write!(f, ":points={}", list.join(";"))
                    }
                }
            }
            SurfaceKind::BlowupHirzebruch { e, k } => write!(f, "blF{e}:k={k}"),
            SurfaceKind::DelPezzo { degree } => write!(f, "dp{degree}"),
        }
    }
}

fn parse_err(input: &str, expected: &str) -> Error {
    Error::Parse {
        input: input.to_string(),
        expected: expected.to_string(),
    }
}

fn parse_num<T: FromStr>(input: &str, digits: &str, what: &str) -> Result<T> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_err(input, what));
    }
    digits.parse().map_err(|_| parse_err(input, what))
}

impl FromStr for Surface {
    type Err = Error;

    /// Accepts `F<e>`, `blp2:k=<k>[:collinear=<i,j,...>][:points=<x,y,z;...>]`,
    /// `blF<e>:k=<k>` and `dp<degree>`.
    fn from_str(input: &str) -> Result<Self> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(rest) = s.strip_prefix("dp") {
            return Surface::del_pezzo(parse_num(input, rest, "dp<degree>")?);
        }
        if let Some(rest) = s.strip_prefix("blF") {
            let (e, k) = rest
                .split_once(":k=")
                .ok_or_else(|| parse_err(input, "blF<e>:k=<k>"))?;
            return Surface::blowup_hirzebruch(
                parse_num(input, e, "blF<e>:k=<k>")?,
                parse_num(input, k, "blF<e>:k=<k>")?,
            );
        }
        if let Some(rest) = s.strip_prefix("blp2:") {
            let mut parts = rest.split(':');
            let k = parts
                .next()
                .and_then(|p| p.strip_prefix("k="))
                .ok_or_else(|| parse_err(input, "blp2:k=<k>"))?;
            let k: usize = parse_num(input, k, "blp2:k=<k>")?;
            let mut config = PointConfig::General;
            for part in parts {
                if let Some(list) = part.strip_prefix("collinear=") {
                    let idx = list
                        .split(',')
                        .map(|t| parse_num(input, t, "collinear=<i,j,...>"))
                        .collect::<Result<Vec<usize>>>()?;
                    config = PointConfig::Collinear(idx);
                } else if let Some(list) = part.strip_prefix("points=") {
                    let points = list
                        .split(';')
                        .map(|p| {
                            let c = p
                                .split(',')
                                .map(|t| parse_num(input, t, "points=<x,y,z;...>"))
                                .collect::<Result<Vec<u64>>>()?;
                            <[u64; 3]>::try_from(c)
                                .map_err(|_| parse_err(input, "points=<x,y,z;...>"))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    config = PointConfig::Explicit(points);
                } else {
                    return Err(parse_err(
                        input,
                        ":collinear=<i,j,...> or :points=<x,y,z;...>",
                    ));
                }
            }
            return Surface::blowup_p2(k, config);
        }
        if let Some(rest) = s.strip_prefix('F') {
            return Ok(Surface::hirzebruch(parse_num(input, rest, "F<e>")?));
        }
        Err(parse_err(
            input,
            "one of F<e>, blp2:k=<k>[:collinear=...], blF<e>:k=<k>, dp<degree>",
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_strings_round_trip() {
        for s in [
            "F0",
            "F3",
            "blp2:k=2",
            "blp2:k=4:collinear=1,2,3,4",
            "blp2:k=2:points=1,0,1;0,1,1",
            "blF2:k=1",
            "dp4",
            "dp7",
        ] {
            let surface: Surface = s.parse().unwrap();
            assert_eq!(surface.to_string(), s);
        }
    }

    #[test]
    fn picard_ranks() {
        assert_eq!(Surface::hirzebruch(1).picard_rank(), 2);
        assert_eq!("blp2:k=3".parse::<Surface>().unwrap().picard_rank(), 4);
        assert_eq!("blF2:k=3".parse::<Surface>().unwrap().picard_rank(), 5);
        assert_eq!("dp4".parse::<Surface>().unwrap().picard_rank(), 6);
    }

    #[test]
    fn rejects_bad_input() {
        assert!("dp3".parse::<Surface>().is_err());
        assert!("dp8".parse::<Surface>().is_err());
        assert!("blF1:k=2".parse::<Surface>().is_err());
        assert!("blp2:k=0".parse::<Surface>().is_err());
        assert!("blp2:k=3:collinear=1,4".parse::<Surface>().is_err());
        assert!("P2".parse::<Surface>().is_err());
    }

    #[test]
    fn two_collinear_points_are_general() {
        let s: Surface = "blp2:k=3:collinear=1,2".parse().unwrap();
        assert_eq!(s.point_config(), Some(&PointConfig::General));
    }
}
