//! Divisor expressions: terms joined by `+`/`-`, each an optional positive integer
//! coefficient followed by a basis symbol (`L`, `E`, `F`, `E1`..`E9`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::surface::Surface;
use crate::error::{Error, Result};

const GRAMMAR: &str = "terms like `3L-2E1-E2` or `2E+3F` over the surface's basis symbols";

fn symbol_index(surface: &Surface, symbol: &str) -> Option<usize> {
    surface.basis_symbols().iter().position(|s| s == symbol)
}

pub(crate) fn parse(surface: &Surface, input: &str) -> Result<Vec<BigInt>> {
    let err = |expected: String| Error::Parse {
        input: input.to_string(),
        expected,
    };
    let s: Vec<u8> = input.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
    let mut coords = vec![BigInt::zero(); surface.picard_rank()];
    if s.is_empty() {
        return Err(err(GRAMMAR.into()));
    }
    if s == b"0" {
        return Ok(coords);
    }
    let mut pos = 0;
    let mut first = true;
    while pos < s.len() {
        let negative = match s[pos] {
            b'+' => {
                pos += 1;
                false
            }
            b'-' => {
                pos += 1;
                true
            }
            _ if first => false,
            _ => return Err(err("`+` or `-` between terms".into())),
        };
        first = false;
        let start = pos;
        while pos < s.len() && s[pos].is_ascii_digit() {
            pos += 1;
        }
        let coeff = if start == pos {
            BigInt::one()
        } else {
            std::str::from_utf8(&s[start..pos])
                .ok()
                .and_then(|t| t.parse::<BigInt>().ok())
                .ok_or_else(|| err("an integer coefficient".into()))?
        };
        let sym_start = pos;
        if pos < s.len() && s[pos].is_ascii_alphabetic() {
            pos += 1;
            while pos < s.len() && s[pos].is_ascii_digit() {
                pos += 1;
            }
        }
        let symbol = std::str::from_utf8(&s[sym_start..pos]).unwrap_or("");
        if symbol.is_empty() {
            return Err(err(format!(
                "a basis symbol, one of {}",
                surface.basis_symbols().join(", ")
            )));
        }
        let idx = symbol_index(surface, symbol).ok_or_else(|| {
            err(format!(
                "a basis symbol, one of {} (got `{symbol}`)",
                surface.basis_symbols().join(", ")
            ))
        })?;
        if negative {
            coords[idx] -= coeff;
        } else {
            coords[idx] += coeff;
        }
    }
    Ok(coords)
}

fn push_term(out: &mut String, coeff_abs: String, negative: bool, symbol: &str) {
    if negative {
        out.push('-');
    } else if !out.is_empty() {
        out.push('+');
    }
    if coeff_abs != "1" {
        out.push_str(&coeff_abs);
    }
    out.push_str(symbol);
}

pub(crate) fn format(surface: &Surface, coords: &[BigInt]) -> String {
    let mut out = String::new();
    for (c, sym) in coords.iter().zip(surface.basis_symbols()) {
        if !c.is_zero() {
            push_term(&mut out, c.abs().to_string(), c.is_negative(), &sym);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Rational coefficients print as `p/q` with the symbol after, e.g. `-E-1/2F`.
pub(crate) fn format_rational(surface: &Surface, coords: &[BigRational]) -> String {
    let mut out = String::new();
    for (c, sym) in coords.iter().zip(surface.basis_symbols()) {
        if !c.is_zero() {
            push_term(&mut out, c.abs().to_string(), c.is_negative(), &sym);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn parses_examples() {
        let bl: Surface = "blp2:k=3".parse().unwrap();
        assert_eq!(parse(&bl, "3L-2E1-E2").unwrap(), ints(&[3, -2, -1, 0]));
        assert_eq!(parse(&bl, " -L + E3 ").unwrap(), ints(&[-1, 0, 0, 1]));
        assert_eq!(parse(&bl, "L+L-E1+E1").unwrap(), ints(&[2, 0, 0, 0]));
        assert_eq!(parse(&bl, "0").unwrap(), ints(&[0, 0, 0, 0]));
        let f2 = Surface::hirzebruch(2);
        assert_eq!(parse(&f2, "2E+3F").unwrap(), ints(&[2, 3]));
        let blf: Surface = "blF2:k=1".parse().unwrap();
        assert_eq!(parse(&blf, "-E+5F+E1").unwrap(), ints(&[-1, 5, 1]));
    }

    #[test]
    fn rejects_foreign_symbols() {
        let bl: Surface = "blp2:k=2".parse().unwrap();
        assert!(parse(&bl, "E3").is_err());
        assert!(parse(&bl, "H").is_err());
        assert!(parse(&bl, "E").is_err());
        assert!(parse(&bl, "2L E1").is_err());
        assert!(parse(&bl, "3").is_err());
        assert!(parse(&bl, "").is_err());
        assert!(parse(&Surface::hirzebruch(1), "L").is_err());
    }

    #[test]
    fn formats_round_trip() {
        let bl: Surface = "blp2:k=5".parse().unwrap();
        for e in ["4L-2E1-2E2-2E3-2E4-2E5", "-L+E1+E2", "0", "E5", "-E1"] {
            assert_eq!(format(&bl, &parse(&bl, e).unwrap()), e);
        }
    }
}
