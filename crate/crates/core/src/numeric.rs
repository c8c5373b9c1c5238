//! Small numeric helpers shared by the spectral and determinant oracles.

use crate::error::{Error, Result};
use crate::qz::QZValue;
use num_bigint::BigInt;

/// Distance between two points of R/Z (both taken mod 1).
pub fn mod1_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

/// Reduce into `[0, 1)`.
pub fn frac(x: f64) -> f64 {
    let r = x.rem_euclid(1.0);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// Certify a real number (mod 1) as a rational with denominator at most
/// `max_denominator`, requiring the match to be within `tolerance`.
///
/// Pairing values in this crate are a priori rational with known small
/// denominators, so a direct scan over denominators is exact and cheap.
pub fn certify_rational(x: f64, max_denominator: u64, tolerance: f64) -> Result<(QZValue, f64)> {
    if max_denominator == 0 {
        return Err(Error::OutOfRange("denominator cap must be positive".into()));
    }
    let x = frac(x);
    let mut best: Option<(u64, u64, f64)> = None;
    for q in 1..=max_denominator {
        let p = (x * q as f64).round() as i64;
        let p = p.rem_euclid(q as i64) as u64;
        let err = mod1_distance(x, p as f64 / q as f64);
        match best {
            Some((_, _, e)) if e <= err => {}
            _ => best = Some((p, q, err)),
        }
    }
    let (p, q, err) = best.expect("at least one denominator scanned");
    if err > tolerance {
        return Err(Error::Residual {
            residual: err,
            tolerance,
        });
    }
    Ok((QZValue::new(BigInt::from(p), BigInt::from(q))?, err))
}
