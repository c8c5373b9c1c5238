//! Circle spectral oracle: eta invariants of the twisted Dirac operator on
//! the circle, computed by Hurwitz-zeta regularization, and relative eta
//! invariants compared against the algebraic pairing.
//!
//! Spectrum convention: the operator twisted by the flat line bundle with
//! holonomy angle `theta` (in full turns) has spectrum `{ n - theta : n in
//! Z }`.  With this convention `rho(V_theta, V_0) = theta` on the nose; the
//! opposite convention would produce `-theta` mod 1.  The sign is a
//! convention, not mathematics, and everything downstream is normalized to
//! this choice.

use crate::error::{Error, Result};
use crate::numeric::{certify_rational, frac};
use crate::pairing::{delta_via_extension, pairing_value, ExtensionClass};
use crate::qz::QZValue;
use num_traits::ToPrimitive;

/// A flat line bundle on the circle, given by its holonomy angle in
/// `[0, 1)` (units of full turns); `theta = 0` is the trivial bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatLineBundle {
    theta: QZValue,
}

impl FlatLineBundle {
    pub fn new(theta: QZValue) -> Self {
        Self { theta }
    }

    pub fn from_fraction(num: i64, den: i64) -> Self {
        Self {
            theta: QZValue::from_i64(num, den),
        }
    }

    pub fn trivial() -> Self {
        Self {
            theta: QZValue::zero(),
        }
    }

    pub fn theta(&self) -> &QZValue {
        &self.theta
    }
}

/// Result of an eta computation.
#[derive(Clone, Debug, PartialEq)]
pub struct EtaResult {
    pub eta: f64,
    pub kernel_dim: usize,
    /// `(eta + kernel_dim) / 2`.
    pub reduced_xi: f64,
}

/// Hurwitz zeta `zeta(s, a) = sum_{k >= 0} (k + a)^{-s}` continued to
/// `s <= 0.5`, by Euler-Maclaurin with 50 head terms and the Bernoulli
/// tail through `B_8`.  At `s = 0` this reproduces the closed form
/// `1/2 - a` to machine precision.
pub fn hurwitz_zeta(s: f64, a: f64) -> Result<f64> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::OutOfRange(format!(
            "hurwitz zeta parameter a must lie in (0, 1], got {a}"
        )));
    }
    if s >= 1.0 {
        return Err(Error::OutOfRange(format!(
            "this evaluation targets s <= 0.5 (pole at s = 1), got {s}"
        )));
    }
    const N: usize = 50;
    // B_{2j} / (2j)! for j = 1..4
    const BERNOULLI_TERMS: [f64; 4] =
        [1.0 / 12.0, -1.0 / 720.0, 1.0 / 30_240.0, -1.0 / 1_209_600.0];
    let mut head = 0.0;
    for k in 0..N {
        head += (a + k as f64).powf(-s);
    }
    let x = a + N as f64;
    let mut total = head + x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s);
    // rising factorial s (s+1) ... (s + 2j - 2)
    let mut poch = s;
    let mut shift = s;
    for (j, b) in BERNOULLI_TERMS.iter().enumerate() {
        if j > 0 {
            shift += 1.0;
            poch *= shift;
            shift += 1.0;
            poch *= shift;
        }
        total += b * poch * x.powf(-s - 2.0 * j as f64 - 1.0);
    }
    Ok(total)
}

/// Eta invariant of the circle operator twisted by `v`, with the kernel
/// dimension (1 exactly for the trivial bundle, 0 otherwise).
pub fn eta_circle(v: &FlatLineBundle) -> Result<EtaResult> {
    if v.theta.is_zero() {
        // symmetric integer spectrum with a single zero mode
        return Ok(EtaResult {
            eta: 0.0,
            kernel_dim: 1,
            reduced_xi: 0.5,
        });
    }
    let t = v.theta.to_f64();
    // positive part { n - theta : n >= 1 }, negative part { -(k + theta) }
    let eta = hurwitz_zeta(0.0, 1.0 - t)? - hurwitz_zeta(0.0, t)?;
    let closed_form = 2.0 * t - 1.0;
    let diff = (eta - closed_form).abs();
    if diff > 1e-8 {
        return Err(Error::Residual {
            residual: diff,
            tolerance: 1e-8,
        });
    }
    Ok(EtaResult {
        eta,
        kernel_dim: 0,
        reduced_xi: eta / 2.0,
    })
}

/// A relative eta value: numeric, reduced mod 1, and rationally certified.
#[derive(Clone, Debug)]
pub struct RhoResult {
    /// The raw real value before reduction.
    pub raw: f64,
    /// Reduced into `[0, 1)`.
    pub reduced: f64,
    /// Certified rational value.
    pub value: QZValue,
    pub residual: f64,
}

/// Relative eta invariant
/// `rho(V, W) = (eta_V - eta_W)/2 - (dim ker V - dim ker W)/2` mod 1.
/// The result is certified rational with denominator at most
/// `denominator_cap` (default: the lcm of the two holonomy denominators).
pub fn rho_relative(
    v: &FlatLineBundle,
    w: &FlatLineBundle,
    denominator_cap: Option<u64>,
) -> Result<RhoResult> {
    let ev = eta_circle(v)?;
    let ew = eta_circle(w)?;
    let raw = 0.5 * (ev.eta - ew.eta) - 0.5 * (ev.kernel_dim as f64 - ew.kernel_dim as f64);
    let reduced = frac(raw);
    let cap = match denominator_cap {
        Some(c) => c,
        None => {
            let dv = v.theta.denominator();
            let dw = w.theta.denominator();
            let l = num_integer::lcm(dv.clone(), dw.clone());
            l.to_u64().ok_or_else(|| {
                Error::OutOfRange("holonomy denominators too large to certify".into())
            })?
        }
    };
    let (value, residual) = certify_rational(reduced, cap, 1e-6)?;
    Ok(RhoResult {
        raw,
        reduced,
        value,
        residual,
    })
}

/// Does the spectral value `rho(V_{1/d}, V_0)` agree with the extension
/// pairing of the multiplication-by-d class evaluated at the generator?
pub fn pairing_crosscheck(d: u64) -> Result<bool> {
    if d < 2 {
        return Err(Error::OutOfRange(format!("need d >= 2, got {d}")));
    }
    let rho = rho_relative(
        &FlatLineBundle::from_fraction(1, d as i64),
        &FlatLineBundle::trivial(),
        Some(d),
    )?;
    let x = ExtensionClass::mult_by_d(d)?;
    let delta = delta_via_extension(&x)?;
    let gen = delta.source().generator(0);
    let pairing = pairing_value(&delta, &gen)?;
    Ok(rho.value == pairing)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_closed_form_at_zero() {
        // zeta(0, a) = 1/2 - a
        for (a, expect) in [(0.5, 0.0), (1.0, -0.5), (1.0 / 3.0, 1.0 / 6.0)] {
            let z = hurwitz_zeta(0.0, a).unwrap();
            assert!(
                (z - expect).abs() < 1e-10,
                "zeta(0, {a}) = {z}, want {expect}"
            );
        }
        assert!(hurwitz_zeta(0.0, 0.0).is_err());
        assert!(hurwitz_zeta(0.0, 1.5).is_err());
        assert!(hurwitz_zeta(1.0, 0.5).is_err());
    }

    #[test]
    fn zeta_matches_series_at_negative_arguments() {
        // independent checks against the Bernoulli-polynomial closed forms:
        // zeta(-n, a) = -B_{n+1}(a) / (n+1)
        for a in [0.25, 0.5, 0.75, 1.0] {
            let z = hurwitz_zeta(-1.0, a).unwrap();
            let closed = -0.5 * (a * a - a + 1.0 / 6.0);
            assert!((z - closed).abs() < 1e-10);

            let z = hurwitz_zeta(-2.0, a).unwrap();
            let b3 = a * a * a - 1.5 * a * a + 0.5 * a;
            assert!((z + b3 / 3.0).abs() < 1e-9);

            let z = hurwitz_zeta(-3.0, a).unwrap();
            let b4 = a * a * a * a - 2.0 * a * a * a + a * a - 1.0 / 30.0;
            assert!((z + b4 / 4.0).abs() < 1e-9);
        }
    }

    #[test]
    fn eta_examples() {
        let r = eta_circle(&FlatLineBundle::trivial()).unwrap();
        assert_eq!(r.kernel_dim, 1);
        assert_eq!(r.eta, 0.0);
        assert_eq!(r.reduced_xi, 0.5);

        let r = eta_circle(&FlatLineBundle::from_fraction(1, 2)).unwrap();
        assert_eq!(r.kernel_dim, 0);
        assert!(r.eta.abs() < 1e-10);

        let r = eta_circle(&FlatLineBundle::from_fraction(1, 3)).unwrap();
        assert!((r.eta + 1.0 / 3.0).abs() < 1e-8);
    }

    #[test]
    fn eta_matches_closed_form_through_denominator_48() {
        for d in 2..=48i64 {
            for k in 1..d {
                let r = eta_circle(&FlatLineBundle::from_fraction(k, d)).unwrap();
                let expect = 2.0 * (k as f64 / d as f64) - 1.0;
                assert!(
                    (r.eta - expect).abs() < 1e-8,
                    "eta mismatch at {k}/{d}: {} vs {expect}",
                    r.eta
                );
                assert_eq!(r.kernel_dim, 0);
            }
        }
    }

    #[test]
    fn rho_reproduces_holonomy() {
        for d in 2..=12i64 {
            let rho = rho_relative(
                &FlatLineBundle::from_fraction(1, d),
                &FlatLineBundle::trivial(),
                None,
            )
            .unwrap();
            assert_eq!(rho.value, QZValue::from_i64(1, d), "rho(V_1/{d}, V_0)");
        }
        let same = FlatLineBundle::from_fraction(3, 7);
        let rho = rho_relative(&same, &same, None).unwrap();
        assert!(rho.value.is_zero());
    }

    #[test]
    fn rho_telescopes() {
        let bundles = [
            FlatLineBundle::trivial(),
            FlatLineBundle::from_fraction(1, 3),
            FlatLineBundle::from_fraction(2, 5),
            FlatLineBundle::from_fraction(7, 12),
        ];
        for u in &bundles {
            for v in &bundles {
                for w in &bundles {
                    let uw = rho_relative(u, w, Some(60)).unwrap().reduced;
                    let uv = rho_relative(u, v, Some(60)).unwrap().reduced;
                    let vw = rho_relative(v, w, Some(60)).unwrap().reduced;
                    assert!(
                        crate::numeric::mod1_distance(uw, uv + vw) < 1e-8,
                        "telescoping fails"
                    );
                }
            }
        }
    }

    #[test]
    fn crosscheck_against_extension_pairing() {
        for d in [2, 3, 7, 12] {
            assert!(
                pairing_crosscheck(d).unwrap(),
                "crosscheck failed at d = {d}"
            );
        }
        assert!(pairing_crosscheck(1).is_err());
    }
}
