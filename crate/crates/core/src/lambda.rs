//! The generator calculus for mod-n coefficient morphisms: cyclic group
//! tables for the morphism groups between dimension-drop coefficients,
//! compatible families of torsion maps over the divisibility poset, and the
//! bijection between such families and Q/Z characters of the torsion
//! subgroup.

use crate::error::{Error, Result};
use crate::functors::tor_zn;
use crate::group::{torsion_subgroup, FgGroup, GroupHom};
use crate::matrix::IntMatrix;
use crate::qz::{QZHom, QZValue};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Action of the canonical generator on the underlying cyclic K-group:
/// a map `Z/source -> Z/target` (modulus 0 encodes Z) sending `[1]` to
/// `[image_of_one]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorAction {
    pub source_modulus: u64,
    pub target_modulus: u64,
    pub image_of_one: u64,
}

impl GeneratorAction {
    /// Additive order of this map inside the Hom group; `None` = infinite.
    pub fn order(&self) -> Option<u64> {
        if self.image_of_one == 0 {
            return Some(1);
        }
        match self.target_modulus {
            0 => None,
            m => Some(m / gcd_u64(self.image_of_one, m)),
        }
    }
}

impl fmt::Display for GeneratorAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |m: u64| match m {
            0 => "Z".to_string(),
            1 => "0".to_string(),
            m => format!("Z/{m}"),
        };
        write!(
            f,
            "{} -> {}, [1] |-> [{}]",
            side(self.source_modulus),
            side(self.target_modulus),
            self.image_of_one
        )
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// One entry of the coefficient-morphism table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KKGroupDescriptor {
    pub n: u64,
    pub m: u64,
    pub degree: u8,
    pub group: FgGroup,
    pub generator_action: GeneratorAction,
}

/// The morphism group between coefficient levels `n` and `m` in the given
/// degree, with its canonical generator's action on the cyclic K-group.
///
/// For `n, m >= 2` both degrees give `Z/gcd(n, m)`; the boundary levels
/// involving the trivial coefficient (index 1) are `Z/m`, `Z`, or `0`
/// depending on degree, with generators acting as recorded.
pub fn kk_group(n: u64, m: u64, degree: u8) -> Result<KKGroupDescriptor> {
    if n < 1 || m < 1 {
        return Err(Error::OutOfRange(format!(
            "coefficient indices must be >= 1, got ({n}, {m})"
        )));
    }
    let degree = degree % 2;
    let (group, generator_action) = match (n, m, degree) {
        (1, 1, 0) => (
            FgGroup::free(1),
            GeneratorAction {
                source_modulus: 0,
                target_modulus: 0,
                image_of_one: 1,
            },
        ),
        (1, m, 0) if m >= 2 => (
            // generated by the inclusion of the suspended matrix algebra:
            // the quotient map Z -> Z/m on the K-groups
            FgGroup::cyclic(m),
            GeneratorAction {
                source_modulus: 0,
                target_modulus: m,
                image_of_one: 1,
            },
        ),
        (n, 1, 1) if n >= 2 => (
            // generated by the evaluation map; an isomorphism on the
            // mod-n K-group of the test algebra
            FgGroup::cyclic(n),
            GeneratorAction {
                source_modulus: n,
                target_modulus: n,
                image_of_one: 1,
            },
        ),
        (n, m, 0) if n >= 2 && m >= 2 => {
            let g = gcd_u64(n, m);
            (
                FgGroup::cyclic(g),
                GeneratorAction {
                    source_modulus: n,
                    target_modulus: m,
                    image_of_one: (m / g) % m.max(1),
                },
            )
        }
        (n, m, 1) if n >= 2 && m >= 2 => {
            let g = gcd_u64(n, m);
            (
                FgGroup::cyclic(g),
                GeneratorAction {
                    source_modulus: g,
                    target_modulus: m,
                    image_of_one: (m / g) % m.max(1),
                },
            )
        }
        // (m, 1, 0), (1, m, 1), (1, 1, 1): the zero group
        (n, m, _) => (
            FgGroup::trivial(),
            GeneratorAction {
                source_modulus: if degree == 0 { n } else { 1 },
                target_modulus: if degree == 0 { 1 } else { m },
                image_of_one: 0,
            },
        ),
    };
    Ok(KKGroupDescriptor {
        n,
        m,
        degree,
        group,
        generator_action,
    })
}

/// A compatible tuple of maps `psi_m : Tor(Z/m, K1) -> Z/m` over the
/// divisibility poset, truncated at `bound`.
///
/// Stages are stored as raw value tables (one residue mod `m` per torsion
/// generator) so that corrupted data can be represented and then rejected
/// by the compatibility checker; the accessor [`LambdaFamily::psi`] turns a
/// table into an honest homomorphism when it is one.  Only divisors of the
/// torsion exponent are stored; every other stage is forced by the
/// compatibility squares (`psi_m` factors through the stage at
/// `gcd(m, exponent)` scaled by `m / gcd`), so those are reconstructed on
/// demand.
pub struct LambdaFamily {
    k1: FgGroup,
    bound: u64,
    psi: BTreeMap<u64, Vec<BigInt>>,
}

/// Diagnostic for the first failing compatibility check.  `square` 1 and 2
/// are the two commuting squares; 0 flags a stage that is not even a
/// homomorphism (or cannot be reconstructed).
#[derive(Clone, Debug)]
pub struct CompatibilityFailure {
    pub m: u64,
    pub n: u64,
    pub square: u8,
    pub generator: usize,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for CompatibilityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.square == 0 {
            return write!(f, "stage {} is invalid: {}", self.m, self.lhs);
        }
        write!(
            f,
            "square {} fails at (m, n) = ({}, {}) on generator {}: {} vs {}",
            self.square, self.m, self.n, self.generator, self.lhs, self.rhs
        )
    }
}

#[derive(Clone, Debug)]
pub struct CompatibilityReport {
    pub ok: bool,
    pub first_failure: Option<CompatibilityFailure>,
}

fn exponent_u64(g: &FgGroup) -> Result<u64> {
    g.exponent()
        .to_u64()
        .ok_or_else(|| Error::OutOfRange("torsion exponent exceeds u64".into()))
}

impl LambdaFamily {
    pub fn k1(&self) -> &FgGroup {
        &self.k1
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn stored_stages(&self) -> impl Iterator<Item = u64> + '_ {
        self.psi.keys().copied()
    }

    /// Build the family induced by a character of the torsion subgroup.
    /// Returns the family and a lossiness flag: when `bound` is not a
    /// multiple of the torsion exponent the family cannot reconstruct the
    /// character.
    pub fn from_delta(k1: &FgGroup, delta: &QZHom, bound: u64) -> Result<(Self, bool)> {
        if bound < 2 {
            return Err(Error::OutOfRange(format!(
                "bound must be >= 2, got {bound}"
            )));
        }
        let (tk1, tk1_incl) = torsion_subgroup(k1);
        if delta.source() != &tk1 {
            return Err(Error::Shape(format!(
                "character must live on the torsion subgroup {tk1}, got {}",
                delta.source()
            )));
        }
        let e = exponent_u64(k1)?;
        let mut psi = BTreeMap::new();
        for m in 2..=bound.min(e) {
            if e % m != 0 {
                continue;
            }
            psi.insert(m, stage_values_from_delta(k1, delta, &tk1_incl, m)?);
        }
        let lossy = e >= 2 && !bound.is_multiple_of(e);
        Ok((
            Self {
                k1: k1.clone(),
                bound,
                psi,
            },
            lossy,
        ))
    }

    /// Assemble a family from explicitly given stage tables; lengths are
    /// validated here, homomorphism-ness and the compatibility squares are
    /// the checker's job.
    pub fn from_parts(k1: &FgGroup, bound: u64, psi: BTreeMap<u64, Vec<BigInt>>) -> Result<Self> {
        if bound < 2 {
            return Err(Error::OutOfRange(format!(
                "bound must be >= 2, got {bound}"
            )));
        }
        for (&m, values) in &psi {
            if !(2..=bound).contains(&m) {
                return Err(Error::OutOfRange(format!(
                    "stage {m} outside the family range 2..={bound}"
                )));
            }
            let (tor, _) = tor_zn(&BigInt::from(m), k1)?;
            if values.len() != tor.len() {
                return Err(Error::Shape(format!(
                    "stage {m} needs {} values (one per generator of {tor}), got {}",
                    tor.len(),
                    values.len()
                )));
            }
        }
        Ok(Self {
            k1: k1.clone(),
            bound,
            psi,
        })
    }

    /// Raw value table of the stage at `m`, reconstructing non-stored
    /// stages through the compatibility squares.
    fn raw_stage(&self, m: u64) -> Result<Vec<BigInt>> {
        if let Some(values) = self.psi.get(&m) {
            return Ok(values.clone());
        }
        let e = exponent_u64(&self.k1)?;
        let d = gcd_u64(m, e);
        if d == 1 {
            // coprime stage: the torsion group is trivial
            return Ok(Vec::new());
        }
        let base = self.psi.get(&d).ok_or(Error::MissingStage(d))?;
        // Tor(Z/m, K1) and Tor(Z/d, K1) coincide as subgroups, generator by
        // generator, since gcd(m, d_i) = gcd(d, d_i) for every factor d_i.
        let scale = BigInt::from(m / d);
        Ok(base.iter().map(|v| v * &scale).collect())
    }

    /// The stage at `m` as an honest homomorphism `Tor(Z/m, K1) -> Z/m`.
    pub fn psi(&self, m: u64) -> Result<GroupHom> {
        let values = self.raw_stage(m)?;
        let (tor, _) = tor_zn(&BigInt::from(m), &self.k1)?;
        let zm = FgGroup::cyclic(m);
        let mat = IntMatrix::from_fn(zm.len(), tor.len(), |_, j| values[j].clone());
        GroupHom::new(tor, zm, mat)
    }

    /// Linear extension of a raw stage table to an arbitrary element of the
    /// m-torsion subgroup.
    fn eval_raw(values: &[BigInt], coords: &[BigInt], m: u64) -> BigInt {
        let acc: BigInt = values.iter().zip(coords).map(|(v, c)| v * c).sum();
        acc.mod_floor(&BigInt::from(m))
    }

    /// Check both compatibility squares for all pairs `m, n >= 2` with
    /// `m * n <= bound`, then check that every stored stage is a genuine
    /// homomorphism; reports the first failure.
    pub fn check_compatibility(&self) -> CompatibilityReport {
        for m in 2..=self.bound {
            for n in 2..=self.bound {
                let mn = match m.checked_mul(n) {
                    Some(v) if v <= self.bound => v,
                    _ => continue,
                };
                if let Some(failure) = self.check_squares(m, n, mn) {
                    return CompatibilityReport {
                        ok: false,
                        first_failure: Some(failure),
                    };
                }
            }
        }
        // order compatibility of each stored stage (a corrupted table can
        // fail to be a homomorphism at all)
        for &m in self.psi.keys() {
            if let Err(e) = self.psi(m) {
                return CompatibilityReport {
                    ok: false,
                    first_failure: Some(CompatibilityFailure {
                        m,
                        n: 0,
                        square: 0,
                        generator: 0,
                        lhs: e.to_string(),
                        rhs: String::new(),
                    }),
                };
            }
        }
        CompatibilityReport {
            ok: true,
            first_failure: None,
        }
    }

    fn check_squares(&self, m: u64, n: u64, mn: u64) -> Option<CompatibilityFailure> {
        let invalid = |stage: u64, e: &Error| CompatibilityFailure {
            m: stage,
            n: 0,
            square: 0,
            generator: 0,
            lhs: e.to_string(),
            rhs: String::new(),
        };
        let psi_m = match self.raw_stage(m) {
            Ok(v) => v,
            Err(e) => return Some(invalid(m, &e)),
        };
        let psi_n = match self.raw_stage(n) {
            Ok(v) => v,
            Err(e) => return Some(invalid(n, &e)),
        };
        let psi_mn = match self.raw_stage(mn) {
            Ok(v) => v,
            Err(e) => return Some(invalid(mn, &e)),
        };
        let big = BigInt::from;
        let (tor_m, incl_m) = tor_zn(&big(m), &self.k1).ok()?;
        let (_, incl_n) = tor_zn(&big(n), &self.k1).ok()?;
        let (tor_mn, incl_mn) = tor_zn(&big(mn), &self.k1).ok()?;

        // square 1: psi_mn(include(g)) = [n * psi_m(g)] in Z/mn
        for i in 0..tor_m.len() {
            let g = tor_m.generator(i);
            let in_k1 = incl_m.apply(&g).ok()?;
            let g_up = incl_mn
                .preimage(&in_k1)
                .ok()?
                .expect("m-torsion includes into mn-torsion");
            let lhs = Self::eval_raw(&psi_mn, g_up.coords(), mn);
            let rhs = (Self::eval_raw(&psi_m, g.coords(), m) * big(n)).mod_floor(&big(mn));
            if lhs != rhs {
                return Some(CompatibilityFailure {
                    m,
                    n,
                    square: 1,
                    generator: i,
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                });
            }
        }

        // square 2: psi_n(m * g) = [psi_mn(g) mod n] for g in Tor(Z/mn, K1)
        for i in 0..tor_mn.len() {
            let g = tor_mn.generator(i);
            let scaled = incl_mn.apply(&g).ok()?.scale(&big(m));
            let g_down = incl_n
                .preimage(&scaled)
                .ok()?
                .expect("m times mn-torsion is n-torsion");
            let lhs = Self::eval_raw(&psi_n, g_down.coords(), n);
            let rhs = Self::eval_raw(&psi_mn, g.coords(), mn).mod_floor(&big(n));
            if lhs != rhs {
                return Some(CompatibilityFailure {
                    m,
                    n,
                    square: 2,
                    generator: i,
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                });
            }
        }
        None
    }

    /// Reassemble the character from the exponent stage.  Requires a
    /// compatible family whose bound reaches the exponent.
    pub fn delta(&self) -> Result<QZHom> {
        let (tk1, _) = torsion_subgroup(&self.k1);
        let e = exponent_u64(&self.k1)?;
        if e == 1 {
            return QZHom::zero(tk1);
        }
        if self.bound < e {
            return Err(Error::OutOfRange(format!(
                "family bound {} is below the torsion exponent {e}",
                self.bound
            )));
        }
        let report = self.check_compatibility();
        if let Some(failure) = report.first_failure {
            return Err(Error::IncompatibleFamily(failure.to_string()));
        }
        let psi_e = self.psi(e)?;
        // Tor(Z/e, K1) is the whole torsion subgroup, with matching
        // generator order, so values transfer coordinate-wise
        let mut values = Vec::with_capacity(tk1.len());
        for i in 0..tk1.len() {
            let g = psi_e.source().generator(i);
            let k = psi_e.apply(&g)?.coords()[0].clone();
            values.push(QZValue::new(k, BigInt::from(e))?);
        }
        QZHom::new(tk1, values)
    }
}

fn stage_values_from_delta(
    k1: &FgGroup,
    delta: &QZHom,
    tk1_incl: &GroupHom,
    m: u64,
) -> Result<Vec<BigInt>> {
    let big_m = BigInt::from(m);
    let (tor, incl) = tor_zn(&big_m, k1)?;
    let mut values = Vec::with_capacity(tor.len());
    for i in 0..tor.len() {
        let in_k1 = incl.apply(&tor.generator(i))?;
        let t = tk1_incl
            .preimage(&in_k1)?
            .expect("torsion elements live in the torsion subgroup");
        let v = delta.evaluate(&t)?;
        // v has order dividing m, so v = [a/b] with b | m and the unique
        // class in Z/m with value v is a * (m/b)
        let b = v.denominator();
        debug_assert!((&big_m % b).is_zero());
        values.push(v.numerator() * (&big_m / b));
    }
    Ok(values)
}
