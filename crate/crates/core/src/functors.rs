//! Hom, Ext, Tor, rational tensor, Pontryagin duals, and direct limits over
//! the divisibility poset.
//!
//! All of these are computed in closed form from the invariant factors; the
//! tests re-derive the small cases by brute-force enumeration.

use crate::coeff::ExtGroup;
use crate::error::{Error, Result};
use crate::group::{FgGroup, GroupElement, GroupHom};
use crate::matrix::IntMatrix;
use crate::qz::{QZHom, QZValue};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Target of a hom-group computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomTarget {
    /// `Z/n` for `n >= 2`.
    Cyclic(BigInt),
    /// Q/Z.
    QZ,
}

/// Value of evaluating a hom-group element at a source element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomValue {
    Qz(QZValue),
    Cyclic(GroupElement),
}

enum Characters {
    Qz(Vec<QZHom>),
    Cyclic(Vec<GroupHom>),
}

/// `Hom(G, Z/n)` or `Hom(G, Q/Z)` as an abstract group together with a
/// bilinear evaluation map.
pub struct HomGroup {
    pub group: FgGroup,
    source: FgGroup,
    characters: Characters,
}

impl HomGroup {
    /// The character corresponding to the `i`-th generator of `self.group`,
    /// as a map out of the source.
    pub fn character_qz(&self, i: usize) -> Option<&QZHom> {
        match &self.characters {
            Characters::Qz(v) => v.get(i),
            Characters::Cyclic(_) => None,
        }
    }

    pub fn character_cyclic(&self, i: usize) -> Option<&GroupHom> {
        match &self.characters {
            Characters::Cyclic(v) => v.get(i),
            Characters::Qz(_) => None,
        }
    }

    /// Evaluate the hom `h` (an element of `self.group`) at `x` (an element
    /// of the source); bilinear in both arguments.
    pub fn evaluate(&self, h: &GroupElement, x: &GroupElement) -> Result<HomValue> {
        if h.group() != &self.group {
            return Err(Error::NotInGroup(format!(
                "hom coordinates live in {}, got an element of {}",
                self.group,
                h.group()
            )));
        }
        if x.group() != &self.source {
            return Err(Error::NotInGroup(format!(
                "source is {}, got an element of {}",
                self.source,
                x.group()
            )));
        }
        match &self.characters {
            Characters::Qz(chars) => {
                let mut acc = QZValue::zero();
                for (c, chi) in h.coords().iter().zip(chars) {
                    acc = acc.add(&chi.evaluate(x)?.scale(c));
                }
                Ok(HomValue::Qz(acc))
            }
            Characters::Cyclic(chars) => {
                let mut acc = chars
                    .first()
                    .map(|c| c.target().zero())
                    .unwrap_or_else(|| FgGroup::trivial().zero());
                for (c, chi) in h.coords().iter().zip(chars) {
                    acc = acc.add(&chi.apply(x)?.scale(c));
                }
                Ok(HomValue::Cyclic(acc))
            }
        }
    }
}

/// `Hom(G, target)` with its evaluation pairing.
///
/// `Hom((+) Z/d_i, Q/Z) = (+) Z/d_i` with generator `i` the character
/// `g_i -> [1/d_i]`; `Hom(G, Z/n)` picks up `Z/gcd(d_i, n)` per torsion
/// factor and `Z/n` per free generator.
pub fn hom_group(g: &FgGroup, target: HomTarget) -> Result<HomGroup> {
    match target {
        HomTarget::QZ => {
            if !g.is_finite() {
                return Err(Error::InfiniteGroup(format!(
                    "Hom(-, Q/Z) is only stored for finite groups, got {g}"
                )));
            }
            let group = g.clone();
            let mut chars = Vec::new();
            for (i, d) in g.invariant_factors().iter().enumerate() {
                let mut values = vec![QZValue::zero(); g.len()];
                values[i] = QZValue::new(BigInt::one(), d.clone())?;
                chars.push(QZHom::new(g.clone(), values)?);
            }
            Ok(HomGroup {
                group,
                source: g.clone(),
                characters: Characters::Qz(chars),
            })
        }
        HomTarget::Cyclic(n) => {
            if n < BigInt::from(2) {
                return Err(Error::OutOfRange(format!(
                    "cyclic target needs n >= 2, got {n}"
                )));
            }
            let zn = FgGroup::new(0, vec![n.clone()])?;
            let mut factors = Vec::new();
            let mut chars: Vec<GroupHom> = Vec::new();
            for (i, d) in g.invariant_factors().iter().enumerate() {
                let gi = d.gcd(&n);
                if gi.is_one() {
                    continue;
                }
                let mut m = IntMatrix::zeros(1, g.len());
                m[(0, g.free_rank() + i)] = &n / &gi;
                factors.push(gi);
                chars.push(GroupHom::new(g.clone(), zn.clone(), m)?);
            }
            for j in 0..g.free_rank() {
                let mut m = IntMatrix::zeros(1, g.len());
                m[(0, j)] = BigInt::one();
                factors.push(n.clone());
                chars.push(GroupHom::new(g.clone(), zn.clone(), m)?);
            }
            Ok(HomGroup {
                group: FgGroup::new(0, factors)?,
                source: g.clone(),
                characters: Characters::Cyclic(chars),
            })
        }
    }
}

/// The n-torsion subgroup `Tor(Z/n, G) = { g : n g = 0 }` with its
/// inclusion into `G`.
pub fn tor_zn(n: &BigInt, g: &FgGroup) -> Result<(FgGroup, GroupHom)> {
    if n < &BigInt::one() {
        return Err(Error::OutOfRange(format!(
            "torsion index must be >= 1, got {n}"
        )));
    }
    let mut factors = Vec::new();
    let mut cols = Vec::new();
    for (i, d) in g.invariant_factors().iter().enumerate() {
        let gi = d.gcd(n);
        if gi.is_one() {
            continue;
        }
        let mut col = vec![BigInt::zero(); g.len()];
        col[g.free_rank() + i] = d / &gi;
        factors.push(gi);
        cols.push(col);
    }
    let t = FgGroup::new(0, factors)?;
    let m = IntMatrix::from_fn(g.len(), cols.len(), |i, j| cols[j][i].clone());
    let inclusion = GroupHom::new(t.clone(), g.clone(), m)?;
    Ok((t, inclusion))
}

/// `Ext(G, Z)`, computed through the resolution `0 -> Z -> Q -> Q/Z -> 0`:
/// the free part contributes nothing and the torsion part survives whole.
pub fn ext_z(g: &FgGroup) -> FgGroup {
    FgGroup::new(0, g.invariant_factors().to_vec()).expect("torsion factors form a chain")
}

/// `G (x) Q`: the torsion dies and each free generator becomes a copy of Q.
pub fn tensor_q(g: &FgGroup) -> ExtGroup {
    ExtGroup {
        fg_part: FgGroup::trivial(),
        q_rank: g.free_rank(),
        qz_rank: 0,
    }
}

/// Pontryagin dual of a finite group with its evaluation pairing.
pub struct DualPairing {
    pub dual: FgGroup,
    group: FgGroup,
}

impl DualPairing {
    /// `<g, chi> = sum_i g_i chi_i / d_i` in Q/Z.
    pub fn evaluate(&self, g: &GroupElement, chi: &GroupElement) -> Result<QZValue> {
        if g.group() != &self.group {
            return Err(Error::NotInGroup(format!(
                "expected element of {}",
                self.group
            )));
        }
        if chi.group() != &self.dual {
            return Err(Error::NotInGroup(format!(
                "expected character in {}",
                self.dual
            )));
        }
        let mut acc = QZValue::zero();
        for (i, d) in self.group.invariant_factors().iter().enumerate() {
            let prod = &g.coords()[i] * &chi.coords()[i];
            acc = acc.add(&QZValue::new(prod, d.clone())?);
        }
        Ok(acc)
    }
}

pub fn pontryagin_dual(g: &FgGroup) -> Result<(FgGroup, DualPairing)> {
    if !g.is_finite() {
        return Err(Error::InfiniteGroup(format!(
            "Pontryagin duality here is for finite groups, got {g}"
        )));
    }
    let dual = g.clone();
    Ok((
        dual.clone(),
        DualPairing {
            dual,
            group: g.clone(),
        },
    ))
}

/// A diagram of groups over the divisors of a bound, ordered by
/// divisibility, with one bonding map per comparable pair.
pub struct DirectedFamily {
    bound: u64,
    groups: BTreeMap<u64, FgGroup>,
    bonds: BTreeMap<(u64, u64), GroupHom>,
}

pub fn divisors_at_least_two(n: u64) -> Vec<u64> {
    (2..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

impl DirectedFamily {
    /// Materialize the family on the divisors of `bound`.
    pub fn generate(
        bound: u64,
        group_at: impl Fn(u64) -> FgGroup,
        bond_at: impl Fn(u64, u64) -> GroupHom,
    ) -> Result<Self> {
        if bound < 2 {
            return Err(Error::OutOfRange(format!(
                "bound must be >= 2, got {bound}"
            )));
        }
        let indices = divisors_at_least_two(bound);
        let groups: BTreeMap<u64, FgGroup> = indices.iter().map(|&n| (n, group_at(n))).collect();
        let mut bonds = BTreeMap::new();
        for &n in &indices {
            for &m in &indices {
                if n < m && m % n == 0 {
                    bonds.insert((n, m), bond_at(n, m));
                }
            }
        }
        let fam = Self {
            bound,
            groups,
            bonds,
        };
        fam.validate()?;
        Ok(fam)
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn group(&self, n: u64) -> Option<&FgGroup> {
        self.groups.get(&n)
    }

    /// Bonding map `n -> m`; the identity when `n = m`.
    pub fn bond(&self, n: u64, m: u64) -> Result<GroupHom> {
        if n == m {
            return self
                .groups
                .get(&n)
                .map(GroupHom::identity)
                .ok_or(Error::MissingStage(n));
        }
        self.bonds
            .get(&(n, m))
            .cloned()
            .ok_or(Error::MissingStage(m))
    }

    /// Endpoint and transitivity checks; reports the first failing triple.
    fn validate(&self) -> Result<()> {
        for (&(n, m), h) in &self.bonds {
            if Some(h.source()) != self.groups.get(&n) || Some(h.target()) != self.groups.get(&m) {
                return Err(Error::Input(format!(
                    "bond {n} -> {m} does not match the stored groups"
                )));
            }
        }
        let indices: Vec<u64> = self.groups.keys().copied().collect();
        for &n in &indices {
            for &m in &indices {
                if !(n < m && m % n == 0) {
                    continue;
                }
                for &k in &indices {
                    if !(m < k && k % m == 0) {
                        continue;
                    }
                    let direct = self.bond(n, k)?;
                    let composed = self.bond(n, m)?.then(&self.bond(m, k)?)?;
                    if direct != composed {
                        return Err(Error::InconsistentBonding { n, m, k });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Direct limit truncated at the cofinal stage `bound` (which is the lcm of
/// its own divisors): the colimit group is the stage at `bound` and the
/// structure maps are the bonds into it.
pub fn direct_limit(
    family: &DirectedFamily,
    bound: u64,
) -> Result<(FgGroup, BTreeMap<u64, GroupHom>)> {
    if bound < 2 || !family.bound.is_multiple_of(bound) {
        return Err(Error::OutOfRange(format!(
            "bound {bound} must divide the family's bound {}",
            family.bound
        )));
    }
    family.validate()?;
    let colimit = family
        .group(bound)
        .cloned()
        .ok_or(Error::MissingStage(bound))?;
    let mut structure = BTreeMap::new();
    for n in divisors_at_least_two(bound) {
        structure.insert(n, family.bond(n, bound)?);
    }
    Ok((colimit, structure))
}
