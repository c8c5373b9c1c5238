//! Coefficient bookkeeping: given the pair (K_0, K_1) of an algebra as
//! abstract groups, build the mod-n and Q/Z coefficient groups together
//! with their change-of-coefficient exact sequences.
//!
//! The mod-n group is represented by an explicit (unnatural) splitting
//! `(K_deg (x) Z/n) (+) Tor(Z/n, K_other)`; consumers may rely only on the
//! maps `rho`, `beta` and exactness, never on the splitting itself, and the
//! re-splitting tests in the pairing module enforce that.

use crate::error::{Error, Result};
use crate::functors::tor_zn;
use crate::group::{direct_sum, torsion_subgroup, FgGroup, GroupElement, GroupHom};
use crate::matrix::IntMatrix;
use crate::qz::QZValue;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

/// `fg_part (+) Q^q_rank (+) (Q/Z)^qz_rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtGroup {
    pub fg_part: FgGroup,
    pub q_rank: usize,
    pub qz_rank: usize,
}

impl ExtGroup {
    pub fn is_trivial(&self) -> bool {
        self.fg_part.is_trivial() && self.q_rank == 0 && self.qz_rank == 0
    }
}

impl std::fmt::Display for ExtGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if !self.fg_part.is_trivial() {
            parts.push(self.fg_part.to_string());
        }
        match self.q_rank {
            0 => {}
            1 => parts.push("Q".into()),
            r => parts.push(format!("Q^{r}")),
        }
        match self.qz_rank {
            0 => {}
            1 => parts.push("Q/Z".into()),
            r => parts.push(format!("(Q/Z)^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" (+) "))
        }
    }
}

/// An element of the divisible-plus-torsion part of an [`ExtGroup`]; the
/// rational summand never carries elements in this artifact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtElement {
    pub qz: Vec<QZValue>,
    pub fg: GroupElement,
}

impl ExtElement {
    pub fn add(&self, other: &Self) -> Self {
        Self {
            qz: self
                .qz
                .iter()
                .zip(&other.qz)
                .map(|(a, b)| a.add(b))
                .collect(),
            fg: self.fg.add(&other.fg),
        }
    }
}

/// The ordered pair of K-groups of an algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KTheoryPair {
    pub k0: FgGroup,
    pub k1: FgGroup,
}

impl KTheoryPair {
    pub fn new(k0: FgGroup, k1: FgGroup) -> Self {
        Self { k0, k1 }
    }

    pub fn degree(&self, degree: u8) -> &FgGroup {
        if degree.is_multiple_of(2) {
            &self.k0
        } else {
            &self.k1
        }
    }
}

/// `G (x) Z/n` with the reduction map `G -> G (x) Z/n`.
pub fn tensor_zn(g: &FgGroup, n: &BigInt) -> Result<(FgGroup, GroupHom)> {
    if n < &BigInt::from(2) {
        return Err(Error::OutOfRange(format!(
            "tensor index must be >= 2, got {n}"
        )));
    }
    let mut factors = Vec::new();
    let mut source_coord = Vec::new();
    for (i, d) in g.invariant_factors().iter().enumerate() {
        let gi = d.gcd(n);
        if gi.is_one() {
            continue;
        }
        factors.push(gi);
        source_coord.push(g.free_rank() + i);
    }
    for j in 0..g.free_rank() {
        factors.push(n.clone());
        source_coord.push(j);
    }
    let tensor = FgGroup::new(0, factors)?;
    let mut m = IntMatrix::zeros(tensor.len(), g.len());
    for (row, &col) in source_coord.iter().enumerate() {
        m[(row, col)] = BigInt::one();
    }
    let reduction = GroupHom::new(g.clone(), tensor.clone(), m)?;
    Ok((tensor, reduction))
}

/// The mod-n coefficient group of a K-theory pair in one degree, with the
/// exact sequence `K_deg --rho--> group --beta--> Tor(Z/n, K_other) -> 0`.
pub struct ZnCoefficients {
    pub level: BigInt,
    pub group: FgGroup,
    pub rho: GroupHom,
    pub beta: GroupHom,
    pub tor_group: FgGroup,
    /// Inclusion of `tor_group` into `K_{degree+1}`.
    pub tor_inclusion: GroupHom,
    pub tensor_group: FgGroup,
    pub tensor_inclusion: GroupHom,
    pub tensor_projection: GroupHom,
    pub tor_summand_inclusion: GroupHom,
}

pub fn k_coeff_zn(k: &KTheoryPair, n: &BigInt, degree: u8) -> Result<ZnCoefficients> {
    let k_deg = k.degree(degree);
    let k_other = k.degree(degree + 1);
    let (tensor, reduction) = tensor_zn(k_deg, n)?;
    let (tor_group, tor_inclusion) = tor_zn(n, k_other)?;
    let ds = direct_sum(&tensor, &tor_group);
    let rho = reduction.then(&ds.left_inclusion)?;
    let beta = ds.right_projection.clone();
    Ok(ZnCoefficients {
        level: n.clone(),
        group: ds.group,
        rho,
        beta,
        tor_group,
        tor_inclusion,
        tensor_group: tensor,
        tensor_inclusion: ds.left_inclusion,
        tensor_projection: ds.left_projection,
        tor_summand_inclusion: ds.right_inclusion,
    })
}

/// The Q/Z coefficient group in one degree:
/// `(Q/Z)^{free rank of K_deg} (+) t K_{degree+1}`, with the quotient onto
/// the torsion subgroup and the inclusion of the divisible summand.
pub struct QzCoefficients {
    pub group: ExtGroup,
    pub torsion_group: FgGroup,
    /// Inclusion of the torsion group into `K_{degree+1}`.
    pub torsion_inclusion: GroupHom,
}

impl QzCoefficients {
    /// The quotient map onto the torsion subgroup of `K_{degree+1}`.
    pub fn project_torsion(&self, e: &ExtElement) -> Result<GroupElement> {
        if e.fg.group() != &self.group.fg_part || e.qz.len() != self.group.qz_rank {
            return Err(Error::NotInGroup(format!(
                "expected an element of {}",
                self.group
            )));
        }
        Ok(e.fg.clone())
    }

    /// Inclusion of the divisible summand.
    pub fn include_divisible(&self, qz: Vec<QZValue>) -> Result<ExtElement> {
        if qz.len() != self.group.qz_rank {
            return Err(Error::Shape(format!(
                "divisible summand has rank {}, got {} coordinates",
                self.group.qz_rank,
                qz.len()
            )));
        }
        Ok(ExtElement {
            qz,
            fg: self.group.fg_part.zero(),
        })
    }

    /// The chosen (unnatural) splitting of the quotient map.
    pub fn include_torsion(&self, t: GroupElement) -> Result<ExtElement> {
        if t.group() != &self.group.fg_part {
            return Err(Error::NotInGroup(format!(
                "expected an element of {}",
                self.group.fg_part
            )));
        }
        Ok(ExtElement {
            qz: vec![QZValue::zero(); self.group.qz_rank],
            fg: t,
        })
    }
}

pub fn k_coeff_qz(k: &KTheoryPair, degree: u8) -> Result<QzCoefficients> {
    let k_deg = k.degree(degree);
    let k_other = k.degree(degree + 1);
    let (torsion_group, torsion_inclusion) = torsion_subgroup(k_other);
    Ok(QzCoefficients {
        group: ExtGroup {
            fg_part: torsion_group.clone(),
            q_rank: 0,
            qz_rank: k_deg.free_rank(),
        },
        torsion_group,
        torsion_inclusion,
    })
}

/// The map between coefficient levels `n -> mn`: multiplication by `m` on
/// the tensor summand and the canonical inclusion on the Tor summand.
pub fn kappa_up(k: &KTheoryPair, n: &BigInt, m: &BigInt, degree: u8) -> Result<GroupHom> {
    let lo = k_coeff_zn(k, n, degree)?;
    let hi = k_coeff_zn(k, &(n * m), degree)?;
    let tensor_map = level_map_on_tensor(k, degree, &lo, &hi, m)?;
    let tor_map = tor_canonical_inclusion(&lo, &hi)?;
    let via_tensor = lo
        .tensor_projection
        .then(&tensor_map)?
        .then(&hi.tensor_inclusion)?;
    let via_tor = lo.beta.then(&tor_map)?.then(&hi.tor_summand_inclusion)?;
    via_tensor.add(&via_tor)
}

/// The map between coefficient levels `mn -> n`: the canonical surjection
/// on the tensor summand and multiplication by `m` on the Tor summand.
pub fn kappa_down(k: &KTheoryPair, n: &BigInt, m: &BigInt, degree: u8) -> Result<GroupHom> {
    let lo = k_coeff_zn(k, n, degree)?;
    let hi = k_coeff_zn(k, &(n * m), degree)?;
    let tensor_map = level_map_on_tensor(k, degree, &hi, &lo, &BigInt::one())?;
    let tor_map = tor_multiplication(&hi, &lo, m)?;
    let via_tensor = hi
        .tensor_projection
        .then(&tensor_map)?
        .then(&lo.tensor_inclusion)?;
    let via_tor = hi.beta.then(&tor_map)?.then(&lo.tor_summand_inclusion)?;
    via_tensor.add(&via_tor)
}

/// `K_deg (x) Z/a -> K_deg (x) Z/b` sending `x (x) [1]` to `x (x) [scale]`,
/// assembled coordinate-by-coordinate through the reduction maps.
fn level_map_on_tensor(
    k: &KTheoryPair,
    degree: u8,
    from: &ZnCoefficients,
    to: &ZnCoefficients,
    scale: &BigInt,
) -> Result<GroupHom> {
    let k_deg = k.degree(degree);
    // Each tensor generator is the reduction of a K_deg generator; find one
    // preimage per generator and push it through the other reduction.
    let (_, red_from) = tensor_zn(k_deg, &from.level)?;
    let (_, red_to) = tensor_zn(k_deg, &to.level)?;
    let mut cols = Vec::new();
    for i in 0..from.tensor_group.len() {
        let gen = from.tensor_group.generator(i);
        let pre = red_from
            .preimage(&gen)?
            .expect("reduction maps are surjective");
        let image = red_to.apply(&pre)?.scale(scale);
        cols.push(image.coords().to_vec());
    }
    let m = IntMatrix::from_fn(to.tensor_group.len(), cols.len(), |r, c| cols[c][r].clone());
    GroupHom::new(from.tensor_group.clone(), to.tensor_group.clone(), m)
}

/// Canonical inclusion `Tor(Z/n, K) -> Tor(Z/mn, K)` as subgroups of `K`.
fn tor_canonical_inclusion(from: &ZnCoefficients, to: &ZnCoefficients) -> Result<GroupHom> {
    let mut cols = Vec::new();
    for i in 0..from.tor_group.len() {
        let x = from.tor_inclusion.apply(&from.tor_group.generator(i))?;
        let pre = to
            .tor_inclusion
            .preimage(&x)?
            .ok_or_else(|| Error::Shape("n-torsion must sit inside mn-torsion".into()))?;
        cols.push(pre.coords().to_vec());
    }
    let m = IntMatrix::from_fn(to.tor_group.len(), cols.len(), |r, c| cols[c][r].clone());
    GroupHom::new(from.tor_group.clone(), to.tor_group.clone(), m)
}

/// Multiplication by `m` as a map `Tor(Z/mn, K) -> Tor(Z/n, K)`.
fn tor_multiplication(from: &ZnCoefficients, to: &ZnCoefficients, m: &BigInt) -> Result<GroupHom> {
    let mut cols = Vec::new();
    for i in 0..from.tor_group.len() {
        let x = from.tor_inclusion.apply(&from.tor_group.generator(i))?;
        let scaled = x.scale(m);
        let pre = to
            .tor_inclusion
            .preimage(&scaled)?
            .ok_or_else(|| Error::Shape("m times mn-torsion must be n-torsion".into()))?;
        cols.push(pre.coords().to_vec());
    }
    let mat = IntMatrix::from_fn(to.tor_group.len(), cols.len(), |r, c| cols[c][r].clone());
    GroupHom::new(from.tor_group.clone(), to.tor_group.clone(), mat)
}
