//! The Q/Z-valued torsion pairing, computed in two independent pictures.
//!
//! Extension picture: a class is a short exact sequence `0 -> Z -> E -> K1
//! -> 0`.  Any splitting of the inclusion over Q (torsion generators of `E`
//! are forced to 0, free generators solve a rational linear system) induces
//! a well-defined character of the torsion subgroup of `K1`; any two
//! rational splittings differ by a map that factors through `K1` into Q and
//! therefore kills torsion.
//!
//! Q/Z-coefficient picture: a class is an additive map out of the group
//! `(Q/Z)^r (+) tK1` that kills the divisible summand; pulling torsion
//! elements back through the quotient map and applying the class gives the
//! same character, independent of the chosen lift.

use crate::coeff::{ExtElement, QzCoefficients};
use crate::error::{Error, Result};
use crate::group::{
    direct_sum, present_with_section, torsion_subgroup, FgGroup, GroupElement, GroupHom,
};
use crate::matrix::{self, IntMatrix};
use crate::qz::{QZHom, QZValue};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A short exact sequence `0 -> Z --iota--> E --pi--> K1 -> 0`.
#[derive(Clone, Debug)]
pub struct ExtensionClass {
    e_group: FgGroup,
    iota: GroupHom,
    pi: GroupHom,
}

impl ExtensionClass {
    pub fn new(e_group: FgGroup, iota: GroupHom, pi: GroupHom) -> Result<Self> {
        if iota.source() != &FgGroup::free(1) {
            return Err(Error::InvalidExtension(format!(
                "iota must start at Z, got {}",
                iota.source()
            )));
        }
        if iota.target() != &e_group || pi.source() != &e_group {
            return Err(Error::InvalidExtension(
                "iota must land in E and pi must start there".into(),
            ));
        }
        let (ker_iota, _) = iota.kernel();
        if !ker_iota.is_trivial() {
            return Err(Error::InvalidExtension("iota is not injective".into()));
        }
        let (coker_pi, _) = pi.cokernel();
        if !coker_pi.is_trivial() {
            return Err(Error::InvalidExtension("pi is not surjective".into()));
        }
        if !crate::group::exact_at(&iota, &pi)? {
            return Err(Error::InvalidExtension(
                "image of iota is not the kernel of pi".into(),
            ));
        }
        Ok(Self { e_group, iota, pi })
    }

    pub fn e_group(&self) -> &FgGroup {
        &self.e_group
    }

    pub fn iota(&self) -> &GroupHom {
        &self.iota
    }

    pub fn pi(&self) -> &GroupHom {
        &self.pi
    }

    pub fn k1(&self) -> &FgGroup {
        self.pi.target()
    }

    /// `0 -> Z --d--> Z -> Z/d -> 0`.
    pub fn mult_by_d(d: u64) -> Result<Self> {
        let z = FgGroup::free(1);
        let k1 = FgGroup::cyclic(d);
        let iota = GroupHom::new(
            z.clone(),
            z.clone(),
            IntMatrix::from_rows_i64(&[vec![d as i64]]),
        )?;
        let pi = if d == 1 {
            GroupHom::zero(&z, &k1)
        } else {
            GroupHom::new(z.clone(), k1, IntMatrix::from_rows_i64(&[vec![1]]))?
        };
        Self::new(z, iota, pi)
    }

    /// The split extension `0 -> Z -> Z (+) K1 -> K1 -> 0`.
    pub fn split(k1: &FgGroup) -> Result<Self> {
        let e = FgGroup::new(k1.free_rank() + 1, k1.invariant_factors().to_vec())?;
        let mut iota_m = IntMatrix::zeros(e.len(), 1);
        iota_m[(0, 0)] = BigInt::one();
        let iota = GroupHom::new(FgGroup::free(1), e.clone(), iota_m)?;
        let pi_m = IntMatrix::from_fn(k1.len(), e.len(), |i, j| {
            if j == i + 1 {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        });
        let pi = GroupHom::new(e.clone(), k1.clone(), pi_m)?;
        Self::new(e, iota, pi)
    }

    /// The extension of `k1` by Z classified by the tuple `a`, one entry per
    /// torsion generator: generators `u, w_1..w_k, x_1..x_f` with relations
    /// `a_i u = d_i w_i`; the induced character sends the i-th torsion
    /// generator to `[a_i / d_i]`.
    pub fn from_character_data(k1: &FgGroup, a: &[BigInt]) -> Result<Self> {
        let k = k1.torsion_count();
        if a.len() != k {
            return Err(Error::Shape(format!(
                "need one classifying entry per torsion generator of {k1}, got {}",
                a.len()
            )));
        }
        let f = k1.free_rank();
        let gens = 1 + k + f; // u, w_1..w_k, x_1..x_f
        let mut rel = IntMatrix::zeros(gens, k);
        for (i, (ai, di)) in a.iter().zip(k1.invariant_factors()).enumerate() {
            rel[(0, i)] = ai.clone();
            rel[(1 + i, i)] = -di.clone();
        }
        let (e, proj, section) = present_with_section(gens, &rel);
        let free_gens = FgGroup::free(gens);
        let iota_img = proj.apply(&free_gens.generator(0))?;
        let iota = GroupHom::new(
            FgGroup::free(1),
            e.clone(),
            IntMatrix::column(iota_img.coords()),
        )?;
        // pi on the formal generators: u -> 0, w_i -> torsion gen i,
        // x_j -> free gen j; transport through the section
        let mut pi_hat = IntMatrix::zeros(k1.len(), gens);
        for i in 0..k {
            pi_hat[(k1.free_rank() + i, 1 + i)] = BigInt::one();
        }
        for j in 0..f {
            pi_hat[(j, 1 + k + j)] = BigInt::one();
        }
        let pi = GroupHom::new(e.clone(), k1.clone(), &pi_hat * &section)?;
        Self::new(e, iota, pi)
    }

    /// Blockwise sum: glue two extensions along their copies of Z, giving
    /// an extension of `K1 (+) K1'` whose character is the pair of the
    /// original characters.
    pub fn direct_sum(x1: &Self, x2: &Self) -> Result<Self> {
        let ds = direct_sum(&x1.e_group, &x2.e_group);
        let one = FgGroup::free(1).generator(0);
        let z1 = ds.left_inclusion.apply(&x1.iota.apply(&one)?)?;
        let z2 = ds.right_inclusion.apply(&x2.iota.apply(&one)?)?;
        let glue = GroupHom::new(
            FgGroup::free(1),
            ds.group.clone(),
            IntMatrix::column(z1.sub(&z2).coords()),
        )?;
        let ck = glue.cokernel_full();
        let iota = x1.iota.then(&ds.left_inclusion)?.then(&ck.quotient)?;
        let k_ds = direct_sum(x1.k1(), x2.k1());
        let pi_hat = ds
            .left_projection
            .then(&x1.pi)?
            .then(&k_ds.left_inclusion)?
            .add(
                &ds.right_projection
                    .then(&x2.pi)?
                    .then(&k_ds.right_inclusion)?,
            )?;
        let pi = ck.descend(&pi_hat)?;
        Self::new(ck.group, iota, pi)
    }
}

/// The rational splitting data for an extension: `phi` is determined by its
/// values on the free generators of `E` (torsion generators are forced to
/// zero over Q), subject to `phi(iota(1)) = 1`.
pub struct PhiSolutions {
    /// Free-part coordinates of `iota(1)`.
    pub constraint: Vec<BigInt>,
    /// One particular solution.
    pub particular: Vec<BigRational>,
    /// Integer basis of the homogeneous solutions (columns).
    pub nullspace: IntMatrix,
}

impl PhiSolutions {
    /// particular + nullspace * weights
    pub fn solution(&self, weights: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(weights.len(), self.nullspace.cols());
        let mut v = self.particular.clone();
        for (j, w) in weights.iter().enumerate() {
            for (i, vi) in v.iter_mut().enumerate() {
                *vi += w * BigRational::from(self.nullspace[(i, j)].clone());
            }
        }
        v
    }
}

pub fn phi_solution_space(x: &ExtensionClass) -> Result<PhiSolutions> {
    let one = FgGroup::free(1).generator(0);
    let img = x.iota().apply(&one)?;
    let free_rank = x.e_group().free_rank();
    let constraint: Vec<BigInt> = img.coords()[..free_rank].to_vec();
    if constraint.iter().all(Zero::is_zero) {
        return Err(Error::InvalidExtension(
            "iota(1) is torsion, so iota cannot be injective".into(),
        ));
    }
    let (g, bezout) = matrix::xgcd_vec(&constraint);
    let particular: Vec<BigRational> = bezout
        .into_iter()
        .map(|y| BigRational::new(y, g.clone()))
        .collect();
    let row = IntMatrix::from_fn(1, free_rank, |_, j| constraint[j].clone());
    let nullspace = matrix::kernel_basis(&row);
    Ok(PhiSolutions {
        constraint,
        particular,
        nullspace,
    })
}

/// The character of `t K1` induced by a chosen rational splitting.
pub fn delta_with_phi(x: &ExtensionClass, phi_free: &[BigRational]) -> Result<QZHom> {
    let free_rank = x.e_group().free_rank();
    if phi_free.len() != free_rank {
        return Err(Error::Shape(format!(
            "phi needs one rational per free generator of E ({free_rank}), got {}",
            phi_free.len()
        )));
    }
    let (tk1, t_incl) = torsion_subgroup(x.k1());
    let mut values = Vec::with_capacity(tk1.len());
    for i in 0..tk1.len() {
        let y = t_incl.apply(&tk1.generator(i))?;
        let e = x
            .pi()
            .preimage(&y)?
            .expect("pi is surjective, every torsion class lifts");
        let mut acc = BigRational::zero();
        for (c, v) in e.coords()[..free_rank].iter().zip(phi_free) {
            acc += v * BigRational::from(c.clone());
        }
        values.push(QZValue::new(acc.numer().clone(), acc.denom().clone())?);
    }
    QZHom::new(tk1, values)
}

/// The torsion pairing in the extension picture.
pub fn delta_via_extension(x: &ExtensionClass) -> Result<QZHom> {
    let phi = phi_solution_space(x)?;
    delta_with_phi(x, &phi.particular)
}

/// The Ext-group identification: an extension class, read as an element of
/// `Ext(K1, Z)`, restricted to torsion and converted to a Q/Z character.
/// This is the same pipeline as [`delta_via_extension`] by definition; it
/// is exposed separately so the duality statements can be tested against it.
pub fn ext_to_qz_hom(x: &ExtensionClass) -> Result<QZHom> {
    delta_via_extension(x)
}

/// Evaluate a pairing character at a torsion class.
pub fn pairing_value(delta: &QZHom, y: &GroupElement) -> Result<QZValue> {
    delta.evaluate(y)
}

/// Fiber product along `f : H -> K1`, the extension-picture naturality map.
pub fn pullback(x: &ExtensionClass, f: &GroupHom) -> Result<ExtensionClass> {
    if f.target() != x.k1() {
        return Err(Error::NotComposable(format!(
            "pullback map must land in {}, got {}",
            x.k1(),
            f.target()
        )));
    }
    let h = f.source();
    let ds = direct_sum(x.e_group(), h);
    let diff = ds
        .left_projection
        .then(x.pi())?
        .sub(&ds.right_projection.then(f)?)?;
    let (p, inclusion) = diff.kernel();
    // iota': (iota(1), 0) lies in the fiber product
    let one = FgGroup::free(1).generator(0);
    let z_in_ds = ds.left_inclusion.apply(&x.iota().apply(&one)?)?;
    let iota_coords = inclusion
        .preimage(&z_in_ds)?
        .ok_or_else(|| Error::InvalidExtension("iota(1) escapes the fiber product".into()))?;
    let iota = GroupHom::new(
        FgGroup::free(1),
        p.clone(),
        IntMatrix::column(iota_coords.coords()),
    )?;
    let pi = inclusion.then(&ds.right_projection)?;
    ExtensionClass::new(p, iota, pi)
}

/// A class in the Q/Z-coefficient picture: an additive map out of the
/// coefficient group, stored by integer multipliers on the divisible
/// summand and a character of the torsion summand.
pub struct QZPictureClass {
    coeff: QzCoefficients,
    alpha_divisible: Vec<BigInt>,
    alpha_torsion: QZHom,
}

impl QZPictureClass {
    pub fn new(
        coeff: QzCoefficients,
        alpha_divisible: Vec<BigInt>,
        alpha_torsion: QZHom,
    ) -> Result<Self> {
        if alpha_divisible.len() != coeff.group.qz_rank {
            return Err(Error::Shape(format!(
                "alpha needs {} divisible multipliers, got {}",
                coeff.group.qz_rank,
                alpha_divisible.len()
            )));
        }
        if alpha_torsion.source() != &coeff.torsion_group {
            return Err(Error::Shape(format!(
                "alpha's torsion part must live on {}, got {}",
                coeff.torsion_group,
                alpha_torsion.source()
            )));
        }
        Ok(Self {
            coeff,
            alpha_divisible,
            alpha_torsion,
        })
    }

    pub fn coefficients(&self) -> &QzCoefficients {
        &self.coeff
    }

    /// The additive map on the coefficient group.
    pub fn alpha(&self, e: &ExtElement) -> Result<QZValue> {
        let mut acc = QZValue::zero();
        for (c, v) in self.alpha_divisible.iter().zip(&e.qz) {
            acc = acc.add(&v.scale(c));
        }
        acc = acc.add(
            &self
                .alpha_torsion
                .evaluate(&self.coeff.project_torsion(e)?)?,
        );
        Ok(acc)
    }

    fn vanishes_on_divisible(&self) -> bool {
        self.alpha_divisible.iter().all(Zero::is_zero)
    }
}

/// The torsion pairing in the Q/Z-coefficient picture: lift a torsion
/// class through the quotient map and apply alpha.  The lift independence
/// promised by the first isomorphism theorem is re-verified on a second
/// lift differing by a divisible element.
pub fn delta_via_qz(x: &QZPictureClass) -> Result<QZHom> {
    if !x.vanishes_on_divisible() {
        return Err(Error::NotInPairingKernel(format!(
            "divisible multipliers {:?} are not all zero",
            x.alpha_divisible
        )));
    }
    let torsion = x.coeff.torsion_group.clone();
    let mut values = Vec::with_capacity(torsion.len());
    for i in 0..torsion.len() {
        let t = torsion.generator(i);
        let lift = x.coeff.include_torsion(t)?;
        let first = x.alpha(&lift)?;
        if x.coeff.group.qz_rank > 0 {
            let offset: Vec<QZValue> = (0..x.coeff.group.qz_rank)
                .map(|j| QZValue::from_i64(1, (j + 2) as i64))
                .collect();
            let other = lift.add(&x.coeff.include_divisible(offset)?);
            let second = x.alpha(&other)?;
            if first != second {
                return Err(Error::NotInPairingKernel(format!(
                    "two lifts of generator {i} disagree: {first} vs {second}"
                )));
            }
        }
        values.push(first);
    }
    QZHom::new(torsion, values)
}

/// Degenerate extension for tests and the duality constructions: presents
/// the cyclic group Z/d with an arbitrary classifying residue `a`.
pub fn cyclic_extension(d: u64, a: i64) -> Result<ExtensionClass> {
    ExtensionClass::from_character_data(&FgGroup::cyclic(d), &[BigInt::from(a)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{k_coeff_qz, KTheoryPair};
    use rand::{Rng, SeedableRng};

    fn qz(n: i64, d: i64) -> QZValue {
        QZValue::from_i64(n, d)
    }

    #[test]
    fn mult_by_three_gives_one_third() {
        let x = ExtensionClass::mult_by_d(3).unwrap();
        let delta = delta_via_extension(&x).unwrap();
        assert_eq!(delta.values(), &[qz(1, 3)]);
    }

    #[test]
    fn split_extension_gives_zero() {
        let k1 = FgGroup::new(1, vec![BigInt::from(6)]).unwrap();
        let x = ExtensionClass::split(&k1).unwrap();
        let delta = delta_via_extension(&x).unwrap();
        assert!(delta.is_zero());
    }

    #[test]
    fn rank_two_extension_with_torsion() {
        // E = Z (+) Z/2, iota(1) = (4, [1]); then K1 = Z/8 and the free
        // generator of E pairs to [1/4]
        let e = FgGroup::new(1, vec![BigInt::from(2)]).unwrap();
        let iota = GroupHom::new(
            FgGroup::free(1),
            e.clone(),
            IntMatrix::from_rows_i64(&[vec![4], vec![1]]),
        )
        .unwrap();
        let ck = iota.cokernel_full();
        assert_eq!(ck.group, FgGroup::cyclic(8));
        let x = ExtensionClass::new(e.clone(), iota, ck.quotient.clone()).unwrap();
        let delta = delta_via_extension(&x).unwrap();
        let class_of_e1 = ck.quotient.apply(&e.generator(0)).unwrap();
        assert_eq!(pairing_value(&delta, &class_of_e1).unwrap(), qz(1, 4));

        // 4 * [e1] is a nonzero torsion class with zero pairing
        let y = class_of_e1.scale(&BigInt::from(4));
        assert!(!y.is_zero());
        assert!(pairing_value(&delta, &y).unwrap().is_zero());
    }

    #[test]
    fn construction_rejects_bad_data() {
        let z = FgGroup::free(1);
        // iota = 0 is not injective
        let iota = GroupHom::zero(&z, &z);
        let pi = GroupHom::new(
            z.clone(),
            FgGroup::cyclic(3),
            IntMatrix::from_rows_i64(&[vec![1]]),
        )
        .unwrap();
        assert!(matches!(
            ExtensionClass::new(z.clone(), iota, pi.clone()),
            Err(Error::InvalidExtension(_))
        ));
        // pi not surjective
        let iota =
            GroupHom::new(z.clone(), z.clone(), IntMatrix::from_rows_i64(&[vec![3]])).unwrap();
        let bad_pi = GroupHom::zero(&z, &FgGroup::cyclic(3));
        assert!(ExtensionClass::new(z.clone(), iota.clone(), bad_pi).is_err());
        // wrong exactness: x6 against the mod-3 quotient
        let iota6 =
            GroupHom::new(z.clone(), z.clone(), IntMatrix::from_rows_i64(&[vec![6]])).unwrap();
        assert!(ExtensionClass::new(z.clone(), iota6, pi).is_err());
    }

    #[test]
    fn character_data_realizes_characters() {
        for (d, a, expect) in [
            (3u64, 1i64, qz(1, 3)),
            (8, 5, qz(5, 8)),
            (6, 4, qz(2, 3)),
            (5, 0, qz(0, 1)),
        ] {
            let x = cyclic_extension(d, a).unwrap();
            let delta = delta_via_extension(&x).unwrap();
            let gen = x.k1().generator(0);
            let (_, t_incl) = torsion_subgroup(x.k1());
            let t = t_incl.preimage(&gen).unwrap().unwrap();
            assert_eq!(
                pairing_value(&delta, &t).unwrap(),
                expect,
                "wrong character for d={d}, a={a}"
            );
        }
    }

    #[test]
    fn blockwise_direct_sum() {
        let x2 = ExtensionClass::mult_by_d(2).unwrap();
        let x3 = ExtensionClass::mult_by_d(3).unwrap();
        let x = ExtensionClass::direct_sum(&x2, &x3).unwrap();
        let delta = delta_via_extension(&x).unwrap();
        // K1 = Z/2 (+) Z/3 = Z/6; rather than guessing coordinates, test on
        // the images of the two block generators
        let k_ds = direct_sum(&FgGroup::cyclic(2), &FgGroup::cyclic(3));
        assert_eq!(x.k1(), &k_ds.group);
        let g2 = k_ds
            .left_inclusion
            .apply(&FgGroup::cyclic(2).generator(0))
            .unwrap();
        let g3 = k_ds
            .right_inclusion
            .apply(&FgGroup::cyclic(3).generator(0))
            .unwrap();
        assert_eq!(pairing_value(&delta, &g2).unwrap(), qz(1, 2));
        assert_eq!(pairing_value(&delta, &g3).unwrap(), qz(1, 3));
    }

    #[test]
    fn phi_choice_does_not_matter_on_torsion() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(0xd2);
        for _ in 0..40 {
            let x = random_extension(&mut rng);
            let phi = phi_solution_space(&x).unwrap();
            let reference = delta_with_phi(&x, &phi.particular).unwrap();
            for _ in 0..16 {
                let weights: Vec<BigRational> = (0..phi.nullspace.cols())
                    .map(|_| {
                        BigRational::new(
                            BigInt::from(rng.gen_range(-9i64..=9)),
                            BigInt::from(rng.gen_range(1i64..=9)),
                        )
                    })
                    .collect();
                let other = delta_with_phi(&x, &phi.solution(&weights)).unwrap();
                assert_eq!(reference, other);
            }
        }
    }

    pub(super) fn random_extension(rng: &mut impl Rng) -> ExtensionClass {
        let free_rank = rng.gen_range(0..=2);
        let n_factors = rng.gen_range(0..=3);
        let mut factors: Vec<BigInt> = Vec::new();
        let mut d = 1u64;
        for _ in 0..n_factors {
            d *= rng.gen_range(1..=3u64);
            if d == 1 {
                d = rng.gen_range(2..=4);
            }
            if d > 12 {
                break;
            }
            factors.push(BigInt::from(d));
        }
        let k1 = FgGroup::new(free_rank, factors).unwrap();
        let a: Vec<BigInt> = k1
            .invariant_factors()
            .iter()
            .map(|di| BigInt::from(rng.gen_range(0..=8i64)) % di)
            .collect();
        ExtensionClass::from_character_data(&k1, &a).unwrap()
    }

    #[test]
    fn qz_picture_agrees_with_extension_picture() {
        for d in 2u64..=16 {
            let x = ExtensionClass::mult_by_d(d).unwrap();
            let ext_delta = delta_via_extension(&x).unwrap();

            let k = KTheoryPair::new(FgGroup::free(1), FgGroup::cyclic(d));
            let coeff = k_coeff_qz(&k, 0).unwrap();
            let alpha = QZHom::new(
                coeff.torsion_group.clone(),
                vec![QZValue::new(BigInt::one(), BigInt::from(d)).unwrap()],
            )
            .unwrap();
            let class = QZPictureClass::new(coeff, vec![BigInt::zero()], alpha).unwrap();
            let qz_delta = delta_via_qz(&class).unwrap();
            assert_eq!(ext_delta.values(), qz_delta.values(), "mismatch at d = {d}");
        }
    }

    #[test]
    fn qz_picture_examples() {
        // coefficient group Z/5 with no free part
        let k = KTheoryPair::new(FgGroup::trivial(), FgGroup::cyclic(5));
        let coeff = k_coeff_qz(&k, 0).unwrap();
        let alpha = QZHom::new(coeff.torsion_group.clone(), vec![qz(2, 5)]).unwrap();
        let class = QZPictureClass::new(coeff, vec![], alpha).unwrap();
        assert_eq!(delta_via_qz(&class).unwrap().values(), &[qz(2, 5)]);

        // alpha = 0
        let k = KTheoryPair::new(FgGroup::free(2), FgGroup::cyclic(6));
        let coeff = k_coeff_qz(&k, 0).unwrap();
        let alpha = QZHom::zero(coeff.torsion_group.clone()).unwrap();
        let class =
            QZPictureClass::new(coeff, vec![BigInt::zero(), BigInt::zero()], alpha).unwrap();
        assert!(delta_via_qz(&class).unwrap().is_zero());

        // (Q/Z)^1 (+) Z/4 with alpha killing the divisible summand
        let k = KTheoryPair::new(FgGroup::free(1), FgGroup::cyclic(4));
        let coeff = k_coeff_qz(&k, 0).unwrap();
        let alpha = QZHom::new(coeff.torsion_group.clone(), vec![qz(3, 4)]).unwrap();
        let class = QZPictureClass::new(coeff, vec![BigInt::zero()], alpha).unwrap();
        assert_eq!(delta_via_qz(&class).unwrap().values(), &[qz(3, 4)]);
    }

    #[test]
    fn qz_picture_rejects_nonvanishing_alpha() {
        let k = KTheoryPair::new(FgGroup::free(1), FgGroup::cyclic(4));
        let coeff = k_coeff_qz(&k, 0).unwrap();
        let alpha = QZHom::new(coeff.torsion_group.clone(), vec![qz(1, 4)]).unwrap();
        let class = QZPictureClass::new(coeff, vec![BigInt::one()], alpha).unwrap();
        assert!(matches!(
            delta_via_qz(&class),
            Err(Error::NotInPairingKernel(_))
        ));
    }

    #[test]
    fn resplitting_leaves_the_pairing_alone() {
        // pairing values only consume the exact sequence, never the chosen
        // splitting: lifts twisted by random divisible elements agree
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let k = KTheoryPair::new(
            FgGroup::free(2),
            FgGroup::new(0, vec![BigInt::from(2), BigInt::from(8)]).unwrap(),
        );
        let coeff = k_coeff_qz(&k, 0).unwrap();
        let alpha = QZHom::new(coeff.torsion_group.clone(), vec![qz(1, 2), qz(5, 8)]).unwrap();
        let class = QZPictureClass::new(coeff, vec![BigInt::zero(); 2], alpha).unwrap();
        let delta = delta_via_qz(&class).unwrap();
        for _ in 0..64 {
            for t in class.coefficients().torsion_group.elements() {
                let twist: Vec<QZValue> = (0..2)
                    .map(|_| qz(rng.gen_range(0..12), rng.gen_range(1..12)))
                    .collect();
                let lift = class
                    .coefficients()
                    .include_torsion(t.clone())
                    .unwrap()
                    .add(&class.coefficients().include_divisible(twist).unwrap());
                assert_eq!(
                    class.alpha(&lift).unwrap(),
                    delta.evaluate(&t).unwrap(),
                    "a re-split lift changed the pairing"
                );
            }
        }
    }

    #[test]
    fn pullback_identity_zero_and_inclusion() {
        let x = ExtensionClass::mult_by_d(6).unwrap();
        let delta = delta_via_extension(&x).unwrap();

        // identity pullback: same character
        let id = GroupHom::identity(x.k1());
        let same = pullback(&x, &id).unwrap();
        assert_eq!(delta_via_extension(&same).unwrap().values(), delta.values());

        // zero pullback: split extension, zero character
        let zero = GroupHom::zero(&FgGroup::cyclic(4), x.k1());
        let split = pullback(&x, &zero).unwrap();
        assert!(delta_via_extension(&split).unwrap().is_zero());

        // inclusion Z/3 -> Z/6, [1] |-> [2]: pulled-back character is [1/3]
        let f = GroupHom::new(
            FgGroup::cyclic(3),
            x.k1().clone(),
            IntMatrix::from_rows_i64(&[vec![2]]),
        )
        .unwrap();
        let pulled = pullback(&x, &f).unwrap();
        let d2 = delta_via_extension(&pulled).unwrap();
        // evaluate at the preimage of the Z/3 generator inside t(H) = H
        let (th, t_incl) = torsion_subgroup(&FgGroup::cyclic(3));
        let t = t_incl
            .preimage(&FgGroup::cyclic(3).generator(0))
            .unwrap()
            .unwrap();
        assert_eq!(pairing_value(&d2, &t).unwrap(), qz(1, 3));
        assert_eq!(th, FgGroup::cyclic(3));
    }

    #[test]
    fn pullback_naturality_randomized() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(0xa11);
        for _ in 0..30 {
            let x = random_extension(&mut rng);
            // random map from a random finite H into k1
            let h = FgGroup::cyclic(rng.gen_range(2..=12));
            let cols: Vec<Vec<BigInt>> = (0..h.len())
                .map(|_| {
                    (0..x.k1().len())
                        .map(|_| BigInt::from(rng.gen_range(0..13i64)))
                        .collect()
                })
                .collect();
            let m = IntMatrix::from_fn(x.k1().len(), h.len(), |i, j| cols[j][i].clone());
            // only keep well-defined maps; resample otherwise
            let Ok(f) = GroupHom::new(h.clone(), x.k1().clone(), m) else {
                continue;
            };
            let pulled = pullback(&x, &f).unwrap();
            let delta_pulled = delta_via_extension(&pulled).unwrap();
            let delta = delta_via_extension(&x).unwrap();
            let (th, th_incl) = torsion_subgroup(&h);
            let (_, tk1_incl) = torsion_subgroup(x.k1());
            for y in th.elements() {
                let lhs = pairing_value(&delta_pulled, &y).unwrap();
                let fy = f.apply(&th_incl.apply(&y).unwrap()).unwrap();
                let fy_t = tk1_incl
                    .preimage(&fy)
                    .unwrap()
                    .expect("image of torsion is torsion");
                let rhs = pairing_value(&delta, &fy_t).unwrap();
                assert_eq!(lhs, rhs, "naturality broke");
            }
        }
    }

    #[test]
    fn pullback_along_a_map_from_an_infinite_group() {
        // pulling the order-6 class back along Z -> Z/6 still yields a
        // genuine extension; the torsion pairing on t(Z) = 0 is empty
        let x = ExtensionClass::mult_by_d(6).unwrap();
        let f = GroupHom::new(
            FgGroup::free(1),
            x.k1().clone(),
            IntMatrix::from_rows_i64(&[vec![1]]),
        )
        .unwrap();
        let pulled = pullback(&x, &f).unwrap();
        assert_eq!(pulled.k1(), &FgGroup::free(1));
        let delta = delta_via_extension(&pulled).unwrap();
        assert!(delta.source().is_trivial());
    }

    #[test]
    fn duality_every_character_arises() {
        for d in 2u64..=24 {
            let mut seen = std::collections::BTreeSet::new();
            for a in 0..d {
                let x = cyclic_extension(d, a as i64).unwrap();
                let delta = ext_to_qz_hom(&x).unwrap();
                seen.insert(delta.values()[0].to_string());
            }
            assert_eq!(seen.len() as u64, d, "duality not a bijection for d = {d}");
        }
    }
}
