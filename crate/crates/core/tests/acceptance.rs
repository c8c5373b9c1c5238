//! Acceptance suite: one test per criterion, each printing a PASS line and
//! enforcing its stated time budget (run with `--nocapture` to see the
//! lines individually).

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use std::time::Instant;
use torsionpair::coeff::{k_coeff_qz, KTheoryPair};
use torsionpair::detpair::{log_det_pairing, root_of_unity_matrix, zeta_generator_check, CMatrix};
use torsionpair::group::{direct_sum, torsion_subgroup, FgGroup, GroupHom};
use torsionpair::lambda::{kk_group, LambdaFamily};
use torsionpair::pairing::{
    delta_via_extension, delta_via_qz, delta_with_phi, pairing_value, phi_solution_space,
    ExtensionClass, QZPictureClass,
};
use torsionpair::qz::{QZHom, QZValue};
use torsionpair::spectral::{eta_circle, rho_relative, FlatLineBundle};

fn finish(criterion: usize, name: &str, started: Instant, budget_s: f64) {
    let elapsed = started.elapsed().as_secs_f64();
    println!("criterion {criterion} ({name}): PASS ({elapsed:.2} s)");
    assert!(
        elapsed < budget_s,
        "criterion {criterion} exceeded its {budget_s} s budget: {elapsed:.2} s"
    );
}

fn qz(n: i64, d: i64) -> QZValue {
    QZValue::from_i64(n, d)
}

/// Divisibility chains (d_1 | d_2) with at most `max_factors` entries and
/// exponent at most `max_exponent`.
fn torsion_chains(max_factors: usize, max_exponent: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for e in 2..=max_exponent {
        out.push(vec![e]);
        if max_factors >= 2 {
            for d1 in 2..=e {
                if e % d1 == 0 {
                    out.push(vec![d1, e]);
                }
            }
        }
    }
    out
}

fn group_from_chain(free_rank: usize, chain: &[u64]) -> FgGroup {
    FgGroup::new(free_rank, chain.iter().map(|&d| BigInt::from(d)).collect()).unwrap()
}

#[test]
fn criterion_1_kk_table_reproduction() {
    let started = Instant::now();
    for n in 2..=50u64 {
        for m in 2..=50u64 {
            for degree in [0u8, 1] {
                let d = kk_group(n, m, degree).unwrap();
                let g = {
                    let (mut a, mut b) = (n, m);
                    while b != 0 {
                        (a, b) = (b, a % b);
                    }
                    a
                };
                assert_eq!(
                    d.group,
                    FgGroup::cyclic(g),
                    "order must be gcd({n}, {m}) in degree {degree}"
                );
            }
        }
    }
    // boundary rows and columns
    for m in 2..=50u64 {
        assert_eq!(kk_group(1, m, 0).unwrap().group, FgGroup::cyclic(m));
        assert_eq!(kk_group(m, 1, 1).unwrap().group, FgGroup::cyclic(m));
        assert!(kk_group(m, 1, 0).unwrap().group.is_trivial());
        assert!(kk_group(1, m, 1).unwrap().group.is_trivial());
    }
    assert_eq!(kk_group(1, 1, 0).unwrap().group, FgGroup::free(1));
    assert!(kk_group(1, 1, 1).unwrap().group.is_trivial());
    finish(1, "coefficient-morphism table", started, 1.0);
}

fn random_k1(rng: &mut impl Rng, max_exponent: u64) -> FgGroup {
    let free_rank = rng.gen_range(0..=2);
    let n_factors = rng.gen_range(0..=3usize);
    let mut factors: Vec<u64> = Vec::new();
    let mut d = 1u64;
    for _ in 0..n_factors {
        d *= rng.gen_range(2..=4u64);
        if d > max_exponent {
            break;
        }
        factors.push(d);
    }
    group_from_chain(free_rank, &factors)
}

fn random_extension(rng: &mut impl Rng, max_exponent: u64) -> ExtensionClass {
    let k1 = random_k1(rng, max_exponent);
    let a: Vec<BigInt> = k1
        .invariant_factors()
        .iter()
        .map(|di| BigInt::from(rng.gen_range(0..=24i64)) % di)
        .collect();
    ExtensionClass::from_character_data(&k1, &a).unwrap()
}

#[test]
fn criterion_2_splitting_independence() {
    let started = Instant::now();
    let mut rng = rand::rngs::StdRng::seed_from_u64(2);
    for case in 0..500 {
        let x = random_extension(&mut rng, 24);
        let phi = phi_solution_space(&x).unwrap();
        let reference = delta_with_phi(&x, &phi.particular).unwrap();
        for _ in 0..16 {
            let weights: Vec<num_rational::BigRational> = (0..phi.nullspace.cols())
                .map(|_| {
                    num_rational::BigRational::new(
                        BigInt::from(rng.gen_range(-24i64..=24)),
                        BigInt::from(rng.gen_range(1i64..=24)),
                    )
                })
                .collect();
            let other = delta_with_phi(&x, &phi.solution(&weights)).unwrap();
            assert_eq!(
                reference, other,
                "case {case}: two rational splittings disagree on torsion"
            );
        }
    }
    finish(
        2,
        "splitting independence over 500 extensions",
        started,
        10.0,
    );
}

#[test]
fn criterion_3_cross_picture_agreement() {
    let started = Instant::now();
    // cyclic classes of every order up to 64
    for d in 2..=64u64 {
        let ext_delta = delta_via_extension(&ExtensionClass::mult_by_d(d).unwrap()).unwrap();
        let pair = KTheoryPair::new(FgGroup::free(1), FgGroup::cyclic(d));
        let coeff = k_coeff_qz(&pair, 0).unwrap();
        let alpha = QZHom::new(
            coeff.torsion_group.clone(),
            vec![QZValue::new(BigInt::from(1), BigInt::from(d)).unwrap()],
        )
        .unwrap();
        let class = QZPictureClass::new(coeff, vec![BigInt::from(0)], alpha).unwrap();
        let qz_delta = delta_via_qz(&class).unwrap();
        assert_eq!(
            ext_delta, qz_delta,
            "pictures disagree on the order-{d} class"
        );
    }

    // 100 random direct sums of cyclic blocks; the same abstract character
    // is pushed through both pipelines independently
    let mut rng = rand::rngs::StdRng::seed_from_u64(3);
    for case in 0..100 {
        let blocks: Vec<u64> = (0..rng.gen_range(2..=3))
            .map(|_| rng.gen_range(2..=16))
            .collect();

        // extension pipeline: blockwise sum of multiplication extensions
        let mut x = ExtensionClass::mult_by_d(blocks[0]).unwrap();
        for &b in &blocks[1..] {
            x = ExtensionClass::direct_sum(&x, &ExtensionClass::mult_by_d(b).unwrap()).unwrap();
        }
        let ext_delta = delta_via_extension(&x).unwrap();

        // coefficient pipeline: express the block character on the normal
        // form through the direct-sum projections, then lift and evaluate
        let mut k1 = FgGroup::cyclic(blocks[0]);
        let mut projections: Vec<(GroupHom, u64)> = vec![(GroupHom::identity(&k1), blocks[0])];
        for &b in &blocks[1..] {
            let ds = direct_sum(&k1, &FgGroup::cyclic(b));
            projections = projections
                .into_iter()
                .map(|(p, ord)| (ds.left_projection.then(&p).unwrap(), ord))
                .collect();
            projections.push((ds.right_projection.clone(), b));
            k1 = ds.group;
        }
        assert_eq!(&k1, x.k1(), "block assembly must match the extension");
        let (tk1, tk1_incl) = torsion_subgroup(&k1);
        let mut values = Vec::new();
        for i in 0..tk1.len() {
            let g = tk1_incl.apply(&tk1.generator(i)).unwrap();
            let mut acc = QZValue::zero();
            for (p, ord) in &projections {
                let c = p.apply(&g).unwrap();
                acc = acc.add(&QZValue::new(c.coords()[0].clone(), BigInt::from(*ord)).unwrap());
            }
            values.push(acc);
        }
        let alpha = QZHom::new(tk1, values).unwrap();
        let pair = KTheoryPair::new(FgGroup::free(1), k1);
        let coeff = k_coeff_qz(&pair, 0).unwrap();
        let class = QZPictureClass::new(coeff, vec![BigInt::from(0)], alpha).unwrap();
        let qz_delta = delta_via_qz(&class).unwrap();
        assert_eq!(ext_delta, qz_delta, "case {case}: pictures disagree");
    }
    finish(3, "cross-picture agreement", started, 5.0);
}

#[test]
fn criterion_4_family_character_bijection() {
    let started = Instant::now();
    // exhaustive bijection for every torsion group with exponent <= 24 and
    // at most 2 invariant factors
    for chain in torsion_chains(2, 24) {
        let k1 = group_from_chain(0, &chain);
        let (tk1, _) = torsion_subgroup(&k1);
        let e = match chain.last() {
            Some(&e) => e,
            None => continue,
        };
        let mut seen = std::collections::BTreeSet::new();
        for chi in tk1.elements() {
            let values: Vec<QZValue> = chi
                .coords()
                .iter()
                .zip(tk1.invariant_factors())
                .map(|(c, d)| QZValue::new(c.clone(), d.clone()).unwrap())
                .collect();
            let delta = QZHom::new(tk1.clone(), values).unwrap();
            let (family, lossy) = LambdaFamily::from_delta(&k1, &delta, e).unwrap();
            assert!(!lossy);
            assert!(family.check_compatibility().ok);
            // family -> character recovers the input
            let recovered = family.delta().unwrap();
            assert_eq!(recovered, delta, "round trip failed on {chain:?}");
            // character -> family is injective: record the stage tables
            let key: Vec<String> = family
                .stored_stages()
                .map(|m| format!("{m}:{:?}", family.psi(m).unwrap().matrix()))
                .collect();
            assert!(seen.insert(key.join(";")), "two characters share a family");
        }
        // the map is onto compatible families: the count matches |tk1|
        assert_eq!(BigInt::from(seen.len()), tk1.order().unwrap());
    }

    // 200 corrupted families, each with one stage entry changed at a proper
    // divisor of the exponent; all must be rejected
    let mut rng = rand::rngs::StdRng::seed_from_u64(4);
    let composite_chains: Vec<Vec<u64>> = torsion_chains(2, 24)
        .into_iter()
        .filter(|c| {
            c.last()
                .map(|&e| (2..e).any(|d| e % d == 0))
                .unwrap_or(false)
        })
        .collect();
    let mut rejected = 0;
    while rejected < 200 {
        let chain = &composite_chains[rng.gen_range(0..composite_chains.len())];
        let k1 = group_from_chain(0, chain);
        let (tk1, _) = torsion_subgroup(&k1);
        let e = *chain.last().unwrap();
        let values: Vec<QZValue> = tk1
            .invariant_factors()
            .iter()
            .map(|d| {
                let den = d.clone();
                let num = BigInt::from(rng.gen_range(0..=24i64)) % &den;
                QZValue::new(num, den).unwrap()
            })
            .collect();
        let delta = QZHom::new(tk1.clone(), values).unwrap();
        let (family, _) = LambdaFamily::from_delta(&k1, &delta, e).unwrap();
        let proper_stages: Vec<u64> = family.stored_stages().filter(|&m| m != e).collect();
        if proper_stages.is_empty() {
            continue;
        }
        let stage = proper_stages[rng.gen_range(0..proper_stages.len())];
        let mut tables: std::collections::BTreeMap<u64, Vec<BigInt>> = family
            .stored_stages()
            .map(|m| {
                let h = family.psi(m).unwrap();
                (
                    m,
                    (0..h.matrix().cols())
                        .map(|j| h.matrix()[(0, j)].clone())
                        .collect(),
                )
            })
            .collect();
        let table = tables.get_mut(&stage).unwrap();
        if table.is_empty() {
            continue;
        }
        let slot = rng.gen_range(0..table.len());
        let old = table[slot].clone();
        let offset = BigInt::from(rng.gen_range(1..stage));
        table[slot] = (&old + offset) % BigInt::from(stage);
        let corrupted = LambdaFamily::from_parts(&k1, e, tables).unwrap();
        assert!(
            !corrupted.check_compatibility().ok,
            "corruption at stage {stage} slot {slot} of {chain:?} was not rejected"
        );
        rejected += 1;
    }
    finish(
        4,
        "family-character bijection + corruption rejection",
        started,
        30.0,
    );
}

#[test]
fn criterion_5_duality_realization() {
    let started = Instant::now();
    for d in 2..=24u64 {
        let k1 = FgGroup::cyclic(d);
        let (tk1, tk1_incl) = torsion_subgroup(&k1);
        let gen = tk1_incl.preimage(&k1.generator(0)).unwrap().unwrap();
        let mut realized = std::collections::BTreeSet::new();
        for a in 0..d {
            let x = ExtensionClass::from_character_data(&k1, &[BigInt::from(a)]).unwrap();
            let delta = delta_via_extension(&x).unwrap();
            let value = pairing_value(&delta, &gen).unwrap();
            // the explicit construction hits exactly [a/d]
            assert_eq!(
                value,
                QZValue::new(BigInt::from(a), BigInt::from(d)).unwrap()
            );
            realized.insert(value.to_string());
        }
        // bijection: d distinct characters from d classifying residues
        assert_eq!(realized.len() as u64, d, "duality not bijective at d = {d}");
        assert_eq!(tk1.order().unwrap(), BigInt::from(d));
    }
    finish(5, "every character arises from an extension", started, 5.0);
}

#[test]
fn criterion_6_eta_reproduction() {
    let started = Instant::now();
    for d in 2..=48i64 {
        for k in 1..d {
            let r = eta_circle(&FlatLineBundle::from_fraction(k, d)).unwrap();
            let closed = 2.0 * (k as f64) / (d as f64) - 1.0;
            assert!(
                (r.eta - closed).abs() < 1e-8,
                "eta({k}/{d}) = {} is off the closed form {closed}",
                r.eta
            );
        }
    }
    for d in 2..=12i64 {
        let rho = rho_relative(
            &FlatLineBundle::from_fraction(1, d),
            &FlatLineBundle::trivial(),
            None,
        )
        .unwrap();
        assert_eq!(
            rho.value,
            qz(1, d),
            "rho(V_1/{d}, V_0) must certify to 1/{d}"
        );
    }
    finish(6, "eta invariants against the closed form", started, 5.0);
}

#[test]
fn criterion_7_determinant_reproduction() {
    let started = Instant::now();
    for d in 2..=24u64 {
        let r = log_det_pairing(&root_of_unity_matrix(1, d), &CMatrix::identity(1, 1), d).unwrap();
        assert_eq!(r.value, qz(1, d as i64));
        assert!(
            r.numeric_residual < 1e-9,
            "residual {:.3e} too large at d = {d}",
            r.numeric_residual
        );
    }
    for m in 2..=12u64 {
        let r = zeta_generator_check(m, 1).unwrap();
        assert_eq!(r.value, qz(1, m as i64));
        let r = zeta_generator_check(m, 2).unwrap();
        assert_eq!(r.value, qz(1, m as i64));
    }
    finish(7, "logarithmic determinant values", started, 5.0);
}

#[test]
fn criterion_8_grand_crosscheck() {
    let started = Instant::now();
    for d in 2..=12u64 {
        let x = ExtensionClass::mult_by_d(d).unwrap();
        let delta = delta_via_extension(&x).unwrap();
        let ext_value = pairing_value(&delta, &delta.source().generator(0)).unwrap();
        let rho = rho_relative(
            &FlatLineBundle::from_fraction(1, d as i64),
            &FlatLineBundle::trivial(),
            Some(d),
        )
        .unwrap();
        let det =
            log_det_pairing(&root_of_unity_matrix(1, d), &CMatrix::identity(1, 1), d).unwrap();
        let expected = qz(1, d as i64);
        assert_eq!(ext_value, expected, "extension pipeline at d = {d}");
        assert_eq!(rho.value, expected, "spectral pipeline at d = {d}");
        assert_eq!(det.value, expected, "determinant pipeline at d = {d}");
    }
    finish(8, "three pipelines agree on [1/d]", started, 10.0);
}
