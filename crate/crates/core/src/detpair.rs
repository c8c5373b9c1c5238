//! Determinant oracle: de la Harpe-Skandalis determinants of unitary
//! paths, the winding-generator computation for mod-m coefficient classes,
//! and the logarithmic determinant pairing for pairs of finite-dimensional
//! representations.
//!
//! Matrices are numeric (binary64 complex); certified outputs are exact
//! rationals obtained by nearest-fraction matching with a denominator cap,
//! which is sound because every value arising here is a root-of-unity
//! angle.  Normalization: the winding-generator check is normalized so the
//! generator of the mod-m coefficient group maps to `[+1/m]`; the sign
//! convention on the exponential term is recorded here once and used
//! consistently.

use crate::error::{Error, Result};
use crate::numeric::certify_rational;
use crate::pairing::{delta_via_extension, pairing_value, ExtensionClass};
use crate::qz::QZValue;
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::PI;

pub type CMatrix = DMatrix<Complex64>;

const UNITARITY_TOL: f64 = 1e-10;
const SAMPLE_GAP_LIMIT: f64 = 0.5;
const HERMITIAN_TOL: f64 = 1e-8;
const RESIDUAL_TOL: f64 = 1e-6;

/// A sampled path of unitary matrices on `[0, 1]`, optionally tagged as an
/// exact diagonal winding path.
#[derive(Clone, Debug)]
pub struct UnitaryPath {
    dimension: usize,
    samples: Vec<(f64, CMatrix)>,
    descriptor: Option<PathDescriptor>,
}

/// Closed-form tags for paths whose determinant integral is exact.
#[derive(Clone, Debug, PartialEq)]
pub enum PathDescriptor {
    /// `t -> diag(exp(2 pi i m_j t))`.
    DiagonalWinding(Vec<i64>),
}

fn max_abs_entry(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Operator norm by power iteration on `M* M`.
fn operator_norm(m: &CMatrix) -> f64 {
    let n = m.ncols();
    if n == 0 {
        return 0.0;
    }
    let gram = m.adjoint() * m;
    let mut v = DMatrix::from_fn(n, 1, |i, _| Complex64::new(1.0 + (i as f64) * 0.1, 0.3));
    for _ in 0..100 {
        let w = &gram * &v;
        let norm = w.norm();
        if norm == 0.0 {
            return 0.0;
        }
        v = w / Complex64::new(norm, 0.0);
    }
    (&gram * &v).norm().sqrt()
}

fn check_unitary(u: &CMatrix, what: &str) -> Result<()> {
    if u.nrows() != u.ncols() {
        return Err(Error::Shape(format!("{what} must be square")));
    }
    let defect = max_abs_entry(&(u.adjoint() * u - CMatrix::identity(u.nrows(), u.ncols())));
    if defect > UNITARITY_TOL {
        return Err(Error::Input(format!(
            "{what} is not unitary (defect {defect:e} > {UNITARITY_TOL:e})"
        )));
    }
    Ok(())
}

impl UnitaryPath {
    pub fn from_samples(samples: Vec<(f64, CMatrix)>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::Input("a path needs at least two samples".into()));
        }
        if samples[0].0 != 0.0 || samples[samples.len() - 1].0 != 1.0 {
            return Err(Error::Input(
                "path samples must run from t = 0 to t = 1".into(),
            ));
        }
        let dimension = samples[0].1.nrows();
        for (i, (t, u)) in samples.iter().enumerate() {
            if u.nrows() != dimension || u.ncols() != dimension {
                return Err(Error::Shape("all samples must share one dimension".into()));
            }
            check_unitary(u, &format!("sample {i} (t = {t})"))?;
            if i > 0 && samples[i - 1].0 >= *t {
                return Err(Error::Input("sample times must strictly increase".into()));
            }
        }
        for i in 0..samples.len() - 1 {
            let gap = operator_norm(&(&samples[i + 1].1 - &samples[i].1));
            if gap >= SAMPLE_GAP_LIMIT {
                return Err(Error::Input(format!(
                    "consecutive samples {i} and {} are {gap:.3} apart in operator norm \
                     (limit {SAMPLE_GAP_LIMIT}); refine the sampling",
                    i + 1
                )));
            }
        }
        Ok(Self {
            dimension,
            samples,
            descriptor: None,
        })
    }

    /// The constant identity path.
    pub fn constant_identity(dimension: usize) -> Self {
        let id = CMatrix::identity(dimension, dimension);
        Self {
            dimension,
            samples: vec![(0.0, id.clone()), (1.0, id)],
            descriptor: Some(PathDescriptor::DiagonalWinding(vec![0; dimension])),
        }
    }

    /// Exact diagonal path `t -> diag(exp(2 pi i m_j t))`.
    pub fn diagonal_winding(windings: &[i64]) -> Self {
        let max_w = windings.iter().map(|m| m.unsigned_abs()).max().unwrap_or(0);
        let segments = (16 * max_w.max(1) as usize).max(64);
        let samples = Self::diagonal_samples(windings, segments);
        Self {
            dimension: windings.len(),
            samples,
            descriptor: Some(PathDescriptor::DiagonalWinding(windings.to_vec())),
        }
    }

    /// The same diagonal path, but kept as bare samples so the numeric
    /// integration pipeline is exercised.
    pub fn diagonal_winding_sampled(windings: &[i64], segments: usize) -> Result<Self> {
        Self::from_samples(Self::diagonal_samples(windings, segments))
    }

    fn diagonal_samples(windings: &[i64], segments: usize) -> Vec<(f64, CMatrix)> {
        (0..=segments)
            .map(|k| {
                let t = k as f64 / segments as f64;
                let m = CMatrix::from_fn(windings.len(), windings.len(), |i, j| {
                    if i == j {
                        Complex64::from_polar(1.0, 2.0 * PI * windings[i] as f64 * t)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                });
                (t, m)
            })
            .collect()
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn samples(&self) -> &[(f64, CMatrix)] {
        &self.samples
    }

    pub fn descriptor(&self) -> Option<&PathDescriptor> {
        self.descriptor.as_ref()
    }
}

/// Principal logarithm of a matrix within distance < 1 of the identity,
/// by the alternating power series in `U - I`.
fn log_near_identity(u: &CMatrix) -> Result<CMatrix> {
    let n = u.nrows();
    let x = u - CMatrix::identity(n, n);
    let gap = operator_norm(&x);
    if gap >= 1.0 {
        return Err(Error::Input(format!(
            "matrix too far from the identity for a principal logarithm (distance {gap:.3})"
        )));
    }
    let mut term = x.clone();
    let mut acc = CMatrix::zeros(n, n);
    for k in 1..=96 {
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        acc += &term * Complex64::new(sign / k as f64, 0.0);
        term *= &x;
        if max_abs_entry(&term) < 1e-18 {
            break;
        }
    }
    Ok(acc)
}

/// Matrix exponential by scaling-and-squaring with a Taylor kernel.
pub fn mat_exp(h: &CMatrix) -> CMatrix {
    let n = h.nrows();
    let norm = max_abs_entry(h) * n as f64;
    let scalings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scaled = h / Complex64::new(2f64.powi(scalings as i32), 0.0);
    let mut acc = CMatrix::identity(n, n);
    let mut term = CMatrix::identity(n, n);
    for k in 1..=24 {
        term = (&term * &scaled) / Complex64::new(k as f64, 0.0);
        acc += &term;
    }
    for _ in 0..scalings {
        acc = &acc * &acc;
    }
    acc
}

/// The de la Harpe-Skandalis determinant
/// `Delta(u) = (1 / 2 pi i) * integral of u'(t) u*(t) dt`, a Hermitian
/// matrix.  Exact for tagged diagonal paths; per-segment principal
/// logarithms otherwise.
pub fn dls_determinant(path: &UnitaryPath) -> Result<CMatrix> {
    let n = path.dimension();
    let delta = match path.descriptor() {
        Some(PathDescriptor::DiagonalWinding(w)) => CMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(w[i] as f64, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }),
        None => {
            let mut acc = CMatrix::zeros(n, n);
            for pair in path.samples().windows(2) {
                let step = &pair[1].1 * pair[0].1.adjoint();
                acc += log_near_identity(&step)?;
            }
            acc / Complex64::new(0.0, 2.0 * PI)
        }
    };
    let herm_defect = max_abs_entry(&(&delta - delta.adjoint()));
    if herm_defect > HERMITIAN_TOL {
        return Err(Error::Residual {
            residual: herm_defect,
            tolerance: HERMITIAN_TOL,
        });
    }
    Ok(delta)
}

/// A certified Q/Z pairing value with its numeric residual; when the
/// determinant lands on the negative real axis the two branch candidates
/// (equal mod 1) are reported as well.
#[derive(Clone, Debug)]
pub struct QZPairingResult {
    pub value: QZValue,
    pub numeric_residual: f64,
    pub branch_candidates: Option<[f64; 2]>,
}

fn log_det_angle(v: &CMatrix) -> (f64, Option<[f64; 2]>) {
    let det = v.determinant();
    let angle = det.arg() / (2.0 * PI);
    let branch = if det.im.abs() < 1e-12 && det.re < 0.0 {
        Some([0.5, -0.5f64.rem_euclid(1.0)])
    } else {
        None
    };
    (angle.rem_euclid(1.0), branch)
}

/// Winding-generator check for the mod-m coefficient group over the n x n
/// matrix algebra: integrate the winding-one loop in dimension `m * n`,
/// exponentiate `(2 pi i / m) Delta`, and read off the logarithmic
/// determinant.  The result must certify to `[1/m]`.
pub fn zeta_generator_check(m: u64, n: u64) -> Result<QZPairingResult> {
    if m < 2 || n < 1 {
        return Err(Error::OutOfRange(format!(
            "need coefficient index m >= 2 and matrix size n >= 1, got ({m}, {n})"
        )));
    }
    let dim = (m * n) as usize;
    let mut windings = vec![0i64; dim];
    windings[0] = 1;
    // run the sampled pipeline, not the closed form, so this stays an
    // independent numeric check
    let path = UnitaryPath::diagonal_winding_sampled(&windings, 64)?;
    let delta = dls_determinant(&path)?;
    let v = mat_exp(&(delta * Complex64::new(0.0, 2.0 * PI / m as f64)));
    check_unitary(&v, "exponentiated class")?;
    let (angle, branch_candidates) = log_det_angle(&v);
    let (value, numeric_residual) = certify_rational(angle, m, RESIDUAL_TOL)?;
    let expected = QZValue::new(1.into(), m.into())?;
    if value != expected {
        return Err(Error::Input(format!(
            "winding generator paired to {value}, expected {expected}"
        )));
    }
    Ok(QZPairingResult {
        value,
        numeric_residual,
        branch_candidates,
    })
}

/// `(1 / 2 pi i) log det(pi_u sigma_u*)` reduced mod 1 and certified with
/// the given denominator cap.
pub fn log_det_pairing(
    pi_u: &CMatrix,
    sigma_u: &CMatrix,
    denominator_cap: u64,
) -> Result<QZPairingResult> {
    check_unitary(pi_u, "pi(u)")?;
    check_unitary(sigma_u, "sigma(u)")?;
    if pi_u.nrows() != sigma_u.nrows() {
        return Err(Error::Shape(
            "the two representations must share a dimension".into(),
        ));
    }
    let (angle, branch_candidates) = log_det_angle(&(pi_u * sigma_u.adjoint()));
    let (value, numeric_residual) = certify_rational(angle, denominator_cap, RESIDUAL_TOL)?;
    Ok(QZPairingResult {
        value,
        numeric_residual,
        branch_candidates,
    })
}

/// 1 x 1 unitary `exp(2 pi i k / d)`.
pub fn root_of_unity_matrix(k: i64, d: u64) -> CMatrix {
    CMatrix::from_fn(1, 1, |_, _| {
        Complex64::from_polar(1.0, 2.0 * PI * k as f64 / d as f64)
    })
}

/// Does the logarithmic determinant of the order-d character agree with
/// the extension pairing of the multiplication-by-d class?
pub fn pairing_crosscheck_group(d: u64) -> Result<bool> {
    if d < 2 {
        return Err(Error::OutOfRange(format!("need d >= 2, got {d}")));
    }
    let lhs = log_det_pairing(&root_of_unity_matrix(1, d), &CMatrix::identity(1, 1), d)?;
    let x = ExtensionClass::mult_by_d(d)?;
    let delta = delta_via_extension(&x)?;
    let gen = delta.source().generator(0);
    let rhs = pairing_value(&delta, &gen)?;
    Ok(lhs.value == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_path_has_zero_determinant() {
        let path = UnitaryPath::constant_identity(3);
        let delta = dls_determinant(&path).unwrap();
        assert!(max_abs_entry(&delta) < 1e-12);
    }

    #[test]
    fn winding_paths_integrate_to_their_windings() {
        // closed form
        let path = UnitaryPath::diagonal_winding(&[1]);
        let delta = dls_determinant(&path).unwrap();
        assert!((delta[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-12);

        // m-fold winding in a 2-dimensional path, sampled numerically
        for m in [-2i64, 1, 3] {
            let path = UnitaryPath::diagonal_winding_sampled(&[m, 0], 128).unwrap();
            let delta = dls_determinant(&path).unwrap();
            assert!(
                (delta[(0, 0)] - Complex64::new(m as f64, 0.0)).norm() < 1e-9,
                "winding {m} lost"
            );
            assert!(delta[(1, 1)].norm() < 1e-12);
        }
    }

    #[test]
    fn coarse_sampling_is_rejected_with_refinement_hint() {
        // 4 segments of a full winding: gap |e^{i pi/2} - 1| = sqrt(2) > 0.5
        let err = UnitaryPath::diagonal_winding_sampled(&[1], 4).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("refine"), "unexpected message: {msg}");
    }

    #[test]
    fn non_unitary_samples_are_rejected() {
        let bad = CMatrix::from_fn(1, 1, |_, _| Complex64::new(2.0, 0.0));
        let id = CMatrix::identity(1, 1);
        assert!(UnitaryPath::from_samples(vec![(0.0, id), (1.0, bad)]).is_err());
    }

    #[test]
    fn determinant_is_hermitian_for_sampled_corpus() {
        for windings in [vec![1], vec![2, -1], vec![1, 0, -3]] {
            let path = UnitaryPath::diagonal_winding_sampled(&windings, 256).unwrap();
            let delta = dls_determinant(&path).unwrap();
            assert!(max_abs_entry(&(&delta - delta.adjoint())) < 1e-10);
        }
    }

    #[test]
    fn conjugated_winding_path_integrates_off_diagonal() {
        // u(t) = V diag(e^{4 pi i t}, 1) V* for a fixed non-diagonal unitary
        // V: a genuinely non-diagonal sampled path whose determinant matrix
        // is V diag(2, 0) V*
        // Gram-Schmidt a complex seed into an exact unitary conjugator
        let v = CMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => Complex64::new(0.8, 0.0),
            (0, 1) => Complex64::new(-0.5, 0.2),
            (1, 0) => Complex64::new(0.6, 0.1),
            _ => Complex64::new(0.7, 0.0),
        });
        let c0 = v.column(0).into_owned();
        let c0 = &c0 / Complex64::new(c0.norm(), 0.0);
        let mut c1 = v.column(1).into_owned();
        let overlap = c0.adjoint() * &c1;
        c1 -= &c0 * overlap[(0, 0)];
        let c1 = &c1 / Complex64::new(c1.norm(), 0.0);
        let v = CMatrix::from_fn(2, 2, |i, j| if j == 0 { c0[i] } else { c1[i] });
        check_unitary(&v, "conjugator").unwrap();

        let segments = 128;
        let samples: Vec<(f64, CMatrix)> = (0..=segments)
            .map(|k| {
                let t = k as f64 / segments as f64;
                let core = CMatrix::from_fn(2, 2, |i, j| {
                    if (i, j) == (0, 0) {
                        Complex64::from_polar(1.0, 4.0 * PI * t)
                    } else if i == j {
                        Complex64::new(1.0, 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                });
                (t, &v * core * v.adjoint())
            })
            .collect();
        let path = UnitaryPath::from_samples(samples).unwrap();
        let delta = dls_determinant(&path).unwrap();
        let core = CMatrix::from_fn(2, 2, |i, j| {
            if (i, j) == (0, 0) {
                Complex64::new(2.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let expected = &v * core * v.adjoint();
        assert!(
            max_abs_entry(&(&delta - &expected)) < 1e-8,
            "conjugated winding lost: got {delta:?}, want {expected:?}"
        );
    }

    #[test]
    fn closed_loop_winding_is_integer_and_resampling_stable() {
        for segments in [96usize, 128, 192] {
            let path = UnitaryPath::diagonal_winding_sampled(&[2, -1, 0], segments).unwrap();
            let delta = dls_determinant(&path).unwrap();
            let trace: Complex64 = delta.trace();
            assert!((trace.re - trace.re.round()).abs() < 1e-8);
            assert!((trace.re - 1.0).abs() < 1e-8, "total winding should be 1");
            assert!(trace.im.abs() < 1e-10);
        }
    }

    #[test]
    fn zeta_generator_values() {
        for (m, n) in [(3u64, 1u64), (2, 2), (12, 1), (4, 3)] {
            let r = zeta_generator_check(m, n).unwrap();
            assert_eq!(r.value, QZValue::from_i64(1, m as i64));
            assert!(r.numeric_residual < 1e-9);
        }
        assert!(zeta_generator_check(1, 1).is_err());
    }

    #[test]
    fn log_det_examples() {
        // e^{2 pi i / 3} against the trivial representation
        let r = log_det_pairing(&root_of_unity_matrix(1, 3), &CMatrix::identity(1, 1), 3).unwrap();
        assert_eq!(r.value, QZValue::from_i64(1, 3));

        // pi = sigma pairs to zero
        let u = root_of_unity_matrix(2, 7);
        let r = log_det_pairing(&u, &u, 7).unwrap();
        assert!(r.value.is_zero());

        // diag(i, i) against the identity: angles add to 1/2
        let pi_u = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 1.0),
        ]));
        let r = log_det_pairing(&pi_u, &CMatrix::identity(2, 2), 4).unwrap();
        assert_eq!(r.value, QZValue::from_i64(1, 2));
        // the determinant sits on the negative real axis: both branch
        // candidates are reported and agree mod 1
        let branches = r.branch_candidates.unwrap();
        assert!(crate::numeric::mod1_distance(branches[0], branches[1]) < 1e-12);
    }

    #[test]
    fn log_det_additivity_for_commuting_diagonals() {
        let a = root_of_unity_matrix(1, 5);
        let b = root_of_unity_matrix(1, 3);
        let ab = &a * &b;
        let id = CMatrix::identity(1, 1);
        let va = log_det_pairing(&a, &id, 15).unwrap().value;
        let vb = log_det_pairing(&b, &id, 15).unwrap().value;
        let vab = log_det_pairing(&ab, &id, 15).unwrap().value;
        assert_eq!(vab, va.add(&vb));
    }

    #[test]
    fn crosscheck_against_extension_pairing() {
        for d in [2, 5, 11, 24] {
            assert!(
                pairing_crosscheck_group(d).unwrap(),
                "determinant crosscheck failed at d = {d}"
            );
        }
    }
}
