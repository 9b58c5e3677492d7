//! Local invertible (SLOCC) transforms and the determinant-squared
//! covariance law they induce on the invariants.
//!
//! Applying one invertible 2x2 matrix per qubit sends every Z^k to
//! `Z^k * (prod_m det A_m)^2`; special-linear transforms (all det = 1)
//! leave the invariants unchanged. [`covariance_residual`] measures how
//! well a concrete (state, transform, k) triple satisfies this law, in
//! both the complex form and the modulus form.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::invariants::z_invariant;
use crate::pauli::{apply_matrix_in_place, Mat2};
use crate::state::{complex_standard_normal, QubitState};

/// Default relative tolerance for covariance residuals in double precision.
pub const DEFAULT_COVARIANCE_TOL: f64 = 1e-8;

/// Conditioning guard on sampled transforms: reject |det| below this.
/// Ill-conditioned factors amplify cancellation in the degree-4 forms.
pub const MIN_SAMPLED_DET: f64 = 0.1;

/// Conditioning guard on sampled transforms: reject entries above this.
pub const MAX_SAMPLED_ENTRY: f64 = 10.0;

const MAX_SAMPLING_ATTEMPTS: usize = 1000;

/// Which matrix group to sample from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransformKind {
    /// Conditioned general linear: Gaussian entries, det away from zero.
    GeneralLinear,
    /// Special linear: rescaled so det = 1 exactly.
    SpecialLinear,
}

impl std::str::FromStr for TransformKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "gl" => Ok(TransformKind::GeneralLinear),
            "sl" => Ok(TransformKind::SpecialLinear),
            other => Err(format!("unknown transform kind `{other}` (expected gl or sl)")),
        }
    }
}

pub fn det2(m: &Mat2) -> Complex64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// One invertible 2x2 matrix per qubit slot, slot 1 first.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalTransform {
    matrices: Vec<Mat2>,
}

impl LocalTransform {
    pub fn new(matrices: Vec<Mat2>) -> Result<Self> {
        for (slot0, m) in matrices.iter().enumerate() {
            if det2(m).norm() == 0.0 {
                return Err(Error::SingularMatrix(slot0 + 1));
            }
        }
        Ok(Self { matrices })
    }

    pub fn identity(n: usize) -> Self {
        let id = [
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        ];
        Self {
            matrices: vec![id; n],
        }
    }

    /// n independent conditioned random matrices, deterministic in `seed`.
    pub fn random(n: usize, seed: u64, kind: TransformKind) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let matrices = (0..n)
            .map(|_| sample_invertible(&mut rng, kind))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { matrices })
    }

    pub fn n(&self) -> usize {
        self.matrices.len()
    }

    pub fn matrices(&self) -> &[Mat2] {
        &self.matrices
    }

    /// Product of the n determinants (the covariance factor is its square).
    pub fn det_product(&self) -> Complex64 {
        self.matrices.iter().map(det2).product()
    }

    /// Parse the JSON transform format: a list of n 2x2 matrices of
    /// `[re, im]` pairs.
    pub fn parse(text: &str) -> Result<Self> {
        let raw: Vec<[[[f64; 2]; 2]; 2]> =
            serde_json::from_str(text).map_err(|e| Error::MalformedTransform(e.to_string()))?;
        let matrices = raw
            .iter()
            .map(|m| {
                [
                    [
                        Complex64::new(m[0][0][0], m[0][0][1]),
                        Complex64::new(m[0][1][0], m[0][1][1]),
                    ],
                    [
                        Complex64::new(m[1][0][0], m[1][0][1]),
                        Complex64::new(m[1][1][0], m[1][1][1]),
                    ],
                ]
            })
            .collect();
        Self::new(matrices)
    }

    pub fn to_json(&self) -> String {
        let raw: Vec<[[[f64; 2]; 2]; 2]> = self
            .matrices
            .iter()
            .map(|m| {
                [
                    [[m[0][0].re, m[0][0].im], [m[0][1].re, m[0][1].im]],
                    [[m[1][0].re, m[1][0].im], [m[1][1].re, m[1][1].im]],
                ]
            })
            .collect();
        serde_json::to_string(&raw).expect("transform serialization cannot fail")
    }
}

/// One conditioned random invertible matrix from a fresh seeded stream.
pub fn random_invertible(seed: u64, kind: TransformKind) -> Result<Mat2> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_invertible(&mut rng, kind)
}

fn sample_invertible<R: Rng>(rng: &mut R, kind: TransformKind) -> Result<Mat2> {
    for _ in 0..MAX_SAMPLING_ATTEMPTS {
        let m = [
            [complex_standard_normal(rng), complex_standard_normal(rng)],
            [complex_standard_normal(rng), complex_standard_normal(rng)],
        ];
        let det = det2(&m);
        let max_entry = m
            .iter()
            .flatten()
            .map(|e| e.norm())
            .fold(0.0f64, f64::max);
        if det.norm() < MIN_SAMPLED_DET || max_entry > MAX_SAMPLED_ENTRY {
            continue;
        }
        return Ok(match kind {
            TransformKind::GeneralLinear => m,
            TransformKind::SpecialLinear => {
                // Principal square root; det becomes exactly 1 up to rounding.
                let root = det.sqrt();
                [
                    [m[0][0] / root, m[0][1] / root],
                    [m[1][0] / root, m[1][1] / root],
                ]
            }
        });
    }
    Err(Error::SamplingExhausted(MAX_SAMPLING_ATTEMPTS))
}

/// Apply the transform slot by slot with the 2x2 bit-stride kernel;
/// O(n 2^n), no tensor product is ever materialized.
pub fn apply_transform(state: &QubitState, transform: &LocalTransform) -> Result<QubitState> {
    let n = state.n();
    if transform.n() != n {
        return Err(Error::TransformLengthMismatch {
            len: transform.n(),
            n,
        });
    }
    let mut amps = state.amplitudes().to_vec();
    for (slot0, m) in transform.matrices().iter().enumerate() {
        apply_matrix_in_place(&mut amps, n, slot0 + 1, m);
    }
    QubitState::new(amps)
}

/// How far one (state, transform, k) triple deviates from the covariance
/// law, relative to the predicted value.
#[derive(Clone, Copy, Debug)]
pub struct CovarianceResidual {
    /// `|Z^k(psi') - Z^k(psi) * (prod det)^2|` over the predicted magnitude.
    pub complex_form: f64,
    /// Same statement on moduli: `|tau_k(psi') - tau_k(psi) * |prod det|^2|`
    /// over the predicted magnitude.
    pub modulus_form: f64,
}

pub fn covariance_residual(
    state: &QubitState,
    transform: &LocalTransform,
    k: usize,
) -> Result<CovarianceResidual> {
    let before = z_invariant(state, k)?;
    let after = z_invariant(&apply_transform(state, transform)?, k)?;
    let factor = transform.det_product();
    let predicted = before * factor * factor;
    let scale = predicted.norm().max(1e-300);
    Ok(CovarianceResidual {
        complex_form: (after - predicted).norm() / scale,
        modulus_form: (after.norm() - predicted.norm()).abs() / scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::z_all;
    use crate::state::{basis, ghz, random_state};

    #[test]
    fn identity_transform_is_a_no_op() {
        let s = random_state(3, 1).unwrap();
        let t = LocalTransform::identity(3);
        assert_eq!(apply_transform(&s, &t).unwrap(), s);
        assert_eq!(t.det_product(), Complex64::new(1.0, 0.0));
        let r = covariance_residual(&s, &t, 1).unwrap();
        assert!(r.complex_form <= 1e-12);
        assert!(r.modulus_form <= 1e-12);
    }

    #[test]
    fn scalar_slot_matrix_scales_every_amplitude() {
        let c = Complex64::new(0.3, 1.7);
        let mut t = LocalTransform::identity(3);
        t.matrices[0] = [
            [c, Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), c],
        ];
        let s = random_state(3, 2).unwrap();
        let out = apply_transform(&s, &t).unwrap();
        for i in 0..8 {
            assert!((out.amplitude(i) - c * s.amplitude(i)).norm() < 1e-15);
        }
        // det = c^2, so Z scales by c^4: residual stays at rounding level.
        let r = covariance_residual(&s, &t, 1).unwrap();
        assert!(r.complex_form <= 1e-12);
    }

    #[test]
    fn x_matrix_at_slot_one_flips_the_top_bit() {
        let mut t = LocalTransform::identity(3);
        t.matrices[0] = [
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        ];
        let out = apply_transform(&basis(3, 0).unwrap(), &t).unwrap();
        assert_eq!(out.amplitude(4), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn det_product_multiplies_slot_determinants() {
        let mut t = LocalTransform::identity(3);
        t.matrices[1] = [
            [Complex64::new(2.0, 0.0), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::new(3.0, 0.0)],
        ];
        assert!((t.det_product() - Complex64::new(6.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn sampled_matrices_honor_the_conditioning_guard() {
        for seed in 0..1000 {
            let m = random_invertible(seed, TransformKind::GeneralLinear).unwrap();
            assert!(det2(&m).norm() >= MIN_SAMPLED_DET, "seed {seed}");
            for e in m.iter().flatten() {
                assert!(e.norm() <= MAX_SAMPLED_ENTRY);
            }
        }
    }

    #[test]
    fn sl_samples_have_unit_determinant() {
        for seed in 0..200 {
            let m = random_invertible(seed, TransformKind::SpecialLinear).unwrap();
            assert!((det2(&m) - Complex64::new(1.0, 0.0)).norm() <= 1e-12, "seed {seed}");
        }
        let t = LocalTransform::random(5, 77, TransformKind::SpecialLinear).unwrap();
        assert!((t.det_product() - Complex64::new(1.0, 0.0)).norm() <= 1e-10);
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = random_invertible(9, TransformKind::GeneralLinear).unwrap();
        let b = random_invertible(9, TransformKind::GeneralLinear).unwrap();
        assert_eq!(a, b);
        let ta = LocalTransform::random(3, 4, TransformKind::GeneralLinear).unwrap();
        let tb = LocalTransform::random(3, 4, TransformKind::GeneralLinear).unwrap();
        assert_eq!(ta, tb);
    }

    #[test]
    fn covariance_on_random_five_qubit_states() {
        for trial in 0..100 {
            let s = random_state(5, 1000 + trial).unwrap();
            let t = LocalTransform::random(5, 2000 + trial, TransformKind::GeneralLinear).unwrap();
            for k in 1..=5 {
                let r = covariance_residual(&s, &t, k).unwrap();
                assert!(
                    r.complex_form <= DEFAULT_COVARIANCE_TOL,
                    "trial {trial} k {k}: {}",
                    r.complex_form
                );
                assert!(r.modulus_form <= DEFAULT_COVARIANCE_TOL);
            }
        }
    }

    #[test]
    fn sl_transforms_leave_invariants_fixed() {
        for trial in 0..50 {
            let s = random_state(3, 500 + trial).unwrap();
            let t = LocalTransform::random(3, 600 + trial, TransformKind::SpecialLinear).unwrap();
            let before = z_all(&s).unwrap();
            let after = z_all(&apply_transform(&s, &t).unwrap()).unwrap();
            for k in 0..3 {
                let scale = before.z[k].norm().max(1e-6);
                assert!(
                    (before.z[k] - after.z[k]).norm() / scale <= DEFAULT_COVARIANCE_TOL,
                    "trial {trial} k {}",
                    k + 1
                );
            }
        }
    }

    #[test]
    fn permutation_relabels_the_invariant_family() {
        let perms: [[usize; 5]; 3] = [[2, 1, 3, 4, 5], [5, 4, 3, 2, 1], [3, 1, 4, 5, 2]];
        for (trial, perm) in perms.iter().enumerate() {
            let s = random_state(5, 300 + trial as u64).unwrap();
            let permuted = s.permute_qubits(perm).unwrap();
            for k in 1..=5 {
                let original = z_invariant(&s, k).unwrap();
                let relabeled = z_invariant(&permuted, perm[k - 1]).unwrap();
                assert!(
                    (original - relabeled).norm() <= 1e-10,
                    "perm {perm:?} k {k}"
                );
            }
        }
    }

    #[test]
    fn transform_json_round_trip() {
        let t = LocalTransform::random(3, 5, TransformKind::GeneralLinear).unwrap();
        let back = LocalTransform::parse(&t.to_json()).unwrap();
        assert_eq!(t, back);
        assert!(LocalTransform::parse("[[bad").is_err());
    }

    #[test]
    fn singular_matrices_are_rejected() {
        let zero = [[Complex64::new(0.0, 0.0); 2]; 2];
        assert!(matches!(
            LocalTransform::new(vec![zero]),
            Err(Error::SingularMatrix(1))
        ));
    }

    #[test]
    fn transform_length_must_match_state() {
        let s = ghz(3).unwrap();
        let t = LocalTransform::identity(4);
        assert!(matches!(
            apply_transform(&s, &t),
            Err(Error::TransformLengthMismatch { len: 4, n: 3 })
        ));
    }
}
