//! The Z^k invariant family for odd qubit counts.
//!
//! `Z^k = B(X at k)^2 + B(Z at k)^2 - B(I at k)^2`, where each `B` is the
//! bilinear pairing of [`crate::pauli`] with T on every slot other than `k`.
//! The values are degree-4 homogeneous polynomials in the amplitudes, so no
//! normalization is assumed anywhere; `tau_k = |Z^k|` is reported for the
//! state exactly as given.
//!
//! For three qubits the k = 1, 2, 3 values coincide on every state and their
//! modulus is the residual tangle; for five qubits the five values are
//! generically pairwise distinct. Both facts are what the verification
//! suites and the symbolic module pin down.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pauli::{bilinear_form, OpLabel, OperatorString};
use crate::state::QubitState;
use crate::tables::{self, Pair};

/// Default absolute tolerance for declaring the per-k values equal.
pub const DEFAULT_EQUALITY_TOL: f64 = 1e-10;

/// Default threshold above which a pairwise gap counts as a genuine
/// inequality witness.
pub const DEFAULT_INEQUALITY_THRESHOLD: f64 = 1e-6;

/// Per-k invariant values of one state, their moduli, and the pairwise
/// spread used for the equality/inequality verdicts.
#[derive(Clone, Debug)]
pub struct InvariantReport {
    pub n: usize,
    pub z: Vec<Complex64>,
    pub tau: Vec<f64>,
    pub spread: f64,
    pub equal_within: f64,
}

#[derive(Serialize)]
struct ReportJson {
    n: usize,
    z: Vec<[f64; 2]>,
    tau: Vec<f64>,
    spread: f64,
    equal_within: f64,
}

impl InvariantReport {
    fn from_values(n: usize, z: Vec<Complex64>, equal_within: f64) -> Self {
        let tau = z.iter().map(|v| v.norm()).collect();
        let spread = pairwise_extremum(&z, f64::max);
        Self {
            n,
            z,
            tau,
            spread,
            equal_within,
        }
    }

    /// Smallest pairwise |Z^i - Z^j|; large values witness the generic
    /// five-qubit inequality.
    pub fn min_pairwise_gap(&self) -> f64 {
        pairwise_extremum(&self.z, f64::min)
    }

    /// Whether all per-k values agree within `equal_within`.
    pub fn all_equal(&self) -> bool {
        self.spread <= self.equal_within
    }

    pub fn to_json(&self) -> String {
        let json = ReportJson {
            n: self.n,
            z: self.z.iter().map(|v| [v.re, v.im]).collect(),
            tau: self.tau.clone(),
            spread: self.spread,
            equal_within: self.equal_within,
        };
        serde_json::to_string(&json).expect("report serialization cannot fail")
    }
}

fn pairwise_extremum(z: &[Complex64], pick: fn(f64, f64) -> f64) -> f64 {
    let mut acc: Option<f64> = None;
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            let gap = (z[i] - z[j]).norm();
            acc = Some(match acc {
                None => gap,
                Some(prev) => pick(prev, gap),
            });
        }
    }
    acc.unwrap_or(0.0)
}

fn check_odd_n(state: &QubitState) -> Result<usize> {
    let n = state.n();
    if n % 2 == 0 || n < 3 {
        return Err(Error::UnsupportedQubitCount(n));
    }
    Ok(n)
}

/// Z^k of an odd-n state via three matrix-free bilinear forms.
pub fn z_invariant(state: &QubitState, k: usize) -> Result<Complex64> {
    let n = check_odd_n(state)?;
    if k < 1 || k > n {
        return Err(Error::InvariantIndexOutOfRange { k, n });
    }
    let bx = bilinear_form(state, &OperatorString::t_string_with(n, k, OpLabel::X)?)?;
    let bz = bilinear_form(state, &OperatorString::t_string_with(n, k, OpLabel::Z)?)?;
    let bi = bilinear_form(state, &OperatorString::t_string_with(n, k, OpLabel::I)?)?;
    Ok(bx * bx + bz * bz - bi * bi)
}

/// All n invariants of one state, with the default equality tolerance.
pub fn z_all(state: &QubitState) -> Result<InvariantReport> {
    z_all_with_tolerance(state, DEFAULT_EQUALITY_TOL)
}

/// All n invariants, recording `equal_within` for the equality verdict.
pub fn z_all_with_tolerance(state: &QubitState, equal_within: f64) -> Result<InvariantReport> {
    let n = check_odd_n(state)?;
    let z = (1..=n)
        .map(|k| z_invariant(state, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(InvariantReport::from_values(n, z, equal_within))
}

/// tau_k = |Z^k| for the state as given (normalize first for unit-scale
/// values).
pub fn tau_k(state: &QubitState, k: usize) -> Result<f64> {
    Ok(z_invariant(state, k)?.norm())
}

fn eval_pairs(amps: &[Complex64], pairs: &[Pair]) -> Complex64 {
    pairs
        .iter()
        .map(|&(i, j, sign)| amps[i as usize] * amps[j as usize] * sign as f64)
        .sum()
}

fn closed_form_value(amps: &[Complex64], form: &tables::ClosedForm) -> Complex64 {
    let bracket = eval_pairs(amps, form.bracket);
    let u = eval_pairs(amps, form.cofactor_a);
    let v = eval_pairs(amps, form.cofactor_b);
    4.0 * (bracket * bracket) + 16.0 * (u * v)
}

/// The three Z^k of a 3-qubit state by direct evaluation of the tabulated
/// closed forms — no operator application, so this is an independent route
/// to cross-check [`z_invariant`].
pub fn z3_explicit(state: &QubitState) -> Result<[Complex64; 3]> {
    if state.n() != 3 {
        return Err(Error::WrongQubitCount {
            expected: 3,
            got: state.n(),
        });
    }
    let amps = state.amplitudes();
    let forms = tables::closed_forms(3).unwrap();
    Ok([
        closed_form_value(amps, &forms[0]),
        closed_form_value(amps, &forms[1]),
        closed_form_value(amps, &forms[2]),
    ])
}

/// The five Z^k of a 5-qubit state from the tabulated closed forms, scaled
/// to the crate's canonical normalization (four times the factor-free
/// tabulation, matching [`z_invariant`]).
pub fn z5_explicit(state: &QubitState) -> Result<[Complex64; 5]> {
    if state.n() != 5 {
        return Err(Error::WrongQubitCount {
            expected: 5,
            got: state.n(),
        });
    }
    let amps = state.amplitudes();
    let forms = tables::closed_forms(5).unwrap();
    let mut out = [Complex64::new(0.0, 0.0); 5];
    for (k0, form) in forms.iter().enumerate() {
        out[k0] = closed_form_value(amps, form);
    }
    Ok(out)
}

/// Residual tangle of a 3-qubit state as four times the modulus of the
/// 2x2x2 hyperdeterminant: `4 |d1 - 2 d2 + 4 d3|`. Entirely independent of
/// the bilinear-form pipeline; callers normalize for unit-scale values.
pub fn three_tangle_ckw(state: &QubitState) -> Result<f64> {
    if state.n() != 3 {
        return Err(Error::WrongQubitCount {
            expected: 3,
            got: state.n(),
        });
    }
    let a = state.amplitudes();
    let d1 = a[0] * a[0] * a[7] * a[7]
        + a[1] * a[1] * a[6] * a[6]
        + a[2] * a[2] * a[5] * a[5]
        + a[4] * a[4] * a[3] * a[3];
    let d2 = a[0] * a[7] * a[3] * a[4]
        + a[0] * a[7] * a[5] * a[2]
        + a[0] * a[7] * a[6] * a[1]
        + a[3] * a[4] * a[5] * a[2]
        + a[3] * a[4] * a[6] * a[1]
        + a[5] * a[2] * a[6] * a[1];
    let d3 = a[0] * a[6] * a[5] * a[3] + a[7] * a[1] * a[2] * a[4];
    Ok(4.0 * (d1 - 2.0 * d2 + 4.0 * d3).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{basis, ghz, random_state, w, QubitState};
    use crate::symbolic;

    const ONE: Complex64 = Complex64::new(1.0, 0.0);

    fn assert_close(a: Complex64, b: Complex64, tol: f64) {
        assert!((a - b).norm() <= tol, "{a} vs {b}");
    }

    #[test]
    fn ghz3_invariants_are_one() {
        let s = ghz(3).unwrap();
        for k in 1..=3 {
            assert_close(z_invariant(&s, k).unwrap(), ONE, 1e-15);
            assert!((tau_k(&s, k).unwrap() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn w3_invariants_vanish() {
        let s = w(3).unwrap();
        for k in 1..=3 {
            assert_close(z_invariant(&s, k).unwrap(), Complex64::new(0.0, 0.0), 1e-15);
        }
    }

    #[test]
    fn ghz5_invariants_are_one_with_zero_spread() {
        let s = ghz(5).unwrap();
        let report = z_all(&s).unwrap();
        for z in &report.z {
            assert_close(*z, ONE, 1e-15);
        }
        assert!(report.spread <= 1e-12);
        assert!(report.all_equal());
    }

    #[test]
    fn product_state_invariants_vanish() {
        let s = basis(5, 0).unwrap();
        let report = z_all(&s).unwrap();
        for z in &report.z {
            assert_close(*z, Complex64::new(0.0, 0.0), 1e-15);
        }
    }

    #[test]
    fn three_qubit_spread_vanishes_on_random_states() {
        for seed in 0..50 {
            let s = random_state(3, seed).unwrap();
            let report = z_all(&s).unwrap();
            assert!(report.spread <= 1e-10, "seed {seed}: spread {}", report.spread);
        }
    }

    #[test]
    fn five_qubit_values_are_generically_distinct() {
        for seed in 0..50 {
            let s = random_state(5, seed).unwrap();
            let report = z_all(&s).unwrap();
            assert!(
                report.min_pairwise_gap() > DEFAULT_INEQUALITY_THRESHOLD,
                "seed {seed}: min gap {}",
                report.min_pairwise_gap()
            );
        }
    }

    #[test]
    fn explicit_forms_agree_with_operator_route() {
        for seed in 0..100 {
            let s3 = random_state(3, seed).unwrap();
            let explicit = z3_explicit(&s3).unwrap();
            for k in 1..=3 {
                let z = z_invariant(&s3, k).unwrap();
                assert!((z - explicit[k - 1]).norm() <= 1e-12 * z.norm().max(1e-3));
            }

            let s5 = random_state(5, seed).unwrap();
            let explicit = z5_explicit(&s5).unwrap();
            for k in 1..=5 {
                let z = z_invariant(&s5, k).unwrap();
                assert!((z - explicit[k - 1]).norm() <= 1e-12 * z.norm().max(1e-3));
            }
        }
    }

    #[test]
    fn explicit_forms_on_named_states() {
        let e3 = z3_explicit(&ghz(3).unwrap()).unwrap();
        for v in e3 {
            assert_close(v, ONE, 1e-15);
        }
        let zeros = z3_explicit(&basis(3, 3).unwrap()).unwrap();
        for v in zeros {
            assert_close(v, Complex64::new(0.0, 0.0), 1e-15);
        }

        let e5 = z5_explicit(&ghz(5).unwrap()).unwrap();
        for v in e5 {
            assert_close(v, ONE, 1e-15);
        }
        let zeros = z5_explicit(&basis(5, 0).unwrap()).unwrap();
        for v in zeros {
            assert_close(v, Complex64::new(0.0, 0.0), 1e-15);
        }
    }

    #[test]
    fn symbolic_expansion_evaluates_to_the_numeric_value() {
        for (n, seed) in [(3usize, 5u64), (3, 6), (5, 5), (5, 6)] {
            let s = random_state(n, seed).unwrap();
            for k in 1..=n {
                let poly = symbolic::expand_z(n, k).unwrap();
                let via_poly = poly.evaluate(s.amplitudes());
                let direct = z_invariant(&s, k).unwrap();
                assert!(
                    (via_poly - direct).norm() <= 1e-10 * direct.norm().max(1e-3),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn ckw_tangle_on_named_states() {
        assert!((three_tangle_ckw(&ghz(3).unwrap()).unwrap() - 1.0).abs() < 1e-15);
        assert!(three_tangle_ckw(&w(3).unwrap()).unwrap() < 1e-15);

        // 0.6|000> + 0.8|111> has tangle 4*(0.6*0.8)^2 = 0.9216.
        let mut amps = vec![Complex64::new(0.0, 0.0); 8];
        amps[0] = Complex64::new(0.6, 0.0);
        amps[7] = Complex64::new(0.8, 0.0);
        let s = QubitState::new(amps).unwrap();
        assert!((three_tangle_ckw(&s).unwrap() - 0.9216).abs() < 1e-12);
        assert!((tau_k(&s, 1).unwrap() - 0.9216).abs() < 1e-12);
    }

    #[test]
    fn ckw_matches_tau_on_random_states() {
        for seed in 0..200 {
            let s = random_state(3, seed).unwrap();
            let ckw = three_tangle_ckw(&s).unwrap();
            let tau = tau_k(&s, 1).unwrap();
            assert!((ckw - tau).abs() <= 1e-10, "seed {seed}: {ckw} vs {tau}");
        }
    }

    #[test]
    fn degree_four_homogeneity() {
        let c = Complex64::new(0.37, -1.21);
        let c4 = c * c * c * c;
        for (n, seed) in [(3usize, 9u64), (5, 9)] {
            let s = random_state(n, seed).unwrap();
            let scaled = s.scaled(c);
            for k in 1..=n {
                let z = z_invariant(&s, k).unwrap();
                let zs = z_invariant(&scaled, k).unwrap();
                assert!(
                    (zs - c4 * z).norm() <= 1e-10 * (c4 * z).norm().max(1e-6),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn tau_stays_within_unit_bound_on_normalized_ensembles() {
        let mut max3: f64 = 0.0;
        let mut max5: f64 = 0.0;
        for seed in 0..500 {
            let r3 = z_all(&random_state(3, seed).unwrap()).unwrap();
            let r5 = z_all(&random_state(5, seed).unwrap()).unwrap();
            max3 = max3.max(r3.tau.iter().cloned().fold(0.0, f64::max));
            max5 = max5.max(r5.tau.iter().cloned().fold(0.0, f64::max));
        }
        assert!(max3 <= 1.0 + 1e-9, "observed three-qubit max tau {max3}");
        assert!(max5 <= 1.0 + 1e-9, "observed five-qubit max tau {max5}");
    }

    #[test]
    fn rejects_unsupported_qubit_counts() {
        let s4 = basis(4, 0).unwrap();
        assert!(matches!(
            z_invariant(&s4, 1),
            Err(Error::UnsupportedQubitCount(4))
        ));
        let s1 = basis(1, 0).unwrap();
        assert!(matches!(
            z_invariant(&s1, 1),
            Err(Error::UnsupportedQubitCount(1))
        ));
        let s3 = ghz(3).unwrap();
        assert!(matches!(
            z_invariant(&s3, 0),
            Err(Error::InvariantIndexOutOfRange { k: 0, n: 3 })
        ));
        assert!(z_invariant(&s3, 4).is_err());
        assert!(z3_explicit(&ghz(5).unwrap()).is_err());
        assert!(z5_explicit(&s3).is_err());
        assert!(three_tangle_ckw(&ghz(5).unwrap()).is_err());
    }

    #[test]
    fn report_json_shape() {
        let report = z_all(&ghz(3).unwrap()).unwrap();
        let text = report.to_json();
        assert!(text.starts_with(r#"{"n":3,"z":[["#));
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["z"].as_array().unwrap().len(), 3);
        assert_eq!(value["tau"].as_array().unwrap().len(), 3);
        assert!(value["spread"].as_f64().unwrap() >= 0.0);
        assert_eq!(value["equal_within"].as_f64().unwrap(), DEFAULT_EQUALITY_TOL);
    }
}
