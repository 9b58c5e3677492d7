//! Pure-state representation, file I/O, a catalog of named states, and
//! seeded random state generation.
//!
//! Basis indexing puts qubit 1 in the most significant bit: the amplitude
//! `a[i]` belongs to the bitstring `b1 b2 .. bn` with `i = sum_m b_m * 2^(n-m)`.
//! For three qubits, `a[4]` is the amplitude of `|100>`.
//!
//! States are plain immutable values. Normalization is never required:
//! every invariant in this crate is a homogeneous polynomial in the
//! amplitudes, so callers normalize only when they want unit-norm numbers.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, MAX_QUBITS};

/// An n-qubit pure state: 2^n complex amplitudes in basis-index order.
#[derive(Clone, Debug, PartialEq)]
pub struct QubitState {
    n: usize,
    amplitudes: Vec<Complex64>,
}

/// On-disk form: `{"n": 3, "amplitudes": [[re, im], ...]}`.
#[derive(Serialize, Deserialize)]
struct StateFile {
    n: usize,
    amplitudes: Vec<[f64; 2]>,
}

impl QubitState {
    /// Build a state from raw amplitudes. The qubit count is inferred from
    /// the length, which must be a power of two between 2 and 2^15.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() || len > (1 << MAX_QUBITS) {
            return Err(Error::BadAmplitudeCount(len));
        }
        for (i, a) in amplitudes.iter().enumerate() {
            if !a.re.is_finite() || !a.im.is_finite() {
                return Err(Error::NonFiniteAmplitude(i));
            }
        }
        let n = len.trailing_zeros() as usize;
        Ok(Self { n, amplitudes })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Statevector dimension 2^n.
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    /// Euclidean norm sqrt(sum |a_i|^2).
    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Unit-norm copy of this state. Fails on the zero state.
    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm();
        if norm == 0.0 {
            return Err(Error::ZeroNorm);
        }
        Ok(self.scaled(Complex64::new(1.0 / norm, 0.0)))
    }

    /// Every amplitude multiplied by `c`.
    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            n: self.n,
            amplitudes: self.amplitudes.iter().map(|a| a * c).collect(),
        }
    }

    /// Parse the canonical JSON state format. Reading is whitespace-insensitive;
    /// the declared `n` must match the amplitude count.
    pub fn parse(text: &str) -> Result<Self> {
        let file: StateFile =
            serde_json::from_str(text).map_err(|e| Error::MalformedState(e.to_string()))?;
        let len = file.amplitudes.len();
        if len != 1usize.checked_shl(file.n as u32).unwrap_or(0) || file.n > MAX_QUBITS {
            return Err(Error::BadAmplitudeCount(len));
        }
        let amplitudes = file
            .amplitudes
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        Self::new(amplitudes)
    }

    /// Canonical JSON form, full double precision (round-trips bit-exactly).
    pub fn to_json(&self) -> String {
        let file = StateFile {
            n: self.n,
            amplitudes: self.amplitudes.iter().map(|a| [a.re, a.im]).collect(),
        };
        serde_json::to_string(&file).expect("state serialization cannot fail")
    }

    /// Relabel qubits: qubit `m` of `self` becomes qubit `perm[m-1]` of the
    /// output. `perm` must be a bijection on 1..=n.
    pub fn permute_qubits(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n;
        if perm.len() != n {
            return Err(Error::NotAPermutation(perm.to_vec()));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p < 1 || p > n || seen[p - 1] {
                return Err(Error::NotAPermutation(perm.to_vec()));
            }
            seen[p - 1] = true;
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim()];
        for (i, &a) in self.amplitudes.iter().enumerate() {
            let mut j = 0usize;
            for m in 1..=n {
                let bit = (i >> (n - m)) & 1;
                j |= bit << (n - perm[m - 1]);
            }
            out[j] = a;
        }
        Ok(Self {
            n,
            amplitudes: out,
        })
    }
}

/// GHZ state (|0..0> + |1..1>)/sqrt(2).
pub fn ghz(n: usize) -> Result<QubitState> {
    check_n(n)?;
    let dim = 1 << n;
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    let x = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    amps[0] = x;
    amps[dim - 1] = x;
    QubitState::new(amps)
}

/// W state: uniform superposition of the n weight-1 bitstrings, amplitude
/// 1/sqrt(n) each.
pub fn w(n: usize) -> Result<QubitState> {
    check_n(n)?;
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    let x = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
    for m in 0..n {
        amps[1 << m] = x;
    }
    QubitState::new(amps)
}

/// Computational basis state |index> (unit amplitude at one index).
pub fn basis(n: usize, index: usize) -> Result<QubitState> {
    check_n(n)?;
    let dim = 1 << n;
    if index >= dim {
        return Err(Error::BasisIndexOutOfRange { index, n });
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    amps[index] = Complex64::new(1.0, 0.0);
    QubitState::new(amps)
}

/// Look up a named state: `ghz`, `w`, `product-zero`, or `basis:i`.
pub fn standard_state(name: &str, n: usize) -> Result<QubitState> {
    match name {
        "ghz" => ghz(n),
        "w" => w(n),
        "product-zero" => basis(n, 0),
        _ => {
            if let Some(idx) = name.strip_prefix("basis:") {
                let index: usize = idx
                    .parse()
                    .map_err(|_| Error::UnknownStandardState(name.to_string()))?;
                basis(n, index)
            } else {
                Err(Error::UnknownStandardState(name.to_string()))
            }
        }
    }
}

/// Haar-random unit state: every amplitude drawn as an iid standard complex
/// Gaussian, then normalized. Deterministic for a fixed `(n, seed)` pair.
pub fn random_state(n: usize, seed: u64) -> Result<QubitState> {
    check_n(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let amps: Vec<Complex64> = (0..1usize << n)
        .map(|_| complex_standard_normal(&mut rng))
        .collect();
    QubitState::new(amps)?.normalized()
}

/// One draw with independent N(0,1) real and imaginary parts, via Box-Muller
/// on the raw uniform stream (keeps seeded output stable across dependency
/// upgrades).
pub(crate) fn complex_standard_normal<R: Rng>(rng: &mut R) -> Complex64 {
    let u1: f64 = 1.0 - rng.gen::<f64>(); // (0, 1], log is finite
    let u2: f64 = rng.gen();
    let r = (-2.0 * u1.ln()).sqrt();
    Complex64::new(r * (TAU * u2).cos(), r * (TAU * u2).sin())
}

fn check_n(n: usize) -> Result<()> {
    if n < 1 || n > MAX_QUBITS {
        return Err(Error::BadAmplitudeCount(1usize.checked_shl(n as u32).unwrap_or(0)));
    }
    Ok(())
}
