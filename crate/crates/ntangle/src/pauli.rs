//! Single-qubit operators, slot-wise application, and the bilinear pairing
//! underlying every invariant in this crate.
//!
//! # Conjugation convention
//!
//! `bilinear_form` is the conjugation-free pairing
//!
//! ```text
//! B(O) = sum_{i,j} a_i O_ij a_j = a^T (O a)
//! ```
//!
//! on the raw (unconjugated) amplitude vector. The bra-ket matrix elements
//! this models are the complex conjugate of `B(O)`, so any quantity built
//! from squared matrix elements agrees up to one global conjugation — and
//! moduli, equalities, and determinant-covariance statements are untouched.
//! The unconjugated pairing is used throughout because it reproduces the
//! tabulated closed-form amplitude polynomials literally.
//!
//! Evaluation is matrix-free: an operator string is applied as n successive
//! 2x2 bit-stride updates, O(n 2^n) total, never materializing the 2^n x 2^n
//! tensor product.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::QubitState;

/// A 2x2 complex matrix, row major.
pub type Mat2 = [[Complex64; 2]; 2];

/// The four operator labels usable in strings: identity, sigma_x, sigma_z,
/// and the spin flip T = i sigma_y. All entries are in {0, +-1}, which is
/// what makes exact integer expansion of the forms possible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OpLabel {
    I,
    X,
    Z,
    T,
}

impl OpLabel {
    /// Exact integer entries, row major.
    pub fn entries(self) -> [[i8; 2]; 2] {
        match self {
            OpLabel::I => [[1, 0], [0, 1]],
            OpLabel::X => [[0, 1], [1, 0]],
            OpLabel::Z => [[1, 0], [0, -1]],
            OpLabel::T => [[0, 1], [-1, 0]],
        }
    }

    pub fn matrix(self) -> Mat2 {
        let e = self.entries();
        [
            [
                Complex64::new(e[0][0] as f64, 0.0),
                Complex64::new(e[0][1] as f64, 0.0),
            ],
            [
                Complex64::new(e[1][0] as f64, 0.0),
                Complex64::new(e[1][1] as f64, 0.0),
            ],
        ]
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(OpLabel::I),
            'X' => Some(OpLabel::X),
            'Z' => Some(OpLabel::Z),
            'T' => Some(OpLabel::T),
            _ => None,
        }
    }

    fn as_char(self) -> char {
        match self {
            OpLabel::I => 'I',
            OpLabel::X => 'X',
            OpLabel::Z => 'Z',
            OpLabel::T => 'T',
        }
    }
}

/// One operator per qubit slot, slot 1 first. Renders as e.g. "XTTTT".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorString(Vec<OpLabel>);

impl OperatorString {
    pub fn new(ops: Vec<OpLabel>) -> Self {
        Self(ops)
    }

    /// The string with `label` at slot `k` and T everywhere else — the
    /// building block of every Z^k term.
    pub fn t_string_with(n: usize, k: usize, label: OpLabel) -> Result<Self> {
        if k < 1 || k > n {
            return Err(Error::SlotOutOfRange { slot: k, n });
        }
        let mut ops = vec![OpLabel::T; n];
        ops[k - 1] = label;
        Ok(Self(ops))
    }

    pub fn parse(text: &str) -> Option<Self> {
        text.chars().map(OpLabel::from_char).collect::<Option<Vec<_>>>().map(Self)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn labels(&self) -> &[OpLabel] {
        &self.0
    }
}

impl fmt::Display for OperatorString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for op in &self.0 {
            write!(f, "{}", op.as_char())?;
        }
        Ok(())
    }
}

/// Apply a 2x2 matrix to qubit slot `k` (1-based, qubit 1 = most significant
/// bit). Pairs of indices differing only in that bit are mixed; O(2^n).
pub fn apply_matrix(state: &QubitState, k: usize, m: &Mat2) -> Result<QubitState> {
    let n = state.n();
    if k < 1 || k > n {
        return Err(Error::SlotOutOfRange { slot: k, n });
    }
    let mut amps = state.amplitudes().to_vec();
    apply_matrix_in_place(&mut amps, n, k, m);
    QubitState::new(amps)
}

pub(crate) fn apply_matrix_in_place(amps: &mut [Complex64], n: usize, k: usize, m: &Mat2) {
    let stride = 1usize << (n - k);
    let dim = amps.len();
    let mut base = 0;
    while base < dim {
        for off in 0..stride {
            let i0 = base + off;
            let i1 = i0 + stride;
            let a0 = amps[i0];
            let a1 = amps[i1];
            amps[i0] = m[0][0] * a0 + m[0][1] * a1;
            amps[i1] = m[1][0] * a0 + m[1][1] * a1;
        }
        base += 2 * stride;
    }
}

/// Apply a labeled operator to one qubit slot.
pub fn apply_single(state: &QubitState, k: usize, op: OpLabel) -> Result<QubitState> {
    apply_matrix(state, k, &op.matrix())
}

/// The conjugation-free pairing `a^T (O a)` for a full operator string
/// (see the module docs for the convention). Matrix-free, O(n 2^n).
pub fn bilinear_form(state: &QubitState, ops: &OperatorString) -> Result<Complex64> {
    let n = state.n();
    if ops.len() != n {
        return Err(Error::OperatorLengthMismatch { len: ops.len(), n });
    }
    let mut amps = state.amplitudes().to_vec();
    for (slot0, &op) in ops.labels().iter().enumerate() {
        if op != OpLabel::I {
            apply_matrix_in_place(&mut amps, n, slot0 + 1, &op.matrix());
        }
    }
    Ok(state
        .amplitudes()
        .iter()
        .zip(&amps)
        .map(|(a, b)| a * b)
        .sum())
}
