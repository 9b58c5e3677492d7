//! Exact integer-coefficient expansion of bilinear forms and invariants.
//!
//! A [`Polynomial`] is a sparse map from sorted index multisets to `i64`
//! coefficients, in the amplitude indeterminates `a0..a_{2^n-1}`. All
//! arithmetic is exact (checked, no rounding), which lets the crate state
//! the three-qubit equality and the five-qubit inequality at the level of
//! coefficients instead of floating-point residuals.
//!
//! The closed-form fixtures [`z3_closed_form`] and [`z5_closed_form`] carry
//! their traditional normalizations: the three-qubit forms include the
//! leading factor 4 and equal [`expand_z`] exactly, while the five-qubit
//! forms are tabulated without it, so `expand_z(5, k)` equals four times
//! `z5_closed_form(k)`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::{OpLabel, OperatorString};
use crate::tables::{self, Pair};

/// A product of amplitude indeterminates, e.g. `{0, 3, 4, 7}` for
/// `a0*a3*a4*a7`. Indices are kept sorted; squares repeat an index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(mut indices: Vec<u32>) -> Self {
        indices.sort_unstable();
        Self(indices)
    }

    pub fn pair(i: u32, j: u32) -> Self {
        Self::new(vec![i, j])
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    fn product(&self, other: &Monomial) -> Monomial {
        let mut indices = Vec::with_capacity(self.0.len() + other.0.len());
        indices.extend_from_slice(&self.0);
        indices.extend_from_slice(&other.0);
        Monomial::new(indices)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for idx in &self.0 {
            write!(f, "*a{idx}")?;
        }
        Ok(())
    }
}

/// Sparse multivariate polynomial with exact integer coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, i64>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, monomial: &Monomial) -> i64 {
        self.terms.get(monomial).copied().unwrap_or(0)
    }

    /// Terms in canonical (lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn add_term(&mut self, monomial: Monomial, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(monomial);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().checked_add(coeff).expect("coefficient overflow");
                if sum == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.checked_neg().expect("coefficient overflow"));
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                let c = ca.checked_mul(cb).expect("coefficient overflow");
                out.add_term(ma.product(mb), c);
            }
        }
        out
    }

    pub fn scaled(&self, factor: i64) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in self.terms() {
            out.add_term(m.clone(), c.checked_mul(factor).expect("coefficient overflow"));
        }
        out
    }

    /// Substitute concrete amplitudes for the indeterminates.
    pub fn evaluate(&self, amplitudes: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in self.terms() {
            let mut prod = Complex64::new(c as f64, 0.0);
            for &idx in m.indices() {
                prod *= amplitudes[idx as usize];
            }
            acc += prod;
        }
        acc
    }
}

impl fmt::Display for Polynomial {
    /// Canonical rendering: monomials in lexicographic order, explicit signs
    /// and coefficients, e.g. `+4*a0*a0*a7*a7 -8*a0*a1*a6*a7`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (pos, (m, c)) in self.terms().enumerate() {
            if pos > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{}{m}", if c < 0 { '-' } else { '+' }, c.unsigned_abs())?;
        }
        Ok(())
    }
}

/// Outcome of an exact polynomial comparison. On mismatch, carries the first
/// differing monomial (in canonical order) and both coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyCmp {
    Equal,
    Differs {
        monomial: Monomial,
        left: i64,
        right: i64,
    },
}

impl PolyCmp {
    pub fn is_equal(&self) -> bool {
        matches!(self, PolyCmp::Equal)
    }
}

pub fn poly_equal(left: &Polynomial, right: &Polynomial) -> PolyCmp {
    let mut monomials: Vec<&Monomial> = left.terms.keys().chain(right.terms.keys()).collect();
    monomials.sort();
    monomials.dedup();
    for m in monomials {
        let l = left.coefficient(m);
        let r = right.coefficient(m);
        if l != r {
            return PolyCmp::Differs {
                monomial: m.clone(),
                left: l,
                right: r,
            };
        }
    }
    PolyCmp::Equal
}

/// Exact expansion of the pairing `sum_{i,j} a_i O_ij a_j` for an operator
/// string over {I, X, Z, T}. Each row of the tensor product has exactly one
/// nonzero entry, so the result has at most 2^n degree-2 terms.
pub fn expand_bilinear(n: usize, ops: &OperatorString) -> Result<Polynomial> {
    if ops.len() != n {
        return Err(Error::OperatorLengthMismatch { len: ops.len(), n });
    }
    let mut poly = Polynomial::zero();
    for i in 0..1usize << n {
        let mut j = 0usize;
        let mut coeff = 1i64;
        for (m, &op) in ops.labels().iter().enumerate() {
            let pos = n - 1 - m;
            let bit = (i >> pos) & 1;
            let (out_bit, sign) = match op {
                OpLabel::I => (bit, 1),
                OpLabel::X => (1 - bit, 1),
                OpLabel::Z => (bit, if bit == 1 { -1 } else { 1 }),
                OpLabel::T => (1 - bit, if bit == 0 { 1 } else { -1 }),
            };
            j |= out_bit << pos;
            coeff *= sign;
        }
        poly.add_term(Monomial::pair(i as u32, j as u32), coeff);
    }
    Ok(poly)
}

/// Exact degree-4 expansion of Z^k: `B_x^2 + B_z^2 - B_i^2` with T on every
/// slot other than k.
pub fn expand_z(n: usize, k: usize) -> Result<Polynomial> {
    if n % 2 == 0 || n < 3 {
        return Err(Error::UnsupportedQubitCount(n));
    }
    if k < 1 || k > n {
        return Err(Error::InvariantIndexOutOfRange { k, n });
    }
    let bx = expand_bilinear(n, &OperatorString::t_string_with(n, k, OpLabel::X)?)?;
    let bz = expand_bilinear(n, &OperatorString::t_string_with(n, k, OpLabel::Z)?)?;
    let bi = expand_bilinear(n, &OperatorString::t_string_with(n, k, OpLabel::I)?)?;
    Ok(bx.mul(&bx).add(&bz.mul(&bz)).sub(&bi.mul(&bi)))
}

fn pairs_poly(pairs: &[Pair]) -> Polynomial {
    let mut poly = Polynomial::zero();
    for &(i, j, sign) in pairs {
        poly.add_term(Monomial::pair(i as u32, j as u32), sign as i64);
    }
    poly
}

/// Tabulated three-qubit closed form of Z^k, including its leading factor 4:
/// `4*(bracket^2 + 4*cofactor_a*cofactor_b)`. Equals `expand_z(3, k)` exactly.
pub fn z3_closed_form(k: usize) -> Result<Polynomial> {
    let form = tables::closed_forms(3)
        .and_then(|f| f.get(k.wrapping_sub(1)))
        .ok_or(Error::InvariantIndexOutOfRange { k, n: 3 })?;
    let bracket = pairs_poly(form.bracket);
    let prod = pairs_poly(form.cofactor_a).mul(&pairs_poly(form.cofactor_b));
    Ok(bracket.mul(&bracket).add(&prod.scaled(4)).scaled(4))
}

/// Tabulated five-qubit closed form of Z^k in its factor-free normalization:
/// `bracket^2 + 4*cofactor_a*cofactor_b`. The operator expansion
/// `expand_z(5, k)` equals exactly four times this polynomial.
pub fn z5_closed_form(k: usize) -> Result<Polynomial> {
    let form = tables::closed_forms(5)
        .and_then(|f| f.get(k.wrapping_sub(1)))
        .ok_or(Error::InvariantIndexOutOfRange { k, n: 5 })?;
    let bracket = pairs_poly(form.bracket);
    let prod = pairs_poly(form.cofactor_a).mul(&pairs_poly(form.cofactor_b));
    Ok(bracket.mul(&bracket).add(&prod.scaled(4)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent expansion oracle: materialize the full 2^n x 2^n integer
    /// tensor product and collect sum_{i,j} M_ij x_i x_j directly.
    fn dense_expand(ops: &[OpLabel]) -> Polynomial {
        let mut matrix = vec![vec![1i64]];
        for op in ops {
            let e = op.entries();
            let dim = matrix.len();
            let mut next = vec![vec![0i64; dim * 2]; dim * 2];
            for (r, row) in matrix.iter().enumerate() {
                for (c, &val) in row.iter().enumerate() {
                    for rb in 0..2 {
                        for cb in 0..2 {
                            next[r * 2 + rb][c * 2 + cb] = val * e[rb][cb] as i64;
                        }
                    }
                }
            }
            matrix = next;
        }
        let mut poly = Polynomial::zero();
        for (i, row) in matrix.iter().enumerate() {
            for (j, &val) in row.iter().enumerate() {
                poly.add_term(Monomial::pair(i as u32, j as u32), val);
            }
        }
        poly
    }

    fn all_strings(n: usize) -> Vec<Vec<OpLabel>> {
        let labels = [OpLabel::I, OpLabel::X, OpLabel::Z, OpLabel::T];
        let mut out: Vec<Vec<OpLabel>> = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|s| {
                    labels.iter().map(move |&l| {
                        let mut t = s.clone();
                        t.push(l);
                        t
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn expansion_matches_dense_oracle_for_every_3_slot_string() {
        for labels in all_strings(3) {
            let ops = OperatorString::new(labels.clone());
            let fast = expand_bilinear(3, &ops).unwrap();
            let dense = dense_expand(&labels);
            assert!(
                poly_equal(&fast, &dense).is_equal(),
                "mismatch for {ops}: {fast} vs {dense}"
            );
        }
    }

    #[test]
    fn expansion_matches_dense_oracle_for_z_strings_n5() {
        for k in 1..=5 {
            for label in [OpLabel::X, OpLabel::Z, OpLabel::I, OpLabel::T] {
                let ops = OperatorString::t_string_with(5, k, label).unwrap();
                let fast = expand_bilinear(5, &ops).unwrap();
                let dense = dense_expand(ops.labels());
                assert!(poly_equal(&fast, &dense).is_equal(), "mismatch for {ops}");
            }
        }
    }

    #[test]
    fn xtt_expansion_is_twice_the_bracket() {
        let p = expand_bilinear(3, &OperatorString::parse("XTT").unwrap()).unwrap();
        let mut expected = Polynomial::zero();
        expected.add_term(Monomial::pair(0, 7), 2);
        expected.add_term(Monomial::pair(1, 6), -2);
        expected.add_term(Monomial::pair(2, 5), -2);
        expected.add_term(Monomial::pair(3, 4), 2);
        assert_eq!(p, expected);
    }

    #[test]
    fn single_t_is_antisymmetric_hence_zero() {
        let p = expand_bilinear(1, &OperatorString::parse("T").unwrap()).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn identity_string_gives_sum_of_squares() {
        let p = expand_bilinear(3, &OperatorString::parse("III").unwrap()).unwrap();
        assert_eq!(p.num_terms(), 8);
        for i in 0..8 {
            assert_eq!(p.coefficient(&Monomial::pair(i, i)), 1);
        }
    }

    #[test]
    fn three_qubit_expansions_match_closed_forms_and_each_other() {
        let z1 = expand_z(3, 1).unwrap();
        for k in 1..=3 {
            let zk = expand_z(3, k).unwrap();
            assert!(poly_equal(&zk, &z3_closed_form(k).unwrap()).is_equal(), "k={k}");
            assert!(poly_equal(&zk, &z1).is_equal(), "Z^{k} differs from Z^1");
        }
    }

    #[test]
    fn five_qubit_expansions_are_four_times_closed_forms() {
        for k in 1..=5 {
            let zk = expand_z(5, k).unwrap();
            let closed = z5_closed_form(k).unwrap().scaled(4);
            assert!(poly_equal(&zk, &closed).is_equal(), "k={k}");
        }
    }

    #[test]
    fn five_qubit_expansions_are_pairwise_distinct() {
        let zs: Vec<Polynomial> = (1..=5).map(|k| expand_z(5, k).unwrap()).collect();
        for i in 0..5 {
            for j in i + 1..5 {
                assert!(
                    !poly_equal(&zs[i], &zs[j]).is_equal(),
                    "Z^{} and Z^{} unexpectedly identical",
                    i + 1,
                    j + 1
                );
            }
        }
    }

    #[test]
    fn closed_form_spot_coefficients() {
        // 4*(a0 a7)^2 inside the first three-qubit form.
        let p3 = z3_closed_form(1).unwrap();
        assert_eq!(p3.coefficient(&Monomial::new(vec![0, 7, 0, 7])), 4);

        // (a0 a31)^2 inside the first five-qubit form (no leading factor).
        let p5 = z5_closed_form(1).unwrap();
        assert_eq!(p5.coefficient(&Monomial::new(vec![0, 31, 0, 31])), 1);

        // Cofactor cross term 4 * (a0 a27) * (-a4 a31) in the third form.
        let p5c = z5_closed_form(3).unwrap();
        assert_eq!(p5c.coefficient(&Monomial::new(vec![0, 27, 4, 31])), -4);
    }

    #[test]
    fn compare_reports_first_witness() {
        let p = expand_z(3, 1).unwrap();
        assert_eq!(poly_equal(&p, &p), PolyCmp::Equal);

        let mut q = p.clone();
        q.add_term(Monomial::new(vec![0, 0, 0, 0]), 1);
        match poly_equal(&p, &q) {
            PolyCmp::Differs { monomial, left, right } => {
                assert_eq!(monomial, Monomial::new(vec![0, 0, 0, 0]));
                assert_eq!((left, right), (0, 1));
            }
            PolyCmp::Equal => panic!("corruption not detected"),
        }
    }

    #[test]
    fn expand_z_rejects_even_or_small_n() {
        assert!(matches!(expand_z(4, 1), Err(Error::UnsupportedQubitCount(4))));
        assert!(matches!(expand_z(1, 1), Err(Error::UnsupportedQubitCount(1))));
        assert!(matches!(
            expand_z(3, 4),
            Err(Error::InvariantIndexOutOfRange { k: 4, n: 3 })
        ));
    }

    #[test]
    fn display_is_canonical() {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::new(vec![0, 0, 7, 7]), 4);
        p.add_term(Monomial::new(vec![0, 1, 6, 7]), -8);
        assert_eq!(p.to_string(), "+4*a0*a0*a7*a7 -8*a0*a1*a6*a7");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    fn sparse_poly_strategy() -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec(
            (proptest::collection::vec(0u32..8, 1..4), -50i64..50),
            0..12,
        )
        .prop_map(|terms| {
            let mut p = Polynomial::zero();
            for (idx, c) in terms {
                p.add_term(Monomial::new(idx), c);
            }
            p
        })
    }

    proptest! {
        #[test]
        fn add_then_sub_is_identity(p in sparse_poly_strategy(), q in sparse_poly_strategy()) {
            prop_assert_eq!(p.add(&q).sub(&q), p);
        }

        #[test]
        fn mul_is_commutative(p in sparse_poly_strategy(), q in sparse_poly_strategy()) {
            prop_assert_eq!(p.mul(&q), q.mul(&p));
        }
    }
}
