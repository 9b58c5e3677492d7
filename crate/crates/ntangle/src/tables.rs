//! Hand-tabulated closed forms of the three- and five-qubit invariants.
//!
//! Each Z^k is `4 * bracket^2 + 16 * cofactor_a * cofactor_b` in the crate's
//! canonical normalization. Every pair `(i, j)` joins two basis indices that
//! agree in bit `n-k` and differ in every other bit (the bracket pairs
//! differ in all n bits); `cofactor_a` holds the pairs whose common bit is 0,
//! `cofactor_b` those whose common bit is 1. These tables are the fixture the
//! operator-string expansion is checked against, so they are written out
//! term by term rather than generated.

/// One degree-2 term `sign * a_i * a_j`.
pub(crate) type Pair = (u8, u8, i8);

pub(crate) struct ClosedForm {
    pub bracket: &'static [Pair],
    pub cofactor_a: &'static [Pair],
    pub cofactor_b: &'static [Pair],
}

pub(crate) const THREE_QUBIT: [ClosedForm; 3] = [
    ClosedForm {
        bracket: &[(0, 7, 1), (1, 6, -1), (2, 5, -1), (3, 4, 1)],
        cofactor_a: &[(0, 3, 1), (1, 2, -1)],
        cofactor_b: &[(5, 6, 1), (4, 7, -1)],
    },
    ClosedForm {
        bracket: &[(0, 7, 1), (1, 6, -1), (2, 5, 1), (3, 4, -1)],
        cofactor_a: &[(0, 5, 1), (1, 4, -1)],
        cofactor_b: &[(3, 6, 1), (2, 7, -1)],
    },
    ClosedForm {
        bracket: &[(0, 7, 1), (1, 6, 1), (2, 5, -1), (3, 4, -1)],
        cofactor_a: &[(0, 6, 1), (2, 4, -1)],
        cofactor_b: &[(3, 5, 1), (1, 7, -1)],
    },
];

pub(crate) const FIVE_QUBIT: [ClosedForm; 5] = [
    ClosedForm {
        bracket: &[
            (0, 31, 1),
            (1, 30, -1),
            (2, 29, -1),
            (3, 28, 1),
            (4, 27, -1),
            (5, 26, 1),
            (6, 25, 1),
            (7, 24, -1),
            (8, 23, -1),
            (9, 22, 1),
            (10, 21, 1),
            (11, 20, -1),
            (12, 19, 1),
            (13, 18, -1),
            (14, 17, -1),
            (15, 16, 1),
        ],
        cofactor_a: &[
            (0, 15, 1),
            (1, 14, -1),
            (2, 13, -1),
            (3, 12, 1),
            (4, 11, -1),
            (5, 10, 1),
            (6, 9, 1),
            (7, 8, -1),
        ],
        cofactor_b: &[
            (16, 31, -1),
            (17, 30, 1),
            (18, 29, 1),
            (19, 28, -1),
            (20, 27, 1),
            (21, 26, -1),
            (22, 25, -1),
            (23, 24, 1),
        ],
    },
    ClosedForm {
        bracket: &[
            (0, 31, 1),
            (1, 30, -1),
            (2, 29, -1),
            (3, 28, 1),
            (4, 27, -1),
            (5, 26, 1),
            (6, 25, 1),
            (7, 24, -1),
            (8, 23, 1),
            (9, 22, -1),
            (10, 21, -1),
            (11, 20, 1),
            (12, 19, -1),
            (13, 18, 1),
            (14, 17, 1),
            (15, 16, -1),
        ],
        cofactor_a: &[
            (0, 23, 1),
            (1, 22, -1),
            (2, 21, -1),
            (3, 20, 1),
            (4, 19, -1),
            (5, 18, 1),
            (6, 17, 1),
            (7, 16, -1),
        ],
        cofactor_b: &[
            (8, 31, -1),
            (9, 30, 1),
            (10, 29, 1),
            (11, 28, -1),
            (12, 27, 1),
            (13, 26, -1),
            (14, 25, -1),
            (15, 24, 1),
        ],
    },
    ClosedForm {
        bracket: &[
            (0, 31, 1),
            (1, 30, -1),
            (2, 29, -1),
            (3, 28, 1),
            (4, 27, 1),
            (5, 26, -1),
            (6, 25, -1),
            (7, 24, 1),
            (8, 23, -1),
            (9, 22, 1),
            (10, 21, 1),
            (11, 20, -1),
            (12, 19, -1),
            (13, 18, 1),
            (14, 17, 1),
            (15, 16, -1),
        ],
        cofactor_a: &[
            (0, 27, 1),
            (1, 26, -1),
            (2, 25, -1),
            (3, 24, 1),
            (8, 19, -1),
            (9, 18, 1),
            (10, 17, 1),
            (11, 16, -1),
        ],
        cofactor_b: &[
            (4, 31, -1),
            (5, 30, 1),
            (6, 29, 1),
            (7, 28, -1),
            (12, 23, 1),
            (13, 22, -1),
            (14, 21, -1),
            (15, 20, 1),
        ],
    },
    ClosedForm {
        bracket: &[
            (0, 31, 1),
            (1, 30, -1),
            (2, 29, 1),
            (3, 28, -1),
            (4, 27, -1),
            (5, 26, 1),
            (6, 25, -1),
            (7, 24, 1),
            (8, 23, -1),
            (9, 22, 1),
            (10, 21, -1),
            (11, 20, 1),
            (12, 19, 1),
            (13, 18, -1),
            (14, 17, 1),
            (15, 16, -1),
        ],
        cofactor_a: &[
            (0, 29, 1),
            (1, 28, -1),
            (4, 25, -1),
            (5, 24, 1),
            (8, 21, -1),
            (9, 20, 1),
            (12, 17, 1),
            (13, 16, -1),
        ],
        cofactor_b: &[
            (2, 31, -1),
            (3, 30, 1),
            (6, 27, 1),
            (7, 26, -1),
            (10, 23, 1),
            (11, 22, -1),
            (14, 19, -1),
            (15, 18, 1),
        ],
    },
    ClosedForm {
        bracket: &[
            (0, 31, 1),
            (1, 30, 1),
            (2, 29, -1),
            (3, 28, -1),
            (4, 27, -1),
            (5, 26, -1),
            (6, 25, 1),
            (7, 24, 1),
            (8, 23, -1),
            (9, 22, -1),
            (10, 21, 1),
            (11, 20, 1),
            (12, 19, 1),
            (13, 18, 1),
            (14, 17, -1),
            (15, 16, -1),
        ],
        cofactor_a: &[
            (0, 30, 1),
            (2, 28, -1),
            (4, 26, -1),
            (6, 24, 1),
            (8, 22, -1),
            (10, 20, 1),
            (12, 18, 1),
            (14, 16, -1),
        ],
        cofactor_b: &[
            (1, 31, -1),
            (3, 29, 1),
            (5, 27, 1),
            (7, 25, -1),
            (9, 23, 1),
            (11, 21, -1),
            (13, 19, -1),
            (15, 17, 1),
        ],
    },
];

pub(crate) fn closed_forms(n: usize) -> Option<&'static [ClosedForm]> {
    match n {
        3 => Some(&THREE_QUBIT),
        5 => Some(&FIVE_QUBIT),
        _ => None,
    }
}
