//! Golden tables for size 4 and the size-8 example, stored as printed factored forms.

use crate::matching::Matching;
use crate::poly::{q, q_frac, RatPoly, TauTPoly};
use crate::young::YoungDiagram;

/// A polynomial `(1/den) Π factors`, each factor a coefficient list from the constant term up.
#[derive(Clone, Copy, Debug)]
pub struct Factored {
    pub den: i64,
    pub factors: &'static [&'static [i64]],
}

impl Factored {
    pub fn expand(&self) -> RatPoly {
        self.factors.iter().fold(RatPoly::constant(q_frac(1, self.den)), |acc, f| &acc * &RatPoly::from_ints(f))
    }
}

/// `A_π(t)` for one matching of each conjugate pair of size 4.
pub const A_SIZE4: [(&str, Factored); 10] = [
    ("(((())))", Factored { den: 1, factors: &[] }),
    ("((()()))", Factored { den: 1, factors: &[&[3, 1]] }),
    ("((())())", Factored { den: 2, factors: &[&[2, 1], &[3, 1]] }),
    ("((()))()", Factored { den: 6, factors: &[&[1, 1], &[2, 1], &[3, 1]] }),
    ("(()()())", Factored { den: 6, factors: &[&[2, 1], &[21, 11, 2]] }),
    ("(()())()", Factored { den: 24, factors: &[&[1, 1], &[2, 1], &[36, 17, 3]] }),
    ("(())(())", Factored { den: 12, factors: &[&[1, 1], &[2, 1], &[2, 1], &[3, 1]] }),
    ("(())()()", Factored { den: 24, factors: &[&[1, 1], &[2, 1], &[3, 1], &[12, 4, 1]] }),
    ("()(())()", Factored { den: 60, factors: &[&[1, 1], &[180, 192, 108, 27, 3]] }),
    ("()()()()", Factored { den: 180, factors: &[&[1, 1], &[3, 1], &[420, 334, 155, 32, 4]] }),
];

/// `G_π` keyed by Young diagram rows.
pub const G_SIZE4: [(&[usize], i64); 10] = [
    (&[], 1),
    (&[1], -1),
    (&[2], 1),
    (&[2, 1], -3),
    (&[3], -1),
    (&[2, 2], 1),
    (&[3, 1], 4),
    (&[3, 1, 1], -9),
    (&[3, 2], -3),
    (&[3, 2, 1], 9),
];

/// `G_π(τ)` keyed by Young diagram rows, coefficients of `τ^0, τ^1, …`.
pub const G_TAU_SIZE4: [(&[usize], &[i64]); 14] = [
    (&[], &[1]),
    (&[1], &[0, -1]),
    (&[2], &[0, 0, 1]),
    (&[1, 1], &[0, 0, 1]),
    (&[2, 1], &[0, -2, 0, -1]),
    (&[3], &[0, 0, 0, -1]),
    (&[1, 1, 1], &[0, 0, 0, -1]),
    (&[2, 2], &[0, 0, 0, 0, 1]),
    (&[3, 1], &[0, 0, 3, 0, 1]),
    (&[2, 1, 1], &[0, 0, 3, 0, 1]),
    (&[3, 1, 1], &[0, -3, 0, -5, 0, -1]),
    (&[3, 2], &[0, 0, 0, -2, 0, -1]),
    (&[2, 2, 1], &[0, 0, 0, -2, 0, -1]),
    (&[3, 2, 1], &[0, 0, 3, 0, 5, 0, 1]),
];

/// Looks up a diagram in a table keyed by rows, accepting the transpose.
pub fn lookup<'a, T>(table: &'a [(&[usize], T)], y: &YoungDiagram) -> Option<&'a T> {
    let t = y.transpose();
    table.iter().find(|(rows, _)| *rows == y.rows() || *rows == t.rows()).map(|(_, v)| v)
}

/// The size-8 example with rows `[5,4,4,2]`.
pub mod pi0 {
    use super::*;

    pub const WORD: &str = "(((())())(()()))";
    pub const M: [usize; 7] = [0, 1, 2, 2, 2, 1, 1];
    pub const RIM_MULTISETS: [&[i64]; 3] = [&[2, 3, 3, 4], &[4, 5, 5], &[6, 7]];
    pub const ROOTS: [i64; 9] = [2, 3, 3, 4, 4, 5, 5, 6, 7];
    pub const DEN: i64 = 145_152_000;
    /// Constant term corrected to `1231200`; see [`Q_AS_PRINTED_CONSTANT`].
    pub const Q_COEFFS: [i64; 7] = [1_231_200, 757_456, 225_436, 39_660, 4_355, 284, 9];
    pub const Q_AS_PRINTED_CONSTANT: i64 = 123_120;
    pub const TAU_SHIFT: usize = 9;
    /// `(τ power, t power, coefficient)` of the bivariate cofactor.
    pub const Q_TAU: [(usize, usize, i64); 16] = [
        (0, 0, 84_000),
        (2, 0, 440_640),
        (2, 1, 151_440),
        (2, 2, 13_200),
        (4, 0, 523_680),
        (4, 1, 394_360),
        (4, 2, 110_520),
        (4, 3, 13_670),
        (4, 4, 630),
        (6, 0, 182_880),
        (6, 1, 211_656),
        (6, 2, 101_716),
        (6, 3, 25_990),
        (6, 4, 3_725),
        (6, 5, 284),
        (6, 6, 9),
    ];

    pub fn matching() -> Matching {
        WORD.parse().expect("fixture word")
    }

    fn root_part() -> RatPoly {
        RatPoly::from_roots(&ROOTS.map(|r| -r)).scale(&q_frac(1, DEN))
    }

    pub fn a_poly() -> RatPoly {
        &root_part() * &RatPoly::from_ints(&Q_COEFFS)
    }

    pub fn q_tau() -> TauTPoly {
        let mut rows = vec![vec![q(0); 7]; 7];
        for (i, j, c) in Q_TAU {
            rows[i][j] = q(c);
        }
        TauTPoly::new(rows)
    }

    pub fn psi_tau() -> TauTPoly {
        let tau9 = RatPoly::new([vec![q(0); TAU_SHIFT], vec![q(1)]].concat());
        &(&TauTPoly::from_t(&root_part()) * &TauTPoly::from_tau(&tau9)) * &q_tau()
    }
}
