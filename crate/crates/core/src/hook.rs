//! Hook and content formulas, binomial determinants and tableau counts.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use crate::error::{ensure, Result};
use crate::matching::Matching;
use crate::poly::{binom, det, factorial_q, interpolate, q, q_frac, RatPoly, Q};
use crate::young::YoungDiagram;

fn inv_hook(y: &YoungDiagram) -> Q {
    Q::from_integer(y.hook_product().into()).recip()
}

/// `Π_u (t + c(u)) / H`, which counts semistandard fillings with entries `≤ t` at integers.
pub fn s_sigma(sigma: &Matching) -> RatPoly {
    let y = sigma.young();
    y.boxes()
        .into_iter()
        .fold(RatPoly::one(), |acc, u| &acc * &RatPoly::linear(q(YoungDiagram::content(u))))
        .scale(&inv_hook(&y))
}

/// `S_σ(t - n + 1)`.
pub fn s_sigma_shifted(sigma: &Matching) -> RatPoly {
    s_sigma(sigma).shift(&q(1 - sigma.size() as i64))
}

/// The matrix `C(t + i - 1, a_i - j)` at a given `t`.
fn binomial_matrix(a: &[usize], t: &Q) -> Vec<Vec<Q>> {
    let n = a.len();
    (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| {
                    let k = a[i - 1] as i64 - j as i64;
                    if k < 0 {
                        Q::zero()
                    } else {
                        binom(&(t + q(i as i64 - 1)), k as usize)
                    }
                })
                .collect()
        })
        .collect()
}

pub fn d_det_at(pi: &Matching, t: &Q) -> Q {
    det(binomial_matrix(&pi.a_seq(), t))
}

/// `det C(t + i - 1, a_i - j)` as a polynomial in `t`, of degree `d(π)`.
pub fn d_det(pi: &Matching) -> RatPoly {
    let d = pi.d();
    let pts: Vec<(Q, Q)> = (0..=d as i64).map(|x| (q(x), d_det_at(pi, &q(x)))).collect();
    interpolate(&pts).unwrap()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TableauMode {
    /// Entries in `1..=bound`, strictly increasing along rows and columns.
    Strict,
    /// Entries in `0..=bound`, weakly increasing along rows and columns.
    Weak,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct TableauCount {
    pub rows: Vec<usize>,
    pub bound: i64,
    pub mode: TableauMode,
    pub count: u128,
}

/// Counts fillings of `y` row by row, memoized on the row above.
pub fn count_tableaux(y: &YoungDiagram, bound: i64, mode: TableauMode) -> TableauCount {
    let (lo, strict) = match mode {
        TableauMode::Strict => (1, true),
        TableauMode::Weak => (0, false),
    };
    let rows = y.rows().to_vec();
    let mut memo: HashMap<(usize, Vec<i64>), u128> = HashMap::new();
    let count = if bound < lo && !rows.is_empty() { 0 } else { fill(&rows, 0, &[], lo, bound, strict, &mut memo) };
    TableauCount { rows, bound, mode, count }
}

fn fill(
    rows: &[usize],
    x: usize,
    above: &[i64],
    lo: i64,
    hi: i64,
    strict: bool,
    memo: &mut HashMap<(usize, Vec<i64>), u128>,
) -> u128 {
    if x == rows.len() {
        return 1;
    }
    if let Some(&c) = memo.get(&(x, above.to_vec())) {
        return c;
    }
    let mut row = vec![0i64; rows[x]];
    let mut total = 0;
    fn row_rec(
        rows: &[usize],
        x: usize,
        y: usize,
        row: &mut Vec<i64>,
        above: &[i64],
        lo: i64,
        hi: i64,
        strict: bool,
        memo: &mut HashMap<(usize, Vec<i64>), u128>,
        total: &mut u128,
    ) {
        if y == row.len() {
            *total += fill(rows, x + 1, row, lo, hi, strict, memo);
            return;
        }
        let step = strict as i64;
        let mut min = lo;
        if y > 0 {
            min = min.max(row[y - 1] + step);
        }
        if let Some(&up) = above.get(y) {
            min = min.max(up + step);
        }
        for v in min..=hi {
            row[y] = v;
            row_rec(rows, x, y + 1, row, above, lo, hi, strict, memo, total);
        }
    }
    row_rec(rows, x, 0, &mut row, above, lo, hi, strict, memo, &mut total);
    memo.insert((x, above.to_vec()), total);
    total
}

fn corner_terms(pi: &Matching) -> Vec<((usize, usize), Q)> {
    let y = pi.young();
    y.corners().into_iter().map(|b| (b, inv_hook(&y.remove_box(b)))).collect()
}

fn content_term(pi: &Matching) -> Q {
    let y = pi.young();
    q(y.content_sum()) * inv_hook(&y)
}

/// `Σc/H + Σ_corners (n - y) / H_{π - corner}`.
pub fn subleading_by_columns(pi: &Matching) -> Q {
    let n = pi.size() as i64;
    corner_terms(pi).into_iter().fold(content_term(pi), |acc, ((_, y), h)| acc + q(n - y as i64) * h)
}

/// `-Σc/H + Σ_corners (n - x) / H_{π - corner}`.
pub fn subleading_by_rows(pi: &Matching) -> Q {
    let n = pi.size() as i64;
    corner_terms(pi).into_iter().fold(-content_term(pi), |acc, ((x, _), h)| acc + q(n - x as i64) * h)
}

/// `½ Σ_corners (2n - x - y) / H_{π - corner}`, the mean of the two expressions above.
pub fn subleading_averaged(pi: &Matching) -> Q {
    subleading_corner_sum(pi) * q_frac(1, 2)
}

/// `Σ_corners (2n - x - y) / H_{π - corner}` without the halving.
pub fn subleading_corner_sum(pi: &Matching) -> Q {
    let n = pi.size() as i64;
    corner_terms(pi).into_iter().fold(Q::zero(), |acc, ((x, y), h)| acc + q(2 * n - x as i64 - y as i64) * h)
}

/// Coefficient of `t^{d-1}` in `A_π(t)` from hook data; both expressions must agree and be positive.
pub fn subleading(pi: &Matching) -> Result<Q> {
    ensure!(pi.d() > 0, "{pi} has no subleading coefficient");
    let a = subleading_by_columns(pi);
    let b = subleading_by_rows(pi);
    ensure!(a == b, "subleading expressions disagree for {pi}: {a} vs {b}");
    ensure!(a == subleading_averaged(pi), "averaged subleading expression differs for {pi}");
    ensure!(a.is_positive(), "subleading coefficient of {pi} is {a}");
    Ok(a)
}

/// `d / H_Y = Σ_corners 1 / H_{Y - corner}`.
pub fn hook_length_recursion(y: &YoungDiagram) -> bool {
    let rhs = y.corners().into_iter().fold(Q::zero(), |acc, b| acc + inv_hook(&y.remove_box(b)));
    q(y.size() as i64) * inv_hook(y) == rhs
}

/// The two content identities: `2Σc/H` against the corner sum and against the domino sum.
pub fn hook_identities(y: &YoungDiagram) -> bool {
    let lhs = q(2 * y.content_sum()) * inv_hook(y);
    let corners = y
        .corners()
        .into_iter()
        .fold(Q::zero(), |acc, (bx, by)| acc + q(by as i64 - bx as i64) * inv_hook(&y.remove_box((bx, by))));
    let h: Q = y.horizontal_domino_removals().iter().map(inv_hook).sum();
    let v: Q = y.vertical_domino_removals().iter().map(inv_hook).sum();
    lhs == corners && lhs == h - v
}

/// The matrix `1/(a_i - j)!`, zero where `a_i < j`.
fn inverse_factorial_matrix(a: &[usize]) -> Vec<Vec<Q>> {
    let n = a.len();
    (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| {
                    let k = a[i - 1] as i64 - j as i64;
                    if k < 0 {
                        Q::zero()
                    } else {
                        factorial_q(k as usize).recip()
                    }
                })
                .collect()
        })
        .collect()
}

/// `det 1/(a_i - j)!`, which equals `1/H` for the diagram of `π`.
pub fn inverse_factorial_det(pi: &Matching) -> Q {
    det(inverse_factorial_matrix(&pi.a_seq()))
}

/// Both sides of the row-weighted determinant identity: the sum over `k` of the determinant
/// with row `k` weighted by `(a_i-j)(a_i-j-1)`, and `Σ_k (a_k-k)(a_k-2n+k-1) · det`.
pub fn o1_det(pi: &Matching) -> (Q, Q) {
    let a = pi.a_seq();
    let n = a.len();
    let m = inverse_factorial_matrix(&a);
    let mut lhs = Q::zero();
    for k in 0..n {
        let mut mk = m.clone();
        for (j, v) in mk[k].iter_mut().enumerate() {
            let s = a[k] as i64 - (j as i64 + 1);
            *v *= q(s * (s - 1));
        }
        lhs += det(mk);
    }
    let weight: i64 = (1..=n)
        .map(|k| {
            let ak = a[k - 1] as i64;
            let k = k as i64;
            (ak - k) * (ak - 2 * n as i64 + k - 1)
        })
        .sum();
    (lhs, q(weight) * det(m))
}

/// Whether `Q = 1/H` holds through the determinant.
pub fn hook_det_identity(pi: &Matching) -> bool {
    inverse_factorial_det(pi) == inv_hook(&pi.young())
}

/// `(-1)^k`
pub fn sign(k: usize) -> Q {
    if k.is_multiple_of(2) {
        Q::one()
    } else {
        -Q::one()
    }
}
