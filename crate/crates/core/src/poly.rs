//! Exact polynomials over the rationals in one variable `t`, and in two variables `(τ, t)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(a: i64, b: i64) -> Q {
    Q::new(BigInt::from(a), BigInt::from(b))
}

fn parse_q(s: &str) -> Option<Q> {
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            (!b.is_zero()).then(|| Q::new(a, b))
        }
        None => Some(Q::from_integer(s.trim().parse().ok()?)),
    }
}

/// Dense univariate polynomial, ascending coefficients, never with a trailing zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    c: Vec<Q>,
}

impl RatPoly {
    pub fn new(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        RatPoly { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| q(v)).collect())
    }

    pub fn zero() -> Self {
        RatPoly { c: vec![] }
    }

    pub fn constant(v: Q) -> Self {
        Self::new(vec![v])
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    /// `t + a`
    pub fn linear(a: Q) -> Self {
        Self::new(vec![a, Q::one()])
    }

    pub fn t() -> Self {
        Self::linear(Q::zero())
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.c.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn leading(&self) -> Q {
        self.c.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.c.iter().rev().fold(Q::zero(), |acc, a| acc * x + a)
    }

    pub fn eval_int(&self, x: i64) -> Q {
        self.eval(&q(x))
    }

    pub fn scale(&self, k: &Q) -> Self {
        Self::new(self.c.iter().map(|a| a * k).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.c.iter().enumerate().skip(1).map(|(i, a)| a * q(i as i64)).collect())
    }

    /// `P(t + a)`
    pub fn shift(&self, a: &Q) -> Self {
        let step = Self::linear(a.clone());
        self.c.iter().rev().fold(Self::zero(), |acc, coef| &(&acc * &step) + &Self::constant(coef.clone()))
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Q::zero(); r.len() - dd];
        for i in (0..quot.len()).rev() {
            let f = &r[i + dd] / &lead;
            if !f.is_zero() {
                for (j, dc) in d.c.iter().enumerate() {
                    r[i + j] -= &f * dc;
                }
            }
            quot[i] = f;
        }
        r.truncate(dd);
        (Self::new(quot), Self::new(r))
    }

    /// Exact quotient, or `None` if `d` does not divide.
    pub fn exact_div(&self, d: &RatPoly) -> Option<RatPoly> {
        let (quot, r) = self.div_rem(d);
        r.is_zero().then_some(quot)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.leading().recip())
    }

    pub fn gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// The product of the distinct irreducible factors, monic.
    pub fn squarefree(&self) -> RatPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = Self::gcd(self, &self.derivative());
        self.exact_div(&g).unwrap().monic()
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.c.iter().all(|a| a.is_integer())
    }

    pub fn from_roots(roots: &[i64]) -> Self {
        roots.iter().fold(Self::one(), |acc, &r| &acc * &Self::linear(q(-r)))
    }

    /// Expands in the basis `C(t+d-i, d)`, `i = 0..=d`, with `d` the degree.
    pub fn binomial_basis(&self) -> Vec<Q> {
        let Some(d) = self.degree() else { return vec![] };
        let basis = |i: usize, x: &Q| binom(&(x + q(d as i64 - i as i64)), d);
        // triangular at t = -1, -2, ..., -(d+1): only b_d, ..., b_{d-k} are nonzero at t = -(k+1)
        let mut c = vec![Q::zero(); d + 1];
        for k in 0..=d {
            let x = q(-(k as i64) - 1);
            let mut v = self.eval(&x);
            for (i, ci) in c.iter().enumerate().skip(d - k + 1) {
                v -= ci * basis(i, &x);
            }
            c[d - k] = v / basis(d - k, &x);
        }
        c
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "var": "t",
            "coeffs": self.c.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let coeffs = v["coeffs"].as_array().ok_or_else(|| Error::Syntax("polynomial without coeffs".into()))?;
        coeffs
            .iter()
            .map(|c| c.as_str().and_then(parse_q).ok_or_else(|| Error::Syntax(format!("coefficient {c}"))))
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

/// Generalized binomial coefficient `x (x-1) ... (x-k+1) / k!`.
pub fn binom(x: &Q, k: usize) -> Q {
    (0..k).fold(Q::one(), |acc, i| acc * (x - q(i as i64)) / q(i as i64 + 1))
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            let abs = a.abs();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                _ => {}
            }
            first = false;
            let unit = abs.is_one() && i > 0;
            if !unit {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}t", if unit { "" } else { "*" })?,
                _ => write!(f, "{}t^{i}", if unit { "" } else { "*" })?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, o: &RatPoly) -> RatPoly {
        let n = self.c.len().max(o.c.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, o: &RatPoly) -> RatPoly {
        let n = self.c.len().max(o.c.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.c.iter().map(|a| -a).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, o: &RatPoly) -> RatPoly {
        if self.is_zero() || o.is_zero() {
            return RatPoly::zero();
        }
        let mut c = vec![Q::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        RatPoly::new(c)
    }
}

/// The unique polynomial of degree below `points.len()` through the given points.
pub fn interpolate(points: &[(Q, Q)]) -> Result<RatPoly> {
    for (i, (x, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(y, _)| y == x) {
            return Err(Error::OutOfRange(format!("duplicate abscissa {x}")));
        }
    }
    // Newton divided differences
    let n = points.len();
    let xs: Vec<&Q> = points.iter().map(|p| &p.0).collect();
    let mut dd: Vec<Q> = points.iter().map(|p| p.1.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (xs[i] - xs[i - level]);
        }
    }
    let mut p = RatPoly::zero();
    for i in (0..n).rev() {
        p = &(&p * &RatPoly::linear(-xs[i].clone())) + &RatPoly::constant(dd[i].clone());
    }
    Ok(p)
}

/// End point of a real interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    At(Q),
    PosInf,
}

fn sign_at(p: &RatPoly, b: &Bound) -> i32 {
    let s = |v: &Q| {
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    };
    match b {
        Bound::At(x) => s(&p.eval(x)),
        Bound::PosInf => s(&p.leading()),
        Bound::NegInf => s(&p.leading()) * if p.degree().unwrap_or(0) % 2 == 1 { -1 } else { 1 },
    }
}

/// Number of distinct real roots in `(a, b]`, by a Sturm sequence of the squarefree part.
pub fn sturm_real_roots(p: &RatPoly, a: &Bound, b: &Bound) -> usize {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let p0 = p.squarefree();
    let mut seq = vec![p0.clone(), p0.derivative()];
    loop {
        let n = seq.len();
        let r = seq[n - 2].div_rem(&seq[n - 1]).1;
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    let changes = |x: &Bound| {
        let signs: Vec<i32> = seq.iter().map(|s| sign_at(s, x)).filter(|&s| s != 0).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    changes(a).saturating_sub(changes(b))
}

/// Distinct real roots over the whole line.
pub fn real_root_count(p: &RatPoly) -> usize {
    sturm_real_roots(p, &Bound::NegInf, &Bound::PosInf)
}

/// Multiplicities of the roots `-p` for `p` in a range, with the cofactor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootReport {
    pub multiplicities: std::collections::BTreeMap<i64, usize>,
    /// `scale · P` with every `(t+p)` factor divided out.
    pub q: RatPoly,
    pub q_real_roots: usize,
    pub integer_after_scaling: bool,
}

pub fn integer_root_report(p: &RatPoly, range: std::ops::RangeInclusive<i64>, scale: &Q) -> RootReport {
    assert!(!p.is_zero(), "root report of the zero polynomial");
    let mut rest = p.scale(scale);
    let mut multiplicities = std::collections::BTreeMap::new();
    for r in range {
        let f = RatPoly::linear(q(r));
        let mut k = 0;
        while let Some(next) = rest.exact_div(&f) {
            rest = next;
            k += 1;
        }
        multiplicities.insert(r, k);
    }
    RootReport {
        q_real_roots: real_root_count(&rest),
        integer_after_scaling: rest.has_integer_coeffs(),
        multiplicities,
        q: rest,
    }
}

pub fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

/// Solves `a x = b` over the rationals; `None` if `a` is singular.
pub fn solve_linear(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Option<Vec<Q>> {
    let n = a.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].recip();
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] * &inv;
                for k in col..n {
                    let v = &f * &a[col][k];
                    a[r][k] -= v;
                }
                let v = &f * &b[col];
                b[r] -= v;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Determinant of a square rational matrix.
pub fn det(mut a: Vec<Vec<Q>>) -> Q {
    let n = a.len();
    let mut d = Q::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else { return Q::zero() };
        if piv != col {
            a.swap(col, piv);
            d = -d;
        }
        d *= &a[col][col];
        let inv = a[col][col].recip();
        for r in col + 1..n {
            if !a[r][col].is_zero() {
                let f = &a[r][col] * &inv;
                for k in col..n {
                    let v = &f * &a[col][k];
                    a[r][k] -= v;
                }
            }
        }
    }
    d
}

/// Inverse of a square rational matrix; `None` if singular.
pub fn invert(a: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for k in 0..2 * n {
                    let v = &f * &m[col][k];
                    m[r][k] -= v;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Bivariate polynomial; `c[i][j]` is the coefficient of `τ^i t^j`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TauTPoly {
    c: Vec<Vec<Q>>,
}

impl TauTPoly {
    pub fn new(c: Vec<Vec<Q>>) -> Self {
        let mut c: Vec<Vec<Q>> = c.into_iter().map(|r| RatPoly::new(r).c).collect();
        let width = c.iter().map(Vec::len).max().unwrap_or(0);
        for r in c.iter_mut() {
            r.resize(width, Q::zero());
        }
        while c.last().is_some_and(|r| r.iter().all(Zero::is_zero)) {
            c.pop();
        }
        if c.is_empty() {
            return TauTPoly { c };
        }
        // trim columns that vanish in every row
        let mut w = c[0].len();
        while w > 0 && c.iter().all(|r| r[w - 1].is_zero()) {
            w -= 1;
        }
        for r in c.iter_mut() {
            r.truncate(w);
        }
        TauTPoly { c }
    }

    pub fn zero() -> Self {
        TauTPoly { c: vec![] }
    }

    /// A polynomial in `t` alone.
    pub fn from_t(p: &RatPoly) -> Self {
        Self::new(vec![p.c.clone()])
    }

    /// A polynomial in `τ` alone.
    pub fn from_tau(p: &RatPoly) -> Self {
        Self::new(p.c.iter().map(|a| vec![a.clone()]).collect())
    }

    pub fn coeff(&self, i: usize, j: usize) -> Q {
        self.c.get(i).and_then(|r| r.get(j)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn tau_degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn t_degree(&self) -> Option<usize> {
        self.c.first().and_then(|r| r.len().checked_sub(1))
    }

    /// Coefficient of `t^j` as a polynomial in `τ`.
    pub fn t_coeff(&self, j: usize) -> RatPoly {
        RatPoly::new(self.c.iter().map(|r| r.get(j).cloned().unwrap_or_else(Q::zero)).collect())
    }

    /// Coefficient of `τ^i` as a polynomial in `t`.
    pub fn tau_coeff(&self, i: usize) -> RatPoly {
        RatPoly::new(self.c.get(i).cloned().unwrap_or_default())
    }

    pub fn eval_tau(&self, tau: &Q) -> RatPoly {
        let mut acc = RatPoly::zero();
        for r in self.c.iter().rev() {
            acc = &acc.scale(tau) + &RatPoly::new(r.clone());
        }
        acc
    }

    pub fn eval_t(&self, t: &Q) -> RatPoly {
        RatPoly::new(self.c.iter().map(|r| RatPoly::new(r.clone()).eval(t)).collect())
    }

    pub fn scale(&self, k: &Q) -> Self {
        Self::new(self.c.iter().map(|r| r.iter().map(|a| a * k).collect()).collect())
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.c.iter().flatten().all(|a| a.is_integer())
    }

    pub fn all_nonnegative(&self) -> bool {
        self.c.iter().flatten().all(|a| !a.is_negative())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vars": ["tau", "t"],
            "coeffs": self.c.iter().map(|r| r.iter().map(|a| a.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

impl Add for &TauTPoly {
    type Output = TauTPoly;
    fn add(self, o: &TauTPoly) -> TauTPoly {
        let rows = self.c.len().max(o.c.len());
        let cols = self.t_degree().max(o.t_degree()).map_or(0, |d| d + 1);
        TauTPoly::new((0..rows).map(|i| (0..cols).map(|j| self.coeff(i, j) + o.coeff(i, j)).collect()).collect())
    }
}

impl Sub for &TauTPoly {
    type Output = TauTPoly;
    fn sub(self, o: &TauTPoly) -> TauTPoly {
        self + &o.scale(&q(-1))
    }
}

impl Mul for &TauTPoly {
    type Output = TauTPoly;
    fn mul(self, o: &TauTPoly) -> TauTPoly {
        if self.is_zero() || o.is_zero() {
            return TauTPoly::zero();
        }
        let (r1, c1) = (self.c.len(), self.c[0].len());
        let (r2, c2) = (o.c.len(), o.c[0].len());
        let mut c = vec![vec![Q::zero(); c1 + c2 - 1]; r1 + r2 - 1];
        for i in 0..r1 {
            for j in 0..c1 {
                if self.c[i][j].is_zero() {
                    continue;
                }
                for k in 0..r2 {
                    for l in 0..c2 {
                        c[i + k][j + l] += &self.c[i][j] * &o.c[k][l];
                    }
                }
            }
        }
        TauTPoly::new(c)
    }
}

impl fmt::Display for TauTPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = vec![];
        for (i, r) in self.c.iter().enumerate().rev() {
            for (j, a) in r.iter().enumerate().rev() {
                if a.is_zero() {
                    continue;
                }
                let mut s = a.to_string();
                if i > 0 {
                    s += &format!("*tau^{i}");
                }
                if j > 0 {
                    s += &format!("*t^{j}");
                }
                terms.push(s);
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl fmt::Debug for TauTPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TauTPoly({self})")
    }
}

/// `n!` as a rational.
pub fn factorial_q(n: usize) -> Q {
    Q::from_integer(factorial(n))
}

/// Least common multiple of the coefficient denominators.
pub fn denominator_lcm(p: &RatPoly) -> BigInt {
    p.c.iter().fold(BigInt::one(), |acc, a| acc.lcm(a.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64)]) -> Vec<(Q, Q)> {
        v.iter().map(|&(a, b)| (q(a), q(b))).collect()
    }

    #[test]
    fn interpolation() {
        assert_eq!(interpolate(&pts(&[(0, 1), (1, 1)])).unwrap(), RatPoly::one());
        assert_eq!(interpolate(&pts(&[(0, 3), (1, 4), (2, 5)])).unwrap(), RatPoly::from_ints(&[3, 1]));
        assert!(interpolate(&pts(&[(0, 3), (0, 4)])).is_err());
        let p = RatPoly::from_ints(&[5, -2, 0, 7]);
        let pts: Vec<(Q, Q)> = (-3..5).map(|x| (q(x), p.eval_int(x))).collect();
        assert_eq!(interpolate(&pts).unwrap(), p);
    }

    #[test]
    fn division_and_gcd() {
        let a = RatPoly::from_roots(&[-1, -2, -2, 3]);
        let (quot, r) = a.div_rem(&RatPoly::linear(q(2)));
        assert!(r.is_zero());
        assert_eq!(&quot * &RatPoly::linear(q(2)), a);
        assert_eq!(a.squarefree(), RatPoly::from_roots(&[-1, -2, 3]));
        assert!(a.exact_div(&RatPoly::linear(q(5))).is_none());
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(real_root_count(&RatPoly::from_ints(&[1, 0, 1])), 0);
        assert_eq!(real_root_count(&RatPoly::from_ints(&[-2, 0, 1])), 2);
        let p = RatPoly::from_roots(&[-3, -3, 1, 4]);
        assert_eq!(real_root_count(&p), 3);
        assert_eq!(sturm_real_roots(&p, &Bound::At(q(-3)), &Bound::At(q(4))), 2);
        assert_eq!(sturm_real_roots(&p, &Bound::At(q(-4)), &Bound::At(q(1))), 2);
    }

    #[test]
    fn root_report_of_factored_entry() {
        // (t+1)(t+2)^2(t+3)/12
        let p = RatPoly::from_roots(&[-1, -2, -2, -3]).scale(&q_frac(1, 12));
        let r = integer_root_report(&p, 1..=3, &q(12));
        assert_eq!(r.multiplicities.values().copied().collect::<Vec<_>>(), vec![1, 2, 1]);
        assert_eq!(r.q, RatPoly::one());
        assert!(r.integer_after_scaling);
        let r = integer_root_report(&RatPoly::from_ints(&[1, 0, 1]), 1..=3, &q(1));
        assert!(r.multiplicities.values().all(|&m| m == 0));
        assert_eq!(r.q_real_roots, 0);
    }

    #[test]
    fn shift_and_binomial_basis() {
        let p = RatPoly::from_ints(&[1, 2, 3]);
        assert_eq!(p.shift(&q(1)), RatPoly::from_ints(&[6, 8, 3]));
        let c = p.binomial_basis();
        let d = 2;
        let rebuilt = (0..=d).fold(RatPoly::zero(), |acc, i| {
            let b =
                interpolate(&(0..=d as i64).map(|x| (q(x), binom(&q(x + d as i64 - i as i64), d))).collect::<Vec<_>>())
                    .unwrap();
            &acc + &b.scale(&c[i])
        });
        assert_eq!(rebuilt, p);
    }

    #[test]
    fn json_and_display() {
        let p = RatPoly::new(vec![q_frac(1, 2), q(0), q(-3)]);
        assert_eq!(RatPoly::from_json(&p.to_json()).unwrap(), p);
        assert_eq!(p.to_string(), "-3*t^2 + 1/2");
        assert_eq!(RatPoly::from_ints(&[3, 1]).to_string(), "t + 3");
    }

    #[test]
    fn bivariate() {
        let a = TauTPoly::new(vec![vec![q(1)], vec![q(0), q(1)]]); // 1 + τt
        let b = TauTPoly::from_tau(&RatPoly::from_ints(&[0, 2])); // 2τ
        let p = &a * &b;
        assert_eq!(p.coeff(1, 0), q(2));
        assert_eq!(p.coeff(2, 1), q(2));
        assert_eq!(p.eval_tau(&q(1)), RatPoly::from_ints(&[2, 2]));
        assert_eq!(p.eval_t(&q(1)), RatPoly::from_ints(&[0, 2, 2]));
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn linear_algebra() {
        let a = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        let x = solve_linear(a.clone(), vec![q(3), q(5)]).unwrap();
        assert_eq!(x, vec![q_frac(4, 5), q_frac(7, 5)]);
        let inv = invert(&a).unwrap();
        assert_eq!(inv[0][0], q_frac(3, 5));
        assert!(invert(&[vec![q(1), q(2)], vec![q(2), q(4)]]).is_none());
        assert_eq!(det(a), q(5));
        assert_eq!(det(vec![vec![q(0), q(1)], vec![q(1), q(0)]]), q(-1));
    }
}
