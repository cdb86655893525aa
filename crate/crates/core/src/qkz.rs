//! The τ-deformed side: constant terms `Φ_a(τ, t)`, multivariate `Φ_a` at the points `q^ε`,
//! the change of basis `C(τ)` and `Ψ_π(τ, t)`.
//!
//! Throughout, `τ = -q - q^{-1}` and `D = q - q^{-1}`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{ensure, Error, Result};
use crate::matching::{enumerate_matchings, Matching};
use crate::poly::{binom, q, RatPoly, TauTPoly, Q};

/// Largest size for which the change-of-basis matrix is computed.
pub const MAX_QKZ_SIZE: usize = 6;

// ---------------------------------------------------------------------------------------------
// Laurent polynomials in q

/// `Σ c_i q^{low+i}` over the rationals; zero has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentQ {
    low: i32,
    c: Vec<Q>,
}

impl LaurentQ {
    pub fn new(low: i32, mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        let lead = c.iter().take_while(|v| v.is_zero()).count();
        if lead == c.len() {
            return LaurentQ::default();
        }
        c.drain(..lead);
        LaurentQ { low: low + lead as i32, c }
    }

    pub fn monomial(coef: Q, e: i32) -> Self {
        Self::new(e, vec![coef])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn low(&self) -> i32 {
        self.low
    }

    pub fn high(&self) -> i32 {
        self.low + self.c.len() as i32 - 1
    }

    pub fn coeff(&self, e: i32) -> Q {
        let i = e - self.low;
        if i < 0 {
            return Q::zero();
        }
        self.c.get(i as usize).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Q)> {
        self.c.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(i, v)| (self.low + i as i32, v))
    }

    pub fn add(&self, o: &LaurentQ) -> LaurentQ {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let low = self.low.min(o.low);
        let high = self.high().max(o.high());
        LaurentQ::new(low, (low..=high).map(|e| self.coeff(e) + o.coeff(e)).collect())
    }

    pub fn neg(&self) -> LaurentQ {
        LaurentQ { low: self.low, c: self.c.iter().map(|v| -v).collect() }
    }

    pub fn sub(&self, o: &LaurentQ) -> LaurentQ {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &LaurentQ) -> LaurentQ {
        if self.is_zero() || o.is_zero() {
            return LaurentQ::default();
        }
        let mut c = vec![Q::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        LaurentQ::new(self.low + o.low, c)
    }

    pub fn pow(&self, k: usize) -> LaurentQ {
        (0..k).fold(LaurentQ::monomial(Q::one(), 0), |acc, _| acc.mul(self))
    }

    /// `q ↦ q^{-1}`
    pub fn invert_q(&self) -> LaurentQ {
        let mut c = self.c.clone();
        c.reverse();
        LaurentQ::new(-self.high(), c)
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.terms().fold(Q::zero(), |acc, (e, v)| {
            let p =
                if e >= 0 { num_traits::pow(x.clone(), e as usize) } else { num_traits::pow(x.recip(), (-e) as usize) };
            acc + v * p
        })
    }

    /// `-q - q^{-1}`
    pub fn tau() -> LaurentQ {
        LaurentQ::new(-1, vec![q(-1), q(0), q(-1)])
    }

    /// Rewrites a Laurent polynomial as a polynomial in `τ`, or `None` if it is not one.
    pub fn to_tau(&self) -> Option<RatPoly> {
        let mut rest = self.clone();
        let mut out = vec![];
        while !rest.is_zero() {
            let k = rest.high();
            if k < 0 || rest.low() < -k {
                return None;
            }
            let k = k as usize;
            // τ^k has top term (-1)^k q^k
            let c = if k.is_multiple_of(2) { rest.coeff(k as i32) } else { -rest.coeff(k as i32) };
            if out.len() <= k {
                out.resize(k + 1, Q::zero());
            }
            out[k] = c.clone();
            rest = rest.sub(&LaurentQ::tau().pow(k).mul(&LaurentQ::monomial(c, 0)));
        }
        Some(RatPoly::new(out))
    }

    pub fn from_tau(p: &RatPoly) -> LaurentQ {
        p.coeffs().iter().enumerate().fold(LaurentQ::default(), |acc, (k, c)| {
            acc.add(&LaurentQ::tau().pow(k).mul(&LaurentQ::monomial(c.clone(), 0)))
        })
    }

    fn as_poly(&self) -> RatPoly {
        RatPoly::new(self.c.clone())
    }
}

impl fmt::Debug for LaurentQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|(e, v)| format!("{v}*q^{e}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Element of `ℚ(q)`, stored as `q^shift · num / den` with `num`, `den` coprime ordinary
/// polynomials not divisible by `q`, and `den` monic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QFieldElem {
    shift: i32,
    num: RatPoly,
    den: RatPoly,
}

fn strip_q(p: &RatPoly) -> (i32, RatPoly) {
    let k = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    (k as i32, RatPoly::new(p.coeffs()[k.min(p.coeffs().len())..].to_vec()))
}

impl QFieldElem {
    pub fn new(shift: i32, num: RatPoly, den: RatPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let (sn, num) = strip_q(&num);
        let (sd, den) = strip_q(&den);
        let g = RatPoly::gcd(&num, &den);
        let num = num.exact_div(&g).unwrap();
        let den = den.exact_div(&g).unwrap();
        let lead = den.leading();
        QFieldElem { shift: shift + sn - sd, num: num.scale(&lead.recip()), den: den.monic() }
    }

    pub fn zero() -> Self {
        QFieldElem { shift: 0, num: RatPoly::zero(), den: RatPoly::one() }
    }

    pub fn from_laurent(l: &LaurentQ) -> Self {
        if l.is_zero() {
            return Self::zero();
        }
        Self::new(l.low(), l.as_poly(), RatPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The element as a Laurent polynomial, if its denominator is trivial.
    pub fn to_laurent(&self) -> Option<LaurentQ> {
        (self.den.degree() == Some(0)).then(|| LaurentQ::new(self.shift, self.num.coeffs().to_vec()))
    }

    fn parts(&self) -> (RatPoly, RatPoly, i32) {
        (self.num.clone(), self.den.clone(), self.shift)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        Self::new(self.shift + o.shift, &self.num * &o.num, &self.den * &o.den)
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::new(-self.shift, self.den.clone(), self.num.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let (n1, d1, s1) = self.parts();
        let (n2, d2, s2) = o.parts();
        let s = s1.min(s2);
        let up =
            |p: &RatPoly, k: i32| &p.clone() * &RatPoly::new([vec![Q::zero(); k as usize], vec![Q::one()]].concat());
        let num = &(&up(&n1, s1 - s) * &d2) + &(&up(&n2, s2 - s) * &d1);
        Self::new(s, num, &d1 * &d2)
    }

    pub fn eval(&self, x: &Q) -> Q {
        let base = LaurentQ::monomial(Q::one(), self.shift).eval(x);
        base * self.num.eval(x) / self.den.eval(x)
    }
}

impl fmt::Display for QFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^{} * ({}) / ({})", self.shift, self.num, self.den)
    }
}

// ---------------------------------------------------------------------------------------------
// Fast integer Laurent arithmetic for the residue sums

#[derive(Clone, Debug, Default)]
struct Lp {
    low: i32,
    c: Vec<i128>,
}

fn overflow() -> Error {
    Error::Invariant("coefficient overflow in residue evaluation".into())
}

impl Lp {
    fn one() -> Self {
        Lp { low: 0, c: vec![1] }
    }

    fn is_zero(&self) -> bool {
        self.c.iter().all(|&v| v == 0)
    }

    /// `self * Σ coef q^e`
    fn mul_sparse(&self, f: &[(i32, i128)]) -> Result<Lp> {
        if self.c.is_empty() || f.is_empty() {
            return Ok(Lp::default());
        }
        let fl = f.iter().map(|t| t.0).min().unwrap();
        let fh = f.iter().map(|t| t.0).max().unwrap();
        let mut c = vec![0i128; self.c.len() + (fh - fl) as usize];
        for &(e, k) in f {
            let off = (e - fl) as usize;
            for (i, &v) in self.c.iter().enumerate() {
                if v != 0 {
                    let w = v.checked_mul(k).ok_or_else(overflow)?;
                    c[i + off] = c[i + off].checked_add(w).ok_or_else(overflow)?;
                }
            }
        }
        Ok(Lp { low: self.low + fl, c })
    }

    fn add_assign(&mut self, o: &Lp, sign: i128) -> Result<()> {
        if o.c.is_empty() {
            return Ok(());
        }
        if self.c.is_empty() {
            *self = Lp { low: o.low, c: o.c.iter().map(|v| v * sign).collect() };
            return Ok(());
        }
        let low = self.low.min(o.low);
        let high = (self.low + self.c.len() as i32).max(o.low + o.c.len() as i32);
        let mut c = vec![0i128; (high - low) as usize];
        for (i, &v) in self.c.iter().enumerate() {
            c[(self.low - low) as usize + i] = v;
        }
        for (i, &v) in o.c.iter().enumerate() {
            let slot = &mut c[(o.low - low) as usize + i];
            *slot = v.checked_mul(sign).and_then(|w| slot.checked_add(w)).ok_or_else(overflow)?;
        }
        *self = Lp { low, c };
        Ok(())
    }

    fn to_laurent(&self, den: &BigInt) -> LaurentQ {
        LaurentQ::new(self.low, self.c.iter().map(|&v| Q::new(BigInt::from(v), den.clone())).collect())
    }
}

/// Sign vector of a matching: `-1` at openers, `+1` at closers.
pub fn epsilon_of(pi: &Matching) -> Vec<i32> {
    (1..=2 * pi.size()).map(|k| if pi.is_open(k) { -1 } else { 1 }).collect()
}

/// Perturbation weights `c_k` of `z_k = q^{ε_k} (1 + s c_k)`.
fn weight(k: usize) -> i128 {
    k as i128
}

/// Value of the multivariate `Φ_a` at `z_k = q^{ε_k}`, for `ε` read off the matching `eps`.
pub fn phi_multivariate_eval(a: &Matching, eps: &Matching) -> Result<QFieldElem> {
    Ok(QFieldElem::from_laurent(&phi_at_points(a, eps)?))
}

/// Same as [`phi_multivariate_eval`], returned as the Laurent polynomial it must be.
pub fn phi_at_points(a: &Matching, eps: &Matching) -> Result<LaurentQ> {
    let n = a.size();
    if n != eps.size() {
        return Err(Error::SizeMismatch(n, eps.size()));
    }
    let av = a.a_seq();
    let ep = epsilon_of(eps);
    let mut acc: Vec<LaurentQ> = vec![];
    let mut ks = vec![0usize; n];
    let mut used = vec![false; 2 * n + 1];
    assign(0, &av, &ep, &mut ks, &mut used, &mut acc)?;
    for (m, v) in acc.iter().enumerate().skip(1) {
        ensure!(v.is_zero(), "pole of order {m} does not cancel for a={a}, eps={eps}");
    }
    Ok(acc.into_iter().next().unwrap_or_default())
}

fn assign(
    i: usize,
    av: &[usize],
    ep: &[i32],
    ks: &mut Vec<usize>,
    used: &mut Vec<bool>,
    acc: &mut Vec<LaurentQ>,
) -> Result<()> {
    if i == av.len() {
        return residue_term(av, ep, ks, acc);
    }
    for k in 1..=av[i] {
        if !used[k] {
            used[k] = true;
            ks[i] = k;
            assign(i + 1, av, ep, ks, used, acc)?;
            used[k] = false;
        }
    }
    Ok(())
}

enum Factor {
    /// `D (u + x β)`
    Num(Vec<(i32, i128)>, Vec<(i32, i128)>),
    /// `D x k`
    NumZero(i128),
    /// `σ D (1 + x σ β)`, inverted
    Den(i128, Vec<(i32, i128)>),
    /// `D x q^e k`, inverted
    DenZero(i32, i128),
}

/// `q z_x - q^{-1} z_y`
fn num_factor(ep: &[i32], x: usize, y: usize) -> Factor {
    let (ex, ey) = (ep[x - 1], ep[y - 1]);
    let (cx, cy) = (weight(x), weight(y));
    if ex == -1 && ey == 1 {
        return Factor::NumZero(cx - cy);
    }
    let u = match (ex, ey) {
        (1, 1) => vec![(1, 1)],
        (1, -1) => vec![(1, 1), (-1, 1)],
        _ => vec![(-1, 1)],
    };
    Factor::Num(u, vec![(1 + ex, cx), (ey - 1, -cy)])
}

/// `z_x - z_y`
fn den_factor(ep: &[i32], x: usize, y: usize) -> Factor {
    let (ex, ey) = (ep[x - 1], ep[y - 1]);
    let (cx, cy) = (weight(x), weight(y));
    if ex == ey {
        return Factor::DenZero(ex, cx - cy);
    }
    let sigma = if ex == 1 { 1 } else { -1 };
    Factor::Den(sigma, vec![(ex, sigma * cx), (ey, -sigma * cy)])
}

fn residue_term(av: &[usize], ep: &[i32], ks: &[usize], acc: &mut Vec<LaurentQ>) -> Result<()> {
    let n = av.len();
    let m = 2 * n;
    let mut factors = vec![];
    // the prefactor pairs that survive cancellation against the residue denominators
    for x in 1..=m {
        let cut = ks.iter().position(|&k| k == x).map(|i| av[i]);
        for y in x + 1..=m {
            if cut.is_some_and(|a| y > a) {
                continue;
            }
            factors.push(num_factor(ep, x, y));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            factors.push(num_factor(ep, ks[i], ks[j]));
        }
    }
    for j in 0..n {
        for k in 1..=av[j] {
            if !ks[..=j].contains(&k) {
                factors.push(den_factor(ep, ks[j], k));
            }
        }
    }
    let zeros_num = factors.iter().filter(|f| matches!(f, Factor::NumZero(_))).count();
    let zeros_den = factors.iter().filter(|f| matches!(f, Factor::DenZero(..))).count();
    if zeros_num > zeros_den {
        return Ok(());
    }
    let r = zeros_den - zeros_num;
    let mut p: Vec<Lp> = vec![Lp::default(); r + 1];
    p[0] = Lp::one();
    let mut den = BigInt::one();
    let mut scale: i128 = 1;
    let mut shift = 0;
    for f in &factors {
        match f {
            Factor::NumZero(k) => scale = scale.checked_mul(*k).ok_or_else(overflow)?,
            Factor::DenZero(e, k) => {
                shift -= e;
                den *= *k;
            }
            Factor::Num(u, beta) => {
                for j in (0..=r).rev() {
                    let mut v = p[j].mul_sparse(u)?;
                    if j > 0 {
                        v.add_assign(&p[j - 1].mul_sparse(beta)?, 1)?;
                    }
                    p[j] = v;
                }
            }
            Factor::Den(sigma, beta) => {
                for j in 1..=r {
                    let prev = p[j - 1].mul_sparse(beta)?;
                    p[j].add_assign(&prev, -1)?;
                }
                if *sigma < 0 {
                    for v in p.iter_mut() {
                        v.c.iter_mut().for_each(|c| *c = -*c);
                    }
                }
            }
        }
    }
    if acc.len() < r + 1 {
        acc.resize(r + 1, LaurentQ::default());
    }
    for (j, v) in p.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let mut v = v.mul_sparse(&[(shift, scale)])?;
        v.low += 0;
        // coefficient of x^{j - r}; slot m holds x^{-m}
        let slot = r - j;
        acc[slot] = acc[slot].add(&v.to_laurent(&den));
    }
    Ok(())
}

// ---------------------------------------------------------------------------------------------
// Homogeneous constant terms

/// Sparse polynomial in `u_1..u_n` with coefficients in `ℤ[τ]`, exponents capped per variable.
type UPoly = HashMap<Vec<u8>, Vec<i128>>;

fn tau_add(a: &mut Vec<i128>, b: &[i128], shift: usize, k: i128) -> Result<()> {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, &v) in b.iter().enumerate() {
        a[i + shift] = v.checked_mul(k).and_then(|w| a[i + shift].checked_add(w)).ok_or_else(overflow)?;
    }
    Ok(())
}

/// `Σ_b g_b(τ) u^b` for `Π_{i<j} (u_j - u_i)(1 + τ u_j + u_i u_j)`, keeping `b_i < a_i`.
fn vandermonde_part(av: &[usize]) -> Result<UPoly> {
    let n = av.len();
    let cap: Vec<u8> = av.iter().map(|&a| (a - 1) as u8).collect();
    let mut cur: UPoly = HashMap::from([(vec![0u8; n], vec![1i128])]);
    for i in 0..n {
        for j in i + 1..n {
            // (u_j - u_i)(1 + τ u_j + u_i u_j) expanded as terms (di, dj, τ-power, coef)
            let terms: [(u8, u8, usize, i128); 6] =
                [(0, 1, 0, 1), (0, 2, 1, 1), (1, 2, 0, 1), (1, 0, 0, -1), (1, 1, 1, -1), (2, 1, 0, -1)];
            let mut next: UPoly = HashMap::new();
            for (mono, coef) in &cur {
                for &(di, dj, tp, k) in &terms {
                    let (ei, ej) = (mono[i] + di, mono[j] + dj);
                    if ei > cap[i] || ej > cap[j] {
                        continue;
                    }
                    let mut m2 = mono.clone();
                    m2[i] = ei;
                    m2[j] = ej;
                    tau_add(next.entry(m2).or_default(), coef, tp, k)?;
                }
            }
            next.retain(|_, v| v.iter().any(|&c| c != 0));
            cur = next;
        }
    }
    Ok(cur)
}

/// `Φ_a(τ, t)`: the coefficient of `Π u_i^{a_i - 1}` in
/// `Π_i (1 + τ u_i)^t Π_{i<j} (u_j - u_i)(1 + τ u_j + u_i u_j)`.
pub fn phi_homog(a: &Matching) -> Result<TauTPoly> {
    let av = a.a_seq();
    let g = vandermonde_part(&av)?;
    let mut total = TauTPoly::zero();
    for (mono, coef) in g {
        // Π_i C(t, k_i) τ^{k_i} with k_i = a_i - 1 - b_i
        let mut tpoly = RatPoly::one();
        let mut tau_pow = 0;
        for (i, &b) in mono.iter().enumerate() {
            let k = av[i] - 1 - b as usize;
            tau_pow += k;
            tpoly = &tpoly * &binomial_poly(k);
        }
        let tau: Vec<Q> = std::iter::repeat_n(Q::zero(), tau_pow)
            .chain(coef.iter().map(|&c| Q::from_integer(BigInt::from(c))))
            .collect();
        total = &total + &(&TauTPoly::from_tau(&RatPoly::new(tau)) * &TauTPoly::from_t(&tpoly));
    }
    Ok(total)
}

/// `C(t, k)` as a polynomial in `t`.
fn binomial_poly(k: usize) -> RatPoly {
    let pts: Vec<(Q, Q)> = (0..=k as i64).map(|x| (q(x), binom(&q(x), k))).collect();
    crate::poly::interpolate(&pts).unwrap()
}

/// `Φ_a(τ, p)` at an integer `p`, as a polynomial in `τ`.
pub fn phi_homog_at(a: &Matching, p: i64) -> Result<RatPoly> {
    Ok(phi_homog(a)?.eval_t(&q(p)))
}

// ---------------------------------------------------------------------------------------------
// Change of basis

/// `C_{a,π}(τ)` with rows `a` and columns `π` in lexicographic order.
#[derive(Clone, Debug)]
pub struct CMatrix {
    pub n: usize,
    pub index: Vec<Matching>,
    pub entries: Vec<Vec<RatPoly>>,
}

fn tau_sign_flip(p: &RatPoly) -> RatPoly {
    RatPoly::new(p.coeffs().iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect())
}

impl CMatrix {
    pub fn position(&self, pi: &Matching) -> Option<usize> {
        self.index.binary_search(pi).ok()
    }

    pub fn get(&self, a: &Matching, pi: &Matching) -> RatPoly {
        match (self.position(a), self.position(pi)) {
            (Some(i), Some(j)) => self.entries[i][j].clone(),
            _ => RatPoly::zero(),
        }
    }

    /// Triangularity, unit diagonal, the degree bound, parity and integrality.
    pub fn check_invariants(&self) -> Result<()> {
        for (i, a) in self.index.iter().enumerate() {
            for (j, pi) in self.index.iter().enumerate() {
                let c = &self.entries[i][j];
                let below = pi.leq(a)?;
                if !below {
                    ensure!(c.is_zero(), "C[{a},{pi}] = {c} but {pi} is not below {a}");
                    continue;
                }
                if i == j {
                    ensure!(*c == RatPoly::one(), "C[{a},{a}] = {c}");
                    continue;
                }
                let gap = a.d() - pi.d();
                ensure!(c.degree().is_none_or(|d| d + 2 <= gap), "C[{a},{pi}] = {c} exceeds degree {gap} - 2");
                let flipped = tau_sign_flip(c);
                let expected = if gap % 2 == 0 { c.clone() } else { -c };
                ensure!(flipped == expected, "C[{a},{pi}] = {c} has the wrong parity");
                ensure!(c.has_integer_coeffs(), "C[{a},{pi}] = {c} is not integral");
            }
        }
        Ok(())
    }

    /// Inverse by forward substitution; the matrix is unitriangular in this order.
    pub fn inverse(&self) -> Vec<Vec<RatPoly>> {
        let m = self.index.len();
        let mut inv = vec![vec![RatPoly::zero(); m]; m];
        for col in 0..m {
            inv[col][col] = RatPoly::one();
            for row in col + 1..m {
                let mut s = RatPoly::zero();
                for k in col..row {
                    if !self.entries[row][k].is_zero() && !inv[k][col].is_zero() {
                        s = &s + &(&self.entries[row][k] * &inv[k][col]);
                    }
                }
                inv[row][col] = -&s;
            }
        }
        inv
    }
}

/// `C_{a,π}(τ) = τ^{-d(π)} Φ_a(q^{ε(π)})`, rewritten as a polynomial in `τ`.
pub fn c_entry(a: &Matching, pi: &Matching) -> Result<RatPoly> {
    let phi = phi_at_points(a, pi)?;
    let val = phi
        .to_tau()
        .ok_or_else(|| Error::Invariant(format!("Phi_{a}(q^eps({pi})) = {phi:?} is not a polynomial in tau")))?;
    let (quot, rem) = val.div_rem(&RatPoly::t().pow(pi.d()));
    ensure!(rem.is_zero(), "Phi_{a}(q^eps({pi})) = {val} is not divisible by tau^{}", pi.d());
    Ok(quot)
}

pub fn c_matrix(n: usize) -> Result<CMatrix> {
    if n == 0 || n > MAX_QKZ_SIZE {
        return Err(Error::Resource { what: "change-of-basis matrix", size: n, bound: MAX_QKZ_SIZE });
    }
    let index = enumerate_matchings(n);
    let entries = index
        .par_iter()
        .map(|a| index.iter().map(|pi| c_entry(a, pi)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(CMatrix { n, index, entries })
}

/// `C_{(a)_1,(π)_1} = C_{a,π}` for every pair.
pub fn stability_holds(small: &CMatrix, big: &CMatrix) -> bool {
    small.index.iter().all(|a| small.index.iter().all(|pi| small.get(a, pi) == big.get(&a.nest(1), &pi.nest(1))))
}

/// Memoized matrices, inverses and constant terms.
#[derive(Default)]
pub struct QkzEngine {
    data: Mutex<HashMap<usize, Arc<SizeData>>>,
}

pub struct SizeData {
    pub c: CMatrix,
    pub inverse: Vec<Vec<RatPoly>>,
    pub phi: Vec<TauTPoly>,
}

impl QkzEngine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn size_data(&self, n: usize) -> Result<Arc<SizeData>> {
        if let Some(d) = self.data.lock().unwrap().get(&n) {
            return Ok(d.clone());
        }
        let c = c_matrix(n)?;
        c.check_invariants()?;
        let inverse = c.inverse();
        let phi = c.index.par_iter().map(phi_homog).collect::<Result<Vec<_>>>()?;
        let d = Arc::new(SizeData { c, inverse, phi });
        self.data.lock().unwrap().insert(n, d.clone());
        Ok(d)
    }

    /// `Ψ_π(τ, t) = Σ_a C^{-1}_{π,a}(τ) Φ_a(τ, t)`.
    pub fn psi_tau(&self, pi: &Matching) -> Result<TauTPoly> {
        let d = self.size_data(pi.size())?;
        let row = d.c.position(pi).unwrap();
        let mut out = TauTPoly::zero();
        for (k, cinv) in d.inverse[row].iter().enumerate() {
            if !cinv.is_zero() {
                out = &out + &(&TauTPoly::from_tau(cinv) * &d.phi[k]);
            }
        }
        Ok(out)
    }

    /// `G_π(τ) = Ψ_π(τ, -|π|)`.
    pub fn g_tau(&self, pi: &Matching) -> Result<RatPoly> {
        Ok(self.psi_tau(pi)?.eval_t(&q(-(pi.size() as i64))))
    }

    /// `Ψ_π(τ, -1)` is `Ψ_{π'}(τ, 0)` when `π = (π')` and zero otherwise.
    pub fn first_root_check(&self, pi: &Matching) -> Result<bool> {
        let at = self.psi_tau(pi)?.eval_t(&q(-1));
        let n = pi.size();
        if pi.partners()[0] == 2 * n {
            if n == 1 {
                return Ok(at == RatPoly::one());
            }
            let inner = Matching::from_bits(n - 1, (pi.bits() >> 1) & ((1u64 << (2 * n - 2)) - 1))?;
            Ok(at == self.psi_tau(&inner)?.eval_t(&Q::zero()))
        } else {
            Ok(at.is_zero())
        }
    }
}

/// `(-1)^{d} P(-τ)`, which equals `P` for the polynomials of this module.
pub fn tau_parity_image(p: &TauTPoly, d: usize) -> TauTPoly {
    let flipped = TauTPoly::new(
        p.rows()
            .iter()
            .enumerate()
            .map(|(i, r)| r.iter().map(|c| if (i + d) % 2 == 1 { -c } else { c.clone() }).collect())
            .collect(),
    );
    flipped
}

pub fn is_nonneg_integral(p: &RatPoly) -> bool {
    p.coeffs().iter().all(|c| c.is_integer() && !c.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mm(s: &str) -> Matching {
        s.parse().unwrap()
    }

    #[test]
    fn laurent_tau_round_trip() {
        let p = RatPoly::from_ints(&[2, 0, -3, 1]);
        assert_eq!(LaurentQ::from_tau(&p).to_tau().unwrap(), p);
        assert!(LaurentQ::monomial(q(1), 1).to_tau().is_none());
    }

    #[test]
    fn field_elements() {
        let a = QFieldElem::new(0, RatPoly::from_ints(&[-1, 0, 1]), RatPoly::from_ints(&[1, 1]));
        assert_eq!(a.to_laurent().unwrap(), LaurentQ::new(0, vec![q(-1), q(1)]));
        let b = a.mul(&a.inv());
        assert_eq!(b.to_laurent().unwrap(), LaurentQ::monomial(q(1), 0));
        assert!(a.add(&a.mul(&QFieldElem::from_laurent(&LaurentQ::monomial(q(-1), 0)))).is_zero());
    }

    #[test]
    fn homogeneous_examples() {
        for n in 1..=4 {
            assert_eq!(phi_homog(&Matching::nested(n)).unwrap(), TauTPoly::from_t(&RatPoly::one()));
        }
        let a = Matching::from_a_seq(&[1, 3]).unwrap();
        assert_eq!(phi_homog_at(&a, 0).unwrap(), RatPoly::from_ints(&[0, 1]));
        // nesting by p arches is t = p
        for a in enumerate_matchings(3) {
            for p in 0..3 {
                assert_eq!(phi_homog_at(&a, p as i64).unwrap(), phi_homog_at(&a.nest(p), 0).unwrap());
            }
        }
    }

    #[test]
    fn multivariate_small() {
        assert_eq!(phi_at_points(&mm("()"), &mm("()")).unwrap(), LaurentQ::monomial(q(1), 0));
        for n in 1..=3 {
            for a in enumerate_matchings(n) {
                let diag = phi_at_points(&a, &a).unwrap().to_tau().unwrap();
                assert_eq!(diag, RatPoly::t().pow(a.d()), "{a}");
                for e in enumerate_matchings(n) {
                    if !e.leq(&a).unwrap() {
                        assert!(phi_at_points(&a, &e).unwrap().is_zero(), "{a} {e}");
                    }
                }
            }
        }
    }

    #[test]
    fn c_matrix_small() {
        let c2 = c_matrix(2).unwrap();
        c2.check_invariants().unwrap();
        let c3 = c_matrix(3).unwrap();
        c3.check_invariants().unwrap();
        assert!(stability_holds(&c2, &c3));
    }

    #[test]
    fn psi_small() {
        let e = QkzEngine::new();
        assert_eq!(e.psi_tau(&Matching::nested(3)).unwrap(), TauTPoly::from_t(&RatPoly::one()));
        // at τ = 1 and t = 0 the groundstate of size 3
        for (w, v) in [("()()()", 2), ("(())()", 1), ("()(())", 1), ("(()())", 2), ("((()))", 1)] {
            let p = e.psi_tau(&mm(w)).unwrap().eval_tau(&q(1)).eval_int(0);
            assert_eq!(p, q(v), "{w}");
        }
        assert!(e.first_root_check(&mm("(())")).unwrap());
        assert!(e.first_root_check(&mm("()()")).unwrap());
        assert_eq!(e.g_tau(&mm("()()")).unwrap(), RatPoly::from_ints(&[0, -1]));
    }

    #[test]
    fn psi_structure_size3() {
        let e = QkzEngine::new();
        let pi = Matching::from_young(3, &crate::young::YoungDiagram::new(vec![2, 1])).unwrap();
        assert_eq!(e.g_tau(&pi).unwrap(), RatPoly::from_ints(&[0, -2, 0, -1]));
        for n in 1..=3 {
            for pi in enumerate_matchings(n) {
                let psi = e.psi_tau(&pi).unwrap();
                // τ^{d(π)} carries the determinant
                assert_eq!(psi.tau_degree().unwrap_or(0), pi.d(), "{pi}");
                assert_eq!(psi.tau_coeff(pi.d()), crate::hook::d_det(&pi), "{pi}");
                for p in 0..2 {
                    let outer = e.psi_tau(&pi.nest(p)).unwrap().eval_t(&Q::zero());
                    assert_eq!(psi.eval_t(&q(p as i64)), outer, "{pi} {p}");
                }
            }
        }
    }
}
