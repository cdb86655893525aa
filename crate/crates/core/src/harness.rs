//! Conjecture suites and the JSON report.
//!
//! A failed conjecture is report content, never an `Err`; errors are reserved for resource
//! limits and broken invariants of the machinery itself.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::apoly::{self, root_report};
use crate::cpl::{GroundStateCache, MAX_GROUNDSTATE_SIZE};
use crate::error::{Error, Result};
use crate::fpl::{a_n, a_v};
use crate::hook::subleading;
use crate::matching::{enumerate_matchings, Matching};
use crate::multiplicity::{decompose_at, m};
use crate::poly::{factorial_q, q, q_frac, real_root_count, RatPoly, TauTPoly, Q};
use crate::qkz::{tau_parity_image, QkzEngine};

/// Largest size run without `--extended`.
pub const ROUTINE_MAX: usize = 4;
/// Largest size run with `--extended`.
pub const EXTENDED_MAX: usize = 5;
pub const SCHEMA: u32 = 1;
/// Values of `τ` at which the quotient is checked for real roots in `t`.
pub fn tau_samples() -> [Q; 4] {
    [q(1), q_frac(1, 2), q(2), q(3)]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    C1,
    C2,
    C3,
    C4,
    Tau,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::C1, Suite::C2, Suite::C3, Suite::C4, Suite::Tau];
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "c1" => Ok(Suite::C1),
            "c2" => Ok(Suite::C2),
            "c3" => Ok(Suite::C3),
            "c4" => Ok(Suite::C4),
            "tau" => Ok(Suite::Tau),
            other => Err(Error::Syntax(format!("unknown suite '{other}'"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::C1 => "c1",
            Suite::C2 => "c2",
            Suite::C3 => "c3",
            Suite::C4 => "c4",
            Suite::Tau => "tau",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub subject: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub conjecture: String,
    pub n: usize,
    pub pass: bool,
    pub verdicts: Vec<Verdict>,
    pub counterexamples: Vec<String>,
    /// Resource limits hit while checking; a report with errors does not pass.
    pub errors: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl ConjectureReport {
    fn build(conjecture: &str, n: usize, items: Vec<Result<Verdict>>) -> Self {
        let mut verdicts = vec![];
        let mut errors = vec![];
        for item in items {
            match item {
                Ok(v) => verdicts.push(v),
                Err(e) => errors.push(e.to_string()),
            }
        }
        let counterexamples: Vec<String> = verdicts.iter().filter(|v| !v.pass).map(|v| v.subject.clone()).collect();
        ConjectureReport {
            conjecture: conjecture.into(),
            n,
            pass: counterexamples.is_empty() && errors.is_empty(),
            verdicts,
            counterexamples,
            errors,
            elapsed_ms: None,
        }
    }
}

/// Copies an error that is shared between several checks.
fn dup(e: &Error) -> Error {
    match e {
        Error::Resource { what, size, bound } => Error::Resource { what, size: *size, bound: *bound },
        other => Error::Invariant(other.to_string()),
    }
}

fn verdict(subject: impl Into<String>, pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { subject: subject.into(), pass, detail: detail.into() }
}

fn sign(d: usize) -> i32 {
    if d.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn q_sign(x: &Q) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Shared caches for the suites.
pub struct Harness {
    pub cache: GroundStateCache,
    pub qkz: QkzEngine,
    pub extended: bool,
}

impl Harness {
    pub fn new(cache_dir: Option<PathBuf>, extended: bool) -> Self {
        Harness { cache: GroundStateCache::new(cache_dir, MAX_GROUNDSTATE_SIZE), qkz: QkzEngine::new(), extended }
    }

    /// `A_π(t)` by interpolation, or as `Ψ_π(1, t)` when the groundstates needed are too large.
    pub fn a_poly(&self, pi: &Matching) -> Result<RatPoly> {
        match apoly::a_poly(pi, &self.cache) {
            Err(Error::Resource { .. }) => Ok(self.qkz.psi_tau(pi)?.eval_tau(&q(1))),
            other => other,
        }
    }

    pub fn g_value(&self, pi: &Matching) -> Result<BigInt> {
        let v = self.a_poly(pi)?.eval_int(-(pi.size() as i64));
        if !v.is_integer() {
            return Err(Error::Invariant(format!("G_{pi} = {v} is not an integer")));
        }
        Ok(v.to_integer())
    }

    pub fn sum_rule_defect(&self, n: usize) -> Result<RatPoly> {
        let mut d = self.a_poly(&Matching::small_arches(n))?;
        for pi in enumerate_matchings(n) {
            d = &d - &self.a_poly(&pi)?.shift(&q(-1));
        }
        Ok(d)
    }

    fn gate(&self, n: usize) -> Result<()> {
        let bound = if self.extended { EXTENDED_MAX } else { ROUTINE_MAX };
        if n == 0 || n > bound {
            return Err(Error::Resource { what: "conjecture suite (raise with --extended)", size: n, bound });
        }
        Ok(())
    }

    /// Real roots of `A_π` are `-p` with multiplicity `m_p(π)`, and the cofactor has none.
    pub fn verify_c1(&self, n: usize) -> Result<ConjectureReport> {
        self.gate(n)?;
        let items = enumerate_matchings(n)
            .par_iter()
            .map(|pi| {
                let a = self.a_poly(pi)?;
                let mv = m(pi)?;
                let rr = root_report(pi, &a);
                let mults: Vec<usize> = (1..n as i64).map(|p| rr.multiplicities[&p]).collect();
                let ok = mults == mv.as_slice() && rr.q_real_roots == 0 && rr.integer_after_scaling;
                Ok(verdict(
                    pi.to_string(),
                    ok,
                    format!("m={:?} roots={mults:?} Q={} real_roots(Q)={}", mv.as_slice(), rr.q, rr.q_real_roots),
                ))
            })
            .collect();
        Ok(ConjectureReport::build("C1", n, items))
    }

    /// `A_π(-p) = G_α A_β` whenever `m_p(π) = 0`, with sign `(-1)^{d(α)}`.
    pub fn verify_c2(&self, n: usize) -> Result<ConjectureReport> {
        self.gate(n)?;
        let items = enumerate_matchings(n)
            .par_iter()
            .map(|pi| {
                let a = self.a_poly(pi)?;
                let mut ok = true;
                let mut parts = vec![];
                for p in 1..n {
                    let Some((alpha, beta)) = decompose_at(pi, p)? else { continue };
                    let lhs = a.eval_int(-(p as i64));
                    let g = Q::from_integer(self.g_value(&alpha)?);
                    let rhs = &g * self.a_poly(&beta)?.eval_int(0);
                    let good = lhs == rhs && q_sign(&lhs) == sign(alpha.d());
                    ok &= good;
                    parts.push(format!("p={p}: {lhs} = {g}*A_{beta}"));
                }
                Ok(verdict(pi.to_string(), ok, parts.join("; ")))
            })
            .collect();
        Ok(ConjectureReport::build("C2", n, items))
    }

    /// The sums of `G_π` and `|G_π|`, the value `G_{()^n}` and the polynomial sum rule.
    pub fn verify_c3(&self, n: usize) -> Result<ConjectureReport> {
        self.gate(n)?;
        let all = enumerate_matchings(n);
        let gs: Vec<Result<BigInt>> = all.par_iter().map(|pi| self.g_value(pi)).collect();
        let mut items: Vec<Result<Verdict>> = all
            .iter()
            .zip(&gs)
            .map(|(pi, g)| {
                let g = g.as_ref().map_err(dup)?;
                let ok = g.signum() == BigInt::from(sign(pi.d()));
                Ok(verdict(pi.to_string(), ok, format!("G={g}")))
            })
            .collect();
        let values: Result<Vec<BigInt>> = gs.iter().map(|g| g.as_ref().cloned().map_err(dup)).collect();
        match values {
            Ok(values) => {
                let abs: BigInt = values.iter().map(|g| g.abs()).sum();
                let total: BigInt = values.iter().sum();
                let an = BigInt::from(a_n(n));
                items.push(Ok(verdict("sum |G|", abs == an, format!("{abs} vs A_{n} = {an}"))));
                let s = sign(n * (n - 1) / 2);
                let av = BigInt::from(a_v(n));
                let expected = &av * &av * s;
                items.push(Ok(verdict("sum G", total == expected, format!("{total} vs {expected}"))));
                let small = &values[all.iter().position(|p| *p == Matching::small_arches(n)).unwrap()];
                let expected = if n.is_multiple_of(2) {
                    let v = BigInt::from(a_v(n + 1));
                    &v * &v * s
                } else {
                    BigInt::from(a_v(n)) * BigInt::from(a_v(n + 2)) * s
                };
                items.push(Ok(verdict("G of ()^n", *small == expected, format!("{small} vs {expected}"))));
                // consequences of the polynomial sum rule at t = 1 - n
                let corollary = if n.is_multiple_of(2) {
                    total.is_zero()
                } else if n == 1 {
                    total.is_one()
                } else {
                    total == self.g_value(&Matching::small_arches(n - 1))?
                };
                items.push(Ok(verdict("sum G from the sum rule", corollary, format!("sum G = {total}"))));
            }
            Err(e) => items.push(Err(e)),
        }
        items.push(self.sum_rule_defect(n).map(|d| verdict("polynomial sum rule", d.is_zero(), format!("defect {d}"))));
        Ok(ConjectureReport::build("C3", n, items))
    }

    /// Nonnegative coefficients of `A_π` and of its cofactor, and the subleading coefficient.
    pub fn verify_c4(&self, n: usize) -> Result<ConjectureReport> {
        self.gate(n)?;
        let items = enumerate_matchings(n)
            .par_iter()
            .map(|pi| {
                let a = self.a_poly(pi)?;
                let d = pi.d();
                let rr = root_report(pi, &a);
                let nonneg = |p: &RatPoly| p.coeffs().iter().all(|c| !c.is_negative());
                let sub_ok = if d == 0 {
                    true
                } else {
                    let s = subleading(pi)?;
                    s == a.coeff(d - 1) && s.is_positive()
                };
                Ok(verdict(
                    pi.to_string(),
                    nonneg(&a) && nonneg(&rr.q) && sub_ok,
                    format!("A={a} Q={} subleading={}", rr.q, if d == 0 { Q::zero() } else { a.coeff(d - 1) }),
                ))
            })
            .collect();
        Ok(ConjectureReport::build("C4", n, items))
    }

    /// The four τ-analogues, as four reports.
    pub fn verify_tau(&self, n: usize) -> Result<Vec<ConjectureReport>> {
        self.gate(n)?;
        let all = enumerate_matchings(n);
        let psis: Vec<Result<TauTPoly>> = all.par_iter().map(|pi| self.qkz.psi_tau(pi)).collect();
        let psi_of = |i: usize| psis[i].as_ref().map_err(dup);

        let c1 = all
            .par_iter()
            .enumerate()
            .map(|(i, pi)| {
                let psi = psi_of(i)?;
                let mv = m(pi)?;
                let mut rest = psi.clone();
                let mut divides = true;
                for (p, &k) in mv.as_slice().iter().enumerate() {
                    for _ in 0..k {
                        match div_t_linear(&rest, p as i64 + 1) {
                            Some(r) => rest = r,
                            None => divides = false,
                        }
                    }
                }
                let rest = rest.scale(&factorial_q(pi.d()));
                let roots: Vec<usize> = tau_samples().iter().map(|t| real_root_count(&rest.eval_tau(t))).collect();
                let first = self.qkz.first_root_check(pi)?;
                // only meaningful when the groundstate route is available
                let slice = if apoly::required_size(pi) <= self.cache.max_size() {
                    Some(psi.eval_tau(&q(1)) == apoly::a_poly(pi, &self.cache)?)
                } else {
                    None
                };
                Ok(verdict(
                    pi.to_string(),
                    divides && roots.iter().all(|&r| r == 0) && first && slice != Some(false),
                    format!(
                        "m={:?} real_roots_at_samples={roots:?} first_root={first} tau1_slice={}",
                        mv.as_slice(),
                        slice.map_or("n/a".to_string(), |b| b.to_string())
                    ),
                ))
            })
            .collect();

        let c2 = all
            .par_iter()
            .enumerate()
            .map(|(i, pi)| {
                let psi = psi_of(i)?;
                let mut ok = true;
                let mut parts = vec![];
                for p in 1..n {
                    let Some((alpha, beta)) = decompose_at(pi, p)? else { continue };
                    let lhs = psi.eval_t(&q(-(p as i64)));
                    let rhs = &self.qkz.g_tau(&alpha)? * &self.qkz.psi_tau(&beta)?.eval_t(&Q::zero());
                    ok &= lhs == rhs;
                    parts.push(format!("p={p}: {lhs}"));
                }
                Ok(verdict(pi.to_string(), ok, parts.join("; ")))
            })
            .collect();

        let mut c3: Vec<Result<Verdict>> = all
            .par_iter()
            .enumerate()
            .map(|(i, pi)| {
                let psi = psi_of(i)?;
                let g = self.qkz.g_tau(pi)?;
                let d = pi.d();
                let unsigned = g.scale(&q(sign(d) as i64));
                let nonneg = unsigned.coeffs().iter().all(|c| c.is_integer() && !c.is_negative());
                let lead = g.degree() == Some(d) && g.leading() == q(sign(d) as i64);
                let parity = tau_parity_image(psi, d) == *psi;
                Ok(verdict(pi.to_string(), nonneg && lead && parity, format!("G(tau)={g} parity={parity}")))
            })
            .collect();
        let sums = || -> Result<(RatPoly, RatPoly)> {
            let mut lhs = RatPoly::zero();
            let mut rhs = RatPoly::zero();
            for (i, pi) in all.iter().enumerate() {
                lhs = &lhs + &self.qkz.g_tau(pi)?;
                rhs = &rhs + &psi_of(i)?.eval_t(&Q::zero()).compose_neg();
            }
            Ok((lhs, rhs))
        };
        c3.push(sums().map(|(l, r)| verdict("sum G(tau) = sum Psi(-tau)", l == r, format!("{l} vs {r}"))));

        let c4 = all
            .par_iter()
            .enumerate()
            .map(|(i, pi)| {
                let p = psi_of(i)?.scale(&factorial_q(pi.d()));
                Ok(verdict(pi.to_string(), p.has_integer_coeffs() && p.all_nonnegative(), format!("d!*Psi={p}")))
            })
            .collect();

        Ok(vec![
            ConjectureReport::build("C1tau", n, c1),
            ConjectureReport::build("C2tau", n, c2),
            ConjectureReport::build("C3tau", n, c3),
            ConjectureReport::build("C4tau", n, c4),
        ])
    }

    pub fn run_suite(&self, suite: Suite, n: usize) -> Result<Vec<ConjectureReport>> {
        match suite {
            Suite::C1 => self.verify_c1(n).map(|r| vec![r]),
            Suite::C2 => self.verify_c2(n).map(|r| vec![r]),
            Suite::C3 => self.verify_c3(n).map(|r| vec![r]),
            Suite::C4 => self.verify_c4(n).map(|r| vec![r]),
            Suite::Tau => self.verify_tau(n),
        }
    }
}

/// Divides by `t + a` over `ℚ[τ]`, or `None` if it does not divide.
pub fn div_t_linear(p: &TauTPoly, a: i64) -> Option<TauTPoly> {
    let Some(deg) = p.t_degree() else { return Some(TauTPoly::zero()) };
    if deg == 0 {
        return None;
    }
    let a = RatPoly::constant(q(a));
    let mut quot = vec![RatPoly::zero(); deg];
    let mut carry = RatPoly::zero();
    for j in (1..=deg).rev() {
        carry = &p.t_coeff(j) - &(&a * &carry);
        quot[j - 1] = carry.clone();
    }
    let rem = &p.t_coeff(0) - &(&a * &carry);
    if !rem.is_zero() {
        return None;
    }
    Some(quot.iter().enumerate().fold(TauTPoly::zero(), |acc, (j, c)| {
        &acc + &(&TauTPoly::from_tau(c) * &TauTPoly::from_t(&RatPoly::t().pow(j)))
    }))
}

trait ComposeNeg {
    fn compose_neg(&self) -> Self;
}

impl ComposeNeg for RatPoly {
    /// `P(-x)`
    fn compose_neg(&self) -> Self {
        RatPoly::new(self.coeffs().iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyConfig {
    pub n_min: usize,
    pub n_max: usize,
    #[serde(default = "all_suites")]
    pub suites: Vec<Suite>,
    #[serde(default)]
    pub extended: bool,
    #[serde(default)]
    pub cache: Option<PathBuf>,
    #[serde(default)]
    pub timing: bool,
}

fn all_suites() -> Vec<Suite> {
    Suite::ALL.to_vec()
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { n_min: 1, n_max: ROUTINE_MAX, suites: all_suites(), extended: false, cache: None, timing: false }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_min == 0 || self.n_min > self.n_max {
            return Err(Error::Syntax(format!("bad size range {}..{}", self.n_min, self.n_max)));
        }
        if self.suites.is_empty() {
            return Err(Error::Syntax("no suites selected".into()));
        }
        Ok(())
    }

    /// `LOOPLAB_CACHE` wins over the configured directory.
    pub fn cache_dir(&self) -> Option<PathBuf> {
        match std::env::var_os("LOOPLAB_CACHE") {
            Some(v) if !v.is_empty() => Some(PathBuf::from(v)),
            _ => self.cache.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: u32,
    pub config: VerifyConfig,
    pub pass: bool,
    pub reports: Vec<ConjectureReport>,
}

/// Runs every selected suite for every size, in a fixed order.
pub fn run_report(cfg: &VerifyConfig) -> Result<RunReport> {
    cfg.validate()?;
    let h = Harness::new(cfg.cache_dir(), cfg.extended);
    let mut suites = cfg.suites.clone();
    suites.sort();
    suites.dedup();
    let mut reports = vec![];
    for n in cfg.n_min..=cfg.n_max {
        for &s in &suites {
            let start = Instant::now();
            let mut rs = h.run_suite(s, n)?;
            if cfg.timing {
                let ms = start.elapsed().as_millis() as u64;
                rs.iter_mut().for_each(|r| r.elapsed_ms = Some(ms));
            }
            reports.extend(rs);
        }
    }
    Ok(RunReport { schema: SCHEMA, config: cfg.clone(), pass: reports.iter().all(|r| r.pass), reports })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h() -> Harness {
        Harness::new(None, false)
    }

    #[test]
    fn suites_parse() {
        assert_eq!("C1".parse::<Suite>().unwrap(), Suite::C1);
        assert_eq!("tau".parse::<Suite>().unwrap(), Suite::Tau);
        assert!("c9".parse::<Suite>().is_err());
    }

    #[test]
    fn small_sizes_pass() {
        let h = h();
        for n in 1..=3 {
            for s in Suite::ALL {
                for r in h.run_suite(s, n).unwrap() {
                    assert!(r.pass, "{} n={n}: {:?}", r.conjecture, r.counterexamples);
                }
            }
        }
    }

    #[test]
    fn c1_detail_at_two() {
        let r = h().verify_c1(2).unwrap();
        let v = r.verdicts.iter().find(|v| v.subject == "()()").unwrap();
        assert!(v.detail.contains("m=[1]"), "{}", v.detail);
        assert_eq!(r.verdicts.len(), 2);
    }

    #[test]
    fn c2_hand_case() {
        // ()()() has m_1 = 1, so its only cut is p = 2: ()() around ()
        let r = h().verify_c2(3).unwrap();
        let v = r.verdicts.iter().find(|v| v.subject == "()()()").unwrap();
        assert_eq!(v.detail, "p=2: -1 = -1*A_()");
    }

    #[test]
    fn gating() {
        assert!(matches!(h().verify_c1(5), Err(Error::Resource { size: 5, .. })));
        assert!(VerifyConfig { n_min: 3, n_max: 2, ..Default::default() }.validate().is_err());
    }

    #[test]
    fn division_by_linear_factor() {
        let p = &TauTPoly::from_t(&RatPoly::from_ints(&[2, 1])) * &TauTPoly::from_tau(&RatPoly::from_ints(&[1, 1]));
        assert_eq!(div_t_linear(&p, 2).unwrap(), TauTPoly::from_tau(&RatPoly::from_ints(&[1, 1])));
        assert!(div_t_linear(&p, 1).is_none());
    }

    #[test]
    fn report_is_deterministic() {
        let cfg = VerifyConfig { n_min: 2, n_max: 3, suites: vec![Suite::C1], ..Default::default() };
        let a = serde_json::to_string(&run_report(&cfg).unwrap()).unwrap();
        let b = serde_json::to_string(&run_report(&cfg).unwrap()).unwrap();
        assert_eq!(a, b);
        assert_eq!(run_report(&cfg).unwrap().reports.len(), 2);
    }
}
