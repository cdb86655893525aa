//! The polynomials `A_π(t)` by interpolation of groundstate components of nested matchings.

use num_traits::{One, Zero};

use crate::cpl::{to_bigint, GroundStateCache};
use crate::error::{ensure, Error, Result};
use crate::matching::{enumerate_matchings, Matching};
use crate::poly::{factorial_q, integer_root_report, interpolate, q, RatPoly, RootReport, Q};

/// Number of extra nodes checked beyond the `d + 1` that determine the polynomial.
pub const GUARD_NODES: usize = 2;

/// `A_π(t)` with the number of guard nodes that could be checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct APoly {
    pub poly: RatPoly,
    pub guards: usize,
}

/// Smallest groundstate size needed to interpolate `A_π`, guards excluded.
pub fn required_size(pi: &Matching) -> usize {
    pi.size() + pi.d()
}

pub fn a_poly_guarded(pi: &Matching, cache: &GroundStateCache) -> Result<APoly> {
    let (n, d) = (pi.size(), pi.d());
    if n + d > cache.max_size() {
        return Err(Error::Resource { what: "interpolation of A_pi", size: n + d, bound: cache.max_size() });
    }
    let guards = GUARD_NODES.min(cache.max_size() - n - d);
    let mut values = Vec::with_capacity(d + 1 + guards);
    for p in 0..=d + guards {
        values.push((q(p as i64), Q::from_integer(to_bigint(cache.psi_of(pi, p)?))));
    }
    let poly = interpolate(&values[..=d])?;
    ensure!(poly.degree() == Some(d), "A_{pi} has degree {:?}, expected {d}", poly.degree());
    let h = Q::from_integer(pi.young().hook_product().into());
    ensure!(poly.leading() * &h == Q::one(), "A_{pi} leading coefficient {} is not 1/{h}", poly.leading());
    for (x, y) in &values[d + 1..] {
        ensure!(&poly.eval(x) == y, "A_{pi} misses guard node {x}");
    }
    Ok(APoly { poly, guards })
}

pub fn a_poly(pi: &Matching, cache: &GroundStateCache) -> Result<RatPoly> {
    a_poly_guarded(pi, cache).map(|a| a.poly)
}

/// `G_π = A_π(-|π|)`, which must be an integer.
pub fn g_value(pi: &Matching, cache: &GroundStateCache) -> Result<num_bigint::BigInt> {
    let v = a_poly(pi, cache)?.eval_int(-(pi.size() as i64));
    ensure!(v.is_integer(), "G_{pi} = {v} is not an integer");
    Ok(v.to_integer())
}

/// Integer roots `-1 .. -(n-1)` of `d! A_π(t)` and the cofactor.
pub fn root_report(pi: &Matching, poly: &RatPoly) -> RootReport {
    let n = pi.size() as i64;
    integer_root_report(poly, 1..=(n - 1).max(0), &factorial_q(pi.d()))
}

/// The difference `A_{()^n}(t) - Σ_{|π|=n} A_π(t-1)`, zero when the sum rule holds.
pub fn sum_rule_defect(n: usize, cache: &GroundStateCache) -> Result<RatPoly> {
    let lhs = a_poly(&Matching::small_arches(n), cache)?;
    let mut rhs = RatPoly::zero();
    for pi in enumerate_matchings(n) {
        rhs = &rhs + &a_poly(&pi, cache)?.shift(&q(-1));
    }
    Ok(&lhs - &rhs)
}

/// Whether all coefficients in the basis `C(t+d-i, d)` are integers.
pub fn binomial_coeffs_integral(p: &RatPoly) -> bool {
    p.binomial_basis().iter().all(|c| c.is_integer() || c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q_frac;

    fn mm(s: &str) -> Matching {
        s.parse().unwrap()
    }

    fn cache() -> GroundStateCache {
        GroundStateCache::new(None, 10)
    }

    #[test]
    fn small_polynomials() {
        let c = cache();
        assert_eq!(a_poly(&Matching::nested(4), &c).unwrap(), RatPoly::one());
        assert_eq!(a_poly(&mm("()()"), &c).unwrap(), RatPoly::from_ints(&[1, 1]));
        assert_eq!(a_poly(&mm("(()())"), &c).unwrap(), RatPoly::from_ints(&[2, 1]));
        let g = a_poly_guarded(&mm("()()()"), &c).unwrap();
        assert_eq!(g.guards, 2);
        assert_eq!(g.poly.leading(), q_frac(1, 3));
    }

    #[test]
    fn nesting_shift_and_conjugation() {
        let c = cache();
        for n in 1..=3 {
            for pi in enumerate_matchings(n) {
                let a = a_poly(&pi, &c).unwrap();
                assert_eq!(a, a_poly(&pi.conjugate(), &c).unwrap());
                assert_eq!(a.shift(&q(1)), a_poly(&pi.nest(1), &c).unwrap());
                assert!(binomial_coeffs_integral(&a));
            }
        }
    }

    #[test]
    fn sum_rule_small() {
        let c = cache();
        for n in 1..=3 {
            assert!(sum_rule_defect(n, &c).unwrap().is_zero());
        }
    }

    #[test]
    fn resource_bound() {
        let c = GroundStateCache::new(None, 5);
        assert!(matches!(a_poly(&mm("()()()()"), &c), Err(Error::Resource { .. })));
        assert_eq!(a_poly_guarded(&mm("()()()"), &GroundStateCache::new(None, 6)).unwrap().guards, 0);
    }
}
