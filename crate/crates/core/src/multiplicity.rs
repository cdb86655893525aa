//! Root multiplicities `m_p(π)` by the arch rule and the rim rule.

use std::collections::BTreeMap;

use crate::error::{ensure, Error, Result};
use crate::matching::Matching;
use crate::young::YoungDiagram;

/// `m_p` for `p = 1..n-1`; zero elsewhere.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(transparent)]
pub struct MultiplicityVector {
    m: Vec<usize>,
}

impl MultiplicityVector {
    fn zeros(n: usize) -> Self {
        MultiplicityVector { m: vec![0; n.saturating_sub(1)] }
    }

    pub fn from_multiset(n: usize, labels: &[i64]) -> Self {
        let mut v = Self::zeros(n);
        for &l in labels {
            if l >= 1 && (l as usize) < n {
                v.m[l as usize - 1] += 1;
            }
        }
        v
    }

    pub fn get(&self, p: i64) -> usize {
        if p >= 1 && (p as usize) <= self.m.len() {
            self.m[p as usize - 1]
        } else {
            0
        }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.m
    }

    pub fn total(&self) -> usize {
        self.m.iter().sum()
    }

    /// Labels with repetition, ascending.
    pub fn to_multiset(&self) -> Vec<i64> {
        let mut out = vec![];
        for (i, &k) in self.m.iter().enumerate() {
            out.extend(std::iter::repeat_n(i as i64 + 1, k));
        }
        out
    }
}

/// Sizes of the arch sets on either side of cut `p`.
pub fn arch_sets(pi: &Matching, p: usize) -> (usize, usize) {
    let n = pi.size();
    let hat = 2 * n + 1 - p;
    let mut left = 0;
    let mut right = 0;
    for (a1, a2) in pi.arches() {
        if a1 <= p && p < a2 && a2 < hat {
            left += 1;
        }
        if p < a1 && a1 < hat && hat <= a2 {
            right += 1;
        }
    }
    (left, right)
}

pub fn m_rule_a(pi: &Matching) -> Result<MultiplicityVector> {
    let n = pi.size();
    let mut v = MultiplicityVector::zeros(n);
    for p in 1..n {
        let (l, r) = arch_sets(pi, p);
        ensure!((l + r) % 2 == 0, "odd arch count {} at p={p} for {pi}", l + r);
        v.m[p - 1] = (l + r) / 2;
    }
    Ok(v)
}

fn label(n: usize, (x, y): (usize, usize)) -> i64 {
    n as i64 + 1 - x as i64 - y as i64
}

/// Multiset attached to the outer rim of `y`, with boxes labelled `n+1-x-y`.
pub fn rim_multiset(n: usize, y: &YoungDiagram) -> Vec<i64> {
    let rim = y.rim();
    let i = label(n, (y.rows().len(), 1));
    let j = label(n, (1, y.row(1)));
    let k = rim.iter().map(|&b| label(n, b)).min().unwrap();
    let mut out = vec![k];
    out.extend(k + 1..=i);
    out.extend(k + 1..=j);
    out.sort();
    out
}

pub fn m_rule_b(pi: &Matching) -> MultiplicityVector {
    let n = pi.size();
    let mut labels = vec![];
    let mut y = pi.young();
    while !y.is_empty() {
        labels.extend(rim_multiset(n, &y));
        y = y.without_rim();
    }
    MultiplicityVector::from_multiset(n, &labels)
}

/// Both rules, which must agree.
pub fn m(pi: &Matching) -> Result<MultiplicityVector> {
    let a = m_rule_a(pi)?;
    let b = m_rule_b(pi);
    ensure!(a == b, "rule A {:?} != rule B {:?} for {pi}", a.m, b.m);
    Ok(a)
}

/// Removes the outer rim by flipping the leftmost `)` and the rightmost `(`.
pub fn remove_rim(pi: &Matching) -> Result<(Matching, Vec<i64>)> {
    if pi.d() == 0 {
        return Err(Error::OutOfRange(format!("{pi} has no rim")));
    }
    let n = pi.size();
    let w = pi.bits();
    let first_close = (!w).trailing_zeros();
    let last_open = 63 - w.leading_zeros();
    let w2 = (w | 1 << first_close) & !(1u64 << last_open);
    let next = Matching::from_bits(n, w2)?;
    Ok((next, rim_multiset(n, &pi.young())))
}

/// Splits `π = α ∘ β` with `|α| = p`, which is possible iff `m_p(π) = 0`.
pub fn decompose_at(pi: &Matching, p: usize) -> Result<Option<(Matching, Matching)>> {
    let n = pi.size();
    if p < 1 || p >= n {
        return Err(Error::OutOfRange(format!("cut {p} for size {n}")));
    }
    if arch_sets(pi, p) != (0, 0) {
        return Ok(None);
    }
    let w = pi.bits();
    let left = w & ((1u64 << p) - 1);
    let right = w >> (2 * n - p);
    let inner = (w >> p) & ((1u64 << (2 * (n - p))) - 1);
    let alpha = Matching::from_bits(p, left | right << p)?;
    let beta = Matching::from_bits(n - p, inner)?;
    Ok(Some((alpha, beta)))
}

/// Multiset difference `a - b`, or `None` if `b` is not contained in `a`.
pub fn multiset_minus(a: &[i64], b: &[i64]) -> Option<Vec<i64>> {
    let mut count: BTreeMap<i64, i64> = BTreeMap::new();
    for &x in a {
        *count.entry(x).or_default() += 1;
    }
    for &x in b {
        *count.entry(x).or_default() -= 1;
    }
    let mut out = vec![];
    for (x, c) in count {
        if c < 0 {
            return None;
        }
        out.extend(std::iter::repeat_n(x, c as usize));
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::enumerate_matchings;

    fn mm(s: &str) -> Matching {
        s.parse().unwrap()
    }

    #[test]
    fn small_examples() {
        assert_eq!(m(&mm("()()")).unwrap().as_slice(), &[1]);
        assert_eq!(arch_sets(&mm("()()"), 1), (1, 1));
        for n in 1..=6 {
            assert!(m(&Matching::nested(n)).unwrap().as_slice().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn rules_agree_and_parity() {
        for n in 1..=8 {
            for p in enumerate_matchings(n) {
                let v = m(&p).unwrap();
                assert!(v.total() <= p.d() && (p.d() - v.total()).is_multiple_of(2));
            }
        }
    }

    #[test]
    fn conjugation_and_nesting() {
        for n in 1..=6 {
            for p in enumerate_matchings(n) {
                assert_eq!(m(&p).unwrap(), m(&p.conjugate()).unwrap());
                if n <= 4 {
                    for l in 1..=3 {
                        let q = m(&p.nest(l)).unwrap();
                        for i in 1..n as i64 {
                            assert_eq!(q.get(i + l as i64), m(&p).unwrap().get(i));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn figure_rim() {
        // a rim whose bottom-left, top-right and minimal labels are 4, 5, 2
        let n = 8;
        let y = YoungDiagram::new(vec![3, 3, 3, 3]);
        assert_eq!(label(n, (4, 1)), 4);
        assert_eq!(label(n, (1, 3)), 5);
        assert_eq!(rim_multiset(n, &y), vec![2, 3, 3, 4, 4, 5]);
        let labels: Vec<i64> = y.rim().iter().map(|&b| label(n, b)).collect();
        assert_eq!(*labels.iter().min().unwrap(), 2);
    }

    #[test]
    fn rim_removal_matches_multiset_difference() {
        for n in 1..=6 {
            for p in enumerate_matchings(n) {
                if p.d() == 0 {
                    assert!(remove_rim(&p).is_err());
                    continue;
                }
                let (q, rim) = remove_rim(&p).unwrap();
                assert_eq!(q.young(), p.young().without_rim());
                let mp = m(&p).unwrap().to_multiset();
                let mq = m(&q).unwrap().to_multiset();
                let inrange: Vec<i64> = rim.iter().copied().filter(|&x| x >= 1 && x < n as i64).collect();
                assert_eq!(multiset_minus(&mp, &mq), Some(inrange), "{p}");
            }
        }
    }

    #[test]
    fn one_box_rim() {
        let p = mm("()()");
        let (q, rim) = remove_rim(&p).unwrap();
        assert_eq!(q, Matching::nested(2));
        assert_eq!(rim, vec![1]);
    }

    #[test]
    fn decompositions() {
        assert_eq!(decompose_at(&mm("()()()"), 1).unwrap(), None);
        assert_eq!(decompose_at(&mm("()()()"), 2).unwrap(), Some((mm("()()"), mm("()"))));
        assert_eq!(decompose_at(&mm("(())"), 1).unwrap(), Some((mm("()"), mm("()"))));
        assert!(decompose_at(&mm("(())"), 2).is_err());
        for n in 2..=6 {
            for p in enumerate_matchings(n) {
                let v = m(&p).unwrap();
                for cut in 1..n {
                    let d = decompose_at(&p, cut).unwrap();
                    assert_eq!(d.is_some(), v.get(cut as i64) == 0);
                    if let Some((a, b)) = d {
                        assert_eq!(Matching::compose(&a, &b), p);
                    }
                }
            }
        }
        for na in 1..=3 {
            for nb in 1..=3 {
                for a in enumerate_matchings(na) {
                    for b in enumerate_matchings(nb) {
                        let c = Matching::compose(&a, &b);
                        assert_eq!(decompose_at(&c, na).unwrap(), Some((a, b)));
                        for i in 1..na as i64 {
                            assert_eq!(m(&c).unwrap().get(i), m(&a).unwrap().get(i));
                        }
                    }
                }
            }
        }
    }
}
