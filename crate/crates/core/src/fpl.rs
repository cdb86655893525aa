//! Fully packed loops on the n×n grid with alternating boundary.
//!
//! Vertex `(r, c)` is 0-based, row 0 on top. The 4n external edges are indexed
//! counterclockwise starting at the top of the left side: left side `k = r`,
//! bottom `k = n + c`, right side `k = 3n - 1 - r`, top `k = 4n - 1 - c`.
//! Exactly the even `k` are selected, and selected edge `k` carries label `k/2 + 1`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matching::Matching;

/// Largest size accepted for exhaustive enumeration.
pub const MAX_FPL_SIZE: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FplConfig {
    n: usize,
    /// `h[r]` bit `c`: edge on the left of vertex `(r, c)`; bit `n` is the right external edge.
    h: Vec<u32>,
    /// `v[r]` bit `c`: edge above vertex `(r, c)`; `v[n]` holds the bottom external edges.
    v: Vec<u32>,
}

fn selected(k: usize) -> bool {
    k.is_multiple_of(2)
}

fn boundary(n: usize) -> (u32, u32, Vec<bool>, Vec<bool>) {
    let top = (0..n).filter(|&c| selected(4 * n - 1 - c)).fold(0, |m, c| m | 1 << c);
    let bottom = (0..n).filter(|&c| selected(n + c)).fold(0, |m, c| m | 1 << c);
    let left = (0..n).map(selected).collect();
    let right = (0..n).map(|r| selected(3 * n - 1 - r)).collect();
    (top, bottom, left, right)
}

/// All ways to fill one row given the vertical edges coming in from above.
/// Yields `(horizontal mask, vertical mask below)`.
fn row_fillings(n: usize, up: u32, left: bool, right: bool) -> Vec<(u32, u32)> {
    let mut out = vec![];
    fn rec(n: usize, c: usize, up: u32, carry: bool, right: bool, h: u32, down: u32, out: &mut Vec<(u32, u32)>) {
        if c == n {
            if carry == right {
                out.push((h | (carry as u32) << n, down));
            }
            return;
        }
        let used = (up >> c & 1) as usize + carry as usize;
        for r in 0..=1usize {
            let Some(d) = 2usize.checked_sub(used + r) else { continue };
            if d > 1 {
                continue;
            }
            rec(n, c + 1, up, r == 1, right, h | (carry as u32) << c, down | (d as u32) << c, out);
        }
    }
    rec(n, 0, up, left, right, 0, 0, &mut out);
    out
}

struct Enumerator {
    n: usize,
    bottom: u32,
    left: Vec<bool>,
    right: Vec<bool>,
    memo: [HashMap<u32, Vec<(u32, u32)>>; 2],
}

impl Enumerator {
    fn new(n: usize) -> (Self, u32) {
        let (top, bottom, left, right) = boundary(n);
        let e = Enumerator { n, bottom, left, right, memo: [HashMap::new(), HashMap::new()] };
        (e, top)
    }

    fn fillings(&mut self, r: usize, up: u32) -> Vec<(u32, u32)> {
        let (n, l, rt) = (self.n, self.left[r], self.right[r]);
        // rows of equal parity share their boundary bits
        self.memo[r % 2].entry(up).or_insert_with(|| row_fillings(n, up, l, rt)).clone()
    }

    fn walk(&mut self, r: usize, h: &mut Vec<u32>, v: &mut Vec<u32>, f: &mut dyn FnMut(&FplConfig)) {
        let n = self.n;
        if r == n {
            if v[n] == self.bottom {
                f(&FplConfig { n, h: h.clone(), v: v.clone() });
            }
            return;
        }
        for (hr, down) in self.fillings(r, v[r]) {
            if r + 1 == n && down != self.bottom {
                continue;
            }
            h[r] = hr;
            v[r + 1] = down;
            self.walk(r + 1, h, v, f);
        }
    }
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 || n > MAX_FPL_SIZE {
        return Err(Error::Resource { what: "FPL enumeration", size: n, bound: MAX_FPL_SIZE });
    }
    Ok(())
}

/// Calls `f` once for every configuration of size `n`, in a fixed order.
pub fn for_each_fpl(n: usize, mut f: impl FnMut(&FplConfig)) -> Result<()> {
    check_size(n)?;
    let (mut e, top) = Enumerator::new(n);
    let mut h = vec![0; n];
    let mut v = vec![0; n + 1];
    v[0] = top;
    e.walk(0, &mut h, &mut v, &mut f);
    Ok(())
}

/// Every configuration of size `n`, collected. Use [`for_each_fpl`] for large `n`.
pub fn enumerate_fpl(n: usize) -> Result<Vec<FplConfig>> {
    let mut out = vec![];
    for_each_fpl(n, |c| out.push(c.clone()))?;
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Dir {
    Left,
    Right,
    Up,
    Down,
}

impl FplConfig {
    pub fn size(&self) -> usize {
        self.n
    }

    fn has(&self, (r, c): (usize, usize), d: Dir) -> bool {
        match d {
            Dir::Left => self.h[r] >> c & 1 == 1,
            Dir::Right => self.h[r] >> (c + 1) & 1 == 1,
            Dir::Up => self.v[r] >> c & 1 == 1,
            Dir::Down => self.v[r + 1] >> c & 1 == 1,
        }
    }

    pub fn degree(&self, at: (usize, usize)) -> usize {
        [Dir::Left, Dir::Right, Dir::Up, Dir::Down].into_iter().filter(|&d| self.has(at, d)).count()
    }

    /// Every vertex has degree two and the boundary is the alternating one.
    pub fn is_valid(&self) -> bool {
        let n = self.n;
        let (top, bottom, left, right) = boundary(n);
        self.v[0] == top
            && self.v[n] == bottom
            && (0..n).all(|r| (self.h[r] & 1 == 1) == left[r] && (self.h[r] >> n & 1 == 1) == right[r])
            && (0..n).all(|r| (0..n).all(|c| self.degree((r, c)) == 2))
    }

    /// Left-right mirror image.
    pub fn mirror(&self) -> FplConfig {
        let n = self.n;
        let rev = |m: u32, bits: usize| (0..bits).fold(0, |acc, i| acc | (m >> i & 1) << (bits - 1 - i));
        FplConfig {
            n,
            h: self.h.iter().map(|&m| rev(m, n + 1)).collect(),
            v: self.v.iter().map(|&m| rev(m, n)).collect(),
        }
    }

    fn external_index(&self, (r, c): (usize, usize), d: Dir) -> Option<usize> {
        let n = self.n;
        match d {
            Dir::Left if c == 0 => Some(r),
            Dir::Down if r + 1 == n => Some(n + c),
            Dir::Right if c + 1 == n => Some(3 * n - 1 - r),
            Dir::Up if r == 0 => Some(4 * n - 1 - c),
            _ => None,
        }
    }

    fn entry(&self, k: usize) -> ((usize, usize), Dir) {
        let n = self.n;
        match k / n {
            0 => ((k, 0), Dir::Left),
            1 => ((n - 1, k - n), Dir::Down),
            2 => ((3 * n - 1 - k, n - 1), Dir::Right),
            _ => ((0, 4 * n - 1 - k), Dir::Up),
        }
    }

    /// Follows the path entering at external edge `k` to the external edge where it leaves.
    fn follow(&self, k: usize) -> usize {
        let (mut at, mut from) = self.entry(k);
        loop {
            let out = [Dir::Left, Dir::Right, Dir::Up, Dir::Down]
                .into_iter()
                .find(|&d| d != from && self.has(at, d))
                .expect("degree-two vertex");
            if let Some(k2) = self.external_index(at, out) {
                return k2;
            }
            let (r, c) = at;
            (at, from) = match out {
                Dir::Left => ((r, c - 1), Dir::Right),
                Dir::Right => ((r, c + 1), Dir::Left),
                Dir::Up => ((r - 1, c), Dir::Down),
                Dir::Down => ((r + 1, c), Dir::Up),
            };
        }
    }

    /// The matching formed by the paths between labelled external edges.
    pub fn link_pattern(&self) -> Matching {
        let n = self.n;
        let mut arches = vec![];
        for k in (0..4 * n).step_by(2) {
            let k2 = self.follow(k);
            if k < k2 {
                arches.push((k / 2 + 1, k2 / 2 + 1));
            }
        }
        Matching::from_arches(&arches).expect("FPL paths form a noncrossing matching")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct FplCensus {
    pub n: usize,
    pub counts: BTreeMap<Matching, u64>,
}

impl FplCensus {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn get(&self, pi: &Matching) -> u64 {
        self.counts.get(pi).copied().unwrap_or(0)
    }
}

/// Counts configurations by link pattern. Work is split over the fillings of the first row.
pub fn fpl_census(n: usize) -> Result<FplCensus> {
    check_size(n)?;
    let (top, ..) = boundary(n);
    let (mut e, _) = Enumerator::new(n);
    let firsts = e.fillings(0, top);
    let parts: Vec<HashMap<u64, u64>> = firsts
        .into_par_iter()
        .map(|(h0, down)| {
            let (mut e, _) = Enumerator::new(n);
            let mut counts = HashMap::new();
            let mut h = vec![0; n];
            let mut v = vec![0; n + 1];
            v[0] = top;
            h[0] = h0;
            v[1] = down;
            e.walk(1, &mut h, &mut v, &mut |c| {
                *counts.entry(c.link_pattern().bits()).or_insert(0) += 1;
            });
            counts
        })
        .collect();
    let mut counts = BTreeMap::new();
    for part in parts {
        for (w, k) in part {
            *counts.entry(Matching::from_bits(n, w)?).or_insert(0) += k;
        }
    }
    Ok(FplCensus { n, counts })
}

fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

/// Number of FPLs of size `n`, from the product formula.
pub fn a_n(n: usize) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for k in 0..n {
        num *= factorial(3 * k + 1);
        den *= factorial(n + k);
    }
    num / den
}

/// Number of vertically symmetric FPLs of size `n`; zero for even `n`.
pub fn a_v(n: usize) -> BigUint {
    if n.is_multiple_of(2) {
        return BigUint::default();
    }
    let m = n / 2;
    let mut num = BigUint::one();
    let mut den = BigUint::one() << m;
    for k in 1..=m {
        num *= factorial(6 * k - 2) * factorial(2 * k - 1);
        den *= factorial(4 * k - 1) * factorial(4 * k - 2);
    }
    num / den
}
