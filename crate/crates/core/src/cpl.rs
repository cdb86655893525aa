//! Temperley–Lieb operators on matchings, the loop Hamiltonian and its groundstate.
//!
//! The groundstate is symmetric under rotation and conjugation, so the solver works on
//! the system lumped over dihedral orbits. It solves that system in floating point,
//! refines the answer to integers using exact residuals, and then certifies it: the
//! lumped equations hold exactly and the transition graph is strongly connected, so the
//! kernel is one-dimensional.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{ensure, Error, Result};
use crate::matching::{catalan, enumerate_matchings, for_each_matching, Matching, Ranker};

/// Largest size whose groundstate fits the `u128` representation used here.
pub const MAX_GROUNDSTATE_SIZE: usize = 12;

/// `e_i` for `0 <= i < 2n`: creates the arch `(i, i+1)` (`(2n, 1)` for `i = 0`) and joins
/// the former partners.
pub fn apply_e(i: usize, pi: &Matching) -> Matching {
    let m = 2 * pi.size();
    assert!(i < m, "e_{i} out of range for size {}", pi.size());
    let mut p = pi.partners0();
    let u = (i + m - 1) % m;
    let v = i % m;
    let (a, b) = (p[u] as usize, p[v] as usize);
    if a == v {
        return *pi;
    }
    p[u] = v as u8;
    p[v] = u as u8;
    p[a] = b as u8;
    p[b] = a as u8;
    Matching::from_partners0(&p[..m])
}

/// `H = Σ_i (1 - e_i)` acting on column vectors indexed by matchings in canonical order.
#[derive(Clone, Debug)]
pub struct Hamiltonian {
    pub basis: Vec<Matching>,
    /// `cols[s]` lists the nonzero entries `(row, value)` of column `s`.
    pub cols: Vec<Vec<(usize, i64)>>,
}

pub fn hamiltonian(n: usize) -> Hamiltonian {
    let basis = enumerate_matchings(n);
    let ranker = Ranker::new(n);
    let cols = basis
        .iter()
        .enumerate()
        .map(|(s, sigma)| {
            let mut col: BTreeMap<usize, i64> = BTreeMap::new();
            *col.entry(s).or_default() += 2 * n as i64;
            for i in 0..2 * n {
                *col.entry(ranker.rank(&apply_e(i, sigma))).or_default() -= 1;
            }
            col.into_iter().filter(|&(_, v)| v != 0).collect()
        })
        .collect();
    Hamiltonian { basis, cols }
}

impl Hamiltonian {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Dense rows, for small sizes.
    pub fn rows(&self) -> Vec<Vec<i64>> {
        let d = self.dim();
        let mut r = vec![vec![0i64; d]; d];
        for (s, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                r[i][s] = v;
            }
        }
        r
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut y = vec![BigInt::zero(); self.dim()];
        for (s, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                y[i] += &x[s] * v;
            }
        }
        y
    }
}

/// Kernel of `H` by fraction-free Gauss–Jordan elimination over the integers with sparse
/// rows, normalized so the component of `()_n` is 1. Meant for small sizes.
pub fn kernel_exact(h: &Hamiltonian) -> Result<Vec<BigRational>> {
    let d = h.dim();
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); d];
    for (s, col) in h.cols.iter().enumerate() {
        for &(i, v) in col {
            rows[i].insert(s, BigInt::from(v));
        }
    }
    let mut pivots: Vec<(usize, usize)> = vec![]; // (row, column)
    let mut used = vec![false; d];
    for c in 0..d {
        let Some(r) = (0..d).find(|&r| !used[r] && rows[r].contains_key(&c)) else {
            continue;
        };
        used[r] = true;
        let prow = std::mem::take(&mut rows[r]);
        let pv = prow[&c].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == r {
                continue;
            }
            let Some(q) = row.get(&c).cloned() else { continue };
            let g = pv.gcd(&q);
            let (fa, fb) = (&pv / &g, &q / &g);
            for v in row.values_mut() {
                *v *= &fa;
            }
            for (col, v) in &prow {
                let e = row.entry(*col).or_insert_with(BigInt::zero);
                *e -= &fb * v;
            }
            row.retain(|_, v| !v.is_zero());
            let content = row.values().fold(BigInt::zero(), |acc, v| acc.gcd(v));
            if !content.is_zero() && !content.is_one() {
                for v in row.values_mut() {
                    *v /= &content;
                }
            }
        }
        rows[r] = prow;
        pivots.push((r, c));
    }
    let free: Vec<usize> = (0..d).filter(|c| !pivots.iter().any(|p| p.1 == *c)).collect();
    ensure!(free.len() == 1, "kernel dimension {} != 1", free.len());
    let f = free[0];
    let mut x = vec![BigRational::zero(); d];
    x[f] = BigRational::one();
    for &(r, c) in &pivots {
        let row = &rows[r];
        let coef = row.get(&f).cloned().unwrap_or_default();
        x[c] = -BigRational::new(coef, row[&c].clone());
    }
    let root = x[0].clone(); // ()_n is first in canonical order
    ensure!(!root.is_zero(), "groundstate vanishes at ()_n");
    Ok(x.into_iter().map(|v| v / &root).collect())
}

/// The groundstate at one size, stored per dihedral orbit.
#[derive(Clone, Debug, PartialEq)]
pub struct GroundState {
    n: usize,
    /// Lexicographically smallest member of each orbit, sorted.
    reps: Vec<Matching>,
    sizes: Vec<u32>,
    values: Vec<u128>,
}

/// Smallest member of the dihedral orbit of `pi`.
pub fn orbit_min(pi: &Matching) -> Matching {
    let mut best = *pi;
    let mut r = *pi;
    for _ in 0..2 * pi.size() {
        best = best.min(r).min(r.conjugate());
        r = r.rotate();
    }
    best
}

impl GroundState {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn orbit_count(&self) -> usize {
        self.reps.len()
    }

    pub fn component(&self, pi: &Matching) -> u128 {
        assert_eq!(pi.size(), self.n, "size mismatch");
        let key = orbit_min(pi);
        let k = self.reps.binary_search(&key).expect("every orbit is represented");
        self.values[k]
    }

    /// All components in canonical order.
    pub fn components(&self) -> Vec<(Matching, u128)> {
        let mut out = Vec::with_capacity(catalan(self.n) as usize);
        for_each_matching(self.n, |m| out.push((m, self.component(&m))));
        out
    }

    pub fn sum(&self) -> u128 {
        self.sizes.iter().zip(&self.values).map(|(&s, &v)| s as u128 * v).sum()
    }

    pub fn orbits(&self) -> impl Iterator<Item = (Matching, u32, u128)> + '_ {
        self.reps.iter().zip(&self.sizes).zip(&self.values).map(|((&r, &s), &v)| (r, s, v))
    }

    fn to_json(&self) -> String {
        let reps: Vec<String> = self.reps.iter().map(|r| format!("\"{r}\"")).collect();
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        format!(
            "{{\"version\":1,\"n\":{},\"order\":\"lex-a-seq-orbit-min\",\"representatives\":[{}],\"components\":[{}]}}\n",
            self.n,
            reps.join(","),
            vals.join(",")
        )
    }

    fn from_json(text: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(text)?;
        let bad = || Error::Invariant("malformed groundstate cache file".into());
        ensure!(v["version"] == 1, "unsupported cache version");
        let n = v["n"].as_u64().ok_or_else(bad)? as usize;
        let reps = v["representatives"]
            .as_array()
            .ok_or_else(bad)?
            .iter()
            .map(|r| r.as_str().ok_or_else(bad)?.parse::<Matching>())
            .collect::<Result<Vec<_>>>()?;
        let values = v["components"]
            .as_array()
            .ok_or_else(bad)?
            .iter()
            .map(|x| match x {
                serde_json::Value::Number(num) => num.to_string().parse::<u128>().map_err(|_| bad()),
                _ => Err(bad()),
            })
            .collect::<Result<Vec<_>>>()?;
        ensure!(reps.len() == values.len(), "cache length mismatch");
        let sizes = reps.iter().map(|r| r.dihedral_orbit().len() as u32).collect();
        let gs = GroundState { n, reps, sizes, values };
        gs.certify()?;
        Ok(gs)
    }

    /// Re-checks the lumped equations exactly and the normalization.
    fn certify(&self) -> Result<()> {
        let sys = OrbitSystem::from_reps(self.n, self.reps.clone())?;
        let x: Vec<i128> = self.values.iter().map(|&v| v as i128).collect();
        ensure!(x[sys.root] == 1, "normalization at ()_n is {}", x[sys.root]);
        ensure!(sys.residual_is_zero(&x), "lumped equations fail for size {}", self.n);
        ensure!(sys.strongly_connected(), "transition graph not strongly connected");
        Ok(())
    }
}

/// The Hamiltonian lumped over dihedral orbits.
struct OrbitSystem {
    n: usize,
    reps: Vec<Matching>,
    sizes: Vec<u32>,
    /// `out[o']` lists `(o, c(o' -> o))`: how many `e_i` send a member of `o'` into `o`.
    out: Vec<Vec<(u32, u32)>>,
    root: usize,
}

impl OrbitSystem {
    fn build(n: usize) -> Result<Self> {
        let total = catalan(n) as usize;
        let ranker = Ranker::new(n);
        let mut orbit_of = vec![u32::MAX; total];
        let mut reps = vec![];
        let mut sizes = vec![];
        let mut idx = 0usize;
        for_each_matching(n, |m| {
            if orbit_of[idx] == u32::MAX {
                let id = reps.len() as u32;
                let orb = m.dihedral_orbit();
                for o in &orb {
                    orbit_of[ranker.rank(o)] = id;
                }
                reps.push(m);
                sizes.push(orb.len() as u32);
            }
            idx += 1;
        });
        let out = reps
            .iter()
            .map(|r| {
                let mut t: BTreeMap<u32, u32> = BTreeMap::new();
                for i in 0..2 * n {
                    *t.entry(orbit_of[ranker.rank(&apply_e(i, r))]).or_default() += 1;
                }
                t.into_iter().collect()
            })
            .collect();
        let root = orbit_of[0] as usize;
        Ok(OrbitSystem { n, reps, sizes, out, root })
    }

    /// Rebuilds the transitions from known representatives without enumerating all
    /// matchings.
    fn from_reps(n: usize, reps: Vec<Matching>) -> Result<Self> {
        ensure!(reps.windows(2).all(|w| w[0] < w[1]), "representatives not sorted");
        let index: HashMap<Matching, u32> = reps.iter().enumerate().map(|(i, r)| (*r, i as u32)).collect();
        let mut sizes = vec![];
        let mut out = vec![];
        let mut members = 0u64;
        for r in &reps {
            ensure!(orbit_min(r) == *r, "{r} is not an orbit minimum");
            let s = r.dihedral_orbit().len() as u32;
            members += s as u64;
            sizes.push(s);
            let mut t: BTreeMap<u32, u32> = BTreeMap::new();
            for i in 0..2 * n {
                let o = *index
                    .get(&orbit_min(&apply_e(i, r)))
                    .ok_or_else(|| Error::Invariant("orbit missing from cache".into()))?;
                *t.entry(o).or_default() += 1;
            }
            out.push(t.into_iter().collect());
        }
        ensure!(members == catalan(n), "orbits do not cover all matchings");
        let root = index[&Matching::nested(n)] as usize;
        Ok(OrbitSystem { n, reps, sizes, out, root })
    }

    fn len(&self) -> usize {
        self.reps.len()
    }

    /// `(L x)_o = 2n|o| x_o - Σ_{o'} |o'| c(o'->o) x_{o'}` computed exactly.
    fn apply_exact(&self, x: &[i128]) -> Option<Vec<i128>> {
        let two_n = 2 * self.n as i128;
        let mut y = (0..self.len())
            .map(|o| (two_n * self.sizes[o] as i128).checked_mul(x[o]))
            .collect::<Option<Vec<i128>>>()?;
        for (src, targets) in self.out.iter().enumerate() {
            let w = (self.sizes[src] as i128).checked_mul(x[src])?;
            for &(dst, c) in targets {
                let d = &mut y[dst as usize];
                *d = d.checked_sub((c as i128).checked_mul(w)?)?;
            }
        }
        Some(y)
    }

    fn residual_is_zero(&self, x: &[i128]) -> bool {
        self.apply_exact(x).is_some_and(|y| y.iter().all(|v| *v == 0))
    }

    /// Every orbit reachable from the orbit of `()^n` and back.
    fn strongly_connected(&self) -> bool {
        let start = self.reps.binary_search(&orbit_min(&Matching::small_arches(self.n))).unwrap();
        let m = self.len();
        let mut rev: Vec<Vec<u32>> = vec![vec![]; m];
        for (s, t) in self.out.iter().enumerate() {
            for &(d, _) in t {
                rev[d as usize].push(s as u32);
            }
        }
        let reach = |adj: &dyn Fn(usize) -> Vec<usize>| {
            let mut seen = vec![false; m];
            let mut q = VecDeque::from([start]);
            seen[start] = true;
            while let Some(u) = q.pop_front() {
                for v in adj(u) {
                    if !seen[v] {
                        seen[v] = true;
                        q.push_back(v);
                    }
                }
            }
            seen.iter().all(|&s| s)
        };
        reach(&|u| self.out[u].iter().map(|&(d, _)| d as usize).collect())
            && reach(&|u| rev[u].iter().map(|&d| d as usize).collect())
    }

    /// The reduced system with the root unknown fixed to 1 and the root row dropped,
    /// as sparse rows over the non-root unknowns, plus its right-hand side.
    fn reduced(&self) -> (Vec<usize>, Vec<Vec<(usize, f64)>>, Vec<i128>) {
        let m = self.len();
        let keep: Vec<usize> = (0..m).filter(|&o| o != self.root).collect();
        let mut pos = vec![usize::MAX; m];
        for (k, &o) in keep.iter().enumerate() {
            pos[o] = k;
        }
        let mut rows: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); keep.len()];
        let two_n = 2.0 * self.n as f64;
        for (k, &o) in keep.iter().enumerate() {
            *rows[k].entry(k).or_default() += two_n * self.sizes[o] as f64;
        }
        let mut rhs = vec![0i128; keep.len()];
        for (src, targets) in self.out.iter().enumerate() {
            for &(dst, c) in targets {
                let d = dst as usize;
                if d == self.root {
                    continue;
                }
                let coef = c as f64 * self.sizes[src] as f64;
                if src == self.root {
                    rhs[pos[d]] += c as i128 * self.sizes[src] as i128;
                } else {
                    *rows[pos[d]].entry(pos[src]).or_default() -= coef;
                }
            }
        }
        let rows = rows.into_iter().map(|r| r.into_iter().collect()).collect();
        (keep, rows, rhs)
    }

    fn solve(&self) -> Result<Vec<i128>> {
        let debug = std::env::var_os("LOOPLAB_DEBUG").is_some();
        let m = self.len();
        let mut x = vec![0i128; m];
        x[self.root] = 1;
        if m == 1 {
            ensure!(self.residual_is_zero(&x), "size {} root not stationary", self.n);
            return Ok(x);
        }
        let (keep, rows, rhs) = self.reduced();
        let rhs_f: Vec<f64> = rhs.iter().map(|&v| v as f64).collect();
        let first = SparseF64::new(rows.clone()).solve(&rhs_f)?;
        ensure!(first.iter().all(|v| v.is_finite() && *v > 0.0), "float groundstate not positive at size {}", self.n);
        // Rescale by the approximate solution so the system becomes I - P with P
        // close to stochastic; corrections are then accurate relative to each component.
        let col: Vec<f64> = first.iter().map(|v| v.max(1.0)).collect();
        let row_scale: Vec<f64> = rows
            .iter()
            .enumerate()
            .map(|(k, r)| {
                let d = r.iter().find(|e| e.0 == k).map_or(1.0, |e| e.1);
                1.0 / (d * col[k])
            })
            .collect();
        let scaled = SparseF64::new(
            rows.iter()
                .enumerate()
                .map(|(k, r)| r.iter().map(|&(j, v)| (j, v * row_scale[k] * col[j])).collect())
                .collect(),
        );
        // integer part plus a fractional part; the fraction keeps rounding noise out of the refinement
        let mut u: Vec<i128> = first.iter().map(|v| v.round() as i128).collect();
        let mut frac: Vec<f64> = first.iter().zip(&u).map(|(v, &k)| v - k as f64).collect();
        for round in 0..60 {
            let mut r = rhs.clone();
            for (k, row) in rows.iter().enumerate() {
                for &(j, v) in row {
                    r[k] = (v as i128)
                        .checked_mul(u[j])
                        .and_then(|w| r[k].checked_sub(w))
                        .ok_or_else(|| Error::Invariant("residual overflow".into()))?;
                }
            }
            if r.iter().all(|&v| v == 0) {
                for (k, &o) in keep.iter().enumerate() {
                    x[o] = u[k];
                }
                ensure!(self.residual_is_zero(&x), "refined solution not exact");
                return Ok(x);
            }
            let mut rf: Vec<f64> = r.iter().map(|&v| v as f64).collect();
            for (k, row) in rows.iter().enumerate() {
                rf[k] -= row.iter().map(|&(j, v)| v * frac[j]).sum::<f64>();
            }
            let rs: Vec<f64> = rf.iter().zip(&row_scale).map(|(v, s)| v * s).collect();
            let delta: Vec<f64> = scaled.solve(&rs)?.iter().zip(&col).map(|(w, c)| w * c).collect();
            let mut big = 0.0f64;
            for ((uk, fk), dk) in u.iter_mut().zip(frac.iter_mut()).zip(&delta) {
                ensure!(dk.abs() < 1e36, "groundstate correction out of range at size {}", self.n);
                big = big.max(dk.abs());
                *fk += dk;
                let whole = fk.round();
                *uk += whole as i128;
                *fk -= whole;
            }
            if debug {
                let norm = r.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0);
                eprintln!("size {} round {round}: residual {norm} max step {big:e}", self.n);
            }
        }
        Err(Error::Invariant(format!("groundstate refinement did not converge at size {}", self.n)))
    }
}

/// Sparse square matrix with integer-valued `f64` entries, plus an incomplete LU factor
/// with the same sparsity used as a preconditioner.
struct SparseF64 {
    rows: Vec<Vec<(usize, f64)>>,
    ilu: Vec<Vec<(usize, f64)>>,
    diag_pos: Vec<usize>,
}

impl SparseF64 {
    fn new(mut rows: Vec<Vec<(usize, f64)>>) -> Self {
        let n = rows.len();
        for (k, r) in rows.iter_mut().enumerate() {
            if !r.iter().any(|e| e.0 == k) {
                r.push((k, 0.0));
            }
            r.sort_by_key(|e| e.0);
        }
        let mut ilu = rows.clone();
        let diag_pos: Vec<usize> =
            ilu.iter().enumerate().map(|(k, r)| r.iter().position(|e| e.0 == k).unwrap()).collect();
        let mut marker = vec![usize::MAX; n];
        for i in 0..n {
            for (p, &(j, _)) in ilu[i].iter().enumerate() {
                marker[j] = p;
            }
            for p in 0..diag_pos[i] {
                let k = ilu[i][p].0;
                let pivot = ilu[k][diag_pos[k]].1;
                let pivot = if pivot.abs() > 1e-300 { pivot } else { 1.0 };
                let lik = ilu[i][p].1 / pivot;
                ilu[i][p].1 = lik;
                let (head, tail) = ilu.split_at_mut(i);
                let rowk = &head[k];
                for &(j, v) in &rowk[diag_pos[k] + 1..] {
                    let q = marker[j];
                    if q != usize::MAX {
                        tail[0][q].1 -= lik * v;
                    }
                }
            }
            for &(j, _) in &ilu[i] {
                marker[j] = usize::MAX;
            }
        }
        SparseF64 { rows, ilu, diag_pos }
    }

    /// `x = (LU)^{-1} x` in place.
    fn precondition(&self, x: &mut [f64]) {
        let n = x.len();
        for i in 0..n {
            let row = &self.ilu[i];
            let mut acc = x[i];
            for &(j, v) in &row[..self.diag_pos[i]] {
                acc -= v * x[j];
            }
            x[i] = acc;
        }
        for i in (0..n).rev() {
            let row = &self.ilu[i];
            let mut acc = x[i];
            for &(j, v) in &row[self.diag_pos[i] + 1..] {
                acc -= v * x[j];
            }
            let d = row[self.diag_pos[i]].1;
            x[i] = if d.abs() > 1e-300 { acc / d } else { acc };
        }
    }

    fn mul(&self, x: &[f64], y: &mut [f64]) {
        for (k, row) in self.rows.iter().enumerate() {
            y[k] = row.iter().map(|&(j, v)| v * x[j]).sum();
        }
    }

    /// Restarted GMRES, right-preconditioned by the incomplete factor.
    fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        const KRYLOV: usize = 40;
        let n = b.len();
        let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
        let bnorm = dot(b, b).sqrt();
        if bnorm == 0.0 {
            return Ok(vec![0.0; n]);
        }
        let tol = 1e-13 * bnorm;
        let mut x = vec![0.0; n];
        let mut r = b.to_vec();
        let mut tmp = vec![0.0; n];
        let mut w = vec![0.0; n];
        let mut rnorm = bnorm;
        for _cycle in 0..200 {
            let mut basis: Vec<Vec<f64>> = vec![r.iter().map(|v| v / rnorm).collect()];
            let mut hess: Vec<Vec<f64>> = vec![];
            let mut cs: Vec<(f64, f64)> = vec![];
            let mut g = vec![rnorm];
            for j in 0..KRYLOV {
                tmp.copy_from_slice(&basis[j]);
                self.precondition(&mut tmp);
                self.mul(&tmp, &mut w);
                let mut h = vec![0.0; j + 2];
                for (i, v) in basis.iter().enumerate() {
                    h[i] = dot(&w, v);
                    for k in 0..n {
                        w[k] -= h[i] * v[k];
                    }
                }
                h[j + 1] = dot(&w, &w).sqrt();
                for (i, &(c, s)) in cs.iter().enumerate() {
                    let (a, b) = (h[i], h[i + 1]);
                    h[i] = c * a + s * b;
                    h[i + 1] = -s * a + c * b;
                }
                let denom = h[j].hypot(h[j + 1]);
                let (c, s) = if denom == 0.0 { (1.0, 0.0) } else { (h[j] / denom, h[j + 1] / denom) };
                let next = w.iter().map(|v| v / h[j + 1]).collect::<Vec<f64>>();
                h[j] = denom;
                h[j + 1] = 0.0;
                cs.push((c, s));
                let gj = g[j];
                g[j] = c * gj;
                g.push(-s * gj);
                hess.push(h);
                if g[j + 1].abs() <= tol || !next.iter().all(|v| v.is_finite()) {
                    break;
                }
                basis.push(next);
            }
            // back substitution for the least-squares coefficients
            let k = hess.len();
            let mut yk = vec![0.0; k];
            for i in (0..k).rev() {
                let mut acc = g[i];
                for l in i + 1..k {
                    acc -= hess[l][i] * yk[l];
                }
                yk[i] = if hess[i][i] == 0.0 { 0.0 } else { acc / hess[i][i] };
            }
            let mut step = vec![0.0; n];
            for (l, coef) in yk.iter().enumerate() {
                for i in 0..n {
                    step[i] += coef * basis[l][i];
                }
            }
            self.precondition(&mut step);
            for i in 0..n {
                x[i] += step[i];
            }
            self.mul(&x, &mut tmp);
            for i in 0..n {
                r[i] = b[i] - tmp[i];
            }
            let new = dot(&r, &r).sqrt();
            let stalled = new > 0.999 * rnorm;
            rnorm = new;
            if rnorm <= tol || stalled {
                break;
            }
        }
        if std::env::var_os("LOOPLAB_DEBUG").is_some() {
            eprintln!("  gmres rel residual {:e}", rnorm / bnorm);
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::Invariant("iterative solve diverged".into()));
        }
        Ok(x)
    }
}

/// Computes the groundstate at size `n` from scratch.
pub fn solve_groundstate(n: usize) -> Result<GroundState> {
    if n == 0 || n > MAX_GROUNDSTATE_SIZE {
        return Err(Error::Resource { what: "groundstate", size: n, bound: MAX_GROUNDSTATE_SIZE });
    }
    let sys = OrbitSystem::build(n)?;
    ensure!(sys.strongly_connected(), "transition graph not strongly connected at size {n}");
    let x = sys.solve()?;
    ensure!(x.iter().all(|&v| v > 0), "nonpositive groundstate component at size {n}");
    Ok(GroundState { n, values: x.iter().map(|&v| v as u128).collect(), reps: sys.reps, sizes: sys.sizes })
}

/// Memoizes groundstates in memory and, optionally, on disk.
pub struct GroundStateCache {
    dir: Option<PathBuf>,
    max_size: usize,
    slots: Vec<Mutex<Option<Arc<GroundState>>>>,
}

impl GroundStateCache {
    pub fn new(dir: Option<PathBuf>, max_size: usize) -> Self {
        let max_size = max_size.min(MAX_GROUNDSTATE_SIZE);
        GroundStateCache { dir, max_size, slots: (0..=max_size).map(|_| Mutex::new(None)).collect() }
    }

    pub fn max_size(&self) -> usize {
        self.max_size
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn path(&self, n: usize) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("groundstate-{n}.json")))
    }

    pub fn get(&self, n: usize) -> Result<Arc<GroundState>> {
        if n == 0 || n > self.max_size {
            return Err(Error::Resource { what: "groundstate", size: n, bound: self.max_size });
        }
        // one lock per size: concurrent callers wait for a single solve
        let mut slot = self.slots[n].lock().unwrap();
        if let Some(g) = slot.as_ref() {
            return Ok(g.clone());
        }
        let gs = match self.load(n) {
            Some(g) => g,
            None => {
                let g = solve_groundstate(n)?;
                self.store(&g)?;
                g
            }
        };
        let gs = Arc::new(gs);
        *slot = Some(gs.clone());
        Ok(gs)
    }

    fn load(&self, n: usize) -> Option<GroundState> {
        let text = fs::read_to_string(self.path(n)?).ok()?;
        GroundState::from_json(&text).ok().filter(|g| g.n == n)
    }

    fn store(&self, g: &GroundState) -> Result<()> {
        let Some(path) = self.path(g.n) else { return Ok(()) };
        let dir = path.parent().unwrap();
        fs::create_dir_all(dir)?;
        let tmp = dir.join(format!(".groundstate-{}.{}.tmp", g.n, std::process::id()));
        fs::write(&tmp, g.to_json())?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    /// `Ψ_{(π)_p}` at size `|π| + p`.
    pub fn psi_of(&self, pi: &Matching, p: usize) -> Result<u128> {
        let n = pi.size() + p;
        if n > self.max_size {
            return Err(Error::Resource { what: "groundstate", size: n, bound: self.max_size });
        }
        Ok(self.get(n)?.component(&pi.nest(p)))
    }
}

pub fn to_bigint(v: u128) -> BigInt {
    BigInt::from(v)
}

pub fn is_positive_integer(x: &BigRational) -> bool {
    x.is_integer() && x.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Matching {
        s.parse().unwrap()
    }

    #[test]
    fn e_examples() {
        assert_eq!(apply_e(3, &m("()(())")), m("()()()"));
        assert_eq!(apply_e(4, &m("()(())")), m("()(())"));
        assert_eq!(apply_e(0, &m("()()")), m("(())"));
        for n in 1..=4 {
            for p in enumerate_matchings(n) {
                for i in 0..2 * n {
                    let q = apply_e(i, &p);
                    assert_eq!(apply_e(i, &q), q);
                }
            }
        }
    }

    #[test]
    fn e_commutes_with_symmetries() {
        for n in 1..=5 {
            for p in enumerate_matchings(n) {
                for i in 0..2 * n {
                    let j = (i + 2 * n - 1) % (2 * n);
                    assert_eq!(apply_e(i, &p).rotate(), apply_e(j, &p.rotate()));
                    let k = (2 * n - i) % (2 * n);
                    assert_eq!(apply_e(i, &p).conjugate(), apply_e(k, &p.conjugate()));
                }
            }
        }
    }

    #[test]
    fn small_hamiltonians() {
        let h1 = hamiltonian(1);
        assert!(h1.cols.iter().all(|c| c.is_empty()));
        let k2 = kernel_exact(&hamiltonian(2)).unwrap();
        assert!(k2.iter().all(|v| v.is_one()));
        let k3 = kernel_exact(&hamiltonian(3)).unwrap();
        let expect = [("((()))", 1), ("(()())", 2), ("(())()", 1), ("()(())", 1), ("()()()", 2)];
        let basis = enumerate_matchings(3);
        for (w, v) in expect {
            let i = basis.iter().position(|b| *b == m(w)).unwrap();
            assert_eq!(k3[i], BigRational::from_integer(v.into()));
        }
    }

    #[test]
    fn lumped_solver_matches_exact_kernel() {
        for n in 1..=6 {
            let h = hamiltonian(n);
            let exact = kernel_exact(&h).unwrap();
            let gs = solve_groundstate(n).unwrap();
            for ((p, v), e) in gs.components().iter().zip(&exact) {
                assert_eq!(BigRational::from_integer(to_bigint(*v)), *e, "{p}");
            }
        }
    }

    #[test]
    fn full_system_and_symmetry() {
        for n in 1..=8 {
            let gs = solve_groundstate(n).unwrap();
            let comps = gs.components();
            let h = hamiltonian(n);
            let x: Vec<BigInt> = comps.iter().map(|c| to_bigint(c.1)).collect();
            assert!(h.apply(&x).iter().all(|v| v.is_zero()));
            for (p, v) in &comps {
                assert!(*v > 0);
                assert_eq!(gs.component(&p.rotate()), *v);
                assert_eq!(gs.component(&p.conjugate()), *v);
            }
            assert_eq!(gs.component(&Matching::nested(n)), 1);
        }
    }

    #[test]
    fn json_round_trip() {
        let gs = solve_groundstate(6).unwrap();
        let back = GroundState::from_json(&gs.to_json()).unwrap();
        assert_eq!(back, gs);
        let mut bad = gs.to_json();
        bad = bad.replacen("\"components\":[1", "\"components\":[2", 1);
        assert!(GroundState::from_json(&bad).is_err());
    }
}
