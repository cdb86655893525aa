//! Noncrossing perfect matchings of `2n` points on a line.
//!
//! Points are numbered `1..=2n`. A matching is stored as a parenthesis word packed into a
//! `u64` (bit `k` set means point `k+1` opens an arch), so sizes up to 32 arches fit.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::young::YoungDiagram;

pub const MAX_SIZE: usize = 32;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Matching {
    n: u8,
    word: u64,
}

impl Matching {
    /// Builds a matching from its packed word. `word` bit `k` means point `k+1` is `(`.
    pub fn from_bits(n: usize, word: u64) -> Result<Self> {
        if n == 0 || n > MAX_SIZE {
            return Err(Error::OutOfRange(format!("size {n}")));
        }
        if 2 * n < 64 && word >> (2 * n) != 0 {
            return Err(Error::Unbalanced(format!("{word:#x} has bits past 2n")));
        }
        let mut h: i32 = 0;
        for k in 0..2 * n {
            h += if word >> k & 1 == 1 { 1 } else { -1 };
            if h < 0 {
                return Err(Error::Unbalanced(format!("{word:#x}")));
            }
        }
        if h != 0 {
            return Err(Error::Unbalanced(format!("{word:#x}")));
        }
        Ok(Matching { n: n as u8, word })
    }

    pub(crate) fn from_bits_unchecked(n: usize, word: u64) -> Self {
        Matching { n: n as u8, word }
    }

    pub fn bits(&self) -> u64 {
        self.word
    }

    /// Parses a parenthesis word such as `"()(())"`.
    pub fn from_word(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(c) = s.chars().find(|&c| c != '(' && c != ')') {
            return Err(Error::Syntax(format!("unexpected {c:?} in {s:?}")));
        }
        if s.is_empty() || s.len() % 2 == 1 {
            return Err(Error::Unbalanced(s));
        }
        let n = s.len() / 2;
        if n > MAX_SIZE {
            return Err(Error::OutOfRange(format!("size {n}")));
        }
        let mut word = 0u64;
        let mut h = 0i32;
        for (k, c) in s.chars().enumerate() {
            match c {
                '(' => {
                    word |= 1 << k;
                    h += 1;
                }
                _ => h -= 1,
            }
            if h < 0 {
                return Err(Error::Unbalanced(s));
            }
        }
        if h != 0 {
            return Err(Error::Unbalanced(s));
        }
        Ok(Matching { n: n as u8, word })
    }

    /// Builds a matching from the positions of its opening parentheses.
    pub fn from_a_seq(a: &[usize]) -> Result<Self> {
        let n = a.len();
        if n == 0 || n > MAX_SIZE {
            return Err(Error::SequenceBound(format!("{a:?}")));
        }
        let mut word = 0u64;
        for (i, &ai) in a.iter().enumerate() {
            let ok = ai >= 1 && ai < 2 * i + 2 && (i == 0 || ai > a[i - 1]);
            if !ok {
                return Err(Error::SequenceBound(format!("{a:?}")));
            }
            word |= 1 << (ai - 1);
        }
        Ok(Matching { n: n as u8, word })
    }

    /// Builds a matching from a list of arches `(i, j)`, 1-based, in any order.
    pub fn from_arches(arches: &[(usize, usize)]) -> Result<Self> {
        let n = arches.len();
        if n == 0 || n > MAX_SIZE {
            return Err(Error::Overlapping(format!("{arches:?}")));
        }
        let mut seen = vec![false; 2 * n + 1];
        let mut norm = Vec::with_capacity(n);
        for &(x, y) in arches {
            let (i, j) = (x.min(y), x.max(y));
            if i == 0 || j > 2 * n || i == j || seen[i] || seen[j] {
                return Err(Error::Overlapping(format!("{arches:?}")));
            }
            seen[i] = true;
            seen[j] = true;
            norm.push((i, j));
        }
        for &(i, j) in &norm {
            for &(k, l) in &norm {
                if i < k && k < j && j < l {
                    return Err(Error::Crossing(format!("({i},{j}) and ({k},{l})")));
                }
            }
        }
        let word = norm.iter().fold(0u64, |w, &(i, _)| w | 1 << (i - 1));
        Ok(Matching { n: n as u8, word })
    }

    /// Builds a matching from a 0-based partner array.
    pub(crate) fn from_partners0(p: &[u8]) -> Self {
        let mut word = 0u64;
        for (k, &pk) in p.iter().enumerate() {
            if pk as usize > k {
                word |= 1 << k;
            }
        }
        Matching { n: (p.len() / 2) as u8, word }
    }

    /// `()_n`: `n` nested arches.
    pub fn nested(n: usize) -> Self {
        Matching { n: n as u8, word: (1u64 << n) - 1 }
    }

    /// `()^n`: `n` consecutive small arches.
    pub fn small_arches(n: usize) -> Self {
        let word = (0..n).fold(0u64, |w, i| w | 1 << (2 * i));
        Matching { n: n as u8, word }
    }

    /// `()_a ()_b`.
    pub fn rectangle(a: usize, b: usize) -> Self {
        let word = ((1u64 << a) - 1) | (((1u64 << b) - 1) << (2 * a));
        Matching { n: (a + b) as u8, word }
    }

    pub fn size(&self) -> usize {
        self.n as usize
    }

    pub fn is_open(&self, point: usize) -> bool {
        self.word >> (point - 1) & 1 == 1
    }

    /// Positions of the opening parentheses.
    pub fn a_seq(&self) -> Vec<usize> {
        (0..2 * self.size()).filter(|&k| self.word >> k & 1 == 1).map(|k| k + 1).collect()
    }

    /// 0-based partner array.
    pub(crate) fn partners0(&self) -> [u8; 64] {
        let mut p = [0u8; 64];
        let mut stack = [0u8; 32];
        let mut top = 0;
        for k in 0..2 * self.size() {
            if self.word >> k & 1 == 1 {
                stack[top] = k as u8;
                top += 1;
            } else {
                top -= 1;
                let o = stack[top];
                p[k] = o;
                p[o as usize] = k as u8;
            }
        }
        p
    }

    /// 1-based partner of every point: `partners()[i-1]` is the partner of point `i`.
    pub fn partners(&self) -> Vec<usize> {
        let p = self.partners0();
        (0..2 * self.size()).map(|k| p[k] as usize + 1).collect()
    }

    /// Arches `(i, j)` with `i < j`, sorted by opener.
    pub fn arches(&self) -> Vec<(usize, usize)> {
        let p = self.partners0();
        (0..2 * self.size()).filter(|&k| self.word >> k & 1 == 1).map(|k| (k + 1, p[k] as usize + 1)).collect()
    }

    /// Heights of the Dyck path after each step, starting from 0.
    pub fn dyck_heights(&self) -> Vec<usize> {
        let mut h = vec![0usize];
        for k in 0..2 * self.size() {
            let last = *h.last().unwrap();
            h.push(if self.word >> k & 1 == 1 { last + 1 } else { last - 1 });
        }
        h
    }

    /// Number of boxes of the Young diagram, `Σ (a_i - i)`.
    pub fn d(&self) -> usize {
        self.a_seq().iter().enumerate().map(|(i, &a)| a - i - 1).sum()
    }

    pub fn young(&self) -> YoungDiagram {
        let a = self.a_seq();
        let n = a.len();
        let rows: Vec<usize> = (1..=n).map(|x| a[n - x] - (n + 1 - x)).collect();
        YoungDiagram::new(rows)
    }

    /// Inverse of [`Matching::young`]; `y` must fit in the staircase of size `n`.
    pub fn from_young(n: usize, y: &YoungDiagram) -> Result<Self> {
        let rows = y.rows();
        if rows.len() > n {
            return Err(Error::OutOfRange(format!("{y:?} does not fit size {n}")));
        }
        let a: Vec<usize> = (1..=n).map(|i| i + rows.get(n - i).copied().unwrap_or(0)).collect();
        Matching::from_a_seq(&a).map_err(|_| Error::OutOfRange(format!("{y:?} does not fit size {n}")))
    }

    /// Arch `{i, j}` becomes `{2n+1-j, 2n+1-i}`.
    pub fn conjugate(&self) -> Self {
        let m = 2 * self.size();
        let rev = self.word.reverse_bits() >> (64 - m);
        let mask = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        Matching { n: self.n, word: !rev & mask }
    }

    /// `i, j` are linked in the result iff `i+1, j+1` are linked in `self` (mod 2n).
    pub fn rotate(&self) -> Self {
        let m = 2 * self.size();
        let p = self.partners0();
        let mut q = [0u8; 64];
        for i in 0..m {
            q[i] = ((p[(i + 1) % m] as usize + m - 1) % m) as u8;
        }
        Matching::from_partners0(&q[..m])
    }

    /// All matchings in the dihedral orbit generated by rotation and conjugation.
    pub fn dihedral_orbit(&self) -> Vec<Matching> {
        let mut out = Vec::with_capacity(4 * self.size());
        let mut r = *self;
        for _ in 0..2 * self.size() {
            out.push(r);
            out.push(r.conjugate());
            r = r.rotate();
        }
        out.sort();
        out.dedup();
        out
    }

    /// `(π)_p`: `p` nested arches placed above `self`.
    pub fn nest(&self, p: usize) -> Self {
        let n = self.size() + p;
        assert!(n <= MAX_SIZE, "nested size {n} too large");
        Matching { n: n as u8, word: ((1u64 << p) - 1) | (self.word << p) }
    }

    /// `α ∘ β`: `α` on the first and last `|α|` points, `β` in between.
    pub fn compose(alpha: &Matching, beta: &Matching) -> Self {
        let p = alpha.size();
        let n = p + beta.size();
        assert!(n <= MAX_SIZE, "composed size {n} too large");
        let left = alpha.word & ((1u64 << p) - 1);
        let right = alpha.word >> p;
        Matching { n: n as u8, word: left | beta.word << p | right << (2 * n - p) }
    }

    /// `Y(self) ⊆ Y(other)`, i.e. `a_i(self) <= a_i(other)` for all `i`.
    pub fn leq(&self, other: &Matching) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.size(), other.size()));
        }
        Ok(self.a_seq().iter().zip(other.a_seq()).all(|(&x, y)| x <= y))
    }

    pub fn render_word(&self) -> String {
        (0..2 * self.size()).map(|k| if self.word >> k & 1 == 1 { '(' } else { ')' }).collect()
    }

    pub fn render_a(&self) -> String {
        let a: Vec<String> = self.a_seq().iter().map(|x| x.to_string()).collect();
        format!("a:{}", a.join(","))
    }

    pub fn render_arches(&self) -> String {
        let m: Vec<String> = self.arches().iter().map(|(i, j)| format!("{i}-{j}")).collect();
        format!("m:{}", m.join(";"))
    }
}

/// Lexicographic order on a-sequences.
impl Ord for Matching {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.n.cmp(&other.n) {
            Ordering::Equal => {}
            o => return o,
        }
        let diff = self.word ^ other.word;
        if diff == 0 {
            return Ordering::Equal;
        }
        let low = diff & diff.wrapping_neg();
        if self.word & low != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for Matching {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_word())
    }
}

impl fmt::Debug for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matching({})", self.render_word())
    }
}

impl FromStr for Matching {
    type Err = Error;

    /// Accepts a parenthesis word, `a:1,3,4`, or `m:1-2;3-6;4-5`. Whitespace is ignored.
    fn from_str(text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(rest) = s.strip_prefix("a:") {
            let a = rest
                .split(',')
                .map(|x| x.parse::<usize>().map_err(|_| Error::Syntax(format!("bad integer {x:?}"))))
                .collect::<Result<Vec<_>>>()?;
            Matching::from_a_seq(&a)
        } else if let Some(rest) = s.strip_prefix("m:") {
            let arches = rest
                .split(';')
                .map(|pair| {
                    let (x, y) = pair.split_once('-').ok_or_else(|| Error::Syntax(format!("bad pair {pair:?}")))?;
                    let x = x.parse::<usize>().map_err(|_| Error::Syntax(format!("bad integer {x:?}")))?;
                    let y = y.parse::<usize>().map_err(|_| Error::Syntax(format!("bad integer {y:?}")))?;
                    Ok((x, y))
                })
                .collect::<Result<Vec<_>>>()?;
            Matching::from_arches(&arches)
        } else {
            Matching::from_word(&s)
        }
    }
}

pub fn parse_matching(text: &str) -> Result<Matching> {
    text.parse()
}

impl serde::Serialize for Matching {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.render_word())
    }
}

impl<'de> serde::Deserialize<'de> for Matching {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn catalan(n: usize) -> u64 {
    let mut c = 1u128;
    for k in 0..n as u128 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c as u64
}

/// All matchings of size `n`, in lexicographic a-sequence order.
pub fn enumerate_matchings(n: usize) -> Vec<Matching> {
    let mut out = Vec::with_capacity(catalan(n) as usize);
    for_each_matching(n, |m| out.push(m));
    out
}

/// Visits all matchings of size `n` in lexicographic a-sequence order.
pub fn for_each_matching(n: usize, mut f: impl FnMut(Matching)) {
    fn rec(n: usize, k: usize, opens: usize, h: usize, word: u64, f: &mut impl FnMut(Matching)) {
        if k == 2 * n {
            f(Matching::from_bits_unchecked(n, word));
            return;
        }
        if opens < n {
            rec(n, k + 1, opens + 1, h + 1, word | 1 << k, f);
        }
        if h > 0 {
            rec(n, k + 1, opens, h - 1, word, f);
        }
    }
    assert!((1..=MAX_SIZE).contains(&n));
    rec(n, 0, 0, 0, 0, &mut f);
}

/// Position of a matching in the order of [`enumerate_matchings`], computed without
/// enumerating.
pub struct Ranker {
    n: usize,
    // ways[k][h]: completions of a prefix of length k ending at height h
    ways: Vec<Vec<u64>>,
}

impl Ranker {
    pub fn new(n: usize) -> Self {
        let m = 2 * n;
        let mut ways = vec![vec![0u64; m + 2]; m + 1];
        ways[m][0] = 1;
        for k in (0..m).rev() {
            for h in 0..=m {
                let up = if h < m { ways[k + 1][h + 1] } else { 0 };
                let down = if h > 0 { ways[k + 1][h - 1] } else { 0 };
                ways[k][h] = up + down;
            }
        }
        Ranker { n, ways }
    }

    pub fn rank(&self, m: &Matching) -> usize {
        debug_assert_eq!(m.size(), self.n);
        let mut r = 0u64;
        let mut h = 0usize;
        for k in 0..2 * self.n {
            if m.word >> k & 1 == 1 {
                h += 1;
            } else {
                // every word opening here instead comes first
                r += self.ways[k + 1][h + 1];
                h -= 1;
            }
        }
        r as usize
    }
}
