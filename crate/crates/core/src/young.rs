//! Young diagrams in English notation. Box `(x, y)` sits in row `x` from the top and
//! column `y` from the left, both 1-based.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, serde::Serialize)]
pub struct YoungDiagram {
    rows: Vec<usize>,
}

pub type Box2 = (usize, usize);

#[derive(Clone, Debug)]
pub struct DiagramStats {
    pub hooks: BTreeMap<Box2, usize>,
    pub contents: BTreeMap<Box2, i64>,
    pub h: BigUint,
    pub corners: Vec<Box2>,
    pub rims: Vec<Vec<Box2>>,
}

impl YoungDiagram {
    /// Zero rows are dropped. Panics if `rows` is not weakly decreasing.
    pub fn new(mut rows: Vec<usize>) -> Self {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        assert!(rows.windows(2).all(|w| w[0] >= w[1]), "rows must be weakly decreasing: {rows:?}");
        YoungDiagram { rows }
    }

    pub fn empty() -> Self {
        YoungDiagram { rows: vec![] }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    /// Length of row `x` (0 past the last row).
    pub fn row(&self, x: usize) -> usize {
        if x == 0 {
            return usize::MAX;
        }
        self.rows.get(x - 1).copied().unwrap_or(0)
    }

    /// Length of column `y`.
    pub fn col(&self, y: usize) -> usize {
        self.rows.iter().take_while(|&&r| r >= y).count()
    }

    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn contains(&self, (x, y): Box2) -> bool {
        x >= 1 && y >= 1 && self.row(x) >= y
    }

    pub fn boxes(&self) -> Vec<Box2> {
        let mut out = Vec::with_capacity(self.size());
        for (i, &r) in self.rows.iter().enumerate() {
            for y in 1..=r {
                out.push((i + 1, y));
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let w = self.rows.first().copied().unwrap_or(0);
        YoungDiagram::new((1..=w).map(|y| self.col(y)).collect())
    }

    pub fn is_contained_in(&self, other: &YoungDiagram) -> bool {
        self.rows.len() <= other.rows.len() && self.rows.iter().zip(&other.rows).all(|(a, b)| a <= b)
    }

    pub fn hook(&self, (x, y): Box2) -> usize {
        (self.row(x) - y) + (self.col(y) - x) + 1
    }

    pub fn content((x, y): Box2) -> i64 {
        y as i64 - x as i64
    }

    /// Product of all hook lengths.
    pub fn hook_product(&self) -> BigUint {
        self.boxes().into_iter().fold(BigUint::one(), |acc, b| acc * self.hook(b))
    }

    pub fn content_sum(&self) -> i64 {
        self.boxes().into_iter().map(Self::content).sum()
    }

    /// Removable boxes.
    pub fn corners(&self) -> Vec<Box2> {
        (1..=self.rows.len()).filter(|&x| self.row(x + 1) < self.row(x)).map(|x| (x, self.row(x))).collect()
    }

    /// The diagram with the corner `b` removed. Panics if `b` is not a corner.
    pub fn remove_box(&self, b: Box2) -> Self {
        assert!(self.corners().contains(&b), "{b:?} is not a corner of {self:?}");
        let mut rows = self.rows.clone();
        rows[b.0 - 1] -= 1;
        YoungDiagram::new(rows)
    }

    /// Boxes `(x, y)` such that `(x+1, y+1)` is not in the diagram.
    pub fn rim(&self) -> Vec<Box2> {
        self.boxes().into_iter().filter(|&(x, y)| !self.contains((x + 1, y + 1))).collect()
    }

    /// The diagram left after removing the rim.
    pub fn without_rim(&self) -> Self {
        YoungDiagram::new((1..=self.rows.len()).map(|x| self.row(x + 1).saturating_sub(1)).collect())
    }

    /// Successive rims, outermost first.
    pub fn rims(&self) -> Vec<Vec<Box2>> {
        let mut out = vec![];
        let mut y = self.clone();
        while !y.is_empty() {
            out.push(y.rim());
            y = y.without_rim();
        }
        out
    }

    /// Removable horizontal dominos, as the diagrams left after removal.
    pub fn horizontal_domino_removals(&self) -> Vec<Self> {
        (1..=self.rows.len())
            .filter(|&x| self.row(x) >= 2 && self.row(x) - 2 >= self.row(x + 1))
            .map(|x| {
                let mut rows = self.rows.clone();
                rows[x - 1] -= 2;
                YoungDiagram::new(rows)
            })
            .collect()
    }

    /// Removable vertical dominos, as the diagrams left after removal.
    pub fn vertical_domino_removals(&self) -> Vec<Self> {
        (1..self.rows.len())
            .filter(|&x| self.row(x) == self.row(x + 1) && self.row(x + 2) < self.row(x + 1))
            .map(|x| {
                let mut rows = self.rows.clone();
                rows[x - 1] -= 1;
                rows[x] -= 1;
                YoungDiagram::new(rows)
            })
            .collect()
    }

    pub fn stats(&self) -> DiagramStats {
        let boxes = self.boxes();
        DiagramStats {
            hooks: boxes.iter().map(|&b| (b, self.hook(b))).collect(),
            contents: boxes.iter().map(|&b| (b, Self::content(b))).collect(),
            h: self.hook_product(),
            corners: self.corners(),
            rims: self.rims(),
        }
    }

    /// All diagrams fitting in the staircase `(n-1, n-2, …, 1)`.
    pub fn in_staircase(n: usize) -> Vec<YoungDiagram> {
        fn rec(n: usize, x: usize, max: usize, rows: &mut Vec<usize>, out: &mut Vec<YoungDiagram>) {
            out.push(YoungDiagram::new(rows.clone()));
            if x > n {
                return;
            }
            let cap = max.min(n.saturating_sub(x));
            for r in 1..=cap {
                rows.push(r);
                rec(n, x + 1, r, rows, out);
                rows.pop();
            }
        }
        let mut out = vec![];
        rec(n, 1, usize::MAX, &mut vec![], &mut out);
        out
    }
}
