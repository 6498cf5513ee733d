use super::diagram::{GridDiagram, GridState};
use crate::{Error, Result};

/// A 2-chain `Σ n_{i,j} S_{i,j}` on the torus from state `x` to state `y`.
/// `mult[i * n + j]` is the multiplicity of the square in column `i`, row `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridDomain {
    pub n: usize,
    pub x: GridState,
    pub y: GridState,
    pub mult: Vec<i32>,
}

impl GridDomain {
    /// Validates the boundary conditions before returning the domain.
    pub fn new(x: GridState, y: GridState, mult: Vec<i32>) -> Result<Self> {
        let n = x.len();
        if y.len() != n || mult.len() != n * n {
            return Err(Error::InvalidDomain("size mismatch".into()));
        }
        let d = GridDomain { n, x, y, mult };
        if !d.boundary_ok() {
            return Err(Error::InvalidDomain(format!("boundary of {:?} does not join x to y", d.mult)));
        }
        Ok(d)
    }

    pub fn zero(x: GridState) -> Self {
        let n = x.len();
        GridDomain { n, y: x.clone(), x, mult: vec![0; n * n] }
    }

    /// Multiplicity of `S_{i,j}`, indices taken mod `n`.
    pub fn at(&self, i: i64, j: i64) -> i32 {
        let n = self.n as i64;
        self.mult[(i.rem_euclid(n) * n + j.rem_euclid(n)) as usize]
    }

    pub fn is_positive(&self) -> bool {
        self.mult.iter().all(|&m| m >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.mult.iter().all(|&m| m == 0)
    }

    /// Checks `∂(∂_h D) = y - x` and `∂(∂_v D) = x - y` at every lattice
    /// point. `h(i,j) = n(i,j) - n(i,j-1)` on the horizontal segment east of
    /// `(i,j)`; `v(i,j) = n(i-1,j) - n(i,j)` on the vertical segment north of
    /// it.
    pub fn boundary_ok(&self) -> bool {
        let h = |i: i64, j: i64| self.at(i, j) - self.at(i, j - 1);
        let v = |i: i64, j: i64| self.at(i - 1, j) - self.at(i, j);
        (0..self.n as i64).all(|i| {
            (0..self.n as i64).all(|j| {
                let in_x = (self.x[i as usize] == j as usize) as i32;
                let in_y = (self.y[i as usize] == j as usize) as i32;
                h(i - 1, j) - h(i, j) == in_y - in_x && v(i, j - 1) - v(i, j) == in_x - in_y
            })
        })
    }

    /// Four times the point measure `p_x(D) + p_y(D)`: the sum over all
    /// state points of the four multiplicities around them.
    pub fn four_mu(&self) -> i64 {
        let corners = |s: &GridState| -> i64 {
            s.iter()
                .enumerate()
                .map(|(i, &j)| {
                    let (i, j) = (i as i64, j as i64);
                    (self.at(i - 1, j - 1) + self.at(i - 1, j) + self.at(i, j - 1) + self.at(i, j)) as i64
                })
                .sum()
        };
        corners(&self.x) + corners(&self.y)
    }

    /// `(#O, #X)` counted with multiplicity.
    pub fn markings(&self, g: &GridDiagram) -> (i32, i32) {
        let o = (0..self.n).map(|i| self.mult[i * self.n + g.o()[i]]).sum();
        let x = (0..self.n).map(|i| self.mult[i * self.n + g.x()[i]]).sum();
        (o, x)
    }

    /// The composite `self * other`; `other` must start where `self` ends.
    pub fn compose(&self, other: &GridDomain) -> Result<GridDomain> {
        if self.y != other.x {
            return Err(Error::InvalidDomain("domains are not composable".into()));
        }
        let mult = self.mult.iter().zip(&other.mult).map(|(a, b)| a + b).collect();
        Ok(GridDomain { n: self.n, x: self.x.clone(), y: other.y.clone(), mult })
    }

    /// `self - first`, a domain from `first.y` to `self.y`.
    pub fn strip_front(&self, first: &GridDomain) -> Result<GridDomain> {
        if self.x != first.x {
            return Err(Error::InvalidDomain("domains start at different states".into()));
        }
        let mult = self.mult.iter().zip(&first.mult).map(|(a, b)| a - b).collect();
        Ok(GridDomain { n: self.n, x: first.y.clone(), y: self.y.clone(), mult })
    }

    /// `self - last`, a domain from `self.x` to `last.x`.
    pub fn strip_back(&self, last: &GridDomain) -> Result<GridDomain> {
        if self.y != last.y {
            return Err(Error::InvalidDomain("domains end at different states".into()));
        }
        let mult = self.mult.iter().zip(&last.mult).map(|(a, b)| a - b).collect();
        Ok(GridDomain { n: self.n, x: self.x.clone(), y: last.x.clone(), mult })
    }

    /// Adds `k` copies of the row annulus `j` (periodic, endpoints kept).
    pub fn add_row(&mut self, j: usize, k: i32) {
        for i in 0..self.n {
            self.mult[i * self.n + j] += k;
        }
    }

    pub fn add_column(&mut self, i: usize, k: i32) {
        for j in 0..self.n {
            self.mult[i * self.n + j] += k;
        }
    }

    /// The row `j` if this is a single height-1 horizontal annulus.
    pub fn as_row(&self) -> Option<usize> {
        (0..self.n).find(|&j| {
            (0..self.n).all(|i| (0..self.n).all(|r| self.mult[i * self.n + r] == (r == j) as i32))
        })
    }

    pub fn as_column(&self) -> Option<usize> {
        (0..self.n).find(|&i| {
            (0..self.n).all(|c| (0..self.n).all(|r| self.mult[c * self.n + r] == (c == i) as i32))
        })
    }
}

/// The Maslov index `μ(D) = p_x(D) + p_y(D)`.
pub fn maslov_index(d: &GridDomain) -> Result<i32> {
    let four = d.four_mu();
    if four % 4 != 0 {
        return Err(Error::InvalidDomain(format!("point measure {four}/4 is not an integer")));
    }
    Ok((four / 4) as i32)
}

/// A rectangle from `from` to `to` on the torus. The state `from` occupies
/// its lower-left corner `(left, bottom)` and upper-right corner
/// `(right, top)`; it spans columns `left..right` and rows `bottom..top`,
/// both read cyclically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GridRectangle {
    pub n: usize,
    pub left: usize,
    pub right: usize,
    pub bottom: usize,
    pub top: usize,
    pub from: GridState,
    pub to: GridState,
    pub o_count: usize,
    pub x_count: usize,
    /// Points of `from` strictly inside.
    pub interior_points: usize,
}

fn cyclic_between_open(a: usize, b: usize, c: usize, n: usize) -> bool {
    // c in (a, b) going upward from a
    let (db, dc) = ((b + n - a) % n, (c + n - a) % n);
    dc > 0 && dc < db
}

fn cyclic_between_halfopen(a: usize, b: usize, c: usize, n: usize) -> bool {
    // c in [a, b)
    let (db, dc) = ((b + n - a) % n, (c + n - a) % n);
    dc < db
}

impl GridRectangle {
    /// The rectangle out of `x` with corners on vertical circles `a` (left)
    /// and `b` (right), `a != b`.
    pub fn new(g: &GridDiagram, x: &GridState, a: usize, b: usize) -> GridRectangle {
        let n = g.n();
        assert!(a != b && a < n && b < n);
        let mut to = x.clone();
        to.swap(a, b);
        let (bottom, top) = (x[a], x[b]);
        let mut r = GridRectangle {
            n,
            left: a,
            right: b,
            bottom,
            top,
            from: x.clone(),
            to,
            o_count: 0,
            x_count: 0,
            interior_points: 0,
        };
        r.o_count = (0..n).filter(|&i| r.contains_square(i, g.o()[i])).count();
        r.x_count = (0..n).filter(|&i| r.contains_square(i, g.x()[i])).count();
        r.interior_points = (0..n)
            .filter(|&i| cyclic_between_open(a, b, i, n) && cyclic_between_open(bottom, top, x[i], n))
            .count();
        r
    }

    pub fn width(&self) -> usize {
        (self.right + self.n - self.left) % self.n
    }

    pub fn height(&self) -> usize {
        (self.top + self.n - self.bottom) % self.n
    }

    pub fn contains_square(&self, i: usize, j: usize) -> bool {
        cyclic_between_halfopen(self.left, self.right, i, self.n) && cyclic_between_halfopen(self.bottom, self.top, j, self.n)
    }

    pub fn is_empty(&self) -> bool {
        self.interior_points == 0
    }

    /// Empty and free of both kinds of marking: counted by the tilde
    /// differential.
    pub fn is_tilde(&self) -> bool {
        self.is_empty() && self.o_count == 0 && self.x_count == 0
    }

    pub fn domain(&self) -> GridDomain {
        let n = self.n;
        let mut mult = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                if self.contains_square(i, j) {
                    mult[i * n + j] = 1;
                }
            }
        }
        GridDomain { n, x: self.from.clone(), y: self.to.clone(), mult }
    }
}

/// Every rectangle out of `x`: one for each ordered pair of distinct
/// vertical circles.
pub fn rectangles_from(g: &GridDiagram, x: &GridState) -> Vec<GridRectangle> {
    let n = g.n();
    let mut out = Vec::with_capacity(n * (n - 1));
    for a in 0..n {
        for b in 0..n {
            if a != b {
                out.push(GridRectangle::new(g, x, a, b));
            }
        }
    }
    out
}

/// The rectangles from `x` to `y`: two when the states differ in exactly
/// two columns, none otherwise.
pub fn rectangles(g: &GridDiagram, x: &GridState, y: &GridState) -> Vec<GridRectangle> {
    let diff: Vec<usize> = (0..g.n()).filter(|&i| x[i] != y[i]).collect();
    match diff.as_slice() {
        &[a, b] if x[a] == y[b] && x[b] == y[a] => {
            vec![GridRectangle::new(g, x, a, b), GridRectangle::new(g, x, b, a)]
        }
        _ => Vec::new(),
    }
}
