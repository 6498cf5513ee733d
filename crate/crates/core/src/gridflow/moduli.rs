use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::grid::{maslov_index, rectangles_from, GridDiagram, GridDomain, GridRectangle, GridState};
use crate::{Error, Result};

/// A factorization `D = R_1 * ... * R_k` into rectangles, each empty with
/// respect to the state it starts from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub rectangles: Vec<GridRectangle>,
}

fn state_string(s: &GridState) -> String {
    s.iter().map(ToString::to_string).collect::<Vec<_>>().join("")
}

impl Decomposition {
    /// The states passed through, endpoints included.
    pub fn states(&self) -> Vec<GridState> {
        let mut out: Vec<GridState> = self.rectangles.iter().map(|r| r.from.clone()).collect();
        if let Some(last) = self.rectangles.last() {
            out.push(last.to.clone());
        }
        out
    }

    pub fn sum(&self) -> Option<GridDomain> {
        let mut it = self.rectangles.iter();
        let first = it.next()?.domain();
        it.try_fold(first, |acc, r| acc.compose(&r.domain()).ok())
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let states: Vec<String> = self.states().iter().map(state_string).collect();
        f.write_str(&states.join(">"))
    }
}

fn fits(r: &GridRectangle, d: &GridDomain) -> bool {
    let n = d.n;
    (0..n).all(|i| (0..n).all(|j| !r.contains_square(i, j) || d.mult[i * n + j] > 0))
}

fn subtract(d: &GridDomain, r: &GridRectangle) -> GridDomain {
    d.strip_front(&r.domain()).expect("rectangle starts where the domain does")
}

/// All decompositions of a positive domain into empty rectangles, found by
/// depth-first search over the first rectangle.
pub fn decompositions(g: &GridDiagram, d: &GridDomain) -> Vec<Decomposition> {
    fn rec(g: &GridDiagram, d: &GridDomain, path: &mut Vec<GridRectangle>, out: &mut Vec<Decomposition>) {
        if d.is_zero() {
            if d.x == d.y && !path.is_empty() {
                out.push(Decomposition { rectangles: path.clone() });
            }
            return;
        }
        for r in rectangles_from(g, &d.x) {
            if r.is_empty() && fits(&r, d) {
                let rest = subtract(d, &r);
                path.push(r);
                rec(g, &rest, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    if d.is_positive() {
        rec(g, d, &mut Vec::new(), &mut out);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Orientation {
    H,
    V,
}

/// A height-1 row or width-1 column annulus split off a domain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BubbleEnd {
    pub orientation: Orientation,
    /// Row for `H`, column for `V`.
    pub index: usize,
    /// Column of the O-marking the strip passes through.
    pub o_marking: usize,
}

/// One bubble end per thin annulus `P ≤ D` whose complement `D - P` is
/// decomposable (or zero).
pub fn detect_bubble_ends(g: &GridDiagram, d: &GridDomain) -> Vec<BubbleEnd> {
    let n = g.n();
    let mut out = Vec::new();
    if !d.is_positive() {
        return out;
    }
    let candidates = (0..n)
        .map(|j| (Orientation::H, j, g.o_column(j)))
        .chain((0..n).map(|i| (Orientation::V, i, i)));
    for (orientation, index, o_marking) in candidates {
        let mut rest = d.clone();
        match orientation {
            Orientation::H => rest.add_row(index, -1),
            Orientation::V => rest.add_column(index, -1),
        }
        if rest.is_positive() && (rest.is_zero() || !decompositions(g, &rest).is_empty()) {
            out.push(BubbleEnd { orientation, index, o_marking });
        }
    }
    out
}

/// The horizontal and vertical annuli through one O-marking.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StripPair {
    /// Column of the O-marking.
    pub o_marking: usize,
    /// Row of the horizontal strip.
    pub horizontal: usize,
    /// Column of the vertical strip.
    pub vertical: usize,
}

pub fn pair_strips(g: &GridDiagram) -> Vec<StripPair> {
    (0..g.n()).map(|i| StripPair { o_marking: i, horizontal: g.o()[i], vertical: i }).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuliKind {
    Point,
    Interval,
    Polygon,
    /// Not one of the shapes the catalog knows; counts are reported as found.
    OutsideCatalog,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuliShape {
    pub kind: ModuliKind,
    pub maslov: i32,
    /// Decompositions, written as the states they pass through.
    pub vertices: Vec<String>,
    pub bubble_ends: Vec<BubbleEnd>,
    pub edges: usize,
}

/// Boundary of an index-3 moduli space: decompositions `R1 R2 R3` are joined
/// when they share `R1` (the two ways of finishing the index-2 tail) or
/// share `R3`. Returns the cycle lengths if the graph is 2-regular.
fn polygon_cycles(decs: &[Decomposition]) -> Option<Vec<usize>> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); decs.len()];
    let mut by_first: BTreeMap<(GridState, usize, usize), Vec<usize>> = BTreeMap::new();
    let mut by_last: BTreeMap<(GridState, usize, usize), Vec<usize>> = BTreeMap::new();
    for (k, d) in decs.iter().enumerate() {
        let (f, l) = (&d.rectangles[0], &d.rectangles[2]);
        by_first.entry((f.from.clone(), f.left, f.right)).or_default().push(k);
        by_last.entry((l.from.clone(), l.left, l.right)).or_default().push(k);
    }
    for group in by_first.values().chain(by_last.values()) {
        match group.as_slice() {
            [a, b] => {
                adj[*a].push(*b);
                adj[*b].push(*a);
            }
            [_] => {}
            _ => return None,
        }
    }
    if adj.iter().any(|a| a.len() != 2) {
        return None;
    }
    let mut seen = vec![false; decs.len()];
    let mut cycles = Vec::new();
    for s in 0..decs.len() {
        if seen[s] {
            continue;
        }
        let (mut prev, mut cur, mut len) = (usize::MAX, s, 0);
        loop {
            seen[cur] = true;
            len += 1;
            let next = if adj[cur][0] != prev { adj[cur][0] } else { adj[cur][1] };
            prev = cur;
            cur = next;
            if cur == s {
                break;
            }
        }
        cycles.push(len);
    }
    Some(cycles)
}

/// The moduli space of a positive domain of index 1, 2 or 3.
pub fn moduli_shape(g: &GridDiagram, d: &GridDomain) -> Result<ModuliShape> {
    if !d.is_positive() {
        return Err(Error::InvalidDomain("moduli spaces need a positive domain".into()));
    }
    let maslov = maslov_index(d)?;
    let decs = decompositions(g, d);
    let bubble_ends = if maslov >= 2 { detect_bubble_ends(g, d) } else { Vec::new() };
    let vertices: Vec<String> = decs.iter().map(ToString::to_string).collect();
    let (kind, edges) = match maslov {
        1 if decs.len() == 1 => (ModuliKind::Point, 0),
        2 if decs.len() + bubble_ends.len() == 2 => (ModuliKind::Interval, 1),
        3 if bubble_ends.is_empty() && [4, 6, 8].contains(&decs.len()) => match polygon_cycles(&decs) {
            Some(c) if c == [decs.len()] => (ModuliKind::Polygon, decs.len()),
            _ => (ModuliKind::OutsideCatalog, 0),
        },
        1..=3 => (ModuliKind::OutsideCatalog, 0),
        _ => return Err(Error::OutOfRange(format!("moduli space of a domain with index {maslov}"))),
    };
    Ok(ModuliShape { kind, maslov, vertices, bubble_ends, edges })
}
