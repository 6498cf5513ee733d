use std::fmt;

use petgraph::unionfind::UnionFind;

use super::diagram::LinkDiagram;

/// A vertex of the cube `{0,1}^n`. Bit `i` is the smoothing of crossing
/// `i + 1`; the printed form reads like a binary number, crossing `n` first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub mask: u32,
    pub n: u8,
}

impl Vertex {
    pub fn new(mask: u32, n: usize) -> Self {
        debug_assert!(n <= 32 && (n == 32 || mask >> n == 0));
        Vertex { mask, n: n as u8 }
    }

    pub fn bit(&self, i: usize) -> bool {
        self.mask >> i & 1 == 1
    }

    pub fn weight(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn flip(&self, i: usize) -> Vertex {
        Vertex { mask: self.mask ^ 1 << i, n: self.n }
    }

    /// All 2^n vertices in increasing mask order.
    pub fn all(n: usize) -> impl Iterator<Item = Vertex> {
        (0..1u32 << n).map(move |m| Vertex::new(m, n))
    }

    /// Parses a string such as `"10"` (crossing `n` first).
    pub fn parse(s: &str) -> Option<Vertex> {
        let mut mask = 0;
        for (i, ch) in s.chars().rev().enumerate() {
            match ch {
                '0' => {}
                '1' => mask |= 1 << i,
                _ => return None,
            }
        }
        (s.len() <= 32).then(|| Vertex::new(mask, s.len()))
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in (0..self.n as usize).rev() {
            f.write_str(if self.bit(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// One pass of a circle through a crossing: entering at `from` slot and
/// leaving at `to` slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pass {
    pub crossing: usize,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circle {
    /// Dense arc ids in traversal order, starting at the smallest. Empty for
    /// a crossingless circle.
    pub arcs: Vec<usize>,
    /// `passes[k]` joins `arcs[k]` to `arcs[k + 1]` (cyclically).
    pub passes: Vec<Pass>,
}

impl Circle {
    pub fn position(&self, arc: usize) -> Option<usize> {
        self.arcs.iter().position(|&a| a == arc)
    }
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub vertex: Vertex,
    pub circles: Vec<Circle>,
    circle_of_arc: Vec<usize>,
    unknots: usize,
}

impl Resolution {
    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }

    pub fn circle_of_arc(&self, arc: usize) -> usize {
        self.circle_of_arc[arc]
    }

    /// Index of the first crossingless circle.
    pub fn first_unknot(&self) -> usize {
        self.circles.len() - self.unknots
    }
}

/// The slot joined to `slot` by the chosen smoothing.
pub fn partner(slot: usize, one: bool) -> usize {
    match (one, slot) {
        (false, 0) => 1,
        (false, 1) => 0,
        (false, 2) => 3,
        (false, 3) => 2,
        (true, 0) => 3,
        (true, 3) => 0,
        (true, 1) => 2,
        (true, 2) => 1,
        _ => unreachable!("slot out of range"),
    }
}

/// The complete resolution of `d` at vertex `v`.
///
/// Circles are ordered by their smallest arc id; crossingless circles come
/// last.
pub fn resolve(d: &LinkDiagram, v: Vertex) -> Resolution {
    assert_eq!(v.n as usize, d.n(), "vertex length must equal crossing count");
    let m = d.arc_count();
    let mut uf = UnionFind::<usize>::new(m);
    for c in 0..d.n() {
        for slot in [0, 2] {
            uf.union(d.slot_arc(c, slot), d.slot_arc(c, partner(slot, v.bit(c))));
        }
    }

    let mut circle_of_arc = vec![usize::MAX; m];
    let mut circles = Vec::new();
    for start in 0..m {
        if circle_of_arc[start] != usize::MAX {
            continue;
        }
        let idx = circles.len();
        let circle = trace(d, v, start);
        for &a in &circle.arcs {
            circle_of_arc[a] = idx;
        }
        debug_assert!(circle.arcs.iter().all(|&a| uf.equiv(a, start)));
        circles.push(circle);
    }
    for _ in 0..d.unknots() {
        circles.push(Circle { arcs: Vec::new(), passes: Vec::new() });
    }
    Resolution { vertex: v, circles, circle_of_arc, unknots: d.unknots() }
}

fn trace(d: &LinkDiagram, v: Vertex, start: usize) -> Circle {
    let mut arcs = Vec::new();
    let mut passes = Vec::new();
    let entry = d.arc_ends(start)[0];
    let mut arc = start;
    let mut enter = entry;
    loop {
        arcs.push(arc);
        let [e0, e1] = d.arc_ends(arc);
        let (c, slot) = if e0 == enter { e1 } else { e0 };
        let to = partner(slot, v.bit(c));
        passes.push(Pass { crossing: c, from: slot, to });
        arc = d.slot_arc(c, to);
        enter = (c, to);
        if arc == start && enter == entry {
            break;
        }
    }
    Circle { arcs, passes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::khovanov::parse_pd;

    #[test]
    fn vertex_prints_like_a_binary_number() {
        let v = Vertex::new(0b01, 2);
        assert_eq!(v.to_string(), "01");
        assert_eq!(Vertex::parse("01"), Some(v));
        assert_eq!(v.flip(1).to_string(), "11");
        assert_eq!(Vertex::new(0b110, 3).to_string(), "110");
    }

    #[test]
    fn one_crossing_kink() {
        // a figure-eight curve with one crossing: the 0-smoothing at slots
        // (0,1),(2,3) gives two circles, the 1-smoothing one circle
        let d = parse_pd("[[1,1,2,2]]").unwrap();
        assert_eq!(resolve(&d, Vertex::new(0, 1)).circle_count(), 2);
        assert_eq!(resolve(&d, Vertex::new(1, 1)).circle_count(), 1);
    }

    #[test]
    fn unknots_are_appended() {
        let d = parse_pd(r#"{"pd": [[1,1,2,2]], "unknots": 2}"#).unwrap();
        let r = resolve(&d, Vertex::new(1, 1));
        assert_eq!(r.circle_count(), 3);
        assert_eq!(r.first_unknot(), 1);
    }
}
