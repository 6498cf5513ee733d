use std::collections::HashMap;
use std::fmt;

use super::diagram::LinkDiagram;
use super::resolution::{resolve, Resolution, Vertex};
use crate::complexes::{GradedChainComplex, HomologyGroup, HomologyTable};
use crate::{Error, Result};

/// A standard generator: a vertex plus a label in `{1, x}` on every circle
/// of its resolution. Bit `k` of `labels` set means circle `k` carries `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KhGenerator {
    pub vertex: Vertex,
    pub labels: u64,
    pub circles: u8,
}

impl KhGenerator {
    pub fn is_x(&self, circle: usize) -> bool {
        self.labels >> circle & 1 == 1
    }

    pub fn homological_grading(&self) -> i32 {
        self.vertex.weight() as i32
    }

    /// `|v| + #1 - #x`. The differential lowers it by exactly 2.
    pub fn quantum_grading(&self) -> i32 {
        let xs = self.labels.count_ones() as i32;
        let ones = self.circles as i32 - xs;
        self.homological_grading() + ones - xs
    }
}

impl fmt::Display for KhGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.circles as usize {
            f.write_str(if self.is_x(k) { "x" } else { "1" })?;
        }
        if self.vertex.n > 0 {
            write!(f, "_{}", self.vertex)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Saddle {
    /// Circles `from` of the source merge into circle `to` of the target.
    Merge { from: [usize; 2], to: usize },
    /// Circle `from` of the source splits into circles `to` of the target.
    Split { from: usize, to: [usize; 2] },
}

/// The map `∂_{u,v}` of one cube edge, without its sign.
#[derive(Clone, Debug)]
pub struct EdgeMap {
    pub from: Vertex,
    pub to: Vertex,
    pub crossing: usize,
    pub saddle: Saddle,
    /// Untouched circles: `(index in source, index in target)`.
    pub carry: Vec<(usize, usize)>,
}

impl EdgeMap {
    /// Image of a labeling of the source circles, as target labelings with
    /// coefficient one each.
    pub fn apply(&self, labels: u64) -> Vec<u64> {
        let mut base = 0u64;
        for &(s, t) in &self.carry {
            base |= (labels >> s & 1) << t;
        }
        match self.saddle {
            Saddle::Merge { from: [a, b], to } => {
                let (xa, xb) = (labels >> a & 1, labels >> b & 1);
                match xa + xb {
                    0 => vec![base],
                    1 => vec![base | 1 << to],
                    _ => Vec::new(),
                }
            }
            Saddle::Split { from, to: [a, b] } => {
                if labels >> from & 1 == 1 {
                    vec![base | 1 << a | 1 << b]
                } else {
                    vec![base | 1 << b, base | 1 << a]
                }
            }
        }
    }
}

/// The edge map from `ru` to `rv`, where `rv.vertex` is `ru.vertex` with one
/// 1-bit cleared. Circles that do not meet the flipped crossing are matched
/// by their arc sets.
pub fn edge_map(ru: &Resolution, rv: &Resolution) -> Result<EdgeMap> {
    let (u, v) = (ru.vertex, rv.vertex);
    let diff = u.mask ^ v.mask;
    if u.n != v.n || diff.count_ones() != 1 || u.mask & diff == 0 {
        return Err(Error::NotAdjacent(u.to_string(), v.to_string()));
    }
    let crossing = diff.trailing_zeros() as usize;
    let touched = |r: &Resolution| -> Vec<usize> {
        let mut t: Vec<usize> = r
            .circles
            .iter()
            .enumerate()
            .filter(|(_, c)| c.passes.iter().any(|p| p.crossing == crossing))
            .map(|(k, _)| k)
            .collect();
        t.sort_unstable();
        t
    };
    let tu = touched(ru);
    let tv = touched(rv);
    let saddle = match (tu.as_slice(), tv.as_slice()) {
        (&[a, b], &[c]) => Saddle::Merge { from: [a, b], to: c },
        (&[a], &[b, c]) => Saddle::Split { from: a, to: [b, c] },
        _ => {
            return Err(Error::NonPlanar(format!(
                "edge {u} -> {v} changes {} circles into {}",
                tu.len(),
                tv.len()
            )))
        }
    };

    let mut by_arcs: HashMap<&[usize], usize> = HashMap::new();
    for (k, c) in rv.circles[..rv.first_unknot()].iter().enumerate() {
        by_arcs.insert(&c.arcs, k);
    }
    let mut carry = Vec::new();
    for (k, c) in ru.circles[..ru.first_unknot()].iter().enumerate() {
        if tu.contains(&k) {
            continue;
        }
        let t = *by_arcs
            .get(c.arcs.as_slice())
            .ok_or_else(|| Error::NonPlanar(format!("circle {k} of {u} has no partner in {v}")))?;
        carry.push((k, t));
    }
    let (fu, fv) = (ru.first_unknot(), rv.first_unknot());
    carry.extend((0..ru.circle_count() - fu).map(|k| (fu + k, fv + k)));
    Ok(EdgeMap { from: u, to: v, crossing, saddle, carry })
}

/// The standard sign assignment: `s(u, v)` is the parity of the 1-bits of
/// `u` before the flipped coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignAssignment {
    pub n: usize,
}

impl SignAssignment {
    /// `s` for the edge leaving `u` through coordinate `i` (bit `i` of `u`
    /// must be set).
    pub fn s(&self, u: Vertex, i: usize) -> u8 {
        (u.mask & ((1u32 << i) - 1)).count_ones() as u8 & 1
    }

    pub fn sign(&self, u: Vertex, i: usize) -> i64 {
        if self.s(u, i) == 0 {
            1
        } else {
            -1
        }
    }

    /// Every 2-face as `(i, j, u)` with `i < j` and `u` the top corner.
    pub fn faces(&self) -> impl Iterator<Item = (usize, usize, Vertex)> + '_ {
        let n = self.n;
        (0..n).flat_map(move |i| {
            (i + 1..n).flat_map(move |j| {
                Vertex::all(n)
                    .filter(move |v| v.bit(i) && v.bit(j))
                    .map(move |v| (i, j, v))
            })
        })
    }

    /// Number of edges with `s = 0` on the face with top corner `u`.
    pub fn positive_edges(&self, i: usize, j: usize, u: Vertex) -> usize {
        let edges = [(u, i), (u, j), (u.flip(i), j), (u.flip(j), i)];
        edges.iter().filter(|&&(w, k)| self.s(w, k) == 0).count()
    }

    pub fn satisfies_face_parity(&self) -> bool {
        self.faces().all(|(i, j, u)| self.positive_edges(i, j, u) % 2 == 1)
    }
}

pub fn standard_sign_assignment(n: usize) -> SignAssignment {
    SignAssignment { n }
}

/// The Khovanov complex together with the cube data it was built from.
#[derive(Clone, Debug)]
pub struct KhovanovComplex {
    pub diagram: LinkDiagram,
    /// Indexed by vertex mask.
    pub resolutions: Vec<Resolution>,
    /// In the order of the chain complex's basis.
    pub generators: Vec<KhGenerator>,
    pub complex: GradedChainComplex,
    index: HashMap<KhGenerator, usize>,
}

impl KhovanovComplex {
    pub fn index_of(&self, g: &KhGenerator) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn generator(&self, k: usize) -> &KhGenerator {
        &self.generators[k]
    }

    pub fn resolution(&self, v: Vertex) -> &Resolution {
        &self.resolutions[v.mask as usize]
    }

    pub fn quantum_gradings(&self) -> Vec<i32> {
        self.generators.iter().map(KhGenerator::quantum_grading).collect()
    }

    /// Homology split by quantum grading, as `(homological, quantum, group)`
    /// for every nonzero group. The differential lowers `q` by 2, so the
    /// summands are the subcomplexes of constant `q - 2|v|`.
    pub fn bigraded_homology(&self) -> Result<Vec<(i32, i32, HomologyGroup)>> {
        let strand = |g: &KhGenerator| g.quantum_grading() - 2 * g.homological_grading();
        let mut keys: Vec<i32> = self.generators.iter().map(strand).collect();
        keys.sort_unstable();
        keys.dedup();
        let mut out = Vec::new();
        for key in keys {
            let keep: Vec<usize> = (0..self.generators.len()).filter(|&k| strand(&self.generators[k]) == key).collect();
            let mut sub = GradedChainComplex::new();
            for &k in &keep {
                sub.add_generator(self.complex.id(k), self.complex.grading(k))?;
            }
            for &k in &keep {
                for &(t, c) in self.complex.boundary(k) {
                    sub.add_term_by_id(self.complex.id(k), self.complex.id(t), c)?;
                }
            }
            for (h, group) in sub.homology()?.nonzero().iter() {
                out.push((h, key + 2 * h, group.clone()));
            }
        }
        out.sort_by_key(|&(h, q, _)| (h, q));
        Ok(out)
    }
}

pub fn khovanov_complex(d: &LinkDiagram) -> Result<KhovanovComplex> {
    let n = d.n();
    let resolutions: Vec<Resolution> = Vertex::all(n).map(|v| resolve(d, v)).collect();
    let mut generators = Vec::new();
    let mut index = HashMap::new();
    let mut complex = GradedChainComplex::new();
    for r in &resolutions {
        let c = r.circle_count();
        if c > 63 {
            return Err(Error::OutOfRange(format!("{c} circles in one resolution")));
        }
        for labels in 0..1u64 << c {
            let g = KhGenerator { vertex: r.vertex, labels, circles: c as u8 };
            index.insert(g, generators.len());
            complex.add_generator(g.to_string(), g.homological_grading())?;
            generators.push(g);
        }
    }

    let signs = standard_sign_assignment(n);
    for r in &resolutions {
        let u = r.vertex;
        for i in (0..n).filter(|&i| u.bit(i)) {
            let w = u.flip(i);
            let rw = &resolutions[w.mask as usize];
            let map = edge_map(r, rw)?;
            let sign = signs.sign(u, i);
            let wc = rw.circle_count() as u8;
            for labels in 0..1u64 << r.circle_count() {
                let src = index[&KhGenerator { vertex: u, labels, circles: r.circle_count() as u8 }];
                for t in map.apply(labels) {
                    let dst = index[&KhGenerator { vertex: w, labels: t, circles: wc }];
                    complex.add_term(src, dst, sign)?;
                }
            }
        }
    }
    Ok(KhovanovComplex { diagram: d.clone(), resolutions, generators, complex, index })
}

pub fn khovanov_homology(d: &LinkDiagram) -> Result<HomologyTable> {
    khovanov_complex(d)?.complex.homology()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn merge() -> EdgeMap {
        let v = Vertex::new(1, 1);
        EdgeMap { from: v, to: v.flip(0), crossing: 0, saddle: Saddle::Merge { from: [0, 1], to: 0 }, carry: vec![] }
    }

    fn split() -> EdgeMap {
        let v = Vertex::new(1, 1);
        EdgeMap { from: v, to: v.flip(0), crossing: 0, saddle: Saddle::Split { from: 0, to: [0, 1] }, carry: vec![] }
    }

    #[test]
    fn multiplication_table() {
        let m = merge();
        assert_eq!(m.apply(0b00), vec![0b0]);
        assert_eq!(m.apply(0b10), vec![0b1]);
        assert_eq!(m.apply(0b01), vec![0b1]);
        assert!(m.apply(0b11).is_empty());
    }

    #[test]
    fn comultiplication_table() {
        let d = split();
        let mut one = d.apply(0);
        one.sort_unstable();
        assert_eq!(one, vec![0b01, 0b10]);
        assert_eq!(d.apply(1), vec![0b11]);
    }

    #[test]
    fn carried_labels_move_to_their_new_index() {
        let mut m = merge();
        m.saddle = Saddle::Merge { from: [1, 2], to: 1 };
        m.carry = vec![(0, 0)];
        assert_eq!(m.apply(0b001), vec![0b01]);
        assert_eq!(m.apply(0b011), vec![0b11]);
    }

    #[test]
    fn sign_assignment_small_cubes() {
        let s = standard_sign_assignment(1);
        assert_eq!(s.s(Vertex::new(1, 1), 0), 0);
        for n in 2..=5 {
            assert!(standard_sign_assignment(n).satisfies_face_parity(), "n = {n}");
        }
        assert_eq!(standard_sign_assignment(3).faces().count(), 6);
    }

    #[test]
    fn generator_names() {
        let g = KhGenerator { vertex: Vertex::new(0b10, 2), labels: 0b10, circles: 2 };
        assert_eq!(g.to_string(), "1x_10");
        assert_eq!(g.quantum_grading(), 1);
    }
}
