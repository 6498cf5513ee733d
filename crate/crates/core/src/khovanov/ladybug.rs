use serde::Serialize;

use super::complex::KhovanovComplex;
use super::diagram::LinkDiagram;
use super::resolution::{resolve, Resolution, Vertex};
use crate::{Error, Result};

/// Which of the two matchings to use on every ladybug face.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum LadybugPolicy {
    #[default]
    Right,
    Left,
}

/// A 2-face of the cube whose top corner has one circle passing through
/// both crossings twice, split by each surgery alone and restored by both.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LadybugFace {
    /// Crossing indices, `i < j`, zero-based.
    pub i: usize,
    pub j: usize,
    /// Top corner; bits `i` and `j` are set.
    #[serde(serialize_with = "vertex_string")]
    pub top: Vertex,
}

fn vertex_string<S: serde::Serializer>(v: &Vertex, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl LadybugFace {
    pub fn bottom(&self) -> Vertex {
        self.top.flip(self.i).flip(self.j)
    }
}

pub fn detect_ladybugs(d: &LinkDiagram) -> Vec<LadybugFace> {
    let resolutions: Vec<Resolution> = Vertex::all(d.n()).map(|v| resolve(d, v)).collect();
    ladybug_faces(d, &resolutions)
}

pub(crate) fn ladybug_faces(d: &LinkDiagram, resolutions: &[Resolution]) -> Vec<LadybugFace> {
    let n = d.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for top in Vertex::all(n).filter(|v| v.bit(i) && v.bit(j)) {
                if is_ladybug(d, resolutions, i, j, top) {
                    out.push(LadybugFace { i, j, top });
                }
            }
        }
    }
    out
}

fn is_ladybug(d: &LinkDiagram, resolutions: &[Resolution], i: usize, j: usize, top: Vertex) -> bool {
    let count = |v: Vertex| resolutions[v.mask as usize].circle_count();
    let r = &resolutions[top.mask as usize];
    let z = r.circle_of_arc(d.slot_arc(i, 0));
    let on_z = (0..4).all(|s| r.circle_of_arc(d.slot_arc(i, s)) == z && r.circle_of_arc(d.slot_arc(j, s)) == z);
    let k = count(top);
    on_z && count(top.flip(i)) == k + 1
        && count(top.flip(j)) == k + 1
        && count(top.flip(i).flip(j)) == k
}

/// Two arcs on opposite segments of the ladybug circle: the arcs reached by
/// turning right from the surgery arc of crossing `i`.
///
/// The four passes through crossings `i` and `j` cut the circle into four
/// segments. Turning right from either strand of a 1-smoothed crossing
/// lands at slot 3 (from the a–d strand) or slot 1 (from the b–c strand).
/// Both surgery arcs must pick the same pair of opposite segments.
pub fn right_arcs(d: &LinkDiagram, top: &Resolution, i: usize, j: usize) -> Result<[usize; 2]> {
    let z = &top.circles[top.circle_of_arc(d.slot_arc(i, 0))];
    let markers: Vec<usize> = z
        .passes
        .iter()
        .enumerate()
        .filter(|(_, p)| p.crossing == i || p.crossing == j)
        .map(|(k, _)| k)
        .collect();
    if markers.len() != 4 {
        return Err(Error::Moduli(format!("ladybug circle meets crossings {} and {} {} times", i + 1, j + 1, markers.len())));
    }
    let segment = |arc: usize| -> usize {
        let pos = z.position(arc).expect("arc lies on the ladybug circle");
        markers.iter().filter(|&&k| k < pos).count() % 4
    };
    let pair = |c: usize| {
        let (a, b) = (segment(d.slot_arc(c, 3)), segment(d.slot_arc(c, 1)));
        (a.min(b), a.max(b))
    };
    let (pi, pj) = (pair(i), pair(j));
    if pi.1 - pi.0 != 2 || pi != pj {
        return Err(Error::NonPlanar(format!(
            "right turns at crossings {} and {} disagree on the ladybug circle",
            i + 1,
            j + 1
        )));
    }
    Ok([d.slot_arc(i, 3), d.slot_arc(i, 1)])
}

/// Matches the four broken flowlines of a ladybug face.
pub struct LadybugMatcher<'a> {
    pub kc: &'a KhovanovComplex,
    pub policy: LadybugPolicy,
}

impl LadybugMatcher<'_> {
    /// `mids` are the middle generators (indices into the complex) of the
    /// four flowlines from `y` to `z`. Returns the two pairs, as positions in
    /// `mids`.
    ///
    /// A flowline through the vertex where crossing `i` is undone is matched,
    /// under the right policy, to the flowline through the other middle
    /// vertex whose `x`-labeled new circle contains the same right arc.
    pub fn pair_middles(&self, y: usize, z: usize, mids: [usize; 4]) -> Result<[[usize; 2]; 2]> {
        let (gy, gz) = (self.kc.generator(y), self.kc.generator(z));
        let diff = gy.vertex.mask ^ gz.vertex.mask;
        if diff.count_ones() != 2 || gz.vertex.mask & diff != 0 {
            return Err(Error::Moduli(format!("{gy} and {gz} are not opposite corners of a face")));
        }
        let i = diff.trailing_zeros() as usize;
        let j = 31 - diff.leading_zeros() as usize;
        let d = &self.kc.diagram;
        if !is_ladybug(d, &self.kc.resolutions, i, j, gy.vertex) {
            return Err(Error::Moduli(format!("four flowlines from {gy} to {gz} outside a ladybug face")));
        }
        let [r, _] = right_arcs(d, self.kc.resolution(gy.vertex), i, j)?;
        let side = |m: usize| {
            let g = self.kc.generator(m);
            let res = self.kc.resolution(g.vertex);
            (g.vertex.bit(i), g.is_x(res.circle_of_arc(r)))
        };
        let sides: Vec<(bool, bool)> = mids.iter().map(|&m| side(m)).collect();
        let through_i: Vec<usize> = (0..4).filter(|&k| !sides[k].0).collect();
        let through_j: Vec<usize> = (0..4).filter(|&k| sides[k].0).collect();
        if through_i.len() != 2 || through_j.len() != 2 {
            return Err(Error::Moduli(format!("flowlines from {gy} to {gz} do not split 2+2")));
        }
        let same = self.policy == LadybugPolicy::Right;
        let mut pairs = [[0; 2]; 2];
        for (slot, &a) in through_i.iter().enumerate() {
            let b = *through_j
                .iter()
                .find(|&&b| (sides[a].1 == sides[b].1) == same)
                .ok_or_else(|| Error::Moduli(format!("ladybug labels from {gy} to {gz} do not match up")))?;
            pairs[slot] = [a, b];
        }
        if pairs[0][1] == pairs[1][1] {
            return Err(Error::Moduli(format!("ladybug labels from {gy} to {gz} do not match up")));
        }
        Ok(pairs)
    }
}
