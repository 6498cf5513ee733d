use std::collections::BTreeMap;

use serde::Serialize;

use super::category::FlowCategory;
use crate::khovanov::{right_arcs, KhovanovComplex};
use crate::{Error, Result};

/// The two intervals over a ladybug pair, with endpoints written as letters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LadybugPairing {
    pub from: String,
    pub to: String,
    /// Sorted, e.g. `["ea-gc", "fb-hd"]`.
    pub matching: Vec<String>,
}

/// Letters for the eight points of a ladybug pair `y → z` of generators
/// whose vertices differ at crossings `i < j`.
///
/// Arrows out of `y` get `a..d`, arrows into `z` get `e..h`. Within each
/// group the first two pass through the vertex with crossing `i` undone,
/// and the first of each two lands on the generator labeling `x` the circle
/// that holds the right arc.
pub fn ladybug_letters(kc: &KhovanovComplex, cat: &FlowCategory, y: usize, z: usize) -> Result<BTreeMap<usize, char>> {
    let (gy, gz) = (kc.generator(y), kc.generator(z));
    let diff = gy.vertex.mask ^ gz.vertex.mask;
    if diff.count_ones() != 2 {
        return Err(Error::Moduli(format!("{gy} and {gz} do not span a face")));
    }
    let i = diff.trailing_zeros() as usize;
    let j = 31 - diff.leading_zeros() as usize;
    let [r, _] = right_arcs(&kc.diagram, kc.resolution(gy.vertex), i, j)?;
    let mut letters = BTreeMap::new();
    for (k, p) in cat.points.iter().enumerate() {
        let from_top = p.from == y;
        if !from_top && p.to != z {
            continue;
        }
        let mid = kc.generator(if from_top { p.to } else { p.from });
        if mid.vertex.mask & !diff != gz.vertex.mask & !diff {
            continue;
        }
        let holds_r = mid.is_x(kc.resolution(mid.vertex).circle_of_arc(r));
        let through_i = !mid.vertex.bit(i);
        let code = (!from_top as u8) << 2 | (!through_i as u8) << 1 | !holds_r as u8;
        letters.insert(k, (b'a' + code) as char);
    }
    Ok(letters)
}

/// Lettered matchings for every pair with four broken flowlines.
pub fn ladybug_pairings(kc: &KhovanovComplex, cat: &FlowCategory) -> Result<Vec<LadybugPairing>> {
    let mut out = Vec::new();
    for ((y, z), lines) in cat.broken_flowlines() {
        if lines.len() != 4 {
            continue;
        }
        let letters = ladybug_letters(kc, cat, y, z)?;
        // later arrow first
        let name = |e: &[usize; 2]| format!("{}{}", letters[&e[1]], letters[&e[0]]);
        let mut matching: Vec<String> = cat
            .intervals_between(y, z)
            .map(|iv| {
                let mut ends = [name(&iv.endpoints[0]), name(&iv.endpoints[1])];
                ends.sort();
                ends.join("-")
            })
            .collect();
        matching.sort();
        out.push(LadybugPairing { from: cat.objects[y].id.clone(), to: cat.objects[z].id.clone(), matching });
    }
    Ok(out)
}
