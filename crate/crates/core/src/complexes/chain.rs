use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::gf2::{self, BitRow};
use super::homology::{HomologyGroup, HomologyTable};
use super::snf::smith_normal_form;
use crate::{Error, Result};

/// A free graded chain complex over the integers with a fixed basis.
///
/// Generators carry opaque string ids and keep their insertion order; the
/// boundary of a generator is a sparse integer combination of generators one
/// grading lower. `boundary ∘ boundary = 0` is not assumed; see
/// [`GradedChainComplex::verify_d_squared`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedChainComplex {
    ids: Vec<String>,
    gradings: Vec<i32>,
    index: HashMap<String, usize>,
    boundary: Vec<Vec<(usize, i64)>>,
}

impl GradedChainComplex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_generator(&mut self, id: impl Into<String>, grading: i32) -> Result<usize> {
        let id = id.into();
        if self.index.contains_key(&id) {
            return Err(Error::InvalidComplex(format!("duplicate generator {id}")));
        }
        let k = self.ids.len();
        self.index.insert(id.clone(), k);
        self.ids.push(id);
        self.gradings.push(grading);
        self.boundary.push(Vec::new());
        Ok(k)
    }

    /// Adds `coeff · to` to the boundary of `from`.
    pub fn add_term(&mut self, from: usize, to: usize, coeff: i64) -> Result<()> {
        if from >= self.len() || to >= self.len() {
            return Err(Error::InvalidComplex("generator index out of range".into()));
        }
        if self.gradings[to] != self.gradings[from] - 1 {
            return Err(Error::InvalidComplex(format!(
                "boundary of {} (grading {}) hits {} (grading {})",
                self.ids[from], self.gradings[from], self.ids[to], self.gradings[to]
            )));
        }
        if coeff == 0 {
            return Ok(());
        }
        let terms = &mut self.boundary[from];
        match terms.binary_search_by_key(&to, |t| t.0) {
            Ok(k) => {
                terms[k].1 += coeff;
                if terms[k].1 == 0 {
                    terms.remove(k);
                }
            }
            Err(k) => terms.insert(k, (to, coeff)),
        }
        Ok(())
    }

    pub fn add_term_by_id(&mut self, from: &str, to: &str, coeff: i64) -> Result<()> {
        let (f, t) = (self.require(from)?, self.require(to)?);
        self.add_term(f, t, coeff)
    }

    fn require(&self, id: &str) -> Result<usize> {
        self.index_of(id)
            .ok_or_else(|| Error::InvalidComplex(format!("undeclared generator {id}")))
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, k: usize) -> &str {
        &self.ids[k]
    }

    pub fn grading(&self, k: usize) -> i32 {
        self.gradings[k]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Nonzero boundary terms of generator `k`, sorted by target index.
    pub fn boundary(&self, k: usize) -> &[(usize, i64)] {
        &self.boundary[k]
    }

    pub fn coefficient(&self, from: usize, to: usize) -> i64 {
        self.boundary[from]
            .binary_search_by_key(&to, |t| t.0)
            .map_or(0, |k| self.boundary[from][k].1)
    }

    pub fn generators(&self) -> impl Iterator<Item = (usize, &str, i32)> {
        self.ids
            .iter()
            .zip(&self.gradings)
            .enumerate()
            .map(|(k, (id, &g))| (k, id.as_str(), g))
    }

    pub fn grading_range(&self) -> Option<(i32, i32)> {
        let lo = *self.gradings.iter().min()?;
        let hi = *self.gradings.iter().max()?;
        Some((lo, hi))
    }

    /// Generator indices of grading `k`, in insertion order.
    pub fn basis(&self, k: i32) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.gradings[i] == k).collect()
    }

    /// Generator counts per grading.
    pub fn ranks(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for &g in &self.gradings {
            *out.entry(g).or_insert(0) += 1;
        }
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.gradings
            .iter()
            .map(|&g| if g.rem_euclid(2) == 0 { 1 } else { -1 })
            .sum()
    }

    /// Matrix of `∂_k : C_k → C_{k-1}`; rows follow `basis(k - 1)`,
    /// columns follow `basis(k)`.
    pub fn boundary_matrix(&self, k: i32) -> Vec<Vec<i64>> {
        let cols = self.basis(k);
        let rows = self.basis(k - 1);
        let row_of: HashMap<usize, usize> = rows.iter().enumerate().map(|(r, &g)| (g, r)).collect();
        let mut m = vec![vec![0i64; cols.len()]; rows.len()];
        for (c, &g) in cols.iter().enumerate() {
            for &(t, v) in &self.boundary[g] {
                m[row_of[&t]][c] = v;
            }
        }
        m
    }

    /// Index of a generator whose boundary has nonzero boundary, if any.
    pub fn d_squared_violation(&self) -> Option<usize> {
        (0..self.len()).find(|&g| {
            let mut acc: HashMap<usize, i128> = HashMap::new();
            for &(t, a) in &self.boundary[g] {
                for &(u, b) in &self.boundary[t] {
                    *acc.entry(u).or_insert(0) += a as i128 * b as i128;
                }
            }
            acc.values().any(|&v| v != 0)
        })
    }

    pub fn verify_d_squared(&self) -> bool {
        self.d_squared_violation().is_none()
    }

    /// Like [`Self::d_squared_violation`], with coefficients reduced mod 2.
    pub fn d_squared_violation_gf2(&self) -> Option<usize> {
        (0..self.len()).find(|&g| {
            let mut acc: HashMap<usize, bool> = HashMap::new();
            for &(t, _) in self.boundary[g].iter().filter(|(_, a)| a.rem_euclid(2) == 1) {
                for &(u, _) in self.boundary[t].iter().filter(|(_, b)| b.rem_euclid(2) == 1) {
                    *acc.entry(u).or_insert(false) ^= true;
                }
            }
            acc.values().any(|&v| v)
        })
    }

    pub fn verify_d_squared_gf2(&self) -> bool {
        self.d_squared_violation_gf2().is_none()
    }

    fn require_d_squared(&self) -> Result<()> {
        match self.d_squared_violation() {
            Some(g) => Err(Error::NotAComplex(self.ids[g].clone())),
            None => Ok(()),
        }
    }

    /// Integral homology, one entry per grading between the extreme
    /// gradings present.
    pub fn homology(&self) -> Result<HomologyTable> {
        self.require_d_squared()?;
        let Some((lo, hi)) = self.grading_range() else {
            return Ok(HomologyTable::default());
        };
        // divisors[k - lo] are the invariant factors of ∂_k
        let divisors: Vec<Vec<u64>> = (lo..=hi + 1)
            .map(|k| {
                smith_normal_form(&self.boundary_matrix(k))
                    .into_iter()
                    .map(|d| u64::try_from(d).expect("torsion coefficient exceeds u64"))
                    .collect()
            })
            .collect();
        let mut table = HomologyTable::default();
        for k in lo..=hi {
            let n = self.basis(k).len();
            let out = &divisors[(k - lo) as usize];
            let incoming = &divisors[(k - lo + 1) as usize];
            table.insert(
                k,
                HomologyGroup {
                    betti: n - out.len() - incoming.len(),
                    torsion: incoming.iter().copied().filter(|&d| d > 1).collect(),
                },
            );
        }
        Ok(table)
    }

    /// Homology with coefficients in the field with two elements. Torsion
    /// lists are empty; `betti` is the dimension over GF(2).
    pub fn homology_gf2(&self) -> Result<HomologyTable> {
        if let Some(g) = self.d_squared_violation_gf2() {
            return Err(Error::NotAComplex(self.ids[g].clone()));
        }
        let Some((lo, hi)) = self.grading_range() else {
            return Ok(HomologyTable::default());
        };
        let ranks: Vec<usize> = (lo..=hi + 1).map(|k| self.rank_gf2(k)).collect();
        let mut table = HomologyTable::default();
        for k in lo..=hi {
            let n = self.basis(k).len();
            let i = (k - lo) as usize;
            table.insert(k, HomologyGroup { betti: n - ranks[i] - ranks[i + 1], torsion: vec![] });
        }
        Ok(table)
    }

    /// Rank of `∂_k` reduced mod 2.
    pub fn rank_gf2(&self, k: i32) -> usize {
        let rows = self.basis(k - 1);
        let col_of: HashMap<usize, usize> = rows.iter().enumerate().map(|(c, &g)| (g, c)).collect();
        let width = rows.len();
        // rank of the transpose: one bit row per source generator
        gf2::rank(self.basis(k).into_iter().map(|g| {
            BitRow::from_ones(
                width,
                self.boundary[g]
                    .iter()
                    .filter(|(_, v)| v.rem_euclid(2) == 1)
                    .map(|(t, _)| col_of[t]),
            )
        }))
    }

    /// The same complex with every grading raised by `d`.
    pub fn shifted(&self, d: i32) -> Self {
        let mut out = self.clone();
        for g in &mut out.gradings {
            *g += d;
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("complex serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct WireGenerator {
    id: String,
    grading: i32,
}

#[derive(Serialize, Deserialize)]
struct WireComplex {
    generators: Vec<WireGenerator>,
    boundary: BTreeMap<String, Vec<(String, i64)>>,
}

impl Serialize for GradedChainComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let wire = WireComplex {
            generators: self
                .generators()
                .map(|(_, id, grading)| WireGenerator { id: id.to_string(), grading })
                .collect(),
            boundary: (0..self.len())
                .filter(|&g| !self.boundary[g].is_empty())
                .map(|g| {
                    let terms = self.boundary[g].iter().map(|&(t, v)| (self.ids[t].clone(), v)).collect();
                    (self.ids[g].clone(), terms)
                })
                .collect(),
        };
        wire.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedChainComplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = WireComplex::deserialize(d)?;
        let mut c = GradedChainComplex::new();
        for g in wire.generators {
            c.add_generator(g.id, g.grading).map_err(D::Error::custom)?;
        }
        for (from, terms) in wire.boundary {
            for (to, coeff) in terms {
                c.add_term_by_id(&from, &to, coeff).map_err(D::Error::custom)?;
            }
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_step(k: i64) -> GradedChainComplex {
        let mut c = GradedChainComplex::new();
        let a = c.add_generator("a", 1).unwrap();
        let b = c.add_generator("b", 0).unwrap();
        c.add_term(a, b, k).unwrap();
        c
    }

    #[test]
    fn multiplication_by_three() {
        let h = two_step(3).homology().unwrap();
        assert_eq!(h.get(0), HomologyGroup { betti: 0, torsion: vec![3] });
        assert_eq!(h.get(1), HomologyGroup::default());
    }

    #[test]
    fn zero_differential_gives_generator_counts() {
        let mut c = GradedChainComplex::new();
        for (i, g) in [0, 0, 1, 2, 2, 2].iter().enumerate() {
            c.add_generator(format!("g{i}"), *g).unwrap();
        }
        let h = c.homology().unwrap();
        assert_eq!(h.get(0).betti, 2);
        assert_eq!(h.get(1).betti, 1);
        assert_eq!(h.get(2).betti, 3);
        assert!(c.verify_d_squared());
    }

    #[test]
    fn circle_cell_structure() {
        let mut c = GradedChainComplex::new();
        c.add_generator("e0", 0).unwrap();
        c.add_generator("e1", 1).unwrap();
        let h = c.homology().unwrap();
        assert_eq!(h.get(0).betti, 1);
        assert_eq!(h.get(1).betti, 1);
    }

    #[test]
    fn nonzero_square_is_detected_and_rejected() {
        let mut c = GradedChainComplex::new();
        c.add_generator("a", 2).unwrap();
        c.add_generator("b", 1).unwrap();
        c.add_generator("c", 0).unwrap();
        c.add_term_by_id("a", "b", 1).unwrap();
        c.add_term_by_id("b", "c", 1).unwrap();
        assert!(!c.verify_d_squared());
        assert_eq!(c.homology(), Err(Error::NotAComplex("a".into())));
    }

    #[test]
    fn boundary_must_drop_grading_by_one() {
        let mut c = GradedChainComplex::new();
        c.add_generator("a", 2).unwrap();
        c.add_generator("c", 0).unwrap();
        assert!(c.add_term_by_id("a", "c", 1).is_err());
        assert!(c.add_term_by_id("a", "zzz", 1).is_err());
        assert!(c.add_generator("a", 5).is_err());
    }

    #[test]
    fn cancelling_terms_are_dropped() {
        let mut c = two_step(2);
        c.add_term(0, 1, -2).unwrap();
        assert!(c.boundary(0).is_empty());
    }

    #[test]
    fn gf2_homology_sees_even_torsion_as_rank() {
        let h = two_step(2).homology_gf2().unwrap();
        assert_eq!(h.get(0).betti, 1);
        assert_eq!(h.get(1).betti, 1);
        let h = two_step(3).homology_gf2().unwrap();
        assert_eq!(h.total_rank(), 0);
    }

    #[test]
    fn json_wire_format() {
        let c = two_step(3);
        let v = c.to_json();
        assert_eq!(
            v,
            serde_json::json!({
                "generators": [{"id": "a", "grading": 1}, {"id": "b", "grading": 0}],
                "boundary": {"a": [["b", 3]]}
            })
        );
        let back: GradedChainComplex = serde_json::from_value(v).unwrap();
        assert_eq!(back, c);
        let bad = serde_json::json!({
            "generators": [{"id": "a", "grading": 1}],
            "boundary": {"a": [["ghost", 1]]}
        });
        assert!(serde_json::from_value::<GradedChainComplex>(bad).is_err());
    }
}
