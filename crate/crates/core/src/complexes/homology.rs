use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// One homology group: free rank plus torsion coefficients `t_1 | t_2 | ...`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.betti > 0 {
            parts.push(if self.betti == 1 { "Z".to_string() } else { format!("Z^{}", self.betti) });
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Homology groups keyed by grading. Serializes as
/// `{"grading": {"betti": .., "torsion": [..]}}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HomologyTable {
    groups: BTreeMap<i32, HomologyGroup>,
}

impl HomologyTable {
    pub fn insert(&mut self, grading: i32, group: HomologyGroup) {
        self.groups.insert(grading, group);
    }

    /// The group in `grading`; zero when absent.
    pub fn get(&self, grading: i32) -> HomologyGroup {
        self.groups.get(&grading).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, &HomologyGroup)> {
        self.groups.iter().map(|(k, g)| (*k, g))
    }

    pub fn total_rank(&self) -> usize {
        self.groups.values().map(|g| g.betti).sum()
    }

    pub fn has_torsion(&self) -> bool {
        self.groups.values().any(|g| !g.torsion.is_empty())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .map(|(k, g)| if k.rem_euclid(2) == 0 { g.betti as i64 } else { -(g.betti as i64) })
            .sum()
    }

    /// Drops zero groups so tables over different grading windows compare.
    pub fn nonzero(&self) -> HomologyTable {
        HomologyTable {
            groups: self.groups.iter().filter(|(_, g)| !g.is_zero()).map(|(k, g)| (*k, g.clone())).collect(),
        }
    }

    pub fn shifted(&self, d: i32) -> HomologyTable {
        HomologyTable { groups: self.groups.iter().map(|(k, g)| (k + d, g.clone())).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.groups.values().all(HomologyGroup::is_zero)
    }
}

impl fmt::Display for HomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, g) in &self.groups {
            writeln!(f, "  H_{k:<3} = {g}")?;
        }
        Ok(())
    }
}
