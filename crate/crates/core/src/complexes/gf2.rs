//! Linear algebra over the field with two elements, on packed bit rows.

use std::collections::HashMap;

use crate::{Error, Result};

const WORD: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitRow {
    words: Vec<u64>,
}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        BitRow { words: vec![0; len.div_ceil(WORD)] }
    }

    pub fn from_ones(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut row = Self::zeros(len);
        for i in ones {
            row.flip(i);
        }
        row
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / WORD] ^= 1 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitRow) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn lowest_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(k, w)| k * WORD + w.trailing_zeros() as usize)
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * WORD + b)
            })
        })
    }
}

/// Rank over GF(2) of the matrix whose rows are given.
pub fn rank(rows: impl IntoIterator<Item = BitRow>) -> usize {
    let mut basis: HashMap<usize, BitRow> = HashMap::new();
    for mut row in rows {
        while let Some(p) = row.lowest_one() {
            match basis.get(&p) {
                Some(b) => row.xor_assign(b),
                None => {
                    basis.insert(p, row);
                    break;
                }
            }
        }
    }
    basis.len()
}

/// Incrementally built linear system `A v = b` over GF(2).
///
/// Each stored row is keyed by its lowest set bit, so reducing a new row
/// only ever clears bits from low to high.
#[derive(Clone, Debug)]
pub struct Gf2System {
    nvars: usize,
    rows: Vec<Option<(BitRow, bool)>>,
    equations: usize,
}

impl Gf2System {
    pub fn new(nvars: usize) -> Self {
        Gf2System { nvars, rows: vec![None; nvars], equations: 0 }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn equations(&self) -> usize {
        self.equations
    }

    pub fn rank(&self) -> usize {
        self.rows.iter().filter(|r| r.is_some()).count()
    }

    /// Adds `sum(vars) = rhs`. Repeated variables cancel. Returns whether
    /// the equation was independent of those already present.
    pub fn add_equation(&mut self, vars: &[usize], rhs: bool) -> Result<bool> {
        self.equations += 1;
        let mut row = BitRow::from_ones(self.nvars, vars.iter().copied());
        let mut rhs = rhs;
        while let Some(p) = row.lowest_one() {
            match &self.rows[p] {
                Some((basis, b)) => {
                    row.xor_assign(basis);
                    rhs ^= b;
                }
                None => {
                    self.rows[p] = Some((row, rhs));
                    return Ok(true);
                }
            }
        }
        if rhs {
            Err(Error::Unsatisfiable)
        } else {
            Ok(false)
        }
    }

    /// One solution, with every free variable set to zero.
    pub fn solve(&self) -> Vec<bool> {
        let mut value = vec![false; self.nvars];
        for p in (0..self.nvars).rev() {
            if let Some((row, rhs)) = &self.rows[p] {
                let mut v = *rhs;
                for q in row.ones().filter(|&q| q != p) {
                    v ^= value[q];
                }
                value[p] = v;
            }
        }
        value
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_identity_and_dependent_rows() {
        let rows = (0..5).map(|i| BitRow::from_ones(5, [i]));
        assert_eq!(rank(rows), 5);
        let rows = vec![
            BitRow::from_ones(3, [0, 1]),
            BitRow::from_ones(3, [1, 2]),
            BitRow::from_ones(3, [0, 2]),
        ];
        assert_eq!(rank(rows), 2);
    }

    #[test]
    fn bit_iteration_crosses_words() {
        let row = BitRow::from_ones(200, [3, 64, 130, 199]);
        assert_eq!(row.ones().collect::<Vec<_>>(), vec![3, 64, 130, 199]);
        assert_eq!(row.lowest_one(), Some(3));
    }

    #[test]
    fn system_solution_satisfies_every_equation() {
        let eqs: Vec<(Vec<usize>, bool)> = vec![
            (vec![0, 1, 2, 3], true),
            (vec![1, 2], false),
            (vec![3, 4], true),
            (vec![0, 4], false),
        ];
        let mut sys = Gf2System::new(5);
        for (vars, rhs) in &eqs {
            sys.add_equation(vars, *rhs).unwrap();
        }
        let v = sys.solve();
        for (vars, rhs) in &eqs {
            let lhs = vars.iter().fold(false, |acc, &i| acc ^ v[i]);
            assert_eq!(lhs, *rhs);
        }
    }

    #[test]
    fn inconsistent_system_is_rejected() {
        let mut sys = Gf2System::new(2);
        sys.add_equation(&[0, 1], true).unwrap();
        assert_eq!(sys.add_equation(&[1, 0], false), Err(Error::Unsatisfiable));
        // a variable listed twice cancels
        assert_eq!(sys.add_equation(&[1, 1], false), Ok(false));
    }
}
