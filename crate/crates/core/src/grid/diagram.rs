use std::fmt;

use serde::Deserialize;

use crate::{Error, Result};

/// Largest grid whose `n!` states are enumerated.
pub const MAX_GRID: usize = 8;

/// An `n × n` toroidal grid. `o[i]` and `x[i]` are the rows of the O and X
/// markings in column `i`; the marking sits in the small square `S_{i, o[i]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GridDiagram {
    n: usize,
    x: Vec<usize>,
    o: Vec<usize>,
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&v| v < p.len() && !std::mem::replace(&mut seen[v], true))
}

impl GridDiagram {
    pub fn new(x: Vec<usize>, o: Vec<usize>) -> Result<Self> {
        let n = x.len();
        if n < 2 {
            return Err(Error::InvalidGrid(format!("grid size {n} is below 2")));
        }
        if n > MAX_GRID {
            return Err(Error::OutOfRange(format!("grid size {n}")));
        }
        if o.len() != n {
            return Err(Error::InvalidGrid(format!("X has {n} entries, O has {}", o.len())));
        }
        for (name, p) in [("X", &x), ("O", &o)] {
            if !is_permutation(p) {
                return Err(Error::InvalidGrid(format!("{name} = {p:?} is not a permutation of 0..{n}")));
            }
        }
        if let Some(i) = (0..n).find(|&i| x[i] == o[i]) {
            return Err(Error::InvalidGrid(format!("O and X coincide in column {i}")));
        }
        Ok(GridDiagram { n, x, o })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x(&self) -> &[usize] {
        &self.x
    }

    pub fn o(&self) -> &[usize] {
        &self.o
    }

    /// Column of the O marking in `row`.
    pub fn o_column(&self, row: usize) -> usize {
        self.o.iter().position(|&r| r == row).expect("O is a permutation")
    }

    /// The grid reflected in the diagonal: columns become rows.
    pub fn transpose(&self) -> GridDiagram {
        let inv = |p: &[usize]| {
            let mut q = vec![0; p.len()];
            for (i, &r) in p.iter().enumerate() {
                q[r] = i;
            }
            q
        };
        GridDiagram { n: self.n, x: inv(&self.x), o: inv(&self.o) }
    }

    /// The grid with columns moved `dc` to the right and rows `dr` up,
    /// cyclically.
    pub fn shift(&self, dc: usize, dr: usize) -> GridDiagram {
        let n = self.n;
        let mv = |p: &[usize]| {
            let mut q = vec![0; n];
            for (i, &r) in p.iter().enumerate() {
                q[(i + dc) % n] = (r + dr) % n;
            }
            q
        };
        GridDiagram { n, x: mv(&self.x), o: mv(&self.o) }
    }
}

impl fmt::Display for GridDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |p: &[usize]| p.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        writeln!(f, "{}", self.n)?;
        writeln!(f, "X: {}", join(&self.x))?;
        writeln!(f, "O: {}", join(&self.o))
    }
}

#[derive(Deserialize)]
struct JsonGrid {
    n: Option<usize>,
    #[serde(alias = "X")]
    x: Vec<usize>,
    #[serde(alias = "O")]
    o: Vec<usize>,
}

/// Parses the text format
///
/// ```text
/// 5
/// X: 0 1 2 3 4
/// O: 2 3 4 0 1
/// ```
///
/// or the JSON object `{"n": 5, "X": [...], "O": [...]}`. Entries may be
/// separated by spaces or commas; `#` starts a comment.
pub fn parse_grid(text: &str) -> Result<GridDiagram> {
    if text.trim_start().starts_with('{') {
        let g: JsonGrid = serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
        if let Some(n) = g.n {
            if n != g.x.len() {
                return Err(Error::InvalidGrid(format!("n = {n} but X has {} entries", g.x.len())));
            }
        }
        return GridDiagram::new(g.x, g.o);
    }
    let mut n = None;
    let mut x = None;
    let mut o = None;
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: k + 1, msg };
        let numbers = |s: &str| -> Result<Vec<usize>> {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| err(format!("bad entry `{t}`"))))
                .collect()
        };
        if let Some(rest) = line.strip_prefix("X:").or_else(|| line.strip_prefix("x:")) {
            x = Some(numbers(rest)?);
        } else if let Some(rest) = line.strip_prefix("O:").or_else(|| line.strip_prefix("o:")) {
            o = Some(numbers(rest)?);
        } else if n.is_none() {
            n = Some(line.parse::<usize>().map_err(|_| err(format!("expected grid size, found `{line}`")))?);
        } else {
            return Err(err(format!("unexpected line `{line}`")));
        }
    }
    let last = text.lines().count().max(1);
    let x = x.ok_or(Error::Parse { line: last, msg: "missing `X:` line".into() })?;
    let o = o.ok_or(Error::Parse { line: last, msg: "missing `O:` line".into() })?;
    if let Some(n) = n {
        if n != x.len() {
            return Err(Error::InvalidGrid(format!("n = {n} but X has {} entries", x.len())));
        }
    }
    GridDiagram::new(x, o)
}

/// A grid state: the intersection point on vertical circle `i` sits at
/// height `sigma[i]`.
pub type GridState = Vec<usize>;

/// All `n!` states in lexicographic order.
pub fn enumerate_states(g: &GridDiagram) -> Vec<GridState> {
    let n = g.n();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<GridState>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

/// Position of `s` in the lexicographic enumeration.
pub fn state_rank(s: &[usize]) -> usize {
    let n = s.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = s[i + 1..].iter().filter(|&&v| v < s[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_text_and_json() {
        let g = parse_grid("5\nX: 0 1 2 3 4\nO: 2 3 4 0 1\n").unwrap();
        assert_eq!(g.n(), 5);
        let h = parse_grid(r#"{"n": 5, "X": [0,1,2,3,4], "O": [2,3,4,0,1]}"#).unwrap();
        assert_eq!(g, h);
        assert_eq!(parse_grid(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(matches!(parse_grid("2\nX: 0 1\nO: 0 1"), Err(Error::InvalidGrid(_))));
        assert!(matches!(parse_grid("3\nX: 0 1 1\nO: 1 2 0"), Err(Error::InvalidGrid(_))));
        assert!(matches!(parse_grid("2\nX: 0 a\nO: 1 0"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_grid("2\nX: 0 1"), Err(Error::Parse { .. })));
    }

    #[test]
    fn ranks_follow_enumeration() {
        let g = GridDiagram::new(vec![0, 1, 2, 3], vec![1, 2, 3, 0]).unwrap();
        let states = enumerate_states(&g);
        assert_eq!(states.len(), 24);
        for (k, s) in states.iter().enumerate() {
            assert_eq!(state_rank(s), k);
        }
    }

    #[test]
    fn transpose_and_shift_keep_grids_valid() {
        let g = parse_grid("5\nX: 0 1 2 3 4\nO: 2 3 4 0 1").unwrap();
        let t = g.transpose();
        assert_eq!(GridDiagram::new(t.x().to_vec(), t.o().to_vec()).unwrap(), t);
        assert_eq!(t.transpose(), g);
        let s = g.shift(2, 3);
        assert!(GridDiagram::new(s.x().to_vec(), s.o().to_vec()).is_ok());
    }
}
