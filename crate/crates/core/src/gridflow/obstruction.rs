use std::collections::{BTreeMap, HashMap};

use crate::complexes::{GradedChainComplex, HomologyTable};
use crate::grid::{
    enumerate_states, maslov_index, rectangles_from, solve_sign_assignment, GridDiagram, GridDomain, GridRectangle,
    SignAssignmentGrid, SignScope,
};
use crate::{Error, Result};

use super::domains::enumerate_positive_domains;

/// Largest grid for which the whole complex is assembled.
pub const MAX_OBSTRUCTION_GRID: usize = 4;

/// The complex freely generated by positive domains `(x, y, D)`, graded by
/// `μ(D)`, truncated at `mu_max`.
#[derive(Clone, Debug)]
pub struct ObstructionComplex {
    pub diagram: GridDiagram,
    pub mu_max: i32,
    pub domains: Vec<GridDomain>,
    pub complex: GradedChainComplex,
    pub signs: SignAssignmentGrid,
}

fn generator_id(d: &GridDomain) -> String {
    let s = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join("");
    let m: Vec<String> = d.mult.iter().map(ToString::to_string).collect();
    format!("{}>{}:{}", s(&d.x), s(&d.y), m.join(","))
}

fn fits(r: &GridRectangle, d: &GridDomain) -> bool {
    let n = d.n;
    (0..n).all(|i| (0..n).all(|j| !r.contains_square(i, j) || d.mult[i * n + j] > 0))
}

/// Rectangles ending at `y`: one per ordered pair of columns.
fn rectangles_into(g: &GridDiagram, y: &[usize]) -> Vec<GridRectangle> {
    let n = g.n();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b {
                let mut w = y.to_vec();
                w.swap(a, b);
                out.push(GridRectangle::new(g, &w, a, b));
            }
        }
    }
    out
}

impl ObstructionComplex {
    pub fn generators_in(&self, mu: i32) -> usize {
        self.complex.basis(mu).len()
    }

    /// Generator counts per index.
    pub fn counts(&self) -> BTreeMap<i32, usize> {
        self.complex.ranks()
    }

    pub fn verify_d_squared(&self) -> bool {
        self.complex.verify_d_squared()
    }

    /// Homology in gradings `0..=mu_max - 2`, well away from the truncation.
    pub fn homology(&self) -> Result<HomologyTable> {
        let full = self.complex.homology()?;
        let mut out = HomologyTable::default();
        for k in 0..self.mu_max - 1 {
            out.insert(k, full.get(k));
        }
        Ok(out)
    }
}

/// Builds the obstruction complex with the given signs on empty rectangles.
pub fn obstruction_complex_with(g: &GridDiagram, mu_max: i32, signs: SignAssignmentGrid) -> Result<ObstructionComplex> {
    if g.n() > MAX_OBSTRUCTION_GRID {
        return Err(Error::OutOfRange(format!("obstruction complex on a {0}x{0} grid", g.n())));
    }
    if signs.scope() != SignScope::Empty {
        return Err(Error::InvalidComplex("obstruction complex needs signs on every empty rectangle".into()));
    }
    let states = enumerate_states(g);
    let mut domains = Vec::new();
    for x in &states {
        for y in &states {
            domains.extend(enumerate_positive_domains(g, x, y, mu_max)?);
        }
    }
    domains.sort_by_key(|d| maslov_index(d).expect("valid domain"));
    let mut complex = GradedChainComplex::new();
    let mut index: HashMap<GridDomain, usize> = HashMap::new();
    for d in &domains {
        let k = complex.add_generator(generator_id(d), maslov_index(d)?)?;
        index.insert(d.clone(), k);
    }
    for d in &domains {
        let k = index[d];
        let mu = complex.grading(k);
        if mu == 0 {
            continue;
        }
        let tail_sign = if mu % 2 == 0 { 1 } else { -1 };
        for r in rectangles_from(g, &d.x).into_iter().filter(|r| r.is_empty() && fits(r, d)) {
            let e = d.strip_front(&r.domain())?;
            complex.add_term(k, index[&e], signs.sign(&r))?;
        }
        for r in rectangles_into(g, &d.y).into_iter().filter(|r| r.is_empty() && fits(r, d)) {
            let e = d.strip_back(&r.domain())?;
            complex.add_term(k, index[&e], tail_sign * signs.sign(&r))?;
        }
    }
    Ok(ObstructionComplex { diagram: g.clone(), mu_max, domains, complex, signs })
}

pub fn obstruction_complex(g: &GridDiagram, mu_max: i32) -> Result<ObstructionComplex> {
    let signs = solve_sign_assignment(g, SignScope::Empty)?;
    obstruction_complex_with(g, mu_max, signs)
}

/// Homology of the obstruction complex in gradings `0..=mu_max - 2`, after
/// checking `∂² = 0`.
pub fn cd_homology(g: &GridDiagram, mu_max: i32) -> Result<HomologyTable> {
    if mu_max < 2 {
        return Err(Error::OutOfRange(format!("maslov bound {mu_max} for obstruction homology")));
    }
    let c = obstruction_complex(g, mu_max)?;
    if let Some(k) = c.complex.d_squared_violation() {
        return Err(Error::NotAComplex(c.complex.id(k).to_string()));
    }
    c.homology()
}
