use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::diagram::{enumerate_states, state_rank, GridDiagram, GridState};
use super::domain::{rectangles_from, GridRectangle};
use super::signs::{solve_sign_assignment, state_of, SignAssignmentGrid, SignScope};
use crate::complexes::{GradedChainComplex, HomologyGroup, HomologyTable};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Coefficients {
    #[default]
    Gf2,
    Int,
}

/// `(ΔM, ΔA) = (M(x) - M(y), A(x) - A(y))` across a rectangle `x → y`.
pub fn rectangle_grading_drop(r: &GridRectangle) -> (i32, i32) {
    let mu = 1 + 2 * r.interior_points as i32;
    (mu - 2 * r.o_count as i32, r.x_count as i32 - r.o_count as i32)
}

/// Maslov and Alexander gradings of every state, indexed by lexicographic
/// rank, relative to the lexicographically least state.
pub fn relative_gradings(g: &GridDiagram) -> Result<Vec<(i32, i32)>> {
    let states = enumerate_states(g);
    let mut grading: Vec<Option<(i32, i32)>> = vec![None; states.len()];
    grading[0] = Some((0, 0));
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        let (m, a) = grading[k].expect("queued states are graded");
        for r in rectangles_from(g, &states[k]) {
            let (dm, da) = rectangle_grading_drop(&r);
            let t = state_rank(&r.to);
            match grading[t] {
                None => {
                    grading[t] = Some((m - dm, a - da));
                    queue.push_back(t);
                }
                Some(v) if v != (m - dm, a - da) => {
                    return Err(Error::InvalidGrid(format!(
                        "gradings disagree at state {}",
                        state_of(&states[t])
                    )))
                }
                Some(_) => {}
            }
        }
    }
    grading
        .into_iter()
        .map(|v| v.ok_or_else(|| Error::InvalidGrid("state graph is disconnected".into())))
        .collect()
}

/// The tilde grid complex: states graded by Maslov grading, with an
/// Alexander grading carried alongside.
#[derive(Clone, Debug)]
pub struct GridComplex {
    pub diagram: GridDiagram,
    pub coefficients: Coefficients,
    pub states: Vec<GridState>,
    /// `(M, A)` per state.
    pub gradings: Vec<(i32, i32)>,
    pub complex: GradedChainComplex,
}

impl GridComplex {
    pub fn verify_d_squared(&self) -> bool {
        match self.coefficients {
            Coefficients::Gf2 => self.complex.verify_d_squared_gf2(),
            Coefficients::Int => self.complex.verify_d_squared(),
        }
    }

    pub fn homology(&self) -> Result<HomologyTable> {
        homology_of(&self.complex, self.coefficients)
    }

    /// Homology split by Alexander grading: `(M, A, group)` for nonzero
    /// groups, sorted.
    pub fn bigraded_homology(&self) -> Result<Vec<(i32, i32, HomologyGroup)>> {
        let mut parts: BTreeMap<i32, GradedChainComplex> = BTreeMap::new();
        let mut local = vec![0; self.states.len()];
        for (k, &(m, a)) in self.gradings.iter().enumerate() {
            let part = parts.entry(a).or_default();
            local[k] = part.add_generator(self.complex.id(k), m)?;
        }
        for (k, &(_, a)) in self.gradings.iter().enumerate() {
            for &(t, c) in self.complex.boundary(k) {
                if self.gradings[t].1 != a {
                    return Err(Error::InvalidComplex("differential changes the Alexander grading".into()));
                }
                parts.get_mut(&a).expect("part exists").add_term(local[k], local[t], c)?;
            }
        }
        let mut out = Vec::new();
        for (a, part) in parts {
            for (m, group) in homology_of(&part, self.coefficients)?.iter() {
                if !group.is_zero() {
                    out.push((m, a, group.clone()));
                }
            }
        }
        out.sort_by_key(|(m, a, _)| (*m, *a));
        Ok(out)
    }
}

fn homology_of(c: &GradedChainComplex, coeff: Coefficients) -> Result<HomologyTable> {
    match coeff {
        Coefficients::Gf2 => c.homology_gf2(),
        Coefficients::Int => c.homology(),
    }
}

/// `∂x = Σ s(R) y` over empty rectangles `R: x → y` that avoid every O and
/// every X. Over the integers `signs` must be given.
pub fn tilde_differential(
    g: &GridDiagram,
    coefficients: Coefficients,
    signs: Option<&SignAssignmentGrid>,
) -> Result<GridComplex> {
    if coefficients == Coefficients::Int && signs.is_none() {
        return Err(Error::InvalidComplex("integral grid complex needs a sign assignment".into()));
    }
    let states = enumerate_states(g);
    let gradings = relative_gradings(g)?;
    let mut complex = GradedChainComplex::new();
    for (s, &(m, _)) in states.iter().zip(&gradings) {
        complex.add_generator(state_of(s), m)?;
    }
    for (k, x) in states.iter().enumerate() {
        for r in rectangles_from(g, x).into_iter().filter(GridRectangle::is_tilde) {
            let c = match (coefficients, signs) {
                (Coefficients::Int, Some(s)) => s.sign(&r),
                _ => 1,
            };
            complex.add_term(k, state_rank(&r.to), c)?;
        }
    }
    Ok(GridComplex { diagram: g.clone(), coefficients, states, gradings, complex })
}

/// Tilde grid homology, solving for signs when working over the integers.
pub fn grid_homology(g: &GridDiagram, coefficients: Coefficients) -> Result<HomologyTable> {
    let signs = match coefficients {
        Coefficients::Int => Some(solve_sign_assignment(g, SignScope::Empty)?),
        Coefficients::Gf2 => None,
    };
    let c = tilde_differential(g, coefficients, signs.as_ref())?;
    if !c.verify_d_squared() {
        return Err(Error::NotAComplex("tilde grid complex".into()));
    }
    c.homology()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::parse_grid;

    #[test]
    fn two_by_two_has_zero_differential() {
        let g = parse_grid("2\nX: 0 1\nO: 1 0").unwrap();
        let c = tilde_differential(&g, Coefficients::Gf2, None).unwrap();
        assert!((0..2).all(|k| c.complex.boundary(k).is_empty()));
        assert_eq!(grid_homology(&g, Coefficients::Gf2).unwrap().total_rank(), 2);
        assert_eq!(grid_homology(&g, Coefficients::Int).unwrap().total_rank(), 2);
    }

    #[test]
    fn base_state_is_graded_zero() {
        let g = parse_grid("3\nX: 0 1 2\nO: 1 2 0").unwrap();
        assert_eq!(relative_gradings(&g).unwrap()[0], (0, 0));
    }

    #[test]
    fn integral_complex_needs_signs() {
        let g = parse_grid("2\nX: 0 1\nO: 1 0").unwrap();
        assert!(tilde_differential(&g, Coefficients::Int, None).is_err());
    }
}
