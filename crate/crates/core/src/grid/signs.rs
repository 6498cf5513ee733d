use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::diagram::{enumerate_states, state_rank, GridDiagram, GridState};
use super::domain::{rectangles_from, GridDomain, GridRectangle};
use crate::complexes::gf2::Gf2System;
use crate::{Error, Result};

/// Largest grid the sign solver accepts.
pub const MAX_SIGN_GRID: usize = 6;

/// Which rectangles receive a sign.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SignScope {
    /// Empty rectangles avoiding every marking. Only the equations among
    /// these rectangles are imposed.
    Tilde,
    /// All empty rectangles.
    #[default]
    Empty,
}

/// Required value of `s(R1)s(R2)` for the single decomposition of a
/// height-1 or width-1 annulus; `true` means `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AnnulusConvention {
    pub horizontal_negative: bool,
    pub vertical_negative: bool,
}

impl AnnulusConvention {
    pub const STANDARD: AnnulusConvention = AnnulusConvention { horizontal_negative: false, vertical_negative: true };
    pub const SWAPPED: AnnulusConvention = AnnulusConvention { horizontal_negative: true, vertical_negative: false };
}

impl Default for AnnulusConvention {
    fn default() -> Self {
        Self::STANDARD
    }
}

/// Signs `s(R) ∈ {±1}` on empty rectangles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignAssignmentGrid {
    n: usize,
    scope: SignScope,
    convention: AnnulusConvention,
    negative: HashMap<(usize, usize, usize), bool>,
    constraints: usize,
}

fn key(r: &GridRectangle) -> (usize, usize, usize) {
    (state_rank(&r.from), r.left, r.right)
}

fn in_scope(scope: SignScope, r: &GridRectangle) -> bool {
    match scope {
        SignScope::Tilde => r.is_tilde(),
        SignScope::Empty => r.is_empty(),
    }
}

impl SignAssignmentGrid {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn scope(&self) -> SignScope {
        self.scope
    }

    pub fn convention(&self) -> AnnulusConvention {
        self.convention
    }

    pub fn len(&self) -> usize {
        self.negative.len()
    }

    pub fn is_empty(&self) -> bool {
        self.negative.is_empty()
    }

    /// Number of equations in the solved system.
    pub fn constraints(&self) -> usize {
        self.constraints
    }

    pub fn contains(&self, r: &GridRectangle) -> bool {
        self.negative.contains_key(&key(r))
    }

    /// `s(R)`; panics if `R` is outside the scope.
    pub fn sign(&self, r: &GridRectangle) -> i64 {
        match self.negative.get(&key(r)) {
            Some(true) => -1,
            Some(false) => 1,
            None => panic!("rectangle {:?} -> {:?} has no sign", r.from, r.to),
        }
    }

    /// Negates `s(R)`.
    pub fn flip(&mut self, r: &GridRectangle) {
        if let Some(v) = self.negative.get_mut(&key(r)) {
            *v = !*v;
        }
    }
}

/// Every way `x → w → y` of composing two in-scope rectangles, grouped by
/// `(x, y, R1 + R2)`.
pub(crate) fn two_step_compositions(
    g: &GridDiagram,
    scope: SignScope,
) -> BTreeMap<GridDomain, Vec<[GridRectangle; 2]>> {
    let mut groups: BTreeMap<GridDomain, Vec<[GridRectangle; 2]>> = BTreeMap::new();
    for x in enumerate_states(g) {
        for r1 in rectangles_from(g, &x).into_iter().filter(|r| in_scope(scope, r)) {
            for r2 in rectangles_from(g, &r1.to).into_iter().filter(|r| in_scope(scope, r)) {
                let d = r1.domain().compose(&r2.domain()).expect("consecutive rectangles compose");
                groups.entry(d).or_default().push([r1.clone(), r2]);
            }
        }
    }
    groups
}

/// Solves for a sign assignment over GF(2): every index-2 domain with two
/// decompositions `R1*R2 = R1'*R2'` gets `s(R1)s(R2) = -s(R1')s(R2')`, and
/// annuli follow `convention`.
pub fn solve_sign_assignment_with(
    g: &GridDiagram,
    scope: SignScope,
    convention: AnnulusConvention,
) -> Result<SignAssignmentGrid> {
    let n = g.n();
    if n > MAX_SIGN_GRID {
        return Err(Error::OutOfRange(format!("sign assignment on a {n}x{n} grid")));
    }
    let mut index: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for x in enumerate_states(g) {
        for r in rectangles_from(g, &x).into_iter().filter(|r| in_scope(scope, r)) {
            let next = index.len();
            index.entry(key(&r)).or_insert(next);
        }
    }
    let mut system = Gf2System::new(index.len());
    let var = |r: &GridRectangle| index[&key(r)];
    for (d, decs) in two_step_compositions(g, scope) {
        let annulus = match (d.as_row(), d.as_column()) {
            (Some(_), _) => Some(convention.horizontal_negative),
            (_, Some(_)) => Some(convention.vertical_negative),
            _ => None,
        };
        match (annulus, decs.as_slice()) {
            (Some(rhs), _) => {
                for [a, b] in &decs {
                    system.add_equation(&[var(a), var(b)], rhs)?;
                }
            }
            (None, [[a, b], [c, e]]) => {
                system.add_equation(&[var(a), var(b), var(c), var(e)], true)?;
            }
            (None, other) => {
                return Err(Error::InvalidDomain(format!(
                    "index-2 domain {:?} -> {:?} has {} decompositions",
                    d.x,
                    d.y,
                    other.len()
                )))
            }
        }
    }
    let values = system.solve();
    let negative = index.into_iter().map(|(k, v)| (k, values[v])).collect();
    Ok(SignAssignmentGrid { n, scope, convention, negative, constraints: system.equations() })
}

/// Tries the standard annulus convention, then the swapped one.
pub fn solve_sign_assignment(g: &GridDiagram, scope: SignScope) -> Result<SignAssignmentGrid> {
    match solve_sign_assignment_with(g, scope, AnnulusConvention::STANDARD) {
        Err(Error::Unsatisfiable) => solve_sign_assignment_with(g, scope, AnnulusConvention::SWAPPED),
        other => other,
    }
}

/// Checks the defining equations directly on a candidate assignment.
pub fn sign_violations(g: &GridDiagram, s: &SignAssignmentGrid) -> Vec<GridDomain> {
    let mut bad = Vec::new();
    for (d, decs) in two_step_compositions(g, s.scope) {
        let products: Vec<i64> = decs.iter().map(|[a, b]| s.sign(a) * s.sign(b)).collect();
        let ok = match (d.as_row(), d.as_column()) {
            (Some(_), _) => products.iter().all(|&p| (p < 0) == s.convention.horizontal_negative),
            (_, Some(_)) => products.iter().all(|&p| (p < 0) == s.convention.vertical_negative),
            _ => products.len() == 2 && products[0] == -products[1],
        };
        if !ok {
            bad.push(d);
        }
    }
    bad
}

pub(crate) fn state_of(x: &GridState) -> String {
    x.iter().map(ToString::to_string).collect::<Vec<_>>().join("")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::parse_grid;

    #[test]
    fn two_by_two_tilde_scope_is_unconstrained() {
        let g = parse_grid("2\nX: 0 1\nO: 1 0").unwrap();
        let s = solve_sign_assignment(&g, SignScope::Tilde).unwrap();
        assert!(s.is_empty());
        assert_eq!(s.constraints(), 0);
    }

    #[test]
    fn three_by_three_solutions_satisfy_equations() {
        let g = parse_grid("3\nX: 0 1 2\nO: 1 2 0").unwrap();
        for scope in [SignScope::Tilde, SignScope::Empty] {
            let s = solve_sign_assignment(&g, scope).unwrap();
            assert!(sign_violations(&g, &s).is_empty());
        }
    }
}
