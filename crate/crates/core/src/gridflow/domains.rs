use crate::grid::{maslov_index, GridDiagram, GridDomain, GridRectangle, GridState};
use crate::{Error, Result};

/// Largest grid and index accepted by the domain enumerator.
pub const MAX_FLOW_GRID: usize = 5;
pub const MAX_FLOW_MU: i32 = 4;

/// Some domain from `x` to `y`: rectangles along a sequence of swaps.
pub fn base_domain(g: &GridDiagram, x: &GridState, y: &GridState) -> GridDomain {
    let mut d = GridDomain::zero(x.clone());
    let mut cur = x.clone();
    for a in 0..g.n() {
        if cur[a] != y[a] {
            let b = (0..g.n()).find(|&b| cur[b] == y[a]).expect("states are permutations");
            let r = GridRectangle::new(g, &cur, a, b);
            d = d.compose(&r.domain()).expect("rectangle starts at the current state");
            cur = r.to;
        }
    }
    d
}

fn check_range(g: &GridDiagram, mu_max: i32) -> Result<()> {
    if g.n() > MAX_FLOW_GRID {
        return Err(Error::OutOfRange(format!("domain enumeration on a {0}x{0} grid", g.n())));
    }
    if !(0..=MAX_FLOW_MU).contains(&mu_max) {
        return Err(Error::OutOfRange(format!("maslov bound {mu_max}")));
    }
    Ok(())
}

/// All positive domains from `x` to `y` with `μ ≤ mu_max`, sorted by index
/// and then multiplicities.
///
/// Every domain is `base + Σ r_j Row_j + Σ c_i Col_i`; the relation
/// `Σ Row = Σ Col` is removed by requiring `min c_i = 0`. Each row or column
/// adds 2 to `μ`.
pub fn enumerate_positive_domains(g: &GridDiagram, x: &GridState, y: &GridState, mu_max: i32) -> Result<Vec<GridDomain>> {
    check_range(g, mu_max)?;
    let n = g.n();
    let base = base_domain(g, x, y);
    let mu0 = maslov_index(&base)?;
    // total number of periodic pieces allowed
    let budget = (mu_max - mu0).div_euclid(2) as i64;
    let b = |i: usize, j: usize| base.mult[i * n + j] as i64;
    // with some c_i = 0, the rows alone must cover column i: Σ r_j ≥ -Σ_j b(i,j)
    let slack = (0..n).map(|i| -(0..n).map(|j| b(i, j)).sum::<i64>()).min().unwrap_or(0);
    let c_cap = budget - slack;
    if c_cap < 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for c in bounded_vectors(n, c_cap) {
        if c.iter().copied().min() != Some(0) {
            continue;
        }
        let lower: Vec<i64> = (0..n).map(|j| (0..n).map(|i| -b(i, j) - c[i]).max().unwrap()).collect();
        let used: i64 = c.iter().sum::<i64>() + lower.iter().sum::<i64>();
        if used > budget {
            continue;
        }
        for extra in bounded_vectors(n, budget - used) {
            let mut d = base.clone();
            for i in 0..n {
                d.add_column(i, c[i] as i32);
                d.add_row(i, (lower[i] + extra[i]) as i32);
            }
            out.push(d);
        }
    }
    let mut keyed: Vec<(i32, GridDomain)> =
        out.into_iter().map(|d| (maslov_index(&d).expect("valid domain"), d)).filter(|(m, _)| *m <= mu_max).collect();
    keyed.sort();
    keyed.dedup();
    Ok(keyed.into_iter().map(|(_, d)| d).collect())
}

/// Nonnegative integer vectors of length `n` with sum at most `cap`.
fn bounded_vectors(n: usize, cap: i64) -> Vec<Vec<i64>> {
    fn rec(cur: &mut Vec<i64>, n: usize, cap: i64, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..=cap {
            cur.push(v);
            rec(cur, n, cap - v, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if cap >= 0 {
        rec(&mut Vec::with_capacity(n), n, cap, &mut out);
    }
    out
}
