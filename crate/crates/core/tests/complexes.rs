use flowknot::complexes::{smith_normal_form, GradedChainComplex};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

/// Determinant by cofactor expansion; only used on matrices up to 4x4.
fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| *v).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors from determinantal divisors: D_k = gcd of all k×k
/// minors, and d_k = D_k / D_{k-1}. Independent of any elimination.
fn oracle_invariant_factors(m: &[Vec<i64>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = 1i64;
    let mut out = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut g = 0i64;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i64>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
                g = g.gcd(&det(&minor));
            }
        }
        if g == 0 {
            break;
        }
        out.push(BigInt::from(g / prev));
        prev = g;
    }
    out
}

fn matrix(rows: usize, cols: usize, range: std::ops::RangeInclusive<i64>) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(range, cols), rows)
}

/// Random unimodular matrix as a product of elementary operations.
fn unimodular(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec((0..n, 0..n, -2i64..=2, any::<bool>()), 0..12).prop_map(move |ops| {
        let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        for (i, j, k, swap) in ops {
            if swap {
                u.swap(i, j);
            } else if i != j {
                for c in 0..n {
                    u[i][c] += k * u[j][c];
                }
            }
        }
        u
    })
}

fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|r| (0..cols).map(|c| (0..inner).map(|k| r[k] * b[k][c]).sum()).collect())
        .collect()
}

#[test]
fn oracle_agrees_on_fixed_examples() {
    let m = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
    assert_eq!(oracle_invariant_factors(&m), vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    assert_eq!(smith_normal_form(&m), oracle_invariant_factors(&m));
}

proptest! {
    #[test]
    fn snf_matches_determinantal_divisors(m in matrix(4, 4, -3..=3)) {
        prop_assert_eq!(smith_normal_form(&m), oracle_invariant_factors(&m));
    }

    #[test]
    fn snf_matches_oracle_on_rectangular(m in matrix(3, 5, -4..=4)) {
        prop_assert_eq!(smith_normal_form(&m), oracle_invariant_factors(&m));
    }

    #[test]
    fn snf_is_unimodular_invariant(m in matrix(4, 3, -3..=3), p in unimodular(4), q in unimodular(3)) {
        let pmq = mul(&mul(&p, &m), &q);
        prop_assert_eq!(smith_normal_form(&pmq), smith_normal_form(&m));
    }

    #[test]
    fn divisor_chain_holds(m in matrix(5, 5, -6..=6)) {
        let d = smith_normal_form(&m);
        for w in d.windows(2) {
            prop_assert!((&w[1] % &w[0]) == BigInt::from(0));
        }
    }
}

/// Chain complex C_2 → C_1 → C_0 built as ∂_2 = A, ∂_1 = B with BA = 0 by
/// taking A's columns in the kernel of B.
fn complex_from(b: &[Vec<i64>], a: &[Vec<i64>]) -> GradedChainComplex {
    let mut c = GradedChainComplex::new();
    let n0 = b.len();
    let n1 = a.len();
    let n2 = a.first().map_or(0, Vec::len);
    for i in 0..n0 {
        c.add_generator(format!("z{i}"), 0).unwrap();
    }
    for i in 0..n1 {
        c.add_generator(format!("o{i}"), 1).unwrap();
    }
    for i in 0..n2 {
        c.add_generator(format!("t{i}"), 2).unwrap();
    }
    for j in 0..n1 {
        for i in 0..n0 {
            c.add_term_by_id(&format!("o{j}"), &format!("z{i}"), b[i][j]).unwrap();
        }
    }
    for j in 0..n2 {
        for i in 0..n1 {
            c.add_term_by_id(&format!("t{j}"), &format!("o{i}"), a[i][j]).unwrap();
        }
    }
    c
}

proptest! {
    #[test]
    fn homology_is_basis_independent(
        x in matrix(3, 2, -3..=3),
        u in unimodular(3),
    ) {
        // ∂_1 = [1 1 1]; columns of ∂_2 sum to zero so ∂_1 ∂_2 = 0
        let b = vec![vec![1, 1, 1]];
        let a: Vec<Vec<i64>> = vec![
            vec![x[0][0], x[0][1]],
            vec![x[1][0], x[1][1]],
            vec![-x[0][0] - x[1][0], -x[0][1] - x[1][1]],
        ];
        let c = complex_from(&b, &a);
        prop_assert!(c.verify_d_squared());
        let h = c.homology().unwrap();
        prop_assert_eq!(h.euler_characteristic(), c.euler_characteristic());

        // new basis of C_1 given by the columns of u
        let adj = inverse_unimodular(&u);
        let b2 = mul(&b, &u);
        let a2 = mul(&adj, &a);
        let c2 = complex_from(&b2, &a2);
        prop_assert!(c2.verify_d_squared());
        prop_assert_eq!(c2.homology().unwrap(), h.clone());

        // and a shear on C_2
        let a3 = mul(&a, &vec![vec![1, 1], vec![0, 1]]);
        prop_assert_eq!(complex_from(&b, &a3).homology().unwrap(), h);
    }
}

fn inverse_unimodular(u: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = u.len();
    let d = det(u);
    assert!(d == 1 || d == -1);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    // inverse[i][j] = cofactor(j, i) / det
                    let minor: Vec<Vec<i64>> = u
                        .iter()
                        .enumerate()
                        .filter(|(r, _)| *r != j)
                        .map(|(_, r)| r.iter().enumerate().filter(|(c, _)| *c != i).map(|(_, v)| *v).collect())
                        .collect();
                    let s = if (i + j) % 2 == 0 { 1 } else { -1 };
                    s * det(&minor) * d
                })
                .collect()
        })
        .collect()
}
