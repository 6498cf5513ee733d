mod common;

use flowknot::grid::*;
use flowknot::Error;
use rand::Rng;

fn grid(x: &[usize], o: &[usize]) -> GridDiagram {
    GridDiagram::new(x.to_vec(), o.to_vec()).unwrap()
}

fn trefoil() -> GridDiagram {
    parse_grid("5\nX: 0 1 2 3 4\nO: 2 3 4 0 1\n").unwrap()
}

fn unknot2() -> GridDiagram {
    grid(&[0, 1], &[1, 0])
}

fn unknot3() -> GridDiagram {
    grid(&[0, 1, 2], &[1, 2, 0])
}

#[test]
fn oracle_ranks_come_first() {
    assert_eq!(common::brute_tilde_rank(&[0, 1], &[1, 0]), (2, true));
    assert_eq!(common::brute_tilde_rank(&[0, 1, 2], &[1, 2, 0]), (4, true));
    assert_eq!(common::brute_tilde_rank(&[0, 1, 2, 3, 4], &[2, 3, 4, 0, 1]), (48, true));
}

#[test]
fn parse_examples() {
    assert_eq!(trefoil().n(), 5);
    assert_eq!(parse_grid("2\nX: 0 1\nO: 1 0").unwrap(), unknot2());
    assert!(matches!(parse_grid("3\nX: 0 1 2\nO: 0 1 2"), Err(Error::InvalidGrid(_))));
}

#[test]
fn state_counts() {
    assert_eq!(enumerate_states(&unknot2()).len(), 2);
    assert_eq!(enumerate_states(&unknot3()).len(), 6);
    let states = enumerate_states(&trefoil());
    assert_eq!(states.len(), 120);
    assert!(states.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn shaded_square_is_a_rectangle() {
    let g = trefoil();
    let x = vec![3, 4, 1, 2, 0];
    let y = vec![3, 4, 2, 1, 0];
    let rs = rectangles(&g, &x, &y);
    assert_eq!(rs.len(), 2);
    let square = rs.iter().find(|r| r.width() == 1 && r.height() == 1).expect("small square");
    assert!(square.contains_square(2, 1));
    assert!(square.is_tilde());
}

#[test]
fn rectangle_counts_and_tiling() {
    let g = trefoil();
    let states = enumerate_states(&g);
    for x in &states {
        assert!(rectangles(&g, x, x).is_empty());
        for y in &states {
            let diff = (0..5).filter(|&i| x[i] != y[i]).count();
            let rs = rectangles(&g, x, y);
            if diff != 2 {
                assert!(rs.is_empty());
                continue;
            }
            assert_eq!(rs.len(), 2);
            let back = rectangles(&g, y, x);
            let mut sum = vec![0; 25];
            for r in rs.iter().chain(&back) {
                assert_eq!(&r.from, if rs.contains(r) { x } else { y });
                for (s, m) in sum.iter_mut().zip(r.domain().mult) {
                    *s += m;
                }
            }
            assert!(sum.iter().all(|&s| s == 1), "{x:?} {y:?}");
        }
    }
}

#[test]
fn maslov_index_examples() {
    let g = trefoil();
    let x = vec![0, 1, 2, 3, 4];
    let empty = GridRectangle::new(&g, &x, 0, 1);
    assert!(empty.is_empty());
    assert_eq!(maslov_index(&empty.domain()).unwrap(), 1);
    let marked = GridRectangle::new(&g, &x, 0, 2);
    assert_eq!(marked.interior_points, 1);
    assert_eq!(maslov_index(&marked.domain()).unwrap(), 3);

    // L-shape: two rectangles meeting along a corner region
    let g7 = grid(&[0, 1, 2, 3, 4, 5, 6], &[1, 2, 3, 4, 5, 6, 0]);
    let x = vec![0, 5, 4, 6, 2, 1, 3];
    let r1 = GridRectangle::new(&g7, &x, 0, 4);
    let r2 = GridRectangle::new(&g7, &r1.to, 0, 2);
    assert!(r1.is_empty() && r2.is_empty());
    let l = r1.domain().compose(&r2.domain()).unwrap();
    assert_eq!(l.y, vec![4, 5, 2, 6, 0, 1, 3]);
    let rebuilt = GridDomain::new(l.x.clone(), l.y.clone(), l.mult.clone()).unwrap();
    assert_eq!(maslov_index(&rebuilt).unwrap(), 2);

    let mut annulus = GridDomain::zero(vec![0, 1, 2, 3, 4]);
    annulus.add_column(3, 1);
    assert_eq!(maslov_index(&annulus).unwrap(), 2);
}

#[test]
fn adding_rows_and_columns_raises_index_by_two() {
    let g = unknot3();
    for x in enumerate_states(&g) {
        for r in rectangles_from(&g, &x) {
            let d = r.domain();
            let mu = maslov_index(&d).unwrap();
            for k in 0..3 {
                let mut row = d.clone();
                row.add_row(k, 1);
                assert!(row.boundary_ok());
                assert_eq!(maslov_index(&row).unwrap(), mu + 2);
                let mut col = d.clone();
                col.add_column(k, 1);
                assert_eq!(maslov_index(&col).unwrap(), mu + 2);
                let (o, xm) = row.markings(&g);
                let (o0, x0) = d.markings(&g);
                assert_eq!((mu + 2 - 2 * o, xm - o), (mu - 2 * o0, x0 - o0));
            }
        }
    }
}

#[test]
fn rectangle_gradings_agree_with_domains() {
    let g = trefoil();
    let gr = relative_gradings(&g).unwrap();
    assert_eq!(gr[0], (0, 0));
    for x in enumerate_states(&g) {
        for r in rectangles_from(&g, &x) {
            let d = r.domain();
            let (o, xm) = d.markings(&g);
            let mu = maslov_index(&d).unwrap();
            assert_eq!(rectangle_grading_drop(&r), (mu - 2 * o, xm - o));
            let (a, b) = (gr[state_rank(&r.from)], gr[state_rank(&r.to)]);
            assert_eq!((a.0 - b.0, a.1 - b.1), (mu - 2 * o, xm - o));
            if r.is_tilde() {
                assert_eq!((a.0 - b.0, a.1 - b.1), (1, 0));
            }
        }
    }
}

#[test]
fn tilde_ranks_match_oracle() {
    for (g, rank) in [(unknot2(), 2), (unknot3(), 4), (trefoil(), 48)] {
        for coeff in [Coefficients::Gf2, Coefficients::Int] {
            let h = grid_homology(&g, coeff).unwrap();
            assert_eq!(h.total_rank(), rank, "{g} {coeff:?}");
        }
    }
}

#[test]
fn d_squared_vanishes_on_all_small_grids() {
    for n in 2..=4 {
        for (x, o) in common::all_grids(n) {
            let g = grid(&x, &o);
            let c = tilde_differential(&g, Coefficients::Gf2, None).unwrap();
            assert!(c.verify_d_squared(), "{g}");
            let s = solve_sign_assignment(&g, SignScope::Empty).unwrap();
            let c = tilde_differential(&g, Coefficients::Int, Some(&s)).unwrap();
            assert!(c.verify_d_squared(), "{g}");
            let (rank, square_zero) = common::brute_tilde_rank(&x, &o);
            assert!(square_zero);
            let h = c.homology().unwrap();
            assert_eq!(h.total_rank(), rank, "{g}");
            assert!(!h.has_torsion(), "{g}");
        }
    }
}

#[test]
fn signs_from_marking_free_domains_alone_can_leave_torsion() {
    let g = grid(&[0, 1, 2, 3], &[1, 0, 3, 2]);
    let partial = solve_sign_assignment(&g, SignScope::Tilde).unwrap();
    let c = tilde_differential(&g, Coefficients::Int, Some(&partial)).unwrap();
    assert!(c.verify_d_squared());
    assert!(c.homology().unwrap().has_torsion());
    assert_eq!(grid_homology(&g, Coefficients::Int).unwrap().total_rank(), 8);
}

#[test]
fn two_by_two_signs_are_unconstrained() {
    let s = solve_sign_assignment(&unknot2(), SignScope::Tilde).unwrap();
    assert_eq!(s.constraints(), 0);
}

#[test]
fn every_empty_rectangle_signs_on_three_by_three() {
    for (x, o) in common::all_grids(3) {
        let g = grid(&x, &o);
        let s = solve_sign_assignment(&g, SignScope::Empty).unwrap();
        assert!(sign_violations(&g, &s).is_empty());
        let c = tilde_differential(&g, Coefficients::Int, Some(&s)).unwrap();
        assert!(c.verify_d_squared());
    }
}

#[test]
fn flipped_sign_breaks_d_squared() {
    let g = trefoil();
    let signs = solve_sign_assignment(&g, SignScope::Empty).unwrap();
    let r = enumerate_states(&g)
        .iter()
        .flat_map(|x| rectangles_from(&g, x))
        .filter(GridRectangle::is_tilde)
        .find(|r| rectangles_from(&g, &r.to).iter().any(GridRectangle::is_tilde))
        .expect("a rectangle followed by another");
    let mut bad = signs.clone();
    bad.flip(&r);
    assert!(!sign_violations(&g, &bad).is_empty());
    let c = tilde_differential(&g, Coefficients::Int, Some(&bad)).unwrap();
    assert!(!c.verify_d_squared());
}

#[test]
fn rank_is_invariant_under_torus_symmetries() {
    let mut rng = common::rng();
    let mut grids = vec![trefoil(), unknot3()];
    let all4 = common::all_grids(4);
    for _ in 0..6 {
        let (x, o) = &all4[rng.gen_range(0..all4.len())];
        grids.push(grid(x, o));
    }
    for g in grids {
        let base = grid_homology(&g, Coefficients::Gf2).unwrap().total_rank();
        assert_eq!(grid_homology(&g.transpose(), Coefficients::Gf2).unwrap().total_rank(), base);
        for _ in 0..3 {
            let (dc, dr) = (rng.gen_range(0..g.n()), rng.gen_range(0..g.n()));
            let h = grid_homology(&g.shift(dc, dr), Coefficients::Gf2).unwrap();
            assert_eq!(h.total_rank(), base);
        }
    }
}

#[test]
fn alexander_split_preserves_total_rank() {
    let g = trefoil();
    let c = tilde_differential(&g, Coefficients::Gf2, None).unwrap();
    let split: usize = c.bigraded_homology().unwrap().iter().map(|(_, _, h)| h.betti).sum();
    assert_eq!(split, 48);
}
