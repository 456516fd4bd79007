use super::*;
use crate::fan::product_fan;
use crate::wps::wps_fan;
use proptest::prelude::*;

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

fn table(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| big(x)).collect()).collect()
}

fn projective(m: usize) -> Fan {
    wps_fan(&vec![1; m + 1]).unwrap()
}

fn simplex(m: usize, d: i64) -> SupportSet {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                let used: i64 = v.iter().sum();
                (0..=d - used).map(move |a| {
                    let mut w = v.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out
}

fn torus(m: usize, supports: Vec<SupportSet>) -> EpqTable {
    epq_c_ci(&TorusCIProblem::new(m, supports)).unwrap()
}

#[test]
fn tori() {
    assert_eq!(epq_torus(0, Mode::Ordinary).rows(), table(&[&[1]]));
    assert_eq!(epq_torus(0, Mode::Compact).rows(), table(&[&[1]]));
    assert_eq!(epq_torus(1, Mode::Ordinary).rows(), table(&[&[1, 0], &[0, -1]]));
    assert_eq!(epq_torus(2, Mode::Compact).rows(), table(&[&[1, 0, 0], &[0, -2, 0], &[0, 0, 1]]));
}

#[test]
fn small_torus_intersections() {
    assert_eq!(torus(2, vec![simplex(2, 1)]).rows(), table(&[&[-2, 0], &[0, 1]]));
    assert_eq!(torus(1, vec![vec![vec![0], vec![1]]]).rows(), table(&[&[1]]));
    assert_eq!(torus(2, vec![vec![vec![0, 0], vec![1, 0]]]).rows(), table(&[&[-1, 0], &[0, 1]]));
    // three points on the line: two roots
    assert_eq!(torus(1, vec![vec![vec![0], vec![1], vec![2]]]).rows(), table(&[&[2]]));
    // a singleton support never vanishes
    assert!(torus(2, vec![vec![vec![1, 1]]]).is_zero());
    // generically overdetermined
    assert!(torus(1, vec![simplex(1, 2), simplex(1, 2)]).is_zero());
}

#[test]
fn plane_cubic_minus_nine_points() {
    assert_eq!(torus(2, vec![simplex(2, 3)]).rows(), table(&[&[-8, -1], &[-1, 1]]));
}

#[test]
fn two_lines_in_the_plane_meet_once() {
    assert_eq!(torus(2, vec![simplex(2, 1), simplex(2, 1)]).rows(), table(&[&[1]]));
    // line and conic
    assert_eq!(torus(2, vec![simplex(2, 1), simplex(2, 2)]).rows(), table(&[&[2]]));
}

#[test]
fn hypersurface_euler_numbers_are_normalized_volumes() {
    // χ(Y*) = (-1)^{m-1} m! vol(Δ)
    let cases: Vec<(usize, SupportSet, i64)> = vec![
        (2, simplex(2, 3), -9),
        (2, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]], -2),
        (3, simplex(3, 2), 8),
        (3, simplex(3, 1), 1),
    ];
    for (m, s, chi) in cases {
        assert_eq!(torus(m, vec![s]).total(), big(chi));
    }
}

#[test]
fn compact_hodge_numbers() {
    let t = hodge_compact(&projective(2), &[simplex(2, 3)]).unwrap();
    assert_eq!(t.rows(), table(&[&[1, 1], &[1, 1]]));
    let t = hodge_compact(&projective(3), &[simplex(3, 2)]).unwrap();
    assert_eq!(t.rows(), table(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 1]]));
    let t = hodge_compact(&projective(3), &[simplex(3, 4)]).unwrap();
    assert_eq!(t.get(1, 1), big(20));
    assert_eq!(t.get(2, 0), big(1));
    assert_eq!(t.get(1, 0), big(0));
}

#[test]
fn blown_up_plane_in_a_product() {
    let fan = product_fan(&projective(2), &projective(1));
    let t = hodge_compact(&fan, &[vec![vec![1, 0, 0], vec![0, 1, 1]]]).unwrap();
    assert_eq!(t.rows(), table(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 1]]));
}

#[test]
fn graph_of_a_quadric_map() {
    let fan = product_fan(&projective(3), &projective(1));
    let quadric = vec![vec![0, 0, 0, 0], vec![2, 0, 0, 0], vec![0, 2, 0, 0], vec![0, 0, 2, 0]];
    let linear = vec![vec![1, 0, 0, 0], vec![0, 1, 0, 1]];
    let t = hodge_compact(&fan, &[quadric, linear]).unwrap();
    assert_eq!(t.rows(), table(&[&[1, 0, 0], &[0, 4, 0], &[0, 0, 1]]));
}

#[test]
fn no_equations_gives_diagonal_tables() {
    let p1 = projective(1);
    for fan in [projective(2), product_fan(&p1, &p1), wps_fan(&[1, 1, 2]).unwrap(), projective(3)] {
        let t = hodge_compact(&fan, &[]).unwrap();
        for p in 0..=t.n {
            for q in 0..=t.n {
                if p != q {
                    assert!(t.get(p, q).is_zero());
                }
            }
        }
        assert_eq!(t.total(), big(fan.maximal_cones.len() as i64));
    }
}

#[test]
fn too_many_vanishing_equations_are_refused() {
    // both diagonal segments lose their face on the cone spanned by e_1 and -e_1-e_2
    let seg = vec![vec![0, 0], vec![1, 1]];
    let r = hodge_compact(&projective(2), &[seg.clone(), seg]);
    assert!(matches!(r, Err(Error::Precondition(_))));
}

#[test]
fn one_dropped_equation_on_a_surface_cone_is_accepted() {
    // a single diagonal segment cuts out a smooth conic in the plane
    let r = hodge_compact(&projective(2), &[vec![vec![0, 0], vec![1, 1]]]).unwrap();
    assert_eq!(r.rows(), table(&[&[1, 0], &[0, 1]]));
}

#[test]
fn memo_clearing_is_harmless() {
    let engine = DkEngine::new();
    let p = TorusCIProblem::new(2, vec![simplex(2, 3)]);
    let a = engine.epq_c_ci(&p).unwrap();
    assert!(engine.memo_len() > 1);
    engine.clear_memo();
    assert_eq!(engine.epq_c_ci(&p).unwrap(), a);
}

#[test]
fn diamond_rendering() {
    let t = EpqTable::from_rows(table(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 1]]), TableKind::Hodge).unwrap();
    assert_eq!(t.to_string(), "  1\n 0 0\n0 2 0\n 0 0\n  1\n");
    let t = EpqTable::from_rows(table(&[&[-2, 0], &[0, 1]]), TableKind::Compact).unwrap();
    assert_eq!(t.to_string(), "-2  0\n 0  1\n");
}

fn unimodular(seed: &[i64]) -> Vec<Vec<i64>> {
    // product of elementary matrices
    let mut a = vec![vec![1, 0], vec![0, 1]];
    for (i, &c) in seed.iter().enumerate() {
        let (r, s) = if i % 2 == 0 { (0, 1) } else { (1, 0) };
        for col in 0..2 {
            a[r][col] += c * a[s][col];
        }
    }
    a
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn invariant_under_lattice_automorphisms(
        seed in proptest::collection::vec(-2i64..=2, 3),
        shift in proptest::collection::vec(-3i64..=3, 2),
        which in 0usize..3,
    ) {
        let fixtures = [
            vec![simplex(2, 1)],
            vec![simplex(2, 2)],
            vec![vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]], simplex(2, 1)],
        ];
        let supports = fixtures[which].clone();
        let a = unimodular(&seed);
        let moved: Vec<SupportSet> = supports
            .iter()
            .enumerate()
            .map(|(i, s)| {
                s.iter()
                    .map(|q| {
                        let t = if i == 0 { &shift[..] } else { &[0, 0][..] };
                        (0..2).map(|r| a[r][0] * q[0] + a[r][1] * q[1] + t[r]).collect()
                    })
                    .collect()
            })
            .collect();
        let mut rev = moved.clone();
        rev.reverse();
        let base = torus(2, supports);
        prop_assert_eq!(torus(2, moved), base.clone());
        prop_assert_eq!(torus(2, rev), base);
    }
}
