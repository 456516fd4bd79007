use super::*;
use crate::fan::{degrees_of, product_fan, Fan};
use crate::hilbert::{build_context, chi_structure_sheaf};
use crate::lattice_polyhedra::SupportSet;
use crate::wps::wps_fan;

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

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

struct Fixture {
    fan: Fan,
    supports: Vec<SupportSet>,
}

fn fixtures() -> Vec<Fixture> {
    let p1 = projective(1);
    let p1p1 = product_fan(&p1, &p1);
    let bidegree = |a: i64, b: i64| -> SupportSet { (0..=a).flat_map(|i| (0..=b).map(move |j| vec![i, j])).collect() };
    vec![
        Fixture { fan: p1.clone(), supports: vec![] },
        Fixture { fan: p1.clone(), supports: vec![simplex(1, 3)] },
        Fixture { fan: projective(2), supports: vec![] },
        Fixture { fan: projective(2), supports: vec![simplex(2, 3)] },
        Fixture { fan: projective(2), supports: vec![simplex(2, 1), simplex(2, 2)] },
        Fixture { fan: p1p1.clone(), supports: vec![] },
        Fixture { fan: p1p1.clone(), supports: vec![bidegree(2, 2)] },
        Fixture { fan: projective(3), supports: vec![simplex(3, 2)] },
        Fixture { fan: projective(3), supports: vec![simplex(3, 2), simplex(3, 2)] },
        Fixture { fan: wps_fan(&[1, 1, 2]).unwrap(), supports: vec![] },
    ]
}

#[test]
fn expansion_examples() {
    let e1 = vec![1];
    let p = y_truncated_expand(1, &[Factor::YBinomial { sign: Sign::Plus, d: e1.clone() }], 1).unwrap();
    assert_eq!(p.terms.len(), 2);
    assert_eq!(p.terms[&(vec![1], 1)], big(1));
    let p = y_truncated_expand(1, &[Factor::GeometricInverse { sign: Sign::Plus, d: vec![3] }], 2).unwrap();
    assert_eq!(p.terms[&(vec![0], 0)], big(1));
    assert_eq!(p.terms[&(vec![3], 1)], big(-1));
    assert_eq!(p.terms[&(vec![6], 2)], big(1));
    assert_eq!(p.terms.len(), 3);
    for q in 0..4 {
        let p = y_truncated_expand(
            1,
            &[
                Factor::ScalarBinomial { sign: Sign::Minus, exponent: -1 },
                Factor::ScalarBinomial { sign: Sign::Minus, exponent: 1 },
            ],
            q,
        )
        .unwrap();
        assert_eq!(p, LaurentPolynomialXY::one(1));
    }
}

#[test]
fn linear_form_power_is_a_geometric_series() {
    let terms = vec![(vec![1, 0], big(1)), (vec![0, 1], big(1))];
    let p = y_truncated_expand(2, &[Factor::LinearFormPower { terms }], 2).unwrap();
    assert_eq!(p.terms[&(vec![1, 1], 2)], big(2));
    assert_eq!(p.terms[&(vec![2, 0], 2)], big(1));
    assert_eq!(p.terms.len(), 6);
}

#[test]
fn coefficient_examples() {
    let ctx = build_context(&projective(1)).unwrap();
    assert_eq!(coeff_x0_yp(&ctx, &[], 0).unwrap(), big(1));
    assert_eq!(coeff_x0_yp(&ctx, &alt_factors(1, 2, &vec![]), 1).unwrap(), big(-1));
    let p2 = projective(2);
    let ctx = build_context(&p2).unwrap();
    let d = degrees_of(&p2, &[simplex(2, 3)]).unwrap();
    assert_eq!(coeff_x0_yp(&ctx, &[Factor::XBinomial { d: d[0].clone() }], 0).unwrap(), big(0));
}

#[test]
fn classical_values() {
    let p2 = projective(2);
    let ctx = build_context(&p2).unwrap();
    let d = degrees_of(&p2, &[simplex(2, 3)]).unwrap();
    assert_eq!(chi_alt(&ctx, &d, 1).unwrap(), big(0));
    assert_eq!(chi_alt(&ctx, &vec![], 0).unwrap(), big(1));
    let p3 = projective(3);
    let ctx = build_context(&p3).unwrap();
    let d = degrees_of(&p3, &[simplex(3, 2)]).unwrap();
    assert_eq!(chi_alt(&ctx, &d, 1).unwrap(), big(-2));
    let ctx = build_context(&projective(1)).unwrap();
    assert_eq!(chi_sym(&ctx, &vec![], 2).unwrap(), big(-3));
    // quintic threefold: χ(Ω^1) = -h^{11} + h^{12}
    let p4 = projective(4);
    let ctx = build_context(&p4).unwrap();
    let d = degrees_of(&p4, &[simplex(4, 5)]).unwrap();
    assert_eq!(chi_alt(&ctx, &d, 1).unwrap(), big(100));
}

#[test]
fn form_type_identities() {
    for f in fixtures() {
        let ctx = build_context(&f.fan).unwrap();
        let d = degrees_of(&f.fan, &f.supports).unwrap();
        let o = chi_structure_sheaf(&ctx, &d).unwrap();
        assert_eq!(chi_alt(&ctx, &d, 0).unwrap(), o);
        assert_eq!(chi_sym(&ctx, &d, 0).unwrap(), o);
        assert_eq!(chi_tensor(&ctx, &d, 0).unwrap(), o);
        let a1 = chi_alt(&ctx, &d, 1).unwrap();
        assert_eq!(chi_sym(&ctx, &d, 1).unwrap(), a1);
        assert_eq!(chi_tensor(&ctx, &d, 1).unwrap(), a1);
        let a2 = chi_alt(&ctx, &d, 2).unwrap();
        let s2 = chi_sym(&ctx, &d, 2).unwrap();
        assert_eq!(chi_tensor(&ctx, &d, 2).unwrap(), a2 + s2);
    }
}

#[test]
fn direct_sum_matches_the_series() {
    for f in fixtures() {
        let ctx = build_context(&f.fan).unwrap();
        let d = degrees_of(&f.fan, &f.supports).unwrap();
        for p in 0..=f.fan.dim + 1 {
            assert_eq!(chi_alt_hilbert(&ctx, &d, p).unwrap(), chi_alt(&ctx, &d, p).unwrap());
        }
    }
}

#[test]
fn unit_weight_sum_needs_one_extra_ray() {
    let p2 = projective(2);
    let ctx = build_context(&p2).unwrap();
    let d = degrees_of(&p2, &[simplex(2, 3)]).unwrap();
    for p in 0..=3 {
        assert_eq!(chi_alt_hilbert_unit_weight(&ctx, &d, p).unwrap(), chi_alt(&ctx, &d, p).unwrap());
    }
    let p1 = projective(1);
    let ctx = build_context(&product_fan(&p1, &p1)).unwrap();
    assert_eq!(chi_alt(&ctx, &vec![], 1).unwrap(), big(-2));
    assert_eq!(chi_alt_hilbert_unit_weight(&ctx, &vec![], 1).unwrap(), big(-1));
}

#[test]
fn forms_vanish_above_the_dimension() {
    for f in fixtures() {
        let ctx = build_context(&f.fan).unwrap();
        let d = degrees_of(&f.fan, &f.supports).unwrap();
        let n = f.fan.dim - f.supports.len();
        for p in n + 1..=f.fan.dim {
            assert_eq!(chi_alt(&ctx, &d, p).unwrap(), big(0));
        }
    }
}

#[test]
fn euler_number_of_smooth_toric_varieties() {
    let p1 = projective(1);
    for fan in [p1.clone(), projective(2), projective(3), product_fan(&p1, &p1), product_fan(&projective(2), &p1)] {
        let ctx = build_context(&fan).unwrap();
        assert_eq!(alt_euler_sum(&ctx, &vec![], fan.dim).unwrap(), big(fan.maximal_cones.len() as i64));
    }
}

#[test]
fn non_simplicial_fan_is_refused() {
    let pts = vec![vec![1, 0, 0], vec![-1, 0, 0], vec![0, 1, 0], vec![0, -1, 0], vec![0, 0, 1], vec![0, 0, -1]];
    let fan = crate::lattice_polyhedra::normal_fan(&crate::lattice_polyhedra::convex_hull(&pts).unwrap(), 3).unwrap();
    let ctx = build_context(&fan).unwrap();
    assert!(matches!(chi_alt(&ctx, &vec![], 1), Err(Error::Precondition(_))));
}
