use super::*;
use crate::lattice_polyhedra::{convex_hull, normal_fan};

fn projective_plane() -> Fan {
    Fan {
        dim: 2,
        rays: vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
        maximal_cones: vec![vec![0, 1], vec![0, 2], vec![1, 2]],
    }
}

fn p1xp1() -> Fan {
    Fan {
        dim: 2,
        rays: vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
        maximal_cones: vec![vec![0, 1], vec![0, 3], vec![1, 2], vec![2, 3]],
    }
}

fn octahedron_normal_fan() -> Fan {
    let pts = vec![vec![1, 0, 0], vec![-1, 0, 0], vec![0, 1, 0], vec![0, -1, 0], vec![0, 0, 1], vec![0, 0, -1]];
    normal_fan(&convex_hull(&pts).unwrap(), 3).unwrap()
}

#[test]
fn projective_plane_is_a_complete_regular_fan() {
    let f = projective_plane();
    assert!(validate(&f).passed());
    assert!(is_complete(&f));
    assert!(is_simplicial(&f));
    assert!(is_regular(&f));
    assert_eq!(f.all_cones().len(), 7);
}

#[test]
fn weighted_plane_is_simplicial_not_regular() {
    let f = Fan {
        dim: 2,
        rays: vec![vec![1, 0], vec![0, 1], vec![-1, -2]],
        maximal_cones: vec![vec![0, 1], vec![0, 2], vec![1, 2]],
    };
    assert!(validate(&f).passed());
    assert!(is_complete(&f));
    assert!(is_simplicial(&f));
    assert!(!is_regular(&f));
}

#[test]
fn overlapping_cones_are_rejected() {
    let f = Fan { dim: 2, rays: vec![vec![1, 0], vec![0, 1], vec![1, 1]], maximal_cones: vec![vec![0, 1], vec![0, 2]] };
    assert!(!validate(&f).passed());
}

#[test]
fn malformed_rays_are_rejected() {
    let mut f = projective_plane();
    f.rays[0] = vec![2, 0];
    assert!(!validate(&f).passed());
    let mut f = projective_plane();
    f.rays[0] = vec![0, 0];
    assert!(!validate(&f).passed());
    let mut f = projective_plane();
    f.maximal_cones[0] = vec![0, 5];
    assert!(!validate(&f).passed());
    let mut f = projective_plane();
    f.rays.push(vec![1, 1]);
    assert!(!validate(&f).passed());
}

#[test]
fn non_pointed_cone_is_rejected() {
    let f = Fan { dim: 1, rays: vec![vec![1], vec![-1]], maximal_cones: vec![vec![0, 1]] };
    assert!(!validate(&f).passed());
}

#[test]
fn incomplete_fan_is_detected() {
    let mut f = projective_plane();
    f.maximal_cones.pop();
    assert!(validate(&f).passed());
    assert!(!is_complete(&f));
}

#[test]
fn octahedron_fan_refines_to_simplicial() {
    let f = octahedron_normal_fan();
    assert!(validate(&f).passed());
    assert!(is_complete(&f));
    assert!(!is_simplicial(&f));
    assert_eq!(f.maximal_cones.len(), 6);
    assert!(f.maximal_cones.iter().all(|c| c.len() == 4));
    let g = stellar_subdivide_to_simplicial(&f).unwrap();
    assert!(validate(&g).passed());
    assert!(is_complete(&g));
    assert!(is_simplicial(&g));
    assert_eq!(g.rays.len(), 14);
    assert_eq!(g.maximal_cones.len(), 24);
    // every face of a refined cone sits in a cone of the original fan
    assert_eq!(&g.rays[..8], &f.rays[..]);
}

#[test]
fn simplicial_fan_is_left_alone() {
    let f = projective_plane();
    assert_eq!(stellar_subdivide_to_simplicial(&f).unwrap(), f);
}

#[test]
fn faces_of_a_square_cone() {
    let f = octahedron_normal_fan();
    let c = f.maximal_cones[0].clone();
    assert_eq!(f.cone_facets(&c).len(), 4);
    // zero cone, 4 rays, 4 two-dimensional faces, the cone
    assert_eq!(f.cone_faces(&c).len(), 10);
    // 1 + 8 + 12 + 6
    assert_eq!(f.all_cones().len(), 27);
}

#[test]
fn degrees_of_a_line_in_the_plane() {
    let f = projective_plane();
    let supp = vec![vec![vec![0, 0], vec![1, 0], vec![0, 1]]];
    assert_eq!(degrees_of(&f, &supp).unwrap(), vec![vec![0, 0, 1]]);
    let a = adapted_subfan(&f, &supp).unwrap();
    assert!(a.fully_adapted);
    assert_eq!(a.subfan.len(), 7);
    let d = degrees_of(&f, &supp).unwrap();
    assert_eq!(restrict_supports(&f, &[0, 1], &supp, &d), vec![vec![vec![0, 0]]]);
    assert_eq!(restrict_supports(&f, &[0], &supp, &d), vec![vec![vec![0, 0], vec![0, 1]]]);
}

#[test]
fn diagonal_segment_is_not_adapted_to_the_plane_fan() {
    let f = projective_plane();
    let supp = vec![vec![vec![0, 0], vec![1, 1]]];
    let a = adapted_subfan(&f, &supp).unwrap();
    assert!(!a.fully_adapted);
    assert!(a.cones.iter().any(|(c, ok)| c == &vec![0, 1] && *ok));
    assert!(a.cones.iter().any(|(c, ok)| c == &vec![0, 2] && !*ok));
    assert!(a.cones.iter().filter(|(c, _)| c.len() <= 1).all(|(_, ok)| *ok));
}

#[test]
fn segment_fan_refines_its_own_supports() {
    let f = p1xp1();
    let supp = vec![vec![vec![0, 0], vec![1, 0]], vec![vec![0, 0], vec![0, 1]]];
    assert!(adapted_subfan(&f, &supp).unwrap().fully_adapted);
}

#[test]
fn orbit_problem_drops_vanishing_equations() {
    let f = projective_plane();
    let supp = vec![vec![vec![0, 0], vec![1, 1]]];
    let d = degrees_of(&f, &supp).unwrap();
    let p = orbit_problem(&f, &[0, 2], &supp, &d).unwrap();
    assert_eq!(p.m, 0);
    assert!(p.supports.is_empty());
}
