mod common;

use common::{all_lines, random_nspace, space};
use hermicode_core::hermitian::HermitianSpace;
use hermicode_core::projspace::Subspace;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn same_meet_dims(h: &HermitianSpace, g: &Subspace, pi: &Subspace) -> bool {
    let a = h.pg().meet(g, pi).unwrap();
    let b = h.pg().meet(g, &h.perp(pi)).unwrap();
    a.proj_dim() == b.proj_dim()
}

#[test]
fn generator_meets_both_sides_equally_h34_exhaustive() {
    let h = space(4, 1);
    let lines = all_lines(&h);
    assert_eq!(lines.len(), 357);
    for pi in &lines {
        for g in h.generators() {
            assert!(same_meet_dims(&h, &g.space, pi));
        }
    }
}

#[test]
fn generator_meets_both_sides_equally_h54_sampled() {
    let h = space(4, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10_000 {
        let g = &h.generators()[rng.gen_range(0..h.generators().len())];
        let pi = random_nspace(&h, &mut rng);
        assert!(same_meet_dims(&h, &g.space, &pi));
    }
}

fn check_vertex(h: &HermitianSpace, pi: &Subspace) {
    let s = h.section_shape(pi).unwrap();
    let perp = h.perp(pi);
    let t = h.section_shape(&perp).unwrap();
    assert_eq!(s.vertex, t.vertex);
    assert_eq!(s.vertex, h.pg().meet(pi, &perp).unwrap());
    assert_eq!(h.perp(&perp), *pi);
}

#[test]
fn vertex_is_shared_with_polar() {
    let h = space(4, 1);
    for pi in all_lines(&h) {
        check_vertex(&h, &pi);
    }
    let h = space(4, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..500 {
        check_vertex(&h, &random_nspace(&h, &mut rng));
    }
    for i in -1..=2 {
        check_vertex(&h, &h.make_nspace(i).unwrap());
    }
}

/// Every variety point of `π∖π_i` is collinear on the variety with every
/// variety point of `π^σ∖π_i`.
fn check_collinear(h: &HermitianSpace, pi: &Subspace) -> usize {
    let perp = h.perp(pi);
    let vertex = h.pg().meet(pi, &perp).unwrap();
    let side = |s: &Subspace| -> Vec<u32> {
        h.variety_points_in(s).into_iter().filter(|&x| !h.pg().contains(&vertex, h.point(x as usize))).collect()
    };
    let (a, b) = (side(pi), side(&perp));
    for &x in &a {
        for &y in &b {
            let (p, p2) = (h.point(x as usize), h.point(y as usize));
            assert!(h.is_variety_line(p, p2).unwrap());
            // and every point of the joining line is on the variety
            let line = h.pg().span_of_points(&[p, p2]).unwrap();
            assert_eq!(h.variety_points_in(&line).len() as u128, h.pg().subspace_point_count(&line));
        }
    }
    a.len() * b.len()
}

#[test]
fn collinearity_exhaustive_q2() {
    let h = space(4, 1);
    let mut pairs = 0;
    for pi in all_lines(&h) {
        pairs += check_collinear(&h, &pi);
    }
    assert!(pairs > 0);
    let h = space(4, 2);
    for i in [-1, 0] {
        assert!(check_collinear(&h, &h.make_nspace(i).unwrap()) > 0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..200 {
        check_collinear(&h, &random_nspace(&h, &mut rng));
    }
}
