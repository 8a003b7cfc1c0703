#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use hermicode_core::gf::{FieldCtx, FieldElement};
use hermicode_core::hermitian::HermitianSpace;
use hermicode_core::projspace::Subspace;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn space(q2: u32, n: usize) -> HermitianSpace {
    HermitianSpace::new(Arc::new(FieldCtx::from_order(q2).unwrap()), n).unwrap()
}

pub fn random_subspace(h: &HermitianSpace, rank: usize, rng: &mut ChaCha8Rng) -> Subspace {
    let f = h.field();
    let ncols = h.pg().ncols();
    loop {
        let rows: Vec<Vec<FieldElement>> = (0..rank)
            .map(|_| (0..ncols).map(|_| f.element(rng.gen_range(0..f.order())).unwrap()).collect())
            .collect();
        let s = h.pg().span_of_vectors(rows.iter().map(|r| r.as_slice())).unwrap();
        if s.rank() == rank {
            return s;
        }
    }
}

pub fn random_nspace(h: &HermitianSpace, rng: &mut ChaCha8Rng) -> Subspace {
    random_subspace(h, h.n() + 1, rng)
}

/// Every line of the ambient space, from spans of point pairs.
pub fn all_lines(h: &HermitianSpace) -> Vec<Subspace> {
    let pts = h.pg().enumerate_points(1 << 20).unwrap();
    let mut seen = BTreeSet::new();
    for a in 0..pts.len() {
        for b in a + 1..pts.len() {
            seen.insert(h.pg().span_of_points(&[&pts[a], &pts[b]]).unwrap());
        }
    }
    seen.into_iter().collect()
}

/// Span of the first `j+1` unit vectors; the form is the identity there.
pub fn unit_span(h: &HermitianSpace, j: isize) -> Subspace {
    let units: Vec<_> = (0..=j).map(|k| h.pg().unit_point(k as usize)).collect();
    let refs: Vec<_> = units.iter().collect();
    h.pg().span_of_points(&refs).unwrap()
}
