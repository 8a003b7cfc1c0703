mod common;

use std::sync::OnceLock;

use hermicode_core::dualcode::{construct_pair_word, is_codeword, IncidenceMatrix, PairWordSpec};
use hermicode_core::gf::{FieldCtx, FieldElement};
use hermicode_core::hermitian::HermitianSpace;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const ORDERS: [u32; 8] = [4, 9, 16, 25, 49, 64, 81, 256];

fn field(k: usize) -> &'static FieldCtx {
    static FIELDS: OnceLock<Vec<FieldCtx>> = OnceLock::new();
    &FIELDS.get_or_init(|| ORDERS.iter().map(|&o| FieldCtx::from_order(o).unwrap()).collect())[k]
}

fn h54() -> &'static (HermitianSpace, IncidenceMatrix) {
    static H: OnceLock<(HermitianSpace, IncidenceMatrix)> = OnceLock::new();
    H.get_or_init(|| {
        let h = common::space(4, 2);
        let a = IncidenceMatrix::build(&h).unwrap();
        (h, a)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn field_axioms(k in 0..ORDERS.len(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = field(k);
        let [a, b, c] = [a, b, c].map(|x| f.element(x % f.order()).unwrap());
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
        }
        // conjugation is an involutive automorphism fixing the subfield
        prop_assert_eq!(f.conj(f.conj(a)), a);
        prop_assert_eq!(f.conj(f.mul(a, b)), f.mul(f.conj(a), f.conj(b)));
        prop_assert_eq!(f.conj(f.add(a, b)), f.add(f.conj(a), f.conj(b)));
        prop_assert!(f.in_subfield(f.norm(a)));
    }

    #[test]
    fn canonical_points_absorb_scalars(seed in any::<u64>(), s in 1u32..4) {
        let (h, _) = h54();
        let f = h.field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sub = common::random_subspace(h, 1, &mut rng);
        let v: Vec<FieldElement> = sub.row(0).to_vec();
        let scaled: Vec<FieldElement> = v.iter().map(|&x| f.mul(x, f.element(s).unwrap())).collect();
        prop_assert_eq!(h.pg().canonicalize(&scaled).unwrap(), h.pg().canonicalize(&v).unwrap());
    }

    #[test]
    fn polarity_reverses_inclusion(seed in any::<u64>(), r1 in 1usize..6, r2 in 1usize..6) {
        let (h, _) = h54();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = common::random_subspace(h, r1, &mut rng);
        let b = common::random_subspace(h, r2, &mut rng);
        let ab = h.pg().span(&a, &b).unwrap();
        let (pa, pab) = (h.perp(&a), h.perp(&ab));
        prop_assert_eq!(pa.rank() + a.rank(), h.pg().ncols());
        prop_assert!(h.pg().contains_subspace(&pa, &pab));
        prop_assert_eq!(h.perp(&pa), a);
        prop_assert_eq!(pab, h.pg().meet(&pa, &h.perp(&b)).unwrap());
    }

    #[test]
    fn code_is_closed_under_combination(seed in any::<u64>()) {
        let (h, a) = h54();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut c = hermicode_core::dualcode::CodeWord::zero(a.field(), h.point_count());
        for _ in 0..3 {
            let pi = common::random_nspace(h, &mut rng);
            let w = construct_pair_word(h, &PairWordSpec::new(h, pi, 1).unwrap()).unwrap();
            c = c.add(&w).unwrap();
            prop_assert!(is_codeword(&c, a).unwrap());
        }
    }
}
