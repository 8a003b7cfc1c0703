//! Combinatorial bounds every small code word is expected to satisfy.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use super::CodeWord;
use crate::counting;
use crate::hermitian::HermitianSpace;
use crate::projspace::Subspace;
use crate::{Error, Result};

fn require_nonzero(space: &HermitianSpace, c: &CodeWord) -> Result<()> {
    if c.len() != space.point_count() {
        return Err(Error::DimensionMismatch { expected: space.point_count(), got: c.len() });
    }
    if c.is_zero() {
        return Err(Error::Precondition("needs a nonzero code word".into()));
    }
    Ok(())
}

fn pow_u128(q: u64, e: i64) -> u128 {
    (q as u128).pow(e.max(0) as u32)
}

/// Smallest `|P^σ ∩ S|` over the support points `P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PperpReport {
    pub min_count: usize,
    pub worst_point: u32,
    /// `2 + q^{2n-1}`.
    pub bound: u128,
    pub ok: bool,
}

pub fn verify_pperp(space: &HermitianSpace, c: &CodeWord) -> Result<PperpReport> {
    require_nonzero(space, c)?;
    let support = c.support();
    let bound = 2 + pow_u128(space.q(), 2 * space.n() as i64 - 1);
    let mut worst = (usize::MAX, 0u32);
    for &p in &support {
        let pc = space.point(p as usize).coords();
        let count = support.iter().filter(|&&x| space.h_form(pc, space.point(x as usize).coords()).is_zero()).count();
        if count < worst.0 {
            worst = (count, p);
        }
    }
    Ok(PperpReport { min_count: worst.0, worst_point: worst.1, bound, ok: worst.0 as u128 >= bound })
}

/// Largest intersection of a generator with the support, against
/// `wt(c)/q^{2n-1} · θ_{n-1}(q²)`. The comparison is done after clearing
/// the denominator: `max · q^{2n-1} ≤ wt · θ_{n-1}(q²)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorBoundReport {
    pub max_intersection: usize,
    pub weight: usize,
    /// `q^{2n-1}`.
    pub scale: u128,
    pub lhs: u128,
    pub rhs: u128,
    pub ok: bool,
}

impl GeneratorBoundReport {
    /// The bound itself, `rhs / q^{2n-1}`.
    pub fn bound(&self) -> f64 {
        self.rhs as f64 / self.scale as f64
    }
}

pub fn verify_generator_bound(space: &HermitianSpace, c: &CodeWord) -> Result<GeneratorBoundReport> {
    require_nonzero(space, c)?;
    if !space.has_generators() {
        return Err(Error::Precondition("generators have not been enumerated".into()));
    }
    let e = c.entries();
    let max = space
        .generators()
        .iter()
        .map(|g| g.point_ids.iter().filter(|&&x| e[x as usize] != 0).count())
        .max()
        .unwrap_or(0);
    let n = space.n() as i64;
    let q = space.q();
    let theta = counting::theta(n - 1, q * q)?.to_u128().unwrap_or(u128::MAX);
    let scale = pow_u128(q, 2 * n - 1);
    let lhs = max as u128 * scale;
    let rhs = c.weight() as u128 * theta;
    Ok(GeneratorBoundReport { max_intersection: max, weight: c.weight(), scale, lhs, rhs, ok: lhs <= rhs })
}

/// `4q^{2n-2}`.
pub fn overlap_bound(n: usize, q: u64) -> u128 {
    4 * pow_u128(q, 2 * n as i64 - 2)
}

/// Variety points of `(π ∪ π^σ) ∖ (π ∩ π^σ)`, sorted.
fn symdiff_points(space: &HermitianSpace, pi: &Subspace) -> Vec<u32> {
    let perp = space.perp(pi);
    let mut mark = vec![0u8; space.point_count()];
    for x in space.variety_points_in(pi) {
        mark[x as usize] |= 1;
    }
    for x in space.variety_points_in(&perp) {
        mark[x as usize] |= 2;
    }
    (0..mark.len() as u32).filter(|&x| matches!(mark[x as usize], 1 | 2)).collect()
}

/// `|(πΔπ^σ) ∩ (π'Δπ'^σ)|`, counted on variety points.
pub fn symdiff_overlap(space: &HermitianSpace, pi: &Subspace, pi2: &Subspace) -> Result<usize> {
    let n = space.n() as isize;
    if pi.proj_dim() != n || pi2.proj_dim() != n {
        return Err(Error::Precondition("both arguments must be n-spaces".into()));
    }
    if pi == pi2 || *pi == space.perp(pi2) {
        return Err(Error::Precondition("the two spaces must not coincide up to polarity".into()));
    }
    let a = symdiff_points(space, pi);
    let b = symdiff_points(space, pi2);
    Ok(a.iter().filter(|x| b.binary_search(x).is_ok()).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dualcode::{construct_pair_word, PairWordSpec};
    use crate::gf::FieldCtx;
    use alloc::sync::Arc;

    #[test]
    fn pair_word_bounds_small() {
        let h = HermitianSpace::new(Arc::new(FieldCtx::from_order(4).unwrap()), 1).unwrap();
        let spec = PairWordSpec::new(&h, h.make_nspace(-1).unwrap(), 1).unwrap();
        let c = construct_pair_word(&h, &spec).unwrap();
        let r = verify_pperp(&h, &c).unwrap();
        assert_eq!(r.bound, 4);
        assert!(r.ok);
        let g = verify_generator_bound(&h, &c).unwrap();
        assert!(g.ok);
        assert!(g.max_intersection <= 3);
        let zero = CodeWord::zero(c.field(), c.len());
        assert!(verify_pperp(&h, &zero).is_err());
        assert!(verify_generator_bound(&h, &zero).is_err());
    }

    #[test]
    fn overlap_preconditions() {
        let h = HermitianSpace::new(Arc::new(FieldCtx::from_order(4).unwrap()), 1).unwrap();
        let pi = h.make_nspace(-1).unwrap();
        assert!(symdiff_overlap(&h, &pi, &pi).is_err());
        assert!(symdiff_overlap(&h, &pi, &h.perp(&pi)).is_err());
        assert_eq!(overlap_bound(2, 2), 16);
    }
}
