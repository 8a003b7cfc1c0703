//! The dual code of points and generators over `F_p`.
//!
//! A code word is an `F_p` vector indexed by the variety points (in the
//! order of [`HermitianSpace::points`]) whose sum over every generator is 0.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::gf::PrimeField;
use crate::hermitian::HermitianSpace;
use crate::projspace::Subspace;
use crate::{Error, Result};

pub mod bounds;
pub mod linalg;
pub mod mindist;
pub mod peel;

use linalg::{BitRows, ByteRows, FpRows};

/// Generator-by-point incidence, stored sparsely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    p: PrimeField,
    n_points: usize,
    rows: Vec<Vec<u32>>,
}

impl IncidenceMatrix {
    /// One row per generator, in generator order.
    pub fn build(space: &HermitianSpace) -> Result<Self> {
        if !space.has_generators() {
            return Err(Error::Precondition("generators have not been enumerated".into()));
        }
        let p = PrimeField::new(space.field().p())?;
        let rows = space.generators().iter().map(|g| g.point_ids.clone()).collect();
        Ok(IncidenceMatrix { p, n_points: space.point_count(), rows })
    }

    /// From explicit sorted rows.
    pub fn from_rows(p: PrimeField, n_points: usize, rows: Vec<Vec<u32>>) -> Result<Self> {
        for r in &rows {
            if r.windows(2).any(|w| w[0] >= w[1]) || r.last().is_some_and(|&x| x as usize >= n_points) {
                return Err(Error::Precondition("incidence rows must be sorted, distinct and in range".into()));
            }
        }
        Ok(IncidenceMatrix { p, n_points, rows })
    }

    pub fn field(&self) -> PrimeField {
        self.p
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Number of rows through each point.
    pub fn column_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n_points];
        for r in &self.rows {
            for &x in r {
                deg[x as usize] += 1;
            }
        }
        deg
    }

    pub fn dense<M: FpRows>(&self) -> M {
        let mut m = M::zeros(self.p, self.rows.len(), self.n_points);
        for (k, r) in self.rows.iter().enumerate() {
            for &x in r {
                m.set(k, x as usize, 1);
            }
        }
        m
    }

    /// Rank over `F_p`.
    pub fn rank(&self) -> usize {
        if self.p.p() == 2 {
            linalg::rank(&self.dense::<BitRows>())
        } else {
            linalg::rank(&self.dense::<ByteRows>())
        }
    }

    /// Dimension of the dual code.
    pub fn dual_dimension(&self) -> usize {
        self.n_points - self.rank()
    }

    /// A basis of the dual code, one code word per row.
    pub fn dual_basis<M: FpRows>(&self) -> M {
        linalg::null_space(&self.dense::<M>())
    }
}

/// An `F_p` vector indexed by variety points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeWord {
    p: PrimeField,
    entries: Vec<u8>,
    weight: usize,
}

impl CodeWord {
    pub fn new(p: PrimeField, entries: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = entries.iter().find(|&&v| v >= p.p()) {
            return Err(Error::OutOfRange(format!("entry {bad} is not in F_{}", p.p())));
        }
        let weight = entries.iter().filter(|&&v| v != 0).count();
        Ok(CodeWord { p, entries, weight })
    }

    pub fn zero(p: PrimeField, len: usize) -> Self {
        CodeWord { p, entries: vec![0; len], weight: 0 }
    }

    /// From `(index, value)` pairs; later pairs overwrite earlier ones.
    pub fn from_sparse(p: PrimeField, len: usize, pairs: &[(u32, u8)]) -> Result<Self> {
        let mut e = vec![0u8; len];
        for &(i, v) in pairs {
            let slot = e
                .get_mut(i as usize)
                .ok_or_else(|| Error::OutOfRange(format!("index {i} outside a word of length {len}")))?;
            *slot = v;
        }
        Self::new(p, e)
    }

    pub fn field(&self) -> PrimeField {
        self.p
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> u8 {
        self.entries[i]
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn is_zero(&self) -> bool {
        self.weight == 0
    }

    pub fn support(&self) -> Vec<u32> {
        self.entries.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, _)| i as u32).collect()
    }

    fn check_compatible(&self, other: &CodeWord) -> Result<()> {
        if self.p != other.p {
            return Err(Error::Precondition("code words over different fields".into()));
        }
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), got: other.len() });
        }
        Ok(())
    }

    /// `self + s·other`.
    pub fn add_scaled(&self, other: &CodeWord, s: u8) -> Result<CodeWord> {
        self.check_compatible(other)?;
        let p = self.p;
        let e = self.entries.iter().zip(&other.entries).map(|(&a, &b)| p.add(a, p.mul(s, b))).collect();
        CodeWord::new(p, e)
    }

    pub fn add(&self, other: &CodeWord) -> Result<CodeWord> {
        self.add_scaled(other, 1)
    }

    pub fn sub(&self, other: &CodeWord) -> Result<CodeWord> {
        self.add_scaled(other, self.p.neg(1))
    }

    pub fn scale(&self, s: u8) -> CodeWord {
        let p = self.p;
        CodeWord::new(p, self.entries.iter().map(|&a| p.mul(s, a)).collect()).expect("entries stay in range")
    }

    /// Positions where both words are nonzero.
    pub fn support_overlap(&self, other: &CodeWord) -> usize {
        self.entries.iter().zip(&other.entries).filter(|(&a, &b)| a != 0 && b != 0).count()
    }
}

/// True iff every incidence row sums to 0 over `c`.
pub fn is_codeword(c: &CodeWord, a: &IncidenceMatrix) -> Result<bool> {
    if c.len() != a.n_points {
        return Err(Error::DimensionMismatch { expected: a.n_points, got: c.len() });
    }
    Ok(rows_vanish(c, a.rows.iter().map(|r| r.as_slice())))
}

/// [`is_codeword`] against the generators of `space` directly.
pub fn is_codeword_on(c: &CodeWord, space: &HermitianSpace) -> Result<bool> {
    if c.len() != space.point_count() {
        return Err(Error::DimensionMismatch { expected: space.point_count(), got: c.len() });
    }
    if !space.has_generators() {
        return Err(Error::Precondition("generators have not been enumerated".into()));
    }
    Ok(rows_vanish(c, space.generators().iter().map(|g| g.point_ids.as_slice())))
}

fn rows_vanish<'r>(c: &CodeWord, mut rows: impl Iterator<Item = &'r [u32]>) -> bool {
    let p = c.p;
    rows.all(|r| r.iter().fold(0u8, |acc, &x| p.add(acc, c.entries[x as usize])) == 0)
}

/// The data of a pair word `α(v_π - v_{π^σ})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairWordSpec {
    pub pi: Subspace,
    pub alpha: u8,
    pub vertex_dim: isize,
}

impl PairWordSpec {
    /// Computes the vertex dimension of `pi`, which must be an `n`-space.
    pub fn new(space: &HermitianSpace, pi: Subspace, alpha: u8) -> Result<Self> {
        let n = space.n() as isize;
        if pi.ncols() != space.pg().ncols() || pi.proj_dim() != n {
            return Err(Error::Precondition(format!("pair words need an {n}-space")));
        }
        let p = space.field().p() as u8;
        if alpha == 0 || alpha >= p {
            return Err(Error::OutOfRange(format!("alpha = {alpha} is not a nonzero element of F_{p}")));
        }
        let vertex_dim = space.section_shape(&pi)?.vertex_dim;
        Ok(PairWordSpec { pi, alpha, vertex_dim })
    }
}

/// `α(v_π - v_{π^σ})`. The vertex points cancel; for `i ∈ {n-1, n}` the
/// result is the zero word, which is returned as is.
pub fn construct_pair_word(space: &HermitianSpace, spec: &PairWordSpec) -> Result<CodeWord> {
    let p = PrimeField::new(space.field().p())?;
    let mut e = vec![0u8; space.point_count()];
    for x in space.variety_points_in(&spec.pi) {
        e[x as usize] = p.add(e[x as usize], spec.alpha);
    }
    for x in space.variety_points_in(&space.perp(&spec.pi)) {
        e[x as usize] = p.sub(e[x as usize], spec.alpha);
    }
    CodeWord::new(p, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldCtx;
    use alloc::sync::Arc;

    fn space(q2: u32, n: usize) -> HermitianSpace {
        HermitianSpace::new(Arc::new(FieldCtx::from_order(q2).unwrap()), n).unwrap()
    }

    #[test]
    fn incidence_shape() {
        let h = space(4, 1);
        let a = IncidenceMatrix::build(&h).unwrap();
        assert_eq!((a.n_rows(), a.n_points()), (27, 45));
        assert!(a.rows().iter().all(|r| r.len() == 5));
        assert!(a.column_degrees().iter().all(|&d| d == 3));
        assert_eq!(a.rank(), 21);
        assert_eq!(a.dual_dimension(), 24);
    }

    #[test]
    fn membership_basics() {
        let h = space(4, 1);
        let a = IncidenceMatrix::build(&h).unwrap();
        let p = a.field();
        assert!(is_codeword(&CodeWord::zero(p, 45), &a).unwrap());
        let single = CodeWord::from_sparse(p, 45, &[(7, 1)]).unwrap();
        assert!(!is_codeword(&single, &a).unwrap());
        assert!(is_codeword(&CodeWord::zero(p, 44), &a).is_err());
    }

    #[test]
    fn pair_words_small() {
        let h = space(4, 1);
        let a = IncidenceMatrix::build(&h).unwrap();
        let spec = PairWordSpec::new(&h, h.make_nspace(-1).unwrap(), 1).unwrap();
        let c = construct_pair_word(&h, &spec).unwrap();
        assert_eq!(c.weight(), 6);
        assert!(is_codeword(&c, &a).unwrap());
        for i in [0, 1] {
            let spec = PairWordSpec::new(&h, h.make_nspace(i).unwrap(), 1).unwrap();
            assert!(construct_pair_word(&h, &spec).unwrap().is_zero());
        }
    }

    #[test]
    fn pair_words_ternary() {
        let h = space(9, 1);
        let a = IncidenceMatrix::build(&h).unwrap();
        for alpha in [1, 2] {
            let spec = PairWordSpec::new(&h, h.make_nspace(-1).unwrap(), alpha).unwrap();
            let c = construct_pair_word(&h, &spec).unwrap();
            assert_eq!(c.weight(), 8);
            assert!(is_codeword(&c, &a).unwrap());
        }
        assert!(PairWordSpec::new(&h, h.make_nspace(-1).unwrap(), 3).is_err());
    }

    #[test]
    fn word_arithmetic() {
        let p = PrimeField::new(3).unwrap();
        let a = CodeWord::new(p, vec![1, 2, 0, 1]).unwrap();
        let b = CodeWord::new(p, vec![2, 2, 1, 0]).unwrap();
        assert_eq!(a.add(&b).unwrap().entries(), &[0, 1, 1, 1]);
        assert_eq!(a.sub(&a).unwrap().weight(), 0);
        assert_eq!(a.scale(2).entries(), &[2, 1, 0, 2]);
        assert_eq!(a.support_overlap(&b), 2);
        assert!(CodeWord::new(p, vec![3]).is_err());
    }
}
