//! Points and subspaces of `PG(m, q²)`.
//!
//! A point is stored as its canonical representative: the leftmost nonzero
//! coordinate is 1. A subspace is stored as the reduced row-echelon basis of
//! its underlying vector space; the RREF is unique, so structural equality
//! of [`Subspace`] values is equality of subspaces.
//!
//! Point enumeration order is lexicographic on the coordinate labels. Code
//! words are indexed by this order, so it must not change.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::gf::{FieldCtx, FieldElement};
use crate::{Error, Result};

/// A point of `PG(m, q²)` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint(Vec<FieldElement>);

impl ProjPoint {
    pub fn coords(&self) -> &[FieldElement] {
        &self.0
    }

    /// Position of the leading 1.
    pub fn lead(&self) -> usize {
        self.0.iter().position(|c| !c.is_zero()).expect("canonical points are nonzero")
    }
}

/// A projective subspace, stored as an RREF basis (`rank` rows of `ncols`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subspace {
    ncols: usize,
    rank: usize,
    rows: Vec<FieldElement>,
}

impl Subspace {
    /// Projective dimension; the empty subspace has dimension -1.
    pub fn proj_dim(&self) -> isize {
        self.rank as isize - 1
    }

    /// Vector-space dimension (number of basis rows).
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of homogeneous coordinates, `m + 1`.
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_empty(&self) -> bool {
        self.rank == 0
    }

    pub fn row(&self, k: usize) -> &[FieldElement] {
        &self.rows[k * self.ncols..(k + 1) * self.ncols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[FieldElement]> + '_ {
        self.rows.chunks(self.ncols.max(1)).take(self.rank)
    }

    /// Basis rows as canonical points (every RREF row has a leading 1).
    pub fn basis_points(&self) -> Vec<ProjPoint> {
        self.rows().map(|r| ProjPoint(r.to_vec())).collect()
    }

    /// Pivot column of each row.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows().map(|r| r.iter().position(|c| !c.is_zero()).unwrap()).collect()
    }

    /// Row-major element labels, the serialized form.
    pub fn labels(&self) -> Vec<u16> {
        self.rows.iter().map(|e| e.label()).collect()
    }
}

/// `PG(m, q²)` over a shared field.
#[derive(Debug, Clone)]
pub struct ProjectiveSpace {
    field: Arc<FieldCtx>,
    dim: usize,
}

impl ProjectiveSpace {
    pub fn new(field: Arc<FieldCtx>, dim: usize) -> Result<Self> {
        // point ranks are computed in u128
        let bits_per_coord = 32 - (field.order() - 1).leading_zeros();
        if (dim as u32 + 1) * bits_per_coord > 120 {
            return Err(Error::SizeGuard {
                what: "projective space coordinate bits",
                predicted: ((dim as u32 + 1) * bits_per_coord) as u128,
                cap: 120,
            });
        }
        Ok(ProjectiveSpace { field, dim })
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn field_arc(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    /// Projective dimension `m`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ncols(&self) -> usize {
        self.dim + 1
    }

    /// `θ_m(q²)`, the number of points.
    pub fn point_count(&self) -> u128 {
        theta_u128(self.dim as isize, self.field.order() as u128)
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.ncols() {
            return Err(Error::DimensionMismatch { expected: self.ncols(), got: len });
        }
        Ok(())
    }

    fn check_subspace(&self, a: &Subspace) -> Result<()> {
        self.check_len(a.ncols)
    }

    /// Scales a nonzero vector so that its leftmost nonzero coordinate is 1.
    pub fn canonicalize(&self, raw: &[FieldElement]) -> Result<ProjPoint> {
        self.check_len(raw.len())?;
        let lead = raw.iter().copied().find(|c| !c.is_zero()).ok_or(Error::ZeroVector)?;
        let f = &*self.field;
        let s = f.inv(lead)?;
        Ok(ProjPoint(raw.iter().map(|&c| f.mul(s, c)).collect()))
    }

    /// Wraps coordinates that are already canonical.
    pub fn point(&self, coords: &[FieldElement]) -> Result<ProjPoint> {
        let p = self.canonicalize(coords)?;
        if p.0 != coords {
            return Err(Error::Precondition("coordinates are not in canonical form".into()));
        }
        Ok(p)
    }

    /// Unit vector `e_k`.
    pub fn unit_point(&self, k: usize) -> ProjPoint {
        let mut v = vec![FieldElement::ZERO; self.ncols()];
        v[k] = FieldElement::ONE;
        ProjPoint(v)
    }

    /// All points in lexicographic order of their canonical coordinates.
    ///
    /// Fails if `θ_m(q²)` exceeds `cap`.
    pub fn enumerate_points(&self, cap: u128) -> Result<Vec<ProjPoint>> {
        let total = self.point_count();
        if total > cap {
            return Err(Error::SizeGuard { what: "projective points", predicted: total, cap });
        }
        let mut out = Vec::with_capacity(total as usize);
        self.for_each_point(|v| out.push(ProjPoint(v.to_vec())));
        Ok(out)
    }

    /// Visits every canonical vector in enumeration order without allocating.
    pub fn for_each_point(&self, mut visit: impl FnMut(&[FieldElement])) {
        let n = self.ncols();
        let q2 = self.field.order();
        let mut v = vec![FieldElement::ZERO; n];
        // leading 1 at the last position comes first lexicographically
        for lead in (0..n).rev() {
            for c in v.iter_mut() {
                *c = FieldElement::ZERO;
            }
            v[lead] = FieldElement::ONE;
            loop {
                visit(&v);
                // odometer over the tail lead+1..n, last coordinate fastest
                let mut k = n;
                let mut wrapped = true;
                while k > lead + 1 {
                    k -= 1;
                    let next = v[k].label() as u32 + 1;
                    if next < q2 {
                        v[k] = FieldElement::from_raw(next as u16);
                        wrapped = false;
                        break;
                    }
                    v[k] = FieldElement::ZERO;
                }
                if wrapped {
                    break;
                }
            }
        }
    }

    /// Index of a canonical point in [`Self::enumerate_points`] order.
    pub fn point_rank(&self, point: &[FieldElement]) -> u128 {
        let q2 = self.field.order() as u128;
        let lead = point.iter().position(|c| !c.is_zero()).expect("nonzero point");
        let before = theta_u128(self.dim as isize - lead as isize - 1, q2);
        let tail = point[lead + 1..].iter().fold(0u128, |acc, c| acc * q2 + c.label() as u128);
        before + tail
    }

    pub fn empty(&self) -> Subspace {
        Subspace { ncols: self.ncols(), rank: 0, rows: Vec::new() }
    }

    pub fn whole(&self) -> Subspace {
        let n = self.ncols();
        let mut rows = vec![FieldElement::ZERO; n * n];
        for k in 0..n {
            rows[k * n + k] = FieldElement::ONE;
        }
        Subspace { ncols: n, rank: n, rows }
    }

    /// Span of arbitrary (possibly dependent, possibly zero) row vectors.
    pub fn span_of_vectors<'v>(&self, vectors: impl IntoIterator<Item = &'v [FieldElement]>) -> Result<Subspace> {
        let n = self.ncols();
        let mut rows = Vec::new();
        for v in vectors {
            self.check_len(v.len())?;
            rows.extend_from_slice(v);
        }
        Ok(self.rref(rows, n))
    }

    pub fn span_of_points(&self, points: &[&ProjPoint]) -> Result<Subspace> {
        self.span_of_vectors(points.iter().map(|p| p.coords()))
    }

    pub fn point_subspace(&self, p: &ProjPoint) -> Subspace {
        Subspace { ncols: self.ncols(), rank: 1, rows: p.0.clone() }
    }

    /// Rebuilds a subspace from serialized row-major labels, checking that
    /// they already form an RREF basis.
    pub fn subspace_from_labels(&self, labels: &[u16]) -> Result<Subspace> {
        let n = self.ncols();
        if labels.len() % n != 0 {
            return Err(Error::DimensionMismatch { expected: n, got: labels.len() % n });
        }
        let rows = labels
            .iter()
            .map(|&l| self.field.element(l as u32))
            .collect::<Result<Vec<_>>>()?;
        let given_rank = labels.len() / n;
        let s = self.rref(rows.clone(), n);
        if s.rank != given_rank || s.rows != rows {
            return Err(Error::Precondition("serialized basis is not in reduced row-echelon form".into()));
        }
        Ok(s)
    }

    /// Reduced row-echelon form of `rows` (row-major, `ncols` wide).
    fn rref(&self, mut rows: Vec<FieldElement>, ncols: usize) -> Subspace {
        let rank = rref_in_place(&self.field, &mut rows, ncols);
        rows.truncate(rank * ncols);
        Subspace { ncols, rank, rows }
    }

    /// `⟨A, B⟩`.
    pub fn span(&self, a: &Subspace, b: &Subspace) -> Result<Subspace> {
        self.check_subspace(a)?;
        self.check_subspace(b)?;
        let mut rows = a.rows.clone();
        rows.extend_from_slice(&b.rows);
        Ok(self.rref(rows, self.ncols()))
    }

    /// Solutions of `A·y = 0` for the plain (bilinear) dot product.
    pub fn annihilator(&self, a: &Subspace) -> Subspace {
        let f = &*self.field;
        let n = self.ncols();
        let pivots = a.pivots();
        let mut is_pivot = vec![false; n];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut rows = Vec::with_capacity((n - a.rank) * n);
        for free in (0..n).filter(|&c| !is_pivot[c]) {
            let start = rows.len();
            rows.resize(start + n, FieldElement::ZERO);
            rows[start + free] = FieldElement::ONE;
            for (k, &pc) in pivots.iter().enumerate() {
                rows[start + pc] = f.neg(a.row(k)[free]);
            }
        }
        self.rref(rows, n)
    }

    /// `A ∩ B`, computed as the annihilator of the span of the two annihilators.
    pub fn meet(&self, a: &Subspace, b: &Subspace) -> Result<Subspace> {
        self.check_subspace(a)?;
        self.check_subspace(b)?;
        let dual = self.span(&self.annihilator(a), &self.annihilator(b))?;
        Ok(self.annihilator(&dual))
    }

    /// Reduces `v` against the RREF basis of `a`; zero iff `v ∈ a`.
    fn reduce(&self, a: &Subspace, v: &mut [FieldElement]) {
        let f = &*self.field;
        for row in a.rows() {
            let pc = row.iter().position(|c| !c.is_zero()).unwrap();
            let c = v[pc];
            if !c.is_zero() {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
    }

    pub fn contains(&self, a: &Subspace, p: &ProjPoint) -> bool {
        self.contains_vector(a, p.coords())
    }

    pub fn contains_vector(&self, a: &Subspace, v: &[FieldElement]) -> bool {
        debug_assert_eq!(v.len(), a.ncols);
        let mut w = v.to_vec();
        self.reduce(a, &mut w);
        w.iter().all(|c| c.is_zero())
    }

    /// True iff `b ⊆ a`.
    pub fn contains_subspace(&self, a: &Subspace, b: &Subspace) -> bool {
        b.rows().all(|r| self.contains_vector(a, r))
    }

    /// Number of points of a subspace, `θ_{proj_dim}(q²)`.
    pub fn subspace_point_count(&self, a: &Subspace) -> u128 {
        theta_u128(a.proj_dim(), self.field.order() as u128)
    }

    /// Visits the canonical points of `a`.
    ///
    /// Because the basis is in RREF, the combination with canonical
    /// coefficient vector is itself canonical.
    pub fn for_each_subspace_point(&self, a: &Subspace, mut visit: impl FnMut(&[FieldElement])) {
        if a.rank == 0 {
            return;
        }
        let f = &*self.field;
        let n = self.ncols();
        let coeff_space = ProjectiveSpace { field: self.field.clone(), dim: a.rank - 1 };
        let mut v = vec![FieldElement::ZERO; n];
        coeff_space.for_each_point(|coeffs| {
            for x in v.iter_mut() {
                *x = FieldElement::ZERO;
            }
            for (k, &c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (x, &r) in v.iter_mut().zip(a.row(k)) {
                    *x = f.add(*x, f.mul(c, r));
                }
            }
            visit(&v);
        });
    }

    pub fn subspace_points(&self, a: &Subspace) -> Vec<ProjPoint> {
        let mut out = Vec::new();
        self.for_each_subspace_point(a, |v| out.push(ProjPoint(v.to_vec())));
        out
    }
}

/// Gauss-Jordan elimination in place; returns the rank. The first `rank`
/// rows of `rows` hold the RREF afterwards.
pub(crate) fn rref_in_place(f: &FieldCtx, rows: &mut [FieldElement], ncols: usize) -> usize {
    if ncols == 0 {
        return 0;
    }
    let nrows = rows.len() / ncols;
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pr) = (rank..nrows).find(|&r| !rows[r * ncols + col].is_zero()) else {
            continue;
        };
        if pr != rank {
            for c in 0..ncols {
                rows.swap(pr * ncols + c, rank * ncols + c);
            }
        }
        let s = f.inv(rows[rank * ncols + col]).expect("pivot is nonzero");
        for c in col..ncols {
            rows[rank * ncols + c] = f.mul(s, rows[rank * ncols + c]);
        }
        for r in 0..nrows {
            if r == rank {
                continue;
            }
            let factor = rows[r * ncols + col];
            if factor.is_zero() {
                continue;
            }
            for c in col..ncols {
                let t = f.mul(factor, rows[rank * ncols + c]);
                rows[r * ncols + c] = f.sub(rows[r * ncols + c], t);
            }
        }
        rank += 1;
    }
    rank
}

/// `θ_m(q) = (q^{m+1} - 1)/(q - 1)`, with `θ_{-1} = 0`.
pub(crate) fn theta_u128(m: isize, q: u128) -> u128 {
    if m < 0 {
        return 0;
    }
    let mut total = 0u128;
    let mut term = 1u128;
    for _ in 0..=m {
        total = total.saturating_add(term);
        term = term.saturating_mul(q);
    }
    total
}
