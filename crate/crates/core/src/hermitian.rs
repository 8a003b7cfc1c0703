//! The Hermitian variety `H(2n+1, q²)` with Gram matrix the identity:
//! `X_0^{q+1} + ... + X_{2n+1}^{q+1} = 0`.
//!
//! Besides the variety itself this module holds the brute-force oracles
//! (generator filters) that the closed forms in [`crate::counting`] are
//! checked against. The oracles favour obviousness over speed.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use crate::counting::{self, NpCase};
use crate::gf::{FieldCtx, FieldElement};
use crate::projspace::{ProjPoint, ProjectiveSpace, Subspace};
use crate::{Error, Result};

/// Size guards for enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Refuse to scan an ambient space with more points than this.
    pub max_ambient_points: u128,
    /// Refuse to enumerate when the predicted generator count exceeds this.
    pub max_generators: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_ambient_points: 1 << 28, max_generators: 10_000_000 }
    }
}

/// A generator together with the indices of the variety points on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub space: Subspace,
    /// Sorted.
    pub point_ids: Vec<u32>,
}

/// The section of a subspace with the variety: a cone with an `i`-dimensional
/// vertex over a non-singular `H(base_rank, q²)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeShape {
    pub vertex: Subspace,
    pub vertex_dim: isize,
    pub base_rank: isize,
    pub section_size: u128,
}

/// Classification and brute-force count for a point off `π ∪ π^σ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NpCount {
    pub case: NpCase,
    pub count: u64,
}

#[derive(Debug, Clone)]
pub struct HermitianSpace {
    n: usize,
    pg: ProjectiveSpace,
    points: Vec<ProjPoint>,
    /// Ambient rank of each variety point; ascending, so lookups can bisect.
    ranks: Vec<u128>,
    generators: Vec<Generator>,
}

fn u128_of(v: num_bigint::BigUint) -> u128 {
    v.to_u128().unwrap_or(u128::MAX)
}

impl HermitianSpace {
    /// Builds the variety and enumerates its points and generators.
    pub fn new(field: Arc<FieldCtx>, n: usize) -> Result<Self> {
        Self::with_limits(field, n, Limits::default())
    }

    pub fn with_limits(field: Arc<FieldCtx>, n: usize, limits: Limits) -> Result<Self> {
        let mut h = Self::points_only(field, n, limits)?;
        let spaces = h.enumerate_generator_spaces(limits)?;
        h.install_generators(spaces)?;
        Ok(h)
    }

    /// Builds the variety and its point list but leaves the generator list
    /// empty; see [`Self::install_generators`].
    pub fn points_only(field: Arc<FieldCtx>, n: usize, limits: Limits) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange("n must be at least 1".into()));
        }
        let pg = ProjectiveSpace::new(field, 2 * n + 1)?;
        let ambient = pg.point_count();
        if ambient > limits.max_ambient_points {
            return Err(Error::SizeGuard { what: "ambient points", predicted: ambient, cap: limits.max_ambient_points });
        }
        let mut points = Vec::new();
        let mut ranks = Vec::new();
        let f = pg.field();
        pg.for_each_point(|v| {
            if is_isotropic(f, v) {
                points.push(pg.point(v).expect("enumerated points are canonical"));
                ranks.push(pg.point_rank(v));
            }
        });
        let expected = u128_of(counting::mu(2 * n as i64 + 1, f.q() as u64)?);
        if points.len() as u128 != expected {
            return Err(Error::Invariant(format!("found {} variety points, expected {expected}", points.len())));
        }
        Ok(HermitianSpace { n, pg, points, ranks, generators: Vec::new() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Ambient projective dimension `2n+1`.
    pub fn m(&self) -> usize {
        2 * self.n + 1
    }

    pub fn field(&self) -> &FieldCtx {
        self.pg.field()
    }

    pub fn q(&self) -> u64 {
        self.field().q() as u64
    }

    pub fn pg(&self) -> &ProjectiveSpace {
        &self.pg
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn point(&self, id: usize) -> &ProjPoint {
        &self.points[id]
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    /// Index of a canonical coordinate vector in the point list.
    pub fn point_index(&self, coords: &[FieldElement]) -> Option<usize> {
        if coords.len() != self.pg.ncols() || coords.iter().all(|c| c.is_zero()) {
            return None;
        }
        let r = self.pg.point_rank(coords);
        self.ranks.binary_search(&r).ok().filter(|&k| self.points[k].coords() == coords)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn has_generators(&self) -> bool {
        !self.generators.is_empty()
    }

    fn require_generators(&self) -> Result<()> {
        if self.generators.is_empty() {
            return Err(Error::Precondition("generators have not been enumerated".into()));
        }
        Ok(())
    }

    /// `Σ x_k · conj(y_k)`.
    pub fn h_form(&self, x: &[FieldElement], y: &[FieldElement]) -> FieldElement {
        h_form(self.field(), x, y)
    }

    pub fn is_on_variety(&self, v: &[FieldElement]) -> bool {
        is_isotropic(self.field(), v)
    }

    /// The polar subspace `A^σ`.
    pub fn perp(&self, a: &Subspace) -> Subspace {
        let f = self.field();
        let conj_rows: Vec<Vec<FieldElement>> = a.rows().map(|r| r.iter().map(|&c| f.conj(c)).collect()).collect();
        let c = self.pg.span_of_vectors(conj_rows.iter().map(|r| r.as_slice())).expect("same ambient space");
        self.pg.annihilator(&c)
    }

    /// True iff the form vanishes on every pair of basis rows (including a
    /// row with itself), so the whole subspace lies on the variety.
    pub fn is_totally_isotropic(&self, a: &Subspace) -> bool {
        let rows: Vec<&[FieldElement]> = a.rows().collect();
        (0..rows.len()).all(|i| (i..rows.len()).all(|j| self.h_form(rows[i], rows[j]).is_zero()))
    }

    /// Enumerates every generator as an RREF basis, sorted.
    ///
    /// Depth-first over RREF rows: each row is a variety point with a later
    /// leading column than the previous row, zero in the earlier pivot
    /// columns, orthogonal to the earlier rows, and the earlier rows vanish at
    /// its leading column. Every totally isotropic `n`-space has exactly one
    /// such basis, so each generator is produced once and no dedup is needed.
    pub fn enumerate_generator_spaces(&self, limits: Limits) -> Result<Vec<Subspace>> {
        let predicted = u128_of(counting::generator_count(self.n as i64, self.q())?);
        if predicted > limits.max_generators {
            return Err(Error::SizeGuard { what: "generators", predicted, cap: limits.max_generators });
        }
        let f = self.field();
        let leads: Vec<usize> = self.points.iter().map(|p| p.lead()).collect();
        let all: Vec<u32> = (0..self.points.len() as u32).collect();
        let mut out = Vec::with_capacity(predicted as usize);
        let mut chosen: Vec<u32> = Vec::with_capacity(self.n + 1);
        self.dfs(f, &leads, &all, &mut chosen, &mut out);
        if out.len() as u128 != predicted {
            return Err(Error::Invariant(format!("enumerated {} generators, expected {predicted}", out.len())));
        }
        out.sort();
        Ok(out)
    }

    fn dfs(&self, f: &FieldCtx, leads: &[usize], cands: &[u32], chosen: &mut Vec<u32>, out: &mut Vec<Subspace>) {
        if chosen.len() == self.n + 1 {
            let rows = chosen.iter().map(|&c| self.points[c as usize].coords());
            out.push(self.pg.span_of_vectors(rows).expect("same ambient space"));
            return;
        }
        for &c in cands {
            let pc = self.points[c as usize].coords();
            let lc = leads[c as usize];
            if chosen.iter().any(|&r| !self.points[r as usize].coords()[lc].is_zero()) {
                continue;
            }
            let next: Vec<u32> = cands
                .iter()
                .copied()
                .filter(|&d| {
                    let pd = self.points[d as usize].coords();
                    leads[d as usize] > lc && pd[lc].is_zero() && h_form(f, pd, pc).is_zero()
                })
                .collect();
            chosen.push(c);
            self.dfs(f, leads, &next, chosen, out);
            chosen.pop();
        }
    }

    /// Replaces the generator list, validating every entry.
    pub fn install_generators(&mut self, spaces: Vec<Subspace>) -> Result<()> {
        let expected = u128_of(counting::generator_count(self.n as i64, self.q())?);
        if spaces.len() as u128 != expected {
            return Err(Error::Invariant(format!("{} generators supplied, expected {expected}", spaces.len())));
        }
        let per = u128_of(counting::theta(self.n as i64, self.q() * self.q())?) as usize;
        let mut gens = Vec::with_capacity(spaces.len());
        for s in spaces {
            if s.ncols() != self.pg.ncols() || s.rank() != self.n + 1 || !self.is_totally_isotropic(&s) {
                return Err(Error::Precondition("supplied subspace is not a generator".into()));
            }
            let ids = self.variety_points_in(&s);
            if ids.len() != per {
                return Err(Error::Invariant(format!("generator has {} points, expected {per}", ids.len())));
            }
            gens.push(Generator { space: s, point_ids: ids });
        }
        self.generators = gens;
        Ok(())
    }

    /// Sorted ids of the variety points in `a`.
    pub fn variety_points_in(&self, a: &Subspace) -> Vec<u32> {
        let mut ids = Vec::new();
        self.pg.for_each_subspace_point(a, |v| {
            if self.is_on_variety(v) {
                ids.push(self.point_index(v).expect("variety point is indexed") as u32);
            }
        });
        ids.sort_unstable();
        ids
    }

    /// Vertex and base of `a ∩ H`; the direct point count is checked against
    /// the cone cardinality.
    pub fn section_shape(&self, a: &Subspace) -> Result<ConeShape> {
        let vertex = self.pg.meet(a, &self.perp(a))?;
        let i = vertex.proj_dim();
        let base = a.proj_dim() - i - 1;
        let mut size = 0u128;
        self.pg.for_each_subspace_point(a, |v| {
            if self.is_on_variety(v) {
                size += 1;
            }
        });
        let predicted = u128_of(counting::cone_size(i as i64, base as i64, self.q())?);
        if size != predicted {
            return Err(Error::Invariant(format!(
                "section has {size} points but a cone with vertex dim {i} over H({base}) has {predicted}"
            )));
        }
        Ok(ConeShape { vertex, vertex_dim: i, base_rank: base, section_size: size })
    }

    fn mask(&self, ids: &[u32]) -> Vec<bool> {
        let mut m = vec![false; self.points.len()];
        for &i in ids {
            m[i as usize] = true;
        }
        m
    }

    /// Generators containing the totally isotropic subspace `a`.
    pub fn generators_through(&self, a: &Subspace) -> Result<u64> {
        self.require_generators()?;
        if a.is_empty() || a.proj_dim() > self.n as isize || !self.is_totally_isotropic(a) {
            return Err(Error::Precondition("subspace is not a nonempty totally isotropic subspace".into()));
        }
        let basis: Vec<u32> = a
            .rows()
            .map(|r| self.point_index(r).expect("isotropic basis rows are variety points") as u32)
            .collect();
        Ok(self.generators.iter().filter(|g| basis.iter().all(|b| g.point_ids.binary_search(b).is_ok())).count() as u64)
    }

    /// Generators skew to `tau`, which must meet the variety in a
    /// non-singular section.
    pub fn generators_skew_to(&self, tau: &Subspace) -> Result<u64> {
        self.require_generators()?;
        let shape = self.section_shape(tau)?;
        if shape.vertex_dim != -1 {
            return Err(Error::Precondition(format!("section has a vertex of dimension {}", shape.vertex_dim)));
        }
        // a generator meets tau only in variety points
        let m = self.mask(&self.variety_points_in(tau));
        Ok(self.generators.iter().filter(|g| g.point_ids.iter().all(|&p| !m[p as usize])).count() as u64)
    }

    /// Generators meeting `π ∩ H` exactly in `p` and `π^σ ∩ H` exactly in `p2`.
    pub fn count_n(&self, pi: &Subspace, p: &ProjPoint, p2: &ProjPoint) -> Result<u64> {
        self.require_generators()?;
        let shape = self.section_shape(pi)?;
        if shape.vertex_dim > self.n as isize - 2 {
            return Err(Error::Precondition(format!("vertex dimension {} exceeds n-2", shape.vertex_dim)));
        }
        let perp = self.perp(pi);
        let off_vertex = |s: &Subspace, x: &ProjPoint| {
            self.is_on_variety(x.coords()) && self.pg.contains(s, x) && !self.pg.contains(&shape.vertex, x)
        };
        if !off_vertex(pi, p) || !off_vertex(&perp, p2) {
            return Err(Error::Precondition("points must be variety points of the two sides off the vertex".into()));
        }
        let a = self.variety_points_in(pi);
        let b = self.variety_points_in(&perp);
        let (ma, mb) = (self.mask(&a), self.mask(&b));
        let (ip, ip2) = (self.point_index(p.coords()).unwrap() as u32, self.point_index(p2.coords()).unwrap() as u32);
        let count = self
            .generators
            .iter()
            .filter(|g| {
                let on_a: Vec<u32> = g.point_ids.iter().copied().filter(|&x| ma[x as usize]).collect();
                let on_b: Vec<u32> = g.point_ids.iter().copied().filter(|&x| mb[x as usize]).collect();
                on_a == [ip] && on_b == [ip2]
            })
            .count();
        Ok(count as u64)
    }

    /// Which of the four through-a-point cases `r` falls in, decided from
    /// the geometry alone.
    pub fn classify_np(&self, pi: &Subspace, r: &ProjPoint) -> Result<NpCase> {
        let n = self.n as isize;
        if n < 2 {
            return Err(Error::Precondition("needs n >= 2".into()));
        }
        let shape = self.section_shape(pi)?;
        let i = shape.vertex_dim;
        if pi.proj_dim() != n || i > n - 2 {
            return Err(Error::Precondition("needs an n-space with vertex dimension at most n-2".into()));
        }
        let perp = self.perp(pi);
        if !self.is_on_variety(r.coords()) || self.pg.contains(pi, r) || self.pg.contains(&perp, r) {
            return Err(Error::Precondition("point must lie on the variety and off both sides".into()));
        }
        let joined = self.pg.span(pi, &perp)?;
        if !self.pg.contains(&joined, r) {
            return Ok(NpCase::Outside);
        }
        let rs = self.pg.point_subspace(r);
        let mut on_line = false;
        for x in self.variety_points_in(pi) {
            let xp = &self.points[x as usize];
            if self.pg.contains(&shape.vertex, xp) || !self.h_form(r.coords(), xp.coords()).is_zero() {
                continue;
            }
            let line = self.pg.span(&rs, &self.pg.point_subspace(xp))?;
            let hit = self.pg.meet(&line, &perp)?;
            if !hit.is_empty() && !self.pg.contains_subspace(&shape.vertex, &hit) {
                on_line = true;
                break;
            }
        }
        Ok(match (on_line, i <= n - 4) {
            (false, _) => NpCase::InsideNoLine,
            (true, true) => NpCase::LineLow,
            (true, false) => NpCase::LineHigh,
        })
    }

    /// Classifies `r` and counts generators through it meeting `π∖π_i` and
    /// `π^σ∖π_i` in exactly one point each.
    pub fn count_np(&self, pi: &Subspace, r: &ProjPoint) -> Result<NpCount> {
        self.require_generators()?;
        let case = self.classify_np(pi, r)?;
        let vertex = self.pg.meet(pi, &self.perp(pi))?;
        let side = |s: &Subspace| {
            let ids = self.variety_points_in(s);
            let mut m = self.mask(&ids);
            for v in self.variety_points_in(&vertex) {
                m[v as usize] = false;
            }
            m
        };
        let (ma, mb) = (side(pi), side(&self.perp(pi)));
        let ir = self.point_index(r.coords()).unwrap() as u32;
        let count = self
            .generators
            .iter()
            .filter(|g| g.point_ids.binary_search(&ir).is_ok())
            .filter(|g| {
                let a = g.point_ids.iter().filter(|&&x| ma[x as usize]).count();
                let b = g.point_ids.iter().filter(|&&x| mb[x as usize]).count();
                a == 1 && b == 1
            })
            .count();
        Ok(NpCount { case, count: count as u64 })
    }

    /// True iff the line through two distinct variety points lies on the
    /// variety, i.e. the points are orthogonal.
    pub fn is_variety_line(&self, p: &ProjPoint, p2: &ProjPoint) -> Result<bool> {
        if p == p2 || !self.is_on_variety(p.coords()) || !self.is_on_variety(p2.coords()) {
            return Err(Error::Precondition("needs two distinct variety points".into()));
        }
        Ok(self.h_form(p.coords(), p2.coords()).is_zero())
    }

    /// A standard `n`-space whose section has vertex dimension exactly `i`.
    ///
    /// Vertex rows are `e_{2k} + ω e_{2k+1}` for `k = 0..=i` with
    /// `ω^{q+1} = -1`; the remaining rows are `e_{2i+2}, ..., e_{n+i+1}`,
    /// on which the form is non-degenerate.
    pub fn make_nspace(&self, i: isize) -> Result<Subspace> {
        let n = self.n as isize;
        if i < -1 || i > n {
            return Err(Error::OutOfRange(format!("vertex dimension {i} outside [-1, {n}]")));
        }
        let w = self.field().norm_minus_one();
        let ncols = self.pg.ncols();
        let mut rows: Vec<Vec<FieldElement>> = Vec::new();
        for k in 0..=i {
            let mut r = vec![FieldElement::ZERO; ncols];
            r[2 * k as usize] = FieldElement::ONE;
            r[2 * k as usize + 1] = w;
            rows.push(r);
        }
        for c in (2 * i + 2)..=(n + i + 1) {
            let mut r = vec![FieldElement::ZERO; ncols];
            r[c as usize] = FieldElement::ONE;
            rows.push(r);
        }
        let s = self.pg.span_of_vectors(rows.iter().map(|r| r.as_slice()))?;
        let shape = self.section_shape(&s)?;
        if s.proj_dim() != n || shape.vertex_dim != i {
            return Err(Error::Invariant(format!("constructed space has vertex dimension {}", shape.vertex_dim)));
        }
        Ok(s)
    }
}

/// `Σ x_k · conj(y_k)` over a bare field context.
pub fn h_form(f: &FieldCtx, x: &[FieldElement], y: &[FieldElement]) -> FieldElement {
    x.iter().zip(y).fold(FieldElement::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, f.conj(b))))
}

fn is_isotropic(f: &FieldCtx, v: &[FieldElement]) -> bool {
    v.iter().fold(FieldElement::ZERO, |acc, &a| f.add(acc, f.norm(a))).is_zero()
}
