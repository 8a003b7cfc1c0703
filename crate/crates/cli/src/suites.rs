//! Verification suites. Each check compares a closed form or a structural
//! claim against a direct computation and yields one [`CheckRow`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Display;
use std::sync::Arc;

use hermicode_core::budget::Budget;
use hermicode_core::counting::{self, NpCase};
use hermicode_core::dualcode::bounds::{overlap_bound, symdiff_overlap, verify_generator_bound, verify_pperp};
use hermicode_core::dualcode::peel::{peel, PeelOptions};
use hermicode_core::dualcode::{construct_pair_word, is_codeword, CodeWord, IncidenceMatrix, PairWordSpec};
use hermicode_core::gf::{FieldCtx, FieldElement, PrimeField};
use hermicode_core::hermitian::HermitianSpace;
use hermicode_core::projspace::Subspace;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cache::{open_space, GeneratorCache};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Cardinality,
    Formulas,
    Recurrences,
    Codewords,
    Grassmann,
    Meets,
    Vertex,
    Collinear,
    Bounds,
    Peel,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Cardinality,
        Suite::Formulas,
        Suite::Recurrences,
        Suite::Codewords,
        Suite::Grassmann,
        Suite::Meets,
        Suite::Vertex,
        Suite::Collinear,
        Suite::Bounds,
        Suite::Peel,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Cardinality => "cardinality",
            Suite::Formulas => "formulas",
            Suite::Recurrences => "recurrences",
            Suite::Codewords => "codewords",
            Suite::Grassmann => "grassmann",
            Suite::Meets => "meets",
            Suite::Vertex => "vertex",
            Suite::Collinear => "collinear",
            Suite::Bounds => "bounds",
            Suite::Peel => "peel",
        }
    }

    /// A suite name, or `all`.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>> {
        if s == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        Suite::ALL
            .iter()
            .find(|x| x.name() == s)
            .map(|&x| vec![x])
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
                Error::Usage(format!("unknown suite {s:?}; expected one of {}, all", names.join(", ")))
            })
    }

    fn default_trials(self) -> usize {
        match self {
            Suite::Grassmann | Suite::Meets => 10_000,
            Suite::Bounds => 1000,
            Suite::Peel | Suite::Codewords => 100,
            Suite::Vertex | Suite::Collinear => 200,
            Suite::Cardinality | Suite::Formulas | Suite::Recurrences => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRow {
    pub suite: &'static str,
    pub check: String,
    pub params: String,
    pub expected: String,
    pub got: String,
    pub ok: bool,
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Field orders `q²`.
    pub orders: Vec<u32>,
    pub ns: Vec<usize>,
    /// Overrides each suite's default sample size.
    pub trials: Option<usize>,
    pub seed: u64,
    pub cache: Option<GeneratorCache>,
}

/// The spaces a run works on, built once and shared between suites.
pub struct Workbench {
    cfg: SuiteConfig,
    spaces: Vec<(HermitianSpace, IncidenceMatrix)>,
}

impl Workbench {
    pub fn new(cfg: SuiteConfig) -> Self {
        Workbench { cfg, spaces: Vec::new() }
    }

    fn ensure_spaces(&mut self) -> Result<()> {
        if !self.spaces.is_empty() {
            return Ok(());
        }
        for &q2 in &self.cfg.orders {
            let f = Arc::new(FieldCtx::from_order(q2)?);
            for &n in &self.cfg.ns {
                let (space, status) = open_space(f.clone(), n, self.cfg.cache.as_ref())?;
                log::info!("H({}, {q2}): {} points, {} generators, cache {}", 2 * n + 1, space.point_count(), space.generators().len(), status.label());
                let a = IncidenceMatrix::build(&space)?;
                self.spaces.push((space, a));
            }
        }
        Ok(())
    }

    pub fn run(&mut self, suite: Suite) -> Result<Vec<CheckRow>> {
        if suite == Suite::Recurrences {
            return recurrences();
        }
        self.ensure_spaces()?;
        let trials = self.cfg.trials.unwrap_or(suite.default_trials());
        let mut rows = Vec::new();
        for (k, (space, a)) in self.spaces.iter().enumerate() {
            let salt = (suite as u64) << 32 | k as u64;
            let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let mut ctx = Ctx { space, a, rng: &mut rng, trials, rows: &mut rows, suite: suite.name() };
            match suite {
                Suite::Cardinality => ctx.cardinality()?,
                Suite::Formulas => ctx.formulas()?,
                Suite::Codewords => ctx.codewords()?,
                Suite::Grassmann => ctx.grassmann()?,
                Suite::Meets => ctx.meets()?,
                Suite::Vertex => ctx.vertex()?,
                Suite::Collinear => ctx.collinear()?,
                Suite::Bounds => ctx.bounds()?,
                Suite::Peel => ctx.peel()?,
                Suite::Recurrences => unreachable!(),
            }
        }
        Ok(rows)
    }
}

pub fn random_subspace(space: &HermitianSpace, rank: usize, rng: &mut ChaCha8Rng) -> Subspace {
    let f = space.field();
    let ncols = space.pg().ncols();
    loop {
        let rows: Vec<Vec<FieldElement>> = (0..rank)
            .map(|_| (0..ncols).map(|_| f.element(rng.gen_range(0..f.order())).expect("in range")).collect())
            .collect();
        let s = space.pg().span_of_vectors(rows.iter().map(|r| r.as_slice())).expect("same ambient space");
        if s.rank() == rank {
            return s;
        }
    }
}

pub fn random_nspace(space: &HermitianSpace, rng: &mut ChaCha8Rng) -> Subspace {
    random_subspace(space, space.n() + 1, rng)
}

/// Every line of the ambient space.
pub fn all_lines(space: &HermitianSpace) -> Result<Vec<Subspace>> {
    let pts = space.pg().enumerate_points(1 << 16)?;
    let mut seen = BTreeSet::new();
    for a in 0..pts.len() {
        for b in a + 1..pts.len() {
            seen.insert(space.pg().span_of_points(&[&pts[a], &pts[b]])?);
        }
    }
    Ok(seen.into_iter().collect())
}

/// Whether every generator meets the `π` side of the pair word off the
/// vertex exactly when it meets the `π^σ` side off the vertex.
pub fn rows_balanced(space: &HermitianSpace, pi: &Subspace) -> Result<bool> {
    let perp = space.perp(pi);
    let vertex = space.pg().meet(pi, &perp)?;
    let mark = |s: &Subspace| {
        let mut m = vec![false; space.point_count()];
        for x in space.variety_points_in(s) {
            m[x as usize] = !space.pg().contains(&vertex, space.point(x as usize));
        }
        m
    };
    let (plus, minus) = (mark(pi), mark(&perp));
    Ok(space.generators().iter().all(|g| {
        g.point_ids.iter().any(|&x| plus[x as usize]) == g.point_ids.iter().any(|&x| minus[x as usize])
    }))
}

/// Random `F_p`-combination of `parts` pair words on random `n`-spaces.
pub fn random_combination(space: &HermitianSpace, parts: usize, rng: &mut ChaCha8Rng) -> Result<(CodeWord, Vec<PairWordSpec>)> {
    let p = PrimeField::new(space.field().p())?;
    let mut c = CodeWord::zero(p, space.point_count());
    let mut specs = Vec::new();
    for _ in 0..parts {
        let alpha = rng.gen_range(1..p.p());
        let spec = PairWordSpec::new(space, random_nspace(space, rng), alpha)?;
        c = c.add(&construct_pair_word(space, &spec)?)?;
        specs.push(spec);
    }
    Ok((c, specs))
}

struct Ctx<'a> {
    space: &'a HermitianSpace,
    a: &'a IncidenceMatrix,
    rng: &'a mut ChaCha8Rng,
    trials: usize,
    rows: &'a mut Vec<CheckRow>,
    suite: &'static str,
}

impl Ctx<'_> {
    fn params(&self, extra: &str) -> String {
        let base = format!("n={} q={}", self.space.n(), self.space.q());
        if extra.is_empty() {
            base
        } else {
            format!("{base} {extra}")
        }
    }

    fn push(&mut self, check: &str, extra: &str, expected: impl Display, got: impl Display, ok: bool) {
        let params = self.params(extra);
        self.rows.push(CheckRow {
            suite: self.suite,
            check: check.to_string(),
            params,
            expected: expected.to_string(),
            got: got.to_string(),
            ok,
        });
    }

    /// Every observed value equals the closed form.
    fn agree(&mut self, check: &str, extra: &str, expected: &BigUint, observed: &BTreeSet<u64>) {
        let got: Vec<String> = observed.iter().map(|v| v.to_string()).collect();
        let ok = observed.len() == 1 && BigUint::from(*observed.iter().next().unwrap()) == *expected;
        self.push(check, extra, expected, got.join("|"), ok);
    }

    fn failures(&mut self, check: &str, extra: &str, tested: usize, failed: usize) {
        self.push(check, extra, format!("0/{tested}"), format!("{failed}/{tested}"), failed == 0 && tested > 0);
    }

    fn nq(&self) -> (i64, u64) {
        (self.space.n() as i64, self.space.q())
    }

    fn sample_nspaces(&mut self, count: usize) -> Vec<Subspace> {
        (0..count).map(|_| random_nspace(self.space, self.rng)).collect()
    }

    /// Exhaustive over all lines for the smallest space, else sampled.
    fn small_exhaustive(&self) -> bool {
        self.space.n() == 1 && self.space.pg().point_count() <= 100
    }

    fn cardinality(&mut self) -> Result<()> {
        let (n, q) = self.nq();
        let mu = counting::mu(2 * n + 1, q)?;
        self.push("points", "", &mu, self.space.point_count(), mu == BigUint::from(self.space.point_count()));
        let g = counting::generator_count(n, q)?;
        let got = self.space.generators().len();
        self.push("generators", "", &g, got, g == BigUint::from(got));
        Ok(())
    }

    fn formulas(&mut self) -> Result<()> {
        let (n, q) = self.nq();
        let space = self.space;
        let gens = space.generators();
        for k in 0..=n {
            let mut seen = BTreeSet::new();
            for _ in 0..gens.len().min(20) {
                let g = &gens[self.rng.gen_range(0..gens.len())];
                let a = space.pg().span_of_vectors(g.space.rows().take(k as usize + 1))?;
                seen.insert(space.generators_through(&a)?);
            }
            self.agree("generators_through", &format!("k={k}"), &counting::generators_through_k(n, k, q)?, &seen);
        }
        for j in -1..=n {
            let mut seen = BTreeSet::new();
            let units: Vec<_> = (0..=j).map(|k| space.pg().unit_point(k as usize)).collect();
            let refs: Vec<_> = units.iter().collect();
            seen.insert(space.generators_skew_to(&space.pg().span_of_points(&refs)?)?);
            let mut tried = 0;
            while j >= 0 && tried < 3 {
                let tau = random_subspace(space, j as usize + 1, self.rng);
                if space.section_shape(&tau)?.vertex_dim == -1 {
                    seen.insert(space.generators_skew_to(&tau)?);
                    tried += 1;
                }
            }
            self.agree("generators_skew_to", &format!("j={j}"), &counting::c_nj(n, j, q)?, &seen);
        }
        for i in -1..=n - 2 {
            let pi = space.make_nspace(i as isize)?;
            let (a, b) = off_vertex_sides(space, &pi)?;
            let mut pairs: Vec<(u32, u32)> = a.iter().flat_map(|&x| b.iter().map(move |&y| (x, y))).collect();
            let total = pairs.len();
            if total > 2000 {
                pairs.shuffle(self.rng);
                pairs.truncate(2000);
            }
            let mut seen = BTreeSet::new();
            for (x, y) in &pairs {
                seen.insert(space.count_n(&pi, space.point(*x as usize), space.point(*y as usize))?);
            }
            let extra = format!("i={i} pairs={}/{total}", pairs.len());
            self.agree("N", &extra, &counting::N_ni(n, i, q)?, &seen);
        }
        if n >= 2 {
            self.through_point(n, q)?;
        }
        Ok(())
    }

    fn through_point(&mut self, n: i64, q: u64) -> Result<()> {
        let space = self.space;
        for i in -1..=n - 2 {
            let pi = space.make_nspace(i as isize)?;
            let perp = space.perp(&pi);
            let mut rs: Vec<u32> = (0..space.point_count() as u32)
                .filter(|&x| {
                    let p = space.point(x as usize);
                    !space.pg().contains(&pi, p) && !space.pg().contains(&perp, p)
                })
                .collect();
            let total = rs.len();
            if total > 1000 {
                rs.shuffle(self.rng);
                rs.truncate(1000);
                rs.sort_unstable();
            }
            let mut by_case: BTreeMap<u8, BTreeSet<u64>> = BTreeMap::new();
            for &r in &rs {
                let got = space.count_np(&pi, space.point(r as usize))?;
                by_case.entry(got.case.number()).or_default().insert(got.count);
            }
            let mut gaps = Vec::new();
            for (&case, seen) in &by_case {
                let extra = format!("i={i} case={case} points={}/{total}", rs.len());
                match counting::n_p(n, i, NpCase::from_number(case)?, q) {
                    Ok(v) => self.agree("n_P", &extra, &v, seen),
                    Err(_) => gaps.push(case),
                }
            }
            let cases: Vec<String> = by_case.keys().map(|c| c.to_string()).collect();
            let impossible = i == -1 && by_case.contains_key(&NpCase::Outside.number());
            self.push(
                "n_P_case_ranges",
                &format!("i={i}"),
                "every case in range",
                format!("cases {}", cases.join("|")),
                gaps.is_empty() && !impossible,
            );
        }
        Ok(())
    }

    fn codewords(&mut self) -> Result<()> {
        let (n, q) = self.nq();
        let space = self.space;
        let p = self.a.field();
        for i in -1..=n {
            let pi = space.make_nspace(i as isize)?;
            for alpha in p.units() {
                let spec = PairWordSpec::new(space, pi.clone(), alpha)?;
                let c = construct_pair_word(space, &spec)?;
                let extra = format!("i={i} alpha={alpha}");
                let member = is_codeword(&c, self.a)?;
                self.push("membership", &extra, true, member, member);
                let want = counting::pair_word_weight(n, i, q)?;
                self.push("weight_law", &extra, &want, c.weight(), want == BigUint::from(c.weight()));
                if c.is_zero() {
                    continue;
                }
                let pp = verify_pperp(space, &c)?;
                self.push("pperp", &extra, format!(">={}", pp.bound), pp.min_count, pp.ok);
                let gb = verify_generator_bound(space, &c)?;
                self.push("generator_bound", &extra, format!("<={:.4}", gb.bound()), gb.max_intersection, gb.ok);
                let bal = rows_balanced(space, &spec.pi)?;
                self.push("balanced_rows", &extra, true, bal, bal);
            }
        }
        let mut fails = [0usize; 5];
        for pi in self.sample_nspaces(self.trials) {
            let spec = PairWordSpec::new(space, pi, 1)?;
            let c = construct_pair_word(space, &spec)?;
            fails[0] += !is_codeword(&c, self.a)? as usize;
            fails[1] += (counting::pair_word_weight(n, spec.vertex_dim as i64, q)? != BigUint::from(c.weight())) as usize;
            fails[4] += !rows_balanced(space, &spec.pi)? as usize;
            if !c.is_zero() {
                fails[2] += !verify_pperp(space, &c)?.ok as usize;
                fails[3] += !verify_generator_bound(space, &c)?.ok as usize;
            }
        }
        let names = ["membership", "weight_law", "pperp", "generator_bound", "balanced_rows"];
        for (name, f) in names.iter().zip(fails) {
            self.failures(name, "random", self.trials, f);
        }
        Ok(())
    }

    fn grassmann(&mut self) -> Result<()> {
        let pg = self.space.pg();
        let mut failed = 0;
        for _ in 0..self.trials {
            let ra = self.rng.gen_range(1..=pg.ncols());
            let rb = self.rng.gen_range(1..=pg.ncols());
            let a = random_subspace(self.space, ra, self.rng);
            let b = random_subspace(self.space, rb, self.rng);
            let (s, m) = (pg.span(&a, &b)?, pg.meet(&a, &b)?);
            let ok = s.proj_dim() + m.proj_dim() == a.proj_dim() + b.proj_dim() && s == pg.span(&b, &a)? && m == pg.meet(&b, &a)?;
            failed += !ok as usize;
        }
        self.failures("grassmann_identity", "", self.trials, failed);
        Ok(())
    }

    fn meets(&mut self) -> Result<()> {
        let space = self.space;
        let same = |g: &Subspace, pi: &Subspace| -> Result<bool> {
            Ok(space.pg().meet(g, pi)?.proj_dim() == space.pg().meet(g, &space.perp(pi))?.proj_dim())
        };
        let (mut tested, mut failed) = (0, 0);
        if self.small_exhaustive() {
            for pi in all_lines(space)? {
                for g in space.generators() {
                    tested += 1;
                    failed += !same(&g.space, &pi)? as usize;
                }
            }
            self.failures("equal_meet_dimension", "exhaustive", tested, failed);
        } else {
            for _ in 0..self.trials {
                let g = &space.generators()[self.rng.gen_range(0..space.generators().len())];
                let pi = random_nspace(space, self.rng);
                tested += 1;
                failed += !same(&g.space, &pi)? as usize;
            }
            self.failures("equal_meet_dimension", "sampled", tested, failed);
        }
        Ok(())
    }

    fn test_spaces(&mut self) -> Result<(Vec<Subspace>, &'static str)> {
        if self.small_exhaustive() {
            return Ok((all_lines(self.space)?, "exhaustive"));
        }
        let n = self.space.n() as isize;
        let mut v: Vec<Subspace> = (-1..=n).map(|i| self.space.make_nspace(i)).collect::<hermicode_core::Result<_>>()?;
        v.extend(self.sample_nspaces(self.trials));
        Ok((v, "standard+sampled"))
    }

    fn vertex(&mut self) -> Result<()> {
        let (spaces, how) = self.test_spaces()?;
        let space = self.space;
        let mut failed = 0;
        for pi in &spaces {
            let perp = space.perp(pi);
            let (s, t) = (space.section_shape(pi)?, space.section_shape(&perp)?);
            let ok = s.vertex == t.vertex && s.vertex == space.pg().meet(pi, &perp)? && space.perp(&perp) == *pi;
            failed += !ok as usize;
        }
        self.failures("shared_vertex", how, spaces.len(), failed);
        Ok(())
    }

    fn collinear(&mut self) -> Result<()> {
        let (spaces, how) = self.test_spaces()?;
        let space = self.space;
        let (mut pairs, mut failed) = (0, 0);
        for pi in &spaces {
            let (a, b) = off_vertex_sides(space, pi)?;
            for &x in &a {
                for &y in &b {
                    pairs += 1;
                    let (p, p2) = (space.point(x as usize), space.point(y as usize));
                    let line = space.pg().span_of_points(&[p, p2])?;
                    let on = space.is_variety_line(p, p2)?
                        && space.variety_points_in(&line).len() as u128 == space.pg().subspace_point_count(&line);
                    failed += !on as usize;
                }
            }
        }
        self.failures("variety_line", &format!("{how} spaces={}", spaces.len()), pairs, failed);
        Ok(())
    }

    fn bounds(&mut self) -> Result<()> {
        let (n, q) = self.nq();
        let space = self.space;
        let bound = overlap_bound(n as usize, q) as usize;
        let (mut tested, mut over, mut sub, mut exact, mut max_ov) = (0, 0, 0, 0, 0);
        let binary = space.field().p() == 2;
        for _ in 0..self.trials {
            let (p1, p2) = (random_nspace(space, self.rng), random_nspace(space, self.rng));
            if p1 == p2 || p1 == space.perp(&p2) {
                continue;
            }
            tested += 1;
            let ov = symdiff_overlap(space, &p1, &p2)?;
            max_ov = max_ov.max(ov);
            over += (ov > bound) as usize;
            let c1 = construct_pair_word(space, &PairWordSpec::new(space, p1, 1)?)?;
            let c2 = construct_pair_word(space, &PairWordSpec::new(space, p2, 1)?)?;
            let w = c1.add(&c2)?.weight();
            // only points in both supports can cancel, each losing two
            sub += (w + 2 * ov < c1.weight() + c2.weight()) as usize;
            if binary {
                exact += (w + 2 * c1.support_overlap(&c2) != c1.weight() + c2.weight()) as usize;
            }
        }
        self.push("overlap", &format!("pairs={tested}"), format!("<={bound}"), format!("max {max_ov}"), over == 0 && tested > 0);
        self.failures("superadditivity", "", tested, sub);
        if binary {
            self.failures("binary_cancellation", "", tested, exact);
        }
        Ok(())
    }

    fn peel(&mut self) -> Result<()> {
        let space = self.space;
        let (mut failed, mut non_mono) = (0, 0);
        for _ in 0..self.trials {
            let parts = self.rng.gen_range(1..=3);
            let (c, _) = random_combination(space, parts, self.rng)?;
            let out = peel(space, &c, &PeelOptions::default(), &Budget::UNLIMITED)?;
            failed += !(out.succeeded() && out.residual.is_zero()) as usize;
            non_mono += out.steps.iter().any(|s| s.weight_after >= s.weight_before) as usize;
        }
        self.failures("zero_residual", "parts<=3", self.trials, failed);
        self.failures("strict_decrease", "parts<=3", self.trials, non_mono);
        Ok(())
    }
}

fn off_vertex_sides(space: &HermitianSpace, pi: &Subspace) -> Result<(Vec<u32>, Vec<u32>)> {
    let perp = space.perp(pi);
    let vertex = space.pg().meet(pi, &perp)?;
    let side = |s: &Subspace| -> Vec<u32> {
        space.variety_points_in(s).into_iter().filter(|&x| !space.pg().contains(&vertex, space.point(x as usize))).collect()
    };
    Ok((side(pi), side(&perp)))
}

const RECURRENCE_QS: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];

fn recurrences() -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    let mut push = |check: &str, q: u64, tested: usize, failed: usize| {
        rows.push(CheckRow {
            suite: "recurrences",
            check: check.to_string(),
            params: format!("n<=6 q={q}"),
            expected: format!("0/{tested}"),
            got: format!("{failed}/{tested}"),
            ok: failed == 0 && tested > 0,
        });
    };
    let qp = |q: u64, e: i64| BigInt::from(q).pow(e as u32);
    let deltas = [BigRational::new(1.into(), 2.into()), BigRational::one(), BigRational::from_integer(2.into())];
    for q in RECURRENCE_QS {
        let (mut t, mut f) = (0, 0);
        for n in 1..=6i64 {
            for j in 0..=n {
                let sign = if (2 * n - j + 1) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                let rhs = BigInt::from(counting::c_nj(n - 1, j - 1, q)?) * qp(q, j) * (qp(q, 2 * n - j + 1) - sign);
                t += 1;
                f += (BigInt::from(counting::c_nj(n, j, q)?) != rhs) as usize;
            }
        }
        push("c_nj", q, t, f);

        let (mut t, mut f) = (0, 0);
        for n in 2..=6i64 {
            for i in 0..=n - 2 {
                let rhs = counting::N_ni(n - 1, i - 1, q)? * BigUint::from(q).pow((2 * n - 3) as u32);
                t += 1;
                f += (counting::N_ni(n, i, q)? != rhs) as usize;
            }
        }
        push("N", q, t, f);

        let (mut t, mut f) = (0, 0);
        let (mut ts, mut fs) = (0, 0);
        for n in 1..=6i64 {
            let lead = BigRational::from_integer(qp(q, 2 * n - 1) * 2);
            let cap = BigRational::from_integer(qp(q, 2 * n - 2) * 6);
            for i in -1..=n - 2 {
                let sigma = counting::sigma_threshold(n, i, q)?;
                for d in &deltas {
                    t += 1;
                    f += (counting::alpha_roots(n, i, q, d)?.sum() != sigma) as usize;
                }
                let excess = &sigma - &lead;
                ts += 1;
                fs += !(excess > BigRational::zero() && excess <= cap) as usize;
            }
        }
        push("root_sum", q, t, f);
        push("sigma_excess", q, ts, fs);

        let (mut t, mut f) = (0, 0);
        for n in 2..=6i64 {
            let weights: Vec<BigUint> = (-1..=n - 2).map(|i| counting::pair_word_weight(n, i, q)).collect::<hermicode_core::Result<_>>()?;
            let min = weights.iter().min().expect("nonempty");
            let at = &weights[(n - 3 + 1).max(0) as usize];
            t += 1;
            f += (at != min || *min != counting::min_pair_weight(n, q)?) as usize;
        }
        push("smallest_weight", q, t, f);
    }
    Ok(rows)
}

/// CSV with a header row.
pub fn rows_csv(rows: &[CheckRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Format(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Format(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bench(orders: Vec<u32>, ns: Vec<usize>, trials: usize) -> Workbench {
        Workbench::new(SuiteConfig { orders, ns, trials: Some(trials), seed: 3, cache: None })
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::parse_list(s.name()).unwrap(), vec![s]);
        }
        assert_eq!(Suite::parse_list("all").unwrap().len(), Suite::ALL.len());
        assert!(Suite::parse_list("nope").is_err());
    }

    #[test]
    fn small_suites_pass() {
        let mut w = bench(vec![4], vec![1], 20);
        for s in Suite::ALL {
            let rows = w.run(s).unwrap();
            assert!(!rows.is_empty(), "{}", s.name());
            for r in rows {
                assert!(r.ok, "{r:?}");
            }
        }
    }

    #[test]
    fn csv_has_header_and_rows() {
        let rows = bench(vec![4], vec![1], 1).run(Suite::Cardinality).unwrap();
        let text = rows_csv(&rows).unwrap();
        assert!(text.starts_with("suite,check,params,expected,got,ok\n"));
        assert_eq!(text.lines().count(), 3);
    }

    #[test]
    fn same_seed_same_rows() {
        let a = bench(vec![4], vec![2], 30).run(Suite::Bounds).unwrap();
        let b = bench(vec![4], vec![2], 30).run(Suite::Bounds).unwrap();
        assert_eq!(a, b);
    }
}
