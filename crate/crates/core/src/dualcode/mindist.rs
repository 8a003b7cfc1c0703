//! Minimum distance of the dual code.
//!
//! Three searches, all exact when they run to completion:
//! - [`Method::ExhaustiveSupport`]: smallest set of linearly dependent
//!   incidence columns, by support size. A minimal dependent set is exactly
//!   the support of a minimum-weight word.
//! - [`Method::CodewordEnum`]: walks every word of the dual code.
//! - [`Method::BrouwerZimmermann`]: enumerates small combinations of rows of
//!   systematic generator matrices for a chain of information sets.

use alloc::vec;
use alloc::vec::Vec;

use super::linalg::{self, BitRows, ByteRows, FpRows};
use super::{is_codeword, CodeWord, IncidenceMatrix};
use crate::budget::{Budget, Meter};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ExhaustiveSupport,
    CodewordEnum,
    BrouwerZimmermann,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::ExhaustiveSupport => "exhaustive_support",
            Method::CodewordEnum => "codeword_enum",
            Method::BrouwerZimmermann => "bz",
        }
    }

    /// Accepts the canonical names and the short forms `exhaustive`, `enum`.
    pub fn parse(s: &str) -> Option<Method> {
        match s {
            "exhaustive_support" | "exhaustive" => Some(Method::ExhaustiveSupport),
            "codeword_enum" | "enum" => Some(Method::CodewordEnum),
            "bz" | "brouwer_zimmermann" => Some(Method::BrouwerZimmermann),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// The search finished; the result is certified.
    Completed,
    /// The budget ran out mid-search.
    BudgetExhausted,
    /// Certification was predicted not to fit in the remaining budget.
    Uncertifiable,
    /// The exhaustive search reached its support-size cap.
    SupportCap,
}

#[derive(Debug, Clone)]
pub struct MinDistOptions {
    /// `None` picks by size.
    pub method: Option<Method>,
    /// Largest support size the exhaustive search tries.
    pub max_support: usize,
    /// Largest dual dimension the full enumeration accepts.
    pub max_enum_dimension: usize,
    /// Known code words; the nonzero ones seed the upper bound.
    pub seeds: Vec<CodeWord>,
    /// Let the information-set search stop as soon as it predicts that the
    /// lower bound cannot reach the upper bound within the budget.
    pub stop_when_uncertifiable: bool,
}

impl Default for MinDistOptions {
    fn default() -> Self {
        MinDistOptions {
            method: None,
            max_support: 8,
            max_enum_dimension: 24,
            seeds: Vec::new(),
            stop_when_uncertifiable: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct MinDistReport {
    pub method: Method,
    /// Smallest nonzero weight seen; `None` if no nonzero word was seen.
    pub best: Option<usize>,
    /// Every nonzero word has at least this weight.
    pub lower_bound: usize,
    /// `best == lower_bound`: the minimum distance is exactly `best`.
    pub certified: bool,
    pub certificate: Option<CodeWord>,
    pub stop: StopReason,
    pub steps: u64,
    pub seconds: f64,
    pub dual_dimension: usize,
    /// New columns contributed by each information set (information-set search only).
    pub info_set_ranks: Vec<usize>,
    /// Enumeration depth (or support size) fully completed.
    pub levels_completed: usize,
}

/// Picks the method the way [`min_distance`] does when none is given.
pub fn default_method(a: &IncidenceMatrix, opts: &MinDistOptions, dual_dimension: usize) -> Method {
    if a.n_points() <= 64 || opts.max_support <= 6 {
        Method::ExhaustiveSupport
    } else if dual_dimension <= opts.max_enum_dimension {
        Method::CodewordEnum
    } else {
        Method::BrouwerZimmermann
    }
}

pub fn min_distance(a: &IncidenceMatrix, opts: &MinDistOptions, budget: &Budget<'_>) -> Result<MinDistReport> {
    if a.field().p() == 2 {
        run::<BitRows>(a, opts, budget)
    } else {
        run::<ByteRows>(a, opts, budget)
    }
}

struct Best {
    weight: usize,
    word: Option<Vec<u8>>,
}

impl Best {
    fn offer(&mut self, weight: usize, word: impl FnOnce() -> Vec<u8>) {
        if weight > 0 && weight < self.weight {
            self.weight = weight;
            self.word = Some(word());
        }
    }

    fn best(&self) -> Option<usize> {
        (self.weight != usize::MAX).then_some(self.weight)
    }
}

fn seeded_best(a: &IncidenceMatrix, opts: &MinDistOptions) -> Result<Best> {
    let mut best = Best { weight: usize::MAX, word: None };
    for s in &opts.seeds {
        if !is_codeword(s, a)? {
            return Err(Error::Precondition("seed word is not in the dual code".into()));
        }
        best.offer(s.weight(), || s.entries().to_vec());
    }
    Ok(best)
}

fn run<M: FpRows>(a: &IncidenceMatrix, opts: &MinDistOptions, budget: &Budget<'_>) -> Result<MinDistReport> {
    let mut meter = budget.meter();
    let basis: M = a.dual_basis();
    let k = basis.nrows();
    let method = opts.method.unwrap_or_else(|| default_method(a, opts, k));
    let mut best = seeded_best(a, opts)?;
    let mut report = MinDistReport {
        method,
        best: None,
        lower_bound: 1,
        certified: false,
        certificate: None,
        stop: StopReason::Completed,
        steps: 0,
        seconds: 0.0,
        dual_dimension: k,
        info_set_ranks: Vec::new(),
        levels_completed: 0,
    };
    if k == 0 {
        report.certified = true;
        return Ok(report);
    }
    match method {
        Method::ExhaustiveSupport => exhaustive::<M>(a, opts, &mut meter, &mut best, &mut report)?,
        Method::CodewordEnum => enumerate_all(&basis, opts, &mut meter, &mut best, &mut report)?,
        Method::BrouwerZimmermann => brouwer_zimmermann(&basis, opts, &mut meter, &mut best, &mut report),
    }
    report.best = best.best();
    if let Some(b) = report.best {
        report.lower_bound = report.lower_bound.min(b);
        report.certified = report.lower_bound == b;
    }
    report.certificate = best.word.map(|w| CodeWord::new(a.field(), w)).transpose()?;
    report.steps = meter.steps();
    report.seconds = meter.elapsed();
    Ok(report)
}

const CHECK_EVERY: u64 = 1 << 12;

fn out_of_budget(meter: &mut Meter<'_>) -> bool {
    meter.tick(1);
    meter.steps() % CHECK_EVERY == 0 && meter.exhausted()
}

fn first_nonzero<M: FpRows>(m: &M, r: usize) -> Option<usize> {
    (0..m.ncols()).find(|&c| m.get(r, c) != 0)
}

enum Flow {
    Found(Vec<usize>),
    Exhausted,
    Aborted,
}

struct Circuit<'m, M> {
    cols: &'m M,
    basis: M,
    work: M,
    pivots: Vec<usize>,
    chosen: Vec<usize>,
}

impl<M: FpRows> Circuit<'_, M> {
    /// Looks for `s` dependent columns extending the independent `chosen`.
    fn search(&mut self, s: usize, start: usize, meter: &mut Meter<'_>) -> Flow {
        let f = self.cols.field();
        let depth = self.chosen.len();
        let n = self.cols.nrows();
        for j in start..=n.saturating_sub(s - depth) {
            if out_of_budget(meter) {
                return Flow::Aborted;
            }
            self.work.copy_row_from(depth, self.cols, j);
            for k in 0..depth {
                let v = self.work.get(depth, self.pivots[k]);
                if v != 0 {
                    self.work.add_scaled_from(depth, &self.basis, k, f.neg(v));
                }
            }
            let Some(pc) = first_nonzero(&self.work, depth) else {
                if depth == s - 1 {
                    let mut found = self.chosen.clone();
                    found.push(j);
                    return Flow::Found(found);
                }
                continue;
            };
            if depth == s - 1 {
                continue;
            }
            let inv = f.inv(self.work.get(depth, pc)).expect("nonzero pivot");
            self.work.scale_row(depth, inv);
            self.basis.copy_row_from(depth, &self.work, depth);
            self.pivots.push(pc);
            self.chosen.push(j);
            let flow = self.search(s, j + 1, meter);
            self.chosen.pop();
            self.pivots.pop();
            if !matches!(flow, Flow::Exhausted) {
                return flow;
            }
        }
        Flow::Exhausted
    }
}

fn exhaustive<M: FpRows>(
    a: &IncidenceMatrix,
    opts: &MinDistOptions,
    meter: &mut Meter<'_>,
    best: &mut Best,
    report: &mut MinDistReport,
) -> Result<()> {
    let f = a.field();
    let mut reduced: M = a.dense();
    let rank = linalg::rref(&mut reduced).len();
    let n = a.n_points();
    // column j of the reduced incidence matrix, as row j
    let mut cols = M::zeros(f, n, rank);
    for r in 0..rank {
        for c in 0..n {
            let v = reduced.get(r, c);
            if v != 0 {
                cols.set(c, r, v);
            }
        }
    }
    let cap = opts.max_support.min(rank + 1);
    let mut circuit = Circuit {
        cols: &cols,
        basis: M::zeros(f, cap.max(1), rank),
        work: M::zeros(f, cap.max(1), rank),
        pivots: Vec::new(),
        chosen: Vec::new(),
    };
    for s in 1..=cap {
        if best.best().is_some_and(|b| b <= s) {
            report.lower_bound = s;
            report.stop = StopReason::Completed;
            return Ok(());
        }
        match circuit.search(s, 0, meter) {
            Flow::Found(set) => {
                let coeffs = dependency::<M>(a, &set);
                best.offer(s, || {
                    let mut w = vec![0u8; n];
                    for (&c, &v) in set.iter().zip(&coeffs) {
                        w[c] = v;
                    }
                    w
                });
                report.lower_bound = s;
                report.levels_completed = s;
                report.stop = StopReason::Completed;
                return Ok(());
            }
            Flow::Aborted => {
                report.lower_bound = s;
                report.stop = StopReason::BudgetExhausted;
                return Ok(());
            }
            Flow::Exhausted => {
                report.lower_bound = s + 1;
                report.levels_completed = s;
            }
        }
    }
    report.stop = StopReason::SupportCap;
    Ok(())
}

/// Coefficients of the unique (up to scale) dependency among the given
/// incidence columns, normalised so the first is 1.
fn dependency<M: FpRows>(a: &IncidenceMatrix, set: &[usize]) -> Vec<u8> {
    let f = a.field();
    let mut sub = M::zeros(f, a.n_rows(), set.len());
    for (r, row) in a.rows().iter().enumerate() {
        for (k, &c) in set.iter().enumerate() {
            if row.binary_search(&(c as u32)).is_ok() {
                sub.set(r, k, 1);
            }
        }
    }
    let ns = linalg::null_space(&sub);
    let v = ns.row_vec(0);
    let inv = f.inv(v[0]).expect("circuit coefficients are nonzero");
    v.iter().map(|&x| f.mul(x, inv)).collect()
}

fn enumerate_all<M: FpRows>(
    basis: &M,
    opts: &MinDistOptions,
    meter: &mut Meter<'_>,
    best: &mut Best,
    report: &mut MinDistReport,
) -> Result<()> {
    let k = basis.nrows();
    if k > opts.max_enum_dimension {
        return Err(Error::SizeGuard { what: "dual dimension", predicted: k as u128, cap: opts.max_enum_dimension as u128 });
    }
    let p = basis.field().p();
    let mut word = M::zeros(basis.field(), 1, basis.ncols());
    let mut digits = vec![0u8; k];
    // odometer: bumping digit j by one always adds row j, since p·row = 0
    loop {
        let mut j = 0;
        loop {
            digits[j] += 1;
            word.add_scaled_from(0, basis, j, 1);
            if digits[j] < p {
                break;
            }
            digits[j] = 0;
            j += 1;
            if j == k {
                report.lower_bound = best.best().unwrap_or(1);
                report.levels_completed = k;
                report.stop = StopReason::Completed;
                return Ok(());
            }
        }
        best.offer(word.row_weight(0), || word.row_vec(0));
        if out_of_budget(meter) {
            report.stop = StopReason::BudgetExhausted;
            return Ok(());
        }
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

struct InfoSets<M> {
    mats: Vec<M>,
    ranks: Vec<usize>,
    k: usize,
}

impl<M: FpRows> InfoSets<M> {
    /// Systematic forms for information sets taken greedily from columns
    /// not yet covered.
    fn new(basis: &M) -> Self {
        let n = basis.ncols();
        let k = basis.nrows();
        let mut used = vec![false; n];
        let (mut mats, mut ranks) = (Vec::new(), Vec::new());
        loop {
            let order: Vec<usize> = (0..n).filter(|&c| !used[c]).chain((0..n).filter(|&c| used[c])).collect();
            let mut m = basis.clone();
            let pivots = linalg::rref_with_order(&mut m, &order);
            let fresh: Vec<usize> = pivots.into_iter().filter(|&c| !used[c]).collect();
            if fresh.is_empty() {
                break;
            }
            for &c in &fresh {
                used[c] = true;
            }
            ranks.push(fresh.len());
            mats.push(m);
        }
        InfoSets { mats, ranks, k }
    }

    /// Weight every word outside the enumerated ones must have once all
    /// combinations of `w` rows have been seen.
    fn lower_bound(&self, w: usize) -> usize {
        self.ranks.iter().map(|&r| (w + 1).saturating_sub(self.k - r)).sum()
    }

    fn words_at(&self, w: usize, p: u8) -> f64 {
        self.mats.len() as f64 * binomial(self.k, w) * ((p - 1) as f64).powi(w as i32 - 1)
    }
}

fn combos<M: FpRows>(
    g: &M,
    w: usize,
    start: usize,
    scratch: &mut M,
    depth: usize,
    meter: &mut Meter<'_>,
    best: &mut Best,
) -> bool {
    let p = g.field().p();
    for r in start..g.nrows() {
        let first = if depth == 0 { 1 } else { p - 1 };
        for c in 1..=first {
            scratch.copy_row(depth + 1, depth);
            scratch.add_scaled_from(depth + 1, g, r, c);
            if depth + 1 == w {
                best.offer(scratch.row_weight(depth + 1), || scratch.row_vec(depth + 1));
                if out_of_budget(meter) {
                    return false;
                }
            } else if !combos(g, w, r + 1, scratch, depth + 1, meter, best) {
                return false;
            }
        }
    }
    true
}

fn brouwer_zimmermann<M: FpRows>(
    basis: &M,
    opts: &MinDistOptions,
    meter: &mut Meter<'_>,
    best: &mut Best,
    report: &mut MinDistReport,
) {
    let p = basis.field().p();
    let sets = InfoSets::new(basis);
    report.info_set_ranks = sets.ranks.clone();
    let k = sets.k;
    let mut seen_words = 0.0f64;
    report.lower_bound = sets.lower_bound(0).max(1);
    for w in 1..=k {
        if best.best().is_some_and(|b| sets.lower_bound(w - 1) >= b) {
            report.stop = StopReason::Completed;
            return;
        }
        if opts.stop_when_uncertifiable && w > 1 {
            let ub = best.best().unwrap_or(usize::MAX);
            let target = (w..=k).find(|&t| sets.lower_bound(t) >= ub);
            let needed: f64 = match target {
                Some(t) => (w..=t).map(|t| sets.words_at(t, p)).sum(),
                None => f64::INFINITY,
            };
            let over_steps = meter.remaining_steps().is_some_and(|left| needed > left as f64);
            let over_time = meter.remaining_seconds().is_some_and(|left| {
                let rate = meter.elapsed() / seen_words.max(1.0);
                needed * rate > left
            });
            if over_steps || over_time {
                report.stop = StopReason::Uncertifiable;
                return;
            }
        }
        let mut scratch = M::zeros(basis.field(), w + 1, basis.ncols());
        for g in &sets.mats {
            if !combos(g, w, 0, &mut scratch, 0, meter, best) {
                report.stop = StopReason::BudgetExhausted;
                return;
            }
        }
        seen_words += sets.words_at(w, p);
        report.levels_completed = w;
        report.lower_bound = sets.lower_bound(w).max(1);
    }
    report.stop = StopReason::Completed;
}
