//! Greedy decomposition of a code word into pair words.
//!
//! Each step proposes `n`-spaces spanned by `n+1` independent support
//! points, keeps the ones meeting the support most, and subtracts the pair
//! word `β(v_π - v_{π^σ})` that lowers the weight the most. A step that
//! cannot lower the weight ends the run as a failure; nothing is
//! approximated.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{construct_pair_word, is_codeword_on, CodeWord, PairWordSpec};
use crate::budget::Budget;
use crate::hermitian::HermitianSpace;
use crate::projspace::Subspace;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeelOptions {
    /// Candidates kept per step after ranking.
    pub top_k: usize,
    /// Cap on support subsets examined per step.
    pub max_subsets: usize,
    /// Cap on the number of subtraction steps.
    pub max_steps: usize,
}

impl Default for PeelOptions {
    fn default() -> Self {
        PeelOptions { top_k: 32, max_subsets: 1_000_000, max_steps: 64 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelStep {
    pub spec: PairWordSpec,
    pub beta: u8,
    pub weight_before: usize,
    pub weight_after: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeelFailure {
    /// No candidate lowered the weight.
    Stuck,
    /// `max_steps` reached with a nonzero residual.
    TooManySteps,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelOutcome {
    pub steps: Vec<PeelStep>,
    pub residual: CodeWord,
    /// `None` when the residual is zero.
    pub failure: Option<PeelFailure>,
}

impl PeelOutcome {
    pub fn succeeded(&self) -> bool {
        self.failure.is_none()
    }
}

pub fn peel(space: &HermitianSpace, c: &CodeWord, opts: &PeelOptions, budget: &Budget<'_>) -> Result<PeelOutcome> {
    if !is_codeword_on(c, space)? {
        return Err(Error::Precondition("input is not a code word".into()));
    }
    let mut meter = budget.meter();
    let mut residual = c.clone();
    let mut steps = Vec::new();
    while !residual.is_zero() {
        if steps.len() >= opts.max_steps {
            return Ok(PeelOutcome { steps, residual, failure: Some(PeelFailure::TooManySteps) });
        }
        let Some(cands) = candidates(space, &residual, opts, &mut meter) else {
            return Ok(PeelOutcome { steps, residual, failure: Some(PeelFailure::BudgetExhausted) });
        };
        let mut best: Option<(usize, PeelStep, CodeWord)> = None;
        for pi in cands {
            let spec = PairWordSpec::new(space, pi, 1)?;
            if spec.vertex_dim >= space.n() as isize - 1 {
                continue;
            }
            let word = construct_pair_word(space, &spec)?;
            for beta in 1..residual.field().p() {
                let next = residual.add_scaled(&word, residual.field().neg(beta))?;
                let drop = residual.weight().saturating_sub(next.weight());
                if drop > 0 && best.as_ref().is_none_or(|(d, _, _)| drop > *d) {
                    let step = PeelStep {
                        spec: PairWordSpec { alpha: beta, ..spec.clone() },
                        beta,
                        weight_before: residual.weight(),
                        weight_after: next.weight(),
                    };
                    best = Some((drop, step, next));
                }
            }
        }
        let Some((_, step, next)) = best else {
            return Ok(PeelOutcome { steps, residual, failure: Some(PeelFailure::Stuck) });
        };
        steps.push(step);
        residual = next;
    }
    Ok(PeelOutcome { steps, residual, failure: None })
}

/// The `top_k` distinct `n`-spaces spanned by support points, ranked by how
/// many support points they contain. `None` when the budget runs out.
fn candidates(space: &HermitianSpace, c: &CodeWord, opts: &PeelOptions, meter: &mut crate::budget::Meter<'_>) -> Option<Vec<Subspace>> {
    let pg = space.pg();
    let support = c.support();
    let k = space.n() + 1;
    let mut seen = BTreeSet::new();
    if support.len() >= k {
        let mut idx: Vec<usize> = (0..k).collect();
        let mut examined = 0;
        loop {
            meter.tick(1);
            if meter.exhausted() {
                return None;
            }
            let rows = idx.iter().map(|&i| space.point(support[i] as usize).coords());
            let s = pg.span_of_vectors(rows).expect("same ambient space");
            if s.rank() == k {
                seen.insert(s);
            }
            examined += 1;
            if examined >= opts.max_subsets || !next_combination(&mut idx, support.len()) {
                break;
            }
        }
    }
    let mut scored: Vec<(usize, Subspace)> = seen
        .into_iter()
        .map(|s| {
            let hits = support.iter().filter(|&&x| pg.contains(&s, space.point(x as usize))).count();
            (hits, s)
        })
        .collect();
    // stable: ties keep subspace order
    scored.sort_by(|a, b| b.0.cmp(&a.0));
    Some(scored.into_iter().take(opts.top_k).map(|(_, s)| s).collect())
}

/// Advances a sorted index combination in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldCtx;
    use alloc::sync::Arc;
    use alloc::vec;

    #[test]
    fn combinations_in_order() {
        let mut idx = vec![0, 1];
        let mut all = vec![idx.clone()];
        while next_combination(&mut idx, 4) {
            all.push(idx.clone());
        }
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn single_pair_word_peels_in_one_step() {
        let h = HermitianSpace::new(Arc::new(FieldCtx::from_order(4).unwrap()), 1).unwrap();
        let spec = PairWordSpec::new(&h, h.make_nspace(-1).unwrap(), 1).unwrap();
        let c = construct_pair_word(&h, &spec).unwrap();
        let out = peel(&h, &c, &PeelOptions::default(), &Budget::UNLIMITED).unwrap();
        assert!(out.succeeded());
        assert_eq!(out.steps.len(), 1);
        assert_eq!((out.steps[0].weight_before, out.steps[0].weight_after), (6, 0));
    }

    #[test]
    fn ternary_scaled_word() {
        let h = HermitianSpace::new(Arc::new(FieldCtx::from_order(9).unwrap()), 1).unwrap();
        let spec = PairWordSpec::new(&h, h.make_nspace(-1).unwrap(), 2).unwrap();
        let c = construct_pair_word(&h, &spec).unwrap();
        let out = peel(&h, &c, &PeelOptions::default(), &Budget::UNLIMITED).unwrap();
        assert!(out.succeeded());
        assert_eq!(out.steps.len(), 1);
    }

    #[test]
    fn rejects_non_codewords() {
        let h = HermitianSpace::new(Arc::new(FieldCtx::from_order(4).unwrap()), 1).unwrap();
        let p = crate::gf::PrimeField::new(2).unwrap();
        let bad = CodeWord::from_sparse(p, h.point_count(), &[(0, 1)]).unwrap();
        assert!(peel(&h, &bad, &PeelOptions::default(), &Budget::UNLIMITED).is_err());
    }
}
