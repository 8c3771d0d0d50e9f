//! Normal forms modulo the relations.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{Coeff, Polynomial};
use crate::prelie::HatLie;
use crate::report::Check;
use crate::rules::{expand, find_match, find_match_innermost, FamilySet, RuleMatch};
use crate::sample::Sampler;
use crate::word::Word;

pub const DEFAULT_STEP_LIMIT: u64 = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Rewrite the largest monomial first, at its leftmost-outermost match.
    #[default]
    LargestFirst,
    /// Rewrite the smallest reducible monomial first, at its
    /// rightmost-innermost match.
    SmallestInnermost,
}

/// One rewrite: `coeff * ambient` was replaced by `coeff * expand(m)`.
#[derive(Debug, Clone)]
pub struct TraceStep {
    pub coeff: Coeff,
    pub rule: RuleMatch,
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub normal_form: Polynomial,
    pub steps: u64,
    pub trace: Vec<TraceStep>,
}

#[derive(Debug, Clone)]
pub struct Reducer<'a> {
    hat: &'a HatLie,
    families: FamilySet,
    strategy: Strategy,
    step_limit: u64,
    traced: bool,
}

impl<'a> Reducer<'a> {
    pub fn new(hat: &'a HatLie) -> Self {
        Reducer {
            hat,
            families: FamilySet::ALL,
            strategy: Strategy::default(),
            step_limit: DEFAULT_STEP_LIMIT,
            traced: false,
        }
    }

    pub fn families(mut self, families: FamilySet) -> Self {
        self.families = families;
        self
    }

    pub fn strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn step_limit(mut self, limit: u64) -> Self {
        self.step_limit = limit;
        self
    }

    pub fn traced(mut self, traced: bool) -> Self {
        self.traced = traced;
        self
    }

    fn locate(&self, w: &Word) -> Option<RuleMatch> {
        match self.strategy {
            Strategy::LargestFirst => find_match(w, self.families),
            Strategy::SmallestInnermost => find_match_innermost(w, self.families),
        }
    }

    pub fn reduce(&self, p: &Polynomial) -> Result<Reduction> {
        let mut pending: BTreeMap<Word, Coeff> = p.iter().map(|(w, c)| (w.clone(), c.clone())).collect();
        let mut done = Polynomial::zero();
        let mut steps = 0u64;
        let mut trace = Vec::new();

        loop {
            let entry = match self.strategy {
                Strategy::LargestFirst => pending.pop_last(),
                Strategy::SmallestInnermost => pending.pop_first(),
            };
            let Some((w, c)) = entry else { break };
            let Some(m) = self.locate(&w) else {
                done.add_term(w, c);
                continue;
            };
            steps += 1;
            if steps > self.step_limit {
                return Err(Error::StepLimit(self.step_limit));
            }
            for (u, d) in expand(&m, self.hat)?.iter() {
                let e = pending.entry(u.clone()).or_insert_with(Coeff::zero);
                *e += &c * d;
                if e.is_zero() {
                    pending.remove(u);
                }
            }
            if self.traced {
                trace.push(TraceStep { coeff: c, rule: m });
            }
        }
        Ok(Reduction {
            normal_form: done,
            steps,
            trace,
        })
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        self.reduce(p).map(|r| r.normal_form)
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        find_match(w, self.families).is_none()
    }
}

/// Compositional normal forms with a per-word cache: `nf(w)` is `w` when
/// irreducible and otherwise the combination of `nf(u)` over the terms `u`
/// of the leftmost-outermost expansion. Every cached entry is the result of
/// an honest rewriting sequence, so the cache never changes the answer of a
/// single strategy, only its cost.
pub struct MemoReducer<'a> {
    hat: &'a HatLie,
    families: FamilySet,
    cache: HashMap<Word, Arc<Polynomial>>,
    max_cache: usize,
    step_limit: u64,
    steps: u64,
}

impl<'a> MemoReducer<'a> {
    pub fn new(hat: &'a HatLie) -> Self {
        MemoReducer {
            hat,
            families: FamilySet::ALL,
            cache: HashMap::new(),
            max_cache: 200_000,
            step_limit: DEFAULT_STEP_LIMIT,
            steps: 0,
        }
    }

    pub fn families(mut self, families: FamilySet) -> Self {
        self.families = families;
        self.cache.clear();
        self
    }

    pub fn max_cache(mut self, entries: usize) -> Self {
        self.max_cache = entries;
        self
    }

    pub fn normal_form(&mut self, p: &Polynomial) -> Result<Polynomial> {
        if self.cache.len() > self.max_cache {
            self.cache.clear();
        }
        self.steps = 0;
        let mut out = Polynomial::zero();
        for (w, c) in p.iter() {
            let nf = self.word_nf(w)?;
            out.add_scaled(c, &nf);
        }
        Ok(out)
    }

    fn word_nf(&mut self, w: &Word) -> Result<Arc<Polynomial>> {
        if let Some(nf) = self.cache.get(w) {
            return Ok(nf.clone());
        }
        let nf = match find_match(w, self.families) {
            None => Polynomial::monomial(w.clone()),
            Some(m) => {
                self.steps += 1;
                if self.steps > self.step_limit {
                    return Err(Error::StepLimit(self.step_limit));
                }
                let mut acc = Polynomial::zero();
                for (u, c) in expand(&m, self.hat)?.iter() {
                    let sub = self.word_nf(u)?;
                    acc.add_scaled(c, &sub);
                }
                acc
            }
        };
        let nf = Arc::new(nf);
        self.cache.insert(w.clone(), nf.clone());
        Ok(nf)
    }
}

/// Normal form under the default strategy.
pub fn normal_form(p: &Polynomial, hat: &HatLie, families: FamilySet) -> Result<Polynomial> {
    Reducer::new(hat).families(families).normal_form(p)
}

pub fn is_irreducible(w: &Word) -> bool {
    find_match(w, FamilySet::ALL).is_none()
}

/// Reduces `count` sampled polynomials under both strategies and records
/// every disagreement.
pub fn confluence_sample(
    hat: &HatLie,
    count: usize,
    max_letters: u32,
    max_deg_r: u32,
    seed: u64,
) -> Result<Check> {
    let mut sampler = Sampler::new(seed, hat.dim());
    let first = Reducer::new(hat);
    let second = Reducer::new(hat).strategy(Strategy::SmallestInnermost);
    let mut check = Check::new("confluence");
    for _ in 0..count {
        let p = sampler.polynomial(3, max_letters, max_deg_r);
        let a = first.normal_form(&p)?;
        let b = second.normal_form(&p)?;
        check.record(a == b, || {
            (p.to_string(), format!("{a} versus {b}"))
        });
    }
    Ok(check)
}
