//! Compositions of relations and the bounded basis check.
//!
//! The check is finite: only relations whose leading word fits the bounds
//! are paired, so a pass means no nontrivial composition exists below the
//! bound, nothing more.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::prelie::HatLie;
use crate::reduce::MemoReducer;
use crate::rules::{enumerate_relations, Relation, RuleFamily};
use crate::word::{Atom, Letter, StarWord, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CompositionKind {
    Intersection,
    Inclusion,
}

impl fmt::Display for CompositionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CompositionKind::Intersection => "intersection",
            CompositionKind::Inclusion => "inclusion",
        })
    }
}

#[derive(Debug, Clone)]
pub enum CompositionData {
    /// `w = f̄ mu = nu ḡ`.
    Intersection { mu: Word, nu: Word },
    /// `w = f̄ = q|ḡ`.
    Inclusion { q: StarWord },
}

#[derive(Debug, Clone)]
pub struct Composition<'a> {
    pub f: &'a Relation,
    pub g: &'a Relation,
    pub w: Word,
    pub data: CompositionData,
    pub value: Polynomial,
}

impl Composition<'_> {
    pub fn kind(&self) -> CompositionKind {
        match self.data {
            CompositionData::Intersection { .. } => CompositionKind::Intersection,
            CompositionData::Inclusion { .. } => CompositionKind::Inclusion,
        }
    }

    fn assert_well_formed(&self) {
        match &self.data {
            CompositionData::Intersection { mu, nu } => {
                assert_eq!(self.f.lhs.concat(mu), self.w);
                assert_eq!(nu.concat(&self.g.lhs), self.w);
                assert!(self.w.deg() < self.f.lhs.deg() + self.g.lhs.deg());
            }
            CompositionData::Inclusion { q } => {
                assert_eq!(self.f.lhs, self.w);
                assert_eq!(q.substitute(&self.g.lhs), self.w);
            }
        }
        if let Ok(lead) = self.value.leading_monomial() {
            assert!(lead < &self.w, "composition value not below {}", self.w);
        }
    }
}

/// All top-level overlaps `f̄ mu = nu ḡ` with nonempty `mu`, `nu`.
pub fn intersection_compositions<'a>(f: &'a Relation, g: &'a Relation) -> Vec<Composition<'a>> {
    let a = f.lhs.atoms();
    let b = g.lhs.atoms();
    let mut out = Vec::new();
    for o in 1..a.len().min(b.len()) {
        if a[a.len() - o..] != b[..o] {
            continue;
        }
        let mu = Word::new(b[o..].to_vec());
        let nu = Word::new(a[..a.len() - o].to_vec());
        let w = f.lhs.concat(&mu);
        let value = &f.poly.mul_word_right(&mu) - &g.poly.mul_word_left(&nu);
        let c = Composition {
            f,
            g,
            w,
            data: CompositionData::Intersection { mu, nu },
            value,
        };
        c.assert_well_formed();
        out.push(c);
    }
    out
}

fn inclusion_at<'a>(f: &'a Relation, g: &'a Relation, q: StarWord) -> Composition<'a> {
    let value = &f.poly - &g.poly.in_context(&q);
    let c = Composition {
        f,
        g,
        w: f.lhs.clone(),
        data: CompositionData::Inclusion { q },
        value,
    };
    c.assert_well_formed();
    c
}

/// One composition per occurrence of `ḡ` in `f̄`, at any depth, except the
/// whole-word occurrence of a relation in itself.
pub fn inclusion_compositions<'a>(f: &'a Relation, g: &'a Relation) -> Vec<Composition<'a>> {
    f.lhs
        .occurrences(&g.lhs)
        .into_iter()
        .filter(|q| !(q.is_hole() && f.lhs == g.lhs))
        .map(|q| inclusion_at(f, g, q))
        .collect()
}

pub fn check_trivial(c: &Composition<'_>, reducer: &mut MemoReducer<'_>) -> Result<bool> {
    Ok(reducer.normal_form(&c.value)?.is_zero())
}

/// Count of checked compositions and failures for one (kind, f, g) class.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Tally {
    pub total: u64,
    pub failures: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GsbFailure {
    pub kind: CompositionKind,
    pub f_family: RuleFamily,
    pub g_family: RuleFamily,
    pub f: String,
    pub g: String,
    pub w: String,
    pub residue: String,
}

#[derive(Debug, Clone)]
pub struct GsbReport {
    pub max_deg: u32,
    pub max_deg_r: u32,
    pub relations: usize,
    pub tallies: BTreeMap<(CompositionKind, RuleFamily, RuleFamily), Tally>,
    pub failures: Vec<GsbFailure>,
}

impl GsbReport {
    pub fn total(&self) -> u64 {
        self.tallies.values().map(|t| t.total).sum()
    }

    pub fn failure_count(&self) -> u64 {
        self.tallies.values().map(|t| t.failures).sum()
    }

    pub fn passed(&self) -> bool {
        self.failure_count() == 0
    }
}

/// Failure witnesses kept in a report; counts are always complete.
pub const MAX_WITNESSES: usize = 50;

struct Index<'a> {
    by_lhs: HashMap<&'a Word, usize>,
    by_first: HashMap<&'a Atom, Vec<usize>>,
}

impl<'a> Index<'a> {
    fn new(relations: &'a [Relation]) -> Self {
        let mut by_lhs = HashMap::new();
        let mut by_first: HashMap<&Atom, Vec<usize>> = HashMap::new();
        for (i, r) in relations.iter().enumerate() {
            by_lhs.insert(&r.lhs, i);
            by_first.entry(&r.lhs.atoms()[0]).or_default().push(i);
        }
        Index { by_lhs, by_first }
    }
}

#[derive(Default)]
struct Partial {
    tallies: BTreeMap<(CompositionKind, RuleFamily, RuleFamily), Tally>,
    failures: Vec<GsbFailure>,
}

impl Partial {
    fn record(&mut self, c: &Composition<'_>, residue: Option<Polynomial>) {
        let t = self
            .tallies
            .entry((c.kind(), c.f.family(), c.g.family()))
            .or_default();
        t.total += 1;
        if let Some(residue) = residue {
            t.failures += 1;
            if self.failures.len() < MAX_WITNESSES {
                self.failures.push(GsbFailure {
                    kind: c.kind(),
                    f_family: c.f.family(),
                    g_family: c.g.family(),
                    f: c.f.lhs.to_string(),
                    g: c.g.lhs.to_string(),
                    w: c.w.to_string(),
                    residue: residue.to_string(),
                });
            }
        }
    }

    fn merge(mut self, other: Partial) -> Partial {
        for (k, t) in other.tallies {
            let e = self.tallies.entry(k).or_default();
            e.total += t.total;
            e.failures += t.failures;
        }
        for f in other.failures {
            if self.failures.len() < MAX_WITNESSES {
                self.failures.push(f);
            }
        }
        self
    }
}

/// Checks every composition whose first relation is `relations[i]`.
fn check_from(
    i: usize,
    relations: &[Relation],
    index: &Index<'_>,
    reducer: &mut MemoReducer<'_>,
) -> Result<Partial> {
    let f = &relations[i];
    let mut part = Partial::default();
    let mut check = |c: Composition<'_>, part: &mut Partial| -> Result<()> {
        let nf = reducer.normal_form(&c.value)?;
        part.record(&c, (!nf.is_zero()).then_some(nf));
        Ok(())
    };

    let a = f.lhs.atoms();
    for o in 1..a.len() {
        let Some(cands) = index.by_first.get(&a[a.len() - o]) else {
            continue;
        };
        for &j in cands {
            let g = &relations[j];
            for c in intersection_compositions(f, g) {
                if let CompositionData::Intersection { nu, .. } = &c.data {
                    if nu.deg() == a.len() - o {
                        check(c, &mut part)?;
                    }
                }
            }
        }
    }

    for (q, sub) in f.lhs.subwords() {
        let Some(&j) = index.by_lhs.get(&sub) else {
            continue;
        };
        if j == i && q.is_hole() {
            continue;
        }
        check(inclusion_at(f, &relations[j], q), &mut part)?;
    }
    Ok(part)
}

/// Enumerates the relations within the bounds and checks all their
/// compositions, `jobs` worker threads (0 = rayon default).
pub fn verify_gsb(hat: &HatLie, max_deg: u32, max_deg_r: u32, jobs: usize) -> Result<GsbReport> {
    let relations = enumerate_relations(hat, max_deg, max_deg_r)?;
    verify_relations(hat, &relations, max_deg, max_deg_r, jobs)
}

pub fn verify_relations(
    hat: &HatLie,
    relations: &[Relation],
    max_deg: u32,
    max_deg_r: u32,
    jobs: usize,
) -> Result<GsbReport> {
    let index = Index::new(relations);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Params(e.to_string()))?;
    let parts: Vec<Result<Partial>> = pool.install(|| {
        (0..relations.len())
            .into_par_iter()
            .map_init(
                || MemoReducer::new(hat),
                |reducer, i| check_from(i, relations, &index, reducer),
            )
            .collect()
    });
    let mut total = Partial::default();
    for p in parts {
        total = total.merge(p?);
    }
    Ok(GsbReport {
        max_deg,
        max_deg_r,
        relations: relations.len(),
        tallies: total.tallies,
        failures: total.failures,
    })
}

/// Parameters of the proof identity: the pieces
/// `[R(z1)] X1 R(z2) .. R(zs) Xs [R(z_{s+1})]` and the letter `x_beta`,
/// which must be the largest letter of `Xs` (it need not occur in it).
#[derive(Debug, Clone)]
pub struct ProofIdentityParams {
    pub z_first: Option<Word>,
    pub blocks: Vec<Vec<Letter>>,
    /// `z2 .. zs`.
    pub inner: Vec<Word>,
    pub z_last: Option<Word>,
    pub beta: u16,
}

impl ProofIdentityParams {
    fn validate(&self) -> Result<()> {
        let s = self.blocks.len();
        let bad = |msg: &str| Err(Error::Params(msg.to_string()));
        if s == 0 || self.blocks.iter().any(Vec::is_empty) {
            return bad("need s >= 1 nonempty blocks");
        }
        if self.inner.len() != s - 1 {
            return bad("need exactly s - 1 inner arguments");
        }
        if self.blocks.iter().flatten().any(|l| !l.is_x()) {
            return bad("blocks must consist of x letters");
        }
        let zs = self.z_first.iter().chain(&self.inner).chain(&self.z_last);
        if zs.into_iter().any(|z| z.as_single_letter().is_some()) {
            return bad("R-arguments must not be single letters");
        }
        if self.blocks[s - 1].iter().any(|l| l.index > self.beta) {
            return bad("x_beta must be the largest letter of the last block");
        }
        Ok(())
    }

    fn zs(&self) -> Vec<Option<&Word>> {
        let mut zs = vec![self.z_first.as_ref()];
        zs.extend(self.inner.iter().map(Some));
        zs.push(self.z_last.as_ref());
        zs
    }

    /// Atoms with optional edits: unwrap slot `unwrap`, and replace block `j`
    /// by `replacement`.
    fn atoms(&self, unwrap: Option<usize>, replacement: Option<(usize, &[Letter])>) -> Vec<Atom> {
        let zs = self.zs();
        let mut out = Vec::new();
        let push_z = |j: usize, out: &mut Vec<Atom>| {
            if let Some(z) = zs[j] {
                if unwrap == Some(j) {
                    out.extend_from_slice(z.atoms());
                } else {
                    out.push(Atom::wrap(z.clone()));
                }
            }
        };
        for (j, block) in self.blocks.iter().enumerate() {
            push_z(j, &mut out);
            let letters = match replacement {
                Some((rj, rep)) if rj == j => rep,
                _ => block,
            };
            out.extend(letters.iter().map(|&l| Atom::Letter(l)));
        }
        push_z(self.blocks.len(), &mut out);
        out
    }
}

/// The combination from the inclusion case of a straightening inside the
/// last block of a long relation, which must vanish modulo the relations.
///
/// With `K` the positions of `x_beta` in `Xs` and `p = |K|`, and `X0` the
/// block `Xs` with every `x_beta` removed followed by `y_beta x_beta^(p-1)`:
///
/// `T - sum_j R(.. z_j ..) - sum_{t not in K} R(.. X|t->y ..)
///    - sum_{t in K} (R(.. Xs|t->y ..) - R(.. X0 ..)) - p R(.. X0 ..)`
///
/// where `T` is the unwrapped word.
pub fn proof_identity_a(params: &ProofIdentityParams) -> Result<Polynomial> {
    params.validate()?;
    let s = params.blocks.len();
    let beta = Letter::x(params.beta);
    let wrapped = |atoms: Vec<Atom>| Polynomial::monomial(Word::wrapped(Word::new(atoms)));

    let mut a = Polynomial::monomial(Word::new(params.atoms(None, None)));
    let minus = |a: &mut Polynomial, p: Polynomial| *a = &*a - &p;

    for (j, z) in params.zs().into_iter().enumerate() {
        if z.is_some() {
            minus(&mut a, wrapped(params.atoms(Some(j), None)));
        }
    }

    let last = &params.blocks[s - 1];
    let k: Vec<usize> = (0..last.len()).filter(|&t| last[t] == beta).collect();
    let p = k.len();
    let x0 = (p > 0).then(|| {
        let mut block: Vec<Letter> = last.iter().copied().filter(|&l| l != beta).collect();
        block.push(beta.partner());
        block.extend(std::iter::repeat_n(beta, p - 1));
        wrapped(params.atoms(None, Some((s - 1, &block))))
    });

    for (j, block) in params.blocks.iter().enumerate() {
        for t in 0..block.len() {
            let mut edited = block.clone();
            edited[t] = edited[t].partner();
            let term = wrapped(params.atoms(None, Some((j, &edited))));
            match &x0 {
                Some(x0) if j == s - 1 && k.contains(&t) => minus(&mut a, &term - x0),
                _ => minus(&mut a, term),
            }
        }
    }
    if let Some(x0) = &x0 {
        minus(&mut a, x0.scale(&crate::poly::int(p as i64)));
    }
    Ok(a)
}

pub fn check_proof_identity_a(params: &ProofIdentityParams, hat: &HatLie) -> Result<bool> {
    let a = proof_identity_a(params)?;
    Ok(MemoReducer::new(hat).normal_form(&a)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, ratio};
    use crate::prelie::{build_hat, PreLieAlgebra};
    use crate::rules::MatchParams;

    fn x(i: u16) -> Atom {
        Atom::Letter(Letter::x(i))
    }
    fn y(i: u16) -> Atom {
        Atom::Letter(Letter::y(i))
    }
    fn r(atoms: Vec<Atom>) -> Atom {
        Atom::wrap(Word::new(atoms))
    }
    fn rel(h: &HatLie, atoms: Vec<Atom>) -> Relation {
        let params = crate::rules::relation_params(&Word::new(atoms)).unwrap();
        Relation::from_params(params, h).unwrap()
    }
    fn unit() -> HatLie {
        build_hat(&PreLieAlgebra::unit_extended()).unwrap()
    }

    #[test]
    fn straighten_overlap() {
        let h = unit();
        let f = rel(&h, vec![x(2), x(1)]);
        let g = rel(&h, vec![x(1), y(1)]);
        let cs = intersection_compositions(&f, &g);
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].w, Word::new(vec![x(2), x(1), y(1)]));
        let mut red = MemoReducer::new(&h);
        assert!(check_trivial(&cs[0], &mut red).unwrap());
        assert!(intersection_compositions(&f, &f).is_empty());
    }

    #[test]
    fn rb_triple_overlap() {
        let h = unit();
        let a = vec![y(1), y(2)];
        let b = vec![x(1), y(1)];
        let c = vec![y(2)];
        let f = rel(&h, vec![r(a.clone()), r(b.clone())]);
        let g = rel(&h, vec![r(b.clone()), r(c.clone())]);
        let cs = intersection_compositions(&f, &g);
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].w, Word::new(vec![r(a), r(b), r(c)]));
        assert!(check_trivial(&cs[0], &mut MemoReducer::new(&h)).unwrap());
    }

    #[test]
    fn inclusion_inside_xzero() {
        let h = unit();
        let z = vec![y(1), y(2)];
        let f = rel(&h, vec![r(vec![x(1), x(2), x(1), r(z)])]);
        let g = rel(&h, vec![x(2), x(1)]);
        let cs = inclusion_compositions(&f, &g);
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].kind(), CompositionKind::Inclusion);
        assert!(check_trivial(&cs[0], &mut MemoReducer::new(&h)).unwrap());
        // longer word never occurs in a shorter one
        assert!(inclusion_compositions(&g, &f).is_empty());
        // self inclusion at the root is skipped
        assert!(inclusion_compositions(&g, &g).is_empty());
    }

    #[test]
    fn nested_long_relations() {
        let h = unit();
        let inner = vec![y(1), x(1), r(vec![y(2), y(2)])];
        let f = rel(&h, vec![r(vec![y(2), r(inner.clone())])]);
        let g = rel(&h, vec![r(inner)]);
        assert!(matches!(f.params, MatchParams::YCollapse { .. }));
        assert!(matches!(g.params, MatchParams::YCollapse { .. }));
        let cs = inclusion_compositions(&f, &g);
        assert_eq!(cs.len(), 1);
        assert!(check_trivial(&cs[0], &mut MemoReducer::new(&h)).unwrap());
    }

    #[test]
    fn perturbed_relation_is_detected() {
        let h = build_hat(&PreLieAlgebra::idempotent_line()).unwrap();
        let f = rel(&h, vec![r(vec![y(1), x(1), r(vec![x(1), y(1)])])]);
        let g = rel(&h, vec![x(1), y(1)]);
        let cs = inclusion_compositions(&f, &g);
        assert_eq!(cs.len(), 1);
        assert!(check_trivial(&cs[0], &mut MemoReducer::new(&h)).unwrap());

        let mut bad = f.clone();
        let tail = bad
            .poly
            .iter()
            .find(|(w, _)| w.deg_r() > 0 && **w != bad.lhs)
            .map(|(w, c)| (w.clone(), c.clone()))
            .unwrap();
        bad.poly.add_term(tail.0, &tail.1 * ratio(1, 3));
        let cs = inclusion_compositions(&bad, &g);
        assert!(!check_trivial(&cs[0], &mut MemoReducer::new(&h)).unwrap());
    }

    #[test]
    fn composition_values_sit_below_w() {
        let h = unit();
        let rels = enumerate_relations(&h, 3, 2).unwrap();
        let mut seen = 0;
        for f in &rels {
            for g in &rels {
                for c in intersection_compositions(f, g)
                    .into_iter()
                    .chain(inclusion_compositions(f, g))
                {
                    if let Ok(lead) = c.value.leading_monomial() {
                        assert!(lead < &c.w);
                    }
                    seen += 1;
                }
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn indexed_search_matches_pairwise_search() {
        let h = unit();
        let rels = enumerate_relations(&h, 3, 2).unwrap();
        let mut pairwise = 0u64;
        for f in &rels {
            for g in &rels {
                pairwise += intersection_compositions(f, g).len() as u64;
                pairwise += inclusion_compositions(f, g).len() as u64;
            }
        }
        let report = verify_relations(&h, &rels, 3, 2, 1).unwrap();
        assert_eq!(report.total(), pairwise);
        assert!(report.passed(), "{:?}", report.failures);
    }

    #[test]
    fn vacuous_bounds() {
        let h = unit();
        let report = verify_gsb(&h, 1, 0, 1).unwrap();
        assert_eq!(report.total(), 0);
        assert!(report.passed());
    }

    #[test]
    fn small_bounds_pass() {
        for a in [PreLieAlgebra::idempotent_line(), PreLieAlgebra::unit_extended()] {
            let h = build_hat(&a).unwrap();
            let report = verify_gsb(&h, 3, 2, 1).unwrap();
            assert!(report.passed(), "{:?}", report.failures);
            assert!(report.total() > 0);
        }
    }

    #[test]
    fn proof_identity_examples() {
        let h = unit();
        let z = Word::new(vec![y(1), y(2)]);
        let one = ProofIdentityParams {
            z_first: None,
            blocks: vec![vec![Letter::x(2)]],
            inner: vec![],
            z_last: None,
            beta: 2,
        };
        assert!(check_proof_identity_a(&one, &h).unwrap());
        // p = 0: x_beta does not occur in the last block
        let none = ProofIdentityParams {
            z_first: Some(z.clone()),
            blocks: vec![vec![Letter::x(1)]],
            inner: vec![],
            z_last: None,
            beta: 2,
        };
        assert!(check_proof_identity_a(&none, &h).unwrap());
        let two = ProofIdentityParams {
            z_first: None,
            blocks: vec![vec![Letter::x(1)], vec![Letter::x(2), Letter::x(1), Letter::x(2)]],
            inner: vec![z.clone()],
            z_last: Some(Word::new(vec![r(vec![y(2)]), y(1)])),
            beta: 2,
        };
        assert!(check_proof_identity_a(&two, &h).unwrap());
        let malformed = ProofIdentityParams {
            inner: vec![Word::new(vec![y(1)])],
            ..two.clone()
        };
        assert!(matches!(proof_identity_a(&malformed), Err(Error::Params(_))));
    }

    #[test]
    fn proof_identity_is_the_expanded_product() {
        // single block x1 with beta = 1: T = x1, the only other term is R(y1)
        let a = proof_identity_a(&ProofIdentityParams {
            z_first: None,
            blocks: vec![vec![Letter::x(1)]],
            inner: vec![],
            z_last: None,
            beta: 1,
        })
        .unwrap();
        let expected = Polynomial::from_terms([
            (Word::new(vec![x(1)]), int(1)),
            (Word::new(vec![r(vec![y(1)])]), int(-1)),
        ]);
        assert_eq!(a, expected);
    }
}
