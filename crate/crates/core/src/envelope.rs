//! The enveloping Rota-Baxter algebra, worked with through normal forms,
//! and the dendriform and pre-Lie structures it induces.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::poly::{int, Coeff, Polynomial};
use crate::prelie::{HatElem, HatLie, PreLieAlgebra};
use crate::reduce::MemoReducer;
use crate::report::Check;
use crate::rules::{binomial, FamilySet};
use crate::sample::Sampler;
use crate::word::{Atom, Letter, Word};

/// A polynomial all of whose monomials are irreducible.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EnvelopeElem(Polynomial);

impl EnvelopeElem {
    pub fn poly(&self) -> &Polynomial {
        &self.0
    }

    pub fn into_poly(self) -> Polynomial {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, other: &EnvelopeElem) -> EnvelopeElem {
        EnvelopeElem(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &EnvelopeElem) -> EnvelopeElem {
        EnvelopeElem(&self.0 - &other.0)
    }
}

/// Arithmetic in the quotient, backed by a caching reducer.
pub struct Envelope<'a> {
    hat: &'a HatLie,
    reducer: MemoReducer<'a>,
}

impl<'a> Envelope<'a> {
    pub fn new(hat: &'a HatLie) -> Self {
        Envelope {
            hat,
            reducer: MemoReducer::new(hat),
        }
    }

    pub fn hat(&self) -> &HatLie {
        self.hat
    }

    pub fn element(&mut self, p: &Polynomial) -> Result<EnvelopeElem> {
        self.reducer.normal_form(p).map(EnvelopeElem)
    }

    pub fn letter(&mut self, l: Letter) -> EnvelopeElem {
        EnvelopeElem(Polynomial::letter(l))
    }

    pub fn mul(&mut self, p: &EnvelopeElem, q: &EnvelopeElem) -> Result<EnvelopeElem> {
        self.element(&(&p.0 * &q.0))
    }

    pub fn r(&mut self, p: &EnvelopeElem) -> Result<EnvelopeElem> {
        self.element(&p.0.wrap())
    }

    /// `p ≻ q = R(p) q`.
    pub fn succ(&mut self, p: &EnvelopeElem, q: &EnvelopeElem) -> Result<EnvelopeElem> {
        let rp = self.r(p)?;
        self.mul(&rp, q)
    }

    /// `p ≺ q = p R(q)`.
    pub fn prec(&mut self, p: &EnvelopeElem, q: &EnvelopeElem) -> Result<EnvelopeElem> {
        let rq = self.r(q)?;
        self.mul(p, &rq)
    }

    /// `a ∘ b = a ≻ b - b ≺ a`.
    pub fn induced(&mut self, a: &EnvelopeElem, b: &EnvelopeElem) -> Result<EnvelopeElem> {
        let s = self.succ(a, b)?;
        let p = self.prec(b, a)?;
        Ok(s.sub(&p))
    }
}

pub fn env_mul(p: &EnvelopeElem, q: &EnvelopeElem, hat: &HatLie) -> Result<EnvelopeElem> {
    Envelope::new(hat).mul(p, q)
}

pub fn env_r(p: &EnvelopeElem, hat: &HatLie) -> Result<EnvelopeElem> {
    Envelope::new(hat).r(p)
}

pub fn dendriform_succ(p: &EnvelopeElem, q: &EnvelopeElem, hat: &HatLie) -> Result<EnvelopeElem> {
    Envelope::new(hat).succ(p, q)
}

pub fn dendriform_prec(p: &EnvelopeElem, q: &EnvelopeElem, hat: &HatLie) -> Result<EnvelopeElem> {
    Envelope::new(hat).prec(p, q)
}

/// Size of sampled envelope elements: terms, letters per word, R-degree.
#[derive(Debug, Clone, Copy)]
pub struct SampleBounds {
    pub terms: usize,
    pub letters: u32,
    pub deg_r: u32,
}

impl Default for SampleBounds {
    fn default() -> Self {
        SampleBounds {
            terms: 2,
            letters: 2,
            deg_r: 1,
        }
    }
}

fn sample_elem(env: &mut Envelope<'_>, s: &mut Sampler, b: SampleBounds) -> Result<EnvelopeElem> {
    env.element(&s.polynomial(b.terms, b.letters, b.deg_r))
}

fn diff_detail(lhs: &EnvelopeElem, rhs: &EnvelopeElem) -> String {
    format!("difference {}", lhs.sub(rhs).poly())
}

/// `R(u) R(v) = R(R(u) v + u R(v))` on sampled pairs.
pub fn check_rb_in_quotient(hat: &HatLie, samples: usize, bounds: SampleBounds, seed: u64) -> Result<Check> {
    let mut env = Envelope::new(hat);
    let mut s = Sampler::new(seed, hat.dim());
    let mut check = Check::new("rb-law");
    for _ in 0..samples {
        let u = sample_elem(&mut env, &mut s, bounds)?;
        let v = sample_elem(&mut env, &mut s, bounds)?;
        let (ru, rv) = (env.r(&u)?, env.r(&v)?);
        let lhs = env.mul(&ru, &rv)?;
        let inner = env.mul(&ru, &v)?.add(&env.mul(&u, &rv)?);
        let rhs = env.r(&inner)?;
        check.record(lhs == rhs, || {
            (format!("u = {}, v = {}", u.poly(), v.poly()), diff_detail(&lhs, &rhs))
        });
    }
    Ok(check)
}

/// The three dendriform axioms on sampled triples.
pub fn check_dendriform_axioms(hat: &HatLie, samples: usize, bounds: SampleBounds, seed: u64) -> Result<Check> {
    let mut env = Envelope::new(hat);
    let mut s = Sampler::new(seed, hat.dim());
    let mut check = Check::new("dendriform-axioms");
    for _ in 0..samples {
        let a = sample_elem(&mut env, &mut s, bounds)?;
        let b = sample_elem(&mut env, &mut s, bounds)?;
        let c = sample_elem(&mut env, &mut s, bounds)?;
        let witness = || format!("({}, {}, {})", a.poly(), b.poly(), c.poly());

        // (a ≺ b) ≺ c = a ≺ (b ≺ c + b ≻ c)
        let ab = env.prec(&a, &b)?;
        let lhs = env.prec(&ab, &c)?;
        let bc = env.prec(&b, &c)?.add(&env.succ(&b, &c)?);
        let rhs = env.prec(&a, &bc)?;
        check.record(lhs == rhs, || (witness(), format!("first axiom, {}", diff_detail(&lhs, &rhs))));

        // (a ≻ b) ≺ c = a ≻ (b ≺ c)
        let ab = env.succ(&a, &b)?;
        let lhs = env.prec(&ab, &c)?;
        let bc = env.prec(&b, &c)?;
        let rhs = env.succ(&a, &bc)?;
        check.record(lhs == rhs, || (witness(), format!("second axiom, {}", diff_detail(&lhs, &rhs))));

        // (a ≺ b + a ≻ b) ≻ c = a ≻ (b ≻ c)
        let ab = env.prec(&a, &b)?.add(&env.succ(&a, &b)?);
        let lhs = env.succ(&ab, &c)?;
        let bc = env.succ(&b, &c)?;
        let rhs = env.succ(&a, &bc)?;
        check.record(lhs == rhs, || (witness(), format!("third axiom, {}", diff_detail(&lhs, &rhs))));
    }
    Ok(check)
}

/// Left symmetry of the induced product on sampled triples:
/// `(a∘b)∘c - a∘(b∘c) = (b∘a)∘c - b∘(a∘c)`.
pub fn check_left_symmetry(hat: &HatLie, samples: usize, bounds: SampleBounds, seed: u64) -> Result<Check> {
    let mut env = Envelope::new(hat);
    let mut s = Sampler::new(seed, hat.dim());
    let mut check = Check::new("left-symmetry");
    for _ in 0..samples {
        let a = sample_elem(&mut env, &mut s, bounds)?;
        let b = sample_elem(&mut env, &mut s, bounds)?;
        let c = sample_elem(&mut env, &mut s, bounds)?;
        let assoc = |env: &mut Envelope<'_>, a: &EnvelopeElem, b: &EnvelopeElem| -> Result<EnvelopeElem> {
            let ab = env.induced(a, b)?;
            let left = env.induced(&ab, &c)?;
            let bc = env.induced(b, &c)?;
            Ok(left.sub(&env.induced(a, &bc)?))
        };
        let lhs = assoc(&mut env, &a, &b)?;
        let rhs = assoc(&mut env, &b, &a)?;
        check.record(lhs == rhs, || {
            (
                format!("({}, {}, {})", a.poly(), b.poly(), c.poly()),
                diff_detail(&lhs, &rhs),
            )
        });
    }
    Ok(check)
}

fn embed(n: usize, v: &[Coeff]) -> Polynomial {
    let mut p = Polynomial::zero();
    for (k, c) in v.iter().enumerate().take(n) {
        p.add_term(Word::letter(Letter::y(k as u16 + 1)), c.clone());
    }
    p
}

/// The embedding of the pre-Lie algebra into the induced structure:
/// injectivity on the basis, preservation of the product, the enveloping
/// bracket on letters, and left symmetry on samples.
pub fn check_embedding(a: &PreLieAlgebra, hat: &HatLie, samples: usize, seed: u64) -> Result<Vec<Check>> {
    let n = a.dim();
    let mut env = Envelope::new(hat);

    let mut injective = Check::new("embedding-injective");
    let mut images = Vec::new();
    for i in 1..=n as u16 {
        let img = env.element(&Polynomial::letter(Letter::y(i)))?;
        let word = match img.poly().iter().collect::<Vec<_>>().as_slice() {
            [(w, c)] if c.is_one() && crate::reduce::is_irreducible(w) => Some((*w).clone()),
            _ => None,
        };
        let fresh = word.as_ref().is_some_and(|w| !images.contains(w));
        injective.record(fresh, || (format!("y{i}"), format!("image {}", img.poly())));
        if let Some(w) = word {
            images.push(w);
        }
    }

    let mut product = Check::new("embedding-product");
    for i in 0..n {
        for j in 0..n {
            let ya = env.letter(Letter::y(i as u16 + 1));
            let yb = env.letter(Letter::y(j as u16 + 1));
            let lhs = env.induced(&ya, &yb)?;
            let rhs = env.element(&embed(n, a.product(i, j)))?;
            product.record(lhs == rhs, || {
                (format!("e{} e{}", i + 1, j + 1), diff_detail(&lhs, &rhs))
            });
        }
    }

    let mut bracket = Check::new("enveloping-bracket");
    for u in hat.letters() {
        for v in hat.letters() {
            let (eu, ev) = (env.letter(u), env.letter(v));
            let lhs = env.mul(&eu, &ev)?.sub(&env.mul(&ev, &eu)?);
            let rhs = env.element(&hat.bracket_letters(u, v).to_polynomial())?;
            bracket.record(lhs == rhs, || (format!("[{u}, {v}]"), diff_detail(&lhs, &rhs)));
        }
    }

    let symmetric = check_left_symmetry(hat, samples, SampleBounds::default(), seed)?;
    Ok(vec![injective, product, bracket, symmetric])
}

/// `R(a1) .. R(ak) = R(sum_i R(a1) .. a_i .. R(ak))`.
pub fn check_long_rb(args: &[Word], hat: &HatLie) -> Result<bool> {
    assert!(args.len() >= 2, "need at least two arguments");
    let mut env = Envelope::new(hat);
    let lhs: Vec<Atom> = args.iter().map(|a| Atom::wrap(a.clone())).collect();
    let lhs = env.element(&Polynomial::monomial(Word::new(lhs.clone())))?;
    let mut inner = Polynomial::zero();
    for i in 0..args.len() {
        let mut atoms = Vec::new();
        for (j, a) in args.iter().enumerate() {
            if i == j {
                atoms.extend_from_slice(a.atoms());
            } else {
                atoms.push(Atom::wrap(a.clone()));
            }
        }
        inner.add_term(Word::new(atoms), Coeff::one());
    }
    let rhs = env.element(&inner.wrap())?;
    Ok(lhs == rhs)
}

fn signed_binomial(i: usize, n: usize) -> Coeff {
    let sign = if i.is_multiple_of(2) { 1 } else { -1 };
    Coeff::from_integer(BigInt::from(sign) * binomial(n, i))
}

fn x_pow(x: Letter, e: usize) -> Vec<Atom> {
    vec![Atom::Letter(x); e]
}

/// `sum_{i=2}^{l+1} (-1)^i C(l+1, i) [y, x^(i-1)] x^(l+1-i)` as a polynomial.
fn bracket_sum(hat: &HatLie, x: Letter, y: &HatElem, l: usize) -> Polynomial {
    let mut out = Polynomial::zero();
    for i in 2..=l + 1 {
        let c = signed_binomial(i, l + 1);
        for (letter, d) in hat.iterated_bracket(y, x, i - 1).terms() {
            let mut atoms = vec![Atom::Letter(letter)];
            atoms.extend(x_pow(x, l + 1 - i));
            out.add_term(Word::new(atoms), &c * d);
        }
    }
    out
}

/// `sum_{j=0}^{l} x^j y x^(l-j)`.
fn symmetric_sum(x: Letter, y: Letter, l: usize) -> Polynomial {
    let mut out = Polynomial::zero();
    for j in 0..=l {
        let mut atoms = x_pow(x, j);
        atoms.push(Atom::Letter(y));
        atoms.extend(x_pow(x, l - j));
        out.add_term(Word::new(atoms), Coeff::one());
    }
    out
}

/// The collapse identity for `R(y_beta x_beta^l)` and the power identity
/// `x^(l+1) = R(y)^(l+1) = R(sum_j x^j y x^(l-j))`, both compared as normal
/// forms.
pub fn check_yx_relation(l: usize, beta: u16, hat: &HatLie) -> Result<bool> {
    let (x, y) = (Letter::x(beta), Letter::y(beta));
    let mut env = Envelope::new(hat);

    let mut lhs = vec![Atom::Letter(y)];
    lhs.extend(x_pow(x, l));
    let lhs = env.element(&Polynomial::monomial(Word::wrapped(Word::new(lhs))))?;
    let mut rhs = Polynomial::monomial(Word::new(x_pow(x, l + 1)));
    rhs = &rhs + &bracket_sum(hat, x, &HatElem::letter(hat.dim(), y), l).wrap();
    let rhs = env.element(&rhs.scale(&Coeff::new(BigInt::one(), BigInt::from(l + 1))))?;
    let collapse = lhs == rhs;

    let power = env.element(&Polynomial::monomial(Word::new(x_pow(x, l + 1))))?;
    let ry = vec![Atom::wrap(Word::letter(y)); l + 1];
    let product = env.element(&Polynomial::monomial(Word::new(ry)))?;
    let wrapped = env.element(&symmetric_sum(x, y, l).wrap())?;
    Ok(collapse && power == product && product == wrapped)
}

/// `(l+1) y x^l` against the bracket sum
/// `sum_{i=2}^{l+1} (-1)^i C(l+1,i) [y, x^(i-1)] x^(l+1-i)` plus
/// `sum_j x^j y x^(l-j)` in the enveloping algebra of the Lie algebra,
/// reduced with straightening only.
pub fn lemma34_check(l: usize, x: Letter, y: Letter, hat: &HatLie) -> Result<bool> {
    let mut reducer = MemoReducer::new(hat).families(FamilySet::STRAIGHTEN);
    let mut lhs = vec![Atom::Letter(y)];
    lhs.extend(x_pow(x, l));
    let lhs = Polynomial::term(int(l as i64 + 1), Word::new(lhs));
    let rhs = &bracket_sum(hat, x, &HatElem::letter(hat.dim(), y), l) + &symmetric_sum(x, y, l);
    Ok(reducer.normal_form(&(&lhs - &rhs))?.is_zero())
}

/// `(l+1) C(l, i-1) - (i-1) C(l+1, i) = C(l+1, i)` for `2 <= i <= l+1`,
/// where the middle sum is also evaluated term by term.
pub fn binomial_identity(l: usize) -> bool {
    (2..=l + 1).all(|i| {
        // 1 + i + i(i+1)/2 + .. + i(i+1)..l/(l-i+1)! = C(l+1, i)
        let mut middle = BigInt::zero();
        let mut term = BigInt::one();
        for m in 0..=l + 1 - i {
            if m > 0 {
                term = term * BigInt::from(i + m - 1) / BigInt::from(m);
            }
            middle += &term;
        }
        let first: BigInt = (i - 2..l).map(|j| binomial(j, i - 2)).sum();
        let lhs = BigInt::from(l + 1) * binomial(l, i - 1) - BigInt::from(i - 1) * binomial(l + 1, i);
        first == binomial(l, i - 1) && middle == binomial(l + 1, i) && lhs == binomial(l + 1, i)
    })
}
