//! Exact-rational noncommutative polynomials over bracketed words.

use std::collections::btree_map::{self, Entry};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::word::{Letter, StarWord, Word};

pub type Coeff = BigRational;

pub fn int(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Coeff {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Finite linear combination of words. Keys are kept in monomial order, so
/// the leading word is the last key; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Word, Coeff>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn monomial(w: Word) -> Self {
        Polynomial::term(Coeff::one(), w)
    }

    pub fn letter(l: Letter) -> Self {
        Polynomial::monomial(Word::letter(l))
    }

    pub fn term(c: Coeff, w: Word) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(w, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Coeff)>>(terms: I) -> Self {
        let mut p = Polynomial::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> Coeff {
        self.terms.get(w).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.terms.contains_key(w)
    }

    /// Terms in increasing monomial order.
    pub fn iter(&self) -> btree_map::Iter<'_, Word, Coeff> {
        self.terms.iter()
    }

    pub fn words(&self) -> impl DoubleEndedIterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn into_terms(self) -> BTreeMap<Word, Coeff> {
        self.terms
    }

    pub fn add_term(&mut self, w: Word, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Coeff, other: &Polynomial) {
        if c.is_zero() {
            return;
        }
        for (w, d) in &other.terms {
            self.add_term(w.clone(), c * d);
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(w, d)| (w.clone(), c * d))
                .collect(),
        }
    }

    /// Leading (monomial-order maximal) word.
    pub fn leading_monomial(&self) -> Result<&Word> {
        self.terms
            .last_key_value()
            .map(|(w, _)| w)
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_coefficient(&self) -> Option<&Coeff> {
        self.terms.last_key_value().map(|(_, c)| c)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coefficient().is_some_and(One::is_one)
    }

    /// Applies a word-to-polynomial map linearly.
    pub fn map_words<F>(&self, mut f: F) -> Polynomial
    where
        F: FnMut(&Word) -> Polynomial,
    {
        let mut out = Polynomial::zero();
        for (w, c) in &self.terms {
            out.add_scaled(c, &f(w));
        }
        out
    }

    /// `q|p`, extended linearly.
    pub fn in_context(&self, q: &StarWord) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (q.substitute(w), c.clone()))
                .collect(),
        }
    }

    /// Wraps every monomial in `R`, extended linearly.
    pub fn wrap(&self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (Word::wrapped(w.clone()), c.clone()))
                .collect(),
        }
    }

    pub fn mul_word_right(&self, w: &Word) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(u, c)| (u.concat(w), c.clone()))
                .collect(),
        }
    }

    pub fn mul_word_left(&self, w: &Word) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(u, c)| (w.concat(u), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: usize) -> Option<Polynomial> {
        let mut acc: Option<Polynomial> = None;
        for _ in 0..e {
            acc = Some(match acc {
                None => self.clone(),
                Some(a) => &a * self,
            });
        }
        acc
    }
}

impl From<Word> for Polynomial {
    fn from(w: Word) -> Self {
        Polynomial::monomial(w)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled(&Coeff::one(), rhs);
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled(&-Coeff::one(), rhs);
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(&-Coeff::one())
    }
}

/// Bilinear extension of word concatenation.
impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (u, c) in &self.terms {
            for (v, d) in &rhs.terms {
                out.add_term(u.concat(v), c * d);
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    /// Terms in decreasing monomial order, e.g. `1/2 x1 x1 - 1/2 x1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if !abs.is_one() {
                write!(f, "{abs} ")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}
