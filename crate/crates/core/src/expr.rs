//! Text syntax for polynomials.
//!
//! ```text
//! expr   := '0' | sign? term (('+' | '-') term)*
//! term   := rational? factor+
//! factor := letter | 'R' '(' factor+ ')'
//! letter := ('x' | 'y') digits
//! ```
//!
//! Juxtaposition is concatenation. R-arguments are single coefficient-free
//! monomials. Printing is the `Display` of [`Polynomial`], which this parser
//! inverts.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Coeff, Polynomial};
use crate::word::{Atom, Letter, Word};

struct Parser<'s> {
    src: &'s [u8],
    pos: usize,
    n: usize,
}

impl<'s> Parser<'s> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn digits(&mut self) -> Option<&'s str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn rational(&mut self) -> Result<Option<Coeff>> {
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Ok(None);
        }
        let num: BigInt = self.digits().expect("digit").parse().expect("digits");
        if self.peek() != Some(b'/') {
            return Ok(Some(Coeff::from_integer(num)));
        }
        self.pos += 1;
        self.skip_ws();
        let Some(den) = self.digits() else {
            return self.err("expected denominator");
        };
        let den: BigInt = den.parse().expect("digits");
        if den.is_zero() {
            return self.err("zero denominator");
        }
        Ok(Some(Coeff::new(num, den)))
    }

    fn letter(&mut self, kind: u8) -> Result<Atom> {
        let at = self.pos;
        self.pos += 1;
        let Some(d) = self.digits() else {
            return self.err("expected letter index");
        };
        let index: u64 = d.parse().unwrap_or(u64::MAX);
        if index == 0 || index > self.n as u64 {
            self.pos = at;
            return Err(Error::IndexOutOfRange { index, n: self.n });
        }
        let i = index as u16;
        Ok(Atom::Letter(if kind == b'x' { Letter::x(i) } else { Letter::y(i) }))
    }

    fn factor(&mut self) -> Result<Option<Atom>> {
        match self.peek() {
            Some(c @ (b'x' | b'y')) => self.letter(c).map(Some),
            Some(b'R') => {
                self.pos += 1;
                self.expect(b'(')?;
                let atoms = self.factors()?;
                if atoms.is_empty() {
                    return self.err("R needs a nonempty monomial argument");
                }
                self.expect(b')')?;
                Ok(Some(Atom::wrap(Word::new(atoms))))
            }
            _ => Ok(None),
        }
    }

    fn factors(&mut self) -> Result<Vec<Atom>> {
        let mut atoms = Vec::new();
        while let Some(a) = self.factor()? {
            atoms.push(a);
        }
        Ok(atoms)
    }

    fn term(&mut self, sign: Coeff, p: &mut Polynomial) -> Result<()> {
        let c = self.rational()?.unwrap_or_else(Coeff::one);
        let atoms = self.factors()?;
        if atoms.is_empty() {
            return self.err("expected a letter or R(...)");
        }
        p.add_term(Word::new(atoms), sign * c);
        Ok(())
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut p = Polynomial::zero();
        let save = self.pos;
        if self.peek() == Some(b'0') {
            self.pos += 1;
            if self.peek().is_none() {
                return Ok(p);
            }
            self.pos = save;
        }
        let mut sign = Coeff::one();
        if self.peek() == Some(b'-') {
            self.pos += 1;
            sign = -sign;
        }
        self.term(sign, &mut p)?;
        loop {
            let sign = match self.peek() {
                None => break,
                Some(b'+') => Coeff::one(),
                Some(b'-') => -Coeff::one(),
                Some(_) => return self.err("expected '+', '-' or end of input"),
            };
            self.pos += 1;
            self.term(sign, &mut p)?;
        }
        Ok(p)
    }
}

/// Parses an expression over letters with indices in `1..=n`.
pub fn parse_expr(text: &str, n: usize) -> Result<Polynomial> {
    Parser {
        src: text.as_bytes(),
        pos: 0,
        n,
    }
    .expr()
}

/// Parses a single monomial (no coefficient, no sum).
pub fn parse_word(text: &str, n: usize) -> Result<Word> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        n,
    };
    let atoms = p.factors()?;
    if atoms.is_empty() {
        return p.err("expected a word");
    }
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(Word::new(atoms))
}

pub fn print_expr(p: &Polynomial) -> String {
    p.to_string()
}
