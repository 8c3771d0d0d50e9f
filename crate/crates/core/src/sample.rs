//! Seeded random words and polynomials.

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::poly::{Coeff, Polynomial};
use crate::word::{Atom, Letter, Word};

pub struct Sampler {
    rng: ChaCha8Rng,
    n: usize,
}

impl Sampler {
    pub fn new(seed: u64, n: usize) -> Self {
        assert!(n >= 1);
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            n,
        }
    }

    pub fn letter(&mut self) -> Letter {
        let i = self.rng.gen_range(1..=self.n as u16);
        if self.rng.gen_bool(0.5) {
            Letter::x(i)
        } else {
            Letter::y(i)
        }
    }

    pub fn y_letter(&mut self) -> Letter {
        Letter::y(self.rng.gen_range(1..=self.n as u16))
    }

    /// A word with between 1 and `max_letters` letters and at most
    /// `max_deg_r` R symbols.
    pub fn word(&mut self, max_letters: u32, max_deg_r: u32) -> Word {
        let letters = self.rng.gen_range(1..=max_letters.max(1));
        let r = self.rng.gen_range(0..=max_deg_r);
        Word::new(self.atoms(letters, r))
    }

    fn atoms(&mut self, mut letters: u32, mut r: u32) -> Vec<Atom> {
        let mut out = Vec::new();
        while letters > 0 {
            if r > 0 && self.rng.gen_bool(0.5) {
                let inner_letters = self.rng.gen_range(1..=letters);
                let inner_r = self.rng.gen_range(0..r);
                out.push(Atom::wrap(Word::new(self.atoms(inner_letters, inner_r))));
                letters -= inner_letters;
                r -= inner_r + 1;
            } else {
                out.push(Atom::Letter(self.letter()));
                letters -= 1;
            }
        }
        out
    }

    /// A small nonzero rational: numerator in -3..=3, denominator in 1..=3.
    pub fn coeff(&mut self) -> Coeff {
        let mut num = 0;
        while num == 0 {
            num = self.rng.gen_range(-3i64..=3);
        }
        let den = self.rng.gen_range(1i64..=3);
        Coeff::new(BigInt::from(num), BigInt::from(den))
    }

    pub fn polynomial(&mut self, max_terms: usize, max_letters: u32, max_deg_r: u32) -> Polynomial {
        let terms = self.rng.gen_range(1..=max_terms.max(1));
        let mut p = Polynomial::zero();
        for _ in 0..terms {
            let w = self.word(max_letters, max_deg_r);
            let c = self.coeff();
            p.add_term(w, c);
        }
        p
    }
}
