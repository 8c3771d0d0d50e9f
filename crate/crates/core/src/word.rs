//! Bracketed words of the free associative algebra with one linear operator `R`.
//!
//! A [`Word`] is a nonempty sequence of [`Atom`]s, each either a generator
//! letter (`x_i` or `y_i`) or an R-letter `R(w)` wrapping another word. The
//! [`Ord`] implementation on `Word` is the monomial order used everywhere in
//! the crate:
//!
//! 1. words with fewer `R` symbols (at any depth) are smaller;
//! 2. otherwise the shorter top-level atom sequence is smaller;
//! 3. otherwise atoms are compared left to right, with every letter below
//!    every R-letter, letters ordered `y_1 < x_1 < y_2 < x_2 < ...`, and
//!    R-letters ordered by their contents.
//!
//! The order is compatible with contexts: if `u < v` then `q|u < q|v` for
//! every [`StarWord`] `q`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// Which half of the doubled alphabet a letter belongs to.
///
/// Declaration order matters: `Y` sorts before `X` for equal indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LetterKind {
    Y,
    X,
}

/// A generator `x_index` or `y_index`, with 1-based index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub kind: LetterKind,
    pub index: u16,
}

impl Letter {
    pub const fn x(index: u16) -> Self {
        Letter { kind: LetterKind::X, index }
    }

    pub const fn y(index: u16) -> Self {
        Letter { kind: LetterKind::Y, index }
    }

    pub fn is_x(self) -> bool {
        self.kind == LetterKind::X
    }

    pub fn is_y(self) -> bool {
        self.kind == LetterKind::Y
    }

    /// The letter with the same index and the other kind.
    pub fn partner(self) -> Self {
        match self.kind {
            LetterKind::X => Letter::y(self.index),
            LetterKind::Y => Letter::x(self.index),
        }
    }

    /// All `2n` letters in increasing order.
    pub fn all(n: usize) -> Vec<Letter> {
        (1..=n as u16)
            .flat_map(|i| [Letter::y(i), Letter::x(i)])
            .collect()
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.index
            .cmp(&other.index)
            .then(self.kind.cmp(&other.kind))
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            LetterKind::X => write!(f, "x{}", self.index),
            LetterKind::Y => write!(f, "y{}", self.index),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Atom {
    Letter(Letter),
    Wrap(Arc<Word>),
}

impl Atom {
    pub fn wrap(content: Word) -> Self {
        Atom::Wrap(Arc::new(content))
    }

    pub fn as_letter(&self) -> Option<Letter> {
        match self {
            Atom::Letter(l) => Some(*l),
            Atom::Wrap(_) => None,
        }
    }

    pub fn as_wrap(&self) -> Option<&Arc<Word>> {
        match self {
            Atom::Letter(_) => None,
            Atom::Wrap(w) => Some(w),
        }
    }

    pub fn is_wrap(&self) -> bool {
        matches!(self, Atom::Wrap(_))
    }

    fn deg_r(&self) -> u32 {
        match self {
            Atom::Letter(_) => 0,
            Atom::Wrap(w) => w.deg_r + 1,
        }
    }

    fn letter_count(&self) -> u32 {
        match self {
            Atom::Letter(_) => 1,
            Atom::Wrap(w) => w.letters,
        }
    }
}

impl From<Letter> for Atom {
    fn from(l: Letter) -> Self {
        Atom::Letter(l)
    }
}

impl Ord for Atom {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Atom::Letter(a), Atom::Letter(b)) => a.cmp(b),
            (Atom::Letter(_), Atom::Wrap(_)) => Ordering::Less,
            (Atom::Wrap(_), Atom::Letter(_)) => Ordering::Greater,
            (Atom::Wrap(a), Atom::Wrap(b)) => {
                if Arc::ptr_eq(a, b) {
                    Ordering::Equal
                } else {
                    a.as_ref().cmp(b.as_ref())
                }
            }
        }
    }
}

impl PartialOrd for Atom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A nonempty bracketed word. `deg_r` and the letter count are cached.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    atoms: Vec<Atom>,
    deg_r: u32,
    letters: u32,
}

impl Word {
    /// Panics on an empty atom sequence; the empty word is not a basis word.
    pub fn new(atoms: Vec<Atom>) -> Self {
        assert!(!atoms.is_empty(), "a word must contain at least one atom");
        let deg_r = atoms.iter().map(Atom::deg_r).sum();
        let letters = atoms.iter().map(Atom::letter_count).sum();
        Word {
            atoms,
            deg_r,
            letters,
        }
    }

    pub fn letter(l: Letter) -> Self {
        Word::new(vec![Atom::Letter(l)])
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        Word::new(letters.iter().map(|&l| Atom::Letter(l)).collect())
    }

    /// The one-atom word `R(content)`.
    pub fn wrapped(content: Word) -> Self {
        Word::new(vec![Atom::wrap(content)])
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn into_atoms(self) -> Vec<Atom> {
        self.atoms
    }

    /// Number of `R` symbols at all depths.
    pub fn deg_r(&self) -> u32 {
        self.deg_r
    }

    /// Length of the top-level atom sequence (letters and R-letters).
    pub fn deg(&self) -> usize {
        self.atoms.len()
    }

    /// Number of generator letters at all depths.
    pub fn letter_count(&self) -> u32 {
        self.letters
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut atoms = Vec::with_capacity(self.atoms.len() + other.atoms.len());
        atoms.extend_from_slice(&self.atoms);
        atoms.extend_from_slice(&other.atoms);
        Word::new(atoms)
    }

    pub fn as_single_letter(&self) -> Option<Letter> {
        match self.atoms.as_slice() {
            [Atom::Letter(l)] => Some(*l),
            _ => None,
        }
    }

    /// Largest letter index appearing anywhere in the word.
    pub fn max_index(&self) -> u16 {
        self.atoms
            .iter()
            .map(|a| match a {
                Atom::Letter(l) => l.index,
                Atom::Wrap(w) => w.max_index(),
            })
            .max()
            .unwrap_or(0)
    }

    /// Every context `q` with `q|g = self`, at every nesting depth.
    pub fn occurrences(&self, g: &Word) -> Vec<StarWord> {
        let mut out = Vec::new();
        self.collect_occurrences(g, &mut out);
        out
    }

    fn collect_occurrences(&self, g: &Word, out: &mut Vec<StarWord>) {
        let len = g.atoms.len();
        if len <= self.atoms.len() {
            for i in 0..=self.atoms.len() - len {
                if self.atoms[i..i + len] == g.atoms[..] {
                    out.push(StarWord::at(&self.atoms, i, i + len));
                }
            }
        }
        for (i, atom) in self.atoms.iter().enumerate() {
            if let Atom::Wrap(inner) = atom {
                for q in inner.occurrences(g) {
                    out.push(StarWord::nested(&self.atoms, i, q));
                }
            }
        }
    }

    /// Every contiguous subword at every depth, paired with its context.
    pub fn subwords(&self) -> Vec<(StarWord, Word)> {
        let mut out = Vec::new();
        let n = self.atoms.len();
        for i in 0..n {
            for j in i + 1..=n {
                out.push((
                    StarWord::at(&self.atoms, i, j),
                    Word::new(self.atoms[i..j].to_vec()),
                ));
            }
        }
        for (i, atom) in self.atoms.iter().enumerate() {
            if let Atom::Wrap(inner) = atom {
                for (q, sub) in inner.subwords() {
                    out.push((StarWord::nested(&self.atoms, i, q), sub));
                }
            }
        }
        out
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg_r
            .cmp(&other.deg_r)
            .then(self.atoms.len().cmp(&other.atoms.len()))
            .then_with(|| {
                for (a, b) in self.atoms.iter().zip(&other.atoms) {
                    match a.cmp(b) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Letter> for Word {
    fn from(l: Letter) -> Self {
        Word::letter(l)
    }
}

fn fmt_atoms(atoms: &[Atom], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for (i, atom) in atoms.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        match atom {
            Atom::Letter(l) => write!(f, "{l}")?,
            Atom::Wrap(w) => write!(f, "R({w})")?,
        }
    }
    Ok(())
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_atoms(&self.atoms, f)
    }
}

/// A word with exactly one hole `⋆`.
///
/// At each level the hole either sits directly between `left` and `right`
/// (`inner == None`), or inside an R-letter `R(inner)` placed between them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StarWord {
    left: Vec<Atom>,
    inner: Option<Box<StarWord>>,
    right: Vec<Atom>,
}

impl StarWord {
    /// The bare hole `⋆`.
    pub fn hole() -> Self {
        StarWord {
            left: Vec::new(),
            inner: None,
            right: Vec::new(),
        }
    }

    pub fn new(left: Vec<Atom>, inner: Option<StarWord>, right: Vec<Atom>) -> Self {
        StarWord {
            left,
            inner: inner.map(Box::new),
            right,
        }
    }

    /// Context replacing `atoms[start..end]` by the hole.
    pub fn at(atoms: &[Atom], start: usize, end: usize) -> Self {
        StarWord {
            left: atoms[..start].to_vec(),
            inner: None,
            right: atoms[end..].to_vec(),
        }
    }

    /// Context whose hole lies inside the R-letter `atoms[pos]`.
    pub fn nested(atoms: &[Atom], pos: usize, inner: StarWord) -> Self {
        StarWord {
            left: atoms[..pos].to_vec(),
            inner: Some(Box::new(inner)),
            right: atoms[pos + 1..].to_vec(),
        }
    }

    pub fn is_hole(&self) -> bool {
        self.inner.is_none() && self.left.is_empty() && self.right.is_empty()
    }

    /// Nesting depth of the hole (0 when the hole is at top level).
    pub fn depth(&self) -> usize {
        self.inner.as_ref().map_or(0, |q| q.depth() + 1)
    }

    /// `q|u`: splices the atoms of `u` in place of the hole.
    pub fn substitute(&self, u: &Word) -> Word {
        Word::new(self.splice(u.atoms()))
    }

    /// Splices a raw atom sequence; the result must be nonempty to be a word.
    pub fn splice(&self, u: &[Atom]) -> Vec<Atom> {
        let mut out = Vec::with_capacity(self.left.len() + u.len() + self.right.len());
        out.extend_from_slice(&self.left);
        match &self.inner {
            None => out.extend_from_slice(u),
            Some(q) => out.push(Atom::wrap(Word::new(q.splice(u)))),
        }
        out.extend_from_slice(&self.right);
        out
    }

    /// Places this context inside a larger one: returns `outer|self`.
    pub fn within(self, outer: &StarWord) -> StarWord {
        match &outer.inner {
            None => {
                let mut left = outer.left.clone();
                left.extend(self.left);
                let mut right = self.right;
                right.extend_from_slice(&outer.right);
                StarWord {
                    left,
                    inner: self.inner,
                    right,
                }
            }
            Some(q) => StarWord {
                left: outer.left.clone(),
                inner: Some(Box::new(self.within(q))),
                right: outer.right.clone(),
            },
        }
    }
}

impl fmt::Display for StarWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_atoms(&self.left, f)?;
        if !self.left.is_empty() {
            f.write_str(" ")?;
        }
        match &self.inner {
            None => f.write_str("⋆")?,
            Some(q) => write!(f, "R({q})")?,
        }
        if !self.right.is_empty() {
            f.write_str(" ")?;
        }
        fmt_atoms(&self.right, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn x(i: u16) -> Atom {
        Atom::Letter(Letter::x(i))
    }

    pub(crate) fn y(i: u16) -> Atom {
        Atom::Letter(Letter::y(i))
    }

    fn r(atoms: Vec<Atom>) -> Atom {
        Atom::wrap(Word::new(atoms))
    }

    fn w(atoms: Vec<Atom>) -> Word {
        Word::new(atoms)
    }

    #[test]
    fn deg_r_counts_nested_wraps() {
        assert_eq!(w(vec![x(1), x(1)]).deg_r(), 0);
        assert_eq!(w(vec![r(vec![y(1)])]).deg_r(), 1);
        assert_eq!(w(vec![x(1), r(vec![y(1), r(vec![x(1)])])]).deg_r(), 2);
    }

    #[test]
    fn letter_order_interleaves() {
        let mut letters = vec![Letter::x(2), Letter::y(2), Letter::x(1), Letter::y(1)];
        letters.sort();
        assert_eq!(
            letters,
            vec![Letter::y(1), Letter::x(1), Letter::y(2), Letter::x(2)]
        );
        assert_eq!(Letter::all(2), letters);
        // x_beta < y_alpha iff beta < alpha
        assert!(Letter::x(1) < Letter::y(2));
        assert!(Letter::y(1) < Letter::x(1));
    }

    #[test]
    fn compare_examples() {
        assert_eq!(w(vec![y(1)]).cmp(&w(vec![x(1)])), Ordering::Less);
        assert_eq!(
            w(vec![x(1), x(1), x(1)]).cmp(&w(vec![r(vec![y(1)])])),
            Ordering::Less
        );
        assert_eq!(
            w(vec![r(vec![y(1)])]).cmp(&w(vec![r(vec![x(1)])])),
            Ordering::Less
        );
        assert_eq!(w(vec![x(1)]).cmp(&w(vec![x(1)])), Ordering::Equal);
        // deg-lex at equal R-degree: shorter is smaller, letters below R-letters
        assert!(w(vec![r(vec![x(1), x(1)])]) < w(vec![x(1), r(vec![x(1)])]));
        assert!(w(vec![x(2), r(vec![y(1)])]) < w(vec![r(vec![y(1)]), x(1)]));
    }

    #[test]
    fn substitute_examples() {
        let q = StarWord::new(vec![], None, vec![x(1)]);
        assert_eq!(q.substitute(&w(vec![y(1)])), w(vec![y(1), x(1)]));

        let q = StarWord::new(vec![], Some(StarWord::new(vec![], None, vec![x(1)])), vec![]);
        assert_eq!(
            q.substitute(&w(vec![r(vec![y(1)])])),
            w(vec![r(vec![r(vec![y(1)]), x(1)])])
        );

        let u = w(vec![x(2), r(vec![y(1)])]);
        assert_eq!(StarWord::hole().substitute(&u), u);
    }

    #[test]
    fn occurrences_examples() {
        let word = w(vec![x(1), y(1), x(1)]);
        let occ = word.occurrences(&w(vec![x(1)]));
        assert_eq!(
            occ,
            vec![
                StarWord::new(vec![], None, vec![y(1), x(1)]),
                StarWord::new(vec![x(1), y(1)], None, vec![]),
            ]
        );

        let word = w(vec![r(vec![x(1), y(1)])]);
        let occ = word.occurrences(&w(vec![x(1), y(1)]));
        assert_eq!(
            occ,
            vec![StarWord::new(vec![], Some(StarWord::hole()), vec![])]
        );

        assert!(w(vec![y(1)]).occurrences(&w(vec![x(1)])).is_empty());
    }

    #[test]
    fn occurrences_reconstruct_the_word() {
        let word = w(vec![x(1), r(vec![x(1), r(vec![x(1)])]), x(1)]);
        let g = w(vec![x(1)]);
        let occ = word.occurrences(&g);
        assert_eq!(occ.len(), 4);
        for q in occ {
            assert_eq!(q.substitute(&g), word);
        }
    }

    #[test]
    fn within_composes_contexts() {
        let inner = StarWord::new(vec![x(1)], None, vec![y(2)]);
        let outer = StarWord::new(vec![y(1)], Some(StarWord::new(vec![], None, vec![x(2)])), vec![]);
        let u = w(vec![r(vec![y(2)])]);
        let composed = inner.clone().within(&outer);
        assert_eq!(
            composed.substitute(&u),
            outer.substitute(&inner.substitute(&u))
        );
    }

    #[test]
    fn display_formats() {
        let word = w(vec![x(1), r(vec![y(1), r(vec![x(12)])])]);
        assert_eq!(word.to_string(), "x1 R(y1 R(x12))");
        let q = StarWord::new(vec![], Some(StarWord::new(vec![], None, vec![x(1)])), vec![]);
        assert_eq!(q.to_string(), "R(⋆ x1)");
    }
}
