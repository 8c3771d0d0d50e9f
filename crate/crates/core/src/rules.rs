//! The four relation families as rewrite rules.
//!
//! | family       | leading word                                        | replacement |
//! |--------------|-----------------------------------------------------|-------------|
//! | `Straighten` | `u v`, letters with `u > v`                         | `v u + [u, v]` |
//! | `Rb`         | `R(a) R(b)`                                         | `R(R(a) b + a R(b))` |
//! | `XZero`      | `R([R(z1)] X1 R(z2) .. R(zs) Xs [R(z_{s+1})])`      | `0` |
//! | `YCollapse`  | `R([R(z1)] X1 R(z2) .. R(zs) Xs y_b x_b^k [R(z_{s+1})])` | see [`expand`] |
//!
//! Here every `Xj` is an all-`x` word, nonempty except that the last block
//! of a `YCollapse` word may be empty, and every letter of that last block is
//! strictly below `x_b`. In a relation instance the arguments `zi` are not
//! single letters; the matcher also accepts single-letter arguments, since
//! such words are reducible at the inner `R(zi)` anyway and the folded
//! rewrite is still a consequence of the relations.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Coeff, Polynomial};
use crate::prelie::{HatElem, HatLie};
use crate::word::{Atom, Letter, StarWord, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleFamily {
    Straighten,
    Rb,
    XZero,
    YCollapse,
}

impl RuleFamily {
    pub const ALL: [RuleFamily; 4] = [
        RuleFamily::Straighten,
        RuleFamily::Rb,
        RuleFamily::XZero,
        RuleFamily::YCollapse,
    ];
}

impl fmt::Display for RuleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RuleFamily::Straighten => "Straighten",
            RuleFamily::Rb => "RB",
            RuleFamily::XZero => "XZero",
            RuleFamily::YCollapse => "YCollapse",
        })
    }
}

/// A subset of the rule families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilySet(u8);

impl FamilySet {
    pub const ALL: FamilySet = FamilySet(0b1111);
    pub const STRAIGHTEN: FamilySet = FamilySet(0b0001);

    pub fn of(families: &[RuleFamily]) -> Self {
        FamilySet(families.iter().fold(0, |acc, f| acc | FamilySet::bit(*f)))
    }

    fn bit(f: RuleFamily) -> u8 {
        match f {
            RuleFamily::Straighten => 1,
            RuleFamily::Rb => 2,
            RuleFamily::XZero => 4,
            RuleFamily::YCollapse => 8,
        }
    }

    pub fn contains(self, f: RuleFamily) -> bool {
        self.0 & FamilySet::bit(f) != 0
    }
}

impl Default for FamilySet {
    fn default() -> Self {
        FamilySet::ALL
    }
}

/// The decomposition `[R(z1)] X1 R(z2) X2 .. R(zs) Xs [tail] [R(z_{s+1})]`
/// shared by the `XZero` and `YCollapse` families.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Shape {
    /// `s + 1` slots; the first and last are optional, the inner ones present.
    pub zs: Vec<Option<Arc<Word>>>,
    /// The `s` x-blocks.
    pub blocks: Vec<Vec<Letter>>,
}

/// Edit applied to a shape while assembling a derived word.
#[derive(Debug, Clone, Copy)]
enum Edit {
    Keep,
    /// Replace `R(z_j)` by the atoms of `z_j`.
    Unwrap(usize),
    /// Replace letter `t` of block `j` by its `y` partner.
    ToY(usize, usize),
}

impl Shape {
    pub fn s(&self) -> usize {
        self.blocks.len()
    }

    fn assemble(&self, tail: &[Atom], edit: Edit) -> Vec<Atom> {
        let mut out = Vec::new();
        for (j, block) in self.blocks.iter().enumerate() {
            self.push_z(j, edit, &mut out);
            for (t, &l) in block.iter().enumerate() {
                let l = match edit {
                    Edit::ToY(bj, bt) if bj == j && bt == t => l.partner(),
                    _ => l,
                };
                out.push(Atom::Letter(l));
            }
        }
        out.extend_from_slice(tail);
        self.push_z(self.blocks.len(), edit, &mut out);
        out
    }

    fn push_z(&self, j: usize, edit: Edit, out: &mut Vec<Atom>) {
        if let Some(z) = &self.zs[j] {
            match edit {
                Edit::Unwrap(u) if u == j => out.extend_from_slice(z.atoms()),
                _ => out.push(Atom::Wrap(z.clone())),
            }
        }
    }

    fn strict(&self) -> bool {
        self.zs
            .iter()
            .flatten()
            .all(|z| z.as_single_letter().is_none())
    }
}

/// Family-specific bindings of a located leading pattern.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MatchParams {
    Straighten { left: Letter, right: Letter },
    Rb { a: Arc<Word>, b: Arc<Word> },
    XZero(Shape),
    YCollapse { shape: Shape, beta: u16, k: usize },
}

impl MatchParams {
    pub fn family(&self) -> RuleFamily {
        match self {
            MatchParams::Straighten { .. } => RuleFamily::Straighten,
            MatchParams::Rb { .. } => RuleFamily::Rb,
            MatchParams::XZero(_) => RuleFamily::XZero,
            MatchParams::YCollapse { .. } => RuleFamily::YCollapse,
        }
    }

    /// Atoms of the leading pattern.
    pub fn leading(&self) -> Vec<Atom> {
        match self {
            MatchParams::Straighten { left, right } => {
                vec![Atom::Letter(*left), Atom::Letter(*right)]
            }
            MatchParams::Rb { a, b } => vec![Atom::Wrap(a.clone()), Atom::Wrap(b.clone())],
            MatchParams::XZero(shape) => {
                vec![Atom::wrap(Word::new(shape.assemble(&[], Edit::Keep)))]
            }
            MatchParams::YCollapse { shape, beta, k } => {
                let tail = y_tail(*beta, *k);
                vec![Atom::wrap(Word::new(shape.assemble(&tail, Edit::Keep)))]
            }
        }
    }

    pub fn leading_word(&self) -> Word {
        Word::new(self.leading())
    }

    fn validate(&self) -> Result<()> {
        match self {
            MatchParams::Straighten { left, right } => {
                if left <= right {
                    return Err(Error::SideCondition(format!(
                        "Straighten needs a descending pair, got {left} {right}"
                    )));
                }
            }
            MatchParams::Rb { .. } => {}
            MatchParams::XZero(shape) => {
                validate_shape(shape)?;
                if shape.blocks.iter().any(Vec::is_empty) {
                    return Err(Error::SideCondition("XZero blocks must be nonempty".into()));
                }
            }
            MatchParams::YCollapse { shape, beta, .. } => {
                validate_shape(shape)?;
                let s = shape.s();
                if shape.blocks[..s - 1].iter().any(Vec::is_empty) {
                    return Err(Error::SideCondition(
                        "YCollapse inner blocks must be nonempty".into(),
                    ));
                }
                if let Some(l) = shape.blocks[s - 1].iter().find(|l| l.index >= *beta) {
                    return Err(Error::SideCondition(format!(
                        "x{beta} must exceed every letter of the last block, found {l}"
                    )));
                }
            }
        }
        Ok(())
    }
}

fn validate_shape(shape: &Shape) -> Result<()> {
    let s = shape.s();
    if s == 0 || shape.zs.len() != s + 1 {
        return Err(Error::SideCondition("shape needs s >= 1 and s + 1 slots".into()));
    }
    if shape.zs[1..s].iter().any(Option::is_none) {
        return Err(Error::SideCondition("inner R-arguments are mandatory".into()));
    }
    if shape.blocks.iter().flatten().any(|l| !l.is_x()) {
        return Err(Error::SideCondition("blocks must consist of x letters".into()));
    }
    Ok(())
}

fn y_tail(beta: u16, k: usize) -> Vec<Atom> {
    let mut tail = vec![Atom::Letter(Letter::y(beta))];
    tail.extend(std::iter::repeat_n(Atom::Letter(Letter::x(beta)), k));
    tail
}

fn x_power(beta: u16, e: usize) -> Vec<Atom> {
    std::iter::repeat_n(Atom::Letter(Letter::x(beta)), e).collect()
}

/// A located occurrence of a leading pattern inside an ambient word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RuleMatch {
    pub context: StarWord,
    pub params: MatchParams,
}

impl RuleMatch {
    pub fn family(&self) -> RuleFamily {
        self.params.family()
    }

    /// `context|leading`.
    pub fn ambient(&self) -> Word {
        Word::new(self.context.splice(&self.params.leading()))
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Replacement terms of a match at the hole, before embedding in context.
pub fn local_replacement(params: &MatchParams, hat: &HatLie) -> Result<Vec<(Vec<Atom>, Coeff)>> {
    params.validate()?;
    let mut out = Vec::new();
    match params {
        MatchParams::Straighten { left, right } => {
            out.push((vec![Atom::Letter(*right), Atom::Letter(*left)], Coeff::one()));
            for (l, c) in hat.bracket_letters(*left, *right).terms() {
                out.push((vec![Atom::Letter(l)], c));
            }
        }
        MatchParams::Rb { a, b } => {
            let mut first = vec![Atom::Wrap(a.clone())];
            first.extend_from_slice(b.atoms());
            let mut second = a.atoms().to_vec();
            second.push(Atom::Wrap(b.clone()));
            out.push((vec![Atom::wrap(Word::new(first))], Coeff::one()));
            out.push((vec![Atom::wrap(Word::new(second))], Coeff::one()));
        }
        MatchParams::XZero(_) => {}
        MatchParams::YCollapse { shape, beta, k } => {
            let (beta, k) = (*beta, *k);
            let inv = Coeff::new(BigInt::one(), BigInt::from(k + 1));
            let full = x_power(beta, k + 1);
            let wrapped = |atoms: Vec<Atom>| vec![Atom::wrap(Word::new(atoms))];

            out.push((shape.assemble(&full, Edit::Keep), inv.clone()));

            let y = HatElem::letter(hat.dim(), Letter::y(beta));
            for i in 2..=k + 1 {
                let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                let c = &inv * Coeff::from_integer(sign * binomial(k + 1, i));
                let br = hat.iterated_bracket(&y, Letter::x(beta), i - 1);
                for (l, d) in br.terms() {
                    let mut tail = vec![Atom::Letter(l)];
                    tail.extend(x_power(beta, k + 1 - i));
                    out.push((wrapped(shape.assemble(&tail, Edit::Keep)), &c * d));
                }
            }

            let minus = -inv;
            for j in 0..shape.zs.len() {
                if shape.zs[j].is_some() {
                    out.push((wrapped(shape.assemble(&full, Edit::Unwrap(j))), minus.clone()));
                }
            }
            for (j, block) in shape.blocks.iter().enumerate() {
                for t in 0..block.len() {
                    out.push((wrapped(shape.assemble(&full, Edit::ToY(j, t))), minus.clone()));
                }
            }
        }
    }
    Ok(out)
}

/// The replacement polynomial `r` of a match, embedded in its ambient word:
/// the ambient word equals `r` modulo the relations, and every monomial of
/// `r` is strictly below the ambient word.
pub fn expand(m: &RuleMatch, hat: &HatLie) -> Result<Polynomial> {
    let mut p = Polynomial::zero();
    for (atoms, c) in local_replacement(&m.params, hat)? {
        p.add_term(Word::new(m.context.splice(&atoms)), c);
    }
    Ok(p)
}

fn x_run(atoms: &[Atom]) -> Option<Vec<Letter>> {
    atoms
        .iter()
        .map(|a| a.as_letter().filter(|l| l.is_x()))
        .collect()
}

type Slots = (Vec<Option<Arc<Word>>>, Vec<Vec<Letter>>);

/// Parses `[R(z1)] X1 R(z2) X2 .. R(zs) Xs` where every block but the last is
/// a nonempty x-run. Returns the `s` leading slots and the `s` blocks.
fn parse_blocks(atoms: &[Atom], last_may_be_empty: bool) -> Option<Slots> {
    let mut zs = Vec::new();
    let mut blocks = Vec::new();
    let mut i = 0;
    if let Some(Atom::Wrap(z)) = atoms.first() {
        zs.push(Some(z.clone()));
        i = 1;
    } else {
        zs.push(None);
    }
    loop {
        let start = i;
        while i < atoms.len() && atoms[i].as_letter().is_some() {
            i += 1;
        }
        let block = x_run(&atoms[start..i])?;
        if i == atoms.len() {
            if block.is_empty() && !last_may_be_empty {
                return None;
            }
            blocks.push(block);
            return Some((zs, blocks));
        }
        if block.is_empty() {
            return None;
        }
        blocks.push(block);
        let Atom::Wrap(z) = &atoms[i] else {
            unreachable!("non-letter atom is a wrap")
        };
        zs.push(Some(z.clone()));
        i += 1;
    }
}

/// Decomposes the content of an R-letter against the `XZero` shape.
pub fn match_xzero(content: &Word, strict: bool) -> Option<Shape> {
    let atoms = content.atoms();
    let (body, last) = match atoms.last() {
        Some(Atom::Wrap(z)) => (&atoms[..atoms.len() - 1], Some(z.clone())),
        _ => (atoms, None),
    };
    if body.is_empty() {
        return None;
    }
    let (mut zs, blocks) = parse_blocks(body, false)?;
    zs.push(last);
    let shape = Shape { zs, blocks };
    (!strict || shape.strict()).then_some(shape)
}

/// Decomposes the content of an R-letter against the `YCollapse` shape.
pub fn match_ycollapse(content: &Word, strict: bool) -> Option<(Shape, u16, usize)> {
    let atoms = content.atoms();
    let mut y_pos = None;
    for (i, a) in atoms.iter().enumerate() {
        if let Atom::Letter(l) = a {
            if l.is_y() {
                if y_pos.is_some() {
                    return None;
                }
                y_pos = Some(i);
            }
        }
    }
    let p = y_pos?;
    let beta = atoms[p].as_letter()?.index;
    let xb = Letter::x(beta);

    let mut i = p + 1;
    while i < atoms.len() && atoms[i] == Atom::Letter(xb) {
        i += 1;
    }
    let k = i - p - 1;
    let last = match &atoms[i..] {
        [] => None,
        [Atom::Wrap(z)] => Some(z.clone()),
        _ => return None,
    };

    let (mut zs, blocks) = parse_blocks(&atoms[..p], true)?;
    if blocks.last()?.iter().any(|l| l.index >= beta) {
        return None;
    }
    zs.push(last);
    let shape = Shape { zs, blocks };
    (!strict || shape.strict()).then_some((shape, beta, k))
}

fn match_wrap(content: &Arc<Word>, family: RuleFamily, strict: bool) -> Option<MatchParams> {
    match family {
        RuleFamily::XZero => match_xzero(content, strict).map(MatchParams::XZero),
        RuleFamily::YCollapse => match_ycollapse(content, strict)
            .map(|(shape, beta, k)| MatchParams::YCollapse { shape, beta, k }),
        _ => None,
    }
}

/// Matches of the given family located directly in this atom sequence,
/// in left-to-right order.
fn level_matches(atoms: &[Atom], family: RuleFamily) -> impl DoubleEndedIterator<Item = (usize, usize, MatchParams)> + '_ {
    (0..atoms.len()).filter_map(move |i| match family {
        RuleFamily::Straighten => {
            let (u, v) = (atoms[i].as_letter()?, atoms.get(i + 1)?.as_letter()?);
            (u > v).then_some((i, i + 2, MatchParams::Straighten { left: u, right: v }))
        }
        RuleFamily::Rb => {
            let (a, b) = (atoms[i].as_wrap()?, atoms.get(i + 1)?.as_wrap()?);
            Some((i, i + 2, MatchParams::Rb { a: a.clone(), b: b.clone() }))
        }
        RuleFamily::XZero | RuleFamily::YCollapse => {
            let z = atoms[i].as_wrap()?;
            match_wrap(z, family, false).map(|params| (i, i + 1, params))
        }
    })
}

/// Leftmost-outermost match: at each level families are tried in the order
/// Straighten, RB, XZero, YCollapse (leftmost occurrence first), then R-letter
/// contents are searched left to right.
pub fn find_match(w: &Word, families: FamilySet) -> Option<RuleMatch> {
    let atoms = w.atoms();
    for family in RuleFamily::ALL {
        if !families.contains(family) {
            continue;
        }
        if let Some((s, e, params)) = level_matches(atoms, family).next() {
            return Some(RuleMatch {
                context: StarWord::at(atoms, s, e),
                params,
            });
        }
    }
    for (i, a) in atoms.iter().enumerate() {
        if let Atom::Wrap(inner) = a {
            if let Some(m) = find_match(inner, families) {
                return Some(RuleMatch {
                    context: StarWord::nested(atoms, i, m.context),
                    params: m.params,
                });
            }
        }
    }
    None
}

/// Rightmost-innermost match: R-letter contents are searched right to left
/// first; at a level, the rightmost occurrence of the first family (in the
/// same priority order) that occurs is returned.
pub fn find_match_innermost(w: &Word, families: FamilySet) -> Option<RuleMatch> {
    let atoms = w.atoms();
    for (i, a) in atoms.iter().enumerate().rev() {
        if let Atom::Wrap(inner) = a {
            if let Some(m) = find_match_innermost(inner, families) {
                return Some(RuleMatch {
                    context: StarWord::nested(atoms, i, m.context),
                    params: m.params,
                });
            }
        }
    }
    for family in RuleFamily::ALL {
        if !families.contains(family) {
            continue;
        }
        if let Some((s, e, params)) = level_matches(atoms, family).next_back() {
            return Some(RuleMatch {
                context: StarWord::at(atoms, s, e),
                params,
            });
        }
    }
    None
}

/// If the whole word is the leading word of a relation instance (with the
/// arguments `zi` restricted to non-letters), returns its bindings.
pub fn relation_params(w: &Word) -> Option<MatchParams> {
    match w.atoms() {
        [Atom::Letter(u), Atom::Letter(v)] if u > v => Some(MatchParams::Straighten {
            left: *u,
            right: *v,
        }),
        [Atom::Wrap(a), Atom::Wrap(b)] => Some(MatchParams::Rb {
            a: a.clone(),
            b: b.clone(),
        }),
        [Atom::Wrap(z)] => match_wrap(z, RuleFamily::XZero, true)
            .or_else(|| match_wrap(z, RuleFamily::YCollapse, true)),
        _ => None,
    }
}

/// A monic relation `lhs - r` of one of the four families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Word,
    pub poly: Polynomial,
    pub params: MatchParams,
}

impl Relation {
    pub fn from_params(params: MatchParams, hat: &HatLie) -> Result<Self> {
        let lhs = params.leading_word();
        let m = RuleMatch {
            context: StarWord::hole(),
            params,
        };
        let r = expand(&m, hat)?;
        let poly = &Polynomial::monomial(lhs.clone()) - &r;
        debug_assert_eq!(poly.leading_monomial().ok(), Some(&lhs));
        Ok(Relation {
            lhs,
            poly,
            params: m.params,
        })
    }

    pub fn family(&self) -> RuleFamily {
        self.params.family()
    }
}

/// Every word with at most `max_letters` generator letters (at all depths)
/// and at most `max_deg_r` R symbols, over the `2n` letters.
pub fn words_up_to(n: usize, max_letters: u32, max_deg_r: u32) -> Vec<Word> {
    let letters = Letter::all(n);
    let d = max_letters as usize;
    let r = max_deg_r as usize;
    // seqs[a][b]: atom sequences using exactly a letters and b R symbols
    let mut seqs: Vec<Vec<Vec<Vec<Atom>>>> = vec![vec![Vec::new(); r + 1]; d + 1];
    let mut atoms: Vec<Vec<Vec<Atom>>> = vec![vec![Vec::new(); r + 1]; d + 1];
    for total in 1..=d + r {
        for a in 1..=d {
            if total < a || total - a > r {
                continue;
            }
            let b = total - a;
            let mut exact_atoms = Vec::new();
            if a == 1 && b == 0 {
                exact_atoms.extend(letters.iter().map(|&l| Atom::Letter(l)));
            }
            if b >= 1 {
                for content in &seqs[a][b - 1] {
                    exact_atoms.push(Atom::wrap(Word::new(content.clone())));
                }
            }
            atoms[a][b] = exact_atoms;

            let mut exact = Vec::new();
            for a1 in 1..=a {
                for b1 in 0..=b {
                    for first in &atoms[a1][b1] {
                        if a1 == a && b1 == b {
                            exact.push(vec![first.clone()]);
                        } else if a - a1 >= 1 {
                            for rest in &seqs[a - a1][b - b1] {
                                let mut s = Vec::with_capacity(rest.len() + 1);
                                s.push(first.clone());
                                s.extend_from_slice(rest);
                                exact.push(s);
                            }
                        }
                    }
                }
            }
            seqs[a][b] = exact;
        }
    }
    let mut out: Vec<Word> = seqs
        .into_iter()
        .flatten()
        .flatten()
        .map(Word::new)
        .collect();
    out.sort();
    out
}

/// All relation instances whose leading word has at most `max_deg` letters
/// and R-degree at most `max_deg_r`, sorted by leading word.
pub fn enumerate_relations(hat: &HatLie, max_deg: u32, max_deg_r: u32) -> Result<Vec<Relation>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for w in words_up_to(hat.dim(), max_deg, max_deg_r) {
        if let Some(params) = relation_params(&w) {
            if seen.insert(w.clone()) {
                out.push(Relation::from_params(params, hat)?);
            }
        }
    }
    Ok(out)
}
