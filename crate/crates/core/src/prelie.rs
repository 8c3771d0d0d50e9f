//! Pre-Lie algebras given by structure constants, and the doubled Lie
//! algebra `L ⊕ L'` carrying the weight-zero Rota–Baxter operator
//! `R(y_a) = x_a`, `R(x_a) = 0`.
//!
//! Letters `x_a` span the copy `L`, letters `y_a` span the copy `L'`. With the
//! splitting `a ≻ b = a·b`, `a ≺ b = -b·a` the bracket is
//!
//! ```text
//! [x_a, x_b] = a·b - b·a     (in span x)
//! [x_a, y_b] = (a·b)'        (in span y)
//! [y_a, x_b] = -(b·a)'       (in span y)
//! [y_a, y_b] = 0
//! ```

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Coeff, Polynomial};
use crate::word::{Letter, LetterKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreLieAlgebra {
    n: usize,
    /// `constants[i][j][k]`: coefficient of `e_k` in `e_i · e_j`.
    constants: Vec<Vec<Vec<Coeff>>>,
    name: Option<String>,
}

impl PreLieAlgebra {
    /// Checks shapes only; the pre-Lie identity is checked separately.
    pub fn new(constants: Vec<Vec<Vec<Coeff>>>) -> Result<Self> {
        let n = constants.len();
        if n == 0 {
            return Err(Error::InvalidAlgebra("dimension must be positive".into()));
        }
        if n > u16::MAX as usize {
            return Err(Error::InvalidAlgebra("dimension too large".into()));
        }
        for (i, row) in constants.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidAlgebra(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            for (j, v) in row.iter().enumerate() {
                if v.len() != n {
                    return Err(Error::InvalidAlgebra(format!(
                        "product e{}·e{} has {} coefficients, expected {n}",
                        i + 1,
                        j + 1,
                        v.len()
                    )));
                }
            }
        }
        Ok(PreLieAlgebra {
            n,
            constants,
            name: None,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Coefficients of `e_i · e_j` (0-based indices).
    pub fn product(&self, i: usize, j: usize) -> &[Coeff] {
        &self.constants[i][j]
    }

    pub fn constants(&self) -> &[Vec<Vec<Coeff>>] {
        &self.constants
    }

    /// Bilinear product of coordinate vectors.
    pub fn mul(&self, a: &[Coeff], b: &[Coeff]) -> Vec<Coeff> {
        let mut out = vec![Coeff::zero(); self.n];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let c = ai * bj;
                for (k, ck) in self.constants[i][j].iter().enumerate() {
                    if !ck.is_zero() {
                        out[k] += &c * ck;
                    }
                }
            }
        }
        out
    }

    pub fn basis(&self, i: usize) -> Vec<Coeff> {
        let mut v = vec![Coeff::zero(); self.n];
        v[i] = Coeff::one();
        v
    }

    /// Basis triples (0-based) where `(ab)c - a(bc) = (ba)c - b(ac)` fails.
    pub fn pre_lie_violations(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                for k in 0..self.n {
                    let (a, b, c) = (self.basis(i), self.basis(j), self.basis(k));
                    let lhs = sub(
                        &self.mul(&self.mul(&a, &b), &c),
                        &self.mul(&a, &self.mul(&b, &c)),
                    );
                    let rhs = sub(
                        &self.mul(&self.mul(&b, &a), &c),
                        &self.mul(&b, &self.mul(&a, &c)),
                    );
                    if lhs != rhs {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }

    /// `e·e = e` in dimension one.
    pub fn idempotent_line() -> Self {
        PreLieAlgebra::new(vec![vec![vec![Coeff::one()]]])
            .expect("well-formed")
            .with_name("idempotent line")
    }

    /// Two-dimensional associative algebra with unit `e1` and `e2·e2 = 0`.
    pub fn unit_extended() -> Self {
        let one = Coeff::one;
        let zero = Coeff::zero;
        PreLieAlgebra::new(vec![
            vec![vec![one(), zero()], vec![zero(), one()]],
            vec![vec![zero(), one()], vec![zero(), zero()]],
        ])
        .expect("well-formed")
        .with_name("unit-extended dual numbers")
    }

    pub fn zero_product(n: usize) -> Self {
        PreLieAlgebra::new(vec![vec![vec![Coeff::zero(); n]; n]; n])
            .expect("well-formed")
            .with_name("zero product")
    }
}

fn sub(a: &[Coeff], b: &[Coeff]) -> Vec<Coeff> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// True iff the left-symmetry identity holds on all basis triples.
pub fn check_pre_lie(a: &PreLieAlgebra) -> bool {
    a.pre_lie_violations().is_empty()
}

/// Element of the doubled algebra, coordinates over `(y_1..y_n, x_1..x_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HatElem(Vec<Coeff>);

impl HatElem {
    pub fn zero(n: usize) -> Self {
        HatElem(vec![Coeff::zero(); 2 * n])
    }

    pub fn from_coords(coords: Vec<Coeff>) -> Self {
        assert!(coords.len().is_multiple_of(2), "coordinate vector must have even length");
        HatElem(coords)
    }

    pub fn letter(n: usize, l: Letter) -> Self {
        let mut e = HatElem::zero(n);
        e.0[slot(n, l)] = Coeff::one();
        e
    }

    pub fn coords(&self) -> &[Coeff] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() / 2
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn coefficient(&self, l: Letter) -> &Coeff {
        &self.0[slot(self.dim(), l)]
    }

    /// Nonzero `(letter, coefficient)` pairs in increasing letter order.
    pub fn terms(&self) -> Vec<(Letter, Coeff)> {
        let n = self.dim();
        let mut out: Vec<(Letter, Coeff)> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (letter_at(n, i), c.clone()))
            .collect();
        out.sort_by_key(|t| t.0);
        out
    }

    pub fn y_part_is_zero(&self) -> bool {
        self.0[..self.dim()].iter().all(Zero::is_zero)
    }

    pub fn x_part_is_zero(&self) -> bool {
        self.0[self.dim()..].iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &HatElem) -> HatElem {
        HatElem(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &HatElem) -> HatElem {
        HatElem(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Coeff) -> HatElem {
        HatElem(self.0.iter().map(|a| a * c).collect())
    }

    /// Linear combination of one-letter words.
    pub fn to_polynomial(&self) -> Polynomial {
        let mut p = Polynomial::zero();
        for (l, c) in self.terms() {
            p.add_term(l.into(), c);
        }
        p
    }
}

fn slot(n: usize, l: Letter) -> usize {
    let i = l.index as usize - 1;
    match l.kind {
        LetterKind::Y => i,
        LetterKind::X => n + i,
    }
}

fn letter_at(n: usize, slot: usize) -> Letter {
    if slot < n {
        Letter::y(slot as u16 + 1)
    } else {
        Letter::x((slot - n) as u16 + 1)
    }
}

/// The doubled Lie algebra with its Rota–Baxter operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HatLie {
    n: usize,
    /// `table[i][j] = [b_i, b_j]` over the slot basis.
    table: Vec<Vec<HatElem>>,
}

impl HatLie {
    /// Raw constructor; no identities are checked.
    pub fn from_table(n: usize, table: Vec<Vec<HatElem>>) -> Self {
        assert_eq!(table.len(), 2 * n);
        HatLie { n, table }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> Vec<Letter> {
        Letter::all(self.n)
    }

    pub fn table(&self) -> &[Vec<HatElem>] {
        &self.table
    }

    pub fn bracket_letters(&self, u: Letter, v: Letter) -> &HatElem {
        &self.table[slot(self.n, u)][slot(self.n, v)]
    }

    pub fn bracket(&self, a: &HatElem, b: &HatElem) -> HatElem {
        let mut out = HatElem::zero(self.n);
        for (i, ai) in a.0.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.0.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let c = ai * bj;
                for (k, t) in self.table[i][j].0.iter().enumerate() {
                    if !t.is_zero() {
                        out.0[k] += &c * t;
                    }
                }
            }
        }
        out
    }

    /// The operator: `R(y_a) = x_a`, `R(x_a) = 0`.
    pub fn rb(&self, a: &HatElem) -> HatElem {
        let mut out = HatElem::zero(self.n);
        for i in 0..self.n {
            out.0[self.n + i] = a.0[i].clone();
        }
        out
    }

    /// `[[..[y, x], x].., x]` with `p` brackets; `p = 0` returns `y`.
    pub fn iterated_bracket(&self, y: &HatElem, x: Letter, p: usize) -> HatElem {
        let xe = HatElem::letter(self.n, x);
        let mut acc = y.clone();
        for _ in 0..p {
            acc = self.bracket(&acc, &xe);
        }
        acc
    }

    pub fn basis(&self) -> Vec<HatElem> {
        (0..2 * self.n)
            .map(|i| HatElem::letter(self.n, letter_at(self.n, i)))
            .collect()
    }
}

/// Builds the doubled algebra; fails unless `a` is pre-Lie.
pub fn build_hat(a: &PreLieAlgebra) -> Result<HatLie> {
    if let Some(&(i, j, k)) = a.pre_lie_violations().first() {
        return Err(Error::NotPreLie(i + 1, j + 1, k + 1));
    }
    let n = a.dim();
    let mut table = vec![vec![HatElem::zero(n); 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            let ij = a.product(i, j);
            let ji = a.product(j, i);
            let (xi, xj) = (n + i, n + j);
            for k in 0..n {
                // [x_i, x_j] = e_i e_j - e_j e_i
                table[xi][xj].0[n + k] = &ij[k] - &ji[k];
                // [x_i, y_j] = (e_i e_j)'
                table[xi][j].0[k] = ij[k].clone();
                // [y_i, x_j] = -(e_j e_i)'
                table[i][xj].0[k] = -ji[k].clone();
            }
        }
    }
    Ok(HatLie { n, table })
}

/// Outcome of [`check_hat_lie_rb`]: one message per failed identity.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HatCheck {
    pub antisymmetry_checked: usize,
    pub jacobi_checked: usize,
    pub rb_checked: usize,
    pub failures: Vec<String>,
}

impl HatCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Antisymmetry and Jacobi on basis triples, and the weight-zero RB identity
/// `[R a, R b] = R([R a, b] + [a, R b])` on basis pairs.
pub fn check_hat_lie_rb(h: &HatLie) -> HatCheck {
    let basis = h.basis();
    let letters: Vec<Letter> = (0..2 * h.n).map(|i| letter_at(h.n, i)).collect();
    let mut report = HatCheck::default();
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            report.antisymmetry_checked += 1;
            let ab = h.bracket(a, b);
            if !ab.add(&h.bracket(b, a)).is_zero() {
                report
                    .failures
                    .push(format!("antisymmetry fails on ({}, {})", letters[i], letters[j]));
            }

            report.rb_checked += 1;
            let (ra, rb) = (h.rb(a), h.rb(b));
            let lhs = h.bracket(&ra, &rb);
            let rhs = h.rb(&h.bracket(&ra, b).add(&h.bracket(a, &rb)));
            if lhs != rhs {
                report
                    .failures
                    .push(format!("RB identity fails on ({}, {})", letters[i], letters[j]));
            }

            for (k, c) in basis.iter().enumerate() {
                report.jacobi_checked += 1;
                let jac = h
                    .bracket(&h.bracket(a, b), c)
                    .add(&h.bracket(&h.bracket(b, c), a))
                    .add(&h.bracket(&h.bracket(c, a), b));
                if !jac.is_zero() {
                    report.failures.push(format!(
                        "Jacobi fails on ({}, {}, {})",
                        letters[i], letters[j], letters[k]
                    ));
                }
            }
        }
    }
    report
}
