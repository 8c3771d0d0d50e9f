use std::cmp::Ordering;

use proptest::prelude::*;

use prelie_embed::expr::{parse_expr, print_expr};
use prelie_embed::poly::int;
use prelie_embed::prelie::HatElem;
use prelie_embed::reduce::{MemoReducer, Reducer, Strategy};
use prelie_embed::rules::{enumerate_relations, expand, find_match, find_match_innermost};
use prelie_embed::sample::Sampler;
use prelie_embed::{build_hat, Atom, FamilySet, HatLie, Letter, Polynomial, PreLieAlgebra, Word};

fn hats() -> [HatLie; 2] {
    [
        build_hat(&PreLieAlgebra::idempotent_line()).unwrap(),
        build_hat(&PreLieAlgebra::unit_extended()).unwrap(),
    ]
}

fn sampler(seed: u64) -> Sampler {
    Sampler::new(seed, 2)
}

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(128)
}

fn letters_weakly_ascend(w: &Word) -> bool {
    let mut prev: Option<Letter> = None;
    for a in w.atoms() {
        match a {
            Atom::Letter(l) => {
                if prev.is_some_and(|p| p > *l) {
                    return false;
                }
                prev = Some(*l);
            }
            Atom::Wrap(inner) => {
                if !letters_weakly_ascend(inner) {
                    return false;
                }
                prev = None;
            }
        }
    }
    true
}

fn has_adjacent_wraps(w: &Word) -> bool {
    w.atoms().windows(2).any(|p| p[0].is_wrap() && p[1].is_wrap())
        || w.atoms().iter().filter_map(Atom::as_wrap).any(|inner| has_adjacent_wraps(inner))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn order_is_total_and_transitive(seed in any::<u64>()) {
        let mut s = sampler(seed);
        let (a, b, c) = (s.word(5, 2), s.word(5, 2), s.word(5, 2));
        prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
        prop_assert_eq!(a.cmp(&b) == Ordering::Equal, a == b);
        if a <= b && b <= c {
            prop_assert!(a <= c);
        }
    }

    #[test]
    fn order_is_compatible_with_contexts(seed in any::<u64>()) {
        let mut s = sampler(seed);
        let host = s.word(5, 2);
        let (u, v) = (s.word(4, 1), s.word(4, 1));
        for (q, _) in host.subwords() {
            prop_assert_eq!(u.cmp(&v), q.substitute(&u).cmp(&q.substitute(&v)));
        }
    }

    #[test]
    fn substitution_reconstructs_occurrences(seed in any::<u64>()) {
        let mut s = sampler(seed);
        let host = s.word(6, 2);
        for (q, sub) in host.subwords() {
            prop_assert_eq!(q.substitute(&sub), host.clone());
            prop_assert!(host.occurrences(&sub).contains(&q));
        }
    }

    #[test]
    fn multiplication_is_associative_and_distributive(seed in any::<u64>()) {
        let mut s = sampler(seed);
        let (p, q, r) = (s.polynomial(3, 3, 1), s.polynomial(3, 3, 1), s.polynomial(3, 3, 1));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn parse_inverts_print(seed in any::<u64>()) {
        let mut s = sampler(seed);
        let p = s.polynomial(4, 6, 3);
        let text = print_expr(&p);
        prop_assert_eq!(parse_expr(&text, 2).unwrap(), p);
        for w in parse_expr(&text, 2).unwrap().words() {
            let single = print_expr(&Polynomial::monomial(w.clone()));
            prop_assert_eq!(parse_expr(&single, 2).unwrap(), Polynomial::monomial(w.clone()));
        }
    }

    #[test]
    fn expansions_lie_below_the_matched_word(seed in any::<u64>(), which in 0usize..2) {
        let hat = &hats()[which];
        let mut s = Sampler::new(seed, hat.dim());
        let w = s.word(6, 3);
        if let Some(m) = find_match(&w, FamilySet::ALL) {
            prop_assert_eq!(m.ambient(), w.clone());
            for t in expand(&m, hat).unwrap().words() {
                prop_assert!(*t < w, "{} not below {}", t, w);
            }
        }
        if let Some(m) = find_match_innermost(&w, FamilySet::ALL) {
            prop_assert_eq!(m.ambient(), w.clone());
            for t in expand(&m, hat).unwrap().words() {
                prop_assert!(*t < w);
            }
        }
    }

    #[test]
    fn normal_forms_are_idempotent_and_reduced(seed in any::<u64>(), which in 0usize..2) {
        let hat = &hats()[which];
        let mut s = Sampler::new(seed, hat.dim());
        let p = s.polynomial(3, 6, 2);
        let r = Reducer::new(hat);
        let nf = r.normal_form(&p).unwrap();
        prop_assert_eq!(r.normal_form(&nf).unwrap(), nf.clone());
        for w in nf.words() {
            prop_assert!(r.is_irreducible(w));
            prop_assert!(letters_weakly_ascend(w), "{}", w);
            prop_assert!(!has_adjacent_wraps(w), "{}", w);
        }
    }

    #[test]
    fn normal_form_is_linear(seed in any::<u64>(), which in 0usize..2) {
        let hat = &hats()[which];
        let mut s = Sampler::new(seed, hat.dim());
        let (p, q) = (s.polynomial(2, 5, 2), s.polynomial(2, 5, 2));
        let c = s.coeff();
        let mut r = MemoReducer::new(hat);
        let lhs = r.normal_form(&(&p.scale(&c) + &q)).unwrap();
        let rhs = &r.normal_form(&p).unwrap().scale(&c) + &r.normal_form(&q).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn strategies_and_reducers_agree(seed in any::<u64>(), which in 0usize..2) {
        let hat = &hats()[which];
        let mut s = Sampler::new(seed, hat.dim());
        let p = s.polynomial(3, 6, 2);
        let a = Reducer::new(hat).normal_form(&p).unwrap();
        let b = Reducer::new(hat).strategy(Strategy::SmallestInnermost).normal_form(&p).unwrap();
        let c = MemoReducer::new(hat).normal_form(&p).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(&a, &c);
    }

    #[test]
    fn traces_account_for_the_difference(seed in any::<u64>(), which in 0usize..2) {
        let hat = &hats()[which];
        let mut s = Sampler::new(seed, hat.dim());
        let p = s.polynomial(2, 5, 2);
        let red = Reducer::new(hat).traced(true).reduce(&p).unwrap();
        let mut acc = Polynomial::zero();
        for step in &red.trace {
            let rel = &Polynomial::monomial(step.rule.ambient()) - &expand(&step.rule, hat).unwrap();
            acc.add_scaled(&step.coeff, &rel);
        }
        prop_assert_eq!(acc, &p - &red.normal_form);
    }

    #[test]
    fn letter_combinations_are_fixed(coeffs in proptest::collection::vec(-5i64..=5, 4)) {
        let hat = &hats()[1];
        let letters = Letter::all(2);
        let p = Polynomial::from_terms(
            letters.iter().zip(&coeffs).map(|(l, c)| (Word::letter(*l), int(*c))),
        );
        prop_assert_eq!(Reducer::new(hat).normal_form(&p).unwrap(), p);
    }

    #[test]
    fn iterated_bracket_recursion(p in 0usize..6, yi in 1u16..=2, xi in 1u16..=2, dual in any::<bool>()) {
        let hat = &hats()[1];
        let x = if dual { Letter::y(xi) } else { Letter::x(xi) };
        let y = HatElem::letter(2, Letter::y(yi));
        let next = hat.iterated_bracket(&y, x, p + 1);
        let step = hat.bracket(&hat.iterated_bracket(&y, x, p), &HatElem::letter(2, x));
        prop_assert_eq!(&next, &step);
        prop_assert!(next.x_part_is_zero());
    }
}

#[test]
fn span_constraints_and_square_zero() {
    for hat in hats() {
        let n = hat.dim();
        for u in hat.letters() {
            for v in hat.letters() {
                let b = hat.bracket_letters(u, v);
                if u.is_x() && v.is_x() {
                    assert!(b.y_part_is_zero(), "[{u}, {v}]");
                } else {
                    assert!(b.x_part_is_zero(), "[{u}, {v}]");
                }
                if u.is_y() && v.is_y() {
                    assert!(b.is_zero());
                }
            }
            let e = HatElem::letter(n, u);
            assert!(hat.rb(&hat.rb(&e)).is_zero());
        }
    }
}

#[test]
fn relations_are_monic_with_smaller_tails() {
    for hat in hats() {
        for rel in enumerate_relations(&hat, 4, 2).unwrap() {
            assert!(rel.poly.is_monic());
            assert_eq!(rel.poly.leading_monomial().unwrap(), &rel.lhs);
        }
    }
}
