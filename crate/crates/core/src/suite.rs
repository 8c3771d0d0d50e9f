//! Check batteries behind the command-line subcommands.

use serde_json::json;

use crate::envelope::{
    binomial_identity, check_dendriform_axioms, check_embedding, check_long_rb,
    check_rb_in_quotient, check_yx_relation, lemma34_check, SampleBounds,
};
use crate::error::Result;
use crate::gsb::verify_gsb;
use crate::prelie::{check_hat_lie_rb, HatLie, PreLieAlgebra};
use crate::reduce::confluence_sample;
use crate::report::{Check, Failure, Report};
use crate::sample::Sampler;
use crate::word::Letter;

pub fn prelie_report(a: &PreLieAlgebra) -> Report {
    let mut report = Report::new("check-prelie", json!({ "dim": a.dim() }), None);
    let mut check = Check::new("left-symmetry");
    let violations = a.pre_lie_violations();
    let n = a.dim() as u64;
    check.total = n * n * n;
    check.failures = violations
        .into_iter()
        .map(|(i, j, k)| Failure {
            witness: format!("(e{}, e{}, e{})", i + 1, j + 1, k + 1),
            detail: "associator not symmetric in the first two arguments".into(),
        })
        .collect();
    report.push(check);
    report
}

pub fn hat_report(hat: &HatLie) -> Report {
    let mut report = Report::new("hat", json!({ "dim": hat.dim() }), None);
    let result = check_hat_lie_rb(hat);
    let mut check = Check::new("lie-rb");
    check.total = (result.antisymmetry_checked + result.jacobi_checked + result.rb_checked) as u64;
    check.failures = result
        .failures
        .iter()
        .map(|f| Failure {
            witness: f.clone(),
            detail: String::new(),
        })
        .collect();
    report.push(check);
    report
}

/// Bracket and operator tables, one line per nonzero entry.
pub fn hat_tables(hat: &HatLie) -> String {
    let mut out = String::new();
    let letters = hat.letters();
    for &u in &letters {
        for &v in &letters {
            let b = hat.bracket_letters(u, v);
            if !b.is_zero() {
                out.push_str(&format!("[{u}, {v}] = {}\n", b.to_polynomial()));
            }
        }
    }
    for &u in &letters {
        let image = hat.rb(&crate::prelie::HatElem::letter(hat.dim(), u));
        out.push_str(&format!("R({u}) = {}\n", image.to_polynomial()));
    }
    out
}

pub fn gsb_report(hat: &HatLie, max_deg: u32, max_deg_r: u32, jobs: usize) -> Result<Report> {
    let gsb = verify_gsb(hat, max_deg, max_deg_r, jobs)?;
    let params = json!({
        "max_deg": max_deg,
        "max_rdeg": max_deg_r,
        "relations": gsb.relations,
        "compositions": gsb.total(),
        "scope": "relations with leading word inside the bounds only",
    });
    let mut report = Report::new("gsb-verify", params, None);
    for ((kind, f, g), tally) in &gsb.tallies {
        let mut check = Check::new(format!("{kind} {f}/{g}"));
        check.total = tally.total;
        check.failures = gsb
            .failures
            .iter()
            .filter(|w| w.kind == *kind && w.f_family == *f && w.g_family == *g)
            .map(|w| Failure {
                witness: format!("f = {}, g = {}, w = {}", w.f, w.g, w.w),
                detail: format!("residue {}", w.residue),
            })
            .collect();
        if check.failures.is_empty() && tally.failures > 0 {
            check.failures.push(Failure {
                witness: format!("{} failures beyond the witness limit", tally.failures),
                detail: String::new(),
            });
        }
        report.push(check);
    }
    if gsb.tallies.is_empty() {
        report.push(Check::new("compositions"));
    }
    Ok(report)
}

pub fn confluence_report(hat: &HatLie, samples: usize, seed: u64) -> Result<Report> {
    let (max_letters, max_deg_r) = (6, 2);
    let params = json!({ "samples": samples, "max_deg": max_letters, "max_rdeg": max_deg_r });
    let mut report = Report::new("confluence", params, Some(seed));
    report.push(confluence_sample(hat, samples, max_letters, max_deg_r, seed)?);
    Ok(report)
}

/// Longest argument list, largest `l` for the collapse identity.
pub const LONG_RB_MAX_K: usize = 4;
pub const YX_MAX_L: usize = 5;

pub fn long_rb_check(hat: &HatLie, per_k: usize, seed: u64) -> Result<Check> {
    let mut sampler = Sampler::new(seed, hat.dim());
    let mut check = Check::new("long-rb");
    for k in 2..=LONG_RB_MAX_K {
        let mut lists = vec![vec![crate::word::Word::letter(Letter::y(1)); k]];
        for _ in 0..per_k {
            lists.push((0..k).map(|_| sampler.word(2, 1)).collect());
        }
        for args in lists {
            let ok = check_long_rb(&args, hat)?;
            check.record(ok, || {
                let shown: Vec<String> = args.iter().map(|a| format!("R({a})")).collect();
                (shown.join(" "), "normal forms differ".into())
            });
        }
    }
    Ok(check)
}

pub fn yx_check(hat: &HatLie, max_l: usize) -> Result<Check> {
    let mut check = Check::new("yx-relation");
    for beta in 1..=hat.dim() as u16 {
        for l in 0..=max_l {
            let ok = check_yx_relation(l, beta, hat)?;
            check.record(ok, || (format!("l = {l}, beta = {beta}"), "normal forms differ".into()));
        }
    }
    Ok(check)
}

pub fn envelope_report(a: &PreLieAlgebra, hat: &HatLie, samples: usize, seed: u64) -> Result<Report> {
    let params = json!({
        "samples": samples,
        "long_rb_max_k": LONG_RB_MAX_K,
        "yx_max_l": YX_MAX_L,
    });
    let mut report = Report::new("envelope-verify", params, Some(seed));
    let bounds = SampleBounds::default();
    report.push(check_rb_in_quotient(hat, samples, bounds, seed)?);
    report.push(check_dendriform_axioms(hat, samples, bounds, seed.wrapping_add(1))?);
    for c in check_embedding(a, hat, samples, seed.wrapping_add(2))? {
        report.push(c);
    }
    report.push(long_rb_check(hat, 10, seed.wrapping_add(3))?);
    report.push(yx_check(hat, YX_MAX_L)?);
    Ok(report)
}

pub fn lemma_report(hat: &HatLie, max_l: usize, max_binomial_l: usize) -> Result<Report> {
    let params = json!({ "max_l": max_l, "max_binomial_l": max_binomial_l });
    let mut report = Report::new("lemma34", params, None);
    let mut check = Check::new("lemma");
    for x in hat.letters() {
        for y in hat.letters() {
            for l in 0..=max_l {
                let ok = lemma34_check(l, x, y, hat)?;
                check.record(ok, || (format!("l = {l}, x = {x}, y = {y}"), "nonzero difference".into()));
            }
        }
    }
    report.push(check);
    let mut binom = Check::new("binomial-identity");
    for l in 0..=max_binomial_l {
        binom.record(binomial_identity(l), || (format!("l = {l}"), "coefficients differ".into()));
    }
    report.push(binom);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prelie::build_hat;

    #[test]
    fn reports_pass_on_the_running_algebra() {
        let a = PreLieAlgebra::idempotent_line();
        let h = build_hat(&a).unwrap();
        assert!(prelie_report(&a).pass);
        assert!(hat_report(&h).pass);
        assert!(gsb_report(&h, 3, 1, 1).unwrap().pass);
        assert!(lemma_report(&h, 3, 6).unwrap().pass);
        assert!(confluence_report(&h, 5, 1).unwrap().pass);
        assert!(envelope_report(&a, &h, 3, 1).unwrap().pass);
    }

    #[test]
    fn tables_list_brackets_and_operator() {
        let h = build_hat(&PreLieAlgebra::idempotent_line()).unwrap();
        let t = hat_tables(&h);
        assert!(t.contains("[x1, y1] = y1\n"));
        assert!(t.contains("[y1, x1] = -y1\n"));
        assert!(t.contains("R(y1) = x1\n"));
        assert!(t.contains("R(x1) = 0\n"));
    }

    #[test]
    fn deterministic_json() {
        let a = PreLieAlgebra::unit_extended();
        let h = build_hat(&a).unwrap();
        let one = envelope_report(&a, &h, 2, 4).unwrap().to_json();
        let two = envelope_report(&a, &h, 2, 4).unwrap().to_json();
        assert_eq!(one, two);
    }
}
