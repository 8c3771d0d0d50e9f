//! One line per acceptance criterion. Every criterion is exact: the pinned
//! tolerance is zero failures (rational arithmetic, equality of normal forms).

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use prelie_embed::envelope::{
    check_dendriform_axioms, check_embedding, check_rb_in_quotient, SampleBounds,
};
use prelie_embed::gsb::verify_gsb;
use prelie_embed::report::Check;
use prelie_embed::suite::{confluence_report, lemma_report, long_rb_check, yx_check};
use prelie_embed::{build_hat, HatLie, PreLieAlgebra};

const SEED: u64 = 20240611;
const GSB_BOUNDS: (u32, u32) = (5, 2);
const CONFLUENCE_SAMPLES: usize = 1000;
const LEMMA_MAX_L: usize = 6;
const BINOMIAL_MAX_L: usize = 12;
const LONG_RB_PER_K: usize = 25;
const RB_PAIRS: usize = 200;
const DENDRIFORM_TRIPLES: usize = 100;
const LEFT_SYMMETRY_TRIPLES: usize = 100;

struct Outcome {
    lines: Vec<String>,
    ok: bool,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            lines: Vec::new(),
            ok: true,
        }
    }

    fn checks(&mut self, label: &str, checks: &[Check]) {
        for c in checks {
            let failed = c.failures.len() as u64;
            self.ok &= c.passed() && c.total > 0;
            self.lines.push(format!("{label}: {} {}/{} failed", c.name, failed, c.total));
            for f in c.failures.iter().take(3) {
                self.lines.push(format!("    {} ({})", f.witness, f.detail));
            }
        }
    }
}

fn algebras() -> Vec<(&'static str, PreLieAlgebra, HatLie)> {
    [
        ("n=1", PreLieAlgebra::idempotent_line()),
        ("n=2", PreLieAlgebra::unit_extended()),
    ]
    .into_iter()
    .map(|(name, a)| {
        let h = build_hat(&a).expect("valid algebra");
        (name, a, h)
    })
    .collect()
}

fn gsb() -> Outcome {
    let mut out = Outcome::new();
    let (d, r) = GSB_BOUNDS;
    for (name, _, hat) in algebras() {
        let start = Instant::now();
        let report = verify_gsb(&hat, d, r, 0).expect("gsb run");
        out.ok &= report.passed() && report.total() > 0;
        out.lines.push(format!(
            "{name}: {} relations, {} compositions, {} failures ({:.1}s)",
            report.relations,
            report.total(),
            report.failure_count(),
            start.elapsed().as_secs_f64()
        ));
        for w in report.failures.iter().take(3) {
            out.lines.push(format!("    f = {}, g = {}, w = {}: {}", w.f, w.g, w.w, w.residue));
        }
    }
    out
}

fn confluence() -> Outcome {
    let mut out = Outcome::new();
    for (name, _, hat) in algebras() {
        let report = confluence_report(&hat, CONFLUENCE_SAMPLES, SEED).expect("confluence run");
        out.checks(name, &report.checks);
    }
    out
}

fn lemma() -> Outcome {
    let mut out = Outcome::new();
    for (name, _, hat) in algebras() {
        let report = lemma_report(&hat, LEMMA_MAX_L, BINOMIAL_MAX_L).expect("lemma run");
        out.checks(name, &report.checks);
    }
    out
}

fn identities() -> Outcome {
    let mut out = Outcome::new();
    for (name, _, hat) in algebras() {
        let long = long_rb_check(&hat, LONG_RB_PER_K, SEED).expect("long-rb run");
        let yx = yx_check(&hat, 5).expect("yx run");
        out.checks(name, &[long, yx]);
    }
    out
}

fn rb_law() -> Outcome {
    let mut out = Outcome::new();
    for (name, _, hat) in algebras() {
        let c = check_rb_in_quotient(&hat, RB_PAIRS, SampleBounds::default(), SEED).expect("rb run");
        out.checks(name, &[c]);
    }
    out
}

fn dendriform() -> Outcome {
    let mut out = Outcome::new();
    for (name, _, hat) in algebras() {
        let c = check_dendriform_axioms(&hat, DENDRIFORM_TRIPLES, SampleBounds::default(), SEED)
            .expect("dendriform run");
        out.checks(name, &[c]);
    }
    out
}

fn embedding() -> Outcome {
    let mut out = Outcome::new();
    for (name, a, hat) in algebras() {
        let checks = check_embedding(&a, &hat, LEFT_SYMMETRY_TRIPLES, SEED).expect("embedding run");
        out.checks(name, &checks);
    }
    out
}

fn worked_normal_forms() -> Outcome {
    let mut out = Outcome::new();
    let file = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../algebras/idempotent-line.json");
    let cases = [
        ("R(y1)", "x1\n"),
        ("R(x1 x1)", "0\n"),
        ("x1 y1", "y1 x1 + y1\n"),
        ("R(y1 x1)", "1/2 x1 x1 - 1/2 x1\n"),
    ];
    for (expr, expected) in cases {
        let o = Command::new(env!("CARGO_BIN_EXE_prelie-embed"))
            .args(["nf", file.to_str().unwrap(), "-e", expr])
            .output()
            .expect("binary runs");
        let got = String::from_utf8_lossy(&o.stdout).into_owned();
        let ok = o.status.success() && got == expected;
        out.ok &= ok;
        out.lines.push(format!("nf({expr}) = {:?}, expected {:?}", got.trim_end(), expected.trim_end()));
    }
    out
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 gsb compositions trivial at bounds (5, 2)", gsb),
        ("2 confluence on 1000 samples", confluence),
        ("3 straightening lemma l <= 6, binomial identity l <= 12", lemma),
        ("4 long RB k <= 4, collapse and power identities l <= 5", identities),
        ("5 RB law on 200 pairs", rb_law),
        ("6 dendriform axioms on 100 triples", dendriform),
        ("7 embedding and left symmetry", embedding),
        ("8 worked normal forms, byte exact", worked_normal_forms),
    ];
    let mut all = true;
    for (label, run) in criteria {
        let outcome = run();
        all &= outcome.ok;
        println!("{} criterion {label}", if outcome.ok { "PASS" } else { "FAIL" });
        for line in &outcome.lines {
            println!("    {line}");
        }
    }
    println!("{}", if all { "acceptance: all criteria pass" } else { "acceptance: FAILED" });
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
