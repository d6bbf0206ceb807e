//! Acceptance suite. Prints one line per criterion and exits nonzero if any
//! fails. Runs without the test harness so the lines are always shown.
//!
//! All comparisons are exact rational arithmetic: the tolerance on every
//! inequality and equality below is zero.

use std::process::Command;

use vecmetric::battery::{self, BatteryResult};
use vecmetric::builtin::list_builtin_suites;
use vecmetric::report::Verdict;
use vecmetric::riesz::RieszSpace;
use vecmetric::riesz::VectorElement;
use vecmetric::scalar::Scalar;
use vecmetric::sequence::{DecreasingWitness, Refusal, Shape, SymbolicSequence};

const SEED: u64 = 20240611;
const HORIZON: u64 = 1000;
const TOLERANCE: &str = "exact, tol = 0";

struct Outcome {
    id: u32,
    title: &'static str,
    pass: bool,
    detail: String,
}

fn battery_line(r: &vecmetric::error::Result<BatteryResult>) -> (bool, String) {
    match r {
        Ok(b) if b.passed() => (true, format!("{} instances, 0 violations", b.instances)),
        Ok(b) => (false, format!("{} violations, first: {}", b.failures.len(), b.failures[0])),
        Err(e) => (false, format!("error: {e}")),
    }
}

/// `T(d) = ρ` and `S(ρ) = d` with `d = 2|x-y|` and `ρ = (|x-y|, 3|x-y|)`,
/// recomputed over plain integers scaled by 2.
fn line_equivalence_oracle() -> bool {
    (-25i64..25).all(|k| {
        let (x, y) = (k, 3 * k - 7);
        let gap = (x - y).abs();
        let d2 = 2 * 2 * gap;
        let rho2 = (2 * gap, 2 * 3 * gap);
        let t = (d2 / 2, 3 * d2 / 2);
        let s = 2 * rho2.0;
        t.0 <= rho2.0 && t.1 <= rho2.1 && s <= d2
    })
}

fn criterion_5() -> (bool, String) {
    let lex = RieszSpace::LexPlane;
    let v = lex.archimedean_verdict();
    let Some(w) = v.witness.as_ref() else {
        return (false, "no lower-bound witness stored".into());
    };
    let qs = [Scalar::one(), Scalar::from_int(1000), Scalar::from_int(1_000_000)];
    let verified = w.verify(HORIZON, &qs).is_ok();
    let a = VectorElement::new(lex.clone(), vec![Scalar::one(), Scalar::zero()]).unwrap();
    let refused = matches!(
        DecreasingWitness::new(SymbolicSequence::single(a.clone(), Shape::Harmonic)),
        Err(Refusal::NonArchimedean { .. })
    );
    let q = Shape::geometric(Scalar::ratio(1, 2)).unwrap();
    let refused_geo = matches!(
        DecreasingWitness::new(SymbolicSequence::single(a.clone(), q)),
        Err(Refusal::NonArchimedean { .. })
    );
    let fs_ok = DecreasingWitness::new(SymbolicSequence::single(a, Shape::FiniteSupport(5))).is_ok();
    let pass = !lex.is_archimedean() && !v.archimedean && verified && refused && refused_geo && fs_ok;
    (
        pass,
        format!(
            "archimedean = {}, lower bound verified n <= {HORIZON}: {verified}, 1/n refused: {refused}, q^n refused: {refused_geo}",
            v.archimedean
        ),
    )
}

fn criterion_8() -> (bool, String, Option<BatteryResult>) {
    let adv = battery::adversarial_uniform_limit(HORIZON);
    let adv_ok = adv.as_ref().is_ok_and(|r| r.verdict == Verdict::Fail && r.items.len() == 1);
    let r = battery::uniform_limit(SEED, 10, HORIZON);
    let (ok, detail) = battery_line(&r);
    let combined = r
        .as_ref()
        .map(|b| b.reports.iter().filter(|c| c.verdict == Verdict::Pass).count())
        .unwrap_or(0);
    (
        ok && adv_ok && combined >= 10,
        format!("{detail}, {combined} combined witnesses, adversarial rejected before combination: {adv_ok}"),
        r.ok(),
    )
}

fn criterion_11() -> (bool, String) {
    let exe = env!("CARGO_BIN_EXE_vecmetric");
    let run = |name: &str| {
        Command::new(exe)
            .args(["run-builtin", name, "--no-timing"])
            .output()
            .expect("binary runs")
    };
    let mut problems = Vec::new();
    let catalog = list_builtin_suites();
    for b in catalog {
        let first = run(b.name);
        let second = run(b.name);
        let code = first.status.code();
        if code != Some(b.category.expected_exit()) {
            problems.push(format!("{} exited {code:?}, expected {}", b.name, b.category.expected_exit()));
        }
        if first.stdout != second.stdout || code != second.status.code() {
            problems.push(format!("{} differs between runs", b.name));
        }
    }
    if problems.is_empty() {
        (true, format!("{} scenarios, exit codes as expected, reports byte-identical", catalog.len()))
    } else {
        (false, problems.join("; "))
    }
}

fn main() {
    let mut out = Vec::new();
    let mut kept: Vec<BatteryResult> = Vec::new();
    let mut record = |id, title, (pass, detail): (bool, String)| out.push(Outcome { id, title, pass, detail });

    let mut battery = |id, title, r: vecmetric::error::Result<BatteryResult>, extra: bool| {
        let (pass, detail) = battery_line(&r);
        if let Ok(b) = r {
            kept.push(b);
        }
        (id, title, (pass && extra, detail))
    };

    let axioms = battery::metric_axioms(SEED, 200);
    let rejected = axioms
        .as_ref()
        .map(|b| b.reports.iter().filter(|r| r.verdict == Verdict::Fail && r.counterexample.is_some()).count())
        .unwrap_or(0);
    let c1 = battery(1, "metric axioms: 200 repaired tables pass, 200 perturbed rejected with a triple", axioms, rejected == 200);
    let c2 = battery(
        2,
        "one-dimensional example: certificate verifies on 50 pairs, negative entries rejected",
        battery::line_equivalence(SEED, 50),
        line_equivalence_oracle(),
    );
    let c3 = battery(
        3,
        "two-dimensional example (sum and max forms): certificates and 20-instance cross-check",
        battery::plane_equivalence(SEED, 50, 20),
        true,
    );
    let c4 = battery(
        4,
        "topological implies vectorial on 30 affine maps",
        battery::topological_implies_vectorial(SEED, 30),
        true,
    );
    let c6 = battery(
        6,
        "product convergence equals componentwise convergence on 20 instances",
        battery::product_componentwise(SEED, 20),
        true,
    );
    let c7 = battery(
        7,
        "coincidence sets of 100 table map pairs are closed",
        battery::coincidence_closed(SEED, 100),
        true,
    );
    let c9 = battery(
        9,
        "joins and meets of 100 certified pairs, uniform metric axioms",
        battery::birkhoff_cvo(SEED, 100),
        true,
    );
    let (p8, d8, b8) = criterion_8();
    kept.extend(b8);

    for (id, title, res) in [c1, c2, c3, c4] {
        record(id, title, res);
    }
    record(5, "lexicographic plane is not Archimedean, 1/n witness refused", criterion_5());
    for (id, title, res) in [c6, c7] {
        record(id, title, res);
    }
    record(8, "uniform limits: combined witness 2a_n + b_n on 10 instances plus one adversarial", (p8, d8));
    let (id, title, res) = c9;
    record(id, title, res);

    let mut total = 0;
    let mut bad = Vec::new();
    for b in &kept {
        match b.recheck_witnesses(HORIZON) {
            Ok(k) => total += k,
            Err(e) => bad.push(format!("{}: {e}", b.name)),
        }
    }
    record(
        10,
        "every witness from criteria 1-9 re-checked by direct evaluation at n = 1..1000",
        if bad.is_empty() && total > 0 {
            (true, format!("{total} witnesses hold"))
        } else {
            (false, format!("{total} held, failures: {}", bad.join("; ")))
        },
    );
    record(11, "run-builtin over the catalog: exit codes and byte-identical reports", criterion_11());

    for o in &out {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] criterion {:>2}: {} ({TOLERANCE}): {}", o.id, o.title, o.detail);
    }
    let failed: Vec<u32> = out.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    assert_eq!(out.len(), 11);
    if failed.is_empty() {
        println!("acceptance: 11/11 criteria passed");
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
