//! Executes resolved scenarios and assembles the structured run report.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::battery;
use crate::continuity::{self, FunctionSpaceEntry};
use crate::error::{Error, Result};
use crate::operators::{self, LatticeVerdict};
use crate::report::{CheckReport, Claim, Verdict};
use crate::scalar::Scalar;
use crate::scenario::{Property, Scenario, Task};
use crate::sequence::{DecreasingWitness, Refusal};
use crate::vmetric::Outcome;

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    /// Horizon for witness re-validation and default search horizon.
    pub max_n: u64,
    pub timing: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            max_n: 1000,
            timing: true,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    #[serde(flatten)]
    pub report: CheckReport,
    pub witnesses_rechecked: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub scenario: String,
    /// `all-pass`, `failures(n)` or `inconclusive(n)`.
    pub status: String,
    pub max_n: u64,
    pub checks: Vec<CheckEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

/// Overall status from per-check verdicts.
pub fn status_of(verdicts: &[Verdict]) -> String {
    let fails = verdicts.iter().filter(|v| **v == Verdict::Fail).count();
    let open = verdicts.iter().filter(|v| **v == Verdict::Inconclusive).count();
    if fails > 0 {
        format!("failures({fails})")
    } else if open > 0 {
        format!("inconclusive({open})")
    } else {
        "all-pass".to_string()
    }
}

impl RunReport {
    pub fn verdicts(&self) -> Vec<Verdict> {
        self.checks.iter().map(|c| c.report.verdict).collect()
    }

    pub fn exit_code(&self) -> i32 {
        match Verdict::combine(self.verdicts()) {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 2,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Runs every check; checks execute concurrently and are reported in
/// declaration order.
pub fn run(scenario: &Scenario, opts: RunOptions) -> RunReport {
    let start = Instant::now();
    let checks: Vec<CheckEntry> = std::thread::scope(|s| {
        let handles: Vec<_> = scenario
            .checks
            .iter()
            .map(|c| s.spawn(move || run_check(&c.name, &c.task, opts)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("check thread")).collect()
    });
    let verdicts: Vec<Verdict> = checks.iter().map(|c| c.report.verdict).collect();
    RunReport {
        scenario: scenario.name().to_string(),
        status: status_of(&verdicts),
        max_n: opts.max_n,
        checks,
        elapsed_ms: opts.timing.then(|| start.elapsed().as_millis() as u64),
    }
}

pub fn run_check(name: &str, task: &Task, opts: RunOptions) -> CheckEntry {
    let start = Instant::now();
    let mut report = match run_task(task, opts.max_n) {
        Ok(r) => r,
        Err(e) => error_report(task, e),
    };
    let rechecked = match report.recheck_witnesses(opts.max_n) {
        Ok(k) => k,
        Err(e) => {
            report.fail(format!("witness re-check: {e}"));
            report.summary = format!("{}; witness re-check failed", report.summary);
            0
        }
    };
    CheckEntry {
        name: name.to_string(),
        report,
        witnesses_rechecked: rechecked,
        elapsed_ms: opts.timing.then(|| start.elapsed().as_millis() as u64),
    }
}

fn kind_of(task: &Task) -> &'static str {
    match task {
        Task::Axioms { .. } => "axioms",
        Task::EConverges { .. } => "e-converges",
        Task::ECauchy { .. } => "e-cauchy",
        Task::EClosed { .. } => "e-closed",
        Task::Equivalence { .. } => "equivalence",
        Task::Classify { .. } => "classify",
        Task::Archimedean { .. } => "archimedean",
        Task::Witness { .. } => "witness",
        Task::VectorialContinuity { .. } => "vectorial-continuity",
        Task::TopologicalContinuity { .. } => "topological-continuity",
        Task::VectorialUniform { .. } => "vectorial-uniform",
        Task::CoincidenceClosed { .. } => "coincidence",
        Task::DenseAgreement { .. } => "dense-agreement",
        Task::Extension { .. } => "extension",
        Task::Isometry { .. } => "isometry",
        Task::Homeomorphism { .. } => "homeomorphism",
        Task::GraphClosed { .. } => "graph-closed",
        Task::UniformLimit { .. } => "uniform-limit",
        Task::FunctionSpace { .. } => "function-space",
        Task::VectorialBounded { .. } => "vectorial-bounded",
        Task::MetricMap { .. } => "metric-map",
        Task::Downarrow { .. } => "downarrow",
        Task::SigmaContinuity { .. } => "sigma-continuity",
        Task::Battery { .. } => "battery",
    }
}

/// Unsupported constructions are undecidable here, anything else is a
/// failed check.
fn error_report(task: &Task, e: Error) -> CheckReport {
    let mut r = CheckReport::new(kind_of(task));
    match e {
        Error::Unsupported(_) => {
            r.inconclusive();
            r.conclude(&e.to_string())
        }
        other => {
            r.fail(other.to_string());
            r.conclude("check raised an error")
        }
    }
}

fn refusal_report(mut r: CheckReport, refusal: &Refusal, what: &str) -> CheckReport {
    if refusal.is_definite() {
        r.fail(refusal.to_string());
        r.conclude(&format!("{what} refuted"))
    } else {
        r.inconclusive();
        r.conclude(&format!("{what} undecided: {refusal}"))
    }
}

fn outcome_report(kind: &str, outcome: Outcome, claim: Claim, what: &str) -> CheckReport {
    let r = CheckReport::new(kind);
    match outcome {
        Ok(w) => {
            let mut r = r;
            r.witness("witness", w.clone(), claim);
            r.item_with_witness("witness", Verdict::Pass, what, &w);
            r.conclude(&format!("{what} with witness {w}"))
        }
        Err(refusal) => refusal_report(r, &refusal, what),
    }
}

fn lattice_verdict(v: &LatticeVerdict) -> (Verdict, String) {
    match v {
        LatticeVerdict::VerifiedOnSamples { pairs } => (Verdict::Pass, format!("verified on {pairs} sample pairs")),
        LatticeVerdict::Refuted {
            x,
            y,
            image_of_join,
            join_of_images,
        } => (
            Verdict::Fail,
            format!("T(x ∨ y) = {image_of_join} but T(x) ∨ T(y) = {join_of_images} at x = {x}, y = {y}"),
        ),
        LatticeVerdict::NotApplicable => (Verdict::Inconclusive, "not applicable to a nonlinear operator".into()),
    }
}

pub fn run_task(task: &Task, max_n: u64) -> Result<CheckReport> {
    let kind = kind_of(task);
    Ok(match task {
        Task::Axioms { metric, sample } => metric.check_axioms(sample)?,
        Task::EConverges { metric, sequence, limit } => outcome_report(
            kind,
            metric.e_converges(sequence, limit)?,
            Claim::Distance {
                metric: metric.clone(),
                map: None,
                sequence: sequence.clone(),
                limit: limit.clone(),
            },
            &format!("{sequence} converges to {limit}"),
        ),
        Task::ECauchy { metric, sequence } => outcome_report(
            kind,
            metric.e_cauchy(sequence)?,
            Claim::Cauchy {
                metric: metric.clone(),
                map: None,
                sequence: sequence.clone(),
            },
            &format!("{sequence} is Cauchy"),
        ),
        Task::EClosed {
            metric,
            subset,
            suites,
            horizon,
        } => metric.is_e_closed(subset, suites, horizon.unwrap_or(max_n))?,
        Task::Equivalence { d, rho, certificate, points } => {
            operators::check_equivalence_certificate(d, rho, certificate, &operators::all_pairs(points))?
        }
        Task::Classify { operator, require } => {
            let c = operator.classify()?;
            let mut r = CheckReport::new(kind);
            r.note(format!("operator {operator}"));
            for p in require {
                let (label, v, detail) = match p {
                    Property::Positive => (
                        "positive",
                        if c.positive { Verdict::Pass } else { Verdict::Fail },
                        c.positivity_counterexample.clone().unwrap_or_else(|| "all entries nonnegative".into()),
                    ),
                    Property::SigmaOrderContinuous => (
                        "sigma-order-continuous",
                        if c.sigma_order_continuous { Verdict::Pass } else { Verdict::Fail },
                        "positive finite-dimensional operator".into(),
                    ),
                    Property::OrderBounded => (
                        "order-bounded",
                        if c.order_bounded { Verdict::Pass } else { Verdict::Fail },
                        "finite-dimensional".into(),
                    ),
                    Property::LatticeHomomorphism => {
                        let (v, d) = lattice_verdict(&c.lattice_homomorphism);
                        ("lattice-homomorphism", v, d)
                    }
                };
                if v == Verdict::Fail {
                    r.fail(format!("{label}: {detail}"));
                }
                r.item(label, v, &detail);
            }
            r.settle(
                "all required properties hold",
                "a required property fails",
                "a required property is undecided",
            )
        }
        Task::Archimedean { space } => {
            let v = space.archimedean_verdict();
            let mut r = CheckReport::new(kind);
            match v.witness {
                None => r.conclude(&format!("{space} is Archimedean")),
                Some(w) => {
                    let qs = [Scalar::one(), Scalar::from_int(1000), Scalar::from_int(1_000_000)];
                    match w.verify(max_n, &qs) {
                        Ok(()) => r.note(format!(
                            "lower bound re-checked for n <= {max_n} and q in {{1, 1000, 1000000}}"
                        )),
                        Err((n, q)) => r.note(format!("stored lower bound breaks at n = {n}, q = {q}")),
                    }
                    r.fail(format!(
                        "a = {} has q·{} <= a/n for all n and all q > 0, so a/n does not decrease to 0",
                        w.element, w.lower_bound_direction
                    ));
                    r.conclude(&format!("{space} is not Archimedean"))
                }
            }
        }
        Task::Witness { sequence, space } => {
            let r = CheckReport::new(kind);
            match sequence {
                Ok(s) => r.conclude(&format!("{s} decreases to 0 in {space}")),
                Err(refusal) => refusal_report(r, refusal, "witness construction"),
            }
        }
        Task::VectorialContinuity { map, d, rho, suite } => continuity::check_vectorial_continuity(map, d, rho, suite)?,
        Task::TopologicalContinuity {
            map,
            d,
            rho,
            tolerances,
        } => continuity::check_topological_continuity(map, d, rho, tolerances)?,
        Task::VectorialUniform { map, d, rho, suite } => continuity::check_vectorial_uniform(map, d, rho, suite)?,
        Task::CoincidenceClosed { f, g, d } => continuity::check_coincidence_closed(f, g, d)?,
        Task::DenseAgreement {
            f,
            g,
            d,
            rho,
            subset,
            witnesses,
        } => continuity::check_dense_agreement(f, g, d, rho, subset, witnesses)?,
        Task::Extension {
            map,
            d,
            rho,
            complete,
            targets,
        } => {
            let (values, mut r) = continuity::extend_from_dense(map, *complete, targets, d, rho)?;
            for (x, y) in values {
                r.note(format!("g({x}) = {y}"));
            }
            r
        }
        Task::Isometry {
            map,
            operator,
            d,
            rho,
            points,
        } => continuity::check_isometry(map, operator, d, rho, &operators::all_pairs(points))?,
        Task::Homeomorphism {
            map,
            inverse,
            d,
            rho,
            forward,
            backward,
            closed,
            horizon,
        } => continuity::check_homeomorphism(map, inverse, d, rho, forward, backward, closed, horizon.unwrap_or(max_n))?,
        Task::GraphClosed { map, d, rho, suite } => continuity::check_graph_closed(map, d, rho, suite)?,
        Task::UniformLimit {
            family,
            limit,
            witness,
            d,
            rho,
            suite,
            horizon,
        } => match witness {
            Ok(a) => continuity::uniform_limit(family, limit, a, d, rho, suite, horizon.unwrap_or(max_n))?,
            Err(refusal) => refusal_report(CheckReport::new(kind), refusal, "uniform witness"),
        },
        Task::FunctionSpace { d, entries } => function_space(d, entries)?,
        Task::VectorialBounded {
            map,
            operator,
            d,
            rho,
            sets,
        } => continuity::check_vectorial_bounded(map, operator, d, rho, sets)?,
        Task::MetricMap { d, xs, x, ys, y } => continuity::check_metric_map(d, xs, x, ys, y)?,
        Task::Downarrow {
            map,
            d,
            rho,
            sequence,
            limit,
        } => {
            let r = CheckReport::new(kind);
            match continuity::downarrow_transfer(map, d, rho, sequence, limit)? {
                Some(true) => r.conclude("decrease transfers to the image distances"),
                Some(false) => {
                    let mut r = r;
                    r.fail("image distances are not decreasing to 0".into());
                    r.conclude("decrease does not transfer")
                }
                None => {
                    let mut r = r;
                    r.inconclusive();
                    r.conclude("premise d(xn, x) decreasing to 0 not certified")
                }
            }
        }
        Task::SigmaContinuity { operator, witness } => match witness {
            Ok(a) => sigma_probe(operator, a)?,
            Err(refusal) => refusal_report(CheckReport::new(kind), refusal, "source witness"),
        },
        Task::Battery { battery: name, seed } => battery::run_named(name, *seed, max_n)?.into_report(max_n),
    })
}

fn sigma_probe(op: &operators::MonotoneOperator, a: &DecreasingWitness) -> Result<CheckReport> {
    let mut r = CheckReport::new("sigma-continuity");
    if operators::sigma_continuity_probe(op, a, &mut r)? {
        Ok(r.conclude(&format!("image of {a} under {op} decreases to 0")))
    } else {
        r.fail(format!("image of {a} under {op} is not certified to decrease"));
        Ok(r.conclude("sigma-continuity probe failed"))
    }
}

/// Every entry, every pairwise join and meet, and `d∞` over all of them.
fn function_space(d: &crate::vmetric::VectorMetric, entries: &[(String, FunctionSpaceEntry)]) -> Result<CheckReport> {
    let mut r = CheckReport::new("function-space");
    let mut all: Vec<(String, FunctionSpaceEntry)> = entries.to_vec();
    for (name, e) in entries {
        r.absorb(name, continuity::cvo_check(e, d)?);
    }
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            let (fi, fj) = (&entries[i], &entries[j]);
            for (join, sym) in [(true, "join"), (false, "meet")] {
                let name = format!("{sym}({},{})", fi.0, fj.0);
                let e = continuity::cvo_lattice_op(&fi.1, &fj.1, join)?;
                r.absorb(&name, continuity::cvo_check(&e, d)?);
                all.push((name, e));
            }
        }
    }
    let dinf = continuity::uniform_metric(&all)?;
    r.absorb("d-infinity", dinf.check_axioms(&[])?);
    Ok(r.settle(
        "certificates hold for all entries, joins and meets; d-infinity is a vector metric",
        "function-space check failed",
        "function-space check undecided",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::load_str;

    #[test]
    fn status_strings() {
        assert_eq!(status_of(&[Verdict::Pass, Verdict::Pass]), "all-pass");
        assert_eq!(status_of(&[Verdict::Pass, Verdict::Inconclusive]), "inconclusive(1)");
        assert_eq!(status_of(&[Verdict::Fail, Verdict::Inconclusive, Verdict::Fail]), "failures(2)");
        assert_eq!(status_of(&[]), "all-pass");
    }

    #[test]
    fn report_round_trips() {
        let text = r#"{
  "name": "rt",
  "spaces": [{"name": "L", "space": "line"}],
  "metrics": [{"name": "d", "kind": "weighted-abs", "a": "2"}],
  "sequences": [{"name": "x", "space": "L", "kind": "symbolic", "offset": "0", "terms": [["1", "1/n"]]}],
  "checks": [{"name": "conv", "kind": "e-converges", "metric": "d", "sequence": "x", "limit": "0"}]
}"#;
        let s = load_str(text).unwrap();
        let rep = run(&s, RunOptions { max_n: 100, timing: false });
        assert_eq!(rep.status, "all-pass");
        assert_eq!(rep.checks[0].witnesses_rechecked, 1);
        let json = rep.to_json();
        let back: RunReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_json(), json);
        assert!(json.contains("2*[1/n]"), "{json}");
    }
}
