//! Verdicts, check reports, and independently re-checkable witness claims.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::continuity::FunctionSequence;
use crate::maps::MapDescriptor;
use crate::operators::MonotoneOperator;
use crate::point::{Point, PointSequence};
use crate::riesz::VectorElement;
use crate::sequence::{DecreasingWitness, SymbolicSequence};
use crate::vmetric::VectorMetric;

/// Three-valued outcome. `Inconclusive` means the question left the
/// decidable family; it is never a disguised failure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    /// Any failure wins, then any inconclusive; an empty family passes.
    pub fn combine(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut out = Verdict::Pass;
        for v in verdicts {
            match v {
                Verdict::Fail => return Verdict::Fail,
                Verdict::Inconclusive => out = Verdict::Inconclusive,
                Verdict::Pass => {}
            }
        }
        out
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ItemReport {
    pub label: String,
    pub verdict: Verdict,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub kind: String,
    pub verdict: Verdict,
    pub summary: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub provenance: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub items: Vec<ItemReport>,
    /// Witnesses with the claims they support, kept for re-checking.
    #[serde(skip)]
    pub witnesses: Vec<Witnessed>,
}

impl CheckReport {
    pub fn new(kind: &str) -> CheckReport {
        CheckReport {
            kind: kind.to_string(),
            verdict: Verdict::Pass,
            summary: String::new(),
            provenance: Vec::new(),
            counterexample: None,
            items: Vec::new(),
            witnesses: Vec::new(),
        }
    }

    pub fn note(&mut self, s: String) {
        self.provenance.push(s);
    }

    /// Marks failure; the first counterexample recorded is kept.
    pub fn fail(&mut self, counterexample: String) {
        self.verdict = Verdict::Fail;
        if self.counterexample.is_none() {
            self.counterexample = Some(counterexample);
        }
    }

    pub fn inconclusive(&mut self) {
        if self.verdict == Verdict::Pass {
            self.verdict = Verdict::Inconclusive;
        }
    }

    pub fn item(&mut self, label: &str, verdict: Verdict, detail: &str) {
        self.items.push(ItemReport {
            label: label.to_string(),
            verdict,
            detail: detail.to_string(),
            witness: None,
        });
    }

    pub fn item_with_witness(&mut self, label: &str, verdict: Verdict, detail: &str, w: &DecreasingWitness) {
        self.items.push(ItemReport {
            label: label.to_string(),
            verdict,
            detail: detail.to_string(),
            witness: Some(w.to_string()),
        });
    }

    pub fn witness(&mut self, label: &str, witness: DecreasingWitness, claim: Claim) {
        self.witnesses.push(Witnessed {
            label: label.to_string(),
            witness,
            claim,
        });
    }

    /// Absorbs a sub-report: its items (prefixed), witnesses and verdict.
    pub fn absorb(&mut self, prefix: &str, sub: CheckReport) {
        let verdict = sub.verdict;
        if verdict == Verdict::Fail {
            let cx = sub.counterexample.clone().unwrap_or_else(|| sub.summary.clone());
            self.fail(format!("{prefix}: {cx}"));
        }
        self.items.push(ItemReport {
            label: prefix.to_string(),
            verdict,
            detail: sub.summary.clone(),
            witness: None,
        });
        for mut it in sub.items {
            it.label = format!("{prefix}/{}", it.label);
            self.items.push(it);
        }
        for mut w in sub.witnesses {
            w.label = format!("{prefix}/{}", w.label);
            self.witnesses.push(w);
        }
    }

    /// Final verdict: the running verdict combined with every item's.
    pub fn conclude(mut self, summary: &str) -> CheckReport {
        self.verdict = Verdict::combine(std::iter::once(self.verdict).chain(self.items.iter().map(|i| i.verdict)));
        self.summary = match (self.verdict, &self.counterexample) {
            (Verdict::Fail, Some(c)) => format!("{summary}; counterexample: {c}"),
            _ => summary.to_string(),
        };
        self
    }

    /// Like [`Self::conclude`] with a summary chosen by the final verdict.
    pub fn settle(self, pass: &str, fail: &str, open: &str) -> CheckReport {
        let v = Verdict::combine(std::iter::once(self.verdict).chain(self.items.iter().map(|i| i.verdict)));
        let s = match v {
            Verdict::Pass => pass,
            Verdict::Fail => fail,
            Verdict::Inconclusive => open,
        };
        self.conclude(s)
    }

    /// Re-validates every witness by direct exact evaluation for
    /// `n ≤ horizon`. Returns the number checked or the first failure.
    pub fn recheck_witnesses(&self, horizon: u64) -> Result<usize, String> {
        for w in &self.witnesses {
            w.recheck(horizon).map_err(|e| format!("{} ({}): {e}", self.kind, w.label))?;
        }
        Ok(self.witnesses.len())
    }
}

/// The inequality a witness `wₙ` is claimed to dominate.
#[derive(Clone, Debug)]
pub enum Claim {
    /// `ρ(g(xₙ), g(x)) ≤ wₙ`, with `g` the identity when `map` is absent.
    Distance {
        metric: VectorMetric,
        map: Option<MapDescriptor>,
        sequence: PointSequence,
        limit: Point,
    },
    /// `ρ(g(xₙ), g(xₙ₊ₚ)) ≤ wₙ`.
    Cauchy {
        metric: VectorMetric,
        map: Option<MapDescriptor>,
        sequence: PointSequence,
    },
    /// `|sₙ − b| ≤ wₙ`.
    Order { sequence: SymbolicSequence, limit: VectorElement },
    /// `|sₙ − sₙ₊ₚ| ≤ wₙ`.
    OrderCauchy { sequence: SymbolicSequence },
    /// `ρ(fₙ(x), f(x)) ≤ wₙ` at each listed `x`.
    Uniform {
        family: FunctionSequence,
        limit: MapDescriptor,
        metric: VectorMetric,
        points: Vec<Point>,
    },
    /// `|d(xₙ, yₙ) − d(x, y)| ≤ wₙ`.
    MetricMap {
        metric: VectorMetric,
        xs: PointSequence,
        x: Point,
        ys: PointSequence,
        y: Point,
    },
    /// `|T(aₙ)| ≤ wₙ`.
    OperatorImage {
        operator: MonotoneOperator,
        source: DecreasingWitness,
    },
}

#[derive(Clone, Debug)]
pub struct Witnessed {
    pub label: String,
    pub witness: DecreasingWitness,
    pub claim: Claim,
}

fn apply_opt(map: &Option<MapDescriptor>, p: &Point) -> Result<Point, String> {
    match map {
        Some(f) => f.apply(p).map_err(|e| e.to_string()),
        None => Ok(p.clone()),
    }
}

fn within(lhs: &VectorElement, w: &VectorElement, n: u64, what: &str) -> Result<(), String> {
    match lhs.leq(w) {
        Ok(true) => Ok(()),
        Ok(false) => Err(format!("{what} = {lhs} exceeds witness {w} at n = {n}")),
        Err(e) => Err(e.to_string()),
    }
}

impl Witnessed {
    /// Default Cauchy offsets: `p = 1..=8` and `p = horizon`.
    pub fn recheck(&self, horizon: u64) -> Result<(), String> {
        let mut ps: Vec<u64> = (1..=8).collect();
        ps.push(horizon);
        self.recheck_with(horizon, &ps)
    }

    /// Checks monotone decrease and positivity of the witness, then the claim
    /// at every `n ≤ horizon` (and every `p` in `ps` for Cauchy claims).
    pub fn recheck_with(&self, horizon: u64, ps: &[u64]) -> Result<(), String> {
        self.witness
            .spot_check_decreasing(horizon)
            .map_err(|n| format!("witness not decreasing and positive at n = {n}"))?;
        let pmax = ps.iter().copied().max().unwrap_or(0);
        let wv = self.witness.values(horizon);
        let err = |e: crate::error::Error| e.to_string();
        match &self.claim {
            Claim::Distance {
                metric,
                map,
                sequence,
                limit,
            } => {
                let fx = apply_opt(map, limit)?;
                for (i, xn) in sequence.values(horizon).iter().enumerate() {
                    let n = i as u64 + 1;
                    let fxn = apply_opt(map, xn)?;
                    let d = metric.distance(&fxn, &fx).map_err(err)?;
                    within(&d, &wv[n as usize - 1], n, "distance")?;
                }
            }
            Claim::Cauchy { metric, map, sequence } => {
                let vals = sequence
                    .values(horizon + pmax)
                    .iter()
                    .map(|x| apply_opt(map, x))
                    .collect::<Result<Vec<_>, _>>()?;
                for n in 1..=horizon {
                    for &p in ps {
                        let a = &vals[n as usize - 1];
                        let b = &vals[(n + p) as usize - 1];
                        let d = metric.distance(a, b).map_err(err)?;
                        within(&d, &wv[n as usize - 1], n, &format!("distance to term n+{p}"))?;
                    }
                }
            }
            Claim::Order { sequence, limit } => {
                for (i, v) in sequence.values(horizon).iter().enumerate() {
                    let d = v.sub(limit).map_err(err)?.abs();
                    within(&d, &wv[i], i as u64 + 1, "|s(n) - b|")?;
                }
            }
            Claim::OrderCauchy { sequence } => {
                let vals = sequence.values(horizon + pmax);
                for n in 1..=horizon as usize {
                    for &p in ps {
                        let d = vals[n - 1].sub(&vals[n - 1 + p as usize]).map_err(err)?.abs();
                        within(&d, &wv[n - 1], n as u64, &format!("|s(n) - s(n+{p})|"))?;
                    }
                }
            }
            Claim::Uniform {
                family,
                limit,
                metric,
                points,
            } => {
                let members = family.members(horizon).map_err(err)?;
                for x in points {
                    let fx = limit.apply(x).map_err(err)?;
                    for (i, f) in members.iter().enumerate() {
                        let n = i as u64 + 1;
                        let fnx = f.apply(x).map_err(err)?;
                        let d = metric.distance(&fnx, &fx).map_err(err)?;
                        within(&d, &wv[n as usize - 1], n, &format!("distance at x = {x}"))?;
                    }
                }
            }
            Claim::MetricMap { metric, xs, x, ys, y } => {
                let dxy = metric.distance(x, y).map_err(err)?;
                for (i, (xn, yn)) in xs.values(horizon).iter().zip(ys.values(horizon).iter()).enumerate() {
                    let n = i as u64 + 1;
                    let dn = metric.distance(xn, yn).map_err(err)?;
                    let diff = dn.sub(&dxy).map_err(err)?.abs();
                    within(&diff, &wv[n as usize - 1], n, "|d(xn,yn) - d(x,y)|")?;
                }
            }
            Claim::OperatorImage { operator, source } => {
                for (i, a) in source.values(horizon).iter().enumerate() {
                    let t = operator.apply(a).map_err(err)?.abs();
                    within(&t, &wv[i], i as u64 + 1, "|T(a(n))|")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_combination() {
        use Verdict::*;
        assert_eq!(Verdict::combine([]), Pass);
        assert_eq!(Verdict::combine([Pass, Inconclusive, Pass]), Inconclusive);
        assert_eq!(Verdict::combine([Inconclusive, Fail]), Fail);
    }

    #[test]
    fn conclude_merges_items() {
        let mut r = CheckReport::new("demo");
        r.item("a", Verdict::Pass, "ok");
        r.item("b", Verdict::Inconclusive, "left the family");
        let r = r.conclude("done");
        assert_eq!(r.verdict, Verdict::Inconclusive);
        let mut f = CheckReport::new("demo");
        f.fail("x".into());
        f.fail("y".into());
        let f = f.conclude("bad");
        assert_eq!(f.counterexample.as_deref(), Some("x"));
        assert_eq!(f.summary, "bad; counterexample: x");
    }

    #[test]
    fn reports_round_trip_through_json() {
        let mut r = CheckReport::new("demo");
        r.note("exhaustive".into());
        r.item("a", Verdict::Pass, "ok");
        let r = r.conclude("fine");
        let json = serde_json::to_string(&r).unwrap();
        let back: CheckReport = serde_json::from_str(&json).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }
}
