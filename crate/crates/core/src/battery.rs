//! Seeded instance generators and the theorem batteries built on them.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::continuity::{self, FunctionSequence, FunctionSpaceEntry, TestSuite};
use crate::error::{Error, Result};
use crate::maps::MapDescriptor;
use crate::operators::{self, EquivalenceCertificate, MonotoneOperator};
use crate::point::{Point, PointSequence, PointSpace};
use crate::report::{CheckReport, Verdict};
use crate::riesz::{RieszSpace, VectorElement};
use crate::scalar::Scalar;
use crate::sequence::{DecreasingWitness, Shape, SymbolicSequence};
use crate::vmetric::{Subset, VectorMetric};

/// Outcome of one battery: how many instances ran, which ones broke the
/// property, and every report produced on the way.
#[derive(Debug, Default)]
pub struct BatteryResult {
    pub name: String,
    pub instances: usize,
    pub failures: Vec<String>,
    pub reports: Vec<CheckReport>,
}

impl BatteryResult {
    fn new(name: &str) -> BatteryResult {
        BatteryResult {
            name: name.to_string(),
            ..BatteryResult::default()
        }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Witnesses re-checked by direct evaluation up to `horizon`.
    pub fn recheck_witnesses(&self, horizon: u64) -> std::result::Result<usize, String> {
        self.reports.iter().map(|r| r.recheck_witnesses(horizon)).sum()
    }

    pub fn into_report(self, horizon: u64) -> CheckReport {
        let mut report = CheckReport::new("battery");
        report.note(format!("{} instances", self.instances));
        match self.recheck_witnesses(horizon) {
            Ok(k) => report.note(format!("{k} witnesses re-checked for n <= {horizon}")),
            Err(e) => report.fail(format!("witness re-check: {e}")),
        }
        for f in &self.failures {
            report.fail(f.clone());
        }
        let summary = format!("{}: property held on all {} instances", self.name, self.instances);
        report.settle(&summary, &format!("{}: property violated", self.name), &summary)
    }
}

/// Seeded generator of small exact instances.
pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Gen {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    /// `p/q` with `|p| ≤ 6`, `1 ≤ q ≤ 4`.
    pub fn scalar(&mut self) -> Scalar {
        let p = self.int(-6, 6);
        let q = self.int(1, 4);
        Scalar::ratio(p, q)
    }

    pub fn nonzero_scalar(&mut self) -> Scalar {
        loop {
            let s = self.scalar();
            if !s.is_zero() {
                return s;
            }
        }
    }

    pub fn positive_scalar(&mut self) -> Scalar {
        let p = self.int(1, 6);
        let q = self.int(1, 3);
        Scalar::ratio(p, q)
    }

    pub fn shape(&mut self) -> Shape {
        match self.int(0, 4) {
            0 | 1 => Shape::Harmonic,
            2 => Shape::Geometric(Scalar::ratio(1, 2)),
            3 => Shape::Geometric(Scalar::ratio(2, 3)),
            _ => Shape::FiniteSupport(self.int(2, 4) as u64),
        }
    }

    pub fn element(&mut self, space: &RieszSpace) -> VectorElement {
        let v = (0..space.dim()).map(|_| self.scalar()).collect();
        space.element(v).expect("dimension matches")
    }

    pub fn positive_element(&mut self, space: &RieszSpace) -> VectorElement {
        let v = (0..space.dim()).map(|_| self.positive_scalar()).collect();
        space.element(v).expect("dimension matches")
    }

    /// `offset + Σ cᵢ·shapeᵢ` with one or two terms.
    pub fn sequence(&mut self, space: &RieszSpace, offset: VectorElement) -> SymbolicSequence {
        let k = self.int(1, 2);
        let terms = (0..k)
            .map(|_| {
                let c = loop {
                    let c = self.element(space);
                    if !c.is_zero() {
                        break c;
                    }
                };
                (c, self.shape())
            })
            .collect();
        SymbolicSequence::new(offset, terms).expect("one space")
    }

    pub fn positive_witness(&mut self, space: &RieszSpace) -> DecreasingWitness {
        let k = self.int(1, 2);
        let terms = (0..k).map(|_| (self.positive_element(space), self.shape())).collect();
        DecreasingWitness::new(SymbolicSequence::new(space.zero(), terms).expect("one space"))
            .expect("positive coefficients on an Archimedean space")
    }

    pub fn finite_space(&mut self, lo: usize, hi: usize) -> PointSpace {
        let n = self.rng.gen_range(lo..=hi);
        let labels: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        PointSpace::finite(&labels).expect("distinct labels")
    }

    /// Random positive edge weights closed under shortest paths, per
    /// coordinate. Returns the raw table alongside the metric.
    pub fn repaired_table(&mut self, n: usize, codomain: &RieszSpace) -> Vec<Vec<Vec<Scalar>>> {
        let dim = codomain.dim();
        let mut t = vec![vec![vec![Scalar::zero(); dim]; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                for c in 0..dim {
                    let w = self.positive_scalar();
                    t[i][j][c] = w.clone();
                    t[j][i][c] = w;
                }
            }
        }
        for c in 0..dim {
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        let via = &t[i][k][c] + &t[k][j][c];
                        if via < t[i][j][c] {
                            t[i][j][c] = via;
                        }
                    }
                }
            }
        }
        t
    }

    pub fn metric_from_table(space: &PointSpace, codomain: &RieszSpace, t: &[Vec<Vec<Scalar>>]) -> Result<VectorMetric> {
        let pts = space.enumerate().ok_or(Error::Empty("finite space expected"))?;
        let mut entries = Vec::new();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                entries.push((pts[i].clone(), pts[j].clone(), codomain.element(t[i][j].clone())?));
            }
        }
        VectorMetric::tabulated(space.clone(), codomain.clone(), &entries)
    }

    pub fn finite_metric(&mut self, space: &PointSpace, codomain: &RieszSpace) -> VectorMetric {
        let n = space.enumerate().expect("finite").len();
        let t = self.repaired_table(n, codomain);
        Gen::metric_from_table(space, codomain, &t).expect("well formed")
    }

    pub fn table_map(&mut self, domain: &PointSpace, codomain: &PointSpace) -> MapDescriptor {
        let xs = domain.enumerate().expect("finite domain");
        let ys = codomain.enumerate().expect("finite codomain");
        let pairs = xs
            .into_iter()
            .map(|x| (x, ys.choose(&mut self.rng).expect("nonempty").clone()))
            .collect();
        MapDescriptor::table(domain.clone(), codomain.clone(), pairs).expect("total table")
    }

    /// A catalog metric on the line or the plane with a coordinatewise codomain.
    pub fn coordinate_metric(&mut self, plane: bool) -> VectorMetric {
        if plane {
            match self.int(0, 3) {
                0 => VectorMetric::weighted_sum(self.positive_scalar(), self.positive_scalar()).unwrap(),
                1 => VectorMetric::weighted_max(self.positive_scalar(), self.positive_scalar()).unwrap(),
                2 => VectorMetric::coord_pair(self.positive_scalar(), self.positive_scalar()).unwrap(),
                _ => VectorMetric::absolute_value(RieszSpace::Coordinate(2)),
            }
        } else {
            match self.int(0, 2) {
                0 => VectorMetric::weighted_abs(self.positive_scalar()).unwrap(),
                1 => VectorMetric::pair_abs(self.positive_scalar(), self.positive_scalar()).unwrap(),
                _ => VectorMetric::absolute_value(RieszSpace::Reals),
            }
        }
    }

    pub fn affine_map(&mut self, domain: &PointSpace, codomain: &PointSpace) -> MapDescriptor {
        let n = domain.coordinate_space().expect("coordinate space").dim();
        let slope = (0..n).map(|_| self.scalar()).collect();
        let intercept = (0..n).map(|_| self.scalar()).collect();
        MapDescriptor::affine(domain.clone(), codomain.clone(), slope, intercept).expect("matching dimensions")
    }

    /// Convergent items for a symbolic space: closed-form sequences with
    /// their limits and one eventually-constant sequence.
    pub fn convergent_suite(&mut self, space: &PointSpace, items: usize) -> TestSuite {
        let e = space.coordinate_space().expect("coordinate space");
        let mut out = Vec::new();
        for _ in 0..items {
            let x = self.element(&e);
            out.push((PointSequence::Symbolic(self.sequence(&e, x.clone())), Point::from_element(&x)));
        }
        let x = Point::from_element(&self.element(&e));
        let ec = PointSequence::EventuallyConstant {
            prefix: vec![Point::from_element(&self.element(&e))],
            tail: x.clone(),
        };
        out.push((ec, x));
        TestSuite::convergent(out)
    }
}

fn line_sample(g: &mut Gen, n: usize) -> Vec<(Point, Point)> {
    (0..n).map(|_| (Point::real(g.scalar()), Point::real(g.scalar()))).collect()
}

fn plane_sample(g: &mut Gen, n: usize) -> Vec<(Point, Point)> {
    (0..n)
        .map(|_| {
            (
                Point::Coords(vec![g.scalar(), g.scalar()]),
                Point::Coords(vec![g.scalar(), g.scalar()]),
            )
        })
        .collect()
}

/// Repaired tables satisfy the axioms; perturbed ones are rejected with a
/// counterexample.
pub fn metric_axioms(seed: u64, count: usize) -> Result<BatteryResult> {
    let mut g = Gen::new(seed);
    let mut out = BatteryResult::new("metric-axioms");
    for i in 0..count {
        let codomain = if i % 2 == 0 { RieszSpace::Reals } else { RieszSpace::Coordinate(2) };
        let space = g.finite_space(3, 6);
        let n = space.enumerate().expect("finite").len();
        let mut t = g.repaired_table(n, &codomain);
        let good = Gen::metric_from_table(&space, &codomain, &t)?.check_axioms(&[])?;
        out.expect(good.verdict == Verdict::Pass, || format!("repaired table {i} rejected: {}", good.summary));
        out.reports.push(good);

        let (a, b, c) = (0, 1, 2 + g.rng.gen_range(0..n - 2));
        if i % 4 == 3 {
            t[a][b] = vec![Scalar::zero(); codomain.dim()];
        } else {
            let bump = &(&t[a][c][0] + &t[c][b][0]) + &g.positive_scalar();
            t[a][b][0] = bump;
        }
        t[b][a] = t[a][b].clone();
        let bad = Gen::metric_from_table(&space, &codomain, &t)?.check_axioms(&[])?;
        let concrete = bad
            .counterexample
            .as_deref()
            .is_some_and(|c| c.starts_with("vm1") || c.starts_with("vm2"));
        out.expect(bad.verdict == Verdict::Fail && concrete, || format!("perturbed table {i} not rejected"));
        out.reports.push(bad);
        out.instances += 2;
    }
    Ok(out)
}

/// The certificate of the one-dimensional example with `a = 2, b = 1, c = 3`.
pub fn line_equivalence_certificate() -> Result<(VectorMetric, VectorMetric, MonotoneOperator, MonotoneOperator)> {
    let (a, b, c) = (Scalar::from_int(2), Scalar::from_int(1), Scalar::from_int(3));
    let d = VectorMetric::weighted_abs(a.clone())?;
    let rho = VectorMetric::pair_abs(b.clone(), c.clone())?;
    let ainv = a.recip()?;
    let t = MonotoneOperator::matrix(
        RieszSpace::Reals,
        RieszSpace::Coordinate(2),
        vec![vec![&ainv * &b], vec![&ainv * &c]],
    )?;
    let s = MonotoneOperator::matrix(
        RieszSpace::Coordinate(2),
        RieszSpace::Reals,
        vec![vec![&a / &b, Scalar::zero()]],
    )?;
    Ok((d, rho, t, s))
}

fn with_entry(op: &MonotoneOperator, i: usize, j: usize, v: Scalar) -> Result<MonotoneOperator> {
    let crate::operators::OperatorForm::Matrix(m) = op.form() else {
        return Err(Error::Unsupported("entry perturbation of a non-matrix".into()));
    };
    let mut m = m.clone();
    m[i][j] = v;
    MonotoneOperator::matrix(op.source().clone(), op.target().clone(), m)
}

pub fn line_equivalence(seed: u64, pairs: usize) -> Result<BatteryResult> {
    let mut g = Gen::new(seed);
    let mut out = BatteryResult::new("line-equivalence");
    let (d, rho, t, s) = line_equivalence_certificate()?;
    let sample = line_sample(&mut g, pairs);
    let cert = EquivalenceCertificate::Operators { t: t.clone(), s: s.clone() };
    let r = operators::check_equivalence_certificate(&d, &rho, &cert, &sample)?;
    out.expect(r.verdict == Verdict::Pass, || format!("certificate not verified: {}", r.summary));
    out.reports.push(r);
    out.instances += 1;
    for (which, op) in [("T", &t), ("S", &s)] {
        let crate::operators::OperatorForm::Matrix(m) = op.form() else { unreachable!() };
        for i in 0..m.len() {
            for j in 0..m[i].len() {
                let bad = with_entry(op, i, j, Scalar::from_int(-1))?;
                let cert = if which == "T" {
                    EquivalenceCertificate::Operators { t: bad, s: s.clone() }
                } else {
                    EquivalenceCertificate::Operators { t: t.clone(), s: bad }
                };
                let r = operators::check_equivalence_certificate(&d, &rho, &cert, &sample)?;
                out.expect(r.verdict == Verdict::Fail && r.summary.contains("classification"), || {
                    format!("{which} with entry ({},{}) negative not rejected at classification", i + 1, j + 1)
                });
                out.reports.push(r);
                out.instances += 1;
            }
        }
    }
    Ok(out)
}

/// Metrics of the two-dimensional example with parameters `a, b, c, e`:
/// `(d, η, ρ, T, S_sum, S_max)`.
pub fn plane_equivalence_metrics(
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
    e: &Scalar,
) -> Result<(VectorMetric, VectorMetric, VectorMetric, MonotoneOperator, MonotoneOperator, MonotoneOperator)> {
    let d = VectorMetric::weighted_sum(a.clone(), b.clone())?;
    let eta = VectorMetric::weighted_max(a.clone(), b.clone())?;
    let rho = VectorMetric::coord_pair(c.clone(), e.clone())?;
    let c2 = RieszSpace::Coordinate(2);
    let t = MonotoneOperator::matrix(
        RieszSpace::Reals,
        c2.clone(),
        vec![vec![c / a], vec![e / b]],
    )?;
    let w = vec![a / c, b / e];
    let s_sum = MonotoneOperator::sum_combo(c2.clone(), w.clone())?;
    let s_max = MonotoneOperator::max_combo(c2, w)?;
    Ok((d, eta, rho, t, s_sum, s_max))
}

fn verdict_of(outcome: &crate::vmetric::Outcome) -> Option<bool> {
    match outcome {
        Ok(_) => Some(true),
        Err(r) if r.is_definite() => Some(false),
        Err(_) => None,
    }
}

pub fn plane_equivalence(seed: u64, pairs: usize, instances: usize) -> Result<BatteryResult> {
    let mut g = Gen::new(seed);
    let mut out = BatteryResult::new("plane-equivalence");
    let one = Scalar::one();
    let params = [
        (one.clone(), one.clone(), one.clone(), one.clone()),
        (Scalar::from_int(2), Scalar::ratio(1, 3), Scalar::from_int(5), Scalar::ratio(3, 2)),
    ];
    let mut metrics = Vec::new();
    for (a, b, c, e) in &params {
        let (d, eta, rho, t, s_sum, s_max) = plane_equivalence_metrics(a, b, c, e)?;
        let sample = plane_sample(&mut g, pairs);
        for (m, s) in [(&d, s_sum), (&eta, s_max)] {
            let cert = EquivalenceCertificate::Operators { t: t.clone(), s };
            let r = operators::check_equivalence_certificate(m, &rho, &cert, &sample)?;
            out.expect(r.verdict == Verdict::Pass, || format!("certificate for {m} not verified: {}", r.summary));
            out.reports.push(r);
            out.instances += 1;
        }
        metrics.push((d, eta, rho));
    }
    let c2 = RieszSpace::Coordinate(2);
    for i in 0..instances {
        let (d, eta, rho) = &metrics[i % metrics.len()];
        let x = g.element(&c2);
        let seq = if i % 5 == 4 {
            PointSequence::EventuallyConstant {
                prefix: vec![Point::from_element(&g.element(&c2))],
                tail: Point::from_element(&x),
            }
        } else {
            PointSequence::Symbolic(g.sequence(&c2, x.clone()))
        };
        let limit = if g.coin() { Point::from_element(&x) } else { Point::from_element(&g.element(&c2)) };
        let vd = verdict_of(&d.e_converges(&seq, &limit)?);
        let ve = verdict_of(&eta.e_converges(&seq, &limit)?);
        let vr = verdict_of(&rho.e_converges(&seq, &limit)?);
        out.expect(vd.is_some() && vd == ve && vd == vr, || {
            format!("instance {i}: verdicts d = {vd:?}, eta = {ve:?}, rho = {vr:?} for {seq} -> {limit}")
        });
        out.instances += 1;
    }
    Ok(out)
}

/// Topological continuity with an Archimedean codomain implies vectorial
/// continuity on every decidable suite item.
pub fn topological_implies_vectorial(seed: u64, count: usize) -> Result<BatteryResult> {
    let mut g = Gen::new(seed);
    let mut out = BatteryResult::new("topological-implies-vectorial");
    for i in 0..count {
        let plane_in = g.coin();
        let plane_out = g.coin();
        let (xs, ys) = (
            if plane_in { PointSpace::Plane } else { PointSpace::Line },
            if plane_out { PointSpace::Plane } else { PointSpace::Line },
        );
        let (xs, ys) = if plane_in == plane_out { (xs, ys) } else { (xs.clone(), xs) };
        let plane = matches!(xs, PointSpace::Plane);
        let f = g.affine_map(&xs, &ys);
        let d = g.coordinate_metric(plane);
        let rho = g.coordinate_metric(plane);
        let b_grid = vec![g.positive_element(rho.codomain()), rho.codomain().ones()];
        let top = continuity::check_topological_continuity(&f, &d, &rho, &b_grid)?;
        let suite = g.convergent_suite(&xs, 3);
        let vec = continuity::check_vectorial_continuity(&f, &d, &rho, &suite)?;
        if top.verdict == Verdict::Pass {
            let bad = vec.items.iter().find(|it| it.verdict == Verdict::Fail);
            out.expect(bad.is_none(), || format!("instance {i}: {f} topological but fails vectorially"));
            let decided = vec.items.iter().filter(|it| it.verdict != Verdict::Inconclusive).count();
            out.expect(decided > 0, || format!("instance {i}: no decidable item"));
        } else {
            out.failures.push(format!("instance {i}: topological check did not pass: {}", top.summary));
        }
        out.reports.push(top);
        out.reports.push(vec);
        out.instances += 1;
    }
    Ok(out)
}

/// Product-metric convergence agrees with the conjunction of the factors.
pub fn product_componentwise(seed: u64, count: usize) -> Result<BatteryResult> {
    let mut g = Gen::new(seed);
    let mut out = BatteryResult::new("product-componentwise");
    for i in 0..count {
        let (pi, d, rho, xs, ys) = if i % 4 == 3 {
            let e = RieszSpace::Reals;
            let f = RieszSpace::Coordinate(2);
            let pi = VectorMetric::biabsolute(e.clone(), f.clone());
            (
                pi,
                VectorMetric::absolute_value(e.clone()),
                VectorMetric::absolute_value(f.clone()),
                PointSpace::Riesz(e),
                PointSpace::Riesz(f),
            )
        } else {
            let d = g.coordinate_metric(false);
            let rho = g.coordinate_metric(true);
            (
                VectorMetric::product(d.clone(), rho.clone()),
                d,
                rho,
                PointSpace::Line,
                PointSpace::Plane,
            )
        };
        let e1 = xs.coordinate_space().expect("coordinates");
        let e2 = ys.coordinate_space().expect("coordinates");
        let x1 = g.element(&e1);
        let x2 = g.element(&e2);
        let s1 = PointSequence::Symbolic(g.sequence(&e1, x1.clone()));
        let s2 = PointSequence::Symbolic(g.sequence(&e2, x2.clone()));
        let l1 = if i % 3 == 1 { Point::from_element(&g.element(&e1)) } else { Point::from_element(&x1) };
        let l2 = if i % 5 == 2 { Point::from_element(&g.element(&e2)) } else { Point::from_element(&x2) };
        let joint = pi.e_converges(&PointSequence::pair(s1.clone(), s2.clone()), &Point::pair(l1.clone(), l2.clone()))?;
        let a = d.e_converges(&s1, &l1)?;
        let b = rho.e_converges(&s2, &l2)?;
        let lhs = joint.is_ok();
        let rhs = a.is_ok() && b.is_ok();
        out.expect(lhs == rhs, || format!("instance {i}: product verdict {lhs}, componentwise {rhs}"));
        if let Ok(w) = joint {
            let mut r = CheckReport::new("product-convergence");
            r.witness(
                &format!("instance {i}"),
                w,
                crate::report::Claim::Distance {
                    metric: pi.clone(),
                    map: None,
                    sequence: PointSequence::pair(s1, s2),
                    limit: Point::pair(l1, l2),
                },
            );
            out.reports.push(r);
        }
        out.instances += 1;
    }
    Ok(out)
}

/// Coincidence sets of table maps are E-closed.
pub fn coincidence_closed(seed: u64, count: usize) -> Result<BatteryResult> {
    let mut g = Gen::new(seed);
    let mut out = BatteryResult::new("coincidence-closed");
    for i in 0..count {
        let xs = g.finite_space(3, 6);
        let ys = g.finite_space(2, 3);
        let codomain = if i % 2 == 0 { RieszSpace::Reals } else { RieszSpace::Coordinate(2) };
        let d = g.finite_metric(&xs, &codomain);
        let f = g.table_map(&xs, &ys);
        let h = g.table_map(&xs, &ys);
        let r = continuity::check_coincidence_closed(&f, &h, &d)?;
        out.expect(r.verdict == Verdict::Pass, || format!("instance {i}: {}", r.summary));
        out.reports.push(r);
        out.instances += 1;
    }
    Ok(out)
}

/// Preimages of closed sets under table maps are closed.
pub fn preimage_closed(seed: u64, count: usize) -> Result<BatteryResult> {
    let mut g = Gen::new(seed);
    let mut out = BatteryResult::new("preimage-closed");
    for i in 0..count {
        let xs = g.finite_space(3, 5);
        let ys = g.finite_space(2, 4);
        let d = g.finite_metric(&xs, &RieszSpace::Reals);
        let rho = g.finite_metric(&ys, &RieszSpace::Coordinate(2));
        let f = g.table_map(&xs, &ys);
        let all = ys.enumerate().expect("finite");
        let b: Vec<Point> = all.into_iter().filter(|_| g.coin()).collect();
        let closed = rho.is_e_closed(&Subset::of_points(b.clone()), &[], 0)?;
        let pre = continuity::preimage(&f, &b)?;
        let r = d.is_e_closed(&Subset::of_points(pre), &[], 0)?;
        out.expect(closed.verdict == Verdict::Pass && r.verdict == Verdict::Pass, || {
            format!("instance {i}: preimage of a closed set is not closed")
        });
        out.reports.push(r);
        out.instances += 1;
    }
    Ok(out)
}

/// Uniform topological continuity implies Cauchy sequences go to Cauchy
/// sequences.
pub fn uniform_transfer(seed: u64, count: usize) -> Result<BatteryResult> {
    let mut g = Gen::new(seed);
    let mut out = BatteryResult::new("uniform-transfer");
    for i in 0..count {
        let plane = g.coin();
        let xs = if plane { PointSpace::Plane } else { PointSpace::Line };
        let f = g.affine_map(&xs, &xs);
        let d = g.coordinate_metric(plane);
        let rho = g.coordinate_metric(plane);
        let top = continuity::check_topological_continuity(&f, &d, &rho, &[rho.codomain().ones()])?;
        let e = xs.coordinate_space().expect("coordinates");
        let items = (0..3)
            .map(|_| {
                let x = g.element(&e);
                PointSequence::Symbolic(g.sequence(&e, x))
            })
            .collect();
        let r = continuity::check_vectorial_uniform(&f, &d, &rho, &TestSuite::cauchy(items))?;
        out.expect(top.verdict == Verdict::Pass && r.verdict == Verdict::Pass, || {
            format!("instance {i}: {f}: topological {:?}, uniform {:?}", top.verdict, r.verdict)
        });
        out.reports.push(r);
        out.instances += 1;
    }
    Ok(out)
}

/// On σ-complete codomains, a certified `d(xₙ,x) ↓ 0` transfers to
/// `ρ(f(xₙ), f(x)) ↓ 0` for affine maps.
pub fn downarrow_transfer(seed: u64, count: usize) -> Result<BatteryResult> {
    let mut g = Gen::new(seed);
    let mut out = BatteryResult::new("downarrow-transfer");
    let mut certified = 0;
    for i in 0..count {
        let plane = g.coin();
        let xs = if plane { PointSpace::Plane } else { PointSpace::Line };
        let e = xs.coordinate_space().expect("coordinates");
        let f = g.affine_map(&xs, &xs);
        let d = g.coordinate_metric(plane);
        let rho = g.coordinate_metric(plane);
        let x = g.element(&e);
        let seq = PointSequence::Symbolic(g.sequence(&e, x.clone()));
        match continuity::downarrow_transfer(&f, &d, &rho, &seq, &Point::from_element(&x))? {
            Some(ok) => {
                certified += 1;
                out.expect(ok, || format!("instance {i}: decrease not transferred through {f}"));
            }
            None => {}
        }
        out.instances += 1;
    }
    out.expect(certified > 0, || "no instance had a certified premise".into());
    Ok(out)
}

/// Pair, product and absolute-difference maps of continuous maps are
/// continuous on decidable items.
pub fn constructors_preserve_continuity(seed: u64, count: usize) -> Result<BatteryResult> {
    let mut g = Gen::new(seed);
    let mut out = BatteryResult::new("constructors");
    let line = PointSpace::Line;
    for i in 0..count {
        let f = g.affine_map(&line, &line);
        let h = g.affine_map(&line, &line);
        let d = g.coordinate_metric(false);
        let abs = VectorMetric::absolute_value(RieszSpace::Reals);
        let suite = g.convergent_suite(&line, 2);
        let pf = continuity::check_vectorial_continuity(&f, &d, &abs, &suite)?;
        let ph = continuity::check_vectorial_continuity(&h, &d, &abs, &suite)?;
        if pf.verdict != Verdict::Pass || ph.verdict != Verdict::Pass {
            out.failures.push(format!("instance {i}: input maps not continuous"));
            continue;
        }
        let pair = MapDescriptor::pair(f.clone(), h.clone())?;
        let pr = continuity::check_vectorial_continuity(&pair, &d, &VectorMetric::product(abs.clone(), abs.clone()), &suite)?;
        let prod = MapDescriptor::product_map(f.clone(), h.clone());
        let dd = VectorMetric::product(d.clone(), d.clone());
        let items: Vec<(PointSequence, Point)> = suite
            .items
            .windows(2)
            .map(|w| {
                (
                    PointSequence::pair(w[0].sequence.clone(), w[1].sequence.clone()),
                    Point::pair(w[0].limit.clone().unwrap(), w[1].limit.clone().unwrap()),
                )
            })
            .collect();
        let psuite = TestSuite::convergent(items);
        let pm = continuity::check_vectorial_continuity(&prod, &dd, &VectorMetric::product(abs.clone(), abs.clone()), &psuite)?;
        let ad = MapDescriptor::abs_diff(f, h)?;
        let am = continuity::check_vectorial_continuity(&ad, &dd, &abs, &psuite)?;
        for r in [pr, pm, am] {
            out.expect(r.verdict != Verdict::Fail, || format!("instance {i}: {}", r.summary));
            out.reports.push(r);
        }
        out.instances += 1;
    }
    Ok(out)
}

/// Continuity verdicts agree across metrics with a verified certificate.
pub fn equivalence_invariance(seed: u64, count: usize) -> Result<BatteryResult> {
    let mut g = Gen::new(seed);
    let mut out = BatteryResult::new("equivalence-invariance");
    let (d, rho, t, s) = line_equivalence_certificate()?;
    let cert = EquivalenceCertificate::Operators { t, s };
    let r = operators::check_equivalence_certificate(&d, &rho, &cert, &line_sample(&mut g, 20))?;
    out.expect(r.verdict == Verdict::Pass, || "certificate not verified".into());
    let line = PointSpace::Line;
    for i in 0..count {
        let f = g.affine_map(&line, &line);
        let mut suite = g.convergent_suite(&line, 2);
        let x = g.element(&RieszSpace::Reals);
        suite.items[0].limit = Some(Point::from_element(&x));
        let a = continuity::check_vectorial_continuity(&f, &d, &d, &suite)?;
        let b = continuity::check_vectorial_continuity(&f, &rho, &rho, &suite)?;
        let va: Vec<Verdict> = a.items.iter().map(|it| it.verdict).collect();
        let vb: Vec<Verdict> = b.items.iter().map(|it| it.verdict).collect();
        out.expect(va == vb, || format!("instance {i}: verdicts {va:?} vs {vb:?}"));
        out.reports.push(a);
        out.reports.push(b);
        out.instances += 1;
    }
    Ok(out)
}

/// A valid uniform-convergence instance on the line: `fₙ(x) = s·x + cₙ`.
pub fn uniform_limit_instance(g: &mut Gen, i: usize) -> Result<(FunctionSequence, MapDescriptor, DecreasingWitness, VectorMetric, VectorMetric, TestSuite)> {
    let line = PointSpace::Line;
    let reals = RieszSpace::Reals;
    let slope = g.nonzero_scalar();
    let c = g.scalar();
    let cn = g.sequence(&reals, VectorElement::real(c.clone()));
    let family = FunctionSequence::new(line.clone(), line.clone(), vec![slope.clone()], cn.clone())?;
    let limit = MapDescriptor::affine(line.clone(), line.clone(), vec![slope], vec![c.clone()])?;
    let d = g.coordinate_metric(false);
    let rho = if i % 2 == 0 {
        VectorMetric::weighted_abs(g.positive_scalar())?
    } else {
        VectorMetric::absolute_value(reals)
    };
    let a = rho
        .e_converges(&PointSequence::Symbolic(cn), &Point::real(c))?
        .map_err(|r| Error::InvalidParameter(format!("generated intercepts do not converge: {r}")))?;
    let a = if i % 3 == 0 { a.scale(&Scalar::from_int(2)) } else { a };
    let suite = g.convergent_suite(&line, 2);
    Ok((family, limit, a, d, rho, suite))
}

/// Combined `2aₙ + bₙ` witnesses validate; an invalid uniform witness is
/// rejected before combination.
pub fn uniform_limit(seed: u64, count: usize, horizon: u64) -> Result<BatteryResult> {
    let mut g = Gen::new(seed);
    let mut out = BatteryResult::new("uniform-limit");
    for i in 0..count {
        let (family, limit, a, d, rho, suite) = uniform_limit_instance(&mut g, i)?;
        let r = continuity::uniform_limit(&family, &limit, &a, &d, &rho, &suite, horizon)?;
        out.expect(r.verdict == Verdict::Pass, || format!("instance {i}: {}", r.summary));
        out.reports.push(r);
        out.instances += 1;
    }
    let r = adversarial_uniform_limit(horizon)?;
    out.expect(
        r.verdict == Verdict::Fail && r.items.len() == 1,
        || "adversarial uniform witness was not rejected before combination".into(),
    );
    out.reports.push(r);
    out.instances += 1;
    Ok(out)
}

/// `fₙ(x) = x + 1` against `f(x) = x` with the claimed witness `1/n`.
pub fn adversarial_uniform_limit(horizon: u64) -> Result<CheckReport> {
    let line = PointSpace::Line;
    let reals = RieszSpace::Reals;
    let family = FunctionSequence::new(
        line.clone(),
        line.clone(),
        vec![Scalar::one()],
        SymbolicSequence::constant(VectorElement::real(Scalar::one())),
    )?;
    let limit = MapDescriptor::identity(line.clone())?;
    let a = DecreasingWitness::new(SymbolicSequence::single(VectorElement::real(Scalar::one()), Shape::Harmonic))
        .expect("valid witness");
    let abs = VectorMetric::absolute_value(reals.clone());
    let h = PointSequence::Symbolic(SymbolicSequence::single(VectorElement::real(Scalar::one()), Shape::Harmonic));
    let suite = TestSuite::convergent(vec![(h, Point::int(0))]);
    continuity::uniform_limit(&family, &limit, &a, &abs, &abs, &suite, horizon)
}

fn random_entry(g: &mut Gen, xs: &PointSpace, d: &VectorMetric, values: &RieszSpace) -> Result<FunctionSpaceEntry> {
    let pts = xs.enumerate().expect("finite");
    let vals: Vec<VectorElement> = pts.iter().map(|_| g.element(values)).collect();
    // Smallest coordinatewise Lipschitz constants.
    let mut lip = vec![Scalar::zero(); values.dim()];
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let dij = d.distance(&pts[i], &pts[j])?.coord(0).clone();
            let diff = vals[i].sub(&vals[j])?.abs();
            for (k, l) in lip.iter_mut().enumerate() {
                let ratio = diff.coord(k) / &dij;
                if ratio > *l {
                    *l = ratio;
                }
            }
        }
    }
    let certificate = if values == d.codomain() {
        MonotoneOperator::scale(values.clone(), lip.into_iter().reduce(|a, b| a.max(b)).expect("nonempty"))
    } else {
        MonotoneOperator::matrix(d.codomain().clone(), values.clone(), lip.into_iter().map(|l| vec![l]).collect())?
    };
    let target = PointSpace::Riesz(values.clone());
    let pairs = pts.into_iter().zip(vals.iter().map(Point::from_element)).collect();
    Ok(FunctionSpaceEntry {
        map: MapDescriptor::table(xs.clone(), target, pairs)?,
        certificate: Some(certificate),
    })
}

/// Joins and meets of certified entries carry summed certificates, and
/// `d∞` on the resulting table is a vector metric.
pub fn birkhoff_cvo(seed: u64, count: usize) -> Result<BatteryResult> {
    let mut g = Gen::new(seed);
    let mut out = BatteryResult::new("birkhoff-cvo");
    for i in 0..count {
        let xs = g.finite_space(3, 5);
        let d = g.finite_metric(&xs, &RieszSpace::Reals);
        let values = if i % 2 == 0 { RieszSpace::Reals } else { RieszSpace::Coordinate(2) };
        let f = random_entry(&mut g, &xs, &d, &values)?;
        let h = random_entry(&mut g, &xs, &d, &values)?;
        for e in [&f, &h] {
            let r = continuity::cvo_check(e, &d)?;
            out.expect(r.verdict == Verdict::Pass, || format!("instance {i}: input certificate fails"));
        }
        let join = continuity::cvo_lattice_op(&f, &h, true)?;
        let meet = continuity::cvo_lattice_op(&f, &h, false)?;
        for (name, e) in [("join", &join), ("meet", &meet)] {
            let r = continuity::cvo_check(e, &d)?;
            out.expect(r.verdict == Verdict::Pass, || format!("instance {i}: {name}: {}", r.summary));
            out.reports.push(r);
        }
        let named = vec![("f".to_string(), f), ("g".to_string(), h), ("join".to_string(), join), ("meet".to_string(), meet)];
        let dinf = continuity::uniform_metric(&named)?;
        let r = dinf.check_axioms(&[])?;
        out.expect(r.verdict == Verdict::Pass, || format!("instance {i}: d-infinity: {}", r.summary));
        out.reports.push(r);
        out.instances += 1;
    }
    Ok(out)
}

/// Positive operators send decreasing witnesses to decreasing witnesses.
pub fn sigma_continuity(seed: u64, count: usize) -> Result<BatteryResult> {
    let mut g = Gen::new(seed);
    let mut out = BatteryResult::new("sigma-continuity");
    for i in 0..count {
        let n = g.int(1, 3) as usize;
        let m = g.int(1, 3) as usize;
        let src = if n == 1 { RieszSpace::Reals } else { RieszSpace::Coordinate(n) };
        let dst = if m == 1 { RieszSpace::Reals } else { RieszSpace::Coordinate(m) };
        let op = if i % 4 == 3 {
            MonotoneOperator::max_combo(src.clone(), (0..n).map(|_| g.positive_scalar()).collect())?
        } else {
            let rows = (0..m)
                .map(|_| (0..n).map(|_| if g.coin() { g.positive_scalar() } else { Scalar::zero() }).collect())
                .collect();
            MonotoneOperator::matrix(src.clone(), dst, rows)?
        };
        let c = op.classify()?;
        out.expect(c.positive && c.sigma_order_continuous && c.order_bounded, || format!("instance {i}: {op} misclassified"));
        let w = g.positive_witness(&src);
        let mut r = CheckReport::new("sigma-continuity");
        let ok = operators::sigma_continuity_probe(&op, &w, &mut r)?;
        out.expect(ok, || format!("instance {i}: image of {w} under {op} rejected"));
        out.reports.push(r);
        out.instances += 1;
    }
    Ok(out)
}

/// Names accepted by [`run_named`].
pub const CATALOG: &[(&str, &str)] = &[
    ("metric-axioms", "repaired tables pass the axioms, perturbed tables are rejected"),
    ("line-equivalence", "one-dimensional equivalence certificate and its negative perturbations"),
    ("plane-equivalence", "two-dimensional certificates (sum and max forms) and the convergence cross-check"),
    ("topological-implies-vectorial", "affine maps: topological continuity implies vectorial continuity"),
    ("product-componentwise", "product-metric convergence equals componentwise convergence"),
    ("coincidence-closed", "coincidence sets of table maps are E-closed"),
    ("preimage-closed", "preimages of closed sets under table maps are closed"),
    ("uniform-transfer", "uniformly continuous affine maps preserve Cauchy sequences"),
    ("downarrow-transfer", "monotone decrease of distances transfers through affine maps"),
    ("constructors", "pair, product and absolute-difference maps stay continuous"),
    ("equivalence-invariance", "continuity verdicts agree across equivalent metrics"),
    ("uniform-limit", "combined bound 2a_n + b_n for uniform limits, plus one invalid witness"),
    ("birkhoff-cvo", "joins and meets of certified functions and the uniform metric"),
    ("sigma-continuity", "positive operators map decreasing witnesses to decreasing witnesses"),
];

/// Runs a named battery with its default size.
pub fn run_named(name: &str, seed: u64, horizon: u64) -> Result<BatteryResult> {
    match name {
        "metric-axioms" => metric_axioms(seed, 200),
        "line-equivalence" => line_equivalence(seed, 50),
        "plane-equivalence" => plane_equivalence(seed, 50, 20),
        "topological-implies-vectorial" => topological_implies_vectorial(seed, 30),
        "product-componentwise" => product_componentwise(seed, 20),
        "coincidence-closed" => coincidence_closed(seed, 100),
        "preimage-closed" => preimage_closed(seed, 50),
        "uniform-transfer" => uniform_transfer(seed, 20),
        "downarrow-transfer" => downarrow_transfer(seed, 30),
        "constructors" => constructors_preserve_continuity(seed, 20),
        "equivalence-invariance" => equivalence_invariance(seed, 20),
        "uniform-limit" => uniform_limit(seed, 10, horizon),
        "birkhoff-cvo" => birkhoff_cvo(seed, 100),
        "sigma-continuity" => sigma_continuity(seed, 40),
        other => Err(Error::InvalidParameter(format!("unknown battery `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_batteries_pass() {
        for (name, _) in CATALOG {
            let r = match *name {
                "metric-axioms" => metric_axioms(1, 10),
                "coincidence-closed" => coincidence_closed(1, 10),
                "birkhoff-cvo" => birkhoff_cvo(1, 10),
                "uniform-limit" => uniform_limit(1, 3, 50),
                n => run_named(n, 1, 50),
            }
            .unwrap();
            assert!(r.passed(), "{name}: {:?}", r.failures);
            assert!(r.instances > 0);
            r.recheck_witnesses(30).unwrap();
        }
    }

    #[test]
    fn deterministic() {
        let a = plane_equivalence(7, 5, 5).unwrap();
        let b = plane_equivalence(7, 5, 5).unwrap();
        let sa: Vec<String> = a.reports.iter().map(|r| r.summary.clone()).collect();
        let sb: Vec<String> = b.reports.iter().map(|r| r.summary.clone()).collect();
        assert_eq!(sa, sb);
    }
}
