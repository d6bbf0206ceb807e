//! Continuity of maps between vector metric spaces: vectorial, topological
//! and uniform continuity, isometries, homeomorphisms, graphs, coincidence
//! sets, dense extension, uniform limits and the function space `C_v^o`.

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::maps::{MapDescriptor, MapForm, Pushed};
use crate::operators::{LatticeVerdict, MonotoneOperator};
use crate::point::{Point, PointSequence, PointSpace};
use crate::report::{CheckReport, Claim, Verdict};
use crate::riesz::{finite_inf, RieszSpace, VectorElement};
use crate::scalar::Scalar;
use crate::sequence::{DecreasingWitness, SymbolicSequence};
use crate::vmetric::{FunctionTable, Outcome, Subset, VectorMetric};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ItemKind {
    Convergent,
    Cauchy,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SuiteItem {
    pub sequence: PointSequence,
    pub limit: Option<Point>,
    pub kind: ItemKind,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TestSuite {
    pub items: Vec<SuiteItem>,
}

impl TestSuite {
    pub fn convergent(items: Vec<(PointSequence, Point)>) -> TestSuite {
        TestSuite {
            items: items
                .into_iter()
                .map(|(sequence, limit)| SuiteItem {
                    sequence,
                    limit: Some(limit),
                    kind: ItemKind::Convergent,
                })
                .collect(),
        }
    }

    pub fn cauchy(items: Vec<PointSequence>) -> TestSuite {
        TestSuite {
            items: items
                .into_iter()
                .map(|sequence| SuiteItem {
                    sequence,
                    limit: None,
                    kind: ItemKind::Cauchy,
                })
                .collect(),
        }
    }

    fn convergent_items(&self) -> Result<Vec<(&PointSequence, &Point)>> {
        self.items
            .iter()
            .map(|it| match (&it.kind, &it.limit) {
                (ItemKind::Convergent, Some(x)) => Ok((&it.sequence, x)),
                _ => Err(Error::InvalidParameter(format!(
                    "suite item {} is not a convergent item with a limit",
                    it.sequence
                ))),
            })
            .collect()
    }

    /// Limits and the first few terms of every item.
    pub fn sample_points(&self, terms: u64) -> Result<Vec<Point>> {
        let mut out: Vec<Point> = Vec::new();
        for it in &self.items {
            let mut add = |p: Point| {
                if !out.contains(&p) {
                    out.push(p);
                }
            };
            if let Some(x) = &it.limit {
                add(x.clone());
            }
            for n in 1..=terms {
                add(it.sequence.eval_at(n)?);
            }
        }
        Ok(out)
    }
}

fn refusal_verdict(r: &crate::sequence::Refusal) -> Verdict {
    if r.is_definite() {
        Verdict::Fail
    } else {
        Verdict::Inconclusive
    }
}

/// Records a conclusion outcome as an item; definite refusals fail.
fn record(report: &mut CheckReport, label: &str, outcome: Outcome, claim: Claim, detail: &str) {
    match outcome {
        Ok(w) => {
            report.item_with_witness(label, Verdict::Pass, detail, &w);
            report.witness(label, w, claim);
        }
        Err(r) => {
            let v = refusal_verdict(&r);
            if v == Verdict::Fail {
                report.fail(format!("{label}: {r}"));
            }
            report.item(label, v, &r.to_string());
        }
    }
}

/// `f(xₙ) → f(x)` in ρ for every convergent suite item with `xₙ → x` in d.
pub fn check_vectorial_continuity(
    f: &MapDescriptor,
    d: &VectorMetric,
    rho: &VectorMetric,
    suite: &TestSuite,
) -> Result<CheckReport> {
    check_maps(f, d, rho)?;
    let mut report = CheckReport::new("vectorial-continuity");
    for (i, (seq, x)) in suite.convergent_items()?.into_iter().enumerate() {
        let label = format!("item {}", i + 1);
        if let Err(r) = d.e_converges(seq, x)? {
            report.item(&label, Verdict::Inconclusive, &format!("premise not established: {r}"));
            continue;
        }
        match f.push(seq)? {
            Pushed::Undecidable(why) => {
                report.item(&label, Verdict::Inconclusive, &format!("undecidable for this suite item: {why}"))
            }
            Pushed::Exact(image) => {
                let fx = f.apply(x)?;
                let claim = Claim::Distance {
                    metric: rho.clone(),
                    map: Some(f.clone()),
                    sequence: seq.clone(),
                    limit: x.clone(),
                };
                record(&mut report, &label, rho.e_converges(&image, &fx)?, claim, &format!("f(xn) -> {fx}"));
            }
        }
    }
    Ok(report.settle(
        "vectorially continuous on the suite",
        "not vectorially continuous",
        "vectorial continuity not decided on every item",
    ))
}

fn check_maps(f: &MapDescriptor, d: &VectorMetric, rho: &VectorMetric) -> Result<()> {
    if !f.domain().same_points(d.domain()) || !f.codomain().same_points(rho.domain()) {
        return Err(Error::Incompatible(format!(
            "map {} -> {} does not match metrics on {} and {}",
            f.domain(),
            f.codomain(),
            d.domain(),
            rho.domain()
        )));
    }
    Ok(())
}

fn check_positive_tolerance(b: &VectorElement, space: &RieszSpace) -> Result<()> {
    if b.space() != space || !b.is_positive() || b.is_zero() {
        return Err(Error::InvalidParameter(format!("tolerance {} must be > 0 in {space}", b.literal())));
    }
    Ok(())
}

/// `K` with `ρ(f(x), f(y)) ≤ K·d(x, y)` for an affine `f`.
fn affine_modulus(slope: &[Scalar], d: &VectorMetric, rho: &VectorMetric) -> Option<Matrix> {
    let (_, recovery) = d.coordinate_bounds()?;
    let (upper, _) = rho.coordinate_bounds()?;
    let s: Vec<Scalar> = slope.iter().map(Scalar::abs).collect();
    Some(linalg::mat_mul(&linalg::mat_mul(&upper, &linalg::diagonal(&s)), &recovery))
}

/// Certifies `d(x,y) < a ⇒ ρ(f(x),f(y)) < b` for each `b` of the grid.
pub fn check_topological_continuity(
    f: &MapDescriptor,
    d: &VectorMetric,
    rho: &VectorMetric,
    b_grid: &[VectorElement],
) -> Result<CheckReport> {
    check_maps(f, d, rho)?;
    b_grid.iter().try_for_each(|b| check_positive_tolerance(b, rho.codomain()))?;
    let mut report = CheckReport::new("topological-continuity");
    let (e, fsp) = (d.codomain(), rho.codomain());
    if !e.is_coordinatewise() || !fsp.is_coordinatewise() {
        report.note(format!("tolerances in {e} or {fsp} are not handled coordinatewise"));
        report.inconclusive();
        return Ok(report.conclude("topological continuity not decided"));
    }
    match f.form() {
        MapForm::Affine { slope, .. } => {
            let Some(k) = affine_modulus(slope, d, rho) else {
                report.note(format!("no coordinate bound for {d} or {rho}"));
                report.inconclusive();
                return Ok(report.conclude("topological continuity not decided"));
            };
            report.note(format!("modulus K = {}: rho(f(x),f(y)) <= K d(x,y)", matrix_literal(&k)));
            report.note("a does not depend on x, so every certificate is uniform".into());
            for b in b_grid {
                let label = format!("b = {}", b.literal());
                match affine_tolerance(&k, e, b) {
                    None => report.item(&label, Verdict::Inconclusive, "no positive a certified"),
                    Some((a, vacuous)) => {
                        let detail = if vacuous {
                            format!("a = {} (f does not move distances; any a works)", a.literal())
                        } else {
                            format!("a = {}", a.literal())
                        };
                        let bad = spot_check_affine(f, d, rho, &a, b)?;
                        match bad {
                            None => report.item(&label, Verdict::Pass, &detail),
                            Some(cx) => {
                                report.fail(cx.clone());
                                report.item(&label, Verdict::Fail, &cx);
                            }
                        }
                    }
                }
            }
        }
        MapForm::Table(_) if f.domain().is_finite() => {
            let pts = f.domain().enumerate().expect("finite");
            let Some(a) = finite_tolerance(d, &pts)? else {
                report.note("single point: every a works".into());
                for b in b_grid {
                    report.item(&format!("b = {}", b.literal()), Verdict::Pass, "vacuous");
                }
                return Ok(report.conclude("topologically continuous"));
            };
            report.note(format!(
                "a = {} lies below every nonzero distance, so d(x,y) < a forces x = y",
                a.literal()
            ));
            for b in b_grid {
                let label = format!("b = {}", b.literal());
                let mut bad = None;
                'pairs: for x in &pts {
                    for y in &pts {
                        if d.distance(x, y)?.lt(&a)? {
                            let r = rho.distance(&f.apply(x)?, &f.apply(y)?)?;
                            if !r.lt(b)? {
                                bad = Some(format!("({x}, {y}): rho(f(x),f(y)) = {} is not < b", r.literal()));
                                break 'pairs;
                            }
                        }
                    }
                }
                match bad {
                    None => report.item(&label, Verdict::Pass, &format!("a = {} (exhaustive)", a.literal())),
                    Some(cx) => {
                        report.fail(cx.clone());
                        report.item(&label, Verdict::Fail, &cx);
                    }
                }
            }
        }
        _ => {
            report.note(format!("map form {f} is not supported by the topological checker"));
            report.inconclusive();
        }
    }
    Ok(report.settle(
        "topologically continuous",
        "not topologically continuous",
        "topological continuity not decided",
    ))
}

/// Largest `a = t·1` with `K a ≤ b` (scalar source) or `K a ≤ b/2`.
fn affine_tolerance(k: &Matrix, e: &RieszSpace, b: &VectorElement) -> Option<(VectorElement, bool)> {
    let scalar_source = e.dim() == 1;
    let half = Scalar::ratio(1, 2);
    let mut t: Option<Scalar> = None;
    for (row, bi) in k.iter().zip(b.coords()) {
        let sum: Scalar = row.iter().cloned().sum();
        if sum.is_zero() {
            continue;
        }
        let bound = if scalar_source { bi / &sum } else { &(bi * &half) / &sum };
        t = Some(match t {
            Some(t) => t.min(bound),
            None => bound,
        });
    }
    match t {
        Some(t) if t.is_positive() => Some((e.element(vec![t; e.dim()]).ok()?, false)),
        Some(_) => None,
        None => {
            let a = if b.space() == e { b.clone() } else { e.ones() };
            Some((a, true))
        }
    }
}

/// Tries pairs `(x, x + h·eⱼ)` with `d < a` and checks `ρ < b` on their images.
fn spot_check_affine(
    f: &MapDescriptor,
    d: &VectorMetric,
    rho: &VectorMetric,
    a: &VectorElement,
    b: &VectorElement,
) -> Result<Option<String>> {
    let dim = f.domain().coordinate_space().expect("affine domain").dim();
    let bases = [Scalar::zero(), Scalar::one(), Scalar::ratio(-7, 3)];
    for base in &bases {
        let x = Point::Coords(vec![base.clone(); dim]);
        for j in 0..dim {
            let mut h = Scalar::from_int(8);
            for _ in 0..16 {
                let mut c = vec![base.clone(); dim];
                c[j] = &c[j] + &h;
                let y = Point::Coords(c);
                if d.distance(&x, &y)?.lt(a)? {
                    let r = rho.distance(&f.apply(&x)?, &f.apply(&y)?)?;
                    if !r.lt(b)? {
                        return Ok(Some(format!(
                            "({x}, {y}): d < a but rho(f(x),f(y)) = {} is not < b",
                            r.literal()
                        )));
                    }
                }
                h = &h * &Scalar::ratio(1, 2);
            }
        }
    }
    Ok(None)
}

/// A positive tolerance below every nonzero distance of a finite space.
fn finite_tolerance(d: &VectorMetric, pts: &[Point]) -> Result<Option<VectorElement>> {
    let e = d.codomain();
    let mut m: Option<Scalar> = None;
    for (i, x) in pts.iter().enumerate() {
        for y in &pts[i + 1..] {
            let top = d
                .distance(x, y)?
                .coords()
                .iter()
                .cloned()
                .reduce(|p, q| p.max(q))
                .expect("nonempty");
            m = Some(match m {
                Some(m) => m.min(top),
                None => top,
            });
        }
    }
    let Some(m) = m else { return Ok(None) };
    let t = if e.dim() == 1 { m } else { &m * &Scalar::ratio(1, 2) };
    Ok(Some(e.element(vec![t; e.dim()])?))
}

fn matrix_literal(m: &Matrix) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", rows.join(","))
}

/// `f(xₙ)` is ρ-Cauchy for every d-Cauchy suite item.
pub fn check_vectorial_uniform(
    f: &MapDescriptor,
    d: &VectorMetric,
    rho: &VectorMetric,
    suite: &TestSuite,
) -> Result<CheckReport> {
    check_maps(f, d, rho)?;
    let mut report = CheckReport::new("vectorial-uniform");
    for (i, it) in suite.items.iter().enumerate() {
        let label = format!("item {}", i + 1);
        if let Err(r) = d.e_cauchy(&it.sequence)? {
            report.item(&label, Verdict::Inconclusive, &format!("premise not established: {r}"));
            continue;
        }
        match f.push(&it.sequence)? {
            Pushed::Undecidable(why) => {
                report.item(&label, Verdict::Inconclusive, &format!("undecidable for this suite item: {why}"))
            }
            Pushed::Exact(image) => {
                let claim = Claim::Cauchy {
                    metric: rho.clone(),
                    map: Some(f.clone()),
                    sequence: it.sequence.clone(),
                };
                record(&mut report, &label, rho.e_cauchy(&image)?, claim, "f(xn) is Cauchy");
            }
        }
    }
    Ok(report.settle(
        "Cauchy sequences are mapped to Cauchy sequences",
        "a Cauchy sequence has a non-Cauchy image",
        "uniform continuity not decided on every item",
    ))
}

/// `{x : f(x) = g(x)}` on a finite domain.
pub fn coincidence_set(f: &MapDescriptor, g: &MapDescriptor) -> Result<Vec<Point>> {
    if f.domain() != g.domain() || !f.codomain().same_points(g.codomain()) {
        return Err(Error::Incompatible(format!("maps {f} and {g} do not share domain and codomain")));
    }
    let pts = f
        .domain()
        .enumerate()
        .ok_or_else(|| Error::Unsupported(format!("coincidence set over infinite domain {}", f.domain())))?;
    let mut out = Vec::new();
    for p in pts {
        if f.apply(&p)? == g.apply(&p)? {
            out.push(p);
        }
    }
    Ok(out)
}

pub fn check_coincidence_closed(f: &MapDescriptor, g: &MapDescriptor, d: &VectorMetric) -> Result<CheckReport> {
    let set = coincidence_set(f, g)?;
    let mut report = CheckReport::new("coincidence");
    let listed: Vec<String> = set.iter().map(|p| p.to_string()).collect();
    report.note(format!("coincidence set {{{}}}", listed.join(",")));
    report.absorb("closedness", d.is_e_closed(&Subset::of_points(set), &[], 0)?);
    Ok(report.settle("coincidence set is E-closed", "coincidence set is not E-closed", "closedness not decided"))
}

/// `f⁻¹(B)` on a finite domain.
pub fn preimage(f: &MapDescriptor, set: &[Point]) -> Result<Vec<Point>> {
    let pts = f
        .domain()
        .enumerate()
        .ok_or_else(|| Error::Unsupported(format!("preimage over infinite domain {}", f.domain())))?;
    let mut out = Vec::new();
    for p in pts {
        if set.contains(&f.apply(&p)?) {
            out.push(p);
        }
    }
    Ok(out)
}

/// `f = g` at each witnessed point of the closure of `A`, given `f = g` on `A`.
pub fn check_dense_agreement(
    f: &MapDescriptor,
    g: &MapDescriptor,
    d: &VectorMetric,
    rho: &VectorMetric,
    subset: &Subset,
    witnesses: &[(PointSequence, Point)],
) -> Result<CheckReport> {
    check_maps(f, d, rho)?;
    check_maps(g, d, rho)?;
    let mut report = CheckReport::new("dense-agreement");
    for p in &subset.points {
        if f.apply(p)? != g.apply(p)? {
            report.item("precondition", Verdict::Inconclusive, &format!("f and g differ on A at {p}; rejected"));
            return Ok(report.conclude("precondition f = g on A fails"));
        }
    }
    for (i, (seq, x)) in witnesses.iter().enumerate() {
        let label = format!("x = {x}");
        if !subset.contains_sequence(seq) {
            report.item(&label, Verdict::Inconclusive, &format!("invalid density witness: witness {} not in A", i + 1));
            continue;
        }
        if let Err(r) = d.e_converges(seq, x)? {
            report.item(&label, Verdict::Inconclusive, &format!("invalid density witness: {r}"));
            continue;
        }
        let (Pushed::Exact(fi), Pushed::Exact(gi)) = (f.push(seq)?, g.push(seq)?) else {
            report.item(&label, Verdict::Inconclusive, "an image sequence leaves the family");
            continue;
        };
        if fi != gi {
            report.item(&label, Verdict::Inconclusive, "f and g differ along the witness sequence; rejected");
            continue;
        }
        let (fx, gx) = (f.apply(x)?, g.apply(x)?);
        if fx != gx {
            let cx = format!("f({x}) = {fx} but g({x}) = {gx}");
            report.fail(cx.clone());
            report.item(&label, Verdict::Fail, &cx);
            continue;
        }
        let claim = |m: &MapDescriptor| Claim::Distance {
            metric: rho.clone(),
            map: Some(m.clone()),
            sequence: seq.clone(),
            limit: x.clone(),
        };
        match (rho.e_converges(&fi, &fx)?, rho.e_converges(&gi, &gx)?) {
            (Ok(wf), Ok(wg)) => {
                report.item_with_witness(&label, Verdict::Pass, &format!("f(x) = g(x) = {fx}"), &wf);
                report.witness(&format!("{label}/f"), wf, claim(f));
                report.witness(&format!("{label}/g"), wg, claim(g));
            }
            _ => report.item(&label, Verdict::Pass, &format!("f(x) = g(x) = {fx}; image convergence not certified")),
        }
    }
    Ok(report.settle("f = g at every witnessed point", "f and g disagree", "agreement not decided"))
}

/// The extension `g(x) = lim f(xₙ)` at each target, checked for
/// well-definedness across witnesses.
pub fn extend_from_dense(
    f: &MapDescriptor,
    e_complete: bool,
    targets: &[(Point, Vec<PointSequence>)],
    d: &VectorMetric,
    rho: &VectorMetric,
) -> Result<(Vec<(Point, Point)>, CheckReport)> {
    check_maps(f, d, rho)?;
    let mut report = CheckReport::new("extension");
    let mut values = Vec::new();
    if !e_complete {
        report.note(format!("codomain {} is not declared E-complete", f.codomain()));
        report.inconclusive();
        return Ok((values, report.conclude("extension not attempted")));
    }
    report.note("the certified modulus of g is the limit of the bounds of f along the witnesses".into());
    for (x, seqs) in targets {
        let label = format!("x = {x}");
        let mut found: Option<Point> = None;
        let mut verdict = Verdict::Pass;
        let mut detail = String::new();
        for (j, seq) in seqs.iter().enumerate() {
            if let Err(r) = d.e_converges(seq, x)? {
                verdict = Verdict::Inconclusive;
                detail = format!("witness {} does not converge: {r}", j + 1);
                break;
            }
            let image = match f.push(seq)? {
                Pushed::Exact(i) => i,
                Pushed::Undecidable(why) => {
                    verdict = Verdict::Inconclusive;
                    detail = format!("witness {}: {why}", j + 1);
                    break;
                }
            };
            match rho.e_cauchy(&image)? {
                Err(r) => {
                    verdict = Verdict::Inconclusive;
                    detail = format!("image of witness {} is not Cauchy ({r}); extension refused", j + 1);
                    break;
                }
                Ok(w) => report.witness(
                    &format!("{label}/{}", j + 1),
                    w,
                    Claim::Cauchy {
                        metric: rho.clone(),
                        map: Some(f.clone()),
                        sequence: seq.clone(),
                    },
                ),
            }
            let v = image.limit_candidate();
            match &found {
                Some(prev) if !rho.distance(prev, &v)?.is_zero() => {
                    verdict = Verdict::Fail;
                    detail = format!("witnesses give different limits {prev} and {v}");
                    report.fail(format!("{label}: {detail}"));
                    break;
                }
                Some(_) => {}
                None => found = Some(v),
            }
        }
        if verdict == Verdict::Pass {
            let v = found.ok_or(Error::Empty("extension target without witnesses"))?;
            detail = format!("g({x}) = {v} from {} witness(es)", seqs.len());
            values.push((x.clone(), v));
        }
        report.item(&label, verdict, &detail);
    }
    Ok((
        values,
        report.settle("extension well defined at every target", "extension not well defined", "extension refused at some target"),
    ))
}

/// `T_f(d(x,y)) = ρ(f(x),f(y))` on every pair, with `T_f` linear and injective.
pub fn check_isometry(
    f: &MapDescriptor,
    t: &MonotoneOperator,
    d: &VectorMetric,
    rho: &VectorMetric,
    pairs: &[(Point, Point)],
) -> Result<CheckReport> {
    check_maps(f, d, rho)?;
    if t.source() != d.codomain() || t.target() != rho.codomain() {
        return Err(Error::Incompatible(format!("T_f = {t} does not map {} to {}", d.codomain(), rho.codomain())));
    }
    let mut report = CheckReport::new("isometry");
    if !t.is_linear() {
        report.fail(format!("T_f = {t} is not linear"));
        return Ok(report.conclude("certificate rejected"));
    }
    if !t.kernel_trivial()? {
        report.fail(format!("T_f = {t} has a nontrivial kernel"));
        return Ok(report.conclude("certificate rejected"));
    }
    let c = t.classify()?;
    report.note(format!("T_f positive: {}", c.positive));
    report.note(match &c.lattice_homomorphism {
        LatticeVerdict::VerifiedOnSamples { pairs } => {
            format!("T_f is a lattice homomorphism on {pairs} sampled pairs: vector isometric")
        }
        LatticeVerdict::Refuted { x, y, .. } => format!("T_f is not a lattice homomorphism (x = {x}, y = {y})"),
        LatticeVerdict::NotApplicable => "lattice homomorphism not applicable".into(),
    });
    let mut outside_range = None;
    for (x, y) in pairs {
        let lhs = t.apply(&d.distance(x, y)?)?;
        let rhs = rho.distance(&f.apply(x)?, &f.apply(y)?)?;
        if lhs != rhs {
            report.fail(format!(
                "({x}, {y}): T_f(d) = {} but rho(f(x),f(y)) = {}",
                lhs.literal(),
                rhs.literal()
            ));
            break;
        }
        if outside_range.is_none() && !t.range_contains(&rhs)? {
            outside_range = Some(rhs.literal());
        }
    }
    match outside_range {
        None => report.item("range", Verdict::Pass, "every sampled rho-value lies in the range of T_f"),
        Some(v) => {
            report.fail(format!("rho-value {v} is outside the range of T_f"));
            report.item("range", Verdict::Fail, &format!("{v} outside the range"));
        }
    }
    let summary = format!("isometry verified on {} pairs", pairs.len());
    Ok(report.settle(&summary, "isometry equation violated", &summary))
}

/// A closed set for the homeomorphism check together with its convergence suite.
#[derive(Clone, Debug, Default)]
pub struct ClosedSample {
    pub subset: Subset,
    pub suites: Vec<(PointSequence, Point)>,
}

pub fn check_homeomorphism(
    f: &MapDescriptor,
    f_inv: &MapDescriptor,
    d: &VectorMetric,
    rho: &VectorMetric,
    forward: &TestSuite,
    backward: &TestSuite,
    closed: &[ClosedSample],
    horizon: u64,
) -> Result<CheckReport> {
    check_maps(f, d, rho)?;
    check_maps(f_inv, rho, d)?;
    let mut report = CheckReport::new("homeomorphism");
    let mut xs = forward.sample_points(4)?;
    for c in closed {
        xs.extend(c.subset.points.iter().cloned());
    }
    if let Some(all) = f.domain().enumerate() {
        xs = all;
    }
    let ys = match f.codomain().enumerate() {
        Some(all) => all,
        None => backward.sample_points(4)?,
    };
    for x in &xs {
        if &f_inv.apply(&f.apply(x)?)? != x {
            report.fail(format!("inverse fails: f^-1(f({x})) != {x}"));
            return Ok(report.conclude("inverse rejected"));
        }
    }
    for y in &ys {
        if &f.apply(&f_inv.apply(y)?)? != y {
            report.fail(format!("inverse fails: f(f^-1({y})) != {y}"));
            return Ok(report.conclude("inverse rejected"));
        }
    }
    report.note(format!("inverse identities hold on {} + {} samples", xs.len(), ys.len()));
    report.absorb("forward", check_vectorial_continuity(f, d, rho, forward)?);
    report.absorb("backward", check_vectorial_continuity(f_inv, rho, d, backward)?);
    for (i, c) in closed.iter().enumerate() {
        let label = format!("closed set {}", i + 1);
        let source = d.is_e_closed(&c.subset, &c.suites, horizon)?;
        if source.verdict != Verdict::Pass {
            report.item(&label, Verdict::Inconclusive, "input set is not shown to be E-closed");
            continue;
        }
        let image = image_sample(f, c)?;
        report.absorb(&label, rho.is_e_closed(&image.subset, &image.suites, horizon)?);
    }
    Ok(report.settle("vector homeomorphism on the samples", "not a vector homeomorphism", "homeomorphism not decided"))
}

fn image_sample(f: &MapDescriptor, c: &ClosedSample) -> Result<ClosedSample> {
    let mut subset = Subset::of_points(c.subset.points.iter().map(|p| f.apply(p)).collect::<Result<_>>()?);
    for r in &c.subset.ranges {
        if let Pushed::Exact(i) = f.push(r)? {
            subset.ranges.push(i);
        }
    }
    let mut suites = Vec::new();
    for (s, x) in &c.suites {
        if let Pushed::Exact(i) = f.push(s)? {
            suites.push((i, f.apply(x)?));
        }
    }
    Ok(ClosedSample { subset, suites })
}

/// The graph `{(x, f(x))}` of a map on a finite domain.
pub fn graph_of(f: &MapDescriptor) -> Result<Vec<Point>> {
    let pts = f
        .domain()
        .enumerate()
        .ok_or_else(|| Error::Unsupported(format!("graph over infinite domain {}", f.domain())))?;
    pts.into_iter().map(|x| Ok(Point::pair(x.clone(), f.apply(&x)?))).collect()
}

/// For each suite item `xₙ` with claimed limit `(x, y)` of `(xₙ, f(xₙ))`
/// under the product metric, checks `y = f(x)`.
pub fn check_graph_closed(
    f: &MapDescriptor,
    d: &VectorMetric,
    rho: &VectorMetric,
    suites: &[(PointSequence, Point)],
) -> Result<CheckReport> {
    check_maps(f, d, rho)?;
    let pi = VectorMetric::product(d.clone(), rho.clone());
    let mut report = CheckReport::new("graph-closed");
    if f.domain().is_finite() && f.codomain().is_finite() {
        let graph = graph_of(f)?;
        report.absorb("exhaustive", pi.is_e_closed(&Subset::of_points(graph), &[], 0)?);
    }
    for (i, (seq, limit)) in suites.iter().enumerate() {
        let label = format!("item {}", i + 1);
        let (x, y) = limit.split()?;
        let image = match f.push(seq)? {
            Pushed::Exact(im) => im,
            Pushed::Undecidable(why) => {
                report.item(&label, Verdict::Inconclusive, &format!("undecidable for this suite item: {why}"));
                continue;
            }
        };
        let graph_seq = PointSequence::pair(seq.clone(), image);
        match pi.e_converges(&graph_seq, limit)? {
            Err(r) => report.item(&label, Verdict::Inconclusive, &format!("convergence to {limit} refused: {r}")),
            Ok(w) => {
                let fx = f.apply(x)?;
                if &fx == y {
                    report.item_with_witness(&label, Verdict::Pass, &format!("y = f(x) = {fx}"), &w);
                    report.witness(
                        &label,
                        w,
                        Claim::Distance {
                            metric: pi.clone(),
                            map: None,
                            sequence: graph_seq,
                            limit: limit.clone(),
                        },
                    );
                } else {
                    let cx = format!("(xn, f(xn)) -> ({x}, {y}) but f(x) = {fx}");
                    report.fail(cx.clone());
                    report.item(&label, Verdict::Fail, &cx);
                }
            }
        }
    }
    Ok(report.settle("graph is closed on the suite", "graph is not closed", "graph closedness not decided"))
}

/// `fₙ(x) = slope·x + cₙ` with intercepts `cₙ` in closed form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FunctionSequence {
    pub domain: PointSpace,
    pub codomain: PointSpace,
    pub slope: Vec<Scalar>,
    pub intercepts: SymbolicSequence,
}

impl FunctionSequence {
    pub fn new(domain: PointSpace, codomain: PointSpace, slope: Vec<Scalar>, intercepts: SymbolicSequence) -> Result<Self> {
        let target = codomain
            .coordinate_space()
            .ok_or_else(|| Error::Incompatible(format!("function sequences need a coordinate codomain, got {codomain}")))?;
        if intercepts.space() != &target {
            return Err(Error::SpaceMismatch {
                left: target.to_string(),
                right: intercepts.space().to_string(),
            });
        }
        let f = FunctionSequence {
            domain,
            codomain,
            slope,
            intercepts,
        };
        f.member(1)?;
        Ok(f)
    }

    pub fn member(&self, n: u64) -> Result<MapDescriptor> {
        let c = self.intercepts.eval_at(n)?;
        MapDescriptor::affine(self.domain.clone(), self.codomain.clone(), self.slope.clone(), c.into_coords())
    }

    /// Members `f₁..=f_horizon`.
    pub fn members(&self, horizon: u64) -> Result<Vec<MapDescriptor>> {
        self.intercepts
            .values(horizon)
            .into_iter()
            .map(|c| MapDescriptor::affine(self.domain.clone(), self.codomain.clone(), self.slope.clone(), c.into_coords()))
            .collect()
    }
}

/// Validates `ρ(fₙ(x), f(x)) ≤ aₙ` for all `x`. The difference
/// `fₙ(x) − f(x) = cₙ − c` does not depend on `x`, and the catalog metrics
/// are translation invariant, so the bound reduces to `ρ(cₙ, c) ≤ aₙ`.
fn validate_uniform_witness(
    family: &FunctionSequence,
    limit: &MapDescriptor,
    rho: &VectorMetric,
    a: &DecreasingWitness,
    horizon: u64,
) -> Result<std::result::Result<String, (Verdict, String)>> {
    let MapForm::Affine { slope, intercept } = limit.form() else {
        return Ok(Err((Verdict::Inconclusive, format!("limit map {limit} is not affine"))));
    };
    if slope != &family.slope {
        return Ok(Err((Verdict::Inconclusive, "slopes differ: the gap depends on x".into())));
    }
    if rho.coordinate_bounds().is_none() {
        return Ok(Err((Verdict::Inconclusive, format!("metric {rho} is not translation invariant"))));
    }
    if a.space() != rho.codomain() {
        return Err(Error::SpaceMismatch {
            left: rho.codomain().to_string(),
            right: a.space().to_string(),
        });
    }
    let c = PointSequence::Symbolic(family.intercepts.clone());
    let c0 = Point::Coords(intercept.clone());
    if let Some(e) = rho.distance_sequence(&c, &c0)? {
        if a.sequence().dominates(&e)? {
            return Ok(Ok(format!("aₙ dominates rho(cₙ, c) = {e} termwise")));
        }
    }
    if let Ok(m) = rho.e_converges(&c, &c0)? {
        if a.sequence().dominates(m.sequence())? {
            return Ok(Ok(format!("aₙ dominates the majorant {m}")));
        }
    }
    let av = a.values(horizon);
    let cv = family.intercepts.values(horizon);
    for (n, (an, cn)) in av.iter().zip(&cv).enumerate() {
        let dn = rho.distance(&Point::from_element(cn), &c0)?;
        if !dn.leq(an)? {
            return Ok(Err((
                Verdict::Fail,
                format!("uniform witness fails at n = {}: rho = {} > {}", n + 1, dn.literal(), an.literal()),
            )));
        }
    }
    Ok(Err((Verdict::Inconclusive, format!("uniform witness not certified (no violation up to n = {horizon})"))))
}

/// Vectorial continuity of a uniform limit, with the combined bound
/// `2aₙ + bₙ` per suite item.
pub fn uniform_limit(
    family: &FunctionSequence,
    limit: &MapDescriptor,
    a: &DecreasingWitness,
    d: &VectorMetric,
    rho: &VectorMetric,
    suite: &TestSuite,
    horizon: u64,
) -> Result<CheckReport> {
    check_maps(limit, d, rho)?;
    let mut report = CheckReport::new("uniform-limit");
    match validate_uniform_witness(family, limit, rho, a, horizon)? {
        Err((v, why)) => {
            if v == Verdict::Fail {
                report.fail(why.clone());
            }
            report.item("uniform witness", v, &why);
            return Ok(report.settle("", "uniform witness rejected", "uniform witness not validated"));
        }
        Ok(how) => {
            let mut points = suite.sample_points(3)?;
            points.truncate(8);
            report.item_with_witness("uniform witness", Verdict::Pass, &how, a);
            report.witness(
                "uniform witness",
                a.clone(),
                Claim::Uniform {
                    family: family.clone(),
                    limit: limit.clone(),
                    metric: rho.clone(),
                    points,
                },
            );
        }
    }
    let f1 = family.member(1)?;
    let two = Scalar::from_int(2);
    for (i, (seq, x)) in suite.convergent_items()?.into_iter().enumerate() {
        let label = format!("item {}", i + 1);
        if let Err(r) = d.e_converges(seq, x)? {
            report.item(&label, Verdict::Inconclusive, &format!("premise not established: {r}"));
            continue;
        }
        let Pushed::Exact(img1) = f1.push(seq)? else {
            report.item(&label, Verdict::Inconclusive, "image under f1 leaves the family");
            continue;
        };
        let b = match rho.e_converges(&img1, &f1.apply(x)?)? {
            Ok(b) => b,
            Err(r) => {
                report.item(&label, refusal_verdict(&r), &format!("f1 is not continuous on this item: {r}"));
                if r.is_definite() {
                    report.fail(format!("{label}: f1 is not continuous: {r}"));
                }
                continue;
            }
        };
        let combined = a.scale(&two).sum(&b)?;
        report.item_with_witness(&label, Verdict::Pass, &format!("2an + bn with bn = {b}"), &combined);
        report.witness(
            &label,
            combined,
            Claim::Distance {
                metric: rho.clone(),
                map: Some(limit.clone()),
                sequence: seq.clone(),
                limit: x.clone(),
            },
        );
    }
    Ok(report.settle(
        "uniform limit is vectorially continuous on the suite",
        "combined bound fails",
        "uniform limit not decided on every item",
    ))
}

/// A function with an optional Lipschitz-type operator certificate
/// `|f(x) − f(y)| ≤ T(d(x, y))`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FunctionSpaceEntry {
    pub map: MapDescriptor,
    pub certificate: Option<MonotoneOperator>,
}

fn values_space(f: &MapDescriptor) -> Result<RieszSpace> {
    f.codomain()
        .coordinate_space()
        .ok_or_else(|| Error::Incompatible(format!("function values in {} are not in a Riesz space", f.codomain())))
}

pub fn cvo_check(entry: &FunctionSpaceEntry, d: &VectorMetric) -> Result<CheckReport> {
    let f = &entry.map;
    let fsp = values_space(f)?;
    let pts = f
        .domain()
        .enumerate()
        .ok_or_else(|| Error::Unsupported("C_v^o entries live on finite tables".into()))?;
    let mut report = CheckReport::new("cvo");
    let Some(t) = &entry.certificate else {
        report.note("no certificate: admitted to C_v only".into());
        report.inconclusive();
        return Ok(report.conclude("membership in C_v^o not certified"));
    };
    if t.source() != d.codomain() || t.target() != &fsp {
        return Err(Error::Incompatible(format!("certificate {t} does not map {} to {fsp}", d.codomain())));
    }
    let c = t.classify()?;
    if !c.positive {
        report.fail(format!("certificate {t} is not positive"));
        return Ok(report.conclude("certificate rejected"));
    }
    'outer: for (i, x) in pts.iter().enumerate() {
        for y in &pts[i + 1..] {
            let fx = f.codomain().element(&f.apply(x)?)?;
            let fy = f.codomain().element(&f.apply(y)?)?;
            let lhs = fx.sub(&fy)?.abs();
            let rhs = t.apply(&d.distance(x, y)?)?;
            if !lhs.leq(&rhs)? {
                report.fail(format!("({x}, {y}): |f(x)-f(y)| = {} exceeds T(d) = {}", lhs.literal(), rhs.literal()));
                break 'outer;
            }
        }
    }
    Ok(report.settle(
        &format!("certificate {t} holds on all {} points", pts.len()),
        "certificate violated",
        "not decided",
    ))
}

/// `f ∨ g` (or `f ∧ g`) pointwise, certified by `T_f + T_g`.
pub fn cvo_lattice_op(f: &FunctionSpaceEntry, g: &FunctionSpaceEntry, join: bool) -> Result<FunctionSpaceEntry> {
    if f == g {
        return Ok(f.clone());
    }
    let (fm, gm) = (&f.map, &g.map);
    if fm.domain() != gm.domain() || fm.codomain() != gm.codomain() {
        return Err(Error::Incompatible(format!("entries {fm} and {gm} do not share domain and codomain")));
    }
    let pts = fm
        .domain()
        .enumerate()
        .ok_or_else(|| Error::Unsupported("C_v^o entries live on finite tables".into()))?;
    let mut pairs = Vec::new();
    for x in pts {
        let a = fm.codomain().element(&fm.apply(&x)?)?;
        let b = gm.codomain().element(&gm.apply(&x)?)?;
        let v = if join { a.join(&b)? } else { a.meet(&b)? };
        pairs.push((x, Point::from_element(&v)));
    }
    let certificate = match (&f.certificate, &g.certificate) {
        (Some(s), Some(t)) => Some(s.sum(t)?),
        _ => None,
    };
    Ok(FunctionSpaceEntry {
        map: MapDescriptor::table(fm.domain().clone(), fm.codomain().clone(), pairs)?,
        certificate,
    })
}

/// `d∞(f, g) = sup_x |f(x) − g(x)|` over named entries; coinciding entries
/// are dropped after the first.
pub fn uniform_metric(entries: &[(String, FunctionSpaceEntry)]) -> Result<VectorMetric> {
    let first = &entries.first().ok_or(Error::Empty("uniform metric over no functions"))?.1.map;
    let fsp = values_space(first)?;
    let points = first
        .domain()
        .enumerate()
        .ok_or_else(|| Error::Unsupported("C_v^o entries live on finite tables".into()))?;
    let mut rows: Vec<(String, Vec<Point>)> = Vec::new();
    for (name, e) in entries {
        let vals = points
            .iter()
            .map(|x| Ok(Point::from_element(&e.map.codomain().element(&e.map.apply(x)?)?)))
            .collect::<Result<Vec<_>>>()?;
        if !rows.iter().any(|(_, v)| v == &vals) {
            rows.push((name.clone(), vals));
        }
    }
    VectorMetric::uniform(
        VectorMetric::absolute_value(fsp),
        FunctionTable { points, rows },
    )
}

/// Bounded set with its declared bound `a`: `d(x,y) ≤ a` on the set.
pub type BoundedSet = (Vec<Point>, VectorElement);

/// `ρ(f(x),f(y)) ≤ T(d(x,y))` on every bounded set, which bounds the image
/// by `T(a)`.
pub fn check_vectorial_bounded(
    f: &MapDescriptor,
    t: &MonotoneOperator,
    d: &VectorMetric,
    rho: &VectorMetric,
    sets: &[BoundedSet],
) -> Result<CheckReport> {
    check_maps(f, d, rho)?;
    let mut report = CheckReport::new("vectorial-bounded");
    if !t.classify()?.positive {
        report.fail(format!("operator {t} is not positive"));
        return Ok(report.conclude("certificate rejected"));
    }
    for (i, (set, a)) in sets.iter().enumerate() {
        let label = format!("set {}", i + 1);
        if !d.is_e_bounded(set, a)? {
            report.item(&label, Verdict::Inconclusive, &format!("set is not bounded by {}", a.literal()));
            continue;
        }
        let image_bound = t.apply(a)?;
        // The reported violation is the steepest pair for scalar values.
        let mut worst: Option<(Scalar, String)> = None;
        let mut first: Option<String> = None;
        let mut count = 0usize;
        for (k, x) in set.iter().enumerate() {
            for y in &set[k + 1..] {
                let dxy = d.distance(x, y)?;
                let lhs = rho.distance(&f.apply(x)?, &f.apply(y)?)?;
                let rhs = t.apply(&dxy)?;
                if lhs.leq(&rhs)? {
                    continue;
                }
                count += 1;
                let msg = format!("({x}, {y}): rho = {} > T(d) = {}", lhs.literal(), rhs.literal());
                if lhs.coords().len() == 1 && !rhs.coord(0).is_zero() {
                    let ratio = lhs.coord(0) / rhs.coord(0);
                    if worst.as_ref().is_none_or(|(r, _)| &ratio > r) {
                        worst = Some((ratio, msg.clone()));
                    }
                }
                first.get_or_insert(msg);
            }
        }
        match worst.map(|(_, m)| m).or(first) {
            None => report.item(&label, Verdict::Pass, &format!("image bound T(a) = {}", image_bound.literal())),
            Some(msg) => {
                report.fail(msg.clone());
                report.item(&label, Verdict::Fail, &format!("{count} violating pair(s); steepest {msg}"));
            }
        }
    }
    Ok(report.settle("vectorially bounded", "operator bound violated", "boundedness not decided"))
}

/// `d(xₙ, yₙ) → d(x, y)`, witnessed by `aₙ + bₙ`.
pub fn check_metric_map(
    d: &VectorMetric,
    xs: &PointSequence,
    x: &Point,
    ys: &PointSequence,
    y: &Point,
) -> Result<CheckReport> {
    let mut report = CheckReport::new("metric-map");
    match (d.e_converges(xs, x)?, d.e_converges(ys, y)?) {
        (Ok(a), Ok(b)) => {
            let w = a.sum(&b)?;
            report.item_with_witness("d(xn,yn) -> d(x,y)", Verdict::Pass, "an + bn", &w);
            report.witness(
                "metric map",
                w,
                Claim::MetricMap {
                    metric: d.clone(),
                    xs: xs.clone(),
                    x: x.clone(),
                    ys: ys.clone(),
                    y: y.clone(),
                },
            );
        }
        (Err(r), _) | (_, Err(r)) => report.item("premise", Verdict::Inconclusive, &format!("premise not established: {r}")),
    }
    Ok(report.settle("the metric is continuous along the pair", "", "premise not established"))
}

/// On σ-complete codomains: `d(xₙ, x) ↓ 0` certified implies
/// `ρ(f(xₙ), f(x)) ↓ 0` certified. `None` when the premise is not certified.
pub fn downarrow_transfer(
    f: &MapDescriptor,
    d: &VectorMetric,
    rho: &VectorMetric,
    seq: &PointSequence,
    x: &Point,
) -> Result<Option<bool>> {
    let Some(ds) = d.distance_sequence(seq, x)? else { return Ok(None) };
    if !ds.monotone_downarrow(&d.codomain().zero()) {
        return Ok(None);
    }
    let Pushed::Exact(img) = f.push(seq)? else { return Ok(None) };
    let Some(rs) = rho.distance_sequence(&img, &f.apply(x)?)? else { return Ok(None) };
    Ok(Some(rs.monotone_downarrow(&rho.codomain().zero())))
}

/// Infimum helper for distance-to-set style bounds.
pub fn min_distance(d: &VectorMetric, x: &Point, set: &[Point]) -> Result<VectorElement> {
    let ds = set.iter().map(|a| d.distance(x, a)).collect::<Result<Vec<_>>>()?;
    finite_inf(&ds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::Shape;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn r(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    fn affine(a: Scalar, b: Scalar) -> MapDescriptor {
        MapDescriptor::affine(PointSpace::Line, PointSpace::Line, vec![a], vec![b]).unwrap()
    }

    fn abs() -> VectorMetric {
        VectorMetric::absolute_value(RieszSpace::Reals)
    }

    fn seq(offset: Scalar, terms: &[(Scalar, Shape)]) -> PointSequence {
        PointSequence::Symbolic(
            SymbolicSequence::new(
                VectorElement::real(offset),
                terms.iter().map(|(c, sh)| (VectorElement::real(c.clone()), sh.clone())).collect(),
            )
            .unwrap(),
        )
    }

    fn harmonic() -> PointSequence {
        seq(s(0), &[(s(1), Shape::Harmonic)])
    }

    fn half_geometric() -> Shape {
        Shape::geometric(r(1, 2)).unwrap()
    }

    fn witness_of(report: &CheckReport, label: &str) -> String {
        report.items.iter().find(|i| i.label == label).and_then(|i| i.witness.clone()).unwrap()
    }

    #[test]
    fn vectorial_continuity_of_doubling() {
        let f = affine(s(2), s(0));
        let suite = TestSuite::convergent(vec![(harmonic(), Point::int(0))]);
        let rep = check_vectorial_continuity(&f, &abs(), &abs(), &suite).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        let expected = DecreasingWitness::new(SymbolicSequence::single(VectorElement::real(s(2)), Shape::Harmonic)).unwrap();
        assert_eq!(witness_of(&rep, "item 1"), expected.to_string());
        assert_eq!(rep.recheck_witnesses(200).unwrap(), 1);
    }

    #[test]
    fn tables_pass_by_eventual_constancy() {
        let x = PointSpace::finite(&["p", "q", "r"]).unwrap();
        let l = Point::label;
        let d = VectorMetric::tabulated(
            x.clone(),
            RieszSpace::Reals,
            &[
                (l("p"), l("q"), VectorElement::real(s(1))),
                (l("p"), l("r"), VectorElement::real(s(2))),
                (l("q"), l("r"), VectorElement::real(s(2))),
            ],
        )
        .unwrap();
        let f = MapDescriptor::table(x.clone(), x.clone(), vec![(l("p"), l("q")), (l("q"), l("q")), (l("r"), l("p"))]).unwrap();
        let ec = PointSequence::EventuallyConstant {
            prefix: vec![l("r"), l("q")],
            tail: l("p"),
        };
        let rep = check_vectorial_continuity(&f, &d, &d, &TestSuite::convergent(vec![(ec, l("p"))])).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        let top = check_topological_continuity(&f, &d, &d, &[VectorElement::real(r(1, 2))]).unwrap();
        assert_eq!(top.verdict, Verdict::Pass);
        assert!(top.provenance.iter().any(|p| p.contains("a = 1 ")));
    }

    #[test]
    fn topological_tolerances() {
        let f = affine(s(2), s(5));
        let rep = check_topological_continuity(&f, &abs(), &abs(), &[VectorElement::real(s(1))]).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        assert_eq!(rep.items[0].detail, "a = 1/2");
        let c = affine(s(0), s(3));
        let rep = check_topological_continuity(&c, &abs(), &abs(), &[VectorElement::real(s(1))]).unwrap();
        assert!(rep.items[0].detail.contains("any a"));
        let lex = VectorMetric::absolute_value(RieszSpace::LexPlane);
        let id = MapDescriptor::identity(PointSpace::Riesz(RieszSpace::LexPlane)).unwrap();
        let rep = check_topological_continuity(&id, &lex, &lex, &[RieszSpace::LexPlane.ints(&[0, 1])]).unwrap();
        assert_eq!(rep.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn vector_valued_tolerances() {
        let d = VectorMetric::weighted_abs(s(2)).unwrap();
        let rho = VectorMetric::pair_abs(s(1), s(3)).unwrap();
        let id = MapDescriptor::identity(PointSpace::Line).unwrap();
        let b = RieszSpace::Coordinate(2).ints(&[1, 1]);
        let rep = check_topological_continuity(&id, &d, &rho, &[b]).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass, "{rep:?}");
        let plane = MapDescriptor::identity(PointSpace::Plane).unwrap();
        let sum = VectorMetric::weighted_sum(s(1), s(1)).unwrap();
        let pair = VectorMetric::coord_pair(s(1), s(1)).unwrap();
        let rep = check_topological_continuity(&plane, &pair, &sum, &[VectorElement::real(s(1))]).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass, "{rep:?}");
    }

    #[test]
    fn cauchy_images() {
        let f = affine(s(2), s(0));
        let g = seq(s(0), &[(s(1), half_geometric())]);
        let rep = check_vectorial_uniform(&f, &abs(), &abs(), &TestSuite::cauchy(vec![g])).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        let expected = DecreasingWitness::new(SymbolicSequence::single(VectorElement::real(s(4)), half_geometric())).unwrap();
        assert_eq!(witness_of(&rep, "item 1"), expected.to_string());
        let dist = MapDescriptor::distance_to_point(VectorMetric::weighted_abs(s(1)).unwrap(), Point::int(0)).unwrap();
        let h = seq(s(1), &[(s(-1), Shape::Harmonic)]);
        let rep = check_vectorial_uniform(&dist, &VectorMetric::weighted_abs(s(1)).unwrap(), &abs(), &TestSuite::cauchy(vec![h]))
            .unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        assert_eq!(rep.recheck_witnesses(100).unwrap(), 1);
    }

    fn three_points() -> (PointSpace, VectorMetric) {
        let x = PointSpace::finite(&["p", "q", "r"]).unwrap();
        let l = Point::label;
        let one = VectorElement::real(s(1));
        let d = VectorMetric::tabulated(
            x.clone(),
            RieszSpace::Reals,
            &[(l("p"), l("q"), one.clone()), (l("p"), l("r"), one.clone()), (l("q"), l("r"), one)],
        )
        .unwrap();
        (x, d)
    }

    fn valued(x: &PointSpace, vals: [i64; 3]) -> MapDescriptor {
        let pairs = ["p", "q", "r"].iter().zip(vals).map(|(p, v)| (Point::label(p), Point::int(v))).collect();
        MapDescriptor::table(x.clone(), PointSpace::Line, pairs).unwrap()
    }

    #[test]
    fn coincidence_sets() {
        let (x, d) = three_points();
        let f = valued(&x, [1, 2, 3]);
        let g = valued(&x, [1, 5, 3]);
        assert_eq!(coincidence_set(&f, &g).unwrap(), vec![Point::label("p"), Point::label("r")]);
        assert_eq!(check_coincidence_closed(&f, &g, &d).unwrap().verdict, Verdict::Pass);
        assert_eq!(coincidence_set(&f, &f).unwrap().len(), 3);
        let h = valued(&x, [7, 8, 9]);
        assert!(coincidence_set(&f, &h).unwrap().is_empty());
        assert_eq!(check_coincidence_closed(&f, &h, &d).unwrap().verdict, Verdict::Pass);
    }

    #[test]
    fn dense_agreement() {
        let f = affine(s(2), s(0));
        let a = Subset {
            points: vec![],
            ranges: vec![harmonic()],
        };
        let rep = check_dense_agreement(&f, &f, &abs(), &abs(), &a, &[(harmonic(), Point::int(0))]).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        let g = affine(s(2), s(1));
        let a2 = Subset {
            points: vec![Point::int(1)],
            ranges: vec![harmonic()],
        };
        let rep = check_dense_agreement(&f, &g, &abs(), &abs(), &a2, &[(harmonic(), Point::int(0))]).unwrap();
        assert_eq!(rep.verdict, Verdict::Inconclusive);
        assert!(rep.summary.contains("precondition"));
        let third = seq(r(1, 3), &[(r(-1, 3), Shape::geometric(r(1, 4)).unwrap())]);
        let a3 = Subset {
            points: vec![],
            ranges: vec![third.clone()],
        };
        let rep = check_dense_agreement(&f, &f.clone(), &abs(), &abs(), &a3, &[(third, Point::real(r(1, 3)))]).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
    }

    #[test]
    fn extension_values() {
        let f = affine(s(3), s(0));
        let xk = seq(r(1, 3), &[(r(-1, 3), Shape::geometric(r(1, 4)).unwrap())]);
        let yk = seq(r(1, 3), &[(s(1), Shape::Harmonic)]);
        let (vals, rep) = extend_from_dense(&f, true, &[(Point::real(r(1, 3)), vec![xk, yk])], &abs(), &abs()).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        assert_eq!(vals, vec![(Point::real(r(1, 3)), Point::int(1))]);
        let (vals, _) = extend_from_dense(
            &f,
            true,
            &[(Point::int(2), vec![PointSequence::constant(Point::int(2))])],
            &abs(),
            &abs(),
        )
        .unwrap();
        assert_eq!(vals[0].1, Point::int(6));
        let (_, rep) = extend_from_dense(&f, false, &[], &abs(), &abs()).unwrap();
        assert_eq!(rep.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn isometry_example() {
        let d = VectorMetric::weighted_abs(s(2)).unwrap();
        let rho = VectorMetric::pair_abs(s(1), s(3)).unwrap();
        let id = MapDescriptor::identity(PointSpace::Line).unwrap();
        let c2 = RieszSpace::Coordinate(2);
        let t = MonotoneOperator::matrix(RieszSpace::Reals, c2.clone(), vec![vec![r(1, 2)], vec![r(3, 2)]]).unwrap();
        let pts: Vec<Point> = (-2..=2).map(Point::int).collect();
        let pairs = crate::operators::all_pairs(&pts);
        let rep = check_isometry(&id, &t, &d, &rho, &pairs).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass, "{}", rep.summary);
        let zero = MonotoneOperator::matrix(RieszSpace::Reals, c2, vec![vec![s(0)], vec![s(0)]]).unwrap();
        let rep = check_isometry(&id, &zero, &d, &rho, &pairs).unwrap();
        assert!(rep.summary.contains("rejected"));
    }

    #[test]
    fn homeomorphism_of_doubling() {
        let f = affine(s(2), s(0));
        let g = affine(r(1, 2), s(0));
        let fwd = TestSuite::convergent(vec![(harmonic(), Point::int(0))]);
        let closed = ClosedSample {
            subset: Subset {
                points: vec![Point::int(0)],
                ranges: vec![harmonic()],
            },
            suites: vec![(harmonic(), Point::int(0))],
        };
        let rep = check_homeomorphism(&f, &g, &abs(), &abs(), &fwd, &fwd, &[closed], 50).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass, "{rep:?}");
        let bad = affine(s(1), s(0));
        let rep = check_homeomorphism(&f, &bad, &abs(), &abs(), &fwd, &fwd, &[], 50).unwrap();
        assert_eq!(rep.verdict, Verdict::Fail);
    }

    #[test]
    fn graphs() {
        let f = affine(s(2), s(0));
        let ok = (harmonic(), "<0;0>".parse().unwrap());
        let adversarial = (harmonic(), "<0;1>".parse().unwrap());
        let rep = check_graph_closed(&f, &abs(), &abs(), &[ok, adversarial]).unwrap();
        assert_eq!(rep.items[0].verdict, Verdict::Pass);
        assert_eq!(rep.items[1].verdict, Verdict::Inconclusive);
        let (x, d) = three_points();
        let g = MapDescriptor::table(
            x.clone(),
            x.clone(),
            vec![
                (Point::label("p"), Point::label("q")),
                (Point::label("q"), Point::label("q")),
                (Point::label("r"), Point::label("p")),
            ],
        )
        .unwrap();
        assert_eq!(check_graph_closed(&g, &d, &d, &[]).unwrap().verdict, Verdict::Pass);
    }

    fn family(intercepts: PointSequence) -> FunctionSequence {
        let PointSequence::Symbolic(c) = intercepts else { panic!() };
        FunctionSequence::new(PointSpace::Line, PointSpace::Line, vec![s(1)], c).unwrap()
    }

    #[test]
    fn uniform_limits() {
        let fam = family(harmonic());
        let f = affine(s(1), s(0));
        let a = DecreasingWitness::new(SymbolicSequence::single(VectorElement::real(s(1)), Shape::Harmonic)).unwrap();
        let suite = TestSuite::convergent(vec![(harmonic(), Point::int(0))]);
        let rep = uniform_limit(&fam, &f, &a, &abs(), &abs(), &suite, 100).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass, "{rep:?}");
        let three = DecreasingWitness::new(SymbolicSequence::single(VectorElement::real(s(3)), Shape::Harmonic)).unwrap();
        assert_eq!(witness_of(&rep, "item 1"), three.to_string());
        assert_eq!(rep.recheck_witnesses(200).unwrap(), 2);

        let constant = family(seq(s(1), &[]));
        let rep = uniform_limit(&constant, &f, &a, &abs(), &abs(), &suite, 100).unwrap();
        assert_eq!(rep.verdict, Verdict::Fail);
        assert!(rep.summary.contains("n = 2"));
    }

    fn entry(x: &PointSpace, vals: [i64; 3], t: i64) -> FunctionSpaceEntry {
        FunctionSpaceEntry {
            map: valued(x, vals),
            certificate: Some(MonotoneOperator::scale(RieszSpace::Reals, s(t))),
        }
    }

    #[test]
    fn function_space() {
        let (x, d) = three_points();
        let f = entry(&x, [0, 1, 2], 2);
        assert_eq!(cvo_check(&f, &d).unwrap().verdict, Verdict::Pass);
        assert_eq!(cvo_lattice_op(&f, &f, true).unwrap(), f);
        let f1 = entry(&x, [0, 1, 1], 1);
        let g2 = entry(&x, [2, 0, 1], 2);
        let j = cvo_lattice_op(&f1, &g2, true).unwrap();
        assert_eq!(j.certificate, Some(MonotoneOperator::scale(RieszSpace::Reals, s(3))));
        assert_eq!(cvo_check(&j, &d).unwrap().verdict, Verdict::Pass);
        let bare = FunctionSpaceEntry {
            map: f.map.clone(),
            certificate: None,
        };
        assert_eq!(cvo_check(&bare, &d).unwrap().verdict, Verdict::Inconclusive);
        let dinf = uniform_metric(&[("f".into(), f1), ("g".into(), g2), ("j".into(), j)]).unwrap();
        assert_eq!(dinf.check_axioms(&[]).unwrap().verdict, Verdict::Pass);
    }

    #[test]
    fn bounded_maps() {
        let sq = MapDescriptor::table(
            PointSpace::Line,
            PointSpace::Line,
            (0..4).map(|i| (Point::int(i), Point::int(i * i))).collect(),
        )
        .unwrap();
        let t = MonotoneOperator::scale(RieszSpace::Reals, s(2));
        let set: Vec<Point> = (0..4).map(Point::int).collect();
        let rep = check_vectorial_bounded(&sq, &t, &abs(), &abs(), &[(set, VectorElement::real(s(3)))]).unwrap();
        assert_eq!(rep.verdict, Verdict::Fail);
        assert!(rep.counterexample.unwrap().starts_with("(2, 3)"));
        let dbl = affine(s(2), s(0));
        let set: Vec<Point> = [-1, 0, 1].into_iter().map(Point::int).collect();
        let rep = check_vectorial_bounded(&dbl, &t, &abs(), &abs(), &[(set, VectorElement::real(s(2)))]).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        assert!(rep.items[0].detail.contains("T(a) = 4"));
    }

    #[test]
    fn metric_maps_and_downarrow() {
        let rep = check_metric_map(&abs(), &harmonic(), &Point::int(0), &PointSequence::constant(Point::int(1)), &Point::int(1))
            .unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        assert_eq!(rep.recheck_witnesses(100).unwrap(), 1);
        let f = affine(s(-3), s(1));
        assert_eq!(downarrow_transfer(&f, &abs(), &abs(), &harmonic(), &Point::int(0)).unwrap(), Some(true));
    }
}
