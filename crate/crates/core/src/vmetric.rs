//! Vector metrics `d: X × X → E`, their axioms, and E-convergence.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::maps::{MapDescriptor, Pushed};
use crate::point::{Point, PointSequence, PointSpace};
use crate::report::{CheckReport, Verdict};
use crate::riesz::{finite_inf, finite_sup, RieszSpace, VectorElement};
use crate::scalar::Scalar;
use crate::sequence::{DecreasingWitness, Refusal, SymbolicSequence};

/// A witness `aₙ ↓ 0` or the reason none exists in the family.
pub type Outcome = std::result::Result<DecreasingWitness, Refusal>;

/// Functions `X → Y` tabulated on finitely many points, the carrier of the
/// uniform metric `d∞`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FunctionTable {
    pub points: Vec<Point>,
    pub rows: Vec<(String, Vec<Point>)>,
}

impl FunctionTable {
    pub fn row(&self, name: &str) -> Option<&[Point]> {
        self.rows.iter().find(|(n, _)| n == name).map(|(_, v)| v.as_slice())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum MetricForm {
    /// Full symmetric matrix indexed by the labels of a finite domain.
    Tabulated(Vec<Vec<VectorElement>>),
    /// `a|x−y|` on the line.
    WeightedAbs(Scalar),
    /// `(b|x−y|, c|x−y|)` on the line.
    PairAbs(Scalar, Scalar),
    /// `a|x₁−y₁| + b|x₂−y₂|` on the plane.
    WeightedSum(Scalar, Scalar),
    /// `max{a|x₁−y₁|, b|x₂−y₂|}` on the plane.
    WeightedMax(Scalar, Scalar),
    /// `(c|x₁−y₁|, e|x₂−y₂|)` on the plane.
    CoordPair(Scalar, Scalar),
    /// `|a−b|` on a Riesz space.
    AbsoluteValue,
    /// `(|e₁−e₂|, |f₁−f₂|)` on `E × F`.
    Biabsolute,
    /// `((x₁,y₁),(x₂,y₂)) ↦ (d(x₁,x₂), ρ(y₁,y₂))`.
    Product(Box<VectorMetric>, Box<VectorMetric>),
    /// `(d(x,y), ρ(x,y))` on a shared domain.
    Double(Box<VectorMetric>, Box<VectorMetric>),
    /// `ρ(f(x), f(y))`.
    Pullback(Box<MapDescriptor>, Box<VectorMetric>),
    /// `sup_x base(f(x), g(x))` over a finite function table.
    Uniform(Box<VectorMetric>, FunctionTable),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VectorMetric {
    domain: PointSpace,
    codomain: RieszSpace,
    form: MetricForm,
}

fn positive(name: &str, v: &Scalar) -> Result<()> {
    if v.is_positive() && !v.is_zero() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be > 0, got {v}")))
    }
}

fn abs_diff(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(y).map(|(a, b)| (a - b).abs()).collect()
}

fn sc(v: &Scalar) -> Scalar {
    v.clone()
}

impl VectorMetric {
    pub fn domain(&self) -> &PointSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &RieszSpace {
        &self.codomain
    }

    pub fn form(&self) -> &MetricForm {
        &self.form
    }

    /// A tabulated metric on a finite domain. Entries are unordered pairs;
    /// a pair listed twice with different values is rejected. Diagonal
    /// entries default to zero. Axioms are not enforced here:
    /// [`Self::check_axioms`] reports violations.
    pub fn tabulated(
        domain: PointSpace,
        codomain: RieszSpace,
        entries: &[(Point, Point, VectorElement)],
    ) -> Result<VectorMetric> {
        let PointSpace::Finite(labels) = &domain else {
            return Err(Error::Incompatible(format!("tabulated metric needs a finite domain, got {domain}")));
        };
        let n = labels.len();
        let index = |p: &Point| -> Result<usize> {
            match p {
                Point::Label(l) => labels.iter().position(|x| x == l),
                _ => None,
            }
            .ok_or_else(|| Error::PointOutsideDomain {
                point: p.to_string(),
                domain: domain.to_string(),
            })
        };
        let mut table: Vec<Vec<Option<VectorElement>>> = vec![vec![None; n]; n];
        for (p, q, v) in entries {
            if v.space() != &codomain {
                return Err(Error::SpaceMismatch {
                    left: codomain.to_string(),
                    right: v.space().to_string(),
                });
            }
            let (i, j) = (index(p)?, index(q)?);
            for (a, b) in [(i, j), (j, i)] {
                match &table[a][b] {
                    Some(old) if old != v => {
                        return Err(Error::AsymmetricEntry(p.to_string(), q.to_string()));
                    }
                    _ => table[a][b] = Some(v.clone()),
                }
            }
        }
        let mut full = Vec::with_capacity(n);
        for (i, row) in table.into_iter().enumerate() {
            let mut r = Vec::with_capacity(n);
            for (j, v) in row.into_iter().enumerate() {
                match v {
                    Some(v) => r.push(v),
                    None if i == j => r.push(codomain.zero()),
                    None => return Err(Error::MissingEntry(labels[i].clone(), labels[j].clone())),
                }
            }
            full.push(r);
        }
        Ok(VectorMetric {
            domain,
            codomain,
            form: MetricForm::Tabulated(full),
        })
    }

    pub fn weighted_abs(a: Scalar) -> Result<VectorMetric> {
        positive("a", &a)?;
        Ok(VectorMetric {
            domain: PointSpace::Line,
            codomain: RieszSpace::Reals,
            form: MetricForm::WeightedAbs(a),
        })
    }

    pub fn pair_abs(b: Scalar, c: Scalar) -> Result<VectorMetric> {
        if b.is_negative() || c.is_negative() || (&b + &c).is_zero() {
            return Err(Error::InvalidParameter(format!(
                "pair-abs needs b, c >= 0 and b + c > 0, got b = {b}, c = {c}"
            )));
        }
        Ok(VectorMetric {
            domain: PointSpace::Line,
            codomain: RieszSpace::Coordinate(2),
            form: MetricForm::PairAbs(b, c),
        })
    }

    pub fn weighted_sum(a: Scalar, b: Scalar) -> Result<VectorMetric> {
        positive("a", &a)?;
        positive("b", &b)?;
        Ok(VectorMetric {
            domain: PointSpace::Plane,
            codomain: RieszSpace::Reals,
            form: MetricForm::WeightedSum(a, b),
        })
    }

    pub fn weighted_max(a: Scalar, b: Scalar) -> Result<VectorMetric> {
        positive("a", &a)?;
        positive("b", &b)?;
        Ok(VectorMetric {
            domain: PointSpace::Plane,
            codomain: RieszSpace::Reals,
            form: MetricForm::WeightedMax(a, b),
        })
    }

    pub fn coord_pair(c: Scalar, e: Scalar) -> Result<VectorMetric> {
        positive("c", &c)?;
        positive("e", &e)?;
        Ok(VectorMetric {
            domain: PointSpace::Plane,
            codomain: RieszSpace::Coordinate(2),
            form: MetricForm::CoordPair(c, e),
        })
    }

    pub fn absolute_value(space: RieszSpace) -> VectorMetric {
        VectorMetric {
            domain: PointSpace::Riesz(space.clone()),
            codomain: space,
            form: MetricForm::AbsoluteValue,
        }
    }

    pub fn biabsolute(e: RieszSpace, f: RieszSpace) -> VectorMetric {
        VectorMetric {
            domain: PointSpace::product(PointSpace::Riesz(e.clone()), PointSpace::Riesz(f.clone())),
            codomain: RieszSpace::product(e, f),
            form: MetricForm::Biabsolute,
        }
    }

    pub fn product(d: VectorMetric, rho: VectorMetric) -> VectorMetric {
        VectorMetric {
            domain: PointSpace::product(d.domain.clone(), rho.domain.clone()),
            codomain: RieszSpace::product(d.codomain.clone(), rho.codomain.clone()),
            form: MetricForm::Product(Box::new(d), Box::new(rho)),
        }
    }

    pub fn double(d: VectorMetric, rho: VectorMetric) -> Result<VectorMetric> {
        if !d.domain.same_points(&rho.domain) {
            return Err(Error::Incompatible(format!(
                "double metric needs a shared domain, got {} and {}",
                d.domain, rho.domain
            )));
        }
        Ok(VectorMetric {
            domain: d.domain.clone(),
            codomain: RieszSpace::product(d.codomain.clone(), rho.codomain.clone()),
            form: MetricForm::Double(Box::new(d), Box::new(rho)),
        })
    }

    pub fn pullback(f: MapDescriptor, rho: VectorMetric) -> Result<VectorMetric> {
        if !f.codomain().same_points(&rho.domain) {
            return Err(Error::Incompatible(format!(
                "map lands in {} but the metric lives on {}",
                f.codomain(),
                rho.domain
            )));
        }
        Ok(VectorMetric {
            domain: f.domain().clone(),
            codomain: rho.codomain.clone(),
            form: MetricForm::Pullback(Box::new(f), Box::new(rho)),
        })
    }

    /// `d∞` on a finite table of functions. Rows must be pairwise distinct
    /// (equal rows would sit at distance zero) and the base codomain must
    /// admit the suprema.
    pub fn uniform(base: VectorMetric, table: FunctionTable) -> Result<VectorMetric> {
        if !base.codomain.sigma_complete_model() {
            return Err(Error::Unsupported(format!(
                "uniform metric needs suprema in {}",
                base.codomain
            )));
        }
        if table.points.is_empty() {
            return Err(Error::Empty("uniform metric over an empty domain"));
        }
        for (name, values) in &table.rows {
            if values.len() != table.points.len() {
                return Err(Error::DimensionMismatch {
                    expected: table.points.len(),
                    got: values.len(),
                });
            }
            values.iter().try_for_each(|v| base.domain.check(v))?;
            if let Some((other, _)) = table.rows.iter().find(|(n, v)| n != name && v == values) {
                return Err(Error::InvalidParameter(format!(
                    "functions `{name}` and `{other}` coincide"
                )));
            }
        }
        let names: Vec<String> = table.rows.iter().map(|(n, _)| n.clone()).collect();
        Ok(VectorMetric {
            domain: PointSpace::finite(&names)?,
            codomain: base.codomain.clone(),
            form: MetricForm::Uniform(Box::new(base), table),
        })
    }

    /// `(upper, recovery)` matrices for forms determined by coordinate
    /// differences: `d(x,y) ≤ upper·|x−y|` and `|x−y| ≤ recovery·d(x,y)`,
    /// with `|·|` taken coordinatewise.
    pub fn coordinate_bounds(&self) -> Option<(Matrix, Matrix)> {
        let z = Scalar::zero;
        let inv = |v: &Scalar| v.recip().expect("positive parameter");
        match &self.form {
            MetricForm::WeightedAbs(a) => Some((vec![vec![sc(a)]], vec![vec![inv(a)]])),
            MetricForm::PairAbs(b, c) => {
                let rec = if b.is_zero() {
                    vec![vec![z(), inv(c)]]
                } else {
                    vec![vec![inv(b), z()]]
                };
                Some((vec![vec![sc(b)], vec![sc(c)]], rec))
            }
            MetricForm::WeightedSum(a, b) | MetricForm::WeightedMax(a, b) => {
                Some((vec![vec![sc(a), sc(b)]], vec![vec![inv(a)], vec![inv(b)]]))
            }
            MetricForm::CoordPair(c, e) => Some((
                linalg::diagonal(&[sc(c), sc(e)]),
                linalg::diagonal(&[inv(c), inv(e)]),
            )),
            MetricForm::AbsoluteValue if self.codomain.is_coordinatewise() => {
                let n = self.codomain.dim();
                Some((linalg::identity(n), linalg::identity(n)))
            }
            _ => None,
        }
    }

    fn factor_metrics(&self) -> Option<(VectorMetric, VectorMetric)> {
        match &self.form {
            MetricForm::Product(d, r) => Some(((**d).clone(), (**r).clone())),
            MetricForm::Biabsolute => {
                let RieszSpace::Product(e, f) = &self.codomain else {
                    unreachable!("biabsolute codomain is a product")
                };
                Some((
                    VectorMetric::absolute_value((**e).clone()),
                    VectorMetric::absolute_value((**f).clone()),
                ))
            }
            _ => None,
        }
    }

    fn coords_of<'a>(&self, p: &'a Point) -> Result<&'a [Scalar]> {
        self.domain.check(p)?;
        Ok(p.coords().expect("coordinate point"))
    }

    pub fn distance(&self, x: &Point, y: &Point) -> Result<VectorElement> {
        let cod = &self.codomain;
        match &self.form {
            MetricForm::Tabulated(table) => {
                let PointSpace::Finite(labels) = &self.domain else {
                    unreachable!()
                };
                let idx = |p: &Point| -> Result<usize> {
                    self.domain.check(p)?;
                    let Point::Label(l) = p else { unreachable!() };
                    Ok(labels.iter().position(|x| x == l).expect("checked"))
                };
                Ok(table[idx(x)?][idx(y)?].clone())
            }
            MetricForm::WeightedAbs(_)
            | MetricForm::PairAbs(..)
            | MetricForm::WeightedSum(..)
            | MetricForm::CoordPair(..) => {
                let u = abs_diff(self.coords_of(x)?, self.coords_of(y)?);
                let (upper, _) = self.coordinate_bounds().expect("coordinate form");
                cod.element(linalg::mat_vec(&upper, &u))
            }
            MetricForm::WeightedMax(a, b) => {
                let u = abs_diff(self.coords_of(x)?, self.coords_of(y)?);
                Ok(VectorElement::real((a * &u[0]).max(b * &u[1])))
            }
            MetricForm::AbsoluteValue => {
                let a = self.domain.element(x)?;
                let b = self.domain.element(y)?;
                Ok(a.sub(&b)?.abs())
            }
            MetricForm::Biabsolute | MetricForm::Product(..) => {
                self.domain.check(x)?;
                self.domain.check(y)?;
                let (d, r) = self.factor_metrics().expect("product form");
                let (x1, x2) = x.split()?;
                let (y1, y2) = y.split()?;
                Ok(VectorElement::pair(&d.distance(x1, y1)?, &r.distance(x2, y2)?))
            }
            MetricForm::Double(d, r) => Ok(VectorElement::pair(&d.distance(x, y)?, &r.distance(x, y)?)),
            MetricForm::Pullback(f, r) => r.distance(&f.apply(x)?, &f.apply(y)?),
            MetricForm::Uniform(base, table) => {
                self.domain.check(x)?;
                self.domain.check(y)?;
                let (Point::Label(f), Point::Label(g)) = (x, y) else {
                    unreachable!()
                };
                let fr = table.row(f).expect("checked");
                let gr = table.row(g).expect("checked");
                let ds = fr
                    .iter()
                    .zip(gr)
                    .map(|(a, b)| base.distance(a, b))
                    .collect::<Result<Vec<_>>>()?;
                finite_sup(&ds)
            }
        }
    }

    /// `sample` defaults to every point of a finite domain. vm1 is checked
    /// on all pairs and vm2, `d(x,y) ≤ d(x,z) + d(y,z)`, on all ordered
    /// triples.
    pub fn check_axioms(&self, sample: &[Point]) -> Result<CheckReport> {
        let all;
        let sample = if sample.is_empty() {
            all = self
                .domain
                .enumerate()
                .ok_or(Error::Empty("axiom sample on an infinite domain"))?;
            &all[..]
        } else {
            sample
        };
        sample.iter().try_for_each(|p| self.domain.check(p))?;
        let exhaustive = self
            .domain
            .enumerate()
            .is_some_and(|pts| pts.iter().all(|p| sample.contains(p)));
        let n = sample.len();
        let mut dist = vec![Vec::with_capacity(n); n];
        for (i, x) in sample.iter().enumerate() {
            for y in sample {
                dist[i].push(self.distance(x, y)?);
            }
        }
        let mut report = CheckReport::new("axioms");
        report.note(if exhaustive {
            format!("exhaustive over all {n} points of {}", self.domain)
        } else {
            format!("verified on a sample of {n} points")
        });
        for i in 0..n {
            for j in 0..n {
                let zero = dist[i][j].is_zero();
                if zero != (sample[i] == sample[j]) {
                    report.fail(format!(
                        "vm1 violated at ({}, {}): d = {}",
                        sample[i], sample[j], dist[i][j]
                    ));
                    return Ok(report.conclude("vm1 violation"));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let rhs = dist[i][k].add(&dist[j][k])?;
                    if !dist[i][j].leq(&rhs)? {
                        report.fail(format!(
                            "vm2 violated at triple ({}, {}, {}): d({},{}) = {} exceeds {} + {}",
                            sample[i], sample[j], sample[k], sample[i], sample[j], dist[i][j], dist[i][k], dist[j][k]
                        ));
                        return Ok(report.conclude("vm2 violation"));
                    }
                }
            }
        }
        report.note(format!("vm1 on {} pairs, vm2 on {} ordered triples", n * n, n * n * n));
        Ok(report.conclude("vector metric axioms hold"))
    }

    /// E-convergence of `s` to `x`: a witness `aₙ ↓ 0` with
    /// `d(xₙ, x) ≤ aₙ`, or a refusal.
    pub fn e_converges(&self, s: &PointSequence, x: &Point) -> Result<Outcome> {
        self.domain.check(x)?;
        s.check_in(&self.domain)?;
        if let PointSequence::EventuallyConstant { prefix, tail } = s {
            return self.eventually_constant_witness(prefix, tail, x);
        }
        match &self.form {
            MetricForm::Biabsolute | MetricForm::Product(..) => {
                let (d, r) = self.factor_metrics().expect("product form");
                let PointSequence::Pair(s1, s2) = s else {
                    unreachable!("checked against a product space")
                };
                let (x1, x2) = x.split()?;
                Ok(pair_outcomes(d.e_converges(s1, x1)?, r.e_converges(s2, x2)?))
            }
            MetricForm::Double(d, r) => Ok(pair_outcomes(d.e_converges(s, x)?, r.e_converges(s, x)?)),
            MetricForm::Pullback(f, r) => match f.push(s)? {
                Pushed::Exact(image) => r.e_converges(&image, &f.apply(x)?),
                Pushed::Undecidable(why) => Ok(Err(Refusal::OutsideFamily(why))),
            },
            MetricForm::Tabulated(_) | MetricForm::Uniform(..) => {
                unreachable!("finite domains only carry eventually-constant sequences")
            }
            _ => {
                let seq = s.as_symbolic(&self.domain)?;
                let xe = self.domain.element(x)?;
                let delta = seq.shift(&xe)?;
                if !delta.offset().is_zero() {
                    return Ok(Err(Refusal::LimitMismatch {
                        offset: seq.offset().clone(),
                        limit: xe,
                    }));
                }
                let m = match delta.canonical_majorant(&delta.space().zero()) {
                    Ok(m) => m,
                    Err(r) => return Ok(Err(r)),
                };
                match self.coordinate_bounds() {
                    Some((upper, _)) => m.map_positive(&self.codomain, |c| {
                        self.codomain.element(linalg::mat_vec(&upper, c.coords()))
                    }),
                    None => Ok(Ok(m)),
                }
            }
        }
    }

    fn eventually_constant_witness(&self, prefix: &[Point], tail: &Point, x: &Point) -> Result<Outcome> {
        let dt = self.distance(tail, x)?;
        if !dt.is_zero() {
            return Ok(Err(Refusal::TailMismatch {
                tail: tail.to_string(),
                limit: x.to_string(),
            }));
        }
        let mut ds = vec![self.codomain.zero()];
        for p in prefix {
            ds.push(self.distance(p, x)?);
        }
        Ok(DecreasingWitness::prefix_bound(finite_sup(&ds)?, prefix.len() as u64 + 1))
    }

    /// E-Cauchy witness: `d(xₙ, xₙ₊ₚ) ≤ aₙ` for all `n, p`.
    pub fn e_cauchy(&self, s: &PointSequence) -> Result<Outcome> {
        s.check_in(&self.domain)?;
        if let PointSequence::EventuallyConstant { prefix, tail } = s {
            if !self.distance(tail, tail)?.is_zero() {
                return Ok(Err(Refusal::TailMismatch {
                    tail: tail.to_string(),
                    limit: tail.to_string(),
                }));
            }
            let mut ds = vec![self.codomain.zero()];
            for (i, p) in prefix.iter().enumerate() {
                for q in prefix[i..].iter().chain(std::iter::once(tail)) {
                    ds.push(self.distance(p, q)?);
                }
            }
            return Ok(DecreasingWitness::prefix_bound(finite_sup(&ds)?, prefix.len() as u64 + 1));
        }
        // d(xₙ, xₙ₊ₚ) ≤ d(xₙ, L) + d(xₙ₊ₚ, L) ≤ 2aₙ
        let limit = s.limit_candidate();
        Ok(self.e_converges(s, &limit)?.map(|w| w.scale(&Scalar::from_int(2))))
    }

    /// The exact E-valued sequence `n ↦ d(xₙ, x)`, when it stays in the
    /// symbolic family.
    pub fn distance_sequence(&self, s: &PointSequence, x: &Point) -> Result<Option<SymbolicSequence>> {
        self.domain.check(x)?;
        s.check_in(&self.domain)?;
        if let PointSequence::EventuallyConstant { prefix, tail } = s {
            let ds = prefix.iter().map(|p| self.distance(p, x)).collect::<Result<Vec<_>>>()?;
            return SymbolicSequence::eventually_constant(&ds, &self.distance(tail, x)?).map(Some);
        }
        match &self.form {
            MetricForm::Biabsolute | MetricForm::Product(..) => {
                let (d, r) = self.factor_metrics().expect("product form");
                let PointSequence::Pair(s1, s2) = s else { unreachable!() };
                let (x1, x2) = x.split()?;
                Ok(match (d.distance_sequence(s1, x1)?, r.distance_sequence(s2, x2)?) {
                    (Some(a), Some(b)) => Some(SymbolicSequence::pair(&a, &b)),
                    _ => None,
                })
            }
            MetricForm::Double(d, r) => Ok(match (d.distance_sequence(s, x)?, r.distance_sequence(s, x)?) {
                (Some(a), Some(b)) => Some(SymbolicSequence::pair(&a, &b)),
                _ => None,
            }),
            MetricForm::Pullback(f, r) => match f.push(s)? {
                Pushed::Exact(image) => r.distance_sequence(&image, &f.apply(x)?),
                Pushed::Undecidable(_) => Ok(None),
            },
            MetricForm::Tabulated(_) | MetricForm::Uniform(..) => unreachable!(),
            MetricForm::AbsoluteValue => {
                let delta = s.as_symbolic(&self.domain)?.shift(&self.domain.element(x)?)?;
                Ok(delta.abs_exact())
            }
            form => {
                let delta = s.as_symbolic(&self.domain)?.shift(&self.domain.element(x)?)?;
                let Some(u) = delta.abs_exact() else {
                    return Ok(None);
                };
                let u0 = u.component(0);
                let out = match form {
                    MetricForm::WeightedAbs(a) => Some(u0.scale(a)),
                    MetricForm::PairAbs(b, c) => Some(SymbolicSequence::from_components(
                        &self.codomain,
                        &[u0.scale(b), u0.scale(c)],
                    )?),
                    MetricForm::WeightedSum(a, b) => Some(u0.scale(a).add(&u.component(1).scale(b))?),
                    MetricForm::WeightedMax(a, b) => u0.scale(a).join_exact(&u.component(1).scale(b)),
                    MetricForm::CoordPair(c, e) => Some(SymbolicSequence::from_components(
                        &self.codomain,
                        &[u0.scale(c), u.component(1).scale(e)],
                    )?),
                    _ => unreachable!(),
                };
                Ok(out)
            }
        }
    }

    /// Supremum of all pairwise distances in `set`.
    pub fn e_diameter(&self, set: &[Point]) -> Result<VectorElement> {
        if !self.codomain.sigma_complete_model() {
            return Err(Error::Unsupported(format!(
                "E-diameter needs a Dedekind σ-complete codomain; {} is not",
                self.codomain
            )));
        }
        if set.is_empty() {
            return Err(Error::Empty("E-diameter of an empty set"));
        }
        let mut ds = Vec::with_capacity(set.len() * set.len());
        for x in set {
            for y in set {
                ds.push(self.distance(x, y)?);
            }
        }
        finite_sup(&ds)
    }

    pub fn is_e_bounded(&self, set: &[Point], bound: &VectorElement) -> Result<bool> {
        for x in set {
            for y in set {
                if !self.distance(x, y)?.leq(bound)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `d(x, A) = inf_{a∈A} d(x, a)`.
    pub fn distance_to_set(&self, x: &Point, set: &[Point]) -> Result<VectorElement> {
        if !self.codomain.sigma_complete_model() {
            return Err(Error::Unsupported(format!(
                "distance to a set needs infima in {}",
                self.codomain
            )));
        }
        let ds = set.iter().map(|a| self.distance(x, a)).collect::<Result<Vec<_>>>()?;
        finite_inf(&ds)
    }

    /// E-closedness of `subset`. On a finite domain the verdict is
    /// exhaustive; on symbolic domains it covers the supplied suites.
    pub fn is_e_closed(&self, subset: &Subset, suites: &[(PointSequence, Point)], horizon: u64) -> Result<CheckReport> {
        subset.points.iter().try_for_each(|p| self.domain.check(p))?;
        let mut report = CheckReport::new("e-closed");
        if let Some(all) = self.domain.enumerate() {
            report.note(format!(
                "finite domain: an E-convergent sequence is eventually constant, since each nonzero \
                 distance value eventually fails to lie below the witness; closure computed over all {} points",
                all.len()
            ));
            if let Some(gap) = self.min_positive_gap(&all)? {
                report.note(format!("smallest nonzero distance value: {gap}"));
            }
            for y in &all {
                if subset.contains_point(y) {
                    continue;
                }
                for a in &subset.points {
                    if self.distance(a, y)?.is_zero() {
                        report.fail(format!(
                            "constant sequence at {a} E-converges to {y}, which is outside the subset"
                        ));
                        return Ok(report.conclude("subset is not E-closed"));
                    }
                }
            }
        } else if suites.is_empty() {
            report.note("no suites supplied; nothing to decide on a symbolic domain".to_string());
            report.inconclusive();
        }
        for (i, (seq, limit)) in suites.iter().enumerate() {
            let label = format!("suite {}", i + 1);
            if !subset.contains_sequence(seq) {
                report.item(&label, Verdict::Inconclusive, "sequence is not shown to lie in the subset");
                continue;
            }
            match self.e_converges(seq, limit)? {
                Err(r) => report.item(&label, Verdict::Inconclusive, &format!("premise not established: {r}")),
                Ok(w) => {
                    if subset.contains_point(limit) || subset.attains(limit, horizon)? {
                        report.item_with_witness(&label, Verdict::Pass, &format!("limit {limit} lies in the subset"), &w);
                    } else {
                        report.fail(format!("sequence {seq} E-converges to {limit}, outside the subset"));
                        report.item_with_witness(&label, Verdict::Fail, &format!("limit {limit} outside the subset"), &w);
                    }
                }
            }
        }
        let pass = if self.domain.is_finite() {
            "E-closed (exhaustive)"
        } else {
            "E-closed on the supplied suites"
        };
        Ok(report.settle(pass, "subset is not E-closed", "E-closedness not decided"))
    }

    /// Smallest nonzero distance for scalar codomains.
    fn min_positive_gap(&self, points: &[Point]) -> Result<Option<Scalar>> {
        if self.codomain.dim() != 1 {
            return Ok(None);
        }
        let mut best: Option<Scalar> = None;
        for (i, x) in points.iter().enumerate() {
            for y in &points[i + 1..] {
                let v = self.distance(x, y)?.coord(0).clone();
                if v.is_positive() && !v.is_zero() {
                    best = Some(match best {
                        Some(b) => b.min(v),
                        None => v,
                    });
                }
            }
        }
        Ok(best)
    }
}

/// Combines factor outcomes, preferring a definite refusal.
pub(crate) fn pair_outcomes(a: Outcome, b: Outcome) -> Outcome {
    match (a, b) {
        (Ok(x), Ok(y)) => Ok(DecreasingWitness::pair(&x, &y)),
        (Err(r), Err(s)) => Err(if !r.is_definite() && s.is_definite() { s } else { r }),
        (Err(r), _) | (_, Err(r)) => Err(r),
    }
}

/// A subset of a point space: listed points plus the ranges of listed
/// sequences.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Subset {
    pub points: Vec<Point>,
    pub ranges: Vec<PointSequence>,
}

impl Subset {
    pub fn of_points(points: Vec<Point>) -> Subset {
        Subset {
            points,
            ranges: Vec::new(),
        }
    }

    pub fn contains_point(&self, p: &Point) -> bool {
        self.points.contains(p)
    }

    /// Whether `p` is a term of some range sequence with index ≤ `horizon`.
    pub fn attains(&self, p: &Point, horizon: u64) -> Result<bool> {
        for r in &self.ranges {
            for n in 1..=horizon {
                if &r.eval_at(n)? == p {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    pub fn contains_sequence(&self, s: &PointSequence) -> bool {
        if self.ranges.contains(s) {
            return true;
        }
        match s {
            PointSequence::EventuallyConstant { prefix, tail } => prefix
                .iter()
                .chain(std::iter::once(tail))
                .all(|p| self.contains_point(p)),
            _ => false,
        }
    }
}

impl fmt::Display for VectorMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.form {
            MetricForm::Tabulated(_) => write!(f, "tabulated on {} into {}", self.domain, self.codomain),
            MetricForm::WeightedAbs(a) => write!(f, "{a}|x-y|"),
            MetricForm::PairAbs(b, c) => write!(f, "({b}|x-y|, {c}|x-y|)"),
            MetricForm::WeightedSum(a, b) => write!(f, "{a}|x1-y1| + {b}|x2-y2|"),
            MetricForm::WeightedMax(a, b) => write!(f, "max{{{a}|x1-y1|, {b}|x2-y2|}}"),
            MetricForm::CoordPair(c, e) => write!(f, "({c}|x1-y1|, {e}|x2-y2|)"),
            MetricForm::AbsoluteValue => write!(f, "|a-b| on {}", self.codomain),
            MetricForm::Biabsolute => write!(f, "biabsolute on {}", self.codomain),
            MetricForm::Product(d, r) => write!(f, "product({d}; {r})"),
            MetricForm::Double(d, r) => write!(f, "double({d}; {r})"),
            MetricForm::Pullback(m, r) => write!(f, "pullback({m}; {r})"),
            MetricForm::Uniform(b, t) => write!(f, "uniform over {} functions, base {b}", t.rows.len()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::Shape;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn r(n: i64) -> VectorElement {
        VectorElement::real(s(n))
    }

    fn harmonic(c: i64, offset: i64) -> PointSequence {
        PointSequence::Symbolic(SymbolicSequence::new(r(offset), vec![(r(c), Shape::Harmonic)]).unwrap())
    }

    fn three_point(pq: i64, qr: i64, pr: i64) -> VectorMetric {
        let x = PointSpace::finite(&["p", "q", "r"]).unwrap();
        let l = Point::label;
        VectorMetric::tabulated(
            x,
            RieszSpace::Reals,
            &[(l("p"), l("q"), r(pq)), (l("q"), l("r"), r(qr)), (l("p"), l("r"), r(pr))],
        )
        .unwrap()
    }

    #[test]
    fn distances() {
        let d = VectorMetric::weighted_abs(s(2)).unwrap();
        assert_eq!(d.distance(&Point::int(3), &Point::int(1)).unwrap(), r(4));
        let e = RieszSpace::Reals;
        let pi = VectorMetric::product(VectorMetric::absolute_value(e.clone()), VectorMetric::absolute_value(e));
        let a: Point = "<0;0>".parse().unwrap();
        let b: Point = "<1;2>".parse().unwrap();
        assert_eq!(pi.distance(&a, &b).unwrap().coords(), &[s(1), s(2)]);
        let cp = VectorMetric::coord_pair(s(1), s(1)).unwrap();
        let d2 = cp.distance(&"(0,0)".parse().unwrap(), &"(2,-3)".parse().unwrap()).unwrap();
        assert_eq!(d2.coords(), &[s(2), s(3)]);
        let wm = VectorMetric::weighted_max(s(1), s(2)).unwrap();
        assert_eq!(wm.distance(&"(0,0)".parse().unwrap(), &"(3,1)".parse().unwrap()).unwrap(), r(3));
        assert!(d.distance(&Point::label("p"), &Point::int(1)).is_err());
    }

    #[test]
    fn constructor_parameters() {
        assert!(VectorMetric::weighted_abs(s(0)).is_err());
        assert!(VectorMetric::pair_abs(s(0), s(0)).is_err());
        assert!(VectorMetric::pair_abs(s(0), s(1)).is_ok());
        assert!(VectorMetric::pair_abs(s(-1), s(3)).is_err());
    }

    #[test]
    fn triangle_violation_is_reported_at_the_first_triple() {
        let d = three_point(1, 1, 5);
        let rep = d.check_axioms(&[]).unwrap();
        assert_eq!(rep.verdict, Verdict::Fail);
        assert!(rep.counterexample.unwrap().contains("(p, r, q)"));
    }

    #[test]
    fn diagonal_violation() {
        let x = PointSpace::finite(&["p", "q"]).unwrap();
        let l = Point::label;
        let d = VectorMetric::tabulated(x, RieszSpace::Reals, &[(l("p"), l("p"), r(1)), (l("p"), l("q"), r(1))]).unwrap();
        let rep = d.check_axioms(&[]).unwrap();
        assert_eq!(rep.verdict, Verdict::Fail);
        assert!(rep.counterexample.unwrap().contains("vm1"));
    }

    #[test]
    fn table_diagnostics() {
        let x = PointSpace::finite(&["p", "q"]).unwrap();
        let l = Point::label;
        let err = VectorMetric::tabulated(
            x.clone(),
            RieszSpace::Reals,
            &[(l("p"), l("q"), r(1)), (l("q"), l("p"), r(2))],
        )
        .unwrap_err();
        assert_eq!(err, Error::AsymmetricEntry("q".into(), "p".into()));
        let err = VectorMetric::tabulated(x, RieszSpace::Reals, &[]).unwrap_err();
        assert!(matches!(err, Error::MissingEntry(..)));
    }

    #[test]
    fn sampled_axioms_on_the_line() {
        let d = VectorMetric::weighted_abs(s(2)).unwrap();
        let sample = [Point::int(0), Point::int(1), Point::int(-3), Point::real(Scalar::ratio(7, 2))];
        assert_eq!(d.check_axioms(&sample).unwrap().verdict, Verdict::Pass);
    }

    #[test]
    fn convergence_on_the_line() {
        let d = VectorMetric::weighted_abs(s(2)).unwrap();
        let w = d.e_converges(&harmonic(1, 0), &Point::int(0)).unwrap().unwrap();
        assert_eq!(w.sequence(), &SymbolicSequence::single(r(2), Shape::Harmonic));
        let refused = d.e_converges(&harmonic(1, 1), &Point::int(0)).unwrap();
        assert!(matches!(refused, Err(Refusal::LimitMismatch { .. })));
    }

    #[test]
    fn eventually_constant_convergence() {
        let d = three_point(1, 2, 2);
        let p = Point::label;
        let ec = PointSequence::EventuallyConstant {
            prefix: vec![p("q"), p("r")],
            tail: p("p"),
        };
        let w = d.e_converges(&ec, &p("p")).unwrap().unwrap();
        assert_eq!(w.eval_at(1).unwrap(), r(2));
        assert_eq!(w.eval_at(3).unwrap(), r(0));
        assert!(d.e_converges(&PointSequence::constant(p("p")), &p("p")).unwrap().unwrap().is_zero());
        assert!(matches!(
            d.e_converges(&ec, &p("q")).unwrap(),
            Err(Refusal::TailMismatch { .. })
        ));
        let c = d.e_cauchy(&ec).unwrap().unwrap();
        assert_eq!(c.eval_at(2).unwrap(), r(2));
        assert!(c.eval_at(3).unwrap().is_zero());
    }

    #[test]
    fn cauchy_on_the_line() {
        let d = VectorMetric::weighted_abs(s(1)).unwrap();
        let g = PointSequence::Symbolic(SymbolicSequence::single(r(1), Shape::Geometric(Scalar::ratio(1, 2))));
        let w = d.e_cauchy(&g).unwrap().unwrap();
        assert_eq!(w.sequence(), &SymbolicSequence::single(r(2), Shape::Geometric(Scalar::ratio(1, 2))));
    }

    #[test]
    fn diameters() {
        let c2 = RieszSpace::Coordinate(2);
        let d = VectorMetric::absolute_value(c2.clone());
        let a: Vec<Point> = ["(0,0)", "(1,3)", "(2,1)"].iter().map(|p| p.parse().unwrap()).collect();
        assert_eq!(d.e_diameter(&a).unwrap(), c2.ints(&[2, 3]));
        assert!(d.e_diameter(&a[..1]).unwrap().is_zero());
        assert!(d.is_e_bounded(&a, &c2.ints(&[2, 3])).unwrap());
        assert!(!d.is_e_bounded(&a, &c2.ints(&[1, 3])).unwrap());
        let lex = VectorMetric::absolute_value(RieszSpace::LexPlane);
        assert!(matches!(lex.e_diameter(&a), Err(Error::Unsupported(_))));
        assert!(matches!(d.e_diameter(&[]), Err(Error::Empty(_))));
    }

    #[test]
    fn constructions() {
        let dbl = VectorMetric::double(
            VectorMetric::weighted_abs(s(2)).unwrap(),
            VectorMetric::pair_abs(s(1), s(3)).unwrap(),
        )
        .unwrap();
        assert_eq!(dbl.distance(&Point::int(0), &Point::int(1)).unwrap().coords(), &[s(2), s(1), s(3)]);
        let pb = VectorMetric::pullback(
            MapDescriptor::affine(PointSpace::Line, PointSpace::Line, vec![s(2)], vec![s(0)]).unwrap(),
            VectorMetric::weighted_abs(s(1)).unwrap(),
        )
        .unwrap();
        assert_eq!(pb.distance(&Point::int(0), &Point::int(3)).unwrap(), r(6));
        let table = FunctionTable {
            points: vec![Point::label("x1"), Point::label("x2"), Point::label("x3")],
            rows: vec![
                ("f".into(), vec![Point::int(1), Point::int(2), Point::int(3)]),
                ("g".into(), vec![Point::int(0), Point::int(4), Point::int(3)]),
            ],
        };
        let u = VectorMetric::uniform(VectorMetric::absolute_value(RieszSpace::Reals), table.clone()).unwrap();
        assert_eq!(u.distance(&Point::label("f"), &Point::label("g")).unwrap(), r(2));
        assert!(u.distance(&Point::label("f"), &Point::label("f")).unwrap().is_zero());
        let mut dup = table;
        dup.rows.push(("h".into(), vec![Point::int(1), Point::int(2), Point::int(3)]));
        assert!(VectorMetric::uniform(VectorMetric::absolute_value(RieszSpace::Reals), dup).is_err());
        assert!(VectorMetric::double(VectorMetric::weighted_abs(s(1)).unwrap(), VectorMetric::weighted_sum(s(1), s(1)).unwrap()).is_err());
    }

    #[test]
    fn closedness_on_finite_tables() {
        let d = three_point(1, 1, 1);
        let sub = Subset::of_points(vec![Point::label("p"), Point::label("r")]);
        assert_eq!(d.is_e_closed(&sub, &[], 100).unwrap().verdict, Verdict::Pass);
        assert_eq!(d.is_e_closed(&Subset::default(), &[], 100).unwrap().verdict, Verdict::Pass);
    }

    #[test]
    fn closedness_on_suites() {
        let d = VectorMetric::absolute_value(RieszSpace::Reals);
        let seq = harmonic(1, 0);
        let with_zero = Subset {
            points: vec![Point::int(0)],
            ranges: vec![seq.clone()],
        };
        let rep = d.is_e_closed(&with_zero, &[(seq.clone(), Point::int(0))], 100).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        let without = Subset {
            points: vec![],
            ranges: vec![seq.clone()],
        };
        let rep = d.is_e_closed(&without, &[(seq, Point::int(0))], 100).unwrap();
        assert_eq!(rep.verdict, Verdict::Fail);
    }

    #[test]
    fn exact_distance_sequences() {
        let d = VectorMetric::weighted_abs(s(3)).unwrap();
        let seq = harmonic(-1, 2);
        let ds = d.distance_sequence(&seq, &Point::int(2)).unwrap().unwrap();
        assert_eq!(ds, SymbolicSequence::single(r(3), Shape::Harmonic));
        let lex = VectorMetric::absolute_value(RieszSpace::LexPlane);
        let ls = PointSequence::Symbolic(SymbolicSequence::single(RieszSpace::LexPlane.ints(&[1, 0]), Shape::Harmonic));
        assert!(lex.distance_sequence(&ls, &"(0,0)".parse().unwrap()).unwrap().is_none());
        assert!(matches!(
            lex.e_converges(&ls, &"(0,0)".parse().unwrap()).unwrap(),
            Err(Refusal::NonArchimedean { .. })
        ));
    }
}
