//! Monotone operators between Riesz spaces, their classification, and
//! equivalence certificates for pairs of vector metrics.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::literal::Cursor;
use crate::point::Point;
use crate::report::{CheckReport, Claim};
use crate::riesz::{RieszSpace, VectorElement};
use crate::scalar::Scalar;
use crate::sequence::{DecreasingWitness, Refusal};
use crate::vmetric::VectorMetric;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum OperatorForm {
    /// Rows indexed by target coordinates.
    Matrix(Matrix),
    Scale(Scalar),
    /// `x ↦ maxᵢ wᵢxᵢ` into the reals.
    MaxCombo(Vec<Scalar>),
    /// `x ↦ Σᵢ wᵢxᵢ` into the reals.
    SumCombo(Vec<Scalar>),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonotoneOperator {
    source: RieszSpace,
    target: RieszSpace,
    form: OperatorForm,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum LatticeVerdict {
    VerifiedOnSamples { pairs: usize },
    Refuted { x: String, y: String, image_of_join: String, join_of_images: String },
    NotApplicable,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct OperatorClassification {
    pub positive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub positivity_counterexample: Option<String>,
    pub sigma_order_continuous: bool,
    pub order_bounded: bool,
    pub lattice_homomorphism: LatticeVerdict,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EquivalenceCertificate {
    /// `ρ ≤ T(d)` and `d ≤ S(ρ)`.
    Operators { t: MonotoneOperator, s: MonotoneOperator },
    /// `α d ≤ ρ ≤ β d`.
    ScalarPair { alpha: Scalar, beta: Scalar },
}

fn check_weights(source: &RieszSpace, weights: &[Scalar]) -> Result<()> {
    if !source.is_coordinatewise() {
        return Err(Error::Unsupported(format!("combination operators need a coordinatewise source, got {source}")));
    }
    if weights.len() != source.dim() {
        return Err(Error::DimensionMismatch {
            expected: source.dim(),
            got: weights.len(),
        });
    }
    if let Some(w) = weights.iter().find(|w| w.is_negative()) {
        return Err(Error::InvalidParameter(format!("combination weight {w} is negative")));
    }
    Ok(())
}

impl MonotoneOperator {
    pub fn matrix(source: RieszSpace, target: RieszSpace, rows: Matrix) -> Result<MonotoneOperator> {
        if rows.len() != target.dim() {
            return Err(Error::DimensionMismatch {
                expected: target.dim(),
                got: rows.len(),
            });
        }
        if let Some(r) = rows.iter().find(|r| r.len() != source.dim()) {
            return Err(Error::DimensionMismatch {
                expected: source.dim(),
                got: r.len(),
            });
        }
        Ok(MonotoneOperator {
            source,
            target,
            form: OperatorForm::Matrix(rows),
        })
    }

    pub fn scale(space: RieszSpace, alpha: Scalar) -> MonotoneOperator {
        MonotoneOperator {
            source: space.clone(),
            target: space,
            form: OperatorForm::Scale(alpha),
        }
    }

    pub fn max_combo(source: RieszSpace, weights: Vec<Scalar>) -> Result<MonotoneOperator> {
        check_weights(&source, &weights)?;
        Ok(MonotoneOperator {
            source,
            target: RieszSpace::Reals,
            form: OperatorForm::MaxCombo(weights),
        })
    }

    pub fn sum_combo(source: RieszSpace, weights: Vec<Scalar>) -> Result<MonotoneOperator> {
        check_weights(&source, &weights)?;
        Ok(MonotoneOperator {
            source,
            target: RieszSpace::Reals,
            form: OperatorForm::SumCombo(weights),
        })
    }

    pub fn source(&self) -> &RieszSpace {
        &self.source
    }

    pub fn target(&self) -> &RieszSpace {
        &self.target
    }

    pub fn form(&self) -> &OperatorForm {
        &self.form
    }

    pub fn is_linear(&self) -> bool {
        !matches!(self.form, OperatorForm::MaxCombo(_))
    }

    pub fn apply(&self, a: &VectorElement) -> Result<VectorElement> {
        if a.space() != &self.source {
            return Err(Error::SpaceMismatch {
                left: self.source.to_string(),
                right: a.space().to_string(),
            });
        }
        match &self.form {
            OperatorForm::Matrix(m) => self.target.element(linalg::mat_vec(m, a.coords())),
            OperatorForm::Scale(alpha) => Ok(a.scale(alpha)),
            OperatorForm::MaxCombo(w) => {
                let v = w
                    .iter()
                    .zip(a.coords())
                    .map(|(w, x)| w * x)
                    .reduce(|p, q| p.max(q))
                    .unwrap_or_else(Scalar::zero);
                Ok(VectorElement::real(v))
            }
            OperatorForm::SumCombo(w) => Ok(VectorElement::real(w.iter().zip(a.coords()).map(|(w, x)| w * x).sum())),
        }
    }

    /// The first violation of positivity, if any.
    fn positivity_violation(&self) -> Result<Option<String>> {
        Ok(match &self.form {
            OperatorForm::Scale(alpha) => alpha.is_negative().then(|| format!("scale factor {alpha} < 0")),
            OperatorForm::MaxCombo(_) | OperatorForm::SumCombo(_) => None,
            OperatorForm::Matrix(m) => {
                if !self.source.is_coordinatewise() || !self.target.is_coordinatewise() {
                    return Err(Error::Unsupported(format!(
                        "matrix classification between {} and {}",
                        self.source, self.target
                    )));
                }
                m.iter().enumerate().find_map(|(i, row)| {
                    row.iter()
                        .position(|x| x.is_negative())
                        .map(|j| format!("entry ({},{}) = {} < 0", i + 1, j + 1, row[j]))
                })
            }
        })
    }

    pub fn classify(&self) -> Result<OperatorClassification> {
        self.classify_with(32, 0)
    }

    /// Classification with `random_pairs` extra lattice-homomorphism samples
    /// drawn from `seed`.
    pub fn classify_with(&self, random_pairs: usize, seed: u64) -> Result<OperatorClassification> {
        let violation = self.positivity_violation()?;
        let positive = violation.is_none();
        let lattice_homomorphism = if self.is_linear() {
            self.search_lattice_violation(random_pairs, seed)?
        } else {
            LatticeVerdict::NotApplicable
        };
        Ok(OperatorClassification {
            positive,
            positivity_counterexample: violation,
            sigma_order_continuous: positive,
            order_bounded: true,
            lattice_homomorphism,
        })
    }

    fn search_lattice_violation(&self, random_pairs: usize, seed: u64) -> Result<LatticeVerdict> {
        let n = self.source.dim();
        let basis: Vec<VectorElement> = (0..n)
            .map(|i| {
                let mut c = vec![0i64; n];
                c[i] = 1;
                self.source.ints(&c)
            })
            .collect();
        let mut candidates: Vec<(VectorElement, VectorElement)> = Vec::new();
        for (i, x) in basis.iter().enumerate() {
            for y in &basis[i + 1..] {
                candidates.push((x.clone(), y.clone()));
            }
            candidates.push((x.clone(), self.source.zero()));
            candidates.push((x.neg(), self.source.zero()));
        }
        let range: Vec<i64> = match n {
            0..=2 => (-2..=2).collect(),
            3..=4 => (-1..=1).collect(),
            _ => Vec::new(),
        };
        let mut grid: Vec<Vec<i64>> = vec![Vec::new()];
        if !range.is_empty() {
            for _ in 0..n {
                grid = grid
                    .into_iter()
                    .flat_map(|p| {
                        range.iter().map(move |&v| {
                            let mut q = p.clone();
                            q.push(v);
                            q
                        })
                    })
                    .collect();
            }
            let points: Vec<VectorElement> = grid.iter().map(|c| self.source.ints(c)).collect();
            for x in &points {
                for y in &points {
                    candidates.push((x.clone(), y.clone()));
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..random_pairs {
            let mut draw = || self.source.ints(&(0..n).map(|_| rng.gen_range(-9..=9)).collect::<Vec<_>>());
            let x = draw();
            let y = draw();
            candidates.push((x, y));
        }
        for (x, y) in &candidates {
            let lhs = self.apply(&x.join(y)?)?;
            let rhs = self.apply(x)?.join(&self.apply(y)?)?;
            if lhs != rhs {
                return Ok(LatticeVerdict::Refuted {
                    x: x.literal(),
                    y: y.literal(),
                    image_of_join: lhs.literal(),
                    join_of_images: rhs.literal(),
                });
            }
        }
        Ok(LatticeVerdict::VerifiedOnSamples { pairs: candidates.len() })
    }

    /// Whether `T(a) = 0` forces `a = 0`.
    pub fn kernel_trivial(&self) -> Result<bool> {
        match &self.form {
            OperatorForm::Matrix(m) => Ok(linalg::rank(m) == self.source.dim()),
            OperatorForm::Scale(alpha) => Ok(!alpha.is_zero()),
            OperatorForm::SumCombo(w) => Ok(self.source.dim() <= 1 && w.iter().all(|w| !w.is_zero())),
            OperatorForm::MaxCombo(_) => Err(Error::Unsupported("kernel of a nonlinear operator".into())),
        }
    }

    /// Whether `v` lies in the range of a linear operator.
    pub fn range_contains(&self, v: &VectorElement) -> Result<bool> {
        match &self.form {
            OperatorForm::Matrix(m) => Ok(linalg::in_column_space(m, v.coords())),
            OperatorForm::Scale(alpha) => Ok(!alpha.is_zero() || v.is_zero()),
            OperatorForm::SumCombo(w) => Ok(w.iter().any(|w| !w.is_zero()) || v.is_zero()),
            OperatorForm::MaxCombo(_) => Err(Error::Unsupported("range of a nonlinear operator".into())),
        }
    }

    /// A linear operator dominating this one on the positive cone.
    fn linear_majorant(&self) -> MonotoneOperator {
        match &self.form {
            OperatorForm::MaxCombo(w) => MonotoneOperator {
                form: OperatorForm::SumCombo(w.clone()),
                ..self.clone()
            },
            _ => self.clone(),
        }
    }

    /// A witness for `|T(aₙ)|`, given a witness `aₙ` in the source.
    pub fn image_witness(&self, a: &DecreasingWitness) -> Result<std::result::Result<DecreasingWitness, Refusal>> {
        if a.space() != &self.source {
            return Err(Error::SpaceMismatch {
                left: self.source.to_string(),
                right: a.space().to_string(),
            });
        }
        let lin = self.linear_majorant();
        a.map_positive(&self.target, |c| lin.apply(c))
    }

    /// `T + U` for compatible forms.
    pub fn sum(&self, other: &MonotoneOperator) -> Result<MonotoneOperator> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Incompatible(format!("cannot add operators {self} and {other}")));
        }
        let as_matrix = |op: &MonotoneOperator| -> Option<Matrix> {
            match &op.form {
                OperatorForm::Matrix(m) => Some(m.clone()),
                OperatorForm::Scale(a) if op.source.is_coordinatewise() => {
                    Some(linalg::diagonal(&vec![a.clone(); op.source.dim()]))
                }
                _ => None,
            }
        };
        let form = match (&self.form, &other.form) {
            (OperatorForm::Scale(a), OperatorForm::Scale(b)) => OperatorForm::Scale(a + b),
            (OperatorForm::SumCombo(a), OperatorForm::SumCombo(b)) => {
                OperatorForm::SumCombo(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            _ => match (as_matrix(self), as_matrix(other)) {
                (Some(a), Some(b)) => OperatorForm::Matrix(
                    a.iter()
                        .zip(&b)
                        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
                        .collect(),
                ),
                _ => return Err(Error::Unsupported(format!("sum of {self} and {other}"))),
            },
        };
        Ok(MonotoneOperator { form, ..self.clone() })
    }

    /// Parses an operator literal between the given spaces.
    pub fn parse(source: &RieszSpace, target: &RieszSpace, s: &str) -> Result<MonotoneOperator> {
        let mut c = Cursor::new(s);
        let op = if c.eat_str("matrix") {
            c.expect('[')?;
            let mut rows = Vec::new();
            loop {
                c.expect('[')?;
                rows.push(c.scalar_list(']')?);
                c.expect(']')?;
                if !c.eat(',') {
                    break;
                }
            }
            c.expect(']')?;
            MonotoneOperator::matrix(source.clone(), target.clone(), rows)?
        } else if c.eat_str("scale:") {
            let alpha = c.scalar()?;
            if source != target {
                return Err(Error::Incompatible(format!("scale operator from {source} to {target}")));
            }
            MonotoneOperator::scale(source.clone(), alpha)
        } else if c.eat_str("maxcombo[") {
            let w = c.scalar_list(']')?;
            c.expect(']')?;
            MonotoneOperator::max_combo(source.clone(), w)?
        } else if c.eat_str("sumcombo[") {
            let w = c.scalar_list(']')?;
            c.expect(']')?;
            MonotoneOperator::sum_combo(source.clone(), w)?
        } else {
            return Err(c.error("expected matrix[[..]], scale:, maxcombo[..] or sumcombo[..]"));
        };
        c.finish()?;
        if op.target != *target {
            return Err(Error::SpaceMismatch {
                left: target.to_string(),
                right: op.target.to_string(),
            });
        }
        Ok(op)
    }
}

fn join_scalars(v: &[Scalar]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for MonotoneOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.form {
            OperatorForm::Matrix(m) => {
                let rows: Vec<String> = m.iter().map(|r| format!("[{}]", join_scalars(r))).collect();
                write!(f, "matrix[{}]", rows.join(","))
            }
            OperatorForm::Scale(a) => write!(f, "scale:{a}"),
            OperatorForm::MaxCombo(w) => write!(f, "maxcombo[{}]", join_scalars(w)),
            OperatorForm::SumCombo(w) => write!(f, "sumcombo[{}]", join_scalars(w)),
        }
    }
}

/// `T = β·I` and `S = α⁻¹·I` from a scalar sandwich `α d ≤ ρ ≤ β d`.
pub fn scalar_to_operator(alpha: &Scalar, beta: &Scalar, space: &RieszSpace) -> Result<EquivalenceCertificate> {
    if !alpha.is_positive() || !beta.is_positive() {
        return Err(Error::InvalidParameter(format!(
            "scalar bounds must be strictly positive, got α = {alpha}, β = {beta}"
        )));
    }
    Ok(EquivalenceCertificate::Operators {
        t: MonotoneOperator::scale(space.clone(), beta.clone()),
        s: MonotoneOperator::scale(space.clone(), alpha.recip()?),
    })
}

/// All unordered pairs of distinct points.
pub fn all_pairs(points: &[Point]) -> Vec<(Point, Point)> {
    let mut out = Vec::new();
    for (i, x) in points.iter().enumerate() {
        for y in &points[i + 1..] {
            out.push((x.clone(), y.clone()));
        }
    }
    out
}

fn require_valid(report: &mut CheckReport, name: &str, op: &MonotoneOperator) -> Result<bool> {
    let c = op.classify()?;
    if !c.positive || !c.sigma_order_continuous {
        report.fail(format!(
            "{name} = {op} rejected at classification: {}",
            c.positivity_counterexample.unwrap_or_else(|| "not σ-order continuous".into())
        ));
        return Ok(false);
    }
    report.note(format!("{name} = {op}: positive, σ-order continuous"));
    Ok(true)
}

/// Checks both inequalities of the operator sandwich on every sample pair.
pub fn check_equivalence_certificate(
    d: &VectorMetric,
    rho: &VectorMetric,
    cert: &EquivalenceCertificate,
    pairs: &[(Point, Point)],
) -> Result<CheckReport> {
    if !d.domain().same_points(rho.domain()) {
        return Err(Error::Incompatible(format!(
            "metrics live on different sets: {} and {}",
            d.domain(),
            rho.domain()
        )));
    }
    let mut report = CheckReport::new("equivalence");
    let (t, s) = match cert {
        EquivalenceCertificate::Operators { t, s } => {
            for (op, src, dst) in [(t, d.codomain(), rho.codomain()), (s, rho.codomain(), d.codomain())] {
                if op.source() != src || op.target() != dst {
                    return Err(Error::Incompatible(format!(
                        "operator {op} maps {} to {}, expected {src} to {dst}",
                        op.source(),
                        op.target()
                    )));
                }
            }
            (t.clone(), s.clone())
        }
        EquivalenceCertificate::ScalarPair { alpha, beta } => {
            if d.codomain() != rho.codomain() {
                return Err(Error::Incompatible("a scalar sandwich needs one codomain".into()));
            }
            if !alpha.is_positive() || !beta.is_positive() {
                report.fail(format!("scalar bounds α = {alpha}, β = {beta} are not both positive"));
                return Ok(report.conclude("certificate rejected"));
            }
            report.note(format!("scalar sandwich {alpha}·d ≤ ρ ≤ {beta}·d"));
            (
                MonotoneOperator::scale(d.codomain().clone(), beta.clone()),
                MonotoneOperator::scale(d.codomain().clone(), alpha.recip()?),
            )
        }
    };
    if matches!(cert, EquivalenceCertificate::Operators { .. })
        && !(require_valid(&mut report, "T", &t)? & require_valid(&mut report, "S", &s)?)
    {
        return Ok(report.conclude("certificate rejected"));
    }
    for (x, y) in pairs {
        let dxy = d.distance(x, y)?;
        let rxy = rho.distance(x, y)?;
        let tdxy = t.apply(&dxy)?;
        if !rxy.leq(&tdxy)? {
            report.fail(format!("({x}, {y}): ρ = {} exceeds T(d) = {}", rxy.literal(), tdxy.literal()));
            break;
        }
        let srxy = s.apply(&rxy)?;
        if !dxy.leq(&srxy)? {
            report.fail(format!("({x}, {y}): d = {} exceeds S(ρ) = {}", dxy.literal(), srxy.literal()));
            break;
        }
    }
    let summary = format!("certificate verified on {} sample pairs", pairs.len());
    Ok(report.settle(&summary, "certificate violated", &summary))
}

/// Re-checks that `T(aₙ)` is dominated by the transported witness.
pub fn sigma_continuity_probe(op: &MonotoneOperator, a: &DecreasingWitness, report: &mut CheckReport) -> Result<bool> {
    match op.image_witness(a)? {
        Ok(w) => {
            report.witness(
                &format!("T({a})"),
                w,
                Claim::OperatorImage {
                    operator: op.clone(),
                    source: a.clone(),
                },
            );
            Ok(true)
        }
        Err(r) => {
            report.fail(format!("image of {a} under {op} is not a witness: {r}"));
            Ok(false)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::{Shape, SymbolicSequence};

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| s(x)).collect()).collect()
    }

    fn c2() -> RieszSpace {
        RieszSpace::Coordinate(2)
    }

    #[test]
    fn application() {
        let t = MonotoneOperator::matrix(
            RieszSpace::Reals,
            c2(),
            vec![vec![Scalar::ratio(1, 2)], vec![Scalar::ratio(3, 2)]],
        )
        .unwrap();
        assert_eq!(t.apply(&VectorElement::real(s(4))).unwrap(), c2().ints(&[2, 6]));
        let id = MonotoneOperator::scale(c2(), s(1));
        assert_eq!(id.apply(&c2().ints(&[3, -1])).unwrap(), c2().ints(&[3, -1]));
        let mx = MonotoneOperator::max_combo(c2(), vec![Scalar::ratio(1, 2), s(2)]).unwrap();
        assert_eq!(mx.apply(&c2().ints(&[4, 1])).unwrap(), VectorElement::real(s(2)));
        assert!(t.apply(&c2().zero()).is_err());
        assert!(MonotoneOperator::max_combo(c2(), vec![s(-1), s(1)]).is_err());
    }

    #[test]
    fn classification() {
        let neg = MonotoneOperator::matrix(c2(), c2(), m(&[&[1, 0], &[-1, 2]])).unwrap();
        let c = neg.classify().unwrap();
        assert!(!c.positive && !c.sigma_order_continuous && c.order_bounded);
        assert!(c.positivity_counterexample.unwrap().contains("(2,1)"));

        let col = MonotoneOperator::matrix(RieszSpace::Reals, c2(), m(&[&[1], &[3]])).unwrap();
        assert!(matches!(
            col.classify().unwrap().lattice_homomorphism,
            LatticeVerdict::VerifiedOnSamples { .. }
        ));

        let shear = MonotoneOperator::matrix(c2(), c2(), m(&[&[1, 1], &[0, 1]])).unwrap();
        let LatticeVerdict::Refuted { x, y, .. } = shear.classify().unwrap().lattice_homomorphism else {
            panic!()
        };
        assert_eq!((x.as_str(), y.as_str()), ("(1,0)", "(0,1)"));

        let mx = MonotoneOperator::max_combo(c2(), vec![s(1), s(1)]).unwrap();
        let c = mx.classify().unwrap();
        assert!(c.positive && c.sigma_order_continuous);
        assert_eq!(c.lattice_homomorphism, LatticeVerdict::NotApplicable);

        let lex = MonotoneOperator::matrix(RieszSpace::LexPlane, RieszSpace::LexPlane, m(&[&[1, 0], &[0, 1]])).unwrap();
        assert!(lex.classify().is_err());
        assert!(MonotoneOperator::scale(RieszSpace::LexPlane, s(2)).classify().unwrap().positive);
    }

    #[test]
    fn lemma_construction() {
        let EquivalenceCertificate::Operators { t, s: sop } =
            scalar_to_operator(&Scalar::ratio(1, 2), &s(3), &RieszSpace::Reals).unwrap()
        else {
            panic!()
        };
        assert_eq!(t.form(), &OperatorForm::Scale(s(3)));
        assert_eq!(sop.form(), &OperatorForm::Scale(s(2)));
        assert!(scalar_to_operator(&s(0), &s(1), &RieszSpace::Reals).is_err());
        let EquivalenceCertificate::Operators { t, s: sop } = scalar_to_operator(&s(1), &s(1), &c2()).unwrap() else {
            panic!()
        };
        assert_eq!(t, sop);
    }

    fn line_pairs() -> Vec<(Point, Point)> {
        let pts: Vec<Point> = (-3..=3).map(|i| Point::real(Scalar::ratio(i, 2))).collect();
        all_pairs(&pts)
    }

    #[test]
    fn example_a_certificate() {
        let d = VectorMetric::weighted_abs(s(2)).unwrap();
        let rho = VectorMetric::pair_abs(s(1), s(3)).unwrap();
        let t = MonotoneOperator::matrix(
            RieszSpace::Reals,
            c2(),
            vec![vec![Scalar::ratio(1, 2)], vec![Scalar::ratio(3, 2)]],
        )
        .unwrap();
        let sop = MonotoneOperator::matrix(c2(), RieszSpace::Reals, m(&[&[2, 0]])).unwrap();
        let cert = EquivalenceCertificate::Operators { t: t.clone(), s: sop };
        let r = check_equivalence_certificate(&d, &rho, &cert, &line_pairs()).unwrap();
        assert_eq!(r.verdict, crate::report::Verdict::Pass, "{}", r.summary);

        let bad = MonotoneOperator::matrix(c2(), RieszSpace::Reals, m(&[&[2, -1]])).unwrap();
        let cert = EquivalenceCertificate::Operators { t, s: bad };
        let r = check_equivalence_certificate(&d, &rho, &cert, &line_pairs()).unwrap();
        assert_eq!(r.verdict, crate::report::Verdict::Fail);
        assert!(r.summary.contains("classification"));
    }

    #[test]
    fn example_b_certificates() {
        let plane_pairs = all_pairs(&[
            "(0,0)".parse().unwrap(),
            "(1,-2)".parse().unwrap(),
            "(3/2,4)".parse().unwrap(),
            "(-1,1/3)".parse().unwrap(),
        ]);
        let d = VectorMetric::weighted_sum(s(1), s(1)).unwrap();
        let eta = VectorMetric::weighted_max(s(1), s(1)).unwrap();
        let rho = VectorMetric::coord_pair(s(1), s(1)).unwrap();
        let t = MonotoneOperator::matrix(RieszSpace::Reals, c2(), m(&[&[1], &[1]])).unwrap();
        let sum = MonotoneOperator::sum_combo(c2(), vec![s(1), s(1)]).unwrap();
        let max = MonotoneOperator::max_combo(c2(), vec![s(1), s(1)]).unwrap();
        for (metric, sop) in [(d, sum), (eta, max)] {
            let cert = EquivalenceCertificate::Operators { t: t.clone(), s: sop };
            let r = check_equivalence_certificate(&metric, &rho, &cert, &plane_pairs).unwrap();
            assert_eq!(r.verdict, crate::report::Verdict::Pass, "{}", r.summary);
        }
    }

    #[test]
    fn sums_and_kernels() {
        let a = MonotoneOperator::scale(c2(), s(1));
        let b = MonotoneOperator::matrix(c2(), c2(), m(&[&[0, 1], &[0, 0]])).unwrap();
        assert_eq!(a.sum(&b).unwrap().form(), &OperatorForm::Matrix(m(&[&[1, 1], &[0, 1]])));
        assert_eq!(
            MonotoneOperator::scale(RieszSpace::Reals, s(1))
                .sum(&MonotoneOperator::scale(RieszSpace::Reals, s(2)))
                .unwrap()
                .form(),
            &OperatorForm::Scale(s(3))
        );
        assert!(!b.kernel_trivial().unwrap());
        assert!(a.kernel_trivial().unwrap());
        assert!(!MonotoneOperator::scale(RieszSpace::Reals, s(0)).kernel_trivial().unwrap());
    }

    #[test]
    fn images_of_witnesses() {
        let w = DecreasingWitness::new(SymbolicSequence::single(c2().ints(&[1, 2]), Shape::Harmonic)).unwrap();
        let mx = MonotoneOperator::max_combo(c2(), vec![s(1), s(1)]).unwrap();
        let img = mx.image_witness(&w).unwrap().unwrap();
        assert_eq!(img.eval_at(1).unwrap(), VectorElement::real(s(3)));
        let mut r = CheckReport::new("probe");
        assert!(sigma_continuity_probe(&mx, &w, &mut r).unwrap());
        assert_eq!(r.recheck_witnesses(50).unwrap(), 1);
    }

    #[test]
    fn literals() {
        let t = MonotoneOperator::parse(&RieszSpace::Reals, &c2(), "matrix[[1/2],[3/2]]").unwrap();
        assert_eq!(MonotoneOperator::parse(&RieszSpace::Reals, &c2(), &t.to_string()).unwrap(), t);
        for lit in ["scale:2/3", "maxcombo[1,2]", "sumcombo[0,1/2]"] {
            let tgt = if lit.starts_with("scale") { c2() } else { RieszSpace::Reals };
            let op = MonotoneOperator::parse(&c2(), &tgt, lit).unwrap();
            assert_eq!(op.to_string(), lit);
        }
        assert!(MonotoneOperator::parse(&c2(), &c2(), "matrix[[1,2,3]]").is_err());
    }
}
