//! Closed-form E-valued sequences and order-convergence witnesses.
//!
//! A [`SymbolicSequence`] is `offset + Σ coefficientᵢ · shapeᵢ(n)` where each
//! shape is one of `1`, `1/n`, `qⁿ` (`0 ≤ q < 1`) or the indicator of
//! `n < N`. Every non-constant shape is nonnegative, nonincreasing and tends
//! to zero, so a sequence with zero offset and positive coefficients is a
//! certified `aₙ ↓ 0` in any Archimedean space. Within this family
//! convergence questions are decided exactly; nothing is sampled.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::literal::Cursor;
use crate::riesz::{RieszSpace, VectorElement};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    One,
    Harmonic,
    Geometric(Scalar),
    FiniteSupport(u64),
}

impl Shape {
    pub fn geometric(q: Scalar) -> Result<Shape> {
        if q.is_negative() || q >= Scalar::one() {
            return Err(Error::InvalidParameter(format!(
                "geometric base must satisfy 0 <= q < 1, got {q}"
            )));
        }
        Ok(Shape::Geometric(q))
    }

    pub fn finite_support(n: u64) -> Result<Shape> {
        if n == 0 {
            return Err(Error::InvalidParameter("finite support bound must be positive".into()));
        }
        Ok(Shape::FiniteSupport(n))
    }

    pub fn value(&self, n: u64) -> Scalar {
        match self {
            Shape::One => Scalar::one(),
            Shape::Harmonic => Scalar::ratio(1, n as i64),
            Shape::Geometric(q) => q.pow(n),
            Shape::FiniteSupport(bound) => {
                if n < *bound {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            }
        }
    }

    /// Largest value over `n ≥ 1`.
    pub fn first_value(&self) -> Scalar {
        self.value(1)
    }

    /// Identically zero on `n ≥ 1`.
    pub fn is_null(&self) -> bool {
        match self {
            Shape::Geometric(q) => q.is_zero(),
            Shape::FiniteSupport(n) => *n <= 1,
            _ => false,
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, Shape::One)
    }

    pub fn is_eventually_zero(&self) -> bool {
        matches!(self, Shape::FiniteSupport(_))
    }

    pub(crate) fn parse_from(c: &mut Cursor<'_>) -> Result<Shape> {
        if c.eat_str("1/n") {
            return Ok(Shape::Harmonic);
        }
        if c.eat_str("q^n") {
            c.expect(':')?;
            return Shape::geometric(c.scalar()?);
        }
        if c.eat_str("lt") {
            c.expect(':')?;
            return Shape::finite_support(c.uint()?);
        }
        if c.eat_str("1") {
            return Ok(Shape::One);
        }
        Err(c.error("unknown shape (expected `1`, `1/n`, `q^n:p/q` or `lt:N`)"))
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::One => write!(f, "1"),
            Shape::Harmonic => write!(f, "1/n"),
            Shape::Geometric(q) => write!(f, "q^n:{q}"),
            Shape::FiniteSupport(n) => write!(f, "lt:{n}"),
        }
    }
}

impl fmt::Debug for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Shape {
    type Err = Error;
    fn from_str(s: &str) -> Result<Shape> {
        let mut c = Cursor::new(s);
        let shape = Shape::parse_from(&mut c)?;
        c.finish()?;
        Ok(shape)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub coefficient: VectorElement,
    pub shape: Shape,
}

/// Why a witness could not be produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refusal {
    /// The sequence converges, but to `offset` rather than the requested
    /// limit. In the symbolic family this settles non-convergence.
    LimitMismatch {
        offset: VectorElement,
        limit: VectorElement,
    },
    /// A coefficient is not positive, so the representation is not in
    /// witness form.
    NegativeCoefficient { shape: Shape, coefficient: VectorElement },
    /// `n⁻¹a` (or `qⁿa`) does not decrease to zero in a non-Archimedean
    /// space, so no witness built on that shape is accepted there.
    NonArchimedean { space: RieszSpace, shape: Shape },
    /// The quantity leaves the closed symbolic family.
    OutsideFamily(String),
    /// A finite-space sequence settles on a point at nonzero distance.
    TailMismatch { tail: String, limit: String },
}

impl Refusal {
    /// Definite refusals settle the question negatively; the others only mean
    /// that no certificate is available.
    pub fn is_definite(&self) -> bool {
        matches!(
            self,
            Refusal::LimitMismatch { .. } | Refusal::TailMismatch { .. } | Refusal::NegativeCoefficient { .. }
        )
    }
}

impl fmt::Display for Refusal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refusal::LimitMismatch { offset, limit } => {
                write!(f, "limit mismatch: sequence tends to {offset}, not {limit}")
            }
            Refusal::NegativeCoefficient { shape, coefficient } => {
                write!(f, "coefficient {coefficient} on shape {shape} is not positive")
            }
            Refusal::NonArchimedean { space, shape } => {
                write!(f, "shape {shape} does not decrease to 0 in non-Archimedean space {space}")
            }
            Refusal::OutsideFamily(why) => write!(f, "outside the symbolic family: {why}"),
            Refusal::TailMismatch { tail, limit } => {
                write!(f, "sequence is eventually {tail}, which is at nonzero distance from {limit}")
            }
        }
    }
}

/// Sign of a real sequence that holds for every `n ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    NonNegative,
    NonPositive,
    Unknown,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymbolicSequence {
    offset: VectorElement,
    terms: Vec<Term>,
}

impl SymbolicSequence {
    /// Builds and normalizes: `1`-shaped terms fold into the offset, equal
    /// shapes merge, null shapes and zero coefficients drop.
    pub fn new(offset: VectorElement, terms: Vec<(VectorElement, Shape)>) -> Result<Self> {
        let space = offset.space().clone();
        let mut offset = offset;
        let mut merged: BTreeMap<Shape, VectorElement> = BTreeMap::new();
        for (coefficient, shape) in terms {
            if coefficient.space() != &space {
                return Err(Error::SpaceMismatch {
                    left: space.to_string(),
                    right: coefficient.space().to_string(),
                });
            }
            if shape.is_null() {
                continue;
            }
            if shape.is_constant() {
                offset = offset.add(&coefficient)?;
                continue;
            }
            match merged.get_mut(&shape) {
                Some(c) => *c = c.add(&coefficient)?,
                None => {
                    merged.insert(shape, coefficient);
                }
            }
        }
        let terms = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(shape, coefficient)| Term { coefficient, shape })
            .collect();
        Ok(SymbolicSequence { offset, terms })
    }

    pub fn constant(value: VectorElement) -> Self {
        SymbolicSequence {
            offset: value,
            terms: Vec::new(),
        }
    }

    /// `coefficient · shape(n)` with zero offset.
    pub fn single(coefficient: VectorElement, shape: Shape) -> Self {
        let zero = coefficient.space().zero();
        Self::new(zero, vec![(coefficient, shape)]).expect("single-space term")
    }

    pub fn zero(space: &RieszSpace) -> Self {
        Self::constant(space.zero())
    }

    /// `vₙ = prefix[n-1]` for `n ≤ k`, then `tail`, written as
    /// `tail + Σⱼ (vⱼ − vⱼ₊₁)·1[n < j+1]` with `v_{k+1} = tail`.
    pub fn eventually_constant(prefix: &[VectorElement], tail: &VectorElement) -> Result<Self> {
        let mut parts = Vec::with_capacity(prefix.len());
        for (j, v) in prefix.iter().enumerate() {
            let next = prefix.get(j + 1).unwrap_or(tail);
            parts.push((v.sub(next)?, Shape::FiniteSupport(j as u64 + 2)));
        }
        Self::new(tail.clone(), parts)
    }

    pub fn space(&self) -> &RieszSpace {
        self.offset.space()
    }

    pub fn offset(&self) -> &VectorElement {
        &self.offset
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    fn parts(&self) -> Vec<(VectorElement, Shape)> {
        self.terms
            .iter()
            .map(|t| (t.coefficient.clone(), t.shape.clone()))
            .collect()
    }

    pub fn eval_at(&self, n: u64) -> Result<VectorElement> {
        if n == 0 {
            return Err(Error::BadIndex(n));
        }
        let mut acc = self.offset.clone();
        for t in &self.terms {
            acc = acc.add(&t.coefficient.scale(&t.shape.value(n)))?;
        }
        Ok(acc)
    }

    /// Values at `n = 1..=horizon`, computed incrementally.
    pub fn values(&self, horizon: u64) -> Vec<VectorElement> {
        let mut powers: Vec<Scalar> = self
            .terms
            .iter()
            .map(|t| match &t.shape {
                Shape::Geometric(q) => q.clone(),
                _ => Scalar::one(),
            })
            .collect();
        let mut out = Vec::with_capacity(horizon as usize);
        for n in 1..=horizon {
            let mut coords: Vec<Scalar> = self.offset.coords().to_vec();
            for (t, power) in self.terms.iter().zip(powers.iter_mut()) {
                let v = match &t.shape {
                    Shape::Geometric(q) => {
                        let v = power.clone();
                        *power = &*power * q;
                        v
                    }
                    other => other.value(n),
                };
                if v.is_zero() {
                    continue;
                }
                for (c, k) in coords.iter_mut().zip(t.coefficient.coords()) {
                    *c = &*c + &(k * &v);
                }
            }
            out.push(VectorElement::new(self.space().clone(), coords).expect("dimension preserved"));
        }
        out
    }

    pub fn add(&self, other: &SymbolicSequence) -> Result<SymbolicSequence> {
        let mut parts = self.parts();
        parts.extend(other.parts());
        SymbolicSequence::new(self.offset.add(&other.offset)?, parts)
    }

    pub fn sub(&self, other: &SymbolicSequence) -> Result<SymbolicSequence> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SymbolicSequence {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> SymbolicSequence {
        let parts = self
            .terms
            .iter()
            .map(|t| (t.coefficient.scale(c), t.shape.clone()))
            .collect();
        SymbolicSequence::new(self.offset.scale(c), parts).expect("same space")
    }

    /// `self − v` for a constant `v`.
    pub fn shift(&self, v: &VectorElement) -> Result<SymbolicSequence> {
        Ok(SymbolicSequence {
            offset: self.offset.sub(v)?,
            terms: self.terms.clone(),
        })
    }

    /// Applies `offset_map` to the offset and the linear part `coef_map` to
    /// every coefficient. Correct whenever `offset_map(x) = coef_map(x) + b`.
    pub fn map_parts(
        &self,
        offset_map: impl Fn(&VectorElement) -> Result<VectorElement>,
        coef_map: impl Fn(&VectorElement) -> Result<VectorElement>,
    ) -> Result<SymbolicSequence> {
        let offset = offset_map(&self.offset)?;
        let parts = self
            .terms
            .iter()
            .map(|t| Ok((coef_map(&t.coefficient)?, t.shape.clone())))
            .collect::<Result<Vec<_>>>()?;
        SymbolicSequence::new(offset, parts)
    }

    /// Linear image: `map` is applied to offset and coefficients alike.
    pub fn map_linear(&self, map: impl Fn(&VectorElement) -> Result<VectorElement>) -> Result<SymbolicSequence> {
        self.map_parts(&map, &map)
    }

    /// The sequence `n ↦ (left(n), right(n))` in the product space.
    pub fn pair(left: &SymbolicSequence, right: &SymbolicSequence) -> SymbolicSequence {
        let lz = left.space().zero();
        let rz = right.space().zero();
        let mut parts: Vec<(VectorElement, Shape)> = left
            .terms
            .iter()
            .map(|t| (VectorElement::pair(&t.coefficient, &rz), t.shape.clone()))
            .collect();
        parts.extend(
            right
                .terms
                .iter()
                .map(|t| (VectorElement::pair(&lz, &t.coefficient), t.shape.clone())),
        );
        SymbolicSequence::new(VectorElement::pair(&left.offset, &right.offset), parts)
            .expect("product space is shared")
    }

    pub fn split(&self) -> Result<(SymbolicSequence, SymbolicSequence)> {
        let (lo, ro) = self.offset.split()?;
        let mut lp = Vec::new();
        let mut rp = Vec::new();
        for t in &self.terms {
            let (l, r) = t.coefficient.split()?;
            lp.push((l, t.shape.clone()));
            rp.push((r, t.shape.clone()));
        }
        Ok((SymbolicSequence::new(lo, lp)?, SymbolicSequence::new(ro, rp)?))
    }

    /// Coordinate `j` as a real sequence.
    pub fn component(&self, j: usize) -> SymbolicSequence {
        let parts = self
            .terms
            .iter()
            .map(|t| (VectorElement::real(t.coefficient.coord(j).clone()), t.shape.clone()))
            .collect();
        SymbolicSequence::new(VectorElement::real(self.offset.coord(j).clone()), parts)
            .expect("reals")
    }

    /// Reassembles real sequences (one per coordinate) into `space`.
    pub fn from_components(space: &RieszSpace, comps: &[SymbolicSequence]) -> Result<SymbolicSequence> {
        if comps.len() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                got: comps.len(),
            });
        }
        let offset = space.element(comps.iter().map(|c| c.offset.coord(0).clone()).collect())?;
        let mut parts = Vec::new();
        for (j, c) in comps.iter().enumerate() {
            for t in &c.terms {
                let mut coords = vec![Scalar::zero(); space.dim()];
                coords[j] = t.coefficient.coord(0).clone();
                parts.push((space.element(coords)?, t.shape.clone()));
            }
        }
        SymbolicSequence::new(offset, parts)
    }

    /// Witness form, checked: zero offset, positive coefficients, and (in a
    /// non-Archimedean space) only eventually-zero shapes.
    pub fn is_decreasing_to_zero(&self) -> std::result::Result<(), Refusal> {
        if !self.offset.is_zero() {
            return Err(Refusal::LimitMismatch {
                offset: self.offset.clone(),
                limit: self.space().zero(),
            });
        }
        for t in &self.terms {
            if !t.coefficient.is_positive() {
                return Err(Refusal::NegativeCoefficient {
                    shape: t.shape.clone(),
                    coefficient: t.coefficient.clone(),
                });
            }
        }
        if !self.space().is_archimedean() {
            if let Some(t) = self.terms.iter().find(|t| !t.shape.is_eventually_zero()) {
                return Err(Refusal::NonArchimedean {
                    space: self.space().clone(),
                    shape: t.shape.clone(),
                });
            }
        }
        Ok(())
    }

    /// Replaces every coefficient by its absolute value and drops the offset.
    fn abs_terms(&self) -> SymbolicSequence {
        SymbolicSequence {
            offset: self.space().zero(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coefficient: t.coefficient.abs(),
                    shape: t.shape.clone(),
                })
                .collect(),
        }
    }

    /// The witness `Σ |cᵢ| shapeᵢ`, valid for `|self(n) − limit|` by the
    /// triangle law. Requires `offset = limit`.
    pub fn canonical_majorant(&self, limit: &VectorElement) -> std::result::Result<DecreasingWitness, Refusal> {
        if &self.offset != limit {
            return Err(Refusal::LimitMismatch {
                offset: self.offset.clone(),
                limit: limit.clone(),
            });
        }
        DecreasingWitness::new(self.abs_terms())
    }

    /// Order convergence to `b`, witnessed by the canonical majorant.
    pub fn o_converges_to(&self, b: &VectorElement) -> std::result::Result<DecreasingWitness, Refusal> {
        if self.space() != b.space() {
            return Err(Refusal::OutsideFamily(format!(
                "limit lives in {}, sequence in {}",
                b.space(),
                self.space()
            )));
        }
        self.canonical_majorant(b)
    }

    /// Order-Cauchy witness `2·aₙ` where `aₙ` majorizes `|self(n) − offset|`:
    /// `|s(n) − s(n+p)| ≤ aₙ + aₙ₊ₚ ≤ 2aₙ`.
    pub fn o_cauchy(&self) -> std::result::Result<DecreasingWitness, Refusal> {
        Ok(self.canonical_majorant(&self.offset)?.scale(&Scalar::from_int(2)))
    }

    /// Certifies `self ↓ limit`: offset equal to `limit` and every
    /// coefficient positive. `false` means "not certified".
    pub fn monotone_downarrow(&self, limit: &VectorElement) -> bool {
        &self.offset == limit && self.terms.iter().all(|t| t.coefficient.is_positive())
    }

    /// `self(n) ≥ 0` for all `n`, read off the representation: positive
    /// offset and positive coefficients.
    pub fn is_termwise_positive(&self) -> bool {
        self.offset.is_positive() && self.terms.iter().all(|t| t.coefficient.is_positive())
    }

    /// `self(n) ≥ other(n)` for all `n`, certified termwise.
    pub fn dominates(&self, other: &SymbolicSequence) -> Result<bool> {
        Ok(self.sub(other)?.is_termwise_positive())
    }

    /// Sign of a real (one-coordinate) sequence for all `n ≥ 1`, from the
    /// bounds `offset + Σ_{c<0} c·shape(1) ≤ s(n) ≤ offset + Σ_{c>0} c·shape(1)`.
    pub fn real_sign(&self) -> Sign {
        debug_assert_eq!(self.space().dim(), 1);
        let off = self.offset.coord(0).clone();
        let mut lower = off.clone();
        let mut upper = off;
        for t in &self.terms {
            let c = t.coefficient.coord(0);
            let extreme = c * &t.shape.first_value();
            if c.is_negative() {
                lower = lower + extreme;
            } else {
                upper = upper + extreme;
            }
        }
        if lower.is_nonnegative() {
            Sign::NonNegative
        } else if !upper.is_positive() {
            Sign::NonPositive
        } else {
            Sign::Unknown
        }
    }

    /// Exact `|self(n)|` as a family member, when the sign of every
    /// coordinate is settled. Only coordinatewise-ordered spaces (and
    /// constants anywhere) are supported.
    pub fn abs_exact(&self) -> Option<SymbolicSequence> {
        if self.is_constant() {
            return Some(SymbolicSequence::constant(self.offset.abs()));
        }
        if !self.space().is_coordinatewise() {
            return None;
        }
        let comps = (0..self.space().dim())
            .map(|j| {
                let c = self.component(j);
                match c.real_sign() {
                    Sign::NonNegative => Some(c),
                    Sign::NonPositive => Some(c.neg()),
                    Sign::Unknown => None,
                }
            })
            .collect::<Option<Vec<_>>>()?;
        SymbolicSequence::from_components(self.space(), &comps).ok()
    }

    fn select_exact(&self, other: &SymbolicSequence, take_larger: bool) -> Option<SymbolicSequence> {
        if self.space() != other.space() {
            return None;
        }
        if self.is_constant() && other.is_constant() {
            let v = if take_larger {
                self.offset.join(&other.offset)
            } else {
                self.offset.meet(&other.offset)
            };
            return v.ok().map(SymbolicSequence::constant);
        }
        if !self.space().is_coordinatewise() {
            return None;
        }
        let comps = (0..self.space().dim())
            .map(|j| {
                let a = self.component(j);
                let b = other.component(j);
                let a_wins = match a.sub(&b).ok()?.real_sign() {
                    Sign::NonNegative => take_larger,
                    Sign::NonPositive => !take_larger,
                    Sign::Unknown => return None,
                };
                Some(if a_wins { a } else { b })
            })
            .collect::<Option<Vec<_>>>()?;
        SymbolicSequence::from_components(self.space(), &comps).ok()
    }

    /// Exact pointwise join, when every coordinate comparison is settled.
    pub fn join_exact(&self, other: &SymbolicSequence) -> Option<SymbolicSequence> {
        self.select_exact(other, true)
    }

    /// Exact pointwise meet, when every coordinate comparison is settled.
    pub fn meet_exact(&self, other: &SymbolicSequence) -> Option<SymbolicSequence> {
        self.select_exact(other, false)
    }

    /// Parses `offset` plus `(coefficient, shape)` literal pairs in `space`.
    pub fn parse(space: &RieszSpace, offset: &str, terms: &[(String, String)]) -> Result<SymbolicSequence> {
        let offset = VectorElement::parse(space, offset)?;
        let parts = terms
            .iter()
            .map(|(c, s)| Ok((VectorElement::parse(space, c)?, s.parse::<Shape>()?)))
            .collect::<Result<Vec<_>>>()?;
        SymbolicSequence::new(offset, parts)
    }

    /// `(coefficient, shape)` literal pairs, the inverse of [`Self::parse`].
    pub fn term_literals(&self) -> Vec<(String, String)> {
        self.terms
            .iter()
            .map(|t| (t.coefficient.literal(), t.shape.to_string()))
            .collect()
    }
}

impl fmt::Display for SymbolicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.offset)?;
        for t in &self.terms {
            write!(f, " + {}*[{}]", t.coefficient, t.shape)?;
        }
        Ok(())
    }
}

impl fmt::Debug for SymbolicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.space())
    }
}

/// A certified `aₙ ↓ 0`: zero offset, positive coefficients, and only shapes
/// that decrease to zero in the ambient space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DecreasingWitness(SymbolicSequence);

impl DecreasingWitness {
    pub fn new(sequence: SymbolicSequence) -> std::result::Result<Self, Refusal> {
        sequence.is_decreasing_to_zero()?;
        Ok(DecreasingWitness(sequence))
    }

    pub fn zero(space: &RieszSpace) -> Self {
        DecreasingWitness(SymbolicSequence::zero(space))
    }

    /// `coefficient · 1[n < bound]`, the witness for an eventually-constant
    /// sequence. Accepted in every space since it is eventually zero.
    pub fn prefix_bound(coefficient: VectorElement, bound: u64) -> std::result::Result<Self, Refusal> {
        if bound <= 1 || coefficient.is_zero() {
            return Ok(Self::zero(coefficient.space()));
        }
        Self::new(SymbolicSequence::single(coefficient, Shape::FiniteSupport(bound)))
    }

    pub fn sequence(&self) -> &SymbolicSequence {
        &self.0
    }

    pub fn into_sequence(self) -> SymbolicSequence {
        self.0
    }

    pub fn space(&self) -> &RieszSpace {
        self.0.space()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_constant()
    }

    pub fn eval_at(&self, n: u64) -> Result<VectorElement> {
        self.0.eval_at(n)
    }

    pub fn values(&self, horizon: u64) -> Vec<VectorElement> {
        self.0.values(horizon)
    }

    /// Termwise sum of two witnesses is again a witness.
    pub fn sum(&self, other: &DecreasingWitness) -> Result<DecreasingWitness> {
        Ok(DecreasingWitness(self.0.add(&other.0)?))
    }

    /// Nonnegative multiple; panics on a negative factor.
    pub fn scale(&self, c: &Scalar) -> DecreasingWitness {
        assert!(c.is_nonnegative(), "witnesses scale by nonnegative factors only");
        DecreasingWitness(self.0.scale(c))
    }

    /// Product-space witness from factor witnesses.
    pub fn pair(left: &DecreasingWitness, right: &DecreasingWitness) -> DecreasingWitness {
        DecreasingWitness(SymbolicSequence::pair(&left.0, &right.0))
    }

    /// Image under a positive map applied to every coefficient. The result is
    /// re-validated, so a map that is not positive is caught here.
    pub fn map_positive(
        &self,
        target: &RieszSpace,
        map: impl Fn(&VectorElement) -> Result<VectorElement>,
    ) -> Result<std::result::Result<DecreasingWitness, Refusal>> {
        let parts = self
            .0
            .terms
            .iter()
            .map(|t| Ok((map(&t.coefficient)?, t.shape.clone())))
            .collect::<Result<Vec<_>>>()?;
        let seq = SymbolicSequence::new(target.zero(), parts)?;
        Ok(DecreasingWitness::new(seq))
    }

    /// Spot check of monotone decrease and positivity for `n ≤ horizon`.
    pub fn spot_check_decreasing(&self, horizon: u64) -> std::result::Result<(), u64> {
        let vals = self.values(horizon + 1);
        for (i, w) in vals.windows(2).enumerate() {
            let n = i as u64 + 1;
            if !w[1].leq(&w[0]).unwrap_or(false) || !w[0].is_positive() {
                return Err(n);
            }
        }
        Ok(())
    }
}

impl fmt::Display for DecreasingWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for DecreasingWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Witness({:?})", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> VectorElement {
        VectorElement::real(Scalar::from_int(n))
    }

    fn c2(a: i64, b: i64) -> VectorElement {
        RieszSpace::Coordinate(2).ints(&[a, b])
    }

    fn half() -> Shape {
        Shape::Geometric(Scalar::ratio(1, 2))
    }

    #[test]
    fn evaluation() {
        let s = SymbolicSequence::new(r(1), vec![(r(2), Shape::Harmonic)]).unwrap();
        assert_eq!(s.eval_at(4).unwrap(), VectorElement::real(Scalar::ratio(3, 2)));
        let t = SymbolicSequence::new(c2(0, 0), vec![(c2(2, 3), Shape::Harmonic)]).unwrap();
        assert_eq!(
            t.eval_at(2).unwrap(),
            RieszSpace::Coordinate(2).element(vec![Scalar::one(), Scalar::ratio(3, 2)]).unwrap()
        );
        let k = SymbolicSequence::constant(r(9));
        assert_eq!(k.eval_at(77).unwrap(), r(9));
        assert_eq!(k.eval_at(0), Err(Error::BadIndex(0)));
    }

    #[test]
    fn incremental_values_match_direct_evaluation() {
        let s = SymbolicSequence::new(
            c2(1, -1),
            vec![
                (c2(2, 0), Shape::Harmonic),
                (c2(-1, 3), Shape::Geometric(Scalar::ratio(2, 3))),
                (c2(5, 5), Shape::FiniteSupport(4)),
            ],
        )
        .unwrap();
        let vals = s.values(40);
        for (i, v) in vals.iter().enumerate() {
            assert_eq!(v, &s.eval_at(i as u64 + 1).unwrap());
        }
    }

    #[test]
    fn normalization_folds_merges_and_drops() {
        let s = SymbolicSequence::new(
            r(0),
            vec![
                (r(1), Shape::One),
                (r(2), Shape::Harmonic),
                (r(-2), Shape::Harmonic),
                (r(4), Shape::Geometric(Scalar::zero())),
                (r(4), Shape::FiniteSupport(1)),
                (r(1), Shape::FiniteSupport(3)),
                (r(1), Shape::FiniteSupport(3)),
            ],
        )
        .unwrap();
        assert_eq!(s.offset(), &r(1));
        assert_eq!(s.terms().len(), 1);
        assert_eq!(s.terms()[0].coefficient, r(2));
        let again = SymbolicSequence::new(s.offset().clone(), s.parts()).unwrap();
        assert_eq!(again, s);
    }

    #[test]
    fn decreasing_to_zero_verdicts() {
        let w = SymbolicSequence::new(c2(0, 0), vec![(c2(2, 3), Shape::Harmonic)]).unwrap();
        assert!(w.is_decreasing_to_zero().is_ok());
        assert!(matches!(
            SymbolicSequence::constant(r(5)).is_decreasing_to_zero(),
            Err(Refusal::LimitMismatch { .. })
        ));
        let neg = SymbolicSequence::single(r(-1), Shape::Harmonic);
        assert!(matches!(neg.is_decreasing_to_zero(), Err(Refusal::NegativeCoefficient { .. })));
    }

    #[test]
    fn lexplane_refuses_harmonic_witnesses() {
        let lex = RieszSpace::LexPlane;
        let s = SymbolicSequence::single(lex.ints(&[1, 0]), Shape::Harmonic);
        assert!(matches!(s.is_decreasing_to_zero(), Err(Refusal::NonArchimedean { .. })));
        let fs = SymbolicSequence::single(lex.ints(&[1, 0]), Shape::FiniteSupport(3));
        assert!(fs.is_decreasing_to_zero().is_ok());
    }

    #[test]
    fn majorants_and_convergence() {
        let s = SymbolicSequence::new(r(1), vec![(r(2), Shape::Harmonic)]).unwrap();
        let w = s.canonical_majorant(&r(1)).unwrap();
        assert_eq!(w.sequence(), &SymbolicSequence::single(r(2), Shape::Harmonic));
        assert!(matches!(s.o_converges_to(&r(0)), Err(Refusal::LimitMismatch { .. })));

        let t = SymbolicSequence::new(c2(0, 0), vec![(c2(-2, 3), Shape::Harmonic)]).unwrap();
        let w = t.o_converges_to(&c2(0, 0)).unwrap();
        assert_eq!(w.sequence(), &SymbolicSequence::single(c2(2, 3), Shape::Harmonic));

        let k = SymbolicSequence::constant(r(4));
        assert!(k.o_converges_to(&r(4)).unwrap().is_zero());
    }

    #[test]
    fn cauchy_witness_doubles_the_majorant() {
        let s = SymbolicSequence::new(r(3), vec![(r(1), half())]).unwrap();
        let w = s.o_cauchy().unwrap();
        assert_eq!(w.sequence(), &SymbolicSequence::single(r(2), half()));
        assert!(SymbolicSequence::constant(r(3)).o_cauchy().unwrap().is_zero());
        let odd = SymbolicSequence::new(r(0), vec![(r(1), Shape::One)]).unwrap();
        assert!(odd.is_constant());
        assert!(odd.o_cauchy().unwrap().is_zero());
    }

    #[test]
    fn monotone_downarrow_certification() {
        let s = SymbolicSequence::single(r(3), Shape::Harmonic);
        assert!(s.monotone_downarrow(&r(0)));
        let s1 = SymbolicSequence::new(r(1), vec![(r(3), Shape::Harmonic)]).unwrap();
        assert!(!s1.monotone_downarrow(&r(0)));
        let mixed = SymbolicSequence::new(r(0), vec![(r(3), Shape::Harmonic), (r(-1), half())]).unwrap();
        assert!(!mixed.monotone_downarrow(&r(0)));
    }

    #[test]
    fn sign_analysis_and_exact_abs() {
        let pos = SymbolicSequence::new(r(1), vec![(r(-1), half())]).unwrap();
        assert_eq!(pos.real_sign(), Sign::NonNegative);
        let neg = SymbolicSequence::new(r(0), vec![(r(-2), Shape::Harmonic), (r(-1), half())]).unwrap();
        assert_eq!(neg.real_sign(), Sign::NonPositive);
        assert_eq!(neg.abs_exact().unwrap(), neg.neg());
        let mixed = SymbolicSequence::new(r(0), vec![(r(1), Shape::Harmonic), (r(-1), half())]).unwrap();
        assert_eq!(mixed.real_sign(), Sign::Unknown);
        assert!(mixed.abs_exact().is_none());
    }

    #[test]
    fn exact_join_and_meet() {
        let a = SymbolicSequence::single(r(2), Shape::Harmonic);
        let b = SymbolicSequence::single(r(1), Shape::Harmonic);
        assert_eq!(a.join_exact(&b).unwrap(), a);
        assert_eq!(a.meet_exact(&b).unwrap(), b);
        let c = SymbolicSequence::single(r(1), half());
        // 1/n - (1/2)^n is positive but its sign is not settled by the bounds
        assert!(b.join_exact(&c).is_none());
    }

    #[test]
    fn shape_literals() {
        for lit in ["1", "1/n", "q^n:1/2", "lt:5"] {
            assert_eq!(lit.parse::<Shape>().unwrap().to_string(), lit);
        }
        assert!("q^n:1".parse::<Shape>().is_err());
        assert!("q^n:-1/2".parse::<Shape>().is_err());
        assert!("lt:0".parse::<Shape>().is_err());
        assert!("n^2".parse::<Shape>().is_err());
    }

    #[test]
    fn pairing_and_splitting() {
        let a = SymbolicSequence::new(r(1), vec![(r(2), Shape::Harmonic)]).unwrap();
        let b = SymbolicSequence::new(c2(0, 1), vec![(c2(1, 1), half())]).unwrap();
        let p = SymbolicSequence::pair(&a, &b);
        assert_eq!(p.space().dim(), 3);
        let (l, rr) = p.split().unwrap();
        assert_eq!(l, a);
        assert_eq!(rr, b);
        assert_eq!(p.eval_at(3).unwrap(), VectorElement::pair(&a.eval_at(3).unwrap(), &b.eval_at(3).unwrap()));
    }
}
