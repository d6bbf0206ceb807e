//! Point spaces `X` carrying vector metrics, their points, and point
//! sequences.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::literal::Cursor;
use crate::riesz::{coords_literal, RieszSpace, VectorElement};
use crate::scalar::Scalar;
use crate::sequence::SymbolicSequence;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Label(String),
    Coords(Vec<Scalar>),
    Pair(Box<Point>, Box<Point>),
}

impl Point {
    pub fn label(s: &str) -> Point {
        Point::Label(s.to_string())
    }

    pub fn real(v: Scalar) -> Point {
        Point::Coords(vec![v])
    }

    pub fn int(v: i64) -> Point {
        Point::Coords(vec![Scalar::from_int(v)])
    }

    pub fn pair(l: Point, r: Point) -> Point {
        Point::Pair(Box::new(l), Box::new(r))
    }

    pub fn from_element(e: &VectorElement) -> Point {
        Point::Coords(e.coords().to_vec())
    }

    pub fn coords(&self) -> Option<&[Scalar]> {
        match self {
            Point::Coords(c) => Some(c),
            _ => None,
        }
    }

    pub fn split(&self) -> Result<(&Point, &Point)> {
        match self {
            Point::Pair(l, r) => Ok((l, r)),
            other => Err(Error::Incompatible(format!("{other} is not a pair point"))),
        }
    }

    pub(crate) fn parse_from(c: &mut Cursor<'_>) -> Result<Point> {
        if c.eat('<') {
            let l = Self::parse_from(c)?;
            c.expect(';')?;
            let r = Self::parse_from(c)?;
            c.expect('>')?;
            return Ok(Point::pair(l, r));
        }
        if c.eat('(') {
            let v = c.scalar_list(')')?;
            c.expect(')')?;
            return Ok(Point::Coords(v));
        }
        if c.starts_scalar() {
            return Ok(Point::Coords(vec![c.scalar()?]));
        }
        Ok(Point::Label(c.ident()?.to_string()))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Label(s) => f.write_str(s),
            Point::Coords(c) => f.write_str(&coords_literal(c)),
            Point::Pair(l, r) => write!(f, "<{l};{r}>"),
        }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Point {
    type Err = Error;
    fn from_str(s: &str) -> Result<Point> {
        let mut c = Cursor::new(s);
        let p = Point::parse_from(&mut c)?;
        c.finish()?;
        Ok(p)
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// The set `X` a metric lives on.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum PointSpace {
    /// Distinct labels.
    Finite(Vec<String>),
    /// Rational points of the line.
    Line,
    /// Rational pairs.
    Plane,
    /// A Riesz space used as a set of points.
    Riesz(RieszSpace),
    Product(Box<PointSpace>, Box<PointSpace>),
}

impl PointSpace {
    pub fn finite<S: AsRef<str>>(labels: &[S]) -> Result<PointSpace> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        if labels.is_empty() {
            return Err(Error::Empty("finite point space"));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::InvalidParameter(format!("duplicate point label `{l}`")));
            }
        }
        Ok(PointSpace::Finite(labels))
    }

    pub fn product(l: PointSpace, r: PointSpace) -> PointSpace {
        PointSpace::Product(Box::new(l), Box::new(r))
    }

    /// The Riesz space whose elements encode points, for spaces whose points
    /// are coordinate vectors.
    pub fn coordinate_space(&self) -> Option<RieszSpace> {
        match self {
            PointSpace::Line => Some(RieszSpace::Reals),
            PointSpace::Plane => Some(RieszSpace::Coordinate(2)),
            PointSpace::Riesz(e) => Some(e.clone()),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            PointSpace::Finite(_) => true,
            PointSpace::Product(l, r) => l.is_finite() && r.is_finite(),
            _ => false,
        }
    }

    /// All points of a finite space, in declaration order (row-major for
    /// products).
    pub fn enumerate(&self) -> Option<Vec<Point>> {
        match self {
            PointSpace::Finite(labels) => Some(labels.iter().map(|l| Point::label(l)).collect()),
            PointSpace::Product(l, r) => {
                let ls = l.enumerate()?;
                let rs = r.enumerate()?;
                Some(
                    ls.iter()
                        .flat_map(|a| rs.iter().map(move |b| Point::pair(a.clone(), b.clone())))
                        .collect(),
                )
            }
            _ => None,
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        match (self, p) {
            (PointSpace::Finite(labels), Point::Label(l)) => labels.contains(l),
            (PointSpace::Product(l, r), Point::Pair(a, b)) => l.contains(a) && r.contains(b),
            (s, Point::Coords(c)) => s.coordinate_space().is_some_and(|e| e.dim() == c.len()),
            _ => false,
        }
    }

    pub fn check(&self, p: &Point) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::PointOutsideDomain {
                point: p.to_string(),
                domain: self.to_string(),
            })
        }
    }

    /// The coordinate vector of a point of a coordinate space.
    pub fn element(&self, p: &Point) -> Result<VectorElement> {
        self.check(p)?;
        let e = self
            .coordinate_space()
            .ok_or_else(|| Error::Incompatible(format!("{self} has no coordinate representation")))?;
        e.element(p.coords().expect("checked").to_vec())
    }

    /// Two point spaces whose points are encoded identically.
    pub fn same_points(&self, other: &PointSpace) -> bool {
        match (self, other) {
            (PointSpace::Product(a, b), PointSpace::Product(c, d)) => a.same_points(c) && b.same_points(d),
            _ => match (self.coordinate_space(), other.coordinate_space()) {
                (Some(x), Some(y)) => x == y,
                _ => self == other,
            },
        }
    }

    pub(crate) fn parse_from(c: &mut Cursor<'_>) -> Result<PointSpace> {
        let word = c.ident()?;
        match word {
            "line" => Ok(PointSpace::Line),
            "plane" => Ok(PointSpace::Plane),
            "finite" => {
                c.expect('{')?;
                let mut labels = Vec::new();
                loop {
                    labels.push(c.ident()?.to_string());
                    if !c.eat(',') {
                        break;
                    }
                }
                c.expect('}')?;
                PointSpace::finite(&labels)
            }
            "riesz" => {
                c.expect(':')?;
                Ok(PointSpace::Riesz(RieszSpace::parse_from(c)?))
            }
            "product" => {
                c.expect('[')?;
                let l = Self::parse_from(c)?;
                c.expect(',')?;
                let r = Self::parse_from(c)?;
                c.expect(']')?;
                Ok(PointSpace::product(l, r))
            }
            other => Err(Error::Parse(format!("unknown point space kind `{other}`"))),
        }
    }
}

impl fmt::Display for PointSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointSpace::Finite(labels) => write!(f, "finite{{{}}}", labels.join(",")),
            PointSpace::Line => write!(f, "line"),
            PointSpace::Plane => write!(f, "plane"),
            PointSpace::Riesz(e) => write!(f, "riesz:{e}"),
            PointSpace::Product(l, r) => write!(f, "product[{l},{r}]"),
        }
    }
}

impl fmt::Debug for PointSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PointSpace {
    type Err = Error;
    fn from_str(s: &str) -> Result<PointSpace> {
        let mut c = Cursor::new(s);
        let p = PointSpace::parse_from(&mut c)?;
        c.finish()?;
        Ok(p)
    }
}

/// A sequence `(xₙ)` in a point space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum PointSequence {
    /// `xₙ = prefix[n-1]` for `n ≤ prefix.len()`, then `tail` forever.
    EventuallyConstant { prefix: Vec<Point>, tail: Point },
    /// Coordinatewise closed form over the space's coordinate Riesz space.
    Symbolic(SymbolicSequence),
    /// Componentwise sequence in a product space.
    Pair(Box<PointSequence>, Box<PointSequence>),
}

impl PointSequence {
    pub fn constant(p: Point) -> PointSequence {
        PointSequence::EventuallyConstant {
            prefix: Vec::new(),
            tail: p,
        }
    }

    pub fn pair(l: PointSequence, r: PointSequence) -> PointSequence {
        PointSequence::Pair(Box::new(l), Box::new(r))
    }

    pub fn eval_at(&self, n: u64) -> Result<Point> {
        if n == 0 {
            return Err(Error::BadIndex(0));
        }
        match self {
            PointSequence::EventuallyConstant { prefix, tail } => {
                Ok(prefix.get(n as usize - 1).unwrap_or(tail).clone())
            }
            PointSequence::Symbolic(s) => Ok(Point::from_element(&s.eval_at(n)?)),
            PointSequence::Pair(l, r) => Ok(Point::pair(l.eval_at(n)?, r.eval_at(n)?)),
        }
    }

    /// Terms `1..=horizon`.
    pub fn values(&self, horizon: u64) -> Vec<Point> {
        match self {
            PointSequence::EventuallyConstant { prefix, tail } => (0..horizon as usize)
                .map(|i| prefix.get(i).unwrap_or(tail).clone())
                .collect(),
            PointSequence::Symbolic(s) => s.values(horizon).iter().map(Point::from_element).collect(),
            PointSequence::Pair(l, r) => l
                .values(horizon)
                .into_iter()
                .zip(r.values(horizon))
                .map(|(a, b)| Point::pair(a, b))
                .collect(),
        }
    }

    /// The point the representation settles on: the tail, the offset, or
    /// the pair of both.
    pub fn limit_candidate(&self) -> Point {
        match self {
            PointSequence::EventuallyConstant { tail, .. } => tail.clone(),
            PointSequence::Symbolic(s) => Point::from_element(s.offset()),
            PointSequence::Pair(l, r) => Point::pair(l.limit_candidate(), r.limit_candidate()),
        }
    }

    /// Index from which the sequence is constant, when known.
    pub fn constant_from(&self) -> Option<u64> {
        match self {
            PointSequence::EventuallyConstant { prefix, .. } => Some(prefix.len() as u64 + 1),
            PointSequence::Symbolic(s) => s.is_constant().then_some(1),
            PointSequence::Pair(l, r) => Some(l.constant_from()?.max(r.constant_from()?)),
        }
    }

    /// Closed form over `space`'s coordinate space. Eventually-constant
    /// coordinate sequences convert through finite-support terms.
    pub fn as_symbolic(&self, space: &PointSpace) -> Result<SymbolicSequence> {
        match self {
            PointSequence::Symbolic(s) => Ok(s.clone()),
            PointSequence::EventuallyConstant { prefix, tail } => {
                let prefix = prefix.iter().map(|p| space.element(p)).collect::<Result<Vec<_>>>()?;
                SymbolicSequence::eventually_constant(&prefix, &space.element(tail)?)
            }
            PointSequence::Pair(..) => Err(Error::Incompatible(
                "pair sequence has no single coordinate form".into(),
            )),
        }
    }

    /// Checks that every term lies in `space` (exhaustive for
    /// eventually-constant forms, structural for closed forms).
    pub fn check_in(&self, space: &PointSpace) -> Result<()> {
        match (self, space) {
            (PointSequence::EventuallyConstant { prefix, tail }, _) => {
                prefix.iter().chain(std::iter::once(tail)).try_for_each(|p| space.check(p))
            }
            (PointSequence::Symbolic(s), _) => match space.coordinate_space() {
                Some(e) if &e == s.space() => Ok(()),
                _ => Err(Error::SpaceMismatch {
                    left: space.to_string(),
                    right: s.space().to_string(),
                }),
            },
            (PointSequence::Pair(l, r), PointSpace::Product(a, b)) => {
                l.check_in(a)?;
                r.check_in(b)
            }
            (PointSequence::Pair(..), other) => Err(Error::Incompatible(format!(
                "pair sequence in non-product space {other}"
            ))),
        }
    }
}

impl fmt::Display for PointSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointSequence::EventuallyConstant { prefix, tail } => {
                let items: Vec<String> = prefix.iter().map(|p| p.to_string()).collect();
                write!(f, "[{}] then {tail}", items.join(", "))
            }
            PointSequence::Symbolic(s) => write!(f, "{s}"),
            PointSequence::Pair(l, r) => write!(f, "<{l}; {r}>"),
        }
    }
}

impl fmt::Debug for PointSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::Shape;

    #[test]
    fn point_literals() {
        for lit in ["p", "3/2", "(1,-2)", "<0;(1,2)>", "<a;b>"] {
            assert_eq!(lit.parse::<Point>().unwrap().to_string(), lit);
        }
        assert!("(1,".parse::<Point>().is_err());
    }

    #[test]
    fn space_literals() {
        for lit in ["line", "plane", "finite{p,q,r}", "riesz:coord:2", "product[line,finite{a,b}]"] {
            assert_eq!(lit.parse::<PointSpace>().unwrap().to_string(), lit);
        }
        assert!("finite{p,p}".parse::<PointSpace>().is_err());
    }

    #[test]
    fn membership() {
        let x: PointSpace = "product[finite{a,b},line]".parse().unwrap();
        assert!(x.contains(&"<a;3>".parse().unwrap()));
        assert!(!x.contains(&"<c;3>".parse().unwrap()));
        assert!(!PointSpace::Plane.contains(&Point::int(1)));
        assert_eq!(x.enumerate(), None);
        let f: PointSpace = "product[finite{a,b},finite{c}]".parse().unwrap();
        assert_eq!(f.enumerate().unwrap().len(), 2);
    }

    #[test]
    fn eventually_constant_sequences() {
        let s = PointSequence::EventuallyConstant {
            prefix: vec![Point::label("p"), Point::label("q")],
            tail: Point::label("r"),
        };
        assert_eq!(s.eval_at(1).unwrap(), Point::label("p"));
        assert_eq!(s.eval_at(2).unwrap(), Point::label("q"));
        assert_eq!(s.eval_at(50).unwrap(), Point::label("r"));
        assert_eq!(s.constant_from(), Some(3));
    }

    #[test]
    fn coordinate_conversion() {
        let s = PointSequence::EventuallyConstant {
            prefix: vec![Point::int(5), Point::int(-1)],
            tail: Point::int(2),
        };
        let sym = s.as_symbolic(&PointSpace::Line).unwrap();
        for n in 1..6 {
            assert_eq!(Point::from_element(&sym.eval_at(n).unwrap()), s.eval_at(n).unwrap());
        }
        let h = PointSequence::Symbolic(SymbolicSequence::single(
            VectorElement::real(Scalar::one()),
            Shape::Harmonic,
        ));
        assert_eq!(h.eval_at(4).unwrap(), Point::real(Scalar::ratio(1, 4)));
        assert_eq!(h.limit_candidate(), Point::int(0));
        assert!(h.check_in(&PointSpace::Line).is_ok());
        assert!(h.check_in(&PointSpace::Plane).is_err());
    }
}
