//! Maps between point spaces and their action on point sequences.

use std::fmt;

use crate::error::{Error, Result};
use crate::point::{Point, PointSequence, PointSpace};
use crate::scalar::Scalar;
use crate::sequence::SymbolicSequence;
use crate::vmetric::VectorMetric;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum MapForm {
    /// Explicit `x ↦ y` pairs; total on a finite domain, partial otherwise.
    Table(Vec<(Point, Point)>),
    /// `xᵢ ↦ slopeᵢ·xᵢ + interceptᵢ` coordinatewise.
    Affine { slope: Vec<Scalar>, intercept: Vec<Scalar> },
    /// `x ↦ (f(x), g(x))`.
    Pair(Box<MapDescriptor>, Box<MapDescriptor>),
    /// `(x, y) ↦ (f(x), g(y))`.
    ProductMap(Box<MapDescriptor>, Box<MapDescriptor>),
    /// `(x, y) ↦ |f(x) − g(y)|`.
    AbsDiff(Box<MapDescriptor>, Box<MapDescriptor>),
    /// `x ↦ d(x, anchor)`.
    DistanceToPoint { metric: Box<VectorMetric>, anchor: Point },
    /// `x ↦ inf_{a∈set} d(x, a)`.
    DistanceToSet { metric: Box<VectorMetric>, set: Vec<Point> },
    Projection(Side),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MapDescriptor {
    domain: PointSpace,
    codomain: PointSpace,
    form: MapForm,
}

/// Image of a sequence under a map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pushed {
    Exact(PointSequence),
    /// The image leaves the symbolic family.
    Undecidable(String),
}

impl MapDescriptor {
    pub fn domain(&self) -> &PointSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &PointSpace {
        &self.codomain
    }

    pub fn form(&self) -> &MapForm {
        &self.form
    }

    pub fn table(domain: PointSpace, codomain: PointSpace, pairs: Vec<(Point, Point)>) -> Result<MapDescriptor> {
        for (i, (x, y)) in pairs.iter().enumerate() {
            domain.check(x)?;
            codomain.check(y)?;
            if pairs[..i].iter().any(|(a, _)| a == x) {
                return Err(Error::InvalidParameter(format!("table map lists {x} twice")));
            }
        }
        if let Some(all) = domain.enumerate() {
            if let Some(missing) = all.iter().find(|p| !pairs.iter().any(|(x, _)| x == *p)) {
                return Err(Error::InvalidParameter(format!("table map has no value at {missing}")));
            }
        }
        Ok(MapDescriptor {
            domain,
            codomain,
            form: MapForm::Table(pairs),
        })
    }

    pub fn affine(domain: PointSpace, codomain: PointSpace, slope: Vec<Scalar>, intercept: Vec<Scalar>) -> Result<MapDescriptor> {
        let (Some(e), Some(f)) = (domain.coordinate_space(), codomain.coordinate_space()) else {
            return Err(Error::Incompatible(format!(
                "affine maps need coordinate spaces, got {domain} -> {codomain}"
            )));
        };
        for got in [f.dim(), slope.len(), intercept.len()] {
            if got != e.dim() {
                return Err(Error::DimensionMismatch { expected: e.dim(), got });
            }
        }
        Ok(MapDescriptor {
            domain,
            codomain,
            form: MapForm::Affine { slope, intercept },
        })
    }

    /// The identity on `space`.
    pub fn identity(space: PointSpace) -> Result<MapDescriptor> {
        if let Some(all) = space.enumerate() {
            let pairs = all.into_iter().map(|p| (p.clone(), p)).collect();
            return MapDescriptor::table(space.clone(), space, pairs);
        }
        let n = space
            .coordinate_space()
            .ok_or_else(|| Error::Unsupported(format!("no identity map built for {space}")))?
            .dim();
        MapDescriptor::affine(space.clone(), space, vec![Scalar::one(); n], vec![Scalar::zero(); n])
    }

    pub fn pair(f: MapDescriptor, g: MapDescriptor) -> Result<MapDescriptor> {
        if !f.domain.same_points(&g.domain) {
            return Err(Error::Incompatible(format!(
                "pair map needs a shared domain, got {} and {}",
                f.domain, g.domain
            )));
        }
        Ok(MapDescriptor {
            domain: f.domain.clone(),
            codomain: PointSpace::product(f.codomain.clone(), g.codomain.clone()),
            form: MapForm::Pair(Box::new(f), Box::new(g)),
        })
    }

    pub fn product_map(f: MapDescriptor, g: MapDescriptor) -> MapDescriptor {
        MapDescriptor {
            domain: PointSpace::product(f.domain.clone(), g.domain.clone()),
            codomain: PointSpace::product(f.codomain.clone(), g.codomain.clone()),
            form: MapForm::ProductMap(Box::new(f), Box::new(g)),
        }
    }

    pub fn abs_diff(f: MapDescriptor, g: MapDescriptor) -> Result<MapDescriptor> {
        let e = match (f.codomain.coordinate_space(), g.codomain.coordinate_space()) {
            (Some(a), Some(b)) if a == b => a,
            _ => {
                return Err(Error::Incompatible(format!(
                    "|f - g| needs both maps in one Riesz space, got {} and {}",
                    f.codomain, g.codomain
                )))
            }
        };
        Ok(MapDescriptor {
            domain: PointSpace::product(f.domain.clone(), g.domain.clone()),
            codomain: PointSpace::Riesz(e),
            form: MapForm::AbsDiff(Box::new(f), Box::new(g)),
        })
    }

    pub fn distance_to_point(metric: VectorMetric, anchor: Point) -> Result<MapDescriptor> {
        metric.domain().check(&anchor)?;
        Ok(MapDescriptor {
            domain: metric.domain().clone(),
            codomain: PointSpace::Riesz(metric.codomain().clone()),
            form: MapForm::DistanceToPoint {
                metric: Box::new(metric),
                anchor,
            },
        })
    }

    pub fn distance_to_set(metric: VectorMetric, set: Vec<Point>) -> Result<MapDescriptor> {
        if set.is_empty() {
            return Err(Error::Empty("distance to an empty set"));
        }
        if !metric.codomain().sigma_complete_model() {
            return Err(Error::Unsupported(format!(
                "distance to a set needs infima in {}",
                metric.codomain()
            )));
        }
        set.iter().try_for_each(|a| metric.domain().check(a))?;
        Ok(MapDescriptor {
            domain: metric.domain().clone(),
            codomain: PointSpace::Riesz(metric.codomain().clone()),
            form: MapForm::DistanceToSet {
                metric: Box::new(metric),
                set,
            },
        })
    }

    pub fn projection(space: PointSpace, side: Side) -> Result<MapDescriptor> {
        let PointSpace::Product(l, r) = &space else {
            return Err(Error::Incompatible(format!("projection from non-product space {space}")));
        };
        let codomain = match side {
            Side::Left => (**l).clone(),
            Side::Right => (**r).clone(),
        };
        Ok(MapDescriptor {
            domain: space,
            codomain,
            form: MapForm::Projection(side),
        })
    }

    pub fn apply(&self, x: &Point) -> Result<Point> {
        self.domain.check(x)?;
        match &self.form {
            MapForm::Table(pairs) => pairs
                .iter()
                .find(|(a, _)| a == x)
                .map(|(_, y)| y.clone())
                .ok_or_else(|| Error::PointOutsideDomain {
                    point: x.to_string(),
                    domain: "the points of the table".into(),
                }),
            MapForm::Affine { slope, intercept } => {
                let c = x.coords().expect("checked");
                Ok(Point::Coords(
                    c.iter()
                        .zip(slope)
                        .zip(intercept)
                        .map(|((v, s), b)| v * s + b)
                        .collect(),
                ))
            }
            MapForm::Pair(f, g) => Ok(Point::pair(f.apply(x)?, g.apply(x)?)),
            MapForm::ProductMap(f, g) => {
                let (a, b) = x.split()?;
                Ok(Point::pair(f.apply(a)?, g.apply(b)?))
            }
            MapForm::AbsDiff(f, g) => {
                let (a, b) = x.split()?;
                let u = f.codomain.element(&f.apply(a)?)?;
                let v = g.codomain.element(&g.apply(b)?)?;
                Ok(Point::from_element(&u.sub(&v)?.abs()))
            }
            MapForm::DistanceToPoint { metric, anchor } => Ok(Point::from_element(&metric.distance(x, anchor)?)),
            MapForm::DistanceToSet { metric, set } => Ok(Point::from_element(&metric.distance_to_set(x, set)?)),
            MapForm::Projection(side) => {
                let (a, b) = x.split()?;
                Ok(match side {
                    Side::Left => a.clone(),
                    Side::Right => b.clone(),
                })
            }
        }
    }

    /// The image sequence `n ↦ f(xₙ)`, exact whenever it stays in the family.
    pub fn push(&self, s: &PointSequence) -> Result<Pushed> {
        s.check_in(&self.domain)?;
        if let PointSequence::EventuallyConstant { prefix, tail } = s {
            return Ok(Pushed::Exact(PointSequence::EventuallyConstant {
                prefix: prefix.iter().map(|p| self.apply(p)).collect::<Result<_>>()?,
                tail: self.apply(tail)?,
            }));
        }
        let undecidable = |why: &str| Ok(Pushed::Undecidable(why.to_string()));
        match &self.form {
            MapForm::Table(_) => undecidable("a table map cannot act on a closed-form sequence"),
            MapForm::Affine { slope, intercept } => {
                let seq = s.as_symbolic(&self.domain)?;
                let target = self.codomain.coordinate_space().expect("checked at construction");
                let scale = |c: &[Scalar]| c.iter().zip(slope).map(|(v, s)| v * s).collect::<Vec<_>>();
                let image = seq.map_parts(
                    |o| {
                        let v = scale(o.coords()).into_iter().zip(intercept).map(|(a, b)| a + b).collect();
                        target.element(v)
                    },
                    |c| target.element(scale(c.coords())),
                )?;
                Ok(Pushed::Exact(PointSequence::Symbolic(image)))
            }
            MapForm::Pair(f, g) => Ok(match (f.push(s)?, g.push(s)?) {
                (Pushed::Exact(a), Pushed::Exact(b)) => Pushed::Exact(PointSequence::pair(a, b)),
                (Pushed::Undecidable(w), _) | (_, Pushed::Undecidable(w)) => Pushed::Undecidable(w),
            }),
            MapForm::ProductMap(f, g) => {
                let PointSequence::Pair(s1, s2) = s else { unreachable!("checked") };
                Ok(match (f.push(s1)?, g.push(s2)?) {
                    (Pushed::Exact(a), Pushed::Exact(b)) => Pushed::Exact(PointSequence::pair(a, b)),
                    (Pushed::Undecidable(w), _) | (_, Pushed::Undecidable(w)) => Pushed::Undecidable(w),
                })
            }
            MapForm::Projection(side) => {
                let PointSequence::Pair(s1, s2) = s else { unreachable!("checked") };
                Ok(Pushed::Exact(match side {
                    Side::Left => (**s1).clone(),
                    Side::Right => (**s2).clone(),
                }))
            }
            MapForm::AbsDiff(f, g) => {
                let PointSequence::Pair(s1, s2) = s else { unreachable!("checked") };
                let (Pushed::Exact(u), Pushed::Exact(v)) = (f.push(s1)?, g.push(s2)?) else {
                    return undecidable("an input image left the family");
                };
                let u = u.as_symbolic(&f.codomain)?;
                let v = v.as_symbolic(&g.codomain)?;
                match u.sub(&v)?.abs_exact() {
                    Some(a) => Ok(Pushed::Exact(PointSequence::Symbolic(a))),
                    None => undecidable("the sign of f(xn) - g(yn) is not settled by the closed form"),
                }
            }
            MapForm::DistanceToPoint { metric, anchor } => match metric.distance_sequence(s, anchor)? {
                Some(d) => Ok(Pushed::Exact(PointSequence::Symbolic(d))),
                None => undecidable("the distance sequence leaves the family"),
            },
            MapForm::DistanceToSet { metric, set } => {
                let mut acc: Option<SymbolicSequence> = None;
                for a in set {
                    let Some(d) = metric.distance_sequence(s, a)? else {
                        return undecidable("a distance sequence leaves the family");
                    };
                    acc = match acc {
                        None => Some(d),
                        Some(m) => match m.meet_exact(&d) {
                            Some(x) => Some(x),
                            None => return undecidable("the nearest point of the set changes along the sequence"),
                        },
                    };
                }
                Ok(Pushed::Exact(PointSequence::Symbolic(acc.expect("nonempty set"))))
            }
        }
    }
}

impl fmt::Display for MapDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.form {
            MapForm::Table(pairs) => {
                let items: Vec<String> = pairs.iter().map(|(x, y)| format!("{x}->{y}")).collect();
                write!(f, "table{{{}}}", items.join(","))
            }
            MapForm::Affine { slope, intercept } => {
                if slope.len() == 1 {
                    write!(f, "affine:{},{}", slope[0], intercept[0])
                } else {
                    let s: Vec<String> = slope.iter().map(|v| v.to_string()).collect();
                    let b: Vec<String> = intercept.iter().map(|v| v.to_string()).collect();
                    write!(f, "affine:[{}],[{}]", s.join(","), b.join(","))
                }
            }
            MapForm::Pair(a, b) => write!(f, "pair({a},{b})"),
            MapForm::ProductMap(a, b) => write!(f, "product-map({a},{b})"),
            MapForm::AbsDiff(a, b) => write!(f, "absdiff({a},{b})"),
            MapForm::DistanceToPoint { anchor, .. } => write!(f, "dist-to:{anchor}"),
            MapForm::DistanceToSet { set, .. } => {
                let items: Vec<String> = set.iter().map(|p| p.to_string()).collect();
                write!(f, "dist-to-set[{}]", items.join(","))
            }
            MapForm::Projection(Side::Left) => write!(f, "proj:left"),
            MapForm::Projection(Side::Right) => write!(f, "proj:right"),
        }
    }
}
