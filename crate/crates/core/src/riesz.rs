//! Catalog of Riesz-space instances with exact lattice and linear operations.
//!
//! The catalog is closed: the reals, `Q^n` with the coordinatewise order, the
//! lexicographically ordered plane, and binary products of these. Product
//! elements are stored flat; the left factor occupies the first
//! `left.dim()` coordinates.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::literal::Cursor;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RieszSpace {
    Reals,
    Coordinate(usize),
    LexPlane,
    Product(Box<RieszSpace>, Box<RieszSpace>),
}

impl RieszSpace {
    pub fn product(left: RieszSpace, right: RieszSpace) -> RieszSpace {
        RieszSpace::Product(Box::new(left), Box::new(right))
    }

    pub fn dim(&self) -> usize {
        match self {
            RieszSpace::Reals => 1,
            RieszSpace::Coordinate(n) => *n,
            RieszSpace::LexPlane => 2,
            RieszSpace::Product(l, r) => l.dim() + r.dim(),
        }
    }

    pub fn is_archimedean(&self) -> bool {
        match self {
            RieszSpace::Reals | RieszSpace::Coordinate(_) => true,
            RieszSpace::LexPlane => false,
            RieszSpace::Product(l, r) => l.is_archimedean() && r.is_archimedean(),
        }
    }

    /// Model-level Dedekind σ-completeness: every supremum the crate takes
    /// (finite sets, witness families) exists and is computed in closed form.
    pub fn sigma_complete_model(&self) -> bool {
        self.is_archimedean()
    }

    /// True when the order is the plain coordinatewise order on all
    /// coordinates (no lexicographic factor anywhere).
    pub fn is_coordinatewise(&self) -> bool {
        self.is_archimedean()
    }

    pub fn zero(&self) -> VectorElement {
        VectorElement {
            space: self.clone(),
            coords: vec![Scalar::zero(); self.dim()],
        }
    }

    /// The element with every coordinate equal to one.
    pub fn ones(&self) -> VectorElement {
        VectorElement {
            space: self.clone(),
            coords: vec![Scalar::one(); self.dim()],
        }
    }

    pub fn element(&self, coords: Vec<Scalar>) -> Result<VectorElement> {
        VectorElement::new(self.clone(), coords)
    }

    /// Convenience constructor from integers; panics on a length mismatch.
    pub fn ints(&self, coords: &[i64]) -> VectorElement {
        self.element(coords.iter().map(|&c| Scalar::from_int(c)).collect())
            .expect("coordinate count matches dimension")
    }

    /// The Archimedean verdict together with its justification. For a space
    /// with a lexicographic factor the witness is `a = (1,0)` (embedded in
    /// that factor): every `(0,q)` with `q > 0` lies below all of `n⁻¹a`, so
    /// `inf n⁻¹a ≠ 0`.
    pub fn archimedean_verdict(&self) -> ArchimedeanVerdict {
        match self.lex_offset() {
            None => ArchimedeanVerdict {
                archimedean: true,
                witness: None,
            },
            Some(at) => {
                let mut a = vec![Scalar::zero(); self.dim()];
                a[at] = Scalar::one();
                let mut lb = vec![Scalar::zero(); self.dim()];
                lb[at + 1] = Scalar::one();
                ArchimedeanVerdict {
                    archimedean: false,
                    witness: Some(LowerBoundWitness {
                        element: VectorElement {
                            space: self.clone(),
                            coords: a,
                        },
                        lower_bound_direction: VectorElement {
                            space: self.clone(),
                            coords: lb,
                        },
                    }),
                }
            }
        }
    }

    /// Flat offset of the first lexicographic factor, if any.
    fn lex_offset(&self) -> Option<usize> {
        match self {
            RieszSpace::Reals | RieszSpace::Coordinate(_) => None,
            RieszSpace::LexPlane => Some(0),
            RieszSpace::Product(l, r) => l
                .lex_offset()
                .or_else(|| r.lex_offset().map(|k| k + l.dim())),
        }
    }

    pub(crate) fn leq_slice(&self, a: &[Scalar], b: &[Scalar]) -> bool {
        match self {
            RieszSpace::Reals | RieszSpace::Coordinate(_) => a.iter().zip(b).all(|(x, y)| x <= y),
            RieszSpace::LexPlane => a[0] < b[0] || (a[0] == b[0] && a[1] <= b[1]),
            RieszSpace::Product(l, r) => {
                let k = l.dim();
                l.leq_slice(&a[..k], &b[..k]) && r.leq_slice(&a[k..], &b[k..])
            }
        }
    }

    pub(crate) fn join_slice(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        match self {
            RieszSpace::Reals | RieszSpace::Coordinate(_) => a
                .iter()
                .zip(b)
                .map(|(x, y)| x.clone().max(y.clone()))
                .collect(),
            RieszSpace::LexPlane => {
                if self.leq_slice(a, b) {
                    b.to_vec()
                } else {
                    a.to_vec()
                }
            }
            RieszSpace::Product(l, r) => {
                let k = l.dim();
                let mut out = l.join_slice(&a[..k], &b[..k]);
                out.extend(r.join_slice(&a[k..], &b[k..]));
                out
            }
        }
    }

    pub(crate) fn meet_slice(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        match self {
            RieszSpace::Reals | RieszSpace::Coordinate(_) => a
                .iter()
                .zip(b)
                .map(|(x, y)| x.clone().min(y.clone()))
                .collect(),
            RieszSpace::LexPlane => {
                if self.leq_slice(a, b) {
                    a.to_vec()
                } else {
                    b.to_vec()
                }
            }
            RieszSpace::Product(l, r) => {
                let k = l.dim();
                let mut out = l.meet_slice(&a[..k], &b[..k]);
                out.extend(r.meet_slice(&a[k..], &b[k..]));
                out
            }
        }
    }

    fn write_literal(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RieszSpace::Reals => write!(f, "reals"),
            RieszSpace::Coordinate(n) => write!(f, "coord:{n}"),
            RieszSpace::LexPlane => write!(f, "lex2"),
            RieszSpace::Product(l, r) => write!(f, "product[{l},{r}]"),
        }
    }

    pub(crate) fn parse_from(c: &mut Cursor<'_>) -> Result<RieszSpace> {
        let word = c.ident()?;
        match word {
            "reals" => Ok(RieszSpace::Reals),
            "lex2" => Ok(RieszSpace::LexPlane),
            "coord" => {
                c.expect(':')?;
                let n = c.uint()? as usize;
                if n == 0 {
                    return Err(Error::InvalidParameter("coord:0 has no coordinates".into()));
                }
                Ok(RieszSpace::Coordinate(n))
            }
            "product" => {
                c.expect('[')?;
                let l = Self::parse_from(c)?;
                c.expect(',')?;
                let r = Self::parse_from(c)?;
                c.expect(']')?;
                Ok(RieszSpace::product(l, r))
            }
            other => Err(Error::Parse(format!("unknown space kind `{other}`"))),
        }
    }
}

impl fmt::Display for RieszSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_literal(f)
    }
}

impl fmt::Debug for RieszSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_literal(f)
    }
}

impl FromStr for RieszSpace {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut c = Cursor::new(s);
        let space = Self::parse_from(&mut c)?;
        c.finish()?;
        Ok(space)
    }
}

impl Serialize for RieszSpace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RieszSpace {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Stored justification that a space is not Archimedean.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArchimedeanVerdict {
    pub archimedean: bool,
    pub witness: Option<LowerBoundWitness>,
}

/// `element ≥ 0` such that `q · lower_bound_direction ≤ n⁻¹ · element` for
/// every `n ≥ 1` and every `q > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBoundWitness {
    pub element: VectorElement,
    pub lower_bound_direction: VectorElement,
}

impl LowerBoundWitness {
    /// Exact spot check of the lower-bound claim for `n ≤ max_n` and the given
    /// positive `q` values. Returns the first `(n, q)` that breaks it.
    pub fn verify(&self, max_n: u64, qs: &[Scalar]) -> std::result::Result<(), (u64, Scalar)> {
        for q in qs {
            let lb = self.lower_bound_direction.scale(q);
            if !q.is_positive() || lb.is_zero() {
                return Err((0, q.clone()));
            }
            for n in 1..=max_n {
                let term = self.element.scale(&Scalar::ratio(1, n as i64));
                if !lb.leq(&term).unwrap_or(false) {
                    return Err((n, q.clone()));
                }
            }
        }
        Ok(())
    }
}

/// A point of a catalog Riesz space.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VectorElement {
    space: RieszSpace,
    coords: Vec<Scalar>,
}

impl VectorElement {
    pub fn new(space: RieszSpace, coords: Vec<Scalar>) -> Result<Self> {
        if coords.len() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                got: coords.len(),
            });
        }
        Ok(VectorElement { space, coords })
    }

    pub fn real(value: Scalar) -> Self {
        VectorElement {
            space: RieszSpace::Reals,
            coords: vec![value],
        }
    }

    pub fn space(&self) -> &RieszSpace {
        &self.space
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn coord(&self, i: usize) -> &Scalar {
        &self.coords[i]
    }

    fn same_space(&self, other: &VectorElement) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch {
                left: self.space.to_string(),
                right: other.space.to_string(),
            });
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    /// `self ≥ 0` in the space order.
    pub fn is_positive(&self) -> bool {
        let zero = vec![Scalar::zero(); self.coords.len()];
        self.space.leq_slice(&zero, &self.coords)
    }

    pub fn leq(&self, other: &VectorElement) -> Result<bool> {
        self.same_space(other)?;
        Ok(self.space.leq_slice(&self.coords, &other.coords))
    }

    /// Strict order: `self ≤ other` and `self ≠ other`.
    pub fn lt(&self, other: &VectorElement) -> Result<bool> {
        Ok(self.leq(other)? && self != other)
    }

    pub fn join(&self, other: &VectorElement) -> Result<VectorElement> {
        self.same_space(other)?;
        Ok(VectorElement {
            space: self.space.clone(),
            coords: self.space.join_slice(&self.coords, &other.coords),
        })
    }

    pub fn meet(&self, other: &VectorElement) -> Result<VectorElement> {
        self.same_space(other)?;
        Ok(VectorElement {
            space: self.space.clone(),
            coords: self.space.meet_slice(&self.coords, &other.coords),
        })
    }

    pub fn neg(&self) -> VectorElement {
        VectorElement {
            space: self.space.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    /// `|a| = a ∨ (−a)`.
    pub fn abs(&self) -> VectorElement {
        self.join(&self.neg()).expect("same space")
    }

    pub fn add(&self, other: &VectorElement) -> Result<VectorElement> {
        self.same_space(other)?;
        Ok(VectorElement {
            space: self.space.clone(),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &VectorElement) -> Result<VectorElement> {
        self.same_space(other)?;
        Ok(VectorElement {
            space: self.space.clone(),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> VectorElement {
        VectorElement {
            space: self.space.clone(),
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    /// Element of `left × right` from its two factors.
    pub fn pair(left: &VectorElement, right: &VectorElement) -> VectorElement {
        let mut coords = left.coords.clone();
        coords.extend(right.coords.iter().cloned());
        VectorElement {
            space: RieszSpace::product(left.space.clone(), right.space.clone()),
            coords,
        }
    }

    /// Factors of a product-space element.
    pub fn split(&self) -> Result<(VectorElement, VectorElement)> {
        match &self.space {
            RieszSpace::Product(l, r) => {
                let k = l.dim();
                Ok((
                    VectorElement {
                        space: (**l).clone(),
                        coords: self.coords[..k].to_vec(),
                    },
                    VectorElement {
                        space: (**r).clone(),
                        coords: self.coords[k..].to_vec(),
                    },
                ))
            }
            other => Err(Error::Incompatible(format!("{other} is not a product space"))),
        }
    }

    /// Parses `3/2` (one-dimensional) or `(1,-2,1/3)` against `space`.
    pub fn parse(space: &RieszSpace, literal: &str) -> Result<VectorElement> {
        let mut c = Cursor::new(literal);
        let coords = if c.eat('(') {
            let v = c.scalar_list(')')?;
            c.expect(')')?;
            v
        } else {
            vec![c.scalar()?]
        };
        c.finish()?;
        VectorElement::new(space.clone(), coords)
    }

    pub fn literal(&self) -> String {
        coords_literal(&self.coords)
    }
}

pub(crate) fn coords_literal(coords: &[Scalar]) -> String {
    if coords.len() == 1 {
        coords[0].to_string()
    } else {
        let inner: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
        format!("({})", inner.join(","))
    }
}

impl fmt::Display for VectorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal())
    }
}

impl fmt::Debug for VectorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.literal(), self.space)
    }
}

/// Least upper bound of a nonempty finite family.
pub fn finite_sup(elements: &[VectorElement]) -> Result<VectorElement> {
    let (first, rest) = elements
        .split_first()
        .ok_or(Error::Empty("finite supremum of an empty family"))?;
    rest.iter().try_fold(first.clone(), |acc, e| acc.join(e))
}

/// Greatest lower bound of a nonempty finite family.
pub fn finite_inf(elements: &[VectorElement]) -> Result<VectorElement> {
    let (first, rest) = elements
        .split_first()
        .ok_or(Error::Empty("finite infimum of an empty family"))?;
    rest.iter().try_fold(first.clone(), |acc, e| acc.meet(e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2(a: i64, b: i64) -> VectorElement {
        RieszSpace::Coordinate(2).ints(&[a, b])
    }

    fn lex(a: i64, b: i64) -> VectorElement {
        RieszSpace::LexPlane.ints(&[a, b])
    }

    #[test]
    fn coordinatewise_order() {
        assert!(!c2(1, 5).leq(&c2(3, 2)).unwrap());
        assert!(c2(1, 2).leq(&c2(3, 2)).unwrap());
        assert!(c2(4, 4).leq(&c2(4, 4)).unwrap());
    }

    #[test]
    fn lexicographic_order() {
        assert!(lex(0, 7).leq(&lex(1, -9)).unwrap());
        assert!(!lex(1, -9).leq(&lex(0, 7)).unwrap());
        assert!(lex(0, 2).leq(&lex(0, 7)).unwrap());
    }

    #[test]
    fn joins_and_meets() {
        assert_eq!(c2(1, 5).join(&c2(3, 2)).unwrap(), c2(3, 5));
        assert_eq!(c2(1, 5).meet(&c2(3, 2)).unwrap(), c2(1, 2));
        assert_eq!(lex(0, 7).join(&lex(1, -9)).unwrap(), lex(1, -9));
        assert_eq!(lex(0, 7).meet(&lex(1, -9)).unwrap(), lex(0, 7));
    }

    #[test]
    fn absolute_values() {
        assert_eq!(c2(-3, 2).abs(), c2(3, 2));
        assert_eq!(c2(0, 0).abs(), c2(0, 0));
        // (-1,5) vs (1,-5): the second is lex-larger
        assert_eq!(lex(-1, 5).abs(), lex(1, -5));
    }

    #[test]
    fn linear_structure() {
        assert_eq!(c2(1, 2).add(&c2(3, 4)).unwrap(), c2(4, 6));
        assert_eq!(c2(4, 6).scale(&Scalar::ratio(1, 2)), c2(2, 3));
        assert!(c2(7, -1).add(&c2(7, -1).neg()).unwrap().is_zero());
    }

    #[test]
    fn space_mismatch_is_rejected() {
        assert!(matches!(c2(1, 1).leq(&lex(1, 1)), Err(Error::SpaceMismatch { .. })));
        assert!(c2(1, 1).join(&RieszSpace::Coordinate(3).ints(&[1, 1, 1])).is_err());
    }

    #[test]
    fn finite_bounds() {
        assert_eq!(finite_sup(&[c2(1, 3), c2(2, 1)]).unwrap(), c2(2, 3));
        assert_eq!(finite_sup(&[c2(1, 3)]).unwrap(), c2(1, 3));
        assert_eq!(finite_inf(&[lex(0, 7), lex(1, -9), lex(0, 2)]).unwrap(), lex(0, 2));
        assert!(matches!(finite_sup(&[]), Err(Error::Empty(_))));
    }

    #[test]
    fn archimedean_classification() {
        assert!(RieszSpace::Coordinate(3).is_archimedean());
        assert!(!RieszSpace::LexPlane.is_archimedean());
        let mixed = RieszSpace::product(RieszSpace::Reals, RieszSpace::LexPlane);
        assert!(!mixed.is_archimedean());
        let v = mixed.archimedean_verdict();
        let w = v.witness.unwrap();
        assert_eq!(w.element.coords(), &[Scalar::zero(), Scalar::one(), Scalar::zero()]);
        assert!(w.verify(200, &[Scalar::ratio(1, 1000), Scalar::from_int(50)]).is_ok());
        assert!(RieszSpace::Coordinate(2).archimedean_verdict().witness.is_none());
    }

    #[test]
    fn product_order_is_factorwise() {
        let p = RieszSpace::product(RieszSpace::Reals, RieszSpace::LexPlane);
        let a = p.ints(&[1, 0, 7]);
        let b = p.ints(&[2, 1, -9]);
        assert!(a.leq(&b).unwrap());
        let c = p.ints(&[0, 1, -9]);
        assert!(!a.leq(&c).unwrap());
        let (l, r) = b.split().unwrap();
        assert_eq!(VectorElement::pair(&l, &r), b);
    }

    #[test]
    fn space_literals_round_trip() {
        for lit in ["reals", "coord:3", "lex2", "product[reals,product[lex2,coord:2]]"] {
            let s: RieszSpace = lit.parse().unwrap();
            assert_eq!(s.to_string(), lit);
        }
        assert!("coord:0".parse::<RieszSpace>().is_err());
        assert!("hilbert".parse::<RieszSpace>().is_err());
    }

    #[test]
    fn element_literals() {
        let e = VectorElement::parse(&RieszSpace::Coordinate(2), "(1/2, -3)").unwrap();
        assert_eq!(e.literal(), "(1/2,-3)");
        assert!(VectorElement::parse(&RieszSpace::Coordinate(2), "4").is_err());
    }
}
