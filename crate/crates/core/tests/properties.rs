use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;

use vecmetric::operators::MonotoneOperator;
use vecmetric::point::Point;
use vecmetric::riesz::{RieszSpace, VectorElement};
use vecmetric::scalar::Scalar;
use vecmetric::sequence::{DecreasingWitness, Shape, SymbolicSequence};
use vecmetric::vmetric::VectorMetric;

fn oracle(s: &Scalar) -> BigRational {
    BigRational::new(s.numer().clone(), s.denom().clone())
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| Scalar::ratio(p, q))
}

/// Includes large powers so the reduced arithmetic paths see big operands.
fn wide_scalar() -> impl Strategy<Value = Scalar> {
    (scalar(), 0u64..60).prop_map(|(s, e)| s.pow(e))
}

fn positive_scalar() -> impl Strategy<Value = Scalar> {
    (1i64..=30, 1i64..=8).prop_map(|(p, q)| Scalar::ratio(p, q))
}

fn space() -> impl Strategy<Value = RieszSpace> {
    prop_oneof![
        Just(RieszSpace::Reals),
        Just(RieszSpace::Coordinate(2)),
        Just(RieszSpace::Coordinate(3)),
        Just(RieszSpace::LexPlane),
        Just(RieszSpace::product(RieszSpace::Reals, RieszSpace::LexPlane)),
    ]
}

fn element_in(space: RieszSpace) -> impl Strategy<Value = VectorElement> {
    prop::collection::vec(scalar(), space.dim()).prop_map(move |c| VectorElement::new(space.clone(), c).unwrap())
}

fn triple() -> impl Strategy<Value = (VectorElement, VectorElement, VectorElement)> {
    space().prop_flat_map(|s| (element_in(s.clone()), element_in(s.clone()), element_in(s)))
}

fn decaying_shape() -> impl Strategy<Value = Shape> {
    prop_oneof![
        Just(Shape::Harmonic),
        (0i64..5, 1i64..6).prop_filter_map("q < 1", |(p, q)| Shape::geometric(Scalar::ratio(p, q)).ok()),
        (2u64..8).prop_map(Shape::FiniteSupport),
    ]
}

fn sequence_in(space: RieszSpace, positive: bool) -> impl Strategy<Value = SymbolicSequence> {
    let coef = if positive {
        prop::collection::vec(positive_scalar(), space.dim()).boxed()
    } else {
        prop::collection::vec(scalar(), space.dim()).boxed()
    };
    let sp = space.clone();
    (
        element_in(space.clone()),
        prop::collection::vec((coef, decaying_shape()), 1..4),
    )
        .prop_map(move |(offset, terms)| {
            let offset = if positive { sp.zero() } else { offset };
            let terms = terms
                .into_iter()
                .map(|(c, s)| (VectorElement::new(sp.clone(), c).unwrap(), s))
                .collect();
            SymbolicSequence::new(offset, terms).unwrap()
        })
}

fn archimedean_space() -> impl Strategy<Value = RieszSpace> {
    prop_oneof![Just(RieszSpace::Reals), Just(RieszSpace::Coordinate(2))]
}

fn leq(a: &VectorElement, b: &VectorElement) -> bool {
    a.leq(b).unwrap()
}

proptest! {
    #[test]
    fn scalar_arithmetic_matches_bigrational(a in wide_scalar(), b in wide_scalar()) {
        let (x, y) = (oracle(&a), oracle(&b));
        for (got, want) in [(&a + &b, &x + &y), (&a - &b, &x - &y), (&a * &b, &x * &y)] {
            let reduced = oracle(&got);
            prop_assert_eq!(&reduced, &want);
            prop_assert!(got.denom().is_positive());
            prop_assert_eq!(reduced.numer(), got.numer());
        }
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn scalar_division_round_trips(a in wide_scalar(), b in wide_scalar()) {
        prop_assume!(!b.is_zero());
        let q = a.checked_div(&b).unwrap();
        prop_assert_eq!(&q * &b, a);
    }

    #[test]
    fn lattice_laws((a, b, c) in triple()) {
        let j = a.join(&b).unwrap();
        let m = a.meet(&b).unwrap();
        prop_assert_eq!(&j, &b.join(&a).unwrap());
        prop_assert_eq!(&m, &b.meet(&a).unwrap());
        prop_assert_eq!(j.join(&c).unwrap(), a.join(&b.join(&c).unwrap()).unwrap());
        prop_assert_eq!(m.meet(&c).unwrap(), a.meet(&b.meet(&c).unwrap()).unwrap());
        prop_assert_eq!(&a.join(&m).unwrap(), &a);
        prop_assert_eq!(&a.meet(&j).unwrap(), &a);
        prop_assert!(leq(&a, &j) && leq(&b, &j));
        prop_assert!(leq(&m, &a) && leq(&m, &b));
    }

    #[test]
    fn absolute_value_laws((a, b, c) in triple()) {
        let zero = a.space().zero();
        prop_assert!(leq(&zero, &a.abs()));
        prop_assert_eq!(a.abs(), a.neg().abs());
        let lhs = a.add(&b).unwrap().abs();
        prop_assert!(leq(&lhs, &a.abs().add(&b.abs()).unwrap()));
        let birkhoff = a.join(&c).unwrap().sub(&b.join(&c).unwrap()).unwrap().abs();
        prop_assert!(leq(&birkhoff, &a.sub(&b).unwrap().abs()));
    }

    #[test]
    fn order_is_partial_and_lex_total((a, b, c) in triple()) {
        prop_assert!(leq(&a, &a));
        if leq(&a, &b) && leq(&b, &a) {
            prop_assert_eq!(&a, &b);
        }
        if leq(&a, &b) && leq(&b, &c) {
            prop_assert!(leq(&a, &c));
        }
        if *a.space() == RieszSpace::LexPlane {
            prop_assert!(leq(&a, &b) || leq(&b, &a));
        }
    }

    #[test]
    fn scaling_round_trips(a in space().prop_flat_map(element_in), c in scalar()) {
        prop_assume!(!c.is_zero());
        prop_assert_eq!(a.scale(&c).scale(&c.recip().unwrap()), a);
    }

    #[test]
    fn witnesses_decrease(s in archimedean_space().prop_flat_map(|e| sequence_in(e, true))) {
        let w = DecreasingWitness::new(s).unwrap();
        prop_assert_eq!(w.spot_check_decreasing(1000), Ok(()));
    }

    #[test]
    fn witness_sums_are_witnesses(
        (a, b) in archimedean_space().prop_flat_map(|e| (sequence_in(e.clone(), true), sequence_in(e, true)))
    ) {
        let a = DecreasingWitness::new(a).unwrap();
        let b = DecreasingWitness::new(b).unwrap();
        let sum = a.sum(&b).unwrap();
        prop_assert!(DecreasingWitness::new(sum.sequence().clone()).is_ok());
        let (va, vb, vs) = (a.values(200), b.values(200), sum.values(200));
        for i in 0..200 {
            prop_assert_eq!(&va[i].add(&vb[i]).unwrap(), &vs[i]);
        }
    }

    #[test]
    fn o_convergence_witness_bounds(s in archimedean_space().prop_flat_map(|e| sequence_in(e, false))) {
        let b = s.offset().clone();
        let w = s.o_converges_to(&b).unwrap();
        let (sv, wv) = (s.values(1000), w.values(1000));
        for (x, a) in sv.iter().zip(&wv) {
            prop_assert!(leq(&x.sub(&b).unwrap().abs(), a));
        }
    }

    #[test]
    fn o_cauchy_witness_bounds(s in archimedean_space().prop_flat_map(|e| sequence_in(e, false))) {
        let w = s.o_cauchy().unwrap();
        let sv = s.values(120);
        let wv = w.values(60);
        for n in 0..60 {
            for p in 1..=60 {
                prop_assert!(leq(&sv[n].sub(&sv[n + p]).unwrap().abs(), &wv[n]));
            }
        }
    }

    #[test]
    fn evaluation_agrees_with_batch(s in space().prop_flat_map(|e| sequence_in(e, false))) {
        let vals = s.values(40);
        for n in 1..=40u64 {
            prop_assert_eq!(&s.eval_at(n).unwrap(), &vals[n as usize - 1]);
        }
    }

    #[test]
    fn normalization_is_idempotent(s in space().prop_flat_map(|e| sequence_in(e, false))) {
        let again = SymbolicSequence::new(
            s.offset().clone(),
            s.terms().iter().map(|t| (t.coefficient.clone(), t.shape.clone())).collect(),
        )
        .unwrap();
        prop_assert_eq!(&again, &s);
    }

    #[test]
    fn catalog_metrics_satisfy_triangle(
        (a, b, c, e) in (positive_scalar(), positive_scalar(), positive_scalar(), positive_scalar()),
        pts in prop::collection::vec((scalar(), scalar()), 3),
    ) {
        let line: Vec<Point> = pts.iter().map(|(x, _)| Point::from_element(&VectorElement::real(x.clone()))).collect();
        let plane: Vec<Point> = pts
            .iter()
            .map(|(x, y)| Point::from_element(&RieszSpace::Coordinate(2).element(vec![x.clone(), y.clone()]).unwrap()))
            .collect();
        let metrics = [
            (VectorMetric::weighted_abs(a.clone()).unwrap(), &line),
            (VectorMetric::pair_abs(b.clone(), c.clone()).unwrap(), &line),
            (VectorMetric::weighted_sum(a.clone(), b.clone()).unwrap(), &plane),
            (VectorMetric::weighted_max(a, b).unwrap(), &plane),
            (VectorMetric::coord_pair(c, e).unwrap(), &plane),
        ];
        for (m, p) in metrics {
            let d = |i: usize, j: usize| m.distance(&p[i], &p[j]).unwrap();
            prop_assert!(leq(&d(0, 1), &d(0, 2).add(&d(1, 2)).unwrap()));
            prop_assert_eq!(d(0, 1), d(1, 0));
            prop_assert!(d(0, 0).is_zero());
        }
    }

    #[test]
    fn matrix_positivity_matches_cone(rows in prop::collection::vec(prop::collection::vec(-3i64..=4, 2), 1..=3)) {
        let target = if rows.len() == 1 { RieszSpace::Reals } else { RieszSpace::Coordinate(rows.len()) };
        let m = rows.iter().map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect()).collect();
        let op = MonotoneOperator::matrix(RieszSpace::Coordinate(2), target.clone(), m).unwrap();
        let c = op.classify().unwrap();
        let grid = [[1, 0], [0, 1], [1, 1], [3, 1], [1, 3], [0, 0]];
        let preserves = grid.iter().all(|g| {
            let x = RieszSpace::Coordinate(2).ints(g);
            leq(&target.zero(), &op.apply(&x).unwrap())
        });
        prop_assert_eq!(c.positive, rows.iter().flatten().all(|&v| v >= 0));
        prop_assert_eq!(c.positive, preserves);
        prop_assert!(!c.sigma_order_continuous || c.order_bounded);
    }

    #[test]
    fn combos_are_sigma_continuous_and_bounded(w in prop::collection::vec(positive_scalar(), 2..4), max in any::<bool>()) {
        let src = RieszSpace::Coordinate(w.len());
        let op = if max { MonotoneOperator::max_combo(src, w) } else { MonotoneOperator::sum_combo(src, w) }.unwrap();
        let c = op.classify().unwrap();
        prop_assert!(c.positive && c.sigma_order_continuous && c.order_bounded);
    }
}
