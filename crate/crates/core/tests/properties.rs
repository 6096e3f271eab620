use ecslab_core::algebra::{poly_det, rat};
use ecslab_core::geometry::{self, covariant_derivative, Geometry};
use ecslab_core::olszak::olszak_rank_at;
use ecslab_core::roter::{build_metric, predicted_rank};
use ecslab_core::sample::{random_params, RankClass};
use ecslab_core::{MultiPoly, Point, Rational, RationalMatrix};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const NVARS: usize = 3;

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u32..=3, NVARS), rational()), 0..6)
        .prop_map(|terms| MultiPoly::from_terms(NVARS, terms))
}

fn point() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), NVARS)
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec(-3i64..=3, rows * cols).prop_map(move |xs| {
        RationalMatrix::new(rows, cols, xs.into_iter().map(|x| rat(x, 1)).collect()).unwrap()
    })
}

proptest! {
    #[test]
    fn partials_commute(p in poly(), j in 0..NVARS, k in 0..NVARS) {
        let a = p.partial(j).unwrap().partial(k).unwrap();
        let b = p.partial(k).unwrap().partial(j).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn leibniz_rule(p in poly(), q in poly(), k in 0..NVARS) {
        let lhs = (&p * &q).partial(k).unwrap();
        let rhs = &(&p.partial(k).unwrap() * &q) + &(&p * &q.partial(k).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(p in poly(), q in poly(), x in point()) {
        let (pv, qv) = (p.eval(&x).unwrap(), q.eval(&x).unwrap());
        prop_assert_eq!((&p + &q).eval(&x).unwrap(), &pv + &qv);
        prop_assert_eq!((&p * &q).eval(&x).unwrap(), &pv * &qv);
    }

    #[test]
    fn kernel_vectors_are_annihilated(m in (1usize..5, 1usize..6).prop_flat_map(|(r, c)| matrix(r, c))) {
        let kernel = m.kernel();
        prop_assert_eq!(kernel.len(), m.cols() - m.rank());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|x| *x == rat(0, 1)));
        }
        // reduced echelon: leading entries are 1 and strictly increase
        let mut last = None;
        for v in &kernel {
            let lead = v.iter().position(|x| *x != rat(0, 1)).unwrap();
            prop_assert_eq!(&v[lead], &rat(1, 1));
            prop_assert!(last.is_none_or(|l| lead > l));
            last = Some(lead);
        }
        if !kernel.is_empty() {
            let k = RationalMatrix::from_rows(kernel.clone()).unwrap();
            prop_assert_eq!(k.rank(), kernel.len());
        }
    }

    #[test]
    fn determinant_is_multiplicative(a in matrix(3, 3), b in matrix(3, 3)) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.det().unwrap(), a.det().unwrap() * b.det().unwrap());
    }

    #[test]
    fn polynomial_det_agrees_on_constants(a in matrix(4, 4)) {
        let pm: Vec<Vec<MultiPoly>> = a
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|c| MultiPoly::constant(2, c)).collect())
            .collect();
        prop_assert_eq!(poly_det(&pm).unwrap().as_constant().unwrap(), a.det().unwrap());
    }

    #[test]
    fn polynomial_det_commutes_with_evaluation(
        entries in prop::collection::vec(poly(), 9),
        x in point(),
    ) {
        let pm: Vec<Vec<MultiPoly>> = entries.chunks(3).map(<[MultiPoly]>::to_vec).collect();
        let det = poly_det(&pm).unwrap();
        let values: Vec<Rational> = entries.iter().map(|e| e.eval(&x).unwrap()).collect();
        let m = RationalMatrix::new(3, 3, values).unwrap();
        prop_assert_eq!(det.eval(&x).unwrap(), m.det().unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    /// Random valid data of either rank class: all curvature identities hold
    /// and the computed rank matches the predicted one.
    #[test]
    fn random_roter_metrics(seed in any::<u64>(), n in 4usize..=6, rank_one in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let class = if rank_one { RankClass::One } else { RankClass::AtLeastTwo };
        let p = random_params(&mut rng, n, class);
        let geo = Geometry::from_metric(build_metric(&p).unwrap()).unwrap();
        prop_assert!(geometry::check_christoffel_symmetry(&geo.christoffel).is_none());
        prop_assert!(geometry::check_curvature_symmetries(&geo.riemann.lowered).is_none());
        prop_assert!(geometry::check_first_bianchi(&geo.riemann.lowered).is_none());
        prop_assert!(geometry::check_trace_free(&geo.weyl, &geo.inverse).is_none());
        prop_assert!(geo.scalar.is_zero());
        let nw = covariant_derivative(&geo.weyl, &geo.christoffel).unwrap();
        prop_assert!(nw.is_zero());
        let pt = Point::new((0..n).map(|k| rat(k as i64 - 1, 2)).collect());
        let r = olszak_rank_at(&geo.weyl, &pt).unwrap();
        prop_assert_eq!(r.d, predicted_rank(&p).unwrap());
    }
}
