mod common;

use common::*;
use ecslab_core::algebra::rat;
use ecslab_core::geometry::Geometry;
use ecslab_core::olszak::{
    assemble_wedge_system, kernel_is_dx1_line, null_parallel_check, olszak_rank_at,
    olszak_rank_from_values, rank1_kernel_structure, rank_constancy, unit_covector,
    KernelStructure,
};
use ecslab_core::roter::{build_metric, predicted_rank};
use ecslab_core::{MultiPoly, Point, Rational, RationalMatrix};

fn geometry_of(p: &ecslab_core::roter::RoterParams) -> Geometry {
    Geometry::from_metric(build_metric(p).unwrap()).unwrap()
}

/// Independent oracle: the 3-form `ζ ∧ ξ` by explicit antisymmetrisation
/// over all permutations of three slots, `(ζ∧ξ)(a,b,c) = Σ_σ sgn(σ) ζ(σa,σb) ξ(σc) / 2`.
fn wedge_vanishes(w: &[Rational], n: usize, xi: &[Rational]) -> bool {
    let at = |i: usize, j: usize, a: usize, b: usize| w[((i * n + j) * n + a) * n + b].clone();
    let perms: [([usize; 3], i64); 6] = [
        ([0, 1, 2], 1),
        ([1, 2, 0], 1),
        ([2, 0, 1], 1),
        ([1, 0, 2], -1),
        ([0, 2, 1], -1),
        ([2, 1, 0], -1),
    ];
    for i in 0..n {
        for j in 0..n {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let slots = [a, b, c];
                        let mut total = rat(0, 1);
                        for (p, sign) in perms {
                            let term = at(i, j, slots[p[0]], slots[p[1]]) * &xi[slots[p[2]]];
                            total += term * rat(sign, 1);
                        }
                        if total != rat(0, 1) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// Brute-force kernel dimension: count covectors among all vectors with
/// entries in {-1,0,1} satisfying the oracle, then take the rank of that set.
fn brute_force_kernel_rank(w: &[Rational], n: usize) -> usize {
    let mut good = Vec::new();
    let total = 3usize.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let xi: Vec<Rational> = (0..n)
            .map(|_| {
                let d = (c % 3) as i64 - 1;
                c /= 3;
                rat(d, 1)
            })
            .collect();
        if wedge_vanishes(w, n, &xi) {
            good.extend(xi);
        }
    }
    let rows = good.len() / n;
    RationalMatrix::new(rows, n, good).unwrap().rank()
}

#[test]
fn r1_rank_two_with_expected_kernel() {
    let geo = geometry_of(&case_r1());
    for pt in sample_points(5) {
        let r = olszak_rank_at(&geo.weyl, &pt).unwrap();
        assert_eq!(r.d, 2);
        assert!(!r.degenerate);
        // span{dx¹, dx² + dx⁴}
        assert_eq!(
            r.kernel_basis,
            vec![ints(&[1, 0, 0, 0, 0]), ints(&[0, 1, 0, 1, 0])]
        );
    }
}

#[test]
fn kernel_agrees_with_brute_force_oracle() {
    for (p, expected_d) in [(case_r1(), 2), (case_r2(), 1), (case_r3(), 1)] {
        let n = p.dim();
        let geo = geometry_of(&p);
        let pt = sample_points(n)[2].clone();
        let w = geo.weyl.evaluate_at(&pt).unwrap();
        assert_eq!(brute_force_kernel_rank(&w, n), expected_d);
        let r = olszak_rank_from_values(&w, pt).unwrap();
        assert_eq!(r.d, expected_d);
        for v in &r.kernel_basis {
            assert!(wedge_vanishes(&w, n, v));
        }
    }
}

#[test]
fn rank_matches_prediction_for_reference_cases() {
    for p in [case_r1(), case_r2(), case_r3()] {
        let geo = geometry_of(&p);
        let pt = sample_points(p.dim())[0].clone();
        let r = olszak_rank_at(&geo.weyl, &pt).unwrap();
        assert_eq!(r.d, predicted_rank(&p).unwrap());
    }
}

#[test]
fn r2_and_r3_kernel_is_dx1() {
    for p in [case_r2(), case_r3()] {
        let geo = geometry_of(&p);
        for pt in sample_points(p.dim()) {
            let r = olszak_rank_at(&geo.weyl, &pt).unwrap();
            assert!(kernel_is_dx1_line(&r), "{:?}", r.kernel_basis);
        }
    }
}

#[test]
fn r1_wedge_system_reduces_to_stated_conditions() {
    // ξ₅ = 0 and a_{λμ} ξ_ν = a_{λν} ξ_μ for all λ, μ, ν, as a linear system
    let p = case_r1();
    let n = 5;
    let geo = geometry_of(&p);
    let w = geo.weyl.evaluate_at(&point(&[0, 1, 0, 0, 0])).unwrap();
    let system = assemble_wedge_system(&w, n).unwrap().dedup();

    let a = p.a_block();
    let mut rows: Vec<Rational> = unit_covector(n, n - 1);
    for l in 0..3 {
        for m in 0..3 {
            for nu in 0..3 {
                let mut row = vec![rat(0, 1); n];
                row[nu + 1] += a[(l, m)].clone();
                row[m + 1] -= a[(l, nu)].clone();
                rows.extend(row);
            }
        }
    }
    let stated = RationalMatrix::new(rows.len() / n, n, rows).unwrap();
    assert_eq!(stated.kernel(), system.kernel());
}

#[test]
fn r2_conditions_force_all_but_xi1_to_vanish() {
    let geo = geometry_of(&case_r2());
    let r = olszak_rank_at(&geo.weyl, &point(&[4, -1, 2, 3, 9])).unwrap();
    assert_eq!(r.kernel_basis, vec![unit_covector(5, 0)]);
}

#[test]
fn dedup_does_not_change_kernel() {
    for p in [case_r1(), case_r2(), case_r3()] {
        let n = p.dim();
        let geo = geometry_of(&p);
        let w = geo.weyl.evaluate_at(&sample_points(n)[3]).unwrap();
        let system = assemble_wedge_system(&w, n).unwrap();
        let c2 = n * (n - 1) / 2;
        let c3 = n * (n - 1) * (n - 2) / 6;
        assert_eq!(system.rows.rows(), c2 * c3);
        let deduped = system.dedup();
        assert!(deduped.rows.rows() < system.rows.rows());
        assert_eq!(system.kernel(), deduped.kernel());
    }
}

#[test]
fn kernel_invariant_under_weyl_rescaling() {
    let geo = geometry_of(&case_r1());
    let pt = point(&[1, 2, 3, 4, 5]);
    let w = geo.weyl.evaluate_at(&pt).unwrap();
    let base = olszak_rank_from_values(&w, pt.clone()).unwrap();
    for c in [rat(-1, 1), rat(3, 7), rat(-5, 2)] {
        let scaled: Vec<Rational> = w.iter().map(|x| x * &c).collect();
        let r = olszak_rank_from_values(&scaled, pt.clone()).unwrap();
        assert_eq!(r.kernel_basis, base.kernel_basis);
    }
}

#[test]
fn rank_constancy_over_samples() {
    for (p, d) in [(case_r1(), 2), (case_r2(), 1)] {
        let geo = geometry_of(&p);
        let report = rank_constancy(&geo.weyl, &sample_points(5)).unwrap();
        assert!(report.passed());
        assert!(report.results.iter().all(|r| r.d == d));
    }
}

#[test]
fn null_parallel_facts_hold() {
    for p in [case_r1(), case_r2(), case_r3()] {
        let geo = geometry_of(&p);
        let results: Vec<_> = sample_points(p.dim())
            .iter()
            .map(|pt| olszak_rank_at(&geo.weyl, pt).unwrap())
            .collect();
        let report = null_parallel_check(&geo.metric, &geo.christoffel, &results);
        assert!(report.all_hold(), "{report:?}");
        assert!(report.failures.is_empty());
    }
}

#[test]
fn perturbed_gnn_is_not_null() {
    let p = case_r1();
    let geo = geometry_of(&p);
    let mut g = geo.metric.clone();
    g.set(&[4, 4], MultiPoly::one(5));
    let results = vec![olszak_rank_at(&geo.weyl, &point(&[0, 1, 0, 0, 0])).unwrap()];
    let report = null_parallel_check(&g, &geo.christoffel, &results);
    assert!(!report.is_null);
    assert!(report.is_parallel);
    assert!(!report.dual_is_dx1);
    assert_eq!(report.failures[0], "g_{5,5} = 1, expected 0");
}

#[test]
fn r1_kernel_structure() {
    let p = case_r1();
    let geo = geometry_of(&p);
    let r = olszak_rank_at(&geo.weyl, &point(&[0, 1, 0, 0, 0])).unwrap();
    match rank1_kernel_structure(p.a_block(), &r) {
        KernelStructure::Pass { direction } => assert_eq!(direction, ints(&[0, 1, 0, 1, 0])),
        other => panic!("{other:?}"),
    }
}

#[test]
fn kernel_structure_skipped_for_higher_rank() {
    let p = case_r2();
    let geo = geometry_of(&p);
    let r = olszak_rank_at(&geo.weyl, &point(&[0, 1, 0, 0, 0])).unwrap();
    assert!(matches!(
        rank1_kernel_structure(p.a_block(), &r),
        KernelStructure::Skipped(_)
    ));
}

#[test]
fn rank_one_structure_is_scale_invariant() {
    // A = 2 v vᵀ with v = (1,0,1) under G = diag(1,1,−1): the row (2,0,2)
    // and the kernel direction are still proportional.
    let p = ecslab_core::roter::RoterParams::from_f_coeffs(
        5,
        &ints(&[1, 1]),
        mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -1]]),
        mat(&[&[2, 0, 2], &[0, 0, 0], &[2, 0, 2]]),
    );
    let geo = geometry_of(&p);
    let r = olszak_rank_at(&geo.weyl, &point(&[2, -1, 1, 3, 0])).unwrap();
    assert_eq!(r.d, 2);
    assert!(matches!(
        rank1_kernel_structure(p.a_block(), &r),
        KernelStructure::Pass { .. }
    ));
}

#[test]
fn conformally_flat_point_is_degenerate() {
    let n = 5;
    let flat = ecslab_core::TensorField::zeros(n, vec![ecslab_core::Variance::Lower; 4]);
    let r = olszak_rank_at(&flat, &Point::new(vec![rat(0, 1); n])).unwrap();
    assert!(r.degenerate);
    assert_eq!(r.d, n);
    assert_eq!(r.kernel_basis.len(), n);
}
