#![allow(dead_code)]

use ecslab_core::algebra::rat;
use ecslab_core::roter::RoterParams;
use ecslab_core::{MultiPoly, Point, Rational, RationalMatrix};

pub fn mat(rows: &[&[i64]]) -> RationalMatrix {
    RationalMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| rat(x, 1)).collect())
            .collect(),
    )
    .unwrap()
}

pub fn ints(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| rat(x, 1)).collect()
}

pub fn point(xs: &[i64]) -> Point {
    Point::new(ints(xs))
}

pub fn x(n: usize, k: usize) -> MultiPoly {
    MultiPoly::var(n, k)
}

/// n=5, f=x¹, G=diag(1,1,−1), A=[[1,0,1],[0,0,0],[1,0,1]] (rank A = 1).
pub fn case_r1() -> RoterParams {
    RoterParams::from_f_coeffs(
        5,
        &ints(&[0, 1]),
        mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -1]]),
        mat(&[&[1, 0, 1], &[0, 0, 0], &[1, 0, 1]]),
    )
}

/// n=5, f=x¹, G=I₃, A=diag(1,1,−2) (rank A = 3).
pub fn case_r2() -> RoterParams {
    RoterParams::from_f_coeffs(
        5,
        &ints(&[0, 1]),
        RationalMatrix::identity(3),
        mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -2]]),
    )
}

/// n=4, f=(x¹)², G=diag(1,−1), A=[[0,1],[1,0]] (rank A = 2).
pub fn case_r3() -> RoterParams {
    RoterParams::from_f_coeffs(
        4,
        &ints(&[0, 0, 1]),
        mat(&[&[1, 0], &[0, -1]]),
        mat(&[&[0, 1], &[1, 0]]),
    )
}

/// Five fixed points with mixed signs and fractions.
pub fn sample_points(n: usize) -> Vec<Point> {
    let patterns: [&[(i64, i64)]; 5] = [
        &[(0, 1), (1, 1)],
        &[(1, 1), (1, 1)],
        &[(1, 2), (-2, 1), (3, 1), (-1, 3)],
        &[(-3, 1), (0, 1), (2, 5)],
        &[(7, 3), (-1, 1), (0, 1), (5, 2), (-4, 1)],
    ];
    patterns
        .iter()
        .map(|pat| {
            let coords = (0..n)
                .map(|k| {
                    let (p, q) = pat[k % pat.len()];
                    rat(p, q)
                })
                .collect();
            Point::new(coords)
        })
        .collect()
}
