//! Random valid Roter parameter sets with a prescribed rank class for `A`.

use alloc::vec::Vec;

use num_traits::Zero;
use rand::Rng;

use crate::algebra::{Rational, RationalMatrix};
use crate::roter::RoterParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankClass {
    /// `rank A = 1`, which forces `G` to be indefinite.
    One,
    /// `rank A ≥ 2`.
    AtLeastTwo,
}

fn small<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    Rational::from_integer(rng.gen_range(-bound..=bound).into())
}

fn nonzero_small<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    loop {
        let q = small(rng, bound);
        if !q.is_zero() {
            return q;
        }
    }
}

fn random_symmetric<R: Rng + ?Sized>(rng: &mut R, m: usize, bound: i64) -> RationalMatrix {
    let mut s = RationalMatrix::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let q = small(rng, bound);
            s[(i, j)] = q.clone();
            s[(j, i)] = q;
        }
    }
    s
}

fn random_nondegenerate<R: Rng + ?Sized>(rng: &mut R, m: usize) -> RationalMatrix {
    loop {
        let g = random_symmetric(rng, m, 3);
        if !g.det().expect("square").is_zero() {
            return g;
        }
    }
}

/// Nonconstant `f` of degree 1 to 3 with small integer coefficients.
fn random_f_coeffs<R: Rng + ?Sized>(rng: &mut R) -> Vec<Rational> {
    let degree = rng.gen_range(1..=3);
    let mut coeffs: Vec<Rational> = (0..degree).map(|_| small(rng, 3)).collect();
    coeffs.push(nonzero_small(rng, 3));
    coeffs
}

/// Draws a valid parameter set for dimension `n ≥ 4`.
///
/// For [`RankClass::AtLeastTwo`], `A` is a random symmetric matrix with its
/// `G`-trace projected out. For [`RankClass::One`], `A = c·v vᵀ` where `v` is
/// made null for `G⁻¹` by adjusting one diagonal entry of `G⁻¹`.
pub fn random_params<R: Rng + ?Sized>(rng: &mut R, n: usize, class: RankClass) -> RoterParams {
    assert!(n >= 4, "Roter metrics need n >= 4");
    let m = n - 2;
    let f = random_f_coeffs(rng);
    match class {
        RankClass::AtLeastTwo => loop {
            let g = random_nondegenerate(rng, m);
            let b = random_symmetric(rng, m, 3);
            let ginv = g.inverse().expect("nondegenerate");
            let t = ginv.mul(&b).expect("square").trace().expect("square");
            let shift = t / Rational::from_integer((m as i64).into());
            let a = b.add(&g.scale(&-shift)).expect("same shape");
            if a.rank() >= 2 {
                return RoterParams::from_f_coeffs(n, &f, g, a);
            }
        },
        RankClass::One => loop {
            let v: Vec<Rational> = (0..m).map(|_| small(rng, 2)).collect();
            let Some(k) = v.iter().position(|x| !x.is_zero()) else {
                continue;
            };
            let mut h = random_symmetric(rng, m, 3);
            let quad = h.mul_vec(&v).expect("shape");
            let vhv = v
                .iter()
                .zip(&quad)
                .fold(Rational::zero(), |acc, (a, b)| acc + a * b);
            // vᵀ(H − α e_k e_kᵀ)v = vᵀHv − α v_k² = 0
            let alpha = vhv / (&v[k] * &v[k]);
            h[(k, k)] -= alpha;
            let Ok(g) = h.inverse() else {
                continue;
            };
            let c = nonzero_small(rng, 3);
            let mut a = RationalMatrix::zeros(m, m);
            for i in 0..m {
                for j in 0..m {
                    a[(i, j)] = &c * &v[i] * &v[j];
                }
            }
            return RoterParams::from_f_coeffs(n, &f, g, a);
        },
    }
}
