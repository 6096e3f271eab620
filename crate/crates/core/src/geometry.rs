//! Levi-Civita curvature pipeline over polynomial metrics.
//!
//! Sign conventions. The curvature operator is
//! `R(u,v)w = ∇_v∇_u w − ∇_u∇_v w + ∇_[u,v] w`, with components
//! `R(∂_i,∂_j)∂_k = R_{ijk}^l ∂_l`, so
//!
//! ```text
//! R_{ijk}^l = ∂_j Γ^l_{ik} − ∂_i Γ^l_{jk} + Γ^p_{ik} Γ^l_{jp} − Γ^p_{jk} Γ^l_{ip}
//! ```
//!
//! The Ricci tensor is `R_{ij} = R_{ikj}^k` and the fully lowered tensor is
//! `R_{ijkl} = R_{ijk}^p g_{pl}`. With these choices a metric of the form
//! `2 dx¹dxⁿ + H (dx¹)² + Σ g_{λμ} dx^λ dx^μ` has `R_{1λμ1} = ½ ∂_λ∂_μ H`,
//! and the Ricci tensor agrees with the usual one (positive on spheres).
//!
//! All tensors are dense; components are exact polynomials, so every
//! identity below is checked as a polynomial identity rather than pointwise.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::algebra::{poly_det, MultiPoly, Rational};
use crate::error::{Error, Result};
use crate::tensor::{TensorField, Variance};

use Variance::{Lower, Upper};

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Variance(what.into()))
    }
}

/// Determinant of a rank-2 field as a polynomial.
pub fn metric_determinant(g: &TensorField) -> Result<MultiPoly> {
    require(g.rank() == 2, "metric must have rank 2")?;
    poly_det(&g.to_matrix())
}

/// Inverse metric `g^{ij}`.
///
/// Only metrics whose determinant is a nonzero constant are accepted: the
/// inverse of a general polynomial matrix is a matrix of rational functions,
/// which this crate does not represent.
pub fn invert_metric(g: &TensorField) -> Result<TensorField> {
    require(
        g.variance() == [Lower, Lower],
        "metric must be rank-2 lower",
    )?;
    let n = g.dim();
    let rows = g.to_matrix();
    let det = poly_det(&rows)?;
    let det_inv = match det.as_constant() {
        Some(c) if !c.is_zero() => c.recip(),
        _ => return Err(Error::NonConstantDeterminant(format!("{det}"))),
    };

    let minor = |skip_row: usize, skip_col: usize| -> Vec<Vec<MultiPoly>> {
        rows.iter()
            .enumerate()
            .filter(|&(r, _)| r != skip_row)
            .map(|(_, row)| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != skip_col)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect()
    };

    let mut inv = TensorField::zeros(n, vec![Upper, Upper]);
    for i in 0..n {
        for j in 0..n {
            // adjugate: (adj g)_{ij} = (-1)^{i+j} M_{ji}
            let mut c = poly_det(&minor(j, i))?.scale(&det_inv);
            if (i + j) % 2 == 1 {
                c = -c;
            }
            inv.set(&[i, j], c);
        }
    }
    Ok(inv)
}

/// Christoffel symbols of the second kind, stored as `Γ[k][i][j] = Γ^k_{ij}`
/// with variance `(upper, lower, lower)`.
pub fn christoffel(g: &TensorField, ginv: &TensorField) -> Result<TensorField> {
    require(
        g.variance() == [Lower, Lower],
        "metric must be rank-2 lower",
    )?;
    require(
        ginv.variance() == [Upper, Upper],
        "inverse metric must be rank-2 upper",
    )?;
    let n = g.dim();

    // dg[l][i][j] = ∂_l g_{ij}
    let dg = TensorField::from_fn(n, vec![Lower; 3], |idx| {
        g.get(&idx[1..]).partial(idx[0]).expect("index < n")
    });

    // first kind: Γ_{lij} = ½(∂_i g_{jl} + ∂_j g_{il} − ∂_l g_{ij}), symmetric in i,j
    let half = Rational::new(1.into(), 2.into());
    let mut first = TensorField::zeros(n, vec![Lower; 3]);
    for l in 0..n {
        for i in 0..n {
            for j in i..n {
                let mut c = dg.get(&[i, j, l]) + dg.get(&[j, i, l]);
                c -= dg.get(&[l, i, j]);
                let c = c.scale(&half);
                first.set(&[l, j, i], c.clone());
                first.set(&[l, i, j], c);
            }
        }
    }

    let mut gamma = TensorField::zeros(n, vec![Upper, Lower, Lower]);
    for k in 0..n {
        for i in 0..n {
            for j in i..n {
                let mut c = MultiPoly::zero(n);
                for l in 0..n {
                    let gi = ginv.get(&[k, l]);
                    let f = first.get(&[l, i, j]);
                    if gi.is_zero() || f.is_zero() {
                        continue;
                    }
                    c += &(gi * f);
                }
                gamma.set(&[k, j, i], c.clone());
                gamma.set(&[k, i, j], c);
            }
        }
    }
    Ok(gamma)
}

/// The curvature tensor in both index positions.
#[derive(Clone, Debug)]
pub struct Riemann {
    /// `R_{ijk}^l`, variance `(lower, lower, lower, upper)`.
    pub mixed: TensorField,
    /// `R_{ijkl} = R_{ijk}^p g_{pl}`.
    pub lowered: TensorField,
}

pub fn riemann(gamma: &TensorField, g: &TensorField) -> Result<Riemann> {
    require(
        gamma.variance() == [Upper, Lower, Lower],
        "Christoffel symbols must be (upper, lower, lower)",
    )?;
    let n = gamma.dim();
    // Γ^l_{ik} is gamma[l][i][k]
    let gm = |l: usize, i: usize, k: usize| gamma.get(&[l, i, k]);

    let mut mixed = TensorField::zeros(n, vec![Lower, Lower, Lower, Upper]);
    for i in 0..n {
        for j in (i + 1)..n {
            for k in 0..n {
                for l in 0..n {
                    let mut c = gm(l, i, k).partial(j)?;
                    c -= &gm(l, j, k).partial(i)?;
                    for p in 0..n {
                        let a = gm(p, i, k);
                        let b = gm(l, j, p);
                        if !a.is_zero() && !b.is_zero() {
                            c += &(a * b);
                        }
                        let a = gm(p, j, k);
                        let b = gm(l, i, p);
                        if !a.is_zero() && !b.is_zero() {
                            c -= &(a * b);
                        }
                    }
                    mixed.set(&[j, i, k, l], -&c);
                    mixed.set(&[i, j, k, l], c);
                }
            }
        }
    }

    let lowered = lower_last(&mixed, g);
    Ok(Riemann { mixed, lowered })
}

fn lower_last(t: &TensorField, g: &TensorField) -> TensorField {
    let n = t.dim();
    let mut variance = t.variance().to_vec();
    *variance.last_mut().expect("rank >= 1") = Lower;
    TensorField::from_fn(n, variance, |idx| {
        let (head, last) = idx.split_at(idx.len() - 1);
        let mut src = head.to_vec();
        src.push(0);
        let mut c = MultiPoly::zero(n);
        for p in 0..n {
            *src.last_mut().expect("nonempty") = p;
            let a = t.get(&src);
            let b = g.get(&[p, last[0]]);
            if !a.is_zero() && !b.is_zero() {
                c += &(a * b);
            }
        }
        c
    })
}

/// Ricci tensor `R_{ij} = R_{ikj}^k` and scalar curvature `s = g^{ij} R_{ij}`.
pub fn ricci_and_scalar(
    riemann_mixed: &TensorField,
    ginv: &TensorField,
) -> Result<(TensorField, MultiPoly)> {
    require(
        riemann_mixed.variance() == [Lower, Lower, Lower, Upper],
        "Riemann tensor must be (lower, lower, lower, upper)",
    )?;
    let n = riemann_mixed.dim();
    let ric = TensorField::from_fn(n, vec![Lower, Lower], |idx| {
        let mut c = MultiPoly::zero(n);
        for k in 0..n {
            c += riemann_mixed.get(&[idx[0], k, idx[1], k]);
        }
        c
    });
    let mut s = MultiPoly::zero(n);
    for i in 0..n {
        for j in 0..n {
            let a = ginv.get(&[i, j]);
            let b = ric.get(&[i, j]);
            if !a.is_zero() && !b.is_zero() {
                s += &(a * b);
            }
        }
    }
    Ok((ric, s))
}

/// Schouten tensor `P = (Ric − s g / (2(n−1))) / (n−2)`.
pub fn schouten(g: &TensorField, ric: &TensorField, s: &MultiPoly) -> Result<TensorField> {
    let n = g.dim();
    if n < 3 {
        return Err(Error::DimensionTooSmall(n));
    }
    let nr = Rational::from_integer((n as i64).into());
    let one = Rational::one();
    let two = Rational::from_integer(2.into());
    let trace_coeff = (&two * (&nr - &one)).recip();
    let overall = (&nr - &two).recip();
    let s_scaled = s.scale(&trace_coeff);
    Ok(TensorField::from_fn(n, vec![Lower, Lower], |idx| {
        (ric.get(idx) - &(&s_scaled * g.get(idx))).scale(&overall)
    }))
}

/// Weyl conformal tensor
/// `W_{abcd} = R_{abcd} − (P_{ac} g_{bd} − P_{ad} g_{bc} + P_{bd} g_{ac} − P_{bc} g_{ad})`.
///
/// `ginv` is unused by the formula itself but is part of the signature so
/// callers pass a consistent set of fields.
pub fn weyl(
    g: &TensorField,
    _ginv: &TensorField,
    riemann_lowered: &TensorField,
    ric: &TensorField,
    s: &MultiPoly,
) -> Result<TensorField> {
    let n = g.dim();
    if n < 4 {
        return Err(Error::DimensionTooSmall(n));
    }
    require(
        riemann_lowered.is_all_lower(),
        "Riemann tensor must be all-lower",
    )?;
    let p = schouten(g, ric, s)?;
    let prod = |a: [usize; 2], b: [usize; 2]| -> MultiPoly {
        let x = p.get(&a);
        let y = g.get(&b);
        if x.is_zero() || y.is_zero() {
            MultiPoly::zero(n)
        } else {
            x * y
        }
    };
    Ok(TensorField::from_fn(n, vec![Lower; 4], |idx| {
        let [a, b, c, d] = [idx[0], idx[1], idx[2], idx[3]];
        let mut w = riemann_lowered.get(idx).clone();
        w -= &prod([a, c], [b, d]);
        w += &prod([a, d], [b, c]);
        w -= &prod([b, d], [a, c]);
        w += &prod([b, c], [a, d]);
        w
    }))
}

/// `∇T` for an all-lower tensor, with the differentiation index appended as
/// the last slot: `(∇T)_{i₁…i_r m} = ∂_m T_{i₁…i_r} − Σ_s Γ^p_{m i_s} T_{…p…}`.
pub fn covariant_derivative(t: &TensorField, gamma: &TensorField) -> Result<TensorField> {
    if !t.is_all_lower() {
        return Err(Error::Variance(
            "covariant derivative is only implemented for all-lower tensors".into(),
        ));
    }
    require(
        gamma.variance() == [Upper, Lower, Lower],
        "Christoffel symbols must be (upper, lower, lower)",
    )?;
    let n = t.dim();
    let rank = t.rank();
    let mut out_var = t.variance().to_vec();
    out_var.push(Lower);
    let mut src = vec![0; rank];
    let mut failed = None;
    let out = TensorField::from_fn(n, out_var, |idx| {
        let (base, m) = (&idx[..rank], idx[rank]);
        let mut c = match t.get(base).partial(m) {
            Ok(c) => c,
            Err(e) => {
                failed = Some(e);
                return MultiPoly::zero(n);
            }
        };
        for s in 0..rank {
            src.copy_from_slice(base);
            for p in 0..n {
                let gam = gamma.get(&[p, m, base[s]]);
                if gam.is_zero() {
                    continue;
                }
                src[s] = p;
                let comp = t.get(&src);
                if !comp.is_zero() {
                    c -= &(gam * comp);
                }
            }
        }
        c
    });
    match failed {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Every curvature-type field of a metric, computed by the generic pipeline.
#[derive(Clone, Debug)]
pub struct Geometry {
    pub metric: TensorField,
    pub inverse: TensorField,
    pub christoffel: TensorField,
    pub riemann: Riemann,
    pub ricci: TensorField,
    pub scalar: MultiPoly,
    pub weyl: TensorField,
}

impl Geometry {
    pub fn from_metric(g: TensorField) -> Result<Self> {
        let inverse = invert_metric(&g)?;
        let christoffel = christoffel(&g, &inverse)?;
        let riemann = riemann(&christoffel, &g)?;
        let (ricci, scalar) = ricci_and_scalar(&riemann.mixed, &inverse)?;
        let weyl = weyl(&g, &inverse, &riemann.lowered, &ricci, &scalar)?;
        Ok(Self {
            metric: g,
            inverse,
            christoffel,
            riemann,
            ricci,
            scalar,
            weyl,
        })
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }
}

/// A component at which an identity fails, with the nonzero residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub index: Vec<usize>,
    pub residual: MultiPoly,
}

fn first_violation<F>(n: usize, rank: usize, mut residual: F) -> Option<Violation>
where
    F: FnMut(&[usize]) -> MultiPoly,
{
    let total = n.pow(rank as u32);
    let mut idx = vec![0; rank];
    (0..total).find_map(|flat| {
        crate::tensor::unflatten(flat, n, &mut idx);
        let r = residual(&idx);
        (!r.is_zero()).then(|| Violation {
            index: idx.clone(),
            residual: r,
        })
    })
}

/// First component of `t` that is not the zero polynomial.
pub fn first_nonzero(t: &TensorField) -> Option<Violation> {
    t.indexed()
        .find(|(_, c)| !c.is_zero())
        .map(|(index, c)| Violation {
            index,
            residual: c.clone(),
        })
}

/// `g_{ij}·g^{jk} − δ_i^k`.
pub fn check_inverse(g: &TensorField, ginv: &TensorField) -> Option<Violation> {
    let n = g.dim();
    first_violation(n, 2, |idx| {
        let (i, k) = (idx[0], idx[1]);
        let mut c = MultiPoly::zero(n);
        for j in 0..n {
            c += &(g.get(&[i, j]) * ginv.get(&[j, k]));
        }
        if i == k {
            c -= &MultiPoly::one(n);
        }
        c
    })
}

pub fn check_christoffel_symmetry(gamma: &TensorField) -> Option<Violation> {
    first_violation(gamma.dim(), 3, |idx| {
        gamma.get(idx) - gamma.get(&[idx[0], idx[2], idx[1]])
    })
}

pub fn check_symmetric(t: &TensorField) -> Option<Violation> {
    first_violation(t.dim(), 2, |idx| t.get(idx) - t.get(&[idx[1], idx[0]]))
}

type Relation = (&'static str, fn(&[usize]) -> [usize; 4], bool);

/// Checks `R_{ijkl} = −R_{jikl} = −R_{ijlk} = R_{klij}` for an all-lower
/// curvature-type tensor. Reports the first failing relation.
pub fn check_curvature_symmetries(r: &TensorField) -> Option<(&'static str, Violation)> {
    let n = r.dim();
    let rel: [Relation; 3] = [
        (
            "antisymmetry in the first pair",
            |i| [i[1], i[0], i[2], i[3]],
            true,
        ),
        (
            "antisymmetry in the second pair",
            |i| [i[0], i[1], i[3], i[2]],
            true,
        ),
        ("pair symmetry", |i| [i[2], i[3], i[0], i[1]], false),
    ];
    for (name, perm, anti) in rel {
        let v = first_violation(n, 4, |idx| {
            let other = r.get(&perm(idx));
            if anti {
                r.get(idx) + other
            } else {
                r.get(idx) - other
            }
        });
        if let Some(v) = v {
            return Some((name, v));
        }
    }
    None
}

/// `R_{ijkl} + R_{jkil} + R_{kijl} = 0`.
pub fn check_first_bianchi(r: &TensorField) -> Option<Violation> {
    first_violation(r.dim(), 4, |idx| {
        let [i, j, k, l] = [idx[0], idx[1], idx[2], idx[3]];
        let mut c = r.get(&[i, j, k, l]) + r.get(&[j, k, i, l]);
        c += r.get(&[k, i, j, l]);
        c
    })
}

/// `∇_m R_{ijkl} + ∇_i R_{jmkl} + ∇_j R_{mikl} = 0`, where `nabla_r` is the
/// output of [`covariant_derivative`] (derivative slot last).
pub fn check_second_bianchi(nabla_r: &TensorField) -> Option<Violation> {
    first_violation(nabla_r.dim(), 5, |idx| {
        let [i, j, k, l, m] = [idx[0], idx[1], idx[2], idx[3], idx[4]];
        let mut c = nabla_r.get(&[i, j, k, l, m]) + nabla_r.get(&[j, m, k, l, i]);
        c += nabla_r.get(&[m, i, k, l, j]);
        c
    })
}

/// `g^{ik} W_{ijkl} = 0`. The remaining traces follow from the curvature
/// symmetries.
pub fn check_trace_free(w: &TensorField, ginv: &TensorField) -> Option<Violation> {
    let n = w.dim();
    first_violation(n, 2, |idx| {
        let (j, l) = (idx[0], idx[1]);
        let mut c = MultiPoly::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = ginv.get(&[i, k]);
                let b = w.get(&[i, j, k, l]);
                if !a.is_zero() && !b.is_zero() {
                    c += &(a * b);
                }
            }
        }
        c
    })
}
