//! Roter metrics: the explicit family of metrics with parallel Weyl tensor.
//!
//! On `ℝⁿ`, `n ≥ 4`, with `λ, μ` ranging over `2, …, n−1`, the metric has
//! components
//!
//! ```text
//! g₁₁ = [f(x¹) g_{λμ} + a_{λμ}] x^λ x^μ,   g₁ₙ = gₙ₁ = 1,   g_{λμ} constant,
//! ```
//!
//! and all others zero. `G = [g_{λμ}]` and `A = [a_{λμ}]` are symmetric
//! `(n−2) × (n−2)` matrices with `det G ≠ 0`, `A ≠ 0` and `g^{λμ} a_{λμ} = 0`.
//!
//! Index mapping: coordinate `x^k` is variable `k − 1`, so the block index
//! `λ` is variable `λ − 1` and row `λ − 2` of `G` and `A`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::algebra::{MultiPoly, Rational, RationalMatrix};
use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::tensor::{TensorField, Variance};

/// Construction data `(n, f, G, A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoterParams {
    n: usize,
    f: MultiPoly,
    g: RationalMatrix,
    a: RationalMatrix,
}

impl RoterParams {
    /// No validation happens here; see [`validate`].
    pub fn new(n: usize, f: MultiPoly, g: RationalMatrix, a: RationalMatrix) -> Self {
        Self { n, f, g, a }
    }

    /// `f = Σ coeffs[k] (x¹)^k`.
    pub fn from_f_coeffs(
        n: usize,
        f_coeffs: &[Rational],
        g: RationalMatrix,
        a: RationalMatrix,
    ) -> Self {
        Self::new(n, MultiPoly::univariate(n, 0, f_coeffs), g, a)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn f(&self) -> &MultiPoly {
        &self.f
    }

    pub fn g_block(&self) -> &RationalMatrix {
        &self.g
    }

    pub fn a_block(&self) -> &RationalMatrix {
        &self.a
    }

    pub fn f_is_constant(&self) -> bool {
        self.f.is_constant()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Warn,
    Skip,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Warn => "WARN",
            Status::Skip => "SKIP",
            Status::Fail => "FAIL",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationEntry {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub entries: Vec<ValidationEntry>,
}

impl ValidationReport {
    fn push(&mut self, name: &'static str, status: Status, detail: impl Into<String>) {
        self.entries.push(ValidationEntry {
            name,
            status,
            detail: detail.into(),
        });
    }

    fn check(&mut self, name: &'static str, ok: bool, detail: impl Into<String>) -> bool {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.push(name, status, detail);
        ok
    }

    /// True when no hard constraint failed. Warnings are allowed.
    pub fn is_valid(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&ValidationEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ValidationEntry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }
}

pub const CHECK_DIMENSION: &str = "dimension n >= 4";
pub const CHECK_SHAPES: &str = "G and A are (n-2)x(n-2)";
pub const CHECK_G_SYMMETRIC: &str = "G symmetric";
pub const CHECK_G_NONDEGENERATE: &str = "det G != 0";
pub const CHECK_A_SYMMETRIC: &str = "A symmetric";
pub const CHECK_A_NONZERO: &str = "A != 0";
pub const CHECK_TRACE_FREE: &str = "trace coupling g^{lm} a_{lm} = 0";
pub const CHECK_F_DEPENDS_ON_X1: &str = "f depends on x1 only";
pub const CHECK_F_NONCONSTANT: &str = "f nonconstant";

/// Checks every constraint on the construction data.
///
/// Hard failures: `n < 4`, wrong block shapes, `G` singular or asymmetric,
/// `A` asymmetric or zero, nonzero trace coupling, `f` involving anything
/// but `x¹`. A constant `f` is only a warning: the metric still has
/// parallel Weyl tensor but is locally symmetric, hence not ECS.
pub fn validate(params: &RoterParams) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = params.n;
    if !report.check(CHECK_DIMENSION, n >= 4, format!("n = {n}")) {
        return report;
    }
    let m = n - 2;
    let (g, a) = (&params.g, &params.a);
    let shapes_ok = (g.rows(), g.cols(), a.rows(), a.cols()) == (m, m, m, m);
    if !report.check(
        CHECK_SHAPES,
        shapes_ok,
        format!(
            "G is {}x{}, A is {}x{}, expected {m}x{m}",
            g.rows(),
            g.cols(),
            a.rows(),
            a.cols()
        ),
    ) {
        return report;
    }

    report.check(CHECK_G_SYMMETRIC, g.is_symmetric(), format!("G = {g}"));
    let det_g = g.det().expect("square");
    let g_ok = report.check(
        CHECK_G_NONDEGENERATE,
        !det_g.is_zero(),
        format!("det G = {det_g}"),
    );
    report.check(CHECK_A_SYMMETRIC, a.is_symmetric(), format!("A = {a}"));
    report.check(CHECK_A_NONZERO, !a.is_zero(), format!("A = {a}"));

    if g_ok {
        let trace = trace_coupling(g, a).expect("G invertible");
        let mut detail = format!("g^{{lm}} a_{{lm}} = {trace}");
        if a.rank() == 1 && is_definite(g) {
            detail.push_str(
                "; note: a rank-1 A = c v v^T is trace-free only for a null v, \
                 which needs an indefinite G",
            );
        }
        report.check(CHECK_TRACE_FREE, trace.is_zero(), detail);
    } else {
        report.push(CHECK_TRACE_FREE, Status::Skip, "G is singular");
    }

    let f = &params.f;
    let f_ok = f.nvars() == n && f.depends_only_on(0);
    report.check(
        CHECK_F_DEPENDS_ON_X1,
        f_ok,
        format!("f = {f} ({} variables)", f.nvars()),
    );
    if f_ok && f.is_constant() {
        report.push(
            CHECK_F_NONCONSTANT,
            Status::Warn,
            "f constant: metric is locally symmetric, not ECS",
        );
    } else if f_ok {
        report.push(CHECK_F_NONCONSTANT, Status::Pass, format!("f = {f}"));
    }
    report
}

/// `g^{λμ} a_{λμ} = tr(G⁻¹ A)`.
pub fn trace_coupling(g: &RationalMatrix, a: &RationalMatrix) -> Result<Rational> {
    g.inverse()?.mul(a)?.trace()
}

/// Sylvester's criterion for positive or negative definiteness.
fn is_definite(g: &RationalMatrix) -> bool {
    let m = g.rows();
    let mut signs = Vec::with_capacity(m);
    for k in 1..=m {
        let mut sub = RationalMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                sub[(i, j)] = g[(i, j)].clone();
            }
        }
        let d = sub.det().expect("square");
        if d.is_zero() {
            return false;
        }
        signs.push(d.is_positive());
    }
    let positive = signs.iter().all(|&s| s);
    let negative = signs.iter().enumerate().all(|(k, &s)| s == (k % 2 == 1));
    positive || negative
}

fn require_valid(params: &RoterParams) -> Result<()> {
    let report = validate(params);
    if report.is_valid() {
        return Ok(());
    }
    let failed: Vec<&str> = report.failures().map(|e| e.name).collect();
    Err(Error::InvalidParams(failed.join(", ")))
}

/// `g₁₁ = Σ_{λ,μ} [f(x¹) g_{λμ} + a_{λμ}] x^λ x^μ`.
pub fn g11(params: &RoterParams) -> MultiPoly {
    let n = params.n;
    let m = n - 2;
    let mut quad_g = MultiPoly::zero(n);
    let mut quad_a = MultiPoly::zero(n);
    for r in 0..m {
        for c in 0..m {
            let xx = &MultiPoly::var(n, r + 1) * &MultiPoly::var(n, c + 1);
            quad_g += &xx.scale(&params.g[(r, c)]);
            quad_a += &xx.scale(&params.a[(r, c)]);
        }
    }
    &(&params.f * &quad_g) + &quad_a
}

/// The metric tensor field `g_{ij}` (all lower).
pub fn build_metric(params: &RoterParams) -> Result<TensorField> {
    require_valid(params)?;
    let n = params.n;
    let top = g11(params);
    Ok(TensorField::from_fn(
        n,
        vec![Variance::Lower; 2],
        |idx| match (idx[0], idx[1]) {
            (0, 0) => top.clone(),
            (0, j) | (j, 0) if j == n - 1 => MultiPoly::one(n),
            (i, j) if (1..n - 1).contains(&i) && (1..n - 1).contains(&j) => {
                MultiPoly::constant(n, params.g[(i - 1, j - 1)].clone())
            }
            _ => MultiPoly::zero(n),
        },
    ))
}

/// Essential components of the inverse metric, the Levi-Civita connection,
/// and the curvature, instantiated directly from their closed forms.
///
/// Vectors and matrices indexed by `λ` use row `λ − 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForms {
    pub g11: MultiPoly,
    /// `g^{1n} = 1`
    pub inverse_1n: MultiPoly,
    /// `g^{nn} = −g₁₁`
    pub inverse_nn: MultiPoly,
    /// `[g^{λμ}] = G⁻¹`
    pub inverse_block: RationalMatrix,
    /// `Γ^λ_{11} = −g^{λμ} ∂_μ g₁₁ / 2`
    pub gamma_lambda_11: Vec<MultiPoly>,
    /// `Γ^n_{11} = ∂₁ g₁₁ / 2`
    pub gamma_n_11: MultiPoly,
    /// `Γ^n_{1λ} = ∂_λ g₁₁ / 2`
    pub gamma_n_1lambda: Vec<MultiPoly>,
    /// `R_{1λμ1} = f(x¹) g_{λμ} + a_{λμ}`
    pub riemann_1lm1: Vec<Vec<MultiPoly>>,
    /// `R₁₁ = (2 − n) f(x¹)`
    pub ricci_11: MultiPoly,
    /// `W_{1λμ1} = a_{λμ}`
    pub weyl_1lm1: RationalMatrix,
}

pub fn closed_forms(params: &RoterParams) -> Result<ClosedForms> {
    require_valid(params)?;
    let n = params.n;
    let m = n - 2;
    let g11 = g11(params);
    let half = Rational::new(1.into(), 2.into());
    let ginv = params.g.inverse()?;

    let d_block: Vec<MultiPoly> = (0..m).map(|r| g11.partial(r + 1)).collect::<Result<_>>()?;
    let gamma_lambda_11 = (0..m)
        .map(|r| {
            let mut c = MultiPoly::zero(n);
            for (s, d) in d_block.iter().enumerate() {
                c += &d.scale(&ginv[(r, s)]);
            }
            c.scale(&-&half)
        })
        .collect();
    let gamma_n_1lambda = d_block.iter().map(|d| d.scale(&half)).collect();
    let gamma_n_11 = g11.partial(0)?.scale(&half);

    let riemann_1lm1 = (0..m)
        .map(|r| {
            (0..m)
                .map(|c| {
                    &params.f.scale(&params.g[(r, c)])
                        + &MultiPoly::constant(n, params.a[(r, c)].clone())
                })
                .collect()
        })
        .collect();
    let two_minus_n = Rational::from_integer(2.into()) - Rational::from_integer((n as i64).into());

    Ok(ClosedForms {
        inverse_1n: MultiPoly::one(n),
        inverse_nn: -&g11,
        inverse_block: ginv,
        gamma_lambda_11,
        gamma_n_11,
        gamma_n_1lambda,
        riemann_1lm1,
        ricci_11: params.f.scale(&two_minus_n),
        weyl_1lm1: params.a.clone(),
        g11,
    })
}

/// `d = 1` when `rank A ≥ 2`, `d = 2` when `rank A = 1`.
pub fn predicted_rank(params: &RoterParams) -> Result<usize> {
    match params.a.rank() {
        0 => Err(Error::Precondition(
            "A = 0: not an ECS datum, the Olszak rank is undefined".into(),
        )),
        1 => Ok(2),
        _ => Ok(1),
    }
}

/// A closed-form component that disagrees with the generic pipeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    /// 0-based tensor index in the pipeline's storage.
    pub index: Vec<usize>,
    pub expected: MultiPoly,
    pub computed: MultiPoly,
}

pub const FAMILY_INVERSE: &str = "inverse metric g^{1n}, g^{nn}, g^{lm}";
pub const FAMILY_GAMMA_L11: &str = "Christoffel G^l_11";
pub const FAMILY_GAMMA_N11: &str = "Christoffel G^n_11";
pub const FAMILY_GAMMA_N1L: &str = "Christoffel G^n_1l";
pub const FAMILY_RIEMANN: &str = "Riemann R_1lm1";
pub const FAMILY_RICCI: &str = "Ricci R_11";
pub const FAMILY_WEYL: &str = "Weyl W_1lm1";

/// Compares each closed-form family against the generic pipeline. Returns
/// one entry per family with the first mismatch, if any.
pub fn check_agreement(
    closed: &ClosedForms,
    geo: &Geometry,
) -> Vec<(&'static str, Option<Mismatch>)> {
    let n = geo.dim();
    let m = n - 2;
    let last = n - 1;
    let cmp = |expected: &MultiPoly, t: &TensorField, idx: &[usize]| -> Option<Mismatch> {
        let computed = t.get(idx);
        (computed != expected).then(|| Mismatch {
            index: idx.to_vec(),
            expected: expected.clone(),
            computed: computed.clone(),
        })
    };
    let constant = |q: &Rational| MultiPoly::constant(n, q.clone());

    let inverse = cmp(&closed.inverse_1n, &geo.inverse, &[0, last])
        .or_else(|| cmp(&closed.inverse_nn, &geo.inverse, &[last, last]))
        .or_else(|| {
            block_pairs(m).find_map(|(r, c)| {
                cmp(
                    &constant(&closed.inverse_block[(r, c)]),
                    &geo.inverse,
                    &[r + 1, c + 1],
                )
            })
        });
    let gamma = &geo.christoffel;
    let gamma_l11 = (0..m).find_map(|r| cmp(&closed.gamma_lambda_11[r], gamma, &[r + 1, 0, 0]));
    let gamma_n11 = cmp(&closed.gamma_n_11, gamma, &[last, 0, 0]);
    let gamma_n1l = (0..m).find_map(|r| cmp(&closed.gamma_n_1lambda[r], gamma, &[last, 0, r + 1]));
    let riemann = block_pairs(m).find_map(|(r, c)| {
        cmp(
            &closed.riemann_1lm1[r][c],
            &geo.riemann.lowered,
            &[0, r + 1, c + 1, 0],
        )
    });
    let ricci = cmp(&closed.ricci_11, &geo.ricci, &[0, 0]);
    let weyl = block_pairs(m).find_map(|(r, c)| {
        cmp(
            &constant(&closed.weyl_1lm1[(r, c)]),
            &geo.weyl,
            &[0, r + 1, c + 1, 0],
        )
    });

    vec![
        (FAMILY_INVERSE, inverse),
        (FAMILY_GAMMA_L11, gamma_l11),
        (FAMILY_GAMMA_N11, gamma_n11),
        (FAMILY_GAMMA_N1L, gamma_n1l),
        (FAMILY_RIEMANN, riemann),
        (FAMILY_RICCI, ricci),
        (FAMILY_WEYL, weyl),
    ]
}

fn block_pairs(m: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..m).flat_map(move |r| (0..m).map(move |c| (r, c)))
}

/// `det g = −det G`; returns `(det g, −det G)` so callers can report both.
pub fn metric_determinant_pair(
    params: &RoterParams,
    g: &TensorField,
) -> Result<(MultiPoly, MultiPoly)> {
    let det = crate::geometry::metric_determinant(g)?;
    let expected = MultiPoly::constant(params.n, -params.g.det()?);
    Ok((det, expected))
}
