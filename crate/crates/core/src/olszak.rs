//! The Olszak rank `d` of a metric with parallel Weyl tensor.
//!
//! `d` is the dimension of the space of covectors `ξ` such that every 2-form
//! `ζ = W(v, v′, ·, ·)` is wedge-divisible by `ξ`, i.e. `ζ ∧ ξ = 0`. By
//! bilinearity it suffices to take `v, v′` from the coordinate basis, which
//! turns the condition into a finite linear system in `(ξ₁, …, ξₙ)`:
//!
//! ```text
//! (ζ ∧ ξ)_{abc} = ζ_{ab} ξ_c + ζ_{bc} ξ_a + ζ_{ca} ξ_b = 0,   a < b < c,
//! ```
//!
//! one row per pair `i < j` (with `ζ_{ab} = W_{ijab}`) and triple `a < b < c`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::algebra::{Rational, RationalMatrix};
use crate::error::{Error, Result};
use crate::tensor::{Point, TensorField, Variance};

/// The linear conditions on `ξ` at one point, as the rows of a matrix with
/// `n` columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeSystem {
    pub n: usize,
    pub rows: RationalMatrix,
}

/// Builds the wedge system from Weyl values at a point, stored row-major as
/// `w[((i·n + j)·n + a)·n + b] = W_{ijab}`.
pub fn assemble_wedge_system(w: &[Rational], n: usize) -> Result<WedgeSystem> {
    if w.len() != n.pow(4) {
        return Err(Error::DimensionMismatch {
            expected: n.pow(4),
            got: w.len(),
        });
    }
    let at = |i: usize, j: usize, a: usize, b: usize| &w[((i * n + j) * n + a) * n + b];
    let mut entries = Vec::new();
    let mut count = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            for a in 0..n {
                for b in (a + 1)..n {
                    for c in (b + 1)..n {
                        let mut row = vec![Rational::zero(); n];
                        row[c] += at(i, j, a, b);
                        row[a] += at(i, j, b, c);
                        row[b] += at(i, j, c, a);
                        entries.extend(row);
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(WedgeSystem {
        n,
        rows: RationalMatrix::new(count, n, entries)?,
    })
}

impl WedgeSystem {
    /// Drops zero rows and rows that are scalar multiples of another row.
    /// The solution space is unchanged.
    pub fn dedup(&self) -> WedgeSystem {
        let mut seen: BTreeSet<Vec<Rational>> = BTreeSet::new();
        for r in 0..self.rows.rows() {
            let row = self.rows.row(r);
            let Some(lead) = row.iter().find(|x| !x.is_zero()) else {
                continue;
            };
            let inv = lead.recip();
            seen.insert(row.iter().map(|x| x * &inv).collect());
        }
        let count = seen.len();
        WedgeSystem {
            n: self.n,
            rows: RationalMatrix::new(count, self.n, seen.into_iter().flatten().collect())
                .expect("rows have length n"),
        }
    }

    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        self.rows.kernel()
    }

    /// True when `ξ` satisfies every condition.
    pub fn annihilates(&self, xi: &[Rational]) -> bool {
        self.rows
            .mul_vec(xi)
            .map(|r| r.iter().all(Zero::is_zero))
            .unwrap_or(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OlszakResult {
    pub point: Point,
    /// Canonical (reduced echelon) basis of the admissible covectors.
    pub kernel_basis: Vec<Vec<Rational>>,
    pub d: usize,
    /// `W = 0` at the point, where `d` is not defined. The result then has
    /// `d = n` and the full standard basis.
    pub degenerate: bool,
}

impl OlszakResult {
    pub fn warning(&self) -> Option<String> {
        self.degenerate
            .then(|| String::from("conformally flat point: W = 0, d undefined (reported as n)"))
    }

    pub fn contains(&self, xi: &[Rational]) -> bool {
        in_span(&self.kernel_basis, xi)
    }
}

/// `e_k`, the coordinate covector `dx^(k+1)`.
pub fn unit_covector(n: usize, k: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[k] = Rational::one();
    v
}

fn in_span(basis: &[Vec<Rational>], v: &[Rational]) -> bool {
    let n = v.len();
    if basis.is_empty() {
        return v.iter().all(Zero::is_zero);
    }
    let stacked = |extra: Option<&[Rational]>| {
        let mut entries: Vec<Rational> = basis.iter().flatten().cloned().collect();
        if let Some(e) = extra {
            entries.extend_from_slice(e);
        }
        let rows = entries.len() / n;
        RationalMatrix::new(rows, n, entries).expect("uniform lengths")
    };
    stacked(None).rank() == stacked(Some(v)).rank()
}

/// Olszak rank from Weyl values at a point (layout as in
/// [`assemble_wedge_system`]).
pub fn olszak_rank_from_values(w: &[Rational], point: Point) -> Result<OlszakResult> {
    let n = point.dim();
    let system = assemble_wedge_system(w, n)?;
    let degenerate = w.iter().all(Zero::is_zero);
    let kernel_basis = system.dedup().kernel();
    Ok(OlszakResult {
        point,
        d: kernel_basis.len(),
        kernel_basis,
        degenerate,
    })
}

/// Evaluates `W` at `p` and computes the Olszak kernel there.
pub fn olszak_rank_at(weyl: &TensorField, p: &Point) -> Result<OlszakResult> {
    if weyl.variance() != [Variance::Lower; 4] {
        return Err(Error::Variance("Weyl tensor must be rank-4 lower".into()));
    }
    let values = weyl.evaluate_at(p)?;
    olszak_rank_from_values(&values, p.clone())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankConstancy {
    pub results: Vec<OlszakResult>,
    pub rank_constant: bool,
    pub kernel_constant: bool,
}

impl RankConstancy {
    pub fn passed(&self) -> bool {
        self.rank_constant && self.kernel_constant
    }
}

/// Computes `d` at each point and checks that both `d` and the kernel are the
/// same everywhere. Kernel bases are canonical, so equal spans compare equal.
pub fn rank_constancy(weyl: &TensorField, points: &[Point]) -> Result<RankConstancy> {
    if points.len() < 2 {
        return Err(Error::Precondition("need >= 2 points".into()));
    }
    let results = points
        .iter()
        .map(|p| olszak_rank_at(weyl, p))
        .collect::<Result<Vec<_>>>()?;
    let first = &results[0];
    let rank_constant = results.iter().all(|r| r.d == first.d);
    let kernel_constant = results.iter().all(|r| r.kernel_basis == first.kernel_basis);
    Ok(RankConstancy {
        results,
        rank_constant,
        kernel_constant,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NullParallelReport {
    /// `g(∂ₙ, ∂ₙ) = 0`
    pub is_null: bool,
    /// `Γ^j_{in} = 0` for all `i, j`, so `∇∂ₙ = 0`
    pub is_parallel: bool,
    /// `g(∂ₙ, ·) = dx¹`, i.e. `g_{in} = δ_{1i}`
    pub dual_is_dx1: bool,
    /// `dx¹` lies in the Olszak kernel at every supplied point
    pub dx1_in_kernel: bool,
    /// One line per failed identity, naming the offending component
    /// (1-based indices).
    pub failures: Vec<String>,
}

impl NullParallelReport {
    pub fn all_hold(&self) -> bool {
        self.is_null && self.is_parallel && self.dual_is_dx1 && self.dx1_in_kernel
    }
}

/// Checks that `∂ₙ` spans a null parallel distribution whose metric dual is
/// `dx¹`, and that `dx¹` is admissible at each of `olszak` results.
pub fn null_parallel_check(
    g: &TensorField,
    gamma: &TensorField,
    olszak: &[OlszakResult],
) -> NullParallelReport {
    let n = g.dim();
    let last = n - 1;
    let mut report = NullParallelReport::default();

    let g_nn = g.get(&[last, last]);
    report.is_null = g_nn.is_zero();
    if !report.is_null {
        report
            .failures
            .push(format!("g_{{{n},{n}}} = {g_nn}, expected 0"));
    }

    report.is_parallel = true;
    'outer: for j in 0..n {
        for i in 0..n {
            let c = gamma.get(&[j, i, last]);
            if !c.is_zero() {
                report.is_parallel = false;
                report
                    .failures
                    .push(format!("G^{}_{{{},{n}}} = {c}, expected 0", j + 1, i + 1));
                break 'outer;
            }
        }
    }

    report.dual_is_dx1 = true;
    for i in 0..n {
        let c = g.get(&[i, last]);
        let ok = match i {
            0 => c.as_constant().is_some_and(|v| v.is_one()),
            _ => c.is_zero(),
        };
        if !ok {
            report.dual_is_dx1 = false;
            let expected = if i == 0 { 1 } else { 0 };
            report
                .failures
                .push(format!("g_{{{},{n}}} = {c}, expected {expected}", i + 1));
        }
    }

    let dx1 = unit_covector(n, 0);
    report.dx1_in_kernel = !olszak.is_empty();
    if olszak.is_empty() {
        report.failures.push("no Olszak results supplied".into());
    }
    for r in olszak {
        if !r.contains(&dx1) {
            report.dx1_in_kernel = false;
            report
                .failures
                .push(format!("dx1 not in kernel at {:?}", r.point.coords()));
        }
    }
    report
}

/// Exact proportionality by cross-multiplication: `x_i y_j = x_j y_i` for
/// all `i, j`. The zero vector is proportional to everything.
pub fn proportional(x: &[Rational], y: &[Rational]) -> bool {
    x.len() == y.len()
        && (0..x.len()).all(|i| (i + 1..x.len()).all(|j| &x[i] * &y[j] == &x[j] * &y[i]))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelStructure {
    Pass { direction: Vec<Rational> },
    Fail(String),
    Skipped(String),
}

/// For `rank A = 1`, `d = 2`: the kernel is `span{dx¹, w}` where `wₙ = 0` and
/// `(w₂, …, w_{n−1})` is proportional to every nonzero row of `A`.
pub fn rank1_kernel_structure(a: &RationalMatrix, result: &OlszakResult) -> KernelStructure {
    let rank = a.rank();
    if rank != 1 || result.d != 2 {
        return KernelStructure::Skipped(format!(
            "needs rank A = 1 and d = 2 (rank A = {rank}, d = {})",
            result.d
        ));
    }
    let n = result.point.dim();
    if a.rows() + 2 != n {
        return KernelStructure::Fail(format!("A is {}x{}, n = {n}", a.rows(), a.cols()));
    }
    if !result.contains(&unit_covector(n, 0)) {
        return KernelStructure::Fail("dx1 is not in the kernel".into());
    }
    // ξ₁ is free, so dropping it leaves the remaining direction.
    let Some(w) = result
        .kernel_basis
        .iter()
        .map(|v| {
            let mut v = v.clone();
            v[0] = Rational::zero();
            v
        })
        .find(|v| v.iter().any(|x| !x.is_zero()))
    else {
        return KernelStructure::Fail("kernel has no direction besides dx1".into());
    };
    if !w[n - 1].is_zero() {
        return KernelStructure::Fail(format!("w_n = {} != 0", w[n - 1]));
    }
    let block = &w[1..n - 1];
    for r in 0..a.rows() {
        let row = a.row(r);
        if row.iter().all(Zero::is_zero) {
            continue;
        }
        if !proportional(block, row) {
            return KernelStructure::Fail(format!(
                "kernel direction {:?} not proportional to row {} of A",
                block,
                r + 2
            ));
        }
    }
    KernelStructure::Pass { direction: w }
}

/// `d = 1` with kernel exactly `span{dx¹}`.
pub fn kernel_is_dx1_line(result: &OlszakResult) -> bool {
    result.d == 1 && result.kernel_basis == [unit_covector(result.point.dim(), 0)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn zeros(n: usize) -> Vec<Rational> {
        vec![Rational::zero(); n.pow(4)]
    }

    #[test]
    fn row_count_before_dedup() {
        let n = 5;
        let sys = assemble_wedge_system(&zeros(n), n).unwrap();
        // C(5,2) · C(5,3)
        assert_eq!(sys.rows.rows(), 10 * 10);
        assert_eq!(sys.dedup().rows.rows(), 0);
    }

    #[test]
    fn zero_weyl_is_degenerate() {
        let n = 4;
        let pt = Point::new(vec![rat(0, 1); n]);
        let r = olszak_rank_from_values(&zeros(n), pt).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.d, n);
        assert!(r.warning().unwrap().contains("conformally flat"));
    }

    #[test]
    fn proportionality_handles_zeros() {
        let v = |xs: &[i64]| xs.iter().map(|&x| rat(x, 1)).collect::<Vec<_>>();
        assert!(proportional(&v(&[1, 0, 1]), &v(&[2, 0, 2])));
        assert!(proportional(&v(&[0, 0, 0]), &v(&[2, 0, 2])));
        assert!(!proportional(&v(&[1, 0, 1]), &v(&[1, 0, -1])));
        assert!(!proportional(&v(&[0, 1]), &v(&[1, 0])));
    }

    #[test]
    fn wrong_length_rejected() {
        assert!(assemble_wedge_system(&zeros(3), 4).is_err());
    }

    #[test]
    fn rank_constancy_needs_two_points() {
        let w = TensorField::zeros(4, vec![Variance::Lower; 4]);
        let pts = [Point::new(vec![rat(0, 1); 4])];
        assert_eq!(
            rank_constancy(&w, &pts),
            Err(Error::Precondition("need >= 2 points".into()))
        );
    }
}
