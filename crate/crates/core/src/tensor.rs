//! Dense tensor fields with polynomial components.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{MultiPoly, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variance {
    Lower,
    Upper,
}

/// A tensor field on an open set of `ℝⁿ`, stored as a dense `n^rank` array
/// of polynomials in row-major slot order.
///
/// Slot `s` of the component `T[i₀, i₁, …]` has variance `variance[s]`.
/// Indices are 0-based: coordinate `x¹` is index 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorField {
    n: usize,
    variance: Vec<Variance>,
    components: Vec<MultiPoly>,
}

impl TensorField {
    pub fn zeros(n: usize, variance: Vec<Variance>) -> Self {
        let len = n.pow(variance.len() as u32);
        Self {
            n,
            variance,
            components: vec![MultiPoly::zero(n); len],
        }
    }

    /// Fills every component from `f(index)`.
    pub fn from_fn<F>(n: usize, variance: Vec<Variance>, mut f: F) -> Self
    where
        F: FnMut(&[usize]) -> MultiPoly,
    {
        let rank = variance.len();
        let len = n.pow(rank as u32);
        let mut idx = vec![0; rank];
        let mut components = Vec::with_capacity(len);
        for flat in 0..len {
            unflatten(flat, n, &mut idx);
            components.push(f(&idx));
        }
        Self {
            n,
            variance,
            components,
        }
    }

    pub fn from_components(
        n: usize,
        variance: Vec<Variance>,
        components: Vec<MultiPoly>,
    ) -> Result<Self> {
        let len = n.pow(variance.len() as u32);
        if components.len() != len {
            return Err(Error::DimensionMismatch {
                expected: len,
                got: components.len(),
            });
        }
        Ok(Self {
            n,
            variance,
            components,
        })
    }

    /// Rank-2 field from an `n × n` grid of polynomials.
    pub fn from_matrix(variance: [Variance; 2], rows: Vec<Vec<MultiPoly>>) -> Result<Self> {
        let n = rows.len();
        let mut components = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::NotSquare {
                    rows: n,
                    cols: row.len(),
                });
            }
            components.extend(row);
        }
        Self::from_components(n, variance.to_vec(), components)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.variance.len()
    }

    pub fn variance(&self) -> &[Variance] {
        &self.variance
    }

    pub fn is_all_lower(&self) -> bool {
        self.variance.iter().all(|&v| v == Variance::Lower)
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank());
        idx.iter().fold(0, |acc, &i| {
            debug_assert!(i < self.n);
            acc * self.n + i
        })
    }

    pub fn get(&self, idx: &[usize]) -> &MultiPoly {
        &self.components[self.flat_index(idx)]
    }

    pub fn get_mut(&mut self, idx: &[usize]) -> &mut MultiPoly {
        let flat = self.flat_index(idx);
        &mut self.components[flat]
    }

    pub fn set(&mut self, idx: &[usize], value: MultiPoly) {
        *self.get_mut(idx) = value;
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(MultiPoly::is_zero)
    }

    /// Iterates over `(index, component)` pairs in storage order.
    pub fn indexed(&self) -> impl Iterator<Item = (Vec<usize>, &MultiPoly)> + '_ {
        let rank = self.rank();
        let n = self.n;
        self.components.iter().enumerate().map(move |(flat, c)| {
            let mut idx = vec![0; rank];
            unflatten(flat, n, &mut idx);
            (idx, c)
        })
    }

    /// The rank-2 field as a grid of rows. Panics unless `rank() == 2`.
    pub fn to_matrix(&self) -> Vec<Vec<MultiPoly>> {
        assert_eq!(self.rank(), 2, "not a rank-2 field");
        self.components
            .chunks(self.n)
            .map(<[MultiPoly]>::to_vec)
            .collect()
    }

    /// Componentwise exact evaluation at `p`, in storage order.
    pub fn evaluate_at(&self, p: &Point) -> Result<Vec<Rational>> {
        if p.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: p.dim(),
            });
        }
        self.components.iter().map(|c| c.eval(p.coords())).collect()
    }
}

pub(crate) fn unflatten(mut flat: usize, n: usize, idx: &mut [usize]) {
    for slot in idx.iter_mut().rev() {
        *slot = flat % n;
        flat /= n;
    }
}

/// A point `(x¹, …, xⁿ)` with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point(Vec<Rational>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }
}

impl From<Vec<Rational>> for Point {
    fn from(coords: Vec<Rational>) -> Self {
        Self(coords)
    }
}
