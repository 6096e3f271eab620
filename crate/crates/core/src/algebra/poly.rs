use alloc::collections::btree_map::{BTreeMap, Entry};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Variables are indexed from 0, so `x¹` is variable 0. Terms are kept in a
/// `BTreeMap` keyed by exponent vector, which gives a canonical (lexicographic)
/// ordering; zero coefficients are never stored, so structural equality is
/// polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    /// The coordinate function `x^(var+1)`.
    ///
    /// Panics if `var >= nvars`.
    pub fn var(nvars: usize, var: usize) -> Self {
        assert!(var < nvars, "variable {var} out of range");
        let mut exps = vec![0; nvars];
        exps[var] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(exps, Rational::one());
        p
    }

    /// `Σ coeffs[k] · x_var^k`.
    pub fn univariate(nvars: usize, var: usize, coeffs: &[Rational]) -> Self {
        assert!(var < nvars, "variable {var} out of range");
        let mut p = Self::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            let mut exps = vec![0; nvars];
            exps[var] = k as u32;
            p.add_term(exps, c.clone());
        }
        p
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.len(), nvars, "exponent vector length mismatch");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, exps: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m[var]).max()
    }

    /// True when no variable other than `var` appears.
    pub fn depends_only_on(&self, var: usize) -> bool {
        self.terms
            .keys()
            .all(|m| m.iter().enumerate().all(|(k, &e)| k == var || e == 0))
    }

    /// Exact partial derivative with respect to variable `var` (0-based).
    pub fn partial(&self, var: usize) -> Result<Self> {
        if var >= self.nvars {
            return Err(Error::VariableOutOfRange {
                index: var,
                nvars: self.nvars,
            });
        }
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m[var];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm[var] = e - 1;
            out.add_term(dm, c * Rational::from_integer(e.into()));
        }
        Ok(out)
    }

    /// Exact evaluation at `point`, which must have one entry per variable.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(m) {
                if e > 0 {
                    term *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn check_same_ring(&self, other: &Self) {
        assert_eq!(
            self.nvars, other.nvars,
            "polynomials live in different rings"
        );
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        self.check_same_ring(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        self.check_same_ring(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        self += &rhs;
        self
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(mut self, rhs: MultiPoly) -> MultiPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_same_ring(rhs);
        let mut out = MultiPoly::zero(self.nvars);
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(m, ca * cb);
            }
        }
        out
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

/// Renders with 1-based variable names, e.g. `x1*x2^2 - 3/2`.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // highest-degree terms first reads more naturally
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let is_unit_monomial = m.iter().all(|&e| e == 0);
            let mut wrote = false;
            if !abs.is_one() || is_unit_monomial {
                write!(f, "{abs}")?;
                wrote = true;
            }
            for (k, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote {
                    f.write_str("*")?;
                }
                write!(f, "x{}", k + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
                wrote = true;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use alloc::string::ToString;

    fn x(n: usize, k: usize) -> MultiPoly {
        MultiPoly::var(n, k)
    }

    #[test]
    fn partial_of_product_of_distinct_variables() {
        let p = &x(2, 0) * &x(2, 1);
        assert_eq!(p.partial(0).unwrap(), x(2, 1));
    }

    #[test]
    fn partial_of_constant_is_zero() {
        let c = MultiPoly::constant(3, rat(7, 2));
        assert!(c.partial(1).unwrap().is_zero());
    }

    #[test]
    fn partial_of_square() {
        // ∂₂((x²+x⁴)²) with variables x¹..x⁴ -> indices 0..3
        let s = &x(4, 1) + &x(4, 3);
        let p = s.pow(2);
        let two = MultiPoly::constant(4, rat(2, 1));
        assert_eq!(p.partial(1).unwrap(), &two * &s);
    }

    #[test]
    fn partial_out_of_range() {
        assert_eq!(
            x(2, 0).partial(2),
            Err(Error::VariableOutOfRange { index: 2, nvars: 2 })
        );
    }

    #[test]
    fn eval_examples() {
        let p = &x(1, 0).pow(2) - &MultiPoly::one(1);
        assert_eq!(p.eval(&[rat(3, 1)]).unwrap(), rat(8, 1));
        assert_eq!(
            MultiPoly::zero(2).eval(&[rat(1, 3), rat(5, 1)]).unwrap(),
            rat(0, 1)
        );
        assert!(p.eval(&[]).is_err());
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let p = &x(3, 2) - &x(3, 2);
        assert!(p.is_zero());
        assert_eq!(p, MultiPoly::zero(3));
        assert_eq!(p.as_constant(), Some(rat(0, 1)));
    }

    #[test]
    fn display() {
        let p = &(&x(2, 0) * &x(2, 1).pow(2)) - &MultiPoly::constant(2, rat(3, 2));
        assert_eq!(p.to_string(), "x1*x2^2 - 3/2");
        assert_eq!((-&x(2, 1)).to_string(), "-x2");
    }

    #[test]
    fn depends_only_on() {
        let f = MultiPoly::univariate(4, 0, &[rat(1, 1), rat(0, 1), rat(2, 1)]);
        assert!(f.depends_only_on(0));
        assert!(!(&f + &x(4, 2)).depends_only_on(0));
        assert_eq!(f.degree(), Some(2));
    }
}
