//! Dense univariate polynomials over an exact commutative ring.
//!
//! Coefficient types used in the crate: `BigInt`, `BigRational` and the
//! quadratic-ring values `QuadInt` (see [`crate::arith`]).

use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Coefficient ring requirements.  Blanket-implemented for anything with the
/// usual `num_traits` arithmetic.
pub trait Coeff:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + fmt::Debug
{
}

impl<T> Coeff for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + fmt::Debug
{
}

/// A polynomial stored little-endian: `coeffs[i]` multiplies `x^i`.
/// The representation is normalized (no trailing zeros); the zero polynomial
/// has an empty coefficient vector.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<T: Coeff> {
    coeffs: Vec<T>,
}

impl<T: Coeff> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly::new(vec![T::one()])
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `c·x^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    /// `x^d - c`
    pub fn x_pow_minus(d: usize, c: T) -> Self {
        let mut coeffs = vec![T::zero(); d + 1];
        coeffs[0] = T::zero() - c;
        coeffs[d] = T::one();
        Poly::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports degree 0 for convenience.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        Poly::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - other.coeff(i));
        }
        Poly::new(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }

    pub fn neg(&self) -> Self {
        Poly::new(self.coeffs.iter().map(|c| T::zero() - c.clone()).collect())
    }

    pub fn scale(&self, c: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Substitute `x -> x^n`.
    pub fn compose_power(&self, n: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.degree() * n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * n] = c.clone();
        }
        Poly::new(out)
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// Division by a monic divisor; returns `(quotient, remainder)`.
    /// Panics if `div` is not monic (internal misuse).
    pub fn div_rem_monic(&self, div: &Self) -> (Self, Self) {
        assert!(div.is_monic(), "divisor must be monic");
        let d = div.coeffs.len() - 1;
        if self.coeffs.len() <= d {
            return (Poly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![T::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = rem[i].clone();
            if c.is_zero() {
                continue;
            }
            quot[i - d] = c.clone();
            for (j, b) in div.coeffs.iter().enumerate() {
                rem[i - d + j] = rem[i - d + j].clone() - c.clone() * b.clone();
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Exact division by a monic divisor; `None` if the remainder is nonzero.
    pub fn div_exact_monic(&self, div: &Self) -> Option<Self> {
        let (q, r) = self.div_rem_monic(div);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Multiplicity of the monic factor `div` in `self`.
    pub fn multiplicity_of(&self, div: &Self) -> u32 {
        let mut m = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.div_exact_monic(div) {
            m += 1;
            cur = q;
            if cur.degree() == 0 {
                break;
            }
        }
        m
    }
}

impl<T: Coeff + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "({c})x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "({c})x^{i}")?,
            }
        }
        Ok(())
    }
}
