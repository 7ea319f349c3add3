//! Exact elements of cyclotomic fields `ℚ(ζ_N)`, used only for zero-tests of
//! `ℤ[√u]`-polynomials at roots of unity.
//!
//! An element is a polynomial in `ζ_N` of degree `< φ(N)`, with rational
//! coefficients, reduced modulo the `N`-th cyclotomic polynomial.  `√2` is
//! representable when `8 | N` and `√3` when `12 | N` (as `ζ + ζ⁻¹` for the
//! 8th resp. 12th root).

use crate::arith::{QuadInt, QuadPoly, RootOfUnity};
use crate::cyclotomic::cyclotomic_poly;
use crate::poly::Poly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

type QP = Poly<BigRational>;

/// An element of `ℚ(ζ_N)` in reduced form.
#[derive(Clone, PartialEq, Debug)]
pub struct CycloFieldElem {
    conductor: u64,
    repr: QP,
}

fn modulus(n: u64) -> QP {
    let phi = cyclotomic_poly(n);
    Poly::new(
        phi.coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect(),
    )
}

impl CycloFieldElem {
    fn reduce(conductor: u64, p: QP) -> Self {
        let (_, r) = p.div_rem_monic(&modulus(conductor));
        CycloFieldElem {
            conductor,
            repr: r,
        }
    }

    pub fn zero(conductor: u64) -> Self {
        CycloFieldElem {
            conductor,
            repr: Poly::zero(),
        }
    }

    /// `ζ_N^k`
    pub fn root_power(conductor: u64, k: u64) -> Self {
        let k = (k % conductor) as usize;
        CycloFieldElem::reduce(conductor, Poly::monomial(BigRational::from_integer(BigInt::from(1)), k))
    }

    /// `√u` inside `ℚ(ζ_N)`; panics unless the conductor admits it.
    pub fn sqrt(conductor: u64, u: u8) -> Self {
        let m = match u {
            2 => 8,
            3 => 12,
            _ => panic!("no surd for u = {u}"),
        };
        assert!(
            conductor % m == 0,
            "conductor {conductor} does not contain √{u}"
        );
        // √2 = ζ₈ + ζ₈⁻¹, √3 = ζ₁₂ + ζ₁₂⁻¹.
        let s = conductor / m;
        CycloFieldElem::root_power(conductor, s)
            .add(&CycloFieldElem::root_power(conductor, conductor - s))
    }

    pub fn from_quad(conductor: u64, v: &QuadInt) -> Self {
        let mut out = CycloFieldElem::reduce(
            conductor,
            Poly::constant(BigRational::from_integer(v.c0.clone())),
        );
        if !v.c1.is_zero() {
            let surd = CycloFieldElem::sqrt(conductor, v.u);
            out = out.add(&surd.scale(&BigRational::from_integer(v.c1.clone())));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.conductor, other.conductor);
        CycloFieldElem {
            conductor: self.conductor,
            repr: self.repr.add(&other.repr),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.conductor, other.conductor);
        CycloFieldElem::reduce(self.conductor, self.repr.mul(&other.repr))
    }

    fn scale(&self, c: &BigRational) -> Self {
        CycloFieldElem {
            conductor: self.conductor,
            repr: self.repr.scale(c),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.repr.is_zero()
    }
}

/// Conductor needed to evaluate `poly` at `zeta`: the lcm of the root's order
/// with 8 or 12 when a surd coefficient is present.
pub fn eval_conductor(poly: &QuadPoly, zeta: &RootOfUnity) -> u64 {
    let mut n = zeta.order();
    for c in poly.coeffs() {
        if !c.c1.is_zero() {
            n = n.lcm(&match c.u {
                2 => 8,
                3 => 12,
                _ => 1,
            });
        }
    }
    n
}

/// Exact value of a `ℤ[√u]`-polynomial at the root of unity `zeta`.
pub fn root_eval(poly: &QuadPoly, zeta: &RootOfUnity) -> CycloFieldElem {
    let n = eval_conductor(poly, zeta);
    // zeta = ζ_n^k
    let k = zeta.num() * (n / zeta.order());
    let mut acc = CycloFieldElem::zero(n);
    for (i, c) in poly.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = CycloFieldElem::from_quad(n, c)
            .mul(&CycloFieldElem::root_power(n, k * i as u64 % n));
        acc = acc.add(&term);
    }
    acc
}

/// Convenience: is `zeta` a root of `poly`?
pub fn is_root(poly: &QuadPoly, zeta: &RootOfUnity) -> bool {
    root_eval(poly, zeta).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::QuadInt;

    fn qpoly(coeffs: Vec<QuadInt>) -> QuadPoly {
        Poly::new(coeffs)
    }

    #[test]
    fn surds_square_correctly() {
        for (u, n) in [(2u8, 8u64), (3, 24)] {
            let s = CycloFieldElem::sqrt(n, u);
            let sq = s.mul(&s);
            let expect = CycloFieldElem::from_quad(n, &QuadInt::int(u as i64));
            assert_eq!(sq, expect);
        }
    }

    #[test]
    fn named_factor_roots() {
        // x² − √2·x + 1 vanishes at ζ₈ (2cos(π/4) = √2).
        let p = qpoly(vec![
            QuadInt::int(1),
            QuadInt::sqrt_term(2, -1),
            QuadInt::int(1),
        ]);
        assert!(is_root(&p, &RootOfUnity::new(1, 8)));
        assert!(!is_root(&p, &RootOfUnity::new(3, 8)));

        // x − 1 at 1.
        let p = qpoly(vec![QuadInt::int(-1), QuadInt::int(1)]);
        assert!(is_root(&p, &RootOfUnity::one()));

        // x² + 1 does not vanish at ζ₈.
        let p = qpoly(vec![QuadInt::int(1), QuadInt::int(0), QuadInt::int(1)]);
        assert!(!is_root(&p, &RootOfUnity::new(1, 8)));
        assert!(is_root(&p, &RootOfUnity::new(1, 4)));
    }
}
