//! Exact arithmetic substrate: ℓ-adic valuations, multiplicative orders,
//! the parameter `q = p^(a/η)`, quadratic-ring values `a + b√u`, and roots of
//! unity represented as rationals mod 1.

use crate::poly::Poly;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Largest `v` with `l^v` dividing `|n|`.
pub fn val(n: &BigInt, l: u64) -> Result<u32> {
    if n.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let l = BigInt::from(l);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&l);
        if !r.is_zero() {
            return Ok(v);
        }
        v += 1;
        n = q;
    }
}

pub fn val_u64(n: u64, l: u64) -> Result<u32> {
    val(&BigInt::from(n), l)
}

/// Smallest `d ≥ 1` with `x^d ≡ 1 (mod m)`, for `m ≥ 2`.
pub fn mult_order(x: &BigInt, m: u64) -> Result<u64> {
    let mb = BigInt::from(m);
    let x = x.mod_floor(&mb);
    if x.gcd(&mb) != BigInt::one() {
        return Err(Error::NotAUnit {
            x: x.to_string(),
            m,
        });
    }
    let mut acc = x.clone();
    let mut d = 1;
    while acc != BigInt::one() {
        acc = (acc * &x).mod_floor(&mb);
        d += 1;
    }
    Ok(d)
}

/// Deterministic primality test, adequate for the small `ℓ` inputs used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = 11;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime(k)).collect()
}

/// The real parameter `q = p^(a/η)` of a finite reductive group.
///
/// `η = 1` means `q = p^a` is an integer; `η = 2` occurs exactly for the
/// Suzuki and Ree groups, where `q` is an odd power of `√2` or `√3`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct QSpec {
    pub p: u64,
    pub eta: u8,
    pub a: u32,
}

impl QSpec {
    /// Constructs `p^(a/eta)`, normalizing `eta = 2` with even `a` down to an
    /// integer power.
    pub fn new(p: u64, eta: u8, a: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidQ(format!("{p} is not prime")));
        }
        if a == 0 {
            return Err(Error::InvalidQ("exponent must be positive".into()));
        }
        match eta {
            1 => Ok(QSpec { p, eta: 1, a }),
            2 => {
                if a % 2 == 0 {
                    Ok(QSpec { p, eta: 1, a: a / 2 })
                } else if p == 2 || p == 3 {
                    Ok(QSpec { p, eta: 2, a })
                } else {
                    Err(Error::InvalidQ(format!(
                        "q = sqrt{p}^{a} requires p in {{2,3}}"
                    )))
                }
            }
            _ => Err(Error::InvalidQ(format!("eta must be 1 or 2, got {eta}"))),
        }
    }

    /// Parses `p^a`, a plain prime power, or `sqrt2^a` / `sqrt3^a`.
    pub fn parse(s: &str) -> Result<Self> {
        let (base, exp) = match s.split_once('^') {
            Some((b, e)) => {
                let a: u32 = e
                    .parse()
                    .map_err(|_| Error::InvalidQ(format!("bad exponent in {s:?}")))?;
                (b, a)
            }
            None => (s, 1),
        };
        if let Some(p) = base.strip_prefix("sqrt") {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::InvalidQ(format!("bad radicand in {s:?}")))?;
            return QSpec::new(p, 2, exp);
        }
        let n: u64 = base
            .parse()
            .map_err(|_| Error::InvalidQ(format!("cannot parse q from {s:?}")))?;
        // Accept plain prime powers like 8 or 49.
        let (p, e) = prime_power_split(n)
            .ok_or_else(|| Error::InvalidQ(format!("{n} is not a prime power")))?;
        QSpec::new(p, 1, e * exp)
    }

    /// `q^n`, normalized.
    pub fn pow(&self, n: u32) -> Self {
        QSpec::new(self.p, self.eta, self.a * n).expect("power of a valid q is valid")
    }

    /// `q^eta = p^a` as an integer.
    pub fn q_to_eta(&self) -> BigInt {
        BigInt::from(self.p).pow(self.a)
    }

    /// The integer value of `q` when `eta = 1`.
    pub fn as_integer(&self) -> Option<BigInt> {
        (self.eta == 1).then(|| BigInt::from(self.p).pow(self.a))
    }

    /// `p^(k·a/eta)` for `k` with `k·a ≡ 0 (mod eta)`; errors otherwise.
    pub fn integral_power(&self, k: u32) -> Result<BigInt> {
        let ka = k * self.a;
        if ka % self.eta as u32 != 0 {
            return Err(Error::NotIntegral(format!(
                "q^{k} with q = {self} is not an integer"
            )));
        }
        Ok(BigInt::from(self.p).pow(ka / self.eta as u32))
    }
}

impl fmt::Display for QSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.eta == 1 {
            if self.a == 1 {
                write!(f, "{}", self.p)
            } else {
                write!(f, "{}^{}", self.p, self.a)
            }
        } else {
            write!(f, "sqrt{}^{}", self.p, self.a)
        }
    }
}

/// Splits a prime power `n = p^e`; `None` if `n` is not a prime power.
pub fn prime_power_split(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = n;
    for d in 2..=n {
        if d * d > n {
            break;
        }
        if n % d == 0 {
            p = d;
            break;
        }
    }
    let mut e = 0;
    let mut m = n;
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    (m == 1).then_some((p, e))
}

/// A value `c0 + c1·√u` with `u ∈ {1, 2, 3}`; `u = 1` is the canonical
/// embedding of plain integers (`c1 = 0`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadInt {
    pub u: u8,
    pub c0: BigInt,
    pub c1: BigInt,
}

impl QuadInt {
    pub fn new(u: u8, c0: BigInt, c1: BigInt) -> Self {
        assert!(matches!(u, 1 | 2 | 3), "radicand must be 1, 2 or 3");
        if c1.is_zero() {
            QuadInt {
                u: 1,
                c0,
                c1: BigInt::zero(),
            }
        } else {
            assert!(u != 1, "u = 1 forces c1 = 0");
            QuadInt { u, c0, c1 }
        }
    }

    pub fn int(n: i64) -> Self {
        QuadInt::new(1, BigInt::from(n), BigInt::zero())
    }

    /// `n·√u`
    pub fn sqrt_term(u: u8, n: i64) -> Self {
        QuadInt::new(u, BigInt::zero(), BigInt::from(n))
    }

    pub fn is_rational(&self) -> bool {
        self.c1.is_zero()
    }

    fn unified(&self, other: &Self) -> u8 {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => other.u,
            (_, true) => self.u,
            _ => {
                assert_eq!(
                    self.u, other.u,
                    "mixed radicands √{} and √{}",
                    self.u, other.u
                );
                self.u
            }
        }
    }
}

impl Add for QuadInt {
    type Output = QuadInt;
    fn add(self, rhs: QuadInt) -> QuadInt {
        let u = self.unified(&rhs);
        QuadInt::new(u, self.c0 + rhs.c0, self.c1 + rhs.c1)
    }
}

impl Sub for QuadInt {
    type Output = QuadInt;
    fn sub(self, rhs: QuadInt) -> QuadInt {
        let u = self.unified(&rhs);
        QuadInt::new(u, self.c0 - rhs.c0, self.c1 - rhs.c1)
    }
}

impl Mul for QuadInt {
    type Output = QuadInt;
    fn mul(self, rhs: QuadInt) -> QuadInt {
        let u = self.unified(&rhs);
        let rad = BigInt::from(u);
        QuadInt::new(
            u,
            &self.c0 * &rhs.c0 + &self.c1 * &rhs.c1 * rad,
            &self.c0 * &rhs.c1 + &self.c1 * &rhs.c0,
        )
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt::new(self.u, -self.c0, -self.c1)
    }
}

impl Zero for QuadInt {
    fn zero() -> Self {
        QuadInt::int(0)
    }
    fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }
}

impl One for QuadInt {
    fn one() -> Self {
        QuadInt::int(1)
    }
    fn is_one(&self) -> bool {
        self.c0.is_one() && self.c1.is_zero()
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c1.is_zero() {
            write!(f, "{}", self.c0)
        } else if self.c0.is_zero() {
            write!(f, "{}√{}", self.c1, self.u)
        } else {
            write!(f, "{}+{}√{}", self.c0, self.c1, self.u)
        }
    }
}

/// Polynomials with coefficients in `ℤ[√u]`.
pub type QuadPoly = Poly<QuadInt>;

/// Lifts an integer polynomial into `ℤ[√u]` coefficients.
pub fn lift_int_poly(p: &Poly<BigInt>) -> QuadPoly {
    Poly::new(
        p.coeffs()
            .iter()
            .map(|c| QuadInt::new(1, c.clone(), BigInt::zero()))
            .collect(),
    )
}

/// Exact evaluation of a `ℤ[√u]`-polynomial at `q = p^(a/η)`.
///
/// The result must land in `ℤ`; a nonzero `√p`-component (or a radicand not
/// matching `p`) is reported as [`Error::NotIntegral`] — that signals an
/// invalid factor/q pairing such as a `√3`-factor evaluated at a power of
/// `√2`.
pub fn quad_eval(poly: &QuadPoly, q: &QSpec) -> Result<BigInt> {
    // Accumulate the value as A + B√p (for η = 2) or a plain integer.
    let mut int_part = BigInt::zero();
    let mut surd_part = BigInt::zero();
    for (i, c) in poly.coeffs().iter().enumerate() {
        if !c.is_rational() && c.u != q.p as u8 {
            return Err(Error::NotIntegral(format!(
                "coefficient {c} has radicand {} but q = {q}",
                c.u
            )));
        }
        // q^i = p^(a·i/η), with a possible leftover √p for η = 2 and odd a·i.
        let ai = q.a as u64 * i as u64;
        let (e, half) = if q.eta == 1 {
            (ai, false)
        } else {
            (ai / 2, ai % 2 == 1)
        };
        let pe = BigInt::from(q.p).pow(e as u32);
        // (c0 + c1√p)·p^e·(√p if half)
        if half {
            let p = BigInt::from(q.p);
            int_part += &c.c1 * &pe * &p;
            surd_part += &c.c0 * &pe;
        } else {
            int_part += &c.c0 * &pe;
            surd_part += &c.c1 * &pe;
        }
    }
    if !surd_part.is_zero() {
        return Err(Error::NotIntegral(format!(
            "value {int_part} + {surd_part}√{} is not an integer",
            q.p
        )));
    }
    Ok(int_part)
}

/// The normalized integer form `q^(deg Φ)·Φ(x/q)` of a `ℤ[√u]`-polynomial at
/// a concrete `q`; errors if any coefficient fails to be integral.
pub fn normalize_at_q(poly: &QuadPoly, q: &QSpec) -> Result<Poly<BigInt>> {
    let deg = poly.degree();
    let mut out = Vec::with_capacity(deg + 1);
    for (i, c) in poly.coeffs().iter().enumerate() {
        // coefficient of x^i is c·q^(deg-i)
        let single = Poly::new(vec![c.clone()]);
        let v = quad_eval(&single.mul(&Poly::monomial(QuadInt::one(), deg - i)), q)?;
        out.push(v);
    }
    Ok(Poly::new(out))
}

/// A root of unity `e^(2πi·s)` stored as `s = num/den` in lowest terms,
/// `0 ≤ num < den`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootOfUnity {
    num: u64,
    den: u64,
}

impl RootOfUnity {
    pub fn new(num: i64, den: u64) -> Self {
        assert!(den >= 1);
        let num = num.rem_euclid(den as i64) as u64;
        let g = num.gcd(&den);
        if num == 0 {
            RootOfUnity { num: 0, den: 1 }
        } else {
            RootOfUnity {
                num: num / g,
                den: den / g,
            }
        }
    }

    pub fn one() -> Self {
        RootOfUnity { num: 0, den: 1 }
    }

    pub fn minus_one() -> Self {
        RootOfUnity { num: 1, den: 2 }
    }

    /// Primitive `d`-th root `e^(2πi/d)`.
    pub fn primitive(d: u64) -> Self {
        RootOfUnity::new(1, d)
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        self.den
    }

    pub fn pow(&self, k: u64) -> Self {
        RootOfUnity::new((self.num as i64) * (k % self.den) as i64, self.den)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let den = self.den.lcm(&other.den);
        let num = self.num * (den / self.den) + other.num * (den / other.den);
        RootOfUnity::new(num as i64, den)
    }

    pub fn is_one(&self) -> bool {
        self.num == 0
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.num, self.den) {
            (0, _) => write!(f, "1"),
            (1, 2) => write!(f, "-1"),
            (n, d) => write!(f, "e(2πi·{n}/{d})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn val_by_trial_division() {
        assert_eq!(val(&BigInt::from(720), 3).unwrap(), 2);
        assert_eq!(val(&BigInt::from(7), 7).unwrap(), 1);
        assert_eq!(val(&BigInt::from(5), 3).unwrap(), 0);
        assert_eq!(val(&BigInt::from(-48), 2).unwrap(), 4);
        assert!(matches!(
            val(&BigInt::zero(), 5),
            Err(Error::ZeroValuation)
        ));
    }

    #[test]
    fn mult_order_basics() {
        assert_eq!(mult_order(&BigInt::from(2), 7).unwrap(), 3);
        assert_eq!(mult_order(&BigInt::from(3), 4).unwrap(), 2);
        assert_eq!(mult_order(&BigInt::from(1), 5).unwrap(), 1);
        assert!(mult_order(&BigInt::from(6), 4).is_err());
    }

    #[test]
    fn qspec_parse_and_normalize() {
        let q = QSpec::parse("2^3").unwrap();
        assert_eq!((q.p, q.eta, q.a), (2, 1, 3));
        let q = QSpec::parse("8").unwrap();
        assert_eq!((q.p, q.eta, q.a), (2, 1, 3));
        let q = QSpec::parse("sqrt2^3").unwrap();
        assert_eq!((q.p, q.eta, q.a), (2, 2, 3));
        // sqrt2^4 = 4 normalizes to an integer power.
        let q = QSpec::parse("sqrt2^4").unwrap();
        assert_eq!((q.p, q.eta, q.a), (2, 1, 2));
        assert!(QSpec::parse("12").is_err());
        assert!(QSpec::parse("sqrt5^1").is_err());
        // (√3)² = 3 and (√3)³ = √27.
        assert_eq!(QSpec::new(3, 2, 1).unwrap().pow(2), QSpec::new(3, 1, 1).unwrap());
        assert_eq!(QSpec::new(3, 2, 1).unwrap().pow(3), QSpec::new(3, 2, 3).unwrap());
    }

    #[test]
    fn quad_eval_named_factor_values() {
        // Φ'₂,₄ = x² + √2·x + 1 at q = √2 gives 2 + 2 + 1 = 5.
        let phi = Poly::new(vec![
            QuadInt::int(1),
            QuadInt::sqrt_term(2, 1),
            QuadInt::int(1),
        ]);
        let q = QSpec::new(2, 2, 1).unwrap();
        assert_eq!(quad_eval(&phi, &q).unwrap(), BigInt::from(5));

        // Φ''₂,₆ = x² − √3·x + 1 at q = √3 gives 3 − 3 + 1 = 1.
        let phi = Poly::new(vec![
            QuadInt::int(1),
            QuadInt::sqrt_term(3, -1),
            QuadInt::int(1),
        ]);
        let q = QSpec::new(3, 2, 1).unwrap();
        assert_eq!(quad_eval(&phi, &q).unwrap(), BigInt::from(1));

        // x − 1 at q = 4.
        let phi = Poly::new(vec![QuadInt::int(-1), QuadInt::int(1)]);
        let q = QSpec::new(2, 1, 2).unwrap();
        assert_eq!(quad_eval(&phi, &q).unwrap(), BigInt::from(3));

        // A √3-factor at a power of √2 must be rejected.
        let phi = Poly::new(vec![
            QuadInt::int(1),
            QuadInt::sqrt_term(3, 1),
            QuadInt::int(1),
        ]);
        let q = QSpec::new(2, 2, 1).unwrap();
        assert!(matches!(quad_eval(&phi, &q), Err(Error::NotIntegral(_))));
    }

    #[test]
    fn roots_of_unity_mod_one() {
        let z = RootOfUnity::new(3, 8);
        assert_eq!(z.pow(4), RootOfUnity::minus_one());
        assert_eq!(z.pow(8), RootOfUnity::one());
        assert_eq!(z.order(), 8);
        let w = RootOfUnity::new(1, 12);
        assert_eq!(z.mul(&w), RootOfUnity::new(11, 24));
    }
}
