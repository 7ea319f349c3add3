//! Cyclotomic and `q`-cyclotomic polynomials.
//!
//! For integer `q` the `q`-cyclotomic polynomials are the ordinary cyclotomic
//! polynomials.  For `q` an odd power of `√2` or `√3` the generic orders of
//! the Suzuki and Ree groups factor over a small named table of polynomials
//! with coefficients in `ℤ[√2]` or `ℤ[√3]`; the table is validated at load
//! time against exact root evaluation and product identities, so a wrong
//! tabulated root cannot survive.

use crate::arith::{lift_int_poly, mult_order, val, QSpec, QuadInt, QuadPoly, RootOfUnity};
use crate::cyclofield::is_root;
use crate::poly::Poly;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

pub type ZPoly = Poly<BigInt>;

/// Euler totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut d: Vec<u64> = (1..=n).filter(|k| n % k == 0).collect();
    d.sort_unstable();
    d
}

/// The `d`-th cyclotomic polynomial, computed by exact division of `x^d − 1`
/// by the lower cyclotomic polynomials and memoized.
pub fn cyclotomic_poly(d: u64) -> ZPoly {
    static CACHE: OnceLock<Mutex<HashMap<u64, ZPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&d) {
        return p.clone();
    }
    let mut acc = Poly::x_pow_minus(d as usize, BigInt::one());
    for e in divisors(d) {
        if e == d {
            continue;
        }
        let phi_e = cyclotomic_poly(e);
        acc = acc
            .div_exact_monic(&phi_e)
            .expect("cyclotomic polynomials divide x^d - 1");
    }
    cache.lock().unwrap().insert(d, acc.clone());
    acc
}

/// `Φ_d(x^n) = ∏ Φ_{μd}` over `μ | n` with `n/μ` prime to `d`.
/// Returns the sorted list of indices `μd`; the product identity is checked.
pub fn decompose_cyclo_power(d: u64, n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = divisors(n)
        .into_iter()
        .filter(|&mu| (n / mu).gcd(&d) == 1)
        .map(|mu| mu * d)
        .collect();
    out.sort_unstable();
    let mut prod = Poly::one();
    for &e in &out {
        prod = prod.mul(&cyclotomic_poly(e));
    }
    debug_assert_eq!(
        prod,
        cyclotomic_poly(d).compose_power(n as usize),
        "cyclotomic power decomposition failed for d={d}, n={n}"
    );
    out
}

/// Tags for the named `q`-cyclotomic factors of the Suzuki/Ree order
/// formulas.  A single prime on the tag is the `+√u` variant, a double prime
/// the `−√u` variant.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum NamedTag {
    /// `Φ₂,₁ = Φ₁(x²) = x² − 1`
    P2_1,
    /// `Φ₂,₂ = Φ₂(x²) = x² + 1`
    P2_2,
    /// `Φ₂,₆ = Φ₆(x²) = x⁴ − x² + 1` (irreducible over `ℤ[√2]`)
    P2_6,
    /// `Φ'₂,₄ = x² + √2·x + 1`
    P2_4Prime,
    /// `Φ''₂,₄ = x² − √2·x + 1`
    P2_4Pprime,
    /// `Φ'₂,₆ = x² + √3·x + 1`
    P2_6Prime,
    /// `Φ''₂,₆ = x² − √3·x + 1`
    P2_6Pprime,
    /// `Φ'₂,₁₂ = x⁴ + √2·x³ + x² + √2·x + 1`
    P2_12Prime,
    /// `Φ''₂,₁₂ = x⁴ − √2·x³ + x² − √2·x + 1`
    P2_12Pprime,
}

impl NamedTag {
    pub const ALL: [NamedTag; 9] = [
        NamedTag::P2_1,
        NamedTag::P2_2,
        NamedTag::P2_6,
        NamedTag::P2_4Prime,
        NamedTag::P2_4Pprime,
        NamedTag::P2_6Prime,
        NamedTag::P2_6Pprime,
        NamedTag::P2_12Prime,
        NamedTag::P2_12Pprime,
    ];

    /// Minimal `d` with the factor dividing `Φ_d(x²)`.
    pub fn d(&self) -> u64 {
        match self {
            NamedTag::P2_1 => 1,
            NamedTag::P2_2 => 2,
            NamedTag::P2_4Prime | NamedTag::P2_4Pprime => 4,
            NamedTag::P2_6 | NamedTag::P2_6Prime | NamedTag::P2_6Pprime => 6,
            NamedTag::P2_12Prime | NamedTag::P2_12Pprime => 12,
        }
    }

    /// 0 = unsplit, 1 = primed, 2 = double-primed; used for canonical order.
    pub fn variant(&self) -> u8 {
        match self {
            NamedTag::P2_1 | NamedTag::P2_2 | NamedTag::P2_6 => 0,
            NamedTag::P2_4Prime | NamedTag::P2_6Prime | NamedTag::P2_12Prime => 1,
            NamedTag::P2_4Pprime | NamedTag::P2_6Pprime | NamedTag::P2_12Pprime => 2,
        }
    }

    /// Radicand of the coefficients (1 when the polynomial is rational).
    pub fn radicand(&self) -> u8 {
        match self {
            NamedTag::P2_1 | NamedTag::P2_2 | NamedTag::P2_6 => 1,
            NamedTag::P2_4Prime
            | NamedTag::P2_4Pprime
            | NamedTag::P2_12Prime
            | NamedTag::P2_12Pprime => 2,
            NamedTag::P2_6Prime | NamedTag::P2_6Pprime => 3,
        }
    }

    pub fn poly(&self) -> QuadPoly {
        let i = |n: i64| QuadInt::int(n);
        let s = |u: u8, n: i64| QuadInt::sqrt_term(u, n);
        match self {
            NamedTag::P2_1 => lift_int_poly(&cyclotomic_poly(1).compose_power(2)),
            NamedTag::P2_2 => lift_int_poly(&cyclotomic_poly(2).compose_power(2)),
            NamedTag::P2_6 => lift_int_poly(&cyclotomic_poly(6).compose_power(2)),
            NamedTag::P2_4Prime => Poly::new(vec![i(1), s(2, 1), i(1)]),
            NamedTag::P2_4Pprime => Poly::new(vec![i(1), s(2, -1), i(1)]),
            NamedTag::P2_6Prime => Poly::new(vec![i(1), s(3, 1), i(1)]),
            NamedTag::P2_6Pprime => Poly::new(vec![i(1), s(3, -1), i(1)]),
            NamedTag::P2_12Prime => Poly::new(vec![i(1), s(2, 1), i(1), s(2, 1), i(1)]),
            NamedTag::P2_12Pprime => Poly::new(vec![i(1), s(2, -1), i(1), s(2, -1), i(1)]),
        }
    }
}

impl fmt::Display for NamedTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let suffix = match self.variant() {
            0 => "",
            1 => "'",
            _ => "''",
        };
        write!(f, "P2,{}{}", self.d(), suffix)
    }
}

/// Identifier of a `q`-cyclotomic factor occurring in a generic order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum CycFactorId {
    /// Ordinary cyclotomic polynomial `Φ_d` (the `η = 1` case).
    Cyclo(u64),
    /// Named factor from the `η = 2` table.
    Named(NamedTag),
}

impl CycFactorId {
    /// Minimal `d` with the factor dividing `Φ_d(x^η)`.
    pub fn d(&self) -> u64 {
        match self {
            CycFactorId::Cyclo(d) => *d,
            CycFactorId::Named(t) => t.d(),
        }
    }

    pub fn degree(&self) -> u64 {
        match self {
            CycFactorId::Cyclo(d) => euler_phi(*d),
            CycFactorId::Named(t) => t.poly().degree() as u64,
        }
    }

    pub fn eta(&self) -> u8 {
        match self {
            CycFactorId::Cyclo(_) => 1,
            CycFactorId::Named(_) => 2,
        }
    }

    pub fn quad_poly(&self) -> QuadPoly {
        match self {
            CycFactorId::Cyclo(d) => lift_int_poly(&cyclotomic_poly(*d)),
            CycFactorId::Named(t) => t.poly(),
        }
    }

    /// A tabulated root (validated at table load for named factors).
    pub fn canonical_root(&self) -> RootOfUnity {
        match self {
            CycFactorId::Cyclo(d) => RootOfUnity::primitive(*d),
            CycFactorId::Named(t) => {
                named_entry(*t).canonical_root
            }
        }
    }

    /// All tabulated roots.
    pub fn roots(&self) -> Vec<RootOfUnity> {
        match self {
            CycFactorId::Cyclo(d) => (1..=*d)
                .filter(|k| k.gcd(d) == 1)
                .map(|k| RootOfUnity::new(k as i64, *d))
                .collect(),
            CycFactorId::Named(t) => named_entry(*t).roots.clone(),
        }
    }

    fn sort_key(&self) -> (u64, u8, u8) {
        match self {
            CycFactorId::Cyclo(d) => (*d, 0, 0),
            CycFactorId::Named(t) => (t.d(), 1, t.variant()),
        }
    }
}

impl PartialOrd for CycFactorId {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CycFactorId {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for CycFactorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycFactorId::Cyclo(d) => write!(f, "P{d}"),
            CycFactorId::Named(t) => write!(f, "{t}"),
        }
    }
}

impl From<CycFactorId> for String {
    fn from(id: CycFactorId) -> String {
        id.to_string()
    }
}

impl TryFrom<String> for CycFactorId {
    type Error = String;
    fn try_from(s: String) -> std::result::Result<Self, String> {
        s.parse().map_err(|e: Error| e.to_string())
    }
}

impl std::str::FromStr for CycFactorId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if let Some(rest) = s.strip_prefix("P2,") {
            let (digits, primes) = rest.split_at(rest.find('\'').unwrap_or(rest.len()));
            let d: u64 = digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad factor id {s:?}")))?;
            let variant = primes.len() as u8;
            for t in NamedTag::ALL {
                if t.d() == d && t.variant() == variant {
                    return Ok(CycFactorId::Named(t));
                }
            }
            return Err(Error::Parse(format!("unknown named factor {s:?}")));
        }
        if let Some(d) = s.strip_prefix('P') {
            let d: u64 = d
                .parse()
                .map_err(|_| Error::Parse(format!("bad factor id {s:?}")))?;
            return Ok(CycFactorId::Cyclo(d));
        }
        Err(Error::Parse(format!("bad factor id {s:?}")))
    }
}

struct NamedEntry {
    roots: Vec<RootOfUnity>,
    canonical_root: RootOfUnity,
}

/// Root table for the named factors, produced at load time by testing every
/// candidate `ζ_{2d}^k` against exact evaluation, and cross-checked against
/// the product identities `Φ'·Φ'' = Φ_d(x²)`.
fn named_table() -> &'static HashMap<NamedTag, NamedEntry> {
    static TABLE: OnceLock<HashMap<NamedTag, NamedEntry>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut map = HashMap::new();
        for tag in NamedTag::ALL {
            let poly = tag.poly();
            let d = tag.d();
            // Roots of Φ_d(x²) are square roots of primitive d-th roots of
            // unity, hence 2d-th roots of unity.
            let mut roots: Vec<RootOfUnity> = (0..2 * d)
                .map(|k| RootOfUnity::new(k as i64, 2 * d))
                .filter(|z| is_root(&poly, z))
                .collect();
            roots.sort();
            assert_eq!(
                roots.len(),
                poly.degree(),
                "root table for {tag} is incomplete"
            );
            let canonical_root = roots
                .iter()
                .min_by_key(|z| (z.num() as u128) * (2 * d / z.order()) as u128)
                .copied()
                .unwrap();
            map.insert(
                tag,
                NamedEntry {
                    roots,
                    canonical_root,
                },
            );
        }
        // Product identities over ℤ[√u].
        for (a, b, d) in [
            (NamedTag::P2_4Prime, NamedTag::P2_4Pprime, 4u64),
            (NamedTag::P2_6Prime, NamedTag::P2_6Pprime, 6),
            (NamedTag::P2_12Prime, NamedTag::P2_12Pprime, 12),
        ] {
            let prod = a.poly().mul(&b.poly());
            let expect = lift_int_poly(&cyclotomic_poly(d).compose_power(2));
            assert_eq!(prod, expect, "Φ'·Φ'' != Φ_{d}(x²)");
        }
        map
    })
}

fn named_entry(tag: NamedTag) -> &'static NamedEntry {
    named_table().get(&tag).expect("all tags tabulated")
}

/// The validated `q`-cyclotomic factor table for `q` an odd power of `√u`.
pub fn qcyclo_table(u: u8) -> Result<Vec<CycFactorId>> {
    let tags: &[NamedTag] = match u {
        2 => &[
            NamedTag::P2_1,
            NamedTag::P2_2,
            NamedTag::P2_4Prime,
            NamedTag::P2_4Pprime,
            NamedTag::P2_6,
            NamedTag::P2_12Prime,
            NamedTag::P2_12Pprime,
        ],
        3 => &[
            NamedTag::P2_1,
            NamedTag::P2_2,
            NamedTag::P2_6Prime,
            NamedTag::P2_6Pprime,
        ],
        _ => {
            return Err(Error::Unsupported(format!(
                "no q-cyclotomic table for radicand {u}"
            )))
        }
    };
    named_table(); // force validation
    Ok(tags.iter().map(|&t| CycFactorId::Named(t)).collect())
}

/// `d(ℓ)`: the order of `q^(nη)` mod `ℓ` (mod 4 if `ℓ = 2`), where `n` is the
/// descent factor.
pub fn d_of_ell(q: &QSpec, n: u32, l: u64) -> Result<u64> {
    if l == q.p {
        return Err(Error::EllEqualsP(l));
    }
    let modulus = if l == 2 { 4 } else { l };
    let x = q.pow(n).q_to_eta();
    mult_order(&x, modulus)
}

/// Result of [`phi_val`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PhiValuation {
    pub val: u32,
    pub divides: bool,
}

/// `v_ℓ(Φ_e(q))` for integer `q ≥ 2` together with the divisibility
/// prediction: `ℓ | Φ_e(q)` iff `e = d·ℓ^b` with `b ≥ 0` (additionally
/// `b = −1`, i.e. `e = 1`, when `ℓ = d = 2`), and the valuation is exactly 1
/// when `b ≠ 0`.  A mismatch between computation and prediction is an
/// internal error.
pub fn phi_val(e: u64, q: u64, l: u64) -> Result<PhiValuation> {
    if q.gcd(&l) != 1 {
        return Err(Error::NotAUnit {
            x: q.to_string(),
            m: l,
        });
    }
    let value = cyclotomic_poly(e).eval(&BigInt::from(q));
    let v = if value.is_zero() {
        return Err(Error::Unsupported("Φ_e(q) = 0 (needs q ≥ 2)".into()));
    } else {
        val(&value, l)?
    };

    let modulus = if l == 2 { 4 } else { l };
    let d = mult_order(&BigInt::from(q), modulus)?;
    // b such that e = d·l^b, if any.
    let b: Option<i32> = if e % d == 0 {
        let mut m = e / d;
        let mut b = 0;
        while m % l == 0 {
            m /= l;
            b += 1;
        }
        (m == 1).then_some(b)
    } else if l == 2 && d == 2 && e == 1 {
        Some(-1)
    } else {
        None
    };
    let divides = b.is_some();

    if divides != (v > 0) {
        return Err(Error::Falsified(format!(
            "divisibility prediction failed: e={e}, q={q}, l={l}: predicted {divides}, v={v}"
        )));
    }
    if let Some(b) = b {
        if b != 0 && v != 1 {
            return Err(Error::Falsified(format!(
                "valuation prediction failed: e={e}, q={q}, l={l}: b={b} but v={v}"
            )));
        }
    }
    Ok(PhiValuation { val: v, divides })
}

/// Outcome of an exhaustive verification sweep.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SweepReport {
    pub checks: u64,
    pub violations: Vec<String>,
}

impl SweepReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `v_ℓ((x^f − 1)/(x − 1)) = v_ℓ(f)` for all primes `ℓ ≤ l_max`, all
/// `x ≤ x_max` with `x ≡ 1 (mod ℓ)` (`mod 4` if `ℓ = 2`), all `f ≤ f_max`.
/// The quotient is computed as the geometric sum `1 + x + … + x^(f−1)`, which
/// also covers `x = 1`.
pub fn verify_lemma_div(x_max: u64, f_max: u64, l_max: u64) -> SweepReport {
    let mut report = SweepReport::default();
    for l in crate::arith::primes_up_to(l_max) {
        let step = if l == 2 { 4 } else { l };
        let mut x = 1u64;
        while x <= x_max {
            let xb = BigInt::from(x);
            let mut sum = BigInt::zero();
            let mut power = BigInt::one();
            for f in 1..=f_max {
                sum += &power; // now sum = 1 + x + … + x^(f-1)
                power *= &xb;
                let lhs = val(&sum, l).expect("geometric sum is positive");
                let rhs = val(&BigInt::from(f), l).unwrap();
                report.checks += 1;
                if lhs != rhs {
                    report
                        .violations
                        .push(format!("x={x}, f={f}, l={l}: lhs={lhs}, rhs={rhs}"));
                }
            }
            x += step;
        }
    }
    report
}

/// Runs [`phi_val`] (computation plus prediction) over `2 ≤ q ≤ q_max`,
/// `1 ≤ e ≤ e_max`, primes `ℓ ≤ l_max` with `gcd(q, ℓ) = 1`.
pub fn verify_divcyclo(q_max: u64, e_max: u64, l_max: u64) -> SweepReport {
    let mut report = SweepReport::default();
    for l in crate::arith::primes_up_to(l_max) {
        for q in 2..=q_max {
            if q.gcd(&l) != 1 {
                continue;
            }
            for e in 1..=e_max {
                report.checks += 1;
                if let Err(err) = phi_val(e, q, l) {
                    report.violations.push(err.to_string());
                }
            }
        }
    }
    report
}
