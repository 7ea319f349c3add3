//! Static data for quasi-simple factors: generalized degrees `(d_i, ε_i)`,
//! twist validity, positive-root counts, and the exception classification
//! used by the Sylow analyzer.
//!
//! Isogeny type is deliberately not part of the data model: the order of the
//! fixed-point group is invariant under quotients by finite central
//! subgroups, and this crate computes orders and Sylow data only.

use crate::arith::{QSpec, RootOfUnity};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    D,
    E,
    F,
    G,
}

/// One quasi-simple factor of a semisimple group, together with the number of
/// Dynkin components permuted transitively by the isogeny (`descent`).
///
/// `B` with rank `n` also stands for `C_n`: the two share degrees, Weyl group
/// and order formula, and the input parser canonicalizes `C` to `B`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct SimpleFactor {
    pub series: Series,
    pub rank: u8,
    /// Order of the diagram automorphism: 1, 2 or 3.
    pub twist: u8,
    /// True exactly for the Suzuki/Ree cases ²B₂, ²G₂, ²F₄, where the isogeny
    /// swaps root lengths and `q` is an odd power of √2 or √3.
    pub very_twisted: bool,
    /// Number of permuted Dynkin components (descent of scalars).
    pub descent: u32,
}

/// A generalized degree `(d, ε)` of the reflection coset.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GenDegree {
    pub d: u64,
    pub eps: RootOfUnity,
}

impl GenDegree {
    fn new(d: u64, eps: RootOfUnity) -> Self {
        GenDegree { d, eps }
    }
}

/// Exception classes of the main structure theorem: cases where the abelian
/// normal layer of the Sylow subgroup is the fixed-point group of a full
/// maximal torus rather than of the Sylow Φ-torus, plus the one genuinely
/// abelian Ree exception.
///
/// The two ℓ = 2 classes trigger exactly when some generalized degree with
/// real ε lies outside `a(ζ_{d(2)})`: every such degree contributes one
/// extra factor of 2 to the group order that the Φ-torus misses.  For
/// `d = 1` those are the degrees with ε = −1 (any non-split type, including
/// ²D₂ₙ); for `d = 2` the odd degrees with ε = 1 (Aₙ with n > 1, D₂ₙ₊₁, E₆)
/// and the even degrees with ε = −1 (²D₂ₙ).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum ExceptionClass {
    None,
    /// ℓ = 3 on triality D₄.
    TriD4L3,
    /// ℓ = 2, d(ℓ) = 2, some real-ε degree outside a(−1).
    SplitL2D2,
    /// ℓ = 2, d(ℓ) = 1, some real-ε degree outside a(1).
    NonSplitL2D1,
    /// ℓ = 2 on ²G₂: the Sylow 2-subgroup is abelian (ℤ/2)³ even though
    /// |D(ℓ)| = 2.
    Ree2G2L2,
}

impl fmt::Display for ExceptionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ExceptionClass::None => "none",
            ExceptionClass::TriD4L3 => "3D4-ell3",
            ExceptionClass::SplitL2D2 => "split-ell2-d2",
            ExceptionClass::NonSplitL2D1 => "nonsplit-ell2-d1",
            ExceptionClass::Ree2G2L2 => "2G2-ell2",
        };
        write!(f, "{s}")
    }
}

impl SimpleFactor {
    pub fn new(series: Series, rank: u8, twist: u8, descent: u32) -> Result<Self> {
        if descent == 0 {
            return Err(Error::InvalidGroup("descent factor must be ≥ 1".into()));
        }
        let very_twisted = matches!(
            (series, rank, twist),
            (Series::B, 2, 2) | (Series::G, 2, 2) | (Series::F, 4, 2)
        );
        let f = SimpleFactor {
            series,
            rank,
            twist,
            very_twisted,
            descent,
        };
        f.check()?;
        Ok(f)
    }

    fn check(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidGroup(msg));
        match self.series {
            Series::A => {
                if self.rank < 1 {
                    return bad("A requires rank ≥ 1".into());
                }
                if self.twist == 2 && self.rank < 2 {
                    return bad("2A1 is isomorphic to A1; use A1".into());
                }
                if self.twist == 3 {
                    return bad("twist 3 only exists for D4".into());
                }
            }
            Series::B => match self.rank {
                0 | 1 => return bad("B1 = C1 is A1; use A1".into()),
                _ => {
                    if self.twist == 2 && !self.very_twisted {
                        return bad("2B_n only exists very-twisted at rank 2 (Suzuki)".into());
                    }
                    if self.twist == 3 {
                        return bad("twist 3 only exists for D4".into());
                    }
                }
            },
            Series::D => match self.rank {
                0 | 1 => return bad("D rank must be ≥ 4".into()),
                2 => return bad("D2 = A1 x A1; use A1xA1".into()),
                3 => return bad("D3 = A3; use A3 (or 2A3)".into()),
                _ => {
                    if self.twist == 3 && self.rank != 4 {
                        return bad("twist 3 only exists for D4".into());
                    }
                }
            },
            Series::E => {
                if !matches!(self.rank, 6 | 7 | 8) {
                    return bad("E rank must be 6, 7 or 8".into());
                }
                if self.twist == 2 && self.rank != 6 {
                    return bad("only E6 admits a twist".into());
                }
                if self.twist == 3 {
                    return bad("twist 3 only exists for D4".into());
                }
            }
            Series::F => {
                if self.rank != 4 {
                    return bad("F rank must be 4".into());
                }
                if self.twist == 2 && !self.very_twisted {
                    return bad("2F4 is very twisted (Ree)".into());
                }
                if self.twist == 3 {
                    return bad("twist 3 only exists for D4".into());
                }
            }
            Series::G => {
                if self.rank != 2 {
                    return bad("G rank must be 2".into());
                }
                if self.twist == 2 && !self.very_twisted {
                    return bad("2G2 is very twisted (Ree)".into());
                }
                if self.twist == 3 {
                    return bad("twist 3 only exists for D4".into());
                }
            }
        }
        if !matches!(self.twist, 1 | 2 | 3) {
            return bad(format!("twist must be 1, 2 or 3, got {}", self.twist));
        }
        Ok(())
    }

    /// Defining characteristic forced by a very twisted factor.
    pub fn forced_p(&self) -> Option<u64> {
        if !self.very_twisted {
            return None;
        }
        Some(match self.series {
            Series::B | Series::F => 2,
            Series::G => 3,
            _ => unreachable!(),
        })
    }

    /// Untwisted reflection degrees of the underlying diagram.
    pub fn reflection_degrees(&self) -> Vec<u64> {
        match (self.series, self.rank) {
            (Series::A, n) => (2..=n as u64 + 1).collect(),
            (Series::B, n) => (1..=n as u64).map(|i| 2 * i).collect(),
            (Series::D, n) => {
                let mut d: Vec<u64> = (1..n as u64).map(|i| 2 * i).collect();
                d.push(n as u64);
                d.sort_unstable();
                d
            }
            (Series::G, _) => vec![2, 6],
            (Series::F, _) => vec![2, 6, 8, 12],
            (Series::E, 6) => vec![2, 5, 6, 8, 9, 12],
            (Series::E, 7) => vec![2, 6, 8, 10, 12, 14, 18],
            (Series::E, 8) => vec![2, 8, 12, 14, 18, 20, 24, 30],
            _ => unreachable!("validated at construction"),
        }
    }

    /// Number of positive roots, as an independent table (the degree tables
    /// must satisfy `Σ(d_i − 1) = |Σ⁺|`).
    pub fn positive_roots(&self) -> u64 {
        let n = self.rank as u64;
        match self.series {
            Series::A => n * (n + 1) / 2,
            Series::B => n * n,
            Series::D => n * (n - 1),
            Series::G => 6,
            Series::F => 24,
            Series::E => match self.rank {
                6 => 36,
                7 => 63,
                _ => 120,
            },
        }
    }

    /// The generalized degrees `(d_i, ε_i)` of the reflection coset, before
    /// descent of scalars.
    pub fn generalized_degrees(&self) -> Vec<GenDegree> {
        let one = RootOfUnity::one;
        let minus = RootOfUnity::minus_one;
        let sign_of = |d: u64| if d % 2 == 0 { one() } else { minus() };
        match (self.series, self.twist, self.very_twisted) {
            (_, 1, false) => self
                .reflection_degrees()
                .into_iter()
                .map(|d| GenDegree::new(d, one()))
                .collect(),
            (Series::A, 2, false) | (Series::E, 2, false) => self
                .reflection_degrees()
                .into_iter()
                .map(|d| GenDegree::new(d, sign_of(d)))
                .collect(),
            (Series::D, 2, false) => {
                let n = self.rank as u64;
                let mut out: Vec<GenDegree> =
                    (1..n).map(|i| GenDegree::new(2 * i, one())).collect();
                out.push(GenDegree::new(n, minus()));
                out
            }
            (Series::D, 3, false) => vec![
                GenDegree::new(2, one()),
                GenDegree::new(6, one()),
                GenDegree::new(4, RootOfUnity::new(1, 3)),
                GenDegree::new(4, RootOfUnity::new(2, 3)),
            ],
            (Series::B, 2, true) => vec![GenDegree::new(2, one()), GenDegree::new(4, minus())],
            (Series::G, 2, true) => vec![GenDegree::new(2, one()), GenDegree::new(6, minus())],
            (Series::F, 2, true) => vec![
                GenDegree::new(2, one()),
                GenDegree::new(6, minus()),
                GenDegree::new(8, one()),
                GenDegree::new(12, minus()),
            ],
            _ => unreachable!("validated at construction"),
        }
    }

    /// Is the factor split (no twist, no very-twist)?
    pub fn is_split(&self) -> bool {
        self.twist == 1
    }

    /// Exception classification for the pair `(ℓ, d(ℓ))`.
    pub fn exception_class(&self, l: u64, d: u64) -> ExceptionClass {
        if l == 2 && self.series == Series::G && self.very_twisted {
            return ExceptionClass::Ree2G2L2;
        }
        if l == 3 && self.series == Series::D && self.twist == 3 {
            return ExceptionClass::TriD4L3;
        }
        if l == 2 && !self.very_twisted && (d == 1 || d == 2) {
            let zeta = if d == 1 {
                RootOfUnity::one()
            } else {
                RootOfUnity::minus_one()
            };
            // A real-ε degree outside a(ζ_{d}) contributes one factor of 2
            // to |G^F| that the Φ-torus misses; complex ε pairs (³D₄) have
            // odd values and contribute nothing at ℓ = 2.
            let missing_real = self
                .generalized_degrees()
                .iter()
                .any(|gd| gd.eps.order() <= 2 && zeta.pow(gd.d) != gd.eps);
            if missing_real {
                return if d == 1 {
                    ExceptionClass::NonSplitL2D1
                } else {
                    ExceptionClass::SplitL2D2
                };
            }
        }
        ExceptionClass::None
    }

    /// Parses a single factor: `[2|3]SERIESrank[^n]`, e.g. `A3`, `2A3`,
    /// `3D4`, `2B2`, `2F4`, `B2^2`.
    pub fn parse(s: &str) -> Result<Self> {
        let (body, descent) = match s.split_once('^') {
            Some((b, n)) => {
                let n: u32 = n
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad descent factor in {s:?}")))?;
                (b, n)
            }
            None => (s, 1),
        };
        let bytes = body.as_bytes();
        if bytes.is_empty() {
            return Err(Error::Parse("empty group type".into()));
        }
        let (twist, rest) = match bytes[0] {
            b'2' => (2u8, &body[1..]),
            b'3' => (3u8, &body[1..]),
            _ => (1u8, body),
        };
        let mut chars = rest.chars();
        let series_ch = chars
            .next()
            .ok_or_else(|| Error::Parse(format!("missing series in {s:?}")))?;
        let rank: u8 = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in {s:?}")))?;
        let series = match series_ch {
            'A' => Series::A,
            'B' => Series::B,
            'C' => {
                // C_n is an alias of B_n here; C1 is A1.
                if rank == 1 {
                    return Err(Error::InvalidGroup("C1 = A1; use A1".into()));
                }
                Series::B
            }
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            other => return Err(Error::Parse(format!("unknown series {other:?} in {s:?}"))),
        };
        SimpleFactor::new(series, rank, twist, descent)
    }
}

impl fmt::Display for SimpleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twist > 1 {
            write!(f, "{}", self.twist)?;
        }
        let s = match self.series {
            Series::A => "A",
            Series::B => "B",
            Series::D => "D",
            Series::E => "E",
            Series::F => "F",
            Series::G => "G",
        };
        write!(f, "{s}{}", self.rank)?;
        if self.descent > 1 {
            write!(f, "^{}", self.descent)?;
        }
        Ok(())
    }
}

/// A semisimple group as an almost direct product of quasi-simple factors
/// (each possibly a descent of scalars).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GroupSpec {
    pub factors: Vec<SimpleFactor>,
}

impl GroupSpec {
    pub fn single(f: SimpleFactor) -> Self {
        GroupSpec { factors: vec![f] }
    }

    /// Parses an `x`-separated product, e.g. `A1xA1` or `2B2x B2^2`.
    pub fn parse(s: &str) -> Result<Self> {
        let factors: Result<Vec<SimpleFactor>> = s
            .split(['x', '*'])
            .map(|part| SimpleFactor::parse(part.trim()))
            .collect();
        let factors = factors?;
        if factors.is_empty() {
            return Err(Error::Parse("empty group specification".into()));
        }
        Ok(GroupSpec { factors })
    }

    /// Checks compatibility of every factor with the global `q`:
    /// a very twisted factor needs `q^descent` to be an odd power of the
    /// matching `√p`; any other factor needs `q^descent` to be an integer.
    pub fn validate_q(&self, q: &QSpec) -> Result<()> {
        for f in &self.factors {
            let qf = q.pow(f.descent);
            if f.very_twisted {
                let p = f.forced_p().unwrap();
                if qf.eta != 2 || qf.p != p {
                    return Err(Error::InvalidQ(format!(
                        "{f} requires q^{} to be an odd power of sqrt{p}, got {qf}",
                        f.descent
                    )));
                }
            } else if qf.eta != 1 {
                return Err(Error::InvalidQ(format!(
                    "{f} requires q^{} to be an integer, got {qf}",
                    f.descent
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factor(s: &str) -> SimpleFactor {
        SimpleFactor::parse(s).unwrap()
    }

    #[test]
    fn degree_tables_match_positive_roots() {
        for s in [
            "A1", "A2", "A5", "B2", "B3", "B8", "D4", "D5", "G2", "F4", "E6", "E7", "E8", "2A2",
            "2A7", "2D4", "2D5", "3D4", "2E6", "2B2", "2G2", "2F4",
        ] {
            let f = factor(s);
            let sum: u64 = f
                .generalized_degrees()
                .iter()
                .map(|gd| gd.d - 1)
                .sum();
            assert_eq!(sum, f.positive_roots(), "Σ(d_i - 1) mismatch for {s}");
        }
    }

    #[test]
    fn twisted_degree_multiset_matches_untwisted() {
        for s in ["2A3", "2D5", "3D4", "2E6"] {
            let f = factor(s);
            let mut twisted: Vec<u64> = f.generalized_degrees().iter().map(|g| g.d).collect();
            let mut plain = f.reflection_degrees();
            twisted.sort_unstable();
            plain.sort_unstable();
            assert_eq!(twisted, plain, "degree multiset changes under twist {s}");
        }
    }

    #[test]
    fn eps_orbits_closed_under_conjugation() {
        // The order formula is real: non-real ε must come in conjugate pairs.
        for s in ["3D4", "2A4", "2E6", "2F4"] {
            let f = factor(s);
            let degs = f.generalized_degrees();
            for gd in &degs {
                let conj = GenDegree {
                    d: gd.d,
                    eps: gd.eps.pow(gd.eps.order() - 1),
                };
                assert!(
                    degs.iter().any(|x| x.d == conj.d && x.eps == conj.eps),
                    "missing conjugate of ({}, {}) in {s}",
                    gd.d,
                    gd.eps
                );
            }
        }
    }

    #[test]
    fn very_twisted_tables() {
        assert_eq!(
            factor("2B2").generalized_degrees(),
            vec![
                GenDegree::new(2, RootOfUnity::one()),
                GenDegree::new(4, RootOfUnity::minus_one())
            ]
        );
        assert_eq!(
            factor("2F4").generalized_degrees(),
            vec![
                GenDegree::new(2, RootOfUnity::one()),
                GenDegree::new(6, RootOfUnity::minus_one()),
                GenDegree::new(8, RootOfUnity::one()),
                GenDegree::new(12, RootOfUnity::minus_one())
            ]
        );
        assert_eq!(
            factor("A1").generalized_degrees(),
            vec![GenDegree::new(2, RootOfUnity::one())]
        );
    }

    #[test]
    fn parse_and_canonicalize() {
        assert_eq!(factor("C3"), factor("B3"));
        assert!(SimpleFactor::parse("C1").is_err());
        assert!(SimpleFactor::parse("D3").is_err());
        assert!(SimpleFactor::parse("D2").is_err());
        assert!(SimpleFactor::parse("B1").is_err());
        assert!(SimpleFactor::parse("2A1").is_err());
        assert!(SimpleFactor::parse("3D5").is_err());
        assert!(SimpleFactor::parse("2E7").is_err());
        let su = factor("2B2");
        assert!(su.very_twisted);
        assert_eq!(su.forced_p(), Some(2));
        assert_eq!(factor("2G2").forced_p(), Some(3));
        let g = GroupSpec::parse("A1xB2^2").unwrap();
        assert_eq!(g.factors.len(), 2);
        assert_eq!(g.factors[1].descent, 2);
        assert_eq!(g.to_string(), "A1xB2^2");
        assert_eq!(factor("2C2"), factor("2B2"));
    }

    #[test]
    fn q_compatibility() {
        let sqrt2 = QSpec::new(2, 2, 1).unwrap();
        let sqrt3 = QSpec::new(3, 2, 1).unwrap();
        let q4 = QSpec::new(2, 1, 2).unwrap();

        GroupSpec::single(factor("2B2")).validate_q(&sqrt2).unwrap();
        assert!(GroupSpec::single(factor("2B2")).validate_q(&sqrt3).is_err());
        assert!(GroupSpec::single(factor("2B2")).validate_q(&q4).is_err());
        assert!(GroupSpec::single(factor("2G2")).validate_q(&sqrt3).is_ok());

        // Split factors at η = 2 need an even descent.
        assert!(GroupSpec::single(factor("B2")).validate_q(&sqrt2).is_err());
        assert!(GroupSpec::single(factor("B2^2")).validate_q(&sqrt2).is_ok());
        // Very twisted with even descent would make q^n an integer: invalid.
        assert!(GroupSpec::single(factor("2B2^2")).validate_q(&sqrt2).is_err());
        assert!(GroupSpec::single(factor("2B2^3")).validate_q(&sqrt2).is_ok());

        // Mixed product from the descent discussion: 2B2 x B2^2 at q = √2.
        GroupSpec::parse("2B2xB2^2")
            .unwrap()
            .validate_q(&sqrt2)
            .unwrap();
    }

    #[test]
    fn exception_classification() {
        assert_eq!(
            factor("3D4").exception_class(3, 1),
            ExceptionClass::TriD4L3
        );
        assert_eq!(
            factor("3D4").exception_class(3, 2),
            ExceptionClass::TriD4L3
        );
        assert_eq!(
            factor("E6").exception_class(2, 2),
            ExceptionClass::SplitL2D2
        );
        assert_eq!(factor("E6").exception_class(2, 1), ExceptionClass::None);
        assert_eq!(
            factor("A2").exception_class(2, 2),
            ExceptionClass::SplitL2D2
        );
        assert_eq!(factor("A1").exception_class(2, 2), ExceptionClass::None);
        assert_eq!(
            factor("D5").exception_class(2, 2),
            ExceptionClass::SplitL2D2
        );
        assert_eq!(factor("D4").exception_class(2, 2), ExceptionClass::None);
        assert_eq!(
            factor("2A2").exception_class(2, 1),
            ExceptionClass::NonSplitL2D1
        );
        assert_eq!(factor("2A2").exception_class(2, 2), ExceptionClass::None);
        assert_eq!(
            factor("2D5").exception_class(2, 1),
            ExceptionClass::NonSplitL2D1
        );
        // ²D₅ at d = 2: the odd degree (5, −1) satisfies (−1)⁵ = −1, so
        // a(−1) is everything and no correction is needed.
        assert_eq!(factor("2D5").exception_class(2, 2), ExceptionClass::None);
        // ²D₄ carries (4, −1): outside a(1) and outside a(−1).
        assert_eq!(
            factor("2D4").exception_class(2, 1),
            ExceptionClass::NonSplitL2D1
        );
        assert_eq!(
            factor("2D4").exception_class(2, 2),
            ExceptionClass::SplitL2D2
        );
        assert_eq!(factor("3D4").exception_class(2, 1), ExceptionClass::None);
        assert_eq!(factor("3D4").exception_class(2, 2), ExceptionClass::None);
        assert_eq!(
            factor("2E6").exception_class(2, 1),
            ExceptionClass::NonSplitL2D1
        );
        assert_eq!(
            factor("2G2").exception_class(2, 2),
            ExceptionClass::Ree2G2L2
        );
        assert_eq!(factor("B3").exception_class(5, 4), ExceptionClass::None);
        assert_eq!(factor("B2").exception_class(2, 2), ExceptionClass::None);
    }
}
