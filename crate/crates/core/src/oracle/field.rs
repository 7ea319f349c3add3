//! Small finite fields `F_q` (`q = p` or `p²`) with precomputed operation
//! tables.  Elements are encoded as `0..q`; for `F_{p²} = F_p[t]/(t² − r)`
//! the element `a + b·t` is encoded as `a + b·p`.

use crate::{Error, Result};

#[derive(Clone)]
pub struct Fq {
    pub q: usize,
    pub p: u64,
    pub add: Vec<u8>,
    pub mul: Vec<u8>,
    pub neg: Vec<u8>,
    /// Frobenius `x ↦ x^p` (the conjugation used for unitary forms).
    pub frob: Vec<u8>,
}

impl Fq {
    pub fn new(q: u64) -> Result<Fq> {
        let (p, e) = crate::arith::prime_power_split(q)
            .ok_or_else(|| Error::InvalidQ(format!("{q} is not a prime power")))?;
        if e > 2 || q > 128 {
            return Err(Error::Unsupported(format!(
                "field F_{q} out of range for the oracle"
            )));
        }
        let q = q as usize;
        let pu = p as usize;

        // multiplication of encoded elements
        let raw_mul: Box<dyn Fn(usize, usize) -> usize> = if e == 1 {
            Box::new(move |a, b| (a * b) % pu)
        } else {
            // t² = r with r a non-residue mod p (p odd), or t² = t + 1 for p = 2
            if p == 2 {
                Box::new(move |a, b| {
                    let (a0, a1) = (a % 2, a / 2);
                    let (b0, b1) = (b % 2, b / 2);
                    // (a0 + a1 t)(b0 + b1 t), t² = t + 1
                    let c0 = (a0 * b0 + a1 * b1) % 2;
                    let c1 = (a0 * b1 + a1 * b0 + a1 * b1) % 2;
                    c0 + 2 * c1
                })
            } else {
                let r = (1..p)
                    .find(|x| (1..p).all(|y| (y * y) % p != *x))
                    .expect("a quadratic non-residue exists") as usize;
                Box::new(move |a, b| {
                    let (a0, a1) = (a % pu, a / pu);
                    let (b0, b1) = (b % pu, b / pu);
                    let c0 = (a0 * b0 + a1 * b1 % pu * r) % pu;
                    let c1 = (a0 * b1 + a1 * b0) % pu;
                    c0 + pu * c1
                })
            }
        };
        let raw_add = move |a: usize, b: usize| -> usize {
            if e == 1 {
                (a + b) % pu
            } else {
                let (a0, a1) = (a % pu, a / pu);
                let (b0, b1) = (b % pu, b / pu);
                (a0 + b0) % pu + pu * ((a1 + b1) % pu)
            }
        };

        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = raw_add(a, b) as u8;
                mul[a * q + b] = raw_mul(a, b) as u8;
            }
        }
        let mut neg = vec![0u8; q];
        for a in 0..q {
            neg[a] = (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8;
        }
        let mut frob = vec![0u8; q];
        for a in 0..q {
            let mut acc = a;
            for _ in 1..p {
                acc = mul[acc * q + a] as usize;
            }
            frob[a] = acc as u8;
        }
        let f = Fq {
            q,
            p,
            add,
            mul,
            neg,
            frob,
        };
        f.check()?;
        Ok(f)
    }

    fn check(&self) -> Result<()> {
        // every nonzero element invertible; frobenius is an involution on F_{p²}
        for a in 1..self.q {
            if !(1..self.q).any(|b| self.mul(a as u8, b as u8) == 1) {
                return Err(Error::Falsified(format!(
                    "non-invertible nonzero element {a} in F_{}",
                    self.q
                )));
            }
        }
        for a in 0..self.q {
            let fa = self.frob[a] as usize;
            if self.frob[fa] as usize != a {
                return Err(Error::Falsified("Frobenius is not an involution".into()));
            }
        }
        Ok(())
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn conj(&self, a: u8) -> u8 {
        self.frob[a as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_spot_checks() {
        for q in [2u64, 3, 4, 5, 9, 25] {
            let f = Fq::new(q).unwrap();
            let n = f.q as u8;
            for a in 0..n {
                assert_eq!(f.add(a, f.neg(a)), 0);
                for b in 0..n {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..n {
                        // distributivity
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
            }
        }
        assert!(Fq::new(8).is_err()); // cubic extensions unsupported
        assert!(Fq::new(6).is_err());
    }

    #[test]
    fn frobenius_fixes_prime_field() {
        let f = Fq::new(9).unwrap();
        for a in 0..3u8 {
            assert_eq!(f.conj(a), a);
        }
        // conj is a field automorphism
        for a in 0..9u8 {
            for b in 0..9u8 {
                assert_eq!(f.conj(f.mul(a, b)), f.mul(f.conj(a), f.conj(b)));
                assert_eq!(f.conj(f.add(a, b)), f.add(f.conj(a), f.conj(b)));
            }
        }
    }
}
