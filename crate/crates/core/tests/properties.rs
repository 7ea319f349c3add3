//! Property tests for the arithmetic substrate.

use gensylow::arith::{mult_order, quad_eval, val, QSpec, QuadInt};
use gensylow::poly::Poly;
use num_bigint::BigInt;
use proptest::prelude::*;

fn small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])
}

proptest! {
    /// v_ℓ(n·m) = v_ℓ(n) + v_ℓ(m)
    #[test]
    fn valuation_is_additive(n in -100_000i64..100_000, m in -100_000i64..100_000, l in small_prime()) {
        prop_assume!(n != 0 && m != 0);
        let (nb, mb) = (BigInt::from(n), BigInt::from(m));
        let lhs = val(&(&nb * &mb), l).unwrap();
        let rhs = val(&nb, l).unwrap() + val(&mb, l).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    /// mult_order returns the minimal exponent: x^d ≡ 1 and no proper
    /// divisor of d works.
    #[test]
    fn mult_order_is_minimal(x in 1u64..1000, m in 2u64..200) {
        prop_assume!(num_integer::gcd(x, m) == 1);
        let d = mult_order(&BigInt::from(x), m).unwrap();
        let pow = |e: u64| BigInt::from(x).modpow(&BigInt::from(e), &BigInt::from(m));
        prop_assert_eq!(pow(d), BigInt::from(1u64));
        for r in 2..=d {
            if d % r == 0 {
                prop_assert_ne!(pow(d / r), BigInt::from(1u64));
            }
        }
    }

    /// quad_eval is multiplicative whenever both factors evaluate.
    #[test]
    fn quad_eval_is_multiplicative(
        c in prop::collection::vec((-5i64..=5, -5i64..=5), 1..4),
        d in prop::collection::vec((-5i64..=5, -5i64..=5), 1..4),
        a in prop::sample::select(vec![1u32, 3, 5]),
    ) {
        let q = QSpec::new(2, 2, a).unwrap();
        let mk = |v: &[(i64, i64)]| {
            Poly::new(
                v.iter()
                    .map(|&(c0, c1)| {
                        QuadInt::new(2, BigInt::from(c0), BigInt::from(c1))
                    })
                    .collect::<Vec<_>>(),
            )
        };
        let p1 = mk(&c);
        let p2 = mk(&d);
        if let (Ok(v1), Ok(v2)) = (quad_eval(&p1, &q), quad_eval(&p2, &q)) {
            let prod = quad_eval(&p1.mul(&p2), &q).unwrap();
            prop_assert_eq!(prod, v1 * v2);
        }
    }

    /// Monic division inverts multiplication.
    #[test]
    fn poly_division_round_trip(
        a in prop::collection::vec(-9i64..=9, 1..6),
        b in prop::collection::vec(-9i64..=9, 0..4),
    ) {
        let p = Poly::new(a.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>());
        let mut bc: Vec<BigInt> = b.iter().map(|&c| BigInt::from(c)).collect();
        bc.push(BigInt::from(1)); // monic divisor
        let q = Poly::new(bc);
        let prod = p.mul(&q);
        if p.is_zero() {
            prop_assert!(prod.is_zero());
        } else {
            prop_assert_eq!(prod.div_exact_monic(&q), Some(p));
        }
    }

    /// Smith normal form: U·A·V diagonal with unimodular transforms and a
    /// divisibility chain.
    #[test]
    fn smith_form_properties(
        entries in prop::collection::vec(-20i64..=20, 9),
    ) {
        use gensylow::lattice::{smith, IntMat};
        use num_traits::{Signed, Zero};
        let a = IntMat::from_fn(3, 3, |i, j| BigInt::from(entries[3 * i + j]));
        let s = smith(&a);
        prop_assert_eq!(s.u.det().abs(), BigInt::from(1));
        prop_assert_eq!(s.v.det().abs(), BigInt::from(1));
        let d = s.u.mul(&a).mul(&s.v);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    prop_assert!(d.get(i, j).is_zero());
                }
            }
        }
        for w in s.d.windows(2) {
            if !w[1].is_zero() {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }
}
