//! Generic finite-group engine over an explicit element list.
//!
//! Used both for enumerated matrix groups over finite fields and for the
//! integer-matrix reflection groups `W_Φ`.  Groups stay small (≤ ~10⁵
//! elements); subgroup and normalizer computations scan the element list.

use crate::{Error, Result};
use std::collections::{BTreeSet, HashMap};
use std::hash::Hash;

/// Multiplication context for group elements.
pub trait GroupOps {
    type Elem: Clone + Eq + Hash;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn identity(&self) -> Self::Elem;
}

/// A finite group given by its full element list.
pub struct FiniteGroup<C: GroupOps> {
    pub ctx: C,
    pub elements: Vec<C::Elem>,
    pub index: HashMap<C::Elem, u32>,
    inverse: Vec<u32>,
}

/// A subgroup stored as element indices into the parent group.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub members: BTreeSet<u32>,
    pub generators: Vec<u32>,
}

impl Subgroup {
    pub fn order(&self) -> u64 {
        self.members.len() as u64
    }
}

impl<C: GroupOps> FiniteGroup<C> {
    /// Builds the group from a complete element list.  Closure under
    /// products and inverses is the caller's responsibility; identity
    /// membership is checked, and the inverse table construction fails if
    /// some element has no inverse in the list.
    pub fn from_elements(ctx: C, elements: Vec<C::Elem>) -> Result<Self> {
        let mut index = HashMap::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i as u32).is_some() {
                return Err(Error::Falsified("duplicate element in group list".into()));
            }
        }
        let id = ctx.identity();
        if !index.contains_key(&id) {
            return Err(Error::Falsified("identity missing from group list".into()));
        }
        let mut g = FiniteGroup {
            ctx,
            elements,
            index,
            inverse: Vec::new(),
        };
        g.inverse = g.build_inverses()?;
        Ok(g)
    }

    /// Builds the group as the closure of a generating set.
    pub fn from_generators(ctx: C, gens: Vec<C::Elem>) -> Result<Self> {
        let id = ctx.identity();
        let mut elements = vec![id.clone()];
        let mut seen: HashMap<C::Elem, u32> = HashMap::new();
        seen.insert(id, 0);
        let mut head = 0;
        while head < elements.len() {
            let w = elements[head].clone();
            for g in &gens {
                let next = ctx.mul(&w, g);
                if !seen.contains_key(&next) {
                    seen.insert(next.clone(), elements.len() as u32);
                    elements.push(next);
                }
            }
            head += 1;
        }
        FiniteGroup::from_elements(ctx, elements)
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn idx(&self, e: &C::Elem) -> Option<u32> {
        self.index.get(e).copied()
    }

    pub fn identity_idx(&self) -> u32 {
        self.idx(&self.ctx.identity()).expect("identity present")
    }

    pub fn mul_idx(&self, a: u32, b: u32) -> u32 {
        let p = self
            .ctx
            .mul(&self.elements[a as usize], &self.elements[b as usize]);
        *self
            .index
            .get(&p)
            .expect("group must be closed under multiplication")
    }

    fn build_inverses(&self) -> Result<Vec<u32>> {
        let id = self.identity_idx();
        let mut inv = vec![u32::MAX; self.elements.len()];
        for i in 0..self.elements.len() as u32 {
            if inv[i as usize] != u32::MAX {
                continue;
            }
            // g^(o-1) found by walking the cyclic group generated by g
            let mut prev = i;
            let mut cur = self.mul_idx(i, i);
            if i == id {
                inv[i as usize] = id;
                continue;
            }
            loop {
                if cur == id {
                    inv[i as usize] = prev;
                    inv[prev as usize] = i;
                    break;
                }
                prev = cur;
                cur = self.mul_idx(cur, i);
            }
        }
        Ok(inv)
    }

    pub fn inverse_idx(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn element_order(&self, a: u32) -> u64 {
        let id = self.identity_idx();
        let mut cur = a;
        let mut o = 1;
        while cur != id {
            cur = self.mul_idx(cur, a);
            o += 1;
        }
        o
    }

    pub fn power_idx(&self, a: u32, mut e: u64) -> u32 {
        let mut acc = self.identity_idx();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_idx(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_idx(base, base);
            }
        }
        acc
    }

    /// Closure of a set of generator indices.
    pub fn subgroup_closure(&self, gens: &[u32]) -> Subgroup {
        let id = self.identity_idx();
        let mut members = BTreeSet::new();
        members.insert(id);
        let mut frontier = vec![id];
        while let Some(w) = frontier.pop() {
            for &g in gens {
                let next = self.mul_idx(w, g);
                if members.insert(next) {
                    frontier.push(next);
                }
            }
        }
        Subgroup {
            members,
            generators: gens.to_vec(),
        }
    }

    /// Normalizer `N_G(P)` by scanning the whole group.
    pub fn normalizer(&self, p: &Subgroup) -> Vec<u32> {
        let mut out = Vec::new();
        'outer: for g in 0..self.elements.len() as u32 {
            let ginv = self.inverse_idx(g);
            for &s in &p.generators {
                let c = self.mul_idx(self.mul_idx(g, s), ginv);
                if !p.members.contains(&c) {
                    continue 'outer;
                }
            }
            out.push(g);
        }
        out
    }

    /// The ℓ-power part of an element: `g^(o/ℓ^v)` where `o` is the order of
    /// `g` and `v = v_ℓ(o)`; identity when `ℓ ∤ o`.
    pub fn ell_part(&self, g: u32, l: u64) -> u32 {
        let o = self.element_order(g);
        let mut cofactor = o;
        while cofactor % l == 0 {
            cofactor /= l;
        }
        self.power_idx(g, cofactor)
    }

    /// Constructs a Sylow `ℓ`-subgroup by normalizer climbing: start from any
    /// `ℓ`-element, then repeatedly adjoin an `ℓ`-element of the normalizer
    /// lying outside the current subgroup.
    pub fn sylow_subgroup(&self, l: u64) -> Result<Subgroup> {
        let target = {
            let mut t = 1u64;
            let mut n = self.order();
            while n % l == 0 {
                t *= l;
                n /= l;
            }
            t
        };
        if target == 1 {
            return Err(Error::Unsupported(format!(
                "ℓ = {l} does not divide the group order {}",
                self.order()
            )));
        }
        let id = self.identity_idx();
        let seed = (0..self.elements.len() as u32)
            .map(|g| self.ell_part(g, l))
            .find(|&h| h != id)
            .expect("Cauchy: an ℓ-element exists");
        let mut p = self.subgroup_closure(&[seed]);
        while p.order() < target {
            let n = self.normalizer(&p);
            let next = n
                .iter()
                .map(|&g| self.ell_part(g, l))
                .find(|&h| h != id && !p.members.contains(&h));
            let Some(h) = next else {
                return Err(Error::Falsified(format!(
                    "normalizer climbing stalled at order {} < {target}",
                    p.order()
                )));
            };
            let mut gens = p.generators.clone();
            gens.push(h);
            p = self.subgroup_closure(&gens);
        }
        if p.order() != target {
            return Err(Error::Falsified(format!(
                "climbing overshot: {} != {target}",
                p.order()
            )));
        }
        Ok(p)
    }

    pub fn is_abelian(&self, p: &Subgroup) -> bool {
        let members: Vec<u32> = p.members.iter().copied().collect();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                if self.mul_idx(a, b) != self.mul_idx(b, a) {
                    return false;
                }
            }
        }
        true
    }

    /// Primary abelian invariants (prime-power cyclic factors, ascending) of
    /// an abelian subgroup, recovered from order statistics.
    pub fn abelian_invariants(&self, p: &Subgroup) -> Result<Vec<u64>> {
        if !self.is_abelian(p) {
            return Err(Error::Unsupported(
                "abelian invariants of a non-abelian subgroup".into(),
            ));
        }
        let n = p.order();
        let mut out = Vec::new();
        let mut rest = n;
        let mut prime = 2u64;
        while rest > 1 {
            if rest % prime != 0 {
                prime += 1;
                continue;
            }
            while rest % prime == 0 {
                rest /= prime;
            }
            // s_k = log_prime #{x : x^(prime^k) = 1}
            let mut s = vec![0u32];
            let mut k = 1u32;
            loop {
                let pk = prime.pow(k);
                let count = p
                    .members
                    .iter()
                    .filter(|&&x| self.power_idx(x, pk) == self.identity_idx())
                    .count() as u64;
                let mut log = 0u32;
                let mut c = count;
                while c > 1 {
                    assert!(c % prime == 0, "subgroup counts must be prime powers");
                    c /= prime;
                    log += 1;
                }
                s.push(log);
                if prime.pow(log) == {
                    // full prime-part reached?
                    let mut t = 1u64;
                    let mut m = n;
                    while m % prime == 0 {
                        t *= prime;
                        m /= prime;
                    }
                    t
                } {
                    break;
                }
                k += 1;
            }
            // components with exponent ≥ k: c_k = s_k − s_{k−1}
            let comps: Vec<u32> = (1..s.len()).map(|k| s[k] - s[k - 1]).collect();
            for k in 1..=comps.len() {
                let exact = comps[k - 1] - comps.get(k).copied().unwrap_or(0);
                for _ in 0..exact {
                    out.push(prime.pow(k as u32));
                }
            }
            prime += 1;
        }
        out.sort_unstable();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// ℤ/n as a multiplication context for testing.
    struct Cyclic(u64);
    impl GroupOps for Cyclic {
        type Elem = u64;
        fn mul(&self, a: &u64, b: &u64) -> u64 {
            (a + b) % self.0
        }
        fn identity(&self) -> u64 {
            0
        }
    }

    /// Permutations of 0..n as vectors.
    struct Perms;
    impl GroupOps for Perms {
        type Elem = Vec<u8>;
        fn mul(&self, a: &Vec<u8>, b: &Vec<u8>) -> Vec<u8> {
            b.iter().map(|&i| a[i as usize]).collect()
        }
        fn identity(&self) -> Vec<u8> {
            (0..4).collect()
        }
    }

    #[test]
    fn cyclic_group_basics() {
        let g = FiniteGroup::from_elements(Cyclic(12), (0..12).collect()).unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(g.element_order(1), 12);
        assert_eq!(g.element_order(4), 3);
        assert_eq!(g.inverse_idx(g.idx(&5).unwrap()), g.idx(&7).unwrap());
        let syl = g.sylow_subgroup(2).unwrap();
        assert_eq!(syl.order(), 4);
        assert_eq!(g.abelian_invariants(&syl).unwrap(), vec![4]);
        let syl3 = g.sylow_subgroup(3).unwrap();
        assert_eq!(g.abelian_invariants(&syl3).unwrap(), vec![3]);
        assert!(g.sylow_subgroup(5).is_err());
    }

    #[test]
    fn symmetric_group_sylows() {
        // S4 from generators (01), (0123)
        let s = vec![vec![1, 0, 2, 3], vec![1, 2, 3, 0]];
        let g = FiniteGroup::from_generators(Perms, s).unwrap();
        assert_eq!(g.order(), 24);
        let syl2 = g.sylow_subgroup(2).unwrap();
        assert_eq!(syl2.order(), 8);
        assert!(!g.is_abelian(&syl2)); // dihedral
        let syl3 = g.sylow_subgroup(3).unwrap();
        assert_eq!(syl3.order(), 3);
        assert!(g.is_abelian(&syl3));
        assert_eq!(g.abelian_invariants(&syl3).unwrap(), vec![3]);
    }

    #[test]
    fn klein_four_invariants() {
        // (ℤ/2)² inside ℤ/2 × ℤ/2 represented as bit pairs under xor
        struct Xor;
        impl GroupOps for Xor {
            type Elem = u8;
            fn mul(&self, a: &u8, b: &u8) -> u8 {
                a ^ b
            }
            fn identity(&self) -> u8 {
                0
            }
        }
        let g = FiniteGroup::from_elements(Xor, vec![0, 1, 2, 3]).unwrap();
        let all = g.subgroup_closure(&[1, 2]);
        assert_eq!(g.abelian_invariants(&all).unwrap(), vec![2, 2]);
    }
}
