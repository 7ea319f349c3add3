//! Reflection representations on root lattices, the isogeny matrix `F*`, and
//! Weyl group enumeration.
//!
//! Everything acts on simple-root coordinates: the reflection `s_i` sends
//! `e_j ↦ e_j − c[i][j]·e_i` where `c[i][j] = 2(α_i, α_j)/(α_i, α_i)`.

use super::matrix::{IntMat, MatI64};
use crate::arith::QSpec;
use crate::group_data::{Series, SimpleFactor};
use crate::{Error, Result};
use num_bigint::BigInt;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// `c[i][j] = 2(α_i, α_j)/(α_i, α_i)` in a fixed labeling:
/// chains are numbered along the diagram; for `B_n` the last node is short;
/// for `D_n` the fork nodes are the last two (attached to node `n−3`,
/// 0-indexed); for `E_n` node 1 is the branch node attached to node 3; for
/// `F₄` nodes 0,1 are long; for `G₂` node 0 is short.
pub fn cartan_matrix(series: Series, rank: usize) -> MatI64 {
    let n = rank;
    let mut c = MatI64::zeros(n);
    for i in 0..n {
        c.set(i, i, 2);
    }
    let mut bond = |i: usize, j: usize, cij: i64, cji: i64| {
        c.set(i, j, cij);
        c.set(j, i, cji);
    };
    match series {
        Series::A => {
            for i in 0..n.saturating_sub(1) {
                bond(i, i + 1, -1, -1);
            }
        }
        Series::B => {
            for i in 0..n - 1 {
                bond(i, i + 1, -1, -1);
            }
            // α_{n-1} is short
            bond(n - 2, n - 1, -1, -2);
        }
        Series::D => {
            for i in 0..n - 3 {
                bond(i, i + 1, -1, -1);
            }
            bond(n - 3, n - 2, -1, -1);
            bond(n - 3, n - 1, -1, -1);
        }
        Series::G => {
            // α_0 short, α_1 long
            bond(0, 1, -3, -1);
        }
        Series::F => {
            // α_0, α_1 long; α_2, α_3 short
            bond(0, 1, -1, -1);
            bond(1, 2, -1, -2);
            bond(2, 3, -1, -1);
        }
        Series::E => {
            // nodes 0..n-1; node 1 hangs off node 3; 0-2-3-4-5(-6)(-7) chain
            bond(0, 2, -1, -1);
            bond(1, 3, -1, -1);
            for i in 2..n - 1 {
                bond(i, i + 1, -1, -1);
            }
        }
    }
    c
}

/// Simple reflections in simple-root coordinates.
pub fn simple_reflections(cartan: &MatI64) -> Vec<MatI64> {
    let n = cartan.n;
    (0..n)
        .map(|i| {
            let mut s = MatI64::identity(n);
            for j in 0..n {
                s.set(i, j, s.get(i, j) - cartan.get(i, j));
            }
            s
        })
        .collect()
}

/// Diagram automorphism of the given factor as a permutation of node indices
/// (identity for split types).
pub fn diagram_permutation(f: &SimpleFactor) -> Vec<usize> {
    let n = f.rank as usize;
    let id: Vec<usize> = (0..n).collect();
    if f.twist == 1 {
        return id;
    }
    match (f.series, f.twist, f.very_twisted) {
        (Series::A, 2, false) => (0..n).map(|i| n - 1 - i).collect(),
        (Series::D, 2, false) => {
            let mut p = id;
            p.swap(n - 2, n - 1);
            p
        }
        (Series::D, 3, false) => vec![2, 1, 3, 0], // outer nodes 0 → 2 → 3 → 0
        (Series::E, 2, false) => vec![5, 1, 4, 3, 2, 0],
        (Series::B, 2, true) | (Series::G, 2, true) => vec![1, 0],
        (Series::F, 2, true) => vec![3, 2, 1, 0],
        _ => unreachable!("validated at construction"),
    }
}

/// Which simple roots are long, for the very twisted types.
fn long_roots(f: &SimpleFactor) -> Vec<bool> {
    match f.series {
        Series::B => vec![true, false],
        Series::G => vec![false, true],
        Series::F => vec![true, true, false, false],
        _ => unreachable!(),
    }
}

/// The reflection representation of one quasi-simple component together with
/// the integer matrix of `F*` at the given `q` (the `q` of the component, not
/// of a surrounding descent).
pub struct BaseRep {
    pub factor: SimpleFactor,
    pub q: QSpec,
    pub rank: usize,
    pub cartan: MatI64,
    pub reflections: Vec<MatI64>,
    pub perm: Vec<usize>,
    pub fstar: IntMat,
}

/// Builds the representation; `q` must be compatible with the factor
/// (integer for ordinary twists, odd power of the matching `√p` for the very
/// twisted types).
pub fn build_rep(f: &SimpleFactor, q: &QSpec) -> Result<BaseRep> {
    let base = SimpleFactor { descent: 1, ..*f };
    let n = base.rank as usize;
    let cartan = cartan_matrix(base.series, n);
    let reflections = simple_reflections(&cartan);
    for s in &reflections {
        debug_assert!(s.mul(s).is_identity(), "reflection must be an involution");
    }
    let perm = diagram_permutation(&base);

    let fstar = if base.very_twisted {
        if q.eta != 2 || q.p != base.forced_p().unwrap() {
            return Err(Error::InvalidQ(format!(
                "{base} needs q an odd power of sqrt{}, got {q}",
                base.forced_p().unwrap()
            )));
        }
        // Cartan must be transposed by the permutation (length swap).
        for i in 0..n {
            for j in 0..n {
                assert_eq!(
                    cartan.get(perm[i], perm[j]),
                    cartan.get(j, i),
                    "length-swapping automorphism must transpose the Cartan matrix"
                );
            }
        }
        // q² = p^(2m+1); F* sends a short root α to p^m·σ(α) and a long root
        // to p^(m+1)·σ(α), so that F*² = q²·id.
        let m = (q.a - 1) / 2;
        let long = long_roots(&base);
        let p = BigInt::from(q.p);
        let mut fs = IntMat::zeros(n, n);
        for (i, &is_long) in long.iter().enumerate() {
            let e = if is_long { m + 1 } else { m };
            fs.set(perm[i], i, p.pow(e));
        }
        let fs2 = fs.mul(&fs);
        let expect = IntMat::identity(n).scale(&q.q_to_eta());
        if fs2 != expect {
            return Err(Error::Falsified("F*² != q²·id for very twisted type".into()));
        }
        fs
    } else {
        let q_int = q.as_integer().ok_or_else(|| {
            Error::InvalidQ(format!("{base} needs an integer q, got {q}"))
        })?;
        for i in 0..n {
            for j in 0..n {
                assert_eq!(
                    cartan.get(perm[i], perm[j]),
                    cartan.get(i, j),
                    "diagram automorphism must preserve the Cartan matrix"
                );
            }
        }
        let mut fs = IntMat::zeros(n, n);
        for i in 0..n {
            fs.set(perm[i], i, q_int.clone());
        }
        fs
    };

    Ok(BaseRep {
        factor: base,
        q: *q,
        rank: n,
        cartan,
        reflections,
        perm,
        fstar,
    })
}

/// An enumerated Weyl group: elements with their first (shortest,
/// lexicographically least) words in the simple reflections.
#[derive(Clone)]
pub struct WeylGroup {
    pub elements: Vec<MatI64>,
    pub words: Vec<Vec<u8>>,
    pub index: HashMap<MatI64, usize>,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element_of_word(&self, word: &[u8], reflections: &[MatI64]) -> MatI64 {
        let n = reflections[0].n;
        let mut m = MatI64::identity(n);
        for &g in word {
            m = m.mul(&reflections[g as usize - 1]);
        }
        m
    }
}

/// Default enumeration cap, overridable through `GENSYLOW_WEYL_CAP`.
pub fn weyl_cap() -> u64 {
    std::env::var("GENSYLOW_WEYL_CAP")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(100_000)
}

/// Expected `|W| = ∏ d_i` from the degree table.
pub fn weyl_order(f: &SimpleFactor) -> u64 {
    f.reflection_degrees().iter().product()
}

/// Enumerates the Weyl group by breadth-first closure over the simple
/// reflections.  Refuses before starting when the degree-table order exceeds
/// the cap, and cross-checks the final count against it.
pub fn enumerate_weyl(f: &SimpleFactor, cap: u64) -> Result<WeylGroup> {
    let expected = weyl_order(f);
    if expected > cap {
        return Err(Error::CapExceeded {
            order: expected,
            cap,
        });
    }
    static CACHE: OnceLock<Mutex<HashMap<(Series, u8), WeylGroup>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (f.series, f.rank);
    if let Some(w) = cache.lock().unwrap().get(&key) {
        return Ok(w.clone());
    }

    let cartan = cartan_matrix(f.series, f.rank as usize);
    let reflections = simple_reflections(&cartan);
    let id = MatI64::identity(f.rank as usize);
    let mut elements = vec![id.clone()];
    let mut words: Vec<Vec<u8>> = vec![vec![]];
    let mut index = HashMap::new();
    index.insert(id, 0usize);
    let mut head = 0;
    while head < elements.len() {
        let w = elements[head].clone();
        let word = words[head].clone();
        for (g, s) in reflections.iter().enumerate() {
            let next = w.mul(s);
            if !index.contains_key(&next) {
                let mut nw = word.clone();
                nw.push(g as u8 + 1);
                index.insert(next.clone(), elements.len());
                elements.push(next);
                words.push(nw);
            }
        }
        head += 1;
    }
    if elements.len() as u64 != expected {
        return Err(Error::Falsified(format!(
            "enumerated |W({f})| = {} but degree table gives {expected}",
            elements.len()
        )));
    }
    let group = WeylGroup {
        elements,
        words,
        index,
    };
    cache.lock().unwrap().insert(key, group.clone());
    Ok(group)
}

/// The longest element `w₀`: `−1` when the diagram has no nontrivial
/// automorphism acting (`A₁`, `B`, `C`, `D_even`, `G₂`, `F₄`, `E₇`, `E₈`),
/// and `−τ` for the flip `τ` on `A_n (n ≥ 2)`, `D_odd`, `E₆`.
pub fn longest_element(series: Series, rank: usize) -> MatI64 {
    let n = rank;
    let flip: Option<Vec<usize>> = match (series, rank) {
        (Series::A, r) if r >= 2 => Some((0..n).map(|i| n - 1 - i).collect()),
        (Series::D, r) if r % 2 == 1 => {
            let mut p: Vec<usize> = (0..n).collect();
            p.swap(n - 2, n - 1);
            Some(p)
        }
        (Series::E, 6) => Some(vec![5, 1, 4, 3, 2, 0]),
        _ => None,
    };
    let mut m = MatI64::zeros(n);
    match flip {
        Some(p) => {
            for i in 0..n {
                m.set(p[i], i, -1);
            }
        }
        None => {
            for i in 0..n {
                m.set(i, i, -1);
            }
        }
    }
    m
}

/// Block matrix of `w·F*` on the descent lattice `X₁ⁿ` for
/// `w = (1, …, 1, w₁)`: component `i` reads component `i+1`, the last one
/// applies `w₁F₁*` to the first.
pub fn descent_wfstar(w1_f1star: &IntMat, n: u32) -> IntMat {
    let r = w1_f1star.rows;
    let n = n as usize;
    let big = n * r;
    let mut m = IntMat::zeros(big, big);
    for block in 0..n - 1 {
        for i in 0..r {
            m.set(block * r + i, (block + 1) * r + i, BigInt::from(1));
        }
    }
    for i in 0..r {
        for j in 0..r {
            m.set((n - 1) * r + i, j, w1_f1star.get(i, j).clone());
        }
    }
    m
}
