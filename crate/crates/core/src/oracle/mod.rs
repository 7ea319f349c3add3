//! Ground truth by brute force: enumeration of small classical matrix groups
//! over finite fields, exact orders, genuine Sylow subgroups by normalizer
//! climbing, and abelianness tests — all independent of the generic
//! formulas.
//!
//! The bridge to group types: `SL_{n+1} ↔ A_n` (split), `SU_{n+1} ↔ ²A_n`,
//! `Sp₄ ↔ B₂ (= C₂)`.

pub mod field;
pub mod group;

pub use group::{FiniteGroup, GroupOps, Subgroup};

use crate::arith::QSpec;
use crate::group_data::{GroupSpec, SimpleFactor};
use crate::{Error, Result};
use field::Fq;
use std::fmt;
use std::rc::Rc;

/// Families the oracle can enumerate.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    SL,
    SU,
    Sp,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::SL => "SL",
            Family::SU => "SU",
            Family::Sp => "Sp",
        };
        write!(f, "{s}")
    }
}

/// A concrete matrix group `family(n, F_q)`; `SU` works inside `F_{q²}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct MatrixGroupSpec {
    pub family: Family,
    pub n: usize,
    pub q: u64,
}

impl fmt::Display for MatrixGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}, F{})", self.family, self.n, self.q)
    }
}

impl MatrixGroupSpec {
    pub fn new(family: Family, n: usize, q: u64) -> Self {
        MatrixGroupSpec { family, n, q }
    }

    /// Field the matrix entries live in.
    pub fn entry_field(&self) -> u64 {
        match self.family {
            Family::SU => self.q * self.q,
            _ => self.q,
        }
    }

    /// The group type and parameter this group realizes.
    pub fn matched_group(&self) -> Result<(GroupSpec, QSpec)> {
        let (p, a) = crate::arith::prime_power_split(self.q)
            .ok_or_else(|| Error::InvalidQ(format!("{} is not a prime power", self.q)))?;
        let q = QSpec::new(p, 1, a)?;
        let f = match self.family {
            Family::SL => SimpleFactor::parse(&format!("A{}", self.n - 1))?,
            Family::SU => SimpleFactor::parse(&format!("2A{}", self.n - 1))?,
            Family::Sp => {
                if self.n != 4 {
                    return Err(Error::Unsupported("only Sp4 is bridged".into()));
                }
                SimpleFactor::parse("B2")?
            }
        };
        Ok((GroupSpec::single(f), q))
    }
}

/// A matrix over `F_q`, entries row-major in the field encoding.
pub type FqMat = Vec<u8>;

/// Multiplication context for matrices over a small field.
pub struct FqMatCtx {
    pub field: Rc<Fq>,
    pub n: usize,
}

impl GroupOps for FqMatCtx {
    type Elem = FqMat;

    fn mul(&self, a: &FqMat, b: &FqMat) -> FqMat {
        let n = self.n;
        let f = &self.field;
        let mut out = vec![0u8; n * n];
        for i in 0..n {
            for k in 0..n {
                let aik = a[i * n + k];
                if aik == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] = f.add(out[i * n + j], f.mul(aik, b[k * n + j]));
                }
            }
        }
        out
    }

    fn identity(&self) -> FqMat {
        let n = self.n;
        let mut m = vec![0u8; n * n];
        for i in 0..n {
            m[i * n + i] = 1;
        }
        m
    }
}

fn det(f: &Fq, n: usize, m: &FqMat) -> u8 {
    // Gaussian elimination over the field; fine at n ≤ 4.
    let mut a = m.clone();
    let mut det = 1u8;
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| a[r * n + c] != 0) else {
            return 0;
        };
        if p != c {
            for j in 0..n {
                a.swap(p * n + j, c * n + j);
            }
            det = f.mul(det, f.neg(1));
        }
        let pivot = a[c * n + c];
        det = f.mul(det, pivot);
        let pinv = (0..f.q as u8).find(|&x| f.mul(pivot, x) == 1).unwrap();
        for r in c + 1..n {
            let factor = f.mul(a[r * n + c], pinv);
            if factor == 0 {
                continue;
            }
            for j in 0..n {
                let sub = f.mul(factor, a[c * n + j]);
                a[r * n + j] = f.add(a[r * n + j], f.neg(sub));
            }
        }
    }
    det
}

/// Bilinear/sesquilinear pairing of two columns under the family's form.
fn pairing(f: &Fq, family: Family, n: usize, x: &[u8], y: &[u8]) -> u8 {
    let mut acc = 0u8;
    match family {
        // symplectic form with J = [[0, I], [−I, 0]]
        Family::Sp => {
            let m = n / 2;
            for k in 0..m {
                // x_k·y_{k+m} − x_{k+m}·y_k
                acc = f.add(acc, f.mul(x[k], y[k + m]));
                acc = f.add(acc, f.neg(f.mul(x[k + m], y[k])));
            }
        }
        // hermitian form h(x, y) = Σ x̄_k y_k
        Family::SU => {
            for k in 0..n {
                acc = f.add(acc, f.mul(f.conj(x[k]), y[k]));
            }
        }
        Family::SL => unreachable!(),
    }
    acc
}

/// Expected form-gram value between columns `i` and `j`.
fn gram(f: &Fq, family: Family, n: usize, i: usize, j: usize) -> u8 {
    match family {
        Family::Sp => {
            let m = n / 2;
            if j == i + m {
                1
            } else if i == j + m {
                f.neg(1)
            } else {
                0
            }
        }
        Family::SU => u8::from(i == j),
        Family::SL => unreachable!(),
    }
}

/// Enumeration work budget (number of partial frames visited).
const BUDGET: u64 = 1 << 26;

fn place_columns(
    fq: &Fq,
    spec: &MatrixGroupSpec,
    columns: &[Vec<u8>],
    stack: &mut Vec<usize>,
    elements: &mut Vec<FqMat>,
    work: &mut u64,
) -> Result<()> {
    let n = spec.n;
    if stack.len() == n {
        // assemble and apply the determinant condition
        let mut m = vec![0u8; n * n];
        for (j, &ci) in stack.iter().enumerate() {
            for i in 0..n {
                m[i * n + j] = columns[ci][i];
            }
        }
        if det(fq, n, &m) == 1 {
            elements.push(m);
        }
        return Ok(());
    }
    let j = stack.len();
    'cand: for (ci, col) in columns.iter().enumerate() {
        *work += 1;
        if *work > BUDGET {
            return Err(Error::BudgetExceeded(format!(
                "enumeration budget exhausted for {spec}"
            )));
        }
        if spec.family != Family::SL {
            for (i, &prev) in stack.iter().enumerate() {
                if pairing(fq, spec.family, n, &columns[prev], col)
                    != gram(fq, spec.family, n, i, j)
                {
                    continue 'cand;
                }
            }
            if pairing(fq, spec.family, n, col, col) != gram(fq, spec.family, n, j, j) {
                continue;
            }
        }
        stack.push(ci);
        place_columns(fq, spec, columns, stack, elements, work)?;
        stack.pop();
    }
    Ok(())
}

/// Enumerates all elements of the group by filling matrices column by
/// column.  For `Sp` and `SU` the form constraints prune each level; `SL` is
/// small enough for a full scan with the determinant test at the end.
pub fn enumerate_group(spec: &MatrixGroupSpec) -> Result<FiniteGroup<FqMatCtx>> {
    let fq = Rc::new(Fq::new(spec.entry_field())?);
    let n = spec.n;
    let qn = (fq.q as u64).pow(n as u32);
    if qn > 1 << 20 {
        return Err(Error::BudgetExceeded(format!(
            "column space {qn} too large for {spec}"
        )));
    }

    // All column vectors, indexed by their integer encoding.
    let columns: Vec<Vec<u8>> = (0..qn)
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let digit = (code % fq.q as u64) as u8;
                    code /= fq.q as u64;
                    digit
                })
                .collect()
        })
        .collect();

    let mut elements: Vec<FqMat> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut work: u64 = 0;
    place_columns(&fq, spec, &columns, &mut stack, &mut elements, &mut work)?;

    let ctx = FqMatCtx { field: fq, n };
    FiniteGroup::from_elements(ctx, elements)
}

/// The `(family, size, q)` configurations used by the standard order and
/// Sylow cross-checks.
pub fn standard_oracle_specs() -> Vec<MatrixGroupSpec> {
    use Family::*;
    vec![
        MatrixGroupSpec::new(SL, 2, 2),
        MatrixGroupSpec::new(SL, 2, 3),
        MatrixGroupSpec::new(SL, 2, 4),
        MatrixGroupSpec::new(SL, 2, 5),
        MatrixGroupSpec::new(SL, 3, 2),
        MatrixGroupSpec::new(SL, 3, 3),
        MatrixGroupSpec::new(SL, 4, 2),
        MatrixGroupSpec::new(Sp, 4, 2),
        MatrixGroupSpec::new(Sp, 4, 3),
        MatrixGroupSpec::new(SU, 3, 2),
        MatrixGroupSpec::new(SU, 3, 3),
        MatrixGroupSpec::new(SU, 4, 2),
    ]
}

/// Enumerated orders against the evaluated generic order of the matched
/// type, over the full standard list.
pub fn verify_order_oracle() -> Result<crate::cyclotomic::SweepReport> {
    let mut report = crate::cyclotomic::SweepReport::default();
    for spec in standard_oracle_specs() {
        let g = enumerate_group(&spec)?;
        let (gs, q) = spec.matched_group()?;
        let expect = crate::order::order_at(&gs, &q)?;
        report.checks += 1;
        if num_bigint::BigInt::from(g.order()) != expect {
            report.violations.push(format!(
                "{spec}: enumerated {} but generic order gives {expect}",
                g.order()
            ));
        }
    }
    Ok(report)
}
