//! Exact integer and rational matrices.
//!
//! `MatI64` is the compact form used for Weyl group elements during
//! enumeration; `IntMat` carries `BigInt` entries for all spectral and
//! normal-form work where intermediate growth matters.

use crate::poly::Poly;
use crate::Result;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

pub type ZPoly = Poly<BigInt>;

/// Small square integer matrix with machine-word entries.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MatI64 {
    pub n: usize,
    pub a: Vec<i64>,
}

impl MatI64 {
    pub fn zeros(n: usize) -> Self {
        MatI64 {
            n,
            a: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = MatI64::zeros(n);
        for i in 0..n {
            m.a[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let n = rows.len();
        let mut a = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.len(), n);
            a.extend_from_slice(r);
        }
        MatI64 { n, a }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.a[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = MatI64::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik == 0 {
                    continue;
                }
                for j in 0..n {
                    let prod = (aik as i128) * (other.get(k, j) as i128);
                    let acc = out.get(i, j) as i128 + prod;
                    out.set(i, j, i64::try_from(acc).expect("i64 overflow in MatI64::mul"));
                }
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        MatI64 {
            n: self.n,
            a: self.a.iter().map(|&x| -x).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == MatI64::identity(self.n)
    }

    /// Reduction of every entry mod `m` into `[0, m)`.
    pub fn reduced_mod(&self, m: i64) -> Vec<i64> {
        self.a.iter().map(|&x| x.rem_euclid(m)).collect()
    }
}

/// Exact integer matrix, possibly rectangular; row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<BigInt>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            a: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m.a[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_small(m: &MatI64) -> Self {
        IntMat {
            rows: m.n,
            cols: m.n,
            a: m.a.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut a = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                a.push(f(i, j));
            }
        }
        IntMat { rows, cols, a }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.a[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.a[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k).clone();
                if aik.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + &aik * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMat {
            rows: self.rows,
            cols: self.cols,
            a: self
                .a
                .iter()
                .zip(&other.a)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMat {
            rows: self.rows,
            cols: self.cols,
            a: self
                .a
                .iter()
                .zip(&other.a)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntMat {
            rows: self.rows,
            cols: self.cols,
            a: self.a.iter().map(|x| x * c).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        IntMat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn from_columns(rows: usize, cols: &[Vec<BigInt>]) -> Self {
        IntMat::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|x| x.is_zero())
    }

    /// `self − c·I`
    pub fn sub_scalar(&self, c: &BigInt) -> Self {
        assert!(self.is_square());
        let mut out = self.clone();
        for i in 0..self.rows {
            let v = out.get(i, i) - c;
            out.set(i, i, v);
        }
        out
    }

    pub fn trace(&self) -> BigInt {
        assert!(self.is_square());
        (0..self.rows).map(|i| self.get(i, i).clone()).sum()
    }

    /// Characteristic polynomial `det(xI − A)`, monic, by the
    /// Faddeev–LeVerrier recurrence (all divisions are exact over ℤ).
    pub fn charpoly(&self) -> ZPoly {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut m = IntMat::identity(n);
        for k in 1..=n {
            m = self.mul(&m);
            let t = m.trace();
            let (c, r) = num_integer::div_rem(-t, BigInt::from(k as u64));
            assert!(r.is_zero(), "Faddeev-LeVerrier division must be exact");
            coeffs[n - k] = c.clone();
            for i in 0..n {
                let v = m.get(i, i) + &c;
                m.set(i, i, v);
            }
        }
        Poly::new(coeffs)
    }

    /// Determinant via the characteristic polynomial constant term.
    pub fn det(&self) -> BigInt {
        let p = self.charpoly();
        let c0 = p.coeff(0);
        if self.rows % 2 == 0 {
            c0
        } else {
            -c0
        }
    }

    /// Evaluates an integer polynomial at this matrix (Horner).
    pub fn poly_eval(&self, p: &ZPoly) -> IntMat {
        assert!(self.is_square());
        let n = self.rows;
        let mut acc = IntMat::zeros(n, n);
        for c in p.coeffs().iter().rev() {
            acc = self.mul(&acc);
            for i in 0..n {
                let v = acc.get(i, i) + c;
                acc.set(i, i, v);
            }
        }
        acc
    }

    /// Inverse of a unimodular matrix (|det| = 1), exact.
    pub fn unimodular_inverse(&self) -> IntMat {
        assert!(self.is_square());
        solve_exact(self, &IntMat::identity(self.rows))
            .expect("unimodular matrix has an integer inverse")
    }
}

impl fmt::Display for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

fn to_rational(m: &IntMat) -> Vec<Vec<BigRational>> {
    (0..m.rows)
        .map(|i| {
            (0..m.cols)
                .map(|j| BigRational::from_integer(m.get(i, j).clone()))
                .collect()
        })
        .collect()
}

/// Solves `A·X = B` exactly over ℚ by Gaussian elimination and returns `X`
/// when a solution exists and is integral.  `A` must have full column rank
/// for the solution to be unique; inconsistent or non-integral systems give
/// `None`.
pub fn solve_exact(a: &IntMat, b: &IntMat) -> Option<IntMat> {
    assert_eq!(a.rows, b.rows);
    let rows = a.rows;
    let cols = a.cols;
    let bcols = b.cols;
    let mut m = to_rational(a);
    let mut rhs = to_rational(b);

    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        // find pivot
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        rhs.swap(r, p);
        let inv = m[r][c].clone();
        for j in 0..cols {
            m[r][j] = &m[r][j] / &inv;
        }
        for j in 0..bcols {
            rhs[r][j] = &rhs[r][j] / &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    m[i][j] = &m[i][j] - &f * &m[r][j];
                }
                for j in 0..bcols {
                    rhs[i][j] = &rhs[i][j] - &f * &rhs[r][j];
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    // consistency: zero rows of m must have zero rhs
    for i in r..rows {
        if rhs[i].iter().any(|x| !x.is_zero()) {
            return None;
        }
    }
    if pivot_cols.len() < cols {
        // underdetermined; we only use full-column-rank systems
        return None;
    }
    let mut x = IntMat::zeros(cols, bcols);
    for (idx, &c) in pivot_cols.iter().enumerate() {
        for j in 0..bcols {
            let v = &rhs[idx][j];
            if !v.is_integer() {
                return None;
            }
            x.set(c, j, v.to_integer());
        }
    }
    Some(x)
}

/// Is the integer vector `v` in the rational column span of `b`?
/// For a saturated sublattice this is exactly lattice membership.
pub fn in_rational_span(b: &IntMat, v: &[BigInt]) -> bool {
    let rhs = IntMat::from_fn(b.rows, 1, |i, _| v[i].clone());
    solve_rational_consistent(b, &rhs)
}

fn solve_rational_consistent(a: &IntMat, b: &IntMat) -> bool {
    let rows = a.rows;
    let cols = a.cols;
    let mut m = to_rational(a);
    let mut rhs = to_rational(b);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        rhs.swap(r, p);
        let inv = m[r][c].clone();
        for j in 0..cols {
            m[r][j] = &m[r][j] / &inv;
        }
        for j in 0..rhs[r].len() {
            rhs[r][j] = &rhs[r][j] / &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    m[i][j] = &m[i][j] - &f * &m[r][j];
                }
                for j in 0..rhs[i].len() {
                    rhs[i][j] = &rhs[i][j] - &f * &rhs[r][j];
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    for i in r..rows {
        if rhs[i].iter().any(|x| !x.is_zero()) {
            return false;
        }
    }
    true
}

/// Restriction of the endomorphism `m` to the invariant sublattice with basis
/// columns `b`: the unique `R` with `m·b = b·R`.  Errors if the lattice is
/// not invariant or `R` fails to be integral.
pub fn restrict_endomorphism(m: &IntMat, b: &IntMat) -> Result<IntMat> {
    let mb = m.mul(b);
    solve_exact(b, &mb).ok_or_else(|| {
        crate::Error::Falsified("sublattice is not invariant under the endomorphism".into())
    })
}
