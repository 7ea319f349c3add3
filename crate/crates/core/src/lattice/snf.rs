//! Smith and Hermite normal forms over ℤ with unimodular transforms.

use super::matrix::IntMat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// `u · a · v = diag(d)` with `u`, `v` unimodular, `d` non-negative and
/// `d[i] | d[i+1]`.
pub struct Snf {
    pub d: Vec<BigInt>,
    pub u: IntMat,
    pub v: IntMat,
}

impl Snf {
    /// Diagonal entries that differ from 1 (the abelian invariants of the
    /// cokernel when the matrix is square nonsingular).
    pub fn invariants(&self) -> Vec<BigInt> {
        self.d
            .iter()
            .filter(|x| !x.is_zero() && **x != BigInt::from(1))
            .cloned()
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.d.iter().filter(|x| !x.is_zero()).count()
    }
}

fn swap_rows(m: &mut IntMat, i: usize, j: usize) {
    if i == j {
        return;
    }
    for c in 0..m.cols {
        let a = m.get(i, c).clone();
        let b = m.get(j, c).clone();
        m.set(i, c, b);
        m.set(j, c, a);
    }
}

fn swap_cols(m: &mut IntMat, i: usize, j: usize) {
    if i == j {
        return;
    }
    for r in 0..m.rows {
        let a = m.get(r, i).clone();
        let b = m.get(r, j).clone();
        m.set(r, i, b);
        m.set(r, j, a);
    }
}

/// row_i -= f·row_j
fn row_op(m: &mut IntMat, i: usize, j: usize, f: &BigInt) {
    for c in 0..m.cols {
        let v = m.get(i, c) - f * m.get(j, c);
        m.set(i, c, v);
    }
}

/// col_i -= f·col_j
fn col_op(m: &mut IntMat, i: usize, j: usize, f: &BigInt) {
    for r in 0..m.rows {
        let v = m.get(r, i) - f * m.get(r, j);
        m.set(r, i, v);
    }
}

fn negate_row(m: &mut IntMat, i: usize) {
    for c in 0..m.cols {
        let v = -m.get(i, c);
        m.set(i, c, v);
    }
}

/// Smith normal form with transforms.
pub fn smith(a: &IntMat) -> Snf {
    let mut m = a.clone();
    let mut u = IntMat::identity(a.rows);
    let mut v = IntMat::identity(a.cols);
    let t_max = a.rows.min(a.cols);

    for t in 0..t_max {
        // Find a nonzero pivot of minimal absolute value in the submatrix.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..a.rows {
            for j in t..a.cols {
                if !m.get(i, j).is_zero()
                    && pivot.map_or(true, |(pi, pj)| m.get(i, j).abs() < m.get(pi, pj).abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else {
            break;
        };
        swap_rows(&mut m, t, pi);
        swap_rows(&mut u, t, pi);
        swap_cols(&mut m, t, pj);
        swap_cols(&mut v, t, pj);

        loop {
            let mut clean = true;
            // Clear the pivot column.
            for i in t + 1..a.rows {
                if m.get(i, t).is_zero() {
                    continue;
                }
                let f = m.get(i, t).div_floor(m.get(t, t));
                row_op(&mut m, i, t, &f);
                row_op(&mut u, i, t, &f);
                if !m.get(i, t).is_zero() {
                    // remainder became the smaller pivot
                    swap_rows(&mut m, t, i);
                    swap_rows(&mut u, t, i);
                    clean = false;
                }
            }
            // Clear the pivot row.
            for j in t + 1..a.cols {
                if m.get(t, j).is_zero() {
                    continue;
                }
                let f = m.get(t, j).div_floor(m.get(t, t));
                col_op(&mut m, j, t, &f);
                col_op(&mut v, j, t, &f);
                if !m.get(t, j).is_zero() {
                    swap_cols(&mut m, t, j);
                    swap_cols(&mut v, t, j);
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Pivot divides everything below-right? If not, fold the bad row
            // into the pivot row and restart the reduction.
            let mut offender = None;
            'search: for i in t + 1..a.rows {
                for j in t + 1..a.cols {
                    if !(m.get(i, j) % m.get(t, t)).is_zero() {
                        offender = Some(i);
                        break 'search;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let minus_one = BigInt::from(-1);
                    row_op(&mut m, t, i, &minus_one); // row_t += row_i
                    row_op(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if m.get(t, t).is_negative() {
            negate_row(&mut m, t);
            negate_row(&mut u, t);
        }
    }

    let d: Vec<BigInt> = (0..t_max).map(|i| m.get(i, i).clone()).collect();
    debug_assert!(
        d.windows(2)
            .all(|w| w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero())),
        "divisibility chain violated: {d:?}"
    );
    Snf { d, u, v }
}

/// Basis of the integer kernel of `a` (as matrix columns).  The kernel of an
/// endomorphism is saturated by construction.
pub fn kernel_basis(a: &IntMat) -> IntMat {
    let snf = smith(a);
    let mut cols = Vec::new();
    for i in 0..a.cols {
        let zero = i >= snf.d.len() || snf.d[i].is_zero();
        if zero {
            cols.push(snf.v.column(i));
        }
    }
    IntMat::from_columns(a.cols, &cols)
}

/// Unique Hermite normal form of the row lattice of `a`: row echelon with
/// positive pivots and entries above each pivot reduced mod the pivot.
/// Zero rows are dropped, so equal row lattices give equal outputs.
pub fn hnf_rows(a: &IntMat) -> IntMat {
    let mut m = a.clone();
    let rows = m.rows;
    let cols = m.cols;
    let mut pivot_row = 0;
    for c in 0..cols {
        if pivot_row == rows {
            break;
        }
        // gcd-reduce the column below pivot_row
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..rows {
                if !m.get(i, c).is_zero()
                    && best.map_or(true, |b| m.get(i, c).abs() < m.get(b, c).abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else {
                break;
            };
            swap_rows(&mut m, pivot_row, b);
            let mut any = false;
            for i in pivot_row + 1..rows {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).div_floor(m.get(pivot_row, c));
                row_op(&mut m, i, pivot_row, &f);
                if !m.get(i, c).is_zero() {
                    any = true;
                }
            }
            if !any {
                break;
            }
        }
        if m.get(pivot_row, c).is_zero() {
            continue;
        }
        if m.get(pivot_row, c).is_negative() {
            negate_row(&mut m, pivot_row);
        }
        // reduce entries above the pivot
        for i in 0..pivot_row {
            let f = m.get(i, c).div_floor(m.get(pivot_row, c));
            if !f.is_zero() {
                row_op(&mut m, i, pivot_row, &f);
            }
        }
        pivot_row += 1;
    }
    // drop zero rows
    let mut out_rows: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..rows {
        let row: Vec<BigInt> = (0..cols).map(|j| m.get(i, j).clone()).collect();
        if row.iter().any(|x| !x.is_zero()) {
            out_rows.push(row);
        }
    }
    IntMat::from_fn(out_rows.len(), cols, |i, j| out_rows[i][j].clone())
}

/// Canonical form of the sublattice spanned by the columns of `b`.
pub fn canonical_column_lattice(b: &IntMat) -> IntMat {
    hnf_rows(&b.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: &[&[i64]]) -> IntMat {
        IntMat::from_fn(rows.len(), rows[0].len(), |i, j| BigInt::from(rows[i][j]))
    }

    fn check_snf(a: &IntMat) {
        let s = smith(a);
        let d = s.u.mul(a).mul(&s.v);
        for i in 0..a.rows {
            for j in 0..a.cols {
                let expect = if i == j && i < s.d.len() {
                    s.d[i].clone()
                } else {
                    BigInt::zero()
                };
                assert_eq!(*d.get(i, j), expect, "UAV not diagonal at ({i},{j})");
            }
        }
        assert_eq!(s.u.det().abs(), BigInt::from(1));
        assert_eq!(s.v.det().abs(), BigInt::from(1));
        for w in s.d.windows(2) {
            if !w[1].is_zero() {
                assert!(!w[0].is_zero());
                assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn smith_small_examples() {
        check_snf(&im(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]));
        let s = smith(&im(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]));
        assert_eq!(
            s.d,
            vec![BigInt::from(2), BigInt::from(2), BigInt::from(156)]
        );

        check_snf(&im(&[&[0, 0], &[0, 0]]));
        check_snf(&im(&[&[1, 2, 3], &[4, 5, 6]]));
        check_snf(&im(&[&[3]]));
        check_snf(&im(&[&[6, 4], &[4, 6]]));
        // invariants of [[2,-6],[2,-4]] are (2,2): the 2G2 torus pattern
        let s = smith(&im(&[&[2, -6], &[2, -4]]));
        assert_eq!(s.d, vec![BigInt::from(2), BigInt::from(2)]);
    }

    #[test]
    fn smith_pseudorandom_properties() {
        // simple LCG so the test is deterministic
        let mut state: u64 = 0x2545F4914F6CDD1D;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as i64 % 19) - 9
        };
        for rows in 1..=4 {
            for cols in 1..=4 {
                for _ in 0..40 {
                    let a = IntMat::from_fn(rows, cols, |_, _| BigInt::from(next()));
                    check_snf(&a);
                }
            }
        }
    }

    #[test]
    fn kernel_of_singular_map() {
        // rank-1 projector-like map
        let a = im(&[&[1, 1], &[1, 1]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols, 1);
        // kernel generated by (1,-1) up to sign
        let v0 = k.get(0, 0).clone();
        let v1 = k.get(1, 0).clone();
        assert_eq!(v0, -v1);
        assert_eq!(v0.abs(), BigInt::from(1));
        // nonsingular: trivial kernel
        let k = kernel_basis(&im(&[&[2, 0], &[0, 3]]));
        assert_eq!(k.cols, 0);
    }

    #[test]
    fn hnf_canonicalizes_lattices() {
        // columns (2,0),(1,1) and columns (1,1),(3,1) span the same lattice
        // since (3,1) = (1,1) + (2,0).
        let c1 = canonical_column_lattice(&im(&[&[2, 1], &[0, 1]]));
        let c2 = canonical_column_lattice(&im(&[&[1, 3], &[1, 1]]));
        assert_eq!(c1, c2);
        // different lattice
        let c3 = canonical_column_lattice(&im(&[&[1, 0], &[0, 1]]));
        assert_ne!(c1, c3);
    }
}
