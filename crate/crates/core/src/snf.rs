//! Exact integer matrix normal forms.
//!
//! Small dense matrices only. The Smith form keeps both transforms so
//! callers can certify quotient computations; transform entries can grow
//! far beyond the input magnitude, so that computation runs over big
//! integers. The column-echelon Hermite form is the workhorse for canonical
//! reduction modulo a sublattice and stays in machine integers (its output
//! is canonical and its one-sided elimination keeps entries tame for the
//! incidence-sized systems this crate builds).

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type IntMat = Vec<Vec<i64>>;
pub type BigMat = Vec<Vec<BigInt>>;

pub fn to_big(a: &IntMat) -> BigMat {
    a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn big_identity(n: usize) -> BigMat {
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    m
}

pub fn mat_mul(a: &BigMat, b: &BigMat) -> BigMat {
    let rows = a.len();
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![BigInt::zero(); cols]; rows];
    for i in 0..rows {
        for k in 0..inner {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..cols {
                let t = &a[i][k] * &b[k][j];
                out[i][j] += t;
            }
        }
    }
    out
}

/// Smith normal form `P * A * Q = D` with unimodular `P`, `Q`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub p: BigMat,
    pub q: BigMat,
    pub d: BigMat,
    pub rank: usize,
}

impl SmithForm {
    /// Diagonal entries `d_1 | d_2 | ...` up to the rank.
    pub fn invariants(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[i][i].clone()).collect()
    }
}

fn div_floor_big(a: &BigInt, b: &BigInt) -> BigInt {
    let q = a / b;
    if !(a % b).is_zero() && (a.is_negative() != b.is_negative()) {
        q - 1
    } else {
        q
    }
}

/// Deterministic Smith normal form: pivot is the entry of least absolute
/// value in the working submatrix, ties broken by row then column.
pub fn smith_form(a: &IntMat) -> SmithForm {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut d = to_big(a);
    let mut p = big_identity(rows);
    let mut q = big_identity(cols);

    let mut k = 0;
    while k < rows && k < cols {
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if !d[i][j].is_zero() {
                    let better = match pivot {
                        None => true,
                        Some((pi, pj)) => d[i][j].abs() < d[pi][pj].abs(),
                    };
                    if better {
                        pivot = Some((i, j));
                    }
                }
            }
        }
        let (pi, pj) = match pivot {
            Some(x) => x,
            None => break, // rest is zero
        };
        d.swap(k, pi);
        p.swap(k, pi);
        for row in d.iter_mut() {
            row.swap(k, pj);
        }
        for row in q.iter_mut() {
            row.swap(k, pj);
        }

        // clear row and column k
        let mut dirty = true;
        while dirty {
            dirty = false;
            for i in k + 1..rows {
                if !d[i][k].is_zero() {
                    let f = div_floor_big(&d[i][k], &d[k][k]);
                    if !f.is_zero() {
                        for j in 0..cols {
                            let t = &f * &d[k][j];
                            d[i][j] -= t;
                        }
                        for j in 0..rows {
                            let t = &f * &p[k][j];
                            p[i][j] -= t;
                        }
                    }
                    if !d[i][k].is_zero() {
                        d.swap(k, i);
                        p.swap(k, i);
                        dirty = true;
                    }
                }
            }
            for j in k + 1..cols {
                if !d[k][j].is_zero() {
                    let f = div_floor_big(&d[k][j], &d[k][k]);
                    if !f.is_zero() {
                        for i in 0..rows {
                            let t = &f * &d[i][k];
                            d[i][j] -= t;
                        }
                        for i in 0..cols {
                            let t = &f * &q[i][k];
                            q[i][j] -= t;
                        }
                    }
                    if !d[k][j].is_zero() {
                        for row in d.iter_mut() {
                            row.swap(k, j);
                        }
                        for row in q.iter_mut() {
                            row.swap(k, j);
                        }
                        dirty = true;
                    }
                }
            }
        }

        // divisibility: d_k must divide everything below-right
        let mut fixed = false;
        'scan: for i in k + 1..rows {
            for j in k + 1..cols {
                if !(&d[i][j] % &d[k][k]).is_zero() {
                    for col in 0..cols {
                        let t = d[i][col].clone();
                        d[k][col] += t;
                    }
                    for col in 0..rows {
                        let t = p[i][col].clone();
                        p[k][col] += t;
                    }
                    fixed = true;
                    break 'scan;
                }
            }
        }
        if fixed {
            continue; // redo this k with the merged row
        }
        if d[k][k].is_negative() {
            for col in 0..cols {
                let t = -d[k][col].clone();
                d[k][col] = t;
            }
            for col in 0..rows {
                let t = -p[k][col].clone();
                p[k][col] = t;
            }
        }
        k += 1;
    }
    let rank = (0..k).take_while(|&i| !d[i][i].is_zero()).count();
    SmithForm { p, q, d, rank }
}

fn div_floor(a: i64, b: i64) -> i64 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

/// Column-echelon Hermite basis of the column lattice of `a`: pivots appear
/// in strictly increasing rows and are positive, and the entries of a column
/// above its pivot row are zero. Supports canonical coset reduction.
#[derive(Clone, Debug)]
pub struct HermiteBasis {
    pub columns: Vec<Vec<i64>>,
    pub pivot_rows: Vec<usize>,
}

pub fn hermite_basis(a: &IntMat) -> HermiteBasis {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    // work on columns
    let mut work: Vec<Vec<i64>> = (0..cols).map(|j| (0..rows).map(|i| a[i][j]).collect()).collect();
    let mut next = 0usize;
    let mut pivot_rows = Vec::new();
    for row in 0..rows {
        loop {
            let mut best: Option<usize> = None;
            for (j, col) in work.iter().enumerate().skip(next) {
                if col[row] != 0 {
                    let better = match best {
                        None => true,
                        Some(b) => col[row].abs() < work[b][row].abs(),
                    };
                    if better {
                        best = Some(j);
                    }
                }
            }
            let b = match best {
                Some(b) => b,
                None => break,
            };
            work.swap(next, b);
            let pivot_val = work[next][row];
            let mut others = false;
            for j in next + 1..work.len() {
                if work[j][row] != 0 {
                    let f = div_floor(work[j][row], pivot_val);
                    if f != 0 {
                        for i in 0..rows {
                            let s = work[next][i];
                            work[j][i] -= f * s;
                        }
                    }
                    if work[j][row] != 0 {
                        others = true;
                    }
                }
            }
            if !others {
                if work[next][row] < 0 {
                    for x in work[next].iter_mut() {
                        *x = -*x;
                    }
                }
                pivot_rows.push(row);
                next += 1;
                break;
            }
        }
    }
    work.truncate(next);
    HermiteBasis { columns: work, pivot_rows }
}

impl HermiteBasis {
    pub fn rank(&self) -> usize {
        self.columns.len()
    }

    /// Canonical representative of `x` modulo the column lattice: each pivot
    /// coordinate lands in `[0, pivot)`.
    pub fn reduce(&self, x: &[i64]) -> Vec<i64> {
        let mut r: Vec<i64> = x.to_vec();
        for (k, &row) in self.pivot_rows.iter().enumerate() {
            let pivot = self.columns[k][row];
            let f = div_floor(r[row], pivot);
            if f != 0 {
                for (i, v) in r.iter_mut().enumerate() {
                    *v -= f * self.columns[k][i];
                }
            }
        }
        r
    }

    /// Is `x` in the lattice?
    pub fn contains(&self, x: &[i64]) -> bool {
        self.reduce(x).iter().all(|&v| v == 0)
    }
}
