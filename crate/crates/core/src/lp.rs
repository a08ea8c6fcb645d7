//! Dense two-phase simplex over an ordered field.
//!
//! Sized for desk-scale feasibility systems: the tableau is explicit and the
//! pivot rule is Bland's, so the solver terminates on every input. Run it
//! over `BigRational` for exact verdicts or over `f64` with a tolerance for
//! larger instances.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Field operations the tableau needs, plus the zero tolerance used in
/// comparisons (exactly zero for rationals).
pub trait LpNum:
    Clone
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn tolerance() -> Self;

    fn from_i64(v: i64) -> Self;

    fn is_negligible(&self) -> bool {
        let t = Self::tolerance();
        self.clone() < t.clone() && -self.clone() < t
    }
}

impl LpNum for BigRational {
    fn tolerance() -> Self {
        BigRational::zero()
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
}

impl LpNum for f64 {
    fn tolerance() -> Self {
        1e-9
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpResult<T> {
    Optimal { x: Vec<T>, value: T },
    Infeasible,
    Unbounded,
}

/// Minimize `c . x` subject to `A x = b`, `x >= 0`.
pub fn solve_min<T: LpNum>(c: &[T], a: &[Vec<T>], b: &[T]) -> LpResult<T> {
    let m = a.len();
    let n = c.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    debug_assert_eq!(b.len(), m);

    // tableau over columns 0..n (structural) and n..n+m (artificial),
    // last column is the right-hand side
    let total = n + m;
    let mut t: Vec<Vec<T>> = vec![vec![T::zero(); total + 1]; m];
    for i in 0..m {
        let flip = b[i] < T::zero();
        for j in 0..n {
            t[i][j] = if flip { -a[i][j].clone() } else { a[i][j].clone() };
        }
        t[i][total] = if flip { -b[i].clone() } else { b[i].clone() };
        t[i][n + i] = T::one();
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // phase 1: minimize the sum of artificials
    let mut obj = vec![T::zero(); total + 1];
    for i in 0..m {
        for j in 0..=total {
            obj[j] = obj[j].clone() - t[i][j].clone();
        }
    }
    // artificial columns start in the basis with reduced cost zero
    for j in n..total {
        obj[j] = T::zero();
    }
    pivot_until_optimal(&mut t, &mut obj, &mut basis, total);
    let phase1 = -obj[total].clone();
    if !phase1.is_negligible() {
        return LpResult::Infeasible;
    }
    // kick residual artificials out of the basis where possible
    let mut drop_rows = Vec::new();
    for i in 0..m {
        if basis[i] >= n {
            let col = (0..n).find(|&j| !t[i][j].is_negligible());
            match col {
                Some(j) => pivot(&mut t, &mut obj, &mut basis, i, j),
                None => drop_rows.push(i), // redundant constraint
            }
        }
    }
    for &i in drop_rows.iter().rev() {
        t.remove(i);
        basis.remove(i);
    }

    // phase 2: the real objective, artificials forbidden
    let m = t.len();
    let mut obj = vec![T::zero(); total + 1];
    obj[..n].clone_from_slice(&c[..n]);
    // reduce by the basic rows
    for i in 0..m {
        let cb = obj[basis[i]].clone();
        if !cb.is_negligible() {
            for j in 0..=total {
                obj[j] = obj[j].clone() - cb.clone() * t[i][j].clone();
            }
        }
    }
    // bar artificial columns from re-entering
    if !pivot_until_optimal_restricted(&mut t, &mut obj, &mut basis, total, n) {
        return LpResult::Unbounded;
    }
    let mut x = vec![T::zero(); n];
    for i in 0..m {
        if basis[i] < n {
            x[basis[i]] = t[i][total].clone();
        }
    }
    LpResult::Optimal { x, value: -obj[total].clone() }
}

fn pivot_until_optimal<T: LpNum>(
    t: &mut [Vec<T>],
    obj: &mut [T],
    basis: &mut [usize],
    total: usize,
) {
    let ok = pivot_until_optimal_restricted(t, obj, basis, total, total);
    debug_assert!(ok, "phase-1 objective is bounded below by zero");
}

/// Bland's rule; columns `>= allowed` may not enter. Returns false when the
/// objective is unbounded.
fn pivot_until_optimal_restricted<T: LpNum>(
    t: &mut [Vec<T>],
    obj: &mut [T],
    basis: &mut [usize],
    total: usize,
    allowed: usize,
) -> bool {
    loop {
        let entering = (0..allowed).find(|&j| obj[j].clone() < -T::tolerance());
        let j = match entering {
            Some(j) => j,
            None => return true,
        };
        let mut leave: Option<usize> = None;
        for i in 0..t.len() {
            if t[i][j].clone() > T::tolerance() {
                let better = match leave {
                    None => true,
                    Some(l) => {
                        let ratio_i = t[i][total].clone() / t[i][j].clone();
                        let ratio_l = t[l][total].clone() / t[l][j].clone();
                        ratio_i < ratio_l || (ratio_i == ratio_l && basis[i] < basis[l])
                    }
                };
                if better {
                    leave = Some(i);
                }
            }
        }
        let i = match leave {
            Some(i) => i,
            None => return false,
        };
        pivot(t, obj, basis, i, j);
    }
}

fn pivot<T: LpNum>(t: &mut [Vec<T>], obj: &mut [T], basis: &mut [usize], row: usize, col: usize) {
    let total = t[row].len() - 1;
    let p = t[row][col].clone();
    for j in 0..=total {
        t[row][j] = t[row][j].clone() / p.clone();
    }
    for i in 0..t.len() {
        if i != row && !t[i][col].is_negligible() {
            let f = t[i][col].clone();
            for j in 0..=total {
                t[i][j] = t[i][j].clone() - f.clone() * t[row][j].clone();
            }
        }
    }
    if !obj[col].is_negligible() {
        let f = obj[col].clone();
        for j in 0..=total {
            obj[j] = obj[j].clone() - f.clone() * t[row][j].clone();
        }
    }
    basis[row] = col;
}
