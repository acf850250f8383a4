//! Small exact linear algebra over the rationals.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::scalartower::{q, Q};

pub type Matrix = Vec<Vec<Q>>;

pub fn from_int(m: &[Vec<i64>]) -> Matrix {
    m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

pub fn det(m: &Matrix) -> Q {
    let n = m.len();
    let mut a = m.clone();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        let piv = a[c][c].clone();
        d *= &piv;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &piv;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    d
}

/// Inertia `(positive, negative, zero)` of a symmetric matrix, by congruence
/// diagonalization.
pub fn inertia(m: &Matrix) -> (usize, usize, usize) {
    let mut a = m.clone();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    while !a.is_empty() {
        let n = a.len();
        if let Some(j) = (0..n).find(|&j| !a[j][j].is_zero()) {
            a.swap(0, j);
            for row in a.iter_mut() {
                row.swap(0, j);
            }
        } else if let Some(j) = (1..n).find(|&j| !a[0][j].is_zero()) {
            // a_00 = 0 = a_jj: replace e_0 by e_0 + e_j, giving 2·a_0j on the diagonal
            for k in 0..n {
                let t = a[j][k].clone();
                a[0][k] += t;
            }
            for row in a.iter_mut() {
                let t = row[j].clone();
                row[0] += t;
            }
        } else {
            zero += 1;
            a = a[1..].iter().map(|r| r[1..].to_vec()).collect();
            continue;
        }
        if a[0][0].is_zero() {
            // row 0 vanished entirely after the swap search; cannot happen, but stay total
            zero += 1;
            a = a[1..].iter().map(|r| r[1..].to_vec()).collect();
            continue;
        }
        let p = a[0][0].clone();
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        let mut next = vec![vec![Q::zero(); n - 1]; n - 1];
        for i in 1..n {
            for k in 1..n {
                next[i - 1][k - 1] = &a[i][k] - &a[i][0] * &a[0][k] / &p;
            }
        }
        a = next;
    }
    (pos, neg, zero)
}

pub fn signature(m: &Matrix) -> i64 {
    let (p, n, _) = inertia(m);
    p as i64 - n as i64
}

/// Solves `A x = b` for a possibly non-square `A` (rows = equations).
/// Returns `None` when the system is inconsistent or underdetermined.
pub fn solve(a: &Matrix, b: &[Q]) -> Option<Vec<Q>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Matrix = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let mut piv_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        let inv = m[r][c].recip();
        for k in c..=cols {
            m[r][k] = &m[r][k] * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in c..=cols {
                    let t = &f * &m[r][k];
                    m[i][k] -= t;
                }
            }
        }
        piv_cols.push(c);
        r += 1;
    }
    if piv_cols.len() < cols {
        return None;
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (i, &c) in piv_cols.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_signature() {
        let m = from_int(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(det(&m), q(-1));
        assert_eq!(inertia(&m), (1, 1, 0));
        let m = from_int(&[vec![2, 1, 0], vec![1, 2, 1], vec![0, 1, 2]]);
        assert_eq!(det(&m), q(4));
        assert_eq!(signature(&m), 3);
        let m = from_int(&[vec![0, 0], vec![0, 3]]);
        assert_eq!(inertia(&m), (1, 0, 1));
    }

    #[test]
    fn overdetermined_solve() {
        let a = from_int(&[vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(solve(&a, &[q(2), q(3), q(5)]), Some(vec![q(2), q(3)]));
        assert_eq!(solve(&a, &[q(2), q(3), q(6)]), None);
    }
}
