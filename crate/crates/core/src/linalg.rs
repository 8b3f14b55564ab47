//! Exact Gaussian elimination over the rationals.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) type Matrix = Vec<Vec<BigRational>>;

pub(crate) fn determinant(m: &mut [Vec<BigRational>]) -> BigRational {
    let r = m.len();
    let mut det = BigRational::one();
    for c in 0..r {
        let Some(p) = (c..r).find(|&i| !m[i][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pivot_row = m[c].clone();
        let pivot = &pivot_row[c];
        det *= pivot;
        for row in m[c + 1..].iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] / pivot;
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x -= &f * y;
            }
        }
    }
    det
}

/// Reduced row echelon form in place; returns the pivot columns.
pub(crate) fn rref(m: &mut Matrix) -> Vec<usize> {
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, row);
        let inv = m[row][c].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[row].clone();
        for (i, other) in m.iter_mut().enumerate() {
            if i != row && !other[c].is_zero() {
                let f = other[c].clone();
                for (x, y) in other[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    pivots
}

pub(crate) fn rank(rows: &[Vec<BigRational>]) -> usize {
    rref(&mut rows.to_vec()).len()
}

/// Inverse of a square matrix, if it is invertible.
pub(crate) fn inverse(m: &[Vec<BigRational>]) -> Option<Matrix> {
    let d = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..d).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < d || pivots[d - 1] >= d {
        return None;
    }
    Some(aug.into_iter().map(|r| r[d..].to_vec()).collect())
}

/// The unique solution of `m x = rhs` for square `m`, if it exists.
pub(crate) fn solve(m: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let d = m.len();
    let mut aug: Matrix = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| row.iter().cloned().chain([b.clone()]).collect())
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < d || pivots.iter().any(|&p| p >= d) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[d].clone()).collect())
}
