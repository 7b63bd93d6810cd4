//! Exact Gaussian elimination over the rationals.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<BigRational>>;

/// Reduces `mat` to reduced row echelon form in place and returns the pivot columns.
pub fn rref(mat: &mut Matrix) -> Vec<usize> {
    let rows = mat.len();
    let cols = mat.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = BigRational::one() / &mat[r][c];
        for x in mat[r][c..].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = mat[r].clone();
        for (i, row) in mat.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(mat: &Matrix) -> usize {
    let mut m = mat.clone();
    rref(&mut m).len()
}

/// Result of solving `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    /// A particular solution with all free variables zero.
    pub x: Vec<BigRational>,
    pub rank: usize,
    pub unknowns: usize,
}

impl Solution {
    pub fn is_unique(&self) -> bool {
        self.rank == self.unknowns
    }
}

/// Solves `A x = b` with `A` given by rows. Returns `Ok(None)` when the
/// system is inconsistent.
pub fn solve(a: &Matrix, b: &[BigRational], unknowns: usize) -> Result<Option<Solution>> {
    if a.len() != b.len() || a.iter().any(|r| r.len() != unknowns) {
        return Err(Error::invariant("linear system has mismatched dimensions"));
    }
    let mut aug: Matrix = a.iter().zip(b).map(|(r, v)| r.iter().cloned().chain([v.clone()]).collect()).collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&unknowns) {
        return Ok(None);
    }
    let mut x = vec![BigRational::zero(); unknowns];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = aug[row][unknowns].clone();
    }
    Ok(Some(Solution { x, rank: pivots.len(), unknowns }))
}
