//! Exact dense linear algebra over a [`Field`].

use crate::arith::{Field, FieldElem};

pub type Matrix = Vec<Vec<FieldElem>>;

/// Brings `mat` to reduced row echelon form in place and returns the pivot columns.
/// Zero rows end up at the bottom.
pub fn rref(mat: &mut Matrix) -> Vec<usize> {
    let nrows = mat.len();
    let ncols = mat.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(row, p);
        let inv = mat[row][col].inv().expect("pivot is nonzero");
        for x in mat[row].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = mat[row].clone();
        for (r, other) in mat.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let factor = other[col].clone();
            for (x, y) in other.iter_mut().zip(&pivot_row).skip(col) {
                if !y.is_zero() {
                    *x = &*x - &(&factor * y);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(mat: &Matrix) -> usize {
    let mut m = mat.clone();
    rref(&mut m).len()
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse(mat: &Matrix, field: &Field) -> Option<Matrix> {
    let n = mat.len();
    let mut aug: Matrix = mat
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// A basis of `{v : mat * v = 0}` for a matrix with `ncols` columns.
pub fn nullspace(mat: &Matrix, ncols: usize, field: &Field) -> Vec<Vec<FieldElem>> {
    let mut m = mat.clone();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![field.zero(); ncols];
            v[f] = field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&m[r][f];
            }
            v
        })
        .collect()
}

/// Solves `mat * x = rhs`; `None` when inconsistent. Free variables are set to zero.
pub fn solve(mat: &Matrix, rhs: &[FieldElem], field: &Field) -> Option<Vec<FieldElem>> {
    let ncols = mat.first().map_or(0, |r| r.len());
    let mut aug: Matrix = mat
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![field.zero(); ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][ncols].clone();
    }
    Some(x)
}
