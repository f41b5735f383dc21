//! Dense linear algebra over `F_p` for the small matrices that describe
//! additive maps on a field.

use crate::ffield::fp::inv_mod_p;

pub type Matrix = Vec<Vec<u64>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect()
}

pub fn transpose(m: &Matrix) -> Matrix {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j]).collect())
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix, p: u64) -> Matrix {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(0, |acc, k| (acc + row[k] * b[k][j]) % p))
                .collect()
        })
        .collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut Matrix, p: u64) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = inv_mod_p(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix, p: u64) -> usize {
    let mut work = m.clone();
    rref(&mut work, p).len()
}

/// Basis of `{v : m v = 0}`.
pub fn kernel(m: &Matrix, p: u64) -> Matrix {
    let mut work = m.clone();
    let cols = if work.is_empty() { 0 } else { work[0].len() };
    let pivots = rref(&mut work, p);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; cols];
            v[fc] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - work[row][fc]) % p;
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_vectors_are_annihilated() {
        let p = 5;
        let m = vec![vec![1, 2, 3], vec![2, 4, 1], vec![3, 1, 4]];
        let ker = kernel(&m, p);
        assert_eq!(ker.len() + rank(&m, p), 3);
        for v in &ker {
            for row in &m {
                let dot = row.iter().zip(v).fold(0, |a, (x, y)| (a + x * y) % p);
                assert_eq!(dot, 0);
            }
        }
    }
}
