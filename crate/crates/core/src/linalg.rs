//! Dense exact linear algebra over a field.

use num_traits::Num;

pub trait Field: Clone + Num + PartialEq {}
impl<T: Clone + Num + PartialEq> Field for T {}

pub type Matrix<F> = Vec<Vec<F>>;

pub fn zeros<F: Field>(rows: usize, cols: usize) -> Matrix<F> {
    vec![vec![F::zero(); cols]; rows]
}

pub fn identity<F: Field>(n: usize) -> Matrix<F> {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = F::one();
    }
    m
}

pub fn transpose<F: Field>(m: &Matrix<F>, cols: usize) -> Matrix<F> {
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_mul<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(F::zero(), |acc, k| {
                        if row[k].is_zero() {
                            acc
                        } else {
                            acc + row[k].clone() * b[k][j].clone()
                        }
                    })
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec<F: Field>(a: &Matrix<F>, v: &[F]) -> Vec<F> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
        })
        .collect()
}

/// Reduces `m` in place to reduced row echelon form over its first `cols`
/// columns and returns the pivot columns.
pub fn rref<F: Field>(m: &mut Matrix<F>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = F::one() / m[row][col].clone();
        for x in m[row].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..m[r].len() {
                    let sub = f.clone() * m[row][c].clone();
                    m[r][c] = m[r][c].clone() - sub;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    let cols = m.first().map_or(0, |r| r.len());
    rref(&mut m.clone(), cols).len()
}

/// Basis of `{x : m x = 0}`.
pub fn nullspace<F: Field>(m: &Matrix<F>, cols: usize) -> Vec<Vec<F>> {
    let mut r = m.clone();
    let pivots = rref(&mut r, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); cols];
            v[f] = F::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = F::zero() - r[i][f].clone();
            }
            v
        })
        .collect()
}

/// Solves `a x = b`; returns `None` when inconsistent. Free variables are zero.
pub fn solve<F: Field>(a: &Matrix<F>, b: &[F]) -> Option<Vec<F>> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut aug: Matrix<F> = a
        .iter()
        .zip(b)
        .map(|(row, y)| {
            let mut r = row.clone();
            r.push(y.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![F::zero(); cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = aug[i][cols].clone();
    }
    Some(x)
}

pub fn inverse<F: Field>(a: &Matrix<F>) -> Option<Matrix<F>> {
    let n = a.len();
    let mut aug: Matrix<F> = a
        .iter()
        .zip(identity::<F>(n))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    let pivots = rref(&mut aug, n);
    if pivots.len() < n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn determinant<F: Field>(a: &Matrix<F>) -> F {
    let n = a.len();
    let mut m = a.clone();
    let mut det = F::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return F::zero();
        };
        if p != col {
            m.swap(p, col);
            det = F::zero() - det;
        }
        let pivot = m[col][col].clone();
        det = det * pivot.clone();
        for r in col + 1..n {
            if !m[r][col].is_zero() {
                let f = m[r][col].clone() / pivot.clone();
                for c in col..n {
                    let sub = f.clone() * m[col][c].clone();
                    m[r][c] = m[r][c].clone() - sub;
                }
            }
        }
    }
    det
}
