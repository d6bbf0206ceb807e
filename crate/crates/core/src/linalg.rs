//! Dense exact matrices: products, rank, column-space membership.

use crate::scalar::Scalar;

pub type Matrix = Vec<Vec<Scalar>>;

pub fn mat_vec(m: &[Vec<Scalar>], v: &[Scalar]) -> Vec<Scalar> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn mat_mul(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Matrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * &brow[j]).sum())
                .collect()
        })
        .collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
        .collect()
}

pub fn diagonal(d: &[Scalar]) -> Matrix {
    let n = d.len();
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { d[i].clone() } else { Scalar::zero() }).collect())
        .collect()
}

/// Rank by fraction-exact Gaussian elimination.
pub fn rank(m: &[Vec<Scalar>]) -> usize {
    let mut a: Matrix = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pivot = a[r][c].clone();
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] / &pivot;
                for j in c..cols {
                    let delta = &f * &a[r][j];
                    a[i][j] = &a[i][j] - &delta;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Whether `v` is a linear combination of the columns of `m`.
pub fn in_column_space(m: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    let augmented: Matrix = m
        .iter()
        .zip(v)
        .map(|(row, x)| {
            let mut r = row.clone();
            r.push(x.clone());
            r
        })
        .collect();
    rank(m) == rank(&augmented)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
            .collect()
    }

    #[test]
    fn products() {
        let a = m(&[&[1, 2], &[0, 1]]);
        assert_eq!(mat_vec(&a, &[Scalar::from_int(1), Scalar::from_int(1)]), vec![Scalar::from_int(3), Scalar::one()]);
        assert_eq!(mat_mul(&a, &identity(2)), a);
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&m(&[&[1, 0], &[0, 1], &[1, 1]])), 2);
        assert_eq!(rank(&m(&[&[0, 0]])), 0);
        assert!(in_column_space(&m(&[&[1], &[3]]), &[Scalar::from_int(2), Scalar::from_int(6)]));
        assert!(!in_column_space(&m(&[&[1], &[3]]), &[Scalar::from_int(2), Scalar::from_int(5)]));
    }
}
