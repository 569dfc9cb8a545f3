//! Exact linear algebra over Q and Z.
//!
//! Matrices are plain `Vec` of rows. Everything here is small (a dozen rows
//! and columns at most), so clarity wins over clever pivoting.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

pub type QMatrix = Vec<Vec<Rational>>;
pub type ZMatrix = Vec<Vec<BigInt>>;

pub fn to_q(rows: &[Vec<i64>]) -> QMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
        .collect()
}

pub fn to_z(rows: &[Vec<i64>]) -> ZMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(m: &mut QMatrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &QMatrix) -> usize {
    let mut m = m.clone();
    rref(&mut m).len()
}

/// Basis of the right kernel `{x : m x = 0}` over Q.
pub fn kernel(m: &QMatrix, cols: usize) -> Vec<Vec<Rational>> {
    let mut r = m.clone();
    let pivots = rref(&mut r);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); cols];
            x[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                x[pc] = -r[row][f].clone();
            }
            x
        })
        .collect()
}

/// Solves the square system `m x = b`; `None` when `m` is singular.
pub fn solve_square(m: &QMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let n = m.len();
    let mut aug: QMatrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n].clone()).collect())
}

pub fn transpose<T: Clone>(m: &[Vec<T>], cols: usize) -> Vec<Vec<T>> {
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Left inverse `(B^T B)^{-1} B^T` of a matrix whose columns are linearly
/// independent; `basis` holds those columns as rows.
pub fn left_inverse(basis: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let r = basis.len();
    if r == 0 {
        return Vec::new();
    }
    let gram: QMatrix = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    basis[i]
                        .iter()
                        .zip(&basis[j])
                        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect()
        })
        .collect();
    let n = basis[0].len();
    // Solve gram * X = basis column by column.
    let mut out = vec![vec![Rational::zero(); n]; r];
    for col in 0..n {
        let rhs: Vec<Rational> = basis.iter().map(|b| b[col].clone()).collect();
        let x = solve_square(&gram, &rhs).expect("basis vectors must be independent");
        for i in 0..r {
            out[i][col] = x[i].clone();
        }
    }
    out
}

fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    (e.gcd, e.x, e.y)
}

/// Column-style Hermite reduction `A U = H` with `U` unimodular.
///
/// `H` is lower echelon: column `t < rank` has its first nonzero entry, which is
/// positive, in row `pivot_rows[t]`; columns `rank..` are zero, so the matching
/// columns of `U` span the integer kernel of `A`.
#[derive(Debug, Clone)]
pub struct ColumnHermite {
    pub h: ZMatrix,
    pub u: ZMatrix,
    pub rank: usize,
    pub pivot_rows: Vec<usize>,
    pub cols: usize,
}

impl ColumnHermite {
    pub fn new(a: &ZMatrix, cols: usize) -> Self {
        let rows = a.len();
        let mut h = a.clone();
        let mut u: ZMatrix = (0..cols)
            .map(|i| {
                (0..cols)
                    .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        let mut pivot_rows = Vec::new();
        let mut c = 0;
        for i in 0..rows {
            if c == cols {
                break;
            }
            for j in (c + 1)..cols {
                if h[i][j].is_zero() {
                    continue;
                }
                let a_ = h[i][c].clone();
                let b_ = h[i][j].clone();
                let (g, x, y) = ext_gcd(&a_, &b_);
                let (p, q) = (&a_ / &g, &b_ / &g);
                // [col_c, col_j] <- [x col_c + y col_j, -q col_c + p col_j]
                for m in [&mut h, &mut u] {
                    for row in m.iter_mut() {
                        let cc = row[c].clone();
                        let cj = row[j].clone();
                        row[c] = &x * &cc + &y * &cj;
                        row[j] = &p * &cj - &q * &cc;
                    }
                }
            }
            if h[i][c].is_zero() {
                continue;
            }
            if h[i][c].is_negative() {
                for m in [&mut h, &mut u] {
                    for row in m.iter_mut() {
                        row[c] = -row[c].clone();
                    }
                }
            }
            pivot_rows.push(i);
            c += 1;
        }
        Self {
            h,
            u,
            rank: c,
            pivot_rows,
            cols,
        }
    }

    /// Integer kernel basis (unreduced).
    pub fn kernel(&self) -> ZMatrix {
        (self.rank..self.cols)
            .map(|j| self.u.iter().map(|row| row[j].clone()).collect())
            .collect()
    }

    /// One integer solution of `A x = b`, if any exists.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut y: Vec<BigInt> = Vec::with_capacity(self.rank);
        for t in 0..self.rank {
            let r = self.pivot_rows[t];
            let mut acc = b[r].clone();
            for (s, ys) in y.iter().enumerate() {
                acc -= &self.h[r][s] * ys;
            }
            let (q, rem) = acc.div_rem(&self.h[r][t]);
            if !rem.is_zero() {
                return None;
            }
            y.push(q);
        }
        for (r, br) in b.iter().enumerate() {
            let lhs = (0..self.rank).fold(BigInt::zero(), |acc, s| acc + &self.h[r][s] * &y[s]);
            if &lhs != br {
                return None;
            }
        }
        Some(
            (0..self.cols)
                .map(|i| (0..self.rank).fold(BigInt::zero(), |acc, s| acc + &self.u[i][s] * &y[s]))
                .collect(),
        )
    }
}

/// Row Hermite normal form: positive pivots, entries above each pivot reduced
/// into `[0, pivot)`, zero rows removed.
pub fn row_hnf(rows: &ZMatrix, cols: usize) -> ZMatrix {
    let mut m = rows.clone();
    let n = m.len();
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        for i in (r + 1)..n {
            if m[i][c].is_zero() {
                continue;
            }
            let (g, x, y) = ext_gcd(&m[r][c], &m[i][c]);
            let (p, q) = (&m[r][c] / &g, &m[i][c] / &g);
            for j in 0..cols {
                let a = m[r][j].clone();
                let b = m[i][j].clone();
                m[r][j] = &x * &a + &y * &b;
                m[i][j] = &p * &b - &q * &a;
            }
        }
        if m[r][c].is_zero() {
            continue;
        }
        if m[r][c].is_negative() {
            for x in m[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let f = m[i][c].div_floor(&m[r][c]);
            if !f.is_zero() {
                for j in 0..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn rank_and_kernel() {
        let m = to_q(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(rank(&m), 2);
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![int(-1), int(-1), int(1)]);
    }

    #[test]
    fn solve_square_system() {
        let m = to_q(&[vec![2, 1], vec![1, 3]]);
        let x = solve_square(&m, &[int(3), int(5)]).unwrap();
        assert_eq!(x, vec![rat(4, 5), rat(7, 5)]);
        let singular = to_q(&[vec![1, 2], vec![2, 4]]);
        assert!(solve_square(&singular, &[int(1), int(1)]).is_none());
    }

    #[test]
    fn column_hermite_kernel_and_solve() {
        let a = to_z(&[vec![1, 0, 1, 2], vec![0, 1, 1, -1], vec![1, 1, 1, 1]]);
        let ch = ColumnHermite::new(&a, 4);
        assert_eq!(ch.rank, 3);
        for k in ch.kernel() {
            for row in &a {
                let s: BigInt = row.iter().zip(&k).map(|(x, y)| x * y).sum();
                assert!(s.is_zero());
            }
        }
        let b = vec![BigInt::from(3), BigInt::from(0), BigInt::from(2)];
        let x = ch.solve(&b).unwrap();
        for (row, bi) in a.iter().zip(&b) {
            let s: BigInt = row.iter().zip(&x).map(|(p, q)| p * q).sum();
            assert_eq!(&s, bi);
        }
        // 2x = 1 has no integer solution
        let two = ColumnHermite::new(&to_z(&[vec![2, 4]]), 2);
        assert!(two.solve(&[BigInt::from(1)]).is_none());
    }

    #[test]
    fn hnf_is_canonical() {
        let a = to_z(&[vec![2, 4, 6], vec![1, 3, 5]]);
        let b = to_z(&[vec![3, 7, 11], vec![-1, -3, -5]]);
        assert_eq!(row_hnf(&a, 3), row_hnf(&b, 3));
    }
}
