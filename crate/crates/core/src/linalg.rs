//! Dense matrices over the rationals with exact rank and characteristic
//! polynomial.

use std::fmt;
use std::ops::{Index, IndexMut};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Q::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn pow(&self, k: u32) -> QMatrix {
        assert!(self.is_square());
        let mut out = QMatrix::identity(self.rows);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols)).fold(Q::zero(), |acc, i| acc + &self[(i, i)])
    }

    /// `Some(c)` when the matrix equals `c · I`.
    pub fn as_scalar(&self) -> Option<Q> {
        if !self.is_square() {
            return None;
        }
        let c = if self.rows == 0 {
            Q::zero()
        } else {
            self[(0, 0)].clone()
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                let expect = if i == j { &c } else { &Q::zero() };
                if self[(i, j)] != *expect {
                    return None;
                }
            }
        }
        Some(c)
    }

    /// Exact rank by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> = (0..self.rows).map(|i| integer_row(self.row(i))).collect();
        bareiss_rank(&mut m, self.cols)
    }

    /// Monic characteristic polynomial, coefficients from degree 0 upwards.
    pub fn charpoly(&self) -> Vec<Q> {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![Q::zero(); n + 1];
        coeffs[n] = Q::one();
        let mut m = QMatrix::zeros(n, n);
        for k in 1..=n {
            let mut next = self.mul(&m);
            for i in 0..n {
                next[(i, i)] += &coeffs[n - k + 1];
            }
            let am = self.mul(&next);
            coeffs[n - k] = -am.trace() / q(k as i64);
            m = next;
        }
        coeffs
    }
}

fn integer_row(row: &[Q]) -> Vec<BigInt> {
    let den = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&den / x.denom())).collect()
}

fn bareiss_rank(m: &mut [Vec<BigInt>], cols: usize) -> usize {
    let rows = m.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = &pivot_row[col];
        for row in rest.iter_mut() {
            let factor = row[col].clone();
            for j in col + 1..cols {
                let v = pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = pivot.clone();
        rank += 1;
    }
    rank
}

/// Dimension of the smallest subspace containing `v` and stable under every
/// operator in `ops`.
pub fn krylov_dim(ops: &[&QMatrix], v: &[Q]) -> usize {
    let mut basis = Echelon::default();
    let mut queue = Vec::new();
    if basis.insert(v.to_vec()) {
        queue.push(v.to_vec());
    }
    while let Some(w) = queue.pop() {
        for op in ops {
            let u = op.apply(&w);
            if basis.insert(u.clone()) {
                queue.push(u);
            }
        }
    }
    basis.len()
}

/// Incrementally maintained reduced row echelon basis.
#[derive(Default)]
struct Echelon {
    rows: Vec<(usize, Vec<Q>)>,
}

impl Echelon {
    fn len(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` if it is independent of the current rows.
    fn insert(&mut self, mut v: Vec<Q>) -> bool {
        for (pivot, row) in &self.rows {
            if !v[*pivot].is_zero() {
                let f = v[*pivot].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x -= &f * r;
                    }
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, r) in row.iter_mut().zip(&v) {
                    if !r.is_zero() {
                        *x -= &f * r;
                    }
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}

/// `(t^r - c)^k` as a coefficient vector, degree 0 first.
pub fn binomial_power(r: usize, c: &Q, k: usize) -> Vec<Q> {
    let mut poly = vec![Q::one()];
    for _ in 0..k {
        let mut next = vec![Q::zero(); poly.len() + r];
        for (i, a) in poly.iter().enumerate() {
            next[i + r] += a;
            next[i] -= a * c;
        }
        poly = next;
    }
    poly
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
