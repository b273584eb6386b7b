use std::ops::{Index, IndexMut};

use super::field::{Elem, Field};

/// Dense row-major matrix of field elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Elem::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    /// Builds a matrix from equal-length rows. `cols` is used when `rows` is empty.
    pub fn from_rows<R: AsRef<[Elem]>>(cols: usize, rows: &[R]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(r);
        }
        Mat { rows: rows.len(), cols, data }
    }

    pub fn from_i64(field: &Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<Elem>> = rows.iter().map(|r| field.vector(r)).collect();
        Mat::from_rows(cols, &rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Elem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Elem]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn push_row(&mut self, row: &[Elem]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, field: &Field, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = field.mul(a, rhs[(k, j)]);
                    out[(i, j)] = field.add(out[(i, j)], prod);
                }
            }
        }
        out
    }

    /// `v^T * self` for a row vector `v`.
    pub fn vec_mul(&self, field: &Field, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![Elem::ZERO; self.cols];
        for (i, &c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &e) in out.iter_mut().zip(self.row(i)) {
                *o = field.add(*o, field.mul(c, e));
            }
        }
        out
    }

    pub fn mul_vec(&self, field: &Field, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.cols);
        self.row_iter().map(|r| dot(field, r, v)).collect()
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Elem;
    fn index(&self, (i, j): (usize, usize)) -> &Elem {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Elem {
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot(field: &Field, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter().zip(b).fold(Elem::ZERO, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowReduction {
    pub rank: usize,
    /// Reduced row echelon form, `rank` rows.
    pub echelon: Mat,
    /// Kernel basis as rows: each row `k` satisfies `m * k = 0`.
    pub kernel: Mat,
    pub pivots: Vec<usize>,
}

/// Gauss-Jordan elimination in place; returns the pivot columns.
fn rref_in_place(field: &Field, m: &mut Mat) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        if piv != r {
            for j in 0..cols {
                m.data.swap(piv * cols + j, r * cols + j);
            }
        }
        let inv = field.inv(m[(r, c)]);
        for j in c..cols {
            m[(r, j)] = field.mul(m[(r, j)], inv);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = m[(i, c)];
            if factor.is_zero() {
                continue;
            }
            for j in c..cols {
                let sub = field.mul(factor, m[(r, j)]);
                m[(i, j)] = field.sub(m[(i, j)], sub);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn row_reduce(field: &Field, m: &Mat) -> RowReduction {
    let mut work = m.clone();
    let pivots = rref_in_place(field, &mut work);
    let rank = pivots.len();
    work.data.truncate(rank * work.cols);
    work.rows = rank;

    let cols = m.cols;
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut kernel = Mat::zeros(0, cols);
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Elem::ZERO; cols];
        v[free] = field.one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = field.neg(work[(r, free)]);
        }
        kernel.push_row(&v);
    }
    RowReduction { rank, echelon: work, kernel, pivots }
}

pub fn rank(field: &Field, m: &Mat) -> usize {
    let mut work = m.clone();
    rref_in_place(field, &mut work).len()
}

pub fn determinant(field: &Field, m: &Mat) -> Elem {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut a = m.clone();
    let mut det = field.one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
            return Elem::ZERO;
        };
        if piv != c {
            for j in 0..n {
                a.data.swap(piv * n + j, c * n + j);
            }
            det = field.neg(det);
        }
        let p = a[(c, c)];
        det = field.mul(det, p);
        let inv = field.inv(p);
        for i in c + 1..n {
            let factor = field.mul(a[(i, c)], inv);
            if factor.is_zero() {
                continue;
            }
            for j in c..n {
                let sub = field.mul(factor, a[(c, j)]);
                a[(i, j)] = field.sub(a[(i, j)], sub);
            }
        }
    }
    det
}
