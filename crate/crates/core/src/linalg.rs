//! Exact linear algebra over a cyclotomic field.
//!
//! Three tools: sparse vectors with an incremental echelon form that
//! remembers how every stored row was combined from the inserted vectors,
//! small dense matrices with Gauss–Jordan elimination, and sparse matrices
//! used as operators on tensor products of modules.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::exactnum::{Cyclotomic, Field};

/// Finitely supported vector indexed by `usize`; zero entries are never stored.
pub type SparseVec = BTreeMap<usize, Cyclotomic>;

/// `y += a·x`.
pub fn axpy(y: &mut SparseVec, a: &Cyclotomic, x: &SparseVec) {
    if a.is_zero() {
        return;
    }
    for (k, v) in x {
        let t = a * v;
        add_entry(y, *k, &t);
    }
}

/// `y[k] += t`, dropping the entry if it cancels.
pub fn add_entry(y: &mut SparseVec, k: usize, t: &Cyclotomic) {
    if t.is_zero() {
        return;
    }
    match y.get_mut(&k) {
        Some(e) => {
            *e += t;
            if e.is_zero() {
                y.remove(&k);
            }
        }
        None => {
            y.insert(k, t.clone());
        }
    }
}

pub fn scale(x: &SparseVec, a: &Cyclotomic) -> SparseVec {
    if a.is_zero() {
        return SparseVec::new();
    }
    x.iter().map(|(k, v)| (*k, a * v)).collect()
}

pub fn unit(field: &Field, k: usize) -> SparseVec {
    let mut v = SparseVec::new();
    v.insert(k, field.one());
    v
}

#[derive(Clone, Debug)]
struct Row {
    vec: SparseVec,
    comb: SparseVec,
}

/// Outcome of [`Echelon::insert`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Insert {
    /// The vector was independent and received this id.
    Independent(usize),
    /// The vector equals this combination of earlier independent ids.
    Dependent(SparseVec),
}

/// Row echelon form built one vector at a time.
///
/// Each stored row has its pivot at its smallest column, normalized to 1,
/// and carries its expression in terms of the independent vectors inserted
/// so far (numbered `0, 1, …` in insertion order).
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    rows: BTreeMap<usize, Row>,
    independent: usize,
}

impl Echelon {
    pub fn new(field: &Field) -> Echelon {
        Echelon {
            field: field.clone(),
            rows: BTreeMap::new(),
            independent: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.independent
    }

    /// Reduces `v` against the stored rows; returns the residual and the
    /// combination of independent ids that was subtracted.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut v = v.clone();
        let mut comb = SparseVec::new();
        for (p, row) in &self.rows {
            let c = match v.get(p) {
                Some(c) => c.clone(),
                None => continue,
            };
            axpy(&mut v, &-&c, &row.vec);
            axpy(&mut comb, &c, &row.comb);
        }
        (v, comb)
    }

    /// True when `v` lies in the span of the inserted vectors.
    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_empty()
    }

    pub fn insert(&mut self, v: &SparseVec) -> Insert {
        let (res, comb) = self.reduce(v);
        if res.is_empty() {
            return Insert::Dependent(comb);
        }
        let id = self.independent;
        self.independent += 1;
        let (&piv, lead) = res.iter().next().expect("nonzero residual");
        let inv = lead.inv().expect("nonzero pivot");
        let mut c = scale(&comb, &-&inv);
        c.insert(id, inv.clone());
        let row = Row {
            vec: scale(&res, &inv),
            comb: c,
        };
        self.rows.insert(piv, row);
        Insert::Independent(id)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
}

/// Dense matrix stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Cyclotomic>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            f.write_str("  [")?;
            for c in 0..self.cols {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

impl core::ops::Index<(usize, usize)> for Matrix {
    type Output = Cyclotomic;
    fn index(&self, (r, c): (usize, usize)) -> &Cyclotomic {
        &self.data[r * self.cols + c]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Cyclotomic {
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Cyclotomic>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Matrix::zeros(field, r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, x) in row.into_iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Cyclotomic] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<Cyclotomic>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix {
            field: self.field.clone(),
            rows: self.cols,
            cols: self.rows,
            data: self.data.clone(),
        };
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let field = &self.field;
        let mut out = Matrix {
            field: field.clone(),
            rows: self.rows,
            cols: other.cols,
            data: Vec::with_capacity(self.rows * other.cols),
        };
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = field.zero();
                for k in 0..self.cols {
                    let a = &self[(r, k)];
                    if a.is_zero() {
                        continue;
                    }
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                out.data.push(acc);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for k in 0..m.cols {
                    m.data.swap(p * m.cols + k, r * m.cols + k);
                }
            }
            let inv = m[(r, c)].inv().expect("nonzero pivot");
            for k in c..m.cols {
                if !m[(r, k)].is_zero() {
                    m[(r, k)] = &m[(r, k)] * &inv;
                }
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for k in c..m.cols {
                    if m[(r, k)].is_zero() {
                        continue;
                    }
                    let t = &f * &m[(r, k)];
                    m[(i, k)] -= &t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::InvalidInput("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let field = self.field.clone();
        let mut aug = Matrix::zeros(&field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = field.one();
        }
        let (red, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] >= n {
            return Err(Error::SingularGram { degree: Vec::new() });
        }
        let mut inv = Matrix::zeros(&field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = red[(r, n + c)].clone();
            }
        }
        Ok(inv)
    }

    /// Basis of `{x : self·x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Cyclotomic>> {
        let field = &self.field;
        let (red, piv) = self.rref();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !piv.contains(c)) {
            let mut v = vec![field.zero(); self.cols];
            v[free] = field.one();
            for (r, &p) in piv.iter().enumerate() {
                v[p] = -&red[(r, free)];
            }
            out.push(v);
        }
        out
    }
}

/// Sparse matrix stored by rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseMatrix {
    cols: usize,
    rows: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> SparseMatrix {
        SparseMatrix {
            cols,
            rows: vec![SparseVec::new(); rows],
        }
    }

    pub fn identity(field: &Field, n: usize) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(n, n);
        for i in 0..n {
            m.rows[i].insert(i, field.one());
        }
        m
    }

    pub fn diagonal(diag: Vec<Cyclotomic>) -> SparseMatrix {
        let n = diag.len();
        let mut m = SparseMatrix::zeros(n, n);
        for (i, d) in diag.into_iter().enumerate() {
            if !d.is_zero() {
                m.rows[i].insert(i, d);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.rows[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&Cyclotomic> {
        self.rows[r].get(&c)
    }

    pub fn add_at(&mut self, r: usize, c: usize, t: &Cyclotomic) {
        add_entry(&mut self.rows[r], c, t);
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    /// Column `c` as a sparse vector.
    pub fn column(&self, c: usize) -> SparseVec {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(r, row)| row.get(&c).map(|v| (r, v.clone())))
            .collect()
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (r, row) in self.rows.iter().enumerate() {
            let mut acc: Option<Cyclotomic> = None;
            for (c, a) in row {
                if let Some(b) = v.get(c) {
                    let t = a * b;
                    acc = Some(match acc {
                        Some(x) => x + t,
                        None => t,
                    });
                }
            }
            if let Some(x) = acc {
                if !x.is_zero() {
                    out.insert(r, x);
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.nrows(), "shape mismatch");
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc = SparseVec::new();
                for (k, a) in row {
                    axpy(&mut acc, a, &other.rows[*k]);
                }
                acc
            })
            .collect();
        SparseMatrix {
            cols: other.cols,
            rows,
        }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.nrows(), self.cols), (other.nrows(), other.cols));
        let mut out = self.clone();
        for (r, row) in other.rows.iter().enumerate() {
            for (c, v) in row {
                add_entry(&mut out.rows[r], *c, v);
            }
        }
        out
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.nrows(), self.cols), (other.nrows(), other.cols));
        let mut out = self.clone();
        for (r, row) in other.rows.iter().enumerate() {
            for (c, v) in row {
                add_entry(&mut out.rows[r], *c, &-v);
            }
        }
        out
    }

    pub fn scaled(&self, a: &Cyclotomic) -> SparseMatrix {
        SparseMatrix {
            cols: self.cols,
            rows: self.rows.iter().map(|r| scale(r, a)).collect(),
        }
    }

    /// Kronecker product; row index of `(i, k)` is `i·other.nrows() + k`.
    pub fn kron(&self, other: &SparseMatrix) -> SparseMatrix {
        let (n2, m2) = (other.nrows(), other.cols);
        let mut out = SparseMatrix::zeros(self.nrows() * n2, self.cols * m2);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, a) in row {
                for (k, orow) in other.rows.iter().enumerate() {
                    let target = &mut out.rows[i * n2 + k];
                    for (l, b) in orow {
                        target.insert(j * m2 + l, a * b);
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(self.cols, self.nrows());
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                out.rows[*c].insert(r, v.clone());
            }
        }
        out
    }

    pub fn to_dense(&self, field: &Field) -> Matrix {
        let mut m = Matrix::zeros(field, self.nrows(), self.cols);
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                m[(r, *c)] = v.clone();
            }
        }
        m
    }

    pub fn from_dense(m: &Matrix) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(m.nrows(), m.ncols());
        for r in 0..m.nrows() {
            for c in 0..m.ncols() {
                if !m[(r, c)].is_zero() {
                    out.rows[r].insert(c, m[(r, c)].clone());
                }
            }
        }
        out
    }

    /// First `(row, col)` where the two matrices differ.
    pub fn first_difference(&self, other: &SparseMatrix) -> Option<(usize, usize)> {
        let d = self.sub(other);
        d.rows
            .iter()
            .enumerate()
            .find_map(|(r, row)| row.keys().next().map(|c| (r, *c)))
    }
}
