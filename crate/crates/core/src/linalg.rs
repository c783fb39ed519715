//! Dense matrices over a [`TowerField`] and a sparse row-echelon solver.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Mul;
use std::sync::Arc;

use crate::field::{FieldElement, TowerField};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Arc<TowerField>,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(field: &Arc<TowerField>, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &Arc<TowerField>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Self {
        let field = rows
            .iter()
            .flatten()
            .next()
            .map(|x| x.field().clone())
            .expect("from_rows needs at least one entry; use from_rows_in");
        Self::from_rows_in(&field, rows, None)
    }

    /// Like [`Matrix::from_rows`], with an explicit field so that empty
    /// shapes are allowed; `cols` is required when there are no rows.
    pub fn from_rows_in(field: &Arc<TowerField>, rows: Vec<Vec<FieldElement>>, cols: Option<usize>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(cols.unwrap_or(0), |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Matrix { field: field.clone(), rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_ints(field: &Arc<TowerField>, rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| field.from_int(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix { field: self.field.clone(), rows: self.cols, cols: self.rows, data }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| if i == j { self[(i, j)].is_one() } else { self[(i, j)].is_zero() }))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Matrix {
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn apply(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn apply_left(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        self.transpose().apply(v)
    }

    pub fn pow(&self, e: u32) -> Matrix {
        let mut acc = Matrix::identity(&self.field, self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
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
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("nonzero pivot");
            for j in 0..m.cols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in 0..m.cols {
                        if !m[(r, j)].is_zero() {
                            let t = &f * &m[(r, j)];
                            m[(i, j)] = &m[(i, j)] - &t;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : A x = 0}` as column vectors.
    pub fn kernel(&self) -> Vec<Vec<FieldElement>> {
        let field = self.field();
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![field.zero(); self.cols];
                v[f] = field.one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -&r[(i, f)];
                }
                v
            })
            .collect()
    }

    /// Basis of `{y : y A = 0}` as row vectors.
    pub fn left_kernel(&self) -> Vec<Vec<FieldElement>> {
        self.transpose().kernel()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let field = self.field();
        let mut aug = Matrix::zeros(&field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = field.one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
            return None;
        }
        let mut out = Matrix::zeros(&field, n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(out)
    }

    /// Some `X` with `self * X = rhs`, if one exists.
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows);
        let field = self.field();
        let mut aug = Matrix::zeros(&field, self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..rhs.cols {
                aug[(i, self.cols + j)] = rhs[(i, j)].clone();
            }
        }
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut out = Matrix::zeros(&field, self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                out[(p, j)] = r[(i, self.cols + j)].clone();
            }
        }
        Some(out)
    }

    pub fn field(&self) -> Arc<TowerField> {
        self.field.clone()
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect()
    }
}

impl Hash for Matrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = FieldElement;
    fn index(&self, (i, j): (usize, usize)) -> &FieldElement {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut FieldElement {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let field = self.field();
        let mut out = Matrix::zeros(&field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

/// Sparse vector: column index to nonzero entry.
pub type SparseRow = BTreeMap<usize, FieldElement>;

/// Incremental row echelon form over sparse rows. Every stored row is
/// monic at its leading column.
#[derive(Debug, Clone)]
pub struct Echelon {
    field: Arc<TowerField>,
    ncols: usize,
    rows: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new(field: &Arc<TowerField>, ncols: usize) -> Self {
        Echelon { field: field.clone(), ncols, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Reduces `row` against the stored pivots.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut cursor = 0usize;
        loop {
            let next = row.range(cursor..).find(|(c, _)| self.rows.contains_key(c)).map(|(c, v)| (*c, v.clone()));
            let Some((c, coef)) = next else {
                return row;
            };
            let pivot = &self.rows[&c];
            for (j, x) in pivot {
                let t = &coef * x;
                match row.get_mut(j) {
                    Some(e) => {
                        *e = &*e - &t;
                        if e.is_zero() {
                            row.remove(j);
                        }
                    }
                    None => {
                        row.insert(*j, -t);
                    }
                }
            }
            cursor = c + 1;
        }
    }

    /// Adds a row; returns true if the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let row = self.reduce(row);
        let Some((&lead, lc)) = row.iter().next() else {
            return false;
        };
        let inv = lc.inv().expect("nonzero");
        let row: SparseRow = row.into_iter().map(|(j, x)| (j, &x * &inv)).collect();
        self.rows.insert(lead, row);
        true
    }

    pub fn contains(&self, row: &SparseRow) -> bool {
        self.reduce(row.clone()).is_empty()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Non-pivot columns, in increasing order; the kernel basis vector for
    /// the `j`-th of them is 1 there and 0 at the other free columns.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.rows.contains_key(c)).collect()
    }

    /// Basis of the null space of the stored rows, as dense vectors.
    pub fn kernel(&self) -> Vec<Vec<FieldElement>> {
        // back-substitute into reduced form, last pivot first
        let mut reduced: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (&p, row) in self.rows.iter().rev() {
            let mut r = row.clone();
            let targets: Vec<usize> = r.keys().filter(|c| **c != p && reduced.contains_key(c)).copied().collect();
            for c in targets {
                let Some(coef) = r.get(&c).cloned() else { continue };
                for (j, x) in &reduced[&c] {
                    let t = &coef * x;
                    match r.get_mut(j) {
                        Some(e) => {
                            *e = &*e - &t;
                            if e.is_zero() {
                                r.remove(j);
                            }
                        }
                        None => {
                            r.insert(*j, -t);
                        }
                    }
                }
            }
            reduced.insert(p, r);
        }
        let free: Vec<usize> = (0..self.ncols).filter(|c| !self.rows.contains_key(c)).collect();
        let mut out = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![self.field.zero(); self.ncols];
            v[f] = self.field.one();
            for (&p, row) in &reduced {
                if let Some(x) = row.get(&f) {
                    v[p] = -x;
                }
            }
            out.push(v);
        }
        out
    }
}

pub fn sparse_from_dense(v: &[FieldElement]) -> SparseRow {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_rank() {
        let f = TowerField::rational();
        let a = Matrix::from_ints(&f, &[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        let s = Matrix::from_ints(&f, &[&[1, 2], &[2, 4]]);
        assert_eq!(s.rank(), 1);
        assert!(s.inverse().is_none());
        let k = s.kernel();
        assert_eq!(k.len(), 1);
        assert!(s.apply(&k[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn sparse_kernel_matches_dense() {
        let f = TowerField::rational();
        let a = Matrix::from_ints(&f, &[&[1, 2, 0, -1], &[0, 1, 1, 1], &[1, 3, 1, 0]]);
        let mut e = Echelon::new(&f, 4);
        for i in 0..3 {
            e.insert(sparse_from_dense(a.row(i)));
        }
        assert_eq!(e.rank(), a.rank());
        let k = e.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.apply(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_linear_system() {
        let f = TowerField::rational();
        let a = Matrix::from_ints(&f, &[&[1, 1], &[0, 2]]);
        let b = Matrix::from_ints(&f, &[&[3], &[4]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(&a * &x, b);
    }
}
