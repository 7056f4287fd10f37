//! Small dense matrices over [`Scalar`] and exact elimination.
//!
//! Elimination runs on sparse rows internally so the same engine serves the
//! large but very sparse constraint systems built by the Weyl module. Bases
//! of kernels and solution spaces are returned in reduced row echelon form,
//! which is unique per subspace.

use std::collections::BTreeMap;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::field::Scalar;

pub type Vector = Vec<Scalar>;

pub fn zero_vector(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn dot(x: &[Scalar], y: &[Scalar]) -> Scalar {
    debug_assert_eq!(x.len(), y.len());
    x.iter()
        .zip(y)
        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
        .map(|(a, b)| a * b)
        .sum()
}

pub fn add_vectors(x: &[Scalar], y: &[Scalar]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn sub_vectors(x: &[Scalar], y: &[Scalar]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn scale_vector(c: &Scalar, x: &[Scalar]) -> Vector {
    x.iter().map(|a| c * a).collect()
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(Self {
            rows: nrows,
            cols,
            data,
        })
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: c.len(),
                });
            }
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
        .expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vector> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| c * a).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&Scalar::from_int(-1))
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Matrix) -> Result<Matrix> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    /// Entries in row-major order.
    pub fn flatten(&self) -> Vector {
        self.data.clone()
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vector) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Singular);
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero()).ok_or(Error::Singular)?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p = a[(col, col)].inv()?;
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                a.sub_row_multiple(r, col, &f);
                inv.sub_row_multiple(r, col, &f);
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn scale_row(&mut self, i: usize, f: &Scalar) {
        for c in 0..self.cols {
            let v = &self[(i, c)] * f;
            self[(i, c)] = v;
        }
    }

    /// row_i -= f * row_j
    fn sub_row_multiple(&mut self, i: usize, j: usize, f: &Scalar) {
        for c in 0..self.cols {
            let src = &self[(j, c)];
            if src.is_zero() {
                continue;
            }
            let v = &self[(i, c)] - &(f * src);
            self[(i, c)] = v;
        }
    }

    pub fn to_literal_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(Scalar::to_literal).collect())
            .collect()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

/// Sparse row: strictly increasing column indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseRow(Vec<(usize, Scalar)>);

impl SparseRow {
    pub fn from_dense(v: &[Scalar]) -> Self {
        Self(
            v.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        )
    }

    /// Builds a row from possibly repeated, unordered entries.
    pub fn from_entries(entries: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (c, v) in entries {
            *acc.entry(c).or_default() += &v;
        }
        Self(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.0
    }

    pub fn lead(&self) -> Option<&(usize, Scalar)> {
        self.0.first()
    }

    pub fn get(&self, col: usize) -> Option<&Scalar> {
        self.0
            .binary_search_by_key(&col, |(c, _)| *c)
            .ok()
            .map(|i| &self.0[i].1)
    }

    pub fn to_dense(&self, n: usize) -> Vector {
        let mut v = zero_vector(n);
        for (c, x) in &self.0 {
            v[*c] = x.clone();
        }
        v
    }

    fn scaled(&self, f: &Scalar) -> Self {
        Self(self.0.iter().map(|(c, x)| (*c, f * x)).collect())
    }

    /// `self - f * other`
    fn axpy(&self, f: &Scalar, other: &SparseRow) -> SparseRow {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let ci = self.0.get(i).map(|e| e.0);
            let cj = other.0.get(j).map(|e| e.0);
            match (ci, cj) {
                (Some(a), Some(b)) if a == b => {
                    let v = &self.0[i].1 - &(f * &other.0[j].1);
                    if !v.is_zero() {
                        out.push((a, v));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a < b => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                (Some(_), None) => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                (_, Some(b)) => {
                    out.push((b, -(f * &other.0[j].1)));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        SparseRow(out)
    }
}

/// Incremental row reduction. Rows are inserted one at a time and reduced
/// on their leading entries; [`RowReducer::into_rref`] finishes the back
/// substitution. Pivots are the first nonzero column of each row.
#[derive(Clone, Debug)]
pub struct RowReducer {
    ncols: usize,
    rows: Vec<SparseRow>,
    pivot_row: BTreeMap<usize, usize>,
}

impl RowReducer {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            rows: Vec::new(),
            pivot_row: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the current pivots. Returns the remainder, which
    /// is empty exactly when `row` lies in the span of the inserted rows.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        while let Some((c, x)) = row.lead().cloned() {
            match self.pivot_row.get(&c) {
                Some(&r) => row = row.axpy(&x, &self.rows[r]),
                None => break,
            }
        }
        row
    }

    /// Inserts a row; returns whether it increased the rank.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        debug_assert!(row.0.iter().all(|(c, _)| *c < self.ncols));
        let row = self.reduce(row);
        let Some((c, x)) = row.lead().cloned() else {
            return false;
        };
        let normalized = row.scaled(&x.inv().expect("nonzero lead"));
        self.pivot_row.insert(c, self.rows.len());
        self.rows.push(normalized);
        true
    }

    pub fn insert_dense(&mut self, row: &[Scalar]) -> bool {
        self.insert(SparseRow::from_dense(row))
    }

    pub fn contains(&self, row: &[Scalar]) -> bool {
        self.reduce(SparseRow::from_dense(row)).is_empty()
    }

    /// Reduced row echelon form, rows sorted by pivot column.
    pub fn into_rref(self) -> Rref {
        let RowReducer {
            ncols,
            mut rows,
            pivot_row,
        } = self;
        let pivots: Vec<usize> = pivot_row.keys().copied().collect();
        let mut done: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for &p in pivots.iter().rev() {
            let mut row = std::mem::take(&mut rows[pivot_row[&p]]);
            let hits: Vec<(usize, Scalar)> = row
                .0
                .iter()
                .skip(1)
                .filter(|(c, _)| done.contains_key(c))
                .cloned()
                .collect();
            for (c, x) in hits {
                row = row.axpy(&x, &done[&c]);
            }
            done.insert(p, row);
        }
        Rref {
            ncols,
            rows: done.into_values().collect(),
        }
    }
}

/// Reduced row echelon form of a row space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    ncols: usize,
    rows: Vec<SparseRow>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.lead().expect("nonempty").0).collect()
    }

    pub fn dense_rows(&self) -> Vec<Vector> {
        self.rows.iter().map(|r| r.to_dense(self.ncols)).collect()
    }

    /// Basis of `{x : row . x = 0 for every row}`, in canonical form.
    pub fn null_space(&self) -> Vec<Vector> {
        let pivots = self.pivots();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.ncols).filter(|&c| !is_pivot[c]) {
            let mut v = zero_vector(self.ncols);
            v[free] = Scalar::one();
            for (row, &p) in self.rows.iter().zip(&pivots) {
                if let Some(x) = row.get(free) {
                    v[p] = -x;
                }
            }
            basis.push(v);
        }
        canonical_basis(self.ncols, basis)
    }
}

pub fn rref_of_rows(ncols: usize, rows: impl IntoIterator<Item = SparseRow>) -> Rref {
    let mut r = RowReducer::new(ncols);
    for row in rows {
        r.insert(row);
    }
    r.into_rref()
}

/// Canonical basis (reduced row echelon form) of the span of `vectors`.
pub fn canonical_basis(n: usize, vectors: Vec<Vector>) -> Vec<Vector> {
    rref_of_rows(n, vectors.iter().map(|v| SparseRow::from_dense(v))).dense_rows()
}

pub fn rref(m: &Matrix) -> Rref {
    rref_of_rows(m.cols(), (0..m.rows()).map(|i| SparseRow::from_dense(m.row(i))))
}

/// Basis of the null space of `m`; empty when `m` is injective.
pub fn kernel(m: &Matrix) -> Vec<Vector> {
    rref(m).null_space()
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).rank()
}

pub fn rank_of_vectors(n: usize, vectors: &[Vector]) -> usize {
    rref_of_rows(n, vectors.iter().map(|v| SparseRow::from_dense(v))).rank()
}

/// Affine subspace of `ambient`-dimensional space, or the empty set.
///
/// Stored canonically: directions in reduced row echelon form and the base
/// point reduced against them, so equal sets compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineSubspace {
    ambient: usize,
    base: Option<Vector>,
    directions: Vec<Vector>,
}

impl AffineSubspace {
    pub fn empty(ambient: usize) -> Self {
        Self {
            ambient,
            base: None,
            directions: Vec::new(),
        }
    }

    pub fn point(p: Vector) -> Self {
        Self {
            ambient: p.len(),
            base: Some(p),
            directions: Vec::new(),
        }
    }

    pub fn whole(ambient: usize) -> Self {
        Self::new(
            zero_vector(ambient),
            (0..ambient).map(|i| unit_vector(ambient, i)).collect(),
        )
        .expect("consistent dimensions")
    }

    /// `base + span(directions)`; the directions may be dependent.
    pub fn new(base: Vector, directions: Vec<Vector>) -> Result<Self> {
        let ambient = base.len();
        if let Some(d) = directions.iter().find(|d| d.len() != ambient) {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                found: d.len(),
            });
        }
        let rr = rref_of_rows(ambient, directions.iter().map(|v| SparseRow::from_dense(v)));
        let base = reduce_dense(&rr, &base);
        Ok(Self {
            ambient,
            base: Some(base),
            directions: rr.dense_rows(),
        })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_none()
    }

    /// Dimension, or `None` for the empty set.
    pub fn dim(&self) -> Option<usize> {
        self.base.as_ref().map(|_| self.directions.len())
    }

    pub fn base_point(&self) -> Option<&Vector> {
        self.base.as_ref()
    }

    pub fn directions(&self) -> &[Vector] {
        &self.directions
    }

    /// The base point plus each single direction; together they determine
    /// the set affinely.
    pub fn sample_points(&self) -> Vec<Vector> {
        let Some(b) = &self.base else {
            return Vec::new();
        };
        std::iter::once(b.clone())
            .chain(self.directions.iter().map(|d| add_vectors(b, d)))
            .collect()
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        let Some(b) = &self.base else {
            return false;
        };
        if x.len() != self.ambient {
            return false;
        }
        let diff = sub_vectors(x, b);
        let rr = rref_of_rows(
            self.ambient,
            self.directions.iter().map(|v| SparseRow::from_dense(v)),
        );
        rr_reduce_is_zero(&rr, &diff)
    }

    /// Implicit equations `(A, c)` with `self = {x : A x = c}`.
    pub fn equations(&self) -> (Matrix, Vector) {
        let n = self.ambient;
        let Some(b) = &self.base else {
            // 0 . x = 1
            return (Matrix::zeros(1, n), vec![Scalar::one()]);
        };
        let normals = if self.directions.is_empty() {
            (0..n).map(|i| unit_vector(n, i)).collect()
        } else {
            kernel(&Matrix::from_rows(self.directions.clone()).expect("uniform"))
        };
        if normals.is_empty() {
            return (Matrix::zeros(0, n), Vec::new());
        }
        let rhs = normals.iter().map(|v| dot(v, b)).collect();
        (Matrix::from_rows(normals).expect("uniform"), rhs)
    }

    pub fn intersect(&self, other: &AffineSubspace) -> Result<AffineSubspace> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        if self.is_empty() || other.is_empty() {
            return Ok(Self::empty(self.ambient));
        }
        let (a1, c1) = self.equations();
        let (a2, c2) = other.equations();
        let mut rows = a1.row_vectors();
        rows.extend(a2.row_vectors());
        let mut rhs = c1;
        rhs.extend(c2);
        if rows.is_empty() {
            return Ok(Self::whole(self.ambient));
        }
        solve_affine(&Matrix::from_rows(rows)?, &rhs)
    }

    /// Image under an affine map given by its values on [`sample_points`].
    /// Only valid for maps that are affine.
    pub fn map_affine(&self, f: impl Fn(&[Scalar]) -> Result<Vector>) -> Result<AffineSubspace> {
        let Some(b) = &self.base else {
            return Ok(self.clone());
        };
        let fb = f(b)?;
        let dirs = self
            .directions
            .iter()
            .map(|d| Ok(sub_vectors(&f(&add_vectors(b, d))?, &fb)))
            .collect::<Result<Vec<_>>>()?;
        AffineSubspace::new(fb, dirs)
    }
}

fn reduce_dense(rr: &Rref, v: &[Scalar]) -> Vector {
    let mut out = v.to_vec();
    for row in rr.rows() {
        let (p, _) = row.lead().expect("nonempty");
        let f = out[*p].clone();
        if f.is_zero() {
            continue;
        }
        for (c, x) in row.entries() {
            out[*c] = &out[*c] - &(&f * x);
        }
    }
    out
}

fn rr_reduce_is_zero(rr: &Rref, v: &[Scalar]) -> bool {
    is_zero_vector(&reduce_dense(rr, v))
}

/// Full solution set of `m x = rhs`.
pub fn solve_affine(m: &Matrix, rhs: &[Scalar]) -> Result<AffineSubspace> {
    if m.rows() != rhs.len() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: rhs.len(),
        });
    }
    let n = m.cols();
    let augmented = (0..m.rows()).map(|i| {
        let mut r = m.row(i).to_vec();
        r.push(rhs[i].clone());
        SparseRow::from_dense(&r)
    });
    let rr = rref_of_rows(n + 1, augmented);
    let mut base = zero_vector(n);
    for row in rr.rows() {
        let (p, _) = row.lead().expect("nonempty");
        if *p == n {
            return Ok(AffineSubspace::empty(n));
        }
        if let Some(x) = row.get(n) {
            base[*p] = x.clone();
        }
    }
    AffineSubspace::new(base, kernel(m))
}
