//! Dense matrices and canonical subspaces over a [`Scalar`] field.
//!
//! Elimination is plain Gauss-Jordan. Exact fields pivot on the first
//! nonzero entry so that reduced echelon forms are canonical; floating
//! fields pivot on the largest entry and treat negligible values as zero.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::exterior::Variance;
use crate::scalar::Scalar;

/// Row-major dense matrix. Also used for rectangular linear maps: a map
/// from an `m`-dimensional space to an `n`-dimensional one is an `n x m`
/// matrix acting on column vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    /// Build from rows. Panics when the rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        Mat {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Build from columns, each of length `rows`.
    pub fn from_cols(rows: usize, cols: &[Vec<T>]) -> Self {
        Self::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    /// Integer entries, convenient for fixtures.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| T::from_ratio(x, 1)).collect())
                .collect(),
        )
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

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
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
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| dot(&self.data[i * self.cols..(i + 1) * self.cols], v))
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() + other[(i, j)].clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() - other[(i, j)].clone()
        })
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    /// `[self, other] = self*other - other*self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_negligible())
    }

    /// Entrywise comparison using the field's zero test.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.sub(other).is_zero()
    }

    /// Largest absolute entry, as `f64`.
    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .map(|x| x.to_f64_lossy().abs())
            .fold(0.0, f64::max)
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = m.pick_pivot(r, c) else {
                for i in r..m.rows {
                    m[(i, c)] = T::zero();
                }
                continue;
            };
            m.swap_rows(r, p);
            let inv = T::one() / m[(r, c)].clone();
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].clone() * inv.clone();
            }
            m[(r, c)] = T::one();
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if !m[(r, j)].is_zero() {
                        m[(i, j)] = m[(i, j)].clone() - f.clone() * m[(r, j)].clone();
                    }
                }
                m[(i, c)] = T::zero();
            }
            pivots.push(c);
            r += 1;
        }
        if !T::EXACT {
            for x in m.data.iter_mut() {
                if x.is_negligible() {
                    *x = T::zero();
                }
            }
        }
        (m, pivots)
    }

    fn pick_pivot(&self, r: usize, c: usize) -> Option<usize> {
        if T::EXACT {
            (r..self.rows).find(|&i| !self[(i, c)].is_zero())
        } else {
            let best = (r..self.rows).max_by(|&a, &b| {
                self[(a, c)]
                    .abs()
                    .partial_cmp(&self[(b, c)].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })?;
            (!self[(best, c)].is_negligible()).then_some(best)
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column, with a
    /// one in the free position.
    pub fn null_space(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut pi = 0;
        for free in 0..self.cols {
            if pi < pivots.len() && pivots[pi] == free {
                pi += 1;
                continue;
            }
            let mut v = vec![T::zero(); self.cols];
            v[free] = T::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[(row, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = T::one();
        for c in 0..n {
            let Some(p) = m.pick_pivot(c, c) else {
                return T::zero();
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det = det * piv.clone();
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone() / piv.clone();
                for j in c..n {
                    m[(i, j)] = m[(i, j)].clone() - f.clone() * m[(c, j)].clone();
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                T::one()
            } else {
                T::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| r[(i, j + n)].clone()))
    }

    /// Some solution of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(self.rows, b.len());
        let aug = Self::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![T::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r[(row, self.cols)].clone();
        }
        Some(x)
    }
}

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> fmt::Display for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn unit<T: Scalar>(n: usize, i: usize) -> Vec<T> {
    let mut v = vec![T::zero(); n];
    v[i] = T::one();
    v
}

/// A linear subspace of `V` (`Variance::Vector`) or of `V*`
/// (`Variance::Form`), stored as a reduced row echelon basis.
///
/// For exact fields two equal subspaces have identical representations,
/// so the derived equality is subspace equality.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<T> {
    ambient: usize,
    variance: Variance,
    basis: Mat<T>,
}

impl<T: Scalar> Subspace<T> {
    pub fn span(ambient: usize, variance: Variance, vectors: &[Vec<T>]) -> Self {
        let m = Mat::from_fn(vectors.len(), ambient, |i, j| vectors[i][j].clone());
        Self::from_matrix(variance, &m)
    }

    /// Row space of `m`.
    pub fn from_matrix(variance: Variance, m: &Mat<T>) -> Self {
        let (r, pivots) = m.rref();
        let basis = Mat::from_fn(pivots.len(), m.cols(), |i, j| r[(i, j)].clone());
        Subspace {
            ambient: m.cols(),
            variance,
            basis,
        }
    }

    pub fn full(ambient: usize, variance: Variance) -> Self {
        Subspace {
            ambient,
            variance,
            basis: Mat::identity(ambient),
        }
    }

    pub fn zero(ambient: usize, variance: Variance) -> Self {
        Subspace {
            ambient,
            variance,
            basis: Mat::zeros(0, ambient),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Echelon basis as rows.
    pub fn basis(&self) -> &Mat<T> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<T>> {
        self.basis.row_vectors()
    }

    /// Pivot columns of the echelon basis.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|i| {
                (0..self.ambient)
                    .find(|&j| !self.basis[(i, j)].is_zero())
                    .expect("echelon rows are nonzero")
            })
            .collect()
    }

    pub fn contains(&self, v: &[T]) -> bool {
        let mut rows = self.basis_vectors();
        rows.push(v.to_vec());
        Mat::from_rows(rows).rank() == self.dim()
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        self.variance == other.variance && other.basis_vectors().iter().all(|v| self.contains(v))
    }

    pub fn same_as(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.contains_subspace(other)
    }

    /// Annihilator in the dual space.
    pub fn polar(&self) -> Self {
        let null = if self.dim() == 0 {
            (0..self.ambient).map(|i| unit(self.ambient, i)).collect()
        } else {
            self.basis.null_space()
        };
        Self::span(self.ambient, self.variance.dual(), &null)
    }

    pub fn sum(&self, other: &Self) -> Self {
        assert_eq!(self.variance, other.variance, "sum of subspaces of different spaces");
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        Self::span(self.ambient, self.variance, &rows)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.polar().sum(&other.polar()).polar()
    }

    /// Extend the echelon basis by standard basis vectors, first index
    /// first, to a basis of the ambient space.
    pub fn complete_with_standard(&self) -> Vec<Vec<T>> {
        let pivots = self.pivots();
        let mut out = self.basis_vectors();
        for j in 0..self.ambient {
            if !pivots.contains(&j) {
                out.push(unit(self.ambient, j));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::Q;
    use num_traits::Zero;

    #[test]
    fn inverse_and_det() {
        let m: Mat<Q> = Mat::from_ints(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.det(), rat(18, 1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(3));
        let sing: Mat<Q> = Mat::from_ints(&[&[1, 2], &[2, 4]]);
        assert!(sing.inverse().is_none());
        assert_eq!(sing.det(), rat(0, 1));
    }

    #[test]
    fn null_space_is_annihilated() {
        let m: Mat<Q> = Mat::from_ints(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let ns = m.null_space();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn subspace_canonical() {
        let a = Subspace::span(3, Variance::Vector, &[vec![rat(1, 1), rat(1, 1), rat(0, 1)]]);
        let b = Subspace::span(3, Variance::Vector, &[vec![rat(-2, 1), rat(-2, 1), rat(0, 1)]]);
        assert_eq!(a, b);
        let p = a.polar();
        assert_eq!(p.dim(), 2);
        assert_eq!(p.variance(), Variance::Form);
        assert_eq!(p.polar(), a);
    }

    #[test]
    fn intersection_of_planes() {
        let a = Subspace::span(3, Variance::Vector, &[vec![rat(1, 1), rat(0, 1), rat(0, 1)], vec![rat(0, 1), rat(1, 1), rat(0, 1)]]);
        let b = Subspace::span(3, Variance::Vector, &[vec![rat(0, 1), rat(1, 1), rat(0, 1)], vec![rat(0, 1), rat(0, 1), rat(1, 1)]]);
        let c = a.intersection(&b);
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&[rat(0, 1), rat(5, 1), rat(0, 1)]));
    }

    #[test]
    fn float_rref_tolerates_noise() {
        let m = Mat::from_rows(vec![vec![1.0, 2.0], vec![2.0, 4.0 + 1e-13]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m: Mat<Q> = Mat::from_ints(&[&[1, 1], &[1, 1]]);
        assert!(m.solve(&[rat(1, 1), rat(2, 1)]).is_none());
        let x = m.solve(&[rat(3, 1), rat(3, 1)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![rat(3, 1), rat(3, 1)]);
    }
}
