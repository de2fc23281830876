//! Lie algebras given by structure constants `[e_i, e_j] = C_ij^k e_k`.

mod catalog;
mod curvature;

pub use catalog::{catalog, CatalogEntry, CATALOG_NAMES};
pub use curvature::{CartanIdentities, CurvatureOperator, Lambda2Report, Sym2Report};

use std::collections::BTreeMap;

use crate::error::{FormError, Result};
use crate::exterior::{ExteriorForm, IndexSet, Variance};
use crate::invariants::{isotropy_subspace, matrices_to_subspace};
use crate::linalg::{Mat, Subspace};
use crate::scalar::Scalar;

/// Symmetry tag of a `(0,2)` tensor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    Symmetric,
    Skew,
    General,
}

/// A `(0,2)` tensor given by its matrix, tagged with its symmetry.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantTensor2<T> {
    pub matrix: Mat<T>,
    pub symmetry: Symmetry,
}

impl<T: Scalar> InvariantTensor2<T> {
    pub fn new(matrix: Mat<T>) -> Self {
        let t = matrix.transpose();
        let symmetry = if matrix.sub(&t).is_zero() {
            Symmetry::Symmetric
        } else if matrix.add(&t).is_zero() {
            Symmetry::Skew
        } else {
            Symmetry::General
        };
        InvariantTensor2 { matrix, symmetry }
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.matrix.det().is_negligible()
    }
}

/// Outcome of [`LieAlgebra::validate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Validation {
    pub jacobi: bool,
    pub semisimple: bool,
}

/// Comparison of the isotropy algebra of the Cartan 3-form with `ad(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropyComparison {
    pub isotropy_dim: usize,
    pub ad_dim: usize,
    pub equal: bool,
}

/// Structure constants stored densely; `C_ij^k` sits at `(i*n + j)*n + k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra<T> {
    dim: usize,
    c: Vec<T>,
}

impl<T: Scalar> LieAlgebra<T> {
    /// The abelian algebra of dimension `n`.
    pub fn abelian(n: usize) -> Self {
        LieAlgebra {
            dim: n,
            c: vec![T::zero(); n * n * n],
        }
    }

    /// From brackets `(i, j, k, c)` meaning `[e_i, e_j] += c e_k`, 1-based.
    /// Entries with `i > j` are stored through antisymmetry.
    pub fn from_brackets(n: usize, brackets: &[(usize, usize, usize, T)]) -> Result<Self> {
        let mut alg = Self::abelian(n);
        for (i, j, k, coeff) in brackets {
            let (i, j, k) = (*i, *j, *k);
            if [i, j, k].iter().any(|&x| x == 0 || x > n) {
                return Err(FormError::Precondition(format!(
                    "bracket index out of range 1..={n}: ({i}, {j}, {k})"
                )));
            }
            if i == j {
                return Err(FormError::Precondition(format!("[e{i}, e{i}] must vanish")));
            }
            let (a, b, v) = if i < j {
                (i - 1, j - 1, coeff.clone())
            } else {
                (j - 1, i - 1, -coeff.clone())
            };
            let idx = alg.index(a, b, k - 1);
            let sum = alg.c[idx].clone() + v;
            alg.set(a, b, k - 1, sum);
        }
        Ok(alg)
    }

    /// The algebra spanned by the given matrices under the commutator.
    pub fn from_matrix_basis(mats: &[Mat<T>]) -> Result<Self> {
        let n = mats.len();
        let cols: Vec<Vec<T>> = mats.iter().map(|m| m.entries().to_vec()).collect();
        let len = cols.first().map_or(0, Vec::len);
        let system = Mat::from_cols(len, &cols);
        if system.rank() != n {
            return Err(FormError::Precondition("matrices are linearly dependent".into()));
        }
        let mut alg = Self::abelian(n);
        for i in 0..n {
            for j in i + 1..n {
                let br = mats[i].commutator(&mats[j]);
                let coords = system.solve(br.entries()).ok_or_else(|| {
                    FormError::Precondition("span is not closed under commutators".into())
                })?;
                for (k, v) in coords.into_iter().enumerate() {
                    alg.set(i, j, k, v);
                }
            }
        }
        Ok(alg)
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    fn set(&mut self, i: usize, j: usize, k: usize, v: T) {
        let a = self.index(i, j, k);
        let b = self.index(j, i, k);
        self.c[b] = -v.clone();
        self.c[a] = v;
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `C_ij^k`, zero-based.
    pub fn c(&self, i: usize, j: usize, k: usize) -> &T {
        &self.c[self.index(i, j, k)]
    }

    /// Nonzero `(i, j, k, C_ij^k)` with `i < j`, 1-based.
    pub fn brackets(&self) -> Vec<(usize, usize, usize, T)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let v = self.c(i, j, k);
                    if !v.is_zero() {
                        out.push((i + 1, j + 1, k + 1, v.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn bracket(&self, u: &[T], v: &[T]) -> Vec<T> {
        let n = self.dim;
        let mut out = vec![T::zero(); n];
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() {
                    continue;
                }
                let uv = u[i].clone() * v[j].clone();
                for k in 0..n {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        out[k] = out[k].clone() + uv.clone() * c.clone();
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad(e_i)`: column `j` holds `[e_i, e_j]`.
    pub fn ad(&self, i: usize) -> Mat<T> {
        let n = self.dim;
        Mat::from_fn(n, n, |k, j| self.c(i, j, k).clone())
    }

    pub fn jacobi_holds(&self) -> bool {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    // sum_r C_ij^r C_rk^s + C_jk^r C_ri^s + C_ki^r C_rj^s = 0
                    for s in 0..n {
                        let mut total = T::zero();
                        for r in 0..n {
                            total = total
                                + self.c(i, j, r).clone() * self.c(r, k, s).clone()
                                + self.c(j, k, r).clone() * self.c(r, i, s).clone()
                                + self.c(k, i, r).clone() * self.c(r, j, s).clone();
                        }
                        if !total.is_negligible() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn validate(&self) -> Validation {
        Validation {
            jacobi: self.jacobi_holds(),
            semisimple: self.killing_form().is_nondegenerate(),
        }
    }

    /// `g_ij = C_ir^s C_js^r = tr(ad e_i ad e_j)`.
    pub fn killing_form(&self) -> InvariantTensor2<T> {
        let n = self.dim;
        let ads: Vec<Mat<T>> = (0..n).map(|i| self.ad(i)).collect();
        let g = Mat::from_fn(n, n, |i, j| ads[i].mul(&ads[j]).trace());
        InvariantTensor2::new(g)
    }

    /// Killing form, failing unless it is nondegenerate.
    pub(crate) fn killing_nondegenerate(&self) -> Result<Mat<T>> {
        let g = self.killing_form();
        if g.is_nondegenerate() {
            Ok(g.matrix)
        } else {
            Err(FormError::NotSemisimple)
        }
    }

    /// Dense `gamma_ijk = C_ij^r g_rk`, indexed `(i*n + j)*n + k`.
    pub(crate) fn cartan_tensor(&self, g: &Mat<T>) -> Vec<T> {
        let n = self.dim;
        let mut out = vec![T::zero(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                for r in 0..n {
                    let c = self.c(i, j, r);
                    if c.is_zero() {
                        continue;
                    }
                    for k in 0..n {
                        let idx = (i * n + j) * n + k;
                        out[idx] = out[idx].clone() + c.clone() * g[(r, k)].clone();
                    }
                }
            }
        }
        out
    }

    /// The Cartan 3-form `gamma(u, v, w) = g([u, v], w)`.
    pub fn cartan_3form(&self) -> Result<ExteriorForm<T>> {
        let n = self.dim;
        let g = self.killing_form().matrix;
        let gam = self.cartan_tensor(&g);
        let at = |i: usize, j: usize, k: usize| &gam[(i * n + j) * n + k];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !(at(i, j, k).clone() + at(i, k, j).clone()).is_negligible() {
                        return Err(FormError::Precondition(
                            "Cartan tensor is not totally skew; structure constants are invalid".into(),
                        ));
                    }
                }
            }
        }
        let mut terms = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let v = at(i, j, k);
                    if !v.is_zero() {
                        terms.push((IndexSet::from_zero_based(&[i, j, k]).expect("increasing"), v.clone()));
                    }
                }
            }
        }
        ExteriorForm::from_terms(n, 3, Variance::Form, terms)
    }

    /// `d xi^k = -sum_{i<j} C_ij^k xi^i ^ xi^j`.
    pub fn d_basis(&self, k: usize) -> ExteriorForm<T> {
        let n = self.dim;
        let mut out = ExteriorForm::zero(n, 2, Variance::Form);
        for i in 0..n {
            for j in i + 1..n {
                let c = self.c(i, j, k);
                if !c.is_zero() {
                    out = out + ExteriorForm::monomial(n, Variance::Form, &[i + 1, j + 1], -c.clone());
                }
            }
        }
        out
    }

    fn d_unchecked(&self, m: &ExteriorForm<T>, dxi: &[ExteriorForm<T>]) -> Result<ExteriorForm<T>> {
        let n = self.dim;
        let p = m.degree();
        let mut out = ExteriorForm::zero(n, p + 1, Variance::Form);
        if p == 0 {
            return Ok(out);
        }
        for (set, c) in m.terms() {
            let idx = set.to_vec();
            for (a, &i) in idx.iter().enumerate() {
                if dxi[i].is_zero() {
                    continue;
                }
                let left = factor(n, &idx[..a]);
                let right = factor(n, &idx[a + 1..]);
                let term = left.wedge(&dxi[i])?.wedge(&right)?;
                let sign = if a % 2 == 0 { c.clone() } else { -c.clone() };
                out = out + term.scale(&sign);
            }
        }
        Ok(out)
    }

    /// Exterior derivative of the left-invariant form `m`, extended from
    /// `d xi^k` as a derivation of degree one. Also checks `d(dm) = 0`,
    /// which fails exactly when the brackets violate Jacobi on `m`'s terms.
    /// Top-degree forms have no derivative to return and are rejected.
    pub fn ce_differential(&self, m: &ExteriorForm<T>) -> Result<ExteriorForm<T>> {
        if m.variance() != Variance::Form {
            return Err(FormError::VarianceMismatch("exterior derivative needs a form".into()));
        }
        if m.dim() != self.dim {
            return Err(FormError::DimensionMismatch {
                expected: self.dim,
                found: m.dim(),
            });
        }
        if m.degree() >= self.dim {
            return Err(FormError::Precondition(format!(
                "no {}-forms in dimension {}",
                m.degree() + 1,
                self.dim
            )));
        }
        let dxi: Vec<ExteriorForm<T>> = (0..self.dim).map(|k| self.d_basis(k)).collect();
        let dm = self.d_unchecked(m, &dxi)?;
        if dm.degree() < self.dim && !self.d_unchecked(&dm, &dxi)?.is_negligible() {
            return Err(FormError::Precondition(
                "d^2 does not vanish; the brackets violate the Jacobi identity".into(),
            ));
        }
        Ok(dm)
    }

    /// `N(e_i, e_j) = J[Je_i, e_j] + J[e_i, Je_j] - [Je_i, Je_j] + [e_i, e_j]`
    /// for `i < j` (zero-based), listing only the nonzero values.
    pub fn nijenhuis(&self, j: &Mat<T>) -> Result<BTreeMap<(usize, usize), Vec<T>>> {
        let n = self.dim;
        if !j.is_square() || j.rows() != n {
            return Err(FormError::DimensionMismatch {
                expected: n,
                found: j.rows(),
            });
        }
        let basis: Vec<Vec<T>> = (0..n).map(|i| crate::linalg::unit(n, i)).collect();
        let images: Vec<Vec<T>> = (0..n).map(|i| j.col(i)).collect();
        let mut out = BTreeMap::new();
        for a in 0..n {
            for b in a + 1..n {
                let t1 = j.mul_vec(&self.bracket(&images[a], &basis[b]));
                let t2 = j.mul_vec(&self.bracket(&basis[a], &images[b]));
                let t3 = self.bracket(&images[a], &images[b]);
                let t4 = self.bracket(&basis[a], &basis[b]);
                let v: Vec<T> = (0..n)
                    .map(|k| t1[k].clone() + t2[k].clone() - t3[k].clone() + t4[k].clone())
                    .collect();
                if v.iter().any(|x| !x.is_negligible()) {
                    out.insert((a, b), v);
                }
            }
        }
        Ok(out)
    }

    /// Whether `[s, s'] ∈ S` for all basis vectors of `S`.
    pub fn bracket_closed(&self, s: &Subspace<T>) -> Result<bool> {
        if s.ambient() != self.dim {
            return Err(FormError::DimensionMismatch {
                expected: self.dim,
                found: s.ambient(),
            });
        }
        let basis = s.basis_vectors();
        for (a, u) in basis.iter().enumerate() {
            for v in &basis[a + 1..] {
                if !s.contains(&self.bracket(u, v)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `self ⊕ other`, with `other`'s basis placed after `self`'s.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (n1, n2) = (self.dim, other.dim);
        let mut out = Self::abelian(n1 + n2);
        for i in 0..n1 {
            for j in i + 1..n1 {
                for k in 0..n1 {
                    out.set(i, j, k, self.c(i, j, k).clone());
                }
            }
        }
        for i in 0..n2 {
            for j in i + 1..n2 {
                for k in 0..n2 {
                    out.set(n1 + i, n1 + j, n1 + k, other.c(i, j, k).clone());
                }
            }
        }
        out
    }

    /// The span of `ad(e_1), ..., ad(e_n)` inside `gl(n)`.
    pub fn ad_image(&self) -> Subspace<T> {
        let ads: Vec<Mat<T>> = (0..self.dim).map(|i| self.ad(i)).collect();
        matrices_to_subspace(self.dim, &ads)
    }

    /// Compares the isotropy algebra of the Cartan 3-form with `ad(g)`.
    pub fn isotropy_equals_ad(&self) -> Result<IsotropyComparison> {
        self.killing_nondegenerate()?;
        let gamma = self.cartan_3form()?;
        let iso = isotropy_subspace(&gamma);
        let ad = self.ad_image();
        Ok(IsotropyComparison {
            isotropy_dim: iso.dim(),
            ad_dim: ad.dim(),
            equal: iso == ad,
        })
    }

    pub fn curvature_operator(&self) -> Result<CurvatureOperator<T>> {
        CurvatureOperator::new(self)
    }
}

/// `xi^{i_1} ^ ... ^ xi^{i_k}` for increasing zero-based indices.
fn factor<T: Scalar>(n: usize, idx: &[usize]) -> ExteriorForm<T> {
    let one_based: Vec<usize> = idx.iter().map(|i| i + 1).collect();
    ExteriorForm::monomial(n, Variance::Form, &one_based, T::one())
}
