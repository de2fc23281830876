use super::LieAlgebra;
use crate::error::{FormError, Result};
use crate::exterior::{subsets, ExteriorForm, Variance};
use crate::linalg::{Mat, Subspace};
use crate::scalar::{int, Scalar};

/// Curvature of the bi-invariant connection `nabla_v w = [v, w]/2` on a
/// semisimple Lie group, `4 R(v, w) u = [[v, w], u]`.
///
/// `(0,2)` tensors are coordinatized row-major: `b_ij` at `i*n + j`.
/// The restrictions use the bases `E_ac + E_ca` (`a <= c`) of `Sym^2` and
/// `E_ac - E_ca` (`a < c`) of `Λ^2`, with coordinates `b_ac`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureOperator<T> {
    dim: usize,
    lowered: Vec<T>,
    killing: Mat<T>,
    killing_inv: Mat<T>,
    /// `[Rb]_ij = R_ipjq b^{pq}` on all `(0,2)` tensors.
    pub operator: Mat<T>,
    pub sym2: Mat<T>,
    pub lambda2: Mat<T>,
    pub preserves_sym2: bool,
    pub preserves_lambda2: bool,
}

/// Results of the two spectral checks on `Λ^2` with `T = -8R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lambda2Report {
    pub idempotent: bool,
    pub fix_dim: usize,
    pub contraction_dim: usize,
    /// The fixed space of `T` equals `{gamma(v, ., .)}`.
    pub fix_equals_contractions: bool,
}

impl Lambda2Report {
    pub fn holds(&self) -> bool {
        self.idempotent && self.fix_equals_contractions
    }
}

/// `ker(8R - Id)` on `Sym^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sym2Report {
    pub kernel_dim: usize,
    /// The check is only claimed for dimension at least 8.
    pub hypothesis_met: bool,
}

impl Sym2Report {
    pub fn holds(&self) -> bool {
        self.kernel_dim == 0
    }
}

/// Index-raising identities of a semisimple algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CartanIdentities {
    /// `gamma_ipq gamma^{pqj} = -delta_i^j`.
    pub normalization: bool,
    /// `4R_ijkq = C_ij^r gamma_rkq = g^{rs} gamma_ijr gamma_kqs`.
    pub curvature: bool,
}

impl CartanIdentities {
    pub fn holds(&self) -> bool {
        self.normalization && self.curvature
    }
}

fn idx4(n: usize, i: usize, j: usize, k: usize, l: usize) -> usize {
    ((i * n + j) * n + k) * n + l
}

impl<T: Scalar> CurvatureOperator<T> {
    pub(super) fn new(alg: &LieAlgebra<T>) -> Result<Self> {
        let n = alg.dim();
        let g = alg.killing_nondegenerate()?;
        let ginv = g.inverse().ok_or(FormError::NotSemisimple)?;
        let quarter = T::from_ratio(1, 4);
        // R_ijk^q, then lowered with g
        let mut upper = vec![T::zero(); n * n * n * n];
        for i in 0..n {
            for j in 0..n {
                for r in 0..n {
                    let c = alg.c(i, j, r);
                    if c.is_zero() {
                        continue;
                    }
                    for k in 0..n {
                        for q in 0..n {
                            let d = alg.c(r, k, q);
                            if !d.is_zero() {
                                let at = idx4(n, i, j, k, q);
                                upper[at] = upper[at].clone() + quarter.clone() * c.clone() * d.clone();
                            }
                        }
                    }
                }
            }
        }
        let mut lowered = vec![T::zero(); n * n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for q in 0..n {
                        let v = &upper[idx4(n, i, j, k, q)];
                        if v.is_zero() {
                            continue;
                        }
                        for l in 0..n {
                            let at = idx4(n, i, j, k, l);
                            lowered[at] = lowered[at].clone() + v.clone() * g[(q, l)].clone();
                        }
                    }
                }
            }
        }
        let mut operator = Mat::zeros(n * n, n * n);
        for i in 0..n {
            for j in 0..n {
                let x = Mat::from_fn(n, n, |p, q| lowered[idx4(n, i, p, j, q)].clone());
                let y = ginv.mul(&x).mul(&ginv);
                for a in 0..n {
                    for c in 0..n {
                        operator[(i * n + j, a * n + c)] = y[(a, c)].clone();
                    }
                }
            }
        }
        let mut op = CurvatureOperator {
            dim: n,
            lowered,
            killing: g,
            killing_inv: ginv,
            operator,
            sym2: Mat::zeros(0, 0),
            lambda2: Mat::zeros(0, 0),
            preserves_sym2: true,
            preserves_lambda2: true,
        };
        let (sym2, ps) = op.restrict(true);
        let (lambda2, pl) = op.restrict(false);
        op.sym2 = sym2;
        op.lambda2 = lambda2;
        op.preserves_sym2 = ps;
        op.preserves_lambda2 = pl;
        Ok(op)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `R_ijkl`, zero-based.
    pub fn r(&self, i: usize, j: usize, k: usize, l: usize) -> &T {
        &self.lowered[idx4(self.dim, i, j, k, l)]
    }

    pub fn apply(&self, b: &Mat<T>) -> Mat<T> {
        let n = self.dim;
        let v = self.operator.mul_vec(b.entries());
        Mat::from_fn(n, n, |i, j| v[i * n + j].clone())
    }

    fn pairs(&self, symmetric: bool) -> Vec<(usize, usize)> {
        let n = self.dim;
        let mut out = Vec::new();
        for a in 0..n {
            let start = if symmetric { a } else { a + 1 };
            for c in start..n {
                out.push((a, c));
            }
        }
        out
    }

    fn restrict(&self, symmetric: bool) -> (Mat<T>, bool) {
        let n = self.dim;
        let pairs = self.pairs(symmetric);
        let mut cols = Vec::with_capacity(pairs.len());
        let mut preserved = true;
        for &(a, c) in &pairs {
            let mut b = Mat::zeros(n, n);
            b[(a, c)] = T::one();
            if symmetric {
                b[(c, a)] = T::one();
            } else {
                b[(c, a)] = -T::one();
            }
            let rb = self.apply(&b);
            let t = rb.transpose();
            let ok = if symmetric { rb.sub(&t).is_zero() } else { rb.add(&t).is_zero() };
            preserved &= ok;
            cols.push(pairs.iter().map(|&(x, y)| rb[(x, y)].clone()).collect());
        }
        (Mat::from_cols(pairs.len(), &cols), preserved)
    }

    /// `2[R zeta]_ij = R_ijpq zeta^{pq}` on every basis 2-form.
    pub fn two_form_formula_holds(&self) -> bool {
        let n = self.dim;
        let two = int::<T>(2);
        for (a, c) in self.pairs(false) {
            let mut b = Mat::zeros(n, n);
            b[(a, c)] = T::one();
            b[(c, a)] = -T::one();
            let lhs = self.apply(&b).scale(&two);
            let raised = self.killing_inv.mul(&b).mul(&self.killing_inv);
            let rhs = Mat::from_fn(n, n, |i, j| {
                let mut s = T::zero();
                for p in 0..n {
                    for q in 0..n {
                        s = s + self.r(i, j, p, q).clone() * raised[(p, q)].clone();
                    }
                }
                s
            });
            if !lhs.sub(&rhs).is_zero() {
                return false;
            }
        }
        true
    }
}

impl<T: Scalar> LieAlgebra<T> {
    pub fn cartan_identities(&self) -> Result<CartanIdentities> {
        let n = self.dim();
        let curv = self.curvature_operator()?;
        let g = &curv.killing;
        let ginv = &curv.killing_inv;
        let gam = self.cartan_tensor(g);
        let at = |i: usize, j: usize, k: usize| &gam[(i * n + j) * n + k];
        // gamma^{pqj}, raising one slot at a time
        let mut raised = gam.clone();
        for slot in 0..3 {
            let mut next = vec![T::zero(); n * n * n];
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let v = &raised[(i * n + j) * n + k];
                        if v.is_zero() {
                            continue;
                        }
                        for a in 0..n {
                            let (x, y, z, gi) = match slot {
                                0 => (a, j, k, i),
                                1 => (i, a, k, j),
                                _ => (i, j, a, k),
                            };
                            let at = (x * n + y) * n + z;
                            next[at] = next[at].clone() + ginv[(a, gi)].clone() * v.clone();
                        }
                    }
                }
            }
            raised = next;
        }
        let mut normalization = true;
        for i in 0..n {
            for j in 0..n {
                let mut s = T::zero();
                for p in 0..n {
                    for q in 0..n {
                        s = s + at(i, p, q).clone() * raised[(p * n + q) * n + j].clone();
                    }
                }
                let expected = if i == j { -T::one() } else { T::zero() };
                if !(s - expected).is_negligible() {
                    normalization = false;
                }
            }
        }
        let four = int::<T>(4);
        let mut curvature = true;
        'outer: for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for q in 0..n {
                        let lhs = four.clone() * curv.r(i, j, k, q).clone();
                        let mut via_c = T::zero();
                        let mut via_g = T::zero();
                        for r in 0..n {
                            via_c = via_c + self.c(i, j, r).clone() * at(r, k, q).clone();
                            for s in 0..n {
                                via_g = via_g
                                    + ginv[(r, s)].clone() * at(i, j, r).clone() * at(k, q, s).clone();
                            }
                        }
                        if !(lhs.clone() - via_c).is_negligible() || !(lhs - via_g).is_negligible() {
                            curvature = false;
                            break 'outer;
                        }
                    }
                }
            }
        }
        Ok(CartanIdentities {
            normalization,
            curvature,
        })
    }

    /// With `T = -8R` on `Λ^2`: `T^2 = T`, and the fixed space of `T` is
    /// spanned by the contractions `gamma(e_v, ., .)`.
    pub fn lambda2_spectrum_check(&self) -> Result<Lambda2Report> {
        let n = self.dim();
        let curv = self.curvature_operator()?;
        let t = curv.lambda2.scale(&int(-8));
        let idempotent = t.mul(&t).sub(&t).is_zero();
        let m = t.rows();
        let fixed = Subspace::span(m, Variance::Form, &t.sub(&Mat::identity(m)).null_space());
        let gamma = self.cartan_3form()?;
        let contractions: Vec<Vec<T>> = (0..n)
            .map(|v| gamma.contract(&ExteriorForm::e(n, v + 1)).map(|f| f.to_dense()))
            .collect::<Result<_>>()?;
        debug_assert_eq!(subsets(n, 2).len(), m);
        let span = Subspace::span(m, Variance::Form, &contractions);
        Ok(Lambda2Report {
            idempotent,
            fix_dim: fixed.dim(),
            contraction_dim: span.dim(),
            fix_equals_contractions: fixed == span,
        })
    }

    /// `ker(8R - Id)` restricted to `Sym^2`.
    pub fn sym2_spectrum_check(&self) -> Result<Sym2Report> {
        let curv = self.curvature_operator()?;
        let m = curv.sym2.rows();
        let shifted = curv.sym2.scale(&int(8)).sub(&Mat::identity(m));
        Ok(Sym2Report {
            kernel_dim: m - shifted.rank(),
            hypothesis_met: self.dim() >= 8,
        })
    }
}
