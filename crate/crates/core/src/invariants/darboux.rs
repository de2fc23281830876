use crate::error::{FormError, Result};
use crate::exterior::{ExteriorForm, Variance};
use crate::linalg::{unit, Mat};
use crate::scalar::Scalar;

/// A basis `u_1, w_1, ..., u_r, w_r, k_1, ...` (the columns of `basis`) in
/// which the 2-form reads `sum_i xi^{2i-1} ^ xi^{2i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Darboux<T> {
    pub basis: Mat<T>,
    pub half_rank: usize,
}

/// Skew Gram-Schmidt on the standard basis: the first pair `(a, b)` in
/// lexicographic order with `s(z_a, z_b) != 0` becomes the next hyperbolic
/// pair and the remaining vectors are projected off it.
pub fn linear_darboux<T: Scalar>(s: &ExteriorForm<T>) -> Result<Darboux<T>> {
    if s.variance() != Variance::Form || s.degree() != 2 {
        return Err(FormError::Precondition("Darboux basis needs a 2-form".into()));
    }
    let n = s.dim();
    let gram = s.skew_matrix()?;
    let pair = |a: &[T], b: &[T]| -> T { crate::linalg::dot(a, &gram.mul_vec(b)) };
    let mut pool: Vec<Vec<T>> = (0..n).map(|i| unit(n, i)).collect();
    let mut cols = Vec::new();
    'outer: loop {
        for a in 0..pool.len() {
            for b in a + 1..pool.len() {
                let v = pair(&pool[a], &pool[b]);
                if v.is_negligible() {
                    continue;
                }
                let u = pool[a].clone();
                let w: Vec<T> = pool[b].iter().map(|x| x.clone() / v.clone()).collect();
                pool.remove(b);
                pool.remove(a);
                for z in pool.iter_mut() {
                    let zw = pair(z, &w);
                    let zu = pair(z, &u);
                    for k in 0..n {
                        z[k] = z[k].clone() - zw.clone() * u[k].clone() + zu.clone() * w[k].clone();
                    }
                }
                cols.push(u);
                cols.push(w);
                continue 'outer;
            }
        }
        break;
    }
    let half_rank = cols.len() / 2;
    cols.extend(pool);
    Ok(Darboux {
        basis: Mat::from_cols(n, &cols),
        half_rank,
    })
}

/// `sum_{i <= r} xi^{2i-1} ^ xi^{2i}` in dimension `n`.
pub fn standard_symplectic<T: Scalar>(n: usize, r: usize) -> ExteriorForm<T> {
    (1..=r).fold(ExteriorForm::zero(n, 2, Variance::Form), |acc, i| {
        acc + ExteriorForm::monomial(n, Variance::Form, &[2 * i - 1, 2 * i], T::one())
    })
}
