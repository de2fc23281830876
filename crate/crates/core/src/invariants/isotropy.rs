use crate::error::{FormError, Result};
use crate::exterior::{ExteriorForm, Variance};
use crate::linalg::{Mat, Subspace};
use crate::scalar::Scalar;

/// Endomorphisms as points of `T^{n^2}`, coordinates `A_ij` at `i*n + j`.
pub fn matrices_to_subspace<T: Scalar>(n: usize, mats: &[Mat<T>]) -> Subspace<T> {
    let rows: Vec<Vec<T>> = mats.iter().map(|a| a.entries().to_vec()).collect();
    Subspace::span(n * n, Variance::Vector, &rows)
}

fn subspace_to_matrices<T: Scalar>(n: usize, s: &Subspace<T>) -> Vec<Mat<T>> {
    s.basis_vectors()
        .into_iter()
        .map(|v| Mat::from_fn(n, n, |i, j| v[i * n + j].clone()))
        .collect()
}

/// The isotropy algebra `{A : A m = 0}` of `m` under the derivation
/// action, as a canonical subspace of `gl(V)`.
pub fn isotropy_subspace<T: Scalar>(m: &ExteriorForm<T>) -> Subspace<T> {
    let n = m.dim();
    let mut columns = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut e = Mat::zeros(n, n);
            e[(i, j)] = T::one();
            let image = m.derivation_action(&e).expect("square matrix of matching size");
            columns.push(image.to_dense());
        }
    }
    let rows = columns.first().map_or(0, Vec::len);
    let system = Mat::from_cols(rows, &columns);
    if rows == 0 {
        return Subspace::full(n * n, Variance::Vector);
    }
    Subspace::span(n * n, Variance::Vector, &system.null_space())
}

/// Echelon basis of the isotropy algebra, checked to be closed under
/// commutators.
pub fn isotropy_algebra<T: Scalar>(m: &ExteriorForm<T>) -> Result<Vec<Mat<T>>> {
    let n = m.dim();
    let sub = isotropy_subspace(m);
    let basis = subspace_to_matrices(n, &sub);
    for (a, x) in basis.iter().enumerate() {
        for y in &basis[a + 1..] {
            if !sub.contains(x.commutator(y).entries()) {
                return Err(FormError::Internal(
                    "isotropy algebra is not closed under commutators".into(),
                ));
            }
        }
    }
    Ok(basis)
}

/// True when every `A` in `h` is skew-adjoint for `g`: `A^T g + g A = 0`.
pub fn is_skew_metric<T: Scalar>(h: &[Mat<T>], g: &Mat<T>) -> bool {
    h.iter()
        .all(|a| a.transpose().mul(g).add(&g.mul(a)).is_zero())
}

/// Upper bound on the lattice points examined before giving up.
const LATTICE_LIMIT: usize = 2_000_000;

/// A symmetric nondegenerate `g` making every element of `h` skew-adjoint,
/// or `None` when no such `g` exists.
///
/// The admissible `g` form a linear space with basis `G_1..G_d`. A few
/// fixed combinations are tried first; then `det(sum c_k G_k)`, a
/// polynomial of degree at most `n`, is evaluated on the lattice points
/// `c >= 0, |c| <= n` in order of total degree. That point set is
/// unisolvent for polynomials of degree `n`, so vanishing on all of it
/// certifies that every admissible `g` is degenerate.
pub fn skew_metric_certificate<T: Scalar>(n: usize, h: &[Mat<T>]) -> Result<Option<Mat<T>>> {
    if let Some(a) = h.iter().find(|a| a.rows() != n || a.cols() != n) {
        return Err(FormError::DimensionMismatch {
            expected: n,
            found: a.rows(),
        });
    }
    let basis = symmetric_solutions(n, h);
    let d = basis.len();
    if d == 0 {
        return Ok(None);
    }
    let combine = |c: &[usize]| -> Mat<T> {
        basis
            .iter()
            .zip(c)
            .fold(Mat::zeros(n, n), |acc, (g, &k)| acc.add(&g.scale(&T::from_ratio(k as i64, 1))))
    };
    let heuristics: [Vec<usize>; 2] = [vec![1; d], (1..=d).collect()];
    for c in &heuristics {
        let g = combine(c);
        if !g.det().is_negligible() {
            return Ok(Some(g));
        }
    }
    let total_points = crate::exterior::binomial(n + d, d);
    if total_points > LATTICE_LIMIT {
        return Err(FormError::Precondition(format!(
            "solution space of dimension {d} is too large to certify"
        )));
    }
    let mut c = vec![0usize; d];
    for degree in 1..=n {
        if let Some(g) = search_degree(&mut c, 0, degree, &combine) {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

fn search_degree<T: Scalar>(
    c: &mut Vec<usize>,
    pos: usize,
    remaining: usize,
    combine: &dyn Fn(&[usize]) -> Mat<T>,
) -> Option<Mat<T>> {
    if pos + 1 == c.len() {
        c[pos] = remaining;
        let g = combine(c);
        c[pos] = 0;
        return (!g.det().is_negligible()).then_some(g);
    }
    for k in (0..=remaining).rev() {
        c[pos] = k;
        if let Some(g) = search_degree(c, pos + 1, remaining - k, combine) {
            c[pos] = 0;
            return Some(g);
        }
    }
    c[pos] = 0;
    None
}

/// Basis of the symmetric solutions of `A^T g + g A = 0` for all `A`.
fn symmetric_solutions<T: Scalar>(n: usize, h: &[Mat<T>]) -> Vec<Mat<T>> {
    let mut var = vec![vec![0usize; n]; n];
    let mut count = 0;
    for a in 0..n {
        for b in a..n {
            var[a][b] = count;
            var[b][a] = count;
            count += 1;
        }
    }
    let mut rows = Vec::new();
    for m in h {
        for i in 0..n {
            for j in i..n {
                // (A^T g + g A)_ij = sum_k A_ki g_kj + g_ik A_kj
                let mut row = vec![T::zero(); count];
                for k in 0..n {
                    let v = var[k][j];
                    row[v] = row[v].clone() + m[(k, i)].clone();
                    let v = var[i][k];
                    row[v] = row[v].clone() + m[(k, j)].clone();
                }
                rows.push(row);
            }
        }
    }
    let null: Vec<Vec<T>> = if rows.is_empty() {
        (0..count).map(|k| crate::linalg::unit(count, k)).collect()
    } else {
        Mat::from_rows(rows).null_space()
    };
    null.into_iter()
        .map(|v| Mat::from_fn(n, n, |i, j| v[var[i][j]].clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::{Form, Matrix};

    #[test]
    fn isotropy_of_area_form_is_sl2() {
        let s = Form::monomial(2, Variance::Form, &[1, 2], rat(1, 1));
        let h = isotropy_algebra(&s).unwrap();
        assert_eq!(h.len(), 3);
        for a in &h {
            assert_eq!(a.trace(), rat(0, 1));
        }
    }

    #[test]
    fn nilpotent_has_no_metric() {
        let mut a: Matrix = Mat::zeros(2, 2);
        a[(0, 1)] = rat(1, 1);
        assert_eq!(skew_metric_certificate(2, &[a]).unwrap(), None);
    }

    #[test]
    fn rotation_has_identity_metric() {
        let a: Matrix = Mat::from_ints(&[&[0, -1], &[1, 0]]);
        let g = skew_metric_certificate(2, std::slice::from_ref(&a)).unwrap().unwrap();
        assert!(is_skew_metric(&[a], &g));
        assert!(!g.det().is_negligible());
    }

    #[test]
    fn empty_algebra_accepts_any_metric() {
        let g = skew_metric_certificate::<crate::Q>(3, &[]).unwrap().unwrap();
        assert!(!g.det().is_negligible());
    }
}
