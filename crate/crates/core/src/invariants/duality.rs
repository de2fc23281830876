use crate::error::{FormError, Result};
use crate::exterior::{ExteriorForm, IndexSet, Variance};
use crate::scalar::Scalar;

/// The reciprocal of a nondegenerate 2-form (a bivector) or of a
/// nondegenerate bivector (a 2-form): the skew matrix is inverted.
///
/// `reciprocal(xi^1 ^ xi^2) = -e_1 ^ e_2`.
pub fn reciprocal<T: Scalar>(s: &ExteriorForm<T>) -> Result<ExteriorForm<T>> {
    if s.degree() != 2 {
        return Err(FormError::Precondition("reciprocal needs degree 2".into()));
    }
    if s.dim() % 2 == 1 {
        return Err(FormError::OddDimension(s.dim()));
    }
    let inv = s
        .skew_matrix()?
        .inverse()
        .ok_or_else(|| FormError::Degenerate("2-form or bivector has a kernel".into()))?;
    Ok(ExteriorForm::from_skew_matrix(s.variance().dual(), &inv))
}

/// The `(n-2)`-form `omega beta` dual to a nondegenerate 2-form `s`, where
/// `omega = s^m / m!` and `beta` is the bivector reciprocal to `s`.
///
/// In dimension 2 the dual is `-1`, in dimension 4 it is `-s`.
pub fn dual_of_2form<T: Scalar>(s: &ExteriorForm<T>) -> Result<ExteriorForm<T>> {
    if s.variance() != Variance::Form || s.degree() != 2 {
        return Err(FormError::Precondition("dual needs a 2-form".into()));
    }
    let n = s.dim();
    if n % 2 == 1 {
        return Err(FormError::OddDimension(n));
    }
    let beta = reciprocal(s)?;
    let omega = s.divided_power(n / 2)?;
    omega.contract(&beta)
}

/// A nondegenerate 2-form recovered, up to scale, from an indivisible
/// `(n-2)`-form `mu`.
///
/// `dual_of_2form(sigma0) = t * mu`; scaling `sigma0` by `c` multiplies the
/// dual by `c^(m-1)`. `kappa` is defined by `sigma0^m / m! = kappa * vol`
/// for the standard volume form.
#[derive(Clone, Debug, PartialEq)]
pub struct DualityResult<T> {
    pub sigma0: ExteriorForm<T>,
    pub kappa: T,
    pub t: T,
    pub half_dim: usize,
    /// True when `m` is even: then exactly one multiple of `sigma0` has
    /// dual `mu` itself.
    pub sign_determined: bool,
}

impl<T: Scalar> DualityResult<T> {
    /// Scale factor `c` and sign `e` with `dual(c sigma0) = e mu` and
    /// `e = +1` whenever that is achievable, if `c` lies in the field.
    pub fn normalizing_factor(&self) -> Option<(T, i8)> {
        normalizing_factor(&self.t, self.half_dim)
    }

    /// `(c sigma0, e)` with `dual(c sigma0) = e mu`, when `c` is exact.
    pub fn normalized_exact(&self) -> Option<(ExteriorForm<T>, i8)> {
        let (c, e) = self.normalizing_factor()?;
        Some((self.sigma0.scale(&c), e))
    }

    /// Floating-point view of the normalized 2-form; always available
    /// except in dimension 2 with `|t| != 1`.
    pub fn normalized_f64(&self) -> Option<(ExteriorForm<f64>, i8)> {
        let t = self.t.to_f64_lossy();
        let (c, e) = normalizing_factor(&t, self.half_dim)?;
        Some((self.sigma0.map(|x| x.to_f64_lossy() * c), e))
    }
}

fn normalizing_factor<T: Scalar>(t: &T, m: usize) -> Option<(T, i8)> {
    let sign: i8 = if t.is_negative() { -1 } else { 1 };
    if m == 1 {
        // The dual of any 2-form in dimension two is -1.
        return (t.abs() == T::one()).then(|| (T::one(), sign));
    }
    let k = (m - 1) as u32;
    if m.is_multiple_of(2) {
        (T::one() / t.clone()).root_exact(k).map(|c| (c, 1))
    } else {
        (T::one() / t.abs()).root_exact(k).map(|c| (c, sign))
    }
}

/// Recover the 2-form dual to an indivisible `(n-2)`-form.
///
/// `beta = *mu` for the standard volume form, `sigma0` is the reciprocal
/// of `beta`. The scale data is exact; the normalized form may need an
/// irrational root and is offered separately.
pub fn two_form_from_indivisible<T: Scalar>(mu: &ExteriorForm<T>) -> Result<DualityResult<T>> {
    let n = mu.dim();
    if n % 2 == 1 {
        return Err(FormError::OddDimension(n));
    }
    if n < 2 || mu.degree() != n - 2 || mu.variance() != Variance::Form {
        return Err(FormError::Precondition(format!(
            "expected an (n-2)-form in dimension {n}"
        )));
    }
    if mu.is_zero() {
        return Err(FormError::ZeroForm);
    }
    let vol = ExteriorForm::volume(n);
    let beta = mu.hodge_star(&vol)?;
    let sigma0 = reciprocal(&beta).map_err(|_| {
        FormError::Degenerate("form is divisible: its Hodge dual bivector is degenerate".into())
    })?;
    let m = n / 2;
    let kappa = sigma0.divided_power(m)?.coeff(IndexSet::full(n));
    if kappa.is_zero() {
        return Err(FormError::Internal("top power of the recovered 2-form vanishes".into()));
    }
    let dual = dual_of_2form(&sigma0)?;
    let t = dual
        .proportionality(mu)
        .ok_or_else(|| FormError::Internal("recovered 2-form is not dual to the input".into()))?;
    Ok(DualityResult {
        sigma0,
        kappa,
        t,
        half_dim: m,
        sign_determined: m.is_multiple_of(2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::Form;

    fn standard(n: usize) -> Form {
        (1..=n / 2).fold(Form::zero(n, 2, Variance::Form), |acc, i| {
            acc + Form::monomial(n, Variance::Form, &[2 * i - 1, 2 * i], rat(1, 1))
        })
    }

    #[test]
    fn reciprocal_of_area_form() {
        let b = reciprocal(&Form::xi(2, 1).wedge(&Form::xi(2, 2)).unwrap()).unwrap();
        assert_eq!(b, -Form::monomial(2, Variance::Vector, &[1, 2], rat(1, 1)));
    }

    #[test]
    fn low_dimensional_duals() {
        let s2 = Form::monomial(2, Variance::Form, &[1, 2], rat(3, 1));
        assert_eq!(dual_of_2form(&s2).unwrap().scalar_value(), Some(rat(-1, 1)));
        let s4 = standard(4) + Form::monomial(4, Variance::Form, &[1, 3], rat(2, 5));
        assert_eq!(dual_of_2form(&s4).unwrap(), -s4);
    }

    #[test]
    fn six_dimensional_dual_of_standard() {
        let s = standard(6);
        let chi = |i: usize| Form::monomial(6, Variance::Form, &[2 * i - 1, 2 * i], rat(1, 1));
        let expected = -(chi(2).wedge(&chi(3)).unwrap())
            - chi(1).wedge(&chi(3)).unwrap()
            - chi(1).wedge(&chi(2)).unwrap();
        assert_eq!(dual_of_2form(&s).unwrap(), expected);
    }

    #[test]
    fn recovery_in_dimension_four_has_plus_sign() {
        let s = standard(4);
        let mu = -s.clone();
        let d = two_form_from_indivisible(&mu).unwrap();
        assert!(d.sign_determined);
        let (sigma, e) = d.normalized_exact().unwrap();
        assert_eq!(e, 1);
        assert_eq!(dual_of_2form(&sigma).unwrap(), mu);
        assert_eq!(sigma, s);
    }

    #[test]
    fn odd_or_divisible_rejected() {
        let m = Form::sum_of(5, Variance::Form, &[&[1, 2, 3], &[4, 5, 1]]);
        assert_eq!(two_form_from_indivisible(&m), Err(FormError::OddDimension(5)));
        let div = Form::sum_of(6, Variance::Form, &[&[1, 2, 3, 4]]);
        assert!(matches!(two_form_from_indivisible(&div), Err(FormError::Degenerate(_))));
    }
}
