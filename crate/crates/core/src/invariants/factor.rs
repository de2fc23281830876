use crate::error::{FormError, Result};
use crate::exterior::{ExteriorForm, IndexSet, Variance};
use crate::linalg::{unit, Mat, Subspace};
use crate::scalar::Scalar;

use super::profile::FormProfile;

/// `mu = theta_1 ^ ... ^ theta_s ^ zeta` with the `theta_i` spanning the
/// divisors of `mu` and `zeta` built from the `complement` covectors only.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization<T> {
    pub volume_factor: Vec<ExteriorForm<T>>,
    pub indivisible: ExteriorForm<T>,
    pub complement: Vec<ExteriorForm<T>>,
}

impl<T: Scalar> Factorization<T> {
    /// Wedge of all factors; equals the factored form.
    pub fn product(&self) -> Result<ExteriorForm<T>> {
        let n = self.indivisible.dim();
        let mut acc = ExteriorForm::scalar(n, Variance::Form, T::one());
        for t in &self.volume_factor {
            acc = acc.wedge(t)?;
        }
        acc.wedge(&self.indivisible)
    }
}

/// Split a decomposable form into 1-forms whose wedge is `m`.
pub fn factor_decomposable<T: Scalar>(
    m: &ExteriorForm<T>,
    profile: &FormProfile<T>,
) -> Result<Vec<ExteriorForm<T>>> {
    if m.is_zero() {
        return Err(FormError::ZeroForm);
    }
    if !profile.decomposable {
        return Err(FormError::NotDecomposable);
    }
    if m.degree() == 0 {
        return Err(FormError::Precondition(
            "a constant has no 1-form factors".into(),
        ));
    }
    let mut factors: Vec<ExteriorForm<T>> = profile
        .image
        .basis_vectors()
        .iter()
        .map(|v| ExteriorForm::from_coords(m.variance(), v))
        .collect();
    let mut product = factors[0].clone();
    for f in &factors[1..] {
        product = product.wedge(f)?;
    }
    let c = m
        .proportionality(&product)
        .ok_or_else(|| FormError::Internal("image factors do not reproduce the form".into()))?;
    factors[0] = factors[0].scale(&c);
    Ok(factors)
}

/// Factor `m` as a volume form on its divisors times an indivisible form,
/// completing the divisors with the lexicographically first standard
/// covectors.
pub fn indivisible_factorization<T: Scalar>(
    m: &ExteriorForm<T>,
    profile: &FormProfile<T>,
) -> Result<Factorization<T>> {
    let n = m.dim();
    let pivots = profile.divisors.pivots();
    let complement: Vec<Vec<T>> = (0..n)
        .filter(|j| !pivots.contains(j))
        .map(|j| unit(n, j))
        .collect();
    indivisible_factorization_with_complement(m, profile, &complement)
}

/// As [`indivisible_factorization`] with a caller-chosen complement of the
/// divisor space, given as coordinate vectors.
pub fn indivisible_factorization_with_complement<T: Scalar>(
    m: &ExteriorForm<T>,
    profile: &FormProfile<T>,
    complement: &[Vec<T>],
) -> Result<Factorization<T>> {
    if m.is_zero() {
        return Err(FormError::ZeroForm);
    }
    if m.variance() != Variance::Form {
        return Err(FormError::VarianceMismatch("factorization applies to forms".into()));
    }
    let n = m.dim();
    let s = profile.divisors.dim();
    let mut rows = profile.divisors.basis_vectors();
    rows.extend(complement.iter().cloned());
    if rows.len() != n {
        return Err(FormError::Precondition(format!(
            "complement has {} vectors, expected {}",
            complement.len(),
            n - s
        )));
    }
    // Rows of P are the new covectors eta^a in xi-coordinates.
    let p = Mat::from_rows(rows);
    let p_inv = p
        .inverse()
        .ok_or_else(|| FormError::Precondition("complement is not transverse to the divisors".into()))?;
    let in_eta = m.pullback(&p_inv)?;
    let prefix = IndexSet::full(s);
    let mut zeta_terms = Vec::new();
    for (set, c) in in_eta.terms() {
        if c.is_negligible() {
            continue;
        }
        if !prefix.is_subset_of(*set) {
            return Err(FormError::Internal(
                "a divisor does not divide the form".into(),
            ));
        }
        zeta_terms.push((set.minus(prefix), c.clone()));
    }
    let zeta_eta = ExteriorForm::from_terms(n, m.degree() - s, Variance::Form, zeta_terms)?;
    let zeta = zeta_eta.pullback(&p)?;
    let to_form = |v: &Vec<T>| ExteriorForm::from_coords(Variance::Form, v);
    let result = Factorization {
        volume_factor: profile.divisors.basis_vectors().iter().map(to_form).collect(),
        indivisible: zeta,
        complement: complement.iter().map(to_form).collect(),
    };
    if !(&result.product()? - m).is_negligible() {
        return Err(FormError::Internal("factorization does not multiply back".into()));
    }
    Ok(result)
}

/// Restriction of a form to a subspace of `V`, written in the subspace's
/// echelon basis.
pub fn restrict_to<T: Scalar>(m: &ExteriorForm<T>, sub: &Subspace<T>) -> Result<ExteriorForm<T>> {
    if sub.variance() != Variance::Vector {
        return Err(FormError::VarianceMismatch("restriction needs a subspace of V".into()));
    }
    m.pullback(&sub.basis().transpose())
}
