//! Differential forms on `R^n` with polynomial coefficients, and the
//! family `sigma = sum phi_i^{1-m} phi chi_i`, `zeta_i = -phi_i^{m-1}
//! chi_1 ^ .. ^ chi_i-hat ^ .. ^ chi_m` of mutually dual forms.

mod polynomial;

pub use polynomial::{Monomial, Polynomial};

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{FormError, Result};
use crate::exterior::{ExteriorForm, IndexSet, Variance};
use crate::invariants::{dual_of_2form, profile};
use crate::scalar::rat;
use crate::{Form, Q};

/// A differential `p`-form `sum_I f_I dx^I` with polynomial `f_I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyForm {
    dim: usize,
    degree: usize,
    terms: BTreeMap<IndexSet, Polynomial>,
}

impl PolyForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(degree <= dim, "degree {degree} above dimension {dim}");
        PolyForm {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// `f dx^{i_1} ^ ... ^ dx^{i_p}` for 1-based, distinct indices in any
    /// order; the sorting sign is applied.
    pub fn monomial(dim: usize, one_based: &[usize], f: Polynomial) -> Self {
        let unit = Form::monomial(dim, Variance::Form, one_based, rat(1, 1));
        let mut out = Self::zero(dim, one_based.len());
        for (set, c) in unit.terms() {
            out.add_term(*set, f.scale(c));
        }
        out
    }

    /// A constant-coefficient form.
    pub fn from_form(f: &Form) -> Result<Self> {
        if f.variance() != Variance::Form {
            return Err(FormError::VarianceMismatch("expected a form".into()));
        }
        let mut out = Self::zero(f.dim(), f.degree());
        for (set, c) in f.terms() {
            out.add_term(*set, Polynomial::constant(c.clone()));
        }
        Ok(out)
    }

    pub fn from_terms(dim: usize, degree: usize, terms: impl IntoIterator<Item = (IndexSet, Polynomial)>) -> Result<Self> {
        let mut out = Self::zero(dim, degree);
        for (set, f) in terms {
            if set.len() != degree || set.max_index().is_some_and(|m| m >= dim) {
                return Err(FormError::Precondition(format!(
                    "index set {:?} does not fit degree {degree} in dimension {dim}",
                    set.one_based()
                )));
            }
            out.add_term(set, f);
        }
        Ok(out)
    }

    fn add_term(&mut self, set: IndexSet, f: Polynomial) {
        if f.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&set) {
            Some(g) => &g + &f,
            None => f,
        };
        if !sum.is_zero() {
            self.terms.insert(set, sum);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<IndexSet, Polynomial> {
        &self.terms
    }

    pub fn coeff(&self, set: IndexSet) -> Polynomial {
        self.terms.get(&set).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(FormError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        if self.degree != other.degree {
            return Err(FormError::Precondition(format!(
                "cannot add forms of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (set, f) in &other.terms {
            out.add_term(*set, f.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.mul_poly(&-Polynomial::one()))
    }

    /// `f * self`.
    pub fn mul_poly(&self, f: &Polynomial) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        for (set, g) in &self.terms {
            out.add_term(*set, g * f);
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(FormError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let degree = self.degree + other.degree;
        if degree > self.dim {
            return Err(FormError::Precondition(format!(
                "wedge of degree {degree} exceeds dimension {}",
                self.dim
            )));
        }
        let mut out = Self::zero(self.dim, degree);
        for (a, f) in &self.terms {
            for (b, g) in &other.terms {
                if let Some(sign) = a.merge_sign(*b) {
                    let fg = f * g;
                    out.add_term(a.union(*b), if sign > 0 { fg } else { -fg });
                }
            }
        }
        Ok(out)
    }

    /// `d(f dx^I) = sum_k (d_k f) dx^k ^ dx^I`. The derivative of a
    /// top-degree form is rejected, having no space to live in.
    pub fn d(&self) -> Result<Self> {
        if self.degree >= self.dim {
            return Err(FormError::Precondition(format!(
                "no {}-forms in dimension {}",
                self.degree + 1,
                self.dim
            )));
        }
        let mut out = Self::zero(self.dim, self.degree + 1);
        for (set, f) in &self.terms {
            for k in 0..self.dim {
                if set.contains(k) {
                    continue;
                }
                let df = f.derivative(k + 1);
                if df.is_zero() {
                    continue;
                }
                let sign = IndexSet::singleton(k).merge_sign(*set).expect("disjoint");
                out.add_term(set.with(k), if sign > 0 { df } else { -df });
            }
        }
        Ok(out)
    }

    /// The constant form obtained by evaluating every coefficient at `point`.
    pub fn evaluate(&self, point: &[Q]) -> Form {
        let terms = self.terms.iter().map(|(s, f)| (*s, f.evaluate(point)));
        ExteriorForm::from_terms(self.dim, self.degree, Variance::Form, terms).expect("same shape")
    }

    /// Largest variable index occurring in a coefficient.
    pub fn num_vars(&self) -> usize {
        self.terms.values().map(Polynomial::num_vars).max().unwrap_or(0)
    }
}

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (set, poly)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let dx: Vec<String> = set.one_based().iter().map(|k| format!("dx{k}")).collect();
            if dx.is_empty() {
                write!(f, "({poly})")?;
            } else {
                write!(f, "({poly}) {}", dx.join("^"))?;
            }
        }
        Ok(())
    }
}

/// `chi_i = dx^{2i-1} ^ dx^{2i}` on `R^{2m}`, 1-based `i`.
pub fn chi(m: usize, i: usize) -> PolyForm {
    PolyForm::monomial(2 * m, &[2 * i - 1, 2 * i], Polynomial::one())
}

fn check_family(m: usize, phis: &[Polynomial]) -> Result<()> {
    if m < 2 {
        return Err(FormError::Precondition("the family needs m >= 2".into()));
    }
    if phis.len() != m {
        return Err(FormError::Precondition(format!(
            "expected {m} functions phi_i, got {}",
            phis.len()
        )));
    }
    if let Some(i) = phis.iter().position(Polynomial::is_zero) {
        return Err(FormError::Precondition(format!("phi_{} is zero", i + 1)));
    }
    if let Some(p) = phis.iter().find(|p| p.num_vars() > 2 * m) {
        return Err(FormError::Precondition(format!(
            "`{p}` uses variables beyond x{}",
            2 * m
        )));
    }
    Ok(())
}

/// `prod_{j != i} phi_j`, zero-based `i`.
fn product_except(phis: &[Polynomial], skip: Option<usize>) -> Polynomial {
    phis.iter()
        .enumerate()
        .filter(|(j, _)| Some(*j) != skip)
        .fold(Polynomial::one(), |acc, (_, p)| &acc * p)
}

/// `zeta = sum_i -phi_i^{m-1} chi_1 ^ .. ^ chi_i-hat ^ .. ^ chi_m`.
pub fn duncl_zeta(m: usize, phis: &[Polynomial]) -> Result<PolyForm> {
    check_family(m, phis)?;
    let n = 2 * m;
    let mut zeta = PolyForm::zero(n, n - 2);
    for i in 0..m {
        let idx: Vec<usize> = (0..m).filter(|&j| j != i).flat_map(|j| [2 * j + 1, 2 * j + 2]).collect();
        let coeff = -phis[i].pow(m as u32 - 1);
        zeta = zeta.try_add(&PolyForm::monomial(n, &idx, coeff))?;
    }
    Ok(zeta)
}

/// `d_{2i-1} phi_i = d_{2i} phi_i = 0` for every `i`.
pub fn duncl_zeta_criterion(m: usize, phis: &[Polynomial]) -> Result<bool> {
    check_family(m, phis)?;
    Ok((0..m).all(|i| phis[i].derivative(2 * i + 1).is_zero() && phis[i].derivative(2 * i + 2).is_zero()))
}

/// Closedness of `zeta`, decided by the criterion and cross-checked
/// against a direct computation of `d zeta`.
pub fn duncl_zeta_closed(m: usize, phis: &[Polynomial]) -> Result<bool> {
    let criterion = duncl_zeta_criterion(m, phis)?;
    let direct = duncl_zeta(m, phis)?.d()?.is_zero();
    if criterion != direct {
        return Err(FormError::Internal(format!(
            "closedness criterion gives {criterion} but d(zeta) = 0 is {direct}"
        )));
    }
    Ok(direct)
}

/// Closedness of `sigma`: for every `i` and `k` outside `{2i-1, 2i}`,
/// `(1-m) (d_k phi_i) phi + phi_i d_k phi = 0`, which is
/// `d_k[phi_i^{1-m} phi] = 0` with the denominator cleared.
pub fn duncl_sigma_closed(m: usize, phis: &[Polynomial]) -> Result<bool> {
    check_family(m, phis)?;
    let phi = product_except(phis, None);
    let one_minus_m = Polynomial::constant(rat(1 - m as i64, 1));
    for (i, phi_i) in phis.iter().enumerate() {
        for k in 1..=2 * m {
            if k == 2 * i + 1 || k == 2 * i + 2 {
                continue;
            }
            let lhs = &(&(&one_minus_m * &phi_i.derivative(k)) * &phi) + &(phi_i * &phi.derivative(k));
            if !lhs.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `phi_i = prod_{j != i} rho_j` for `rho_j` depending only on
/// `x^{2j-1}, x^{2j}`. Such families always have closed `sigma`; that is
/// checked before returning.
pub fn phis_from_rhos(rhos: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let m = rhos.len();
    for (j, rho) in rhos.iter().enumerate() {
        let own = [2 * j + 1, 2 * j + 2];
        if let Some(k) = (1..=rho.num_vars()).find(|k| !own.contains(k) && rho.involves(*k)) {
            return Err(FormError::Precondition(format!(
                "rho_{} involves x{k}, outside x{} and x{}",
                j + 1,
                own[0],
                own[1]
            )));
        }
    }
    let phis: Vec<Polynomial> = (0..m).map(|i| product_except(rhos, Some(i))).collect();
    if !duncl_sigma_closed(m, &phis)? {
        return Err(FormError::Internal("separated family with non-closed sigma".into()));
    }
    Ok(phis)
}

/// `sigma` at a point, exact. Fails where some `phi_i` vanishes.
pub fn sigma_at(m: usize, phis: &[Polynomial], point: &[Q]) -> Result<Form> {
    check_family(m, phis)?;
    let values: Vec<Q> = phis.iter().map(|p| p.evaluate(point)).collect();
    if values.iter().any(Zero::is_zero) {
        return Err(FormError::Degenerate("some phi_i vanishes at the point".into()));
    }
    let phi: Q = values.iter().fold(Q::one(), |acc, v| acc * v);
    let n = 2 * m;
    let mut sigma = Form::zero(n, 2, Variance::Form);
    for (i, v) in values.iter().enumerate() {
        let c = phi.clone() / num_traits::pow(v.clone(), m - 1);
        sigma = sigma + Form::monomial(n, Variance::Form, &[2 * i + 1, 2 * i + 2], c);
    }
    Ok(sigma)
}

/// Verdicts on the four properties of the family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DunclVerdicts {
    /// `zeta` evaluated at every usable sample is indivisible.
    pub indivisible: bool,
    /// `sigma` and `zeta` are dual at every usable sample.
    pub dual: bool,
    pub zeta_closed: bool,
    pub sigma_closed: bool,
    /// Samples where no `phi_i` vanished.
    pub samples_used: usize,
}

/// Rational sample points in `R^{2m}`: the origin, `(1, .., 1)` and
/// `x^k = (-1)^k k/(k+1)`.
pub fn default_samples(m: usize) -> Vec<Vec<Q>> {
    let n = 2 * m;
    vec![
        vec![Q::zero(); n],
        vec![Q::one(); n],
        (1..=n as i64)
            .map(|k| rat(if k % 2 == 0 { k } else { -k }, k + 1))
            .collect(),
    ]
}

pub fn duncl_verdicts(m: usize, phis: &[Polynomial], samples: &[Vec<Q>]) -> Result<DunclVerdicts> {
    let zeta = duncl_zeta(m, phis)?;
    let mut indivisible = true;
    let mut dual = true;
    let mut used = 0;
    for point in samples {
        let sigma = match sigma_at(m, phis, point) {
            Ok(s) => s,
            Err(FormError::Degenerate(_)) => continue,
            Err(e) => return Err(e),
        };
        used += 1;
        let z = zeta.evaluate(point);
        indivisible &= profile(&z).indivisible;
        dual &= dual_of_2form(&sigma)? == z;
    }
    Ok(DunclVerdicts {
        indivisible,
        dual,
        zeta_closed: duncl_zeta_closed(m, phis)?,
        sigma_closed: duncl_sigma_closed(m, phis)?,
        samples_used: used,
    })
}
