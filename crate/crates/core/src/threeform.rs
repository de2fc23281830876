//! 3-forms on a six-dimensional space: the five nonzero types, their
//! invariants, and a basis bringing a form to its canonical expression.
//!
//! Canonical forms:
//!
//! | type | form |
//! |------|------|
//! | a | `xi123 + xi345 + xi561 + xi246` |
//! | b | `xi123 + xi345 + xi561` |
//! | c | `xi123 + xi456` |
//! | d | `xi123 + xi451` |
//! | e | `xi123` |
//!
//! Types a, b, c have rank six and are told apart by the sign of the
//! discriminant `lambda = tr(K^2)/6`, where `K(v) = *((iota_v m) ^ m)` for the
//! standard volume form.
//!
//! A normal-form basis is a matrix `M` whose columns are vectors of `V` with
//! `m.pullback(M) == canonical`; equivalently the input is the canonical
//! form pulled back by `M^{-1}`.

use std::fmt;

use crate::error::{FormError, Result};
use crate::exterior::{ExteriorForm, Variance};
use crate::invariants::{
    factor_decomposable, indivisible_factorization, linear_darboux, profile, restrict_to,
    standard_symplectic,
};
use crate::linalg::{unit, Mat, Subspace};
use crate::scalar::{int, Scalar};

/// Largest residual accepted for a floating-point normal-form basis.
pub const FLOAT_RESIDUAL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ThreeFormType {
    /// Type a: real part of a complex volume form.
    ComplexStable,
    /// Type b: rank six with vanishing discriminant.
    Degenerate3,
    /// Type c: sum of two decomposable forms on complementary 3-planes.
    RealStable,
    /// Type d: exactly one linear divisor.
    OneDivisor,
    /// Type e: decomposable.
    Decomposable,
    Zero,
}

impl ThreeFormType {
    pub const NONZERO: [ThreeFormType; 5] = [
        ThreeFormType::ComplexStable,
        ThreeFormType::Degenerate3,
        ThreeFormType::RealStable,
        ThreeFormType::OneDivisor,
        ThreeFormType::Decomposable,
    ];

    /// Letter used in the literature tables, `"0"` for the zero form.
    pub fn letter(self) -> &'static str {
        match self {
            ThreeFormType::ComplexStable => "a",
            ThreeFormType::Degenerate3 => "b",
            ThreeFormType::RealStable => "c",
            ThreeFormType::OneDivisor => "d",
            ThreeFormType::Decomposable => "e",
            ThreeFormType::Zero => "0",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ThreeFormType::ComplexStable => "ComplexStable",
            ThreeFormType::Degenerate3 => "Degenerate3",
            ThreeFormType::RealStable => "RealStable",
            ThreeFormType::OneDivisor => "OneDivisor",
            ThreeFormType::Decomposable => "Decomposable",
            ThreeFormType::Zero => "Zero",
        }
    }

    pub fn from_letter(s: &str) -> Option<Self> {
        Self::NONZERO
            .into_iter()
            .chain([ThreeFormType::Zero])
            .find(|t| t.letter() == s || t.name().eq_ignore_ascii_case(s))
    }

    /// The canonical representative; the zero form for `Zero`.
    pub fn canonical<T: Scalar>(self) -> ExteriorForm<T> {
        let terms: &[&[usize]] = match self {
            ThreeFormType::ComplexStable => &[&[1, 2, 3], &[3, 4, 5], &[5, 6, 1], &[2, 4, 6]],
            ThreeFormType::Degenerate3 => &[&[1, 2, 3], &[3, 4, 5], &[5, 6, 1]],
            ThreeFormType::RealStable => &[&[1, 2, 3], &[4, 5, 6]],
            ThreeFormType::OneDivisor => &[&[1, 2, 3], &[4, 5, 1]],
            ThreeFormType::Decomposable => &[&[1, 2, 3]],
            ThreeFormType::Zero => &[],
        };
        terms.iter().fold(ExteriorForm::zero(6, 3, Variance::Form), |acc, t| {
            acc + ExteriorForm::monomial(6, Variance::Form, t, T::one())
        })
    }
}

impl fmt::Display for ThreeFormType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `K` and `lambda = tr(K^2)/6`, computed with the standard volume form.
#[derive(Clone, Debug, PartialEq)]
pub struct Discriminant<T> {
    pub k: Mat<T>,
    pub lambda: T,
    pub volume: ExteriorForm<T>,
}

fn check_six<T: Scalar>(m: &ExteriorForm<T>) -> Result<()> {
    if m.dim() != 6 {
        return Err(FormError::DimensionMismatch {
            expected: 6,
            found: m.dim(),
        });
    }
    if m.degree() != 3 || m.variance() != Variance::Form {
        return Err(FormError::Precondition("expected a 3-form".into()));
    }
    Ok(())
}

pub fn hitchin_discriminant<T: Scalar>(m: &ExteriorForm<T>) -> Result<Discriminant<T>> {
    check_six(m)?;
    let volume = ExteriorForm::volume(6);
    let mut cols = Vec::with_capacity(6);
    for k in 0..6 {
        let five = m.interior(&unit(6, k))?.wedge(m)?;
        cols.push(five.hodge_star(&volume)?.coords()?);
    }
    let k = Mat::from_cols(6, &cols);
    let lambda = k.mul(&k).trace() / int::<T>(6);
    Ok(Discriminant { k, lambda, volume })
}

/// A complex-structure tensor compatible with a type-a form.
#[derive(Clone, Debug, PartialEq)]
pub enum ComplexStructure<T> {
    /// `J` is rational: `-lambda` is a perfect square.
    Exact {
        j: Mat<T>,
        /// `m(J., ., .)`.
        twisted: ExteriorForm<T>,
    },
    /// `J = -K / sqrt(-lambda)` with an irrational root: the exact data
    /// plus a floating view.
    Scaled {
        k: Mat<T>,
        lambda: T,
        j: Mat<f64>,
        twisted: ExteriorForm<f64>,
    },
}

impl<T: Scalar> ComplexStructure<T> {
    pub fn is_exact(&self) -> bool {
        matches!(self, ComplexStructure::Exact { .. })
    }

    pub fn j_f64(&self) -> Mat<f64> {
        match self {
            ComplexStructure::Exact { j, .. } => j.map(Scalar::to_f64_lossy),
            ComplexStructure::Scaled { j, .. } => j.clone(),
        }
    }
}

/// `H`, `H'` and `Theta` of a type-b form.
///
/// `theta` is the matrix of `v -> contract(m, v)` from the echelon basis
/// `h_1, h_2, h_3` of `H` to the basis `eta2^eta1, eta3^eta2, eta1^eta3`
/// of `Lambda^2 H'`, where `eta_i` is the echelon basis of `H'`.
#[derive(Clone, Debug, PartialEq)]
pub struct TypeBInvariants<T> {
    pub h: Subspace<T>,
    pub h_prime: Subspace<T>,
    pub theta: Mat<T>,
    pub two_form_basis: Vec<ExteriorForm<T>>,
}

impl<T: Scalar> TypeBInvariants<T> {
    /// `Theta v` as a 2-form, for `v` in `H`.
    pub fn apply(&self, m: &ExteriorForm<T>, v: &[T]) -> Result<ExteriorForm<T>> {
        if !self.h.contains(v) {
            return Err(FormError::Precondition("vector is not in H".into()));
        }
        m.interior(v)
    }
}

/// One half of a type-c splitting: `eta` is decomposable and vanishes as
/// soon as one argument lies in `h`.
#[derive(Clone, Debug, PartialEq)]
pub struct StableHalf<U> {
    pub h: Subspace<U>,
    pub eta: ExteriorForm<U>,
}

/// The unordered pair `{(H+, eta+), (H-, eta-)}` of a type-c form, with
/// `m = eta+ + eta-`.
#[derive(Clone, Debug, PartialEq)]
pub struct StablePair<U> {
    pub plus: StableHalf<U>,
    pub minus: StableHalf<U>,
}

impl<U: Scalar> StablePair<U> {
    /// Equality as unordered pairs.
    pub fn same_pair(&self, other: &Self) -> bool {
        (self.plus == other.plus && self.minus == other.minus)
            || (self.plus == other.minus && self.minus == other.plus)
    }

    pub fn swapped(&self) -> Self {
        StablePair {
            plus: self.minus.clone(),
            minus: self.plus.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum RealSplit<T> {
    Exact(StablePair<T>),
    /// `sqrt(lambda)` is irrational.
    Float(StablePair<f64>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum TypeInvariants<T> {
    ComplexStable(ComplexStructure<T>),
    Degenerate3(TypeBInvariants<T>),
    RealStable(RealSplit<T>),
    OneDivisor {
        divisibility: Subspace<T>,
        divisor: ExteriorForm<T>,
        /// Indivisible factor; determined up to scale on `divisibility`.
        zeta: ExteriorForm<T>,
    },
    Decomposable {
        factors: Vec<ExteriorForm<T>>,
    },
    Zero,
}

#[derive(Clone, Debug, PartialEq)]
pub enum NormalFormBasis<T> {
    Exact(Mat<T>),
    Float { basis: Mat<f64>, residual: f64 },
}

impl<T: Scalar> NormalFormBasis<T> {
    pub fn is_exact(&self) -> bool {
        matches!(self, NormalFormBasis::Exact(_))
    }

    pub fn as_f64(&self) -> Mat<f64> {
        match self {
            NormalFormBasis::Exact(m) => m.map(Scalar::to_f64_lossy),
            NormalFormBasis::Float { basis, .. } => basis.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationResult<T> {
    pub kind: ThreeFormType,
    pub rank: usize,
    pub discriminant: Discriminant<T>,
    pub invariants: TypeInvariants<T>,
    /// Absent only for the zero form.
    pub normal_form: Option<NormalFormBasis<T>>,
}

/// Type of a 3-form in dimension six, without invariants.
pub fn classify_type<T: Scalar>(m: &ExteriorForm<T>) -> Result<ThreeFormType> {
    check_six(m)?;
    if m.is_zero() {
        return Ok(ThreeFormType::Zero);
    }
    match profile(m).rank {
        3 => Ok(ThreeFormType::Decomposable),
        5 => Ok(ThreeFormType::OneDivisor),
        6 => {
            let lambda = hitchin_discriminant(m)?.lambda;
            Ok(if lambda.is_negligible() {
                ThreeFormType::Degenerate3
            } else if lambda.is_negative() {
                ThreeFormType::ComplexStable
            } else {
                ThreeFormType::RealStable
            })
        }
        r => Err(FormError::Internal(format!(
            "nonzero 3-form with impossible rank {r}"
        ))),
    }
}

/// Type, invariants and normal-form basis.
pub fn classify<T: Scalar>(m: &ExteriorForm<T>) -> Result<ClassificationResult<T>> {
    let kind = classify_type(m)?;
    let discriminant = hitchin_discriminant(m)?;
    let rank = profile(m).rank;
    let (invariants, normal_form) = match kind {
        ThreeFormType::Zero => (TypeInvariants::Zero, None),
        ThreeFormType::Decomposable => {
            let (factors, basis) = type_e(m)?;
            (TypeInvariants::Decomposable { factors }, Some(NormalFormBasis::Exact(basis)))
        }
        ThreeFormType::OneDivisor => {
            let (inv, basis) = type_d(m)?;
            (inv, Some(NormalFormBasis::Exact(basis)))
        }
        ThreeFormType::Degenerate3 => {
            let inv = type_b(m, &discriminant)?;
            let basis = type_b_basis(m, &inv)?;
            (TypeInvariants::Degenerate3(inv), Some(NormalFormBasis::Exact(basis)))
        }
        ThreeFormType::RealStable => {
            let (split, basis) = type_c(m, &discriminant)?;
            (TypeInvariants::RealStable(split), Some(basis))
        }
        ThreeFormType::ComplexStable => {
            let (j, basis) = type_a(m, &discriminant)?;
            (TypeInvariants::ComplexStable(j), Some(basis))
        }
    };
    Ok(ClassificationResult {
        kind,
        rank,
        discriminant,
        invariants,
        normal_form,
    })
}

fn expect_type<T: Scalar>(m: &ExteriorForm<T>, want: ThreeFormType) -> Result<Discriminant<T>> {
    let got = classify_type(m)?;
    if got != want {
        return Err(FormError::WrongType(format!("expected {want}, found {got}")));
    }
    hitchin_discriminant(m)
}

/// `J` for a type-a form, normalized so that the canonical form gets
/// `J e4 = e1, J e6 = e3, J e2 = e5`. Only defined up to sign: `-m` and
/// pullbacks by orientation-reversing maps get `-J`.
pub fn almost_complex<T: Scalar>(m: &ExteriorForm<T>) -> Result<ComplexStructure<T>> {
    let disc = expect_type(m, ThreeFormType::ComplexStable)?;
    complex_structure(m, &disc)
}

pub fn type_b_invariants<T: Scalar>(m: &ExteriorForm<T>) -> Result<TypeBInvariants<T>> {
    let disc = expect_type(m, ThreeFormType::Degenerate3)?;
    type_b(m, &disc)
}

pub fn type_c_invariants<T: Scalar>(m: &ExteriorForm<T>) -> Result<RealSplit<T>> {
    let disc = expect_type(m, ThreeFormType::RealStable)?;
    Ok(type_c(m, &disc)?.0)
}

/// Basis `M` with `m.pullback(M)` equal to the canonical form of the type.
pub fn normal_form_basis<T: Scalar>(m: &ExteriorForm<T>) -> Result<NormalFormBasis<T>> {
    classify(m)?
        .normal_form
        .ok_or(FormError::ZeroForm)
}

/// Whether `xi ^ m` is decomposable, by the Plucker test on its dual
/// bivector: `beta ^ beta = 0` with `beta = *(xi ^ m)`.
pub fn wedge_is_decomposable<T: Scalar>(xi: &ExteriorForm<T>, m: &ExteriorForm<T>) -> Result<bool> {
    check_six(m)?;
    let four = xi.wedge(m)?;
    let beta = four.hodge_star(&ExteriorForm::volume(6))?;
    Ok(beta.wedge(&beta)?.is_negligible())
}

/// The 3-form `m(J., ., .)`; an internal error when it is not totally skew.
pub fn twisted_form<U: Scalar>(m: &ExteriorForm<U>, j: &Mat<U>) -> Result<ExteriorForm<U>> {
    let n = m.dim();
    let val = |a: usize, b: usize, c: usize| -> Result<U> {
        m.evaluate(&[j.col(a), unit(n, b), unit(n, c)])
    };
    let mut terms = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let v = val(a, b, c)?;
                if !(val(b, a, c)? + v.clone()).is_negligible() {
                    return Err(FormError::Internal("m(J., ., .) is not totally skew".into()));
                }
                terms.push((
                    crate::exterior::IndexSet::from_zero_based(&[a, b, c]).expect("distinct"),
                    v,
                ));
            }
        }
    }
    ExteriorForm::from_terms(n, 3, Variance::Form, terms)
}

fn complex_structure<T: Scalar>(m: &ExteriorForm<T>, disc: &Discriminant<T>) -> Result<ComplexStructure<T>> {
    let neg = -disc.lambda.clone();
    match neg.sqrt_exact() {
        Some(root) => {
            let j = disc.k.scale(&(-T::one() / root));
            check_complex(&j)?;
            let twisted = twisted_form(m, &j)?;
            Ok(ComplexStructure::Exact { j, twisted })
        }
        _ => {
            let root = neg.to_f64_lossy().sqrt();
            let j = disc.k.map(|x| -x.to_f64_lossy() / root);
            check_complex(&j)?;
            let twisted = twisted_form(&m.map(Scalar::to_f64_lossy), &j)?;
            Ok(ComplexStructure::Scaled {
                k: disc.k.clone(),
                lambda: disc.lambda.clone(),
                j,
                twisted,
            })
        }
    }
}

fn check_complex<U: Scalar>(j: &Mat<U>) -> Result<()> {
    if !j.mul(j).add(&Mat::identity(j.rows())).is_zero() {
        return Err(FormError::Internal("J^2 != -Id".into()));
    }
    Ok(())
}

fn type_a<T: Scalar>(
    m: &ExteriorForm<T>,
    disc: &Discriminant<T>,
) -> Result<(ComplexStructure<T>, NormalFormBasis<T>)> {
    let cs = complex_structure(m, disc)?;
    let target = ThreeFormType::ComplexStable.canonical::<T>();
    let basis = match &cs {
        ComplexStructure::Exact { j, .. } => {
            let b = complex_basis(m, j)?;
            if !(&m.pullback(&b)? - &target).is_negligible() {
                return Err(FormError::Internal("type-a basis does not normalize the form".into()));
            }
            NormalFormBasis::Exact(b)
        }
        ComplexStructure::Scaled { j, .. } => {
            let mf = m.map(Scalar::to_f64_lossy);
            let b = complex_basis(&mf, j)?;
            let residual = max_abs_diff(&mf.pullback(&b)?, &target.map(Scalar::to_f64_lossy));
            if residual >= FLOAT_RESIDUAL {
                return Err(FormError::Internal(format!(
                    "type-a floating basis residual {residual:e}"
                )));
            }
            NormalFormBasis::Float { basis: b, residual }
        }
    };
    Ok((cs, basis))
}

fn max_abs_diff(a: &ExteriorForm<f64>, b: &ExteriorForm<f64>) -> f64 {
    (a - b).terms().values().map(|x| x.abs()).fold(0.0, f64::max)
}

/// Columns `[J u1, u3, J u2, u1, J u3, u2]` for a complex basis
/// `u1, u2, u3` with `Omega(u1, u2, u3) = 1`, `Omega = m - i m(J., ., .)`.
///
/// The `u_i` are picked greedily from `e4, e6, e2, e1, e3, e5`, so the
/// canonical form gets the identity, and `u1` is then rescaled by the
/// complex number `1 / Omega(u1, u2, u3)`.
fn complex_basis<U: Scalar>(m: &ExteriorForm<U>, j: &Mat<U>) -> Result<Mat<U>> {
    let n = 6;
    let mut chosen: Vec<Vec<U>> = Vec::new();
    let mut span: Vec<Vec<U>> = Vec::new();
    for k in [3, 5, 1, 0, 2, 4] {
        let u = unit(n, k);
        let ju = j.mul_vec(&u);
        let mut trial = span.clone();
        trial.push(u.clone());
        trial.push(ju.clone());
        if Mat::from_rows(trial.clone()).rank() == trial.len() {
            span = trial;
            chosen.push(u);
        }
        if chosen.len() == 3 {
            break;
        }
    }
    if chosen.len() != 3 {
        return Err(FormError::Internal("no complex basis for J".into()));
    }
    let omega = |u: &[Vec<U>]| -> Result<(U, U)> {
        let re = m.evaluate(u)?;
        let ju0 = j.mul_vec(&u[0]);
        let im = -m.evaluate(&[ju0, u[1].clone(), u[2].clone()])?;
        Ok((re, im))
    };
    let (a, b) = omega(&chosen)?;
    let norm = a.clone() * a.clone() + b.clone() * b.clone();
    if norm.is_negligible() {
        return Err(FormError::Internal("complex volume vanishes on a complex basis".into()));
    }
    let ju1 = j.mul_vec(&chosen[0]);
    let u1: Vec<U> = chosen[0]
        .iter()
        .zip(&ju1)
        .map(|(x, y)| (a.clone() * x.clone() - b.clone() * y.clone()) / norm.clone())
        .collect();
    let (u2, u3) = (chosen[1].clone(), chosen[2].clone());
    let cols = vec![
        j.mul_vec(&u1),
        u3.clone(),
        j.mul_vec(&u2),
        u1,
        j.mul_vec(&u3),
        u2,
    ];
    Ok(Mat::from_cols(n, &cols))
}

fn type_b<T: Scalar>(m: &ExteriorForm<T>, disc: &Discriminant<T>) -> Result<TypeBInvariants<T>> {
    let k = &disc.k;
    let h = Subspace::span(6, Variance::Vector, &k.null_space());
    let image = Subspace::from_matrix(Variance::Vector, &k.transpose());
    if h.dim() != 3 || !h.same_as(&image) {
        return Err(FormError::Internal("K is not a square-zero map of rank three".into()));
    }
    let h_prime = h.polar();
    for eta in h_prime.basis_vectors() {
        if !wedge_is_decomposable(&ExteriorForm::from_coords(Variance::Form, &eta), m)? {
            return Err(FormError::Internal("a covector of H' fails the Plucker test".into()));
        }
    }
    let etas: Vec<ExteriorForm<T>> = h_prime
        .basis_vectors()
        .iter()
        .map(|v| ExteriorForm::from_coords(Variance::Form, v))
        .collect();
    let two_form_basis = vec![
        etas[1].wedge(&etas[0])?,
        etas[2].wedge(&etas[1])?,
        etas[0].wedge(&etas[2])?,
    ];
    let dense: Vec<Vec<T>> = two_form_basis.iter().map(ExteriorForm::to_dense).collect();
    let system = Mat::from_cols(dense[0].len(), &dense);
    let mut cols = Vec::new();
    for v in h.basis_vectors() {
        let image = m.interior(&v)?.to_dense();
        let x = system
            .solve(&image)
            .ok_or_else(|| FormError::Internal("contraction with H leaves Lambda^2 H'".into()))?;
        cols.push(x);
    }
    let theta = Mat::from_cols(3, &cols);
    if theta.det().is_negligible() {
        return Err(FormError::Internal("Theta is not invertible".into()));
    }
    Ok(TypeBInvariants {
        h,
        h_prime,
        theta,
        two_form_basis,
    })
}

fn type_b_basis<T: Scalar>(m: &ExteriorForm<T>, inv: &TypeBInvariants<T>) -> Result<Mat<T>> {
    let pivots = inv.h_prime.pivots();
    let theta_inv = inv.theta.inverse().ok_or_else(|| FormError::Internal("Theta singular".into()))?;
    let hb = inv.h.basis_vectors();
    let h_vec = |a: usize| -> Vec<T> {
        (0..6)
            .map(|i| (0..3).fold(T::zero(), |acc, b| acc + theta_inv[(b, a)].clone() * hb[b][i].clone()))
            .collect()
    };
    let (f2, f4, f6) = (h_vec(0), h_vec(1), h_vec(2));
    let (f3, f5) = (unit(6, pivots[1]), unit(6, pivots[2]));
    let mut f1 = unit::<T>(6, pivots[0]);
    let c = m.evaluate(&[f1.clone(), f3.clone(), f5.clone()])?;
    for i in 0..6 {
        f1[i] = f1[i].clone() + c.clone() * f4[i].clone();
    }
    let basis = Mat::from_cols(6, &[f1, f2, f3, f4, f5, f6]);
    if m.pullback(&basis)? != ThreeFormType::Degenerate3.canonical() {
        return Err(FormError::Internal("type-b basis does not normalize the form".into()));
    }
    Ok(basis)
}

/// Splitting and normal-form basis from `K / s` with `s = sqrt(lambda)`.
fn split_real<U: Scalar>(m: &ExteriorForm<U>, k_over_s: &Mat<U>) -> Result<(StablePair<U>, Mat<U>)> {
    let id = Mat::identity(6);
    let plus = Subspace::span(6, Variance::Vector, &k_over_s.sub(&id).null_space());
    let minus = Subspace::span(6, Variance::Vector, &k_over_s.add(&id).null_space());
    if plus.dim() != 3 || minus.dim() != 3 {
        return Err(FormError::Internal("K has no pair of 3-dimensional eigenspaces".into()));
    }
    let mut cols = minus.basis_vectors();
    cols.extend(plus.basis_vectors());
    let b = Mat::from_cols(6, &cols);
    let b_inv = b.inverse().ok_or_else(|| FormError::Internal("eigenspaces are not transverse".into()))?;
    let projector = |keep_minus: bool| -> Mat<U> {
        let d = Mat::from_fn(6, 6, |i, j| {
            if i == j && (i < 3) == keep_minus {
                U::one()
            } else {
                U::zero()
            }
        });
        b.mul(&d).mul(&b_inv)
    };
    // eta+ vanishes on H+, so it is m pulled back along the projection onto
    // H- with kernel H+.
    let eta_plus = m.pullback(&projector(true))?;
    let eta_minus = m.pullback(&projector(false))?;
    let mut g: Vec<Vec<U>> = minus.basis_vectors();
    let mut h: Vec<Vec<U>> = plus.basis_vectors();
    for set in [&mut g, &mut h] {
        let v = m.evaluate(&set[..])?;
        if v.is_negligible() {
            return Err(FormError::Internal("form vanishes on an eigenspace".into()));
        }
        set[0] = set[0].iter().map(|x| x.clone() / v.clone()).collect();
    }
    g.extend(h);
    let basis = Mat::from_cols(6, &g);
    Ok((
        StablePair {
            plus: StableHalf { h: plus, eta: eta_plus },
            minus: StableHalf { h: minus, eta: eta_minus },
        },
        basis,
    ))
}

fn type_c<T: Scalar>(
    m: &ExteriorForm<T>,
    disc: &Discriminant<T>,
) -> Result<(RealSplit<T>, NormalFormBasis<T>)> {
    let target = ThreeFormType::RealStable.canonical::<T>();
    match disc.lambda.sqrt_exact() {
        Some(s) => {
            let (pair, basis) = split_real(m, &disc.k.scale(&(T::one() / s)))?;
            if !(&m.pullback(&basis)? - &target).is_negligible() {
                return Err(FormError::Internal("type-c basis does not normalize the form".into()));
            }
            Ok((RealSplit::Exact(pair), NormalFormBasis::Exact(basis)))
        }
        None => {
            let s = disc.lambda.to_f64_lossy().sqrt();
            let mf = m.map(Scalar::to_f64_lossy);
            let (pair, basis) = split_real(&mf, &disc.k.map(|x| x.to_f64_lossy() / s))?;
            let residual = max_abs_diff(&mf.pullback(&basis)?, &target.map(Scalar::to_f64_lossy));
            if residual >= FLOAT_RESIDUAL {
                return Err(FormError::Internal(format!(
                    "type-c floating basis residual {residual:e}"
                )));
            }
            Ok((RealSplit::Float(pair), NormalFormBasis::Float { basis, residual }))
        }
    }
}

fn type_d<T: Scalar>(m: &ExteriorForm<T>) -> Result<(TypeInvariants<T>, Mat<T>)> {
    let prof = profile(m);
    if prof.divisors.dim() != 1 {
        return Err(FormError::Internal("type-d form without a unique divisor".into()));
    }
    let fac = indivisible_factorization(m, &prof)?;
    let divisor = fac.volume_factor[0].clone();
    let d = prof.divisibility.clone();
    let zeta_d = restrict_to(&fac.indivisible, &d)?;
    let darboux = linear_darboux(&zeta_d)?;
    if darboux.half_rank != 2 {
        return Err(FormError::Internal("indivisible factor restricted to D is not of rank 4".into()));
    }
    let inner = d.basis().transpose().mul(&darboux.basis);
    let pivot = prof.divisors.pivots()[0];
    let mut cols = vec![unit(6, pivot)];
    cols.extend((0..5).map(|a| inner.col(a)));
    let basis = Mat::from_cols(6, &cols);
    if m.pullback(&basis)? != ThreeFormType::OneDivisor.canonical() {
        return Err(FormError::Internal("type-d basis does not normalize the form".into()));
    }
    debug_assert_eq!(zeta_d.pullback(&darboux.basis)?, standard_symplectic(5, 2));
    Ok((
        TypeInvariants::OneDivisor {
            divisibility: d,
            divisor,
            zeta: fac.indivisible,
        },
        basis,
    ))
}

fn type_e<T: Scalar>(m: &ExteriorForm<T>) -> Result<(Vec<ExteriorForm<T>>, Mat<T>)> {
    let prof = profile(m);
    let factors = factor_decomposable(m, &prof)?;
    let pivots = prof.image.pivots();
    let mut rows: Vec<Vec<T>> = factors.iter().map(|f| f.coords()).collect::<Result<_>>()?;
    rows.extend((0..6).filter(|j| !pivots.contains(j)).map(|j| unit(6, j)));
    let basis = Mat::from_rows(rows)
        .inverse()
        .ok_or_else(|| FormError::Internal("factors are dependent".into()))?;
    if m.pullback(&basis)? != ThreeFormType::Decomposable.canonical() {
        return Err(FormError::Internal("type-e basis does not normalize the form".into()));
    }
    Ok((factors, basis))
}
