use super::LieAlgebra;
use crate::error::{FormError, Result};
use crate::exterior::{ExteriorForm, Variance};
use crate::linalg::Mat;
use crate::scalar::rat;
use crate::{Form, Q};

/// Built-in algebras and forms.
///
/// - `sl2`: basis `(h, e, f)` with `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
/// - `su2`: `[e_i, e_j] = ε_ijk e_k`.
/// - `sl3`: `E11-E22, E22-E33, E12, E13, E23, E21, E31, E32`.
/// - `su3`: `E12-E21, E13-E31, E23-E32, i(E12+E21), i(E13+E31), i(E23+E32),
///   i(E11-E22), i(E22-E33)`.
/// - `sl3+sl3`: two copies of `sl3`, the second on `e9..e16`.
/// - `abelian-N`: zero brackets in dimension `N`.
/// - `nilpotent-a`: `[e1,e2] = e5`, `[e1,e3] = e6`, with the invariant
///   3-form `xi123 + xi345 + xi561 + xi246`.
/// - `nilpotent-b`: `[e2,e4] = e1`, `[e6,e2] = e3`, with
///   `xi123 + xi345 + xi561`.
/// - `nilpotent-c`: `[e1,e2] = e6`, `[e5,e4] = e3`, with `xi123 + xi456`.
/// - `g2-form`: the 3-form on `Q^7` whose stabilizer is `G2`.
/// - `spin7-form`: the 4-form on `Q^8` whose stabilizer is `Spin(7)`.
pub const CATALOG_NAMES: &[&str] = &[
    "sl2",
    "su2",
    "sl3",
    "su3",
    "sl3+sl3",
    "abelian-N",
    "nilpotent-a",
    "nilpotent-b",
    "nilpotent-c",
    "g2-form",
    "spin7-form",
];

#[derive(Clone, Debug, PartialEq)]
pub enum CatalogEntry {
    Algebra {
        algebra: LieAlgebra<Q>,
        /// Invariant form attached to the algebra, if any.
        form: Option<Form>,
    },
    Form(Form),
}

impl CatalogEntry {
    pub fn algebra(&self) -> Option<&LieAlgebra<Q>> {
        match self {
            CatalogEntry::Algebra { algebra, .. } => Some(algebra),
            CatalogEntry::Form(_) => None,
        }
    }

    pub fn form(&self) -> Option<&Form> {
        match self {
            CatalogEntry::Algebra { form, .. } => form.as_ref(),
            CatalogEntry::Form(f) => Some(f),
        }
    }
}

fn brackets(n: usize, list: &[(usize, usize, usize, i64)]) -> LieAlgebra<Q> {
    let list: Vec<_> = list.iter().map(|&(i, j, k, c)| (i, j, k, rat(c, 1))).collect();
    LieAlgebra::from_brackets(n, &list).expect("valid built-in brackets")
}

fn signed_sum(n: usize, terms: &[(i64, &[usize])]) -> Form {
    terms.iter().fold(Form::zero(n, terms[0].1.len(), Variance::Form), |acc, (c, idx)| {
        acc + ExteriorForm::monomial(n, Variance::Form, idx, rat(*c, 1))
    })
}

fn elementary(n: usize, i: usize, j: usize) -> Mat<Q> {
    let mut m = Mat::zeros(n, n);
    m[(i, j)] = rat(1, 1);
    m
}

pub(crate) fn sl3() -> LieAlgebra<Q> {
    let e = |i, j| elementary(3, i, j);
    let mats = vec![
        e(0, 0).sub(&e(1, 1)),
        e(1, 1).sub(&e(2, 2)),
        e(0, 1),
        e(0, 2),
        e(1, 2),
        e(1, 0),
        e(2, 0),
        e(2, 1),
    ];
    LieAlgebra::from_matrix_basis(&mats).expect("sl3 is closed")
}

/// `X + iY` as the real block matrix `[[X, -Y], [Y, X]]`.
fn realify(x: &Mat<Q>, y: &Mat<Q>) -> Mat<Q> {
    let n = x.rows();
    Mat::from_fn(2 * n, 2 * n, |a, b| match (a < n, b < n) {
        (true, true) => x[(a, b)].clone(),
        (true, false) => -y[(a, b - n)].clone(),
        (false, true) => y[(a - n, b)].clone(),
        (false, false) => x[(a - n, b - n)].clone(),
    })
}

pub(crate) fn su3() -> LieAlgebra<Q> {
    let e = |i, j| elementary(3, i, j);
    let zero = Mat::zeros(3, 3);
    let mut mats = Vec::new();
    for &(j, k) in &[(0, 1), (0, 2), (1, 2)] {
        mats.push(realify(&e(j, k).sub(&e(k, j)), &zero));
    }
    for &(j, k) in &[(0, 1), (0, 2), (1, 2)] {
        mats.push(realify(&zero, &e(j, k).add(&e(k, j))));
    }
    mats.push(realify(&zero, &e(0, 0).sub(&e(1, 1))));
    mats.push(realify(&zero, &e(1, 1).sub(&e(2, 2))));
    LieAlgebra::from_matrix_basis(&mats).expect("su3 is closed")
}

pub fn catalog(name: &str) -> Result<CatalogEntry> {
    let algebra = |algebra| CatalogEntry::Algebra { algebra, form: None };
    let with_form = |algebra, form| CatalogEntry::Algebra {
        algebra,
        form: Some(form),
    };
    let entry = match name {
        "sl2" => algebra(brackets(3, &[(1, 2, 2, 2), (1, 3, 3, -2), (2, 3, 1, 1)])),
        "su2" => algebra(brackets(3, &[(1, 2, 3, 1), (2, 3, 1, 1), (3, 1, 2, 1)])),
        "sl3" => algebra(sl3()),
        "su3" => algebra(su3()),
        "sl3+sl3" => {
            let s = sl3();
            algebra(s.direct_sum(&s))
        }
        "nilpotent-a" => with_form(
            brackets(6, &[(1, 2, 5, 1), (1, 3, 6, 1)]),
            Form::sum_of(6, Variance::Form, &[&[1, 2, 3], &[3, 4, 5], &[5, 6, 1], &[2, 4, 6]]),
        ),
        "nilpotent-b" => with_form(
            brackets(6, &[(2, 4, 1, 1), (6, 2, 3, 1)]),
            Form::sum_of(6, Variance::Form, &[&[1, 2, 3], &[3, 4, 5], &[5, 6, 1]]),
        ),
        "nilpotent-c" => with_form(
            brackets(6, &[(1, 2, 6, 1), (5, 4, 3, 1)]),
            Form::sum_of(6, Variance::Form, &[&[1, 2, 3], &[4, 5, 6]]),
        ),
        "g2-form" => CatalogEntry::Form(signed_sum(
            7,
            &[
                (1, &[1, 2, 3]),
                (1, &[1, 4, 5]),
                (1, &[1, 6, 7]),
                (1, &[2, 4, 6]),
                (-1, &[2, 5, 7]),
                (-1, &[3, 4, 7]),
                (-1, &[3, 5, 6]),
            ],
        )),
        "spin7-form" => CatalogEntry::Form(signed_sum(
            8,
            &[
                (1, &[1, 2, 3, 4]),
                (1, &[1, 2, 5, 6]),
                (1, &[1, 2, 7, 8]),
                (1, &[1, 3, 5, 7]),
                (-1, &[1, 3, 6, 8]),
                (-1, &[1, 4, 5, 8]),
                (-1, &[1, 4, 6, 7]),
                (-1, &[2, 3, 5, 8]),
                (-1, &[2, 3, 6, 7]),
                (-1, &[2, 4, 5, 7]),
                (1, &[2, 4, 6, 8]),
                (1, &[3, 4, 5, 6]),
                (1, &[3, 4, 7, 8]),
                (1, &[5, 6, 7, 8]),
            ],
        )),
        other => match other.strip_prefix("abelian-").map(str::parse::<usize>) {
            Some(Ok(n)) if n <= crate::exterior::MAX_DIM => algebra(LieAlgebra::abelian(n)),
            _ => return Err(FormError::UnknownCatalog(name.to_string())),
        },
    };
    Ok(entry)
}
