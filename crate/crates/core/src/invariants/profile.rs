use crate::exterior::{ExteriorForm, IndexSet};
use crate::linalg::{Mat, Subspace};
use crate::scalar::Scalar;

/// Kernel, image and divisibility data of a form.
///
/// For a form on `V`: `kernel` and `divisibility` live in `V`, `image` and
/// `divisors` in `V*`. For a multivector the roles are swapped.
#[derive(Clone, Debug, PartialEq)]
pub struct FormProfile<T> {
    pub dim: usize,
    pub degree: usize,
    pub rank: usize,
    pub kernel: Subspace<T>,
    pub image: Subspace<T>,
    /// The divisibility space `D`, polar to `divisors`.
    pub divisibility: Subspace<T>,
    /// The linear divisors `D'`: all `xi` with `xi ^ mu = 0`.
    pub divisors: Subspace<T>,
    pub decomposable: bool,
    pub indivisible: bool,
}

impl<T: Scalar> FormProfile<T> {
    /// `n - rank`.
    pub fn corank(&self) -> usize {
        self.dim - self.rank
    }

    /// Number of independent linear divisors, `n - dim D`.
    pub fn divisor_count(&self) -> usize {
        self.divisors.dim()
    }
}

/// Matrix of `v -> contract(m, v)`: one row per `(p-1)`-set occurring in
/// the contractions, one column per basis vector. Its null space is the
/// kernel and its row space the image.
pub fn contraction_matrix<T: Scalar>(m: &ExteriorForm<T>) -> Mat<T> {
    let n = m.dim();
    let mut keys: Vec<IndexSet> = Vec::new();
    for set in m.terms().keys() {
        for i in set.iter() {
            keys.push(set.without(i));
        }
    }
    keys.sort();
    keys.dedup();
    let mut mat = Mat::zeros(keys.len(), n);
    for (set, c) in m.terms() {
        for j in set.iter() {
            let rest = set.without(j);
            let row = keys.binary_search(&rest).expect("key collected above");
            let sign = IndexSet::singleton(j).merge_sign(rest).expect("disjoint");
            mat[(row, j)] = if sign > 0 { c.clone() } else { -c.clone() };
        }
    }
    mat
}

/// Matrix of `xi -> xi ^ m` on the dual space, restricted to the rows that
/// can be nonzero.
fn divisor_matrix<T: Scalar>(m: &ExteriorForm<T>) -> Mat<T> {
    let n = m.dim();
    let mut keys: Vec<IndexSet> = Vec::new();
    for set in m.terms().keys() {
        for i in 0..n {
            if !set.contains(i) {
                keys.push(set.with(i));
            }
        }
    }
    keys.sort();
    keys.dedup();
    let mut mat: Mat<T> = Mat::zeros(keys.len(), n);
    for (set, c) in m.terms() {
        for i in 0..n {
            if set.contains(i) {
                continue;
            }
            let row = keys.binary_search(&set.with(i)).expect("key collected above");
            let sign = IndexSet::singleton(i).merge_sign(*set).expect("disjoint");
            let v = if sign > 0 { c.clone() } else { -c.clone() };
            mat[(row, i)] = mat[(row, i)].clone() + v;
        }
    }
    mat
}

/// Rank, kernel, image and divisibility spaces of `m`.
///
/// The zero form gets rank 0, kernel `V` and `D = {0}`. A nonzero constant
/// has rank 0, kernel `V` and `D = V`.
pub fn profile<T: Scalar>(m: &ExteriorForm<T>) -> FormProfile<T> {
    let n = m.dim();
    let p = m.degree();
    let own = m.variance().dual();
    let dual = m.variance();
    if m.is_zero() {
        return FormProfile {
            dim: n,
            degree: p,
            rank: 0,
            kernel: Subspace::full(n, own),
            image: Subspace::zero(n, dual),
            divisibility: Subspace::zero(n, own),
            divisors: Subspace::full(n, dual),
            decomposable: false,
            indivisible: n == 0,
        };
    }
    let (kernel, image) = if p == 0 {
        (Subspace::full(n, own), Subspace::zero(n, dual))
    } else {
        let c = contraction_matrix(m);
        (
            Subspace::span(n, own, &c.null_space()),
            Subspace::from_matrix(dual, &c),
        )
    };
    let divisors = if p == n {
        Subspace::full(n, dual)
    } else {
        Subspace::span(n, dual, &divisor_matrix(m).null_space())
    };
    let divisibility = divisors.polar();
    let rank = n - kernel.dim();
    FormProfile {
        dim: n,
        degree: p,
        rank,
        decomposable: rank == p,
        indivisible: divisibility.dim() == n,
        kernel,
        image,
        divisibility,
        divisors,
    }
}
