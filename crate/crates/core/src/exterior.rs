//! Sparse exterior algebra over `T^n`.
//!
//! Forms and multivectors share [`ExteriorForm`], distinguished by
//! [`Variance`]. Terms are keyed by [`IndexSet`]s and zero coefficients are
//! never stored. The product convention is the determinant one:
//! `(xi^1 ^ ... ^ xi^p)(v_1, ..., v_p) = det[xi^i(v_j)]`.
//!
//! Public index arguments named `one_based` or taking `&[usize]` slices of
//! basis labels are 1-based; matrix indices are 0-based.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{FormError, Result};
use crate::linalg::Mat;
use crate::scalar::{factorial, Scalar};

/// Largest supported dimension.
pub const MAX_DIM: usize = 64;

/// Whether an object lives in `Lambda V*` (forms) or `Lambda V`
/// (multivectors).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variance {
    Form,
    Vector,
}

impl Variance {
    pub fn dual(self) -> Self {
        match self {
            Variance::Form => Variance::Vector,
            Variance::Vector => Variance::Form,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Variance::Form => "form",
            Variance::Vector => "vector",
        }
    }
}

/// Strictly increasing set of 0-based indices, stored as a bitmask.
///
/// Ordered lexicographically as increasing tuples, which is also the order
/// of [`subsets`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct IndexSet(u64);

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        IndexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// From 0-based indices; `None` on repeats or out-of-range entries.
    pub fn from_zero_based(idx: &[usize]) -> Option<Self> {
        let mut bits = 0u64;
        for &i in idx {
            if i >= MAX_DIM || bits & (1 << i) != 0 {
                return None;
            }
            bits |= 1 << i;
        }
        Some(IndexSet(bits))
    }

    /// From 1-based labels; `None` on repeats, zero, or out-of-range labels.
    pub fn from_one_based(idx: &[usize]) -> Option<Self> {
        if idx.contains(&0) {
            return None;
        }
        let zb: Vec<usize> = idx.iter().map(|i| i - 1).collect();
        Self::from_zero_based(&zb)
    }

    pub fn singleton(i: usize) -> Self {
        IndexSet(1 << i)
    }

    /// `{0, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        if n == 64 {
            IndexSet(u64::MAX)
        } else {
            IndexSet((1u64 << n) - 1)
        }
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_DIM && self.0 & (1 << i) != 0
    }

    pub fn max_index(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn one_based(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    pub fn union(self, other: Self) -> Self {
        IndexSet(self.0 | other.0)
    }

    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn minus(self, other: Self) -> Self {
        IndexSet(self.0 & !other.0)
    }

    pub fn with(self, i: usize) -> Self {
        IndexSet(self.0 | (1 << i))
    }

    pub fn without(self, i: usize) -> Self {
        IndexSet(self.0 & !(1 << i))
    }

    pub fn complement(self, n: usize) -> Self {
        IndexSet::full(n).minus(self)
    }

    /// Number of elements strictly between `a` and `b`.
    pub fn count_between(self, a: usize, b: usize) -> usize {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        if hi <= lo + 1 {
            return 0;
        }
        let mask = ((1u64 << hi) - 1) & !((1u64 << (lo + 1)) - 1);
        (self.0 & mask).count_ones() as usize
    }

    /// Parity of the pairs `(i, j)` with `i` in `self`, `j` in `other` and
    /// `i > j`: the sign of concatenating the two increasing tuples.
    /// `None` when the sets overlap.
    pub fn merge_sign(self, other: Self) -> Option<i8> {
        if self.intersects(other) {
            return None;
        }
        let mut inversions = 0u32;
        for j in other.iter() {
            let above = if j >= 63 { 0 } else { !((1u64 << (j + 1)) - 1) };
            inversions += (self.0 & above).count_ones();
        }
        Some(if inversions.is_multiple_of(2) { 1 } else { -1 })
    }
}

impl Ord for IndexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let low = diff & diff.wrapping_neg();
        if self.0 & low != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for IndexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All `p`-subsets of `{0, ..., n-1}` in lexicographic order.
pub fn subsets(n: usize, p: usize) -> Vec<IndexSet> {
    let mut out = Vec::new();
    if p > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..p).collect();
    loop {
        out.push(IndexSet::from_zero_based(&idx).expect("distinct"));
        let mut k = p;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if idx[k] < n - p + k {
                idx[k] += 1;
                for l in k + 1..p {
                    idx[l] = idx[l - 1] + 1;
                }
                break;
            }
        }
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn signed<T: Scalar>(c: T, sign: i8) -> T {
    if sign < 0 {
        -c
    } else {
        c
    }
}

/// A homogeneous element of `Lambda^p V*` or `Lambda^p V` with `V = T^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExteriorForm<T> {
    dim: usize,
    degree: usize,
    variance: Variance,
    terms: BTreeMap<IndexSet, T>,
}

impl<T: Scalar> ExteriorForm<T> {
    pub fn zero(dim: usize, degree: usize, variance: Variance) -> Self {
        assert!(dim <= MAX_DIM, "dimension above {MAX_DIM}");
        assert!(degree <= dim, "degree {degree} above dimension {dim}");
        ExteriorForm {
            dim,
            degree,
            variance,
            terms: BTreeMap::new(),
        }
    }

    /// Degree-0 object with value `c`.
    pub fn scalar(dim: usize, variance: Variance, c: T) -> Self {
        let mut f = Self::zero(dim, 0, variance);
        f.add_term(IndexSet::EMPTY, c);
        f
    }

    /// `c * xi^{i_1} ^ ... ^ xi^{i_p}` for 1-based labels in any order; the
    /// sign of the sorting permutation is applied.
    pub fn monomial(dim: usize, variance: Variance, one_based: &[usize], c: T) -> Self {
        let mut f = Self::zero(dim, one_based.len(), variance);
        let set = IndexSet::from_one_based(one_based).expect("repeated or zero index");
        assert!(set.max_index().is_none_or(|m| m < dim), "index above dimension");
        let mut sign = 1i8;
        for a in 0..one_based.len() {
            for b in a + 1..one_based.len() {
                if one_based[a] > one_based[b] {
                    sign = -sign;
                }
            }
        }
        f.add_term(set, signed(c, sign));
        f
    }

    /// The basis covector `xi^i` (1-based).
    pub fn xi(dim: usize, i: usize) -> Self {
        Self::monomial(dim, Variance::Form, &[i], T::one())
    }

    /// The basis vector `e_i` (1-based).
    pub fn e(dim: usize, i: usize) -> Self {
        Self::monomial(dim, Variance::Vector, &[i], T::one())
    }

    /// Sum of unit-coefficient monomials, each given by 1-based labels.
    pub fn sum_of(dim: usize, variance: Variance, monomials: &[&[usize]]) -> Self {
        let degree = monomials.first().map_or(0, |m| m.len());
        monomials.iter().fold(Self::zero(dim, degree, variance), |acc, m| {
            acc + Self::monomial(dim, variance, m, T::one())
        })
    }

    /// Degree-1 object with the given coordinates.
    pub fn from_coords(variance: Variance, v: &[T]) -> Self {
        let mut f = Self::zero(v.len(), 1, variance);
        for (i, c) in v.iter().enumerate() {
            f.add_term(IndexSet::singleton(i), c.clone());
        }
        f
    }

    /// Build from `(set, coefficient)` pairs; repeated keys are summed.
    pub fn from_terms(
        dim: usize,
        degree: usize,
        variance: Variance,
        terms: impl IntoIterator<Item = (IndexSet, T)>,
    ) -> Result<Self> {
        let mut f = Self::zero(dim, degree, variance);
        for (set, c) in terms {
            if set.len() != degree || set.max_index().is_some_and(|m| m >= dim) {
                return Err(FormError::Precondition(format!(
                    "index set {:?} does not fit degree {degree} in dimension {dim}",
                    set.one_based()
                )));
            }
            f.add_term(set, c);
        }
        Ok(f)
    }

    /// 2-form or bivector `sum_{i<j} S_ij xi^i ^ xi^j` from a skew matrix.
    pub fn from_skew_matrix(variance: Variance, s: &Mat<T>) -> Self {
        let n = s.rows();
        let mut f = Self::zero(n, 2, variance);
        for i in 0..n {
            for j in i + 1..n {
                f.add_term(IndexSet::singleton(i).with(j), s[(i, j)].clone());
            }
        }
        f
    }

    /// Gram matrix `S_ij = sigma(e_i, e_j)` of a degree-2 object.
    pub fn skew_matrix(&self) -> Result<Mat<T>> {
        if self.degree != 2 {
            return Err(FormError::Precondition("skew matrix needs degree 2".into()));
        }
        let mut s = Mat::zeros(self.dim, self.dim);
        for (set, c) in &self.terms {
            let v = set.to_vec();
            s[(v[0], v[1])] = c.clone();
            s[(v[1], v[0])] = -c.clone();
        }
        Ok(s)
    }

    /// Coordinates of a degree-1 object.
    pub fn coords(&self) -> Result<Vec<T>> {
        if self.degree != 1 {
            return Err(FormError::Precondition("coordinates need degree 1".into()));
        }
        let mut v = vec![T::zero(); self.dim];
        for (set, c) in &self.terms {
            v[set.iter().next().expect("degree one")] = c.clone();
        }
        Ok(v)
    }

    fn add_term(&mut self, set: IndexSet, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&set) {
            Some(old) => {
                *old = old.clone() + c;
                if old.is_zero() {
                    self.terms.remove(&set);
                }
            }
            None => {
                self.terms.insert(set, c);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn terms(&self) -> &BTreeMap<IndexSet, T> {
        &self.terms
    }

    pub fn nnz(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Zero test with the field's tolerance.
    pub fn is_negligible(&self) -> bool {
        self.terms.values().all(Scalar::is_negligible)
    }

    pub fn coeff(&self, set: IndexSet) -> T {
        self.terms.get(&set).cloned().unwrap_or_else(T::zero)
    }

    /// Coefficient at 1-based labels, with the sorting sign applied.
    pub fn coeff_at(&self, one_based: &[usize]) -> T {
        let probe = Self::monomial(self.dim, self.variance, one_based, T::one());
        let (set, sign) = probe.terms.iter().next().expect("unit monomial");
        self.coeff(*set) * sign.clone()
    }

    /// Value of a degree-0 object.
    pub fn scalar_value(&self) -> Option<T> {
        (self.degree == 0).then(|| self.coeff(IndexSet::EMPTY))
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    /// Apply `f` to every coefficient, dropping those that become zero.
    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> ExteriorForm<U> {
        let mut out = ExteriorForm::zero(self.dim, self.degree, self.variance);
        for (set, c) in &self.terms {
            out.add_term(*set, f(c));
        }
        out
    }

    /// Same coefficients regarded with the other variance.
    pub fn with_variance(&self, variance: Variance) -> Self {
        ExteriorForm {
            variance,
            ..self.clone()
        }
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(FormError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        if self.variance != other.variance {
            return Err(FormError::VarianceMismatch(
                "both operands must be forms or both multivectors".into(),
            ));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        if self.degree != other.degree {
            return Err(FormError::Precondition(format!(
                "cannot add degree {} and degree {}",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        for (set, c) in &other.terms {
            out.add_term(*set, c.clone());
        }
        Ok(out)
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        let degree = self.degree + other.degree;
        if degree > self.dim {
            return Err(FormError::Precondition(format!(
                "degree {degree} exceeds dimension {}",
                self.dim
            )));
        }
        let mut out = Self::zero(self.dim, degree, self.variance);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some(sign) = a.merge_sign(*b) {
                    out.add_term(a.union(*b), signed(ca.clone() * cb.clone(), sign));
                }
            }
        }
        Ok(out)
    }

    /// `self ^ ... ^ self` (`k` factors); `k = 0` gives 1.
    pub fn wedge_power(&self, k: usize) -> Result<Self> {
        let mut out = Self::scalar(self.dim, self.variance, T::one());
        for _ in 0..k {
            out = out.wedge(self)?;
        }
        Ok(out)
    }

    /// `self^k / k!`.
    pub fn divided_power(&self, k: usize) -> Result<Self> {
        Ok(self.wedge_power(k)?.scale(&(T::one() / factorial::<T>(k))))
    }

    /// Pairing of a form with a multivector: the lower-degree operand is
    /// contracted into the initial slots of the higher-degree one.
    ///
    /// `contract(xi^1 ^ xi^2, e_2) = -xi^1`. The result has the variance of
    /// the higher-degree operand; equal degrees give a degree-0 form.
    pub fn contract(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(FormError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        if self.variance == other.variance {
            return Err(FormError::VarianceMismatch(
                "contraction pairs a form with a multivector".into(),
            ));
        }
        let (small, large) = if self.degree <= other.degree {
            (self, other)
        } else {
            (other, self)
        };
        let variance = if small.degree == large.degree {
            Variance::Form
        } else {
            large.variance
        };
        let mut out = Self::zero(self.dim, large.degree - small.degree, variance);
        for (l, cl) in &large.terms {
            for (s, cs) in &small.terms {
                if !s.is_subset_of(*l) {
                    continue;
                }
                let rest = l.minus(*s);
                let sign = s.merge_sign(rest).expect("disjoint");
                out.add_term(rest, signed(cl.clone() * cs.clone(), sign));
            }
        }
        Ok(out)
    }

    /// Interior product with the vector (or covector) of coordinates `v`.
    pub fn interior(&self, v: &[T]) -> Result<Self> {
        if v.len() != self.dim {
            return Err(FormError::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        self.contract(&Self::from_coords(self.variance.dual(), v))
    }

    /// Value on `p` vectors (or covectors) given by coordinates.
    pub fn evaluate(&self, vectors: &[Vec<T>]) -> Result<T> {
        if vectors.len() != self.degree {
            return Err(FormError::Precondition(format!(
                "expected {} arguments, got {}",
                self.degree,
                vectors.len()
            )));
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != self.dim) {
            return Err(FormError::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        let p = self.degree;
        let mut total = T::zero();
        for (set, c) in &self.terms {
            let idx = set.to_vec();
            let minor = Mat::from_fn(p, p, |a, b| vectors[b][idx[a]].clone());
            total = total + c.clone() * minor.det();
        }
        Ok(total)
    }

    /// Pullback of a form along the linear map `L`: `xi^i` becomes
    /// `sum_j L_ij eta^j`, where `L` has one row per dimension of `self` and
    /// one column per dimension of the new space.
    pub fn pullback(&self, l: &Mat<T>) -> Result<Self> {
        if self.variance != Variance::Form {
            return Err(FormError::VarianceMismatch("pullback applies to forms".into()));
        }
        if l.rows() != self.dim {
            return Err(FormError::DimensionMismatch {
                expected: self.dim,
                found: l.rows(),
            });
        }
        let new_dim = l.cols();
        let p = self.degree;
        if p > new_dim {
            return Err(FormError::Precondition(format!(
                "cannot pull a {p}-form back to dimension {new_dim}"
            )));
        }
        let targets = subsets(new_dim, p);
        let mut out = Self::zero(new_dim, p, Variance::Form);
        for (set, c) in &self.terms {
            let rows = set.to_vec();
            for t in &targets {
                let cols = t.to_vec();
                let minor = Mat::from_fn(p, p, |a, b| l[(rows[a], cols[b])].clone());
                let d = minor.det();
                if !d.is_zero() {
                    out.add_term(*t, c.clone() * d);
                }
            }
        }
        Ok(out)
    }

    /// Action of `A` in `gl(V)` as a derivation:
    /// `(A mu)(v_1, ..., v_p) = sum_i mu(v_1, ..., A v_i, ..., v_p)`.
    /// On multivectors `A` acts by `e_j -> sum_i A_ij e_i`.
    pub fn derivation_action(&self, a: &Mat<T>) -> Result<Self> {
        if !a.is_square() || a.rows() != self.dim {
            return Err(FormError::DimensionMismatch {
                expected: self.dim,
                found: a.rows(),
            });
        }
        let n = self.dim;
        let mut out = Self::zero(n, self.degree, self.variance);
        for (set, c) in &self.terms {
            for i in set.iter() {
                let base = set.without(i);
                for j in 0..n {
                    let aij = match self.variance {
                        Variance::Form => &a[(i, j)],
                        Variance::Vector => &a[(j, i)],
                    };
                    if aij.is_zero() {
                        continue;
                    }
                    if j == i {
                        out.add_term(*set, c.clone() * aij.clone());
                    } else if !base.contains(j) {
                        let sign = if base.count_between(i, j) % 2 == 0 { 1 } else { -1 };
                        out.add_term(base.with(j), signed(c.clone() * aij.clone(), sign));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Hodge star relative to the volume form `omega`.
    ///
    /// A form `x` maps to the multivector `alpha x`, where `alpha` is the
    /// n-vector with `alpha omega = 1`; a multivector `x` maps to the form
    /// `omega x`.
    pub fn hodge_star(&self, omega: &Self) -> Result<Self> {
        if omega.variance != Variance::Form || omega.degree != omega.dim {
            return Err(FormError::Precondition(
                "volume form must be a top-degree form".into(),
            ));
        }
        if omega.dim != self.dim {
            return Err(FormError::DimensionMismatch {
                expected: self.dim,
                found: omega.dim,
            });
        }
        let c = omega.coeff(IndexSet::full(self.dim));
        if c.is_zero() {
            return Err(FormError::Degenerate("volume form is zero".into()));
        }
        match self.variance {
            Variance::Form => {
                let mut alpha = Self::zero(self.dim, self.dim, Variance::Vector);
                alpha.add_term(IndexSet::full(self.dim), T::one() / c);
                // a top-degree form maps to a scalar, which is a 0-vector here
                Ok(self.contract(&alpha)?.with_variance(Variance::Vector))
            }
            Variance::Vector => Ok(self.contract(omega)?.with_variance(Variance::Form)),
        }
    }

    /// The standard volume form `xi^1 ^ ... ^ xi^n`.
    pub fn volume(n: usize) -> Self {
        let mut out = Self::zero(n, n, Variance::Form);
        out.add_term(IndexSet::full(n), T::one());
        out
    }

    /// Coefficients in the lexicographic order of [`subsets`].
    pub fn to_dense(&self) -> Vec<T> {
        subsets(self.dim, self.degree)
            .into_iter()
            .map(|s| self.coeff(s))
            .collect()
    }

    pub fn from_dense(dim: usize, degree: usize, variance: Variance, coords: &[T]) -> Self {
        let sets = subsets(dim, degree);
        assert_eq!(sets.len(), coords.len(), "dense coordinate length");
        let mut out = Self::zero(dim, degree, variance);
        for (s, c) in sets.into_iter().zip(coords) {
            out.add_term(s, c.clone());
        }
        out
    }

    /// Embed into a larger space, keeping the indices.
    pub fn extend_dim(&self, new_dim: usize) -> Self {
        assert!(new_dim >= self.dim);
        ExteriorForm {
            dim: new_dim,
            ..self.clone()
        }
    }

    /// Shift every index by `offset`, landing in dimension `new_dim`.
    pub fn shift(&self, offset: usize, new_dim: usize) -> Self {
        assert!(offset + self.dim <= new_dim);
        let mut out = Self::zero(new_dim, self.degree, self.variance);
        for (s, c) in &self.terms {
            out.add_term(IndexSet::from_bits(s.bits() << offset), c.clone());
        }
        out
    }

    /// Ratio `r` with `self = r * other`, if the two are proportional and
    /// `other` is nonzero.
    pub fn proportionality(&self, other: &Self) -> Option<T> {
        if self.dim != other.dim || self.degree != other.degree || other.is_zero() {
            return None;
        }
        let (k, c) = other.terms.iter().next()?;
        let r = self.coeff(*k) / c.clone();
        if self.try_add(&other.scale(&-r.clone())).ok()?.is_negligible() {
            Some(r)
        } else {
            None
        }
    }
}

impl<T: Scalar> Add for ExteriorForm<T> {
    type Output = Self;
    /// Panics on mismatched spaces or degrees; see [`ExteriorForm::try_add`].
    fn add(self, other: Self) -> Self {
        self.try_add(&other).expect("mismatched exterior forms")
    }
}

impl<T: Scalar> Add for &ExteriorForm<T> {
    type Output = ExteriorForm<T>;
    fn add(self, other: Self) -> ExteriorForm<T> {
        self.try_add(other).expect("mismatched exterior forms")
    }
}

impl<T: Scalar> Neg for ExteriorForm<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map(|c| -c.clone())
    }
}

impl<T: Scalar> Neg for &ExteriorForm<T> {
    type Output = ExteriorForm<T>;
    fn neg(self) -> ExteriorForm<T> {
        self.map(|c| -c.clone())
    }
}

impl<T: Scalar> Sub for ExteriorForm<T> {
    type Output = Self;
    fn sub(self, other: Self) -> Self {
        self + (-other)
    }
}

impl<T: Scalar> Sub for &ExteriorForm<T> {
    type Output = ExteriorForm<T>;
    fn sub(self, other: Self) -> ExteriorForm<T> {
        self + &(-other)
    }
}

impl<T: Scalar> fmt::Display for ExteriorForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let letter = match self.variance {
            Variance::Form => "xi",
            Variance::Vector => "e",
        };
        for (k, (set, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let basis: Vec<String> = set.one_based().iter().map(|i| format!("{letter}{i}")).collect();
            if set.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", basis.join("^"))?;
            } else {
                write!(f, "{mag} {}", basis.join("^"))?;
            }
        }
        Ok(())
    }
}
