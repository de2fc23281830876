#![allow(dead_code)]

use extform::{rat, Form, IndexSet, Matrix, Variance, Q};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Invertible matrix with small integer entries.
pub fn random_gl(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| rat(rng.gen_range(-3..=3), 1));
        if m.det() != rat(0, 1) {
            return m;
        }
    }
}

/// Sparse random form with small rational coefficients.
pub fn random_form(rng: &mut ChaCha8Rng, n: usize, p: usize, variance: Variance, max_terms: usize) -> Form {
    let sets = extform::subsets(n, p);
    let terms = rng.gen_range(0..=max_terms.min(sets.len()));
    let mut f = Form::zero(n, p, variance);
    for _ in 0..terms {
        let s = sets[rng.gen_range(0..sets.len())];
        let c = rat(rng.gen_range(-4..=4), rng.gen_range(1..=3));
        f = f + Form::from_terms(n, p, variance, [(s, c)]).unwrap();
    }
    f
}

pub fn xi(n: usize, idx: &[usize]) -> Form {
    Form::monomial(n, Variance::Form, idx, rat(1, 1))
}

pub fn e(n: usize, idx: &[usize]) -> Form {
    Form::monomial(n, Variance::Vector, idx, rat(1, 1))
}

pub fn q(n: i64) -> Q {
    rat(n, 1)
}

/// Determinant by the Leibniz formula, independent of the elimination code.
pub fn leibniz_det(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut total = q(0);
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| {
        let mut sign = 1;
        for a in 0..n {
            for b in a + 1..n {
                if p[a] > p[b] {
                    sign = -sign;
                }
            }
        }
        let prod = (0..n).fold(q(sign), |acc, i| acc * m[i][p[i]].clone());
        total = total.clone() + prod;
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

pub fn set(one_based: &[usize]) -> IndexSet {
    IndexSet::from_one_based(one_based).unwrap()
}

/// Standard basis vector `e_i`, 1-based.
pub fn col(n: usize, i: usize) -> Vec<Q> {
    extform::linalg::unit(n, i - 1)
}
