mod common;

use common::*;
use extform::{rat, subsets, Form, Matrix, Variance, Q};
use proptest::prelude::*;
use rand::Rng;

fn random_vectors(r: &mut rand_chacha::ChaCha8Rng, n: usize, k: usize) -> Vec<Vec<Q>> {
    (0..k)
        .map(|_| (0..n).map(|_| rat(r.gen_range(-3..=3), r.gen_range(1..=2))).collect())
        .collect()
}

/// Sum over (p, q)-shuffles, determinant convention: no factorial weights.
fn wedge_value_oracle(a: &Form, b: &Form, v: &[Vec<Q>]) -> Q {
    let p = a.degree();
    let k = v.len();
    let mut total = q(0);
    for s in subsets(k, p) {
        let first: Vec<usize> = s.iter().collect();
        let rest: Vec<usize> = (0..k).filter(|i| !s.contains(*i)).collect();
        let mut inversions = 0;
        for &f in &first {
            inversions += rest.iter().filter(|&&r| r < f).count();
        }
        let va: Vec<Vec<Q>> = first.iter().map(|&i| v[i].clone()).collect();
        let vb: Vec<Vec<Q>> = rest.iter().map(|&i| v[i].clone()).collect();
        let term = a.evaluate(&va).unwrap() * b.evaluate(&vb).unwrap();
        total = if inversions % 2 == 0 { total + term } else { total - term };
    }
    total
}

#[test]
fn wedge_of_coordinate_forms() {
    let w = xi(4, &[1]).wedge(&xi(4, &[3])).unwrap();
    assert_eq!(w, xi(4, &[1, 3]));
    let w = xi(4, &[3]).wedge(&xi(4, &[1])).unwrap();
    assert_eq!(w, xi(4, &[1, 3]).scale(&q(-1)));
    assert!(xi(4, &[1, 2]).wedge(&xi(4, &[2, 3])).unwrap().is_zero());
}

#[test]
fn evaluation_is_a_determinant() {
    let vol = Form::volume(3);
    let v = vec![vec![q(1), q(2), q(0)], vec![q(0), q(1), q(4)], vec![q(5), q(6), q(0)]];
    let cols: Vec<Vec<Q>> = (0..3).map(|i| (0..3).map(|j| v[j][i].clone()).collect()).collect();
    assert_eq!(vol.evaluate(&v).unwrap(), leibniz_det(&cols));
    assert_eq!(xi(3, &[1, 2]).evaluate(&[col(3, 1), col(3, 2)]).unwrap(), q(1));
}

#[test]
fn star_of_low_dimensional_examples() {
    let vol = Form::volume(2);
    assert_eq!(xi(2, &[1]).hodge_star(&vol).unwrap(), e(2, &[2]));
    assert_eq!(xi(2, &[2]).hodge_star(&vol).unwrap(), e(2, &[1]).scale(&q(-1)));
    let vol4 = Form::volume(4).scale(&q(2));
    let s = xi(4, &[1, 2]).hodge_star(&vol4).unwrap();
    assert_eq!(s, e(4, &[3, 4]).scale(&rat(1, 2)));
}

#[test]
fn star_squared_sign_for_all_degrees_up_to_eight() {
    let mut r = rng(3);
    for n in 1..=8 {
        for p in 0..=n {
            for _ in 0..3 {
                let x = random_form(&mut r, n, p, Variance::Form, 6);
                let c = rat(r.gen_range(1..=5), r.gen_range(1..=3));
                let vol = Form::volume(n).scale(&c);
                let back = x.hodge_star(&vol).unwrap().hodge_star(&vol).unwrap();
                let sign = if (n - p) * p % 2 == 0 { q(1) } else { q(-1) };
                assert_eq!(back, x.scale(&sign), "n = {n}, p = {p}");
            }
        }
    }
}

#[test]
fn variance_and_dimension_errors() {
    assert!(xi(3, &[1]).wedge(&e(3, &[2])).is_err());
    assert!(xi(3, &[1]).wedge(&xi(4, &[2])).is_err());
    assert!(xi(3, &[1]).contract(&xi(3, &[1])).is_err());
    assert!(e(3, &[1]).pullback(&Matrix::identity(3)).is_err());
    assert!(xi(3, &[1, 2]).evaluate(&[col(3, 1)]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn wedge_is_associative(seed in 0u64..1_000_000, n in 1usize..7) {
        let mut r = rng(seed);
        let (p, q_, s) = (r.gen_range(0..=n), r.gen_range(0..=n), r.gen_range(0..=n));
        let a = random_form(&mut r, n, p, Variance::Form, 4);
        let b = random_form(&mut r, n, q_, Variance::Form, 4);
        let c = random_form(&mut r, n, s, Variance::Form, 4);
        prop_assume!(p + q_ + s <= n);
        let left = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let right = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn wedge_is_graded_commutative(seed in 0u64..1_000_000, n in 1usize..7) {
        let mut r = rng(seed);
        let p = r.gen_range(0..=n);
        let q_ = r.gen_range(0..=n - p);
        let a = random_form(&mut r, n, p, Variance::Vector, 5);
        let b = random_form(&mut r, n, q_, Variance::Vector, 5);
        let sign = if p * q_ % 2 == 0 { q(1) } else { q(-1) };
        prop_assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap().scale(&sign));
    }

    #[test]
    fn wedge_values_match_shuffle_sum(seed in 0u64..1_000_000, n in 2usize..6) {
        let mut r = rng(seed);
        let p = r.gen_range(1..n);
        let q_ = r.gen_range(1..=n - p);
        let a = random_form(&mut r, n, p, Variance::Form, 4);
        let b = random_form(&mut r, n, q_, Variance::Form, 4);
        let v = random_vectors(&mut r, n, p + q_);
        prop_assert_eq!(a.wedge(&b).unwrap().evaluate(&v).unwrap(), wedge_value_oracle(&a, &b, &v));
    }

    #[test]
    fn interior_fills_the_first_slot(seed in 0u64..1_000_000, n in 2usize..7) {
        let mut r = rng(seed);
        let p = r.gen_range(1..=n);
        let m = random_form(&mut r, n, p, Variance::Form, 6);
        let v = random_vectors(&mut r, n, p);
        let inner = m.interior(&v[0]).unwrap();
        prop_assert_eq!(inner.evaluate(&v[1..]).unwrap(), m.evaluate(&v).unwrap());
    }

    #[test]
    fn pullback_is_evaluation_on_images(seed in 0u64..1_000_000, n in 1usize..6, k in 1usize..6) {
        let mut r = rng(seed);
        let p = r.gen_range(0..=n.min(k));
        let m = random_form(&mut r, n, p, Variance::Form, 5);
        let l = Matrix::from_fn(n, k, |_, _| rat(r.gen_range(-2..=2), 1));
        let w = random_vectors(&mut r, k, p);
        let lw: Vec<Vec<Q>> = w.iter().map(|x| l.mul_vec(x)).collect();
        prop_assert_eq!(m.pullback(&l).unwrap().evaluate(&w).unwrap(), m.evaluate(&lw).unwrap());
    }

    #[test]
    fn pullback_is_functorial_and_multiplicative(seed in 0u64..1_000_000, n in 2usize..6) {
        let mut r = rng(seed);
        let p = r.gen_range(0..n);
        let q_ = r.gen_range(0..=n - p);
        let a = random_form(&mut r, n, p, Variance::Form, 4);
        let b = random_form(&mut r, n, q_, Variance::Form, 4);
        let l1 = random_gl(&mut r, n);
        let l2 = random_gl(&mut r, n);
        prop_assert_eq!(
            a.pullback(&l1).unwrap().pullback(&l2).unwrap(),
            a.pullback(&l1.mul(&l2)).unwrap()
        );
        prop_assert_eq!(
            a.wedge(&b).unwrap().pullback(&l1).unwrap(),
            a.pullback(&l1).unwrap().wedge(&b.pullback(&l1).unwrap()).unwrap()
        );
    }

    #[test]
    fn derivation_action_sums_over_slots(seed in 0u64..1_000_000, n in 1usize..6) {
        let mut r = rng(seed);
        let p = r.gen_range(1..=n);
        let m = random_form(&mut r, n, p, Variance::Form, 5);
        let a = Matrix::from_fn(n, n, |_, _| rat(r.gen_range(-2..=2), 1));
        let v = random_vectors(&mut r, n, p);
        let mut expected = q(0);
        for i in 0..p {
            let mut w = v.clone();
            w[i] = a.mul_vec(&v[i]);
            expected += m.evaluate(&w).unwrap();
        }
        prop_assert_eq!(m.derivation_action(&a).unwrap().evaluate(&v).unwrap(), expected);
    }

    #[test]
    fn derivation_action_is_a_derivation_and_a_representation(seed in 0u64..1_000_000, n in 2usize..6) {
        let mut r = rng(seed);
        let p = r.gen_range(0..n);
        let q_ = r.gen_range(0..=n - p);
        let x = random_form(&mut r, n, p, Variance::Form, 4);
        let y = random_form(&mut r, n, q_, Variance::Form, 4);
        let a = Matrix::from_fn(n, n, |_, _| rat(r.gen_range(-2..=2), 1));
        let b = Matrix::from_fn(n, n, |_, _| rat(r.gen_range(-2..=2), 1));
        let lhs = x.wedge(&y).unwrap().derivation_action(&a).unwrap();
        let rhs = x.derivation_action(&a).unwrap().wedge(&y).unwrap()
            + x.wedge(&y.derivation_action(&a).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        // acting through the arguments reverses products: rho([A, B]) = -[rho(A), rho(B)]
        let ab = x.derivation_action(&b).unwrap().derivation_action(&a).unwrap();
        let ba = x.derivation_action(&a).unwrap().derivation_action(&b).unwrap();
        let comm = x.derivation_action(&a.commutator(&b)).unwrap();
        prop_assert_eq!(comm, &ba - &ab);
    }

    #[test]
    fn dense_coordinates_round_trip(seed in 0u64..1_000_000, n in 0usize..7) {
        let mut r = rng(seed);
        let p = r.gen_range(0..=n);
        let m = random_form(&mut r, n, p, Variance::Vector, 8);
        prop_assert_eq!(Form::from_dense(n, p, Variance::Vector, &m.to_dense()), m);
    }
}
