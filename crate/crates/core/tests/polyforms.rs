mod common;

use common::*;
use extform::invariants::{dual_of_2form, profile};
use extform::polyforms::{
    chi, default_samples, duncl_sigma_closed, duncl_verdicts, duncl_zeta, duncl_zeta_closed,
    duncl_zeta_criterion, phis_from_rhos, sigma_at, Monomial, PolyForm, Polynomial,
};
use extform::scalar::rat;
use extform::{subsets, Q};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn poly(s: &str) -> Polynomial {
    Polynomial::parse(s).unwrap()
}

fn random_poly(r: &mut ChaCha8Rng, vars: &[usize], terms: usize, max_exp: u32) -> Polynomial {
    let mut p = Polynomial::zero();
    for _ in 0..terms {
        let n = vars.iter().max().copied().unwrap_or(0);
        let mut exps = vec![0u32; n];
        for &v in vars {
            if r.gen_bool(0.5) {
                exps[v - 1] = r.gen_range(0..=max_exp);
            }
        }
        let c = rat(r.gen_range(-3..=3), r.gen_range(1..=2));
        p = &p + &Polynomial::term(c, Monomial::new(exps));
    }
    p
}

fn random_polyform(r: &mut ChaCha8Rng, n: usize, p: usize) -> PolyForm {
    let sets = subsets(n, p);
    let vars: Vec<usize> = (1..=n).collect();
    let mut out = PolyForm::zero(n, p);
    for _ in 0..4 {
        let s = sets[r.gen_range(0..sets.len())];
        let term = PolyForm::from_terms(n, p, [(s, random_poly(r, &vars, 3, 2))]).unwrap();
        out = out.try_add(&term).unwrap();
    }
    out
}

/// `phi_i = c + a x^alpha`, with a positive constant so the family is
/// nonvanishing near the origin.
fn random_monomial_family(r: &mut ChaCha8Rng, m: usize) -> Vec<Polynomial> {
    (0..m)
        .map(|_| {
            let mut exps = vec![0u32; 2 * m];
            for e in exps.iter_mut() {
                if r.gen_bool(0.3) {
                    *e = r.gen_range(1..=2);
                }
            }
            let a = rat(r.gen_range(1..=3), 1);
            &Polynomial::constant(rat(r.gen_range(1..=4), 1)) + &Polynomial::term(a, Monomial::new(exps))
        })
        .collect()
}

#[test]
fn zeta_for_m3_matches_hand_expansion() {
    let one = Polynomial::one();
    let phis = vec![poly("1 + x3^2 + x5^2"), one.clone(), one];
    let z = duncl_zeta(3, &phis).unwrap();
    // phi_1^2 expanded by hand
    let phi1_sq = poly("1 + 2 x3^2 + 2 x5^2 + x3^4 + 2 x3^2 x5^2 + x5^4");
    let expected = PolyForm::monomial(6, &[3, 4, 5, 6], phi1_sq)
        .try_add(&PolyForm::monomial(6, &[1, 2, 5, 6], one_poly()))
        .unwrap()
        .try_add(&PolyForm::monomial(6, &[1, 2, 3, 4], one_poly()))
        .unwrap()
        .mul_poly(&poly("-1"));
    assert_eq!(z, expected);
}

fn one_poly() -> Polynomial {
    Polynomial::one()
}

#[test]
fn d_zeta_components_match_the_derivatives_of_phi_powers() {
    // d zeta = sum_i -d_{2i-1}[phi_i^{m-1}] theta_{2i} - d_{2i}[phi_i^{m-1}] theta_{2i-1},
    // theta_k omitting dx^k
    let phis = vec![poly("1 + x1^2 + x4"), poly("2 + x1 x3"), poly("1 + x2^2")];
    let m = 3;
    let dz = duncl_zeta(m, &phis).unwrap().d().unwrap();
    assert!(!dz.is_zero());
    for i in 1..=m {
        let power = phis[i - 1].pow(m as u32 - 1);
        for (omitted, k) in [(2 * i, 2 * i - 1), (2 * i - 1, 2 * i)] {
            let rest: Vec<usize> = (1..=2 * m).filter(|&j| j != omitted).collect();
            let theta = extform::IndexSet::from_one_based(&rest).unwrap();
            assert_eq!(dz.coeff(theta), -power.derivative(k), "i = {i}, k = {k}");
        }
    }
}

#[test]
fn unit_family_passes_both_criteria() {
    let phis = vec![Polynomial::one(); 3];
    assert!(duncl_zeta_closed(3, &phis).unwrap());
    assert!(duncl_sigma_closed(3, &phis).unwrap());
}

#[test]
fn closed_zeta_with_non_closed_sigma() {
    let one = Polynomial::one();
    let phis = vec![poly("1 + x3^2 + x5^2"), one.clone(), one];
    assert!(duncl_zeta(3, &phis).unwrap().d().unwrap().is_zero());
    assert!(duncl_zeta_closed(3, &phis).unwrap());
    assert!(!duncl_sigma_closed(3, &phis).unwrap());
    let v = duncl_verdicts(3, &phis, &default_samples(3)).unwrap();
    assert!(v.indivisible && v.dual && v.zeta_closed && !v.sigma_closed);
    assert_eq!(v.samples_used, 3);
}

#[test]
fn separated_family_has_closed_sigma() {
    let rhos = vec![poly("1 + x1^2"), poly("1 + x3^2"), poly("1 + x5^2")];
    let phis = phis_from_rhos(&rhos).unwrap();
    assert!(duncl_sigma_closed(3, &phis).unwrap());
    // phi_1 = rho_2 rho_3 involves neither x1 nor x2
    assert!(duncl_zeta_closed(3, &phis).unwrap());
}

#[test]
fn pointwise_duality_at_origin() {
    let phis = vec![poly("2 + x1"), poly("3 + x2 x3"), poly("1 + x6^2")];
    let origin = vec![rat(0, 1); 6];
    let sigma = sigma_at(3, &phis, &origin).unwrap();
    assert!(!sigma.divided_power(3).unwrap().is_zero());
    let zeta = duncl_zeta(3, &phis).unwrap().evaluate(&origin);
    assert_eq!(dual_of_2form(&sigma).unwrap(), zeta);
    let p = profile(&zeta);
    assert!(p.indivisible);
    assert_eq!(p.divisibility.dim(), 6);
}

#[test]
fn low_dimensional_duals() {
    let phis = vec![Polynomial::one(), Polynomial::one()];
    let zeta = duncl_zeta(2, &phis).unwrap();
    assert_eq!(zeta, chi(2, 1).try_add(&chi(2, 2)).unwrap().mul_poly(&poly("-1")));
}

#[test]
fn bad_inputs_are_rejected() {
    assert!(duncl_zeta(1, &[Polynomial::one()]).is_err());
    assert!(duncl_zeta(2, &[Polynomial::one()]).is_err());
    assert!(duncl_zeta(2, &[Polynomial::one(), Polynomial::zero()]).is_err());
    assert!(duncl_zeta(2, &[Polynomial::one(), poly("x5")]).is_err());
    let phis = vec![poly("x1"), Polynomial::one()];
    assert!(sigma_at(2, &phis, &vec![rat(0, 1); 4]).is_err());
}

#[test]
fn criterion_agrees_with_direct_derivative_on_seeded_families() {
    let mut r = rng(16);
    for _ in 0..100 {
        let phis = random_monomial_family(&mut r, 3);
        let criterion = duncl_zeta_criterion(3, &phis).unwrap();
        let direct = duncl_zeta(3, &phis).unwrap().d().unwrap().is_zero();
        assert_eq!(criterion, direct);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn d_squared_vanishes(seed in 0u64..100_000, n in 2usize..6, p in 0usize..4) {
        prop_assume!(p + 2 <= n);
        let mut r = rng(seed);
        let f = random_polyform(&mut r, n, p);
        prop_assert!(f.d().unwrap().d().unwrap().is_zero());
    }

    #[test]
    fn d_is_a_graded_derivation(seed in 0u64..100_000, n in 3usize..6, p in 0usize..3, q in 0usize..3) {
        prop_assume!(p + q < n);
        let mut r = rng(seed);
        let a = random_polyform(&mut r, n, p);
        let b = random_polyform(&mut r, n, q);
        let lhs = a.wedge(&b).unwrap().d().unwrap();
        let first = a.d().unwrap().wedge(&b).unwrap();
        let second = a.wedge(&b.d().unwrap()).unwrap();
        let sign = if p % 2 == 0 { poly("1") } else { poly("-1") };
        prop_assert_eq!(lhs, first.try_add(&second.mul_poly(&sign)).unwrap());
    }

    #[test]
    fn evaluation_commutes_with_wedge(seed in 0u64..100_000) {
        let mut r = rng(seed);
        let a = random_polyform(&mut r, 5, 2);
        let b = random_polyform(&mut r, 5, 2);
        let pt: Vec<Q> = (0..5).map(|_| rat(r.gen_range(-3..=3), r.gen_range(1..=3))).collect();
        prop_assert_eq!(
            a.wedge(&b).unwrap().evaluate(&pt),
            a.evaluate(&pt).wedge(&b.evaluate(&pt)).unwrap()
        );
    }

    #[test]
    fn criterion_agrees_with_direct_derivative(seed in 0u64..100_000, m in 2usize..4) {
        let mut r = rng(seed);
        let phis = random_monomial_family(&mut r, m);
        let criterion = duncl_zeta_criterion(m, &phis).unwrap();
        let direct = duncl_zeta(m, &phis).unwrap().d().unwrap().is_zero();
        prop_assert_eq!(criterion, direct);
    }

    #[test]
    fn separated_families_have_closed_sigma_and_zeta(seed in 0u64..100_000) {
        let mut r = rng(seed);
        let m = 3;
        let rhos: Vec<Polynomial> = (0..m)
            .map(|j| &Polynomial::constant(rat(r.gen_range(1..=3), 1)) + &random_poly(&mut r, &[2 * j + 1, 2 * j + 2], 2, 2))
            .filter(|p| !p.is_zero())
            .collect();
        prop_assume!(rhos.len() == m);
        let phis = phis_from_rhos(&rhos).unwrap();
        prop_assert!(duncl_sigma_closed(m, &phis).unwrap());
        // closed sigma forces closed zeta
        prop_assert!(duncl_zeta_closed(m, &phis).unwrap());
    }

    #[test]
    fn closed_sigma_implies_closed_zeta(seed in 0u64..100_000) {
        let mut r = rng(seed);
        let phis = random_monomial_family(&mut r, 3);
        if duncl_sigma_closed(3, &phis).unwrap() {
            prop_assert!(duncl_zeta_closed(3, &phis).unwrap());
        }
    }

    #[test]
    fn sampled_points_are_indivisible_and_dual(seed in 0u64..100_000) {
        let mut r = rng(seed);
        let phis = random_monomial_family(&mut r, 3);
        let v = duncl_verdicts(3, &phis, &default_samples(3)).unwrap();
        prop_assert!(v.samples_used >= 1);
        prop_assert!(v.indivisible);
        prop_assert!(v.dual);
    }

    #[test]
    fn polynomial_text_round_trip(seed in 0u64..100_000) {
        let mut r = rng(seed);
        let p = random_poly(&mut r, &[1, 2, 3, 7], 5, 3);
        prop_assert_eq!(Polynomial::parse(&p.to_string()).unwrap(), p);
    }
}
