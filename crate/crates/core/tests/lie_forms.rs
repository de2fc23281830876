mod common;

use common::*;
use extform::invariants::{is_skew_metric, isotropy_algebra, isotropy_subspace};
use extform::lie::{catalog, CatalogEntry, LieAlgebra, Symmetry};
use extform::scalar::rat;
use extform::threeform::{almost_complex, classify_type, ComplexStructure, ThreeFormType};
use extform::{subsets, Form, Mat, Matrix, Subspace, Variance, Q};
use proptest::prelude::*;

fn algebra(name: &str) -> LieAlgebra<Q> {
    catalog(name).unwrap().algebra().unwrap().clone()
}

fn killing_oracle(a: &LieAlgebra<Q>) -> Matrix {
    let n = a.dim();
    Mat::from_fn(n, n, |i, j| {
        let mut s = rat(0, 1);
        for r in 0..n {
            for t in 0..n {
                s += a.c(i, r, t) * a.c(j, t, r);
            }
        }
        s
    })
}

/// `[d zeta](v_0..v_p) = sum_{i<j} (-1)^{i+j} zeta([v_i, v_j], v_0, ^i, ^j, .., v_p)`
/// on basis tuples; the derivative terms vanish for invariant forms.
fn d_oracle(a: &LieAlgebra<Q>, zeta: &Form) -> Form {
    let n = a.dim();
    let p = zeta.degree();
    let mut terms = Vec::new();
    for set in subsets(n, p + 1) {
        let idx = set.to_vec();
        let vecs: Vec<Vec<Q>> = idx.iter().map(|&i| col(n, i + 1)).collect();
        let mut total = rat(0, 1);
        for i in 0..=p {
            for j in i + 1..=p {
                let mut args = vec![a.bracket(&vecs[i], &vecs[j])];
                args.extend((0..=p).filter(|&k| k != i && k != j).map(|k| vecs[k].clone()));
                let v = zeta.evaluate(&args).unwrap();
                total += if (i + j) % 2 == 0 { v } else { -v };
            }
        }
        terms.push((set, total));
    }
    Form::from_terms(n, p + 1, Variance::Form, terms).unwrap()
}

#[test]
fn validation_of_catalog_algebras() {
    let abelian = algebra("abelian-4").validate();
    assert!(abelian.jacobi && !abelian.semisimple);
    for name in ["sl2", "su2", "sl3", "su3"] {
        let v = algebra(name).validate();
        assert!(v.jacobi && v.semisimple, "{name}");
    }
    for name in ["nilpotent-a", "nilpotent-b", "nilpotent-c"] {
        let v = algebra(name).validate();
        assert!(v.jacobi && !v.semisimple, "{name}");
    }
}

#[test]
fn killing_form_matches_double_sum() {
    for name in ["sl2", "su2", "sl3", "su3", "nilpotent-a"] {
        let a = algebra(name);
        let g = a.killing_form();
        assert_eq!(g.matrix, killing_oracle(&a), "{name}");
        assert_eq!(g.symmetry, Symmetry::Symmetric);
    }
    let su2 = algebra("su2").killing_form().matrix;
    assert_eq!(su2, Mat::identity(3).scale(&rat(-2, 1)));
    assert!(algebra("abelian-3").killing_form().matrix.is_zero());
}

#[test]
fn sl3_killing_form_signature() {
    // the Cartan-subalgebra block is 6 * [[2, -1], [-1, 2]]
    let g = algebra("sl3").killing_form().matrix;
    assert_eq!(g[(0, 0)], rat(12, 1));
    assert_eq!(g[(0, 1)], rat(-6, 1));
    assert_eq!(g[(2, 5)], rat(6, 1));
    assert_eq!(g[(2, 2)], rat(0, 1));
    assert_ne!(g.det(), rat(0, 1));
    // su3 is compact: Killing form negative definite on the diagonal
    let h = algebra("su3").killing_form().matrix;
    for i in 0..8 {
        assert!(h[(i, i)] < rat(0, 1));
    }
}

#[test]
fn cartan_form_evaluates_to_killing_of_bracket() {
    for name in ["sl2", "su2", "sl3", "su3"] {
        let a = algebra(name);
        let n = a.dim();
        let g = a.killing_form().matrix;
        let gamma = a.cartan_3form().unwrap();
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    let (u, v, w) = (col(n, i), col(n, j), col(n, k));
                    let br = a.bracket(&u, &v);
                    let expected = extform::linalg::dot(&br, &g.mul_vec(&w));
                    assert_eq!(gamma.evaluate(&[u, v, w]).unwrap(), expected);
                }
            }
        }
    }
    assert!(algebra("abelian-5").cartan_3form().unwrap().is_zero());
}

#[test]
fn cartan_form_of_sl3_has_full_rank() {
    let gamma = algebra("sl3").cartan_3form().unwrap();
    let p = extform::invariants::profile(&gamma);
    assert_eq!(p.rank, 8);
    assert!(p.indivisible);
}

#[test]
fn cartan_forms_are_closed_and_bi_invariant() {
    for name in ["sl2", "su2", "sl3", "su3"] {
        let a = algebra(name);
        let gamma = a.cartan_3form().unwrap();
        if a.dim() > 3 {
            assert!(a.ce_differential(&gamma).unwrap().is_zero(), "{name}");
            assert!(d_oracle(&a, &gamma).is_zero());
        }
        for i in 0..a.dim() {
            assert!(gamma.derivation_action(&a.ad(i)).unwrap().is_zero());
        }
    }
}

#[test]
fn nilpotent_examples() {
    let expected = [
        ("nilpotent-a", ThreeFormType::ComplexStable),
        ("nilpotent-b", ThreeFormType::Degenerate3),
        ("nilpotent-c", ThreeFormType::RealStable),
    ];
    for (name, kind) in expected {
        let entry = catalog(name).unwrap();
        let CatalogEntry::Algebra { algebra, form: Some(mu) } = entry else { panic!() };
        assert!(algebra.ce_differential(&mu).unwrap().is_zero(), "{name}");
        assert!(d_oracle(&algebra, &mu).is_zero());
        assert_eq!(classify_type(&mu).unwrap(), kind);
    }
}

#[test]
fn nijenhuis_of_first_nilpotent_example() {
    let entry = catalog("nilpotent-a").unwrap();
    let CatalogEntry::Algebra { algebra, form: Some(mu) } = entry else { panic!() };
    let ComplexStructure::Exact { j, .. } = almost_complex(&mu).unwrap() else { panic!() };
    let n = algebra.nijenhuis(&j).unwrap();
    assert_eq!(n.get(&(0, 1)), Some(&col(6, 5)));
    assert!(!algebra.nijenhuis(&j).unwrap().is_empty());
    let abelian: LieAlgebra<Q> = LieAlgebra::abelian(6);
    assert!(abelian.nijenhuis(&j).unwrap().is_empty());
}

#[test]
fn constant_structure_on_abelian_product_is_integrable() {
    let a: LieAlgebra<Q> = LieAlgebra::abelian(2).direct_sum(&LieAlgebra::abelian(2));
    let j: Matrix = Mat::from_ints(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]]);
    assert!(a.nijenhuis(&j).unwrap().is_empty());
}

#[test]
fn distributions_from_nilpotent_examples_are_not_closed() {
    let span = |n: usize, idx: &[usize]| {
        Subspace::span(n, Variance::Vector, &idx.iter().map(|&i| col(n, i)).collect::<Vec<_>>())
    };
    let b = algebra("nilpotent-b");
    assert!(!b.bracket_closed(&span(6, &[2, 4, 6])).unwrap());
    let c = algebra("nilpotent-c");
    assert!(!c.bracket_closed(&span(6, &[4, 5, 6])).unwrap());
    assert!(!c.bracket_closed(&span(6, &[1, 2, 3])).unwrap());
    // anything containing the derived algebra is an ideal
    assert!(b.bracket_closed(&span(6, &[1, 3, 5])).unwrap());
    assert!(c.bracket_closed(&span(6, &[3, 6, 1])).unwrap());
}

#[test]
fn curvature_identities_on_semisimple_catalog() {
    for name in ["sl2", "su2", "sl3", "su3"] {
        let a = algebra(name);
        let ids = a.cartan_identities().unwrap();
        assert!(ids.normalization, "{name}");
        assert!(ids.curvature, "{name}");
        let r = a.curvature_operator().unwrap();
        assert!(r.preserves_sym2 && r.preserves_lambda2);
        assert!(r.two_form_formula_holds());
    }
}

#[test]
fn curvature_operator_commutes_with_transpose() {
    let r = algebra("sl3").curvature_operator().unwrap();
    let mut rng = rng(3);
    use rand::Rng;
    let b: Matrix = Mat::from_fn(8, 8, |_, _| rat(rng.gen_range(-4..=4), 1));
    assert_eq!(r.apply(&b.transpose()), r.apply(&b).transpose());
}

#[test]
fn spectral_checks() {
    for name in ["sl3", "su3"] {
        let a = algebra(name);
        let l = a.lambda2_spectrum_check().unwrap();
        assert!(l.idempotent, "{name}");
        assert_eq!(l.fix_dim, 8);
        assert_eq!(l.contraction_dim, 8);
        assert!(l.fix_equals_contractions);
        let s = a.sym2_spectrum_check().unwrap();
        assert!(s.holds() && s.hypothesis_met, "{name}");
    }
    let small = algebra("sl2").sym2_spectrum_check().unwrap();
    assert!(!small.hypothesis_met);
    assert!(algebra("abelian-8").lambda2_spectrum_check().is_err());
}

#[test]
fn isotropy_of_cartan_form_is_ad_image() {
    for name in ["sl3", "su3"] {
        let cmp = algebra(name).isotropy_equals_ad().unwrap();
        assert_eq!(cmp.isotropy_dim, 8, "{name}");
        assert_eq!(cmp.ad_dim, 8);
        assert!(cmp.equal);
    }
}

#[test]
fn isotropy_of_direct_sum_is_ad_image() {
    let cmp = algebra("sl3+sl3").isotropy_equals_ad().unwrap();
    assert_eq!(cmp.ad_dim, 16);
    assert!(cmp.equal);
}

#[test]
fn exceptional_forms_have_compact_isotropy() {
    for (name, nullity) in [("g2-form", 14), ("spin7-form", 21)] {
        let mu = catalog(name).unwrap().form().unwrap().clone();
        assert_eq!(isotropy_subspace(&mu).dim(), nullity, "{name}");
        let h = isotropy_algebra(&mu).unwrap();
        for a in &h {
            assert!(a.add(&a.transpose()).is_zero());
        }
        assert!(is_skew_metric(&h, &Mat::identity(mu.dim())));
    }
    let g2 = catalog("g2-form").unwrap().form().unwrap().clone();
    assert_eq!(g2.nnz(), 7);
    assert_eq!(g2.coeff_at(&[3, 5, 6]), rat(-1, 1));
    let spin7 = catalog("spin7-form").unwrap().form().unwrap().clone();
    assert_eq!(spin7.nnz(), 14);
    assert_eq!(spin7.degree(), 4);
}

#[test]
fn unknown_catalog_name() {
    assert!(catalog("e8").is_err());
    assert!(catalog("abelian-x").is_err());
}

#[test]
fn matrix_basis_rejects_non_closed_span() {
    let a: Matrix = Mat::from_ints(&[&[0, 1], &[0, 0]]);
    let b: Matrix = Mat::from_ints(&[&[0, 0], &[1, 0]]);
    assert!(LieAlgebra::from_matrix_basis(&[a, b]).is_err());
}

fn random_algebra_strategy() -> impl Strategy<Value = (u64, usize)> {
    (0u64..10_000, 0usize..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// d^2 = 0 and agreement with the bracket formula, on random forms
    /// over catalog algebras.
    #[test]
    fn differential_squares_to_zero((seed, which) in random_algebra_strategy()) {
        let name = ["sl2", "nilpotent-a", "nilpotent-b", "sl3"][which];
        let a = algebra(name);
        let mut r = rng(seed);
        let n = a.dim();
        for p in 1..n.min(4) {
            let zeta = random_form(&mut r, n, p, Variance::Form, 6);
            let d = a.ce_differential(&zeta).unwrap();
            prop_assert_eq!(&d, &d_oracle(&a, &zeta));
            if p + 1 < n {
                prop_assert!(a.ce_differential(&d).unwrap().is_zero());
            }
        }
    }

    /// Pulling the brackets back along a change of basis preserves the
    /// Jacobi identity and transforms the Killing form by congruence.
    #[test]
    fn killing_form_is_congruence_covariant(seed in 0u64..10_000) {
        let mut r = rng(seed);
        let a = algebra("sl2");
        let p = random_gl(&mut r, 3);
        let pinv = p.inverse().unwrap();
        // new basis f_i = sum_k P_ki e_k
        let fs: Vec<Vec<Q>> = (0..3).map(|i| p.col(i)).collect();
        let mut list = Vec::new();
        for i in 0..3 {
            for j in i + 1..3 {
                let coords = pinv.mul_vec(&a.bracket(&fs[i], &fs[j]));
                for (k, c) in coords.into_iter().enumerate() {
                    list.push((i + 1, j + 1, k + 1, c));
                }
            }
        }
        let b = LieAlgebra::from_brackets(3, &list).unwrap();
        prop_assert!(b.jacobi_holds());
        let g = a.killing_form().matrix;
        prop_assert_eq!(b.killing_form().matrix, p.transpose().mul(&g).mul(&p));
    }
}
