//! Invariants of a single exterior form: rank, kernel, image, divisibility,
//! factorizations, 2-form duality, Darboux bases and isotropy algebras.

mod darboux;
mod duality;
mod factor;
mod isotropy;
mod profile;

pub use darboux::{linear_darboux, standard_symplectic, Darboux};
pub use duality::{dual_of_2form, reciprocal, two_form_from_indivisible, DualityResult};
pub use factor::{
    factor_decomposable, indivisible_factorization, indivisible_factorization_with_complement,
    restrict_to, Factorization,
};
pub use isotropy::{
    is_skew_metric, isotropy_algebra, isotropy_subspace, matrices_to_subspace,
    skew_metric_certificate,
};
pub use profile::{contraction_matrix, profile, FormProfile};
