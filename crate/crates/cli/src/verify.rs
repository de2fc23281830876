//! The built-in regression suite run by `extform verify`.
//!
//! Every check has a stable id of the form `c<criterion>.<name>`, a short
//! anchor naming the fact it exercises, and a pass/fail verdict with
//! details. Checks are independent and pure given the seed, so the runner
//! spreads them over threads and sorts the report by id afterwards.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use extform::invariants::{
    dual_of_2form, is_skew_metric, isotropy_algebra, isotropy_subspace, profile,
    standard_symplectic, two_form_from_indivisible,
};
use extform::lie::{catalog, CatalogEntry};
use extform::linalg::unit;
use extform::polyforms::{
    duncl_sigma_closed, duncl_zeta, duncl_zeta_criterion, duncl_zeta_closed, phis_from_rhos,
    Monomial, Polynomial,
};
use extform::threeform::{
    almost_complex, classify, classify_type, type_b_invariants, type_c_invariants,
    ComplexStructure, NormalFormBasis, RealSplit, ThreeFormType, TypeInvariants, FLOAT_RESIDUAL,
};
use extform::{rat, subsets, Form, FormError, LieAlgebra, Matrix, Scalar, Subspace, Variance, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

/// Titles of the eight mathematical criteria, indexed from 1.
pub const CRITERIA: [&str; 8] = [
    "classification of 3-forms in dimension six",
    "type invariants of 3-forms",
    "Hodge star and 2-form duality",
    "rank, kernel and divisibility laws",
    "Cartan 3-forms of sl(3) and su(3)",
    "G2 and Spin(7) isotropy",
    "nilpotent counterexamples",
    "closedness criteria for the dual family",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub criterion: u8,
    pub anchor: &'static str,
    pub passed: bool,
    pub details: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn criterion_passed(&self, k: u8) -> bool {
        self.checks.iter().filter(|c| c.criterion == k).all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| json!({
                "id": c.id,
                "criterion": c.criterion,
                "anchor": c.anchor,
                "passed": c.passed,
                "details": c.details,
            })).collect::<Vec<_>>(),
        })
    }
}

struct Fail(String);

impl From<FormError> for Fail {
    fn from(e: FormError) -> Self {
        Fail(e.to_string())
    }
}

impl From<String> for Fail {
    fn from(s: String) -> Self {
        Fail(s)
    }
}

type Outcome = Result<String, Fail>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), Fail> {
    if cond {
        Ok(())
    } else {
        Err(Fail(msg()))
    }
}

type Runner = Box<dyn Fn(&mut ChaCha8Rng) -> Outcome + Send + Sync>;

struct CheckDef {
    id: String,
    criterion: u8,
    anchor: &'static str,
    run: Runner,
}

fn def(
    id: impl Into<String>,
    criterion: u8,
    anchor: &'static str,
    run: impl Fn(&mut ChaCha8Rng) -> Outcome + Send + Sync + 'static,
) -> CheckDef {
    CheckDef {
        id: id.into(),
        criterion,
        anchor,
        run: Box::new(run),
    }
}

/// Ids and criteria of every check, in report order.
pub fn check_ids() -> Vec<(String, u8)> {
    let mut ids: Vec<_> = definitions().into_iter().map(|s| (s.id, s.criterion)).collect();
    ids.sort();
    ids
}

pub fn run_all(seed: u64) -> VerificationReport {
    run_filtered(seed, |_| true)
}

pub fn run_criterion(k: u8, seed: u64) -> VerificationReport {
    run_filtered(seed, |c| c == k)
}

fn check_rng(seed: u64, id: &str) -> ChaCha8Rng {
    // FNV-1a of the id keeps each check's stream independent of the others
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in id.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

fn run_filtered(seed: u64, keep: impl Fn(u8) -> bool) -> VerificationReport {
    let todo: Vec<CheckDef> = definitions().into_iter().filter(|s| keep(s.criterion)).collect();
    let next = AtomicUsize::new(0);
    let done = Mutex::new(Vec::with_capacity(todo.len()));
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(todo.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(s) = todo.get(i) else { break };
                let mut rng = check_rng(seed, &s.id);
                let outcome = catch_unwind(AssertUnwindSafe(|| (s.run)(&mut rng)));
                let (passed, details) = match outcome {
                    Ok(Ok(d)) => (true, d),
                    Ok(Err(Fail(d))) => (false, d),
                    Err(p) => {
                        let msg = p
                            .downcast_ref::<String>()
                            .cloned()
                            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                            .unwrap_or_else(|| "panic".into());
                        (false, format!("panicked: {msg}"))
                    }
                };
                done.lock().expect("no poisoning: panics are caught").push(Check {
                    id: s.id.clone(),
                    criterion: s.criterion,
                    anchor: s.anchor,
                    passed,
                    details,
                });
            });
        }
    });
    let mut checks = done.into_inner().expect("threads joined");
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    VerificationReport { seed, checks }
}

fn definitions() -> Vec<CheckDef> {
    let mut v = Vec::new();
    classification(&mut v);
    type_invariants(&mut v);
    duality(&mut v);
    profiles(&mut v);
    cartan(&mut v);
    exceptional(&mut v);
    nilpotent(&mut v);
    dual_family(&mut v);
    v
}

// ---------------------------------------------------------------------------
// random data

fn q(n: i64) -> Q {
    rat(n, 1)
}

fn random_gl(r: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| q(r.gen_range(-3..=3)));
        if m.det() != q(0) {
            return m;
        }
    }
}

fn random_form(r: &mut ChaCha8Rng, n: usize, p: usize, max_terms: usize) -> Form {
    let sets = subsets(n, p);
    let terms = r.gen_range(0..=max_terms.min(sets.len()));
    let mut f = Form::zero(n, p, Variance::Form);
    for _ in 0..terms {
        let s = sets[r.gen_range(0..sets.len())];
        let c = rat(r.gen_range(-4..=4), r.gen_range(1..=3));
        f = f + Form::from_terms(n, p, Variance::Form, [(s, c)]).expect("set fits");
    }
    f
}

/// Forms with a spread of ranks: sparse, pulled back from fewer
/// dimensions, or wedged with a few 1-forms.
fn varied_form(r: &mut ChaCha8Rng, n: usize, p: usize) -> Form {
    match r.gen_range(0..3) {
        0 => random_form(r, n, p, 5),
        1 => {
            let k = r.gen_range(p..=n);
            let small = random_form(r, k, p, 5);
            let l = Matrix::from_fn(k, n, |_, _| q(r.gen_range(-2..=2)));
            small.pullback(&l).expect("shapes agree")
        }
        _ => {
            let s = r.gen_range(0..=p);
            let mut acc = random_form(r, n, p - s, 4);
            for _ in 0..s {
                let v: Vec<Q> = (0..n).map(|_| q(r.gen_range(-2..=2))).collect();
                acc = Form::from_coords(Variance::Form, &v).wedge(&acc).expect("degrees fit");
            }
            acc
        }
    }
}

fn random_nondegenerate(r: &mut ChaCha8Rng, n: usize) -> Form {
    let g = random_gl(r, n);
    standard_symplectic::<Q>(n, n / 2).pullback(&g).expect("square matrix")
}

fn xi(n: usize, idx: &[usize]) -> Form {
    Form::monomial(n, Variance::Form, idx, q(1))
}

fn e(n: usize, i: usize) -> Vec<Q> {
    unit(n, i - 1)
}

fn span(n: usize, idx: &[usize]) -> Subspace<Q> {
    let v: Vec<Vec<Q>> = idx.iter().map(|&i| e(n, i)).collect();
    Subspace::span(n, Variance::Vector, &v)
}

fn to_f64(f: &Form) -> extform::FormF64 {
    f.map(Scalar::to_f64_lossy)
}

fn max_abs_diff(a: &extform::FormF64, b: &extform::FormF64) -> f64 {
    (a - b).terms().values().fold(0.0, |m, x| m.max(x.abs()))
}

// ---------------------------------------------------------------------------
// 1. classification

fn classification(v: &mut Vec<CheckDef>) {
    const ANCHOR: &str = "five normal forms of 3-forms on a 6-dimensional space";
    v.push(def("c1.canonical-types", 1, ANCHOR, |_| {
        for t in ThreeFormType::NONZERO {
            let got = classify_type(&t.canonical::<Q>())?;
            ensure(got == t, || format!("canonical {t} classified as {got}"))?;
        }
        let zero = classify_type(&Form::zero(6, 3, Variance::Form))?;
        ensure(zero == ThreeFormType::Zero, || "zero form misclassified".into())?;
        Ok("a, b, c, d, e and the zero form".into())
    }));
    for t in ThreeFormType::NONZERO {
        let id = format!("c1.pullbacks.type-{}", t.letter());
        v.push(def(id, 1, "classification is GL(6)-invariant and normal forms round-trip", move |r| {
            let canonical = t.canonical::<Q>();
            let mut exact = 0;
            for k in 0..100 {
                let l = random_gl(r, 6);
                let m = canonical.pullback(&l)?;
                let res = classify(&m)?;
                ensure(res.kind == t, || format!("pullback #{k} classified as {}", res.kind))?;
                match res.normal_form {
                    Some(NormalFormBasis::Exact(b)) => {
                        ensure(m.pullback(&b)? == canonical, || format!("pullback #{k}: basis does not normalize"))?;
                        exact += 1;
                    }
                    Some(NormalFormBasis::Float { basis, residual }) => {
                        ensure(t == ThreeFormType::ComplexStable, || {
                            format!("pullback #{k}: type {t} left the exact path")
                        })?;
                        let back = to_f64(&m).pullback(&basis)?;
                        let res = max_abs_diff(&back, &to_f64(&canonical));
                        ensure(residual < FLOAT_RESIDUAL && res < FLOAT_RESIDUAL, || {
                            format!("pullback #{k}: residual {res:e}")
                        })?;
                    }
                    None => return Err(Fail(format!("pullback #{k}: no normal form"))),
                }
            }
            Ok(format!("100 pullbacks, {exact} with exact normal-form basis"))
        }));
    }
    v.push(def("c1.irrational-normal-forms", 1, "stable forms with an irrational square root of the discriminant", |_| {
        let b = ThreeFormType::Degenerate3.canonical::<Q>();
        // lambda = -8: type a with J irrational
        let m = &b + &Form::monomial(6, Variance::Form, &[2, 4, 6], q(2));
        let res = classify(&m)?;
        ensure(res.kind == ThreeFormType::ComplexStable, || format!("lambda -8 gave {}", res.kind))?;
        let Some(NormalFormBasis::Float { basis, .. }) = res.normal_form else {
            return Err(Fail("expected a floating basis for lambda = -8".into()));
        };
        let target = to_f64(&ThreeFormType::ComplexStable.canonical::<Q>());
        let ra = max_abs_diff(&to_f64(&m).pullback(&basis)?, &target);
        ensure(ra < FLOAT_RESIDUAL, || format!("type a residual {ra:e}"))?;
        // lambda = 2: type c with an irrational split
        let m = &b + &Form::monomial(6, Variance::Form, &[2, 4, 6], rat(-1, 2));
        let res = classify(&m)?;
        ensure(res.kind == ThreeFormType::RealStable, || format!("lambda 2 gave {}", res.kind))?;
        let TypeInvariants::RealStable(RealSplit::Float(pair)) = &res.invariants else {
            return Err(Fail("expected a floating split for lambda = 2".into()));
        };
        let rs = max_abs_diff(&(&pair.plus.eta + &pair.minus.eta), &to_f64(&m));
        ensure(rs < FLOAT_RESIDUAL, || format!("eta+ + eta- residual {rs:e}"))?;
        let Some(NormalFormBasis::Float { basis, .. }) = res.normal_form else {
            return Err(Fail("expected a floating basis for lambda = 2".into()));
        };
        let target = to_f64(&ThreeFormType::RealStable.canonical::<Q>());
        let rc = max_abs_diff(&to_f64(&m).pullback(&basis)?, &target);
        ensure(rc < FLOAT_RESIDUAL, || format!("type c residual {rc:e}"))?;
        Ok(format!("residuals {ra:.1e} (type a), {rc:.1e} (type c)"))
    }));
}

// ---------------------------------------------------------------------------
// 2. type invariants

fn type_invariants(v: &mut Vec<CheckDef>) {
    v.push(def("c2.type-a-complex-structure", 2, "almost complex structure of a type-a form", |_| {
        let m = ThreeFormType::ComplexStable.canonical::<Q>();
        let ComplexStructure::Exact { j, twisted } = almost_complex(&m)? else {
            return Err(Fail("canonical J should be rational".into()));
        };
        for (from, to) in [(4, 1), (6, 3), (2, 5)] {
            ensure(j.mul_vec(&e(6, from)) == e(6, to), || format!("J e{from} != e{to}"))?;
        }
        ensure(j.mul(&j) == Matrix::identity(6).scale(&q(-1)), || "J^2 != -Id".into())?;
        for a in 1..=6 {
            for b in 1..=6 {
                for c in 1..=6 {
                    let (ja, jb) = (j.mul_vec(&e(6, a)), j.mul_vec(&e(6, b)));
                    let lhs = m.evaluate(&[ja.clone(), jb, e(6, c)])?;
                    let rhs = m.evaluate(&[e(6, a), e(6, b), e(6, c)])?;
                    ensure(lhs == -rhs, || format!("m(Je{a}, Je{b}, e{c}) != -m(e{a}, e{b}, e{c})"))?;
                    let t = m.evaluate(&[ja, e(6, b), e(6, c)])?;
                    ensure(twisted.evaluate(&[e(6, a), e(6, b), e(6, c)])? == t, || {
                        "twisted form disagrees with m(J., ., .)".into()
                    })?;
                }
            }
        }
        ensure(twisted.degree() == 3, || "m(J., ., .) is not a 3-form".into())?;
        Ok("J e4 = e1, J e6 = e3, J e2 = e5, J^2 = -Id, m(J., J., .) = -m".into())
    }));
    v.push(def("c2.type-b-theta", 2, "the map Theta of a type-b form", |_| {
        let m = ThreeFormType::Degenerate3.canonical::<Q>();
        let inv = type_b_invariants(&m)?;
        for (vec, a, b) in [(2, 3, 1), (4, 5, 3), (6, 1, 5)] {
            let got = inv.apply(&m, &e(6, vec))?;
            ensure(got == xi(6, &[a, b]), || format!("Theta e{vec} = {got}"))?;
        }
        ensure(inv.h == span(6, &[2, 4, 6]), || "H != span(e2, e4, e6)".into())?;
        ensure(inv.h_prime.dim() == 3, || "dim H' != 3".into())?;
        Ok("Theta e2 = xi3^xi1, Theta e4 = xi5^xi3, Theta e6 = xi1^xi5".into())
    }));
}

// ---------------------------------------------------------------------------
// 3. duality

fn duality(v: &mut Vec<CheckDef>) {
    v.push(def("c3.star-squared", 3, "the Hodge star squares to a sign", |r| {
        let mut count = 0;
        for n in 1..=8 {
            for p in 0..=n {
                for _ in 0..3 {
                    let x = random_form(r, n, p, 6);
                    let c = rat(r.gen_range(1..=5), r.gen_range(1..=3));
                    let vol = Form::volume(n).scale(&c);
                    let back = x.hodge_star(&vol)?.hodge_star(&vol)?;
                    let sign = if (n - p) * p % 2 == 0 { q(1) } else { q(-1) };
                    ensure(back == x.scale(&sign), || format!("n = {n}, p = {p}: {x}"))?;
                    count += 1;
                }
            }
        }
        Ok(format!("{count} forms, n <= 8, all degrees"))
    }));
    v.push(def("c3.low-dimensional-duals", 3, "duals in dimensions two and four", |r| {
        for _ in 0..10 {
            let c = rat(r.gen_range(1..=9), r.gen_range(1..=4));
            let d = dual_of_2form(&xi(2, &[1, 2]).scale(&c))?;
            ensure(d == Form::scalar(2, Variance::Form, q(-1)), || format!("n = 2 dual is {d}"))?;
        }
        for _ in 0..20 {
            let s = random_nondegenerate(r, 4);
            ensure(dual_of_2form(&s)? == s.scale(&q(-1)), || format!("n = 4 dual of {s} is not -s"))?;
        }
        Ok("dual = -1 for n = 2 and -sigma for n = 4".into())
    }));
    v.push(def("c3.six-dimensional-roundtrip", 3, "2-form to indivisible 4-form and back", |r| {
        let mut exact = 0;
        for k in 0..20 {
            let sigma = random_nondegenerate(r, 6);
            let mu = dual_of_2form(&sigma)?;
            ensure(profile(&mu).indivisible, || format!("#{k}: dual is divisible"))?;
            let back = two_form_from_indivisible(&mu)?;
            ensure(back.sigma0.proportionality(&sigma).is_some(), || format!("#{k}: sigma0 not proportional"))?;
            ensure(dual_of_2form(&back.sigma0)? == mu.scale(&back.t), || format!("#{k}: dual(sigma0) != t mu"))?;
            if let Some((normalized, sign)) = back.normalized_exact() {
                let d = dual_of_2form(&normalized)?;
                ensure(d == mu.scale(&q(sign.into())), || format!("#{k}: normalized dual has the wrong scale"))?;
                exact += 1;
            } else {
                let (f, sign) = back.normalized_f64().ok_or_else(|| Fail(format!("#{k}: no float view")))?;
                let d = dual_of_2form(&f)?;
                let target = to_f64(&mu).scale(&f64::from(sign));
                let res = max_abs_diff(&d, &target);
                ensure(res < FLOAT_RESIDUAL, || format!("#{k}: float normalization residual {res:e}"))?;
            }
        }
        Ok(format!("20 forms, {exact} with a rational normalization"))
    }));
    v.push(def("c3.four-dimensional-sign", 3, "the sign is forced for even half-dimension", |r| {
        for k in 0..20 {
            let sigma = random_nondegenerate(r, 4);
            let mu = dual_of_2form(&sigma)?;
            let back = two_form_from_indivisible(&mu)?;
            ensure(back.sign_determined, || "sign should be determined for m = 2".into())?;
            let (normalized, sign) = back
                .normalized_exact()
                .ok_or_else(|| Fail(format!("#{k}: m = 2 needs no root")))?;
            ensure(sign == 1, || format!("#{k}: sign {sign}"))?;
            ensure(dual_of_2form(&normalized)? == mu, || format!("#{k}: dual(c sigma0) != mu"))?;
        }
        Ok("20 forms, sign + every time".into())
    }));
}

// ---------------------------------------------------------------------------
// 4. profiles

/// Image by enumerating every contraction with `p - 1` basis vectors.
fn image_oracle(m: &Form) -> Result<Subspace<Q>, FormError> {
    let n = m.dim();
    let mut rows = Vec::new();
    for s in subsets(n, m.degree() - 1) {
        let mut row = Vec::with_capacity(n);
        for k in 0..n {
            let mut args: Vec<Vec<Q>> = s.iter().map(|i| unit(n, i)).collect();
            args.push(unit(n, k));
            row.push(m.evaluate(&args)?);
        }
        rows.push(row);
    }
    Ok(Subspace::span(n, Variance::Form, &rows))
}

/// `{xi : xi ^ m = 0}` from the wedges with the coordinate 1-forms.
fn divisor_oracle(m: &Form) -> Result<Subspace<Q>, FormError> {
    let n = m.dim();
    if m.degree() == n {
        return Ok(Subspace::full(n, Variance::Form));
    }
    let mut cols = Vec::with_capacity(n);
    for i in 1..=n {
        cols.push(xi(n, &[i]).wedge(m)?.to_dense());
    }
    let system = Matrix::from_cols(cols[0].len(), &cols);
    Ok(Subspace::span(n, Variance::Form, &system.null_space()))
}

fn profiles(v: &mut Vec<CheckDef>) {
    v.push(def("c4.profile-laws", 4, "rank, kernel, image and divisibility of a form", |r| {
        let mut nonzero = 0;
        for k in 0..10_000 {
            let n = r.gen_range(1..=6);
            let p = r.gen_range(0..=n);
            let m = varied_form(r, n, p);
            let pr = profile(&m);
            let fail = |what: &str| Fail(format!("form #{k} ({m}): {what}"));
            if pr.rank != n - pr.kernel.dim() {
                return Err(fail("rank != n - dim kernel"));
            }
            if !pr.image.same_as(&pr.kernel.polar()) {
                return Err(fail("image is not polar to the kernel"));
            }
            if m.is_zero() {
                continue;
            }
            nonzero += 1;
            if !pr.divisibility.contains_subspace(&pr.kernel) {
                return Err(fail("kernel not inside the divisibility space"));
            }
            if pr.rank == p + 1 {
                return Err(fail("rank p + 1"));
            }
            if pr.decomposable != (pr.rank == p) {
                return Err(fail("decomposable does not match rank = p"));
            }
        }
        Ok(format!("10000 forms ({nonzero} nonzero), n <= 6"))
    }));
    v.push(def("c4.image-oracle", 4, "image and divisors against brute-force enumeration", |r| {
        for k in 0..10_000 {
            let n = r.gen_range(1..=6);
            let p = r.gen_range(1..=n);
            let m = varied_form(r, n, p);
            if m.is_zero() {
                continue;
            }
            let pr = profile(&m);
            ensure(pr.image.same_as(&image_oracle(&m)?), || format!("form #{k} ({m}): image"))?;
            ensure(pr.divisors.same_as(&divisor_oracle(&m)?), || format!("form #{k} ({m}): divisors"))?;
        }
        Ok("10000 forms, n <= 6".into())
    }));
}

// ---------------------------------------------------------------------------
// 5. Cartan forms

fn algebra(name: &str) -> Result<LieAlgebra<Q>, Fail> {
    match catalog(name)? {
        CatalogEntry::Algebra { algebra, .. } => Ok(algebra),
        CatalogEntry::Form(_) => Err(Fail(format!("{name} is not an algebra"))),
    }
}

fn cartan(v: &mut Vec<CheckDef>) {
    for name in ["sl3", "su3"] {
        let id = |s: &str| format!("c5.{name}.{s}");
        v.push(def(id("jacobi"), 5, "Jacobi identity of the structure constants", move |_| {
            let val = algebra(name)?.validate();
            ensure(val.jacobi, || "Jacobi fails".into())?;
            Ok("holds".into())
        }));
        v.push(def(id("killing-nondegenerate"), 5, "nondegenerate Killing form", move |_| {
            let g = algebra(name)?.killing_form();
            ensure(g.is_nondegenerate(), || "Killing form degenerate".into())?;
            Ok(format!("det {}", g.matrix.det()))
        }));
        v.push(def(id("cartan-identities"), 5, "normalization and curvature identities of the Cartan 3-form", move |_| {
            let a = algebra(name)?;
            a.cartan_3form()?;
            let ids = a.cartan_identities()?;
            ensure(ids.normalization, || "gamma_ipq gamma^pqj != -delta".into())?;
            ensure(ids.curvature, || "4 R != C gamma".into())?;
            Ok("gamma totally skew, gamma_ipq gamma^pqj = -delta, 4 R_ijkq = C_ij^r gamma_rkq".into())
        }));
        v.push(def(id("cartan-closed"), 5, "the Cartan 3-form is closed", move |_| {
            let a = algebra(name)?;
            let d = a.ce_differential(&a.cartan_3form()?)?;
            ensure(d.is_zero(), || format!("d gamma = {d}"))?;
            Ok("d gamma = 0".into())
        }));
        v.push(def(id("lambda2-spectrum"), 5, "curvature on 2-forms is a projection onto contractions of gamma", move |_| {
            let l = algebra(name)?.lambda2_spectrum_check()?;
            ensure(l.idempotent, || "T = -8R is not idempotent".into())?;
            ensure(l.fix_dim == 8, || format!("fix space has dimension {}", l.fix_dim))?;
            ensure(l.fix_equals_contractions, || "fix space != contractions of gamma".into())?;
            Ok(format!("fix space dimension {}", l.fix_dim))
        }));
        v.push(def(id("sym2-kernel"), 5, "no symmetric 2-tensors with 8R b = b", move |_| {
            let s = algebra(name)?.sym2_spectrum_check()?;
            ensure(s.kernel_dim == 0, || format!("kernel dimension {}", s.kernel_dim))?;
            Ok("ker(8R - Id) on Sym2 = 0".into())
        }));
        v.push(def(id("isotropy-equals-ad"), 5, "the isotropy algebra of gamma is ad(g)", move |_| {
            let c = algebra(name)?.isotropy_equals_ad()?;
            ensure(c.equal && c.isotropy_dim == 8, || format!("isotropy {} vs ad {}", c.isotropy_dim, c.ad_dim))?;
            Ok(format!("dimension {}", c.isotropy_dim))
        }));
    }
}

// ---------------------------------------------------------------------------
// 6. exceptional forms

fn exceptional(v: &mut Vec<CheckDef>) {
    for (name, short, nullity) in [("g2-form", "g2", 14usize), ("spin7-form", "spin7", 21)] {
        v.push(def(format!("c6.{short}.nullity"), 6, "dimension of the isotropy algebra", move |_| {
            let mu = catalog(name)?.form().cloned().ok_or_else(|| Fail("no form".into()))?;
            let dim = isotropy_subspace(&mu).dim();
            ensure(dim == nullity, || format!("nullity {dim}, expected {nullity}"))?;
            Ok(format!("nullity {dim}"))
        }));
        v.push(def(format!("c6.{short}.identity-metric"), 6, "isotropy is skew-adjoint for the identity metric", move |_| {
            let mu = catalog(name)?.form().cloned().ok_or_else(|| Fail("no form".into()))?;
            let h = isotropy_algebra(&mu)?;
            ensure(is_skew_metric(&h, &Matrix::identity(mu.dim())), || "identity is not a certificate".into())?;
            Ok(format!("{} generators are skew", h.len()))
        }));
    }
}

// ---------------------------------------------------------------------------
// 7. nilpotent examples

fn nilpotent_entry(x: &str) -> Result<(LieAlgebra<Q>, Form), Fail> {
    match catalog(&format!("nilpotent-{x}"))? {
        CatalogEntry::Algebra { algebra, form: Some(mu) } => Ok((algebra, mu)),
        _ => Err(Fail("catalog entry lacks its 3-form".into())),
    }
}

fn nilpotent(v: &mut Vec<CheckDef>) {
    for (x, t) in [
        ("a", ThreeFormType::ComplexStable),
        ("b", ThreeFormType::Degenerate3),
        ("c", ThreeFormType::RealStable),
    ] {
        v.push(def(format!("c7.nilpotent-{x}.closed"), 7, "the invariant 3-form is closed", move |_| {
            let (alg, mu) = nilpotent_entry(x)?;
            ensure(alg.jacobi_holds(), || "Jacobi fails".into())?;
            let d = alg.ce_differential(&mu)?;
            ensure(d.is_zero(), || format!("d mu = {d}"))?;
            Ok("d mu = 0".into())
        }));
        v.push(def(format!("c7.nilpotent-{x}.type"), 7, "type of the invariant 3-form", move |_| {
            let (_, mu) = nilpotent_entry(x)?;
            let got = classify_type(&mu)?;
            ensure(got == t, || format!("type {got}, expected {t}"))?;
            Ok(format!("type {}", t.letter()))
        }));
    }
    v.push(def("c7.nilpotent-a.nijenhuis", 7, "Nijenhuis tensor of the induced almost complex structure", |_| {
        let (alg, mu) = nilpotent_entry("a")?;
        let ComplexStructure::Exact { j, .. } = almost_complex(&mu)? else {
            return Err(Fail("J should be rational".into()));
        };
        let n = alg.nijenhuis(&j)?;
        ensure(n.get(&(0, 1)) == Some(&e(6, 5)), || format!("N(e1, e2) = {:?}", n.get(&(0, 1))))?;
        Ok("N(e1, e2) = e5".into())
    }));
    v.push(def("c7.nilpotent-b.h-not-closed", 7, "the distribution H of a type-b form is not integrable", |_| {
        let (alg, mu) = nilpotent_entry("b")?;
        let inv = type_b_invariants(&mu)?;
        ensure(inv.h == span(6, &[2, 4, 6]), || "H != span(e2, e4, e6)".into())?;
        ensure(!alg.bracket_closed(&inv.h)?, || "H is bracket-closed".into())?;
        Ok("[H, H] not in H".into())
    }));
    v.push(def("c7.nilpotent-c.h-pm-not-closed", 7, "the distributions of a type-c form are not integrable", |_| {
        let (alg, mu) = nilpotent_entry("c")?;
        let RealSplit::Exact(pair) = type_c_invariants(&mu)? else {
            return Err(Fail("split should be rational".into()));
        };
        ensure(!alg.bracket_closed(&pair.plus.h)?, || "H+ is bracket-closed".into())?;
        ensure(!alg.bracket_closed(&pair.minus.h)?, || "H- is bracket-closed".into())?;
        Ok("neither H+ nor H- is closed".into())
    }));
}

// ---------------------------------------------------------------------------
// 8. dual family

fn poly(s: &str) -> Polynomial {
    Polynomial::parse(s).expect("built-in polynomial")
}

/// `phi_i = c + a x^alpha` with positive constants.
fn random_monomial_family(r: &mut ChaCha8Rng, m: usize) -> Vec<Polynomial> {
    (0..m)
        .map(|_| {
            let mut exps = vec![0u32; 2 * m];
            for x in exps.iter_mut() {
                if r.gen_bool(0.3) {
                    *x = r.gen_range(1..=2);
                }
            }
            let c = Polynomial::constant(q(r.gen_range(1..=4)));
            &c + &Polynomial::term(q(r.gen_range(1..=3)), Monomial::new(exps))
        })
        .collect()
}

fn dual_family(v: &mut Vec<CheckDef>) {
    const ANCHOR: &str = "closedness of the dual pair built from phi_1, ..., phi_m";
    v.push(def("c8.unit-family", 8, ANCHOR, |_| {
        let phis = vec![Polynomial::one(); 3];
        ensure(duncl_zeta_closed(3, &phis)?, || "zeta not closed".into())?;
        ensure(duncl_sigma_closed(3, &phis)?, || "sigma not closed".into())?;
        Ok("zeta and sigma closed".into())
    }));
    v.push(def("c8.counterexample", 8, "closed zeta whose dual 2-form is not closed", |_| {
        let phis = vec![poly("1 + x3^2 + x5^2"), Polynomial::one(), Polynomial::one()];
        let dz = duncl_zeta(3, &phis)?.d()?;
        ensure(dz.is_zero(), || format!("d zeta = {dz}"))?;
        ensure(duncl_zeta_closed(3, &phis)?, || "criterion says zeta is not closed".into())?;
        ensure(!duncl_sigma_closed(3, &phis)?, || "sigma is closed".into())?;
        Ok("d zeta = 0 exactly, sigma not closed".into())
    }));
    v.push(def("c8.separated-family", 8, "separated products give a closed sigma", |r| {
        let mut families = vec![vec![poly("1 + x1^2"), poly("1 + x3^2"), poly("1 + x5^2")]];
        while families.len() < 20 {
            let rhos: Vec<Polynomial> = (0..3)
                .map(|j| {
                    let x = |k: usize| Polynomial::var(k);
                    let a = q(r.gen_range(-2..=2));
                    let b = q(r.gen_range(-2..=2));
                    &(&Polynomial::constant(q(r.gen_range(1..=3))) + &x(2 * j + 1).pow(2).scale(&a))
                        + &x(2 * j + 2).scale(&b)
                })
                .collect();
            families.push(rhos);
        }
        for rhos in &families {
            let phis = phis_from_rhos(rhos)?;
            ensure(duncl_sigma_closed(3, &phis)?, || format!("sigma not closed for rho = {rhos:?}"))?;
            ensure(duncl_zeta_closed(3, &phis)?, || format!("zeta not closed for rho = {rhos:?}"))?;
        }
        Ok(format!("{} families", families.len()))
    }));
    v.push(def("c8.criterion-vs-direct", 8, "the derivative criterion for zeta agrees with d zeta", |r| {
        let mut closed = 0;
        for k in 0..100 {
            let phis = random_monomial_family(r, 3);
            let criterion = duncl_zeta_criterion(3, &phis)?;
            let direct = duncl_zeta(3, &phis)?.d()?.is_zero();
            ensure(criterion == direct, || format!("family #{k}: criterion {criterion}, direct {direct}"))?;
            closed += usize::from(direct);
        }
        Ok(format!("100 families, {closed} closed"))
    }));
}
