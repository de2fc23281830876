use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use extform::invariants::{
    dual_of_2form, factor_decomposable, indivisible_factorization, isotropy_algebra, profile,
    skew_metric_certificate, two_form_from_indivisible,
};
use extform::io::{parse_algebra, parse_form};
use extform::lie::{catalog, CatalogEntry};
use extform::polyforms::{default_samples, duncl_verdicts, duncl_zeta, Polynomial};
use extform::threeform::{
    classify, type_b_invariants, type_c_invariants, ComplexStructure, NormalFormBasis, RealSplit,
    ThreeFormType, TypeInvariants,
};
use extform::{Form, FormError, LieAlgebra, Q};
use serde_json::{json, Value};

use crate::report;
use crate::verify::{self, CRITERIA};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_MATH: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// `classify` exits with `10 + index` in `a, b, c, d, e, zero` order.
pub fn type_exit_code(t: ThreeFormType) -> i32 {
    match t {
        ThreeFormType::ComplexStable => 10,
        ThreeFormType::Degenerate3 => 11,
        ThreeFormType::RealStable => 12,
        ThreeFormType::OneDivisor => 13,
        ThreeFormType::Decomposable => 14,
        ThreeFormType::Zero => 15,
    }
}

#[derive(Parser, Debug)]
#[command(name = "extform", version, about = "Exact computations with exterior forms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// `float` reports irrational normalizations as floating-point data only.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,
    /// Write the report document here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rank, kernel, image and divisibility of a form.
    Profile { form: PathBuf },
    /// Type of a 3-form on a 6-dimensional space, with invariants and a normal-form basis.
    Classify { form: PathBuf },
    /// Split off the linear divisors of a form.
    Factor { form: PathBuf },
    /// Dual (n-2)-form of a nondegenerate 2-form, or the 2-form recovered from an indivisible (n-2)-form.
    Dualize {
        form: PathBuf,
        /// Treat the input as the (n-2)-form even when n = 4.
        #[arg(long)]
        recover: bool,
    },
    /// Isotropy algebra of a form and a metric making it skew-adjoint.
    Isotropy { form: PathBuf },
    /// Check structure constants; `catalog:NAME` selects a built-in algebra.
    LieCheck {
        algebra: String,
        /// Invariant form to test for closedness and integrability.
        #[arg(long)]
        mu: Option<PathBuf>,
    },
    /// Verdicts for the dual pair built from phi_1, ..., phi_m.
    Duncl {
        #[arg(long)]
        m: usize,
        /// Polynomials such as `1 + 3/2 x1^2 x5`; write `--phi=-x1` for a
        /// leading minus sign.
        #[arg(long, num_args = 1.., required = true)]
        phi: Vec<String>,
    },
    /// Run the built-in regression suite.
    #[command(alias = "verify-paper")]
    Verify {
        /// Only this criterion (1-8).
        #[arg(long)]
        criterion: Option<u8>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Profile { .. } => "profile",
            Command::Classify { .. } => "classify",
            Command::Factor { .. } => "factor",
            Command::Dualize { .. } => "dualize",
            Command::Isotropy { .. } => "isotropy",
            Command::LieCheck { .. } => "lie-check",
            Command::Duncl { .. } => "duncl",
            Command::Verify { .. } => "verify",
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Parse { position: String, message: String },
    Math(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => EXIT_IO,
            CliError::Parse { .. } => EXIT_PARSE,
            CliError::Math(_) => EXIT_MATH,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CliError::Io(m) => json!({"kind": "io", "message": m}),
            CliError::Parse { position, message } => {
                json!({"kind": "parse", "position": position, "message": message})
            }
            CliError::Math(m) => json!({"kind": "math", "message": m}),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Parse { position, message } => write!(f, "parse error at {position}: {message}"),
            CliError::Math(m) => write!(f, "{m}"),
        }
    }
}

impl From<FormError> for CliError {
    fn from(e: FormError) -> Self {
        match e {
            FormError::Parse { position, message } => CliError::Parse { position, message },
            other => CliError::Math(other.to_string()),
        }
    }
}

/// A finished command: the report document, summary lines and exit code.
#[derive(Debug)]
pub struct Outcome {
    pub report: Value,
    pub summary: Vec<String>,
    pub exit: i32,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn load_form(path: &Path) -> Result<Form, CliError> {
    Ok(parse_form(&read(path)?)?)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let name = cli.command.name();
    let (ok, result, summary, exit) = match &cli.command {
        Command::Profile { form } => run_profile(&load_form(form)?),
        Command::Classify { form } => run_classify(&load_form(form)?, cli.mode)?,
        Command::Factor { form } => run_factor(&load_form(form)?)?,
        Command::Dualize { form, recover } => run_dualize(&load_form(form)?, *recover, cli.mode)?,
        Command::Isotropy { form } => run_isotropy(&load_form(form)?)?,
        Command::LieCheck { algebra, mu } => {
            let mu = mu.as_deref().map(load_form).transpose()?;
            run_lie_check(&load_algebra(algebra)?, mu.as_ref())?
        }
        Command::Duncl { m, phi } => run_duncl(*m, phi)?,
        Command::Verify { criterion } => run_verify(*criterion, cli.seed)?,
    };
    Ok(Outcome {
        report: report::document(name, ok, result),
        summary,
        exit,
    })
}

type Parts = (bool, Value, Vec<String>, i32);

fn run_profile(m: &Form) -> Parts {
    let p = profile(m);
    let result = json!({
        "form": report::form(m),
        "rank": p.rank,
        "kernel": report::subspace(&p.kernel),
        "image": report::subspace(&p.image),
        "divisibility": report::subspace(&p.divisibility),
        "divisors": report::subspace(&p.divisors),
        "decomposable": p.decomposable,
        "indivisible": p.indivisible,
    });
    let summary = vec![
        format!("{}-form in dimension {}", m.degree(), m.dim()),
        format!("rank {}, kernel dimension {}", p.rank, p.kernel.dim()),
        format!("linear divisors: {}, divisibility space dimension {}", p.divisors.dim(), p.divisibility.dim()),
        format!("decomposable: {}, indivisible: {}", yes(p.decomposable), yes(p.indivisible)),
    ];
    (true, result, summary, EXIT_OK)
}

fn run_classify(m: &Form, mode: Mode) -> Result<Parts, CliError> {
    let res = classify(m)?;
    let float = mode == Mode::Float;
    let invariants = match &res.invariants {
        TypeInvariants::ComplexStable(cs) => match cs {
            ComplexStructure::Exact { j, twisted } if !float => json!({
                "exact": true,
                "j": report::matrix(j),
                "twisted": report::form(twisted),
            }),
            ComplexStructure::Exact { twisted, .. } => json!({
                "exact": false,
                "j": report::matrix_f64(&cs.j_f64()),
                "twisted": report::form_f64(&twisted.map(extform::Scalar::to_f64_lossy)),
            }),
            ComplexStructure::Scaled { k, lambda, j, twisted } => json!({
                "exact": false,
                "k": report::matrix(k),
                "lambda": report::rational(lambda),
                "j": report::matrix_f64(j),
                "twisted": report::form_f64(twisted),
            }),
        },
        TypeInvariants::Degenerate3(b) => json!({
            "h": report::subspace(&b.h),
            "h_prime": report::subspace(&b.h_prime),
            "theta": report::matrix(&b.theta),
        }),
        TypeInvariants::RealStable(RealSplit::Exact(pair)) if !float => json!({
            "exact": true,
            "plus": {"h": report::subspace(&pair.plus.h), "eta": report::form(&pair.plus.eta)},
            "minus": {"h": report::subspace(&pair.minus.h), "eta": report::form(&pair.minus.eta)},
        }),
        TypeInvariants::RealStable(split) => {
            let pair = match split {
                RealSplit::Exact(p) => extform::threeform::StablePair {
                    plus: half_f64(&p.plus),
                    minus: half_f64(&p.minus),
                },
                RealSplit::Float(p) => p.clone(),
            };
            json!({
                "exact": false,
                "plus": {"h": report::subspace_f64(&pair.plus.h), "eta": report::form_f64(&pair.plus.eta)},
                "minus": {"h": report::subspace_f64(&pair.minus.h), "eta": report::form_f64(&pair.minus.eta)},
            })
        }
        TypeInvariants::OneDivisor { divisibility, divisor, zeta } => json!({
            "divisibility": report::subspace(divisibility),
            "divisor": report::form(divisor),
            "zeta": report::form(zeta),
        }),
        TypeInvariants::Decomposable { factors } => json!({
            "factors": factors.iter().map(report::form).collect::<Vec<_>>(),
        }),
        TypeInvariants::Zero => Value::Null,
    };
    let normal_form = match &res.normal_form {
        Some(NormalFormBasis::Exact(b)) if !float => json!({"exact": true, "basis": report::matrix(b)}),
        Some(NormalFormBasis::Exact(b)) => json!({
            "exact": false,
            "basis": report::matrix_f64(&b.map(extform::Scalar::to_f64_lossy)),
            "residual": 0.0,
        }),
        Some(NormalFormBasis::Float { basis, residual }) => json!({
            "exact": false,
            "basis": report::matrix_f64(basis),
            "residual": residual,
        }),
        None => Value::Null,
    };
    let result = json!({
        "form": report::form(m),
        "type": res.kind.name(),
        "letter": res.kind.letter(),
        "rank": res.rank,
        "lambda": report::rational(&res.discriminant.lambda),
        "invariants": invariants,
        "normal_form": normal_form,
    });
    let mut summary = vec![
        format!("type {} ({})", res.kind.letter(), res.kind.name()),
        format!("rank {}, lambda = {}", res.rank, extform::scalar::format_rational(&res.discriminant.lambda)),
    ];
    match &res.normal_form {
        Some(NormalFormBasis::Exact(_)) => summary.push("normal-form basis is exact".into()),
        Some(NormalFormBasis::Float { residual, .. }) => {
            summary.push(format!("normal-form basis is floating, residual {residual:.2e}"))
        }
        None => {}
    }
    Ok((true, result, summary, type_exit_code(res.kind)))
}

fn half_f64(h: &extform::threeform::StableHalf<Q>) -> extform::threeform::StableHalf<f64> {
    let basis = h.h.basis().map(extform::Scalar::to_f64_lossy);
    extform::threeform::StableHalf {
        h: extform::Subspace::from_matrix(h.h.variance(), &basis),
        eta: h.eta.map(extform::Scalar::to_f64_lossy),
    }
}

fn run_factor(m: &Form) -> Result<Parts, CliError> {
    let p = profile(m);
    let f = indivisible_factorization(m, &p)?;
    let factors = if p.decomposable && m.degree() > 0 {
        Some(factor_decomposable(m, &p)?)
    } else {
        None
    };
    let result = json!({
        "form": report::form(m),
        "divisors": f.volume_factor.iter().map(report::form).collect::<Vec<_>>(),
        "indivisible": report::form(&f.indivisible),
        "complement": f.complement.iter().map(report::form).collect::<Vec<_>>(),
        "decomposable_factors": factors.as_ref().map(|fs| fs.iter().map(report::form).collect::<Vec<_>>()),
    });
    let mut summary = vec![
        format!("{} linear divisor(s)", f.volume_factor.len()),
        format!("indivisible factor: {}", f.indivisible),
    ];
    if let Some(fs) = &factors {
        let text: Vec<String> = fs.iter().map(ToString::to_string).collect();
        summary.push(format!("decomposable: {}", text.join(" ^ ")));
    }
    Ok((true, result, summary, EXIT_OK))
}

fn run_dualize(m: &Form, recover: bool, mode: Mode) -> Result<Parts, CliError> {
    let n = m.dim();
    if m.degree() == 2 && !recover {
        let mu = dual_of_2form(m)?;
        let result = json!({"direction": "dual", "sigma": report::form(m), "dual": report::form(&mu)});
        let summary = vec![format!("dual: {mu}")];
        return Ok((true, result, summary, EXIT_OK));
    }
    if n < 2 || m.degree() != n - 2 {
        return Err(CliError::Math(format!(
            "expected a 2-form or an {}-form in dimension {n}",
            n.saturating_sub(2)
        )));
    }
    let d = two_form_from_indivisible(m)?;
    let exact = if mode == Mode::Exact { d.normalized_exact() } else { None };
    let normalized = match &exact {
        Some((s, sign)) => json!({"exact": true, "sigma": report::form(s), "sign": sign}),
        None => match d.normalized_f64() {
            Some((s, sign)) => json!({"exact": false, "sigma": report::form_f64(&s), "sign": sign}),
            None => Value::Null,
        },
    };
    let result = json!({
        "direction": "recover",
        "mu": report::form(m),
        "sigma0": report::form(&d.sigma0),
        "kappa": report::rational(&d.kappa),
        "t": report::rational(&d.t),
        "sign_determined": d.sign_determined,
        "normalized": normalized,
    });
    let mut summary = vec![
        format!("sigma0 = {}", d.sigma0),
        format!("dual(sigma0) = {} * mu", extform::scalar::format_rational(&d.t)),
    ];
    if let Some((s, sign)) = &exact {
        summary.push(format!("normalized: {s}, dual = {sign} * mu"));
    }
    Ok((true, result, summary, EXIT_OK))
}

fn run_isotropy(m: &Form) -> Result<Parts, CliError> {
    let h = isotropy_algebra(m)?;
    let metric = skew_metric_certificate(m.dim(), &h)?;
    let result = json!({
        "form": report::form(m),
        "dim": h.len(),
        "basis": h.iter().map(report::matrix).collect::<Vec<_>>(),
        "skew_metric": metric.as_ref().map(report::matrix),
    });
    let summary = vec![
        format!("isotropy algebra of dimension {}", h.len()),
        format!("nondegenerate invariant metric: {}", yes(metric.is_some())),
    ];
    Ok((true, result, summary, EXIT_OK))
}

fn load_algebra(arg: &str) -> Result<LieAlgebra<Q>, CliError> {
    if let Some(name) = arg.strip_prefix("catalog:") {
        return match catalog(name)? {
            CatalogEntry::Algebra { algebra, .. } => Ok(algebra),
            CatalogEntry::Form(_) => Err(CliError::Math(format!("{name} is a form, not an algebra"))),
        };
    }
    Ok(parse_algebra(&read(Path::new(arg))?)?)
}

fn run_lie_check(alg: &LieAlgebra<Q>, mu: Option<&Form>) -> Result<Parts, CliError> {
    let v = alg.validate();
    let mut ok = v.jacobi;
    let mut summary = vec![format!(
        "dimension {}, Jacobi: {}, semisimple: {}",
        alg.dim(),
        yes(v.jacobi),
        yes(v.semisimple)
    )];
    let killing = alg.killing_form();
    let mut result = json!({
        "dim": alg.dim(),
        "jacobi": v.jacobi,
        "semisimple": v.semisimple,
        "killing": report::matrix(&killing.matrix),
    });
    if !v.jacobi {
        summary.push("not a Lie algebra; skipping the remaining checks".into());
        return Ok((false, result, summary, EXIT_CHECK_FAILED));
    }
    if v.semisimple {
        let gamma = alg.cartan_3form()?;
        let closed = gamma.degree() >= alg.dim() || alg.ce_differential(&gamma)?.is_zero();
        let iso = alg.isotropy_equals_ad()?;
        ok &= closed && iso.equal;
        result["cartan"] = json!({
            "form": report::form(&gamma),
            "closed": closed,
            "isotropy_dim": iso.isotropy_dim,
            "ad_dim": iso.ad_dim,
            "isotropy_equals_ad": iso.equal,
        });
        summary.push(format!("Cartan 3-form closed: {}", yes(closed)));
        summary.push(format!("isotropy of the Cartan form = ad(g): {} (dimension {})", yes(iso.equal), iso.isotropy_dim));
    }
    if let Some(mu) = mu {
        if mu.dim() != alg.dim() {
            return Err(CliError::Math(format!(
                "form has dimension {}, algebra has dimension {}",
                mu.dim(),
                alg.dim()
            )));
        }
        let closed = mu.degree() >= alg.dim() || alg.ce_differential(mu)?.is_zero();
        ok &= closed;
        let ad = alg.ad_image();
        let iso = extform::invariants::isotropy_subspace(mu);
        let mut mu_report = json!({
            "form": report::form(mu),
            "closed": closed,
            "isotropy_dim": iso.dim(),
            "ad_dim": ad.dim(),
            "ad_in_isotropy": iso.contains_subspace(&ad),
        });
        summary.push(format!("d mu = 0: {}", yes(closed)));
        if mu.dim() == 6 && mu.degree() == 3 {
            let res = classify(mu)?;
            mu_report["type"] = json!(res.kind.letter());
            summary.push(format!("mu has type {} ({})", res.kind.letter(), res.kind.name()));
            match &res.invariants {
                TypeInvariants::ComplexStable(ComplexStructure::Exact { j, .. }) => {
                    let n = alg.nijenhuis(j)?;
                    let entries: Vec<Value> = n
                        .iter()
                        .map(|((a, b), v)| json!({"pair": [a + 1, b + 1], "value": report::vector(v)}))
                        .collect();
                    mu_report["nijenhuis"] = Value::Array(entries);
                    mu_report["integrable"] = json!(n.is_empty());
                    summary.push(format!("J integrable: {}", yes(n.is_empty())));
                }
                TypeInvariants::Degenerate3(_) => {
                    let b = type_b_invariants(mu)?;
                    let closed = alg.bracket_closed(&b.h)?;
                    mu_report["h"] = report::subspace(&b.h);
                    mu_report["h_bracket_closed"] = json!(closed);
                    summary.push(format!("H bracket-closed: {}", yes(closed)));
                }
                TypeInvariants::RealStable(_) => {
                    if let RealSplit::Exact(pair) = type_c_invariants(mu)? {
                        let plus = alg.bracket_closed(&pair.plus.h)?;
                        let minus = alg.bracket_closed(&pair.minus.h)?;
                        mu_report["h_plus_bracket_closed"] = json!(plus);
                        mu_report["h_minus_bracket_closed"] = json!(minus);
                        summary.push(format!("H+ bracket-closed: {}, H- bracket-closed: {}", yes(plus), yes(minus)));
                    }
                }
                _ => {}
            }
        }
        result["mu"] = mu_report;
    }
    let exit = if ok { EXIT_OK } else { EXIT_CHECK_FAILED };
    Ok((ok, result, summary, exit))
}

fn run_duncl(m: usize, phi: &[String]) -> Result<Parts, CliError> {
    let phis = phi
        .iter()
        .map(|s| Polynomial::parse(s))
        .collect::<Result<Vec<_>, _>>()?;
    let zeta = duncl_zeta(m, &phis)?;
    let v = duncl_verdicts(m, &phis, &default_samples(m))?;
    let result = json!({
        "m": m,
        "phi": phis.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "zeta": report::polyform(&zeta),
        "indivisible_at_samples": v.indivisible,
        "dual_at_samples": v.dual,
        "zeta_closed": v.zeta_closed,
        "sigma_closed": v.sigma_closed,
        "samples_used": v.samples_used,
    });
    let summary = vec![
        format!("(a) zeta indivisible at {} sample point(s): {}", v.samples_used, yes(v.indivisible)),
        format!("(b) sigma and zeta dual at the samples: {}", yes(v.dual)),
        format!("(c) zeta closed: {}", yes(v.zeta_closed)),
        format!("(d) sigma closed: {}", yes(v.sigma_closed)),
    ];
    Ok((true, result, summary, EXIT_OK))
}

fn run_verify(criterion: Option<u8>, seed: u64) -> Result<Parts, CliError> {
    let rep = match criterion {
        Some(k) if (1..=8).contains(&k) => verify::run_criterion(k, seed),
        Some(k) => return Err(CliError::Math(format!("no criterion {k}; expected 1-8"))),
        None => verify::run_all(seed),
    };
    let mut summary = Vec::new();
    for (i, title) in CRITERIA.iter().enumerate() {
        let k = i as u8 + 1;
        let n = rep.checks.iter().filter(|c| c.criterion == k).count();
        if n == 0 {
            continue;
        }
        let verdict = if rep.criterion_passed(k) { "pass" } else { "FAIL" };
        summary.push(format!("criterion {k} ({title}): {verdict}, {n} checks"));
    }
    for c in rep.failures() {
        summary.push(format!("  failed {}: {}", c.id, c.details));
    }
    let ok = rep.passed();
    summary.push(format!("{} of {} checks passed", rep.checks.iter().filter(|c| c.passed).count(), rep.checks.len()));
    Ok((ok, rep.to_json(), summary, if ok { EXIT_OK } else { EXIT_CHECK_FAILED }))
}
