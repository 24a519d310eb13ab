// SPDX-License-Identifier: Apache-2.0

//! Numerical checks of the norm, entropy and capacity inequalities on
//! concrete instances, plus seeded sweeps over random instance families.
//!
//! Every check returns [`CheckReport`]s with `lhs ≤ rhs` or `lhs = rhs`
//! semantics. Checks that depend on an optimizer never pass when the
//! optimizer failed its stopping rule; they come back
//! [`CheckStatus::Inconclusive`].

pub mod block;
pub mod report;
pub mod sweep;

pub use block::{
    assemble_blocks, block_decompose, block_psd_from, half_noisy, random_block_psd,
    random_block_psd_with, split_blocks, BlockDecomposition, ContractionKind, MAX_EXPANSION_P,
};
pub use report::{
    format_gap, format_value, summarize, to_csv, to_json_lines, CheckReport, CheckStatus,
    Relation, Summary, CSV_HEADER,
};
pub use sweep::{instance_seeds, run_instance, run_sweep, Candidate, CheckKind, SweepConfig, SweepOutcome};

use crate::capacity::{chi_star, CapacityOptions, CapacityResult};
use crate::channels::{tensor_channels, Channel, ChannelForm, QubitAffineParams};
use crate::channels::satisfies_translation_condition;
use crate::error::{invalid_input, invalid_param, Result};
use crate::matcore::linalg::{hermitize, max_abs_diff, psd_sqrt, real_diag};
use crate::matcore::{
    c, eigh, eigvalsh, entropy_of_spectrum, partial_trace, relative_entropy_raw, schatten_norm,
    tensor, trace_power, CMatrix, DensityMatrix, Keep, LogReference,
};
use crate::purity::{nu_p, nu_p_depolarizing, s_min, PurityOptions, PurityResult, MAX_INPUT_DIM};
use crate::tolerance;

use block::check_psd;

/// Traces below this make a block degenerate.
pub const DEGENERATE_TRACE: f64 = 1e-12;

/// `ν_p(Φ)` as used on the right-hand side of a check: the closed form for
/// depolarizing qubit maps, else the optimizer with doubled restarts.
/// The flag is false when the optimizer did not converge.
pub fn certified_nu(phi: &Channel, p: f64, opts: &PurityOptions) -> Result<(f64, bool)> {
    if let Some(q) = phi.qubit_params() {
        if q.is_depolarizing() {
            return Ok((nu_p_depolarizing(q.lambda[0], p)?, true));
        }
    }
    let r = nu_p(phi, p, &opts.certified())?;
    Ok((r.value, r.converged))
}

fn require_qubit(phi: &Channel) -> Result<()> {
    if phi.d_in() != 2 {
        return Err(invalid_param(format!(
            "expected a channel on a qubit, input dimension is {}",
            phi.d_in()
        )));
    }
    Ok(())
}

fn is_integer(p: f64) -> bool {
    (p - p.round()).abs() <= 1e-12
}

/// Qubit parameters of a channel with qubit input and output, whatever its
/// native form.
fn qubit_parameters(phi: &Channel) -> Option<QubitAffineParams> {
    match phi.qubit_params() {
        Some(q) => Some(*q),
        None if phi.is_qubit() => QubitAffineParams::normal_form(phi),
        None => None,
    }
}

/// Whether `‖(I ⊗ Φ)(M)‖_p ≤ ν_p(Φ)(‖X‖_p + ‖Z‖_p)` is a theorem for this
/// `(Φ, p)`: `p = 2`, or integer `p` with the translation condition.
pub fn conjecture1_proved(phi: &Channel, p: f64) -> bool {
    if (p - 2.0).abs() <= 1e-12 || (p - 1.0).abs() <= 1e-12 {
        return true;
    }
    is_integer(p) && qubit_parameters(phi).is_some_and(|q| satisfies_translation_condition(&q))
}

/// `‖(I ⊗ Φ)(M)‖_p` against `ν_p(Φ)(‖X‖_p + ‖Z‖_p)`.
pub fn check_conjecture1(
    phi: &Channel,
    m: &CMatrix,
    p: f64,
    opts: &PurityOptions,
) -> Result<CheckReport> {
    require_qubit(phi)?;
    check_psd(m)?;
    let (nu, converged) = certified_nu(phi, p, opts)?;
    let report = check_conjecture1_with_nu(phi, m, p, nu)?;
    Ok(if converged {
        report
    } else {
        report.inconclusive("purity optimizer did not converge")
    })
}

/// As [`check_conjecture1`] with `ν_p(Φ)` supplied by the caller.
pub fn check_conjecture1_with_nu(
    phi: &Channel,
    m: &CMatrix,
    p: f64,
    nu: f64,
) -> Result<CheckReport> {
    require_qubit(phi)?;
    check_psd(m)?;
    let (x, _, z) = split_blocks(m)?;
    let out = half_noisy(phi, m)?;
    let lhs = schatten_norm(&out, p)?;
    let xn = schatten_norm(&x, p)?;
    let zn = schatten_norm(&z, p)?;
    let scope = if conjecture1_proved(phi, p) { "proved" } else { "exploratory" };
    Ok(
        CheckReport::at_most("conjecture1", lhs, nu * (xn + zn), tolerance::PROVED_INEQUALITY)
            .with("p", p)
            .with("nu_p", nu)
            .with("x_norm", xn)
            .with("z_norm", zn)
            .with("k", m.nrows() / 2)
            .with("scope", scope),
    )
}

/// The entropy bound `S((I⊗Φ)(M)) ≥ S_min(Φ) + Tr X·S(ξ) + Tr Z·S(ζ)` with
/// `ξ = X/Tr X`, `ζ = Z/Tr Z`. Reported as `lhs = bound`, `rhs = S`.
pub fn check_entropy_bound(phi: &Channel, m: &CMatrix, opts: &PurityOptions) -> Result<CheckReport> {
    require_qubit(phi)?;
    check_psd(m)?;
    let tr = m.trace().re;
    if (tr - 1.0).abs() > tolerance::UNIT_TRACE {
        return Err(invalid_input(format!("block matrix has trace {tr}, expected 1")));
    }
    let (x, _, z) = split_blocks(m)?;
    let (tx, tz) = (x.trace().re, z.trace().re);
    if tx < DEGENERATE_TRACE || tz < DEGENERATE_TRACE {
        return Ok(CheckReport::skipped("entropy-bound", "a diagonal block has vanishing trace"));
    }
    let s_xi = entropy_of_spectrum(&eigvalsh(&(&x / c(tx, 0.0))));
    let s_zeta = entropy_of_spectrum(&eigvalsh(&(&z / c(tz, 0.0))));
    let smin = s_min(phi, &opts.certified())?;
    let out = half_noisy(phi, m)?;
    let s_out = entropy_of_spectrum(&eigvalsh(&out));
    let bound = smin.value + tx * s_xi + tz * s_zeta;
    let report = CheckReport::at_most("entropy-bound", bound, s_out, tolerance::PROVED_INEQUALITY)
        .with("s_min", smin.value)
        .with("trace_x", tx)
        .with("entropy_xi", s_xi)
        .with("entropy_zeta", s_zeta);
    Ok(if smin.converged {
        report
    } else {
        report.inconclusive("entropy optimizer did not converge")
    })
}

fn matrix_power(m: &CMatrix, p: f64) -> CMatrix {
    eigh(m).map(|x| x.max(0.0).powf(p))
}

/// The Lieb–Ruskai bound on `[[X, λY], [λY*, X]]` with `Y = √X V √X`:
///
/// * `lieb-ruskai`: `‖·‖_p ≤ ν_p(Δ_λ) · 2‖X‖_p`;
/// * `lieb-thirring`: `Tr(F^{1/2} G F^{1/2})^p ≤ Tr(F^p G^p)` with
///   `F = I ⊗ X`, `G = [[I, λV], [λV*, I]]`;
/// * `lieb-ruskai-trace`: `Tr(F^p G^p)^{1/p}` equals the bound;
/// * `lieb-ruskai-spectrum`: `G` has eigenvalues `1 ± λ`, each `K` times;
/// * `lieb-ruskai-diagonalization`: `G = ½ U D U` with
///   `U = [[I, V], [V*, −I]]`, `D = diag((1+λ)I, (1−λ)I)`.
pub fn check_lieb_ruskai(x: &CMatrix, v: &CMatrix, lambda: f64, p: f64) -> Result<Vec<CheckReport>> {
    check_psd(x)?;
    let k = x.nrows();
    if v.nrows() != k || v.ncols() != k {
        return Err(invalid_input("V must have the shape of X"));
    }
    if max_abs_diff(&(v.adjoint() * v), &CMatrix::identity(k, k)) > 1e-10 {
        return Err(invalid_input("V is not unitary"));
    }
    if !(0.0..=1.0).contains(&lambda) {
        return Err(invalid_param(format!("λ = {lambda} must lie in [0, 1]")));
    }
    if p.is_nan() || p < 1.0 || p.is_infinite() {
        return Err(invalid_param(format!("exponent p = {p} must be finite and >= 1")));
    }
    let id = CMatrix::identity(k, k);
    let lam = c(lambda, 0.0);
    let sx = psd_sqrt(x);
    let y = &sx * v * &sx;
    let lhs_matrix = hermitize(&assemble_blocks(x, &(&y * lam), x));
    let lhs = schatten_norm(&lhs_matrix, p)?;
    let xn = schatten_norm(x, p)?;
    let rhs = nu_p_depolarizing(lambda, p)? * 2.0 * xn;

    let f = assemble_blocks(x, &CMatrix::zeros(k, k), x);
    let g = hermitize(&assemble_blocks(&id, &(v * lam), &id));
    let fp = matrix_power(&f, p);
    let gp = matrix_power(&g, p);
    let lt_rhs = (fp * gp).trace().re;
    let lt_lhs = trace_power(&eigvalsh(&lhs_matrix), p);

    let mut spec = eigvalsh(&g);
    spec.sort_by(f64::total_cmp);
    let expected: Vec<f64> = (0..2 * k)
        .map(|i| if i < k { 1.0 - lambda } else { 1.0 + lambda })
        .collect();
    let spec_err = spec
        .iter()
        .zip(&expected)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);

    let u = assemble_blocks(&id, v, &(-&id));
    let d = real_diag(&expected.iter().rev().copied().collect::<Vec<_>>());
    let diag_err = max_abs_diff(&(&u * d * &u * c(0.5, 0.0)), &g);

    let scale = rhs.max(1.0);
    Ok(vec![
        CheckReport::at_most("lieb-ruskai", lhs, rhs, tolerance::PROVED_INEQUALITY)
            .with("lambda", lambda)
            .with("p", p)
            .with("x_norm", xn),
        CheckReport::at_most("lieb-thirring", lt_lhs, lt_rhs, tolerance::PROVED_INEQUALITY * scale.powf(p)),
        CheckReport::equal(
            "lieb-ruskai-trace",
            lt_rhs.max(0.0).powf(1.0 / p),
            rhs,
            tolerance::IDENTITY * scale,
        ),
        CheckReport::equal("lieb-ruskai-spectrum", spec_err, 0.0, 1e-12),
        CheckReport::equal("lieb-ruskai-diagonalization", diag_err, 0.0, 1e-12),
    ])
}

/// Name of the result that makes `ν_p(Ω ⊗ Φ) = ν_p(Ω) ν_p(Φ)` a theorem, if
/// any: a CQ or QC factor, a qubit factor at `p = 2`, a qubit factor with the
/// translation condition at integer `p`, or an identity factor.
pub fn multiplicativity_theorem(omega: &Channel, phi: &Channel, p: f64) -> Option<&'static str> {
    let one = |ch: &Channel| -> Option<&'static str> {
        if ch.is_cq() || ch.is_qc() {
            return Some("cq-qc");
        }
        if matches!(ch.form(), ChannelForm::Kraus(k) if k.len() == 1 && is_identity(&k[0])) {
            return Some("identity");
        }
        let q = qubit_parameters(ch)?;
        if q.lambda == [1.0; 3] && q.t == [0.0; 3] {
            Some("identity")
        } else if (p - 2.0).abs() <= 1e-12 {
            Some("qubit-p2")
        } else if is_integer(p) && satisfies_translation_condition(&q) {
            Some("translation-condition")
        } else {
            None
        }
    };
    one(phi).or_else(|| one(omega))
}

fn is_identity(m: &CMatrix) -> bool {
    m.is_square() && max_abs_diff(m, &CMatrix::identity(m.nrows(), m.nrows())) <= 1e-14
}

fn check_product_dim(omega: &Channel, phi: &Channel) -> Result<()> {
    let d = omega.d_in() * phi.d_in();
    if d > MAX_INPUT_DIM {
        return Err(invalid_param(format!(
            "product input dimension {d} exceeds {MAX_INPUT_DIM}"
        )));
    }
    Ok(())
}

/// Purity values of both factors and of the product channel.
#[derive(Debug, Clone)]
pub struct ProductPurity {
    pub omega: PurityResult,
    pub phi: PurityResult,
    pub joint: PurityResult,
}

/// `ν_p` of `Ω`, `Φ` and `Ω ⊗ Φ`, the joint search warm-started at the
/// product of the factor optima.
pub fn product_purity(omega: &Channel, phi: &Channel, p: f64, opts: &PurityOptions) -> Result<ProductPurity> {
    check_product_dim(omega, phi)?;
    let cert = opts.certified();
    let a = nu_p(omega, p, &cert)?;
    let b = nu_p(phi, p, &cert)?;
    let start = a.argmax_vector().kronecker(&b.argmax_vector());
    let joint = nu_p(&tensor_channels(omega, phi), p, &cert.with_warm_start(start))?;
    Ok(ProductPurity { omega: a, phi: b, joint })
}

/// `ν_p(Ω ⊗ Φ)` against `ν_p(Ω) ν_p(Φ)` in both directions.
///
/// `multiplicativity-lower` (`product ≤ joint`) always holds.
/// `multiplicativity-upper` (`joint ≤ product`) carries `scope = proved`
/// when [`multiplicativity_theorem`] names a result, else `conjectural`.
pub fn check_multiplicativity(
    omega: &Channel,
    phi: &Channel,
    p: f64,
    opts: &PurityOptions,
) -> Result<Vec<CheckReport>> {
    let r = product_purity(omega, phi, p, opts)?;
    let product = r.omega.value * r.phi.value;
    let joint = r.joint.value;
    let theorem = multiplicativity_theorem(omega, phi, p);
    let converged = r.omega.converged && r.phi.converged && r.joint.converged;
    let annotate = |rep: CheckReport| {
        let rep = rep
            .with("p", p)
            .with("nu_omega", r.omega.value)
            .with("nu_phi", r.phi.value)
            .with("residual", r.omega.residual.max(r.phi.residual).max(r.joint.residual))
            .with("restarts", r.joint.restarts_used);
        if converged {
            rep
        } else {
            rep.inconclusive("purity optimizer did not converge")
        }
    };
    let lower = CheckReport::at_most("multiplicativity-lower", product, joint, tolerance::PRODUCT_LOWER_BOUND);
    let upper = CheckReport::at_most("multiplicativity-upper", joint, product, tolerance::OPTIMIZER_EQUALITY)
        .with("scope", if theorem.is_some() { "proved" } else { "conjectural" })
        .with("theorem", theorem);
    Ok(vec![annotate(lower), annotate(upper)])
}

/// Whether additivity of `χ*` and `S_min` is a theorem for the pair: a CQ
/// or QC factor, an identity factor, or two unital qubit maps.
pub fn additivity_proved(omega: &Channel, phi: &Channel) -> bool {
    let unital_qubit = |ch: &Channel| qubit_parameters(ch).is_some_and(|q| q.is_unital());
    let special = |ch: &Channel| {
        ch.is_cq()
            || ch.is_qc()
            || matches!(ch.form(), ChannelForm::Kraus(k) if k.len() == 1 && is_identity(&k[0]))
            || qubit_parameters(ch).is_some_and(|q| q.lambda == [1.0; 3] && q.t == [0.0; 3])
    };
    special(omega) || special(phi) || (unital_qubit(omega) && unital_qubit(phi))
}

/// Capacities of both factors and of the product channel.
#[derive(Debug, Clone)]
pub struct ProductCapacity {
    pub omega: CapacityResult,
    pub phi: CapacityResult,
    pub joint: CapacityResult,
}

/// `χ*` of `Ω`, `Φ` and `Ω ⊗ Φ`, the joint search warm-started at the
/// product of the factor ensembles.
pub fn product_capacity(omega: &Channel, phi: &Channel, opts: &CapacityOptions) -> Result<ProductCapacity> {
    check_product_dim(omega, phi)?;
    let a = chi_star(omega, opts)?;
    let b = chi_star(phi, opts)?;
    let warm = opts.clone().with_warm_start(a.ensemble.product(&b.ensemble));
    let joint = chi_star(&tensor_channels(omega, phi), &warm)?;
    Ok(ProductCapacity { omega: a, phi: b, joint })
}

/// Additivity of `χ*` (`additivity-chi`) and of `S_min`
/// (`additivity-smin`), each as an identity within
/// [`tolerance::ADDITIVITY`]. The product warm start makes the joint `χ*`
/// at least the sum and the joint `S_min` at most the sum, so `gap` is
/// `≤ 0` for `χ*` and `≥ 0` for `S_min` up to round-off.
pub fn check_additivity(
    omega: &Channel,
    phi: &Channel,
    cap: &CapacityOptions,
    purity: &PurityOptions,
) -> Result<Vec<CheckReport>> {
    let scope = if additivity_proved(omega, phi) { "proved" } else { "conjectural" };
    let r = product_capacity(omega, phi, cap)?;
    let sum = r.omega.chi_star + r.phi.chi_star;
    let dual = [r.omega.duality_gap, r.phi.duality_gap, r.joint.duality_gap];
    let mut chi = CheckReport::equal("additivity-chi", r.joint.chi_star, sum, tolerance::ADDITIVITY)
        .with("scope", scope)
        .with("chi_omega", r.omega.chi_star)
        .with("chi_phi", r.phi.chi_star)
        .with("duality_gaps", dual)
        .with("direction", "superadditive by construction");
    if dual.iter().any(|g| !(*g <= tolerance::ADDITIVITY)) {
        chi = chi.inconclusive("capacity duality gap exceeds the check tolerance");
    }

    let cert = purity.certified();
    let a = s_min(omega, &cert)?;
    let b = s_min(phi, &cert)?;
    let start = a.argmin_vector().kronecker(&b.argmin_vector());
    let joint = s_min(&tensor_channels(omega, phi), &cert.with_warm_start(start))?;
    let mut smin = CheckReport::equal("additivity-smin", joint.value, a.value + b.value, tolerance::ADDITIVITY)
        .with("scope", scope)
        .with("s_min_omega", a.value)
        .with("s_min_phi", b.value)
        .with("direction", "subadditive by construction");
    if !(a.converged && b.converged && joint.converged) {
        smin = smin.inconclusive("entropy optimizer did not converge");
    }
    Ok(vec![chi, smin])
}

/// Reference states for [`check_qc_identity`]: the average outputs of the
/// capacity-achieving ensembles of `Ω` and `Φ`.
pub fn qc_references(
    omega: &Channel,
    phi: &Channel,
    opts: &CapacityOptions,
) -> Result<(DensityMatrix, DensityMatrix)> {
    Ok((chi_star(omega, opts)?.avg_output, chi_star(phi, opts)?.avg_output))
}

/// Terms of the QC-identity right-hand side carrying less weight than this
/// are dropped.
pub const QC_TERM_CUTOFF: f64 = 1e-14;

/// For a QC channel `Φ` with POVM `{X_b}`:
/// `S((Ω⊗Φ)(τ) | ρ_Ω ⊗ ρ_Φ) = Σ_b n_b S(Ω(τ_b) | ρ_Ω) + S(Φ(θ) | ρ_Φ)`
/// with `θ = Tr₁ τ`, `n_b = Tr θ X_b`, `τ_b = Tr₂((I ⊗ X_b) τ) / n_b`.
pub fn check_qc_identity(
    omega: &Channel,
    phi: &Channel,
    tau: &DensityMatrix,
    rho_omega: &DensityMatrix,
    rho_phi: &DensityMatrix,
) -> Result<CheckReport> {
    let povm = match phi.form() {
        ChannelForm::Qc { povm, .. } => povm,
        _ => return Err(invalid_param("the second channel must be given as a QC channel")),
    };
    let (da, db) = (omega.d_in(), phi.d_in());
    if tau.dim() != da * db {
        return Err(invalid_input(format!(
            "state of dimension {} does not live on C^{da} ⊗ C^{db}",
            tau.dim()
        )));
    }
    if rho_omega.dim() != omega.d_out() || rho_phi.dim() != phi.d_out() {
        return Err(invalid_input("reference states must live on the output spaces"));
    }
    let ref_omega = LogReference::new(rho_omega);
    let ref_phi = LogReference::new(rho_phi);
    let ref_joint = LogReference::new(&tensor(rho_omega, rho_phi));

    let out = tensor_channels(omega, phi).apply_matrix(tau);
    let lhs = relative_entropy_raw(&hermitize(&out), &ref_joint);

    let theta = partial_trace(tau, (da, db), Keep::Second)?;
    let mut sum = 0.0;
    let mut terms = 0usize;
    for x_b in povm {
        let n_b = (&theta * x_b).trace().re;
        if n_b <= QC_TERM_CUTOFF {
            continue;
        }
        let lifted = tensor(&CMatrix::identity(da, da), x_b) * &**tau;
        let tau_b = partial_trace(&lifted, (da, db), Keep::First)? / c(n_b, 0.0);
        let s = relative_entropy_raw(&hermitize(&omega.apply_matrix(&hermitize(&tau_b))), &ref_omega);
        sum += n_b * s;
        terms += 1;
    }
    let rhs = sum + relative_entropy_raw(&hermitize(&phi.apply_matrix(&theta)), &ref_phi);
    Ok(CheckReport::equal("qc-identity", lhs, rhs, tolerance::IDENTITY)
        .with("terms", terms)
        .with("finite", lhs.is_finite() && rhs.is_finite()))
}

/// For a QC channel, `Tr|Φ(θ)|^p = Σ_b (Tr θ X_b)^p`.
pub fn qc_power_sum(phi: &Channel, theta: &CMatrix, p: f64) -> Result<(f64, f64)> {
    let povm = match phi.form() {
        ChannelForm::Qc { povm, .. } => povm,
        _ => return Err(invalid_param("expected a QC channel")),
    };
    let direct = trace_power(&eigvalsh(&phi.apply_matrix(theta)), p);
    let sum = povm.iter().map(|x| (theta * x).trace().re.max(0.0).powf(p)).sum();
    Ok((direct, sum))
}
