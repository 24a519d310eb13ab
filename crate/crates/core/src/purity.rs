// SPDX-License-Identifier: Apache-2.0

//! Maximal output purity `ν_p(Φ) = sup_ρ ‖Φ(ρ)‖_p` and minimal output
//! entropy.
//!
//! Every objective handled here is a convex function of the output, so the
//! supremum is attained on pure inputs and the linearized ascent step
//! `ψ ← top eigenvector of Φ*(∇F)` never decreases the objective. Qubit
//! channels with qubit output are solved exactly on the Bloch sphere.

use nalgebra::{Matrix3, SymmetricEigen, Vector3};
use rayon::prelude::*;
use serde::Serialize;

use crate::channels::Channel;
use crate::error::{invalid_param, Result};
use crate::matcore::linalg::{self, outer, pauli};
use crate::matcore::{
    c, eigh, eigvalsh, entropy_of_spectrum, power_norm, random_unit_vector, schatten_norm,
    CMatrix, CVector, DensityMatrix, SeededRng,
};
use crate::tolerance;

/// Largest input dimension the optimizer accepts.
pub const MAX_INPUT_DIM: usize = 16;

/// Below this exponent `ν_p = 1` is returned without optimizing.
pub const P_ONE_CUTOFF: f64 = 1e-6;

/// Step used for the derivative of `ν_p` at `p = 1`.
pub const DERIVATIVE_STEP: f64 = 1e-4;

#[derive(Debug, Clone)]
pub struct PurityOptions {
    /// Random restarts for inputs of dimension above 2.
    pub restarts: usize,
    pub max_iters: usize,
    /// Stop once the ascent gap falls below `tol · max(1, |F|)`.
    pub tol: f64,
    /// Bloch-sphere grid resolution in degrees for qubit inputs.
    pub grid_step_deg: f64,
    pub seed: u64,
    /// Extra starting vectors tried before the random restarts.
    pub warm_starts: Vec<CVector>,
}

impl Default for PurityOptions {
    fn default() -> Self {
        Self {
            restarts: 64,
            max_iters: 5000,
            tol: 1e-10,
            grid_step_deg: 1.0,
            seed: 0,
            warm_starts: Vec::new(),
        }
    }
}

impl PurityOptions {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_warm_start(mut self, v: CVector) -> Self {
        self.warm_starts.push(v);
        self
    }

    /// Settings used when a value feeds the right-hand side of a check.
    pub fn certified(&self) -> Self {
        let mut o = self.clone();
        o.restarts *= 2;
        o
    }
}

#[derive(Debug, Clone)]
pub struct PurityResult {
    pub value: f64,
    pub argmax_state: DensityMatrix,
    pub p: f64,
    pub restarts_used: usize,
    pub converged: bool,
    /// Ascent gap at the returned state.
    pub residual: f64,
}

impl PurityResult {
    pub fn summary(&self) -> AscentSummary {
        AscentSummary {
            objective: self.value,
            restarts_used: self.restarts_used,
            converged: self.converged,
            residual: self.residual,
        }
    }

    /// Input vector achieving `value`.
    pub fn argmax_vector(&self) -> CVector {
        eigh(&self.argmax_state).top_vector()
    }
}

#[derive(Debug, Clone)]
pub struct EntropyResult {
    /// Minimal output entropy in nats.
    pub value: f64,
    pub argmin_state: DensityMatrix,
    /// `−(ν_{1+h} − 1)/h` with `h = 10⁻⁴`; should approach `value`.
    pub derivative_check: f64,
    pub restarts_used: usize,
    pub converged: bool,
    pub residual: f64,
}

impl EntropyResult {
    pub fn summary(&self) -> AscentSummary {
        AscentSummary {
            objective: self.value,
            restarts_used: self.restarts_used,
            converged: self.converged,
            residual: self.residual,
        }
    }

    pub fn argmin_vector(&self) -> CVector {
        eigh(&self.argmin_state).top_vector()
    }
}

/// Optimizer diagnostics in a serializable form.
#[derive(Debug, Clone, Serialize)]
pub struct AscentSummary {
    pub objective: f64,
    pub restarts_used: usize,
    pub converged: bool,
    pub residual: f64,
}

/// A convex objective `F` of the output matrix together with its gradient.
#[derive(Debug, Clone)]
pub(crate) enum Objective {
    /// `Tr A^p`.
    Power(f64),
    /// `Tr A ln A`.
    NegEntropy,
    /// `Tr A ln A − Tr A ln σ`, with `ln σ` precomputed.
    Divergence(CMatrix),
}

const LOG_FLOOR: f64 = 1e-30;

impl Objective {
    fn value(&self, out: &CMatrix) -> f64 {
        match self {
            Objective::Power(p) => eigvalsh(out).iter().map(|e| e.max(0.0).powf(*p)).sum(),
            Objective::NegEntropy => -entropy_of_spectrum(&eigvalsh(out)),
            Objective::Divergence(log_sigma) => {
                -entropy_of_spectrum(&eigvalsh(out)) - (out * log_sigma).trace().re
            }
        }
    }

    fn value_and_gradient(&self, out: &CMatrix) -> (f64, CMatrix) {
        let e = eigh(out);
        match self {
            Objective::Power(p) => {
                let p = *p;
                let v = e.values.iter().map(|x| x.max(0.0).powf(p)).sum();
                (v, e.map(|x| p * x.max(0.0).powf(p - 1.0)))
            }
            Objective::NegEntropy => {
                let v = -entropy_of_spectrum(&e.values);
                (v, e.map(|x| x.max(LOG_FLOOR).ln() + 1.0))
            }
            Objective::Divergence(log_sigma) => {
                let v = -entropy_of_spectrum(&e.values) - (out * log_sigma).trace().re;
                (v, e.map(|x| x.max(LOG_FLOOR).ln() + 1.0) - log_sigma)
            }
        }
    }

    /// True when `F` depends on a qubit output only through its Bloch radius
    /// and increases with it.
    fn is_radial(&self) -> bool {
        !matches!(self, Objective::Divergence(_))
    }
}

/// Outcome of maximizing an objective over pure inputs.
#[derive(Debug, Clone)]
pub(crate) struct Maximum {
    pub vector: CVector,
    pub objective: f64,
    pub restarts_used: usize,
    pub converged: bool,
    pub residual: f64,
}


fn normalized(v: &CVector) -> CVector {
    let n = v.norm();
    if n > 0.0 {
        v / c(n, 0.0)
    } else {
        linalg::basis_vector(v.len(), 0)
    }
}

/// Linearized ascent from `start` until the gap `λ_max(H) − ⟨ψ|H|ψ⟩` with
/// `H = Φ*(∇F)` drops below tolerance.
fn ascend(phi: &Channel, obj: &Objective, start: &CVector, opts: &PurityOptions) -> Maximum {
    let mut psi = normalized(start);
    let (mut f, mut g) = obj.value_and_gradient(&phi.apply_matrix(&outer(&psi)));
    let mut converged = false;
    let mut residual = f64::INFINITY;
    for _ in 0..opts.max_iters {
        let h = phi.adjoint_matrix(&g);
        let e = eigh(&h);
        let current = (psi.adjoint() * &h * &psi)[(0, 0)].re;
        residual = (e.max_value() - current).max(0.0);
        if residual <= opts.tol * f.abs().max(1.0) {
            converged = true;
            break;
        }
        let mut cand = e.top_vector();
        let overlap = (cand.adjoint() * &psi)[(0, 0)];
        if overlap.norm() > 0.0 {
            cand *= overlap / c(overlap.norm(), 0.0);
        }
        let (cf, cg) = obj.value_and_gradient(&phi.apply_matrix(&outer(&cand)));
        if cf > f {
            psi = cand;
            f = cf;
            g = cg;
            continue;
        }
        // Round-off can spoil the full step near a stationary point; fall
        // back to shorter moves along the chord.
        let mut moved = false;
        let mut s = 0.5;
        for _ in 0..40 {
            let trial = normalized(&(&psi * c(1.0 - s, 0.0) + &cand * c(s, 0.0)));
            let (tf, tg) = obj.value_and_gradient(&phi.apply_matrix(&outer(&trial)));
            if tf > f {
                psi = trial;
                f = tf;
                g = tg;
                moved = true;
                break;
            }
            s *= 0.5;
        }
        if !moved {
            converged = residual <= 1e3 * opts.tol * f.abs().max(1.0);
            break;
        }
    }
    Maximum {
        vector: psi,
        objective: f,
        restarts_used: 1,
        converged,
        residual,
    }
}

fn bloch_vector_state(w: &Vector3<f64>) -> CVector {
    let s = pauli();
    let rho = (CMatrix::identity(2, 2)
        + &s[0] * c(w[0], 0.0)
        + &s[1] * c(w[1], 0.0)
        + &s[2] * c(w[2], 0.0))
        * c(0.5, 0.0);
    eigh(&rho).top_vector()
}

/// Unit vectors `w` maximizing `|T w + t|`, from the secular equation of the
/// sphere-constrained quadratic `wᵀAw + 2bᵀw`, `A = TᵀT`, `b = Tᵀt`.
fn bloch_radius_candidates(tm: &Matrix3<f64>, t: &Vector3<f64>) -> Vec<Vector3<f64>> {
    let a = tm.transpose() * tm;
    let b = tm.transpose() * t;
    let se = SymmetricEigen::new(a);
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| se.eigenvalues[j].total_cmp(&se.eigenvalues[i]));
    let vals: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let vecs: Vec<Vector3<f64>> = order.iter().map(|&i| se.eigenvectors.column(i).into_owned()).collect();
    let top = vals[0];
    let bn = b.norm();
    // Components at round-off level are zero; otherwise the hard case below
    // is missed and the secular root is resolved from noise.
    let noise = 64.0 * f64::EPSILON * (bn + top.abs());
    let beta: Vec<f64> = vecs
        .iter()
        .map(|q| q.dot(&b))
        .map(|x| if x.abs() <= noise { 0.0 } else { x })
        .collect();
    let mut out = vec![vecs[0], -vecs[0]];
    if bn == 0.0 {
        return out;
    }
    let norm_at = |mu: f64| -> f64 {
        (0..3)
            .map(|k| {
                let d = mu - vals[k];
                if d > 0.0 {
                    (beta[k] / d).powi(2)
                } else if beta[k] != 0.0 {
                    f64::INFINITY
                } else {
                    0.0
                }
            })
            .sum::<f64>()
    };
    let mut lo = top;
    let mut hi = top + bn;
    for _ in 0..300 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if norm_at(mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mu = hi;
    let mut w = Vector3::zeros();
    for k in 0..3 {
        let d = mu - vals[k];
        if d > 0.0 {
            w += vecs[k] * (beta[k] / d);
        }
    }
    let wn = w.norm();
    if wn < 1.0 {
        // Hard case: the interior solution leaves room along the top
        // eigenvector.
        let tau = (1.0 - wn * wn).max(0.0).sqrt();
        out.push(w + vecs[0] * tau);
        out.push(w - vecs[0] * tau);
    } else {
        out.push(w / wn);
    }
    out
}

fn exact_qubit_maximum(phi: &Channel, obj: &Objective) -> Maximum {
    let (tm, t) = phi.bloch_affine().expect("qubit channel");
    let mut best: Option<(f64, CVector)> = None;
    for w in bloch_radius_candidates(&tm, &t) {
        let w = if w.norm() > 0.0 { w / w.norm() } else { w };
        let psi = bloch_vector_state(&w);
        let f = obj.value(&phi.apply_matrix(&outer(&psi)));
        if best.as_ref().is_none_or(|(bf, _)| f > *bf) {
            best = Some((f, psi));
        }
    }
    let (objective, vector) = best.expect("at least one candidate");
    Maximum {
        vector,
        objective,
        restarts_used: 1,
        converged: true,
        residual: 0.0,
    }
}

/// Grid points on the Bloch sphere ranked by objective value.
fn best_grid_points(phi: &Channel, obj: &Objective, step_deg: f64, keep: usize) -> Vec<CVector> {
    let s = pauli();
    let img_id = phi.apply_matrix(&CMatrix::identity(2, 2));
    let imgs: Vec<CMatrix> = s.iter().map(|m| phi.apply_matrix(m)).collect();
    let step = step_deg.clamp(1e-3, 90.0).to_radians();
    let n_theta = (std::f64::consts::PI / step).round().max(1.0) as usize;
    let n_phi = (2.0 * std::f64::consts::PI / step).round().max(1.0) as usize;
    let mut scored: Vec<(f64, Vector3<f64>)> = Vec::with_capacity((n_theta + 1) * n_phi);
    for i in 0..=n_theta {
        let theta = std::f64::consts::PI * i as f64 / n_theta as f64;
        let phis = if i == 0 || i == n_theta { 1 } else { n_phi };
        for j in 0..phis {
            let az = 2.0 * std::f64::consts::PI * j as f64 / n_phi as f64;
            let w = Vector3::new(theta.sin() * az.cos(), theta.sin() * az.sin(), theta.cos());
            let out = (&img_id + &imgs[0] * c(w[0], 0.0) + &imgs[1] * c(w[1], 0.0) + &imgs[2] * c(w[2], 0.0))
                * c(0.5, 0.0);
            scored.push((obj.value(&out), w));
        }
    }
    scored.sort_by(|a, b| b.0.total_cmp(&a.0));
    scored.into_iter().take(keep).map(|(_, w)| bloch_vector_state(&w)).collect()
}

fn check_dimension(phi: &Channel) -> Result<()> {
    if phi.d_in() > MAX_INPUT_DIM {
        return Err(invalid_param(format!(
            "input dimension {} exceeds the supported maximum {MAX_INPUT_DIM}",
            phi.d_in()
        )));
    }
    Ok(())
}

/// Maximizes `obj(Φ(|ψ⟩⟨ψ|))` over unit vectors.
pub(crate) fn maximize(phi: &Channel, obj: &Objective, opts: &PurityOptions) -> Maximum {
    let d = phi.d_in();
    let mut starts: Vec<CVector> = opts
        .warm_starts
        .iter()
        .filter(|v| v.len() == d && v.norm() > 0.0)
        .cloned()
        .collect();
    if d == 1 {
        starts.push(linalg::basis_vector(1, 0));
    } else if d == 2 {
        if obj.is_radial() && phi.d_out() == 2 {
            let exact = exact_qubit_maximum(phi, obj);
            starts.push(exact.vector.clone());
            let polished: Vec<Maximum> = starts.iter().map(|s| ascend(phi, obj, s, opts)).collect();
            return pick_best(std::iter::once(exact).chain(polished).collect());
        }
        starts.extend(best_grid_points(phi, obj, opts.grid_step_deg, 8));
    } else {
        let seed = opts.seed;
        starts.extend((0..opts.restarts.max(1)).map(|i| {
            let mut rng = SeededRng::new(seed, i as u64);
            random_unit_vector(d, &mut rng)
        }));
    }
    let runs: Vec<Maximum> = if d > 2 {
        starts.par_iter().map(|s| ascend(phi, obj, s, opts)).collect()
    } else {
        starts.iter().map(|s| ascend(phi, obj, s, opts)).collect()
    };
    pick_best(runs)
}

/// Highest objective, earliest index on ties.
fn pick_best(runs: Vec<Maximum>) -> Maximum {
    let n = runs.len();
    let mut best: Option<Maximum> = None;
    for r in runs {
        if best.as_ref().is_none_or(|b| r.objective > b.objective) {
            best = Some(r);
        }
    }
    let mut best = best.expect("at least one start");
    best.restarts_used = n;
    best
}

fn check_exponent(p: f64) -> Result<()> {
    if p.is_nan() || p < 1.0 {
        return Err(invalid_param(format!("exponent p = {p} must be >= 1")));
    }
    if p.is_infinite() {
        return Err(invalid_param("p = ∞ is not supported"));
    }
    Ok(())
}

/// Maximal output purity `ν_p(Φ)`, a lower bound attained at `argmax_state`.
pub fn nu_p(phi: &Channel, p: f64, opts: &PurityOptions) -> Result<PurityResult> {
    check_exponent(p)?;
    check_dimension(phi)?;
    if p < 1.0 + P_ONE_CUTOFF {
        let v = opts
            .warm_starts
            .iter()
            .find(|v| v.len() == phi.d_in() && v.norm() > 0.0)
            .map(normalized)
            .unwrap_or_else(|| linalg::basis_vector(phi.d_in(), 0));
        return Ok(PurityResult {
            value: 1.0,
            argmax_state: DensityMatrix::from_pure(&v)?,
            p,
            restarts_used: 0,
            converged: true,
            residual: 0.0,
        });
    }
    let best = maximize(phi, &Objective::Power(p), opts);
    let state = DensityMatrix::from_pure(&best.vector)?;
    let value = schatten_norm(&phi.apply_matrix(&state), p)?;
    Ok(PurityResult {
        value,
        argmax_state: state,
        p,
        restarts_used: best.restarts_used,
        converged: best.converged,
        residual: best.residual,
    })
}

/// `[((1+λ)/2)^p + ((1−λ)/2)^p]^{1/p}` for the depolarizing qubit channel.
pub fn nu_p_depolarizing(lambda: f64, p: f64) -> Result<f64> {
    if !(lambda >= -1.0 / 3.0 - tolerance::STRUCTURE && lambda <= 1.0 + tolerance::STRUCTURE) {
        return Err(invalid_param(format!(
            "depolarizing parameter {lambda} is outside [-1/3, 1]"
        )));
    }
    if p.is_nan() || p < 1.0 {
        return Err(invalid_param(format!("exponent p = {p} must be >= 1")));
    }
    Ok(power_norm(&[(1.0 + lambda) / 2.0, (1.0 - lambda) / 2.0], p))
}

/// Minimal output entropy `S_min(Φ)` over pure inputs.
pub fn s_min(phi: &Channel, opts: &PurityOptions) -> Result<EntropyResult> {
    check_dimension(phi)?;
    let best = maximize(phi, &Objective::NegEntropy, opts);
    let state = DensityMatrix::from_pure(&best.vector)?;
    let value = entropy_of_spectrum(&eigvalsh(&phi.apply_matrix(&state)));
    let nu = nu_p(
        phi,
        1.0 + DERIVATIVE_STEP,
        &opts.clone().with_warm_start(best.vector.clone()),
    )?;
    Ok(EntropyResult {
        value,
        argmin_state: state,
        derivative_check: -(nu.value - 1.0) / DERIVATIVE_STEP,
        restarts_used: best.restarts_used,
        converged: best.converged,
        residual: best.residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::random::random_kraus_channel;
    use crate::channels::{make_cq, tensor_channels, QubitAffineParams};
    use crate::matcore::{random_instance, RandomKind};

    const SQRT_5_8: f64 = 0.790_569_415_042_094_833;
    const CBRT_7_16: f64 = 0.759_147_242_968_915_630;
    const H34: f64 = 0.562_335_144_618_808_350;

    fn opts() -> PurityOptions {
        PurityOptions::default()
    }

    /// Brute-force ν_p over a Bloch-sphere grid, independent of the optimizer.
    fn grid_oracle(phi: &Channel, p: f64, n: usize) -> f64 {
        let mut best: f64 = 0.0;
        for i in 0..=n {
            let theta = std::f64::consts::PI * i as f64 / n as f64;
            for j in 0..2 * n {
                let az = std::f64::consts::PI * j as f64 / n as f64;
                let v = CVector::from_vec(vec![
                    c((theta / 2.0).cos(), 0.0),
                    c(az.cos(), az.sin()) * (theta / 2.0).sin(),
                ]);
                let out = phi.apply_matrix(&outer(&v));
                best = best.max(schatten_norm(&out, p).unwrap());
            }
        }
        best
    }

    #[test]
    fn identity_and_constant_channels() {
        for p in [1.5, 2.0, 7.0] {
            let r = nu_p(&Channel::identity(2), p, &opts()).unwrap();
            assert!((r.value - 1.0).abs() < 1e-12);
        }
        let r = nu_p(&Channel::depolarizing(0.0), 2.0, &opts()).unwrap();
        assert!((r.value - 0.5f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn depolarizing_values() {
        let r = nu_p(&Channel::depolarizing(0.5), 2.0, &opts()).unwrap();
        assert!((r.value - SQRT_5_8).abs() < 1e-12);
        assert!((nu_p_depolarizing(0.5, 2.0).unwrap() - SQRT_5_8).abs() < 1e-15);
        assert!((nu_p_depolarizing(0.5, 3.0).unwrap() - CBRT_7_16).abs() < 1e-15);
        assert!((nu_p_depolarizing(1.0, 4.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(nu_p_depolarizing(-0.5, 2.0).is_err());
        assert!(nu_p(&Channel::identity(2), 0.5, &opts()).is_err());
    }

    #[test]
    fn result_value_matches_argmax_state() {
        let mut rng = SeededRng::new(3, 0);
        for d in [2, 3] {
            let phi = random_kraus_channel(d, 2, 2, &mut rng);
            let r = nu_p(&phi, 2.5, &opts()).unwrap();
            let direct = schatten_norm(&phi.apply_matrix(&r.argmax_state), 2.5).unwrap();
            assert!((r.value - direct).abs() < 1e-12);
            assert!(r.value > 0.0 && r.value <= 1.0 + 1e-12);
            assert!(r.converged);
        }
    }

    #[test]
    fn p_near_one_is_exactly_one() {
        let mut rng = SeededRng::new(4, 0);
        let phi = random_kraus_channel(3, 3, 2, &mut rng);
        assert_eq!(nu_p(&phi, 1.0, &opts()).unwrap().value, 1.0);
        assert_eq!(nu_p(&phi, 1.0 + 1e-7, &opts()).unwrap().value, 1.0);
    }

    #[test]
    fn exact_qubit_solution_beats_grid() {
        let mut rng = SeededRng::new(5, 0);
        for _ in 0..6 {
            let phi = random_kraus_channel(2, 2, 3, &mut rng);
            for p in [1.5, 2.0, 4.0] {
                let exact = nu_p(&phi, p, &opts()).unwrap().value;
                let grid = grid_oracle(&phi, p, 180);
                assert!(exact >= grid - 1e-14, "{exact} < {grid}");
                assert!(exact - grid < 1e-4);
            }
        }
    }

    #[test]
    fn non_unital_qubit_matches_grid() {
        let phi = Channel::qubit_affine(QubitAffineParams::new([0.5, 0.4, 0.2], [0.1, 0.0, 0.3]));
        let exact = nu_p(&phi, 2.0, &opts()).unwrap().value;
        let grid = grid_oracle(&phi, 2.0, 360);
        assert!(exact >= grid - 1e-14 && exact - grid < 1e-5);
    }

    #[test]
    fn qubit_input_with_wide_output_uses_grid() {
        let mut rng = SeededRng::new(6, 0);
        let phi = random_kraus_channel(2, 3, 2, &mut rng);
        let r = nu_p(&phi, 2.0, &opts()).unwrap();
        let grid = grid_oracle(&phi, 2.0, 180);
        assert!(r.value >= grid - 1e-12);
        assert!(r.value - grid < 1e-4);
    }

    #[test]
    fn pure_states_dominate_mixed_samples() {
        let mut rng = SeededRng::new(7, 0);
        let phi = random_kraus_channel(3, 3, 2, &mut rng);
        let nu = nu_p(&phi, 2.0, &opts()).unwrap().value;
        for _ in 0..300 {
            let rho = random_instance(RandomKind::Density, 3, &mut rng);
            let v = schatten_norm(&phi.apply_matrix(&rho), 2.0).unwrap();
            assert!(v <= nu + 1e-10);
        }
    }

    #[test]
    fn seeds_reproduce_and_restarts_are_stable() {
        let mut rng = SeededRng::new(8, 0);
        let phi = random_kraus_channel(3, 3, 3, &mut rng);
        let a = nu_p(&phi, 3.0, &opts().with_seed(11)).unwrap();
        let b = nu_p(&phi, 3.0, &opts().with_seed(11)).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        let doubled = nu_p(&phi, 3.0, &opts().with_seed(11).certified()).unwrap();
        assert!((doubled.value - a.value).abs() < 1e-6);
    }

    #[test]
    fn product_warm_start_gives_lower_bound() {
        let mut rng = SeededRng::new(9, 0);
        let omega = random_kraus_channel(2, 2, 2, &mut rng);
        let phi = random_kraus_channel(2, 2, 2, &mut rng);
        let a = nu_p(&omega, 2.0, &opts()).unwrap();
        let b = nu_p(&phi, 2.0, &opts()).unwrap();
        let joint_opts = opts().with_warm_start(a.argmax_vector().kronecker(&b.argmax_vector()));
        let joint = nu_p(&tensor_channels(&omega, &phi), 2.0, &joint_opts).unwrap();
        assert!(joint.value >= a.value * b.value - 1e-12);
    }

    #[test]
    fn entropy_examples() {
        let id = s_min(&Channel::identity(2), &opts()).unwrap();
        assert!(id.value.abs() < 1e-12);
        let full = s_min(&Channel::depolarizing(0.0), &opts()).unwrap();
        assert!((full.value - std::f64::consts::LN_2).abs() < 1e-12);
        let half = s_min(&Channel::depolarizing(0.5), &opts()).unwrap();
        assert!((half.value - H34).abs() < 1e-12);
        assert!((half.derivative_check - H34).abs() < 1e-3);
    }

    #[test]
    fn unital_entropy_follows_largest_axis() {
        let phi = Channel::qubit_affine(QubitAffineParams::new([0.3, -0.6, 0.1], [0.0; 3]));
        let r = s_min(&phi, &opts()).unwrap();
        let q: f64 = (1.0 + 0.6) / 2.0;
        let h = -(q * q.ln() + (1.0 - q) * (1.0 - q).ln());
        assert!((r.value - h).abs() < 1e-8);
    }

    #[test]
    fn cq_purity_is_best_output() {
        let mut rng = SeededRng::new(10, 0);
        let outs: Vec<DensityMatrix> = (0..3)
            .map(|_| DensityMatrix::new(random_instance(RandomKind::Density, 2, &mut rng)).unwrap())
            .collect();
        let best = outs
            .iter()
            .map(|q| schatten_norm(q, 2.0).unwrap())
            .fold(0.0, f64::max);
        let phi = make_cq(crate::channels::computational_basis(3), outs).unwrap();
        let r = nu_p(&phi, 2.0, &opts()).unwrap();
        assert!((r.value - best).abs() < 1e-8);
    }

    #[test]
    fn oversized_inputs_are_refused() {
        let big = Channel::identity(17);
        assert!(nu_p(&big, 2.0, &opts()).is_err());
    }
}
