// SPDX-License-Identifier: Apache-2.0

//! Holevo capacity `χ*(Φ)`.
//!
//! The ensemble optimizer alternates exponentiated reweighting of the
//! probabilities, ascent on each pure state and column generation: the input
//! maximizing `S(Φ(ω) | σ̄)` replaces the lightest ensemble member. The same
//! maximization, run at the final average output, gives the upper bound
//! `sup_ω S(Φ(ω) | Φ(ρ*)) ≥ χ*` reported as the duality gap.

use crate::channels::Channel;
use crate::error::{invalid_input, invalid_param, Result};
use crate::matcore::linalg::{self, outer};
use crate::matcore::{
    c, eigh, eigvalsh, entropy_of_spectrum, random_unit_vector, tensor, CMatrix, CVector,
    DensityMatrix, LogReference, SeededRng,
};
use crate::purity::{maximize, s_min, Objective, PurityOptions, MAX_INPUT_DIM};
use crate::tolerance;

/// Probabilities with states `{πᵢ, ρᵢ}`.
#[derive(Debug, Clone)]
pub struct Ensemble {
    probs: Vec<f64>,
    states: Vec<DensityMatrix>,
}

impl Ensemble {
    pub fn new(probs: Vec<f64>, states: Vec<DensityMatrix>) -> Result<Self> {
        if probs.is_empty() || probs.len() != states.len() {
            return Err(invalid_input(format!(
                "{} probabilities for {} states",
                probs.len(),
                states.len()
            )));
        }
        if probs.iter().any(|&p| !(p >= 0.0) || !p.is_finite()) {
            return Err(invalid_input("probabilities must be finite and non-negative"));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(invalid_input(format!("probabilities sum to {total}")));
        }
        let d = states[0].dim();
        if states.iter().any(|s| s.dim() != d) {
            return Err(invalid_input("ensemble states have mixed dimensions"));
        }
        Ok(Self { probs, states })
    }

    /// Uniform weights over pure states.
    pub fn uniform_pure(vectors: &[CVector]) -> Result<Self> {
        let n = vectors.len();
        let states = vectors.iter().map(DensityMatrix::from_pure).collect::<Result<_>>()?;
        Self::new(vec![1.0 / n as f64; n], states)
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn states(&self) -> &[DensityMatrix] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.states[0].dim()
    }

    /// `Σ πᵢ ρᵢ`.
    pub fn average(&self) -> DensityMatrix {
        let d = self.dim();
        let avg = self
            .probs
            .iter()
            .zip(&self.states)
            .fold(CMatrix::zeros(d, d), |acc, (&p, s)| acc + s.as_matrix() * c(p, 0.0));
        DensityMatrix::from_matrix_unchecked(linalg::hermitize(&avg))
    }

    /// Product ensemble `{πᵢ μⱼ, ρᵢ ⊗ τⱼ}`.
    pub fn product(&self, other: &Ensemble) -> Ensemble {
        let mut probs = Vec::with_capacity(self.len() * other.len());
        let mut states = Vec::with_capacity(self.len() * other.len());
        for (p, a) in self.probs.iter().zip(&self.states) {
            for (q, b) in other.probs.iter().zip(&other.states) {
                probs.push(p * q);
                states.push(DensityMatrix::from_matrix_unchecked(tensor(a, b)));
            }
        }
        let total: f64 = probs.iter().sum();
        probs.iter_mut().for_each(|p| *p /= total);
        Ensemble { probs, states }
    }
}

#[derive(Debug, Clone)]
pub struct CapacityOptions {
    /// Defaults to `d_in²`.
    pub ensemble_size: Option<usize>,
    /// Restarts for the final radius certificate.
    pub restarts: usize,
    /// Outer rounds of reweighting, state ascent and column generation.
    pub max_iters: usize,
    /// Target duality gap in nats.
    pub tol: f64,
    pub seed: u64,
    pub warm_start: Option<Ensemble>,
}

impl Default for CapacityOptions {
    fn default() -> Self {
        Self {
            ensemble_size: None,
            restarts: 64,
            max_iters: 200,
            tol: 1e-5,
            seed: 0,
            warm_start: None,
        }
    }
}

impl CapacityOptions {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_warm_start(mut self, ens: Ensemble) -> Self {
        self.warm_start = Some(ens);
        self
    }

    fn purity_options(&self, restarts: usize) -> PurityOptions {
        PurityOptions {
            restarts,
            seed: self.seed,
            ..PurityOptions::default()
        }
    }
}

#[derive(Debug, Clone)]
pub struct CapacityResult {
    /// Best ensemble value found, in nats.
    pub chi_star: f64,
    pub ensemble: Ensemble,
    pub avg_input: DensityMatrix,
    pub avg_output: DensityMatrix,
    /// Certified radius at `avg_input` minus `chi_star`.
    pub duality_gap: f64,
    pub converged: bool,
    pub iterations: usize,
}

/// Upper-bound certificate `radius = sup_ω S(Φ(ω) | Φ(ρ))`.
#[derive(Debug, Clone)]
pub struct CapacityCertificate {
    pub radius: f64,
    pub gap: f64,
    /// Input achieving the radius.
    pub witness: DensityMatrix,
    /// Optimizer reached its stopping rule.
    pub converged: bool,
    /// `Φ(ρ)` is rank deficient and some output leaves its support.
    pub inconclusive: bool,
}

fn check_input_dim(phi: &Channel, d: usize) -> Result<()> {
    if d != phi.d_in() {
        return Err(invalid_input(format!(
            "ensemble states are {d}-dimensional, channel input is {}",
            phi.d_in()
        )));
    }
    Ok(())
}

/// `χ(Φ; E) = S(Σ πᵢ Φ(ρᵢ)) − Σ πᵢ S(Φ(ρᵢ))`.
pub fn holevo_chi(phi: &Channel, ens: &Ensemble) -> Result<f64> {
    check_input_dim(phi, ens.dim())?;
    let outs: Vec<CMatrix> = ens.states.iter().map(|s| phi.apply_matrix(s)).collect();
    let d = phi.d_out();
    let avg = outs
        .iter()
        .zip(&ens.probs)
        .fold(CMatrix::zeros(d, d), |acc, (o, &p)| acc + o * c(p, 0.0));
    let mixed = entropy_of_spectrum(&eigvalsh(&avg));
    let parts: f64 = outs
        .iter()
        .zip(&ens.probs)
        .map(|(o, &p)| p * entropy_of_spectrum(&eigvalsh(o)))
        .sum();
    Ok((mixed - parts).max(0.0))
}

const LOG_FLOOR: f64 = 1e-300;

/// `ln σ` with its kernel, or the witness vector when some input reaches
/// the kernel.
enum Reference {
    Log(CMatrix),
    Escapes(CVector),
}

fn reference(phi: &Channel, sigma: &CMatrix) -> Reference {
    let r = LogReference::new(sigma);
    if r.has_kernel() {
        let e = eigh(&phi.adjoint_matrix(&r.kernel_projector()));
        if e.max_value() > tolerance::SUPPORT {
            return Reference::Escapes(e.top_vector());
        }
    }
    Reference::Log(r.log_matrix(LOG_FLOOR))
}

fn divergence_radius(
    phi: &Channel,
    sigma: &CMatrix,
    opts: &PurityOptions,
) -> (f64, CVector, bool, bool) {
    match reference(phi, sigma) {
        Reference::Escapes(v) => (f64::INFINITY, v, true, true),
        Reference::Log(log_sigma) => {
            let best = maximize(phi, &Objective::Divergence(log_sigma), opts);
            (best.objective, best.vector, best.converged, false)
        }
    }
}

/// Computes the radius `sup_ω S(Φ(ω) | Φ(ρ))` and its gap to `chi_claim`.
pub fn certify_capacity(
    phi: &Channel,
    rho: &DensityMatrix,
    chi_claim: f64,
    opts: &CapacityOptions,
) -> Result<CapacityCertificate> {
    check_input_dim(phi, rho.dim())?;
    if phi.d_in() > MAX_INPUT_DIM {
        return Err(invalid_param(format!("input dimension {} is too large", phi.d_in())));
    }
    let sigma = phi.apply_matrix(rho);
    let (radius, v, converged, inconclusive) =
        divergence_radius(phi, &sigma, &opts.purity_options(opts.restarts));
    Ok(CapacityCertificate {
        radius,
        gap: radius - chi_claim,
        witness: DensityMatrix::from_pure(&v)?,
        converged,
        inconclusive,
    })
}

/// Working ensemble of pure inputs.
#[derive(Clone)]
struct Work {
    vecs: Vec<CVector>,
    outs: Vec<CMatrix>,
    ents: Vec<f64>,
    probs: Vec<f64>,
}

impl Work {
    fn new(phi: &Channel, vecs: Vec<CVector>, probs: Vec<f64>) -> Self {
        let outs: Vec<CMatrix> = vecs.iter().map(|v| phi.apply_matrix(&outer(v))).collect();
        let ents = outs.iter().map(|o| entropy_of_spectrum(&eigvalsh(o))).collect();
        Self { vecs, outs, ents, probs }
    }

    fn set(&mut self, phi: &Channel, i: usize, v: CVector) {
        let out = phi.apply_matrix(&outer(&v));
        self.ents[i] = entropy_of_spectrum(&eigvalsh(&out));
        self.outs[i] = out;
        self.vecs[i] = v;
    }

    fn average_output(&self) -> CMatrix {
        let d = self.outs[0].nrows();
        let avg = self
            .outs
            .iter()
            .zip(&self.probs)
            .fold(CMatrix::zeros(d, d), |acc, (o, &p)| acc + o * c(p, 0.0));
        linalg::hermitize(&avg)
    }

    fn chi(&self) -> f64 {
        let mixed = entropy_of_spectrum(&eigvalsh(&self.average_output()));
        mixed - self.probs.iter().zip(&self.ents).map(|(p, s)| p * s).sum::<f64>()
    }

    /// `S(Φ(ψᵢ) | σ̄)` for every member, with `ln σ̄` floored.
    fn divergences(&self, log_sigma: &CMatrix) -> Vec<f64> {
        self.outs
            .iter()
            .zip(&self.ents)
            .map(|(o, s)| -s - (o * log_sigma).trace().re)
            .collect()
    }

    fn chi_with(&self, probs: &[f64]) -> f64 {
        let d = self.outs[0].nrows();
        let avg = self
            .outs
            .iter()
            .zip(probs)
            .fold(CMatrix::zeros(d, d), |acc, (o, &p)| acc + o * c(p, 0.0));
        let mixed = entropy_of_spectrum(&eigvalsh(&avg));
        mixed - probs.iter().zip(&self.ents).map(|(p, s)| p * s).sum::<f64>()
    }

    /// Exponentiated-gradient ascent on the weights, `πᵢ ∝ πᵢ exp(η Dᵢ)`,
    /// with the step `η` grown on success and halved on failure.
    fn reweight(&mut self, iters: usize, tol: f64) {
        let mut eta = 1.0;
        let mut chi = self.chi();
        for _ in 0..iters {
            let log_sigma = eigh(&self.average_output()).map(|x| x.max(LOG_FLOOR).ln());
            let d = self.divergences(&log_sigma);
            let mean: f64 = self.probs.iter().zip(&d).map(|(p, x)| p * x).sum();
            let top = d
                .iter()
                .zip(&self.probs)
                .filter(|(_, &p)| p > 0.0)
                .map(|(x, _)| *x)
                .fold(f64::NEG_INFINITY, f64::max);
            if top - mean <= tol {
                break;
            }
            let mut moved = false;
            while eta > 1e-8 {
                let mut fresh: Vec<f64> = self
                    .probs
                    .iter()
                    .zip(&d)
                    .map(|(p, x)| p * (eta * (x - top)).exp())
                    .collect();
                let z: f64 = fresh.iter().sum();
                fresh.iter_mut().for_each(|p| *p /= z);
                let trial = self.chi_with(&fresh);
                if trial > chi {
                    self.probs = fresh;
                    chi = trial;
                    eta *= 2.0;
                    moved = true;
                    break;
                }
                eta *= 0.5;
            }
            if !moved {
                break;
            }
        }
    }

    /// One chord-search ascent step on each member's state.
    fn ascend_states(&mut self, phi: &Channel) {
        let mut chi = self.chi();
        for i in 0..self.vecs.len() {
            if self.probs[i] <= 0.0 {
                continue;
            }
            let log_sigma = eigh(&self.average_output()).map(|x| x.max(LOG_FLOOR).ln());
            let g = eigh(&self.outs[i]).map(|x| x.max(LOG_FLOOR).ln()) - &log_sigma;
            let e = eigh(&phi.adjoint_matrix(&g));
            let mut cand = e.top_vector();
            let psi = self.vecs[i].clone();
            let overlap = (cand.adjoint() * &psi)[(0, 0)];
            if overlap.norm() > 0.0 {
                cand *= overlap / c(overlap.norm(), 0.0);
            }
            let mut s = 1.0;
            for _ in 0..12 {
                let trial = &psi * c(1.0 - s, 0.0) + &cand * c(s, 0.0);
                let n = trial.norm();
                if n > 0.0 {
                    let saved = (self.vecs[i].clone(), self.outs[i].clone(), self.ents[i]);
                    self.set(phi, i, trial / c(n, 0.0));
                    let trial_chi = self.chi();
                    if trial_chi > chi {
                        chi = trial_chi;
                        break;
                    }
                    (self.vecs[i], self.outs[i], self.ents[i]) = saved;
                }
                s *= 0.5;
            }
        }
    }

    fn ensemble(&self) -> Result<Ensemble> {
        let total: f64 = self.probs.iter().sum();
        let probs = self.probs.iter().map(|p| p / total).collect();
        let states = self.vecs.iter().map(DensityMatrix::from_pure).collect::<Result<_>>()?;
        Ensemble::new(probs, states)
    }
}

/// Pure-state decomposition of an ensemble by spectral splitting.
fn pure_members(ens: &Ensemble) -> (Vec<CVector>, Vec<f64>) {
    let mut vecs = Vec::new();
    let mut probs = Vec::new();
    for (p, s) in ens.probs.iter().zip(&ens.states) {
        let e = eigh(s);
        for (k, &w) in e.values.iter().enumerate() {
            if w > 1e-14 {
                vecs.push(e.vectors.column(k).into_owned());
                probs.push(p * w);
            }
        }
    }
    let total: f64 = probs.iter().sum();
    probs.iter_mut().for_each(|p| *p /= total);
    (vecs, probs)
}

/// Holevo capacity by ensemble optimization, with a duality-gap certificate.
pub fn chi_star(phi: &Channel, opts: &CapacityOptions) -> Result<CapacityResult> {
    let d = phi.d_in();
    if d > MAX_INPUT_DIM {
        return Err(invalid_param(format!("input dimension {d} is too large")));
    }
    let size = opts.ensemble_size.unwrap_or(d * d).max(1);
    let (vecs, probs) = match &opts.warm_start {
        Some(ens) => {
            check_input_dim(phi, ens.dim())?;
            pure_members(ens)
        }
        None => {
            let vecs: Vec<CVector> = (0..size)
                .map(|i| random_unit_vector(d, &mut SeededRng::new(opts.seed, i as u64)))
                .collect();
            (vecs, vec![1.0 / size as f64; size])
        }
    };
    let mut work = Work::new(phi, vecs, probs);
    let mut best = work.clone();
    let mut best_chi = work.chi();
    let mut inner = opts.purity_options(opts.restarts.min(8));
    inner.grid_step_deg = 6.0;
    let full = opts.purity_options(opts.restarts);
    let mut iterations = 0;
    let mut certified: Option<(f64, CMatrix)> = None;
    while iterations < opts.max_iters {
        iterations += 1;
        work.reweight(100, opts.tol * 0.1);
        work.ascend_states(phi);
        work.reweight(100, opts.tol * 0.1);
        let chi = work.chi();
        if chi > best_chi {
            best_chi = chi;
            best = work.clone();
        }
        let sigma = work.average_output();
        let mut ascent = inner.clone();
        ascent.warm_starts = work.vecs.clone();
        let (mut radius, mut v, _, _) = divergence_radius(phi, &sigma, &ascent);
        if radius - chi <= opts.tol {
            let mut wide = full.clone();
            wide.warm_starts = work.vecs.clone();
            let (r, w, _, _) = divergence_radius(phi, &sigma, &wide);
            if r - chi <= opts.tol && chi >= best_chi {
                certified = Some((r, sigma.clone()));
                break;
            }
            radius = r;
            v = w;
        }
        if !radius.is_finite() || radius - chi > opts.tol {
            // Column generation: the most informative input replaces the
            // lightest member.
            let j = if work.vecs.len() < size {
                work.vecs.push(v.clone());
                work.outs.push(CMatrix::zeros(1, 1));
                work.ents.push(0.0);
                work.probs.push(0.0);
                work.vecs.len() - 1
            } else {
                work.probs
                    .iter()
                    .enumerate()
                    .min_by(|a, b| a.1.total_cmp(b.1))
                    .expect("non-empty ensemble")
                    .0
            };
            work.set(phi, j, v);
            if work.probs[j] < 1e-6 {
                work.probs[j] = 1e-6;
                let z: f64 = work.probs.iter().sum();
                work.probs.iter_mut().for_each(|p| *p /= z);
            }
        }
    }
    let ensemble = best.ensemble()?;
    let avg_input = ensemble.average();
    let avg_output = DensityMatrix::from_matrix_unchecked(linalg::hermitize(&phi.apply_matrix(&avg_input)));
    let radius = match certified {
        Some((r, _)) => r,
        None => certify_capacity(phi, &avg_input, best_chi, opts)?.radius,
    };
    let chi_star = holevo_chi(phi, &ensemble)?;
    let duality_gap = radius - chi_star;
    Ok(CapacityResult {
        chi_star,
        ensemble,
        avg_input,
        avg_output,
        duality_gap,
        converged: duality_gap <= opts.tol,
        iterations,
    })
}

/// `χ* = ln 2 − S_min` for unital qubit channels.
pub fn chi_star_unital_qubit(phi: &Channel, opts: &PurityOptions) -> Result<f64> {
    let unital = match phi.qubit_params() {
        Some(p) => p.t.iter().all(|x| x.abs() <= 1e-12),
        None => phi.is_qubit() && phi.is_unital(1e-12),
    };
    if !phi.is_qubit() || !unital {
        return Err(invalid_param("the formula applies to unital qubit channels only"));
    }
    Ok(std::f64::consts::LN_2 - s_min(phi, opts)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::random::{random_cq, random_kraus_channel, random_unital_params};
    use crate::channels::{computational_basis, dephasing, tensor_channels, QubitAffineParams};
    use crate::matcore::linalg::trace_distance;
    use crate::matcore::relative_entropy;

    fn basis_state(dim: usize, i: usize) -> DensityMatrix {
        DensityMatrix::basis(dim, i)
    }

    const LN2: f64 = std::f64::consts::LN_2;
    const LN2_MINUS_H34: f64 = 0.130_812_035_941_136_959;

    #[test]
    fn chi_examples() {
        let zero = basis_state(2, 0);
        let one = basis_state(2, 1);
        let single = Ensemble::new(vec![1.0], vec![zero.clone()]).unwrap();
        assert!(holevo_chi(&Channel::identity(2), &single).unwrap().abs() < 1e-15);
        let pair = Ensemble::new(vec![0.5, 0.5], vec![zero, one]).unwrap();
        assert!((holevo_chi(&Channel::identity(2), &pair).unwrap() - LN2).abs() < 1e-14);
        assert!((holevo_chi(&dephasing(2), &pair).unwrap() - LN2).abs() < 1e-14);
        assert!(holevo_chi(&Channel::identity(3), &pair).is_err());
    }

    #[test]
    fn ensemble_validation() {
        let s = basis_state(2, 0);
        assert!(Ensemble::new(vec![0.5], vec![s.clone()]).is_err());
        assert!(Ensemble::new(vec![0.5, 0.5], vec![s.clone()]).is_err());
        assert!(Ensemble::new(vec![1.5, -0.5], vec![s.clone(), s.clone()]).is_err());
        assert!(Ensemble::new(vec![0.5, 0.5], vec![s, basis_state(3, 0)]).is_err());
    }

    #[test]
    fn capacity_examples() {
        let opts = CapacityOptions::default();
        let id = chi_star(&Channel::identity(2), &opts).unwrap();
        assert!((id.chi_star - LN2).abs() < 1e-6);
        assert!(trace_distance(&id.avg_input, &DensityMatrix::maximally_mixed(2)) < 1e-3);
        assert!(id.duality_gap <= 1e-5 && id.converged);

        let dead = chi_star(&Channel::depolarizing(0.0), &opts).unwrap();
        assert!(dead.chi_star.abs() < 1e-10 && dead.duality_gap <= 1e-5);

        let half = chi_star(&Channel::depolarizing(0.5), &opts).unwrap();
        assert!((half.chi_star - LN2_MINUS_H34).abs() < 1e-5);
        assert!(half.duality_gap <= 1e-5);
        assert!(half.chi_star <= LN2_MINUS_H34 + 1e-12);
    }

    #[test]
    fn result_invariants() {
        let mut rng = SeededRng::new(12, 0);
        let phi = random_kraus_channel(2, 3, 2, &mut rng);
        let r = chi_star(&phi, &CapacityOptions::default()).unwrap();
        assert!(r.chi_star >= -1e-10 && r.chi_star <= 3f64.ln() + 1e-10);
        let out = phi.apply_matrix(&r.avg_input);
        assert!(linalg::max_abs_diff(&out, &r.avg_output) < 1e-12);
        let cert = certify_capacity(&phi, &r.avg_input, r.chi_star, &CapacityOptions::default()).unwrap();
        assert!(r.chi_star <= cert.radius + 1e-10);
    }

    #[test]
    fn certificate_examples() {
        let opts = CapacityOptions::default();
        let mixed = DensityMatrix::maximally_mixed(2);
        let id = certify_capacity(&Channel::identity(2), &mixed, LN2, &opts).unwrap();
        assert!((id.radius - LN2).abs() < 1e-10 && id.gap.abs() < 1e-10);
        let deph = certify_capacity(&dephasing(2), &mixed, LN2, &opts).unwrap();
        assert!((deph.radius - LN2).abs() < 1e-10);

        // Moving away from the optimal average input strictly raises the radius.
        let off = DensityMatrix::from_diagonal(&[0.7, 0.3]).unwrap();
        let cert = certify_capacity(&Channel::depolarizing(0.5), &off, LN2_MINUS_H34, &opts).unwrap();
        assert!(cert.gap > 1e-3);

        let pure = basis_state(2, 0);
        let cert = certify_capacity(&Channel::identity(2), &pure, 0.0, &opts).unwrap();
        assert!(cert.radius.is_infinite() && cert.inconclusive);
    }

    #[test]
    fn dephasing_radius_matches_direct_formula() {
        // sup over q of S(diag(q, 1−q) | I/2) is attained at q ∈ {0, 1}.
        let mixed = DensityMatrix::maximally_mixed(2);
        let mut best: f64 = 0.0;
        for k in 0..=1000 {
            let q = k as f64 / 1000.0;
            let w = DensityMatrix::from_diagonal(&[q, 1.0 - q]).unwrap();
            best = best.max(relative_entropy(&w, &mixed).unwrap());
        }
        let cert = certify_capacity(&dephasing(2), &mixed, 0.0, &CapacityOptions::default()).unwrap();
        assert!((cert.radius - best).abs() < 1e-12);
    }

    #[test]
    fn unital_shortcut() {
        let opts = PurityOptions::default();
        assert!((chi_star_unital_qubit(&Channel::identity(2), &opts).unwrap() - LN2).abs() < 1e-12);
        assert!(chi_star_unital_qubit(&Channel::depolarizing(0.0), &opts).unwrap().abs() < 1e-12);
        let half = chi_star_unital_qubit(&Channel::depolarizing(0.5), &opts).unwrap();
        assert!((half - LN2_MINUS_H34).abs() < 1e-12);
        let shifted = Channel::qubit_affine(QubitAffineParams::new([0.5, 0.4, 0.2], [0.1, 0.0, 0.1]));
        assert!(chi_star_unital_qubit(&shifted, &opts).is_err());

        let mut rng = SeededRng::new(13, 0);
        for _ in 0..3 {
            let phi = Channel::qubit_affine(random_unital_params(&mut rng));
            let a = chi_star(&phi, &CapacityOptions::default()).unwrap().chi_star;
            let b = chi_star_unital_qubit(&phi, &opts).unwrap();
            assert!((a - b).abs() < 1e-4);
        }
    }

    #[test]
    fn average_output_is_seed_independent() {
        let mut rng = SeededRng::new(14, 0);
        let phi = random_kraus_channel(2, 2, 3, &mut rng);
        let a = chi_star(&phi, &CapacityOptions::default().with_seed(1)).unwrap();
        let b = chi_star(&phi, &CapacityOptions::default().with_seed(2)).unwrap();
        assert!(trace_distance(&a.avg_output, &b.avg_output) < 1e-4);
    }

    #[test]
    fn cq_optimum_uses_basis_states() {
        let mut rng = SeededRng::new(15, 0);
        let phi = random_cq(3, 2, &mut rng);
        let r = chi_star(&phi, &CapacityOptions::default()).unwrap();
        let basis = match phi.form() {
            crate::channels::ChannelForm::Cq { basis, .. } => basis.clone(),
            _ => unreachable!(),
        };
        // Classical reweighting over the basis states alone.
        let mut work = Work::new(&phi, basis, vec![1.0 / 3.0; 3]);
        work.reweight(20000, 1e-13);
        assert!(work.chi() >= r.chi_star - 1e-6);
        let _ = computational_basis(2);
    }

    #[test]
    fn product_warm_start_is_superadditive() {
        let mut rng = SeededRng::new(16, 0);
        let omega = random_kraus_channel(2, 2, 2, &mut rng);
        let phi = dephasing(2);
        let a = chi_star(&omega, &CapacityOptions::default()).unwrap();
        let b = chi_star(&phi, &CapacityOptions::default()).unwrap();
        let opts = CapacityOptions::default().with_warm_start(a.ensemble.product(&b.ensemble));
        let joint = chi_star(&tensor_channels(&omega, &phi), &opts).unwrap();
        assert!(joint.chi_star >= a.chi_star + b.chi_star - 1e-10);
        assert!((joint.chi_star - a.chi_star - b.chi_star).abs() < 2e-3);
    }
}
