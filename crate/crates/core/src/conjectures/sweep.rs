// SPDX-License-Identifier: Apache-2.0

//! Seeded sweeps over random instance families.
//!
//! Instance seeds are drawn from the master seed before any work starts and
//! every instance builds its own generator from its seed, so the sorted
//! report list does not depend on the number of worker threads.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::{Rng, RngCore};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::capacity::CapacityOptions;
use crate::channels::random::{
    random_cq, random_kraus_channel, random_qc, random_qubit_channel, random_translation_condition_params,
    random_unital_params,
};
use crate::channels::{canonicalize_qubit, matrix_to_spec, Channel, ChannelSpec, MatrixSpec};
use crate::error::{invalid_param, Error, Result};
use crate::matcore::{haar_unitary, random_instance, CMatrix, DensityMatrix, RandomKind, SeededRng};
use crate::purity::PurityOptions;

use super::block::{block_decompose, random_block_psd, split_blocks};
use super::report::CheckReport;
use super::{
    check_additivity, check_conjecture1, check_entropy_bound, check_lieb_ruskai,
    check_multiplicativity, check_qc_identity, qc_references, DEGENERATE_TRACE,
};

/// Regeneration attempts per instance before giving up.
const MAX_REGENERATIONS: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Conjecture1,
    EntropyBound,
    LiebRuskai,
    Multiplicativity,
    Additivity,
    QcIdentity,
    BlockDecompose,
}

impl CheckKind {
    pub const ALL: [CheckKind; 7] = [
        CheckKind::Conjecture1,
        CheckKind::EntropyBound,
        CheckKind::LiebRuskai,
        CheckKind::Multiplicativity,
        CheckKind::Additivity,
        CheckKind::QcIdentity,
        CheckKind::BlockDecompose,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Conjecture1 => "conjecture1",
            CheckKind::EntropyBound => "entropy-bound",
            CheckKind::LiebRuskai => "lieb-ruskai",
            CheckKind::Multiplicativity => "multiplicativity",
            CheckKind::Additivity => "additivity",
            CheckKind::QcIdentity => "qc-identity",
            CheckKind::BlockDecompose => "block-decompose",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = CheckKind::ALL.iter().map(|k| k.name()).collect();
                invalid_param(format!("unknown check '{s}', expected one of {}", names.join(", ")))
            })
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub kind: CheckKind,
    pub trials: usize,
    pub seed: u64,
    /// Exponent; each check has its own default.
    pub p: Option<f64>,
    /// Block size `K`; drawn per instance when absent.
    pub k: Option<usize>,
    /// Worker threads; 0 uses the global pool.
    pub parallelism: usize,
    /// Draw channels outside the families where the checked statement is a
    /// theorem.
    pub exploratory: bool,
    pub purity: PurityOptions,
    pub capacity: CapacityOptions,
}

impl SweepConfig {
    pub fn new(kind: CheckKind, trials: usize, seed: u64) -> Self {
        Self {
            kind,
            trials,
            seed,
            p: None,
            k: None,
            parallelism: 0,
            exploratory: false,
            purity: PurityOptions::default(),
            capacity: CapacityOptions::default(),
        }
    }

    pub fn with_p(mut self, p: f64) -> Self {
        self.p = Some(p);
        self
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }

    pub fn with_parallelism(mut self, n: usize) -> Self {
        self.parallelism = n;
        self
    }

    pub fn exploratory(mut self) -> Self {
        self.exploratory = true;
        self
    }
}

/// Everything needed to rebuild one instance.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub channels: Vec<ChannelSpec>,
    pub matrices: BTreeMap<String, MatrixSpec>,
    pub p: Option<f64>,
    pub lambda: Option<f64>,
}

impl Instance {
    fn channel(mut self, ch: &Channel) -> Self {
        self.channels.push(ch.to_spec());
        self
    }

    fn matrix(mut self, name: &str, m: &CMatrix) -> Self {
        self.matrices.insert(name.into(), matrix_to_spec(m));
        self
    }
}

/// Reports of one instance.
#[derive(Debug, Clone)]
pub struct InstanceRun {
    pub instance_seed: u64,
    pub reports: Vec<CheckReport>,
    pub instance: Instance,
    /// Degenerate draws that were replaced.
    pub regenerated: usize,
}

/// A violated report with its instance, for independent reproduction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub check_name: String,
    pub master_seed: u64,
    pub instance_seed: u64,
    pub instance: Instance,
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    pub tolerance: f64,
    pub version: String,
    pub diagnostics: BTreeMap<String, serde_json::Value>,
}

impl Candidate {
    fn new(master_seed: u64, report: &CheckReport, instance: &Instance) -> Self {
        Self {
            check_name: report.check_name.clone(),
            master_seed,
            instance_seed: report.instance_seed,
            instance: instance.clone(),
            lhs: report.lhs,
            rhs: report.rhs,
            gap: report.gap,
            tolerance: report.tolerance,
            version: env!("CARGO_PKG_VERSION").to_string(),
            diagnostics: report.diagnostics.clone(),
        }
    }

    pub fn file_name(&self) -> String {
        format!("candidate-{}-{}.json", self.check_name, self.instance_seed)
    }

    /// Writes the candidate into `dir` and returns the file path.
    pub fn write(&self, dir: &Path) -> Result<PathBuf> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join(self.file_name());
        std::fs::write(&path, serde_json::to_string_pretty(self)?)?;
        Ok(path)
    }
}

#[derive(Debug, Clone)]
pub struct SweepOutcome {
    /// Sorted by `instance_seed`, then by position within the instance.
    pub reports: Vec<CheckReport>,
    pub regenerated: usize,
    pub candidates: Vec<Candidate>,
}

impl SweepOutcome {
    pub fn has_violation(&self) -> bool {
        self.reports.iter().any(|r| r.is_violation())
    }

    pub fn has_inconclusive(&self) -> bool {
        self.reports
            .iter()
            .any(|r| r.status == super::CheckStatus::Inconclusive)
    }

    /// Writes every candidate into `dir`.
    pub fn write_candidates(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        self.candidates.iter().map(|c| c.write(dir)).collect()
    }
}

/// Per-instance seeds derived from the master seed.
pub fn instance_seeds(master: u64, trials: usize) -> Vec<u64> {
    let mut rng = SeededRng::new(master, u64::MAX);
    (0..trials).map(|_| rng.next_u64()).collect()
}

fn degenerate_blocks(m: &CMatrix) -> bool {
    let (x, _, z) = split_blocks(m).expect("generated matrix has even size");
    x.trace().re < DEGENERATE_TRACE || z.trace().re < DEGENERATE_TRACE
}

/// Draws a block matrix, replacing degenerate draws.
fn draw_blocks(k: usize, rng: &mut SeededRng, regenerated: &mut usize) -> Result<CMatrix> {
    for _ in 0..MAX_REGENERATIONS {
        let m = random_block_psd(k, rng);
        if !degenerate_blocks(&m) {
            return Ok(m);
        }
        *regenerated += 1;
    }
    Err(Error::Degenerate("no non-degenerate block matrix drawn".into()))
}

fn is_integer(p: f64) -> bool {
    (p - p.round()).abs() <= 1e-12
}

fn block_size(cfg: &SweepConfig, rng: &mut SeededRng, lo: usize) -> usize {
    cfg.k.unwrap_or_else(|| rng.random_range(lo..=4))
}

/// Qubit channel drawn from the family where the norm statements at `p` are
/// theorems, or from all qubit channels in exploratory mode.
fn qubit_channel_for(p: f64, cfg: &SweepConfig, rng: &mut SeededRng) -> Channel {
    if cfg.exploratory || (p - 2.0).abs() <= 1e-12 || !is_integer(p) {
        random_qubit_channel(rng)
    } else {
        Channel::qubit_affine(random_translation_condition_params(rng))
    }
}

fn random_square_channel(d: usize, rng: &mut SeededRng) -> Channel {
    let rank = rng.random_range(1..=d + 1);
    random_kraus_channel(d, d, rank, rng)
}

/// Runs one instance of the configured check.
pub fn run_instance(cfg: &SweepConfig, instance_seed: u64) -> Result<InstanceRun> {
    let mut rng = SeededRng::new(instance_seed, 0);
    let mut regenerated = 0;
    let (reports, instance) = match cfg.kind {
        CheckKind::Conjecture1 => {
            let p = cfg.p.unwrap_or(2.0);
            let k = block_size(cfg, &mut rng, 2);
            let phi = qubit_channel_for(p, cfg, &mut rng);
            let m = draw_blocks(k, &mut rng, &mut regenerated)?;
            let r = check_conjecture1(&phi, &m, p, &cfg.purity)?;
            (vec![r], Instance { p: Some(p), ..Instance::default() }.channel(&phi).matrix("m", &m))
        }
        CheckKind::EntropyBound => {
            let k = block_size(cfg, &mut rng, 1);
            let phi = random_qubit_channel(&mut rng);
            let m = draw_blocks(k, &mut rng, &mut regenerated)?;
            let r = check_entropy_bound(&phi, &m, &cfg.purity)?;
            (vec![r], Instance::default().channel(&phi).matrix("m", &m))
        }
        CheckKind::LiebRuskai => {
            let k = block_size(cfg, &mut rng, 1);
            let p = cfg.p.unwrap_or_else(|| [1.5, 2.0, 3.0][rng.random_range(0..3)]);
            let x = random_instance(RandomKind::Density, k, &mut rng);
            let v = haar_unitary(k, &mut rng);
            let lambda = rng.uniform();
            let reports = check_lieb_ruskai(&x, &v, lambda, p)?;
            let inst = Instance {
                p: Some(p),
                lambda: Some(lambda),
                ..Instance::default()
            };
            (reports, inst.matrix("x", &x).matrix("v", &v))
        }
        CheckKind::Multiplicativity => {
            let p = cfg.p.unwrap_or(2.0);
            let d = rng.random_range(2..=3);
            let omega = random_square_channel(d, &mut rng);
            let outcomes = rng.random_range(2..=3);
            let phi = match rng.random_range(0..3) {
                0 => random_cq(2, outcomes, &mut rng),
                1 => random_qc(2, outcomes, &mut rng),
                _ if cfg.exploratory || (p - 2.0).abs() <= 1e-12 => random_qubit_channel(&mut rng),
                _ if is_integer(p) => Channel::qubit_affine(random_translation_condition_params(&mut rng)),
                _ => random_cq(2, outcomes, &mut rng),
            };
            let reports = check_multiplicativity(&omega, &phi, p, &cfg.purity)?;
            (reports, Instance { p: Some(p), ..Instance::default() }.channel(&omega).channel(&phi))
        }
        CheckKind::Additivity => {
            let family = rng.random_range(0..3);
            let (omega, phi) = if cfg.exploratory {
                (random_qubit_channel(&mut rng), random_qubit_channel(&mut rng))
            } else {
                match family {
                    0 => (random_qubit_channel(&mut rng), random_cq(2, 2, &mut rng)),
                    1 => {
                        let outcomes = rng.random_range(2..=3);
                        (random_qubit_channel(&mut rng), random_qc(2, outcomes, &mut rng))
                    }
                    _ => (
                        Channel::qubit_affine(random_unital_params(&mut rng)),
                        Channel::qubit_affine(random_unital_params(&mut rng)),
                    ),
                }
            };
            let reports = check_additivity(&omega, &phi, &cfg.capacity, &cfg.purity)?;
            (reports, Instance::default().channel(&omega).channel(&phi))
        }
        CheckKind::QcIdentity => {
            let d = rng.random_range(2..=3);
            let omega = random_square_channel(d, &mut rng);
            let outcomes = rng.random_range(2..=3);
            let phi = random_qc(2, outcomes, &mut rng);
            let kind = if rng.uniform() < 0.25 { RandomKind::Pure } else { RandomKind::Density };
            let tau = DensityMatrix::from_matrix_unchecked(random_instance(kind, 2 * d, &mut rng));
            let (ro, rp) = qc_references(&omega, &phi, &cfg.capacity)?;
            let r = check_qc_identity(&omega, &phi, &tau, &ro, &rp)?;
            (vec![r], Instance::default().channel(&omega).channel(&phi).matrix("tau", &tau))
        }
        CheckKind::BlockDecompose => {
            let p = match cfg.p {
                Some(p) if is_integer(p) && p >= 1.0 => p.round() as u32,
                Some(p) => return Err(invalid_param(format!("block expansion needs an integer p, got {p}"))),
                None => rng.random_range(2..=4),
            };
            let k = block_size(cfg, &mut rng, 1);
            let params = canonicalize_qubit(&random_translation_condition_params(&mut rng)).params;
            let phi = Channel::qubit_affine(params);
            let m = draw_blocks(k, &mut rng, &mut regenerated)?;
            let (_, reports) = block_decompose(&m, &phi, p)?;
            let inst = Instance {
                p: Some(p as f64),
                ..Instance::default()
            };
            (reports, inst.channel(&phi).matrix("m", &m))
        }
    };
    let reports = reports
        .into_iter()
        .map(|r| {
            let r = r.with_seed(instance_seed);
            if regenerated > 0 {
                r.with("regenerated", regenerated)
            } else {
                r
            }
        })
        .collect();
    Ok(InstanceRun {
        instance_seed,
        reports,
        instance,
        regenerated,
    })
}

/// Runs `cfg.trials` instances and collects their reports in canonical
/// order, with a [`Candidate`] for every violation.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepOutcome> {
    if cfg.trials == 0 {
        return Err(invalid_param("a sweep needs at least one trial"));
    }
    let seeds = instance_seeds(cfg.seed, cfg.trials);
    let work = || -> Result<Vec<InstanceRun>> { seeds.par_iter().map(|&s| run_instance(cfg, s)).collect() };
    let mut runs = if cfg.parallelism > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.parallelism)
            .build()
            .map_err(|e| invalid_param(format!("cannot start {} workers: {e}", cfg.parallelism)))?
            .install(work)?
    } else {
        work()?
    };
    runs.sort_by_key(|r| r.instance_seed);
    let mut reports = Vec::new();
    let mut candidates = Vec::new();
    let mut regenerated = 0;
    for run in runs {
        regenerated += run.regenerated;
        for r in &run.reports {
            if r.is_violation() {
                candidates.push(Candidate::new(cfg.seed, r, &run.instance));
            }
        }
        reports.extend(run.reports);
    }
    Ok(SweepOutcome {
        reports,
        regenerated,
        candidates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for k in CheckKind::ALL {
            assert_eq!(k.name().parse::<CheckKind>().unwrap(), k);
        }
        assert!("conjecture2".parse::<CheckKind>().is_err());
    }

    #[test]
    fn seeds_are_stable_prefixes() {
        let a = instance_seeds(42, 10);
        let b = instance_seeds(42, 20);
        assert_eq!(a[..], b[..10]);
        assert_ne!(instance_seeds(43, 10), a);
    }

    #[test]
    fn parallelism_does_not_change_reports() {
        let base = SweepConfig::new(CheckKind::LiebRuskai, 12, 5);
        let one = run_sweep(&base.clone().with_parallelism(1)).unwrap();
        let four = run_sweep(&base.with_parallelism(4)).unwrap();
        assert_eq!(one.reports, four.reports);
        assert!(one.reports.windows(2).all(|w| w[0].instance_seed <= w[1].instance_seed));
    }

    #[test]
    fn instances_serialize() {
        let cfg = SweepConfig::new(CheckKind::Conjecture1, 1, 3);
        let run = run_instance(&cfg, 99).unwrap();
        let c = Candidate::new(3, &run.reports[0], &run.instance);
        let text = serde_json::to_string(&c).unwrap();
        let back: Candidate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
        let m = crate::channels::matrix_from_spec(&back.instance.matrices["m"]).unwrap();
        assert_eq!(m.nrows() % 2, 0);
        assert!(back.instance.channels[0].build().is_ok());
    }

    #[test]
    fn zero_trials_rejected() {
        assert!(run_sweep(&SweepConfig::new(CheckKind::LiebRuskai, 0, 1)).is_err());
    }

    #[test]
    fn block_sweep_needs_integer_p() {
        let cfg = SweepConfig::new(CheckKind::BlockDecompose, 2, 1).with_p(2.5);
        assert!(run_sweep(&cfg).is_err());
    }
}
