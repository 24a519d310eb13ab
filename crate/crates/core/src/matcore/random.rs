// SPDX-License-Identifier: Apache-2.0

//! Seeded random matrices: states, Haar unitaries, PSD matrices.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::linalg::{c, outer, CMatrix, CVector, C64};

/// A ChaCha8 generator addressed by `(seed, stream)`.
///
/// The same pair yields the same draws on every platform, so sweeps can hand
/// each work item its own stream and stay reproducible for any worker count.
#[derive(Debug, Clone)]
pub struct SeededRng {
    seed: u64,
    stream: u64,
    inner: ChaCha8Rng,
}

impl SeededRng {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        Self {
            seed,
            stream,
            inner,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// Fresh generator on another stream of the same seed.
    pub fn fork(&self, stream: u64) -> Self {
        Self::new(self.seed, stream)
    }

    pub fn gaussian(&mut self) -> f64 {
        self.sample(StandardNormal)
    }

    /// Standard complex Gaussian, `E|z|² = 1`.
    pub fn complex_gaussian(&mut self) -> C64 {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        c(s * self.gaussian(), s * self.gaussian())
    }

    pub fn uniform(&mut self) -> f64 {
        self.random::<f64>()
    }

    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }
}

impl RngCore for SeededRng {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}

/// Which family `random_instance` draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RandomKind {
    /// `G G* / Tr(G G*)`, G complex Gaussian.
    Density,
    /// Haar unitary.
    Unitary,
    /// `G G*`.
    Psd,
    /// Projector onto a normalized Gaussian vector.
    Pure,
}

pub fn gaussian_matrix(rows: usize, cols: usize, rng: &mut SeededRng) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| rng.complex_gaussian())
}

/// Uniformly random unit vector in `C^dim`.
pub fn random_unit_vector(dim: usize, rng: &mut SeededRng) -> CVector {
    let v = CVector::from_fn(dim, |_, _| rng.complex_gaussian());
    let n = v.norm();
    v / c(n, 0.0)
}

/// Haar-distributed unitary from the QR decomposition of a Gaussian matrix,
/// with the phases of `R`'s diagonal pushed into `Q`.
pub fn haar_unitary(dim: usize, rng: &mut SeededRng) -> CMatrix {
    let g = gaussian_matrix(dim, dim, rng);
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c(1.0, 0.0) };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Random isometry `C^cols → C^rows` (`rows ≥ cols`).
pub fn random_isometry(rows: usize, cols: usize, rng: &mut SeededRng) -> CMatrix {
    assert!(rows >= cols);
    let u = haar_unitary(rows, rng);
    u.columns(0, cols).into_owned()
}

pub fn random_instance(kind: RandomKind, dim: usize, rng: &mut SeededRng) -> CMatrix {
    assert!(dim >= 1, "dimension must be positive");
    match kind {
        RandomKind::Density => {
            let g = gaussian_matrix(dim, dim, rng);
            let m = &g * g.adjoint();
            let t = m.trace().re;
            m / c(t, 0.0)
        }
        RandomKind::Unitary => haar_unitary(dim, rng),
        RandomKind::Psd => {
            let g = gaussian_matrix(dim, dim, rng);
            &g * g.adjoint()
        }
        RandomKind::Pure => outer(&random_unit_vector(dim, rng)),
    }
}
