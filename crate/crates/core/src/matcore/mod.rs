// SPDX-License-Identifier: Apache-2.0

//! Dense Hermitian linear algebra: Schatten norms, entropies, tensor
//! products, partial traces and seeded random matrices.
//!
//! # Tensor layout
//!
//! `tensor(A, B)` is the Kronecker product with the second factor varying
//! fastest: row `i ⊗ a` of `A ⊗ B` is `i * d_B + a`. A `2K × 2K` block matrix
//!
//! ```text
//!     M = | X   Y |      rows 0..K   : first qubit level
//!         | Y*  Z |      rows K..2K  : second qubit level
//! ```
//!
//! is therefore an operator on `C² ⊗ C^K` whose blocks `X`, `Y`, `Z` are
//! contiguous, and `partial_trace(M, (2, K), Keep::First)` is the 2×2 matrix
//! of block traces `[[Tr X, Tr Y], [Tr Y*, Tr Z]]`.

pub mod linalg;
pub mod random;

use std::ops::Deref;

pub use linalg::{c, eigh, eigvalsh, CMatrix, CVector, Eigh, C64};
pub use random::{haar_unitary, random_instance, random_unit_vector, RandomKind, SeededRng};

use crate::error::{invalid_input, invalid_param, Error, Result};
use crate::tolerance;

/// A square matrix equal to its conjugate transpose.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(CMatrix);

impl HermitianMatrix {
    /// Accepts `m` if it is square, finite and Hermitian to within
    /// [`tolerance::HERMITIAN`] elementwise; the stored copy is symmetrized.
    pub fn new(m: CMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(invalid_input(format!(
                "matrix is {}x{}, expected square",
                m.nrows(),
                m.ncols()
            )));
        }
        if !linalg::is_finite(&m) {
            return Err(invalid_input("matrix has non-finite entries"));
        }
        let res = linalg::hermiticity_residual(&m);
        if res > tolerance::HERMITIAN {
            return Err(invalid_input(format!("matrix is not Hermitian (residual {res:.3e})")));
        }
        Ok(Self(linalg::hermitize(&m)))
    }

    pub(crate) fn from_matrix_unchecked(m: CMatrix) -> Self {
        Self(linalg::hermitize(&m))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        eigvalsh(&self.0)
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }
}

impl Deref for HermitianMatrix {
    type Target = CMatrix;

    fn deref(&self) -> &CMatrix {
        &self.0
    }
}

/// A positive semidefinite, unit-trace Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(HermitianMatrix);

impl DensityMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        let h = HermitianMatrix::new(m)?;
        let min = h.eigenvalues()[0];
        if min < -tolerance::PSD {
            return Err(Error::NotAState(format!("eigenvalue {min:.3e} is negative")));
        }
        let tr = h.trace().re;
        if (tr - 1.0).abs() > tolerance::UNIT_TRACE {
            return Err(Error::NotAState(format!("trace is {tr}")));
        }
        Ok(Self(h))
    }

    /// Projector onto `v / |v|`.
    pub fn from_pure(v: &CVector) -> Result<Self> {
        let n = v.norm();
        if !(n.is_finite() && n > 0.0) {
            return Err(invalid_input("state vector has zero or non-finite norm"));
        }
        let u = v / c(n, 0.0);
        Ok(Self::from_matrix_unchecked(linalg::outer(&u)))
    }

    pub fn from_diagonal(probs: &[f64]) -> Result<Self> {
        Self::new(linalg::real_diag(probs))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        let m = CMatrix::identity(dim, dim) / c(dim as f64, 0.0);
        Self::from_matrix_unchecked(m)
    }

    /// `|i⟩⟨i|` in dimension `dim`.
    pub fn basis(dim: usize, i: usize) -> Self {
        Self::from_matrix_unchecked(linalg::matrix_unit(dim, i, i))
    }

    /// Wraps the output of a certified map without re-running the spectral
    /// checks. Hermiticity is restored exactly.
    pub(crate) fn from_matrix_unchecked(m: CMatrix) -> Self {
        Self(HermitianMatrix::from_matrix_unchecked(m))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.0.eigenvalues()
    }

    pub fn as_matrix(&self) -> &CMatrix {
        self.0.as_matrix()
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0.into_matrix()
    }
}

impl Deref for DensityMatrix {
    type Target = CMatrix;

    fn deref(&self) -> &CMatrix {
        self.0.as_matrix()
    }
}

impl From<DensityMatrix> for HermitianMatrix {
    fn from(d: DensityMatrix) -> Self {
        d.0
    }
}

/// Schatten p-norm `(Σ sᵢ^p)^{1/p}` over singular values.
///
/// Hermitian input is handled through its eigenvalues; anything else goes
/// through an SVD.
pub fn schatten_norm(a: &CMatrix, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(invalid_param(format!("Schatten exponent p = {p} must be >= 1")));
    }
    if !linalg::is_finite(a) {
        return Err(invalid_input("matrix has non-finite entries"));
    }
    let singular: Vec<f64> = if a.is_square() && linalg::hermiticity_residual(a) <= tolerance::HERMITIAN {
        eigvalsh(a).into_iter().map(f64::abs).collect()
    } else {
        a.clone().svd(false, false).singular_values.iter().copied().collect()
    };
    Ok(power_norm(&singular, p))
}

/// `(Σ |xᵢ|^p)^{1/p}`, scaled by the largest entry to avoid overflow.
pub fn power_norm(values: &[f64], p: f64) -> f64 {
    let top = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if top == 0.0 {
        return 0.0;
    }
    if p.is_infinite() {
        return top;
    }
    let s: f64 = values.iter().map(|v| (v.abs() / top).powf(p)).sum();
    top * s.powf(1.0 / p)
}

/// `Tr |A|^p` for a PSD matrix given by its spectrum; tiny negatives clipped.
pub(crate) fn trace_power(spectrum: &[f64], p: f64) -> f64 {
    spectrum.iter().map(|&e| e.max(0.0).powf(p)).sum()
}

/// `−Σ e ln e` with `0 ln 0 = 0`.
pub fn entropy_of_spectrum(spectrum: &[f64]) -> f64 {
    -spectrum
        .iter()
        .map(|&e| if e > 0.0 { e * e.ln() } else { 0.0 })
        .sum::<f64>()
}

fn checked_spectrum(m: &CMatrix) -> Result<Vec<f64>> {
    let mut spec = eigvalsh(m);
    for e in spec.iter_mut() {
        if *e < -tolerance::PSD {
            return Err(Error::NotAState(format!("eigenvalue {e:.3e} is negative")));
        }
        if *e < 0.0 {
            *e = 0.0;
        }
    }
    Ok(spec)
}

/// Von Neumann entropy in nats.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    Ok(entropy_of_spectrum(&checked_spectrum(rho)?))
}

/// Entropy of any PSD matrix, unnormalized.
pub(crate) fn entropy_raw(m: &CMatrix) -> f64 {
    entropy_of_spectrum(&eigvalsh(m))
}

/// A reference state prepared for repeated `Tr ω ln ρ` evaluations.
#[derive(Debug, Clone)]
pub(crate) struct LogReference {
    eig: Eigh,
    logs: Vec<f64>,
}

impl LogReference {
    pub fn new(rho: &CMatrix) -> Self {
        let eig = eigh(rho);
        let logs = eig
            .values
            .iter()
            .map(|&r| if r > tolerance::SUPPORT { r.ln() } else { f64::NEG_INFINITY })
            .collect();
        Self { eig, logs }
    }

    /// `Tr ω ln ρ`, or `None` when ω has weight outside the support of ρ.
    pub fn cross_term(&self, omega: &CMatrix) -> Option<f64> {
        let n = self.logs.len();
        let mut acc = 0.0;
        for k in 0..n {
            let u = self.eig.vectors.column(k);
            let mass = (u.adjoint() * omega * u)[(0, 0)].re;
            if self.logs[k].is_finite() {
                acc += mass * self.logs[k];
            } else if mass > tolerance::SUPPORT {
                return None;
            }
        }
        Some(acc)
    }

    /// `ln ρ` with the kernel mapped to `ln(floor)`.
    pub fn log_matrix(&self, floor: f64) -> CMatrix {
        self.eig.map(|r| r.max(floor).ln())
    }

    pub fn has_kernel(&self) -> bool {
        self.logs.iter().any(|l| !l.is_finite())
    }

    /// Projector onto the eigenvectors treated as outside the support.
    pub fn kernel_projector(&self) -> CMatrix {
        let n = self.logs.len();
        let mut p = CMatrix::zeros(n, n);
        for k in 0..n {
            if !self.logs[k].is_finite() {
                let u = self.eig.vectors.column(k).into_owned();
                p += linalg::outer(&u);
            }
        }
        p
    }
}

/// `Tr ω ln ω − Tr ω ln ρ` on raw matrices; `+∞` on support violation.
pub(crate) fn relative_entropy_raw(omega: &CMatrix, reference: &LogReference) -> f64 {
    match reference.cross_term(omega) {
        Some(cross) => -entropy_raw(omega) - cross,
        None => f64::INFINITY,
    }
}

/// Relative entropy `S(ω | ρ) = Tr ω (ln ω − ln ρ)` in nats.
///
/// Returns `f64::INFINITY` when ω has weight on an eigenvector of ρ whose
/// eigenvalue is at most [`tolerance::SUPPORT`].
pub fn relative_entropy(omega: &DensityMatrix, rho: &DensityMatrix) -> Result<f64> {
    if omega.dim() != rho.dim() {
        return Err(invalid_input(format!(
            "relative entropy of a {}-dimensional state against a {}-dimensional one",
            omega.dim(),
            rho.dim()
        )));
    }
    checked_spectrum(omega)?;
    checked_spectrum(rho)?;
    Ok(relative_entropy_raw(omega, &LogReference::new(rho)))
}

/// Which tensor factor `partial_trace` keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keep {
    First,
    Second,
}

/// Partial trace of an operator on `C^{d₁} ⊗ C^{d₂}` (second factor fastest).
pub fn partial_trace(m: &CMatrix, dims: (usize, usize), keep: Keep) -> Result<CMatrix> {
    let (d1, d2) = dims;
    if !m.is_square() || m.nrows() != d1 * d2 {
        return Err(invalid_input(format!(
            "matrix of size {}x{} does not act on C^{d1} ⊗ C^{d2}",
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(match keep {
        Keep::First => CMatrix::from_fn(d1, d1, |i, j| {
            (0..d2).map(|a| m[(i * d2 + a, j * d2 + a)]).sum()
        }),
        Keep::Second => CMatrix::from_fn(d2, d2, |a, b| {
            (0..d1).map(|i| m[(i * d2 + a, i * d2 + b)]).sum()
        }),
    })
}

/// Kronecker product `A ⊗ B`.
pub fn tensor(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Forward difference `(‖ρ‖_{1+h} − 1) / h`, which tends to `−S(ρ)`.
pub fn norm_derivative_at_one(rho: &DensityMatrix, h: f64) -> Result<f64> {
    if !(h > 0.0 && h <= 1e-3) {
        return Err(invalid_param(format!("step h = {h} must lie in (0, 1e-3]")));
    }
    let spec = checked_spectrum(rho)?;
    Ok((power_norm(&spec, 1.0 + h) - 1.0) / h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use linalg::{max_abs_diff, real_diag};

    const H34: f64 = 0.562_335_144_618_808_4;

    #[test]
    fn schatten_examples() {
        let a = real_diag(&[3.0, -4.0]);
        assert!((schatten_norm(&a, 1.0).unwrap() - 7.0).abs() < 1e-14);
        let i2 = CMatrix::identity(2, 2);
        assert!((schatten_norm(&i2, 2.0).unwrap() - 2f64.sqrt()).abs() < 1e-14);
        let d = real_diag(&[1.0, 2.0, 2.0]);
        // 17^{1/3} evaluated at 30 digits
        assert!((schatten_norm(&d, 3.0).unwrap() - 2.571_281_590_658_235_4).abs() < 1e-13);
    }

    #[test]
    fn schatten_rejects_bad_arguments() {
        let a = real_diag(&[1.0, 0.0]);
        assert!(matches!(schatten_norm(&a, 0.5), Err(Error::InvalidParameter(_))));
        let mut b = a.clone();
        b[(0, 1)] = c(f64::NAN, 0.0);
        assert!(matches!(schatten_norm(&b, 2.0), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn schatten_of_non_hermitian_uses_singular_values() {
        // [[0, 2], [0, 0]] has singular values {2, 0}
        let mut a = CMatrix::zeros(2, 2);
        a[(0, 1)] = c(2.0, 0.0);
        assert!((schatten_norm(&a, 3.0).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn entropy_examples() {
        let mixed = DensityMatrix::maximally_mixed(2);
        assert!((von_neumann_entropy(&mixed).unwrap() - 2f64.ln()).abs() < 1e-14);
        let pure = DensityMatrix::from_pure(&CVector::from_vec(vec![c(0.6, 0.0), c(0.0, 0.8)])).unwrap();
        assert!(von_neumann_entropy(&pure).unwrap().abs() < 1e-14);
        let d = DensityMatrix::from_diagonal(&[0.75, 0.25]).unwrap();
        assert!((von_neumann_entropy(&d).unwrap() - H34).abs() < 1e-14);
    }

    #[test]
    fn relative_entropy_examples() {
        let w = DensityMatrix::from_diagonal(&[0.3, 0.7]).unwrap();
        assert!(relative_entropy(&w, &w).unwrap().abs() < 1e-14);
        let e0 = DensityMatrix::from_diagonal(&[1.0, 0.0]).unwrap();
        let e1 = DensityMatrix::from_diagonal(&[0.0, 1.0]).unwrap();
        assert_eq!(relative_entropy(&e0, &e1).unwrap(), f64::INFINITY);
        let half = DensityMatrix::maximally_mixed(2);
        assert!((relative_entropy(&e0, &half).unwrap() - 2f64.ln()).abs() < 1e-14);
        let three = DensityMatrix::maximally_mixed(3);
        assert!(matches!(relative_entropy(&e0, &three), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn density_matrix_validation() {
        assert!(matches!(
            DensityMatrix::from_diagonal(&[1.2, -0.2]),
            Err(Error::NotAState(_))
        ));
        assert!(matches!(
            DensityMatrix::from_diagonal(&[0.5, 0.4]),
            Err(Error::NotAState(_))
        ));
        let mut m = real_diag(&[0.5, 0.5]);
        m[(0, 1)] = c(0.1, 0.0);
        assert!(matches!(DensityMatrix::new(m), Err(Error::InvalidInput(_))));
        // drift inside the clip window is accepted
        assert!(DensityMatrix::from_diagonal(&[1.0 + 5e-11, -5e-11]).is_ok());
    }

    /// Brute-force index summation, independent of the library routine.
    fn block_traces_by_summation(m: &CMatrix, k: usize) -> CMatrix {
        let mut out = CMatrix::zeros(2, 2);
        for a in 0..2 {
            for b in 0..2 {
                let mut s = c(0.0, 0.0);
                for i in 0..k {
                    s += m[(a * k + i, b * k + i)];
                }
                out[(a, b)] = s;
            }
        }
        out
    }

    #[test]
    fn partial_trace_examples() {
        let mut rng = SeededRng::new(11, 0);
        let rho = random_instance(RandomKind::Density, 3, &mut rng);
        let sigma = random_instance(RandomKind::Density, 2, &mut rng);
        let prod = tensor(&rho, &sigma);
        assert!(max_abs_diff(&partial_trace(&prod, (3, 2), Keep::First).unwrap(), &rho) < 1e-14);
        assert!(max_abs_diff(&partial_trace(&prod, (3, 2), Keep::Second).unwrap(), &sigma) < 1e-14);

        // block matrix [[X, Y], [Y*, Z]] with K = 3: tracing out C^K leaves
        // the 2×2 matrix of block traces
        let m = random_instance(RandomKind::Psd, 6, &mut rng);
        let reduced = partial_trace(&m, (2, 3), Keep::First).unwrap();
        assert!(max_abs_diff(&reduced, &block_traces_by_summation(&m, 3)) < 1e-13);
        assert!((reduced.trace() - m.trace()).norm() < 1e-13);

        assert!(partial_trace(&m, (4, 2), Keep::First).is_err());
    }

    #[test]
    fn tensor_examples() {
        let i2 = CMatrix::identity(2, 2);
        assert_eq!(tensor(&i2, &i2), CMatrix::identity(4, 4));
        let mut rng = SeededRng::new(3, 1);
        let a = random_instance(RandomKind::Psd, 2, &mut rng);
        let b = random_instance(RandomKind::Psd, 3, &mut rng);
        assert!((tensor(&a, &b).trace() - a.trace() * b.trace()).norm() < 1e-12);
    }

    #[test]
    fn norm_derivative_examples() {
        let pure = DensityMatrix::from_diagonal(&[1.0, 0.0]).unwrap();
        assert!(norm_derivative_at_one(&pure, 1e-4).unwrap().abs() <= 1e-6);
        let half = DensityMatrix::maximally_mixed(2);
        assert!((norm_derivative_at_one(&half, 1e-4).unwrap() + 2f64.ln()).abs() < 1e-3);
        let d = DensityMatrix::from_diagonal(&[0.75, 0.25]).unwrap();
        assert!((norm_derivative_at_one(&d, 1e-4).unwrap() + H34).abs() < 1e-3);
        assert!(norm_derivative_at_one(&d, 0.0).is_err());
        assert!(norm_derivative_at_one(&d, 2e-3).is_err());
    }

    #[test]
    fn random_instance_examples() {
        let a = random_instance(RandomKind::Density, 2, &mut SeededRng::new(7, 0));
        let b = random_instance(RandomKind::Density, 2, &mut SeededRng::new(7, 0));
        assert_eq!(a, b);

        let mut rng = SeededRng::new(5, 2);
        let u = random_instance(RandomKind::Unitary, 3, &mut rng);
        assert!(max_abs_diff(&(&u * u.adjoint()), &CMatrix::identity(3, 3)) < 1e-10);

        let rho = random_instance(RandomKind::Density, 4, &mut rng);
        assert!(eigvalsh(&rho)[0] >= -1e-12);
        assert!((rho.trace().re - 1.0).abs() <= 1e-12);

        let p = random_instance(RandomKind::Pure, 3, &mut rng);
        assert!(max_abs_diff(&(&p * &p), &p) < 1e-12);
    }
}
