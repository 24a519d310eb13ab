// SPDX-License-Identifier: Apache-2.0

//! Quantum channels in Kraus, CQ, QC, qubit-affine and tensor-product form.
//!
//! Every [`Channel`] carries its native description plus a Kraus set derived
//! from it, so forms can be mixed freely in tensor products. Complete
//! positivity is certified through the Choi matrix (see [`Channel::is_cptp`]).

mod qubit;
pub mod random;
mod spec;

pub use qubit::{
    canonicalize_qubit, satisfies_translation_condition, CanonicalStep, Canonicalization,
    QubitAffineParams,
};
pub use spec::{matrix_from_spec, matrix_to_spec, ChannelSpec, MatrixSpec, VectorSpec};

use nalgebra::{Matrix3, Vector3};

use crate::error::{invalid_input, Result};
use crate::matcore::linalg::{self, basis_vector, matrix_unit, outer, pauli};
use crate::matcore::{c, eigh, partial_trace, tensor, CMatrix, CVector, DensityMatrix, HermitianMatrix, Keep};
use crate::tolerance;

/// Kraus operators whose Choi weight falls below this are dropped.
pub const KRAUS_CUTOFF: f64 = 1e-12;

/// Native description of a channel.
#[derive(Debug, Clone)]
pub enum ChannelForm {
    Kraus(Vec<CMatrix>),
    /// `ρ ↦ Σ ⟨e_b|ρ|e_b⟩ Q_b` for an orthonormal basis `{e_b}`.
    Cq {
        basis: Vec<CVector>,
        outputs: Vec<DensityMatrix>,
    },
    /// `ρ ↦ Σ Tr(ρ X_b) |e_b⟩⟨e_b|` for a POVM `{X_b}`.
    Qc {
        povm: Vec<CMatrix>,
        basis: Vec<CVector>,
    },
    QubitAffine(QubitAffineParams),
    Tensor(Box<Channel>, Box<Channel>),
}

#[derive(Debug, Clone)]
pub struct Channel {
    form: ChannelForm,
    d_in: usize,
    d_out: usize,
    kraus: Vec<CMatrix>,
}

/// Outcome of the Choi-matrix complete-positivity test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CptpCertificate {
    pub min_choi_eigenvalue: f64,
    /// Largest entry of `Tr_out(J) − I`, J the unnormalized Choi matrix.
    pub trace_preservation_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn check_orthonormal(basis: &[CVector], what: &str) -> Result<usize> {
    let dim = basis
        .first()
        .map(|v| v.len())
        .ok_or_else(|| invalid_input(format!("{what}: empty basis")))?;
    for (i, u) in basis.iter().enumerate() {
        if u.len() != dim {
            return Err(invalid_input(format!("{what}: basis vectors have mixed lengths")));
        }
        for (j, v) in basis.iter().enumerate().skip(i) {
            let ip = u.dotc(v);
            let want = if i == j { 1.0 } else { 0.0 };
            if (ip - c(want, 0.0)).norm() > tolerance::STRUCTURE {
                return Err(invalid_input(format!(
                    "{what}: basis is not orthonormal (<e{i}|e{j}> = {ip})"
                )));
            }
        }
    }
    Ok(dim)
}

impl Channel {
    /// Channel from Kraus operators `K_b : C^{d_in} → C^{d_out}`; checks
    /// `Σ K_b* K_b = I`.
    pub fn kraus(ops: Vec<CMatrix>) -> Result<Self> {
        let first = ops.first().ok_or_else(|| invalid_input("empty Kraus set"))?;
        let (d_out, d_in) = first.shape();
        if ops.iter().any(|k| k.shape() != (d_out, d_in)) {
            return Err(invalid_input("Kraus operators have mixed shapes"));
        }
        if ops.iter().any(|k| !linalg::is_finite(k)) {
            return Err(invalid_input("Kraus operator has non-finite entries"));
        }
        let sum = ops
            .iter()
            .fold(CMatrix::zeros(d_in, d_in), |acc, k| acc + k.adjoint() * k);
        let res = linalg::max_abs_diff(&sum, &CMatrix::identity(d_in, d_in));
        if res > tolerance::STRUCTURE {
            return Err(invalid_input(format!(
                "Kraus operators are not trace preserving (residual {res:.3e})"
            )));
        }
        Ok(Self {
            form: ChannelForm::Kraus(ops.clone()),
            d_in,
            d_out,
            kraus: ops,
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self::kraus(vec![CMatrix::identity(dim, dim)]).expect("identity is trace preserving")
    }

    /// Qubit map in the diagonal Bloch form. Complete positivity is not
    /// enforced here; use [`Channel::is_cptp`] to certify it.
    pub fn qubit_affine(params: QubitAffineParams) -> Self {
        let mut ch = Self {
            form: ChannelForm::QubitAffine(params),
            d_in: 2,
            d_out: 2,
            kraus: Vec::new(),
        };
        ch.kraus = ch.kraus_from_choi();
        ch
    }

    /// Depolarizing qubit channel `λ₁ = λ₂ = λ₃ = λ`, `t = 0`.
    pub fn depolarizing(lambda: f64) -> Self {
        Self::qubit_affine(QubitAffineParams::depolarizing(lambda))
    }

    pub fn form(&self) -> &ChannelForm {
        &self.form
    }

    pub fn d_in(&self) -> usize {
        self.d_in
    }

    pub fn d_out(&self) -> usize {
        self.d_out
    }

    pub fn kraus_operators(&self) -> &[CMatrix] {
        &self.kraus
    }

    pub fn is_qubit(&self) -> bool {
        self.d_in == 2 && self.d_out == 2
    }

    pub fn is_cq(&self) -> bool {
        matches!(self.form, ChannelForm::Cq { .. })
    }

    pub fn is_qc(&self) -> bool {
        matches!(self.form, ChannelForm::Qc { .. })
    }

    pub fn qubit_params(&self) -> Option<&QubitAffineParams> {
        match &self.form {
            ChannelForm::QubitAffine(p) => Some(p),
            _ => None,
        }
    }

    /// Applies the linear extension of the channel to any `d_in × d_in` matrix.
    pub fn apply_matrix(&self, m: &CMatrix) -> CMatrix {
        debug_assert_eq!(m.shape(), (self.d_in, self.d_in));
        match &self.form {
            ChannelForm::Cq { basis, outputs } => {
                let mut out = CMatrix::zeros(self.d_out, self.d_out);
                for (e, q) in basis.iter().zip(outputs) {
                    let w = (e.adjoint() * m * e)[(0, 0)];
                    out += q.as_matrix() * w;
                }
                out
            }
            ChannelForm::Qc { povm, basis } => {
                let mut out = CMatrix::zeros(self.d_out, self.d_out);
                for (x, e) in povm.iter().zip(basis) {
                    let w = (m * x).trace();
                    out += outer(e) * w;
                }
                out
            }
            ChannelForm::QubitAffine(p) => p.apply_matrix(m),
            ChannelForm::Kraus(_) | ChannelForm::Tensor(..) => self
                .kraus
                .iter()
                .fold(CMatrix::zeros(self.d_out, self.d_out), |acc, k| {
                    acc + k * m * k.adjoint()
                }),
        }
    }

    /// Applies the Hilbert–Schmidt adjoint `Φ*` to a `d_out × d_out` matrix.
    pub fn adjoint_matrix(&self, m: &CMatrix) -> CMatrix {
        debug_assert_eq!(m.shape(), (self.d_out, self.d_out));
        match &self.form {
            ChannelForm::Cq { basis, outputs } => {
                let mut out = CMatrix::zeros(self.d_in, self.d_in);
                for (e, q) in basis.iter().zip(outputs) {
                    let w = (q.as_matrix() * m).trace();
                    out += outer(e) * w;
                }
                out
            }
            ChannelForm::Qc { povm, basis } => {
                let mut out = CMatrix::zeros(self.d_in, self.d_in);
                for (x, e) in povm.iter().zip(basis) {
                    let w = (e.adjoint() * m * e)[(0, 0)];
                    out += x * w;
                }
                out
            }
            ChannelForm::QubitAffine(p) => p.adjoint_matrix(m),
            ChannelForm::Kraus(_) | ChannelForm::Tensor(..) => self
                .kraus
                .iter()
                .fold(CMatrix::zeros(self.d_in, self.d_in), |acc, k| {
                    acc + k.adjoint() * m * k
                }),
        }
    }

    /// `Φ(ρ)`.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.d_in {
            return Err(invalid_input(format!(
                "channel expects a {}-dimensional input, got {}",
                self.d_in,
                rho.dim()
            )));
        }
        Ok(DensityMatrix::from_matrix_unchecked(self.apply_matrix(rho)))
    }

    /// Unnormalized Choi matrix `J = Σ E_ij ⊗ Φ(E_ij)`.
    fn choi_unnormalized(&self) -> CMatrix {
        let (di, dout) = (self.d_in, self.d_out);
        let mut j = CMatrix::zeros(di * dout, di * dout);
        for a in 0..di {
            for b in 0..di {
                let img = self.apply_matrix(&matrix_unit(di, a, b));
                j.view_mut((a * dout, b * dout), (dout, dout)).copy_from(&img);
            }
        }
        j
    }

    /// Choi matrix `(I ⊗ Φ)(|Ω⟩⟨Ω|)` for the normalized maximally entangled
    /// vector; unit trace.
    pub fn choi(&self) -> HermitianMatrix {
        let j = self.choi_unnormalized() / c(self.d_in as f64, 0.0);
        HermitianMatrix::from_matrix_unchecked(j)
    }

    pub fn is_cptp(&self, tol: f64) -> CptpCertificate {
        let choi = self.choi();
        let min = choi.eigenvalues()[0];
        let marginal = partial_trace(&choi, (self.d_in, self.d_out), Keep::First)
            .expect("Choi matrix has product dimension")
            * c(self.d_in as f64, 0.0);
        let tp = linalg::max_abs_diff(&marginal, &CMatrix::identity(self.d_in, self.d_in));
        CptpCertificate {
            min_choi_eigenvalue: min,
            trace_preservation_residual: tp,
            tolerance: tol,
            pass: min >= -tol && tp <= tol,
        }
    }

    /// Kraus operators from the eigendecomposition of the Choi matrix; only
    /// eigenvalues above [`KRAUS_CUTOFF`] contribute.
    pub fn kraus_from_choi(&self) -> Vec<CMatrix> {
        let (di, dout) = (self.d_in, self.d_out);
        let e = eigh(&self.choi_unnormalized());
        let mut ops = Vec::new();
        for (k, &mu) in e.values.iter().enumerate().rev() {
            if mu <= KRAUS_CUTOFF {
                continue;
            }
            let s = mu.sqrt();
            let v = e.vectors.column(k);
            ops.push(CMatrix::from_fn(dout, di, |a, i| v[i * dout + a] * s));
        }
        ops
    }

    /// Bloch-space action `w ↦ T w + t` of a qubit channel.
    pub fn bloch_affine(&self) -> Option<(Matrix3<f64>, Vector3<f64>)> {
        if !self.is_qubit() {
            return None;
        }
        if let Some(p) = self.qubit_params() {
            return Some((
                Matrix3::from_diagonal(&Vector3::from(p.lambda)),
                Vector3::from(p.t),
            ));
        }
        let s = pauli();
        let img_id = self.apply_matrix(&CMatrix::identity(2, 2));
        let imgs: Vec<CMatrix> = s.iter().map(|sj| self.apply_matrix(sj)).collect();
        let t = Vector3::from_fn(|i, _| 0.5 * (&s[i] * &img_id).trace().re);
        let tm = Matrix3::from_fn(|i, j| 0.5 * (&s[i] * &imgs[j]).trace().re);
        Some((tm, t))
    }

    /// True when `Φ(I) = I` within `tol` elementwise.
    pub fn is_unital(&self, tol: f64) -> bool {
        self.d_in == self.d_out && {
            let id = CMatrix::identity(self.d_in, self.d_in);
            linalg::max_abs_diff(&self.apply_matrix(&id), &id) <= tol
        }
    }
}

/// CQ channel `Φ(ρ) = Σ ⟨e_b|ρ|e_b⟩ Q_b`, so that `Φ(|e_b⟩⟨e_b|) = Q_b`.
pub fn make_cq(basis: Vec<CVector>, outputs: Vec<DensityMatrix>) -> Result<Channel> {
    let d_in = check_orthonormal(&basis, "CQ input basis")?;
    if basis.len() != d_in {
        return Err(invalid_input(format!(
            "CQ channel needs a complete basis of C^{d_in}, got {} vectors",
            basis.len()
        )));
    }
    if outputs.len() != basis.len() {
        return Err(invalid_input("CQ channel needs one output state per basis vector"));
    }
    let d_out = outputs[0].dim();
    if outputs.iter().any(|q| q.dim() != d_out) {
        return Err(invalid_input("CQ output states have mixed dimensions"));
    }
    let mut kraus = Vec::new();
    for (e, q) in basis.iter().zip(&outputs) {
        let eq = eigh(q);
        for (k, &w) in eq.values.iter().enumerate() {
            if w > KRAUS_CUTOFF {
                let v = eq.vectors.column(k);
                kraus.push(v * e.adjoint() * c(w.sqrt(), 0.0));
            }
        }
    }
    Ok(Channel {
        form: ChannelForm::Cq { basis, outputs },
        d_in,
        d_out,
        kraus,
    })
}

/// QC channel `Φ(ρ) = Σ Tr(ρ X_b) |e_b⟩⟨e_b|`.
pub fn make_qc(povm: Vec<CMatrix>, basis: Vec<CVector>) -> Result<Channel> {
    let d_out = check_orthonormal(&basis, "QC output basis")?;
    if povm.len() != basis.len() {
        return Err(invalid_input("QC channel needs one basis vector per POVM element"));
    }
    let d_in = povm[0].nrows();
    let mut total = CMatrix::zeros(d_in, d_in);
    let mut kraus = Vec::new();
    for (x, e) in povm.iter().zip(&basis) {
        let h = HermitianMatrix::new(x.clone())?;
        if h.nrows() != d_in {
            return Err(invalid_input("POVM elements have mixed dimensions"));
        }
        let ex = eigh(&h);
        if ex.min_value() < -tolerance::PSD {
            return Err(invalid_input("POVM element is not positive semidefinite"));
        }
        for (k, &w) in ex.values.iter().enumerate() {
            if w > KRAUS_CUTOFF {
                let v = ex.vectors.column(k);
                kraus.push(e * v.adjoint() * c(w.sqrt(), 0.0));
            }
        }
        total += h.as_matrix();
    }
    let res = linalg::max_abs_diff(&total, &CMatrix::identity(d_in, d_in));
    if res > tolerance::STRUCTURE {
        return Err(invalid_input(format!(
            "POVM does not sum to the identity (residual {res:.3e})"
        )));
    }
    Ok(Channel {
        form: ChannelForm::Qc { povm, basis },
        d_in,
        d_out,
        kraus,
    })
}

/// Computational basis of `C^dim`.
pub fn computational_basis(dim: usize) -> Vec<CVector> {
    (0..dim).map(|i| basis_vector(dim, i)).collect()
}

/// Completely dephasing channel in the computational basis, as a QC channel.
pub fn dephasing(dim: usize) -> Channel {
    let povm = (0..dim).map(|i| matrix_unit(dim, i, i)).collect();
    make_qc(povm, computational_basis(dim)).expect("projective measurement is a POVM")
}

/// `Ω ⊗ Φ` with Kraus set `{A_i ⊗ B_j}`.
pub fn tensor_channels(omega: &Channel, phi: &Channel) -> Channel {
    let mut kraus = Vec::with_capacity(omega.kraus.len() * phi.kraus.len());
    for a in &omega.kraus {
        for b in &phi.kraus {
            kraus.push(tensor(a, b));
        }
    }
    Channel {
        form: ChannelForm::Tensor(Box::new(omega.clone()), Box::new(phi.clone())),
        d_in: omega.d_in * phi.d_in,
        d_out: omega.d_out * phi.d_out,
        kraus,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::linalg::max_abs_diff;
    use crate::matcore::{random_instance, RandomKind, SeededRng};

    fn state(m: CMatrix) -> DensityMatrix {
        DensityMatrix::new(m).unwrap()
    }

    #[test]
    fn apply_examples() {
        let mut rng = SeededRng::new(1, 0);
        let rho = state(random_instance(RandomKind::Density, 2, &mut rng));
        let id = Channel::identity(2);
        assert!(max_abs_diff(&id.apply(&rho).unwrap(), &rho) < 1e-15);

        let full = Channel::depolarizing(0.0);
        let out = full.apply(&rho).unwrap();
        assert!(max_abs_diff(&out, &DensityMatrix::maximally_mixed(2)) < 1e-15);

        // Bloch (0,0,1) ↦ (0,0,½)
        let half = Channel::depolarizing(0.5);
        let e0 = DensityMatrix::from_diagonal(&[1.0, 0.0]).unwrap();
        let out = half.apply(&e0).unwrap();
        assert!(max_abs_diff(&out, &linalg::real_diag(&[0.75, 0.25])) < 1e-15);

        let wrong = DensityMatrix::maximally_mixed(3);
        assert!(half.apply(&wrong).is_err());
    }

    #[test]
    fn choi_of_identity_is_bell_projector() {
        let choi = Channel::identity(2).choi();
        let v = CVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)])
            / c(2f64.sqrt(), 0.0);
        assert!(max_abs_diff(&choi, &outer(&v)) < 1e-15);
    }

    #[test]
    fn depolarizing_choi_spectrum() {
        for &lam in &[-1.0 / 3.0, -0.2, 0.0, 0.4, 1.0, -0.5, 1.2] {
            let ev = Channel::depolarizing(lam).choi().eigenvalues();
            let mut want = [(1.0 - lam) / 4.0; 4];
            want[3] = (1.0 + 3.0 * lam) / 4.0;
            want.sort_by(f64::total_cmp);
            for (a, b) in ev.iter().zip(want.iter()) {
                assert!((a - b).abs() < 1e-14, "λ={lam}: {ev:?} vs {want:?}");
            }
            let cp = ev[0] >= -1e-12;
            assert_eq!(cp, (-1.0 / 3.0 - 1e-12..=1.0 + 1e-12).contains(&lam));
        }
    }

    #[test]
    fn cq_choi_is_block_diagonal_and_psd() {
        let mut rng = SeededRng::new(2, 0);
        let q0 = state(random_instance(RandomKind::Density, 2, &mut rng));
        let q1 = state(random_instance(RandomKind::Density, 2, &mut rng));
        let ch = make_cq(computational_basis(2), vec![q0, q1]).unwrap();
        let choi = ch.choi();
        assert!(choi.eigenvalues()[0] >= -1e-14);
        let off = choi.view((0, 2), (2, 2)).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(off < 1e-15);
    }

    #[test]
    fn is_cptp_examples() {
        let tol = 1e-10;
        assert!(Channel::qubit_affine(QubitAffineParams::new([1.0; 3], [0.0; 3])).is_cptp(tol).pass);
        let cert = Channel::depolarizing(-0.5).is_cptp(tol);
        assert!(!cert.pass);
        assert!((cert.min_choi_eigenvalue - (1.0 - 1.5) / 4.0).abs() < 1e-14);
        let shifted = Channel::qubit_affine(QubitAffineParams::new([1.0, 0.0, 0.0], [0.0, 0.0, 1.0]));
        assert!(!shifted.is_cptp(tol).pass);
    }

    #[test]
    fn cq_examples() {
        let outs = vec![
            DensityMatrix::from_diagonal(&[1.0, 0.0]).unwrap(),
            DensityMatrix::from_diagonal(&[0.0, 1.0]).unwrap(),
        ];
        let ch = make_cq(computational_basis(2), outs).unwrap();
        let mut rng = SeededRng::new(4, 0);
        let rho = state(random_instance(RandomKind::Density, 2, &mut rng));
        let out = ch.apply(&rho).unwrap();
        let mut want = rho.as_matrix().clone();
        want[(0, 1)] = c(0.0, 0.0);
        want[(1, 0)] = c(0.0, 0.0);
        assert!(max_abs_diff(&out, &want) < 1e-15);

        let sigma = state(random_instance(RandomKind::Density, 3, &mut rng));
        let u = random_instance(RandomKind::Unitary, 2, &mut rng);
        let basis: Vec<CVector> = (0..2).map(|j| u.column(j).into_owned()).collect();
        let constant = make_cq(basis.clone(), vec![sigma.clone(), sigma.clone()]).unwrap();
        assert!(max_abs_diff(&constant.apply(&rho).unwrap(), &sigma) < 1e-14);

        let q0 = state(random_instance(RandomKind::Density, 3, &mut rng));
        let q1 = state(random_instance(RandomKind::Density, 3, &mut rng));
        let ch = make_cq(basis.clone(), vec![q0.clone(), q1.clone()]).unwrap();
        for (e, q) in basis.iter().zip([&q0, &q1]) {
            let xb = DensityMatrix::from_pure(e).unwrap();
            assert!(max_abs_diff(&ch.apply(&xb).unwrap(), q) < 1e-14);
        }

        let skew = vec![basis_vector(2, 0), CVector::from_vec(vec![c(0.6, 0.0), c(0.8, 0.0)])];
        assert!(make_cq(skew, vec![q0.clone(), q1]).is_err());
    }

    #[test]
    fn qc_examples() {
        let deph = dephasing(2);
        let mut rng = SeededRng::new(6, 0);
        let rho = state(random_instance(RandomKind::Density, 2, &mut rng));
        let out = deph.apply(&rho).unwrap();
        assert!(out[(0, 1)].norm() <= 1e-12 && out[(1, 0)].norm() <= 1e-12);
        assert!((out[(0, 0)] - rho[(0, 0)]).norm() < 1e-15);

        let trivial = make_qc(vec![CMatrix::identity(3, 3)], vec![basis_vector(1, 0)]).unwrap();
        let r3 = state(random_instance(RandomKind::Density, 3, &mut rng));
        assert!((trivial.apply(&r3).unwrap()[(0, 0)].re - 1.0).abs() < 1e-14);

        let bad = vec![linalg::real_diag(&[1.0, 0.0]), linalg::real_diag(&[0.0, 0.5])];
        assert!(make_qc(bad, computational_basis(2)).is_err());
    }

    #[test]
    fn tensor_channel_examples() {
        let ii = tensor_channels(&Channel::identity(2), &Channel::identity(2));
        let mut rng = SeededRng::new(8, 0);
        let r4 = state(random_instance(RandomKind::Density, 4, &mut rng));
        assert!(max_abs_diff(&ii.apply(&r4).unwrap(), &r4) < 1e-15);

        let omega = random::random_kraus_channel(3, 2, 2, &mut rng);
        let phi = Channel::qubit_affine(QubitAffineParams::new([0.5, 0.4, 0.2], [0.1, 0.0, 0.1]));
        let both = tensor_channels(&omega, &phi);
        let rho = state(random_instance(RandomKind::Density, 3, &mut rng));
        let sigma = state(random_instance(RandomKind::Density, 2, &mut rng));
        let lhs = both.apply(&state(tensor(&rho, &sigma))).unwrap();
        let rhs = tensor(&omega.apply(&rho).unwrap(), &phi.apply(&sigma).unwrap());
        assert!(max_abs_diff(&lhs, &rhs) < 1e-12);
        assert!(both.choi().eigenvalues()[0] >= -1e-12);
    }

    #[test]
    fn adjoint_matches_hilbert_schmidt_pairing() {
        let mut rng = SeededRng::new(10, 0);
        let channels = vec![
            random::random_kraus_channel(2, 3, 2, &mut rng),
            random::random_cq(2, 3, &mut rng),
            random::random_qc(3, 2, &mut rng),
            Channel::qubit_affine(QubitAffineParams::new([0.6, -0.3, 0.2], [0.1, 0.2, -0.1])),
        ];
        for ch in channels {
            let a = random_instance(RandomKind::Psd, ch.d_in(), &mut rng);
            let b = random_instance(RandomKind::Psd, ch.d_out(), &mut rng);
            let lhs = (ch.apply_matrix(&a) * &b).trace();
            let rhs = (&a * ch.adjoint_matrix(&b)).trace();
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn kraus_conversion_of_affine_map_agrees() {
        let mut rng = SeededRng::new(12, 0);
        let p = QubitAffineParams::new([0.5, 0.3, 0.6], [0.0, 0.0, 0.3]);
        let ch = Channel::qubit_affine(p);
        assert!(ch.is_cptp(1e-10).pass);
        let via_kraus = Channel::kraus(ch.kraus_from_choi()).unwrap();
        for _ in 0..10 {
            let rho = state(random_instance(RandomKind::Density, 2, &mut rng));
            let a = ch.apply(&rho).unwrap();
            let b = via_kraus.apply(&rho).unwrap();
            assert!(max_abs_diff(&a, &b) < 1e-10);
        }
    }

    #[test]
    fn unital_iff_no_translation() {
        let unital = Channel::qubit_affine(QubitAffineParams::new([0.4, -0.2, 0.1], [0.0; 3]));
        let half = DensityMatrix::maximally_mixed(2);
        assert!(max_abs_diff(&unital.apply(&half).unwrap(), &half) < 1e-12);
        let moved = Channel::qubit_affine(QubitAffineParams::new([0.4, 0.2, 0.1], [0.0, 0.0, 0.3]));
        assert!(max_abs_diff(&moved.apply(&half).unwrap(), &half) > 1e-12);
    }
}
