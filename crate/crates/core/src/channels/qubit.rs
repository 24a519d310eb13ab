// SPDX-License-Identifier: Apache-2.0

//! Qubit maps in the diagonal Bloch form `w ↦ (λ₁w₁ + t₁, λ₂w₂ + t₂, λ₃w₃ + t₃)`.

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::matcore::linalg::pauli;
use crate::matcore::{c, CMatrix};
use crate::tolerance;

use super::Channel;

/// Compression `λ` and translation `t` of the Bloch ball.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QubitAffineParams {
    pub lambda: [f64; 3],
    pub t: [f64; 3],
}

impl QubitAffineParams {
    pub fn new(lambda: [f64; 3], t: [f64; 3]) -> Self {
        Self { lambda, t }
    }

    pub fn identity() -> Self {
        Self::new([1.0; 3], [0.0; 3])
    }

    pub fn depolarizing(lambda: f64) -> Self {
        Self::new([lambda; 3], [0.0; 3])
    }

    pub fn is_unital(&self) -> bool {
        self.t.iter().all(|t| t.abs() <= tolerance::HERMITIAN)
    }

    /// True when all three `λ` agree and `t = 0`.
    pub fn is_depolarizing(&self) -> bool {
        self.is_unital()
            && (self.lambda[0] - self.lambda[1]).abs() <= tolerance::AXIS_TIE
            && (self.lambda[1] - self.lambda[2]).abs() <= tolerance::AXIS_TIE
    }

    /// `|λᵢ| + |tᵢ| ≤ 1` on every axis: necessary for the image of the Bloch
    /// ball to stay inside it.
    pub fn within_bloch_ball(&self) -> bool {
        (0..3).all(|i| self.lambda[i].abs() + self.t[i].abs() <= 1.0 + tolerance::AXIS_TIE)
    }

    pub fn bloch_map(&self, w: [f64; 3]) -> [f64; 3] {
        [
            self.lambda[0] * w[0] + self.t[0],
            self.lambda[1] * w[1] + self.t[1],
            self.lambda[2] * w[2] + self.t[2],
        ]
    }

    /// Linear extension to arbitrary 2×2 matrices through Pauli coefficients.
    pub(crate) fn apply_matrix(&self, m: &CMatrix) -> CMatrix {
        let s = pauli();
        let a0 = m.trace();
        let mut out = CMatrix::identity(2, 2) * a0;
        for i in 0..3 {
            let ai = (m * &s[i]).trace();
            out += &s[i] * (ai * self.lambda[i] + a0 * self.t[i]);
        }
        out * c(0.5, 0.0)
    }

    /// Hilbert–Schmidt adjoint: `B ↦ ½((b₀ + t·b) I + Σ λᵢ bᵢ σᵢ)`.
    pub(crate) fn adjoint_matrix(&self, m: &CMatrix) -> CMatrix {
        let s = pauli();
        let b0 = m.trace();
        let b: Vec<_> = s.iter().map(|si| (m * si).trace()).collect();
        let shift = b0 + b[0] * self.t[0] + b[1] * self.t[1] + b[2] * self.t[2];
        let mut out = CMatrix::identity(2, 2) * shift;
        for i in 0..3 {
            out += &s[i] * (b[i] * self.lambda[i]);
        }
        out * c(0.5, 0.0)
    }

    /// Diagonal Bloch form of any qubit channel: `T = O₁ diag(λ) O₂ᵀ` with
    /// `O₁, O₂ ∈ SO(3)`, which are unitary conjugations of range and domain.
    pub fn normal_form(channel: &Channel) -> Option<Self> {
        let (tm, t) = channel.bloch_affine()?;
        let svd = tm.svd(true, true);
        let mut u = svd.u?;
        let mut vt = svd.v_t?;
        let mut s = svd.singular_values;
        if u.determinant() < 0.0 {
            u.column_mut(2).scale_mut(-1.0);
            s[2] = -s[2];
        }
        if vt.determinant() < 0.0 {
            vt.row_mut(2).scale_mut(-1.0);
            s[2] = -s[2];
        }
        let shifted: Vector3<f64> = u.transpose() * t;
        Some(Self::new([s[0], s[1], s[2]], [shifted[0], shifted[1], shifted[2]]))
    }

    /// `(T, t)` of the affine Bloch map.
    pub fn bloch_matrices(&self) -> (Matrix3<f64>, Vector3<f64>) {
        (
            Matrix3::from_diagonal(&Vector3::from(self.lambda)),
            Vector3::from(self.t),
        )
    }

    /// `t₁ ≥ 0, t₂ ≥ 0, λ₁ ≥ λ₂ ≥ 0`.
    pub fn is_canonical(&self) -> bool {
        self.t[0] >= 0.0 && self.t[1] >= 0.0 && self.lambda[0] >= self.lambda[1] && self.lambda[1] >= 0.0
    }

    /// Canonical with additionally `t₂ = 0`: the form the block-expansion
    /// bound works with.
    pub fn is_reduced_canonical(&self) -> bool {
        self.is_canonical() && self.t[1].abs() <= tolerance::AXIS_TIE
    }
}

fn tied(a: f64, b: f64) -> bool {
    (a.abs() - b.abs()).abs() <= tolerance::AXIS_TIE
}

/// If `|λᵢ| < |λⱼ| < |λₖ|` then `tᵢ tⱼ = 0`; no restriction once two axes
/// have equal length.
pub fn satisfies_translation_condition(params: &QubitAffineParams) -> bool {
    let l = params.lambda;
    if tied(l[0], l[1]) || tied(l[1], l[2]) || tied(l[0], l[2]) {
        return true;
    }
    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| l[a].abs().total_cmp(&l[b].abs()));
    (params.t[order[0]] * params.t[order[1]]).abs() <= tolerance::AXIS_TIE
}

/// One symmetry applied by [`canonicalize_qubit`]. None of them changes the
/// maximal output purity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CanonicalStep {
    /// New axis `k` is old axis `perm[k]`, for both `λ` and `t`.
    Permute([usize; 3]),
    /// Sign reversal of two compressions (σ conjugation on the input).
    FlipLambdas(usize, usize),
    /// Sign reversal of two translations (σ conjugation on input and output).
    FlipTranslations(usize, usize),
    /// Rotation of `(t₁, t₂)` by `-angle` about the third axis, available when
    /// `λ₁ = λ₂`.
    RotateTranslation { angle: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Canonicalization {
    pub params: QubitAffineParams,
    pub steps: Vec<CanonicalStep>,
    /// The `t₂ = 0` form was reached.
    pub reduced: bool,
    /// Two `|λ|` differ by less than `1e-9` without being tied; they were
    /// treated as unequal.
    pub near_tie: bool,
}

struct Builder {
    p: QubitAffineParams,
    steps: Vec<CanonicalStep>,
}

impl Builder {
    fn permute(&mut self, perm: [usize; 3]) {
        if perm == [0, 1, 2] {
            return;
        }
        let old = self.p;
        for k in 0..3 {
            self.p.lambda[k] = old.lambda[perm[k]];
            self.p.t[k] = old.t[perm[k]];
        }
        self.steps.push(CanonicalStep::Permute(perm));
    }

    fn flip_lambdas(&mut self, i: usize, j: usize) {
        self.p.lambda[i] = -self.p.lambda[i];
        self.p.lambda[j] = -self.p.lambda[j];
        self.steps.push(CanonicalStep::FlipLambdas(i, j));
    }

    fn flip_translations(&mut self, i: usize, j: usize) {
        self.p.t[i] = -self.p.t[i];
        self.p.t[j] = -self.p.t[j];
        self.steps.push(CanonicalStep::FlipTranslations(i, j));
    }

    fn fix_lambda_signs(&mut self) {
        let l = self.p.lambda;
        if l[0] < 0.0 && l[1] < 0.0 {
            self.flip_lambdas(0, 1);
        } else if l[0] < 0.0 {
            self.flip_lambdas(0, 2);
        } else if l[1] < 0.0 {
            self.flip_lambdas(1, 2);
        }
    }

    fn fix_translation_signs(&mut self) {
        let t = self.p.t;
        if t[0] < 0.0 && t[1] < 0.0 {
            self.flip_translations(0, 1);
        } else if t[0] < 0.0 {
            self.flip_translations(0, 2);
        } else if t[1] < 0.0 {
            self.flip_translations(1, 2);
        }
    }

    fn rotate_translation(&mut self) {
        let [t0, t1, _] = self.p.t;
        if t1 == 0.0 {
            return;
        }
        let angle = t1.atan2(t0);
        self.p.t[0] = t0.hypot(t1);
        self.p.t[1] = 0.0;
        self.steps.push(CanonicalStep::RotateTranslation { angle });
    }
}

/// Brings qubit parameters to `t₁ ≥ 0, t₂ ≥ 0, λ₁ ≥ λ₂ ≥ 0` with axis
/// permutations and pairwise sign reversals; when the translation condition
/// holds, additionally reaches `t₂ = 0`.
///
/// Axes are first ordered by non-increasing `|λ|` (stable among ties).
/// Already canonical input is returned untouched.
pub fn canonicalize_qubit(params: &QubitAffineParams) -> Canonicalization {
    let condition = satisfies_translation_condition(params);
    let l = params.lambda;
    let near_tie = (0..3).any(|i| {
        (i + 1..3).any(|j| {
            let d = (l[i].abs() - l[j].abs()).abs();
            d > tolerance::AXIS_TIE && d < 1e-9
        })
    });
    let done = if condition {
        params.is_reduced_canonical()
    } else {
        params.is_canonical()
    };
    if done {
        return Canonicalization {
            params: *params,
            steps: Vec::new(),
            reduced: condition,
            near_tie,
        };
    }

    let mut b = Builder {
        p: *params,
        steps: Vec::new(),
    };
    let mut order = [0usize, 1, 2];
    order.sort_by(|&x, &y| l[y].abs().total_cmp(&l[x].abs()));
    b.permute(order);

    let mut rotate = false;
    if condition {
        let s = b.p.lambda;
        if tied(s[0], s[1]) {
            rotate = true;
        } else if tied(s[1], s[2]) {
            b.permute([1, 2, 0]);
            rotate = true;
        } else if tied(s[0], s[2]) {
            // unreachable after sorting unless all three tie
            rotate = true;
        } else if b.p.t[1].abs() > tolerance::AXIS_TIE {
            // distinct axes: t₂t₃ = 0, so the translation lives off the
            // second axis once the two smaller axes are swapped
            b.permute([0, 2, 1]);
        }
    }
    b.fix_lambda_signs();
    if rotate {
        b.rotate_translation();
    }
    b.fix_translation_signs();
    if condition && b.p.t[1].abs() <= tolerance::AXIS_TIE {
        b.p.t[1] = 0.0;
    }
    Canonicalization {
        params: b.p,
        steps: b.steps,
        reduced: condition,
        near_tie,
    }
}
