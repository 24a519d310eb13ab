// SPDX-License-Identifier: Apache-2.0

//! Block matrices `M = [[X, Y], [Y*, Z]]` on `C² ⊗ C^K` and the
//! intermediates of the integer-`p` expansion bound.

use serde::Serialize;

use crate::channels::{Channel, QubitAffineParams};
use crate::error::{invalid_input, invalid_param, Result};
use crate::matcore::linalg::{self, hermitize, psd_sqrt};
use crate::matcore::random::gaussian_matrix;
use crate::matcore::{c, eigvalsh, haar_unitary, random_instance, schatten_norm, CMatrix, RandomKind, SeededRng};
use crate::tolerance;

use super::report::CheckReport;

/// Largest exponent accepted by [`block_decompose`].
pub const MAX_EXPANSION_P: u32 = 4;

/// Splits a `2K × 2K` matrix into its `K × K` blocks `(X, Y, Z)`.
pub fn split_blocks(m: &CMatrix) -> Result<(CMatrix, CMatrix, CMatrix)> {
    if !m.is_square() || m.nrows() % 2 != 0 || m.nrows() == 0 {
        return Err(invalid_input(format!(
            "expected a 2K × 2K matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    let k = m.nrows() / 2;
    Ok((
        m.view((0, 0), (k, k)).into_owned(),
        m.view((0, k), (k, k)).into_owned(),
        m.view((k, k), (k, k)).into_owned(),
    ))
}

/// `[[X, Y], [Y*, Z]]`.
pub fn assemble_blocks(x: &CMatrix, y: &CMatrix, z: &CMatrix) -> CMatrix {
    let k = x.nrows();
    let mut m = CMatrix::zeros(2 * k, 2 * k);
    m.view_mut((0, 0), (k, k)).copy_from(x);
    m.view_mut((0, k), (k, k)).copy_from(y);
    m.view_mut((k, 0), (k, k)).copy_from(&y.adjoint());
    m.view_mut((k, k), (k, k)).copy_from(z);
    m
}

/// `(I ⊗ Φ)(M)`: the channel acts on the block index of `M`, which is the
/// slow (first) tensor factor. Output blocks are `Σ_ab Φ(E_ab)_{ij} M_ab`.
pub fn half_noisy(phi: &Channel, m: &CMatrix) -> Result<CMatrix> {
    let d = phi.d_in();
    if !m.is_square() || m.nrows() % d != 0 || m.nrows() == 0 {
        return Err(invalid_input(format!(
            "matrix of size {} is not a {d}-block matrix",
            m.nrows()
        )));
    }
    let k = m.nrows() / d;
    let e = phi.d_out();
    let mut out = CMatrix::zeros(e * k, e * k);
    for a in 0..d {
        for b in 0..d {
            let img = phi.apply_matrix(&linalg::matrix_unit(d, a, b));
            let block = m.view((a * k, b * k), (k, k));
            for i in 0..e {
                for j in 0..e {
                    let w = img[(i, j)];
                    if w.norm() == 0.0 {
                        continue;
                    }
                    let mut target = out.view_mut((i * k, j * k), (k, k));
                    target += block * w;
                }
            }
        }
    }
    Ok(out)
}

/// Contraction sampling regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ContractionKind {
    /// Gaussian matrix rescaled to operator norm `u ~ U[0, 1]`.
    Interior,
    /// Haar unitary.
    Boundary,
}

/// Random contraction of the given kind.
pub fn random_contraction(k: usize, kind: ContractionKind, rng: &mut SeededRng) -> CMatrix {
    match kind {
        ContractionKind::Boundary => haar_unitary(k, rng),
        ContractionKind::Interior => {
            let g = gaussian_matrix(k, k, rng);
            let top = g.clone().svd(false, false).singular_values.max();
            let u = rng.uniform();
            if top > 0.0 {
                g * c(u / top, 0.0)
            } else {
                g
            }
        }
    }
}

/// `[[X, √X R √Z], [·, Z]]`, which is PSD for PSD `X, Z` and any contraction
/// `R`.
pub fn block_psd_from(x: &CMatrix, z: &CMatrix, r: &CMatrix) -> CMatrix {
    let y = psd_sqrt(x) * r * psd_sqrt(z);
    hermitize(&assemble_blocks(x, &y, z))
}

/// Random unit-trace PSD `2K × 2K` matrix; interior and boundary
/// contractions are drawn with equal probability.
pub fn random_block_psd(k: usize, rng: &mut SeededRng) -> CMatrix {
    let kind = if rng.uniform() < 0.5 {
        ContractionKind::Interior
    } else {
        ContractionKind::Boundary
    };
    random_block_psd_with(k, kind, rng)
}

pub fn random_block_psd_with(k: usize, kind: ContractionKind, rng: &mut SeededRng) -> CMatrix {
    let k = k.max(1);
    let x = random_instance(RandomKind::Psd, k, rng);
    let z = random_instance(RandomKind::Psd, k, rng);
    let r = random_contraction(k, kind, rng);
    let m = block_psd_from(&x, &z, &r);
    let tr = m.trace().re;
    m / c(tr, 0.0)
}

/// Intermediates of the block expansion for a qubit map in the form
/// `t₂ = 0, t₁ ≥ 0, λ₁ ≥ λ₂ ≥ 0`.
#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    pub x: CMatrix,
    pub y: CMatrix,
    pub z: CMatrix,
    /// `(X + Z)/2`.
    pub w: CMatrix,
    /// Hermitian parts with `Y = Y₁ − i Y₂`.
    pub y1: CMatrix,
    pub y2: CMatrix,
    /// `(c₊₊, c₋₊, c₊₋, c₋₋)`.
    pub c: [f64; 4],
    /// `(R₁₁, R₁₂, R₂₁, R₂₂)`, the blocks of `(I ⊗ Φ)(M)`.
    pub r_blocks: [CMatrix; 4],
    /// `[[x′, y′], [y′, z′]]` with `x′ = ‖X‖_p, y′ = ‖Y‖_p, z′ = ‖Z‖_p`.
    pub m_prime: [[f64; 2]; 2],
    /// `(r₁₁, r₁₂, r₂₂)`.
    pub r: [f64; 3],
    pub p: u32,
}

impl BlockDecomposition {
    /// Computes all intermediates without any checks on `Φ`.
    pub fn compute(m: &CMatrix, params: &QubitAffineParams, p: u32) -> Result<Self> {
        let (x, y, z) = split_blocks(m)?;
        let [l1, l2, l3] = params.lambda;
        let [t1, t2, t3] = params.t;
        let half = c(0.5, 0.0);
        let i = c(0.0, 1.0);
        let w = (&x + &z) * half;
        let y1 = (&y + y.adjoint()) * half;
        let y2 = (&y - y.adjoint()) * (i * half);
        let cpp = (1.0 + l3 + t3) / 2.0;
        let cmp = (1.0 - l3 + t3) / 2.0;
        let cpm = (1.0 + l3 - t3) / 2.0;
        let cmm = (1.0 - l3 - t3) / 2.0;
        let re = |v: f64| c(v, 0.0);
        let r11 = &x * re(cpp) + &z * re(cmp);
        let r22 = &x * re(cmm) + &z * re(cpm);
        let s1 = &w * re(t1) + &y1 * re(l1);
        let s2 = &w * re(t2) + &y2 * re(l2);
        let r12 = &s1 - &s2 * i;
        let r21 = &s1 + &s2 * i;
        let pf = p as f64;
        let xn = schatten_norm(&x, pf)?;
        let zn = schatten_norm(&z, pf)?;
        let yn = schatten_norm(&y, pf)?;
        Ok(Self {
            r: [
                cpp * xn + cmp * zn,
                t1 * (xn + zn) / 2.0 + l1 * yn,
                cmm * xn + cpm * zn,
            ],
            m_prime: [[xn, yn], [yn, zn]],
            c: [cpp, cmp, cpm, cmm],
            r_blocks: [r11, r12, r21, r22],
            x,
            y,
            z,
            w,
            y1,
            y2,
            p,
        })
    }

    /// `[[R₁₁, R₁₂], [R₂₁, R₂₂]]`.
    pub fn reassemble_output(&self) -> CMatrix {
        let k = self.x.nrows();
        let mut m = CMatrix::zeros(2 * k, 2 * k);
        let [a, b, cc, d] = &self.r_blocks;
        m.view_mut((0, 0), (k, k)).copy_from(a);
        m.view_mut((0, k), (k, k)).copy_from(b);
        m.view_mut((k, 0), (k, k)).copy_from(cc);
        m.view_mut((k, k), (k, k)).copy_from(d);
        m
    }

    /// `Tr[E_{i₁j₁}⋯E_{i_p j_p}] · Tr[R_{i₁j₁}⋯R_{i_p j_p}]` summed over all
    /// `4^p` index tuples.
    pub fn trace_expansion(&self) -> f64 {
        expansion(&self.r_blocks, self.p)
    }

    /// The same expansion with the scalars `r_ij` in place of the blocks.
    pub fn scalar_expansion(&self) -> f64 {
        let [r11, r12, r22] = self.r;
        let scalars = [r11, r12, r12, r22].map(|v| CMatrix::from_element(1, 1, c(v, 0.0)));
        expansion(&scalars, self.p)
    }
}

/// Trace of a product of 2×2 matrix units: 1 when the indices chain
/// cyclically, else 0.
fn unit_product_trace(idx: &[(usize, usize)]) -> f64 {
    let n = idx.len();
    let chained = (0..n).all(|k| idx[k].1 == idx[(k + 1) % n].0);
    if chained {
        1.0
    } else {
        0.0
    }
}

fn expansion(blocks: &[CMatrix; 4], p: u32) -> f64 {
    let p = p as usize;
    let k = blocks[0].nrows();
    let mut total = c(0.0, 0.0);
    let mut idx = vec![(0usize, 0usize); p];
    for code in 0..4usize.pow(p as u32) {
        let mut rest = code;
        for slot in idx.iter_mut() {
            let q = rest % 4;
            rest /= 4;
            *slot = (q / 2, q % 2);
        }
        let coeff = unit_product_trace(&idx);
        if coeff == 0.0 {
            continue;
        }
        let mut prod = CMatrix::identity(k, k);
        for &(i, j) in &idx {
            prod *= &blocks[2 * i + j];
        }
        total += prod.trace() * coeff;
    }
    total.re
}

fn trace_abs_power(m: &CMatrix, p: f64) -> f64 {
    eigvalsh(&hermitize(m)).iter().map(|e| e.abs().powf(p)).sum()
}

/// Computes the decomposition and its sub-checks:
/// `block-structure` (the `R` blocks are the blocks of `(I ⊗ Φ)(M)`),
/// `block-r11`, `block-r22`, `block-r12` (`‖R_ij‖_p ≤ r_ij`),
/// `block-claim` (`Tr|(I⊗Φ)(M)|^p ≤ Tr|Φ(m′)|^p`) and `block-expansion`
/// (the index expansion reproduces `Tr|(I⊗Φ)(M)|^p`).
pub fn block_decompose(
    m: &CMatrix,
    phi: &Channel,
    p: u32,
) -> Result<(BlockDecomposition, Vec<CheckReport>)> {
    let params = match phi.qubit_params() {
        Some(q) if q.is_reduced_canonical() => *q,
        _ => {
            return Err(invalid_param(
                "channel must be qubit parameters with t₂ = 0, t₁ ≥ 0, λ₁ ≥ λ₂ ≥ 0; apply canonicalize_qubit first",
            ))
        }
    };
    if p == 0 || p > MAX_EXPANSION_P {
        return Err(invalid_param(format!(
            "expansion exponent {p} must lie in 1..={MAX_EXPANSION_P}"
        )));
    }
    check_psd(m)?;
    let dec = BlockDecomposition::compute(m, &params, p)?;
    let pf = p as f64;
    let out = half_noisy(phi, m)?;
    let mut reports = Vec::with_capacity(6);

    let structure = linalg::max_abs_diff(&dec.reassemble_output(), &out);
    reports.push(CheckReport::equal("block-structure", structure, 0.0, tolerance::STRUCTURE));

    let names = ["block-r11", "block-r12", "block-r22"];
    let norms = [
        schatten_norm(&dec.r_blocks[0], pf)?,
        schatten_norm(&dec.r_blocks[1], pf)?,
        schatten_norm(&dec.r_blocks[3], pf)?,
    ];
    for ((name, n), r) in names.iter().zip(norms).zip(dec.r) {
        reports.push(CheckReport::at_most(name, n, r, tolerance::PROVED_INEQUALITY));
    }

    let lhs = trace_abs_power(&out, pf);
    let mp = CMatrix::from_fn(2, 2, |i, j| c(dec.m_prime[i][j], 0.0));
    let phi_mp = phi.apply_matrix(&mp);
    let rhs = trace_abs_power(&phi_mp, pf);
    reports.push(
        CheckReport::at_most("block-claim", lhs, rhs, tolerance::PROVED_INEQUALITY)
            .with("scalar_expansion", dec.scalar_expansion())
            .with("y_prime_bound", (dec.m_prime[0][0] * dec.m_prime[1][1]).sqrt() - dec.m_prime[0][1]),
    );

    let expanded = dec.trace_expansion();
    reports.push(
        CheckReport::equal("block-expansion", expanded, lhs, tolerance::STRUCTURE).with("p", p),
    );
    Ok((dec, reports))
}

/// Hermitian and PSD within the library tolerances.
pub(crate) fn check_psd(m: &CMatrix) -> Result<()> {
    if !m.is_square() || !linalg::is_finite(m) {
        return Err(invalid_input("matrix must be square and finite"));
    }
    if linalg::hermiticity_residual(m) > tolerance::HERMITIAN.max(1e-12 * m.norm()) {
        return Err(invalid_input("matrix is not Hermitian"));
    }
    let min = eigvalsh(&hermitize(m)).first().copied().unwrap_or(0.0);
    if min < -tolerance::PSD {
        return Err(invalid_input(format!("matrix is not PSD (eigenvalue {min:.3e})")));
    }
    Ok(())
}
