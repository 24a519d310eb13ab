// SPDX-License-Identifier: Apache-2.0

//! Seeded random channels for sweeps and tests.

use crate::matcore::random::random_isometry;
use crate::matcore::{random_instance, CMatrix, CVector, DensityMatrix, RandomKind, SeededRng};

use super::{make_cq, make_qc, Channel, QubitAffineParams};

/// Stinespring-style random channel: a Haar isometry `C^{d_in} → C^{d_out r}`
/// cut into `r` Kraus blocks.
pub fn random_kraus_channel(d_in: usize, d_out: usize, rank: usize, rng: &mut SeededRng) -> Channel {
    let rank = rank.max(1);
    let rows = d_out * rank;
    let v = if rows >= d_in {
        random_isometry(rows, d_in, rng)
    } else {
        // not enough room for an isometry: pad with an extra Kraus block
        let extra = d_in.div_ceil(d_out);
        return random_kraus_channel(d_in, d_out, extra, rng);
    };
    let ops = (0..rank)
        .map(|k| v.rows(k * d_out, d_out).into_owned())
        .collect();
    Channel::kraus(ops).expect("isometry blocks form a trace-preserving Kraus set")
}

/// Random qubit channel of Kraus rank 1–4.
pub fn random_qubit_channel(rng: &mut SeededRng) -> Channel {
    let rank = 1 + (rng.uniform() * 4.0) as usize;
    random_kraus_channel(2, 2, rank.min(4), rng)
}

fn random_basis(dim: usize, rng: &mut SeededRng) -> Vec<CVector> {
    let u = random_instance(RandomKind::Unitary, dim, rng);
    (0..dim).map(|j| u.column(j).into_owned()).collect()
}

/// CQ channel with a Haar-random input basis and random output states.
pub fn random_cq(d_in: usize, d_out: usize, rng: &mut SeededRng) -> Channel {
    let basis = random_basis(d_in, rng);
    let outputs = (0..d_in)
        .map(|_| {
            let kind = if rng.uniform() < 0.25 { RandomKind::Pure } else { RandomKind::Density };
            DensityMatrix::from_matrix_unchecked(random_instance(kind, d_out, rng))
        })
        .collect();
    make_cq(basis, outputs).expect("random basis is orthonormal")
}

/// QC channel with `outcomes` results, a random POVM on `C^{d_in}` and a
/// random output basis of `C^{outcomes}`.
pub fn random_qc(d_in: usize, outcomes: usize, rng: &mut SeededRng) -> Channel {
    let rank = 1 + (rng.uniform() * 2.0) as usize;
    let rows = (outcomes * rank).max(d_in);
    let rank = rows.div_ceil(outcomes);
    let v = random_isometry(outcomes * rank, d_in, rng);
    let povm: Vec<CMatrix> = (0..outcomes)
        .map(|b| {
            let block = v.rows(b * rank, rank);
            block.adjoint() * block
        })
        .collect();
    make_qc(povm, random_basis(outcomes, rng)).expect("isometry blocks form a POVM")
}

/// Unital qubit channel from a random Pauli mixture, optionally with random
/// axis signs applied through unitary conjugation.
pub fn random_unital_params(rng: &mut SeededRng) -> QubitAffineParams {
    let mut w: [f64; 4] = [0.0; 4];
    for x in w.iter_mut() {
        *x = -rng.uniform().max(1e-300).ln();
    }
    let s: f64 = w.iter().sum();
    let p = w.map(|x| x / s);
    QubitAffineParams::new(
        [
            p[0] + p[1] - p[2] - p[3],
            p[0] - p[1] + p[2] - p[3],
            p[0] - p[1] - p[2] + p[3],
        ],
        [0.0; 3],
    )
}

/// Qubit parameters translated along one axis only, rejection-sampled until
/// the Choi test passes.
pub fn random_single_translation_params(rng: &mut SeededRng) -> QubitAffineParams {
    loop {
        let mut p = random_unital_params(rng);
        let axis = (rng.uniform() * 3.0) as usize % 3;
        let room = 1.0 - p.lambda[axis].abs();
        let sign = if rng.uniform() < 0.5 { -1.0 } else { 1.0 };
        p.t[axis] = sign * room * rng.uniform();
        if Channel::qubit_affine(p).is_cptp(1e-12).pass {
            return p;
        }
    }
}

/// Mix of unital and single-axis-translation maps; all satisfy the
/// translation condition.
pub fn random_translation_condition_params(rng: &mut SeededRng) -> QubitAffineParams {
    if rng.uniform() < 0.5 {
        random_unital_params(rng)
    } else {
        random_single_translation_params(rng)
    }
}
