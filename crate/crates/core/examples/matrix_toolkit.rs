// SPDX-License-Identifier: Apache-2.0

//! Schatten norms, entropies and partial traces on small matrices.

use qmult::matcore::{
    norm_derivative_at_one, partial_trace, relative_entropy, schatten_norm, tensor, von_neumann_entropy,
    DensityMatrix, Keep, SeededRng,
};
use qmult::matcore::{random_instance, RandomKind};

fn main() -> qmult::Result<()> {
    let mut rng = SeededRng::new(7, 0);
    let rho = DensityMatrix::new(random_instance(RandomKind::Density, 2, &mut rng))?;
    let sigma = DensityMatrix::new(random_instance(RandomKind::Density, 3, &mut rng))?;

    for p in [1.0, 1.5, 2.0, 4.0] {
        println!("||rho||_{p} = {:.10}", schatten_norm(&rho, p)?);
    }

    let s = von_neumann_entropy(&rho)?;
    let slope = norm_derivative_at_one(&rho, 1e-4)?;
    println!("S(rho) = {s:.10}, finite-difference slope at p = 1: {slope:.10}");

    let joint = tensor(&rho, &sigma);
    let back = partial_trace(&joint, (2, 3), Keep::First)?;
    println!("Tr_2(rho (x) sigma) recovers rho: {:.2e}", (&back - &*rho).norm());

    let mixed = DensityMatrix::maximally_mixed(2);
    println!("S(rho | I/2) = {:.10} = ln 2 - S(rho)", relative_entropy(&rho, &mixed)?);
    Ok(())
}
