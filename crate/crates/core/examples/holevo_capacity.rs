// SPDX-License-Identifier: Apache-2.0

//! Holevo capacity with its duality-gap certificate.

use qmult::capacity::{certify_capacity, chi_star, chi_star_unital_qubit, CapacityOptions};
use qmult::channels::random::random_qc;
use qmult::channels::{Channel, QubitAffineParams};
use qmult::matcore::SeededRng;
use qmult::purity::PurityOptions;

fn main() -> qmult::Result<()> {
    let opts = CapacityOptions::default();
    let unital = Channel::qubit_affine(QubitAffineParams::new([0.9, 0.5, 0.2], [0.0; 3]));
    let r = chi_star(&unital, &opts)?;
    let formula = chi_star_unital_qubit(&unital, &PurityOptions::default())?;
    println!(
        "unital qubit: chi* = {:.10} nats ({:.10} bits), ln 2 - S_min = {formula:.10}, gap {:.1e}",
        r.chi_star,
        r.chi_star / std::f64::consts::LN_2,
        r.duality_gap
    );

    let damping = Channel::qubit_affine(QubitAffineParams::new([0.8, 0.8, 0.64], [0.0, 0.0, 0.36]));
    let r = chi_star(&damping, &opts)?;
    println!(
        "amplitude damping: chi* = {:.10}, {} ensemble members, gap {:.1e}",
        r.chi_star,
        r.ensemble.len(),
        r.duality_gap
    );
    for (p, s) in r.ensemble.probs().iter().zip(r.ensemble.states()) {
        println!("  weight {p:.6}, <0|rho|0> = {:.6}", s[(0, 0)].re);
    }

    let qc = random_qc(3, 2, &mut SeededRng::new(5, 0));
    let r = chi_star(&qc, &opts)?;
    let cert = certify_capacity(&qc, &r.avg_input, r.chi_star, &opts)?;
    println!("qc channel: chi* = {:.10}, radius {:.10}", r.chi_star, cert.radius);
    Ok(())
}
