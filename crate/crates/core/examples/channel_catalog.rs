// SPDX-License-Identifier: Apache-2.0

//! Building channels in each native form, checking complete positivity and
//! round-tripping through the JSON spec.

use qmult::channels::random::random_cq;
use qmult::channels::{
    canonicalize_qubit, dephasing, satisfies_translation_condition, tensor_channels, Channel, QubitAffineParams,
};
use qmult::matcore::SeededRng;

fn main() -> qmult::Result<()> {
    let depol = Channel::depolarizing(0.5);
    let amp = Channel::qubit_affine(QubitAffineParams::new([0.8, 0.8, 0.64], [0.0, 0.0, 0.36]));
    let cq = random_cq(2, 3, &mut SeededRng::new(3, 0));
    let qc = dephasing(3);

    for (name, ch) in [("depolarizing", &depol), ("amplitude damping", &amp), ("cq", &cq), ("qc", &qc)] {
        let cert = ch.is_cptp(1e-10);
        println!(
            "{name:>18}: {} -> {}, Kraus rank {}, min Choi eigenvalue {:.2e}, unital {}",
            ch.d_in(),
            ch.d_out(),
            ch.kraus_operators().len(),
            cert.min_choi_eigenvalue,
            ch.is_unital(1e-12)
        );
    }

    let product = tensor_channels(&depol, &qc);
    println!("product acts {} -> {}", product.d_in(), product.d_out());

    let json = amp.to_json();
    println!("spec: {json}");
    let back = Channel::from_json(&json)?;
    println!("round trip equal: {}", back.qubit_params() == amp.qubit_params());

    let params = QubitAffineParams::new([-0.3, 0.6, 0.2], [0.0, -0.1, 0.0]);
    let canon = canonicalize_qubit(&params);
    println!(
        "canonical form of {:?}: lambda {:?}, t {:?} via {} steps (translation condition: {})",
        params.lambda,
        canon.params.lambda,
        canon.params.t,
        canon.steps.len(),
        satisfies_translation_condition(&params)
    );
    Ok(())
}
