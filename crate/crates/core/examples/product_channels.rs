// SPDX-License-Identifier: Apache-2.0

//! Multiplicativity of the maximal output p-norm and additivity of the
//! capacity for product channels.

use qmult::capacity::CapacityOptions;
use qmult::channels::random::{random_cq, random_kraus_channel, random_qubit_channel};
use qmult::channels::{dephasing, Channel};
use qmult::conjectures::{check_additivity, check_multiplicativity, multiplicativity_theorem};
use qmult::matcore::SeededRng;
use qmult::purity::PurityOptions;

fn main() -> qmult::Result<()> {
    let mut rng = SeededRng::new(21, 0);
    let omega = random_kraus_channel(3, 3, 4, &mut rng);
    let opts = PurityOptions::default();

    let partners = [
        ("cq", random_cq(2, 2, &mut rng), 3.0),
        ("depolarizing", Channel::depolarizing(0.5), 2.0),
        ("random qubit", random_qubit_channel(&mut rng), 2.5),
    ];
    for (name, phi, p) in &partners {
        let reports = check_multiplicativity(&omega, phi, *p, &opts)?;
        let theorem = multiplicativity_theorem(&omega, phi, *p).unwrap_or("none");
        println!(
            "{name:>13}, p = {p}: product {:.10}, joint {:.10}, theorem {theorem}",
            reports[0].lhs, reports[0].rhs
        );
    }

    let qubit = random_kraus_channel(2, 2, 3, &mut rng);
    for r in check_additivity(&qubit, &dephasing(2), &CapacityOptions::default(), &opts)? {
        println!("{}: joint {:.8}, sum {:.8}, {:?}", r.check_name, r.lhs, r.rhs, r.status);
    }
    Ok(())
}
