// SPDX-License-Identifier: Apache-2.0

//! Block decomposition of `(I ⊗ Φ)(M)` for a qubit map in canonical form.

use qmult::channels::{Channel, QubitAffineParams};
use qmult::conjectures::{block_decompose, random_block_psd};
use qmult::matcore::SeededRng;

fn main() -> qmult::Result<()> {
    let phi = Channel::qubit_affine(QubitAffineParams::new([0.8, 0.5, 0.3], [0.1, 0.0, 0.0]));
    let m = random_block_psd(3, &mut SeededRng::new(9, 0));
    for p in 2..=4 {
        let (dec, reports) = block_decompose(&m, &phi, p)?;
        println!("p = {p}: c = {:?}", dec.c);
        println!("  m' = {:?}, r = {:?}", dec.m_prime, dec.r);
        for r in reports {
            println!("  {:<16} lhs {:.12} rhs {:.12} pass {}", r.check_name, r.lhs, r.rhs, r.pass);
        }
    }
    Ok(())
}
