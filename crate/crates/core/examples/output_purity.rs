// SPDX-License-Identifier: Apache-2.0

//! Maximal output p-norm and minimal output entropy.

use qmult::channels::random::random_kraus_channel;
use qmult::channels::Channel;
use qmult::matcore::SeededRng;
use qmult::purity::{nu_p, nu_p_depolarizing, s_min, PurityOptions};

fn main() -> qmult::Result<()> {
    let opts = PurityOptions::default();
    for lambda in [0.0, 0.5, 1.0] {
        let ch = Channel::depolarizing(lambda);
        let r = nu_p(&ch, 2.0, &opts)?;
        println!(
            "depolarizing {lambda}: nu_2 = {:.12} (closed form {:.12})",
            r.value,
            nu_p_depolarizing(lambda, 2.0)?
        );
    }

    let ch = random_kraus_channel(3, 3, 4, &mut SeededRng::new(11, 0));
    for p in [1.5, 2.0, 3.0] {
        let r = nu_p(&ch, p, &opts.clone().with_seed(1))?;
        println!(
            "random qutrit channel: nu_{p} = {:.10}, converged {}, residual {:.1e}",
            r.value, r.converged, r.residual
        );
    }
    let e = s_min(&ch, &opts)?;
    println!("S_min = {:.10}, derivative estimate {:.6}", e.value, e.derivative_check);
    Ok(())
}
