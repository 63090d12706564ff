//! Ideal agents, target prepared in e1: the diagonal measurement leaves the
//! target in (e3 +/- e5)/sqrt2.

use qswitch::hilbert::level::E1;
use qswitch::switch_model::{self, AmplitudeModel};

fn main() -> qswitch::Result<()> {
    let out = switch_model::run_switch(&switch_model::basis_input(E1)?, &AmplitudeModel::ideal())?;
    for ps in &out.postselections {
        println!("P(zeta = {}) = {:.3}", ps.zeta, ps.probability);
    }
    let z3 = out.postselected(3)?.state.as_ref().expect("e1 always reaches zeta = 3");
    let d = switch_model::diagonal_measure(z3)?;
    for b in [&d.plus, &d.minus] {
        let t = b.residual.as_ref().expect("both outcomes occur");
        let amps: Vec<String> = t.amplitudes().iter().map(|a| format!("{:+.4}", a.re)).collect();
        println!("F{}: p = {:.3}, target = [{}]", b.sign.as_str(), b.probability, amps.join(", "));
    }
    Ok(())
}
