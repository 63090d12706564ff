//! Imperfect agents and a superposed target: detector postselection and what
//! each outcome leaves behind.

use num_complex::Complex64;
use qswitch::hilbert::Factor;
use qswitch::switch_model::{self, AmplitudeModel, ModelParams};

fn main() -> qswitch::Result<()> {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let model = AmplitudeModel::new(ModelParams {
        c1a: c(0.9, 0.0),
        c4a: c(0.0, 0.7),
        c1b: c(0.8, 0.1),
        c2b: c(0.6, 0.0),
        delta_1a: 0.3,
        f_ab: c(0.5, 0.5),
        ..ModelParams::default()
    })?;
    let alpha = [c(0.5, 0.0), c(0.0, 0.5), c(0.5, 0.0), c(0.4, -0.2), c(0.2, 0.1)];
    let out = switch_model::run_switch(&switch_model::build_input(&alpha)?, &model)?;

    println!("sum of P(zeta) = {:.15}", out.total_probability());
    for ps in &out.postselections {
        let Some(s) = &ps.state else {
            println!("zeta {}: never observed", ps.zeta);
            continue;
        };
        let d = switch_model::diagonal_measure(s)?;
        println!(
            "zeta {}: p = {:.4}  target entropy {:.4}  F+ {:.4}  F- {:.4}  elsewhere {:.4}",
            ps.zeta,
            ps.probability,
            s.entanglement_entropy(Factor::Target)?,
            d.plus.probability,
            d.minus.probability,
            d.remainder
        );
    }
    Ok(())
}
