//! Oscillator clock that flips A0 -> A1 as the packet crosses the zone [0, Delta].

use qswitch::trigger::{self, GridSpec, Mode, Thresholds, TriggerParams};

fn main() -> qswitch::Result<()> {
    let hbar = qswitch::PhysicalConstants::CODATA_2018.hbar;
    let p = TriggerParams::for_alarm(9.16, 1e-25, hbar, 20.0, 20.0)?;
    println!("omega {:.4e} 1/s, sigma {:.3e} m, zone {:.3e} m, amplitude {:.3e} m", p.omega, p.sigma(), p.delta, p.amplitude);
    println!("V0 {:.3e} J, epsilon {:.4} s, rotation {:.15}", p.v0, p.epsilon(), trigger::rotation_angle(&p));

    let ts = p.tau_star();
    let times: Vec<f64> = (0..=8).map(|i| ts - 2.0 * p.epsilon() + 2.0 * p.epsilon() * i as f64 / 8.0).collect();
    let tr = trigger::numeric_evolve(&p, &GridSpec::default(), &times)?;
    println!("{:>10} {:>10} {:>10}", "tau", "analytic", "numeric");
    for s in &tr.samples {
        let a = trigger::analytic_evolve(&p, s.tau)?;
        println!("{:10.4} {:10.6} {:10.6}", s.tau, a.p_a1(), s.p_a1);
    }

    for mode in [Mode::Analytic, Mode::Numeric] {
        let r = trigger::check_trigger_condition(&p, mode, Thresholds::for_mode(mode), &GridSpec::default())?;
        println!("{}: P(A1 at tau*) = {:.6}, passed = {}", mode.as_str(), r.p_a1_at_star, r.passed);
    }
    Ok(())
}
