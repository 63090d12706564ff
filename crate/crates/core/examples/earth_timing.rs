//! Matching schedule for a 1 m climb above the Earth with the agents 0.3 um apart.

use qswitch::timing::{self, ProtocolSchedule};
use qswitch::CentralBody;

fn main() -> qswitch::Result<()> {
    let earth = CentralBody::earth();
    let (h, d) = (1.0, 0.3e-6);

    let sol = timing::solve_matching(&earth, h, d)?;
    println!("regime            {}", sol.regime.as_str());
    println!("dt_r / dt_c exact {:.12e}", sol.ratio_exact);
    println!("      weak field  {:.12e}", sol.ratio_weak_field);
    println!("hold dt_r         {:.6} s", sol.dt_r);

    let s = ProtocolSchedule::solved_with_ascent_fraction(earth, h, d, 0.01)?;
    for (i, t) in s.times.iter().enumerate() {
        println!("t{i} = {t:.9} s");
    }
    println!("experiment lasts {:.4} s, crossing at tau* = {:.9} s", s.dt_exp, s.tau_star);
    println!("residual by path integration {:e} s", timing::matching_residual_by_paths(&s)?);

    let f = timing::validate_windows(&s, 1e-17, 1e-19)?;
    println!(
        "margins: decay {:.1}, window {:.1}, transit {:.3e} -> {}",
        f.decay_margin,
        f.window_margin,
        f.transit_margin,
        if f.passes() { "feasible" } else { "not feasible" }
    );
    Ok(())
}
