//! A 1e-10 kg source of radius 1 fm: the hold no longer depends on h once h >> R.

use qswitch::timing::{self, ProtocolSchedule};
use qswitch::CentralBody;

fn main() -> qswitch::Result<()> {
    let body = CentralBody::new(1e-10, 1e-15)?;
    let d = 1e-15;
    println!("estimate c R d / GM = {:.4e} s", timing::small_mass_duration(&body, d));
    for h in [1e-15, 1e-13, 1e-11, 1e-9, 1e-7] {
        let s = ProtocolSchedule::solved(body, h, d, 0.0)?;
        let regime = timing::solve_matching(&body, h, d)?.regime;
        println!("h = {h:8.1e} m  dt_r = {:.6e} s  dt_exp = {:.6e} s  ({})", s.dt_r, s.dt_exp, regime.as_str());
    }
    Ok(())
}
