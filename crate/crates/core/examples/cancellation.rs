//! Subtracting two nearly equal dilation factors loses most of the digits.

use qswitch::spacetime::{dilation_difference, dilation_factor};
use qswitch::CentralBody;

fn main() -> qswitch::Result<()> {
    let earth = CentralBody::earth();
    let r = earth.radius();
    println!("{:>8}  {:>22}  {:>22}  {:>9}", "h (m)", "naive", "conjugate form", "rel err");
    for h in [1e-3, 1e-2, 0.1, 1.0, 10.0, 100.0, 1e3] {
        let naive = dilation_factor(r + h, &earth)? - dilation_factor(r, &earth)?;
        let safe = dilation_difference(r + h, r, &earth)?;
        println!("{h:8.0e}  {naive:22.15e}  {safe:22.15e}  {:9.2e}", ((naive - safe) / safe).abs());
    }
    Ok(())
}
