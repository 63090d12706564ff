//! Integrate the proper time along both branches of agent A.

use qswitch::timing::{self, ProtocolSchedule, Segment};
use qswitch::CentralBody;

fn main() -> qswitch::Result<()> {
    let earth = CentralBody::earth();
    let s = ProtocolSchedule::solved_with_ascent_fraction(earth, 5.0, 1e-6, 0.2)?;
    let (ab, ba) = timing::build_paths(&s)?;
    for (name, path) in [("A<B", &ab), ("B<A", &ba)] {
        println!("{name}: {} s of coordinate time", path.total_duration());
        for seg in path.segments() {
            match seg {
                Segment::Hold { radius, duration } => println!("  hold at R + {:.3} m for {duration:.6} s", radius - earth.radius()),
                Segment::LinearAscent { r_start, r_end, duration } => {
                    println!("  climb {:.3} m in {duration:.6} s", r_end - r_start)
                }
            }
        }
        println!("  proper time {:.15} s", timing::proper_time(path, &earth));
    }
    let (ab, ba) = timing::crossing_paths(&s)?;
    println!("gap at the crossing events {:e} s", timing::proper_time_gap(&ab, &ba, &earth));
    Ok(())
}
