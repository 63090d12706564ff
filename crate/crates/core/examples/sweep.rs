//! Drive the command layer from config text: a two-axis timing sweep.

use qswitch::cli::{self, parse_config, ScenarioConfig};

fn main() -> qswitch::Result<()> {
    let text = "\
[body]
preset = earth
[sweep]
engine = timing
axis = h log 0.1 10 3
axis = d linear 1e-7 5e-7 3
";
    let mut cfg = ScenarioConfig::from_raw(&parse_config(text)?)?;
    cfg.resolve_constants(None)?;
    let report = cli::cmd_sweep(&cfg)?;
    let t = report.table("sweep").expect("sweep table");
    let col = |name| t.floats(name).expect("known column");
    for ((h, d), dt) in col("h").iter().zip(col("d")).zip(col("dt_exp")) {
        println!("h = {:6.2} m  d = {:.1e} m  dt_exp = {:9.4} s", h.unwrap(), d.unwrap(), dt.unwrap());
    }
    Ok(())
}
