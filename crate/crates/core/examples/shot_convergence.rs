//! Spread of the noisy energy estimate against the shot budget.

use std::path::PathBuf;

use ald_vqe::harness::{shots_csv, shots_sweep, Mode, RunConfig, Trio};

fn main() -> ald_vqe::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut config = RunConfig::new(Trio {
        r: dir.join("r_22.fcidump"),
        ts: dir.join("ts_22.fcidump"),
        p1: dir.join("p1_22.fcidump"),
    });
    config.mode = Mode::Noisy;
    config.experiments = 30;
    let rows = shots_sweep(&config, &[1_000, 10_000, 30_000])?;
    print!("{}", shots_csv(&rows)?);
    Ok(())
}
