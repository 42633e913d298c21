//! R / TS / P1 relative energies from exact diagonalization and VQE.

use std::path::PathBuf;

use ald_vqe::harness::{compute, Mode, RunConfig, Trio};

fn main() -> ald_vqe::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let states = Trio {
        r: dir.join("r_22.fcidump"),
        ts: dir.join("ts_22.fcidump"),
        p1: dir.join("p1_22.fcidump"),
    };
    for mode in [Mode::Exact, Mode::Vqe] {
        let mut config = RunConfig::new(states.clone());
        config.mode = mode;
        let report = compute(&config)?.report;
        print!("{}", report.to_text());
        println!();
    }
    Ok(())
}
