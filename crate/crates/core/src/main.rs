use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ald_vqe::circuits::Circuit;
use ald_vqe::harness::{
    activespace_sweep, measurement_resources, run_pipeline, shots_csv, shots_sweep, space_csv,
    Mode, Overrides, ReactionReport, RunConfig, Trio,
};
use ald_vqe::transpiler::{transpile, transpile_from_zero, StageMetrics, TranspileReport};
use ald_vqe::{Error, Result};

#[derive(Parser)]
#[command(
    name = "ald-vqe",
    version,
    about = "Reaction energetics with exact, VQE and noisy-emulated solvers"
)]
struct Cli {
    #[command(flatten)]
    flags: Flags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Flags {
    /// JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    shots: Option<u64>,
    #[arg(long, global = true)]
    experiments: Option<usize>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Apply symmetry post-selection in noisy runs.
    #[arg(long, global = true)]
    mitigate: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Exact diagonalization in each state's sector.
    Exact,
    /// Noiseless VQE over the UCCSD pool.
    Vqe,
    /// ADAPT-VQE over the UCCSD pool.
    Adapt,
    /// Shot-based emulation with the configured noise model.
    Noisy,
    /// Lower circuits to the native gate set and report resources.
    Transpile {
        /// Circuit text file; without it the measurement circuits of the configured states are used.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Specialize to the all-zero input state.
        #[arg(long)]
        from_zero: bool,
    },
    /// Energy spread against shot budget.
    SweepShots {
        /// Comma-separated budgets; defaults to the configuration's list.
        #[arg(long, value_delimiter = ',')]
        budgets: Option<Vec<u64>>,
    },
    /// Reaction profile for each configured active space.
    SweepSpace,
    /// Print a finished run's report.
    Report {
        /// Run directory; defaults to --out or `out`.
        dir: Option<PathBuf>,
    },
}

impl Flags {
    fn overrides(&self) -> Overrides {
        Overrides {
            mode: None,
            seed: self.seed,
            shots: self.shots,
            experiments: self.experiments,
            out: self.out.clone(),
            mitigate: self.mitigate,
        }
    }

    fn load(&self) -> Result<RunConfig> {
        let path = self
            .config
            .as_ref()
            .ok_or_else(|| Error::Config("this subcommand needs --config".into()))?;
        let mut config = RunConfig::load(path)?;
        config.apply(&self.overrides());
        Ok(config)
    }
}

fn write(path: PathBuf, text: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    fs::write(path, text)?;
    Ok(())
}

fn run_mode(flags: &Flags, mode: Mode) -> Result<()> {
    let mut config = flags.load()?;
    if !(mode == Mode::Noisy && config.mode.is_noisy()) {
        config.mode = mode;
    }
    if flags.mitigate && config.mode == Mode::Noisy {
        config.mode = Mode::NoisyPmsv;
    }
    let report = run_pipeline(&config)?;
    print!("{}", report.to_text());
    println!("written to {}", config.out.display());
    Ok(())
}

fn transpile_file(flags: &Flags, input: &PathBuf, from_zero: bool) -> Result<()> {
    let circuit = Circuit::from_text(&fs::read_to_string(input)?)?;
    let t = if from_zero {
        transpile_from_zero(&circuit)?
    } else {
        transpile(&circuit)?
    };
    let metrics: StageMetrics = t.metrics();
    let report = TranspileReport::new(circuit.n_qubits(), vec![("input".to_string(), metrics)])?;
    let out = flags.out.clone().unwrap_or_else(|| PathBuf::from("out"));
    write(out.join("transpiled.txt"), &t.optimized.to_text())?;
    write(out.join("transpile.kv"), &report.to_key_values())?;
    print!("{}", report.to_text());
    if let Some(d) = t.distance {
        println!("equivalence distance {d:.3e}");
    }
    Ok(())
}

fn transpile_states(flags: &Flags) -> Result<()> {
    let config = flags.load()?;
    for r in measurement_resources(&config)? {
        for (kind, report) in [("unitary", &r.unitary), ("from-zero", &r.from_zero)] {
            println!("== {} ({kind})", r.state);
            print!("{}", report.to_text());
            write(
                config.out.join(format!("transpile_{}_{kind}.txt", r.state)),
                &report.to_text(),
            )?;
            write(
                config.out.join(format!("transpile_{}_{kind}.kv", r.state)),
                &report.to_key_values(),
            )?;
        }
    }
    Ok(())
}

fn sweep_shots(flags: &Flags, budgets: Option<Vec<u64>>) -> Result<()> {
    let mut config = flags.load()?;
    if !config.mode.is_noisy() {
        config.mode = if flags.mitigate {
            Mode::NoisyPmsv
        } else {
            Mode::Noisy
        };
    }
    let budgets = budgets.unwrap_or_else(|| config.shot_budgets.clone());
    let csv = shots_csv(&shots_sweep(&config, &budgets)?)?;
    write(config.out.join("shots.csv"), &csv)?;
    print!("{csv}");
    Ok(())
}

fn sweep_space(flags: &Flags) -> Result<()> {
    let config = flags.load()?;
    let trios: Vec<Trio> = std::iter::once(config.states.clone())
        .chain(config.spaces.clone())
        .collect();
    let csv = space_csv(&activespace_sweep(&config, &trios)?)?;
    write(config.out.join("space.csv"), &csv)?;
    print!("{csv}");
    Ok(())
}

fn show_report(flags: &Flags, dir: Option<PathBuf>) -> Result<()> {
    let dir = dir
        .or_else(|| flags.out.clone())
        .unwrap_or_else(|| PathBuf::from("out"));
    let report: ReactionReport =
        serde_json::from_str(&fs::read_to_string(dir.join("report.json"))?)?;
    print!("{}", report.to_text());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let f = &cli.flags;
    let result = match cli.command {
        Command::Exact => run_mode(f, Mode::Exact),
        Command::Vqe => run_mode(f, Mode::Vqe),
        Command::Adapt => run_mode(f, Mode::Adapt),
        Command::Noisy => run_mode(f, Mode::Noisy),
        Command::Transpile {
            input: Some(ref input),
            from_zero,
        } => transpile_file(f, input, from_zero),
        Command::Transpile { input: None, .. } => transpile_states(f),
        Command::SweepShots { budgets } => sweep_shots(f, budgets),
        Command::SweepSpace => sweep_space(f),
        Command::Report { dir } => show_report(f, dir),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
