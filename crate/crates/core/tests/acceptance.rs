//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs as a plain binary so the lines reach the terminal. Criteria listed in
//! [`KNOWN_FAILING`] are evaluated at their stated tolerance and reported as
//! FAIL without failing the target; any other failure, or a listed criterion
//! that starts passing, makes the target exit non-zero.

mod common;

use std::fs;
use std::time::Instant;

use ald_vqe::ansatz::{adapt_vqe, chemically_aware_filter, uccsd_pool, AdaptConfig, AnsatzSpec};
use ald_vqe::circuits::hartree_fock_state;
use ald_vqe::harness::{
    compute, load_hamiltonian, mitigation_spec, optimized_ansatz, run_pipeline, Mode, PoolChoice,
    RunConfig, Trio,
};
use ald_vqe::noisy::{
    density_matrix_run, shot_sweep, trajectory_run, MeasurementCircuits, NoiseModel, NoisyEmulator,
    RepeatSummary,
};
use ald_vqe::operators::{dense_matrix, exact_ground_energy, qubit_hamiltonian, Sector};
use ald_vqe::rng::{derive_seed, label};
use ald_vqe::transpiler::{transpile, EQUIVALENCE_TOL};
use ald_vqe::vqe::{minimize, VqeConfig};
use common::*;

/// Criteria measured to fail; the analysis lives in the project notes.
const KNOWN_FAILING: &[&str] = &["8", "H"];

const BUDGETS: [u64; 4] = [1_000, 10_000, 30_000, 100_000];
const EXPERIMENTS: usize = 100;

struct Outcome {
    id: &'static str,
    pass: bool,
}

fn report(id: &'static str, title: &str, pass: bool, detail: String) -> Outcome {
    println!(
        "[{}] {id:>2} {title}: {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    Outcome { id, pass }
}

fn trio(size: &str) -> Trio {
    Trio {
        r: fixture(&format!("r_{size}")),
        ts: fixture(&format!("ts_{size}")),
        p1: fixture(&format!("p1_{size}")),
    }
}

fn jw_correctness() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for name in all_fixtures() {
        let ints = integrals(&name);
        let jw = dense_matrix(&qubit_hamiltonian(&ints).unwrap()).unwrap();
        let direct = ladder_hamiltonian(&ints).map(c);
        worst = worst.max((jw - direct).iter().map(|z| z.norm()).fold(0.0, f64::max));
    }
    let secs = start.elapsed().as_secs_f64();
    report(
        "1",
        "JW matrix equals ladder build",
        worst < 1e-12 && secs < 5.0,
        format!("max |diff| {worst:.1e} (tol 1e-12), {secs:.2} s (limit 5 s)"),
    )
}

fn qubit_counts() -> Outcome {
    let q22 = qubit_hamiltonian(&integrals("r_22")).unwrap().n_qubits();
    let q44 = qubit_hamiltonian(&integrals("r_44")).unwrap().n_qubits();
    report(
        "2",
        "qubits = 2 x orbitals",
        q22 == 4 && q44 == 8,
        format!("CAS(2,2) {q22}, CAS(4,4) {q44} (expected 4, 8)"),
    )
}

fn filtering() -> Outcome {
    let mut counts = Vec::new();
    let mut worst = 0.0f64;
    let mut ok = true;
    for size in ["22", "44"] {
        for s in STATES {
            let ints = integrals(&format!("{s}_{size}"));
            let h = qubit_hamiltonian(&ints).unwrap();
            let n = ints.n_spin_orbitals();
            let full = uccsd_pool(ints.n_electrons, n).unwrap();
            let hf = hartree_fock_state(n, ints.n_electrons).unwrap();
            let kept = chemically_aware_filter(&full, &hf, &h);
            let base = AnsatzSpec::hartree_fock(n, ints.n_electrons).unwrap();
            let cfg = VqeConfig::default();
            let e_full = minimize(&h, &base.clone().with_excitations(full), &cfg)
                .unwrap()
                .energy;
            let e_kept = minimize(&h, &base.with_excitations(kept.clone()), &cfg)
                .unwrap()
                .energy;
            worst = worst.max((e_full - e_kept).abs());
            ok &= if size == "22" {
                kept.len() == 1
            } else {
                kept.len() <= 18
            };
            counts.push(format!("{s}_{size}:{}", kept.len()));
        }
    }
    report(
        "3",
        "filtered pool size and optimum",
        ok && worst < 1e-6,
        format!(
            "parameters [{}] (need 1 / <=18), |E_filtered - E_full| max {worst:.1e} (tol 1e-6)",
            counts.join(" ")
        ),
    )
}

fn noiseless_accuracy() -> Outcome {
    let start = Instant::now();
    let mut vqe_err = 0.0f64;
    let mut adapt_err = 0.0f64;
    for s in STATES {
        let ints = integrals(&format!("{s}_22"));
        let h = qubit_hamiltonian(&ints).unwrap();
        let spec =
            optimized_ansatz(&ints, &h, PoolChoice::Filtered, &VqeConfig::default()).unwrap();
        vqe_err = vqe_err
            .max((spec.energy_at(&h, &spec.theta).unwrap() - oracle_ground_energy(&ints)).abs());

        let ints = integrals(&format!("{s}_44"));
        let h = qubit_hamiltonian(&ints).unwrap();
        let pool = uccsd_pool(4, 8).unwrap();
        let r = adapt_vqe(
            &h,
            &pool,
            &hartree_fock_state(8, 4).unwrap(),
            &AdaptConfig::default(),
        )
        .unwrap();
        adapt_err = adapt_err.max((r.energy - oracle_ground_energy(&ints)).abs());
    }
    let secs = start.elapsed().as_secs_f64();
    report(
        "4",
        "noiseless VQE / ADAPT reach exact energies",
        vqe_err < 1e-8 && adapt_err < 1.6e-3 && secs < 60.0,
        format!(
            "(2,2) VQE max err {vqe_err:.1e} (tol 1e-8), (4,4) ADAPT max err {:.3} mHa (tol 1.6), {secs:.1} s (limit 60 s)",
            adapt_err * 1e3
        ),
    )
}

fn measurement_sources(name: &str) -> Vec<ald_vqe::circuits::Circuit> {
    let ints = integrals(name);
    let h = qubit_hamiltonian(&ints).unwrap();
    let spec = optimized_ansatz(&ints, &h, PoolChoice::Filtered, &VqeConfig::default()).unwrap();
    MeasurementCircuits::sources(&h, &spec).unwrap()
}

fn transpiler_equivalence() -> Outcome {
    let mut worst = 0.0f64;
    let mut checked = 0;
    let mut ordered = true;
    let mut depths = Vec::new();
    for size in ["22", "44"] {
        for s in STATES {
            for c in measurement_sources(&format!("{s}_{size}")) {
                let t = match transpile(&c) {
                    Ok(t) => t,
                    Err(_) => {
                        worst = f64::INFINITY;
                        continue;
                    }
                };
                worst = worst.max(t.distance.unwrap_or(f64::INFINITY));
                checked += 1;
                if size == "22" {
                    let m = t.metrics();
                    ordered &=
                        m.optimized.depth < m.decomposed.depth && m.decomposed.depth <= m.ir.depth;
                    depths.push((m.ir.depth, m.decomposed.depth, m.optimized.depth));
                }
            }
        }
    }
    let span = |f: fn(&(usize, usize, usize)) -> usize| {
        let v: Vec<usize> = depths.iter().map(f).collect();
        format!("{}-{}", v.iter().min().unwrap(), v.iter().max().unwrap())
    };
    report(
        "5",
        "transpiled circuits equivalent, depth reduced",
        worst < EQUIVALENCE_TOL && ordered,
        format!(
            "{checked} circuits, max distance {worst:.1e} (tol 1e-10); (2,2) depth IR {} -> decomposed {} -> optimized {}",
            span(|d| d.0),
            span(|d| d.1),
            span(|d| d.2)
        ),
    )
}

fn noise_oracle() -> Outcome {
    let start = Instant::now();
    let noise = NoiseModel::default();
    let shots = 100_000u64;
    let mut worst_ratio = 0.0f64;
    let mut count = 0;
    let mut names = vec!["h2_like".to_string()];
    names.extend(STATES.iter().map(|s| format!("{s}_22")));
    for name in names {
        let ints = integrals(&name);
        let h = qubit_hamiltonian(&ints).unwrap();
        let spec =
            optimized_ansatz(&ints, &h, PoolChoice::Filtered, &VqeConfig::default()).unwrap();
        for (g, c) in MeasurementCircuits::build(&h, &spec)
            .unwrap()
            .circuits
            .iter()
            .enumerate()
        {
            let exact = density_matrix_run(c, &noise).unwrap();
            let freq = trajectory_run(c, &noise, shots, derive_seed(label(&name), &[g as u64]))
                .unwrap()
                .frequencies();
            let tv = 0.5
                * freq
                    .iter()
                    .zip(&exact)
                    .map(|(a, b)| (a - b).abs())
                    .sum::<f64>();
            let bound = 5.0 * ((c.n_qubits() as f64 * 2f64.ln()) / shots as f64).sqrt();
            worst_ratio = worst_ratio.max(tv / bound);
            count += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    report(
        "6",
        "trajectories match density matrix",
        worst_ratio < 1.0 && secs < 300.0,
        format!("{count} circuits, max TV / bound {worst_ratio:.3} (need < 1), {secs:.1} s (limit 300 s)"),
    )
}

struct NoisyState {
    name: &'static str,
    noiseless: f64,
    sweep: Vec<RepeatSummary>,
}

fn noisy_runs() -> Vec<NoisyState> {
    let config = {
        let mut c = RunConfig::new(trio("22"));
        c.mode = Mode::NoisyPmsv;
        c
    };
    config
        .states
        .labeled()
        .into_iter()
        .map(|(name, path)| {
            let (ints, h) = load_hamiltonian(path, name).unwrap();
            let spec = optimized_ansatz(&ints, &h, config.pool, &config.vqe).unwrap();
            let noiseless = spec.energy_at(&h, &spec.theta).unwrap();
            let circuits = MeasurementCircuits::build(&h, &spec).unwrap();
            let emu = NoisyEmulator::new(&h, circuits, config.noise, config.engine).unwrap();
            let mitigation = mitigation_spec(&config, &h, spec.reference).unwrap();
            let seed = derive_seed(config.seed, &[label(name)]);
            let sweep = shot_sweep(&emu, &BUDGETS, EXPERIMENTS, seed, Some(&mitigation)).unwrap();
            NoisyState {
                name,
                noiseless,
                sweep,
            }
        })
        .collect()
}

fn at_full_budget(s: &NoisyState) -> &RepeatSummary {
    s.sweep.last().unwrap()
}

fn bias_envelope(states: &[NoisyState]) -> Outcome {
    let biases: Vec<f64> = states
        .iter()
        .map(|s| (at_full_budget(s).raw.mean - s.noiseless).abs())
        .collect();
    let detail = states
        .iter()
        .zip(&biases)
        .map(|(s, b)| format!("{} {:.1}", s.name, b * 1e3))
        .collect::<Vec<_>>()
        .join(", ");
    report(
        "7",
        "noise bias below 300 mHa",
        biases.iter().all(|&b| b < 0.3),
        format!("|E_noisy - E_noiseless| mHa: {detail} (limit 300)"),
    )
}

fn mitigation_efficacy(states: &[NoisyState]) -> Outcome {
    let mut closer = true;
    let mut wider = true;
    let mut parts = Vec::new();
    for s in states {
        let r = at_full_budget(s);
        let m = r.mitigated.unwrap();
        let (raw_err, mit_err) = (
            (r.raw.mean - s.noiseless).abs(),
            (m.mean - s.noiseless).abs(),
        );
        closer &= mit_err < raw_err;
        wider &= m.std >= r.raw.std;
        parts.push(format!(
            "{} err {:.1}->{:.1} mHa std {:.2}->{:.2} mHa",
            s.name,
            raw_err * 1e3,
            mit_err * 1e3,
            r.raw.std * 1e3,
            m.std * 1e3
        ));
    }
    report(
        "8",
        "post-selection closer to noiseless, std not reduced",
        closer && wider,
        format!(
            "closer {closer}, std_mitigated >= std_raw {wider}; {}",
            parts.join("; ")
        ),
    )
}

fn shot_convergence(states: &[NoisyState], sweep_secs: f64) -> Outcome {
    let mut monotone = true;
    let mut worst = 1.0f64;
    let mut parts = Vec::new();
    for s in states {
        let series = [
            ("raw", s.sweep.iter().map(|r| r.raw.std).collect::<Vec<_>>()),
            (
                "mitigated",
                s.sweep.iter().map(|r| r.mitigated.unwrap().std).collect(),
            ),
        ];
        for (kind, std) in series {
            monotone &= std.windows(2).all(|w| w[1] <= w[0]);
            // std * sqrt(shots) is constant under shots^-1/2 scaling
            let scaled: Vec<f64> = std
                .iter()
                .zip(BUDGETS)
                .map(|(s, n)| s * (n as f64).sqrt())
                .collect();
            for v in &scaled {
                let ratio = v / scaled[0];
                worst = worst.max(ratio.max(1.0 / ratio));
            }
            if kind == "raw" {
                parts.push(format!(
                    "{} {}",
                    s.name,
                    std.iter()
                        .map(|x| format!("{:.2}", x * 1e3))
                        .collect::<Vec<_>>()
                        .join("/")
                ));
            }
        }
    }
    report(
        "9",
        "std non-increasing, ~shots^-1/2",
        monotone && worst <= 2.0 && sweep_secs < 1800.0,
        format!(
            "raw std mHa at 1e3/1e4/3e4/1e5: {}; non-increasing {monotone}; worst deviation from shots^-1/2 x{worst:.2} (limit 2); sweep {sweep_secs:.1} s (limit 1800 s)",
            parts.join(", ")
        ),
    )
}

fn determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("ald-vqe-acceptance-{}", std::process::id()));
    let mut config = RunConfig::new(trio("22"));
    config.mode = Mode::NoisyPmsv;
    config.shots = 10_000;
    let mut outputs = Vec::new();
    for run in ["first", "second"] {
        config.out = dir.join(run);
        run_pipeline(&config).unwrap();
        outputs.push(["report.json", "report.csv"].map(|f| fs::read(config.out.join(f)).unwrap()));
    }
    let _ = fs::remove_dir_all(&dir);
    report(
        "10",
        "identical configs give identical reports",
        outputs[0] == outputs[1],
        format!(
            "report.json and report.csv byte-identical: {}",
            outputs[0] == outputs[1]
        ),
    )
}

/// Noisy+pmsv reaction energies at 100 x 1e5 shots within two standard errors of noiseless.
fn harness_two_sigma() -> Outcome {
    let mut noisy = RunConfig::new(trio("22"));
    noisy.mode = Mode::NoisyPmsv;
    let noisy = compute(&noisy).unwrap().report;
    let mut parts = Vec::new();
    let mut ok = true;
    for label in ["TS", "P1"] {
        let rel = noisy.relative.iter().find(|r| r.label == label).unwrap();
        let noiseless = noisy.state(label).unwrap().noiseless.unwrap()
            - noisy.state("R").unwrap().noiseless.unwrap();
        let sem = rel.sem.unwrap();
        ok &= (rel.hartree - noiseless).abs() <= 2.0 * sem;
        parts.push(format!(
            "dE_{label} {:.2} vs {:.2} mHa (2 SEM {:.2})",
            rel.hartree * 1e3,
            noiseless * 1e3,
            2.0 * sem * 1e3
        ));
    }
    report(
        "H",
        "noisy+pmsv dE within 2 SEM of noiseless",
        ok,
        parts.join("; "),
    )
}

fn main() {
    let start = Instant::now();
    let mut outcomes = vec![
        jw_correctness(),
        qubit_counts(),
        filtering(),
        noiseless_accuracy(),
        transpiler_equivalence(),
        noise_oracle(),
    ];
    let sweep_start = Instant::now();
    let states = noisy_runs();
    let sweep_secs = sweep_start.elapsed().as_secs_f64();
    outcomes.push(bias_envelope(&states));
    outcomes.push(mitigation_efficacy(&states));
    outcomes.push(shot_convergence(&states, sweep_secs));
    outcomes.push(determinism());
    outcomes.push(harness_two_sigma());

    // Exact-energy sanity for the sector solver used throughout.
    let ints = integrals("h2_like");
    let e = exact_ground_energy(
        &qubit_hamiltonian(&ints).unwrap(),
        Sector::new(ints.n_electrons, ints.spin_2s),
    )
    .unwrap();
    assert!((e - oracle_ground_energy(&ints)).abs() < 1e-10);

    let passed = outcomes.iter().filter(|o| o.pass).count();
    println!(
        "{passed}/{} passed in {:.1} s",
        outcomes.len(),
        start.elapsed().as_secs_f64()
    );
    let unexpected: Vec<&str> = outcomes
        .iter()
        .filter(|o| o.pass == KNOWN_FAILING.contains(&o.id))
        .map(|o| o.id)
        .collect();
    if !unexpected.is_empty() {
        println!("unexpected outcome for: {}", unexpected.join(", "));
        std::process::exit(1);
    }
    println!("known failing: {}", KNOWN_FAILING.join(", "));
}
