//! Seeded end-to-end property pipeline: generate, audit, reduce, enumerate
//! OPDC solutions, map each back and verify it.
//!
//! Seeds are sharded across worker threads and results are merged back in
//! seed order, so a run is deterministic for a fixed seed list whatever the
//! worker count.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::Result;
use crate::generators::{generate, GeneratorConfig, GeneratorKind};
use crate::io::{instance_hash, parse_instance, serialize_instance, InstanceFile, Metadata, Witness, WitnessFile};
use crate::lattice::LatticeSpec;
use crate::reduction::{map_back, reduce};
use crate::solvers::{
    brute_fixed_points, brute_opdc_solutions, brute_sut_audit, kleene_budget, kleene_gfp, kleene_lfp,
};
use crate::tarski::{verify_sut_solution, TarskiFunction};

/// Environment variable naming the default counterexample directory.
pub const COUNTEREXAMPLE_DIR_ENV: &str = "SUT_COUNTEREXAMPLE_DIR";

/// Fallback when the environment variable is unset.
pub const DEFAULT_COUNTEREXAMPLE_DIR: &str = "counterexamples";

/// The generator configuration used for `seed`: the kind cycles through
/// attractor, random-monotone, unique-not-super and mutated (1 to 3
/// mutations). Unique-not-super falls back to random-monotone on lattices
/// too small for it.
pub fn config_for_seed(spec: LatticeSpec, seed: u64) -> GeneratorConfig {
    let mut kind = GeneratorKind::ALL[(seed % 4) as usize];
    if kind == GeneratorKind::UniqueNotSuper && (spec.n() < 2 || spec.k() < 2) {
        kind = GeneratorKind::RandomMonotone;
    }
    GeneratorConfig {
        mutations: 1 + (seed / 4 % 3) as usize,
        ..GeneratorConfig::new(spec, kind, seed)
    }
}

/// Counts from one successful pipeline run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InstanceStats {
    pub monotone: bool,
    pub violation_free: bool,
    /// O1, OV1, OV2, OV3.
    pub opdc_counts: [usize; 4],
}

/// One failed property, with the witness involved when there is one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub message: String,
    pub witness: Option<Witness>,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)?;
        if let Some(w) = &self.witness {
            match w {
                Witness::Sut(s) => write!(f, " [{s}]")?,
                Witness::Opdc(s) => write!(f, " [{s}]")?,
            }
        }
        Ok(())
    }
}

fn fail(message: impl Into<String>, witness: Option<Witness>) -> Failure {
    Failure {
        message: message.into(),
        witness,
    }
}

fn lib<T>(r: Result<T>, what: &str) -> Result<T, Failure> {
    r.map_err(|e| fail(format!("{what}: {e}"), None))
}

/// Runs every property on one table-backed instance.
pub fn check_instance(f: &TarskiFunction) -> Result<InstanceStats, Failure> {
    let text = serialize_instance(f).map_err(|e| fail(format!("serialize: {e}"), None))?;
    let back = parse_instance(&text).map_err(|e| fail(format!("parse: {e}"), None))?;
    if back.table() != f.table() || serialize_instance(&back).ok().as_deref() != Some(&text) {
        return Err(fail("instance round trip is not the identity", None));
    }

    let audit = lib(brute_sut_audit(f), "audit")?;
    for w in [&audit.monotonicity_violation, &audit.uniqueness_violation]
        .into_iter()
        .flatten()
    {
        if !verify_sut_solution(f, w).is_valid() {
            return Err(fail("audit witness does not verify", Some(w.clone().into())));
        }
    }

    let reduced = reduce(f);
    let sols = lib(brute_opdc_solutions(reduced.oracle()), "enumerate")?;
    let mut stats = InstanceStats {
        monotone: audit.monotone(),
        violation_free: audit.violation_free(),
        opdc_counts: [0; 4],
    };
    for sol in &sols {
        let slot = ["O1", "OV1", "OV2", "OV3"]
            .iter()
            .position(|t| *t == sol.tag())
            .expect("known tag");
        stats.opdc_counts[slot] += 1;

        let w = WitnessFile::new(sol.clone(), None);
        if WitnessFile::parse(&w.to_text()).ok().as_ref() != Some(&w) {
            return Err(fail("witness round trip is not the identity", Some(sol.clone().into())));
        }

        let mapped = map_back(f, sol).map_err(|e| fail(format!("map_back refused: {e}"), Some(sol.clone().into())))?;
        let verdict = verify_sut_solution(f, &mapped);
        if !verdict.is_valid() {
            return Err(fail(
                format!("mapped witness {mapped} is {verdict}"),
                Some(sol.clone().into()),
            ));
        }
        if mapped.is_proper() != sol.is_proper() {
            return Err(fail(
                format!("{} mapped to {}", sol.tag(), mapped.tag()),
                Some(sol.clone().into()),
            ));
        }
    }
    if stats.opdc_counts[3] > 0 {
        return Err(fail("boundary escape found on a reduced oracle", None));
    }
    let opdc_violations = stats.opdc_counts[1..].iter().sum::<usize>();
    if audit.violation_free() && opdc_violations > 0 {
        return Err(fail(
            "violation-free instance produced OPDC violations",
            sols.iter().find(|s| !s.is_proper()).cloned().map(Into::into),
        ));
    }

    if audit.monotone() {
        if stats.opdc_counts[0] == 0 {
            return Err(fail("monotone instance has no all-zero point", None));
        }
        let summary = lib(brute_fixed_points(f), "brute fixed points")?;
        let budget = kleene_budget(f.spec());
        let lfp = lib(kleene_lfp(f), "kleene lfp")?;
        let gfp = lib(kleene_gfp(f), "kleene gfp")?;
        if Some(&lfp.fixed_point) != summary.least.as_ref()
            || Some(&gfp.fixed_point) != summary.greatest.as_ref()
            || lfp.evaluations > budget
            || gfp.evaluations > budget
        {
            return Err(fail("Kleene iteration disagrees with brute force", None));
        }
    }
    Ok(stats)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedOutcome {
    pub seed: u64,
    pub config: GeneratorConfig,
    pub result: Result<InstanceStats, Failure>,
}

#[derive(Debug, Clone)]
pub struct FuzzReport {
    /// In seed order.
    pub outcomes: Vec<SeedOutcome>,
}

impl FuzzReport {
    pub fn failures(&self) -> impl Iterator<Item = &SeedOutcome> {
        self.outcomes.iter().filter(|o| o.result.is_err())
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }
}

fn run_seed(spec: LatticeSpec, seed: u64) -> SeedOutcome {
    let config = config_for_seed(spec, seed);
    let result = generate(&config)
        .map_err(|e| fail(format!("generate: {e}"), None))
        .and_then(|f| check_instance(&f));
    SeedOutcome { seed, config, result }
}

/// Runs the pipeline for every seed in `seeds` on `workers` threads.
pub fn run_fuzz(spec: LatticeSpec, seeds: &[u64], workers: usize) -> FuzzReport {
    let workers = workers.clamp(1, seeds.len().max(1));
    let mut outcomes: Vec<SeedOutcome> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                scope.spawn(move || {
                    seeds
                        .iter()
                        .skip(w)
                        .step_by(workers)
                        .map(|&seed| run_seed(spec, seed))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("fuzz worker panicked"))
            .collect()
    });
    let order: std::collections::HashMap<u64, usize> = seeds.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    outcomes.sort_by_key(|o| order[&o.seed]);
    FuzzReport { outcomes }
}

/// The counterexample directory from the environment, or the default.
pub fn counterexample_dir() -> PathBuf {
    std::env::var_os(COUNTEREXAMPLE_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(DEFAULT_COUNTEREXAMPLE_DIR))
}

/// Writes `seed-<seed>-instance.json`, `seed-<seed>-witness.json` (when the
/// failure carries one) and `seed-<seed>-failure.txt` for every failure.
/// Returns the written paths.
pub fn write_counterexamples(dir: &Path, report: &FuzzReport) -> std::io::Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    for o in report.failures() {
        let Err(failure) = &o.result else { continue };
        fs::create_dir_all(dir)?;
        let f = generate(&o.config).ok();
        let hash = f.as_ref().and_then(|f| instance_hash(f).ok());
        if let Some(f) = &f {
            if let Ok(file) = InstanceFile::from_function(f, Some(Metadata::from_config(&o.config))) {
                let path = dir.join(format!("seed-{}-instance.json", o.seed));
                fs::write(&path, file.to_text())?;
                written.push(path);
            }
        }
        if let Some(w) = &failure.witness {
            let path = dir.join(format!("seed-{}-witness.json", o.seed));
            fs::write(&path, WitnessFile::new(w.clone(), hash.clone()).to_text())?;
            written.push(path);
        }
        let path = dir.join(format!("seed-{}-failure.txt", o.seed));
        fs::write(&path, format!("{failure}\n"))?;
        written.push(path);
    }
    Ok(written)
}
