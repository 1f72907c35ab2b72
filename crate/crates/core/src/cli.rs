//! The `sut` command line. Exit codes: 0 success, 1 invalid witness or
//! counterexample found, 2 usage or input error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::fuzz::{counterexample_dir, run_fuzz, write_counterexamples};
use crate::generators::{generate, GeneratorConfig, GeneratorKind};
use crate::io::{parse_problem_file, InstanceFile, LoadedInstance, Metadata, OracleFile, Witness, WitnessFile};
use crate::lattice::{LatticeSpec, Point};
use crate::opdc::verify_opdc_solution;
use crate::reduction::{map_back, reduce};
use crate::solvers::{brute_fixed_points, brute_sut_audit, kleene_gfp, kleene_lfp};
use crate::tarski::{verify_sut_solution, SutSolution, TarskiFunction};
use crate::verdict::Verdict;

#[derive(Debug, Parser)]
#[command(
    name = "sut",
    version,
    about = "Super-Unique-Tarski instances, the OPDC reduction and witness checking"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Attractor,
    RandomMonotone,
    UniqueNotSuper,
    Mutated,
}

impl From<Kind> for GeneratorKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Attractor => GeneratorKind::Attractor,
            Kind::RandomMonotone => GeneratorKind::RandomMonotone,
            Kind::UniqueNotSuper => GeneratorKind::UniqueNotSuper,
            Kind::Mutated => GeneratorKind::Mutated,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    KleeneLfp,
    KleeneGfp,
    Brute,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate an instance file.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: usize,
        /// Attractor target, comma separated, 1-based.
        #[arg(long, value_delimiter = ',')]
        target: Option<Vec<u32>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        mutations: usize,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Write the direction table of the reduced OPDC instance.
    Reduce {
        instance: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Print a solution witness for an instance.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "brute")]
        method: Method,
    },
    /// Check a witness against an instance or oracle file.
    Verify { instance: PathBuf, witness: PathBuf },
    /// Exhaustively audit an instance for monotonicity and slice uniqueness.
    Audit { instance: PathBuf },
    /// Map an OPDC witness of the reduced instance back to a Super-Unique-Tarski witness.
    MapBack { instance: PathBuf, witness: PathBuf },
    /// Run the generate/audit/reduce/enumerate/map-back/verify pipeline over seeds.
    Fuzz {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: usize,
        /// Number of seeds.
        #[arg(long)]
        seeds: u64,
        #[arg(long, default_value_t = 0)]
        first_seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Counterexample directory; defaults to $SUT_COUNTEREXAMPLE_DIR or ./counterexamples.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Exit(i32, String);

fn usage(msg: impl std::fmt::Display) -> Exit {
    Exit(2, msg.to_string())
}

fn read(path: &Path) -> Result<String, Exit> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Exit> {
    fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<(TarskiFunction, String), Exit> {
    let file = InstanceFile::parse(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let f = file
        .to_function()
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok((f, file.content_hash()))
}

fn load_witness(path: &Path) -> Result<WitnessFile, Exit> {
    WitnessFile::parse(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(Exit(code, msg)) => {
            let _ = writeln!(err, "{msg}");
            code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Exit> {
    match cmd {
        Command::Gen {
            kind,
            n,
            k,
            target,
            seed,
            mutations,
            output,
        } => {
            let spec = LatticeSpec::new(n, k).map_err(usage)?;
            let target = match target {
                Some(t) => Some(spec.point(t).map_err(|e| usage(format!("--target: {e}")))?),
                None => None,
            };
            let cfg = GeneratorConfig {
                spec,
                kind: kind.into(),
                seed,
                target,
                mutations,
            };
            let f = generate(&cfg).map_err(usage)?;
            let file = InstanceFile::from_function(&f, Some(Metadata::from_config(&cfg))).map_err(usage)?;
            write_file(&output, &file.to_text())
        }
        Command::Reduce { instance, output } => {
            let (f, hash) = load_instance(&instance)?;
            let file = OracleFile::from_oracle(reduce(&f).oracle(), Some(hash)).map_err(usage)?;
            write_file(&output, &file.to_text())
        }
        Command::Solve { instance, method } => {
            let (f, hash) = load_instance(&instance)?;
            let sol = solve(&f, method).map_err(|e| Exit(1, e))?;
            write!(out, "{}", WitnessFile::new(sol, Some(hash)).to_text()).map_err(usage)
        }
        Command::Verify { instance, witness } => verify(&instance, &witness, out),
        Command::Audit { instance } => {
            let (f, _) = load_instance(&instance)?;
            audit(&f, out)
        }
        Command::MapBack { instance, witness } => {
            let (f, hash) = load_instance(&instance)?;
            let w = load_witness(&witness)?;
            w.check_hash(&hash).map_err(|e| Exit(1, e.to_string()))?;
            let Witness::Opdc(sol) = w.witness else {
                return Err(usage("map-back needs an OPDC witness"));
            };
            let mapped = map_back(&f, &sol).map_err(|e| Exit(1, e.to_string()))?;
            write!(out, "{}", WitnessFile::new(mapped, Some(hash)).to_text()).map_err(usage)
        }
        Command::Fuzz {
            n,
            k,
            seeds,
            first_seed,
            workers,
            out: dir,
        } => {
            let spec = LatticeSpec::new(n, k).map_err(usage)?;
            let list: Vec<u64> = (first_seed..first_seed.saturating_add(seeds)).collect();
            let report = run_fuzz(spec, &list, workers);
            let failed = report.failures().count();
            for o in report.failures() {
                if let Err(e) = &o.result {
                    let _ = writeln!(err, "seed {} ({}): {e}", o.seed, o.config.kind.as_str());
                }
            }
            let _ = writeln!(
                out,
                "fuzz n={n} k={k}: {} seeds, {} passed, {failed} failed",
                list.len(),
                list.len() - failed
            );
            if failed > 0 {
                let dir = dir.unwrap_or_else(counterexample_dir);
                let paths = write_counterexamples(&dir, &report).map_err(usage)?;
                let _ = writeln!(err, "wrote {} counterexample files to {}", paths.len(), dir.display());
                return Err(Exit(1, format!("{failed} seed(s) failed")));
            }
            Ok(())
        }
    }
}

/// Every instance has some solution: a fixed point when one is found,
/// otherwise the audit's monotonicity or uniqueness witness.
fn solve(f: &TarskiFunction, method: Method) -> Result<SutSolution, String> {
    let found = match method {
        Method::KleeneLfp => kleene_lfp(f).ok().map(|r| r.fixed_point),
        Method::KleeneGfp => kleene_gfp(f).ok().map(|r| r.fixed_point),
        Method::Brute => {
            let s = brute_fixed_points(f).map_err(|e| e.to_string())?;
            s.least.or_else(|| s.all_fixed.first().cloned())
        }
    };
    if let Some(x) = found {
        return Ok(SutSolution::FixedPoint(x));
    }
    let audit = brute_sut_audit(f).map_err(|e| e.to_string())?;
    audit
        .monotonicity_violation
        .or(audit.uniqueness_violation)
        .ok_or_else(|| "no solution found".to_string())
}

fn verify(instance: &Path, witness: &Path, out: &mut dyn Write) -> Result<(), Exit> {
    let text = read(instance)?;
    let loaded = parse_problem_file(&text).map_err(|e| usage(format!("{}: {e}", instance.display())))?;
    let w = load_witness(witness)?;
    let verdict: Verdict = match (&loaded, &w.witness) {
        (LoadedInstance::Tarski(file), witness) => {
            w.check_hash(&file.content_hash()).map_err(|e| Exit(1, e.to_string()))?;
            let f = file.to_function().map_err(usage)?;
            match witness {
                Witness::Sut(s) => verify_sut_solution(&f, s),
                Witness::Opdc(s) => verify_opdc_solution(reduce(&f).oracle(), s),
            }
        }
        (LoadedInstance::Oracle(file), Witness::Opdc(s)) => {
            let hash = file.content_hash();
            let matches_source = w.instance_hash.is_some() && w.instance_hash == file.source_hash;
            if !matches_source {
                w.check_hash(&hash).map_err(|e| Exit(1, e.to_string()))?;
            }
            verify_opdc_solution(&file.to_oracle().map_err(usage)?, s)
        }
        (LoadedInstance::Oracle(_), Witness::Sut(_)) => {
            return Err(usage(
                "a Super-Unique-Tarski witness needs a table instance, not an oracle file",
            ))
        }
    };
    match verdict {
        Verdict::Valid => writeln!(out, "valid").map_err(usage),
        Verdict::Invalid(r) => Err(Exit(1, format!("invalid: {r}"))),
    }
}

fn point_list(points: &[Point]) -> String {
    points.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")
}

fn audit(f: &TarskiFunction, out: &mut dyn Write) -> Result<(), Exit> {
    let report = brute_sut_audit(f).map_err(usage)?;
    let fixed = brute_fixed_points(f).map_err(usage)?;
    let mut text = String::new();
    match &report.monotonicity_violation {
        None => text.push_str("monotone: yes\n"),
        Some(w) => text.push_str(&format!("monotone: no ({w})\n")),
    }
    text.push_str(&format!(
        "fixed points: {} [{}]\n",
        fixed.count(),
        point_list(&fixed.all_fixed)
    ));
    text.push_str("slice fixed-point counts:\n");
    for c in &report.slice_counts {
        text.push_str(&format!("  {} {}\n", c.slice, c.fixed_points));
    }
    match &report.uniqueness_violation {
        None => text.push_str("slice uniqueness violation: none\n"),
        Some(w) => text.push_str(&format!("slice uniqueness violation: {w}\n")),
    }
    text.push_str(&format!(
        "violation-free: {}\n",
        if report.violation_free() { "yes" } else { "no" }
    ));
    out.write_all(text.as_bytes()).map_err(usage)
}
