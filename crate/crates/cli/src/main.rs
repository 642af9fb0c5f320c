// SPDX-License-Identifier: Apache-2.0

//! `unitarizer`: generate, check, unitarize and verify groupoid
//! representations stored as JSON.
//!
//! Exit codes: 0 success, 1 validation failure, 2 numerical or solver
//! failure, 3 IO or parse failure. Every failure prints one line of the form
//! `error[<kind>]: <reason>` on stderr.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use unitarize_core::json::{self, GroupoidDoc, RepresentationDoc};
use unitarize_core::{
    check_representation, generate_instance, unitarize, verify_similarity, ActionGroupoidSpec, ComplexMatrix, Error,
    ErrorKind, Representation, SelftestConfig, SolverOptions, SolverScheme, UnitaryGroupRep,
};

#[derive(Parser, Debug)]
#[command(
    name = "unitarizer",
    version,
    about = "Unitarize bounded representations of finite measured groupoids"
)]
struct Cli {
    /// Worker threads for per-unit solves (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run randomized checks of the matrix geometry.
    Selftest {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, env = "UNITARIZER_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Condition-number cap for random points.
        #[arg(long, default_value_t = 1e3)]
        max_cond: f64,
    },
    /// Write a random representation similar to a unitary one.
    Generate {
        /// Action groupoid JSON, optionally with a "base_rep" field.
        spec: PathBuf,
        #[arg(long)]
        dim: Option<usize>,
        /// Condition number of each twisting matrix.
        #[arg(long, default_value_t = 4.0)]
        cond_bound: f64,
        #[arg(long, env = "UNITARIZER_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check the representation identities and print the residual table.
    Check {
        rep: PathBuf,
        /// Absolute tolerance (default: 1e-9 scaled by max(1, C²)).
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Conjugate a representation to a unitary one.
    Unitarize {
        rep: PathBuf,
        #[arg(long, default_value_t = 1e-6)]
        eps: f64,
        #[arg(long, default_value_t = 100_000)]
        max_iter: usize,
        #[arg(long, value_enum, default_value_t = Scheme::Tangent)]
        scheme: Scheme,
        /// CSV convergence trace: unit_id,iteration,radius_at_iterate,error_bound.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check that rho2(g) = h(t(g)) rho1(g) h(s(g))^-1.
    Verify {
        rho1: PathBuf,
        rho2: PathBuf,
        /// File with a "psi" block giving h (default: RHO2).
        #[arg(long, conflicts_with = "identity")]
        witness: Option<PathBuf>,
        /// Use h = I at every unit.
        #[arg(long)]
        identity: bool,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Scheme {
    Tangent,
    Farthest,
}

enum Failure {
    Core(Error),
    Io(String),
    Validation(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code_and_tag(&self) -> (u8, &'static str) {
        match self {
            Failure::Core(e) => match e.kind() {
                ErrorKind::Validation => (1, "validation"),
                ErrorKind::Numerical => (2, "numerical"),
                ErrorKind::Parse => (3, "parse"),
            },
            Failure::Validation(_) => (1, "validation"),
            Failure::Numerical(_) => (2, "numerical"),
            Failure::Io(_) => (3, "io"),
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Io(m) | Failure::Validation(m) | Failure::Numerical(m) => m.clone(),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error[validation]: --jobs: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (code, tag) = f.code_and_tag();
            eprintln!("error[{tag}]: {}", f.message().replace('\n', " "));
            ExitCode::from(code)
        }
    }
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Selftest {
            dim,
            trials,
            seed,
            tol,
            max_cond,
        } => cmd_selftest(SelftestConfig {
            dim,
            trials,
            seed,
            tol,
            max_cond,
        }),
        Command::Generate {
            spec,
            dim,
            cond_bound,
            seed,
            output,
        } => cmd_generate(&spec, dim, cond_bound, seed, &output),
        Command::Check { rep, tol } => cmd_check(&rep, tol),
        Command::Unitarize {
            rep,
            eps,
            max_iter,
            scheme,
            trace,
            output,
        } => {
            let scheme = match scheme {
                Scheme::Tangent => SolverScheme::TangentBall,
                Scheme::Farthest => SolverScheme::FarthestPoint,
            };
            let opts = SolverOptions::new(eps)
                .with_max_iter(max_iter)
                .with_scheme(scheme)
                .with_trace(trace.is_some());
            cmd_unitarize(&rep, &opts, trace.as_deref(), &output)
        }
        Command::Verify {
            rho1,
            rho2,
            witness,
            identity,
            tol,
        } => cmd_verify(&rho1, &rho2, witness.as_deref(), identity, tol),
    }
}

fn read_json(path: &Path) -> CliResult<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    json::parse(&text).map_err(|e| match e {
        Error::Parse(m) => Failure::Core(Error::Parse(format!("{}: {m}", path.display()))),
        other => Failure::Core(other),
    })
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, contents: &str) -> CliResult<()> {
    let io = |e: std::io::Error| Failure::Io(format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn load_rep(path: &Path, validate: bool) -> CliResult<(Value, RepresentationDoc)> {
    let value = read_json(path)?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let resolve = |reference: &str| -> unitarize_core::Result<Value> {
        let target = base.join(reference);
        let text = std::fs::read_to_string(&target)
            .map_err(|e| Error::Parse(format!("groupoid reference {}: {e}", target.display())))?;
        json::parse(&text)
    };
    let doc = if validate {
        json::representation_from_json(&value, &resolve)?
    } else {
        json::representation_from_json_unchecked(&value, &resolve)?
    };
    Ok((value, doc))
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn cmd_selftest(config: SelftestConfig) -> CliResult<()> {
    let report = unitarize_core::run_selftest(&config)?;
    println!("{report}");
    if report.all_passed() {
        Ok(())
    } else {
        let failed: Vec<&str> = report
            .properties
            .iter()
            .filter(|p| p.failed > 0)
            .map(|p| p.name)
            .collect();
        Err(Failure::Numerical(format!("properties failed: {}", failed.join(", "))))
    }
}

/// Regular plus trivial when the dimension allows, otherwise a permutation
/// or character sum, otherwise trivial.
fn default_base(spec: &ActionGroupoidSpec, dim: usize) -> unitarize_core::Result<UnitaryGroupRep> {
    let group = &spec.group;
    let order = group.order();
    let pad = |base: UnitaryGroupRep| -> unitarize_core::Result<UnitaryGroupRep> {
        if base.dim() == dim {
            Ok(base)
        } else {
            base.direct_sum(&UnitaryGroupRep::trivial(group.clone(), dim - base.dim())?)
        }
    };
    if dim >= order {
        return pad(UnitaryGroupRep::regular(group.clone()));
    }
    if let Ok(perm) = UnitaryGroupRep::permutation(group.clone()) {
        if perm.dim() <= dim {
            return pad(perm);
        }
    }
    let chars =
        (1..=dim)
            .map(|k| UnitaryGroupRep::cyclic_character(order, k))
            .try_fold(None::<UnitaryGroupRep>, |acc, chi| match acc {
                None => Ok(Some(chi)),
                Some(a) => a.direct_sum(&chi).map(Some),
            });
    match chars {
        Ok(Some(sum)) if sum.group() == group => Ok(sum),
        _ => UnitaryGroupRep::trivial(group.clone(), dim),
    }
}

fn cmd_generate(spec_path: &Path, dim: Option<usize>, cond_bound: f64, seed: u64, output: &Path) -> CliResult<()> {
    let value = read_json(spec_path)?;
    let doc = json::groupoid_from_json(&value)?;
    let spec = doc
        .action_spec()
        .ok_or_else(|| Failure::Validation("generate needs an action groupoid (\"kind\": \"action\")".into()))?
        .clone();
    let base = match (value.get("base_rep"), dim) {
        (Some(b), d) => {
            let base = json::base_rep_from_json(b, &spec.group)?;
            match d {
                Some(d) if d < base.dim() => {
                    return Err(Failure::Validation(format!(
                        "base_rep has dimension {} above --dim {d}",
                        base.dim()
                    )))
                }
                Some(d) if d > base.dim() => {
                    base.direct_sum(&UnitaryGroupRep::trivial(spec.group.clone(), d - base.dim())?)?
                }
                _ => base,
            }
        }
        (None, Some(0)) => return Err(Failure::Validation("--dim must be positive".into())),
        (None, Some(d)) => default_base(&spec, d)?,
        (None, None) => default_base(&spec, spec.group.order() + 1)?,
    };
    let rep = generate_instance(&spec, &base, cond_bound, seed)?;
    let out = json::representation_to_json(&GroupoidDoc::Action(spec), &rep);
    write_atomic(output, &json::to_text(&out))?;
    println!("arrows {}", rep.groupoid().arrow_count());
    println!("dim {}", rep.dim());
    println!("uniform_bound {}", num(rep.uniform_bound()));
    Ok(())
}

fn cmd_check(path: &Path, tol: Option<f64>) -> CliResult<()> {
    let (_, doc) = load_rep(path, false)?;
    let rep = &doc.rep;
    let tol = tol.unwrap_or(unitarize_core::representation::REP_TOL * rep.uniform_bound().powi(2).max(1.0));
    if tol.is_nan() || tol <= 0.0 {
        return Err(Failure::Validation("--tol must be positive".into()));
    }
    let g = rep.groupoid();
    let violations = check_representation(rep, tol);
    println!("units {}", g.unit_count());
    println!("arrows {}", g.arrow_count());
    println!("invariance {:?}", g.check_invariance());
    println!("ergodic {}", g.check_ergodic());
    println!("uniform_bound {}", num(rep.uniform_bound()));
    println!("tol {}", num(tol));
    for v in &violations {
        println!("violation {:?} {} {}", v.kind, v.arrows.join(","), num(v.residual));
    }
    println!("violations {}", violations.len());
    match violations.first() {
        None => Ok(()),
        Some(v) => Err(Failure::Validation(v.to_string())),
    }
}

fn trace_csv(rep: &Representation, out: &unitarize_core::Unitarization) -> String {
    let mut csv = String::from("unit_id,iteration,radius_at_iterate,error_bound\n");
    for (x, cert) in out.witness.certificates.iter().enumerate() {
        let Some(cert) = cert else { continue };
        for row in &cert.trace {
            let _ = writeln!(
                csv,
                "{},{},{},{}",
                rep.groupoid().units()[x],
                row.iteration,
                num(row.radius_at_iterate),
                num(row.error_bound)
            );
        }
    }
    csv
}

fn cmd_unitarize(path: &Path, opts: &SolverOptions, trace: Option<&Path>, output: &Path) -> CliResult<()> {
    let (_, doc) = load_rep(path, true)?;
    let out = unitarize(&doc.rep, opts)?;
    write_atomic(
        output,
        &json::to_text(&json::unitarization_to_json(&doc.groupoid, &out)),
    )?;
    if let Some(t) = trace {
        write_atomic(t, &trace_csv(&doc.rep, &out))?;
    }
    let r = &out.report;
    println!("max_unitarity_residual {}", num(r.max_unitarity_residual));
    println!("max_equivariance_residual {}", num(r.max_equivariance_residual));
    println!("max_certificate_bound {}", num(r.max_certificate_bound));
    println!("uniform_bound {}", num(r.uniform_bound));
    println!("threshold {}", num(r.threshold));
    println!("unconverged_units {}", r.unconverged_units.len());
    r.ensure_converged(doc.rep.groupoid())?;
    if r.max_unitarity_residual > r.threshold {
        return Err(Failure::Numerical(format!(
            "unitarity residual {} exceeds threshold {}",
            num(r.max_unitarity_residual),
            num(r.threshold)
        )));
    }
    Ok(())
}

fn cmd_verify(rho1: &Path, rho2: &Path, witness: Option<&Path>, identity: bool, tol: f64) -> CliResult<()> {
    if tol.is_nan() || tol < 0.0 {
        return Err(Failure::Validation("--tol must be nonnegative".into()));
    }
    let (_, first) = load_rep(rho1, false)?;
    let (second_value, second) = load_rep(rho2, false)?;
    let g = first.rep.groupoid();
    let h: Vec<ComplexMatrix> = if identity {
        vec![ComplexMatrix::identity(first.rep.dim()); g.unit_count()]
    } else {
        let (source, value) = match witness {
            Some(w) => (w.to_path_buf(), read_json(w)?),
            None => (rho2.to_path_buf(), second_value),
        };
        json::psi_from_json(&value, g)?.ok_or_else(|| {
            Failure::Validation(format!(
                "{} has no \"psi\" block; pass --witness or --identity",
                source.display()
            ))
        })?
    };
    let check = verify_similarity(&first.rep, &second.rep, &h, tol)?;
    for &(a, r) in &check.per_arrow {
        println!("arrow {} {}", g.arrows()[a].id, num(r));
    }
    println!("max_residual {}", num(check.max_residual));
    println!("tol {}", num(tol));
    if check.passed {
        Ok(())
    } else {
        Err(Failure::Validation(format!(
            "similarity residual {} exceeds {}",
            num(check.max_residual),
            num(tol)
        )))
    }
}
