//! The `sic` command-line tool.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 internal error. `SIC_TOL` overrides the default of every `--tol`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::analysis::{
    conjecture_scan_capped, eigenspace_dims, exact_fiducial, orbit_from_stabilizer,
    stabilizer_capped, verify_fiducial, FiducialRecipe, DEFAULT_EIGENVECTOR_TOL,
    DEFAULT_FIDUCIAL_TOL,
};
use crate::analysis::{conjugate, diag_order3, z_element};
use crate::clifford::{
    clifford_trace, element_order, enumerate_group_capped, group_order, is_canonical_order3,
    CliffordElement, IntMat2, DEFAULT_ENUMERATION_CAP,
};
use crate::error::Error;
use crate::numtheory::{is_prime, Modulus};
use crate::search::{search_fiducial, SearchConfig};
use crate::tables::{conjugator, order_three};
use crate::vecfile::{read_vector, write_vector, LoadedVector};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Largest group the stabilizer-based commands sweep without `--full-sweep`.
pub const CLI_SWEEP_CAP: u64 = 1_000_000;

pub const TOL_ENV: &str = "SIC_TOL";

#[derive(Parser, Debug)]
#[command(
    name = "sic",
    version,
    about = "SIC-POVM fiducials and the Clifford group"
)]
struct Cli {
    /// Emit a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order of the Clifford group modulo phases.
    GroupOrder {
        d: i64,
        #[arg(long)]
        extended: bool,
    },
    /// List the group elements in canonical form.
    Enumerate {
        d: i64,
        #[arg(long)]
        extended: bool,
        #[arg(long)]
        count_only: bool,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
    },
    /// Write a closed-form fiducial vector to a file.
    MakeFiducial {
        recipe: String,
        /// Parameter of the d3 family, in radians.
        #[arg(long, allow_hyphen_values = true)]
        t: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the fiducial overlap condition.
    Verify {
        file: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Stability group of a vector.
    Stabilizer {
        file: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
        /// Allow sweeping groups larger than the default cap.
        #[arg(long)]
        full_sweep: bool,
    },
    /// Orbit size and SIC count of a fiducial.
    Orbit {
        file: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        full_sweep: bool,
    },
    /// Eigenspace dimensions of a unitary operation.
    Eigenspaces {
        d: i64,
        #[arg(long = "F", value_parser = parse_matrix, allow_hyphen_values = true)]
        f: IntMat2,
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        chi: [i64; 2],
    },
    /// Clifford trace `Tr F mod d`.
    Trace {
        d: i64,
        #[arg(long = "F", value_parser = parse_matrix, allow_hyphen_values = true)]
        f: IntMat2,
    },
    /// Order of an operation.
    Order {
        d: i64,
        #[arg(long = "F", value_parser = parse_matrix, allow_hyphen_values = true)]
        f: IntMat2,
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        chi: [i64; 2],
    },
    /// Check that the tabulated conjugator sends the tabulated order-3 element to [Z, 0].
    ZaunerCheck { d: i64 },
    /// A diagonal canonical order-3 unitary, if one exists.
    DiagOrder3 { d: i64 },
    /// Test whether a fiducial's stabilizer contains a canonical order-3 element or a conjugate of [Z, 0].
    Conjectures {
        file: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        full_sweep: bool,
    },
    /// Numerical fiducial search.
    Search {
        d: usize,
        #[arg(long, default_value_t = 16)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3000)]
        max_iterations: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_ints(s: &str, n: usize) -> Result<Vec<i64>, String> {
    let v: Result<Vec<i64>, _> = s.split(',').map(|x| x.trim().parse::<i64>()).collect();
    let v = v.map_err(|e| format!("expected {n} comma-separated integers: {e}"))?;
    if v.len() != n {
        return Err(format!(
            "expected {n} comma-separated integers, got {}",
            v.len()
        ));
    }
    Ok(v)
}

fn parse_matrix(s: &str) -> Result<IntMat2, String> {
    let v = parse_ints(s, 4)?;
    Ok(IntMat2([v[0], v[1], v[2], v[3]]))
}

fn parse_pair(s: &str) -> Result<[i64; 2], String> {
    let v = parse_ints(s, 2)?;
    Ok([v[0], v[1]])
}

/// A failed command with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NonIntegerTrace { .. }
            | Error::NotScalarPower { .. }
            | Error::OrderOverflow { .. } => EXIT_INTERNAL,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<crate::vecfile::VectorFileError> for Failure {
    fn from(e: crate::vecfile::VectorFileError) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

/// The text and JSON renderings of a command's result, plus its exit code.
struct Report {
    text: String,
    json: Value,
    code: i32,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report {
            text,
            json,
            code: EXIT_OK,
        }
    }
}

fn element_json(e: &CliffordElement) -> Value {
    json!({ "F": e.f().0, "chi": e.chi() })
}

fn default_tol(explicit: Option<f64>, fallback: f64) -> Result<f64, Failure> {
    if let Some(t) = explicit {
        return Ok(t);
    }
    match std::env::var(TOL_ENV) {
        Ok(s) => s
            .trim()
            .parse::<f64>()
            .map_err(|_| usage(format!("{TOL_ENV}: cannot parse `{s}` as a number"))),
        Err(_) => Ok(fallback),
    }
}

fn element(d: i64, f: IntMat2, chi: [i64; 2]) -> Result<CliffordElement, Failure> {
    Ok(CliffordElement::new(f, chi, Modulus::new(d)?)?)
}

fn load(path: &Path) -> Result<LoadedVector, Failure> {
    let v = read_vector(path)?;
    if v.vector.dim() < 2 {
        return Err(usage(format!(
            "{}: dimension must be at least 2",
            path.display()
        )));
    }
    Ok(v)
}

fn sweep_cap(full_sweep: bool) -> u64 {
    if full_sweep {
        u64::MAX
    } else {
        CLI_SWEEP_CAP
    }
}

fn cap_hint(e: Error) -> Failure {
    match e {
        Error::CapExceeded { .. } => usage(format!("{e}; pass --full-sweep to run anyway")),
        other => other.into(),
    }
}

fn execute(cmd: Command) -> Result<Report, Failure> {
    match cmd {
        Command::GroupOrder { d, extended } => {
            Modulus::new(d)?;
            if d < 2 {
                return Err(Error::InvalidDimension(d).into());
            }
            let order = group_order(d, extended);
            let mut text = format!("{order}\n");
            let prime_formula = if is_prime(d) {
                let base = (d.pow(3) * (d * d - 1)) as u64;
                let f = if extended { 2 * base } else { base };
                text += &format!(
                    "check: d^3 (d^2 - 1){} = {f} for prime d\n",
                    if extended { " * 2" } else { "" }
                );
                Some(f)
            } else {
                None
            };
            Ok(Report::ok(
                text,
                json!({ "d": d, "extended": extended, "order": order, "prime_formula": prime_formula }),
            ))
        }
        Command::Enumerate {
            d,
            extended,
            count_only,
            cap,
        } => {
            let elements = enumerate_group_capped(d, extended, cap)?;
            let expected = group_order(d, extended);
            if count_only {
                let n = elements.count() as u64;
                let text = format!("{n}\ncheck: group order formula gives {expected}\n");
                let mut r = Report::ok(
                    text,
                    json!({ "d": d, "extended": extended, "count": n, "expected": expected }),
                );
                if n != expected {
                    r.code = EXIT_INTERNAL;
                }
                Ok(r)
            } else {
                let list: Vec<CliffordElement> = elements.collect();
                let text: String = list.iter().map(|e| format!("{e}\n")).collect();
                let json = json!({
                    "d": d,
                    "extended": extended,
                    "count": list.len(),
                    "elements": list.iter().map(element_json).collect::<Vec<_>>(),
                });
                Ok(Report::ok(text, json))
            }
        }
        Command::MakeFiducial { recipe, t, out } => {
            let r = FiducialRecipe::from_name(&recipe, t)?;
            let psi = exact_fiducial(r);
            write_vector(&psi, &out, Some(r.to_string()), Some("closed form".into()))?;
            Ok(Report::ok(
                format!("wrote {} (d = {}) to {}\n", r, psi.dim(), out.display()),
                json!({ "recipe": r.to_string(), "d": psi.dim(), "out": out }),
            ))
        }
        Command::Verify { file, tol } => {
            let tol = default_tol(tol, DEFAULT_FIDUCIAL_TOL)?;
            let v = load(&file)?;
            let rep = verify_fiducial(&v.vector, tol)?;
            let target = 1.0 / ((rep.d + 1) as f64).sqrt();
            let text = format!(
                "{}\nd = {}\nmax deviation from 1/sqrt(d+1) = {:.3e}\nnorm error = {:.3e}\ntolerance = {:e}\n",
                if rep.passed { "PASS" } else { "FAIL" },
                rep.d,
                rep.max_deviation,
                rep.norm_error,
                tol
            );
            let json = json!({
                "d": rep.d,
                "passed": rep.passed,
                "max_deviation": rep.max_deviation,
                "norm_error": rep.norm_error,
                "tolerance": tol,
                "target_overlap": target,
                "renormalized_on_load": v.renormalized,
                "overlaps": rep.overlaps.iter().map(|(p, m)| json!({ "p": [p.p1, p.p2], "magnitude": m })).collect::<Vec<_>>(),
            });
            Ok(Report {
                text,
                json,
                code: if rep.passed { EXIT_OK } else { EXIT_FAILED },
            })
        }
        Command::Stabilizer {
            file,
            tol,
            full_sweep,
        } => {
            let tol = default_tol(tol, DEFAULT_EIGENVECTOR_TOL)?;
            let v = load(&file)?;
            let stab =
                stabilizer_capped(&v.vector, tol, sweep_cap(full_sweep)).map_err(cap_hint)?;
            let mut text = format!("order {}\n", stab.order);
            match &stab.generator_hint {
                Some(g) => text += &format!("cyclic, generated by {g}\n"),
                None => text += "not cyclic\n",
            }
            for e in &stab.elements {
                text += &format!(
                    "  {e}{}\n",
                    if e.is_unitary() {
                        ""
                    } else {
                        "  (anti-unitary)"
                    }
                );
            }
            let json = json!({
                "d": v.vector.dim(),
                "order": stab.order,
                "generator": stab.generator_hint.as_ref().map(element_json),
                "elements": stab.elements.iter().map(element_json).collect::<Vec<_>>(),
            });
            Ok(Report::ok(text, json))
        }
        Command::Orbit {
            file,
            tol,
            full_sweep,
        } => {
            let tol = default_tol(tol, DEFAULT_EIGENVECTOR_TOL)?;
            let v = load(&file)?;
            let d = v.vector.dim() as i64;
            let stab =
                stabilizer_capped(&v.vector, tol, sweep_cap(full_sweep)).map_err(cap_hint)?;
            let o = orbit_from_stabilizer(d, stab.order)?;
            let total = group_order(d, true);
            let text = format!(
                "orbit size {}\nSIC-POVMs {}\ncheck: {} * {} = {} = |EC/I|\n",
                o.orbit_size, o.sic_count, o.orbit_size, o.stabilizer_order, total
            );
            Ok(Report::ok(
                text,
                json!({
                    "d": d,
                    "orbit_size": o.orbit_size,
                    "sic_count": o.sic_count,
                    "stabilizer_order": o.stabilizer_order,
                    "group_order": total,
                }),
            ))
        }
        Command::Eigenspaces { d, f, chi } => {
            let e = element(d, f, chi)?;
            let dims = eigenspace_dims(&e)?;
            let sum: usize = dims.iter().sum();
            let mut text = format!(
                "{}\ncheck: sum = {sum} (d = {d})\n",
                dims.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            let table = order_three(d)
                .filter(|row| element(d, IntMat2(row.f), row.chi).ok() == Some(e))
                .map(|row| row.eigenspace_dims.to_vec());
            if let Some(t) = &table {
                text += &format!(
                    "check: tabulated dimensions {t:?} {}\n",
                    if *t == dims { "match" } else { "DIFFER" }
                );
            }
            Ok(Report::ok(
                text,
                json!({ "d": d, "element": element_json(&e), "dims": dims, "tabulated": table }),
            ))
        }
        Command::Trace { d, f } => {
            let e = element(d, f, [0, 0])?;
            let t = clifford_trace(&e);
            Ok(Report::ok(
                format!("{t}\n"),
                json!({ "d": d, "F": e.f().0, "trace": t, "canonical_order3": is_canonical_order3(&e) }),
            ))
        }
        Command::Order { d, f, chi } => {
            let e = element(d, f, chi)?;
            let k = element_order(&e)?;
            let mut text = format!("{k}\n");
            if is_prime(d) && d > 3 && e.is_unitary() {
                let predicted = clifford_trace(&e) == d - 1 && e.f().reduce(d) != IntMat2::IDENTITY;
                text += &format!(
                    "check: trace {} -1 (mod d), order {} 3\n",
                    if predicted { "==" } else { "!=" },
                    if k == 3 { "==" } else { "!=" }
                );
            }
            Ok(Report::ok(
                text,
                json!({ "d": d, "element": element_json(&e), "order": k, "unitary": e.is_unitary() }),
            ))
        }
        Command::ZaunerCheck { d } => {
            let (row, conj) = match (order_three(d), conjugator(d)) {
                (Some(r), Some(c)) => (r, c),
                _ => {
                    return Err(usage(format!(
                        "no tabulated row for d = {d} (available: 5..=45)"
                    )))
                }
            };
            let f = element(d, IntMat2(row.f), row.chi)?;
            let l = element(d, IntMat2(conj.l), conj.eta)?;
            let result = conjugate(&l, &f)?;
            let z = z_element(f.modulus());
            let ok = result == z;
            let text = format!(
                "{}\nL = {l}\nF = {f}\nL F L^-1 = {result}\n",
                if ok { "PASS" } else { "FAIL" }
            );
            Ok(Report {
                text,
                json: json!({
                    "d": d,
                    "passed": ok,
                    "L": element_json(&l),
                    "F": element_json(&f),
                    "result": element_json(&result),
                }),
                code: if ok { EXIT_OK } else { EXIT_FAILED },
            })
        }
        Command::DiagOrder3 { d } => {
            Modulus::new(d)?;
            if d < 2 {
                return Err(Error::InvalidDimension(d).into());
            }
            match diag_order3(d) {
                Some(e) => Ok(Report::ok(
                    format!("{e}\nalpha = {}\n", e.f().alpha()),
                    json!({ "d": d, "present": true, "alpha": e.f().alpha(), "element": element_json(&e) }),
                )),
                None => Ok(Report::ok(
                    "absent\n".into(),
                    json!({ "d": d, "present": false }),
                )),
            }
        }
        Command::Conjectures {
            file,
            tol,
            full_sweep,
        } => {
            let tol = default_tol(tol, DEFAULT_EIGENVECTOR_TOL)?;
            let v = load(&file)?;
            let rep =
                conjecture_scan_capped(&v.vector, tol, sweep_cap(full_sweep)).map_err(cap_hint)?;
            let mut text = format!("stabilizer order {}\n", rep.stabilizer.order);
            match &rep.order3_witness {
                Some(w) => text += &format!("canonical order 3 stabilizer: yes, {w}\n"),
                None => text += "canonical order 3 stabilizer: no\n",
            }
            match &rep.z_witness {
                Some(w) => {
                    text += &format!(
                        "conjugate of [Z, 0] in stabilizer: yes, {} via {}\n",
                        w.element, w.conjugator
                    )
                }
                None => text += "conjugate of [Z, 0] in stabilizer: no\n",
            }
            let json = json!({
                "d": v.vector.dim(),
                "stabilizer_order": rep.stabilizer.order,
                "order3_stabilizer": rep.has_order3_stabilizer(),
                "order3_witness": rep.order3_witness.as_ref().map(element_json),
                "z_conjugate": rep.has_z_conjugate(),
                "z_element": rep.z_witness.as_ref().map(|w| element_json(&w.element)),
                "z_conjugator": rep.z_witness.as_ref().map(|w| element_json(&w.conjugator)),
            });
            Ok(Report::ok(text, json))
        }
        Command::Search {
            d,
            restarts,
            seed,
            max_iterations,
            out,
        } => {
            if restarts == 0 {
                return Err(usage("--restarts must be at least 1"));
            }
            let cfg = SearchConfig::new(d)
                .with_restarts(restarts)
                .with_seed(seed)
                .with_max_iterations(max_iterations);
            let res = search_fiducial(&cfg)?;
            if let Some(path) = &out {
                write_vector(
                    &res.best_vector,
                    path,
                    Some(format!("search d={d}")),
                    Some(format!(
                        "numerical search, seed {seed}, restart {}",
                        res.best_restart
                    )),
                )?;
            }
            let text = format!(
                "{}\ndefect = {:.3e}\nrestart = {}\niterations = {}\n",
                if res.converged {
                    "converged"
                } else {
                    "not converged"
                },
                res.best_defect,
                res.best_restart,
                res.iterations_used
            );
            Ok(Report {
                text,
                json: json!({
                    "d": d,
                    "converged": res.converged,
                    "defect": res.best_defect,
                    "restart": res.best_restart,
                    "iterations": res.iterations_used,
                    "seed": seed,
                    "out": out,
                }),
                code: if res.converged { EXIT_OK } else { EXIT_FAILED },
            })
        }
    }
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    let as_json = cli.json;
    let result = std::panic::catch_unwind(|| execute(cli.command));
    let result = match result {
        Ok(r) => r,
        Err(_) => Err(Failure {
            code: EXIT_INTERNAL,
            message: "internal error".into(),
        }),
    };
    match result {
        Ok(report) => {
            let _ = if as_json {
                writeln!(out, "{}", report.json)
            } else {
                write!(out, "{}", report.text)
            };
            report.code
        }
        Err(f) => {
            if as_json {
                let _ = writeln!(
                    out,
                    "{}",
                    json!({ "error": f.message, "exit_code": f.code })
                );
            }
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
