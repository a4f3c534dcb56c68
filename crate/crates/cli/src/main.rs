use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use hecke_core::glnq::{verify_mult_theorem, FieldParams};
use hecke_core::kl::{KLTable, KlRow};
use hecke_core::order::{hasse, DEFAULT_HASSE_BOUND};
use hecke_core::report::Report;
use hecke_core::rpoly::{r_star_direct, RStarTable};
use hecke_core::verify::{closed_column_for, selftest, SelftestOptions};
use hecke_core::{parse_element, GenericElement, GenericScalar, GroupElement, GroupParams, HeckeError, SpecializedScalar};

#[derive(Parser)]
#[command(name = "hecke", version, about = "Exact Hecke algebra computations for G(b,1,n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone, Copy)]
struct Group {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    b: u32,
}

#[derive(Subcommand)]
enum Command {
    /// R*- and R-polynomials for one pair or for every pair.
    Rpoly {
        #[command(flatten)]
        group: Group,
        #[arg(long, requires = "y", conflicts_with = "all")]
        x: Option<String>,
        #[arg(long, requires = "x", conflicts_with = "all")]
        y: Option<String>,
        #[arg(long, required_unless_present = "x")]
        all: bool,
        #[arg(long, value_enum, default_value_t = Method::Recursive)]
        method: Method,
        /// Output file; `.csv` selects CSV, anything else JSON. Defaults to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The Hasse diagram of the order, as Graphviz DOT.
    Order {
        #[command(flatten)]
        group: Group,
        #[arg(long)]
        hasse: PathBuf,
        /// Also print the connected components.
        #[arg(long)]
        components: bool,
    },
    /// Kazhdan-Lusztig polynomials P* and P.
    Kl {
        #[command(flatten)]
        group: Group,
        /// Restrict to one column; all of them otherwise.
        #[arg(long)]
        y: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Product of two basis elements in the T-basis.
    HeckeMul {
        #[command(flatten)]
        group: Group,
        x: String,
        y: String,
        #[arg(long)]
        json: bool,
    },
    /// Structure constants of the GL_n(F_q) double-coset algebra against the generic algebra.
    VerifyGlnq {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        a: u32,
        /// Allow the n = 3 enumeration.
        #[arg(long)]
        slow_ok: bool,
    },
    /// The full invariant suite at one size.
    Selftest {
        #[command(flatten)]
        group: Group,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Recursive,
    Direct,
    Closed,
    CrossCheck,
}

enum Failure {
    Usage(serde_json::Value),
    Verification(serde_json::Value),
}

impl From<HeckeError> for Failure {
    fn from(e: HeckeError) -> Self {
        let body = json!({ "error": error_kind(&e), "message": e.to_string() });
        match e {
            HeckeError::KlInconsistency { .. } | HeckeError::Internal(_) => Failure::Verification(body),
            _ => Failure::Usage(body),
        }
    }
}

fn error_kind(e: &HeckeError) -> &'static str {
    match e {
        HeckeError::InvalidParams { .. } => "invalid_params",
        HeckeError::ParamMismatch(..) => "param_mismatch",
        HeckeError::NotReduced(_) => "not_reduced",
        HeckeError::GeneratorOutOfRange { .. } => "generator_out_of_range",
        HeckeError::BoundExceeded { .. } => "bound_exceeded",
        HeckeError::Syntax { .. } => "syntax",
        HeckeError::Arity { .. } => "arity",
        HeckeError::InvalidField(_) => "invalid_field",
        HeckeError::SlowPath { .. } => "slow_path",
        HeckeError::KlInconsistency { .. } => "kl_inconsistency",
        HeckeError::Internal(_) => "internal",
    }
}

fn io_failure(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure::Usage(json!({ "error": "io", "message": format!("{}: {e}", path.display()) }))
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Rpoly { group, x, y, all, method, out } => rpoly(group, x, y, all, method, out),
        Command::Order { group, hasse, components } => order(group, &hasse, components),
        Command::Kl { group, y, out } => kl(group, y, &out),
        Command::HeckeMul { group, x, y, json } => hecke_mul(group, &x, &y, json),
        Command::VerifyGlnq { n, q, a, slow_ok } => verify_glnq(n, q, a, slow_ok),
        Command::Selftest { group, seed } => run_selftest(group, seed),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(body)) => {
            eprintln!("{body}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(body)) => {
            eprintln!("{body}");
            ExitCode::from(1)
        }
    }
}

fn params(g: Group) -> Result<GroupParams, Failure> {
    Ok(GroupParams::new(g.n, g.b)?)
}

fn is_csv(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

/// Writes rows as JSON (array) or CSV (via `to_record`), to a file or stdout.
fn emit<T: Serialize>(
    out: Option<&Path>,
    rows: &[T],
    header: &[&str],
    to_record: impl Fn(&T) -> Vec<String>,
) -> Outcome {
    let text = match out {
        Some(path) if is_csv(path) => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let write = |w: &mut csv::Writer<Vec<u8>>| -> csv::Result<()> {
                w.write_record(header)?;
                for r in rows {
                    w.write_record(to_record(r))?;
                }
                w.flush()?;
                Ok(())
            };
            write(&mut w).map_err(|e| io_failure(path, e))?;
            String::from_utf8(w.into_inner().map_err(|e| io_failure(path, e))?).expect("csv output is UTF-8")
        }
        _ => serde_json::to_string_pretty(rows).expect("rows serialize") + "\n",
    };
    match out {
        Some(path) => fs::write(path, text).map_err(|e| io_failure(path, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct RRow {
    x: String,
    y: String,
    r_star: GenericScalar,
    r: SpecializedScalar,
}

fn rpoly(g: Group, x: Option<String>, y: Option<String>, all: bool, method: Method, out: Option<PathBuf>) -> Outcome {
    let p = params(g)?;
    let pair = match (&x, &y) {
        (Some(x), Some(y)) => Some((parse_element(x, &p)?, parse_element(y, &p)?)),
        _ => None,
    };
    let ys: Vec<GroupElement> = match &pair {
        Some((_, y)) => vec![y.clone()],
        None => {
            debug_assert!(all);
            if p.order() > DEFAULT_HASSE_BOUND {
                return Err(HeckeError::BoundExceeded { size: p.order(), bound: DEFAULT_HASSE_BOUND }.into());
            }
            p.elements()
        }
    };

    let table = RStarTable::new(p);
    let order = hecke_core::order::Order::new(p);
    let mut rows = Vec::new();
    let mut disagreements = Vec::new();
    for y in &ys {
        let column: BTreeMap<GroupElement, GenericScalar> = match method {
            Method::Recursive => table.column(y),
            Method::Direct => r_star_direct(y),
            Method::Closed => closed_column_for(y, &order)?,
            Method::CrossCheck => {
                let rec = table.column(y);
                let direct = r_star_direct(y);
                let closed = closed_column_for(y, &order)?;
                for x in p.elements() {
                    let zero = GenericScalar::zero();
                    let (r1, r2, r3) = (
                        rec.get(&x).unwrap_or(&zero),
                        direct.get(&x).unwrap_or(&zero),
                        closed.get(&x).unwrap_or(&zero),
                    );
                    if r1 != r2 || r1 != r3 {
                        disagreements.push(json!({
                            "x": x.to_string(), "y": y.to_string(),
                            "recursive": r1, "direct": r2, "closed": r3,
                        }));
                    }
                }
                rec
            }
        };
        let selected: Vec<(GroupElement, GenericScalar)> = match &pair {
            Some((x, _)) => vec![(x.clone(), column.get(x).cloned().unwrap_or_default())],
            None => column.into_iter().collect(),
        };
        for (x, r_star) in selected {
            let gap = y.length() as i32 - x.length() as i32;
            let r = r_star.specialize(p.b).shift_v(gap);
            rows.push(RRow { x: x.to_string(), y: y.to_string(), r_star, r });
        }
    }
    if !disagreements.is_empty() {
        return Err(Failure::Verification(json!({
            "error": "rstar_disagreement",
            "message": format!("{} pairs disagree", disagreements.len()),
            "witnesses": disagreements.into_iter().take(10).collect::<Vec<_>>(),
        })));
    }
    emit(out.as_deref(), &rows, &["x", "y", "r_star", "r"], |r| {
        vec![r.x.clone(), r.y.clone(), r.r_star.to_string(), r.r.to_string()]
    })
}

fn order(g: Group, dot: &Path, components: bool) -> Outcome {
    let p = params(g)?;
    let poset = hasse(p, DEFAULT_HASSE_BOUND)?;
    fs::write(dot, poset.to_dot()).map_err(|e| io_failure(dot, e))?;
    let mut summary = json!({
        "n": p.n,
        "b": p.b,
        "elements": poset.elements().len(),
        "hasse_edges": poset.hasse_edges().len(),
        "component_count": poset.components().len(),
    });
    if components {
        let comps: Vec<Vec<String>> = poset
            .components()
            .iter()
            .map(|c| c.iter().map(|&i| poset.elements()[i].to_string()).collect())
            .collect();
        summary["components"] = json!(comps);
    }
    println!("{}", serde_json::to_string_pretty(&summary).unwrap());
    Ok(())
}

fn kl(g: Group, y: Option<String>, out: &Path) -> Outcome {
    let p = params(g)?;
    let table = KLTable::new(p);
    let ys = match y {
        Some(text) => vec![parse_element(&text, &p)?],
        None => {
            if p.order() > DEFAULT_HASSE_BOUND {
                return Err(HeckeError::BoundExceeded { size: p.order(), bound: DEFAULT_HASSE_BOUND }.into());
            }
            table.fill()?;
            p.elements()
        }
    };
    let mut rows: Vec<KlRow> = Vec::new();
    let mut defects = Vec::new();
    for y in &ys {
        rows.extend(table.rows(y)?);
        defects.extend(table.degree_defects(y)?);
    }
    emit(Some(out), &rows, &["x", "y", "p_star", "p"], |r| {
        vec![r.x.clone(), r.y.clone(), r.p_star.to_string(), r.p.to_string()]
    })?;
    let summary = json!({ "rows": rows.len(), "degree_defects": defects });
    println!("{}", serde_json::to_string_pretty(&summary).unwrap());
    Ok(())
}

fn hecke_mul(g: Group, x: &str, y: &str, as_json: bool) -> Outcome {
    let p = params(g)?;
    let (x, y) = (parse_element(x, &p)?, parse_element(y, &p)?);
    let prod = &GenericElement::t_basis(&x) * &GenericElement::t_basis(&y);
    if as_json {
        println!("{}", serde_json::to_string_pretty(&prod).unwrap());
    } else {
        println!("{prod}");
    }
    Ok(())
}

fn print_report(report: &Report) -> Outcome {
    println!("{}", serde_json::to_string_pretty(report).unwrap());
    if report.passed() {
        return Ok(());
    }
    let failed: Vec<_> = report.failures().collect();
    Err(Failure::Verification(json!({
        "error": "verification_failed",
        "message": format!("{} check(s) failed", failed.len()),
        "failures": failed,
    })))
}

fn verify_glnq(n: usize, q: u32, a: u32, slow_ok: bool) -> Outcome {
    let field = FieldParams::new(q, a)?;
    let report = verify_mult_theorem(n, field, slow_ok)?;
    print_report(&report)
}

fn run_selftest(g: Group, seed: u64) -> Outcome {
    let p = params(g)?;
    let report = selftest(p, SelftestOptions { seed, ..SelftestOptions::default() })?;
    print_report(&report)
}
