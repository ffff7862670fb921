//! Subcommands, input loading and report rendering.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use confsalg::algebra::{Element, ReducedAlgebra, Report, TermJson};
use confsalg::catalog::{self, CatalogEntry, CatalogError, CatalogName};
use confsalg::construct::{exclusion_sweep, CaseReport, ConstructError, SolutionSet};
use confsalg::reconstruct::ReconstructedAlgebra;
use confsalg::scalar::{parse_scalar, Scalar};

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_SOLVER: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "confsalg", version, about = "Exact computer algebra for physical conformal superalgebras")]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a catalog algebra and write its canonical JSON.
    Build(BuildArgs),
    /// Check axioms of an algebra given as JSON.
    Verify {
        path: PathBuf,
        /// Comma-separated subset of P, H, C.
        #[arg(long, value_delimiter = ',', default_value = "P,H")]
        axioms: Vec<String>,
        #[arg(long, default_value_t = 4)]
        mmax: u32,
        #[arg(long, default_value_t = 4)]
        nmax: u32,
        /// Maximal ∂-degree for the C axioms.
        #[arg(long, default_value_t = 4)]
        dmax: u32,
    },
    /// Print the invariant signature (dimensions, V∧V charpoly, simplicity).
    Invariants { path: PathBuf },
    /// Decide simplicity (the exact condition on α for symbolic input).
    Simplicity { path: PathBuf },
    /// Check that a linear map is an isomorphism.
    Isocheck {
        a: PathBuf,
        b: PathBuf,
        /// JSON object mapping basis ids of A to term lists in B; images of
        /// the V basis alone are extended through products.
        #[arg(long)]
        map: PathBuf,
    },
    /// Run the finite case analysis for a given dim V.
    Exclude {
        #[arg(long)]
        dimv: usize,
    },
    /// Catalog of named algebras.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
}

#[derive(clap::Args, Debug)]
pub struct BuildArgs {
    /// One of Vir, K1, K2, K3, S2, W2, N4, N4alpha, CK6.
    pub name: String,
    /// Value of α for N4alpha (scalar grammar; symbolic when omitted).
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Output file (standard output when omitted).
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum CatalogCommand {
    /// List the catalog entries with their dimensions per weight.
    List,
    /// Same as the top-level `build`.
    Build(BuildArgs),
}

/// An error caused by the user's input (exit code 2).
#[derive(Debug)]
struct InputError(String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn input_error(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(InputError(msg.into()))
}

/// Maps an error to its exit code.
pub fn exit_code_for(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if cause.is::<InputError>() || cause.is::<std::io::Error>() {
            return EXIT_INPUT;
        }
        if let Some(c) = cause.downcast_ref::<CatalogError>() {
            return match c {
                CatalogError::UnknownName(_) | CatalogError::InvalidParams(_) => EXIT_INPUT,
                CatalogError::Construct(ConstructError::InvalidSpec(_)) => EXIT_INPUT,
                _ => EXIT_SOLVER,
            };
        }
        if let Some(c) = cause.downcast_ref::<ConstructError>() {
            return match c {
                ConstructError::InvalidSpec(_) => EXIT_INPUT,
                _ => EXIT_SOLVER,
            };
        }
    }
    EXIT_SOLVER
}

/// Applies `CONFSALG_THREADS` to the global worker pool.
pub fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("CONFSALG_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| input_error(format!("CONFSALG_THREADS must be a positive integer, got {v:?}")))?;
    if n == 0 {
        return Err(input_error("CONFSALG_THREADS must be positive"));
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring the worker pool")?;
    Ok(())
}

pub fn run(cli: &Cli) -> Result<u8> {
    let fmt = cli.format;
    match &cli.command {
        Command::Build(args) | Command::Catalog { command: CatalogCommand::Build(args) } => cmd_build(args, fmt),
        Command::Verify { path, axioms, mmax, nmax, dmax } => cmd_verify(path, axioms, *mmax, *nmax, *dmax, fmt),
        Command::Invariants { path } => cmd_invariants(path, fmt),
        Command::Simplicity { path } => cmd_simplicity(path, fmt),
        Command::Isocheck { a, b, map } => cmd_isocheck(a, b, map, fmt),
        Command::Exclude { dimv } => cmd_exclude(*dimv, fmt),
        Command::Catalog { command: CatalogCommand::List } => cmd_catalog_list(fmt),
    }
}

fn load(path: &Path) -> Result<ReducedAlgebra> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    ReducedAlgebra::from_json(&text).map_err(|e| input_error(format!("{}: {}", path.display(), e)))
}

fn emit_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn cmd_build(args: &BuildArgs, fmt: Format) -> Result<u8> {
    let name: CatalogName = args.name.parse()?;
    let alpha = match &args.alpha {
        Some(s) => Some(parse_scalar(s).map_err(|e| input_error(format!("--alpha: {e}")))?),
        None => None,
    };
    let r = CatalogEntry::new(name, alpha)?.build()?;
    let text = r.to_json();
    match &args.output {
        Some(path) => {
            fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            match fmt {
                Format::Text => println!("wrote {} ({} basis entries) to {}", name, r.dim(), path.display()),
                Format::Json => emit_json(&json!({"name": name.to_string(), "dim": r.dim(), "path": path.display().to_string()})),
            }
        }
        None => print!("{text}"),
    }
    Ok(EXIT_OK)
}

fn cmd_verify(path: &Path, axioms: &[String], mmax: u32, nmax: u32, dmax: u32, fmt: Format) -> Result<u8> {
    let r = load(path)?;
    let mut reports: Vec<(String, Report)> = Vec::new();
    for ax in axioms {
        let report = match ax.trim().to_ascii_uppercase().as_str() {
            "P" => r.check_p_axioms(mmax, nmax),
            "H" => r.check_h_axioms().map_err(|e| input_error(format!("H axioms need a physical algebra: {e}")))?,
            "C" => ReconstructedAlgebra::new(r.clone()).check_c_axioms(mmax, nmax, dmax),
            other => bail!(input_error(format!("unknown axiom family {other:?} (expected P, H or C)"))),
        };
        reports.push((ax.trim().to_ascii_uppercase(), report));
    }
    let ok = reports.iter().all(|(_, rep)| rep.passed());
    match fmt {
        Format::Text => {
            for (name, rep) in &reports {
                println!(
                    "[{}] checked {} failed {} {}",
                    name,
                    rep.total_checked(),
                    rep.total_failed(),
                    if rep.passed() { "PASS" } else { "FAIL" }
                );
                print!("{rep}");
            }
        }
        Format::Json => {
            let m: BTreeMap<&str, &Report> = reports.iter().map(|(n, r)| (n.as_str(), r)).collect();
            emit_json(&json!({"passed": ok, "reports": m}));
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_invariants(path: &Path, fmt: Format) -> Result<u8> {
    let r = load(path)?;
    r.physical_check().map_err(|e| input_error(e.to_string()))?;
    let sig = catalog::invariant_signature(&r)?;
    match fmt {
        Format::Text => println!("{sig}"),
        Format::Json => {
            let dims: BTreeMap<String, usize> = sig.dims.iter().map(|(w, d)| (w.to_string(), *d)).collect();
            emit_json(&json!({
                "dims": dims,
                "charpoly": sig.charpoly.as_ref().map(|p| p.to_string()),
                "simple": sig.simple,
            }));
        }
    }
    Ok(EXIT_OK)
}

fn cmd_simplicity(path: &Path, fmt: Format) -> Result<u8> {
    let r = load(path)?;
    r.physical_check().map_err(|e| input_error(e.to_string()))?;
    if r.involves_alpha() {
        let c = r.simplicity_condition()?;
        let condition = c.condition.to_string();
        match fmt {
            Format::Text => {
                if c.condition.is_constant() {
                    println!("{} for every α", if c.generic { "simple" } else { "not simple" });
                } else {
                    println!("simple if and only if {} ≠ 0", condition);
                }
            }
            Format::Json => emit_json(&json!({"symbolic": true, "generic": c.generic, "condition": condition})),
        }
        return Ok(if c.generic { EXIT_OK } else { EXIT_CHECK_FAILED });
    }
    let s = r.is_simple_physical()?;
    let witness = s.witness.as_ref().map(|w| r.show(w));
    match fmt {
        Format::Text => {
            if s.simple {
                println!("simple");
            } else {
                println!("not simple; {}", s.reason);
                if let Some(w) = &witness {
                    println!("witness ideal generator: {w}");
                }
            }
        }
        Format::Json => emit_json(&json!({"simple": s.simple, "reason": s.reason, "witness": witness})),
    }
    Ok(if s.simple { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn parse_terms(r: &ReducedAlgebra, terms: &[TermJson]) -> Result<Element> {
    let mut out = Element::zero();
    for t in terms {
        let k = r.index_of(&t.basis).map_err(|e| input_error(e.to_string()))?;
        let c: Scalar = parse_scalar(&t.coeff).map_err(|e| input_error(format!("coefficient {:?}: {e}", t.coeff)))?;
        out = out.add_scaled(&c, &Element::basis(k));
    }
    Ok(out)
}

/// Reads the map file: images of every basis vector of `a`, or of the V basis only.
fn load_map(a: &ReducedAlgebra, b: &ReducedAlgebra, path: &Path) -> Result<Vec<Element>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let raw: BTreeMap<String, Vec<TermJson>> =
        serde_json::from_str(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let mut images: BTreeMap<usize, Element> = BTreeMap::new();
    for (id, terms) in &raw {
        let k = a.index_of(id).map_err(|e| input_error(e.to_string()))?;
        images.insert(k, parse_terms(b, terms)?);
    }
    if images.len() == a.dim() {
        return Ok(images.into_values().collect());
    }
    let vs = a.v_indices();
    if images.keys().copied().eq(vs.iter().copied()) {
        let fv: Vec<Element> = images.into_values().collect();
        return Ok(catalog::extend_from_v(a, b, &fv)?);
    }
    Err(input_error("the map must give images of every basis vector, or of exactly the V basis vectors"))
}

fn cmd_isocheck(pa: &Path, pb: &Path, pmap: &Path, fmt: Format) -> Result<u8> {
    let a = load(pa)?;
    let b = load(pb)?;
    if a.dim() != b.dim() {
        return Err(input_error(format!("dimensions differ: {} vs {}", a.dim(), b.dim())));
    }
    let f = load_map(&a, &b, pmap)?;
    let defect = catalog::iso_defect(&a, &b, &f)?;
    match fmt {
        Format::Text => match &defect {
            None => println!("isomorphism"),
            Some(d) => println!("not an isomorphism: {d}"),
        },
        Format::Json => emit_json(&json!({"isomorphism": defect.is_none(), "defect": defect})),
    }
    Ok(if defect.is_none() { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn case_json(rep: &CaseReport) -> Value {
    let pt = |p: &[Scalar]| p.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    match &rep.solutions {
        SolutionSet::Unsat(c) => json!({"dim_v": rep.dim_v(), "unsat": true, "contradiction": c.to_string()}),
        SolutionSet::Points(_) => {
            let branches: Vec<Value> = rep
                .branches
                .iter()
                .map(|b| {
                    let algebras: Vec<Value> = b
                        .algebras
                        .iter()
                        .map(|k| {
                            json!({
                                "kernel": k.kernel_words,
                                "dims": k.weight_dims.iter().map(|(w, d)| (w.to_string(), *d)).collect::<BTreeMap<_, _>>(),
                                "simple": k.simple,
                            })
                        })
                        .collect();
                    json!({
                        "alpha": pt(&b.alpha),
                        "verdict": b.verdict.to_string(),
                        "kernels_examined": b.kernels_examined,
                        "algebras": algebras,
                    })
                })
                .collect();
            json!({"dim_v": rep.dim_v(), "unsat": false, "variables": rep.system.variables, "branches": branches})
        }
    }
}

fn cmd_exclude(dimv: usize, fmt: Format) -> Result<u8> {
    if dimv < 4 {
        return Err(input_error("the case analysis starts at dim V = 4"));
    }
    let rep = exclusion_sweep(dimv).map_err(|e| anyhow!(e))?;
    match fmt {
        Format::Text => print!("{rep}"),
        Format::Json => emit_json(&case_json(&rep)),
    }
    Ok(EXIT_OK)
}

fn cmd_catalog_list(fmt: Format) -> Result<u8> {
    let rows: Vec<(CatalogName, String, usize)> = CatalogName::ALL
        .iter()
        .map(|&n| {
            let dims = n.expected_dims();
            let total = dims.iter().map(|(_, d)| d).sum();
            let shown = dims.iter().map(|(w, d)| format!("{w}:{d}")).collect::<Vec<_>>().join(" ");
            (n, shown, total)
        })
        .collect();
    match fmt {
        Format::Text => {
            for (n, dims, total) in &rows {
                let param = if *n == CatalogName::N4Alpha { " [--alpha]" } else { "" };
                println!("{:<8} dim {:>2}  {}{}", n.to_string(), total, dims, param);
            }
        }
        Format::Json => {
            let v: Vec<Value> = rows
                .iter()
                .map(|(n, _, total)| {
                    let dims: BTreeMap<String, usize> = n.expected_dims().into_iter().map(|(w, d)| (w.to_string(), d)).collect();
                    json!({"name": n.to_string(), "dim": total, "dims": dims, "takes_alpha": *n == CatalogName::N4Alpha})
                })
                .collect();
            emit_json(&Value::Array(v));
        }
    }
    Ok(EXIT_OK)
}
