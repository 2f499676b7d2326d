use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde::Serialize;

use ribbonpoly::brauer::gram_det;
use ribbonpoly::classical::{flow_polynomial, krushkal_polynomial, s_polynomial, virtual_chromatic, Engine};
use ribbonpoly::fixtures;
use ribbonpoly::penrose::{cellular_embedding_poly, planarity_by_flips, w_sl_brauer, w_sl_extended, w_so};
use ribbonpoly::report::{input_hash, oracle_check, InvariantReport};
use ribbonpoly::ribbon::enumerate::cubic_multigraphs;
use ribbonpoly::spatial::{
    golden_identity_check, golden_identity_sides, mirror, nonclassicality_report, obstruction_integral, obstruction_z2,
    special_evaluation_checks, yamada, SpatialDiagram, YamadaVariant,
};
use ribbonpoly::vgf::{parse_vgf, VgfDocument};

const THREADS_VAR: &str = "RIBBONPOLY_THREADS";
/// Cubic enumeration beyond this many vertices needs `--allow-long`.
const ENUMERATE_SHORT_LIMIT: usize = 10;

#[derive(Parser)]
#[command(name = "ribbonpoly", version, about = "Exact polynomial invariants of virtual and spatial graphs")]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// A polynomial invariant of the map in a .vgf file.
    Invariant {
        #[arg(long, value_enum)]
        poly: Poly,
        /// Evaluation route, where more than one exists.
        #[arg(long, value_enum)]
        engine: Option<EngineArg>,
        file: PathBuf,
    },
    /// R^S or R^F of a spatial diagram.
    Yamada {
        #[arg(long, value_enum, default_value = "s")]
        variant: VariantArg,
        /// Report the polynomial of the mirror image (q ↔ q^-1).
        #[arg(long)]
        mirror: bool,
        file: PathBuf,
    },
    /// Gramian of the pairing on fixed-point-free involutions of 2n points.
    Gramian {
        #[arg(long)]
        n: usize,
        /// Print only the determinant.
        #[arg(long)]
        det: bool,
        #[arg(long)]
        allow_long: bool,
    },
    /// Compare R^S and R^F to detect non-classical diagrams.
    Classify { file: PathBuf },
    /// Check the golden identity on a cubic diagram.
    Golden {
        /// Evaluate both sides even when the diagram is not classical.
        #[arg(long)]
        allow_virtual: bool,
        file: PathBuf,
    },
    /// The crossing obstruction class, with special-value checks.
    Obstruction {
        /// Use integer instead of mod-2 coefficients.
        #[arg(long)]
        integral: bool,
        file: PathBuf,
    },
    /// Cross-engine oracle on the given files, or on every bundled fixture.
    Check { files: Vec<PathBuf> },
    /// Stream cellular embedding polynomials of connected cubic graphs.
    Enumerate {
        #[arg(long, required = true)]
        cubic: bool,
        #[arg(long)]
        max_vertices: usize,
        #[arg(long)]
        allow_long: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Poly {
    S,
    F,
    Krushkal,
    Chromatic,
    Wso,
    Wsl,
    Cemb,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    StateSum,
    Recursive,
    Brauer,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::StateSum => Engine::StateSum,
            EngineArg::Recursive => Engine::Recursive,
            EngineArg::Brauer => Engine::Brauer,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    S,
    F,
}

/// Errors in the input rather than in the computation.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct UsageError(String);

fn read_document(path: &Path) -> Result<VgfDocument> {
    let text = std::fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    parse_vgf(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())).into())
}

fn read_diagram(path: &Path) -> Result<(VgfDocument, SpatialDiagram)> {
    let doc = read_document(path)?;
    let d = SpatialDiagram::from_document(&doc).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    Ok((doc, d))
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) -> Result<()> {
    if json {
        println!("{}", serde_json::to_string_pretty(value)?);
    } else {
        print!("{}", text());
    }
    Ok(())
}

fn invariant(json: bool, poly: Poly, engine: Option<EngineArg>, file: &Path) -> Result<()> {
    let doc = read_document(file)?;
    let m = &doc.map;
    let mut report = InvariantReport::new(&doc);
    let engine_or = |default: Engine| engine.map(Engine::from).unwrap_or(default);
    match poly {
        Poly::S => {
            let e = engine_or(Engine::StateSum);
            report.push("S", &s_polynomial(m, e)?, e.name());
        }
        Poly::F => {
            let e = engine_or(Engine::StateSum);
            report.push("F", &flow_polynomial(m, e)?, e.name());
        }
        Poly::Krushkal => {
            let k = krushkal_polynomial(m)?;
            if json {
                report.verdict("krushkal", &k);
            } else {
                println!("{k}");
                return Ok(());
            }
        }
        Poly::Chromatic => {
            report.push("chromatic", &virtual_chromatic(m)?, Engine::Recursive.name());
        }
        Poly::Wso => {
            report.push("W_so", &w_so(m)?, "brauer");
        }
        Poly::Wsl => match engine {
            Some(EngineArg::Brauer) => {
                report.push("W_sl", &w_sl_brauer(m)?, "brauer");
            }
            Some(_) => bail!(UsageError("W_sl engines: brauer, or the default signed extension".into())),
            None => {
                report.push("W_sl", &w_sl_extended(m)?, "signed-extension");
            }
        },
        Poly::Cemb => {
            report.push("C", &cellular_embedding_poly(m)?, "flip-sum");
        }
    }
    emit(json, &report, || report.render_text())
}

fn run(cli: Cli) -> Result<()> {
    let json = cli.json;
    match cli.command {
        Command::Invariant { poly, engine, file } => invariant(json, poly, engine, &file),
        Command::Yamada { variant, mirror: flip, file } => {
            let (doc, d) = read_diagram(&file)?;
            let v = match variant {
                VariantArg::S => YamadaVariant::S,
                VariantArg::F => YamadaVariant::F,
            };
            let mut p = yamada(&d, v)?;
            if flip {
                p = mirror(&p);
            }
            let mut report = InvariantReport::new(&doc);
            let name = if v == YamadaVariant::S { "R^S" } else { "R^F" };
            report.push(name, &p, "crossing-expansion+contraction-deletion");
            emit(json, &report, || report.render_text())
        }
        Command::Gramian { n, det, allow_long } => {
            if !(2..=6).contains(&n) {
                bail!(UsageError(format!("--n must be between 2 and 6, got {n}")));
            }
            if n == 6 && !allow_long {
                bail!(UsageError("n = 6 is long-running; pass --allow-long".into()));
            }
            let r = gram_det(n, allow_long)?;
            emit(json, &r, || {
                if det {
                    format!("{}\n", r.determinant)
                } else {
                    let mut s = format!("n = {n}, basis size {}\n", r.basis.len());
                    for (b, row) in r.basis.iter().zip(&r.matrix) {
                        s.push_str(&format!("{b}: [{}]\n", row.join(", ")));
                    }
                    s.push_str(&format!("det = {}\nfactored = {}\n", r.determinant, r.factored));
                    s
                }
            })
        }
        Command::Classify { file } => {
            let (doc, d) = read_diagram(&file)?;
            let r = nonclassicality_report(&d)?;
            let mut report = InvariantReport::new(&doc);
            report.push("R^S", &yamada(&d, YamadaVariant::S)?, "crossing-expansion+contraction-deletion");
            report.push("R^F", &yamada(&d, YamadaVariant::F)?, "crossing-expansion+contraction-deletion");
            report.verdict("verdict", &r.verdict);
            report.verdict("cubic", r.cubic);
            if r.cubic {
                report.verdict("pliable_obstructed", r.pliable_obstructed);
            }
            emit(json, &report, || report.render_text())
        }
        Command::Golden { allow_virtual, file } => {
            let (doc, d) = read_diagram(&file)?;
            let r = if allow_virtual { golden_identity_sides(&d)? } else { golden_identity_check(&d)? };
            #[derive(Serialize)]
            struct Out<'a> {
                input_hash: String,
                golden: &'a ribbonpoly::spatial::GoldenReport,
            }
            emit(json, &Out { input_hash: input_hash(&doc), golden: &r }, || {
                format!(
                    "edges: {}\nclassical: {}\nlhs: {}\nrhs: {}\nholds: {}\n",
                    r.edges, r.classical, r.lhs, r.rhs, r.holds
                )
            })
        }
        Command::Obstruction { integral, file } => {
            let (doc, d) = read_diagram(&file)?;
            let class = if integral { obstruction_integral(&d) } else { obstruction_z2(&d) };
            let special = special_evaluation_checks(&d)?;
            #[derive(Serialize)]
            struct Out<'a> {
                input_hash: String,
                class: String,
                obstruction: &'a ribbonpoly::spatial::ObstructionClass,
                special_values: &'a ribbonpoly::spatial::SpecialEvaluationReport,
            }
            let out = Out {
                input_hash: input_hash(&doc),
                class: class.to_string(),
                obstruction: &class,
                special_values: &special,
            };
            emit(json, &out, || {
                let rf = match special.rf_at_1_holds {
                    Some(b) => b.to_string(),
                    None => "not applicable".into(),
                };
                format!(
                    "class: {class}\nR^S(-1) = S(0) = F(0) = R^F(-1): {}\nR^S(1) = S(4): {}\nR^F(1) = F(4): {rf}\n",
                    special.minus_one_holds, special.rs_at_1_holds
                )
            })
        }
        Command::Check { files } => check(json, &files),
        Command::Enumerate { cubic: _, max_vertices, allow_long } => enumerate(json, max_vertices, allow_long),
    }
}

fn check(json: bool, files: &[PathBuf]) -> Result<()> {
    let inputs: Vec<(String, VgfDocument)> = if files.is_empty() {
        fixtures::ALL.iter().map(|(n, t)| (n.to_string(), fixtures::document(t))).collect()
    } else {
        files.iter().map(|p| Ok((p.display().to_string(), read_document(p)?))).collect::<Result<_>>()?
    };
    #[derive(Serialize)]
    struct Row {
        name: String,
        input_hash: String,
        oracle: ribbonpoly::report::OracleReport,
        #[serde(skip_serializing_if = "Option::is_none")]
        spatial: Option<ribbonpoly::spatial::SpecialEvaluationReport>,
        pass: bool,
    }
    let mut rows = Vec::new();
    for (name, doc) in inputs {
        let oracle = oracle_check(&doc.map).with_context(|| name.clone())?;
        let spatial = if doc.crossings.is_empty() {
            None
        } else {
            let d = SpatialDiagram::from_document(&doc).map_err(|e| UsageError(format!("{name}: {e}")))?;
            Some(special_evaluation_checks(&d)?)
        };
        let pass = oracle.all_hold() && spatial.as_ref().is_none_or(|s| s.all_hold());
        rows.push(Row { name, input_hash: input_hash(&doc), oracle, spatial, pass });
    }
    let failed = rows.iter().filter(|r| !r.pass).count();
    emit(json, &rows, || {
        let mut s = String::new();
        for r in &rows {
            s.push_str(&format!("{} {}\n", if r.pass { "PASS" } else { "FAIL" }, r.name));
        }
        s
    })?;
    if failed > 0 {
        bail!("{failed} input(s) failed the oracle");
    }
    Ok(())
}

fn enumerate(json: bool, max_vertices: usize, allow_long: bool) -> Result<()> {
    if max_vertices > ENUMERATE_SHORT_LIMIT && !allow_long {
        bail!(UsageError(format!("more than {ENUMERATE_SHORT_LIMIT} vertices is long-running; pass --allow-long")));
    }
    #[derive(Serialize)]
    struct Line {
        vertices: usize,
        index: usize,
        map: String,
        cemb: String,
        vanishes_at_1: bool,
        planar: bool,
        coherent: bool,
    }
    let mut incoherent = 0;
    for n in (2..=max_vertices).step_by(2) {
        for (index, m) in cubic_multigraphs(n).into_iter().enumerate() {
            let c = cellular_embedding_poly(&m)?;
            let at1 = c.eval_int(1)?;
            let at0 = c.eval_int(0)?;
            let planar = planarity_by_flips(&m)?.planar_somehow;
            let coherent = !at0.is_zero() == planar || m.has_bridge();
            if !coherent || !at1.is_zero() {
                incoherent += 1;
            }
            let line = Line {
                vertices: n,
                index,
                map: ribbonpoly::vgf::serialize_vgf(&m, &[]),
                cemb: c.to_string(),
                vanishes_at_1: at1.is_zero(),
                planar,
                coherent,
            };
            if json {
                println!("{}", serde_json::to_string(&line)?);
            } else {
                println!("{n}\t{index}\t{}\tplanar={}\t{}", line.cemb, line.planar, line.map);
            }
        }
    }
    if incoherent > 0 {
        bail!("{incoherent} graph(s) failed the C(1) = 0 or planarity coherence check");
    }
    Ok(())
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var(THREADS_VAR) {
        let n: usize =
            v.parse().map_err(|_| UsageError(format!("{THREADS_VAR} must be a positive integer, got {v:?}")))?;
        if n == 0 {
            bail!(UsageError(format!("{THREADS_VAR} must be positive")));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| anyhow!(e))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|_| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
