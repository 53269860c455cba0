//! Command-line driver: JSON space/algebra specs in, deterministic
//! JSON/text/chart reports out.
//!
//! Exit codes: 0 full success, 1 input or validation error, 2 a pipeline
//! returned an honest partial result (collapse refusal or undecided
//! extensions) — the partial report is still printed.

mod chart;

use chart::{render_chart, ChartOptions};
use clap::{Args, Parser, Subcommand};
use emss_core::json::{
    self, cohomology_to_json, dims_to_json, hh_to_json, loop_result_to_json, page_to_json,
    presentation_to_json, SCHEMA,
};
use emss_core::pipeline::{default_q_window, LoopOutcome, PipelineConfig};
use emss_core::{
    cohomology, AlgebraPresentation, FieldSpec, ModuleSpec, Window,
};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "emss-loop", about = "Loop homology via Hochschild cohomology and the Eilenberg-Moore spectral sequence", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Field characteristic (0 or a prime). Overrides/validates the JSON.
    #[arg(long = "char")]
    characteristic: Option<u64>,
    /// Internal degree window "lo:hi".
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
    /// Column bound for certification and reports.
    #[arg(long, default_value_t = 4)]
    pmax: u32,
    /// Output format.
    #[arg(long, default_value = "text", value_parser = ["text", "json", "chart"])]
    format: String,
    /// Write the report to a file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Certified Hochschild cohomology ring of an algebra.
    Hh {
        #[arg(long)]
        algebra: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Loop homology of a space given by its cohomology presentation.
    Loop {
        #[arg(long)]
        space: PathBuf,
        /// Collapse citation to use when the sparsity check refuses.
        #[arg(long = "assume-collapse")]
        assume_collapse: Option<String>,
        /// Dimension of the space (defaults to the top cohomology degree).
        #[arg(long = "dim-n")]
        dim_n: Option<i64>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Relative loop homology of N over M via a cohomology ring map.
    RelativeLoop {
        /// Cohomology of the target space M (the acting ring).
        #[arg(long)]
        ring: PathBuf,
        /// Space spec of the source N (cohomology + dim).
        #[arg(long)]
        space: PathBuf,
        /// Ring map images: {"images": {"x": [{"coeff":"1","monomial":{"x":1}}]}}.
        #[arg(long)]
        map: PathBuf,
        #[arg(long = "assume-collapse")]
        assume_collapse: Option<String>,
        #[arg(long = "dim-n")]
        dim_n: Option<i64>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// The E2-page only (absolute or relative).
    E2 {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        ring: Option<PathBuf>,
        #[arg(long)]
        map: Option<PathBuf>,
        #[arg(long = "dim-n")]
        dim_n: Option<i64>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Extension-problem reports for a loop pipeline, with audit traces.
    ExtCheck {
        #[arg(long)]
        space: PathBuf,
        #[arg(long = "assume-collapse")]
        assume_collapse: Option<String>,
        #[arg(long = "dim-n")]
        dim_n: Option<i64>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Koszul Tor of two modules over a polynomial ring.
    Tor {
        #[arg(long)]
        ring: PathBuf,
        /// Module JSON: {"coefficients": <algebra>, "images": {...}}.
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// ASCII dot chart of an E2-page.
    Chart {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        ring: Option<PathBuf>,
        #[arg(long)]
        map: Option<PathBuf>,
        #[arg(long = "dim-n")]
        dim_n: Option<i64>,
        /// Print monomial names beside the dots.
        #[arg(long)]
        labels: bool,
        /// Upper bound on chart cells.
        #[arg(long, default_value_t = 10_000)]
        cell_budget: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Compare the periodic-resolution and bar-complex dimensions.
    OracleCompare {
        #[arg(long)]
        algebra: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn parse_field(c: Option<u64>) -> Result<Option<FieldSpec>, String> {
    match c {
        None => Ok(None),
        Some(p) => FieldSpec::new(p).map(Some).map_err(|e| e.to_string()),
    }
}

fn parse_window(w: &Option<String>) -> Result<Option<Window>, String> {
    match w {
        None => Ok(None),
        Some(text) => {
            let (lo, hi) = text
                .split_once(':')
                .ok_or_else(|| format!("window `{text}` is not of the form lo:hi"))?;
            let lo: i64 = lo.trim().parse().map_err(|_| format!("bad window `{text}`"))?;
            let hi: i64 = hi.trim().parse().map_err(|_| format!("bad window `{text}`"))?;
            Window::new(lo, hi).map(Some).map_err(|e| e.to_string())
        }
    }
}

fn read(path: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(common: &CommonArgs, text: String) -> Result<(), String> {
    use std::io::Write;
    match &common.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => match writeln!(std::io::stdout(), "{text}") {
            Ok(()) => Ok(()),
            // A closed pipe (e.g. piping into `head`) is not an error.
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
            Err(e) => Err(e.to_string()),
        },
    }
}

fn space_dim(cohomology: &AlgebraPresentation, flag: Option<i64>) -> Result<i64, String> {
    match flag {
        Some(d) => Ok(d),
        None => cohomology
            .degree_support()
            .map(|w| w.hi)
            .map_err(|_| "cannot infer dim N for an infinite-dimensional cohomology; pass --dim-n".into()),
    }
}

fn build_module(
    ring_path: &PathBuf,
    space_path: &PathBuf,
    map_path: &PathBuf,
    field: Option<FieldSpec>,
) -> Result<(ModuleSpec, json::SpaceSpec), String> {
    let ring = json::parse_algebra(&read(ring_path)?, field).map_err(|e| e.to_string())?;
    let space = json::parse_space(&read(space_path)?, field).map_err(|e| e.to_string())?;
    let module = json::parse_module(&ring, &space.cohomology, &read(map_path)?)
        .map_err(|e| e.to_string())?;
    Ok((module, space))
}

fn pipeline_config(
    module: &ModuleSpec,
    common: &CommonArgs,
    citation: Option<String>,
) -> Result<PipelineConfig, String> {
    let q_window = match parse_window(&common.window)? {
        Some(w) => w,
        None => default_q_window(&module.algebra, &module.coefficients, common.pmax)
            .map_err(|e| e.to_string())?,
    };
    Ok(PipelineConfig::new(common.pmax, q_window).with_citation(citation))
}

fn print_loop_outcome(
    outcome: &LoopOutcome,
    common: &CommonArgs,
    command: &str,
) -> Result<ExitCode, String> {
    match outcome {
        LoopOutcome::Resolved { page, result } => {
            let complete = result.is_complete();
            let text = match common.format.as_str() {
                "json" => {
                    let mut v = loop_result_to_json(result);
                    v["command"] = json!(command);
                    v["spaces"] = json!({
                        "target": page.space_labels.0,
                        "source": page.space_labels.1,
                    });
                    serde_json::to_string_pretty(&v).unwrap()
                }
                "chart" => render_chart(
                    page.presentation(),
                    &ChartOptions {
                        p_max: common.pmax,
                        q_window: parse_window(&common.window)?,
                        labels: true,
                        cell_budget: 10_000,
                    },
                )?,
                _ => {
                    let mut s = String::new();
                    s.push_str(&format!("loop homology: {}\n", result.presentation));
                    for g in &result.presentation.generators {
                        s.push_str(&format!(
                            "  |{}| = {}{}\n",
                            g.name,
                            g.degree,
                            g.bidegree
                                .map(|b| format!("  (bidegree {b})"))
                                .unwrap_or_default()
                        ));
                    }
                    s.push_str(&format!(
                        "collapse: {:?} — {}\n",
                        result.collapse.kind, result.collapse.detail
                    ));
                    if !result.imported.is_empty() {
                        s.push_str(&format!(
                            "zero-column lift imports: {}\n",
                            result.imported.join(", ")
                        ));
                    }
                    s.push_str(&format!(
                        "extension checks: {} total, {} unresolved\n",
                        result.reports.len(),
                        result.unresolved.len()
                    ));
                    for r in &result.reports {
                        let resolution = result
                            .resolutions
                            .get(&r.relation)
                            .map(|k| format!("  resolved by {k:?}"))
                            .unwrap_or_default();
                        s.push_str(&format!(
                            "  {:10} {}  candidates: [{}]{}\n",
                            format!("{:?}", r.verdict),
                            r.relation,
                            r.candidates.join(", "),
                            resolution
                        ));
                    }
                    if !complete {
                        s.push_str(&format!("UNRESOLVED: {}\n", result.unresolved.join(", ")));
                    }
                    s
                }
            };
            emit(common, text)?;
            Ok(if complete { ExitCode::from(0) } else { ExitCode::from(2) })
        }
        LoopOutcome::CollapseRefused { page, refusal } => {
            let text = match common.format.as_str() {
                "json" => serde_json::to_string_pretty(&json!({
                    "schema": SCHEMA,
                    "command": command,
                    "collapse_refusal": refusal.reason,
                    "presentation": presentation_to_json(page.presentation()),
                    "hint": "re-run with --assume-collapse \"<citation>\"",
                }))
                .unwrap(),
                _ => format!(
                    "E2-page computed: {}\ncollapse not certified: {}\nre-run with --assume-collapse \"<citation>\"\n",
                    page.presentation(),
                    refusal.reason
                ),
            };
            emit(common, text)?;
            Ok(ExitCode::from(2))
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Hh { algebra, common } => {
            let field = parse_field(common.characteristic)?;
            let a = json::parse_algebra(&read(&algebra)?, field).map_err(|e| e.to_string())?;
            let w = parse_window(&common.window)?
                .map(Ok)
                .unwrap_or_else(|| default_q_window(&a, &a, common.pmax))
                .map_err(|e| e.to_string())?;
            let hh = emss_core::hh_self(&a, common.pmax, w).map_err(|e| e.to_string())?;
            let text = match common.format.as_str() {
                "json" => serde_json::to_string_pretty(&hh_to_json(&hh)).unwrap(),
                "chart" => render_chart(
                    &hh.presentation,
                    &ChartOptions {
                        p_max: common.pmax,
                        q_window: parse_window(&common.window)?,
                        labels: true,
                        cell_budget: 10_000,
                    },
                )?,
                _ => {
                    let mut s = format!("HH = {}\n", hh.presentation);
                    for g in &hh.presentation.generators {
                        s.push_str(&format!(
                            "  {} at bidegree {}, total degree {}\n",
                            g.name,
                            g.bidegree.unwrap(),
                            g.degree
                        ));
                    }
                    s.push_str(&format!(
                        "certified: {} ({} cells compared{})\n",
                        hh.certificate.method,
                        hh.certificate.cells_compared,
                        if hh.certificate.product_checks.is_empty() {
                            String::new()
                        } else {
                            format!(", product checks: {}", hh.certificate.product_checks.join("; "))
                        }
                    ));
                    s
                }
            };
            emit(&common, text)?;
            Ok(ExitCode::from(0))
        }
        Command::Loop {
            space,
            assume_collapse,
            dim_n,
            common,
        } => {
            let field = parse_field(common.characteristic)?;
            let spec = json::parse_space(&read(&space)?, field).map_err(|e| e.to_string())?;
            let dim = space_dim(&spec.cohomology, dim_n.or(spec.dim))?;
            let module = ModuleSpec::self_module(&spec.cohomology);
            let cfg = pipeline_config(&module, &common, assume_collapse)?;
            let outcome = emss_core::loop_homology(&spec.cohomology, dim, &cfg, &spec.name)
                .map_err(|e| e.to_string())?;
            print_loop_outcome(&outcome, &common, "loop")
        }
        Command::RelativeLoop {
            ring,
            space,
            map,
            assume_collapse,
            dim_n,
            common,
        } => {
            let field = parse_field(common.characteristic)?;
            let (module, spec) = build_module(&ring, &space, &map, field)?;
            let dim = space_dim(&spec.cohomology, dim_n.or(spec.dim))?;
            let cfg = pipeline_config(&module, &common, assume_collapse)?;
            let outcome = emss_core::relative_loop_homology(
                &module,
                dim,
                &cfg,
                ("target".into(), spec.name.clone()),
            )
            .map_err(|e| e.to_string())?;
            print_loop_outcome(&outcome, &common, "relative-loop")
        }
        Command::E2 {
            space,
            ring,
            map,
            dim_n,
            common,
        } => {
            let field = parse_field(common.characteristic)?;
            let (module, spec) = match (&ring, &map) {
                (Some(r), Some(m)) => build_module(r, &space, m, field)?,
                _ => {
                    let spec =
                        json::parse_space(&read(&space)?, field).map_err(|e| e.to_string())?;
                    (ModuleSpec::self_module(&spec.cohomology), spec)
                }
            };
            let dim = space_dim(&spec.cohomology, dim_n.or(spec.dim))?;
            let cfg = pipeline_config(&module, &common, None)?;
            let page = emss_core::build_e2(
                &module,
                dim,
                cfg.p_max,
                cfg.q_window,
                ("target".into(), spec.name.clone()),
            )
            .map_err(|e| e.to_string())?;
            let dims = page
                .dims(common.pmax, parse_window(&common.window)?)
                .map_err(|e| e.to_string())?;
            let text = match common.format.as_str() {
                "json" => serde_json::to_string_pretty(&page_to_json(&page, &dims)).unwrap(),
                "chart" => render_chart(
                    page.presentation(),
                    &ChartOptions {
                        p_max: common.pmax,
                        q_window: parse_window(&common.window)?,
                        labels: true,
                        cell_budget: 10_000,
                    },
                )?,
                _ => format!(
                    "E2 = {} (shift {})\ndims: {}\n",
                    page.presentation(),
                    page.shift,
                    dims_to_json(&dims)
                ),
            };
            emit(&common, text)?;
            Ok(ExitCode::from(0))
        }
        Command::ExtCheck {
            space,
            assume_collapse,
            dim_n,
            common,
        } => {
            let field = parse_field(common.characteristic)?;
            let spec = json::parse_space(&read(&space)?, field).map_err(|e| e.to_string())?;
            let dim = space_dim(&spec.cohomology, dim_n.or(spec.dim))?;
            let module = ModuleSpec::self_module(&spec.cohomology);
            let cfg = pipeline_config(&module, &common, assume_collapse)?;
            let outcome = emss_core::loop_homology(&spec.cohomology, dim, &cfg, &spec.name)
                .map_err(|e| e.to_string())?;
            match outcome {
                LoopOutcome::Resolved { result, .. } => {
                    let text = match common.format.as_str() {
                        "json" => serde_json::to_string_pretty(&json!({
                            "schema": SCHEMA,
                            "command": "ext-check",
                            "reports": serde_json::to_value(&result.reports).unwrap(),
                        }))
                        .unwrap(),
                        _ => {
                            let mut s = String::new();
                            for r in &result.reports {
                                s.push_str(&format!(
                                    "{}  [{}]\n",
                                    r.relation,
                                    format!("{:?}", r.verdict)
                                ));
                                for line in &r.trace {
                                    s.push_str(&format!("    {line}\n"));
                                }
                                if !r.candidates.is_empty() {
                                    s.push_str(&format!(
                                        "    candidates: {}\n",
                                        r.candidates.join(", ")
                                    ));
                                }
                            }
                            s
                        }
                    };
                    let complete = result.is_complete();
                    emit(&common, text)?;
                    Ok(if complete { ExitCode::from(0) } else { ExitCode::from(2) })
                }
                out @ LoopOutcome::CollapseRefused { .. } => {
                    print_loop_outcome(&out, &common, "ext-check")
                }
            }
        }
        Command::Tor {
            ring,
            left,
            right,
            common,
        } => {
            let field = parse_field(common.characteristic)?;
            let ring = json::parse_algebra(&read(&ring)?, field).map_err(|e| e.to_string())?;
            let parse_side = |path: &PathBuf| -> Result<ModuleSpec, String> {
                let text = read(path)?;
                let v: serde_json::Value =
                    serde_json::from_str(&text).map_err(|e| e.to_string())?;
                let coeff = json::parse_algebra(&v["coefficients"].to_string(), field)
                    .map_err(|e| e.to_string())?;
                let module = json::parse_module(
                    &ring,
                    &coeff,
                    &json!({ "images": v["images"] }).to_string(),
                )
                .map_err(|e| e.to_string())?;
                Ok(module)
            };
            let left = parse_side(&left)?;
            let right = parse_side(&right)?;
            let w = parse_window(&common.window)?
                .unwrap_or(Window::new(0, 16).map_err(|e| e.to_string())?);
            let cx = emss_core::koszul_tor_complex(&ring, &left, &right, w)
                .map_err(|e| e.to_string())?;
            let h = cohomology(&cx, ring.generators.len() as u32, None)
                .map_err(|e| e.to_string())?;
            let text = match common.format.as_str() {
                "json" => serde_json::to_string_pretty(&json!({
                    "schema": SCHEMA,
                    "command": "tor",
                    "dims": cohomology_to_json(&h),
                    "regraded": h.nonzero().map(|((s, q), d)| json!({
                        "homological": s, "internal": q, "degree": q - s as i64, "dim": d
                    })).collect::<Vec<_>>(),
                }))
                .unwrap(),
                _ => {
                    let mut s = String::from("Tor dims (homological, internal) -> dim:\n");
                    for ((hs, hq), d) in h.nonzero() {
                        s.push_str(&format!(
                            "  ({hs}, {hq}) -> {d}   [regraded degree {}]\n",
                            hq - hs as i64
                        ));
                    }
                    s
                }
            };
            emit(&common, text)?;
            Ok(ExitCode::from(0))
        }
        Command::Chart {
            space,
            ring,
            map,
            dim_n,
            labels,
            cell_budget,
            common,
        } => {
            let field = parse_field(common.characteristic)?;
            let (module, spec) = match (&ring, &map) {
                (Some(r), Some(m)) => build_module(r, &space, m, field)?,
                _ => {
                    let spec =
                        json::parse_space(&read(&space)?, field).map_err(|e| e.to_string())?;
                    (ModuleSpec::self_module(&spec.cohomology), spec)
                }
            };
            let dim = space_dim(&spec.cohomology, dim_n.or(spec.dim))?;
            let cfg = pipeline_config(&module, &common, None)?;
            let page = emss_core::build_e2(
                &module,
                dim,
                cfg.p_max,
                cfg.q_window,
                ("target".into(), spec.name.clone()),
            )
            .map_err(|e| e.to_string())?;
            let text = render_chart(
                page.presentation(),
                &ChartOptions {
                    p_max: common.pmax,
                    q_window: parse_window(&common.window)?,
                    labels,
                    cell_budget,
                },
            )?;
            emit(&common, text)?;
            Ok(ExitCode::from(0))
        }
        Command::OracleCompare { algebra, common } => {
            let field = parse_field(common.characteristic)?;
            let a = json::parse_algebra(&read(&algebra)?, field).map_err(|e| e.to_string())?;
            let module = ModuleSpec::self_module(&a);
            let g = a
                .generators
                .first()
                .ok_or("oracle-compare needs a single-generator truncated algebra")?;
            let bound = g
                .bound
                .ok_or("oracle-compare needs a bounded generator")?;
            let per = emss_core::truncated_hochschild_complex(
                g.degree,
                bound,
                a.field,
                &module,
                common.pmax,
            )
            .map_err(|e| e.to_string())?;
            let hp = cohomology(&per, common.pmax, None).map_err(|e| e.to_string())?;
            let bar = emss_core::bar_complex_truncated(&module, common.pmax, None)
                .map_err(|e| e.to_string())?;
            let hb = cohomology(&bar, common.pmax, None).map_err(|e| e.to_string())?;
            let mut mismatches = Vec::new();
            for ((s, q), d) in hp.nonzero() {
                if hb.dim(s, q) != d {
                    mismatches.push(((s, q), d, hb.dim(s, q)));
                }
            }
            for ((s, q), d) in hb.nonzero() {
                if hp.dim(s, q) != d {
                    mismatches.push(((s, q), hp.dim(s, q), d));
                }
            }
            if mismatches.is_empty() {
                emit(
                    &common,
                    format!(
                        "dims equal on window (p ≤ {}, {} periodic cells)",
                        common.pmax,
                        hp.nonzero().count()
                    ),
                )?;
                Ok(ExitCode::from(0))
            } else {
                emit(&common, format!("MISMATCH: {mismatches:?}"))?;
                Ok(ExitCode::from(1))
            }
        }
    }
}
