//! Command-line interface: enumeration, flip graphs, shelling orders,
//! verification and sphere certificates.
//!
//! Stdout carries exactly one document per run; diagnostics and the run
//! manifest go to stderr. Exit codes: 0 success, 1 verification failure,
//! 2 usage or input error, 3 cap exceeded.

use std::fs;
use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use quasiarc::complex::{facets_by_flip_bfs, Complex, Facet};
use quasiarc::construct::shell_surface;
use quasiarc::dyck;
use quasiarc::io::{
    census_doc, complex_doc, dyck_csv, parse_arc_list, shelling_doc, shelling_from_doc,
    RunManifest, ShellingDoc,
};
use quasiarc::shelling::{
    verify_shelling_mutation, verify_shelling_topological, MutationVerdict, TopoVerdict,
};
use quasiarc::{Error, FlipGraph, QuasiArc, Surface};

/// Default cap on marked points for Möbius enumeration.
const DEFAULT_MAX_N: usize = 9;
const FACET_CAP_VAR: &str = "QUASIARC_MAX_FACETS";
const DEFAULT_FACET_CAP: usize = 1_000_000;

#[derive(Parser)]
#[command(name = "quasiarc", version, about = "Quasi-arc complexes: enumeration, shellings and sphere certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Write the document to a file instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Output format.
    #[arg(long, default_value = "json")]
    format: String,
    /// Override the enumeration size cap.
    #[arg(long)]
    max_n: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// List all quasi-arcs of a surface.
    Enum {
        surface: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Enumerate all facets (quasi-triangulations).
    Facets {
        surface: String,
        #[command(flatten)]
        output: OutputArgs,
        /// Enumerate by flip closure from this seed facet instead of by
        /// clique search (arc list, e.g. "C(1,1),P(2,1)").
        #[arg(long)]
        seed_facet: Option<String>,
    },
    /// Build the flip graph.
    Flipgraph {
        surface: String,
        #[command(flatten)]
        output: OutputArgs,
        /// Emit DOT instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Construct the block shelling order of the surface.
    Shell {
        surface: String,
        #[command(flatten)]
        output: OutputArgs,
        /// Run both verifiers on the constructed order.
        #[arg(long)]
        verify: bool,
    },
    /// Run the full sphere-certificate pipeline.
    Certify {
        surface: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Export the one-diagonal block to Dyck paths (CSV).
    Dyck {
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Verify an externally supplied order file against a surface.
    Verify {
        file: std::path::PathBuf,
        #[arg(long)]
        surface: String,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn main() {
    let cli = Cli::parse();
    let started = Instant::now();
    let mut manifest = RunManifest {
        command: std::env::args().collect::<Vec<_>>().join(" "),
        surface: None,
        arc_count: None,
        facet_count: None,
        edge_count: None,
        verdicts: None,
        wall_time_ms: 0,
        version: quasiarc::VERSION.to_string(),
    };
    let code = match run(&cli.command, &mut manifest) {
        Ok(code) => code,
        Err(e) => {
            let code = match &e {
                Error::CapExceeded(_) => 3,
                _ => 2,
            };
            eprintln!("error: {e}");
            code
        }
    };
    manifest.wall_time_ms = started.elapsed().as_millis();
    if let Ok(json) = serde_json::to_string(&manifest) {
        eprintln!("{json}");
    }
    std::process::exit(code);
}

fn run(command: &Command, manifest: &mut RunManifest) -> Result<i32, Error> {
    match command {
        Command::Enum { surface, output } => {
            let s = parse_surface(surface, output)?;
            manifest.surface = Some(s.to_string());
            let doc = census_doc(&s);
            manifest.arc_count = Some(doc.count);
            emit(output, &serde_json::to_string(&doc)?)?;
            Ok(0)
        }
        Command::Facets { surface, output, seed_facet } => {
            let s = parse_surface(surface, output)?;
            manifest.surface = Some(s.to_string());
            let complex = match seed_facet {
                None => build_complex(s)?,
                Some(seed) => {
                    let arcs = parse_arc_list(seed)?;
                    let facets = facets_by_flip_bfs(s, &Facet::new(arcs))?;
                    check_facet_cap(facets.len())?;
                    Complex::from_facets(quasiarc::Census::new(s)?, &facets)?
                }
            };
            check_facet_cap(complex.facet_count())?;
            manifest.arc_count = Some(complex.ground().len());
            manifest.facet_count = Some(complex.facet_count());
            emit(output, &serde_json::to_string(&complex_doc(&complex))?)?;
            Ok(0)
        }
        Command::Flipgraph { surface, output, dot } => {
            let s = parse_surface(surface, output)?;
            manifest.surface = Some(s.to_string());
            let graph = FlipGraph::build(s)?;
            check_facet_cap(graph.vertex_count())?;
            manifest.facet_count = Some(graph.vertex_count());
            manifest.edge_count = Some(graph.edge_count());
            if *dot || output.format == "dot" {
                emit(output, graph.to_dot().trim_end())?;
            } else {
                let doc = serde_json::json!({
                    "surface": s.to_string(),
                    "vertices": graph.vertex_count(),
                    "edges": graph.edge_count(),
                    "connected": graph.is_connected(),
                    "degree_regular": graph.is_regular_of_degree(s.rank()),
                });
                emit(output, &doc.to_string())?;
            }
            Ok(0)
        }
        Command::Shell { surface, output, verify } => {
            let s = parse_surface(surface, output)?;
            manifest.surface = Some(s.to_string());
            let order = shell_surface(&s)?;
            check_facet_cap(order.len())?;
            manifest.facet_count = Some(order.len());
            let mut code = 0;
            if *verify {
                let topo = verify_shelling_topological(&order)?;
                let muta = verify_shelling_mutation(&order)?;
                manifest.verdicts = Some(format!(
                    "topological={} mutation={}",
                    verdict_str(&topo),
                    mutation_str(&muta)
                ));
                if !topo.is_ok() || !muta.is_ok() {
                    report_failure(&topo, &muta)?;
                    code = 1;
                }
            }
            emit(output, &serde_json::to_string(&shelling_doc(&order))?)?;
            Ok(code)
        }
        Command::Certify { surface, output } => {
            let s = parse_surface(surface, output)?;
            manifest.surface = Some(s.to_string());
            let complex = build_complex(s)?;
            check_facet_cap(complex.facet_count())?;
            let order = shell_surface(&s)?;
            let cert = complex.certify_sphere(&order)?;
            manifest.facet_count = Some(cert.facet_count);
            manifest.verdicts = Some(if cert.granted {
                "certificate granted".to_string()
            } else {
                "certificate refused".to_string()
            });
            emit(output, &serde_json::to_string(&cert)?)?;
            Ok(if cert.granted { 0 } else { 1 })
        }
        Command::Dyck { n, output } => {
            let rows = dyck_rows(*n)?;
            manifest.facet_count = Some(rows.len());
            let csv = dyck_csv(*n, &rows);
            emit(output, csv.trim_end())?;
            Ok(0)
        }
        Command::Verify { file, surface, output } => {
            let s = parse_surface(surface, output)?;
            manifest.surface = Some(s.to_string());
            let text = fs::read_to_string(file)?;
            let doc: ShellingDoc = serde_json::from_str(&text)?;
            let order = shelling_from_doc(&doc)?;
            if order.surface != s {
                return Err(Error::OrderMismatch(format!(
                    "file is for {}, requested {}",
                    order.surface, s
                )));
            }
            let topo = verify_shelling_topological(&order)?;
            let muta = verify_shelling_mutation(&order)?;
            manifest.facet_count = Some(order.len());
            manifest.verdicts = Some(format!(
                "topological={} mutation={}",
                verdict_str(&topo),
                mutation_str(&muta)
            ));
            let ok = topo.is_ok() && muta.is_ok();
            let doc = serde_json::json!({
                "surface": s.to_string(),
                "facets": order.len(),
                "shelling": ok,
            });
            emit(output, &doc.to_string())?;
            if ok {
                Ok(0)
            } else {
                report_failure(&topo, &muta)?;
                Ok(1)
            }
        }
    }
}

fn dyck_rows(
    n: usize,
) -> Result<Vec<(Facet, quasiarc::construct::Half, dyck::DyckPath)>, Error> {
    if n % 2 != 0 || n < 2 {
        return Err(Error::Parity(format!("dyck export needs even n >= 2, got {n}")));
    }
    let s = Surface::mobius(n)?;
    let k = n / 2;
    let diag = QuasiArc::cross(1, k + 1);
    let complex = Complex::build(s)?;
    let mut rows = Vec::new();
    for f in complex.facets() {
        let in_block = f.contains(&diag)
            && f.arcs().iter().all(|a| a.is_cross())
            && (2..=k).all(|i| !f.contains(&QuasiArc::cross(i, i + k)));
        if in_block {
            let (h, p) = dyck::to_dyck(n, &f)?;
            rows.push((f, h, p));
        }
    }
    Ok(rows)
}

fn parse_surface(text: &str, output: &OutputArgs) -> Result<Surface, Error> {
    let s: Surface = text.parse()?;
    let cap = output.max_n.unwrap_or(DEFAULT_MAX_N);
    let limit = match s.kind() {
        quasiarc::SurfaceKind::Mobius => cap,
        quasiarc::SurfaceKind::Cylinder => cap + 2,
        quasiarc::SurfaceKind::Polygon => cap + 5,
    };
    if s.points() > limit {
        return Err(Error::CapExceeded(format!(
            "{s} exceeds the size cap {limit} (override with --max-n)"
        )));
    }
    Ok(s)
}

fn build_complex(s: Surface) -> Result<Complex, Error> {
    Complex::build(s)
}

fn check_facet_cap(count: usize) -> Result<(), Error> {
    let cap = std::env::var(FACET_CAP_VAR)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_FACET_CAP);
    if count > cap {
        return Err(Error::CapExceeded(format!(
            "{count} facets exceed the cap {cap} (set {FACET_CAP_VAR})"
        )));
    }
    Ok(())
}

fn verdict_str(v: &TopoVerdict) -> String {
    match v {
        TopoVerdict::Ok => "ok".to_string(),
        TopoVerdict::Failure { k, defect } => format!("failure(k={k},{defect:?})"),
    }
}

fn mutation_str(v: &MutationVerdict) -> String {
    match v {
        MutationVerdict::Ok => "ok".to_string(),
        MutationVerdict::Failure { k, j } => format!("failure(k={k},j={j})"),
    }
}

fn report_failure(topo: &TopoVerdict, muta: &MutationVerdict) -> Result<(), Error> {
    let detail = match (topo, muta) {
        (TopoVerdict::Failure { k, defect }, MutationVerdict::Failure { k: mk, j }) => {
            serde_json::json!({"k": k, "defect": format!("{defect:?}"), "mutation_k": mk, "mutation_j": j})
        }
        (TopoVerdict::Failure { k, defect }, _) => {
            serde_json::json!({"k": k, "defect": format!("{defect:?}")})
        }
        (_, MutationVerdict::Failure { k, j }) => serde_json::json!({"k": k, "j": j}),
        _ => serde_json::json!({}),
    };
    eprintln!("{detail}");
    Ok(())
}

fn emit(output: &OutputArgs, doc: &str) -> Result<(), Error> {
    let mut text = doc.to_string();
    text.push('\n');
    match &output.out {
        Some(path) => fs::write(path, text)?,
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}
