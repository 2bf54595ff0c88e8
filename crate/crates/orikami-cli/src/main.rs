//! Command line front end: validate and fold foldings, identify folded
//! loops, run the torus and stick-diagram constructions, and export crease
//! patterns and folded meshes.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use orikami::folding::{fold_loop, validate_folding, Folding, PaperLoop, SpatialPolyline};
use orikami::generators::{torus_folding, TorusParams};
use orikami::geometry::generic_direction;
use orikami::knotid::{diagram_from_projection, report_for_diagram, Diagram, KnotReport};
use orikami::{analysis, construct, io, Result, Tol};

#[derive(Parser)]
#[command(name = "orikami", version, about = "Foldings of the unit square and the knots they tie")]
struct Cli {
    /// Scale the geometric and isometry tolerances jointly by this factor.
    #[arg(long, global = true, default_value_t = 1.0)]
    tolerance: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a folding file and print its validation report.
    Validate {
        folding: PathBuf,
        /// Also flag creases whose two face maps coincide.
        #[arg(long)]
        strict: bool,
    },
    /// Fold a loop through a folding and write the spatial polyline.
    Fold {
        #[arg(long)]
        folding: PathBuf,
        #[arg(long = "loop")]
        loop_: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Identify the knot traced by a folded polyline.
    Identify {
        polyline: PathBuf,
        /// Projection seed (default 0, or the ORIKAMI_SEED variable).
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Realize a stick diagram as a cone folding plus loop, and certify it.
    Construct {
        #[arg(long)]
        sticks: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Build the two-crease folding tying the (2, 2n+3) torus knot.
    Torus {
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: PathBuf,
        /// Projection seed for the certification report.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Classify the self-contacts of a folding's image.
    Analyze { folding: PathBuf },
    /// Draw the crease pattern (and optionally a loop) as SVG.
    ExportSvg {
        folding: PathBuf,
        #[arg(long = "loop")]
        loop_: Option<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Write the folded faces (and optionally a folded loop) as an OBJ mesh.
    ExportObj {
        folding: PathBuf,
        #[arg(long = "loop")]
        loop_: Option<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn seed_or_env(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("ORIKAMI_SEED")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(0)
}

/// Certification of one folded loop, as written to report files and stdout.
#[derive(Serialize)]
struct ReportFile {
    format: String,
    crossing_count_raw: usize,
    crossing_count: usize,
    writhe: i64,
    determinant: u64,
    alexander: orikami::Laurent,
    jones: orikami::Laurent,
    invariants_trivial: bool,
    direction: [f64; 3],
    /// PD code of the reduced diagram, one X[a,b,c,d] entry per crossing.
    pd: Vec<String>,
}

fn report_file(report: KnotReport, diagram: &Diagram) -> ReportFile {
    let pd = diagram
        .simplified()
        .pd_code()
        .iter()
        .map(|x| format!("X[{},{},{},{}]", x[0], x[1], x[2], x[3]))
        .collect();
    ReportFile {
        format: io::FORMAT.into(),
        crossing_count_raw: report.crossing_count_raw,
        crossing_count: report.crossing_count,
        writhe: report.writhe,
        determinant: report.determinant,
        alexander: report.alexander,
        jones: report.jones,
        invariants_trivial: report.invariants_trivial,
        direction: report.direction,
        pd,
    }
}

fn certify_polyline(pl: &SpatialPolyline<f64>, seed: u64, tol: &Tol) -> Result<ReportFile> {
    let dir = generic_direction(&pl.waypoints, seed, tol.geom)?;
    let d = diagram_from_projection(&pl.waypoints, dir, tol.geom)?;
    let report = report_for_diagram(&d, [dir.x, dir.y, dir.z])?;
    Ok(report_file(report, &d))
}

fn write_triple(
    dir: &Path,
    folding: &Folding<f64>,
    lp: &PaperLoop<f64>,
    seed: u64,
    tol: &Tol,
) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    io::write_folding(&dir.join("folding.json"), folding)?;
    io::write_loop(&dir.join("loop.json"), lp)?;
    let image = fold_loop(folding, lp, tol)?;
    let report = certify_polyline(&image, seed, tol)?;
    io::write_json(&dir.join("report.json"), &report)
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| orikami::Error::Format(e.to_string()))?;
    use std::io::Write;
    match writeln!(std::io::stdout().lock(), "{text}") {
        // Quietly stop when the reader has gone away (e.g. piped to head).
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => other.map_err(Into::into),
    }
}

fn svg_point(p: orikami::Vec2) -> (f64, f64) {
    (1000.0 * p.x, 1000.0 * (1.0 - p.y))
}

fn export_svg(folding: &Folding<f64>, lp: Option<&PaperLoop<f64>>, out: &Path) -> Result<()> {
    let mut body = String::new();
    body.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\">\n");
    body.push_str("  <rect x=\"0\" y=\"0\" width=\"1000\" height=\"1000\" fill=\"white\" stroke=\"black\" stroke-width=\"2\"/>\n");
    for &(a, b) in &folding.pattern.creases {
        let (x1, y1) = svg_point(folding.pattern.vertices[a]);
        let (x2, y2) = svg_point(folding.pattern.vertices[b]);
        body.push_str(&format!(
            "  <line x1=\"{x1:.3}\" y1=\"{y1:.3}\" x2=\"{x2:.3}\" y2=\"{y2:.3}\" stroke=\"black\" stroke-width=\"2\"/>\n"
        ));
    }
    if let Some(lp) = lp {
        let pts: Vec<String> = lp
            .waypoints
            .iter()
            .map(|&p| {
                let (x, y) = svg_point(p);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        body.push_str(&format!(
            "  <polygon points=\"{}\" fill=\"none\" stroke=\"crimson\" stroke-width=\"2\" stroke-dasharray=\"12 8\"/>\n",
            pts.join(" ")
        ));
    }
    body.push_str("</svg>\n");
    atomic_write(out, body.as_bytes())
}

fn export_obj(
    folding: &Folding<f64>,
    lp: Option<&PaperLoop<f64>>,
    tol: &Tol,
    out: &Path,
) -> Result<()> {
    let mut body = String::from("o folded-square\n");
    let mut count = 0usize;
    for (fi, face) in folding.pattern.faces.iter().enumerate() {
        let map = folding.face_maps[fi];
        for &k in face {
            let q = map.apply(folding.pattern.vertices[k]);
            body.push_str(&format!("v {} {} {}\n", q.x, q.y, q.z));
        }
        let ids: Vec<String> = (1..=face.len()).map(|i| (count + i).to_string()).collect();
        body.push_str(&format!("f {}\n", ids.join(" ")));
        count += face.len();
    }
    if let Some(lp) = lp {
        let image = fold_loop(folding, lp, tol)?;
        body.push_str("o folded-loop\n");
        for q in &image.waypoints {
            body.push_str(&format!("v {} {} {}\n", q.x, q.y, q.z));
        }
        let m = image.waypoints.len();
        let ids: Vec<String> = (1..=m)
            .map(|i| (count + i).to_string())
            .chain(std::iter::once((count + 1).to_string()))
            .collect();
        body.push_str(&format!("l {}\n", ids.join(" ")));
    }
    atomic_write(out, body.as_bytes())
}

fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty());
    let tmp = dir.unwrap_or_else(|| Path::new(".")).join(format!(
        ".{}.tmp",
        path.file_name().and_then(|n| n.to_str()).unwrap_or("out")
    ));
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// Exit 0 on success, 1 when validation or the pipeline fails.
fn run(cli: Cli) -> Result<bool> {
    let tol = Tol {
        geom: 1e-9 * cli.tolerance,
        iso: 1e-9 * cli.tolerance,
        ..Tol::default()
    };
    match cli.command {
        Command::Validate { folding, strict } => {
            let f = io::read_folding(&folding)?;
            let report = validate_folding(&f, strict, &tol);
            print_json(&report)?;
            Ok(report.is_valid)
        }
        Command::Fold { folding, loop_, output } => {
            let f = io::read_folding(&folding)?;
            let lp = io::read_loop(&loop_)?;
            let image = fold_loop(&f, &lp, &tol)?;
            io::write_polyline(&output, &image)?;
            Ok(true)
        }
        Command::Identify { polyline, seed } => {
            let pl = io::read_polyline(&polyline)?;
            let report = certify_polyline(&pl, seed_or_env(seed), &tol)?;
            print_json(&report)?;
            Ok(true)
        }
        Command::Construct { sticks, output } => {
            let s = io::read_sticks(&sticks)?;
            let (folding, lp) = construct::construct_from_sticks(&s, &tol)?;
            write_triple(&output, &folding, &lp, seed_or_env(None), &tol)?;
            Ok(true)
        }
        Command::Torus { n, output, seed } => {
            let (folding, lp) = torus_folding(&TorusParams::new(n), &tol)?;
            write_triple(&output, &folding, &lp, seed_or_env(seed), &tol)?;
            Ok(true)
        }
        Command::Analyze { folding } => {
            let f = io::read_folding(&folding)?;
            let report = analysis::properness_verdict(&f, &tol)?;
            print_json(&report)?;
            Ok(true)
        }
        Command::ExportSvg { folding, loop_, output } => {
            let f = io::read_folding(&folding)?;
            let lp = loop_.map(|p| io::read_loop(&p)).transpose()?;
            export_svg(&f, lp.as_ref(), &output)?;
            Ok(true)
        }
        Command::ExportObj { folding, loop_, output } => {
            let f = io::read_folding(&folding)?;
            let lp = loop_.map(|p| io::read_loop(&p)).transpose()?;
            export_obj(&f, lp.as_ref(), &tol, &output)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
