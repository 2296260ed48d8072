//! `toric`: exact intersection theory on smooth projective toric surfaces.
//!
//! Subcommands:
//!
//! * `analyze <polygon.json>` — build the polarized surface of a lattice
//!   polygon and classify its adjoint series.
//! * `fan-info <fan.json>` — validate a fan file and print wall numbers,
//!   smoothness, and optional divisor data.
//! * `blowup <fan.json> --at i[,j,...]` — subdivide cones and print the
//!   resulting fan (divisor coefficients are pulled back).
//! * `catalog <p2|p1xp1|hirzebruch|all>` — print seed-surface data: rays,
//!   pairing table, canonical class, nef cone.
//! * `verify [flags]` — replay the verification campaign and report
//!   counterexamples.
//!
//! Exit codes: `0` success / all checks pass, `1` a verification check found
//! a counterexample, `2` invalid input (files, flags, malformed geometry),
//! `3` a mathematical precondition failed (non-smooth fan, non-ample
//! divisor, ...).

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use toric_core::{
    classify, normal_fan, run_campaign, AdjointReport, CampaignConfig, Check, CompleteFan,
    Error, LatticePoint, Surface,
};

const EXIT_COUNTEREXAMPLE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_MATH: u8 = 3;

/// Exact arithmetic on smooth projective toric surfaces: polygon analysis,
/// fan inspection, blowups, seed catalogs, and verification campaigns.
#[derive(Parser)]
#[command(name = "toric", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the adjoint series of the surface defined by a lattice polygon.
    Analyze(AnalyzeArgs),
    /// Validate a fan file and print its wall numbers and divisor data.
    FanInfo(FanInfoArgs),
    /// Blow up torus-fixed points and print the resulting fan.
    Blowup(BlowupArgs),
    /// Print seed-surface data: rays, pairing table, canonical class, nef cone.
    Catalog(CatalogArgs),
    /// Replay the verification campaign and report counterexamples.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Polygon file: JSON {"vertices": [[x,y], ...]} (hull is recomputed).
    path: PathBuf,
    /// Print a human-readable table instead of JSON.
    #[arg(long)]
    pretty: bool,
}

#[derive(Args)]
struct FanInfoArgs {
    /// Fan file: JSON {"rays": [[x,y], ...], "coeffs": [a, ...]} (coeffs optional).
    path: PathBuf,
    /// Print a human-readable table instead of JSON.
    #[arg(long)]
    pretty: bool,
}

#[derive(Args)]
struct BlowupArgs {
    /// Fan file: JSON {"rays": [[x,y], ...], "coeffs": [a, ...]} (coeffs optional).
    path: PathBuf,
    /// Cone indices to subdivide, applied left to right; each index refers to
    /// the current fan's cone (u_i, u_{i+1}).
    #[arg(long, value_delimiter = ',', required = true)]
    at: Vec<usize>,
    /// Print a human-readable table instead of JSON.
    #[arg(long)]
    pretty: bool,
}

#[derive(Args)]
struct CatalogArgs {
    /// Which seed to print: p2, p1xp1, hirzebruch, or all.
    seed: String,
    /// Hirzebruch parameter (used by `hirzebruch` and `all`).
    #[arg(long, default_value_t = 1)]
    r: i64,
    /// Print human-readable tables instead of JSON.
    #[arg(long)]
    pretty: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Blowup depth from the classification seeds.
    #[arg(long, default_value_t = 3)]
    max_blowups: usize,
    /// Largest ruled-surface parameter used as a seed.
    #[arg(long, default_value_t = 4)]
    max_hirzebruch_r: i64,
    /// Bound on the degree L² of enumerated polarizations.
    #[arg(long, default_value_t = 100)]
    max_degree: i64,
    /// Box side for the polygon sweep.
    #[arg(long = "box", default_value_t = 6)]
    box_size: i64,
    /// Comma-separated list of named checks to run (default: all).
    #[arg(long, value_delimiter = ',')]
    checks: Vec<String>,
    /// Seed for the sampled dedup cross-check (never changes verdicts).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads for the campaign (default: one per CPU).
    #[arg(long)]
    threads: Option<usize>,
    /// Write the JSON report to a file and print the summary to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the human-readable summary instead of JSON.
    #[arg(long)]
    pretty: bool,
}

/// How a failure maps onto the exit-code contract: malformed input versus a
/// violated mathematical precondition.
fn exit_class(e: &Error) -> u8 {
    match e {
        Error::DegenerateInput(_)
        | Error::InputTooLarge(_)
        | Error::IndexOutOfRange { .. }
        | Error::InvalidParameter(_)
        | Error::BoxTooLarge { .. } => EXIT_INPUT,
        Error::PreconditionViolated(_)
        | Error::NotSmooth { .. }
        | Error::FanMismatch
        | Error::NotNef { .. }
        | Error::NotAmple { .. }
        | Error::ExcludedSurface(_)
        | Error::Overflow(_) => EXIT_MATH,
    }
}

enum Failure {
    Math(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Math(e)
    }
}

impl Failure {
    fn report(&self) -> u8 {
        match self {
            Failure::Math(e) => {
                eprintln!("error: {e}");
                exit_class(e)
            }
            Failure::Input(msg) => {
                eprintln!("error: {msg}");
                EXIT_INPUT
            }
        }
    }
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn parse_json<'a, T: Deserialize<'a>>(text: &'a str, what: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Input(format!("invalid {what} JSON: {e}")))
}

#[derive(Deserialize)]
struct PolygonFile {
    vertices: Vec<[i64; 2]>,
}

#[derive(Deserialize)]
struct FanFile {
    rays: Vec<[i64; 2]>,
    coeffs: Option<Vec<i64>>,
}

fn pairs_to_points(pairs: &[[i64; 2]]) -> Vec<LatticePoint> {
    pairs.iter().map(|&[x, y]| LatticePoint::new(x, y)).collect()
}

fn points_to_pairs(points: &[LatticePoint]) -> Vec<[i64; 2]> {
    points.iter().map(|p| [p.x, p.y]).collect()
}

/// Reads a fan file, sorts the rays counterclockwise, and permutes the
/// coefficient list the same way.
fn load_fan(path: &PathBuf) -> Result<(CompleteFan, Option<Vec<i64>>), Failure> {
    let text = read_file(path)?;
    let file: FanFile = parse_json(&text, "fan")?;
    let rays = pairs_to_points(&file.rays);
    let (fan, perm) = CompleteFan::from_unsorted(&rays)?;
    let coeffs = match file.coeffs {
        None => None,
        Some(c) => {
            if c.len() != rays.len() {
                return Err(Failure::Input(format!(
                    "coeffs has {} entries for {} rays",
                    c.len(),
                    rays.len()
                )));
            }
            Some(perm.iter().map(|&i| c[i]).collect())
        }
    };
    Ok((fan, coeffs))
}

// ---------------------------------------------------------------------------
// analyze

#[derive(Serialize)]
struct AnalyzeOutput {
    schema: u32,
    #[serde(flatten)]
    report: AdjointReport,
}

fn cmd_analyze(args: &AnalyzeArgs) -> Result<(), Failure> {
    let text = read_file(&args.path)?;
    let file: PolygonFile = parse_json(&text, "polygon")?;
    let points = pairs_to_points(&file.vertices);
    let hull = toric_core::convex_hull(&points)?;
    let (fan, coeffs) = normal_fan(&hull);
    let surface = Surface::new(fan)?;
    let l = surface.divisor(coeffs)?;
    let report = classify(&l)?;
    if args.pretty {
        print_analyze_table(&report);
    } else {
        let out = AnalyzeOutput { schema: 1, report };
        println!("{}", serde_json::to_string(&out).expect("report serializes"));
    }
    Ok(())
}

fn print_analyze_table(report: &AdjointReport) {
    println!("surface: {}", report.surface_id);
    println!(
        "L = {:?} · D,  L² = {}{}",
        report.l_coeffs,
        report.l_squared,
        if report.excluded_surface {
            "   (projective plane: witness criterion does not apply)"
        } else {
            ""
        }
    );
    println!("K+L nef:   {}", report.adjoint_nef);
    println!("K+L ample: {}", report.adjoint_ample);
    println!("{:<5} {:>6} {:>6} {:>8}   witness", "ray", "L·D", "D²", "(K+L)·D");
    for row in &report.per_ray {
        let tag = report
            .witnesses
            .iter()
            .find(|w| w.ray == row.ray)
            .map(|w| match w.kind {
                toric_core::WitnessKind::BpfObstruction => "blocks basepoint freeness",
                toric_core::WitnessKind::AmpleObstruction => "blocks ampleness",
            })
            .unwrap_or("");
        println!(
            "{:<5} {:>6} {:>6} {:>8}   {tag}",
            row.ray, row.degree, row.self_intersection, row.adjoint_number
        );
    }
    let verts: Vec<String> = report
        .polytope_vertices
        .iter()
        .map(|p| format!("({}, {})", p.x, p.y))
        .collect();
    println!("polytope: {}", verts.join(" "));
}

// ---------------------------------------------------------------------------
// fan-info

#[derive(Serialize)]
struct DivisorInfo {
    coeffs: Vec<i64>,
    degrees: Vec<i64>,
    self_intersection: i64,
    nef: bool,
    ample: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    polytope: Option<Vec<[i64; 2]>>,
}

#[derive(Serialize)]
struct FanInfoOutput {
    schema: u32,
    rays: Vec<[i64; 2]>,
    /// `rays[k]` is entry `source_indices[k]` of the input file (the rays are
    /// re-sorted counterclockwise on load).
    source_indices: Vec<usize>,
    smooth: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    smoothness_violation: Option<ConeViolation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_numbers: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_sum: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k_squared: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    divisor: Option<DivisorInfo>,
}

#[derive(Serialize)]
struct ConeViolation {
    cone: usize,
    det: i64,
}

fn cmd_fan_info(args: &FanInfoArgs) -> Result<(), Failure> {
    let text = read_file(&args.path)?;
    let file: FanFile = parse_json(&text, "fan")?;
    let rays = pairs_to_points(&file.rays);
    let (fan, perm) = CompleteFan::from_unsorted(&rays)?;
    let coeffs = match file.coeffs {
        None => None,
        Some(c) if c.len() != rays.len() => {
            return Err(Failure::Input(format!(
                "coeffs has {} entries for {} rays",
                c.len(),
                rays.len()
            )));
        }
        Some(c) => Some(perm.iter().map(|&i| c[i]).collect::<Vec<i64>>()),
    };

    let mut out = FanInfoOutput {
        schema: 1,
        rays: points_to_pairs(fan.rays()),
        source_indices: perm,
        smooth: fan.is_smooth(),
        smoothness_violation: fan
            .smoothness_violation()
            .map(|(cone, det)| ConeViolation { cone, det }),
        wall_numbers: None,
        wall_sum: None,
        k_squared: None,
        divisor: None,
    };

    if !out.smooth {
        // Still print what is known, then report the violated precondition.
        emit_fan_info(&out, args.pretty);
        let (cone, det) = fan.smoothness_violation().expect("checked above");
        return Err(Failure::Math(Error::NotSmooth {
            cone,
            next: (cone + 1) % fan.n_rays(),
            det,
        }));
    }

    let surface = Surface::new(fan)?;
    let walls = surface.walls();
    out.wall_numbers = Some(walls.b().to_vec());
    out.wall_sum = Some(walls.sum());
    let k = surface.canonical_divisor();
    out.k_squared = Some(k.self_intersection()?);
    if let Some(coeffs) = coeffs {
        let d = surface.divisor(coeffs.clone())?;
        let nef = d.is_nef()?;
        out.divisor = Some(DivisorInfo {
            coeffs,
            degrees: d.degrees()?,
            self_intersection: d.self_intersection()?,
            nef,
            ample: d.is_ample()?,
            polytope: if nef {
                Some(points_to_pairs(&d.polytope_of_divisor()?.vertex_list()))
            } else {
                None
            },
        });
    }
    emit_fan_info(&out, args.pretty);
    Ok(())
}

fn emit_fan_info(out: &FanInfoOutput, pretty: bool) {
    if !pretty {
        println!("{}", serde_json::to_string(out).expect("info serializes"));
        return;
    }
    println!("rays ({}):", out.rays.len());
    for (k, r) in out.rays.iter().enumerate() {
        let b = out
            .wall_numbers
            .as_ref()
            .map(|b| format!("  b = {:>3}  D² = {:>3}", b[k], -b[k]))
            .unwrap_or_default();
        println!("  {k}: ({}, {}){b}", r[0], r[1]);
    }
    match (&out.smooth, &out.smoothness_violation) {
        (true, _) => println!("smooth: yes"),
        (false, Some(v)) => println!("smooth: NO (cone {} has determinant {})", v.cone, v.det),
        (false, None) => unreachable!("non-smooth fan always has a violation"),
    }
    if let (Some(sum), Some(k2)) = (out.wall_sum, out.k_squared) {
        println!("wall sum: {sum}   K² = {k2}");
    }
    if let Some(d) = &out.divisor {
        println!(
            "divisor {:?}: degrees {:?}, L² = {}, nef {}, ample {}",
            d.coeffs, d.degrees, d.self_intersection, d.nef, d.ample
        );
        if let Some(p) = &d.polytope {
            let verts: Vec<String> = p.iter().map(|v| format!("({}, {})", v[0], v[1])).collect();
            println!("polytope: {}", verts.join(" "));
        }
    }
}

// ---------------------------------------------------------------------------
// blowup

#[derive(Serialize)]
struct BlowupOutput {
    schema: u32,
    rays: Vec<[i64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coeffs: Option<Vec<i64>>,
    wall_numbers: Vec<i64>,
}

fn cmd_blowup(args: &BlowupArgs) -> Result<(), Failure> {
    let (mut fan, mut coeffs) = load_fan(&args.path)?;
    for &cone in &args.at {
        let n = fan.n_rays();
        let next = fan.blow_up(cone)?;
        if let Some(c) = coeffs.as_mut() {
            // The support function is unchanged by a blowup, so the
            // exceptional coefficient is forced: a_E = a_i + a_{i+1}.
            let value = c[cone] + c[(cone + 1) % n];
            c.insert(cone + 1, value);
        }
        fan = next;
    }
    let surface = Surface::new(fan)?;
    let out = BlowupOutput {
        schema: 1,
        rays: points_to_pairs(surface.fan().rays()),
        coeffs: coeffs.clone(),
        wall_numbers: surface.walls().b().to_vec(),
    };
    if args.pretty {
        println!("rays ({}):", out.rays.len());
        for (k, r) in out.rays.iter().enumerate() {
            println!("  {k}: ({}, {})  b = {}", r[0], r[1], out.wall_numbers[k]);
        }
        if let Some(c) = &out.coeffs {
            println!("pulled-back coeffs: {c:?}");
        }
    } else {
        println!("{}", serde_json::to_string(&out).expect("fan serializes"));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// catalog

#[derive(Serialize)]
struct CatalogEntry {
    name: String,
    rays: Vec<[i64; 2]>,
    wall_numbers: Vec<i64>,
    self_intersections: Vec<i64>,
    pairing: Vec<Vec<i64>>,
    k_squared: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    nef_cone: Option<String>,
}

#[derive(Serialize)]
struct CatalogOutput {
    schema: u32,
    surfaces: Vec<CatalogEntry>,
}

fn catalog_entry(name: String, fan: CompleteFan, nef_cone: Option<String>) -> Result<CatalogEntry, Failure> {
    let surface = Surface::new(fan)?;
    let b = surface.walls().b().to_vec();
    Ok(CatalogEntry {
        name,
        rays: points_to_pairs(surface.fan().rays()),
        self_intersections: b.iter().map(|&x| -x).collect(),
        pairing: surface.table().to_vec(),
        k_squared: surface.canonical_divisor().self_intersection()?,
        wall_numbers: b,
        nef_cone,
    })
}

fn cmd_catalog(args: &CatalogArgs) -> Result<(), Failure> {
    let mut surfaces = Vec::new();
    let want = args.seed.as_str();
    if !matches!(want, "p2" | "p1xp1" | "hirzebruch" | "all") {
        return Err(Failure::Math(Error::InvalidParameter(format!(
            "unknown seed {want:?}: expected p2, p1xp1, hirzebruch, or all"
        ))));
    }
    if matches!(want, "p2" | "all") {
        surfaces.push(catalog_entry(
            "p2".into(),
            CompleteFan::projective_plane(),
            None,
        )?);
    }
    if matches!(want, "p1xp1" | "all") {
        surfaces.push(catalog_entry(
            "p1xp1".into(),
            CompleteFan::p1_cross_p1(),
            None,
        )?);
    }
    if matches!(want, "hirzebruch" | "all") {
        let r = args.r;
        let nef = format!(
            "classes: [D_0] = [D_2] (fiber, square 0), [D_3] = [D_1] + {r}·[D_2] \
             (section, square {r}); a·[D_2] + b·[D_3] is nef iff a ≥ 0 and b ≥ 0, \
             ample iff a > 0 and b > 0"
        );
        surfaces.push(catalog_entry(
            format!("hirzebruch r={r}"),
            CompleteFan::hirzebruch(r)?,
            Some(nef),
        )?);
    }
    if args.pretty {
        for s in &surfaces {
            println!("surface: {}", s.name);
            for (k, r) in s.rays.iter().enumerate() {
                println!(
                    "  ray {k}: ({}, {})  b = {:>3}  D² = {:>3}",
                    r[0], r[1], s.wall_numbers[k], s.self_intersections[k]
                );
            }
            println!("  pairing:");
            for row in &s.pairing {
                let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
                println!("    [{}]", cells.join(" "));
            }
            println!("  K = -(D_0 + ... + D_{}),  K² = {}", s.rays.len() - 1, s.k_squared);
            if let Some(nef) = &s.nef_cone {
                println!("  nef cone: {nef}");
            }
            println!();
        }
    } else {
        let out = CatalogOutput {
            schema: 1,
            surfaces,
        };
        println!("{}", serde_json::to_string(&out).expect("catalog serializes"));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// verify

fn cmd_verify(args: &VerifyArgs) -> Result<bool, Failure> {
    let checks: BTreeSet<Check> = if args.checks.is_empty() {
        Check::ALL.into_iter().collect()
    } else {
        args.checks
            .iter()
            .map(|s| Check::from_str(s))
            .collect::<Result<_, Error>>()?
    };
    let cfg = CampaignConfig {
        max_blowups: args.max_blowups,
        max_hirzebruch_r: args.max_hirzebruch_r,
        max_degree: args.max_degree,
        box_size: args.box_size,
        checks,
        seed: args.seed,
    };
    let report = match args.threads {
        None => run_campaign(&cfg)?,
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Failure::Input(format!("cannot build thread pool: {e}")))?;
            pool.install(|| run_campaign(&cfg))?
        }
    };
    let json = report.to_json();
    match (&args.out, args.pretty) {
        (Some(path), _) => {
            fs::write(path, json.as_bytes())
                .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
            println!("{}", report.summary());
        }
        (None, true) => println!("{}", report.summary()),
        (None, false) => println!("{json}"),
    }
    Ok(report.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Analyze(a) => cmd_analyze(a).map(|()| true),
        Command::FanInfo(a) => cmd_fan_info(a).map(|()| true),
        Command::Blowup(a) => cmd_blowup(a).map(|()| true),
        Command::Catalog(a) => cmd_catalog(a).map(|()| true),
        Command::Verify(a) => cmd_verify(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_COUNTEREXAMPLE),
        Err(f) => ExitCode::from(f.report()),
    }
}
