//! Command-line front end: validation, dual-surface statistics, conversions,
//! quasi-filling expressions, complexity bounds, the 2D loop tools and the
//! small census.
//!
//! Exit codes: 0 on success, 1 when the input fails validation (the violation
//! list is printed), 2 on usage errors (unreadable files, malformed formats).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::json;

use dehnsurf::bounds::{BoundLedger, Field};
use dehnsurf::census::{
    census_report, enumerate_cubulations_seeded, enumerate_triangulations, CensusFilters,
};
use dehnsurf::convert::{
    cubulation_to_triangulation, optimize_orientations, triangulation_to_cubulation,
    OrientationSearch,
};
use dehnsurf::dual::dual_surface_stats;
use dehnsurf::io::{cubulation_to_string, parse_complex, triangulation_to_string, Complex};
use dehnsurf::qfs::parse_qfs;
use dehnsurf::report::{ValidationReport, VertexLink, Violation};
use dehnsurf::surface::SurfaceDescriptor;
use dehnsurf::surface2d::{
    brute_force_lc, cubulation_to_loop, diagram_to_string, is_filling, loop_complexity,
    loop_to_cubulation, parse_diagram, thicken,
};


#[derive(Parser)]
#[command(name = "dehnsurf", version, about = "Ideal cubulations, filling Dehn surfaces and surface-complexity bounds")]
struct Cli {
    /// Emit machine-readable JSON instead of the human report.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a gluing table (.cub/.tri) or a loop diagram (.loop).
    Validate { file: PathBuf },
    /// Dual Dehn-surface statistics of a cubulation (or orbit/link data of a
    /// triangulation).
    Stats { file: PathBuf },
    /// Convert a triangulation to a cubulation (k = 4n) or a cubulation to a
    /// triangulation (n = 5k + m, m mismatched face pairs).
    Convert {
        file: PathBuf,
        /// Write the converted complex to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-cube orientation bits as a 0/1 string, or `auto` to search.
        #[arg(long, default_value = "auto")]
        bits: String,
        /// Exhaust all 2^k orientation assignments when k is at most this.
        #[arg(long, default_value_t = 20)]
        exhaustive_max: usize,
        /// Seed for the local-search restarts beyond the exhaustive range.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Evaluate a quasi-filling surface expression (file or inline text).
    Qfs { expr: String },
    /// Build a surface-complexity/Matveev-complexity bounds ledger.
    Bounds {
        /// Manifold tag; catalog tags are S3, B3, RP3, L(3,1), L(4,1).
        #[arg(long, default_value = "M")]
        manifold: String,
        /// Record the 4n upper bound from an n-tetrahedron triangulation.
        #[arg(long)]
        tri_size: Option<usize>,
        /// Apply the exact catalog values for the manifold tag.
        #[arg(long)]
        catalog: bool,
        /// Apply the 4x/8x relations between sc and c.
        #[arg(long)]
        matveev: bool,
        /// Extra asserted bounds, `field=value:source` with field one of
        /// scLower, scUpper, cLower, cUpper. Repeatable.
        #[arg(long = "assert")]
        asserts: Vec<String>,
    },
    /// Two-dimensional Dehn-loop tools.
    #[command(subcommand)]
    Lc2d(Lc2d),
    /// Enumerate ideal cubulations (or triangulations) up to isomorphism.
    Census {
        /// Number of cubes (1 or 2).
        #[arg(long, conflicts_with = "tets")]
        cubes: Option<usize>,
        /// Number of tetrahedra (1 or 2).
        #[arg(long)]
        tets: Option<usize>,
        /// Keep only cubulations whose dual-surface sheets are all spheres.
        #[arg(long)]
        sheets_all_spheres: bool,
        /// Shuffle the generation order (the output is identical anyway).
        #[arg(long)]
        seed: Option<u64>,
        /// Write one gluing file per class plus a summary table to this
        /// directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Lc2d {
    /// Classify the thickening of a loop diagram.
    Thicken { file: PathBuf },
    /// Loop-complexity of a surface by the closed-form formula.
    Lc { surface: String },
    /// Minimal crossing count by exhaustive diagram enumeration.
    Search {
        surface: String,
        #[arg(long, default_value_t = 2)]
        max_crossings: usize,
    },
    /// Dual square cubulation of a loop diagram, and the loop read back off
    /// it.
    Dual { file: PathBuf },
}

/// A failed run: invalid input (exit 1, report already printed) or a usage
/// error (exit 2, message printed to stderr).
enum Failure {
    Invalid,
    Usage(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Failure {
        Failure::Usage(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let json = cli.json;
    match cli.command {
        Command::Validate { file } => cmd_validate(&file, json),
        Command::Stats { file } => cmd_stats(&file, json),
        Command::Convert {
            file,
            out,
            bits,
            exhaustive_max,
            seed,
        } => cmd_convert(&file, out.as_deref(), &bits, exhaustive_max, seed, json),
        Command::Qfs { expr } => cmd_qfs(&expr, json),
        Command::Bounds {
            manifold,
            tri_size,
            catalog,
            matveev,
            asserts,
        } => cmd_bounds(&manifold, tri_size, catalog, matveev, &asserts, json),
        Command::Lc2d(sub) => cmd_lc2d(sub, json),
        Command::Census {
            cubes,
            tets,
            sheets_all_spheres,
            seed,
            out,
        } => cmd_census(cubes, tets, sheets_all_spheres, seed, out.as_deref(), json),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_complex(path: &Path) -> Result<Complex> {
    let text = read(path)?;
    parse_complex(&text).with_context(|| format!("{}", path.display()))
}

fn print_violations(kind: &str, violations: &[Violation], json: bool) {
    if json {
        println!(
            "{}",
            json!({ "kind": kind, "valid": false, "violations": violations })
        );
    } else {
        println!("{kind}: INVALID");
        for v in violations {
            println!("  - {v}");
        }
    }
}

fn link_summary(links: &[VertexLink]) -> String {
    multiset(links.iter().map(|l| l.surface.name()))
}

/// `name` or `name xC`, joined by ` + `, over the multiset of items.
fn multiset(items: impl Iterator<Item = String>) -> String {
    let mut counts = std::collections::BTreeMap::new();
    for item in items {
        *counts.entry(item).or_insert(0usize) += 1;
    }
    if counts.is_empty() {
        return "-".into();
    }
    counts
        .into_iter()
        .map(|(name, c)| if c == 1 { name } else { format!("{name} x{c}") })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Validate either kind of complex; on success return the report and links.
fn checked(kind: &str, report: ValidationReport, json: bool) -> Result<ValidationReport, Failure> {
    if report.is_ok() {
        Ok(report)
    } else {
        print_violations(kind, &report.violations, json);
        Err(Failure::Invalid)
    }
}

fn cmd_validate(file: &Path, json: bool) -> Result<(), Failure> {
    if file.extension().and_then(|e| e.to_str()) == Some("loop") {
        let d = parse_diagram_file(file)?;
        match d.validate() {
            Ok(()) => {
                if json {
                    println!(
                        "{}",
                        json!({
                            "kind": "diagram", "valid": true,
                            "crossings": d.crossings, "edges": d.edges.len(),
                            "freeLoops": d.free_loops.len(), "strands": d.strand_count(),
                        })
                    );
                } else {
                    println!(
                        "diagram: ok ({} crossings, {} edges, {} free loops, {} strands)",
                        d.crossings,
                        d.edges.len(),
                        d.free_loops.len(),
                        d.strand_count()
                    );
                }
                return Ok(());
            }
            Err(e) => {
                if json {
                    println!("{}", json!({ "kind": "diagram", "valid": false, "error": e.to_string() }));
                } else {
                    println!("diagram: INVALID\n  - {e}");
                }
                return Err(Failure::Invalid);
            }
        }
    }
    let complex = load_complex(file)?;
    let (kind, report, cells) = match &complex {
        Complex::Cubulation(c) => ("cubulation", c.validate(), c.k()),
        Complex::Triangulation(t) => ("triangulation", t.validate(), t.n()),
    };
    let report = checked(kind, report, json)?;
    // Links are only defined once the complex is known to be valid.
    let links = match &complex {
        Complex::Cubulation(c) => c.vertex_links(),
        Complex::Triangulation(t) => t.vertex_links(),
    };
    let orbits = report.orbits.as_ref().expect("orbits present when valid");
    if json {
        println!(
            "{}",
            json!({
                "kind": kind, "valid": true, "cells": cells,
                "orbits": orbits, "euler": orbits.euler(),
                "links": links,
            })
        );
    } else {
        println!(
            "{kind}: ok ({cells} cells)\nV={} E={} F={} C={}, chi(M-hat)={}",
            orbits.vertices,
            orbits.edges,
            orbits.faces,
            orbits.cells,
            orbits.euler()
        );
        println!("vertex links: {}", link_summary(&links));
    }
    Ok(())
}

fn cmd_stats(file: &Path, json: bool) -> Result<(), Failure> {
    match load_complex(file)? {
        Complex::Cubulation(c) => {
            checked("cubulation", c.validate(), json)?;
            let stats = dual_surface_stats(&c);
            if json {
                println!("{}", json!({ "kind": "cubulation", "dual": stats }));
            } else {
                println!(
                    "dual Dehn surface: triple points={} singular edges={} regions={}",
                    stats.triple_points, stats.singular_edges, stats.regions
                );
                println!(
                    "chi(Sigma)={} chi(S)={}",
                    stats.chi_sigma, stats.chi_domain
                );
                println!(
                    "sheets: {}",
                    multiset(stats.sheets.iter().map(|s| s.name()))
                );
                println!(
                    "complement: {} balls, {} boundary collars",
                    stats.complement_balls(),
                    stats.complement.len() - stats.complement_balls()
                );
            }
        }
        Complex::Triangulation(t) => {
            let report = checked("triangulation", t.validate(), json)?;
            let orbits = report.orbits.as_ref().expect("valid");
            let links = t.vertex_links();
            if json {
                println!(
                    "{}",
                    json!({ "kind": "triangulation", "orbits": orbits, "links": links })
                );
            } else {
                println!(
                    "triangulation: V={} E={} F={} C={}, chi(M-hat)={}",
                    orbits.vertices,
                    orbits.edges,
                    orbits.faces,
                    orbits.cells,
                    orbits.euler()
                );
                println!("vertex links: {}", link_summary(&links));
            }
        }
    }
    Ok(())
}

fn parse_bits(spec: &str, k: usize) -> Result<Vec<bool>> {
    if spec.len() != k || !spec.bytes().all(|b| b == b'0' || b == b'1') {
        bail!("--bits must be `auto` or a string of {k} characters 0/1");
    }
    Ok(spec.bytes().map(|b| b == b'1').collect())
}

fn write_out(out: Option<&Path>, contents: &str) -> Result<()> {
    if let Some(path) = out {
        std::fs::write(path, contents)
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(())
}

fn cmd_convert(
    file: &Path,
    out: Option<&Path>,
    bits: &str,
    exhaustive_max: usize,
    seed: u64,
    json: bool,
) -> Result<(), Failure> {
    match load_complex(file)? {
        Complex::Triangulation(t) => {
            checked("triangulation", t.validate(), json)?;
            let c = triangulation_to_cubulation(&t).map_err(|e| anyhow!(e))?;
            let report = c.validate();
            assert!(report.is_ok(), "conversion output must validate");
            let orbits = report.orbits.expect("valid");
            if json {
                println!(
                    "{}",
                    json!({
                        "direction": "triangulation->cubulation",
                        "n": t.n(), "k": c.k(), "orbits": orbits,
                    })
                );
            } else {
                println!(
                    "cubulation with k={} cubes (from n={} tetrahedra, k=4n)",
                    c.k(),
                    t.n()
                );
            }
            write_out(out, &cubulation_to_string(&c))?;
        }
        Complex::Cubulation(c) => {
            checked("cubulation", c.validate(), json)?;
            let (bits, searched) = if bits == "auto" {
                let search = OrientationSearch {
                    exhaustive_max,
                    seed,
                    ..OrientationSearch::default()
                };
                let outcome = optimize_orientations(&c, &search).map_err(|e| anyhow!(e))?;
                (outcome.bits, Some(outcome.exhaustive))
            } else {
                (parse_bits(bits, c.k())?, None)
            };
            let (t, m) = cubulation_to_triangulation(&c, &bits).map_err(|e| anyhow!(e))?;
            let report = t.validate();
            assert!(report.is_ok(), "conversion output must validate");
            if json {
                println!(
                    "{}",
                    json!({
                        "direction": "cubulation->triangulation",
                        "k": c.k(), "n": t.n(), "insertions": m,
                        "bits": bits.iter().map(|&b| b as u8).collect::<Vec<_>>(),
                        "exhaustive": searched,
                    })
                );
            } else {
                let how = match searched {
                    Some(true) => " (orientation bits: exhaustive optimum)",
                    Some(false) => " (orientation bits: local search)",
                    None => "",
                };
                println!(
                    "triangulation with n={} tetrahedra (k={} cubes, {m} insertions, n=5k+m){how}",
                    t.n(),
                    c.k()
                );
            }
            write_out(out, &triangulation_to_string(&t))?;
        }
    }
    Ok(())
}

fn cmd_qfs(expr: &str, json: bool) -> Result<(), Failure> {
    let path = Path::new(expr);
    let (text, base_dir) = if path.is_file() {
        (
            read(path)?,
            path.parent().map(Path::to_path_buf).unwrap_or_default(),
        )
    } else {
        (expr.to_string(), PathBuf::new())
    };
    let loader = |name: &str| -> Result<String, String> {
        std::fs::read_to_string(base_dir.join(name)).map_err(|e| e.to_string())
    };
    let q = parse_qfs(&text, &loader).map_err(|e| anyhow!(e))?;
    let stats = q.stats();
    if json {
        println!("{}", json!({ "stats": stats }));
    } else {
        println!("manifold: {}", stats.manifold);
        println!("triple points: {}", stats.triple_count);
        match stats.complement_balls {
            Some(b) => println!("complement balls: {b}"),
            None => println!("complement balls: not tracked below sums"),
        }
        match stats.chi_domain {
            Some(x) => println!("chi(S): {x}"),
            None => println!("chi(S): not tracked below sums"),
        }
        println!("filling: {}", stats.is_filling);
    }
    Ok(())
}

fn parse_field(name: &str) -> Result<Field> {
    Ok(match name {
        "scLower" => Field::ScLower,
        "scUpper" => Field::ScUpper,
        "cLower" => Field::CLower,
        "cUpper" => Field::CUpper,
        other => bail!("unknown bound field `{other}` (expected scLower/scUpper/cLower/cUpper)"),
    })
}

fn cmd_bounds(
    manifold: &str,
    tri_size: Option<usize>,
    catalog: bool,
    matveev: bool,
    asserts: &[String],
    json: bool,
) -> Result<(), Failure> {
    let mut ledger = BoundLedger::new(manifold);
    let step = |r: Result<(), dehnsurf::bounds::BoundsError>| -> Result<(), Failure> {
        r.map_err(|e| match e {
            e @ dehnsurf::bounds::BoundsError::Contradiction { .. } => {
                println!("contradiction: {e}");
                Failure::Invalid
            }
            e => Failure::Usage(anyhow!(e)),
        })
    };
    for spec in asserts {
        let (field, rest) = spec
            .split_once('=')
            .ok_or_else(|| anyhow!("--assert expects field=value:source, got `{spec}`"))?;
        let (value, source) = rest
            .split_once(':')
            .ok_or_else(|| anyhow!("--assert expects field=value:source, got `{spec}`"))?;
        let field = parse_field(field)?;
        let value: u64 = value
            .parse()
            .map_err(|_| anyhow!("--assert value must be a natural number, got `{value}`"))?;
        step(ledger.assert_value(field, value, source))?;
    }
    if let Some(n) = tri_size {
        step(ledger.set_sc_upper_from_triangulation(n))?;
    }
    if catalog {
        step(ledger.apply_catalog())?;
    }
    if matveev {
        step(ledger.apply_matveev_relations())?;
    }
    if json {
        println!("{}", serde_json::to_string(&ledger).expect("serializable"));
        return Ok(());
    }
    println!("bounds for {}:", ledger.manifold);
    let rows = [
        ("sc >=", ledger.sc_lower.as_ref()),
        ("sc <=", ledger.sc_upper.as_ref()),
        ("c >=", ledger.c_lower.as_ref()),
        ("c <=", ledger.c_upper.as_ref()),
    ];
    let mut any = false;
    for (label, entry) in rows {
        if let Some(e) = entry {
            println!("  {label} {}  [{}]", e.value, e.provenance);
            any = true;
        }
    }
    if !any {
        println!("  (no bounds recorded)");
    }
    Ok(())
}

/// Parse a surface: a well-known name or `o|n,<chi>,<boundary>`.
fn parse_surface(spec: &str) -> Result<SurfaceDescriptor> {
    let named = match spec.to_ascii_lowercase().as_str() {
        "s2" | "sphere" => Some((true, 2, 0)),
        "rp2" => Some((false, 1, 0)),
        "b2" | "disc" | "disk" => Some((true, 1, 1)),
        "annulus" => Some((true, 0, 2)),
        "mobius" => Some((false, 0, 1)),
        "t2" | "torus" => Some((true, 0, 0)),
        "klein" => Some((false, 0, 0)),
        _ => None,
    };
    let (orientable, euler, boundary_components) = match named {
        Some(t) => t,
        None => {
            let parts: Vec<&str> = spec.split(',').collect();
            if parts.len() != 3 {
                bail!(
                    "unknown surface `{spec}` (expected a name like torus, or `o|n,<chi>,<boundary>`)"
                );
            }
            let orientable = match parts[0] {
                "o" => true,
                "n" => false,
                other => bail!("orientability must be `o` or `n`, got `{other}`"),
            };
            let euler: i64 = parts[1]
                .parse()
                .map_err(|_| anyhow!("bad Euler characteristic `{}`", parts[1]))?;
            let boundary: usize = parts[2]
                .parse()
                .map_err(|_| anyhow!("bad boundary count `{}`", parts[2]))?;
            (orientable, euler, boundary)
        }
    };
    let s = SurfaceDescriptor {
        orientable,
        euler,
        boundary_components,
    };
    if !s.is_consistent() {
        bail!("no compact connected surface has these invariants: {spec}");
    }
    Ok(s)
}

fn cmd_lc2d(sub: Lc2d, json: bool) -> Result<(), Failure> {
    match sub {
        Lc2d::Thicken { file } => {
            let d = parse_diagram_file(&file)?;
            let s = thicken(&d).map_err(|e| anyhow!(e))?;
            let filling = is_filling(&d).map_err(|e| anyhow!(e))?;
            if json {
                println!(
                    "{}",
                    json!({
                        "surface": s, "name": s.name(),
                        "crossings": d.crossings, "edges": d.edges.len(),
                        "strands": d.strand_count(), "filling": filling,
                    })
                );
            } else {
                println!(
                    "thickening: {} (orientable={}, chi={}, boundary={})",
                    s.name(),
                    s.orientable,
                    s.euler,
                    s.boundary_components
                );
                println!(
                    "diagram: {} crossings, {} edges, {} strands, filling={}",
                    d.crossings,
                    d.edges.len(),
                    d.strand_count(),
                    filling
                );
            }
        }
        Lc2d::Lc { surface } => {
            let s = parse_surface(&surface)?;
            let lc = loop_complexity(&s).map_err(|e| anyhow!(e))?;
            if json {
                println!("{}", json!({ "surface": s, "name": s.name(), "lc": lc }));
            } else {
                println!("lc({}) = {lc}", s.name());
            }
        }
        Lc2d::Search {
            surface,
            max_crossings,
        } => {
            let s = parse_surface(&surface)?;
            let found = brute_force_lc(&s, max_crossings).map_err(|e| anyhow!(e))?;
            if json {
                println!(
                    "{}",
                    json!({ "surface": s, "name": s.name(), "maxCrossings": max_crossings, "minCrossings": found })
                );
            } else {
                match found {
                    Some(c) => println!("minimal quasi-filling loop of {}: {c} crossings", s.name()),
                    None => println!(
                        "no quasi-filling loop of {} within {max_crossings} crossings",
                        s.name()
                    ),
                }
            }
        }
        Lc2d::Dual { file } => {
            let d = parse_diagram_file(&file)?;
            let c = loop_to_cubulation(&d).map_err(|e| anyhow!(e))?;
            let orbits = c
                .validate()
                .map_err(|vs| anyhow!(vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")))?;
            let back = cubulation_to_loop(&c).map_err(|e| anyhow!(e))?;
            if json {
                let gluings: Vec<_> = c
                    .pairs()
                    .map(|(s, q, g)| {
                        json!({ "square": s, "edge": q, "toSquare": g.square, "toEdge": g.edge, "headToHead": g.head_to_head })
                    })
                    .collect();
                println!(
                    "{}",
                    json!({
                        "squares": c.k(), "gluings": gluings,
                        "orbits": { "vertices": orbits.vertices, "edges": orbits.edges, "faces": orbits.faces, "euler": orbits.euler() },
                        "dualLoop": diagram_to_string(&back),
                    })
                );
            } else {
                println!("square cubulation with {} squares:", c.k());
                for (s, q, g) in c.pairs() {
                    let mode = if g.head_to_head { "head-to-head" } else { "head-to-tail" };
                    println!("  {s} {q} -> {} {} ({mode})", g.square, g.edge);
                }
                println!(
                    "orbits: V={} E={} F={}, chi={}",
                    orbits.vertices,
                    orbits.edges,
                    orbits.faces,
                    orbits.euler()
                );
                print!("dual loop:\n{}", diagram_to_string(&back));
            }
        }
    }
    Ok(())
}

fn cmd_census(
    cubes: Option<usize>,
    tets: Option<usize>,
    sheets_all_spheres: bool,
    seed: Option<u64>,
    out: Option<&Path>,
    json: bool,
) -> Result<(), Failure> {
    match (cubes, tets) {
        (Some(k), None) => {
            let filters = CensusFilters { sheets_all_spheres };
            let entries =
                enumerate_cubulations_seeded(k, &filters, seed).map_err(|e| anyhow!(e))?;
            let report = census_report(&entries);
            if let Some(dir) = out {
                std::fs::create_dir_all(dir)
                    .with_context(|| format!("cannot create {}", dir.display()))?;
                let width = entries.len().to_string().len().max(4);
                for (i, e) in entries.iter().enumerate() {
                    let name = format!("cub_k{k}_{i:0width$}.cub");
                    std::fs::write(dir.join(&name), &e.signature)
                        .with_context(|| format!("cannot write {}", dir.join(&name).display()))?;
                }
                std::fs::write(dir.join("summary.txt"), &report)
                    .with_context(|| format!("cannot write {}", dir.join("summary.txt").display()))?;
            }
            if json {
                let rows: Vec<_> = entries
                    .iter()
                    .map(|e| {
                        json!({
                            "signature": e.signature,
                            "orbits": e.orbits,
                            "links": e.links,
                            "sheets": e.sheets,
                            "triplePoints": e.stats.triple_points,
                        })
                    })
                    .collect();
                println!("{}", json!({ "cubes": k, "classes": entries.len(), "entries": rows }));
            } else {
                print!("{report}");
                println!("classes: {}", entries.len());
            }
        }
        (None, Some(n)) => {
            let tris = enumerate_triangulations(n).map_err(|e| anyhow!(e))?;
            if let Some(dir) = out {
                std::fs::create_dir_all(dir)
                    .with_context(|| format!("cannot create {}", dir.display()))?;
                for (i, t) in tris.iter().enumerate() {
                    let name = format!("tri_n{n}_{i:04}.tri");
                    std::fs::write(dir.join(&name), triangulation_to_string(t))
                        .with_context(|| format!("cannot write {}", dir.join(&name).display()))?;
                }
            }
            if json {
                let mut rows = Vec::new();
                for t in &tris {
                    let orbits = t.validate().orbits.expect("census output is valid");
                    rows.push(json!({ "orbits": orbits, "links": t.vertex_links() }));
                }
                println!("{}", json!({ "tets": n, "classes": tris.len(), "entries": rows }));
            } else {
                let mut table = String::new();
                for t in &tris {
                    let orbits = t.validate().orbits.expect("census output is valid");
                    let _ = writeln!(
                        table,
                        "V={} E={} F={} chi={} | links: {}",
                        orbits.vertices,
                        orbits.edges,
                        orbits.faces,
                        orbits.euler(),
                        link_summary(&t.vertex_links())
                    );
                }
                print!("{table}");
                println!("classes: {}", tris.len());
            }
        }
        _ => return Err(Failure::Usage(anyhow!("exactly one of --cubes or --tets is required"))),
    }
    Ok(())
}

fn parse_diagram_file(path: &Path) -> Result<dehnsurf::surface2d::DehnLoopDiagram> {
    let text = read(path)?;
    parse_diagram(&text).with_context(|| format!("{}", path.display()))
}
