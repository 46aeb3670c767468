//! Command-line frontend: load and emit TAC files, run computations, print
//! reports. Exit codes: 0 success, 1 usage, 2 parse/validation, 3 internal
//! verification failure.

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use trophom::cech::{
    b7_identification, cohomology, graded_concentration_check, maxcell_cech, verify_pl_duality,
    vertex_star_cech,
};
use trophom::chain::{chain_complex, homology, Field, RelMode};
use trophom::matrix::Mat;
use trophom::models;
use trophom::pairing::{
    intersection_number, intersection_via_pairing, pairing_matrix, IntersectionPoint,
};
use trophom::punctured::{punctured_cech_s, LatticeSimplex};
use trophom::report::{homology_table, matrix_block, Style};
use trophom::sheaf::{SheafFunctor, SheafGeometry, SheafKind};
use trophom::tac;

#[derive(Parser)]
#[command(
    name = "trophom",
    version,
    about = "Exact homology, cohomology and intersection numbers for constructible sheaves on triangulated integral affine manifolds"
)]
struct Cli {
    /// Emit machine-readable key=value records instead of tables
    #[arg(long, global = true)]
    records: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum RelArg {
    None,
    Delta,
    Boundary,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    Z,
    Q,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoverArg {
    VertexStar,
    MaxCell,
}

#[derive(Subcommand)]
enum Command {
    /// Homology of a constructible sheaf on a TAC complex
    Homology {
        input: PathBuf,
        /// sheaf spec: wedge:P, dual-wedge:P, or constant
        #[arg(long, default_value = "wedge:1")]
        sheaf: String,
        #[arg(long, value_enum, default_value_t = RelArg::None)]
        rel: RelArg,
        #[arg(long, value_enum, default_value_t = FieldArg::Z)]
        field: FieldArg,
    },
    /// Čech cohomology of a constructible sheaf
    Cohomology {
        input: PathBuf,
        #[arg(long, default_value = "wedge:1")]
        sheaf: String,
        #[arg(long, value_enum, default_value_t = CoverArg::VertexStar)]
        cover: CoverArg,
        #[arg(long, value_enum, default_value_t = FieldArg::Z)]
        field: FieldArg,
    },
    /// The cap-product pairing gram matrix in degree (p, q)
    Pairing {
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        p: usize,
        #[arg(long, default_value_t = 1)]
        q: usize,
    },
    /// Poincaré–Lefschetz verification for all wedge degrees
    Duality {
        input: PathBuf,
        /// check a single wedge degree instead of all
        #[arg(long)]
        p: Option<usize>,
        /// also run the graded concentration check of the max-cell filtration
        #[arg(long)]
        graded: bool,
    },
    /// Punctured-neighborhood cohomology ranks for a simplex pair
    Punctured {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
    /// Intersection numbers of cycles (pairing route) or point data (local
    /// formula)
    Intersect {
        input: PathBuf,
        /// one or two cycle files; with one, the self-intersection is
        /// computed
        #[arg(long, num_args = 1..=2)]
        cycles: Vec<PathBuf>,
        /// transverse point data file (local formula route)
        #[arg(long)]
        points: Option<PathBuf>,
    },
    /// Generate a model from the catalog and write TAC (+ cycle files)
    Example {
        name: String,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Parse and re-verify a TAC file
    Validate { input: PathBuf },
}

fn parse_sheaf_spec(spec: &str) -> Result<(bool, Option<usize>), String> {
    if spec == "constant" {
        return Ok((false, None));
    }
    if let Some(p) = spec.strip_prefix("wedge:") {
        return p
            .parse()
            .map(|p| (false, Some(p)))
            .map_err(|_| format!("bad wedge degree in '{}'", spec));
    }
    if let Some(p) = spec.strip_prefix("dual-wedge:") {
        return p
            .parse()
            .map(|p| (true, Some(p)))
            .map_err(|_| format!("bad wedge degree in '{}'", spec));
    }
    Err(format!(
        "unknown sheaf spec '{}' (use wedge:P, dual-wedge:P or constant)",
        spec
    ))
}

struct Loaded {
    cx: trophom::DeltaComplex,
    sys: trophom::LocalSystem,
    omega: Option<i8>,
}

fn load(input: &PathBuf) -> Result<Loaded, (u8, String)> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| (2u8, format!("cannot read {}: {}", input.display(), e)))?;
    let doc = tac::TacDocument::parse(&text).map_err(|e| (2u8, e.to_string()))?;
    let (cx, sys, _) = doc.build().map_err(|e| (2u8, e.to_string()))?;
    sys.validate_cocycle(&cx)
        .map_err(|e| (2u8, format!("cocycle validation failed: {}", e)))?;
    Ok(Loaded {
        cx,
        sys,
        omega: doc.orientation,
    })
}

fn build_sheaf(loaded: &Loaded, spec: &str, kind: SheafKind) -> Result<SheafFunctor, (u8, String)> {
    let (dual, degree) = parse_sheaf_spec(spec).map_err(|m| (1u8, m))?;
    match degree {
        None => Ok(SheafFunctor::constant(&loaded.cx, 1, kind)),
        Some(p) => {
            let sys = if dual {
                loaded.sys.dual(&loaded.cx)
            } else {
                loaded.sys.clone()
            };
            let geom = SheafGeometry::new(&loaded.cx, &sys);
            SheafFunctor::pushforward(&geom, p, kind).map_err(|e| (1u8, e.to_string()))
        }
    }
}

fn run() -> Result<(), (u8, String)> {
    let cli = Cli::parse();
    let style = if cli.records {
        Style::Records
    } else {
        Style::Plain
    };
    match cli.command {
        Command::Homology {
            input,
            sheaf,
            rel,
            field,
        } => {
            let loaded = load(&input)?;
            let f = build_sheaf(&loaded, &sheaf, SheafKind::Closed)?;
            let rel = match rel {
                RelArg::None => RelMode::None,
                RelArg::Delta => RelMode::Delta,
                RelArg::Boundary => RelMode::Boundary,
            };
            let field = match field {
                FieldArg::Z => Field::Integers,
                FieldArg::Q => Field::Rationals,
            };
            let complex = chain_complex(&loaded.cx, &f, rel);
            let h = homology(&complex, field);
            print!("{}", homology_table("homology", &h, style));
            Ok(())
        }
        Command::Cohomology {
            input,
            sheaf,
            cover,
            field,
        } => {
            let loaded = load(&input)?;
            let field = match field {
                FieldArg::Z => Field::Integers,
                FieldArg::Q => Field::Rationals,
            };
            let h = match cover {
                CoverArg::VertexStar => {
                    let f = build_sheaf(&loaded, &sheaf, SheafKind::Open)?;
                    cohomology(&vertex_star_cech(&loaded.cx, &f), field)
                }
                CoverArg::MaxCell => {
                    let (dual, _) = parse_sheaf_spec(&sheaf).map_err(|m| (1u8, m))?;
                    let f = build_sheaf(&loaded, &sheaf, SheafKind::Closed)?;
                    let sys = if dual {
                        loaded.sys.dual(&loaded.cx)
                    } else {
                        loaded.sys.clone()
                    };
                    let geom = SheafGeometry::new(&loaded.cx, &sys);
                    let mc = maxcell_cech(&loaded.cx, &geom, &f);
                    cohomology(&mc.complex, field)
                }
            };
            print!("{}", homology_table("cohomology", &h, style));
            Ok(())
        }
        Command::Pairing { input, p, q } => {
            let loaded = load(&input)?;
            let geom = SheafGeometry::new(&loaded.cx, &loaded.sys);
            let dual_sys = loaded.sys.dual(&loaded.cx);
            let dual_geom = SheafGeometry::new(&loaded.cx, &dual_sys);
            let closed = SheafFunctor::pushforward(&geom, p, SheafKind::Closed)
                .map_err(|e| (1u8, e.to_string()))?;
            let open_dual = SheafFunctor::pushforward(&dual_geom, p, SheafKind::Open)
                .map_err(|e| (1u8, e.to_string()))?;
            let complex = chain_complex(&loaded.cx, &closed, RelMode::None);
            let h = homology(&complex, Field::Integers);
            let cech = vertex_star_cech(&loaded.cx, &open_dual);
            let coh = cohomology(&cech, Field::Integers);
            let rep = pairing_matrix(
                &closed,
                &complex.terms[q],
                &h[q].representatives,
                &open_dual,
                &cech.terms[q],
                &coh[q].representatives,
            );
            print!("{}", matrix_block("gram", &rep.gram, style));
            let divisors: Vec<String> = rep.divisors.iter().map(|d| d.to_string()).collect();
            println!("divisors={}", divisors.join(","));
            println!("perfect_over_Q={}", rep.perfect_over_q);
            println!("perfect_over_Z={}", rep.perfect_over_z);
            Ok(())
        }
        Command::Duality { input, p, graded } => {
            let loaded = load(&input)?;
            let degrees: Vec<usize> = match p {
                Some(p) => vec![p],
                None => (0..=loaded.sys.rank()).collect(),
            };
            let mut all_ok = true;
            for p in degrees {
                let rep = verify_pl_duality(&loaded.cx, &loaded.sys, p);
                all_ok &= rep.passed;
                if style == Style::Records {
                    for row in rep.relative_rows.iter().chain(rep.absolute_rows.iter()) {
                        println!(
                            "duality p={} k={} hom={}/{:?} coh={}/{:?} ok={}",
                            p,
                            row.degree,
                            row.homology.0,
                            row.homology.1,
                            row.cohomology.0,
                            row.cohomology.1,
                            row.matches
                        );
                    }
                }
                println!("duality p={} passed={}", p, rep.passed);
            }
            if graded {
                let geom = SheafGeometry::new(&loaded.cx, &loaded.sys);
                let closed = SheafFunctor::pushforward(&geom, 1, SheafKind::Closed)
                    .map_err(|e| (1u8, e.to_string()))?;
                let mc = maxcell_cech(&loaded.cx, &geom, &closed);
                let rep = graded_concentration_check(&loaded.cx, &geom, &closed, &mc);
                println!("graded_concentration passed={}", rep.passed);
                all_ok &= rep.passed;
            }
            if all_ok {
                Ok(())
            } else {
                Err((3, "duality verification failed".into()))
            }
        }
        Command::Punctured { a, b } => {
            let t = LatticeSimplex::standard(a, 1);
            let c = LatticeSimplex::standard(b, 1);
            let rep = punctured_cech_s(&t, &c);
            for (k, (got, want)) in rep.betti.iter().zip(rep.expected.iter()).enumerate() {
                println!(
                    "punctured a={} b={} degree={} rank={} expected={}",
                    a, b, k, got, want
                );
            }
            println!("punctured passed={}", rep.passed);
            if rep.passed {
                Ok(())
            } else {
                Err((3, "punctured rank table mismatch".into()))
            }
        }
        Command::Intersect {
            input,
            cycles,
            points,
        } => {
            let loaded = load(&input)?;
            if let Some(pfile) = points {
                let text = std::fs::read_to_string(&pfile)
                    .map_err(|e| (2u8, format!("cannot read {}: {}", pfile.display(), e)))?;
                let (n, p, pts) = parse_points(&text).map_err(|m| (2u8, m))?;
                let omega = loaded.omega.unwrap_or(1);
                let v = intersection_number(n, p, &pts, omega).map_err(|e| (2u8, e.to_string()))?;
                println!("intersection={}", v);
                return Ok(());
            }
            if cycles.is_empty() {
                return Err((1, "supply --cycles or --points".into()));
            }
            let mut cys = Vec::new();
            for path in &cycles {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| (2u8, format!("cannot read {}: {}", path.display(), e)))?;
                let doc = tac::CycleDocument::parse(&text).map_err(|e| (2u8, e.to_string()))?;
                cys.push(doc.to_cycle(None));
            }
            let v = cys[0].clone();
            let w = cys.get(1).cloned().unwrap_or_else(|| v.clone());
            let geom = SheafGeometry::new(&loaded.cx, &loaded.sys);
            let closed = SheafFunctor::pushforward(&geom, 1, SheafKind::Closed)
                .map_err(|e| (1u8, e.to_string()))?;
            let orientation = loaded.cx.orientation().map_err(|e| (2u8, e.to_string()))?;
            let mc = maxcell_cech(&loaded.cx, &geom, &closed);
            let id = b7_identification(&loaded.cx, &geom, &closed, &mc, Some(&orientation))
                .map_err(|m| (3u8, m))?;
            let omega = loaded.omega.unwrap_or(1);
            let val = intersection_via_pairing(&loaded.cx, &geom, &closed, &mc, &id, &v, &w, omega)
                .map_err(|e| (3u8, e.to_string()))?;
            println!("intersection={}", val);
            Ok(())
        }
        Command::Example { name, out } => {
            let model = models::build_named(&name).map_err(|e| match e {
                models::ModelError::Construction(m) => (1u8, m),
                models::ModelError::Verification(m) => (3u8, m),
            })?;
            std::fs::create_dir_all(&out)
                .map_err(|e| (2u8, format!("cannot create {}: {}", out.display(), e)))?;
            let stem = name.replace([':', 'x'], "-");
            let tac_path = out.join(format!("{}.tac", stem));
            let text = tac::emit(&model.complex, &model.system, Some(model.omega_sign));
            std::fs::write(&tac_path, &text)
                .map_err(|e| (2u8, format!("cannot write {}: {}", tac_path.display(), e)))?;
            println!("wrote {}", tac_path.display());
            for (cname, cycle) in &model.cycles {
                let cpath = out.join(format!("{}.{}.cycle", stem, cname));
                std::fs::write(&cpath, tac::emit_cycle(cycle))
                    .map_err(|e| (2u8, format!("cannot write {}: {}", cpath.display(), e)))?;
                println!("wrote {}", cpath.display());
            }
            Ok(())
        }
        Command::Validate { input } => {
            let loaded = load(&input)?;
            println!(
                "valid: dimension={} vertices={} simplices={} delta={} boundary={}",
                loaded.cx.dimension(),
                loaded.cx.vertex_count(),
                loaded.cx.simplex_count(),
                loaded.cx.delta_ids().len(),
                loaded.cx.boundary_ids().len()
            );
            Ok(())
        }
    }
}

/// Points file: "points 1", "n <dim>", "p <deg>", optional "q <deg>", then
/// per point "point : <tangent V> ; <tangent W> ; <xi V> ; <xi W>" with the
/// tangent blocks given column by column.
fn parse_points(text: &str) -> Result<(usize, usize, Vec<IntersectionPoint>), String> {
    let mut n = None;
    let mut p = None;
    let mut pts = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut words = line.split_whitespace();
        match words.next().unwrap() {
            "points" => {}
            "n" => n = words.next().and_then(|w| w.parse().ok()),
            "p" => p = words.next().and_then(|w| w.parse().ok()),
            "q" => {}
            "point" => {
                let n: usize = n.ok_or("n must come before points")?;
                let rest: String = words.collect::<Vec<_>>().join(" ");
                let parts: Vec<&str> = rest.trim_start_matches(':').split(';').collect();
                if parts.len() != 4 {
                    return Err(format!("line {}: expected 4 ';'-separated blocks", i + 1));
                }
                let ints = |s: &str| -> Result<Vec<trophom::arith::Int>, String> {
                    s.split_whitespace()
                        .map(|w| w.parse().map_err(|_| format!("line {}: bad integer", i + 1)))
                        .collect()
                };
                let tv = ints(parts[0])?;
                let tw = ints(parts[1])?;
                if n == 0 || tv.len() % n != 0 || tw.len() % n != 0 {
                    return Err(format!(
                        "line {}: tangent blocks must be multiples of n",
                        i + 1
                    ));
                }
                let vb = Mat::from_fn(n, tv.len() / n, |r, c| tv[c * n + r].clone());
                let wb = Mat::from_fn(n, tw.len() / n, |r, c| tw[c * n + r].clone());
                pts.push(IntersectionPoint {
                    tangent_v: vb,
                    tangent_w: wb,
                    xi_v: ints(parts[2])?,
                    xi_w: ints(parts[3])?,
                });
            }
            other => return Err(format!("line {}: unknown directive '{}'", i + 1, other)),
        }
    }
    Ok((n.ok_or("missing n")?, p.ok_or("missing p")?, pts))
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(code)
        }
    }
}
