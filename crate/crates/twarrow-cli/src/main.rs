use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use twarrow::anodyne::{self, PaperWhich};
use twarrow::fibration::{cartesian_fibration, inner_fibration, trivial_fibration, FibrationReport};
use twarrow::io;
use twarrow::partition::{make_partition, mapping_space, section3_report, MapMode, Section3Map};
use twarrow::scaled::{verify_certificate, DecoratedSet, DecorationKind, ScaledSet};
use twarrow::sset::{standard, FinitePoset};
use twarrow::suite::{self, ObjectSpec, SuiteConfig};
use twarrow::{tw, zoo};

/// Finite simplicial, scaled and marked sets: twisted arrows, lifting
/// checks and anodyne certificates. `TWARROW_DIM_CAP` overrides the level cap.
#[derive(Parser)]
#[command(name = "twarrow", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Named families of scaled sets.
    #[command(subcommand)]
    Zoo(ZooCmd),
    /// Twisted arrow constructions.
    #[command(subcommand)]
    Tw(TwCmd),
    /// Chain posets, mapping spaces and descent.
    #[command(subcommand)]
    Poset(PosetCmd),
    /// Build and verify scaled anodyne certificates.
    #[command(subcommand)]
    Certify(CertifyCmd),
    /// Bounded fibration tests on a map read from JSON.
    Check(CheckArgs),
    /// Run the check suite; exits 1 if any check fails.
    Suite(SuiteArgs),
    /// Write an object as canonical JSON or as a DOT drawing.
    Export(ExportArgs),
}

#[derive(Subcommand)]
enum ZooCmd {
    /// Build level n of q, star, boxtimes, square, r, t, qcal, k, kcal or qdiamond.
    Build {
        name: String,
        #[arg(long)]
        n: usize,
        /// Horn index for k, kcal, qdiamond (default n).
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum TwCmd {
    /// Tw of a complex (JSON; a bare complex is read as sharply scaled).
    Build {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
        /// The marked twisted arrow set.
        #[arg(long)]
        out: Option<PathBuf>,
        /// The projection to 𝒞 × 𝒞^op, for `check`.
        #[arg(long)]
        projection: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// The fiber over (x, y).
    Fiber {
        #[arg(long)]
        complex: Option<PathBuf>,
        /// Use Δⁿ♯ when no complex is given.
        #[arg(long, default_value_t = 1)]
        simplex: usize,
        #[arg(long)]
        x: usize,
        #[arg(long)]
        y: usize,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Right,
    TwoSided,
}

#[derive(Subcommand)]
enum PosetCmd {
    /// The mapping space of an ordered partition.
    Mapspace {
        /// The chain [n]; ignored when --poset is given.
        #[arg(long, default_value_t = 2)]
        chain: usize,
        #[arg(long)]
        poset: Option<PathBuf>,
        /// Elements of J₁, comma separated; the rest form J₀.
        #[arg(long, value_delimiter = ',', default_value = "2")]
        j1: Vec<usize>,
        /// Source object for the right mode.
        #[arg(long, default_value_t = 0)]
        j: usize,
        #[arg(long, value_enum, default_value_t = Mode::Right)]
        mode: Mode,
        /// Write the result as JSON (to stdout when no path is given).
        #[arg(long, num_args = 0..=1, default_missing_value = "-")]
        json: Option<String>,
    },
    /// Whether a named map descends to the truncation quotients.
    Descends {
        #[arg(long)]
        map: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
    },
}

#[derive(Subcommand)]
enum CertifyCmd {
    /// The pivot trick on Δⁿ for a dull family.
    Pivot {
        /// Sets separated by ';', elements by ','.
        #[arg(long)]
        dull: String,
        #[arg(long)]
        n: usize,
        /// Thin triangles, e.g. 023,123 (or 0-2-3 for multi-digit vertices).
        #[arg(long, value_delimiter = ',')]
        thin: Vec<String>,
        /// A vertex, or `auto` to search.
        #[arg(long, default_value = "auto")]
        pivot: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certificates for the fibration steps and the ξ maps.
    Paper {
        #[arg(long, value_parser = ["fibstep1", "fibstep2", "xi"])]
        which: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        i: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify a certificate file.
    Verify {
        #[arg(long)]
        cert: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    InnerFibration,
    Cartesian,
    Trivial,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(value_enum)]
    property: Property,
    #[arg(long)]
    map: PathBuf,
    /// Marked edges of the source, required for `cartesian`.
    #[arg(long)]
    marked: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    max_dim: usize,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct SuiteArgs {
    /// JSON config; the flags below override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    checks: Option<Vec<String>>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    level_cap: Option<usize>,
    /// Substitute flat Q(n) for this n.
    #[arg(long)]
    flat_q: Option<usize>,
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long)]
    timings: Option<PathBuf>,
    /// List the available checks and exit.
    #[arg(long)]
    list: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(value_enum)]
    format: Format,
    /// A zoo name, `tw` (Tw of Δⁿ♯) or `r-poset` (the poset Rₙ).
    object: String,
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long)]
    i: Option<usize>,
    #[arg(long, default_value_t = 3)]
    max_dim: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) if p != Path::new("-") => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        _ => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(io::parse(&text)?)
}

/// A scaled set from either a decorated document or a bare complex.
fn read_scaled(path: &Path) -> Result<ScaledSet> {
    let v = read_json(path)?;
    if v.get("complex").is_some() {
        let d = io::decorated_from_json(&v)?;
        if d.kind != DecorationKind::Scaling {
            bail!("{} holds a marking, not a scaling", path.display());
        }
        Ok(d)
    } else {
        Ok(DecoratedSet::sharp(&io::complex_from_json(&v)?))
    }
}

fn summary(x: &DecoratedSet) -> String {
    let what = match x.kind {
        DecorationKind::Scaling => "thin triangles",
        DecorationKind::Marking => "marked edges",
    };
    format!("nondegenerate simplices by dimension {:?}, {} {what}", x.base.counts(), x.count())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Zoo(ZooCmd::Build { name, n, i, json }) => {
            let level = zoo::zoo_level(zoo::ZooName::parse(&name)?, n, i)?;
            println!("{name}({n}): {}", summary(&level.set));
            if let Some(p) = json {
                write_out(Some(&p), &io::to_text(&io::decorated_to_json(&level.set)))?;
            }
            Ok(true)
        }
        Cmd::Tw(TwCmd::Build { complex, max_dim, out, projection, dot }) => {
            let c = read_scaled(&complex)?;
            let t = tw::tw(&c, max_dim)?;
            println!("tw: {}", summary(&t.marked));
            if let Some(p) = out {
                write_out(Some(&p), &io::to_text(&io::decorated_to_json(&t.marked)))?;
            }
            if let Some(p) = projection {
                write_out(Some(&p), &io::to_text(&io::map_to_json(&t.projection)))?;
            }
            if let Some(p) = dot {
                write_out(Some(&p), &io::complex_to_dot("tw", &t.nerve.set, Some(&t.marked)))?;
            }
            Ok(true)
        }
        Cmd::Tw(TwCmd::Fiber { complex, simplex, x, y, max_dim, json }) => {
            let c = match complex {
                Some(p) => read_scaled(&p)?,
                None => DecoratedSet::sharp(&standard(simplex)),
            };
            let f = tw::tw_fiber(&c, x, y, max_dim)?;
            println!("fiber over ({x}, {y}): nondegenerate simplices by dimension {:?}", f.set.counts());
            if let Some(p) = json {
                write_out(Some(&p), &io::to_text(&io::complex_to_json(&f.set)))?;
            }
            Ok(true)
        }
        Cmd::Poset(PosetCmd::Mapspace { chain, poset, j1, j, mode, json }) => {
            let p = match poset {
                Some(path) => io::poset_from_json(&read_json(&path)?)?,
                None => FinitePoset::chain(chain),
            };
            let j0: Vec<usize> = (0..p.len()).filter(|x| !j1.contains(x)).collect();
            let part = make_partition(&p, &j0, &j1)?;
            let mode = match mode {
                Mode::Right => MapMode::Right(j),
                Mode::TwoSided => MapMode::TwoSided,
            };
            let m = mapping_space(&part, mode)?;
            match json {
                Some(dest) => write_out(Some(Path::new(&dest)), &io::to_text(&io::complex_to_json(&m)))?,
                None => println!("mapping space: nondegenerate simplices by dimension {:?}", m.counts()),
            }
            Ok(true)
        }
        Cmd::Poset(PosetCmd::Descends { map, n, max_dim }) => {
            let which = Section3Map::parse(&map).ok_or_else(|| anyhow!("unknown map {map}"))?;
            let r = section3_report(which, n, max_dim)?;
            println!("{} at n = {n}: descends {}, preserves markings {}", r.name, r.descent.holds(), r.preserves_marking);
            if let twarrow::partition::Descent::Counterexample { first, second } = &r.descent {
                println!("  equivalent chains {first:?} and {second:?} have inequivalent images");
            }
            Ok(r.descent.holds() && r.preserves_marking)
        }
        Cmd::Certify(CertifyCmd::Pivot { dull, n, thin, pivot, out }) => {
            let family = parse_family(&dull)?;
            let thin = thin.iter().map(|t| parse_triangle(t)).collect::<Result<Vec<_>>>()?;
            let pivot = match pivot.as_str() {
                "auto" => None,
                p => Some(p.parse().with_context(|| format!("pivot {p}"))?),
            };
            match anodyne::pivot_certificate(n, &family, &thin, pivot)? {
                Ok(run) => {
                    println!(
                        "pivot {}: {} steps, verdict {}",
                        run.pivot,
                        run.certificate.len(),
                        if run.verdict.is_valid() { "valid" } else { "invalid" }
                    );
                    if let Some(p) = out {
                        let doc = io::certificate_to_json(&run.inclusion, &run.certificate, Some(run.verdict.is_valid()));
                        write_out(Some(&p), &io::to_text(&doc))?;
                    }
                    Ok(run.verdict.is_valid())
                }
                Err(f) => {
                    println!("no certificate: {f:?}");
                    Ok(false)
                }
            }
        }
        Cmd::Certify(CertifyCmd::Paper { which, n, i, out }) => {
            let which = match which.as_str() {
                "fibstep1" => PaperWhich::Fibstep1 { n, i },
                "fibstep2" => PaperWhich::Fibstep2 { n, i },
                _ => PaperWhich::Xi { n },
            };
            let c = anodyne::paper_certificate(which)?;
            let valid = c.verdict.is_valid();
            println!("{which:?}: {} steps, verdict {:?}", c.certificate.len(), c.verdict);
            if let Some(p) = out {
                write_out(Some(&p), &io::to_text(&io::certificate_to_json(&c.inclusion, &c.certificate, Some(valid))))?;
            }
            Ok(valid)
        }
        Cmd::Certify(CertifyCmd::Verify { cert }) => {
            let (incl, c) = io::certificate_from_json(&read_json(&cert)?)?;
            let v = verify_certificate(&c, &incl)?;
            println!("{} steps: {v:?}", c.len());
            Ok(v.is_valid())
        }
        Cmd::Check(a) => check(a),
        Cmd::Suite(a) => run_suite(a),
        Cmd::Export(a) => export(a),
    }
}

fn parse_family(s: &str) -> Result<Vec<Vec<usize>>> {
    s.split(';')
        .map(|set| {
            set.split(',')
                .filter(|x| !x.trim().is_empty())
                .map(|x| x.trim().parse::<usize>().with_context(|| format!("element {x:?}")))
                .collect()
        })
        .collect()
}

fn parse_triangle(t: &str) -> Result<[usize; 3]> {
    let parts: Vec<usize> = if t.contains('-') {
        t.split('-').map(|x| x.parse::<usize>()).collect::<std::result::Result<_, _>>()?
    } else {
        t.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| anyhow!("bad vertex {c:?}"))).collect::<Result<_>>()?
    };
    match parts[..] {
        [a, b, c] => Ok([a, b, c]),
        _ => bail!("{t} is not a triangle"),
    }
}

fn print_report(r: &FibrationReport) {
    let verdict = if r.passed() { "PASS" } else { "FAIL" };
    println!("{}: {verdict} ({} squares, dimension ≤ {})", r.property, r.squares, r.max_dim);
    if let Some(c) = &r.counterexample {
        let s = c.summary();
        println!("  no lift for {} with bottom {}", s.shape, s.bottom);
        for f in s.top {
            println!("    {f}");
        }
    }
    if let Some(n) = &r.note {
        println!("  {n}");
    }
}

fn check(a: CheckArgs) -> Result<bool> {
    let p = io::map_from_json(&read_json(&a.map)?)?;
    let r = match a.property {
        Property::InnerFibration => inner_fibration(&p, a.max_dim)?,
        Property::Trivial => trivial_fibration(&p, a.max_dim)?,
        Property::Cartesian => {
            let path = a.marked.as_ref().ok_or_else(|| anyhow!("cartesian needs --marked"))?;
            let m = io::decorated_from_json(&read_json(path)?)?;
            if m.kind != DecorationKind::Marking {
                bail!("{} is not a marking", path.display());
            }
            // both documents are canonical, so equal sets come back equal
            if m.base != *p.source() {
                bail!("the marking lives on a different set than the map's source");
            }
            cartesian_fibration(&p, &m, a.max_dim)?
        }
    };
    print_report(&r);
    if let Some(path) = a.report {
        write_out(Some(&path), &io::to_text(&io::report_to_json(&r)))?;
    }
    Ok(r.passed())
}

fn run_suite(a: SuiteArgs) -> Result<bool> {
    if a.list {
        for c in suite::CHECKS {
            println!("{c}");
        }
        return Ok(true);
    }
    let mut cfg: SuiteConfig = match &a.config {
        Some(p) => serde_json::from_value(read_json(p)?).context("suite config")?,
        None => SuiteConfig::default(),
    };
    if let Some(c) = a.checks {
        cfg.checks = c.into_iter().filter(|s| !s.is_empty()).collect();
    }
    if let Some(s) = a.seed {
        cfg.seed = s;
    }
    if let Some(l) = a.level_cap {
        cfg.caps.level = Some(l);
    }
    if let Some(n) = a.flat_q {
        cfg.objects.push(ObjectSpec { name: "q".into(), n, scaling: Some("flat".into()) });
    }
    if a.report.is_some() {
        cfg.report = a.report;
    }
    if a.timings.is_some() {
        cfg.timings = a.timings;
    }
    let (report, timings) = suite::run_suite(&cfg)?;
    for (c, (_, t)) in report.checks.iter().zip(&timings) {
        println!("{:<18} {} {:>9.3}s", c.name, if c.passed { "PASS" } else { "FAIL" }, t.as_secs_f64());
        for d in c.detail.iter().filter(|d| d.starts_with("FAILED")) {
            println!("  {d}");
        }
    }
    Ok(report.passed)
}

fn export(a: ExportArgs) -> Result<bool> {
    let text = match a.object.as_str() {
        "r-poset" => {
            let p = zoo::r_poset(a.n);
            match a.format {
                Format::Json => io::to_text(&io::poset_to_json(&p)),
                Format::Dot => io::poset_to_dot(&format!("R{}", a.n), &p),
            }
        }
        "tw" => {
            let t = tw::tw(&DecoratedSet::sharp(&standard(a.n)), a.max_dim)?;
            match a.format {
                Format::Json => io::to_text(&json!({
                    "marked": io::decorated_to_json(&t.marked),
                    "projection": io::map_to_json(&t.projection),
                })),
                Format::Dot => io::complex_to_dot(&format!("tw(Δ{})", a.n), &t.nerve.set, Some(&t.marked)),
            }
        }
        name => {
            let level = zoo::zoo_level(zoo::ZooName::parse(name)?, a.n, a.i)?;
            match a.format {
                Format::Json => io::to_text(&io::decorated_to_json(&level.set)),
                Format::Dot => io::complex_to_dot(&format!("{name}({})", a.n), &level.set.base, None),
            }
        }
    };
    write_out(a.out.as_deref(), &text)?;
    Ok(true)
}
