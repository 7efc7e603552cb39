//! `gfc`: command-line front end for generalized Fermat curve computations.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gfermat::config::{orbit_profile, orbit_type_solutions, symmetries, ConeConfiguration, Orientation, OrbitProfile};
use gfermat::io::{from_json, AutomorphismJson, CurveFile, Report};
use gfermat::lift::enumerate_lifts;
use gfermat::literal::{format_complex, parse_point};
use gfermat::moduli::{humbert_rows, samples, verify_theorem, CaseReport, P5Case, TheoremReport, TheoremTag};
use gfermat::{classify, genus, Error, ExtendedMobius, Permutation, Settings};

const EXIT_USAGE: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;
const EXIT_VIOLATION: u8 = 4;

#[derive(Parser)]
#[command(name = "gfc", version, about = "Generalized Fermat curves and their field of moduli over R")]
struct Cli {
    /// Relative tolerance, in (0, 1e-3).
    #[arg(long, global = true, env = "GFC_EPSILON", default_value_t = 1e-9, value_parser = parse_epsilon)]
    epsilon: f64,
    /// Cap on Möbius and automorphism orders (default 2·(n+1)!, at most 40320).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    order_cap: Option<u64>,
    /// Cap on lifts enumerated per symmetry.
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    lift_cap: u64,
    /// Seed for random sample points.
    #[arg(long, global = true, default_value_t = gfermat::lift::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Genus of a generalized Fermat curve of type (k, n).
    Genus {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: usize,
    },
    /// Solutions (N, A, B, C) of the anticonformal orbit equation.
    OrbitTypes {
        #[arg(long)]
        n: usize,
        /// Largest N to consider (default n + 1).
        #[arg(long = "max-N")]
        max_n: Option<u64>,
    },
    /// Extended Möbius symmetries of a point configuration.
    Symmetries {
        /// Comma-separated points, e.g. `inf,0,1,-6,-2+1.5i`.
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        #[arg(long, value_enum, default_value_t = OrientationArg::Both)]
        orientation: OrientationArg,
    },
    /// All lifts of the symmetry inducing a permutation of the cone points.
    Lift {
        #[arg(long)]
        curve: PathBuf,
        /// Cycle notation on 1-based indices, e.g. "(1 2)(3 4)".
        #[arg(long)]
        perm: String,
        #[arg(long)]
        anticonformal: bool,
    },
    /// Decide whether the field of moduli is R and whether R is a field of definition.
    Classify {
        #[arg(long)]
        curve: PathBuf,
    },
    /// Check the reality theorems on their prescribed configurations.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Exponent k (theorem1, default 3) or prime p (p5, default 3).
        #[arg(long)]
        k: Option<u32>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OrientationArg {
    Conformal,
    Anticonformal,
    Both,
}

impl From<OrientationArg> for Orientation {
    fn from(o: OrientationArg) -> Self {
        match o {
            OrientationArg::Conformal => Orientation::Conformal,
            OrientationArg::Anticonformal => Orientation::Anticonformal,
            OrientationArg::Both => Orientation::Both,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Theorem1,
    Humbert,
    Hidalgo,
    P5,
}

fn parse_epsilon(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v > 0.0 && v < 1e-3 {
        Ok(v)
    } else {
        Err(format!("epsilon must lie in (0, 1e-3), got {v}"))
    }
}

/// Failure of a command, mapped to an exit code.
enum Failure {
    Lib(Error),
    Io(String),
    Violation,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CmdResult = Result<(), Failure>;

fn emit<T: Serialize>(output: Output, value: &T, text: impl FnOnce() -> String) {
    let body = match output {
        Output::Json => serde_json::to_string_pretty(value).expect("report serializes") + "\n",
        Output::Text => text(),
    };
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(body.as_bytes());
}

fn read_curve(path: &Path, eps: f64) -> Result<gfermat::FermatCurve, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let file: CurveFile = from_json(&text)?;
    Ok(file.curve(eps)?)
}

#[derive(Serialize)]
struct GenusOut {
    k: u32,
    n: usize,
    genus: u64,
}

fn cmd_genus(cli: &Cli, k: u32, n: usize) -> CmdResult {
    let g = genus(k, n)?;
    emit(cli.output, &GenusOut { k, n, genus: g }, || format!("{g}\n"));
    Ok(())
}

fn cmd_orbit_types(cli: &Cli, n: usize, max_n: Option<u64>) -> CmdResult {
    if n < 2 {
        return Err(Error::InvalidConfiguration(format!("n = {n} must be at least 2")).into());
    }
    let rows = orbit_type_solutions(n, max_n.unwrap_or(n as u64 + 1));
    emit(cli.output, &rows, || {
        let mut s = String::from("N A B C\n");
        for r in &rows {
            s.push_str(&format!("{} {} {} {}\n", r.n, r.a, r.b, r.c));
        }
        s
    });
    Ok(())
}

#[derive(Serialize)]
struct MapOut {
    matrix: [[String; 2]; 2],
    anticonformal: bool,
}

impl From<&ExtendedMobius> for MapOut {
    fn from(m: &ExtendedMobius) -> Self {
        let [[a, b], [c, d]] = m.matrix();
        Self {
            matrix: [
                [format_complex(a), format_complex(b)],
                [format_complex(c), format_complex(d)],
            ],
            anticonformal: m.is_anticonformal(),
        }
    }
}

#[derive(Serialize)]
struct SymmetryOut {
    map: MapOut,
    perm: Vec<usize>,
    cycles: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    profile: Option<OrbitProfile>,
}

fn cmd_symmetries(cli: &Cli, points: &str, orientation: OrientationArg) -> CmdResult {
    let settings = settings(cli);
    let pts = points
        .split(',')
        .map(parse_point)
        .collect::<gfermat::Result<Vec<_>>>()?;
    let cfg = ConeConfiguration::new(pts, settings.epsilon)?;
    let cap = settings.order_cap_for(cfg.len());
    let syms = symmetries(&cfg, orientation.into(), settings.epsilon);
    let mut out = Vec::new();
    for s in &syms {
        let profile = if s.is_anticonformal() {
            Some(orbit_profile(s, &cfg, cap, settings.epsilon)?)
        } else {
            None
        };
        out.push(SymmetryOut {
            map: MapOut::from(&s.map),
            perm: s.perm.to_one_based(),
            cycles: s.perm.to_string(),
            profile,
        });
    }
    emit(cli.output, &out, || {
        let mut text = format!("{} symmetries\n", out.len());
        for (s, sym) in out.iter().zip(&syms) {
            text.push_str(&format!("{}  {}", s.cycles, sym.map));
            if let Some(p) = &s.profile {
                text.push_str(&format!("  order {} (N,A,B,C) = ({},{},{},{})", p.order, p.n, p.a, p.b, p.c));
            }
            text.push('\n');
        }
        text
    });
    Ok(())
}

#[derive(Serialize)]
struct LiftOut {
    map: MapOut,
    tk: Vec<String>,
    lifts: Vec<AutomorphismJson>,
}

fn cmd_lift(cli: &Cli, path: &Path, perm: &str, anticonformal: bool) -> CmdResult {
    let settings = settings(cli);
    let curve = read_curve(path, settings.epsilon)?;
    let perm = Permutation::parse_cycles(perm, curve.n() + 1)?;
    let orientation = if anticonformal {
        Orientation::Anticonformal
    } else {
        Orientation::Conformal
    };
    let s = symmetries(&curve.cone_points(), orientation, settings.epsilon)
        .into_iter()
        .find(|s| s.perm == perm)
        .ok_or_else(|| Error::InvalidPermutation(format!("{perm} is not induced by a symmetry of the cone points")))?;
    let fam = enumerate_lifts(&curve, &s, settings.lift_cap, settings.epsilon)?;
    let out = LiftOut {
        map: MapOut::from(&s.map),
        tk: fam.tk.iter().map(|z| format_complex(*z)).collect(),
        lifts: fam.lifts.iter().map(AutomorphismJson::from).collect(),
    };
    emit(cli.output, &out, || {
        let mut text = format!("symmetry {}\nt = [{}]\n{} lifts\n", s.map, out.tk.join(", "), out.lifts.len());
        for a in &out.lifts {
            let c: Vec<String> = a.c.iter().map(|z| format_complex(*z)).collect();
            text.push_str(&format!("c = [{}]\n", c.join(", ")));
        }
        text
    });
    Ok(())
}

fn witness_text(w: &AutomorphismJson) -> String {
    let c: Vec<String> = w.c.iter().map(|z| format_complex(*z)).collect();
    let perm = Permutation::from_one_based(&w.perm).map(|p| p.to_string()).unwrap_or_default();
    format!(
        "{} perm {} c = [{}]",
        if w.anticonformal { "anticonformal" } else { "conformal" },
        perm,
        c.join(", ")
    )
}

fn report_text(r: &Report) -> String {
    let mut s = format!("verdict: {}\n", r.verdict.as_str());
    if let Some(w) = &r.witness {
        s.push_str(&format!("witness: {}\n", witness_text(w)));
    }
    if let Some(o) = r.witness_order {
        s.push_str(&format!("witness order: {o}\n"));
    }
    s.push_str(&format!(
        "exhaustion: {} anticonformal symmetries, {} lifts scanned\n",
        r.exhaustion.antisymmetries, r.exhaustion.lifts_scanned
    ));
    s.push_str(&format!(
        "assumption: {}\nepsilon: {:e}\n",
        serde_json::to_value(r.assumption).expect("serializes").as_str().unwrap_or_default(),
        r.epsilon
    ));
    s
}

fn cmd_classify(cli: &Cli, path: &Path) -> CmdResult {
    let settings = settings(cli);
    let curve = read_curve(path, settings.epsilon)?;
    let report = Report::from(&classify(&curve, &settings)?);
    emit(cli.output, &report, || report_text(&report));
    Ok(())
}

#[derive(Serialize)]
struct CaseOut {
    label: String,
    k: u32,
    lambdas: Vec<String>,
    points: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    orbit_type: Option<gfermat::OrbitTypeSolution>,
    orbit_type_realized: bool,
    expected: gfermat::moduli::Expectation,
    report: Report,
    #[serde(skip_serializing_if = "Option::is_none")]
    case_witness: Option<AutomorphismJson>,
    notes: Vec<String>,
    holds: bool,
}

impl From<&CaseReport> for CaseOut {
    fn from(c: &CaseReport) -> Self {
        Self {
            label: c.label.clone(),
            k: c.curve.k(),
            lambdas: c.curve.lambdas().iter().map(|z| format_complex(*z)).collect(),
            points: c.points.iter().map(|p| p.to_string()).collect(),
            orbit_type: c.orbit_type,
            orbit_type_realized: c.orbit_type_realized,
            expected: c.expected,
            report: Report::from(&c.classification),
            case_witness: c.case_witness.as_ref().map(AutomorphismJson::from),
            notes: c.notes.clone(),
            holds: c.holds,
        }
    }
}

#[derive(Serialize)]
struct SuiteOut {
    suite: String,
    holds: bool,
    cases: Vec<CaseOut>,
}

fn cmd_verify(cli: &Cli, suite: Suite, k: Option<u32>) -> CmdResult {
    let settings = settings(cli);
    let tags: Vec<TheoremTag> = match suite {
        Suite::Theorem1 => vec![TheoremTag::Theorem1 {
            k: k.unwrap_or(3),
            lambda2: samples::lambda2(),
        }],
        Suite::Humbert => humbert_rows().into_iter().map(TheoremTag::HumbertCase).collect(),
        Suite::Hidalgo => vec![TheoremTag::Hidalgo {
            lambda1: samples::lambda1(),
            lambda2: samples::lambda2(),
        }],
        Suite::P5 => P5Case::ALL
            .into_iter()
            .map(|case| TheoremTag::P3OrP5 { p: k.unwrap_or(3), case })
            .collect(),
    };
    let reports = tags
        .iter()
        .map(|t| verify_theorem(t, &settings))
        .collect::<gfermat::Result<Vec<TheoremReport>>>()?;
    let cases: Vec<CaseOut> = reports.iter().flat_map(|r| r.cases.iter().map(CaseOut::from)).collect();
    let out = SuiteOut {
        suite: reports.first().map(|r| r.name.clone()).unwrap_or_default(),
        holds: reports.iter().all(|r| r.holds()),
        cases,
    };
    emit(cli.output, &out, || {
        let mut s = String::new();
        for c in &out.cases {
            s.push_str(&format!(
                "{}: {} ({})\n",
                c.label,
                if c.holds { "holds" } else { "VIOLATED" },
                c.report.verdict.as_str()
            ));
            for note in &c.notes {
                s.push_str(&format!("  {note}\n"));
            }
        }
        s
    });
    if out.holds {
        Ok(())
    } else {
        Err(Failure::Violation)
    }
}

fn settings(cli: &Cli) -> Settings {
    Settings {
        epsilon: cli.epsilon,
        order_cap: cli.order_cap,
        lift_cap: cli.lift_cap,
        seed: cli.seed,
    }
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Genus { k, n } => cmd_genus(cli, *k, *n),
        Command::OrbitTypes { n, max_n } => cmd_orbit_types(cli, *n, *max_n),
        Command::Symmetries { points, orientation } => cmd_symmetries(cli, points, *orientation),
        Command::Lift {
            curve,
            perm,
            anticonformal,
        } => cmd_lift(cli, curve, perm, *anticonformal),
        Command::Classify { curve } => cmd_classify(cli, curve),
        Command::Verify { suite, k } => cmd_verify(cli, *suite, *k),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_numerical() { EXIT_NUMERICAL } else { EXIT_USAGE })
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Violation) => {
            eprintln!("error: theorem conformance violated");
            ExitCode::from(EXIT_VIOLATION)
        }
    }
}
