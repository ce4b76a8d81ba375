//! `xstate`: measure, classify and convert two-qubit states from the shell.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use xstate_core::ensemble::{DensityKind, Seed, XConstraint};
use xstate_core::matrix::{hermitian_eig, is_density_matrix, partial_transpose, trace_norm};
use xstate_core::measures::{concurrence_general, eof, negativity_general, purity_general};
use xstate_core::minimal_set::{cp_boundary, diagram_csv, diagram_data, minset_state, DiagramKind};
use xstate_core::universality::{disentangle_params, evolve, x_counterpart};
use xstate_core::xstate::is_x_form;
use xstate_core::{io, ComplexMat4, DensityMatrix, Error, Measure, XParams};

const EXIT_USAGE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_INVALID: u8 = 3;
const EXIT_CHECK: u8 = 4;

#[derive(Parser)]
#[command(name = "xstate", version, about = "Two-qubit X-states and X-counterparts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Purity, concurrence, entanglement of formation, negativity, rank.
    Measure {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Writes an X-state with the same spectrum and the same measure.
    Counterpart {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Preserve::Concurrence)]
        preserve: Preserve,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Member of the minimal X-state family at a given (purity, concurrence).
    Minset {
        #[arg(long)]
        purity: f64,
        #[arg(long)]
        concurrence: f64,
        /// Defaults to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank, kind and separability of an X-form input.
    Classify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// CSV over the minimal family on a grid x grid mesh.
    Diagram {
        #[arg(long, value_enum, default_value_t = DiagramArg::Cp)]
        kind: DiagramArg,
        #[arg(long, default_value_t = 50)]
        grid: usize,
        /// Defaults to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs invariant checks on seeded random states.
    Sweep {
        #[arg(long, default_value_t = 1000)]
        count: u64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Checks::All)]
        kind: Checks,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Preserve {
    Concurrence,
    Negativity,
}

impl From<Preserve> for Measure {
    fn from(p: Preserve) -> Measure {
        match p {
            Preserve::Concurrence => Measure::Concurrence,
            Preserve::Negativity => Measure::Negativity,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DiagramArg {
    Cp,
    Negativity,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Checks {
    All,
    Measures,
    Classify,
    Counterpart,
    Minset,
    Disentangle,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(String),
    Lib(Error),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Io(_) => EXIT_PARSE,
            Failure::Check(_) => EXIT_CHECK,
            Failure::Lib(e) => match e {
                Error::Parse(_) => EXIT_PARSE,
                Error::NonHermitian { .. }
                | Error::InvalidState(_)
                | Error::NotUnitary { .. }
                | Error::Unphysical { .. }
                | Error::NotXForm { .. } => EXIT_INVALID,
                Error::Domain(_) | Error::OutOfDiagram { .. } | Error::TargetOutOfRange { .. } => EXIT_USAGE,
                _ => EXIT_CHECK,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Io(m) | Failure::Check(m) => m.clone(),
            Failure::Lib(e) => e.to_string(),
        }
    }
}

type CmdResult = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(report) => {
            print!("{report}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cmd: Command) -> CmdResult {
    match cmd {
        Command::Measure { input, tol } => cmd_measure(&input, tol),
        Command::Counterpart { input, preserve, out, tol } => cmd_counterpart(&input, preserve.into(), &out, tol),
        Command::Minset { purity, concurrence, out } => cmd_minset(purity, concurrence, out.as_deref()),
        Command::Classify { input, tol } => cmd_classify(&input, tol),
        Command::Diagram { kind, grid, out } => cmd_diagram(kind, grid, out.as_deref()),
        Command::Sweep { count, seed, kind, tol } => cmd_sweep(count, seed, kind, tol),
    }
}

fn check_tol(tol: f64) -> Result<(), Failure> {
    if tol.is_finite() && tol >= 0.0 {
        Ok(())
    } else {
        Err(Failure::Usage(format!("--tol must be a nonnegative number, got {tol}")))
    }
}

fn read_matrix(path: &Path) -> Result<ComplexMat4, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Ok(io::parse_matrix(&text)?)
}

fn read_state(path: &Path, tol: f64) -> Result<DensityMatrix, Failure> {
    Ok(DensityMatrix::with_tol(read_matrix(path)?, tol)?)
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn spectrum_delta(a: &ComplexMat4, b: &ComplexMat4) -> Result<f64, Error> {
    Ok(hermitian_eig(a)?.distance(&hermitian_eig(b)?))
}

fn cmd_measure(input: &Path, tol: f64) -> CmdResult {
    check_tol(tol)?;
    let rho = read_state(input, tol)?;
    let m = rho.mat();
    let pt_min = hermitian_eig(&partial_transpose(m))?.values[3];
    let mut s = String::new();
    writeln!(s, "purity: {}", purity_general(m)).unwrap();
    writeln!(s, "concurrence: {}", concurrence_general(&rho)).unwrap();
    writeln!(s, "entanglement_of_formation: {}", eof(&rho)).unwrap();
    writeln!(s, "negativity: {}", negativity_general(m)).unwrap();
    writeln!(s, "x_form: {}", is_x_form(m, tol)).unwrap();
    writeln!(s, "rank: {}", rho.spectrum().rank(tol)).unwrap();
    writeln!(s, "separable: {}", pt_min >= -tol).unwrap();
    Ok(s)
}

fn cmd_counterpart(input: &Path, measure: Measure, out: &Path, tol: f64) -> CmdResult {
    check_tol(tol)?;
    let rho = read_state(input, tol)?;
    let cp = x_counterpart(&rho, measure)?;
    fs::write(out, io::write_state(cp.state.mat(), Some(cp.unitary.mat())))
        .map_err(|e| Failure::Usage(format!("{}: {e}", out.display())))?;

    let spec = spectrum_delta(cp.state.mat(), rho.mat())?;
    let value = measure.general(&cp.state);
    let meas = (value - cp.target).abs();
    let mut s = String::new();
    writeln!(s, "measure: {}", measure_name(measure)).unwrap();
    writeln!(s, "target: {}", cp.target).unwrap();
    writeln!(s, "value: {value}").unwrap();
    writeln!(s, "tau: {}", cp.tau).unwrap();
    writeln!(s, "spectrum_delta: {spec:e}").unwrap();
    writeln!(s, "measure_delta: {meas:e}").unwrap();
    if cp.overshoot > 0.0 {
        writeln!(s, "overshoot: {:e}", cp.overshoot).unwrap();
    }
    if spec > tol || meas > tol {
        print!("{s}");
        return Err(Failure::Check(format!("counterpart deviates beyond tol {tol:e}")));
    }
    Ok(s)
}

fn measure_name(m: Measure) -> &'static str {
    match m {
        Measure::Concurrence => "concurrence",
        Measure::Negativity => "negativity",
    }
}

fn cmd_minset(purity: f64, concurrence: f64, out: Option<&Path>) -> CmdResult {
    let rho = minset_state(purity, concurrence)?;
    let json = io::write_matrix(rho.mat());
    match out {
        None => Ok(json),
        Some(p) => {
            write_out(Some(p), &json)?;
            Ok(format!("rank: {}\n", rho.spectrum().rank(1e-9)))
        }
    }
}

fn cmd_classify(input: &Path, tol: f64) -> CmdResult {
    check_tol(tol)?;
    let rho = read_state(input, tol)?;
    let p = XParams::from_density(rho.mat(), tol)?;
    let class = p.classify_rank(tol)?;
    let mut s = String::new();
    writeln!(s, "rank: {}", class.rank).unwrap();
    writeln!(s, "kind: {}", class.kind).unwrap();
    writeln!(s, "separable: {}", p.is_separable()?).unwrap();
    writeln!(s, "concurrence: {}", p.concurrence()).unwrap();
    writeln!(s, "negativity: {}", p.negativity()).unwrap();
    writeln!(
        s,
        "params: theta={} phi={} psi={} x={} y={} mu={} nu={}",
        p.theta, p.phi, p.psi, p.x, p.y, p.mu, p.nu
    )
    .unwrap();
    Ok(s)
}

fn cmd_diagram(kind: DiagramArg, grid: usize, out: Option<&Path>) -> CmdResult {
    let kind = match kind {
        DiagramArg::Cp => DiagramKind::Cp,
        DiagramArg::Negativity => DiagramKind::NegativityPurity,
    };
    let csv = diagram_csv(&diagram_data(grid)?, kind);
    match out {
        None => Ok(csv),
        Some(p) => {
            write_out(Some(p), &csv)?;
            Ok(String::new())
        }
    }
}

fn cmd_sweep(count: u64, seed: u64, checks: Checks, tol: f64) -> CmdResult {
    check_tol(tol)?;
    let root = Seed(seed);
    let wants = |c: Checks| checks == Checks::All || checks == c;
    for i in 0..count {
        let child = root.child(i);
        let fail = |name: &str, detail: String| {
            Failure::Check(format!("{name} check failed for seed {seed} index {i} (child seed {}): {detail}", child.0))
        };
        if wants(Checks::Measures) {
            check_measures(child, tol).map_err(|d| fail("measures", d))?;
        }
        if wants(Checks::Classify) {
            check_classify(child, tol).map_err(|d| fail("classify", d))?;
        }
        if wants(Checks::Counterpart) {
            check_counterpart(child, tol).map_err(|d| fail("counterpart", d))?;
        }
        if wants(Checks::Minset) {
            check_minset(child, tol).map_err(|d| fail("minset", d))?;
        }
        if wants(Checks::Disentangle) {
            check_disentangle(child, tol).map_err(|d| fail("disentangle", d))?;
        }
    }
    Ok(format!("sweep: {count} states from seed {seed}, all checks passed\n"))
}

type Check = Result<(), String>;

fn ensure(ok: bool, detail: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(detail())
    }
}

fn lib<T>(r: Result<T, Error>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn check_measures(seed: Seed, tol: f64) -> Check {
    let p = lib(seed.sampler().xparams(XConstraint::Any))?;
    let rho = lib(p.to_density())?;
    let (c0, c1) = (p.concurrence(), concurrence_general(&rho));
    ensure((c0 - c1).abs() <= tol, || format!("concurrence {c0} vs {c1}"))?;
    let (n0, n1) = (p.negativity(), negativity_general(rho.mat()));
    ensure((n0 - n1).abs() <= tol, || format!("negativity {n0} vs {n1}"))?;
    let n2 = 0.5 * (trace_norm(&partial_transpose(rho.mat())) - 1.0);
    ensure((n1 - n2).abs() <= tol, || format!("negativity {n1} vs trace norm {n2}"))?;
    let d = is_density_matrix(rho.mat(), tol);
    ensure(d.is_valid(), || d.to_string())
}

fn check_classify(seed: Seed, tol: f64) -> Check {
    let p = lib(seed.sampler().xparams(XConstraint::Any))?;
    let m = p.to_matrix();
    let class = lib(p.classify_rank(tol))?;
    let rank = lib(hermitian_eig(&m))?.rank(tol);
    ensure(class.rank as usize == rank, || format!("rank {} vs numerical {rank}", class.rank))?;
    let sep = lib(p.is_separable())?;
    let pt_min = lib(hermitian_eig(&partial_transpose(&m)))?.values[3];
    ensure(sep == (pt_min >= -tol), || format!("separable {sep} but PT min eigenvalue {pt_min:e}"))
}

fn check_counterpart(seed: Seed, tol: f64) -> Check {
    let rho = seed.sampler().density(DensityKind::HilbertSchmidt);
    for measure in [Measure::Concurrence, Measure::Negativity] {
        let cp = lib(x_counterpart(&rho, measure))?;
        ensure(is_x_form(cp.state.mat(), tol), || "counterpart not X-form".into())?;
        let spec = lib(spectrum_delta(cp.state.mat(), rho.mat()))?;
        ensure(spec <= tol, || format!("spectrum delta {spec:e}"))?;
        let delta = (measure.general(&cp.state) - measure.general(&rho)).abs();
        ensure(delta <= tol, || format!("{} delta {delta:e}", measure_name(measure)))?;
        let moved = rho.mat().conjugated_by(cp.unitary.mat());
        let gap = moved.max_abs_diff(cp.state.mat());
        ensure(gap <= tol, || format!("unitary reproduces state only to {gap:e}"))?;
    }
    Ok(())
}

fn check_minset(seed: Seed, tol: f64) -> Check {
    let mut s = seed.sampler();
    let p = s.uniform_in(1.0 / 3.0, 1.0);
    let c = s.uniform() * lib(cp_boundary(p))?;
    let rho = lib(minset_state(p, c))?;
    let got_p = purity_general(rho.mat());
    let got_c = concurrence_general(&rho);
    ensure((got_p - p).abs() <= tol && (got_c - c).abs() <= tol, || {
        format!("asked (p, c) = ({p}, {c}), got ({got_p}, {got_c})")
    })
}

fn check_disentangle(seed: Seed, tol: f64) -> Check {
    let p = lib(seed.sampler().xparams(XConstraint::Entangled))?;
    let sol = lib(disentangle_params(&p))?;
    let end = lib(evolve(&p, &sol, 1.0))?;
    ensure(lib(end.params.is_separable())?, || "endpoint not separable".into())?;
    let spec = lib(spectrum_delta(&end.params.to_matrix(), &p.to_matrix()))?;
    ensure(spec <= tol, || format!("spectrum delta {spec:e}"))
}
