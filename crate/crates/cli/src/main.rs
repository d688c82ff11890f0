use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mzi_parity::detection::{self, DetectionScheme, SensitivitySample};
use mzi_parity::loss::{self, LossChannel};
use mzi_parity::oracle;
use mzi_parity::states::StateFamily;
use mzi_parity::su2::JState;
use mzi_parity::Error;

mod format;

use format::num;

const VERSION: &str = env!("CARGO_PKG_VERSION");
const ETA_NEAR_ONE: f64 = 1.0 + 1e-6;
const SENSITIVITY_HEADER: &str = "state,N,scheme,lambda,phi_star,delta_phi_min,success_proxy";
const FIG2_HEADER: &str = "lambda,baseline,noon,dual_fock,intelligent_eta10,yurke,intelligent_eta1";

/// Phase sensitivity of a Mach-Zehnder interferometer with parity or J_z
/// detection.
#[derive(Parser, Debug)]
#[command(name = "mzi-parity", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimum (or fixed-phase) sensitivity for one transmission value.
    Sensitivity(RunArgs<SingleLambda>),
    /// Minimum (or fixed-phase) sensitivity over a transmission grid.
    Sweep(RunArgs<LambdaGrid>),
    /// Dump the input state amplitudes as m,re,im.
    State {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Write the transmission sweep of all five inputs plus the baseline,
    /// one CSV per photon number, and a gnuplot script.
    #[command(name = "reproduce-fig2")]
    ReproduceFig2 {
        /// Photon numbers (even).
        #[arg(long = "n", value_delimiter = ',', default_values_t = [4u32, 6])]
        n: Vec<u32>,
        /// Grid points over lambda in [0.5, 1].
        #[arg(long, default_value_t = 101)]
        points: usize,
        #[arg(long, default_value = ".")]
        output_dir: PathBuf,
    },
    /// Compare closed forms against the brute-force Fock simulation.
    Verify {
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..=oracle::ORACLE_N_MAX as i64))]
        max_n: u32,
    },
}

#[derive(Args, Debug)]
struct StateArgs {
    #[arg(long, value_enum)]
    state: StateKind,
    /// Total photon number N.
    #[arg(long = "n", value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
    /// Squeezing ratio of the intelligent state [default: 10].
    #[arg(long)]
    eta: Option<f64>,
    /// J_z centre of the intelligent state [default: 0, or 1/2 for odd N].
    #[arg(long, allow_hyphen_values = true)]
    m0: Option<f64>,
}

#[derive(Args, Debug)]
struct RunArgs<L: Args> {
    #[command(flatten)]
    state: StateArgs,
    #[arg(long, value_enum, default_value_t = Scheme::Parity)]
    scheme: Scheme,
    #[command(flatten)]
    lambda: L,
    /// Evaluate at this phase instead of minimizing over (0, pi).
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<f64>,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SingleLambda {
    /// Transmission in (0, 1].
    #[arg(long, default_value = "1")]
    lambda: String,
}

#[derive(Args, Debug)]
struct LambdaGrid {
    /// Comma list or start:stop:points.
    #[arg(long, default_value = "0.5:1:101")]
    lambda: String,
}

trait LambdaSpec {
    fn values(&self) -> Result<Vec<f64>, Failure>;
}

impl LambdaSpec for SingleLambda {
    fn values(&self) -> Result<Vec<f64>, Failure> {
        let v = format::parse_lambdas(&self.lambda).map_err(Failure::Usage)?;
        if v.len() != 1 {
            return Err(Failure::Usage(
                "sensitivity takes one lambda; use sweep for a grid".into(),
            ));
        }
        Ok(v)
    }
}

impl LambdaSpec for LambdaGrid {
    fn values(&self) -> Result<Vec<f64>, Failure> {
        format::parse_lambdas(&self.lambda).map_err(Failure::Usage)
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum StateKind {
    Yurke,
    DualFock,
    Noon,
    Intelligent,
    SinglePort,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Scheme {
    Parity,
    Jz,
}

impl From<Scheme> for DetectionScheme {
    fn from(s: Scheme) -> Self {
        match s {
            Scheme::Parity => DetectionScheme::Parity,
            Scheme::Jz => DetectionScheme::Jz,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Check(String),
    Compute(String),
    Io(PathBuf, io::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            _ => 1,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(_) | Error::Range(_) | Error::Dimension(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Compute(e.to_string()),
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage: {m}"),
            Failure::Check(m) => write!(f, "verification failed: {m}"),
            Failure::Compute(m) => write!(f, "{m}"),
            Failure::Io(p, e) => write!(f, "{}: {e}", p.display()),
        }
    }
}

/// A resolved input state plus what the user asked for.
struct Prepared {
    family: StateFamily,
    state: JState,
    echo: String,
    notes: Vec<String>,
}

impl StateArgs {
    fn prepare(&self) -> Result<Prepared, Failure> {
        let mut notes = Vec::new();
        let family = match self.state {
            StateKind::Intelligent => {
                let mut eta = self.eta.unwrap_or(10.0);
                if eta == 1.0 {
                    eta = ETA_NEAR_ONE;
                    notes.push(format!("eta=1 replaced by eta={}", num(eta)));
                }
                let m0 = self
                    .m0
                    .unwrap_or(if self.n.is_multiple_of(2) { 0.0 } else { 0.5 });
                let two_m0 = 2.0 * m0;
                if two_m0.fract() != 0.0 || !two_m0.is_finite() {
                    return Err(Failure::Usage(format!(
                        "m0 must be a multiple of 1/2, got {m0}"
                    )));
                }
                StateFamily::Intelligent {
                    eta,
                    two_m0: two_m0 as i32,
                }
            }
            other => {
                if self.eta.is_some() || self.m0.is_some() {
                    return Err(Failure::Usage(
                        "--eta and --m0 apply only to --state intelligent".into(),
                    ));
                }
                match other {
                    StateKind::Yurke => StateFamily::Yurke,
                    StateKind::DualFock => StateFamily::DualFock,
                    StateKind::Noon => StateFamily::Noon,
                    StateKind::SinglePort => StateFamily::SinglePort,
                    StateKind::Intelligent => unreachable!(),
                }
            }
        };
        let state = family.prepare(self.n)?;
        let mut echo = format!("state={family} n={}", self.n);
        if let StateFamily::Intelligent { eta, two_m0 } = family {
            echo = format!(
                "state=intelligent n={} eta={} m0={}",
                self.n,
                num(eta),
                num(f64::from(two_m0) / 2.0)
            );
        }
        Ok(Prepared {
            family,
            state,
            echo,
            notes,
        })
    }
}

fn metadata(command: &str, echo: &str, notes: &[String]) -> String {
    let mut line = format!("# mzi-parity {VERSION} {command} {echo}");
    for n in notes {
        let _ = write!(line, " note: {n}");
    }
    line.push('\n');
    line
}

fn sample_row(label: &str, s: &SensitivitySample) -> String {
    format!(
        "{label},{},{},{},{},{},{}\n",
        s.two_j,
        s.scheme,
        num(s.lambda),
        num(s.phi),
        num(s.delta_phi),
        num(s.success_probability)
    )
}

fn run_sensitivity<L: Args + LambdaSpec>(
    name: &str,
    args: &RunArgs<L>,
) -> Result<Vec<(Option<PathBuf>, String)>, Failure> {
    let lambdas = args.lambda.values()?;
    let p = args.state.prepare()?;
    let scheme = DetectionScheme::from(args.scheme);
    let samples = match args.phi {
        None => loss::sweep_lambda(&p.state, &lambdas, scheme)?,
        Some(phi) => lambdas
            .iter()
            .map(|&l| {
                if l == 1.0 {
                    detection::sensitivity(&p.state, phi, scheme)
                } else if scheme == DetectionScheme::Jz {
                    Err(Error::InvalidInput(
                        "the loss model is defined for parity detection only".into(),
                    ))
                } else {
                    loss::lossy_sensitivity(&p.state, phi, LossChannel::new(l)?)
                }
            })
            .collect::<mzi_parity::Result<Vec<_>>>()?,
    };
    let label = match p.family {
        StateFamily::Intelligent { .. } => "intelligent".to_string(),
        f => f.to_string(),
    };
    let phi_echo = args.phi.map_or("min".to_string(), num);
    let echo = format!(
        "{} scheme={scheme} lambda={} phi={phi_echo}",
        p.echo,
        args_lambda_echo(&lambdas)
    );
    let mut notes = p.notes;
    if samples.iter().any(SensitivitySample::is_divergent) {
        notes
            .push("no signal: delta_phi is inf where the mean does not depend on the phase".into());
    }
    let mut out = metadata(name, &echo, &notes);
    out.push_str(SENSITIVITY_HEADER);
    out.push('\n');
    for s in &samples {
        out.push_str(&sample_row(&label, s));
    }
    for n in &notes {
        eprintln!("note: {n}");
    }
    Ok(vec![(args.output.clone(), out)])
}

fn args_lambda_echo(lambdas: &[f64]) -> String {
    match lambdas {
        [one] => num(*one),
        [first, .., last] => format!("{}:{}:{}", num(*first), num(*last), lambdas.len()),
        [] => String::new(),
    }
}

fn run_state(
    args: &StateArgs,
    output: &Option<PathBuf>,
) -> Result<Vec<(Option<PathBuf>, String)>, Failure> {
    let p = args.prepare()?;
    let mut out = metadata("state", &p.echo, &p.notes);
    out.push_str("m,re,im\n");
    for (m, c) in p.state.components() {
        let _ = writeln!(out, "{},{},{}", num(m), num(c.re), num(c.im));
    }
    for n in &p.notes {
        eprintln!("note: {n}");
    }
    Ok(vec![(output.clone(), out)])
}

fn fig2_families() -> [(&'static str, StateFamily); 5] {
    [
        ("noon", StateFamily::Noon),
        ("dual_fock", StateFamily::DualFock),
        (
            "intelligent_eta10",
            StateFamily::Intelligent {
                eta: 10.0,
                two_m0: 0,
            },
        ),
        ("yurke", StateFamily::Yurke),
        (
            "intelligent_eta1",
            StateFamily::Intelligent {
                eta: ETA_NEAR_ONE,
                two_m0: 0,
            },
        ),
    ]
}

fn run_fig2(
    ns: &[u32],
    points: usize,
    dir: &Path,
) -> Result<Vec<(Option<PathBuf>, String)>, Failure> {
    if points < 2 {
        return Err(Failure::Usage("--points must be at least 2".into()));
    }
    if let Some(bad) = ns.iter().find(|&&n| n == 0 || n % 2 == 1 || n > 64) {
        return Err(Failure::Usage(format!(
            "--n must be even and between 2 and 64, got {bad}"
        )));
    }
    let lambdas = format::linspace(0.5, 1.0, points).map_err(Failure::Usage)?;
    let mut files = Vec::new();
    let mut names = Vec::new();
    for &n in ns {
        let mut columns = Vec::new();
        for (_, fam) in fig2_families() {
            let s = fam.prepare(n)?;
            columns.push(loss::sweep_lambda(&s, &lambdas, DetectionScheme::Parity)?);
        }
        let echo = format!(
            "n={n} points={points} lambda=0.5:1 eta1={}",
            num(ETA_NEAR_ONE)
        );
        let mut out = metadata(
            "reproduce-fig2",
            &echo,
            &["intelligent_eta1 uses eta=1+1e-6".to_string()],
        );
        out.push_str(FIG2_HEADER);
        out.push('\n');
        for (k, &l) in lambdas.iter().enumerate() {
            out.push_str(&num(l));
            out.push(',');
            out.push_str(&num(loss::baseline_shot_noise(n, LossChannel::new(l)?)));
            for col in &columns {
                out.push(',');
                out.push_str(&num(col[k].delta_phi));
            }
            out.push('\n');
        }
        let name = format!("fig2_N{n}.csv");
        files.push((Some(dir.join(&name)), out));
        names.push((n, name));
    }
    files.push((Some(dir.join("fig2.gp")), gnuplot_script(&names)));
    Ok(files)
}

fn gnuplot_script(csvs: &[(u32, String)]) -> String {
    let mut s = format!("# mzi-parity {VERSION} reproduce-fig2 plot script\n");
    s.push_str("set terminal pngcairo size 800,");
    let _ = writeln!(s, "{}", 450 * csvs.len().max(1));
    s.push_str("set output 'fig2.png'\nset datafile separator ','\nset key autotitle columnhead top right\n");
    s.push_str("set xlabel 'transmission lambda'\nset ylabel 'minimum delta phi'\nset logscale y\nset xrange [0.5:1]\n");
    let _ = writeln!(s, "set multiplot layout {},1", csvs.len());
    for (n, name) in csvs {
        let _ = writeln!(s, "set title 'N = {n}'");
        let _ = writeln!(
            s,
            "plot '{name}' using 1:2 with lines dashtype 2 lc rgb 'black', \\\n     for [c=3:7] '' using 1:c with lines lw 2"
        );
    }
    s.push_str("unset multiplot\n");
    s
}

fn run_verify(max_n: u32) -> Result<Vec<(Option<PathBuf>, String)>, Failure> {
    let rows = oracle::verify_suite(max_n)?;
    let mut out = format!(
        "{:<52} {:>3} {:>6} {:>12} {:>9}  result\n",
        "check", "N", "lambda", "max dev", "tol"
    );
    for r in &rows {
        let _ = writeln!(
            out,
            "{:<52} {:>3} {:>6} {:>12.3e} {:>9.1e}  {}",
            r.name,
            r.two_j,
            num(r.lambda),
            r.max_deviation,
            r.tolerance,
            if r.passed() { "PASS" } else { "FAIL" }
        );
    }
    let failed = rows.iter().filter(|r| !r.passed()).count();
    let _ = writeln!(out, "{} checks, {failed} failed", rows.len());
    print!("{out}");
    if failed > 0 {
        return Err(Failure::Check(format!("{failed} of {} checks", rows.len())));
    }
    Ok(Vec::new())
}

fn emit(outputs: Vec<(Option<PathBuf>, String)>) -> Result<(), Failure> {
    for (path, text) in outputs {
        match path {
            Some(p) => fs::write(&p, text).map_err(|e| Failure::Io(p, e))?,
            None => io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Io("<stdout>".into(), e))?,
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let outputs = match &cli.command {
        Command::Sensitivity(a) => run_sensitivity("sensitivity", a)?,
        Command::Sweep(a) => run_sensitivity("sweep", a)?,
        Command::State { state, output } => run_state(state, output)?,
        Command::ReproduceFig2 {
            n,
            points,
            output_dir,
        } => run_fig2(n, *points, output_dir)?,
        Command::Verify { max_n } => run_verify(*max_n)?,
    };
    emit(outputs)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mzi-parity: {e}");
            ExitCode::from(e.code())
        }
    }
}
