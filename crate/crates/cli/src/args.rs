use clap::{Args, Parser, Subcommand, ValueEnum};
use lzsm_core::rates::ChrwRateForm;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "lzsm", version, about = "Scans and gate solvers for strongly driven qubits")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Transition probability P01 over an (A, ω) grid
    ScanP01(ScanP01Args),
    /// Gate error over an (A, ω) grid
    ScanError(ScanErrorArgs),
    /// Drive parameters and idle times for a target gate
    SolveGate(SolveGateArgs),
    /// Relaxation and dephasing rates over an (A, ω) grid
    Rates(RatesArgs),
    /// P01 from the exact propagator and the approximants along an ω list
    CompareApprox(CompareArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// qubit gap Δ; all grid values are in units of Δ
    #[arg(long, default_value_t = 1.0)]
    pub delta: f64,
    #[arg(long, default_value_t = 1024)]
    pub steps_per_period: usize,
    /// output file, standard output when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// worker threads; falls back to LZSM_THREADS, then all cores
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct Grid {
    #[arg(long, default_value_t = 0.05)]
    pub a_min: f64,
    #[arg(long, default_value_t = 4.0)]
    pub a_max: f64,
    #[arg(long, default_value_t = 50)]
    pub a_steps: usize,
    #[arg(long, default_value_t = 0.05)]
    pub w_min: f64,
    #[arg(long, default_value_t = 4.0)]
    pub w_max: f64,
    #[arg(long, default_value_t = 50)]
    pub w_steps: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    Exact,
    Chrw,
    Dr,
    Magnus,
}

#[derive(Args, Debug)]
pub struct ScanP01Args {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub grid: Grid,
    #[arg(long, value_enum, default_value_t = Engine::Exact)]
    pub engine: Engine,
    /// emit two-qubit populations sampled within one period instead of P01
    #[arg(long)]
    pub trace: bool,
    /// samples per period for --trace
    #[arg(long, default_value_t = 200)]
    pub trace_samples: usize,
    /// second qubit gap in units of Δ, used by --trace
    #[arg(long, default_value_t = 1.0)]
    pub delta2: f64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorTarget {
    #[value(name = "Y")]
    Y,
    #[value(name = "X")]
    X,
    #[value(name = "bSWAP")]
    Bswap,
    #[value(name = "chrw_vs_exact", alias = "chrw-vs-exact")]
    ChrwVsExact,
}

#[derive(Args, Debug)]
pub struct ScanErrorArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub grid: Grid,
    #[arg(long, value_enum, ignore_case = true)]
    pub target: ErrorTarget,
    /// second qubit gap in units of Δ, used by the bSWAP target
    #[arg(long, default_value_t = 1.0)]
    pub delta2: f64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateKind {
    X,
    Y,
    Identity,
    Bswap,
}

#[derive(Args, Debug)]
pub struct SolveGateArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, ignore_case = true)]
    pub gate: GateKind,
    /// drive frequency in units of Δ; picks points on the gate's family curve
    #[arg(long)]
    pub omega: Option<f64>,
    /// idle-time winding as n,k
    #[arg(long, value_parser = parse_pair)]
    pub winding: Option<(u32, u32)>,
    /// identity branch: Ω_R = (2k+1)ω
    #[arg(long, default_value_t = 0)]
    pub branch: u32,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum RateModeArg {
    Chrw,
    Exact,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormArg {
    FloquetModes,
    CarrierUnit,
    CarrierDouble,
}

impl From<FormArg> for ChrwRateForm {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::FloquetModes => ChrwRateForm::FloquetModes,
            FormArg::CarrierUnit => ChrwRateForm::CarrierUnit,
            FormArg::CarrierDouble => ChrwRateForm::CarrierDouble,
        }
    }
}

#[derive(Args, Debug)]
pub struct RatesArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub grid: Grid,
    #[arg(long, value_enum, default_value_t = RateModeArg::Exact)]
    pub mode: RateModeArg,
    /// bath temperature in units of Δ
    #[arg(long, default_value_t = 0.1)]
    pub t_bath: f64,
    #[arg(long, default_value_t = 32)]
    pub q_max: u32,
    #[arg(long, value_enum, default_value_t = FormArg::FloquetModes)]
    pub form: FormArg,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[command(flatten)]
    pub common: Common,
    /// comma-separated ω values in units of Δ
    #[arg(long, value_delimiter = ',', required = true)]
    pub omega: Vec<f64>,
    #[arg(long, default_value_t = 1.16)]
    pub amplitude: f64,
}

fn parse_pair(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected n,k, got {s:?}"))?;
    let p = |x: &str| x.trim().parse::<u32>().map_err(|e| format!("{x:?}: {e}"));
    Ok((p(a)?, p(b)?))
}
