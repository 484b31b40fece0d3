//! `moulde <compute|verify|bracket|compare|decompose|eval>`.

use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use moulde_core::mould::{check_dm_with, check_in_v, check_ls_with, check_weight};
use moulde_core::solutions::{
    calibrate, compare_lifts, decompose_sigma, pal_symmetral, phi0_extra_check, phi0_shuffle, prop54_check,
    s_identity_check, seed, witt_check, xi_relation, BracketExpr, Workbench,
};
use moulde_core::words::parse_wordsum;
use moulde_core::{Bracket, Error, Mould, VerificationReport, MAX_VARS};
use serde_json::json;

use crate::exec::Pool;
use crate::format::{mould_from_json, mould_to_json, mould_to_text, FormatError, MouldFile, ReportJson};
use crate::paranoid::CrossCheck;

pub const DEFAULT_DEPTH: usize = 5;
/// Depth from which every verification counts as a long job.
pub const LONG_DEPTH: usize = 7;

#[derive(Parser, Debug)]
#[command(name = "moulde", version, about = "Exact mould calculus workbench")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub config: RunArgs,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Truncation depth (default 5, or the depth of a mould file).
    #[arg(long, global = true)]
    pub max_depth: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = BracketArg::Ihara)]
    pub bracket: BracketArg,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    pub output: Output,
    /// Seed for the probabilistic cross-check.
    #[arg(long, global = true, default_value_t = 2024)]
    pub seed: u64,
    #[arg(long, global = true, env = "MOULDE_JOBS")]
    pub jobs: Option<usize>,
    /// Allow long jobs (sigma7 at depth 6, anything at depth 7 or more).
    #[arg(long, global = true)]
    pub long: bool,
    /// Cross-check canonical verdicts at seeded random points.
    #[arg(long, global = true)]
    pub paranoid: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum BracketArg {
    Ari,
    Ihara,
}

impl From<BracketArg> for Bracket {
    fn from(b: BracketArg) -> Self {
        match b {
            BracketArg::Ari => Bracket::Ari,
            BracketArg::Ihara => Bracket::Ihara,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Op {
    Sharp,
    Flat,
    Anti,
    Varphi,
    SwapFlat,
    ChiE,
    ChiB,
    ChiBInv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Law {
    #[value(name = "dm")]
    Dm,
    #[value(name = "ls")]
    Ls,
    #[value(name = "V", alias = "v")]
    V,
    #[value(name = "weight")]
    Weight,
    #[value(name = "witt")]
    Witt,
    #[value(name = "s-identity")]
    SIdentity,
    #[value(name = "calibration")]
    Calibration,
    #[value(name = "phi0-extra")]
    Phi0Extra,
    #[value(name = "pal-symmetral")]
    PalSymmetral,
    #[value(name = "phi0-shuffle")]
    Phi0Shuffle,
    #[value(name = "theorem-main")]
    TheoremMain,
    #[value(name = "remark-diff")]
    RemarkDiff,
    #[value(name = "prop54")]
    Prop54,
    #[value(name = "xi-relation")]
    XiRelation,
    #[value(name = "sigma-decomposition")]
    SigmaDecomposition,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a registry mould or a mould file, optionally transformed.
    Compute {
        name: String,
        /// Operators applied left to right.
        #[arg(long, value_enum)]
        apply: Vec<Op>,
    },
    /// Check a law; exit 0 iff every instance passes.
    Verify {
        #[arg(value_enum)]
        law: Law,
        /// Mould name or file for dm, ls, V, weight; 3, 5, 7 or 9 for sigma-decomposition.
        #[arg(long)]
        target: Option<String>,
        /// Seed mould x1^n for the lift comparisons.
        #[arg(long, default_value_t = 2, allow_negative_numbers = true)]
        seed_power: i32,
        /// Weight -k for the weight law (default: the mould's own).
        #[arg(long, allow_negative_numbers = true)]
        weight: Option<i64>,
    },
    /// Evaluate a right-nested bracket such as "{eta:3, eta:3, eta:-1}".
    Bracket { expr: String },
    /// Compare the two lifts of x1^n.
    Compare {
        #[arg(long, default_value_t = 2, allow_negative_numbers = true)]
        seed_power: i32,
    },
    /// Evaluate a sigma decomposition modulo its depth.
    Decompose { which: u32 },
    /// Evaluate a mould on a word sum such as "x1x2 sh x3".
    Eval { target: String, words: String },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
    Format(FormatError),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::Format(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::LawViolation(_) | Error::Calibration(_) | Error::Pole | Error::DivisionByZero) => 1,
            _ => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "{s}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Format(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

/// Parses `args` and runs the command; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(passed) => i32::from(!passed),
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "moulde: {e}");
            e.exit_code()
        }
    }
}

struct Session<'a> {
    config: &'a RunArgs,
    depth: usize,
    pool: Pool,
}

impl Session<'_> {
    fn emit_mould(&self, out: &mut dyn Write, name: &str, m: &Mould) -> Result<(), CliError> {
        match self.config.output {
            Output::Json => writeln!(out, "{}", mould_to_json(name, m))?,
            Output::Text => write!(out, "{}", mould_to_text(name, m))?,
        }
        Ok(())
    }

    fn emit_reports(&self, out: &mut dyn Write, reports: &[VerificationReport]) -> Result<bool, CliError> {
        match self.config.output {
            Output::Json => {
                let items: Vec<ReportJson> = reports.iter().map(ReportJson::from).collect();
                let text = if items.len() == 1 {
                    serde_json::to_string_pretty(&items[0])
                } else {
                    serde_json::to_string_pretty(&items)
                };
                writeln!(out, "{}", text.expect("plain data serializes"))?;
            }
            Output::Text => {
                for r in reports {
                    write!(out, "{r}")?;
                }
            }
        }
        Ok(reports.iter().all(VerificationReport::passed))
    }

    fn cross_check(&self) -> Option<CrossCheck> {
        self.config.paranoid.then(|| CrossCheck::new(self.config.seed))
    }

    fn gate(&self, depth: usize, what: &str) -> Result<(), CliError> {
        if depth >= LONG_DEPTH && !self.config.long {
            return Err(CliError::Usage(format!("{what} at depth {depth} is a long job; pass --long")));
        }
        Ok(())
    }
}

fn is_file_target(text: &str) -> bool {
    text.ends_with(".json") || text.contains('/') || Path::new(text).is_file()
}

fn load_file(path: &str) -> Result<Mould, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
    Ok(mould_from_json(&text)?)
}

/// Registry name or mould file, truncated to the session depth.
fn resolve<E: moulde_core::mould::Executor>(wb: &Workbench<'_, E>, text: &str) -> Result<Mould, CliError> {
    if is_file_target(text) {
        let m = load_file(text)?;
        if m.max_depth() < wb.depth() {
            return Err(CliError::Usage(format!(
                "{text} is truncated at depth {}, below the requested depth {}",
                m.max_depth(),
                wb.depth()
            )));
        }
        return Ok(m.truncate(wb.depth()));
    }
    Ok(wb.named(text)?)
}

fn session_depth(config: &RunArgs, file: Option<&str>) -> Result<usize, CliError> {
    let depth = match (config.max_depth, file) {
        (Some(d), _) => d,
        (None, Some(path)) if is_file_target(path) => load_file(path)?.max_depth(),
        (None, _) => DEFAULT_DEPTH,
    };
    if depth == 0 || depth > MAX_VARS {
        return Err(CliError::Usage(format!("--max-depth must lie in 1..={MAX_VARS}, got {depth}")));
    }
    Ok(depth)
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<bool, CliError> {
    let config = &cli.config;
    let file = match &cli.command {
        Command::Compute { name, .. } => Some(name.as_str()),
        Command::Verify { target, .. } => target.as_deref(),
        Command::Eval { target, .. } => Some(target.as_str()),
        _ => None,
    };
    let depth = session_depth(config, file)?;
    let pool = Pool::new(config.jobs).map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
    let session = Session { config, depth, pool };
    match &cli.command {
        Command::Compute { name, apply } => compute(&session, out, name, apply),
        Command::Verify { law, target, seed_power, weight } => {
            verify(&session, out, *law, target.as_deref(), *seed_power, *weight)
        }
        Command::Bracket { expr } => {
            let e = BracketExpr::parse(expr)?;
            let wb = Workbench::new(session.depth, &session.pool);
            let m = wb.evaluate(&e, config.bracket.into())?;
            session.emit_mould(out, &e.to_string(), &m)?;
            Ok(true)
        }
        Command::Compare { seed_power } => compare(&session, out, *seed_power),
        Command::Decompose { which } => decompose(&session, out, *which),
        Command::Eval { target, words } => {
            let s = parse_wordsum(words)?;
            let wb = Workbench::new(session.depth, &session.pool);
            let value = resolve(&wb, target)?.evaluate(&s)?;
            match config.output {
                Output::Json => {
                    let v = json!({"target": target, "words": s.to_string(), "value": value.to_string()});
                    writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("plain data serializes"))?;
                }
                Output::Text => writeln!(out, "{value}")?,
            }
            Ok(true)
        }
    }
}

fn compute(session: &Session<'_>, out: &mut dyn Write, name: &str, apply: &[Op]) -> Result<bool, CliError> {
    let wb = Workbench::new(session.depth, &session.pool);
    let mut m = resolve(&wb, name)?;
    let mut label = name.to_string();
    for op in apply {
        m = match op {
            Op::Sharp => m.sharp(),
            Op::Flat => m.flat(),
            Op::Anti => m.anti(),
            Op::Varphi => m.varphi(),
            Op::SwapFlat => m.swap_flat(),
            Op::ChiE => wb.chi_e(&m)?,
            Op::ChiB => wb.chi_b(&m)?,
            Op::ChiBInv => wb.chi_b_inv(&m)?,
        };
        let op_name = op.to_possible_value().expect("no skipped variants");
        label = format!("{}({label})", op_name.get_name());
    }
    session.emit_mould(out, &label, &m)?;
    Ok(true)
}

fn sigma_index(target: Option<&str>) -> Result<u32, CliError> {
    let text = target.ok_or_else(|| CliError::Usage("sigma-decomposition needs --target 3|5|7|9".into()))?;
    text.trim_start_matches("sigma")
        .parse()
        .ok()
        .filter(|w| matches!(w, 3 | 5 | 7 | 9))
        .ok_or_else(|| CliError::Usage(format!("unknown decomposition `{text}`; expected 3, 5, 7 or 9")))
}

fn verify(
    session: &Session<'_>,
    out: &mut dyn Write,
    law: Law,
    target: Option<&str>,
    seed_power: i32,
    weight: Option<i64>,
) -> Result<bool, CliError> {
    if law == Law::SigmaDecomposition {
        return decompose(session, out, sigma_index(target)?);
    }
    session.gate(session.depth, "verification")?;
    let wb = Workbench::new(session.depth, &session.pool);
    let exec = &session.pool;
    let mut cross = session.cross_check();
    let need_target = || target.ok_or_else(|| CliError::Usage("this law needs --target".into()));
    let mut reports = Vec::new();
    match law {
        Law::Dm | Law::Ls => {
            let f = resolve(&wb, need_target()?)?;
            let polar = law == Law::Dm;
            reports.push(if polar { check_dm_with(&f, exec) } else { check_ls_with(&f, exec) });
            if let Some(cc) = cross.as_mut() {
                reports.push(cc.equations(&f, polar));
            }
        }
        Law::V => {
            let f = resolve(&wb, need_target()?)?;
            reports.push(check_in_v(&f));
            if let Some(cc) = cross.as_mut() {
                reports.push(cc.equal("V", &f, &f.varphi().neg(), 1, f.max_depth()));
            }
        }
        Law::Weight => {
            let f = resolve(&wb, need_target()?)?;
            let w = weight
                .or(f.weight())
                .ok_or_else(|| CliError::Usage("the target carries no weight; pass --weight".into()))?;
            reports.push(check_weight(&f, -w));
        }
        Law::Witt => reports.push(witt_check(session.depth)),
        Law::SIdentity => reports.push(s_identity_check()),
        Law::Calibration => reports.push(calibrate(exec)),
        Law::Phi0Extra => reports.push(phi0_extra_check(&wb)?),
        Law::PalSymmetral => reports.push(pal_symmetral(&wb)?),
        Law::Phi0Shuffle => reports.push(phi0_shuffle(&wb)?),
        Law::TheoremMain | Law::RemarkDiff => {
            let f = seed(seed_power, session.depth);
            let c = compare_lifts(&wb, &f)?;
            reports.push(if law == Law::TheoremMain { c.agreement } else { c.remark });
            if let (Some(cc), Some(d)) = (cross.as_mut(), f.lowest_depth()) {
                let zero = Mould::zero(session.depth);
                reports.push(cc.equal("theorem-main", &c.difference, &zero, d, (d + 3).min(session.depth)));
            }
        }
        Law::Prop54 => reports.push(prop54_check(&wb, &seed(seed_power, session.depth))?),
        Law::XiRelation => reports.push(xi_relation(&wb)?),
        Law::SigmaDecomposition => unreachable!("handled above"),
    }
    session.emit_reports(out, &reports)
}

fn compare(session: &Session<'_>, out: &mut dyn Write, seed_power: i32) -> Result<bool, CliError> {
    session.gate(session.depth, "comparison")?;
    let wb = Workbench::new(session.depth, &session.pool);
    let f = seed(seed_power, session.depth);
    let c = compare_lifts(&wb, &f)?;
    let passed = c.agreement.passed() && c.remark.passed();
    let name = format!("chi_E - chi_B of x1^{seed_power}");
    match session.config.output {
        Output::Json => {
            let v = json!({
                "agreement": ReportJson::from(&c.agreement),
                "remark": ReportJson::from(&c.remark),
                "difference": MouldFile::from_mould(&name, &c.difference),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("plain data serializes"))?;
        }
        Output::Text => {
            write!(out, "{}{}", c.agreement, c.remark)?;
            write!(out, "{}", mould_to_text(&name, &c.difference))?;
        }
    }
    Ok(passed)
}

fn decompose(session: &Session<'_>, out: &mut dyn Write, which: u32) -> Result<bool, CliError> {
    let Some((modulus, _)) = moulde_core::solutions::sigma_terms(which) else {
        return Err(CliError::Usage(format!("unknown decomposition `{which}`; expected 3, 5, 7 or 9")));
    };
    let depth = modulus - 1;
    if which == 7 && !session.config.long {
        return Err(CliError::Usage("sigma7 needs depth 6 and is a long job; pass --long".into()));
    }
    session.gate(depth, "decomposition")?;
    let wb = Workbench::new(depth, &session.pool);
    let (report, m) = decompose_sigma(&wb, which)?;
    let name = format!("sigma{which} mod depth {modulus}");
    match session.config.output {
        Output::Json => {
            let v = json!({"report": ReportJson::from(&report), "mould": MouldFile::from_mould(&name, &m)});
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("plain data serializes"))?;
        }
        Output::Text => write!(out, "{report}{}", mould_to_text(&name, &m))?,
    }
    Ok(report.passed())
}
