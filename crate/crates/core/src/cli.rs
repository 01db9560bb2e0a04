//! Batch front end behind the `codtool` binary.
//!
//! [`run`] parses arguments and returns a [`CommandOutcome`] without
//! printing anything, so the whole interface can be tested in-process.
//! Positions in every report are 1-based, like the file formats.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::atomic::atomic_components;
use crate::bcod::{is_bcod, row_class, BcodCondition};
use crate::design::{parse_design, Design};
use crate::equivalence::{
    find_bj_rows, is_column_restricted, is_standard_form, standardize, to_bj_form, EquivOp,
};
use crate::error::Error;
use crate::generate::{construct_bcod, search_min_delay, SearchConfig};
use crate::gram::is_cod;
use crate::patterns::{
    bcod_delay_lower_bound, delta, find_complement, left_pattern, max_rate_delay_bound, nu,
    zero_pattern,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILED: i32 = 2;
pub const EXIT_NONEXISTENT: i32 = 3;
pub const EXIT_RESOURCE_LIMIT: i32 = 4;

/// Line that separates the report from the `key=value` block.
pub const MACHINE_MARKER: &str = "[machine]";

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommandOutcome {
    /// 0 ok, 1 usage or input error, 2 verification failed, 3 certified
    /// nonexistence, 4 resource limit.
    pub exit_code: i32,
    pub report: Vec<String>,
    /// Present only with `--machine`.
    pub machine: Option<Vec<(String, String)>>,
    pub diagnostics: Vec<String>,
}

impl CommandOutcome {
    /// Report lines, then the machine block if requested.
    pub fn stdout(&self) -> String {
        let mut out = String::new();
        for line in &self.report {
            out.push_str(line);
            out.push('\n');
        }
        if let Some(block) = &self.machine {
            out.push_str(MACHINE_MARKER);
            out.push('\n');
            for (k, v) in block {
                out.push_str(&format!("{k}={v}\n"));
            }
        }
        out
    }

    pub fn stderr(&self) -> String {
        self.diagnostics.iter().map(|l| format!("{l}\n")).collect()
    }

    /// Value of a machine key, if the block was requested and has it.
    pub fn machine_value(&self, key: &str) -> Option<&str> {
        self.machine
            .as_ref()?
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

#[derive(Parser, Debug)]
#[command(name = "codtool", version, about = "Complex orthogonal design toolkit")]
struct Cli {
    /// Append a stable key=value block after the report.
    #[arg(long, global = true)]
    machine: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check orthogonality and the balanced-design conditions.
    Verify { file: PathBuf },
    /// Build a balanced design with 2m columns and delay 2^m.
    Construct {
        #[arg(long)]
        m: usize,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Bring a balanced design into B_j form.
    Reduce {
        file: PathBuf,
        #[arg(long = "var")]
        var: u32,
        /// Print the equivalence-op script before the design.
        #[arg(long)]
        emit_ops: bool,
    },
    /// Zero patterns, left patterns and complements per row.
    Patterns { file: PathBuf },
    /// Complement row of one row.
    Complement {
        file: PathBuf,
        #[arg(long)]
        row: usize,
    },
    /// Split into atomic components.
    Atoms { file: PathBuf },
    /// Reference delay bounds for n columns.
    Bound {
        #[arg(long)]
        n: usize,
    },
    /// Exhaustive minimum-delay search (n <= 4, or 6 with --long-run).
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long = "max-p")]
        max_p: usize,
        /// Re-verify the result and state the certificate.
        #[arg(long)]
        certify: bool,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Disable symmetry pruning (same answer, slower).
        #[arg(long)]
        no_symmetry: bool,
        /// Allow n = 6.
        #[arg(long)]
        long_run: bool,
        #[arg(long)]
        node_limit: Option<u64>,
    },
}

struct Ctx {
    report: Vec<String>,
    machine: Vec<(String, String)>,
}

impl Ctx {
    fn line(&mut self, s: impl Into<String>) {
        self.report.push(s.into());
    }

    fn key(&mut self, k: &str, v: impl ToString) {
        self.machine.push((k.to_string(), v.to_string()));
    }
}

/// A failed command: exit code plus the message for stderr.
struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceLimit { .. } => EXIT_RESOURCE_LIMIT,
            Error::NotCod
            | Error::NotBcod
            | Error::BcodShape { .. }
            | Error::NotStandardForm
            | Error::NotBjCompatible { .. }
            | Error::UnreachableVariable { .. }
            | Error::NoComplement { .. }
            | Error::MultipleComplements { .. }
            | Error::NotConjugationSeparated { .. }
            | Error::ZeroRow { .. }
            | Error::SearchFailed(_)
            | Error::ConstructionFailed(_) => EXIT_FAILED,
            _ => EXIT_USAGE,
        };
        Failure(code, e.to_string())
    }
}

type Step = std::result::Result<i32, Failure>;

pub fn run<I, T>(argv: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let text = text.trim_end();
            return if e.use_stderr() {
                CommandOutcome {
                    exit_code: EXIT_USAGE,
                    diagnostics: text.lines().map(str::to_string).collect(),
                    ..Default::default()
                }
            } else {
                CommandOutcome {
                    exit_code: EXIT_OK,
                    report: text.lines().map(str::to_string).collect(),
                    ..Default::default()
                }
            };
        }
    };
    let mut ctx = Ctx {
        report: Vec::new(),
        machine: Vec::new(),
    };
    let step = match cli.command {
        Command::Verify { file } => verify(&mut ctx, &file),
        Command::Construct { m, output } => construct(&mut ctx, m, output.as_deref()),
        Command::Reduce {
            file,
            var,
            emit_ops,
        } => reduce(&mut ctx, &file, var, emit_ops),
        Command::Patterns { file } => patterns(&mut ctx, &file),
        Command::Complement { file, row } => complement(&mut ctx, &file, row),
        Command::Atoms { file } => atoms(&mut ctx, &file),
        Command::Bound { n } => bound(&mut ctx, n),
        Command::Search {
            n,
            max_p,
            certify,
            workers,
            no_symmetry,
            long_run,
            node_limit,
        } => {
            let mut cfg = SearchConfig::new(n, max_p);
            cfg.parallel_width = workers;
            cfg.symmetry_pruning = !no_symmetry;
            cfg.allow_long_run = long_run;
            if let Some(limit) = node_limit {
                cfg.node_limit = limit;
            }
            search(&mut ctx, &cfg, certify)
        }
    };
    let (exit_code, diagnostics) = match step {
        Ok(code) => (code, Vec::new()),
        Err(Failure(code, msg)) => (code, vec![format!("error: {msg}")]),
    };
    CommandOutcome {
        exit_code,
        report: ctx.report,
        machine: cli.machine.then_some(ctx.machine),
        diagnostics,
    }
}

fn load(path: &Path) -> std::result::Result<Design, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure(EXIT_USAGE, format!("cannot read {}: {e}", path.display())))?;
    parse_design(&text).map_err(|e| Failure(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn design_lines(d: &Design) -> impl Iterator<Item = String> + '_ {
    d.to_string()
        .lines()
        .map(str::to_string)
        .collect::<Vec<_>>()
        .into_iter()
}

fn one_based(items: impl IntoIterator<Item = usize>) -> String {
    items
        .into_iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn condition_key(c: BcodCondition) -> &'static str {
    match c {
        BcodCondition::ZeroCount => "zero_count",
        BcodCondition::ConjugationSeparated => "conjugation_separated",
        BcodCondition::SkewBlocks => "skew_blocks",
        BcodCondition::OccurrenceBalance => "occurrence_balance",
    }
}

fn verify(ctx: &mut Ctx, file: &Path) -> Step {
    let d = load(file)?;
    ctx.line(format!("shape: p={} n={} k={}", d.rows(), d.cols(), d.vars()));
    ctx.key("p", d.rows());
    ctx.key("n", d.cols());
    ctx.key("k", d.vars());

    let cod = is_cod(&d);
    ctx.line(format!("cod: {}", if cod.is_cod() { "ok" } else { "FAIL" }));
    for v in &cod.violations {
        ctx.line(format!("  {v}"));
    }
    for w in &cod.warnings {
        ctx.line(format!("warning: {w}"));
    }
    ctx.key("cod", cod.is_cod());

    let verdict = match is_bcod(&d) {
        Ok(rep) => {
            for c in BcodCondition::ALL {
                let ok = rep.holds(c);
                ctx.line(format!("{}: {}", c.label(), if ok { "ok" } else { "FAIL" }));
                for v in rep.violations_of(c) {
                    ctx.line(format!("  {v}"));
                }
                ctx.key(&format!("bcod.{}", condition_key(c)), if ok { "ok" } else { "fail" });
            }
            rep.is_bcod()
        }
        Err(e) => {
            let why = match e {
                Error::NotCod => "not a COD".to_string(),
                other => other.to_string(),
            };
            for c in BcodCondition::ALL {
                ctx.line(format!("{}: skipped ({why})", c.label()));
                ctx.key(&format!("bcod.{}", condition_key(c)), "skipped");
            }
            false
        }
    };
    ctx.key("bcod", verdict);
    ctx.line(format!(
        "verdict: {}",
        match (cod.is_cod(), verdict) {
            (_, true) => "balanced COD",
            (true, false) => "COD, not balanced",
            (false, _) => "not a COD",
        }
    ));
    Ok(if verdict { EXIT_OK } else { EXIT_FAILED })
}

fn construct(ctx: &mut Ctx, m: usize, output: Option<&Path>) -> Step {
    let d = construct_bcod(m)?;
    ctx.key("m", m);
    ctx.key("p", d.rows());
    ctx.key("n", d.cols());
    ctx.key("k", d.vars());
    match output {
        Some(path) => {
            fs::write(path, format!("{d}\n")).map_err(|e| {
                Failure(EXIT_USAGE, format!("cannot write {}: {e}", path.display()))
            })?;
            ctx.line(format!("wrote {} ({}x{}, {} variables)", path.display(), d.rows(), d.cols(), d.vars()));
        }
        None => ctx.report.extend(design_lines(&d)),
    }
    Ok(EXIT_OK)
}

fn reduce(ctx: &mut Ctx, file: &Path, var: u32, emit_ops: bool) -> Step {
    let d = load(file)?;
    if var == 0 || var > d.vars() {
        return Err(Failure(
            EXIT_USAGE,
            format!("--var {var} outside [1..{}]", d.vars()),
        ));
    }
    let m = d.cols() / 2;
    let was_standard = is_standard_form(&d)?.is_some();
    let (mut ops, start) = standardize(&d)?;
    let (bj_ops, out) = to_bj_form(&start, var)?;
    let restricted = is_column_restricted(&bj_ops, m);
    if was_standard && !restricted {
        return Err(Failure(
            EXIT_FAILED,
            "reduction from standard form used a non-restricted column permutation".into(),
        ));
    }
    let rep = find_bj_rows(&out, var)?;
    if !(rep.skew && rep.block_form && rep.has_positive_diagonal()) {
        return Err(Failure(EXIT_FAILED, format!("result is not in B_{var} form")));
    }
    ops.extend(bj_ops);
    if emit_ops {
        ctx.line("# ops");
        ctx.report.extend(ops.iter().map(EquivOp::to_string));
        ctx.line("# design");
    }
    ctx.report.extend(design_lines(&out));
    ctx.key("var", var);
    ctx.key("standardized", !was_standard);
    ctx.key("column_restricted", is_column_restricted(&ops, m));
    ctx.key("ops", ops.len());
    Ok(EXIT_OK)
}

fn patterns(ctx: &mut Ctx, file: &Path) -> Step {
    let d = load(file)?;
    let m = d.half_width().ok_or(Error::OddWidth(d.cols()))?;
    for r in 0..d.rows() {
        let zp = zero_pattern(&d, r)?;
        let lp = left_pattern(&d, r)?;
        let class = row_class(&d, r)?;
        let comp = match find_complement(&d, r) {
            Ok(rc) => (rc + 1).to_string(),
            Err(Error::NoComplement { .. }) | Err(Error::MultipleComplements { .. }) => {
                "none".into()
            }
            Err(e) => return Err(e.into()),
        };
        ctx.line(format!(
            "row {}: pattern={zp} left={lp} weight={} conj={class} complement={comp}",
            r + 1,
            lp.weight()
        ));
    }
    ctx.key("rows", d.rows());
    ctx.key("m", m);
    Ok(EXIT_OK)
}

fn complement(ctx: &mut Ctx, file: &Path, row: usize) -> Step {
    let d = load(file)?;
    if row == 0 || row > d.rows() {
        return Err(Failure(
            EXIT_USAGE,
            format!("--row {row} outside [1..{}]", d.rows()),
        ));
    }
    let rc = find_complement(&d, row - 1)?;
    ctx.line(format!("row {row}: complement={}", rc + 1));
    ctx.key("row", row);
    ctx.key("complement", rc + 1);
    Ok(EXIT_OK)
}

fn atoms(ctx: &mut Ctx, file: &Path) -> Step {
    let d = load(file)?;
    let comps = atomic_components(&d)?;
    for (c, comp) in comps.iter().enumerate() {
        let vars = comp
            .vars
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(",");
        ctx.line(format!(
            "component {}: vars={vars} rows={}",
            c + 1,
            one_based(comp.rows.iter().copied())
        ));
    }
    ctx.key("components", comps.len());
    ctx.key("atomic", comps.len() <= 1);
    Ok(EXIT_OK)
}

fn bound(ctx: &mut Ctx, n: usize) -> Step {
    let lower = bcod_delay_lower_bound(n)?;
    let rod = nu(n)?;
    let maxrate = max_rate_delay_bound(n)?;
    let lower = lower.map_or_else(|| "n/a".to_string(), |v| v.to_string());
    ctx.line(format!("bcod_lower={lower} rod_nu={rod} maxrate_delay={maxrate}"));
    ctx.key("n", n);
    ctx.key("delta", delta(n)?);
    ctx.key("bcod_lower", lower);
    ctx.key("rod_nu", rod);
    ctx.key("maxrate_delay", maxrate);
    Ok(EXIT_OK)
}

fn search(ctx: &mut Ctx, cfg: &SearchConfig, certify: bool) -> Step {
    ctx.key("n", cfg.n);
    ctx.key("max_p", cfg.p_max);
    match search_min_delay(cfg)? {
        Some(d) => {
            if certify {
                let ok = is_cod(&d).is_cod() && is_bcod(&d).is_ok_and(|r| r.is_bcod());
                if !ok {
                    return Err(Failure(EXIT_FAILED, "search result failed verification".into()));
                }
                ctx.line(format!(
                    "# minimum delay {} for n={}: exhaustive, no balanced design with fewer rows",
                    d.rows(),
                    cfg.n
                ));
            }
            ctx.report.extend(design_lines(&d));
            ctx.key("result", "found");
            ctx.key("p", d.rows());
            Ok(EXIT_OK)
        }
        None => {
            let line = if certify {
                format!(
                    "certified: no balanced design with n={} and p<={}",
                    cfg.n, cfg.p_max
                )
            } else {
                format!("none: no balanced design with n={} and p<={}", cfg.n, cfg.p_max)
            };
            ctx.line(line);
            ctx.key("result", "none");
            Ok(EXIT_NONEXISTENT)
        }
    }
}
