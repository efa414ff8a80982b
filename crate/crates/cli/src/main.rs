//! `superdirac` command-line entry point.

mod output;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use superdirac::analysis::suites::*;
use superdirac::analysis::{Chirality, Check, Report};
use superdirac::dsl::{parse_identity, verify_identity};
use superdirac::operators::catalog;
use superdirac::{Error, SpaceConfig};

use crate::output::{emit, Format};
use crate::sweep::{Cell, Sweep};

#[derive(Parser)]
#[command(name = "superdirac", version, about = "Exact verification suites for the super Dirac operator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Bosonic dimension; a single value or a range such as `3..5`.
    #[arg(long, default_value = "3")]
    m: String,
    /// Half the fermionic dimension; a single value or a range.
    #[arg(long, default_value = "0")]
    n: String,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// JSON-lines file of finished cells; finished cells are not recomputed.
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct Block {
    /// Highest polynomial degree of the test block.
    #[arg(long)]
    deg: Option<usize>,
    /// Highest spinor t-degree of the test block.
    #[arg(long = "spin-cut")]
    spin_cut: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ChiralityArg {
    All,
    Plus,
    Minus,
}

impl From<ChiralityArg> for Chirality {
    fn from(c: ChiralityArg) -> Self {
        match c {
            ChiralityArg::All => Chirality::All,
            ChiralityArg::Plus => Chirality::Plus,
            ChiralityArg::Minus => Chirality::Minus,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// The osp(1|2) relations between dirac, vector, laplace, r2 and euler.
    VerifyOsp12 {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        block: Block,
    },
    /// Compressed gradient against the Clifford form of the Dirac operator.
    VerifySteinWeiss {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        block: Block,
    },
    /// osp(m|2n) invariance, the K_ij bracket table and the bivector action.
    VerifyInvariance {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        block: Block,
    },
    /// Conformal symmetries Π_j and the K_αβ bracket table.
    VerifyConformal {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        block: Block,
    },
    /// Monogenic Fischer decomposition of H_k ⊗ S.
    Fischer {
        #[command(flatten)]
        common: Common,
        /// Degree or range of degrees, e.g. `1..4` or `1,3`.
        #[arg(long)]
        k: String,
        #[arg(long = "spin-cut")]
        spin_cut: Option<usize>,
    },
    /// Basis and dimension of the spherical monogenics M_k.
    Monogenics {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        k: String,
        #[arg(long = "spin-cut")]
        spin_cut: Option<usize>,
        #[arg(long, value_enum, default_value = "all")]
        chirality: ChiralityArg,
    },
    /// Eigenvalue structure of the Casimir x∂x on H_k ⊗ S.
    Casimir {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        k: String,
        #[arg(long = "spin-cut")]
        spin_cut: Option<usize>,
    },
    /// Submodules x·M_{k-1} inside M_k in the degenerate window.
    Submodule {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        k: String,
        #[arg(long = "spin-cut")]
        spin_cut: Option<usize>,
    },
    /// Singular vectors of M_k and their weights.
    Singular {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        k: String,
        #[arg(long = "spin-cut")]
        spin_cut: Option<usize>,
    },
    /// Powers Π_1^k applied to 1 ⊗ 1.
    PiPower {
        #[command(flatten)]
        common: Common,
        #[arg(long = "k-max", default_value_t = 6)]
        k_max: usize,
    },
    /// Rank and bracket closure of the Howe dual generators.
    HoweClosure {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        block: Block,
    },
    /// Verify an identity `lhs == rhs` symbolically and on a block.
    Check {
        identity: String,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        block: Block,
    },
    /// Catalog of named operators with parities and degree shifts.
    ListOps {
        #[command(flatten)]
        common: Common,
    },
}

/// Failure before any suite ran; exits with status 2.
struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

fn parse_range(text: &str) -> Result<Vec<usize>, Usage> {
    let bad = || Usage(format!("invalid value or range `{text}`"));
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if let Some((a, b)) = part.split_once("..") {
            let a: usize = a.parse().map_err(|_| bad())?;
            let b: usize = b.trim_start_matches('=').parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn configs(common: &Common) -> Result<Vec<SpaceConfig>, Usage> {
    let mut out = Vec::new();
    for m in parse_range(&common.m)? {
        if m == 0 {
            return Err(Usage("--m must be at least 1".into()));
        }
        for n in parse_range(&common.n)? {
            out.push(SpaceConfig::new(m, n)?);
        }
    }
    Ok(out)
}

fn block_cells(common: &Common, b: &Block, deg: usize, cut: usize) -> Result<Vec<Cell>, Usage> {
    let (deg, cut) = (b.deg.unwrap_or(deg), b.spin_cut.unwrap_or(cut));
    Ok(configs(common)?.into_iter().map(|c| Cell::new(c, deg, cut)).collect())
}

fn k_cells(common: &Common, k: &str, q: Option<usize>, default_shift: usize) -> Result<Vec<Cell>, Usage> {
    let ks = parse_range(k)?;
    let mut out = Vec::new();
    for c in configs(common)? {
        for &k in &ks {
            out.push(Cell::new(c, k, q.unwrap_or(k + default_shift)));
        }
    }
    Ok(out)
}

fn check_report(cfg: &SpaceConfig, text: &str, deg: usize, cut: usize) -> Result<Report, Usage> {
    let (lhs, rhs) = parse_identity(text)?;
    let result = verify_identity(cfg, &lhs, &rhs, deg, cut)?;
    let mut report = Report::new(
        "check",
        serde_json::json!({ "m": cfg.m(), "n": cfg.n(), "M": cfg.big_m(), "deg": deg, "spin_cut": cut }),
    );
    report.push(Check::new(
        text.trim(),
        "symbolic normal form and block evaluation agree",
        result.passed(),
        serde_json::to_value(&result).unwrap_or_default(),
    ));
    Ok(report)
}

fn run(cli: Cli) -> Result<bool, Usage> {
    let (common, sweep) = match &cli.command {
        Command::VerifyOsp12 { common, block } => {
            (common, Sweep::new("verify-osp12", block_cells(common, block, 4, 3)?, |c| osp12_suite(&c.cfg, c.k, c.q)))
        }
        Command::VerifySteinWeiss { common, block } => (
            common,
            Sweep::new("verify-stein-weiss", block_cells(common, block, 4, 3)?, |c| stein_weiss_suite(&c.cfg, c.k, c.q)),
        ),
        Command::VerifyInvariance { common, block } => (
            common,
            Sweep::new("verify-invariance", block_cells(common, block, 3, 2)?, |c| invariance_suite(&c.cfg, c.k, c.q)),
        ),
        Command::VerifyConformal { common, block } => (
            common,
            Sweep::new("verify-conformal", block_cells(common, block, 3, 2)?, |c| conformal_suite(&c.cfg, c.k, c.q)),
        ),
        Command::Fischer { common, k, spin_cut } => (
            common,
            Sweep::new("fischer", k_cells(common, k, *spin_cut, 2)?, |c| fischer_suite(&c.cfg, &[c.k], Some(c.q))),
        ),
        Command::Monogenics {
            common,
            k,
            spin_cut,
            chirality,
        } => {
            let ch = Chirality::from(*chirality);
            (
                common,
                Sweep::new("monogenics", k_cells(common, k, *spin_cut, 2)?, move |c| {
                    monogenics_suite(&c.cfg, c.k, Some(c.q), ch)
                }),
            )
        }
        Command::Casimir { common, k, spin_cut } => (
            common,
            Sweep::new("casimir", k_cells(common, k, *spin_cut, 2)?, |c| casimir_suite(&c.cfg, &[c.k], Some(c.q))),
        ),
        Command::Submodule { common, k, spin_cut } => (
            common,
            Sweep::new("submodule", k_cells(common, k, *spin_cut, 2)?, |c| submodule_suite(&c.cfg, &[c.k], Some(c.q))),
        ),
        Command::Singular { common, k, spin_cut } => (
            common,
            Sweep::new("singular", k_cells(common, k, *spin_cut, 2)?, |c| singular_suite(&c.cfg, &[c.k], Some(c.q))),
        ),
        Command::PiPower { common, k_max } => {
            let cells = configs(common)?.into_iter().map(|c| Cell::new(c, *k_max, 0)).collect();
            (common, Sweep::new("pi-power", cells, |c| pi_power_suite(&c.cfg, c.k)))
        }
        Command::HoweClosure { common, block } => (
            common,
            Sweep::new("howe-closure", block_cells(common, block, 2, 2)?, |c| howe_suite(&c.cfg, c.k, c.q)),
        ),
        Command::Check { identity, common, block } => {
            let cells = block_cells(common, block, 3, 2)?;
            let reports = cells
                .iter()
                .map(|c| check_report(&c.cfg, identity, c.k, c.q))
                .collect::<Result<Vec<_>, _>>()?;
            return emit(&reports, common.format, common.out.as_deref()).map_err(|e| Usage(e.to_string()));
        }
        Command::ListOps { common } => {
            let entries: Vec<_> = configs(common)?
                .iter()
                .map(|c| serde_json::json!({ "m": c.m(), "n": c.n(), "operators": catalog(c) }))
                .collect();
            let value = if entries.len() == 1 { entries[0].clone() } else { entries.into() };
            let text = serde_json::to_string_pretty(&value).expect("catalog serializes") + "\n";
            output::write(common.out.as_deref(), &text).map_err(|e| Usage(e.to_string()))?;
            return Ok(true);
        }
    };
    let reports = sweep.run(common.manifest.as_deref()).map_err(|e| Usage(e.to_string()))?;
    emit(&reports, common.format, common.out.as_deref()).map_err(|e| Usage(e.to_string()))
}

fn init_workers() {
    if let Some(n) = std::env::var("SUPERDIRAC_WORKERS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_workers();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
