//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on runtime failure (including failed
//! validation checks), 2 on usage errors. Human-readable output goes to
//! standard output; machine-readable output goes to files given with `-o`
//! or to standard output with `--json`, never mixed with the former.

use std::error::Error;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::edgelist;
use crate::experiments::{run_substrate_comparison, run_sweep, SweepConfig, SweepResult};
use crate::generators::{gen_model_on, BridgeSpec, ModelParams, Substrate};
use crate::graph::{Community, NodeId};
use crate::metrics::{count_entry_paths, social_distances, DEFAULT_EXPANSION_BUDGET};
use crate::plot::{comparison_plot, sweep_plot};
use crate::survey::{bundled_sample, homophily_distribution, load_survey};
use crate::theory::{social_distance_law, TheoryInputs};
use crate::validate::{self, Level};

type CliResult = Result<ExitCode, Box<dyn Error>>;

#[derive(Debug, Parser)]
#[command(name = "bridgegap", version, about = "Two-community network simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a community graph and write it as an edge list.
    Gen(GenArgs),
    /// Social distances of every BC node, or entry path counts for one node.
    Measure(MeasureArgs),
    /// Evaluate the closed-form predictions.
    Theory(TheoryArgs),
    /// Mean social distance against bridge count.
    Sweep(SweepArgs),
    /// Run one sweep on ER and on scale-free blocks.
    Compare(CompareArgs),
    /// Homophily table from a friendship survey CSV.
    Survey(SurveyArgs),
    /// Run the acceptance checks.
    Validate(ValidateArgs),
}

fn probability(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("{v} is not in [0, 1]"))
    }
}

#[derive(Debug, Args)]
#[group(id = "bridge_spec", required = true, multiple = false)]
pub struct BridgeArgs {
    /// Independent probability of each cross pair.
    #[arg(long, value_parser = probability, group = "bridge_spec")]
    pub bridge_prob: Option<f64>,
    /// Exact number of bridges.
    #[arg(long, group = "bridge_spec")]
    pub bridges: Option<u64>,
}

impl BridgeArgs {
    fn spec(&self) -> BridgeSpec {
        match (self.bridge_prob, self.bridges) {
            (Some(b), _) => BridgeSpec::Prob(b),
            (None, Some(x)) => BridgeSpec::Count(x),
            (None, None) => unreachable!("clap enforces one bridge flag"),
        }
    }
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n1: usize,
    #[arg(long, value_parser = probability)]
    pub p1: f64,
    #[arg(long)]
    pub n2: usize,
    #[arg(long, value_parser = probability)]
    pub p2: f64,
    #[command(flatten)]
    pub bridges: BridgeArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "er")]
    pub substrate: SubstrateArg,
    #[arg(short = 'o', long = "output")]
    pub output: PathBuf,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
pub enum SubstrateArg {
    Er,
    Sf,
}

impl From<SubstrateArg> for Substrate {
    fn from(s: SubstrateArg) -> Self {
        match s {
            SubstrateArg::Er => Substrate::Er,
            SubstrateArg::Sf => Substrate::ScaleFree,
        }
    }
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Count entry paths from this BC node instead.
    #[arg(long, requires = "lmax")]
    pub entry_paths: Option<u32>,
    #[arg(long)]
    pub lmax: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_EXPANSION_BUDGET)]
    pub budget: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct TheoryArgs {
    #[arg(long)]
    pub n1: u64,
    #[arg(long)]
    pub n2: u64,
    #[arg(long, value_parser = probability)]
    pub p1: f64,
    #[command(flatten)]
    pub bridges: BridgeArgs,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// JSON sweep configuration.
    #[arg(long)]
    pub config: PathBuf,
    /// Write the result CSV here; otherwise it goes to standard output.
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub plot: Option<PathBuf>,
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// JSON sweep configuration; the substrate key is ignored. Defaults to
    /// the built-in comparison grid.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub er_out: Option<PathBuf>,
    #[arg(long)]
    pub sf_out: Option<PathBuf>,
    #[arg(long)]
    pub plot: Option<PathBuf>,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SurveyArgs {
    /// Survey CSV; the bundled sample when omitted.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long, value_enum, default_value = "quick")]
    pub level: Level,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub threads: Option<usize>,
}

pub fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Gen(a) => gen(a),
        Command::Measure(a) => measure(a),
        Command::Theory(a) => theory(a),
        Command::Sweep(a) => {
            let threads = a.threads;
            with_threads(threads, || sweep(a))
        }
        Command::Compare(a) => {
            let threads = a.threads;
            with_threads(threads, || compare(a))
        }
        Command::Survey(a) => survey(a),
        Command::Validate(a) => {
            let threads = a.threads;
            with_threads(threads, || {
                let report = validate::run(a.level, a.seed);
                print!("{}", report.render());
                Ok(if report.all_passed() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::FAILURE
                })
            })
        }
    }
}

fn with_threads(threads: Option<usize>, f: impl FnOnce() -> CliResult + Send) -> CliResult {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()?;
    pool.install(|| f().map_err(|e| e.to_string()))
        .map_err(Into::into)
}

fn gen(a: GenArgs) -> CliResult {
    let params = ModelParams {
        n1: a.n1,
        p1: a.p1,
        n2: a.n2,
        p2: a.p2,
        bridges: a.bridges.spec(),
        seed: a.seed,
    };
    if let Err(e) = params.validate() {
        eprintln!("error: {e}");
        return Ok(ExitCode::from(2));
    }
    let g = gen_model_on(&params, a.substrate.into())?;
    edgelist::write_file(&g, &a.output)?;
    let c = g.edge_counts();
    println!("wrote {}", a.output.display());
    println!("nodes      n1 = {}  n2 = {}", g.n1(), g.n2());
    println!("edges      E1 = {}  E2 = {}  B = {}", c.intra1, c.intra2, c.bridges);
    println!(
        "connected  G1 = {}  G2 = {}",
        g.is_block_connected(Community::Bc),
        g.is_block_connected(Community::Fc)
    );
    if params.outside_sparse_regime() {
        println!("note       n2 * b >= 1: at least one bridge expected per BC node");
    }
    Ok(ExitCode::SUCCESS)
}

fn measure(a: MeasureArgs) -> CliResult {
    let g = edgelist::read_file(&a.graph)?;
    if let Some(node) = a.entry_paths {
        let lmax = a.lmax.expect("clap requires --lmax");
        let stats = count_entry_paths(&g, NodeId(node), lmax, a.budget)?;
        if a.json {
            println!("{}", serde_json::to_string_pretty(&stats)?);
        } else {
            println!("l,paths");
            for (i, c) in stats.counts.iter().enumerate() {
                println!("{},{c}", i + 1);
            }
        }
        return Ok(ExitCode::SUCCESS);
    }
    let report = social_distances(&g)?;
    let mean = report.mean_dstar.map(|m| format!("{m:.6}"));
    if a.json {
        let summary = serde_json::json!({
            "n1": g.n1(),
            "n2": g.n2(),
            "mean_dstar": report.mean_dstar,
            "unreachable_count": report.unreachable_count,
            "cumulative_capital": report.cumulative_capital,
            "histogram": report.histogram,
        });
        println!("{}", serde_json::to_string_pretty(&summary)?);
    } else {
        let mut out = String::from("node,dstar\n");
        for (u, d) in report.per_node.iter().enumerate() {
            let _ = writeln!(out, "{u},{d}");
        }
        let _ = writeln!(out, "# mean_dstar={}", mean.as_deref().unwrap_or("nan"));
        let _ = writeln!(out, "# unreachable_count={}", report.unreachable_count);
        let _ = writeln!(out, "# cumulative_capital={:.6}", report.cumulative_capital);
        print!("{out}");
    }
    Ok(ExitCode::SUCCESS)
}

fn theory(a: TheoryArgs) -> CliResult {
    let inputs = match a.bridges.spec() {
        BridgeSpec::Prob(b) => TheoryInputs::with_prob(a.n1, a.n2, a.p1, b),
        BridgeSpec::Count(x) => TheoryInputs::with_count(a.n1, a.n2, a.p1, x as f64),
    };
    let r = social_distance_law(&inputs)?;
    if a.json {
        println!("{}", serde_json::to_string_pretty(&r)?);
        return Ok(ExitCode::SUCCESS);
    }
    println!("{:<28} {}, {}", "n1, n2", a.n1, a.n2);
    println!("{:<28} {}", "p1", a.p1);
    println!("{:<28} {}", "b", inputs.b);
    println!("{:<28} {}", "expected bridges x", r.expected_bridges);
    println!("{:<28} {}", "mean BC degree n1 p1", inputs.mean_degree());
    println!("{:<28} {:.6}", "d0", r.d0);
    println!("{:<28} {:.6}", "predicted d* = d0 + 1", r.predicted_dstar);
    println!("{:<28} {:.6}", "connectivity p0 = ln(n1)/n1", r.connectivity_threshold_p0);
    if r.saturated {
        println!("{:<28} x >= n1, law predicts d* <= 1", "flag");
    }
    if r.dense_bridges {
        println!("{:<28} n2 b >= 1, outside the sparse-bridge regime", "flag");
    }
    println!();
    println!("{:>4} {:>16} {:>16} {:>16} {:>16}", "l", "M_l exact", "M_l approx", "E[X_l] exact", "E[X_l] approx");
    for (l, e) in &r.expected_xl {
        let m = r.m_l[l];
        println!(
            "{l:>4} {:>16.6e} {:>16.6e} {:>16.6e} {:>16.6e}",
            m.exact, m.approx, e.exact, e.approx
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn print_rows(r: &SweepResult) {
    println!(
        "{:>10} {:>10} {:>10} {:>10} {:>12} {:>12} {:>9}",
        "x", "mean d*", "std", "analytic", "unreachable", "capital", "excluded"
    );
    for row in &r.rows {
        println!(
            "{:>10} {:>10.4} {:>10.4} {:>10.4} {:>12.4} {:>12.3} {:>9}",
            row.x,
            row.mean_dstar,
            row.std_dstar,
            row.analytic_dstar.unwrap_or(f64::NAN),
            row.unreachable_frac,
            row.cumulative_capital,
            row.excluded_trials
        );
    }
}

fn sweep(a: SweepArgs) -> CliResult {
    let config = SweepConfig::from_path(&a.config)?;
    let result = run_sweep(&config)?;
    match &a.output {
        Some(path) => {
            fs::write(path, result.to_csv())?;
            print_rows(&result);
        }
        None => print!("{}", result.to_csv()),
    }
    if let Some(path) = &a.plot {
        fs::write(path, sweep_plot(&result).render())?;
    }
    Ok(ExitCode::SUCCESS)
}

fn compare(a: CompareArgs) -> CliResult {
    let config = match &a.config {
        Some(p) => SweepConfig::from_path(p)?,
        None => SweepConfig::default_comparison(),
    };
    let r = run_substrate_comparison(&config)?;
    if let Some(p) = &a.er_out {
        fs::write(p, r.er.to_csv())?;
    }
    if let Some(p) = &a.sf_out {
        fs::write(p, r.scale_free.to_csv())?;
    }
    if let Some(p) = &a.plot {
        fs::write(p, comparison_plot(&r).render())?;
    }
    if a.json {
        let summary = serde_json::json!({
            "max_divergence": r.max_divergence,
            "er_non_increasing": r.er_non_increasing,
            "sf_non_increasing": r.scale_free_non_increasing,
            "er_upward_steps": r.er.monotone_violations(),
            "sf_upward_steps": r.scale_free.monotone_violations(),
        });
        println!("{}", serde_json::to_string_pretty(&summary)?);
    } else {
        println!("ER blocks");
        print_rows(&r.er);
        println!("\nscale-free blocks");
        print_rows(&r.scale_free);
        println!(
            "\nmax divergence {:.4}; non-increasing: ER {}, SF {}",
            r.max_divergence, r.er_non_increasing, r.scale_free_non_increasing
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn survey(a: SurveyArgs) -> CliResult {
    let records = match &a.input {
        Some(p) => load_survey(p)?,
        None => bundled_sample(),
    };
    let d = homophily_distribution(&records)?;
    if a.json {
        println!("{}", serde_json::to_string_pretty(&d.to_json())?);
    } else {
        print!("{}", d.to_table());
    }
    Ok(ExitCode::SUCCESS)
}
