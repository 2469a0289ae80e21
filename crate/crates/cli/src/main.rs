//! `kneserlab`: build stable Kneser hypergraphs, compute chromatic numbers,
//! sweep parameter grids and verify colorings and labelings.
//!
//! Exit codes: 0 success, 1 a mathematical check failed, 2 usage or input
//! error, 3 a search or enumeration ran out of budget.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::{info, warn};

use kneserlab::bounds::{is_prime, scan_cell, scan_cells, ScanOptions, ScanRecord, Status};
use kneserlab::coloring::{
    explicit_coloring, lift_coloring, min_element_coloring, random_greedy_colorings, verify_proper, Properness,
};
use kneserlab::kneser::{build, colorability_defect_bruteforce, colorability_defect_formula, GroundHypergraph};
use kneserlab::report::{write_csv, ResultCache, ScanConfig};
use kneserlab::solver::{chromatic_number, find_colorful_bipartite_bruteforce, SolverConfig, WitnessSearch};
use kneserlab::topo::{
    colorful_from_fan, extract_fan_chain, implied_palette_bound, verify_fan_antipodal, verify_fan_complementary,
    verify_zp_tucker, ChainSearch,
};
use kneserlab::{Budget, Coloring, Error, FanLabeling, KneserHypergraph, Mode, ParamSet, TuckerLabeling};

#[derive(Parser)]
#[command(
    name = "kneserlab",
    version,
    about = "Exact combinatorics for stable Kneser hypergraphs"
)]
struct Cli {
    /// Node budget per search (overrides KNESERLAB_BUDGET).
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a hypergraph and write it as JSON.
    Build {
        #[command(flatten)]
        params: ParamArgs,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact chromatic number with the closed-form bounds.
    Chi {
        #[command(flatten)]
        params: ParamArgs,
        /// Write the optimal coloring as a JSON array.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Print the full result as JSON instead of one line.
        #[arg(long)]
        json: bool,
    },
    /// Sweep the grid of a configuration file.
    Scan {
        /// key=value configuration with a [grid] section.
        #[arg(long)]
        config: Option<PathBuf>,
        /// CSV output (overrides the config; stdout when neither is set).
        #[arg(long)]
        csv: Option<PathBuf>,
        /// JSONL result cache (overrides the config).
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Solve cells whose bounds already meet.
        #[arg(long)]
        solve_all: bool,
        /// Write 0 in the millis column so repeated runs are byte-identical.
        #[arg(long)]
        no_timing: bool,
    },
    /// Check one of the constructions or lemmas on concrete parameters.
    Verify(VerifyArgs),
}

#[derive(Args, Clone, Copy)]
struct ParamArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
    #[arg(long, default_value_t = 2)]
    r: u32,
    #[arg(long, default_value_t = 1)]
    s: u32,
    #[arg(long, default_value = "path")]
    mode: Mode,
}

impl ParamArgs {
    fn params(&self) -> ParamSet {
        ParamSet::new(self.n, self.k, self.r, self.s, self.mode)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    Coloring,
    Colorful,
    Tucker,
    Fan,
    Defect,
    Lift,
}

#[derive(Args)]
struct VerifyArgs {
    what: What,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    s: Option<u32>,
    /// Prime modulus for `tucker` (defaults to r, then 2).
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    mode: Option<Mode>,
    /// Target uniformity for `lift`.
    #[arg(long)]
    r1: Option<u32>,
    /// Largest n for `defect`.
    #[arg(long)]
    n_max: Option<u32>,
    /// Largest k for `defect`.
    #[arg(long)]
    k_max: Option<u32>,
    /// Hypergraph JSON for `coloring`.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Coloring JSON array for `coloring`, `tucker` and `fan`.
    #[arg(long)]
    coloring: Option<PathBuf>,
    /// Random greedy colorings to test besides the optimal one.
    #[arg(long, default_value_t = 0)]
    colorings: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Verdict of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Verdict {
    Pass,
    Fail,
    Indeterminate,
}

impl Verdict {
    fn code(self) -> u8 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Indeterminate => 3,
        }
    }
}

fn error_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::BudgetExceeded { .. } | Error::CapExceeded { .. }) => 3,
        Some(Error::Inconsistent(_)) => 1,
        _ => 2,
    }
}

fn budget(cli_budget: Option<u64>) -> Budget {
    let b = Budget::from_env();
    match cli_budget {
        Some(nodes) => b.with_nodes(nodes),
        None => b,
    }
}

fn create(path: &Path) -> anyhow::Result<BufWriter<File>> {
    Ok(BufWriter::new(
        File::create(path).with_context(|| format!("cannot write {}", path.display()))?,
    ))
}

fn cmd_build(params: ParamSet, out: Option<&Path>, budget: &Budget) -> anyhow::Result<Verdict> {
    params.validate()?;
    let hg = build(&params, budget)?;
    let json = hg.to_json_string()?;
    match out {
        Some(path) => {
            std::fs::write(path, format!("{json}\n")).with_context(|| format!("cannot write {}", path.display()))?;
            println!(
                "vertices={} edges={} written to {}",
                hg.vertex_count(),
                hg.edge_count(),
                path.display()
            );
        }
        None => println!("{json}"),
    }
    Ok(Verdict::Pass)
}

fn opt(v: Option<u32>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

fn cmd_chi(params: ParamSet, witness: Option<&Path>, json: bool, budget: &Budget) -> anyhow::Result<Verdict> {
    params.validate()?;
    if !params.meets_standing_hypothesis() {
        bail!(Error::Hypothesis(format!(
            "the bounds need n ≥ max(r,s)·k, got {params}"
        )));
    }
    let options = ScanOptions {
        solver: SolverConfig::with_budget(*budget),
        solve_when_bounds_meet: true,
        timing: true,
    };
    // surface build and cap errors with their exit codes before solving
    let hg = build(&params, budget)?;
    let cap = if params.r == 2 {
        options.solver.graph_cap
    } else {
        options.solver.hypergraph_cap
    };
    if hg.vertex_count() > cap {
        bail!(Error::CapExceeded {
            what: "chromatic number",
            size: hg.vertex_count(),
            cap
        });
    }
    let rec = scan_cell(&params, &options);
    if let Some(e) = &rec.error {
        bail!("{e}");
    }
    if let (Some(path), Some(colors)) = (witness, &rec.witness) {
        let c = Coloring::from_colors(colors.clone())?;
        c.save(path)?;
    }
    if json {
        println!("{}", serde_json::to_string_pretty(&rec)?);
    } else {
        let chi = match rec.exact {
            Some(c) => c.to_string(),
            None => format!("{}..{}", rec.lower, rec.upper),
        };
        println!(
            "chi={chi} lb_defect={} lb_topo={} ub={} status={}",
            rec.lb_defect,
            opt(rec.lb_topo),
            rec.ub,
            rec.status
        );
    }
    if let Err(msg) = rec.check_ordering() {
        eprintln!("bound violated: {msg}");
        return Ok(Verdict::Fail);
    }
    Ok(if rec.solved {
        Verdict::Pass
    } else {
        Verdict::Indeterminate
    })
}

fn cmd_scan(
    config: Option<&Path>,
    csv: Option<PathBuf>,
    cache: Option<PathBuf>,
    solve_all: bool,
    no_timing: bool,
    cli_budget: Option<u64>,
) -> anyhow::Result<Verdict> {
    let cfg = match config {
        Some(path) => ScanConfig::load(path).with_context(|| format!("reading {}", path.display()))?,
        None => ScanConfig::default(),
    };
    let mut b = budget(cli_budget);
    if let (None, Some(nodes)) = (cli_budget, cfg.budget) {
        b = b.with_nodes(nodes);
    }
    let mut solver = SolverConfig::with_budget(b);
    solver.graph_cap = cfg.graph_cap.unwrap_or(solver.graph_cap);
    solver.hypergraph_cap = cfg.hypergraph_cap.unwrap_or(solver.hypergraph_cap);
    let options = ScanOptions {
        solver,
        solve_when_bounds_meet: solve_all || cfg.solve_all,
        timing: !no_timing && cfg.timing.unwrap_or(true),
    };
    let mut cache = match cache.or(cfg.cache) {
        Some(path) => Some(ResultCache::open(path)?),
        None => None,
    };
    let cells = cfg.grid.cells();
    let fresh: Vec<ParamSet> = cells
        .iter()
        .filter(|p| cache.as_ref().is_none_or(|c| c.get(p).is_none()))
        .copied()
        .collect();
    info!("{} cells, {} not cached", cells.len(), fresh.len());
    let computed = scan_cells(&fresh, &options);
    if let Some(cache) = cache.as_mut() {
        for rec in &computed {
            cache.insert(rec.clone())?;
        }
    }
    let records: Vec<ScanRecord> = cells
        .iter()
        .map(|p| match cache.as_ref().and_then(|c| c.get(p)) {
            Some(rec) => rec.clone(),
            None => computed
                .iter()
                .find(|r| r.params() == *p)
                .expect("every cell computed")
                .clone(),
        })
        .collect();
    match csv.or(cfg.csv) {
        Some(path) => {
            let mut w = create(&path)?;
            write_csv(&records, &mut w)?;
            w.flush()?;
        }
        None => write_csv(&records, io::stdout().lock())?,
    }
    let mut verdict = Verdict::Pass;
    for rec in &records {
        if let Some(e) = &rec.error {
            warn!("{}: {e}", rec.key());
        }
        if let Err(msg) = rec.check_ordering() {
            eprintln!("bound violated: {msg}");
            verdict = Verdict::Fail;
        } else if rec.status == Status::Indeterminate && verdict == Verdict::Pass {
            verdict = Verdict::Indeterminate;
        }
    }
    Ok(verdict)
}

fn need(v: Option<u32>, flag: &str, what: &str) -> anyhow::Result<u32> {
    v.ok_or_else(|| anyhow::Error::new(Error::InvalidParams(format!("verify {what} needs --{flag}"))))
}

fn report(ok: bool, msg: impl AsRef<str>) -> Verdict {
    if ok {
        println!("PASS {}", msg.as_ref());
        Verdict::Pass
    } else {
        println!("FAIL {}", msg.as_ref());
        Verdict::Fail
    }
}

/// The coloring named by `--coloring`, or an optimal one.
fn chosen_coloring(args: &VerifyArgs, hg: &KneserHypergraph, b: &Budget) -> anyhow::Result<Option<Coloring>> {
    if let Some(path) = &args.coloring {
        return Ok(Some(Coloring::load(path)?));
    }
    let res = chromatic_number(hg, &SolverConfig::with_budget(*b))?;
    Ok(res.chi.map(|_| res.witness))
}

fn verify_coloring(args: &VerifyArgs, b: &Budget) -> anyhow::Result<Verdict> {
    let (hg, coloring) = match (&args.graph, &args.coloring) {
        (Some(g), Some(c)) => (KneserHypergraph::load(g)?, Coloring::load(c)?),
        (None, None) => {
            let p = ParamSet::new(
                need(args.n, "n", "coloring")?,
                need(args.k, "k", "coloring")?,
                args.r.unwrap_or(2),
                args.s.unwrap_or(1),
                args.mode.unwrap_or(Mode::Path),
            );
            p.validate()?;
            let hg = build(&p, b)?;
            let c = explicit_coloring(&hg)?;
            (hg, c)
        }
        _ => bail!(Error::InvalidParams(
            "verify coloring takes both --graph and --coloring, or parameters".into()
        )),
    };
    Ok(match verify_proper(&hg, &coloring)? {
        Properness::Proper => report(
            true,
            format!(
                "proper {}-coloring of {} vertices, {} edges",
                coloring.palette(),
                hg.vertex_count(),
                hg.edge_count()
            ),
        ),
        Properness::Monochromatic(edge) => {
            let sets: Vec<String> = edge.iter().map(|&v| hg.vertices()[v].to_string()).collect();
            report(false, format!("monochromatic edge {edge:?} = {}", sets.join(" ")))
        }
    })
}

fn graph_params(args: &VerifyArgs, what: &str) -> anyhow::Result<ParamSet> {
    let p = ParamSet::path(
        need(args.n, "n", what)?,
        args.k.unwrap_or(2),
        2,
        need(args.s, "s", what)?,
    );
    p.validate()?;
    if !p.meets_standing_hypothesis() {
        bail!(Error::Hypothesis(format!("needs n ≥ sk, got {p}")));
    }
    Ok(p)
}

fn verify_colorful(args: &VerifyArgs, b: &Budget) -> anyhow::Result<Verdict> {
    let p = graph_params(args, "colorful")?;
    let hg = build(&p, b)?;
    let t = (p.n - p.s * (p.k - 1)) as usize;
    let Some(best) = chosen_coloring(args, &hg, b)? else {
        println!("INDETERMINATE no optimal coloring within budget");
        return Ok(Verdict::Indeterminate);
    };
    let mut colorings = vec![best];
    colorings.extend(random_greedy_colorings(&hg, args.colorings, args.seed));
    let use_fan = p.n <= 10;
    for (i, c) in colorings.iter().enumerate() {
        if !verify_proper(&hg, c)?.is_proper() {
            return Ok(report(false, format!("coloring {i} is not proper")));
        }
        match find_colorful_bipartite_bruteforce(&hg, c, t, b)? {
            WitnessSearch::Found(w) => {
                if let Err(e) = w.check(&hg, c, t) {
                    return Ok(report(false, format!("coloring {i}: invalid witness: {e}")));
                }
            }
            WitnessSearch::NotFound => {
                return Ok(report(false, format!("coloring {i}: no colorful K_{{⌈t/2⌉,⌊t/2⌋}}")))
            }
            WitnessSearch::Indeterminate => {
                println!("INDETERMINATE coloring {i}: search budget exhausted");
                return Ok(Verdict::Indeterminate);
            }
        }
        if use_fan {
            let lambda = FanLabeling::new(&hg, c)?;
            let table = lambda.table(b)?;
            let chain = match extract_fan_chain(&table, p.n, b)? {
                ChainSearch::Found(chain) => chain,
                ChainSearch::NotFound => return Ok(report(false, format!("coloring {i}: no Fan chain"))),
                ChainSearch::Indeterminate => {
                    println!("INDETERMINATE coloring {i}: chain search budget exhausted");
                    return Ok(Verdict::Indeterminate);
                }
            };
            let w = colorful_from_fan(&chain, &lambda)?;
            if let Err(e) = w.check(&hg, c, t) {
                return Ok(report(false, format!("coloring {i}: Fan witness invalid: {e}")));
            }
        }
    }
    Ok(report(
        true,
        format!(
            "{} colorings of {p} each contain a colorful K_{},{}{}",
            colorings.len(),
            t.div_ceil(2),
            t / 2,
            if use_fan { " (brute force and Fan chain)" } else { "" }
        ),
    ))
}

fn verify_tucker(args: &VerifyArgs, b: &Budget) -> anyhow::Result<Verdict> {
    let pmod = args.p.or(args.r).unwrap_or(2);
    let p = ParamSet::path(
        need(args.n, "n", "tucker")?,
        args.k.unwrap_or(2),
        pmod,
        need(args.s, "s", "tucker")?,
    );
    p.validate()?;
    if !is_prime(pmod) {
        bail!(Error::NotPrime(pmod));
    }
    let hg = build(&p, b)?;
    let Some(c) = chosen_coloring(args, &hg, b)? else {
        println!("INDETERMINATE no optimal coloring within budget");
        return Ok(Verdict::Indeterminate);
    };
    let lambda = TuckerLabeling::new(&hg, &c)?;
    let table = lambda.table(b)?;
    let rep = verify_zp_tucker(&table, p.n, pmod, lambda.m(), lambda.alpha(), b)?;
    if let Some(v) = rep.violation {
        return Ok(report(false, serde_json::to_string(&v)?));
    }
    let implied = implied_palette_bound(p.n, p.k, pmod, p.s);
    Ok(report(
        c.palette() as i64 >= implied,
        format!(
            "alpha={} m={} alpha+(m-alpha)(p-1)={} >= n={}; t={} >= {implied}",
            rep.alpha,
            rep.m,
            rep.lhs,
            p.n,
            c.palette()
        ),
    ))
}

fn verify_fan(args: &VerifyArgs, b: &Budget) -> anyhow::Result<Verdict> {
    let p = graph_params(args, "fan")?;
    let hg = build(&p, b)?;
    let Some(c) = chosen_coloring(args, &hg, b)? else {
        println!("INDETERMINATE no optimal coloring within budget");
        return Ok(Verdict::Indeterminate);
    };
    let lambda = FanLabeling::new(&hg, &c)?;
    let table = lambda.table(b)?;
    if let Some(v) = verify_fan_antipodal(&table, p.n, lambda.m())? {
        return Ok(report(false, serde_json::to_string(&v)?));
    }
    if let Some(v) = verify_fan_complementary(&table, p.n, b)? {
        return Ok(report(false, serde_json::to_string(&v)?));
    }
    match extract_fan_chain(&table, p.n, b)? {
        ChainSearch::Found(chain) => {
            if let Err(e) = chain.check(p.n) {
                return Ok(report(false, e));
            }
            let w = colorful_from_fan(&chain, &lambda)?;
            let t = (p.n - p.s * (p.k - 1)) as usize;
            Ok(report(
                w.check(&hg, &c, t).is_ok(),
                format!(
                    "chain labels {:?}, witness {:?} | {:?}",
                    chain.labels, w.colors_a, w.colors_b
                ),
            ))
        }
        ChainSearch::NotFound => Ok(report(false, "no alternating chain")),
        ChainSearch::Indeterminate => {
            println!("INDETERMINATE chain search budget exhausted");
            Ok(Verdict::Indeterminate)
        }
    }
}

fn verify_defect(args: &VerifyArgs) -> anyhow::Result<Verdict> {
    let n_max = need(args.n_max.or(args.n), "n-max", "defect")?;
    let k_max = args.k_max.or(args.k).unwrap_or(3);
    let r = args.r.unwrap_or(2);
    let s = need(args.s, "s", "defect")?;
    let modes = args.mode.map_or(Mode::ALL.to_vec(), |m| vec![m]);
    let mut cells = 0;
    for k in 2..=k_max {
        for n in s * k..=n_max {
            for &mode in &modes {
                let p = ParamSet::new(n, k, r, s, mode);
                p.validate()?;
                let h = GroundHypergraph::stable_family(&p)?;
                let brute = colorability_defect_bruteforce(&h, r, 12)?;
                let formula = colorability_defect_formula(n, k, r, s);
                if brute != formula {
                    return Ok(report(false, format!("{p}: brute force {brute}, formula {formula}")));
                }
                cells += 1;
            }
        }
    }
    Ok(report(true, format!("{cells} cells agree")))
}

fn verify_lift(args: &VerifyArgs, b: &Budget) -> anyhow::Result<Verdict> {
    let p = ParamSet::path(
        need(args.n, "n", "lift")?,
        args.k.unwrap_or(2),
        args.r.unwrap_or(2),
        need(args.s, "s", "lift")?,
    );
    p.validate()?;
    let r1 = args.r1.unwrap_or(p.r + 1);
    let hg = build(&p, b)?;
    let c = min_element_coloring(&hg)?;
    let (big, f) = lift_coloring(&hg, &c, r1, b)?;
    let bp = big.params();
    Ok(match verify_proper(&big, &f)? {
        Properness::Proper => report(
            true,
            format!(
                "{}-coloring lifted to n={} r={} ({} vertices, {} edges)",
                f.palette(),
                bp.n,
                bp.r,
                big.vertex_count(),
                big.edge_count()
            ),
        ),
        Properness::Monochromatic(e) => report(false, format!("lifted coloring has monochromatic edge {e:?}")),
    })
}

fn run(cli: Cli) -> anyhow::Result<Verdict> {
    let b = budget(cli.budget);
    match cli.command {
        Command::Build { params, out } => cmd_build(params.params(), out.as_deref(), &b),
        Command::Chi { params, witness, json } => cmd_chi(params.params(), witness.as_deref(), json, &b),
        Command::Scan {
            config,
            csv,
            cache,
            solve_all,
            no_timing,
        } => cmd_scan(config.as_deref(), csv, cache, solve_all, no_timing, cli.budget),
        Command::Verify(args) => match args.what {
            What::Coloring => verify_coloring(&args, &b),
            What::Colorful => verify_colorful(&args, &b),
            What::Tucker => verify_tucker(&args, &b),
            What::Fan => verify_fan(&args, &b),
            What::Defect => verify_defect(&args),
            What::Lift => verify_lift(&args, &b),
        },
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(v) => ExitCode::from(v.code()),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(error_code(&e))
        }
    }
}
