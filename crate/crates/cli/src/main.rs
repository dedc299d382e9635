use std::fmt;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::json;

use gnslab::analysis::{self, DEFAULT_TOL};
use gnslab::counting::{
    self, depth2_max_genus, depth2_table_with, shape3_counts, tree_max_genus, CountKey, CountTable, Depth2Engine,
    Depth2Options, TreeOptions,
};
use gnslab::labeling::labeling_from_gns;
use gnslab::partition::{count_partitions, default_max_n, enumerate_partitions};
use gnslab::semigroup::validate_gns;
use gnslab::{Gns, Point};

const MAX_DIM: usize = 4;
const DEPTH2_DEFAULT_MAX: u32 = 60;

fn tree_default_max(d: usize) -> u32 {
    match d {
        2 => 12,
        3 => 7,
        _ => tree_max_genus(d),
    }
}

#[derive(Parser)]
#[command(name = "gnslab", version, about = "Counting and analysing generalized numerical semigroups")]
struct Cli {
    /// Worker threads (defaults to one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Count cache (JSON lines). GNSLAB_CACHE takes precedence.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Lift the default genus caps up to the engine limits.
    #[arg(long, global = true)]
    allow_long: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Count or list e-dimensional partitions.
    Partitions {
        #[command(subcommand)]
        action: PartitionAction,
    },
    /// Report invariants of the semigroup given by a gap file.
    Analyze {
        /// JSON object `{"dim": d, "gaps": [[..], ..]}`.
        #[arg(long)]
        gaps_file: PathBuf,
        /// Include the partition labeling.
        #[arg(long)]
        labeling: bool,
    },
    /// Count tables.
    Count {
        #[command(subcommand)]
        table: CountCommand,
    },
    /// Growth constants.
    Constants {
        #[command(subcommand)]
        constant: Constant,
    },
    /// Data series for plots.
    Plotdata {
        #[command(subcommand)]
        plot: Plot,
    },
}

#[derive(Subcommand)]
enum PartitionAction {
    Count(PartitionArgs),
    /// One JSON partition per line.
    Enumerate(PartitionArgs),
}

#[derive(Args)]
struct PartitionArgs {
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    n: u32,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Genus {
    /// A single genus.
    #[arg(long)]
    g: Option<u32>,
    /// Every genus up to this one.
    #[arg(long)]
    g_max: Option<u32>,
}

impl Genus {
    fn top(&self) -> u32 {
        self.g.or(self.g_max).expect("clap enforces one of --g, --g-max")
    }

    fn range(&self, first: u32) -> std::ops::RangeInclusive<u32> {
        match self.g {
            Some(g) => g..=g,
            None => first..=self.top(),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Engine {
    Auto,
    Generic,
    Planar,
}

#[derive(Subcommand)]
enum CountCommand {
    /// Depth-2 semigroups per genus.
    Depth2 {
        #[arg(long)]
        dim: usize,
        #[command(flatten)]
        genus: Genus,
        #[arg(long, value_enum, default_value_t = Engine::Auto)]
        engine: Engine,
    },
    /// All semigroups per genus, from the tree walk.
    Tree {
        #[arg(long)]
        dim: usize,
        #[command(flatten)]
        genus: Genus,
    },
    /// Semigroups per genus and depth.
    ByDepth {
        #[arg(long)]
        dim: usize,
        #[command(flatten)]
        genus: Genus,
    },
    /// Planar semigroups with shape [3] and [2,1].
    Shape3 {
        #[command(flatten)]
        genus: Genus,
    },
    /// Semigroups whose multset has one point per axis.
    Rectangular {
        #[arg(long)]
        dim: usize,
        #[command(flatten)]
        genus: Genus,
    },
}

#[derive(Subcommand)]
enum Constant {
    /// Root of x^k = (x+1)^(k-1).
    Rk {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Root of F_k(x) = 1 above 1/(k+1).
    Ck {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Root of sum p_e(n) x^-n = 2 over n up to the truncation.
    Rprime {
        /// Partition dimension e.
        #[arg(long)]
        dim: usize,
        /// Truncation N.
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
}

#[derive(Subcommand)]
enum Plot {
    /// Scaled depth-2 planar counts against 1/g.
    Fig5 {
        #[arg(long)]
        g_max: u32,
        /// Compute counts missing from the cache.
        #[arg(long)]
        compute: bool,
    },
}

enum Failure {
    Input(String),
    Cap(String),
}

impl From<gnslab::Error> for Failure {
    fn from(e: gnslab::Error) -> Self {
        if e.is_resource_cap() {
            Failure::Cap(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) | Failure::Cap(m) => f.write_str(m),
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let ctx = Context {
        cache: std::env::var_os("GNSLAB_CACHE").map(PathBuf::from).or(cli.cache.clone()),
        format: cli.format,
        allow_long: cli.allow_long,
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(&ctx, cli.command, &mut out).and_then(|()| out.flush().map_err(Failure::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(match f {
                Failure::Input(_) => 1,
                Failure::Cap(_) => 2,
            })
        }
    }
}

struct Context {
    cache: Option<PathBuf>,
    format: Format,
    allow_long: bool,
}

impl Context {
    fn load_cache(&self) -> Result<CountTable, Failure> {
        match &self.cache {
            Some(path) => Ok(CountTable::load(path)?),
            None => Ok(CountTable::new()),
        }
    }

    /// Cached table when every key is present; otherwise runs `compute`,
    /// merges and persists.
    fn cached_or(
        &self,
        keys: &[CountKey],
        compute: impl FnOnce() -> Result<CountTable, Failure>,
    ) -> Result<CountTable, Failure> {
        let mut table = self.load_cache()?;
        if keys.iter().all(|k| table.get(k).is_some()) {
            eprintln!("using {} cached cells", keys.len());
            return Ok(table);
        }
        table.extend(compute()?);
        if let Some(path) = &self.cache {
            table.flush(path)?;
        }
        Ok(table)
    }
}

fn check_dim(d: usize) -> Outcome {
    if d == 0 {
        return Err(Failure::Input("dimension must be at least 1".into()));
    }
    if d > MAX_DIM {
        return Err(Failure::Cap(format!("dimension {d} exceeds the cap of {MAX_DIM}")));
    }
    Ok(())
}

fn check_genus(what: &str, g: u32, default: u32, hard: u32, allow_long: bool) -> Outcome {
    let limit = if allow_long { hard } else { default.min(hard) };
    if g > limit {
        let hint = if !allow_long && hard > default { " (pass --allow-long to raise it)" } else { "" };
        return Err(Failure::Cap(format!("{what}: genus {g} exceeds the cap of {limit}{hint}")));
    }
    Ok(())
}

fn run(ctx: &Context, command: Command, out: &mut impl Write) -> Outcome {
    match command {
        Command::Partitions { action } => partitions(ctx, action, out),
        Command::Analyze { gaps_file, labeling } => analyze(&gaps_file, labeling, out),
        Command::Count { table } => count(ctx, table, out),
        Command::Constants { constant } => constants(ctx, constant, out),
        Command::Plotdata { plot: Plot::Fig5 { g_max, compute } } => fig5(ctx, g_max, compute, out),
    }
}

fn partitions(ctx: &Context, action: PartitionAction, out: &mut impl Write) -> Outcome {
    match action {
        PartitionAction::Count(PartitionArgs { dim, n }) => {
            if dim > MAX_DIM {
                return Err(Failure::Cap(format!("dimension {dim} exceeds the cap of {MAX_DIM}")));
            }
            let value = count_partitions(dim, n)?;
            match ctx.format {
                Format::Csv => writeln!(out, "{value}")?,
                Format::Json => writeln!(out, "{}", json!({ "dim": dim, "n": n, "value": value.to_string() }))?,
            }
        }
        PartitionAction::Enumerate(PartitionArgs { dim, n }) => {
            if dim > MAX_DIM {
                return Err(Failure::Cap(format!("dimension {dim} exceeds the cap of {MAX_DIM}")));
            }
            for p in enumerate_partitions(dim, n)? {
                writeln!(out, "{}", serde_json::to_string(&p)?)?;
            }
        }
    }
    Ok(())
}

fn analyze(path: &Path, with_labeling: bool, out: &mut impl Write) -> Outcome {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let raw: serde_json::Value = serde_json::from_str(&text)?;
    let dim = raw
        .get("dim")
        .and_then(|v| v.as_u64())
        .filter(|&d| d >= 1)
        .ok_or_else(|| Failure::Input("gap file needs a positive integer \"dim\"".into()))? as usize;
    let gaps: Vec<Point> = serde_json::from_value(raw.get("gaps").cloned().unwrap_or(json!([])))?;
    if let Err(v) = validate_gns(dim, &gaps) {
        return Err(Failure::Input(format!("not a generalized numerical semigroup: {v}")));
    }
    let s = Gns::new(dim, gaps)?;
    let m = s.multset();
    let depth = s.depth();
    let frobenius = if s.genus() == 0 { Vec::new() } else { s.frobenius_allowable_gaps()? };
    let mut report = json!({
        "dim": dim,
        "genus": s.genus(),
        "gaps": s.gaps(),
        "multset": m.points(),
        "shape": s.shape(),
        "depth": depth,
        "region_sizes": m.region_sizes(depth as usize + 1),
        "frobenius_allowable_gaps": frobenius,
    });
    if with_labeling {
        report["labeling"] = serde_json::to_value(labeling_from_gns(&s))?;
    }
    writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    Ok(())
}

fn count(ctx: &Context, command: CountCommand, out: &mut impl Write) -> Outcome {
    match command {
        CountCommand::Depth2 { dim, genus, engine } => {
            check_dim(dim)?;
            let top = genus.top();
            let keys: Vec<CountKey> = genus.range(0).map(|g| CountKey::new("depth2", dim, g)).collect();
            let table = ctx.cached_or(&keys, || {
                check_genus("depth-2 count", top, DEPTH2_DEFAULT_MAX, depth2_max_genus(dim), ctx.allow_long)?;
                let engine = match engine {
                    Engine::Auto => Depth2Engine::Auto,
                    Engine::Generic => Depth2Engine::Generic,
                    Engine::Planar => Depth2Engine::Planar,
                };
                let values = depth2_table_with(dim, top, Depth2Options { engine, include_depth_one: false })?;
                let mut t = CountTable::new();
                for (g, v) in values.into_iter().enumerate() {
                    t.record(CountKey::new("depth2", dim, g as u32), v);
                }
                Ok(t)
            })?;
            emit_values(ctx, &table, &keys, out)
        }
        CountCommand::Tree { dim, genus } => {
            check_dim(dim)?;
            let top = genus.top();
            let keys: Vec<CountKey> = genus.range(0).map(|g| CountKey::new("by_genus", dim, g)).collect();
            let table = ctx.cached_or(&keys, || {
                check_genus("tree walk", top, tree_default_max(dim), tree_max_genus(dim), ctx.allow_long)?;
                let counts = counting::walk_gns_tree(dim, top, TreeOptions::default())?;
                let mut t = CountTable::new();
                for (g, &n) in counts.by_genus.iter().enumerate() {
                    t.record(CountKey::new("by_genus", dim, g as u32), BigUint::from(n));
                }
                Ok(t)
            })?;
            emit_values(ctx, &table, &keys, out)
        }
        CountCommand::Rectangular { dim, genus } => {
            check_dim(dim)?;
            let top = genus.top();
            let keys: Vec<CountKey> = genus.range(0).map(|g| CountKey::new("rectangular", dim, g)).collect();
            let table = ctx.cached_or(&keys, || {
                check_genus("tree walk", top, tree_default_max(dim), tree_max_genus(dim), ctx.allow_long)?;
                Ok(counting::rectangular_counts(dim, top)?)
            })?;
            emit_values(ctx, &table, &keys, out)
        }
        CountCommand::ByDepth { dim, genus } => {
            check_dim(dim)?;
            let top = genus.top();
            let range = genus.range(0);
            let keys: Vec<CountKey> = range.clone().map(|g| CountKey::with_q("by_depth", dim, g, 0)).collect();
            let table = ctx.cached_or(&keys, || {
                check_genus("tree walk", top, tree_default_max(dim), tree_max_genus(dim), ctx.allow_long)?;
                Ok(counting::count_by_depth(dim, top)?)
            })?;
            let cells: Vec<(&CountKey, &BigUint)> = table
                .iter()
                .filter(|(k, _)| k.stat == "by_depth" && k.d == dim && range.contains(&k.g) && k.q.is_some())
                .collect();
            match ctx.format {
                Format::Csv => {
                    writeln!(out, "g,q,value")?;
                    for (k, v) in cells {
                        writeln!(out, "{},{},{v}", k.g, k.q.unwrap_or(0))?;
                    }
                }
                Format::Json => {
                    let mut sub = CountTable::new();
                    for (k, v) in cells {
                        sub.record(k.clone(), v.clone());
                    }
                    sub.write_json_lines(&mut *out)?;
                }
            }
            Ok(())
        }
        CountCommand::Shape3 { genus } => {
            let top = genus.top();
            let range = genus.range(1);
            let key = |stat: &str, g| CountKey::new(stat, 2, g);
            let keys: Vec<CountKey> =
                range.clone().flat_map(|g| [key("shape3_n3", g), key("shape3_n21", g)]).collect();
            let table = ctx.cached_or(&keys, || {
                let mut t = CountTable::new();
                for row in shape3_counts(top)? {
                    t.record(key("shape3_n3", row.g), BigUint::from(row.n3));
                    t.record(key("shape3_n21", row.g), BigUint::from(row.n21));
                }
                Ok(t)
            })?;
            match ctx.format {
                Format::Csv => {
                    writeln!(out, "g,n3,n21")?;
                    for g in range {
                        let n3 = table.get(&key("shape3_n3", g)).expect("present");
                        let n21 = table.get(&key("shape3_n21", g)).expect("present");
                        writeln!(out, "{g},{n3},{n21}")?;
                    }
                }
                Format::Json => emit_json(&table, &keys, out)?,
            }
            Ok(())
        }
    }
}

fn emit_values(ctx: &Context, table: &CountTable, keys: &[CountKey], out: &mut impl Write) -> Outcome {
    match ctx.format {
        Format::Csv => {
            writeln!(out, "g,value")?;
            for k in keys {
                writeln!(out, "{},{}", k.g, table.get(k).expect("present"))?;
            }
            Ok(())
        }
        Format::Json => emit_json(table, keys, out),
    }
}

fn emit_json(table: &CountTable, keys: &[CountKey], out: &mut impl Write) -> Outcome {
    let mut sub = CountTable::new();
    for k in keys {
        sub.record(k.clone(), table.get(k).expect("present").clone());
    }
    sub.write_json_lines(&mut *out)?;
    Ok(())
}

fn root_json(r: &gnslab::RootResult) -> serde_json::Value {
    json!({
        "value": r.value,
        "residual": r.residual,
        "iterations": r.iterations,
        "bracket": [r.bracket.0, r.bracket.1],
    })
}

fn constants(ctx: &Context, constant: Constant, out: &mut impl Write) -> Outcome {
    let (root, mut extra) = match constant {
        Constant::Rk { k, tol } => (analysis::r_k(k, tol)?, json!({ "constant": "rk", "k": k })),
        Constant::Ck { k, tol } => (analysis::c_k(k, tol)?, json!({ "constant": "ck", "k": k })),
        Constant::Rprime { dim, n, tol } => {
            if dim > MAX_DIM {
                return Err(Failure::Cap(format!("dimension {dim} exceeds the cap of {MAX_DIM}")));
            }
            let n = n.unwrap_or(if dim <= 2 { 60 } else { default_max_n(dim).min(16) });
            let r = analysis::r_prime(dim, n, tol)?;
            if r.estimate {
                eprintln!("estimate: series truncated at N = {n}; the true root is larger");
            }
            (r.root, json!({ "constant": "rprime", "dim": dim, "truncation": n, "estimate": r.estimate }))
        }
    };
    match ctx.format {
        Format::Csv => writeln!(out, "{}", root.value)?,
        Format::Json => {
            let mut obj = root_json(&root);
            if let (Some(o), Some(e)) = (obj.as_object_mut(), extra.as_object_mut()) {
                o.append(e);
            }
            writeln!(out, "{obj}")?;
        }
    }
    Ok(())
}

fn fig5(ctx: &Context, g_max: u32, compute: bool, out: &mut impl Write) -> Outcome {
    if g_max < 2 {
        return Err(Failure::Input("the series starts at g = 2".into()));
    }
    let key = |g| CountKey::new("depth2", 2, g);
    let mut table = ctx.load_cache()?;
    if let Some(g) = (2..=g_max).find(|&g| table.get(&key(g)).is_none()) {
        if !compute {
            return Err(Failure::Input(format!(
                "no cached depth-2 count for d = 2 at g = {g}; run `count depth2 --dim 2 --g-max {g_max}` or pass --compute"
            )));
        }
        check_genus("depth-2 count", g_max, DEPTH2_DEFAULT_MAX, depth2_max_genus(2), ctx.allow_long)?;
        for (g, v) in counting::depth2_table(2, g_max)?.into_iter().enumerate() {
            table.record(key(g as u32), v);
        }
        if let Some(path) = &ctx.cache {
            table.flush(path)?;
        }
    }
    let counts: Vec<BigUint> =
        (0..=g_max).map(|g| table.get(&key(g)).cloned().unwrap_or_default()).collect();
    let points = analysis::fig5_series(&counts, g_max)?;
    match ctx.format {
        Format::Csv => write!(out, "{}", analysis::fig5_csv(&points))?,
        Format::Json => {
            for p in points {
                writeln!(out, "{}", json!({ "g": p.g, "inv_g": p.inv_g, "scaled": p.scaled }))?;
            }
        }
    }
    Ok(())
}
