//! Command-line surface.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use clap::{Args, Parser, Subcommand};
use grahamlab_core::caterpillar::caterpillar_graph;
use grahamlab_core::graham::{
    family_members, group_by_sequence, predicted_step, verify_family, FamilyReport, FamilySpec,
    Method,
};
use grahamlab_core::graph::iterated_sizes;
use grahamlab_core::polypart::{fhat_values_with_largest_part, g_poly, g_rest_bound, MAX_PARTITION_N};
use grahamlab_core::pte::{
    defect_bound, leading_defect, power_sum, pte_defect, pte_split, w_family, w_length, w_sequence,
    w_sum,
};
use grahamlab_core::shadowcount::{
    clamp_table_vertices, lk_size_via_shadows_counted, table_trees, tree_weights, LookupStats,
};
use grahamlab_core::treegen::enumerate_tree_codes;
use grahamlab_core::{Error, Graph, GrahamSequence, Limits, WtTable};
use num_bigint::BigUint;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cache::{self, CacheDir};
use crate::error::{AppError, AppResult, EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION};
use crate::formats::{format_caterpillar_spec, format_polynomial, parse_caterpillar_spec, parse_edge_list, parse_polynomial};
use crate::output::{render, OutputFormat};

#[derive(Debug, Parser)]
#[command(name = "grahamlab", version, about = "Iterated line graphs of trees and the combinatorics around Graham's reconstruction question")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Directory for cached weight tables.
    #[arg(long, env = "GRAHAMLAB_CACHE", global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Largest intermediate line graph, in vertices.
    #[arg(long, global = true, default_value_t = Limits::default().max_vertices,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub vertex_ceiling: u64,
    /// Largest intermediate line graph, in edges.
    #[arg(long, global = true, default_value_t = Limits::default().max_edges,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub edge_ceiling: u64,
    #[arg(long, value_enum, global = true, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub parallelism: Option<u16>,
    /// Report cache and lookup statistics on stderr.
    #[arg(long, global = true)]
    pub stats: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Thue-Morse splits and power-sum defects.
    #[command(subcommand)]
    Pte(PteCommand),
    /// W(k;r,s,t) compositions.
    #[command(subcommand)]
    W(WCommand),
    /// Graham sequences of single trees and class census.
    #[command(subcommand)]
    Tree(TreeCommand),
    /// Weight tables.
    #[command(subcommand)]
    Wt(WtCommand),
    /// Caterpillar families that split at level k+1.
    #[command(subcommand)]
    Family(FamilyCommand),
    /// Distinct polynomial sums over partitions.
    #[command(subcommand)]
    Partitions(PartitionsCommand),
    /// Difference polynomials over shifted Thue-Morse halves.
    #[command(subcommand)]
    G(GCommand),
}

#[derive(Debug, Subcommand)]
pub enum PteCommand {
    Gen {
        #[arg(long)]
        k: u32,
    },
    Defect {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 0)]
        j: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum WCommand {
    Build {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        t: u32,
    },
    Family {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        sigma: u32,
    },
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum TreeCommand {
    Seq {
        /// Edge-list file.
        #[arg(long, conflicts_with = "caterpillar", required_unless_present = "caterpillar")]
        input: Option<PathBuf>,
        /// Caterpillar spec, e.g. "parts=3,0,2 m=6 pad=17".
        #[arg(long)]
        caterpillar: Option<String>,
        #[arg(long)]
        depth: usize,
        /// auto, direct or shadow.
        #[arg(long, default_value = "auto", value_parser = parse_method)]
        method: Method,
    },
    Classes {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        depth: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum WtCommand {
    Table {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        max_vertices: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum FamilyCommand {
    Build {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        sigma: u32,
        /// Extra spine edges on every member.
        #[arg(long, conflicts_with = "target_vertices")]
        pad: Option<usize>,
        /// Pad every member up to this many vertices.
        #[arg(long)]
        target_vertices: Option<usize>,
        /// Joint spacing, at least 2(k+1).
        #[arg(long)]
        spacing: Option<usize>,
        #[arg(long, default_value = "auto", value_parser = parse_method)]
        method: Method,
    },
}

#[derive(Debug, Subcommand)]
pub enum PartitionsCommand {
    Count {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=MAX_PARTITION_N as i64))]
        n: u32,
        /// Coefficients, highest degree first, e.g. "1,0,0".
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum GCommand {
    Poly {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        k: u32,
    },
}

/// What a command produced.
pub struct CommandOutput {
    pub json: Value,
    pub text: String,
    /// `Some` for commands that check something.
    pub verdict: Option<Result<(), String>>,
}

impl CommandOutput {
    fn plain(json: Value, text: String) -> Self {
        CommandOutput {
            json,
            text,
            verdict: None,
        }
    }

    fn checked(json: Value, text: String, verdict: Result<(), String>) -> Self {
        CommandOutput {
            json,
            text,
            verdict: Some(verdict),
        }
    }
}

struct Context {
    cache: CacheDir,
    limits: Limits,
    pool: rayon::ThreadPool,
    stats: Mutex<Vec<String>>,
    table: Mutex<Option<Arc<WtTable>>>,
}

impl Context {
    fn stat(&self, line: String) {
        self.stats.lock().expect("stats lock").push(line);
    }

    /// A table covering `level` for trees on `vertices` vertices, from the
    /// cache when possible.
    fn table_for(&self, level: usize, vertices: usize) -> AppResult<Arc<WtTable>> {
        let mut memo = self.table.lock().expect("table lock");
        if let Some(t) = memo.as_ref().filter(|t| t.covers(level as u32, vertices)) {
            return Ok(Arc::clone(t));
        }
        let table = match self.cache.find_covering(level, vertices) {
            Some((path, table)) => {
                self.stat(format!("cache: hit {}", path.display()));
                self.stat("weights computed: 0".into());
                table
            }
            None => {
                let max = level + 1;
                let (table, computed) = self.build_table(level, max)?;
                let path = self.cache.table_path(level, table.max_vertices());
                cache::store(&table, &path)?;
                self.stat(format!("cache: miss, stored {}", path.display()));
                self.stat(format!("weights computed: {computed}"));
                table
            }
        };
        let table = Arc::new(table);
        *memo = Some(Arc::clone(&table));
        Ok(table)
    }

    fn build_table(&self, k: usize, max_vertices: usize) -> AppResult<(WtTable, usize)> {
        let codes = table_trees(k, max_vertices)?;
        let weights: Vec<Vec<BigUint>> = self.pool.install(|| {
            codes
                .par_iter()
                .map(|c| tree_weights(&c.to_graph(), k, &self.limits))
                .collect::<Result<_, _>>()
        })?;
        let mut table = WtTable::new(clamp_table_vertices(k, max_vertices));
        for (code, w) in codes.iter().zip(&weights) {
            table.insert_weights(code, w)?;
        }
        Ok((table, codes.len() * (k + 1)))
    }

    fn shadow_sequence(&self, t: &Graph, depth: usize) -> AppResult<GrahamSequence> {
        let table = self.table_for(depth, t.vertex_count())?;
        let mut lookups = LookupStats::default();
        let terms = (0..=depth)
            .map(|j| lk_size_via_shadows_counted(t, j, &table, &mut lookups))
            .collect::<Result<Vec<_>, _>>()?;
        self.stat(format!(
            "subsets: {}, table hits: {}",
            lookups.subsets, lookups.table_hits
        ));
        Ok(GrahamSequence { terms })
    }

    /// The sequence and the method that actually produced it.
    fn sequence(&self, t: &Graph, depth: usize, method: Method) -> AppResult<(GrahamSequence, Method)> {
        t.require_tree()?;
        match method {
            Method::Direct => Ok((iterated_sizes(t, depth, &self.limits)?, Method::Direct)),
            Method::Shadow => Ok((self.shadow_sequence(t, depth)?, Method::Shadow)),
            Method::Auto => match iterated_sizes(t, depth, &self.limits) {
                Ok(seq) => Ok((seq, Method::Direct)),
                Err(Error::ResourceLimit { level, .. }) => {
                    self.stat(format!("direct iteration hit the ceiling at level {level}, using shadows"));
                    Ok((self.shadow_sequence(t, depth)?, Method::Shadow))
                }
                Err(e) => Err(e.into()),
            },
        }
    }
}

fn strings<T: ToString>(xs: impl IntoIterator<Item = T>) -> Vec<String> {
    xs.into_iter().map(|x| x.to_string()).collect()
}

fn joined<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    strings(xs).join(",")
}

fn pte_gen(k: u32) -> AppResult<CommandOutput> {
    let pair = pte_split(k)?;
    let mut sums = Vec::new();
    let mut failure = None;
    for m in 0..=k {
        let a = power_sum(pair.t_set.iter().copied(), m);
        let b = power_sum(pair.t_bar.iter().copied(), m);
        if m < k && a != b && failure.is_none() {
            failure = Some(format!("power sums differ at m = {m}"));
        }
        if m == k && &a - &b != leading_defect(k) && failure.is_none() {
            failure = Some(format!("defect at m = {k} is not (-1)^(k+1) k! 2^C(k,2)"));
        }
        sums.push(json!({"m": m, "t_set": a.to_string(), "t_bar": b.to_string()}));
    }
    let json = json!({"k": k, "t_set": pair.t_set, "t_bar": pair.t_bar, "power_sums": sums});
    let text = format!("t_set: {}\nt_bar: {}", joined(&pair.t_set), joined(&pair.t_bar));
    Ok(CommandOutput::checked(json, text, failure.map_or(Ok(()), Err)))
}

fn pte_defect_cmd(k: u32, j: u32) -> AppResult<CommandOutput> {
    let defect = pte_defect(k, j)?;
    let bound = defect_bound(k, j);
    let mut json = json!({"k": k, "j": j, "defect": defect.to_string(), "bound": bound.to_string()});
    let mut verdict = Ok(());
    if defect.magnitude() > &bound {
        verdict = Err(format!("|defect| exceeds {bound}"));
    }
    if j == 0 {
        let closed = leading_defect(k);
        json["closed_form"] = json!(closed.to_string());
        if closed != defect {
            verdict = Err(format!("defect {defect} differs from the closed form {closed}"));
        }
    }
    Ok(CommandOutput::checked(json, defect.to_string(), verdict))
}

fn w_build(k: u32, r: u32, s: u32, t: u32) -> AppResult<CommandOutput> {
    let w = w_sequence(k, r, s, t)?;
    let json = json!({
        "k": k, "r": r, "s": s, "t": t,
        "length": w.len(), "sum": w.sum().to_string(), "parts": w.parts,
    });
    Ok(CommandOutput::plain(json, joined(&w.parts)))
}

fn w_family_cmd(k: u32, sigma: u32) -> AppResult<CommandOutput> {
    let members = w_family(k, sigma)?;
    let text: Vec<String> = members
        .iter()
        .map(|m| format!("W({k};{},{},{}) = {}", m.r, m.s, m.t, joined(&m.composition.parts)))
        .collect();
    let json = json!({
        "k": k, "sigma": sigma,
        "length": w_length(k, sigma), "sum": w_sum(k, sigma).to_string(),
        "members": members.iter().map(|m| json!({
            "r": m.r, "s": m.s, "t": m.t, "parts": m.composition.parts,
        })).collect::<Vec<_>>(),
    });
    Ok(CommandOutput::checked(json, text.join("\n"), Ok(())))
}

fn read_file(path: &PathBuf) -> AppResult<String> {
    std::fs::read_to_string(path).map_err(|source| AppError::Io {
        path: path.clone(),
        source,
    })
}

fn tree_seq(
    ctx: &Context,
    input: Option<PathBuf>,
    caterpillar: Option<String>,
    depth: usize,
    method: Method,
) -> AppResult<CommandOutput> {
    let (graph, source) = match (input, caterpillar) {
        (Some(path), None) => (parse_edge_list(&read_file(&path)?)?, json!(path.display().to_string())),
        (None, Some(spec)) => {
            let spec = parse_caterpillar_spec(&spec)?;
            (caterpillar_graph(&spec)?, json!(format_caterpillar_spec(&spec)))
        }
        _ => return Err(AppError::Usage("give exactly one of --input and --caterpillar".into())),
    };
    let (seq, used) = ctx.sequence(&graph, depth, method)?;
    let json = json!({
        "source": source,
        "vertices": graph.vertex_count(),
        "depth": depth,
        "method": used.to_string(),
        "terms": strings(&seq.terms),
    });
    Ok(CommandOutput::plain(json, joined(&seq.terms)))
}

fn tree_classes(ctx: &Context, n: usize, depth: usize) -> AppResult<CommandOutput> {
    let codes = enumerate_tree_codes(n)?;
    let sequences: Vec<GrahamSequence> = ctx.pool.install(|| {
        codes
            .par_iter()
            .map(|c| iterated_sizes(&c.to_graph(), depth, &ctx.limits))
            .collect::<Result<_, _>>()
    })?;
    let report = group_by_sequence(n, depth, codes.into_iter().zip(sequences).collect());
    let collisions: Vec<Vec<String>> = report
        .collisions
        .iter()
        .map(|g| g.iter().map(|c| hex::encode(c.as_bytes())).collect())
        .collect();
    let mut text = format!(
        "tree_count {}\nclass_count {}",
        report.tree_count, report.class_count
    );
    for group in &collisions {
        text.push_str(&format!("\ncollision {}", group.join(" ")));
    }
    let json = json!({
        "n": n, "depth": depth,
        "tree_count": report.tree_count, "class_count": report.class_count,
        "collisions": collisions,
    });
    let verdict = if report.separates_all() {
        Ok(())
    } else {
        Err(format!(
            "{} trees fall into {} classes at depth {depth}",
            report.tree_count, report.class_count
        ))
    };
    Ok(CommandOutput::checked(json, text, verdict))
}

fn wt_table(ctx: &Context, k: usize, max_vertices: usize) -> AppResult<CommandOutput> {
    let clamped = clamp_table_vertices(k, max_vertices);
    if clamped < max_vertices {
        log::warn!("trees on more than {clamped} vertices weigh nothing at level {k}; clamping max-vertices to {clamped}");
    }
    let path = ctx.cache.table_path(k, clamped);
    let table = match cache::load(&path) {
        Ok(table) => {
            ctx.stat(format!("cache: hit {}", path.display()));
            ctx.stat("weights computed: 0".into());
            table
        }
        Err(e) => {
            if path.exists() {
                log::warn!("rebuilding {}: {e}", path.display());
            }
            let (table, computed) = ctx.build_table(k, clamped)?;
            cache::store(&table, &path)?;
            ctx.stat(format!("cache: miss, stored {}", path.display()));
            ctx.stat(format!("weights computed: {computed}"));
            table
        }
    };
    let nonzero: Vec<(String, u32, String)> = table
        .iter()
        .filter(|(_, _, w)| **w != BigUint::from(0u32))
        .map(|(c, level, w)| (hex::encode(c.as_bytes()), level, w.to_string()))
        .collect();
    let text = nonzero
        .iter()
        .map(|(c, level, w)| format!("{c}\t{level}\t{w}"))
        .collect::<Vec<_>>()
        .join("\n");
    let json = json!({
        "k": k,
        "max_vertices": table.max_vertices(),
        "entries": table.len(),
        "path": path.display().to_string(),
        "nonzero": nonzero.iter().map(|(c, level, w)| json!({"code": c, "level": level, "weight": w})).collect::<Vec<_>>(),
    });
    Ok(CommandOutput::plain(json, text))
}

fn family_json(report: &FamilyReport) -> Value {
    json!({
        "k": report.spec.k,
        "sigma": report.spec.sigma,
        "spacing": report.spec.spacing,
        "pad": report.spec.pad,
        "expected_step": report.expected_step.to_string(),
        "steps": strings(&report.steps),
        "checks": {
            "equal_vertex_count": report.equal_vertex_count,
            "shared_prefix": report.shared_prefix,
            "split_distinct": report.split_distinct,
            "progression": report.progression,
        },
        "members": report.members.iter().map(|m| json!({
            "r": m.r, "s": m.s, "t": m.t,
            "parts": m.parts,
            "vertex_count": m.vertex_count,
            "sequence": strings(&m.sequence.terms),
        })).collect::<Vec<_>>(),
    })
}

#[allow(clippy::too_many_arguments)]
fn family_build(
    ctx: &Context,
    k: u32,
    sigma: u32,
    pad: Option<usize>,
    target_vertices: Option<usize>,
    spacing: Option<usize>,
    method: Method,
) -> AppResult<CommandOutput> {
    let mut spec = FamilySpec::new(k, sigma)?;
    if let Some(m) = spacing {
        spec.spacing = m;
        spec.validate()?;
    }
    if let Some(p) = pad {
        spec.pad = p;
    }
    if let Some(target) = target_vertices {
        spec = spec.with_target_vertices(target)?;
    }
    let members = family_members(&spec)?;
    let depth = k as usize + 1;
    let sequences: Vec<GrahamSequence> = ctx.pool.install(|| {
        members
            .par_iter()
            .map(|m| {
                let g = caterpillar_graph(&m.caterpillar)?;
                Ok(ctx.sequence(&g, depth, method)?.0)
            })
            .collect::<AppResult<_>>()
    })?;
    let step = predicted_step(k, &ctx.limits)?;
    let report = verify_family(&spec, members, sequences, step)?;
    let text = report
        .members
        .iter()
        .map(|m| {
            format!(
                "W({k};{},{},{}) vertices={} sequence={}",
                m.r,
                m.s,
                m.t,
                m.vertex_count,
                joined(&m.sequence.terms)
            )
        })
        .collect::<Vec<_>>()
        .join("\n");
    let verdict = report.failure().map_or(Ok(()), Err);
    Ok(CommandOutput::checked(family_json(&report), text, verdict))
}

fn partitions_count(ctx: &Context, n: u32, poly: &str) -> AppResult<CommandOutput> {
    let f = parse_polynomial(poly)?;
    let shards: Vec<_> = ctx.pool.install(|| {
        (1..=n)
            .into_par_iter()
            .map(|largest| fhat_values_with_largest_part(&f, n, largest))
            .collect::<Result<Vec<_>, _>>()
    })?;
    let values: BTreeSet<_> = shards.into_iter().flatten().collect();
    let json = json!({"n": n, "poly": format_polynomial(&f), "distinct": values.len()});
    Ok(CommandOutput::plain(json, values.len().to_string()))
}

fn g_poly_cmd(poly: &str, k: u32) -> AppResult<CommandOutput> {
    let f = parse_polynomial(poly)?;
    let g = g_poly(&f, k)?;
    let rest = g_rest_bound(&f, k)?;
    let json = json!({
        "k": k,
        "f": format_polynomial(&f),
        "g": format_polynomial(&g),
        "g_display": g.to_string(),
        "degree": g.degree(),
        "leading": g.leading().map(|c| c.to_string()),
        "rest": rest.rest.to_string(),
        "rest_bound": rest.bound.to_string(),
    });
    let verdict = if rest.holds() {
        Ok(())
    } else {
        Err("non-leading coefficients exceed their bound".into())
    };
    Ok(CommandOutput::checked(json, g.to_string(), verdict))
}

fn dispatch(ctx: &Context, command: Command) -> AppResult<CommandOutput> {
    match command {
        Command::Pte(PteCommand::Gen { k }) => pte_gen(k),
        Command::Pte(PteCommand::Defect { k, j }) => pte_defect_cmd(k, j),
        Command::W(WCommand::Build { k, r, s, t }) => w_build(k, r, s, t),
        Command::W(WCommand::Family { k, sigma }) => w_family_cmd(k, sigma),
        Command::Tree(TreeCommand::Seq {
            input,
            caterpillar,
            depth,
            method,
        }) => tree_seq(ctx, input, caterpillar, depth, method),
        Command::Tree(TreeCommand::Classes { n, depth }) => tree_classes(ctx, n, depth),
        Command::Wt(WtCommand::Table { k, max_vertices }) => wt_table(ctx, k, max_vertices),
        Command::Family(FamilyCommand::Build {
            k,
            sigma,
            pad,
            target_vertices,
            spacing,
            method,
        }) => family_build(ctx, k, sigma, pad, target_vertices, spacing, method),
        Command::Partitions(PartitionsCommand::Count { n, poly }) => partitions_count(ctx, n, &poly),
        Command::G(GCommand::Poly { poly, k }) => g_poly_cmd(&poly, k),
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(stdout, "{}", e.render());
            return EXIT_OK;
        }
    };
    let global = cli.global;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(p) = global.parallelism {
        pool = pool.num_threads(p as usize);
    }
    let pool = match pool.build() {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(stderr, "error: cannot start worker threads: {e}");
            return EXIT_USAGE;
        }
    };
    let ctx = Context {
        cache: CacheDir::new(global.cache_dir.unwrap_or_else(CacheDir::default_root)),
        limits: Limits {
            max_vertices: global.vertex_ceiling,
            max_edges: global.edge_ceiling,
        },
        pool,
        stats: Mutex::new(Vec::new()),
        table: Mutex::new(None),
    };
    let result = dispatch(&ctx, cli.command);
    if global.stats {
        for line in ctx.stats.lock().expect("stats lock").iter() {
            let _ = writeln!(stderr, "stats: {line}");
        }
    }
    match result {
        Ok(out) => {
            let _ = write!(stdout, "{}", render(global.output, &out.json, &out.text));
            match out.verdict {
                Some(Ok(())) => {
                    let _ = writeln!(stdout, "VERIFIED");
                    EXIT_OK
                }
                Some(Err(reason)) => {
                    let _ = writeln!(stdout, "FAILED: {reason}");
                    EXIT_VERIFICATION
                }
                None => EXIT_OK,
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_verification() {
                let _ = writeln!(stdout, "FAILED: {e}");
            }
            e.exit_code()
        }
    }
}
