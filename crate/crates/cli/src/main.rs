use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use lct_core::chordal::{build_clique_tree, is_chordal, maximal_cliques, Chordality};
use lct_core::cycles::{display_walk, enumerate_cycles, enumerate_longest_cycles, DEFAULT_CYCLE_LIMIT};
use lct_core::fixtures;
use lct_core::gen::{Family, GenSpec};
use lct_core::io::{read_graph, write_graph, GraphFormat};
use lct_core::transversal::compute_lct;
use lct_core::treedec::{
    exact_treewidth, make_full, parse_decomposition, validate, width, write_decomposition, TreeDecomposition,
};
use lct_core::verify::{run_batch, verify_graph, BatchSpec, Check, Outcome, ReportLine};
use lct_core::{Error, Graph, VertexSet};

/// Exact longest cycle transversals and the structures around them.
#[derive(Parser, Debug)]
#[command(name = "lct", version)]
struct Cli {
    /// Graph format for input and output (edgelist, graph6, dot). Inferred
    /// from the file extension when omitted.
    #[arg(long, global = true)]
    format: Option<GraphFormat>,
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimum longest cycle transversal of a graph.
    Lct { file: PathBuf },
    /// Longest cycles of a graph, or all cycles with --all.
    Cycles {
        file: PathBuf,
        #[arg(long)]
        all: bool,
        /// Refuse to list more than this many cycles.
        #[arg(long, default_value_t = DEFAULT_CYCLE_LIMIT)]
        limit: usize,
    },
    /// Tree decomposition tools.
    #[command(subcommand)]
    Treedec(TreedecCommand),
    /// Chordal graph tools.
    #[command(subcommand)]
    Chordal(ChordalCommand),
    /// Generate a random graph.
    Gen(GenArgs),
    /// Check a bound on generated graphs, or on one graph with --input.
    Verify(VerifyArgs),
    /// Print a built-in graph or decomposition.
    Named { name: String },
}

#[derive(Subcommand, Debug)]
enum TreedecCommand {
    /// Validate a decomposition against a graph.
    Check { graph: PathBuf, decomposition: PathBuf },
    /// Width of a valid decomposition.
    Width { graph: PathBuf, decomposition: PathBuf },
    /// Turn a decomposition into a full one of width k (default: its width).
    Full {
        graph: PathBuf,
        decomposition: PathBuf,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Exact treewidth with an optimal elimination order.
    Tw {
        graph: PathBuf,
        /// Also write the optimal decomposition in text form.
        #[arg(long)]
        decomposition: bool,
    },
}

#[derive(Subcommand, Debug)]
enum ChordalCommand {
    /// Report a perfect elimination order or a chordless cycle.
    Check { file: PathBuf },
    /// Clique tree in decomposition text form.
    Cliquetree { file: PathBuf },
    /// Clique number of a chordal graph.
    Omega { file: PathBuf },
}

#[derive(Args, Debug)]
struct GenArgs {
    family: Family,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the generator's decomposition here, when it has one.
    #[arg(long)]
    td: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    check: Check,
    #[arg(long, default_value = "random-2connected")]
    family: Family,
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 0.8)]
    p: f64,
    /// Check this graph instead of generating a batch.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Decomposition for lemma5 when checking --input.
    #[arg(long, requires = "input")]
    td: Option<PathBuf>,
}

enum Status {
    Ok,
    CheckFailed,
}

struct Ctx {
    format: Option<GraphFormat>,
    json: bool,
    out: Option<PathBuf>,
}

impl Ctx {
    fn format_for(&self, path: &Path) -> GraphFormat {
        self.format.unwrap_or_else(|| match path.extension().and_then(|e| e.to_str()) {
            Some("g6" | "graph6") => GraphFormat::Graph6,
            Some("dot" | "gv") => GraphFormat::Dot,
            _ => GraphFormat::Edgelist,
        })
    }

    fn output_format(&self) -> GraphFormat {
        match (self.format, &self.out) {
            (Some(f), _) => f,
            (None, Some(path)) => self.format_for(path),
            (None, None) => GraphFormat::Edgelist,
        }
    }

    fn read_graph(&self, path: &Path) -> anyhow::Result<Graph> {
        let text = read_text(path)?;
        read_graph(&text, self.format_for(path)).with_context(|| format!("reading {}", path.display()))
    }

    fn emit(&self, text: &str) -> anyhow::Result<()> {
        match &self.out {
            Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
            None => io::stdout().write_all(text.as_bytes()).context("writing stdout"),
        }
    }

    fn emit_json(&self, value: &serde_json::Value) -> anyhow::Result<()> {
        self.emit(&format!("{}\n", serde_json::to_string_pretty(value)?))
    }
}

fn read_text(path: &Path) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).context("reading stdin")?;
        Ok(text)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn read_decomposition(g: &Graph, path: &Path) -> anyhow::Result<TreeDecomposition> {
    let (d, n) = parse_decomposition(&read_text(path)?).with_context(|| format!("reading {}", path.display()))?;
    if n != g.n() {
        bail!("decomposition is for {n} vertices, graph has {}", g.n());
    }
    Ok(d)
}

fn set_text(g: &Graph, s: VertexSet) -> String {
    let names: Vec<String> = s.iter().map(|v| g.label(v)).collect();
    format!("{{{}}}", names.join(", "))
}

fn lct(ctx: &Ctx, file: &Path) -> anyhow::Result<Status> {
    let g = ctx.read_graph(file)?;
    let r = compute_lct(&g)?;
    if ctx.json {
        ctx.emit_json(&serde_json::to_value(&r)?)?;
    } else {
        ctx.emit(&format!(
            "lct {}\nL {}\ntransversal {}\n",
            r.value,
            r.longest_length,
            set_text(&g, r.transversal)
        ))?;
    }
    Ok(Status::Ok)
}

fn cycles(ctx: &Ctx, file: &Path, all: bool, limit: usize) -> anyhow::Result<Status> {
    let g = ctx.read_graph(file)?;
    let found = if all { enumerate_cycles(&g, limit)? } else { enumerate_longest_cycles(&g)? };
    if ctx.json {
        ctx.emit_json(&serde_json::to_value(&found)?)?;
    } else {
        let mut text = format!("{} cycles\n", found.len());
        for c in &found {
            text.push_str(&display_walk(&g, c));
            text.push('\n');
        }
        ctx.emit(&text)?;
    }
    Ok(Status::Ok)
}

fn treedec(ctx: &Ctx, cmd: TreedecCommand) -> anyhow::Result<Status> {
    match cmd {
        TreedecCommand::Check { graph, decomposition } => {
            let g = ctx.read_graph(&graph)?;
            let d = read_decomposition(&g, &decomposition)?;
            let report = validate(&g, &d);
            let w = d.max_bag_size().saturating_sub(1);
            let full = report.is_valid() && d.is_full(w);
            for (a, b) in &report.duplicate_bags {
                eprintln!("warning: nodes {a} and {b} hold the same bag");
            }
            if ctx.json {
                ctx.emit_json(&json!({
                    "valid": report.is_valid(),
                    "width": w,
                    "full": full,
                    "violations": report.violations,
                    "duplicate_bags": report.duplicate_bags,
                }))?;
            } else if report.is_valid() {
                let fullness = if full { format!("full for k={w}") } else { "not full".to_string() };
                ctx.emit(&format!("valid, width {w}, {fullness}\n"))?;
            } else {
                let mut text = String::from("invalid\n");
                for v in &report.violations {
                    text.push_str(&format!("{}\n", serde_json::to_string(v)?));
                }
                ctx.emit(&text)?;
            }
            Ok(if report.is_valid() { Status::Ok } else { Status::CheckFailed })
        }
        TreedecCommand::Width { graph, decomposition } => {
            let g = ctx.read_graph(&graph)?;
            let d = read_decomposition(&g, &decomposition)?;
            let w = width(&g, &d)?;
            if ctx.json {
                ctx.emit_json(&json!({ "width": w }))?;
            } else {
                ctx.emit(&format!("{w}\n"))?;
            }
            Ok(Status::Ok)
        }
        TreedecCommand::Full { graph, decomposition, k } => {
            let g = ctx.read_graph(&graph)?;
            let d = read_decomposition(&g, &decomposition)?;
            let k = match k {
                Some(k) => k,
                None => width(&g, &d)?,
            };
            let full = make_full(&g, &d, k)?;
            if ctx.json {
                ctx.emit_json(&serde_json::to_value(&full)?)?;
            } else {
                ctx.emit(&write_decomposition(&full, g.n()))?;
            }
            Ok(Status::Ok)
        }
        TreedecCommand::Tw { graph, decomposition } => {
            let g = ctx.read_graph(&graph)?;
            let tw = exact_treewidth(&g)?;
            if ctx.json {
                ctx.emit_json(&serde_json::to_value(&tw)?)?;
            } else {
                let order: Vec<String> = tw.order.iter().map(|&v| g.label(v)).collect();
                let mut text = format!("treewidth {}\norder {}\n", tw.width, order.join(" "));
                if decomposition {
                    text.push_str(&write_decomposition(&tw.decomposition, g.n()));
                }
                ctx.emit(&text)?;
            }
            Ok(Status::Ok)
        }
    }
}

fn chordal(ctx: &Ctx, cmd: ChordalCommand) -> anyhow::Result<Status> {
    match cmd {
        ChordalCommand::Check { file } => {
            let g = ctx.read_graph(&file)?;
            let verdict = is_chordal(&g);
            match (&verdict, ctx.json) {
                (Chordality::Chordal(order), true) => {
                    ctx.emit_json(&json!({ "chordal": true, "elimination_order": order.as_slice() }))?
                }
                (Chordality::NotChordal(c), true) => ctx.emit_json(&json!({ "chordal": false, "chordless_cycle": c }))?,
                (Chordality::Chordal(order), false) => {
                    let order: Vec<String> = order.as_slice().iter().map(|&v| g.label(v)).collect();
                    ctx.emit(&format!("chordal\nelimination order {}\n", order.join(" ")))?
                }
                (Chordality::NotChordal(c), false) => {
                    ctx.emit(&format!("not chordal\nchordless cycle {}\n", display_walk(&g, c)))?
                }
            }
            Ok(if verdict.is_chordal() { Status::Ok } else { Status::CheckFailed })
        }
        ChordalCommand::Cliquetree { file } => {
            let g = ctx.read_graph(&file)?;
            let tree = build_clique_tree(&g)?;
            if ctx.json {
                ctx.emit_json(&serde_json::to_value(tree.decomposition())?)?;
            } else {
                ctx.emit(&write_decomposition(tree.decomposition(), g.n()))?;
            }
            Ok(Status::Ok)
        }
        ChordalCommand::Omega { file } => {
            let g = ctx.read_graph(&file)?;
            let cliques = maximal_cliques(&g)?;
            let omega = cliques.iter().map(|c| c.len()).max().unwrap_or(0);
            if ctx.json {
                ctx.emit_json(&json!({ "omega": omega, "maximal_cliques": cliques }))?;
            } else {
                ctx.emit(&format!("{omega}\n"))?;
            }
            Ok(Status::Ok)
        }
    }
}

fn gen(ctx: &Ctx, args: GenArgs) -> anyhow::Result<Status> {
    let spec = GenSpec {
        family: args.family,
        n: args.n,
        k: args.k,
        p: args.p,
        seed: args.seed,
    };
    let generated = spec.generate()?;
    ctx.emit(&write_graph(&generated.graph, ctx.output_format()))?;
    if let Some(path) = args.td {
        let Some(d) = &generated.decomposition else {
            bail!("family {} does not produce a decomposition", args.family);
        };
        fs::write(&path, write_decomposition(d, generated.graph.n()))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(Status::Ok)
}

fn verify(ctx: &Ctx, args: VerifyArgs) -> anyhow::Result<Status> {
    let lines: Vec<ReportLine> = match &args.input {
        Some(path) => {
            let g = ctx.read_graph(path)?;
            let d = args.td.as_deref().map(|p| read_decomposition(&g, p)).transpose()?;
            vec![verify_graph(args.check, &g, Some(args.k).filter(|_| args.check == Check::Thm1), d)?]
        }
        None => {
            let batch = BatchSpec {
                check: args.check,
                family: args.family,
                count: args.count,
                seed: args.seed,
                n: args.n,
                k: args.k,
                p: args.p,
            };
            run_batch(&batch).into_iter().collect::<Result<_, Error>>()?
        }
    };
    let mut text = String::new();
    for line in &lines {
        text.push_str(&line.to_json());
        text.push('\n');
    }
    ctx.emit(&text)?;

    let count = |o: Outcome| lines.iter().filter(|l| l.verdict == o).count();
    let (pass, fail, finding) = (count(Outcome::Pass), count(Outcome::Fail), count(Outcome::Finding));
    eprintln!("{}: {pass} pass, {fail} fail, {finding} findings", args.check);
    Ok(if fail == 0 { Status::Ok } else { Status::CheckFailed })
}

fn named(ctx: &Ctx, name: &str) -> anyhow::Result<Status> {
    if fixtures::DECOMPOSITION_NAMES.contains(&name) {
        let (g, d) = fixtures::named_decomposition(name)?;
        if ctx.json {
            ctx.emit_json(&serde_json::to_value(&d)?)?;
        } else {
            ctx.emit(&write_decomposition(&d, g.n()))?;
        }
    } else {
        let g = fixtures::named(name)?;
        ctx.emit(&write_graph(&g, ctx.output_format()))?;
    }
    Ok(Status::Ok)
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    let ctx = Ctx {
        format: cli.format,
        json: cli.json,
        out: cli.out,
    };
    match cli.command {
        Command::Lct { file } => lct(&ctx, &file),
        Command::Cycles { file, all, limit } => cycles(&ctx, &file, all, limit),
        Command::Treedec(cmd) => treedec(&ctx, cmd),
        Command::Chordal(cmd) => chordal(&ctx, cmd),
        Command::Gen(args) => gen(&ctx, args),
        Command::Verify(args) => verify(&ctx, args),
        Command::Named { name } => named(&ctx, &name),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::CheckFailed) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            let size_limit = err
                .chain()
                .any(|cause| matches!(cause.downcast_ref::<Error>(), Some(Error::SizeLimit { .. })));
            ExitCode::from(if size_limit { 3 } else { 2 })
        }
    }
}
