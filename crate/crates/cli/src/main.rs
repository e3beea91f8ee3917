use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use treecsp::formats::{load_digraph, load_tree, write_witness};
use treecsp::pipeline::{
    default_cascade, parse_cascade, render_summary, run_campaign, CampaignConfig, Cascade,
};
use treecsp_core::conditions;
use treecsp_core::cores::{is_core_tree, is_rooted_core_at};
use treecsp_core::digraph::to_edge_list;
use treecsp_core::generation::{generate_core_triads, generate_rooted_cores, Generator};
use treecsp_core::indicator::{decide, DecideOpts, Mode};

/// Core orientations of trees and their polymorphism conditions.
#[derive(Parser)]
#[command(name = "treecsp", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Full,
    Levelwise,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    /// One canonical encoding per line.
    Canon,
    /// Edge-list blocks separated by blank lines.
    Edges,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate core trees (or rooted cores, or core triads) of one size.
    Generate {
        #[arg(long)]
        size: usize,
        /// Core triads only.
        #[arg(long, conflicts_with = "rooted")]
        triads: bool,
        /// Rooted cores instead of unrooted core trees (requires --depth).
        #[arg(long, requires = "depth")]
        rooted: bool,
        /// Depth of the rooted cores to list.
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, value_enum, default_value = "canon")]
        format: FormatArg,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Test whether a tree is a core; prints `core` or `not-core`.
    Core {
        /// Edge-list file, canonical encoding file, or inline encoding.
        input: String,
        /// Test the rooted core property with this root instead.
        #[arg(long)]
        rooted: Option<usize>,
    },
    /// Decide whether a digraph has polymorphisms satisfying a condition.
    Poly {
        /// Condition name (kmm, wnu-K, wnu34, majority, nu-K, ts-N, ts-all,
        /// jonsson-N, hm-N, kk-N, hmck-N, nn-N).
        #[arg(long, required_unless_present = "condition_file")]
        condition: Option<String>,
        /// Custom condition file (lines like `p(x,y,y) = q(y,x,x)`).
        #[arg(long, conflicts_with = "condition")]
        condition_file: Option<PathBuf>,
        input: String,
        #[arg(long, value_enum, default_value = "auto")]
        mode: ModeArg,
        /// Skip idempotence pinning (required for non-core templates).
        #[arg(long)]
        no_idempotent: bool,
        /// Write the witness tables here on a satisfiable verdict.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Step budget in list-removal operations.
        #[arg(long)]
        steps: Option<u64>,
    },
    /// Classify generated core trees through a condition cascade into a CSV.
    Classify {
        /// Size range `A..B` (inclusive).
        #[arg(long)]
        sizes: String,
        /// Campaign over core triads instead of all core trees.
        #[arg(long)]
        triads: bool,
        /// `default` or a cascade description file.
        #[arg(long, default_value = "default")]
        cascade: String,
        /// Largest chain length probed by the escalating families.
        #[arg(long, default_value_t = 32)]
        chain_bound: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Keep records already present in the output file.
        #[arg(long)]
        resume: bool,
        /// Classify trees from this file (one canonical encoding per line)
        /// instead of running the generator.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        /// Abort threshold: exit 3 when more than this fraction of records
        /// timed out.
        #[arg(long, default_value_t = 0.5)]
        max_timeout_fraction: f64,
    },
}

fn out_writer(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(fs::File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn emit_tree(
    out: &mut dyn Write,
    format: FormatArg,
    graph: &treecsp_core::digraph::Digraph,
    canon: &str,
) -> io::Result<()> {
    match format {
        FormatArg::Canon => writeln!(out, "{canon}"),
        FormatArg::Edges => writeln!(out, "# {canon}\n{}", to_edge_list(graph)),
    }
}

fn cmd_generate(
    size: usize,
    triads: bool,
    rooted: bool,
    depth: Option<usize>,
    format: FormatArg,
    out: Option<PathBuf>,
) -> Result<(), String> {
    if size < 1 {
        return Err("--size must be at least 1".into());
    }
    let mut writer = out_writer(&out).map_err(|e| e.to_string())?;
    let io_err = |e: io::Error| e.to_string();
    if rooted {
        let depth = depth.expect("clap enforces --depth with --rooted");
        for rt in generate_rooted_cores(size, depth) {
            emit_tree(&mut writer, format, rt.tree(), rt.canon()).map_err(io_err)?;
        }
    } else if triads {
        if size < 4 {
            return Err("triads need at least 4 vertices".into());
        }
        let mut failure = None;
        generate_core_triads(size, &mut |tree, canon| {
            if failure.is_none() {
                if let Err(e) = emit_tree(&mut writer, format, &tree, canon) {
                    failure = Some(e);
                }
            }
        });
        if let Some(e) = failure {
            return Err(e.to_string());
        }
    } else {
        let mut generator = Generator::new();
        let mut failure = None;
        generator.core_trees(size, &mut |tree, canon| {
            if failure.is_none() {
                if let Err(e) = emit_tree(&mut writer, format, &tree, canon) {
                    failure = Some(e);
                }
            }
        });
        if let Some(e) = failure {
            return Err(e.to_string());
        }
    }
    writer.flush().map_err(io_err)
}

fn cmd_core(input: &str, rooted: Option<usize>) -> Result<(), String> {
    let tree = load_tree(input).map_err(|e| e.to_string())?;
    let is_core = match rooted {
        Some(root) => {
            if root >= tree.vertex_count() {
                return Err(format!("root {root} out of range"));
            }
            is_rooted_core_at(&tree, root)
        }
        None => is_core_tree(&tree),
    };
    println!("{}", if is_core { "core" } else { "not-core" });
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_poly(
    condition: Option<String>,
    condition_file: Option<PathBuf>,
    input: &str,
    mode: ModeArg,
    no_idempotent: bool,
    witness_path: Option<PathBuf>,
    steps: Option<u64>,
) -> Result<(), String> {
    let cond = match (condition, condition_file) {
        (Some(name), None) => conditions::by_cli_name(&name).map_err(|e| e.to_string())?,
        (None, Some(path)) => {
            let text = fs::read_to_string(&path).map_err(|e| e.to_string())?;
            let parsed = conditions::parse_condition(&text).map_err(|e| e.to_string())?;
            let report = conditions::validate(&parsed);
            if !report.is_ok() {
                let msgs: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
                return Err(msgs.join("; "));
            }
            for warning in report.warnings {
                eprintln!("warning: {warning}");
            }
            parsed
        }
        _ => unreachable!("clap enforces exactly one"),
    };
    let graph = load_digraph(input).map_err(|e| e.to_string())?;
    let mode = match mode {
        ModeArg::Full => Mode::Full,
        ModeArg::Levelwise => Mode::Levelwise,
        ModeArg::Auto => Mode::Auto,
    };
    let opts = DecideOpts {
        idempotent: !no_idempotent,
        step_budget: steps,
        ..Default::default()
    };
    if opts.idempotent {
        // idempotence pinning assumes a core template; a tree input can be
        // checked cheaply, other digraphs are the caller's responsibility
        if let Ok(tree) = treecsp_core::digraph::TreeDigraph::new(graph.clone()) {
            if !is_core_tree(&tree) {
                eprintln!(
                    "warning: template is not a core; idempotence pinning may be unsound (pass --no-idempotent)"
                );
            }
        }
    }
    let result = decide(&graph, &cond, mode, &opts).map_err(|e| e.to_string())?;
    println!("{}", result.verdict());
    if let (Some(path), Some(witness)) = (witness_path, result.witness()) {
        write_witness(&path, witness).map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn parse_sizes(spec: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = spec
        .split_once("..")
        .ok_or_else(|| format!("expected A..B, got {spec:?}"))?;
    let lo = lo.trim().parse::<usize>().map_err(|e| e.to_string())?;
    let hi = hi.trim().parse::<usize>().map_err(|e| e.to_string())?;
    if lo < 1 || hi < lo {
        return Err(format!("invalid size range {spec:?}"));
    }
    Ok((lo, hi))
}

fn load_cascade(spec: &str, chain_bound: usize) -> Result<Cascade, String> {
    if spec == "default" {
        return Ok(default_cascade(chain_bound));
    }
    let text = fs::read_to_string(spec).map_err(|e| e.to_string())?;
    parse_cascade(&text).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome: Result<ExitCode, String> = match cli.command {
        Command::Generate {
            size,
            triads,
            rooted,
            depth,
            format,
            out,
        } => cmd_generate(size, triads, rooted, depth, format, out).map(|()| ExitCode::SUCCESS),
        Command::Core { input, rooted } => cmd_core(&input, rooted).map(|()| ExitCode::SUCCESS),
        Command::Poly {
            condition,
            condition_file,
            input,
            mode,
            no_idempotent,
            witness,
            steps,
        } => cmd_poly(
            condition,
            condition_file,
            &input,
            mode,
            no_idempotent,
            witness,
            steps,
        )
        .map(|()| ExitCode::SUCCESS),
        Command::Classify {
            sizes,
            triads,
            cascade,
            chain_bound,
            jobs,
            resume,
            input,
            out,
            max_timeout_fraction,
        } => (|| {
            let sizes = parse_sizes(&sizes)?;
            let cascade = load_cascade(&cascade, chain_bound)?;
            let config = CampaignConfig {
                sizes,
                triads,
                jobs,
                resume,
                out,
                input,
                max_timeout_fraction,
            };
            let summary = run_campaign(&config, &cascade).map_err(|e| e.to_string())?;
            print!("{}", render_summary(&cascade, &summary));
            Ok(ExitCode::from(summary.exit_code as u8))
        })(),
    };
    match outcome {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}
