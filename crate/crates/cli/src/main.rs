use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use equitree::decider::{self, Mode};
use equitree::format::{self, Certificate, ColoringFile, GadgetSidecar};
use equitree::oracle::{self, OracleError, SearchConfig, DEFAULT_NODE_BUDGET};
use equitree::reductions::{build_gadget, ReductionKind};
use equitree::sweep::{self, SweepConfig};
use equitree::{complete_bipartite, verify_tree_coloring, Coloring, DegreeBound, Graph};

const BUDGET_ENV: &str = "EQUITREE_NODE_BUDGET";

/// Equitable tree-colorings of complete bipartite graphs.
#[derive(Debug, Parser)]
#[command(name = "equitree", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide K(m,n) and print a JSON certificate. Exit 0 if feasible, 1 if not.
    Decide {
        #[command(flatten)]
        instance: Instance,
        /// Embed the witness coloring in the certificate.
        #[arg(long)]
        with_coloring: bool,
    },
    /// Write a witness coloring of K(m,n).
    Color {
        #[command(flatten)]
        instance: Instance,
        /// Coloring file (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write K(m,n) in the graph format.
        #[arg(long)]
        graph_out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Check a coloring against a graph. Exit 0 if valid, 1 if not.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        /// Text or JSON coloring file.
        #[arg(long)]
        coloring: PathBuf,
        /// Degree bound to check instead of the one in the file.
        #[arg(long)]
        t: Option<DegreeBound>,
        /// Require every class to be independent.
        #[arg(long)]
        proper: bool,
        #[arg(long)]
        equitable: bool,
    },
    /// Build a reduction gadget from a graph file.
    Reduce {
        #[arg(value_enum)]
        kind: GadgetKind,
        #[arg(long)]
        q: usize,
        /// Degree bound (required for npt; for pad it is recorded in the sidecar).
        #[arg(long)]
        t: Option<DegreeBound>,
        #[arg(long = "in")]
        input: PathBuf,
        /// Gadget graph file (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// JSON with region labels and the source vertex map.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Exact search for a coloring. Prints it, or UNSAT (exit 1) or BUDGET (exit 3).
    Oracle {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value = "inf", conflicts_with = "proper")]
        t: DegreeBound,
        /// Search for a proper coloring instead.
        #[arg(long)]
        proper: bool,
        #[arg(long)]
        equitable: bool,
        /// Node budget; defaults to $EQUITREE_NODE_BUDGET or 10^8.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// CSV agreement table of decider, shape counts and oracle on K(m,n).
    Sweep {
        #[arg(long)]
        max_sum: usize,
        #[arg(long)]
        max_q: usize,
        #[arg(long, value_delimiter = ',', default_value = "inf")]
        t_list: Vec<DegreeBound>,
        /// Largest m+n handed to the oracle.
        #[arg(long, default_value_t = 10)]
        oracle_limit: usize,
        /// Emit disagreeing rows instead of dropping them.
        #[arg(long)]
        keep_disagreements: bool,
    },
}

#[derive(Debug, Args)]
struct Instance {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    q: usize,
    #[arg(long, required_unless_present = "proper", conflicts_with = "proper")]
    t: Option<DegreeBound>,
    /// Ask for a proper equitable coloring.
    #[arg(long)]
    proper: bool,
}

impl Instance {
    fn mode(&self) -> Mode {
        match self.t {
            Some(t) if !self.proper => Mode::EquitableTree(t),
            _ => Mode::ProperEquitable,
        }
    }

    /// Bound written into coloring files; proper colorings satisfy any.
    fn file_bound(&self) -> DegreeBound {
        match self.mode() {
            Mode::EquitableTree(t) => t,
            Mode::ProperEquitable => DegreeBound::Finite(1),
        }
    }
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum GadgetKind {
    Npt,
    Npi,
    Pad,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    format::parse_dimacs(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn read_coloring(path: &Path) -> Result<ColoringFile> {
    let text = read(path)?;
    let parsed = if text.trim_start().starts_with('{') {
        format::parse_coloring_json(&text)
    } else {
        format::parse_coloring(&text)
    };
    parsed.with_context(|| format!("parsing {}", path.display()))
}

fn node_budget(flag: Option<u64>) -> Result<u64> {
    let budget = match (flag, std::env::var(BUDGET_ENV)) {
        (Some(b), _) => b,
        (None, Ok(value)) => value
            .trim()
            .parse()
            .with_context(|| format!("{BUDGET_ENV}={value:?} is not a node count"))?,
        (None, Err(_)) => DEFAULT_NODE_BUDGET,
    };
    if budget == 0 {
        bail!("node budget must be at least 1");
    }
    Ok(budget)
}

fn bool_code(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn decide(instance: &Instance, with_coloring: bool) -> Result<ExitCode> {
    let verdict = decider::decide(instance.m, instance.n, instance.q, instance.mode())?;
    let cert = Certificate::new(&verdict, instance.file_bound(), with_coloring);
    println!("{}", cert.to_json());
    Ok(bool_code(verdict.feasible))
}

fn color(
    instance: &Instance,
    out: Option<&Path>,
    graph_out: Option<&Path>,
    json: bool,
) -> Result<ExitCode> {
    let verdict = decider::decide(instance.m, instance.n, instance.q, instance.mode())?;
    let Some(coloring) = verdict.witness_coloring else {
        eprintln!(
            "infeasible: no equitable coloring of K({},{})",
            instance.m, instance.n
        );
        return Ok(ExitCode::from(1));
    };
    let file = ColoringFile {
        coloring,
        t: instance.file_bound(),
    };
    if let Some(path) = graph_out {
        let (g, _) = complete_bipartite(instance.m, instance.n)?;
        emit(Some(path), &format::write_dimacs(&g))?;
    }
    let text = if json {
        format::write_coloring_json(&file)
    } else {
        format::write_coloring(&file)
    };
    emit(out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn verify(
    graph: &Path,
    coloring: &Path,
    t: Option<DegreeBound>,
    proper: bool,
    equitable: bool,
) -> Result<ExitCode> {
    let g = read_graph(graph)?;
    let file = read_coloring(coloring)?;
    let c = &file.coloring;
    let report = verify_tree_coloring(&g, c, t.unwrap_or(file.t))?;
    let failure = if let Some(f) = report.failure {
        Some(format!("class {}: {}", f.class + 1, f.violation))
    } else if proper && !c.is_proper(&g)? {
        let &(u, v) = g
            .edges()
            .iter()
            .find(|&&(u, v)| c.color(u) == c.color(v))
            .expect("improper coloring has a monochromatic edge");
        Some(format!(
            "class {}: not independent, edge {} {}",
            c.color(u) + 1,
            u + 1,
            v + 1
        ))
    } else if equitable && !c.is_equitable() {
        Some(format!("not equitable, class sizes {:?}", c.class_sizes()))
    } else {
        None
    };
    match failure {
        Some(reason) => {
            println!("FAIL {reason}");
            Ok(ExitCode::from(1))
        }
        None => {
            println!("OK");
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn reduce(
    kind: GadgetKind,
    q: usize,
    t: Option<DegreeBound>,
    input: &Path,
    out: Option<&Path>,
    sidecar: Option<&Path>,
) -> Result<ExitCode> {
    let kind = match kind {
        GadgetKind::Npt => match t {
            Some(DegreeBound::Finite(t)) => ReductionKind::Npt { t },
            _ => bail!("npt needs a finite --t"),
        },
        GadgetKind::Npi => ReductionKind::Npi,
        GadgetKind::Pad => ReductionKind::Pad {
            t: t.unwrap_or(DegreeBound::Unbounded),
        },
    };
    let g = read_graph(input)?;
    let gadget = build_gadget(&g, kind, q)?;
    emit(out, &format::write_dimacs(&gadget.graph))?;
    if let Some(path) = sidecar {
        emit(Some(path), &GadgetSidecar::new(&gadget, kind, q).to_json())?;
    }
    Ok(ExitCode::SUCCESS)
}

fn run_oracle(
    input: &Path,
    q: usize,
    t: DegreeBound,
    proper: bool,
    equitable: bool,
    budget: Option<u64>,
) -> Result<ExitCode> {
    let g = read_graph(input)?;
    let budget = node_budget(budget)?;
    let result: Result<Option<Coloring>, OracleError> = if proper && equitable {
        oracle::oracle_proper_equitable(&g, q, budget)
    } else if proper {
        oracle::oracle_proper(&g, q, budget)
    } else {
        let cfg = SearchConfig::new(t)
            .equitable(equitable)
            .node_budget(budget);
        oracle::oracle_tree(&g, q, &cfg)
    };
    match result {
        Ok(Some(coloring)) => {
            let t = if proper { DegreeBound::Finite(1) } else { t };
            print!("{}", format::write_coloring(&ColoringFile { coloring, t }));
            Ok(ExitCode::SUCCESS)
        }
        Ok(None) => {
            println!("UNSAT");
            Ok(ExitCode::from(1))
        }
        Err(OracleError::BudgetExhausted { budget }) => {
            println!("BUDGET");
            eprintln!("search exceeded {budget} nodes");
            Ok(ExitCode::from(3))
        }
        Err(e) => Err(e.into()),
    }
}

fn run_sweep(cfg: SweepConfig, keep_disagreements: bool) -> Result<ExitCode> {
    let rows = sweep::run_sweep(&cfg)?;
    let disagreements = rows.iter().filter(|r| !r.agree).count();
    let emitted: Vec<_> = rows
        .into_iter()
        .filter(|r| r.agree || keep_disagreements)
        .collect();
    print!("{}", sweep::to_csv(&emitted));
    if disagreements > 0 {
        eprintln!("{disagreements} disagreeing rows");
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Decide {
            instance,
            with_coloring,
        } => decide(&instance, with_coloring),
        Command::Color {
            instance,
            out,
            graph_out,
            json,
        } => color(&instance, out.as_deref(), graph_out.as_deref(), json),
        Command::Verify {
            graph,
            coloring,
            t,
            proper,
            equitable,
        } => verify(&graph, &coloring, t, proper, equitable),
        Command::Reduce {
            kind,
            q,
            t,
            input,
            out,
            sidecar,
        } => reduce(kind, q, t, &input, out.as_deref(), sidecar.as_deref()),
        Command::Oracle {
            input,
            q,
            t,
            proper,
            equitable,
            budget,
        } => run_oracle(&input, q, t, proper, equitable, budget),
        Command::Sweep {
            max_sum,
            max_q,
            t_list,
            oracle_limit,
            keep_disagreements,
        } => {
            let cfg = SweepConfig {
                max_sum,
                max_q,
                t_list,
                oracle_limit,
                node_budget: node_budget(None)?,
            };
            run_sweep(cfg, keep_disagreements)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
