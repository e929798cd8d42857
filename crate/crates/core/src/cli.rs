//! Command-line front end.
//!
//! Every command produces an [`Outcome`]: the text for standard output, an
//! optional note for standard error, and a JSON `outputs` value that goes
//! into the [`RunReport`] when `--json` is given. Keeping this in the library
//! lets the commands be tested without spawning a process.

use std::fs;
use std::io::Read;
use std::path::Path;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::graph::{
    form_unchecked, parse_row_vector, rank_upper_bound, srg_params, symplectic_graph,
    symplectic_nu, Graph, SrgParams,
};
use crate::graph6::{decode_graph6_lines, to_graph6_string};
use crate::hadamard::{graph_of, h_of_graph, h_power, substituted_power, HMatrix};
use crate::iso::{are_isomorphic, canonical_labeling_limited, class_report_limited, MAX_VERTICES};
use crate::switching::{
    apply_switch, censuses_along, compare_published_counts, rank_ascent_chain, replay_published_chain, standard_switching_set,
    switch_census, validate_switching_set,
};

/// Largest `nu` accepted by `sp` without `--force`.
pub const SP_NU_GUARD: u32 = 6;
/// Largest graph accepted by `census` without `--force`.
pub const CENSUS_N_GUARD: usize = 128;

#[derive(Debug, Parser)]
#[command(name = "srgrank", version, about = "Symplectic graphs, switching and 2-ranks over GF(2)")]
pub struct Cli {
    /// Print a JSON run report instead of the plain output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for census and classification.
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,
    /// Lift the size guards.
    #[arg(long, global = true)]
    pub force: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build Sp(2nu,2) and print it as graph6.
    Sp {
        #[arg(long)]
        nu: u32,
    },
    /// Switch a graph on a size-4 set.
    Switch(SwitchArgs),
    /// Switch on every size-4 switching set and group results by 2-rank.
    Census {
        /// graph6 file, or `-` for standard input
        input: String,
        /// Also count isomorphism classes in every rank group.
        #[arg(long)]
        classify: bool,
    },
    /// Rank-ascent chain from Sp(6,2).
    Chain(ChainArgs),
    /// Hadamard matrix operations.
    #[command(subcommand)]
    Hadamard(HadamardCommand),
    /// Canonical forms and isomorphism classes.
    #[command(subcommand)]
    Iso(IsoCommand),
    /// 2-rank of a matrix (text form) or of every graph in a graph6 file.
    Rank { input: String },
    /// Check a graph against a JSON descriptor of expected properties.
    Verify { descriptor: String },
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("set_choice").required(true).args(["set", "prop4"])))]
pub struct SwitchArgs {
    /// graph6 file, or `-` for standard input
    pub input: String,
    /// Four vertex labels, comma separated. A label is `index + 1`, or a
    /// 0/1 row vector when the graph has 4^nu - 1 vertices.
    #[arg(long, value_delimiter = ',')]
    pub set: Option<Vec<String>>,
    /// Use the standard coclique switching set of Sp(2nu,2).
    #[arg(long)]
    pub prop4: bool,
    /// Tail vector of the standard set, as 0/1 characters (length 2nu - 6).
    #[arg(long, requires = "prop4")]
    pub z: Option<String>,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("mode").required(true).args(["replay_published", "greedy"])))]
pub struct ChainArgs {
    /// Replay the six published switching sets.
    #[arg(long)]
    pub replay_published: bool,
    /// Greedy first-improvement search.
    #[arg(long)]
    pub greedy: bool,
    #[arg(long, default_value_t = 6, requires = "greedy")]
    pub max_steps: usize,
    /// With --replay-published: take a census at every iteration and compare
    /// it with the published counts.
    #[arg(long, requires = "replay_published")]
    pub census: bool,
}

#[derive(Debug, Subcommand)]
pub enum HadamardCommand {
    /// Kronecker power of the order-4 matrix.
    Power {
        #[arg(long)]
        nu: u32,
    },
    /// Hadamard matrix of an SRG(4m-1, 2m, m, m).
    OfGraph { input: String },
    /// Graph of a normalized graphical Hadamard matrix.
    GraphOf { input: String },
    /// Kronecker product of blocks: `H4`, a `.g6` graph or a matrix file.
    Substitute {
        #[arg(long, value_delimiter = ',', required = true)]
        blocks: Vec<String>,
    },
    /// rho(H), the 2-rank of (J - H)/2.
    Rho { input: String },
}

#[derive(Debug, Subcommand)]
pub enum IsoCommand {
    /// Group the graphs of a graph6 file into isomorphism classes.
    Classify { input: String },
    /// Compare the first graphs of two graph6 files.
    Compare { a: String, b: String },
    /// Canonical relabeling of every graph in a graph6 file.
    Canon { input: String },
}

/// Result of one command.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub outputs: Value,
    pub inputs: Vec<InputDigest>,
    /// Set when the command ran but its check failed.
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// The `--json` report.
#[derive(Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub outputs: Value,
    pub duration_ms: u128,
    pub version: String,
}

impl RunReport {
    pub fn new(command: Vec<String>, outcome: &Outcome, duration_ms: u128) -> Self {
        RunReport {
            command,
            inputs: outcome.inputs.clone(),
            outputs: outcome.outputs.clone(),
            duration_ms,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

struct Ctx<'a> {
    stdin: &'a mut dyn Read,
    inputs: Vec<InputDigest>,
}

impl Ctx<'_> {
    fn read(&mut self, path: &str) -> Result<Vec<u8>> {
        let bytes = if path == "-" {
            let mut buf = Vec::new();
            self.stdin
                .read_to_end(&mut buf)
                .map_err(|e| Error::Io(format!("reading standard input: {e}")))?;
            buf
        } else {
            fs::read(path).map_err(|e| Error::Io(format!("{path}: {e}")))?
        };
        let digest = Sha256::digest(&bytes);
        self.inputs.push(InputDigest {
            path: path.to_string(),
            sha256: digest.iter().map(|b| format!("{b:02x}")).collect(),
        });
        Ok(bytes)
    }

    fn graphs(&mut self, path: &str) -> Result<Vec<Graph>> {
        decode_graph6_lines(&self.read(path)?)
    }

    fn graph(&mut self, path: &str) -> Result<Graph> {
        self.graphs(path)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::Usage(format!("{path} contains no graph")))
    }

    fn text(&mut self, path: &str) -> Result<String> {
        String::from_utf8(self.read(path)?).map_err(|e| Error::parse(e.utf8_error().valid_up_to(), "input is not UTF-8"))
    }
}

fn lines<I: IntoIterator<Item = String>>(items: I) -> String {
    items.into_iter().map(|s| s + "\n").collect()
}

/// Runs one parsed command.
pub fn run(cli: &Cli, stdin: &mut dyn Read) -> Result<Outcome> {
    let mut ctx = Ctx {
        stdin,
        inputs: Vec::new(),
    };
    let mut out = match &cli.command {
        Command::Sp { nu } => cmd_sp(*nu, cli.force),
        Command::Switch(args) => cmd_switch(&mut ctx, args),
        Command::Census { input, classify } => cmd_census(&mut ctx, input, *classify, cli.force),
        Command::Chain(args) => cmd_chain(args),
        Command::Hadamard(h) => cmd_hadamard(&mut ctx, h),
        Command::Iso(i) => cmd_iso(&mut ctx, i, cli.force),
        Command::Rank { input } => cmd_rank(&mut ctx, input),
        Command::Verify { descriptor } => cmd_verify(&mut ctx, descriptor),
    }?;
    out.inputs = ctx.inputs;
    Ok(out)
}

fn cmd_sp(nu: u32, force: bool) -> Result<Outcome> {
    if nu < 2 || (nu > SP_NU_GUARD && !force) {
        return Err(Error::Usage(format!(
            "--nu must be in 2..={SP_NU_GUARD} (larger values need --force), got {nu}"
        )));
    }
    let g = symplectic_graph(nu)?;
    let params = srg_params(&g)?;
    let rank = g.rank2();
    let g6 = to_graph6_string(&g);
    Ok(Outcome {
        stderr: format!("n={} params={params} rank2={rank}", g.n()),
        outputs: json!({ "graph6": g6, "n": g.n(), "params": params, "rank2": rank }),
        stdout: g6 + "\n",
        ..Outcome::default()
    })
}

/// Resolves a label to a vertex index: `index + 1`, or a row vector when
/// the graph is symplectic-sized and the token has length `2nu`.
fn resolve_label(g: &Graph, token: &str) -> Result<usize> {
    let n = g.n();
    let width = symplectic_nu(n).map(|nu| 2 * nu as usize);
    let is_row = width == Some(token.len()) && token.bytes().all(|b| b == b'0' || b == b'1');
    let label = if is_row {
        parse_row_vector(token)?
    } else {
        token
            .parse::<u64>()
            .map_err(|_| Error::Usage(format!("bad vertex label {token:?}")))?
    };
    if label == 0 || label > n as u64 {
        return Err(Error::Usage(format!("label {token} is outside 1..={n}")));
    }
    Ok(label as usize - 1)
}

fn cmd_switch(ctx: &mut Ctx, args: &SwitchArgs) -> Result<Outcome> {
    let g = ctx.graph(&args.input)?;
    let members: Vec<usize> = if args.prop4 {
        let nu = symplectic_nu(g.n()).filter(|&nu| nu >= 3).ok_or_else(|| {
            Error::Usage(format!("--prop4 needs Sp(2nu,2) with nu >= 3, got {} vertices", g.n()))
        })?;
        let z = match args.z.as_deref() {
            None | Some("") => 0,
            Some(bits) => {
                if bits.len() != 2 * nu as usize - 6 {
                    return Err(Error::Usage(format!("--z needs {} coordinates", 2 * nu - 6)));
                }
                parse_row_vector(bits)?
            }
        };
        standard_switching_set(nu, z)?.to_vec()
    } else {
        let tokens = args.set.as_deref().unwrap_or_default();
        if tokens.len() != 4 {
            return Err(Error::Usage(format!("--set needs 4 labels, got {}", tokens.len())));
        }
        tokens.iter().map(|t| resolve_label(&g, t)).collect::<Result<_>>()?
    };
    let s = validate_switching_set(&g, &members)?;
    let h = apply_switch(&g, &s)?;
    let (before, after) = (g.rank2(), h.rank2());
    let g6 = to_graph6_string(&h);
    let labels: Vec<usize> = s.members().iter().map(|v| v + 1).collect();
    Ok(Outcome {
        stderr: format!("rank2 {before} -> {after}"),
        outputs: json!({ "graph6": g6, "set": labels, "rank_before": before, "rank_after": after }),
        stdout: g6 + "\n",
        ..Outcome::default()
    })
}

fn cmd_census(ctx: &mut Ctx, input: &str, classify: bool, force: bool) -> Result<Outcome> {
    let g = ctx.graph(input)?;
    if g.n() > CENSUS_N_GUARD && !force {
        return Err(Error::Size(format!(
            "census of {} vertices exceeds {CENSUS_N_GUARD} (use --force)",
            g.n()
        )));
    }
    let census = switch_census(&g);
    let mut value = serde_json::to_value(&census).map_err(|e| Error::Internal(e.to_string()))?;
    if classify {
        let limit = if force { usize::MAX } else { MAX_VERTICES };
        for (rank, group) in &census.by_rank {
            let graphs = group
                .graphs
                .iter()
                .map(|s| crate::graph6::decode_graph6(s.as_bytes()))
                .collect::<Result<Vec<_>>>()?;
            let report = class_report_limited(&graphs, limit)?;
            value["by_rank"][rank.to_string()]["classes"] = json!(report.classes.len());
        }
    }
    let summary: Vec<String> = census
        .by_rank
        .iter()
        .map(|(r, grp)| format!("rank {r}: {}", grp.count))
        .collect();
    Ok(Outcome {
        stdout: value.to_string() + "\n",
        stderr: summary.join(", "),
        outputs: value,
        ..Outcome::default()
    })
}

fn cmd_chain(args: &ChainArgs) -> Result<Outcome> {
    let report = if args.replay_published {
        replay_published_chain()?
    } else {
        rank_ascent_chain(&symplectic_graph(3)?, args.max_steps)
    };
    let mut value = serde_json::to_value(&report).map_err(|e| Error::Internal(e.to_string()))?;
    let mut stderr = format!("ranks {:?}", report.ranks());
    if args.census {
        let comparison = compare_published_counts(&censuses_along(&report)?);
        for d in &comparison.discrepancies {
            stderr += &format!("\nwarning: count mismatch, {d}");
        }
        value["census_comparison"] =
            serde_json::to_value(&comparison).map_err(|e| Error::Internal(e.to_string()))?;
    }
    Ok(Outcome {
        stdout: value.to_string() + "\n",
        stderr,
        outputs: value,
        ..Outcome::default()
    })
}

fn load_block(ctx: &mut Ctx, token: &str) -> Result<HMatrix> {
    if token.eq_ignore_ascii_case("h4") {
        return Ok(HMatrix::h4());
    }
    if Path::new(token).extension().is_some_and(|e| e == "g6") {
        return h_of_graph(&ctx.graph(token)?);
    }
    HMatrix::from_text(&ctx.text(token)?)
}

fn matrix_outcome(h: &HMatrix) -> Outcome {
    let rho = h.rho();
    Outcome {
        stdout: h.to_text(),
        stderr: format!("order {} rho {rho}", h.order()),
        outputs: json!({ "order": h.order(), "rho": rho, "normalized": h.is_normalized(), "graphical": h.is_graphical() }),
        ..Outcome::default()
    }
}

fn graph_outcome(g: &Graph) -> Outcome {
    let g6 = to_graph6_string(g);
    let params = srg_params(g).ok();
    let rank = g.rank2();
    Outcome {
        stderr: format!(
            "n={} params={} rank2={rank}",
            g.n(),
            params.map_or("none".to_string(), |p| p.to_string())
        ),
        outputs: json!({ "graph6": g6, "n": g.n(), "params": params, "rank2": rank }),
        stdout: g6 + "\n",
        ..Outcome::default()
    }
}

fn cmd_hadamard(ctx: &mut Ctx, cmd: &HadamardCommand) -> Result<Outcome> {
    match cmd {
        HadamardCommand::Power { nu } => Ok(matrix_outcome(&h_power(*nu)?)),
        HadamardCommand::OfGraph { input } => Ok(matrix_outcome(&h_of_graph(&ctx.graph(input)?)?)),
        HadamardCommand::GraphOf { input } => {
            let h = HMatrix::from_text(&ctx.text(input)?)?;
            Ok(graph_outcome(&graph_of(&h)?))
        }
        HadamardCommand::Substitute { blocks } => {
            let hs = blocks
                .iter()
                .map(|b| load_block(ctx, b))
                .collect::<Result<Vec<_>>>()?;
            Ok(matrix_outcome(&substituted_power(&hs)?))
        }
        HadamardCommand::Rho { input } => {
            let h = HMatrix::from_text(&ctx.text(input)?)?;
            let rho = h.rho();
            Ok(Outcome {
                stdout: format!("{rho}\n"),
                outputs: json!({ "order": h.order(), "rho": rho }),
                ..Outcome::default()
            })
        }
    }
}

fn cmd_iso(ctx: &mut Ctx, cmd: &IsoCommand, force: bool) -> Result<Outcome> {
    let limit = if force { usize::MAX } else { MAX_VERTICES };
    match cmd {
        IsoCommand::Classify { input } => {
            let graphs = ctx.graphs(input)?;
            let report = class_report_limited(&graphs, limit)?;
            let value = serde_json::to_value(&report).map_err(|e| Error::Internal(e.to_string()))?;
            Ok(Outcome {
                stdout: value.to_string() + "\n",
                stderr: format!("{} graphs, {} classes", graphs.len(), report.classes.len()),
                outputs: value,
                ..Outcome::default()
            })
        }
        IsoCommand::Compare { a, b } => {
            let (ga, gb) = (ctx.graph(a)?, ctx.graph(b)?);
            let iso = if force {
                ga.n() == gb.n()
                    && canonical_labeling_limited(&ga, limit)?.graph.adjacency()
                        == canonical_labeling_limited(&gb, limit)?.graph.adjacency()
            } else {
                are_isomorphic(&ga, &gb)?
            };
            Ok(Outcome {
                stdout: format!("{iso}\n"),
                outputs: json!({ "isomorphic": iso }),
                ..Outcome::default()
            })
        }
        IsoCommand::Canon { input } => {
            let graphs = ctx.graphs(input)?;
            let canon = graphs
                .iter()
                .map(|g| Ok(to_graph6_string(&canonical_labeling_limited(g, limit)?.graph)))
                .collect::<Result<Vec<_>>>()?;
            Ok(Outcome {
                outputs: json!({ "graphs": canon }),
                stdout: lines(canon),
                ..Outcome::default()
            })
        }
    }
}

fn cmd_rank(ctx: &mut Ctx, input: &str) -> Result<Outcome> {
    let bytes = ctx.read(input)?;
    // Matrix text starts with "rows cols"; graph6 never contains a space.
    let first_line = bytes.split(|&b| b == b'\n').next().unwrap_or_default();
    let ranks: Vec<usize> = if first_line.contains(&b' ') {
        let text = std::str::from_utf8(&bytes).map_err(|e| Error::parse(e.valid_up_to(), "input is not UTF-8"))?;
        vec![BitMatrix::from_text(text)?.rank2()]
    } else {
        decode_graph6_lines(&bytes)?.iter().map(Graph::rank2).collect()
    };
    Ok(Outcome {
        stdout: lines(ranks.iter().map(|r| r.to_string())),
        outputs: json!({ "ranks": ranks }),
        ..Outcome::default()
    })
}

/// Expected properties of one graph, read by `verify`.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Descriptor {
    /// The graph itself, or `graph_file` naming a graph6 file.
    pub graph6: Option<String>,
    pub graph_file: Option<String>,
    pub n: Option<usize>,
    pub params: Option<SrgParams>,
    pub rank2: Option<usize>,
    /// Check the 2-rank against the bound for graphs with Sp(2nu,2) parameters.
    #[serde(default)]
    pub rank_bound: bool,
    /// Vector labels; adjacency must equal the symplectic form on them.
    pub labels: Option<Vec<u64>>,
}

#[derive(Debug, Serialize)]
struct Check {
    name: &'static str,
    expected: Value,
    actual: Value,
    pass: bool,
}

fn cmd_verify(ctx: &mut Ctx, path: &str) -> Result<Outcome> {
    let text = ctx.text(path)?;
    let d: Descriptor = serde_json::from_str(&text).map_err(|e| Error::Parse {
        offset: 0,
        message: format!("descriptor line {} column {}: {e}", e.line(), e.column()),
    })?;
    let g = match (&d.graph6, &d.graph_file) {
        (Some(s), None) => crate::graph6::decode_graph6(s.as_bytes())?,
        (None, Some(f)) => ctx.graph(f)?,
        _ => return Err(Error::Usage("descriptor needs exactly one of graph6 and graph_file".into())),
    };
    let mut checks = Vec::new();
    let mut check = |name, expected: Value, actual: Value| {
        let pass = expected == actual;
        checks.push(Check { name, expected, actual, pass });
    };
    if let Some(n) = d.n {
        check("n", json!(n), json!(g.n()));
    }
    if let Some(p) = d.params {
        let actual = srg_params(&g).map_or_else(|e| json!(e.to_string()), |q| json!(q));
        check("params", json!(p), actual);
    }
    let rank = g.rank2();
    if let Some(r) = d.rank2 {
        check("rank2", json!(r), json!(rank));
    }
    if d.rank_bound {
        let bound = symplectic_nu(g.n()).filter(|&nu| nu >= 2).map(rank_upper_bound).transpose()?;
        match bound {
            Some(b) => check("rank_bound", json!(true), json!(rank as u64 <= b)),
            None => check("rank_bound", json!("4^nu - 1 vertices"), json!(g.n())),
        }
    }
    if let Some(labels) = &d.labels {
        let labelled = g.clone().with_labels(labels.clone());
        let agrees = match (&labelled, symplectic_nu(g.n())) {
            (Ok(_), Some(nu)) if labels.iter().all(|&l| l >> (2 * nu) == 0) => (0..g.n()).all(|a| {
                (a + 1..g.n()).all(|b| g.has_edge(a, b) == (form_unchecked(labels[a], labels[b]) == 1))
            }),
            _ => false,
        };
        check("labels", json!(true), json!(agrees));
    }
    let ok = checks.iter().all(|c| c.pass);
    let value = json!({ "ok": ok, "checks": checks });
    let failed: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.name).collect();
    Ok(Outcome {
        stdout: value.to_string() + "\n",
        outputs: value,
        failure: (!ok).then(|| format!("verification failed: {}", failed.join(", "))),
        ..Outcome::default()
    })
}
