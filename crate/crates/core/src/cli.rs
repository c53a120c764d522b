//! The `magspec` command-line interface.
//!
//! Graph arguments are JSON graph files (see [`crate::io`]). Results go to
//! standard output; failures go to standard error as `error[code]: message`.
//! The exit status is 0 on success, 2 when a certificate or bracket fails its
//! numerical verification, and 1 for every other error.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cheeger::{cheeger_constant, frustration_index, PotentialRange};
use crate::covering::{
    band_sweep, bracket_by_contraction, bracket_by_splitting, bracket_by_virtualisation_with, intersect_brackets,
    BracketReport, PeriodicGraph, VirtualiseMode,
};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, MWGraph, OrientedEdge, VertexId, WeightKind};
use crate::hom::{search_hom, verify_hom, SearchLimits};
use crate::io::{self, fmt_num, round15, FORMAT_VERSION};
use crate::preorder::{
    certify_contract_edge, certify_contract_pendant, certify_contract_vertices, certify_delete_edge,
    certify_delete_vertex, clique_multiplicity_bound, Hypothesis, WeightClass,
};
use crate::spectra::{minimal_shift, shift_less_checked, spectrum, spanning_tree_count};

#[derive(Debug, Parser)]
#[command(name = "magspec", version, about = "Spectra, spectral preorders and Cheeger constants of magnetic weighted graphs")]
pub struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Re-derive weights of every input graph with this kind.
    #[arg(long, global = true, value_enum)]
    pub kind: Option<KindArg>,
    /// Comparison tolerance for spectral relations.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Combinatorial,
    Standard,
    Custom,
}

impl From<KindArg> for WeightKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Combinatorial => WeightKind::Combinatorial,
            KindArg::Standard => WeightKind::Standard,
            KindArg::Custom => WeightKind::Custom,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RangeArg {
    Signed,
    Circle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HypothesisArg {
    A1,
    A2,
    B,
    C,
    ContractA,
    ContractB,
}

#[derive(Debug, Clone, Args)]
pub struct GraphArg {
    /// Graph file.
    pub graph: PathBuf,
    /// Floquet parameter t added along cocycle edges.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub flux: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalues in ascending order (CSV: one line `λ_1,...,λ_n`).
    Spectrum(GraphArg),
    /// Tests σ(A) ≼_r σ(B).
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        shift: i64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        flux: f64,
    },
    /// Applies a perturbation and prints its verified certificate.
    Perturb {
        #[command(flatten)]
        input: GraphArg,
        /// Hypothesis branch for custom weights.
        #[arg(long, value_enum)]
        hypothesis: Option<HypothesisArg>,
        /// Writes the perturbed graph here.
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(subcommand)]
        op: PerturbOp,
    },
    /// Verifies or searches MW-homomorphisms.
    Hom {
        #[command(subcommand)]
        op: HomOp,
    },
    /// k-way Cheeger constant by exhaustive enumeration.
    Cheeger {
        #[command(flatten)]
        input: GraphArg,
        #[arg(short, long, default_value_t = 2)]
        k: usize,
        #[arg(long, value_enum)]
        range: Option<RangeArg>,
    },
    /// Frustration index.
    Frustration {
        #[command(flatten)]
        input: GraphArg,
        #[arg(long, value_enum)]
        range: Option<RangeArg>,
    },
    /// Clique-based lower bound on the multiplicity of an eigenvalue.
    CliqueBound {
        graph: PathBuf,
    },
    /// Band functions over t ∈ [0, 2π] (CSV columns: t,lambda_1,...,lambda_n).
    Sweep {
        graph: PathBuf,
        #[arg(long, default_value_t = crate::covering::DEFAULT_SWEEP_RESOLUTION)]
        resolution: usize,
    },
    /// Interval localisation of the covering spectrum.
    Bracket {
        #[command(subcommand)]
        op: BracketOp,
    },
    /// Number of spanning trees.
    Trees {
        graph: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum PerturbOp {
    DeleteEdge {
        #[arg(long)]
        edge: u32,
    },
    ContractVertices {
        #[arg(long)]
        v1: u32,
        #[arg(long)]
        v2: u32,
    },
    ContractEdge {
        #[arg(long)]
        edge: u32,
    },
    ContractPendant {
        #[arg(long)]
        edge: u32,
    },
    DeleteVertex {
        #[arg(long)]
        vertex: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum HomOp {
    /// Checks a map given as `{"vertex_map": {...}, "edge_map": {"e": {"edge": e', "reversed": bool}}}`.
    Verify {
        source: PathBuf,
        target: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
    /// Backtracking search for an MW-homomorphism.
    Search {
        source: PathBuf,
        target: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum BracketOp {
    /// J_k = [λ_k(W⁻), λ_k(W⁺)] from virtualised edges and vertices.
    Virtualise {
        graph: PathBuf,
        #[arg(long, value_delimiter = ',')]
        edges: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        vertices: Vec<u32>,
        /// Drop boundary edges instead of keeping the Dirichlet diagonal.
        #[arg(long)]
        drop: bool,
    },
    /// Brackets from identifying two quotient vertices.
    Contract {
        graph: PathBuf,
        #[arg(long)]
        v1: u32,
        #[arg(long)]
        v2: u32,
    },
    /// Brackets from a split graph whose contraction of v1, v2 is the quotient.
    Split {
        graph: PathBuf,
        #[arg(long)]
        v1: u32,
        #[arg(long)]
        v2: u32,
    },
    /// Per-index intersection of saved bracket reports.
    Intersect {
        #[arg(required = true, num_args = 1..)]
        reports: Vec<PathBuf>,
    },
}

struct Ctx {
    kind: Option<WeightKind>,
    tol: f64,
}

impl Ctx {
    fn periodic(&self, path: &Path) -> Result<PeriodicGraph> {
        let p = io::load_periodic(path)?;
        match self.kind {
            Some(k) => PeriodicGraph::new(p.quotient().with_kind(k), p.cocycle_map().clone()),
            None => Ok(p),
        }
    }

    fn graph(&self, arg: &GraphArg) -> Result<MWGraph> {
        Ok(self.periodic(&arg.graph)?.floquet(arg.flux))
    }

    fn plain(&self, path: &Path) -> Result<MWGraph> {
        Ok(self.periodic(path)?.quotient().clone())
    }
}

/// Output of one command: a JSON value plus optional text and CSV renderings.
struct Output {
    json: Value,
    text: Option<String>,
    csv: Option<String>,
    default: Format,
}

impl Output {
    fn json(json: Value) -> Self {
        Output { json, text: None, csv: None, default: Format::Json }
    }

    fn render(self, format: Option<Format>) -> Result<String> {
        let format = format.unwrap_or(self.default);
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.json).expect("json serialises")),
            Format::Text => Ok(self.text.unwrap_or_else(|| serde_json::to_string_pretty(&self.json).expect("json serialises"))),
            Format::Csv => self.csv.ok_or_else(|| Error::InvalidInput("CSV output is not available for this command".into())),
        }
    }
}

fn versioned<T: Serialize>(value: &T) -> Value {
    let mut v = serde_json::to_value(value).expect("value serialises");
    round_floats(&mut v);
    match v {
        Value::Object(mut map) => {
            map.insert("format_version".into(), json!(FORMAT_VERSION));
            Value::Object(map)
        }
        other => json!({"format_version": FORMAT_VERSION, "result": other}),
    }
}

/// Applies [`round15`] to every number in a JSON tree.
fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(x) = n.as_f64().map(round15).and_then(serde_json::Number::from_f64) {
                *n = x;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

fn weight_class(g: &MWGraph, hypothesis: Option<HypothesisArg>) -> Result<WeightClass> {
    if let Some(h) = hypothesis {
        let h = match h {
            HypothesisArg::A1 => Hypothesis::DeleteEdgeA1,
            HypothesisArg::A2 => Hypothesis::DeleteEdgeA2,
            HypothesisArg::B => Hypothesis::DeleteEdgeB,
            HypothesisArg::C => Hypothesis::DeleteEdgeC,
            HypothesisArg::ContractA => Hypothesis::ContractA,
            HypothesisArg::ContractB => Hypothesis::ContractB,
        };
        return Ok(WeightClass::General(h));
    }
    match g.kind() {
        WeightKind::Combinatorial => Ok(WeightClass::Combinatorial),
        WeightKind::Standard => Ok(WeightClass::Standard),
        WeightKind::Custom => Err(Error::InvalidInput("custom weights need --hypothesis".into())),
    }
}

fn range_of(r: Option<RangeArg>) -> Option<PotentialRange> {
    r.map(|r| match r {
        RangeArg::Signed => PotentialRange::Signed,
        RangeArg::Circle => PotentialRange::Circle,
    })
}

#[derive(Deserialize)]
struct MapFile {
    vertex_map: BTreeMap<VertexId, VertexId>,
    edge_map: BTreeMap<EdgeId, OrientedEdge>,
}

fn bracket_text(r: &BracketReport) -> String {
    let mut lines = Vec::new();
    for (k, j) in r.intervals.iter().enumerate() {
        lines.push(match j {
            Some(j) if j.width() <= crate::covering::INTERVAL_SLACK => format!("J_{} = {{{}}}", k + 1, fmt_num(j.lo)),
            Some(j) => format!("J_{} = [{}, {}]", k + 1, fmt_num(j.lo), fmt_num(j.hi)),
            None => format!("J_{} = empty", k + 1),
        });
    }
    if r.gaps.is_empty() {
        lines.push("gaps: none".into());
    } else {
        let gaps: Vec<String> = r.gaps.iter().map(|g| format!("({}, {})", fmt_num(g.lo), fmt_num(g.hi))).collect();
        lines.push(format!("gaps: {}", gaps.join(" ")));
    }
    lines.join("\n")
}

fn bracket_output(r: &BracketReport) -> Output {
    Output { json: versioned(r), text: Some(bracket_text(r)), csv: None, default: Format::Json }
}

fn execute(cli: &Cli) -> Result<Output> {
    let ctx = Ctx { kind: cli.kind.map(Into::into), tol: cli.tol };
    match &cli.command {
        Command::Spectrum(arg) => {
            let s = spectrum(&ctx.graph(arg)?)?;
            let text = s.grouped().iter().map(|(x, m)| format!("{} (×{m})", fmt_num(*x))).collect::<Vec<_>>().join("\n");
            Ok(Output { json: io::spectrum_json(&s), text: Some(text), csv: Some(io::spectrum_csv(&s)), default: Format::Csv })
        }
        Command::Compare { a, b, shift, flux } => {
            let sa = spectrum(&ctx.periodic(a)?.floquet(*flux))?;
            let sb = spectrum(&ctx.periodic(b)?.floquet(*flux))?;
            let rel = shift_less_checked(&sa, &sb, *shift, ctx.tol)?;
            let text = match rel.witness_index {
                None if rel.holds => "holds".to_string(),
                Some(k) => format!("fails at index {k}"),
                None => "fails: the second spectrum is too long for this shift".to_string(),
            };
            let mut json = versioned(&rel);
            json["minimal_shift"] = json!(minimal_shift(&sa, &sb, ctx.tol));
            Ok(Output { json, text: Some(text), csv: None, default: Format::Text })
        }
        Command::Perturb { input, hypothesis, output, op } => {
            let g = ctx.graph(input)?;
            let class = weight_class(&g, *hypothesis)?;
            let (perturbed, cert) = match *op {
                PerturbOp::DeleteEdge { edge } => certify_delete_edge(&g, EdgeId(edge), class)?,
                PerturbOp::ContractVertices { v1, v2 } => certify_contract_vertices(&g, VertexId(v1), VertexId(v2), class)?,
                PerturbOp::ContractEdge { edge } => certify_contract_edge(&g, EdgeId(edge), class)?,
                PerturbOp::ContractPendant { edge } => certify_contract_pendant(&g, EdgeId(edge), class)?,
                PerturbOp::DeleteVertex { vertex } => certify_delete_vertex(&g, VertexId(vertex), class)?,
            };
            if let Some(path) = output {
                io::save_graph(path, &perturbed)?;
            }
            Ok(Output::json(versioned(&cert)))
        }
        Command::Hom { op } => match op {
            HomOp::Verify { source, target, map } => {
                let (s, t) = (ctx.plain(source)?, ctx.plain(target)?);
                let m: MapFile = serde_json::from_str(&io::read_text(map)?).map_err(|e| Error::Parse(e.to_string()))?;
                let hom = verify_hom(&s, &t, &m.vertex_map, &m.edge_map)?;
                let mut json = versioned(&hom);
                json["is_mw_hom"] = json!(hom.is_mw_hom());
                json["is_measure_preserving"] = json!(hom.is_measure_preserving());
                Ok(Output::json(json))
            }
            HomOp::Search { source, target } => {
                let (s, t) = (ctx.plain(source)?, ctx.plain(target)?);
                let found = search_hom(&s, &t, SearchLimits::default())?;
                let text = if found.is_some() { "found" } else { "none" }.to_string();
                Ok(Output { json: json!({"format_version": FORMAT_VERSION, "found": found.is_some(), "hom": found.map(|h| versioned(&h))}), text: Some(text), csv: None, default: Format::Json })
            }
        },
        Command::Cheeger { input, k, range } => {
            let r = cheeger_constant(&ctx.graph(input)?, *k, range_of(*range))?;
            let json = json!({
                "format_version": FORMAT_VERSION,
                "k": r.k,
                "h_k": round15(r.value),
                "subpartition": r.subpartition.blocks(),
                "block_values": r.block_values.iter().map(|&x| round15(x)).collect::<Vec<_>>(),
                "certified": r.certified,
                "frustration_method": r.frustration_method,
            });
            Ok(Output { json, text: Some(fmt_num(r.value)), csv: None, default: Format::Json })
        }
        Command::Frustration { input, range } => {
            let r = frustration_index(&ctx.graph(input)?, range_of(*range))?;
            Ok(Output { json: versioned(&r), text: Some(fmt_num(r.value)), csv: None, default: Format::Json })
        }
        Command::CliqueBound { graph } => {
            let b = clique_multiplicity_bound(&ctx.plain(graph)?)?;
            let text = match &b {
                Some(b) => format!("eigenvalue {} has multiplicity at least {} (observed {})", b.d, b.multiplicity_lower_bound, b.observed_multiplicity),
                None => "no bound: too many edges".into(),
            };
            Ok(Output { json: json!({"format_version": FORMAT_VERSION, "bound": b}), text: Some(text), csv: None, default: Format::Json })
        }
        Command::Sweep { graph, resolution } => {
            let sweep = band_sweep(&ctx.periodic(graph)?, *resolution)?;
            let n = sweep.spectra.first().map_or(0, |s| s.len());
            let mut csv = String::from("t");
            for k in 1..=n {
                csv.push_str(&format!(",lambda_{k}"));
            }
            for (t, s) in sweep.ts.iter().zip(&sweep.spectra) {
                csv.push('\n');
                csv.push_str(&fmt_num(*t));
                csv.push(',');
                csv.push_str(&io::spectrum_csv(s));
            }
            Ok(Output { json: versioned(&sweep), text: None, csv: Some(csv), default: Format::Csv })
        }
        Command::Bracket { op } => {
            let report = match op {
                BracketOp::Virtualise { graph, edges, vertices, drop } => {
                    let e0: Vec<EdgeId> = edges.iter().map(|&e| EdgeId(e)).collect();
                    let v0: Vec<VertexId> = vertices.iter().map(|&v| VertexId(v)).collect();
                    let mode = if *drop { VirtualiseMode::Drop } else { VirtualiseMode::Dirichlet };
                    bracket_by_virtualisation_with(&ctx.periodic(graph)?, &e0, &v0, mode)?
                }
                BracketOp::Contract { graph, v1, v2 } => bracket_by_contraction(&ctx.periodic(graph)?, VertexId(*v1), VertexId(*v2))?,
                BracketOp::Split { graph, v1, v2 } => bracket_by_splitting(&ctx.periodic(graph)?, VertexId(*v1), VertexId(*v2))?,
                BracketOp::Intersect { reports } => {
                    let parsed = reports
                        .iter()
                        .map(|p| serde_json::from_str::<BracketReport>(&io::read_text(p)?).map_err(|e| Error::Parse(format!("{}: {e}", p.display()))))
                        .collect::<Result<Vec<_>>>()?;
                    intersect_brackets(&parsed)?
                }
            };
            Ok(bracket_output(&report))
        }
        Command::Trees { graph } => {
            let count = spanning_tree_count(&ctx.plain(graph)?)?;
            Ok(Output { json: json!({"format_version": FORMAT_VERSION, "spanning_trees": count.round()}), text: Some(format!("{}", count.round())), csv: None, default: Format::Text })
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(err, "error[usage]: {rendered}");
                    1
                }
            };
        }
    };
    match execute(&cli).and_then(|o| o.render(cli.format)) {
        Ok(text) => {
            let _ = writeln!(out, "{text}");
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error[{}]: {e}", e.code());
            if e.is_verification_failure() {
                2
            } else {
                1
            }
        }
    }
}
