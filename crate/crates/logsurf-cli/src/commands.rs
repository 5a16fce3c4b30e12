//! Command-line surface: argument definitions and one handler per command.

use crate::document::{exact, vertex_set, DocumentError, GraphDocument};
use crate::dot::to_dot;
use crate::report::{
    ids, ids_of, q, section, set_line, AleReport, Entry, EpsReport, RedundantReport, RunReport,
    VerdictReport,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use logsurf::bark::bark_d;
use logsurf::classify::{classify_germ, classify_half, duval_type, eps_check, ClassifyError};
use logsurf::coefficients::{coefficients_linear, germ_of, total_coefficient};
use logsurf::invariants::{discriminant, ChainData, InvariantError};
use logsurf::mmp::{
    almost_log_exceptional, almost_minimalize, enumerate_runs, log_exceptional, peel, redundant,
    relative_k_mmp, run_mmp, Kind, MmpError, Strategy,
};
use logsurf::shapes::{chain_order, find_shapes};
use logsurf::{LogSurfaceModel, ModelError, Rational, VertexSet};
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::Value;
use std::fmt::Write;
use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(
    name = "logsurf",
    version,
    about = "Exact combinatorics of log surfaces given by weighted dual graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    First,
    Second,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::First => Kind::First,
            KindArg::Second => Kind::Second,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    LowestId,
    BoundaryFirst,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::LowestId => Strategy::LowestId,
            StrategyArg::BoundaryFirst => Strategy::BoundaryFirst,
        }
    }
}

/// Options shared by every command.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Graph document (`.json`).
    pub file: PathBuf,
    /// Uniform boundary coefficient `p/q`, overriding the document.
    #[arg(long)]
    pub r: Option<String>,
    /// Kind of runs.
    #[arg(long, value_enum, default_value = "first")]
    pub kind: KindArg,
    /// Epsilon `p/q` for lc/dlt checks; defaults to `1 - r` (or 0).
    #[arg(long)]
    pub eps: Option<String>,
    /// Choice among several contractible curves.
    #[arg(long, value_enum, default_value = "lowest-id")]
    pub strategy: StrategyArg,
    /// Print the report as JSON.
    #[arg(long)]
    pub json: bool,
    /// Write the report to a file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Overview: shapes of the boundary, coefficients, log exceptional curves.
    Analyze(Common),
    /// Discriminant of a vertex set (default: the contracted set, else the boundary).
    Discriminant {
        #[command(flatten)]
        common: Common,
        /// Vertex ids separated by `+` or `,`.
        #[arg(long)]
        set: Option<String>,
    },
    /// Bark of an admissible part of the boundary (default: the contracted set).
    Bark {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        set: Option<String>,
    },
    /// Coefficients and log discrepancies of the contracted curves.
    Coeffs(Common),
    /// Classification of the germs of the contracted set and the eps check.
    Classify(Common),
    /// Maximal pure peeling.
    Peel(Common),
    /// The K-MMP over the contraction of the peeling.
    Squeeze(Common),
    /// Redundant curves with respect to the peeling.
    Redundant(Common),
    /// Almost log exceptional curves with respect to the peeling.
    Ale(Common),
    /// A maximal run of the chosen kind and strategy.
    Mmp(Common),
    /// Staged almost minimalization.
    Amm(Common),
    /// All maximal runs, by final contracted set.
    EnumerateRuns {
        #[command(flatten)]
        common: Common,
        /// Restrict contractions to these vertex ids.
        #[arg(long)]
        within: Option<String>,
    },
    /// Graphviz DOT text.
    Dot(Common),
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Analyze(c)
            | Command::Coeffs(c)
            | Command::Classify(c)
            | Command::Peel(c)
            | Command::Squeeze(c)
            | Command::Redundant(c)
            | Command::Ale(c)
            | Command::Mmp(c)
            | Command::Amm(c)
            | Command::Dot(c) => c,
            Command::Discriminant { common, .. }
            | Command::Bark { common, .. }
            | Command::EnumerateRuns { common, .. } => common,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable input or malformed document or flag value.
    #[error("{0}")]
    Usage(String),
    /// A well-formed request the engine rejects.
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Domain(_) => 2,
        }
    }
}

impl From<DocumentError> for CliError {
    fn from(e: DocumentError) -> Self {
        match e {
            DocumentError::Syntax { .. } | DocumentError::Field { .. } => {
                CliError::Usage(e.to_string())
            }
            DocumentError::Validation(_) | DocumentError::Graph(_) => {
                CliError::Domain(e.to_string())
            }
        }
    }
}

macro_rules! domain_errors {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Domain(e.to_string())
            }
        })*
    };
}

domain_errors!(
    MmpError,
    ClassifyError,
    InvariantError,
    ModelError,
    logsurf::GraphError
);

/// A rendered report: human-readable text and its JSON form.
#[derive(Debug, Clone, PartialEq)]
pub struct Rendered {
    pub text: String,
    pub json: Value,
}

impl Rendered {
    fn new(text: String, report: &impl Serialize) -> Self {
        Rendered {
            text,
            json: serde_json::to_value(report).expect("reports serialize"),
        }
    }

    pub fn output(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(&self.json).expect("reports serialize");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

/// The loaded document with the flag overrides applied.
pub struct Input {
    pub name: String,
    pub model: LogSurfaceModel,
    pub kind: Kind,
    pub strategy: Strategy,
    pub eps: Rational,
}

impl Input {
    pub fn load(common: &Common) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(&common.file)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", common.file.display())))?;
        Self::from_text(&text, common)
    }

    pub fn from_text(text: &str, common: &Common) -> Result<Self, CliError> {
        let doc = GraphDocument::from_json(text)?;
        let mut model = doc.to_model()?;
        if let Some(r) = &common.r {
            model = model.with_uniform_r(Some(exact("--r", r)?))?;
        }
        let eps = match &common.eps {
            Some(e) => exact("--eps", e)?,
            None => model
                .uniform_r()
                .map_or_else(Rational::zero, |r| Rational::one() - r),
        };
        let name = if doc.metadata.name.is_empty() {
            common
                .file
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default()
        } else {
            doc.metadata.name.clone()
        };
        Ok(Input {
            name,
            model,
            kind: common.kind.into(),
            strategy: common.strategy.into(),
            eps,
        })
    }

    fn eps_label(&self) -> String {
        match self.model.uniform_r() {
            Some(r) if self.eps == Rational::one() - r => "(1-r)-lc".to_string(),
            _ => format!("{}-lc", q(&self.eps)),
        }
    }
}

/// Runs a parsed command and renders its report.
pub fn run(command: &Command) -> Result<Rendered, CliError> {
    let input = Input::load(command.common())?;
    execute(command, &input)
}

/// Runs a command on an already loaded input.
pub fn execute(command: &Command, input: &Input) -> Result<Rendered, CliError> {
    match command {
        Command::Analyze(_) => analyze(input),
        Command::Discriminant { set, .. } => discriminant_cmd(input, set.as_deref()),
        Command::Bark { set, .. } => bark_cmd(input, set.as_deref()),
        Command::Coeffs(_) => coeffs(input),
        Command::Classify(_) => classify(input),
        Command::Peel(_) => peel_cmd(input),
        Command::Squeeze(_) => squeeze(input),
        Command::Redundant(_) => redundant_cmd(input),
        Command::Ale(_) => ale(input),
        Command::Mmp(_) => mmp(input),
        Command::Amm(_) => amm(input),
        Command::EnumerateRuns { within, .. } => enumerate(input, within.as_deref()),
        Command::Dot(_) => {
            let dot = to_dot(&input.model, &input.name);
            Ok(Rendered {
                json: serde_json::json!({ "dot": dot }),
                text: dot,
            })
        }
    }
}

fn header(input: &Input, out: &mut String) {
    let m = &input.model;
    let g = m.graph();
    let _ = writeln!(out, "model {}: {} curves", input.name, g.len());
    let boundary: Vec<String> = m
        .boundary_support()
        .iter()
        .map(|&v| format!("{} ({})", g.id(v), q(&m.boundary_coefficient(v))))
        .collect();
    let _ = writeln!(out, "boundary: {}", set_line(&boundary));
    let _ = writeln!(out, "contracted: {}", set_line(&ids(g, m.contracted())));
    if let Some(r) = m.uniform_r() {
        let _ = writeln!(out, "uniform r = {}", q(r));
    }
}

#[derive(Serialize)]
struct ShapesReport {
    tips: Vec<String>,
    branching: Vec<String>,
    twigs: Vec<Vec<String>>,
    rods: Vec<Vec<String>>,
    segments: Vec<Vec<String>>,
    forks: Vec<Vec<String>>,
    benches: Vec<Vec<String>>,
    half_benches: Vec<Vec<String>>,
    cycles: Vec<Vec<String>>,
    superfluous: Vec<String>,
}

#[derive(Serialize)]
struct AnalyzeReport {
    name: String,
    curves: usize,
    boundary: Vec<Entry>,
    contracted: Vec<String>,
    r: Option<String>,
    shapes: ShapesReport,
    coefficients: Vec<Entry>,
    eps: EpsReport,
    log_exceptional: Vec<VerdictReport>,
}

fn analyze(input: &Input) -> Result<Rendered, CliError> {
    let m = &input.model;
    let g = m.graph();
    let d = m.boundary_support();
    let s = find_shapes(g, &d);
    let shapes = ShapesReport {
        tips: ids_of(g, &s.tips),
        branching: ids_of(g, &s.branching),
        twigs: s.twigs.iter().map(|t| ids_of(g, t)).collect(),
        rods: s.rods.iter().map(|t| ids_of(g, t)).collect(),
        segments: s.segments.iter().map(|t| ids_of(g, t)).collect(),
        forks: s.forks.iter().map(|f| ids(g, &f.vertices())).collect(),
        benches: s
            .benches
            .iter()
            .map(|b| ids(g, &b.central.iter().chain(&b.leaves).copied().collect()))
            .collect(),
        half_benches: s
            .half_benches
            .iter()
            .map(|b| ids(g, &b.central.iter().chain(&b.leaves).copied().collect()))
            .collect(),
        cycles: s.cycles.iter().map(|c| ids(g, c)).collect(),
        superfluous: ids_of(g, &s.superfluous),
    };
    let cf = coefficients_linear(m)?;
    let verdict = eps_check(m, &input.eps)?;
    let report = AnalyzeReport {
        name: input.name.clone(),
        curves: g.len(),
        boundary: d
            .iter()
            .map(|&v| Entry::new(g, v, &m.boundary_coefficient(v)))
            .collect(),
        contracted: ids(g, m.contracted()),
        r: m.uniform_r().map(q),
        shapes,
        coefficients: cf.iter().map(|(v, c)| Entry::new(g, v, c)).collect(),
        eps: EpsReport::new(g, &verdict),
        log_exceptional: log_exceptional(m)?
            .iter()
            .filter(|v| v.kind != logsurf::mmp::CurveKind::None)
            .map(|v| VerdictReport::new(g, v))
            .collect(),
    };
    let mut out = String::new();
    header(input, &mut out);
    let sh = &report.shapes;
    section(
        &mut out,
        "shapes of the boundary",
        [
            ("twigs", &sh.twigs),
            ("rods", &sh.rods),
            ("segments", &sh.segments),
            ("forks", &sh.forks),
            ("benches", &sh.benches),
            ("half-benches", &sh.half_benches),
            ("cycles", &sh.cycles),
        ]
        .into_iter()
        .filter(|(_, xs)| !xs.is_empty())
        .map(|(label, xs)| {
            format!(
                "{label}: {}",
                xs.iter()
                    .map(|x| format!("[{}]", x.join(" ")))
                    .collect::<Vec<_>>()
                    .join(", ")
            )
        }),
    );
    section(
        &mut out,
        "coefficients",
        report
            .coefficients
            .iter()
            .map(|e| format!("cf({}) = {}", e.id, e.value)),
    );
    let _ = writeln!(out, "{}", report.eps.line(&input.eps_label()));
    section(
        &mut out,
        "log exceptional curves",
        report.log_exceptional.iter().map(VerdictReport::line),
    );
    Ok(Rendered::new(out, &report))
}

fn chosen_set(input: &Input, set: Option<&str>) -> Result<VertexSet, CliError> {
    let m = &input.model;
    Ok(match set {
        Some(s) => vertex_set(m, s)?,
        None if !m.contracted().is_empty() => m.contracted().clone(),
        None => m.boundary_support(),
    })
}

#[derive(Serialize)]
struct ChainReport {
    order: Vec<String>,
    d: String,
    d_prime: String,
    delta: String,
    inductance: String,
}

#[derive(Serialize)]
struct ComponentReport {
    vertices: Vec<String>,
    discriminant: String,
    chain: Option<ChainReport>,
}

#[derive(Serialize)]
struct DiscriminantReport {
    set: Vec<String>,
    discriminant: String,
    components: Vec<ComponentReport>,
}

fn discriminant_cmd(input: &Input, set: Option<&str>) -> Result<Rendered, CliError> {
    let g = input.model.graph();
    let s = chosen_set(input, set)?;
    let mut components = Vec::new();
    for comp in g.components(&s) {
        let chain = match chain_order(g, &comp) {
            Some(order) => {
                let c = ChainData::new(g, &order)?;
                Some(ChainReport {
                    order: ids_of(g, &order),
                    d: c.d.to_string(),
                    d_prime: c.d_prime.to_string(),
                    delta: q(&c.delta),
                    inductance: q(&c.inductance),
                })
            }
            None => None,
        };
        components.push(ComponentReport {
            vertices: ids(g, &comp),
            discriminant: discriminant(g, &comp).to_string(),
            chain,
        });
    }
    let report = DiscriminantReport {
        set: ids(g, &s),
        discriminant: discriminant(g, &s).to_string(),
        components,
    };
    let mut out = format!("d({}) = {}\n", report.set.join("+"), report.discriminant);
    for c in &report.components {
        let _ = write!(out, "  d({}) = {}", c.vertices.join("+"), c.discriminant);
        if let Some(ch) = &c.chain {
            let _ = write!(
                out,
                "; chain [{}]: d' = {}, delta = {}, ind = {}",
                ch.order.join(" "),
                ch.d_prime,
                ch.delta,
                ch.inductance
            );
        }
        out.push('\n');
    }
    Ok(Rendered::new(out, &report))
}

#[derive(Serialize)]
struct BarkReport {
    set: Vec<String>,
    bark: Vec<Entry>,
    fork_factors: Vec<Entry>,
}

fn bark_cmd(input: &Input, set: Option<&str>) -> Result<Rendered, CliError> {
    let m = &input.model;
    let g = m.graph();
    let s = chosen_set(input, set)?;
    let b = bark_d(g, &m.boundary_support(), &s)?;
    let report = BarkReport {
        set: ids(g, &s),
        bark: b.divisor.iter().map(|(v, c)| Entry::new(g, v, c)).collect(),
        fork_factors: b
            .fork_factors
            .iter()
            .map(|(v, u)| Entry::new(g, *v, u))
            .collect(),
    };
    let mut out = String::new();
    section(
        &mut out,
        &format!("bark of {}", set_line(&report.set)),
        report.bark.iter().map(|e| format!("{}: {}", e.id, e.value)),
    );
    if !report.fork_factors.is_empty() {
        section(
            &mut out,
            "fork factors",
            report
                .fork_factors
                .iter()
                .map(|e| format!("center {}: {}", e.id, e.value)),
        );
    }
    Ok(Rendered::new(out, &report))
}

#[derive(Serialize)]
struct CoeffEntry {
    id: String,
    cf: String,
    ld: String,
}

#[derive(Serialize)]
struct CoeffsReport {
    r: Option<String>,
    coefficients: Vec<CoeffEntry>,
    total: Option<Entry>,
    may_under_report: bool,
}

fn coeffs(input: &Input) -> Result<Rendered, CliError> {
    let m = &input.model;
    let g = m.graph();
    let cf = coefficients_linear(m)?;
    let tcf = total_coefficient(m)?;
    let report = CoeffsReport {
        r: m.uniform_r().map(q),
        coefficients: cf
            .iter()
            .map(|(v, c)| CoeffEntry {
                id: g.id(v).to_string(),
                cf: q(c),
                ld: q(&(Rational::one() - c)),
            })
            .collect(),
        total: tcf.witness.map(|w| Entry::new(g, w, &tcf.value)),
        may_under_report: tcf.may_under_report,
    };
    let tuple: Vec<&str> = report.coefficients.iter().map(|e| e.cf.as_str()).collect();
    let mut out = format!("coefficients: ({})\n", tuple.join(", "));
    for e in &report.coefficients {
        let _ = writeln!(out, "  cf({}) = {}, ld = {}", e.id, e.cf, e.ld);
    }
    if let Some(t) = &report.total {
        let _ = writeln!(out, "total coefficient {} at {}", t.value, t.id);
    }
    Ok(Rendered::new(out, &report))
}

#[derive(Serialize)]
struct GermReport {
    vertices: Vec<String>,
    class: String,
    log_terminal: bool,
    log_canonical: bool,
    du_val: Option<String>,
    half_case: Option<String>,
    coefficients: Vec<Entry>,
}

#[derive(Serialize)]
struct ClassifyReport {
    germs: Vec<GermReport>,
    eps: EpsReport,
}

fn classify(input: &Input) -> Result<Rendered, CliError> {
    let m = &input.model;
    let g = m.graph();
    let mut germs = Vec::new();
    for comp in g.components(m.contracted()) {
        let (germ, order) = germ_of(m, &comp)?;
        let has_boundary = germ
            .graph()
            .vertices()
            .iter()
            .any(|v| !v.decoration.is_zero());
        let (class, lt, lc) = match classify_germ(&germ, has_boundary) {
            Ok(c) => (
                c.tag().to_string(),
                c.is_log_terminal(),
                c.is_log_canonical(),
            ),
            Err(ClassifyError::NotMinimal(v)) => (format!("not minimal ({v})"), false, false),
            Err(e) => return Err(e.into()),
        };
        let half_case = classify_half(&germ, has_boundary, false)
            .ok()
            .map(|h| h.case.tag().to_string());
        let cf = germ.coefficients();
        germs.push(GermReport {
            vertices: ids(g, &comp),
            class,
            log_terminal: lt,
            log_canonical: lc,
            du_val: duval_type(germ.graph()).map(|t| t.to_string()),
            half_case,
            coefficients: cf.iter().map(|(k, c)| Entry::new(g, order[k], c)).collect(),
        });
    }
    let report = ClassifyReport {
        germs,
        eps: EpsReport::new(g, &eps_check(m, &input.eps)?),
    };
    let mut out = String::new();
    section(
        &mut out,
        "germs of the contracted set (boundary read as reduced)",
        report.germs.iter().map(|gr| {
            let mut s = format!("{}: {}", set_line(&gr.vertices), gr.class);
            if let Some(t) = &gr.du_val {
                let _ = write!(s, ", du Val {t}");
            }
            if let Some(h) = &gr.half_case {
                let _ = write!(s, ", coefficients at most 1/2 for D/2 (case {h})");
            }
            s
        }),
    );
    let _ = writeln!(out, "{}", report.eps.line(&input.eps_label()));
    Ok(Rendered::new(out, &report))
}

#[derive(Serialize)]
struct DecompositionReport {
    gamma: Vec<String>,
    lambda: Vec<String>,
    delta: Vec<String>,
    other: Vec<String>,
}

#[derive(Serialize)]
struct PeelReport {
    run: RunReport,
    exceptional: Vec<String>,
    decomposition: Option<DecompositionReport>,
    reduced_shapes: Option<Vec<String>>,
    peeled: EpsReport,
}

fn peel_cmd(input: &Input) -> Result<Rendered, CliError> {
    let m = &input.model;
    let g = m.graph();
    let p = peel(m, input.kind)?;
    let report = PeelReport {
        run: RunReport::new(&p.run),
        exceptional: ids(g, &p.exceptional),
        decomposition: p.decomposition.as_ref().map(|d| DecompositionReport {
            gamma: ids(g, &d.gamma),
            lambda: ids(g, &d.lambda),
            delta: ids(g, &d.delta),
            other: ids(g, &d.other),
        }),
        reduced_shapes: p.reduced_shapes.as_ref().map(|s| ids(g, s)),
        peeled: EpsReport::new(g, &eps_check(p.peeled(), &input.eps)?),
    };
    let mut out = format!("peeling of the {} kind\n", input.kind);
    report.run.text(&mut out, "  ");
    if let Some(d) = &report.decomposition {
        let _ = writeln!(
            out,
            "gamma: {}, lambda: {}, delta: {}, other: {}",
            set_line(&d.gamma),
            set_line(&d.lambda),
            set_line(&d.delta),
            set_line(&d.other)
        );
    }
    if let Some(s) = &report.reduced_shapes {
        let _ = writeln!(
            out,
            "admissible shapes of the reduced boundary: {}",
            set_line(s)
        );
    }
    let _ = writeln!(
        out,
        "peeled model: {}",
        report.peeled.line(&input.eps_label())
    );
    Ok(Rendered::new(out, &report))
}

#[derive(Serialize)]
struct SqueezeReport {
    peeling: Vec<String>,
    squeeze: RunReport,
}

fn squeeze(input: &Input) -> Result<Rendered, CliError> {
    let m = &input.model;
    let g = m.graph();
    let p = peel(m, input.kind)?;
    let s = relative_k_mmp(m, &p.exceptional)?;
    let report = SqueezeReport {
        peeling: ids(g, &p.exceptional),
        squeeze: RunReport::new(&s),
    };
    let mut out = format!(
        "K-MMP over the contraction of {}\n",
        set_line(&report.peeling)
    );
    report.squeeze.text(&mut out, "  ");
    Ok(Rendered::new(out, &report))
}

#[derive(Serialize)]
struct RedundantListReport {
    peeling: Vec<String>,
    redundant: Vec<RedundantReport>,
}

fn redundant_cmd(input: &Input) -> Result<Rendered, CliError> {
    let m = &input.model;
    let g = m.graph();
    let p = peel(m, input.kind)?;
    let report = RedundantListReport {
        peeling: ids(g, &p.exceptional),
        redundant: redundant(m, &p)?
            .iter()
            .map(|c| RedundantReport::new(g, c))
            .collect(),
    };
    let mut out = format!("peeling: {}\n", set_line(&report.peeling));
    section(
        &mut out,
        "redundant curves",
        report.redundant.iter().map(|c| {
            format!(
                "{}: image {}; cases {}",
                c.id,
                c.image.line(),
                set_line(&c.cases)
            )
        }),
    );
    Ok(Rendered::new(out, &report))
}

#[derive(Serialize)]
struct AleListReport {
    peeling: Vec<String>,
    almost_log_exceptional: Vec<AleReport>,
}

fn ale(input: &Input) -> Result<Rendered, CliError> {
    let m = &input.model;
    let g = m.graph();
    let p = peel(m, input.kind)?;
    let report = AleListReport {
        peeling: ids(g, &p.exceptional),
        almost_log_exceptional: almost_log_exceptional(m, &p)?
            .iter()
            .map(|c| AleReport::new(g, c))
            .collect(),
    };
    let mut out = format!("peeling: {}\n", set_line(&report.peeling));
    section(
        &mut out,
        "almost log exceptional curves",
        report.almost_log_exceptional.iter().map(|c| {
            let mut s = format!("{} ({} kind): image {}", c.id, c.kind, c.image.line());
            if let Some(v) = &c.contact_value {
                let _ = write!(s, "; contact value {v}");
            }
            let _ = write!(s, "; cases {}", set_line(&c.cases));
            s
        }),
    );
    Ok(Rendered::new(out, &report))
}

#[derive(Serialize)]
struct MmpReport {
    run: RunReport,
    result: EpsReport,
}

fn mmp(input: &Input) -> Result<Rendered, CliError> {
    let m = &input.model;
    let g = m.graph();
    let run = run_mmp(m, input.kind, input.strategy)?;
    let report = MmpReport {
        run: RunReport::new(&run),
        result: EpsReport::new(g, &eps_check(run.final_model(), &input.eps)?),
    };
    let mut out = format!("MMP run of the {} kind\n", input.kind);
    report.run.text(&mut out, "  ");
    let _ = writeln!(out, "result: {}", report.result.line(&input.eps_label()));
    Ok(Rendered::new(out, &report))
}

#[derive(Serialize)]
struct StageReport {
    peeling: Vec<String>,
    curve: String,
    redundant: bool,
    squeeze: RunReport,
    residual: Vec<String>,
    residual_is_run: bool,
}

#[derive(Serialize)]
struct RungReport {
    curve: String,
    contracted: Vec<String>,
    eps: EpsReport,
}

#[derive(Serialize)]
struct AmmReport {
    kind: String,
    start: EpsReport,
    stages: Vec<StageReport>,
    ladder: Vec<RungReport>,
    almost_minimalization: Vec<String>,
    almost_minimal: EpsReport,
    min: Vec<String>,
    minimal: EpsReport,
    run: Option<Vec<String>>,
}

fn amm(input: &Input) -> Result<Rendered, CliError> {
    let m = &input.model;
    let g = m.graph();
    let mut am = almost_minimalize(m, input.kind)?;
    if am.eps != input.eps {
        am.start_eps = eps_check(m, &input.eps)?;
        am.almost_minimal_eps = eps_check(&am.almost_minimal, &input.eps)?;
        am.minimal_eps = eps_check(am.minimal(), &input.eps)?;
        for rung in &mut am.ladder {
            rung.eps = eps_check(&rung.model, &input.eps)?;
        }
    }
    let report = AmmReport {
        kind: am.kind.to_string(),
        start: EpsReport::new(g, &am.start_eps),
        stages: am
            .stages
            .iter()
            .map(|s| StageReport {
                peeling: ids(g, &s.peeling),
                curve: g.id(s.curve).to_string(),
                redundant: s.redundant,
                squeeze: RunReport::new(&s.squeeze),
                residual: ids(g, &s.residual),
                residual_is_run: s.residual_check.holds,
            })
            .collect(),
        ladder: am
            .ladder
            .iter()
            .map(|r| RungReport {
                curve: g.id(r.curve).to_string(),
                contracted: ids(g, r.model.contracted()),
                eps: EpsReport::new(g, &r.eps),
            })
            .collect(),
        almost_minimalization: ids(g, &am.am),
        almost_minimal: EpsReport::new(g, &am.almost_minimal_eps),
        min: ids(g, &am.min.exceptional),
        minimal: EpsReport::new(g, &am.minimal_eps),
        run: am.run.as_ref().map(|r| ids_of(g, &r.order())),
    };
    let label = input.eps_label();
    let mut out = format!("almost minimalization of the {} kind\n", report.kind);
    let _ = writeln!(out, "start: {}", report.start.line(&label));
    for (k, s) in report.stages.iter().enumerate() {
        let _ = writeln!(
            out,
            "stage {}: peeling {}, {} curve {}",
            k + 1,
            set_line(&s.peeling),
            if s.redundant {
                "redundant"
            } else {
                "almost log exceptional"
            },
            s.curve
        );
        s.squeeze.text(&mut out, "    ");
        let _ = writeln!(
            out,
            "    residual {} {}",
            set_line(&s.residual),
            if s.residual_is_run {
                "is a partial run"
            } else {
                "is not a partial run"
            }
        );
    }
    for r in &report.ladder {
        let _ = writeln!(out, "after {}: {}", r.curve, r.eps.line(&label));
    }
    let _ = writeln!(
        out,
        "almost minimalization contracts {}",
        set_line(&report.almost_minimalization)
    );
    let _ = writeln!(
        out,
        "almost minimal model: {}",
        report.almost_minimal.line(&label)
    );
    let _ = writeln!(
        out,
        "peeling onto the minimal model contracts {}",
        set_line(&report.min)
    );
    let _ = writeln!(out, "minimal model: {}", report.minimal.line(&label));
    match &report.run {
        Some(order) => {
            let _ = writeln!(out, "as a run: {}", order.join(", "));
        }
        None => out.push_str("as a run: none found\n"),
    }
    Ok(Rendered::new(out, &report))
}

#[derive(Serialize)]
struct FinalReport {
    contracted: Vec<String>,
    order: Vec<String>,
}

#[derive(Serialize)]
struct EnumerationReport {
    kind: String,
    states: usize,
    runs: Vec<FinalReport>,
}

fn enumerate(input: &Input, within: Option<&str>) -> Result<Rendered, CliError> {
    let m = &input.model;
    let g = m.graph();
    let within = within.map(|w| vertex_set(m, w)).transpose()?;
    let e = enumerate_runs(m, input.kind, within.as_ref())?;
    let report = EnumerationReport {
        kind: input.kind.to_string(),
        states: e.states,
        runs: e
            .finals
            .iter()
            .map(|(s, o)| FinalReport {
                contracted: ids(g, s),
                order: ids_of(g, o),
            })
            .collect(),
    };
    let mut out = format!(
        "{} maximal runs of the {} kind ({} states)\n",
        report.runs.len(),
        report.kind,
        report.states
    );
    for r in &report.runs {
        let _ = writeln!(
            out,
            "  {} via {}",
            set_line(&r.contracted),
            r.order.join(", ")
        );
    }
    Ok(Rendered::new(out, &report))
}
