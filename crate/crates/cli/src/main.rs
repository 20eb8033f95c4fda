//! `grassbs` command-line driver.
//!
//! Every subcommand reads JSON (a path, or `-` for stdin), writes JSON to
//! stdout or `-o PATH`, and exits with 0 on success, 1 on a negative
//! mathematical verdict and 2 on malformed input. Errors are reported as a
//! JSON object on stderr.

use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use grassbs::graph::{self, BettiGraph, GraphError, Membership};
use grassbs::herzog_kuhl::{self, pure, HkError};
use grassbs::homology_matcher::{self, DoubleComplex, MatcherError};
use grassbs::pairing::{self, BottBundle, PairingError};
use grassbs::rational;
use grassbs::tables::{self, AnyTable, BettiTable, CohomologyTable, RankBettiTable, TableDocument, TableError};
use grassbs::young::{self, IntSeq, Partition, YoungError};

const DEFAULT_MAX_ENUM: usize = 8;

#[derive(Parser, Debug)]
#[command(name = "grassbs", version, about = "Equivariant Betti tables on Grassmannians")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Write the result here instead of stdout.
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,
    /// Human-readable tables instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Herzog-Kühl residuals of a Betti table.
    HkCheck { input: String },
    /// Pair a Betti table with a cohomology table.
    Pair {
        beta: String,
        gamma: String,
        /// Also write every product β_{p,λ}·γ_{q,λ} to this file.
        #[arg(long)]
        grid: Option<PathBuf>,
    },
    /// Cohomology table of a homogeneous bundle via Borel-Weil-Bott.
    Bott {
        #[arg(short)]
        k: usize,
        #[arg(short)]
        n: usize,
        /// e.g. "O(1)+O(-1)" or "Q[2,1]*O(-1)".
        #[arg(long)]
        bundle: String,
        /// JSON array of labels.
        #[arg(long, conflicts_with = "lambda_max_size")]
        lambdas: Option<String>,
        /// All partitions with at most k parts and at most this many boxes.
        #[arg(long)]
        lambda_max_size: Option<usize>,
    },
    /// Derived-cone membership of a rank Betti table.
    Match {
        input: String,
        /// Include the violated inequality when there is no matching.
        #[arg(long)]
        certificate: bool,
        /// Include the pure-table decomposition when there is one.
        #[arg(long)]
        decompose: bool,
    },
    /// Decompose a rank Betti table into two-entry pure tables.
    Decompose { input: String },
    /// Enumerate pure tables with small labels.
    EnumPure {
        #[arg(short)]
        k: usize,
        #[arg(short)]
        n: usize,
        #[arg(long)]
        max_size: usize,
    },
    /// Border-strip hypothesis and the ν₂ ≤ λ₁ + 1 bound for a chain λ ⊂ μ ⊂ ν,
    /// or for every simple three-column pure table when no chain is given.
    ClassifyStrips {
        /// Three partitions such as "1" "2,1" "3,1".
        #[arg(num_args = 3)]
        chain: Vec<String>,
        #[arg(short, default_value_t = 2)]
        k: usize,
        #[arg(short, default_value_t = 3)]
        n: usize,
        #[arg(long)]
        max_size: Option<usize>,
    },
    /// Matching on the E₁ page of a labeled double complex.
    E1Match { input: String },
    /// The Betti graph of a table in DOT format.
    ExportDot { input: String },
    /// Report every invariant violation in a table or double complex.
    Validate { input: String },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Hk(#[from] HkError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Pairing(#[from] PairingError),
    #[error(transparent)]
    Matcher(#[from] MatcherError),
    #[error(transparent)]
    Young(#[from] YoungError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Read { .. } | CliError::Write { .. } => "io",
            CliError::Json(_) => "json",
            CliError::Table(_) => "table",
            CliError::Hk(_) => "herzog_kuhl",
            CliError::Graph(_) => "graph",
            CliError::Pairing(_) => "pairing",
            CliError::Matcher(_) => "matcher",
            CliError::Young(_) => "partition",
            CliError::Usage(_) => "usage",
        }
    }

    fn to_json(&self) -> Value {
        let mut v = json!({"error": self.kind(), "message": self.to_string()});
        let diags = match self {
            CliError::Table(TableError::Invalid(d)) => Some(d),
            CliError::Matcher(MatcherError::Invalid(d)) => Some(d),
            _ => None,
        };
        if let Some(d) = diags {
            v["diagnostics"] = diagnostics_json(d);
        }
        v
    }
}

/// What a subcommand produced: the rendered output and the exit code.
struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn json(v: &Value, positive: bool) -> Self {
        Self::text(render_json(v), positive)
    }

    fn text(text: String, positive: bool) -> Self {
        Outcome {
            text,
            code: if positive { 0 } else { 1 },
        }
    }

    /// Output that still describes malformed input.
    fn invalid(mut self) -> Self {
        self.code = 2;
        self
    }
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn read_input(path: &str) -> Result<String, CliError> {
    let mut s = String::new();
    let res = if path == "-" {
        io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| s = t)
    };
    res.map_err(|source| CliError::Read {
        path: path.to_string(),
        source,
    })?;
    Ok(s)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Write {
        path: path.display().to_string(),
        source,
    })
}

fn read_table(path: &str) -> Result<AnyTable, CliError> {
    Ok(AnyTable::from_json(&read_input(path)?)?)
}

fn read_betti(path: &str) -> Result<BettiTable, CliError> {
    match read_table(path)? {
        AnyTable::Betti(b) => Ok(b),
        other => Err(CliError::Usage(format!("{path}: expected a betti table, found {}", kind_of(&other)))),
    }
}

/// Betti tables are converted to rank tables; cohomology tables are refused.
fn read_rank(path: &str) -> Result<RankBettiTable, CliError> {
    match read_table(path)? {
        AnyTable::Betti(b) => Ok(tables::to_rank(&b)),
        AnyTable::RankBetti(r) => Ok(r),
        other => Err(CliError::Usage(format!("{path}: expected a rank_betti table, found {}", kind_of(&other)))),
    }
}

fn kind_of(t: &AnyTable) -> &'static str {
    match t {
        AnyTable::Betti(_) => "betti",
        AnyTable::RankBetti(_) => "rank_betti",
        AnyTable::Cohomology(_) => "cohomology",
    }
}

/// Re-parses a table's JSON so keys come out sorted.
fn table_value(json: &str) -> Value {
    serde_json::from_str(json).expect("tables serialize to valid JSON")
}

fn diagnostics_json(d: &[tables::Diagnostic]) -> Value {
    Value::Array(
        d.iter()
            .map(|d| json!({"location": d.location, "message": d.message}))
            .collect(),
    )
}

fn label_text(l: &IntSeq) -> String {
    match l.to_partition() {
        Some(p) => p.to_string(),
        None => l.to_string(),
    }
}

/// Accepts "2,1", "[2,1]", "(2,1)", "2 1", "∅" or "" for the empty partition.
fn parse_partition(s: &str) -> Result<Partition, CliError> {
    let inner = s.trim().trim_start_matches(['[', '(']).trim_end_matches([']', ')']);
    if inner.is_empty() || inner == "∅" {
        return Ok(Partition::empty());
    }
    let parts = inner
        .split([',', ' '])
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::Usage(format!("not a partition: {s:?}")))?;
    Ok(Partition::new(parts)?)
}

fn hk_check(input: &str, pretty: bool) -> Result<Outcome, CliError> {
    let beta = read_betti(input)?;
    let system = herzog_kuhl::hk_system(beta.k(), beta.n())?;
    let residuals = system.residuals(&beta)?;
    let positive = residuals.iter().all(|r| r == &rational::int(0));
    if pretty {
        let mut s = String::new();
        for (mu, r) in system.rows().iter().zip(&residuals) {
            s.push_str(&format!("{mu}\t{}\n", rational::render(r)));
        }
        return Ok(Outcome::text(s, positive));
    }
    let v = Value::Array(residuals.iter().map(|r| Value::String(rational::render(r))).collect());
    Ok(Outcome::json(&v, positive))
}

fn pair(beta: &str, gamma: &str, grid: Option<&Path>, pretty: bool) -> Result<Outcome, CliError> {
    if beta == "-" && gamma == "-" {
        return Err(CliError::Usage("only one input can come from stdin".into()));
    }
    let b = read_betti(beta)?;
    let g = match read_table(gamma)? {
        AnyTable::Cohomology(g) => g,
        other => return Err(CliError::Usage(format!("{gamma}: expected a cohomology table, found {}", kind_of(&other)))),
    };
    let (paired, cells) = pairing::pair(&b, &g)?;
    if let Some(path) = grid {
        write_file(path, &render_json(&cells.to_json()))?;
    }
    if pretty {
        return Ok(Outcome::text(paired.pretty(), true));
    }
    Ok(Outcome::json(&table_value(&paired.to_json()), true))
}

fn bott(
    k: usize,
    n: usize,
    bundle: &str,
    lambdas: Option<&str>,
    max_size: Option<usize>,
    pretty: bool,
) -> Result<Outcome, CliError> {
    if k == 0 || n < k {
        return Err(CliError::Usage(format!("need 1 ≤ k ≤ n, got k = {k}, n = {n}")));
    }
    let e = BottBundle::parse(bundle)?;
    let labels: Vec<IntSeq> = match lambdas {
        Some(path) => {
            let raw: Vec<Vec<i64>> = serde_json::from_str(&read_input(path)?)?;
            raw.iter()
                .map(|l| tables::label_from_slice(l, k))
                .collect::<Result<_, _>>()?
        }
        None => {
            let cap = max_size.unwrap_or(k * (n - k));
            young::partitions_up_to(cap, k)
                .into_iter()
                .map(|p| p.padded(k))
                .collect::<Result<_, _>>()?
        }
    };
    let gamma: CohomologyTable = pairing::bott_cohomology(k, n, &e, &labels)?;
    if pretty {
        return Ok(Outcome::text(gamma.pretty(), true));
    }
    Ok(Outcome::json(&table_value(&gamma.to_json()), true))
}

fn membership(input: &str, certificate: bool, decompose: bool, pretty: bool) -> Result<Outcome, CliError> {
    let table = read_rank(input)?;
    let report = graph::derived_cone_membership(&table)?;
    let positive = report.is_member();
    if pretty {
        let mut s = format!("member: {}\n", if positive { "yes" } else { "no" });
        if report.scale != 1.into() {
            s.push_str(&format!("scaled by {}\n", report.scale));
        }
        match &report.membership {
            Membership::Member(d) if decompose => {
                let terms: Vec<String> = d.iter().map(ToString::to_string).collect();
                s.push_str(&format!("{}\n", terms.join(" + ")));
            }
            Membership::NotMember(c) if certificate => {
                s.push_str(&format!("side: {}\n", c.side.name()));
                for (name, sets) in [("S", &c.sets), ("Γ", &c.gammas)] {
                    for (i, ls) in sets {
                        let ls: Vec<String> = ls.iter().map(label_text).collect();
                        s.push_str(&format!("{name}_{i} = {{{}}}\n", ls.join(", ")));
                    }
                }
                s.push_str(&format!(
                    "Σ_Γ = {} < Σ_S = {}\n",
                    rational::render(&c.lhs),
                    rational::render(&c.rhs)
                ));
            }
            _ => {}
        }
        return Ok(Outcome::text(s, positive));
    }
    let mut v = report.to_json();
    let obj = v.as_object_mut().expect("reports are objects");
    if !decompose {
        obj.remove("decomposition");
    }
    if !certificate {
        obj.remove("certificate");
    }
    Ok(Outcome::json(&v, positive))
}

fn max_enum() -> Result<usize, CliError> {
    match std::env::var("GRASSBS_MAX_ENUM") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("GRASSBS_MAX_ENUM is not a size: {s:?}"))),
        Err(_) => Ok(DEFAULT_MAX_ENUM),
    }
}

fn checked_max_size(max_size: usize) -> Result<usize, CliError> {
    let cap = max_enum()?;
    if max_size > cap {
        return Err(CliError::Usage(format!(
            "--max-size {max_size} exceeds the enumeration cap {cap} (set GRASSBS_MAX_ENUM to raise it)"
        )));
    }
    Ok(max_size)
}

fn enum_pure(k: usize, n: usize, max_size: usize, pretty: bool) -> Result<Outcome, CliError> {
    let found = pure::enumerate_pure_tables(k, n, checked_max_size(max_size)?)?;
    if pretty {
        let blocks: Vec<String> = found.iter().map(|t| t.table.pretty()).collect();
        return Ok(Outcome::text(blocks.join("\n"), true));
    }
    let v = Value::Array(
        found
            .iter()
            .map(|t| {
                json!({
                    "simple": t.is_simple(),
                    "support": t.support.iter().map(|(i, l)| json!({"i": i, "lambda": l.parts()})).collect::<Vec<_>>(),
                    "table": table_value(&t.table.to_json()),
                })
            })
            .collect(),
    );
    Ok(Outcome::json(&v, true))
}

fn strip_record(chain: &[Partition; 3], class: pure::BorderStripClass) -> Value {
    json!({
        "lambda": chain[0].parts(),
        "mu": chain[1].parts(),
        "nu": chain[2].parts(),
        "simple_hypothesis": class.simple_hypothesis,
        "bound_ok": class.bound_ok,
    })
}

/// A chain satisfying the hypothesis but not the bound is a negative verdict.
fn classify_strips(
    chain: &[String],
    k: usize,
    n: usize,
    max_size: Option<usize>,
    pretty: bool,
) -> Result<Outcome, CliError> {
    let mut chains: Vec<[Partition; 3]> = Vec::new();
    if chain.is_empty() {
        let cap = checked_max_size(max_size.unwrap_or(DEFAULT_MAX_ENUM.min(max_enum()?)))?;
        for t in pure::enumerate_pure_tables(k, n, cap)? {
            if !t.is_simple() || t.support.len() != 3 {
                continue;
            }
            let parts: Vec<Partition> = t
                .support
                .iter()
                .map(|(_, l)| l.to_partition().expect("pure tables carry partitions"))
                .collect();
            chains.push([parts[0].clone(), parts[1].clone(), parts[2].clone()]);
        }
    } else {
        chains.push([parse_partition(&chain[0])?, parse_partition(&chain[1])?, parse_partition(&chain[2])?]);
    }
    let mut records = Vec::new();
    let mut positive = true;
    let mut s = String::new();
    for c in &chains {
        let class = pure::classify_border_strips(&c[0], &c[1], &c[2])?;
        positive &= !class.simple_hypothesis || class.bound_ok;
        s.push_str(&format!(
            "{} ⊂ {} ⊂ {}\tstrips: {}\tbound: {}\n",
            c[0], c[1], c[2], class.simple_hypothesis, class.bound_ok
        ));
        records.push(strip_record(c, class));
    }
    if pretty {
        return Ok(Outcome::text(s, positive));
    }
    let v = if chain.is_empty() {
        Value::Array(records)
    } else {
        records.pop().expect("one chain")
    };
    Ok(Outcome::json(&v, positive))
}

fn e1_match(input: &str, pretty: bool) -> Result<Outcome, CliError> {
    let dc = DoubleComplex::from_json(&read_input(input)?)?;
    let edges = match homology_matcher::e1_matching(&dc) {
        Ok(e) => e,
        Err(MatcherError::NotExact(d)) => {
            let v = json!({"exact": false, "diagnostics": diagnostics_json(&d)});
            return Ok(Outcome::json(&v, false));
        }
        Err(e) => return Err(e.into()),
    };
    if pretty {
        let mut s = String::new();
        for e in &edges {
            let name = |v: &homology_matcher::E1Vertex| format!("({}, {}, {})", v.p, v.q, dc.poset().name(v.label));
            s.push_str(&format!("{} → {}\tr = {}\n", name(&e.from), name(&e.to), e.r));
        }
        return Ok(Outcome::text(s, true));
    }
    let v = Value::Array(edges.iter().map(|e| e.to_json(&dc)).collect());
    Ok(Outcome::json(&v, true))
}

fn export_dot(input: &str) -> Result<Outcome, CliError> {
    let table = read_rank(input)?;
    let g = BettiGraph::build(&table)?;
    Ok(Outcome::text(g.to_dot(), true))
}

/// Documents with a `kind` field are tables; anything else is read as a
/// double complex.
fn validate(input: &str, pretty: bool) -> Result<Outcome, CliError> {
    let text = read_input(input)?;
    let raw: Value = serde_json::from_str(&text)?;
    let diags = if raw.get("kind").is_some() {
        let doc: TableDocument = serde_json::from_value(raw)?;
        let mut d = tables::validate_document(&doc);
        if d.is_empty() {
            d = match AnyTable::from_document(&doc)? {
                AnyTable::Betti(t) => t.validate(),
                AnyTable::RankBetti(t) => t.validate(),
                AnyTable::Cohomology(t) => t.validate(),
            };
        }
        d
    } else {
        match DoubleComplex::from_json(&text) {
            Ok(dc) => dc.validate(),
            Err(MatcherError::Invalid(d)) => d,
            Err(e) => return Err(e.into()),
        }
    };
    if pretty {
        let s = if diags.is_empty() {
            "ok\n".to_string()
        } else {
            diags.iter().map(|d| format!("{d}\n")).collect()
        };
        let out = Outcome::text(s, true);
        return Ok(if diags.is_empty() { out } else { out.invalid() });
    }
    let out = Outcome::json(&diagnostics_json(&diags), true);
    Ok(if diags.is_empty() { out } else { out.invalid() })
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let pretty = cli.output.pretty;
    match &cli.command {
        Command::HkCheck { input } => hk_check(input, pretty),
        Command::Pair { beta, gamma, grid } => pair(beta, gamma, grid.as_deref(), pretty),
        Command::Bott {
            k,
            n,
            bundle,
            lambdas,
            lambda_max_size,
        } => bott(*k, *n, bundle, lambdas.as_deref(), *lambda_max_size, pretty),
        Command::Match {
            input,
            certificate,
            decompose,
        } => membership(input, *certificate, *decompose, pretty),
        Command::Decompose { input } => membership(input, true, true, pretty),
        Command::EnumPure { k, n, max_size } => enum_pure(*k, *n, *max_size, pretty),
        Command::ClassifyStrips { chain, k, n, max_size } => classify_strips(chain, *k, *n, *max_size, pretty),
        Command::E1Match { input } => e1_match(input, pretty),
        Command::ExportDot { input } => export_dot(input),
        Command::Validate { input } => validate(input, pretty),
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => write_file(p, text),
        None => io::stdout().write_all(text.as_bytes()).map_err(|source| CliError::Write {
            path: "<stdout>".into(),
            source,
        }),
    }
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("{}", serde_json::to_string(&e.to_json()).expect("JSON values always serialize"));
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&CliError::Usage(e.to_string())),
    };
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => return fail(&e),
    };
    if let Err(e) = emit(cli.output.output.as_deref(), &outcome.text) {
        return fail(&e);
    }
    ExitCode::from(outcome.code)
}
