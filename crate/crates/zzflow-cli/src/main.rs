//! `zzflow`: enumeration, verification, and export for the triangulation
//! toolkit. Every command writes deterministic bytes for fixed arguments;
//! timings go to stderr so reports stay comparable across runs.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use zzflow_core::cliques::{enumerate_cliques, Clique};
use zzflow_core::dual::{build_dual, DualGraph, DualMethod};
use zzflow_core::flows::{enumerate_flows, flow_move, flow_offsets, IntegerFlow, MoveSign};
use zzflow_core::graph::ZigzagGraph;
use zzflow_core::groves::{enumerate_groves, track_top_r1, Grove, TrackOutcome};
use zzflow_core::hstar::{hstar, HStarMethod};
use zzflow_core::hstar::table1::{statistics_table, table_csv};
use zzflow_core::verify::run_verification;
use zzflow_core::{Error, Result};

/// Bump when any cached serialization changes shape.
const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "zzflow", version, about = "zigzag flow polytope toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List routes, cliques, groves, or flows in canonical order.
    Enumerate(EnumerateArgs),
    /// Build the dual graph of the triangulation.
    Dual(DualArgs),
    /// Build the dual graph and its grid embedding.
    Embed(DualArgs),
    /// Compute the h* polynomial by the chosen method.
    Hstar(HstarArgs),
    /// Run the named checks and print a report.
    Verify(VerifyArgs),
    /// Reproduce the n=5 statistics table.
    Table1(TableArgs),
    /// Offset sequence of a flow at index i.
    Offsets(FlowArgs),
    /// Apply the elementary move m_i^± to a flow.
    Move(MoveArgs),
    /// Track the top slack tree edge of a grove at index i.
    Track(TrackArgs),
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum)]
    object: Object,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Directory holding one zz_{n}_{object}.json file per enumeration.
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Worker cap; enumerations at supported sizes use one partition.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DualArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = DualMethodArg::Flows)]
    method: DualMethodArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct HstarArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum)]
    method: HstarMethodArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    n: usize,
    /// Comma-separated check names or name prefixes, or "all".
    #[arg(long, default_value = "all")]
    checks: String,
    #[arg(long)]
    jobs: Option<usize>,
    /// Exit 0 even when conjecture checks diverge.
    #[arg(long)]
    findings_ok: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, default_value_t = 5)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FlowArgs {
    #[arg(long)]
    n: Option<usize>,
    /// JSON object with "x" and "y" arrays; "n" may come from --n.
    #[arg(long)]
    flow: String,
    #[arg(long)]
    i: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MoveArgs {
    #[command(flatten)]
    flow: FlowArgs,
    #[arg(long, value_enum)]
    sign: SignArg,
}

#[derive(Args)]
struct TrackArgs {
    #[arg(long)]
    n: Option<usize>,
    /// JSON object with a "trees" array of [p,d1,d2]; "n" may come from --n.
    #[arg(long)]
    grove: String,
    #[arg(long)]
    i: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Object {
    Routes,
    Cliques,
    Groves,
    Flows,
}

impl Object {
    fn name(self) -> &'static str {
        match self {
            Object::Routes => "routes",
            Object::Cliques => "cliques",
            Object::Groves => "groves",
            Object::Flows => "flows",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum DualMethodArg {
    Flows,
    Cliques,
}

#[derive(Clone, Copy, ValueEnum)]
enum HstarMethodArg {
    Ehrhart,
    Swap,
    Des,
    Sz,
    Zs,
    ShellingForward,
    ShellingReverse,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Inconsistency(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cmd: Cmd) -> Result<u8> {
    match cmd {
        Cmd::Enumerate(a) => cmd_enumerate(a),
        Cmd::Dual(a) => cmd_dual(a, false),
        Cmd::Embed(a) => cmd_dual(a, true),
        Cmd::Hstar(a) => cmd_hstar(a),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Table1(a) => cmd_table(a),
        Cmd::Offsets(a) => cmd_offsets(a),
        Cmd::Move(a) => cmd_move(a),
        Cmd::Track(a) => cmd_track(a),
    }
}

/// Writes the payload plus exactly one trailing newline. A reader that
/// hangs up early (broken pipe) is not an error.
fn emit(payload: &str, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, format!("{payload}\n"))
            .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display()))),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            let done = stdout
                .write_all(payload.as_bytes())
                .and_then(|_| stdout.write_all(b"\n"));
            match done {
                Ok(()) => Ok(()),
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                Err(e) => Err(Error::InvalidArgument(format!("cannot write to stdout: {e}"))),
            }
        }
    }
}

fn bad_format(cmd: &str, allowed: &str) -> Error {
    Error::InvalidArgument(format!("{cmd} supports formats {allowed}"))
}

fn to_values<T: Serialize>(items: &[T]) -> Result<Vec<Value>> {
    items
        .iter()
        .map(|t| serde_json::to_value(t).map_err(|e| Error::Parse(e.to_string())))
        .collect()
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    schema_version: u32,
    n: usize,
    object: String,
    items: Vec<Value>,
}

fn compute_items(n: usize, object: Object) -> Result<Vec<Value>> {
    match object {
        Object::Routes => to_values(&ZigzagGraph::new(n)?.enumerate_routes()),
        Object::Cliques => to_values(&enumerate_cliques(n)?),
        Object::Groves => to_values(&enumerate_groves(n)?),
        Object::Flows => to_values(&enumerate_flows(n)?),
    }
}

/// Returns cached items when the file exists with the current schema;
/// anything stale, foreign, or unreadable is recomputed and rewritten.
fn load_or_compute(dir: &Path, n: usize, object: Object) -> Result<Vec<Value>> {
    let path = dir.join(format!("zz_{n}_{}.json", object.name()));
    if let Ok(bytes) = fs::read(&path) {
        if let Ok(cache) = serde_json::from_slice::<CacheFile>(&bytes) {
            if cache.schema_version == SCHEMA_VERSION && cache.n == n && cache.object == object.name()
            {
                return Ok(cache.items);
            }
        }
    }
    let items = compute_items(n, object)?;
    fs::create_dir_all(dir)
        .map_err(|e| Error::InvalidArgument(format!("cannot create {}: {e}", dir.display())))?;
    let file = CacheFile {
        schema_version: SCHEMA_VERSION,
        n,
        object: object.name().to_string(),
        items: items.clone(),
    };
    let body = serde_json::to_string(&file).map_err(|e| Error::Parse(e.to_string()))?;
    fs::write(&path, body)
        .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))?;
    Ok(items)
}

fn csv_quote(field: &str) -> String {
    if field.contains(',') || field.contains('"') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn join_u32(v: &[u32]) -> String {
    v.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(",")
}

fn enumerate_text(object: Object, items: &[Value]) -> Result<String> {
    let mut lines = Vec::with_capacity(items.len());
    for item in items {
        let line = match object {
            Object::Routes => item
                .as_str()
                .ok_or_else(|| Error::Parse("route cache entry is not a string".into()))?
                .to_string(),
            Object::Cliques => from_value::<Clique>(item)?.to_string(),
            Object::Groves => from_value::<Grove>(item)?.to_string(),
            Object::Flows => from_value::<IntegerFlow>(item)?.to_string(),
        };
        lines.push(line);
    }
    Ok(lines.join("\n"))
}

fn enumerate_csv(object: Object, items: &[Value]) -> Result<String> {
    let mut rows = Vec::with_capacity(items.len() + 1);
    match object {
        Object::Routes => {
            rows.push("route".to_string());
            for item in items {
                let s = item
                    .as_str()
                    .ok_or_else(|| Error::Parse("route cache entry is not a string".into()))?;
                rows.push(csv_quote(s));
            }
        }
        Object::Cliques => {
            rows.push("routes".to_string());
            for item in items {
                let c = from_value::<Clique>(item)?;
                let joined = c
                    .routes()
                    .iter()
                    .map(|r| r.to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                rows.push(csv_quote(&joined));
            }
        }
        Object::Groves => {
            rows.push("trees".to_string());
            for item in items {
                rows.push(csv_quote(&from_value::<Grove>(item)?.to_string()));
            }
        }
        Object::Flows => {
            rows.push("x,y".to_string());
            for item in items {
                let f = from_value::<IntegerFlow>(item)?;
                rows.push(format!(
                    "{},{}",
                    csv_quote(&join_u32(f.xs())),
                    csv_quote(&join_u32(f.ys()))
                ));
            }
        }
    }
    Ok(rows.join("\n"))
}

fn from_value<T: serde::de::DeserializeOwned>(v: &Value) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("bad cache entry: {e}")))
}

fn cmd_enumerate(a: EnumerateArgs) -> Result<u8> {
    let items = match &a.cache {
        Some(dir) => load_or_compute(dir, a.n, a.object)?,
        None => compute_items(a.n, a.object)?,
    };
    let payload = match a.format {
        Format::Json => serde_json::to_string(&items).map_err(|e| Error::Parse(e.to_string()))?,
        Format::Text => enumerate_text(a.object, &items)?,
        Format::Csv => enumerate_csv(a.object, &items)?,
        Format::Dot => return Err(bad_format("enumerate", "text, json, csv")),
    };
    emit(&payload, &a.out)?;
    Ok(0)
}

fn dual_text(dual: &DualGraph) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "n={} nodes={} edges={}", dual.n(), dual.nodes().len(), dual.edges().len());
    for (k, f) in dual.nodes().iter().enumerate() {
        let _ = write!(s, "node {k}: {f}");
        if let Some(coords) = dual.coords() {
            let joined = coords[k]
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",");
            let _ = write!(s, " @({joined})");
        }
        s.push('\n');
    }
    for e in dual.edges() {
        let _ = writeln!(s, "edge {} -> {} move={}", e.from, e.to, e.move_index);
    }
    s.pop();
    s
}

fn cmd_dual(a: DualArgs, embed: bool) -> Result<u8> {
    let method = match a.method {
        DualMethodArg::Flows => DualMethod::Flows,
        DualMethodArg::Cliques => DualMethod::Cliques,
    };
    let mut dual = build_dual(a.n, method)?;
    if embed {
        dual = dual.embed()?;
    }
    let payload = match a.format {
        Format::Text => dual_text(&dual),
        Format::Json => serde_json::to_string(&dual).map_err(|e| Error::Parse(e.to_string()))?,
        Format::Dot => {
            let mut dot = dual.to_dot();
            dot.truncate(dot.trim_end().len());
            dot
        }
        Format::Csv => return Err(bad_format("dual/embed", "text, json, dot")),
    };
    emit(&payload, &a.out)?;
    Ok(0)
}

fn cmd_hstar(a: HstarArgs) -> Result<u8> {
    let method = match a.method {
        HstarMethodArg::Ehrhart => HStarMethod::Ehrhart,
        HstarMethodArg::Swap => HStarMethod::Swap,
        HstarMethodArg::Des => HStarMethod::Des,
        HstarMethodArg::Sz => HStarMethod::Sz,
        HstarMethodArg::Zs => HStarMethod::Zs,
        HstarMethodArg::ShellingForward => HStarMethod::ShellingForward,
        HstarMethodArg::ShellingReverse => HStarMethod::ShellingReverse,
    };
    let poly = hstar(a.n, method)?;
    let payload = match a.format {
        Format::Text => poly.to_string(),
        Format::Json => serde_json::to_string(&poly).map_err(|e| Error::Parse(e.to_string()))?,
        _ => return Err(bad_format("hstar", "text, json")),
    };
    emit(&payload, &a.out)?;
    Ok(0)
}

fn cmd_verify(a: VerifyArgs) -> Result<u8> {
    let start = Instant::now();
    let report = run_verification(a.n, Some(&a.checks), a.jobs)?;
    let payload = match a.format {
        Format::Text => {
            let mut text = report.render_text();
            text.pop();
            text
        }
        Format::Json => serde_json::to_string(&report).map_err(|e| Error::Parse(e.to_string()))?,
        _ => return Err(bad_format("verify", "text, json")),
    };
    emit(&payload, &a.out)?;
    let (pass, fail, finding) = report.counts();
    eprintln!(
        "verify n={} finished in {:.2?}: {pass} pass, {fail} fail, {finding} finding",
        a.n,
        start.elapsed()
    );
    Ok(report.exit_code(a.findings_ok) as u8)
}

fn cmd_table(a: TableArgs) -> Result<u8> {
    let records = statistics_table(a.n)?;
    let payload = match a.format {
        Format::Csv => {
            let mut csv = table_csv(&records);
            csv.truncate(csv.trim_end().len());
            csv
        }
        Format::Json => {
            serde_json::to_string(&to_values(&records)?).map_err(|e| Error::Parse(e.to_string()))?
        }
        Format::Text => {
            let mut rows = vec!["alt_perm\tinverse\tx\ty\tcyclic_perm\tswap\tsz\tzs\tdes".to_string()];
            for r in &records {
                rows.push(format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    r.alt_perm,
                    r.inverse,
                    join_u32(&r.x),
                    join_u32(&r.y),
                    r.cyclic_perm,
                    r.swap,
                    r.sz,
                    r.zs,
                    r.des
                ));
            }
            rows.join("\n")
        }
        Format::Dot => return Err(bad_format("table1", "csv, json, text")),
    };
    emit(&payload, &a.out)?;
    Ok(0)
}

/// Folds a --n flag into a JSON object that may or may not carry "n".
fn with_n(raw: &str, flag: Option<usize>, what: &str) -> Result<Value> {
    let mut value: Value =
        serde_json::from_str(raw).map_err(|e| Error::Parse(format!("bad {what} JSON: {e}")))?;
    let obj = value
        .as_object_mut()
        .ok_or_else(|| Error::Parse(format!("{what} must be a JSON object")))?;
    match (obj.get("n").and_then(Value::as_u64), flag) {
        (Some(inline), Some(n)) if inline as usize != n => {
            return Err(Error::InvalidArgument(format!(
                "--n {n} contradicts \"n\": {inline} in the {what}"
            )));
        }
        (None, Some(n)) => {
            obj.insert("n".to_string(), Value::from(n as u64));
        }
        (None, None) => {
            return Err(Error::InvalidArgument(format!(
                "pass --n or include \"n\" in the {what}"
            )));
        }
        _ => {}
    }
    Ok(value)
}

fn parse_flow(a: &FlowArgs) -> Result<IntegerFlow> {
    let value = with_n(&a.flow, a.n, "flow")?;
    serde_json::from_value(value).map_err(|e| Error::Parse(format!("bad flow: {e}")))
}

fn cmd_offsets(a: FlowArgs) -> Result<u8> {
    let flow = parse_flow(&a)?;
    let offsets = flow_offsets(&flow, a.i)?;
    let payload = match a.format {
        Format::Text => offsets.to_string(),
        Format::Json => serde_json::to_string(&offsets).map_err(|e| Error::Parse(e.to_string()))?,
        _ => return Err(bad_format("offsets", "text, json")),
    };
    emit(&payload, &a.out)?;
    Ok(0)
}

fn cmd_move(a: MoveArgs) -> Result<u8> {
    let flow = parse_flow(&a.flow)?;
    let sign = match a.sign {
        SignArg::Plus => MoveSign::Plus,
        SignArg::Minus => MoveSign::Minus,
    };
    let moved = flow_move(&flow, a.flow.i, sign)?;
    let payload = match a.flow.format {
        Format::Text => match &moved {
            Some(f) => f.to_string(),
            None => "not applicable".to_string(),
        },
        Format::Json => serde_json::to_string(&moved).map_err(|e| Error::Parse(e.to_string()))?,
        _ => return Err(bad_format("move", "text, json")),
    };
    emit(&payload, &a.flow.out)?;
    Ok(0)
}

fn cmd_track(a: TrackArgs) -> Result<u8> {
    let value = with_n(&a.grove, a.n, "grove")?;
    let grove: Grove =
        serde_json::from_value(value).map_err(|e| Error::Parse(format!("bad grove: {e}")))?;
    let outcome = track_top_r1(&grove, a.i)?;
    let payload = match a.format {
        Format::Text => match outcome {
            TrackOutcome::Success => "success".to_string(),
            TrackOutcome::Failure { tree } => format!("failure tree={tree}"),
        },
        Format::Json => match outcome {
            TrackOutcome::Success => r#"{"outcome":"success"}"#.to_string(),
            TrackOutcome::Failure { tree } => {
                format!(r#"{{"outcome":"failure","tree":{tree}}}"#)
            }
        },
        _ => return Err(bad_format("track", "text, json")),
    };
    emit(&payload, &a.out)?;
    Ok(0)
}
