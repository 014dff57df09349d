//! The verification suite: theorems, worked examples, and conjectures as
//! named checks over one graph size.
//!
//! A `fail` means a proven statement did not hold, a `finding` means a
//! conjecture diverged; both are reportable outcomes, not crashes. Check
//! bodies share precomputed artifacts through [`Context`] and never touch
//! global state, so the suite can fan out across threads while the report
//! stays byte-identical run to run.

use std::collections::{HashMap, HashSet};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::cliques::{clique_to_flow, clique_to_grove, enumerate_cliques, Clique};
use crate::dual::{build_dual, potential_coords, DualGraph, DualMethod};
use crate::error::{Error, Result};
use crate::flows::{
    enumerate_flows, flow_count_transfer_matrix, flow_move, flow_offsets, IntegerFlow, MoveSign,
};
use crate::graph::{
    compare_prefixes, compare_suffixes, route_count_transfer_matrix, EdgeId, Route, ZigzagGraph,
};
use crate::groves::{
    enumerate_groves, flow_from_grove, grove_from_flow, grove_move, grove_offsets, track_top_r1,
    Grove, TrackOutcome,
};
use crate::hstar::ehrhart::{brute_dilate_count, hstar_ehrhart, lattice_count};
use crate::hstar::perms::{
    alt_perm_route_chain, alt_perm_to_clique, alternating_perms, des_stat, flow_to_cyclic,
    route_from_region_set, swap_stat, AlternatingPerm,
};
use crate::hstar::shelling::{shelling_report, ShellingOrder};
use crate::hstar::table1::statistics_table;
use crate::hstar::{distribution, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Finding,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: CheckStatus,
    /// Empty when the check passed.
    pub detail: String,
    pub conjecture: bool,
    /// Wall time; reported separately so the main report stays stable.
    #[serde(skip)]
    pub millis: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    /// (passed, failed, findings)
    pub fn counts(&self) -> (usize, usize, usize) {
        let mut c = (0, 0, 0);
        for r in &self.checks {
            match r.status {
                CheckStatus::Pass => c.0 += 1,
                CheckStatus::Fail => c.1 += 1,
                CheckStatus::Finding => c.2 += 1,
            }
        }
        c
    }

    pub fn exit_code(&self, findings_ok: bool) -> i32 {
        let (_, failed, findings) = self.counts();
        if failed > 0 || (findings > 0 && !findings_ok) {
            1
        } else {
            0
        }
    }

    /// Deterministic rendering; identical inputs give identical bytes.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("n={} checks={}\n", self.n, self.checks.len()));
        for r in &self.checks {
            let status = match r.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "fail",
                CheckStatus::Finding => "finding",
            };
            out.push_str(&format!("{status:<8} {}", r.name));
            if r.conjecture {
                out.push_str(" [conjecture]");
            }
            if !r.detail.is_empty() {
                out.push_str(&format!(": {}", r.detail));
            }
            out.push('\n');
        }
        let (p, f, d) = self.counts();
        out.push_str(&format!("summary pass={p} fail={f} finding={d}\n"));
        out
    }
}

type CResult = std::result::Result<(), String>;

fn lib<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(got: T, want: T, what: &str) -> CResult {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn expect(cond: bool, what: &str) -> CResult {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

/// Shared artifacts for one graph size. Derived structures that can
/// legitimately report inconsistencies are stored as results so one fault
/// surfaces in every check that depends on it.
pub struct Context {
    n: usize,
    routes: Vec<Route>,
    flows: Vec<IntegerFlow>,
    groves: Vec<Grove>,
    cliques: Result<Vec<Clique>>,
    dual: Result<DualGraph>,
    dual_via_cliques: Result<DualGraph>,
    embedded: Result<DualGraph>,
    hstar: Result<Polynomial>,
}

impl Context {
    pub fn build(n: usize) -> Result<Context> {
        let g = ZigzagGraph::new(n)?;
        let routes = g.enumerate_routes();
        let flows = enumerate_flows(n)?;
        let groves = enumerate_groves(n)?;
        let cliques = enumerate_cliques(n);
        let dual = build_dual(n, DualMethod::Flows);
        let dual_via_cliques = build_dual(n, DualMethod::Cliques);
        let embedded = dual.as_ref().map_err(clone_err).and_then(|d| d.embed());
        let hstar = hstar_ehrhart(n);
        Ok(Context {
            n,
            routes,
            flows,
            groves,
            cliques,
            dual,
            dual_via_cliques,
            embedded,
            hstar,
        })
    }

    fn cliques(&self) -> std::result::Result<&[Clique], String> {
        self.cliques
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(|e| e.to_string())
    }

    fn dual(&self) -> std::result::Result<&DualGraph, String> {
        self.dual.as_ref().map_err(|e| e.to_string())
    }

    fn dual_via_cliques(&self) -> std::result::Result<&DualGraph, String> {
        self.dual_via_cliques.as_ref().map_err(|e| e.to_string())
    }

    fn embedded(&self) -> std::result::Result<&DualGraph, String> {
        self.embedded.as_ref().map_err(|e| e.to_string())
    }

    fn hstar(&self) -> std::result::Result<&Polynomial, String> {
        self.hstar.as_ref().map_err(|e| e.to_string())
    }
}

fn clone_err(e: &Error) -> Error {
    Error::Inconsistency(e.to_string())
}

struct CheckDef {
    name: &'static str,
    conjecture: bool,
    run: fn(&Context) -> CResult,
}

const REGISTRY: &[CheckDef] = &[
    CheckDef { name: "graph/route-count", conjecture: false, run: check_route_count },
    CheckDef { name: "graph/route-canonical-order", conjecture: false, run: check_route_order },
    CheckDef { name: "graph/prefix-total-order", conjecture: false, run: check_prefix_order },
    CheckDef { name: "graph/suffix-total-order", conjecture: false, run: check_suffix_order },
    CheckDef { name: "cliques/cardinality", conjecture: false, run: check_clique_cardinality },
    CheckDef { name: "cliques/flow-bijection", conjecture: false, run: check_clique_flow_bijection },
    CheckDef { name: "cliques/grove-agreement", conjecture: false, run: check_clique_grove_agreement },
    CheckDef { name: "cliques/worked-example", conjecture: false, run: check_clique_worked_example },
    CheckDef { name: "groves/flow-bijection", conjecture: false, run: check_grove_flow_bijection },
    CheckDef { name: "groves/enumeration-image", conjecture: false, run: check_grove_enumeration },
    CheckDef { name: "groves/move-commutes", conjecture: false, run: check_grove_move_commutes },
    CheckDef { name: "groves/offsets-match-flow-offsets", conjecture: false, run: check_grove_offsets },
    CheckDef { name: "groves/tracking-matches-offsets", conjecture: false, run: check_tracking },
    CheckDef { name: "flows/enumeration-valid", conjecture: false, run: check_flow_enumeration },
    CheckDef { name: "flows/count-transfer-matrix", conjecture: false, run: check_flow_count },
    CheckDef { name: "flows/moves-invertible", conjecture: false, run: check_moves_invertible },
    CheckDef { name: "flows/offset-witnesses", conjecture: false, run: check_offset_witnesses },
    CheckDef { name: "flows/dilate-brute-equality", conjecture: false, run: check_dilate_brute },
    CheckDef { name: "dual/methods-agree", conjecture: false, run: check_dual_methods },
    CheckDef { name: "dual/embedding-potential", conjecture: false, run: check_embedding_potential },
    CheckDef { name: "dual/grid-unit-steps", conjecture: false, run: check_grid_unit_steps },
    CheckDef { name: "dual/grid-neighbors-are-moves", conjecture: false, run: check_grid_neighbors },
    CheckDef { name: "dual/worked-example", conjecture: false, run: check_dual_worked_example },
    CheckDef { name: "dual/running-example-degrees", conjecture: false, run: check_running_degrees },
    CheckDef { name: "perms/count-matches-flows", conjecture: false, run: check_perm_count },
    CheckDef { name: "perms/flow-bijection", conjecture: false, run: check_perm_flow_bijection },
    CheckDef { name: "perms/region-cut-examples", conjecture: false, run: check_region_cut_examples },
    CheckDef { name: "perms/route-chain-example", conjecture: false, run: check_route_chain_example },
    CheckDef { name: "hstar/ehrhart-nonnegative", conjecture: false, run: check_hstar_nonnegative },
    CheckDef { name: "hstar/sum-is-simplex-count", conjecture: false, run: check_hstar_sum },
    CheckDef { name: "hstar/frozen-small", conjecture: false, run: check_hstar_frozen },
    CheckDef { name: "hstar/swap-matches-ehrhart", conjecture: false, run: check_swap_hstar },
    CheckDef { name: "hstar/des-matches-ehrhart", conjecture: false, run: check_des_hstar },
    CheckDef { name: "hstar/sz-matches-ehrhart", conjecture: true, run: check_sz_hstar },
    CheckDef { name: "hstar/zs-matches-ehrhart", conjecture: true, run: check_zs_hstar },
    CheckDef { name: "hstar/shelling-forward", conjecture: true, run: check_shelling_forward },
    CheckDef { name: "hstar/shelling-reverse", conjecture: true, run: check_shelling_reverse },
    CheckDef { name: "hstar/shelling-degree-link", conjecture: true, run: check_shelling_degrees },
    CheckDef { name: "table/frozen-rows", conjecture: false, run: check_table_rows },
    CheckDef { name: "table/distributions", conjecture: false, run: check_table_distributions },
];

pub fn check_names() -> Vec<&'static str> {
    REGISTRY.iter().map(|d| d.name).collect()
}

fn selected(selector: Option<&str>) -> Result<Vec<&'static CheckDef>> {
    let all: Vec<&CheckDef> = REGISTRY.iter().collect();
    let Some(sel) = selector else {
        return Ok(all);
    };
    if sel == "all" {
        return Ok(all);
    }
    let mut keep = vec![false; REGISTRY.len()];
    for part in sel.split(',') {
        let part = part.trim();
        let mut hit = false;
        for (k, d) in REGISTRY.iter().enumerate() {
            if d.name == part || d.name.starts_with(part) {
                keep[k] = true;
                hit = true;
            }
        }
        if !hit {
            return Err(Error::InvalidArgument(format!(
                "no check matches '{part}'; try 'all' or one of: {}",
                check_names().join(", ")
            )));
        }
    }
    Ok(REGISTRY
        .iter()
        .enumerate()
        .filter(|(k, _)| keep[*k])
        .map(|(_, d)| d)
        .collect())
}

fn run_one(ctx: &Context, def: &CheckDef) -> CheckRecord {
    let start = Instant::now();
    let outcome = (def.run)(ctx);
    let millis = start.elapsed().as_millis();
    let (status, detail) = match outcome {
        Ok(()) => (CheckStatus::Pass, String::new()),
        Err(d) if def.conjecture => (CheckStatus::Finding, d),
        Err(d) => (CheckStatus::Fail, d),
    };
    CheckRecord {
        name: def.name.to_string(),
        status,
        detail,
        conjecture: def.conjecture,
        millis,
    }
}

/// Runs the selected checks for size `n`, optionally on `jobs` threads.
pub fn run_verification(
    n: usize,
    selector: Option<&str>,
    jobs: Option<usize>,
) -> Result<VerificationReport> {
    let defs = selected(selector)?;
    let ctx = Context::build(n)?;
    let run_all = || -> Vec<CheckRecord> { defs.par_iter().map(|d| run_one(&ctx, d)).collect() };
    let checks = match jobs {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("cannot build thread pool: {e}")))?
            .install(run_all),
        None => run_all(),
    };
    Ok(VerificationReport { n, checks })
}

fn check_route_count(ctx: &Context) -> CResult {
    let by_matrix = route_count_transfer_matrix(ctx.n);
    expect_eq(ctx.routes.len() as u64, by_matrix, "route count vs transfer matrix")?;
    let by_dilate = lib(lattice_count(ctx.n, 1))?;
    expect_eq(
        num_bigint::BigUint::from(ctx.routes.len()),
        by_dilate,
        "route count vs first dilate",
    )
}

fn check_route_order(ctx: &Context) -> CResult {
    for w in ctx.routes.windows(2) {
        expect(w[0] < w[1], "routes out of canonical order")?;
    }
    for r in &ctx.routes {
        let back = lib(Route::parse(ctx.n, &r.to_string()))?;
        expect_eq(&back, r, "route text roundtrip")?;
    }
    Ok(())
}

fn distinct_paths<'a>(
    ctx: &'a Context,
    v: usize,
    pick: fn(&'a Route, usize, usize) -> Option<&'a [EdgeId]>,
) -> Vec<&'a [EdgeId]> {
    let mut paths: Vec<&[EdgeId]> = ctx
        .routes
        .iter()
        .filter_map(|r| pick(r, ctx.n, v))
        .collect();
    paths.sort();
    paths.dedup();
    paths
}

fn check_prefix_order(ctx: &Context) -> CResult {
    for v in 2..ctx.n {
        let mut paths = distinct_paths(ctx, v, Route::prefix_at);
        paths.sort_by(|a, b| compare_prefixes(a, b));
        for i in 0..paths.len() {
            for j in i + 1..paths.len() {
                expect(
                    compare_prefixes(paths[i], paths[j]) == std::cmp::Ordering::Less,
                    &format!("prefix order at vertex {v} is not a strict total order"),
                )?;
            }
        }
    }
    Ok(())
}

fn check_suffix_order(ctx: &Context) -> CResult {
    for v in 2..ctx.n {
        let mut paths = distinct_paths(ctx, v, Route::suffix_at);
        paths.sort_by(|a, b| compare_suffixes(a, b));
        for i in 0..paths.len() {
            for j in i + 1..paths.len() {
                expect(
                    compare_suffixes(paths[i], paths[j]) == std::cmp::Ordering::Less,
                    &format!("suffix order at vertex {v} is not a strict total order"),
                )?;
            }
        }
    }
    Ok(())
}

fn check_clique_cardinality(ctx: &Context) -> CResult {
    let cliques = ctx.cliques()?;
    for c in cliques {
        expect_eq(c.len(), ctx.n + 1, "clique size")?;
    }
    expect_eq(cliques.len(), ctx.flows.len(), "clique count vs flow count")
}

fn check_clique_flow_bijection(ctx: &Context) -> CResult {
    let mut images: Vec<IntegerFlow> = Vec::new();
    for c in ctx.cliques()? {
        images.push(lib(clique_to_flow(c))?);
    }
    images.sort();
    for w in images.windows(2) {
        expect(w[0] != w[1], "two cliques carry the same flow")?;
    }
    expect_eq(images, ctx.flows.clone(), "clique flows vs flow set")
}

fn check_clique_grove_agreement(ctx: &Context) -> CResult {
    for c in ctx.cliques()? {
        let via_grove = lib(flow_from_grove(&lib(clique_to_grove(c))?))?;
        let direct = lib(clique_to_flow(c))?;
        expect_eq(via_grove, direct, "grove and flow views of a clique")?;
    }
    Ok(())
}

fn check_clique_worked_example(_ctx: &Context) -> CResult {
    let cliques = lib(enumerate_cliques(4))?;
    expect_eq(cliques.len(), 5, "clique count at n=4")?;
    let routes = lib(["x1x2x3", "y0x2x3", "y1x3", "x1x2y3", "x1y2"]
        .iter()
        .map(|s| Route::parse(4, s))
        .collect::<Result<Vec<_>>>())?;
    let a = lib(Clique::new(4, routes))?;
    expect(cliques.contains(&a), "base clique missing at n=4")?;
    let shared = [lib(Route::parse(4, "y1x3"))?, lib(Route::parse(4, "x1y2"))?];
    for c in &cliques {
        for r in &shared {
            expect(c.contains(r), &format!("clique {c} misses shared route {r}"))?;
        }
    }
    Ok(())
}

fn check_grove_flow_bijection(ctx: &Context) -> CResult {
    for f in &ctx.flows {
        let g = grove_from_flow(f);
        expect_eq(lib(flow_from_grove(&g))?, f.clone(), "flow-grove roundtrip")?;
    }
    Ok(())
}

fn check_grove_enumeration(ctx: &Context) -> CResult {
    let by_flows: Vec<Grove> = ctx.flows.iter().map(grove_from_flow).collect();
    expect_eq(
        ctx.groves.clone(),
        by_flows,
        "grove enumeration vs flow images",
    )
}

fn check_grove_move_commutes(ctx: &Context) -> CResult {
    for f in &ctx.flows {
        let g = grove_from_flow(f);
        for i in 2..ctx.n {
            for sign in [MoveSign::Plus, MoveSign::Minus] {
                let on_flow = lib(flow_move(f, i, sign))?.map(|m| grove_from_flow(&m));
                let on_grove = lib(grove_move(&g, i, sign))?;
                expect_eq(
                    on_grove,
                    on_flow,
                    &format!("move at {i} disagrees between flow and grove"),
                )?;
            }
        }
    }
    Ok(())
}

fn check_grove_offsets(ctx: &Context) -> CResult {
    for f in &ctx.flows {
        let g = grove_from_flow(f);
        for i in 2..ctx.n {
            expect_eq(
                lib(grove_offsets(&g, i))?,
                lib(flow_offsets(f, i))?,
                &format!("offsets at {i} disagree between grove and flow"),
            )?;
        }
    }
    Ok(())
}

fn check_tracking(ctx: &Context) -> CResult {
    for g in &ctx.groves {
        for i in 2..ctx.n {
            let success = matches!(lib(track_top_r1(g, i))?, TrackOutcome::Success);
            let zero_free = !lib(grove_offsets(g, i))?.has_zero();
            expect_eq(
                success,
                zero_free,
                &format!("tracking at {i} disagrees with offset zeroes"),
            )?;
        }
    }
    Ok(())
}

fn check_flow_enumeration(ctx: &Context) -> CResult {
    for w in ctx.flows.windows(2) {
        expect(w[0] < w[1], "flows out of canonical order")?;
    }
    for f in &ctx.flows {
        lib(IntegerFlow::new(ctx.n, f.xs().to_vec(), f.ys().to_vec()))?;
    }
    Ok(())
}

fn check_flow_count(ctx: &Context) -> CResult {
    expect_eq(
        num_bigint::BigUint::from(ctx.flows.len()),
        flow_count_transfer_matrix(ctx.n),
        "flow count vs cut recurrence",
    )
}

fn check_moves_invertible(ctx: &Context) -> CResult {
    let index: HashSet<&IntegerFlow> = ctx.flows.iter().collect();
    for f in &ctx.flows {
        for i in 2..ctx.n {
            if let Some(g) = lib(flow_move(f, i, MoveSign::Plus))? {
                expect(index.contains(&g), "plus move left the flow set")?;
                expect_eq(
                    lib(flow_move(&g, i, MoveSign::Minus))?,
                    Some(f.clone()),
                    "minus does not undo plus",
                )?;
            }
            if let Some(g) = lib(flow_move(f, i, MoveSign::Minus))? {
                expect(index.contains(&g), "minus move left the flow set")?;
                expect_eq(
                    lib(flow_move(&g, i, MoveSign::Plus))?,
                    Some(f.clone()),
                    "plus does not undo minus",
                )?;
            }
        }
    }
    Ok(())
}

fn check_offset_witnesses(_ctx: &Context) -> CResult {
    let w1 = lib(IntegerFlow::new(
        6,
        vec![0, 1, 0, 1, 3],
        vec![0, 0, 0, 2, 0, 1],
    ))?;
    expect_eq(
        lib(flow_offsets(&w1, 2))?.to_string(),
        "[2,none,-1]".to_string(),
        "zero-free witness",
    )?;
    let w2 = lib(IntegerFlow::new(
        6,
        vec![0, 1, 1, 0, 1],
        vec![0, 0, 0, 1, 2, 1],
    ))?;
    expect_eq(
        lib(flow_offsets(&w2, 2))?.to_string(),
        "[1,none,0]".to_string(),
        "zero-carrying witness",
    )?;
    let w3 = lib(IntegerFlow::new(5, vec![0, 1, 0, 1], vec![0, 0, 0, 2, 0]))?;
    expect_eq(
        lib(flow_offsets(&w3, 2))?.to_string(),
        "[2,none]".to_string(),
        "bypass at the last position",
    )
}

fn check_dilate_brute(ctx: &Context) -> CResult {
    let nc = ctx.n.min(5);
    for t in 0..=2 {
        let fast = lib(lattice_count(nc, t))?;
        let slow = num_bigint::BigUint::from(lib(brute_dilate_count(nc, t))?);
        expect_eq(fast, slow, &format!("dilate {t} count at n={nc}"))?;
    }
    expect_eq(
        lib(lattice_count(4, 2))?,
        num_bigint::BigUint::from(31u32),
        "frozen second dilate at n=4",
    )?;
    expect_eq(
        lib(lattice_count(5, 2))?,
        num_bigint::BigUint::from(70u32),
        "frozen second dilate at n=5",
    )
}

fn check_dual_methods(ctx: &Context) -> CResult {
    let a = ctx.dual()?;
    let b = ctx.dual_via_cliques()?;
    expect_eq(a.nodes(), b.nodes(), "dual nodes by method")?;
    expect_eq(a.edges(), b.edges(), "dual edges by method")
}

fn check_embedding_potential(ctx: &Context) -> CResult {
    let d = ctx.embedded()?;
    let coords = d.coords().expect("embedded graph has coordinates");
    for (k, f) in d.nodes().iter().enumerate() {
        expect_eq(
            coords[k].clone(),
            potential_coords(f),
            &format!("walked coordinate of {f} vs closed form"),
        )?;
    }
    Ok(())
}

fn check_grid_unit_steps(ctx: &Context) -> CResult {
    let d = ctx.embedded()?;
    let coords = d.coords().expect("embedded graph has coordinates");
    for e in d.edges() {
        let mut step = coords[e.from].clone();
        step[e.move_index - 2] += 1;
        expect_eq(
            coords[e.to].clone(),
            step,
            "edge is not a unit step on its own axis",
        )?;
    }
    Ok(())
}

fn check_grid_neighbors(ctx: &Context) -> CResult {
    let d = ctx.embedded()?;
    let coords = d.coords().expect("embedded graph has coordinates");
    let at: HashMap<&Vec<i64>, usize> = coords.iter().enumerate().map(|(k, c)| (c, k)).collect();
    let edges: HashSet<(usize, usize, usize)> = d
        .edges()
        .iter()
        .map(|e| (e.from, e.to, e.move_index))
        .collect();
    for (k, c) in coords.iter().enumerate() {
        for axis in 0..ctx.n - 2 {
            let mut up = c.clone();
            up[axis] += 1;
            let Some(&o) = at.get(&up) else {
                continue;
            };
            let i = axis + 2;
            let moved = lib(flow_move(&d.nodes()[k], i, MoveSign::Plus))?;
            expect_eq(
                moved,
                Some(d.nodes()[o].clone()),
                "occupied grid neighbors must differ by the axis move",
            )?;
            let zero_free = !lib(flow_offsets(&d.nodes()[k], i))?.has_zero();
            expect_eq(
                edges.contains(&(k, o, i)),
                zero_free,
                "dual edge must match zero-free offsets",
            )?;
        }
    }
    Ok(())
}

fn check_dual_worked_example(_ctx: &Context) -> CResult {
    let d = lib(build_dual(4, DualMethod::Flows))?;
    let d = lib(d.embed())?;
    expect_eq(d.nodes().len(), 5, "dual node count at n=4")?;
    expect_eq(d.edges().len(), 5, "dual edge count at n=4")?;
    let coords = d.coords().expect("embedded graph has coordinates");
    let coord_of = |x: &[u32], y: &[u32]| -> std::result::Result<Vec<i64>, String> {
        let f = lib(IntegerFlow::new(4, x.to_vec(), y.to_vec()))?;
        let k = d.node_index(&f).ok_or_else(|| format!("{f} is not a node"))?;
        Ok(coords[k].clone())
    };
    expect_eq(coord_of(&[0, 1, 2], &[0, 0, 0, 0])?, vec![0, 0], "base coordinate")?;
    expect_eq(coord_of(&[0, 1, 1], &[0, 0, 0, 1])?, vec![0, 1], "first step")?;
    expect_eq(coord_of(&[0, 1, 0], &[0, 0, 0, 2])?, vec![0, 2], "second step")?;
    expect_eq(coord_of(&[0, 0, 1], &[0, 0, 1, 0])?, vec![1, 1], "side step")?;
    expect_eq(coord_of(&[0, 0, 0], &[0, 0, 1, 1])?, vec![1, 2], "far corner")
}

fn check_running_degrees(_ctx: &Context) -> CResult {
    let d = lib(build_dual(5, DualMethod::Flows))?;
    let f = lib(IntegerFlow::new(5, vec![0, 1, 0, 1], vec![0, 0, 0, 2, 0]))?;
    let k = d.node_index(&f).ok_or("running example flow is not a node")?;
    let stats = d.degree_stats();
    expect_eq(stats[k], (2, 1), "degrees of the running example flow")
}

fn check_perm_count(ctx: &Context) -> CResult {
    expect_eq(
        lib(alternating_perms(ctx.n))?.len(),
        ctx.flows.len(),
        "alternating permutation count vs flow count",
    )
}

fn check_perm_flow_bijection(ctx: &Context) -> CResult {
    let mut images = Vec::new();
    for alpha in lib(alternating_perms(ctx.n))? {
        let clique = lib(alt_perm_to_clique(&alpha))?;
        expect_eq(clique.len(), ctx.n + 1, "route chain length")?;
        images.push(lib(clique_to_flow(&clique))?);
    }
    images.sort();
    expect_eq(images, ctx.flows.clone(), "permutation flows vs flow set")
}

fn check_region_cut_examples(_ctx: &Context) -> CResult {
    let cut = |rs: &[usize]| route_from_region_set(5, &rs.iter().copied().collect());
    expect_eq(
        lib(cut(&[]))?.map(|r| r.to_string()),
        Some("y0y2y4".to_string()),
        "empty region set",
    )?;
    expect_eq(
        lib(cut(&[3, 4, 5]))?.map(|r| r.to_string()),
        Some("y0x2y3".to_string()),
        "upper-tail region set",
    )?;
    expect_eq(lib(cut(&[4]))?, None, "non-route region set")
}

fn check_route_chain_example(_ctx: &Context) -> CResult {
    let alpha = lib(AlternatingPerm::new(vec![4, 5, 2, 3, 1]))?;
    let chain = lib(alt_perm_route_chain(&alpha))?;
    let words: Vec<String> = chain.iter().map(|r| r.to_string()).collect();
    expect_eq(
        words,
        ["y0y2y4", "y0y2x4", "y0x2x3x4", "y0x2y3", "x1x2y3", "y1y3"]
            .map(str::to_string)
            .to_vec(),
        "route chain of 45231",
    )?;
    let flow = lib(clique_to_flow(&lib(alt_perm_to_clique(&alpha))?))?;
    expect_eq(
        flow,
        lib(IntegerFlow::new(5, vec![0, 1, 0, 1], vec![0, 0, 0, 2, 0]))?,
        "flow of 45231",
    )
}

fn check_hstar_nonnegative(ctx: &Context) -> CResult {
    let h = ctx.hstar()?;
    expect(h.coeffs().len() <= ctx.n + 1, "h* degree exceeds dimension")
}

fn check_hstar_sum(ctx: &Context) -> CResult {
    expect_eq(
        ctx.hstar()?.sum() as usize,
        ctx.flows.len(),
        "normalized volume vs simplex count",
    )
}

fn check_hstar_frozen(_ctx: &Context) -> CResult {
    expect_eq(lib(hstar_ehrhart(3))?.coeffs(), &[1, 1][..], "h* at n=3")?;
    expect_eq(lib(hstar_ehrhart(4))?.coeffs(), &[1, 3, 1][..], "h* at n=4")?;
    expect_eq(lib(hstar_ehrhart(5))?.coeffs(), &[1, 7, 7, 1][..], "h* at n=5")
}

fn check_swap_hstar(ctx: &Context) -> CResult {
    let dist = distribution(lib(alternating_perms(ctx.n))?.iter().map(swap_stat));
    expect_eq(&dist, ctx.hstar()?, "swap distribution vs h*")
}

fn check_des_hstar(ctx: &Context) -> CResult {
    let dist = distribution(ctx.flows.iter().map(|f| des_stat(&flow_to_cyclic(f))));
    expect_eq(&dist, ctx.hstar()?, "descent distribution vs h*")
}

fn check_sz_hstar(ctx: &Context) -> CResult {
    let dist = distribution(ctx.dual()?.degree_stats().into_iter().map(|d| d.0));
    expect_eq(&dist, ctx.hstar()?, "out-degree distribution vs h*")
}

fn check_zs_hstar(ctx: &Context) -> CResult {
    let dist = distribution(ctx.dual()?.degree_stats().into_iter().map(|d| d.1));
    expect_eq(&dist, ctx.hstar()?, "in-degree distribution vs h*")
}

fn check_shelling_forward(ctx: &Context) -> CResult {
    let report = lib(shelling_report(ctx.n, ShellingOrder::Forward))?;
    expect(
        report.is_shelling,
        &report
            .violation
            .clone()
            .unwrap_or_else(|| "not a shelling".into()),
    )?;
    expect_eq(&report.h, ctx.hstar()?, "forward h-vector vs h*")
}

fn check_shelling_reverse(ctx: &Context) -> CResult {
    let report = lib(shelling_report(ctx.n, ShellingOrder::Reverse))?;
    expect(
        report.is_shelling,
        &report
            .violation
            .clone()
            .unwrap_or_else(|| "not a shelling".into()),
    )?;
    expect_eq(&report.h, ctx.hstar()?, "reverse h-vector vs h*")
}

fn check_shelling_degrees(ctx: &Context) -> CResult {
    let dual = ctx.dual()?;
    let stats = dual.degree_stats();
    let degree = |f: &IntegerFlow| -> std::result::Result<(usize, usize), String> {
        dual.node_index(f)
            .map(|k| stats[k])
            .ok_or_else(|| format!("{f} is not a dual node"))
    };
    let fwd = lib(shelling_report(ctx.n, ShellingOrder::Forward))?;
    for e in &fwd.entries {
        expect_eq(e.s, degree(&e.flow)?.1, "forward s vs in-degree")?;
    }
    let rev = lib(shelling_report(ctx.n, ShellingOrder::Reverse))?;
    for e in &rev.entries {
        expect_eq(e.s, degree(&e.flow)?.0, "reverse s vs out-degree")?;
    }
    Ok(())
}

fn check_table_rows(_ctx: &Context) -> CResult {
    let table = lib(statistics_table(5))?;
    expect_eq(table.len(), 16, "table rows")?;
    let row = table
        .iter()
        .find(|r| r.alt_perm == "45231")
        .ok_or("missing permutation 45231")?;
    expect_eq(row.inverse.as_str(), "53412", "inverse of 45231")?;
    expect_eq(row.x.clone(), vec![0, 1, 0, 1], "slack flow of 45231")?;
    expect_eq(row.y.clone(), vec![0, 0, 0, 2, 0], "nonslack flow of 45231")?;
    expect_eq(row.cyclic_perm.as_str(), "14523", "cyclic word of 45231")?;
    expect_eq(
        (row.swap, row.sz, row.zs, row.des),
        (0, 2, 1, 1),
        "statistics of the 45231 row",
    )?;
    let swap_of = |w: &str| {
        table
            .iter()
            .find(|r| r.alt_perm == w)
            .map(|r| r.swap)
            .ok_or_else(|| format!("missing permutation {w}"))
    };
    expect_eq(swap_of("13254")?, 2, "swap of 13254")?;
    expect_eq(swap_of("34251")?, 1, "swap of 34251")
}

fn check_table_distributions(_ctx: &Context) -> CResult {
    let table = lib(statistics_table(5))?;
    let expect_poly = lib(hstar_ehrhart(5))?;
    expect_eq(
        distribution(table.iter().map(|r| r.swap)),
        expect_poly.clone(),
        "table swap distribution",
    )?;
    expect_eq(
        distribution(table.iter().map(|r| r.sz)),
        expect_poly.clone(),
        "table sz distribution",
    )?;
    expect_eq(
        distribution(table.iter().map(|r| r.zs)),
        expect_poly.clone(),
        "table zs distribution",
    )?;
    expect_eq(
        distribution(table.iter().map(|r| r.des)),
        expect_poly,
        "table des distribution",
    )
}
