//! Command line driver for the doubleform library.
//!
//! Every invocation prints exactly one JSON report to stdout:
//!
//! ```text
//! {"command": [...], "status": "ok"|"failure"|"unavailable", "payload": {...}, "timing_ms": T}
//! ```
//!
//! The payload of a given invocation is byte-identical across runs; only
//! `timing_ms` varies. Logs go to stderr. Exit codes: 0 success, 1 failed
//! verification or invalid input, 2 extension unavailable (exactly the
//! r = 0, m = q case), 3 nonvanishing facet trace, 64 usage errors.

mod pretty;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use doubleform::check::{run_suite, Suite};
use doubleform::double::{basis_pairs, binom_i128, valid_summands, DoubleCovector};
use doubleform::extension::{extend, ExtendError};
use doubleform::fe::{
    ambient_extension, dim_full, dim_ring, dim_trace_free, dof_table, global_basis, ring_basis,
    table_rows, trace_to_face, GlobalBasisElement,
};
use doubleform::json::{
    basis_element_to_json, extension_result_to_json, mesh_from_json, MeshJson, SimplexFormJson,
};
use doubleform::linalg::span_rank;
use doubleform::simplex::vanishing_trace_basis;
use doubleform::young::{diagram_summand, diagram_trace_free, hook_dim_gl, hook_dim_sym};
use doubleform::Rational;

#[derive(Parser)]
#[command(name = "doubleform", version, about = "Exact computations with double forms on simplices")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dimension of one space of double forms
    Dims(DimsArgs),
    /// The lowest-order dimension table with its isomorphism aliases
    DimTable(DimTableArgs),
    /// Assemble the global basis of a finite element space on a mesh
    Basis(BasisArgs),
    /// Degrees of freedom per face dimension on one N-simplex
    Dof(DofArgs),
    /// Extend a vanishing-trace simplex form to the ambient space
    Extend(ExtendArgs),
    /// Run a randomized identity suite
    Verify(VerifyArgs),
    /// Young diagram dimension oracles
    Young(YoungArgs),
}

#[derive(Args)]
#[command(group = ArgGroup::new("space").args(["trace_free", "full", "ring"]))]
struct DimsArgs {
    /// Left degree p
    #[arg(long)]
    p: usize,
    /// Right degree q
    #[arg(long)]
    q: usize,
    /// Summand index m
    #[arg(long)]
    m: usize,
    /// Simplex dimension n
    #[arg(long)]
    n: usize,
    /// dim 𝓟̊₀Λ^{p,q}_m(T^n), the vanishing-trace space (the default)
    #[arg(long)]
    trace_free: bool,
    /// dim 𝓟₀Λ^{p,q}_m(T^n), the constant-coefficient summand
    #[arg(long)]
    full: bool,
    /// dim 𝓗̊₀Λ^{p,q}_m(ℝ^{n+1}), the trace-free ring space
    #[arg(long)]
    ring: bool,
    /// Recompute the count as an explicit kernel rank and compare
    #[arg(long)]
    verify_rank: bool,
}

#[derive(Args)]
struct DimTableArgs {
    /// Largest simplex dimension to tabulate
    #[arg(long, default_value_t = 5)]
    n_max: usize,
}

#[derive(Args)]
#[command(group = ArgGroup::new("fmt").args(["json", "pretty"]))]
struct BasisArgs {
    /// Path to a mesh file {"num_vertices": V, "cells": [[...], ...]}
    #[arg(long)]
    mesh: PathBuf,
    /// Left degree p
    #[arg(long)]
    p: usize,
    /// Right degree q
    #[arg(long)]
    q: usize,
    /// Summand index m
    #[arg(long)]
    m: usize,
    /// Polynomial degree r of the local spaces
    #[arg(long)]
    r: u32,
    /// Emit raw JSON records only (the default)
    #[arg(long)]
    json: bool,
    /// Attach a rendered dλ_i/⊙/∧ string to every local form
    #[arg(long)]
    pretty: bool,
}

#[derive(Args)]
struct DofArgs {
    /// Left degree p
    #[arg(long)]
    p: usize,
    /// Right degree q
    #[arg(long)]
    q: usize,
    /// Summand index m
    #[arg(long)]
    m: usize,
    /// Dimension of the top simplex
    #[arg(long = "N")]
    big_n: usize,
    /// Polynomial degree; r ≥ 1 derives the counts by kernel rank
    #[arg(long, default_value_t = 0)]
    r: u32,
}

#[derive(Args)]
struct ExtendArgs {
    /// Path to the input simplex form (affine coordinates)
    #[arg(long)]
    input: PathBuf,
    /// Summand index m of the input
    #[arg(long)]
    m: usize,
    /// Homogeneity degree r of the extension
    #[arg(long)]
    r: u32,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which identity suite to run
    #[arg(long, value_parser = ["algebra", "poly", "sphere", "extension", "fem"])]
    suite: String,
    /// Largest ambient or mesh dimension exercised
    #[arg(long, default_value_t = 4)]
    max_dim: usize,
    /// Largest polynomial degree exercised
    #[arg(long, default_value_t = 2)]
    max_degree: u32,
    /// RNG seed; the case plan does not depend on it
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct YoungArgs {
    /// What to compute from the diagrams
    #[arg(value_parser = ["dim-gl", "dim-sym", "diagram"])]
    mode: String,
    /// Left degree p
    #[arg(long)]
    p: usize,
    /// Right degree q
    #[arg(long)]
    q: usize,
    /// Summand index m
    #[arg(long)]
    m: usize,
    /// Ambient dimension for dim-gl, simplex dimension for dim-sym
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Clone, Copy, PartialEq)]
enum Status {
    Ok,
    Failure,
    Unavailable,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Failure => "failure",
            Status::Unavailable => "unavailable",
        }
    }
}

struct Outcome {
    status: Status,
    payload: Value,
    exit: u8,
}

fn ok(payload: Value) -> Outcome {
    Outcome { status: Status::Ok, payload, exit: 0 }
}

fn fail(exit: u8, message: String) -> Outcome {
    Outcome { status: Status::Failure, payload: json!({ "error": message }), exit }
}

fn failed_with(payload: Value) -> Outcome {
    Outcome { status: Status::Failure, payload, exit: 1 }
}

fn unavailable(payload: Value) -> Outcome {
    Outcome { status: Status::Unavailable, payload, exit: 2 }
}

/// Exact integers in payloads: plain JSON numbers while they fit in i64,
/// decimal strings beyond that, never rounded.
fn int_value(v: i128) -> Value {
    match i64::try_from(v) {
        Ok(x) => json!(x),
        Err(_) => json!(v.to_string()),
    }
}

#[derive(Serialize)]
struct Report {
    command: Vec<String>,
    status: &'static str,
    payload: Value,
    timing_ms: u64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let started = Instant::now();
    let out = run(&cli.cmd);
    let report = Report {
        command: std::env::args().skip(1).collect(),
        status: out.status.as_str(),
        payload: out.payload,
        timing_ms: started.elapsed().as_millis() as u64,
    };
    println!("{}", serde_json::to_string(&report).expect("report serializes"));
    eprintln!("doubleform: {} in {} ms", report.status, report.timing_ms);
    ExitCode::from(out.exit)
}

fn run(cmd: &Cmd) -> Outcome {
    match cmd {
        Cmd::Dims(a) => run_dims(a),
        Cmd::DimTable(a) => run_dim_table(a),
        Cmd::Basis(a) => run_basis(a),
        Cmd::Dof(a) => run_dof(a),
        Cmd::Extend(a) => run_extend(a),
        Cmd::Verify(a) => run_verify(a),
        Cmd::Young(a) => run_young(a),
    }
}

fn run_dims(a: &DimsArgs) -> Outcome {
    let (p, q, m, n) = (a.p, a.q, a.m, a.n);
    let lo = q.saturating_sub(p);
    let space = if a.full {
        "full"
    } else if a.ring {
        "ring"
    } else {
        "trace-free"
    };
    let dim: i128 = match space {
        "full" => {
            if m < lo {
                return fail(1, format!("m = {m} is below the lowest summand max(0, q-p) = {lo}"));
            }
            dim_full(p, q, m, n)
        }
        "ring" => {
            if m < lo {
                return fail(1, format!("m = {m} is below the lowest summand max(0, q-p) = {lo}"));
            }
            dim_ring(p, q, m, n)
        }
        _ => {
            if m < lo || m >= q {
                return fail(
                    1,
                    format!("the trace-free count needs max(0, q-p) <= m <= q-1; got m = {m}"),
                );
            }
            dim_trace_free(p, q, m, n)
        }
    };
    let mut payload = json!({
        "p": p, "q": q, "m": m, "n": n,
        "space": space,
        "dim": int_value(dim),
    });
    if a.verify_rank {
        let rank: i128 = match space {
            "full" => {
                if valid_summands(p, q, n).contains(&m) {
                    let vecs: Vec<Vec<Rational>> = basis_pairs(n, p, q)
                        .into_iter()
                        .map(|(i, j)| {
                            DoubleCovector::<Rational>::basis(n, i, j).project_summand(m).to_vec()
                        })
                        .collect();
                    span_rank(&vecs) as i128
                } else {
                    0
                }
            }
            "ring" => {
                if valid_summands(p, q, n + 1).contains(&m) {
                    ring_basis::<Rational>(p, q, m, n).len() as i128
                } else {
                    0
                }
            }
            _ => {
                if valid_summands(p, q, n).contains(&m) {
                    vanishing_trace_basis::<Rational>(p, q, m, 0, n).len() as i128
                } else {
                    0
                }
            }
        };
        payload["rank"] = int_value(rank);
        payload["rank_matches"] = json!(rank == dim);
        if rank != dim {
            return failed_with(payload);
        }
    }
    ok(payload)
}

fn run_dim_table(a: &DimTableArgs) -> Outcome {
    let mut rows = Vec::new();
    let mut total = 0usize;
    for (p, q, m) in table_rows() {
        let aliases: Vec<Value> = (1..=m).map(|i| json!([p + i, q - i, m - i])).collect();
        let mut cells = Vec::new();
        for n in 1..=a.n_max {
            let d = dim_trace_free(p, q, m, n);
            if d != 0 {
                cells.push(json!({ "n": n, "dim": int_value(d) }));
            }
        }
        total += cells.len();
        rows.push(json!({ "p": p, "q": q, "m": m, "aliases": aliases, "cells": cells }));
    }
    ok(json!({ "n_max": a.n_max, "rows": rows, "nonblank_cells": total }))
}

fn run_basis(a: &BasisArgs) -> Outcome {
    let text = match std::fs::read_to_string(&a.mesh) {
        Ok(t) => t,
        Err(e) => return fail(1, format!("cannot read {}: {e}", a.mesh.display())),
    };
    let mesh_js: MeshJson = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(e) => return fail(1, format!("mesh is not valid JSON: {e}")),
    };
    let mesh = match mesh_from_json(&mesh_js) {
        Ok(t) => t,
        Err(e) => return fail(1, format!("bad mesh: {e}")),
    };
    match global_basis::<Rational>(&mesh, a.p, a.q, a.m, a.r) {
        Err(e @ ExtendError::ExtensionUnavailable) => unavailable(json!({
            "error": e.to_string(),
            "p": a.p, "q": a.q, "m": a.m, "r": a.r,
        })),
        Err(e) => fail(exit_for(&e), e.to_string()),
        Ok(elements) => {
            let els: Vec<Value> = elements
                .iter()
                .map(|e| {
                    let mut v =
                        serde_json::to_value(basis_element_to_json(e)).expect("element serializes");
                    if a.pretty {
                        let d: Vec<Value> = e
                            .local
                            .iter()
                            .map(|(cell, sf)| {
                                let text = display_local(e, &mesh.cells()[*cell], sf);
                                json!({ "cell": cell, "text": text })
                            })
                            .collect();
                        v["display"] = Value::Array(d);
                    }
                    v
                })
                .collect();
            ok(json!({
                "p": a.p, "q": a.q, "m": a.m, "r": a.r,
                "mesh": { "num_vertices": mesh.num_vertices(), "cells": mesh.cells() },
                "num_elements": els.len(),
                "elements": els,
            }))
        }
    }
}

/// Renders a local form through the ambient λ-expression of its extension
/// chain, which restricts to the form on the cell; the raw substitution
/// lift is the fallback when no extension exists.
fn display_local(
    e: &GlobalBasisElement<Rational>,
    cell_vertices: &[usize],
    sf: &doubleform::simplex::SimplexForm<Rational>,
) -> String {
    let owner = trace_to_face(sf, &e.owner_face);
    match ambient_extension(&owner, cell_vertices, e.m, e.r) {
        Ok(ambient) => pretty::render_poly(&ambient, cell_vertices),
        Err(_) => pretty::render_simplex(sf),
    }
}

fn run_dof(a: &DofArgs) -> Outcome {
    let (p, q, m) = (a.p, a.q, a.m);
    let lo = q.saturating_sub(p);
    if m < lo || m > q || (a.r == 0 && m == q) {
        let hi = if a.r == 0 { "q-1" } else { "q" };
        return fail(1, format!("DOF tables need max(0, q-p) <= m <= {hi}; got m = {m}"));
    }
    let per: BTreeMap<usize, i128> = if a.r == 0 {
        dof_table(p, q, m, a.big_n)
    } else {
        let mut t = BTreeMap::new();
        for l in 0..=a.big_n {
            if !valid_summands(p, q, l).contains(&m) {
                continue;
            }
            let c = vanishing_trace_basis::<Rational>(p, q, m, a.r, l).len() as i128;
            if c != 0 {
                t.insert(l, c);
            }
        }
        t
    };
    let mut total: i128 = 0;
    let faces: Vec<Value> = per
        .iter()
        .map(|(&l, &c)| {
            let count = binom_i128(a.big_n as i128 + 1, l as i128 + 1);
            total += c * count;
            json!({
                "face_dim": l,
                "per_face": int_value(c),
                "num_faces": int_value(count),
                "subtotal": int_value(c * count),
            })
        })
        .collect();
    let mut payload = json!({
        "p": p, "q": q, "m": m, "N": a.big_n, "r": a.r,
        "rank_derived": a.r >= 1,
        "per_face_dim": faces,
        "total": int_value(total),
    });
    if a.r == 0 {
        let full = dim_full(p, q, m, a.big_n);
        payload["full_space"] = int_value(full);
        payload["sum_matches"] = json!(total == full);
        if total != full {
            return failed_with(payload);
        }
    }
    ok(payload)
}

fn exit_for(e: &ExtendError) -> u8 {
    match e {
        ExtendError::ExtensionUnavailable => 2,
        ExtendError::TraceNotVanishing(_) => 3,
        ExtendError::SummandMismatch(_) => 1,
    }
}

fn run_extend(a: &ExtendArgs) -> Outcome {
    let text = match std::fs::read_to_string(&a.input) {
        Ok(t) => t,
        Err(e) => return fail(1, format!("cannot read {}: {e}", a.input.display())),
    };
    let js: SimplexFormJson = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(e) => return fail(1, format!("input is not valid JSON: {e}")),
    };
    let phi = match doubleform::json::simplex_from_json(&js) {
        Ok(f) => f,
        Err(e) => return fail(1, format!("bad input form: {e}")),
    };
    let (p, q, n) = (phi.form().p(), phi.form().q(), phi.n());
    if !valid_summands(p, q, n).contains(&a.m) {
        return fail(1, format!("m = {} is not a summand of Λ^{{{p},{q}}} on T^{n}", a.m));
    }
    if phi.form().max_degree() > a.r {
        return fail(
            1,
            format!("input has polynomial degree {} > r = {}", phi.form().max_degree(), a.r),
        );
    }
    match extend(&phi, p, q, a.m, a.r) {
        Ok(res) => {
            let ext = serde_json::to_value(extension_result_to_json(&res)).expect("serializes");
            ok(json!({
                "p": p, "q": q, "n": n, "m": a.m, "r": a.r,
                "extension": ext,
            }))
        }
        Err(e @ ExtendError::ExtensionUnavailable) => unavailable(json!({
            "error": e.to_string(),
            "p": p, "q": q, "n": n, "m": a.m, "r": a.r,
        })),
        Err(ExtendError::TraceNotVanishing(role)) => Outcome {
            status: Status::Failure,
            payload: json!({
                "error": ExtendError::TraceNotVanishing(role).to_string(),
                "facet_role": role,
            }),
            exit: 3,
        },
        Err(e) => fail(1, e.to_string()),
    }
}

fn run_verify(a: &VerifyArgs) -> Outcome {
    let suite = Suite::parse(&a.suite).expect("clap vetted the suite name");
    let report = run_suite(suite, a.max_dim, a.max_degree, a.seed);
    let payload = json!({
        "suite": report.suite,
        "seed": report.seed,
        "max_dim": a.max_dim,
        "max_degree": a.max_degree,
        "cases": report.cases,
        "checks": report.checks(),
        "identities": report.identity_counts,
        "failures": report.failures,
    });
    if report.passed() {
        ok(payload)
    } else {
        failed_with(payload)
    }
}

fn diagram_value(cols: &[usize], rows: &[usize]) -> Value {
    json!({ "columns": cols, "rows": rows })
}

fn run_young(a: &YoungArgs) -> Outcome {
    let (p, q, m) = (a.p, a.q, a.m);
    if m > q || p + m < q - m {
        return fail(1, format!("no summand diagram: need m <= q and p+m >= q-m, got m = {m}"));
    }
    let summand = diagram_summand(p, q, m);
    let lo = q.saturating_sub(p);
    match a.mode.as_str() {
        "diagram" => {
            let mut payload = json!({
                "mode": "diagram",
                "p": p, "q": q, "m": m,
                "summand": diagram_value(summand.columns(), &summand.rows()),
            });
            if let Some(n) = a.n {
                payload["n"] = json!(n);
                if m >= lo && m < q && n >= q - m && n >= p + m && p + q >= n + 1 {
                    let tf = diagram_trace_free(p, q, m, n);
                    payload["trace_free"] = diagram_value(tf.columns(), &tf.rows());
                }
            }
            ok(payload)
        }
        "dim-gl" => {
            let Some(n) = a.n else {
                return fail(1, "dim-gl needs --n, the ambient dimension".into());
            };
            let value = hook_dim_gl(&summand, n);
            let closed = if m >= lo { dim_full(p, q, m, n) } else { 0 };
            let payload = json!({
                "mode": "dim-gl",
                "p": p, "q": q, "m": m, "n": n,
                "diagram": diagram_value(summand.columns(), &summand.rows()),
                "value": int_value(value),
                "closed_form": int_value(closed),
                "matches": value == closed,
            });
            if value == closed {
                ok(payload)
            } else {
                failed_with(payload)
            }
        }
        _ => {
            // dim-sym
            let Some(n) = a.n else {
                return fail(1, "dim-sym needs --n, the simplex dimension".into());
            };
            if m < lo || m >= q {
                return fail(
                    1,
                    format!("the trace-free diagram needs max(0, q-p) <= m <= q-1; got m = {m}"),
                );
            }
            let in_window = n >= q - m && n >= p + m && p + q >= n + 1;
            let value = if in_window {
                let tf = diagram_trace_free(p, q, m, n);
                hook_dim_sym(&tf)
            } else {
                0
            };
            let closed = dim_trace_free(p, q, m, n);
            let mut payload = json!({
                "mode": "dim-sym",
                "p": p, "q": q, "m": m, "n": n,
                "value": int_value(value),
                "closed_form": int_value(closed),
                "matches": value == closed,
            });
            if in_window {
                let tf = diagram_trace_free(p, q, m, n);
                payload["diagram"] = diagram_value(tf.columns(), &tf.rows());
            }
            if value == closed {
                ok(payload)
            } else {
                failed_with(payload)
            }
        }
    }
}
