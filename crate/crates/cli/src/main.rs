//! `wittkit`: batch front end to the `wittkit` library.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage or
//! parse errors.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use wittkit::correspondences::corpus::{builtin_corpus, family_item, verify_homotopy, Family};
use wittkit::drw::{evaluate, fd_power_reduce, BoundedPresentation, PresentationParams};
use wittkit::exact::{parse_ring, Elem, FiniteFreeAlgebra, Ring};
use wittkit::modulus::hasse_arf_check;
use wittkit::suite::{run_suite, SuiteOptions, SUITES};
use wittkit::transfers::{norm_oracle, trace_oracle, transfer_ga, transfer_gm, transfer_witt, witt_norm_oracle};
use wittkit::{BigWittVector, Error, PTypicalWitt, ZeroCycle};

#[derive(Parser)]
#[command(name = "wittkit", version, about = "Exact Witt vectors, modulus curves, transfers and de Rham-Witt presentations")]
struct Cli {
    /// Print the full JSON payload instead of a summary.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every random choice made by the command.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Also write the JSON payload to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Big Witt vector arithmetic; vectors are written by the coefficients of t, t^2, ...
    Witt(WittArgs),
    /// p-typical Witt vector arithmetic; vectors are written by their components.
    Ptypical(PtypicalArgs),
    /// The cycle map of a zero-cycle on the affine line.
    Phi(PhiArgs),
    /// Compares admissibility for r·P and ceil(r)·P on random functions.
    HasseArf(HasseArfArgs),
    /// Transfer of a point of Ga, Gm or W along a finite free algebra.
    Transfer(TransferArgs),
    /// Homotopy corpus checks.
    Homotopy {
        #[command(subcommand)]
        cmd: HomotopyCmd,
    },
    /// Bounded de Rham-Witt presentations.
    Drw {
        #[command(subcommand)]
        cmd: DrwCmd,
    },
    /// Runs a named verification suite.
    Suite(SuiteArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum WittOp {
    Add,
    Sub,
    Neg,
    Star,
    Frobenius,
    Verschiebung,
    Ghost,
    Teichmuller,
}

#[derive(Args)]
struct WittArgs {
    op: WittOp,
    #[arg(long)]
    ring: String,
    /// Length; defaults to the number of coefficients given.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    u: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    v: Option<String>,
    #[arg(long)]
    s: Option<usize>,
    /// Ring element for `teichmuller`.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PtypicalOp {
    Add,
    Sub,
    Star,
    Frobenius,
    Verschiebung,
    Ghost,
    Teichmuller,
}

#[derive(Args)]
struct PtypicalArgs {
    op: PtypicalOp,
    #[arg(long)]
    p: u64,
    #[arg(long)]
    ring: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    u: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    v: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
}

#[derive(Args)]
struct PhiArgs {
    #[arg(long)]
    field: String,
    #[arg(long)]
    n: usize,
    /// `2[x-3] - [x^2+1]`, or a JSON list of {"poly", "mult"}.
    #[arg(long, allow_hyphen_values = true)]
    cycle: String,
    /// The variant with unit part and degree; the cycle must avoid the origin.
    #[arg(long)]
    hat: bool,
    /// Project to p-typical Witt vectors of length n.
    #[arg(long)]
    p: Option<u64>,
}

#[derive(Args)]
struct HasseArfArgs {
    #[arg(long)]
    r: String,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value = "F7")]
    field: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Group {
    #[value(name = "Ga")]
    Ga,
    #[value(name = "Gm")]
    Gm,
    #[value(name = "W")]
    W,
}

#[derive(Args)]
struct TransferArgs {
    #[arg(long)]
    group: Group,
    /// `A[x]/(f)` or a product `A[x]/(f) * A[y]/(g)`.
    #[arg(long)]
    algebra: String,
    /// An element of the algebra; for `W`, comma-separated coefficients.
    #[arg(long, allow_hyphen_values = true)]
    element: String,
}

#[derive(Subcommand)]
enum HomotopyCmd {
    /// Checks one family instance.
    Verify {
        #[arg(long)]
        family: String,
        #[arg(long, default_value = "F7")]
        field: String,
        #[arg(long)]
        s: Option<i64>,
        #[arg(long)]
        r: Option<i64>,
        #[arg(long)]
        l: Option<i64>,
        #[arg(long)]
        p: Option<i64>,
        #[arg(long)]
        a: Option<i64>,
        #[arg(long)]
        b: Option<i64>,
    },
    /// Checks the built-in corpus over one field.
    Corpus {
        #[arg(long, default_value = "F7")]
        field: String,
    },
}

#[derive(Subcommand)]
enum DrwCmd {
    /// Builds a bounded presentation of the level-n complex.
    Present {
        #[arg(long = "A")]
        a: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        dx: u32,
        #[arg(long)]
        dr: u32,
    },
    /// Decides equality of two expressions in a stored presentation.
    Check {
        #[arg(long)]
        pres: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        lhs: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
    },
    /// F^e(d[t^m]) against m·[t^(m p^e - 1)]·d[t] over F_p[t].
    Fd {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        e: u32,
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        dr: u32,
    },
}

#[derive(Args)]
struct SuiteArgs {
    /// One of witt-laws, comparison, hasse-arf, transfers, homotopy-corpus, drw-axioms.
    name: String,
    /// Restrict drw-axioms to one odd prime.
    #[arg(long)]
    p: Option<u64>,
}

/// A command result: the JSON payload, a short text rendering and whether
/// the verification it performed (if any) succeeded.
struct Output {
    json: Value,
    text: String,
    ok: bool,
}

impl Output {
    fn value(json: Value, text: String) -> Self {
        Output { json, text, ok: true }
    }
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Certificate(_) => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn ring(tag: &str) -> Res<Ring> {
    parse_ring(tag).map_err(|e| usage(format!("cannot parse ring {tag:?}: {e}")))
}

fn elems(r: &Ring, list: &str, n: Option<usize>) -> Res<Vec<Elem>> {
    let list = list.trim();
    let out: Vec<Elem> = if list.is_empty() { Vec::new() } else { list.split(',').map(|c| r.parse_elem(c.trim())).collect::<wittkit::Result<_>>()? };
    match n {
        Some(n) if n != out.len() => Err(usage(format!("expected {n} coefficients, got {}", out.len()))),
        _ => Ok(out),
    }
}

fn required<'a>(v: &'a Option<String>, name: &str) -> Res<&'a str> {
    v.as_deref().ok_or_else(|| usage(format!("--{name} is required for this operation")))
}

fn fmt_list(r: &Ring, xs: &[Elem]) -> String {
    xs.iter().map(|c| r.fmt_elem(c)).collect::<Vec<_>>().join(",")
}

fn witt_out(w: &BigWittVector) -> Output {
    Output::value(w.to_json(), fmt_list(w.ring(), w.coeffs()))
}

fn run_witt(a: &WittArgs) -> Res<Output> {
    let r = ring(&a.ring)?;
    let vec = |s: &Option<String>, name: &str| -> Res<BigWittVector> { Ok(BigWittVector::new(&r, elems(&r, required(s, name)?, a.n)?)?) };
    let s = || a.s.ok_or_else(|| usage("--s is required for this operation"));
    Ok(match a.op {
        WittOp::Add => witt_out(&vec(&a.u, "u")?.add(&vec(&a.v, "v")?)?),
        WittOp::Sub => witt_out(&vec(&a.u, "u")?.sub(&vec(&a.v, "v")?)?),
        WittOp::Neg => witt_out(&vec(&a.u, "u")?.neg()),
        WittOp::Star => witt_out(&vec(&a.u, "u")?.star(&vec(&a.v, "v")?)?),
        WittOp::Frobenius => witt_out(&vec(&a.u, "u")?.frobenius(s()?)?),
        WittOp::Verschiebung => witt_out(&vec(&a.u, "u")?.verschiebung(s()?)?),
        WittOp::Ghost => {
            let g = vec(&a.u, "u")?.ghost();
            Output::value(json!({"ring": r.to_string(), "ghost": g.iter().map(|c| r.fmt_elem(c)).collect::<Vec<_>>()}), fmt_list(&r, &g))
        }
        WittOp::Teichmuller => {
            let n = a.n.ok_or_else(|| usage("--n is required for teichmuller"))?;
            witt_out(&BigWittVector::teichmuller(&r, &r.parse_elem(required(&a.a, "a")?)?, n))
        }
    })
}

fn ptypical_out(w: &PTypicalWitt) -> Output {
    Output::value(w.to_json(), fmt_list(w.ring(), w.comps()))
}

fn run_ptypical(a: &PtypicalArgs) -> Res<Output> {
    let r = ring(&a.ring)?;
    let vec = |s: &Option<String>, name: &str| -> Res<PTypicalWitt> { Ok(PTypicalWitt::new(a.p, &r, elems(&r, required(s, name)?, a.n)?)?) };
    Ok(match a.op {
        PtypicalOp::Add => ptypical_out(&vec(&a.u, "u")?.add(&vec(&a.v, "v")?)?),
        PtypicalOp::Sub => ptypical_out(&vec(&a.u, "u")?.sub(&vec(&a.v, "v")?)?),
        PtypicalOp::Star => ptypical_out(&vec(&a.u, "u")?.star(&vec(&a.v, "v")?)?),
        PtypicalOp::Frobenius => ptypical_out(&vec(&a.u, "u")?.frobenius()?),
        PtypicalOp::Verschiebung => ptypical_out(&vec(&a.u, "u")?.verschiebung()?),
        PtypicalOp::Ghost => {
            let g = vec(&a.u, "u")?.ghost();
            Output::value(json!({"ring": r.to_string(), "p": a.p, "ghost": g.iter().map(|c| r.fmt_elem(c)).collect::<Vec<_>>()}), fmt_list(&r, &g))
        }
        PtypicalOp::Teichmuller => {
            let n = a.n.ok_or_else(|| usage("--n is required for teichmuller"))?;
            ptypical_out(&PTypicalWitt::teichmuller(a.p, &r, &r.parse_elem(required(&a.a, "a")?)?, n))
        }
    })
}

fn run_phi(a: &PhiArgs) -> Res<Output> {
    let f = ring(&a.field)?;
    if !f.is_field() {
        return Err(usage(format!("{} is not a field", a.field)));
    }
    let c = if a.cycle.trim_start().starts_with("[{") || a.cycle.trim() == "[]" {
        let v: Value = serde_json::from_str(&a.cycle).map_err(|e| usage(format!("bad cycle JSON: {e}")))?;
        ZeroCycle::from_json(&f, &v)?
    } else {
        ZeroCycle::parse(&f, &a.cycle)?
    };
    if let Some(p) = a.p {
        let w = c.phi_ptypical(p, a.n)?;
        let mut out = ptypical_out(&w);
        out.json = json!({"cycle": c.to_json(), "value": out.json});
        return Ok(out);
    }
    if a.hat {
        let h = c.phi_hat(a.n)?;
        return Ok(Output::value(json!({"cycle": c.to_json(), "value": h.to_json()}), h.display()));
    }
    let w = c.phi(a.n);
    Ok(Output::value(json!({"cycle": c.to_json(), "value": w.to_json(), "degree": c.degree()}), w.display()))
}

fn run_hasse_arf(a: &HasseArfArgs, seed: u64) -> Res<Output> {
    let f = ring(&a.field)?;
    let r = Ring::Q.parse_elem(&a.r).map_err(|_| usage(format!("bad rational {:?}", a.r)))?.as_rat().clone();
    let rep = hasse_arf_check(&f, &r, a.samples, seed)?;
    let text = format!("r = {}, ceil(r) = {}: {}/{} agreements, {} admissible", rep.r, rep.ceil_r, rep.agreements, rep.samples, rep.admissible);
    Ok(Output { json: serde_json::to_value(&rep).expect("serializes"), text, ok: rep.passed() })
}

fn run_transfer(a: &TransferArgs) -> Res<Output> {
    let alg: Arc<FiniteFreeAlgebra> = match ring(&a.algebra)? {
        Ring::Alg(alg) => alg,
        other => return Err(usage(format!("{other} is not a finite free algebra; write A[x]/(f)"))),
    };
    let b = Ring::Alg(alg.clone());
    let base = alg.base.clone();
    let (value, oracle) = match a.group {
        Group::Ga => {
            let g = b.parse_elem(&a.element)?;
            (transfer_ga(&alg, &g)?, trace_oracle(&alg, &g))
        }
        Group::Gm => {
            let g = b.parse_elem(&a.element)?;
            (transfer_gm(&alg, &g)?, norm_oracle(&alg, &g))
        }
        Group::W => {
            let w = BigWittVector::new(&b, elems(&b, &a.element, None)?)?;
            let t = transfer_witt(&alg, &w)?;
            let o = witt_norm_oracle(&alg, &w)?;
            let ok = t == o;
            let json = json!({"group": "W", "algebra": alg.name, "value": t.to_json(), "oracle": o.to_json(), "agrees": ok});
            return Ok(Output { json, text: fmt_list(&base, t.coeffs()), ok });
        }
    };
    let ok = value == oracle;
    let (group, oname) = match a.group {
        Group::Ga => ("Ga", "trace"),
        _ => ("Gm", "norm"),
    };
    let json = json!({"group": group, "algebra": alg.name, "value": base.fmt_elem(&value), "oracle": oname, "oracle_value": base.fmt_elem(&oracle), "agrees": ok});
    Ok(Output { json, text: base.fmt_elem(&value), ok })
}

fn run_homotopy(cmd: &HomotopyCmd) -> Res<Output> {
    match cmd {
        HomotopyCmd::Verify { family, field, s, r, l, p, a, b } => {
            let f = ring(field)?;
            let fam = Family::parse(family)?;
            let mut params = BTreeMap::new();
            for (k, v) in [("s", s), ("r", r), ("l", l), ("p", p), ("a", a), ("b", b)] {
                if let Some(v) = v {
                    params.insert(k.to_string(), *v);
                }
            }
            let item = family_item(&f, fam, &params)?;
            let rep = verify_homotopy(&item)?;
            let text = format!(
                "{} {:?} over {}: t=0 {} (expected {}), t=1 {} (expected {}): {}",
                fam.name(),
                rep.params,
                rep.field,
                rep.boundary0,
                rep.expected0,
                rep.boundary1,
                rep.expected1,
                if rep.pass { "pass" } else { "FAIL" }
            );
            Ok(Output { json: serde_json::to_value(&rep).expect("serializes"), text, ok: rep.pass })
        }
        HomotopyCmd::Corpus { field } => {
            let f = ring(field)?;
            let mut reports = Vec::new();
            let mut lines = Vec::new();
            let mut ok = true;
            for item in builtin_corpus(&f)? {
                let (entry, pass, line) = match verify_homotopy(&item) {
                    Ok(r) => (serde_json::to_value(&r).expect("serializes"), r.pass, format!("{} {:?}: {}", r.family.name(), r.params, if r.pass { "pass" } else { "FAIL" })),
                    Err(Error::Certificate(m)) => (
                        json!({"family": item.family.name(), "params": item.params, "rejected": m}),
                        true,
                        format!("{} {:?}: rejected ({m})", item.family.name(), item.params),
                    ),
                    Err(e) => return Err(e.into()),
                };
                ok &= pass;
                reports.push(entry);
                lines.push(line);
            }
            Ok(Output { json: json!({"field": f.to_string(), "items": reports}), text: lines.join("\n"), ok })
        }
    }
}

fn run_drw(cmd: &DrwCmd) -> Res<Output> {
    match cmd {
        DrwCmd::Present { a, n, q, dx, dr } => {
            let params = PresentationParams { ring: a.clone(), n: *n, q: *q, dx: *dx, dr: *dr };
            let mut pres = BoundedPresentation::build(&params)?;
            let json = pres.to_json()?;
            let mut lines = Vec::new();
            for s in pres.summaries()? {
                lines.push(format!(
                    "weight {} degree {}: {} generators, {} relations, length {} {:?}",
                    s.weight, s.degree, s.generators, s.relations, s.quotient_length, s.invariants
                ));
            }
            Ok(Output::value(json, lines.join("\n")))
        }
        DrwCmd::Check { pres, lhs, rhs } => {
            let raw = std::fs::read_to_string(pres).map_err(|e| usage(format!("cannot read {}: {e}", pres.display())))?;
            let v: Value = serde_json::from_str(&raw).map_err(|e| usage(format!("bad presentation JSON: {e}")))?;
            let mut p = BoundedPresentation::from_json(&v)?;
            let ring = p.ring().clone();
            let n = p.n();
            let l = evaluate(&ring, n, lhs)?;
            let r = evaluate(&ring, n, rhs)?;
            let added = p.extend_for(&l)? + p.extend_for(&r)?;
            let verdict = p.equal_at_depth(&l, &r)?;
            let var = ring.var_name().to_string();
            let json = json!({
                "ring": ring.tag(),
                "n": n,
                "lhs": l.display(&var),
                "rhs": r.display(&var),
                "blocks_added": added,
                "result": verdict,
            });
            let ok = verdict.is_equal();
            Ok(Output { json, text: format!("{} = {}: {}", l.display(&var), r.display(&var), verdict.label()), ok })
        }
        DrwCmd::Fd { p, m, e, n, dr } => {
            let rep = fd_power_reduce(*p, *m, *e, *n, *dr)?;
            let text = format!("{} = {}: {}", rep.lhs, rep.rhs, rep.verdict.label());
            let ok = rep.verdict.is_equal();
            Ok(Output { json: serde_json::to_value(&rep).expect("serializes"), text, ok })
        }
    }
}

fn run_suite_cmd(a: &SuiteArgs, seed: u64) -> Res<Output> {
    if !SUITES.contains(&a.name.as_str()) {
        return Err(usage(format!("unknown suite {:?}; expected one of {}", a.name, SUITES.join(", "))));
    }
    let rep = run_suite(&a.name, &SuiteOptions { seed, p: a.p })?;
    let mut text = format!(
        "{} (seed {}, version {}): {} cases, {} passed, {} failed, {} inconclusive",
        rep.suite, rep.seed, rep.version, rep.cases, rep.passed, rep.failed, rep.inconclusive
    );
    for (name, s) in &rep.sections {
        text.push_str(&format!("\n  {name}: {} cases, {} failed, {} inconclusive", s.cases, s.failed, s.inconclusive));
    }
    Ok(Output { json: rep.to_json(), text, ok: rep.pass() })
}

fn dispatch(cli: &Cli) -> Res<Output> {
    match &cli.cmd {
        Cmd::Witt(a) => run_witt(a),
        Cmd::Ptypical(a) => run_ptypical(a),
        Cmd::Phi(a) => run_phi(a),
        Cmd::HasseArf(a) => run_hasse_arf(a, cli.seed),
        Cmd::Transfer(a) => run_transfer(a),
        Cmd::Homotopy { cmd } => run_homotopy(cmd),
        Cmd::Drw { cmd } => run_drw(cmd),
        Cmd::Suite(a) => run_suite_cmd(a, cli.seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(out) => {
            let body = serde_json::to_string_pretty(&out.json).expect("serializes");
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, format!("{body}\n")) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            // A closed pipe (e.g. `| head`) is not an error worth a panic.
            let _ = writeln!(std::io::stdout().lock(), "{}", if cli.json { body } else { out.text });
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(1)
        }
    }
}
