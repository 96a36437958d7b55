//! Turns a `RunConfig` into report rows, a JSON document and an exit code.

use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cohomology::{h0_torsion_dual, h1_order, ono_constant, sha_bk_order, sha_order};
use crate::error::{Error, Result};
use crate::exact::{fmt_rat, BigRat};
use crate::global::{c_gamma, verify_tnc, GlobalReport, TncOptions};
use crate::lattice::{brute_force_point_count, euler_factor_at_one, point_count_fp, q_rank, Family, TorusSpec};
use crate::local::{bad_prime_density, count_solutions, cross_validate_density, local_density_good};
use crate::report::config::{Command, RunConfig};
use crate::report::record::{rat_value, real_value, Identity, Verdict, VerificationReport};
use crate::report::render::{render_report, write_atomic};

/// Primes up to this bound also get the brute-force checks.
pub const BRUTE_FORCE_PMAX: u64 = 13;
/// Deepest lifting level tried at a bad prime.
pub const BAD_PRIME_KMAX: u32 = 12;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_CONFIG: i32 = 64;

#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub reports: Vec<VerificationReport>,
    /// The rendered report; `None` when the run stopped on a config error.
    pub document: Option<String>,
    pub error: Option<String>,
}

impl RunOutcome {
    fn config_error(e: &Error) -> Self {
        let msg = match e {
            Error::Config(m) => format!("config error: {m}"),
            e => e.to_string(),
        };
        RunOutcome { exit_code: EXIT_CONFIG, reports: vec![], document: None, error: Some(msg) }
    }
}

pub fn exit_code(reports: &[VerificationReport]) -> i32 {
    match reports.iter().map(|r| r.verdict).max() {
        None | Some(Verdict::Pass) => EXIT_PASS,
        Some(Verdict::Inconclusive) => EXIT_INCONCLUSIVE,
        Some(Verdict::Fail) => EXIT_FAIL,
    }
}

fn soft(e: &Error) -> bool {
    matches!(
        e,
        Error::NotStabilized { .. } | Error::BudgetExceeded { .. } | Error::Unsupported(_) | Error::ToleranceUnreachable { .. }
    )
}

/// A row for a computation that errored: INCONCLUSIVE when more budget or
/// support could settle it, FAIL otherwise.
fn error_row(identity: Identity, t: &TorusSpec, e: &Error) -> VerificationReport {
    let v = if soft(e) { Verdict::Inconclusive } else { Verdict::Fail };
    VerificationReport::new(identity, t.label()).verdict(v, Some(e.to_string()))
}

fn euler_row(t: &TorusSpec, p: u64, budget: u64) -> Result<VerificationReport> {
    let e = euler_factor_at_one(t, p)?;
    let n = point_count_fp(t, p)?;
    let density = local_density_good(t, p)?.value;
    let scaled = &e * BigRat::from_integer(BigInt::from(p).pow(t.dim() as u32));
    let mut row = VerificationReport::new(Identity::Euler, t.label())
        .field("p", p)
        .value("euler_factor", rat_value(&e), "characteristic polynomial of Frobenius on the cocharacter lattice")
        .value("point_count", n, "det(p − Frobenius)")
        .value("density", rat_value(&density), "good-prime formula p^-d·|T(F_p)|");
    let mut ok = scaled == BigRat::from_integer(n.into()) && density == e;
    let mut cause = format!("p^d·E_p = {} but |T(F_p)| = {n}", fmt_rat(&scaled));
    if p <= BRUTE_FORCE_PMAX {
        match brute_force_point_count(t, p, budget) {
            Ok(b) => {
                row = row.value("brute_force_count", b, "enumeration over F_p");
                if ok && b != n {
                    ok = false;
                    cause = format!("enumeration found {b} points, lattice gives {n}");
                }
            }
            Err(e) if soft(&e) => return Ok(row.verdict(Verdict::Inconclusive, Some(e.to_string()))),
            Err(e) => return Err(e),
        }
    }
    Ok(row.check(ok, cause))
}

fn lifting_row(t: &TorusSpec, p: u64, kmax: u32, budget: u64) -> Result<VerificationReport> {
    let model = t
        .model()
        .ok_or_else(|| Error::Unsupported(format!("no integral model for {}", t.label())))?;
    let counts = count_solutions(model, p, kmax + 1, budget)?;
    let n = point_count_fp(t, p)?;
    let pd = p.pow(model.dim as u32);
    let bad = counts.windows(2).position(|w| w[1] != pd * w[0]);
    let row = VerificationReport::new(Identity::Lifting, t.label())
        .field("p", p)
        .field("dim", model.dim)
        .value("counts", counts.clone(), "solutions mod p^k, k = 1, 2, ...")
        .value("point_count", n, "det(p − Frobenius)");
    Ok(match bad {
        _ if counts[0] != n => row.check(false, format!("count mod p is {} but |T(F_p)| = {n}", counts[0])),
        Some(i) => row.check(
            false,
            format!("count mod p^{} is {} but p^d times count mod p^{} is {}", i + 2, counts[i + 1], i + 1, pd * counts[i]),
        ),
        None => row.check(true, ""),
    })
}

fn globalinv_row(t: &TorusSpec) -> Result<VerificationReport> {
    let r = q_rank(t);
    if r > 0 {
        return Err(Error::AssumptionViolated(r));
    }
    let h1 = h1_order(t)?;
    let dual = h0_torsion_dual(t.group(), t.character_lattice())?;
    let h0 = dual.order().ok_or_else(|| Error::Unsupported("infinite torsion dual".into()))?;
    Ok(VerificationReport::new(Identity::Globalinv, t.label())
        .value("h1", h1.to_string(), "H^1(G, X^*) by cochains")
        .value("h0_torsion_dual", h0.to_string(), "dual of the torsion of H^0(G, X^* ⊗ Q/Z)")
        .field("h0_torsion_dual_group", dual.to_string())
        .check(h1 == h0, format!("#H^1 = {h1} but #H^0 torsion dual = {h0}")))
}

fn density_rows(t: &TorusSpec, cfg: &RunConfig) -> Vec<VerificationReport> {
    let mut rows: Vec<VerificationReport> = t
        .good_primes_up_to(cfg.pmax.min(BRUTE_FORCE_PMAX))
        .into_par_iter()
        .map(|p| {
            cross_validate_density(t, p, cfg.kmax.max(2), cfg.budget)
                .unwrap_or_else(|e| error_row(Identity::LocalDensity, t, &e).field("p", p))
        })
        .collect();
    for p in t.bad_primes() {
        let row = match bad_prime_density(t, p, BAD_PRIME_KMAX, cfg.budget) {
            Ok(d) => {
                let r = VerificationReport::new(Identity::LocalDensity, t.label())
                    .field("p", p)
                    .value("density", rat_value(&d.value), "lifting enumeration on the norm-form model")
                    .field("stabilized", d.stabilized)
                    .field("trace", d.trace_json());
                if d.stabilized {
                    r.check(true, "")
                } else {
                    r.verdict(Verdict::Inconclusive, Some(format!("not stabilized after {} levels", d.trace.len())))
                }
            }
            Err(e) => error_row(Identity::LocalDensity, t, &e).field("p", p).field("trace", json!([])),
        };
        rows.push(row);
    }
    rows
}

fn sha_row(t: &TorusSpec) -> Result<VerificationReport> {
    let ono = ono_constant(t)?;
    let mut row = VerificationReport::new(Identity::ShaBk, t.label())
        .value("ono_constant", ono.to_string(), "knot group of the splitting field");
    if t.family() == Family::NormOne {
        let ev = sha_order(t)?;
        let all_cyclic = ev.places.iter().filter(|p| p.place != "inf").all(|p| p.cyclic || !is_unramified(t, &p.place));
        row = row
            .field("h3", ev.h3.to_string())
            .field("places_checked", ev.places.len())
            .field("kernel_required_places", ev.order_required_places.to_string())
            .field("unramified_decomposition_groups_cyclic", all_cyclic);
        if ev.order_required_places != ev.order || !all_cyclic {
            return Ok(row.check(false, "sampled unramified primes changed the knot group"));
        }
    }
    let c = match c_gamma(t) {
        Ok(c) => c,
        Err(e) if soft(&e) => return Ok(row.verdict(Verdict::Inconclusive, Some(e.to_string()))),
        Err(e) => return Err(e),
    };
    let sha = sha_bk_order(&c.value, &ono);
    Ok(row
        .value("c_gamma", c.value.to_string(), &c.method)
        .field("c_gamma_heuristic", c.heuristic)
        .value("sha_bk", sha.to_string(), "c_Γ · i(T)")
        .check(sha == &c.value * &ono, "Sha_BK differs from c_Γ·i(T)"))
}

fn is_unramified(t: &TorusSpec, place: &str) -> bool {
    place.parse::<u64>().map(|p| !t.field().is_ramified(p)).unwrap_or(false)
}

/// The rows for one `GlobalReport`; components are nested objects.
pub fn tnc_row(g: &GlobalReport) -> VerificationReport {
    let mut row = VerificationReport::new(Identity::Tnc, g.torus.clone())
        .tolerance(g.tolerance)
        .value("h1", g.h1.to_string(), "H^1(G, X^*) by cochains")
        .value("h0_torsion_dual", g.h0_torsion_dual.to_string(), "torsion dual of H^0(G, X^* ⊗ Q/Z)")
        .value("ono_constant", g.ono_constant.to_string(), "knot group of the splitting field")
        .value("ono_rhs", rat_value(&g.ono_rhs), "#H^1 / i(T)");
    if let Some(c) = &g.c_gamma {
        row = row
            .value("c_gamma", c.value.to_string(), &c.method)
            .field("c_gamma_heuristic", c.heuristic);
    }
    if let Some(s) = &g.sha_bk {
        row = row.value("sha_bk", s.to_string(), "c_Γ · i(T)");
    }
    if let Some(tc) = &g.tau_coh {
        let local: Vec<Value> = tc.densities.iter().map(|d| d.to_json()).collect();
        row = row
            .value("tau_coh", real_value(tc.value), "L_S^-1 · ∏ μ_p · vol")
            .field("places", tc.places.clone())
            .value("partial_l_value", real_value(tc.partial_l), "Dirichlet character sum times Euler factors")
            .value("local_densities", local, "lifting enumeration at bad primes")
            .value("volume", serde_json::to_value(&tc.volume).unwrap(), "adaptive quadrature of the gauge form")
            .field("good_primes_checked", tc.good_primes_checked.clone());
    }
    if let Some(tt) = g.tau_tam {
        row = row.value("tau_tam", real_value(tt), "c_Γ · τ^coh");
    }
    row.verdict(g.verdict, g.cause.clone())
}

fn rows_for(cmd: Command, t: &TorusSpec, cfg: &RunConfig) -> Result<Vec<VerificationReport>> {
    let gated = |r: Result<VerificationReport>, id: Identity| -> Result<Vec<VerificationReport>> {
        match r {
            Ok(row) => Ok(vec![row]),
            Err(e @ Error::AssumptionViolated(_)) => Err(e),
            Err(e) => Ok(vec![error_row(id, t, &e)]),
        }
    };
    match cmd {
        Command::Euler => Ok(t
            .good_primes_up_to(cfg.pmax)
            .into_par_iter()
            .map(|p| euler_row(t, p, cfg.budget).unwrap_or_else(|e| error_row(Identity::Euler, t, &e).field("p", p)))
            .collect()),
        Command::Lifting => Ok(t
            .good_primes_up_to(cfg.pmax.min(BRUTE_FORCE_PMAX))
            .into_par_iter()
            .map(|p| {
                lifting_row(t, p, cfg.kmax, cfg.budget)
                    .unwrap_or_else(|e| error_row(Identity::Lifting, t, &e).field("p", p))
            })
            .collect()),
        Command::Globalinv => gated(globalinv_row(t), Identity::Globalinv),
        Command::Density => Ok(density_rows(t, cfg)),
        Command::Sha => gated(sha_row(t), Identity::ShaBk),
        Command::Tnc => {
            let opts = TncOptions { budget: cfg.budget, ..TncOptions::default() };
            match verify_tnc(t, cfg.tol, &opts) {
                Ok(g) => Ok(vec![tnc_row(&g)]),
                Err(e @ Error::AssumptionViolated(_)) => Err(e),
                Err(e) => Ok(vec![error_row(Identity::Tnc, t, &e).tolerance(cfg.tol)]),
            }
        }
        Command::All => {
            let mut rows = Vec::new();
            let mut cmds = vec![Command::Euler, Command::Lifting, Command::Density, Command::Sha];
            // the global identities assume Q-rank 0; skip them otherwise
            if q_rank(t) == 0 {
                cmds.extend([Command::Globalinv, Command::Tnc]);
            }
            for c in cmds {
                rows.extend(rows_for(c, t, cfg)?);
            }
            Ok(rows)
        }
    }
}

fn timed(cmd: Command, t: &TorusSpec, cfg: &RunConfig) -> Result<Vec<VerificationReport>> {
    let start = Instant::now();
    let mut rows = rows_for(cmd, t, cfg)?;
    if cfg.timings {
        let ms = start.elapsed().as_secs_f64() * 1e3;
        for r in &mut rows {
            r.timing_ms = Some(ms);
        }
    }
    Ok(rows)
}

/// Runs every requested identity on every torus and writes the report to
/// `cfg.out` if set. A config error or a violated assumption stops the run
/// with exit code 64 and no report.
pub fn run(cfg: &RunConfig) -> RunOutcome {
    if let Err(e) = cfg.validate() {
        return RunOutcome::config_error(&e);
    }
    let tori = match cfg.tori.iter().map(|s| TorusSpec::parse(s)).collect::<Result<Vec<_>>>() {
        Ok(t) => t,
        Err(e) => return RunOutcome::config_error(&e),
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cfg.jobs {
        builder = builder.num_threads(j);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => return RunOutcome::config_error(&Error::Config(format!("cannot start {} workers: {e}", cfg.jobs.unwrap_or(0)))),
    };
    let mut reports = Vec::new();
    for t in &tori {
        match pool.install(|| timed(cfg.command, t, cfg)) {
            Ok(rows) => reports.extend(rows),
            Err(e) => return RunOutcome::config_error(&e),
        }
    }
    let document = render_report(&cfg.echo(), &reports);
    if let Some(path) = &cfg.out {
        if let Err(e) = write_atomic(path, &document) {
            return RunOutcome { exit_code: EXIT_CONFIG, reports, document: Some(document), error: Some(e.to_string()) };
        }
    }
    RunOutcome { exit_code: exit_code(&reports), reports, document: Some(document), error: None }
}

/// One line per verdict count, for humans.
pub fn summary(outcome: &RunOutcome) -> String {
    if let Some(e) = &outcome.error {
        return e.clone();
    }
    let count = |v| outcome.reports.iter().filter(|r| r.verdict == v).count();
    let mut s = format!(
        "{} rows: {} PASS, {} FAIL, {} INCONCLUSIVE",
        outcome.reports.len(),
        count(Verdict::Pass),
        count(Verdict::Fail),
        count(Verdict::Inconclusive)
    );
    for r in outcome.reports.iter().filter(|r| r.verdict != Verdict::Pass) {
        let p = r.fields.get("p").map(|p| format!(" p={p}")).unwrap_or_default();
        s.push_str(&format!("\n  {} {:?} {}{}: {}", r.verdict, r.identity, r.torus, p, r.cause.as_deref().unwrap_or("")));
    }
    s
}
