//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.
//!
//! Tolerances and trial counts are pinned here rather than taken from the
//! library defaults, so a change of default cannot loosen this gate.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use delaybounds::cli::{CompareRow, SearchRecord, SearchStatus};
use delaybounds::two_interval::{SearchKind, WITNESS_MARGIN};
use delaybounds::verification::{run_suite, Status, SuiteConfig, SuiteId, SuiteReport, Tolerances};

const SOUNDNESS_TOL: f64 = 1e-9;
const ORDERING_TOL: f64 = 1e-9;
const EQUALITY_TOL: f64 = 1e-8;
const PSD_TOL: f64 = 1e-8;
const IDENTITY_TOL: f64 = 1e-12;
const ORTHOGONALITY_TOL: f64 = 1e-10;
const SPAN_TOL: f64 = 1e-10;
const BOUNDARY_TOL: f64 = 1e-10;
const SEARCH_BUDGET: u64 = 10_000;
const SOUNDNESS_SECONDS: f64 = 60.0;

fn pinned() -> Tolerances {
    Tolerances {
        soundness: SOUNDNESS_TOL,
        ordering: ORDERING_TOL,
        equality: EQUALITY_TOL,
        psd: PSD_TOL,
        identity: IDENTITY_TOL,
        span: SPAN_TOL,
        orthogonality: ORTHOGONALITY_TOL,
        boundary: BOUNDARY_TOL,
    }
}

fn config(trials: u64) -> SuiteConfig {
    SuiteConfig {
        dims: vec![1, 2, 4],
        orders: vec![0, 1, 2, 3],
        seed: 20_240_601,
        trials,
        budget: SEARCH_BUDGET,
        tolerances: pinned(),
        ..SuiteConfig::default()
    }
}

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: String) -> Self {
        Self { passed, detail }
    }
}

fn suite(id: SuiteId, trials: u64) -> SuiteReport {
    run_suite(id, &config(trials)).expect("suite configuration is valid")
}

/// Worst margin over properties matching `pred`, `+inf` if none.
fn worst(r: &SuiteReport, pred: impl Fn(&str) -> bool) -> f64 {
    r.worst_margins
        .iter()
        .filter(|(k, _)| pred(k))
        .map(|(_, v)| *v)
        .fold(f64::INFINITY, f64::min)
}

fn summarize(r: &SuiteReport) -> String {
    let mut s = format!(
        "{} trials, {} checks, {} failures",
        r.trials,
        r.checks,
        r.failures.len()
    );
    if let Some(f) = r.failures.first() {
        s += &format!(
            "; first: {} at {} margin {:.3e} tol {:.1e}",
            f.property, f.digest, f.margin, f.tol
        );
    }
    s
}

fn margin_gate(r: &SuiteReport, props: &[&str], tol: f64) -> (bool, String) {
    let mut ok = r.status == Status::Pass;
    let mut parts = Vec::new();
    for p in props {
        let m = worst(r, |k| k == *p);
        ok &= m.is_finite() && m >= -tol;
        parts.push(format!("{p} {m:.2e}"));
    }
    (ok, format!("{} [{}] tol {tol:.0e}", summarize(r), parts.join(", ")))
}

fn c1_soundness() -> Outcome {
    let start = Instant::now();
    let r = suite(SuiteId::Soundness, 1000);
    let secs = start.elapsed().as_secs_f64();
    let m = worst(&r, |_| true);
    let ok = r.status == Status::Pass && m >= -SOUNDNESS_TOL && r.trials == 12_000 && secs < SOUNDNESS_SECONDS;
    Outcome::new(
        ok,
        format!(
            "{}; worst slack {m:.2e} tol {SOUNDNESS_TOL:.0e}; {secs:.1}s (limit {SOUNDNESS_SECONDS}s)",
            summarize(&r)
        ),
    )
}

fn c2_ordering() -> Outcome {
    let r = suite(SuiteId::Ordering, 1000);
    let (ok, d) = margin_gate(&r, &["gfmb<=sgfmb", "sgfmb<=bbi"], ORDERING_TOL);
    Outcome::new(ok && r.failures.is_empty(), d)
}

fn c3_equivalence() -> Outcome {
    let a = suite(SuiteId::EquivalenceSgfmbBbi, 200);
    let b = suite(SuiteId::EquivalenceSfmbSgfmb, 200);
    let (ok_a, da) = margin_gate(&a, &["gfmb=bbi", "sgfmb=bbi"], EQUALITY_TOL);
    let (ok_b, db) = margin_gate(&b, &["sfmb=bbi"], EQUALITY_TOL);
    Outcome::new(ok_a && ok_b, format!("{da} | {db}"))
}

fn c4_basis_change() -> Outcome {
    let r = suite(SuiteId::EquivalenceGfmbIfb, 200);
    let (ok_v, dv) = margin_gate(&r, &["ifb-gfmb=gfmb"], EQUALITY_TOL);
    let (ok_p, dp) = margin_gate(&r, &["psi-tilde-psd"], PSD_TOL);
    Outcome::new(ok_v && ok_p, format!("{dv} | {dp}"))
}

fn c5_rotation() -> Outcome {
    let r = suite(SuiteId::EquivalenceSfmbSgfmb, 200);
    let (ok_v, dv) = margin_gate(&r, &["sfmb=sgfmb"], EQUALITY_TOL);
    let (ok_q, dq) = margin_gate(&r, &["q-orthogonal"], ORTHOGONALITY_TOL);
    Outcome::new(ok_v && ok_q, format!("{dv} | {dq}"))
}

fn c6_schur() -> Outcome {
    let r = suite(SuiteId::Schur, 500);
    let (ok, d) = margin_gate(&r, &["psi-phi-agree", "expected-verdict"], 0.0);
    // every fifth trial is built infeasible
    let infeasible = 12 * 100;
    Outcome::new(
        ok && r.trials == 12 * 500,
        format!("{d}; {infeasible} infeasible by construction"),
    )
}

fn c7_domination() -> Outcome {
    let r = suite(SuiteId::TwoIntervalDomination, 100);
    let names = ["omega_b-m-lsr", "omega_b-erc", "omega_b-serc", "omega_b-merc", "omega_b-rcc"];
    let (ok, d) = margin_gate(&r, &names, PSD_TOL);
    let expected = 12 * 100 * 19 * names.len() as u64;
    Outcome::new(ok && r.checks >= expected, format!("{d}; {} checks", r.checks))
}

fn c8_relations() -> Outcome {
    let r = suite(SuiteId::RelationsAbcde, 500);
    let (ok_a, da) = margin_gate(&r, &["A-identity"], IDENTITY_TOL);
    let (ok_ce, dce) = margin_gate(&r, &["C-psd", "E-psd"], PSD_TOL);
    Outcome::new(ok_a && ok_ce, format!("{da} | {dce}"))
}

fn c9_counterexamples() -> Outcome {
    let r = suite(SuiteId::CounterexamplesBd, 1);
    let both_signs = r
        .witnesses
        .iter()
        .all(|w| w.worst_negative <= -WITNESS_MARGIN && w.worst_positive >= WITNESS_MARGIN);
    let kinds = |k: SearchKind| r.witnesses.iter().filter(|w| w.kind == k).count();
    let ok = r.status == Status::Pass && r.witnesses.len() == 4 && both_signs
        && kinds(SearchKind::B) == 2 && kinds(SearchKind::D) == 2;
    let forms: Vec<String> = r
        .witnesses
        .iter()
        .map(|w| format!("{:?}@t{} {:.1e}/{:.1e}", w.kind, w.trial, w.worst_negative, w.worst_positive))
        .collect();
    Outcome::new(
        ok,
        format!(
            "{} witnesses within {SEARCH_BUDGET} draws, |form| >= {WITNESS_MARGIN:.0e}: {}; {}",
            r.witnesses.len(),
            forms.join(", "),
            r.notes.iter().skip(1).cloned().collect::<Vec<_>>().join("; ")
        ),
    )
}

fn c10_span() -> Outcome {
    let r = suite(SuiteId::BesselSpanTightness, 200);
    let (ok, d) = margin_gate(&r, &["bbi=exact", "dbbi=exact", "worked-bbi=4/3", "worked-dbbi=4/3"], SPAN_TOL);
    Outcome::new(ok, d)
}

fn scenarios() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios")
}

fn cli(args: &[&str], env_seed: Option<&str>) -> (i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_delaybounds"));
    cmd.args(args).env_remove("DELAYBOUNDS_SEED");
    if let Some(s) = env_seed {
        cmd.env("DELAYBOUNDS_SEED", s);
    }
    let out = cmd.output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn c11_cli() -> Outcome {
    let tmp = tempfile::tempdir().expect("temp dir");
    let dir = |name: &str| tmp.path().join(name).to_string_lossy().into_owned();
    let default = scenarios().join("default.toml").to_string_lossy().into_owned();
    let mut checks: Vec<(String, bool)> = Vec::new();
    let mut check = |name: &str, ok: bool| checks.push((name.to_string(), ok));

    let out = dir("verify");
    let (code, _) = cli(&["verify", &default, "--out", &out], None);
    check("verify default exit 0", code == 0);
    let mut round_trip = true;
    let mut count = 0;
    for id in SuiteId::ALL {
        let text = fs::read_to_string(Path::new(&out).join(format!("{id}.jsonl"))).unwrap_or_default();
        let line = text.trim_end();
        match serde_json::from_str::<SuiteReport>(line) {
            Ok(rep) => {
                count += 1;
                round_trip &= serde_json::to_string(&rep).ok().as_deref() == Some(line);
                round_trip &= rep.status == Status::Pass;
            }
            Err(_) => round_trip = false,
        }
    }
    check("10 suite records round-trip", count == 10 && round_trip);

    let tight = scenarios().join("overtight.toml").to_string_lossy().into_owned();
    check("overtight exit 2", cli(&["verify", &tight], None).0 == 2);
    check("missing scenario exit 1", cli(&["verify", &dir("absent.toml")], None).0 == 1);
    check("unknown flag exit 1", cli(&["verify", &default, "--bogus"], None).0 == 1);

    let (code, text) = cli(
        &["verify", &default, "--suite", "ordering", "--trials", "3", "--format", "records"],
        Some("99"),
    );
    let seeded = serde_json::from_str::<SuiteReport>(text.trim()).is_ok_and(|r| r.seed == 99);
    check("env seed applied", code == 0 && seeded);
    let (_, text) = cli(
        &["verify", &default, "--suite", "ordering", "--trials", "3", "--format", "records", "--seed", "5"],
        Some("99"),
    );
    let flagged = serde_json::from_str::<SuiteReport>(text.trim()).is_ok_and(|r| r.seed == 5);
    check("flag seed wins", flagged);

    let (code, text) = cli(&["compare", &default, "--format", "records"], None);
    let rows: Vec<CompareRow> = text.lines().filter_map(|l| serde_json::from_str(l).ok()).collect();
    let half = rows.iter().find(|r| r.alpha == 0.5);
    check("compare exit 0", code == 0 && rows.len() == text.lines().count() && !rows.is_empty());
    check(
        "compare 4/3 row",
        half.is_some_and(|r| (r.exact - 4.0 / 3.0).abs() < 1e-12 && (r.dbbi - 4.0 / 3.0).abs() < 1e-12),
    );
    let empty = tmp.path().join("empty.toml");
    fs::write(&empty, "version = 1\n[compare]\nf = [[1.0]]\norder = 0\nalphas = []\n").unwrap();
    check("empty alpha grid exit 1", cli(&["compare", &empty.to_string_lossy()], None).0 == 1);

    for kind in ["B", "D"] {
        let out = dir(&format!("search-{kind}"));
        let (code, _) = cli(&["search", "--kind", kind, "--seed", "7", "--budget", "10000", "--out", &out], None);
        let text = fs::read_to_string(Path::new(&out).join(format!("witness-{kind}.json"))).unwrap_or_default();
        let rec = serde_json::from_str::<SearchRecord>(text.trim_end());
        let ok = rec.as_ref().is_ok_and(|r| {
            r.status == SearchStatus::Found
                && r.witness.as_ref().is_some_and(|w| {
                    w.worst_negative <= -WITNESS_MARGIN && w.worst_positive >= WITNESS_MARGIN
                })
                && serde_json::to_string(r).ok().as_deref() == Some(text.trim_end())
        });
        check(&format!("search {kind} exit 0 with witness"), code == 0 && ok);
    }
    check("search budget 0 exit 3", cli(&["search", "--kind", "B", "--budget", "0"], None).0 == 3);

    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0.as_str()).collect();
    Outcome::new(
        failed.is_empty(),
        format!("{}/{} contract checks; failed: {:?}", checks.len() - failed.len(), checks.len(), failed),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("soundness", c1_soundness),
        ("ordering chain", c2_ordering),
        ("equivalence attainment", c3_equivalence),
        ("basis-change transform", c4_basis_change),
        ("rotation transform", c5_rotation),
        ("schur equivalence", c6_schur),
        ("two-interval domination", c7_domination),
        ("relations A, C, E", c8_relations),
        ("counterexamples B, D", c9_counterexamples),
        ("bessel span tightness", c10_span),
        ("cli contract", c11_cli),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        let verdict = if o.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {verdict} {name}: {} ({:.1}s)",
            i + 1,
            o.detail,
            start.elapsed().as_secs_f64()
        );
        failures += usize::from(!o.passed);
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
