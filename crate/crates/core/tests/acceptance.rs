//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Run with `cargo test -p greedy-cert --test acceptance`.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::Instant;

use greedy_cert::instances::random::random_matroid_instance;
use greedy_cert::instances::{coverage_objective, fuzz_coverage_instance, load_instance, CoverageConfig, MassMode};
use greedy_cert::matroid::MatroidSpec;
use greedy_cert::oracle::DEFAULT_CAP;
use greedy_cert::submodularity::{check_submodular_monotone, CheckMode};
use greedy_cert::sweep::{run_sweep, SweepConfig};
use greedy_cert::{verify_instance, ActionSeq, EPS};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn close(actual: f64, expected: f64, tol: f64, what: &str) -> Result<(), String> {
    let ok = if expected.is_infinite() { actual == expected } else { (actual - expected).abs() <= tol };
    ensure(ok, format!("{what} = {actual}, expected {expected}"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn fuzz_suite() -> Outcome {
    let start = Instant::now();
    for seed in 0..200 {
        let (inst, k) = fuzz_coverage_instance(seed);
        let n = inst.matroid.action_count();
        ensure(n <= 8 && k <= 4, format!("seed {seed}: instance too large"))?;
        let v = verify_instance(&inst.valuation, &inst.matroid, k, DEFAULT_CAP).map_err(|e| format!("seed {seed}: {e}"))?;
        let r = &v.report;
        ensure(v.passed(), format!("seed {seed}:\n{v}"))?;
        ensure(v.ratio >= r.bound_new - EPS, format!("seed {seed}: ratio {} < bound_new {}", v.ratio, r.bound_new))?;
        ensure(r.bound_new >= r.bound_cc - EPS, format!("seed {seed}: bound_new < bound_cc"))?;
        ensure(v.oracle.best_value <= r.b + EPS, format!("seed {seed}: f(O_K) > B"))?;
        ensure((r.b - r.s.min(r.r)).abs() <= EPS, format!("seed {seed}: B != min(S, R)"))?;
        ensure(r.b <= k as f64 * r.first_gain + EPS, format!("seed {seed}: B > K*rho_g1"))?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 10.0, format!("took {secs:.2} s"))?;
    Ok(format!("200 instances, {secs:.2} s"))
}

fn i2_golden() -> Outcome {
    let inst = load_instance(&fixture("i2.json")).map_err(|e| e.to_string())?;
    let v = verify_instance(&inst.valuation, &inst.matroid, 2, DEFAULT_CAP).map_err(|e| e.to_string())?;
    let r = &v.report;
    close(r.f_greedy, 8.0, 0.0, "f(G_K)")?;
    close(r.alpha, 0.0, 0.0, "alpha")?;
    close(r.s, f64::INFINITY, 0.0, "S")?;
    close(r.r, 11.0, 0.0, "R")?;
    close(r.b, 11.0, 0.0, "B")?;
    close(r.bound_new, 8.0 / 11.0, 1e-12, "bound_new")?;
    close(r.bound_cc, 0.5, 1e-12, "bound_cc")?;
    ensure(r.bound_new > r.bound_cc, "bound_new not above bound_cc")?;
    ensure(v.passed(), v.to_string())?;
    Ok(format!("bound_new = {:.6} > bound_cc = {:.1}", r.bound_new, r.bound_cc))
}

fn i1_golden() -> Outcome {
    let inst = load_instance(&fixture("i1.json")).map_err(|e| e.to_string())?;
    let v = verify_instance(&inst.valuation, &inst.matroid, 2, DEFAULT_CAP).map_err(|e| e.to_string())?;
    let r = &v.report;
    close(r.b, 4.0, 0.0, "B")?;
    close(r.bound_new, 0.75, 1e-12, "bound_new")?;
    close(r.bound_cc, 0.75, 1e-12, "bound_cc")?;
    close(v.oracle.best_value, 3.0, 0.0, "f(O_K)")?;
    ensure(v.trace.chosen == ActionSeq::from([0, 1]), format!("greedy chose {}", v.trace.chosen))?;
    ensure(v.passed(), v.to_string())?;
    Ok("B = 4, bound_new = bound_cc = 0.75, optimum 3".into())
}

fn set_matroid_suite() -> Outcome {
    let (mut strings, mut triples) = (0, 0);
    for seed in 0..50 {
        let (inst, set_matroid) = random_matroid_instance(seed, 6, 3);
        ensure(set_matroid.rank() <= 3 && set_matroid.ground_size() <= 6, format!("seed {seed}: too large"))?;
        ensure(matches!(inst.matroid, MatroidSpec::FromSetMatroid(_)), "not a set-induced matroid")?;
        let axioms = inst.matroid.check_axioms(DEFAULT_CAP).map_err(|e| e.to_string())?;
        ensure(axioms.is_clean(), format!("seed {seed}: axiom violations {axioms:?}"))?;
        let sub = check_submodular_monotone(&inst.valuation, &inst.matroid, CheckMode::Exhaustive);
        ensure(sub.is_clean(), format!("seed {seed}: {sub:?}"))?;
        strings += axioms.members_checked;
        triples += sub.triples_checked;
    }
    Ok(format!("50 matroids, {strings} feasible strings, {triples} triples"))
}

fn full_scale_sweep() -> Outcome {
    let start = Instant::now();
    let cfg = SweepConfig::benchmark();
    let rows = run_sweep(&cfg).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, format!("took {secs:.1} s"))?;
    ensure(rows.len() == 21, format!("{} rows", rows.len()))?;
    let classical = 1.0 - (-1f64).exp();
    let mut separating = Vec::new();
    for row in &rows {
        let r = &row.report;
        ensure(
            r.bound_new >= r.bound_cc - EPS,
            format!("lambda {}: bound_new {} < bound_cc {}", row.lambda, r.bound_new, r.bound_cc),
        )?;
        if r.bound_new > classical && r.bound_cc < classical {
            separating.push(format!("{:.4}", row.lambda));
        }
    }
    ensure(!separating.is_empty(), "no lambda with bound_new > 1 - 1/e > bound_cc at delta = 15")?;
    Ok(format!("21 rows in {secs:.2} s; separating lambda: {}", separating.join(", ")))
}

fn coverage_spot_check() -> Outcome {
    let mut total = 0;
    for (i, lambda) in [0.05, 0.3, 1.0].into_iter().enumerate() {
        let cfg = CoverageConfig { width: 20, height: 15, sensors: 5, delta: 15.0, lambda, mass: MassMode::LinearCorner };
        let obj = coverage_objective(&cfg).map_err(|e| e.to_string())?;
        let report = check_submodular_monotone(
            &obj.valuation,
            &obj.matroid,
            CheckMode::Sampled { samples: 10_000, seed: 2024 + i as u64 },
        );
        ensure(report.triples_checked >= 10_000, format!("only {} triples", report.triples_checked))?;
        ensure(report.is_clean(), format!("lambda {lambda}: {report:?}"))?;
        total += report.triples_checked;
    }
    Ok(format!("{total} triples over 3 decay rates, no violations"))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let config = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../bench/coverage_60x50.toml");
    let mut outputs = Vec::new();
    for name in ["a.csv", "b.csv"] {
        let out = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_greedy-cert"))
            .arg("coverage-sweep")
            .arg("--config")
            .arg(&config)
            .arg("--out")
            .arg(&out)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(status.status.success(), String::from_utf8_lossy(&status.stderr).into_owned())?;
        outputs.push(std::fs::read(&out).map_err(|e| e.to_string())?);
    }
    ensure(outputs[0] == outputs[1], "CSV outputs differ")?;
    Ok(format!("two runs, {} identical bytes", outputs[0].len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("certificate chain on 200 random coverage instances", fuzz_suite),
        ("instance I2 golden values", i2_golden),
        ("instance I1 golden values", i1_golden),
        ("string matroid axioms and string submodularity on 50 random set matroids", set_matroid_suite),
        ("60x50 coverage sweep, K = 10", full_scale_sweep),
        ("coverage submodularity spot-check, 20x15, K = 5", coverage_spot_check),
        ("coverage-sweep CSV is byte-identical across runs", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS [{}] {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{}] {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
