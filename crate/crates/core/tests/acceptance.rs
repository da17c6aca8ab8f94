//! Acceptance criteria, one line each. Run with
//! `cargo test -p tdbell --release --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use tdbell::sequences::{self, Family, TableParams};
use tdbell::verify::{
    self, check_c_six, check_p3, check_p5a, check_p5b, check_s3_exact, check_s3_monte_carlo, check_t1,
    check_t12, check_t14, check_t15, check_t16, check_t4, check_t7, check_trig, Grid, NumericConfig,
    T12Variant, Trig, Verdict,
};
use tdbell::{Lambda, Rational};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn lam(s: &str) -> Lambda {
    s.parse().expect("valid λ")
}

fn grid5() -> Vec<Lambda> {
    ["0", "1", "1/2", "-1/3", "2"].iter().map(|s| lam(s)).collect()
}

fn small() -> Vec<Lambda> {
    vec![lam("0"), lam("1/3")]
}

fn all_pass(verdicts: &[Verdict]) -> Outcome {
    let failed: Vec<String> = verdicts
        .iter()
        .filter(|v| !v.passed())
        .map(|v| format!("{} λ={} p={}", v.id, v.params["lambda"], v.params.get("p").cloned().unwrap_or_default()))
        .collect();
    if failed.is_empty() {
        Ok(format!("{} verdicts pass", verdicts.len()))
    } else {
        let more = if failed.len() > 4 { ", ..." } else { "" };
        let shown = failed[..failed.len().min(4)].join(", ");
        Err(format!("{} of {} fail: {shown}{more}", failed.len(), verdicts.len()))
    }
}

fn within(outcome: Outcome, elapsed: Duration, budget: Duration) -> Outcome {
    let s = outcome?;
    if elapsed <= budget {
        Ok(s)
    } else {
        Err(format!("{s}, but took {elapsed:.2?} > {budget:?}"))
    }
}

fn ok<T>(r: tdbell::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Set partitions of {0..n-1} counted by walking restricted growth strings.
fn partitions(n: usize) -> u64 {
    fn walk(pos: usize, n: usize, blocks: usize) -> u64 {
        if pos == n {
            return 1;
        }
        (0..=blocks)
            .map(|b| walk(pos + 1, n, blocks.max(b + 1)))
            .sum()
    }
    walk(0, n, 0)
}

fn c1() -> Outcome {
    let mut out = Vec::new();
    for l in grid5() {
        for p in 0..=4 {
            out.push(ok(check_t1(&l, p, 12, 12))?);
        }
    }
    all_pass(&out)
}

fn c2() -> Outcome {
    let n = 16;
    for l in grid5() {
        let params = TableParams::with_lambda(&l);
        let s1 = ok(sequences::table(Family::S1Deg, &params, n))?;
        let s2 = ok(sequences::table(Family::S2Deg, &params, n))?;
        for i in 0..=n {
            for k in 0..=n {
                let dot = (0..=n).fold(Rational::zero(), |acc, j| acc + s1.rational(i, j) * s2.rational(j, k));
                let expected = if i == k { Rational::one() } else { Rational::zero() };
                if dot != expected {
                    return Err(format!("λ={l}: entry ({i},{k}) is {dot}"));
                }
            }
        }
    }
    Ok(format!("identity through n = {n} on {} values of λ", grid5().len()))
}

fn c3() -> Outcome {
    let oracle: Vec<u64> = (0..=6).map(partitions).collect();
    if oracle != [1, 1, 2, 5, 15, 52, 203] {
        return Err(format!("partition oracle gave {oracle:?}"));
    }
    let zero = TableParams::default();
    let n = 12;
    for (deg, classical) in [(Family::S2Deg, Family::S2), (Family::S1Deg, Family::S1)] {
        let a = ok(sequences::table(deg, &zero, n))?;
        let b = ok(sequences::table(classical, &zero, n))?;
        if a.rows() != b.rows() {
            return Err(format!("{deg} at λ = 0 differs from {classical}"));
        }
    }
    let bell = ok(sequences::table(Family::BellDeg, &zero, 6))?;
    for (k, &count) in oracle.iter().enumerate() {
        let v = bell.poly(k, 0).eval(&Rational::one());
        if v != Rational::from_integer(count.into()) {
            return Err(format!("Bel_{k},0(1) = {v}, partitions give {count}"));
        }
    }
    Ok("S1, S2 and Bell numbers match at λ = 0".into())
}

fn c4() -> Outcome {
    let mut out = Vec::new();
    for l in grid5() {
        for p in 1..=4 {
            out.push(ok(check_p3(&l, p, 10))?);
            out.push(ok(check_p5a(&l, p, 10))?);
        }
    }
    all_pass(&out)
}

fn c5() -> Outcome {
    let cfg = NumericConfig {
        tol_rel: 1e-9,
        ..NumericConfig::default()
    };
    let mut out = Vec::new();
    for l in small() {
        for p in 0..=2 {
            out.push(ok(check_t4(&l, p, 8, &cfg))?);
        }
    }
    all_pass(&out)
}

fn c6() -> Outcome {
    let mut out = Vec::new();
    for l in [lam("1/2"), lam("-1/3")] {
        for p in 1..=3 {
            out.push(ok(check_p5b(&l, p, 14 + p))?);
            out.push(ok(check_t7(&l, p, 14 + p))?);
        }
    }
    all_pass(&out)
}

fn c7() -> Outcome {
    let cfg = NumericConfig {
        quad_nodes: 2048,
        tol_rel: 1e-7,
        ..NumericConfig::default()
    };
    let mut out = Vec::new();
    for l in small() {
        for k in 0..=8 {
            out.push(ok(check_trig(&l, 8, k, Trig::L9, &cfg))?);
        }
        out.push(ok(check_trig(&l, 8, 0, Trig::C10, &cfg))?);
        for p in 1..=3 {
            out.push(ok(check_trig(&l, 8, p, Trig::T11, &cfg))?);
        }
    }
    all_pass(&out)
}

fn c8() -> Outcome {
    let mut stated = Vec::new();
    let mut derivation = Vec::new();
    let mut t16 = Vec::new();
    for l in grid5() {
        for p in 0..=4 {
            stated.push(ok(check_t12(&l, p, 10, 11, T12Variant::Stated))?);
            derivation.push(ok(check_t12(&l, p, 10, 11, T12Variant::Derivation))?);
            if p <= 3 {
                t16.push(ok(check_t16(&l, p, 8))?);
            }
        }
    }
    let t16 = all_pass(&t16).map_err(|e| format!("recurrence in x: {e}"))?;
    let alt = all_pass(&derivation).map_or_else(|e| format!("derived form: {e}"), |s| format!("derived form: {s}"));
    all_pass(&stated)
        .map(|s| format!("{s}; {t16}"))
        .map_err(|e| format!("stated form: {e}; {alt}; recurrence in x: {t16}"))
}

fn c9() -> Outcome {
    let cfg = NumericConfig {
        tol_rel: 1e-8,
        ..NumericConfig::default()
    };
    let points = [Rational::zero(), Rational::one(), Rational::new(1.into(), 2.into())];
    let mut out = Vec::new();
    for l in grid5() {
        for p in 0..=4 {
            out.push(ok(check_t14(&l, p, 10))?);
            for x in &points {
                out.push(ok(check_t15(&l, p, 10, x, &cfg))?);
            }
        }
    }
    all_pass(&out)
}

fn c10() -> Outcome {
    let cfg = NumericConfig {
        mc_samples: 200_000,
        seed: 42,
        ..NumericConfig::default()
    };
    let mut out = Vec::new();
    for l in Grid::default_grid().lambdas {
        for p in 1..=3 {
            out.push(ok(check_s3_exact(&l, p, 6))?);
            out.push(ok(check_s3_monte_carlo(&l, p, 6, &cfg))?);
        }
    }
    let worst = out.iter().map(|v| v.max_residual).fold(0.0, f64::max);
    all_pass(&out).map(|s| format!("{s}, worst z = {worst:.2}"))
}

fn c11() -> Outcome {
    let cfg = NumericConfig::default();
    let report = ok(verify::run_suite(&Grid::default_grid(), &cfg, None))?;
    let adj = &report.summary.adjudications;
    if adj.len() != 1 {
        return Err(format!("{} adjudication records", adj.len()));
    }
    let per = &report.summary.per_id;
    let both = ["T6", "T6k"].iter().all(|id| per.get(*id).is_some_and(|c| c.pass + c.fail > 0));
    if !both {
        return Err("the two variants were not both run".into());
    }
    if report
        .verdicts
        .iter()
        .any(|v| v.id.starts_with("T6") && v.counts_as_failure())
    {
        return Err("a variant verdict counts toward the exit code".into());
    }
    let only = ok(verify::run_suite(&Grid::default_grid(), &cfg, Some("T6")))?;
    if only.exit_code() != 0 || only.summary.counts.fail == 0 {
        return Err("failing variant changed the exit code".into());
    }
    Ok(format!("resolution = {}", adj[0].resolution))
}

fn c12() -> Outcome {
    let cfg = NumericConfig::default();
    let mut out = Vec::new();
    for l in small() {
        for p in 1..=3 {
            out.push(ok(check_c_six(&l, p, 8, &cfg))?);
        }
    }
    all_pass(&out)
}

fn c13() -> Outcome {
    let cfg = NumericConfig {
        seed: 42,
        ..NumericConfig::default()
    };
    let a = ok(verify::run_suite(&Grid::default_grid(), &cfg, None))?.to_json();
    let b = ok(verify::run_suite(&Grid::default_grid(), &cfg, None))?.to_json();
    if a == b {
        Ok(format!("{} identical bytes", a.len()))
    } else {
        Err("reports differ".into())
    }
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria: [Criterion; 13] = [
        ("closed form equals generating function coefficients", c1, Some(secs(10))),
        ("Stirling matrices of both kinds are inverse", c2, Some(secs(5))),
        ("classical degeneration at λ = 0", c3, None),
        ("beta integral and binomial forms exact", c4, None),
        ("Dobinski-type double series", c5, Some(secs(5))),
        ("incomplete gamma and operator forms exact", c6, None),
        ("contour integral representations", c7, Some(secs(30))),
        ("recurrences in n and in x", c8, None),
        ("modified family: dual construction and double series", c9, None),
        ("beta moment identity, exact and Monte Carlo", c10, None),
        ("superscript adjudication record", c11, None),
        ("six expressions for the truncated Bell numbers agree", c12, None),
        ("byte-identical suite reports", c13, None),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match budget {
            Some(b) => within(outcome, elapsed, *b),
            None => outcome,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {:>2} {name} [{elapsed:.2?}]: {detail}", i + 1);
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
