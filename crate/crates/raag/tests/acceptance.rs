//! Acceptance criteria, one pass/fail line each.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use raag::checks;
use raag::fixtures::Fixture;
use raag::report::{Report, RunConfig};
use raag_core::{Element, Raag};

type Verdict = Result<(), String>;
type Criterion = (&'static str, fn() -> Verdict);

fn config(fixture: Fixture, samples: usize, max_len: usize) -> RunConfig {
    RunConfig { graph: fixture.name().to_string(), seed: 7, samples, max_len, ..RunConfig::default() }
}

fn run(fixture: Fixture, suite: &str, samples: usize, max_len: usize) -> Report {
    let config = config(fixture, samples, max_len);
    let g = checks::configured(fixture.raag(), &config);
    checks::run(&g, &config, suite).expect("known suite")
}

/// Every named check (or every check when `names` is empty) ran `samples`
/// instances with no failures, and with no inconclusives unless allowed.
fn require(report: &Report, fixture: Fixture, names: &[&str], samples: Option<usize>, strict: bool) -> Verdict {
    let checks: Vec<_> = if names.is_empty() {
        report.suites.iter().flat_map(|s| &s.checks).collect()
    } else {
        let mut out = Vec::new();
        for name in names {
            out.push(report.check(name).ok_or_else(|| format!("{}: no check {name}", fixture.name()))?);
        }
        out
    };
    for c in checks {
        let tag = format!("{} {}", fixture.name(), c.axiom);
        if c.failure_count > 0 {
            return Err(format!("{tag}: {} failures, first {:?}", c.failure_count, c.failures.first()));
        }
        if strict && c.inconclusive > 0 {
            return Err(format!("{tag}: {} inconclusive", c.inconclusive));
        }
        if let Some(n) = samples {
            if c.samples != n {
                return Err(format!("{tag}: {} samples, expected {n}", c.samples));
            }
        }
    }
    Ok(())
}

fn within(start: Instant, limit: Duration) -> Verdict {
    let spent = start.elapsed();
    if spent < limit {
        Ok(())
    } else {
        Err(format!("took {spent:?}, limit {limit:?}"))
    }
}

/// Ball of radius `r` by breadth-first letter steps.
fn ball(g: &Raag, r: usize) -> BTreeSet<Element> {
    let mut seen = BTreeSet::from([g.identity()]);
    let mut frontier = vec![g.identity()];
    for _ in 0..r {
        let mut next = Vec::new();
        for x in &frontier {
            for s in g.graph().letters() {
                let y = g.mul_letter(x, s);
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    seen
}

fn median_axioms() -> Verdict {
    let start = Instant::now();
    for f in Fixture::ALL {
        require(&run(f, "median-axioms", 10_000, 8), f, &[], Some(10_000), true)?;
    }
    within(start, Duration::from_secs(30))
}

fn agroup_axioms() -> Verdict {
    let start = Instant::now();
    let axioms = ["agroup.a1", "agroup.a2", "agroup.a3", "agroup.a4", "agroup.perp-law"];
    for f in Fixture::ALL {
        require(&run(f, "agroup-axioms", 5_000, 8), f, &axioms, Some(5_000), true)?;
    }
    within(start, Duration::from_secs(60))
}

fn order_oracle() -> Verdict {
    let start = Instant::now();
    for f in Fixture::ALL {
        let pairs = ball(&f.raag(), 3).len().pow(2);
        let names = ["oracle.interval", "oracle.meet", "oracle.median", "oracle.join"];
        require(&run(f, "order-oracle", 1, 8), f, &names, Some(pairs), true)?;
    }
    within(start, Duration::from_secs(120))
}

fn cyclic_suite() -> Verdict {
    let names = ["cyclic.power-meet", "cyclic.power-reduced", "cyclic.torsion-free", "cyclic.power-length"];
    for f in Fixture::ALL {
        let report = run(f, "cyclic", 1_000, 8);
        require(&report, f, &names, Some(1_000), true)?;
        require(&report, f, &[], None, true)?;
    }
    Ok(())
}

fn conjugacy_oracle() -> Verdict {
    for f in Fixture::ALL {
        let n = ball(&f.raag(), 3).len();
        require(&run(f, "conj-oracle", 1, 8), f, &["oracle.conjugacy"], Some(n), true)?;
    }
    Ok(())
}

fn preorder_and_folding() -> Verdict {
    for f in Fixture::ALL {
        require(&run(f, "preorder", 1_000, 8), f, &[], Some(1_000), true)?;
        require(&run(f, "folding", 1_000, 8), f, &[], Some(1_000), true)?;
    }
    Ok(())
}

fn quasidirection() -> Verdict {
    let bands = [
        "qdir.band-idempotent",
        "qdir.band-associative",
        "qdir.band-swap",
        "qdir.band-left-folding",
        "qdir.band-right-folding",
        "qdir.band-median-absorption",
    ];
    for f in Fixture::ALL {
        let items = ball(&f.raag(), 2).len() * ball(&f.raag(), 3).len();
        require(&run(f, "qdir-oracle", 1, 8), f, &["oracle.qdir"], Some(items), true)?;
        let report = run(f, "qdir", 2_000, 8);
        require(&report, f, &bands, Some(2_000), true)?;
        require(&report, f, &[], None, true)?;
    }
    Ok(())
}

fn decomposition() -> Verdict {
    let names = ["structure.round-trip", "structure.primitive-factors", "structure.conjugate-equivariance"];
    for f in Fixture::ALL {
        require(&run(f, "structure", 1_000, 10), f, &names, Some(1_000), true)?;
    }
    Ok(())
}

fn centralizer() -> Verdict {
    let f = Fixture::F2xZ;
    let g = f.raag();
    let c = g.parse("c").unwrap();
    let z = g.centralizer(&c).map_err(|e| e.to_string())?;
    let steps: Vec<Element> = z.generators().flat_map(|e| [e.clone(), g.inv(e)]).collect();
    let target = ball(&g, 3);
    let mut reached = BTreeSet::from([g.identity()]);
    let mut frontier = vec![g.identity()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for e in &steps {
                let y = g.mul(x, e);
                if y.len() <= 3 && reached.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    if reached != target {
        return Err(format!("centralizer of c reaches {} of {} elements of ball(3)", reached.len(), target.len()));
    }
    let report = run(f, "structure", 500, 8);
    require(&report, f, &["structure.centralizer-sound"], Some(500), true)?;
    require(&report, f, &["structure.centralizer-complete"], Some(500), false)
}

fn prim_equivalences() -> Verdict {
    let names = ["structure.axis-intersection", "structure.fold-composition", "structure.preorder-intersection"];
    for f in Fixture::ALL {
        require(&run(f, "structure", 1_000, 8), f, &names, Some(1_000), true)?;
    }
    Ok(())
}

fn determinism() -> Verdict {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    for f in Fixture::ALL {
        let path = dir.join(format!("{}.txt", f.name()));
        let report = |jobs: &str| {
            let out = Command::new(env!("CARGO_BIN_EXE_raag"))
                .args(["check", "all", "--json", "--samples", "200", "--seed", "11", "--jobs", jobs, "-g"])
                .arg(&path)
                .output()
                .expect("binary runs");
            (out.status.code(), out.stdout)
        };
        let first = report("1");
        if first.0 != Some(0) || first.1.is_empty() {
            return Err(format!("{}: check all exited with {:?}", f.name(), first.0));
        }
        if report("1") != first {
            return Err(format!("{}: repeated run differs", f.name()));
        }
        if report("4") != first {
            return Err(format!("{}: four workers differ from one", f.name()));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("median axioms", median_axioms),
        ("A-group axioms", agroup_axioms),
        ("order layer against brute force", order_oracle),
        ("cyclic reduction and powers", cyclic_suite),
        ("conjugacy against brute force", conjugacy_oracle),
        ("preorder and folding", preorder_and_folding),
        ("quasidirection oracle and band laws", quasidirection),
        ("decomposition round trip and uniqueness", decomposition),
        ("centralizer", centralizer),
        ("primitive equivalences", prim_equivalences),
        ("deterministic reports", determinism),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match check() {
            Ok(()) => println!("criterion {}: pass  {name} ({:.1}s)", k + 1, start.elapsed().as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", k + 1);
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
