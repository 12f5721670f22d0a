//! Property suites.
//!
//! Sampled checks split their instances into fixed-size shards; shard `k`
//! of check `name` draws from [`stream`]`(seed, name, k)` and shard results
//! are merged in index order, so reports do not depend on the number of
//! worker threads.

use std::collections::{BTreeSet, HashMap};

use raag_core::{AxisContext, Element, Error, Limits, Raag};
use rayon::prelude::*;

use crate::brute;
use crate::report::{CheckReport, Outcome, Report, RunConfig, SuiteReport};
use crate::sample::{stream, Sampler};

pub const SHARD: usize = 64;

/// The suites run by `check all`, in report order.
pub const SUITES: [&str; 7] = ["median-axioms", "agroup-axioms", "cyclic", "preorder", "folding", "qdir", "structure"];

/// Exhaustive comparisons against brute force on small balls.
pub const ORACLE_SUITES: [&str; 3] = ["order-oracle", "conj-oracle", "qdir-oracle"];

const ATTEMPTS: usize = 200;

pub struct Runner<'g> {
    pub raag: &'g Raag,
    pub config: &'g RunConfig,
}

/// `name=word` strings for a failure record.
pub struct Inputs<'g> {
    raag: &'g Raag,
    words: Vec<String>,
}

impl<'g> Inputs<'g> {
    pub fn new(raag: &'g Raag) -> Self {
        Inputs { raag, words: Vec::new() }
    }

    pub fn el(mut self, name: &str, x: &Element) -> Self {
        self.words.push(format!("{name}={}", self.raag.render(x)));
        self
    }

    pub fn int(mut self, name: &str, n: i64) -> Self {
        self.words.push(format!("{name}={n}"));
        self
    }

    pub fn verdict(self, ok: bool) -> Outcome {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail(self.words)
        }
    }

    /// Cap overruns are inconclusive; other errors are failures.
    pub fn verdict_of(self, result: Result<bool, Error>) -> Outcome {
        match result {
            Ok(ok) => self.verdict(ok),
            Err(Error::CapExceeded { .. }) => Outcome::Inconclusive,
            Err(e) => {
                let mut words = self.words;
                words.push(format!("error={e}"));
                Outcome::Fail(words)
            }
        }
    }
}

/// Draws until `gen` produces an instance satisfying its hypothesis.
fn find<T>(s: &mut Sampler, mut gen: impl FnMut(&mut Sampler) -> Option<T>) -> Option<T> {
    (0..ATTEMPTS).find_map(|_| gen(s))
}

impl<'g> Runner<'g> {
    pub fn new(raag: &'g Raag, config: &'g RunConfig) -> Self {
        Runner { raag, config }
    }

    pub fn sampled<F>(&self, axiom: &str, samples: usize, f: F) -> CheckReport
    where
        F: Fn(&mut Sampler<'_>) -> Outcome + Sync,
    {
        let shards = samples.div_ceil(SHARD);
        let parts: Vec<CheckReport> = (0..shards)
            .into_par_iter()
            .map(|k| {
                let rng = stream(self.config.seed, axiom, k as u64);
                let mut s = Sampler::new(self.raag, rng, self.config.max_len);
                let mut part = CheckReport::new(axiom);
                for _ in 0..SHARD.min(samples - k * SHARD) {
                    part.record(f(&mut s));
                }
                part
            })
            .collect();
        merge(axiom, parts)
    }

    pub fn exhaustive<T, F>(&self, axiom: &str, items: &[T], f: F) -> CheckReport
    where
        T: Sync,
        F: Fn(&T) -> Outcome + Sync,
    {
        let parts: Vec<CheckReport> = items
            .par_chunks(SHARD)
            .map(|chunk| {
                let mut part = CheckReport::new(axiom);
                for item in chunk {
                    part.record(f(item));
                }
                part
            })
            .collect();
        merge(axiom, parts)
    }

    fn samples(&self) -> usize {
        self.config.samples
    }

    fn ball(&self, r: usize) -> Vec<Element> {
        self.raag.ball(r).expect("small balls fit the cap")
    }
}

fn merge(axiom: &str, parts: Vec<CheckReport>) -> CheckReport {
    let mut out = CheckReport::new(axiom);
    for part in parts {
        out.merge(part);
    }
    out
}

/// The group of the run, with the configured caps.
pub fn configured(raag: Raag, config: &RunConfig) -> Raag {
    raag.with_limits(Limits { interval_cap: config.interval_cap, conjugate_cap: config.conj_cap, ..Limits::default() })
}

pub fn is_suite(name: &str) -> bool {
    name == "all" || SUITES.contains(&name) || ORACLE_SUITES.contains(&name)
}

/// Runs `suite` (or every suite of [`SUITES`] for `all`) on `raag`.
pub fn run(raag: &Raag, config: &RunConfig, suite: &str) -> Option<Report> {
    let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite] };
    let runner = Runner::new(raag, config);
    let mut suites = Vec::new();
    for name in names {
        let checks = match name {
            "median-axioms" => median_axioms(&runner),
            "agroup-axioms" => agroup_axioms(&runner),
            "cyclic" => cyclic(&runner),
            "preorder" => preorder(&runner),
            "folding" => folding(&runner),
            "qdir" => qdir(&runner),
            "structure" => structure(&runner),
            "order-oracle" => order_oracle(&runner),
            "conj-oracle" => conj_oracle(&runner),
            "qdir-oracle" => qdir_oracle(&runner),
            _ => return None,
        };
        suites.push(SuiteReport { suite: name.to_string(), checks });
    }
    Some(Report::new(suites))
}

pub fn median_axioms(r: &Runner) -> Vec<CheckReport> {
    let g = r.raag;
    vec![
        r.sampled("median.symmetry", r.samples(), |s| {
            let (x, y, z) = (s.element(), s.element(), s.element());
            let m = g.median(&x, &y, &z);
            let perms = [(&x, &z, &y), (&y, &x, &z), (&y, &z, &x), (&z, &x, &y), (&z, &y, &x)];
            let ok = perms.iter().all(|(a, b, c)| g.median(a, b, c) == m);
            Inputs::new(g).el("x", &x).el("y", &y).el("z", &z).verdict(ok)
        }),
        r.sampled("median.absorption", r.samples(), |s| {
            let (x, y) = (s.element(), s.element());
            Inputs::new(g).el("x", &x).el("y", &y).verdict(g.median(&x, &y, &x) == x)
        }),
        r.sampled("median.self-distributive", r.samples(), |s| {
            let [x, y, z, u, v] = [(); 5].map(|_| s.element());
            let lhs = g.median(&g.median(&x, &y, &z), &u, &v);
            let rhs = g.median(&g.median(&x, &u, &v), &y, &g.median(&z, &u, &v));
            Inputs::new(g).el("x", &x).el("y", &y).el("z", &z).el("u", &u).el("v", &v).verdict(lhs == rhs)
        }),
    ]
}

/// `x` together with an element orthogonal to it, or a random partner.
fn orthogonal_partner(s: &mut Sampler, x: &Element) -> Element {
    if s.coin() {
        let mask = s.raag.s_perp_set(x);
        s.element_in(mask, s.max_len)
    } else {
        s.element()
    }
}

pub fn agroup_axioms(r: &Runner) -> Vec<CheckReport> {
    let g = r.raag;
    vec![
        r.sampled("agroup.a1", r.samples(), |s| {
            let hit = find(s, |s| {
                let (x, t) = (s.element(), s.element());
                let y = match s.int(0..=2) {
                    0 => g.product([&x, &t, &x]),
                    1 => g.mul(&t, &x),
                    _ => s.element(),
                };
                let hyp = g.join(&x, &y).is_some() && g.is_prefix(&g.inv(&x), &g.inv(&y));
                hyp.then_some((x, y))
            });
            let Some((x, y)) = hit else { return Outcome::Inconclusive };
            Inputs::new(g).el("x", &x).el("y", &y).verdict(g.is_prefix(&x, &y))
        }),
        r.sampled("agroup.a2", r.samples(), |s| {
            let hit = find(s, |s| {
                let (x, y, z) = (s.element(), s.element(), s.element());
                let hyp = g.meet(&x, &y).is_identity()
                    && g.meet(&g.inv(&x), &z).is_identity()
                    && g.meet(&g.inv(&y), &z).is_identity();
                hyp.then_some((x, y, z))
            });
            let Some((x, y, z)) = hit else { return Outcome::Inconclusive };
            let ok = g.is_prefix(&g.meet(&g.mul(&x, &z), &g.mul(&y, &z)), &z);
            Inputs::new(g).el("x", &x).el("y", &y).el("z", &z).verdict(ok)
        }),
        r.sampled("agroup.a3", r.samples(), |s| {
            let x = s.element();
            let ok = g.join(&x, &g.inv(&x)).is_none() || g.pow(&x, 2).is_identity();
            Inputs::new(g).el("x", &x).verdict(ok)
        }),
        r.sampled("agroup.a4", r.samples(), |s| {
            let x = s.element();
            let ok = g.join(&x, &g.inv(&x)).is_none() || x.is_identity();
            Inputs::new(g).el("x", &x).verdict(ok)
        }),
        r.sampled("agroup.perp-law", r.samples(), |s| {
            let hit = find(s, |s| {
                let x = s.element();
                let y = orthogonal_partner(s, &x);
                g.is_orthogonal(&x, &y).then_some((x, y))
            });
            let Some((x, y)) = hit else { return Outcome::Inconclusive };
            let xy = g.mul(&x, &y);
            let ok = g.join(&x, &y).as_ref() == Some(&xy) && xy == g.mul(&y, &x);
            Inputs::new(g).el("x", &x).el("y", &y).verdict(ok)
        }),
        r.sampled("agroup.orthogonal-fast-path", r.samples(), |s| {
            let x = s.element();
            let y = orthogonal_partner(s, &x);
            let ok = g.is_orthogonal(&x, &y) == g.is_orthogonal_by_definition(&x, &y);
            Inputs::new(g).el("x", &x).el("y", &y).verdict(ok)
        }),
    ]
}

pub fn cyclic(r: &Runner) -> Vec<CheckReport> {
    let g = r.raag;
    vec![
        r.sampled("cyclic.reduction", r.samples(), |s| {
            let w = s.element();
            let c = g.cyclic_reduce(&w);
            let ok = g.is_cyclically_reduced(&c.core)
                && g.product([&c.conjugator, &c.core, &g.inv(&c.conjugator)]) == w
                && w.len() == 2 * c.conjugator.len() + c.core.len()
                && c.conjugator == g.meet(&w, &g.inv(&w));
            Inputs::new(g).el("w", &w).verdict(ok)
        }),
        r.sampled("cyclic.power-meet", r.samples(), |s| {
            let w = s.element();
            let (n, m) = (s.int(1..=4), s.int(1..=4));
            let ok = g.meet(&g.pow(&w, n), &g.pow(&w, -m)) == g.meet(&w, &g.inv(&w));
            Inputs::new(g).el("w", &w).int("n", n).int("m", m).verdict(ok)
        }),
        r.sampled("cyclic.power-reduced", r.samples(), |s| {
            let w = s.element();
            let n = *s.pick(&[-3, -2, -1, 1, 2, 3]);
            let ok = g.is_cyclically_reduced(&g.pow(&w, n)) == g.is_cyclically_reduced(&w);
            Inputs::new(g).el("w", &w).int("n", n).verdict(ok)
        }),
        r.sampled("cyclic.torsion-free", r.samples(), |s| {
            let w = s.nontrivial();
            let n = s.int(2..=4);
            Inputs::new(g).el("w", &w).int("n", n).verdict(!g.pow(&w, n).is_identity())
        }),
        r.sampled("cyclic.power-length", r.samples(), |s| {
            let w = s.element();
            let n = s.int(1..=5);
            let c = g.cyclic_reduce(&w);
            let expected = 2 * c.conjugator.len() + n as usize * c.core.len();
            Inputs::new(g).el("w", &w).int("n", n).verdict(g.pow(&w, n).len() == expected)
        }),
        r.sampled("cyclic.root-of-power", r.samples(), |s| {
            let x = s.element();
            let m = s.int(1..=4);
            let ok = g.mth_root(&g.pow(&x, m), m as usize).as_ref() == Some(&x);
            Inputs::new(g).el("x", &x).int("m", m).verdict(ok)
        }),
        r.sampled("cyclic.max-root", r.samples(), |s| {
            let w = s.nontrivial();
            let inputs = Inputs::new(g).el("w", &w);
            inputs.verdict_of(g.max_root(&w).and_then(|(p, m)| Ok(g.pow(&p, m as i64) == w && g.max_root(&p)?.1 == 1)))
        }),
        r.sampled("cyclic.conjugate-certificate", r.samples(), |s| {
            let (w, x) = (s.element(), s.element());
            let w2 = g.conjugate(&x, &w);
            let inputs = Inputs::new(g).el("w1", &w).el("w2", &w2);
            inputs.verdict_of(
                g.conjugacy_witness(&w, &w2)
                    .map(|cert| cert.is_some_and(|c| g.verify_conjugator(&w, &w2, &c.conjugator))),
            )
        }),
    ]
}

/// A candidate `y` likely to satisfy `x ⪯_w y`.
fn upper_candidate(s: &mut Sampler, ctx: &AxisContext, x: &Element) -> Element {
    let g = s.raag;
    match s.int(0..=4) {
        0 => s.element(),
        1 => ctx.shift(1, x),
        2 => ctx.fold_phi(x),
        3 => {
            let n = s.int(1..=3);
            ctx.shift(n, &ctx.fold_phi(x))
        }
        _ => {
            let wx = g.mul(ctx.w(), x);
            s.in_interval(x, &wx)
        }
    }
}

/// `x·t` with `t ⊥ x⁻¹wx`, so that the result is `∼_w`-related to `x`.
fn sim_partner(s: &mut Sampler, ctx: &AxisContext, x: &Element) -> Element {
    let g = s.raag;
    let mask = g.s_perp_set(&g.product([&g.inv(x), ctx.w(), x]));
    let t = s.element_in(mask, s.max_len);
    g.mul(x, &t)
}

pub fn preorder(r: &Runner) -> Vec<CheckReport> {
    let g = r.raag;
    vec![
        r.sampled("preorder.reflexive", r.samples(), |s| {
            let (w, x) = (s.element(), s.element());
            Inputs::new(g).el("w", &w).el("x", &x).verdict(g.axis(&w).preceq(&x, &x))
        }),
        r.sampled("preorder.transitive", r.samples(), |s| {
            let w = s.element();
            let ctx = g.axis(&w);
            let hit = find(s, |s| {
                let x = s.element();
                let y = upper_candidate(s, &ctx, &x);
                let z = upper_candidate(s, &ctx, &y);
                (ctx.preceq(&x, &y) && ctx.preceq(&y, &z)).then_some((x, y, z))
            });
            let Some((x, y, z)) = hit else { return Outcome::Inconclusive };
            Inputs::new(g).el("w", &w).el("x", &x).el("y", &y).el("z", &z).verdict(ctx.preceq(&x, &z))
        }),
        r.sampled("preorder.symmetrization", r.samples(), |s| {
            let (w, x) = (s.element(), s.element());
            let ctx = g.axis(&w);
            let y = if s.coin() { sim_partner(s, &ctx, &x) } else { s.element() };
            let ok = ctx.sim(&x, &y) == (ctx.preceq(&x, &y) && ctx.preceq(&y, &x));
            Inputs::new(g).el("w", &w).el("x", &x).el("y", &y).verdict(ok)
        }),
        r.sampled("preorder.sim-cells", r.samples(), |s| {
            let (w, x) = (s.element(), s.element());
            let ctx = g.axis(&w);
            let y = if s.coin() { sim_partner(s, &ctx, &x) } else { s.element() };
            let cells = g.interval(&x, &g.mul(&w, &y)).and_then(|a| {
                let b = g.interval(&y, &g.mul(&w, &x))?;
                Ok(a.elements == b.elements)
            });
            let inputs = Inputs::new(g).el("w", &w).el("x", &x).el("y", &y);
            inputs.verdict_of(cells.map(|same| same == ctx.sim(&x, &y)))
        }),
        r.sampled("preorder.equivariant", r.samples(), |s| {
            let (w, x, z) = (s.element(), s.element(), s.element());
            let ctx = g.axis(&w);
            let y = upper_candidate(s, &ctx, &x);
            let moved = g.axis(&g.conjugate(&z, &w));
            let ok = ctx.preceq(&x, &y) == moved.preceq(&g.mul(&z, &x), &g.mul(&z, &y));
            Inputs::new(g).el("w", &w).el("x", &x).el("y", &y).el("z", &z).verdict(ok)
        }),
        r.sampled("preorder.convex", r.samples(), |s| {
            let w = s.element();
            let ctx = g.axis(&w);
            let hit = find(s, |s| {
                let x = s.element();
                let y = upper_candidate(s, &ctx, &x);
                ctx.preceq(&x, &y).then_some((x, y))
            });
            let Some((x, y)) = hit else { return Outcome::Inconclusive };
            let z = s.in_interval(&x, &y);
            let ok = ctx.preceq(&x, &z) && ctx.preceq(&z, &y);
            Inputs::new(g).el("w", &w).el("x", &x).el("y", &y).el("z", &z).verdict(ok)
        }),
        r.sampled("preorder.congruence", r.samples(), |s| {
            let w = s.element();
            let ctx = g.axis(&w);
            let hit = find(s, |s| {
                let y = s.element();
                let x = upper_candidate(s, &ctx, &y);
                ctx.preceq(&y, &x).then_some((x, y))
            });
            let Some((x, y)) = hit else { return Outcome::Inconclusive };
            let (a, b) = (s.element(), s.element());
            let ok = ctx.preceq(&g.median(&a, &b, &y), &g.median(&a, &b, &x));
            Inputs::new(g).el("w", &w).el("x", &x).el("y", &y).el("a", &a).el("b", &b).verdict(ok)
        }),
        r.sampled("preorder.powers", r.samples(), |s| {
            let (w, x) = (s.element(), s.element());
            let ctx = g.axis(&w);
            let y = upper_candidate(s, &ctx, &x);
            let n = s.int(2..=3);
            let ok = ctx.preceq(&x, &y) == g.axis(&g.pow(&w, n)).preceq(&x, &y);
            Inputs::new(g).el("w", &w).el("x", &x).el("y", &y).int("n", n).verdict(ok)
        }),
    ]
}

/// Either a random element or a point of the axis.
fn maybe_on_axis(s: &mut Sampler, ctx: &AxisContext) -> Element {
    let x = s.element();
    if s.coin() {
        ctx.fold_phi(&x)
    } else {
        x
    }
}

fn cyclic_core(s: &mut Sampler) -> Element {
    let w = s.element();
    s.raag.cyclic_reduce(&w).core
}

fn nontrivial_core(s: &mut Sampler) -> Element {
    loop {
        let w = s.raag.cyclic_reduce(&s.nontrivial()).core;
        if !w.is_identity() {
            return w;
        }
    }
}

pub fn folding(r: &Runner) -> Vec<CheckReport> {
    let g = r.raag;
    vec![
        r.sampled("folding.idempotent", r.samples(), |s| {
            let (w, x) = (s.element(), s.element());
            let ctx = g.axis(&w);
            let fx = ctx.fold_phi(&x);
            Inputs::new(g).el("w", &w).el("x", &x).verdict(ctx.fold_phi(&fx) == fx)
        }),
        r.sampled("folding.fixed-points", r.samples(), |s| {
            let w = s.element();
            let ctx = g.axis(&w);
            let x = maybe_on_axis(s, &ctx);
            let ok = ctx.in_axis(&x) == g.is_cyclically_reduced(&g.product([&g.inv(&x), &w, &x]));
            Inputs::new(g).el("w", &w).el("x", &x).verdict(ok)
        }),
        r.sampled("folding.image", r.samples(), |s| {
            let (w, x) = (s.element(), s.element());
            let ctx = g.axis(&w);
            Inputs::new(g).el("w", &w).el("x", &x).verdict(ctx.in_axis(&ctx.fold_phi(&x)))
        }),
        r.sampled("folding.prefix", r.samples(), |s| {
            let (w, x) = (cyclic_core(s), s.element());
            let ok = g.is_prefix(&g.axis(&w).fold_phi(&x), &x);
            Inputs::new(g).el("w", &w).el("x", &x).verdict(ok)
        }),
        r.sampled("folding.median-law", r.samples(), |s| {
            let [w, x, y, z] = [(); 4].map(|_| s.element());
            let ctx = g.axis(&w);
            let ok = ctx.fold_phi(&g.median(&x, &y, &z)) == g.median(&ctx.fold_phi(&x), &y, &ctx.fold_phi(&z));
            Inputs::new(g).el("w", &w).el("x", &x).el("y", &y).el("z", &z).verdict(ok)
        }),
        r.sampled("folding.gate", r.samples(), |s| {
            let w = s.element();
            let ctx = g.axis(&w);
            let c = ctx.fold_phi(&s.element());
            let x = s.element();
            let inputs = Inputs::new(g).el("w", &w).el("c", &c).el("x", &x);
            inputs.verdict_of(g.interval(&c, &x).and_then(|cell| {
                let on_axis: Vec<Element> = cell.elements.into_iter().filter(|z| ctx.in_axis(z)).collect();
                Ok(on_axis == g.interval(&c, &ctx.fold_phi(&x))?.elements)
            }))
        }),
        r.sampled("folding.shift-meet", r.samples(), |s| {
            let (w, x) = (cyclic_core(s), s.element());
            let m = g.meet(&g.mul(&w, &x), &g.mul(&g.inv(&w), &x));
            Inputs::new(g).el("w", &w).el("x", &x).verdict(g.is_prefix(&m, &x))
        }),
        r.sampled("folding.sim-closed", r.samples(), |s| {
            let w = s.element();
            let ctx = g.axis(&w);
            let x = ctx.fold_phi(&s.element());
            let y = sim_partner(s, &ctx, &x);
            if !ctx.sim(&x, &y) {
                return Outcome::Inconclusive;
            }
            Inputs::new(g).el("w", &w).el("x", &x).el("y", &y).verdict(ctx.in_axis(&y))
        }),
        r.sampled("folding.reversal", r.samples(), |s| {
            let w = s.element();
            let ctx = g.axis(&w);
            let x = ctx.fold_phi(&s.element());
            let y = ctx.fold_phi(&upper_candidate(s, &ctx, &x));
            let ok = ctx.preceq(&x, &y) == ctx.inverse().preceq(&y, &x);
            Inputs::new(g).el("w", &w).el("x", &x).el("y", &y).verdict(ok)
        }),
        r.sampled("folding.ll-shift", r.samples(), |s| {
            let w = s.element();
            let ctx = g.axis(&w);
            let x = ctx.fold_phi(&s.element());
            Inputs::new(g).el("w", &w).el("x", &x).verdict_of(ctx.ll(&x, &g.mul(&w, &x)))
        }),
        r.sampled("folding.powers", r.samples(), |s| {
            let (w, x) = (s.element(), s.element());
            let n = *s.pick(&[-3, -2, -1, 2, 3]);
            let ok = g.axis(&g.pow(&w, n)).fold_phi(&x) == g.axis(&w).fold_phi(&x);
            Inputs::new(g).el("w", &w).el("x", &x).int("n", n).verdict(ok)
        }),
        r.sampled("folding.ll-fold", r.samples(), |s| {
            let (w, x) = (s.element(), s.element());
            let ctx = g.axis(&w);
            Inputs::new(g).el("w", &w).el("x", &x).verdict_of(ctx.ll(&x, &ctx.fold_phi(&x)))
        }),
        r.sampled("folding.centralizer-equivariant", r.samples(), |s| {
            let (w, y) = (s.element(), s.element());
            let ctx = g.axis(&w);
            let gens: Vec<Element> = match g.centralizer(&w) {
                Ok(z) => z.generators().cloned().collect(),
                Err(e) => return Inputs::new(g).el("w", &w).verdict_of(Err(e)),
            };
            let mut t = g.identity();
            for _ in 0..s.int(0..=3) {
                let e = s.pick(&gens).clone();
                t = g.mul(&t, &if s.coin() { e } else { g.inv(&e) });
            }
            let ok = ctx.fold_phi(&g.mul(&t, &y)) == g.mul(&t, &ctx.fold_phi(&y));
            Inputs::new(g).el("w", &w).el("t", &t).el("y", &y).verdict(ok)
        }),
    ]
}

pub fn qdir(r: &Runner) -> Vec<CheckReport> {
    let g = r.raag;
    let short = |s: &mut Sampler, n: usize| s.element_up_to(n.min(s.max_len));
    vec![
        r.sampled("qdir.oracle", r.samples(), |s| {
            let w = short(s, 2);
            let (x, y) = (short(s, 3), short(s, 3));
            let ctx = g.axis(&w);
            let inputs = Inputs::new(g).el("w", &w).el("x", &x).el("y", &y);
            inputs.verdict_of(g.oracle_qdir(&x, &y, |p, q| ctx.preceq(p, q)).map(|o| o == ctx.qdir(&x, &y)))
        }),
        r.sampled("qdir.in-cell", r.samples(), |s| {
            let [w, x, y] = [(); 3].map(|_| s.element());
            let ok = g.in_interval(&x, &g.axis(&w).qdir(&x, &y), &y);
            Inputs::new(g).el("w", &w).el("x", &x).el("y", &y).verdict(ok)
        }),
        r.sampled("qdir.band-idempotent", r.samples(), |s| {
            let (w, x) = (s.element(), s.element());
            Inputs::new(g).el("w", &w).el("x", &x).verdict(g.axis(&w).qdir(&x, &x) == x)
        }),
        r.sampled("qdir.band-associative", r.samples(), |s| {
            let [w, a, b, c] = [(); 4].map(|_| s.element());
            let q = g.axis(&w);
            let ok = q.qdir(&q.qdir(&a, &b), &c) == q.qdir(&a, &q.qdir(&b, &c));
            Inputs::new(g).el("w", &w).el("a", &a).el("b", &b).el("c", &c).verdict(ok)
        }),
        r.sampled("qdir.band-swap", r.samples(), |s| {
            let [w, a, b, c] = [(); 4].map(|_| s.element());
            let q = g.axis(&w);
            let ok = q.qdir(&q.qdir(&a, &b), &c) == q.qdir(&q.qdir(&a, &c), &b);
            Inputs::new(g).el("w", &w).el("a", &a).el("b", &b).el("c", &c).verdict(ok)
        }),
        r.sampled("qdir.band-left-folding", r.samples(), |s| {
            let [w, a, x, y, z] = [(); 5].map(|_| s.element());
            let q = g.axis(&w);
            let ok = q.qdir(&a, &g.median(&x, &y, &z)) == g.median(&q.qdir(&a, &x), &y, &q.qdir(&a, &z));
            Inputs::new(g).el("w", &w).el("a", &a).el("x", &x).el("y", &y).el("z", &z).verdict(ok)
        }),
        r.sampled("qdir.band-right-folding", r.samples(), |s| {
            let [w, a, x, y, z] = [(); 5].map(|_| s.element());
            let q = g.axis(&w);
            let ok = q.qdir(&g.median(&x, &y, &z), &a) == g.median(&q.qdir(&x, &a), &y, &q.qdir(&z, &a));
            Inputs::new(g).el("w", &w).el("a", &a).el("x", &x).el("y", &y).el("z", &z).verdict(ok)
        }),
        r.sampled("qdir.band-median-absorption", r.samples(), |s| {
            let [w, x, y, z] = [(); 4].map(|_| s.element());
            let q = g.axis(&w);
            let ok = q.qdir(&g.median(&x, &y, &z), &x) == g.median(&x, &y, &q.qdir(&z, &x));
            Inputs::new(g).el("w", &w).el("x", &x).el("y", &y).el("z", &z).verdict(ok)
        }),
        r.sampled("qdir.equiv-commute", r.samples(), |s| {
            let [w, x, y] = [(); 3].map(|_| s.element());
            let q = g.axis(&w);
            let commute = q.qdir(&x, &y) == q.qdir(&y, &x);
            let inputs = Inputs::new(g).el("w", &w).el("x", &x).el("y", &y);
            inputs.verdict_of(q.equiv(&x, &y).map(|e| e == commute))
        }),
        r.sampled("qdir.slice-orbit", r.samples(), |s| {
            let w = s.element();
            let ctx = g.axis(&w);
            let a = ctx.fold_phi(&s.element());
            let n = s.int(-3..=3);
            let inputs = Inputs::new(g).el("w", &w).el("a", &a).int("n", n);
            inputs.verdict_of(ctx.in_axis_slice(&a, &ctx.shift(n, &a)))
        }),
        r.sampled("qdir.psi-folding", r.samples(), |s| {
            let (w, x) = (s.element(), s.element());
            let ctx = g.axis(&w);
            let a = ctx.fold_phi(&s.element());
            let inputs = Inputs::new(g).el("w", &w).el("a", &a).el("x", &x);
            inputs.verdict_of(
                ctx.psi_fold(&a, &x).and_then(|z| Ok(ctx.in_axis_slice(&a, &z)? && ctx.psi_fold(&a, &z)? == z)),
            )
        }),
        r.sampled("qdir.slice-fixed", r.samples(), |s| {
            let w = s.element();
            let ctx = g.axis(&w);
            let a = ctx.fold_phi(&s.element());
            let n = s.int(1..=3);
            let x = s.in_interval(&ctx.shift(-n, &a), &ctx.shift(n, &a));
            let inputs = Inputs::new(g).el("w", &w).el("a", &a).el("x", &x);
            inputs.verdict_of(ctx.in_axis_slice(&a, &x).and_then(|inside| Ok(inside && ctx.psi_fold(&a, &x)? == x)))
        }),
        r.sampled("qdir.decompose", r.samples(), |s| {
            let w = s.element();
            let ctx = g.axis(&w);
            let a = ctx.fold_phi(&s.element());
            let x = ctx.fold_phi(&s.element());
            let inputs = Inputs::new(g).el("w", &w).el("a", &a).el("x", &x);
            inputs.verdict_of(ctx.decompose_axis(&a, &x).and_then(|(y, z)| {
                let a_inv = g.inv(&a);
                Ok(g.product([&y, &a_inv, &z]) == x
                    && g.product([&z, &a_inv, &y]) == x
                    && ctx.sim(&y, &a)
                    && ctx.in_axis_slice(&a, &z)?)
            }))
        }),
        r.sampled("qdir.centralizer-bracket", r.samples(), |s| {
            let w = s.element();
            let ctx = g.axis(&w);
            let a = ctx.fold_phi(&s.element());
            let x = ctx.fold_phi(&s.element());
            let inputs = Inputs::new(g).el("w", &w).el("a", &a).el("x", &x);
            inputs.verdict_of(ctx.centralizer_bracket(&a, &x).map(|(u, v)| {
                g.commute(&u, &w) && g.commute(&v, &w) && g.in_interval(&g.mul(&u, &a), &x, &g.mul(&v, &a))
            }))
        }),
        r.sampled("qdir.direction-formula", r.samples(), |s| {
            let w = s.element_up_to(s.max_len / 2);
            let [a, x, y] = [(); 3].map(|_| s.element());
            let q = g.axis(&w);
            let expected = g.internal_join(&a, &q.qdir(&x, &y), &q.qdir(&y, &x));
            let ok = q.dir_join(&a, &x, &y) == expected && q.dir_join(&q.fold_phi(&a), &x, &y) == expected;
            Inputs::new(g).el("w", &w).el("a", &a).el("x", &x).el("y", &y).verdict(ok)
        }),
        r.sampled("qdir.direction-semilattice", r.samples(), |s| {
            let w = s.element_up_to(s.max_len / 2);
            let [a, x, y, z] = [(); 4].map(|_| s.element());
            let q = g.axis(&w);
            let j = |p: &Element, r: &Element| q.dir_join(&a, p, r);
            let ok = j(&x, &x) == x && j(&x, &y) == j(&y, &x) && j(&j(&x, &y), &z) == j(&x, &j(&y, &z));
            Inputs::new(g).el("w", &w).el("a", &a).el("x", &x).el("y", &y).el("z", &z).verdict(ok)
        }),
    ]
}

/// The multiset of pairs of a decomposition, as a sorted list.
fn pair_set(d: &raag_core::PrimitiveDecomposition) -> Vec<(Element, usize)> {
    let mut pairs = d.pairs.clone();
    pairs.sort();
    pairs
}

/// Elements of the subgroup generated by `gens` reachable through words
/// whose partial products stay within length `radius`.
fn bounded_subgroup(g: &Raag, gens: &[Element], radius: usize) -> BTreeSet<Element> {
    let steps: Vec<Element> = gens.iter().flat_map(|e| [e.clone(), g.inv(e)]).collect();
    let mut seen = BTreeSet::from([g.identity()]);
    let mut frontier = vec![g.identity()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for e in &steps {
                let y = g.mul(x, e);
                if y.len() <= radius && seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    seen
}

pub fn structure(r: &Runner) -> Vec<CheckReport> {
    let g = r.raag;
    let ball2 = r.ball(2);
    let ball3 = r.ball(3);
    let decompose = |w: &Element| g.prim_decompose(w).expect("nontrivial input");
    let mut out = vec![
        r.sampled("structure.round-trip", r.samples(), |s| {
            let w = s.nontrivial();
            Inputs::new(g).el("w", &w).verdict(g.recompose(&decompose(&w)) == w)
        }),
        r.sampled("structure.primitive-factors", r.samples(), |s| {
            let w = s.nontrivial();
            let d = decompose(&w);
            let a_inv = g.inv(&d.conjugator);
            let cores: Vec<Element> = d.primitives().map(|p| g.product([&a_inv, p, &d.conjugator])).collect();
            let orthogonal =
                (0..cores.len()).all(|i| (i + 1..cores.len()).all(|j| g.is_orthogonal(&cores[i], &cores[j])));
            let sorted = d.pairs.windows(2).all(|p| p[0].0.letters() < p[1].0.letters());
            let ok = orthogonal && sorted && d.primitives().all(|p| g.is_primitive(p));
            Inputs::new(g).el("w", &w).verdict(ok)
        }),
        r.sampled("structure.conjugate-equivariance", r.samples(), |s| {
            let (w, x) = (s.nontrivial(), s.element());
            let moved = decompose(&g.conjugate(&x, &w));
            let mut expected = decompose(&w);
            for (p, _) in &mut expected.pairs {
                *p = g.conjugate(&x, p);
            }
            Inputs::new(g).el("w", &w).el("x", &x).verdict(pair_set(&moved) == pair_set(&expected))
        }),
        r.sampled("structure.primitive-fast-path", r.samples(), |s| {
            let w = s.element();
            let inputs = Inputs::new(g).el("w", &w);
            inputs.verdict_of(g.is_primitive_by_boundary(&w).map(|b| b == g.is_primitive(&w)))
        }),
        r.sampled("structure.max-root", r.samples(), |s| {
            let w = s.nontrivial();
            let inputs = Inputs::new(g).el("w", &w);
            inputs.verdict_of(g.max_root(&w).and_then(|(p, m)| Ok(g.pow(&p, m as i64) == w && g.max_root(&p)?.1 == 1)))
        }),
        r.sampled("structure.root-centralizer", r.samples(), |s| {
            let w = s.element();
            let m = s.int(2..=3);
            let wm = g.pow(&w, m);
            let ok = ball3.iter().all(|x| g.in_centralizer(&wm, x) == g.in_centralizer(&w, x));
            Inputs::new(g).el("w", &w).int("m", m).verdict(ok)
        }),
    ];
    let mut firsts: HashMap<(i64, Element), Element> = HashMap::new();
    let items: Vec<(i64, Element)> = [2, 3].iter().flat_map(|&m| ball2.iter().map(move |x| (m, x.clone()))).collect();
    for (m, x) in &items {
        firsts.entry((*m, g.pow(x, *m))).or_insert_with(|| x.clone());
    }
    out.push(r.exhaustive("structure.unique-roots", &items, |(m, x)| {
        Inputs::new(g).el("x", x).int("m", *m).verdict(firsts[&(*m, g.pow(x, *m))] == *x)
    }));
    out.extend([
        r.sampled("structure.axis-intersection", r.samples(), |s| {
            let w = s.nontrivial();
            let ctx = g.axis(&w);
            let x = maybe_on_axis(s, &ctx);
            let ok = ctx.in_axis(&x) == decompose(&w).primitives().all(|p| g.axis(p).in_axis(&x));
            Inputs::new(g).el("w", &w).el("x", &x).verdict(ok)
        }),
        r.sampled("structure.fold-composition", r.samples(), |s| {
            let (w, x) = (s.nontrivial(), s.element());
            let prims: Vec<Element> = decompose(&w).primitives().cloned().collect();
            let compose =
                |order: &mut dyn Iterator<Item = &Element>| order.fold(x.clone(), |acc, p| g.axis(p).fold_phi(&acc));
            let phi = g.axis(&w).fold_phi(&x);
            let ok = compose(&mut prims.iter()) == phi && compose(&mut prims.iter().rev()) == phi;
            Inputs::new(g).el("w", &w).el("x", &x).verdict(ok)
        }),
        r.sampled("structure.preorder-intersection", r.samples(), |s| {
            let (w, x) = (s.nontrivial(), s.element());
            let ctx = g.axis(&w);
            let y = upper_candidate(s, &ctx, &x);
            let ok = ctx.preceq(&x, &y) == decompose(&w).primitives().all(|p| g.axis(p).preceq(&x, &y));
            Inputs::new(g).el("w", &w).el("x", &x).el("y", &y).verdict(ok)
        }),
        r.sampled("structure.centralizer-sound", r.samples(), |s| {
            let w = s.element();
            let inputs = Inputs::new(g).el("w", &w);
            inputs.verdict_of(g.centralizer(&w).map(|z| {
                let abelian_ok =
                    w.is_identity() || z.abelian_generators == decompose(&w).primitives().cloned().collect::<Vec<_>>();
                abelian_ok && z.generators().all(|e| g.commute(e, &w))
            }))
        }),
        r.sampled("structure.centralizer-complete", r.samples(), |s| {
            let w = s.element();
            let gens: Vec<Element> = match g.centralizer(&w) {
                Ok(z) => z.generators().cloned().collect(),
                Err(e) => return Inputs::new(g).el("w", &w).verdict_of(Err(e)),
            };
            let members = bounded_subgroup(g, &gens, 5);
            let commuting = ball3.iter().filter(|x| g.commute(x, &w));
            let missing = commuting.clone().find(|x| !members.contains(*x));
            match missing {
                None => Outcome::Pass,
                Some(_) => Outcome::Inconclusive,
            }
        }),
        r.sampled("structure.commuting-sublattice", r.samples(), |s| {
            let x = s.element();
            let inputs = Inputs::new(g).el("x", &x);
            inputs.verdict_of(g.interval(&g.identity(), &x).map(|cell| {
                let inside: BTreeSet<&Element> = cell.elements.iter().filter(|y| g.commute(y, &x)).collect();
                inside.iter().all(|y| {
                    inside.iter().all(|z| inside.contains(&g.meet(y, z)) && inside.contains(&g.median(y, &x, z)))
                })
            }))
        }),
        r.sampled("structure.orthogonal-commuting", r.samples(), |s| {
            let w = s.element();
            let hit = find(s, |s| {
                let (x, y) = (s.prefix_of(&w), s.prefix_of(&w));
                g.is_orthogonal(&x, &y).then_some((x, y))
            });
            let Some((x, y)) = hit else { return Outcome::Inconclusive };
            let ok = g.commute(&g.mul(&x, &y), &w) == (g.commute(&x, &w) && g.commute(&y, &w));
            Inputs::new(g).el("w", &w).el("x", &x).el("y", &y).verdict(ok)
        }),
        r.sampled("structure.h-basis", r.samples(), |s| {
            let w = nontrivial_core(s);
            let ctx = g.axis(&w);
            let one = g.identity();
            let inputs = Inputs::new(g).el("w", &w);
            inputs.verdict_of(g.h_basis(&w).and_then(|basis| {
                for p in &basis {
                    if !g.commute(p, &w) || !ctx.in_axis_slice(&one, p)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }))
        }),
    ]);
    out
}

pub fn order_oracle(r: &Runner) -> Vec<CheckReport> {
    let g = r.raag;
    let ball = r.ball(3);
    let table = brute::IntervalTable::new(g, ball.clone());
    let uppers = brute::UpperSets::new(g, r.ball(6), &ball);
    let n = ball.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let el = |i: usize| &table.elements[i];
    vec![
        r.exhaustive("oracle.interval", &pairs, |&(i, j)| {
            let ok = match g.interval(el(i), el(j)) {
                Ok(cell) => cell.elements.iter().eq(table.cell(i, j).iter()),
                Err(_) => false,
            };
            Inputs::new(g).el("x", el(i)).el("y", el(j)).verdict(ok)
        }),
        r.exhaustive("oracle.meet", &pairs, |&(i, j)| {
            let ok = g.meet(el(i), el(j)) == brute::meet(g, el(i), el(j));
            Inputs::new(g).el("x", el(i)).el("y", el(j)).verdict(ok)
        }),
        r.exhaustive("oracle.join", &pairs, |&(i, j)| {
            let ok = g.join(el(i), el(j)) == uppers.join(g, el(i), el(j));
            Inputs::new(g).el("x", el(i)).el("y", el(j)).verdict(ok)
        }),
        r.exhaustive("oracle.median", &pairs, |&(i, j)| {
            let ok = (0..n).all(|k| Some(g.median(el(i), el(j), el(k))) == table.median(i, j, k));
            Inputs::new(g).el("x", el(i)).el("y", el(j)).verdict(ok)
        }),
    ]
}

pub fn conj_oracle(r: &Runner) -> Vec<CheckReport> {
    let g = r.raag;
    let ball = r.ball(3);
    let conjugators = r.ball(4);
    vec![r.exhaustive("oracle.conjugacy", &ball, |w1| {
        let brute = brute::conjugates(g, w1, &conjugators);
        for w2 in &ball {
            let inputs = Inputs::new(g).el("w1", w1).el("w2", w2);
            let ok = match g.conjugacy_witness(w1, w2) {
                Err(Error::CapExceeded { .. }) => return Outcome::Inconclusive,
                Err(_) => false,
                Ok(Some(c)) => g.verify_conjugator(w1, w2, &c.conjugator) && brute.contains(w2),
                Ok(None) => !brute.contains(w2),
            };
            if !ok {
                return inputs.verdict(false);
            }
        }
        Outcome::Pass
    })]
}

pub fn qdir_oracle(r: &Runner) -> Vec<CheckReport> {
    let g = r.raag;
    let ws = r.ball(2);
    let ball = r.ball(3);
    let items: Vec<(&Element, &Element)> = ws.iter().flat_map(|w| ball.iter().map(move |x| (w, x))).collect();
    vec![r.exhaustive("oracle.qdir", &items, |&(w, x)| {
        let ctx = g.axis(w);
        for y in &ball {
            let inputs = Inputs::new(g).el("w", w).el("x", x).el("y", y);
            let outcome = inputs.verdict_of(g.oracle_qdir(x, y, |p, q| ctx.preceq(p, q)).map(|o| o == ctx.qdir(x, y)));
            if outcome != Outcome::Pass {
                return outcome;
            }
        }
        Outcome::Pass
    })]
}
