//! Checks shared by the topic tests and the acceptance runner. Each returns an
//! [`Outcome`] instead of panicking so that the runner can report every criterion.

use std::collections::{BTreeMap, VecDeque};

use lilykernel::cores::{
    constraint_core_rc_dom, constraint_core_roman, constraint_core_total, reduce_annotated_lambda_mu,
    solution_core_scattered, CoreOptions, CoreResult, CoreSide,
};
use lilykernel::domination::{approx_dominating, approx_rc_dominating, RcApprox};
use lilykernel::error::Error;
use lilykernel::io::harness::{verify_suite, Case, PipelineReport};
use lilykernel::io::{generate, Family, GeneratorSpec};
use lilykernel::kernels::{multikernel_dom_ind, multikernel_domination_family, reduce, Params, Problem};
use lilykernel::oracle::Oracle;
use lilykernel::projections::{projection_kernel, verify_projection_kernel};
use lilykernel::wideness::{find_sigma_uniform_lily, find_uniform_lily, verify_lily};
use lilykernel::{vset, Graph, Vertex};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Default)]
pub struct Outcome {
    pub checked: usize,
    pub failures: Vec<String>,
    pub detail: String,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, msg: String) {
        self.failures.push(msg);
    }
}

fn spec_graph(family: Family, seed: u64) -> (String, Graph) {
    let spec = GeneratorSpec::new(family, seed);
    (spec.to_string(), generate(&spec).unwrap())
}

/// `small_graphs` plus more seeded random graphs, all with at most 14 vertices.
pub fn suite_graphs() -> Vec<(String, Graph)> {
    let mut out = super::small_graphs();
    for n in [7, 9, 11, 13, 14] {
        for d in [1, 2, 3] {
            for seed in 2..12 {
                out.push(spec_graph(Family::RandomDegenerate { n, d }, seed));
            }
        }
    }
    out
}

pub fn suite_cases() -> Vec<Case> {
    let mut out = Vec::new();
    for (name, graph) in suite_graphs() {
        for (problem, params) in super::settings() {
            out.push(Case {
                name: name.clone(),
                graph: graph.clone(),
                problem,
                params,
            });
        }
    }
    out
}

pub fn run_suite(cases: &[Case]) -> Vec<PipelineReport> {
    verify_suite(cases, &Oracle::with_guard(200), &CoreOptions::default())
        .into_iter()
        .zip(cases)
        .map(|(r, c)| r.unwrap_or_else(|e| panic!("{} {}: {e}", c.name, c.problem)))
        .collect()
}

fn label(r: &PipelineReport) -> String {
    let p = r.params;
    format!("{} {} r={} c={} [{},{}]", r.name, r.problem, p.r, p.c, p.lambda, p.mu)
}

/// Oracle agreement of original and bikernel (and gadget kernel) for every budget.
pub fn equivalence(reports: &[PipelineReport]) -> Outcome {
    let mut out = Outcome::default();
    let mut rows = 0;
    for r in reports {
        out.checked += 1;
        rows += r.rows.len();
        if let Some(row) = r.rows.iter().find(|row| !row.agrees()) {
            out.fail(format!("{} k={}: {row:?}", label(r), row.k));
        }
    }
    let graphs: std::collections::BTreeSet<_> = reports.iter().map(|r| r.name.as_str()).collect();
    out.detail = format!("{} graphs, {} cases, {rows} budgets", graphs.len(), out.checked);
    out
}

/// Gadget optimum equals annotated optimum plus the declared offset.
pub fn offsets(reports: &[PipelineReport]) -> Outcome {
    let mut out = Outcome::default();
    let mut finite = 0;
    for r in reports {
        let Some(o) = &r.offset else { continue };
        out.checked += 1;
        finite += o.annotated.is_some() as usize;
        if !o.holds() {
            out.fail(format!("{}: {o:?}", label(r)));
        }
    }
    out.detail = format!("{} gadget kernels, {finite} with finite optima", out.checked);
    out
}

fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..a {
        for v in 0..b {
            edges.push((u, a + v));
        }
    }
    Graph::from_edges(a + b, &edges).unwrap()
}

/// Small graphs plus symmetric ones on which lilies actually appear.
pub fn peel_graphs() -> Vec<(String, Graph)> {
    let mut out = super::small_graphs();
    for m in 3..=10 {
        out.push((format!("K2,{m}"), complete_bipartite(2, m)));
    }
    for (leaves, count) in [(5, 2), (4, 3), (3, 3), (6, 2), (3, 4)] {
        out.push((
            format!("{count}xK1,{leaves}"),
            super::copies(&super::star(leaves), count),
        ));
    }
    out
}

/// Removal order of a core trace.
pub fn removals(res: &CoreResult) -> Vec<Vertex> {
    res.trace.iter().flat_map(|p| p.removed.iter().copied()).collect()
}

/// After every single removal `opt(current) == opt(start)`; returns the peels done.
fn each_peel<F>(start: &[Vertex], removed: &[Vertex], opt: F) -> std::result::Result<usize, String>
where
    F: Fn(&[Vertex]) -> Option<usize>,
{
    let expected = opt(start);
    let mut current = start.to_vec();
    for &v in removed {
        current = vset::difference(&current, &[v]);
        let got = opt(&current);
        if got != expected {
            return Err(format!("after removing {v}: {got:?} instead of {expected:?}"));
        }
    }
    Ok(removed.len())
}

/// Peel safety of one core problem over [`peel_graphs`] with `r ∈ {1,2}`.
pub fn peel_safety(problem: Problem) -> Outcome {
    let o = Oracle::with_guard(64);
    let opts = CoreOptions::default();
    let mut out = Outcome::default();
    let mut peels = 0;
    for (name, g) in peel_graphs() {
        let all: Vec<Vertex> = g.vertices().collect();
        for r in [1, 2] {
            let mut runs: Vec<(String, std::result::Result<usize, String>)> = Vec::new();
            match problem {
                Problem::RcDom => {
                    for c in [1, 2] {
                        let res = match constraint_core_rc_dom(&g, r, c, &opts) {
                            Ok(res) => res,
                            Err(Error::Infeasible(_)) => {
                                let feasible = o.opt_rc_dom(&g, r, c, None).unwrap().is_feasible();
                                runs.push((
                                    format!("c={c}"),
                                    if feasible {
                                        Err("core refused a feasible instance".into())
                                    } else {
                                        Ok(0)
                                    },
                                ));
                                continue;
                            }
                            Err(e) => panic!("{name}: {e}"),
                        };
                        let run = each_peel(&all, &removals(&res), |l| {
                            o.opt_rc_dom(&g, r, c, Some(l)).unwrap().optimum
                        });
                        runs.push((format!("c={c}"), run));
                    }
                }
                Problem::Total => {
                    let res = constraint_core_total(&g, r, &opts).unwrap();
                    runs.push((
                        String::new(),
                        each_peel(&all, &removals(&res), |l| o.opt_total(&g, r, Some(l)).unwrap().optimum),
                    ));
                }
                Problem::Roman => {
                    let res = constraint_core_roman(&g, r, &opts).unwrap();
                    runs.push((
                        String::new(),
                        each_peel(&all, &removals(&res), |l| o.opt_roman(&g, r, Some(l)).unwrap().optimum),
                    ));
                }
                Problem::Scatter => {
                    for c in [1, 2] {
                        let res = solution_core_scattered(&g, r, c, &opts).unwrap();
                        let run = each_peel(&all, &removals(&res), |u| {
                            o.max_scattered(&g, r, c, Some(u)).unwrap().optimum
                        });
                        runs.push((format!("c={c}"), run));
                    }
                }
                Problem::LambdaMu => {
                    for (lambda, mu) in [(1, 1), (1, 2)] {
                        let Some(dhat) = approx_rc_dominating(&g, r, mu).unwrap().feasible() else {
                            continue;
                        };
                        let red = reduce_annotated_lambda_mu(&g, &all, &all, r, lambda, mu, &dhat.set, &opts).unwrap();
                        let expected = o.opt_lambda_mu(&g, r, lambda, mu, None, None).unwrap().optimum;
                        let (mut l, mut u) = (all.clone(), all.clone());
                        let mut run = Ok(0);
                        for peel in &red.trace {
                            match peel.side {
                                CoreSide::Constraints => l = vset::difference(&l, &peel.removed),
                                CoreSide::Candidates => u = vset::difference(&u, &peel.removed),
                            }
                            let got = o.opt_lambda_mu(&g, r, lambda, mu, Some(&l), Some(&u)).unwrap().optimum;
                            if got != expected {
                                run = Err(format!("after {:?}: {got:?} instead of {expected:?}", peel.removed));
                                break;
                            }
                            run = run.map(|p| p + 1);
                        }
                        runs.push((format!("[{lambda},{mu}]"), run));
                    }
                }
                Problem::PerfectCode => unreachable!("perfect codes reuse the lambda-mu core"),
            }
            for (tag, run) in runs {
                out.checked += 1;
                match run {
                    Ok(p) => peels += p,
                    Err(e) => out.fail(format!("{name} r={r} {tag}: {e}")),
                }
            }
        }
    }
    out.detail = format!("{} instances, {peels} peels", out.checked);
    out
}

pub fn multikernel_graphs() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for (w, h) in [(2, 2), (2, 3), (3, 3), (4, 3), (3, 4), (4, 4)] {
        out.push(spec_graph(Family::Grid { w, h }, 0));
    }
    for (count, legs, leg_len) in [
        (1, 5, 1),
        (2, 4, 1),
        (1, 6, 2),
        (2, 3, 2),
        (1, 4, 3),
        (3, 5, 1),
        (1, 9, 2),
        (2, 7, 2),
        (1, 10, 1),
    ] {
        out.push(spec_graph(Family::SpiderForest { count, legs, leg_len }, 0));
    }
    out
}

/// Every offset identity of both multikernels on `g`.
pub fn multikernel_identities(name: &str, g: &Graph, oracle: &Oracle, out: &mut Outcome) -> usize {
    let opts = CoreOptions::default();
    let mut outside = 0;
    let mut expect = |what: String, got: Option<usize>, want: Option<usize>| {
        out.checked += 1;
        if got != want {
            out.failures.push(format!("{name} {what}: {got:?} instead of {want:?}"));
        }
    };
    for r in [1, 2] {
        let (mk, off) = multikernel_domination_family(g, r, &opts).unwrap();
        outside += mk.outside.len();
        let h = &mk.graph;
        let dom = |g: &Graph| oracle.opt_rc_dom(g, r, 1, None).unwrap().optimum;
        let total = |g: &Graph| oracle.opt_total(g, r, None).unwrap().optimum;
        let roman = |g: &Graph| oracle.opt_roman(g, r, None).unwrap().optimum;
        expect(format!("c r={r}"), Some(off.c), Some(2 * mk.outside.len()));
        expect(format!("dom_{r}"), dom(h), dom(g).map(|v| v + off.dom));
        expect(format!("total_{r}"), total(h), total(g).map(|v| v + off.total));
        expect(format!("roman_{r}"), roman(h), roman(g).map(|v| v + off.roman));
    }
    let (mk, off) = multikernel_dom_ind(g, 1, 2, &opts).unwrap();
    outside += mk.outside.len();
    let h = &mk.graph;
    for &(r, c_r) in &off.per_radius {
        let dom = |g: &Graph| oracle.opt_rc_dom(g, r, 1, None).unwrap().optimum;
        let ind = |g: &Graph| oracle.max_scattered(g, r, 1, None).unwrap().optimum;
        expect(
            format!("c_{r}"),
            Some(c_r),
            Some(off.sigma / (2 * r as usize + 1) * mk.outside.len()),
        );
        expect(format!("dom_{r} (dom/ind)"), dom(h), dom(g).map(|v| v + c_r));
        expect(format!("ind_{}", 2 * r), ind(h), ind(g).map(|v| v + c_r));
    }
    outside
}

pub fn multikernels() -> Outcome {
    let oracle = Oracle::with_guard(1000);
    let mut out = Outcome::default();
    let mut with_gadgets = 0;
    let graphs = multikernel_graphs();
    for (name, g) in &graphs {
        with_gadgets += (multikernel_identities(name, g, &oracle, &mut out) > 0) as usize;
    }
    out.detail = format!(
        "{} graphs ({with_gadgets} with gadgets), {} identities",
        graphs.len(),
        out.checked
    );
    out
}

/// Distances from `s` up to `cap`; `blocked` vertices are reached but not expanded.
pub fn bfs(g: &Graph, s: Vertex, cap: u32, blocked: &[bool]) -> Vec<Option<u32>> {
    let mut dist = vec![None; g.n()];
    dist[s] = Some(0);
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].unwrap();
        if d == cap || (v != s && blocked[v]) {
            continue;
        }
        for &w in g.neighbors(v) {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Profile multiset of `V ∖ x`, keyed by the profile written with `names`.
fn profile_counts(
    g: &Graph,
    x: &[Vertex],
    r: u32,
    names: &dyn Fn(Vertex) -> Vertex,
) -> BTreeMap<Vec<(Vertex, u32)>, usize> {
    let in_x = vset::mask(g.n(), x);
    let mut out = BTreeMap::new();
    for u in g.vertices().filter(|&u| !in_x[u]) {
        let dist = bfs(g, u, r, &in_x);
        let mut prof: Vec<_> = x.iter().filter_map(|&v| dist[v].map(|d| (names(v), d))).collect();
        prof.sort_unstable();
        *out.entry(prof).or_insert(0) += 1;
    }
    out
}

/// Both projection-kernel properties, recomputed without the library's search code.
pub fn check_projection_kernel(g: &Graph, x: &[Vertex], r: u32, c: usize) -> std::result::Result<usize, String> {
    let pk = projection_kernel(g, x, r, c, None).map_err(|e| e.to_string())?;
    if !verify_projection_kernel(g, x, r, c, &pk.graph, &pk.map).is_ok() {
        return Err("library check failed".into());
    }
    let xs: Vec<Vertex> = x
        .iter()
        .map(|&v| pk.map.to_sub(v).ok_or(format!("{v} dropped")))
        .collect::<std::result::Result<_, _>>()?;
    let none = vec![false; g.n()];
    let none_k = vec![false; pk.graph.n()];
    for (&v, &vs) in x.iter().zip(&xs) {
        let dg = bfs(g, v, r, &none);
        let dk = bfs(&pk.graph, vs, r, &none_k);
        if let Some((&w, _)) = x.iter().zip(&xs).find(|&(&w, &ws)| dg[w] != dk[ws]) {
            return Err(format!("distance {v}-{w} changed"));
        }
    }
    let in_g = profile_counts(g, x, r, &|v| v);
    let in_k = profile_counts(&pk.graph, &xs, r, &|v| pk.map.to_original(v));
    for (prof, &p) in &in_g {
        let have = in_k.get(prof).copied().unwrap_or(0);
        if have < c.min(p) {
            return Err(format!("profile {prof:?}: {p} in g, {have} in kernel"));
        }
    }
    Ok(pk.graph.n())
}

/// Seeded random `(g, x, r, c)`: random degenerate graphs, grids and spider forests.
pub fn projection_input(seed: u64) -> (String, Graph, Vec<Vertex>, u32, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let family = match rng.gen_range(0..3) {
        0 => Family::RandomDegenerate {
            n: rng.gen_range(5..60),
            d: rng.gen_range(1..4),
        },
        1 => Family::Grid {
            w: rng.gen_range(2..8),
            h: rng.gen_range(2..8),
        },
        _ => Family::SpiderForest {
            count: rng.gen_range(1..4),
            legs: rng.gen_range(2..9),
            leg_len: rng.gen_range(1..4),
        },
    };
    let spec = GeneratorSpec::new(family, rng.gen());
    let g = generate(&spec).unwrap();
    let size = rng.gen_range(0..=g.n().min(8));
    let x = vset::normalized(sample(&mut rng, g.n(), size).into_vec());
    let (r, c) = (rng.gen_range(1..4), rng.gen_range(1..4));
    (spec.to_string(), g, x, r, c)
}

pub fn projection_kernels(count: u64) -> Outcome {
    let mut out = Outcome::default();
    let mut total = 0;
    for seed in 0..count {
        let (name, g, x, r, c) = projection_input(seed);
        out.checked += 1;
        match check_projection_kernel(&g, &x, r, c) {
            Ok(n) => total += n,
            Err(e) => out.fail(format!("{name} x={x:?} r={r} c={c}: {e}")),
        }
    }
    out.detail = format!(
        "{} inputs, mean kernel size {:.1}",
        out.checked,
        total as f64 / count.max(1) as f64
    );
    out
}

fn coverage(g: &Graph, set: &[Vertex], r: u32) -> Vec<usize> {
    let mut cnt = vec![0; g.n()];
    for &v in set {
        for w in g.ball(v, r).unwrap() {
            cnt[w] += 1;
        }
    }
    cnt
}

fn pairwise_far(g: &Graph, a: &[Vertex], d: u32) -> bool {
    a.iter()
        .all(|&u| g.ball(u, d).unwrap().iter().all(|w| *w == u || !a.contains(w)))
}

/// Certified approximations against the oracle on `suite_graphs`.
pub fn approximation() -> Outcome {
    let oracle = Oracle::with_guard(64);
    let mut out = Outcome::default();
    let (mut feasible, mut infeasible) = (0, 0);
    for (name, g) in suite_graphs() {
        for r in [1, 2] {
            let opt1 = oracle.opt_rc_dom(&g, r, 1, None).unwrap().optimum.unwrap();
            let all: Vec<Vertex> = g.vertices().collect();
            let odd: Vec<Vertex> = all.iter().copied().filter(|v| v % 2 == 1).collect();
            for x in [&all, &odd] {
                out.checked += 1;
                let d = approx_dominating(&g, x, r).unwrap();
                let opt = oracle.opt_rc_dom(&g, r, 1, Some(x)).unwrap().optimum.unwrap();
                let cnt = coverage(&g, &d.dominator, r);
                if !d.is_valid(&g) || x.iter().any(|&v| cnt[v] == 0) || !pairwise_far(&g, &d.witness, 2 * r) {
                    out.fail(format!("{name} r={r}: invalid dominator"));
                } else if !(d.witness.len() <= opt && opt <= d.dominator.len()) {
                    out.fail(format!(
                        "{name} r={r}: |A|={} opt={opt} |D|={}",
                        d.witness.len(),
                        d.dominator.len()
                    ));
                }
            }
            for c in [1, 2, 3] {
                out.checked += 1;
                let opt = oracle.opt_rc_dom(&g, r, c, None).unwrap().optimum;
                match (approx_rc_dominating(&g, r, c), opt) {
                    (Ok(RcApprox::Feasible(d)), Some(opt)) => {
                        feasible += 1;
                        let first = &d.first;
                        let ok = coverage(&g, &d.set, r).iter().all(|&k| k >= c)
                            && opt <= d.set.len()
                            && d.stages.len() == c - 1
                            && first.is_valid(&g)
                            && first.witness.len() <= opt1
                            && opt1 <= first.dominator.len();
                        if !ok {
                            out.fail(format!("{name} r={r} c={c}: certificate broken"));
                        }
                    }
                    (Ok(RcApprox::Infeasible(_)), None) => infeasible += 1,
                    (Ok(a), opt) => out.fail(format!("{name} r={r} c={c}: approx {a:?} vs oracle {opt:?}")),
                    (Err(e), _) => out.fail(format!("{name} r={r} c={c}: stage assertion: {e}")),
                }
            }
        }
    }
    out.detail = format!("{} runs, {feasible} feasible, {infeasible} infeasible", out.checked);
    out
}

/// Every lily any finder returns verifies, and spider forests yield ratio-2 lilies.
pub fn lilies(trials: u64) -> (Outcome, Outcome) {
    let mut verified = Outcome::default();
    for (name, g) in suite_graphs() {
        let all: Vec<Vertex> = g.vertices().collect();
        let odd: Vec<Vertex> = all.iter().copied().filter(|v| v % 2 == 1).collect();
        let labels: Vec<u32> = all.iter().map(|&v| (v % 3 == 0) as u32).collect();
        for (d, r, c) in [(1, 1, 1), (1, 2, 1), (2, 2, 1), (2, 2, 2), (1, 1, 2)] {
            for a in [&all, &odd] {
                for t in [1, 2, 3] {
                    let found = [
                        find_uniform_lily(&g, a, d, r, c, t).unwrap().found(),
                        find_sigma_uniform_lily(&g, a, d, r, c, t, Some(&labels))
                            .unwrap()
                            .found(),
                    ];
                    for lily in found.into_iter().flatten() {
                        verified.checked += 1;
                        let report = verify_lily(&g, &lily);
                        if !report.all_passed() || lily.centres.len() < t {
                            verified.fail(format!("{name} d={d} r={r} c={c}: {:?}", report.failures()));
                        }
                    }
                }
            }
        }
    }
    let mut avail = Outcome::default();
    let mut ok = 0;
    for seed in 0..trials {
        let t = super::lily_trial(seed);
        avail.checked += 1;
        verified.checked += t.lily.is_some() as usize;
        if !t.verified {
            verified.fail(format!("{}: spider lily failed verification", t.name));
        }
        if t.available() {
            ok += 1;
        } else {
            avail.detail.push_str(&format!(" missing: {};", t.name));
        }
    }
    if ok * 10 < trials as usize * 9 {
        avail.fail(format!("{ok}/{trials} available"));
    }
    verified.detail = format!("{} lilies verified", verified.checked);
    avail.detail = format!("{ok}/{trials} spider forests{}", avail.detail);
    (verified, avail)
}

/// `|Ĝ|/k` for spider forests of `k` stars with six leaves, `r = c = 1`.
pub fn linearity() -> (Outcome, Vec<(usize, usize)>) {
    let ks: Vec<usize> = (1..=16).map(|i| 4 * i).collect();
    let mut sizes = Vec::new();
    for &k in &ks {
        let g = generate(&GeneratorSpec::new(
            Family::SpiderForest {
                count: k,
                legs: 6,
                leg_len: 1,
            },
            0,
        ))
        .unwrap();
        let red = reduce(&g, Problem::RcDom, Params::new(1).with_c(1), &CoreOptions::default()).unwrap();
        sizes.push((k, red.kernel.map_or(0, |kern| kern.graph.n())));
    }
    let top: Vec<f64> = sizes
        .iter()
        .filter(|(k, _)| *k >= 34)
        .map(|&(k, n)| n as f64 / k as f64)
        .collect();
    let (lo, hi) = top
        .iter()
        .fold((f64::MAX, f64::MIN), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let spread = (hi - lo) / lo;
    let mut out = Outcome {
        checked: sizes.len(),
        detail: format!(
            "|Ĝ|/k in [{lo:.3}, {hi:.3}] over k >= 34, spread {:.1}%",
            100.0 * spread
        ),
        ..Default::default()
    };
    if spread.is_nan() || spread >= 0.25 {
        out.fail(format!("spread {:.1}% exceeds 25%", 100.0 * spread));
    }
    (out, sizes)
}
