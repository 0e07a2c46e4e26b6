//! Constraint cores and solution cores, peeled one lily centre at a time.
//!
//! A constraint core `L` keeps the optimum of the problem when only vertices of
//! `L` must be satisfied; a solution core `U` keeps the optimum when solutions
//! are restricted to `U`. Each round searches for a water lily among the
//! remaining vertices and drops its smallest centre.

use std::fmt;

use crate::check;
use crate::domination::small_ball;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::vset;
use crate::wideness::{LilyConfig, LilyFinder, LilyOutcome, WaterLily};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoreProblem {
    RcDom { r: u32, c: usize },
    Total { r: u32 },
    Roman { r: u32 },
    Scattered { r: u32, c: usize },
    LambdaMu { r: u32, lambda: usize, mu: usize },
}

impl fmt::Display for CoreProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreProblem::RcDom { r, c } => write!(f, "rcdom r={r} c={c}"),
            CoreProblem::Total { r } => write!(f, "total r={r}"),
            CoreProblem::Roman { r } => write!(f, "roman r={r}"),
            CoreProblem::Scattered { r, c } => write!(f, "scatter r={r} c={c}"),
            CoreProblem::LambdaMu { r, lambda, mu } => write!(f, "lambdamu r={r} lambda={lambda} mu={mu}"),
        }
    }
}

/// Which set a peel shrank.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoreSide {
    Constraints,
    Candidates,
}

/// Summary of one lily round.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Peel {
    pub side: CoreSide,
    pub removed: Vec<Vertex>,
    pub roots: usize,
    pub centres: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreResult {
    pub problem: CoreProblem,
    pub core: Vec<Vertex>,
    /// Number of removed vertices.
    pub rounds: usize,
    pub trace: Vec<Peel>,
}

impl CoreResult {
    /// Applies the trace to `start`.
    pub fn replay(&self, start: &[Vertex]) -> Vec<Vertex> {
        let removed: Vec<Vertex> = self.trace.iter().flat_map(|p| p.removed.iter().copied()).collect();
        vset::difference(&vset::normalized(start.to_vec()), &vset::normalized(removed))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CoreOptions {
    /// Remove up to `|C| − ratio·|R|` centres per lily instead of one. Not covered by the
    /// correctness tests.
    pub batch: bool,
    pub lily: LilyConfig,
}

/// Lily demands of one peeling loop.
struct PeelRule<'a> {
    ratio: usize,
    /// Centres required beyond `ratio · |R|`.
    extra: usize,
    /// Require one pad signature; the labels feed the signature.
    sigma: Option<&'a [u32]>,
    /// Centres must be pairwise farther than this apart in `g`.
    separation: Option<u32>,
    side: CoreSide,
}

impl PeelRule<'_> {
    fn needed(&self, lily: &WaterLily) -> usize {
        (self.ratio * lily.roots.len() + self.extra).max(1)
    }
}

/// Searches lilies with `a_set` as candidate centres until one satisfies the ratio.
fn next_lily(finder: &LilyFinder<'_>, a_set: &[Vertex], rule: &PeelRule<'_>) -> Result<Option<WaterLily>> {
    let mut t = 1;
    loop {
        let outcome = match rule.sigma {
            Some(labels) => finder.find_sigma_uniform(a_set, t, Some(labels))?,
            None => finder.find_uniform(a_set, t)?,
        };
        let LilyOutcome::Found(lily) = outcome else {
            return Ok(None);
        };
        let needed = rule.needed(&lily);
        if lily.centres.len() >= needed {
            if let Some(sep) = rule.separation {
                if !check::pairwise_farther(finder.graph(), &lily.centres, sep) {
                    return Ok(None);
                }
            }
            return Ok(Some(lily));
        }
        if needed > a_set.len() {
            return Ok(None);
        }
        t = needed.max(t + 1);
    }
}

fn removal(lily: &WaterLily, rule: &PeelRule<'_>, batch: bool) -> Vec<Vertex> {
    let count = if batch {
        (lily.centres.len() - rule.needed(lily)).max(1)
    } else {
        1
    };
    lily.centres.iter().copied().take(count).collect()
}

/// Peels `start` until no lily with the required ratio remains.
fn peel(
    finder: &LilyFinder<'_>,
    start: Vec<Vertex>,
    rule: PeelRule<'_>,
    opts: &CoreOptions,
) -> Result<(Vec<Vertex>, Vec<Peel>)> {
    let mut set = vset::normalized(start);
    let mut trace = Vec::new();
    while let Some(lily) = next_lily(finder, &set, &rule)? {
        let removed = removal(&lily, &rule, opts.batch);
        set = vset::difference(&set, &removed);
        trace.push(Peel {
            side: rule.side,
            removed,
            roots: lily.roots.len(),
            centres: lily.centres.len(),
        });
    }
    Ok((set, trace))
}

fn finish(problem: CoreProblem, n: usize, core: Vec<Vertex>, trace: Vec<Peel>) -> CoreResult {
    CoreResult {
        problem,
        rounds: n - core.len(),
        core,
        trace,
    }
}

fn check_radius(r: u32) -> Result<()> {
    if r == 0 {
        return Err(Error::Input("radius must be at least 1".into()));
    }
    Ok(())
}

/// Constraint core for `(r,c)`-domination: lilies of depth `r`, radius `2r`,
/// adhesion `c`, with `|C| ≥ 2|R|`.
pub fn constraint_core_rc_dom(g: &Graph, r: u32, c: usize, opts: &CoreOptions) -> Result<CoreResult> {
    check_radius(r)?;
    if c == 0 {
        return Err(Error::Input("multiplicity must be at least 1".into()));
    }
    if let Some((v, size)) = small_ball(g, r, c) {
        return Err(Error::Infeasible(format!(
            "ball of radius {r} around {v} has {size} < {c} vertices"
        )));
    }
    let finder = LilyFinder::new(g, r, 2 * r, c, opts.lily)?;
    let rule = PeelRule {
        ratio: 2,
        extra: 0,
        sigma: None,
        separation: None,
        side: CoreSide::Constraints,
    };
    let (core, trace) = peel(&finder, g.vertices().collect(), rule, opts)?;
    Ok(finish(CoreProblem::RcDom { r, c }, g.n(), core, trace))
}

/// Constraint core for total `r`-domination: adhesion 1, `|C| ≥ 3|R|`, and centres
/// pairwise farther than `r` apart. Without the last condition a removed centre can
/// dominate every other centre through the roots while nothing dominates it.
pub fn constraint_core_total(g: &Graph, r: u32, opts: &CoreOptions) -> Result<CoreResult> {
    check_radius(r)?;
    let finder = LilyFinder::new(g, r, 2 * r, 1, opts.lily)?;
    let rule = PeelRule {
        ratio: 3,
        extra: 0,
        sigma: None,
        separation: Some(r),
        side: CoreSide::Constraints,
    };
    let (core, trace) = peel(&finder, g.vertices().collect(), rule, opts)?;
    Ok(finish(CoreProblem::Total { r }, g.n(), core, trace))
}

/// Constraint core for `r`-Roman domination: adhesion 1, `|C| ≥ 3|R|`.
pub fn constraint_core_roman(g: &Graph, r: u32, opts: &CoreOptions) -> Result<CoreResult> {
    check_radius(r)?;
    let finder = LilyFinder::new(g, r, 2 * r, 1, opts.lily)?;
    let rule = PeelRule {
        ratio: 3,
        extra: 0,
        sigma: None,
        separation: None,
        side: CoreSide::Constraints,
    };
    let (core, trace) = peel(&finder, g.vertices().collect(), rule, opts)?;
    Ok(finish(CoreProblem::Roman { r }, g.n(), core, trace))
}

/// Solution core for maximum `(r,c)`-scattered sets: centres share one pad signature,
/// adhesion `c`, `|C| ≥ 2|R|`.
pub fn solution_core_scattered(g: &Graph, r: u32, c: usize, opts: &CoreOptions) -> Result<CoreResult> {
    check_radius(r)?;
    if c == 0 {
        return Err(Error::Input("multiplicity must be at least 1".into()));
    }
    let all: Vec<Vertex> = g.vertices().collect();
    if small_ball(g, r, c).is_some() {
        // some ball holds fewer than c vertices, so no lily of adhesion c exists
        return Ok(finish(CoreProblem::Scattered { r, c }, g.n(), all, Vec::new()));
    }
    let finder = LilyFinder::new(g, r, 2 * r, c, opts.lily)?;
    let labels = vec![0u32; g.n()];
    let rule = PeelRule {
        ratio: 2,
        extra: 0,
        sigma: Some(&labels),
        separation: None,
        side: CoreSide::Candidates,
    };
    let (core, trace) = peel(&finder, all, rule, opts)?;
    Ok(finish(CoreProblem::Scattered { r, c }, g.n(), core, trace))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaMuReduction {
    pub l: Vec<Vertex>,
    pub u: Vec<Vertex>,
    pub trace: Vec<Peel>,
}

/// Shrinks the constraints `l` and then the candidates `u` of a `(r,[λ,μ])`-domination
/// instance. Roots come from `dhat`, which must `(r,μ)`-dominate `g`; lilies need
/// `|C| ≥ (μ+1)|R| + 1` centres sharing one pad signature, where the signature sees
/// membership in `l` and `u`.
#[allow(clippy::too_many_arguments)]
pub fn reduce_annotated_lambda_mu(
    g: &Graph,
    l: &[Vertex],
    u: &[Vertex],
    r: u32,
    lambda: usize,
    mu: usize,
    dhat: &[Vertex],
    opts: &CoreOptions,
) -> Result<LambdaMuReduction> {
    check_radius(r)?;
    g.check_set(l)?;
    g.check_set(u)?;
    g.check_set(dhat)?;
    if lambda == 0 || lambda > mu {
        return Err(Error::Input(format!("need 1 <= lambda <= mu, got {lambda} and {mu}")));
    }
    if !check::is_rc_dominating(g, dhat, r, mu, None) {
        return Err(Error::Input(format!("supplied dominator is not ({r},{mu})-dominating")));
    }
    let dhat = vset::normalized(dhat.to_vec());
    let finder = LilyFinder::with_dominator(g, r, 2 * r, mu, dhat.clone(), opts.lily)?;
    let mut l = vset::normalized(l.to_vec());
    let mut u = vset::normalized(u.to_vec());
    let mut trace = Vec::new();

    for side in [CoreSide::Constraints, CoreSide::Candidates] {
        loop {
            let labels = membership_labels(g.n(), &l, &u);
            let a_set = match side {
                CoreSide::Constraints => vset::difference(&l, &dhat),
                CoreSide::Candidates => vset::difference(&vset::difference(&u, &l), &dhat),
            };
            let rule = PeelRule {
                ratio: mu + 1,
                extra: 1,
                sigma: Some(&labels),
                separation: None,
                side,
            };
            let Some(lily) = next_lily(&finder, &a_set, &rule)? else {
                break;
            };
            // any solution meets at most μ|R| pads, and the exchange needs a second empty pad
            if lily.centres.len() < mu * lily.roots.len() + 2 {
                return Err(Error::Internal("lily leaves fewer than two empty pads".into()));
            }
            let removed = removal(&lily, &rule, opts.batch);
            match side {
                CoreSide::Constraints => l = vset::difference(&l, &removed),
                CoreSide::Candidates => u = vset::difference(&u, &removed),
            }
            trace.push(Peel {
                side,
                removed,
                roots: lily.roots.len(),
                centres: lily.centres.len(),
            });
        }
    }
    Ok(LambdaMuReduction { l, u, trace })
}

/// Bit 0: member of `l`; bit 1: member of `u`.
fn membership_labels(n: usize, l: &[Vertex], u: &[Vertex]) -> Vec<u32> {
    let mut labels = vec![0u32; n];
    for &v in l {
        labels[v] |= 1;
    }
    for &v in u {
        labels[v] |= 2;
    }
    labels
}
