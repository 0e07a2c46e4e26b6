use crate::cores::{
    constraint_core_rc_dom, constraint_core_roman, constraint_core_total, reduce_annotated_lambda_mu,
    solution_core_scattered, CoreOptions, Peel,
};
use crate::domination::{approx_rc_dominating, small_ball, RcApprox};
use crate::error::Result;
use crate::graph::{Graph, Vertex};
use crate::projections::projection_kernel;
use crate::vset;

use super::instance::{AnnotatedInstance, Origin, Params, Problem};

/// A decision taken without kernelizing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EarlyExit {
    pub verdict: bool,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bikernel {
    pub instance: AnnotatedInstance,
    pub exit: Option<EarlyExit>,
}

/// Budget-independent part of a bikernel: certificates, core and projection kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub problem: Problem,
    pub params: Params,
    pub input_n: usize,
    /// Reason the instance has no solution at all.
    pub infeasible: Option<String>,
    /// Vertices pairwise farther than `2r` apart; any dominator needs one vertex per member.
    pub witness: Vec<Vertex>,
    /// Core in input ids (constraints, or candidates for scattered sets).
    pub core: Vec<Vertex>,
    pub trace: Vec<Peel>,
    /// Annotated kernel with budget 0; `None` when infeasible.
    pub kernel: Option<AnnotatedInstance>,
}

impl Reduction {
    pub fn for_budget(&self, k: usize) -> Bikernel {
        let p = self.problem;
        let exit = if let Some(reason) = &self.infeasible {
            Some(EarlyExit {
                verdict: false,
                reason: reason.clone(),
            })
        } else if p.is_maximization() && self.witness.len() >= k {
            Some(EarlyExit {
                verdict: true,
                reason: format!("scattered witness of size {} reaches k={k}", self.witness.len()),
            })
        } else if !p.is_maximization() && self.witness.len() > k {
            Some(EarlyExit {
                verdict: false,
                reason: format!("scattered witness of size {} exceeds k={k}", self.witness.len()),
            })
        } else {
            None
        };
        match (exit, &self.kernel) {
            (None, Some(kernel)) => Bikernel {
                instance: AnnotatedInstance { k, ..kernel.clone() },
                exit: None,
            },
            (exit, _) => {
                let exit = exit.unwrap_or(EarlyExit {
                    verdict: false,
                    reason: "no kernel".into(),
                });
                Bikernel {
                    instance: fixture(p, self.params, exit.verdict),
                    exit: Some(exit),
                }
            }
        }
    }
}

/// Canonical constant-size instances with a known answer.
///
/// Yes: one vertex without constraints and budget 0 (perfect codes: the vertex
/// constrained, budget 1). No: two isolated constrained vertices with budget 1
/// (scattered sets: one vertex, no candidates, budget 1).
pub fn fixture(problem: Problem, params: Params, verdict: bool) -> AnnotatedInstance {
    let tag = |_| Origin::Gadget("fixture".into());
    let (graph, l, u, k) = match (problem, verdict) {
        (Problem::Scatter, true) => (Graph::new(1), vec![0], vec![], 0),
        (Problem::Scatter, false) => (Graph::new(1), vec![0], vec![], 1),
        (Problem::PerfectCode, true) => (Graph::new(1), vec![0], vec![0], 1),
        (_, true) => (Graph::new(1), vec![], vec![0], 0),
        (_, false) => (Graph::new(2), vec![0, 1], vec![0, 1], 1),
    };
    AnnotatedInstance {
        origin: graph.vertices().map(tag).collect(),
        graph,
        problem,
        params,
        k,
        l,
        u,
        offset: 0,
    }
}

#[allow(clippy::too_many_arguments)]
fn kernel_instance(
    g: &Graph,
    problem: Problem,
    params: Params,
    l: &[Vertex],
    u: &[Vertex],
    closure_of: &[Vertex],
    c: usize,
    opts: &CoreOptions,
) -> Result<AnnotatedInstance> {
    let pk = projection_kernel(g, closure_of, params.r, c, opts.lily.closure_threshold)?;
    Ok(AnnotatedInstance {
        origin: (0..pk.graph.n())
            .map(|v| Origin::Input(pk.map.to_original(v)))
            .collect(),
        l: vset::normalized(pk.map.map_to_sub(l)),
        u: vset::normalized(pk.map.map_to_sub(u)),
        graph: pk.graph,
        problem,
        params,
        k: 0,
        offset: 0,
    })
}

fn infeasible(problem: Problem, params: Params, g: &Graph, witness: Vec<Vertex>, reason: String) -> Reduction {
    Reduction {
        problem,
        params,
        input_n: g.n(),
        infeasible: Some(reason),
        witness,
        core: Vec::new(),
        trace: Vec::new(),
        kernel: None,
    }
}

/// Runs the budget-independent part of the bikernel for `problem`.
pub fn reduce(g: &Graph, problem: Problem, params: Params, opts: &CoreOptions) -> Result<Reduction> {
    params.validate(problem)?;
    let r = params.r;
    let all: Vec<Vertex> = g.vertices().collect();
    let witness = g.greedy_scattered(&all, r)?;
    let done = |core: Vec<Vertex>, trace: Vec<Peel>, kernel: AnnotatedInstance, witness: Vec<Vertex>| Reduction {
        problem,
        params,
        input_n: g.n(),
        infeasible: None,
        witness,
        core,
        trace,
        kernel: Some(kernel),
    };
    match problem {
        Problem::RcDom => {
            if let Some((v, size)) = small_ball(g, r, params.c) {
                let reason = format!("ball around {v} has {size} < {} vertices", params.c);
                return Ok(infeasible(problem, params, g, witness, reason));
            }
            let core = constraint_core_rc_dom(g, r, params.c, opts)?;
            let kernel = kernel_instance(g, problem, params, &core.core, &all, &core.core, params.c, opts)?;
            Ok(done(core.core, core.trace, kernel, witness))
        }
        Problem::Total | Problem::Roman => {
            if problem == Problem::Total {
                if let Some(v) = g.vertices().find(|&v| g.degree(v) == 0) {
                    let reason = format!("vertex {v} has no other vertex within distance {r}");
                    return Ok(infeasible(problem, params, g, witness, reason));
                }
            }
            let core = if problem == Problem::Total {
                constraint_core_total(g, r, opts)?
            } else {
                constraint_core_roman(g, r, opts)?
            };
            let kernel = kernel_instance(g, problem, params, &core.core, &all, &core.core, 1, opts)?;
            Ok(done(core.core, core.trace, kernel, witness))
        }
        Problem::Scatter => {
            let core = solution_core_scattered(g, r, params.c, opts)?;
            let kernel = kernel_instance(g, problem, params, &all, &core.core, &core.core, params.c, opts)?;
            Ok(done(core.core, core.trace, kernel, witness))
        }
        Problem::LambdaMu | Problem::PerfectCode => {
            if let Some((v, size)) = small_ball(g, r, params.lambda) {
                let reason = format!("ball around {v} has {size} < {} vertices", params.lambda);
                return Ok(infeasible(problem, params, g, witness, reason));
            }
            let (l, u, trace) = match approx_rc_dominating(g, r, params.mu)? {
                RcApprox::Feasible(dhat) => {
                    let red = reduce_annotated_lambda_mu(g, &all, &all, r, params.lambda, params.mu, &dhat.set, opts)?;
                    (red.l, red.u, red.trace)
                }
                // without an (r,μ)-dominator there are no roots to build lilies from
                RcApprox::Infeasible(_) => (all.clone(), all.clone(), Vec::new()),
            };
            // perfect codes need L = U; a larger constraint set is still a core
            let l = if problem == Problem::PerfectCode { u.clone() } else { l };
            let kernel = kernel_instance(g, problem, params, &l, &u, &u, 1, opts)?;
            Ok(done(u, trace, kernel, witness))
        }
    }
}

pub fn bikernel_rc_dom(g: &Graph, r: u32, c: usize, k: usize) -> Result<Bikernel> {
    Ok(reduce(g, Problem::RcDom, Params::new(r).with_c(c), &CoreOptions::default())?.for_budget(k))
}

pub fn bikernel_total(g: &Graph, r: u32, k: usize) -> Result<Bikernel> {
    Ok(reduce(g, Problem::Total, Params::new(r), &CoreOptions::default())?.for_budget(k))
}

pub fn bikernel_roman(g: &Graph, r: u32, k: usize) -> Result<Bikernel> {
    Ok(reduce(g, Problem::Roman, Params::new(r), &CoreOptions::default())?.for_budget(k))
}

pub fn bikernel_scattered(g: &Graph, r: u32, c: usize, k: usize) -> Result<Bikernel> {
    Ok(reduce(g, Problem::Scatter, Params::new(r).with_c(c), &CoreOptions::default())?.for_budget(k))
}

pub fn bikernel_lambda_mu(g: &Graph, r: u32, lambda: usize, mu: usize, k: usize) -> Result<Bikernel> {
    let params = Params::new(r).with_bounds(lambda, mu);
    Ok(reduce(g, Problem::LambdaMu, params, &CoreOptions::default())?.for_budget(k))
}

pub fn bikernel_perfect_code(g: &Graph, r: u32, k: usize) -> Result<Bikernel> {
    Ok(reduce(g, Problem::PerfectCode, Params::new(r), &CoreOptions::default())?.for_budget(k))
}
