//! One kernel serving several problems at once, with a known offset per problem.
//! The gadgets only hang pendant trees and paths off the kernel.

use crate::cores::{
    constraint_core_rc_dom, constraint_core_roman, constraint_core_total, solution_core_scattered, CoreOptions,
};
use crate::error::{Error, Result};
use crate::graph::{Graph, PathEnd, Vertex};
use crate::projections::projection_kernel;
use crate::vset;

use super::instance::Origin;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multikernel {
    pub graph: Graph,
    pub origin: Vec<Origin>,
    /// Joint core in input ids.
    pub core: Vec<Vertex>,
    /// Kernel vertices outside the core (in output ids); each carries a gadget.
    pub outside: Vec<Vertex>,
    /// Kernel size before gadgets.
    pub kernel_n: usize,
}

/// Offsets of the domination multikernel: `dom` and `total` grow by `c`, `roman` by `2c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DominationOffsets {
    pub c: usize,
    pub dom: usize,
    pub total: usize,
    pub roman: usize,
}

fn kernel_with_origin(g: &Graph, core: &[Vertex], radius: u32, opts: &CoreOptions) -> Result<Multikernel> {
    let pk = projection_kernel(g, core, radius, 1, opts.lily.closure_threshold)?;
    let inner = vset::normalized(pk.map.map_to_sub(core));
    Ok(Multikernel {
        origin: (0..pk.graph.n())
            .map(|v| Origin::Input(pk.map.to_original(v)))
            .collect(),
        outside: vset::complement(pk.graph.n(), &inner),
        kernel_n: pk.graph.n(),
        graph: pk.graph,
        core: core.to_vec(),
    })
}

impl Multikernel {
    fn path(&mut self, u: Vertex, len: u32, tag: &str) -> Result<Vertex> {
        let out = self.graph.attach_path(u, PathEnd::Fresh, len)?;
        for _ in &out.created {
            self.origin.push(Origin::Gadget(tag.to_string()));
        }
        Ok(*out.created.last().expect("len >= 1"))
    }
}

/// Joint kernel for `r`-domination, total `r`-domination and `r`-Roman domination.
///
/// Every kernel vertex `v` outside the union of the three constraint cores becomes
/// `b_0` of a tree with paths of length `r` from `b_0` to `b_1`, from `b_1` to `b_2`,
/// from `b_1` to `a_1..a_3` and from `b_2` to `a_4..a_6` (`8r` new vertices).
/// The offset is `c = 2|O|`.
pub fn multikernel_domination_family(
    g: &Graph,
    r: u32,
    opts: &CoreOptions,
) -> Result<(Multikernel, DominationOffsets)> {
    if r == 0 {
        return Err(Error::Input("radius must be at least 1".into()));
    }
    let ld = constraint_core_rc_dom(g, r, 1, opts)?;
    let lt = constraint_core_total(g, r, opts)?;
    let lr = constraint_core_roman(g, r, opts)?;
    let core = vset::union(&vset::union(&ld.core, &lt.core), &lr.core);
    let mut mk = kernel_with_origin(g, &core, r, opts)?;
    for v in mk.outside.clone() {
        let b1 = mk.path(v, r, "p")?;
        let b2 = mk.path(b1, r, "p")?;
        for _ in 0..3 {
            mk.path(b1, r, "p")?;
            mk.path(b2, r, "p")?;
        }
    }
    let c = 2 * mk.outside.len();
    Ok((
        mk,
        DominationOffsets {
            c,
            dom: c,
            total: c,
            roman: 2 * c,
        },
    ))
}

/// Offsets of the domination/independence multikernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DomIndOffsets {
    /// Divisible by `2r+1` for every radius in range.
    pub sigma: usize,
    /// `(r, c_r)` with `c_r = σ/(2r+1)·|O|`; holds for `dom_r` and for `ind_{2r}`.
    pub per_radius: Vec<(u32, usize)>,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Joint kernel for `r`-domination and `2r`-independence for all `r ∈ [λ, μ]`.
///
/// Kernel vertices outside the union of the domination and scattered-set cores get a
/// pendant path of `σ − 1` new vertices, `σ = lcm{2r+1}`.
pub fn multikernel_dom_ind(
    g: &Graph,
    lambda: u32,
    mu: u32,
    opts: &CoreOptions,
) -> Result<(Multikernel, DomIndOffsets)> {
    if lambda == 0 || lambda > mu {
        return Err(Error::Input(format!("need 1 <= lambda <= mu, got {lambda} and {mu}")));
    }
    let mut core = Vec::new();
    for r in lambda..=mu {
        core = vset::union(&core, &constraint_core_rc_dom(g, r, 1, opts)?.core);
        core = vset::union(&core, &solution_core_scattered(g, r, 1, opts)?.core);
    }
    let sigma = (lambda..=mu)
        .map(|r| 2 * r as usize + 1)
        .fold(1, |acc, m| acc / gcd(acc, m) * m);
    let mut mk = kernel_with_origin(g, &core, mu, opts)?;
    if sigma > 1 {
        for v in mk.outside.clone() {
            mk.path(v, (sigma - 1) as u32, "p")?;
        }
    }
    let o = mk.outside.len();
    let per_radius = (lambda..=mu).map(|r| (r, sigma / (2 * r as usize + 1) * o)).collect();
    Ok((mk, DomIndOffsets { sigma, per_radius }))
}
