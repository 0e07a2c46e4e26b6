//! Self-certifying approximations for distance-`r` domination and
//! `(r,c)`-domination.
//!
//! Every dominator comes with a set `A` of its own members that is pairwise
//! more than `2r` apart. Any dominator of the target needs a distinct vertex
//! per member of `A`, so `|D| / |A|` is a proven per-instance ratio.

use crate::constants::Ratio;
use crate::error::{Error, Result};
use crate::graph::{Bfs, Graph, Step, Vertex};
use crate::projections::{profile_partition, Projector};
use crate::vset;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedDominator {
    pub dominator: Vec<Vertex>,
    pub witness: Vec<Vertex>,
    pub target: Vec<Vertex>,
    pub radius: u32,
}

impl CertifiedDominator {
    /// `|D| / |A|`; `None` when `A` is empty.
    pub fn certified_ratio(&self) -> Option<Ratio> {
        Ratio::new(self.dominator.len(), self.witness.len())
    }

    /// Rechecks the invariants from scratch.
    pub fn is_valid(&self, g: &Graph) -> bool {
        vset::is_subset(&self.witness, &self.dominator)
            && vset::is_subset(&self.witness, &self.target)
            && crate::check::is_scattered(g, &self.witness, self.radius)
            && crate::check::is_rc_dominating(g, &self.dominator, self.radius, 1, Some(&self.target))
    }
}

/// Distance-`r` dominator of `x` with a scattered witness.
///
/// Undominated `x`-vertices are processed by increasing id. A candidate farther than
/// `2r` from every witness joins both sets; otherwise the vertex of its `r`-ball that
/// dominates the most still-undominated targets joins the dominator. Vertices outside
/// `x` count as already dominated.
pub fn approx_dominating(g: &Graph, x: &[Vertex], r: u32) -> Result<CertifiedDominator> {
    g.check_set(x)?;
    let target = vset::normalized(x.to_vec());
    let n = g.n();
    let mut dominated = vec![true; n];
    for &v in &target {
        dominated[v] = false;
    }
    let mut in_witness = vec![false; n];
    let mut dominator = Vec::new();
    let mut witness = Vec::new();
    let mut near = Bfs::new(n);
    let mut mark = Bfs::new(n);
    for &v in &target {
        if dominated[v] {
            continue;
        }
        near.run(g, &[v], 2 * r, |_| Step::Expand);
        let witness_near = near.order().iter().any(|&w| in_witness[w]);
        let chosen = match witness_near {
            false => {
                in_witness[v] = true;
                witness.push(v);
                v
            }
            true => {
                // some witness is near: spend the vertex of N^r[v] covering the most
                // undominated targets (smallest id on ties)
                let mut ball = near
                    .order()
                    .iter()
                    .copied()
                    .filter(|&w| near.dist(w) <= r)
                    .collect::<Vec<_>>();
                ball.sort_unstable();
                let mut best = (0usize, v);
                for w in ball {
                    let score = mark
                        .run(g, &[w], r, |_| Step::Expand)
                        .iter()
                        .filter(|&&y| !dominated[y])
                        .count();
                    if score > best.0 {
                        best = (score, w);
                    }
                }
                best.1
            }
        };
        dominator.push(chosen);
        for &w in mark.run(g, &[chosen], r, |_| Step::Expand) {
            dominated[w] = true;
        }
    }
    dominator.sort_unstable();
    dominator.dedup();
    witness.sort_unstable();
    Ok(CertifiedDominator {
        dominator,
        witness,
        target,
        radius: r,
    })
}

/// Why no `(r,c)`-dominating set exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Infeasibility {
    /// The ball around `vertex` has fewer than `c` vertices.
    SmallBall { vertex: Vertex, size: usize },
    /// A dominator vertex could not be covered one more time.
    NoRepairVertex { vertex: Vertex, level: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageReport {
    /// The stage builds an `(r, level+1)`-dominating set from an `(r, level)`-dominating one.
    pub level: usize,
    pub input_size: usize,
    pub shadow_picks: usize,
    pub repair_picks: usize,
    pub residual: usize,
    pub witness_size: usize,
    pub output_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RcDominator {
    pub set: Vec<Vertex>,
    pub radius: u32,
    pub multiplicity: usize,
    /// Certified dominator of the first stage.
    pub first: CertifiedDominator,
    pub stages: Vec<StageReport>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RcApprox {
    Feasible(RcDominator),
    Infeasible(Infeasibility),
}

impl RcApprox {
    pub fn feasible(self) -> Option<RcDominator> {
        match self {
            RcApprox::Feasible(d) => Some(d),
            RcApprox::Infeasible(_) => None,
        }
    }
}

/// Smallest-id vertex whose `r`-ball has fewer than `c` vertices.
pub fn small_ball(g: &Graph, r: u32, c: usize) -> Option<(Vertex, usize)> {
    let mut bfs = Bfs::new(g.n());
    g.vertices().find_map(|v| {
        let size = bfs.run(g, &[v], r, |_| Step::Expand).len();
        (size < c).then_some((v, size))
    })
}

fn cover_counts(g: &Graph, set: &[Vertex], r: u32, bfs: &mut Bfs) -> Vec<usize> {
    let mut cnt = vec![0usize; g.n()];
    for &v in set {
        for &w in bfs.run(g, &[v], r, |_| Step::Expand) {
            cnt[w] += 1;
        }
    }
    cnt
}

/// `(r,c)`-dominating set built level by level, or a proof that none exists.
///
/// Level `i+1` keeps the level-`i` set, adds one shadow vertex per projection class
/// (taken from the smallest class member's shadow), repairs dominator vertices that
/// are still short of coverage, and finally dominates the remaining deficient vertices
/// in the graph without the current set. Each level is rechecked by direct recount.
pub fn approx_rc_dominating(g: &Graph, r: u32, c: usize) -> Result<RcApprox> {
    if r == 0 || c == 0 {
        return Err(Error::Input("radius and multiplicity must be at least 1".into()));
    }
    if let Some((vertex, size)) = small_ball(g, r, c) {
        return Ok(RcApprox::Infeasible(Infeasibility::SmallBall { vertex, size }));
    }
    let n = g.n();
    let all: Vec<Vertex> = g.vertices().collect();
    let first = approx_dominating(g, &all, r)?;
    let mut current = first.dominator.clone();
    let mut bfs = Bfs::new(n);
    assert_level(g, &current, r, 1, &mut bfs)?;
    let mut stages = Vec::new();
    for level in 1..c {
        let in_d = vset::mask(n, &current);
        let mut in_du = in_d.clone();
        let mut extra = Vec::new();

        let partition = profile_partition(g, &current, r)?;
        let mut projector = Projector::new(g, &current);
        for class in &partition.classes {
            let rep = class.members[0];
            let pick = projector.shadow(rep, r, &mut bfs).into_iter().find(|&w| !in_du[w]);
            if let Some(w) = pick {
                in_du[w] = true;
                extra.push(w);
            }
        }
        let shadow_picks = extra.len();

        let mut cnt = cover_counts(g, &vset::from_mask(&in_du), r, &mut bfs);
        for &u in &current {
            if cnt[u] > level {
                continue;
            }
            let mut ball = bfs.run(g, &[u], r, |_| Step::Expand).to_vec();
            ball.sort_unstable();
            let Some(w) = ball.into_iter().find(|&w| !in_du[w]) else {
                return Ok(RcApprox::Infeasible(Infeasibility::NoRepairVertex { vertex: u, level }));
            };
            in_du[w] = true;
            extra.push(w);
            for &y in bfs.run(g, &[w], r, |_| Step::Expand) {
                cnt[y] += 1;
            }
        }
        let repair_picks = extra.len() - shadow_picks;

        let residual: Vec<Vertex> = g.vertices().filter(|&v| cnt[v] <= level).collect();
        if residual.iter().any(|&v| in_du[v]) {
            return Err(Error::Internal(format!(
                "level {level}: a member of the extended set is still short of coverage"
            )));
        }
        let keep: Vec<Vertex> = g.vertices().filter(|&v| !in_du[v]).collect();
        let (sub, map) = g.induced_subgraph(&keep)?;
        let local = approx_dominating(&sub, &map.map_to_sub(&residual), r)?;
        let added = map.map_to_original(&local.dominator);

        let next = vset::normalized(
            vset::from_mask(&in_du)
                .into_iter()
                .chain(added.iter().copied())
                .collect(),
        );
        assert_level(g, &next, r, level + 1, &mut bfs)?;
        stages.push(StageReport {
            level,
            input_size: current.len(),
            shadow_picks,
            repair_picks,
            residual: residual.len(),
            witness_size: local.witness.len(),
            output_size: next.len(),
        });
        current = next;
    }
    Ok(RcApprox::Feasible(RcDominator {
        set: current,
        radius: r,
        multiplicity: c,
        first,
        stages,
    }))
}

fn assert_level(g: &Graph, set: &[Vertex], r: u32, level: usize, bfs: &mut Bfs) -> Result<()> {
    let cnt = cover_counts(g, set, r, bfs);
    match g.vertices().find(|&v| cnt[v] < level) {
        None => Ok(()),
        Some(v) => Err(Error::Internal(format!(
            "stage set is not ({r},{level})-dominating at vertex {v}"
        ))),
    }
}
