//! Separating sets (uniform quasi-wideness) and water lilies.
//!
//! A water lily `(R, C)` of radius `ρ`, depth `d` and adhesion `c` consists of
//! roots `R` and centres `C` such that the centres are pairwise farther than
//! `2ρ` apart in `g − R` and every vertex of the pads `N^ρ_{g−R}[C]` has at
//! least `c` roots within distance `d` in `g`. It is uniform when all centres
//! share one depth-`d` profile onto `R`.

use std::collections::{BTreeMap, BTreeSet};

use crate::domination::{approx_rc_dominating, RcApprox};
use crate::error::{Error, Result};
use crate::graph::{Bfs, Graph, Step, Vertex};
use crate::projections::{default_threshold, projection_closure, Profile, Projector};
use crate::vset;

pub const DEFAULT_MAX_SEPARATORS: usize = 64;

/// Output of [`uqw`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub separator: Vec<Vertex>,
    pub scattered: Vec<Vertex>,
}

/// Greedy maximal subset of `x` (by id) with pairwise distance greater than `sep` in `g − blocked`.
fn separated_subset(g: &Graph, x: &[Vertex], blocked: &[bool], sep: u32, bfs: &mut Bfs) -> Vec<Vertex> {
    let mut taken = vec![false; g.n()];
    let mut out = Vec::new();
    for &v in x {
        if blocked[v] || taken[v] {
            continue;
        }
        out.push(v);
        for &w in bfs.run(g, &[v], sep, |w| if blocked[w] { Step::Skip } else { Step::Expand }) {
            taken[w] = true;
        }
    }
    out
}

/// Finds `S` and `X' ⊆ x ∖ S`, `|X'| ≥ t`, with members of `X'` pairwise farther than
/// `sep` apart in `g − S`. Separator vertices are taken outside `x`, each time the one
/// within `⌈sep/2⌉` of the most `x`-vertices, ties going to the smallest total
/// distance. Returns `None` once `max_s` separators did not suffice or no candidate helps.
pub fn uqw(g: &Graph, x: &[Vertex], sep: u32, t: usize, max_s: usize) -> Result<Option<Separation>> {
    g.check_set(x)?;
    if t == 0 {
        return Err(Error::Input("target size must be at least 1".into()));
    }
    let x = vset::normalized(x.to_vec());
    let in_x = vset::mask(g.n(), &x);
    let mut blocked = vec![false; g.n()];
    let mut separator = Vec::new();
    let mut bfs = Bfs::new(g.n());
    let reach = sep.div_ceil(2);
    loop {
        let scattered = separated_subset(g, &x, &blocked, sep, &mut bfs);
        if scattered.len() >= t {
            return Ok(Some(Separation {
                separator: vset::normalized(separator),
                scattered,
            }));
        }
        if separator.len() >= max_s {
            return Ok(None);
        }
        // how many x-vertices are within reach, then how close they are in total
        let mut score = vec![0usize; g.n()];
        let mut spread = vec![0u64; g.n()];
        for &w in &x {
            bfs.run(g, &[w], reach, |v| if blocked[v] { Step::Skip } else { Step::Expand });
            for &v in bfs.order() {
                score[v] += 1;
                spread[v] += u64::from(bfs.dist(v));
            }
        }
        let best = g
            .vertices()
            .filter(|&v| !in_x[v] && !blocked[v] && score[v] > 0)
            .max_by_key(|&v| (score[v], std::cmp::Reverse(spread[v]), std::cmp::Reverse(v)));
        let Some(v) = best else { return Ok(None) };
        blocked[v] = true;
        separator.push(v);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WaterLily {
    pub roots: Vec<Vertex>,
    pub centres: Vec<Vertex>,
    pub depth: u32,
    pub radius: u32,
    pub adhesion: usize,
    /// Depth-`d` profile onto the roots shared by every centre.
    pub profile: Profile,
    /// Shared pad signature, when the lily was restricted to one signature class.
    pub signature: Option<String>,
    /// Vertex labels the signature was computed with.
    pub labels: Option<Vec<u32>>,
}

impl WaterLily {
    /// Centres per root; `None` without roots.
    pub fn ratio(&self) -> Option<f64> {
        (!self.roots.is_empty()).then(|| self.centres.len() as f64 / self.roots.len() as f64)
    }

    /// Pads of all centres: `N^ρ_{g−R}[C]`.
    pub fn pads(&self, g: &Graph) -> Vec<Vertex> {
        pad_vertices(g, &self.roots, &self.centres, self.radius)
    }
}

fn pad_vertices(g: &Graph, roots: &[Vertex], centres: &[Vertex], radius: u32) -> Vec<Vertex> {
    let blocked = vset::mask(g.n(), roots);
    let mut bfs = Bfs::new(g.n());
    let mut out = bfs
        .run(
            g,
            centres,
            radius,
            |w| if blocked[w] { Step::Skip } else { Step::Expand },
        )
        .to_vec();
    out.sort_unstable();
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LilyCheck {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LilyReport {
    pub checks: Vec<LilyCheck>,
    pub warning: Option<String>,
}

impl LilyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&LilyCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

/// Recomputes every water-lily property of `lily` from scratch.
pub fn verify_lily(g: &Graph, lily: &WaterLily) -> LilyReport {
    let mut checks = Vec::new();
    let mut push = |name, witness: Option<Vertex>| {
        checks.push(LilyCheck {
            name,
            passed: witness.is_none(),
            witness,
        })
    };
    let in_range = g.check_set(&lily.roots).is_ok() && g.check_set(&lily.centres).is_ok();
    if !in_range {
        let bad = lily.roots.iter().chain(&lily.centres).copied().find(|&v| v >= g.n());
        push("vertices in range", bad);
        return LilyReport { checks, warning: None };
    }
    let blocked = vset::mask(g.n(), &lily.roots);
    let shared = lily.centres.iter().copied().find(|&c| blocked[c]);
    let depth_ok = lily.depth <= lily.radius;
    push(
        "roots and centres disjoint, depth at most radius",
        shared.or(if depth_ok { None } else { lily.centres.first().copied() }),
    );

    let mut bfs = Bfs::new(g.n());
    let in_c = vset::mask(g.n(), &lily.centres);
    let mut too_close = None;
    for &c in &lily.centres {
        let hit = bfs
            .run(g, &[c], 2 * lily.radius, |w| {
                if blocked[w] {
                    Step::Skip
                } else {
                    Step::Expand
                }
            })
            .iter()
            .copied()
            .find(|&w| w != c && in_c[w]);
        if hit.is_some() {
            too_close = Some(c);
            break;
        }
    }
    push("centres scattered without roots", too_close);

    let pads = lily.pads(g);
    let mut thin = None;
    for &v in &pads {
        let roots_near = bfs
            .run(g, &[v], lily.depth, |_| Step::Expand)
            .iter()
            .filter(|&&w| blocked[w])
            .count();
        if roots_near < lily.adhesion {
            thin = Some(v);
            break;
        }
    }
    push("pads dominated by roots", thin);

    let mut p = Projector::new(g, &lily.roots);
    let odd = lily
        .centres
        .iter()
        .copied()
        .find(|&c| p.profile(c, lily.depth) != lily.profile);
    push("centres share one profile", odd);

    if let Some(sig) = &lily.signature {
        let labels = lily.labels.as_deref();
        let odd = lily.centres.iter().copied().find(|&c| {
            pad_signature(g, &lily.roots, lily.radius, lily.depth, c, labels)
                .map(|s| s.encoding != *sig)
                .unwrap_or(true)
        });
        push("centres share one pad signature", odd);
    }

    let warning = lily
        .centres
        .is_empty()
        .then(|| "lily has no centres; checks hold vacuously".to_string());
    LilyReport { checks, warning }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadSignature {
    pub center: Vertex,
    pub encoding: String,
}

/// For each distance `i = 0..=radius` from `a` in `g − roots`, the set of
/// (depth-`d` profile onto the roots, label) pairs of the vertices at exactly that distance.
pub fn pad_signature(
    g: &Graph,
    roots: &[Vertex],
    radius: u32,
    depth: u32,
    a: Vertex,
    labels: Option<&[u32]>,
) -> Result<PadSignature> {
    g.check_vertex(a)?;
    g.check_set(roots)?;
    if let Some(l) = labels {
        if l.len() != g.n() {
            return Err(Error::Input(format!("{} labels for {} vertices", l.len(), g.n())));
        }
    }
    let blocked = vset::mask(g.n(), roots);
    if blocked[a] {
        return Err(Error::Input(format!("centre {a} is a root")));
    }
    let mut bfs = Bfs::new(g.n());
    bfs.run(g, &[a], radius, |w| if blocked[w] { Step::Skip } else { Step::Expand });
    let mut levels: Vec<BTreeSet<(String, u32)>> = vec![BTreeSet::new(); radius as usize + 1];
    let mut p = Projector::new(g, roots);
    for &x in bfs.order() {
        let label = labels.map_or(0, |l| l[x]);
        levels[bfs.dist(x) as usize].insert((p.profile(x, depth).encode(), label));
    }
    let encoding = levels
        .iter()
        .enumerate()
        .map(|(i, set)| {
            let items: Vec<String> = set.iter().map(|(p, l)| format!("[{p}]#{l}")).collect();
            format!("{i}:{{{}}}", items.join(";"))
        })
        .collect::<Vec<_>>()
        .join("/");
    Ok(PadSignature { center: a, encoding })
}

/// Why a lily search gave up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LilyFailure {
    /// The graph has no `(d,c)`-dominating set.
    NoDominator,
    /// No candidate outside the dominator closure.
    EmptyCandidates,
    /// No class produced enough uniform centres.
    TooFewCentres { best: usize, wanted: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LilyOutcome {
    Found(WaterLily),
    Failed(LilyFailure),
}

impl LilyOutcome {
    pub fn found(self) -> Option<WaterLily> {
        match self {
            LilyOutcome::Found(l) => Some(l),
            LilyOutcome::Failed(_) => None,
        }
    }
}

/// Tunables of the lily search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LilyConfig {
    pub max_separators: usize,
    /// Projection-closure threshold; [`default_threshold`] when `None`.
    pub closure_threshold: Option<usize>,
}

impl Default for LilyConfig {
    fn default() -> Self {
        LilyConfig {
            max_separators: DEFAULT_MAX_SEPARATORS,
            closure_threshold: None,
        }
    }
}

/// Lily search state that does not depend on the candidate set: the `(d,c)`-dominator
/// and its projection closure at radius `ρ + d`.
#[derive(Clone, Debug)]
pub struct LilyFinder<'g> {
    g: &'g Graph,
    depth: u32,
    radius: u32,
    adhesion: usize,
    dominator: Option<Vec<Vertex>>,
    closure: Vec<Vertex>,
    config: LilyConfig,
}

impl<'g> LilyFinder<'g> {
    /// Computes the dominator with [`approx_rc_dominating`].
    pub fn new(g: &'g Graph, depth: u32, radius: u32, adhesion: usize, config: LilyConfig) -> Result<Self> {
        check_shape(depth, radius, adhesion)?;
        let dominator = match approx_rc_dominating(g, depth, adhesion)? {
            RcApprox::Feasible(d) => Some(d.set),
            RcApprox::Infeasible(_) => None,
        };
        Self::build(g, depth, radius, adhesion, dominator, config)
    }

    /// Uses a caller-supplied `(d,c)`-dominator; roots are then drawn from it.
    pub fn with_dominator(
        g: &'g Graph,
        depth: u32,
        radius: u32,
        adhesion: usize,
        dominator: Vec<Vertex>,
        config: LilyConfig,
    ) -> Result<Self> {
        check_shape(depth, radius, adhesion)?;
        g.check_set(&dominator)?;
        Self::build(g, depth, radius, adhesion, Some(vset::normalized(dominator)), config)
    }

    fn build(
        g: &'g Graph,
        depth: u32,
        radius: u32,
        adhesion: usize,
        dominator: Option<Vec<Vertex>>,
        config: LilyConfig,
    ) -> Result<Self> {
        let closure = match &dominator {
            Some(d) => {
                let tau = config.closure_threshold.unwrap_or_else(|| default_threshold(g));
                projection_closure(g, d, radius + depth, tau)?
            }
            None => Vec::new(),
        };
        Ok(LilyFinder {
            g,
            depth,
            radius,
            adhesion,
            dominator,
            closure,
            config,
        })
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    pub fn dominator(&self) -> Option<&[Vertex]> {
        self.dominator.as_deref()
    }

    pub fn closure(&self) -> &[Vertex] {
        &self.closure
    }

    /// Uniform lily with at least `t` centres drawn from `a_set`.
    pub fn find_uniform(&self, a_set: &[Vertex], t: usize) -> Result<LilyOutcome> {
        self.g.check_set(a_set)?;
        let Some(dominator) = &self.dominator else {
            return Ok(LilyOutcome::Failed(LilyFailure::NoDominator));
        };
        let t = t.max(1);
        let g = self.g;
        let in_d = vset::mask(g.n(), &self.closure);
        let candidates: Vec<Vertex> = vset::normalized(a_set.to_vec())
            .into_iter()
            .filter(|&v| !in_d[v])
            .collect();
        if candidates.is_empty() {
            return Ok(LilyOutcome::Failed(LilyFailure::EmptyCandidates));
        }
        // classes by (ρ+d)-profile onto the closure, largest first
        let mut p = Projector::new(g, &self.closure);
        let mut by_profile: BTreeMap<Profile, Vec<Vertex>> = BTreeMap::new();
        for &a in &candidates {
            by_profile
                .entry(p.profile(a, self.radius + self.depth))
                .or_default()
                .push(a);
        }
        let mut classes: Vec<(Profile, Vec<Vertex>)> = by_profile.into_iter().collect();
        classes.sort_by_key(|(_, m)| (std::cmp::Reverse(m.len()), m[0]));

        let mut best = 0;
        for (class_profile, members) in classes {
            if members.len() < t {
                break;
            }
            match self.lily_from_class(&class_profile, &members, t, dominator)? {
                Ok(lily) => return Ok(LilyOutcome::Found(lily)),
                Err(size) => best = best.max(size),
            }
        }
        Ok(LilyOutcome::Failed(LilyFailure::TooFewCentres { best, wanted: t }))
    }

    /// One class attempt: `Err(best centre count)` when it falls short.
    fn lily_from_class(
        &self,
        class_profile: &Profile,
        members: &[Vertex],
        t: usize,
        dominator: &[Vertex],
    ) -> Result<std::result::Result<WaterLily, usize>> {
        let g = self.g;
        let far_roots = class_profile.support();
        let mut target = t;
        let mut best = 0;
        loop {
            let Some(sep) = uqw(g, members, 2 * self.radius, target, self.config.max_separators)? else {
                return Ok(Err(best));
            };
            let inner = vset::union(&sep.separator, &far_roots);
            let scattered: Vec<Vertex> = sep
                .scattered
                .iter()
                .copied()
                .filter(|v| !vset::contains(&inner, *v))
                .collect();
            let mut p = Projector::new(g, &inner);
            let mut groups: BTreeMap<Profile, Vec<Vertex>> = BTreeMap::new();
            for &a in &scattered {
                groups.entry(p.profile(a, self.depth)).or_default().push(a);
            }
            let centres = groups
                .into_values()
                .max_by_key(|m| (m.len(), std::cmp::Reverse(m[0])))
                .unwrap_or_default();
            best = best.max(centres.len());
            if centres.len() >= t {
                return self.finish(inner, centres, dominator).map(Ok);
            }
            if target >= members.len() {
                return Ok(Err(best));
            }
            target = (target * 2).min(members.len());
        }
    }

    /// Adds shadow roots from the dominator so that every pad vertex sees `c` roots.
    fn finish(&self, inner: Vec<Vertex>, centres: Vec<Vertex>, dominator: &[Vertex]) -> Result<WaterLily> {
        let g = self.g;
        let in_dom = vset::mask(g.n(), dominator);
        let pads = pad_vertices(g, &inner, &centres, self.radius);
        let mut p = Projector::new(g, &inner);
        let mut classes: BTreeMap<Profile, Vertex> = BTreeMap::new();
        for &u in &pads {
            classes.entry(p.profile(u, self.depth)).or_insert(u);
        }
        let mut scratch = Bfs::new(g.n());
        let mut added = Vec::new();
        for (profile, rep) in classes {
            let need = self.adhesion.saturating_sub(profile.len());
            if need == 0 {
                continue;
            }
            let picks: Vec<Vertex> = p
                .shadow(rep, self.depth, &mut scratch)
                .into_iter()
                .filter(|&w| in_dom[w])
                .take(need)
                .collect();
            added.extend(picks);
        }
        let roots = vset::union(&inner, &added);
        let before = Projector::new(g, &inner).profile(centres[0], self.depth);
        let mut after = Projector::new(g, &roots);
        for &c in &centres {
            if after.profile(c, self.depth) != before {
                return Err(Error::Internal(format!(
                    "root augmentation changed the profile of centre {c}"
                )));
            }
        }
        let lily = WaterLily {
            roots,
            centres,
            depth: self.depth,
            radius: self.radius,
            adhesion: self.adhesion,
            profile: before,
            signature: None,
            labels: None,
        };
        let report = verify_lily(g, &lily);
        if !report.all_passed() {
            return Err(Error::Internal(format!(
                "constructed lily failed verification: {:?}",
                report.failures()
            )));
        }
        Ok(lily)
    }

    /// Lily whose centres additionally share one pad signature, with at least `t` centres.
    pub fn find_sigma_uniform(&self, a_set: &[Vertex], t: usize, labels: Option<&[u32]>) -> Result<LilyOutcome> {
        let t = t.max(1);
        let mut ask = t;
        let limit = a_set.len().max(t);
        loop {
            let lily = match self.find_uniform(a_set, ask)? {
                LilyOutcome::Found(l) => l,
                failed => return Ok(failed),
            };
            let restricted = restrict_to_signature(self.g, lily, labels)?;
            if restricted.centres.len() >= t {
                return Ok(LilyOutcome::Found(restricted));
            }
            if ask >= limit {
                return Ok(LilyOutcome::Failed(LilyFailure::TooFewCentres {
                    best: restricted.centres.len(),
                    wanted: t,
                }));
            }
            ask = (ask * 2).min(limit);
        }
    }
}

fn check_shape(depth: u32, radius: u32, adhesion: usize) -> Result<()> {
    if depth > radius {
        return Err(Error::Input(format!("depth {depth} exceeds radius {radius}")));
    }
    if adhesion == 0 {
        return Err(Error::Input("adhesion must be at least 1".into()));
    }
    Ok(())
}

/// Keeps the largest class of centres under the pad signature (smallest member on ties).
pub fn restrict_to_signature(g: &Graph, lily: WaterLily, labels: Option<&[u32]>) -> Result<WaterLily> {
    let mut classes: BTreeMap<String, Vec<Vertex>> = BTreeMap::new();
    for &c in &lily.centres {
        let sig = pad_signature(g, &lily.roots, lily.radius, lily.depth, c, labels)?;
        classes.entry(sig.encoding).or_default().push(c);
    }
    let (sig, centres) = classes
        .into_iter()
        .max_by_key(|(_, m)| (m.len(), std::cmp::Reverse(m[0])))
        .unwrap_or_default();
    let lily = WaterLily {
        centres,
        signature: Some(sig),
        labels: labels.map(<[u32]>::to_vec),
        ..lily
    };
    let report = verify_lily(g, &lily);
    if !report.all_passed() {
        return Err(Error::Internal(format!(
            "restricted lily failed verification: {:?}",
            report.failures()
        )));
    }
    Ok(lily)
}

/// Uniform lily of depth `d`, radius `r`, adhesion `c` with at least `t` centres from `a_set`.
pub fn find_uniform_lily(g: &Graph, a_set: &[Vertex], d: u32, r: u32, c: usize, t: usize) -> Result<LilyOutcome> {
    LilyFinder::new(g, d, r, c, LilyConfig::default())?.find_uniform(a_set, t)
}

/// As [`find_uniform_lily`], with all centres sharing one pad signature.
pub fn find_sigma_uniform_lily(
    g: &Graph,
    a_set: &[Vertex],
    d: u32,
    r: u32,
    c: usize,
    t: usize,
    labels: Option<&[u32]>,
) -> Result<LilyOutcome> {
    LilyFinder::new(g, d, r, c, LilyConfig::default())?.find_sigma_uniform(a_set, t, labels)
}
