//! Projections onto a vertex set, shadows, projection profiles and the closures
//! built from them.
//!
//! A path is `x`-avoiding if none of its internal vertices lies in `x`. The
//! `r`-projection of `u` onto `x` is the set of `x`-vertices reachable from `u`
//! by an `x`-avoiding path of length at most `r`; the profile additionally
//! records the length of a shortest such path.

use std::cmp::Reverse;
use std::collections::{BTreeSet, HashMap, VecDeque};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Bfs, Graph, IdMap, Step, Vertex};
use crate::vset;

/// The distance function of a vertex onto a set, as sorted `(vertex, distance)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile {
    radius: u32,
    entries: Vec<(Vertex, u32)>,
}

impl Profile {
    pub fn new(radius: u32, mut entries: Vec<(Vertex, u32)>) -> Self {
        entries.sort_unstable();
        Profile { radius, entries }
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn entries(&self) -> &[(Vertex, u32)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, v: Vertex) -> Option<u32> {
        self.entries
            .binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| self.entries[i].1)
    }

    pub fn support(&self) -> Vec<Vertex> {
        self.entries.iter().map(|&(v, _)| v).collect()
    }

    /// Canonical text form, e.g. `3:1,7:2`.
    pub fn encode(&self) -> String {
        self.entries
            .iter()
            .map(|(v, d)| format!("{v}:{d}"))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Renames the profile's vertices with a monotone map.
    pub(crate) fn mapped(&self, f: impl Fn(Vertex) -> Vertex) -> Profile {
        Profile::new(self.radius, self.entries.iter().map(|&(v, d)| (f(v), d)).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileClass {
    pub profile: Profile,
    /// Sorted members.
    pub members: Vec<Vertex>,
}

/// The vertices outside `x` grouped by profile; classes ordered by smallest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfilePartition {
    pub radius: u32,
    pub classes: Vec<ProfileClass>,
}

impl ProfilePartition {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, v: Vertex) -> Option<&ProfileClass> {
        self.classes.iter().find(|c| vset::contains(&c.members, v))
    }
}

/// Scratch state for repeated projection queries onto a growing set.
pub(crate) struct Projector<'g> {
    g: &'g Graph,
    in_x: Vec<bool>,
    bfs: Bfs,
}

impl<'g> Projector<'g> {
    pub(crate) fn new(g: &'g Graph, x: &[Vertex]) -> Self {
        Projector {
            g,
            in_x: vset::mask(g.n(), x),
            bfs: Bfs::new(g.n()),
        }
    }

    pub(crate) fn insert(&mut self, v: Vertex) {
        self.in_x[v] = true;
    }

    pub(crate) fn in_x(&self, v: Vertex) -> bool {
        self.in_x[v]
    }

    /// Vertices reachable from `u` by `x`-avoiding paths of length at most `r`
    /// (including `u` and the reached `x`-vertices).
    pub(crate) fn reach(&mut self, u: Vertex, r: u32) -> &[Vertex] {
        let in_x = &self.in_x;
        self.bfs
            .run(self.g, &[u], r, |w| if in_x[w] { Step::Halt } else { Step::Expand })
    }

    pub(crate) fn profile(&mut self, u: Vertex, r: u32) -> Profile {
        self.reach(u, r);
        let b = &self.bfs;
        let entries = b
            .order()
            .iter()
            .filter(|&&w| self.in_x[w])
            .map(|&w| (w, b.dist(w)))
            .collect();
        Profile::new(r, entries)
    }

    /// Shadow of `u`: the ball minus the `x`-avoiding reach. `scratch` holds the ball search.
    pub(crate) fn shadow(&mut self, u: Vertex, r: u32, scratch: &mut Bfs) -> Vec<Vertex> {
        self.reach(u, r);
        let b = &self.bfs;
        let mut out: Vec<Vertex> = scratch
            .run(self.g, &[u], r, |_| Step::Expand)
            .iter()
            .copied()
            .filter(|&w| b.distance(w).is_none())
            .collect();
        out.sort_unstable();
        out
    }

    pub(crate) fn projection_size(&mut self, u: Vertex, r: u32) -> usize {
        self.reach(u, r);
        self.bfs.order().iter().filter(|&&w| self.in_x[w]).count()
    }
}

fn check_outside(g: &Graph, x: &[Vertex], u: Vertex) -> Result<()> {
    g.check_vertex(u)?;
    g.check_set(x)?;
    if x.contains(&u) {
        return Err(Error::Input(format!("vertex {u} lies in the projection target set")));
    }
    Ok(())
}

/// `r`-projection profile of `u` onto `x`.
pub fn profile(g: &Graph, x: &[Vertex], u: Vertex, r: u32) -> Result<Profile> {
    check_outside(g, x, u)?;
    Ok(Projector::new(g, x).profile(u, r))
}

/// `r`-projection of `u` onto `x`: the support of its profile.
pub fn projection(g: &Graph, x: &[Vertex], u: Vertex, r: u32) -> Result<Vec<Vertex>> {
    Ok(profile(g, x, u, r)?.support())
}

/// Vertices within distance `r` of `u` that no `x`-avoiding path of length at most `r` reaches.
pub fn shadow(g: &Graph, x: &[Vertex], u: Vertex, r: u32) -> Result<Vec<Vertex>> {
    check_outside(g, x, u)?;
    Ok(Projector::new(g, x).shadow(u, r, &mut Bfs::new(g.n())))
}

/// Shadow together with projection.
pub fn sp_union(g: &Graph, x: &[Vertex], u: Vertex, r: u32) -> Result<Vec<Vertex>> {
    Ok(vset::union(&shadow(g, x, u, r)?, &projection(g, x, u, r)?))
}

/// Groups `V ∖ x` by `r`-profile onto `x`.
pub fn profile_partition(g: &Graph, x: &[Vertex], r: u32) -> Result<ProfilePartition> {
    g.check_set(x)?;
    let outside = vset::complement(g.n(), x);
    let profiles: Vec<Profile> = if outside.len() > 2048 {
        outside
            .par_iter()
            .map_init(|| Projector::new(g, x), |p, &u| p.profile(u, r))
            .collect()
    } else {
        let mut p = Projector::new(g, x);
        outside.iter().map(|&u| p.profile(u, r)).collect()
    };
    Ok(group(r, &outside, profiles))
}

pub(crate) fn group(r: u32, vertices: &[Vertex], profiles: Vec<Profile>) -> ProfilePartition {
    let mut index: HashMap<Profile, usize> = HashMap::new();
    let mut classes: Vec<ProfileClass> = Vec::new();
    for (&u, prof) in vertices.iter().zip(profiles) {
        match index.get(&prof) {
            Some(&i) => classes[i].members.push(u),
            None => {
                index.insert(prof.clone(), classes.len());
                classes.push(ProfileClass {
                    profile: prof,
                    members: vec![u],
                });
            }
        }
    }
    for c in &mut classes {
        c.members.sort_unstable();
    }
    classes.sort_by_key(|c| c.members[0]);
    ProfilePartition { radius: r, classes }
}

/// Default closure threshold: four times the degeneracy, at least 1.
pub fn default_threshold(g: &Graph) -> usize {
    (4 * g.degeneracy()).max(1)
}

/// Grows `x` until every outside vertex has an `r`-projection of size at most `tau`,
/// always adding an outside vertex with the largest projection (smallest id on ties).
pub fn projection_closure(g: &Graph, x: &[Vertex], r: u32, tau: usize) -> Result<Vec<Vertex>> {
    g.check_set(x)?;
    if tau == 0 {
        return Err(Error::Input("closure threshold must be at least 1".into()));
    }
    let n = g.n();
    let mut p = Projector::new(g, x);
    let mut size = vec![0usize; n];
    let mut queue: BTreeSet<(Reverse<usize>, Vertex)> = BTreeSet::new();
    for u in g.vertices() {
        if p.in_x(u) {
            continue;
        }
        size[u] = p.projection_size(u, r);
        queue.insert((Reverse(size[u]), u));
    }
    let cap = 10 * n;
    let mut iterations = 0;
    let mut ball_bfs = Bfs::new(n);
    while let Some(&(Reverse(s), u)) = queue.first() {
        if s <= tau {
            break;
        }
        iterations += 1;
        if iterations > cap {
            return Err(Error::ClosureDiverged(iterations));
        }
        queue.remove(&(Reverse(s), u));
        p.insert(u);
        let near = ball_bfs.run(g, &[u], r, |_| Step::Expand).to_vec();
        for w in near {
            if p.in_x(w) {
                continue;
            }
            queue.remove(&(Reverse(size[w]), w));
            size[w] = p.projection_size(w, r);
            queue.insert((Reverse(size[w]), w));
        }
    }
    Ok(vset::from_mask(&p.in_x))
}

/// Internal vertices of the lexicographically least shortest `u`–`v` path of length `d`.
fn lex_least_path(g: &Graph, u: Vertex, v: Vertex, d: u32, bfs: &mut Bfs) -> Vec<Vertex> {
    bfs.run(g, &[v], d, |_| Step::Expand);
    let mut out = Vec::new();
    let mut cur = u;
    for step in 1..d {
        let want = d - step;
        cur = *g
            .neighbors(cur)
            .iter()
            .find(|&&w| bfs.dist(w) == want)
            .expect("shortest path exists");
        out.push(cur);
    }
    out
}

/// Adds to `x` internal vertices of shortest paths until every pair of `x`-vertices at
/// distance at most `r` in `g` has the same distance inside the induced subgraph.
pub fn path_closure(g: &Graph, x: &[Vertex], r: u32) -> Result<Vec<Vertex>> {
    g.check_set(x)?;
    let x = vset::normalized(x.to_vec());
    let n = g.n();
    let mut inside = vset::mask(n, &x);
    let mut full = Bfs::new(n);
    let mut restricted = Bfs::new(n);
    let mut path_bfs = Bfs::new(n);
    for (i, &u) in x.iter().enumerate() {
        full.run(g, &[u], r, |_| Step::Expand);
        {
            let ins = &inside;
            restricted.run(g, &[u], r, |w| if ins[w] { Step::Expand } else { Step::Skip });
        }
        for &v in &x[i + 1..] {
            let Some(d) = full.distance(v) else { continue };
            if restricted.distance(v) == Some(d) {
                continue;
            }
            for w in lex_least_path(g, u, v, d, &mut path_bfs) {
                inside[w] = true;
            }
            let ins = &inside;
            restricted.run(g, &[u], r, |w| if ins[w] { Step::Expand } else { Step::Skip });
        }
    }
    Ok(vset::from_mask(&inside))
}

/// Output of [`projection_kernel`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionKernel {
    pub graph: Graph,
    pub map: IdMap,
    /// Projection closure of the input set.
    pub closure: Vec<Vertex>,
    /// Path closure of `closure`.
    pub path_closure: Vec<Vertex>,
    /// Profile-class representatives outside `closure`.
    pub representatives: Vec<Vertex>,
    /// Vertex set of the kernel in original ids.
    pub vertices: Vec<Vertex>,
}

/// Adds to `out` the internal vertices of a shortest `x`-avoiding path from `w` to every
/// vertex of its `r`-projection onto `x` (parents chosen by BFS discovery order).
fn add_avoiding_paths(g: &Graph, in_x: &[bool], w: Vertex, r: u32, out: &mut [bool]) {
    let mut parent: HashMap<Vertex, Vertex> = HashMap::new();
    let mut dist: HashMap<Vertex, u32> = HashMap::from([(w, 0)]);
    let mut queue = VecDeque::from([w]);
    let mut targets = Vec::new();
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        if (v != w && in_x[v]) || d >= r {
            continue;
        }
        for &y in g.neighbors(v) {
            if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(y) {
                e.insert(d + 1);
                parent.insert(y, v);
                if in_x[y] {
                    targets.push(y);
                }
                queue.push_back(y);
            }
        }
    }
    for t in targets {
        let mut cur = parent[&t];
        while cur != w {
            out[cur] = true;
            cur = parent[&cur];
        }
    }
}

/// Induced subgraph that preserves short distances inside `x` and realizes every
/// `r`-profile onto `x` at least `min(c, p)` times, where `p` is its multiplicity in `g`.
///
/// `tau` is the projection-closure threshold ([`default_threshold`] if `None`).
/// Both defining properties are re-verified before returning.
pub fn projection_kernel(g: &Graph, x: &[Vertex], r: u32, c: usize, tau: Option<usize>) -> Result<ProjectionKernel> {
    let k = build_projection_kernel(g, x, r, c, tau, true)?;
    let check = verify_projection_kernel(g, x, r, c, &k.graph, &k.map);
    if !check.is_ok() {
        return Err(Error::Internal(format!("projection kernel check failed: {check:?}")));
    }
    Ok(k)
}

/// `repair` also adds shortest `x`-avoiding paths from every kept vertex outside `x`
/// to its projection onto `x`; without it the closure-based paths alone can lose profiles.
pub(crate) fn build_projection_kernel(
    g: &Graph,
    x: &[Vertex],
    r: u32,
    c: usize,
    tau: Option<usize>,
    repair: bool,
) -> Result<ProjectionKernel> {
    g.check_set(x)?;
    if c == 0 {
        return Err(Error::Input("multiplicity c must be at least 1".into()));
    }
    let x = vset::normalized(x.to_vec());
    let tau = tau.unwrap_or_else(|| default_threshold(g));
    let x1 = projection_closure(g, &x, r, tau)?;
    let x2 = path_closure(g, &x1, r)?;
    let partition = profile_partition(g, &x1, r)?;
    let representatives = vset::normalized(
        partition
            .classes
            .iter()
            .flat_map(|cl| cl.members.iter().take(c).copied())
            .collect(),
    );
    let kept = vset::union(&x2, &representatives);
    let mut out = vset::mask(g.n(), &kept);
    let in_x1 = vset::mask(g.n(), &x1);
    for &w in kept.iter().filter(|&&w| !in_x1[w]) {
        add_avoiding_paths(g, &in_x1, w, r, &mut out);
    }
    if repair {
        let in_x = vset::mask(g.n(), &x);
        for &w in kept.iter().filter(|&&w| !in_x[w]) {
            add_avoiding_paths(g, &in_x, w, r, &mut out);
        }
    }
    let vertices = vset::from_mask(&out);
    let (graph, map) = g.induced_subgraph(&vertices)?;
    Ok(ProjectionKernel {
        graph,
        map,
        closure: x1,
        path_closure: x2,
        representatives,
        vertices,
    })
}

/// Result of checking the two projection-kernel properties.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ProjectionKernelCheck {
    /// A pair of `x`-vertices whose distance (up to `r`) differs between the graphs.
    pub distance_witness: Option<(Vertex, Vertex)>,
    /// A profile realized too rarely in the kernel, with its multiplicities in `g` and the kernel.
    pub profile_witness: Option<(Profile, usize, usize)>,
    /// An `x`-vertex missing from the kernel.
    pub missing: Option<Vertex>,
}

impl ProjectionKernelCheck {
    pub fn is_ok(&self) -> bool {
        self.distance_witness.is_none() && self.profile_witness.is_none() && self.missing.is_none()
    }
}

/// Recomputes both projection-kernel properties of `(kernel, map)` for `(g, x)` from scratch.
pub fn verify_projection_kernel(
    g: &Graph,
    x: &[Vertex],
    r: u32,
    c: usize,
    kernel: &Graph,
    map: &IdMap,
) -> ProjectionKernelCheck {
    let x = vset::normalized(x.to_vec());
    let mut check = ProjectionKernelCheck::default();
    if let Some(&v) = x.iter().find(|&&v| map.to_sub(v).is_none()) {
        check.missing = Some(v);
        return check;
    }
    let xs = map.map_to_sub(&x);

    let mut bg = Bfs::new(g.n());
    let mut bk = Bfs::new(kernel.n());
    'outer: for (&v, &vs) in x.iter().zip(&xs) {
        bg.run(g, &[v], r, |_| Step::Expand);
        bk.run(kernel, &[vs], r, |_| Step::Expand);
        for (&w, &ws) in x.iter().zip(&xs) {
            if bg.distance(w) != bk.distance(ws) {
                check.distance_witness = Some((v, w));
                break 'outer;
            }
        }
    }

    let in_g = profile_partition(g, &x, r).expect("validated set");
    let in_k = profile_partition(kernel, &xs, r).expect("validated set");
    let mut counts: HashMap<Profile, usize> = HashMap::new();
    for cl in in_k.classes {
        counts.insert(cl.profile.mapped(|v| map.to_original(v)), cl.members.len());
    }
    for cl in in_g.classes {
        let p = cl.members.len();
        let have = counts.get(&cl.profile).copied().unwrap_or(0);
        if have < c.min(p) {
            check.profile_witness = Some((cl.profile, p, have));
            break;
        }
    }
    check
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn profile_examples() {
        assert_eq!(profile(&path(3), &[2], 0, 2).unwrap().entries(), &[(2, 2)]);
        assert_eq!(profile(&path(4), &[1], 3, 3).unwrap().entries(), &[(1, 2)]);
        assert!(profile(&path(4), &[0], 3, 2).unwrap().is_empty());
        assert!(profile(&path(3), &[1], 1, 2).is_err());
    }

    #[test]
    fn projection_examples() {
        let g = cycle(4);
        assert_eq!(projection(&g, &[1, 3], 0, 2).unwrap(), vec![1, 3]);
        assert_eq!(projection(&star(4), &[0], 2, 2).unwrap(), vec![0]);
        // radius 1 gives neighbourhood ∩ x
        let k = complete(5);
        assert_eq!(projection(&k, &[1, 3], 0, 1).unwrap(), vec![1, 3]);
    }

    #[test]
    fn shadow_examples() {
        assert_eq!(shadow(&cycle(4), &[1, 3], 0, 2).unwrap(), vec![2]);
        assert!(shadow(&cycle(6), &[], 0, 3).unwrap().is_empty());
        assert_eq!(shadow(&path(3), &[1], 0, 2).unwrap(), vec![2]);
        assert_eq!(sp_union(&cycle(4), &[1, 3], 0, 2).unwrap(), vec![1, 2, 3]);
    }

    #[test]
    fn partition_examples() {
        let g = star(4);
        assert!(profile_partition(&g, &[0, 1, 2, 3, 4], 1).unwrap().classes.is_empty());
        let p = profile_partition(&g, &[0], 1).unwrap();
        assert_eq!(p.classes.len(), 1);
        assert_eq!(p.classes[0].members, vec![1, 2, 3, 4]);
        let p = profile_partition(&path(5), &[2], 1).unwrap();
        let members: Vec<_> = p.classes.iter().map(|c| c.members.clone()).collect();
        assert_eq!(members, vec![vec![0, 4], vec![1, 3]]);
    }

    #[test]
    fn closure_examples() {
        let g = cycle(6);
        assert_eq!(projection_closure(&g, &[0], 1, 2).unwrap(), vec![0]);
        let all: Vec<_> = g.vertices().collect();
        assert_eq!(projection_closure(&g, &all, 2, 1).unwrap(), all);
        // K5 from {0}, threshold 1: every outside projection is {0}, nothing is added.
        assert_eq!(projection_closure(&complete(5), &[0], 1, 1).unwrap(), vec![0]);
        // From {0,1} each added vertex enlarges the remaining projections, so the loop
        // absorbs 2, 3 and finally 4.
        assert_eq!(
            projection_closure(&complete(5), &[0, 1], 1, 1).unwrap(),
            vec![0, 1, 2, 3, 4]
        );
        assert!(projection_closure(&g, &[0], 1, 0).is_err());
    }

    #[test]
    fn path_closure_examples() {
        assert_eq!(path_closure(&complete(4), &[0, 1, 2], 3).unwrap(), vec![0, 1, 2]);
        assert_eq!(path_closure(&path(3), &[0, 2], 2).unwrap(), vec![0, 1, 2]);
        assert_eq!(path_closure(&cycle(6), &[0, 3], 3).unwrap(), vec![0, 1, 2, 3]);
        // pairs farther apart than r are ignored
        assert_eq!(path_closure(&path(4), &[0, 3], 2).unwrap(), vec![0, 3]);
    }

    #[test]
    fn projection_kernel_examples() {
        let g = star(6);
        let k = projection_kernel(&g, &[0], 1, 2, None).unwrap();
        assert_eq!(k.vertices, vec![0, 1, 2]);
        let all: Vec<_> = g.vertices().collect();
        let k = projection_kernel(&g, &all, 2, 1, None).unwrap();
        assert_eq!(k.graph, g);
    }
}
