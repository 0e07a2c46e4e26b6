//! Simple undirected graphs with dense 0-based vertex ids.
//!
//! Vertex sets are passed around as sorted, duplicate-free `Vec<Vertex>`;
//! see [`crate::vset`] for the helpers that keep them in that shape.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Distance value used for "unreachable within the cap".
pub const INF: u32 = u32::MAX;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
}

/// Where a path created by [`Graph::attach_path`] ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathEnd {
    Existing(Vertex),
    Fresh,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttachOutcome {
    /// Newly created vertices in path order (for a fresh end the last one is the endpoint).
    pub created: Vec<Vertex>,
    /// Set when a length-1 attachment found the edge already present.
    pub already_present: bool,
}

/// Bidirectional vertex map between a graph and one of its induced subgraphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdMap {
    to_orig: Vec<Vertex>,
    to_sub: Vec<Option<Vertex>>,
}

impl IdMap {
    pub fn to_original(&self, v: Vertex) -> Vertex {
        self.to_orig[v]
    }

    pub fn to_sub(&self, v: Vertex) -> Option<Vertex> {
        self.to_sub.get(v).copied().flatten()
    }

    pub fn originals(&self) -> &[Vertex] {
        &self.to_orig
    }

    pub fn map_to_original(&self, set: &[Vertex]) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = set.iter().map(|&v| self.to_orig[v]).collect();
        out.sort_unstable();
        out
    }

    /// Maps a set of original vertices into the subgraph, dropping those that are absent.
    pub fn map_to_sub(&self, set: &[Vertex]) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = set.iter().filter_map(|&v| self.to_sub(v)).collect();
        out.sort_unstable();
        out
    }
}

/// Result of [`Graph::wcol_upper_bound`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WcolBound {
    pub radius: u32,
    pub bound: usize,
    /// The linear order used, smallest first.
    pub order: Vec<Vertex>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and out-of-range ids.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            if !g.add_edge(u, v)? {
                return Err(Error::Input(format!("duplicate edge {u}-{v}")));
            }
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v, n: self.n() })
        }
    }

    pub fn check_set(&self, set: &[Vertex]) -> Result<()> {
        set.iter().try_for_each(|&v| self.check_vertex(v))
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    /// Adds edge `uv`; returns `false` if it was already present.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Input(format!("self-loop at {u}")));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                Ok(true)
            }
        }
    }

    /// Checks the structural invariants (symmetric, loop-free, strictly sorted lists).
    pub fn is_well_formed(&self) -> bool {
        self.adj.iter().enumerate().all(|(u, nb)| {
            nb.windows(2).all(|w| w[0] < w[1])
                && nb
                    .iter()
                    .all(|&v| v < self.n() && v != u && self.adj[v].binary_search(&u).is_ok())
        })
    }

    /// Closed ball `N^r[v]`, sorted.
    pub fn ball(&self, v: Vertex, r: u32) -> Result<Vec<Vertex>> {
        self.check_vertex(v)?;
        let mut bfs = Bfs::new(self.n());
        let mut out = bfs.run(self, &[v], r, |_| Step::Expand).to_vec();
        out.sort_unstable();
        Ok(out)
    }

    /// Exact distance if it is at most `cap`, otherwise `None`.
    pub fn bounded_distance(&self, u: Vertex, v: Vertex, cap: u32) -> Result<Option<u32>> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let mut bfs = Bfs::new(self.n());
        bfs.run(self, &[u], cap, |_| Step::Expand);
        Ok(bfs.distance(v))
    }

    /// Connects `u` to `end` by a path of length `len`, creating `len - 1` internal vertices.
    pub fn attach_path(&mut self, u: Vertex, end: PathEnd, len: u32) -> Result<AttachOutcome> {
        self.check_vertex(u)?;
        if len == 0 {
            return Err(Error::Input("path length must be at least 1".into()));
        }
        if let PathEnd::Existing(v) = end {
            self.check_vertex(v)?;
            if len == 1 {
                let added = self.add_edge(u, v)?;
                return Ok(AttachOutcome {
                    created: Vec::new(),
                    already_present: !added,
                });
            }
            if u == v && len < 3 {
                return Err(Error::Input(format!("cannot close a cycle of length {len} at {u}")));
            }
        }
        let mut created = Vec::with_capacity(len as usize);
        let mut prev = u;
        for _ in 1..len {
            let w = self.add_vertex();
            self.add_edge(prev, w)?;
            created.push(w);
            prev = w;
        }
        let last = match end {
            PathEnd::Existing(v) => v,
            PathEnd::Fresh => {
                let w = self.add_vertex();
                created.push(w);
                w
            }
        };
        self.add_edge(prev, last)?;
        Ok(AttachOutcome {
            created,
            already_present: false,
        })
    }

    /// Subgraph induced by `s` (order-insensitive), with the id map.
    pub fn induced_subgraph(&self, s: &[Vertex]) -> Result<(Graph, IdMap)> {
        self.check_set(s)?;
        let to_orig = crate::vset::normalized(s.to_vec());
        let mut to_sub = vec![None; self.n()];
        for (i, &v) in to_orig.iter().enumerate() {
            to_sub[v] = Some(i);
        }
        let adj = to_orig
            .iter()
            .map(|&v| self.adj[v].iter().filter_map(|&w| to_sub[w]).collect())
            .collect();
        Ok((Graph { adj }, IdMap { to_orig, to_sub }))
    }

    /// Greedy maximal subset of `x` with pairwise distances greater than `2r`,
    /// scanning candidates by increasing id.
    pub fn greedy_scattered(&self, x: &[Vertex], r: u32) -> Result<Vec<Vertex>> {
        self.check_set(x)?;
        let mut blocked = vec![false; self.n()];
        let mut bfs = Bfs::new(self.n());
        let mut out = Vec::new();
        for v in crate::vset::normalized(x.to_vec()) {
            if blocked[v] {
                continue;
            }
            out.push(v);
            for &w in bfs.run(self, &[v], 2 * r, |_| Step::Expand) {
                blocked[w] = true;
            }
        }
        Ok(out)
    }

    /// Min-degree elimination order (ties by id) and the degeneracy it certifies.
    pub fn degeneracy_order(&self) -> (usize, Vec<Vertex>) {
        let mut deg: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let mut queue: BTreeSet<(usize, Vertex)> = self.vertices().map(|v| (deg[v], v)).collect();
        let mut removed = vec![false; self.n()];
        let mut order = Vec::with_capacity(self.n());
        let mut degeneracy = 0;
        while let Some((d, v)) = queue.pop_first() {
            degeneracy = degeneracy.max(d);
            removed[v] = true;
            order.push(v);
            for &w in &self.adj[v] {
                if !removed[w] {
                    queue.remove(&(deg[w], w));
                    deg[w] -= 1;
                    queue.insert((deg[w], w));
                }
            }
        }
        (degeneracy, order)
    }

    pub fn degeneracy(&self) -> usize {
        self.degeneracy_order().0
    }

    /// Upper bound on the weak `r`-colouring number from the reversed elimination order.
    pub fn wcol_upper_bound(&self, r: u32) -> Result<WcolBound> {
        if r == 0 {
            return Err(Error::Input("wcol radius must be at least 1".into()));
        }
        let (_, mut order) = self.degeneracy_order();
        order.reverse();
        let mut pos = vec![0usize; self.n()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        // count[v] = number of smaller vertices weakly r-reachable from v
        let mut count = vec![0usize; self.n()];
        let mut bfs = Bfs::new(self.n());
        for &u in &order {
            let pu = pos[u];
            let reached = bfs.run(self, &[u], r, |w| if pos[w] > pu { Step::Expand } else { Step::Skip });
            for &w in reached {
                if w != u {
                    count[w] += 1;
                }
            }
        }
        let bound = count.iter().map(|c| c + 1).max().unwrap_or(0);
        Ok(WcolBound {
            radius: r,
            bound,
            order,
        })
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

/// Per-neighbour decision of a [`Bfs`] run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Step {
    /// Record the vertex and continue through it.
    Expand,
    /// Record the vertex but do not continue through it.
    Halt,
    /// Treat the vertex as absent.
    Skip,
}

/// Reusable truncated BFS with scratch buffers.
pub(crate) struct Bfs {
    dist: Vec<u32>,
    order: Vec<Vertex>,
}

impl Bfs {
    pub(crate) fn new(n: usize) -> Self {
        Bfs {
            dist: vec![INF; n],
            order: Vec::new(),
        }
    }

    /// Runs from `sources` (always expanded) up to depth `radius`; returns reached
    /// vertices in BFS order.
    pub(crate) fn run<F>(&mut self, g: &Graph, sources: &[Vertex], radius: u32, step: F) -> &[Vertex]
    where
        F: Fn(Vertex) -> Step,
    {
        for &v in &self.order {
            self.dist[v] = INF;
        }
        self.order.clear();
        if self.dist.len() < g.n() {
            self.dist.resize(g.n(), INF);
        }
        for &s in sources {
            if self.dist[s] == INF {
                self.dist[s] = 0;
                self.order.push(s);
            }
        }
        let mut head = 0;
        while head < self.order.len() {
            let v = self.order[head];
            head += 1;
            let d = self.dist[v];
            if d >= radius || (d > 0 && step(v) != Step::Expand) {
                continue;
            }
            for &w in g.neighbors(v) {
                if self.dist[w] == INF && step(w) != Step::Skip {
                    self.dist[w] = d + 1;
                    self.order.push(w);
                }
            }
        }
        &self.order
    }

    /// Vertices reached by the last run, in BFS order.
    pub(crate) fn order(&self) -> &[Vertex] {
        &self.order
    }

    pub(crate) fn distance(&self, v: Vertex) -> Option<u32> {
        match self.dist.get(v) {
            Some(&d) if d != INF => Some(d),
            _ => None,
        }
    }

    pub(crate) fn dist(&self, v: Vertex) -> u32 {
        self.dist.get(v).copied().unwrap_or(INF)
    }
}
