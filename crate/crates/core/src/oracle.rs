//! Exact solvers for every problem, plain and annotated.
//!
//! Each solver works per connected component with a branch-and-bound search:
//! minimisation problems branch on the most constrained deficient vertex and
//! prune with a disjoint-candidates packing bound, the scattered-set search
//! decides candidates in id order and prunes with a ball-capacity bound.
//! The reported witness is canonical: among optimal solutions, the one whose
//! sorted vertex sequence is lexicographically least (for Roman domination the
//! doubled set is minimised this way and the single set is then forced).

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::vset;

pub const DEFAULT_SIZE_GUARD: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Set(Vec<Vertex>),
    Roman { d1: Vec<Vertex>, d2: Vec<Vertex> },
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleAnswer {
    /// `None` when the instance is infeasible.
    pub optimum: Option<usize>,
    pub witness: Witness,
    /// Search nodes visited.
    pub enumerated_count: u64,
}

impl OracleAnswer {
    pub fn is_feasible(&self) -> bool {
        self.optimum.is_some()
    }

    pub fn set(&self) -> Option<&[Vertex]> {
        match &self.witness {
            Witness::Set(s) => Some(s),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Oracle {
    pub size_guard: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            size_guard: DEFAULT_SIZE_GUARD,
        }
    }
}

impl Oracle {
    pub fn with_guard(size_guard: usize) -> Self {
        Oracle { size_guard }
    }

    fn guard(&self, g: &Graph) -> Result<()> {
        if g.n() > self.size_guard {
            return Err(Error::SizeGuard {
                n: g.n(),
                guard: self.size_guard,
            });
        }
        Ok(())
    }

    /// Minimum `|D|` such that every vertex of `l` (default all) sees `c` members within `r`.
    pub fn opt_rc_dom(&self, g: &Graph, r: u32, c: usize, l: Option<&[Vertex]>) -> Result<OracleAnswer> {
        self.guard(g)?;
        check_opt(g, l)?;
        let spec = CoverSpec {
            r,
            demand: c,
            exclude_self: false,
            cap: None,
        };
        Ok(solve_components(g, l, None, |sub, l, u| min_cover(sub, &spec, l, u)))
    }

    /// Minimum total `r`-dominating set for the vertices of `l`.
    pub fn opt_total(&self, g: &Graph, r: u32, l: Option<&[Vertex]>) -> Result<OracleAnswer> {
        self.guard(g)?;
        check_opt(g, l)?;
        let spec = CoverSpec {
            r,
            demand: 1,
            exclude_self: true,
            cap: None,
        };
        Ok(solve_components(g, l, None, |sub, l, u| min_cover(sub, &spec, l, u)))
    }

    /// Minimum `|D1| + 2|D2|` with `D2` dominating `l ∖ D1`.
    pub fn opt_roman(&self, g: &Graph, r: u32, l: Option<&[Vertex]>) -> Result<OracleAnswer> {
        self.guard(g)?;
        check_opt(g, l)?;
        let mut ans = solve_components(g, l, None, |sub, l, _| roman(sub, r, l));
        if let Witness::Set(_) = ans.witness {
            // no components at all
            ans.witness = Witness::Roman {
                d1: Vec::new(),
                d2: Vec::new(),
            };
        }
        Ok(ans)
    }

    /// Maximum `|I|`, `I ⊆ u` (default all), every ball of radius `r` holding at most `c` members.
    pub fn max_scattered(&self, g: &Graph, r: u32, c: usize, u: Option<&[Vertex]>) -> Result<OracleAnswer> {
        self.guard(g)?;
        check_opt(g, u)?;
        Ok(solve_components(g, None, u, |sub, _, u| max_scatter(sub, r, c, u)))
    }

    /// Minimum `|D|`, `D ⊆ u`, at least `lambda` near every vertex of `l`, at most `mu` near every vertex.
    pub fn opt_lambda_mu(
        &self,
        g: &Graph,
        r: u32,
        lambda: usize,
        mu: usize,
        l: Option<&[Vertex]>,
        u: Option<&[Vertex]>,
    ) -> Result<OracleAnswer> {
        self.guard(g)?;
        check_opt(g, l)?;
        check_opt(g, u)?;
        if lambda > mu {
            return Err(Error::Input(format!("lambda {lambda} exceeds mu {mu}")));
        }
        let spec = CoverSpec {
            r,
            demand: lambda,
            exclude_self: false,
            cap: Some(mu),
        };
        Ok(solve_components(g, l, u, |sub, l, u| min_cover(sub, &spec, l, u)))
    }

    /// Minimum `r`-perfect code.
    pub fn opt_perfect_code(&self, g: &Graph, r: u32) -> Result<OracleAnswer> {
        self.opt_lambda_mu(g, r, 1, 1, None, None)
    }
}

fn check_opt(g: &Graph, set: Option<&[Vertex]>) -> Result<()> {
    set.map_or(Ok(()), |s| g.check_set(s))
}

/// Runs `solve(sub, l, u)` on every component and combines the answers.
fn solve_components<F>(g: &Graph, l: Option<&[Vertex]>, u: Option<&[Vertex]>, solve: F) -> OracleAnswer
where
    F: Fn(&Graph, &[bool], &[bool]) -> OracleAnswer,
{
    let l_mask = l.map_or_else(|| vec![true; g.n()], |s| vset::mask(g.n(), s));
    let u_mask = u.map_or_else(|| vec![true; g.n()], |s| vset::mask(g.n(), s));
    let mut total = OracleAnswer {
        optimum: Some(0),
        witness: Witness::Set(Vec::new()),
        enumerated_count: 0,
    };
    let mut d1_all = Vec::new();
    let mut d2_all = Vec::new();
    let mut set_all = Vec::new();
    let mut roman = false;
    for comp in g.components() {
        let (sub, map) = g.induced_subgraph(&comp).expect("component vertices are valid");
        let l_sub: Vec<bool> = comp.iter().map(|&v| l_mask[v]).collect();
        let u_sub: Vec<bool> = comp.iter().map(|&v| u_mask[v]).collect();
        let ans = solve(&sub, &l_sub, &u_sub);
        total.enumerated_count += ans.enumerated_count;
        match (total.optimum, ans.optimum) {
            (Some(a), Some(b)) => total.optimum = Some(a + b),
            _ => total.optimum = None,
        }
        match ans.witness {
            Witness::Set(s) => set_all.extend(map.map_to_original(&s)),
            Witness::Roman { d1, d2 } => {
                roman = true;
                d1_all.extend(map.map_to_original(&d1));
                d2_all.extend(map.map_to_original(&d2));
            }
            Witness::None => {}
        }
    }
    total.witness = if total.optimum.is_none() {
        Witness::None
    } else if roman {
        Witness::Roman {
            d1: vset::normalized(d1_all),
            d2: vset::normalized(d2_all),
        }
    } else {
        Witness::Set(vset::normalized(set_all))
    };
    total
}

// ---------------------------------------------------------------------------
// minimisation over covers: (r,c)-domination, total domination, (r,[λ,μ])

struct CoverSpec {
    r: u32,
    demand: usize,
    exclude_self: bool,
    cap: Option<usize>,
}

struct CoverSearch<'a> {
    /// `cand[v]`: vertices whose selection counts towards the demand of `v`.
    cand: Vec<Vec<Vertex>>,
    /// `hits[w]`: constrained vertices whose demand `w` counts towards.
    hits: Vec<Vec<Vertex>>,
    balls: &'a [Vec<Vertex>],
    need: Vec<usize>,
    allowed: Vec<bool>,
    cap: Option<usize>,
    chosen: Vec<bool>,
    excluded: Vec<bool>,
    got: Vec<usize>,
    load: Vec<usize>,
    size: usize,
    bound: usize,
    stop_at_first: bool,
    found: Option<Vec<Vertex>>,
    nodes: u64,
}

impl CoverSearch<'_> {
    fn available(&self, w: Vertex) -> bool {
        self.allowed[w]
            && !self.chosen[w]
            && !self.excluded[w]
            && self
                .cap
                .is_none_or(|mu| self.balls[w].iter().all(|&y| self.load[y] < mu))
    }

    fn choose(&mut self, w: Vertex) {
        self.chosen[w] = true;
        self.size += 1;
        for i in 0..self.hits[w].len() {
            let v = self.hits[w][i];
            self.got[v] += 1;
        }
        for &y in &self.balls[w] {
            self.load[y] += 1;
        }
    }

    fn unchoose(&mut self, w: Vertex) {
        self.chosen[w] = false;
        self.size -= 1;
        for i in 0..self.hits[w].len() {
            let v = self.hits[w][i];
            self.got[v] -= 1;
        }
        for &y in &self.balls[w] {
            self.load[y] -= 1;
        }
    }

    fn deficit(&self, v: Vertex) -> usize {
        self.need[v].saturating_sub(self.got[v])
    }

    /// Most constrained deficient vertex with its available candidates, or `None` if all
    /// demands are met. An empty candidate list with positive deficit means a dead end.
    fn branch_vertex(&self) -> Option<(Vertex, Vec<Vertex>)> {
        let mut best: Option<(usize, Vertex, Vec<Vertex>)> = None;
        for v in 0..self.need.len() {
            let def = self.deficit(v);
            if def == 0 {
                continue;
            }
            let avail: Vec<Vertex> = self.cand[v].iter().copied().filter(|&w| self.available(w)).collect();
            if avail.len() < def {
                return Some((v, Vec::new()));
            }
            let slack = avail.len() - def;
            if best.as_ref().is_none_or(|(s, _, _)| slack < *s) {
                best = Some((slack, v, avail));
            }
        }
        best.map(|(_, v, a)| (v, a))
    }

    fn lower_bound(&self) -> usize {
        let mut used = vec![false; self.need.len()];
        let mut packed = 0;
        let mut max_def = 0;
        for v in 0..self.need.len() {
            let def = self.deficit(v);
            if def == 0 {
                continue;
            }
            max_def = max_def.max(def);
            let avail = self.cand[v].iter().filter(|&&w| self.available(w));
            if avail.clone().all(|&w| !used[w]) {
                for &w in avail {
                    used[w] = true;
                }
                packed += def;
            }
        }
        packed.max(max_def)
    }

    fn dfs(&mut self) {
        self.nodes += 1;
        if self.size + self.lower_bound() >= self.bound {
            return;
        }
        let Some((v, avail)) = self.branch_vertex() else {
            self.bound = self.size;
            self.found = Some(vset::from_mask(&self.chosen));
            return;
        };
        if avail.is_empty() {
            return;
        }
        let mut excluded_here = Vec::new();
        for (i, &w) in avail.iter().enumerate() {
            if !self.available(w) {
                continue;
            }
            self.choose(w);
            self.dfs();
            self.unchoose(w);
            if self.stop_at_first && self.found.is_some() {
                break;
            }
            self.excluded[w] = true;
            excluded_here.push(w);
            let left = avail[i + 1..].iter().filter(|&&y| self.available(y)).count();
            if left < self.deficit(v) {
                break;
            }
        }
        for w in excluded_here {
            self.excluded[w] = false;
        }
    }
}

fn min_cover(g: &Graph, spec: &CoverSpec, l: &[bool], u: &[bool]) -> OracleAnswer {
    let n = g.n();
    let balls = crate::check::balls(g, spec.r);
    let cand: Vec<Vec<Vertex>> = (0..n)
        .map(|v| {
            if !l[v] {
                return Vec::new();
            }
            balls[v]
                .iter()
                .copied()
                .filter(|&w| u[w] && !(spec.exclude_self && w == v))
                .collect()
        })
        .collect();
    let mut hits = vec![Vec::new(); n];
    for (v, ball) in cand.iter().enumerate() {
        for &w in ball {
            hits[w].push(v);
        }
    }
    let need: Vec<usize> = (0..n).map(|v| if l[v] { spec.demand } else { 0 }).collect();
    let mut search = CoverSearch {
        cand,
        hits,
        balls: &balls,
        need,
        allowed: u.to_vec(),
        cap: spec.cap,
        chosen: vec![false; n],
        excluded: vec![false; n],
        got: vec![0; n],
        load: vec![0; n],
        size: 0,
        bound: n + 1,
        stop_at_first: false,
        found: None,
        nodes: 0,
    };
    search.dfs();
    let Some(_) = search.found.take() else {
        return OracleAnswer {
            optimum: None,
            witness: Witness::None,
            enumerated_count: search.nodes,
        };
    };
    let opt = search.bound;

    // canonical witness: include each vertex, in id order, whenever an optimum survives
    search.stop_at_first = true;
    for w in (0..n).filter(|&w| u[w]) {
        let fits = search.available(w);
        if fits {
            search.choose(w);
            search.bound = opt + 1;
            search.found = None;
            search.dfs();
            if search.found.is_some() {
                continue;
            }
            search.unchoose(w);
        }
        search.excluded[w] = true;
    }
    let witness = vset::from_mask(&search.chosen);
    debug_assert_eq!(witness.len(), opt);
    OracleAnswer {
        optimum: Some(opt),
        witness: Witness::Set(witness),
        enumerated_count: search.nodes,
    }
}

// ---------------------------------------------------------------------------
// Roman domination

struct RomanSearch<'a> {
    balls: &'a [Vec<Vertex>],
    l: &'a [bool],
    in_d2: Vec<bool>,
    in_d1: Vec<bool>,
    banned: Vec<bool>,
    covered: Vec<usize>,
    cost: usize,
    bound: usize,
    stop_at_first: bool,
    found: bool,
    nodes: u64,
}

impl RomanSearch<'_> {
    fn open(&self, v: Vertex) -> bool {
        self.l[v] && self.covered[v] == 0 && !self.in_d1[v]
    }

    fn add_d2(&mut self, w: Vertex) {
        self.in_d2[w] = true;
        self.cost += 2;
        for &y in &self.balls[w] {
            self.covered[y] += 1;
        }
    }

    fn remove_d2(&mut self, w: Vertex) {
        self.in_d2[w] = false;
        self.cost -= 2;
        for &y in &self.balls[w] {
            self.covered[y] -= 1;
        }
    }

    fn lower_bound(&self) -> usize {
        // open vertices with pairwise disjoint candidate sets each cost at least 1
        let mut used = vec![false; self.l.len()];
        let mut lb = 0;
        for v in 0..self.l.len() {
            if !self.open(v) {
                continue;
            }
            let cands = self.balls[v].iter().filter(|&&w| !self.banned[w] && !self.in_d2[w]);
            if cands.clone().all(|&w| !used[w]) {
                for &w in cands {
                    used[w] = true;
                }
                lb += 1;
            }
        }
        lb
    }

    fn dfs(&mut self) {
        self.nodes += 1;
        if self.cost + self.lower_bound() >= self.bound {
            return;
        }
        let mut pick: Option<(usize, Vertex)> = None;
        for v in 0..self.l.len() {
            if self.open(v) {
                let k = self.balls[v]
                    .iter()
                    .filter(|&&w| !self.banned[w] && !self.in_d2[w])
                    .count();
                if pick.is_none_or(|(best, _)| k < best) {
                    pick = Some((k, v));
                }
            }
        }
        let Some((_, v)) = pick else {
            self.bound = self.cost;
            self.found = true;
            return;
        };
        let cands: Vec<Vertex> = self.balls[v]
            .iter()
            .copied()
            .filter(|&w| !self.banned[w] && !self.in_d2[w])
            .collect();
        let mut banned_here = Vec::new();
        for &w in &cands {
            self.add_d2(w);
            self.dfs();
            self.remove_d2(w);
            if self.stop_at_first && self.found {
                break;
            }
            self.banned[w] = true;
            banned_here.push(w);
        }
        if !(self.stop_at_first && self.found) {
            self.in_d1[v] = true;
            self.cost += 1;
            self.dfs();
            self.cost -= 1;
            self.in_d1[v] = false;
        }
        for w in banned_here {
            self.banned[w] = false;
        }
    }
}

fn roman(g: &Graph, r: u32, l: &[bool]) -> OracleAnswer {
    let n = g.n();
    let balls = crate::check::balls(g, r);
    let mut s = RomanSearch {
        balls: &balls,
        l,
        in_d2: vec![false; n],
        in_d1: vec![false; n],
        banned: vec![false; n],
        covered: vec![0; n],
        cost: 0,
        bound: 2 * n + 1,
        stop_at_first: false,
        found: false,
        nodes: 0,
    };
    s.dfs();
    let opt = s.bound;
    s.stop_at_first = true;
    for w in 0..n {
        s.add_d2(w);
        s.bound = opt + 1;
        s.found = false;
        s.dfs();
        if s.found {
            continue;
        }
        s.remove_d2(w);
        s.banned[w] = true;
    }
    let d2 = vset::from_mask(&s.in_d2);
    let d1: Vec<Vertex> = (0..n).filter(|&v| l[v] && s.covered[v] == 0).collect();
    debug_assert_eq!(d1.len() + 2 * d2.len(), opt);
    OracleAnswer {
        optimum: Some(opt),
        witness: Witness::Roman { d1, d2 },
        enumerated_count: s.nodes,
    }
}

// ---------------------------------------------------------------------------
// maximum (r,c)-scattered set

struct ScatterSearch<'a> {
    balls: &'a [Vec<Vertex>],
    order: Vec<Vertex>,
    c: usize,
    load: Vec<usize>,
    forced_in: Vec<bool>,
    forced_out: Vec<bool>,
    chosen: Vec<bool>,
    size: usize,
    /// Search for sets larger than this.
    best: usize,
    target_only: bool,
    found: Option<Vec<Vertex>>,
    nodes: u64,
}

impl ScatterSearch<'_> {
    fn fits(&self, w: Vertex) -> bool {
        self.balls[w].iter().all(|&y| self.load[y] < self.c)
    }

    fn upper_bound(&self, from: usize) -> usize {
        let n = self.load.len();
        let mut open = vec![false; n];
        let mut remaining = 0;
        for &w in &self.order[from..] {
            if !self.forced_out[w] && self.fits(w) {
                open[w] = true;
                remaining += 1;
            }
        }
        let mut bound = 0;
        for &s in &self.order[from..] {
            if !open[s] {
                continue;
            }
            // the ball around the best-covering vertex near s admits limited additions
            let (_, v) = self.balls[s]
                .iter()
                .map(|&v| (self.balls[v].iter().filter(|&&w| open[w]).count(), v))
                .max_by_key(|&(k, v)| (k, std::cmp::Reverse(v)))
                .expect("ball contains s");
            let inside: Vec<Vertex> = self.balls[v].iter().copied().filter(|&w| open[w]).collect();
            bound += inside.len().min(self.c - self.load[v]);
            for w in inside {
                open[w] = false;
            }
        }
        debug_assert!(bound <= remaining);
        bound
    }

    fn dfs(&mut self, idx: usize) {
        self.nodes += 1;
        if self.found.is_some() && self.target_only {
            return;
        }
        if self.size + self.upper_bound(idx) <= self.best {
            return;
        }
        if idx == self.order.len() {
            self.best = self.size;
            self.found = Some(vset::from_mask(&self.chosen));
            return;
        }
        let w = self.order[idx];
        if !self.forced_out[w] && self.fits(w) {
            self.chosen[w] = true;
            self.size += 1;
            for &y in &self.balls[w] {
                self.load[y] += 1;
            }
            self.dfs(idx + 1);
            for &y in &self.balls[w] {
                self.load[y] -= 1;
            }
            self.size -= 1;
            self.chosen[w] = false;
        }
        if !self.forced_in[w] {
            self.dfs(idx + 1);
        }
    }
}

fn max_scatter(g: &Graph, r: u32, c: usize, u: &[bool]) -> OracleAnswer {
    let n = g.n();
    let balls = crate::check::balls(g, r);
    let order: Vec<Vertex> = (0..n).filter(|&v| u[v]).collect();
    let mut s = ScatterSearch {
        balls: &balls,
        order: order.clone(),
        c,
        load: vec![0; n],
        forced_in: vec![false; n],
        forced_out: vec![false; n],
        chosen: vec![false; n],
        size: 0,
        best: 0,
        target_only: false,
        found: Some(Vec::new()),
        nodes: 0,
    };
    if c == 0 {
        return OracleAnswer {
            optimum: Some(0),
            witness: Witness::Set(Vec::new()),
            enumerated_count: 1,
        };
    }
    s.found = None;
    s.best = 0;
    // the empty set is always valid, so the first search looks for anything better
    s.dfs(0);
    let opt = s.best;
    if opt > 0 {
        s.target_only = true;
        for &w in &order {
            s.forced_in[w] = true;
            s.best = opt - 1;
            s.found = None;
            s.dfs(0);
            if s.found.is_none() {
                s.forced_in[w] = false;
                s.forced_out[w] = true;
            }
        }
    }
    let witness: Vec<Vertex> = order.iter().copied().filter(|&w| s.forced_in[w]).collect();
    debug_assert!(opt == 0 || witness.len() == opt);
    OracleAnswer {
        optimum: Some(opt),
        witness: Witness::Set(if opt == 0 { Vec::new() } else { witness }),
        enumerated_count: s.nodes,
    }
}
