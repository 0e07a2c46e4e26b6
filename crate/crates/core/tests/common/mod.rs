#![allow(dead_code)]

pub mod criteria;

use lilykernel::io::harness::Case;
use lilykernel::io::{generate, Family, GeneratorSpec};
use lilykernel::kernels::{Params, Problem};
use lilykernel::Graph;

/// Graphs with at most 14 vertices from every generator family.
pub fn small_graphs() -> Vec<(String, Graph)> {
    let mut families = Vec::new();
    for (w, h) in [(1, 4), (2, 2), (2, 3), (3, 3), (2, 5), (3, 4), (2, 7)] {
        families.push((Family::Grid { w, h }, 0));
    }
    for n in [6, 8, 10, 12, 14] {
        for d in [1, 2, 3] {
            for seed in 0..2 {
                families.push((Family::RandomDegenerate { n, d }, seed));
            }
        }
    }
    for (count, legs, leg_len) in [
        (1, 4, 1),
        (2, 3, 1),
        (1, 6, 2),
        (2, 4, 1),
        (3, 3, 1),
        (1, 4, 3),
        (2, 2, 2),
        (1, 13, 1),
        (2, 6, 1),
    ] {
        families.push((Family::SpiderForest { count, legs, leg_len }, 0));
    }
    for n in [3, 4, 5, 6, 7, 9, 12, 14] {
        families.push((Family::Cycle { n }, 0));
    }
    for n in [1, 2, 3, 5, 8, 11, 13] {
        families.push((Family::Star { n }, 0));
    }
    families
        .into_iter()
        .map(|(family, seed)| {
            let spec = GeneratorSpec::new(family, seed);
            (spec.to_string(), generate(&spec).unwrap())
        })
        .collect()
}

/// Problem/parameter combinations of the equivalence suite.
pub fn settings() -> Vec<(Problem, Params)> {
    let mut out = Vec::new();
    for r in [1, 2] {
        for c in [1, 2] {
            out.push((Problem::RcDom, Params::new(r).with_c(c)));
            out.push((Problem::Scatter, Params::new(r).with_c(c)));
        }
        out.push((Problem::Total, Params::new(r)));
        out.push((Problem::Roman, Params::new(r)));
        out.push((Problem::LambdaMu, Params::new(r).with_bounds(1, 1)));
        out.push((Problem::LambdaMu, Params::new(r).with_bounds(1, 2)));
        out.push((Problem::PerfectCode, Params::new(r)));
    }
    out
}

pub fn cases() -> Vec<Case> {
    let mut out = Vec::new();
    for (name, graph) in small_graphs() {
        for (problem, params) in settings() {
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

pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    Graph::from_edges(leaves + 1, &edges).unwrap()
}

/// Disjoint union of `count` copies of `g`.
pub fn copies(g: &Graph, count: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..count {
        edges.extend(g.edges().map(|(u, v)| (u + i * g.n(), v + i * g.n())));
    }
    Graph::from_edges(g.n() * count, &edges).unwrap()
}

/// One seeded lily-availability trial on a relabelled spider forest.
pub struct LilyTrial {
    pub name: String,
    pub components: usize,
    pub a_size: usize,
    pub lily: Option<lilykernel::wideness::WaterLily>,
    pub verified: bool,
}

impl LilyTrial {
    /// A lily was found and has at least twice as many centres as roots.
    pub fn available(&self) -> bool {
        self.lily.as_ref().is_some_and(|l| l.centres.len() >= 2 * l.roots.len())
    }
}

pub fn lily_trial(seed: u64) -> LilyTrial {
    use lilykernel::wideness::{find_uniform_lily, verify_lily};
    use rand::seq::{index::sample, SliceRandom};
    use rand::{Rng, SeedableRng};

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let count = rng.gen_range(1..=4);
    let legs = rng.gen_range(20..=28);
    let leg_len = rng.gen_range(1..=3);
    let family = Family::SpiderForest { count, legs, leg_len };
    let base = generate(&GeneratorSpec::new(family, seed)).unwrap();
    let bodies: Vec<usize> = base.vertices().filter(|&v| base.degree(v) == legs).collect();

    let mut perm: Vec<usize> = base.vertices().collect();
    perm.shuffle(&mut rng);
    let edges: Vec<_> = base.edges().map(|(u, v)| (perm[u], perm[v])).collect();
    let g = Graph::from_edges(base.n(), &edges).unwrap();

    let others: Vec<usize> = base
        .vertices()
        .filter(|v| !bodies.contains(v))
        .map(|v| perm[v])
        .collect();
    let size = rng.gen_range(20 * count..=others.len());
    let a_set: Vec<usize> = sample(&mut rng, others.len(), size)
        .into_iter()
        .map(|i| others[i])
        .collect();

    let lily = find_uniform_lily(&g, &a_set, leg_len as u32, leg_len as u32, 1, 2)
        .unwrap()
        .found();
    let verified = lily.as_ref().is_none_or(|l| verify_lily(&g, l).all_passed());
    LilyTrial {
        name: format!("{family} seed={seed}"),
        components: count,
        a_size: size,
        lily,
        verified,
    }
}
