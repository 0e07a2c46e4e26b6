use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, PathEnd};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `w × h` grid; vertex `(x, y)` has id `y·w + x`.
    Grid {
        w: usize,
        h: usize,
    },
    /// Vertices in random order, each joined to at most `d` random earlier ones.
    RandomDegenerate {
        n: usize,
        d: usize,
    },
    /// Disjoint spiders: a body with `legs` paths of `leg_len` vertices each.
    SpiderForest {
        count: usize,
        legs: usize,
        leg_len: usize,
    },
    Cycle {
        n: usize,
    },
    /// Centre 0 with `n` leaves.
    Star {
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub family: Family,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(family: Family, seed: u64) -> Self {
        GeneratorSpec { family, seed }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Grid { w, h } => write!(f, "grid({w},{h})"),
            Family::RandomDegenerate { n, d } => write!(f, "random_degenerate({n},{d})"),
            Family::SpiderForest { count, legs, leg_len } => write!(f, "spider_forest({count},{legs},{leg_len})"),
            Family::Cycle { n } => write!(f, "cycle({n})"),
            Family::Star { n } => write!(f, "star({n})"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Parses the `Display` form, e.g. `spider_forest(3,4,2)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Input(format!("bad generator '{s}'"));
        let s = s.trim();
        let (name, rest) = s.split_once('(').ok_or_else(bad)?;
        let args = rest.strip_suffix(')').ok_or_else(bad)?;
        let nums: Vec<usize> = args
            .split(',')
            .map(|a| a.trim().parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match (name.trim(), nums.as_slice()) {
            ("grid", &[w, h]) => Ok(Family::Grid { w, h }),
            ("random_degenerate", &[n, d]) => Ok(Family::RandomDegenerate { n, d }),
            ("spider_forest", &[count, legs, leg_len]) => Ok(Family::SpiderForest { count, legs, leg_len }),
            ("cycle", &[n]) => Ok(Family::Cycle { n }),
            ("star", &[n]) => Ok(Family::Star { n }),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} seed={}", self.family, self.seed)
    }
}

fn positive(name: &str, v: usize) -> Result<()> {
    if v == 0 {
        return Err(Error::Input(format!("{name} must be positive")));
    }
    Ok(())
}

/// Builds the graph described by `spec`. Only `random_degenerate` uses the seed.
pub fn generate(spec: &GeneratorSpec) -> Result<Graph> {
    match spec.family {
        Family::Grid { w, h } => {
            positive("grid width", w)?;
            positive("grid height", h)?;
            let mut edges = Vec::new();
            for y in 0..h {
                for x in 0..w {
                    let v = y * w + x;
                    if x + 1 < w {
                        edges.push((v, v + 1));
                    }
                    if y + 1 < h {
                        edges.push((v, v + w));
                    }
                }
            }
            Graph::from_edges(w * h, &edges)
        }
        Family::RandomDegenerate { n, d } => {
            positive("vertex count", n)?;
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            let mut edges = Vec::new();
            for i in 1..n {
                let count = rng.gen_range(0..=d.min(i));
                for j in sample(&mut rng, i, count) {
                    edges.push((order[i], order[j]));
                }
            }
            Graph::from_edges(n, &edges)
        }
        Family::SpiderForest { count, legs, leg_len } => {
            positive("spider count", count)?;
            positive("leg length", leg_len)?;
            let mut g = Graph::new(0);
            for _ in 0..count {
                let body = g.add_vertex();
                for _ in 0..legs {
                    g.attach_path(body, PathEnd::Fresh, leg_len as u32)?;
                }
            }
            Ok(g)
        }
        Family::Cycle { n } => {
            if n < 3 {
                return Err(Error::Input(format!("cycle needs at least 3 vertices, got {n}")));
            }
            let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            Graph::from_edges(n, &edges)
        }
        Family::Star { n } => {
            let edges: Vec<_> = (1..=n).map(|i| (0, i)).collect();
            Graph::from_edges(n + 1, &edges)
        }
    }
}
