use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::oracle::{Oracle, OracleAnswer};
use crate::vset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Problem {
    RcDom,
    Total,
    Roman,
    Scatter,
    LambdaMu,
    PerfectCode,
}

impl Problem {
    pub const ALL: [Problem; 6] = [
        Problem::RcDom,
        Problem::Total,
        Problem::Roman,
        Problem::Scatter,
        Problem::LambdaMu,
        Problem::PerfectCode,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Problem::RcDom => "rcdom",
            Problem::Total => "total",
            Problem::Roman => "roman",
            Problem::Scatter => "scatter",
            Problem::LambdaMu => "lambdamu",
            Problem::PerfectCode => "perfectcode",
        }
    }

    /// Scattered sets are maximised; everything else is minimised.
    pub fn is_maximization(self) -> bool {
        self == Problem::Scatter
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Problem::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::Input(format!("unknown problem '{s}'")))
    }
}

/// Problem parameters. `c` is used by domination and scattered sets, `lambda`/`mu`
/// by `(r,[λ,μ])`-domination; perfect codes use `λ = μ = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Params {
    pub r: u32,
    pub c: usize,
    pub lambda: usize,
    pub mu: usize,
}

impl Params {
    pub fn new(r: u32) -> Self {
        Params {
            r,
            c: 1,
            lambda: 1,
            mu: 1,
        }
    }

    pub fn with_c(self, c: usize) -> Self {
        Params { c, ..self }
    }

    pub fn with_bounds(self, lambda: usize, mu: usize) -> Self {
        Params { lambda, mu, ..self }
    }

    pub fn validate(&self, problem: Problem) -> Result<()> {
        if self.r == 0 {
            return Err(Error::Input("radius must be at least 1".into()));
        }
        match problem {
            Problem::RcDom | Problem::Scatter if self.c == 0 => {
                Err(Error::Input("multiplicity must be at least 1".into()))
            }
            Problem::LambdaMu if self.lambda == 0 || self.lambda > self.mu => Err(Error::Input(format!(
                "need 1 <= lambda <= mu, got {} and {}",
                self.lambda, self.mu
            ))),
            Problem::PerfectCode if self.lambda != 1 || self.mu != 1 => {
                Err(Error::Input("perfect codes use lambda = mu = 1".into()))
            }
            _ => Ok(()),
        }
    }
}

/// Where an output vertex came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    Input(Vertex),
    Gadget(String),
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Input(v) => write!(f, "{v}"),
            Origin::Gadget(tag) => write!(f, "@{tag}"),
        }
    }
}

impl FromStr for Origin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.strip_prefix('@') {
            Some(tag) if !tag.is_empty() && !tag.contains(char::is_whitespace) => Ok(Origin::Gadget(tag.to_string())),
            Some(_) => Err(Error::Input(format!("bad gadget tag '{s}'"))),
            None => s
                .parse()
                .map(Origin::Input)
                .map_err(|_| Error::Input(format!("bad origin '{s}'"))),
        }
    }
}

/// An instance of an annotated problem: only vertices of `l` carry lower
/// constraints and solutions are drawn from `u`. A plain instance has `l = u = V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnotatedInstance {
    pub graph: Graph,
    pub problem: Problem,
    pub params: Params,
    pub k: usize,
    pub l: Vec<Vertex>,
    pub u: Vec<Vertex>,
    /// Budget shift added by gadget constructions.
    pub offset: usize,
    pub origin: Vec<Origin>,
}

impl AnnotatedInstance {
    pub fn plain(graph: Graph, problem: Problem, params: Params, k: usize) -> Self {
        let all: Vec<Vertex> = graph.vertices().collect();
        AnnotatedInstance {
            origin: all.iter().map(|&v| Origin::Input(v)).collect(),
            l: all.clone(),
            u: all,
            graph,
            problem,
            params,
            k,
            offset: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate(self.problem)?;
        self.graph.check_set(&self.l)?;
        self.graph.check_set(&self.u)?;
        if self.origin.len() != self.graph.n() {
            return Err(Error::Input(format!(
                "origin map has {} entries for {} vertices",
                self.origin.len(),
                self.graph.n()
            )));
        }
        if vset::normalized(self.l.clone()) != self.l || vset::normalized(self.u.clone()) != self.u {
            return Err(Error::Input("L and U must be sorted without repeats".into()));
        }
        Ok(())
    }

    /// Vertices that carry neither constraints nor candidates of the annotation:
    /// `V ∖ U` for scattered sets, `V ∖ L` otherwise.
    pub fn outside(&self) -> Vec<Vertex> {
        let inner = if self.problem == Problem::Scatter {
            &self.u
        } else {
            &self.l
        };
        vset::complement(self.graph.n(), inner)
    }

    pub fn gadget_vertices(&self) -> Vec<Vertex> {
        (0..self.origin.len())
            .filter(|&v| matches!(self.origin[v], Origin::Gadget(_)))
            .collect()
    }

    /// Exact optimum of the annotated problem.
    pub fn optimum(&self, oracle: &Oracle) -> Result<OracleAnswer> {
        let g = &self.graph;
        let p = self.params;
        let (l, u) = (Some(self.l.as_slice()), Some(self.u.as_slice()));
        match self.problem {
            Problem::RcDom => oracle.opt_rc_dom(g, p.r, p.c, l),
            Problem::Total => oracle.opt_total(g, p.r, l),
            Problem::Roman => oracle.opt_roman(g, p.r, l),
            Problem::Scatter => oracle.max_scattered(g, p.r, p.c, u),
            Problem::LambdaMu => oracle.opt_lambda_mu(g, p.r, p.lambda, p.mu, l, u),
            Problem::PerfectCode => oracle.opt_lambda_mu(g, p.r, 1, 1, l, u),
        }
    }

    /// Whether the instance is a yes-instance for its own budget.
    pub fn decide(&self, oracle: &Oracle) -> Result<bool> {
        Ok(accepts(self.problem, self.optimum(oracle)?.optimum, self.k))
    }
}

/// Yes/no answer for budget `k` given an optimum (`None` = infeasible).
pub fn accepts(problem: Problem, optimum: Option<usize>, k: usize) -> bool {
    match optimum {
        None => false,
        Some(opt) if problem.is_maximization() => opt >= k,
        Some(opt) => opt <= k,
    }
}
