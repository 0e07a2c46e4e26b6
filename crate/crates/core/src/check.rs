//! Direct constraint evaluators for every problem.
//!
//! These recount neighbourhood intersections from explicit balls and share no
//! code with the solvers or reducers they are used to validate.

use crate::graph::{Graph, Vertex};

/// `balls[v]` = closed `r`-ball of `v`.
pub fn balls(g: &Graph, r: u32) -> Vec<Vec<Vertex>> {
    g.vertices().map(|v| g.ball(v, r).expect("valid vertex")).collect()
}

fn member_mask(g: &Graph, set: &[Vertex]) -> Vec<bool> {
    let mut m = vec![false; g.n()];
    for &v in set {
        m[v] = true;
    }
    m
}

/// `|N^r[v] ∩ set|` for every vertex `v`.
pub fn coverage(g: &Graph, set: &[Vertex], r: u32) -> Vec<usize> {
    let m = member_mask(g, set);
    balls(g, r)
        .iter()
        .map(|b| b.iter().filter(|&&w| m[w]).count())
        .collect()
}

fn all_if_none(g: &Graph, set: Option<&[Vertex]>) -> Vec<Vertex> {
    set.map(<[Vertex]>::to_vec).unwrap_or_else(|| g.vertices().collect())
}

/// Every vertex of `l` (default: all) sees at least `c` members of `d` within distance `r`.
pub fn is_rc_dominating(g: &Graph, d: &[Vertex], r: u32, c: usize, l: Option<&[Vertex]>) -> bool {
    let cov = coverage(g, d, r);
    all_if_none(g, l).iter().all(|&v| cov[v] >= c)
}

/// Every vertex of `l` has a member of `d` other than itself within distance `r`.
pub fn is_total_dominating(g: &Graph, d: &[Vertex], r: u32, l: Option<&[Vertex]>) -> bool {
    let m = member_mask(g, d);
    all_if_none(g, l)
        .iter()
        .all(|&v| g.ball(v, r).expect("valid vertex").iter().any(|&w| w != v && m[w]))
}

/// `d2` dominates every vertex of `l ∖ d1` within distance `r`.
pub fn is_roman(g: &Graph, d1: &[Vertex], d2: &[Vertex], r: u32, l: Option<&[Vertex]>) -> bool {
    let in_d1 = member_mask(g, d1);
    let cov = coverage(g, d2, r);
    all_if_none(g, l).iter().all(|&v| in_d1[v] || cov[v] >= 1)
}

/// `i ⊆ u` and every vertex sees at most `c` members of `i` within distance `r`.
pub fn is_rc_scattered(g: &Graph, i: &[Vertex], r: u32, c: usize, u: Option<&[Vertex]>) -> bool {
    let allowed = member_mask(g, &all_if_none(g, u));
    i.iter().all(|&v| allowed[v]) && coverage(g, i, r).iter().all(|&k| k <= c)
}

/// `d ⊆ u`, at least `lambda` members near every vertex of `l`, at most `mu` near every vertex.
pub fn is_lambda_mu(
    g: &Graph,
    d: &[Vertex],
    r: u32,
    lambda: usize,
    mu: usize,
    l: Option<&[Vertex]>,
    u: Option<&[Vertex]>,
) -> bool {
    let allowed = member_mask(g, &all_if_none(g, u));
    let cov = coverage(g, d, r);
    d.iter().all(|&v| allowed[v]) && cov.iter().all(|&k| k <= mu) && all_if_none(g, l).iter().all(|&v| cov[v] >= lambda)
}

/// Every vertex sees exactly one member of `i` within distance `r`.
pub fn is_perfect_code(g: &Graph, i: &[Vertex], r: u32) -> bool {
    coverage(g, i, r).iter().all(|&k| k == 1)
}

/// Members of `a` are pairwise at distance greater than `2r`.
pub fn is_scattered(g: &Graph, a: &[Vertex], r: u32) -> bool {
    is_rc_scattered(g, a, r, 1, None)
}

/// Whether the members of `a` are pairwise more than `d` apart.
pub fn pairwise_farther(g: &Graph, a: &[Vertex], d: u32) -> bool {
    let in_a = crate::vset::mask(g.n(), a);
    a.iter().all(|&v| {
        g.ball(v, d)
            .map(|ball| ball.iter().all(|&w| w == v || !in_a[w]))
            .unwrap_or(false)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn evaluators() {
        let g = path(3);
        assert!(is_rc_dominating(&g, &[1], 1, 1, None));
        assert!(!is_rc_dominating(&g, &[1], 1, 2, None));
        assert!(is_rc_dominating(&g, &[1], 1, 2, Some(&[])));
        assert!(!is_total_dominating(&g, &[1], 1, None));
        assert!(is_total_dominating(&g, &[0, 1], 1, None));
        assert!(is_roman(&g, &[], &[1], 1, None));
        assert!(is_roman(&g, &[0, 2], &[], 1, Some(&[0, 2])));
        assert!(is_rc_scattered(&path(5), &[0, 3], 1, 1, None));
        assert!(!is_rc_scattered(&path(5), &[0, 2], 1, 1, None));
        assert!(!is_rc_scattered(&path(5), &[0, 3], 1, 1, Some(&[0])));
        assert!(is_lambda_mu(&g, &[1], 1, 1, 1, None, None));
        assert!(!is_lambda_mu(&g, &[1], 1, 1, 1, None, Some(&[0, 2])));
        assert!(is_perfect_code(&g, &[1], 1));
        assert!(!is_perfect_code(&g, &[0, 1], 1));
        assert!(is_scattered(&path(5), &[0, 3], 1));
    }
}
