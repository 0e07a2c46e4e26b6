//! Helpers for sorted, duplicate-free vertex sets.

use crate::graph::Vertex;

pub fn normalized(mut v: Vec<Vertex>) -> Vec<Vertex> {
    v.sort_unstable();
    v.dedup();
    v
}

pub fn mask(n: usize, set: &[Vertex]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in set {
        m[v] = true;
    }
    m
}

pub fn from_mask(mask: &[bool]) -> Vec<Vertex> {
    mask.iter().enumerate().filter(|(_, &b)| b).map(|(v, _)| v).collect()
}

pub fn contains(set: &[Vertex], v: Vertex) -> bool {
    set.binary_search(&v).is_ok()
}

pub fn union(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    normalized(a.iter().chain(b).copied().collect())
}

pub fn difference(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    a.iter().copied().filter(|&v| !contains(b, v)).collect()
}

pub fn intersection(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    a.iter().copied().filter(|&v| contains(b, v)).collect()
}

pub fn is_subset(a: &[Vertex], b: &[Vertex]) -> bool {
    a.iter().all(|&v| contains(b, v))
}

/// All of `0..n` except the members of `set`.
pub fn complement(n: usize, set: &[Vertex]) -> Vec<Vertex> {
    let m = mask(n, set);
    (0..n).filter(|&v| !m[v]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_ops() {
        assert_eq!(normalized(vec![3, 1, 3, 0]), vec![0, 1, 3]);
        assert_eq!(union(&[0, 2], &[1, 2]), vec![0, 1, 2]);
        assert_eq!(difference(&[0, 1, 2], &[1]), vec![0, 2]);
        assert_eq!(intersection(&[0, 1, 2], &[1, 5]), vec![1]);
        assert!(is_subset(&[1], &[0, 1]));
        assert_eq!(complement(4, &[1, 2]), vec![0, 3]);
        assert_eq!(from_mask(&mask(4, &[3, 0])), vec![0, 3]);
    }
}
