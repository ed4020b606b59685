//! Rigid graphs: graphs whose only endomorphism is the identity.

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::morphisms::{enumerate_homs, Mode};
use crate::structure::{Structure, SubUniverse};

use super::{graph, laws};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RigidGraph {
    pub seed: u64,
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub weak_endomorphism_count: usize,
}

impl RigidGraph {
    pub fn structure(&self) -> Result<Structure> {
        Ok(graph(self.vertices, &self.edges)?.with_name(format!("rigid{}", self.vertices)))
    }

    /// The graph shipped with the crate, found by [`search_rigid_graph`].
    pub fn fixture() -> RigidGraph {
        serde_json::from_str(include_str!("../../fixtures/rigid_graph.json")).expect("valid fixture")
    }
}

/// Whether the identity is the only weak endomorphism.
pub fn is_rigid(g: &Structure) -> bool {
    enumerate_homs(g, g, Mode::Weak).is_ok_and(|homs| homs.take(2).count() == 1)
}

/// Samples `G(n, 1/2)` graphs with `n` drawn from `vertices` until a rigid
/// one turns up, giving up after `attempts` samples.
pub fn search_rigid_graph(seed: u64, vertices: RangeInclusive<usize>, attempts: usize) -> Option<RigidGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..attempts {
        let n = rng.random_range(vertices.clone());
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(0.5) {
                    edges.push((u, v));
                }
            }
        }
        let g = graph(n, &edges).expect("edges are in range");
        if is_rigid(&g) {
            return Some(RigidGraph { seed, vertices: n, edges, weak_endomorphism_count: 1 });
        }
    }
    None
}

/// Two copies of `g` sharing vertex `v`, with the subuniverses carrying each
/// copy. The first copy keeps its numbering; the second copy's other vertices
/// follow in order.
pub fn glue_at_vertex(g: &Structure, v: usize) -> Result<(Structure, SubUniverse, SubUniverse)> {
    laws::check_graph(g)?;
    g.check_element(v)?;
    let n = g.size();
    let second = |x: usize| match x.cmp(&v) {
        std::cmp::Ordering::Equal => v,
        std::cmp::Ordering::Less => n + x,
        std::cmp::Ordering::Greater => n + x - 1,
    };
    let edges: Vec<(usize, usize)> = g
        .relation(0)
        .iter()
        .filter(|t| t[0] < t[1])
        .flat_map(|t| [(t[0], t[1]), (second(t[0]), second(t[1]))])
        .collect();
    let union = graph(2 * n - 1, &edges)?.with_name(format!("{0} +_{v} {0}", g.name()));
    let a = SubUniverse::new(&union, 0..n)?;
    let b = SubUniverse::new(&union, (0..n).map(second))?;
    Ok((union, a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_is_rigid() {
        let fixture = RigidGraph::fixture();
        assert!((7..=10).contains(&fixture.vertices));
        let g = fixture.structure().unwrap();
        assert!(is_rigid(&g));
        assert_eq!(enumerate_homs(&g, &g, Mode::Weak).unwrap().count(), 1);
    }

    #[test]
    fn fixture_is_reproducible() {
        let fixture = RigidGraph::fixture();
        assert_eq!(search_rigid_graph(fixture.seed, 7..=10, 10_000), Some(fixture));
    }

    /// Plain backtracking over vertex images, checking edges as it goes.
    fn count_endomorphisms(g: &Structure) -> usize {
        fn go(g: &Structure, map: &mut Vec<usize>) -> usize {
            let x = map.len();
            if x == g.size() {
                return 1;
            }
            let mut total = 0;
            for y in 0..g.size() {
                if (0..x).all(|u| !g.holds(0, &[u, x]) || g.holds(0, &[map[u], y])) {
                    map.push(y);
                    total += go(g, map);
                    map.pop();
                }
            }
            total
        }
        go(g, &mut Vec::new())
    }

    #[test]
    fn fixture_rigid_by_direct_count() {
        let g = RigidGraph::fixture().structure().unwrap();
        assert_eq!(count_endomorphisms(&g), 1);
        let path = graph(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(count_endomorphisms(&path), enumerate_homs(&path, &path, Mode::Weak).unwrap().count());
    }

    #[test]
    fn small_graphs_are_not_rigid() {
        assert!(!is_rigid(&graph(3, &[(0, 1), (1, 2)]).unwrap()));
        assert!(!is_rigid(&graph(2, &[]).unwrap()));
    }

    #[test]
    fn gluing_shares_one_vertex() {
        let g = graph(3, &[(0, 1), (1, 2)]).unwrap();
        let (u, a, b) = glue_at_vertex(&g, 1).unwrap();
        assert_eq!(u.size(), 5);
        assert_eq!(a.intersection(&b), vec![1]);
        assert_eq!(u.relation(0).len(), 8);
    }
}

