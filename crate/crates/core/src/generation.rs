//! Closure computations: generated subuniverses, joins, generated subsets of
//! the square, and congruence generation.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::hash::Hash;

use serde::Serialize;

use crate::congruence::{Congruence, UnionFind};
use crate::error::{Error, Result};
use crate::structure::{Structure, SubUniverse};
use crate::tuples::{AllTuples, FrontierTuples};

/// Default bound on the universe size accepted by [`all_congruences`].
pub const DEFAULT_MAX_CONGRUENCE_SIZE: usize = 12;

/// Where a generator of a closure came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Origin {
    Seed,
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Derivation {
    Generator(Origin),
    /// Operation applied to earlier nodes.
    Applied { op: usize, args: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessNode {
    pub element: usize,
    pub derivation: Derivation,
}

/// One derivation per generated element, in topological order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct WitnessDag {
    nodes: Vec<WitnessNode>,
}

impl WitnessDag {
    pub fn nodes(&self) -> &[WitnessNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Re-evaluates every node bottom-up, substituting `generator(node)` for
    /// the value of each generator node.
    ///
    /// With `generator = |n| n.element` this reproduces the closure itself.
    pub fn evaluate_with(&self, structure: &Structure, mut generator: impl FnMut(&WitnessNode) -> usize) -> Vec<usize> {
        let mut values: Vec<usize> = Vec::with_capacity(self.nodes.len());
        let mut args = Vec::new();
        for node in &self.nodes {
            let v = match &node.derivation {
                Derivation::Generator(_) => generator(node),
                Derivation::Applied { op, args: refs } => {
                    args.clear();
                    args.extend(refs.iter().map(|&r| values[r]));
                    structure.apply(*op, &args)
                }
            };
            values.push(v);
        }
        values
    }

    pub fn evaluate(&self, structure: &Structure) -> Vec<usize> {
        self.evaluate_with(structure, |n| n.element)
    }
}

/// Semi-naive saturation: processes `order[from..]` (which may grow) against
/// every operation of positive arity, calling `on_new` for each fresh item.
fn saturate<T, F, N>(arities: &[usize], order: &mut Vec<T>, seen: &mut HashMap<T, usize>, from: usize, mut apply: F, mut on_new: N)
where
    T: Copy + Eq + Hash,
    F: FnMut(usize, &[T]) -> T,
    N: FnMut(usize, Vec<usize>),
{
    let mut k = from;
    let mut args: Vec<T> = Vec::new();
    while k < order.len() {
        for (op, &arity) in arities.iter().enumerate() {
            if arity == 0 {
                continue;
            }
            let mut tuples = FrontierTuples::new(k, arity);
            while let Some(t) = tuples.next_tuple() {
                args.clear();
                args.extend(t.iter().map(|&i| order[i]));
                let value = apply(op, &args);
                if !seen.contains_key(&value) {
                    seen.insert(value, order.len());
                    order.push(value);
                    on_new(op, t.to_vec());
                }
            }
        }
        k += 1;
    }
}

fn close_tagged(structure: &Structure, seeds: &[(usize, Origin)]) -> (SubUniverse, WitnessDag) {
    let arities = structure.signature().op_arities();
    let mut order = Vec::new();
    let mut seen = HashMap::new();
    let mut nodes = Vec::new();
    for &(x, origin) in seeds {
        if !seen.contains_key(&x) {
            seen.insert(x, order.len());
            order.push(x);
            nodes.push(WitnessNode { element: x, derivation: Derivation::Generator(origin) });
        }
    }
    for (op, &arity) in arities.iter().enumerate() {
        if arity == 0 {
            let c = structure.apply(op, &[]);
            if !seen.contains_key(&c) {
                seen.insert(c, order.len());
                order.push(c);
                nodes.push(WitnessNode { element: c, derivation: Derivation::Applied { op, args: vec![] } });
            }
        }
    }
    let mut fresh = Vec::new();
    saturate(&arities, &mut order, &mut seen, 0, |op, args| structure.apply(op, args), |op, args| {
        fresh.push((op, args))
    });
    for (element, (op, args)) in order[nodes.len()..].iter().zip(fresh) {
        nodes.push(WitnessNode { element: *element, derivation: Derivation::Applied { op, args } });
    }
    let mut members = order;
    members.sort_unstable();
    (SubUniverse::from_sorted_unchecked(structure, members), WitnessDag { nodes })
}

/// Smallest subuniverse containing `seed` and all constants.
pub fn close(structure: &Structure, seed: &[usize]) -> Result<(SubUniverse, WitnessDag)> {
    let mut seeds: Vec<usize> = seed.to_vec();
    for &x in &seeds {
        structure.check_element(x)?;
    }
    seeds.sort_unstable();
    seeds.dedup();
    let tagged: Vec<_> = seeds.into_iter().map(|x| (x, Origin::Seed)).collect();
    Ok(close_tagged(structure, &tagged))
}

/// The subuniverse generated by `a ∪ b`. Generators are tagged `Left` when
/// they come from `a` and `Right` when they come only from `b`.
pub fn join(parent: &Structure, a: &SubUniverse, b: &SubUniverse) -> Result<(SubUniverse, WitnessDag)> {
    a.check_parent(parent)?;
    b.check_parent(parent)?;
    let seeds: Vec<(usize, Origin)> = a
        .members()
        .iter()
        .map(|&x| (x, Origin::Left))
        .chain(b.members().iter().filter(|&&x| !a.contains(x)).map(|&x| (x, Origin::Right)))
        .collect();
    Ok(close_tagged(parent, &seeds))
}

/// The subuniverse of `parent × parent` generated by `pairs`.
pub fn generated_subuniverse_of_square(parent: &Structure, pairs: &[(usize, usize)]) -> Result<BTreeSet<(usize, usize)>> {
    for &(x, y) in pairs {
        parent.check_element(x)?;
        parent.check_element(y)?;
    }
    let arities = parent.signature().op_arities();
    let mut order = Vec::new();
    let mut seen = HashMap::new();
    let constants = parent.constants();
    for p in pairs.iter().copied().chain(constants.iter().map(|&c| (c, c))) {
        if !seen.contains_key(&p) {
            seen.insert(p, order.len());
            order.push(p);
        }
    }
    let mut left = Vec::new();
    let mut right = Vec::new();
    saturate(
        &arities,
        &mut order,
        &mut seen,
        0,
        |op, args: &[(usize, usize)]| {
            left.clear();
            right.clear();
            left.extend(args.iter().map(|p| p.0));
            right.extend(args.iter().map(|p| p.1));
            (parent.apply(op, &left), parent.apply(op, &right))
        },
        |_, _| {},
    );
    Ok(order.into_iter().collect())
}

/// Smallest congruence containing `pairs`.
///
/// Every merged pair is pushed through all basic translations
/// `x ↦ f(c.., x, ..c)`; the resulting equivalence is closed under them and
/// therefore compatible.
pub fn cg(structure: &Structure, pairs: &[(usize, usize)]) -> Result<Congruence> {
    let n = structure.size();
    let mut uf = UnionFind::new(n);
    let mut queue = VecDeque::new();
    for &(x, y) in pairs {
        structure.check_element(x)?;
        structure.check_element(y)?;
        if uf.union(x, y) {
            queue.push_back((x, y));
        }
    }
    let arities = structure.signature().op_arities();
    let mut args = Vec::new();
    while let Some((x, y)) = queue.pop_front() {
        for (op, &arity) in arities.iter().enumerate() {
            if arity == 0 {
                continue;
            }
            let mut rest = AllTuples::new(n, arity - 1);
            while let Some(r) = rest.next_tuple() {
                for pos in 0..arity {
                    args.clear();
                    args.extend_from_slice(&r[..pos]);
                    args.push(x);
                    args.extend_from_slice(&r[pos..]);
                    let u = structure.apply(op, &args);
                    args[pos] = y;
                    let v = structure.apply(op, &args);
                    if uf.union(u, v) {
                        queue.push_back((u, v));
                    }
                }
            }
        }
    }
    Ok(uf.into_congruence())
}

/// The whole congruence lattice, as the join closure of the principal
/// congruences plus the identity.
///
/// Sorted by decreasing number of blocks, then by block labels.
pub fn all_congruences(structure: &Structure, max_size: usize) -> Result<Vec<Congruence>> {
    let n = structure.size();
    if n > max_size {
        return Err(Error::SizeBound { size: n, bound: max_size });
    }
    let mut principal = BTreeSet::new();
    for x in 0..n {
        for y in x + 1..n {
            principal.insert(cg(structure, &[(x, y)])?);
        }
    }
    let principal: Vec<Congruence> = principal.into_iter().collect();
    let mut found: HashSet<Congruence> = principal.iter().cloned().collect();
    found.insert(Congruence::identity(n));
    let mut queue: VecDeque<Congruence> = principal.iter().cloned().collect();
    while let Some(theta) = queue.pop_front() {
        for p in &principal {
            if p.is_finer_than(&theta) {
                continue;
            }
            let mut gens = theta.generating_pairs();
            gens.extend(p.generating_pairs());
            let joined = cg(structure, &gens)?;
            if found.insert(joined.clone()) {
                queue.push_back(joined);
            }
        }
    }
    let mut out: Vec<Congruence> = found.into_iter().collect();
    out.sort_by(|a, b| b.num_blocks().cmp(&a.num_blocks()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Every nonempty subuniverse, ordered by size and then by members.
pub fn all_subuniverses(structure: &Structure) -> Vec<SubUniverse> {
    let n = structure.size();
    let mut found: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
    let mut queue = VecDeque::new();
    let (bottom, _) = close_tagged(structure, &[]);
    if bottom.is_empty() {
        for x in 0..n {
            let (s, _) = close_tagged(structure, &[(x, Origin::Seed)]);
            if found.insert((s.len(), s.members().to_vec())) {
                queue.push_back(s);
            }
        }
    } else {
        found.insert((bottom.len(), bottom.members().to_vec()));
        queue.push_back(bottom);
    }
    while let Some(s) = queue.pop_front() {
        for x in (0..n).filter(|&x| !s.contains(x)) {
            let seeds: Vec<_> = s.members().iter().chain([&x]).map(|&e| (e, Origin::Seed)).collect();
            let (t, _) = close_tagged(structure, &seeds);
            if found.insert((t.len(), t.members().to_vec())) {
                queue.push_back(t);
            }
        }
    }
    found
        .into_iter()
        .map(|(_, m)| SubUniverse::from_sorted_unchecked(structure, m))
        .collect()
}

/// Membership mask of the closure of `seed`, without bookkeeping.
pub(crate) fn closure_mask(structure: &Structure, seed: &[usize]) -> Vec<bool> {
    let tagged: Vec<_> = seed.iter().map(|&x| (x, Origin::Seed)).collect();
    let (s, _) = close_tagged(structure, &tagged);
    let mut mask = vec![false; structure.size()];
    for &x in s.members() {
        mask[x] = true;
    }
    mask
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{is_subuniverse, Signature, Symbol};

    fn z(n: usize) -> Structure {
        let sig = Signature::new(vec![Symbol::new("mul", 2), Symbol::new("inv", 1), Symbol::new("e", 0)], vec![]).unwrap();
        let add = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        let neg = (0..n).map(|i| (n - i) % n).collect();
        Structure::new(sig, n, vec![add, neg, vec![0]], vec![]).unwrap()
    }

    // Brute-force fixpoint: apply every op to every tuple until nothing changes.
    fn naive_close(s: &Structure, seed: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = seed.iter().copied().collect();
        loop {
            let members: Vec<usize> = set.iter().copied().collect();
            let mut next = set.clone();
            for (op, sym) in s.signature().ops().iter().enumerate() {
                let mut t = AllTuples::new(members.len(), sym.arity);
                while let Some(idx) = t.next_tuple() {
                    let args: Vec<usize> = idx.iter().map(|&i| members[i]).collect();
                    next.insert(s.apply(op, &args));
                }
            }
            if next == set {
                return set.into_iter().collect();
            }
            set = next;
        }
    }

    #[test]
    fn close_z6_from_2() {
        let z6 = z(6);
        assert_eq!(naive_close(&z6, &[2]), vec![0, 2, 4]);
        let (s, dag) = close(&z6, &[2]).unwrap();
        assert_eq!(s.members(), &[0, 2, 4]);
        let mut values = dag.evaluate(&z6);
        values.sort_unstable();
        assert_eq!(values, vec![0, 2, 4]);
    }

    #[test]
    fn close_full_and_pure_set() {
        let z6 = z(6);
        let all: Vec<usize> = (0..6).collect();
        assert_eq!(close(&z6, &all).unwrap().0.members(), all.as_slice());
        let set = Structure::set(5).unwrap();
        assert_eq!(close(&set, &[3, 1]).unwrap().0.members(), &[1, 3]);
        assert!(close(&set, &[5]).is_err());
    }

    #[test]
    fn dag_is_topological() {
        let (_, dag) = close(&z(12), &[8, 3]).unwrap();
        for (i, node) in dag.nodes().iter().enumerate() {
            if let Derivation::Applied { args, .. } = &node.derivation {
                assert!(args.iter().all(|&a| a < i));
            }
        }
    }

    #[test]
    fn join_z2_z3() {
        let z6 = z(6);
        let a = SubUniverse::new(&z6, [0, 3]).unwrap();
        let b = SubUniverse::new(&z6, [0, 2, 4]).unwrap();
        let (j, dag) = join(&z6, &a, &b).unwrap();
        assert_eq!(j.members(), &[0, 1, 2, 3, 4, 5]);
        let origins: Vec<_> = dag
            .nodes()
            .iter()
            .filter_map(|n| match n.derivation {
                Derivation::Generator(o) => Some((n.element, o)),
                _ => None,
            })
            .collect();
        assert_eq!(origins, vec![(0, Origin::Left), (3, Origin::Left), (2, Origin::Right), (4, Origin::Right)]);
        assert_eq!(join(&z6, &a, &a).unwrap().0, a);
    }

    #[test]
    fn join_rejects_foreign_parent() {
        let z6 = z(6);
        let a = SubUniverse::full(&z(3));
        assert_eq!(join(&z6, &a, &a).unwrap_err(), Error::ParentMismatch);
    }

    #[test]
    fn square_examples() {
        let z6 = z(6);
        let diag = generated_subuniverse_of_square(&z6, &[(3, 3), (2, 2)]).unwrap();
        assert_eq!(diag, (0..6).map(|x| (x, x)).collect());
        let f = generated_subuniverse_of_square(&z6, &[(3, 0), (2, 2)]).unwrap();
        let expected: BTreeSet<_> = [(0, 0), (2, 2), (4, 4), (3, 0), (5, 2), (1, 4)].into_iter().collect();
        assert_eq!(f, expected);
        let set = Structure::set(3).unwrap();
        let r = generated_subuniverse_of_square(&set, &[(0, 1), (0, 2)]).unwrap();
        assert_eq!(r, [(0, 1), (0, 2)].into_iter().collect());
    }

    #[test]
    fn cg_examples() {
        let z6 = z(6);
        assert_eq!(cg(&z6, &[]).unwrap(), Congruence::identity(6));
        assert_eq!(cg(&z6, &[(0, 3)]).unwrap().blocks(), vec![vec![0, 3], vec![1, 4], vec![2, 5]]);
        assert_eq!(cg(&z6, &[(0, 1)]).unwrap(), Congruence::full(6));
    }

    #[test]
    fn all_congruences_examples() {
        assert_eq!(all_congruences(&z(6), 12).unwrap().len(), 4);
        assert_eq!(all_congruences(&Structure::set(2).unwrap(), 12).unwrap().len(), 2);
        for p in [2, 3, 5, 7, 11] {
            assert_eq!(all_congruences(&z(p), 12).unwrap().len(), 2, "Z_{p}");
        }
        assert_eq!(all_congruences(&z(13), 12).unwrap_err(), Error::SizeBound { size: 13, bound: 12 });
    }

    #[test]
    fn subuniverses_of_z12() {
        let subs = all_subuniverses(&z(12));
        // one subgroup per divisor of 12
        assert_eq!(subs.len(), 6);
        for s in &subs {
            assert!(is_subuniverse(&z(12), s.members()).unwrap());
        }
        // 2^3 - 1 nonempty subsets of a 3-element set
        assert_eq!(all_subuniverses(&Structure::set(3).unwrap()).len(), 7);
    }
}
