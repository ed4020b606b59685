use std::collections::BTreeSet;

use proptest::prelude::*;

use subindep_core::congruence::Congruence;
use subindep_core::format::{from_json, to_json};
use subindep_core::generation::{all_congruences, all_subuniverses, cg, close, generated_subuniverse_of_square};
use subindep_core::independence::{decide_congruence_independence, decide_subalgebra_independence, CongruenceOptions};
use subindep_core::morphisms::{
    check_homomorphism, endomorphisms, enumerate_homs, find_isomorphism, joint_extension, kernel, JointExtension,
};
use subindep_core::structure::{induced_substructure, quotient, is_subuniverse};
use subindep_core::{HomClass, Homomorphism, Mode, Signature, Structure, SubUniverse, Symbol};

fn algebra() -> impl Strategy<Value = Structure> {
    (1usize..=5)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(0..n, n * n), prop::collection::vec(0..n, n)))
        .prop_map(|(n, f, g)| {
            let sig = Signature::new(vec![Symbol::new("f", 2), Symbol::new("g", 1)], vec![]).unwrap();
            Structure::new(sig, n, vec![f, g], vec![]).unwrap()
        })
}

fn digraph() -> impl Strategy<Value = Structure> {
    (1usize..=4)
        .prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 0..=6)))
        .prop_map(|(n, edges)| {
            let sig = Signature::new(vec![], vec![Symbol::new("E", 2)]).unwrap();
            Structure::new(sig, n, vec![], vec![edges.into_iter().map(|(u, v)| vec![u, v]).collect()]).unwrap()
        })
}

fn naive_closure(s: &Structure, seed: &[usize]) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = seed.iter().copied().collect();
    loop {
        let mut next = set.clone();
        for &x in &set {
            next.insert(s.apply(1, &[x]));
            for &y in &set {
                next.insert(s.apply(0, &[x, y]));
            }
        }
        if next == set {
            return set;
        }
        set = next;
    }
}

fn partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                let next = p.iter().max().map_or(0, |m| m + 1);
                (0..=next).map(move |l| {
                    let mut q = p.clone();
                    q.push(l);
                    q
                })
            })
            .collect();
    }
    out
}

/// Compatibility of a labelling with `f` and `g`, over all argument pairs.
fn naive_compatible(s: &Structure, labels: &[usize]) -> bool {
    let n = s.size();
    let rel = |x: usize, y: usize| labels[x] == labels[y];
    (0..n).all(|x| {
        (0..n).all(|y| {
            !rel(x, y)
                || rel(s.apply(1, &[x]), s.apply(1, &[y]))
                    && (0..n).all(|z| {
                        (0..n).all(|w| !rel(z, w) || rel(s.apply(0, &[x, z]), s.apply(0, &[y, w])))
                    })
        })
    })
}

fn naive_congruences(s: &Structure) -> BTreeSet<Congruence> {
    partitions(s.size()).into_iter().filter(|p| naive_compatible(s, p)).map(|p| Congruence::from_labels(&p)).collect()
}

fn subset(n: usize, mask: u32) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn close_is_the_least_subuniverse(s in algebra(), mask in 1u32..32) {
        let seed = subset(s.size(), mask);
        prop_assume!(!seed.is_empty());
        let (sub, dag) = close(&s, &seed).unwrap();
        let expected: Vec<usize> = naive_closure(&s, &seed).into_iter().collect();
        prop_assert_eq!(sub.members(), &expected[..]);
        prop_assert!(is_subuniverse(&s, sub.members()).unwrap());
        let values = dag.evaluate(&s);
        prop_assert!(dag.nodes().iter().zip(&values).all(|(node, &v)| node.element == v));
    }

    #[test]
    fn square_closure_of_diagonal_is_diagonal(s in algebra(), mask in 1u32..32) {
        let seed = subset(s.size(), mask);
        prop_assume!(!seed.is_empty());
        let pairs: Vec<(usize, usize)> = seed.iter().map(|&x| (x, x)).collect();
        let square = generated_subuniverse_of_square(&s, &pairs).unwrap();
        let (sub, _) = close(&s, &seed).unwrap();
        let diagonal: BTreeSet<(usize, usize)> = sub.members().iter().map(|&x| (x, x)).collect();
        prop_assert_eq!(square, diagonal);
    }

    #[test]
    fn congruence_lattice_matches_brute_force(s in algebra()) {
        let found: BTreeSet<Congruence> = all_congruences(&s, 12).unwrap().into_iter().collect();
        prop_assert_eq!(found, naive_congruences(&s));
    }

    #[test]
    fn principal_congruence_is_least(s in algebra(), x in 0usize..5, y in 0usize..5) {
        prop_assume!(x < s.size() && y < s.size());
        let theta = cg(&s, &[(x, y)]).unwrap();
        prop_assert!(theta.is_compatible(&s));
        prop_assert!(theta.related(x, y));
        for other in naive_congruences(&s).into_iter().filter(|c| c.related(x, y)) {
            prop_assert!(theta.is_finer_than(&other));
        }
    }

    #[test]
    fn joint_extensions_restrict_to_both_sides(s in algebra(), ia in 0usize..64, ib in 0usize..64) {
        let subs = all_subuniverses(&s);
        let (a, b) = (&subs[ia % subs.len()], &subs[ib % subs.len()]);
        let (sa, _) = induced_substructure(&s, a).unwrap();
        let (sb, _) = induced_substructure(&s, b).unwrap();
        for alpha in endomorphisms(&sa, HomClass::AllEndomorphisms, Mode::Weak).iter().take(8) {
            for beta in endomorphisms(&sb, HomClass::AllEndomorphisms, Mode::Weak).iter().take(8) {
                if let JointExtension::Extended { join, gamma } = joint_extension(&s, a, b, alpha, beta).unwrap() {
                    let (js, _) = induced_substructure(&s, &join).unwrap();
                    prop_assert!(check_homomorphism(&js, &js, gamma.map(), Mode::Weak).is_ok());
                    for (side, h) in [(a, alpha), (b, beta)] {
                        for (i, &x) in side.members().iter().enumerate() {
                            let image = join.members()[gamma.apply(join.index_of(x).unwrap())];
                            prop_assert_eq!(image, side.members()[h.apply(i)]);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn kernels_are_congruences_and_quotients_match_images(s in algebra()) {
        for h in endomorphisms(&s, HomClass::AllEndomorphisms, Mode::Weak).iter().take(16) {
            let k = kernel(h);
            prop_assert!(k.is_compatible(&s));
            let (q, _) = quotient(&s, &k).unwrap();
            let image = SubUniverse::new(&s, h.map().iter().copied()).unwrap();
            let (im, _) = induced_substructure(&s, &image).unwrap();
            prop_assert!(find_isomorphism(&q, &im).is_some());
        }
    }

    #[test]
    fn congruence_shortcut_agrees_with_full_enumeration(s in algebra(), ia in 0usize..64, ib in 0usize..64) {
        let subs = all_subuniverses(&s);
        let (a, b) = (&subs[ia % subs.len()], &subs[ib % subs.len()]);
        let fast = decide_congruence_independence(&s, a, b, CongruenceOptions::default()).unwrap();
        let slow = decide_congruence_independence(&s, a, b, CongruenceOptions { early_exit: false, ..CongruenceOptions::default() }).unwrap();
        prop_assert_eq!(fast.is_independent(), slow.is_independent());
        prop_assert_eq!(fast.is_independent(), fast.witness().is_none());
    }

    #[test]
    fn verdicts_carry_witnesses_exactly_when_dependent(s in algebra(), ia in 0usize..64, ib in 0usize..64) {
        let subs = all_subuniverses(&s);
        let (a, b) = (&subs[ia % subs.len()], &subs[ib % subs.len()]);
        let v = decide_subalgebra_independence(&s, a, b, HomClass::AllEndomorphisms, Mode::Weak).unwrap();
        prop_assert_eq!(v.is_independent(), v.witness().is_none());
        prop_assert!(v.stats().pairs_examined <= v.stats().left_candidates * v.stats().right_candidates);
    }

    #[test]
    fn hom_enumeration_matches_brute_force(g in digraph(), h in digraph()) {
        for mode in [Mode::Weak, Mode::Strong] {
            let found: BTreeSet<Vec<usize>> = enumerate_homs(&g, &h, mode).unwrap().map(|m| m.map().to_vec()).collect();
            let total = h.size().pow(g.size() as u32);
            let expected: BTreeSet<Vec<usize>> = (0..total)
                .map(|mut code| (0..g.size()).map(|_| { let d = code % h.size(); code /= h.size(); d }).collect::<Vec<_>>())
                .filter(|m| {
                    (0..g.size()).all(|u| (0..g.size()).all(|v| {
                        let before = g.holds(0, &[u, v]);
                        let after = h.holds(0, &[m[u], m[v]]);
                        match mode { Mode::Weak => !before || after, Mode::Strong => before == after }
                    }))
                })
                .collect();
            prop_assert_eq!(found, expected);
        }
    }

    #[test]
    fn structure_files_round_trip(s in algebra(), g in digraph()) {
        for x in [s, g] {
            let text = to_json(&x);
            let back = from_json(&text).unwrap();
            prop_assert_eq!(&back, &x);
            prop_assert_eq!(to_json(&back), text);
        }
    }
}

#[test]
fn composed_homomorphisms_stay_homomorphisms() {
    let sig = Signature::new(vec![Symbol::new("f", 2), Symbol::new("g", 1)], vec![]).unwrap();
    let n = 4;
    let f = (0..n * n).map(|i| (i / n).max(i % n)).collect();
    let g = (0..n).map(|i| (i + 1).min(n - 1)).collect();
    let s = Structure::new(sig, n, vec![f, g], vec![]).unwrap();
    let endos = endomorphisms(&s, HomClass::AllEndomorphisms, Mode::Weak);
    for x in &endos {
        for y in &endos {
            let xy: Homomorphism = x.then(y);
            assert!(check_homomorphism(&s, &s, xy.map(), Mode::Weak).is_ok());
        }
    }
}
