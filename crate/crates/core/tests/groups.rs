use std::collections::HashMap;

use subindep_core::generation::all_subuniverses;
use subindep_core::independence::{check_word_condition, decide_subalgebra_independence, group_diagnostics, Prediction};
use subindep_core::morphisms::endomorphisms;
use subindep_core::structure::induced_substructure;
use subindep_core::zoo::{build, Family};
use subindep_core::{HomClass, Mode, Structure, SubUniverse};

fn group(f: Family) -> Structure {
    build(&f).unwrap().0
}

/// Checks that products `a₁b₁⋯aₖbₖ` with `k ≤ 3` determine the product of
/// their images, by listing every such word.
fn words_are_functional(g: &Structure, a: &SubUniverse, b: &SubUniverse, alpha: &[usize], beta: &[usize]) -> bool {
    let mul = |x: usize, y: usize| g.apply(0, &[x, y]);
    let letters: Vec<(usize, usize)> = a
        .members()
        .iter()
        .enumerate()
        .flat_map(|(i, &x)| {
            b.members().iter().enumerate().map(move |(j, &y)| (x, y, a.members()[alpha[i]], b.members()[beta[j]]))
        })
        .map(|(x, y, ax, by)| (mul(x, y), mul(ax, by)))
        .collect();
    let mut value: HashMap<usize, usize> = HashMap::new();
    let mut layer = vec![(0usize, 0usize)];
    for _ in 0..3 {
        let mut next = Vec::new();
        for &(w, image) in &layer {
            for &(l, limage) in &letters {
                next.push((mul(w, l), mul(image, limage)));
            }
        }
        for &(w, image) in &next {
            if *value.entry(w).or_insert(image) != image {
                return false;
            }
        }
        next.sort_unstable();
        next.dedup();
        layer = next;
    }
    true
}

#[test]
fn word_condition_matches_bounded_words() {
    for f in [Family::SymmetricGroup(3), Family::CyclicGroup(6), Family::DihedralGroup(4)] {
        let g = group(f);
        let subs = all_subuniverses(&g);
        for a in &subs {
            for b in &subs {
                let (sa, _) = induced_substructure(&g, a).unwrap();
                let (sb, _) = induced_substructure(&g, b).unwrap();
                for alpha in endomorphisms(&sa, HomClass::AllEndomorphisms, Mode::Weak) {
                    for beta in endomorphisms(&sb, HomClass::AllEndomorphisms, Mode::Weak) {
                        let decided = check_word_condition(&g, a, b, &alpha, &beta).unwrap();
                        let listed = words_are_functional(&g, a, b, alpha.map(), beta.map());
                        assert_eq!(decided, listed, "{} A={:?} B={:?}", g.name(), a.members(), b.members());
                    }
                }
            }
        }
    }
}

#[test]
fn independence_forces_trivial_intersection_up_to_order_twelve() {
    let families = [
        Family::CyclicGroup(2),
        Family::CyclicGroup(4),
        Family::CyclicGroup(6),
        Family::CyclicGroup(8),
        Family::CyclicGroup(12),
        Family::SymmetricGroup(3),
        Family::DihedralGroup(4),
        Family::DihedralGroup(5),
        Family::DihedralGroup(6),
        Family::QuaternionGroup,
        Family::AlternatingGroup(4),
    ];
    for f in families {
        let g = group(f);
        let subs = all_subuniverses(&g);
        for a in &subs {
            for b in &subs {
                let v = decide_subalgebra_independence(&g, a, b, HomClass::AllEndomorphisms, Mode::Weak).unwrap();
                if v.is_independent() {
                    assert_eq!(a.intersection(b).len(), 1, "{} A={:?} B={:?}", g.name(), a.members(), b.members());
                }
                let report = group_diagnostics(&g, a, b).unwrap();
                match report.prediction {
                    Prediction::Independent => assert!(v.is_independent()),
                    Prediction::NotIndependent => assert!(!v.is_independent()),
                    Prediction::NoPrediction => {}
                }
            }
        }
    }
}

#[test]
fn automorphism_class_is_never_stricter_than_endomorphisms() {
    let g = group(Family::DihedralGroup(4));
    let subs = all_subuniverses(&g);
    for a in &subs {
        for b in &subs {
            let all = decide_subalgebra_independence(&g, a, b, HomClass::AllEndomorphisms, Mode::Weak).unwrap();
            let auts = decide_subalgebra_independence(&g, a, b, HomClass::AutomorphismsOnly, Mode::Weak).unwrap();
            assert!(!all.is_independent() || auts.is_independent());
        }
    }
}
