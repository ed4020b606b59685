//! Finite coproducts, their universal property, and the canonical map onto
//! a join.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::generation::join;
use crate::morphisms::search::{Constraints, PartialMap};
use crate::morphisms::{enumerate_homs, Homomorphism, Mode};
use crate::structure::{direct_product, induced_substructure, Structure, SubUniverse};

use super::{laws, powerset_boolean_algebra, CategoryTag, BA_MEET, BA_ZERO, GROUP_UNIT, VS_ZERO};

/// Largest number of atoms allowed in a Boolean algebra coproduct.
const MAX_COPRODUCT_ATOMS: usize = 6;

/// A coproduct object with its two injections.
#[derive(Debug, Clone)]
pub struct Coproduct {
    pub structure: Structure,
    pub left: Homomorphism,
    pub right: Homomorphism,
}

fn disjoint_union(x: &Structure, y: &Structure) -> Result<Structure> {
    if x.has_operations() {
        return Err(Error::Unsupported("disjoint union of structures with operations".into()));
    }
    let nx = x.size();
    let rels = (0..x.signature().rels().len())
        .map(|r| {
            let shifted = y.relation(r).iter().map(|t| t.iter().map(|v| v + nx).collect());
            x.relation(r).iter().cloned().chain(shifted).collect()
        })
        .collect();
    Structure::new(x.signature().clone(), nx + y.size(), vec![], rels)
}

fn atoms(s: &Structure) -> Vec<usize> {
    let meet = s.signature().op_index(BA_MEET).expect("checked Boolean algebra");
    let zero = s.apply(s.signature().op_index(BA_ZERO).expect("checked Boolean algebra"), &[]);
    (0..s.size())
        .filter(|&a| a != zero && (0..s.size()).all(|b| [zero, a].contains(&s.apply(meet, &[a, b]))))
        .collect()
}

/// Atoms below each element, as a bit mask over `atoms`.
fn atom_masks(s: &Structure, atoms: &[usize]) -> Vec<u64> {
    let meet = s.signature().op_index(BA_MEET).expect("checked Boolean algebra");
    (0..s.size())
        .map(|x| {
            atoms.iter().enumerate().filter(|(_, &a)| s.apply(meet, &[a, x]) == a).map(|(i, _)| 1u64 << i).sum()
        })
        .collect()
}

/// Product embeddings `a ↦ (a, unit)` and `b ↦ (unit, b)`.
fn product_coproduct(x: &Structure, y: &Structure, unit: &str) -> Result<(Structure, Vec<usize>, Vec<usize>)> {
    let ny = y.size();
    let ux = x.apply(x.signature().op_index(unit).expect("checked signature"), &[]);
    let uy = y.apply(y.signature().op_index(unit).expect("checked signature"), &[]);
    let left = (0..x.size()).map(|a| a * ny + uy).collect();
    let right = (0..ny).map(|b| ux * ny + b).collect();
    Ok((direct_product(x, y)?, left, right))
}

/// The coproduct of `x` and `y` in the category named by `tag`.
///
/// Sets and graphs use the disjoint union, abelian groups and vector spaces
/// the direct product, and Boolean algebras the powerset over pairs of atoms.
/// Free products of groups are infinite except in degenerate cases and are
/// refused.
pub fn coproduct(tag: CategoryTag, x: &Structure, y: &Structure) -> Result<Coproduct> {
    laws::check(x, tag)?;
    laws::check(y, tag)?;
    let (structure, left, right) = match tag {
        CategoryTag::Set | CategoryTag::Graph => {
            let nx = x.size();
            (disjoint_union(x, y)?, (0..nx).collect(), (nx..nx + y.size()).collect())
        }
        CategoryTag::AbelianGroup => product_coproduct(x, y, GROUP_UNIT)?,
        CategoryTag::VectorSpace { .. } => product_coproduct(x, y, VS_ZERO)?,
        CategoryTag::BooleanAlgebra => {
            let (ax, ay) = (atoms(x), atoms(y));
            let k = ax.len() * ay.len();
            if k > MAX_COPRODUCT_ATOMS {
                return Err(Error::SizeBound { size: 1 << k, bound: 1 << MAX_COPRODUCT_ATOMS });
            }
            let row = ay.len();
            let spread = |mask: u64, width: usize, outer: bool| -> usize {
                let mut out = 0usize;
                for i in 0..width {
                    if mask >> i & 1 == 1 {
                        for j in 0..(k / width) {
                            out |= if outer { 1 << (i * row + j) } else { 1 << (j * row + i) };
                        }
                    }
                }
                out
            };
            let left = atom_masks(x, &ax).into_iter().map(|m| spread(m, ax.len(), true)).collect();
            let right = atom_masks(y, &ay).into_iter().map(|m| spread(m, ay.len(), false)).collect();
            (powerset_boolean_algebra(k)?, left, right)
        }
        CategoryTag::Group => {
            return Err(Error::Unsupported("the free product of two groups is generally infinite".into()))
        }
    };
    let left = Homomorphism::new(x, &structure, left, Mode::Weak)?;
    let right = Homomorphism::new(y, &structure, right, Mode::Weak)?;
    let name = format!("{} + {}", x.name(), y.name());
    Ok(Coproduct { structure: structure.with_name(name), left, right })
}

/// Checks that every pair `(f, g)` of maps out of `x` and `y` into each target
/// factors through exactly one map out of the coproduct. Weak homomorphisms
/// throughout.
pub fn verify_coproduct_property(x: &Structure, y: &Structure, cop: &Coproduct, targets: &[Structure]) -> Result<bool> {
    for d in targets {
        let fx = enumerate_homs(x, d, Mode::Weak)?.count();
        let fy = enumerate_homs(y, d, Mode::Weak)?.count();
        let mut factorizations: HashMap<(Vec<usize>, Vec<usize>), usize> = HashMap::new();
        for h in enumerate_homs(&cop.structure, d, Mode::Weak)? {
            let key = (cop.left.then(&h).map().to_vec(), cop.right.then(&h).map().to_vec());
            *factorizations.entry(key).or_default() += 1;
        }
        if factorizations.len() != fx * fy || factorizations.values().any(|&c| c != 1) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The comparison map from the coproduct of two subuniverses onto their join.
#[derive(Debug, Clone)]
pub struct CanonicalQuotient {
    pub coproduct: Coproduct,
    pub join: SubUniverse,
    pub join_structure: Structure,
    /// Indexed by coproduct elements, valued in positions of `join`.
    pub q: Homomorphism,
}

/// Builds `q : A + B → A ∨ B`, the map restricting to the inclusions on
/// both summands. It is computed by closing the two inclusions under the
/// operations, so no category-specific formula is involved.
pub fn canonical_quotient(parent: &Structure, a: &SubUniverse, b: &SubUniverse, tag: CategoryTag) -> Result<CanonicalQuotient> {
    let (sa, _) = induced_substructure(parent, a)?;
    let (sb, _) = induced_substructure(parent, b)?;
    let cop = coproduct(tag, &sa, &sb)?;
    let (joined, _) = join(parent, a, b)?;
    let (js, _) = induced_substructure(parent, &joined)?;
    let c = Constraints::plain(Mode::Weak);
    let pos = |x: usize| joined.index_of(x).expect("summands lie in the join");
    let fail = |why: String| Error::NotHomomorphism(format!("no canonical map onto the join: {why}"));
    let mut pm = PartialMap::new(&cop.structure, &js, &c).map_err(|e| fail(format!("{e:?}")))?;
    for (i, &x) in a.members().iter().enumerate() {
        pm.insert(cop.left.apply(i), pos(x), &c).map_err(|e| fail(format!("{e:?}")))?;
    }
    for (j, &y) in b.members().iter().enumerate() {
        pm.insert(cop.right.apply(j), pos(y), &c).map_err(|e| fail(format!("{e:?}")))?;
    }
    pm.settle(&cop.structure, &js, &c).map_err(|e| fail(format!("{e:?}")))?;
    let map = pm.into_total().ok_or_else(|| fail("the injections do not generate the coproduct".into()))?;
    let q = Homomorphism::new(&cop.structure, &js, map, Mode::Weak)?;
    Ok(CanonicalQuotient { coproduct: cop, join: joined, join_structure: js, q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::{build, graph, Family};

    fn z(n: usize) -> Structure {
        build(&Family::CyclicGroup(n)).unwrap().0
    }

    #[test]
    fn cyclic_coproduct_is_product() {
        let cop = coproduct(CategoryTag::AbelianGroup, &z(2), &z(3)).unwrap();
        assert_eq!(cop.structure.size(), 6);
        assert!(verify_coproduct_property(&z(2), &z(3), &cop, &[z(2), z(3), z(6)]).unwrap());
    }

    #[test]
    fn wrong_object_fails_universal_property() {
        let z4 = z(4);
        let doubled = Homomorphism::new(&z(2), &z4, vec![0, 2], Mode::Weak).unwrap();
        let fake = Coproduct { structure: z4, left: doubled.clone(), right: doubled };
        assert!(!verify_coproduct_property(&z(2), &z(2), &fake, &[z(2)]).unwrap());
    }

    #[test]
    fn boolean_coproduct_of_two_fours() {
        let (b4, _) = build(&Family::PowersetBooleanAlgebra(2)).unwrap();
        let (b2, _) = build(&Family::PowersetBooleanAlgebra(1)).unwrap();
        let cop = coproduct(CategoryTag::BooleanAlgebra, &b4, &b4).unwrap();
        assert_eq!(cop.structure.size(), 16);
        assert!(verify_coproduct_property(&b4, &b4, &cop, &[b2, b4.clone()]).unwrap());
    }

    #[test]
    fn graph_coproduct_is_disjoint_union() {
        let p2 = graph(2, &[(0, 1)]).unwrap();
        let cop = coproduct(CategoryTag::Graph, &p2, &p2).unwrap();
        assert_eq!(cop.structure.relation(0).len(), 4);
        let k3 = graph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(verify_coproduct_property(&p2, &p2, &cop, &[p2.clone(), k3]).unwrap());
    }

    #[test]
    fn groups_refused() {
        let (s3, _) = build(&Family::SymmetricGroup(3)).unwrap();
        assert!(matches!(coproduct(CategoryTag::Group, &s3, &s3), Err(Error::Unsupported(_))));
    }

    #[test]
    fn quotient_onto_z6() {
        let z6 = z(6);
        let a = SubUniverse::new(&z6, [0, 3]).unwrap();
        let b = SubUniverse::new(&z6, [0, 2, 4]).unwrap();
        let cq = canonical_quotient(&z6, &a, &b, CategoryTag::AbelianGroup).unwrap();
        assert!(cq.q.is_surjective());
        assert!(cq.q.is_injective());
        let a2 = SubUniverse::new(&z6, [0, 2, 4]).unwrap();
        let cq = canonical_quotient(&z6, &a2, &b, CategoryTag::AbelianGroup).unwrap();
        assert_eq!(cq.coproduct.structure.size(), 9);
        assert!(cq.q.is_surjective() && !cq.q.is_injective());
    }

    #[test]
    fn quotient_of_overlapping_sets() {
        let x = Structure::set(3).unwrap();
        let a = SubUniverse::new(&x, [0, 1]).unwrap();
        let b = SubUniverse::new(&x, [1, 2]).unwrap();
        let cq = canonical_quotient(&x, &a, &b, CategoryTag::Set).unwrap();
        assert_eq!(cq.q.map(), &[0, 1, 1, 2]);
        let cq = canonical_quotient(&x, &a, &a, CategoryTag::Set).unwrap();
        assert_eq!(cq.q.map(), &[0, 1, 0, 1]);
        assert_eq!(cq.coproduct.left.then(&cq.q).map(), cq.coproduct.right.then(&cq.q).map());
    }
}
