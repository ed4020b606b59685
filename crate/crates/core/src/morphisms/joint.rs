//! Joint extensions of endomorphism pairs to the join of two subuniverses.
//!
//! The pairs `(x, α(x))` and `(y, β(y))` generate a subuniverse of the square
//! of the parent. A joint extension exists iff that subuniverse is the graph of
//! a function, and then it is that function: every element of the join is a
//! term in generators from both sides, and the term's value is forced.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generation::join;
use crate::structure::{induced_substructure, Structure, SubUniverse};
use crate::tuples::AllTuples;

use super::search::{Clash, Constraints, PartialMap};
use super::{check_homomorphism, Homomorphism, Mode};

/// Why a pair of endomorphisms has no joint extension. Elements are given in
/// the parent's indexing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Refusal {
    /// The generated relation sends `element` to both `first` and `second`.
    NonFunctional { element: usize, first: usize, second: usize },
    /// The forced map breaks a relation on this tuple of the join.
    Relation { relation: String, tuple: Vec<usize>, mode: Mode },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JointExtension {
    /// `gamma` is indexed by positions in `join`.
    Extended { join: SubUniverse, gamma: Homomorphism },
    Refused(Refusal),
}

impl JointExtension {
    pub fn is_extended(&self) -> bool {
        matches!(self, JointExtension::Extended { .. })
    }
}

/// Precomputed context for repeated extension attempts over one pair of
/// subuniverses.
pub(crate) struct Extender<'a> {
    parent: &'a Structure,
    a: &'a SubUniverse,
    b: &'a SubUniverse,
    join: SubUniverse,
    join_structure: Structure,
    mode: Mode,
}

impl<'a> Extender<'a> {
    pub(crate) fn new(parent: &'a Structure, a: &'a SubUniverse, b: &'a SubUniverse, mode: Mode) -> Result<Self> {
        let (join, _) = join(parent, a, b)?;
        let (join_structure, _) = induced_substructure(parent, &join)?;
        Ok(Extender { parent, a, b, join, join_structure, mode })
    }

    pub(crate) fn join(&self) -> &SubUniverse {
        &self.join
    }

    /// `alpha` and `beta` are indexed by positions in `a` and `b`.
    pub(crate) fn extend(&self, alpha: &[usize], beta: &[usize]) -> std::result::Result<Homomorphism, Refusal> {
        let c = Constraints { relations: None, injective: false, allowed: None };
        let build = || -> std::result::Result<PartialMap, Clash> {
            let mut pm = PartialMap::new(self.parent, self.parent, &c)?;
            for (i, &x) in self.a.members().iter().enumerate() {
                pm.insert(x, self.a.members()[alpha[i]], &c)?;
            }
            for (j, &y) in self.b.members().iter().enumerate() {
                pm.insert(y, self.b.members()[beta[j]], &c)?;
            }
            pm.settle(self.parent, self.parent, &c)?;
            Ok(pm)
        };
        let pm = match build() {
            Ok(pm) => pm,
            Err(Clash::Conflict { element, first, second }) => {
                return Err(Refusal::NonFunctional { element, first, second })
            }
            Err(other) => unreachable!("unconstrained closure reported {other:?}"),
        };
        debug_assert_eq!(pm.domain().len(), self.join.len());
        let gamma: Vec<usize> = self
            .join
            .members()
            .iter()
            .map(|&x| {
                let y = pm.get(x).expect("the generated relation covers the join");
                self.join.index_of(y).expect("images stay inside the join")
            })
            .collect();
        self.check_relations(&gamma)?;
        Ok(Homomorphism::from_parts(gamma, self.join.len(), self.mode))
    }

    fn check_relations(&self, gamma: &[usize]) -> std::result::Result<(), Refusal> {
        let js = &self.join_structure;
        let mut image = Vec::new();
        for (rel, sym) in js.signature().rels().iter().enumerate() {
            let mut tuples = AllTuples::new(js.size(), sym.arity);
            while let Some(t) = tuples.next_tuple() {
                image.clear();
                image.extend(t.iter().map(|&i| gamma[i]));
                let (before, after) = (js.holds(rel, t), js.holds(rel, &image));
                let broken = match self.mode {
                    Mode::Weak => before && !after,
                    Mode::Strong => before != after,
                };
                if broken {
                    return Err(Refusal::Relation {
                        relation: sym.name.clone(),
                        tuple: t.iter().map(|&i| self.join.members()[i]).collect(),
                        mode: self.mode,
                    });
                }
            }
        }
        Ok(())
    }
}

/// Decides whether `alpha` (an endomorphism of the substructure on `a`) and
/// `beta` (same for `b`) extend jointly to the join, and builds the extension.
///
/// Both maps must carry the same mode; relations are checked on the
/// substructure induced on the join.
pub fn joint_extension(
    parent: &Structure,
    a: &SubUniverse,
    b: &SubUniverse,
    alpha: &Homomorphism,
    beta: &Homomorphism,
) -> Result<JointExtension> {
    let mode = alpha.mode();
    if beta.mode() != mode {
        return Err(Error::NotHomomorphism("alpha and beta carry different modes".into()));
    }
    for (name, sub, h) in [("alpha", a, alpha), ("beta", b, beta)] {
        sub.check_parent(parent)?;
        let (s, _) = induced_substructure(parent, sub)?;
        check_homomorphism(&s, &s, h.map(), mode).map_err(|e| Error::NotHomomorphism(format!("{name}: {e}")))?;
    }
    let ext = Extender::new(parent, a, b, mode)?;
    Ok(match ext.extend(alpha.map(), beta.map()) {
        Ok(gamma) => JointExtension::Extended { join: ext.join().clone(), gamma },
        Err(r) => JointExtension::Refused(r),
    })
}
