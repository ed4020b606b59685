//! Homomorphism enumeration, joint extensions, kernels and isomorphism search.

mod iso;
mod joint;
pub(crate) mod search;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::congruence::Congruence;
use crate::error::{Error, Result};
use crate::structure::Structure;
use crate::tuples::AllTuples;

pub use iso::find_isomorphism;
pub use joint::{joint_extension, JointExtension, Refusal};
pub(crate) use joint::Extender;
pub use search::HomSearch;

/// How relations must be respected.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Related tuples map to related tuples.
    #[default]
    Weak,
    /// A tuple is related iff its image is.
    Strong,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "weak" => Ok(Mode::Weak),
            "strong" => Ok(Mode::Strong),
            other => Err(Error::Format(format!("unknown mode `{other}` (expected weak|strong)"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Weak => "weak",
            Mode::Strong => "strong",
        })
    }
}

/// Which endomorphisms the independence decider quantifies over.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HomClass {
    #[default]
    AllEndomorphisms,
    /// Experimental: bijective endomorphisms only.
    AutomorphismsOnly,
}

/// A total, operation-preserving map between universes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Homomorphism {
    map: Vec<usize>,
    codomain_size: usize,
    mode: Mode,
}

impl Homomorphism {
    /// Validates `map` as a `mode`-homomorphism from `dom` to `cod`.
    pub fn new(dom: &Structure, cod: &Structure, map: Vec<usize>, mode: Mode) -> Result<Self> {
        check_homomorphism(dom, cod, &map, mode).map_err(Error::NotHomomorphism)?;
        Ok(Homomorphism::from_parts(map, cod.size(), mode))
    }

    pub(crate) fn from_parts(map: Vec<usize>, codomain_size: usize, mode: Mode) -> Self {
        Homomorphism { map, codomain_size, mode }
    }

    pub fn identity(s: &Structure, mode: Mode) -> Self {
        Homomorphism::from_parts((0..s.size()).collect(), s.size(), mode)
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn domain_size(&self) -> usize {
        self.map.len()
    }

    pub fn codomain_size(&self) -> usize {
        self.codomain_size
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain_size];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.codomain_size];
        self.map.iter().for_each(|&y| seen[y] = true);
        seen.into_iter().all(|b| b)
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &Homomorphism) -> Homomorphism {
        let map = self.map.iter().map(|&x| then.map[x]).collect();
        Homomorphism::from_parts(map, then.codomain_size, self.mode)
    }
}

/// Full check of the homomorphism conditions; the error names the first
/// violated tuple.
pub fn check_homomorphism(dom: &Structure, cod: &Structure, map: &[usize], mode: Mode) -> std::result::Result<(), String> {
    if dom.signature() != cod.signature() {
        return Err("signatures differ".into());
    }
    if map.len() != dom.size() {
        return Err(format!("map has {} entries for a domain of size {}", map.len(), dom.size()));
    }
    if let Some(&y) = map.iter().find(|&&y| y >= cod.size()) {
        return Err(format!("image {y} outside a codomain of size {}", cod.size()));
    }
    let mut ys = Vec::new();
    for (op, sym) in dom.signature().ops().iter().enumerate() {
        let mut tuples = AllTuples::new(dom.size(), sym.arity);
        while let Some(t) = tuples.next_tuple() {
            ys.clear();
            ys.extend(t.iter().map(|&x| map[x]));
            if map[dom.apply(op, t)] != cod.apply(op, &ys) {
                return Err(format!("`{}` not preserved at {t:?}", sym.name));
            }
        }
    }
    for (rel, sym) in dom.signature().rels().iter().enumerate() {
        let mut tuples = AllTuples::new(dom.size(), sym.arity);
        while let Some(t) = tuples.next_tuple() {
            ys.clear();
            ys.extend(t.iter().map(|&x| map[x]));
            let (before, after) = (dom.holds(rel, t), cod.holds(rel, &ys));
            let ok = match mode {
                Mode::Weak => !before || after,
                Mode::Strong => before == after,
            };
            if !ok {
                return Err(format!("`{}` not {mode}ly preserved at {t:?}", sym.name));
            }
        }
    }
    Ok(())
}

/// Streams every `mode`-homomorphism from `dom` to `cod` exactly once.
pub fn enumerate_homs<'a>(dom: &'a Structure, cod: &'a Structure, mode: Mode) -> Result<HomSearch<'a>> {
    dom.check_same_signature(cod)?;
    Ok(HomSearch::new(dom, cod, mode, false, None))
}

/// Endomorphisms of `s` in the selected class, in enumeration order.
pub fn endomorphisms(s: &Structure, class: HomClass, mode: Mode) -> Vec<Homomorphism> {
    let injective = class == HomClass::AutomorphismsOnly;
    HomSearch::new(s, s, mode, injective, None).collect()
}

/// Partition of the domain by equal images.
pub fn kernel(h: &Homomorphism) -> Congruence {
    Congruence::from_labels(h.map())
}
