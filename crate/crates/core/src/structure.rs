//! Signatures, finite structures, subuniverses, products and quotients.
//!
//! Universes are always `0..size`. Operation tables are stored row-major over
//! argument tuples in lexicographic order, so the entry for `f(x0, .., xk)` sits
//! at `x0 * n^k + .. + xk`.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::congruence::Congruence;
use crate::error::{Error, Result};
use crate::tuples::{table_index, AllTuples};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

impl Symbol {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        Symbol { name: name.into(), arity }
    }
}

/// Operation and relation symbols shared by all structures under comparison.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    ops: Vec<Symbol>,
    rels: Vec<Symbol>,
}

impl Signature {
    pub fn new(ops: Vec<Symbol>, rels: Vec<Symbol>) -> Result<Self> {
        let mut seen = HashSet::new();
        for s in ops.iter().chain(&rels) {
            if !seen.insert(s.name.as_str()) {
                return Err(Diagnostic::DuplicateSymbol(s.name.clone()).into());
            }
        }
        if let Some(r) = rels.iter().find(|r| r.arity == 0) {
            return Err(Diagnostic::NullaryRelation(r.name.clone()).into());
        }
        Ok(Signature { ops, rels })
    }

    pub fn empty() -> Self {
        Signature::default()
    }

    pub fn ops(&self) -> &[Symbol] {
        &self.ops
    }

    pub fn rels(&self) -> &[Symbol] {
        &self.rels
    }

    pub fn op_index(&self, name: &str) -> Option<usize> {
        self.ops.iter().position(|s| s.name == name)
    }

    pub fn rel_index(&self, name: &str) -> Option<usize> {
        self.rels.iter().position(|s| s.name == name)
    }

    pub fn op_arities(&self) -> Vec<usize> {
        self.ops.iter().map(|s| s.arity).collect()
    }
}

/// First violated structure invariant, with the offending indices.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Diagnostic {
    #[error("duplicate symbol name `{0}`")]
    DuplicateSymbol(String),
    #[error("relation `{0}` has arity 0")]
    NullaryRelation(String),
    #[error("empty universe")]
    EmptyUniverse,
    #[error("expected {expected} operation tables, found {found}")]
    OpCount { expected: usize, found: usize },
    #[error("expected {expected} relations, found {found}")]
    RelCount { expected: usize, found: usize },
    #[error("non-total table for `{op}`: expected {expected} entries, found {found}")]
    NonTotalTable { op: String, expected: usize, found: usize },
    #[error("out-of-range entry in `{op}` at position {position}: {value} >= {size}")]
    OutOfRangeEntry { op: String, position: usize, value: usize, size: usize },
    #[error("tuple {tuple} of `{rel}` has length {len}, expected {arity}")]
    TupleArity { rel: String, tuple: usize, len: usize, arity: usize },
    #[error("out-of-range entry in tuple {tuple} of `{rel}`: {value} >= {size}")]
    OutOfRangeTuple { rel: String, tuple: usize, value: usize, size: usize },
    #[error("label table has {found} entries for a universe of size {size}")]
    LabelCount { found: usize, size: usize },
}

/// Checks every structure invariant and reports the first violation.
pub fn validate(
    sig: &Signature,
    size: usize,
    ops: &[Vec<usize>],
    rels: &[Vec<Vec<usize>>],
) -> std::result::Result<(), Diagnostic> {
    if size == 0 {
        return Err(Diagnostic::EmptyUniverse);
    }
    if ops.len() != sig.ops.len() {
        return Err(Diagnostic::OpCount { expected: sig.ops.len(), found: ops.len() });
    }
    if rels.len() != sig.rels.len() {
        return Err(Diagnostic::RelCount { expected: sig.rels.len(), found: rels.len() });
    }
    for (sym, table) in sig.ops.iter().zip(ops) {
        let expected = checked_pow(size, sym.arity);
        if Some(table.len()) != expected {
            return Err(Diagnostic::NonTotalTable {
                op: sym.name.clone(),
                expected: expected.unwrap_or(usize::MAX),
                found: table.len(),
            });
        }
        if let Some((position, &value)) = table.iter().enumerate().find(|(_, &v)| v >= size) {
            return Err(Diagnostic::OutOfRangeEntry { op: sym.name.clone(), position, value, size });
        }
    }
    for (sym, tuples) in sig.rels.iter().zip(rels) {
        for (i, t) in tuples.iter().enumerate() {
            if t.len() != sym.arity {
                return Err(Diagnostic::TupleArity {
                    rel: sym.name.clone(),
                    tuple: i,
                    len: t.len(),
                    arity: sym.arity,
                });
            }
            if let Some(&value) = t.iter().find(|&&v| v >= size) {
                return Err(Diagnostic::OutOfRangeTuple { rel: sym.name.clone(), tuple: i, value, size });
            }
        }
    }
    Ok(())
}

fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    (0..exp).try_fold(1usize, |acc, _| acc.checked_mul(base))
}

/// A finite first-order structure on the universe `0..size`.
///
/// Immutable after construction; every constructor validates.
#[derive(Debug, Clone)]
pub struct Structure {
    name: String,
    sig: Signature,
    size: usize,
    ops: Vec<Vec<usize>>,
    rels: Vec<BTreeSet<Vec<usize>>>,
    labels: Option<Vec<String>>,
    fingerprint: u64,
}

impl PartialEq for Structure {
    fn eq(&self, other: &Self) -> bool {
        self.sig == other.sig && self.size == other.size && self.ops == other.ops && self.rels == other.rels
    }
}

impl Eq for Structure {}

impl Structure {
    pub fn new(sig: Signature, size: usize, ops: Vec<Vec<usize>>, rels: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        validate(&sig, size, &ops, &rels)?;
        let rels: Vec<BTreeSet<Vec<usize>>> = rels.into_iter().map(|r| r.into_iter().collect()).collect();
        let mut hasher = DefaultHasher::new();
        sig.hash(&mut hasher);
        size.hash(&mut hasher);
        ops.hash(&mut hasher);
        rels.hash(&mut hasher);
        Ok(Structure { name: String::new(), sig, size, ops, rels, labels: None, fingerprint: hasher.finish() })
    }

    /// A structure over the empty signature.
    pub fn set(size: usize) -> Result<Self> {
        Structure::new(Signature::empty(), size, vec![], vec![])
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Attaches display labels. Labels never take part in any algorithm.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size {
            return Err(Diagnostic::LabelCount { found: labels.len(), size: self.size }.into());
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn op_table(&self, op: usize) -> &[usize] {
        &self.ops[op]
    }

    pub fn relation(&self, rel: usize) -> &BTreeSet<Vec<usize>> {
        &self.rels[rel]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    #[inline]
    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        self.ops[op][table_index(args, self.size)]
    }

    pub fn holds(&self, rel: usize, tuple: &[usize]) -> bool {
        self.rels[rel].contains(tuple)
    }

    /// Values of the nullary operations.
    pub fn constants(&self) -> Vec<usize> {
        self.sig
            .ops
            .iter()
            .enumerate()
            .filter(|(_, s)| s.arity == 0)
            .map(|(i, _)| self.ops[i][0])
            .collect()
    }

    pub fn has_operations(&self) -> bool {
        !self.sig.ops.is_empty()
    }

    pub(crate) fn check_element(&self, x: usize) -> Result<()> {
        if x >= self.size {
            Err(Error::ElementOutOfRange { element: x, size: self.size })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_same_signature(&self, other: &Structure) -> Result<()> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch(format!(
                "`{}` and `{}` have different signatures",
                self.name, other.name
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = if self.name.is_empty() { "structure" } else { &self.name };
        write!(f, "{name} (size {})", self.size)
    }
}

/// A subset of a parent universe closed under every operation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubUniverse {
    members: Vec<usize>,
    parent: u64,
    parent_size: usize,
}

impl SubUniverse {
    /// Checks closure and wraps `elems`; duplicates are ignored.
    pub fn new(parent: &Structure, elems: impl IntoIterator<Item = usize>) -> Result<Self> {
        let members: BTreeSet<usize> = elems.into_iter().collect();
        let members: Vec<usize> = members.into_iter().collect();
        if !is_subuniverse(parent, &members)? {
            return Err(Error::NotClosed(format!("{members:?} in {parent}")));
        }
        Ok(SubUniverse::from_sorted_unchecked(parent, members))
    }

    pub fn full(parent: &Structure) -> Self {
        SubUniverse::from_sorted_unchecked(parent, (0..parent.size).collect())
    }

    pub(crate) fn from_sorted_unchecked(parent: &Structure, members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        SubUniverse { members, parent: parent.fingerprint, parent_size: parent.size }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// Position of `x` in the induced substructure.
    pub fn index_of(&self, x: usize) -> Option<usize> {
        self.members.binary_search(&x).ok()
    }

    pub fn intersection(&self, other: &SubUniverse) -> Vec<usize> {
        self.members.iter().copied().filter(|&x| other.contains(x)).collect()
    }

    pub fn belongs_to(&self, parent: &Structure) -> bool {
        self.parent == parent.fingerprint && self.parent_size == parent.size
    }

    pub(crate) fn check_parent(&self, parent: &Structure) -> Result<()> {
        if self.belongs_to(parent) {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }
}

/// True iff `subset` contains every constant and is closed under every operation.
pub fn is_subuniverse(structure: &Structure, subset: &[usize]) -> Result<bool> {
    let mut mask = vec![false; structure.size];
    for &x in subset {
        structure.check_element(x)?;
        mask[x] = true;
    }
    let members: Vec<usize> = (0..structure.size).filter(|&x| mask[x]).collect();
    let mut args = Vec::new();
    for (op, sym) in structure.sig.ops.iter().enumerate() {
        let mut tuples = AllTuples::new(members.len(), sym.arity);
        while let Some(t) = tuples.next_tuple() {
            args.clear();
            args.extend(t.iter().map(|&i| members[i]));
            if !mask[structure.apply(op, &args)] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The substructure induced on `sub`, re-indexed to `0..|sub|`.
///
/// The returned vector maps each new index to its element of the parent.
pub fn induced_substructure(structure: &Structure, sub: &SubUniverse) -> Result<(Structure, Vec<usize>)> {
    sub.check_parent(structure)?;
    let members = sub.members().to_vec();
    let n = members.len();
    let mut ops = Vec::with_capacity(structure.sig.ops.len());
    let mut args = Vec::new();
    for (op, sym) in structure.sig.ops.iter().enumerate() {
        let mut table = Vec::new();
        let mut tuples = AllTuples::new(n, sym.arity);
        while let Some(t) = tuples.next_tuple() {
            args.clear();
            args.extend(t.iter().map(|&i| members[i]));
            let value = structure.apply(op, &args);
            let idx = sub
                .index_of(value)
                .ok_or_else(|| Error::NotClosed(format!("{} escapes the subset", value)))?;
            table.push(idx);
        }
        ops.push(table);
    }
    let rels = structure
        .rels
        .iter()
        .map(|r| {
            r.iter()
                .filter_map(|t| t.iter().map(|&x| sub.index_of(x)).collect::<Option<Vec<_>>>())
                .collect()
        })
        .collect();
    let mut induced = Structure::new(structure.sig.clone(), n, ops, rels)?.with_name(structure.name.clone());
    if let Some(labels) = &structure.labels {
        induced = induced.with_labels(members.iter().map(|&x| labels[x].clone()).collect())?;
    }
    Ok((induced, members))
}

/// Componentwise product; the pair `(i, j)` is element `i * y.size() + j`.
pub fn direct_product(x: &Structure, y: &Structure) -> Result<Structure> {
    x.check_same_signature(y)?;
    let ny = y.size;
    let n = x.size * ny;
    let mut ops = Vec::with_capacity(x.sig.ops.len());
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for (op, sym) in x.sig.ops.iter().enumerate() {
        let mut table = Vec::new();
        let mut tuples = AllTuples::new(n, sym.arity);
        while let Some(t) = tuples.next_tuple() {
            left.clear();
            right.clear();
            left.extend(t.iter().map(|&p| p / ny));
            right.extend(t.iter().map(|&p| p % ny));
            table.push(x.apply(op, &left) * ny + y.apply(op, &right));
        }
        ops.push(table);
    }
    let rels = x
        .rels
        .iter()
        .zip(&y.rels)
        .map(|(rx, ry)| {
            let mut out = Vec::new();
            for tx in rx {
                for ty in ry {
                    out.push(tx.iter().zip(ty).map(|(&a, &b)| a * ny + b).collect());
                }
            }
            out
        })
        .collect();
    let mut product = Structure::new(x.sig.clone(), n, ops, rels)?.with_name(format!("{}x{}", x.name, y.name));
    if let (Some(lx), Some(ly)) = (&x.labels, &y.labels) {
        let labels = (0..n).map(|p| format!("({},{})", lx[p / ny], ly[p % ny])).collect();
        product = product.with_labels(labels)?;
    }
    Ok(product)
}

/// Quotient by a congruence. The returned vector sends each element to its block.
///
/// A relation holds on a tuple of blocks iff it holds on some tuple of representatives.
pub fn quotient(structure: &Structure, theta: &Congruence) -> Result<(Structure, Vec<usize>)> {
    if theta.universe_size() != structure.size {
        return Err(Error::NotCongruence(format!(
            "partition of {} elements for a universe of size {}",
            theta.universe_size(),
            structure.size
        )));
    }
    if let Some(reason) = theta.compatibility_violation(structure) {
        return Err(Error::NotCongruence(reason));
    }
    let blocks = theta.blocks();
    let reps: Vec<usize> = blocks.iter().map(|b| b[0]).collect();
    let m = blocks.len();
    let mut ops = Vec::with_capacity(structure.sig.ops.len());
    let mut args = Vec::new();
    for (op, sym) in structure.sig.ops.iter().enumerate() {
        let mut table = Vec::new();
        let mut tuples = AllTuples::new(m, sym.arity);
        while let Some(t) = tuples.next_tuple() {
            args.clear();
            args.extend(t.iter().map(|&b| reps[b]));
            table.push(theta.block_of(structure.apply(op, &args)));
        }
        ops.push(table);
    }
    let rels = structure
        .rels
        .iter()
        .map(|r| {
            let image: BTreeSet<Vec<usize>> = r.iter().map(|t| t.iter().map(|&x| theta.block_of(x)).collect()).collect();
            image.into_iter().collect()
        })
        .collect();
    let q = Structure::new(structure.sig.clone(), m, ops, rels)?.with_name(format!("{}/theta", structure.name));
    Ok((q, (0..structure.size).map(|x| theta.block_of(x)).collect()))
}
